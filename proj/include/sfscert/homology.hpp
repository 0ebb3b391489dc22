#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "triangulation.hpp"

namespace sfscert {

using IntMatrix = std::vector<std::vector<BigInt>>;

struct SmithForm {
    std::vector<BigInt> diagonal;  // nonzero invariant factors d1 | d2 | ...
    int rank = 0;
};

// Smith normal form by repeated minimal-pivot elimination.
inline SmithForm smith_normal_form(IntMatrix a) {
    SmithForm out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (const auto& r : a)
        if (r.size() != cols) throw InputError("ragged matrix");
    std::size_t k = 0;
    while (k < rows && k < cols) {
        // smallest nonzero entry in the trailing block
        std::size_t pr = rows, pc = cols;
        BigInt best = 0;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                BigInt m = abs(a[i][j]);
                if (pr == rows || m < best) {
                    best = m;
                    pr = i;
                    pc = j;
                    if (best == 1) break;
                }
            }
        if (pr == rows) break;
        std::swap(a[k], a[pr]);
        if (pc != k)
            for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][k], a[i][pc]);
        bool clean = true;
        for (std::size_t i = k + 1; i < rows; ++i) {
            if (a[i][k] == 0) continue;
            BigInt q = a[i][k] / a[k][k];
            for (std::size_t j = k; j < cols; ++j)
                if (a[k][j] != 0) a[i][j] -= q * a[k][j];
            if (a[i][k] != 0) clean = false;
        }
        for (std::size_t j = k + 1; j < cols; ++j) {
            if (a[k][j] == 0) continue;
            BigInt q = a[k][j] / a[k][k];
            for (std::size_t i = k; i < rows; ++i)
                if (a[i][k] != 0) a[i][j] -= q * a[i][k];
            if (a[k][j] != 0) clean = false;
        }
        if (!clean) continue;
        // divisibility of the remaining block
        bool divides = true;
        for (std::size_t i = k + 1; i < rows && divides; ++i)
            for (std::size_t j = k + 1; j < cols; ++j)
                if (a[i][j] % a[k][k] != 0) {
                    for (std::size_t jj = k; jj < cols; ++jj) a[k][jj] += a[i][jj];
                    divides = false;
                    break;
                }
        if (!divides) continue;
        out.diagonal.push_back(abs(a[k][k]));
        ++k;
    }
    out.rank = static_cast<int>(out.diagonal.size());
    return out;
}

struct AbelianGroup {
    int free_rank = 0;
    std::vector<BigInt> torsion;  // each >= 2, each dividing the next

    std::string str() const {
        std::string s;
        if (free_rank == 0 && torsion.empty()) return "0";
        if (free_rank == 1) s = "Z";
        else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
        for (const auto& d : torsion) {
            if (!s.empty()) s += " + ";
            s += "Z/" + d.str();
        }
        return s;
    }
    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

// Boundary matrices of the cell structure after identification.
inline IntMatrix boundary_matrix_1(const Triangulation& tri, const Skeleton& sk) {
    IntMatrix m(static_cast<std::size_t>(sk.vertex_count), std::vector<BigInt>(static_cast<std::size_t>(sk.edge_count), 0));
    for (int e = 0; e < sk.edge_count; ++e) {
        auto [t, le] = sk.edge_rep[e];
        int a = sk.vertex_of[t][kEdgeVerts[le][0]], b = sk.vertex_of[t][kEdgeVerts[le][1]];
        m[b][e] += 1;
        m[a][e] -= 1;
    }
    (void)tri;
    return m;
}

inline IntMatrix boundary_matrix_2(const Triangulation& tri, const Skeleton& sk) {
    IntMatrix m(static_cast<std::size_t>(sk.edge_count), std::vector<BigInt>(static_cast<std::size_t>(sk.face_count), 0));
    for (int f = 0; f < sk.face_count; ++f) {
        auto [t, lf] = sk.face_rep[f];
        auto v = face_vertices(lf);
        // d[abc] = [bc] - [ac] + [ab]
        const int pairs[3][2] = {{v[1], v[2]}, {v[0], v[2]}, {v[0], v[1]}};
        const int coef[3] = {1, -1, 1};
        for (int i = 0; i < 3; ++i) {
            int le = edge_index(pairs[i][0], pairs[i][1]);
            m[sk.edge_of[t][le]][f] += coef[i] * sk.edge_sign[t][le];
        }
    }
    (void)tri;
    return m;
}

inline AbelianGroup first_homology(const Triangulation& tri) {
    Skeleton sk = skeleton(tri);
    AbelianGroup g;
    if (sk.edge_count == 0) return g;
    SmithForm d1 = smith_normal_form(boundary_matrix_1(tri, sk));
    SmithForm d2 = sk.face_count ? smith_normal_form(boundary_matrix_2(tri, sk)) : SmithForm{};
    g.free_rank = sk.edge_count - d1.rank - d2.rank;
    for (const auto& d : d2.diagonal)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

}  // namespace sfscert
