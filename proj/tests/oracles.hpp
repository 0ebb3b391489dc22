#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "sfscert/bigint.hpp"
#include "sfscert/perm.hpp"
#include "sfscert/surfaces.hpp"
#include "sfscert/triangulation.hpp"

namespace oracle {

using sfscert::BigInt;
using Small = std::vector<int>;

// Arcs cut off corner c of face f by a local disc vector x (7 entries): the triangle at c and the
// quad putting c on the same side as f.
inline int arcs(const int* x, int f, int c) { return x[c] + x[4 + sfscert::quad_separating(c, f)]; }

// Every admissible vector with all coordinates <= bound, by depth-first search over tetrahedra
// checking each face gluing as soon as both sides are assigned.
inline std::vector<Small> admissible_up_to(const sfscert::Triangulation& tri, int bound) {
    const int n = tri.size();
    std::vector<Small> local;
    for (int q = -1; q < 3; ++q) {
        int len = q < 0 ? 4 : 5;
        std::vector<int> idx(static_cast<std::size_t>(len), 0);
        for (;;) {
            Small x(7, 0);
            for (int i = 0; i < 4; ++i) x[i] = idx[i];
            if (q >= 0) {
                if (idx[4] == 0) goto next;
                x[4 + q] = idx[4];
            }
            local.push_back(x);
        next:
            int i = 0;
            while (i < len && ++idx[i] > bound) idx[i++] = 0;
            if (i == len) break;
        }
    }
    std::vector<Small> out;
    Small cur(static_cast<std::size_t>(7 * n), 0);
    auto consistent = [&](int t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.adjacent(t, f);
            if (!g || g->tet > t) continue;
            for (int c = 0; c < 4; ++c) {
                if (c == f) continue;
                if (arcs(&cur[7 * t], f, c) != arcs(&cur[7 * g->tet], g->face, g->perm[c])) return false;
            }
        }
        return true;
    };
    auto rec = [&](auto&& self, int t) -> void {
        if (t == n) {
            out.push_back(cur);
            return;
        }
        for (const auto& x : local) {
            std::copy(x.begin(), x.end(), cur.begin() + 7 * t);
            if (consistent(t)) self(self, t + 1);
        }
    };
    rec(rec, 0);
    return out;
}

inline bool leq(const Small& a, const Small& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline int total(const Small& a) { return std::accumulate(a.begin(), a.end(), 0); }

// Irreducible nonzero members of a down-closed family of admissible vectors.
inline std::set<Small> irreducibles(std::vector<Small> all) {
    std::sort(all.begin(), all.end(), [](const Small& a, const Small& b) { return total(a) < total(b); });
    std::vector<Small> irr;
    for (const auto& v : all) {
        if (total(v) == 0) continue;
        bool red = false;
        for (const auto& w : irr)
            if (leq(w, v)) {
                red = true;
                break;
            }
        if (!red) irr.push_back(v);
    }
    return {irr.begin(), irr.end()};
}

// Whether every member decomposes as a sum of the given generators.
inline bool all_decompose(std::vector<Small> all, const std::vector<Small>& gens) {
    std::sort(all.begin(), all.end(), [](const Small& a, const Small& b) { return total(a) < total(b); });
    std::set<Small> ok;
    for (const auto& v : all) {
        bool good = total(v) == 0;
        for (const auto& g : gens) {
            if (good) break;
            if (!leq(g, v)) continue;
            Small r = v;
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
            good = total(r) == 0 || ok.count(r);
        }
        if (!good) return false;
        ok.insert(v);
    }
    return true;
}

inline Small to_small(const sfscert::NormalSurfaceVec& v) {
    Small s;
    for (const auto& x : v.coords()) s.push_back(static_cast<int>(x));
    return s;
}

// Determinant by cofactor expansion; only used on matrices up to 6x6.
inline BigInt det(const std::vector<std::vector<BigInt>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    BigInt d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<BigInt>> s;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<BigInt> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            s.push_back(row);
        }
        BigInt term = m[0][j] * det(s);
        d += (j % 2) ? BigInt(-term) : term;
    }
    return d;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> c;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (c.size() == k) {
            out.push_back(c);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            c.push_back(i);
            self(self, i + 1);
            c.pop_back();
        }
    };
    rec(rec, 0);
}

// Invariant factors d_k / d_{k-1}, where d_k is the gcd of all k x k minors.
inline std::vector<BigInt> invariant_factors(const std::vector<std::vector<BigInt>>& a) {
    std::vector<BigInt> out;
    if (a.empty()) return out;
    const std::size_t r = a.size(), c = a[0].size();
    BigInt prev = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        subsets(r, k, rs);
        subsets(c, k, cs);
        BigInt g = 0;
        for (const auto& ri : rs)
            for (const auto& ci : cs) {
                std::vector<std::vector<BigInt>> m;
                for (auto i : ri) {
                    std::vector<BigInt> row;
                    for (auto j : ci) row.push_back(a[i][j]);
                    m.push_back(row);
                }
                BigInt d = det(m);
                if (d < 0) d = -d;
                g = boost::multiprecision::gcd(g, d);
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

}  // namespace oracle
