#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "boundary.hpp"
#include "triangulation.hpp"

namespace sfscert {

// Standard coordinates: per tetrahedron 4 triangle types (one per vertex) then 3 quad types.
// Disc type d < 4 is the triangle at vertex d; d = 4 + k is quad k.
class NormalSurfaceVec {
public:
    NormalSurfaceVec() = default;
    explicit NormalSurfaceVec(int tets) : c_(static_cast<std::size_t>(7 * tets), 0) {}
    explicit NormalSurfaceVec(std::vector<BigInt> coords) : c_(std::move(coords)) {}

    int tet_count() const { return static_cast<int>(c_.size() / 7); }
    std::size_t size() const { return c_.size(); }
    const BigInt& operator[](std::size_t i) const { return c_[i]; }
    BigInt& operator[](std::size_t i) { return c_[i]; }
    const BigInt& tri(int t, int v) const { return c_[7 * static_cast<std::size_t>(t) + static_cast<std::size_t>(v)]; }
    const BigInt& quad(int t, int k) const { return c_[7 * static_cast<std::size_t>(t) + 4 + static_cast<std::size_t>(k)]; }
    BigInt& at(int t, int d) { return c_[7 * static_cast<std::size_t>(t) + static_cast<std::size_t>(d)]; }
    const std::vector<BigInt>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    BigInt total() const {
        BigInt s = 0;
        for (const auto& x : c_) s += x;
        return s;
    }
    // Nonzero quad type of tet t, or -1.
    int quad_type(int t) const {
        for (int k = 0; k < 3; ++k)
            if (quad(t, k) != 0) return k;
        return -1;
    }
    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ' ';
            s += c_[i].str();
        }
        return s;
    }

    friend bool operator==(const NormalSurfaceVec&, const NormalSurfaceVec&) = default;
    friend bool operator<(const NormalSurfaceVec& a, const NormalSurfaceVec& b) { return a.c_ < b.c_; }

private:
    std::vector<BigInt> c_;
};

// The other vertex paired with u by quad k.
inline int quad_partner(int k, int u) {
    int a = 0, b = k + 1;
    if (u == a) return b;
    if (u == b) return a;
    return 6 - a - b - u;
}

// Corner cut off on face f by a disc of the given type (the disc must meet f).
inline int disc_corner_on_face(int type, int f) { return type < 4 ? type : quad_partner(type - 4, f); }

// Number of normal arcs of v on face f of tet t cutting off corner c.
inline BigInt arc_count(const NormalSurfaceVec& v, int t, int f, int c) {
    return v.tri(t, c) + v.quad(t, quad_separating(c, f));
}

struct Rejection {
    std::string condition;  // "length", "negative", "quad-condition", "matching"
    int tet = -1;
    int face = -1;
    int arc = -1;  // corner vertex of the arc type on that face
    std::string message() const {
        std::string s = condition;
        if (tet >= 0) s += " (tet " + std::to_string(tet);
        if (face >= 0) s += ", face " + std::to_string(face);
        if (arc >= 0) s += ", arc " + std::to_string(arc);
        if (tet >= 0) s += ")";
        return s;
    }
};

class NotAdmissible : public InputError {
public:
    explicit NotAdmissible(Rejection r) : InputError("not admissible: " + r.message()), rejection_(std::move(r)) {}
    const Rejection& rejection() const { return rejection_; }

private:
    Rejection rejection_;
};

inline std::optional<Rejection> admissibility_violation(const Triangulation& tri, const NormalSurfaceVec& v) {
    if (v.size() != 7 * static_cast<std::size_t>(tri.size())) return Rejection{"length", -1, -1, -1};
    for (int t = 0; t < tri.size(); ++t)
        for (int d = 0; d < 7; ++d)
            if (v[7 * static_cast<std::size_t>(t) + static_cast<std::size_t>(d)] < 0) return Rejection{"negative", t, -1, -1};
    for (int t = 0; t < tri.size(); ++t) {
        int nz = 0;
        for (int k = 0; k < 3; ++k)
            if (v.quad(t, k) != 0) ++nz;
        if (nz > 1) return Rejection{"quad-condition", t, -1, -1};
    }
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.adjacent(t, f);
            if (!g || std::make_pair(g->tet, g->face) < std::make_pair(t, f)) continue;
            for (int c = 0; c < 4; ++c) {
                if (c == f) continue;
                if (arc_count(v, t, f, c) != arc_count(v, g->tet, g->face, g->perm[c])) return Rejection{"matching", t, f, c};
            }
        }
    return std::nullopt;
}

inline NormalSurfaceVec check_admissible(const Triangulation& tri, const std::vector<BigInt>& coords) {
    NormalSurfaceVec v(coords);
    if (auto r = admissibility_violation(tri, v)) throw NotAdmissible(*r);
    return v;
}

inline NormalSurfaceVec haken_sum(const NormalSurfaceVec& a, const NormalSurfaceVec& b) {
    if (a.size() != b.size()) throw InputError("haken_sum: vectors on different triangulations");
    for (int t = 0; t < a.tet_count(); ++t) {
        int qa = a.quad_type(t), qb = b.quad_type(t);
        if (qa >= 0 && qb >= 0 && qa != qb) throw NotAdmissible(Rejection{"incompatible quads", t, -1, -1});
    }
    NormalSurfaceVec s(a.tet_count());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return s;
}

inline NormalSurfaceVec scale(const NormalSurfaceVec& a, const BigInt& k) {
    NormalSurfaceVec s(a.tet_count());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] * k;
    return s;
}

// Crossings of the surface with local edge (a,b) of tet t.
inline BigInt local_edge_weight(const NormalSurfaceVec& v, int t, int a, int b) {
    BigInt w = v.tri(t, a) + v.tri(t, b);
    int k = quad_separating(a, b);
    for (int q = 0; q < 3; ++q)
        if (q != k) w += v.quad(t, q);
    return w;
}

inline BigInt edge_weight(const Triangulation& tri, const NormalSurfaceVec& v, const Skeleton& sk) {
    (void)tri;
    BigInt w = 0;
    for (int e = 0; e < sk.edge_count; ++e) {
        auto [t, le] = sk.edge_rep[e];
        w += local_edge_weight(v, t, kEdgeVerts[le][0], kEdgeVerts[le][1]);
    }
    return w;
}

inline BigInt edge_weight(const Triangulation& tri, const NormalSurfaceVec& v) { return edge_weight(tri, v, skeleton(tri)); }

// Link of a vertex class: one triangle at each corner in the class.
inline NormalSurfaceVec vertex_link(const Triangulation& tri, int vertex_class, const Skeleton& sk) {
    NormalSurfaceVec v(tri.size());
    for (int t = 0; t < tri.size(); ++t)
        for (int c = 0; c < 4; ++c)
            if (sk.vertex_of[t][c] == vertex_class) v.at(t, c) += 1;
    return v;
}

inline constexpr std::int64_t kDefaultDiscCap = 10'000'000;

// ---------------------------------------------------------------------------
// Decompression.

struct DiscCell {
    int tet = -1;
    int type = -1;   // 0..3 triangle at that vertex, 4..6 quad
    std::int64_t copy = 0;  // triangles: 0 nearest the vertex; quads: 0 nearest the low side
};

class SurfaceComplex {
public:
    static constexpr std::int64_t kBoundary = -1;
    static constexpr std::int64_t kAbsent = -2;

    SurfaceComplex(const Triangulation& tri, const NormalSurfaceVec& v, std::int64_t cap = kDefaultDiscCap) : tri_(&tri) {
        if (auto r = admissibility_violation(tri, v)) throw NotAdmissible(*r);
        BigInt total = v.total();
        if (total > cap) throw CapExceeded("disc count cap exceeded", total > BigInt(UINT64_MAX) ? UINT64_MAX : static_cast<unsigned long long>(total));
        const int n = tri.size();
        count_.assign(static_cast<std::size_t>(7 * n), 0);
        offset_.assign(static_cast<std::size_t>(7 * n + 1), 0);
        for (int i = 0; i < 7 * n; ++i) {
            count_[i] = static_cast<std::int64_t>(v[static_cast<std::size_t>(i)]);
            offset_[i + 1] = offset_[i] + count_[i];
        }
        cells_.resize(static_cast<std::size_t>(offset_.back()));
        adj_.assign(cells_.size(), {kAbsent, kAbsent, kAbsent, kAbsent});
        for (int t = 0; t < n; ++t)
            for (int d = 0; d < 7; ++d)
                for (std::int64_t i = 0; i < cnt(t, d); ++i) cells_[static_cast<std::size_t>(offset_[7 * t + d] + i)] = {t, d, i};
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f) {
                const auto& g = tri.adjacent(t, f);
                for (int c = 0; c < 4; ++c) {
                    if (c == f) continue;
                    std::int64_t m = arcs(t, f, c);
                    for (std::int64_t j = 0; j < m; ++j) {
                        std::int64_t me = cell_at(t, f, c, j);
                        adj_[static_cast<std::size_t>(me)][f] = g ? cell_at(g->tet, g->face, g->perm[c], j) : kBoundary;
                    }
                }
            }
    }

    const Triangulation& triangulation() const { return *tri_; }
    std::int64_t cell_count() const { return static_cast<std::int64_t>(cells_.size()); }
    const DiscCell& cell(std::int64_t i) const { return cells_[static_cast<std::size_t>(i)]; }
    // Cell across face f of the cell's tet; kBoundary on an unglued face, kAbsent if the disc misses f.
    std::int64_t across(std::int64_t i, int f) const { return adj_[static_cast<std::size_t>(i)][f]; }
    std::int64_t cnt(int t, int d) const { return count_[static_cast<std::size_t>(7 * t + d)]; }
    std::int64_t first_cell(int t, int d) const { return offset_[static_cast<std::size_t>(7 * t + d)]; }

    std::int64_t arcs(int t, int f, int c) const { return cnt(t, c) + cnt(t, 4 + quad_separating(c, f)); }

    // The j-th arc (from corner c) on face f of tet t belongs to this cell.
    std::int64_t cell_at(int t, int f, int c, std::int64_t j) const {
        std::int64_t tc = cnt(t, c);
        if (j < tc) return first_cell(t, c) + j;
        int k = quad_separating(c, f);
        std::int64_t m = cnt(t, 4 + k);
        std::int64_t i = j - tc;
        return first_cell(t, 4 + k) + (quad_low_side(k, c) ? i : m - 1 - i);
    }

    // Crossings of local edge (a,b) of tet t.
    std::int64_t edge_points(int t, int a, int b) const {
        std::int64_t w = cnt(t, a) + cnt(t, b);
        int k = quad_separating(a, b);
        for (int q = 0; q < 3; ++q)
            if (q != k) w += cnt(t, 4 + q);
        return w;
    }

    // Cell through the j-th point of local edge (a,b), counted from a.
    std::int64_t cell_on_edge(int t, int a, int b, std::int64_t j) const {
        std::int64_t ta = cnt(t, a);
        if (j < ta) return first_cell(t, a) + j;
        j -= ta;
        for (int q = 0; q < 3; ++q) {
            if (q == quad_separating(a, b)) continue;
            std::int64_t m = cnt(t, 4 + q);
            if (m == 0) continue;
            if (j < m) return first_cell(t, 4 + q) + (quad_low_side(q, a) ? j : m - 1 - j);
            j -= m;
        }
        return first_cell(t, b) + (cnt(t, b) - 1 - j);
    }

    // Corners of the cell's disc, as (tet vertex it cuts off or the edge it lies on).
    // Vertices of a disc are the tet edges it crosses.
    static std::vector<std::pair<int, int>> crossed_edges(int type) {
        if (type < 4) {
            std::vector<std::pair<int, int>> e;
            for (int u = 0; u < 4; ++u)
                if (u != type) e.push_back({type, u});
            return e;
        }
        int k = type - 4;
        int a = 0, b = k + 1;
        int c = -1, d = -1;
        for (int u = 1; u < 4; ++u)
            if (u != b) (c < 0 ? c : d) = u;
        // cyclic order ac, ad, bd, bc
        return {{a, c}, {a, d}, {b, d}, {b, c}};
    }

private:
    const Triangulation* tri_;
    std::vector<std::int64_t> count_;
    std::vector<std::int64_t> offset_;
    std::vector<DiscCell> cells_;
    std::vector<std::array<std::int64_t, 4>> adj_;
};

inline SurfaceComplex decompress(const Triangulation& tri, const NormalSurfaceVec& v, std::int64_t cap = kDefaultDiscCap) {
    return SurfaceComplex(tri, v, cap);
}

// ---------------------------------------------------------------------------
// Topology.

struct ComponentSummary {
    int euler = 0;
    bool orientable = true;  // two-sided; equivalent to orientable inside an orientable 3-manifold
    int boundary_curves = 0;
    bool closed = true;
    std::int64_t discs = 0;
    NormalSurfaceVec vec;
};

struct SurfaceSummary {
    std::vector<ComponentSummary> components;
    BigInt total_weight = 0;
    std::int64_t disc_count = 0;
    int component_count() const { return static_cast<int>(components.size()); }
    int euler() const {
        int s = 0;
        for (const auto& c : components) s += c.euler;
        return s;
    }
    int boundary_curves() const {
        int s = 0;
        for (const auto& c : components) s += c.boundary_curves;
        return s;
    }
};

namespace detail {

struct UnionFind64 {
    std::vector<std::int64_t> parent;
    std::vector<std::uint8_t> parity;
    explicit UnionFind64(std::int64_t n) : parent(static_cast<std::size_t>(n)), parity(static_cast<std::size_t>(n), 0) {
        for (std::int64_t i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    std::pair<std::int64_t, int> find(std::int64_t x) {
        int p = 0;
        std::int64_t r = x;
        while (parent[static_cast<std::size_t>(r)] != r) {
            p ^= parity[static_cast<std::size_t>(r)];
            r = parent[static_cast<std::size_t>(r)];
        }
        std::int64_t cur = x;
        int cp = p;
        while (parent[static_cast<std::size_t>(cur)] != cur) {
            std::int64_t next = parent[static_cast<std::size_t>(cur)];
            int np = cp ^ parity[static_cast<std::size_t>(cur)];
            parent[static_cast<std::size_t>(cur)] = r;
            parity[static_cast<std::size_t>(cur)] = static_cast<std::uint8_t>(cp);
            cur = next;
            cp = np;
        }
        return {r, p};
    }
    bool unite(std::int64_t a, std::int64_t b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        if (ra > rb) std::swap(ra, rb);
        parent[static_cast<std::size_t>(rb)] = ra;
        parity[static_cast<std::size_t>(rb)] = static_cast<std::uint8_t>(pa ^ pb ^ rel);
        return true;
    }
};

// Whether the transverse label of a disc points towards corner c (label 0 means: towards the
// triangle's vertex, or towards the low side of a quad).
inline int flips_at(int type, int c) { return (type >= 4 && !quad_low_side(type - 4, c)) ? 1 : 0; }

}  // namespace detail

inline SurfaceSummary analyze(const SurfaceComplex& cx, const Skeleton& sk) {
    const Triangulation& tri = cx.triangulation();
    const std::int64_t N = cx.cell_count();
    SurfaceSummary out;
    out.disc_count = N;
    detail::UnionFind64 uf(N);
    std::vector<char> conflict_root(static_cast<std::size_t>(N), 0);
    std::vector<std::pair<std::int64_t, std::int64_t>> conflicts;
    for (std::int64_t i = 0; i < N; ++i) {
        const auto& ci = cx.cell(i);
        for (int f = 0; f < 4; ++f) {
            std::int64_t j = cx.across(i, f);
            if (j < 0 || j < i) continue;
            const auto& g = tri.adjacent(ci.tet, f);
            int c = disc_corner_on_face(ci.type, f);
            int rel = detail::flips_at(ci.type, c) ^ detail::flips_at(cx.cell(j).type, g->perm[c]);
            if (!uf.unite(i, j, rel)) conflicts.push_back({i, j});
        }
    }
    std::vector<std::int64_t> comp_id(static_cast<std::size_t>(N), -1);
    std::vector<std::int64_t> comp_of(static_cast<std::size_t>(N));
    int ncomp = 0;
    for (std::int64_t i = 0; i < N; ++i) {
        std::int64_t r = uf.find(i).first;
        if (comp_id[static_cast<std::size_t>(r)] < 0) comp_id[static_cast<std::size_t>(r)] = ncomp++;
        comp_of[static_cast<std::size_t>(i)] = comp_id[static_cast<std::size_t>(r)];
    }
    out.components.resize(static_cast<std::size_t>(ncomp));
    std::vector<std::int64_t> V(static_cast<std::size_t>(ncomp), 0), E2(static_cast<std::size_t>(ncomp), 0), F(static_cast<std::size_t>(ncomp), 0);
    for (auto& c : out.components) c.vec = NormalSurfaceVec(tri.size());
    for (std::int64_t i = 0; i < N; ++i) {
        auto k = static_cast<std::size_t>(comp_of[static_cast<std::size_t>(i)]);
        const auto& ci = cx.cell(i);
        ++F[k];
        E2[k] += ci.type < 4 ? 3 : 4;
        out.components[k].vec.at(ci.tet, ci.type) += 1;
        ++out.components[k].discs;
    }
    for (auto [a, b] : conflicts) out.components[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(a)])].orientable = false;
    // vertices: points on edge classes
    for (int e = 0; e < sk.edge_count; ++e) {
        auto [t, le] = sk.edge_rep[e];
        int a = kEdgeVerts[le][0], b = kEdgeVerts[le][1];
        std::int64_t w = cx.edge_points(t, a, b);
        out.total_weight += w;
        for (std::int64_t j = 0; j < w; ++j) ++V[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(cx.cell_on_edge(t, a, b, j))])];
    }
    // boundary arcs and the curves they form
    std::vector<std::int64_t> barc_cell;
    std::vector<std::array<std::pair<int, std::int64_t>, 2>> barc_ends;  // (edge class, index along class)
    auto point_id = [&](int t, int a, int b, std::int64_t j) {
        int le = edge_index(a, b);
        std::int64_t w = cx.edge_points(t, a, b);
        std::int64_t low = a < b ? j : w - 1 - j;
        std::int64_t idx = sk.edge_sign[t][le] > 0 ? low : w - 1 - low;
        return std::make_pair(sk.edge_of[t][le], idx);
    };
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (!tri.is_boundary(t, f)) continue;
            for (int c = 0; c < 4; ++c) {
                if (c == f) continue;
                int u = -1, w = -1;
                for (int x = 0; x < 4; ++x)
                    if (x != f && x != c) (u < 0 ? u : w) = x;
                std::int64_t m = cx.arcs(t, f, c);
                for (std::int64_t j = 0; j < m; ++j) {
                    std::int64_t cell = cx.cell_at(t, f, c, j);
                    barc_cell.push_back(cell);
                    barc_ends.push_back({point_id(t, c, u, j), point_id(t, c, w, j)});
                    auto k = static_cast<std::size_t>(comp_of[static_cast<std::size_t>(cell)]);
                    E2[k] += 1;
                    out.components[k].closed = false;
                }
            }
        }
    {
        const std::int64_t B = static_cast<std::int64_t>(barc_cell.size());
        detail::UnionFind64 buf(B);
        std::vector<std::vector<std::int64_t>> first(static_cast<std::size_t>(sk.edge_count));
        for (int e = 0; e < sk.edge_count; ++e) {
            auto [t, le] = sk.edge_rep[e];
            if (sk.edge_boundary[e]) first[e].assign(static_cast<std::size_t>(cx.edge_points(t, kEdgeVerts[le][0], kEdgeVerts[le][1])), -1);
        }
        for (std::int64_t i = 0; i < B; ++i)
            for (const auto& [e, idx] : barc_ends[static_cast<std::size_t>(i)]) {
                auto& slot = first[e][static_cast<std::size_t>(idx)];
                if (slot < 0) slot = i;
                else buf.unite(slot, i, 0);
            }
        for (std::int64_t i = 0; i < B; ++i)
            if (buf.find(i).first == i) ++out.components[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(barc_cell[static_cast<std::size_t>(i)])])].boundary_curves;
    }
    for (int k = 0; k < ncomp; ++k) {
        auto& c = out.components[static_cast<std::size_t>(k)];
        c.euler = static_cast<int>(V[k] - E2[k] / 2 + F[k]);
    }
    return out;
}

inline SurfaceSummary analyze(const Triangulation& tri, const NormalSurfaceVec& v, std::int64_t cap = kDefaultDiscCap) {
    SurfaceComplex cx(tri, v, cap);
    return analyze(cx, skeleton(tri));
}

// Boundary of the surface as arc counts on the boundary 2-triangulation: three per triangle,
// indexed by corner.
inline std::vector<BigInt> boundary_curve_coords(const BoundarySurface& B, const NormalSurfaceVec& v) {
    std::vector<BigInt> out(static_cast<std::size_t>(3 * B.size()), 0);
    for (int i = 0; i < B.size(); ++i) {
        const auto& T = B.triangle(i);
        for (int c = 0; c < 3; ++c) out[static_cast<std::size_t>(3 * i + c)] = arc_count(v, T.tet, T.face, T.verts[c]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format: lines "<keyword> <name>: <integers>" or "<keyword> <integers>"; other lines are skipped.

inline std::vector<std::pair<std::string, std::vector<BigInt>>> parse_vector_lines(const std::string& text, const std::string& keyword) {
    std::vector<std::pair<std::string, std::vector<BigInt>>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != keyword) continue;
        std::string rest;
        std::getline(ls, rest);
        std::string name;
        auto colon = rest.find(':');
        if (colon != std::string::npos) {
            std::istringstream ns(rest.substr(0, colon));
            ns >> name;
            rest = rest.substr(colon + 1);
        }
        std::istringstream vs(rest);
        std::vector<BigInt> coords;
        std::string tok;
        while (vs >> tok) {
            try {
                coords.push_back(parse_bigint(tok));
            } catch (const std::exception&) {
                throw ParseError(lineno, 1, "bad " + keyword + " coordinate '" + tok + "'");
            }
        }
        out.push_back({name, coords});
    }
    return out;
}

// Surfaces: "surface <name>: <7t integers>".
inline std::vector<std::pair<std::string, std::vector<BigInt>>> parse_surface_lines(const std::string& text) {
    return parse_vector_lines(text, "surface");
}

}  // namespace sfscert
