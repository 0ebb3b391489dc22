#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "boundary.hpp"
#include "curves.hpp"
#include "surfaces.hpp"
#include "triangulation.hpp"

namespace sfscert {

// Where a tetrahedron of the complement came from.
struct CutTetSource {
    enum Kind { kWhole, kFacePiece, kDiscSide, kInterior };
    int old_tet = -1;
    int region = -1;             // region index inside the old tetrahedron
    Kind kind = kWhole;          // what the face opposite the region centre (vertex 0) lies on
    int old_face = -1;           // for face pieces
    std::int64_t cell = -1;      // for disc sides
    int side = 0;                // 0: the side the disc's transverse label points to
    std::array<int, 4> on_old_face{-1, -1, -1, -1};  // local face -> old face it lies in, or -1
};

struct TraceComponent {
    std::vector<std::pair<int, int>> faces;  // (new tet, face) on the new boundary
    std::vector<std::pair<std::int64_t, int>> sides;  // (disc cell, side) making up this copy
    NormalCurveVec curve;                    // boundary of the copy, pushed off into the rest of the boundary
    int surface_component = -1;              // component of the cut surface it doubles
};

struct CutResult {
    Triangulation complement;
    OrientationLabels labels;
    std::vector<CutTetSource> source;
    std::vector<int> component_of;
    int component_count = 0;
    std::vector<TraceComponent> trace;
    std::optional<BoundarySurface> boundary;
};

namespace detail {

struct CutLabel {
    enum Kind { kVert, kEdge, kFace, kDisc, kCentre };
    int kind = kVert;
    int x = 0;
    int y = 0;
    std::int64_t j = 0;
    auto operator<=>(const CutLabel&) const = default;
};

struct RegionKey {
    enum Kind { kCorner, kQuadSlab, kCentral, kLow, kHigh };
    int kind = kCentral;
    int v = 0;
    std::int64_t i = 0;
    auto operator<=>(const RegionKey&) const = default;
};

struct V3 {
    double x = 0, y = 0, z = 0;
};
inline V3 operator+(V3 a, V3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline V3 operator-(V3 a, V3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline V3 operator*(double s, V3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(V3 a, V3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline constexpr V3 kStdTet[4] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

struct Polygon {
    std::vector<CutLabel> cycle;
    V3 outward;
    CutTetSource::Kind kind = CutTetSource::kFacePiece;
    int face = -1;
    std::int64_t cell = -1;
    int side = 0;
    CutLabel centre;
    bool cone = false;
};

struct CutTet {
    std::array<CutLabel, 4> lab;
    CutTetSource src;
    std::vector<CutLabel> piece;  // unused for whole tets
};

inline Perm4 perm_from(const std::array<int, 4>& a) { return Perm4(a[0], a[1], a[2], a[3]); }

}  // namespace detail

// Cuts along v. Every tetrahedron meeting the surface is split into its complementary regions and
// each region is coned from an interior point; polygons with four or more sides and all disc sides
// are coned from their own centres first. Tetrahedra missing the surface are kept as they are.
inline CutResult cut_along(const Triangulation& tri, const OrientationLabels& labels, const NormalSurfaceVec& v,
                           std::int64_t cap = kDefaultDiscCap) {
    using detail::CutLabel;
    using detail::RegionKey;
    using detail::V3;
    if (static_cast<int>(labels.size()) != tri.size() || !check_orientation(tri, labels))
        throw InputError("orientation labels are not compatible");
    if (v.tet_count() != tri.size()) throw InputError("surface vector has the wrong length");
    SurfaceComplex cx(tri, v, cap);
    Skeleton sk = skeleton(tri);
    SurfaceSummary summary = analyze(cx, sk);
    for (std::size_t a = 0; a < summary.components.size(); ++a)
        for (std::size_t b = a + 1; b < summary.components.size(); ++b)
            if (summary.components[a].vec == summary.components[b].vec)
                throw InputError("parallel components: " + std::to_string(a) + " and " + std::to_string(b) +
                                 " are normally isotopic");
    // surface component of each cell
    std::vector<int> cell_comp(static_cast<std::size_t>(cx.cell_count()), -1);
    {
        detail::UnionFind64 uf(cx.cell_count());
        for (std::int64_t i = 0; i < cx.cell_count(); ++i)
            for (int f = 0; f < 4; ++f)
                if (cx.across(i, f) >= 0) uf.unite(i, cx.across(i, f), 0);
        std::map<std::int64_t, int> id;
        for (std::int64_t i = 0; i < cx.cell_count(); ++i) {
            auto r = uf.find(i).first;
            auto it = id.find(r);
            if (it == id.end()) it = id.emplace(r, static_cast<int>(id.size())).first;
            cell_comp[static_cast<std::size_t>(i)] = it->second;
        }
    }

    std::vector<detail::CutTet> tets;
    std::vector<int> region_count(static_cast<std::size_t>(tri.size()), 0);
    // (old tet, old face, sorted labels) -> (new tet, new face)
    std::map<std::tuple<int, int, std::array<CutLabel, 3>>, std::pair<int, int>> face_slots;
    std::vector<std::tuple<int, int, int, int, std::array<int, 4>>> internal_glues;

    for (int t = 0; t < tri.size(); ++t) {
        std::array<std::int64_t, 4> n{};
        for (int u = 0; u < 4; ++u) n[u] = cx.cnt(t, u);
        int k = -1;
        for (int q = 0; q < 3; ++q)
            if (cx.cnt(t, 4 + q) > 0) k = q;
        const std::int64_t m = k >= 0 ? cx.cnt(t, 4 + k) : 0;
        const bool empty = m == 0 && n[0] == 0 && n[1] == 0 && n[2] == 0 && n[3] == 0;
        if (empty) {
            detail::CutTet ct;
            for (int u = 0; u < 4; ++u) ct.lab[u] = {CutLabel::kVert, u, 0, 0};
            ct.src.old_tet = t;
            ct.src.region = 0;
            ct.src.kind = CutTetSource::kWhole;
            for (int f = 0; f < 4; ++f) ct.src.on_old_face[f] = f;
            region_count[t] = 1;
            tets.push_back(ct);
            continue;
        }
        auto side_of = [&](int c) {
            if (k < 0) return RegionKey{RegionKey::kCentral, 0, 0};
            return quad_low_side(k, c) ? RegionKey{RegionKey::kLow, 0, 0} : RegionKey{RegionKey::kHigh, 0, 0};
        };
        auto opposite = [&](RegionKey r) {
            return r.kind == RegionKey::kLow ? RegionKey{RegionKey::kHigh, 0, 0} : RegionKey{RegionKey::kLow, 0, 0};
        };
        // region between arc j-1 and arc j at corner c of face f (j = 0: next to the corner)
        auto slot_region = [&](int f, int c, std::int64_t j) {
            std::int64_t a = cx.arcs(t, f, c);
            bool quad_here = k >= 0 && quad_separating(c, f) == k;
            if (j < n[c]) return RegionKey{RegionKey::kCorner, c, j};
            if (j == a) return quad_here ? opposite(side_of(c)) : side_of(c);
            if (j == n[c]) return side_of(c);
            std::int64_t q = j - n[c];
            return RegionKey{RegionKey::kQuadSlab, 0, quad_low_side(k, c) ? q : m - q};
        };
        auto ept = [&](int c, int u, std::int64_t j) {
            std::int64_t w = cx.edge_points(t, c, u);
            return c < u ? CutLabel{CutLabel::kEdge, c, u, j} : CutLabel{CutLabel::kEdge, u, c, w - 1 - j};
        };
        auto coord = [&](const CutLabel& l) -> V3 {
            if (l.kind == CutLabel::kVert) return detail::kStdTet[l.x];
            std::int64_t w = cx.edge_points(t, l.x, l.y);
            double s = static_cast<double>(l.j + 1) / static_cast<double>(w + 1);
            return detail::kStdTet[l.x] + s * (detail::kStdTet[l.y] - detail::kStdTet[l.x]);
        };
        std::map<RegionKey, std::vector<detail::Polygon>> regions;
        for (int f = 0; f < 4; ++f) {
            auto fv = face_vertices(f);
            V3 fc = (1.0 / 3) * (detail::kStdTet[fv[0]] + detail::kStdTet[fv[1]] + detail::kStdTet[fv[2]]);
            V3 out = fc - detail::kStdTet[f];
            std::array<std::int64_t, 3> a{};
            for (int i = 0; i < 3; ++i) a[i] = cx.arcs(t, f, fv[i]);
            for (int i = 0; i < 3; ++i) {
                int c = fv[i], u = fv[(i + 1) % 3], w = fv[(i + 2) % 3];
                for (std::int64_t j = 0; j < a[i]; ++j) {
                    detail::Polygon p;
                    p.outward = out;
                    p.face = f;
                    if (j == 0) p.cycle = {{CutLabel::kVert, c, 0, 0}, ept(c, u, 0), ept(c, w, 0)};
                    else p.cycle = {ept(c, u, j - 1), ept(c, u, j), ept(c, w, j), ept(c, w, j - 1)};
                    p.centre = {CutLabel::kFace, f, (j == 0 ? 0 : 4) + c, j};
                    p.cone = p.cycle.size() >= 4;
                    regions[slot_region(f, c, j)].push_back(p);
                }
            }
            detail::Polygon p;
            p.outward = out;
            p.face = f;
            for (int i = 0; i < 3; ++i) {
                int c = fv[i], prev = fv[(i + 2) % 3], next = fv[(i + 1) % 3];
                if (a[i] > 0) {
                    p.cycle.push_back(ept(c, prev, a[i] - 1));
                    p.cycle.push_back(ept(c, next, a[i] - 1));
                } else {
                    p.cycle.push_back({CutLabel::kVert, c, 0, 0});
                }
            }
            p.centre = {CutLabel::kFace, f, 8, 0};
            p.cone = p.cycle.size() >= 4;
            regions[slot_region(f, fv[0], a[0])].push_back(p);
        }
        for (int d = 0; d < 7; ++d)
            for (std::int64_t i = 0; i < cx.cnt(t, d); ++i) {
                detail::Polygon p;
                p.kind = CutTetSource::kDiscSide;
                p.cell = cx.first_cell(t, d) + i;
                p.cone = true;
                V3 dir;
                RegionKey r0, r1;
                if (d < 4) {
                    for (int u = 0; u < 4; ++u)
                        if (u != d) p.cycle.push_back(ept(d, u, i));
                    auto fv = face_vertices(d);
                    V3 fc = (1.0 / 3) * (detail::kStdTet[fv[0]] + detail::kStdTet[fv[1]] + detail::kStdTet[fv[2]]);
                    dir = fc - detail::kStdTet[d];
                    r0 = {RegionKey::kCorner, d, i};
                    r1 = i + 1 < n[d] ? RegionKey{RegionKey::kCorner, d, i + 1} : side_of(d);
                } else {
                    for (auto [x, y] : SurfaceComplex::crossed_edges(d)) p.cycle.push_back(ept(x, y, n[x] + i));
                    int lo = 0, hi = d - 3;
                    V3 low = detail::kStdTet[lo] + detail::kStdTet[hi], high{0, 0, 0};
                    for (int u = 1; u < 4; ++u)
                        if (u != hi) high = high + detail::kStdTet[u];
                    dir = high - low;
                    r0 = i == 0 ? RegionKey{RegionKey::kLow, 0, 0} : RegionKey{RegionKey::kQuadSlab, 0, i};
                    r1 = i == m - 1 ? RegionKey{RegionKey::kHigh, 0, 0} : RegionKey{RegionKey::kQuadSlab, 0, i + 1};
                }
                p.centre = {CutLabel::kDisc, d, 0, i};
                p.outward = dir;
                p.side = 0;
                regions[r0].push_back(p);
                p.outward = -1.0 * dir;
                p.side = 1;
                regions[r1].push_back(p);
            }
        int ridx = 0;
        for (auto& [key, polys] : regions) {
            const int region = ridx++;
            const CutLabel centre{CutLabel::kCentre, 0, 0, 0};
            std::map<std::pair<CutLabel, CutLabel>, std::vector<std::pair<int, int>>> edges;
            for (auto& p : polys) {
                V3 nrm;
                const std::size_t L = p.cycle.size();
                for (std::size_t i = 0; i < L; ++i) {
                    V3 a = coord(p.cycle[i]), b = coord(p.cycle[(i + 1) % L]);
                    nrm.x += (a.y - b.y) * (a.z + b.z);
                    nrm.y += (a.z - b.z) * (a.x + b.x);
                    nrm.z += (a.x - b.x) * (a.y + b.y);
                }
                if (detail::dot(nrm, p.outward) < 0) std::reverse(p.cycle.begin(), p.cycle.end());
                std::vector<std::array<CutLabel, 3>> tris;
                if (!p.cone) tris.push_back({p.cycle[0], p.cycle[1], p.cycle[2]});
                else
                    for (std::size_t i = 0; i < L; ++i) tris.push_back({p.centre, p.cycle[i], p.cycle[(i + 1) % L]});
                for (const auto& tr : tris) {
                    detail::CutTet ct;
                    ct.lab = {centre, tr[0], tr[1], tr[2]};
                    ct.src.old_tet = t;
                    ct.src.region = region;
                    ct.src.kind = p.kind;
                    if (p.kind == CutTetSource::kFacePiece) {
                        ct.src.old_face = p.face;
                        ct.src.on_old_face[0] = p.face;
                    } else {
                        ct.src.cell = p.cell;
                        ct.src.side = p.side;
                    }
                    int id = static_cast<int>(tets.size());
                    tets.push_back(ct);
                    for (int e = 0; e < 3; ++e) {
                        CutLabel x = tr[e], y = tr[(e + 1) % 3];
                        if (y < x) std::swap(x, y);
                        edges[{x, y}].push_back({id, 1 + (e + 2) % 3});
                    }
                }
            }
            for (const auto& [e, users] : edges) {
                if (users.size() != 2) throw std::logic_error("cut: region boundary is not a closed surface");
                auto [A, fa] = users[0];
                auto [B, fb] = users[1];
                std::array<int, 4> p{};
                for (int i = 0; i < 4; ++i) {
                    if (i == fa) {
                        p[i] = fb;
                        continue;
                    }
                    for (int jj = 0; jj < 4; ++jj)
                        if (tets[B].lab[jj] == tets[A].lab[i]) p[i] = jj;
                }
                internal_glues.push_back({A, fa, B, fb, p});
            }
        }
        region_count[t] = ridx;
    }

    CutResult res;
    res.complement = Triangulation(static_cast<int>(tets.size()));
    for (auto& [A, fa, B, fb, p] : internal_glues) res.complement.join(A, fa, B, fb, detail::perm_from(p));
    for (int id = 0; id < static_cast<int>(tets.size()); ++id)
        for (int f = 0; f < 4; ++f) {
            int of = tets[id].src.on_old_face[f];
            if (of < 0) continue;
            std::array<CutLabel, 3> key{};
            int kk = 0;
            for (int i = 0; i < 4; ++i)
                if (i != f) key[kk++] = tets[id].lab[i];
            std::sort(key.begin(), key.end());
            face_slots[{tets[id].src.old_tet, of, key}] = {id, f};
        }
    for (const auto& [key, slot] : face_slots) {
        const auto& [t, f, labs] = key;
        const auto& g = tri.adjacent(t, f);
        if (!g) continue;
        auto map_label = [&](const CutLabel& l) {
            switch (l.kind) {
                case CutLabel::kVert:
                    return CutLabel{CutLabel::kVert, g->perm[l.x], 0, 0};
                case CutLabel::kEdge: {
                    int a = g->perm[l.x], b = g->perm[l.y];
                    if (a < b) return CutLabel{CutLabel::kEdge, a, b, l.j};
                    return CutLabel{CutLabel::kEdge, b, a, cx.edge_points(t, l.x, l.y) - 1 - l.j};
                }
                case CutLabel::kFace:
                    if (l.y == 8) return CutLabel{CutLabel::kFace, g->face, 8, 0};
                    return CutLabel{CutLabel::kFace, g->face, (l.y / 4) * 4 + g->perm[l.y % 4], l.j};
                default:
                    throw std::logic_error("cut: unexpected label on a face");
            }
        };
        std::array<CutLabel, 3> img{};
        for (int i = 0; i < 3; ++i) img[i] = map_label(labs[i]);
        std::sort(img.begin(), img.end());
        auto it = face_slots.find({g->tet, g->face, img});
        if (it == face_slots.end()) throw std::logic_error("cut: face pieces do not match across a gluing");
        auto [A, fa] = slot;
        auto [B, fb] = it->second;
        std::array<int, 4> p{};
        for (int i = 0; i < 4; ++i) {
            if (i == fa) {
                p[i] = fb;
                continue;
            }
            CutLabel want = map_label(tets[A].lab[i]);
            p[i] = -1;
            for (int jj = 0; jj < 4; ++jj)
                if (jj != fb && tets[B].lab[jj] == want) p[i] = jj;
        }
        res.complement.join(A, fa, B, fb, detail::perm_from(p));
    }
    res.complement.validate();
    for (const auto& ct : tets) {
        res.labels.push_back(labels[ct.src.old_tet]);
        res.source.push_back(ct.src);
    }
    if (!check_orientation(res.complement, res.labels)) throw std::logic_error("cut: induced orientation is inconsistent");
    Skeleton xs = skeleton(res.complement);
    res.component_of = xs.component_of;
    res.component_count = xs.component_count;
    if (res.complement.boundary_face_count() == 0) return res;
    res.boundary = boundary_surface(res.complement, res.labels);
    const BoundarySurface& BX = *res.boundary;

    // components of the double: disc sides glued across old faces
    const std::int64_t N = cx.cell_count();
    detail::UnionFind64 duf(2 * N);
    for (std::int64_t i = 0; i < N; ++i) {
        const auto& ci = cx.cell(i);
        for (int f = 0; f < 4; ++f) {
            std::int64_t j = cx.across(i, f);
            if (j < 0) continue;
            const auto& g = tri.adjacent(ci.tet, f);
            int c = disc_corner_on_face(ci.type, f);
            int rel = detail::flips_at(ci.type, c) ^ detail::flips_at(cx.cell(j).type, g->perm[c]);
            for (int s = 0; s < 2; ++s) duf.unite(2 * i + s, 2 * j + (s ^ rel), 0);
        }
    }
    std::map<std::int64_t, int> dcomp;
    std::vector<int> side_comp(static_cast<std::size_t>(2 * N));
    for (std::int64_t s = 0; s < 2 * N; ++s) {
        auto r = duf.find(s).first;
        auto it = dcomp.find(r);
        if (it == dcomp.end()) {
            it = dcomp.emplace(r, static_cast<int>(res.trace.size())).first;
            TraceComponent tc;
            tc.surface_component = cell_comp[static_cast<std::size_t>(s / 2)];
            res.trace.push_back(tc);
        }
        side_comp[static_cast<std::size_t>(s)] = it->second;
        res.trace[it->second].sides.push_back({s / 2, static_cast<int>(s % 2)});
    }
    std::vector<int> tri_comp(static_cast<std::size_t>(BX.size()), -1);
    for (int i = 0; i < BX.size(); ++i) {
        const auto& T = BX.triangle(i);
        const auto& src = res.source[static_cast<std::size_t>(T.tet)];
        if (src.kind == CutTetSource::kDiscSide && T.face == 0) {
            int c = side_comp[static_cast<std::size_t>(2 * src.cell + src.side)];
            tri_comp[i] = c;
            res.trace[c].faces.push_back({T.tet, T.face});
        }
    }
    for (int c = 0; c < static_cast<int>(res.trace.size()); ++c) {
        auto& tc = res.trace[c];
        tc.curve = NormalCurveVec(BX.size());
        auto is_curve_edge = [&](int i, int e) { return tri_comp[i] < 0 && tri_comp[BX.across(i, e).tri] == c; };
        std::vector<char> on_curve(static_cast<std::size_t>(BX.vertex_count()), 0);
        for (int i = 0; i < BX.size(); ++i)
            for (int e = 0; e < 3; ++e)
                if (is_curve_edge(i, e)) {
                    on_curve[BX.vertex_of(i, (e + 1) % 3)] = 1;
                    on_curve[BX.vertex_of(i, (e + 2) % 3)] = 1;
                }
        for (int i = 0; i < BX.size(); ++i) {
            if (tri_comp[i] >= 0) continue;
            for (int corner = 0; corner < 3; ++corner) {
                std::int64_t a = is_curve_edge(i, corner) ? 1 : 0;
                if (on_curve[BX.vertex_of(i, corner)] && !is_curve_edge(i, (corner + 1) % 3) &&
                    !is_curve_edge(i, (corner + 2) % 3))
                    ++a;
                tc.curve.at(i, corner) = a;
            }
        }
        if (!curve_matches(BX, tc.curve)) throw std::logic_error("cut: pushed-off trace curve is not normal");
    }
    return res;
}

inline CutResult cut_along(const Triangulation& tri, const NormalSurfaceVec& v, std::int64_t cap = kDefaultDiscCap) {
    auto lab = find_orientation(tri);
    if (!lab) throw InputError("triangulation is not orientable");
    return cut_along(tri, *lab, v, cap);
}

// Text form: complement, then trace and correspondence lines.
inline std::string to_text(const CutResult& r) {
    std::ostringstream os;
    os << to_text(r.complement, r.labels);
    for (std::size_t c = 0; c < r.trace.size(); ++c) {
        os << "trace " << c << ":";
        for (auto x : r.trace[c].curve.c) os << ' ' << x;
        os << '\n';
    }
    for (std::size_t i = 0; i < r.source.size(); ++i)
        os << "corresp " << i << ' ' << r.source[i].old_tet << ' ' << r.source[i].region << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Components.

struct ComponentPiece {
    Triangulation tri;
    OrientationLabels labels;
    std::vector<int> tets;  // piece tet -> parent tet
    std::vector<int> boundary_triangles;  // piece boundary triangle -> parent boundary triangle
};

// One connected component, tetrahedra kept in their original relative order.
inline ComponentPiece extract_component(const Triangulation& tri, const OrientationLabels& labels, int comp) {
    Skeleton sk = skeleton(tri);
    ComponentPiece p;
    std::vector<int> index(static_cast<std::size_t>(tri.size()), -1);
    for (int t = 0; t < tri.size(); ++t)
        if (sk.component_of[t] == comp) {
            index[t] = static_cast<int>(p.tets.size());
            p.tets.push_back(t);
        }
    p.tri = Triangulation(static_cast<int>(p.tets.size()));
    for (int i = 0; i < static_cast<int>(p.tets.size()); ++i) {
        int t = p.tets[i];
        p.labels.push_back(labels.empty() ? 1 : labels[t]);
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.adjacent(t, f);
            if (g) p.tri.join(i, f, index[g->tet], g->face, g->perm);
        }
    }
    int b = 0;
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (!tri.is_boundary(t, f)) continue;
            if (index[t] >= 0) p.boundary_triangles.push_back(b);
            ++b;
        }
    return p;
}

// Restriction of a curve on the parent boundary to a component's boundary.
inline NormalCurveVec restrict_curve(const ComponentPiece& p, const NormalCurveVec& c) {
    NormalCurveVec out(static_cast<int>(p.boundary_triangles.size()));
    for (std::size_t i = 0; i < p.boundary_triangles.size(); ++i)
        for (int k = 0; k < 3; ++k) out.at(static_cast<int>(i), k) = c.at(p.boundary_triangles[i], k);
    return out;
}

// ---------------------------------------------------------------------------
// Ball recognition.

inline constexpr std::int64_t kDefaultMoveBudget = 100'000;

// One-sided: true means the triangulation is a 3-ball. The boundary must be one 2-sphere, every
// vertex link a sphere or disc, and the cell complex must collapse to a point, lowest index first.
inline bool verify_ball(const Triangulation& tri, std::int64_t budget = kDefaultMoveBudget) {
    if (tri.size() == 0 || tri.boundary_face_count() == 0) return false;
    auto lab = find_orientation(tri);
    if (!lab) return false;
    Skeleton sk;
    try {
        sk = skeleton(tri);
    } catch (const InputError&) {
        return false;
    }
    if (sk.component_count != 1) return false;
    BoundarySurface B = boundary_surface(tri, *lab);
    if (B.component_count() != 1 || B.euler_characteristic() != 2) return false;
    // vertex links are connected by construction of the vertex classes; their Euler characteristic
    // is edge ends - face corners + tetrahedron corners at the vertex
    std::vector<int> link_chi(static_cast<std::size_t>(sk.vertex_count), 0);
    for (int e = 0; e < sk.edge_count; ++e) {
        auto [t, le] = sk.edge_rep[e];
        for (int end : {0, 1}) ++link_chi[sk.vertex_of[t][kEdgeVerts[le][end]]];
    }
    for (int fc = 0; fc < sk.face_count; ++fc) {
        auto [t, f] = sk.face_rep[fc];
        for (int v : face_vertices(f)) --link_chi[sk.vertex_of[t][v]];
    }
    for (int t = 0; t < tri.size(); ++t)
        for (int v = 0; v < 4; ++v) ++link_chi[sk.vertex_of[t][v]];
    for (int x = 0; x < sk.vertex_count; ++x)
        if (link_chi[x] != (sk.vertex_boundary[x] ? 1 : 2)) return false;
    // cells by dimension: 0 vertices, 1 edges, 2 faces, 3 tets; boundary lists with multiplicity
    const int n = tri.size();
    std::array<int, 4> count{sk.vertex_count, sk.edge_count, sk.face_count, n};
    std::array<std::vector<std::vector<int>>, 4> bd, cobd;
    for (int d = 0; d < 4; ++d) {
        bd[d].resize(static_cast<std::size_t>(count[d]));
        cobd[d].resize(static_cast<std::size_t>(count[d]));
    }
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) bd[3][t].push_back(sk.face_of[t][f]);
    for (int fc = 0; fc < sk.face_count; ++fc) {
        auto [t, f] = sk.face_rep[fc];
        auto fv = face_vertices(f);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) bd[2][fc].push_back(sk.edge_of[t][edge_index(fv[i], fv[j])]);
    }
    for (int e = 0; e < sk.edge_count; ++e) {
        auto [t, le] = sk.edge_rep[e];
        bd[1][e] = {sk.vertex_of[t][kEdgeVerts[le][0]], sk.vertex_of[t][kEdgeVerts[le][1]]};
    }
    std::array<std::vector<int>, 4> up;  // incidences from live cells one dimension higher
    std::array<std::vector<char>, 4> alive;
    for (int d = 0; d < 4; ++d) {
        up[d].assign(static_cast<std::size_t>(count[d]), 0);
        alive[d].assign(static_cast<std::size_t>(count[d]), 1);
    }
    for (int d = 1; d < 4; ++d)
        for (int c = 0; c < count[d]; ++c)
            for (int x : bd[d][c]) {
                ++up[d - 1][x];
                cobd[d - 1][x].push_back(c);
            }
    std::array<std::set<int>, 3> free;  // free[d]: d-cells with exactly one incidence from above
    for (int d = 0; d < 3; ++d)
        for (int c = 0; c < count[d]; ++c)
            if (up[d][c] == 1) free[d].insert(c);
    std::array<int, 4> live = count;
    auto kill = [&](int d, int c) {
        alive[d][c] = 0;
        --live[d];
        if (d < 3) free[d].erase(c);
        if (d == 0) return;
        for (int x : bd[d][c]) {
            if (!alive[d - 1][x]) continue;
            int& u = up[d - 1][x];
            --u;
            if (u == 1) free[d - 1].insert(x);
            else free[d - 1].erase(x);
        }
    };
    std::int64_t moves = 0;
    while (true) {
        int d = 2;
        while (d >= 0 && free[d].empty()) --d;
        if (d < 0) break;
        if (++moves > budget) return false;
        int s = *free[d].begin();
        int owner = -1;
        for (int c : cobd[d][s])
            if (alive[d + 1][c]) owner = c;
        kill(d + 1, owner);
        kill(d, s);
    }
    return live[3] == 0 && live[2] == 0 && live[1] == 0 && live[0] == 1;
}

// ---------------------------------------------------------------------------
// Solid tori.

// |algebraic intersection| of two connected curves.
inline std::int64_t intersection_magnitude(const BoundarySurface& B, const NormalCurveVec& a, const NormalCurveVec& b) {
    std::int64_t i = algebraic_intersection(B, orient_connected(B, a), orient_connected(B, b));
    return i < 0 ? -i : i;
}

struct SolidTorusCheck {
    bool disc = false;                    // one disc with one boundary curve
    std::optional<std::int64_t> intersection;
    bool ball = false;
    std::string note;
    bool ok() const { return disc && intersection && *intersection == 1 && ball; }
};

inline SolidTorusCheck check_solid_torus(const Triangulation& tri, const OrientationLabels& labels,
                                         const NormalSurfaceVec& disc, const NormalCurveVec& curve,
                                         std::int64_t budget = kDefaultMoveBudget) {
    if (tri.boundary_face_count() == 0) throw InputError("boundary is not a single torus");
    BoundarySurface B = boundary_surface(tri, labels);
    if (B.component_count() != 1 || B.euler_characteristic() != 0) throw InputError("boundary is not a single torus");
    SolidTorusCheck out;
    if (auto r = admissibility_violation(tri, disc)) {
        out.note = "disc: " + r->message();
        return out;
    }
    SurfaceSummary s = analyze(tri, disc);
    out.disc = s.component_count() == 1 && s.components[0].euler == 1 && s.components[0].boundary_curves == 1;
    if (!out.disc) {
        out.note = "not a disc";
        return out;
    }
    if (curve.triangles() != B.size() || !curve_matches(B, curve)) {
        out.note = "curve is not a normal curve on the boundary";
        return out;
    }
    try {
        out.intersection = intersection_magnitude(B, curve, to_curve(boundary_curve_coords(B, disc)));
    } catch (const InputError& e) {
        out.note = e.what();
        return out;
    }
    if (*out.intersection != 1) {
        out.note = "intersection " + std::to_string(*out.intersection);
        return out;
    }
    CutResult c = cut_along(tri, labels, disc);
    out.ball = c.component_count == 1 && verify_ball(c.complement, budget);
    if (!out.ball) out.note = "complement not verified as a ball";
    return out;
}

inline bool verify_solid_torus(const Triangulation& tri, const NormalSurfaceVec& disc, const NormalCurveVec& curve) {
    auto lab = find_orientation(tri);
    if (!lab) throw InputError("triangulation is not orientable");
    return check_solid_torus(tri, *lab, disc, curve).ok();
}

// ---------------------------------------------------------------------------
// Push-off of a 2-dimensional subcomplex.

// The frontier of a regular neighbourhood of a union of face classes, as a normal surface. Within
// every tetrahedron each component of the preimage must be a single vertex, edge or face.
inline std::optional<NormalSurfaceVec> pushoff_of_faces(const Triangulation& tri, const Skeleton& sk,
                                                        const std::vector<int>& face_classes) {
    std::vector<char> inF(static_cast<std::size_t>(sk.face_count), 0), inE(static_cast<std::size_t>(sk.edge_count), 0),
        inV(static_cast<std::size_t>(sk.vertex_count), 0);
    for (int fc : face_classes) {
        inF[fc] = 1;
        auto [t, f] = sk.face_rep[fc];
        auto fv = face_vertices(f);
        for (int i = 0; i < 3; ++i) {
            inV[sk.vertex_of[t][fv[i]]] = 1;
            for (int j = i + 1; j < 3; ++j) inE[sk.edge_of[t][edge_index(fv[i], fv[j])]] = 1;
        }
    }
    NormalSurfaceVec out(tri.size());
    for (int t = 0; t < tri.size(); ++t) {
        std::array<int, 4> comp{0, 1, 2, 3};
        auto root = [&](int x) {
            while (comp[x] != x) x = comp[x];
            return x;
        };
        std::array<char, 4> vin{};
        for (int u = 0; u < 4; ++u) vin[u] = inV[sk.vertex_of[t][u]];
        for (int e = 0; e < 6; ++e)
            if (inE[sk.edge_of[t][e]]) {
                int a = root(kEdgeVerts[e][0]), b = root(kEdgeVerts[e][1]);
                if (a != b) comp[std::max(a, b)] = std::min(a, b);
            }
        int quad = -1;
        for (int r = 0; r < 4; ++r) {
            if (!vin[r] || root(r) != r) continue;
            std::vector<int> vs;
            for (int u = 0; u < 4; ++u)
                if (vin[u] && root(u) == r) vs.push_back(u);
            int ne = 0, nf = 0;
            for (int e = 0; e < 6; ++e)
                if (inE[sk.edge_of[t][e]] && root(kEdgeVerts[e][0]) == r) ++ne;
            for (int f = 0; f < 4; ++f) {
                if (!inF[sk.face_of[t][f]]) continue;
                bool all = true;
                for (int u : face_vertices(f))
                    if (root(u) != r) all = false;
                if (all) ++nf;
            }
            if (vs.size() == 1 && ne == 0) out.at(t, vs[0]) += 1;
            else if (vs.size() == 2 && ne == 1 && nf == 0) {
                int k = quad_separating(vs[0], vs[1]);
                if (quad >= 0 && quad != k) return std::nullopt;
                quad = k;
                out.at(t, 4 + k) += 1;
            } else if (vs.size() == 3 && ne == 3 && nf == 1) {
                out.at(t, 6 - vs[0] - vs[1] - vs[2]) += 1;
            } else {
                return std::nullopt;
            }
        }
    }
    if (admissibility_violation(tri, out)) return std::nullopt;
    return out;
}

}  // namespace sfscert
