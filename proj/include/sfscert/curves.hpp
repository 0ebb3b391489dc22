#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "boundary.hpp"
#include "error.hpp"

namespace sfscert {

// Arc counts on a closed 2-triangulation, three per triangle, indexed by the corner the arc cuts off.
struct NormalCurveVec {
    std::vector<std::int64_t> c;

    NormalCurveVec() = default;
    explicit NormalCurveVec(int triangles) : c(static_cast<std::size_t>(3 * triangles), 0) {}
    explicit NormalCurveVec(std::vector<std::int64_t> v) : c(std::move(v)) {}

    std::int64_t at(int tri, int corner) const { return c[static_cast<std::size_t>(3 * tri + corner)]; }
    std::int64_t& at(int tri, int corner) { return c[static_cast<std::size_t>(3 * tri + corner)]; }
    int triangles() const { return static_cast<int>(c.size() / 3); }
    std::int64_t total() const { return std::accumulate(c.begin(), c.end(), std::int64_t{0}); }
    bool is_zero() const { return total() == 0; }
    // Points on edge k of triangle tri.
    std::int64_t edge_points(int tri, int k) const { return at(tri, (k + 1) % 3) + at(tri, (k + 2) % 3); }

    friend bool operator==(const NormalCurveVec&, const NormalCurveVec&) = default;
    friend NormalCurveVec operator+(const NormalCurveVec& a, const NormalCurveVec& b) {
        if (a.c.size() != b.c.size()) throw InputError("curve sum: different surfaces");
        NormalCurveVec s = a;
        for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] += b.c[i];
        return s;
    }
};

inline NormalCurveVec to_curve(const std::vector<BigInt>& coords) {
    NormalCurveVec v;
    v.c.reserve(coords.size());
    for (const auto& x : coords) {
        if (x < 0 || x > INT64_MAX) throw InputError("curve coordinate out of range");
        v.c.push_back(static_cast<std::int64_t>(x));
    }
    return v;
}

// Forward convention, used everywhere: an arc at corner c is forward when it passes the corner
// vertex on its left. With counterclockwise corners this means it enters through edge c+2 and
// leaves through edge c+1.
inline int forward_entry_edge(int corner) { return (corner + 2) % 3; }
inline int forward_exit_edge(int corner) { return (corner + 1) % 3; }

// Signed coordinates: per arc type, (forward count, backward count).
struct OrientedNormalCurve {
    std::vector<std::array<std::int64_t, 2>> fb;

    int triangles() const { return static_cast<int>(fb.size() / 3); }
    std::int64_t fwd(int tri, int corner) const { return fb[static_cast<std::size_t>(3 * tri + corner)][0]; }
    std::int64_t bwd(int tri, int corner) const { return fb[static_cast<std::size_t>(3 * tri + corner)][1]; }
    std::int64_t net(int tri, int corner) const { return fwd(tri, corner) - bwd(tri, corner); }
    NormalCurveVec unsigned_curve() const {
        NormalCurveVec v(triangles());
        for (std::size_t i = 0; i < fb.size(); ++i) v.c[i] = fb[i][0] + fb[i][1];
        return v;
    }
    OrientedNormalCurve reversed() const {
        OrientedNormalCurve r = *this;
        for (auto& p : r.fb) std::swap(p[0], p[1]);
        return r;
    }
    friend bool operator==(const OrientedNormalCurve&, const OrientedNormalCurve&) = default;
    friend bool operator<(const OrientedNormalCurve& a, const OrientedNormalCurve& b) { return a.fb < b.fb; }
};

struct ArcStep {
    int tri = -1;
    int corner = -1;
    std::int64_t copy = 0;  // 0 is nearest the corner
    bool forward = true;
    friend bool operator==(const ArcStep&, const ArcStep&) = default;
};

struct CurveComponent {
    NormalCurveVec vec;
    std::vector<ArcStep> itinerary;  // closed cyclic sequence
};

inline constexpr std::int64_t kDefaultArcCap = 10'000'000;

// Matching across every edge gluing of the surface.
inline bool curve_matches(const BoundarySurface& B, const NormalCurveVec& v) {
    if (v.triangles() != B.size()) return false;
    for (std::int64_t x : v.c)
        if (x < 0) return false;
    for (int i = 0; i < B.size(); ++i)
        for (int k = 0; k < 3; ++k) {
            const EdgeRef& o = B.across(i, k);
            if (v.edge_points(i, k) != v.edge_points(o.tri, o.edge)) return false;
        }
    return true;
}

namespace detail {

// Arc through position p (counted from corner k+1) of edge k in triangle tri.
inline ArcStep arc_at_edge_position(const NormalCurveVec& v, int tri, int k, std::int64_t p) {
    int c1 = (k + 1) % 3, c2 = (k + 2) % 3;
    std::int64_t n = v.edge_points(tri, k);
    if (p < v.at(tri, c1)) return {tri, c1, p, true};
    return {tri, c2, n - 1 - p, false};
}

// Position (from corner k+1) where the arc leaves through edge k.
inline std::int64_t exit_position(const NormalCurveVec& v, const ArcStep& a, int k) {
    return (a.corner == (k + 1) % 3) ? a.copy : v.edge_points(a.tri, k) - 1 - a.copy;
}

// Arc entered after leaving a through its exit edge; the returned step's direction is the
// direction of travel.
inline ArcStep next_arc(const BoundarySurface& B, const NormalCurveVec& v, const ArcStep& a) {
    int k = a.forward ? forward_exit_edge(a.corner) : forward_entry_edge(a.corner);
    std::int64_t p = exit_position(v, a, k);
    const EdgeRef& o = B.across(a.tri, k);
    std::int64_t q = v.edge_points(a.tri, k) - 1 - p;
    ArcStep b = arc_at_edge_position(v, o.tri, o.edge, q);
    // entering through edge o.edge: forward iff o.edge is the entry edge of b's corner
    b.forward = forward_entry_edge(b.corner) == o.edge;
    return b;
}

}  // namespace detail

inline std::vector<CurveComponent> trace_components(const BoundarySurface& B, const NormalCurveVec& v,
                                                    std::int64_t cap = kDefaultArcCap) {
    if (!curve_matches(B, v)) throw InputError("curve does not satisfy the matching equations");
    std::int64_t total = v.total();
    if (total > cap) throw CapExceeded("arc count cap exceeded", static_cast<unsigned long long>(total));
    std::vector<std::int64_t> offset(v.c.size() + 1, 0);
    for (std::size_t i = 0; i < v.c.size(); ++i) offset[i + 1] = offset[i] + v.c[i];
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    auto id = [&](const ArcStep& a) { return offset[static_cast<std::size_t>(3 * a.tri + a.corner)] + a.copy; };
    std::vector<CurveComponent> out;
    for (int t = 0; t < B.size(); ++t)
        for (int c = 0; c < 3; ++c)
            for (std::int64_t j = 0; j < v.at(t, c); ++j) {
                ArcStep start{t, c, j, true};
                if (seen[static_cast<std::size_t>(id(start))]) continue;
                CurveComponent comp;
                comp.vec = NormalCurveVec(B.size());
                ArcStep cur = start;
                do {
                    seen[static_cast<std::size_t>(id(cur))] = 1;
                    comp.itinerary.push_back(cur);
                    comp.vec.at(cur.tri, cur.corner) += 1;
                    cur = detail::next_arc(B, v, cur);
                } while (!(cur.tri == start.tri && cur.corner == start.corner && cur.copy == start.copy));
                if (!cur.forward) throw InputError("curve trace returned with the wrong direction");
                out.push_back(std::move(comp));
            }
    return out;
}

inline OrientedNormalCurve signed_coords(int triangles, const std::vector<ArcStep>& itinerary) {
    OrientedNormalCurve o;
    o.fb.assign(static_cast<std::size_t>(3 * triangles), {0, 0});
    for (const auto& a : itinerary) o.fb[static_cast<std::size_t>(3 * a.tri + a.corner)][a.forward ? 0 : 1] += 1;
    return o;
}

// Deterministic orientation: the lexicographically least of the two signed vectors.
inline OrientedNormalCurve orient(const BoundarySurface& B, const CurveComponent& comp) {
    if (comp.itinerary.empty()) throw InputError("orient: empty curve");
    OrientedNormalCurve a = signed_coords(B.size(), comp.itinerary);
    OrientedNormalCurve b = a.reversed();
    return std::min(a, b);
}

inline CurveComponent reverse_itinerary(const CurveComponent& comp) {
    CurveComponent r = comp;
    std::reverse(r.itinerary.begin(), r.itinerary.end());
    for (auto& a : r.itinerary) a.forward = !a.forward;
    return r;
}

// Orients a connected curve vector; throws if it has more than one component.
inline OrientedNormalCurve orient_connected(const BoundarySurface& B, const NormalCurveVec& v) {
    auto comps = trace_components(B, v);
    if (comps.size() != 1) throw InputError("curve is not connected (" + std::to_string(comps.size()) + " components)");
    return orient(B, comps[0]);
}

// Signed matching: net crossings agree across every edge gluing.
inline bool signed_matches(const BoundarySurface& B, const OrientedNormalCurve& a) {
    if (a.triangles() != B.size()) return false;
    // net flow out of triangle tri through edge k
    auto out_flow = [&](int tri, int k) {
        int c_exit_fwd = (k + 2) % 3;  // corners whose forward exit edge is k: c+1 = k
        int c_entry_fwd = (k + 1) % 3;  // corners whose forward entry edge is k: c+2 = k
        return a.net(tri, c_exit_fwd) - a.net(tri, c_entry_fwd);
    };
    for (int i = 0; i < B.size(); ++i)
        for (int k = 0; k < 3; ++k) {
            const EdgeRef& o = B.across(i, k);
            if (out_flow(i, k) != -out_flow(o.tri, o.edge)) return false;
        }
    return true;
}

namespace detail {

// Whether curve a's half of edge k of triangle tri is the half at corner k+1. The lower side of
// each glued pair gives its corner k+1 end to the first curve.
inline bool first_half_at_k1(const BoundarySurface& B, int tri, int k) {
    const EdgeRef& o = B.across(tri, k);
    bool canonical = std::make_pair(tri, k) < std::make_pair(o.tri, o.edge);
    return canonical;
}

}  // namespace detail

// Algebraic intersection number from signed coordinates, with a's crossing points pushed into the
// designated half of every edge and b's into the other half.
inline std::int64_t algebraic_intersection(const BoundarySurface& B, const OrientedNormalCurve& a,
                                           const OrientedNormalCurve& b) {
    if (a.triangles() != B.size() || b.triangles() != B.size()) throw InputError("curves live on a different surface");
    std::int64_t total = 0;
    for (int t = 0; t < B.size(); ++t) {
        // near[k][corner]: a's half of edge k lies at that corner
        auto a_near = [&](int k, int corner) {
            bool at_k1 = detail::first_half_at_k1(B, t, k);
            return at_k1 ? corner == (k + 1) % 3 : corner == (k + 2) % 3;
        };
        for (int c = 0; c < 3; ++c) {
            std::int64_t na = a.net(t, c);
            if (na == 0) continue;
            int e_in = (c + 2) % 3, e_out = (c + 1) % 3;
            // both at corner c
            {
                std::int64_t nb = b.net(t, c);
                bool an_in = a_near(e_in, c), an_out = a_near(e_out, c);
                if (an_in && !an_out) total += na * nb;
                else if (!an_in && an_out) total -= na * nb;
            }
            // b at corner c+1 shares edge c+2 = e_in
            if (a_near(e_in, (c + 1) % 3)) total += na * b.net(t, (c + 1) % 3);
            // b at corner c+2 shares edge c+1 = e_out
            if (a_near(e_out, (c + 2) % 3)) total -= na * b.net(t, (c + 2) % 3);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Geometric oracle: straight arcs on explicit coordinates, a and b on opposite halves of each edge.

namespace detail {

using i128 = __int128;

struct Pt {
    i128 x, y;
};

inline i128 cross(const Pt& o, const Pt& a, const Pt& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

inline int sgn(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Per-copy directions of a connected oriented curve.
inline std::vector<std::vector<char>> copy_directions(const BoundarySurface& B, const OrientedNormalCurve& o,
                                                      std::int64_t cap) {
    NormalCurveVec u = o.unsigned_curve();
    auto comps = trace_components(B, u, cap);
    if (comps.size() != 1) throw InputError("oracle: curve is not connected");
    CurveComponent comp = comps[0];
    if (signed_coords(B.size(), comp.itinerary) != o) {
        comp = reverse_itinerary(comp);
        if (signed_coords(B.size(), comp.itinerary) != o) throw InputError("oracle: signed coordinates are not realizable");
    }
    std::vector<std::vector<char>> dir(static_cast<std::size_t>(3 * B.size()));
    for (int t = 0; t < B.size(); ++t)
        for (int c = 0; c < 3; ++c) dir[static_cast<std::size_t>(3 * t + c)].assign(static_cast<std::size_t>(u.at(t, c)), 1);
    for (const auto& s : comp.itinerary) dir[static_cast<std::size_t>(3 * s.tri + s.corner)][static_cast<std::size_t>(s.copy)] = s.forward;
    return dir;
}

}  // namespace detail

struct OracleResult {
    std::int64_t algebraic = 0;
    std::int64_t crossings = 0;  // unsigned count in the realization
};

inline OracleResult geometric_oracle_full(const BoundarySurface& B, const OrientedNormalCurve& a,
                                          const OrientedNormalCurve& b, std::int64_t cap = kDefaultArcCap) {
    if (a.triangles() != B.size() || b.triangles() != B.size()) throw InputError("curves live on a different surface");
    NormalCurveVec ua = a.unsigned_curve(), ub = b.unsigned_curve();
    if (ua.total() + ub.total() > cap) throw CapExceeded("arc count cap exceeded", static_cast<unsigned long long>(ua.total() + ub.total()));
    auto da = detail::copy_directions(B, a, cap);
    auto db = detail::copy_directions(B, b, cap);
    OracleResult res;
    using detail::Pt;
    for (int t = 0; t < B.size(); ++t) {
        std::int64_t n[3];
        for (int k = 0; k < 3; ++k) n[k] = ua.edge_points(t, k) + ub.edge_points(t, k) + 1;
        const detail::i128 W = static_cast<detail::i128>(n[0]) * n[1] * n[2];
        const Pt P[3] = {{0, 0}, {W, 0}, {0, W}};
        // point of curve (0 = a, 1 = b) on edge k at its own position p counted from corner k+1
        auto point = [&](int which, int k, std::int64_t p) {
            const NormalCurveVec& other = which == 0 ? ub : ua;
            bool a_at_k1 = detail::first_half_at_k1(B, t, k);
            bool mine_at_k1 = (which == 0) == a_at_k1;
            std::int64_t slot = mine_at_k1 ? p + 1 : other.edge_points(t, k) + p + 1;
            const Pt& s = P[(k + 1) % 3];
            const Pt& e = P[(k + 2) % 3];
            detail::i128 step = W / n[k];
            return Pt{s.x + (e.x - s.x) / W * step * slot, s.y + (e.y - s.y) / W * step * slot};
        };
        // segment of an arc, oriented along its direction of travel
        auto segment = [&](int which, int c, std::int64_t j, bool fwd) {
            const NormalCurveVec& me = which == 0 ? ua : ub;
            int ein = (c + 2) % 3, eout = (c + 1) % 3;
            // position counted from corner k+1 of the arc at corner c, copy j
            auto pos = [&](int k) { return c == (k + 1) % 3 ? j : me.edge_points(t, k) - 1 - j; };
            Pt p = point(which, ein, pos(ein)), q = point(which, eout, pos(eout));
            return fwd ? std::make_pair(p, q) : std::make_pair(q, p);
        };
        for (int ca = 0; ca < 3; ++ca)
            for (std::int64_t ja = 0; ja < ua.at(t, ca); ++ja) {
                auto [a0, a1] = segment(0, ca, ja, da[static_cast<std::size_t>(3 * t + ca)][static_cast<std::size_t>(ja)]);
                for (int cb = 0; cb < 3; ++cb)
                    for (std::int64_t jb = 0; jb < ub.at(t, cb); ++jb) {
                        auto [b0, b1] = segment(1, cb, jb, db[static_cast<std::size_t>(3 * t + cb)][static_cast<std::size_t>(jb)]);
                        int s1 = detail::sgn(detail::cross(a0, a1, b0)), s2 = detail::sgn(detail::cross(a0, a1, b1));
                        int s3 = detail::sgn(detail::cross(b0, b1, a0)), s4 = detail::sgn(detail::cross(b0, b1, a1));
                        if (s1 * s2 < 0 && s3 * s4 < 0) {
                            Pt da_{a1.x - a0.x, a1.y - a0.y}, db_{b1.x - b0.x, b1.y - b0.y};
                            res.algebraic += detail::sgn(da_.x * db_.y - da_.y * db_.x);
                            ++res.crossings;
                        }
                    }
            }
    }
    return res;
}

inline std::int64_t geometric_oracle(const BoundarySurface& B, const OrientedNormalCurve& a, const OrientedNormalCurve& b,
                                     std::int64_t cap = kDefaultArcCap) {
    return geometric_oracle_full(B, a, b, cap).algebraic;
}

// ---------------------------------------------------------------------------
// Standard surfaces used by tests and the command line.

// Two triangles, one vertex: T0 e0~T1 e1, T0 e1~T1 e2, T0 e2~T1 e0.
inline BoundarySurface two_triangle_torus() {
    return BoundarySurface::from_gluings({{EdgeRef{1, 1}, EdgeRef{1, 2}, EdgeRef{1, 0}},
                                          {EdgeRef{0, 2}, EdgeRef{0, 0}, EdgeRef{0, 1}}});
}

// Curve with the given crossing counts per edge class, where edge class of (tri, k) is given by
// a weight lookup. Arc count at corner c is half the excess of the two adjacent edges.
inline NormalCurveVec curve_from_edge_weights(const BoundarySurface& B, const std::vector<std::array<std::int64_t, 3>>& w) {
    NormalCurveVec v(B.size());
    for (int t = 0; t < B.size(); ++t)
        for (int c = 0; c < 3; ++c) {
            std::int64_t s = w[t][(c + 1) % 3] + w[t][(c + 2) % 3] - w[t][c];
            if (s < 0 || s % 2) throw InputError("edge weights violate the triangle conditions");
            v.at(t, c) = s / 2;
        }
    if (!curve_matches(B, v)) throw InputError("edge weights do not match across edges");
    return v;
}

// Slope (p,q) on the two-triangle torus: crossings |q|, |p|, |p-q| with edge classes 0, 1, 2,
// where class i contains edge i of triangle 0.
inline NormalCurveVec torus_slope(std::int64_t p, std::int64_t q) {
    BoundarySurface B = two_triangle_torus();
    std::int64_t h = q < 0 ? -q : q, v = p < 0 ? -p : p, d = p - q < 0 ? q - p : p - q;
    // triangle 1: edge 1 ~ class 0, edge 2 ~ class 1, edge 0 ~ class 2
    return curve_from_edge_weights(B, {{h, v, d}, {d, h, v}});
}

}  // namespace sfscert
