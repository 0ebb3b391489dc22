#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "surfaces.hpp"
#include "triangulation.hpp"

namespace sfscert {

struct MatchingSystem {
    int columns = 0;
    int tets = 0;
    // sparse rows: (column, coefficient)
    std::vector<std::vector<std::pair<int, int>>> rows;
    std::vector<int> row_norm_sq;  // squared l2 norm of each row

    int max_norm_sq() const {
        int m = 1;
        for (int x : row_norm_sq) m = std::max(m, x);
        return m;
    }

    std::vector<BigInt> apply(const NormalSurfaceVec& v) const {
        std::vector<BigInt> out(rows.size(), 0);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (auto [c, a] : rows[r]) out[r] += a * v[static_cast<std::size_t>(c)];
        return out;
    }
};

inline MatchingSystem build_matching_system(const Triangulation& tri) {
    MatchingSystem sys;
    sys.tets = tri.size();
    sys.columns = 7 * tri.size();
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.adjacent(t, f);
            if (!g || std::make_pair(g->tet, g->face) < std::make_pair(t, f)) continue;
            for (int c = 0; c < 4; ++c) {
                if (c == f) continue;
                std::vector<int> coef(static_cast<std::size_t>(sys.columns), 0);
                coef[7 * t + c] += 1;
                coef[7 * t + 4 + quad_separating(c, f)] += 1;
                int c2 = g->perm[c];
                coef[7 * g->tet + c2] -= 1;
                coef[7 * g->tet + 4 + quad_separating(c2, g->face)] -= 1;
                std::vector<std::pair<int, int>> row;
                int nsq = 0;
                for (int i = 0; i < sys.columns; ++i)
                    if (coef[i]) {
                        row.push_back({i, coef[i]});
                        nsq += coef[i] * coef[i];
                    }
                sys.rows.push_back(row);
                sys.row_norm_sq.push_back(nsq);
            }
        }
    return sys;
}

// Least integer >= n^{3/2} * k^{n-1}, where k^2 = k_sq (k may be irrational).
inline BigInt lackenby_bound_sq(int n, int k_sq) {
    if (n < 1 || k_sq < 1) throw InputError("lackenby_bound: n and k must be positive");
    BigInt x = BigInt(n) * n * n;
    for (int i = 0; i < n - 1; ++i) x *= k_sq;
    BigInt r = sqrt(x);
    if (r * r < x) r += 1;
    return r;
}

inline BigInt lackenby_bound(int n, int k) { return lackenby_bound_sq(n, k * k); }

struct FundamentalSet {
    std::vector<NormalSurfaceVec> surfaces;
    std::vector<BigInt> max_coord;
    BigInt bound;
    std::int64_t nodes = 0;  // search nodes visited
};

struct EnumerationCaps {
    int max_tets = 6;
    std::int64_t max_nodes = 50'000'000;
};

namespace detail {

inline bool graded_less(const NormalSurfaceVec& a, const NormalSurfaceVec& b) {
    BigInt ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a.coords() < b.coords();
}

}  // namespace detail

// Fundamental (Hilbert basis) admissible vectors. Equations are added one at a time. For each
// new equation a, the current basis is lifted to pairs (x, a.x) and completed under sums of
// opposite-sign pairs with sign-compatible reduction; the elements with a.x = 0 form the basis of
// the smaller monoid. Vectors violating the quad condition are dropped as soon as they appear,
// which is safe because every summand of an admissible vector is admissible.
inline FundamentalSet enumerate_fundamentals(const MatchingSystem& sys, const EnumerationCaps& caps = {}) {
    if (sys.tets > caps.max_tets) throw CapExceeded("tetrahedron cap exceeded", static_cast<unsigned long long>(sys.tets));
    const int n = sys.columns;
    using Vec = std::vector<std::int32_t>;
    FundamentalSet out;
    auto quad_ok = [&](const Vec& v) {
        for (int t = 0; t < sys.tets; ++t) {
            int nz = 0;
            for (int q = 4; q < 7; ++q)
                if (v[7 * t + q]) ++nz;
            if (nz > 1) return false;
        }
        return true;
    };
    std::vector<Vec> basis;
    for (int j = 0; j < n; ++j) {
        Vec v(static_cast<std::size_t>(n), 0);
        v[j] = 1;
        basis.push_back(v);
    }
    struct Elem {
        Vec x;
        long long s;
    };
    auto leq = [&](const Vec& a, const Vec& b) {
        for (int i = 0; i < n; ++i)
            if (a[i] > b[i]) return false;
        return true;
    };
    for (const auto& row : sys.rows) {
        auto dot = [&](const Vec& x) {
            long long d = 0;
            for (auto [c, a] : row) d += static_cast<long long>(a) * x[c];
            return d;
        };
        std::vector<Elem> G;
        for (auto& b : basis) G.push_back({b, dot(b)});
        auto reduces = [&](const Elem& g, const Elem& e) {
            if ((g.s > 0 && e.s <= 0) || (g.s < 0 && e.s >= 0)) return false;
            if ((g.s < 0 ? -g.s : g.s) > (e.s < 0 ? -e.s : e.s)) return false;
            return leq(g.x, e.x);
        };
        auto normal_form = [&](Elem e) {
            bool changed = true;
            while (changed) {
                changed = false;
                for (const auto& g : G) {
                    if (++out.nodes > caps.max_nodes)
                        throw CapExceeded("enumeration budget exceeded", static_cast<unsigned long long>(out.nodes));
                    if (!reduces(g, e)) continue;
                    for (int i = 0; i < n; ++i) e.x[i] -= g.x[i];
                    e.s -= g.s;
                    changed = true;
                    bool zero = e.s == 0;
                    for (int i = 0; i < n && zero; ++i)
                        if (e.x[i]) zero = false;
                    if (zero) return e;
                }
            }
            return e;
        };
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < G.size(); ++i)
            for (std::size_t j = i + 1; j < G.size(); ++j)
                if ((G[i].s > 0 && G[j].s < 0) || (G[i].s < 0 && G[j].s > 0)) pairs.push_back({i, j});
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            auto [i, j] = pairs[pi];
            Elem e{G[i].x, G[i].s + G[j].s};
            for (int k = 0; k < n; ++k) e.x[k] += G[j].x[k];
            if (!quad_ok(e.x)) continue;
            e = normal_form(std::move(e));
            bool zero = e.s == 0;
            for (int k = 0; k < n && zero; ++k)
                if (e.x[k]) zero = false;
            if (zero) continue;
            std::size_t idx = G.size();
            G.push_back(std::move(e));
            for (std::size_t k = 0; k < idx; ++k)
                if ((G[k].s > 0 && G[idx].s < 0) || (G[k].s < 0 && G[idx].s > 0)) pairs.push_back({k, idx});
        }
        std::vector<Vec> next;
        for (auto& g : G)
            if (g.s == 0) next.push_back(g.x);
        // keep the minimal ones
        std::vector<Vec> minimal;
        std::sort(next.begin(), next.end(), [](const Vec& a, const Vec& b) {
            long long sa = 0, sb = 0;
            for (auto x : a) sa += x;
            for (auto x : b) sb += x;
            return sa != sb ? sa < sb : a < b;
        });
        for (auto& v : next) {
            bool red = false;
            for (const auto& m : minimal)
                if (leq(m, v)) {
                    red = true;
                    break;
                }
            if (!red) minimal.push_back(v);
        }
        basis = std::move(minimal);
    }
    for (const auto& s : basis) {
        NormalSurfaceVec v(sys.tets);
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = s[i];
        out.surfaces.push_back(v);
    }
    std::sort(out.surfaces.begin(), out.surfaces.end(), detail::graded_less);
    out.bound = lackenby_bound_sq(std::max(1, n), sys.max_norm_sq());
    for (const auto& v : out.surfaces) {
        BigInt mx = 0;
        for (const auto& x : v.coords()) mx = std::max(mx, x);
        out.max_coord.push_back(mx);
    }
    return out;
}

inline FundamentalSet enumerate_fundamentals(const Triangulation& tri, const EnumerationCaps& caps = {}) {
    return enumerate_fundamentals(build_matching_system(tri), caps);
}

using SurfacePredicate = std::function<bool(const NormalSurfaceVec&, const SurfaceSummary&)>;

inline std::optional<NormalSurfaceVec> find_fundamental_with(const Triangulation& tri, const FundamentalSet& fs,
                                                            const SurfacePredicate& pred) {
    for (const auto& v : fs.surfaces) {
        SurfaceSummary s = analyze(tri, v);
        if (pred(v, s)) return v;
    }
    return std::nullopt;
}

inline std::optional<NormalSurfaceVec> find_fundamental_with(const Triangulation& tri, const SurfacePredicate& pred,
                                                            const EnumerationCaps& caps = {}) {
    return find_fundamental_with(tri, enumerate_fundamentals(tri, caps), pred);
}

}  // namespace sfscert
