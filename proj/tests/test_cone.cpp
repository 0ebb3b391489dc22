#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sfscert/cone.hpp"
#include "sfscert/curves.hpp"
#include "test_helpers.hpp"

using namespace sfscert;

TEST(Cone, MatchingSystemShape) {
    EXPECT_EQ(build_matching_system(load_tri("free_tet.tri")).rows.size(), 0u);
    MatchingSystem lst = build_matching_system(load_tri("lst.tri"));
    // one internal face (the other two faces form the boundary torus), three arc types
    EXPECT_EQ(lst.rows.size(), 3u);
    for (const char* name : {"lst.tri", "lst2.tri", "lst3.tri", "t2xi.tri", "kxi.tri", "cone4.tri", "hb2.tri"}) {
        Triangulation t = load_tri(name);
        MatchingSystem sys = build_matching_system(t);
        for (const auto& row : sys.rows) {
            EXPECT_LE(row.size(), 4u);
            for (auto [c, a] : row) EXPECT_TRUE(a == 1 || a == -1);
        }
        for (int n : sys.row_norm_sq) EXPECT_LE(n, 4);
        Skeleton sk = skeleton(t);
        for (int v = 0; v < sk.vertex_count; ++v)
            for (const auto& x : sys.apply(vertex_link(t, v, sk))) EXPECT_EQ(x, 0) << name;
    }
}

TEST(Cone, LackenbyBound) {
    EXPECT_EQ(lackenby_bound(1, 1), 1);
    EXPECT_EQ(lackenby_bound(4, 1), 8);
    // least integer >= 7^{3/2} 2^6: 1185^2 < 7^3 2^12 <= 1186^2
    EXPECT_TRUE(BigInt(1185) * 1185 < BigInt(343) * 4096);
    EXPECT_EQ(lackenby_bound(7, 2), 1186);
}

TEST(Cone, FreeTetrahedronUnitVectors) {
    FundamentalSet fs = enumerate_fundamentals(load_tri("free_tet.tri"));
    ASSERT_EQ(fs.surfaces.size(), 7u);
    for (const auto& v : fs.surfaces) EXPECT_EQ(v.total(), 1);
}

TEST(Cone, FundamentalsAreAdmissibleBoundedIrreducible) {
    for (const char* name : {"lst.tri", "lst2.tri", "lst3.tri", "two_tets.tri", "t2xi.tri", "kxi.tri", "cone4.tri"}) {
        Triangulation t = load_tri(name);
        MatchingSystem sys = build_matching_system(t);
        FundamentalSet fs = enumerate_fundamentals(sys);
        for (std::size_t i = 0; i < fs.surfaces.size(); ++i) {
            const auto& v = fs.surfaces[i];
            EXPECT_FALSE(admissibility_violation(t, v)) << name;
            for (const auto& x : sys.apply(v)) EXPECT_EQ(x, 0);
            EXPECT_LE(fs.max_coord[i], fs.bound);
            for (std::size_t j = 0; j < fs.surfaces.size(); ++j)
                if (i != j) EXPECT_FALSE(oracle::leq(oracle::to_small(fs.surfaces[j]), oracle::to_small(v))) << name;
        }
        for (std::size_t i = 1; i < fs.surfaces.size(); ++i) EXPECT_FALSE(detail::graded_less(fs.surfaces[i], fs.surfaces[i - 1]));
    }
}

// Every admissible vector with coordinates <= 4 decomposes over the enumerated set, and the
// irreducibles found by brute force are exactly the enumerated fundamentals in that box.
TEST(Cone, CompletenessAgainstBruteForce) {
    for (const char* name : {"free_tet.tri", "lst.tri", "two_tets.tri", "lst2.tri", "lst3.tri"}) {
        Triangulation t = load_tri(name);
        auto all = oracle::admissible_up_to(t, 4);
        FundamentalSet fs = enumerate_fundamentals(t);
        std::vector<oracle::Small> gens;
        std::set<oracle::Small> in_box;
        for (const auto& v : fs.surfaces) {
            gens.push_back(oracle::to_small(v));
            if (fs.max_coord[gens.size() - 1] <= 4) in_box.insert(gens.back());
        }
        EXPECT_TRUE(oracle::all_decompose(all, gens)) << name;
        EXPECT_EQ(oracle::irreducibles(all), in_box) << name;
    }
}

TEST(Cone, SolidTorusMeridianDisc) {
    Triangulation t = load_tri("lst.tri");
    BoundarySurface B = boundary_surface(t, *find_orientation(t));
    auto longitude = orient_connected(B, to_curve({0, 1, 0, 0, 0, 1}));
    auto disc = find_fundamental_with(t, [&](const NormalSurfaceVec& v, const SurfaceSummary& s) {
        if (s.component_count() != 1 || s.euler() != 1 || s.boundary_curves() != 1) return false;
        auto d = orient_connected(B, to_curve(boundary_curve_coords(B, v)));
        return std::abs(algebraic_intersection(B, d, longitude)) == 1;
    });
    ASSERT_TRUE(disc);
    EXPECT_EQ(*disc, NormalSurfaceVec(std::vector<BigInt>{1, 0, 0, 1, 1, 0, 0}));
}

TEST(Cone, PredicatesWithoutSolutions) {
    auto chi = [](int want) {
        return [want](const NormalSurfaceVec&, const SurfaceSummary& s) {
            return s.component_count() == 1 && s.euler() == want && (want != 2 || s.components[0].closed);
        };
    };
    EXPECT_FALSE(find_fundamental_with(load_tri("lst.tri"), chi(3)));
    EXPECT_FALSE(find_fundamental_with(load_tri("lst.tri"), chi(2)));
    EXPECT_FALSE(find_fundamental_with(load_tri("lst3.tri"), chi(2)));
    EXPECT_TRUE(find_fundamental_with(load_tri("cone4.tri"), chi(2)));
}

TEST(Cone, TetCap) {
    EXPECT_THROW(enumerate_fundamentals(load_tri("fig8.tri")), CapExceeded);
    EXPECT_THROW(enumerate_fundamentals(load_tri("lst3.tri"), {2, 1000}), CapExceeded);
}
