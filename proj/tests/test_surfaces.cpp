#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sfscert/cone.hpp"
#include "sfscert/curves.hpp"
#include "sfscert/surfaces.hpp"
#include "test_helpers.hpp"

using namespace sfscert;

namespace {

NormalSurfaceVec vec(std::vector<BigInt> c) { return NormalSurfaceVec(std::move(c)); }

// Edge-ends at a vertex class, counted from the skeleton.
int edge_ends_at(const Triangulation& tri, int vertex) {
    Skeleton sk = skeleton(tri);
    int n = 0;
    for (int e = 0; e < sk.edge_count; ++e) {
        auto [t, le] = sk.edge_rep[e];
        for (int end : {0, 1})
            if (sk.vertex_of[t][kEdgeVerts[le][end]] == vertex) ++n;
    }
    return n;
}

}  // namespace

TEST(Surfaces, ZeroIsAdmissibleAndEmpty) {
    Triangulation t = load_tri("lst.tri");
    NormalSurfaceVec z = check_admissible(t, std::vector<BigInt>(7, 0));
    EXPECT_EQ(analyze(t, z).component_count(), 0);
    EXPECT_EQ(edge_weight(t, z), 0);
    EXPECT_EQ(decompress(t, z).cell_count(), 0);
}

TEST(Surfaces, Rejections) {
    Triangulation t = load_tri("lst.tri");
    try {
        check_admissible(t, {0, 0, 0, 0, 1, 1, 0});
        FAIL();
    } catch (const NotAdmissible& e) {
        EXPECT_EQ(e.rejection().condition, "quad-condition");
        EXPECT_EQ(e.rejection().tet, 0);
    }
    EXPECT_THROW(check_admissible(t, {1, 0, 0, 0, 0, 0, 0}), NotAdmissible);
    EXPECT_THROW(check_admissible(t, {-1, 0, 0, 0, 0, 0, 0}), NotAdmissible);
    EXPECT_THROW(check_admissible(t, {1, 1, 1}), InputError);
}

TEST(Surfaces, VertexLinkOfSolidTorusIsDisc) {
    Triangulation t = load_tri("lst.tri");
    Skeleton sk = skeleton(t);
    ASSERT_EQ(sk.vertex_count, 1);
    NormalSurfaceVec link = vertex_link(t, 0, sk);
    EXPECT_EQ(link, vec({1, 1, 1, 1, 0, 0, 0}));
    SurfaceSummary s = analyze(t, link);
    ASSERT_EQ(s.component_count(), 1);
    EXPECT_EQ(s.components[0].euler, 1);
    EXPECT_EQ(s.components[0].boundary_curves, 1);
    EXPECT_EQ(edge_weight(t, link), edge_ends_at(t, 0));
}

TEST(Surfaces, SingleTriangleDisc) {
    Triangulation t = load_tri("free_tet.tri");
    NormalSurfaceVec v = check_admissible(t, {1, 0, 0, 0, 0, 0, 0});
    SurfaceComplex cx = decompress(t, v);
    EXPECT_EQ(cx.cell_count(), 1);
    for (int f = 1; f < 4; ++f) EXPECT_EQ(cx.across(0, f), SurfaceComplex::kBoundary);
    SurfaceSummary s = analyze(t, v);
    EXPECT_EQ(s.euler(), 1);
    EXPECT_EQ(s.boundary_curves(), 1);
}

TEST(Surfaces, InternalVertexLinkIsSphere) {
    for (const char* name : {"cone4.tri", "free_tet.tri"}) {
        Triangulation t = load_tri(name);
        if (std::string(name) == "free_tet.tri") t = barycentric_subdivide(t);
        Skeleton sk = skeleton(t);
        int found = 0;
        for (int v = 0; v < sk.vertex_count; ++v) {
            if (sk.vertex_boundary[v]) continue;
            ++found;
            NormalSurfaceVec link = vertex_link(t, v, sk);
            SurfaceSummary s = analyze(t, link);
            ASSERT_EQ(s.component_count(), 1);
            EXPECT_EQ(s.components[0].euler, 2);
            EXPECT_TRUE(s.components[0].closed);
            EXPECT_TRUE(s.components[0].orientable);
            EXPECT_EQ(edge_weight(t, link), edge_ends_at(t, v));
        }
        EXPECT_EQ(found, 1) << name;
    }
}

TEST(Surfaces, MeridianDiscAndParallelCopies) {
    Triangulation t = load_tri("lst.tri");
    NormalSurfaceVec d = check_admissible(t, {1, 0, 0, 1, 1, 0, 0});
    SurfaceSummary s = analyze(t, d);
    ASSERT_EQ(s.component_count(), 1);
    EXPECT_EQ(s.components[0].euler, 1);
    EXPECT_EQ(s.components[0].boundary_curves, 1);
    for (int k = 2; k <= 4; ++k) {
        SurfaceSummary sk = analyze(t, scale(d, k));
        ASSERT_EQ(sk.component_count(), k);
        for (const auto& c : sk.components) {
            EXPECT_EQ(c.euler, 1);
            EXPECT_EQ(c.boundary_curves, 1);
        }
    }
    NormalSurfaceVec link = vertex_link(t, 0, skeleton(t));
    SurfaceSummary two = analyze(t, haken_sum(link, link));
    EXPECT_EQ(two.component_count(), 2);
}

TEST(Surfaces, HakenSumIncompatibleQuads) {
    Triangulation t = load_tri("lst.tri");
    NormalSurfaceVec a = check_admissible(t, {1, 0, 0, 1, 1, 0, 0});
    NormalSurfaceVec b = check_admissible(t, {0, 0, 0, 0, 0, 1, 0});
    EXPECT_THROW(haken_sum(a, b), NotAdmissible);
}

// Linearity and summary invariants over random sums of fundamentals.
TEST(Surfaces, SumProperties) {
    std::mt19937_64 rng(5);
    for (const char* name : {"lst.tri", "lst2.tri", "lst3.tri", "t2xi.tri", "kxi.tri"}) {
        Triangulation t = load_tri(name);
        auto lab = find_orientation(t);
        ASSERT_TRUE(lab);
        BoundarySurface B = boundary_surface(t, *lab);
        FundamentalSet fs = enumerate_fundamentals(t);
        ASSERT_FALSE(fs.surfaces.empty());
        std::uniform_int_distribution<std::size_t> pick(0, fs.surfaces.size() - 1);
        NormalSurfaceVec zero(t.size());
        for (int trial = 0; trial < 40; ++trial) {
            NormalSurfaceVec a = fs.surfaces[pick(rng)], b = fs.surfaces[pick(rng)];
            NormalSurfaceVec s;
            try {
                s = haken_sum(a, b);
            } catch (const NotAdmissible&) {
                continue;
            }
            EXPECT_EQ(haken_sum(a, zero), a);
            EXPECT_EQ(haken_sum(b, a), s);
            EXPECT_EQ(edge_weight(t, s), edge_weight(t, a) + edge_weight(t, b));
            SurfaceSummary sa = analyze(t, a), sb = analyze(t, b), ss = analyze(t, s);
            EXPECT_EQ(ss.euler(), sa.euler() + sb.euler());
            EXPECT_EQ(ss.total_weight, edge_weight(t, s));
            for (const auto& c : ss.components) {
                EXPECT_LE(c.euler, 2);
                if (c.euler == 2) EXPECT_TRUE(c.closed && c.orientable);
            }
            auto bc = boundary_curve_coords(B, s);
            auto ba = boundary_curve_coords(B, a), bb = boundary_curve_coords(B, b);
            for (std::size_t i = 0; i < bc.size(); ++i) EXPECT_EQ(bc[i], ba[i] + bb[i]);
            NormalCurveVec curve = to_curve(bc);
            EXPECT_TRUE(curve_matches(B, curve));
            EXPECT_EQ(static_cast<int>(trace_components(B, curve).size()), ss.boundary_curves());
        }
    }
}

TEST(Surfaces, TwoDiscSumInTwoTetSolidTorus) {
    Triangulation t = load_tri("lst2.tri");
    FundamentalSet fs = enumerate_fundamentals(t);
    std::vector<NormalSurfaceVec> discs;
    for (const auto& v : fs.surfaces) {
        SurfaceSummary s = analyze(t, v);
        if (s.component_count() == 1 && s.euler() == 1) discs.push_back(v);
    }
    int pairs = 0;
    for (std::size_t i = 0; i < discs.size(); ++i)
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            try {
                EXPECT_EQ(analyze(t, haken_sum(discs[i], discs[j])).euler(), 2);
                ++pairs;
            } catch (const NotAdmissible&) {
            }
        }
    EXPECT_GT(pairs, 0);
}

TEST(Surfaces, DecompressCap) {
    Triangulation t = load_tri("lst.tri");
    NormalSurfaceVec d = check_admissible(t, {1, 0, 0, 1, 1, 0, 0});
    EXPECT_THROW(analyze(t, scale(d, 10), 5), CapExceeded);
}

TEST(Surfaces, VectorLines) {
    auto lines = parse_surface_lines("# c\nsurface a: 1 2 3\nsurface 4 5\n");
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0].first, "a");
    EXPECT_EQ(lines[0].second.size(), 3u);
    EXPECT_EQ(lines[1].second[1], 5);
    EXPECT_THROW(parse_vector_lines("curve a: 1 x\n", "curve"), ParseError);
}
