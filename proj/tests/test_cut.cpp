#include <gtest/gtest.h>

#include "sfscert/certify.hpp"
#include "sfscert/cut.hpp"
#include "sfscert/homology.hpp"
#include "test_helpers.hpp"

using namespace sfscert;

namespace {

NormalSurfaceVec vec(std::vector<BigInt> c) { return NormalSurfaceVec(std::move(c)); }

int boundary_euler(const CutResult& c) {
    if (c.complement.boundary_face_count() == 0) return 0;
    return boundary_surface(c.complement, c.labels).euler_characteristic();
}

int boundary_euler(const Triangulation& t) {
    if (t.boundary_face_count() == 0) return 0;
    return boundary_surface(t, *find_orientation(t)).euler_characteristic();
}

void check_structure(const Triangulation& t, const CutResult& c) {
    ASSERT_EQ(c.source.size(), static_cast<std::size_t>(c.complement.size()));
    ASSERT_EQ(c.component_of.size(), static_cast<std::size_t>(c.complement.size()));
    for (const auto& s : c.source) {
        EXPECT_GE(s.old_tet, 0);
        EXPECT_LT(s.old_tet, t.size());
    }
    std::vector<bool> covered(static_cast<std::size_t>(t.size()), false);
    for (const auto& s : c.source) covered[static_cast<std::size_t>(s.old_tet)] = true;
    for (bool b : covered) EXPECT_TRUE(b);
    for (int x : c.component_of) {
        EXPECT_GE(x, 0);
        EXPECT_LT(x, c.component_count);
    }
    EXPECT_TRUE(check_orientation(c.complement, c.labels));
    if (!c.trace.empty()) {
        ASSERT_TRUE(c.boundary);
        for (const auto& tc : c.trace) {
            EXPECT_FALSE(tc.faces.empty());
            for (auto [nt, f] : tc.faces) EXPECT_TRUE(c.complement.is_boundary(nt, f));
            EXPECT_TRUE(curve_matches(*c.boundary, tc.curve));
        }
    }
}

}  // namespace

TEST(Cut, ZeroVectorGivesIsomorphicCopy) {
    for (const char* name : {"lst.tri", "t2xi.tri", "two_tets.tri"}) {
        Triangulation t = load_tri(name);
        CutResult c = cut_along(t, NormalSurfaceVec(t.size()));
        EXPECT_TRUE(is_isomorphic(c.complement, t)) << name;
        EXPECT_TRUE(c.trace.empty());
        EXPECT_EQ(c.component_count, 1);
        check_structure(t, c);
    }
}

TEST(Cut, SolidTorusAlongMeridianDisc) {
    Triangulation t = load_tri("lst.tri");
    CutResult c = cut_along(t, vec({1, 0, 0, 1, 1, 0, 0}));
    check_structure(t, c);
    EXPECT_EQ(c.component_count, 1);
    EXPECT_EQ(c.trace.size(), 2u);
    EXPECT_EQ(boundary_euler(c), 2);
    EXPECT_EQ(first_homology(c.complement).str(), "0");
    EXPECT_TRUE(verify_ball(c.complement));
    EXPECT_NE(to_text(c).find("trace 1:"), std::string::npos);
}

TEST(Cut, ThickenedTorusAlongVerticalAnnulus) {
    Triangulation t = load_tri("t2xi.tri");
    Certificate cert = parse_certificate(read_fixture("t2xi.cert.json"));
    const auto& tt = std::get<ThickenedTorusCert>(cert.v);
    CutResult c = cut_along(t, tt.annulus);
    check_structure(t, c);
    ASSERT_EQ(c.component_count, 1);
    EXPECT_EQ(c.trace.size(), 2u);
    EXPECT_EQ(first_homology(c.complement).str(), "Z");
    EXPECT_TRUE(is_isomorphic(c.complement, tt.cut.complement));
    auto mer = detail::find_piece_meridian(t, c, 0, 3, {1});
    ASSERT_TRUE(mer);
    ComponentPiece p = extract_component(c.complement, c.labels, 0);
    EXPECT_TRUE(verify_solid_torus(p.tri, mer->disc, mer->curve));
}

TEST(Cut, BoundaryEulerAccounting) {
    // cutting along S replaces the boundary by itself plus two copies of S (or the double cover)
    for (const char* name : {"lst.tri", "lst2.tri", "lst3.tri", "t2xi.tri", "kxi.tri", "cone4.tri"}) {
        Triangulation t = load_tri(name);
        auto lab = find_orientation(t);
        ASSERT_TRUE(lab);
        int chi_m = boundary_euler(t);
        int cuts = 0;
        for (const auto& v : enumerate_fundamentals(t).surfaces) {
            SurfaceSummary s = analyze(t, v);
            if (s.component_count() != 1) continue;
            CutResult c = cut_along(t, *lab, v);
            check_structure(t, c);
            EXPECT_EQ(boundary_euler(c), chi_m + 2 * s.euler()) << name;
            int copies = s.components[0].orientable ? 2 : 1;
            EXPECT_EQ(static_cast<int>(c.trace.size()), copies) << name;
            // a two-sided component separates exactly when its copies lie in different pieces
            int expected = 1;
            if (copies == 2) {
                auto side = [&](const TraceComponent& tc) { return c.component_of[static_cast<std::size_t>(tc.faces[0].first)]; };
                if (side(c.trace[0]) != side(c.trace[1])) expected = 2;
            }
            EXPECT_EQ(c.component_count, expected) << name;
            std::set<int> hit;
            for (const auto& tc : c.trace) hit.insert(c.component_of[static_cast<std::size_t>(tc.faces[0].first)]);
            EXPECT_EQ(static_cast<int>(hit.size()), c.component_count) << name;
            ++cuts;
        }
        EXPECT_GT(cuts, 0) << name;
    }
}

TEST(Cut, ParallelCopiesRejected) {
    Triangulation t = load_tri("lst.tri");
    try {
        cut_along(t, scale(vec({1, 0, 0, 1, 1, 0, 0}), 2));
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("parallel"), std::string::npos);
    }
}

TEST(Cut, ExtractComponentKeepsBoundary) {
    Triangulation t = load_tri("t2xi.tri");
    Certificate cert = parse_certificate(read_fixture("t2xi.cert.json"));
    CutResult c = cut_along(t, std::get<ThickenedTorusCert>(cert.v).annulus);
    ComponentPiece p = extract_component(c.complement, c.labels, 0);
    EXPECT_EQ(p.tri.size(), c.complement.size());
    EXPECT_EQ(static_cast<int>(p.boundary_triangles.size()), p.tri.boundary_face_count());
    EXPECT_EQ(boundary_euler(p.tri), 0);
}

TEST(Ball, Verification) {
    EXPECT_TRUE(verify_ball(load_tri("free_tet.tri")));
    EXPECT_TRUE(verify_ball(load_tri("two_tets.tri")));
    EXPECT_TRUE(verify_ball(load_tri("cone4.tri")));
    // never accepts a non-sphere boundary or nonzero homology
    for (const char* name : {"lst.tri", "lst2.tri", "lst3.tri", "t2xi.tri", "kxi.tri", "hb2.tri", "trefoil.tri"})
        EXPECT_FALSE(verify_ball(load_tri(name))) << name;
    EXPECT_FALSE(verify_ball(load_tri("free_tet.tri"), 0));
}

TEST(SolidTorus, Check) {
    Triangulation t = load_tri("lst.tri");
    NormalSurfaceVec disc = vec({1, 0, 0, 1, 1, 0, 0});
    EXPECT_TRUE(verify_solid_torus(t, disc, to_curve({0, 1, 0, 0, 0, 1})));
    auto lab = *find_orientation(t);
    SolidTorusCheck bd = check_solid_torus(t, lab, disc, to_curve({0, 2, 1, 1, 0, 2}));
    EXPECT_FALSE(bd.ok());
    ASSERT_TRUE(bd.intersection);
    EXPECT_EQ(*bd.intersection, 0);
    SolidTorusCheck link = check_solid_torus(t, lab, vec({1, 1, 1, 1, 0, 0, 0}), to_curve({0, 1, 0, 0, 0, 1}));
    EXPECT_FALSE(link.ok());
    EXPECT_THROW(check_solid_torus(load_tri("t2xi.tri"), *find_orientation(load_tri("t2xi.tri")), disc, to_curve({})),
                 InputError);
}
