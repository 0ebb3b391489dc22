#include <gtest/gtest.h>

#include <random>

#include "mutations.hpp"
#include "random_surfaces.hpp"
#include "sfscert/certify.hpp"
#include "test_helpers.hpp"

using namespace sfscert;

namespace {

SeifertData sd(bool orientable, int a, int b, std::vector<SeifertFibre> f) { return SeifertData{orientable, a, b, std::move(f)}; }

struct CertFixture {
    const char* tri;
    const char* cert;
    const char* variant;
};

const CertFixture kCerts[] = {
    {"lst.tri", "lst.cert.json", "SolidTorus"},
    {"t2xi.tri", "t2xi.cert.json", "ThickenedTorus"},
    {"kxi.tri", "kxi.cert.json", "KTwistedI"},
    {"t2xi.tri", "t2xi.bundle.cert.json", "CircleBundle"},
};

}  // namespace

TEST(Seifert, TorusKnotData) {
    TorusKnotData t = torus_knot_data(2, 3);
    EXPECT_EQ(t.r, 1);
    EXPECT_EQ(t.s, 2);
    EXPECT_EQ(2 * t.s - 3 * t.r, 1);
    EXPECT_EQ(t.raw.fibres, (std::vector<SeifertFibre>{{3, -2}, {2, -1}}));
    EXPECT_EQ(t.data, normalize(sd(true, 0, 1, {{3, -2}, {2, -1}})));
    EXPECT_EQ(t.data.fibres, (std::vector<SeifertFibre>{{2, 1}, {3, 1}}));
    TorusKnotData u = torus_knot_data(3, 5);
    EXPECT_EQ(u.s, 2);
    EXPECT_EQ(u.r, 1);
    EXPECT_THROW(torus_knot_data(2, 4), InputError);
    EXPECT_THROW(torus_knot_data(1, 3), InputError);
    for (std::int64_t p = 2; p < 15; ++p)
        for (std::int64_t q = 2; q < 15; ++q) {
            if (std::gcd(p, q) != 1) continue;
            TorusKnotData k = torus_knot_data(p, q);
            EXPECT_EQ(p * k.s - q * k.r, 1);
            EXPECT_EQ(k.data.fibres.size(), 2u);
        }
}

TEST(Seifert, Equivalence) {
    EXPECT_TRUE(seifert_data_equivalent(sd(true, 0, 1, {{2, 1}, {3, 1}}), sd(true, 0, 1, {{3, 4}, {2, -1}})));
    EXPECT_TRUE(seifert_data_equivalent(sd(true, 0, 1, {{2, 1}, {3, 1}}), sd(true, 0, 1, {{2, 1}, {3, 2}})));
    EXPECT_FALSE(seifert_data_equivalent(sd(true, 0, 1, {{3, 1}, {5, 1}}), sd(true, 0, 1, {{3, 2}, {5, 1}})));
    EXPECT_FALSE(seifert_data_equivalent(sd(true, 0, 1, {{2, 1}}), sd(true, 0, 2, {{2, 1}})));
    EXPECT_FALSE(seifert_data_equivalent(sd(true, 0, 1, {{2, 1}}), sd(false, 1, 1, {{2, 1}})));
    EXPECT_FALSE(seifert_data_equivalent(sd(true, 0, 1, {{4, 2}}), sd(true, 0, 1, {{4, 2}})));
    EXPECT_THROW(normalize(sd(true, 1, 1, {})), InputError);
    EXPECT_THROW(normalize(sd(true, 0, 0, {})), InputError);
}

TEST(Seifert, HorizontalEuler) {
    EXPECT_EQ(expected_horizontal_euler(sd(true, 0, 1, {}), 1), 1);
    EXPECT_EQ(expected_horizontal_euler(sd(true, 0, 2, {}), 1), 0);
    EXPECT_EQ(expected_horizontal_euler(sd(false, 1, 1, {}), 1), 0);
    EXPECT_EQ(expected_horizontal_euler(sd(true, 0, 1, {{2, 1}, {2, 1}}), 2), 0);
    EXPECT_EQ(expected_horizontal_euler(sd(true, 0, 1, {{2, 1}, {3, 1}}), 6), -1);
    EXPECT_THROW(expected_horizontal_euler(sd(true, 0, 1, {{2, 1}, {3, 1}}), 4), InputError);
    EXPECT_THROW(expected_horizontal_euler(sd(true, 0, 1, {}), 0), InputError);
}

// Every base and fibre set other than the disc with at most one fibre and the three
// Euler-characteristic-zero families gives a negative horizontal Euler characteristic.
TEST(Seifert, HorizontalEulerNegativeOtherwise) {
    std::mt19937_64 rng(3);
    int checked = 0;
    while (checked < 1000) {
        SeifertData d;
        d.orientable = rng() % 2;
        d.a = d.orientable ? 2 * static_cast<int>(rng() % 3) : 1 + static_cast<int>(rng() % 3);
        d.b = 1 + static_cast<int>(rng() % 3);
        int nf = static_cast<int>(rng() % 4);
        for (int i = 0; i < nf; ++i) {
            std::int64_t p = 2 + static_cast<std::int64_t>(rng() % 6), q = 1;
            do q = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p - 1));
            while (std::gcd(p, q) != 1);
            d.fibres.push_back({p, q});
        }
        const bool disc = d.orientable && d.a == 0 && d.b == 1;
        if (disc && nf <= 1) continue;
        if (d.orientable && d.a == 0 && d.b == 2 && nf == 0) continue;
        if (!d.orientable && d.a == 1 && d.b == 1 && nf == 0) continue;
        if (disc && nf == 2 && d.fibres[0].p == 2 && d.fibres[1].p == 2) continue;
        std::int64_t deg = fibre_lcm(d);
        std::int64_t chi = expected_horizontal_euler(d, deg);
        EXPECT_LT(chi, 0) << d.str();
        EXPECT_EQ(Rational(chi), orbifold_euler(d) * deg) << d.str();
        ++checked;
    }
}

TEST(Seifert, FibreInvariant) {
    BoundarySurface B = two_triangle_torus();
    auto eta = orient_connected(B, torus_slope(0, 1));
    auto gamma = orient_connected(B, torus_slope(1, 2));
    auto mu = orient_connected(B, torus_slope(1, 0));
    Rational x = seifert_fibre_invariant(eta, gamma, mu, 1, B);
    EXPECT_EQ(abs(x), Rational(1, 2));
    EXPECT_EQ(seifert_fibre_invariant(eta.reversed(), gamma.reversed(), mu, 1, B), x);
    EXPECT_THROW(seifert_fibre_invariant(eta, eta, mu, 1, B), InputError);
    EXPECT_THROW(seifert_fibre_invariant(eta, gamma, mu, 0, B), InputError);
}

// Reversing eta and gamma together, or mu alone, leaves the invariant unchanged.
TEST(Seifert, FibreInvariantFlipOnRandomTori) {
    std::mt19937_64 rng(17);
    int done = 0, attempts = 0;
    while (done < 100 && attempts < 20000) {
        ++attempts;
        BoundarySurface B = testgen::random_surface(rng, 1, 12);
        OrientedNormalCurve eta, gamma, mu;
        try {
            eta = orient_connected(B, testgen::random_connected_curve(rng, B));
            gamma = orient_connected(B, testgen::random_connected_curve(rng, B));
            mu = orient_connected(B, testgen::random_connected_curve(rng, B));
        } catch (const InputError&) {
            continue;
        }
        if (algebraic_intersection(B, eta, gamma) == 0 || algebraic_intersection(B, gamma, mu) == 0) continue;
        Rational x = seifert_fibre_invariant(eta, gamma, mu, 1, B);
        EXPECT_EQ(seifert_fibre_invariant(eta.reversed(), gamma.reversed(), mu, 1, B), x);
        EXPECT_EQ(seifert_fibre_invariant(eta, gamma, mu.reversed(), 1, B), x);
        ++done;
    }
    EXPECT_EQ(done, 100);
}

TEST(Certificates, FixturesAcceptAndRoundTrip) {
    for (const auto& f : kCerts) {
        Triangulation t = load_tri(f.tri);
        std::string text = read_fixture(f.cert);
        Certificate c = parse_certificate(text);
        EXPECT_EQ(c.variant_name(), f.variant);
        EXPECT_EQ(certificate_text(c), text) << f.cert;
        VerifierReport r = verify(t, c);
        EXPECT_TRUE(r.accepted()) << f.cert << '\n' << r.str();
        EXPECT_EQ(r.json()["verdict"], "accept");
    }
}

TEST(Certificates, GenerateReproducesFixtures) {
    auto gen = [](const char* tri, Variant v) {
        GenerateOptions o;
        o.target = v;
        auto c = generate(load_tri(tri), o);
        return c ? certificate_text(*c) : std::string();
    };
    EXPECT_EQ(gen("lst.tri", Variant::kAuto), read_fixture("lst.cert.json"));
    EXPECT_EQ(gen("t2xi.tri", Variant::kThickenedTorus), read_fixture("t2xi.cert.json"));
    EXPECT_EQ(gen("kxi.tri", Variant::kKTwistedI), read_fixture("kxi.cert.json"));
    EXPECT_EQ(gen("t2xi.tri", Variant::kCircleBundle), read_fixture("t2xi.bundle.cert.json"));
    EXPECT_FALSE(generate(load_tri("hb2.tri")));
    EXPECT_FALSE(generate(load_tri("trefoil.tri")));
    GenerateOptions tight;
    tight.caps.max_tets = 1;
    EXPECT_THROW(generate(load_tri("t2xi.tri"), tight), CapExceeded);
}

TEST(Certificates, WrongManifoldRejected) {
    VerifierReport r = verify(load_tri("t2xi.tri"), parse_certificate(read_fixture("kxi.cert.json")));
    ASSERT_FALSE(r.accepted());
    EXPECT_EQ(r.first_failure()->name, "H1 = Z + Z/2 expected");
    EXPECT_EQ(r.first_failure()->witness, "H1 = Z^2");
    VerifierReport s = verify(load_tri("lst2.tri"), parse_certificate(read_fixture("lst.cert.json")));
    EXPECT_FALSE(s.accepted());
}

TEST(Certificates, BoundaryOfDiscAsCurveRejected) {
    VerifierReport r = verify_text(load_tri("lst.tri"), read_fixture("lst.mutated.cert.json"));
    ASSERT_FALSE(r.accepted());
    EXPECT_EQ(r.first_failure()->name, "intersection ±1");
    EXPECT_EQ(r.first_failure()->witness, "|i| = 0");
}

TEST(Certificates, Malformed) {
    try {
        parse_certificate("{}");
        FAIL();
    } catch (const MalformedCertificate& e) {
        EXPECT_EQ(e.field(), "variant");
        EXPECT_EQ(std::string(e.what()), "malformed: variant");
    }
    EXPECT_THROW(parse_certificate("{\"variant\": \"SolidTorus\"}"), MalformedCertificate);
    EXPECT_THROW(parse_certificate("not json"), MalformedCertificate);
    VerifierReport r = verify_text(load_tri("lst.tri"), "{\"variant\": \"Nope\"}");
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_EQ(r.checks[0].stage, "parse");
    EXPECT_FALSE(r.accepted());
}

// Every single-field mutation of an accepted certificate is rejected.
TEST(Certificates, MutationBattery) {
    for (const auto& f : kCerts) {
        Triangulation t = load_tri(f.tri);
        auto battery = testgen::mutation_battery(read_fixture(f.cert));
        EXPECT_GE(battery.size(), 100u) << f.cert;
        for (const auto& m : battery) {
            VerifierReport r = verify_text(t, m.cert.dump());
            EXPECT_FALSE(r.accepted()) << f.cert << " accepted mutation " << m.what;
        }
    }
}
