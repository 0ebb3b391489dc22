#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "bigint.hpp"
#include "boundary.hpp"
#include "cone.hpp"
#include "curves.hpp"
#include "cut.hpp"
#include "error.hpp"
#include "homology.hpp"
#include "surfaces.hpp"
#include "triangulation.hpp"

namespace sfscert {

// ---------------------------------------------------------------------------
// Seifert data.

struct SeifertFibre {
    std::int64_t p = 2;
    std::int64_t q = 1;
    friend auto operator<=>(const SeifertFibre&, const SeifertFibre&) = default;
};

// Base: orientable with a = 2 * genus, or nonorientable of genus a; b >= 1 boundary circles.
struct SeifertData {
    bool orientable = true;
    int a = 0;
    int b = 1;
    std::vector<SeifertFibre> fibres;

    int base_euler() const { return 2 - a - b; }
    friend bool operator==(const SeifertData&, const SeifertData&) = default;

    std::string str() const {
        std::string s = std::string("[") + (orientable ? "orientable" : "nonorientable") + " a=" + std::to_string(a) +
                        " b=" + std::to_string(b);
        for (const auto& f : fibres) s += ", " + std::to_string(f.q) + "/" + std::to_string(f.p);
        return s + "]";
    }
};

inline std::int64_t floor_mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

// Normal form 0 < q < p, fibres sorted. Throws on p < 2, q = 0 mod p or gcd(p, q) != 1.
inline SeifertData normalize(SeifertData d) {
    if (d.b < 1) throw InputError("Seifert data needs at least one boundary circle");
    if (d.a < 0 || (d.orientable && d.a % 2)) throw InputError("bad base genus");
    for (auto& f : d.fibres) {
        if (f.p < 2) throw InputError("fibre multiplicity must be at least 2");
        if (std::gcd(f.p, f.q) != 1) throw InputError("fibre invariants must be coprime");
        f.q = floor_mod(f.q, f.p);
    }
    std::sort(d.fibres.begin(), d.fibres.end());
    return d;
}

inline bool seifert_data_equivalent(const SeifertData& d1, const SeifertData& d2) {
    SeifertData x, y;
    try {
        x = normalize(d1);
        y = normalize(d2);
    } catch (const InputError&) {
        return false;
    }
    if (x.orientable != y.orientable || x.a != y.a || x.b != y.b) return false;
    if (x.fibres == y.fibres) return true;
    for (auto& f : x.fibres) f.q = f.p - f.q;
    std::sort(x.fibres.begin(), x.fibres.end());
    return x.fibres == y.fibres;
}

// Extended Euclid: (x, y) with a x + b y = gcd(a, b).
inline std::pair<std::int64_t, std::int64_t> extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        std::int64_t q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    return {x0, y0};
}

struct TorusKnotData {
    std::int64_t r = 0, s = 0;  // p s - q r = 1
    SeifertData raw;            // [D^2, -s/q, -r/p]
    SeifertData data;           // normalized
};

inline TorusKnotData torus_knot_data(std::int64_t p, std::int64_t q) {
    if (p < 2 || q < 2) throw InputError("torus knot parameters must be at least 2");
    if (std::gcd(p, q) != 1) throw InputError("torus knot parameters must be coprime");
    auto [x, y] = extended_gcd(p, q);  // p x + q y = 1, so s = x, r = -y
    std::int64_t s = floor_mod(x, q);
    std::int64_t r = (p * s - 1) / q;
    TorusKnotData out{r, s, {}, {}};
    out.raw.fibres = {{q, -s}, {p, -r}};
    out.data = normalize(out.raw);
    return out;
}

using Rational = boost::rational<std::int64_t>;

inline Rational orbifold_euler(const SeifertData& d) {
    Rational chi(d.base_euler());
    for (const auto& f : d.fibres) chi -= Rational(1) - Rational(1, f.p);
    return chi;
}

inline std::int64_t expected_horizontal_euler(const SeifertData& d, std::int64_t degree) {
    if (degree < 1) throw InputError("degree must be positive");
    std::int64_t chi = degree * d.base_euler();
    for (const auto& f : d.fibres) {
        if (f.p < 1 || degree % f.p) throw InputError("degree not divisible by fibre multiplicity " + std::to_string(f.p));
        chi -= (degree / f.p) * (f.p - 1);
    }
    return chi;
}

inline std::int64_t fibre_lcm(const SeifertData& d) {
    std::int64_t l = 1;
    for (const auto& f : d.fibres) l = std::lcm(l, f.p);
    return l;
}

// q/p with q = i(eta, mu) / k and p = i(gamma, mu), once eta is oriented so that i(eta, gamma) > 0.
inline Rational seifert_fibre_invariant(const OrientedNormalCurve& eta, const OrientedNormalCurve& gamma,
                                        const OrientedNormalCurve& mu, std::int64_t k, const BoundarySurface& B) {
    if (k < 1) throw InputError("k must be positive");
    std::int64_t eg = algebraic_intersection(B, eta, gamma);
    if (eg == 0) throw InputError("i(eta, gamma) = 0 for both orientations");
    std::int64_t em = algebraic_intersection(B, eta, mu);
    std::int64_t gm = algebraic_intersection(B, gamma, mu);
    if (eg < 0) em = -em;
    if (em % k) throw InputError("k does not divide i(eta, mu)");
    if (gm == 0) throw InputError("i(gamma, mu) = 0");
    return Rational(em / k, gm);
}

// ---------------------------------------------------------------------------
// Certificates.

struct CutRecord {
    Triangulation complement;
    std::vector<std::pair<int, int>> correspondence;  // new tet -> (old tet, region)
};

struct SolidTorusCert {
    OrientationLabels labels;
    NormalSurfaceVec disc;
    NormalCurveVec curve;
};

struct PieceSolidTorus {
    int component = 0;
    SolidTorusCert cert;
};

struct ThickenedTorusCert {
    NormalSurfaceVec annulus;
    CutRecord cut;
    PieceSolidTorus solid;
};

struct KTwistedICert {
    NormalSurfaceVec annulus;
    std::string kind;  // "horizontal": one solid torus; "vertical": two
    CutRecord cut;
    std::vector<PieceSolidTorus> solids;
};

struct CircleBundleCert {
    std::vector<NormalSurfaceVec> annuli;
    CutRecord cut;
    PieceSolidTorus meridian;
    NormalSurfaceVec section;
    int base_euler = 0;
    int base_boundary = 1;
};

struct MultiplicityTwoCert {
    SeifertData data;
    std::vector<NormalSurfaceVec> annuli;
    CutRecord cut;
    std::vector<PieceSolidTorus> solids;
    int bundle_component = 0;
    CircleBundleCert bundle;
    NormalSurfaceVec horizontal;
};

struct Certificate;

struct FibreNeighbourhood {
    Triangulation neighbourhood;
    SolidTorusCert solid;
    int boundary_component = 0;  // on the drilled boundary
    NormalCurveVec eta, gamma, mu;
    std::int64_t k = 1;
};

struct GeneralSFSCert {
    SeifertData data;
    OrientationLabels labels;
    int subdivision_level = 0;
    std::vector<FibreNeighbourhood> fibres;
    Triangulation drilled;
    std::shared_ptr<Certificate> drilled_cert;
};

struct Certificate {
    std::variant<SolidTorusCert, ThickenedTorusCert, KTwistedICert, CircleBundleCert, MultiplicityTwoCert, GeneralSFSCert> v;
    std::string variant_name() const {
        static const char* names[] = {"SolidTorus", "ThickenedTorus", "KTwistedI", "CircleBundle", "MultiplicityTwo", "GeneralSFS"};
        return names[v.index()];
    }
};

inline constexpr int kMaxSubdivisionLevel = 2;

// ---------------------------------------------------------------------------
// JSON.

class MalformedCertificate : public InputError {
   public:
    explicit MalformedCertificate(const std::string& field) : InputError("malformed: " + field), field_(field) {}
    const std::string& field() const { return field_; }

   private:
    std::string field_;
};

using Json = nlohmann::ordered_json;

namespace detail {

inline Json vec_json(const std::vector<BigInt>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}
inline Json vec_json(const NormalSurfaceVec& v) { return vec_json(v.coords()); }
inline Json vec_json(const NormalCurveVec& v) {
    Json a = Json::array();
    for (auto x : v.c) a.push_back(std::to_string(x));
    return a;
}

inline const Json& field(const Json& j, const std::string& name, const std::string& path) {
    if (!j.is_object() || !j.contains(name)) throw MalformedCertificate(path + name);
    return j.at(name);
}

inline std::vector<BigInt> big_vec(const Json& j, const std::string& path) {
    if (!j.is_array()) throw MalformedCertificate(path);
    std::vector<BigInt> out;
    for (const auto& x : j) {
        if (!x.is_string()) throw MalformedCertificate(path);
        const std::string& s = x.get_ref<const std::string&>();
        if (s.empty() || s.size() > 4000 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw MalformedCertificate(path);
        out.emplace_back(s);
    }
    return out;
}

inline NormalSurfaceVec surface_vec(const Json& j, const std::string& path) {
    auto v = big_vec(j, path);
    if (v.empty() || v.size() % 7) throw MalformedCertificate(path);
    NormalSurfaceVec s(static_cast<int>(v.size() / 7));
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i];
    return s;
}

inline NormalCurveVec curve_vec(const Json& j, const std::string& path) {
    auto v = big_vec(j, path);
    if (v.size() % 3) throw MalformedCertificate(path);
    try {
        return to_curve(v);
    } catch (const InputError&) {
        throw MalformedCertificate(path);
    }
}

inline std::int64_t int_field(const Json& j, const std::string& name, const std::string& path) {
    const Json& x = field(j, name, path);
    if (!x.is_number_integer()) throw MalformedCertificate(path + name);
    return x.get<std::int64_t>();
}

inline Triangulation tri_field(const Json& j, const std::string& name, const std::string& path) {
    const Json& x = field(j, name, path);
    if (!x.is_string()) throw MalformedCertificate(path + name);
    try {
        return parse_triangulation(x.get<std::string>());
    } catch (const InputError&) {
        throw MalformedCertificate(path + name);
    }
}

inline OrientationLabels labels_field(const Json& j, const std::string& path) {
    const Json& x = field(j, "labels", path);
    if (!x.is_array()) throw MalformedCertificate(path + "labels");
    OrientationLabels out;
    for (const auto& e : x) {
        if (!e.is_number_integer() || (e.get<int>() != 1 && e.get<int>() != -1)) throw MalformedCertificate(path + "labels");
        out.push_back(e.get<int>());
    }
    return out;
}

inline Json cut_json(const CutRecord& c) {
    Json corr = Json::array();
    for (auto [t, r] : c.correspondence) corr.push_back(Json::array({t, r}));
    Json j;
    j["complement"] = to_text(c.complement);
    j["correspondence"] = corr;
    return j;
}

inline CutRecord cut_from(const Json& j, const std::string& path) {
    CutRecord c;
    c.complement = tri_field(j, "complement", path);
    const Json& corr = field(j, "correspondence", path);
    if (!corr.is_array()) throw MalformedCertificate(path + "correspondence");
    for (const auto& e : corr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw MalformedCertificate(path + "correspondence");
        c.correspondence.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return c;
}

inline Json seifert_json(const SeifertData& d) {
    Json f = Json::array();
    for (const auto& x : d.fibres) f.push_back(Json::array({x.p, x.q}));
    Json j;
    j["orientable"] = d.orientable;
    j["a"] = d.a;
    j["boundary"] = d.b;
    j["fibres"] = f;
    return j;
}

inline SeifertData seifert_from(const Json& j, const std::string& path) {
    SeifertData d;
    const Json& o = field(j, "orientable", path);
    if (!o.is_boolean()) throw MalformedCertificate(path + "orientable");
    d.orientable = o.get<bool>();
    d.a = static_cast<int>(int_field(j, "a", path));
    d.b = static_cast<int>(int_field(j, "boundary", path));
    const Json& f = field(j, "fibres", path);
    if (!f.is_array()) throw MalformedCertificate(path + "fibres");
    for (const auto& e : f) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw MalformedCertificate(path + "fibres");
        d.fibres.push_back({e[0].get<std::int64_t>(), e[1].get<std::int64_t>()});
    }
    return d;
}

inline Json solid_json(const SolidTorusCert& c) {
    Json j;
    j["labels"] = c.labels;
    j["disc"] = vec_json(c.disc);
    j["curve"] = vec_json(c.curve);
    return j;
}

inline SolidTorusCert solid_from(const Json& j, const std::string& path) {
    SolidTorusCert c;
    c.labels = labels_field(j, path);
    c.disc = surface_vec(field(j, "disc", path), path + "disc");
    c.curve = curve_vec(field(j, "curve", path), path + "curve");
    return c;
}

inline Json piece_json(const PieceSolidTorus& p) {
    Json j;
    j["component"] = p.component;
    j["certificate"] = solid_json(p.cert);
    return j;
}

inline PieceSolidTorus piece_from(const Json& j, const std::string& path) {
    PieceSolidTorus p;
    p.component = static_cast<int>(int_field(j, "component", path));
    p.cert = solid_from(field(j, "certificate", path), path + "certificate.");
    return p;
}

inline Json bundle_json(const CircleBundleCert& c) {
    Json j;
    j["variant"] = "CircleBundle";
    Json a = Json::array();
    for (const auto& v : c.annuli) a.push_back(vec_json(v));
    j["annuli"] = a;
    j["cut"] = cut_json(c.cut);
    j["meridian"] = piece_json(c.meridian);
    j["section"] = vec_json(c.section);
    j["base"] = Json{{"euler", c.base_euler}, {"boundary", c.base_boundary}};
    return j;
}

inline std::vector<NormalSurfaceVec> surface_list(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw MalformedCertificate(path);
    std::vector<NormalSurfaceVec> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(surface_vec(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline CircleBundleCert bundle_from(const Json& j, const std::string& path) {
    CircleBundleCert c;
    c.annuli = surface_list(field(j, "annuli", path), path + "annuli");
    c.cut = cut_from(field(j, "cut", path), path + "cut.");
    c.meridian = piece_from(field(j, "meridian", path), path + "meridian.");
    c.section = surface_vec(field(j, "section", path), path + "section");
    const Json& base = field(j, "base", path);
    c.base_euler = static_cast<int>(int_field(base, "euler", path + "base."));
    c.base_boundary = static_cast<int>(int_field(base, "boundary", path + "base."));
    return c;
}

}  // namespace detail

inline Json to_json(const Certificate& cert);

namespace detail {

inline Json general_json(const GeneralSFSCert& c) {
    Json j;
    j["variant"] = "GeneralSFS";
    j["seifert"] = seifert_json(c.data);
    j["labels"] = c.labels;
    j["subdivision_level"] = c.subdivision_level;
    Json fs = Json::array();
    for (const auto& f : c.fibres) {
        Json x;
        x["neighbourhood"] = to_text(f.neighbourhood);
        x["solid_torus"] = solid_json(f.solid);
        x["boundary_component"] = f.boundary_component;
        x["eta"] = vec_json(f.eta);
        x["gamma"] = vec_json(f.gamma);
        x["mu"] = vec_json(f.mu);
        x["k"] = f.k;
        fs.push_back(x);
    }
    j["fibres"] = fs;
    j["drilled"] = to_text(c.drilled);
    j["drilled_certificate"] = c.drilled_cert ? to_json(*c.drilled_cert) : Json();
    return j;
}

}  // namespace detail

inline Json to_json(const Certificate& cert) {
    using namespace detail;
    return std::visit(
        [](const auto& c) -> Json {
            using T = std::decay_t<decltype(c)>;
            Json j;
            if constexpr (std::is_same_v<T, SolidTorusCert>) {
                j["variant"] = "SolidTorus";
                Json body = solid_json(c);
                for (auto& [k, v] : body.items()) j[k] = v;
            } else if constexpr (std::is_same_v<T, ThickenedTorusCert>) {
                j["variant"] = "ThickenedTorus";
                j["annulus"] = vec_json(c.annulus);
                j["cut"] = cut_json(c.cut);
                j["solid_torus"] = piece_json(c.solid);
            } else if constexpr (std::is_same_v<T, KTwistedICert>) {
                j["variant"] = "KTwistedI";
                j["annulus"] = vec_json(c.annulus);
                j["kind"] = c.kind;
                j["cut"] = cut_json(c.cut);
                Json s = Json::array();
                for (const auto& p : c.solids) s.push_back(piece_json(p));
                j["solid_tori"] = s;
            } else if constexpr (std::is_same_v<T, CircleBundleCert>) {
                j = bundle_json(c);
            } else if constexpr (std::is_same_v<T, MultiplicityTwoCert>) {
                j["variant"] = "MultiplicityTwo";
                j["seifert"] = seifert_json(c.data);
                Json a = Json::array();
                for (const auto& v : c.annuli) a.push_back(vec_json(v));
                j["annuli"] = a;
                j["cut"] = cut_json(c.cut);
                Json s = Json::array();
                for (const auto& p : c.solids) s.push_back(piece_json(p));
                j["solid_tori"] = s;
                j["circle_bundle"] = Json{{"component", c.bundle_component}, {"certificate", bundle_json(c.bundle)}};
                j["horizontal"] = vec_json(c.horizontal);
            } else {
                j = general_json(c);
            }
            return j;
        },
        cert.v);
}

inline Certificate certificate_from_json(const Json& j, const std::string& path = "") {
    using namespace detail;
    const Json& tag = field(j, "variant", path);
    if (!tag.is_string()) throw MalformedCertificate(path + "variant");
    const std::string v = tag.get<std::string>();
    Certificate c;
    if (v == "SolidTorus") {
        c.v = solid_from(j, path);
    } else if (v == "ThickenedTorus") {
        ThickenedTorusCert t;
        t.annulus = surface_vec(field(j, "annulus", path), path + "annulus");
        t.cut = cut_from(field(j, "cut", path), path + "cut.");
        t.solid = piece_from(field(j, "solid_torus", path), path + "solid_torus.");
        c.v = t;
    } else if (v == "KTwistedI") {
        KTwistedICert t;
        t.annulus = surface_vec(field(j, "annulus", path), path + "annulus");
        const Json& kind = field(j, "kind", path);
        if (!kind.is_string() || (kind != "horizontal" && kind != "vertical")) throw MalformedCertificate(path + "kind");
        t.kind = kind.get<std::string>();
        t.cut = cut_from(field(j, "cut", path), path + "cut.");
        const Json& s = field(j, "solid_tori", path);
        if (!s.is_array()) throw MalformedCertificate(path + "solid_tori");
        for (std::size_t i = 0; i < s.size(); ++i) t.solids.push_back(piece_from(s[i], path + "solid_tori[" + std::to_string(i) + "]."));
        c.v = t;
    } else if (v == "CircleBundle") {
        c.v = bundle_from(j, path);
    } else if (v == "MultiplicityTwo") {
        MultiplicityTwoCert t;
        t.data = seifert_from(field(j, "seifert", path), path + "seifert.");
        t.annuli = surface_list(field(j, "annuli", path), path + "annuli");
        t.cut = cut_from(field(j, "cut", path), path + "cut.");
        const Json& s = field(j, "solid_tori", path);
        if (!s.is_array()) throw MalformedCertificate(path + "solid_tori");
        for (std::size_t i = 0; i < s.size(); ++i) t.solids.push_back(piece_from(s[i], path + "solid_tori[" + std::to_string(i) + "]."));
        const Json& b = field(j, "circle_bundle", path);
        t.bundle_component = static_cast<int>(int_field(b, "component", path + "circle_bundle."));
        t.bundle = bundle_from(field(b, "certificate", path + "circle_bundle."), path + "circle_bundle.certificate.");
        t.horizontal = surface_vec(field(j, "horizontal", path), path + "horizontal");
        c.v = t;
    } else if (v == "GeneralSFS") {
        GeneralSFSCert t;
        t.data = seifert_from(field(j, "seifert", path), path + "seifert.");
        t.labels = labels_field(j, path);
        t.subdivision_level = static_cast<int>(int_field(j, "subdivision_level", path));
        const Json& fs = field(j, "fibres", path);
        if (!fs.is_array()) throw MalformedCertificate(path + "fibres");
        for (std::size_t i = 0; i < fs.size(); ++i) {
            std::string p = path + "fibres[" + std::to_string(i) + "].";
            FibreNeighbourhood f;
            f.neighbourhood = tri_field(fs[i], "neighbourhood", p);
            f.solid = solid_from(field(fs[i], "solid_torus", p), p + "solid_torus.");
            f.boundary_component = static_cast<int>(int_field(fs[i], "boundary_component", p));
            f.eta = curve_vec(field(fs[i], "eta", p), p + "eta");
            f.gamma = curve_vec(field(fs[i], "gamma", p), p + "gamma");
            f.mu = curve_vec(field(fs[i], "mu", p), p + "mu");
            f.k = int_field(fs[i], "k", p);
            t.fibres.push_back(f);
        }
        t.drilled = tri_field(j, "drilled", path);
        const Json& dc = field(j, "drilled_certificate", path);
        if (!dc.is_null()) t.drilled_cert = std::make_shared<Certificate>(certificate_from_json(dc, path + "drilled_certificate."));
        c.v = t;
    } else {
        throw MalformedCertificate(path + "variant");
    }
    return c;
}

inline Certificate parse_certificate(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception&) {
        throw MalformedCertificate("json");
    }
    return certificate_from_json(j);
}

inline std::string certificate_text(const Certificate& c) { return to_json(c).dump(1) + "\n"; }

// ---------------------------------------------------------------------------
// Verification.

struct Check {
    std::string name;
    std::string stage;
    bool pass = false;
    std::string witness;
};

struct VerifierReport {
    std::vector<Check> checks;
    bool accepted() const {
        if (checks.empty()) return false;
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    const Check* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
    std::string str() const {
        std::string s = accepted() ? "accept\n" : "reject\n";
        for (const auto& c : checks)
            s += std::string(c.pass ? "  pass  " : "  FAIL  ") + c.stage + ": " + c.name + (c.witness.empty() ? "" : "  (" + c.witness + ")") + "\n";
        return s;
    }
    Json json() const {
        Json j;
        j["verdict"] = accepted() ? "accept" : "reject";
        Json cs = Json::array();
        for (const auto& c : checks) cs.push_back(Json{{"name", c.name}, {"stage", c.stage}, {"pass", c.pass}, {"witness", c.witness}});
        j["checks"] = cs;
        return j;
    }
};

namespace detail {

// Collects checks; stops at the first failure.
class Checker {
   public:
    Checker(VerifierReport& r, std::string stage) : r_(r), stage_(std::move(stage)) {}
    bool ok() const { return ok_; }
    bool operator()(const std::string& name, bool pass, const std::string& witness = "") {
        if (!ok_) return false;
        r_.checks.push_back({name, stage_, pass, witness});
        ok_ = pass;
        return pass;
    }
    // Runs f under exception capture; InputError becomes a failed check.
    template <class F>
    bool guarded(const std::string& name, F&& f) {
        if (!ok_) return false;
        std::string witness;
        bool pass = false;
        try {
            pass = f(witness);
        } catch (const CapExceeded& e) {
            witness = std::string("cap: ") + e.what();
        } catch (const InputError& e) {
            witness = e.what();
        }
        return (*this)(name, pass, witness);
    }
    VerifierReport& report() { return r_; }
    const std::string& stage() const { return stage_; }
    void fail_through(bool ok) {
        if (!ok) ok_ = false;
    }

   private:
    VerifierReport& r_;
    std::string stage_;
    bool ok_ = true;
};

inline std::string surface_witness(const SurfaceSummary& s) {
    std::string w = std::to_string(s.component_count()) + " component(s)";
    for (const auto& c : s.components)
        w += "; chi " + std::to_string(c.euler) + ", " + std::to_string(c.boundary_curves) + " boundary curve(s)" + (c.orientable ? "" : ", one-sided");
    return w;
}

inline bool check_admissible_on(Checker& ck, const std::string& name, const Triangulation& tri, const NormalSurfaceVec& v) {
    if (v.tet_count() != tri.size()) return ck(name, false, "vector length " + std::to_string(v.size()) + " for " + std::to_string(tri.size()) + " tetrahedra");
    auto r = admissibility_violation(tri, v);
    return ck(name, !r, r ? r->message() : "");
}

// Connected, two-sided, chi 0, two boundary curves.
inline bool check_annulus(Checker& ck, const std::string& what, const Triangulation& tri, const NormalSurfaceVec& v) {
    if (!check_admissible_on(ck, what + " admissible", tri, v)) return false;
    std::optional<SurfaceSummary> s;
    ck.guarded(what + " is an annulus", [&](std::string& w) {
        s = analyze(tri, v);
        w = surface_witness(*s);
        return s->component_count() == 1 && s->components[0].euler == 0 && s->components[0].boundary_curves == 2 && s->components[0].orientable;
    });
    return ck.ok();
}

inline std::vector<CurveComponent> boundary_curves_of(const BoundarySurface& B, const NormalSurfaceVec& v) {
    return trace_components(B, to_curve(boundary_curve_coords(B, v)));
}

inline int curve_component(const BoundarySurface& B, const CurveComponent& c) { return B.component_of(c.itinerary.front().tri); }

inline bool homology_is(Checker& ck, const Triangulation& tri, const AbelianGroup& want) {
    AbelianGroup h = first_homology(tri);
    return ck("H1 = " + want.str() + " expected", h == want, "H1 = " + h.str());
}

inline bool boundary_tori(Checker& ck, const BoundarySurface& B, int count) {
    bool ok = B.component_count() == count;
    for (int c = 0; ok && c < B.component_count(); ++c) ok = B.component_euler(c) == 0;
    std::string w = std::to_string(B.component_count()) + " component(s), chi " + std::to_string(B.euler_characteristic());
    return ck(count == 1 ? "boundary is one torus" : "boundary is " + std::to_string(count) + " tori", ok, w);
}

inline bool orientation(Checker& ck, const Triangulation& tri, OrientationLabels& labels) {
    auto l = find_orientation(tri);
    if (!ck("orientable", l.has_value(), l ? "" : "no consistent orientation labels")) return false;
    labels = *l;
    return ck("boundary exists", tri.boundary_face_count() > 0, "every face is glued");
}

// Re-derives the cut and compares it with the declared record.
inline std::optional<CutResult> rederive_cut(Checker& ck, const Triangulation& tri, const OrientationLabels& labels,
                                             const NormalSurfaceVec& v, const CutRecord& rec) {
    std::optional<CutResult> c;
    ck.guarded("cut re-derivation", [&](std::string& w) {
        c = cut_along(tri, labels, v);
        w = std::to_string(c->complement.size()) + " tetrahedra, " + std::to_string(c->component_count) + " component(s)";
        return true;
    });
    if (!ck.ok()) return std::nullopt;
    std::optional<Isomorphism> iso;
    if (rec.complement.size() == c->complement.size()) iso = is_isomorphic(rec.complement, c->complement);
    if (!ck("declared complement is isomorphic", iso.has_value(),
            "declared " + std::to_string(rec.complement.size()) + " tetrahedra, derived " + std::to_string(c->complement.size())))
        return std::nullopt;
    bool corr = rec.correspondence.size() == static_cast<std::size_t>(rec.complement.size());
    std::string w;
    for (int i = 0; corr && i < rec.complement.size(); ++i) {
        const auto& s = c->source[static_cast<std::size_t>(iso->tet[i])];
        if (rec.correspondence[i] != std::make_pair(s.old_tet, s.region)) {
            corr = false;
            w = "tetrahedron " + std::to_string(i);
        }
    }
    if (!ck("correspondence", corr, w)) return std::nullopt;
    return c;
}

inline CutRecord record_of(const CutResult& c) {
    CutRecord r{c.complement, {}};
    for (const auto& s : c.source) r.correspondence.push_back({s.old_tet, s.region});
    return r;
}

// Trace curves of the cut surface on one component, each connected.
inline std::vector<NormalCurveVec> piece_traces(const CutResult& c, const ComponentPiece& P, const BoundarySurface& PB) {
    std::vector<NormalCurveVec> out;
    for (const auto& tc : c.trace) {
        NormalCurveVec r = restrict_curve(P, tc.curve);
        if (r.is_zero()) continue;
        for (auto& cc : trace_components(PB, r)) out.push_back(cc.vec);
    }
    return out;
}

}  // namespace detail

inline void verify_solid_torus_into(VerifierReport& rep, const std::string& stage, const Triangulation& tri, const SolidTorusCert& c);

namespace detail {

// A solid torus certificate on one component of a re-derived cut, plus the intersection numbers
// of the cut surface's traces with its meridian.
inline bool verify_piece(Checker& ck, const CutResult& cut, const PieceSolidTorus& p, const std::set<std::int64_t>& allowed,
                         const std::string& stage) {
    if (!ck(stage + " component index", p.component >= 0 && p.component < cut.component_count,
            std::to_string(p.component) + " of " + std::to_string(cut.component_count)))
        return false;
    ComponentPiece P = extract_component(cut.complement, cut.labels, p.component);
    if (!ck(stage + " labels agree with the cut", p.cert.labels == P.labels)) return false;
    std::size_t before = ck.report().checks.size();
    verify_solid_torus_into(ck.report(), ck.stage() + " / " + stage, P.tri, p.cert);
    bool sub_ok = true;
    for (std::size_t i = before; i < ck.report().checks.size(); ++i) sub_ok = sub_ok && ck.report().checks[i].pass;
    ck.fail_through(sub_ok);
    if (!ck.ok()) return false;
    BoundarySurface PB = boundary_surface(P.tri, P.labels);
    auto traces = piece_traces(cut, P, PB);
    NormalCurveVec mer = to_curve(boundary_curve_coords(PB, p.cert.disc));
    ck.guarded(stage + " traces meet the meridian " + (allowed.count(1) ? "once" : "twice"), [&](std::string& w) {
        if (traces.empty()) {
            w = "no trace curves";
            return false;
        }
        for (const auto& t : traces) {
            auto i = intersection_magnitude(PB, t, mer);
            w += (w.empty() ? "" : ",") + std::to_string(i);
            if (!allowed.count(i)) return false;
        }
        return true;
    });
    return ck.ok();
}

}  // namespace detail

inline void verify_solid_torus_into(VerifierReport& rep, const std::string& stage, const Triangulation& tri, const SolidTorusCert& c) {
    detail::Checker ck(rep, stage);
    if (!ck("labels", c.labels.size() == static_cast<std::size_t>(tri.size()) && check_orientation(tri, c.labels),
            std::to_string(c.labels.size()) + " labels for " + std::to_string(tri.size()) + " tetrahedra"))
        return;
    if (!ck("boundary exists", tri.boundary_face_count() > 0)) return;
    BoundarySurface B = boundary_surface(tri, c.labels);
    if (!detail::boundary_tori(ck, B, 1)) return;
    if (!detail::check_admissible_on(ck, "disc admissible", tri, c.disc)) return;
    ck.guarded("disc is a disc", [&](std::string& w) {
        auto s = analyze(tri, c.disc);
        w = detail::surface_witness(s);
        return s.component_count() == 1 && s.components[0].euler == 1 && s.components[0].boundary_curves == 1;
    });
    ck.guarded("curve is a connected boundary curve", [&](std::string& w) {
        if (c.curve.triangles() != B.size() || !curve_matches(B, c.curve)) {
            w = "not a normal curve on the boundary";
            return false;
        }
        auto comps = trace_components(B, c.curve);
        w = std::to_string(comps.size()) + " component(s)";
        return comps.size() == 1;
    });
    ck.guarded("intersection ±1", [&](std::string& w) {
        auto i = intersection_magnitude(B, c.curve, to_curve(boundary_curve_coords(B, c.disc)));
        w = "|i| = " + std::to_string(i);
        return i == 1;
    });
    ck.guarded("complement is a ball", [&](std::string& w) {
        CutResult r = cut_along(tri, c.labels, c.disc);
        w = std::to_string(r.complement.size()) + " tetrahedra, " + std::to_string(r.component_count) + " component(s)";
        return r.component_count == 1 && verify_ball(r.complement);
    });
}

namespace detail {

inline void verify_thickened(VerifierReport& rep, const Triangulation& tri, const ThickenedTorusCert& c) {
    Checker ck(rep, "ThickenedTorus");
    OrientationLabels labels;
    if (!orientation(ck, tri, labels)) return;
    if (!homology_is(ck, tri, AbelianGroup{2, {}})) return;
    BoundarySurface B = boundary_surface(tri, labels);
    if (!boundary_tori(ck, B, 2)) return;
    if (!check_annulus(ck, "annulus", tri, c.annulus)) return;
    ck.guarded("annulus joins the two boundary tori", [&](std::string& w) {
        auto cs = boundary_curves_of(B, c.annulus);
        w = std::to_string(cs.size()) + " curve(s)";
        return cs.size() == 2 && curve_component(B, cs[0]) != curve_component(B, cs[1]);
    });
    if (!ck.ok()) return;
    auto cut = rederive_cut(ck, tri, labels, c.annulus, c.cut);
    if (!cut) return;
    if (!ck("complement is connected", cut->component_count == 1, std::to_string(cut->component_count) + " components")) return;
    verify_piece(ck, *cut, c.solid, {1}, "solid torus");
}

inline void verify_ktwisted(VerifierReport& rep, const Triangulation& tri, const KTwistedICert& c) {
    Checker ck(rep, "KTwistedI");
    OrientationLabels labels;
    if (!orientation(ck, tri, labels)) return;
    if (!homology_is(ck, tri, AbelianGroup{1, {BigInt(2)}})) return;
    BoundarySurface B = boundary_surface(tri, labels);
    if (!boundary_tori(ck, B, 1)) return;
    if (!check_annulus(ck, "annulus", tri, c.annulus)) return;
    auto cut = rederive_cut(ck, tri, labels, c.annulus, c.cut);
    if (!cut) return;
    const int want = c.kind == "horizontal" ? 1 : 2;
    if (!ck("complement has " + std::to_string(want) + " component(s)", cut->component_count == want,
            std::to_string(cut->component_count)))
        return;
    std::set<int> seen;
    for (const auto& p : c.solids) seen.insert(p.component);
    if (!ck("one solid torus per component", static_cast<int>(c.solids.size()) == want && static_cast<int>(seen.size()) == want,
            std::to_string(c.solids.size()) + " sub-certificates"))
        return;
    for (std::size_t i = 0; i < c.solids.size(); ++i)
        if (!verify_piece(ck, *cut, c.solids[i], {want == 1 ? 1 : 2}, "solid torus " + std::to_string(i))) return;
}

inline void verify_bundle(VerifierReport& rep, const std::string& stage, const Triangulation& tri, const CircleBundleCert& c) {
    Checker ck(rep, stage);
    OrientationLabels labels;
    if (!orientation(ck, tri, labels)) return;
    BoundarySurface B = boundary_surface(tri, labels);
    bool tori = true;
    for (int k = 0; k < B.component_count(); ++k) tori = tori && B.component_euler(k) == 0;
    if (!ck("boundary is a union of tori", tori, std::to_string(B.component_count()) + " component(s)")) return;
    const int n = static_cast<int>(c.annuli.size());
    for (int i = 0; i < n; ++i)
        if (!check_annulus(ck, "annulus " + std::to_string(i), tri, c.annuli[i])) return;
    NormalSurfaceVec sum = c.annuli[0];
    ck.guarded("annuli are disjoint", [&](std::string& w) {
        for (int i = 1; i < n; ++i) sum = haken_sum(sum, c.annuli[i]);
        auto s = analyze(tri, sum);
        w = surface_witness(s);
        return s.component_count() == n;
    });
    if (!ck.ok()) return;
    auto cut = rederive_cut(ck, tri, labels, sum, c.cut);
    if (!cut) return;
    if (!ck("complement is connected", cut->component_count == 1, std::to_string(cut->component_count) + " components")) return;
    if (!verify_piece(ck, *cut, c.meridian, {1}, "meridian")) return;
    if (!check_admissible_on(ck, "section admissible", tri, c.section)) return;
    std::optional<SurfaceSummary> sec;
    ck.guarded("section is connected and orientable", [&](std::string& w) {
        sec = analyze(tri, c.section);
        w = surface_witness(*sec);
        return sec->component_count() == 1 && sec->components[0].orientable;
    });
    if (!ck.ok()) return;
    ck("chi(section) = 1 - n", sec->components[0].euler == 1 - n, "chi " + std::to_string(sec->components[0].euler) + ", n " + std::to_string(n));
    ck("declared base Euler characteristic", c.base_euler == sec->components[0].euler, std::to_string(c.base_euler));
    ck("declared base boundary count", c.base_boundary == sec->components[0].boundary_curves && c.base_boundary == B.component_count(),
       std::to_string(sec->components[0].boundary_curves) + " section boundary curves, " + std::to_string(B.component_count()) + " boundary tori");
    ck.guarded("section meets each annulus boundary once", [&](std::string& w) {
        auto sc = boundary_curves_of(B, c.section);
        for (const auto& a : c.annuli)
            for (const auto& ac : boundary_curves_of(B, a)) {
                int comp = curve_component(B, ac);
                int hits = 0;
                for (const auto& s : sc) {
                    if (curve_component(B, s) != comp) continue;
                    ++hits;
                    auto i = intersection_magnitude(B, ac.vec, s.vec);
                    if (i != 1) {
                        w = "|i| = " + std::to_string(i);
                        return false;
                    }
                }
                if (hits != 1) {
                    w = std::to_string(hits) + " section curves on a boundary torus";
                    return false;
                }
            }
        return true;
    });
    if (!ck.ok()) return;
    homology_is(ck, tri, AbelianGroup{2 - c.base_euler, {}});
}

inline void verify_mult_two(VerifierReport& rep, const Triangulation& tri, const MultiplicityTwoCert& c) {
    Checker ck(rep, "MultiplicityTwo");
    SeifertData data;
    if (!ck.guarded("Seifert data normal", [&](std::string& w) {
            data = normalize(c.data);
            w = data.str();
            return std::all_of(data.fibres.begin(), data.fibres.end(), [](const SeifertFibre& f) { return f.p == 2; });
        }))
        return;
    OrientationLabels labels;
    if (!orientation(ck, tri, labels)) return;
    BoundarySurface B = boundary_surface(tri, labels);
    if (!ck("boundary count matches the base", B.component_count() == data.b, std::to_string(B.component_count()))) return;
    const int n = static_cast<int>(c.annuli.size());
    for (int i = 0; i < n; ++i)
        if (!check_annulus(ck, "annulus " + std::to_string(i), tri, c.annuli[i])) return;
    NormalSurfaceVec sum = c.annuli[0];
    ck.guarded("annuli are disjoint", [&](std::string& w) {
        for (int i = 1; i < n; ++i) sum = haken_sum(sum, c.annuli[i]);
        auto s = analyze(tri, sum);
        w = surface_witness(s);
        return s.component_count() == n;
    });
    if (!ck.ok()) return;
    auto cut = rederive_cut(ck, tri, labels, sum, c.cut);
    if (!cut) return;
    std::set<int> used{c.bundle_component};
    for (const auto& p : c.solids) used.insert(p.component);
    if (!ck("every component is accounted for once",
            static_cast<int>(used.size()) == cut->component_count && static_cast<int>(c.solids.size()) + 1 == cut->component_count &&
                *used.begin() >= 0 && *used.rbegin() < cut->component_count,
            std::to_string(cut->component_count) + " components"))
        return;
    for (std::size_t i = 0; i < c.solids.size(); ++i)
        if (!verify_piece(ck, *cut, c.solids[i], {0, 2}, "solid torus " + std::to_string(i))) return;
    int twos = 0;
    for (const auto& p : c.solids) {
        ComponentPiece P = extract_component(cut->complement, cut->labels, p.component);
        BoundarySurface PB = boundary_surface(P.tri, P.labels);
        NormalCurveVec mer = to_curve(boundary_curve_coords(PB, p.cert.disc));
        bool two = false;
        for (const auto& t : piece_traces(*cut, P, PB)) two = two || intersection_magnitude(PB, t, mer) == 2;
        twos += two;
    }
    if (!ck("multiplicity-two fibres match the data", twos == static_cast<int>(data.fibres.size()), std::to_string(twos))) return;
    {
        ComponentPiece P = extract_component(cut->complement, cut->labels, c.bundle_component);
        std::size_t before = rep.checks.size();
        verify_bundle(rep, "MultiplicityTwo / circle bundle", P.tri, c.bundle);
        bool ok = true;
        for (std::size_t i = before; i < rep.checks.size(); ++i) ok = ok && rep.checks[i].pass;
        ck.fail_through(ok);
        if (!ck.ok()) return;
    }
    if (!check_admissible_on(ck, "horizontal surface admissible", tri, c.horizontal)) return;
    ck.guarded("chi(F) = 2 chi(base) - n", [&](std::string& w) {
        auto s = analyze(tri, c.horizontal);
        w = surface_witness(s);
        std::int64_t want = 2 * data.base_euler() - static_cast<std::int64_t>(data.fibres.size());
        return s.component_count() == 1 && s.euler() == want;
    });
}

}  // namespace detail

inline VerifierReport verify(const Triangulation& tri, const Certificate& cert);

namespace detail {

inline void verify_general(VerifierReport& rep, const Triangulation& tri, const GeneralSFSCert& c) {
    Checker ck(rep, "GeneralSFS");
    SeifertData data;
    if (!ck.guarded("Seifert data normal", [&](std::string& w) {
            data = normalize(c.data);
            w = data.str();
            return true;
        }))
        return;
    if (!ck("labels", c.labels.size() == static_cast<std::size_t>(tri.size()) && check_orientation(tri, c.labels))) return;
    if (!ck("boundary exists", tri.boundary_face_count() > 0)) return;
    if (!ck("subdivision level within cap", c.subdivision_level >= 0 && c.subdivision_level <= kMaxSubdivisionLevel,
            "cap: level " + std::to_string(c.subdivision_level) + " > " + std::to_string(kMaxSubdivisionLevel)))
        return;
    if (!ck("one neighbourhood per fibre", c.fibres.size() == data.fibres.size(), std::to_string(c.fibres.size()))) return;
    auto dl = find_orientation(c.drilled);
    if (!ck("drilled triangulation orientable", dl.has_value())) return;
    BoundarySurface DB = boundary_surface(c.drilled, *dl);
    if (!ck("drilled boundary count", DB.component_count() == data.b + static_cast<int>(c.fibres.size()),
            std::to_string(DB.component_count())))
        return;
    std::vector<SeifertFibre> found;
    std::set<int> comps;
    for (std::size_t i = 0; i < c.fibres.size(); ++i) {
        const auto& f = c.fibres[i];
        std::string tag = "fibre " + std::to_string(i);
        std::size_t before = rep.checks.size();
        verify_solid_torus_into(rep, "GeneralSFS / " + tag, f.neighbourhood, f.solid);
        bool ok = true;
        for (std::size_t k = before; k < rep.checks.size(); ++k) ok = ok && rep.checks[k].pass;
        ck.fail_through(ok);
        if (!ck.ok()) return;
        if (!ck(tag + " boundary component", f.boundary_component >= 0 && f.boundary_component < DB.component_count() &&
                                                   comps.insert(f.boundary_component).second))
            return;
        ck.guarded(tag + " invariant", [&](std::string& w) {
            auto on = [&](const NormalCurveVec& v) {
                auto o = orient_connected(DB, v);
                auto cc = trace_components(DB, v);
                if (curve_component(DB, cc[0]) != f.boundary_component) throw InputError("curve on the wrong boundary torus");
                return o;
            };
            Rational r = seifert_fibre_invariant(on(f.eta), on(f.gamma), on(f.mu), f.k, DB);
            std::int64_t p = r.denominator(), q = r.numerator();
            w = std::to_string(q) + "/" + std::to_string(p);
            if (p < 2) return false;
            found.push_back({p, q});
            return true;
        });
        if (!ck.ok()) return;
    }
    SeifertData derived = data;
    derived.fibres = found;
    if (!ck("fibre invariants match the Seifert data", seifert_data_equivalent(derived, data), derived.str())) return;
    if (!c.fibres.empty() || c.drilled_cert) {
        if (!ck("drilled certificate present", c.drilled_cert != nullptr)) return;
        VerifierReport sub = verify(c.drilled, *c.drilled_cert);
        for (auto& x : sub.checks) {
            x.stage = "GeneralSFS / drilled / " + x.stage;
            rep.checks.push_back(x);
        }
        ck.fail_through(sub.accepted());
    }
}

}  // namespace detail

inline VerifierReport verify(const Triangulation& tri, const Certificate& cert) {
    VerifierReport rep;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, SolidTorusCert>) {
                detail::Checker ck(rep, "SolidTorus");
                if (ck("orientable", find_orientation(tri).has_value()) &&
                    ck("homology Z", first_homology(tri) == AbelianGroup{1, {}}, "H1 = " + first_homology(tri).str()))
                    verify_solid_torus_into(rep, "SolidTorus", tri, c);
            } else if constexpr (std::is_same_v<T, ThickenedTorusCert>) {
                detail::verify_thickened(rep, tri, c);
            } else if constexpr (std::is_same_v<T, KTwistedICert>) {
                detail::verify_ktwisted(rep, tri, c);
            } else if constexpr (std::is_same_v<T, CircleBundleCert>) {
                detail::verify_bundle(rep, "CircleBundle", tri, c);
            } else if constexpr (std::is_same_v<T, MultiplicityTwoCert>) {
                detail::verify_mult_two(rep, tri, c);
            } else {
                detail::verify_general(rep, tri, c);
            }
        },
        cert.v);
    return rep;
}

// Parses and verifies; a malformed certificate is a one-check rejection.
inline VerifierReport verify_text(const Triangulation& tri, const std::string& cert_text) {
    try {
        return verify(tri, parse_certificate(cert_text));
    } catch (const MalformedCertificate& e) {
        VerifierReport r;
        r.checks.push_back({e.what(), "parse", false, e.field()});
        return r;
    }
}

// ---------------------------------------------------------------------------
// Generation.

enum class Variant { kAuto, kSolidTorus, kThickenedTorus, kKTwistedI, kCircleBundle };

struct GenerateOptions {
    Variant target = Variant::kAuto;
    EnumerationCaps caps{};
    int max_face_subset = 3;
};

namespace detail {

// Meridian discs of a component of a cut, from push-offs of unions of old face classes.
inline std::optional<SolidTorusCert> find_piece_meridian(const Triangulation& tri, const CutResult& cut, int comp, int max_subset,
                                                         const std::set<std::int64_t>& allowed) {
    ComponentPiece P = extract_component(cut.complement, cut.labels, comp);
    BoundarySurface PB = boundary_surface(P.tri, P.labels);
    if (PB.component_count() != 1 || PB.euler_characteristic() != 0) return std::nullopt;
    auto traces = piece_traces(cut, P, PB);
    if (traces.empty()) return std::nullopt;
    Skeleton sk = skeleton(tri), psk = skeleton(P.tri);
    std::vector<int> internal;
    for (int f = 0; f < sk.face_count; ++f) {
        auto [t, ff] = sk.face_rep[f];
        if (!tri.is_boundary(t, ff)) internal.push_back(f);
    }
    const int ni = static_cast<int>(internal.size());
    std::set<std::vector<int>> tried;
    std::function<std::optional<SolidTorusCert>(int, std::vector<int>&)> rec;
    auto attempt = [&](const std::set<int>& sigma) -> std::optional<SolidTorusCert> {
        std::set<int> dfaces;
        for (int i = 0; i < P.tri.size(); ++i) {
            const auto& src = cut.source[static_cast<std::size_t>(P.tets[i])];
            for (int f = 0; f < 4; ++f) {
                int of = src.on_old_face[f];
                if (of >= 0 && sigma.count(sk.face_of[src.old_tet][of])) dfaces.insert(psk.face_of[i][f]);
            }
        }
        if (dfaces.empty()) return std::nullopt;
        std::vector<int> fl(dfaces.begin(), dfaces.end());
        std::vector<int> par(fl.size());
        std::iota(par.begin(), par.end(), 0);
        std::function<int(int)> root = [&](int x) { return par[x] == x ? x : par[x] = root(par[x]); };
        std::map<int, int> edge_first;
        for (std::size_t i = 0; i < fl.size(); ++i) {
            auto [t, f] = psk.face_rep[fl[i]];
            auto fv = face_vertices(f);
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) {
                    int e = psk.edge_of[t][edge_index(fv[a], fv[b])];
                    auto it = edge_first.find(e);
                    if (it == edge_first.end()) edge_first[e] = static_cast<int>(i);
                    else par[root(static_cast<int>(i))] = root(it->second);
                }
        }
        std::map<int, std::vector<int>> groups;
        for (std::size_t i = 0; i < fl.size(); ++i) groups[root(static_cast<int>(i))].push_back(fl[i]);
        for (auto& [r, g] : groups) {
            if (!tried.insert(g).second) continue;
            auto po = pushoff_of_faces(P.tri, psk, g);
            if (!po) continue;
            SurfaceSummary ps = analyze(P.tri, *po);
            for (const auto& pc : ps.components) {
                if (pc.euler != 1 || pc.boundary_curves != 1) continue;
                NormalCurveVec mer = to_curve(boundary_curve_coords(PB, pc.vec));
                bool good = true;
                for (const auto& t : traces) good = good && allowed.count(intersection_magnitude(PB, t, mer));
                if (!good) continue;
                for (const auto& cv : traces) {
                    // any curve meeting the meridian once serves as the longitude
                    if (intersection_magnitude(PB, cv, mer) != 1) continue;
                    if (check_solid_torus(P.tri, P.labels, pc.vec, cv).ok()) return SolidTorusCert{P.labels, pc.vec, cv};
                }
                // two-fold traces: look for a longitude among other boundary curves of the push-offs
                for (const auto& other : ps.components) {
                    if (&other == &pc) continue;
                    for (const auto& cc : boundary_curves_of(PB, other.vec))
                        if (intersection_magnitude(PB, cc.vec, mer) == 1 && check_solid_torus(P.tri, P.labels, pc.vec, cc.vec).ok())
                            return SolidTorusCert{P.labels, pc.vec, cc.vec};
                }
            }
        }
        return std::nullopt;
    };
    std::vector<int> pick;
    for (int size = 1; size <= std::min(max_subset, ni); ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::set<int> sigma;
            for (int i : idx) sigma.insert(internal[i]);
            if (auto r = attempt(sigma)) return r;
            int k = size - 1;
            while (k >= 0 && idx[k] == ni - size + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

inline std::vector<NormalSurfaceVec> annuli_of(const Triangulation& tri, const FundamentalSet& fs) {
    std::vector<NormalSurfaceVec> out;
    for (const auto& v : fs.surfaces) {
        auto s = analyze(tri, v);
        if (s.component_count() == 1 && s.components[0].euler == 0 && s.components[0].boundary_curves == 2 && s.components[0].orientable)
            out.push_back(v);
    }
    return out;
}

inline std::optional<SolidTorusCert> generate_solid(const Triangulation& tri, const OrientationLabels& labels, const FundamentalSet& fs) {
    BoundarySurface B = boundary_surface(tri, labels);
    std::vector<NormalCurveVec> curves;
    for (const auto& v : fs.surfaces)
        for (const auto& c : boundary_curves_of(B, v))
            if (std::find(curves.begin(), curves.end(), c.vec) == curves.end()) curves.push_back(c.vec);
    // small connected curves on small boundaries
    if (B.size() <= 4) {
        NormalCurveVec c(B.size());
        const int n = 3 * B.size();
        while (true) {
            int i = 0;
            while (i < n && c.c[i] == 2) c.c[i++] = 0;
            if (i == n) break;
            ++c.c[i];
            if (curve_matches(B, c) && trace_components(B, c).size() == 1 &&
                std::find(curves.begin(), curves.end(), c) == curves.end())
                curves.push_back(c);
        }
    }
    for (const auto& d : fs.surfaces) {
        auto s = analyze(tri, d);
        if (s.component_count() != 1 || s.components[0].euler != 1 || s.components[0].boundary_curves != 1) continue;
        NormalCurveVec mer = to_curve(boundary_curve_coords(B, d));
        for (const auto& c : curves)
            if (intersection_magnitude(B, c, mer) == 1 && check_solid_torus(tri, labels, d, c).ok()) return SolidTorusCert{labels, d, c};
    }
    return std::nullopt;
}

inline std::optional<CircleBundleCert> generate_bundle(const Triangulation& tri, const OrientationLabels& labels, const FundamentalSet& fs,
                                                       int max_subset) {
    BoundarySurface B = boundary_surface(tri, labels);
    auto annuli = annuli_of(tri, fs);
    for (const auto& a : annuli) {
        CutResult cut = cut_along(tri, labels, a);
        if (cut.component_count != 1) continue;
        auto mer = find_piece_meridian(tri, cut, 0, max_subset, {1});
        if (!mer) continue;
        auto ac = boundary_curves_of(B, a);
        for (const auto& s : fs.surfaces) {
            auto ss = analyze(tri, s);
            if (ss.component_count() != 1 || !ss.components[0].orientable || ss.components[0].euler != 0) continue;
            if (ss.components[0].boundary_curves != B.component_count()) continue;
            auto sc = boundary_curves_of(B, s);
            bool ok = true;
            for (const auto& x : ac) {
                int hits = 0;
                for (const auto& y : sc)
                    if (curve_component(B, y) == curve_component(B, x)) {
                        ++hits;
                        ok = ok && intersection_magnitude(B, x.vec, y.vec) == 1;
                    }
                ok = ok && hits == 1;
            }
            if (!ok) continue;
            CircleBundleCert c;
            c.annuli = {a};
            c.cut = record_of(cut);
            c.meridian = {0, *mer};
            c.section = s;
            c.base_euler = 0;
            c.base_boundary = B.component_count();
            return c;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Searches for a certificate; nullopt means none was found within the caps.
inline std::optional<Certificate> generate(const Triangulation& tri, const GenerateOptions& opt = {}) {
    using namespace detail;
    auto labels = find_orientation(tri);
    if (!labels || tri.boundary_face_count() == 0) return std::nullopt;
    BoundarySurface B = boundary_surface(tri, *labels);
    for (int c = 0; c < B.component_count(); ++c)
        if (B.component_euler(c) != 0) return std::nullopt;
    AbelianGroup h = first_homology(tri);
    Variant target = opt.target;
    if (target == Variant::kAuto) {
        if (B.component_count() == 1 && h == AbelianGroup{1, {}}) target = Variant::kSolidTorus;
        else if (B.component_count() == 1 && h == AbelianGroup{1, {BigInt(2)}}) target = Variant::kKTwistedI;
        else if (B.component_count() == 2 && h == AbelianGroup{2, {}}) target = Variant::kThickenedTorus;
        else target = Variant::kCircleBundle;
    }
    FundamentalSet fs = enumerate_fundamentals(tri, opt.caps);
    switch (target) {
        case Variant::kSolidTorus: {
            if (B.component_count() != 1) return std::nullopt;
            if (auto c = generate_solid(tri, *labels, fs)) return Certificate{*c};
            return std::nullopt;
        }
        case Variant::kThickenedTorus: {
            if (B.component_count() != 2) return std::nullopt;
            for (const auto& a : annuli_of(tri, fs)) {
                auto ac = boundary_curves_of(B, a);
                if (ac.size() != 2 || curve_component(B, ac[0]) == curve_component(B, ac[1])) continue;
                CutResult cut = cut_along(tri, *labels, a);
                if (cut.component_count != 1) continue;
                if (auto m = find_piece_meridian(tri, cut, 0, opt.max_face_subset, {1}))
                    return Certificate{ThickenedTorusCert{a, record_of(cut), {0, *m}}};
            }
            return std::nullopt;
        }
        case Variant::kKTwistedI: {
            if (B.component_count() != 1) return std::nullopt;
            std::optional<Certificate> vertical;
            for (const auto& a : annuli_of(tri, fs)) {
                CutResult cut = cut_along(tri, *labels, a);
                if (cut.component_count == 1) {
                    if (auto m = find_piece_meridian(tri, cut, 0, opt.max_face_subset, {1}))
                        return Certificate{KTwistedICert{a, "horizontal", record_of(cut), {{0, *m}}}};
                } else if (cut.component_count == 2 && !vertical) {
                    auto m0 = find_piece_meridian(tri, cut, 0, opt.max_face_subset, {2});
                    auto m1 = m0 ? find_piece_meridian(tri, cut, 1, opt.max_face_subset, {2}) : std::nullopt;
                    if (m0 && m1) vertical = Certificate{KTwistedICert{a, "vertical", record_of(cut), {{0, *m0}, {1, *m1}}}};
                }
            }
            return vertical;
        }
        case Variant::kCircleBundle: {
            if (auto c = generate_bundle(tri, *labels, fs, opt.max_face_subset)) return Certificate{*c};
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

// All certificates of one variant that the search finds, for fixtures admitting several kinds.
inline std::vector<Certificate> generate_ktwisted_all(const Triangulation& tri, const GenerateOptions& opt = {}) {
    using namespace detail;
    std::vector<Certificate> out;
    auto labels = find_orientation(tri);
    if (!labels || tri.boundary_face_count() == 0) return out;
    FundamentalSet fs = enumerate_fundamentals(tri, opt.caps);
    bool have_h = false, have_v = false;
    for (const auto& a : annuli_of(tri, fs)) {
        CutResult cut = cut_along(tri, *labels, a);
        if (cut.component_count == 1 && !have_h) {
            if (auto m = find_piece_meridian(tri, cut, 0, opt.max_face_subset, {1})) {
                out.push_back(Certificate{KTwistedICert{a, "horizontal", record_of(cut), {{0, *m}}}});
                have_h = true;
            }
        } else if (cut.component_count == 2 && !have_v) {
            auto m0 = find_piece_meridian(tri, cut, 0, opt.max_face_subset, {2});
            auto m1 = m0 ? find_piece_meridian(tri, cut, 1, opt.max_face_subset, {2}) : std::nullopt;
            if (m0 && m1) {
                out.push_back(Certificate{KTwistedICert{a, "vertical", record_of(cut), {{0, *m0}, {1, *m1}}}});
                have_v = true;
            }
        }
        if (have_h && have_v) break;
    }
    return out;
}

}  // namespace sfscert
