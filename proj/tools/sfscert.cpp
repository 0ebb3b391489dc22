#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfscert/certify.hpp"
#include "sfscert/shs.hpp"

using namespace sfscert;

namespace {

constexpr int kAccept = 0, kReject = 1, kUsage = 2, kCap = 3;

struct Options {
    std::string tri, cert, surface, graph, variant = "auto";
    std::vector<std::string> curves;
    int cap_tets = 6;
    std::int64_t cap_weight = kDefaultDiscCap;
    std::int64_t budget = kDefaultMoveBudget;
    std::int64_t nodes = 50'000'000;
    bool json = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Triangulation load_tri(const Options& o) {
    if (o.tri.empty()) throw InputError("--tri is required");
    return parse_triangulation(slurp(o.tri));
}

void emit(const Options& o, const Json& j, const std::string& human) {
    if (o.json) std::cout << j.dump(1) << '\n';
    else std::cout << human;
}

int cmd_verify(const Options& o) {
    Triangulation tri = load_tri(o);
    if (o.cert.empty()) throw InputError("--cert is required");
    VerifierReport r = verify_text(tri, slurp(o.cert));
    emit(o, r.json(), r.str());
    if (!r.checks.empty() && r.checks.front().stage == "parse") return kUsage;
    return r.accepted() ? kAccept : kReject;
}

int cmd_generate(const Options& o) {
    Triangulation tri = load_tri(o);
    GenerateOptions g;
    g.caps = {o.cap_tets, o.nodes};
    static const std::map<std::string, Variant> names{{"auto", Variant::kAuto},
                                                      {"solid-torus", Variant::kSolidTorus},
                                                      {"thickened-torus", Variant::kThickenedTorus},
                                                      {"k-twisted-i", Variant::kKTwistedI},
                                                      {"circle-bundle", Variant::kCircleBundle}};
    auto it = names.find(o.variant);
    if (it == names.end()) throw InputError("unknown variant " + o.variant);
    g.target = it->second;
    auto c = generate(tri, g);
    if (!c) {
        emit(o, Json{{"result", "no certificate found"}}, "no certificate found\n");
        return kReject;
    }
    std::cout << certificate_text(*c);
    return kAccept;
}

int cmd_fundamentals(const Options& o) {
    Triangulation tri = load_tri(o);
    FundamentalSet fs = enumerate_fundamentals(tri, {o.cap_tets, o.nodes});
    Json arr = Json::array();
    std::ostringstream os;
    os << fs.surfaces.size() << " fundamental surfaces (coordinate bound " << to_string(fs.bound) << ")\n";
    for (const auto& v : fs.surfaces) {
        SurfaceSummary s = analyze(tri, v, o.cap_weight);
        Json comps = Json::array();
        for (const auto& c : s.components)
            comps.push_back(Json{{"euler", c.euler}, {"orientable", c.orientable}, {"boundary_curves", c.boundary_curves}});
        arr.push_back(Json{{"vector", detail::vec_json(v)}, {"components", comps}});
        os << v.str() << "  " << detail::surface_witness(s) << '\n';
    }
    emit(o, Json{{"bound", to_string(fs.bound)}, {"surfaces", arr}}, os.str());
    return kAccept;
}

int cmd_disc_types(const Options& o) {
    if (o.graph.empty()) throw InputError("a graph file is required");
    BoundaryGraph g = parse_boundary_graph(slurp(o.graph));
    auto types = enumerate_disc_types(g);
    auto bounds = check_bounds(g);
    std::ostringstream os;
    os << types.size() << " elementary disc types\n";
    Json arr = Json::array();
    for (const auto& t : types) {
        os << "  " << t.str() << '\n';
        arr.push_back(t.str());
    }
    os << "bounds: " << (bounds.pass() ? "pass" : "fail: " + bounds.failures()) << '\n';
    emit(o, Json{{"count", types.size()}, {"types", arr}, {"bounds", bounds.pass()}}, os.str());
    return kAccept;
}

int cmd_constants(const Options& o) {
    BoundsReport r = evaluate_constants(static_cast<std::int64_t>(enumerate_disc_types(k4_graph()).size()));
    Json v = Json::array();
    for (const auto& x : r.verdicts) v.push_back(Json{{"claim", x.name}, {"holds", x.holds}, {"detail", x.detail}});
    Json j{{"factorial13", to_string(r.factorial13)},
           {"d_h_bound", to_string(r.d_h_bound)},
           {"log2_cF", to_string(r.log2_cF)},
           {"log2_cB", to_string(r.log2_cB)},
           {"log2_cA", to_string(r.log2_cA)},
           {"log2_cS", to_string(r.log2_cS)},
           {"log2_cT", to_string(r.log2_cT)},
           {"verdicts", v}};
    emit(o, j, r.str());
    return r.all_hold() ? kAccept : kReject;
}

int cmd_homology(const Options& o) {
    Triangulation tri = load_tri(o);
    AbelianGroup h = first_homology(tri);
    Json t = Json::array();
    for (const auto& d : h.torsion) t.push_back(to_string(d));
    emit(o, Json{{"free_rank", h.free_rank}, {"torsion", t}, {"H1", h.str()}}, "H1 = " + h.str() + "\n");
    return kAccept;
}

NormalSurfaceVec load_surface(const Options& o, const Triangulation& tri) {
    if (o.surface.empty()) throw InputError("--surface is required");
    auto lines = parse_surface_lines(slurp(o.surface));
    if (lines.empty()) throw InputError("no surface line in " + o.surface);
    return check_admissible(tri, lines.front().second);
}

int cmd_cut(const Options& o) {
    Triangulation tri = load_tri(o);
    NormalSurfaceVec v = load_surface(o, tri);
    CutResult c = cut_along(tri, v, o.cap_weight);
    Json comps = Json::array();
    std::ostringstream os;
    os << to_text(c);
    for (int k = 0; k < c.component_count; ++k) {
        ComponentPiece P = extract_component(c.complement, c.labels, k);
        BoundarySurface PB = boundary_surface(P.tri, P.labels);
        bool ball = verify_ball(P.tri, o.budget);
        AbelianGroup h = first_homology(P.tri);
        os << "component " << k << ": " << P.tri.size() << " tetrahedra, boundary chi " << PB.euler_characteristic() << ", H1 = " << h.str()
           << (ball ? ", ball" : "") << '\n';
        comps.push_back(Json{{"tetrahedra", P.tri.size()}, {"boundary_euler", PB.euler_characteristic()}, {"H1", h.str()}, {"ball", ball}});
    }
    emit(o, Json{{"complement", to_text(c.complement)}, {"components", comps}}, os.str());
    return kAccept;
}

int cmd_intersect(const Options& o) {
    Triangulation tri = load_tri(o);
    auto labels = find_orientation(tri);
    if (!labels) throw InputError("triangulation is not orientable");
    BoundarySurface B = boundary_surface(tri, *labels);
    std::vector<NormalCurveVec> curves;
    for (const auto& path : o.curves)
        for (const auto& [name, coords] : parse_vector_lines(slurp(path), "curve")) curves.push_back(to_curve(coords));
    if (curves.size() != 2) throw InputError("intersect needs exactly two curves, got " + std::to_string(curves.size()));
    for (const auto& c : curves)
        if (c.triangles() != B.size() || !curve_matches(B, c)) throw InputError("curve is not a normal curve on the boundary");
    auto a = orient_connected(B, curves[0]), b = orient_connected(B, curves[1]);
    std::int64_t alg = algebraic_intersection(B, a, b);
    std::int64_t geo = geometric_oracle(B, a, b);
    emit(o, Json{{"algebraic", alg}, {"oracle", geo}},
         "algebraic intersection " + std::to_string(alg) + "\noracle " + std::to_string(geo) + "\n");
    return kAccept;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seifert fibred space certificates"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("--tri", o.tri, "triangulation file");
        s->add_option("--cap-tets", o.cap_tets, "tetrahedron cap for enumeration")->check(CLI::PositiveNumber);
        s->add_option("--cap-weight", o.cap_weight, "normal disc cap for decompression")->check(CLI::PositiveNumber);
        s->add_option("--budget", o.budget, "move budget for ball recognition")->check(CLI::PositiveNumber);
        s->add_flag("--json", o.json, "machine-readable output");
    };
    auto* verify_cmd = app.add_subcommand("verify", "verify a certificate");
    common(verify_cmd);
    verify_cmd->add_option("--cert", o.cert, "certificate file");
    auto* gen = app.add_subcommand("generate", "search for a certificate");
    common(gen);
    gen->add_option("--variant", o.variant, "auto | solid-torus | thickened-torus | k-twisted-i | circle-bundle");
    auto* fund = app.add_subcommand("enumerate-fundamentals", "fundamental normal surfaces");
    common(fund);
    auto* discs = app.add_subcommand("disc-types", "elementary disc types of a boundary graph");
    common(discs);
    discs->add_option("graph", o.graph, "boundary graph file")->required();
    auto* cons = app.add_subcommand("constants", "exact evaluation of the constants");
    common(cons);
    auto* hom = app.add_subcommand("homology", "first homology");
    common(hom);
    hom->add_option("file", o.tri, "triangulation file (alternative to --tri)");
    auto* cut = app.add_subcommand("cut", "cut along a normal surface");
    common(cut);
    cut->add_option("--surface", o.surface, "surface file");
    auto* inter = app.add_subcommand("intersect", "algebraic intersection of two boundary curves");
    common(inter);
    inter->add_option("--curve", o.curves, "curve file (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kAccept : kUsage;
    }
    try {
        if (*verify_cmd) return cmd_verify(o);
        if (*gen) return cmd_generate(o);
        if (*fund) return cmd_fundamentals(o);
        if (*discs) return cmd_disc_types(o);
        if (*cons) return cmd_constants(o);
        if (*hom) return cmd_homology(o);
        if (*cut) return cmd_cut(o);
        if (*inter) return cmd_intersect(o);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kCap;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
