#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "triangulation.hpp"

namespace sfscert {

// ---------------------------------------------------------------------------
// Boundary graphs of 0-handles.
//
// Each island is a disc whose boundary circle is listed counterclockwise as a cyclic sequence of
// ports: bridge ends and segments. A segment is a stretch of the island boundary facing a lake or
// a forbidden region. Two consecutive segments of different regions meet at a suture endpoint.

struct Port {
    enum Kind { kBridge, kSegment };
    Kind kind = kSegment;
    int id = 0;  // bridge index, or region index
    friend bool operator==(const Port&, const Port&) = default;
};

struct PortOrigin {
    int island = -1;
    int port = -1;
    friend auto operator<=>(const PortOrigin&, const PortOrigin&) = default;
};

struct BoundaryGraph {
    std::vector<std::vector<Port>> islands;
    int bridges = 0;
    std::vector<char> forbidden;                // region -> forbidden?
    std::vector<std::vector<PortOrigin>> origin;  // port provenance in the graph cuts started from

    int island_count() const { return static_cast<int>(islands.size()); }
    int region_count() const { return static_cast<int>(forbidden.size()); }
    int lake_count() const {
        int c = 0;
        for (char f : forbidden)
            if (!f) ++c;
        return c;
    }
    int forbidden_count() const { return region_count() - lake_count(); }
    const Port& port(int u, int p) const { return islands[u][static_cast<std::size_t>(p)]; }
    int ports(int u) const { return static_cast<int>(islands[u].size()); }
    bool is_lake_segment(int u, int p) const {
        const Port& q = port(u, p);
        return q.kind == Port::kSegment && !forbidden[q.id];
    }

    // The two (island, port) ends of each bridge.
    std::vector<std::array<std::pair<int, int>, 2>> bridge_ends() const {
        std::vector<std::array<std::pair<int, int>, 2>> e(static_cast<std::size_t>(bridges), {std::make_pair(-1, -1), std::make_pair(-1, -1)});
        std::vector<int> seen(static_cast<std::size_t>(bridges), 0);
        for (int u = 0; u < island_count(); ++u)
            for (int p = 0; p < ports(u); ++p) {
                const Port& q = port(u, p);
                if (q.kind != Port::kBridge) continue;
                if (q.id < 0 || q.id >= bridges) throw InputError("bridge index out of range");
                if (seen[q.id] >= 2) throw InputError("bridge " + std::to_string(q.id) + " has more than two ends");
                e[q.id][seen[q.id]++] = {u, p};
            }
        for (int b = 0; b < bridges; ++b)
            if (seen[b] != 2) throw InputError("bridge " + std::to_string(b) + " does not have two ends");
        return e;
    }

    // Suture endpoints on island u: consecutive segments of different regions.
    int suture_endpoints(int u) const {
        int c = 0;
        const int n = ports(u);
        if (n < 2) return 0;
        for (int p = 0; p < n; ++p) {
            const Port& a = port(u, p);
            const Port& b = port(u, (p + 1) % n);
            if (a.kind == Port::kSegment && b.kind == Port::kSegment && a.id != b.id) ++c;
        }
        return c;
    }
    int sutures() const {
        int c = 0;
        for (int u = 0; u < island_count(); ++u) c += suture_endpoints(u);
        return c / 2;
    }
    int valence(int u) const {
        int c = 0;
        for (const auto& q : islands[u])
            if (q.kind == Port::kBridge) ++c;
        return c;
    }

    // Regions adjacent to bridge b: the segments on either side of its two ends.
    std::set<int> bridge_sides(int b) const {
        std::set<int> out;
        const auto ends = bridge_ends();
        for (auto [u, p] : ends[b]) {
            const int n = ports(u);
            for (int d : {-1, 1}) {
                const Port& q = port(u, ((p + d) % n + n) % n);
                if (q.kind == Port::kSegment) out.insert(q.id);
            }
        }
        return out;
    }

    // Faces of the embedding, each as the list of segments met walking with the face on the left.
    std::vector<std::vector<std::pair<int, int>>> faces() const {
        auto ends = bridge_ends();
        std::vector<std::vector<char>> seen(islands.size());
        for (int u = 0; u < island_count(); ++u) seen[u].assign(islands[u].size(), 0);
        std::vector<std::vector<std::pair<int, int>>> out;
        for (int u0 = 0; u0 < island_count(); ++u0)
            for (int p0 = 0; p0 < ports(u0); ++p0) {
                if (port(u0, p0).kind != Port::kSegment || seen[u0][p0]) continue;
                std::vector<std::pair<int, int>> face;
                int u = u0, p = p0;
                int guard = 0;
                do {
                    if (++guard > 100000) throw InputError("face walk does not close");
                    if (port(u, p).kind == Port::kSegment) {
                        if (seen[u][p]) throw InputError("rotation system is inconsistent");
                        seen[u][p] = 1;
                        face.push_back({u, p});
                    }
                    int q = (p + ports(u) - 1) % ports(u);
                    if (port(u, q).kind == Port::kBridge) {
                        const auto& e = ends[port(u, q).id];
                        auto [w, r] = e[0] == std::make_pair(u, q) ? e[1] : e[0];
                        u = w;
                        p = (r + ports(w) - 1) % ports(w);
                        if (port(u, p).kind == Port::kBridge) throw InputError("empty corner at island " + std::to_string(u));
                    } else {
                        p = q;
                    }
                } while (!(u == u0 && p == p0));
                out.push_back(face);
            }
        return out;
    }

    // Component index of each island in the graph of islands and bridges.
    std::vector<int> island_components() const {
        std::vector<int> comp(islands.size());
        std::iota(comp.begin(), comp.end(), 0);
        auto find = [&](int x) {
            while (comp[x] != x) x = comp[x] = comp[comp[x]];
            return x;
        };
        for (const auto& e : bridge_ends()) comp[find(e[0].first)] = find(e[1].first);
        std::map<int, int> idx;
        std::vector<int> out(islands.size());
        for (int u = 0; u < island_count(); ++u) out[u] = idx.emplace(find(u), static_cast<int>(idx.size())).first->second;
        return out;
    }

    bool connected() const {
        if (islands.empty()) return false;
        auto c = island_components();
        return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
    }

    // Structural checks: bridges have two ends, corners are nonempty, the rotation system
    // describes a sphere, every region lies in a single face. Connectedness only when asked.
    void validate(bool require_connected = true) const {
        if (islands.empty()) throw InputError("boundary graph has no islands");
        for (int u = 0; u < island_count(); ++u) {
            if (islands[u].empty()) throw InputError("island " + std::to_string(u) + " has no ports");
            for (const auto& q : islands[u])
                if (q.kind == Port::kSegment && (q.id < 0 || q.id >= region_count())) throw InputError("region index out of range");
        }
        auto comps = island_components();
        const int c = 1 + *std::max_element(comps.begin(), comps.end());
        if (require_connected && c != 1) throw InputError("boundary graph is not connected");
        auto fs = faces();
        if (island_count() - bridges + static_cast<int>(fs.size()) != 1 + c) throw InputError("rotation system does not describe a sphere");
        std::vector<int> face_of_region(static_cast<std::size_t>(region_count()), -1);
        for (int f = 0; f < static_cast<int>(fs.size()); ++f)
            for (auto [u, p] : fs[f]) {
                int r = port(u, p).id;
                if (face_of_region[r] >= 0 && face_of_region[r] != f && c == 1) throw InputError("region " + std::to_string(r) + " meets two faces");
                face_of_region[r] = f;
            }
    }

    void reset_origin() {
        origin.assign(islands.size(), {});
        for (int u = 0; u < island_count(); ++u)
            for (int p = 0; p < ports(u); ++p) origin[u].push_back({u, p});
    }
};

// The boundary graph of a tetrahedral 0-handle: islands are the faces of a tetrahedron, bridges
// its edges, lakes its vertices.
inline BoundaryGraph k4_graph() {
    BoundaryGraph g;
    g.bridges = 6;
    g.forbidden.assign(4, 0);
    for (int f = 0; f < 4; ++f) {
        auto v = face_vertices(f);
        if (induced_face_sign(1, f) < 0) std::swap(v[1], v[2]);
        std::vector<Port> ports;
        for (int i = 0; i < 3; ++i) {
            ports.push_back({Port::kSegment, v[i]});
            ports.push_back({Port::kBridge, edge_index(v[i], v[(i + 1) % 3])});
        }
        g.islands.push_back(ports);
    }
    g.reset_origin();
    return g;
}

// Text format: "island <u>: <ports>" with ports b<k> (bridge), L<k> (lake), F<k> (forbidden).
inline BoundaryGraph parse_boundary_graph(const std::string& text) {
    BoundaryGraph g;
    std::map<std::pair<char, int>, int> regions;
    std::map<int, int> bridges;
    std::map<int, std::vector<Port>> by_index;
    int line_no = 0;
    for (const auto& raw : detail::split_lines(text)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream is(line);
        std::string word;
        if (!(is >> word)) continue;
        if (word != "island") throw ParseError(line_no, 1, "expected 'island'");
        std::string idx;
        is >> idx;
        if (idx.empty() || idx.back() != ':') throw ParseError(line_no, 8, "expected '<index>:'");
        int u = 0;
        try {
            u = std::stoi(idx.substr(0, idx.size() - 1));
        } catch (...) {
            throw ParseError(line_no, 8, "bad island index");
        }
        if (u < 0 || by_index.count(u)) throw ParseError(line_no, 8, "duplicate or negative island index");
        std::vector<Port> ports;
        while (is >> word) {
            if (word.size() < 2 || (word[0] != 'b' && word[0] != 'L' && word[0] != 'F'))
                throw ParseError(line_no, 1, "bad port '" + word + "'");
            int k = 0;
            try {
                k = std::stoi(word.substr(1));
            } catch (...) {
                throw ParseError(line_no, 1, "bad port '" + word + "'");
            }
            if (word[0] == 'b') {
                auto it = bridges.emplace(k, static_cast<int>(bridges.size())).first;
                ports.push_back({Port::kBridge, it->second});
            } else {
                auto it = regions.emplace(std::make_pair(word[0], k), static_cast<int>(regions.size())).first;
                ports.push_back({Port::kSegment, it->second});
            }
        }
        by_index[u] = ports;
    }
    int expect = 0;
    for (auto& [u, ports] : by_index) {
        if (u != expect++) throw InputError("island indices must be 0..n-1");
        g.islands.push_back(ports);
    }
    g.bridges = static_cast<int>(bridges.size());
    g.forbidden.assign(regions.size(), 0);
    for (auto& [key, id] : regions) g.forbidden[id] = key.first == 'F';
    g.reset_origin();
    g.validate();
    return g;
}

inline std::string to_text(const BoundaryGraph& g) {
    std::ostringstream os;
    for (int u = 0; u < g.island_count(); ++u) {
        os << "island " << u << ":";
        for (const auto& q : g.islands[u]) {
            if (q.kind == Port::kBridge) os << " b" << q.id;
            else os << ' ' << (g.forbidden[q.id] ? 'F' : 'L') << q.id;
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Elementary disc types.

struct Visit {
    int island = -1;
    int entry = -1;  // port index
    int exit = -1;
    friend auto operator<=>(const Visit&, const Visit&) = default;
};

// Boundary curve of an elementary disc: islands visited in order; consecutive visits are joined
// through the exit port (along a bridge or across a lake) into the next entry port.
struct ElementaryDiscType {
    std::vector<Visit> visits;
    std::vector<int> bridges_used;
    std::vector<int> lakes_used;
    friend bool operator==(const ElementaryDiscType& a, const ElementaryDiscType& b) { return a.visits == b.visits; }
    friend bool operator<(const ElementaryDiscType& a, const ElementaryDiscType& b) { return a.visits < b.visits; }
    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < visits.size(); ++i)
            os << (i ? " " : "") << visits[i].island << ':' << visits[i].entry << '-' << visits[i].exit;
        return os.str();
    }
};

namespace detail {

inline std::vector<Visit> canonical_visits(const std::vector<Visit>& v) {
    std::vector<Visit> best = v;
    const std::size_t k = v.size();
    std::vector<Visit> rev(k);
    for (std::size_t i = 0; i < k; ++i) rev[i] = {v[k - 1 - i].island, v[k - 1 - i].exit, v[k - 1 - i].entry};
    for (const std::vector<Visit>* s : {&v, static_cast<const std::vector<Visit>*>(&rev)})
        for (std::size_t r = 0; r < k; ++r) {
            std::vector<Visit> c(s->begin() + static_cast<std::ptrdiff_t>(r), s->end());
            c.insert(c.end(), s->begin(), s->begin() + static_cast<std::ptrdiff_t>(r));
            best = std::min(best, c);
        }
    return best;
}

}  // namespace detail

// Checks a cyclic visit sequence against the crossing rules; fills the bridges and lakes used.
inline std::optional<ElementaryDiscType> make_disc_type(const BoundaryGraph& g, const std::vector<Visit>& visits) {
    if (visits.empty()) return std::nullopt;
    auto ends = g.bridge_ends();
    ElementaryDiscType d;
    std::set<int> isl, br, lk;
    const std::size_t k = visits.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Visit& a = visits[i];
        if (a.island < 0 || a.island >= g.island_count()) return std::nullopt;
        if (!isl.insert(a.island).second) return std::nullopt;
        for (int p : {a.entry, a.exit})
            if (p < 0 || p >= g.ports(a.island) || (g.port(a.island, p).kind == Port::kSegment && g.forbidden[g.port(a.island, p).id]))
                return std::nullopt;
        if (a.entry == a.exit) return std::nullopt;
        const Visit& b = visits[(i + 1) % k];
        const Port& out = g.port(a.island, a.exit);
        if (out.kind == Port::kBridge) {
            const auto& e = ends[out.id];
            auto there = e[0] == std::make_pair(a.island, a.exit) ? e[1] : e[0];
            if (there != std::make_pair(b.island, b.entry)) return std::nullopt;
            if (!br.insert(out.id).second) return std::nullopt;
        } else {
            const Port& in = g.port(b.island, b.entry);
            if (in.kind != Port::kSegment || in.id != out.id) return std::nullopt;
            if (b.island == a.island && b.entry == a.exit) return std::nullopt;
            if (!lk.insert(out.id).second) return std::nullopt;
        }
    }
    for (int b : br)
        for (int r : g.bridge_sides(b))
            if (lk.count(r)) return std::nullopt;
    d.visits = detail::canonical_visits(visits);
    d.bridges_used.assign(br.begin(), br.end());
    d.lakes_used.assign(lk.begin(), lk.end());
    return d;
}

// All elementary disc types up to rotation and reversal of the visit sequence, sorted.
inline std::vector<ElementaryDiscType> enumerate_disc_types(const BoundaryGraph& g) {
    g.validate();
    auto ends = g.bridge_ends();
    std::set<std::vector<Visit>> seen;
    std::vector<ElementaryDiscType> out;
    std::vector<Visit> path;
    std::vector<char> used_island(static_cast<std::size_t>(g.island_count()), 0);
    std::vector<char> used_bridge(static_cast<std::size_t>(g.bridges), 0);
    std::vector<char> used_region(static_cast<std::size_t>(g.region_count()), 0);
    int start_u = -1, start_p = -1;
    auto usable = [&](int u, int p) {
        const Port& q = g.port(u, p);
        return q.kind == Port::kBridge || !g.forbidden[q.id];
    };
    // extend with a visit entering island u at port entry
    auto rec = [&](auto&& self, int u, int entry) -> void {
        used_island[u] = 1;
        for (int x = 0; x < g.ports(u); ++x) {
            if (x == entry || !usable(u, x)) continue;
            path.push_back({u, entry, x});
            auto next = [&](int w, int r) {
                if (w == start_u && r == start_p) {
                    if (auto d = make_disc_type(g, path))
                        if (seen.insert(d->visits).second) out.push_back(*d);
                } else if (!used_island[w] && usable(w, r)) {
                    self(self, w, r);
                }
            };
            const Port& q = g.port(u, x);
            if (q.kind == Port::kBridge) {
                if (!used_bridge[q.id]) {
                    used_bridge[q.id] = 1;
                    const auto& e = ends[q.id];
                    auto [w, r] = e[0] == std::make_pair(u, x) ? e[1] : e[0];
                    next(w, r);
                    used_bridge[q.id] = 0;
                }
            } else if (!used_region[q.id]) {
                used_region[q.id] = 1;
                for (int w = 0; w < g.island_count(); ++w)
                    for (int r = 0; r < g.ports(w); ++r)
                        if (!(w == u && r == x) && g.port(w, r).kind == Port::kSegment && g.port(w, r).id == q.id) next(w, r);
                used_region[q.id] = 0;
            }
            path.pop_back();
        }
        used_island[u] = 0;
    };
    for (start_u = 0; start_u < g.island_count(); ++start_u)
        for (start_p = 0; start_p < g.ports(start_u); ++start_p)
            if (usable(start_u, start_p)) rec(rec, start_u, start_p);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Bounds on subtetrahedral boundary graphs.

struct BoundCheck {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct BoundsCheckReport {
    std::vector<BoundCheck> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string failures() const {
        std::string s;
        for (const auto& c : checks)
            if (!c.pass) s += (s.empty() ? "" : "; ") + c.name + " (" + c.witness + ")";
        return s;
    }
};

inline BoundsCheckReport check_bounds(const BoundaryGraph& g) {
    BoundsCheckReport r;
    auto add = [&](std::string name, bool ok, std::string witness) { r.checks.push_back({std::move(name), ok, std::move(witness)}); };
    bool conn = false;
    try {
        conn = g.connected();
    } catch (const InputError& e) {
        add("well formed", false, e.what());
        return r;
    }
    add("connected", conn, conn ? "" : "islands and bridges are disconnected");
    const int n = g.island_count();
    add("islands <= 4", n >= 1 && n <= 4, std::to_string(n) + " islands");
    for (int u = 0; u < n; ++u) {
        int v = g.valence(u);
        if (v > 3) add("island meets <= 3 bridges", false, "island " + std::to_string(u) + " meets " + std::to_string(v));
    }
    const int b = g.bridges, s = g.sutures();
    add("sutures <= 12-2b", s <= 12 - 2 * b, std::to_string(s) + " sutures, b = " + std::to_string(b));
    for (int u = 0; u < n; ++u) {
        int v = g.valence(u), e = g.suture_endpoints(u);
        if (e > 6 - 2 * v)
            add("island sutures <= 6-2v", false,
                "island " + std::to_string(u) + ": v = " + std::to_string(v) + ", " + std::to_string(e) + " sutures, <= 6-2v = " + std::to_string(6 - 2 * v));
    }
    add("bridges + lakes <= 13", b + g.lake_count() <= 13, std::to_string(b) + " + " + std::to_string(g.lake_count()));
    return r;
}

// ---------------------------------------------------------------------------
// Cutting a 0-handle along elementary discs.

struct HandlePieces {
    std::vector<BoundaryGraph> handles;  // pieces that are 0-handles
    int parallelity = 0;                 // pieces that are products
};

namespace detail {

// Cut along one curve: left piece, right piece. Ports keep their provenance.
inline std::array<BoundaryGraph, 2> cut_graph(const BoundaryGraph& g, const std::vector<Visit>& visits) {
    const int n = g.island_count();
    auto ends = g.bridge_ends();
    std::vector<int> base(static_cast<std::size_t>(n + 1), 0);
    for (int u = 0; u < n; ++u) base[u + 1] = base[u] + g.ports(u);
    std::vector<int> parent(static_cast<std::size_t>(base[n]));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    auto id = [&](int u, int p) { return base[u] + p; };
    std::vector<int> visit_of(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < visits.size(); ++i) visit_of[visits[i].island] = static_cast<int>(i);
    std::set<int> traversed, crossed;
    for (const auto& v : visits) {
        const Port& q = g.port(v.island, v.exit);
        (q.kind == Port::kBridge ? traversed : crossed).insert(q.id);
    }
    std::vector<int> seed(static_cast<std::size_t>(base[n]), -1);  // 0 left, 1 right, 2 on the curve
    for (int u = 0; u < n; ++u) {
        const int m = g.ports(u);
        if (visit_of[u] < 0) {
            for (int p = 1; p < m; ++p) unite(id(u, 0), id(u, p));
            continue;
        }
        const Visit& v = visits[static_cast<std::size_t>(visit_of[u])];
        seed[id(u, v.entry)] = seed[id(u, v.exit)] = 2;
        int prev = -1;
        for (int p = (v.exit + 1) % m; p != v.entry; p = (p + 1) % m) {
            seed[id(u, p)] = 0;
            if (prev >= 0) unite(prev, id(u, p));
            prev = id(u, p);
        }
        prev = -1;
        for (int p = (v.entry + 1) % m; p != v.exit; p = (p + 1) % m) {
            seed[id(u, p)] = 1;
            if (prev >= 0) unite(prev, id(u, p));
            prev = id(u, p);
        }
    }
    for (int b = 0; b < g.bridges; ++b)
        if (!traversed.count(b)) unite(id(ends[b][0].first, ends[b][0].second), id(ends[b][1].first, ends[b][1].second));
    std::vector<int> first_of_region(static_cast<std::size_t>(g.region_count()), -1);
    for (int u = 0; u < n; ++u)
        for (int p = 0; p < g.ports(u); ++p) {
            const Port& q = g.port(u, p);
            if (q.kind != Port::kSegment || crossed.count(q.id) || seed[id(u, p)] == 2) continue;
            int& f = first_of_region[q.id];
            if (f < 0) f = id(u, p);
            else unite(f, id(u, p));
        }
    std::map<int, int> side_of_root;
    for (int x = 0; x < base[n]; ++x) {
        if (seed[x] != 0 && seed[x] != 1) continue;
        auto [it, fresh] = side_of_root.emplace(find(x), seed[x]);
        if (!fresh && it->second != seed[x]) throw InputError("disc boundary does not separate the boundary graph");
    }
    auto side = [&](int u, int p) {
        if (seed[id(u, p)] == 2) return 2;
        auto it = side_of_root.find(find(id(u, p)));
        if (it == side_of_root.end()) throw std::logic_error("cut_handle: port on neither side");
        return it->second;
    };
    std::array<BoundaryGraph, 2> out;
    for (int s = 0; s < 2; ++s) {
        BoundaryGraph& h = out[s];
        std::map<int, int> region_map, crossed_map, bridge_map;
        auto region = [&](int r) {
            auto& mp = crossed.count(r) ? crossed_map : region_map;
            auto it = mp.find(r);
            if (it == mp.end()) {
                it = mp.emplace(r, h.region_count()).first;
                h.forbidden.push_back(g.forbidden[r]);
            }
            return it->second;
        };
        auto bridge = [&](int b) {
            auto it = bridge_map.find(b);
            if (it == bridge_map.end()) it = bridge_map.emplace(b, h.bridges++).first;
            return it->second;
        };
        auto copy_port = [&](int u, int p) {
            Port q = g.port(u, p);
            if (q.kind == Port::kBridge) q.id = bridge(q.id);
            else q.id = region(q.id);
            return q;
        };
        int fresh = -1;
        for (int u = 0; u < n; ++u) {
            const int m = g.ports(u);
            std::vector<Port> ports;
            std::vector<PortOrigin> org;
            if (visit_of[u] < 0) {
                if (side(u, 0) != s) continue;
                for (int p = 0; p < m; ++p) {
                    ports.push_back(copy_port(u, p));
                    org.push_back(g.origin[u][p]);
                }
            } else {
                const Visit& v = visits[static_cast<std::size_t>(visit_of[u])];
                int from = s == 0 ? v.exit : v.entry, to = s == 0 ? v.entry : v.exit;
                for (int p = from;; p = (p + 1) % m) {
                    ports.push_back(copy_port(u, p));
                    org.push_back(g.origin[u][p]);
                    if (p == to) break;
                }
                if (fresh < 0) {
                    fresh = h.region_count();
                    h.forbidden.push_back(1);
                }
                ports.push_back({Port::kSegment, fresh});
                org.push_back({});
            }
            h.islands.push_back(ports);
            h.origin.push_back(org);
        }
    }
    return out;
}

inline bool is_parallelity(const BoundaryGraph& h) { return h.lake_count() == 0 && h.forbidden_count() == 2; }

// An island strip left between two discs running parallel from lake to lake: no bridges, and
// exactly two forbidden segments, from different regions, alternating with lake segments.
inline bool is_strip(const BoundaryGraph& h, int u) {
    if (h.valence(u) != 0 || h.ports(u) != 4) return false;
    const auto& p = h.islands[u];
    for (int o = 0; o < 2; ++o)
        if (h.forbidden[p[o].id] && h.forbidden[p[o + 2].id] && p[o].id != p[o + 2].id && !h.forbidden[p[o + 1].id] &&
            !h.forbidden[p[(o + 3) % 4].id])
            return true;
    return false;
}

// Removes strip islands that are not joined to anything by bridges; returns how many.
inline int split_strips(BoundaryGraph& h) {
    auto comps = h.island_components();
    std::vector<int> size(h.islands.size(), 0);
    for (int c : comps) ++size[c];
    std::vector<char> drop(h.islands.size(), 0);
    int dropped = 0;
    for (int u = 0; u < h.island_count(); ++u)
        if (size[comps[u]] == 1 && h.island_count() - dropped > 1 && is_strip(h, u)) {
            drop[u] = 1;
            ++dropped;
        }
    if (!dropped) return 0;
    BoundaryGraph out;
    out.bridges = h.bridges;
    std::map<int, int> region;
    for (int u = 0; u < h.island_count(); ++u) {
        if (drop[u]) continue;
        std::vector<Port> ports = h.islands[u];
        for (auto& q : ports)
            if (q.kind == Port::kSegment) {
                auto it = region.emplace(q.id, out.region_count()).first;
                if (it->second == out.region_count()) out.forbidden.push_back(h.forbidden[q.id]);
                q.id = it->second;
            }
        out.islands.push_back(ports);
        out.origin.push_back(h.origin[u]);
    }
    h = std::move(out);
    return dropped;
}

// Maps a curve given by original ports into a piece, if every visit lands there.
inline std::optional<std::vector<Visit>> map_curve(const BoundaryGraph& h, const std::vector<Visit>& visits) {
    std::map<PortOrigin, std::pair<int, int>> where;
    for (int u = 0; u < h.island_count(); ++u)
        for (int p = 0; p < h.ports(u); ++p)
            if (h.origin[u][p].island >= 0) where[h.origin[u][p]] = {u, p};
    std::vector<Visit> out;
    for (const auto& v : visits) {
        auto a = where.find({v.island, v.entry});
        auto b = where.find({v.island, v.exit});
        if (a == where.end() || b == where.end() || a->second.first != b->second.first) return std::nullopt;
        out.push_back({a->second.first, a->second.second, b->second.second});
    }
    if (!make_disc_type(h, out)) return std::nullopt;
    return out;
}

}  // namespace detail

// Pieces of a 0-handle cut along disjoint elementary discs, given with multiplicities. Parallel
// copies of one type bound product pieces between them.
inline HandlePieces cut_handle(const BoundaryGraph& g0, const std::vector<std::pair<ElementaryDiscType, int>>& discs) {
    g0.validate();
    BoundaryGraph g = g0;
    g.reset_origin();
    std::vector<BoundaryGraph> pieces{g};
    HandlePieces out;
    for (const auto& [d, mult] : discs) {
        if (mult < 0) throw InputError("negative multiplicity");
        if (mult == 0) continue;
        if (!make_disc_type(g, d.visits)) throw InputError("not an elementary disc type: " + d.str());
        int target = -1;
        std::vector<Visit> mapped;
        for (std::size_t i = 0; i < pieces.size() && target < 0; ++i)
            if (auto m = detail::map_curve(pieces[i], d.visits)) {
                target = static_cast<int>(i);
                mapped = *m;
            }
        if (target < 0) throw InputError("crossing disc boundaries: " + d.str());
        auto halves = detail::cut_graph(pieces[static_cast<std::size_t>(target)], mapped);
        pieces.erase(pieces.begin() + target);
        pieces.push_back(halves[0]);
        pieces.push_back(halves[1]);
        out.parallelity += mult - 1;
    }
    for (auto& h : pieces) {
        h.validate(false);
        out.parallelity += detail::split_strips(h);
        h.validate(false);
        if (detail::is_parallelity(h)) ++out.parallelity;
        else out.handles.push_back(std::move(h));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weights of handle-level surfaces.

struct HandleWeight {
    std::int64_t plate = 0;     // intersections with parallelity bridges
    std::int64_t beam = 0;      // bridge traversals
    std::int64_t boundary = 0;  // lake crossings
    std::int64_t size = 0;      // elementary discs
    auto key() const { return std::make_tuple(plate, beam, boundary); }
    friend bool operator<(const HandleWeight& a, const HandleWeight& b) { return a.key() < b.key(); }
    friend bool operator==(const HandleWeight& a, const HandleWeight& b) { return a.key() == b.key(); }
};

inline HandleWeight handle_weight(const std::vector<std::pair<ElementaryDiscType, int>>& discs) {
    HandleWeight w;
    for (const auto& [d, m] : discs) {
        w.beam += m * static_cast<std::int64_t>(d.bridges_used.size());
        w.boundary += m * static_cast<std::int64_t>(d.lakes_used.size());
        w.size += m;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Constants, by exact integer arithmetic. log10(2) is bracketed by rationals.

struct ConstantVerdict {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct BoundsReport {
    BigInt factorial13;
    BigInt d_h_bound;            // 13 * 13!
    BigInt log2_cF, log2_cB, log2_cA, log2_cS, log2_cT;
    std::vector<ConstantVerdict> verdicts;
    bool all_hold() const {
        for (const auto& v : verdicts)
            if (!v.holds) return false;
        return true;
    }
    std::string str() const {
        std::ostringstream os;
        os << "13! = " << to_string(factorial13) << '\n';
        os << "d_H bound 13*13! = " << to_string(d_h_bound) << '\n';
        os << "log2 c_F = " << to_string(log2_cF) << '\n';
        os << "log2 c_B = " << to_string(log2_cB) << '\n';
        os << "log2 c_A = " << to_string(log2_cA) << '\n';
        os << "log2 c_S <= " << to_string(log2_cS) << '\n';
        os << "log2 c_T = " << to_string(log2_cT) << '\n';
        for (const auto& v : verdicts) os << v.name << ": " << (v.holds ? "true" : "false") << "  [" << v.detail << "]\n";
        return os.str();
    }
};

// log10(2) lies strictly between these rationals.
inline constexpr std::int64_t kLog10Of2LoNum = 30102999, kLog10Of2LoDen = 100000000;
inline constexpr std::int64_t kLog10Of2HiNum = 30103, kLog10Of2HiDen = 100000;

// Decides 2^e < 10^(10^k) from e * log10(2) < 10^k using the rational bracket; nullopt if undecided.
inline std::optional<bool> pow2_below_pow10_pow10(const BigInt& e, int k) {
    BigInt tenk = 1;
    for (int i = 0; i < k; ++i) tenk *= 10;
    if (e * kLog10Of2HiNum < tenk * kLog10Of2HiDen) return true;
    if (e * kLog10Of2LoNum >= tenk * kLog10Of2LoDen) return false;
    return std::nullopt;
}

// log10 of 2^e as a rational interval [lo, hi], formatted.
inline std::string log10_interval(const BigInt& e) {
    return "log10 in [" + to_string(e * kLog10Of2LoNum) + "/" + std::to_string(kLog10Of2LoDen) + ", " +
           to_string(e * kLog10Of2HiNum) + "/" + std::to_string(kLog10Of2HiDen) + "]";
}

inline BoundsReport evaluate_constants(std::int64_t observed_d_h = 59) {
    BoundsReport r;
    BigInt f = 1;
    for (int i = 2; i <= 13; ++i) f *= i;
    r.factorial13 = f;
    r.d_h_bound = 13 * f;
    r.log2_cF = 74 + 74 * 13 * f;
    r.log2_cB = 182 * f;
    r.log2_cA = 182 * f * 8192 * (75 + 74 * 13 * f);
    r.log2_cS = 182 * f * 8192 * (74 + 74 * 13 * f);
    r.log2_cT = BigInt(2) * 331776 * r.log2_cA;  // 24^4 = 331776
    auto add = [&](std::string name, bool holds, std::string detail) { r.verdicts.push_back({std::move(name), holds, std::move(detail)}); };
    add("13! = 6227020800", f == BigInt(6227020800LL), to_string(f));
    add("d_H <= 13*13! = 80951270400", r.d_h_bound == BigInt(80951270400LL) && BigInt(observed_d_h) <= r.d_h_bound,
        "observed d_H for K4 = " + std::to_string(observed_d_h));
    BigInt two37 = BigInt(1) << 37;
    add("13*13! < 2^37", r.d_h_bound < two37, to_string(r.d_h_bound) + " < " + to_string(two37));
    // c_F: 2(d_H+1) * 37 bounds 2(d_H+1) log2(d_H) and equals 74 + 74 d_H at d_H = 13*13!
    add("log2 c_F = 74+74*13*13!", 2 * (r.d_h_bound + 1) * 37 == r.log2_cF, to_string(r.log2_cF));
    // c_B^(2^13 log2 c_F) = 2^(182*13! * 2^13 * (74+74*13*13!))
    BigInt e_stack = r.log2_cB * 8192 * r.log2_cF;
    auto v1 = pow2_below_pow10_pow10(e_stack, 30);
    add("c_B^{2^13 log2 c_F} < 10^{10^30}", v1.value_or(false), log10_interval(e_stack));
    add("c_S = 10^{10^30} bounds the stacked size", v1.value_or(false) && e_stack == r.log2_cS, "exponent " + to_string(r.log2_cS));
    auto v2 = pow2_below_pow10_pow10(r.log2_cA, 30);
    add("c_A < 10^{10^30}", v2.value_or(false), log10_interval(r.log2_cA));
    auto v3 = pow2_below_pow10_pow10(r.log2_cT, 36);
    add("c_T = c_A^{2*24^4} < 10^{10^36}", v3.value_or(false), log10_interval(r.log2_cT));
    return r;
}

}  // namespace sfscert
