#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "perm.hpp"

namespace sfscert {

struct FaceGluing {
    int tet = -1;
    int face = -1;
    Perm4 perm;
    friend bool operator==(const FaceGluing&, const FaceGluing&) = default;
};

// Tetrahedra with face gluings. Face f of a tetrahedron is the face opposite vertex f.
// A gluing (t,f) -> (t',f',p) identifies vertex i of t with vertex p[i] of t'.
class Triangulation {
public:
    Triangulation() = default;
    explicit Triangulation(int n) : adj_(static_cast<std::size_t>(n)) {
        if (n < 0) throw InputError("negative tetrahedron count");
    }

    int size() const { return static_cast<int>(adj_.size()); }

    int add_tetrahedron() {
        adj_.emplace_back();
        return size() - 1;
    }

    void join(int t, int f, int t2, int f2, Perm4 p) {
        check_face(t, f);
        check_face(t2, f2);
        if (t == t2 && f == f2) throw InputError("self-gluing: face " + std::to_string(f) + " of tet " + std::to_string(t));
        if (p[f] != f2) throw InputError("gluing permutation must map " + std::to_string(f) + " to " + std::to_string(f2));
        auto& a = adj_[t][f];
        auto& b = adj_[t2][f2];
        FaceGluing want{t2, f2, p}, back{t, f, p.inverse()};
        if (a || b) {
            if (a && b && *a == want && *b == back) return;  // repeated declaration
            throw InputError("involution violation at tet " + std::to_string(t) + " face " + std::to_string(f));
        }
        a = want;
        b = back;
    }

    const std::optional<FaceGluing>& adjacent(int t, int f) const {
        check_face(t, f);
        return adj_[t][f];
    }

    bool is_boundary(int t, int f) const { return !adjacent(t, f).has_value(); }

    int boundary_face_count() const {
        int c = 0;
        for (const auto& a : adj_)
            for (const auto& g : a)
                if (!g) ++c;
        return c;
    }

    // Verifies the involution and permutation invariants.
    void validate() const {
        for (int t = 0; t < size(); ++t)
            for (int f = 0; f < 4; ++f) {
                const auto& g = adj_[t][f];
                if (!g) continue;
                if (g->tet < 0 || g->tet >= size()) throw InputError("out-of-range index");
                if (g->tet == t && g->face == f) throw InputError("self-gluing");
                if (g->perm[f] != g->face) throw InputError("gluing permutation does not match faces");
                const auto& h = adj_[g->tet][g->face];
                if (!h || h->tet != t || h->face != f || h->perm != g->perm.inverse())
                    throw InputError("involution violation at tet " + std::to_string(t) + " face " + std::to_string(f));
            }
    }

    friend bool operator==(const Triangulation&, const Triangulation&) = default;

private:
    void check_face(int t, int f) const {
        if (t < 0 || t >= size() || f < 0 || f > 3)
            throw InputError("out-of-range index: tet " + std::to_string(t) + " face " + std::to_string(f));
    }

    std::vector<std::array<std::optional<FaceGluing>, 4>> adj_;
};

using OrientationLabels = std::vector<int>;

// ---------------------------------------------------------------------------
// Skeleton: vertex, edge and face classes after identification.

struct Skeleton {
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;
    std::vector<std::array<int, 4>> vertex_of;  // (tet, local vertex) -> class
    std::vector<std::array<int, 6>> edge_of;    // (tet, local edge) -> class
    std::vector<std::array<int, 6>> edge_sign;  // +1 if local low->high agrees with the class direction
    std::vector<std::array<int, 4>> face_of;    // (tet, face) -> class
    std::vector<std::pair<int, int>> edge_rep;  // class -> (tet, local edge) with sign +1
    std::vector<std::pair<int, int>> face_rep;  // class -> (tet, face), lowest first
    std::vector<bool> vertex_boundary;
    std::vector<bool> edge_boundary;
    std::vector<int> edge_degree;  // number of (tet, local edge) incidences
    std::vector<int> component_of; // tet -> connected component
    int component_count = 0;
};

namespace detail {

struct ParityUnionFind {
    std::vector<int> parent, parity;
    explicit ParityUnionFind(int n) : parent(static_cast<std::size_t>(n)), parity(static_cast<std::size_t>(n), 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<int, int> find(int x) {
        int p = 0;
        int r = x;
        while (parent[r] != r) {
            p ^= parity[r];
            r = parent[r];
        }
        // path compression with parity
        int cur = x, cp = p;
        while (parent[cur] != cur) {
            int next = parent[cur];
            int np = cp ^ parity[cur];
            parent[cur] = r;
            parity[cur] = cp;
            cur = next;
            cp = np;
        }
        return {r, p};
    }
    // Returns false on parity conflict.
    bool unite(int a, int b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        if (ra < rb) {
            parent[rb] = ra;
            parity[rb] = pa ^ pb ^ rel;
        } else {
            parent[ra] = rb;
            parity[ra] = pa ^ pb ^ rel;
        }
        return true;
    }
};

}  // namespace detail

inline Skeleton skeleton(const Triangulation& tri) {
    const int n = tri.size();
    Skeleton sk;
    detail::ParityUnionFind vuf(4 * n), euf(6 * n), tuf(n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.adjacent(t, f);
            if (!g) continue;
            tuf.unite(t, g->tet, 0);
            for (int v = 0; v < 4; ++v)
                if (v != f) vuf.unite(4 * t + v, 4 * g->tet + g->perm[v], 0);
            for (int e = 0; e < 6; ++e) {
                int a = kEdgeVerts[e][0], b = kEdgeVerts[e][1];
                if (a == f || b == f) continue;
                int a2 = g->perm[a], b2 = g->perm[b];
                int rel = a2 > b2 ? 1 : 0;
                if (!euf.unite(6 * t + e, 6 * g->tet + edge_index(a2, b2), rel))
                    throw InputError("edge identified with itself in reverse (tet " + std::to_string(t) + ")");
            }
        }

    auto number = [](auto& uf, int count, int& total) {
        std::vector<int> id(static_cast<std::size_t>(count), -1), out(static_cast<std::size_t>(count));
        total = 0;
        for (int i = 0; i < count; ++i) {
            int r = uf.find(i).first;
            if (id[r] < 0) id[r] = total++;
            out[i] = id[r];
        }
        return out;
    };
    auto vid = number(vuf, 4 * n, sk.vertex_count);
    auto eid = number(euf, 6 * n, sk.edge_count);
    auto tid = number(tuf, n, sk.component_count);
    sk.component_of = tid;

    sk.vertex_of.resize(n);
    sk.edge_of.resize(n);
    sk.edge_sign.resize(n);
    sk.face_of.resize(n);
    sk.edge_rep.assign(sk.edge_count, {-1, -1});
    sk.edge_degree.assign(sk.edge_count, 0);
    // class direction is fixed by the first (lowest) incidence
    std::vector<int> root_parity(static_cast<std::size_t>(sk.edge_count), -1);
    for (int t = 0; t < n; ++t) {
        for (int v = 0; v < 4; ++v) sk.vertex_of[t][v] = vid[4 * t + v];
        for (int e = 0; e < 6; ++e) {
            int c = eid[6 * t + e];
            int p = euf.find(6 * t + e).second;
            if (root_parity[c] < 0) {
                root_parity[c] = p;
                sk.edge_rep[c] = {t, e};
            }
            sk.edge_of[t][e] = c;
            sk.edge_sign[t][e] = (p == root_parity[c]) ? 1 : -1;
            ++sk.edge_degree[c];
        }
    }
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) sk.face_of[t][f] = -1;
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (sk.face_of[t][f] >= 0) continue;
            int c = sk.face_count++;
            sk.face_of[t][f] = c;
            sk.face_rep.push_back({t, f});
            if (const auto& g = tri.adjacent(t, f)) sk.face_of[g->tet][g->face] = c;
        }
    sk.vertex_boundary.assign(sk.vertex_count, false);
    sk.edge_boundary.assign(sk.edge_count, false);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (!tri.is_boundary(t, f)) continue;
            for (int v = 0; v < 4; ++v)
                if (v != f) sk.vertex_boundary[sk.vertex_of[t][v]] = true;
            for (int e = 0; e < 6; ++e)
                if (kEdgeVerts[e][0] != f && kEdgeVerts[e][1] != f) sk.edge_boundary[sk.edge_of[t][e]] = true;
        }
    return sk;
}

// ---------------------------------------------------------------------------
// Orientation.

// Sign of the bijection (sorted vertices of face f) -> (sorted vertices of face p[f]) induced by p.
inline int restricted_face_sign(int f, const Perm4& p) {
    auto src = face_vertices(f);
    auto dst = face_vertices(p[f]);
    int pos[3];
    for (int i = 0; i < 3; ++i) {
        int img = p[src[i]];
        for (int j = 0; j < 3; ++j)
            if (dst[j] == img) pos[i] = j;
    }
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (pos[i] > pos[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

// Orientation of face f (sorted vertex order) induced from a tetrahedron with sign s,
// using the convention d[0123] = sum (-1)^i face_i.
inline int induced_face_sign(int s, int f) { return (f % 2) ? -s : s; }

inline bool gluing_orientation_ok(int s, int f, int s2, const FaceGluing& g) {
    int mine = induced_face_sign(s, f) * restricted_face_sign(f, g.perm);
    int theirs = induced_face_sign(s2, g.face);
    return mine == -theirs;
}

inline bool check_orientation(const Triangulation& tri, const OrientationLabels& labels) {
    if (static_cast<int>(labels.size()) != tri.size())
        throw InputError("label count mismatch: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(tri.size()) + " tetrahedra");
    for (int s : labels)
        if (s != 1 && s != -1) throw InputError("orientation labels must be +1 or -1");
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.adjacent(t, f);
            if (g && !gluing_orientation_ok(labels[t], f, labels[g->tet], *g)) return false;
        }
    return true;
}

// Breadth-first propagation; lowest tet of each component gets +1.
inline std::optional<OrientationLabels> find_orientation(const Triangulation& tri) {
    OrientationLabels lab(static_cast<std::size_t>(tri.size()), 0);
    for (int start = 0; start < tri.size(); ++start) {
        if (lab[start]) continue;
        lab[start] = 1;
        std::vector<int> queue{start};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int t = queue[qi];
            for (int f = 0; f < 4; ++f) {
                const auto& g = tri.adjacent(t, f);
                if (!g) continue;
                int want = gluing_orientation_ok(lab[t], f, 1, *g) ? 1 : -1;
                if (!lab[g->tet]) {
                    lab[g->tet] = want;
                    queue.push_back(g->tet);
                } else if (lab[g->tet] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return lab;
}

// ---------------------------------------------------------------------------
// Text format.

struct TriangulationFile {
    Triangulation tri;
    std::optional<OrientationLabels> labels;
};

namespace detail {

struct LineScanner {
    const std::string& line;
    int lineno;
    std::size_t pos = 0;
    LineScanner(const std::string& l, int n) : line(l), lineno(n) {}

    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= line.size();
    }
    int column() const { return static_cast<int>(pos) + 1; }
    std::string word() {
        skip_ws();
        std::size_t s = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
        if (s == pos) throw ParseError(lineno, static_cast<int>(s) + 1, "unexpected end of line");
        return line.substr(s, pos - s);
    }
    long long integer(bool allow_sign = false) {
        skip_ws();
        int col = column();
        std::string w = word();
        std::size_t i = 0;
        if (allow_sign && (w[0] == '+' || w[0] == '-')) i = 1;
        if (i >= w.size()) throw ParseError(lineno, col, "expected integer, got '" + w + "'");
        for (std::size_t k = i; k < w.size(); ++k)
            if (w[k] < '0' || w[k] > '9') throw ParseError(lineno, col, "expected integer, got '" + w + "'");
        if (w.size() > 18) throw ParseError(lineno, col, "integer too large");
        return std::stoll(w);
    }
};

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur)) {
        auto hash = cur.find('#');
        if (hash != std::string::npos) cur.resize(hash);
        lines.push_back(cur);
    }
    return lines;
}

}  // namespace detail

inline TriangulationFile parse_triangulation_file(const std::string& text) {
    auto lines = detail::split_lines(text);
    TriangulationFile out;
    bool have_header = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        int lineno = static_cast<int>(i) + 1;
        detail::LineScanner sc(lines[i], lineno);
        if (sc.at_end()) continue;
        int col = sc.column();
        std::string kw = sc.word();
        if (kw == "tets") {
            if (have_header) throw ParseError(lineno, col, "duplicate 'tets' header");
            long long n = sc.integer();
            if (n > 10000000) throw ParseError(lineno, col, "tetrahedron count too large");
            out.tri = Triangulation(static_cast<int>(n));
            have_header = true;
        } else if (kw == "glue") {
            if (!have_header) throw ParseError(lineno, col, "'glue' before 'tets' header");
            long long v[4];
            for (auto& x : v) x = sc.integer();
            int pcol = (sc.skip_ws(), sc.column());
            std::string ps = sc.word();
            Perm4 p;
            try {
                p = Perm4::from_string(ps);
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, pcol, std::string("bad permutation '") + ps + "'");
            }
            for (int k : {0, 2})
                if (v[k] >= out.tri.size()) throw ParseError(lineno, col, "out-of-range index: tet " + std::to_string(v[k]));
            for (int k : {1, 3})
                if (v[k] > 3) throw ParseError(lineno, col, "out-of-range index: face " + std::to_string(v[k]));
            try {
                out.tri.join(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                             static_cast<int>(v[3]), p);
            } catch (const InputError& e) {
                throw ParseError(lineno, col, e.what());
            }
        } else if (kw == "orient") {
            if (!have_header) throw ParseError(lineno, col, "'orient' before 'tets' header");
            OrientationLabels lab;
            while (!sc.at_end()) {
                int c = sc.column();
                long long s = sc.integer(true);
                if (s != 1 && s != -1) throw ParseError(lineno, c, "orientation label must be +1 or -1");
                lab.push_back(static_cast<int>(s));
            }
            if (static_cast<int>(lab.size()) != out.tri.size())
                throw ParseError(lineno, col, "label count mismatch");
            out.labels = lab;
        } else {
            throw ParseError(lineno, col, "unknown keyword '" + kw + "'");
        }
        if (!sc.at_end()) throw ParseError(lineno, sc.column(), "trailing input");
    }
    if (!have_header) throw ParseError(static_cast<int>(lines.size()) + 1, 1, "missing 'tets' header");
    return out;
}

inline Triangulation parse_triangulation(const std::string& text) { return parse_triangulation_file(text).tri; }

inline std::string to_text(const Triangulation& tri, const std::optional<OrientationLabels>& labels = std::nullopt) {
    std::ostringstream out;
    out << "tets " << tri.size() << "\n";
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.adjacent(t, f);
            if (!g) continue;
            if (std::make_pair(t, f) > std::make_pair(g->tet, g->face)) continue;
            out << "glue " << t << " " << f << " " << g->tet << " " << g->face << " " << g->perm.str() << "\n";
        }
    if (labels) {
        out << "orient";
        for (int s : *labels) out << " " << s;
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Barycentric subdivision. Sub-tetrahedron (t, sigma) has vertices
// 0 = original vertex sigma[0], 1 = midpoint of edge {sigma0,sigma1},
// 2 = centre of face {sigma0,sigma1,sigma2}, 3 = centre of t.

inline Triangulation barycentric_subdivide(const Triangulation& tri) {
    const int n = tri.size();
    Triangulation out(24 * n);
    auto id = [](int t, const Perm4& s) { return 24 * t + s.index(); };
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 24; ++k) {
            Perm4 s = Perm4::nth(k);
            int me = id(t, s);
            for (int i = 0; i < 3; ++i) {
                int other = id(t, s * Perm4::swap(i, i + 1));
                if (other > me) out.join(me, i, other, i, Perm4());
            }
            if (const auto& g = tri.adjacent(t, s[3])) {
                Perm4 s2 = g->perm * s;
                int other = id(g->tet, s2);
                if (std::make_pair(other, 3) > std::make_pair(me, 3)) out.join(me, 3, other, 3, Perm4());
            }
        }
    return out;
}

inline OrientationLabels subdivide_labels(const Triangulation& tri, const OrientationLabels& labels) {
    if (static_cast<int>(labels.size()) != tri.size()) throw InputError("label count mismatch");
    OrientationLabels out(static_cast<std::size_t>(24 * tri.size()));
    for (int t = 0; t < tri.size(); ++t)
        for (int k = 0; k < 24; ++k) out[24 * t + k] = labels[t] * Perm4::nth(k).sign();
    return out;
}

// ---------------------------------------------------------------------------
// Isomorphism.

struct Isomorphism {
    std::vector<int> tet;      // a-tet -> b-tet
    std::vector<Perm4> perm;   // a-vertex -> b-vertex, per a-tet
};

namespace detail {

// Extends a partial map from the seed a_start -> (b_start, p) over the component of a_start.
inline bool grow_iso(const Triangulation& a, const Triangulation& b, int a_start, int b_start, Perm4 p,
                     Isomorphism& iso, std::vector<char>& b_used, std::vector<int>& touched) {
    iso.tet[a_start] = b_start;
    iso.perm[a_start] = p;
    b_used[b_start] = 1;
    touched.push_back(a_start);
    for (std::size_t qi = touched.size() - 1; qi < touched.size(); ++qi) {
        int u = touched[qi];
        int ub = iso.tet[u];
        Perm4 pu = iso.perm[u];
        for (int f = 0; f < 4; ++f) {
            const auto& ga = a.adjacent(u, f);
            const auto& gb = b.adjacent(ub, pu[f]);
            if (ga.has_value() != gb.has_value()) return false;
            if (!ga) continue;
            Perm4 pv = gb->perm * pu * ga->perm.inverse();
            int v = ga->tet;
            if (iso.tet[v] >= 0) {
                if (iso.tet[v] != gb->tet || iso.perm[v] != pv) return false;
            } else {
                if (b_used[gb->tet]) return false;
                iso.tet[v] = gb->tet;
                iso.perm[v] = pv;
                b_used[gb->tet] = 1;
                touched.push_back(v);
            }
        }
    }
    return true;
}

inline bool iso_search(const Triangulation& a, const Triangulation& b, Isomorphism& iso, std::vector<char>& b_used) {
    int a_start = -1;
    for (int t = 0; t < a.size(); ++t)
        if (iso.tet[t] < 0) {
            a_start = t;
            break;
        }
    if (a_start < 0) return true;
    for (int bt = 0; bt < b.size(); ++bt) {
        if (b_used[bt]) continue;
        for (int k = 0; k < 24; ++k) {
            std::vector<int> touched;
            if (grow_iso(a, b, a_start, bt, Perm4::nth(k), iso, b_used, touched) && iso_search(a, b, iso, b_used))
                return true;
            for (int u : touched) {
                b_used[iso.tet[u]] = 0;
                iso.tet[u] = -1;
            }
        }
    }
    return false;
}

}  // namespace detail

inline std::optional<Isomorphism> is_isomorphic(const Triangulation& a, const Triangulation& b) {
    if (a.size() != b.size()) return std::nullopt;
    if (a.boundary_face_count() != b.boundary_face_count()) return std::nullopt;
    Isomorphism iso;
    iso.tet.assign(static_cast<std::size_t>(a.size()), -1);
    iso.perm.assign(static_cast<std::size_t>(a.size()), Perm4());
    std::vector<char> used(static_cast<std::size_t>(b.size()), 0);
    if (!detail::iso_search(a, b, iso, used)) return std::nullopt;
    return iso;
}

// Applies an isomorphism: the result is b when iso came from is_isomorphic(a, b).
inline Triangulation apply_isomorphism(const Triangulation& a, const Isomorphism& iso) {
    Triangulation out(a.size());
    for (int t = 0; t < a.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = a.adjacent(t, f);
            if (!g) continue;
            int nt = iso.tet[t], nf = iso.perm[t][f];
            int nt2 = iso.tet[g->tet], nf2 = iso.perm[g->tet][g->face];
            if (std::make_pair(nt, nf) > std::make_pair(nt2, nf2)) continue;
            out.join(nt, nf, nt2, nf2, iso.perm[g->tet] * g->perm * iso.perm[t].inverse());
        }
    return out;
}

}  // namespace sfscert
