#pragma once

#include <array>
#include <vector>

#include "triangulation.hpp"

namespace sfscert {

// Closed oriented 2-triangulation. Corners of each triangle are numbered 0,1,2
// counterclockwise; edge k is opposite corner k and runs from corner k+1 to corner k+2.
// Gluings reverse orientation: corner k+1 of one side meets corner k'+2 of the other.
struct EdgeRef {
    int tri = -1;
    int edge = -1;
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

class BoundarySurface {
public:
    struct Triangle {
        std::array<EdgeRef, 3> adj;
        int tet = -1;                    // back-reference into the parent triangulation
        int face = -1;
        std::array<int, 3> verts{-1, -1, -1};  // tet vertex at each corner
    };

    BoundarySurface() = default;

    // Standalone surface from edge gluings.
    static BoundarySurface from_gluings(const std::vector<std::array<EdgeRef, 3>>& adj) {
        BoundarySurface s;
        s.tris_.resize(adj.size());
        for (std::size_t i = 0; i < adj.size(); ++i) s.tris_[i].adj = adj[i];
        s.finish();
        return s;
    }

    int size() const { return static_cast<int>(tris_.size()); }
    const Triangle& triangle(int i) const { return tris_.at(static_cast<std::size_t>(i)); }
    const EdgeRef& across(int tri, int edge) const { return tris_.at(static_cast<std::size_t>(tri)).adj.at(static_cast<std::size_t>(edge)); }

    // Corner of the neighbouring triangle that meets corner c of (tri, edge), c in {edge+1, edge+2}.
    int matching_corner(int tri, int edge, int c) const {
        const EdgeRef& o = across(tri, edge);
        return (c == (edge + 1) % 3) ? (o.edge + 2) % 3 : (o.edge + 1) % 3;
    }

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return 3 * size() / 2; }
    int vertex_of(int tri, int corner) const { return vertex_of_[3 * tri + corner]; }
    int component_count() const { return component_count_; }
    int component_of(int tri) const { return component_of_[tri]; }

    int euler_characteristic() const { return vertex_count_ - edge_count() + size(); }
    int component_euler(int comp) const {
        int v = 0, e3 = 0, f = 0;
        std::vector<char> seen(static_cast<std::size_t>(vertex_count_), 0);
        for (int t = 0; t < size(); ++t) {
            if (component_of_[t] != comp) continue;
            ++f;
            e3 += 3;
            for (int c = 0; c < 3; ++c)
                if (!seen[vertex_of(t, c)]) {
                    seen[vertex_of(t, c)] = 1;
                    ++v;
                }
        }
        return v - e3 / 2 + f;
    }

    // Triangle index of an unglued face of the parent, or -1.
    int triangle_of_face(int tet, int face) const {
        for (int i = 0; i < size(); ++i)
            if (tris_[i].tet == tet && tris_[i].face == face) return i;
        return -1;
    }

    friend BoundarySurface boundary_surface(const Triangulation&, const OrientationLabels&);

private:
    void finish() {
        const int n = size();
        for (int t = 0; t < n; ++t)
            for (int e = 0; e < 3; ++e) {
                const EdgeRef& o = tris_[t].adj[e];
                if (o.tri < 0 || o.tri >= n || o.edge < 0 || o.edge > 2)
                    throw InputError("surface edge gluing out of range");
                if (o.tri == t && o.edge == e) throw InputError("surface edge glued to itself");
                const EdgeRef& back = tris_[o.tri].adj[o.edge];
                if (back.tri != t || back.edge != e) throw InputError("surface edge gluing is not an involution");
            }
        detail::ParityUnionFind vuf(3 * n), cuf(n);
        for (int t = 0; t < n; ++t)
            for (int e = 0; e < 3; ++e) {
                const EdgeRef& o = tris_[t].adj[e];
                cuf.unite(t, o.tri, 0);
                for (int c : {(e + 1) % 3, (e + 2) % 3}) vuf.unite(3 * t + c, 3 * o.tri + matching_corner(t, e, c), 0);
            }
        vertex_of_.assign(static_cast<std::size_t>(3 * n), -1);
        std::vector<int> vid(static_cast<std::size_t>(3 * n), -1);
        vertex_count_ = 0;
        for (int i = 0; i < 3 * n; ++i) {
            int r = vuf.find(i).first;
            if (vid[r] < 0) vid[r] = vertex_count_++;
            vertex_of_[i] = vid[r];
        }
        component_of_.assign(static_cast<std::size_t>(n), -1);
        std::vector<int> cid(static_cast<std::size_t>(n), -1);
        component_count_ = 0;
        for (int t = 0; t < n; ++t) {
            int r = cuf.find(t).first;
            if (cid[r] < 0) cid[r] = component_count_++;
            component_of_[t] = cid[r];
        }
    }

    std::vector<Triangle> tris_;
    std::vector<int> vertex_of_;
    std::vector<int> component_of_;
    int vertex_count_ = 0;
    int component_count_ = 0;
};

// The boundary of an oriented triangulation, oriented by the induced (outward normal first) orientation.
inline BoundarySurface boundary_surface(const Triangulation& tri, const OrientationLabels& labels) {
    if (!check_orientation(tri, labels)) throw InputError("orientation labels are not compatible");
    if (tri.boundary_face_count() == 0) throw InputError("no boundary");
    BoundarySurface s;
    std::vector<std::array<int, 4>> index(static_cast<std::size_t>(tri.size()), {-1, -1, -1, -1});
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (!tri.is_boundary(t, f)) continue;
            BoundarySurface::Triangle T;
            T.tet = t;
            T.face = f;
            auto fv = face_vertices(f);
            if (induced_face_sign(labels[t], f) < 0) std::swap(fv[0], fv[1]);
            T.verts = fv;
            index[t][f] = s.size();
            s.tris_.push_back(T);
        }
    for (int i = 0; i < s.size(); ++i) {
        auto& T = s.tris_[i];
        for (int e = 0; e < 3; ++e) {
            int u = T.verts[(e + 1) % 3], w = T.verts[(e + 2) % 3];
            int t = T.tet;
            int through = T.verts[e];  // the face opposite this vertex also contains edge uw
            // walk around edge uw through the interior until the next boundary face
            int guard = 0;
            while (true) {
                if (++guard > 4 * tri.size() + 8) throw InputError("boundary walk does not close");
                const auto& g = tri.adjacent(t, through);
                if (!g) break;
                int came = g->face;
                u = g->perm[u];
                w = g->perm[w];
                t = g->tet;
                through = 6 - u - w - came;
            }
            int j = index[t][through];
            const auto& N = s.tris_[j];
            int k = -1;
            for (int c = 0; c < 3; ++c)
                if (N.verts[c] != u && N.verts[c] != w) k = c;
            if (N.verts[(k + 2) % 3] != u) throw InputError("boundary orientation is inconsistent");
            T.adj[e] = {j, k};
        }
    }
    s.finish();
    return s;
}

}  // namespace sfscert
