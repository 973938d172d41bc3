#pragma once

#include "core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <unordered_map>
#include <utility>

namespace hplateau {

/// Indexed triangle soup with consistent winding expected but not enforced.
struct TriangleMesh {
    std::vector<Point3> vertices;
    std::vector<Tri> triangles;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }
};

/// A mesh that is expected to be a topological disk. `boundary_loop` lists the
/// boundary vertices in the direction of the boundary half-edges, i.e.
/// counter-clockwise with respect to the triangle orientation.
struct TriangulatedDisk : TriangleMesh {
    std::vector<int> boundary_loop;
};

// ---------------------------------------------------------------------------
// Per-triangle geometry

inline Vec3 triangle_area_vector(const Point3& a, const Point3& b, const Point3& c) {
    return 0.5 * (b - a).cross(c - a);
}

inline Vec3 triangle_area_vector(const TriangleMesh& m, int t) {
    const Tri& f = m.triangles[t];
    return triangle_area_vector(m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]);
}

inline double triangle_area(const TriangleMesh& m, int t) {
    return triangle_area_vector(m, t).norm();
}

inline Vec3 triangle_normal(const TriangleMesh& m, int t) {
    Vec3 a = triangle_area_vector(m, t);
    const double n = a.norm();
    return n > 0 ? Vec3(a / n) : Vec3::Zero();
}

inline Eigen::AlignedBox3d bounding_box(const TriangleMesh& m) {
    Eigen::AlignedBox3d box;
    for (const auto& p : m.vertices) box.extend(p);
    return box;
}

inline double bbox_diagonal(const TriangleMesh& m) {
    if (m.vertices.empty()) return 0.0;
    return bounding_box(m).diagonal().norm();
}

/// Area below which a triangle counts as degenerate: 1e-12 of the squared
/// bounding-box diagonal.
inline double degenerate_area_tolerance(const TriangleMesh& m) {
    const double d = bbox_diagonal(m);
    return 1e-12 * d * d;
}

/// Throws DegenerateTriangleError for the first triangle under tolerance.
inline void require_nondegenerate(const TriangleMesh& m) {
    const double tol = degenerate_area_tolerance(m);
    for (int t = 0; t < m.num_triangles(); ++t) {
        const double a = triangle_area(m, t);
        if (!(a >= tol))
            throw DegenerateTriangleError(
                t, concat("degenerate triangle ", t, " (area ", a, " < ", tol, ")"));
    }
}

// ---------------------------------------------------------------------------
// Topology

inline std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

/// Directed boundary half-edges: edges used by exactly one triangle, in that
/// triangle's winding.
inline std::vector<std::array<int, 2>> boundary_halfedges(const TriangleMesh& m) {
    std::unordered_map<std::uint64_t, int> count;
    count.reserve(m.triangles.size() * 3);
    for (const Tri& f : m.triangles)
        for (int k = 0; k < 3; ++k) ++count[edge_key(f[k], f[(k + 1) % 3])];
    std::vector<std::array<int, 2>> out;
    for (const Tri& f : m.triangles)
        for (int k = 0; k < 3; ++k)
            if (count[edge_key(f[k], f[(k + 1) % 3])] == 1) out.push_back({f[k], f[(k + 1) % 3]});
    return out;
}

/// Chains boundary half-edges into closed loops. Loops are returned starting at
/// their smallest vertex index for determinism. Returns nullopt if the
/// boundary is not a disjoint union of simple cycles.
inline std::optional<std::vector<std::vector<int>>> boundary_loops(const TriangleMesh& m) {
    auto hes = boundary_halfedges(m);
    std::map<int, int> next;
    for (auto [a, b] : hes) {
        if (next.count(a)) return std::nullopt;  // pinched vertex
        next[a] = b;
    }
    std::set<int> seen;
    std::vector<std::vector<int>> loops;
    for (auto [start, _] : next) {
        if (seen.count(start)) continue;
        std::vector<int> loop;
        int v = start;
        while (!seen.count(v)) {
            seen.insert(v);
            loop.push_back(v);
            auto it = next.find(v);
            if (it == next.end()) return std::nullopt;
            v = it->second;
        }
        if (v != start) return std::nullopt;
        loops.push_back(std::move(loop));
    }
    return loops;
}

inline int count_edges(const TriangleMesh& m) {
    std::set<std::uint64_t> edges;
    for (const Tri& f : m.triangles)
        for (int k = 0; k < 3; ++k) edges.insert(edge_key(f[k], f[(k + 1) % 3]));
    return static_cast<int>(edges.size());
}

/// Vertices that appear on a boundary edge.
inline std::vector<char> boundary_vertex_mask(const TriangleMesh& m) {
    std::vector<char> mask(m.vertices.size(), 0);
    for (auto [a, b] : boundary_halfedges(m)) mask[a] = mask[b] = 1;
    return mask;
}

/// Triangle adjacency across edges; -1 marks a boundary edge. Entry k of a
/// triangle is the neighbour across edge (f[k], f[k+1]).
inline std::vector<std::array<int, 3>> triangle_neighbors(const TriangleMesh& m) {
    std::unordered_map<std::uint64_t, std::vector<std::pair<int, int>>> by_edge;
    for (int t = 0; t < m.num_triangles(); ++t)
        for (int k = 0; k < 3; ++k)
            by_edge[edge_key(m.triangles[t][k], m.triangles[t][(k + 1) % 3])].push_back({t, k});
    std::vector<std::array<int, 3>> nb(m.triangles.size(), {-1, -1, -1});
    for (auto& [key, uses] : by_edge) {
        if (uses.size() != 2) continue;
        nb[uses[0].first][uses[0].second] = uses[1].first;
        nb[uses[1].first][uses[1].second] = uses[0].first;
    }
    return nb;
}

/// Vertex-to-vertex adjacency (sorted, unique).
inline std::vector<std::vector<int>> vertex_neighbors(const TriangleMesh& m) {
    std::vector<std::vector<int>> adj(m.vertices.size());
    for (const Tri& f : m.triangles)
        for (int k = 0; k < 3; ++k) {
            adj[f[k]].push_back(f[(k + 1) % 3]);
            adj[f[k]].push_back(f[(k + 2) % 3]);
        }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

inline std::vector<std::vector<int>> vertex_triangles(const TriangleMesh& m) {
    std::vector<std::vector<int>> vt(m.vertices.size());
    for (int t = 0; t < m.num_triangles(); ++t)
        for (int v : m.triangles[t]) vt[v].push_back(t);
    return vt;
}

/// Graph distance (in edge rings) from a seed vertex set; unreachable = -1.
inline std::vector<int> ring_distance(const TriangleMesh& m, const std::vector<int>& seeds) {
    auto adj = vertex_neighbors(m);
    std::vector<int> dist(m.vertices.size(), -1);
    std::queue<int> q;
    for (int s : seeds)
        if (dist[s] < 0) { dist[s] = 0; q.push(s); }
    while (!q.empty()) {
        int v = q.front(); q.pop();
        for (int w : adj[v])
            if (dist[w] < 0) { dist[w] = dist[v] + 1; q.push(w); }
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
    int num_vertices = 0;
    int num_edges = 0;
    int num_triangles = 0;
    int euler_characteristic = 0;
    int boundary_cycles = 0;
    bool boundary_is_simple = true;      // boundary half-edges chain into cycles
    bool orientation_consistent = true;  // no directed edge used twice
    bool manifold_edges = true;          // no edge with more than two triangles
    bool boundary_loop_matches = true;   // stored loop equals the detected cycle
    int degenerate_triangles = 0;
    double min_quality = 0.0;            // 1 for equilateral, 0 for degenerate
    std::vector<std::string> failures;

    bool is_disk() const { return failures.empty(); }
};

/// Shape quality 4*sqrt(3)*A / (sum of squared edge lengths).
inline double triangle_quality(const Point3& a, const Point3& b, const Point3& c) {
    const double area = triangle_area_vector(a, b, c).norm();
    const double s = (b - a).squaredNorm() + (c - b).squaredNorm() + (a - c).squaredNorm();
    return s > 0 ? 4.0 * std::sqrt(3.0) * area / s : 0.0;
}

inline bool loops_equal_cyclic(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    auto it = std::find(b.begin(), b.end(), a[0]);
    if (it == b.end()) return false;
    const size_t off = static_cast<size_t>(it - b.begin());
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[(i + off) % b.size()]) return false;
    return true;
}

inline ValidationReport validate_mesh_topology(const TriangleMesh& mesh,
                                               const std::vector<int>* stored_loop) {
    ValidationReport r;
    r.num_vertices = mesh.num_vertices();
    r.num_triangles = mesh.num_triangles();
    r.num_edges = count_edges(mesh);
    r.euler_characteristic = r.num_vertices - r.num_edges + r.num_triangles;

    std::unordered_map<std::uint64_t, int> undirected;
    std::set<std::pair<int, int>> directed;
    for (const Tri& f : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            const int a = f[k], b = f[(k + 1) % 3];
            if (!directed.insert({a, b}).second) r.orientation_consistent = false;
            if (++undirected[edge_key(a, b)] > 2) r.manifold_edges = false;
        }

    auto loops = boundary_loops(mesh);
    if (!loops) {
        r.boundary_is_simple = false;
        r.boundary_cycles = -1;
    } else {
        r.boundary_cycles = static_cast<int>(loops->size());
    }
    if (stored_loop && loops && loops->size() == 1)
        r.boundary_loop_matches = loops_equal_cyclic(*stored_loop, loops->front());
    else if (stored_loop && !stored_loop->empty())
        r.boundary_loop_matches = false;

    const double tol = degenerate_area_tolerance(mesh);
    r.min_quality = mesh.triangles.empty() ? 0.0 : 1.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const Tri& f = mesh.triangles[t];
        const double a = triangle_area(mesh, t);
        if (!(a >= tol)) ++r.degenerate_triangles;
        r.min_quality = std::min(
            r.min_quality,
            triangle_quality(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]));
    }

    if (r.euler_characteristic != 1)
        r.failures.push_back(concat("Euler characteristic ", r.euler_characteristic, " != 1"));
    if (r.boundary_cycles != 1)
        r.failures.push_back(concat("boundary cycles ", r.boundary_cycles, " != 1"));
    if (!r.orientation_consistent) r.failures.push_back("inconsistent triangle orientation");
    if (!r.manifold_edges) r.failures.push_back("non-manifold edge");
    if (!r.boundary_is_simple) r.failures.push_back("boundary is not a union of simple cycles");
    if (!r.boundary_loop_matches) r.failures.push_back("stored boundary loop does not match");
    if (r.degenerate_triangles > 0)
        r.failures.push_back(concat(r.degenerate_triangles, " degenerate triangles"));
    return r;
}

/// Checks disk topology: chi = 1, one boundary cycle, consistent orientation,
/// non-degenerate triangles. Failures are reported, never thrown.
inline ValidationReport validate_disk(const TriangulatedDisk& mesh) {
    return validate_mesh_topology(mesh, mesh.boundary_loop.empty() ? nullptr : &mesh.boundary_loop);
}

inline ValidationReport validate_disk(const TriangleMesh& mesh) {
    return validate_mesh_topology(mesh, nullptr);
}

/// Builds a disk from a triangle soup, deriving its boundary loop. Throws if
/// the soup is not a disk.
inline TriangulatedDisk make_disk(TriangleMesh m) {
    TriangulatedDisk d;
    d.vertices = std::move(m.vertices);
    d.triangles = std::move(m.triangles);
    auto loops = boundary_loops(d);
    if (!loops || loops->size() != 1)
        throw Error("make_disk: mesh does not have exactly one boundary cycle");
    d.boundary_loop = loops->front();
    auto rep = validate_disk(d);
    if (!rep.is_disk()) throw Error("make_disk: " + rep.failures.front());
    return d;
}

/// Rotates a loop so it starts at `first` (which must be in the loop).
inline std::vector<int> rotate_loop_to(std::vector<int> loop, int first) {
    auto it = std::find(loop.begin(), loop.end(), first);
    if (it != loop.end()) std::rotate(loop.begin(), it, loop.end());
    return loop;
}

// ---------------------------------------------------------------------------
// Editing helpers

/// Flips every triangle. The boundary loop is reversed to stay consistent.
inline TriangulatedDisk reversed(TriangulatedDisk d) {
    for (Tri& f : d.triangles) std::swap(f[1], f[2]);
    if (!d.boundary_loop.empty()) {
        std::reverse(d.boundary_loop.begin() + 1, d.boundary_loop.end());
    }
    return d;
}

inline TriangleMesh reversed(TriangleMesh m) {
    for (Tri& f : m.triangles) std::swap(f[1], f[2]);
    return m;
}

/// Re-orients triangles so that neighbours agree, propagating from triangle 0
/// of each connected component.
inline void orient_consistently(TriangleMesh& m) {
    std::unordered_map<std::uint64_t, std::vector<int>> by_edge;
    for (int t = 0; t < m.num_triangles(); ++t)
        for (int k = 0; k < 3; ++k)
            by_edge[edge_key(m.triangles[t][k], m.triangles[t][(k + 1) % 3])].push_back(t);
    std::vector<char> done(m.triangles.size(), 0);
    auto has_directed = [&](int t, int a, int b) {
        const Tri& f = m.triangles[t];
        for (int k = 0; k < 3; ++k)
            if (f[k] == a && f[(k + 1) % 3] == b) return true;
        return false;
    };
    for (int seed = 0; seed < m.num_triangles(); ++seed) {
        if (done[seed]) continue;
        done[seed] = 1;
        std::queue<int> q;
        q.push(seed);
        while (!q.empty()) {
            int t = q.front(); q.pop();
            for (int k = 0; k < 3; ++k) {
                const int a = m.triangles[t][k], b = m.triangles[t][(k + 1) % 3];
                for (int s : by_edge[edge_key(a, b)]) {
                    if (s == t || done[s]) continue;
                    if (has_directed(s, a, b)) std::swap(m.triangles[s][1], m.triangles[s][2]);
                    done[s] = 1;
                    q.push(s);
                }
            }
        }
    }
}

/// Merges vertices closer than `tol` (grid hashing), dropping triangles that
/// collapse. Returns the old-to-new vertex map through `remap` if given.
inline TriangleMesh weld(const TriangleMesh& m, double tol, std::vector<int>* remap = nullptr) {
    const double cell = std::max(tol, 1e-300) * 4.0;
    std::unordered_map<std::int64_t, std::vector<int>> grid;
    auto key = [&](long long i, long long j, long long k) {
        return static_cast<std::int64_t>((i * 73856093LL) ^ (j * 19349663LL) ^ (k * 83492791LL));
    };
    TriangleMesh out;
    std::vector<int> map(m.vertices.size(), -1);
    for (int v = 0; v < m.num_vertices(); ++v) {
        const Point3& p = m.vertices[v];
        const long long ci = static_cast<long long>(std::floor(p.x() / cell));
        const long long cj = static_cast<long long>(std::floor(p.y() / cell));
        const long long ck = static_cast<long long>(std::floor(p.z() / cell));
        int found = -1;
        for (long long di = -1; di <= 1 && found < 0; ++di)
            for (long long dj = -1; dj <= 1 && found < 0; ++dj)
                for (long long dk = -1; dk <= 1 && found < 0; ++dk) {
                    auto it = grid.find(key(ci + di, cj + dj, ck + dk));
                    if (it == grid.end()) continue;
                    for (int w : it->second)
                        if ((out.vertices[w] - p).norm() <= tol) { found = w; break; }
                }
        if (found < 0) {
            found = out.num_vertices();
            out.vertices.push_back(p);
            grid[key(ci, cj, ck)].push_back(found);
        }
        map[v] = found;
    }
    for (const Tri& f : m.triangles) {
        Tri g{map[f[0]], map[f[1]], map[f[2]]};
        if (g[0] == g[1] || g[1] == g[2] || g[0] == g[2]) continue;
        out.triangles.push_back(g);
    }
    if (remap) *remap = std::move(map);
    return out;
}

/// Concatenates meshes without welding.
inline TriangleMesh concatenate(const std::vector<const TriangleMesh*>& parts) {
    TriangleMesh out;
    for (const TriangleMesh* p : parts) {
        const int off = out.num_vertices();
        out.vertices.insert(out.vertices.end(), p->vertices.begin(), p->vertices.end());
        for (Tri f : p->triangles) out.triangles.push_back({f[0] + off, f[1] + off, f[2] + off});
    }
    return out;
}

inline TriangulatedDisk translated(TriangulatedDisk d, const Vec3& shift) {
    for (auto& p : d.vertices) p += shift;
    return d;
}

/// One level of 1-to-4 midpoint subdivision. New boundary vertices are edge
/// midpoints, so the boundary polyline geometry is preserved exactly. When
/// `project` is given, new vertices are passed through it (e.g. to land on a
/// sphere); boundary midpoints are left untouched.
template <class Project = std::nullptr_t>
TriangulatedDisk refine_uniform(const TriangulatedDisk& d, Project project = nullptr) {
    TriangulatedDisk out;
    out.vertices = d.vertices;
    std::unordered_map<std::uint64_t, int> mid;
    std::set<std::uint64_t> bedges;
    for (auto [a, b] : boundary_halfedges(d)) bedges.insert(edge_key(a, b));
    auto midpoint = [&](int a, int b) {
        auto k = edge_key(a, b);
        auto it = mid.find(k);
        if (it != mid.end()) return it->second;
        Point3 p = 0.5 * (d.vertices[a] + d.vertices[b]);
        if constexpr (!std::is_same_v<Project, std::nullptr_t>) {
            if (!bedges.count(k)) p = project(p);
        }
        const int idx = out.num_vertices();
        out.vertices.push_back(p);
        mid[k] = idx;
        return idx;
    };
    for (const Tri& f : d.triangles) {
        const int a = midpoint(f[0], f[1]);
        const int b = midpoint(f[1], f[2]);
        const int c = midpoint(f[2], f[0]);
        out.triangles.push_back({f[0], a, c});
        out.triangles.push_back({a, f[1], b});
        out.triangles.push_back({c, b, f[2]});
        out.triangles.push_back({a, b, c});
    }
    for (size_t i = 0; i < d.boundary_loop.size(); ++i) {
        const int a = d.boundary_loop[i];
        const int b = d.boundary_loop[(i + 1) % d.boundary_loop.size()];
        out.boundary_loop.push_back(a);
        out.boundary_loop.push_back(mid.at(edge_key(a, b)));
    }
    return out;
}

inline double total_area(const TriangleMesh& m) {
    CompensatedSum s;
    for (int t = 0; t < m.num_triangles(); ++t) s += triangle_area(m, t);
    return s.value();
}

inline double mean_edge_length(const TriangleMesh& m) {
    std::set<std::uint64_t> seen;
    CompensatedSum s;
    int n = 0;
    for (const Tri& f : m.triangles)
        for (int k = 0; k < 3; ++k) {
            const int a = f[k], b = f[(k + 1) % 3];
            if (!seen.insert(edge_key(a, b)).second) continue;
            s += (m.vertices[a] - m.vertices[b]).norm();
            ++n;
        }
    return n ? s.value() / n : 0.0;
}

}  // namespace hplateau
