#pragma once

// Self-intersection detection for triangle meshes and the chaining of
// intersection segments into curves.

#include "mesh.hpp"
#include "delaunay.hpp"
#include "predicates.hpp"

#include <json.hpp>

#include <numeric>
#include <unordered_set>

namespace hplateau {

struct SegmentEndpoint {
    Point3 p;
    bool on_mesh_boundary = false;  // lies on a boundary edge of the mesh
};

struct IntersectionSegment {
    int t1 = -1, t2 = -1;  // t1 < t2
    SegmentEndpoint a, b;
};

struct IntersectionCurve {
    std::vector<Point3> points;
    std::vector<int> segments;  // indices into SelfIntersectionComplex::segments
    bool closed = false;
    int start_node = -1, end_node = -1;  // -1 for closed curves
    int triangles_touched = 0;            // distinct triangles crossed
    int crossing_parity = 0;              // triangles_touched mod 2, diagnostic only
};

struct SelfIntersectionComplex {
    std::vector<IntersectionSegment> segments;
    std::vector<IntersectionCurve> curves;
    std::vector<Point3> junctions;                // nodes of degree >= 3
    std::vector<std::pair<int, int>> coplanar_pairs;  // overlapping coplanar triangles
    int isolated_points = 0;
    int interior_endpoints = 0;
    double tol = 0.0;

    bool empty() const { return segments.empty() && coplanar_pairs.empty(); }
    bool structure_violation() const { return isolated_points > 0 || interior_endpoints > 0; }
};

inline double default_intersection_tol(const TriangleMesh& m) { return 1e-8 * bbox_diagonal(m); }

namespace detail {

/// Signed side of p relative to the plane of abc, exact.
inline int plane_side(const Point3& a, const Point3& b, const Point3& c, const Point3& p) {
    return -orient3d(a, b, c, p);
}

inline bool coplanar_overlap(const std::array<Point3, 3>& P, const std::array<Point3, 3>& Q) {
    Vec3 n = (P[1] - P[0]).cross(P[2] - P[0]);
    int ax = 0;
    if (std::abs(n.y()) > std::abs(n[ax])) ax = 1;
    if (std::abs(n.z()) > std::abs(n[ax])) ax = 2;
    const int i = (ax + 1) % 3, j = (ax + 2) % 3;
    auto pr = [&](const Point3& x) { return Point2(x[i], x[j]); };
    std::array<Point2, 3> a{pr(P[0]), pr(P[1]), pr(P[2])}, b{pr(Q[0]), pr(Q[1]), pr(Q[2])};
    if (orient2d(a[0], a[1], a[2]) < 0) std::swap(a[1], a[2]);
    if (orient2d(b[0], b[1], b[2]) < 0) std::swap(b[1], b[2]);
    // separating axis over the six edges
    auto separated = [](const std::array<Point2, 3>& s, const std::array<Point2, 3>& t) {
        for (int k = 0; k < 3; ++k) {
            const Point2 &e0 = s[k], &e1 = s[(k + 1) % 3];
            bool all_out = true;
            for (const auto& q : t)
                if (orient2d(e0, e1, q) > 0) { all_out = false; break; }
            if (all_out) return true;
        }
        return false;
    };
    return !separated(a, b) && !separated(b, a);
}

struct PlaneCut {
    Point3 p[2];
    int edge[2];  // local edge index (k means edge k -> k+1), -1 at a vertex
    int count = 0;
};

/// Points where triangle T meets the plane, given exact side signs s.
inline PlaneCut cut_triangle(const std::array<Point3, 3>& T, const std::array<int, 3>& s,
                             const std::array<double, 3>& d) {
    PlaneCut c;
    for (int k = 0; k < 3 && c.count < 2; ++k)
        if (s[k] == 0) { c.p[c.count] = T[k]; c.edge[c.count] = -1; ++c.count; }
    for (int k = 0; k < 3 && c.count < 2; ++k) {
        const int a = k, b = (k + 1) % 3;
        if (s[a] * s[b] < 0) {
            const double t = d[a] / (d[a] - d[b]);
            c.p[c.count] = T[a] + t * (T[b] - T[a]);
            c.edge[c.count] = k;
            ++c.count;
        }
    }
    return c;
}

}  // namespace detail

enum class TriTriResult { Disjoint, Segment, Coplanar };

/// Intersection of two triangles. On Segment, `seg` holds the endpoints and,
/// for each, the triangle (0 or 1) and local edge it lies on (-1 if interior
/// or at a vertex).
struct TriTriSegment {
    Point3 a, b;
    int src_tri[2] = {-1, -1};
    int src_edge[2] = {-1, -1};
};

inline TriTriResult triangle_triangle(const std::array<Point3, 3>& P, const std::array<Point3, 3>& Q,
                                      TriTriSegment* seg) {
    std::array<int, 3> sq, sp;
    for (int k = 0; k < 3; ++k) sq[k] = detail::plane_side(P[0], P[1], P[2], Q[k]);
    if ((sq[0] > 0 && sq[1] > 0 && sq[2] > 0) || (sq[0] < 0 && sq[1] < 0 && sq[2] < 0))
        return TriTriResult::Disjoint;
    if (sq[0] == 0 && sq[1] == 0 && sq[2] == 0)
        return detail::coplanar_overlap(P, Q) ? TriTriResult::Coplanar : TriTriResult::Disjoint;
    for (int k = 0; k < 3; ++k) sp[k] = detail::plane_side(Q[0], Q[1], Q[2], P[k]);
    if ((sp[0] > 0 && sp[1] > 0 && sp[2] > 0) || (sp[0] < 0 && sp[1] < 0 && sp[2] < 0))
        return TriTriResult::Disjoint;

    // Exact decision: rotate each triangle so its first vertex is alone on
    // its side of the other plane, then two orientation tests compare the
    // cut intervals along the common line.
    // (index, effective sign); a zero vertex facing two equal signs counts
    // as the lone vertex with the opposite sign
    auto lone = [](const std::array<int, 3>& s) {
        for (int r = 0; r < 3; ++r) {
            const int a = s[r], b = s[(r + 1) % 3], c = s[(r + 2) % 3];
            if (a > 0 && b <= 0 && c <= 0) return std::pair<int, int>{r, 1};
            if (a < 0 && b >= 0 && c >= 0) return std::pair<int, int>{r, -1};
        }
        for (int r = 0; r < 3; ++r)
            if (s[r] == 0) return std::pair<int, int>{r, s[(r + 1) % 3] > 0 ? -1 : 1};
        return std::pair<int, int>{0, 1};
    };
    std::array<int, 3> ip, iq;  // local vertex indices in the working order
    const auto [rp, sgp] = lone(sp);
    for (int k = 0; k < 3; ++k) ip[k] = (rp + k) % 3;
    for (int k = 0; k < 3; ++k) iq[k] = k;
    if (sgp < 0) std::swap(iq[1], iq[2]);
    int sgq = 1;
    {
        // rotate Q keeping the orientation chosen above
        std::array<int, 3> s{sq[iq[0]], sq[iq[1]], sq[iq[2]]};
        const auto [rq, sg] = lone(s);
        std::array<int, 3> t{iq[rq], iq[(rq + 1) % 3], iq[(rq + 2) % 3]};
        iq = t;
        sgq = sg;
    }
    if (sgq < 0) std::swap(ip[1], ip[2]);
    // O(a, b, c, d) > 0 when d is above plane abc (right-hand normal)
    auto O = [](const Point3& a, const Point3& b, const Point3& c, const Point3& d) { return -orient3d(a, b, c, d); };
    const Point3 &p1 = P[ip[0]], &p2 = P[ip[1]], &p3 = P[ip[2]];
    const Point3 &q1 = Q[iq[0]], &q2 = Q[iq[1]], &q3 = Q[iq[2]];
    if (O(p1, p2, q1, q2) > 0 || O(p1, p3, q3, q1) > 0) return TriTriResult::Disjoint;
    if (!seg) return TriTriResult::Segment;

    const Vec3 np = (p2 - p1).cross(p3 - p1);
    const Vec3 nq = (q2 - q1).cross(q3 - q1);
    auto cut = [](const Point3& a, const Point3& b, const Vec3& n, const Point3& o) {
        const double da = n.dot(a - o), db = n.dot(b - o);
        if (da == db) return a;
        const double t = std::clamp(da / (da - db), 0.0, 1.0);
        return Point3(a + t * (b - a));
    };
    auto edge_of = [](int u, int v) {
        // local edge k runs k -> k+1
        if ((u + 1) % 3 == v) return u;
        return v;
    };
    struct End { Point3 p; int tri, edge; };
    const End i{cut(p1, p2, nq, q1), 0, edge_of(ip[0], ip[1])};
    const End j{cut(p1, p3, nq, q1), 0, edge_of(ip[0], ip[2])};
    const End k{cut(q1, q2, np, p1), 1, edge_of(iq[0], iq[1])};
    const End l{cut(q1, q3, np, p1), 1, edge_of(iq[0], iq[2])};
    const End lo = O(p1, p3, q2, q1) > 0 ? j : k;
    const End hi = O(p1, p2, q1, q3) > 0 ? i : l;
    seg->a = lo.p;
    seg->b = hi.p;
    seg->src_tri[0] = lo.tri;
    seg->src_edge[0] = lo.edge;
    seg->src_tri[1] = hi.tri;
    seg->src_edge[1] = hi.edge;
    return TriTriResult::Segment;
}

// ---------------------------------------------------------------------------
// Candidate pairs

inline bool share_vertex(const Tri& a, const Tri& b) {
    for (int x : a)
        for (int y : b)
            if (x == y) return true;
    return false;
}

/// Pairs of non-adjacent triangles with overlapping (tol-inflated) boxes,
/// via a uniform grid. Sorted ascending.
inline std::vector<std::pair<int, int>> candidate_pairs_grid(const TriangleMesh& m, double tol) {
    const int nt = m.num_triangles();
    std::vector<Eigen::AlignedBox3d> boxes(nt);
    double mean = 0.0;
    for (int t = 0; t < nt; ++t) {
        for (int v : m.triangles[t]) boxes[t].extend(m.vertices[v]);
        boxes[t].min().array() -= tol;
        boxes[t].max().array() += tol;
        mean += boxes[t].diagonal().norm();
    }
    if (nt == 0) return {};
    const double cell = std::max(2.0 * mean / nt, 1e-300);
    std::unordered_map<std::int64_t, std::vector<int>> grid;
    auto key = [](long long i, long long j, long long k) {
        return static_cast<std::int64_t>(((i * 73856093LL) ^ (j * 19349663LL) ^ (k * 83492791LL)));
    };
    auto idx = [&](double x) { return static_cast<long long>(std::floor(x / cell)); };
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<int, int>> out;
    for (int t = 0; t < nt; ++t) {
        const auto& b = boxes[t];
        for (long long i = idx(b.min().x()); i <= idx(b.max().x()); ++i)
            for (long long j = idx(b.min().y()); j <= idx(b.max().y()); ++j)
                for (long long k = idx(b.min().z()); k <= idx(b.max().z()); ++k) {
                    auto& bucket = grid[key(i, j, k)];
                    for (int s : bucket) {
                        const std::uint64_t pk = (static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint32_t>(t);
                        if (seen.count(pk)) continue;
                        if (!boxes[s].intersects(boxes[t])) continue;
                        if (share_vertex(m.triangles[s], m.triangles[t])) continue;
                        seen.insert(pk);
                        out.emplace_back(s, t);
                    }
                    bucket.push_back(t);
                }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every non-adjacent pair, for cross-checking the grid.
inline std::vector<std::pair<int, int>> candidate_pairs_all(const TriangleMesh& m) {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < m.num_triangles(); ++s)
        for (int t = s + 1; t < m.num_triangles(); ++t)
            if (!share_vertex(m.triangles[s], m.triangles[t])) out.emplace_back(s, t);
    return out;
}

// ---------------------------------------------------------------------------
// Chaining

namespace detail {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { while (p[x] != x) x = p[x] = p[p[x]]; return x; }
    void unite(int a, int b) { a = find(a); b = find(b); if (a != b) p[std::max(a, b)] = std::min(a, b); }
};

inline void chain_segments(SelfIntersectionComplex& cx, double chain_tol) {
    const int ns = static_cast<int>(cx.segments.size());
    std::vector<Point3> ends;
    std::vector<char> on_bd;
    for (const auto& s : cx.segments) {
        ends.push_back(s.a.p); on_bd.push_back(s.a.on_mesh_boundary);
        ends.push_back(s.b.p); on_bd.push_back(s.b.on_mesh_boundary);
    }
    UnionFind uf(static_cast<int>(ends.size()));
    const double cell = std::max(chain_tol, 1e-300) * 2.0;
    std::unordered_map<std::int64_t, std::vector<int>> grid;
    auto key = [](long long i, long long j, long long k) {
        return static_cast<std::int64_t>(((i * 73856093LL) ^ (j * 19349663LL) ^ (k * 83492791LL)));
    };
    for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
        const long long ci = static_cast<long long>(std::floor(ends[e].x() / cell));
        const long long cj = static_cast<long long>(std::floor(ends[e].y() / cell));
        const long long ck = static_cast<long long>(std::floor(ends[e].z() / cell));
        for (long long a = -1; a <= 1; ++a)
            for (long long b = -1; b <= 1; ++b)
                for (long long c = -1; c <= 1; ++c) {
                    auto it = grid.find(key(ci + a, cj + b, ck + c));
                    if (it == grid.end()) continue;
                    for (int f : it->second)
                        if ((ends[f] - ends[e]).norm() <= chain_tol) uf.unite(e, f);
                }
        grid[key(ci, cj, ck)].push_back(e);
    }
    // nodes
    std::map<int, int> node_of_root;
    std::vector<int> node(ends.size());
    for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
        const int r = uf.find(e);
        auto it = node_of_root.find(r);
        if (it == node_of_root.end()) it = node_of_root.emplace(r, static_cast<int>(node_of_root.size())).first;
        node[e] = it->second;
    }
    const int nn = static_cast<int>(node_of_root.size());
    std::vector<Point3> node_pos(nn, Point3::Zero());
    std::vector<int> node_cnt(nn, 0);
    std::vector<char> node_bd(nn, 0);
    for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
        node_pos[node[e]] += ends[e];
        ++node_cnt[node[e]];
        if (on_bd[e]) node_bd[node[e]] = 1;
    }
    for (int v = 0; v < nn; ++v) node_pos[v] /= node_cnt[v];

    std::vector<std::vector<int>> inc(nn);  // incident segments (non-degenerate)
    std::vector<char> degenerate(ns, 0);
    for (int s = 0; s < ns; ++s) {
        const int a = node[2 * s], b = node[2 * s + 1];
        if (a == b) { degenerate[s] = 1; continue; }
        inc[a].push_back(s);
        inc[b].push_back(s);
    }
    for (int s = 0; s < ns; ++s)
        if (degenerate[s] && inc[node[2 * s]].empty()) ++cx.isolated_points;
    // isolated degenerate nodes counted once
    {
        std::set<int> iso;
        for (int s = 0; s < ns; ++s)
            if (degenerate[s] && inc[node[2 * s]].empty()) iso.insert(node[2 * s]);
        cx.isolated_points = static_cast<int>(iso.size());
    }
    for (int v = 0; v < nn; ++v) {
        const int deg = static_cast<int>(inc[v].size());
        if (deg >= 3) cx.junctions.push_back(node_pos[v]);
        if (deg == 1 && !node_bd[v]) ++cx.interior_endpoints;
    }

    std::vector<char> used(ns, 0);
    auto other = [&](int s, int v) { return node[2 * s] == v ? node[2 * s + 1] : node[2 * s]; };
    auto walk = [&](int start, int first_seg) {
        IntersectionCurve c;
        c.start_node = start;
        c.points.push_back(node_pos[start]);
        int v = start, s = first_seg;
        while (true) {
            used[s] = 1;
            c.segments.push_back(s);
            v = other(s, v);
            c.points.push_back(node_pos[v]);
            if (inc[v].size() != 2 || v == start) break;
            const int nxt = inc[v][0] == s ? inc[v][1] : inc[v][0];
            if (used[nxt]) break;
            s = nxt;
        }
        if (v == start && inc[v].size() == 2) {
            c.closed = true;
            c.points.pop_back();
            c.start_node = c.end_node = -1;
        } else {
            c.end_node = v;
        }
        std::set<int> tris;
        for (int k : c.segments) { tris.insert(cx.segments[k].t1); tris.insert(cx.segments[k].t2); }
        c.triangles_touched = static_cast<int>(tris.size());
        c.crossing_parity = c.triangles_touched % 2;
        cx.curves.push_back(std::move(c));
    };
    for (int v = 0; v < nn; ++v)
        if (inc[v].size() != 2)
            for (int s : inc[v])
                if (!used[s]) walk(v, s);
    for (int s = 0; s < ns; ++s)
        if (!used[s] && !degenerate[s]) walk(node[2 * s], s);
}

}  // namespace detail

struct IntersectOptions {
    double tol = -1.0;        // default: 1e-8 * bounding-box diagonal
    double chain_factor = 4.0;
    bool brute_force = false;  // all pairs instead of the grid
};

/// All intersections between non-adjacent triangles, chained into curves.
inline SelfIntersectionComplex self_intersections(const TriangleMesh& m, const IntersectOptions& opt = {}) {
    SelfIntersectionComplex cx;
    cx.tol = opt.tol >= 0 ? opt.tol : default_intersection_tol(m);
    const auto pairs = opt.brute_force ? candidate_pairs_all(m) : candidate_pairs_grid(m, cx.tol);
    std::set<std::uint64_t> bedges;
    for (auto [a, b] : boundary_halfedges(m)) bedges.insert(edge_key(a, b));
    for (auto [s, t] : pairs) {
        const Tri &fs = m.triangles[s], &ft = m.triangles[t];
        std::array<Point3, 3> P{m.vertices[fs[0]], m.vertices[fs[1]], m.vertices[fs[2]]};
        std::array<Point3, 3> Q{m.vertices[ft[0]], m.vertices[ft[1]], m.vertices[ft[2]]};
        TriTriSegment seg;
        const TriTriResult r = triangle_triangle(P, Q, &seg);
        if (r == TriTriResult::Coplanar) { cx.coplanar_pairs.emplace_back(s, t); continue; }
        if (r != TriTriResult::Segment) continue;
        IntersectionSegment is;
        is.t1 = s;
        is.t2 = t;
        auto on_boundary = [&](int tri, int edge) {
            if (edge < 0) return false;
            const Tri& f = m.triangles[tri == 0 ? s : t];
            return bedges.count(edge_key(f[edge], f[(edge + 1) % 3])) > 0;
        };
        is.a = {seg.a, on_boundary(seg.src_tri[0], seg.src_edge[0])};
        is.b = {seg.b, on_boundary(seg.src_tri[1], seg.src_edge[1])};
        cx.segments.push_back(is);
    }
    detail::chain_segments(cx, opt.chain_factor * cx.tol);
    return cx;
}

inline bool is_embedded(const TriangleMesh& m, const IntersectOptions& opt = {}) {
    return self_intersections(m, opt).empty();
}

/// True when both complexes hold the same triangle pairs with endpoints
/// agreeing within tol (either endpoint order).
inline bool same_segments(const SelfIntersectionComplex& a, const SelfIntersectionComplex& b, double tol) {
    if (a.segments.size() != b.segments.size() || a.coplanar_pairs.size() != b.coplanar_pairs.size()) return false;
    auto sorted = [](std::vector<IntersectionSegment> v) {
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
            return std::tie(x.t1, x.t2) < std::tie(y.t1, y.t2);
        });
        return v;
    };
    const auto sa = sorted(a.segments), sb = sorted(b.segments);
    for (size_t i = 0; i < sa.size(); ++i) {
        if (sa[i].t1 != sb[i].t1 || sa[i].t2 != sb[i].t2) return false;
        const bool same = (sa[i].a.p - sb[i].a.p).norm() <= tol && (sa[i].b.p - sb[i].b.p).norm() <= tol;
        const bool swapped = (sa[i].a.p - sb[i].b.p).norm() <= tol && (sa[i].b.p - sb[i].a.p).norm() <= tol;
        if (!same && !swapped) return false;
    }
    auto ca = a.coplanar_pairs, cb = b.coplanar_pairs;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
}

inline nlohmann::ordered_json to_json(const SelfIntersectionComplex& cx) {
    nlohmann::ordered_json j;
    j["segments"] = cx.segments.size();
    j["coplanar_pairs"] = cx.coplanar_pairs.size();
    auto pt = [](const Point3& p) { return nlohmann::ordered_json::array({p.x(), p.y(), p.z()}); };
    nlohmann::ordered_json curves = nlohmann::ordered_json::array();
    for (const auto& c : cx.curves) {
        nlohmann::ordered_json cj;
        cj["closed"] = c.closed;
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (const auto& p : c.points) pts.push_back(pt(p));
        cj["points"] = pts;
        cj["triangles_touched"] = c.triangles_touched;
        cj["crossing_parity"] = c.crossing_parity;
        curves.push_back(cj);
    }
    j["curves"] = curves;
    nlohmann::ordered_json junctions = nlohmann::ordered_json::array();
    for (size_t i = 0; i < cx.junctions.size(); ++i)
        junctions.push_back({{"index", i}, {"point", pt(cx.junctions[i])}});
    j["junctions"] = junctions;
    j["isolated_points"] = cx.isolated_points;
    j["interior_endpoints"] = cx.interior_endpoints;
    j["structure_violation"] = cx.structure_violation();
    return j;
}

}  // namespace hplateau
