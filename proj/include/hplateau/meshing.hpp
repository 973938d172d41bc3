#pragma once

// Mesh generators: concentric-ring disks, spherical regions, icospheres,
// surfaces of revolution in cylindrical chart coordinates, and Tutte
// reference embeddings.

#include "delaunay.hpp"
#include "mesh.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

namespace hplateau {

// ---------------------------------------------------------------------------
// Concentric ring disk

/// Unit disk with `rings` concentric rings, ring i carrying 6i vertices. The
/// vertex count is 1 + 3 N (N + 1); the outer ring is the boundary loop (ccw).
inline PlanarMesh ring_disk_2d(int rings) {
    if (rings < 1) throw Error("ring_disk_2d: need at least one ring");
    PlanarMesh m;
    m.points.push_back(Point2::Zero());
    std::vector<int> first(rings + 1, 0);
    for (int i = 1; i <= rings; ++i) {
        first[i] = static_cast<int>(m.points.size());
        const double r = static_cast<double>(i) / rings;
        for (int j = 0; j < 6 * i; ++j) {
            const double a = 2.0 * kPi * j / (6.0 * i);
            m.points.emplace_back(r * std::cos(a), r * std::sin(a));
        }
    }
    for (int k = 0; k < 6; ++k) m.triangles.push_back({0, first[1] + k, first[1] + (k + 1) % 6});
    for (int i = 2; i <= rings; ++i) {
        const int no = 6 * i, ni = 6 * (i - 1);
        auto outer = [&](int j) { return first[i] + (j % no); };
        auto inner = [&](int j) { return first[i - 1] + (j % ni); };
        for (int s = 0; s < 6; ++s)
            for (int k = 0; k < i; ++k) {
                const int in_k = inner(s * (i - 1) + k);
                m.triangles.push_back({in_k, outer(s * i + k), outer(s * i + k + 1)});
                if (k < i - 1) m.triangles.push_back({in_k, outer(s * i + k + 1), inner(s * (i - 1) + k + 1)});
            }
    }
    return m;
}

inline int ring_vertex_count(int rings) { return 1 + 3 * rings * (rings + 1); }

/// Smallest ring count reaching `vertices`.
inline int rings_for_vertices(int vertices) {
    int n = 1;
    while (ring_vertex_count(n) < vertices) ++n;
    return n;
}

inline std::vector<int> ring_disk_boundary(int rings) {
    std::vector<int> loop;
    const int first = ring_vertex_count(rings - 1);
    for (int j = 0; j < 6 * rings; ++j) loop.push_back(first + j);
    return loop;
}

/// Planar unit disk in z = 0, normal +z.
inline TriangulatedDisk unit_disk_mesh(int rings) {
    PlanarMesh p = ring_disk_2d(rings);
    TriangulatedDisk d;
    for (const auto& q : p.points) d.vertices.emplace_back(q.x(), q.y(), 0.0);
    d.triangles = p.triangles;
    d.boundary_loop = ring_disk_boundary(rings);
    return d;
}

/// Orthonormal pair (e1, e2) with e1 x e2 = n.
inline std::pair<Vec3, Vec3> tangent_frame(const Vec3& n) {
    const Vec3 a = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    Vec3 e1 = (a - a.dot(n) * n).normalized();
    Vec3 e2 = n.cross(e1);
    return {e1, e2};
}

/// Spherical cap of the radius-`radius` sphere centred at the origin around
/// direction `pole`, covering polar angles up to `angular_radius`. The ring
/// disk is mapped conformally (stereographically); normals point out of the
/// sphere and the boundary loop runs ccw about `pole`.
inline TriangulatedDisk spherical_ring_cap(const Vec3& pole_dir, double angular_radius, int rings,
                                           double radius = 1.0) {
    const Vec3 pole = pole_dir.normalized();
    auto [e1, e2] = tangent_frame(pole);
    PlanarMesh p = ring_disk_2d(rings);
    const double t = std::tan(0.5 * angular_radius);
    TriangulatedDisk d;
    for (const auto& q : p.points) {
        const double rp = q.norm();
        const double phi = 2.0 * std::atan(rp * t);
        const double a = std::atan2(q.y(), q.x());
        const Vec3 dir = rp > 0 ? Vec3(std::cos(a) * e1 + std::sin(a) * e2) : Vec3::Zero();
        d.vertices.push_back(radius * (std::cos(phi) * pole + std::sin(phi) * dir));
    }
    d.triangles = p.triangles;
    d.boundary_loop = ring_disk_boundary(rings);
    return d;
}

// ---------------------------------------------------------------------------
// Stereographic frames and spherical regions

/// Stereographic projection of the unit sphere from pole q onto the plane
/// through the origin orthogonal to q, oriented so that the outward-normal
/// orientation of the sphere maps to the ccw orientation of the plane.
struct StereoFrame {
    Vec3 q, e1, e2;

    explicit StereoFrame(const Vec3& pole) : q(pole.normalized()) {
        auto [a, b] = tangent_frame(q);
        e1 = a;
        e2 = e1.cross(q);  // e1 x e2 = -q
    }
    Point2 project(const Point3& x) const {
        const Vec3 u = x.normalized();
        const double den = 1.0 - u.dot(q);
        return Point2(u.dot(e1), u.dot(e2)) / den;
    }
    Point3 lift(const Point2& w) const {
        const double n2 = w.squaredNorm();
        return (2.0 * w.x() * e1 + 2.0 * w.y() * e2 + (n2 - 1.0) * q) / (n2 + 1.0);
    }
    /// Plane length per unit sphere length at w.
    static double plane_per_sphere(const Point2& w) { return 0.5 * (1.0 + w.squaredNorm()); }
};

/// Area of the spherical region left of a closed polyline on the unit sphere
/// (viewed from outside), by the discrete Gauss-Bonnet turning sum.
inline double spherical_region_area(const std::vector<Point3>& loop) {
    const size_t n = loop.size();
    double turning = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec3 p = loop[(i + n - 1) % n].normalized(), c = loop[i].normalized(),
                   x = loop[(i + 1) % n].normalized();
        Vec3 tin = (c - p) - (c - p).dot(c) * c;
        Vec3 tout = (x - c) - (x - c).dot(c) * c;
        tin.normalize();
        tout.normalize();
        turning += std::atan2(c.dot(tin.cross(tout)), tin.dot(tout));
    }
    return 2.0 * kPi - turning;
}

/// Fibonacci lattice on the unit sphere.
inline std::vector<Vec3> fibonacci_sphere(int n) {
    std::vector<Vec3> pts;
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        pts.emplace_back(r * std::cos(ga * i), r * std::sin(ga * i), z);
    }
    return pts;
}

struct SphereRegionOptions {
    double h_max = 0.1;  // target spacing on the unit sphere away from the boundary
    PlanarMeshOptions planar;
};

/// Triangulates the region of the unit sphere lying left of `loops` (viewed
/// from outside). Boundary vertices are the loop samples, in order, at the
/// front of the vertex array and bit-identical to the input. Normals point out
/// of the sphere. The projection pole is picked in the complement, as far as
/// possible from the boundary.
inline TriangleMesh mesh_sphere_region(const std::vector<std::vector<Point3>>& loops,
                                       const SphereRegionOptions& opt) {
    std::vector<Point3> all;
    for (const auto& l : loops) all.insert(all.end(), l.begin(), l.end());
    double best = -1.0;
    Vec3 pole = Vec3::UnitZ();
    for (const Vec3& c : fibonacci_sphere(800)) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& p : all) dmin = std::min(dmin, (p.normalized() - c).norm());
        if (dmin <= best) continue;
        StereoFrame f(c);
        std::vector<Point2> outer;
        for (const auto& p : loops[0]) outer.push_back(f.project(p));
        // pole outside the region <=> outer loop maps to a ccw polygon enclosing the region
        if (polygon_signed_area(outer) <= 0.0) continue;
        bool holes_ok = true;
        for (size_t h = 1; h < loops.size() && holes_ok; ++h) {
            std::vector<Point2> hole;
            for (const auto& p : loops[h]) hole.push_back(f.project(p));
            holes_ok = polygon_signed_area(hole) < 0.0;
        }
        if (!holes_ok) continue;
        best = dmin;
        pole = c;
    }
    if (best < 0) throw Error("mesh_sphere_region: no admissible projection pole");
    StereoFrame frame(pole);
    std::vector<std::vector<Point2>> planar;
    for (const auto& l : loops) {
        std::vector<Point2> pl;
        for (const auto& p : l) pl.push_back(frame.project(p));
        planar.push_back(std::move(pl));
    }
    const double hm = opt.h_max;
    PlanarMesh pm = mesh_planar_region(
        planar, [&](const Point2& w) { return hm * StereoFrame::plane_per_sphere(w); }, opt.planar);
    TriangleMesh out;
    const int nb = static_cast<int>(all.size());
    for (int v = 0; v < static_cast<int>(pm.points.size()); ++v)
        out.vertices.push_back(v < nb ? all[v] : Point3(frame.lift(pm.points[v])));
    out.triangles = pm.triangles;
    return out;
}

// ---------------------------------------------------------------------------
// Icosphere

inline TriangleMesh icosphere(int subdivisions, double radius = 1.0) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    TriangleMesh m;
    m.vertices = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                  {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                   {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                   {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (auto& v : m.vertices) v = v.normalized();
    for (int s = 0; s < subdivisions; ++s) {
        std::unordered_map<std::uint64_t, int> mid;
        auto midpoint = [&](int a, int b) {
            auto k = edge_key(a, b);
            auto it = mid.find(k);
            if (it != mid.end()) return it->second;
            const int idx = m.num_vertices();
            m.vertices.push_back((0.5 * (m.vertices[a] + m.vertices[b])).normalized());
            mid[k] = idx;
            return idx;
        };
        std::vector<Tri> next;
        for (const Tri& f : m.triangles) {
            const int a = midpoint(f[0], f[1]), b = midpoint(f[1], f[2]), c = midpoint(f[2], f[0]);
            next.push_back({f[0], a, c});
            next.push_back({a, f[1], b});
            next.push_back({c, b, f[2]});
            next.push_back({a, b, c});
        }
        m.triangles = std::move(next);
    }
    for (auto& v : m.vertices) v *= radius;
    return m;
}

// ---------------------------------------------------------------------------
// Surfaces of revolution in chart coordinates (r, theta, t)

/// Splits each polyline segment into pieces no longer than `spacing`.
inline std::vector<Point2> subdivide_polyline(const std::vector<Point2>& pts, double spacing) {
    std::vector<Point2> out;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const int k = std::max(1, static_cast<int>(std::ceil((pts[i + 1] - pts[i]).norm() / spacing - 1e-9)));
        for (int j = 0; j < k; ++j) out.push_back(pts[i] + (pts[i + 1] - pts[i]) * (double(j) / k));
    }
    out.push_back(pts.back());
    return out;
}

/// Revolves a profile given as (r, t) pairs over theta in [0, 2 pi] with
/// `n_theta` angular segments. Vertices are chart points (r, theta, t); the
/// seam theta = 2 pi carries its own vertices. The chart normal is
/// d(profile)/ds x d/dtheta.
inline TriangleMesh revolve_profile(const std::vector<Point2>& profile, int n_theta) {
    TriangleMesh m;
    const int K = static_cast<int>(profile.size());
    for (int k = 0; k < K; ++k)
        for (int j = 0; j <= n_theta; ++j)
            m.vertices.emplace_back(profile[k].x(), 2.0 * kPi * j / n_theta, profile[k].y());
    auto id = [&](int k, int j) { return k * (n_theta + 1) + j; };
    for (int k = 0; k + 1 < K; ++k)
        for (int j = 0; j < n_theta; ++j) {
            const int a = id(k, j), b = id(k + 1, j), c = id(k + 1, j + 1), d = id(k, j + 1);
            m.triangles.push_back({a, b, c});
            m.triangles.push_back({a, c, d});
        }
    return m;
}

inline Point3 chart_to_cartesian(const Point3& c) {
    return Point3(c.x() * std::cos(c.y()), c.x() * std::sin(c.y()), c.z());
}

/// Maps a chart mesh to Cartesian space, merging seam and axis vertices and
/// dropping triangles that collapse.
inline TriangleMesh chart_mesh_to_cartesian(const TriangleMesh& chart, double weld_tol = 1e-10) {
    TriangleMesh m;
    for (const auto& c : chart.vertices) m.vertices.push_back(chart_to_cartesian(c));
    m.triangles = chart.triangles;
    return weld(m, weld_tol);
}

// ---------------------------------------------------------------------------
// Tutte embedding

/// Barycentric (uniform-weight) embedding of a disk into the unit disk with
/// the boundary placed by arc length. Triangles keep their orientation when
/// the boundary loop runs ccw with respect to them.
inline std::vector<Point2> tutte_embedding(const TriangulatedDisk& d) {
    const int n = d.num_vertices();
    const auto& loop = d.boundary_loop;
    if (loop.size() < 3) throw Error("tutte_embedding: boundary loop too short");
    std::vector<Point2> uv(n, Point2::Zero());
    std::vector<int> fixed(n, 0);
    double total = 0.0;
    std::vector<double> cum(loop.size() + 1, 0.0);
    for (size_t i = 0; i < loop.size(); ++i) {
        total += (d.vertices[loop[(i + 1) % loop.size()]] - d.vertices[loop[i]]).norm();
        cum[i + 1] = total;
    }
    for (size_t i = 0; i < loop.size(); ++i) {
        const double a = 2.0 * kPi * cum[i] / total;
        uv[loop[i]] = Point2(std::cos(a), std::sin(a));
        fixed[loop[i]] = 1;
    }
    std::vector<int> idx(n, -1);
    int m = 0;
    for (int v = 0; v < n; ++v)
        if (!fixed[v]) idx[v] = m++;
    if (m == 0) return uv;
    auto adj = vertex_neighbors(d);
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
    for (int v = 0; v < n; ++v) {
        if (fixed[v]) continue;
        trip.emplace_back(idx[v], idx[v], static_cast<double>(adj[v].size()));
        for (int w : adj[v]) {
            if (fixed[w]) rhs.row(idx[v]) += uv[w].transpose();
            else trip.emplace_back(idx[v], idx[w], -1.0);
        }
    }
    Eigen::SparseMatrix<double> A(m, m);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
    if (solver.info() != Eigen::Success) throw Error("tutte_embedding: factorization failed");
    Eigen::MatrixXd x = solver.solve(rhs);
    for (int v = 0; v < n; ++v)
        if (!fixed[v]) uv[v] = Point2(x(idx[v], 0), x(idx[v], 1));
    return uv;
}

}  // namespace hplateau
