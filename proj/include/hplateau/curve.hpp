#pragma once

// Jordan curves on the boundary sphere of a ball, with the two cap meshes
// they cut it into.

#include "meshing.hpp"

#include <fstream>

namespace hplateau {

enum class Side { Minus, Plus };

inline const char* side_name(Side s) { return s == Side::Minus ? "minus" : "plus"; }

/// Closed polyline on the sphere of radius `radius`, walked so that S- lies
/// on the left when seen from outside the ball. Both caps list the samples
/// first, in sample order, with bit-identical coordinates; cap normals point
/// out of the ball.
struct BoundaryCurve {
    std::string name;
    double radius = 1.0;
    std::vector<Point3> samples;
    TriangleMesh cap_minus;
    TriangleMesh cap_plus;

    int size() const { return static_cast<int>(samples.size()); }
    const TriangleMesh& cap(Side s) const { return s == Side::Minus ? cap_minus : cap_plus; }
    bool has_caps() const { return !cap_minus.triangles.empty() && !cap_plus.triangles.empty(); }
};

struct CurveCheck {
    double max_radial_error = 0.0;
    bool simple = false;
    bool caps_tile = false;  // S- and S+ glue into a closed sphere
    double cap_area_sum = 0.0;
    bool ok(double tol = 1e-9) const { return max_radial_error <= tol && simple && caps_tile; }
};

/// Largest-clearance direction among Fibonacci points.
inline Vec3 farthest_direction(const std::vector<Point3>& pts, int candidates = 400) {
    double best = -1.0;
    Vec3 dir = Vec3::UnitZ();
    for (const Vec3& c : fibonacci_sphere(candidates)) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) dmin = std::min(dmin, (p.normalized() - c).norm());
        if (dmin > best) { best = dmin; dir = c; }
    }
    return dir;
}

/// Simplicity of a spherical polyline, tested in a stereographic chart whose
/// pole is away from the curve.
inline bool spherical_polyline_is_simple(const std::vector<Point3>& loop) {
    StereoFrame f(farthest_direction(loop));
    std::vector<Point2> p;
    for (const auto& x : loop) p.push_back(f.project(x));
    return polyline_is_simple(p);
}

inline CurveCheck check_curve(const BoundaryCurve& c) {
    CurveCheck r;
    for (const auto& p : c.samples) r.max_radial_error = std::max(r.max_radial_error, std::abs(p.norm() - c.radius));
    r.simple = spherical_polyline_is_simple(c.samples);
    if (c.has_caps()) {
        const TriangleMesh both = concatenate({&c.cap_minus, &c.cap_plus});
        const TriangleMesh w = weld(both, 1e-12 * c.radius);
        auto rep = validate_mesh_topology(w, nullptr);
        r.caps_tile = rep.euler_characteristic == 2 && rep.boundary_cycles == 0 && rep.orientation_consistent &&
                      rep.manifold_edges;
        r.cap_area_sum = total_area(c.cap_minus) + total_area(c.cap_plus);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Cap helpers

/// Reorders a disk so that its boundary vertices come first, following
/// `order` (a cyclic list of the disk's boundary vertex indices).
inline TriangleMesh boundary_first(const TriangleMesh& m, const std::vector<int>& order) {
    std::vector<int> perm(m.vertices.size(), -1);
    int next = 0;
    for (int v : order) perm[v] = next++;
    for (int v = 0; v < m.num_vertices(); ++v)
        if (perm[v] < 0) perm[v] = next++;
    TriangleMesh out;
    out.vertices.resize(m.vertices.size());
    for (int v = 0; v < m.num_vertices(); ++v) out.vertices[perm[v]] = m.vertices[v];
    for (const Tri& f : m.triangles) out.triangles.push_back({perm[f[0]], perm[f[1]], perm[f[2]]});
    return out;
}

/// Replaces the first n vertices of `cap` by the nearest samples so both caps
/// share bit-identical boundary points, and reorders to sample order.
inline TriangleMesh snap_boundary_to_samples(const TriangleMesh& cap, const std::vector<int>& cap_loop,
                                             const std::vector<Point3>& samples) {
    const int n = static_cast<int>(samples.size());
    if (static_cast<int>(cap_loop.size()) != n) throw Error("cap boundary does not match the sample count");
    std::vector<int> order(n, -1);
    for (int v : cap_loop) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const double d = (cap.vertices[v] - samples[i]).squaredNorm();
            if (d < bd) { bd = d; best = i; }
        }
        if (order[best] >= 0) throw Error("cap boundary vertices do not match samples one-to-one");
        order[best] = v;
    }
    TriangleMesh out = boundary_first(cap, order);
    for (int i = 0; i < n; ++i) out.vertices[i] = samples[i];
    return out;
}

/// Target spacing on the unit sphere giving roughly `vertices` vertices over
/// a region of area `area`.
inline double spacing_for_vertices(double area, int vertices) {
    return std::sqrt(2.0 * area / (std::sqrt(3.0) * std::max(vertices, 10)));
}

// ---------------------------------------------------------------------------
// Builders

/// Latitude circle at height z0 on the sphere of radius R (z0 in units of R
/// divided out: |z0| < 1 on the unit sphere), S- below. `rings` rings for the
/// lower cap; the upper cap uses a ring count proportional to its size.
inline BoundaryCurve latitude_curve(double z0, int rings, double radius = 1.0) {
    if (!(std::abs(z0) < 1.0)) throw Error("latitude_curve: need |z0| < 1");
    BoundaryCurve c;
    c.name = concat("latitude:", z0);
    c.radius = radius;
    const double phi_minus = std::acos(-z0);  // polar angle from the south pole
    TriangulatedDisk lower = spherical_ring_cap(Vec3(0, 0, -1), phi_minus, rings, radius);
    c.samples.clear();
    for (int v : lower.boundary_loop) c.samples.push_back(lower.vertices[v]);
    c.cap_minus = boundary_first(lower, lower.boundary_loop);
    // Upper cap: same boundary angles (ring N), so the sample set matches.
    TriangulatedDisk upper = spherical_ring_cap(Vec3(0, 0, 1), kPi - phi_minus, rings, radius);
    c.cap_plus = snap_boundary_to_samples(upper, upper.boundary_loop, c.samples);
    return c;
}

/// Curve from ordered samples (S- on the left), caps meshed on the sphere.
/// `cap_vertices` sets the target vertex count of each cap away from the
/// curve; caps are finer where the samples are denser.
inline BoundaryCurve curve_from_samples(std::string name, std::vector<Point3> samples, double radius,
                                        int cap_vertices, const PlanarMeshOptions& popt = {}) {
    BoundaryCurve c;
    c.name = std::move(name);
    c.radius = radius;
    for (auto& p : samples) p = radius * p.normalized();
    c.samples = samples;
    std::vector<Point3> unit;
    for (const auto& p : samples) unit.push_back(p / radius);
    const double area = spherical_region_area(unit);
    SphereRegionOptions opt;
    opt.h_max = spacing_for_vertices(area, cap_vertices);
    opt.planar = popt;
    TriangleMesh minus = mesh_sphere_region({unit}, opt);
    std::vector<Point3> rev(unit.rbegin(), unit.rend());
    opt.h_max = spacing_for_vertices(4.0 * kPi - area, cap_vertices);
    TriangleMesh plus = mesh_sphere_region({rev}, opt);
    const int n = static_cast<int>(unit.size());
    for (auto& p : minus.vertices) p *= radius;
    for (auto& p : plus.vertices) p *= radius;
    for (int i = 0; i < n; ++i) minus.vertices[i] = samples[i];
    // plus lists the reversed samples first; put them in sample order
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = n - 1 - i;
    plus = boundary_first(plus, order);
    for (int i = 0; i < n; ++i) plus.vertices[i] = samples[i];
    c.cap_minus = std::move(minus);
    c.cap_plus = std::move(plus);
    return c;
}

/// Resamples a chain of polyline pieces (each densely sampled, consecutive
/// pieces sharing endpoints) with local spacing `size(p)`. Piece endpoints
/// are kept as samples. The result is a closed loop without repeated ends.
inline std::vector<Point3> resample_pieces(const std::vector<std::vector<Point3>>& pieces,
                                           const std::function<double(const Point3&)>& size) {
    std::vector<Point3> out;
    for (const auto& piece : pieces) {
        // integral of 1/size along the piece
        std::vector<double> acc{0.0};
        for (size_t i = 0; i + 1 < piece.size(); ++i) {
            const Point3 mid = 0.5 * (piece[i] + piece[i + 1]);
            acc.push_back(acc.back() + (piece[i + 1] - piece[i]).norm() / size(mid));
        }
        const int k = std::max(1, static_cast<int>(std::lround(acc.back())));
        out.push_back(piece.front());
        size_t seg = 0;
        for (int j = 1; j < k; ++j) {
            const double target = acc.back() * j / k;
            while (seg + 1 < acc.size() - 1 && acc[seg + 1] < target) ++seg;
            const double t = (target - acc[seg]) / std::max(acc[seg + 1] - acc[seg], 1e-300);
            out.push_back(piece[seg] + t * (piece[seg + 1] - piece[seg]));
        }
    }
    for (auto& p : out) p.normalize();
    return out;
}

// ---------------------------------------------------------------------------
// File format: "hpcurve 1" then one "p x y z" line per sample.

inline std::vector<Point3> read_hpcurve(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "hpcurve 1") throw Error("hpcurve: bad header");
    std::vector<Point3> pts;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag, xs, ys, zs, rest;
        ls >> tag;
        if (tag != "p" || !(ls >> xs >> ys >> zs) || (ls >> rest))
            throw Error(concat("hpcurve: bad line ", lineno));
        Point3 p(std::strtod(xs.c_str(), nullptr), std::strtod(ys.c_str(), nullptr),
                 std::strtod(zs.c_str(), nullptr));
        if (!all_finite(p)) throw Error(concat("hpcurve: non-finite point at line ", lineno));
        pts.push_back(p);
    }
    if (pts.size() < 3) throw Error("hpcurve: need at least 3 points");
    return pts;
}

inline void write_hpcurve(std::ostream& os, const std::vector<Point3>& pts) {
    os << "hpcurve 1\n";
    char buf[128];
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof buf, "p %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
        os << buf;
    }
}

inline std::vector<Point3> load_hpcurve(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot read " + path);
    return read_hpcurve(is);
}

}  // namespace hplateau
