#pragma once

// Analytic reference solutions and explicit constructions: spherical caps,
// the straight and slanted cylinder families in the modified cylinder, and
// the bridged and balloon curves on the unit sphere, and surgery fixtures.

#include "surgery.hpp"

namespace hplateau {

// ---------------------------------------------------------------------------
// Spherical caps

/// Closed-form H-disk spanning the latitude circle at height z0 (radius rho)
/// of the unit sphere, bulging into the enclosed side.
struct CapSolution {
    double z0 = 0.0, rho = 1.0, H = 0.0;
    Side side = Side::Minus;
    double R = std::numeric_limits<double>::infinity();  // cap sphere radius 1/H
    double center_offset = std::numeric_limits<double>::infinity();  // signed, from the circle plane
    double area = 0.0;
    double segment_volume = 0.0;  // between the cap and the flat disk
    double enclosed_volume = 0.0;  // between the cap and the chosen side of the sphere
    double sagitta = 0.0;
    TriangulatedDisk mesh;
};

/// Ball segment of the unit sphere with height h.
inline double unit_ball_segment(double h) { return kPi * h * h * (3.0 - h) / 3.0; }

inline CapSolution spherical_cap(double z0, double rho, double H, int resolution, Side side = Side::Minus) {
    if (std::abs(z0 * z0 + rho * rho - 1.0) > 1e-9) throw Error("spherical_cap: circle must lie on the unit sphere");
    if (!(H >= 0.0)) throw Error("spherical_cap: H must be nonnegative");
    if (H * rho > 1.0 + 1e-12) throw Error("cap sphere cannot span circle");
    CapSolution c;
    c.z0 = z0;
    c.rho = rho;
    c.H = H;
    c.side = side;
    const double down = side == Side::Minus ? -1.0 : 1.0;  // bulge direction along z
    const int rings = rings_for_vertices(resolution);
    if (H == 0.0) {
        c.area = kPi * rho * rho;
        c.mesh = unit_disk_mesh(rings);
        for (auto& p : c.mesh.vertices) p = Point3(rho * p.x(), rho * p.y(), z0);
    } else {
        c.R = 1.0 / H;
        const double s = std::sqrt(std::max(0.0, c.R * c.R - rho * rho));
        c.center_offset = -down * s;
        c.sagitta = rho * rho / (c.R + s);
        c.area = 2.0 * kPi * c.R * c.sagitta;
        c.segment_volume = kPi * c.sagitta * c.sagitta * (3.0 * c.R - c.sagitta) / 3.0;
        const double ang = std::asin(std::min(1.0, rho / c.R));
        c.mesh = spherical_ring_cap(Vec3(0, 0, down), ang, rings, c.R);
        const Vec3 center(0, 0, z0 + c.center_offset);
        for (auto& p : c.mesh.vertices) p += center;
    }
    const double side_height = side == Side::Minus ? 1.0 + z0 : 1.0 - z0;
    c.enclosed_volume = unit_ball_segment(side_height) - c.segment_volume;
    // normals away from the enclosed side
    Vec3 a = Vec3::Zero();
    for (int t = 0; t < c.mesh.num_triangles(); ++t) a += triangle_area_vector(c.mesh, t);
    if (a.z() * (-down) < 0.0) c.mesh = reversed(c.mesh);
    return c;
}

// ---------------------------------------------------------------------------
// Cylinder families in the modified cylinder

/// Cuts every interior corner of a polyline by `c` along both sides.
inline std::vector<Point2> chamfer_corners(const std::vector<Point2>& pts, double c) {
    std::vector<Point2> out{pts.front()};
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
        const Point2 a = (pts[i - 1] - pts[i]).normalized(), b = (pts[i + 1] - pts[i]).normalized();
        if (std::abs(a.x() * b.y() - a.y() * b.x()) < 1e-12) { out.push_back(pts[i]); continue; }
        out.push_back(pts[i] + c * a);
        out.push_back(pts[i] + c * b);
    }
    out.push_back(pts.back());
    return out;
}

struct FamilyResolution {
    double spacing = 0.025;  // along the profile
    int n_theta = 96;
    double chamfer = 0.02;
};

/// E_n (or its slanted variant) in chart coordinates (r, theta, t).
struct CounterexampleFamily {
    int n = 1;
    double eps = 0.05;
    double delta = 0.0;
    std::vector<Point2> profile;  // (r, t), chamfered, from the outer rim to the axis
    TriangleMesh surface;          // E_n: annulus, wall and bottom
    TriangleMesh annulus, wall, bottom;
    TriangleMesh solid_boundary;   // closed boundary of the solid under E_n, outward
    double area = 0.0;             // |E_n| under the blended metric
    double volume = 0.0;           // volume of the solid under E_n
    double H = 0.0;
    double i_hat = 0.0;            // |E_n| - 2 H ||Delta_n||
    double c0 = 0.0;               // i_hat - 2 pi n (1 - H)
};

namespace detail {

inline TriangleMesh revolve_piece(std::vector<Point2> piece, const FamilyResolution& res) {
    return revolve_profile(subdivide_polyline(piece, res.spacing), res.n_theta);
}

/// Straight family for delta = 0; otherwise the wall runs from
/// (1 - delta, -n + delta) to (1 + delta, 0).
inline CounterexampleFamily build_family(int n, double eps, double delta, double H, const FamilyResolution& res) {
    if (n < 1) throw Error("counterexample family: n must be at least 1");
    CounterexampleFamily f;
    f.n = n;
    f.eps = eps;
    f.delta = delta;
    f.H = H;
    const double rtop = 1.0 + delta, rbot = 1.0 - delta, tbot = -n + delta;
    const double rim = AmbientDomain::ModifiedCylinderRadius;
    const std::vector<Point2> corners{{rim, 0.0}, {rtop, 0.0}, {rbot, tbot}, {0.0, tbot}};
    f.profile = chamfer_corners(corners, res.chamfer);
    f.surface = revolve_piece(f.profile, res);
    f.annulus = revolve_piece({corners[0], corners[1]}, res);
    f.wall = revolve_piece({corners[1], corners[2]}, res);
    f.bottom = revolve_piece({corners[2], corners[3]}, res);
    // solid: close E_n minus the annulus with the flat top through the axis
    std::vector<Point2> solid{{0.0, 0.0}};
    solid.insert(solid.end(), f.profile.begin() + 1, f.profile.end());
    f.solid_boundary = revolve_piece(solid, res);

    const MetricField metric = MetricField::blended_cylinder(eps);
    f.area = surface_area(f.surface, metric, QuadratureOrder::Degree5);
    TriangulatedDisk shell;
    shell.vertices = f.solid_boundary.vertices;
    shell.triangles = f.solid_boundary.triangles;
    EnclosureRegion region = make_enclosure(shell, TriangleMesh{}, MetricField::Chart::Cylindrical);
    f.volume = oriented_enclosed_volume(region, metric);
    f.i_hat = f.area - 2.0 * H * f.volume;
    f.c0 = f.i_hat - 2.0 * kPi * n * (1.0 - H);
    return f;
}

}  // namespace detail

inline CounterexampleFamily straight_family(int n, double eps, double H, const FamilyResolution& res = {}) {
    return detail::build_family(n, eps, 0.0, H, res);
}

inline CounterexampleFamily slanted_family(int n, double delta, double H, double eps = 0.05,
                                           const FamilyResolution& res = {}) {
    if (!(delta > 0.0 && delta < 0.25)) throw Error("slanted_family: need 0 < delta < 1/4");
    return detail::build_family(n, eps, delta, H, res);
}

/// E_n as a disk in Cartesian space.
inline TriangulatedDisk family_disk(const CounterexampleFamily& f) {
    return make_disk(chart_mesh_to_cartesian(f.surface));
}

struct SlopeFit {
    double slope = 0.0, intercept = 0.0;
    double max_residual = 0.0;  // of the affine fit
};

inline SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t m = x.size();
    if (m < 2 || y.size() != m) throw Error("fit_line: need at least two points");
    double mx = 0, my = 0;
    for (size_t i = 0; i < m; ++i) { mx += x[i]; my += y[i]; }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (size_t i = 0; i < m; ++i) f.max_residual = std::max(f.max_residual, std::abs(y[i] - f.intercept - f.slope * x[i]));
    return f;
}

struct CounterexampleSweep {
    double H = 0.0, eps = 0.05, delta = 0.0;
    std::vector<int> n;
    std::vector<double> i_hat;       // one per n
    std::vector<double> differences;  // i_hat(n) - i_hat(1)
    std::vector<double> c0;
    SlopeFit fit;
    double expected_slope = 0.0;      // 2 pi (1 - H)
};

/// I_hat(E_n) for n = 1..n_max and the affine fit in n. Areas and volumes
/// do not depend on H, so one family per n serves every H.
inline std::vector<CounterexampleSweep> counterexample_sweep(const std::vector<double>& Hs, int n_max, double eps = 0.05,
                                                             double delta = 0.0, const FamilyResolution& res = {}) {
    if (n_max < 2) throw Error("counterexample sweep: need n_max >= 2");
    std::vector<CounterexampleSweep> out(Hs.size());
    for (size_t k = 0; k < Hs.size(); ++k) {
        if (!(Hs[k] > 0.0 && Hs[k] < 2.0)) throw Error("counterexample: H must lie in (0, 2)");
        out[k].H = Hs[k];
        out[k].eps = eps;
        out[k].delta = delta;
        out[k].expected_slope = 2.0 * kPi * (1.0 - Hs[k]);
    }
    for (int n = 1; n <= n_max; ++n) {
        const CounterexampleFamily f = detail::build_family(n, eps, delta, 0.0, res);
        for (auto& s : out) {
            s.n.push_back(n);
            s.i_hat.push_back(f.area - 2.0 * s.H * f.volume);
            s.c0.push_back(s.i_hat.back() - 2.0 * kPi * n * (1.0 - s.H));
        }
    }
    for (auto& s : out) {
        std::vector<double> x;
        for (size_t i = 0; i < s.n.size(); ++i) {
            x.push_back(s.n[i]);
            s.differences.push_back(s.i_hat[i] - s.i_hat[0]);
        }
        s.fit = fit_line(x, s.differences);
    }
    return out;
}

/// Single-n evaluation: the family and its I_hat.
inline std::pair<CounterexampleFamily, double> counterexample_energy(int n, double eps, double H,
                                                                     const FamilyResolution& res = {}) {
    if (!(H > 0.0 && H < 2.0)) throw Error("counterexample: H must lie in (0, 2)");
    CounterexampleFamily f = straight_family(n, eps, H, res);
    return {f, f.i_hat};
}

/// Union of E_n and its translate by `shift` along the axis, in Cartesian
/// space, checked for intersections.
inline SelfIntersectionComplex translate_union_intersections(const CounterexampleFamily& f, double shift = 1.0) {
    TriangleMesh a = chart_mesh_to_cartesian(f.surface);
    TriangleMesh b = a;
    for (auto& p : b.vertices) p.z() += shift;
    return self_intersections(concatenate({&a, &b}));
}

// ---------------------------------------------------------------------------
// Curves on the unit sphere

/// Dense polyline along the latitude z = z0 from longitude a to b.
inline std::vector<Point3> latitude_arc(double z0, double a, double b, int samples = 2000) {
    const double r = std::sqrt(1.0 - z0 * z0);
    std::vector<Point3> out;
    for (int i = 0; i <= samples; ++i) {
        const double t = a + (b - a) * i / samples;
        out.emplace_back(r * std::cos(t), r * std::sin(t), z0);
    }
    return out;
}

/// Dense polyline along the meridian at longitude th from height za to zb.
inline std::vector<Point3> meridian_arc(double th, double za, double zb, int samples = 400) {
    std::vector<Point3> out;
    for (int i = 0; i <= samples; ++i) {
        const double z = za + (zb - za) * i / samples;
        const double r = std::sqrt(1.0 - z * z);
        out.emplace_back(r * std::cos(th), r * std::sin(th), z);
    }
    return out;
}

struct Gamma1Params {
    double z = 0.1;        // circles at +-z
    double width = 0.05;   // bridge width (longitude)
    int cap_vertices = 2000;
    double spacing = 0.03;  // sample spacing along the curve
};

/// Two latitude circles near the equator joined by a bridge at longitude 0.
/// S- is the band between them minus the bridge strip.
inline BoundaryCurve gamma1_curve(const Gamma1Params& p = {}) {
    if (!(p.z > 0.0 && p.z < 1.0)) throw Error("gamma1: circle height must lie in (0, 1)");
    if (!(p.width > 0.0 && p.width < kPi)) throw Error("gamma1: bridge width out of range");
    const double w = 0.5 * p.width;
    std::vector<std::vector<Point3>> pieces{
        latitude_arc(p.z, -w, w - 2.0 * kPi),
        meridian_arc(w, p.z, -p.z),
        latitude_arc(-p.z, w, 2.0 * kPi - w),
        meridian_arc(-w, -p.z, p.z),
    };
    const double h = p.spacing;
    auto samples = resample_pieces(pieces, [h](const Point3&) { return h; });
    return curve_from_samples(concat("gamma1_bridge:", p.z, ",", p.width), samples, 1.0, p.cap_vertices);
}

struct Gamma2Params {
    double beta0 = 0.45;   // balloon longitude offset along the great circle
    double s0 = 0.55;      // balloon centre latitude off the great circle
    double radius = 0.3;   // balloon radius
    double neck = 0.08;    // neck half-width
    int cap_vertices = 2000;
    double spacing = 0.04;
    double neck_spacing = 0.025;
};

/// Point with chart coordinates (beta, s): beta along the great circle
/// through x and z, s off it towards +y.
inline Point3 gamma2_chart(double beta, double s) {
    return Point3(std::cos(s) * std::cos(beta), std::sin(s), std::cos(s) * std::sin(beta));
}

/// Great circle in the x-z plane with four balloons: two towards +y at
/// beta = +-beta0 (fingers of S-), two towards -y at beta = pi +- beta0
/// (fingers of S+). Symmetric under z -> -z.
inline BoundaryCurve gamma2_curve(const Gamma2Params& p = {}) {
    const double a = p.radius, nk = p.neck;
    if (!(nk < a && a < p.s0 && p.s0 + a < 0.5 * kPi)) throw Error("gamma2: balloon parameters out of range");
    if (!(p.beta0 - a > 0.0 && p.beta0 + a < 0.5 * kPi)) throw Error("gamma2: balloons overlap");
    const double sneck = p.s0 - std::sqrt(a * a - nk * nk);  // where the neck meets the circle
    const double phi = std::asin(nk / a);
    auto chart_line = [](Point2 u, Point2 v, int m = 200) {
        std::vector<Point3> out;
        for (int i = 0; i <= m; ++i) {
            const Point2 q = u + (v - u) * (double(i) / m);
            out.push_back(gamma2_chart(q.x(), q.y()));
        }
        return out;
    };
    // chart circle from the left neck end round the far side; up balloons
    // run clockwise, down balloons counterclockwise
    auto balloon = [&](double bc, bool up) {
        std::vector<Point3> out;
        const int m = 600;
        const double sc0 = up ? p.s0 : -p.s0;
        const double start = up ? -0.5 * kPi - phi : 0.5 * kPi + phi;
        const double span = (up ? -1.0 : 1.0) * (2.0 * kPi - 2.0 * phi);
        for (int i = 0; i <= m; ++i) {
            const double t = start + span * i / m;
            out.push_back(gamma2_chart(bc + a * std::cos(t), sc0 + a * std::sin(t)));
        }
        return out;
    };
    std::vector<std::vector<Point3>> half;
    const double b1 = p.beta0, b2 = kPi - p.beta0;
    half.push_back(chart_line({0.0, 0.0}, {b1 - nk, 0.0}));
    half.push_back(chart_line({b1 - nk, 0.0}, {b1 - nk, sneck}));
    half.push_back(balloon(b1, true));
    half.push_back(chart_line({b1 + nk, sneck}, {b1 + nk, 0.0}));
    half.push_back(chart_line({b1 + nk, 0.0}, {b2 - nk, 0.0}));
    half.push_back(chart_line({b2 - nk, 0.0}, {b2 - nk, -sneck}));
    half.push_back(balloon(b2, false));
    half.push_back(chart_line({b2 + nk, -sneck}, {b2 + nk, 0.0}));
    half.push_back(chart_line({b2 + nk, 0.0}, {kPi, 0.0}));
    const double hn = p.neck_spacing, hf = p.spacing;
    const double ry = std::sin(sneck + 0.05);
    auto size = [&](const Point3& q) { return std::abs(q.y()) < ry ? hn : hf; };
    std::vector<Point3> h = resample_pieces(half, size);
    h.push_back(gamma2_chart(kPi, 0.0));
    // exact symmetry: the second half is the mirror image walked back
    std::vector<Point3> samples(h.begin(), h.end());
    for (size_t i = h.size() - 2; i >= 1; --i) samples.emplace_back(h[i].x(), h[i].y(), -h[i].z());
    // pin the great-circle crossings onto z = 0
    samples[0].z() = 0.0;
    samples[h.size() - 1].z() = 0.0;
    return curve_from_samples("gamma2_symmetric", samples, 1.0, p.cap_vertices);
}

/// Latitude circle of radius rho on the unit sphere above the equator.
inline BoundaryCurve circle_curve(double rho, int rings = 26) {
    if (!(rho > 0.0 && rho <= 1.0)) throw Error("circle radius must lie in (0, 1]");
    BoundaryCurve c = latitude_curve(std::sqrt(std::max(0.0, 1.0 - rho * rho)), rings);
    c.name = concat("circle:", rho);
    return c;
}

// ---------------------------------------------------------------------------
// Bridged caps: a non-embedded disk spanning the bridged circles

struct BridgedCapsParams {
    double z = 0.1;
    double width = 0.05;
    double H = 0.5;
    int rings = 24;
    int strip_rows = 8;
    bool matched_ring = false;  // put a ring of both caps exactly on their crossing circle
};

struct BridgedCaps {
    TriangulatedDisk disk;
    std::vector<int> loop_plus, loop_minus;  // crossing loops when matched_ring
    int plus_offset = 0, minus_offset = 0;
    int matched = -1;                        // ring index of the crossing circle
};

/// Upper cap spans the circle at +z and bulges down, the lower one spans
/// -z and bulges up, so the mean curvature vectors point opposite ways and
/// the caps cross; a strip on the sphere joins them at longitude 0.
inline BridgedCaps bridged_caps_fixture(const BridgedCapsParams& p = {}) {
    const double z = p.z, R = 1.0 / p.H, rho = std::sqrt(1.0 - z * z);
    if (!(R >= rho)) throw Error("bridged caps: cap sphere cannot span circle");
    const double cz = z + std::sqrt(R * R - rho * rho);  // centre of the upper cap sphere
    const double sag = R - (cz - z);
    if (2.0 * sag <= 2.0 * z) throw Error("bridged caps: caps do not cross");
    const double phimax = std::asin(rho / R);
    const double rstar = std::sqrt(R * R - cz * cz);
    const double phistar = std::asin(rstar / R);
    const int N = p.rings;
    const int kstar = p.matched_ring ? std::clamp(static_cast<int>(std::lround(N * phistar / phimax)), 2, N - 2) : -1;
    const double w = 0.5 * p.width;

    PlanarMesh pm = ring_disk_2d(N);
    auto ring_of = [&](const Point2& q) { return static_cast<int>(std::lround(q.norm() * N)); };
    auto cap = [&](double sgn, double rot) {
        TriangleMesh m;
        for (const auto& q : pm.points) {
            const int i = ring_of(q);
            double phi;
            if (kstar > 0) phi = i <= kstar ? phistar * i / kstar : phistar + (phimax - phistar) * (i - kstar) / (N - kstar);
            else phi = phimax * i / N;
            double th = std::atan2(q.y(), q.x()) + rot;
            if (i == N) {
                // outer ring: snap the bridge ends to +-w
                double d = std::remainder(th, 2.0 * kPi);
                if (std::abs(d) < 0.5 * 2.0 * kPi / (6.0 * N) + w && std::abs(d) > 1e-12) d = d > 0 ? w : -w;
                th = d;
            }
            const double r = R * std::sin(phi);
            double zz = cz - R * std::cos(phi);
            if (i == N) zz = z;
            if (i == kstar) zz = 0.0;
            m.vertices.emplace_back(r * std::cos(th), r * std::sin(th), sgn * zz);
        }
        if (kstar < 0) {
            for (int v = 0; v < m.num_vertices(); ++v)
                if (ring_of(pm.points[v]) == N) m.vertices[v] = Point3(m.vertices[v] * (1.0 / m.vertices[v].norm()));
        }
        m.triangles = pm.triangles;
        return m;
    };
    const double rot = kstar > 0 ? 0.0 : kPi / (6.0 * N) * 0.5;
    TriangleMesh up = cap(1.0, 0.0), dn = cap(-1.0, rot);
    // undo the rotation on the outer ring ends so the strip meets them
    const int nv = up.num_vertices();
    BridgedCaps out;
    out.plus_offset = 0;
    out.minus_offset = nv;
    TriangleMesh all = concatenate({&up, &dn});
    // bridge arcs: outer-ring vertices with |longitude| <= w, sorted by longitude
    auto arc = [&](int off) {
        std::vector<std::pair<double, int>> a;
        const int first = ring_vertex_count(N - 1);
        for (int j = 0; j < 6 * N; ++j) {
            const Point3& q = all.vertices[off + first + j];
            const double th = std::atan2(q.y(), q.x());
            if (std::abs(th) <= w + 1e-12) a.emplace_back(th, off + first + j);
        }
        std::sort(a.begin(), a.end());
        return a;
    };
    auto top = arc(0), bot = arc(nv);
    if (top.size() < 2 || bot.size() < 2) throw Error("bridged caps: bridge narrower than the mesh spacing");
    // strip rows between the arcs on the sphere
    const int rows = p.strip_rows;
    std::vector<std::vector<int>> grid(rows + 1);
    for (auto& [th, v] : top) grid[0].push_back(v);
    for (auto& [th, v] : bot) grid[rows].push_back(v);
    const int cols = 3;  // longitudes -w, 0, w on interior rows
    for (int r = 1; r < rows; ++r) {
        const double zz = z - 2.0 * z * r / rows;
        const double rr = std::sqrt(1.0 - zz * zz);
        for (int c = 0; c < cols; ++c) {
            const double th = -w + 2.0 * w * c / (cols - 1);
            grid[r].push_back(all.num_vertices());
            all.vertices.emplace_back(rr * std::cos(th), rr * std::sin(th), zz);
        }
    }
    // triangulate consecutive rows with a merge along longitude order
    auto lon = [&](int v) { return std::atan2(all.vertices[v].y(), all.vertices[v].x()); };
    for (int r = 0; r < rows; ++r) {
        const auto &A = grid[r], &B = grid[r + 1];
        size_t i = 0, j = 0;
        while (i + 1 < A.size() || j + 1 < B.size()) {
            const bool advA = j + 1 >= B.size() || (i + 1 < A.size() && lon(A[i + 1]) <= lon(B[j + 1]));
            if (advA) { all.triangles.push_back({A[i], B[j], A[i + 1]}); ++i; }
            else { all.triangles.push_back({A[i], B[j], B[j + 1]}); ++j; }
        }
    }
    orient_consistently(all);
    out.disk = make_disk(all);
    if (kstar > 0) {
        const int first = ring_vertex_count(kstar - 1);
        for (int j = 0; j < 6 * kstar; ++j) {
            out.loop_plus.push_back(first + j);
            out.loop_minus.push_back(nv + first + j);
        }
        out.matched = kstar;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Crease fixtures for surgery

/// Strip of the annulus 0.5 <= r <= 1.5 wound once plus an overlap of
/// angle beta, parameterized by the reference rectangle (theta, r). On the
/// two overlapping layers the height is +b and -b, with the bump
/// b(d) = h (1 - d^2/a^2) exp(-d^2/a^2) around the layer centres; the layers
/// cross exactly along the circles d = a, which bound two reference subdisks
/// meshed identically. Swapping those subdisks leaves a ridge along each
/// circle.
struct CreaseParams {
    double beta = 1.2;
    double a = 0.35;
    double h = 0.15;
    int hole_rings = 12;
    double spacing = 0.05;
    Point3 apex{0.0, 0.0, -1.0};
};

struct CreaseFixture {
    ReferenceMap map;
    std::vector<int> loop_plus, loop_minus;
    EnclosureRegion region;
};

inline CreaseFixture crease_fixture(const CreaseParams& p = {}) {
    const double L = 2.0 * kPi + p.beta;
    const Point2 c1(p.beta / 2.0, 1.0), c2(p.beta / 2.0 + 2.0 * kPi, 1.0);

    std::vector<Point2> outer = subdivide_polyline(
        {{0.0, 0.5}, {L, 0.5}, {L, 1.5}, {0.0, 1.5}, {0.0, 0.5}}, p.spacing);
    outer.pop_back();
    const PlanarMesh disk = ring_disk_2d(p.hole_rings);
    const std::vector<int> ring = ring_disk_boundary(p.hole_rings);
    const int m = static_cast<int>(ring.size());
    auto hole_loop = [&](const Point2& c) {
        std::vector<Point2> l;
        for (int k = 0; k < m; ++k) l.push_back(c + p.a * disk.points[ring[m - 1 - k]]);
        return l;
    };
    const PlanarMesh region = mesh_planar_region({outer, hole_loop(c1), hole_loop(c2)},
                                                 [&](const Point2&) { return p.spacing; });

    const int n0 = static_cast<int>(outer.size());
    const int first_ring = ring.front();
    CreaseFixture f;
    ReferenceMap& u = f.map;
    u.reference = region.points;
    u.triangles = region.triangles;
    for (int i = 0; i < n0; ++i) u.boundary_loop.push_back(i);

    auto bump = [&](double d) {
        const double q = d * d / (p.a * p.a);
        return p.h * (1.0 - q) * std::exp(-q);
    };
    auto sign = [&](double x) {
        if (x <= p.beta) return 1.0;
        if (x >= 2.0 * kPi) return -1.0;
        return 1.0 - 2.0 * smoothstep5((x - p.beta) / (2.0 * kPi - p.beta));
    };
    auto place = [](double phi, double r, double z) { return Point3(r * std::cos(phi), r * std::sin(phi), z); };

    u.image.resize(u.reference.size());
    for (size_t v = 0; v < u.reference.size(); ++v) {
        const Point2& q = u.reference[v];
        const double d = std::min((q - c1).norm(), (q - c2).norm());
        u.image[v] = place(q.x(), q.y(), sign(q.x()) * bump(d));
    }

    // both subdisks share local coordinates so matched vertices coincide bit for bit
    for (int layer = 0; layer < 2; ++layer) {
        const Point2& cref = layer == 0 ? c1 : c2;
        const double s = layer == 0 ? 1.0 : -1.0;
        std::vector<int> idx(disk.points.size(), -1);
        for (int k = 0; k < m; ++k) idx[ring[m - 1 - k]] = n0 + layer * m + k;
        for (int v = 0; v < first_ring; ++v) {
            idx[v] = static_cast<int>(u.reference.size());
            u.reference.push_back(cref + p.a * disk.points[v]);
            u.image.push_back(Point3::Zero());
        }
        for (size_t v = 0; v < disk.points.size(); ++v) {
            const Point2 off = p.a * disk.points[v];
            const double z = v >= static_cast<size_t>(first_ring) ? 0.0 : s * bump(off.norm());
            u.image[idx[v]] = place(c1.x() + off.x(), c1.y() + off.y(), z);
        }
        for (const Tri& t : disk.triangles) u.triangles.push_back({idx[t[0]], idx[t[1]], idx[t[2]]});
        auto& loop = layer == 0 ? f.loop_plus : f.loop_minus;
        for (int k = 0; k < m; ++k) loop.push_back(idx[ring[k]]);
    }
    validate_reference(u);
    TriangulatedDisk img = u.image_disk();
    f.region = make_enclosure(img, fan_cap(img, p.apex));
    return f;
}

/// Unit disk folded along the diameter x = 0 into the tent
/// z = t (sqrt(1 - y^2) - |x|); the boundary circle stays in z = 0. The
/// diameter is a chain of mesh edges, returned as `fold` from y = -1 to 1.
struct TentFixture {
    ReferenceMap map;
    std::vector<int> fold;
    EnclosureRegion region;
    double flat_area = 0.0;
};

inline TentFixture tent_fixture(double t = 0.1, double spacing = 0.05) {
    const int nd = std::max(2, static_cast<int>(std::ceil(2.0 / spacing)));
    const int na = std::max(2, static_cast<int>(std::ceil(kPi / spacing)));
    std::vector<Point2> diam;  // from (0,-1) to (0,1)
    for (int k = 0; k <= nd; ++k) diam.emplace_back(0.0, -1.0 + 2.0 * k / nd);
    auto arc = [&](double a0, double a1) {
        std::vector<Point2> out;
        for (int k = 1; k < na; ++k) {
            const double a = a0 + (a1 - a0) * k / na;
            out.emplace_back(std::cos(a), std::sin(a));
        }
        return out;
    };
    // right half: up the arc, down the diameter; left half: up the diameter, down the arc
    std::vector<Point2> right{diam.front()};
    for (auto& q : arc(-kPi / 2, kPi / 2)) right.push_back(q);
    for (int k = nd; k > 0; --k) right.push_back(diam[k]);
    std::vector<Point2> left(diam.begin(), diam.end());
    for (auto& q : arc(kPi / 2, 3 * kPi / 2)) left.push_back(q);

    auto hmax = [&](const Point2&) { return spacing; };
    const PlanarMesh R = mesh_planar_region({right}, hmax);
    const PlanarMesh Lm = mesh_planar_region({left}, hmax);

    TentFixture f;
    ReferenceMap& u = f.map;
    u.reference = R.points;
    u.triangles = R.triangles;
    // right loop: diam[0], arc (na-1), diam[nd..1]
    auto right_index_of_diam = [&](int k) { return k == 0 ? 0 : na + (nd - k); };
    std::vector<int> idx(Lm.points.size(), -1);
    for (int k = 0; k <= nd; ++k) idx[k] = right_index_of_diam(k);
    for (size_t v = nd + 1; v < Lm.points.size(); ++v) {
        idx[v] = static_cast<int>(u.reference.size());
        u.reference.push_back(Lm.points[v]);
    }
    for (const Tri& tri : Lm.triangles) u.triangles.push_back({idx[tri[0]], idx[tri[1]], idx[tri[2]]});

    // boundary ccw: right arc from (0,-1) to (0,1), then left arc
    u.boundary_loop.push_back(0);
    for (int k = 1; k < na; ++k) u.boundary_loop.push_back(k);
    u.boundary_loop.push_back(right_index_of_diam(nd));
    for (int k = 0; k < na - 1; ++k) u.boundary_loop.push_back(idx[nd + 1 + k]);
    for (int k = 0; k <= nd; ++k) f.fold.push_back(right_index_of_diam(k));

    for (const auto& q : u.reference)
        u.image.emplace_back(q.x(), q.y(), t * (std::sqrt(std::max(0.0, 1.0 - q.y() * q.y())) - std::abs(q.x())));
    for (int v : u.boundary_loop) u.image[v].z() = 0.0;
    validate_reference(u);

    TriangulatedDisk img = u.image_disk();
    f.region = make_enclosure(img, fan_cap(img, Point3::Zero()));
    f.flat_area = std::abs(polygon_signed_area([&] {
        std::vector<Point2> l;
        for (int v : u.boundary_loop) l.push_back(u.reference[v]);
        return l;
    }()));
    return f;
}

}  // namespace hplateau
