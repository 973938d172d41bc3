#include "test_support.hpp"

#include "hplateau/mesh_io.hpp"

#include <gtest/gtest.h>

using namespace hplateau;

namespace {

TriangulatedDisk single_triangle() {
    TriangulatedDisk d;
    d.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    d.triangles = {{0, 1, 2}};
    d.boundary_loop = {0, 1, 2};
    return d;
}

/// Lower half of the unit ball: lower hemisphere cap plus the flat fan
/// over the equator samples.
EnclosureRegion half_ball(int rings) {
    const BoundaryCurve c = circle_curve(1.0, rings);
    TriangulatedDisk flat = make_disk(fan_cap(c.cap_minus, Point3::Zero()));
    return make_enclosure(flat, c.cap_minus);
}

/// Closed chart surface of the solid cylinder r <= 1, t in [-n, 0], split
/// into the top disk and the rest.
EnclosureRegion solid_cylinder_chart(int n) {
    const TriangleMesh top = revolve_profile(subdivide_polyline({{0.0, 0.0}, {1.0, 0.0}}, 0.05), 64);
    const TriangleMesh rest =
        revolve_profile(subdivide_polyline({{1.0, 0.0}, {1.0, -double(n)}, {0.0, -double(n)}}, 0.05), 64);
    TriangulatedDisk disk;
    disk.vertices = top.vertices;
    disk.triangles = top.triangles;
    return make_enclosure(disk, rest, MetricField::Chart::Cylindrical);
}

}  // namespace

TEST(ValidateDisk, SingleTriangleIsDisk) {
    const auto r = validate_disk(single_triangle());
    EXPECT_EQ(r.euler_characteristic, 1);
    EXPECT_EQ(r.boundary_cycles, 1);
    EXPECT_TRUE(r.is_disk());
    EXPECT_NEAR(r.min_quality, 4.0 * std::sqrt(3.0) * 0.5 / 4.0, 1e-12);
}

TEST(ValidateDisk, OppositeOrientationFlagged) {
    TriangulatedDisk d;
    d.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
    d.triangles = {{0, 1, 2}, {1, 2, 3}};  // edge 1->2 used twice
    const auto r = validate_disk(d);
    EXPECT_FALSE(r.orientation_consistent);
    EXPECT_FALSE(r.is_disk());
}

TEST(ValidateDisk, TetrahedronIsClosed) {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    m.triangles = {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}};
    const auto r = validate_disk(m);
    EXPECT_EQ(r.euler_characteristic, 2);
    EXPECT_EQ(r.boundary_cycles, 0);
    EXPECT_TRUE(r.orientation_consistent);
    EXPECT_FALSE(r.is_disk());
}

TEST(ValidateDisk, RingDisksAreDisks) {
    for (int rings : {1, 2, 5, 12}) {
        const auto d = unit_disk_mesh(rings);
        EXPECT_EQ(d.num_vertices(), 1 + 3 * rings * (rings + 1));
        const auto r = validate_disk(d);
        EXPECT_TRUE(r.is_disk()) << rings;
        EXPECT_EQ(r.num_edges, d.num_vertices() + d.num_triangles() - 1);
    }
}

TEST(ValidateDisk, StoredLoopMismatchFlagged) {
    auto d = unit_disk_mesh(3);
    std::swap(d.boundary_loop[0], d.boundary_loop[1]);
    EXPECT_FALSE(validate_disk(d).boundary_loop_matches);
}

TEST(SurfaceArea, FlatUnitDisk) {
    const auto d = unit_disk_mesh(26);  // 2107 vertices
    ASSERT_GE(d.num_vertices(), 2000);
    EXPECT_NEAR(surface_area(d, MetricField::euclidean()), oracle::pi, 0.005 * oracle::pi);
}

TEST(SurfaceArea, EuclideanEqualsCrossProductSum) {
    const auto m = icosphere(3, 1.7);
    EXPECT_NEAR(surface_area(m, MetricField::euclidean()), oracle::area(m.vertices, m.triangles), 1e-12);
}

TEST(SurfaceArea, DegenerateTriangleNamed) {
    auto d = single_triangle();
    d.vertices.push_back({2, 0, 0});
    d.triangles.push_back({1, 3, 1});
    try {
        surface_area(d, MetricField::euclidean());
        FAIL() << "expected DegenerateTriangleError";
    } catch (const DegenerateTriangleError& e) {
        EXPECT_EQ(e.triangle, 1);
        EXPECT_NE(std::string(e.what()).find("triangle 1"), std::string::npos);
    }
}

TEST(SurfaceArea, CylinderWallUnderBlendedMetric) {
    const MetricField g = MetricField::blended_cylinder(0.05);
    for (int n : {1, 3, 7}) {
        const auto wall = revolve_profile(subdivide_polyline({{1.0, -double(n)}, {1.0, 0.0}}, 0.1), 48);
        EXPECT_NEAR(surface_area(wall, g), 2.0 * oracle::pi * n, 1e-9 * n);
    }
}

TEST(SurfaceArea, AnnulusMatchesRadialQuadrature) {
    const double eps = 0.05;
    const MetricField g = MetricField::blended_cylinder(eps);
    const double expected =
        2.0 * oracle::pi * oracle::integrate([&](double r) { return std::sqrt(oracle::g_theta(r, eps)); }, 1.0, 2.0);
    const auto ann = revolve_profile(subdivide_polyline({{1.0, 0.0}, {2.0, 0.0}}, 0.002), 16);
    EXPECT_NEAR(surface_area(ann, g, QuadratureOrder::Degree5), expected, 1e-6 * expected);
    // the blend lowers the area below the flat annulus value 3 pi
    EXPECT_LT(expected, 3.0 * oracle::pi);
}

TEST(EnclosedVolume, HalfBall) {
    const double exact = 2.0 * oracle::pi / 3.0;
    const auto coarse = half_ball(13), fine = half_ball(26);
    ASSERT_TRUE(fine.watertight);
    const double vc = oriented_enclosed_volume(coarse, MetricField::euclidean());
    const double vf = oriented_enclosed_volume(fine, MetricField::euclidean());
    EXPECT_NEAR(vf, exact, 0.01 * exact);
    EXPECT_LT(std::abs(vf - exact), std::abs(vc - exact));
    // the closed polyhedron's volume from an unrelated reference point
    TriangleMesh closed = concatenate({&fine.disk, &fine.cap});
    EXPECT_NEAR(vf, oracle::closed_volume(closed), 1e-12);
}

TEST(EnclosedVolume, DiskEqualsCapGivesZero) {
    const BoundaryCurve c = circle_curve(1.0, 8);
    const auto r = make_enclosure(make_disk(c.cap_minus), reversed(c.cap_minus));
    ASSERT_TRUE(r.watertight);
    EXPECT_NEAR(oriented_enclosed_volume(r, MetricField::euclidean()), 0.0, 1e-15);
}

TEST(EnclosedVolume, AdditiveOverSplit) {
    const BoundaryCurve c = circle_curve(1.0, 16);
    const TriangleMesh fan = fan_cap(c.cap_minus, Point3::Zero());
    const auto lower = make_enclosure(make_disk(fan), c.cap_minus);
    const auto upper = make_enclosure(make_disk(c.cap_plus), reversed(fan));
    const auto whole = make_enclosure(make_disk(c.cap_plus), c.cap_minus);
    const auto E = MetricField::euclidean();
    const double w = oriented_enclosed_volume(whole, E);
    EXPECT_NEAR(oriented_enclosed_volume(lower, E) + oriented_enclosed_volume(upper, E), w, 1e-9 * w);
}

TEST(EnclosedVolume, TranslationInvariant) {
    const BoundaryCurve c = circle_curve(0.6, 10);
    auto region = [](const TriangleMesh& top, const TriangleMesh& bottom) {
        return make_enclosure(make_disk(top), bottom);
    };
    const double v0 = oriented_enclosed_volume(region(c.cap_plus, c.cap_minus), MetricField::euclidean());
    TriangleMesh a = c.cap_plus, b = c.cap_minus;
    const Vec3 s(3.5, -7.25, 11.0);
    for (auto& p : a.vertices) p += s;
    for (auto& p : b.vertices) p += s;
    const double v1 = oriented_enclosed_volume(region(a, b), MetricField::euclidean());
    EXPECT_NEAR(v1, v0, 1e-9 * std::abs(v0));
}

TEST(EnclosedVolume, GapEdgesReported) {
    const BoundaryCurve c = circle_curve(1.0, 6);
    TriangleMesh cap = c.cap_minus;
    cap.triangles.pop_back();
    const auto r = make_enclosure(make_disk(fan_cap(c.cap_minus, Point3::Zero())), cap);
    EXPECT_FALSE(r.watertight);
    try {
        oriented_enclosed_volume(r, MetricField::euclidean());
        FAIL() << "expected NotWatertightError";
    } catch (const NotWatertightError& e) {
        EXPECT_EQ(e.gap_edges.size(), 3u);
        EXPECT_NE(std::string(e.what()).find("gap edges"), std::string::npos);
    }
}

TEST(EnclosedVolume, SolidCylinderUnderBlendedMetric) {
    const MetricField g = MetricField::blended_cylinder(0.05);
    for (int n : {1, 2, 5}) {
        const auto r = solid_cylinder_chart(n);
        ASSERT_TRUE(r.watertight) << n;
        EXPECT_NEAR(oriented_enclosed_volume(r, g), oracle::pi * n, 1e-9 * n);
    }
}

TEST(Metric, PartitionOfUnityAndFlatCore) {
    const double eps = 0.05;
    const MetricField g = MetricField::blended_cylinder(eps);
    const auto& c = g.cylinder();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 2.0);
    for (int i = 0; i < 10000; ++i) {
        const double r = U(rng);
        EXPECT_NEAR(c.psi1(r) + c.psi2(r), 1.0, 2.0 * std::numeric_limits<double>::epsilon());
        EXPECT_NEAR(c.psi2(r), oracle::blend((r - 1.9) / eps), 1e-13);
        if (r <= 2.0 - 2.0 * eps) {
            const Eigen::Matrix3d t = g.cylindrical_tensor(r);
            EXPECT_EQ(t(0, 0), 1.0);
            EXPECT_EQ(t(1, 1), r * r);
            EXPECT_EQ(t(2, 2), 1.0);
            EXPECT_EQ(c.psi1(r), 1.0);
        }
        if (r >= 2.0 - eps) EXPECT_EQ(c.psi1(r), 0.0);
    }
}

TEST(Metric, CartesianTensorMatchesChart) {
    const MetricField g = MetricField::blended_cylinder(0.05);
    for (double r : {0.5, 1.92, 1.97}) {
        const double th = 0.7;
        const Point3 x(r * std::cos(th), r * std::sin(th), 0.3);
        const Vec3 e_th(-r * std::sin(th), r * std::cos(th), 0.0);  // d/dtheta
        const Vec3 e_r(std::cos(th), std::sin(th), 0.0);
        const Eigen::Matrix3d G = g.cartesian_tensor(x);
        EXPECT_NEAR(e_th.dot(G * e_th), oracle::g_theta(r, 0.05), 1e-12);
        EXPECT_NEAR(e_r.dot(G * e_r), 1.0, 1e-12);
        EXPECT_NEAR(e_r.dot(G * e_th), 0.0, 1e-12);
    }
    EXPECT_TRUE(MetricField::euclidean().tensor(Point3(1, 2, 3)).isIdentity());
}

TEST(Domain, FeasibleRanges) {
    auto b1 = feasible_h_range(AmbientDomain::ball(1.0));
    EXPECT_EQ(b1.lo, 0.0);
    EXPECT_EQ(b1.hi, 1.0);
    EXPECT_TRUE(b1.hi_open);
    EXPECT_TRUE(b1.contains(0.0));
    EXPECT_FALSE(b1.contains(1.0));
    EXPECT_EQ(feasible_h_range(AmbientDomain::ball(2.0)).hi, 0.5);
    auto mc = feasible_h_range(AmbientDomain::modified_cylinder(0.05));
    EXPECT_EQ(mc.hi, 2.0);
    EXPECT_TRUE(mc.contains(1.5));
    EXPECT_FALSE(mc.contains(2.0));
}

TEST(Domain, ProjectIntoDomain) {
    const auto ball = AmbientDomain::ball(1.0);
    EXPECT_TRUE(project_into_domain(Point3(2, 0, 0), ball).isApprox(Point3(1, 0, 0)));
    EXPECT_EQ(project_into_domain(Point3(0.5, 0, 0), ball), Point3(0.5, 0, 0));
    const auto cyl = AmbientDomain::modified_cylinder(0.05);
    const Point3 q = project_into_domain(Point3(2.3, 1.1, -4.0), cyl);
    EXPECT_EQ(q, Point3(2.0, 1.1, -4.0));
}

TEST(MeshIO, RoundTripIsBitExact) {
    TriangulatedDisk d = spherical_cap(0.0, 1.0, 0.5, 500).mesh;
    d.vertices[3] = Point3(0.1 + 1e-17, 1.0 / 3.0, -std::nextafter(0.2, 1.0));
    const std::string s = to_hpmesh_string(d);
    const TriangulatedDisk e = read_hpmesh_string(s);
    ASSERT_EQ(e.num_vertices(), d.num_vertices());
    for (int v = 0; v < d.num_vertices(); ++v) EXPECT_EQ(e.vertices[v], d.vertices[v]);
    EXPECT_EQ(e.triangles, d.triangles);
    EXPECT_EQ(e.boundary_loop, d.boundary_loop);
    EXPECT_EQ(to_hpmesh_string(e), s);
}

TEST(MeshIO, RejectsUnknownTagsAndBadHeaders) {
    EXPECT_THROW(read_hpmesh_string("hpmesh 1\nv 0 0 0\nq 1\n"), Error);
    EXPECT_THROW(read_hpmesh_string("mesh 1\n"), Error);
    EXPECT_THROW(read_hpmesh_string("hpmesh 1\nv 0 0 0\nf 0 1 2\n"), Error);
    EXPECT_NO_THROW(read_hpmesh_string(to_hpmesh_string(single_triangle())));
}
