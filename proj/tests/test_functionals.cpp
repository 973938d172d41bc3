#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace hplateau;

namespace {

ReferenceMap planar_identity(int rings) {
    const PlanarMesh p = ring_disk_2d(rings);
    return reference_map(unit_disk_mesh(rings), p.points);
}

/// Upper unit hemisphere, stereographically parametrized by the ring disk.
ReferenceMap hemisphere(int rings) {
    const PlanarMesh p = ring_disk_2d(rings);
    return reference_map(spherical_ring_cap(Vec3::UnitZ(), oracle::pi / 2, rings), p.points);
}

/// Flat equatorial disk over the lower hemisphere of the unit sphere.
EnclosureRegion equator_region(int rings) {
    const BoundaryCurve c = circle_curve(1.0, rings);
    return make_enclosure(make_disk(fan_cap(c.cap_minus, Point3::Zero())), c.cap_minus);
}

/// Quarter cylinder of radius 1 and height 1 on a regular grid.
TriangleMesh cylinder_patch(int n) {
    TriangleMesh m;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const double th = 0.5 * oracle::pi * i / n, z = double(j) / n;
            m.vertices.emplace_back(std::cos(th), std::sin(th), z);
        }
    auto id = [&](int i, int j) { return i * (n + 1) + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return m;
}

}  // namespace

TEST(Dirichlet, ConformalPlanarIdentity) {
    const auto u = planar_identity(26);
    const double E = dirichlet_energy(u);
    EXPECT_NEAR(E, oracle::dirichlet(u.reference, u.image, u.triangles), 1e-12);
    EXPECT_NEAR(E, 2.0 * oracle::pi, 0.005 * 2.0 * oracle::pi);
    EXPECT_NEAR(E, 2.0 * total_area(u.image_disk()), 1e-12);
}

TEST(Dirichlet, StretchedReferenceBreaksConformality) {
    auto u = planar_identity(10);
    for (auto& q : u.reference) q.x() *= 2.0;
    const double E = dirichlet_energy(u);
    const double A = oracle::area(u.image, u.triangles);
    EXPECT_NEAR(E, oracle::dirichlet(u.reference, u.image, u.triangles), 1e-12);
    // |J|^2 = 1/4 + 1 on a 2x reference of area 2 pi: E = 2.5 pi
    EXPECT_NEAR(E, 1.25 * 2.0 * A, 1e-12);
    EXPECT_GT(E, 2.0 * A);
}

TEST(Dirichlet, StereographicCapDefectVanishesUnderRefinement) {
    double prev = std::numeric_limits<double>::infinity();
    for (int rings : {6, 12, 24}) {
        const auto u = hemisphere(rings);
        const double defect = dirichlet_energy(u) - 2.0 * total_area(u.image_disk());
        EXPECT_GE(defect, 0.0);
        EXPECT_LT(defect, prev);
        prev = defect;
    }
    EXPECT_LT(prev, 0.01);
}

TEST(Dirichlet, DegenerateReferenceRejected) {
    auto u = planar_identity(2);
    u.reference[0] = u.reference[1];
    EXPECT_THROW(dirichlet_energy(u), DegenerateTriangleError);
}

TEST(AlgebraicVolume, PlaneThroughOriginIsZero) {
    auto u = planar_identity(8);
    const Eigen::Matrix3d R = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
    for (auto& p : u.image) p = R * p;
    EXPECT_NEAR(algebraic_volume(u), 0.0, 1e-14);
}

TEST(AlgebraicVolume, HemisphereIsTwoPi) {
    const auto u = hemisphere(26);
    EXPECT_NEAR(algebraic_volume(u), 2.0 * oracle::pi, 0.01 * 2.0 * oracle::pi);
}

TEST(AlgebraicVolume, ClosingIdentityUnderTranslation) {
    const auto region = equator_region(12);
    const Vec3 shift(0.4, -1.3, 2.2);
    const auto moved = make_enclosure(translated(region.disk, shift), [&] {
        TriangleMesh c = region.cap;
        for (auto& p : c.vertices) p += shift;
        return c;
    }());
    const double w0 = algebraic_volume(region.disk), w1 = algebraic_volume(moved.disk);
    EXPECT_GT(std::abs(w1 - w0), 0.1);
    for (const auto* r : {&region, &moved}) {
        const double vol = oriented_enclosed_volume(*r, MetricField::euclidean());
        const double C0 = algebraic_volume(r->cap);
        EXPECT_NEAR(3.0 * vol, algebraic_volume(r->disk) + C0, 1e-12);
    }
}

TEST(AlgebraicVolume, ThreeTimesConeVolumeOnClosedSurfaces) {
    for (int s : {1, 3}) {
        TriangleMesh m = icosphere(s, 1.3);
        for (auto& p : m.vertices) p += Vec3(0.2, 0.5, -0.1);
        const double w = algebraic_volume(m);
        EXPECT_NEAR(w, 3.0 * oracle::closed_volume(m), 1e-9 * w);
    }
}

TEST(FH, ZeroHIsDirichlet) {
    const auto u = hemisphere(8);
    const auto e = f_h(u, 0.0);
    EXPECT_EQ(*e.f_h, dirichlet_energy(u));
}

TEST(FH, PlanarDiskThroughOrigin) {
    const auto u = planar_identity(8);
    for (double H : {0.3, 0.9}) EXPECT_NEAR(*f_h(u, H).f_h, dirichlet_energy(u), 1e-14);
}

TEST(FH, HemisphereComponents) {
    const auto u = hemisphere(12);
    const auto e = f_h(u, 1.0);
    const double E = oracle::dirichlet(u.reference, u.image, u.triangles);
    double W = 0.0;
    for (const auto& f : u.triangles) W += 0.5 * u.image[f[0]].dot(u.image[f[1]].cross(u.image[f[2]]));
    EXPECT_NEAR(*e.f_h, E + 4.0 / 3.0 * W, 1e-11);
    EXPECT_THROW(f_h(u, -0.1), Error);
}

TEST(IH, FlatEquatorialDisk) {
    const auto r = equator_region(26);
    const auto e0 = i_h(r, 0.0, MetricField::euclidean());
    EXPECT_NEAR(*e0.i_h, oracle::pi, 0.005 * oracle::pi);
    const auto e1 = i_h(r, 0.5, MetricField::euclidean());
    const double expected = oracle::pi + 2.0 * 0.5 * (2.0 * oracle::pi / 3.0);
    EXPECT_NEAR(*e1.i_h, expected, 0.01 * expected);
    EXPECT_NEAR(*e1.i_h, *e1.area + 2.0 * 0.5 * *e1.volume, 1e-15);
    EXPECT_GE(*e1.volume, 0.0);
}

TEST(IH, CapRetriangulationInvariant) {
    const BoundaryCurve c = circle_curve(1.0, 16);
    const TriangulatedDisk flat = make_disk(fan_cap(c.cap_minus, Point3::Zero()));
    const TriangleMesh cone = fan_cap(flat, Point3(0.1, -0.2, -1.0));
    // same cap geometry, each triangle split at its centroid
    TriangleMesh split = cone;
    split.triangles.clear();
    for (const Tri& f : cone.triangles) {
        const int m = split.num_vertices();
        split.vertices.push_back((cone.vertices[f[0]] + cone.vertices[f[1]] + cone.vertices[f[2]]) / 3.0);
        split.triangles.push_back({f[0], f[1], m});
        split.triangles.push_back({f[1], f[2], m});
        split.triangles.push_back({f[2], f[0], m});
    }
    const auto a = make_enclosure(flat, cone), b = make_enclosure(flat, split);
    ASSERT_TRUE(a.watertight && b.watertight);
    const double va = *i_h(a, 0.5, MetricField::euclidean()).i_h;
    EXPECT_NEAR(va, *i_h(b, 0.5, MetricField::euclidean()).i_h, 1e-12 * va);
}

TEST(IH, JsonFieldNames) {
    const auto u = planar_identity(4);
    const auto r = make_enclosure(u.image_disk(), fan_cap(u.image_disk(), Point3(0, 0, -1)));
    const auto j = to_json(full_breakdown(u, r, 0.5));
    for (const char* k : {"dirichlet", "algebraic_volume", "f_h", "area", "volume", "i_h", "defect", "H", "C0", "C2"})
        EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Equivalence, ConformalPlanarIdentity) {
    const auto u = planar_identity(12);
    const auto r = make_enclosure(u.image_disk(), fan_cap(u.image_disk(), Point3(0.1, 0.2, -0.8)));
    EXPECT_NEAR(equivalence_residual(u, r, 0.5), 0.0, 1e-12);
}

TEST(Equivalence, StretchedReferenceMatchesDefect) {
    auto u = planar_identity(12);
    for (auto& q : u.reference) q.x() *= 2.0;
    const auto r = make_enclosure(u.image_disk(), fan_cap(u.image_disk(), Point3(0, 0, -1)));
    const double defect = oracle::dirichlet(u.reference, u.image, u.triangles) - 2.0 * oracle::area(u.image, u.triangles);
    EXPECT_GT(defect, 0.0);
    EXPECT_NEAR(equivalence_residual(u, r, 0.7), defect, 1e-9 * defect);
}

TEST(Equivalence, RotatedReferenceInvariant) {
    const auto fx = fixtures::random_map(17);
    ReferenceMap v = fx.map;
    const Eigen::Rotation2Dd R(0.83);
    for (auto& q : v.reference) q = R * q;
    const double a = equivalence_residual(fx.map, fx.region, 0.4), b = equivalence_residual(v, fx.region, 0.4);
    EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a)));
}

TEST(Equivalence, RandomMapsMatchDefect) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto fx = fixtures::random_map(s);
        const double H = 0.1 + 0.009 * s;
        const double E = oracle::dirichlet(fx.map.reference, fx.map.image, fx.map.triangles);
        const double A = oracle::area(fx.map.image, fx.map.triangles);
        const double res = equivalence_residual(fx.map, fx.region, H);
        EXPECT_LE(std::abs(res - (E - 2.0 * A)), 1e-9 * E) << s;
        EXPECT_GE(E - 2.0 * A, -1e-9 * E) << s;
    }
}

TEST(Equivalence, MismatchedMapRejected) {
    const auto fx = fixtures::random_map(3);
    ReferenceMap v = fx.map;
    v.image[0] += Vec3(0, 0, 0.1);
    EXPECT_THROW(equivalence_residual(v, fx.region, 0.5), Error);
}

TEST(MeanCurvature, SphereRadiusTwoConverges) {
    double prev = std::numeric_limits<double>::infinity();
    for (int s : {2, 3, 4}) {
        const TriangleMesh sphere = icosphere(s, 2.0);
        // open it: drop the triangles around one vertex so the rest is a disk
        TriangleMesh m = sphere;
        std::vector<Tri> keep;
        for (const Tri& f : m.triangles)
            if (f[0] != 0 && f[1] != 0 && f[2] != 0) keep.push_back(f);
        m.triangles = keep;
        const auto h = mean_curvature(m);
        double worst = 0.0;
        for (int v = 0; v < m.num_vertices(); ++v) {
            if (!h.interior[v]) continue;
            worst = std::max(worst, std::abs(h.magnitude(v) - 0.5));
            EXPECT_LT(h.vector[v].dot(m.vertices[v]), 0.0);  // inward
        }
        EXPECT_LT(worst, prev);
        prev = worst;
    }
    EXPECT_LT(prev, 0.01);
}

TEST(MeanCurvature, FlatDiskIsZero) {
    const auto d = unit_disk_mesh(10);
    const auto h = mean_curvature(d);
    for (int v = 0; v < d.num_vertices(); ++v) {
        EXPECT_LT(h.magnitude(v), 1e-12);
        if (!h.interior[v]) EXPECT_EQ(h.vector[v], Vec3::Zero());
    }
}

TEST(MeanCurvature, CylinderHalfTowardsAxis) {
    const auto m = cylinder_patch(24);
    const auto h = mean_curvature(m);
    int n = 0;
    for (int v = 0; v < m.num_vertices(); ++v) {
        if (!h.interior[v]) continue;
        ++n;
        const Vec3 radial(m.vertices[v].x(), m.vertices[v].y(), 0.0);
        EXPECT_NEAR(h.magnitude(v), 0.5, 0.01);
        EXPECT_GT(-h.vector[v].normalized().dot(radial.normalized()), 0.999);
    }
    EXPECT_GT(n, 400);
}

TEST(MeanCurvature, RigidMotionEquivariant) {
    const auto m = cylinder_patch(10);
    TriangleMesh moved = m;
    const Eigen::Matrix3d R = Eigen::AngleAxisd(1.1, Vec3(0.3, -1, 0.5).normalized()).toRotationMatrix();
    for (auto& p : moved.vertices) p = R * p + Vec3(5, -2, 1);
    const auto a = mean_curvature(m), b = mean_curvature(moved);
    for (int v = 0; v < m.num_vertices(); ++v) EXPECT_LT((R * a.vector[v] - b.vector[v]).norm(), 1e-9);
}

TEST(MeanCurvature, ZeroAreaStarNamesVertex) {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {-1, 0, 0}};
    m.triangles = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}};
    try {
        mean_curvature(m);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("vertex 0"), std::string::npos);
    }
}

TEST(MeanCurvature, VariationalWeightIsVolumeGradientNorm) {
    const auto m = cylinder_patch(8);
    const auto h = mean_curvature(m, MetricField::euclidean(), CurvatureWeight::Variational);
    std::vector<Vec3> g(m.num_vertices(), Vec3::Zero());
    for (const Tri& f : m.triangles) {
        const Vec3 a = 0.5 * (m.vertices[f[1]] - m.vertices[f[0]]).cross(m.vertices[f[2]] - m.vertices[f[0]]);
        for (int v : f) g[v] += a / 3.0;
    }
    for (int v = 0; v < m.num_vertices(); ++v) EXPECT_NEAR(h.mixed_area[v], g[v].norm(), 1e-14);
}

TEST(Concavity, SphericalCapHasNoViolations) {
    const CapSolution cap = spherical_cap(0.0, 1.0, 0.5, 2107);
    EnclosureRegion r;
    r.disk = cap.mesh;
    EXPECT_TRUE(h_concavity_check(r, 0.5).empty());
    r.disk = reversed(cap.mesh);
    const auto bad = h_concavity_check(r, 0.5);
    int interior = 0;
    const auto mask = boundary_vertex_mask(cap.mesh);
    for (char b : mask) interior += !b;
    EXPECT_EQ(static_cast<int>(bad.size()), interior);
}

TEST(Concavity, WrongSidedBulgeIsLocalized) {
    const CapSolution cap = spherical_cap(0.0, 1.0, 0.5, 2107);
    EnclosureRegion r;
    r.disk = cap.mesh;
    const Point2 c(0.4, 0.1);
    const double s = 0.2, a = 0.05;
    for (auto& p : r.disk.vertices) {
        const double d2 = (Point2(p.x(), p.y()) - c).squaredNorm();
        p.z() += a * std::exp(-d2 / (s * s));  // towards S+
    }
    const auto bad = h_concavity_check(r, 0.5);
    ASSERT_FALSE(bad.empty());
    for (int v : bad) EXPECT_LT((Point2(r.disk.vertices[v].x(), r.disk.vertices[v].y()) - c).norm(), s);
}
