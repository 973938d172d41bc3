#include "test_support.hpp"

#include "hplateau/distance.hpp"

#include <gtest/gtest.h>

using namespace hplateau;

namespace {

const AmbientDomain kBall = AmbientDomain::ball(1.0);

/// Closed-form area of the minor cap of radius R spanning a circle of radius rho.
double cap_area(double R, double rho) { return 2.0 * oracle::pi * R * (R - std::sqrt(R * R - rho * rho)); }

TriangleMesh mirrored_z(TriangleMesh m) {
    for (auto& p : m.vertices) p.z() = -p.z();
    for (auto& f : m.triangles) std::swap(f[1], f[2]);
    return m;
}

const RellichResult& equator_pair() {
    static const RellichResult r = [] {
        SolveOptions o;
        return rellich_pair(circle_curve(1.0, 26), kBall, 0.5, o);
    }();
    return r;
}

}  // namespace

TEST(Feasibility, RejectsHAboveBound) {
    try {
        require_feasible_h(1.5, kBall);
        FAIL() << "expected InfeasibleHError";
    } catch (const InfeasibleHError& e) {
        EXPECT_NE(std::string(e.what()).find("[0, 1)"), std::string::npos) << e.what();
    }
    EXPECT_THROW(require_feasible_h(1.0, kBall), InfeasibleHError);
    EXPECT_THROW(require_feasible_h(-0.1, kBall), InfeasibleHError);
    EXPECT_NO_THROW(require_feasible_h(0.3, AmbientDomain::ball(2.0)));
    EXPECT_THROW(require_feasible_h(0.6, AmbientDomain::ball(2.0)), InfeasibleHError);
}

TEST(InitializeSweep, OffsetCapInsideBall) {
    const BoundaryCurve c = circle_curve(1.0, 16);
    const auto d = initialize_sweep(c, kBall, Side::Minus);
    EXPECT_TRUE(validate_disk(d).is_disk());
    const auto bmask = boundary_vertex_mask(d);
    for (int v = 0; v < d.num_vertices(); ++v) {
        if (bmask[v]) EXPECT_NEAR(d.vertices[v].norm(), 1.0, 1e-12);
        else {
            EXPECT_LT(d.vertices[v].norm(), 1.0);
            EXPECT_LT(d.vertices[v].z(), 0.0);
        }
    }
    // normals point away from the lower region, i.e. up
    Vec3 a = Vec3::Zero();
    for (int t = 0; t < d.num_triangles(); ++t) a += triangle_area_vector(d, t);
    EXPECT_GT(a.z(), 0.0);
}

TEST(InitializeSweep, SidesAreMirrorImages) {
    const BoundaryCurve c = circle_curve(1.0, 16);
    const auto m = initialize_sweep(c, kBall, Side::Minus), p = initialize_sweep(c, kBall, Side::Plus);
    EXPECT_LT(hausdorff_distance(mirrored_z(m), p), 1e-9);
}

TEST(InitializeSweep, BridgedCurveGivesConnectedDisk) {
    Gamma1Params gp;
    gp.cap_vertices = 800;
    const BoundaryCurve c = gamma1_curve(gp);
    const auto d = initialize_sweep(c, kBall, Side::Minus);
    const auto r = validate_disk(d);
    EXPECT_TRUE(r.is_disk());
    EXPECT_EQ(r.euler_characteristic, 1);
    EXPECT_EQ(static_cast<int>(d.boundary_loop.size()), c.size());
}

TEST(Minimize, FlatDiskAtZeroH) {
    SolveOptions o;
    const auto [d, rep] = solve_side(circle_curve(1.0, 26), kBall, 0.0, o);
    EXPECT_TRUE(rep.converged) << rep.status;
    EXPECT_NEAR(total_area(d), oracle::pi, 0.005 * oracle::pi);
    EXPECT_LE(rep.residual, o.residual_tol);
    double zmax = 0.0;
    for (const auto& p : d.vertices) zmax = std::max(zmax, std::abs(p.z()));
    EXPECT_LT(zmax, 1e-3);
}

TEST(Minimize, LatitudeCircleMatchesCapOracle) {
    const double rho = 0.9, H = 0.5;
    SolveOptions o;
    const auto [d, rep] = solve_side(circle_curve(rho, 26), kBall, H, o);
    EXPECT_TRUE(rep.converged) << rep.status;
    const double expected = cap_area(1.0 / H, rho);
    EXPECT_NEAR(total_area(d), expected, 0.01 * expected);
    EXPECT_TRUE(rep.embedded);
    EXPECT_EQ(rep.violations, 0);
    EXPECT_GT(rep.min_interior_depth, 0.0);
    EXPECT_GE(rep.fraction_within_tol, 0.95);
}

TEST(Minimize, TraceIsMonotone) {
    const auto& rep = equator_pair().report.minus;
    ASSERT_GT(rep.i_h_trace.size(), 2u);
    for (size_t i = 1; i < rep.i_h_trace.size(); ++i)
        EXPECT_LE(rep.i_h_trace[i], rep.i_h_trace[i - 1] + 1e-12 * std::abs(rep.i_h_trace[i - 1]));
}

TEST(Minimize, EnergiesMatchClosedFormEquatorCap) {
    const auto& r = equator_pair();
    const CapSolution cap = spherical_cap(0.0, 1.0, 0.5, 2107);
    const double vol = oracle::segment_volume(1.0, 1.0) - oracle::segment_volume(2.0, 2.0 - std::sqrt(3.0));
    EXPECT_NEAR(cap.enclosed_volume, vol, 1e-12);
    EXPECT_NEAR(*r.report.minus.energies.area, cap_area(2.0, 1.0), 0.01 * cap_area(2.0, 1.0));
    EXPECT_NEAR(*r.report.minus.energies.volume, vol, 0.01 * vol);
}

TEST(Minimize, WarnsNearConvexityBound) {
    SolveOptions o;
    o.max_iterations = 1;
    o.check_embedding = false;
    const auto rep = solve_side(circle_curve(1.0, 6), kBall, 0.96, o).second;
    ASSERT_FALSE(rep.warnings.empty());
    EXPECT_NE(rep.warnings[0].find("1/R"), std::string::npos);
    EXPECT_EQ(rep.iterations, 1);
}

TEST(Minimize, RefinementReducesCapAreaError) {
    const BoundaryCurve c = circle_curve(1.0, 8);
    const double expected = cap_area(2.0, 1.0);
    SolveOptions o;
    o.check_embedding = false;
    const auto coarse = solve_side(c, kBall, 0.5, o).first;
    o.refinement_levels = 1;
    const auto fine = solve_side(c, kBall, 0.5, o).first;
    const double ec = std::abs(total_area(coarse) - expected), ef = std::abs(total_area(fine) - expected);
    EXPECT_GT(fine.num_vertices(), 3 * coarse.num_vertices());
    EXPECT_LT(ef, ec);
    EXPECT_GE(std::log2(ec / ef), 1.0);
}

TEST(Minimize, OptionsValidated) {
    SolveOptions o;
    o.max_iterations = 0;
    const BoundaryCurve c = circle_curve(1.0, 4);
    EXPECT_THROW(solve_side(c, kBall, 0.5, o), Error);
    SolveOptions ok;
    EXPECT_THROW(solve_side(c, AmbientDomain::modified_cylinder(0.05), 0.5, ok), Error);
}

TEST(Rellich, EquatorMirrorCaps) {
    const auto& r = equator_pair();
    EXPECT_TRUE(r.report.minus.converged && r.report.plus.converged);
    EXPECT_TRUE(r.report.minus.embedded && r.report.plus.embedded);
    const double sep = 2.0 * (2.0 - std::sqrt(3.0));
    EXPECT_NEAR(r.report.hausdorff, sep, 0.01 * sep);
    EXPECT_TRUE(r.report.opposite_signs);
    // projection of |H| = 1/2 onto the axis; the cap normal tilts at most 30 degrees
    for (double m : {r.report.mean_h_minus, r.report.mean_h_plus}) {
        EXPECT_GT(std::abs(m), 0.5 * std::cos(oracle::pi / 6.0));
        EXPECT_LT(std::abs(m), 0.5);
    }
    EXPECT_LT(hausdorff_distance(mirrored_z(r.minus), r.plus), 10.0 * SolveOptions{}.residual_tol);
    EXPECT_TRUE(is_radial_graph(r.minus, Point3(0, 0, 0.5)));
}

TEST(Rellich, ZeroHSidesCoincide) {
    SolveOptions o;
    const auto r = rellich_pair(circle_curve(1.0, 16), kBall, 0.0, o);
    EXPECT_LT(r.report.hausdorff, 1e-3);
}

TEST(Rellich, ParallelMatchesSequential) {
    SolveOptions o;
    const BoundaryCurve c = circle_curve(0.8, 10);
    const auto a = rellich_pair(c, kBall, 0.4, o, false), b = rellich_pair(c, kBall, 0.4, o, true);
    EXPECT_EQ(a.minus.vertices, b.minus.vertices);
    EXPECT_EQ(a.plus.vertices, b.plus.vertices);
    EXPECT_EQ(to_json(a.report).dump(), to_json(b.report).dump());
}

TEST(Rellich, RejectsInfeasibleH) {
    SolveOptions o;
    EXPECT_THROW(rellich_pair(circle_curve(1.0, 4), kBall, 1.2, o), InfeasibleHError);
}
