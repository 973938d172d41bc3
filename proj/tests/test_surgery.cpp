#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace hplateau;

namespace {

EnergyBreakdown energies(const ReferenceMap& u, const TriangleMesh& cap, double H) {
    return i_h(make_enclosure(u.image_disk(), cap), H, MetricField::euclidean());
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

const CreaseFixture& crease() {
    static const CreaseFixture f = crease_fixture();
    return f;
}

}  // namespace

TEST(Swap, CreasePreservesEnergies) {
    const auto& f = crease();
    const double H = 0.5;
    const SwapResult s = surgery_swap(f.map, f.loop_plus, f.loop_minus);
    EXPECT_TRUE(s.orientation_preserving);
    EXPECT_EQ(s.loop_mismatch, 0.0);
    const auto a = energies(f.map, f.region.cap, H), b = energies(s.map, f.region.cap, H);
    EXPECT_NEAR(*b.area, *a.area, 1e-9);
    EXPECT_NEAR(*b.volume, *a.volume, 1e-9);
    EXPECT_NEAR(*b.i_h, *a.i_h, 1e-9);
    // the swap moves something
    double moved = 0.0;
    for (int v = 0; v < f.map.num_vertices(); ++v) moved = std::max(moved, (s.map.image[v] - f.map.image[v]).norm());
    EXPECT_GT(moved, 0.1);
}

TEST(Swap, IsAnInvolution) {
    const auto& f = crease();
    const SwapResult once = surgery_swap(f.map, f.loop_plus, f.loop_minus);
    const SwapResult twice = surgery_swap(once.map, f.loop_plus, f.loop_minus);
    EXPECT_EQ(twice.map.image, f.map.image);
    for (size_t v = 0; v < once.sigma.size(); ++v)
        if (once.sigma[v] >= 0) EXPECT_EQ(once.sigma[once.sigma[v]], static_cast<int>(v));
}

TEST(Swap, CreaseBecomesFoldAndSmooths) {
    const auto& f = crease();
    const double H = 0.5;
    EXPECT_FALSE(is_fold(f.map.image_disk(), f.loop_plus));
    const SwapResult s = surgery_swap(f.map, f.loop_plus, f.loop_minus);
    EXPECT_TRUE(is_fold(s.map.image_disk(), f.loop_plus));
    SmoothFoldOptions o;
    const SmoothFoldResult r = smooth_fold(s.map, f.loop_plus, f.region, H, o);
    EXPECT_GE(r.decrease, o.delta_min);
    EXPECT_LT(r.final_bend, r.initial_bend);
    EXPECT_NEAR(r.initial_i_h, *energies(s.map, f.region.cap, H).i_h, 1e-9);
    EXPECT_NEAR(*r.energies.i_h, r.initial_i_h - r.decrease, 1e-9);
}

TEST(Swap, ReversingPairChangesVolumeByLens) {
    BridgedCapsParams p;
    p.matched_ring = true;
    const BridgedCaps b = bridged_caps_fixture(p);
    const ReferenceMap u = reference_map_from_disk(b.disk);
    const std::string msg = error_of([&] { surgery_swap(u, b.loop_plus, b.loop_minus); });
    EXPECT_NE(msg.find("reverses orientation"), std::string::npos) << msg;

    SwapOptions so;
    so.allow_orientation_reversal = true;
    const SwapResult s = surgery_swap(u, b.loop_plus, b.loop_minus, so);
    EXPECT_FALSE(s.orientation_preserving);
    EXPECT_TRUE(is_fold(s.map.image_disk(), b.loop_plus));

    const TriangleMesh cap = fan_cap(b.disk, Point3(0, 0, -2));
    const double H = p.H;
    const auto a = energies(u, cap, H), c = energies(s.map, cap, H);
    EXPECT_NEAR(*c.area, *a.area, 1e-9);
    // lens between the two cap spheres: twice a segment of height R - cz
    const double R = 1.0 / H, rho = std::sqrt(1.0 - p.z * p.z), cz = p.z + std::sqrt(R * R - rho * rho);
    const double lens = 2.0 * oracle::segment_volume(R, R - cz);
    EXPECT_NEAR(*c.i_h - *a.i_h, 4.0 * H * lens, 0.01 * 4.0 * H * lens);
}

TEST(Swap, RejectsBadLoops) {
    const auto& f = crease();
    std::vector<int> shorter(f.loop_minus.begin(), f.loop_minus.end() - 1);
    EXPECT_NE(error_of([&] { surgery_swap(f.map, f.loop_plus, shorter); }).find("loops not image-matched"),
              std::string::npos);
    ReferenceMap moved = f.map;
    for (int v : f.loop_minus) moved.image[v].z() += 1e-3;
    EXPECT_NE(error_of([&] { surgery_swap(moved, f.loop_plus, f.loop_minus); }).find("loops not image-matched"),
              std::string::npos);
    EXPECT_NE(error_of([&] { surgery_swap(f.map, f.loop_plus, f.loop_plus); }).find("subdisks not disjoint"),
              std::string::npos);
}

TEST(SmoothFold, TentFlattens) {
    const TentFixture t = tent_fixture(0.1, 0.05);
    EXPECT_NEAR(t.flat_area, oracle::pi, 0.01 * oracle::pi);
    const double before = total_area(t.map.image_disk());
    const SmoothFoldResult r = smooth_fold(t.map, t.fold, t.region, 0.0);
    EXPECT_GT(r.decrease, 0.0);
    EXPECT_LT(*r.energies.area, before);
    EXPECT_NEAR(*r.energies.area, t.flat_area, 0.01 * t.flat_area);
    // boundary fixed
    for (int v : t.map.boundary_loop) EXPECT_EQ(r.map.image[v], t.map.image[v]);
}

TEST(SmoothFold, SpuriousMarkerThrows) {
    const TentFixture t = tent_fixture(0.0, 0.1);
    const std::string msg = error_of([&] { smooth_fold(t.map, t.fold, t.region, 0.0); });
    EXPECT_NE(msg.find("fold not smoothable"), std::string::npos) << msg;
}

TEST(SmoothFold, BendMeasures) {
    const TentFixture t = tent_fixture(0.1, 0.05);
    // dihedral of z = t (1 - |x|) near y = 0: 2 atan(t)
    EXPECT_NEAR(max_fold_bend(t.map.image_disk(), t.fold), 2.0 * std::atan(0.1), 0.02);
    EXPECT_EQ(max_fold_bend(tent_fixture(0.0, 0.1).map.image_disk(), tent_fixture(0.0, 0.1).fold), 0.0);
}
