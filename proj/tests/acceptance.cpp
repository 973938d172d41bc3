// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include "test_support.hpp"

#include "hplateau/cli.hpp"
#include "hplateau/distance.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

using namespace hplateau;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double cap_area(double R, double rho) { return 2.0 * oracle::pi * R * (R - std::sqrt(R * R - rho * rho)); }

TriangleMesh mirrored_z(TriangleMesh m) {
    for (auto& p : m.vertices) p.z() = -p.z();
    for (auto& f : m.triangles) std::swap(f[1], f[2]);
    return m;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), {});
}

int run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "hplateau");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream log, err;
    return run_cli(static_cast<int>(argv.size()), argv.data(), log, err);
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Tally {
    int failed = 0;
    void report(int id, const std::string& name, const std::function<Verdict()>& check) {
        Verdict v;
        const auto t0 = Clock::now();
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failed;
        std::printf("%s criterion %d (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", id, name.c_str(),
                    v.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

const AmbientDomain kBall = AmbientDomain::ball(1.0);
constexpr int kResolution = 2107;

// minimizers collected for the concavity check
std::vector<std::pair<std::string, SolveReport>> g_minimizers;

}  // namespace

int main() {
    Tally t;

    t.report(1, "counterexample slope", [] {
        const auto t0 = Clock::now();
        const auto sweeps = counterexample_sweep({0.5, 1.0, 1.5}, 10);
        const double secs = seconds_since(t0);
        bool ok = secs < 10.0;
        std::string d;
        for (const auto& s : sweeps) {
            const double expected = 2.0 * oracle::pi * (1.0 - s.H);
            // H = 1: the law is flat; judge absolutely against the H = 0.5 scale
            const double scale = std::abs(expected) > 0.0 ? std::abs(expected) : 2.0 * oracle::pi * 0.5;
            const double rel = std::abs(s.fit.slope - expected) / scale;
            ok = ok && rel <= 1e-3;
            d += fmt("H=%.1f slope=%.6f expected=%.6f rel=%.2e; ", s.H, s.fit.slope, expected, rel);
        }
        return Verdict{ok, d + fmt("runtime %.2f s", secs)};
    });

    t.report(2, "spherical cap oracle", [] {
        const BoundaryCurve c = scenario_curve("equator", kResolution);
        const auto t0 = Clock::now();
        const auto [disk, rep] = solve_side(c, kBall, 0.5, SolveOptions{});
        const double secs = seconds_since(t0);
        g_minimizers.push_back({"equator H=0.5 (cap oracle)", rep});
        const double expected = cap_area(2.0, 1.0), area = total_area(disk);
        const double rel = std::abs(area - expected) / expected;
        const bool ok = disk.num_vertices() >= 2000 && rep.converged && rel <= 0.01 && rep.fraction_within_tol >= 0.95 &&
                        secs < 60.0;
        return Verdict{ok, fmt("vertices=%.0f area=%.6f expected=%.6f rel=%.2e", disk.num_vertices(), area, expected, rel) +
                               fmt(" within-tol fraction=%.3f runtime %.1f s", rep.fraction_within_tol, secs) +
                               " status=" + rep.status};
    });

    t.report(3, "H = 0 flat disk", [] {
        const auto [disk, rep] = solve_side(scenario_curve("equator", kResolution), kBall, 0.0, SolveOptions{});
        g_minimizers.push_back({"equator H=0", rep});
        const double area = total_area(disk), rel = std::abs(area - oracle::pi) / oracle::pi;
        return Verdict{rep.converged && rel <= 0.005, fmt("area=%.6f rel=%.2e", area, rel) + " status=" + rep.status};
    });

    t.report(4, "Rellich pair", [] {
        const SolveOptions o;
        const BoundaryCurve c = scenario_curve("equator", kResolution);
        const RellichResult r = rellich_pair(c, kBall, 0.5, o, true);
        g_minimizers.push_back({"rellich minus", r.report.minus});
        g_minimizers.push_back({"rellich plus", r.report.plus});
        const double sep = 2.0 * (2.0 - std::sqrt(3.0));
        const double rel = std::abs(r.report.hausdorff - sep) / sep;
        const double mirror = hausdorff_distance(mirrored_z(r.minus), r.plus);
        const RellichResult z = rellich_pair(c, kBall, 0.0, o, true);
        const double mesh_tol = default_intersection_tol(z.minus);
        const bool ok = r.report.minus.converged && r.report.plus.converged && r.report.minus.embedded &&
                        r.report.plus.embedded && mirror <= 10.0 * o.residual_tol && rel <= 0.01 &&
                        z.report.hausdorff <= mesh_tol;
        return Verdict{ok, fmt("separation=%.6f expected=%.6f rel=%.2e mirror=%.2e", r.report.hausdorff, sep, rel, mirror) +
                               fmt(" H=0 separation=%.2e", z.report.hausdorff)};
    });

    t.report(5, "embeddedness suite", [] {
        bool ok = true;
        int embedded = 0, total = 0;
        std::string bad;
        for (const std::string id : {"equator", "circle:0.9", "gamma1", "gamma2"}) {
            const BoundaryCurve c = scenario_curve(id, kResolution);
            for (double H : {0.25, 0.5, 0.75}) {
                const auto rep = solve_side(c, kBall, H, SolveOptions{}).second;
                g_minimizers.push_back({id + fmt(" H=%.2f", H), rep});
                ++total;
                if (rep.converged && rep.embedded) ++embedded;
                else {
                    ok = false;
                    bad += " " + id + fmt("@%.2f", H) + "(" + rep.status + ")";
                }
            }
        }
        const bool fixture_embedded = is_embedded(bridged_caps_fixture().disk);
        ok = ok && !fixture_embedded;
        return Verdict{ok, fmt("%.0f/%.0f minimizers embedded; bridged-caps fixture ", embedded, total) +
                               (fixture_embedded ? "embedded" : "not embedded") + bad};
    });

    t.report(6, "H-concavity", [] {
        int violations = 0, converged = 0;
        std::string bad;
        for (const auto& [name, rep] : g_minimizers) {
            if (!rep.converged) continue;
            ++converged;
            violations += rep.violations;
            if (rep.violations) bad += " " + name;
        }
        return Verdict{converged > 0 && violations == 0,
                       fmt("%.0f converged minimizers, %.0f violations outside the collar", converged, violations) + bad};
    });

    t.report(7, "functional equivalence", [] {
        double worst = 0.0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            const auto fx = fixtures::random_map(s);
            const double H = 0.1 + 0.009 * s;
            const double E = oracle::dirichlet(fx.map.reference, fx.map.image, fx.map.triangles);
            const double A = oracle::area(fx.map.image, fx.map.triangles);
            const double res = equivalence_residual(fx.map, fx.region, H);
            worst = std::max(worst, std::abs(res - (E - 2.0 * A)) / E);
        }
        double worst_w = 0.0;
        std::mt19937_64 rng(5);
        std::normal_distribution<double> N(0.0, 0.02);
        for (int k = 0; k < 10; ++k) {
            TriangleMesh m = icosphere(1 + k % 3, 0.5 + 0.2 * k);
            const Vec3 shift(N(rng) * 50, N(rng) * 50, N(rng) * 50);
            for (auto& p : m.vertices) p += shift + Vec3(N(rng), N(rng), N(rng));
            const double v = oracle::closed_volume(m);
            worst_w = std::max(worst_w, std::abs(algebraic_volume(m) - 3.0 * v) / std::abs(3.0 * v));
        }
        return Verdict{worst <= 1e-9 && worst_w <= 1e-9,
                       fmt("max relative |F_H - (2I_H - C2) - (E - 2A)| = %.2e; max relative |W - 3 Vol| = %.2e", worst,
                           worst_w)};
    });

    t.report(8, "surgery contract", [] {
        const CreaseFixture f = crease_fixture();
        const double H = 0.5;
        auto ih = [&](const ReferenceMap& u) {
            return *i_h(make_enclosure(u.image_disk(), f.region.cap), H, MetricField::euclidean()).i_h;
        };
        const SwapResult s = surgery_swap(f.map, f.loop_plus, f.loop_minus);
        const double d = std::abs(ih(s.map) - ih(f.map));
        SmoothFoldOptions o;
        const SmoothFoldResult r = smooth_fold(s.map, f.loop_plus, f.region, H, o);
        const double after = ih(r.map);
        const double decrease = ih(s.map) - after;
        return Verdict{d <= 1e-9 && decrease >= o.delta_min && decrease > 0.0,
                       fmt("|delta I_H| under swap = %.2e; smooth_fold decrease = %.4e (delta_min %.0e)", d, decrease,
                           o.delta_min)};
    });

    t.report(9, "self-intersection oracle", [] {
        IntersectOptions bf;
        bf.brute_force = true;
        int agree = 0, clean = 0, max_tris = 0;
        for (std::uint64_t s = 0; s < 20; ++s) {
            const TriangleMesh m = fixtures::random_immersion(s);
            max_tris = std::max(max_tris, m.num_triangles());
            const auto grid = self_intersections(m);
            const auto all = self_intersections(m, bf);
            if (!grid.empty() && same_segments(grid, all, grid.tol)) ++agree;
            if (grid.isolated_points == 0 && grid.interior_endpoints == 0) ++clean;
        }
        return Verdict{agree == 20 && clean == 20 && max_tris <= 500,
                       fmt("%.0f/20 identical segment sets, %.0f/20 without isolated points or interior endpoints, "
                           "largest fixture %.0f triangles",
                           agree, clean, max_tris)};
    });

    t.report(10, "determinism", [] {
        const fs::path dir = fs::temp_directory_path() / "hplateau_acceptance_determinism";
        fs::remove_all(dir);
        const std::vector<std::vector<std::string>> cmds{
            {"solve", "--curve", "gamma1", "--H", "0.5", "--resolution", "800", "--seed", "11"},
            {"rellich", "--curve", "equator", "--H", "0.5", "--resolution", "800", "--seed", "11", "--jobs", "2"},
            {"counterexample", "--H", "1.5", "--n-max", "6"},
        };
        bool ok = true;
        int compared = 0;
        for (size_t i = 0; i < cmds.size(); ++i) {
            std::vector<std::string> outs;
            for (int rep = 0; rep < 2; ++rep) {
                const fs::path out = dir / std::to_string(i) / std::to_string(rep);
                auto args = cmds[i];
                args.insert(args.end(), {"--out", out.string()});
                ok = ok && run_args(args) == 0;
                outs.push_back(slurp(out / "report.json"));
            }
            ok = ok && !outs[0].empty() && outs[0] == outs[1];
            ++compared;
        }
        fs::remove_all(dir);
        return Verdict{ok, fmt("%.0f commands run twice, reports byte-identical", compared)};
    });

    std::printf("%s: %d of 10 criteria failed\n", t.failed ? "FAIL" : "PASS", t.failed);
    return t.failed ? 1 : 0;
}
