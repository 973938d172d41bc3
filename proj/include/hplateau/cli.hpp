#pragma once

// Command-line front end: solve, rellich, counterexample, verify, oracle.

#include "registry.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <iostream>

namespace hplateau {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitValidation = 2, kExitNotConverged = 3 };

struct RunConfig {
    std::string command;
    std::string domain = "ball:1";
    std::string curve = "equator";
    double H = 0.5;
    std::string side = "minus";
    int resolution = 2107;
    double tol = 0.05;
    int max_iters = 600;
    std::uint64_t seed = 0;
    std::string out = "out";
    int jobs = 1;
    int n_max = 10;
    double delta = 0.0;
    std::string suite_curves = "equator,circle:0.9,gamma1,gamma2";
    std::string suite_h = "0.25,0.5,0.75";
};

/// Thrown for bad user input; maps to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

namespace cli {

inline AmbientDomain parse_domain(const std::string& s) {
    double x = 0.0;
    try {
        if (detail::parse_suffix(s, "ball:", x)) return AmbientDomain::ball(x);
        if (detail::parse_suffix(s, "modcyl:", x)) return AmbientDomain::modified_cylinder(x);
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
    throw ValidationError(concat("bad --domain '", s, "' (expected ball:R or modcyl:EPS)"));
}

inline std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') { if (!cur.empty()) out.push_back(cur); cur.clear(); }
        else if (c != ' ') cur += c;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline Side parse_side(const std::string& s) {
    if (s == "minus") return Side::Minus;
    if (s == "plus") return Side::Plus;
    throw ValidationError(concat("bad --side '", s, "' (expected minus or plus)"));
}

inline SolveOptions solve_options(const RunConfig& c) {
    if (!(c.tol > 0.0)) throw ValidationError("--tol must be positive");
    if (c.max_iters < 1) throw ValidationError("--max-iters must be at least 1");
    SolveOptions o;
    o.residual_tol = c.tol;
    o.max_iterations = c.max_iters;
    o.seed = c.seed;
    o.side = parse_side(c.side);
    return o;
}

inline AmbientDomain ball_domain(const RunConfig& c) {
    AmbientDomain d = parse_domain(c.domain);
    if (!d.is_ball()) throw ValidationError("this command needs a ball domain (--domain ball:R)");
    try {
        require_feasible_h(c.H, d);
    } catch (const InfeasibleHError& e) {
        throw ValidationError(e.what());
    }
    return d;
}

inline BoundaryCurve load_curve(const RunConfig& c, const AmbientDomain& d) {
    try {
        return scenario_curve(c.curve, c.resolution, d.as_ball().radius);
    } catch (const UnknownScenarioError& e) {
        throw ValidationError(e.what());
    }
}

inline nlohmann::ordered_json config_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["command"] = c.command;
    j["domain"] = c.domain;
    j["curve"] = c.curve;
    j["H"] = c.H;
    j["side"] = c.side;
    j["resolution"] = c.resolution;
    j["tol"] = c.tol;
    j["max_iters"] = c.max_iters;
    j["seed"] = c.seed;
    return j;
}

inline void write_text(const std::filesystem::path& p, const std::string& s) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error(concat("cannot write ", p.string()));
    os << s;
}

inline void write_json(const std::filesystem::path& p, const nlohmann::ordered_json& j) {
    write_text(p, j.dump(2) + "\n");
}

/// Runs `n` independent tasks on up to `jobs` threads; results land by index.
template <class F>
void parallel_for(int n, int jobs, F&& f) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            try {
                for (int i = next++; i < n; i = next++) f(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// ---------------------------------------------------------------------------

inline int cmd_solve(const RunConfig& c, std::ostream& log) {
    const AmbientDomain d = ball_domain(c);
    const SolveOptions o = solve_options(c);
    const BoundaryCurve curve = load_curve(c, d);
    auto [disk, rep] = solve_side(curve, d, c.H, o);
    const std::filesystem::path out(c.out);
    std::filesystem::create_directories(out);
    save_hpmesh((out / concat("disk_", side_name(o.side), ".hpmesh")).string(), disk);
    nlohmann::ordered_json j;
    j["config"] = config_json(c);
    j["report"] = to_json(rep);
    write_json(out / "report.json", j);
    std::ostringstream s;
    s << "solve " << curve.name << " H=" << c.H << " side=" << side_name(o.side) << "\n"
      << "status: " << rep.status << " after " << rep.iterations << " iterations\n"
      << "residual (q95): " << fmt(rep.residual) << " (tol " << c.tol << ")\n"
      << "area: " << fmt(*rep.energies.area) << "  volume: " << fmt(*rep.energies.volume)
      << "  I_H: " << fmt(*rep.energies.i_h) << "\n"
      << "embedded: " << (rep.embedded ? "yes" : "no") << "  concavity violations: " << rep.violations << "\n";
    write_text(out / "summary.txt", s.str());
    log << s.str();
    return rep.converged ? kExitOk : kExitNotConverged;
}

inline int cmd_rellich(const RunConfig& c, std::ostream& log) {
    const AmbientDomain d = ball_domain(c);
    const SolveOptions o = solve_options(c);
    const BoundaryCurve curve = load_curve(c, d);
    RellichResult r = rellich_pair(curve, d, c.H, o, c.jobs > 1);
    const std::filesystem::path out(c.out);
    std::filesystem::create_directories(out);
    save_hpmesh((out / "disk_minus.hpmesh").string(), r.minus);
    save_hpmesh((out / "disk_plus.hpmesh").string(), r.plus);
    nlohmann::ordered_json j;
    j["config"] = config_json(c);
    j["report"] = to_json(r.report);
    write_json(out / "report.json", j);
    std::ostringstream s;
    s << "rellich " << curve.name << " H=" << c.H << "\n"
      << "minus: " << r.report.minus.status << " residual " << fmt(r.report.minus.residual) << " embedded "
      << r.report.minus.embedded << "\n"
      << "plus:  " << r.report.plus.status << " residual " << fmt(r.report.plus.residual) << " embedded "
      << r.report.plus.embedded << "\n"
      << "hausdorff separation: " << fmt(r.report.hausdorff) << "\n";
    write_text(out / "summary.txt", s.str());
    log << s.str();
    return r.report.minus.converged && r.report.plus.converged ? kExitOk : kExitNotConverged;
}

inline int cmd_counterexample(const RunConfig& c, std::ostream& log) {
    double eps = 0.05;
    if (c.domain.rfind("modcyl:", 0) == 0) eps = parse_domain(c.domain).as_cylinder().eps;
    if (!(c.H > 0.0 && c.H < 2.0)) throw ValidationError("counterexample: H must lie in (0, 2)");
    if (c.n_max < 2) throw ValidationError("--n-max must be at least 2");
    if (!(c.delta >= 0.0 && c.delta < 0.25)) throw ValidationError("--delta must lie in [0, 1/4)");
    const auto sweep = counterexample_sweep({c.H}, c.n_max, eps, c.delta).front();
    nlohmann::ordered_json j;
    j["config"] = {{"command", c.command}, {"H", c.H}, {"eps", eps}, {"delta", c.delta}, {"n_max", c.n_max}};
    j["n"] = sweep.n;
    j["i_hat"] = sweep.i_hat;
    j["differences"] = sweep.differences;
    j["c0"] = sweep.c0;
    j["slope"] = sweep.fit.slope;
    j["intercept"] = sweep.fit.intercept;
    j["fit_residual"] = sweep.fit.max_residual;
    j["expected_slope"] = sweep.expected_slope;
    j["relative_slope_error"] = std::abs(sweep.fit.slope - sweep.expected_slope) /
                                std::max(std::abs(sweep.expected_slope), 1e-300);
    const std::filesystem::path out(c.out);
    std::filesystem::create_directories(out);
    write_json(out / "report.json", j);
    std::ostringstream s;
    s << "counterexample H=" << c.H << " eps=" << eps << " n=1.." << c.n_max << "\n"
      << "fitted slope: " << fmt(sweep.fit.slope) << "  expected 2 pi (1 - H) = " << fmt(sweep.expected_slope) << "\n";
    write_text(out / "summary.txt", s.str());
    log << s.str();
    return kExitOk;
}

inline int cmd_verify(const RunConfig& c, std::ostream& log) {
    const AmbientDomain d = parse_domain(c.domain);
    if (!d.is_ball()) throw ValidationError("verify needs a ball domain");
    SolveOptions o = solve_options(c);
    struct Item {
        std::string curve;
        double H;
        SolveReport rep;
    };
    std::vector<Item> items;
    const auto curves = split(c.suite_curves);
    std::vector<double> hs;
    for (const auto& h : split(c.suite_h)) {
        double v = 0.0;
        if (!detail::parse_suffix("h" + h, "h", v)) throw ValidationError(concat("bad H value '", h, "'"));
        try {
            require_feasible_h(v, d);
        } catch (const InfeasibleHError& e) {
            throw ValidationError(e.what());
        }
        hs.push_back(v);
    }
    std::vector<BoundaryCurve> loaded;
    for (const auto& name : curves) {
        RunConfig cc = c;
        cc.curve = name;
        loaded.push_back(load_curve(cc, d));
    }
    for (const auto& name : curves)
        for (double h : hs) items.push_back({name, h, {}});
    parallel_for(static_cast<int>(items.size()), c.jobs, [&](int i) {
        const size_t ci = static_cast<size_t>(i) / hs.size();
        items[i].rep = solve_side(loaded[ci], d, items[i].H, o).second;
    });
    const BridgedCaps fixture = bridged_caps_fixture();
    const bool fixture_embedded = is_embedded(fixture.disk);

    nlohmann::ordered_json j;
    j["config"] = config_json(c);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    bool all_converged = true, all_ok = true;
    std::ostringstream s;
    s << "verify: " << items.size() << " solves\n";
    for (const auto& it : items) {
        const bool ok = it.rep.converged && it.rep.embedded && it.rep.violations == 0;
        all_converged = all_converged && it.rep.converged;
        all_ok = all_ok && ok;
        arr.push_back({{"curve", it.curve},
                       {"H", it.H},
                       {"converged", it.rep.converged},
                       {"status", it.rep.status},
                       {"iterations", it.rep.iterations},
                       {"residual", it.rep.residual},
                       {"embedded", it.rep.embedded},
                       {"violations", it.rep.violations},
                       {"pass", ok}});
        s << (ok ? "PASS " : "FAIL ") << it.curve << " H=" << it.H << " residual=" << fmt(it.rep.residual)
          << " embedded=" << it.rep.embedded << " violations=" << it.rep.violations << "\n";
    }
    j["items"] = arr;
    j["bridged_fixture_embedded"] = fixture_embedded;
    all_ok = all_ok && !fixture_embedded;
    j["pass"] = all_ok;
    s << (fixture_embedded ? "FAIL" : "PASS") << " bridged-caps fixture is "
      << (fixture_embedded ? "embedded" : "not embedded") << "\n";
    const std::filesystem::path out(c.out);
    std::filesystem::create_directories(out);
    write_json(out / "report.json", j);
    write_text(out / "summary.txt", s.str());
    log << s.str();
    if (!all_converged) return kExitNotConverged;
    return all_ok ? kExitOk : kExitFailure;
}

inline int cmd_oracle(const RunConfig& c, std::ostream& log) {
    ScenarioRequest req;
    req.id = c.curve;
    if (req.id == "equator") req.id = "equator_cap";
    if (req.id == "gamma1") req.id = "gamma1_bridge";
    if (req.id == "gamma2") req.id = "gamma2_symmetric";
    if (std::find(scenario_ids().begin(), scenario_ids().end(), req.id) == scenario_ids().end())
        throw ValidationError(UnknownScenarioError(c.curve).what());
    req.H = c.H;
    req.resolution = c.resolution;
    if (c.delta > 0.0) req.delta = c.delta;
    const bool cyl = req.id.rfind("counterexample", 0) == 0;
    if (cyl) {
        if (!(c.H > 0.0 && c.H < 2.0)) throw ValidationError("counterexample: H must lie in (0, 2)");
        if (c.domain.rfind("modcyl:", 0) == 0) req.eps = parse_domain(c.domain).as_cylinder().eps;
    } else {
        try {
            require_feasible_h(c.H, AmbientDomain::ball(1.0));
        } catch (const InfeasibleHError& e) {
            throw ValidationError(e.what());
        }
    }
    const std::filesystem::path out(c.out);
    const auto manifest = emit_scenario(req, out);
    write_json(out / "report.json", manifest);
    std::ostringstream s;
    s << "oracle " << req.id << ": wrote";
    for (const auto& f : manifest["files"]) s << " " << f.get<std::string>();
    s << "\n";
    write_text(out / "summary.txt", s.str());
    log << s.str();
    return kExitOk;
}

}  // namespace cli

/// Executes a parsed configuration. Returns the process exit code.
inline int run(const RunConfig& c, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
    try {
        if (c.command == "solve") return cli::cmd_solve(c, log);
        if (c.command == "rellich") return cli::cmd_rellich(c, log);
        if (c.command == "counterexample") return cli::cmd_counterexample(c, log);
        if (c.command == "verify") return cli::cmd_verify(c, log);
        if (c.command == "oracle") return cli::cmd_oracle(c, log);
        err << "error: unknown command '" << c.command << "'\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

/// Parses argv (flags, optionally a key = value config file via --config;
/// flags override the file) and runs the chosen command.
inline int run_cli(int argc, const char* const* argv, std::ostream& log = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"H-Plateau solver and verification workbench", "hplateau"};
    app.require_subcommand(1, 1);
    RunConfig c;
    app.set_config("--config", "", "key = value file mirroring the flag names");
    app.add_option("--domain", c.domain, "ball:R or modcyl:EPS")->capture_default_str();
    app.add_option("--curve", c.curve, "scenario id or .hpcurve path")->capture_default_str();
    app.add_option("--H", c.H, "mean curvature")->capture_default_str();
    app.add_option("--side", c.side, "minus or plus")->capture_default_str();
    app.add_option("--resolution", c.resolution, "target vertices per disk")->capture_default_str();
    app.add_option("--tol", c.tol, "mean-curvature residual tolerance")->capture_default_str();
    app.add_option("--max-iters", c.max_iters, "iteration cap")->capture_default_str();
    app.add_option("--seed", c.seed, "seed recorded with the run")->capture_default_str();
    app.add_option("--out", c.out, "output directory")->capture_default_str();
    app.add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
    app.add_option("--n-max", c.n_max, "largest n of the counterexample sweep")->capture_default_str();
    app.add_option("--delta", c.delta, "slant of the counterexample family")->capture_default_str();
    app.add_option("--suite-curves", c.suite_curves, "verify: comma-separated curves")->capture_default_str();
    app.add_option("--suite-H", c.suite_h, "verify: comma-separated H values")->capture_default_str();
    for (const char* name : {"solve", "rellich", "counterexample", "verify", "oracle"})
        app.add_subcommand(name)->fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        log << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    c.command = app.get_subcommands().front()->get_name();
    return run(c, log, err);
}

}  // namespace hplateau
