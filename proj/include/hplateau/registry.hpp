#pragma once

// String-addressable scenarios: boundary curves for the solver and
// reference artifacts (meshes plus a JSON manifest of parameters and
// closed-form values).

#include "mesh_io.hpp"
#include "scenarios.hpp"

#include <filesystem>

namespace hplateau {

class UnknownScenarioError : public Error {
public:
    explicit UnknownScenarioError(const std::string& id)
        : Error(concat("unknown scenario id '", id, "' (known: equator_cap, gamma1_bridge, gamma2_symmetric, "
                       "counterexample_straight, counterexample_slanted; curves also accept equator, circle:RHO, "
                       "latitude:Z0, gamma1, gamma2 or a .hpcurve path)")) {}
};

inline const std::vector<std::string>& scenario_ids() {
    static const std::vector<std::string> ids{"equator_cap", "gamma1_bridge", "gamma2_symmetric",
                                              "counterexample_straight", "counterexample_slanted"};
    return ids;
}

namespace detail {

inline bool parse_suffix(const std::string& s, const std::string& prefix, double& value) {
    if (s.rfind(prefix, 0) != 0) return false;
    try {
        size_t used = 0;
        value = std::stod(s.substr(prefix.size()), &used);
        return used == s.size() - prefix.size();
    } catch (const std::exception&) {
        return false;
    }
}

inline void scale_mesh(TriangleMesh& m, double s) {
    for (auto& p : m.vertices) p *= s;
}

}  // namespace detail

/// Curve on the unit sphere scaled to radius `radius`.
inline BoundaryCurve scaled_curve(BoundaryCurve c, double radius) {
    const double s = radius / c.radius;
    for (auto& p : c.samples) p *= s;
    detail::scale_mesh(c.cap_minus, s);
    detail::scale_mesh(c.cap_plus, s);
    c.radius = radius;
    return c;
}

/// Boundary curve by id or .hpcurve path, sized for roughly `resolution`
/// vertices per cap, on the sphere of radius `radius`.
inline BoundaryCurve scenario_curve(const std::string& id, int resolution, double radius = 1.0) {
    if (resolution < 50) throw Error("resolution must be at least 50 vertices");
    const int rings = rings_for_vertices(resolution);
    double x = 0.0;
    BoundaryCurve c;
    if (id == "equator" || id == "equator_cap") {
        c = circle_curve(1.0, rings);
        c.name = "equator";
    } else if (detail::parse_suffix(id, "circle:", x)) {
        c = circle_curve(x, rings);
        c.name = id;
    } else if (detail::parse_suffix(id, "latitude:", x)) {
        c = latitude_curve(x, rings);
        c.name = id;
    } else if (id == "gamma1" || id == "gamma1_bridge") {
        Gamma1Params p;
        p.cap_vertices = resolution;
        c = gamma1_curve(p);
    } else if (id == "gamma2" || id == "gamma2_symmetric") {
        Gamma2Params p;
        p.cap_vertices = resolution;
        c = gamma2_curve(p);
    } else if (std::filesystem::is_regular_file(id)) {
        c = curve_from_samples(id, load_hpcurve(id), 1.0, resolution);
    } else {
        throw UnknownScenarioError(id);
    }
    return radius == 1.0 ? c : scaled_curve(std::move(c), radius);
}

struct ScenarioRequest {
    std::string id;
    double H = 0.5;
    int resolution = 2107;
    int n = 3;              // counterexample height
    double eps = 0.05;
    double delta = 0.1;     // slanted family
};

namespace detail {

inline nlohmann::ordered_json curve_json(const BoundaryCurve& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["samples"] = c.size();
    j["cap_minus_vertices"] = c.cap_minus.num_vertices();
    j["cap_plus_vertices"] = c.cap_plus.num_vertices();
    const CurveCheck chk = check_curve(c);
    j["simple"] = chk.simple;
    j["caps_tile"] = chk.caps_tile;
    j["max_radial_error"] = chk.max_radial_error;
    return j;
}

inline TriangulatedDisk cap_disk(const TriangleMesh& cap) { return make_disk(cap); }

inline void write_curve(const std::filesystem::path& p, const BoundaryCurve& c) {
    std::ofstream os(p);
    if (!os) throw Error(concat("cannot write ", p.string()));
    write_hpcurve(os, c.samples);
}

}  // namespace detail

/// Writes the scenario's meshes into `dir` and returns its manifest (also
/// saved as manifest.json).
inline nlohmann::ordered_json emit_scenario(const ScenarioRequest& req, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json m;
    m["id"] = req.id;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    auto save = [&](const std::string& name, const TriangulatedDisk& d) {
        save_hpmesh((dir / name).string(), d);
        files.push_back(name);
    };

    if (req.id == "equator_cap") {
        m["params"] = {{"z0", 0.0}, {"rho", 1.0}, {"H", req.H}, {"resolution", req.resolution}};
        nlohmann::ordered_json sides;
        for (Side s : {Side::Minus, Side::Plus}) {
            const CapSolution cap = spherical_cap(0.0, 1.0, req.H, req.resolution, s);
            save(concat("disk_", side_name(s), ".hpmesh"), cap.mesh);
            sides[side_name(s)] = {{"R", std::isfinite(cap.R) ? nlohmann::ordered_json(cap.R) : nullptr},
                                   {"center_offset", std::isfinite(cap.center_offset)
                                                         ? nlohmann::ordered_json(cap.center_offset) : nullptr},
                                   {"sagitta", cap.sagitta},
                                   {"closed_form_area", cap.area},
                                   {"closed_form_volume", cap.enclosed_volume},
                                   {"mesh_area", total_area(cap.mesh)},
                                   {"vertices", cap.mesh.num_vertices()}};
        }
        m["reference"] = sides;
    } else if (req.id == "gamma1_bridge" || req.id == "gamma2_symmetric") {
        const bool g1 = req.id == "gamma1_bridge";
        const BoundaryCurve c = scenario_curve(req.id, req.resolution);
        detail::write_curve(dir / "curve.hpcurve", c);
        files.push_back("curve.hpcurve");
        save("cap_minus.hpmesh", detail::cap_disk(c.cap_minus));
        save("cap_plus.hpmesh", detail::cap_disk(c.cap_plus));
        m["curve"] = detail::curve_json(c);
        if (g1) {
            const Gamma1Params gp;
            m["params"] = {{"z", gp.z}, {"width", gp.width}, {"cap_vertices", req.resolution}};
            BridgedCapsParams bp;
            bp.z = gp.z;
            bp.width = gp.width;
            bp.H = req.H;
            const BridgedCaps fx = bridged_caps_fixture(bp);
            save("fixture.hpmesh", fx.disk);
            m["fixture"] = {{"H", req.H}, {"embedded", is_embedded(fx.disk)}};
        } else {
            const Gamma2Params gp;
            m["params"] = {{"beta0", gp.beta0}, {"s0", gp.s0}, {"radius", gp.radius}, {"neck", gp.neck},
                           {"cap_vertices", req.resolution}};
        }
    } else if (req.id == "counterexample_straight" || req.id == "counterexample_slanted") {
        const bool slanted = req.id == "counterexample_slanted";
        const CounterexampleFamily f =
            slanted ? slanted_family(req.n, req.delta, req.H, req.eps) : straight_family(req.n, req.eps, req.H);
        save("surface_chart.hpmesh", family_disk(f));
        m["params"] = {{"n", req.n}, {"eps", req.eps}, {"delta", slanted ? req.delta : 0.0}, {"H", req.H}};
        m["reference"] = {{"area", f.area},
                          {"volume", f.volume},
                          {"i_hat", f.i_hat},
                          {"c0", f.c0},
                          {"law", "i_hat = c0 + 2 pi n (1 - H)"}};
    } else {
        throw UnknownScenarioError(req.id);
    }
    m["files"] = files;
    std::ofstream os(dir / "manifest.json");
    os << m.dump(2) << "\n";
    return m;
}

}  // namespace hplateau
