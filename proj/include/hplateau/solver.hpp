#pragma once

// Minimization of I_H over disks with fixed boundary inside a ball.

#include "curve.hpp"
#include "distance.hpp"
#include "functionals.hpp"
#include "intersect.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <thread>

namespace hplateau {

struct SolveOptions {
    int max_iterations = 600;
    double residual_tol = 0.05;      // on |H_disc - H n|, 1/length
    double armijo_c = 1e-4;
    double initial_step = 1.0;
    int max_halvings = 30;
    int refinement_levels = 0;
    Side side = Side::Minus;
    std::uint64_t seed = 0;
    double offset_fraction = 0.05;   // inward offset of the initial cap, relative to R
    double energy_rel_tol = 1e-9;    // stationarity test on the relative I_H decrease
    double residual_quantile = 0.95;
    int collar_rings = 2;            // H-concavity collar
    double concavity_tau = 0.05;
    bool check_embedding = true;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
    double fraction_within_tol = 0.0;
    std::vector<double> i_h_trace;
    bool embedded = false;
    int violations = 0;
    double min_interior_depth = 0.0;
    EnergyBreakdown energies;
    std::string status;
    std::vector<std::string> warnings;
    Side side = Side::Minus;
    std::uint64_t seed = 0;
};

inline nlohmann::ordered_json to_json(const SolveReport& r) {
    nlohmann::ordered_json j;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
    j["fraction_within_tol"] = r.fraction_within_tol;
    j["i_h_trace"] = r.i_h_trace;
    j["embedded"] = r.embedded;
    j["violations"] = r.violations;
    j["min_interior_depth"] = r.min_interior_depth;
    j["energies"] = to_json(r.energies);
    j["status"] = r.status;
    j["warnings"] = r.warnings;
    j["side"] = side_name(r.side);
    j["seed"] = r.seed;
    return j;
}

/// Checks H against the admissible range of the domain.
inline void require_feasible_h(double H, const AmbientDomain& domain) {
    const HInterval iv = feasible_h_range(domain);
    if (!iv.contains(H))
        throw InfeasibleHError(concat("H = ", H, " is outside the feasible range [", iv.lo, ", ", iv.hi,
                                      ") for this domain (H must stay below the convexity bound 1/R)"));
}

// ---------------------------------------------------------------------------
// Initialization

/// The chosen cap copied, reversed so that its normals point away from the
/// enclosed region, and pushed inward by `offset_fraction` of the radius
/// with a taper that keeps the boundary fixed.
inline TriangulatedDisk initialize_sweep(const BoundaryCurve& curve, const AmbientDomain& domain, Side side,
                                         double offset_fraction = 0.05) {
    if (!domain.is_ball()) throw Error("initialize_sweep: ball domains only");
    if (!curve.has_caps()) throw Error("initialize_sweep: boundary curve has no caps");
    TriangleMesh m = reversed(curve.cap(side));
    std::vector<int> seeds(curve.size());
    std::iota(seeds.begin(), seeds.end(), 0);
    const auto ring = ring_distance(m, seeds);
    for (int v = curve.size(); v < m.num_vertices(); ++v) {
        const double w = std::min(1.0, std::max(ring[v], 0) / 3.0);
        m.vertices[v] *= (1.0 - offset_fraction * w);
    }
    TriangulatedDisk d = make_disk(std::move(m));
    d.boundary_loop = rotate_loop_to(d.boundary_loop, 0);
    return d;
}

// ---------------------------------------------------------------------------
// Energy and gradient

namespace detail {

struct IhState {
    double area = 0.0, volume = 0.0, energy = 0.0;
};

inline IhState evaluate_ih(const std::vector<Point3>& X, const std::vector<Tri>& tris, double cap_cone, double H) {
    CompensatedSum a, v;
    for (const Tri& f : tris) {
        const Point3 &p0 = X[f[0]], &p1 = X[f[1]], &p2 = X[f[2]];
        a += 0.5 * (p1 - p0).cross(p2 - p0).norm();
        v += p0.dot(p1.cross(p2)) / 6.0;
    }
    IhState s;
    s.area = a.value();
    s.volume = v.value() + cap_cone;
    s.energy = s.area + 2.0 * H * s.volume;
    return s;
}

inline Eigen::MatrixXd gradient_ih(const std::vector<Point3>& X, const std::vector<Tri>& tris, double H) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(X.size()), 3);
    for (const Tri& f : tris) {
        const Point3 &p0 = X[f[0]], &p1 = X[f[1]], &p2 = X[f[2]];
        Vec3 n = (p1 - p0).cross(p2 - p0);
        const double l = n.norm();
        if (l > 0) n /= l;
        const Point3* P[3] = {&p0, &p1, &p2};
        for (int k = 0; k < 3; ++k) {
            const Point3 &b = *P[(k + 1) % 3], &c = *P[(k + 2) % 3];
            const Vec3 ga = 0.5 * n.cross(c - b) + (2.0 * H / 6.0) * b.cross(c);
            g.row(f[k]) += ga.transpose();
        }
    }
    return g;
}

/// Clamped cotangent stiffness on the free vertices.
inline Eigen::SparseMatrix<double> cotan_stiffness(const std::vector<Point3>& X, const std::vector<Tri>& tris,
                                                   const std::vector<int>& free_index, int nfree) {
    std::unordered_map<std::uint64_t, double> w;
    for (const Tri& f : tris)
        for (int k = 0; k < 3; ++k) {
            const int i = f[k], j = f[(k + 1) % 3], o = f[(k + 2) % 3];
            w[edge_key(i, j)] += 0.5 * cotangent(X[i] - X[o], X[j] - X[o]);
        }
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> diag(nfree, 0.0);
    for (auto& [key, val] : w) {
        const int i = static_cast<int>(key >> 32), j = static_cast<int>(key & 0xffffffffu);
        const double c = std::max(val, 1e-2);
        const int fi = free_index[i], fj = free_index[j];
        if (fi >= 0) diag[fi] += c;
        if (fj >= 0) diag[fj] += c;
        if (fi >= 0 && fj >= 0) {
            trip.emplace_back(fi, fj, -c);
            trip.emplace_back(fj, fi, -c);
        }
    }
    for (int i = 0; i < nfree; ++i) trip.emplace_back(i, i, diag[i] + 1e-12);
    Eigen::SparseMatrix<double> L(nfree, nfree);
    L.setFromTriplets(trip.begin(), trip.end());
    return L;
}

inline bool step_is_valid(const std::vector<Point3>& Xold, const std::vector<Point3>& Xnew,
                          const std::vector<Tri>& tris, double area_tol) {
    for (const Tri& f : tris) {
        const Vec3 n0 = (Xold[f[1]] - Xold[f[0]]).cross(Xold[f[2]] - Xold[f[0]]);
        const Vec3 n1 = (Xnew[f[1]] - Xnew[f[0]]).cross(Xnew[f[2]] - Xnew[f[0]]);
        if (!(0.5 * n1.norm() > area_tol)) return false;
        if (n0.dot(n1) <= 0.0) return false;
    }
    return true;
}

}  // namespace detail

struct ResidualStats {
    double quantile = 0.0;        // requested quantile of |H_disc - H n|
    double fraction_within = 0.0;  // share of interior vertices within tol
    double max = 0.0;
};

/// Mean-curvature residual |H_disc - H n| over interior vertices, n the disk
/// normal (pointing away from the enclosed region).
inline ResidualStats mean_curvature_residual(const TriangleMesh& disk, double H, double tol, double q = 0.95) {
    const MeanCurvatureField hf = mean_curvature(disk, MetricField::euclidean(), CurvatureWeight::Variational);
    const auto normals = vertex_normals(disk);
    std::vector<double> r;
    for (int v = 0; v < disk.num_vertices(); ++v)
        if (hf.interior[v]) r.push_back((hf.vector[v] - H * normals[v]).norm());
    ResidualStats s;
    if (r.empty()) return s;
    int within = 0;
    for (double x : r) {
        if (x <= tol) ++within;
        s.max = std::max(s.max, x);
    }
    s.fraction_within = static_cast<double>(within) / r.size();
    const size_t k = std::min(r.size() - 1, static_cast<size_t>(std::ceil(q * r.size())) - 1);
    std::nth_element(r.begin(), r.begin() + k, r.end());
    s.quantile = r[k];
    return s;
}

inline double min_interior_depth(const TriangleMesh& disk, const AmbientDomain& domain) {
    auto bmask = boundary_vertex_mask(disk);
    double d = std::numeric_limits<double>::infinity();
    for (int v = 0; v < disk.num_vertices(); ++v)
        if (!bmask[v]) d = std::min(d, domain.depth(disk.vertices[v]));
    return d;
}

/// Refines disk and curve together: one midpoint subdivision, with boundary
/// midpoints pushed radially onto the sphere in both meshes.
inline std::pair<TriangulatedDisk, BoundaryCurve> refine_problem(const TriangulatedDisk& disk,
                                                                 const BoundaryCurve& curve) {
    const double R = curve.radius;
    auto onto_sphere = [R](const Point3& p) { return Point3(R * p.normalized()); };
    TriangulatedDisk d = refine_uniform(disk);
    // refine_uniform appends one midpoint per edge; recompute boundary ones
    for (size_t i = 0; i < d.boundary_loop.size(); i += 2) {
        const int mid = d.boundary_loop[i + 1];
        d.vertices[mid] = onto_sphere(d.vertices[mid]);
    }
    BoundaryCurve c = curve;
    c.samples.clear();
    for (int v : d.boundary_loop) c.samples.push_back(d.vertices[v]);
    auto refine_cap = [&](const TriangleMesh& cap) {
        TriangulatedDisk cd;
        cd.vertices = cap.vertices;
        cd.triangles = cap.triangles;
        TriangulatedDisk r = refine_uniform(cd, onto_sphere);
        for (auto& p : r.vertices) p = onto_sphere(p);
        // restore the shared boundary exactly
        auto loops = boundary_loops(r);
        return snap_boundary_to_samples(r, loops->front(), c.samples);
    };
    c.cap_minus = refine_cap(curve.cap_minus);
    c.cap_plus = refine_cap(curve.cap_plus);
    // disk boundary vertices in sample order first
    TriangleMesh dm = boundary_first(d, d.boundary_loop);
    TriangulatedDisk out;
    out.vertices = dm.vertices;
    out.triangles = dm.triangles;
    for (int i = 0; i < static_cast<int>(d.boundary_loop.size()); ++i) out.vertices[i] = c.samples[i];
    out.boundary_loop.resize(d.boundary_loop.size());
    std::iota(out.boundary_loop.begin(), out.boundary_loop.end(), 0);
    return {out, c};
}

/// Cotangent-preconditioned gradient descent with Armijo backtracking on
/// I_H = Area + 2 H Vol, boundary vertices pinned.
inline std::pair<TriangulatedDisk, SolveReport> minimize_ih(const TriangulatedDisk& init, const BoundaryCurve& boundary,
                                                            const AmbientDomain& domain, double H,
                                                            const SolveOptions& opts) {
    if (!domain.is_ball()) throw Error("minimize_ih: ball domains only");
    require_feasible_h(H, domain);
    if (opts.max_iterations < 1 || !(opts.residual_tol > 0)) throw Error("minimize_ih: invalid options");
    SolveReport rep;
    rep.side = opts.side;
    rep.seed = opts.seed;
    const double R = domain.as_ball().radius;
    if (H > 0.95 / R) rep.warnings.push_back("H is close to the convexity bound 1/R; conditioning degrades");

    TriangulatedDisk disk = init;
    BoundaryCurve curve = boundary;
    for (int level = 0; level < opts.refinement_levels; ++level) std::tie(disk, curve) = refine_problem(disk, curve);

    const TriangleMesh& cap = curve.cap(opts.side);
    {
        EnclosureRegion probe = make_enclosure(disk, cap);
        require_watertight(probe);
    }
    const double cap_cone = cone_volume(cap);
    auto bmask = boundary_vertex_mask(disk);
    std::vector<int> free_index(disk.num_vertices(), -1);
    int nfree = 0;
    for (int v = 0; v < disk.num_vertices(); ++v)
        if (!bmask[v]) free_index[v] = nfree++;

    std::vector<Point3> X = disk.vertices;
    const auto& tris = disk.triangles;
    const double area_tol = degenerate_area_tolerance(disk);
    detail::IhState cur = detail::evaluate_ih(X, tris, cap_cone, H);
    rep.i_h_trace.push_back(cur.energy);
    double alpha = opts.initial_step;
    int stagnant = 0;
    rep.status = "max_iterations";
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        if (nfree == 0) { rep.status = "no_free_vertices"; break; }
        const Eigen::MatrixXd g = detail::gradient_ih(X, tris, H);
        Eigen::MatrixXd gf(nfree, 3);
        for (int v = 0; v < disk.num_vertices(); ++v)
            if (free_index[v] >= 0) gf.row(free_index[v]) = g.row(v);
        const Eigen::SparseMatrix<double> L = detail::cotan_stiffness(X, tris, free_index, nfree);
        Eigen::MatrixXd d;
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(L);
        if (ldlt.info() == Eigen::Success) d = -ldlt.solve(gf);
        if (d.size() == 0 || !d.allFinite()) d = -gf;
        double slope = (gf.array() * d.array()).sum();
        if (!(slope < 0)) { d = -gf; slope = -gf.squaredNorm(); }

        alpha = std::min(opts.initial_step, 2.0 * alpha);
        bool accepted = false;
        std::vector<Point3> Y(X.size());
        detail::IhState next;
        for (int h = 0; h <= opts.max_halvings; ++h) {
            for (int v = 0; v < disk.num_vertices(); ++v) {
                if (free_index[v] < 0) { Y[v] = X[v]; continue; }
                Y[v] = project_into_domain(X[v] + alpha * d.row(free_index[v]).transpose(), domain);
            }
            if (detail::step_is_valid(X, Y, tris, area_tol)) {
                next = detail::evaluate_ih(Y, tris, cap_cone, H);
                if (next.energy <= cur.energy + opts.armijo_c * alpha * slope) { accepted = true; break; }
            }
            alpha *= 0.5;
        }
        if (!accepted) { rep.status = "line_search_failed"; break; }
        const double rel = (cur.energy - next.energy) / std::max(std::abs(cur.energy), 1e-300);
        X.swap(Y);
        cur = next;
        rep.i_h_trace.push_back(cur.energy);
        TriangleMesh now{X, tris};
        if (rel < opts.energy_rel_tol) {
            const ResidualStats rs = mean_curvature_residual(now, H, opts.residual_tol, opts.residual_quantile);
            if (rs.quantile <= opts.residual_tol) { rep.status = "converged"; ++it; break; }
            if (rel < 1e-14 && ++stagnant >= 5) { rep.status = "stagnated"; ++it; break; }
        } else {
            stagnant = 0;
        }
    }
    rep.iterations = it;
    disk.vertices = X;
    const ResidualStats rs = mean_curvature_residual(disk, H, opts.residual_tol, opts.residual_quantile);
    rep.residual = rs.quantile;
    rep.fraction_within_tol = rs.fraction_within;
    rep.converged = rs.quantile <= opts.residual_tol && rep.status != "line_search_failed";
    if (rep.status == "converged" && !rep.converged) rep.status = "residual_above_tol";
    if (rep.status == "max_iterations" && rep.converged) rep.status = "converged";
    EnclosureRegion region = make_enclosure(disk, cap);
    rep.energies = i_h(region, H, MetricField::euclidean());
    rep.embedded = opts.check_embedding ? is_embedded(disk) : false;
    ConcavityOptions co;
    co.tau = opts.concavity_tau;
    co.eta = opts.residual_tol;
    co.collar_rings = opts.collar_rings;
    rep.violations = static_cast<int>(h_concavity_check(region, H, co).size());
    rep.min_interior_depth = min_interior_depth(disk, domain);
    return {disk, rep};
}

/// Solve starting from the chosen side's cap.
inline std::pair<TriangulatedDisk, SolveReport> solve_side(const BoundaryCurve& curve, const AmbientDomain& domain,
                                                           double H, const SolveOptions& opts) {
    require_feasible_h(H, domain);
    TriangulatedDisk init = initialize_sweep(curve, domain, opts.side, opts.offset_fraction);
    return minimize_ih(init, curve, domain, H, opts);
}

// ---------------------------------------------------------------------------
// Rellich pair

/// Normalized vector area of a closed polyline.
inline Vec3 curve_area_normal(const std::vector<Point3>& pts) {
    Vec3 a = Vec3::Zero();
    for (size_t i = 0; i < pts.size(); ++i) a += 0.5 * pts[i].cross(pts[(i + 1) % pts.size()]);
    const double n = a.norm();
    return n > 0 ? Vec3(a / n) : Vec3::UnitZ();
}

/// Mean over interior vertices of H_disc . nu.
inline double mean_curvature_along(const TriangleMesh& disk, const Vec3& nu) {
    const MeanCurvatureField hf = mean_curvature(disk);
    CompensatedSum s;
    int n = 0;
    for (int v = 0; v < disk.num_vertices(); ++v)
        if (hf.interior[v]) { s += hf.vector[v].dot(nu); ++n; }
    return n ? s.value() / n : 0.0;
}

struct PairReport {
    SolveReport minus, plus;
    double hausdorff = 0.0;
    Vec3 reference_normal = Vec3::UnitZ();
    double mean_h_minus = 0.0, mean_h_plus = 0.0;
    bool opposite_signs = false;
};

inline nlohmann::ordered_json to_json(const PairReport& p) {
    nlohmann::ordered_json j;
    j["hausdorff"] = p.hausdorff;
    j["reference_normal"] = {p.reference_normal.x(), p.reference_normal.y(), p.reference_normal.z()};
    j["mean_h_minus"] = p.mean_h_minus;
    j["mean_h_plus"] = p.mean_h_plus;
    j["opposite_signs"] = p.opposite_signs;
    j["minus"] = to_json(p.minus);
    j["plus"] = to_json(p.plus);
    return j;
}

struct RellichResult {
    TriangulatedDisk minus, plus;
    PairReport report;
};

/// Solves both sides. With `parallel`, the two sides run on separate threads;
/// results do not depend on it.
inline RellichResult rellich_pair(const BoundaryCurve& curve, const AmbientDomain& domain, double H,
                                  const SolveOptions& opts, bool parallel = false) {
    require_feasible_h(H, domain);
    SolveOptions om = opts, op = opts;
    om.side = Side::Minus;
    op.side = Side::Plus;
    std::pair<TriangulatedDisk, SolveReport> a, b;
    if (parallel) {
        std::exception_ptr err;
        std::thread t([&] {
            try { b = solve_side(curve, domain, H, op); } catch (...) { err = std::current_exception(); }
        });
        a = solve_side(curve, domain, H, om);
        t.join();
        if (err) std::rethrow_exception(err);
    } else {
        a = solve_side(curve, domain, H, om);
        b = solve_side(curve, domain, H, op);
    }
    RellichResult r;
    r.minus = std::move(a.first);
    r.plus = std::move(b.first);
    r.report.minus = a.second;
    r.report.plus = b.second;
    r.report.hausdorff = hausdorff_distance(r.minus, r.plus);
    r.report.reference_normal = curve_area_normal(curve.samples);
    r.report.mean_h_minus = mean_curvature_along(r.minus, r.report.reference_normal);
    r.report.mean_h_plus = mean_curvature_along(r.plus, r.report.reference_normal);
    r.report.opposite_signs = r.report.mean_h_minus * r.report.mean_h_plus < 0.0;
    return r;
}

/// Central-projection graph test: every triangle sees `center` on the same
/// strict side, so projection from `center` is a local homeomorphism with
/// constant orientation.
inline bool is_radial_graph(const TriangleMesh& disk, const Point3& center = Point3::Zero()) {
    int sign = 0;
    for (const Tri& f : disk.triangles) {
        const double v = (disk.vertices[f[0]] - center)
                             .dot((disk.vertices[f[1]] - center).cross(disk.vertices[f[2]] - center));
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) return false;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return sign != 0;
}

}  // namespace hplateau
