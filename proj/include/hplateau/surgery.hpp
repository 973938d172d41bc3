#pragma once

// Subdisk swap along a matched pair of reference loops, fold detection and
// local fold smoothing with guaranteed I_H decrease.

#include "solver.hpp"

namespace hplateau {

// ---------------------------------------------------------------------------
// Subdisks bounded by reference loops

struct SubdiskPatch {
    std::vector<int> loop;               // as given
    std::vector<int> triangles;          // sorted
    std::vector<int> interior_vertices;  // sorted, excludes the loop
    int orientation = 0;                 // +1: patch contains halfedges loop[i] -> loop[i+1]
};

/// The side of a closed edge loop that does not reach the disk boundary.
inline SubdiskPatch subdisk_inside(const TriangleMesh& m, const std::vector<int>& loop) {
    const int n = static_cast<int>(loop.size());
    if (n < 3) throw Error("subdisk: loop needs at least three vertices");
    std::set<std::uint64_t> loop_edges;
    for (int i = 0; i < n; ++i) {
        if (loop[i] < 0 || loop[i] >= m.num_vertices()) throw Error("subdisk: loop vertex out of range");
        loop_edges.insert(edge_key(loop[i], loop[(i + 1) % n]));
    }
    if (static_cast<int>(loop_edges.size()) != n) throw Error("subdisk: loop repeats an edge");
    std::set<int> loop_set(loop.begin(), loop.end());
    if (static_cast<int>(loop_set.size()) != n) throw Error("subdisk: loop is not simple");

    const auto nb = triangle_neighbors(m);
    std::vector<int> comp(m.num_triangles(), -1);
    std::vector<char> comp_outer;
    int ncomp = 0;
    for (int s = 0; s < m.num_triangles(); ++s) {
        if (comp[s] >= 0) continue;
        bool outer = false;
        std::vector<int> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            const Tri& f = m.triangles[t];
            for (int k = 0; k < 3; ++k) {
                if (loop_edges.count(edge_key(f[k], f[(k + 1) % 3]))) continue;
                const int o = nb[t][k];
                if (o < 0) { outer = true; continue; }
                if (comp[o] < 0) { comp[o] = ncomp; stack.push_back(o); }
            }
        }
        comp_outer.push_back(outer);
        ++ncomp;
    }

    // every loop edge needs one triangle on each side
    std::unordered_map<std::uint64_t, std::vector<int>> at_edge;
    for (int t = 0; t < m.num_triangles(); ++t) {
        const Tri& f = m.triangles[t];
        for (int k = 0; k < 3; ++k) {
            const auto key = edge_key(f[k], f[(k + 1) % 3]);
            if (loop_edges.count(key)) at_edge[key].push_back(t);
        }
    }
    int inside = -1;
    for (auto key : loop_edges) {
        auto it = at_edge.find(key);
        if (it == at_edge.end() || it->second.size() != 2) throw Error("subdisk: loop must run along interior edges");
        for (int t : it->second) {
            if (comp_outer[comp[t]]) continue;
            if (inside >= 0 && inside != comp[t]) throw Error("subdisk: loop does not bound a single subdisk");
            inside = comp[t];
        }
    }
    if (inside < 0) throw Error("subdisk: loop does not bound a subdisk");

    SubdiskPatch p;
    p.loop = loop;
    std::set<int> verts;
    std::set<std::uint64_t> edges;
    for (int t = 0; t < m.num_triangles(); ++t) {
        if (comp[t] != inside) continue;
        p.triangles.push_back(t);
        const Tri& f = m.triangles[t];
        for (int k = 0; k < 3; ++k) {
            verts.insert(f[k]);
            edges.insert(edge_key(f[k], f[(k + 1) % 3]));
            if (f[k] == loop[0] && f[(k + 1) % 3] == loop[1]) p.orientation = 1;
            if (f[k] == loop[1] && f[(k + 1) % 3] == loop[0]) p.orientation = -1;
        }
    }
    const long chi = static_cast<long>(verts.size()) - static_cast<long>(edges.size()) +
                     static_cast<long>(p.triangles.size());
    if (chi != 1) throw Error("subdisk: bounded region is not a disk");
    for (int v : verts)
        if (!loop_set.count(v)) p.interior_vertices.push_back(v);
    return p;
}

// ---------------------------------------------------------------------------
// Swap

struct SwapResult {
    ReferenceMap map;
    std::vector<int> sigma;  // vertex correspondence of the two patches, -1 elsewhere (an involution)
    int loop_shift = 0;
    int loop_direction = 1;
    bool orientation_preserving = true;
    double loop_mismatch = 0.0;  // max image distance of matched loop vertices
};

namespace detail {

/// Cyclic alignment j = shift + dir * i minimizing the worst image distance.
inline std::tuple<int, int, double> align_loops(const std::vector<Point3>& img, const std::vector<int>& a,
                                                const std::vector<int>& b) {
    const int n = static_cast<int>(a.size());
    double best = std::numeric_limits<double>::infinity();
    int bs = 0, bd = 1;
    for (int dir : {1, -1})
        for (int s = 0; s < n; ++s) {
            double worst = 0.0;
            for (int i = 0; i < n && worst < best; ++i) {
                const int j = ((s + dir * i) % n + n) % n;
                worst = std::max(worst, (img[a[i]] - img[b[j]]).norm());
            }
            if (worst < best) { best = worst; bs = s; bd = dir; }
        }
    return {bs, bd, best};
}

}  // namespace detail

struct SwapOptions {
    double tol = -1.0;  // image matching tolerance; negative: 1e-8 x bbox diagonal
    /// A reversing pair hands each patch the other's image with flipped
    /// orientation, which changes the oriented volume by twice the volume
    /// the two patches bound. Off by default.
    bool allow_orientation_reversal = false;
};

/// Exchanges the images of the subdisks bounded by `loop_plus` and
/// `loop_minus`. The loops must have equal length and coincide in image
/// within `tol` after a cyclic (possibly reversed) shift; the two patches
/// must be disjoint and combinatorially compatible, and the correspondence
/// is extended from the loops across the patches.
inline SwapResult surgery_swap(const ReferenceMap& u, const std::vector<int>& loop_plus,
                               const std::vector<int>& loop_minus, const SwapOptions& opt = {}) {
    validate_reference(u);
    const TriangulatedDisk img = u.image_disk();
    const double tol = opt.tol >= 0 ? opt.tol : 1e-8 * std::max(1.0, bbox_diagonal(img));
    if (loop_plus.size() != loop_minus.size()) throw Error("surgery_swap: loops not image-matched (different lengths)");
    const SubdiskPatch pp = subdisk_inside(img, loop_plus);
    const SubdiskPatch pm = subdisk_inside(img, loop_minus);

    {
        std::set<int> a(pp.interior_vertices.begin(), pp.interior_vertices.end());
        a.insert(loop_plus.begin(), loop_plus.end());
        for (int v : pm.interior_vertices)
            if (a.count(v)) throw Error("surgery_swap: subdisks not disjoint");
        for (int v : loop_minus)
            if (a.count(v)) throw Error("surgery_swap: subdisks not disjoint");
    }

    const int n = static_cast<int>(loop_plus.size());
    auto [shift, dir, mismatch] = detail::align_loops(u.image, loop_plus, loop_minus);
    if (!(mismatch <= tol))
        throw Error(concat("surgery_swap: loops not image-matched (worst distance ", mismatch, ")"));

    SwapResult r;
    r.loop_shift = shift;
    r.loop_direction = dir;
    r.loop_mismatch = mismatch;
    r.orientation_preserving = pp.orientation * dir == pm.orientation;
    if (!r.orientation_preserving && !opt.allow_orientation_reversal)
        throw Error("surgery_swap: loop pair reverses orientation; the swap would change the oriented volume");

    // halfedge -> triangle inside the minus patch
    std::unordered_map<std::uint64_t, int> he_minus;
    auto he = [](int a, int b) { return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b); };
    for (int t : pm.triangles) {
        const Tri& f = u.triangles[t];
        for (int k = 0; k < 3; ++k) he_minus[he(f[k], f[(k + 1) % 3])] = t;
    }

    std::vector<int> sigma(u.num_vertices(), -1);
    for (int i = 0; i < n; ++i) sigma[loop_plus[i]] = loop_minus[((shift + dir * i) % n + n) % n];

    const auto nb = triangle_neighbors(img);
    std::set<int> in_plus(pp.triangles.begin(), pp.triangles.end());
    std::vector<int> tri_map(u.triangles.size(), -1);
    std::queue<int> q;
    for (int t : pp.triangles) {
        const Tri& f = u.triangles[t];
        for (int k = 0; k < 3; ++k)
            if (sigma[f[k]] >= 0 && sigma[f[(k + 1) % 3]] >= 0) { q.push(t); break; }
    }
    auto incompatible = []() { return Error("surgery_swap: patches are not combinatorially compatible"); };
    while (!q.empty()) {
        const int t = q.front();
        q.pop();
        if (tri_map[t] >= 0) continue;
        const Tri& f = u.triangles[t];
        int k0 = -1;
        for (int k = 0; k < 3 && k0 < 0; ++k)
            if (sigma[f[k]] >= 0 && sigma[f[(k + 1) % 3]] >= 0) k0 = k;
        if (k0 < 0) continue;
        const int a = f[k0], b = f[(k0 + 1) % 3], c = f[(k0 + 2) % 3];
        const std::uint64_t key = r.orientation_preserving ? he(sigma[a], sigma[b]) : he(sigma[b], sigma[a]);
        auto it = he_minus.find(key);
        if (it == he_minus.end()) throw incompatible();
        const Tri& g = u.triangles[it->second];
        int c2 = -1;
        for (int v : g)
            if (v != sigma[a] && v != sigma[b]) c2 = v;
        if (sigma[c] >= 0 && sigma[c] != c2) throw incompatible();
        sigma[c] = c2;
        tri_map[t] = it->second;
        for (int k = 0; k < 3; ++k) {
            const int o = nb[t][k];
            if (o >= 0 && in_plus.count(o) && tri_map[o] < 0) q.push(o);
        }
    }
    std::set<int> hit;
    for (int t : pp.triangles) {
        if (tri_map[t] < 0) throw incompatible();
        hit.insert(tri_map[t]);
    }
    if (hit.size() != pm.triangles.size() || pp.interior_vertices.size() != pm.interior_vertices.size())
        throw incompatible();
    std::set<int> targets;
    for (int v : pp.interior_vertices) targets.insert(sigma[v]);
    if (targets != std::set<int>(pm.interior_vertices.begin(), pm.interior_vertices.end())) throw incompatible();

    for (int v : pp.interior_vertices) sigma[sigma[v]] = v;
    for (int i = 0; i < n; ++i) sigma[sigma[loop_plus[i]]] = loop_plus[i];

    r.map = u;
    for (int v : pp.interior_vertices) {
        r.map.image[v] = u.image[sigma[v]];
        r.map.image[sigma[v]] = u.image[v];
    }
    r.sigma = std::move(sigma);
    return r;
}

// ---------------------------------------------------------------------------
// Folds

/// Angle between the normals of the two triangles sharing edge (a, b);
/// 0 for a flat seam, close to pi for a sharp fold.
inline double edge_bend(const TriangleMesh& m, int a, int b, const std::vector<std::vector<int>>& vt) {
    std::vector<int> both;
    for (int t : vt[a]) {
        const Tri& f = m.triangles[t];
        if (f[0] == b || f[1] == b || f[2] == b) both.push_back(t);
    }
    if (both.size() != 2) throw Error(concat("edge_bend: (", a, ",", b, ") is not an interior edge"));
    const Vec3 n0 = triangle_normal(m, both[0]);
    const Vec3 n1 = triangle_normal(m, both[1]);
    return std::atan2(n0.cross(n1).norm(), n0.dot(n1));
}

/// Bend per seam edge (edge i joins seam[i] and seam[i+1]). The seam is
/// closed when its last and first vertices share an edge, otherwise it is an
/// open path.
inline std::vector<double> fold_bends(const TriangleMesh& m, const std::vector<int>& seam) {
    const auto vt = vertex_triangles(m);
    std::vector<double> out;
    for (size_t i = 0; i + 1 < seam.size(); ++i) out.push_back(edge_bend(m, seam[i], seam[i + 1], vt));
    if (seam.size() >= 3) {
        const int a = seam.back(), b = seam.front();
        for (int t : vt[a]) {
            const Tri& f = m.triangles[t];
            if (f[0] == b || f[1] == b || f[2] == b) {
                out.push_back(edge_bend(m, a, b, vt));
                break;
            }
        }
    }
    return out;
}

inline double max_fold_bend(const TriangleMesh& m, const std::vector<int>& loop) {
    double b = 0.0;
    for (double x : fold_bends(m, loop)) b = std::max(b, x);
    return b;
}

/// A seam is a fold when some edge bends by more than `threshold`, i.e. the
/// dihedral angle drops below pi - threshold.
inline bool is_fold(const TriangleMesh& m, const std::vector<int>& loop, double threshold = 0.1) {
    return max_fold_bend(m, loop) > threshold;
}

struct SmoothFoldOptions {
    int collar_rings = 2;
    double bend_threshold = 0.1;
    double delta_min = 1e-6;
    double damping = 0.5;
    int max_iterations = 400;
    int max_halvings = 30;
    double armijo_c = 1e-4;
};

struct SmoothFoldResult {
    ReferenceMap map;
    EnergyBreakdown energies;
    double initial_i_h = 0.0;
    double decrease = 0.0;
    double initial_bend = 0.0;
    double final_bend = 0.0;
    int iterations = 0;
};

/// Relaxes the collar of a fold: damped umbrella steps, or plain descent when
/// the umbrella direction does not decrease I_H, with Armijo backtracking.
/// `region` supplies the fixed cap; its disk is replaced by the image of `u`.
inline SmoothFoldResult smooth_fold(const ReferenceMap& u, const std::vector<int>& fold,
                                    const EnclosureRegion& region, double H, const SmoothFoldOptions& opt = {}) {
    validate_reference(u);
    const TriangulatedDisk start = u.image_disk();
    SmoothFoldResult res;
    res.initial_bend = max_fold_bend(start, fold);
    if (!(res.initial_bend > opt.bend_threshold))
        throw Error(concat("fold not smoothable: seam bends by only ", res.initial_bend, " rad"));

    const double cap_cone = cone_volume(region.cap);
    const auto& tris = u.triangles;
    const auto ring = ring_distance(start, fold);
    const auto bmask = boundary_vertex_mask(start);
    std::vector<int> movable;
    for (int v = 0; v < start.num_vertices(); ++v)
        if (ring[v] >= 0 && ring[v] <= opt.collar_rings && !bmask[v]) movable.push_back(v);
    if (movable.empty()) throw Error("fold not smoothable: empty collar");
    const auto adj = vertex_neighbors(start);
    const double area_tol = degenerate_area_tolerance(start);

    std::vector<Point3> X = u.image;
    detail::IhState cur = detail::evaluate_ih(X, tris, cap_cone, H);
    res.initial_i_h = cur.energy;
    double alpha = 1.0;
    int it = 0;
    double bend = res.initial_bend;
    for (; it < opt.max_iterations && bend > opt.bend_threshold; ++it) {
        const Eigen::MatrixXd g = detail::gradient_ih(X, tris, H);
        std::vector<Vec3> d(X.size(), Vec3::Zero());
        double slope = 0.0;
        for (int v : movable) {
            Vec3 m = Vec3::Zero();
            for (int w : adj[v]) m += X[w];
            d[v] = opt.damping * (m / static_cast<double>(adj[v].size()) - X[v]);
            slope += g.row(v).dot(d[v]);
        }
        if (!(slope < 0.0)) {
            slope = 0.0;
            for (int v : movable) {
                d[v] = -g.row(v).transpose();
                slope -= d[v].squaredNorm();
            }
            if (!(slope < 0.0)) break;
        }
        alpha = std::min(1.0, 2.0 * alpha);
        bool accepted = false;
        std::vector<Point3> Y;
        detail::IhState next;
        for (int h = 0; h <= opt.max_halvings; ++h, alpha *= 0.5) {
            Y = X;
            for (int v : movable) Y[v] = X[v] + alpha * d[v];
            if (!detail::step_is_valid(X, Y, tris, area_tol)) continue;
            next = detail::evaluate_ih(Y, tris, cap_cone, H);
            if (next.energy <= cur.energy + opt.armijo_c * alpha * slope) { accepted = true; break; }
        }
        if (!accepted) break;
        X.swap(Y);
        cur = next;
        bend = max_fold_bend(TriangleMesh{X, tris}, fold);
    }
    res.iterations = it;
    res.final_bend = bend;
    res.decrease = res.initial_i_h - cur.energy;
    if (!(res.decrease >= opt.delta_min))
        throw Error(concat("fold not smoothable: I_H decreased by ", res.decrease, " < ", opt.delta_min));
    res.map = u;
    res.map.image = X;
    EnclosureRegion out = make_enclosure(res.map.image_disk(), region.cap);
    res.energies = i_h(out, H, MetricField::euclidean());
    return res;
}

// ---------------------------------------------------------------------------
// Caps for open surfaces

/// Cone fan from `apex` over the boundary of `disk`, oriented to close it.
inline TriangleMesh fan_cap(const TriangleMesh& disk, const Point3& apex) {
    TriangleMesh cap;
    cap.vertices.push_back(apex);
    std::unordered_map<int, int> idx;
    auto at = [&](int v) {
        auto it = idx.find(v);
        if (it != idx.end()) return it->second;
        const int k = static_cast<int>(cap.vertices.size());
        cap.vertices.push_back(disk.vertices[v]);
        idx[v] = k;
        return k;
    };
    for (auto [a, b] : boundary_halfedges(disk)) cap.triangles.push_back({0, at(b), at(a)});
    return cap;
}

}  // namespace hplateau
