#pragma once

// Variational quantities on discrete disks: Dirichlet energy, algebraic
// volume, F_H, I_H, cotangent mean curvature and the H-concavity test.

#include "measure.hpp"

#include <json.hpp>

#include <optional>

namespace hplateau {

// ---------------------------------------------------------------------------
// Reference maps

/// Piecewise-linear map from a planar reference triangulation of the unit
/// disk into space. Reference triangles are ccw.
struct ReferenceMap {
    std::vector<Point2> reference;
    std::vector<Tri> triangles;
    std::vector<int> boundary_loop;
    std::vector<Point3> image;

    int num_vertices() const { return static_cast<int>(reference.size()); }

    TriangulatedDisk image_disk() const {
        TriangulatedDisk d;
        d.vertices = image;
        d.triangles = triangles;
        d.boundary_loop = boundary_loop;
        return d;
    }
};

inline void validate_reference(const ReferenceMap& u) {
    if (u.reference.size() != u.image.size()) throw Error("reference map: vertex count mismatch");
    for (int t = 0; t < static_cast<int>(u.triangles.size()); ++t) {
        const Tri& f = u.triangles[t];
        for (int v : f)
            if (v < 0 || v >= u.num_vertices()) throw Error("reference map: index out of range");
        if (!(orient2d(u.reference[f[0]], u.reference[f[1]], u.reference[f[2]]) > 0.0))
            throw DegenerateTriangleError(t, concat("reference triangle ", t, " is degenerate or clockwise"));
    }
}

/// Map whose image is `disk` and whose reference is its Tutte embedding.
inline ReferenceMap reference_map_from_disk(const TriangulatedDisk& disk) {
    ReferenceMap u;
    u.reference = tutte_embedding(disk);
    u.triangles = disk.triangles;
    u.boundary_loop = disk.boundary_loop;
    u.image = disk.vertices;
    return u;
}

/// Map with explicit reference coordinates.
inline ReferenceMap reference_map(const TriangulatedDisk& disk, std::vector<Point2> reference) {
    ReferenceMap u;
    u.reference = std::move(reference);
    u.triangles = disk.triangles;
    u.boundary_loop = disk.boundary_loop;
    u.image = disk.vertices;
    validate_reference(u);
    return u;
}

// ---------------------------------------------------------------------------
// Energies

struct EnergyBreakdown {
    double H = 0.0;
    std::optional<double> dirichlet;
    std::optional<double> algebraic_volume;
    std::optional<double> f_h;
    std::optional<double> area;
    std::optional<double> volume;
    std::optional<double> i_h;
    std::optional<double> defect;
    std::optional<double> C0;
    std::optional<double> C1;
    std::optional<double> C2;
};

inline nlohmann::ordered_json to_json(const EnergyBreakdown& e) {
    nlohmann::ordered_json j;
    auto put = [&](const char* k, const std::optional<double>& v) {
        if (v) j[k] = *v;
        else j[k] = nullptr;
    };
    put("dirichlet", e.dirichlet);
    put("algebraic_volume", e.algebraic_volume);
    put("f_h", e.f_h);
    put("area", e.area);
    put("volume", e.volume);
    put("i_h", e.i_h);
    put("defect", e.defect);
    j["H"] = e.H;
    put("C0", e.C0);
    put("C2", e.C2);
    return j;
}

/// Gradient (3x2) of the linear map on one reference triangle.
inline Eigen::Matrix<double, 3, 2> triangle_gradient(const ReferenceMap& u, int t, double* ref_area) {
    const Tri& f = u.triangles[t];
    Eigen::Matrix2d P;
    P.col(0) = u.reference[f[1]] - u.reference[f[0]];
    P.col(1) = u.reference[f[2]] - u.reference[f[0]];
    const double det = P.determinant();
    if (!(det > 0.0)) throw DegenerateTriangleError(t, concat("reference triangle ", t, " is degenerate"));
    Eigen::Matrix<double, 3, 2> X;
    X.col(0) = u.image[f[1]] - u.image[f[0]];
    X.col(1) = u.image[f[2]] - u.image[f[0]];
    if (ref_area) *ref_area = 0.5 * det;
    return X * P.inverse();
}

/// E(u) = integral of |u_x|^2 + |u_y|^2 over the reference disk.
inline double dirichlet_energy(const ReferenceMap& u) {
    CompensatedSum s;
    for (int t = 0; t < static_cast<int>(u.triangles.size()); ++t) {
        double a = 0.0;
        const auto G = triangle_gradient(u, t, &a);
        s += a * G.squaredNorm();
    }
    return s.value();
}

/// W(u) = integral of u . (u_x x u_y) = sum over image triangles of
/// (1/2) v0 . (v1 x v2).
inline double algebraic_volume(const TriangleMesh& m) {
    CompensatedSum s;
    for (const Tri& f : m.triangles) s += 0.5 * m.vertices[f[0]].dot(m.vertices[f[1]].cross(m.vertices[f[2]]));
    return s.value();
}

inline double algebraic_volume(const ReferenceMap& u) {
    CompensatedSum s;
    for (const Tri& f : u.triangles) s += 0.5 * u.image[f[0]].dot(u.image[f[1]].cross(u.image[f[2]]));
    return s.value();
}

inline EnergyBreakdown f_h(const ReferenceMap& u, double H) {
    if (!(H >= 0.0)) throw Error("f_h: H must be nonnegative");
    EnergyBreakdown e;
    e.H = H;
    e.dirichlet = dirichlet_energy(u);
    e.algebraic_volume = algebraic_volume(u);
    e.f_h = *e.dirichlet + (4.0 / 3.0) * H * *e.algebraic_volume;
    return e;
}

/// I_H = Area + 2 H Vol of the region between the disk and its cap. Cap
/// constants C0 = W(cap) and C2 = (4/3) H C0 are filled for Euclidean metrics.
inline EnergyBreakdown i_h(const EnclosureRegion& region, double H, const MetricField& metric,
                           QuadratureOrder order = QuadratureOrder::Degree2) {
    EnergyBreakdown e;
    e.H = H;
    e.area = surface_area(region.disk, metric, order);
    e.volume = oriented_enclosed_volume(region, metric);
    e.i_h = *e.area + 2.0 * H * *e.volume;
    if (metric.is_euclidean()) {
        e.C0 = algebraic_volume(region.cap);
        e.C2 = (4.0 / 3.0) * H * *e.C0;
    }
    return e;
}

/// Both sets of quantities for a map whose image is the region's disk.
inline EnergyBreakdown full_breakdown(const ReferenceMap& u, const EnclosureRegion& region, double H) {
    EnergyBreakdown a = f_h(u, H);
    EnergyBreakdown b = i_h(region, H, MetricField::euclidean());
    b.dirichlet = a.dirichlet;
    b.algebraic_volume = a.algebraic_volume;
    b.f_h = a.f_h;
    b.defect = *a.dirichlet - 2.0 * *b.area;
    return b;
}

inline void require_map_matches(const ReferenceMap& u, const EnclosureRegion& region) {
    const auto& d = region.disk;
    if (u.image.size() != d.vertices.size() || u.triangles != d.triangles)
        throw Error("reference map does not match the region's disk");
    const double tol = 1e-12 * std::max(1.0, bbox_diagonal(d));
    for (size_t i = 0; i < u.image.size(); ++i)
        if ((u.image[i] - d.vertices[i]).norm() > tol) throw Error("reference map does not match the region's disk");
}

/// F_H(u) - (2 I_H(u) - C2). Equals the conformality defect E - 2 Area.
inline double equivalence_residual(const ReferenceMap& u, const EnclosureRegion& region, double H) {
    require_map_matches(u, region);
    const EnergyBreakdown e = full_breakdown(u, region, H);
    return *e.f_h - (2.0 * *e.i_h - *e.C2);
}

// ---------------------------------------------------------------------------
// Mean curvature

/// Vertex weight used to turn the cotangent sum into a curvature. Mixed:
/// Voronoi-mixed areas. Variational: one third of the summed triangle area
/// vectors, the weight of the exact volume gradient, so that stationary
/// points of Area + 2 H Vol have H_disc = H n exactly.
enum class CurvatureWeight { Mixed, Variational };

struct MeanCurvatureField {
    std::vector<Vec3> vector;       // zero at boundary vertices
    std::vector<double> mixed_area;  // the weight actually used
    std::vector<char> interior;

    double magnitude(int v) const { return vector[v].norm(); }
};

inline double cotangent(const Vec3& a, const Vec3& b) {
    const double c = a.cross(b).norm();
    return a.dot(b) / std::max(c, 1e-300);
}

/// Mixed Voronoi areas (Meyer et al.) per vertex.
inline std::vector<double> mixed_areas(const TriangleMesh& m) {
    std::vector<double> A(m.vertices.size(), 0.0);
    for (const Tri& f : m.triangles) {
        const Point3 &p0 = m.vertices[f[0]], &p1 = m.vertices[f[1]], &p2 = m.vertices[f[2]];
        const double area = 0.5 * (p1 - p0).cross(p2 - p0).norm();
        if (area <= 0.0) continue;
        const Point3* P[3] = {&p0, &p1, &p2};
        int obtuse = -1;
        for (int k = 0; k < 3; ++k)
            if ((*P[(k + 1) % 3] - *P[k]).dot(*P[(k + 2) % 3] - *P[k]) < 0.0) obtuse = k;
        if (obtuse >= 0) {
            for (int k = 0; k < 3; ++k) A[f[k]] += (k == obtuse ? 0.5 : 0.25) * area;
            continue;
        }
        for (int k = 0; k < 3; ++k) {
            const Point3 &a = *P[k], &b = *P[(k + 1) % 3], &c = *P[(k + 2) % 3];
            const double cot_c = cotangent(a - c, b - c);  // angle at c, opposite edge ab
            const double cot_b = cotangent(a - b, c - b);  // angle at b, opposite edge ac
            A[f[k]] += 0.125 * ((a - b).squaredNorm() * cot_c + (a - c).squaredNorm() * cot_b);
        }
    }
    return A;
}

/// Cotangent Laplacian sum  sum_j (cot a_ij + cot b_ij)(x_j - x_i)  per vertex.
inline std::vector<Vec3> cotan_laplacian_sum(const TriangleMesh& m) {
    std::vector<Vec3> L(m.vertices.size(), Vec3::Zero());
    for (const Tri& f : m.triangles)
        for (int k = 0; k < 3; ++k) {
            const int i = f[k], j = f[(k + 1) % 3], o = f[(k + 2) % 3];
            const double c = cotangent(m.vertices[i] - m.vertices[o], m.vertices[j] - m.vertices[o]);
            L[i] += c * (m.vertices[j] - m.vertices[i]);
            L[j] += c * (m.vertices[i] - m.vertices[j]);
        }
    return L;
}

/// Discrete mean curvature vector (1 / 4A) sum (cot a + cot b)(x_j - x_i) at
/// interior vertices. Magnitude is the mean curvature; on a sphere it points
/// to the centre.
inline MeanCurvatureField mean_curvature(const TriangleMesh& mesh,
                                         const MetricField& metric = MetricField::euclidean(),
                                         CurvatureWeight weight = CurvatureWeight::Mixed) {
    if (!metric.is_euclidean()) throw Error("mean_curvature: only the Euclidean metric is supported");
    MeanCurvatureField h;
    const int n = mesh.num_vertices();
    auto bmask = boundary_vertex_mask(mesh);
    if (weight == CurvatureWeight::Mixed) {
        h.mixed_area = mixed_areas(mesh);
    } else {
        std::vector<Vec3> s(n, Vec3::Zero());
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            const Vec3 a = triangle_area_vector(mesh, t);
            for (int v : mesh.triangles[t]) s[v] += a;
        }
        h.mixed_area.resize(n);
        for (int v = 0; v < n; ++v) h.mixed_area[v] = s[v].norm() / 3.0;
    }
    auto L = cotan_laplacian_sum(mesh);
    h.vector.assign(n, Vec3::Zero());
    h.interior.assign(n, 0);
    std::vector<char> used(n, 0);
    for (const Tri& f : mesh.triangles)
        for (int v : f) used[v] = 1;
    for (int v = 0; v < n; ++v) {
        if (bmask[v] || !used[v]) continue;
        if (!(h.mixed_area[v] > 0.0)) throw Error(concat("mean_curvature: zero vertex area at vertex ", v));
        h.interior[v] = 1;
        h.vector[v] = L[v] / (4.0 * h.mixed_area[v]);
    }
    return h;
}

/// Area-weighted vertex normals.
inline std::vector<Vec3> vertex_normals(const TriangleMesh& m) {
    std::vector<Vec3> n(m.vertices.size(), Vec3::Zero());
    for (int t = 0; t < m.num_triangles(); ++t) {
        const Vec3 a = triangle_area_vector(m, t);
        for (int v : m.triangles[t]) n[v] += a;
    }
    for (auto& x : n) {
        const double l = x.norm();
        if (l > 0) x /= l;
    }
    return n;
}

struct ConcavityOptions {
    double tau = 0.05;     // relative tolerance on |H|
    double eta = 0.0;      // absolute noise floor, 1/length
    int collar_rings = 0;  // vertices within this many rings of the boundary are skipped
};

/// Interior vertices where the mean curvature vector points into the
/// enclosed region: H . n_out < -(tau |H| + eta), with n_out the disk normal
/// (which points away from the region).
inline std::vector<int> h_concavity_check(const EnclosureRegion& region, double H,
                                          const ConcavityOptions& opt = {}) {
    (void)H;
    const auto& d = region.disk;
    const MeanCurvatureField hf = mean_curvature(d, MetricField::euclidean(), CurvatureWeight::Variational);
    const auto normals = vertex_normals(d);
    std::vector<int> seeds;
    auto bmask = boundary_vertex_mask(d);
    for (int v = 0; v < d.num_vertices(); ++v)
        if (bmask[v]) seeds.push_back(v);
    const auto ring = ring_distance(d, seeds);
    std::vector<int> bad;
    for (int v = 0; v < d.num_vertices(); ++v) {
        if (!hf.interior[v]) continue;
        if (ring[v] >= 0 && ring[v] <= opt.collar_rings) continue;
        const Vec3& hv = hf.vector[v];
        if (hv.dot(normals[v]) < -(opt.tau * hv.norm() + opt.eta)) bad.push_back(v);
    }
    return bad;
}

}  // namespace hplateau
