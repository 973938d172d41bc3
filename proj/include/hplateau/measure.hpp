#pragma once

#include "mesh.hpp"
#include "metric.hpp"

namespace hplateau {

/// Induced-metric area of one chart triangle by the given rule.
inline double triangle_metric_area(const Point3& p0, const Point3& p1, const Point3& p2,
                                   const MetricField& metric, QuadratureOrder order) {
    const Vec3 e1 = p1 - p0, e2 = p2 - p0;
    if (metric.is_euclidean()) return 0.5 * e1.cross(e2).norm();
    double acc = 0.0;
    for (const QuadPoint& q : triangle_rule(order)) {
        const Point3 p = q.b0 * p0 + q.b1 * p1 + q.b2 * p2;
        const Eigen::Matrix3d g = metric.tensor(p);
        const double g11 = e1.dot(g * e1), g12 = e1.dot(g * e2), g22 = e2.dot(g * e2);
        acc += q.weight * std::sqrt(std::max(0.0, g11 * g22 - g12 * g12));
    }
    return 0.5 * acc;
}

/// Surface area under `metric`. Euclidean: exact sum of triangle areas.
/// Cylindrical chart: triangles are linear in (r, theta, t) and the induced
/// area density is integrated with a symmetric triangle rule.
inline double surface_area(const TriangleMesh& mesh, const MetricField& metric,
                           QuadratureOrder order = QuadratureOrder::Degree2) {
    require_nondegenerate(mesh);
    CompensatedSum s;
    for (const Tri& f : mesh.triangles)
        s += triangle_metric_area(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]],
                                  metric, order);
    return s.value();
}

/// Signed cone volume (1/6) sum v0 . (v1 x v2) of a triangle set.
inline double cone_volume(const TriangleMesh& m) {
    CompensatedSum s;
    for (const Tri& f : m.triangles)
        s += m.vertices[f[0]].dot(m.vertices[f[1]].cross(m.vertices[f[2]])) / 6.0;
    return s.value();
}

// ---------------------------------------------------------------------------
// Enclosed regions

/// Region bounded by a disk and a cap sharing the disk's boundary loop.
/// Orientation convention: disk normals point out of the region (towards the
/// S+ side), cap normals point out of the region (out of the domain).
struct EnclosureRegion {
    TriangulatedDisk disk;
    TriangleMesh cap;
    MetricField::Chart chart = MetricField::Chart::Cartesian;
    bool watertight = false;
    std::vector<std::array<int, 2>> gap_edges;  // disk indices, then cap indices offset by |V_disk|
};

namespace detail {

/// A chart boundary edge that lies on the theta seam or on the axis bounds
/// zero flux and is allowed to stay open.
inline bool chart_seam_edge(const Point3& a, const Point3& b, double tol) {
    const bool axis = std::abs(a.x()) <= tol && std::abs(b.x()) <= tol;
    auto on_seam = [&](double th) {
        return std::abs(th) <= tol || std::abs(th - 2.0 * kPi) <= tol;
    };
    const bool seam = on_seam(a.y()) && on_seam(b.y()) && std::abs(a.y() - b.y()) <= tol;
    return axis || seam;
}

}  // namespace detail

/// Pairs a disk with a cap and checks closure: after merging coincident
/// vertices every directed edge is matched by as many reversed copies.
inline EnclosureRegion make_enclosure(TriangulatedDisk disk, TriangleMesh cap,
                                      MetricField::Chart chart = MetricField::Chart::Cartesian) {
    EnclosureRegion r;
    r.chart = chart;
    const TriangleMesh both = concatenate({&disk, &cap});
    const double tol = 1e-9 * std::max(1.0, bbox_diagonal(both));
    std::vector<int> remap;
    TriangleMesh welded = weld(both, tol, &remap);
    std::vector<int> back(welded.vertices.size(), -1);
    for (int i = 0; i < static_cast<int>(remap.size()); ++i)
        if (back[remap[i]] < 0) back[remap[i]] = i;

    std::map<std::pair<int, int>, int> directed;
    for (const Tri& f : welded.triangles)
        for (int k = 0; k < 3; ++k) ++directed[{f[k], f[(k + 1) % 3]}];
    for (auto& [e, n] : directed) {
        const int rev = directed.count({e.second, e.first}) ? directed[{e.second, e.first}] : 0;
        if (n == rev) continue;  // interior edge, or cancelling overlap
        if (chart == MetricField::Chart::Cylindrical && n == 1 && rev == 0 &&
            detail::chart_seam_edge(welded.vertices[e.first], welded.vertices[e.second], tol))
            continue;
        r.gap_edges.push_back({back[e.first], back[e.second]});
    }
    r.watertight = r.gap_edges.empty();
    r.disk = std::move(disk);
    r.cap = std::move(cap);
    return r;
}

inline void require_watertight(const EnclosureRegion& region) {
    if (region.watertight) return;
    std::ostringstream os;
    os << "region is not watertight; gap edges:";
    for (size_t i = 0; i < region.gap_edges.size() && i < 16; ++i)
        os << " (" << region.gap_edges[i][0] << "," << region.gap_edges[i][1] << ")";
    if (region.gap_edges.size() > 16) os << " ...";
    throw NotWatertightError(region.gap_edges, os.str());
}

/// Oriented volume of the region. Euclidean: divergence theorem with the
/// position field, i.e. the cone formula over disk and cap. Cylindrical chart:
/// flux of (P(r), 0, 0) with P' = sqrt(det g), valid for any region whose
/// open chart boundary lies on the theta seam or the axis.
inline double oriented_enclosed_volume(const EnclosureRegion& region, const MetricField& metric,
                                       QuadratureOrder order = QuadratureOrder::Degree5) {
    require_watertight(region);
    if (metric.is_euclidean()) {
        if (region.chart != MetricField::Chart::Cartesian)
            throw Error("Euclidean volume requires Cartesian coordinates");
        CompensatedSum s;
        s += cone_volume(region.disk);
        s += cone_volume(region.cap);
        return s.value();
    }
    if (region.chart != MetricField::Chart::Cylindrical)
        throw Error("blended-metric volume requires cylindrical chart coordinates");
    const auto& cyl = metric.cylinder();
    CompensatedSum s;
    auto flux = [&](const TriangleMesh& m) {
        for (const Tri& f : m.triangles) {
            const Point3 &p0 = m.vertices[f[0]], &p1 = m.vertices[f[1]], &p2 = m.vertices[f[2]];
            const double nr = (p1 - p0).cross(p2 - p0).x();
            if (nr == 0.0) continue;
            double acc = 0.0;
            for (const QuadPoint& q : triangle_rule(order))
                acc += q.weight * cyl.radial_primitive(q.b0 * p0.x() + q.b1 * p1.x() + q.b2 * p2.x());
            s += 0.5 * nr * acc;
        }
    };
    flux(region.disk);
    flux(region.cap);
    return s.value();
}

}  // namespace hplateau
