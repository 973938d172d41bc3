#pragma once

// Closest-point queries on triangle meshes and sampled Hausdorff distance.

#include "mesh.hpp"

#include <numeric>

namespace hplateau {

/// Closest point on triangle abc to p.
inline Point3 closest_point_on_triangle(const Point3& p, const Point3& a, const Point3& b, const Point3& c) {
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return a;
    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return b;
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + (d1 / (d1 - d3)) * ab;
    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return c;
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + (d2 / (d2 - d6)) * ac;
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
        return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

/// Median-split bounding volume hierarchy over the triangles of a mesh.
class TriangleBVH {
public:
    explicit TriangleBVH(const TriangleMesh& m) : m_(m) {
        order_.resize(m.triangles.size());
        std::iota(order_.begin(), order_.end(), 0);
        if (!order_.empty()) build(0, static_cast<int>(order_.size()));
    }

    /// Distance from p to the mesh.
    double distance(const Point3& p) const {
        double best = std::numeric_limits<double>::infinity();
        if (!nodes_.empty()) query(0, p, best);
        return std::sqrt(best);
    }

private:
    struct Node {
        Eigen::AlignedBox3d box;
        int begin, end;
        int left = -1, right = -1;
    };

    int build(int begin, int end) {
        Node n;
        n.begin = begin;
        n.end = end;
        for (int i = begin; i < end; ++i)
            for (int v : m_.triangles[order_[i]]) n.box.extend(m_.vertices[v]);
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(n);
        if (end - begin > 4) {
            int axis;
            n.box.sizes().maxCoeff(&axis);
            const int mid = (begin + end) / 2;
            auto centroid = [&](int t) {
                const Tri& f = m_.triangles[t];
                return m_.vertices[f[0]][axis] + m_.vertices[f[1]][axis] + m_.vertices[f[2]][axis];
            };
            std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                             [&](int a, int b) { return centroid(a) < centroid(b); });
            const int l = build(begin, mid);
            const int r = build(mid, end);
            nodes_[id].left = l;
            nodes_[id].right = r;
        }
        return id;
    }

    void query(int id, const Point3& p, double& best) const {
        const Node& n = nodes_[id];
        if (n.box.squaredExteriorDistance(p) >= best) return;
        if (n.left < 0) {
            for (int i = n.begin; i < n.end; ++i) {
                const Tri& f = m_.triangles[order_[i]];
                const Point3 q = closest_point_on_triangle(p, m_.vertices[f[0]], m_.vertices[f[1]], m_.vertices[f[2]]);
                best = std::min(best, (q - p).squaredNorm());
            }
            return;
        }
        const double dl = nodes_[n.left].box.squaredExteriorDistance(p);
        const double dr = nodes_[n.right].box.squaredExteriorDistance(p);
        if (dl < dr) { query(n.left, p, best); query(n.right, p, best); }
        else { query(n.right, p, best); query(n.left, p, best); }
    }

    const TriangleMesh& m_;
    std::vector<int> order_;
    std::vector<Node> nodes_;
};

/// Sample points of a mesh: vertices, edge midpoints and centroids.
inline std::vector<Point3> surface_samples(const TriangleMesh& m) {
    std::vector<Point3> s = m.vertices;
    for (const Tri& f : m.triangles) {
        const Point3 &a = m.vertices[f[0]], &b = m.vertices[f[1]], &c = m.vertices[f[2]];
        s.push_back((a + b + c) / 3.0);
        s.push_back(0.5 * (a + b));
    }
    return s;
}

/// One-sided sampled distance sup_{x in A} d(x, B).
inline double directed_hausdorff(const TriangleMesh& a, const TriangleMesh& b) {
    TriangleBVH bvh(b);
    double d = 0.0;
    for (const auto& p : surface_samples(a)) d = std::max(d, bvh.distance(p));
    return d;
}

inline double hausdorff_distance(const TriangleMesh& a, const TriangleMesh& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace hplateau
