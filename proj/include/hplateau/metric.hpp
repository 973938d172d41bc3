#pragma once

#include "core.hpp"

#include <algorithm>

#include <optional>
#include <variant>

namespace hplateau {

// ---------------------------------------------------------------------------
// Quadrature

struct QuadPoint {
    double b0, b1, b2;  // barycentric coordinates
    double weight;      // weights sum to 1
};

enum class QuadratureOrder { Degree2 = 2, Degree4 = 4, Degree5 = 5 };

/// Symmetric triangle rules (Strang-Fix / Dunavant). Weights are normalised
/// to the triangle area.
inline const std::vector<QuadPoint>& triangle_rule(QuadratureOrder order) {
    static const std::vector<QuadPoint> deg2 = {
        {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0},
        {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0},
        {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0},
    };
    static const std::vector<QuadPoint> deg4 = [] {
        const double a1 = 0.445948490915965, b1 = 1 - 2 * a1, w1 = 0.223381589678011;
        const double a2 = 0.091576213509771, b2 = 1 - 2 * a2, w2 = 0.109951743655322;
        return std::vector<QuadPoint>{{b1, a1, a1, w1}, {a1, b1, a1, w1}, {a1, a1, b1, w1},
                                      {b2, a2, a2, w2}, {a2, b2, a2, w2}, {a2, a2, b2, w2}};
    }();
    static const std::vector<QuadPoint> deg5 = [] {
        const double a1 = 0.470142064105115, b1 = 1 - 2 * a1, w1 = 0.132394152788506;
        const double a2 = 0.101286507323456, b2 = 1 - 2 * a2, w2 = 0.125939180544827;
        return std::vector<QuadPoint>{{1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225},
                                      {b1, a1, a1, w1}, {a1, b1, a1, w1}, {a1, a1, b1, w1},
                                      {b2, a2, a2, w2}, {a2, b2, a2, w2}, {a2, a2, b2, w2}};
    }();
    switch (order) {
        case QuadratureOrder::Degree4: return deg4;
        case QuadratureOrder::Degree5: return deg5;
        default: return deg2;
    }
}

/// 10-point Gauss-Legendre nodes/weights on [-1, 1].
inline const std::array<std::pair<double, double>, 10>& gauss_legendre10() {
    static const std::array<std::pair<double, double>, 10> r = {{
        {-0.9739065285171717, 0.0666713443086881}, {-0.8650633666889845, 0.1494513491505806},
        {-0.6794095682990244, 0.2190863625159820}, {-0.4333953941292472, 0.2692667193099963},
        {-0.1488743389816312, 0.2955242247147529}, {0.1488743389816312, 0.2955242247147529},
        {0.4333953941292472, 0.2692667193099963},  {0.6794095682990244, 0.2190863625159820},
        {0.8650633666889845, 0.1494513491505806},  {0.9739065285171717, 0.0666713443086881},
    }};
    return r;
}

/// Composite 10-point Gauss-Legendre on [a, b] with `panels` equal panels.
template <class F>
double integrate_gl(F&& f, double a, double b, int panels = 8) {
    CompensatedSum s;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h, mid = lo + 0.5 * h;
        for (auto [x, w] : gauss_legendre10()) s += w * 0.5 * h * f(mid + 0.5 * h * x);
    }
    return s.value();
}

// ---------------------------------------------------------------------------
// Blended cylinder metric

/// Quintic smoothstep, C2 at both ends.
inline double smoothstep5(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0);
}

/// Coordinates on a point in the modified cylinder are cylindrical chart
/// coordinates (r, theta, t). Inside r <= 2 - 2 eps the metric is the flat
/// product metric; near r = 2 it blends into the pull-back of the metric of
/// the radius-1/4 cylinder under r -> r - 7/4.
struct BlendedCylinderMetric {
    double eps = 0.05;

    static constexpr double kShift = 7.0 / 4.0;
    static constexpr double kRadius = 2.0;

    double inner() const { return kRadius - 2.0 * eps; }
    double outer() const { return kRadius - eps; }

    double psi2(double r) const { return smoothstep5((r - inner()) / eps); }
    double psi1(double r) const { return 1.0 - psi2(r); }

    /// Angular coefficient g_theta_theta(r).
    double angular(double r) const {
        if (r <= inner()) return r * r;
        const double p2 = psi2(r);
        const double s = r - kShift;
        return (1.0 - p2) * r * r + p2 * s * s;
    }

    /// sqrt(det g) in the chart, equal to sqrt(g_theta_theta).
    double density(double r) const {
        if (r <= inner()) return std::abs(r);
        return std::sqrt(angular(r));
    }

    /// P(r) = integral_0^r density, the radial flux potential used for volumes.
    double radial_primitive(double r) const {
        const double r0 = inner(), r1 = outer();
        if (r <= r0) return 0.5 * r * r;
        double acc = 0.5 * r0 * r0;
        const double top = std::min(r, r1);
        acc += integrate_gl([this](double s) { return density(s); }, r0, top, 16);
        if (r > r1) {
            // density = r - 7/4 there
            auto prim = [](double s) { return 0.5 * (s - kShift) * (s - kShift); };
            acc += prim(r) - prim(r1);
        }
        return acc;
    }
};

/// Metric tensor evaluator. Euclidean metrics use Cartesian coordinates;
/// the blended cylinder metric uses cylindrical chart coordinates.
class MetricField {
public:
    enum class Chart { Cartesian, Cylindrical };

    static MetricField euclidean() { return MetricField(); }
    static MetricField blended_cylinder(double eps) {
        MetricField m;
        m.cyl_ = BlendedCylinderMetric{eps};
        return m;
    }

    bool is_euclidean() const { return !cyl_.has_value(); }
    Chart chart() const { return cyl_ ? Chart::Cylindrical : Chart::Cartesian; }
    const BlendedCylinderMetric& cylinder() const { return *cyl_; }

    /// Metric tensor at a chart point.
    Eigen::Matrix3d tensor(const Point3& p) const {
        Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
        if (cyl_) g(1, 1) = cyl_->angular(p.x());
        return g;
    }

    /// Tensor in cylindrical form diag(1, g_tt, 1) at radius r.
    Eigen::Matrix3d cylindrical_tensor(double r) const {
        Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
        g(1, 1) = cyl_ ? cyl_->angular(r) : r * r;
        return g;
    }

    /// Tensor expressed in Cartesian coordinates at a Cartesian point.
    Eigen::Matrix3d cartesian_tensor(const Point3& x) const {
        Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
        if (!cyl_) return g;
        const double r2 = x.x() * x.x() + x.y() * x.y();
        if (r2 == 0.0) return g;
        const double r = std::sqrt(r2);
        const Vec3 a(-x.y(), x.x(), 0.0);  // r^2 dtheta = a . dx
        g += (cyl_->angular(r) - r2) / (r2 * r2) * (a * a.transpose());
        return g;
    }

    double volume_density(const Point3& p) const {
        return cyl_ ? cyl_->density(p.x()) : 1.0;
    }

private:
    std::optional<BlendedCylinderMetric> cyl_;
};

// ---------------------------------------------------------------------------
// Ambient domains

struct BallDomain {
    double radius = 1.0;
};

struct ModifiedCylinderDomain {
    double eps = 0.05;
    double t_min = -1e9;
    double t_max = 1e9;
};

struct HInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool hi_open = true;

    bool contains(double h) const {
        return h >= lo && (hi_open ? h < hi : h <= hi);
    }
};

class AmbientDomain {
public:
    using Variant = std::variant<BallDomain, ModifiedCylinderDomain>;

    static AmbientDomain ball(double radius) {
        if (!(radius > 0.0)) throw Error("ball radius must be positive");
        return AmbientDomain(BallDomain{radius});
    }
    static AmbientDomain modified_cylinder(double eps, double t_min = -1e9, double t_max = 1e9) {
        if (!(eps > 0.0 && eps < 0.125)) throw Error("modified cylinder needs 0 < eps < 1/8");
        return AmbientDomain(ModifiedCylinderDomain{eps, t_min, t_max});
    }

    bool is_ball() const { return std::holds_alternative<BallDomain>(v_); }
    const BallDomain& as_ball() const { return std::get<BallDomain>(v_); }
    const ModifiedCylinderDomain& as_cylinder() const { return std::get<ModifiedCylinderDomain>(v_); }
    const Variant& variant() const { return v_; }

    /// Lower bound of the boundary mean curvature.
    double h0() const { return is_ball() ? 1.0 / as_ball().radius : 2.0; }

    MetricField metric() const {
        return is_ball() ? MetricField::euclidean() : MetricField::blended_cylinder(as_cylinder().eps);
    }

    /// Signed distance to the boundary, positive inside.
    double depth(const Point3& p) const {
        if (is_ball()) return as_ball().radius - p.norm();
        return ModifiedCylinderRadius - p.x();
    }

    static constexpr double ModifiedCylinderRadius = 2.0;

private:
    explicit AmbientDomain(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Admissible mean curvatures: [0, H0) where H0 is the convexity constant.
inline HInterval feasible_h_range(const AmbientDomain& domain) {
    return HInterval{0.0, domain.h0(), true};
}

/// Nearest point of the closed domain; identity inside.
inline Point3 project_into_domain(const Point3& p, const AmbientDomain& domain) {
    if (domain.is_ball()) {
        const double R = domain.as_ball().radius;
        const double n = p.norm();
        return n <= R ? p : Point3(p * (R / n));
    }
    const auto& c = domain.as_cylinder();
    Point3 q = p;
    q.x() = std::clamp(q.x(), 0.0, AmbientDomain::ModifiedCylinderRadius);
    q.z() = std::clamp(q.z(), c.t_min, c.t_max);
    return q;
}

}  // namespace hplateau
