#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hplateau {

using Point3 = Eigen::Vector3d;
using Vec3 = Eigen::Vector3d;
using Point2 = Eigen::Vector2d;
using Tri = std::array<int, 3>;

/// Base error for contract violations detected at runtime.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a triangle falls below the degeneracy tolerance.
class DegenerateTriangleError : public Error {
public:
    DegenerateTriangleError(int tri, const std::string& what)
        : Error(what), triangle(tri) {}
    int triangle;
};

/// Raised when a region that must be closed has open edges.
class NotWatertightError : public Error {
public:
    NotWatertightError(std::vector<std::array<int, 2>> gaps, const std::string& what)
        : Error(what), gap_edges(std::move(gaps)) {}
    std::vector<std::array<int, 2>> gap_edges;  // indices into the disk, then cap
};

/// Raised when a requested H lies outside the admissible range of the domain.
class InfeasibleHError : public Error {
public:
    using Error::Error;
};

/// Neumaier compensated accumulator. Summation order is the call order, so
/// results are reproducible for a fixed traversal.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) { add(x); return *this; }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline bool all_finite(const Point3& p) {
    return std::isfinite(p.x()) && std::isfinite(p.y()) && std::isfinite(p.z());
}

template <class... Args>
std::string concat(const Args&... args) {
    std::ostringstream os;
    os.precision(17);
    (os << ... << args);
    return os.str();
}

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace hplateau
