#pragma once

// Orientation predicate with a floating-point filter and an exact rational
// fallback.

#include "core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace hplateau {

namespace detail {

inline int orient3d_exact(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    using Q = boost::multiprecision::cpp_rational;
    auto q = [](double x) { return Q(x); };
    const Q adx = q(a.x()) - q(d.x()), ady = q(a.y()) - q(d.y()), adz = q(a.z()) - q(d.z());
    const Q bdx = q(b.x()) - q(d.x()), bdy = q(b.y()) - q(d.y()), bdz = q(b.z()) - q(d.z());
    const Q cdx = q(c.x()) - q(d.x()), cdy = q(c.y()) - q(d.y()), cdz = q(c.z()) - q(d.z());
    const Q det = adx * (bdy * cdz - bdz * cdy) + bdx * (cdy * adz - cdz * ady) + cdx * (ady * bdz - adz * bdy);
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

}  // namespace detail

/// Sign of the volume of tetrahedron (a, b, c, d): +1 when d lies below the
/// plane of the ccw triangle abc (right-hand rule normal points away from d).
/// Exact.
inline int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    const double adx = a.x() - d.x(), ady = a.y() - d.y(), adz = a.z() - d.z();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y(), bdz = b.z() - d.z();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y(), cdz = c.z() - d.z();
    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                             (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                             (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
    constexpr double eps = std::numeric_limits<double>::epsilon() * 0.5;
    const double bound = (7.0 + 56.0 * eps) * eps * permanent;
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return detail::orient3d_exact(a, b, c, d);
}

}  // namespace hplateau
