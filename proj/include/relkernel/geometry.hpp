#pragma once

#include <cmath>

namespace relkernel {

/// A point of the plane.
struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    double norm() const { return std::hypot(x1, x2); }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x1 - b.x1, a.x2 - b.x2); }

/// theta(x) - theta(y) in (-pi, pi], computed from the cross and dot products so that
/// no large angles are ever formed.
inline double angle_difference(const Vec2& x, const Vec2& y)
{
    const double cross = y.x1 * x.x2 - y.x2 * x.x1;
    const double dot = x.x1 * y.x1 + x.x2 * y.x2;
    if (cross == 0.0 && dot == 0.0) return 0.0;
    return std::atan2(cross, dot);
}

} // namespace relkernel
