#pragma once

#include <array>
#include <cmath>

namespace canardlab {

/// Planar state (u, v) or any other two-component quantity.
using Vec2 = std::array<double, 2>;

inline double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }

inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a[0], s * a[1]}; }

}  // namespace canardlab
