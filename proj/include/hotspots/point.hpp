#pragma once

#include <cmath>

namespace hotspots {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2 &operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
    constexpr Point2 &operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Point2 &operator*=(double s) { x *= s; y *= s; return *this; }
};

constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Rotation by +90 degrees.
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }

}  // namespace hotspots
