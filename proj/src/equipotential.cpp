#include <algorithm>
#include <cmath>

#include "hotspots/geometry.hpp"

namespace hotspots {

double Equipotential::value(Point2 x) const {
    double f = 0.0;
    for (Point2 p : charges) f += 1.0 / distance(x, p);
    return f;
}

Point2 Equipotential::gradient(Point2 x) const {
    Point2 g{};
    for (Point2 p : charges) {
        const Point2 d = x - p;
        const double r = norm(d);
        g -= (1.0 / (r * r * r)) * d;
    }
    return g;
}

Point2 Equipotential::project(Point2 x, int max_iter) const {
    for (int it = 0; it < max_iter; ++it) {
        const Point2 g = gradient(x);
        const double g2 = dot(g, g);
        if (g2 < 1e-24) throw GeometryError("equipotential: degenerate gradient");
        const double defect = value(x) - level;
        x -= (defect / g2) * g;
        if (std::abs(defect) <= 1e-15 * level) break;
    }
    return x;
}

Point2 Equipotential::find_seed() const {
    if (charges.empty()) throw GeometryError("equipotential: no charges");
    Point2 center{};
    for (Point2 p : charges) center += p;
    center *= 1.0 / static_cast<double>(charges.size());
    double spread = 0.0;
    for (Point2 p : charges) spread = std::max(spread, distance(p, center));

    // Beyond this radius the potential is below the level.
    double hi = spread + static_cast<double>(charges.size()) / level * 1.01 + 1e-3;
    const double ds = 1e-2 * std::max(spread, 1.0 / level);
    double lo = hi;
    auto f = [&](double s) { return value(center + Point2{s, 0.0}) - level; };
    while (f(lo) < 0.0) {
        lo -= ds;
        if (lo <= 0.0) throw GeometryError("equipotential: no level crossing on the seed ray");
    }
    hi = lo + ds;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= 0.0 ? lo : hi) = mid;
    }
    return project(center + Point2{0.5 * (lo + hi), 0.0});
}

namespace {

// Counter-clockwise tangent of the outer level set: the gradient points
// towards the charges, so the outward normal is -grad f.
Point2 level_tangent(const Equipotential &curve, Point2 x) {
    const Point2 g = curve.gradient(x);
    const double gn = norm(g);
    if (gn < 1e-12) throw GeometryError("equipotential: degenerate gradient along the trace");
    return (1.0 / gn) * Point2{g.y, -g.x};
}

// Newton corrector; returns the iteration count, or -1 if it did not converge.
int correct(const Equipotential &curve, Point2 &x, double tol) {
    for (int it = 1; it <= 20; ++it) {
        const Point2 g = curve.gradient(x);
        const double g2 = dot(g, g);
        if (g2 < 1e-24) return -1;
        const double defect = curve.value(x) - curve.level;
        x -= (defect / g2) * g;
        if (std::abs(curve.value(x) - curve.level) <= tol * curve.level) return it;
    }
    return -1;
}

}  // namespace

std::vector<Point2> trace_equipotential(const Equipotential &curve, Point2 seed, const TraceOptions &options) {
    seed = curve.project(seed);
    std::vector<Point2> points{seed};
    Point2 x = seed;
    double h = options.step;
    for (int step = 0; step < options.max_steps; ++step) {
        const Point2 t = level_tangent(curve, x);
        Point2 next = x + h * t;
        const int iterations = correct(curve, next, options.tol);
        if (iterations < 0 || iterations > 5 || dot(level_tangent(curve, next), t) < std::cos(0.2)) {
            h *= 0.5;
            if (h < 1e-9 * options.step) throw GeometryError("equipotential: step size collapsed");
            --step;
            continue;
        }
        x = next;
        if (points.size() >= 10 && distance(x, seed) < 0.5 * h) {
            if (distance(x, seed) > 0.25 * h) points.push_back(x);
            return points;
        }
        points.push_back(x);
        h = std::min(options.step, 1.25 * h);
    }
    throw GeometryError("equipotential: trace did not close");
}

BoundaryCurve equipotential_trace(std::span<const Point2> charges, double level, Point2 seed, double step,
                                  double tol) {
    Equipotential curve{{charges.begin(), charges.end()}, level};
    TraceOptions options;
    options.step = step;
    options.tol = tol;
    auto points = std::make_shared<const std::vector<Point2>>(trace_equipotential(curve, seed, options));

    const std::size_t n = points->size();
    auto knots = std::make_shared<std::vector<double>>(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) (*knots)[i + 1] = (*knots)[i] + distance((*points)[i], (*points)[(i + 1) % n]);
    const double length = knots->back();

    // Four-point Lagrange interpolation in the chord parameter, then
    // projection back onto the level set.
    auto interpolate = [points, knots, length, n](double t) {
        t -= length * std::floor(t / length);
        const auto it = std::upper_bound(knots->begin(), knots->end(), t);
        const std::ptrdiff_t seg = std::clamp<std::ptrdiff_t>(it - knots->begin() - 1, 0, static_cast<std::ptrdiff_t>(n) - 1);
        const auto wrap = [n](std::ptrdiff_t i) { return static_cast<std::size_t>((i % static_cast<std::ptrdiff_t>(n) + static_cast<std::ptrdiff_t>(n)) % static_cast<std::ptrdiff_t>(n)); };
        const auto knot = [&](std::ptrdiff_t i) {
            const std::ptrdiff_t ni = static_cast<std::ptrdiff_t>(n);
            const std::ptrdiff_t cycles = (i >= 0 ? i / ni : (i - ni + 1) / ni);
            return (*knots)[static_cast<std::size_t>(i - cycles * ni)] + cycles * length;
        };
        Point2 p{};
        for (std::ptrdiff_t a = seg - 1; a <= seg + 2; ++a) {
            double w = 1.0;
            for (std::ptrdiff_t b = seg - 1; b <= seg + 2; ++b)
                if (b != a) w *= (t - knot(b)) / (knot(a) - knot(b));
            p += w * (*points)[wrap(a)];
        }
        return p;
    };

    ParametricPiece piece;
    piece.eval = [curve, interpolate](double t) { return curve.project(interpolate(t)); };
    piece.derivative = [curve, interpolate](double t) {
        const Point2 x = curve.project(interpolate(t));
        const double dt = 1e-6;
        const double speed = distance(interpolate(t + dt), interpolate(t - dt)) / (2.0 * dt);
        return speed * level_tangent(curve, x);
    };
    piece.t_begin = 0.0;
    piece.t_end = length;

    BoundaryCurve result;
    result.pieces.push_back(std::move(piece));
    result.closure_tol = std::max(1e-10, tol);
    return result;
}

BoundaryCurve equipotential_curve(std::span<const Point2> charges, double level) {
    Equipotential curve{{charges.begin(), charges.end()}, level};
    return equipotential_trace(charges, level, curve.find_seed());
}

}  // namespace hotspots
