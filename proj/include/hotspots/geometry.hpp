#pragma once

#include <array>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hotspots/point.hpp"

namespace hotspots {

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Collocation parameter: the Gauss point (1 - sqrt(3/5)) / 2 of [0, 1].
inline const double kDefaultAlpha = (1.0 - std::sqrt(3.0 / 5.0)) / 2.0;

/// Affine map x -> A x + b.
struct Affine2 {
    double a11 = 1, a12 = 0, a21 = 0, a22 = 1;
    Point2 shift{};

    Point2 apply(Point2 p) const { return Point2{a11 * p.x + a12 * p.y, a21 * p.x + a22 * p.y} + shift; }
    Point2 linear(Point2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    double determinant() const { return a11 * a22 - a12 * a21; }

    static Affine2 rotation(double angle);
    static Affine2 scaling(double s);
    static Affine2 translation(Point2 t);
    static Affine2 mirror_x_axis();  ///< (x, y) -> (x, -y)
    static Affine2 mirror_y_axis();  ///< (x, y) -> (-x, y)
};

/// Composition: (a * b)(x) = a(b(x)).
Affine2 operator*(const Affine2 &a, const Affine2 &b);

/// A C^1 curve segment traversed from parameter t_begin to t_end.
///
/// t_begin > t_end is allowed and reverses the traversal direction.
struct ParametricPiece {
    std::function<Point2(double)> eval;
    std::function<Point2(double)> derivative;
    double t_begin = 0.0;
    double t_end = 1.0;

    double param(double u) const { return t_begin + u * (t_end - t_begin); }
    /// Point at normalized position u in [0, 1] along the traversal.
    Point2 at(double u) const { return eval(param(u)); }
    /// d/du of at(u).
    Point2 tangent(double u) const { return (t_end - t_begin) * derivative(param(u)); }
    Point2 start() const { return eval(t_begin); }
    Point2 finish() const { return eval(t_end); }

    double arc_length() const;
    ParametricPiece reversed() const;
    ParametricPiece transformed(const Affine2 &map) const;
};

/// Arc of the ellipse (cx + a cos t, cy + b sin t) from angle t1 to t2.
ParametricPiece ellipse_arc(double cx, double cy, double a, double b, double t1, double t2);

ParametricPiece line_segment(Point2 from, Point2 to);

/// Closed piecewise-parametric curve.
struct BoundaryCurve {
    std::vector<ParametricPiece> pieces;
    double closure_tol = 1e-10;

    /// Throws GeometryError if consecutive pieces do not join or the curve is open.
    void validate() const;
    double arc_length() const;
    /// Polyline approximation with at least `min_points` vertices (closing vertex omitted).
    std::vector<Point2> sample(int min_points) const;
    /// Shoelace area of sample(n). Positive for counter-clockwise curves.
    double signed_area(int n = 10000) const;

    BoundaryCurve reversed() const;
    BoundaryCurve transformed(const Affine2 &map) const;
};

/// Closed curve through the given vertices (the last vertex joins the first).
BoundaryCurve polygon(std::span<const Point2> vertices);

/// Classification result of point_in_domain.
struct PointLocation {
    enum class Kind { inside, outside, near_boundary };
    Kind kind = Kind::outside;
    double boundary_distance = 0.0;

    bool is_inside() const { return kind == Kind::inside; }
};

namespace detail {
struct DomainPolylines;
}

/// Domain with a counter-clockwise outer boundary and clockwise holes.
class DomainSpec {
public:
    /// Orientation is normalized (outer CCW, holes CW) before validation.
    /// Throws GeometryError if a curve is open, a hole is not strictly inside
    /// the outer curve, or two holes intersect.
    DomainSpec(std::string name, BoundaryCurve outer, std::vector<BoundaryCurve> holes = {});

    const std::string &name() const { return name_; }
    const BoundaryCurve &outer() const { return outer_; }
    const std::vector<BoundaryCurve> &holes() const { return holes_; }
    std::size_t curve_count() const { return 1 + holes_.size(); }
    /// Curve i: 0 is the outer boundary, i >= 1 the holes.
    const BoundaryCurve &curve(std::size_t i) const { return i == 0 ? outer_ : holes_.at(i - 1); }

    /// Winding-number classification against densely sampled boundaries.
    PointLocation locate(Point2 x, double guard) const;
    /// Distance to the sampled boundary polylines.
    double boundary_distance(Point2 x) const;

private:
    std::string name_;
    BoundaryCurve outer_;
    std::vector<BoundaryCurve> holes_;
    std::shared_ptr<const detail::DomainPolylines> polylines_;
};

PointLocation point_in_domain(const DomainSpec &domain, Point2 x, double guard = 1e-3);

/// Quadratic boundary element: vertex, midpoint, vertex.
struct Face {
    std::array<Point2, 3> nodes;
    int curve = 0;

    /// Quadratic interpolant through the nodes at s = 0, 1/2, 1.
    Point2 map(double s) const {
        const double u = 1.0 - s;
        return (u * (1.0 - 2.0 * s)) * nodes[0] + (4.0 * s * u) * nodes[1] + (s * (2.0 * s - 1.0)) * nodes[2];
    }
    Point2 derivative(double s) const {
        return (4.0 * s - 3.0) * nodes[0] + (4.0 - 8.0 * s) * nodes[1] + (4.0 * s - 1.0) * nodes[2];
    }
    Point2 second_derivative() const { return 4.0 * nodes[0] - 8.0 * nodes[1] + 4.0 * nodes[2]; }
};

/// Collocation mesh. Unknown index = 3 * (global face index) + q with
/// q = 0, 1, 2 for the local parameters alpha, 1/2, 1 - alpha; curves are
/// concatenated outer first.
struct Mesh {
    double alpha = kDefaultAlpha;
    std::vector<Face> faces;
    /// Face index range of curve c is [curve_offsets[c], curve_offsets[c + 1]).
    std::vector<int> curve_offsets;
    /// Interpolation nodes per curve: 2 n_f points alternating vertex / midpoint.
    std::vector<std::vector<Point2>> nodes;
    std::vector<Point2> collocation;

    std::size_t size() const { return collocation.size(); }
    std::size_t face_count() const { return faces.size(); }
    std::size_t curve_count() const { return nodes.size(); }
    std::array<double, 3> local_params() const { return {alpha, 0.5, 1.0 - alpha}; }
};

/// Builds the mesh with faces_per_curve[c] faces on curve c. Faces are
/// allotted to pieces in proportion to arc length (at least one each) and
/// spaced uniformly in the piece parameter, so piece junctions (corners)
/// are always face vertices.
Mesh build_mesh(const DomainSpec &domain, std::span<const int> faces_per_curve, double alpha = kDefaultAlpha);
Mesh build_mesh(const DomainSpec &domain, int faces_per_curve, double alpha = kDefaultAlpha);

/// Derivative of the quadratic map of face j at s.
Point2 map_derivative(const Mesh &mesh, std::size_t j, double s);

/// Splits `total` faces over pieces of the given lengths (largest remainder).
std::vector<int> allot_faces(std::span<const double> lengths, int total);

// ---------------------------------------------------------------------------
// Implicit curves.

/// Level set sum_i 1 / |x - P_i| = c.
struct Equipotential {
    std::vector<Point2> charges;
    double level = 1.0;

    double value(Point2 x) const;
    Point2 gradient(Point2 x) const;
    /// Newton projection onto the level set along the gradient.
    Point2 project(Point2 x, int max_iter = 50) const;
    /// Outermost level-set crossing on the ray from the charge centroid along +x.
    Point2 find_seed() const;
};

struct TraceOptions {
    double step = 0.02;
    double tol = 1e-12;
    int max_steps = 200000;
};

/// Traces the level set counter-clockwise from `seed` with an arc-length
/// predictor and Newton corrector. Returns the traced points (not repeating
/// the seed at the end). Throws GeometryError if the trace does not close or
/// the gradient degenerates.
std::vector<Point2> trace_equipotential(const Equipotential &curve, Point2 seed, const TraceOptions &options = {});

/// Closed curve on the level set, parametrized by approximate arc length.
BoundaryCurve equipotential_trace(std::span<const Point2> charges, double level, Point2 seed, double step = 0.02,
                                  double tol = 1e-12);
BoundaryCurve equipotential_curve(std::span<const Point2> charges, double level);

}  // namespace hotspots
