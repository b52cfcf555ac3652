#include "hotspots/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hotspots {

// ---------------------------------------------------------------------------
// Affine maps

Affine2 Affine2::rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Affine2 m;
    m.a11 = c;
    m.a12 = -s;
    m.a21 = s;
    m.a22 = c;
    // Exact values for multiples of pi/2 keep rotated joints bit-exact.
    for (double *v : {&m.a11, &m.a12, &m.a21, &m.a22})
        if (std::abs(*v) < 1e-15) *v = 0.0;
    return m;
}

Affine2 Affine2::scaling(double s) {
    Affine2 m;
    m.a11 = s;
    m.a22 = s;
    return m;
}

Affine2 Affine2::translation(Point2 t) {
    Affine2 m;
    m.shift = t;
    return m;
}

Affine2 Affine2::mirror_x_axis() {
    Affine2 m;
    m.a22 = -1;
    return m;
}

Affine2 Affine2::mirror_y_axis() {
    Affine2 m;
    m.a11 = -1;
    return m;
}

Affine2 operator*(const Affine2 &a, const Affine2 &b) {
    Affine2 m;
    m.a11 = a.a11 * b.a11 + a.a12 * b.a21;
    m.a12 = a.a11 * b.a12 + a.a12 * b.a22;
    m.a21 = a.a21 * b.a11 + a.a22 * b.a21;
    m.a22 = a.a21 * b.a12 + a.a22 * b.a22;
    m.shift = a.apply(b.shift);
    return m;
}

// ---------------------------------------------------------------------------
// Pieces

namespace {

// 10-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 5> kGlNodes = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                            0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kGlWeights = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                              0.1494513491505806, 0.0666713443086881};

template <class F>
double gauss_legendre(F &&f, double a, double b, int panels) {
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h, half = 0.5 * h;
        for (std::size_t i = 0; i < kGlNodes.size(); ++i)
            total += half * kGlWeights[i] * (f(mid - half * kGlNodes[i]) + f(mid + half * kGlNodes[i]));
    }
    return total;
}

}  // namespace

double ParametricPiece::arc_length() const {
    return gauss_legendre([this](double u) { return norm(tangent(u)); }, 0.0, 1.0, 64);
}

ParametricPiece ParametricPiece::reversed() const {
    ParametricPiece p = *this;
    std::swap(p.t_begin, p.t_end);
    return p;
}

ParametricPiece ParametricPiece::transformed(const Affine2 &map) const {
    ParametricPiece p;
    p.eval = [f = eval, map](double t) { return map.apply(f(t)); };
    p.derivative = [d = derivative, map](double t) { return map.linear(d(t)); };
    p.t_begin = t_begin;
    p.t_end = t_end;
    return p;
}

ParametricPiece ellipse_arc(double cx, double cy, double a, double b, double t1, double t2) {
    if (!(a > 0.0) || !(b > 0.0)) throw GeometryError("ellipse_arc: semi-axes must be positive");
    if (t1 == t2) throw GeometryError("ellipse_arc: empty angle range");
    ParametricPiece p;
    p.eval = [=](double t) { return Point2{cx + a * std::cos(t), cy + b * std::sin(t)}; };
    p.derivative = [=](double t) { return Point2{-a * std::sin(t), b * std::cos(t)}; };
    p.t_begin = t1;
    p.t_end = t2;
    return p;
}

ParametricPiece line_segment(Point2 from, Point2 to) {
    if (distance(from, to) == 0.0) throw GeometryError("line_segment: zero length");
    ParametricPiece p;
    p.eval = [=](double t) { return (1.0 - t) * from + t * to; };
    p.derivative = [=](double) { return to - from; };
    p.t_begin = 0.0;
    p.t_end = 1.0;
    return p;
}

// ---------------------------------------------------------------------------
// Curves

void BoundaryCurve::validate() const {
    if (pieces.empty()) throw GeometryError("boundary curve has no pieces");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Point2 end = pieces[i].finish();
        const Point2 next = pieces[(i + 1) % pieces.size()].start();
        if (distance(end, next) > closure_tol) {
            throw GeometryError("boundary curve is not closed: gap of " + std::to_string(distance(end, next)) +
                                " after piece " + std::to_string(i));
        }
    }
}

double BoundaryCurve::arc_length() const {
    double total = 0.0;
    for (const auto &p : pieces) total += p.arc_length();
    return total;
}

std::vector<Point2> BoundaryCurve::sample(int min_points) const {
    std::vector<double> lengths;
    for (const auto &p : pieces) lengths.push_back(p.arc_length());
    const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(min_points) + 8 * pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const int n = std::max(8, static_cast<int>(std::ceil(min_points * lengths[i] / total)));
        for (int k = 0; k < n; ++k) out.push_back(pieces[i].at(static_cast<double>(k) / n));
    }
    return out;
}

double BoundaryCurve::signed_area(int n) const {
    const auto pts = sample(n);
    double area = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) area += cross(pts[i], pts[(i + 1) % pts.size()]);
    return 0.5 * area;
}

BoundaryCurve BoundaryCurve::reversed() const {
    BoundaryCurve c;
    c.closure_tol = closure_tol;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) c.pieces.push_back(it->reversed());
    return c;
}

BoundaryCurve BoundaryCurve::transformed(const Affine2 &map) const {
    BoundaryCurve c;
    c.closure_tol = closure_tol;
    for (const auto &p : pieces) c.pieces.push_back(p.transformed(map));
    return c;
}

BoundaryCurve polygon(std::span<const Point2> vertices) {
    if (vertices.size() < 3) throw GeometryError("polygon needs at least three vertices");
    BoundaryCurve c;
    for (std::size_t i = 0; i < vertices.size(); ++i) c.pieces.push_back(line_segment(vertices[i], vertices[(i + 1) % vertices.size()]));
    return c;
}

// ---------------------------------------------------------------------------
// Domains

namespace detail {

struct DomainPolylines {
    std::vector<std::vector<Point2>> curves;

    double distance(Point2 x) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto &poly : curves) {
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const Point2 a = poly[i], b = poly[(i + 1) % poly.size()];
                const Point2 ab = b - a;
                const double len2 = dot(ab, ab);
                double s = len2 > 0 ? dot(x - a, ab) / len2 : 0.0;
                s = std::clamp(s, 0.0, 1.0);
                best = std::min(best, hotspots::distance(x, a + s * ab));
            }
        }
        return best;
    }

    // Winding number of one closed polyline around x.
    static int winding(const std::vector<Point2> &poly, Point2 x) {
        int w = 0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point2 a = poly[i], b = poly[(i + 1) % poly.size()];
            if (a.y <= x.y) {
                if (b.y > x.y && cross(b - a, x - a) > 0) ++w;
            } else if (b.y <= x.y && cross(b - a, x - a) < 0) {
                --w;
            }
        }
        return w;
    }

    int winding(Point2 x) const {
        int w = 0;
        for (const auto &poly : curves) w += winding(poly, x);
        return w;
    }
};

}  // namespace detail

namespace {

constexpr int kPolylinePoints = 4000;

}  // namespace

DomainSpec::DomainSpec(std::string name, BoundaryCurve outer, std::vector<BoundaryCurve> holes)
    : name_(std::move(name)), outer_(std::move(outer)), holes_(std::move(holes)) {
    outer_.validate();
    if (outer_.signed_area() < 0) outer_ = outer_.reversed();
    for (auto &h : holes_) {
        h.validate();
        if (h.signed_area() > 0) h = h.reversed();
    }

    auto polys = std::make_shared<detail::DomainPolylines>();
    polys->curves.push_back(outer_.sample(kPolylinePoints));
    for (const auto &h : holes_) polys->curves.push_back(h.sample(kPolylinePoints));

    // Holes strictly inside the outer curve and pairwise disjoint.
    for (std::size_t i = 1; i < polys->curves.size(); ++i) {
        for (Point2 p : polys->curves[i]) {
            if (detail::DomainPolylines::winding(polys->curves[0], p) != 1)
                throw GeometryError("hole " + std::to_string(i) + " is not inside the outer boundary");
            for (std::size_t j = 1; j < polys->curves.size(); ++j) {
                if (j != i && detail::DomainPolylines::winding(polys->curves[j], p) != 0)
                    throw GeometryError("holes " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
            }
        }
    }
    polylines_ = std::move(polys);
}

double DomainSpec::boundary_distance(Point2 x) const { return polylines_->distance(x); }

PointLocation DomainSpec::locate(Point2 x, double guard) const {
    PointLocation loc;
    loc.boundary_distance = polylines_->distance(x);
    if (loc.boundary_distance < guard) {
        loc.kind = PointLocation::Kind::near_boundary;
    } else {
        loc.kind = polylines_->winding(x) == 1 ? PointLocation::Kind::inside : PointLocation::Kind::outside;
    }
    return loc;
}

PointLocation point_in_domain(const DomainSpec &domain, Point2 x, double guard) { return domain.locate(x, guard); }

// ---------------------------------------------------------------------------
// Mesh

std::vector<int> allot_faces(std::span<const double> lengths, int total) {
    const std::size_t n = lengths.size();
    if (total < static_cast<int>(n))
        throw GeometryError("face count " + std::to_string(total) + " is below the piece count " + std::to_string(n));
    const double sum = std::accumulate(lengths.begin(), lengths.end(), 0.0);
    std::vector<double> ideal(n);
    std::vector<int> count(n);
    for (std::size_t i = 0; i < n; ++i) {
        ideal[i] = total * lengths[i] / sum;
        count[i] = std::max(1, static_cast<int>(std::floor(ideal[i] + 1e-9)));
    }
    int assigned = std::accumulate(count.begin(), count.end(), 0);
    // Largest remainder first. Among tied pieces, take the one farthest (cyclically)
    // from the pieces already bumped, so equal pieces on symmetric halves stay equal.
    std::vector<std::size_t> bumped;
    auto spread = [&](std::size_t i) {
        std::size_t d = n;
        for (std::size_t b : bumped) d = std::min(d, std::min((i + n - b) % n, (b + n - i) % n));
        return d;
    };
    while (assigned < total) {
        double top = -1e300;
        for (std::size_t i = 0; i < n; ++i) top = std::max(top, ideal[i] - count[i]);
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (ideal[i] - count[i] < top - 1e-9) continue;
            if (best == n || spread(i) > spread(best)) best = i;
        }
        ++count[best];
        bumped.push_back(best);
        ++assigned;
    }
    while (assigned > total) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i)
            if (count[i] > 1 && (best == n || ideal[i] - count[i] < ideal[best] - count[best] - 1e-12)) best = i;
        --count[best];
        --assigned;
    }
    return count;
}

Mesh build_mesh(const DomainSpec &domain, std::span<const int> faces_per_curve, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw GeometryError("collocation parameter must lie in (0, 1/2)");
    if (faces_per_curve.size() != domain.curve_count())
        throw GeometryError("need one face count per boundary curve");

    Mesh mesh;
    mesh.alpha = alpha;
    mesh.curve_offsets.push_back(0);
    for (std::size_t c = 0; c < domain.curve_count(); ++c) {
        const BoundaryCurve &curve = domain.curve(c);
        curve.validate();
        const int nf = faces_per_curve[c];
        if (nf < 3) throw GeometryError("need at least three faces per curve");

        std::vector<double> lengths;
        for (const auto &p : curve.pieces) lengths.push_back(p.arc_length());
        const auto counts = allot_faces(lengths, nf);

        std::vector<Point2> nodes;
        nodes.reserve(2 * static_cast<std::size_t>(nf));
        for (std::size_t p = 0; p < curve.pieces.size(); ++p) {
            const auto &piece = curve.pieces[p];
            const int n = counts[p];
            for (int f = 0; f < n; ++f) {
                nodes.push_back(piece.at(static_cast<double>(f) / n));
                nodes.push_back(piece.at((f + 0.5) / n));
            }
        }
        const std::size_t nn = nodes.size();
        for (std::size_t f = 0; f < nn / 2; ++f) {
            Face face;
            face.nodes = {nodes[2 * f], nodes[2 * f + 1], nodes[(2 * f + 2) % nn]};
            face.curve = static_cast<int>(c);
            if (distance(face.nodes[0], face.nodes[2]) < 1e-14)
                throw GeometryError("zero-length face on curve " + std::to_string(c));
            // The derivative is affine in s; its minimum norm over [0, 1] must be positive.
            const Point2 d0 = face.derivative(0.0), d1 = face.derivative(1.0);
            const Point2 slope = d1 - d0;
            double smin = dot(slope, slope) > 0 ? -dot(d0, slope) / dot(slope, slope) : 0.0;
            smin = std::clamp(smin, 0.0, 1.0);
            if (norm(d0 + smin * slope) < 1e-12)
                throw GeometryError("degenerate face map on curve " + std::to_string(c));
            mesh.faces.push_back(face);
        }
        mesh.nodes.push_back(std::move(nodes));
        mesh.curve_offsets.push_back(static_cast<int>(mesh.faces.size()));
    }

    const auto q = mesh.local_params();
    mesh.collocation.reserve(3 * mesh.faces.size());
    for (const auto &f : mesh.faces)
        for (double s : q) mesh.collocation.push_back(f.map(s));
    return mesh;
}

Mesh build_mesh(const DomainSpec &domain, int faces_per_curve, double alpha) {
    std::vector<int> counts(domain.curve_count(), faces_per_curve);
    return build_mesh(domain, counts, alpha);
}

Point2 map_derivative(const Mesh &mesh, std::size_t j, double s) { return mesh.faces.at(j).derivative(s); }

}  // namespace hotspots
