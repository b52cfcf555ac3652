#include "hotspots/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hotspots {

namespace shapes {

namespace {
constexpr double pi = std::numbers::pi;
}

ParametricPiece radial_piece(std::function<double(double)> rho, std::function<double(double)> rho_prime, double t1,
                             double t2) {
    ParametricPiece p;
    p.eval = [rho](double t) { return rho(t) * Point2{std::cos(t), std::sin(t)}; };
    p.derivative = [rho, rho_prime](double t) {
        return rho_prime(t) * Point2{std::cos(t), std::sin(t)} + rho(t) * Point2{-std::sin(t), std::cos(t)};
    };
    p.t_begin = t1;
    p.t_end = t2;
    return p;
}

TeetherStrip teether_c1_strip() {
    TeetherStrip s;
    s.outer = {ellipse_arc(4, 4, 1, 1, -pi / 2, -pi), ellipse_arc(2, 4, 1, 1, 0, pi), ellipse_arc(0, 4, 1, 0.5, 0, -pi),
               ellipse_arc(-2, 4, 1, 1, 0, pi), ellipse_arc(-4, 4, 1, 1, 0, -pi / 2)};
    s.inner = {ellipse_arc(4, 1.5, 1, 1, pi / 2, pi), ellipse_arc(2, 1.5, 1, 1, 0, -pi),
               ellipse_arc(0, 1.5, 1, 0.5, 0, pi), ellipse_arc(-2, 1.5, 1, 1, 0, -pi),
               ellipse_arc(-4, 1.5, 1, 1, 0, pi / 2)};
    return s;
}

TeetherStrip teether_straight_strip() {
    TeetherStrip s;
    s.outer = {line_segment({4, 3}, {-4, 3})};
    s.inner = {line_segment({4, 2.5}, {-4, 2.5})};
    return s;
}

TeetherStrip teether_c4_strip(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("teether: bump height must be positive");
    const double yo = 3.0 + delta, yi = 2.5 - delta;
    TeetherStrip s;
    s.outer = {ellipse_arc(4, yo, 1, delta, -pi / 2, -pi), ellipse_arc(2, yo, 1, delta, 0, pi),
               ellipse_arc(0, yo, 1, delta, 0, -pi), ellipse_arc(-2, yo, 1, delta, 0, pi),
               ellipse_arc(-4, yo, 1, delta, 0, -pi / 2)};
    s.inner = {ellipse_arc(4, yi, 1, delta, pi / 2, pi), ellipse_arc(2, yi, 1, delta, 0, -pi),
               ellipse_arc(0, yi, 1, delta, 0, pi), ellipse_arc(-2, yi, 1, delta, 0, -pi),
               ellipse_arc(-4, yi, 1, delta, 0, pi / 2)};
    return s;
}

std::pair<BoundaryCurve, BoundaryCurve> teether(const TeetherStrip &upper, const TeetherStrip &lower) {
    const Affine2 half_turn = Affine2::rotation(pi);
    const Affine2 scale = Affine2::scaling(0.25);
    const ParametricPiece outer_cap = ellipse_arc(-4, 0, 3, 3, pi / 2, 3 * pi / 2);
    const ParametricPiece inner_cap = ellipse_arc(-4, 0, 2.5, 2.5, pi / 2, 3 * pi / 2);

    auto assemble = [&](const std::vector<ParametricPiece> &top, const ParametricPiece &cap,
                        const std::vector<ParametricPiece> &bottom) {
        BoundaryCurve c;
        for (const auto &p : top) c.pieces.push_back(p);
        c.pieces.push_back(cap);
        for (const auto &p : bottom) c.pieces.push_back(p.transformed(half_turn));
        c.pieces.push_back(cap.transformed(half_turn));
        return c.transformed(scale);
    };
    BoundaryCurve outer = assemble(upper.outer, outer_cap, lower.outer);
    BoundaryCurve inner = assemble(upper.inner, inner_cap, lower.inner).reversed();
    return {std::move(outer), std::move(inner)};
}

BoundaryCurve circle(Point2 center, double radius) {
    BoundaryCurve c;
    c.pieces.push_back(ellipse_arc(center.x, center.y, radius, radius, 0.0, 2.0 * pi));
    return c;
}

BoundaryCurve equipotential_d(int which) {
    switch (which) {
        case 1: {
            const std::vector<Point2> p{{-1, 0.5}, {1, 1.0 / 3.0}, {0, -0.8}};
            return equipotential_curve(p, 14.0 / 5.0);
        }
        case 2: {
            const std::vector<Point2> p{{-1.25, 0.1}, {1.25, 0}, {0.1, -1}, {0, 1}};
            return equipotential_curve(p, 3.5);
        }
        case 3: {
            const std::vector<Point2> p{{-1, 0.5}, {1, 0.5}, {0, -1}, {1.5, -1}, {-1.5, -1.2}};
            return equipotential_curve(p, 18.0 / 5.0);
        }
        default: throw std::invalid_argument("equipotential domain index must be 1, 2 or 3");
    }
}

}  // namespace shapes

namespace {

constexpr double pi = std::numbers::pi;
using Builder = std::function<DomainSpec(const std::string &, const ParamMap &)>;

struct Entry {
    DomainInfo info;
    Builder build;
};

BoundaryCurve polygon_of(std::initializer_list<Point2> v) {
    const std::vector<Point2> pts(v);
    return polygon(pts);
}

// r(t) (sin t, cos t) with sinusoidal bumps on two windows around t = pi/2 and 3 pi/2.
BoundaryCurve flower_curve(double omega, double a) {
    if (!(omega > 2.0)) throw std::invalid_argument("flower: omega must exceed 2");
    if (!(a > 0.0)) throw std::invalid_argument("flower: radius scale must be positive");
    const double w1 = (omega / 2 - 1) * pi / omega, w2 = (omega / 2 + 1) * pi / omega;
    const double w3 = (3 * omega / 2 - 1) * pi / omega, w4 = (3 * omega / 2 + 1) * pi / omega;
    auto piece = [a, omega](double t1, double t2, bool bump) {
        ParametricPiece p;
        auto r = [a, omega, bump](double t) { return bump ? a * (1.0 + 0.5 * std::sin(omega * t)) : a; };
        auto dr = [a, omega, bump](double t) { return bump ? a * 0.5 * omega * std::cos(omega * t) : 0.0; };
        p.eval = [r](double t) { return r(t) * Point2{std::sin(t), std::cos(t)}; };
        p.derivative = [r, dr](double t) {
            return dr(t) * Point2{std::sin(t), std::cos(t)} + r(t) * Point2{std::cos(t), -std::sin(t)};
        };
        p.t_begin = t1;
        p.t_end = t2;
        return p;
    };
    BoundaryCurve c;
    c.pieces = {piece(0, w1, false), piece(w1, w2, true), piece(w2, w3, false), piece(w3, w4, true),
                piece(w4, 2 * pi, false)};
    return c;
}

std::vector<BoundaryCurve> hole_circles(double radius, bool upper_left, bool lower_right, bool lower_left) {
    if (!(radius > 0.0)) throw std::invalid_argument("hole radius must be positive");
    const double cx = 0.5, cy = 11.0 / 16.0;
    std::vector<BoundaryCurve> holes{shapes::circle({cx, cy}, radius)};
    if (upper_left) holes.push_back(shapes::circle({-cx, cy}, radius));
    if (lower_right) holes.push_back(shapes::circle({cx, -cy}, radius));
    if (lower_left) holes.push_back(shapes::circle({-cx, -cy}, radius));
    return holes;
}

DomainSpec teether_domain(const std::string &name, const shapes::TeetherStrip &upper,
                          const shapes::TeetherStrip &lower, std::vector<BoundaryCurve> extra_holes = {}) {
    auto [outer, inner] = shapes::teether(upper, lower);
    std::vector<BoundaryCurve> holes{std::move(inner)};
    for (auto &h : extra_holes) holes.push_back(std::move(h));
    return DomainSpec(name, std::move(outer), std::move(holes));
}

// Teether with the upper-left chamber straightened; the lower half either
// repeats the upper strip (rotation) or its mirror image (reflection).
shapes::TeetherStrip one_chamber_strip(bool flip) {
    shapes::TeetherStrip s;
    if (!flip) {
        s.outer = {ellipse_arc(4, 4, 1, 1, -pi / 2, -pi), ellipse_arc(2, 4, 1, 1, 0, pi),
                   ellipse_arc(0, 4, 1, 0.5, 0, -pi), line_segment({-1, 4}, {-3, 4}),
                   ellipse_arc(-4, 4, 1, 1, 0, -pi / 2)};
        s.inner = {ellipse_arc(4, 1.5, 1, 1, pi / 2, pi), ellipse_arc(2, 1.5, 1, 1, 0, -pi),
                   ellipse_arc(0, 1.5, 1, 0.5, 0, pi), line_segment({-1, 1.5}, {-3, 1.5}),
                   ellipse_arc(-4, 1.5, 1, 1, 0, pi / 2)};
    } else {
        s.outer = {ellipse_arc(4, 4, 1, 1, -pi / 2, -pi), line_segment({3, 4}, {1, 4}),
                   ellipse_arc(0, 4, 1, 0.5, 0, -pi), ellipse_arc(-2, 4, 1, 1, 0, pi),
                   ellipse_arc(-4, 4, 1, 1, 0, -pi / 2)};
        s.inner = {ellipse_arc(4, 1.5, 1, 1, pi / 2, pi), line_segment({3, 1.5}, {1, 1.5}),
                   ellipse_arc(0, 1.5, 1, 0.5, 0, pi), ellipse_arc(-2, 1.5, 1, 1, 0, -pi),
                   ellipse_arc(-4, 1.5, 1, 1, 0, pi / 2)};
    }
    return s;
}

RunDefaults defaults(double mu, double kappa, int faces, double k, int ell = 10) {
    RunDefaults d;
    d.mu = mu;
    d.kappa = kappa;
    d.faces_per_curve = faces;
    d.published_k = k;
    d.ell = ell;
    return d;
}

RunDefaults with_starts(RunDefaults d, double y) {
    d.starts_max = {{0.0, y}};
    d.starts_min = {{0.0, -y}};
    return d;
}

bool flag(double v) { return v != 0.0; }

std::vector<Entry> make_entries() {
    std::vector<Entry> e;
    auto add = [&](std::string name, std::string description, std::vector<ParamSchema> params, RunDefaults d,
                   Builder build, ParamMap fixed = {}) {
        e.push_back({DomainInfo{std::move(name), std::move(description), std::move(params), std::move(fixed),
                                std::move(d)},
                     std::move(build)});
    };

    add("circle", "disk of given radius", {{"radius", 1.0, "radius"}}, defaults(2.0, 1.1, 40, 1.841183781340659),
        [](const std::string &n, const ParamMap &p) {
            return DomainSpec(n, shapes::circle({0, 0}, p.at("radius")));
        });
    add("ellipse", "ellipse with semi-axes a, b", {{"a", 1.2, "x semi-axis"}, {"b", 1.0, "y semi-axis"}},
        defaults(1.5, 1.3, 80, 1.544422), [](const std::string &n, const ParamMap &p) {
            BoundaryCurve c;
            c.pieces.push_back(ellipse_arc(0, 0, p.at("a"), p.at("b"), 0, 2 * pi));
            return DomainSpec(n, std::move(c));
        });
    auto deformed = [](const std::string &n, const ParamMap &p) {
        const double eps = p.at("eps");
        ParametricPiece piece;
        piece.eval = [eps](double t) { return Point2{0.75 * std::cos(t) + eps * std::cos(2 * t), std::sin(t)}; };
        piece.derivative = [eps](double t) {
            return Point2{-0.75 * std::sin(t) - 2 * eps * std::sin(2 * t), std::cos(t)};
        };
        piece.t_begin = 0;
        piece.t_end = 2 * pi;
        BoundaryCurve c;
        c.pieces.push_back(std::move(piece));
        return DomainSpec(n, std::move(c));
    };
    add("deformed_ellipse", "(0.75 cos t + eps cos 2t, sin t)", {{"eps", std::nullopt, "deformation"}},
        defaults(1.85, 1.3, 80, 0.0), deformed);
    add("deformed_ellipse_0.1", "deformed ellipse, eps = 0.1", {}, defaults(1.85, 1.3, 80, 1.849064), deformed,
        {{"eps", 0.1}});
    add("deformed_ellipse_0.2", "deformed ellipse, eps = 0.2", {}, defaults(1.85, 1.3, 80, 1.819478), deformed,
        {{"eps", 0.2}});
    add("deformed_ellipse_0.3", "deformed ellipse, eps = 0.3", {}, defaults(1.85, 1.3, 80, 1.770906), deformed,
        {{"eps", 0.3}});
    add("peanut", "radius sqrt(cos^2 t + sin^2 t / 4)", {}, defaults(1.5, 1.3, 80, 1.721292),
        [](const std::string &n, const ParamMap &) {
            auto rho = [](double t) { return std::sqrt(std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t) / 4); };
            auto drho = [rho](double t) { return -0.75 * std::sin(t) * std::cos(t) / rho(t); };
            BoundaryCurve c;
            c.pieces.push_back(shapes::radial_piece(rho, drho, 0, 2 * pi));
            return DomainSpec(n, std::move(c));
        });
    add("apple", "radius (0.5 + 0.4 cos t + 0.1 sin 2t) / (1 + 0.7 cos t)", {}, defaults(3.0, 1.3, 80, 2.761274),
        [](const std::string &n, const ParamMap &) {
            auto rho = [](double t) {
                return (0.5 + 0.4 * std::cos(t) + 0.1 * std::sin(2 * t)) / (1 + 0.7 * std::cos(t));
            };
            auto drho = [](double t) {
                const double num = 0.5 + 0.4 * std::cos(t) + 0.1 * std::sin(2 * t);
                const double den = 1 + 0.7 * std::cos(t);
                const double dnum = -0.4 * std::sin(t) + 0.2 * std::cos(2 * t);
                return (dnum * den + 0.7 * std::sin(t) * num) / (den * den);
            };
            BoundaryCurve c;
            c.pieces.push_back(shapes::radial_piece(rho, drho, 0, 2 * pi));
            return DomainSpec(n, std::move(c));
        });
    const double d_k[] = {1.051055, 1.086037, 0.861858};
    const double d_kappa[] = {1.6, 1.8, 2.1};
    for (int i = 1; i <= 3; ++i)
        add("equipotential_D" + std::to_string(i), "level set of a sum of inverse distances",
            {}, defaults(1.0, d_kappa[i - 1], 80, d_k[i - 1]), [i](const std::string &n, const ParamMap &) {
                return DomainSpec(n, shapes::equipotential_d(i));
            });

    add("square", "unit square centred at the origin", {}, defaults(3.5, 1.1, 32, pi),
        [](const std::string &n, const ParamMap &) {
            return DomainSpec(n, polygon_of({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}));
        });
    add("equilateral_triangle", "unit-side equilateral triangle centred at its centroid", {},
        defaults(4.5, 1.1, 24, 4 * pi / 3), [](const std::string &n, const ParamMap &) {
            const double h = std::sqrt(3.0);
            return DomainSpec(n, polygon_of({{-0.5, -h / 6}, {0.5, -h / 6}, {0, h / 3}}));
        });
    add("lshape", "[0,1]^2 minus [0.5,1]^2", {}, defaults(2.5, 1.1, 48, 2 * std::sqrt(1.475621845)),
        [](const std::string &n, const ParamMap &) {
            return DomainSpec(n, polygon_of({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}}));
        });
    add("lshape2", "[0,1]^2 minus [0.5,1] x [0.25,0.75]", {}, defaults(2.7, 1.1, 48, 2.725559),
        [](const std::string &n, const ParamMap &) {
            return DomainSpec(n, polygon_of({{0, 0}, {1, 0}, {1, 0.25}, {0.5, 0.25}, {0.5, 0.75}, {1, 0.75}, {1, 1},
                                             {0, 1}}));
        });
    add("lshape3", "[0,1]^2 minus [0.25,0.75] x [0.5,1]", {}, defaults(2.2, 1.1, 48, 2.207276),
        [](const std::string &n, const ParamMap &) {
            return DomainSpec(n, polygon_of({{0, 0}, {1, 0}, {1, 1}, {0.75, 1}, {0.75, 0.5}, {0.25, 0.5}, {0.25, 1},
                                             {0, 1}}));
        });

    add("annulus", "annulus with radii R1 < R2", {{"R1", 0.5, "inner radius"}, {"R2", 2.0, "outer radius"}},
        defaults(1.2, 2.1, 40, 0.822252688623884), [](const std::string &n, const ParamMap &p) {
            const double r1 = p.at("R1"), r2 = p.at("R2");
            if (!(r1 > 0 && r2 > r1)) throw std::invalid_argument("annulus: need 0 < R1 < R2");
            return DomainSpec(n, shapes::circle({0, 0}, r2), {shapes::circle({0, 0}, r1).reversed()});
        });
    add("A1", "unit disk with an elliptic hole", {}, defaults(1.5, 1.1, 80, 1.662873),
        [](const std::string &n, const ParamMap &) {
            BoundaryCurve hole;
            hole.pieces.push_back(ellipse_arc(-0.5, -0.3, 0.15, 0.35, 2 * pi, 0));
            return DomainSpec(n, shapes::circle({0, 0}, 1.0), {std::move(hole)});
        });
    add("A2", "deformed ellipse (eps = 0.3) with an elliptic hole", {}, defaults(1.5, 1.1, 80, 1.651571),
        [deformed](const std::string &n, const ParamMap &) {
            BoundaryCurve hole;
            hole.pieces.push_back(ellipse_arc(-0.1, -0.3, 0.15, 0.35, 2 * pi, 0));
            return DomainSpec(n, deformed(n, {{"eps", 0.3}}).curve(0), {std::move(hole)});
        });
    add("A3", "deformed ellipse (eps = 0.3) minus a quarter-turned half-size copy", {},
        defaults(1.5, 1.1, 80, 1.171590), [deformed](const std::string &n, const ParamMap &) {
            BoundaryCurve outer = deformed(n, {{"eps", 0.3}}).curve(0);
            // Turned and scaled about the centre of the bounding box, x in [-0.534375, 1.05].
            const Point2 c{0.5 * (1.05 - 0.534375), 0.0};
            const Affine2 t = Affine2::translation(c) * Affine2::rotation(pi / 2) * Affine2::scaling(0.5) *
                              Affine2::translation({-c.x, -c.y});
            BoundaryCurve hole = outer.transformed(t).reversed();
            return DomainSpec(n, std::move(outer), {std::move(hole)});
        });

    const int tf = 160;
    add("teether_C1", "teether: two chambers per half", {}, with_starts(defaults(0.8, 1.8, tf, 0.370708, 20), 0.6),
        [](const std::string &n, const ParamMap &) {
            return teether_domain(n, shapes::teether_c1_strip(), shapes::teether_c1_strip());
        });
    add("teether_C2", "teether with one chamber per half",
        {{"lower_mirrored", 0.0, "1: lower chamber mirrors the upper one across the x-axis"}},
        defaults(0.6, 1.6, tf, 0.534605, 20), [](const std::string &n, const ParamMap &p) {
            const bool mirrored = flag(p.at("lower_mirrored"));
            return teether_domain(n, one_chamber_strip(false), one_chamber_strip(mirrored));
        });
    auto c3 = [](const std::string &n, const ParamMap &p) {
        const double d = p.at("bump_delta");
        auto upper = shapes::teether_c1_strip();
        upper.outer[3] = ellipse_arc(-2, 4, 1, 1 + d, 0, pi);
        return teether_domain(n, upper, shapes::teether_c1_strip());
    };
    add("teether_C3", "teether C1 with a taller upper-left bump", {{"bump_delta", 0.025, "extra bump height"}},
        with_starts(defaults(0.8, 1.8, tf, 0.367496, 20), 0.6), c3);
    add("teether_C3_tilde", "teether C1 with a taller upper-left bump (0.1255)", {},
        with_starts(defaults(0.8, 1.8, tf, 0.370054, 20), 0.6), c3, {{"bump_delta", 0.1255}});
    auto c4 = [](const std::string &n, const ParamMap &p) {
        const double d = p.at("delta");
        return teether_domain(n, shapes::teether_c4_strip(d), shapes::teether_c4_strip(d));
    };
    add("teether_C4", "teether with elliptic bumps of height delta", {{"delta", 1.0, "bump height"}},
        with_starts(defaults(0.8, 1.8, tf, 0.384715, 20), 0.69), c4);
    add("teether_C4_tilde", "teether C4 with delta = 1/4", {},
        with_starts(defaults(0.8, 1.8, tf, 0.578402, 20), 0.69), c4, {{"delta", 0.25}});
    add("teether_C4_hat", "teether C4 with delta = 1/10", {},
        with_starts(defaults(0.8, 1.8, tf, 0.668373, 20), 0.69), c4, {{"delta", 0.1}});
    add("teether_C4_bar", "teether C4 with delta = 1/20", {},
        with_starts(defaults(0.8, 1.8, tf, 0.708633, 20), 0.69), c4, {{"delta", 0.05}});
    add("teether_C5", "teether C1 with a straight lower half", {},
        with_starts(defaults(0.8, 1.8, tf, 0.563329, 20), 0.6875), [](const std::string &n, const ParamMap &) {
            return teether_domain(n, shapes::teether_c1_strip(), shapes::teether_straight_strip());
        });
    add("stadium_S", "teether without bumps", {}, defaults(0.8, 1.8, tf, 0.755416, 20),
        [](const std::string &n, const ParamMap &) {
            return teether_domain(n, shapes::teether_straight_strip(), shapes::teether_straight_strip());
        });

    auto flower = [](const std::string &n, const ParamMap &p) {
        const double omega = p.at("omega");
        return DomainSpec(n, flower_curve(omega, p.at("a1")), {flower_curve(omega, p.at("a2"))});
    };
    const std::vector<ParamSchema> flower_params{{"omega", std::nullopt, "bump frequency"},
                                                 {"a1", 1.0, "outer radius scale"},
                                                 {"a2", 0.9, "inner radius scale"}};
    add("flower", "ring with sinusoidal bumps", flower_params, defaults(1.6, 1.6, 160, 0.0), flower);
    add("flower_F1", "flower with omega = 4", {{"a1", 1.0, "outer radius scale"}, {"a2", 0.9, "inner radius scale"}},
        defaults(1.6, 1.6, 160, 1.592787), flower, {{"omega", 4.0}});
    add("flower_F2", "flower with omega = 8", {{"a1", 1.0, "outer radius scale"}, {"a2", 0.9, "inner radius scale"}},
        defaults(1.7, 1.6, 160, 1.717098), flower, {{"omega", 8.0}});

    add("brick_B", "rectangular frame with notched walls", {}, defaults(0.7, 3.0, 100, 0.411448, 20),
        [](const std::string &n, const ParamMap &) {
            const std::vector<Point2> outer{{0, 1}, {3, 1}, {3, 0}, {4, 0}, {4, 1}, {6, 1}, {6, 0},
                                            {7, 0}, {7, 1}, {10, 1}, {10, 6}, {7, 6}, {7, 7}, {6, 7},
                                            {6, 6}, {4, 6}, {4, 7}, {3, 7}, {3, 6}, {0, 6}};
            std::vector<Point2> inner{{1, 2}, {3, 2}, {3, 3}, {4, 3}, {4, 2}, {6, 2}, {6, 3}, {7, 3}, {7, 2}, {9, 2},
                                      {9, 5}, {7, 5}, {7, 4}, {6, 4}, {6, 5}, {4, 5}, {4, 4}, {3, 4}, {3, 5}, {1, 5}};
            std::reverse(inner.begin(), inner.end());
            const Affine2 map = Affine2::scaling(0.5) * Affine2::translation({-5, -3.5});
            return DomainSpec(n, polygon(outer).transformed(map), {polygon(inner).transformed(map)});
        });

    auto holes = [](const std::string &n, const ParamMap &p) {
        return teether_domain(n, shapes::teether_c1_strip(), shapes::teether_c1_strip(),
                              hole_circles(p.at("R"), flag(p.at("hole_upper_left")), flag(p.at("hole_lower_right")),
                                           flag(p.at("hole_lower_left"))));
    };
    const std::vector<ParamSchema> hole_params{{"R", std::nullopt, "radius of the circular holes"},
                                               {"hole_upper_left", 0.0, "1: add the hole at (-1/2, 11/16)"},
                                               {"hole_lower_right", 0.0, "1: add the hole at (1/2, -11/16)"},
                                               {"hole_lower_left", 0.0, "1: add the hole at (-1/2, -11/16)"}};
    const std::vector<ParamSchema> radius_only{{"R", std::nullopt, "radius of the circular holes"}};
    auto hole_defaults = with_starts(defaults(0.8, 1.8, tf, 0.0, 20), 0.6);
    add("teether_C1R", "teether C1 with a circular hole at (1/2, 11/16)", hole_params, hole_defaults, holes);
    add("teether_C1R_tilde", "teether C1R with the hole mirrored at the y-axis", radius_only, hole_defaults, holes,
        {{"hole_upper_left", 1}, {"hole_lower_right", 0}, {"hole_lower_left", 0}});
    add("teether_C1R_mir", "teether C1R_tilde plus the upper-right hole mirrored at the x-axis", radius_only,
        hole_defaults, holes, {{"hole_upper_left", 1}, {"hole_lower_right", 1}, {"hole_lower_left", 0}});
    add("teether_C1R_tilde_mir", "teether C1R_tilde mirrored at the x-axis", radius_only, hole_defaults, holes,
        {{"hole_upper_left", 1}, {"hole_lower_right", 1}, {"hole_lower_left", 1}});
    return e;
}

const std::vector<Entry> &entries() {
    static const std::vector<Entry> e = make_entries();
    return e;
}

const Entry &find_entry(const std::string &name) {
    for (const auto &e : entries())
        if (e.info.name == name) return e;
    throw std::invalid_argument("unknown domain '" + name + "'");
}

}  // namespace

const std::vector<DomainInfo> &domain_catalog() {
    static const std::vector<DomainInfo> catalog = [] {
        std::vector<DomainInfo> c;
        for (const auto &e : entries()) c.push_back(e.info);
        return c;
    }();
    return catalog;
}

const DomainInfo &domain_info(const std::string &name) { return find_entry(name).info; }

DomainSpec domain_registry(const std::string &name, const ParamMap &params) {
    const Entry &entry = find_entry(name);
    ParamMap resolved = entry.info.fixed;
    for (const auto &[key, value] : params) {
        const bool known = std::any_of(entry.info.params.begin(), entry.info.params.end(),
                                       [&](const ParamSchema &s) { return s.name == key; });
        if (!known) throw std::invalid_argument("domain '" + name + "': unknown parameter '" + key + "'");
        resolved[key] = value;
    }
    for (const auto &schema : entry.info.params) {
        if (resolved.count(schema.name)) continue;
        if (!schema.default_value)
            throw std::invalid_argument("domain '" + name + "': missing parameter '" + schema.name + "'");
        resolved[schema.name] = *schema.default_value;
    }
    return entry.build(name, resolved);
}

}  // namespace hotspots
