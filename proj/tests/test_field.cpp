#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>

#include "hotspots/harness.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace hotspots;

namespace {

struct CircleSolution {
    DomainSpec domain;
    Mesh mesh;
    double k;
    std::vector<Eigen::VectorXcd> vectors;
};

const CircleSolution &circle_solution(int nf) {
    static std::map<int, CircleSolution> cache;
    auto it = cache.find(nf);
    if (it != cache.end()) return it->second;
    DomainSpec d = domain_registry("circle");
    SolverParams params;
    const auto out = run_solve(d, faces_per_curve(d, nf), params);
    const auto acc = out.accepted(params.beyn);
    REQUIRE(acc.size() == 2);
    CircleSolution s{d, out.mesh, acc[0].k.real(), {acc[0].u, acc[1].u}};
    return cache.emplace(nf, std::move(s)).first->second;
}

Eigen::VectorXd circle_density(int nf, int which = 0) {
    return real_basis(circle_solution(nf).vectors)[static_cast<std::size_t>(which)].values;
}

FieldEvaluator circle_field(int nf, int which = 0) {
    const auto &s = circle_solution(nf);
    return FieldEvaluator(s.domain, s.mesh, s.k, circle_density(nf, which));
}

double bessel_j1(double x) { return static_cast<double>(hotspots::testing::series_oracle(x).j1.real()); }

}  // namespace

TEST_CASE("phase normalization") {
    Eigen::VectorXcd u(3);
    u << 0.6, -0.8, 0.0;
    const auto a = phase_normalize(u);
    CHECK(a.theta == doctest::Approx(0.0));
    CHECK((a.values - u.real()).norm() < 1e-15);
    CHECK(a.imag_residual < 1e-15);

    const auto b = phase_normalize(Complex(0, 1) * u);
    CHECK(std::min((b.values - u.real()).norm(), (b.values + u.real()).norm()) < 1e-15);

    Eigen::VectorXcd c(2);
    c << Complex(1, 0) / std::sqrt(2.0), Complex(0, 1) / std::sqrt(2.0);
    CHECK_THROWS_AS(phase_normalize(c), std::runtime_error);

    // The circle pair spans a real plane; a single member need not be real.
    const auto basis = real_basis(circle_solution(40).vectors);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0].imag_residual < 1e-6);
    CHECK(std::abs(basis[0].values.norm() - 1.0) < 1e-12);
    CHECK(std::abs(basis[0].values.dot(basis[1].values)) < 1e-12);
}

TEST_CASE("interior field matches the Bessel eigenfunction") {
    const FieldEvaluator f = circle_field(160);
    const double k = f.k();
    auto basis = [&](Point2 x) {
        const double r = norm(x), phi = std::atan2(x.y, x.x);
        return std::pair{bessel_j1(k * r) * std::cos(phi), bessel_j1(k * r) * std::sin(phi)};
    };
    const Point2 p1{0.5, 0.1}, p2{-0.2, 0.6}, target{0.3, 0.2};
    const auto [a1, b1] = basis(p1);
    const auto [a2, b2] = basis(p2);
    const double u1 = f.value(p1), u2 = f.value(p2);
    const double det = a1 * b2 - a2 * b1;
    const double c_cos = (u1 * b2 - u2 * b1) / det, c_sin = (a1 * u2 - a2 * u1) / det;
    const auto [at, bt] = basis(target);
    CHECK(std::abs(f.value(target) - (c_cos * at + c_sin * bt)) < 1e-6);
}

TEST_CASE("field evaluation basics") {
    const auto &s = circle_solution(40);
    const Eigen::VectorXd rho = circle_density(40);
    const Point2 x{0.2, -0.4};
    const double one = eval_interior(s.domain, s.mesh, s.k, rho, x);
    const double two = eval_interior(s.domain, s.mesh, s.k, 2.0 * rho, x);
    CHECK(std::abs(two - 2.0 * one) < 1e-14);
    CHECK_THROWS_AS(eval_interior(s.domain, s.mesh, s.k, rho, {1.5, 0.0}), std::domain_error);
    CHECK_THROWS_AS(eval_interior(s.domain, s.mesh, s.k, rho, {0.9999999, 0.0}), std::domain_error);
    CHECK_THROWS_AS(FieldEvaluator(s.domain, s.mesh, s.k, rho.head(5)), std::invalid_argument);

    // The trace at a collocation node is the density value there.
    const FieldEvaluator f(s.domain, s.mesh, s.k, rho);
    CHECK(f.boundary_value(3, s.mesh.alpha) == doctest::Approx(rho(9)));
}

TEST_CASE("grid sampling") {
    const FieldEvaluator f = circle_field(160);
    const FieldGrid g = sample_grid(f, 1.1, 100);
    CHECK(g.values.size() == 10000);
    // Points within half a cell of the boundary are masked out, so the disc shrinks by that margin.
    const double margin = 1.1 / 99.0;
    const double area_ratio = std::numbers::pi * (1.0 - margin) * (1.0 - margin) / (4.0 * 1.1 * 1.1);
    CHECK(std::abs(g.mask_fraction() - area_ratio) < 0.03 * area_ratio);
    for (std::size_t n = 0; n < g.values.size(); ++n) CHECK(std::isnan(g.values[n]) == !g.mask[n]);

    double worst = 0.0;
    for (int iy = 0; iy < 100; ++iy)
        for (int ix = 0; ix < 100; ++ix)
            if (g.inside(ix, iy) && g.inside(99 - ix, 99 - iy))
                worst = std::max(worst, std::abs(g.at(ix, iy) + g.at(99 - ix, 99 - iy)));
    CHECK(worst < 1e-4);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> pick(0, 99);
    for (int n = 0; n < 20;) {
        const int ix = pick(rng), iy = pick(rng);
        if (!g.inside(ix, iy)) continue;
        CHECK(std::abs(g.at(ix, iy) - f.value(g.point(ix, iy))) < 1e-12);
        ++n;
    }
    CHECK_THROWS_AS(sample_grid(f, 0.0, 10), std::invalid_argument);
}

TEST_CASE("grid export") {
    const FieldEvaluator f = circle_field(40);
    const FieldGrid g = sample_grid(f, 1.1, 12);
    const auto path = std::filesystem::temp_directory_path() / "hotspots_grid.csv";
    g.write_csv(path.string());
    std::ifstream in(path);
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "x,y,value,inside");
    int rows = 0, inside = 0;
    while (std::getline(in, line)) {
        ++rows;
        if (line.back() == '1') ++inside;
        if (line.back() == '0') CHECK(line.find(",,") != std::string::npos);
    }
    CHECK(rows == 144);
    CHECK(inside == std::count(g.mask.begin(), g.mask.end(), 1));
    std::filesystem::remove(path);

    const auto j = nlohmann::json::parse(g.to_json());
    CHECK(j.at("kappa") == 1.1);
    CHECK(j.at("resolution") == 12);
    CHECK(j.at("values").size() == 144);
    CHECK(j.at("mask").size() == 144);
}

TEST_CASE("Nelder-Mead") {
    const auto bowl = nelder_mead([](Point2 p) { return (p.x - 0.3) * (p.x - 0.3) + (p.y + 0.2) * (p.y + 0.2); },
                                  {0.0, 0.0});
    CHECK(bowl.converged);
    CHECK(distance(bowl.x, {0.3, -0.2}) < 1e-8);

    const auto rosen = nelder_mead(
        [](Point2 p) { return 100.0 * (p.y - p.x * p.x) * (p.y - p.x * p.x) + (1.0 - p.x) * (1.0 - p.x); }, {-1.2, 1.0},
        1e-10, 400);
    CHECK(rosen.iterations <= 400);
    CHECK(distance(rosen.x, {1.0, 1.0}) < 1e-6);

    const auto capped = nelder_mead([](Point2 p) { return p.x * p.x + p.y * p.y; }, {1.0, 1.0}, 1e-10, 3);
    CHECK(!capped.converged);

    CHECK_THROWS_AS(nelder_mead([](Point2) { return std::numeric_limits<double>::infinity(); }, {0, 0}),
                    std::invalid_argument);
}

TEST_CASE("circle extrema stay on the boundary") {
    for (int v = 0; v < 2; ++v) {
        const FieldEvaluator f = circle_field(40, v);
        const auto [hi, lo] = grid_extrema_starts(f, 1.1);
        const HotspotReport r = hotspot_report(f, {hi}, {lo});
        CHECK(r.max.aleph <= 1.0 + 1e-6);
        CHECK(r.min.aleph <= 1.0 + 1e-6);
        CHECK(r.max.aleph >= 0.0);
        if (r.max.interior) CHECK(f.domain().locate(r.max.location, 1e-3).is_inside());
    }
}

TEST_CASE("hot-spot ratios are invariant under scaling and phase") {
    const auto &s = circle_solution(40);
    const Eigen::VectorXd rho = circle_density(40);
    const FieldEvaluator f(s.domain, s.mesh, s.k, rho);
    const auto [hi, lo] = grid_extrema_starts(f, 1.1);
    const HotspotReport base = hotspot_report(f, {hi}, {lo});

    const FieldEvaluator scaled(s.domain, s.mesh, s.k, -3.7 * rho);
    const HotspotReport r = hotspot_report(scaled, {lo}, {hi});
    CHECK(r.max.aleph == doctest::Approx(base.min.aleph).epsilon(1e-9));
    CHECK(r.min.aleph == doctest::Approx(base.max.aleph).epsilon(1e-9));

    const Eigen::VectorXcd real_vector = rho.cast<Complex>();
    const Eigen::VectorXd turned = phase_normalize(real_vector * std::polar(1.0, 0.7)).values;
    const double sign = turned.dot(rho) > 0 ? 1.0 : -1.0;
    CHECK((sign * turned - rho).norm() < 1e-12);
}
