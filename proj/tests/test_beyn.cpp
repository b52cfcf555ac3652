#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hotspots/bem_assembly.hpp"
#include "hotspots/beyn.hpp"
#include "hotspots/domains.hpp"

using namespace hotspots;
using Eigen::MatrixXcd;

namespace {

// N-point trapezoidal value of (1 / 2 pi i) \oint dz / (z - a) over the circle mu + R e^{it}.
// Inside the circle it is 1 / (1 - q^N) with q = (a - mu) / R; outside -(1/q)^N / (1 - (1/q)^N).
Complex trapezoid_residue(Complex a, const ContourConfig &c) {
    const Complex q = (a - c.mu) / c.radius;
    if (std::abs(q) < 1.0) return 1.0 / (1.0 - std::pow(q, c.quad_points));
    const Complex p = std::pow(1.0 / q, c.quad_points);
    return -p / (1.0 - p);
}

MatrixFunction scalar(Complex pole) {
    return [pole](Complex k) { return MatrixXcd::Constant(1, 1, k - pole); };
}

BeynResult circle_solve(int nf, std::uint64_t seed) {
    const BemOperator op(build_mesh(domain_registry("circle"), nf));
    BeynConfig cfg;
    cfg.seed = seed;
    return solve(op, static_cast<Eigen::Index>(op.size()), {2.0, 0.5, 24}, cfg);
}

}  // namespace

TEST_CASE("scalar pole moments") {
    const ContourConfig c{2.0, 1.0, 24};
    const MatrixXcd probe = MatrixXcd::Ones(1, 1);
    const Moments in = moments(scalar(1.5), 1, c, probe);
    const Complex r = trapezoid_residue(1.5, c);
    CHECK(std::abs(in.a0(0, 0) - r) < 1e-12);
    CHECK(std::abs(in.a1(0, 0) - 1.5 * r) < 1e-12);
    // Exact residues differ from the discrete sums by (1/2)^24.
    CHECK(std::abs(in.a0(0, 0) - 1.0) < 1e-7);
    CHECK(std::abs(in.a1(0, 0) - 1.5) < 1e-7);

    const Moments out = moments(scalar(5.0), 1, c, probe);
    CHECK(std::abs(out.a0(0, 0)) < 1e-10);
    CHECK(std::abs(out.a0(0, 0) - trapezoid_residue(5.0, c)) < 1e-14);
}

TEST_CASE("diagonal 2x2 moments") {
    const ContourConfig c{2.0, 0.5, 24};
    auto fn = [](Complex k) {
        MatrixXcd m = MatrixXcd::Zero(2, 2);
        m(0, 0) = k - 1.8;
        m(1, 1) = k - 3.5;
        return m;
    };
    const auto mo = moments(fn, 2, c, MatrixXcd::Identity(2, 2));
    const Complex r1 = trapezoid_residue(1.8, c), r2 = trapezoid_residue(3.5, c);
    CHECK(std::abs(mo.a0(0, 0) - r1) < 1e-12);
    CHECK(std::abs(mo.a0(1, 1) - r2) < 1e-12);
    CHECK(std::abs(mo.a1(0, 0) - 1.8 * r1) < 1e-12);
    CHECK(std::abs(mo.a1(1, 1) - 3.5 * r2) < 1e-12);
    CHECK(std::abs(mo.a0(0, 1)) + std::abs(mo.a0(1, 0)) < 1e-15);
    CHECK(std::abs(mo.a0(0, 0) - 1.0) < 1e-9);
    CHECK(std::abs(mo.a0(1, 1)) < 1e-10);
}

TEST_CASE("contour quadrature converges exponentially") {
    const MatrixXcd probe = MatrixXcd::Ones(1, 1);
    auto error = [&](int n) { return std::abs(moments(scalar(1.5), 1, {2.0, 1.0, n}, probe).a0(0, 0) - 1.0); };
    CHECK(error(12) / error(24) > 1e3);
}

TEST_CASE("singular node is reported") {
    const ContourConfig c{2.0, 0.5, 24};
    CHECK_THROWS_AS(moments(scalar(2.5), 1, c, MatrixXcd::Ones(1, 1)), std::runtime_error);
}

TEST_CASE("rank test") {
    Eigen::VectorXd s(3);
    s << 1.0, 1e-2, 1e-9;
    CHECK(numerical_rank(s, 1e-4) == 2);
    MatrixXcd a = MatrixXcd::Zero(5, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 1e-2;
    a(2, 2) = 1e-9;
    const RankReveal r = rank_reveal(a, 1e-4);
    CHECK(r.rank == 2);
    CHECK(r.v0.cols() == 2);
    CHECK(r.w0.cols() == 2);
    CHECK(r.sigma0(0) == doctest::Approx(1.0));
    CHECK(r.sigma0(1) == doctest::Approx(1e-2));

    CHECK(rank_reveal(MatrixXcd::Constant(5, 3, 1e-6), 1e-4).rank == 0);
    CHECK_THROWS_AS(rank_reveal(MatrixXcd::Identity(5, 3), 1e-4), std::runtime_error);
}

TEST_CASE("configuration checks") {
    CHECK_THROWS_AS((ContourConfig{0.4, 0.5, 24}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ContourConfig{2.0, 0.5, 7}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ContourConfig{2.0, 0.5, 6}.validate()), std::invalid_argument);
    BeynConfig cfg;
    cfg.probe_cols = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("probe matrix is seeded") {
    const MatrixXcd a = probe_matrix(7, 3, 42), b = probe_matrix(7, 3, 42), c = probe_matrix(7, 3, 43);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.real().cwiseAbs().maxCoeff() <= 1.0);
    CHECK(a.imag().cwiseAbs().maxCoeff() <= 1.0);
}

TEST_CASE("quadratic polynomial eigenproblem") {
    auto fn = [](Complex k) {
        MatrixXcd m = MatrixXcd::Zero(2, 2);
        m(0, 0) = k * k - 1.0;
        m(1, 1) = k - 3.0;
        return m;
    };
    BeynConfig cfg;
    cfg.probe_cols = 2;
    const BeynResult r = solve(fn, 2, {1.2, 0.5, 24}, cfg);
    REQUIRE(r.rank == 1);
    const auto acc = r.accepted(cfg);
    REQUIRE(acc.size() == 1);
    CHECK(std::abs(acc[0].k - 1.0) < 1e-10);
    CHECK(acc[0].residual < 1e-10);
    CHECK(acc[0].u.norm() == doctest::Approx(1.0));
}

TEST_CASE("eigenvalue near the contour triggers a warning") {
    auto fn = [](Complex k) {
        MatrixXcd m = MatrixXcd::Zero(2, 2);
        m(0, 0) = k - 2.4997;
        m(1, 1) = k - 10.0;
        return m;
    };
    BeynConfig cfg;
    cfg.probe_cols = 2;
    const BeynResult r = solve(fn, 2, {2.0, 0.5, 24}, cfg);
    CHECK(!r.warnings.empty());
}

TEST_CASE("clusters") {
    const std::vector<Complex> v{1.0, 1.0 + 5e-7, 2.0, 3.0, 3.0 + 1e-9, 3.0 + 2e-9};
    CHECK(cluster_ids(v, 1e-6) == std::vector<int>{0, 0, 1, 2, 2, 2});
}

TEST_CASE("circle: double eigenvalue, seed invariance, acceptance") {
    const BeynResult a = circle_solve(40, 42), b = circle_solve(40, 1234);
    CHECK(a.rank == 2);
    CHECK(b.rank == 2);
    BeynConfig cfg;
    const auto acc_a = a.accepted(cfg), acc_b = b.accepted(cfg);
    REQUIRE(acc_a.size() == 2);
    REQUIRE(acc_b.size() == 2);
    for (std::size_t n = 0; n < 2; ++n) {
        CHECK(std::abs(acc_a[n].k - acc_b[n].k) < 1e-8);
        CHECK(acc_a[n].residual <= cfg.residual_tol);
        CHECK(std::abs(acc_a[n].u.norm() - 1.0) < 1e-12);
        CHECK(acc_a[n].cluster_size == 2);
    }
    CHECK(std::abs(acc_a[0].k.real() - 1.841183781340659) < 1e-5);
}

TEST_CASE("circle eigenvalues are real to the imaginary tolerance once resolved") {
    const BeynResult r = circle_solve(80, 42);
    BeynConfig cfg;
    const auto acc = r.accepted(cfg);
    REQUIRE(acc.size() == 2);
    for (const auto &p : acc) {
        CHECK(std::abs(p.k.imag()) <= cfg.imag_tol);
        CHECK(p.small_imag);
    }
}

TEST_CASE("annulus: multiplicity-two pair") {
    const DomainSpec d = domain_registry("annulus");
    const BemOperator op(build_mesh(d, 20));
    BeynConfig cfg;
    const BeynResult r = solve(op, static_cast<Eigen::Index>(op.size()), {1.2, 0.5, 24}, cfg);
    const auto acc = r.accepted(cfg);
    std::vector<Complex> near;
    for (const auto &p : acc)
        if (std::abs(p.k - 0.822253) < 1e-3) near.push_back(p.k);
    REQUIRE(near.size() == 2);
    CHECK(std::abs(near[0] - near[1]) < 1e-4);
}

TEST_CASE("circle at 1280 faces" * doctest::skip(true)) {
    // Roughly ten minutes on one core; run with --no-skip.
    const BeynResult r = circle_solve(1280, 42);
    const auto acc = r.accepted(BeynConfig{});
    REQUIRE(!acc.empty());
    CHECK(std::abs(acc.front().k - 1.841183781340659) < 1.4e-10);
}
