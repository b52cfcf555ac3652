#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hotspots/special_functions.hpp"
#include "oracles.hpp"

using namespace hotspots;
using hotspots::testing::LComplex;
using hotspots::testing::series_oracle;

namespace {

double rel_error(Complex a, LComplex b) {
    const Complex bd(static_cast<double>(b.real()), static_cast<double>(b.imag()));
    return std::abs(a - bd) / std::abs(bd);
}

}  // namespace

TEST_CASE("series oracle reproduces tabulated Bessel values") {
    const auto o = series_oracle(1.0);
    CHECK(static_cast<double>(o.j0.real()) == doctest::Approx(0.7651976865579666).epsilon(1e-15));
    CHECK(static_cast<double>(o.y0.real()) == doctest::Approx(0.08825696421567696).epsilon(1e-14));
    CHECK(static_cast<double>(o.j1.real()) == doctest::Approx(0.4400505857449335).epsilon(1e-15));
    CHECK(static_cast<double>(o.y1.real()) == doctest::Approx(-0.7812128213002887).epsilon(1e-14));
}

TEST_CASE("H0 and H1 match the ascending series") {
    for (Complex z : {Complex(1.0), Complex(2.0), Complex(0.5, 0.25), Complex(3.7, -0.4), Complex(1e-3),
                      Complex(6.0, 0.5), Complex(0.2, -0.1)}) {
        const auto o = series_oracle(z);
        CAPTURE(z);
        CHECK(rel_error(special::hankel1_0(z), o.j0 + LComplex(0, 1) * o.y0) < 1e-12);
        CHECK(rel_error(special::hankel1_1(z), o.j1 + LComplex(0, 1) * o.y1) < 1e-12);
    }
}

TEST_CASE("H0 and H1 match high-precision values in the asymptotic regime") {
    struct Row {
        Complex z, h0, h1;
    };
    // mpmath, 30 digits
    const Row rows[] = {
        {{20.0, 0.0}, {0.167024664340583155, 0.0626405968093838312}, {0.0668331241758500456, -0.165511614362521296}},
        {{15.0, 0.5}, {-0.00655003231469872629, 0.124677773774269641}, {0.124666655718905892, 0.0107031246723474794}},
        {{100.0, 0.0}, {0.0199858503042231224, -0.0772443133650831523}, {-0.077145352014112158, -0.0203723120027597933}},
        {{9.5, -0.4}, {-0.294639723234447817, 0.249309067551126644}, {0.23362783039003914, 0.307483969508023138}},
        {{1000.0, 0.0}, {0.0247866861524201746, 0.0047159179776228134}, {0.00472831190708952392, -0.0247843312923517789}},
    };
    for (const auto &r : rows) {
        CAPTURE(r.z);
        CHECK(std::abs(special::hankel1_0(r.z) - r.h0) / std::abs(r.h0) < 1e-12);
        CHECK(std::abs(special::hankel1_1(r.z) - r.h1) / std::abs(r.h1) < 1e-12);
    }
}

TEST_CASE("zero argument and the branch cut are rejected") {
    CHECK_THROWS_AS(special::hankel1_0(0.0), DomainError);
    CHECK_THROWS_AS(special::hankel1_1(0.0), DomainError);
    CHECK_THROWS_AS(special::hankel1_0(Complex(-2.0, 0.0)), DomainError);
    CHECK_THROWS_AS(special::hankel1_1(Complex(-2.0, 0.0)), DomainError);
}

TEST_CASE("H0' = -H1 by central differences") {
    const double h = 1e-6;
    const Complex z(1.5, 0.3);
    const Complex fd = (special::hankel1_0(z + h) - special::hankel1_0(z - h)) / (2.0 * h);
    CHECK(std::abs(fd + special::hankel1_1(z)) < 1e-8);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(0.5, 20.0), imag(-1.0, 1.0);
    for (int n = 0; n < 100; ++n) {
        const double r = radius(rng), y = imag(rng);
        const Complex w(std::sqrt(std::max(r * r - y * y, 0.25)), y);
        const Complex d = (special::hankel1_0(w + h) - special::hankel1_0(w - h)) / (2.0 * h);
        CAPTURE(w);
        CHECK(std::abs(d + special::hankel1_1(w)) < 1e-8 * std::max(1.0, std::abs(special::hankel1_1(w))));
    }
}

TEST_CASE("J components stay real for real arguments") {
    for (double x = 0.1; x <= 50.0; x += 0.37) {
        const auto b = special::bessel_01(Complex(x, 0.0));
        CAPTURE(x);
        CHECK(std::abs(b.j0.imag()) < 1e-13);
        CHECK(std::abs(b.j1.imag()) < 1e-13);
    }
}

TEST_CASE("values agree across the regime switch radii") {
    for (double r : {special::kSeriesSwitchRadius, special::kExtendedSeriesRadius}) {
        for (double phase : {0.0, 0.03, -0.03}) {
            const Complex in = std::polar(r * (1.0 - 1e-13), phase), out = std::polar(r * (1.0 + 1e-13), phase);
            CAPTURE(r);
            CAPTURE(phase);
            CHECK(std::abs(special::hankel1_0(in) - special::hankel1_0(out)) / std::abs(special::hankel1_0(in)) <
                  1e-11);
            CHECK(std::abs(special::hankel1_1(in) - special::hankel1_1(out)) / std::abs(special::hankel1_1(in)) <
                  1e-11);
        }
    }
}

TEST_CASE("fundamental solution") {
    const auto o = series_oracle(1.0);
    const Complex h0(static_cast<double>(o.j0.real()), static_cast<double>(o.y0.real()));
    const Complex phi = fundamental_solution(1.0, {0, 0}, {1, 0});
    CHECK(std::abs(phi - Complex(0, 0.25) * h0) < 1e-14);

    const Complex k(2.0, 0.1);
    CHECK(fundamental_solution(k, {0, 0}, {0.3, 0.4}) == fundamental_solution(k, {0.3, 0.4}, {0, 0}));
    CHECK_THROWS_AS(fundamental_solution(1.0, {0, 0}, {0, 0}), DomainError);
}
