#include "hotspots/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace hotspots::special {

namespace {

template <class T>
struct SeriesResult {
    std::complex<T> j0, j1, y0, y1;
};

// Ascending series for J0, J1 and the logarithmic series for Y0, Y1.
// With t = -(z/2)^2:
//   J0 = sum t^m / (m!)^2,              J1 = (z/2) sum t^m / (m! (m+1)!)
//   Y0 = (2/pi) [(ln(z/2) + gamma) J0 - sum_{m>=1} H_m t^m / (m!)^2]
//   Y1 = (2/pi) (ln(z/2) + gamma) J1 - 2/(pi z)
//        - (1/pi) (z/2) sum_{m>=0} (H_m + H_{m+1}) t^m / (m! (m+1)!)
template <class T>
SeriesResult<T> ascending_series(std::complex<T> z) {
    using C = std::complex<T>;
    constexpr T pi = std::numbers::pi_v<T>;
    constexpr T euler_gamma = std::numbers::egamma_v<T>;
    constexpr T eps = std::numeric_limits<T>::epsilon();

    const C half = z / T(2);
    const C t = -half * half;

    C a(1), b(1);
    C j0_sum(1), j1_sum(1), s0(0), s1(1);
    T harmonic = 0;
    for (int m = 1; m < 200; ++m) {
        const T mm = static_cast<T>(m);
        a *= t / (mm * mm);
        b *= t / (mm * (mm + 1));
        harmonic += T(1) / mm;
        const T harmonic_next = harmonic + T(1) / (mm + 1);
        j0_sum += a;
        j1_sum += b;
        s0 += harmonic * a;
        s1 += (harmonic + harmonic_next) * b;
        const T term = std::abs(a) * (1 + harmonic) + std::abs(b) * (1 + 2 * harmonic_next) * (1 + std::abs(half));
        if (mm > std::abs(half) && term < eps * T(1e-3)) break;
    }

    const C log_term = std::log(half) + euler_gamma;
    SeriesResult<T> r;
    r.j0 = j0_sum;
    r.j1 = half * j1_sum;
    r.y0 = (T(2) / pi) * (log_term * r.j0 - s0);
    r.y1 = (T(2) / pi) * log_term * r.j1 - T(2) / (pi * z) - half * s1 / pi;
    return r;
}

// Hankel's expansion H_nu(z) ~ sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)}
// sum_m i^m a_m(nu) / z^m, truncated at the smallest term.
Complex asymptotic_sum(double nu, Complex z) {
    const double mu = 4.0 * nu * nu;
    const Complex i(0.0, 1.0);
    Complex term(1.0), sum(1.0);
    double previous = 1.0;
    for (int m = 1; m < 80; ++m) {
        const double odd = 2.0 * m - 1.0;
        const Complex next = term * i * ((mu - odd * odd) / (8.0 * m)) / z;
        const double magnitude = std::abs(next);
        if (magnitude > previous) break;
        term = next;
        sum += term;
        previous = magnitude;
        if (magnitude < 1e-17) break;
    }
    return sum;
}

void check_argument(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("hankel: non-finite argument");
    if (z == Complex(0.0, 0.0))
        throw DomainError("hankel: argument is zero (logarithmic singularity)");
    if (z.real() < 0.0 && std::abs(z.imag()) < 1e-14)
        throw DomainError("hankel: argument on the branch cut (negative real axis)");
}

// Coefficients 1 / (m! (m+1)!) and (H_m + H_{m+1}) / (m! (m+1)!) of the
// order-one series in t = -(z/2)^2.
struct OrderOneTable {
    static constexpr int size = 48;
    static constexpr int bins_per_unit = 4;
    static constexpr int bins = 17 * bins_per_unit;  // |t| = |z/2|^2 <= 16
    std::array<double, size> j{}, y{};
    std::array<int, bins> degree{};

    OrderOneTable() {
        double c = 1.0, h = 0.0;
        for (int m = 0; m < size; ++m) {
            if (m > 0) {
                c /= static_cast<double>(m) * (m + 1);
                h += 1.0 / m;
            }
            j[m] = c;
            y[m] = c * (2.0 * h + 1.0 / (m + 1));
        }
        // Truncation degree for |t| up to the upper edge of each bin.
        for (int b = 0; b < bins; ++b) {
            const double at = static_cast<double>(b + 1) / bins_per_unit;
            int n = 1;
            double term = 1.0, peak = 1.0;
            while (n < size - 1) {
                term *= at / (static_cast<double>(n) * (n + 1));
                peak = std::max(peak, term);
                if (term < 1e-17 * peak && n > at) break;
                ++n;
            }
            degree[b] = n;
        }
    }
};

const OrderOneTable &order_one_table() {
    static const OrderOneTable table;
    return table;
}

// H1(z) for |z| <= kExtendedSeriesRadius by Horner evaluation of the
// truncated J1 and Y1 series.
Complex hankel1_1_series(Complex z) {
    const auto &tab = order_one_table();
    const Complex half = 0.5 * z;
    const Complex t = -half * half;
    const int bin = std::min(static_cast<int>(std::abs(t) * OrderOneTable::bins_per_unit), OrderOneTable::bins - 1);
    const int n = tab.degree[bin];
    Complex sj = tab.j[n], sy = tab.y[n];
    for (int m = n - 1; m >= 0; --m) {
        sj = sj * t + tab.j[m];
        sy = sy * t + tab.y[m];
    }
    constexpr double pi = std::numbers::pi;
    const Complex j1 = half * sj;
    const Complex y1 = (2.0 / pi) * (std::log(half) + std::numbers::egamma) * j1 - 2.0 / (pi * z) - half * sy / pi;
    return j1 + Complex(-y1.imag(), y1.real());
}

}  // namespace

BesselSet bessel_01(Complex z) {
    check_argument(z);
    const double r = std::abs(z);
    if (r <= kExtendedSeriesRadius) {
        const auto s = ascending_series<double>(z);
        return {s.j0, s.j1, s.y0, s.y1};
    }
    if (r <= kSeriesSwitchRadius) {
        const auto s = ascending_series<long double>(std::complex<long double>(z));
        return {Complex(s.j0), Complex(s.j1), Complex(s.y0), Complex(s.y1)};
    }
    const auto h1 = hankel1_01(z);
    // H2(z) = conj(H1(conj z)) for real order.
    const auto h2c = hankel1_01(std::conj(z));
    const Complex h20 = std::conj(h2c.h0), h21 = std::conj(h2c.h1);
    const Complex i(0.0, 1.0);
    return {0.5 * (h1.h0 + h20), 0.5 * (h1.h1 + h21), (h1.h0 - h20) / (2.0 * i), (h1.h1 - h21) / (2.0 * i)};
}

HankelPair hankel1_01(Complex z) {
    check_argument(z);
    const double r = std::abs(z);
    const Complex i(0.0, 1.0);
    if (r <= kExtendedSeriesRadius) {
        const auto s = ascending_series<double>(z);
        return {s.j0 + i * s.y0, s.j1 + i * s.y1};
    }
    if (r <= kSeriesSwitchRadius) {
        using CL = std::complex<long double>;
        const auto s = ascending_series<long double>(CL(z));
        const CL il(0.0L, 1.0L);
        return {Complex(s.j0 + il * s.y0), Complex(s.j1 + il * s.y1)};
    }
    const Complex pref = std::sqrt(2.0 / (std::numbers::pi * z));
    const Complex e0 = std::exp(i * (z - std::numbers::pi / 4.0));
    return {pref * e0 * asymptotic_sum(0.0, z), pref * e0 * (-i) * asymptotic_sum(1.0, z)};
}

Complex hankel1_0(Complex z) { return hankel1_01(z).h0; }
Complex hankel1_1(Complex z) {
    check_argument(z);
    if (std::abs(z) <= kExtendedSeriesRadius) return hankel1_1_series(z);
    return hankel1_01(z).h1;
}

}  // namespace hotspots::special

namespace hotspots {

Complex fundamental_solution(Complex k, Point2 x, Point2 y) {
    const double r = distance(x, y);
    if (r == 0.0) throw DomainError("fundamental_solution: x and y coincide");
    if (k == Complex(0.0, 0.0)) throw DomainError("fundamental_solution: k = 0");
    return Complex(0.0, 0.25) * special::hankel1_0(k * r);
}

}  // namespace hotspots
