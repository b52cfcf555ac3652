#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace hotspots {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 12;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be positive");
        if (max_depth < 1) throw std::invalid_argument("quadrature max_depth must be at least 1");
    }
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T, std::size_t N>
struct QuadratureResult {
    std::array<T, N> value{};
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};

namespace detail {

// 15-point Kronrod nodes on [-1, 1] (non-negative half); the odd entries are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class T>
double magnitude(const T &v) {
    return std::abs(v);
}

// One G7-K15 panel for a vector-valued integrand.
template <class T, std::size_t N, class F>
void kronrod_panel(F &f, double a, double b, std::array<T, N> &kronrod, double &error) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<T, N> gauss{};
    kronrod = {};
    auto accumulate = [&](const std::array<T, N> &v, double wk, double wg) {
        for (std::size_t n = 0; n < N; ++n) {
            kronrod[n] += wk * v[n];
            if (wg != 0.0) gauss[n] += wg * v[n];
        }
    };
    accumulate(f(c), kKronrodWeights[7], kGaussWeights[3]);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kKronrodNodes[i];
        const double wg = (i % 2 == 1) ? kGaussWeights[i / 2] : 0.0;
        accumulate(f(c - dx), kKronrodWeights[i], wg);
        accumulate(f(c + dx), kKronrodWeights[i], wg);
    }
    error = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        kronrod[n] *= h;
        gauss[n] *= h;
        error = std::max(error, magnitude(kronrod[n] - gauss[n]));
    }
}

template <class T, std::size_t N, class F>
void refine(F &f, double a, double b, double tol_density, int depth, const QuadratureConfig &cfg,
            const std::array<T, N> &estimate, double error, QuadratureResult<T, N> &out) {
    if (error <= tol_density * (b - a) || depth >= cfg.max_depth) {
        if (error > tol_density * (b - a)) out.converged = false;
        for (std::size_t n = 0; n < N; ++n) out.value[n] += estimate[n];
        out.error += error;
        return;
    }
    const double m = 0.5 * (a + b);
    std::array<T, N> left, right;
    double el, er;
    kronrod_panel(f, a, m, left, el);
    kronrod_panel(f, m, b, right, er);
    out.evaluations += 30;
    refine(f, a, m, tol_density, depth + 1, cfg, left, el, out);
    refine(f, m, b, tol_density, depth + 1, cfg, right, er, out);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature of a vector-valued integrand
/// f: double -> std::array<T, N> over [a, b]. Each panel is accepted once its
/// error estimate falls below its length share of max(abs_tol, rel_tol |I|),
/// with |I| the largest component of the first whole-interval estimate.
/// Panels still failing at max_depth are accepted and flagged through
/// `converged = false`.
template <class T, std::size_t N, class F>
QuadratureResult<T, N> integrate_adaptive(F &&f, double a, double b, const QuadratureConfig &cfg = {}) {
    QuadratureResult<T, N> out;
    std::array<T, N> whole;
    double error;
    detail::kronrod_panel(f, a, b, whole, error);
    out.evaluations = 15;
    double scale = 0.0;
    for (const auto &v : whole) scale = std::max(scale, detail::magnitude(v));
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * scale);
    detail::refine(f, a, b, tol / (b - a), 0, cfg, whole, error, out);
    return out;
}

/// Scalar convenience wrapper.
template <class F>
double integrate_adaptive_scalar(F &&f, double a, double b, const QuadratureConfig &cfg = {}) {
    auto g = [&f](double x) { return std::array<double, 1>{f(x)}; };
    auto r = integrate_adaptive<double, 1>(g, a, b, cfg);
    if (!r.converged) throw QuadratureError("adaptive quadrature did not converge");
    return r.value[0];
}

}  // namespace hotspots
