#include "hotspots/beyn.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hotspots {

void ContourConfig::validate() const {
    if (!(radius > 0.0) || !(mu > radius))
        throw std::invalid_argument("contour: need mu > R > 0 so that k = 0 stays outside");
    if (quad_points < 8 || quad_points % 2 != 0)
        throw std::invalid_argument("contour: number of quadrature points must be even and at least 8");
}

Complex ContourConfig::point(int j) const {
    const double t = 2.0 * std::numbers::pi * j / quad_points;
    return mu + radius * Complex(std::cos(t), std::sin(t));
}

Complex ContourConfig::derivative(int j) const {
    const double t = 2.0 * std::numbers::pi * j / quad_points;
    return radius * Complex(-std::sin(t), std::cos(t));
}

void BeynConfig::validate() const {
    if (probe_cols < 1) throw std::invalid_argument("beyn: probe column count must be positive");
    if (!(rank_tol > 0.0)) throw std::invalid_argument("beyn: rank tolerance must be positive");
    if (!(residual_tol > 0.0) || !(imag_tol > 0.0) || !(cluster_tol > 0.0))
        throw std::invalid_argument("beyn: tolerances must be positive");
}

Moments moments(const MatrixFunction &matrix_fn, Eigen::Index m, const ContourConfig &contour,
                const Eigen::MatrixXcd &probe) {
    contour.validate();
    if (probe.rows() != m) throw std::invalid_argument("moments: probe row count does not match m");
    Moments out{Eigen::MatrixXcd::Zero(m, probe.cols()), Eigen::MatrixXcd::Zero(m, probe.cols())};
    for (int j = 0; j < contour.quad_points; ++j) {
        const Complex z = contour.point(j);
        const Eigen::MatrixXcd M = matrix_fn(z);
        if (M.rows() != m || M.cols() != m) throw std::invalid_argument("moments: matrix function has wrong size");
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
        const double rcond = lu.rcond();
        if (!(rcond > 1e-15)) {
            std::ostringstream msg;
            msg << "moments: M(k) is numerically singular at contour node " << j << " (k = " << z
                << "); perturb the contour centre or radius";
            throw std::runtime_error(msg.str());
        }
        const Eigen::MatrixXcd x = lu.solve(probe) * contour.derivative(j);
        out.a0 += x;
        out.a1 += z * x;
    }
    const Complex scale = 1.0 / (Complex(0.0, 1.0) * static_cast<double>(contour.quad_points));
    out.a0 *= scale;
    out.a1 *= scale;
    return out;
}

int numerical_rank(const Eigen::VectorXd &singular_values, double eps) {
    int rank = 0;
    while (rank < singular_values.size() && singular_values(rank) > eps) ++rank;
    return rank;
}

RankReveal rank_reveal(const Eigen::MatrixXcd &a0, double eps) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RankReveal r;
    r.singular_values = svd.singularValues();
    r.rank = numerical_rank(r.singular_values, eps);
    if (r.rank > 0 && r.rank == a0.cols())
        throw std::runtime_error("rank test: all " + std::to_string(a0.cols()) +
                                 " singular values exceed the tolerance; increase the number of probe columns");
    r.v0 = svd.matrixU().leftCols(r.rank);
    r.w0 = svd.matrixV().leftCols(r.rank);
    r.sigma0 = r.singular_values.head(r.rank);
    return r;
}

Eigen::MatrixXcd probe_matrix(Eigen::Index m, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXcd v(m, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < m; ++r) {
            const double re = dist(rng);
            const double im = dist(rng);
            v(r, c) = {re, im};
        }
    return v;
}

std::vector<int> cluster_ids(const std::vector<Complex> &values, double tol) {
    std::vector<int> ids(values.size(), 0);
    int id = 0;
    for (std::size_t n = 1; n < values.size(); ++n) {
        const double scale = std::max(1.0, std::abs(values[n]));
        if (std::abs(values[n] - values[n - 1]) > tol * scale) ++id;
        ids[n] = id;
    }
    return ids;
}

std::vector<EigenPair> BeynResult::accepted(const BeynConfig &cfg) const {
    std::vector<EigenPair> out;
    for (const auto &p : pairs)
        if (p.accepted(cfg)) out.push_back(p);
    return out;
}

BeynResult solve(const MatrixFunction &matrix_fn, Eigen::Index m, const ContourConfig &contour,
                 const BeynConfig &cfg) {
    contour.validate();
    cfg.validate();
    const Eigen::MatrixXcd probe = probe_matrix(m, cfg.probe_cols, cfg.seed);
    const Moments mom = moments(matrix_fn, m, contour, probe);
    const RankReveal rr = rank_reveal(mom.a0, cfg.rank_tol);

    BeynResult result;
    result.rank = rr.rank;
    result.singular_values = rr.singular_values;
    if (rr.rank == 0) return result;

    const Eigen::MatrixXcd b =
        rr.v0.adjoint() * mom.a1 * rr.w0 * rr.sigma0.cwiseInverse().asDiagonal();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(b);
    if (eig.info() != Eigen::Success) throw std::runtime_error("beyn: reduced eigenproblem failed");

    for (int n = 0; n < rr.rank; ++n) {
        EigenPair p;
        p.k = eig.eigenvalues()(n);
        p.u = rr.v0 * eig.eigenvectors().col(n);
        p.u.normalize();
        p.inside_contour = contour.contains(p.k);
        p.small_imag = std::abs(p.k.imag()) <= cfg.imag_tol;
        result.pairs.push_back(std::move(p));
    }
    std::sort(result.pairs.begin(), result.pairs.end(), [](const EigenPair &a, const EigenPair &b) {
        return a.k.real() < b.k.real() || (a.k.real() == b.k.real() && a.k.imag() < b.k.imag());
    });
    for (auto &p : result.pairs) {
        if (p.k == Complex(0.0, 0.0) || !std::isfinite(p.k.real()) || !std::isfinite(p.k.imag())) {
            p.residual = std::numeric_limits<double>::infinity();
            continue;
        }
        try {
            p.residual = (matrix_fn(p.k) * p.u).norm();
        } catch (const std::exception &e) {
            p.residual = std::numeric_limits<double>::infinity();
            result.warnings.push_back(std::string("residual evaluation failed: ") + e.what());
        }
        if (std::abs(std::abs(p.k - contour.mu) - contour.radius) < 1e-3) {
            std::ostringstream msg;
            msg << "eigenvalue " << p.k << " lies within 1e-3 of the contour; accuracy may be reduced";
            result.warnings.push_back(msg.str());
        }
    }
    std::vector<Complex> ks;
    for (const auto &p : result.pairs) ks.push_back(p.k);
    const auto ids = cluster_ids(ks, cfg.cluster_tol);
    for (std::size_t n = 0; n < ids.size(); ++n) {
        result.pairs[n].cluster = ids[n];
        result.pairs[n].cluster_size = static_cast<int>(std::count(ids.begin(), ids.end(), ids[n]));
    }
    return result;
}

}  // namespace hotspots
