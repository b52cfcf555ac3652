#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hotspots/special_functions.hpp"

namespace hotspots {

using MatrixFunction = std::function<Eigen::MatrixXcd(Complex)>;

/// Circle mu + R e^{it} sampled at t_j = 2 pi j / N.
struct ContourConfig {
    double mu = 2.0;
    double radius = 0.5;
    int quad_points = 24;

    /// Requires mu > R > 0 and an even N >= 8.
    void validate() const;
    Complex point(int j) const;
    Complex derivative(int j) const;
    bool contains(Complex k) const { return std::abs(k - mu) < radius; }
};

struct BeynConfig {
    int probe_cols = 10;
    double rank_tol = 1e-4;
    std::uint64_t seed = 42;
    double residual_tol = 1e-6;
    double imag_tol = 1e-6;
    /// Relative distance under which eigenvalues form one cluster.
    double cluster_tol = 1e-6;

    void validate() const;
};

struct EigenPair {
    Complex k;
    Eigen::VectorXcd u;  ///< unit 2-norm
    double residual = 0.0;
    bool inside_contour = false;
    bool small_imag = false;
    int cluster = 0;       ///< cluster id, numbered in order of Re k
    int cluster_size = 1;  ///< multiplicity of the cluster

    /// Inside the contour with a small residual. The imaginary-part test is
    /// reported separately through small_imag.
    bool accepted(const BeynConfig &cfg) const { return inside_contour && residual <= cfg.residual_tol; }
};

struct Moments {
    Eigen::MatrixXcd a0;
    Eigen::MatrixXcd a1;
};

/// Trapezoidal contour moments (1/(iN)) sum M^{-1}(phi_j) V phi'_j, times
/// phi_j for a1; one LU per node, nodes processed in index order. Throws
/// std::runtime_error if M is numerically singular at a node.
Moments moments(const MatrixFunction &matrix_fn, Eigen::Index m, const ContourConfig &contour,
                const Eigen::MatrixXcd &probe);

struct RankReveal {
    Eigen::MatrixXcd v0;
    Eigen::VectorXd sigma0;
    Eigen::MatrixXcd w0;
    Eigen::VectorXd singular_values;  ///< all singular values of the input
    int rank = 0;
};

/// Truncated SVD keeping singular values above eps. rank = 0 is a valid
/// (empty) result; rank equal to the column count throws std::runtime_error.
RankReveal rank_reveal(const Eigen::MatrixXcd &a0, double eps);

/// Same truncation applied to a given list of singular values.
int numerical_rank(const Eigen::VectorXd &singular_values, double eps);

/// Uniform entries in [-1, 1] + i [-1, 1] from a seeded generator.
Eigen::MatrixXcd probe_matrix(Eigen::Index m, int cols, std::uint64_t seed);

struct BeynResult {
    std::vector<EigenPair> pairs;  ///< sorted by Re k
    int rank = 0;
    Eigen::VectorXd singular_values;
    std::vector<std::string> warnings;

    std::vector<EigenPair> accepted(const BeynConfig &cfg) const;
};

/// Beyn's contour-integral method for M(k) u = 0 inside the contour.
BeynResult solve(const MatrixFunction &matrix_fn, Eigen::Index m, const ContourConfig &contour,
                 const BeynConfig &cfg = {});

/// Groups values whose distance is within tol * max(1, |k|). Returns cluster
/// ids (consecutive in the given order, which must be sorted by Re k).
std::vector<int> cluster_ids(const std::vector<Complex> &values, double tol);

}  // namespace hotspots
