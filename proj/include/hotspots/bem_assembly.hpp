#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

#include "hotspots/geometry.hpp"
#include "hotspots/quadrature.hpp"
#include "hotspots/special_functions.hpp"

namespace hotspots {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Lagrange basis on [0, 1] with nodes alpha, 1/2, 1 - alpha.
std::array<double, 3> collocation_basis(double alpha, double s);

/// Double-layer integrand i k H1(k r) / (4 r) (a n1 + b n2) with
/// (a, b) = target - m_j(s) and (n1, n2) the rotated face derivative.
/// Throws DomainError when the target coincides with m_j(s) or k = 0.
Complex dlp_kernel(Complex k, Point2 target, const Mesh &mesh, std::size_t j, double s);

/// k = 0 counterpart (x - y) . n / (2 pi r^2).
double laplace_kernel(Point2 target, const Mesh &mesh, std::size_t j, double s);

/// Quadrature depth used for faces adjacent to the target's face.
inline constexpr int kNearFaceDepth = 16;

/// Integrals of the kernel against the three basis functions over face j
/// for an arbitrary target. `split` in (0, 1) splits the parameter interval
/// (used when the target lies on the face). Throws QuadratureError when the
/// adaptive rule does not converge.
std::array<Complex, 3> integrate_face(Complex k, Point2 target, const Mesh &mesh, std::size_t j,
                                      const QuadratureConfig &cfg, double split = -1.0);

/// Entry a_{(i,l),(j,q)}: collocation row 3 i + l against face j, basis q.
/// Entries with j = i and q = l are singular and not defined here.
Complex integrate_face(Complex k, std::size_t i, int l, std::size_t j, int q, const Mesh &mesh,
                       const QuadratureConfig &cfg);

/// Diagonal entries of M(k) for every row after singularity subtraction:
/// -(sum of all Laplace entries of the row except the diagonal one).
/// Independent of k.
Eigen::VectorXd singular_diagonal(const Mesh &mesh, const QuadratureConfig &cfg = {});

/// Dense Laplace matrix A(0) with the subtracted diagonal; its rows sum to -1/2.
Eigen::MatrixXd assemble_laplace(const Mesh &mesh, const QuadratureConfig &cfg = {});

/// M(k) = I/2 + A(k) with cached k-independent data.
class BemOperator {
public:
    explicit BemOperator(Mesh mesh, QuadratureConfig cfg = {});

    const Mesh &mesh() const { return mesh_; }
    const QuadratureConfig &config() const { return cfg_; }
    std::size_t size() const { return mesh_.size(); }
    const Eigen::VectorXd &diagonal() const { return diagonal_; }

    ComplexMatrix assemble(Complex k) const;
    ComplexMatrix operator()(Complex k) const { return assemble(k); }

private:
    struct NodeCache;
    Mesh mesh_;
    QuadratureConfig cfg_;
    Eigen::VectorXd diagonal_;
    std::shared_ptr<const NodeCache> nodes_;
};

ComplexMatrix assemble(const Mesh &mesh, Complex k, const QuadratureConfig &cfg = {});

/// Binary dump: uint64 dimension, then row-major interleaved (re, im) doubles.
void write_matrix_binary(const std::string &path, const ComplexMatrix &m);
ComplexMatrix read_matrix_binary(const std::string &path);

}  // namespace hotspots
