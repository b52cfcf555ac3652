#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hotspots/geometry.hpp"
#include "hotspots/quadrature.hpp"
#include "hotspots/special_functions.hpp"

namespace hotspots {

struct PhaseNormalized {
    Eigen::VectorXd values;
    double theta = 0.0;
    double imag_residual = 0.0;  ///< ||Im(e^{-i theta} u)||_2
};

/// Real representative Re(e^{-i theta} u) with theta = arg(sum u_j^2) / 2.
/// Throws std::runtime_error when sum u_j^2 vanishes (a genuinely complex
/// vector, e.g. an unsplit multiplicity cluster).
PhaseNormalized phase_normalize(const Eigen::VectorXcd &u);

/// Real orthonormal basis of the span of a cluster of eigenvectors. A single
/// vector goes through phase_normalize; for r > 1 vectors the basis is the
/// leading r left singular vectors of [Re U, Im U], and imag_residual is the
/// first discarded singular value relative to the largest.
std::vector<PhaseNormalized> real_basis(const std::vector<Eigen::VectorXcd> &cluster);

/// Interior field u(x) = -sum_j sum_q rho_{j,q} int K_k(x, m_j(s)) L_q(s) ds.
class FieldEvaluator {
public:
    FieldEvaluator(const DomainSpec &domain, const Mesh &mesh, double k, Eigen::VectorXd density,
                   QuadratureConfig cfg = {});

    /// Throws std::domain_error unless x is inside with boundary distance above `guard`.
    double value(Point2 x, double guard = 1e-6) const;
    /// No membership check; x must not lie on the boundary.
    double value_unchecked(Point2 x) const;
    /// Trace of the field at parameter s of face j (the interpolated density).
    double boundary_value(std::size_t j, double s) const;
    /// Continuous trace: boundary_value between the outer nodes of a face; between
    /// the nodes either side of a vertex, the cubic through the two nearest nodes
    /// of each adjacent face in arc length.
    double boundary_trace(std::size_t j, double s) const;

    const DomainSpec &domain() const { return domain_; }
    const Mesh &mesh() const { return mesh_; }
    double k() const { return k_; }
    const Eigen::VectorXd &density() const { return density_; }

private:
    DomainSpec domain_;
    Mesh mesh_;
    double k_;
    Eigen::VectorXd density_;
    QuadratureConfig cfg_;
};

double eval_interior(const DomainSpec &domain, const Mesh &mesh, double k, const Eigen::VectorXd &density, Point2 x,
                     const QuadratureConfig &cfg = {});

struct FieldGrid {
    std::string domain;
    double kappa = 1.0;
    int resolution = 100;
    double k = 0.0;
    /// Row-major over (y, x): index = iy * resolution + ix. Masked entries hold NaN.
    std::vector<double> values;
    std::vector<unsigned char> mask;

    double coordinate(int i) const;
    Point2 point(int ix, int iy) const { return {coordinate(ix), coordinate(iy)}; }
    double mask_fraction() const;
    bool inside(int ix, int iy) const { return mask[static_cast<std::size_t>(iy * resolution + ix)] != 0; }
    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy * resolution + ix)]; }

    void write_csv(const std::string &path) const;
    std::string to_json() const;
};

/// Samples the field on resolution^2 equispaced points of [-kappa, kappa]^2;
/// points within half a grid cell of the boundary are masked.
FieldGrid sample_grid(const FieldEvaluator &field, double kappa, int resolution = 100);

struct NelderMeadResult {
    Point2 x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Downhill simplex in the plane (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Stops when the simplex diameter and the value spread are both
/// below tol; otherwise returns the best vertex after max_iter iterations
/// with converged = false. Throws std::invalid_argument if the objective is
/// not finite at `start`.
NelderMeadResult nelder_mead(const std::function<double(Point2)> &objective, Point2 start, double tol = 1e-10,
                             int max_iter = 400);

struct ExtremumReport {
    enum class Kind { max, min };
    Kind kind = Kind::max;
    Point2 location;
    double value = 0.0;
    double boundary_value = 0.0;
    double aleph = 0.0;
    bool interior = false;
    bool converged = false;
};

struct HotspotOptions {
    int boundary_samples = 2000;  ///< per curve
    double guard = 1e-3;          ///< search is confined to points this far from the boundary
    double interior_margin = 1e-2;
    double tol = 1e-10;
    int max_iter = 400;
};

struct HotspotReport {
    ExtremumReport max;
    ExtremumReport min;
};

/// Interior extrema by Nelder-Mead from the given starts, boundary extrema
/// from the densely sampled density, and their ratios. Throws
/// std::runtime_error when an interior and a boundary extremum differ in sign.
HotspotReport hotspot_report(const FieldEvaluator &field, const std::vector<Point2> &starts_max,
                             const std::vector<Point2> &starts_min, const HotspotOptions &options = {});

/// Largest and smallest values of the continuous boundary trace over
/// boundary_samples points per curve.
std::pair<double, double> boundary_extrema(const FieldEvaluator &field, int boundary_samples);

}  // namespace hotspots
