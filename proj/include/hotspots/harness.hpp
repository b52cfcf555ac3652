#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hotspots/bem_assembly.hpp"
#include "hotspots/beyn.hpp"
#include "hotspots/domains.hpp"
#include "hotspots/field.hpp"

namespace hotspots {

/// log2(E_n / E_{2n}) for consecutive entries. Throws on non-positive errors.
std::vector<double> eoc(const std::vector<double> &errors);

struct ReferenceValue {
    std::string name;
    double value = 0.0;
    std::string digits;  ///< the constant as published
    std::string source;
};

const std::vector<ReferenceValue> &reference_table();
/// Throws std::invalid_argument for unknown names.
const ReferenceValue &reference_value(const std::string &name);

/// Published first non-trivial eigenvalue of a registry domain, if known.
std::optional<double> published_eigenvalue(const std::string &domain, const ParamMap &params = {});

/// Where a domain comes from: a registry name with parameters or a spec file.
struct DomainInput {
    std::string name;
    ParamMap params;
    std::string spec_path;

    DomainSpec build() const;
    /// Catalog entry for registry domains; nullptr for spec files.
    const DomainInfo *info() const;
};

struct SolverParams {
    ContourConfig contour;
    BeynConfig beyn;
    QuadratureConfig quadrature;
    double alpha = kDefaultAlpha;
};

/// Equal counts per curve unless `per_curve` is given (one entry per curve).
std::vector<int> faces_per_curve(const DomainSpec &domain, int faces, const std::vector<int> &per_curve = {});

struct Timings {
    double assemble_s = 0.0;
    double solve_s = 0.0;
    double field_s = 0.0;
};

struct SolveOutcome {
    Mesh mesh;
    BeynResult result;
    Timings timings;

    std::vector<EigenPair> accepted(const BeynConfig &cfg) const { return result.accepted(cfg); }
};

SolveOutcome run_solve(const DomainSpec &domain, const std::vector<int> &faces, const SolverParams &params);

/// Accepted eigenvalue nearest to `target`, with clusters collapsed to their mean.
struct MatchedEigenvalue {
    Complex k;
    int multiplicity = 1;
};
std::optional<MatchedEigenvalue> nearest_eigenvalue(const BeynResult &result, const BeynConfig &cfg, double target);

struct ConvergenceRow {
    int n_f = 0;  ///< faces per curve
    int n_c = 0;  ///< collocation nodes over all curves
    Complex k;
    int multiplicity = 1;
    double error = 0.0;  ///< |k - reference|
    std::optional<double> eoc;
};

/// One Beyn solve per entry of `faces` (faces per curve, strictly doubling).
/// Throws std::runtime_error if no accepted eigenvalue is found.
std::vector<ConvergenceRow> run_convergence(const DomainSpec &domain, const std::vector<int> &faces,
                                            const SolverParams &params, double reference);

struct HotspotRequest {
    DomainInput domain;
    int faces = 0;  ///< per curve; 0 selects the catalog default
    std::vector<int> faces_per_curve;
    SolverParams params;
    double kappa = 1.1;
    int resolution = 100;  ///< 0 skips the grid
    std::vector<Point2> starts_max;
    std::vector<Point2> starts_min;
    /// Eigenvalue to analyse; empty selects the smallest accepted one.
    std::optional<double> target_k;
    HotspotOptions options;
};

struct HotspotEigenvector {
    EigenPair pair;
    double imag_residual = 0.0;
    HotspotReport report;
};

struct HotspotRun {
    std::string domain;
    SolveOutcome solve;
    MatchedEigenvalue eigenvalue;
    std::vector<HotspotEigenvector> vectors;  ///< one per eigenvector of the cluster
    std::optional<FieldGrid> grid;            ///< of the first eigenvector
    Timings timings;
};

/// Fills unset fields of a request (faces, starts, target eigenvalue) from the catalog.
HotspotRequest with_catalog_defaults(HotspotRequest request);

/// Request for a registry domain with every catalog default applied, including
/// the contour, probe count and window.
HotspotRequest catalog_request(const std::string &name, const ParamMap &params = {});

HotspotRun run_hotspots(const HotspotRequest &request);

/// Starts from the extrema of a coarse grid when none are given.
std::pair<Point2, Point2> grid_extrema_starts(const FieldEvaluator &field, double kappa, int resolution = 41);

/// Human-readable registry listing (names, parameters, defaults).
std::string list_domains();

}  // namespace hotspots
