#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hotspots/geometry.hpp"

namespace hotspots {

using ParamMap = std::map<std::string, double>;

struct ParamSchema {
    std::string name;
    std::optional<double> default_value;  ///< empty: required
    std::string description;
};

/// Solver and plotting settings that reproduce the published run of a domain.
struct RunDefaults {
    double mu = 2.0;
    double radius = 0.5;
    int ell = 10;
    double kappa = 1.1;
    int faces_per_curve = 80;
    /// Published first non-trivial eigenvalue (0 when none is known).
    double published_k = 0.0;
    std::vector<Point2> starts_max;
    std::vector<Point2> starts_min;
};

struct DomainInfo {
    std::string name;
    std::string description;
    std::vector<ParamSchema> params;
    /// Parameter values bound by this catalog entry (e.g. the bump height of a C4 variant).
    ParamMap fixed;
    RunDefaults defaults;
};

/// All registered domains.
const std::vector<DomainInfo> &domain_catalog();
/// Throws std::invalid_argument for unknown names.
const DomainInfo &domain_info(const std::string &name);

/// Builds a registered domain. Missing required parameters and unknown
/// parameter names throw std::invalid_argument.
DomainSpec domain_registry(const std::string &name, const ParamMap &params = {});

/// Parses a domain-spec JSON document: either {"name": ..., "params": {...}}
/// for a registered domain or {"pieces": [...], "holes": [[...], ...]} for a
/// custom one.
DomainSpec domain_from_json(const std::string &text);
DomainSpec domain_from_file(const std::string &path);

namespace shapes {

ParametricPiece radial_piece(std::function<double(double)> rho, std::function<double(double)> rho_prime, double t1,
                             double t2);

/// Pieces of the teether's upper boundary strip between x = 4 and x = -4
/// (unscaled coordinates). `outer` runs from (4, 3) to (-4, 3), `inner` from
/// (4, 5/2) to (-4, 5/2).
struct TeetherStrip {
    std::vector<ParametricPiece> outer;
    std::vector<ParametricPiece> inner;
};

TeetherStrip teether_c1_strip();
TeetherStrip teether_straight_strip();
TeetherStrip teether_c4_strip(double delta);

/// Assembles a teether: the upper strip, the two end caps, and the lower strip
/// (given in the upper frame and rotated by pi), scaled by 1/4. The inner
/// curve is returned clockwise.
std::pair<BoundaryCurve, BoundaryCurve> teether(const TeetherStrip &upper, const TeetherStrip &lower);

BoundaryCurve circle(Point2 center, double radius);
BoundaryCurve equipotential_d(int which);

}  // namespace shapes

}  // namespace hotspots
