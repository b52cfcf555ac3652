#include "hotspots/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hotspots {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

std::vector<double> eoc(const std::vector<double> &errors) {
    for (double e : errors)
        if (!(e > 0.0)) throw std::invalid_argument("eoc: errors must be positive");
    std::vector<double> out;
    for (std::size_t n = 1; n < errors.size(); ++n) out.push_back(std::log2(errors[n - 1] / errors[n]));
    return out;
}

const std::vector<ReferenceValue> &reference_table() {
    static const std::vector<ReferenceValue> table{
        {"circle_k1", 1.841183781340659, "1.841183781340659", "first root of J1'"},
        {"circle_k2", 3.054236928227140, "3.054236928227140", "first root of J2'"},
        {"circle_k3", 3.831705970207512, "3.831705970207512", "first root of J0'"},
        {"annulus_k1", 0.822252688623884, "0.822252688623884", "annulus R1 = 1/2, R2 = 2, n = 1"},
        {"annulus_k2", 1.504647782189479, "1.504647782189479", "annulus R1 = 1/2, R2 = 2, n = 2"},
        {"square", std::numbers::pi, "pi", "unit square"},
        {"equilateral_triangle", 4.0 * std::numbers::pi / 3.0, "4pi/3", "unit-side equilateral triangle"},
        {"lshape", 2.0 * std::sqrt(1.475621845), "2sqrt(1.475621845)", "L-shaped domain"},
    };
    return table;
}

const ReferenceValue &reference_value(const std::string &name) {
    for (const auto &r : reference_table())
        if (r.name == name) return r;
    throw std::invalid_argument("unknown reference value '" + name + "'");
}

std::optional<double> published_eigenvalue(const std::string &domain, const ParamMap &params) {
    static const std::map<std::string, std::map<double, double>> by_radius{
        {"teether_C1R", {{0.1, 0.372580}, {0.15, 0.374917}, {0.2, 0.378131}}},
        {"teether_C1R_tilde", {{0.1, 0.374552}, {0.15, 0.379670}, {0.2, 0.387461}}},
        {"teether_C1R_mir", {{0.1, 0.376406}, {0.15, 0.383781}, {0.2, 0.394522}}},
        {"teether_C1R_tilde_mir", {{0.1, 0.378360}, {0.15, 0.388438}, {0.2, 0.403504}}},
    };
    if (auto it = by_radius.find(domain); it != by_radius.end()) {
        const auto r = params.find("R");
        if (r == params.end()) return std::nullopt;
        for (const auto &[radius, k] : it->second)
            if (std::abs(radius - r->second) < 1e-12) return k;
        return std::nullopt;
    }
    if (domain == "deformed_ellipse") {
        const auto e = params.find("eps");
        if (e == params.end()) return std::nullopt;
        const std::map<double, double> ks{{0.1, 1.849064}, {0.2, 1.819478}, {0.3, 1.770906}};
        for (const auto &[eps, k] : ks)
            if (std::abs(eps - e->second) < 1e-12) return k;
        return std::nullopt;
    }
    if (domain == "flower") {
        const auto w = params.find("omega");
        if (w == params.end()) return std::nullopt;
        if (w->second == 4.0) return 1.592787;
        if (w->second == 8.0) return 1.717098;
        return std::nullopt;
    }
    if (!params.empty()) {
        // Registry defaults only.
        const auto &info = domain_info(domain);
        for (const auto &[key, value] : params) {
            const auto s = std::find_if(info.params.begin(), info.params.end(),
                                        [&](const ParamSchema &p) { return p.name == key; });
            if (s == info.params.end() || !s->default_value || *s->default_value != value) return std::nullopt;
        }
    }
    try {
        const double k = domain_info(domain).defaults.published_k;
        if (k > 0.0) return k;
    } catch (const std::invalid_argument &) {
    }
    return std::nullopt;
}

DomainSpec DomainInput::build() const {
    if (!spec_path.empty()) return domain_from_file(spec_path);
    if (name.empty()) throw std::invalid_argument("no domain given");
    return domain_registry(name, params);
}

const DomainInfo *DomainInput::info() const {
    if (!spec_path.empty()) return nullptr;
    return &domain_info(name);
}

std::vector<int> faces_per_curve(const DomainSpec &domain, int faces, const std::vector<int> &per_curve) {
    if (!per_curve.empty()) {
        if (per_curve.size() != domain.curve_count())
            throw std::invalid_argument("expected " + std::to_string(domain.curve_count()) +
                                        " per-curve face counts, got " + std::to_string(per_curve.size()));
        return per_curve;
    }
    if (faces < 3) throw std::invalid_argument("need at least 3 faces per curve");
    return std::vector<int>(domain.curve_count(), faces);
}

SolveOutcome run_solve(const DomainSpec &domain, const std::vector<int> &faces, const SolverParams &params) {
    const auto t0 = Clock::now();
    Mesh mesh = build_mesh(domain, faces, params.alpha);
    BemOperator op(mesh, params.quadrature);
    SolveOutcome out{std::move(mesh), {}, {}};
    double assemble = 0.0;
    auto fn = [&](Complex k) {
        const auto ta = Clock::now();
        ComplexMatrix m = op.assemble(k);
        assemble += seconds_since(ta);
        return m;
    };
    const double setup = seconds_since(t0);
    const auto t1 = Clock::now();
    out.result = solve(fn, static_cast<Eigen::Index>(op.size()), params.contour, params.beyn);
    out.timings.assemble_s = setup + assemble;
    out.timings.solve_s = std::max(0.0, seconds_since(t1) - assemble);
    return out;
}

std::optional<MatchedEigenvalue> nearest_eigenvalue(const BeynResult &result, const BeynConfig &cfg, double target) {
    std::map<int, std::pair<Complex, int>> clusters;
    for (const auto &p : result.pairs) {
        if (!p.accepted(cfg)) continue;
        auto &c = clusters[p.cluster];
        c.first += p.k;
        c.second += 1;
    }
    std::optional<MatchedEigenvalue> best;
    for (const auto &[id, c] : clusters) {
        const Complex mean = c.first / static_cast<double>(c.second);
        if (!best || std::abs(mean - target) < std::abs(best->k - target)) best = MatchedEigenvalue{mean, c.second};
    }
    return best;
}

std::vector<ConvergenceRow> run_convergence(const DomainSpec &domain, const std::vector<int> &faces,
                                            const SolverParams &params, double reference) {
    if (faces.empty()) throw std::invalid_argument("run_convergence: empty face list");
    for (std::size_t n = 1; n < faces.size(); ++n)
        if (faces[n] != 2 * faces[n - 1])
            throw std::invalid_argument("run_convergence: face counts must double from row to row");
    std::vector<ConvergenceRow> rows;
    for (int nf : faces) {
        const auto outcome = run_solve(domain, faces_per_curve(domain, nf), params);
        const auto match = nearest_eigenvalue(outcome.result, params.beyn, reference);
        if (!match)
            throw std::runtime_error("run_convergence: no accepted eigenvalue inside the contour at n_f = " +
                                     std::to_string(nf));
        ConvergenceRow row;
        row.n_f = nf;
        row.n_c = static_cast<int>(outcome.mesh.size());
        row.k = match->k;
        row.multiplicity = match->multiplicity;
        row.error = std::abs(match->k - reference);
        rows.push_back(row);
    }
    std::vector<double> errors;
    for (const auto &r : rows) errors.push_back(r.error);
    const auto rates = eoc(errors);
    for (std::size_t n = 0; n < rates.size(); ++n) rows[n + 1].eoc = rates[n];
    return rows;
}

HotspotRequest with_catalog_defaults(HotspotRequest request) {
    const DomainInfo *info = request.domain.info();
    if (!info) return request;
    const RunDefaults &d = info->defaults;
    if (request.faces == 0 && request.faces_per_curve.empty()) request.faces = d.faces_per_curve;
    if (request.starts_max.empty()) request.starts_max = d.starts_max;
    if (request.starts_min.empty()) request.starts_min = d.starts_min;
    if (!request.target_k) {
        if (auto k = published_eigenvalue(request.domain.name, request.domain.params)) request.target_k = *k;
    }
    return request;
}

HotspotRequest catalog_request(const std::string &name, const ParamMap &params) {
    HotspotRequest request;
    request.domain.name = name;
    request.domain.params = params;
    const RunDefaults &d = domain_info(name).defaults;
    request.params.contour.mu = d.mu;
    request.params.contour.radius = d.radius;
    request.params.beyn.probe_cols = d.ell;
    request.kappa = d.kappa;
    return with_catalog_defaults(request);
}

std::pair<Point2, Point2> grid_extrema_starts(const FieldEvaluator &field, double kappa, int resolution) {
    const FieldGrid grid = sample_grid(field, kappa, resolution);
    std::optional<std::size_t> hi, lo;
    for (std::size_t n = 0; n < grid.values.size(); ++n) {
        if (!grid.mask[n]) continue;
        if (!hi || grid.values[n] > grid.values[*hi]) hi = n;
        if (!lo || grid.values[n] < grid.values[*lo]) lo = n;
    }
    if (!hi) throw std::runtime_error("grid_extrema_starts: no grid point inside the domain");
    const int r = grid.resolution;
    return {grid.point(static_cast<int>(*hi % r), static_cast<int>(*hi / r)),
            grid.point(static_cast<int>(*lo % r), static_cast<int>(*lo / r))};
}

HotspotRun run_hotspots(const HotspotRequest &request) {
    const DomainSpec domain = request.domain.build();
    const int faces = request.faces > 0 ? request.faces : 0;
    HotspotRun run{domain.name(), run_solve(domain, faces_per_curve(domain, faces, request.faces_per_curve),
                                            request.params),
                   {}, {}, std::nullopt, {}};
    run.timings = run.solve.timings;

    const auto accepted = run.solve.accepted(request.params.beyn);
    if (accepted.empty()) throw std::runtime_error("run_hotspots: no accepted eigenvalue inside the contour");
    const double target = request.target_k ? *request.target_k : accepted.front().k.real();
    const auto match = nearest_eigenvalue(run.solve.result, request.params.beyn, target);
    run.eigenvalue = *match;

    int cluster = -1;
    double best = std::numeric_limits<double>::infinity();
    for (const auto &p : accepted)
        if (std::abs(p.k - run.eigenvalue.k) < best) {
            best = std::abs(p.k - run.eigenvalue.k);
            cluster = p.cluster;
        }

    const auto t0 = Clock::now();
    std::vector<EigenPair> members;
    std::vector<Eigen::VectorXcd> vectors;
    for (const auto &p : accepted)
        if (p.cluster == cluster) {
            members.push_back(p);
            vectors.push_back(p.u);
        }
    const std::vector<PhaseNormalized> basis = real_basis(vectors);
    for (std::size_t n = 0; n < members.size(); ++n) {
        const EigenPair &p = members[n];
        const PhaseNormalized &density = basis[n];
        FieldEvaluator field(domain, run.solve.mesh, p.k.real(), density.values, request.params.quadrature);
        std::vector<Point2> smax = request.starts_max, smin = request.starts_min;
        if (smax.empty() || smin.empty()) {
            const auto [hi, lo] = grid_extrema_starts(field, request.kappa);
            if (smax.empty()) smax = {hi};
            if (smin.empty()) smin = {lo};
        } else if (field.value_unchecked(smax.front()) < field.value_unchecked(smin.front())) {
            // The eigenvector sign is arbitrary; orient it so the max start sits on the positive lobe.
            field = FieldEvaluator(domain, run.solve.mesh, p.k.real(), -density.values, request.params.quadrature);
        }
        HotspotEigenvector v{p, density.imag_residual, hotspot_report(field, smax, smin, request.options)};
        if (!run.grid && request.resolution > 0) run.grid = sample_grid(field, request.kappa, request.resolution);
        run.vectors.push_back(std::move(v));
    }
    run.timings.field_s = seconds_since(t0);
    return run;
}

std::string list_domains() {
    std::ostringstream out;
    for (const auto &info : domain_catalog()) {
        out << info.name << "  " << info.description << '\n';
        for (const auto &p : info.params) {
            out << "    --param " << p.name << '=';
            if (p.default_value)
                out << *p.default_value;
            else
                out << "<required>";
            out << "  " << p.description << '\n';
        }
        const auto &d = info.defaults;
        out << "    defaults: nf=" << d.faces_per_curve << " mu=" << d.mu << " R=" << d.radius << " ell=" << d.ell
            << " kappa=" << d.kappa;
        if (d.published_k > 0.0) out << " published_k=" << d.published_k;
        out << '\n';
    }
    return out.str();
}

}  // namespace hotspots
