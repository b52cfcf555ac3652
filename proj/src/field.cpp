#include "hotspots/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

#include "hotspots/bem_assembly.hpp"
#include "json.hpp"

namespace hotspots {

PhaseNormalized phase_normalize(const Eigen::VectorXcd &u) {
    const Complex s = (u.array() * u.array()).sum();
    const double scale = u.squaredNorm();
    if (!(std::abs(s) > 1e-8 * scale))
        throw std::runtime_error(
            "phase_normalize: sum of squares vanishes; the vector is genuinely complex (split the cluster)");
    PhaseNormalized out;
    out.theta = 0.5 * std::arg(s);
    const Eigen::VectorXcd rotated = u * std::exp(Complex(0.0, -out.theta));
    out.values = rotated.real();
    out.imag_residual = rotated.imag().norm();
    return out;
}

std::vector<PhaseNormalized> real_basis(const std::vector<Eigen::VectorXcd> &cluster) {
    if (cluster.empty()) throw std::invalid_argument("real_basis: empty cluster");
    if (cluster.size() == 1) return {phase_normalize(cluster.front())};
    const auto r = static_cast<Eigen::Index>(cluster.size());
    const Eigen::Index m = cluster.front().size();
    Eigen::MatrixXd parts(m, 2 * r);
    for (Eigen::Index c = 0; c < r; ++c) {
        if (cluster[static_cast<std::size_t>(c)].size() != m) throw std::invalid_argument("real_basis: size mismatch");
        parts.col(2 * c) = cluster[static_cast<std::size_t>(c)].real();
        parts.col(2 * c + 1) = cluster[static_cast<std::size_t>(c)].imag();
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(parts, Eigen::ComputeThinU);
    const Eigen::VectorXd &sigma = svd.singularValues();
    std::vector<PhaseNormalized> out(cluster.size());
    for (Eigen::Index c = 0; c < r; ++c) {
        auto &v = out[static_cast<std::size_t>(c)];
        v.values = svd.matrixU().col(c);
        v.imag_residual = sigma(r) / sigma(0);
    }
    return out;
}

FieldEvaluator::FieldEvaluator(const DomainSpec &domain, const Mesh &mesh, double k, Eigen::VectorXd density,
                               QuadratureConfig cfg)
    : domain_(domain), mesh_(mesh), k_(k), density_(std::move(density)), cfg_(cfg) {
    if (density_.size() != static_cast<Eigen::Index>(mesh_.size()))
        throw std::invalid_argument("field: density length does not match the mesh");
    if (!(k_ > 0.0)) throw std::invalid_argument("field: wavenumber must be positive");
    cfg_.validate();
    cfg_.max_depth = std::max(cfg_.max_depth, kNearFaceDepth);
}

double FieldEvaluator::value_unchecked(Point2 x) const {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < mesh_.face_count(); ++j) {
        const auto v = integrate_face(Complex(k_, 0.0), x, mesh_, j, cfg_);
        for (int q = 0; q < 3; ++q) sum += density_(static_cast<Eigen::Index>(3 * j + q)) * v[q];
    }
    return -sum.real();
}

double FieldEvaluator::value(Point2 x, double guard) const {
    if (!domain_.locate(x, guard).is_inside())
        throw std::domain_error("field: point (" + std::to_string(x.x) + ", " + std::to_string(x.y) +
                                ") is not strictly inside the domain");
    return value_unchecked(x);
}

double FieldEvaluator::boundary_value(std::size_t j, double s) const {
    const auto b = collocation_basis(mesh_.alpha, s);
    double v = 0.0;
    for (int q = 0; q < 3; ++q) v += density_(static_cast<Eigen::Index>(3 * j + q)) * b[q];
    return v;
}

namespace {

// Arc length of a face between parameters 0 and s (four-point Gauss-Legendre).
double arc_length(const Face &f, double s) {
    static constexpr double x[] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
    static constexpr double w[] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
    double sum = 0.0;
    for (int n = 0; n < 4; ++n) sum += w[n] * norm(f.derivative(0.5 * s * (x[n] + 1.0)));
    return 0.5 * s * sum;
}

double cubic_lagrange(const std::array<double, 4> &t, const std::array<double, 4> &v, double x) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        double l = 1.0;
        for (int m = 0; m < 4; ++m)
            if (m != i) l *= (x - t[m]) / (t[i] - t[m]);
        sum += l * v[i];
    }
    return sum;
}

}  // namespace

double FieldEvaluator::boundary_trace(std::size_t j, double s) const {
    const double a = mesh_.alpha;
    if (s >= a && s <= 1.0 - a) return boundary_value(j, s);
    const int face = static_cast<int>(j);
    std::size_t c = 0;
    while (mesh_.curve_offsets[c + 1] <= face) ++c;
    const int first = mesh_.curve_offsets[c], count = mesh_.curve_offsets[c + 1] - first;
    // Work at the vertex shared by faces `left` and `right`, arc length measured from it.
    std::size_t left = j, right = j;
    double x = 0.0;
    if (s < a) {
        left = static_cast<std::size_t>(first + (face - first + count - 1) % count);
        x = arc_length(mesh_.faces[j], s);
    } else {
        right = static_cast<std::size_t>(first + (face - first + 1) % count);
        x = arc_length(mesh_.faces[j], s) - arc_length(mesh_.faces[j], 1.0);
    }
    const Face &fl = mesh_.faces[left], &fr = mesh_.faces[right];
    const double len = arc_length(fl, 1.0);
    const std::array<double, 4> t{arc_length(fl, 0.5) - len, arc_length(fl, 1.0 - a) - len, arc_length(fr, a),
                                  arc_length(fr, 0.5)};
    const auto node = [&](std::size_t f, int q) { return density_(static_cast<Eigen::Index>(3 * f + q)); };
    return cubic_lagrange(t, {node(left, 1), node(left, 2), node(right, 0), node(right, 1)}, x);
}

double eval_interior(const DomainSpec &domain, const Mesh &mesh, double k, const Eigen::VectorXd &density, Point2 x,
                     const QuadratureConfig &cfg) {
    return FieldEvaluator(domain, mesh, k, density, cfg).value(x);
}

double FieldGrid::coordinate(int i) const {
    if (resolution == 1) return 0.0;
    return -kappa + 2.0 * kappa * i / (resolution - 1);
}

double FieldGrid::mask_fraction() const {
    if (mask.empty()) return 0.0;
    return static_cast<double>(std::count(mask.begin(), mask.end(), 1)) / static_cast<double>(mask.size());
}

void FieldGrid::write_csv(const std::string &path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.imbue(std::locale::classic());
    out.precision(17);
    out << "x,y,value,inside\n";
    for (int iy = 0; iy < resolution; ++iy)
        for (int ix = 0; ix < resolution; ++ix) {
            const Point2 p = point(ix, iy);
            out << p.x << ',' << p.y << ',';
            if (inside(ix, iy))
                out << at(ix, iy) << ",1\n";
            else
                out << ",0\n";
        }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string FieldGrid::to_json() const {
    nlohmann::json j;
    j["domain"] = domain;
    j["kappa"] = kappa;
    j["resolution"] = resolution;
    j["k"] = k;
    nlohmann::json values = nlohmann::json::array(), m = nlohmann::json::array();
    for (std::size_t n = 0; n < this->values.size(); ++n) {
        if (mask[n])
            values.push_back(this->values[n]);
        else
            values.push_back(nullptr);
        m.push_back(static_cast<int>(mask[n]));
    }
    j["values"] = std::move(values);
    j["mask"] = std::move(m);
    return j.dump();
}

FieldGrid sample_grid(const FieldEvaluator &field, double kappa, int resolution) {
    if (!(kappa > 0.0)) throw std::invalid_argument("sample_grid: kappa must be positive");
    if (resolution < 2) throw std::invalid_argument("sample_grid: resolution must be at least 2");
    FieldGrid grid;
    grid.domain = field.domain().name();
    grid.kappa = kappa;
    grid.resolution = resolution;
    grid.k = field.k();
    const std::size_t total = static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
    grid.values.assign(total, std::numeric_limits<double>::quiet_NaN());
    grid.mask.assign(total, 0);
    const double guard = kappa / (resolution - 1);  // half a cell
#pragma omp parallel for schedule(dynamic)
    for (long n = 0; n < static_cast<long>(total); ++n) {
        const int ix = static_cast<int>(n % resolution), iy = static_cast<int>(n / resolution);
        const Point2 p = grid.point(ix, iy);
        if (!field.domain().locate(p, guard).is_inside()) continue;
        grid.mask[static_cast<std::size_t>(n)] = 1;
        grid.values[static_cast<std::size_t>(n)] = field.value_unchecked(p);
    }
    return grid;
}

NelderMeadResult nelder_mead(const std::function<double(Point2)> &objective, Point2 start, double tol,
                             int max_iter) {
    if (!(tol > 0.0) || max_iter < 1) throw std::invalid_argument("nelder_mead: bad tolerance or iteration limit");
    struct Vertex {
        Point2 x;
        double f;
    };
    auto eval = [&](Point2 x) { return Vertex{x, objective(x)}; };
    std::array<Vertex, 3> s{eval(start), {}, {}};
    if (!std::isfinite(s[0].f)) throw std::invalid_argument("nelder_mead: objective is not finite at the start");
    const double dx = start.x != 0.0 ? 0.05 * start.x : 0.00025;
    const double dy = start.y != 0.0 ? 0.05 * start.y : 0.00025;
    s[1] = eval(start + Point2{dx, 0.0});
    s[2] = eval(start + Point2{0.0, dy});

    NelderMeadResult out;
    for (int it = 0;; ++it) {
        std::sort(s.begin(), s.end(), [](const Vertex &a, const Vertex &b) { return a.f < b.f; });
        const double diameter = std::max(distance(s[0].x, s[1].x), distance(s[0].x, s[2].x));
        const double spread = s[2].f - s[0].f;
        out.iterations = it;
        if (diameter < tol && spread < tol) {
            out.converged = true;
            break;
        }
        if (it >= max_iter) break;

        const Point2 c = 0.5 * (s[0].x + s[1].x);
        const Vertex r = eval(c + (c - s[2].x));
        if (r.f < s[0].f) {
            const Vertex e = eval(c + 2.0 * (c - s[2].x));
            s[2] = e.f < r.f ? e : r;
            continue;
        }
        if (r.f < s[1].f) {
            s[2] = r;
            continue;
        }
        if (r.f < s[2].f) {
            const Vertex oc = eval(c + 0.5 * (r.x - c));
            if (oc.f <= r.f) {
                s[2] = oc;
                continue;
            }
        } else {
            const Vertex ic = eval(c + 0.5 * (s[2].x - c));
            if (ic.f < s[2].f) {
                s[2] = ic;
                continue;
            }
        }
        for (int v = 1; v < 3; ++v) s[v] = eval(s[0].x + 0.5 * (s[v].x - s[0].x));
    }
    out.x = s[0].x;
    out.value = s[0].f;
    return out;
}

std::pair<double, double> boundary_extrema(const FieldEvaluator &field, int boundary_samples) {
    const Mesh &mesh = field.mesh();
    double hi = -std::numeric_limits<double>::infinity(), lo = std::numeric_limits<double>::infinity();
    auto consider = [&](std::size_t j, double s) {
        const double v = field.boundary_trace(j, s);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    };
    for (std::size_t c = 0; c < mesh.curve_count(); ++c) {
        const int first = mesh.curve_offsets[c], last = mesh.curve_offsets[c + 1];
        const int per_face = std::max(1, (boundary_samples + (last - first) - 1) / (last - first));
        for (int j = first; j < last; ++j) {
            const auto face = static_cast<std::size_t>(j);
            for (int n = 0; n < per_face; ++n) consider(face, static_cast<double>(n) / per_face);
            // Between the outer collocation nodes the trace is the quadratic interpolant: add its stationary point.
            const double v0 = field.boundary_value(face, 0.0);
            const double vh = field.boundary_value(face, 0.5);
            const double v1 = field.boundary_value(face, 1.0);
            const double a = 2.0 * v0 - 4.0 * vh + 2.0 * v1;  // v(s) = a s^2 + b s + v0
            const double b = -3.0 * v0 + 4.0 * vh - v1;
            if (a != 0.0) {
                const double st = -b / (2.0 * a);
                if (st >= mesh.alpha && st <= 1.0 - mesh.alpha) consider(face, st);
            }
        }
    }
    return {hi, lo};
}

HotspotReport hotspot_report(const FieldEvaluator &field, const std::vector<Point2> &starts_max,
                             const std::vector<Point2> &starts_min, const HotspotOptions &options) {
    if (starts_max.empty() || starts_min.empty()) throw std::invalid_argument("hotspot_report: starts required");
    const auto [bmax, bmin] = boundary_extrema(field, options.boundary_samples);

    auto search = [&](const std::vector<Point2> &starts, double sign, ExtremumReport::Kind kind) {
        auto objective = [&](Point2 x) {
            if (!field.domain().locate(x, options.guard).is_inside()) return std::numeric_limits<double>::infinity();
            return -sign * field.value_unchecked(x);
        };
        ExtremumReport best;
        best.kind = kind;
        bool found = false;
        for (Point2 start : starts) {
            const NelderMeadResult r = nelder_mead(objective, start, options.tol, options.max_iter);
            const double u = -sign * r.value;
            if (!found || sign * u > sign * best.value) {
                best.location = r.x;
                best.value = u;
                best.converged = r.converged;
                found = true;
            }
        }
        best.interior = field.domain().locate(best.location, options.interior_margin).is_inside();
        return best;
    };

    HotspotReport rep;
    rep.max = search(starts_max, 1.0, ExtremumReport::Kind::max);
    rep.min = search(starts_min, -1.0, ExtremumReport::Kind::min);
    rep.max.boundary_value = bmax;
    rep.min.boundary_value = bmin;
    if (!(rep.max.value > 0.0 && bmax > 0.0))
        throw std::runtime_error("hotspot_report: interior and boundary maxima differ in sign");
    if (!(rep.min.value < 0.0 && bmin < 0.0))
        throw std::runtime_error("hotspot_report: interior and boundary minima differ in sign");
    rep.max.aleph = rep.max.value / bmax;
    rep.min.aleph = rep.min.value / bmin;
    return rep;
}

}  // namespace hotspots
