#include "hotspots/bem_assembly.hpp"

#include <cstdint>
#include <fstream>
#include <numbers>

namespace hotspots {

namespace {

constexpr double inv_two_pi = 0.5 / std::numbers::pi;

struct FacePoint {
    Point2 y;
    Point2 n;  // (m'_2, -m'_1): outward for the curve's orientation, Jacobian included
    std::array<double, 3> basis;
};

FacePoint face_point(const Mesh &mesh, std::size_t j, double s) {
    const Face &f = mesh.faces[j];
    const Point2 d = f.derivative(s);
    return {f.map(s), {d.y, -d.x}, collocation_basis(mesh.alpha, s)};
}

// Kernel limit at r -> 0 on the face itself: -cross(m', m'') / (4 pi |m'|^2).
double coincident_limit(const Mesh &mesh, std::size_t j, double s) {
    const Face &f = mesh.faces[j];
    const Point2 d = f.derivative(s);
    return -cross(d, f.second_derivative()) / (4.0 * std::numbers::pi * dot(d, d));
}

Complex helmholtz_value(Complex k, Point2 x, const FacePoint &p) {
    const Point2 diff = x - p.y;
    const double r = norm(diff);
    const double proj = dot(diff, p.n);
    return Complex(0.0, 0.25) * k * special::hankel1_1(k * r) * (proj / r);
}

double laplace_value(Point2 x, const FacePoint &p) {
    const Point2 diff = x - p.y;
    return inv_two_pi * dot(diff, p.n) / dot(diff, diff);
}

bool near_coincident(Point2 x, const FacePoint &p) { return norm(x - p.y) <= 1e-10 * norm(p.n); }

template <class T, class Kernel>
std::array<T, 3> integrate_basis(Kernel &&kernel, const Mesh &mesh, std::size_t j, const QuadratureConfig &cfg,
                                 double split) {
    auto f = [&](double s) {
        const T v = kernel(s);
        const auto b = collocation_basis(mesh.alpha, s);
        return std::array<T, 3>{v * b[0], v * b[1], v * b[2]};
    };
    std::array<T, 3> total{};
    auto run = [&](double a, double b) {
        auto r = integrate_adaptive<T, 3>(f, a, b, cfg);
        if (!r.converged)
            throw QuadratureError("face quadrature did not converge (face " + std::to_string(j) + ", error " +
                                  std::to_string(r.error) + ")");
        for (int q = 0; q < 3; ++q) total[q] += r.value[q];
    };
    if (split > 0.0 && split < 1.0) {
        run(0.0, split);
        run(split, 1.0);
    } else {
        run(0.0, 1.0);
    }
    return total;
}

bool adjacent(const Mesh &mesh, std::size_t i, std::size_t j) {
    const int ci = mesh.faces[i].curve;
    if (mesh.faces[j].curve != ci) return false;
    const int lo = mesh.curve_offsets[ci], n = mesh.curve_offsets[ci + 1] - lo;
    const int a = static_cast<int>(i) - lo, b = static_cast<int>(j) - lo;
    return (a + 1) % n == b || (b + 1) % n == a;
}

QuadratureConfig near_config(QuadratureConfig cfg) {
    cfg.max_depth = std::max(cfg.max_depth, kNearFaceDepth);
    return cfg;
}

// Laplace entries of row r over all faces; the diagonal slot is left at 0.
Eigen::VectorXd laplace_row(const Mesh &mesh, std::size_t r, const QuadratureConfig &cfg) {
    const std::size_t m = mesh.size();
    const std::size_t i = r / 3;
    const int l = static_cast<int>(r % 3);
    const Point2 x = mesh.collocation[r];
    const double q_l = mesh.local_params()[l];
    Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < mesh.face_count(); ++j) {
        auto kernel = [&](double s) {
            const FacePoint p = face_point(mesh, j, s);
            if (j == i && near_coincident(x, p)) return coincident_limit(mesh, j, s);
            return laplace_value(x, p);
        };
        const QuadratureConfig c = (j == i || adjacent(mesh, i, j)) ? near_config(cfg) : cfg;
        const auto v = integrate_basis<double>(kernel, mesh, j, c, j == i ? q_l : -1.0);
        for (int q = 0; q < 3; ++q)
            if (!(j == i && q == l)) row(static_cast<Eigen::Index>(3 * j + q)) = v[q];
    }
    return row;
}

void check_wavenumber(Complex k) {
    if (k == Complex(0.0, 0.0)) throw DomainError("assemble: k = 0 is excluded");
    if (k.real() < 0.0 && std::abs(k.imag()) < 1e-14) throw DomainError("assemble: k on the negative real axis");
}

}  // namespace

std::array<double, 3> collocation_basis(double alpha, double s) {
    const double u = 1.0 - s, d = 1.0 - 2.0 * alpha;
    const double lu = (u - alpha) / d, ls = (s - alpha) / d;
    return {lu * (1.0 - 2.0 * s) / d, 4.0 * ls * lu, ls * (2.0 * s - 1.0) / d};
}

Complex dlp_kernel(Complex k, Point2 target, const Mesh &mesh, std::size_t j, double s) {
    if (k == Complex(0.0, 0.0)) throw DomainError("dlp_kernel: k = 0");
    const FacePoint p = face_point(mesh, j, s);
    if (norm(target - p.y) == 0.0) throw DomainError("dlp_kernel: target coincides with the source point");
    return helmholtz_value(k, target, p);
}

double laplace_kernel(Point2 target, const Mesh &mesh, std::size_t j, double s) {
    const FacePoint p = face_point(mesh, j, s);
    if (norm(target - p.y) == 0.0) throw DomainError("laplace_kernel: target coincides with the source point");
    return laplace_value(target, p);
}

std::array<Complex, 3> integrate_face(Complex k, Point2 target, const Mesh &mesh, std::size_t j,
                                      const QuadratureConfig &cfg, double split) {
    auto kernel = [&](double s) {
        const FacePoint p = face_point(mesh, j, s);
        if (near_coincident(target, p)) return Complex(coincident_limit(mesh, j, s));
        return helmholtz_value(k, target, p);
    };
    return integrate_basis<Complex>(kernel, mesh, j, cfg, split);
}

Complex integrate_face(Complex k, std::size_t i, int l, std::size_t j, int q, const Mesh &mesh,
                       const QuadratureConfig &cfg) {
    if (i >= mesh.face_count() || j >= mesh.face_count() || l < 0 || l > 2 || q < 0 || q > 2)
        throw std::out_of_range("integrate_face: index out of range");
    if (i == j && l == q) throw std::invalid_argument("integrate_face: singular self entry");
    const QuadratureConfig c = (i == j || adjacent(mesh, i, j)) ? near_config(cfg) : cfg;
    const double split = i == j ? mesh.local_params()[l] : -1.0;
    return integrate_face(k, mesh.collocation[3 * i + l], mesh, j, c, split)[q];
}

Eigen::VectorXd singular_diagonal(const Mesh &mesh, const QuadratureConfig &cfg) {
    cfg.validate();
    const auto m = static_cast<Eigen::Index>(mesh.size());
    Eigen::VectorXd diag(m);
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index r = 0; r < m; ++r) diag(r) = -laplace_row(mesh, static_cast<std::size_t>(r), cfg).sum();
    return diag;
}

Eigen::MatrixXd assemble_laplace(const Mesh &mesh, const QuadratureConfig &cfg) {
    cfg.validate();
    const auto m = static_cast<Eigen::Index>(mesh.size());
    Eigen::MatrixXd a(m, m);
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index r = 0; r < m; ++r) {
        Eigen::VectorXd row = laplace_row(mesh, static_cast<std::size_t>(r), cfg);
        row(r) = -0.5 - row.sum();
        a.row(r) = row.transpose();
    }
    return a;
}

// First-level Kronrod nodes of every face, shared by all targets.
struct BemOperator::NodeCache {
    std::vector<std::array<FacePoint, 15>> faces;
    std::array<double, 15> kronrod{};
    std::array<double, 15> gauss{};
};

BemOperator::BemOperator(Mesh mesh, QuadratureConfig cfg) : mesh_(std::move(mesh)), cfg_(cfg) {
    cfg_.validate();
    diagonal_ = singular_diagonal(mesh_, cfg_);

    auto cache = std::make_shared<NodeCache>();
    std::array<double, 15> s{};
    for (int n = 0; n < 7; ++n) {
        const double dx = 0.5 * detail::kKronrodNodes[n];
        const double wg = n % 2 == 1 ? detail::kGaussWeights[n / 2] : 0.0;
        s[n] = 0.5 - dx;
        s[7 + n] = 0.5 + dx;
        cache->kronrod[n] = cache->kronrod[7 + n] = 0.5 * detail::kKronrodWeights[n];
        cache->gauss[n] = cache->gauss[7 + n] = 0.5 * wg;
    }
    s[14] = 0.5;
    cache->kronrod[14] = 0.5 * detail::kKronrodWeights[7];
    cache->gauss[14] = 0.5 * detail::kGaussWeights[3];
    cache->faces.resize(mesh_.face_count());
    for (std::size_t j = 0; j < mesh_.face_count(); ++j)
        for (int n = 0; n < 15; ++n) cache->faces[j][n] = face_point(mesh_, j, s[n]);
    nodes_ = std::move(cache);
}

ComplexMatrix BemOperator::assemble(Complex k) const {
    check_wavenumber(k);
    const auto m = static_cast<Eigen::Index>(size());
    const std::size_t nf = mesh_.face_count();
    ComplexMatrix M(m, m);
    const NodeCache &cache = *nodes_;
    const QuadratureConfig near = near_config(cfg_);

#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index r = 0; r < m; ++r) {
        const std::size_t i = static_cast<std::size_t>(r) / 3;
        const int l = static_cast<int>(r % 3);
        const Point2 x = mesh_.collocation[static_cast<std::size_t>(r)];
        for (std::size_t j = 0; j < nf; ++j) {
            std::array<Complex, 3> v;
            if (j == i) {
                v = integrate_face(k, x, mesh_, j, near, mesh_.local_params()[l]);
            } else {
                std::array<Complex, 3> kr{}, ga{};
                for (int n = 0; n < 15; ++n) {
                    const FacePoint &p = cache.faces[j][n];
                    const Complex val = helmholtz_value(k, x, p);
                    for (int q = 0; q < 3; ++q) {
                        const Complex w = val * p.basis[q];
                        kr[q] += cache.kronrod[n] * w;
                        ga[q] += cache.gauss[n] * w;
                    }
                }
                double error = 0.0, scale = 0.0;
                for (int q = 0; q < 3; ++q) {
                    error = std::max(error, std::abs(kr[q] - ga[q]));
                    scale = std::max(scale, std::abs(kr[q]));
                }
                if (error <= std::max(cfg_.abs_tol, cfg_.rel_tol * scale))
                    v = kr;
                else
                    v = integrate_face(k, x, mesh_, j, adjacent(mesh_, i, j) ? near : cfg_);
            }
            for (int q = 0; q < 3; ++q) M(r, static_cast<Eigen::Index>(3 * j + q)) = v[q];
        }
        M(r, r) = diagonal_(r);
    }
    return M;
}

ComplexMatrix assemble(const Mesh &mesh, Complex k, const QuadratureConfig &cfg) {
    return BemOperator(mesh, cfg).assemble(k);
}

void write_matrix_binary(const std::string &path, const ComplexMatrix &m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("write_matrix_binary: matrix must be square");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    const std::uint64_t n = static_cast<std::uint64_t>(m.rows());
    out.write(reinterpret_cast<const char *>(&n), sizeof n);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const double re = m(r, c).real(), im = m(r, c).imag();
            out.write(reinterpret_cast<const char *>(&re), sizeof re);
            out.write(reinterpret_cast<const char *>(&im), sizeof im);
        }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ComplexMatrix read_matrix_binary(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char *>(&n), sizeof n);
    if (!in || n > (1u << 20)) throw std::runtime_error("bad matrix header in '" + path + "'");
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) {
            double re = 0, im = 0;
            in.read(reinterpret_cast<char *>(&re), sizeof re);
            in.read(reinterpret_cast<char *>(&im), sizeof im);
            m(r, c) = {re, im};
        }
    if (!in) throw std::runtime_error("truncated matrix file '" + path + "'");
    return m;
}

}  // namespace hotspots
