#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <numbers>

#include <Eigen/SVD>

#include "hotspots/bem_assembly.hpp"
#include "hotspots/domains.hpp"
#include "oracles.hpp"

using namespace hotspots;
using hotspots::testing::h1_oracle;

namespace {

const double alpha = kDefaultAlpha;

Mesh straight_face_mesh() {
    // Triangle whose first face runs from (0,0) to (1,0).
    const DomainSpec d("tri", polygon(std::vector<Point2>{{0, 0}, {1, 0}, {0.5, 1}}));
    return build_mesh(d, std::vector<int>{3});
}

Complex kernel_oracle(Complex k, Point2 target, const Face &f, double s) {
    const Point2 y = f.map(s), d = f.derivative(s);
    const double a = target.x - y.x, b = target.y - y.y, r = std::hypot(a, b);
    return Complex(0, 1) * k * h1_oracle(k * r) / (4.0 * r) * (a * d.y - b * d.x);
}

// Richardson-extrapolated composite trapezoid rule.
template <class F>
Complex trapezoid(F &&f, int panels) {
    auto rule = [&](int n) {
        Complex sum = 0.5 * (f(0.0) + f(1.0));
        for (int i = 1; i < n; ++i) sum += f(static_cast<double>(i) / n);
        return sum / static_cast<double>(n);
    };
    const Complex coarse = rule(panels), fine = rule(2 * panels);
    return fine + (fine - coarse) / 3.0;
}

}  // namespace

TEST_CASE("collocation basis") {
    for (double s : {0.2, 0.5, 0.9}) {
        const auto b = collocation_basis(alpha, s);
        CHECK(b[0] + b[1] + b[2] == doctest::Approx(1.0).epsilon(1e-15));
    }
    const double nodes[] = {alpha, 0.5, 1.0 - alpha};
    for (int q = 0; q < 3; ++q)
        for (int p = 0; p < 3; ++p) {
            const double v = collocation_basis(alpha, nodes[p])[q];
            CHECK(std::abs(v - (p == q ? 1.0 : 0.0)) < 1e-14);
        }
}

TEST_CASE("kernel geometry on a straight face") {
    const Mesh mesh = straight_face_mesh();
    const Complex k = 2.0;
    const Complex below = dlp_kernel(k, {0.5, -0.3}, mesh, 0, 0.5);
    const Complex above = dlp_kernel(k, {0.5, 0.3}, mesh, 0, 0.5);
    CHECK(std::abs(below) > 1e-3);
    CHECK(std::abs(below + above) < 1e-15);
    CHECK(dlp_kernel(k, {2.0, 0.0}, mesh, 0, 0.5) == Complex(0.0));
    CHECK(dlp_kernel(k, {-0.7, 0.0}, mesh, 0, 0.25) == Complex(0.0));

    const Complex v = dlp_kernel(k, {0.5, 0.7}, mesh, 0, 0.5);
    CHECK(std::abs(v - kernel_oracle(k, {0.5, 0.7}, mesh.faces[0], 0.5)) < 1e-14);

    CHECK_THROWS_AS(dlp_kernel(k, {0.5, 0.0}, mesh, 0, 0.5), DomainError);
    CHECK_THROWS_AS(dlp_kernel(0.0, {0.5, 0.7}, mesh, 0, 0.5), DomainError);
}

TEST_CASE("far-face integral matches a trapezoid oracle") {
    const Mesh mesh = build_mesh(domain_registry("circle"), 20);
    const Complex k = 2.0;
    const Point2 target = mesh.collocation[0];
    const std::size_t j = 10;
    for (int q = 0; q < 3; ++q) {
        const Complex quad = integrate_face(k, 0, 0, j, q, mesh, {});
        const Complex ref = trapezoid(
            [&](double s) { return kernel_oracle(k, target, mesh.faces[j], s) * collocation_basis(alpha, s)[q]; },
            10000);
        CAPTURE(q);
        CHECK(std::abs(quad - ref) < 1e-9);
    }
    CHECK_THROWS(integrate_face(k, 0, 1, 0, 1, mesh, {}));
}

TEST_CASE("Laplace rows sum to -1/2") {
    for (int nf : {3, 20}) {
        const Mesh mesh = build_mesh(domain_registry("circle"), nf);
        const Eigen::MatrixXd a0 = assemble_laplace(mesh);
        CAPTURE(nf);
        CHECK((a0.rowwise().sum().array() + 0.5).abs().maxCoeff() < 1e-9);
    }
    const Mesh annulus = build_mesh(domain_registry("annulus"), 10);
    CHECK((assemble_laplace(annulus).rowwise().sum().array() + 0.5).abs().maxCoeff() < 1e-9);
}

TEST_CASE("off-face Laplace entries agree with independent quadrature") {
    const Mesh mesh = build_mesh(domain_registry("ellipse"), 12);
    const Eigen::MatrixXd a0 = assemble_laplace(mesh);
    const int row = 4;  // face 1, node q = 1
    const Point2 x = mesh.collocation[row];
    for (std::size_t j = 3; j < mesh.face_count(); j += 3)
        for (int q = 0; q < 3; ++q) {
            const Face &f = mesh.faces[j];
            const Complex ref = trapezoid(
                [&](double s) {
                    const Point2 y = f.map(s), d = f.derivative(s), r = x - y;
                    return Complex(dot(r, Point2{d.y, -d.x}) / (2.0 * std::numbers::pi * dot(r, r)) *
                                   collocation_basis(alpha, s)[q]);
                },
                4000);
            CHECK(std::abs(a0(row, static_cast<Eigen::Index>(3 * j + q)) - ref.real()) < 1e-9);
        }
}

TEST_CASE("assembled matrices") {
    const Mesh c5 = build_mesh(domain_registry("circle"), 5);
    const ComplexMatrix m5 = assemble(c5, 2.0);
    CHECK(m5.rows() == 15);
    CHECK(m5.cols() == 15);

    const Mesh ann = build_mesh(domain_registry("annulus"), 10);
    CHECK(assemble(ann, 1.0).rows() == 60);

    const BemOperator op(build_mesh(domain_registry("circle"), 20));
    const ComplexMatrix m = op.assemble(2.0);
    const Eigen::Index n = m.rows();
    double deviation = 0.0;
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) deviation = std::max(deviation, std::abs(m(r, c) - m((r + 3) % n, (c + 3) % n)));
    CHECK(deviation < 1e-9);

    const ComplexMatrix again = op.assemble(2.0);
    CHECK(std::memcmp(m.data(), again.data(), sizeof(Complex) * static_cast<std::size_t>(m.size())) == 0);

    CHECK_THROWS_AS(op.assemble(0.0), DomainError);
    CHECK_THROWS_AS(op.assemble(Complex(-1.0, 0.0)), DomainError);
}

TEST_CASE("assembly is holomorphic in k") {
    const BemOperator op(build_mesh(domain_registry("circle"), 10));
    const Complex k(2.0, 0.5);
    const double h = 1e-5;
    const Eigen::Index r = 4, c = 17;
    const Complex dx = (op.assemble(k + h)(r, c) - op.assemble(k - h)(r, c)) / (2.0 * h);
    const Complex dy = (op.assemble(k + Complex(0, h))(r, c) - op.assemble(k - Complex(0, h))(r, c)) /
                       (Complex(0, 2.0 * h));
    CHECK(std::abs(dx - dy) < 1e-6);
}

TEST_CASE("smallest singular value dips at the circle eigenvalue") {
    const BemOperator op(build_mesh(domain_registry("circle"), 40));
    auto smallest = [&](double k) {
        Eigen::JacobiSVD<ComplexMatrix> svd(op.assemble(k));
        return svd.singularValues().minCoeff();
    };
    CHECK(smallest(1.5) > 100.0 * smallest(1.841184));
}

TEST_CASE("diagonal entries are finite for every registry domain") {
    for (const auto &info : domain_catalog()) {
        ParamMap p;
        for (const auto &s : info.params)
            if (!s.default_value) p[s.name] = s.name == "eps" ? 0.2 : s.name == "omega" ? 4.0 : 0.1;
        CAPTURE(info.name);
        const BemOperator op(build_mesh(domain_registry(info.name, p), 40));
        CHECK(op.diagonal().allFinite());
        CHECK(op.assemble(info.defaults.mu).diagonal().allFinite());
    }
}

TEST_CASE("matrix dump round trip") {
    const ComplexMatrix m = assemble(build_mesh(domain_registry("circle"), 4), Complex(1.5, 0.1));
    const auto path = std::filesystem::temp_directory_path() / "hotspots_matrix_dump.bin";
    write_matrix_binary(path.string(), m);
    CHECK(std::filesystem::file_size(path) == 8 + 16 * static_cast<std::uintmax_t>(m.size()));
    const ComplexMatrix back = read_matrix_binary(path.string());
    CHECK(back == m);
    std::filesystem::remove(path);
}

TEST_CASE("adaptive quadrature") {
    CHECK(integrate_adaptive_scalar([](double x) { return x * x * x; }, 0.0, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(integrate_adaptive_scalar([](double x) { return 1.0 / (1.0 + 100.0 * x * x); }, -1.0, 1.0) ==
          doctest::Approx(0.2 * std::atan(10.0)).epsilon(1e-10));
    QuadratureConfig shallow;
    shallow.max_depth = 1;
    CHECK_THROWS_AS(integrate_adaptive_scalar([](double x) { return 1.0 / std::sqrt(x + 1e-12); }, 0.0, 1.0, shallow),
                    QuadratureError);
    QuadratureConfig bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
