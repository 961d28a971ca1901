#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <numeric>
#include <random>

#include "cellricci/builders.hpp"
#include "cellricci/complex.hpp"
#include "cellricci/face_graph.hpp"
#include "cellricci/forms.hpp"
#include "cellricci/spectral.hpp"
#include "corpus.hpp"

using namespace cellricci;
using Catch::Matchers::WithinAbs;

namespace {

DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  DenseMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

CellComplex two_disjoint_edges() {
  ComplexBuilder b;
  const auto a0 = b.add_cell("a0", 0);
  const auto a1 = b.add_cell("a1", 0);
  const auto b0 = b.add_cell("b0", 0);
  const auto b1 = b.add_cell("b1", 0);
  const auto ea = b.add_cell("ea", 1);
  const auto eb = b.add_cell("eb", 1);
  b.add_incidence(ea, a0, -1);
  b.add_incidence(ea, a1, 1);
  b.add_incidence(eb, b0, -1);
  b.add_incidence(eb, b1, 1);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("Laplacian of the 2-sphere complex") {
  const auto c = build_simplex_boundary(2);
  const auto l = laplacian_matrix(c);
  REQUIRE(l.size() == 14);
  const std::vector<double> diag{3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 3, 3, 3, 3};
  for (std::size_t i = 0; i < 14; ++i) {
    CHECK(l(i, i) == diag[i]);
    const auto r = l.row(i);
    CHECK(std::accumulate(r.begin(), r.end(), 0.0) == 0.0);
  }
  CHECK(l.is_symmetric());
}

TEST_CASE("Laplacian matrix agrees with the 0-form Laplacian") {
  std::mt19937_64 rng(3);
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const FormOperators ops(c);
    const auto l = laplacian_matrix(c);
    const auto f = random_zero_form(c, rng);
    const auto lf = laplacian_zero(ops, f);
    std::vector<double> y(c.size());
    kernels::matvec(l.data(), l.size(), f.values, y);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK_THAT(y[i], WithinAbs(lf.values[i], 1e-12));
  }
}

TEST_CASE("Jacobi on small matrices") {
  SECTION("diagonal") {
    const auto ev = eigenvalues(from_rows({{5, 0}, {0, -2}}));
    CHECK(ev == std::vector<double>{-2, 5});
  }
  SECTION("path on three vertices") {
    const auto ev = eigenvalues(from_rows({{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}}));
    REQUIRE(ev.size() == 3);
    CHECK_THAT(ev[0], WithinAbs(0.0, 1e-12));
    CHECK_THAT(ev[1], WithinAbs(1.0, 1e-12));
    CHECK_THAT(ev[2], WithinAbs(3.0, 1e-12));
  }
  SECTION("non-symmetric input") {
    CHECK_THROWS_AS(eigenvalues(from_rows({{1, 2}, {0, 1}})), std::invalid_argument);
  }
  SECTION("empty") { CHECK(eigenvalues(DenseMatrix(0)).empty()); }
}

TEST_CASE("Jacobi matches an independent solver") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal;
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
    DenseMatrix m(n);
    Eigen::MatrixXd e(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double x = normal(rng);
        m(i, j) = m(j, i) = e(i, j) = e(j, i) = x;
      }
    }
    const auto ours = eigenvalues(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e, Eigen::EigenvaluesOnly);
    const auto& ref = solver.eigenvalues();
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK_THAT(ours[i], WithinAbs(ref[static_cast<Eigen::Index>(i)], 1e-9));
      trace += m(i, i);
    }
    CHECK_THAT(std::accumulate(ours.begin(), ours.end(), 0.0), WithinAbs(trace, 1e-9));
  }
  for (const auto& [name, c] : testing::corpus()) {
    INFO(name);
    const auto l = laplacian_matrix(c);
    Eigen::MatrixXd e(l.size(), l.size());
    for (std::size_t i = 0; i < l.size(); ++i)
      for (std::size_t j = 0; j < l.size(); ++j) e(i, j) = l(i, j);
    const auto ours = eigenvalues(l);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e, Eigen::EigenvaluesOnly);
    for (std::size_t i = 0; i < l.size(); ++i)
      CHECK_THAT(ours[i], WithinAbs(solver.eigenvalues()[static_cast<Eigen::Index>(i)], 1e-9));
  }
}

TEST_CASE("first nonzero eigenvalue of known complexes") {
  const std::vector<std::pair<int, double>> spheres{
      {2, 1.4384471871911693}, {3, 1.6972243622680039}, {4, 1.844563390341998}};
  for (const auto& [n, expected] : spheres) {
    const auto c = build_simplex_boundary(n);
    const auto report = eigen_bound(FaceGraph(c));
    REQUIRE(report.lambda1);
    CHECK_THAT(*report.lambda1, WithinAbs(expected, 1e-8));
    CHECK(report.zero_multiplicity == 1);
  }
  const auto torus = build_torus_grid(4, 4);
  const auto report = eigen_bound(FaceGraph(torus));
  REQUIRE(report.lambda1);
  CHECK_THAT(*report.lambda1, WithinAbs(0.5857864376269037, 1e-8));
}

TEST_CASE("disconnected complex") {
  const auto c = two_disjoint_edges();
  const auto ev = eigenvalues(laplacian_matrix(c));
  // Each component is a path on three cells: spectrum {0, 1, 3}.
  CHECK(first_nonzero(ev, 2) == Catch::Approx(1.0));
  const auto report = eigen_bound(FaceGraph(c));
  CHECK(report.components == 2);
  CHECK(report.zero_multiplicity == 2);
  CHECK_FALSE(report.diameter);
  CHECK_FALSE(report.bounds_applicable);
  CHECK(report.ok());
}

TEST_CASE("first_nonzero rejects an ambiguous gap") {
  const std::vector<double> spectrum{0.0, 1e-12, 1.0};
  CHECK_THROWS_AS(first_nonzero(spectrum, 1), std::runtime_error);
  CHECK(first_nonzero(spectrum, 2) == 1.0);
}

TEST_CASE("curvature bounds on the 2-sphere complex") {
  CHECK(lambda1_bound(Rational(1, 6), 4, 3) == Rational(1, 8));
  const auto c = build_simplex_boundary(2);
  const auto report = eigen_bound(FaceGraph(c));
  REQUIRE(report.bounds_applicable);
  CHECK(*report.kappa_min == Rational(1, 6));
  CHECK(*report.lambda1_bound == Rational(1, 8));
  CHECK(*report.myers_bound == Rational(12));
  CHECK(*report.diameter == 4);
  CHECK(report.myers_pass);
  CHECK(report.lambda1_pass);
}

TEST_CASE("Myers bound on higher spheres") {
  for (int n = 2; n <= 4; ++n) {
    const auto c = build_simplex_boundary(n);
    const auto report = eigen_bound(FaceGraph(c));
    REQUIRE(report.diameter);
    CHECK(*report.diameter <= static_cast<std::uint32_t>((n + 1) * (n + 2)));
    CHECK(report.ok());
  }
}

TEST_CASE("bounds do not apply on the flat torus") {
  const auto c = build_torus_grid(4, 4);
  const auto report = eigen_bound(FaceGraph(c));
  CHECK(*report.kappa_min == Rational(0));
  CHECK_FALSE(report.bounds_applicable);
  CHECK_FALSE(report.myers_bound);
  CHECK(report.ok());
}
