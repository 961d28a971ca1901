#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cellricci/complex.hpp"
#include "cellricci/face_graph.hpp"
#include "cellricci/rational.hpp"

namespace cellricci {

/// Dense row-major square matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const double> data() const { return data_; }

  bool is_symmetric() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// L = D - A of G_M, indexed by cell id.
DenseMatrix laplacian_matrix(const CellComplex& complex);

struct JacobiOptions {
  double off_tolerance = 1e-12;  // off-diagonal Frobenius norm at termination
  int max_sweeps = 100;
};

/// Full spectrum by cyclic Jacobi rotations, ascending. Throws
/// std::invalid_argument for a non-symmetric matrix and std::runtime_error if
/// the sweep cap is hit.
std::vector<double> eigenvalues(DenseMatrix m, JacobiOptions options = {});

/// The (components + 1)-th eigenvalue of an ascending Laplacian spectrum.
/// Throws std::runtime_error unless exactly the first `components` values lie
/// below eps.
double first_nonzero(std::span<const double> spectrum, std::size_t components, double eps = 1e-9);

/// d_max d_min k^2 / (k d_max + 2 (d_max - d_min)).
Rational lambda1_bound(const Rational& kappa, int d_max, int d_min);

struct SpectrumReport {
  std::vector<double> eigenvalues;
  std::optional<double> lambda1;  // absent for a single-cell complex
  std::size_t zero_multiplicity = 0;
  std::size_t components = 0;
  std::optional<std::uint32_t> diameter;  // absent when disconnected
  int d_max = 0;
  int d_min = 0;
  std::optional<Rational> kappa_min;  // absent when disconnected
  /// Both bounds are evaluated only for a connected G_M with kappa_min > 0.
  bool bounds_applicable = false;
  std::optional<Rational> myers_bound;    // 2 / kappa_min
  std::optional<Rational> lambda1_bound;
  bool myers_pass = false;
  bool lambda1_pass = false;

  bool ok() const { return !bounds_applicable || (myers_pass && lambda1_pass); }
};

/// Spectrum, curvature lower bound and both consequences of it.
/// `jobs` parallelizes the curvature computation.
SpectrumReport eigen_bound(const FaceGraph& graph, double eps = 1e-9, unsigned jobs = 1);

}  // namespace cellricci
