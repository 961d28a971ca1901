#include "cellricci/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cellricci/kernels.hpp"
#include "cellricci/lly.hpp"

namespace cellricci {

bool DenseMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

DenseMatrix laplacian_matrix(const CellComplex& complex) {
  DenseMatrix l(complex.size());
  for (const auto& v : complex.vectors()) {
    const auto a = v.tau.index;
    const auto b = v.sigma.index;
    l(a, b) -= 1.0;
    l(b, a) -= 1.0;
    l(a, a) += 1.0;
    l(b, b) += 1.0;
  }
  return l;
}

namespace {

double off_norm(const DenseMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j) sum += m(i, j) * m(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

std::vector<double> eigenvalues(DenseMatrix m, JacobiOptions options) {
  if (!m.is_symmetric()) throw std::invalid_argument("eigenvalues: matrix is not symmetric");
  const std::size_t n = m.size();
  std::vector<double> col_p(n);
  std::vector<double> col_q(n);
  int sweep = 0;
  while (off_norm(m) >= options.off_tolerance) {
    if (sweep++ == options.max_sweeps) throw std::runtime_error("Jacobi iteration did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double app = m(p, p);
        const double aqq = m(q, q);
        // A <- J^T A J: rotate rows p, q, then mirror into the columns.
        kernels::rotate_rows(m.row(p), m.row(q), c, s);
        for (std::size_t k = 0; k < n; ++k) {
          m(k, p) = m(p, k);
          m(k, q) = m(q, k);
        }
        m(p, p) = app - t * apq;
        m(q, q) = aqq + t * apq;
        m(p, q) = 0.0;
        m(q, p) = 0.0;
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = m(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

double first_nonzero(std::span<const double> spectrum, std::size_t components, double eps) {
  if (components >= spectrum.size()) throw std::runtime_error("spectrum has no eigenvalue past the zero cluster");
  for (std::size_t i = 0; i < components; ++i) {
    if (std::fabs(spectrum[i]) >= eps) {
      throw std::runtime_error("eigenvalue " + std::to_string(i) + " = " + std::to_string(spectrum[i]) +
                               " should be zero for " + std::to_string(components) + " components");
    }
  }
  if (spectrum[components] < eps) {
    throw std::runtime_error("ambiguous zero cluster: eigenvalue " + std::to_string(components) + " = " +
                             std::to_string(spectrum[components]) + " is below eps; tighten the solve");
  }
  return spectrum[components];
}

Rational lambda1_bound(const Rational& kappa, int d_max, int d_min) {
  const Rational hi(d_max);
  const Rational lo(d_min);
  return hi * lo * kappa * kappa / (kappa * hi + Rational(2) * (hi - lo));
}

SpectrumReport eigen_bound(const FaceGraph& graph, double eps, unsigned jobs) {
  const auto& c = graph.complex();
  SpectrumReport r;
  r.eigenvalues = eigenvalues(laplacian_matrix(c));
  r.components = graph.component_count();
  r.zero_multiplicity = static_cast<std::size_t>(
      std::count_if(r.eigenvalues.begin(), r.eigenvalues.end(), [&](double x) { return std::fabs(x) < eps; }));
  if (r.components < r.eigenvalues.size()) r.lambda1 = first_nonzero(r.eigenvalues, r.components, eps);
  r.diameter = graph.diameter();
  r.d_max = graph.max_degree();
  r.d_min = graph.min_degree();
  if (r.components != 1 || c.vectors().empty()) return r;

  r.kappa_min = global_lower_bound(graph, jobs);
  if (r.kappa_min->sign() <= 0) return r;
  r.bounds_applicable = true;
  r.myers_bound = Rational(2) / *r.kappa_min;
  r.lambda1_bound = lambda1_bound(*r.kappa_min, r.d_max, r.d_min);
  r.myers_pass = Rational(static_cast<std::int64_t>(*r.diameter)) <= *r.myers_bound;
  r.lambda1_pass = r.lambda1 && *r.lambda1 >= r.lambda1_bound->to_double() - eps;
  return r;
}

}  // namespace cellricci
