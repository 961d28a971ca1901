#pragma once

// Combinatorial differential forms of degree 0, 1 and 2.
//
// A degree-d form is a local linear map C_* -> C_* lowering dimension by d.
// Degree-0 forms are stored per cell (f_sigma), degree-1 forms per vector as
// the sign-free values omega^tau_sigma (the map sends tau to
// sum_sigma omega^tau_sigma (tau:sigma) sigma), and degree-2 forms per
// two-step pair (mu, rho) as raw matrix coefficients. Inner products are the
// Kronecker/Frobenius ones, so d* is the transpose of d.
//
// Every operation is a template over the scalar: double for sampling, Rational
// for exact identities.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "cellricci/complex.hpp"
#include "cellricci/errors.hpp"
#include "cellricci/kernels.hpp"
#include "cellricci/rational.hpp"

namespace cellricci {

template <class T>
struct ZeroForm {
  std::vector<T> values;  // indexed by CellId::index

  static ZeroForm zeros(const CellComplex& c) { return {std::vector<T>(c.size(), T{})}; }
  const T& operator[](CellId id) const { return values[id.index]; }
  T& operator[](CellId id) { return values[id.index]; }
};

template <class T>
struct OneForm {
  std::vector<T> values;  // indexed by vector index

  static OneForm zeros(const CellComplex& c) { return {std::vector<T>(c.vectors().size(), T{})}; }
  const T& operator[](std::uint32_t vector_index) const { return values[vector_index]; }
  T& operator[](std::uint32_t vector_index) { return values[vector_index]; }
};

template <class T>
struct TwoForm {
  std::vector<T> values;  // indexed by FormOperators::two_steps()
};

/// Sparse structure shared by all form operations on one complex: the
/// two-step pairs (mu, rho) with dim mu = dim rho + 2, the coefficient matrix
/// of d on 1-forms, and per-vector neighbour index lists.
class FormOperators {
 public:
  struct TwoStep {
    CellId top;
    CellId bottom;
  };
  struct Coefficient {
    std::uint32_t pair;
    int coeff;
  };
  struct Neighbors {
    std::vector<std::uint32_t> zero;
    std::vector<std::uint32_t> two;
  };

  /// Builds neighbour lists with neighbor_sets(), so `complex` should already
  /// have passed require_curvature_ready() when curvature identities matter.
  explicit FormOperators(const CellComplex& complex);

  const CellComplex& complex() const { return *complex_; }
  std::size_t vector_count() const { return complex_->vectors().size(); }
  std::span<const TwoStep> two_steps() const { return two_steps_; }
  /// Nonzero entries of column `vector_index` of d : Omega^1 -> Omega^2.
  std::span<const Coefficient> d_column(std::uint32_t vector_index) const {
    return {coeffs_.data() + offsets_[vector_index], coeffs_.data() + offsets_[vector_index + 1]};
  }
  const Neighbors& neighbors(std::uint32_t vector_index) const { return neighbors_[vector_index]; }
  std::uint32_t index_of(FaceVector v) const;

 private:
  const CellComplex* complex_;
  std::vector<TwoStep> two_steps_;
  std::vector<std::size_t> offsets_;
  std::vector<Coefficient> coeffs_;
  std::vector<Neighbors> neighbors_;
};

namespace detail {

template <class T>
bool within(const T& a, const T& b, double tolerance) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::fabs(a - b) <= tolerance;
  } else {
    return a == b;
  }
}

template <class T>
std::string to_text(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::to_string(v);
  } else {
    return v.str();
  }
}

}  // namespace detail

/// (df)^tau_sigma = f_tau - f_sigma.
template <class T>
OneForm<T> d_zero(const FormOperators& ops, const ZeroForm<T>& f) {
  const auto vectors = ops.complex().vectors();
  OneForm<T> out{std::vector<T>(vectors.size())};
  for (std::size_t i = 0; i < vectors.size(); ++i) out.values[i] = f[vectors[i].tau] - f[vectors[i].sigma];
  return out;
}

/// d*w(sigma) = -sum_{tau > sigma} w^tau_sigma + sum_{rho < sigma} w^sigma_rho.
template <class T>
ZeroForm<T> d_star_one(const FormOperators& ops, const OneForm<T>& w) {
  const auto vectors = ops.complex().vectors();
  auto out = ZeroForm<T>::zeros(ops.complex());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out[vectors[i].tau] += w.values[i];
    out[vectors[i].sigma] -= w.values[i];
  }
  return out;
}

/// Delta f = d* d f, the non-normalized graph Laplacian of G_M.
template <class T>
ZeroForm<T> laplacian_zero(const FormOperators& ops, const ZeroForm<T>& f) {
  return d_star_one(ops, d_zero(ops, f));
}

/// dw = boundary o w + w o boundary, evaluated on every two-step pair.
template <class T>
TwoForm<T> d_one(const FormOperators& ops, const OneForm<T>& w) {
  TwoForm<T> out{std::vector<T>(ops.two_steps().size(), T{})};
  for (std::uint32_t v = 0; v < ops.vector_count(); ++v) {
    if (w.values[v] == T{}) continue;
    for (const auto& c : ops.d_column(v)) out.values[c.pair] += T(c.coeff) * w.values[v];
  }
  return out;
}

/// Adjoint of d_one: the transpose of its coefficient matrix.
template <class T>
OneForm<T> d_star_two(const FormOperators& ops, const TwoForm<T>& z) {
  OneForm<T> out{std::vector<T>(ops.vector_count(), T{})};
  for (std::uint32_t v = 0; v < ops.vector_count(); ++v) {
    T acc{};
    for (const auto& c : ops.d_column(v)) acc += T(c.coeff) * z.values[c.pair];
    out.values[v] = acc;
  }
  return out;
}

/// Hodge Laplacian dd* + d*d on 1-forms.
template <class T>
OneForm<T> laplacian_one(const FormOperators& ops, const OneForm<T>& w) {
  auto a = d_zero(ops, d_star_one(ops, w));
  const auto b = d_star_two(ops, d_one(ops, w));
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
  return a;
}

template <class T>
T inner(std::span<const T> a, std::span<const T> b) {
  if constexpr (std::is_same_v<T, double>) {
    return kernels::dot(a, b);
  } else {
    T acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  }
}
template <class T>
T inner(const ZeroForm<T>& a, const ZeroForm<T>& b) {
  return inner<T>(std::span<const T>(a.values), std::span<const T>(b.values));
}
template <class T>
T inner(const OneForm<T>& a, const OneForm<T>& b) {
  return inner<T>(std::span<const T>(a.values), std::span<const T>(b.values));
}

/// |nabla w|^2 at a vector: squared differences over 2-neighbours plus squared
/// sums over 0-neighbours.
template <class T>
T covariant_sq(const FormOperators& ops, const OneForm<T>& w, std::uint32_t v) {
  const auto& nb = ops.neighbors(v);
  const T& x = w.values[v];
  T acc{};
  for (auto u : nb.two) acc += (x - w.values[u]) * (x - w.values[u]);
  for (auto u : nb.zero) acc += (x + w.values[u]) * (x + w.values[u]);
  return acc;
}
template <class T>
T covariant_sq(const FormOperators& ops, const OneForm<T>& w, FaceVector v) {
  return covariant_sq(ops, w, ops.index_of(v));
}

/// Delta^flat |w|^2 at a vector: sum over 0- and 2-neighbours of w_v^2 - w_u^2.
template <class T>
T laplacian_flat_sq(const FormOperators& ops, const OneForm<T>& w, std::uint32_t v) {
  const auto& nb = ops.neighbors(v);
  const T sq = w.values[v] * w.values[v];
  T acc{};
  for (auto u : nb.two) acc += sq - w.values[u] * w.values[u];
  for (auto u : nb.zero) acc += sq - w.values[u] * w.values[u];
  return acc;
}
template <class T>
T laplacian_flat_sq(const FormOperators& ops, const OneForm<T>& w, FaceVector v) {
  return laplacian_flat_sq(ops, w, ops.index_of(v));
}

/// How the pointwise pairing <Delta w, w>(tau > sigma) reads the coefficient
/// of sigma in (Delta w)(tau).
enum class Pairing {
  /// Multiply the coefficient by the incidence number (tau : sigma) first.
  kIncidenceNormalized,
  /// Use the raw coefficient.
  kRaw,
};

template <class T>
struct BochnerTerms {
  T pairing;     // <Delta w, w>(v)
  T covariant;   // |nabla w|^2(v)
  T flat;        // Delta^flat |w|^2(v)
  T expected;    // (2 - #N0(v)) (w_v)^2
};

/// Raw ingredients of the Bochner-type decomposition at one vector, given a
/// precomputed Delta w.
template <class T>
BochnerTerms<T> bochner_terms(const FormOperators& ops, const OneForm<T>& w, const OneForm<T>& laplacian_w,
                              std::uint32_t v, Pairing pairing = Pairing::kIncidenceNormalized) {
  T coefficient = laplacian_w.values[v];
  if (pairing == Pairing::kRaw) coefficient = T(ops.complex().sign(v)) * coefficient;
  const auto n0 = static_cast<std::int64_t>(ops.neighbors(v).zero.size());
  return {coefficient * w.values[v], covariant_sq(ops, w, v), laplacian_flat_sq(ops, w, v),
          T(2 - n0) * w.values[v] * w.values[v]};
}

/// Ric(w)(v) = <Delta w, w>(v) - 1/2 |nabla w|^2(v) - 1/2 Delta^flat |w|^2(v).
///
/// The sign in front of Delta^flat is the one for which the value reduces to
/// (2 - #N0(v)) (w_v)^2; that reduction is checked on every call and a
/// deviation beyond `tolerance` (exact equality for Rational) throws
/// IdentityError, which points at a sign-convention fault in the complex.
template <class T>
T bochner_ric(const FormOperators& ops, const OneForm<T>& w, const OneForm<T>& laplacian_w, std::uint32_t v,
              double tolerance = 1e-9) {
  const auto t = bochner_terms(ops, w, laplacian_w, v);
  const T half = T(1) / T(2);
  const T value = t.pairing - half * t.covariant - half * t.flat;
  if (!detail::within(value, t.expected, tolerance)) {
    const auto fv = ops.complex().vectors()[v];
    throw IdentityError("Bochner identity fails at (" + ops.complex().label(fv.tau) + " > " +
                        ops.complex().label(fv.sigma) + "): Ric(w) = " + detail::to_text(value) +
                        ", (2 - #N0) w^2 = " + detail::to_text(t.expected));
  }
  return value;
}

template <class T>
T bochner_ric(const FormOperators& ops, const OneForm<T>& w, FaceVector v, double tolerance = 1e-9) {
  return bochner_ric(ops, w, laplacian_one(ops, w), ops.index_of(v), tolerance);
}

/// Standard-normal 1-form.
OneForm<double> random_one_form(const FormOperators& ops, std::mt19937_64& rng);
/// Standard-normal 0-form.
ZeroForm<double> random_zero_form(const CellComplex& complex, std::mt19937_64& rng);
/// 1-form with values p/q, |p| <= 12, 1 <= q <= 6.
OneForm<Rational> random_rational_one_form(const FormOperators& ops, std::mt19937_64& rng);

/// Result of sweeping bochner_ric over random forms.
struct BochnerSweep {
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double flat_balance = 0.0;  // max |sum_v Delta^flat|w|^2(v)| over the forms
};

/// Draws ceil(min_samples / #vectors) random forms and evaluates every vector
/// for each; never throws on deviation, it reports the worst one.
BochnerSweep bochner_sweep(const FormOperators& ops, std::size_t min_samples, std::uint64_t seed);

}  // namespace cellricci
