#include "cellricci/forms.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cellricci/forman.hpp"

namespace cellricci {

namespace {

std::uint64_t pair_key(CellId top, CellId bottom) {
  return (static_cast<std::uint64_t>(top.index) << 32) | bottom.index;
}

}  // namespace

FormOperators::FormOperators(const CellComplex& complex) : complex_(&complex) {
  const auto vectors = complex.vectors();
  std::unordered_map<std::uint64_t, std::uint32_t> pair_index;
  auto intern = [&](CellId top, CellId bottom) {
    auto [it, inserted] = pair_index.try_emplace(pair_key(top, bottom), static_cast<std::uint32_t>(two_steps_.size()));
    if (inserted) two_steps_.push_back({top, bottom});
    return it->second;
  };

  offsets_.reserve(vectors.size() + 1);
  offsets_.push_back(0);
  for (std::uint32_t v = 0; v < vectors.size(); ++v) {
    const auto [tau, sigma] = vectors[v];
    const int s = complex.sign(v);
    // w o boundary contributes through faces of sigma, boundary o w through cofaces of tau.
    for (const auto& rho : complex.faces(sigma)) coeffs_.push_back({intern(tau, rho.cell), s * rho.sign});
    for (const auto& mu : complex.cofaces(tau)) coeffs_.push_back({intern(mu.cell, sigma), mu.sign * s});
    offsets_.push_back(coeffs_.size());
  }

  neighbors_.resize(vectors.size());
  for (std::uint32_t v = 0; v < vectors.size(); ++v) {
    const auto sets = neighbor_sets(complex, vectors[v]);
    auto& nb = neighbors_[v];
    for (const auto& u : sets.zero) nb.zero.push_back(index_of(u));
    for (const auto& u : sets.two) nb.two.push_back(index_of(u));
  }
}

std::uint32_t FormOperators::index_of(FaceVector v) const {
  const auto idx = complex_->vector_index(v);
  if (!idx) {
    throw ComplexError("(" + complex_->label(v.tau) + " > " + complex_->label(v.sigma) + ") is not a vector");
  }
  return *idx;
}

OneForm<double> random_one_form(const FormOperators& ops, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  OneForm<double> w{std::vector<double>(ops.vector_count())};
  for (auto& x : w.values) x = normal(rng);
  return w;
}

ZeroForm<double> random_zero_form(const CellComplex& complex, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ZeroForm<double> f{std::vector<double>(complex.size())};
  for (auto& x : f.values) x = normal(rng);
  return f;
}

OneForm<Rational> random_rational_one_form(const FormOperators& ops, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> num(-12, 12);
  std::uniform_int_distribution<std::int64_t> den(1, 6);
  OneForm<Rational> w{std::vector<Rational>(ops.vector_count())};
  for (auto& x : w.values) x = Rational(num(rng), den(rng));
  return w;
}

BochnerSweep bochner_sweep(const FormOperators& ops, std::size_t min_samples, std::uint64_t seed) {
  BochnerSweep sweep;
  const std::size_t n = ops.vector_count();
  if (n == 0) return sweep;
  std::mt19937_64 rng(seed);
  const std::size_t forms = (min_samples + n - 1) / n;
  for (std::size_t k = 0; k < std::max<std::size_t>(forms, 1); ++k) {
    const auto w = random_one_form(ops, rng);
    const auto lap = laplacian_one(ops, w);
    double balance = 0.0;
    for (std::uint32_t v = 0; v < n; ++v) {
      const auto t = bochner_terms(ops, w, lap, v);
      const double value = t.pairing - 0.5 * t.covariant - 0.5 * t.flat;
      sweep.max_deviation = std::max(sweep.max_deviation, std::fabs(value - t.expected));
      balance += t.flat;
      ++sweep.samples;
    }
    sweep.flat_balance = std::max(sweep.flat_balance, std::fabs(balance));
  }
  return sweep;
}

}  // namespace cellricci
