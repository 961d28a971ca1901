#include "cellricci/lly.hpp"

#include <algorithm>

#include "cellricci/errors.hpp"
#include "cellricci/forman.hpp"
#include "cellricci/parallel.hpp"
#include "cellricci/transport.hpp"

namespace cellricci {

namespace {

void require_vector(const CellComplex& c, FaceVector v) {
  if (!c.contains(v)) throw ComplexError("(" + c.label(v.tau) + " > " + c.label(v.sigma) + ") is not a vector");
}

std::int64_t pair_degree(const FaceGraph& graph, FaceVector v) {
  return std::max(graph.degree(v.tau), graph.degree(v.sigma));
}

}  // namespace

Rational alpha_ricci(const FaceGraph& graph, CellId a, CellId b, const Rational& alpha) {
  if (a == b) throw TransportError("alpha-Ricci curvature needs two distinct cells");
  if (alpha < Rational(0) || alpha >= Rational(1)) {
    throw TransportError("alpha = " + alpha.str() + " is outside [0, 1)");
  }
  const auto d = graph.distance(a, b);
  if (d == FaceGraph::kUnreachable) throw TransportError("cells lie in different components of G_M");
  const auto cert = wasserstein(graph, measure_alpha(graph, a, alpha), measure_alpha(graph, b, alpha));
  return Rational(1) - cert.value / Rational(d);
}

Rational h_value(const FaceGraph& graph, FaceVector v, const Rational& alpha) {
  return alpha_ricci(graph, v.tau, v.sigma, alpha) / (Rational(1) - alpha);
}

Rational lly_ricci(const FaceGraph& graph, FaceVector v, LimitOptions options) {
  require_vector(graph.complex(), v);
  const std::int64_t d = pair_degree(graph, v);
  Rational prev_alpha(d, d + 1);
  Rational alpha(2 * d, 2 * d + 1);
  Rational prev = h_value(graph, v, prev_alpha);
  Rational next = h_value(graph, v, alpha);
  for (int step = 0; next != prev; ++step) {
    if (step == options.max_refinements) {
      const auto& c = graph.complex();
      throw LimitNotStabilized("h(alpha) at (" + c.label(v.tau) + " > " + c.label(v.sigma) + ") still moves: h(" +
                               prev_alpha.str() + ") = " + prev.str() + ", h(" + alpha.str() + ") = " + next.str());
    }
    prev_alpha = alpha;
    prev = next;
    alpha = (Rational(1) + alpha) / Rational(2);
    next = h_value(graph, v, alpha);
  }
  return next;
}

Rational comparison_formula(const CellComplex& complex, FaceVector v) {
  const auto r = counting_check(complex, v);
  const Rational lo(std::min(r.d_tau, r.d_sigma));
  const Rational hi(std::max(r.d_tau, r.d_sigma));
  return Rational(r.ric) / hi + Rational(2) * (Rational(1) / lo - Rational(1) / hi) + lo / hi - Rational(1);
}

bool LLYRecord::h_monotone() const {
  for (std::size_t i = 1; i < kappa_alpha_samples.size(); ++i) {
    const auto& a = kappa_alpha_samples[i - 1];
    const auto& b = kappa_alpha_samples[i];
    if (b.kappa_alpha / (Rational(1) - b.alpha) < a.kappa_alpha / (Rational(1) - a.alpha)) return false;
  }
  return true;
}

bool LLYRecord::upper_bound_holds() const {
  return std::all_of(kappa_alpha_samples.begin(), kappa_alpha_samples.end(), [](const AlphaSample& s) {
    return s.kappa_alpha <= Rational(2) * (Rational(1) - s.alpha);
  });
}

LLYRecord lly_record(const FaceGraph& graph, FaceVector v, LimitOptions options) {
  LLYRecord r;
  r.vector = v;
  r.kappa = lly_ricci(graph, v, options);
  r.formula_value = comparison_formula(graph.complex(), v);
  const std::int64_t d = pair_degree(graph, v);
  std::vector<Rational> grid{Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(7, 8), Rational(d, d + 1)};
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (const auto& alpha : grid) r.kappa_alpha_samples.push_back({alpha, alpha_ricci(graph, v.tau, v.sigma, alpha)});
  return r;
}

ClosedFormCheck verify_closed_form(const FaceGraph& graph, unsigned jobs, LimitOptions options) {
  const auto& c = graph.complex();
  require_curvature_ready(c, jobs);
  const auto vectors = c.vectors();
  ClosedFormCheck out;
  out.records.resize(vectors.size());
  parallel_for(vectors.size(), jobs, [&](std::size_t i) { out.records[i] = lly_record(graph, vectors[i], options); });
  for (const auto& r : out.records) {
    if (!r.matches()) out.mismatches.push_back(r);
  }
  return out;
}

Rational global_lower_bound(const FaceGraph& graph, unsigned jobs, LimitOptions options) {
  const auto vectors = graph.complex().vectors();
  if (vectors.empty()) throw StructuralError("complex has no vectors");
  if (graph.component_count() != 1) throw StructuralError("G_M is disconnected");
  std::vector<Rational> kappa(vectors.size());
  parallel_for(vectors.size(), jobs, [&](std::size_t i) { kappa[i] = lly_ricci(graph, vectors[i], options); });
  return *std::min_element(kappa.begin(), kappa.end());
}

}  // namespace cellricci
