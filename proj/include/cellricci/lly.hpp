#pragma once

#include <utility>
#include <vector>

#include "cellricci/complex.hpp"
#include "cellricci/face_graph.hpp"
#include "cellricci/rational.hpp"

namespace cellricci {

/// kappa_alpha(a, b) = 1 - W(m^alpha_a, m^alpha_b) / d(a, b), for a != b in one
/// component and 0 <= alpha < 1.
Rational alpha_ricci(const FaceGraph& graph, CellId a, CellId b, const Rational& alpha);

/// h(alpha) = kappa_alpha / (1 - alpha) for a vector.
Rational h_value(const FaceGraph& graph, FaceVector v, const Rational& alpha);

struct LimitOptions {
  /// Maximum number of alpha <- (1 + alpha)/2 refinements after the two
  /// initial probes.
  int max_refinements = 8;
};

/// The limit of h(alpha) as alpha -> 1. Probes D/(D+1) and 2D/(2D+1) with
/// D = max(d_tau, d_sigma), accepts exact agreement of two consecutive probes,
/// and otherwise halves the distance to 1. Throws LimitNotStabilized past the
/// refinement cap.
Rational lly_ricci(const FaceGraph& graph, FaceVector v, LimitOptions options = {});

/// Ric/(d max) + 2(1/(d min) - 1/(d max)) + (d min)/(d max) - 1.
Rational comparison_formula(const CellComplex& complex, FaceVector v);

struct AlphaSample {
  Rational alpha;
  Rational kappa_alpha;
};

struct LLYRecord {
  FaceVector vector;
  Rational kappa;
  /// kappa_alpha on 1/4, 1/2, 3/4, 7/8 and D/(D+1), ascending, deduplicated.
  std::vector<AlphaSample> kappa_alpha_samples;
  Rational formula_value;

  bool matches() const { return kappa == formula_value; }
  /// h(alpha) non-decreasing across the samples.
  bool h_monotone() const;
  /// kappa_alpha <= 2(1 - alpha) on every sample (d = 1 for a vector).
  bool upper_bound_holds() const;
};

LLYRecord lly_record(const FaceGraph& graph, FaceVector v, LimitOptions options = {});

struct ClosedFormCheck {
  std::vector<LLYRecord> records;     // one per vector, in vector order
  std::vector<LLYRecord> mismatches;  // records with kappa != formula_value

  bool ok() const { return mismatches.empty(); }
};

/// Validates the complex (StructuralError on failure) and compares the limit
/// curvature with the closed form on every vector.
ClosedFormCheck verify_closed_form(const FaceGraph& graph, unsigned jobs = 1, LimitOptions options = {});

/// Minimum of lly_ricci over all vectors; a lower bound on kappa for every
/// pair of cells. Requires a non-empty, connected G_M.
Rational global_lower_bound(const FaceGraph& graph, unsigned jobs = 1, LimitOptions options = {});

}  // namespace cellricci
