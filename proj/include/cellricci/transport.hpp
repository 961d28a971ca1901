#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cellricci/complex.hpp"
#include "cellricci/face_graph.hpp"
#include "cellricci/rational.hpp"

namespace cellricci {

/// Finitely supported probability measure on cells, kept sorted by cell id
/// with strictly positive masses.
class Measure {
 public:
  Measure() = default;
  /// Merges duplicate cells, drops zero masses and checks non-negativity and
  /// total mass 1 (TransportError otherwise).
  explicit Measure(std::vector<std::pair<CellId, Rational>> masses);

  static Measure point(CellId cell) { return Measure({{cell, Rational(1)}}); }

  std::span<const std::pair<CellId, Rational>> support() const { return masses_; }
  Rational mass(CellId cell) const;
  friend bool operator==(const Measure&, const Measure&) = default;

 private:
  std::vector<std::pair<CellId, Rational>> masses_;
};

/// m^alpha_sigma: alpha at sigma and (1 - alpha)/d_sigma on every face and
/// coface. Requires 0 <= alpha <= 1 and d_sigma >= 1 (TransportError).
Measure measure_alpha(const FaceGraph& graph, CellId sigma, const Rational& alpha);

struct Flow {
  CellId source;
  CellId target;
  Rational mass;
  friend bool operator==(const Flow&, const Flow&) = default;
};

struct Coupling {
  std::vector<Flow> flow;  // sorted by (source, target), positive masses
  Measure source;
  Measure target;

  /// Sum of mass times graph distance.
  Rational cost(const FaceGraph& graph) const;
  /// Throws TransportError naming the first cell whose row or column sum
  /// differs from its marginal.
  void check_marginals() const;
};

struct TransportCertificate {
  Rational value;
  Coupling optimal_coupling;
  /// c-transform potential on the union of both supports; 1-Lipschitz and
  /// attains sum f (mu - nu) = value.
  std::vector<std::pair<CellId, Rational>> dual_witness;
  Rational primal_cost;
  Rational dual_value;
};

/// Exact W1 distance by successive shortest paths over the bipartite support
/// graph. The returned certificate satisfies primal_cost == dual_value == value
/// and is re-checked before returning. Throws TransportError if the supports
/// are not in one component of G_M.
TransportCertificate wasserstein(const FaceGraph& graph, const Measure& mu, const Measure& nu);

/// Table used for an explicit coupling between m^alpha_tau and m^alpha_sigma.
enum class CouplingTable {
  kA,             // d_sigma >= d_tau, both sibling counts positive
  kAPrime,        // d_tau > d_sigma, both sibling counts positive
  kParkedSigma,   // d_sigma >= d_tau, some sibling count zero
  kParkedTau,     // d_tau > d_sigma, n_sigma zero
};

const char* coupling_table_name(CouplingTable table);

/// A coupling entry as an affine function c0 + c1 * alpha.
struct AffineEntry {
  CellId source;
  CellId target;
  Rational c0;
  Rational c1;
  std::string name;

  Rational at(const Rational& alpha) const { return c0 + c1 * alpha; }
};

struct ExplicitCoupling {
  CouplingTable table;
  std::vector<AffineEntry> entries;
  /// Smallest alpha in [0, 1) for which every entry lies in [0, 1];
  /// nullopt when no such alpha exists.
  std::optional<Rational> min_alpha;
  Coupling coupling;  // entries evaluated at the requested alpha
};

/// Symbolic entries only; does not need alpha.
ExplicitCoupling explicit_coupling_entries(const FaceGraph& graph, FaceVector v);

/// Materializes the explicit coupling at alpha and checks its marginals.
/// Throws TransportError naming the entry if alpha is outside the feasible
/// range, StructuralError if the counting identity fails at v.
ExplicitCoupling explicit_coupling(const FaceGraph& graph, FaceVector v, const Rational& alpha);

/// alpha + (1 - alpha)(3 - 2/d_min - ((d_sigma - n_sigma) + (d_tau - n_tau))/d_max).
Rational coupling_cost_formula(const FaceGraph& graph, FaceVector v, const Rational& alpha);

/// Integer dual witness for W(m_tau, m_sigma).
struct DualWitness {
  /// true: the g table (d_tau >= d_sigma), evaluated against m_sigma - m_tau.
  /// false: the f table, evaluated against m_tau - m_sigma.
  bool uses_g = false;
  /// Table values on Gamma(tau) and Gamma(sigma), sorted by cell id.
  std::vector<std::pair<CellId, int>> table;
  /// Tight lower extension over the component of tau; nullopt elsewhere.
  std::vector<std::optional<int>> extended;
  /// Whether the table itself is 1-Lipschitz (equivalently, the extension
  /// agrees with it on every base point).
  bool raw_lipschitz = false;

  /// The lower bound on W(m^alpha_tau, m^alpha_sigma) given by the extension.
  Rational dual_value(const FaceGraph& graph, FaceVector v, const Rational& alpha) const;
};

/// Builds the table, extends it, and verifies the extension edge by edge over
/// the component (StructuralError on failure).
DualWitness integer_dual_witness(const FaceGraph& graph, FaceVector v);

/// alpha + (1 - alpha)(-Ric/d_max + 2(1/d_max - 1/d_min) - d_min/d_max + 2).
Rational dual_value_formula(const FaceGraph& graph, FaceVector v, const Rational& alpha);

}  // namespace cellricci
