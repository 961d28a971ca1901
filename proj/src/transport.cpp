#include "cellricci/transport.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>

#include "cellricci/errors.hpp"
#include "cellricci/forman.hpp"

namespace cellricci {

namespace {

std::string vector_text(const CellComplex& c, FaceVector v) {
  return "(" + c.label(v.tau) + " > " + c.label(v.sigma) + ")";
}

std::int64_t checked_distance(const FaceGraph& graph, CellId a, CellId b) {
  const auto d = graph.distance(a, b);
  if (d == FaceGraph::kUnreachable) {
    const auto& c = graph.complex();
    throw TransportError("cells " + c.label(a) + " and " + c.label(b) + " lie in different components of G_M");
  }
  return d;
}

// The local picture around a vector (tau > sigma): sibling faces sigma2 of
// tau, sibling cofaces tau2 of sigma, and the diamond partners through N2.
struct Local {
  CellId tau;
  CellId sigma;
  std::int64_t d_tau = 0;
  std::int64_t d_sigma = 0;
  std::int64_t n_tau = 0;
  std::int64_t n_sigma = 0;
  std::int64_t ric = 0;
  std::vector<CellId> sigma2;
  std::vector<CellId> tau2;
  std::vector<std::pair<CellId, CellId>> upper;  // (mu, tau1)
  std::vector<std::pair<CellId, CellId>> lower;  // (sigma1, rho)
};

Local local_structure(const FaceGraph& graph, FaceVector v) {
  const auto& c = graph.complex();
  const auto record = counting_check(c, v);
  const auto sets = neighbor_sets(c, v);
  Local l;
  l.tau = v.tau;
  l.sigma = v.sigma;
  l.d_tau = record.d_tau;
  l.d_sigma = record.d_sigma;
  l.n_tau = record.n_tau;
  l.n_sigma = record.n_sigma;
  l.ric = record.ric;
  for (const auto& u : sets.zero) {
    if (u.tau == v.tau) {
      l.sigma2.push_back(u.sigma);
    } else {
      l.tau2.push_back(u.tau);
    }
  }
  const int top = c.dim(v.tau) + 1;
  for (const auto& u : sets.two) {
    if (c.dim(u.tau) == top) {
      l.upper.emplace_back(u.tau, u.sigma);
    } else {
      l.lower.emplace_back(u.tau, u.sigma);
    }
  }
  return l;
}

struct Affine {
  Rational c0;
  Rational c1;

  friend Affine operator+(const Affine& x, const Affine& y) { return {x.c0 + y.c0, x.c1 + y.c1}; }
  friend Affine operator-(const Affine& x, const Affine& y) { return {x.c0 - y.c0, x.c1 - y.c1}; }
  friend Affine operator/(const Affine& x, std::int64_t k) { return {x.c0 / Rational(k), x.c1 / Rational(k)}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
};

Affine spread(std::int64_t degree) { return {Rational(1, degree), Rational(-1, degree)}; }

std::vector<Flow> merge_flows(std::vector<Flow> flows) {
  std::sort(flows.begin(), flows.end(), [](const Flow& x, const Flow& y) {
    return std::pair(x.source, x.target) < std::pair(y.source, y.target);
  });
  std::vector<Flow> out;
  for (auto& f : flows) {
    if (!out.empty() && out.back().source == f.source && out.back().target == f.target) {
      out.back().mass += f.mass;
    } else {
      out.push_back(f);
    }
  }
  std::erase_if(out, [](const Flow& f) { return f.mass.is_zero(); });
  return out;
}

}  // namespace

Measure::Measure(std::vector<std::pair<CellId, Rational>> masses) {
  std::sort(masses.begin(), masses.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Rational total;
  for (auto& [cell, m] : masses) {
    if (m.sign() < 0) throw TransportError("negative mass " + m.str() + " at cell " + std::to_string(cell.index));
    total += m;
    if (!masses_.empty() && masses_.back().first == cell) {
      masses_.back().second += m;
    } else {
      masses_.emplace_back(cell, m);
    }
  }
  std::erase_if(masses_, [](const auto& p) { return p.second.is_zero(); });
  if (total != Rational(1)) throw TransportError("total mass is " + total.str() + ", expected 1");
}

Rational Measure::mass(CellId cell) const {
  auto it = std::lower_bound(masses_.begin(), masses_.end(), cell,
                             [](const auto& p, CellId id) { return p.first < id; });
  return it != masses_.end() && it->first == cell ? it->second : Rational();
}

Measure measure_alpha(const FaceGraph& graph, CellId sigma, const Rational& alpha) {
  if (alpha < Rational(0) || alpha > Rational(1)) {
    throw TransportError("alpha = " + alpha.str() + " is outside [0, 1]");
  }
  const int d = graph.degree(sigma);
  if (d == 0) {
    throw TransportError("m^alpha is undefined at isolated cell " + graph.complex().label(sigma));
  }
  std::vector<std::pair<CellId, Rational>> masses{{sigma, alpha}};
  const Rational share = (Rational(1) - alpha) / Rational(d);
  for (auto n : graph.neighbors(sigma)) masses.emplace_back(n, share);
  return Measure(std::move(masses));
}

Rational Coupling::cost(const FaceGraph& graph) const {
  Rational total;
  for (const auto& f : flow) total += f.mass * Rational(checked_distance(graph, f.source, f.target));
  return total;
}

void Coupling::check_marginals() const {
  std::map<CellId, Rational> rows;
  std::map<CellId, Rational> cols;
  for (const auto& f : flow) {
    if (f.mass.sign() < 0) throw TransportError("negative flow " + f.mass.str());
    rows[f.source] += f.mass;
    cols[f.target] += f.mass;
  }
  for (const auto& [cell, m] : source.support()) rows.try_emplace(cell);
  for (const auto& [cell, m] : target.support()) cols.try_emplace(cell);
  for (const auto& [cell, sum] : rows) {
    if (sum != source.mass(cell)) {
      throw TransportError("row sum " + sum.str() + " at cell " + std::to_string(cell.index) + " differs from " +
                           source.mass(cell).str());
    }
  }
  for (const auto& [cell, sum] : cols) {
    if (sum != target.mass(cell)) {
      throw TransportError("column sum " + sum.str() + " at cell " + std::to_string(cell.index) + " differs from " +
                           target.mass(cell).str());
    }
  }
}

TransportCertificate wasserstein(const FaceGraph& graph, const Measure& mu, const Measure& nu) {
  const auto src = mu.support();
  const auto dst = nu.support();
  if (src.empty() || dst.empty()) throw TransportError("empty measure");
  const std::size_t m = src.size();
  const std::size_t n = dst.size();

  std::vector<std::int64_t> cost(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = checked_distance(graph, src[i].first, dst[j].first);
  }
  std::vector<Rational> supply(m);
  std::vector<Rational> demand(n);
  for (std::size_t i = 0; i < m; ++i) supply[i] = src[i].second;
  for (std::size_t j = 0; j < n; ++j) demand[j] = dst[j].second;
  std::vector<Rational> x(m * n);

  // Successive shortest paths: nodes 0 = s, 1..m sources, m+1..m+n sinks,
  // m+n+1 = t. Costs are integers, so Bellman-Ford runs over int64.
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::size_t nodes = m + n + 2;
  const std::size_t s = 0;
  const std::size_t t = m + n + 1;
  auto any_supply = [&] { return std::any_of(supply.begin(), supply.end(), [](const Rational& r) { return !r.is_zero(); }); };
  while (any_supply()) {
    std::vector<std::int64_t> dist(nodes, kInf);
    std::vector<std::size_t> parent(nodes, nodes);
    dist[s] = 0;
    for (std::size_t round = 0; round + 1 < nodes; ++round) {
      bool changed = false;
      auto relax = [&](std::size_t u, std::size_t w, std::int64_t c) {
        if (dist[u] != kInf && dist[u] + c < dist[w]) {
          dist[w] = dist[u] + c;
          parent[w] = u;
          changed = true;
        }
      };
      for (std::size_t i = 0; i < m; ++i) {
        if (!supply[i].is_zero()) relax(s, 1 + i, 0);
      }
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          relax(1 + i, 1 + m + j, cost[i * n + j]);
          if (!x[i * n + j].is_zero()) relax(1 + m + j, 1 + i, -cost[i * n + j]);
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!demand[j].is_zero()) relax(1 + m + j, t, 0);
      }
      if (!changed) break;
    }
    if (dist[t] == kInf) throw TransportError("no augmenting path; masses are infeasible");

    std::vector<std::size_t> path{t};
    while (path.back() != s) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    // path = s, S_i, T_j, S_i', T_j', ..., t
    Rational delta = min(supply[path[1] - 1], demand[path[path.size() - 2] - 1 - m]);
    for (std::size_t k = 2; k + 2 < path.size(); k += 2) {
      const std::size_t j = path[k] - 1 - m;
      const std::size_t i = path[k + 1] - 1;
      delta = min(delta, x[i * n + j]);
    }
    supply[path[1] - 1] -= delta;
    demand[path[path.size() - 2] - 1 - m] -= delta;
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      const std::size_t u = path[k];
      const std::size_t w = path[k + 1];
      if (w == t) break;
      if (u <= m) {
        x[(u - 1) * n + (w - 1 - m)] += delta;
      } else {
        x[(w - 1) * n + (u - 1 - m)] -= delta;
      }
    }
  }
  if (std::any_of(demand.begin(), demand.end(), [](const Rational& r) { return !r.is_zero(); })) {
    throw TransportError("unmet demand after transport");
  }

  // Potentials on the final residual network (no negative cycles at optimum).
  std::vector<std::int64_t> pi(m + n, 0);
  for (std::size_t round = 0; round <= m + n; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t c = cost[i * n + j];
        if (pi[i] + c < pi[m + j]) {
          pi[m + j] = pi[i] + c;
          changed = true;
        }
        if (!x[i * n + j].is_zero() && pi[m + j] - c < pi[i]) {
          pi[i] = pi[m + j] - c;
          changed = true;
        }
      }
    }
    if (!changed) break;
    if (round == m + n) throw IdentityError("negative residual cycle: transport plan is not optimal");
  }

  TransportCertificate cert;
  std::vector<Flow> flows;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!x[i * n + j].is_zero()) flows.push_back({src[i].first, dst[j].first, x[i * n + j]});
    }
  }
  cert.optimal_coupling = {merge_flows(std::move(flows)), mu, nu};
  cert.optimal_coupling.check_marginals();
  cert.primal_cost = cert.optimal_coupling.cost(graph);

  // c-transform of the sink potentials: f(c) = min_j d(c, T_j) - pi(T_j).
  std::vector<CellId> cells;
  for (const auto& [c, w] : src) cells.push_back(c);
  for (const auto& [c, w] : dst) cells.push_back(c);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  for (auto c : cells) {
    std::int64_t best = kInf;
    for (std::size_t j = 0; j < n; ++j) best = std::min(best, checked_distance(graph, c, dst[j].first) - pi[m + j]);
    cert.dual_witness.emplace_back(c, Rational(best));
  }
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      const Rational gap = abs(cert.dual_witness[a].second - cert.dual_witness[b].second);
      if (gap > Rational(checked_distance(graph, cells[a], cells[b]))) {
        throw IdentityError("dual witness is not 1-Lipschitz");
      }
    }
  }
  for (const auto& [c, f] : cert.dual_witness) cert.dual_value += f * (mu.mass(c) - nu.mass(c));
  if (cert.primal_cost != cert.dual_value) {
    throw IdentityError("duality gap: primal " + cert.primal_cost.str() + " vs dual " + cert.dual_value.str());
  }
  cert.value = cert.primal_cost;
  return cert;
}

const char* coupling_table_name(CouplingTable table) {
  switch (table) {
    case CouplingTable::kA:
      return "A";
    case CouplingTable::kAPrime:
      return "A'";
    case CouplingTable::kParkedSigma:
      return "parked-sigma";
    case CouplingTable::kParkedTau:
      return "parked-tau";
  }
  return "?";
}

ExplicitCoupling explicit_coupling_entries(const FaceGraph& graph, FaceVector v) {
  const auto& c = graph.complex();
  const Local l = local_structure(graph, v);
  const Affine a = spread(l.d_tau);    // m_tau on each neighbour of tau
  const Affine b = spread(l.d_sigma);  // m_sigma on each neighbour of sigma
  const Affine alpha{Rational(0), Rational(1)};
  const bool sigma_heavy = l.d_sigma >= l.d_tau;
  const bool siblings = l.n_tau >= 1 && l.n_sigma >= 1;

  ExplicitCoupling out;
  out.table = siblings ? (sigma_heavy ? CouplingTable::kA : CouplingTable::kAPrime)
                       : (sigma_heavy ? CouplingTable::kParkedSigma : CouplingTable::kParkedTau);
  const std::string prefix = coupling_table_name(out.table);
  auto add = [&](CellId src, CellId dst, const Affine& e) {
    out.entries.push_back({src, dst, e.c0, e.c1, prefix + "(" + c.label(src) + "," + c.label(dst) + ")"});
  };
  auto require = [&](bool ok) {
    if (!ok) throw StructuralError("sibling counts at " + vector_text(c, v) + " contradict the counting identity");
  };

  switch (out.table) {
    case CouplingTable::kA:
      add(l.tau, l.sigma, alpha);
      for (auto s2 : l.sigma2) add(s2, l.tau, b / l.n_tau);
      for (auto t2 : l.tau2) add(l.sigma, t2, a / l.n_sigma);
      for (const auto& [mu, tau1] : l.upper) {
        add(mu, tau1, b);
        for (auto t2 : l.tau2) add(mu, t2, (a - b) / l.n_sigma);
      }
      for (const auto& [sigma1, rho] : l.lower) {
        add(sigma1, rho, b);
        for (auto t2 : l.tau2) add(sigma1, t2, (a - b) / l.n_sigma);
      }
      for (auto s2 : l.sigma2) {
        for (auto t2 : l.tau2) add(s2, t2, (a - b / l.n_tau) / l.n_sigma);
      }
      break;
    case CouplingTable::kAPrime:
      add(l.tau, l.sigma, alpha);
      for (auto s2 : l.sigma2) add(s2, l.tau, b / l.n_tau);
      for (auto t2 : l.tau2) add(l.sigma, t2, a / l.n_sigma);
      for (const auto& [mu, tau1] : l.upper) add(mu, tau1, a);
      for (const auto& [sigma1, rho] : l.lower) add(sigma1, rho, a);
      for (auto s2 : l.sigma2) {
        for (const auto& [mu, tau1] : l.upper) add(s2, tau1, (b - a) / l.n_tau);
        for (const auto& [sigma1, rho] : l.lower) add(s2, rho, (b - a) / l.n_tau);
        for (auto t2 : l.tau2) add(s2, t2, (b - a / l.n_sigma) / l.n_tau);
      }
      break;
    case CouplingTable::kParkedSigma: {
      // tau keeps part of its point mass; every surplus a - b goes to the tau2.
      add(l.tau, l.tau, b);
      add(l.tau, l.sigma, alpha - b);
      add(l.sigma, l.sigma, b);
      auto to_tau2 = [&](CellId src, const Affine& amount) {
        if (l.n_sigma == 0) {
          require(amount.is_zero());
          return;
        }
        for (auto t2 : l.tau2) add(src, t2, amount / l.n_sigma);
      };
      to_tau2(l.sigma, a - b);
      for (const auto& [mu, tau1] : l.upper) {
        add(mu, tau1, b);
        to_tau2(mu, a - b);
      }
      for (const auto& [sigma1, rho] : l.lower) {
        add(sigma1, rho, b);
        to_tau2(sigma1, a - b);
      }
      for (auto s2 : l.sigma2) to_tau2(s2, a);
      break;
    }
    case CouplingTable::kParkedTau: {
      // sigma keeps its neighbour mass; the sigma2 cover every deficit.
      require(l.n_tau >= 1);
      add(l.sigma, l.sigma, a);
      add(l.tau, l.sigma, alpha - a);
      add(l.tau, l.tau, a);
      std::vector<std::pair<CellId, Affine>> deficits{{l.tau, b - a}};
      for (const auto& [mu, tau1] : l.upper) {
        add(mu, tau1, a);
        deficits.emplace_back(tau1, b - a);
      }
      for (const auto& [sigma1, rho] : l.lower) {
        add(sigma1, rho, a);
        deficits.emplace_back(rho, b - a);
      }
      for (auto t2 : l.tau2) deficits.emplace_back(t2, b);
      for (auto s2 : l.sigma2) {
        for (const auto& [cell, amount] : deficits) add(s2, cell, amount / l.n_tau);
      }
      break;
    }
  }

  // Feasible alpha interval for 0 <= c0 + c1 alpha <= 1 over [0, 1].
  Rational lo(0);
  Rational hi(1);
  bool empty = false;
  for (const auto& e : out.entries) {
    for (const Rational& bound : {Rational(0), Rational(1)}) {
      const bool lower_bound = bound.is_zero();
      if (e.c1.is_zero()) {
        if (lower_bound ? e.c0 < bound : e.c0 > bound) empty = true;
        continue;
      }
      const Rational root = (bound - e.c0) / e.c1;
      // c0 + c1 alpha >= 0 is alpha >= root when c1 > 0; <= 1 flips it.
      if ((e.c1.sign() > 0) == lower_bound) {
        lo = max(lo, root);
      } else {
        hi = min(hi, root);
      }
    }
  }
  if (!empty && lo <= hi && lo < Rational(1)) out.min_alpha = lo;
  return out;
}

ExplicitCoupling explicit_coupling(const FaceGraph& graph, FaceVector v, const Rational& alpha) {
  auto out = explicit_coupling_entries(graph, v);
  std::vector<Flow> flows;
  for (const auto& e : out.entries) {
    const Rational value = e.at(alpha);
    if (value < Rational(0) || value > Rational(1)) {
      throw TransportError("entry " + e.name + " = " + value.str() + " lies outside [0, 1] at alpha = " +
                           alpha.str() + (out.min_alpha ? "; minimal feasible alpha is " + out.min_alpha->str()
                                                        : "; no alpha is feasible"));
    }
    flows.push_back({e.source, e.target, value});
  }
  out.coupling = {merge_flows(std::move(flows)), measure_alpha(graph, v.tau, alpha),
                  measure_alpha(graph, v.sigma, alpha)};
  out.coupling.check_marginals();
  return out;
}

Rational coupling_cost_formula(const FaceGraph& graph, FaceVector v, const Rational& alpha) {
  const Local l = local_structure(graph, v);
  const Rational dmin(std::min(l.d_tau, l.d_sigma));
  const Rational dmax(std::max(l.d_tau, l.d_sigma));
  const Rational bracket =
      Rational(3) - Rational(2) / dmin - Rational((l.d_sigma - l.n_sigma) + (l.d_tau - l.n_tau)) / dmax;
  return alpha + (Rational(1) - alpha) * bracket;
}

Rational dual_value_formula(const FaceGraph& graph, FaceVector v, const Rational& alpha) {
  const Local l = local_structure(graph, v);
  const Rational dmin(std::min(l.d_tau, l.d_sigma));
  const Rational dmax(std::max(l.d_tau, l.d_sigma));
  const Rational bracket = -Rational(l.ric) / dmax + Rational(2) * (Rational(1) / dmax - Rational(1) / dmin) -
                           dmin / dmax + Rational(2);
  return alpha + (Rational(1) - alpha) * bracket;
}

DualWitness integer_dual_witness(const FaceGraph& graph, FaceVector v) {
  const auto& c = graph.complex();
  const Local l = local_structure(graph, v);
  DualWitness w;
  w.uses_g = l.d_tau >= l.d_sigma;

  std::map<CellId, int> table;
  auto set = [&](CellId cell, int f_value, int g_value) {
    const int value = w.uses_g ? g_value : f_value;
    auto [it, inserted] = table.emplace(cell, value);
    if (!inserted && it->second != value) {
      throw StructuralError("cell " + c.label(cell) + " falls in two witness cases at " + vector_text(c, v));
    }
  };
  set(l.tau, 1, 0);
  set(l.sigma, 0, 1);
  for (const auto& [mu, tau1] : l.upper) {
    set(mu, 2, 1);
    set(tau1, 1, 2);
  }
  for (const auto& [sigma1, rho] : l.lower) {
    set(sigma1, 2, 1);
    set(rho, 1, 2);
  }
  for (auto s2 : l.sigma2) set(s2, 2, -1);
  for (auto t2 : l.tau2) set(t2, -1, 2);
  for (auto n : graph.neighbors(l.tau)) {
    if (!table.contains(n)) throw StructuralError("witness table misses " + c.label(n) + " at " + vector_text(c, v));
  }
  for (auto n : graph.neighbors(l.sigma)) {
    if (!table.contains(n)) throw StructuralError("witness table misses " + c.label(n) + " at " + vector_text(c, v));
  }
  w.table.assign(table.begin(), table.end());

  w.extended.assign(graph.size(), std::nullopt);
  const auto component = graph.component(l.tau);
  for (std::uint32_t i = 0; i < graph.size(); ++i) {
    const CellId x{i};
    if (graph.component(x) != component) continue;
    int best = std::numeric_limits<int>::max();
    for (const auto& [base, value] : w.table) best = std::min(best, value + static_cast<int>(graph.distance(x, base)));
    w.extended[i] = best;
  }
  for (std::uint32_t i = 0; i < graph.size(); ++i) {
    if (!w.extended[i]) continue;
    for (auto n : graph.neighbors(CellId{i})) {
      if (std::abs(*w.extended[i] - *w.extended[n.index]) > 1) {
        throw StructuralError("extended witness is not 1-Lipschitz across " + c.label(CellId{i}) + " - " +
                              c.label(n));
      }
    }
  }
  w.raw_lipschitz = std::all_of(w.table.begin(), w.table.end(),
                                [&](const auto& p) { return *w.extended[p.first.index] == p.second; });
  return w;
}

Rational DualWitness::dual_value(const FaceGraph& graph, FaceVector v, const Rational& alpha) const {
  const Measure m_tau = measure_alpha(graph, v.tau, alpha);
  const Measure m_sigma = measure_alpha(graph, v.sigma, alpha);
  Rational total;
  for (const auto& [cell, value] : table) {
    const Rational diff = uses_g ? m_sigma.mass(cell) - m_tau.mass(cell) : m_tau.mass(cell) - m_sigma.mass(cell);
    total += Rational(*extended[cell.index]) * diff;
  }
  return total;
}

}  // namespace cellricci
