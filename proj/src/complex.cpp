#include "cellricci/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cellricci/errors.hpp"

namespace cellricci {

std::optional<CellId> CellComplex::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

CellId CellComplex::at(std::string_view label) const {
  if (auto id = find(label)) return *id;
  throw ComplexError("unknown cell '" + std::string(label) + "'");
}

std::optional<std::uint32_t> CellComplex::vector_index(FaceVector v) const {
  if (v.tau.index >= cells_.size() || v.sigma.index >= cells_.size()) return std::nullopt;
  const auto& fs = faces_[v.tau.index];
  auto it = std::lower_bound(fs.begin(), fs.end(), v.sigma,
                             [](const Incidence& inc, CellId id) { return inc.cell < id; });
  if (it == fs.end() || it->cell != v.sigma) return std::nullopt;
  return it->vector;
}

int CellComplex::sign(FaceVector v) const {
  auto idx = vector_index(v);
  if (!idx) throw ComplexError("not a vector of the complex");
  return signs_[*idx];
}

std::vector<std::size_t> CellComplex::f_vector() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(dimension_ + 1), 0);
  for (const auto& c : cells_) ++counts[static_cast<std::size_t>(c.dim)];
  return counts;
}

std::vector<IncidencePair> CellComplex::incidences() const {
  std::vector<IncidencePair> out;
  out.reserve(vectors_.size());
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    out.push_back({vectors_[i].tau, vectors_[i].sigma, signs_[i]});
  }
  return out;
}

bool operator==(const CellComplex& a, const CellComplex& b) {
  if (a.cells_.size() != b.cells_.size() || a.vectors_ != b.vectors_ || a.signs_ != b.signs_) {
    return false;
  }
  for (std::size_t i = 0; i < a.cells_.size(); ++i) {
    if (a.cells_[i].dim != b.cells_[i].dim || a.cells_[i].label != b.cells_[i].label) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ComplexBuilder::Handle ComplexBuilder::add_cell(std::string label, int dim) {
  if (dim < 0) throw ComplexError("cell '" + label + "' has negative dimension");
  if (label.empty() || label.find_first_of(" \t\r\n#") != std::string::npos) {
    throw ComplexError("cell label '" + label + "' must be a non-empty token without whitespace or '#'");
  }
  if (by_label_.count(label)) throw ComplexError("duplicate cell id '" + label + "'");
  const Handle h = labels_.size();
  by_label_.emplace(label, h);
  labels_.push_back(std::move(label));
  dims_.push_back(dim);
  return h;
}

std::optional<ComplexBuilder::Handle> ComplexBuilder::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

void ComplexBuilder::add_incidence(Handle tau, Handle sigma, int sign) {
  if (tau >= labels_.size() || sigma >= labels_.size()) throw ComplexError("incidence references an unknown cell");
  if (sign != 1 && sign != -1) {
    throw ComplexError("incidence sign for (" + labels_[tau] + " > " + labels_[sigma] + ") must be +1 or -1");
  }
  if (dims_[tau] != dims_[sigma] + 1) {
    throw ComplexError("dimension mismatch: " + labels_[tau] + " has dim " + std::to_string(dims_[tau]) + ", " +
                       labels_[sigma] + " has dim " + std::to_string(dims_[sigma]));
  }
  const std::uint64_t key = (static_cast<std::uint64_t>(tau) << 32) | static_cast<std::uint64_t>(sigma);
  if (!pair_seen_.emplace(key, incidences_.size()).second) {
    throw ComplexError("duplicate incidence (" + labels_[tau] + " > " + labels_[sigma] + ")");
  }
  incidences_.push_back({tau, sigma, sign});
}

CellComplex ComplexBuilder::build() && {
  const std::size_t n = labels_.size();
  std::vector<Handle> order(n);
  std::iota(order.begin(), order.end(), Handle{0});
  std::stable_sort(order.begin(), order.end(), [&](Handle a, Handle b) { return dims_[a] < dims_[b]; });
  std::vector<CellId> remap(n);
  for (std::size_t i = 0; i < n; ++i) remap[order[i]] = CellId{static_cast<std::uint32_t>(i)};

  CellComplex c;
  c.cells_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Handle h = order[i];
    c.cells_[i] = Cell{CellId{static_cast<std::uint32_t>(i)}, dims_[h], std::move(labels_[h])};
    c.by_label_.emplace(c.cells_[i].label, c.cells_[i].id);
    c.dimension_ = std::max(c.dimension_, dims_[h]);
  }

  std::vector<IncidencePair> pairs;
  pairs.reserve(incidences_.size());
  for (const auto& p : incidences_) pairs.push_back({remap[p.tau], remap[p.sigma], p.sign});
  std::sort(pairs.begin(), pairs.end(), [](const IncidencePair& a, const IncidencePair& b) {
    return FaceVector{a.tau, a.sigma} < FaceVector{b.tau, b.sigma};
  });

  c.faces_.assign(n, {});
  c.cofaces_.assign(n, {});
  c.vectors_.reserve(pairs.size());
  c.signs_.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    const auto vi = static_cast<std::uint32_t>(i);
    c.vectors_.push_back({p.tau, p.sigma});
    c.signs_.push_back(p.sign);
    c.faces_[p.tau.index].push_back({p.sigma, p.sign, vi});
    c.cofaces_[p.sigma.index].push_back({p.tau, p.sign, vi});
  }
  // faces_ are already sorted by sigma; cofaces_ need sorting by tau.
  for (auto& cf : c.cofaces_) {
    std::sort(cf.begin(), cf.end(), [](const Incidence& a, const Incidence& b) { return a.cell < b.cell; });
  }
  return c;
}

// ---------------------------------------------------------------------------

std::vector<CellId> closure(const CellComplex& complex, CellId id) {
  std::vector<CellId> out{id};
  std::vector<CellId> frontier{id};
  while (!frontier.empty()) {
    std::vector<CellId> next;
    for (CellId c : frontier) {
      for (const auto& f : complex.faces(c)) next.push_back(f.cell);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck& ValidationReport::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no validation check named '" + std::string(name) + "'");
}

namespace {

void fail(ValidationCheck& check, std::string message) {
  check.passed = false;
  // A broken fixture can produce thousands of identical complaints.
  if (check.violations.size() < 64) check.violations.push_back(std::move(message));
}

}  // namespace

ValidationReport validate(const CellComplex& complex) {
  ValidationCheck boundary;
  boundary.name = "boundary-squared-zero";
  ValidationCheck diamond;
  diamond.name = "diamond";
  ValidationCheck quasi;
  quasi.name = "quasiconvex";
  ValidationCheck facets;
  facets.name = "facets";
  ValidationCheck isolated;
  isolated.name = "isolated-cells";

  for (const auto& mu : complex.cells()) {
    // rho -> (signed sum, number of intermediate cells)
    std::map<CellId, std::pair<int, int>> two_step;
    for (const auto& x : complex.faces(mu.id)) {
      for (const auto& rho : complex.faces(x.cell)) {
        auto& [sum, count] = two_step[rho.cell];
        sum += x.sign * rho.sign;
        ++count;
      }
    }
    for (const auto& [rho, acc] : two_step) {
      if (acc.first != 0) {
        fail(boundary, "coefficient " + std::to_string(acc.first) + " of " + complex.label(rho) + " in dd(" +
                           mu.label + ")");
      }
      if (acc.second != 2) {
        fail(diamond, std::to_string(acc.second) + " cells between " + complex.label(rho) + " and " + mu.label);
      }
    }
    if (mu.dim >= 1 && complex.faces(mu.id).size() < 2) {
      fail(facets, mu.label + " has " + std::to_string(complex.faces(mu.id).size()) + " facet(s)");
    }
    if (complex.faces(mu.id).empty() && complex.cofaces(mu.id).empty()) {
      fail(isolated, mu.label + " has no faces and no cofaces");
    }
  }

  std::vector<std::vector<CellId>> closures(complex.size());
  auto closure_of = [&](CellId id) -> const std::vector<CellId>& {
    auto& cl = closures[id.index];
    if (cl.empty()) cl = closure(complex, id);
    return cl;
  };
  for (const auto& sigma : complex.cells()) {
    const auto cf = complex.cofaces(sigma.id);
    for (std::size_t i = 0; i < cf.size(); ++i) {
      for (std::size_t j = i + 1; j < cf.size(); ++j) {
        const auto& a = closure_of(cf[i].cell);
        const auto& b = closure_of(cf[j].cell);
        std::vector<CellId> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common != closure_of(sigma.id)) {
          fail(quasi, "closures of " + complex.label(cf[i].cell) + " and " + complex.label(cf[j].cell) +
                          " meet in more than the closure of " + sigma.label);
        }
      }
    }
  }

  ValidationReport report;
  report.checks = {std::move(boundary), std::move(diamond), std::move(quasi), std::move(facets),
                   std::move(isolated)};
  return report;
}

}  // namespace cellricci
