#include "cellricci/forman.hpp"

#include <algorithm>
#include <string>

#include "cellricci/errors.hpp"
#include "cellricci/parallel.hpp"

namespace cellricci {

namespace {

bool share_any(std::span<const Incidence> a, std::span<const Incidence> b) {
  // Both lists are sorted by cell id.
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->cell == j->cell) return true;
    if (i->cell < j->cell) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

bool has_face(const CellComplex& c, CellId cell, CellId face) {
  const auto fs = c.faces(cell);
  return std::any_of(fs.begin(), fs.end(), [&](const Incidence& f) { return f.cell == face; });
}

std::string describe(const CellComplex& c, FaceVector v) {
  return "(" + c.label(v.tau) + " > " + c.label(v.sigma) + ")";
}

}  // namespace

NeighborSets neighbor_sets(const CellComplex& c, FaceVector v) {
  if (!c.contains(v)) throw ComplexError("not a vector of the complex");
  NeighborSets out;

  for (const auto& t2 : c.cofaces(v.sigma)) {
    if (t2.cell == v.tau) continue;
    if (!share_any(c.cofaces(v.tau), c.cofaces(t2.cell))) {
      out.zero.push_back({t2.cell, v.sigma});
      ++out.n_sigma;
    }
  }
  for (const auto& s2 : c.faces(v.tau)) {
    if (s2.cell == v.sigma) continue;
    if (!share_any(c.faces(v.sigma), c.faces(s2.cell))) {
      out.zero.push_back({v.tau, s2.cell});
      ++out.n_tau;
    }
  }

  for (const auto& mu : c.cofaces(v.tau)) {
    for (const auto& t2 : c.faces(mu.cell)) {
      if (t2.cell != v.tau && has_face(c, t2.cell, v.sigma)) out.two.push_back({mu.cell, t2.cell});
    }
  }
  for (const auto& rho : c.faces(v.sigma)) {
    for (const auto& s2 : c.faces(v.tau)) {
      if (s2.cell != v.sigma && has_face(c, s2.cell, rho.cell)) out.two.push_back({s2.cell, rho.cell});
    }
  }
  return out;
}

int ric(const CellComplex& complex, FaceVector v) {
  return 2 - static_cast<int>(neighbor_sets(complex, v).zero.size());
}

int degree(const CellComplex& complex, CellId cell) {
  return static_cast<int>(complex.faces(cell).size() + complex.cofaces(cell).size());
}

CurvatureRecord counting_check(const CellComplex& complex, FaceVector v) {
  const auto ns = neighbor_sets(complex, v);
  CurvatureRecord r;
  r.vector = v;
  r.ric = 2 - static_cast<int>(ns.zero.size());
  r.d_tau = degree(complex, v.tau);
  r.d_sigma = degree(complex, v.sigma);
  r.n_tau = ns.n_tau;
  r.n_sigma = ns.n_sigma;
  r.n2 = static_cast<int>(ns.two.size());
  if (r.d_tau - r.n_tau - 1 != r.n2 || r.d_sigma - r.n_sigma - 1 != r.n2) {
    throw StructuralError("counting identity fails at " + describe(complex, v) + ": d_tau - n_tau - 1 = " +
                          std::to_string(r.d_tau - r.n_tau - 1) + ", d_sigma - n_sigma - 1 = " +
                          std::to_string(r.d_sigma - r.n_sigma - 1) + ", #N2 = " + std::to_string(r.n2) +
                          "; the complex is not regular and quasiconvex");
  }
  return r;
}

std::vector<CurvatureRecord> curvature_records(const CellComplex& complex, unsigned jobs) {
  const auto vectors = complex.vectors();
  std::vector<CurvatureRecord> out(vectors.size());
  parallel_for(vectors.size(), jobs, [&](std::size_t i) { out[i] = counting_check(complex, vectors[i]); });
  return out;
}

std::vector<CurvatureRecord> require_curvature_ready(const CellComplex& complex, unsigned jobs) {
  const auto report = validate(complex);
  if (!report.ok()) {
    std::string failed;
    for (const auto& check : report.checks) {
      if (check.passed) continue;
      failed += failed.empty() ? "" : ", ";
      failed += check.name;
      if (!check.violations.empty()) failed += " (" + check.violations.front() + ")";
    }
    throw StructuralError("complex failed validation: " + failed);
  }
  return curvature_records(complex, jobs);
}

}  // namespace cellricci
