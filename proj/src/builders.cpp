#include "cellricci/builders.hpp"

#include <string>
#include <vector>

#include "cellricci/errors.hpp"

namespace cellricci {

namespace {

std::string simplex_label(const std::vector<int>& verts) {
  std::string out = "v";
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(verts[i]);
  }
  return out;
}

CellComplex build_path(int length) {
  ComplexBuilder b;
  std::vector<ComplexBuilder::Handle> v;
  for (int i = 0; i <= length; ++i) v.push_back(b.add_cell("v" + std::to_string(i), 0));
  for (int i = 0; i < length; ++i) {
    auto e = b.add_cell("e" + std::to_string(i), 1);
    b.add_incidence(e, v[static_cast<std::size_t>(i)], -1);
    b.add_incidence(e, v[static_cast<std::size_t>(i + 1)], +1);
  }
  return std::move(b).build();
}

std::string product_label(const std::string& a, const std::string& b, bool flat) {
  if (flat) return a + "*" + b;
  auto wrap = [](const std::string& s) { return s.find('*') == std::string::npos ? s : "(" + s + ")"; };
  return wrap(a) + "*" + wrap(b);
}

// Grids and tori are built by folding products; labels there stay flat
// ("v0*e1*v2") because every factor is a path or a cycle.
CellComplex product_impl(const CellComplex& a, const CellComplex& b, bool flat_labels) {
  ComplexBuilder out;
  const std::size_t nb = b.size();
  std::vector<ComplexBuilder::Handle> handle(a.size() * nb);
  // Insert in order of total dimension so handles come out nearly sorted.
  const int top = a.dimension() + b.dimension();
  for (int d = 0; d <= top; ++d) {
    for (const auto& x : a.cells()) {
      for (const auto& y : b.cells()) {
        if (x.dim + y.dim != d) continue;
        handle[x.id.index * nb + y.id.index] = out.add_cell(product_label(x.label, y.label, flat_labels), d);
      }
    }
  }
  for (const auto& x : a.cells()) {
    for (const auto& y : b.cells()) {
      const auto xy = handle[x.id.index * nb + y.id.index];
      for (const auto& f : a.faces(x.id)) out.add_incidence(xy, handle[f.cell.index * nb + y.id.index], f.sign);
      const int twist = (x.dim % 2 == 0) ? 1 : -1;
      for (const auto& f : b.faces(y.id)) {
        out.add_incidence(xy, handle[x.id.index * nb + f.cell.index], twist * f.sign);
      }
    }
  }
  return std::move(out).build();
}

}  // namespace

CellComplex build_simplex_boundary(int n) {
  if (n < 1) {
    throw ComplexError("simplex boundary needs n >= 1 (n = 0 gives two isolated vertices with degree 0)");
  }
  if (n > 12) throw ComplexError("simplex boundary with n > 12 is too large");
  const int vertices = n + 2;
  ComplexBuilder b;
  // Enumerate subsets by size so lower-dimensional cells exist before their cofaces.
  std::vector<std::vector<int>> by_mask(std::size_t{1} << vertices);
  std::vector<ComplexBuilder::Handle> handle(by_mask.size());
  for (int size = 1; size <= n + 1; ++size) {
    for (std::size_t mask = 1; mask < by_mask.size(); ++mask) {
      if (__builtin_popcountll(mask) != size) continue;
      std::vector<int> verts;
      for (int i = 0; i < vertices; ++i) {
        if (mask & (std::size_t{1} << i)) verts.push_back(i);
      }
      handle[mask] = b.add_cell(simplex_label(verts), size - 1);
      if (size > 1) {
        for (std::size_t j = 0; j < verts.size(); ++j) {
          const std::size_t facet = mask & ~(std::size_t{1} << verts[j]);
          b.add_incidence(handle[mask], handle[facet], j % 2 == 0 ? 1 : -1);
        }
      }
      by_mask[mask] = std::move(verts);
    }
  }
  return std::move(b).build();
}

CellComplex build_interval_grid(std::span<const int> lengths) {
  if (lengths.empty()) throw ComplexError("interval grid needs at least one axis length");
  for (int len : lengths) {
    if (len < 1) throw ComplexError("interval grid axis lengths must be >= 1");
  }
  CellComplex result = build_path(lengths[0]);
  for (std::size_t i = 1; i < lengths.size(); ++i) result = product_impl(result, build_path(lengths[i]), true);
  return result;
}

CellComplex build_cycle(int k) {
  if (k < 3) throw ComplexError("a cycle needs at least 3 vertices to be a regular complex");
  ComplexBuilder b;
  std::vector<ComplexBuilder::Handle> v;
  for (int i = 0; i < k; ++i) v.push_back(b.add_cell("v" + std::to_string(i), 0));
  for (int i = 0; i < k; ++i) {
    auto e = b.add_cell("e" + std::to_string(i), 1);
    b.add_incidence(e, v[static_cast<std::size_t>(i)], -1);
    b.add_incidence(e, v[static_cast<std::size_t>((i + 1) % k)], +1);
  }
  return std::move(b).build();
}

CellComplex build_torus_grid(int k1, int k2) {
  if (k1 < 4 || k2 < 4) {
    throw ComplexError("torus grid needs k1, k2 >= 4; smaller periods make a square's characteristic map "
                       "non-injective, so the complex would not be regular");
  }
  return product_impl(build_cycle(k1), build_cycle(k2), true);
}

CellComplex build_point() {
  ComplexBuilder b;
  b.add_cell("p", 0);
  return std::move(b).build();
}

CellComplex product(const CellComplex& a, const CellComplex& b) { return product_impl(a, b, false); }

}  // namespace cellricci
