#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellricci/builders.hpp"
#include "cellricci/complex.hpp"
#include "cellricci/complex_io.hpp"

namespace cellricci::testing {

struct NamedComplex {
  std::string name;
  CellComplex complex;
};

inline CellComplex grid(std::vector<int> lengths) { return build_interval_grid(lengths); }

inline CellComplex fixture(const std::string& name) {
  std::ifstream in(std::string(CELLRICCI_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return read_complex(in);
}

/// Quasiconvex complexes every curvature property is checked on.
inline std::vector<NamedComplex> corpus() {
  std::vector<NamedComplex> out;
  out.push_back({"C2", build_simplex_boundary(2)});
  out.push_back({"C3", build_simplex_boundary(3)});
  out.push_back({"C4", build_simplex_boundary(4)});
  out.push_back({"torus(4,4)", build_torus_grid(4, 4)});
  out.push_back({"torus(5,4)", build_torus_grid(5, 4)});
  out.push_back({"grid(3,3)", grid({3, 3})});
  out.push_back({"C1 x path(2)", product(build_simplex_boundary(1), grid({2}))});
  out.push_back({"grid(4)", grid({4})});
  out.push_back({"pentagonal prism", fixture("pentagonal_prism.txt")});
  return out;
}

}  // namespace cellricci::testing
