#pragma once

#include <cstddef>
#include <span>

#include "cellricci/complex.hpp"

namespace cellricci {

/// Boundary of the (n+1)-simplex on vertices 0..n+1. The cell on vertex set
/// {i_0 < ... < i_p} is labelled "v<i_0>.<i_1>...<i_p>", and its j-th facet
/// (drop i_j) carries incidence number (-1)^j.
CellComplex build_simplex_boundary(int n);

/// Axis-aligned cube complex: product of paths with lengths[i] edges each.
/// Path cells are "v<i>" and "e<i>" (e_i spans v_i..v_{i+1}); product cells
/// join the per-axis labels with '*'.
CellComplex build_interval_grid(std::span<const int> lengths);

/// Cycle with k vertices and k edges (k >= 3).
CellComplex build_cycle(int k);

/// k1 x k2 square grid with opposite sides identified; k1, k2 >= 4.
CellComplex build_torus_grid(int k1, int k2);

/// A single vertex "p".
CellComplex build_point();

/// Cartesian product with boundary rule d(a x b) = da x b + (-1)^{dim a} a x db.
CellComplex product(const CellComplex& a, const CellComplex& b);

}  // namespace cellricci
