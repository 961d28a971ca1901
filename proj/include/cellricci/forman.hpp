#pragma once

#include <vector>

#include "cellricci/complex.hpp"

namespace cellricci {

/// 0- and 2-neighbour vectors of a base vector (tau > sigma).
struct NeighborSets {
  /// N0: first the (tau' > sigma) kind, then the (tau > sigma') kind.
  std::vector<FaceVector> zero;
  /// N2: first (mu > tau') through cofaces mu of tau, then (sigma' > rho)
  /// through faces rho of sigma.
  std::vector<FaceVector> two;
  /// Number of 0-neighbours (tau > sigma_2), i.e. through a sibling face of tau.
  int n_tau = 0;
  /// Number of 0-neighbours (tau_2 > sigma), i.e. through a sibling coface of sigma.
  int n_sigma = 0;
};

struct CurvatureRecord {
  FaceVector vector;
  int ric = 0;
  int d_tau = 0;
  int d_sigma = 0;
  int n_tau = 0;
  int n_sigma = 0;
  int n2 = 0;
};

/// Enumerates N0 and N2. At the bottom level (sigma a vertex) the "no common
/// face" test is vacuous, so every sibling vertex of sigma under tau is a
/// 0-neighbour. Throws ComplexError if `v` is not a vector of `complex`.
NeighborSets neighbor_sets(const CellComplex& complex, FaceVector v);

/// Combinatorial Ricci curvature 2 - #N0.
int ric(const CellComplex& complex, FaceVector v);

/// Number of faces plus cofaces.
int degree(const CellComplex& complex, CellId cell);

/// Builds the record and asserts d_tau - n_tau - 1 = d_sigma - n_sigma - 1 = #N2,
/// throwing StructuralError naming the vector otherwise.
CurvatureRecord counting_check(const CellComplex& complex, FaceVector v);

/// counting_check over every vector, in vector order.
std::vector<CurvatureRecord> curvature_records(const CellComplex& complex, unsigned jobs = 1);

/// Gate for every curvature computation: validate() must pass and the counting
/// identity must hold on every vector. Throws StructuralError otherwise.
std::vector<CurvatureRecord> require_curvature_ready(const CellComplex& complex, unsigned jobs = 1);

}  // namespace cellricci
