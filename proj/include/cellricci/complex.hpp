#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cellricci {

/// Index of a cell inside one CellComplex. Cells are stored sorted by
/// dimension, so comparing ids orders cells by (dim, id).
struct CellId {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(CellId, CellId) = default;
};

struct Cell {
  CellId id;
  int dim = 0;
  std::string label;
};

struct IncidencePair {
  CellId tau;
  CellId sigma;
  int sign = 1;
  friend bool operator==(const IncidencePair&, const IncidencePair&) = default;
};

/// An incident pair (tau > sigma) with dim tau = dim sigma + 1.
struct FaceVector {
  CellId tau;
  CellId sigma;
  friend constexpr auto operator<=>(const FaceVector&, const FaceVector&) = default;
};

/// One entry of a cell's face or coface list.
struct Incidence {
  CellId cell;
  int sign = 1;
  /// Index of the corresponding FaceVector in CellComplex::vectors().
  std::uint32_t vector = 0;
};

/// Immutable graded cell complex with signed incidence numbers.
///
/// Only the combinatorial data is stored: cells with dimensions and labels,
/// and the incidence numbers (tau : sigma) between consecutive dimensions.
/// Construct through ComplexBuilder or one of the builders in builders.hpp.
class CellComplex {
 public:
  CellComplex() = default;

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  /// Top dimension; -1 for the empty complex.
  int dimension() const { return dimension_; }

  std::span<const Cell> cells() const { return cells_; }
  const Cell& cell(CellId id) const { return cells_[id.index]; }
  int dim(CellId id) const { return cells_[id.index].dim; }
  const std::string& label(CellId id) const { return cells_[id.index].label; }
  std::optional<CellId> find(std::string_view label) const;
  /// Like find() but throws ComplexError for unknown labels.
  CellId at(std::string_view label) const;

  /// Codimension-one faces of `id`, ordered by cell id.
  std::span<const Incidence> faces(CellId id) const { return faces_[id.index]; }
  /// Codimension-one cofaces of `id`, ordered by cell id.
  std::span<const Incidence> cofaces(CellId id) const { return cofaces_[id.index]; }

  /// All vectors, sorted by (tau, sigma).
  std::span<const FaceVector> vectors() const { return vectors_; }
  int sign(std::uint32_t vector_index) const { return signs_[vector_index]; }
  int sign(FaceVector v) const;
  std::optional<std::uint32_t> vector_index(FaceVector v) const;
  bool contains(FaceVector v) const { return vector_index(v).has_value(); }

  /// Number of cells of each dimension 0..dimension().
  std::vector<std::size_t> f_vector() const;
  std::vector<IncidencePair> incidences() const;

  friend bool operator==(const CellComplex& a, const CellComplex& b);

 private:
  friend class ComplexBuilder;

  std::vector<Cell> cells_;
  std::vector<std::vector<Incidence>> faces_;
  std::vector<std::vector<Incidence>> cofaces_;
  std::vector<FaceVector> vectors_;
  std::vector<int> signs_;
  std::unordered_map<std::string, CellId> by_label_;
  int dimension_ = -1;
};

/// Mutable staging area for a CellComplex.
///
/// Ids returned by add_cell() are builder-local handles; build() re-sorts cells
/// by dimension (stable in insertion order), so look cells up by label in the
/// finished complex.
class ComplexBuilder {
 public:
  using Handle = std::size_t;

  Handle add_cell(std::string label, int dim);
  void add_incidence(Handle tau, Handle sigma, int sign);

  std::size_t size() const { return labels_.size(); }
  std::optional<Handle> find(std::string_view label) const;

  CellComplex build() &&;

 private:
  struct Pending {
    Handle tau;
    Handle sigma;
    int sign;
  };
  std::vector<std::string> labels_;
  std::vector<int> dims_;
  std::vector<Pending> incidences_;
  std::unordered_map<std::string, Handle> by_label_;
  std::unordered_map<std::uint64_t, std::size_t> pair_seen_;
};

/// Sorted set of every cell in the closure of `id` (the cell and all its
/// iterated faces).
std::vector<CellId> closure(const CellComplex& complex, CellId id);

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> violations;
};

/// Result of validate(). The checks are, in order: boundary-squared-zero,
/// diamond, quasiconvex, facets (every p-cell with p >= 1 has at least two
/// facets) and isolated-cells.
struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  const ValidationCheck& check(std::string_view name) const;
};

ValidationReport validate(const CellComplex& complex);

}  // namespace cellricci

template <>
struct std::hash<cellricci::CellId> {
  std::size_t operator()(cellricci::CellId id) const noexcept { return id.index; }
};
