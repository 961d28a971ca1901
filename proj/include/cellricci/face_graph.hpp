#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cellricci/complex.hpp"

namespace cellricci {

/// The graph G_M: nodes are the cells, edges are the vectors (undirected).
///
/// Holds a reference to the complex, which must outlive it. All-pairs BFS
/// distances are computed eagerly; after construction the object is
/// read-only and may be shared between threads.
class FaceGraph {
 public:
  static constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

  explicit FaceGraph(const CellComplex& complex);

  const CellComplex& complex() const { return *complex_; }
  std::size_t size() const { return neighbors_.size(); }

  /// Faces followed by cofaces of `id` (the neighbourhood Gamma(id)).
  std::span<const CellId> neighbors(CellId id) const { return neighbors_[id.index]; }
  /// d_sigma = #faces + #cofaces.
  int degree(CellId id) const { return static_cast<int>(neighbors_[id.index].size()); }

  /// Shortest-path length, or kUnreachable across components.
  std::uint32_t distance(CellId a, CellId b) const { return dist_[a.index * size() + b.index]; }

  std::size_t component_count() const { return component_count_; }
  std::uint32_t component(CellId id) const { return component_[id.index]; }
  /// Largest finite distance; nullopt for a disconnected graph.
  std::optional<std::uint32_t> diameter() const;

  int max_degree() const;
  int min_degree() const;

  /// BFS 2-colouring that never looks at dimensions; true when it succeeds and
  /// the colour classes coincide with dimension parity on every component.
  bool bipartite_by_dimension_parity() const;

 private:
  const CellComplex* complex_;
  std::vector<std::vector<CellId>> neighbors_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::uint32_t> component_;
  std::size_t component_count_ = 0;
};

/// BFS distance in G_M; nullopt when a and b lie in different components.
std::optional<std::uint32_t> graph_distance(const FaceGraph& graph, CellId a, CellId b);

}  // namespace cellricci
