#include "cellricci/face_graph.hpp"

#include <algorithm>
#include <deque>

namespace cellricci {

FaceGraph::FaceGraph(const CellComplex& complex) : complex_(&complex) {
  const std::size_t n = complex.size();
  neighbors_.resize(n);
  for (const auto& c : complex.cells()) {
    auto& nb = neighbors_[c.id.index];
    for (const auto& f : complex.faces(c.id)) nb.push_back(f.cell);
    for (const auto& f : complex.cofaces(c.id)) nb.push_back(f.cell);
  }

  dist_.assign(n * n, kUnreachable);
  component_.assign(n, kUnreachable);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < n; ++s) {
    std::uint32_t* row = dist_.data() + static_cast<std::size_t>(s) * n;
    row[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (CellId w : neighbors_[u]) {
        if (row[w.index] == kUnreachable) {
          row[w.index] = row[u] + 1;
          queue.push_back(w.index);
        }
      }
    }
    if (component_[s] == kUnreachable) {
      const auto label = static_cast<std::uint32_t>(component_count_++);
      for (std::uint32_t t = 0; t < n; ++t) {
        if (row[t] != kUnreachable) component_[t] = label;
      }
    }
  }
}

std::optional<std::uint32_t> FaceGraph::diameter() const {
  if (component_count_ > 1) return std::nullopt;
  std::uint32_t best = 0;
  for (auto d : dist_) best = std::max(best, d);
  return best;
}

int FaceGraph::max_degree() const {
  int best = 0;
  for (const auto& nb : neighbors_) best = std::max(best, static_cast<int>(nb.size()));
  return best;
}

int FaceGraph::min_degree() const {
  if (neighbors_.empty()) return 0;
  int best = std::numeric_limits<int>::max();
  for (const auto& nb : neighbors_) best = std::min(best, static_cast<int>(nb.size()));
  return best;
}

bool FaceGraph::bipartite_by_dimension_parity() const {
  const std::size_t n = size();
  std::vector<int> colour(n, -1);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (CellId w : neighbors_[u]) {
        if (colour[w.index] == -1) {
          colour[w.index] = 1 - colour[u];
          queue.push_back(w.index);
        } else if (colour[w.index] == colour[u]) {
          return false;  // odd cycle
        }
      }
    }
  }
  // Within a component the colouring is unique up to a swap.
  std::vector<int> offset(component_count_, -1);
  for (std::uint32_t v = 0; v < n; ++v) {
    const int parity = complex_->dim(CellId{v}) % 2;
    int& off = offset[component_[v]];
    if (off == -1) off = parity ^ colour[v];
    if ((colour[v] ^ off) != parity) return false;
  }
  return true;
}

std::optional<std::uint32_t> graph_distance(const FaceGraph& graph, CellId a, CellId b) {
  const auto d = graph.distance(a, b);
  if (d == FaceGraph::kUnreachable) return std::nullopt;
  return d;
}

}  // namespace cellricci
