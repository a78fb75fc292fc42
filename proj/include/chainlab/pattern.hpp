#ifndef CHAINLAB_PATTERN_HPP
#define CHAINLAB_PATTERN_HPP

#include "chainlab/complex.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace chainlab {

/// Seed pattern for genus g on 2g + 4 labels: chain vertices v_0..v_{2g+1}
/// carry labels 0..2g+1, and the external vertices w_0, w_1 carry 2g+2 and
/// 2g+3.
///
/// graph_a: v_i ~ v_j iff i and j are non-adjacent modulo 2g+2, and
///          w_i ~ v_j iff i = j mod 2.
/// flag_b:  flag complex of graph_a plus every w-v edge and {w_0, w_1}.
/// The polygon sides {v_i, v_{i+1}} lie in neither.
struct PatternPair {
  int genus;
  SimplicialComplex graph_a;
  SimplicialComplex flag_b;

  std::size_t vertex_count() const { return 2 * static_cast<std::size_t>(genus) + 4; }
  std::size_t chain_length() const { return 2 * static_cast<std::size_t>(genus) + 2; }
  Vertex chain_vertex(std::size_t i) const { return static_cast<Vertex>(i % chain_length()); }
  Vertex external_vertex(int parity) const { return static_cast<Vertex>(chain_length() + (parity & 1)); }
};

/// B is flag-completed up to min(dim_cap, 2g + 3). Throws
/// std::invalid_argument for g < 1.
PatternPair build_pattern(int genus, int dim_cap);
PatternPair build_pattern(int genus);

/// Edge budget of graph A: 2g^2 + 3g + 1.
long long pattern_edge_count(int genus);
/// Exterior edges of B (the polygon sides): 2g + 2.
long long pattern_exterior_edge_count(int genus);

/// Simple graph on the abstract labels 1..5 used by the intersection-one
/// test. The shipped default is the pentagon 1-3-5-2-4-1; the figure that
/// defines the intended graph is not available, so this is an assumption
/// and can be replaced at runtime.
class StarPattern {
 public:
  StarPattern();
  /// Throws std::invalid_argument for labels outside 1..5 or loops.
  explicit StarPattern(const std::vector<std::pair<int, int>>& edges);

  bool has_edge(int i, int j) const { return adjacency_[i - 1][j - 1]; }
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::array<std::array<bool, 5>, 5> adjacency_{};
};

/// {u, v} is a 1-simplex. Throws std::invalid_argument when u == v and
/// NotFoundError when either vertex is absent.
bool intersection_zero(const SimplicialComplex& gamma, Vertex u, Vertex v);

/// "Top-dimensional" means of the largest dimension present in gamma.
bool is_top_dimensional(const SimplicialComplex& gamma, const Simplex& sigma);

/// (sigma \ {v}) + {w} is again a top-dimensional simplex. Requires sigma
/// top-dimensional, v in sigma and w outside sigma (std::invalid_argument).
bool exchangeable(const SimplicialComplex& gamma, Vertex v, Vertex w, const Simplex& sigma);

/// Graph on the vertices of sigma: v_1 ~ v_2 iff some w_1 != w_2 spanning no
/// edge have v_i exchangeable with w_i. Returned as a 1-dimensional complex
/// on gamma's labels.
SimplicialComplex adjacency_graph(const SimplicialComplex& gamma, const Simplex& sigma);

/// v1 is a leaf of adjacency_graph(sigma) and v2 its only neighbour.
bool separates_torus(const SimplicialComplex& gamma, const Simplex& sigma, Vertex v1, Vertex v2);

/// Intersection-one test: there are distinct v3, v4, v5 and a
/// top-dimensional sigma such that the edges among v1..v5 are exactly those
/// of `star`, v1 and v4 lie in sigma, v4 separates a torus containing v1,
/// and v1 can be exchanged with v2. The relation is not symmetric.
bool intersection_one(const SimplicialComplex& gamma, Vertex v1, Vertex v2, const StarPattern& star);

/// Cyclic sequence whose members at cyclic distance > 1 have intersection
/// zero and whose consecutive members have intersection one (tested in
/// either order). Throws std::invalid_argument for fewer than 3 entries or
/// repeated vertices.
bool is_closed_chain(const SimplicialComplex& gamma, const std::vector<Vertex>& sequence,
                     const StarPattern& star);

struct PatternCount {
  /// Vertex subsets T of size 2g + 4 admitting a labelling phi with
  /// A subset phi^-1(Y|_T) subset B as graphs.
  std::uint64_t subsets = 0;
  /// Total number of such labellings over all subsets.
  std::uint64_t labelings = 0;
  /// Subsets T that extend to a set of clique_size vertices by adding a
  /// clique of Y whose members are adjacent to all of T.
  std::uint64_t subsets_in_clique = 0;
  std::uint64_t labelings_in_clique = 0;
};

/// Occurrences of the seed pattern in the 1-skeleton of y. Throws
/// std::invalid_argument for g < 1 or clique_size < 2g + 4.
PatternCount count_pattern_occurrences(const SimplicialComplex& y, int genus, int clique_size);

}  // namespace chainlab

#endif  // CHAINLAB_PATTERN_HPP
