#include "chainlab/pattern.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace chainlab {

namespace {

bool cyclically_adjacent(std::size_t i, std::size_t j, std::size_t length) {
  const std::size_t d = i > j ? i - j : j - i;
  return d == 1 || d == length - 1;
}

// (sigma \ {v}) + {w}.
Simplex exchanged(const Simplex& sigma, Vertex v, Vertex w) {
  if (sigma.size() == 1) return Simplex{w};
  return sigma.without(v).with(w);
}

void require_vertex(const SimplicialComplex& gamma, Vertex v) {
  if (!gamma.has_vertex(v)) throw NotFoundError("vertex " + std::to_string(v) + " is not in the complex");
}

// Vertices w outside sigma for which (sigma \ {v}) + {w} is a face.
VertexMask exchange_partners(const SimplicialComplex& gamma, const Simplex& sigma, Vertex v) {
  VertexMask partners = gamma.vertex_mask();
  for (Vertex u : sigma.vertices()) {
    partners.reset(u);
    if (u != v) partners &= gamma.neighbor_mask(u);
  }
  if (sigma.size() <= 2) return partners;  // faces up to edges are decided by adjacency
  VertexMask confirmed(gamma.ambient_size());
  for (auto w = partners.find_first(); w != VertexMask::npos; w = partners.find_next(w))
    if (gamma.contains(exchanged(sigma, v, static_cast<Vertex>(w)))) confirmed.set(w);
  return confirmed;
}

// Whether two partner sets contain w1 != w2 with {w1, w2} not an edge.
bool has_non_edge_pair(const SimplicialComplex& gamma, const VertexMask& first, const VertexMask& second) {
  for (auto w1 = first.find_first(); w1 != VertexMask::npos; w1 = first.find_next(w1)) {
    VertexMask others = second;
    others.reset(w1);
    others -= gamma.neighbor_mask(static_cast<Vertex>(w1));
    if (others.any()) return true;
  }
  return false;
}

void require_top(const SimplicialComplex& gamma, const Simplex& sigma) {
  if (!is_top_dimensional(gamma, sigma))
    throw std::invalid_argument("simplex " + sigma.to_string() + " is not top-dimensional");
}

}  // namespace

// ---------------------------------------------------------------- pattern

long long pattern_edge_count(int genus) {
  const long long g = genus;
  return 2 * g * g + 3 * g + 1;
}

long long pattern_exterior_edge_count(int genus) { return 2 * static_cast<long long>(genus) + 2; }

PatternPair build_pattern(int genus, int dim_cap) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (dim_cap < 1) throw std::invalid_argument("pattern needs dimension cap at least 1");
  const std::size_t chain = 2 * static_cast<std::size_t>(genus) + 2;
  const std::size_t total = chain + 2;
  const auto w0 = static_cast<Vertex>(chain), w1 = static_cast<Vertex>(chain + 1);

  ComplexBuilder a(total, 1), b_graph(total, 1);
  for (Vertex v = 0; v < total; ++v) {
    a.add(Simplex{v});
    b_graph.add(Simplex{v});
  }
  for (Vertex i = 0; i < chain; ++i) {
    for (Vertex j = i + 1; j < chain; ++j)
      if (!cyclically_adjacent(i, j, chain)) {
        a.add(Simplex{i, j});
        b_graph.add(Simplex{i, j});
      }
    a.add(Simplex{i, i % 2 == 0 ? w0 : w1});
    b_graph.add(Simplex{i, w0}).add(Simplex{i, w1});
  }
  b_graph.add(Simplex{w0, w1});

  const int b_cap = std::min<int>(dim_cap, static_cast<int>(total) - 1);
  return PatternPair{genus, std::move(a).seal(), flag_completion(std::move(b_graph).seal(), b_cap)};
}

PatternPair build_pattern(int genus) { return build_pattern(genus, 2 * genus + 3); }

// ----------------------------------------------------------- star pattern

StarPattern::StarPattern() : StarPattern({{1, 3}, {3, 5}, {5, 2}, {2, 4}, {4, 1}}) {}

StarPattern::StarPattern(const std::vector<std::pair<int, int>>& edges) {
  for (auto [i, j] : edges) {
    if (i < 1 || i > 5 || j < 1 || j > 5)
      throw std::invalid_argument("star pattern labels must lie in 1..5");
    if (i == j) throw std::invalid_argument("star pattern edge is a loop");
    adjacency_[i - 1][j - 1] = adjacency_[j - 1][i - 1] = true;
  }
}

std::vector<std::pair<int, int>> StarPattern::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

// ------------------------------------------------------------- predicates

bool intersection_zero(const SimplicialComplex& gamma, Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("intersection_zero needs two distinct vertices");
  require_vertex(gamma, u);
  require_vertex(gamma, v);
  return gamma.has_edge(u, v);
}

bool is_top_dimensional(const SimplicialComplex& gamma, const Simplex& sigma) {
  return sigma.dimension() == gamma.dimension() && gamma.contains(sigma);
}

bool exchangeable(const SimplicialComplex& gamma, Vertex v, Vertex w, const Simplex& sigma) {
  require_top(gamma, sigma);
  if (!sigma.contains(v)) throw std::invalid_argument("exchanged vertex must lie in the simplex");
  if (sigma.contains(w)) throw std::invalid_argument("replacement vertex must lie outside the simplex");
  if (!gamma.has_vertex(w)) return false;
  return gamma.contains(exchanged(sigma, v, w));
}

SimplicialComplex adjacency_graph(const SimplicialComplex& gamma, const Simplex& sigma) {
  require_top(gamma, sigma);
  const auto members = sigma.vertices();
  std::vector<VertexMask> partners;
  partners.reserve(members.size());
  for (Vertex v : members) partners.push_back(exchange_partners(gamma, sigma, v));

  ComplexBuilder builder(gamma.ambient_size(), 1);
  for (Vertex v : members) builder.add(Simplex{v});
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (has_non_edge_pair(gamma, partners[i], partners[j]))
        builder.add(Simplex{members[i], members[j]});
  return std::move(builder).seal();
}

bool separates_torus(const SimplicialComplex& gamma, const Simplex& sigma, Vertex v1, Vertex v2) {
  if (v1 == v2) throw std::invalid_argument("separates_torus needs two distinct vertices");
  if (!sigma.contains(v1) || !sigma.contains(v2))
    throw std::invalid_argument("both vertices must lie in the simplex");
  const SimplicialComplex graph = adjacency_graph(gamma, sigma);
  const VertexMask& around = graph.neighbor_mask(v1);
  return around.count() == 1 && around.test(v2);
}

bool intersection_one(const SimplicialComplex& gamma, Vertex v1, Vertex v2, const StarPattern& star) {
  if (v1 == v2) throw std::invalid_argument("intersection_one needs two distinct vertices");
  if (!gamma.has_vertex(v1) || !gamma.has_vertex(v2)) return false;
  // Clause 1 restricted to the pair we already know.
  if (gamma.has_edge(v1, v2) != star.has_edge(1, 2)) return false;

  const int top = gamma.dimension();
  for (const Simplex& sigma : gamma.faces(top)) {
    if (!sigma.contains(v1) || sigma.contains(v2)) continue;
    if (!gamma.contains(exchanged(sigma, v1, v2))) continue;  // clause 4
    const SimplicialComplex graph = adjacency_graph(gamma, sigma);
    const VertexMask& around = graph.neighbor_mask(v1);
    if (around.count() != 1) continue;  // clause 3: v1 is a leaf
    const auto v4 = static_cast<Vertex>(around.find_first());

    auto matches = [&](Vertex x, int i, Vertex y, int j) {
      return gamma.has_edge(x, y) == star.has_edge(i, j);
    };
    if (!matches(v1, 1, v4, 4) || !matches(v2, 2, v4, 4)) continue;
    for (Vertex v3 : gamma.vertices()) {
      if (v3 == v1 || v3 == v2 || v3 == v4) continue;
      if (!matches(v3, 3, v1, 1) || !matches(v3, 3, v2, 2) || !matches(v3, 3, v4, 4)) continue;
      for (Vertex v5 : gamma.vertices()) {
        if (v5 == v1 || v5 == v2 || v5 == v3 || v5 == v4) continue;
        if (matches(v5, 5, v1, 1) && matches(v5, 5, v2, 2) && matches(v5, 5, v3, 3) &&
            matches(v5, 5, v4, 4))
          return true;
      }
    }
  }
  return false;
}

bool is_closed_chain(const SimplicialComplex& gamma, const std::vector<Vertex>& sequence,
                     const StarPattern& star) {
  const std::size_t length = sequence.size();
  if (length < 3) throw std::invalid_argument("a closed chain needs at least 3 vertices");
  std::vector<Vertex> sorted(sequence);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("closed chain has a repeated vertex");
  for (Vertex v : sequence)
    if (!gamma.has_vertex(v)) return false;

  for (std::size_t i = 0; i < length; ++i)
    for (std::size_t j = i + 1; j < length; ++j) {
      if (cyclically_adjacent(i, j, length)) continue;
      if (!intersection_zero(gamma, sequence[i], sequence[j])) return false;
    }
  for (std::size_t i = 0; i < length; ++i) {
    const Vertex a = sequence[i], b = sequence[(i + 1) % length];
    if (!intersection_one(gamma, a, b, star) && !intersection_one(gamma, b, a, star)) return false;
  }
  return true;
}

// --------------------------------------------------------------- counting

namespace {

class PatternSearch {
 public:
  PatternSearch(const SimplicialComplex& y, int genus)
      : y_(y), chain_(2 * static_cast<std::size_t>(genus) + 2), image_(chain_ + 2),
        used_(y.ambient_size()) {}

  // Labelled occurrences grouped by the vertex subset they occupy.
  std::map<VertexMask, std::uint64_t> run() {
    place(0);
    return found_;
  }

 private:
  void place(std::size_t slot) {
    if (slot == chain_ + 2) {
      VertexMask subset(y_.ambient_size());
      for (Vertex v : image_) subset.set(v);
      ++found_[subset];
      return;
    }
    VertexMask candidates = y_.vertex_mask() - used_;
    if (slot < chain_) {
      for (std::size_t j = 0; j < slot; ++j) {
        const VertexMask& around = y_.neighbor_mask(image_[j]);
        if (cyclically_adjacent(j, slot, chain_)) candidates -= around;
        else candidates &= around;
      }
    } else {
      const std::size_t parity = slot - chain_;
      for (std::size_t j = parity; j < chain_; j += 2) candidates &= y_.neighbor_mask(image_[j]);
    }
    for (auto v = candidates.find_first(); v != VertexMask::npos; v = candidates.find_next(v)) {
      image_[slot] = static_cast<Vertex>(v);
      used_.set(v);
      place(slot + 1);
      used_.reset(v);
    }
  }

  const SimplicialComplex& y_;
  std::size_t chain_;
  std::vector<Vertex> image_;
  VertexMask used_;
  std::map<VertexMask, std::uint64_t> found_;
};

bool has_clique(const SimplicialComplex& y, const VertexMask& candidates, std::size_t size) {
  if (size == 0) return true;
  if (candidates.count() < size) return false;
  for (auto v = candidates.find_first(); v != VertexMask::npos; v = candidates.find_next(v)) {
    VertexMask rest = candidates & y.neighbor_mask(static_cast<Vertex>(v));
    // Only look forward so each clique is tried once.
    for (auto u = rest.find_first(); u != VertexMask::npos && u <= v; u = rest.find_next(u)) rest.reset(u);
    if (has_clique(y, rest, size - 1)) return true;
  }
  return false;
}

}  // namespace

PatternCount count_pattern_occurrences(const SimplicialComplex& y, int genus, int clique_size) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  const std::size_t pattern_size = 2 * static_cast<std::size_t>(genus) + 4;
  if (clique_size < 0 || static_cast<std::size_t>(clique_size) < pattern_size)
    throw std::invalid_argument("clique size must be at least 2g + 4");

  PatternCount count;
  if (y.face_count(0) < pattern_size) return count;
  const std::size_t extra = static_cast<std::size_t>(clique_size) - pattern_size;
  for (const auto& [subset, labelings] : PatternSearch(y, genus).run()) {
    ++count.subsets;
    count.labelings += labelings;
    VertexMask joinable = y.vertex_mask();
    for (auto t = subset.find_first(); t != VertexMask::npos; t = subset.find_next(t))
      joinable &= y.neighbor_mask(static_cast<Vertex>(t));
    if (has_clique(y, joinable, extra)) {
      ++count.subsets_in_clique;
      count.labelings_in_clique += labelings;
    }
  }
  return count;
}

}  // namespace chainlab
