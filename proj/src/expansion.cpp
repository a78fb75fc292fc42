#include "chainlab/expansion.hpp"

#include <string>

namespace chainlab {

namespace {

void require_vertices(const SimplicialComplex& gamma, const VertexSet& set) {
  for (Vertex v : set)
    if (!gamma.has_vertex(v))
      throw NotFoundError("vertex " + std::to_string(v) + " is not in the complex");
}

// Intersection of neighbourhoods over the set bits of `members`.
VertexMask common_neighbors(const SimplicialComplex& gamma, const VertexMask& members) {
  VertexMask acc = gamma.vertex_mask();
  for (auto w = members.find_first(); w != VertexMask::npos; w = members.find_next(w))
    acc &= gamma.neighbor_mask(static_cast<Vertex>(w));
  return acc;
}

}  // namespace

std::optional<Vertex> uniquely_determined(const SimplicialComplex& gamma, const VertexSet& determining) {
  if (determining.empty()) throw std::invalid_argument("determining set must be non-empty");
  require_vertices(gamma, determining);
  const VertexMask common = common_neighbors(gamma, to_mask(determining, gamma.ambient_size()));
  if (common.count() != 1) return std::nullopt;
  return static_cast<Vertex>(common.find_first());
}

ExpansionStep expand_once(const SimplicialComplex& gamma, const VertexSet& seed) {
  require_vertices(gamma, seed);
  const VertexMask current = to_mask(seed, gamma.ambient_size());
  ExpansionStep step{seed, {}};
  const VertexMask outside = gamma.vertex_mask() - current;
  for (auto v = outside.find_first(); v != VertexMask::npos; v = outside.find_next(v)) {
    const VertexMask anchors = gamma.neighbor_mask(static_cast<Vertex>(v)) & current;
    if (anchors.none()) continue;
    const VertexMask common = common_neighbors(gamma, anchors);
    if (common.count() == 1 && common.test(v)) {
      step.vertices.insert(static_cast<Vertex>(v));
      step.witnesses.emplace(static_cast<Vertex>(v), to_set(anchors));
    }
  }
  return step;
}

ExpansionTrace expand_to_fixpoint(const SimplicialComplex& gamma, const VertexSet& seed,
                                  int max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  require_vertices(gamma, seed);
  const std::size_t total = gamma.face_count(0);
  ExpansionTrace trace;
  trace.stages.push_back(seed);
  int steps = 0;
  while (true) {
    if (trace.stages.back().size() == total) {
      trace.exhausted = true;
      trace.reached_fixpoint = true;
      break;
    }
    if (steps == max_steps) {
      trace.truncated = true;
      break;
    }
    ExpansionStep step = expand_once(gamma, trace.stages.back());
    ++steps;
    const bool grew = step.vertices.size() > trace.stages.back().size();
    trace.stages.push_back(std::move(step.vertices));
    trace.witnesses.push_back(std::move(step.witnesses));
    if (!grew) {
      trace.reached_fixpoint = true;
      break;
    }
  }
  return trace;
}

ExpansionTrace expand_to_fixpoint(const SimplicialComplex& gamma, const VertexSet& seed) {
  return expand_to_fixpoint(gamma, seed, static_cast<int>(gamma.face_count(0)) + 1);
}

bool is_seed(const SimplicialComplex& gamma, const VertexSet& seed) {
  return expand_to_fixpoint(gamma, seed).exhausted;
}

}  // namespace chainlab
