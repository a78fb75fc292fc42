#ifndef CHAINLAB_EXPANSION_HPP
#define CHAINLAB_EXPANSION_HPP

#include "chainlab/complex.hpp"

#include <map>
#include <optional>
#include <vector>

namespace chainlab {

/// The vertex v with {v} = intersection of adj(w) over w in `determining`,
/// or nothing when that intersection is empty or has several elements.
/// Throws std::invalid_argument for an empty set and NotFoundError for
/// vertices outside `gamma`.
std::optional<Vertex> uniquely_determined(const SimplicialComplex& gamma, const VertexSet& determining);

struct ExpansionStep {
  VertexSet vertices;
  /// For each newly added vertex, a set inside the previous stage that
  /// determines it.
  std::map<Vertex, VertexSet> witnesses;
};

/// One rigid expansion of `seed` inside `gamma`.
///
/// A vertex v outside the current set Y is added exactly when
/// A_v = Y n adj(v) is non-empty and determines v: any determining A inside Y
/// lies in A_v, and the intersection over A_v is contained in the one over A,
/// so A_v is the only set that needs testing. A_v is recorded as witness.
ExpansionStep expand_once(const SimplicialComplex& gamma, const VertexSet& seed);

struct ExpansionTrace {
  /// stages.front() is the input. A run that stops because nothing changed
  /// ends with the fixpoint listed twice.
  std::vector<VertexSet> stages;
  /// witnesses[k] explains the vertices added in going to stages[k + 1].
  std::vector<std::map<Vertex, VertexSet>> witnesses;
  bool reached_fixpoint = false;
  bool exhausted = false;  // final stage is every vertex of gamma
  bool truncated = false;  // stopped by max_steps first

  const VertexSet& final_stage() const { return stages.back(); }
};

/// Applies expand_once until the set stops growing, covers gamma, or
/// `max_steps` expansions have been made. Throws std::invalid_argument for
/// max_steps < 1.
ExpansionTrace expand_to_fixpoint(const SimplicialComplex& gamma, const VertexSet& seed,
                                  int max_steps);
ExpansionTrace expand_to_fixpoint(const SimplicialComplex& gamma, const VertexSet& seed);

/// Whether iterated expansions of `seed` exhaust the vertices of gamma.
bool is_seed(const SimplicialComplex& gamma, const VertexSet& seed);

}  // namespace chainlab

#endif  // CHAINLAB_EXPANSION_HPP
