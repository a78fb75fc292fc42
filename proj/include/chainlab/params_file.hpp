#ifndef CHAINLAB_PARAMS_FILE_HPP
#define CHAINLAB_PARAMS_FILE_HPP

#include "chainlab/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chainlab {

using StarEdges = std::vector<std::pair<int, int>>;

/// Raw, possibly partial parameter set as read from a "key = value" file or
/// from command-line overrides. Later sources override earlier ones via merge().
///
/// Keys: g, N, n, r, alpha, p, seed, star. Lists are separated by commas or
/// whitespace; star edges are written "1-3, 3-5, ...".
struct ParamSpec {
  std::optional<int> g;
  std::optional<long long> N;
  std::optional<double> n;
  std::optional<int> r;
  std::optional<std::vector<double>> alpha;
  std::optional<std::vector<double>> p;
  std::optional<std::uint64_t> seed;
  std::optional<StarEdges> star;

  void set(const std::string& key, const std::string& value);
  void merge(const ParamSpec& overrides);

  /// Fills defaults and validates:
  ///   g = 1, n = 2^g, N = n;
  ///   r = 3g - 3 when alpha is given without N, otherwise |list| - 1.
  /// Exactly one of alpha / p is required; a short alpha is padded with zeros.
  ModelParams resolve() const;
};

/// Throws std::runtime_error with a line number on unknown keys or bad values.
ParamSpec parse_params(std::istream& in);
ParamSpec load_params(const std::string& path);

std::vector<double> parse_number_list(const std::string& text);
StarEdges parse_star_edges(const std::string& text);

}  // namespace chainlab

#endif  // CHAINLAB_PARAMS_FILE_HPP
