#ifndef CHAINLAB_MONTE_CARLO_HPP
#define CHAINLAB_MONTE_CARLO_HPP

#include "chainlab/model.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace chainlab {

struct MCEstimate {
  std::uint64_t trials = 0;
  double mean = 0;
  double variance = 0;   // unbiased sample variance, 0 for a single trial
  double std_error = 0;  // sqrt(variance / trials)
  std::uint64_t seed = 0;
};

/// Running moments that merge exactly regardless of how trials were split.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x);
  static Moments merge(const Moments& a, const Moments& b);
};

using TrialStatistic = std::function<double(const SimplicialComplex&)>;

/// Samples `trials` complexes, trial t from stream Rng::stream_seed(seed, t),
/// and summarises `statistic` over them. Trials are processed in fixed-size
/// blocks whose moments are merged pairwise in block order, so the result
/// does not depend on `threads` (0 picks the hardware concurrency).
MCEstimate run_trials(const ModelParams& params, std::uint64_t trials, std::uint64_t seed,
                      const TrialStatistic& statistic, unsigned threads = 0);

enum class McEvent {
  kSandwich,      // indicator of A subset Y subset B on the 2g + 4 pattern labels
  kPatternCount,  // labelled pattern occurrences in the 1-skeleton
  kCliqueCount,   // m-vertex subsets spanning a complete graph
};

std::string to_string(McEvent event);
McEvent parse_event(const std::string& name);

struct McRequest {
  ModelParams params;
  McEvent event = McEvent::kSandwich;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  int clique_size = 0;  // used by kCliqueCount
  unsigned threads = 0;
};

/// Throws std::invalid_argument for zero trials, for a sandwich event whose
/// N differs from 2g + 4, or for clique sizes outside [1, N].
MCEstimate mc_estimate(const McRequest& request);

/// Exact expectation of the statistic mc_estimate averages:
///   sandwich      exp(sandwich_log_probability(A, B))
///   pattern count (N)_{2g+4} p0^(2g+4) p1^(2g^2+3g+1) (1-p1)^(2g+2)
///   clique count  C(N, m) p0^m p1^C(m,2)
double mc_closed_form(const McRequest& request);

/// Number of m-vertex cliques in the 1-skeleton of y.
std::uint64_t count_cliques(const SimplicialComplex& y, int m);

}  // namespace chainlab

#endif  // CHAINLAB_MONTE_CARLO_HPP
