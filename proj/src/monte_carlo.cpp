#include "chainlab/monte_carlo.hpp"

#include "chainlab/logmath.hpp"
#include "chainlab/pattern.hpp"
#include "chainlab/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace chainlab {

namespace {

constexpr std::uint64_t kBlockSize = 512;

Moments merge_range(const std::vector<Moments>& blocks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return Moments::merge(merge_range(blocks, lo, mid), merge_range(blocks, mid, hi));
}

std::uint64_t count_cliques_from(const SimplicialComplex& y, const VertexMask& candidates, int remaining) {
  if (remaining == 0) return 1;
  if (candidates.count() < static_cast<std::size_t>(remaining)) return 0;
  std::uint64_t total = 0;
  for (auto v = candidates.find_first(); v != VertexMask::npos; v = candidates.find_next(v)) {
    VertexMask rest = candidates & y.neighbor_mask(static_cast<Vertex>(v));
    for (auto u = rest.find_first(); u != VertexMask::npos && u <= v; u = rest.find_next(u)) rest.reset(u);
    total += count_cliques_from(y, rest, remaining - 1);
  }
  return total;
}

bool sandwiched(const SimplicialComplex& y, const SimplicialComplex& lower, const SimplicialComplex& upper) {
  for (int d = 0; d <= lower.dim_cap(); ++d)
    for (const Simplex& s : lower.faces(d))
      if (!y.contains(s)) return false;
  for (int d = 0; d <= y.dim_cap(); ++d)
    for (const Simplex& s : y.faces(d))
      if (!upper.contains(s)) return false;
  return true;
}

void check_request(const McRequest& request) {
  if (request.trials == 0) throw std::invalid_argument("trials must be at least 1");
  const auto& params = request.params;
  if (request.event == McEvent::kSandwich &&
      params.ambient_size() != 2 * static_cast<std::size_t>(params.genus()) + 4)
    throw std::invalid_argument("sandwich event needs N = 2g + 4 = " +
                                std::to_string(2 * params.genus() + 4));
  if (request.event == McEvent::kCliqueCount &&
      (request.clique_size < 1 || static_cast<std::size_t>(request.clique_size) > params.ambient_size()))
    throw std::invalid_argument("clique size must lie in [1, N]");
}

}  // namespace

void Moments::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

Moments Moments::merge(const Moments& a, const Moments& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  Moments out;
  out.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  const double weight = static_cast<double>(b.count) / static_cast<double>(out.count);
  out.mean = a.mean + delta * weight;
  out.m2 = a.m2 + b.m2 + delta * delta * static_cast<double>(a.count) * weight;
  return out;
}

MCEstimate run_trials(const ModelParams& params, std::uint64_t trials, std::uint64_t seed,
                      const TrialStatistic& statistic, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  const std::uint64_t block_count = (trials + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> blocks(block_count);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    for (std::uint64_t b = next++; b < block_count; b = next++) {
      Moments local;
      const std::uint64_t end = std::min(trials, (b + 1) * kBlockSize);
      for (std::uint64_t t = b * kBlockSize; t < end; ++t)
        local.add(statistic(sample_complex(params, Rng::stream_seed(seed, t))));
      blocks[b] = local;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, block_count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  const Moments total = merge_range(blocks, 0, blocks.size());
  MCEstimate estimate;
  estimate.trials = total.count;
  estimate.mean = total.mean;
  estimate.variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  estimate.std_error = std::sqrt(estimate.variance / static_cast<double>(total.count));
  estimate.seed = seed;
  return estimate;
}

std::string to_string(McEvent event) {
  switch (event) {
    case McEvent::kSandwich: return "sandwich";
    case McEvent::kPatternCount: return "pattern_count";
    case McEvent::kCliqueCount: return "clique_count";
  }
  return "unknown";
}

McEvent parse_event(const std::string& name) {
  if (name == "sandwich") return McEvent::kSandwich;
  if (name == "pattern_count" || name == "pattern") return McEvent::kPatternCount;
  if (name == "clique_count" || name == "clique") return McEvent::kCliqueCount;
  throw std::invalid_argument("unknown event \"" + name + "\" (sandwich, pattern_count, clique_count)");
}

std::uint64_t count_cliques(const SimplicialComplex& y, int m) {
  if (m < 1) throw std::invalid_argument("clique size must be positive");
  return count_cliques_from(y, y.vertex_mask(), m);
}

MCEstimate mc_estimate(const McRequest& request) {
  check_request(request);
  const auto& params = request.params;
  const int genus = params.genus();
  switch (request.event) {
    case McEvent::kSandwich: {
      const PatternPair pair = build_pattern(genus);
      return run_trials(params, request.trials, request.seed,
                        [&](const SimplicialComplex& y) {
                          return sandwiched(y, pair.graph_a, pair.flag_b) ? 1.0 : 0.0;
                        },
                        request.threads);
    }
    case McEvent::kPatternCount: {
      const int size = 2 * genus + 4;
      return run_trials(params, request.trials, request.seed,
                        [&](const SimplicialComplex& y) {
                          return static_cast<double>(count_pattern_occurrences(y, genus, size).labelings);
                        },
                        request.threads);
    }
    case McEvent::kCliqueCount: {
      const int m = request.clique_size;
      return run_trials(params, request.trials, request.seed,
                        [m](const SimplicialComplex& y) { return static_cast<double>(count_cliques(y, m)); },
                        request.threads);
    }
  }
  throw std::logic_error("unhandled event");
}

double mc_closed_form(const McRequest& request) {
  check_request(request);
  const auto& params = request.params;
  const int genus = params.genus();
  const double n_labels = static_cast<double>(params.ambient_size());
  switch (request.event) {
    case McEvent::kSandwich: {
      const PatternPair pair = build_pattern(genus);
      return std::exp(sandwich_log_probability(pair.graph_a, pair.flag_b, params));
    }
    case McEvent::kPatternCount: {
      const int size = 2 * genus + 4;
      if (static_cast<std::size_t>(size) > params.ambient_size()) return 0.0;
      const double log_p = (2.0 * genus + 4) * params.log_p(0) +
                           static_cast<double>(pattern_edge_count(genus)) * params.log_p(1) +
                           static_cast<double>(pattern_exterior_edge_count(genus)) * params.log_q(1);
      return std::isnan(log_p) ? 0.0 : std::exp(log_falling_factorial(n_labels, size) + log_p);
    }
    case McEvent::kCliqueCount: {
      const int m = request.clique_size;
      const double edges = binomial(m, 2);
      double log_p = m * params.log_p(0);
      if (edges > 0) log_p += edges * params.log_p(1);
      return std::exp(log_binomial(n_labels, m) + log_p);
    }
  }
  throw std::logic_error("unhandled event");
}

}  // namespace chainlab
