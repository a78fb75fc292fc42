#include "chainlab/monte_carlo.hpp"
#include "chainlab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace chainlab;

namespace {

std::uint64_t oracle_cliques(const SimplicialComplex& y, int m) {
  const auto n = static_cast<Vertex>(y.ambient_size());
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != m) continue;
    bool clique = true;
    for (Vertex u = 0; u < n && clique; ++u) {
      if (!(mask & (1u << u))) continue;
      clique = y.has_vertex(u);
      for (Vertex v = u + 1; v < n && clique; ++v)
        if (mask & (1u << v)) clique = y.has_edge(u, v);
    }
    count += clique;
  }
  return count;
}

}  // namespace

TEST_CASE("rng streams") {
  Rng a(5), b(5), c(6);
  const double x = a.uniform();
  CHECK(x == b.uniform());
  CHECK(x != c.uniform());
  CHECK(x >= 0.0);
  CHECK(x < 1.0);
  CHECK(Rng::stream_seed(1, 0) != Rng::stream_seed(1, 1));
  CHECK(Rng::stream_seed(1, 0) != Rng::stream_seed(2, 0));
  Rng d(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(d.bernoulli(0.0));
    CHECK(d.bernoulli(1.0));
  }
}

TEST_CASE("moments merge like a single pass") {
  std::mt19937 gen(1);
  std::normal_distribution<double> normal(3.0, 2.0);
  std::vector<double> xs(1000);
  for (double& x : xs) x = normal(gen);
  Moments all, left, right;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    all.add(xs[i]);
    (i < 377 ? left : right).add(xs[i]);
  }
  const Moments merged = Moments::merge(left, right);
  CHECK(merged.count == all.count);
  CHECK(merged.mean == doctest::Approx(all.mean).epsilon(1e-13));
  CHECK(merged.m2 == doctest::Approx(all.m2).epsilon(1e-12));
  CHECK(Moments::merge(Moments{}, all).mean == all.mean);
}

TEST_CASE("trial results do not depend on the thread count") {
  const ModelParams params = ModelParams::from_probabilities(1, 2.0, 7, 1, {0.8, 0.5});
  const auto edges = [](const SimplicialComplex& y) { return static_cast<double>(y.face_count(1)); };
  const MCEstimate one = run_trials(params, 3000, 11, edges, 1);
  const MCEstimate two = run_trials(params, 3000, 11, edges, 2);
  const MCEstimate four = run_trials(params, 3000, 11, edges, 4);
  CHECK(one.mean == two.mean);
  CHECK(one.mean == four.mean);
  CHECK(one.variance == four.variance);
  CHECK(one.trials == 3000);
  // E f1 = C(7,2) p0^2 p1
  CHECK(std::abs(one.mean - 21 * 0.64 * 0.5) < 4 * one.std_error);
}

TEST_CASE("sandwich event") {
  const ModelParams params = ModelParams::from_probabilities(1, 2.0, 6, 1, {0.9, 0.5});
  McRequest request{params};
  request.trials = 40000;
  request.seed = 3;
  const MCEstimate est = mc_estimate(request);
  const double exact = mc_closed_form(request);
  CHECK(exact == doctest::Approx(std::pow(0.9, 6) * std::pow(0.5, 10)));
  CHECK(std::abs(est.mean - exact) < 4 * est.std_error);
  CHECK(est.mean == mc_estimate(request).mean);

  McRequest wrong{params.with_ambient(7)};
  CHECK_THROWS_AS(mc_estimate(wrong), std::invalid_argument);
  request.trials = 0;
  CHECK_THROWS_AS(mc_estimate(request), std::invalid_argument);
}

TEST_CASE("clique counts") {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams params = ModelParams::from_probabilities(1, 2.0, 9, 1, {0.9, 0.6});
    const SimplicialComplex y = sample_complex(params, gen());
    for (int m = 1; m <= 5; ++m) CHECK(count_cliques(y, m) == oracle_cliques(y, m));
  }

  McRequest request{ModelParams::from_probabilities(1, 2.0, 9, 1, {0.9, 0.6})};
  request.event = McEvent::kCliqueCount;
  request.clique_size = 4;
  request.trials = 20000;
  request.seed = 8;
  const MCEstimate est = mc_estimate(request);
  const double exact = 126 * std::pow(0.9, 4) * std::pow(0.6, 6);
  CHECK(mc_closed_form(request) == doctest::Approx(exact));
  CHECK(std::abs(est.mean - exact) < 4 * est.std_error);

  request.clique_size = 10;
  CHECK_THROWS_AS(mc_estimate(request), std::invalid_argument);
}

TEST_CASE("pattern count event") {
  McRequest request{ModelParams::from_probabilities(1, 2.0, 7, 1, {0.95, 0.6})};
  request.event = McEvent::kPatternCount;
  request.trials = 4000;
  request.seed = 21;
  const MCEstimate est = mc_estimate(request);
  const double exact = 5040 * std::pow(0.95, 6) * std::pow(0.6, 6) * std::pow(0.4, 4);
  CHECK(mc_closed_form(request) == doctest::Approx(exact));
  CHECK(std::abs(est.mean - exact) < 4 * est.std_error);
}

TEST_CASE("event names") {
  for (McEvent e : {McEvent::kSandwich, McEvent::kPatternCount, McEvent::kCliqueCount})
    CHECK(parse_event(to_string(e)) == e);
  CHECK_THROWS_AS(parse_event("nonsense"), std::invalid_argument);
}
