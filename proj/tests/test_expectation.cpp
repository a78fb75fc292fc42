#include "chainlab/expectation.hpp"
#include "chainlab/logmath.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>

using namespace chainlab;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

std::vector<double> technical_alpha(int g) {
  std::vector<double> alpha(static_cast<std::size_t>(3 * g - 2), 0.0);
  alpha[0] = (g * g - 1.0) / (g * g) - 0.01;
  alpha[1] = 1.0 / (2.0 * g * g);
  return alpha;
}

// log_n of (n)_m prod_i n^(-alpha_i C(m-1, i)) in 50-digit arithmetic.
Big oracle_clique(double n, int m, const std::vector<double>& alpha) {
  const Big big_n(n);
  Big product = 1;
  for (int j = 0; j < m; ++j) product *= big_n - j;
  Big exponent = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    Big c = 1;
    for (std::size_t j = 1; j <= i; ++j) c = c * Big(m - 1 - static_cast<int>(i) + static_cast<int>(j)) / Big(j);
    if (static_cast<int>(i) > m - 1) c = 0;
    exponent += c * Big(alpha[i]);
  }
  return log(product) / log(big_n) - exponent;
}

Big oracle_pattern(double n, int g, const std::vector<double>& alpha) {
  const Big big_n(n);
  const Big p1 = pow(big_n, -Big(alpha[1]));
  return -Big(2 * g + 4) * Big(alpha[0]) - Big(2 * g * g + 3 * g + 1) * Big(alpha[1]) +
         Big(2 * g + 2) * log(1 - p1) / log(big_n);
}

}  // namespace

TEST_CASE("logmath helpers") {
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(3, 5) == 0.0);
  CHECK(binomial(0, 0) == 1.0);
  CHECK(log_falling_factorial(5, 3) == doctest::Approx(std::log(60.0)));
  CHECK(std::isinf(log_falling_factorial(4, 6)));
  CHECK_THROWS_AS(log_falling_factorial(4.5, 6), std::domain_error);
  CHECK(log1mexp(-1e-20) == doctest::Approx(std::log(1e-20)));
  CHECK(log1mexp(-50) == doctest::Approx(-std::exp(-50.0)).epsilon(1e-12));
  CHECK(std::isinf(log1mexp(0)));
  CHECK(log_falling_factorial(10000, 5000) ==
        doctest::Approx(std::lgamma(10001.0) - std::lgamma(5001.0)).epsilon(1e-12));
}

TEST_CASE("pattern term for g = 1 at p0 = p1 = 1/2") {
  const ModelParams params = ModelParams::from_probabilities(1, 2.0, 8, 1, {0.5, 0.5});
  CHECK(log_pattern_probability(params, 1) == doctest::Approx(-16.0));
  const ModelParams no_edges = ModelParams::from_probabilities(1, 2.0, 8, 0, {0.5});
  CHECK(std::isinf(log_pattern_probability(no_edges, 1)));
}

TEST_CASE("clique embeddings") {
  const ModelParams params = ModelParams::from_alpha(1, 16.0, 16, 2, {0.5, 0.25, 0.125});
  const double base = std::log(16.0);
  const double expected = log_falling_factorial(16, 6) / base - 0.5 * 1 - 0.25 * 5 - 0.125 * 10;
  CHECK(log_expected_clique_embeddings(params, 6) == doctest::Approx(expected).epsilon(1e-13));
  const double faces = log_falling_factorial(16, 6) / base - 0.5 * 6 - 0.25 * 15 - 0.125 * 20;
  CHECK(log_expected_clique_embeddings(params, 6, CliqueExponent::kFaceCount) ==
        doctest::Approx(faces).epsilon(1e-13));
  CHECK(log_expected_clique_embeddings(params, 0) == 0.0);
  CHECK_THROWS_AS(log_expected_clique_embeddings(params, 17), std::invalid_argument);
  CHECK_THROWS_AS(log_expected_clique_embeddings(params, -1), std::invalid_argument);

  const ModelParams small_scale = ModelParams::from_alpha(1, 4.0, 16, 1, {0.5, 0.25});
  CHECK(std::isinf(log_expected_clique_embeddings(small_scale, 6)));
}

TEST_CASE("expectation terms agree with a 50-digit oracle") {
  for (int g : {2, 3, 4})
    for (double n : {32.0, 64.0}) {
      const std::vector<double> alpha = technical_alpha(g);
      const ModelParams params = ModelParams::from_alpha(g, n, static_cast<std::size_t>(n), 3 * g - 3, alpha);
      const ExpectationReport report = log_expected_ch(params);
      const Big clique = oracle_clique(n, 4 * g + 2, alpha);
      const Big pattern = oracle_pattern(n, g, alpha);
      CHECK(std::abs(report.clique_term - clique.convert_to<double>()) < 1e-9);
      CHECK(std::abs(report.pattern_term - pattern.convert_to<double>()) < 1e-9);
      CHECK(std::abs(report.log_n_expectation - (clique + pattern).convert_to<double>()) < 1e-9);
      CHECK_FALSE(report.infeasible);
    }
}

TEST_CASE("taylor tail") {
  const TaylorTail simple = taylor_tail(1.0, 1, 2.0);
  CHECK(simple.closed_form == doctest::Approx(-4.0));
  CHECK(simple.converged);
  CHECK(std::abs(simple.difference) < 1e-12);
  CHECK(simple.printed_expansion == doctest::Approx(8.0));

  for (int g = 1; g <= 10; ++g) {
    const TaylorTail t = taylor_tail(1.0 / (2.0 * g * g), g, std::ldexp(1.0, g));
    CHECK(t.converged);
    CHECK(std::abs(t.difference) < 1e-9 * std::max(1.0, std::abs(t.closed_form)));
    CHECK(t.closed_form < 0);
  }
  CHECK_THROWS_AS(taylor_tail(0.0, 1, 2.0), std::domain_error);
  CHECK_THROWS_AS(taylor_tail(-1.0, 1, 2.0), std::domain_error);
}

TEST_CASE("expectation report") {
  const ModelParams params = ModelParams::from_alpha(2, 32.0, 32, 3, technical_alpha(2));
  const ExpectationReport r = log_expected_ch(params);
  CHECK(r.log_n_expectation == doctest::Approx(r.clique_term + r.pattern_term));
  CHECK(r.tail_term == doctest::Approx(taylor_tail(params.alpha(1), 2, 32.0).closed_form));
  CHECK(r.lower_bound == doctest::Approx(r.bound_clique_part + r.bound_constant + r.bound_alpha0_part +
                                          r.bound_alpha1_part + r.bound_tail_part));
  CHECK(r.bound_clique_part == doctest::Approx(10 * std::log(3.2) / std::log(32.0)));
  CHECK(r.bound_alpha0_part == doctest::Approx(-10 * params.alpha(0)));
  CHECK(r.bound_alpha1_part == doctest::Approx(-15 * params.alpha(1)));
  CHECK(r.printed_bound == doctest::Approx(0.5 + 0.25 + r.bound_tail_part));
  CHECK(r.tail_alt_coefficient == doctest::Approx(r.tail_term * 13.0 / 6.0));
  CHECK(r.conditions.technical);
  CHECK(r.lower_bound_holds());

  const ExpectationReport tiny = log_expected_ch(ModelParams::for_genus(2, technical_alpha(2)));
  CHECK(tiny.infeasible);
  CHECK(std::isinf(tiny.clique_term));
  CHECK(report_flags(tiny).find("infeasible") != std::string::npos);
}

TEST_CASE("sweep") {
  SweepConfig config;
  config.g_min = 2;
  config.g_max = 30;
  const auto rows = sweep(config);
  REQUIRE(rows.size() == 29);
  for (const auto& row : rows) {
    CHECK(std::isfinite(row.log_n_expectation));
    CHECK(row.conditions.technical);
    CHECK(row.scale >= 4 * row.genus + 2);
  }
  int last_drop = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].log_n_expectation > rows[i - 1].log_n_expectation)) last_drop = rows[i].genus;
  CHECK(last_drop <= 10);

  config.scale_rule = ScaleRule::kPowerOfTwo;
  config.g_max = 5;
  const auto strict = sweep(config);
  CHECK(strict[0].infeasible);                 // 10 > 4
  CHECK_FALSE(strict.back().infeasible);       // 22 <= 32
  CHECK(sweep_params(3, config).scale() == 8.0);

  config.alpha_rule = AlphaRule::kFixed;
  config.fixed_alpha = {0.5, 0.1};
  const ModelParams fixed = sweep_params(3, config);
  CHECK(fixed.alpha(0) == 0.5);
  CHECK(fixed.alpha(4) == 0.0);
  CHECK(fixed.dim_cap() == 6);
}

TEST_CASE("csv and json output") {
  CHECK(csv_header() == "g,n,alpha,clique_term,pattern_term,tail,log_n_E_CH,lower_bound,flags");
  const ExpectationReport r = log_expected_ch(ModelParams::from_alpha(2, 32.0, 32, 3, {0.5, 0.125, 0, 0}));
  const std::string row = csv_row(r);
  CHECK(row.rfind("2,32,0.5;0.125;0;0,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 8);

  const nlohmann::json j = to_json(r);
  CHECK(j.at("g") == 2);
  CHECK(j.contains("lower_bound"));
  const nlohmann::json inf = to_json(log_expected_ch(ModelParams::for_genus(2, {0.5, 0.125})));
  CHECK(inf.at("clique_term") == "-inf");

  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(32.0) == "32");
}
