#ifndef CHAINLAB_EXPECTATION_HPP
#define CHAINLAB_EXPECTATION_HPP

#include "chainlab/model.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace chainlab {

/// Exponent attached to p_i in the clique-embedding product.
enum class CliqueExponent {
  kAsPrinted,  // C(m - 1, i)
  kFaceCount,  // C(m, i + 1), the number of i-faces of an m-vertex simplex
};

/// log_n of C(n, m) m! prod_{i<=r} p_i^e_i. Returns -inf when n < m.
/// Throws std::invalid_argument for m > N or m < 0.
double log_expected_clique_embeddings(const ModelParams& params, int m,
                                      CliqueExponent exponent = CliqueExponent::kAsPrinted);

/// log_n of p0^(2g+4) p1^(2g^2+3g+1) (1-p1)^(2g+2). -inf when p1 is 0 or 1
/// (p1 reads as 0 when r < 1).
double log_pattern_probability(const ModelParams& params, int genus);

struct TaylorTail {
  /// (2g+2) log_n(1 - n^-alpha1), evaluated with log1p / expm1.
  double closed_form = 0;
  /// -(2g+2) sum_{i>=1} n^(-alpha1 i) / i / ln n, summed until terms stop
  /// contributing or the term budget runs out.
  double series = 0;
  double difference = 0;
  long long terms = 0;
  bool converged = false;
  /// (2g+2) sum_{i>=0} n^(-alpha1 i) = (2g+2) / (1 - n^-alpha1), the
  /// positive expansion, kept for comparison with the closed form.
  double printed_expansion = 0;
};

/// Throws std::domain_error unless 0 < n^-alpha1 < 1.
TaylorTail taylor_tail(double alpha1, int genus, double scale);

struct ExpectationReport {
  int genus = 0;
  double scale = 0;
  std::size_t ambient = 0;
  std::vector<double> alpha;

  double clique_term = 0;             // m = 4g + 2, exponents C(m - 1, i)
  double clique_term_face_count = 0;  // same with face-count exponents
  double pattern_term = 0;
  double tail_term = 0;  // (2g+2) log_n(1 - p1); already inside pattern_term
  double log_n_expectation = 0;       // clique_term + pattern_term

  // Lower bound  (4g+2) log_n(n / (4g+2)) - 1 - alpha0 (4g+2)
  //              - alpha1 (2g^2+3g+1) + (2g+2) log_n(1 - n^-alpha1).
  double bound_clique_part = 0;
  double bound_constant = -1;
  double bound_alpha0_part = 0;
  double bound_alpha1_part = 0;
  double bound_tail_part = 0;
  double lower_bound = 0;
  /// 7 - 5 - 2/g - 2 + 3/g + 1/g^2 plus the tail, summed term by term.
  double printed_bound = 0;
  /// The tail with coefficient 4g + 5 in place of 2g + 2.
  double tail_alt_coefficient = 0;

  bool infeasible = false;   // 4g + 2 exceeds n or N
  bool scale_lifted = false; // sweep raised n above 2^g
  ConditionReport conditions;

  bool lower_bound_holds() const { return lower_bound <= log_n_expectation; }
};

/// The expectation formula for the chain count with m = 4g + 2, the lower
/// bound and its summands, and the parameter conditions. Never throws on
/// infeasible sizes; those are flagged and carry -inf terms.
ExpectationReport log_expected_ch(const ModelParams& params);

enum class AlphaRule {
  kTechnical,  // alpha1 = 1/(2g^2), alpha0 = (g^2-1)/g^2 - 0.01, others 0
  kFixed,      // the configured vector, padded with zeros
};

enum class ScaleRule {
  kPowerOfTwo,  // n = N = 2^g; rows with 4g + 2 > n are infeasible
  kLifted,      // n = N = max(2^g, 4g + 2)
};

struct SweepConfig {
  int g_min = 2;
  int g_max = 10;
  AlphaRule alpha_rule = AlphaRule::kTechnical;
  std::vector<double> fixed_alpha;
  ScaleRule scale_rule = ScaleRule::kLifted;
};

/// Parameters used for one sweep row; r = 3g - 3.
ModelParams sweep_params(int genus, const SweepConfig& config);
std::vector<ExpectationReport> sweep(const SweepConfig& config);

std::string csv_header();
std::string csv_row(const ExpectationReport& report);
std::string report_flags(const ExpectationReport& report);
nlohmann::json to_json(const ExpectationReport& report);
nlohmann::json to_json(const ConditionReport& report);

/// Shortest decimal that round-trips, "inf" / "-inf" / "nan" otherwise.
std::string format_number(double x);

}  // namespace chainlab

#endif  // CHAINLAB_EXPECTATION_HPP
