#include "chainlab/expectation.hpp"

#include "chainlab/logmath.hpp"
#include "chainlab/pattern.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace chainlab {

namespace {

// Sum of count * log p_i, with zero counts contributing nothing.
double weighted_log(double count, double log_value) {
  return count == 0 ? 0.0 : count * log_value;
}

nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

}  // namespace

double log_expected_clique_embeddings(const ModelParams& params, int m, CliqueExponent exponent) {
  if (m < 0) throw std::invalid_argument("clique size must be non-negative");
  if (static_cast<std::size_t>(m) > params.ambient_size())
    throw std::invalid_argument("clique size " + std::to_string(m) + " exceeds N = " +
                                std::to_string(params.ambient_size()));
  const double ln_n = std::log(params.scale());
  double total = log_falling_factorial(params.scale(), m);
  if (total == kNegInf) return kNegInf;
  for (int i = 0; i <= params.dim_cap(); ++i) {
    const double e = exponent == CliqueExponent::kAsPrinted ? binomial(m - 1, i) : binomial(m, i + 1);
    total += weighted_log(e, params.log_p(i));
  }
  return total / ln_n;
}

double log_pattern_probability(const ModelParams& params, int genus) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  const double g = genus;
  const double total = weighted_log(2 * g + 4, params.log_p(0)) +
                       weighted_log(static_cast<double>(pattern_edge_count(genus)), params.log_p(1)) +
                       weighted_log(static_cast<double>(pattern_exterior_edge_count(genus)), params.log_q(1));
  return std::isnan(total) ? kNegInf : total / std::log(params.scale());
}

TaylorTail taylor_tail(double alpha1, int genus, double scale) {
  if (!(scale > 1.0)) throw std::domain_error("taylor_tail needs n > 1");
  const double ln_n = std::log(scale);
  const double log_z = -alpha1 * ln_n;
  if (!(log_z < 0) || std::isinf(log_z)) throw std::domain_error("taylor_tail needs 0 < n^-alpha1 < 1");
  const double z = std::exp(log_z);
  const double coefficient = 2.0 * genus + 2.0;

  TaylorTail tail;
  tail.closed_form = coefficient * log1mexp(log_z) / ln_n;

  constexpr long long kMaxTerms = 50'000'000;
  double sum = 0.0, compensation = 0.0, power = 1.0;
  for (long long i = 1; i <= kMaxTerms; ++i) {
    power *= z;
    const double term = power / static_cast<double>(i);
    // Kahan summation keeps the long slowly-converging tails honest.
    const double y = term - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
    tail.terms = i;
    if (term <= std::numeric_limits<double>::epsilon() * 0x1.0p-4 * sum) {
      tail.converged = true;
      break;
    }
  }
  tail.series = -coefficient * sum / ln_n;
  tail.difference = tail.series - tail.closed_form;
  tail.printed_expansion = coefficient / -std::expm1(log_z);
  return tail;
}

ExpectationReport log_expected_ch(const ModelParams& params) {
  ExpectationReport r;
  const int genus = params.genus();
  const double g = genus;
  const int m = 4 * genus + 2;
  const double ln_n = std::log(params.scale());
  r.genus = genus;
  r.scale = params.scale();
  r.ambient = params.ambient_size();
  r.alpha.assign(params.alpha().begin(), params.alpha().end());
  r.conditions = check_conditions(params);

  r.infeasible = static_cast<std::size_t>(m) > params.ambient_size() || params.scale() < m;
  if (r.infeasible) {
    r.clique_term = r.clique_term_face_count = kNegInf;
  } else {
    r.clique_term = log_expected_clique_embeddings(params, m, CliqueExponent::kAsPrinted);
    r.clique_term_face_count = log_expected_clique_embeddings(params, m, CliqueExponent::kFaceCount);
  }
  r.pattern_term = log_pattern_probability(params, genus);
  r.tail_term = weighted_log(2 * g + 2, params.log_q(1)) / ln_n;
  r.log_n_expectation = r.clique_term + r.pattern_term;
  if (std::isnan(r.log_n_expectation)) r.log_n_expectation = kNegInf;

  const double alpha0 = params.alpha(0), alpha1 = params.alpha(1);
  r.bound_clique_part = m * std::log(params.scale() / m) / ln_n;
  r.bound_constant = -1.0;
  r.bound_alpha0_part = -alpha0 * m;
  r.bound_alpha1_part = -alpha1 * static_cast<double>(pattern_edge_count(genus));
  r.bound_tail_part = (2 * g + 2) * log1mexp(-alpha1 * ln_n) / ln_n;
  r.lower_bound = r.bound_clique_part + r.bound_constant + r.bound_alpha0_part +
                  r.bound_alpha1_part + r.bound_tail_part;
  r.printed_bound = 7 - 5 - 2 / g - 2 + 3 / g + 1 / (g * g) + r.bound_tail_part;
  r.tail_alt_coefficient = (4 * g + 5) * log1mexp(-alpha1 * ln_n) / ln_n;
  return r;
}

// ------------------------------------------------------------------ sweep

ModelParams sweep_params(int genus, const SweepConfig& config) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (genus > 62) throw std::invalid_argument("genus too large for n = 2^g");
  const int cap = std::max(0, 3 * genus - 3);
  std::vector<double> alpha(cap + 1, 0.0);
  const double g2 = static_cast<double>(genus) * genus;
  if (config.alpha_rule == AlphaRule::kTechnical) {
    alpha[0] = (g2 - 1) / g2 - 0.01;
    if (cap >= 1) alpha[1] = 1 / (2 * g2);
  } else {
    if (config.fixed_alpha.size() > alpha.size())
      throw std::invalid_argument("fixed alpha longer than r + 1 = " + std::to_string(cap + 1));
    std::copy(config.fixed_alpha.begin(), config.fixed_alpha.end(), alpha.begin());
  }
  std::size_t n = std::size_t{1} << genus;
  if (config.scale_rule == ScaleRule::kLifted) n = std::max<std::size_t>(n, 4 * genus + 2);
  if (alpha[0] < 0) alpha[0] = 0;  // g = 1 under the technical rule
  return ModelParams::from_alpha(genus, static_cast<double>(n), n, cap, std::move(alpha));
}

std::vector<ExpectationReport> sweep(const SweepConfig& config) {
  if (config.g_min < 1 || config.g_max < config.g_min)
    throw std::invalid_argument("sweep needs 1 <= g_min <= g_max");
  std::vector<ExpectationReport> rows;
  for (int g = config.g_min; g <= config.g_max; ++g) {
    ExpectationReport report = log_expected_ch(sweep_params(g, config));
    report.scale_lifted = report.scale > std::ldexp(1.0, g);
    rows.push_back(std::move(report));
  }
  return rows;
}

// ----------------------------------------------------------------- output

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, end);
}

std::string report_flags(const ExpectationReport& r) {
  std::vector<std::string> flags;
  if (r.conditions.technical) flags.push_back("technical");
  if (r.conditions.curve_condition_gt) flags.push_back("curve_gt");
  if (r.conditions.curve_condition_lt) flags.push_back("curve_lt");
  if (r.conditions.critical_dimension_k)
    flags.push_back("critical_k=" + std::to_string(*r.conditions.critical_dimension_k));
  if (r.conditions.critical_at_4g_plus_2) flags.push_back("critical_4g2");
  if (r.infeasible) flags.push_back("infeasible");
  if (r.scale_lifted) flags.push_back("n_lifted");
  if (!r.infeasible) flags.push_back(r.lower_bound_holds() ? "bound_ok" : "bound_violated");
  std::string out;
  for (const auto& f : flags) out += (out.empty() ? "" : ";") + f;
  return out;
}

std::string csv_header() {
  return "g,n,alpha,clique_term,pattern_term,tail,log_n_E_CH,lower_bound,flags";
}

std::string csv_row(const ExpectationReport& r) {
  std::ostringstream row;
  row << r.genus << ',' << format_number(r.scale) << ',';
  for (std::size_t i = 0; i < r.alpha.size(); ++i) row << (i ? ";" : "") << format_number(r.alpha[i]);
  row << ',' << format_number(r.clique_term) << ',' << format_number(r.pattern_term) << ','
      << format_number(r.tail_term) << ',' << format_number(r.log_n_expectation) << ','
      << format_number(r.lower_bound) << ',' << report_flags(r);
  return row.str();
}

nlohmann::json to_json(const ConditionReport& c) {
  nlohmann::json j;
  j["curve_condition_gt"] = c.curve_condition_gt;
  j["curve_condition_lt"] = c.curve_condition_lt;
  j["technical"] = c.technical;
  j["critical_dimension_k"] = c.critical_dimension_k ? nlohmann::json(*c.critical_dimension_k) : nlohmann::json();
  j["critical_at_4g_plus_2"] = c.critical_at_4g_plus_2;
  auto psi_values = nlohmann::json::array();
  for (double v : c.psi_values) psi_values.push_back(number(v));
  j["psi"] = psi_values;
  return j;
}

nlohmann::json to_json(const ExpectationReport& r) {
  nlohmann::json j;
  j["g"] = r.genus;
  j["n"] = number(r.scale);
  j["N"] = r.ambient;
  auto alpha = nlohmann::json::array();
  for (double a : r.alpha) alpha.push_back(number(a));
  j["alpha"] = alpha;
  j["clique_term"] = number(r.clique_term);
  j["clique_term_face_count"] = number(r.clique_term_face_count);
  j["pattern_term"] = number(r.pattern_term);
  j["tail_term"] = number(r.tail_term);
  j["log_n_E_CH"] = number(r.log_n_expectation);
  j["lower_bound"] = {
      {"total", number(r.lower_bound)},
      {"clique_part", number(r.bound_clique_part)},
      {"constant", number(r.bound_constant)},
      {"alpha0_part", number(r.bound_alpha0_part)},
      {"alpha1_part", number(r.bound_alpha1_part)},
      {"tail_part", number(r.bound_tail_part)},
      {"holds", r.lower_bound_holds()},
  };
  j["printed_bound"] = number(r.printed_bound);
  j["tail_alt_coefficient"] = number(r.tail_alt_coefficient);
  j["infeasible"] = r.infeasible;
  j["n_lifted"] = r.scale_lifted;
  j["conditions"] = to_json(r.conditions);
  return j;
}

}  // namespace chainlab
