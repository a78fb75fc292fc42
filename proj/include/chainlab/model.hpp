#ifndef CHAINLAB_MODEL_HPP
#define CHAINLAB_MODEL_HPP

#include "chainlab/complex.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace chainlab {

/// Parameters of the multiparametric random complex: faces of dimension i
/// appear with probability p_i = n^(-alpha_i) once their boundary is present.
///
/// The genus g and the scale n are the model's nominal parameters; the
/// ambient vertex count N is independent of n so that small experiments
/// remain feasible. Probability vectors stop at the dimension cap r.
class ModelParams {
 public:
  /// p_i = n^(-alpha_i). Requires n > 1, alpha_i >= 0 (may be +inf),
  /// alpha.size() == r + 1 and r <= N - 1.
  static ModelParams from_alpha(int genus, double scale, std::size_t ambient, int dim_cap,
                                std::vector<double> alpha);

  /// Explicit probabilities in [0, 1]; alpha_i = -log_n p_i.
  static ModelParams from_probabilities(int genus, double scale, std::size_t ambient, int dim_cap,
                                        std::vector<double> p);

  /// n = 2^g, N = n, r = 3g - 3 (at least 0). Missing trailing alphas are 0.
  static ModelParams for_genus(int genus, std::vector<double> alpha);

  int genus() const { return genus_; }
  double scale() const { return scale_; }
  std::size_t ambient_size() const { return ambient_; }
  int dim_cap() const { return cap_; }

  std::span<const double> alpha() const { return alpha_; }
  std::span<const double> p() const { return p_; }

  /// Probability entries for i > r read as 0 and alpha as +inf.
  double p(int i) const;
  double q(int i) const;
  double alpha(int i) const;
  /// Natural logs of p_i and q_i = 1 - p_i, evaluated without cancellation.
  double log_p(int i) const;
  double log_q(int i) const;

  /// Same law on a different number of vertex labels.
  ModelParams with_ambient(std::size_t ambient) const;

 private:
  ModelParams() = default;
  void finish();

  int genus_ = 1;
  double scale_ = 2.0;
  std::size_t ambient_ = 0;
  int cap_ = 0;
  std::vector<double> alpha_;
  std::vector<double> p_;
  std::vector<double> log_p_;
  std::vector<double> log_q_;
};

/// psi_k(alpha) = sum_i C(k, i) alpha_i over the given entries.
double psi(int k, std::span<const double> alpha);

/// True when psi_k(alpha) < 1 < psi_{k+1}(alpha).
bool in_domain(int k, std::span<const double> alpha);

struct ConditionReport {
  /// alpha0 + 3 alpha1 + 2 alpha2 > 1, alpha2 > 0 and 0 < alpha0 + alpha1 < 1.
  bool curve_condition_gt = false;
  /// alpha0 + 3 alpha1 + 2 alpha2 < 1 and alpha0 + alpha1 < 1.
  bool curve_condition_lt = false;
  /// alpha1 < 1/g^2, alpha0 < (g^2-1)/g^2, alpha2 > (1-2g^2)/g^2.
  bool technical = false;
  /// The unique k in [0, r] with psi_k < 1 < psi_{k+1}, if any.
  std::optional<int> critical_dimension_k;
  /// Whether alpha lies in the domain for k = 4g + 2.
  bool critical_at_4g_plus_2 = false;
  /// psi_0 .. psi_{r+1}.
  std::vector<double> psi_values;
};

/// Evaluates every condition; never throws. Entries alpha_i with i > r are
/// read as 0 where a condition mentions them.
ConditionReport check_conditions(const ModelParams& params);

/// Draws one complex: each label becomes a vertex with probability p_0, then
/// for i = 1..r every i-simplex whose boundary is present is kept with
/// probability p_i. Candidates are visited in lexicographic order, so the
/// result is a deterministic function of (params, seed).
SimplicialComplex sample_complex(const ModelParams& params, std::uint64_t seed);

/// Natural log of P{A subset Y subset B}: the sum of log p over faces of A
/// plus log q over exterior faces of B of dimension <= r. Requires
/// A subset B, both on params.ambient_size() labels, and every exterior face
/// of B (dimension <= r) to have its boundary in A; violations raise
/// StructuralError. Returns -inf when the event is impossible.
double sandwich_log_probability(const SimplicialComplex& lower, const SimplicialComplex& upper,
                                const ModelParams& params);

}  // namespace chainlab

#endif  // CHAINLAB_MODEL_HPP
