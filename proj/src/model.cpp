#include "chainlab/model.hpp"

#include "chainlab/logmath.hpp"
#include "chainlab/rng.hpp"

#include <cmath>
#include <string>

namespace chainlab {

namespace {

void check_shape(double scale, std::size_t ambient, int dim_cap, std::size_t entries) {
  if (!(scale > 1.0)) throw std::invalid_argument("scale n must exceed 1");
  if (dim_cap < 0) throw std::invalid_argument("dimension cap r must be non-negative");
  if (ambient == 0 || static_cast<std::size_t>(dim_cap) > ambient - 1)
    throw std::invalid_argument("dimension cap r = " + std::to_string(dim_cap) +
                                " needs at least r + 1 vertex labels, have " +
                                std::to_string(ambient));
  if (entries != static_cast<std::size_t>(dim_cap) + 1)
    throw std::invalid_argument("expected " + std::to_string(dim_cap + 1) +
                                " probability entries, got " + std::to_string(entries));
}

// Copy of k with a larger dimension cap.
SimplicialComplex raise_cap(const SimplicialComplex& k, int dim_cap) {
  ComplexBuilder builder(k.ambient_size(), dim_cap);
  for (int d = 0; d <= k.dim_cap(); ++d)
    for (const Simplex& s : k.faces(d)) builder.add(s);
  return std::move(builder).seal();
}

}  // namespace

ModelParams ModelParams::from_alpha(int genus, double scale, std::size_t ambient, int dim_cap,
                                    std::vector<double> alpha) {
  check_shape(scale, ambient, dim_cap, alpha.size());
  ModelParams m;
  m.genus_ = genus;
  m.scale_ = scale;
  m.ambient_ = ambient;
  m.cap_ = dim_cap;
  const double ln_n = std::log(scale);
  for (double a : alpha) {
    if (std::isnan(a) || a < 0) throw std::invalid_argument("alpha entries must be non-negative");
    m.log_p_.push_back(-a * ln_n);
    m.p_.push_back(std::exp(-a * ln_n));
  }
  m.alpha_ = std::move(alpha);
  m.finish();
  return m;
}

ModelParams ModelParams::from_probabilities(int genus, double scale, std::size_t ambient,
                                            int dim_cap, std::vector<double> p) {
  check_shape(scale, ambient, dim_cap, p.size());
  ModelParams m;
  m.genus_ = genus;
  m.scale_ = scale;
  m.ambient_ = ambient;
  m.cap_ = dim_cap;
  const double ln_n = std::log(scale);
  for (double pi : p) {
    if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("probabilities must lie in [0, 1]");
    m.log_p_.push_back(std::log(pi));
    m.alpha_.push_back(pi == 1.0 ? 0.0 : -std::log(pi) / ln_n);
  }
  m.p_ = std::move(p);
  m.finish();
  return m;
}

ModelParams ModelParams::for_genus(int genus, std::vector<double> alpha) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (genus > 62) throw std::invalid_argument("n = 2^g does not fit in a vertex count");
  const int cap = std::max(0, 3 * genus - 3);
  if (alpha.size() > static_cast<std::size_t>(cap) + 1)
    throw std::invalid_argument("more alpha entries than r + 1");
  alpha.resize(cap + 1, 0.0);
  const std::size_t n = std::size_t{1} << genus;
  return from_alpha(genus, static_cast<double>(n), n, cap, std::move(alpha));
}

void ModelParams::finish() {
  if (genus_ < 1) throw std::invalid_argument("genus must be at least 1");
  log_q_.clear();
  for (double lp : log_p_) log_q_.push_back(log1mexp(lp));
}

double ModelParams::p(int i) const { return i >= 0 && i <= cap_ ? p_[i] : 0.0; }
double ModelParams::q(int i) const { return i >= 0 && i <= cap_ ? -std::expm1(log_p_[i]) : 1.0; }
double ModelParams::alpha(int i) const {
  return i >= 0 && i <= cap_ ? alpha_[i] : std::numeric_limits<double>::infinity();
}
double ModelParams::log_p(int i) const { return i >= 0 && i <= cap_ ? log_p_[i] : kNegInf; }
double ModelParams::log_q(int i) const { return i >= 0 && i <= cap_ ? log_q_[i] : 0.0; }

ModelParams ModelParams::with_ambient(std::size_t ambient) const {
  check_shape(scale_, ambient, cap_, p_.size());
  ModelParams m = *this;
  m.ambient_ = ambient;
  return m;
}

// ------------------------------------------------------------- conditions

double psi(int k, std::span<const double> alpha) {
  if (k < 0) throw std::invalid_argument("psi index must be non-negative");
  double total = 0.0;
  for (std::size_t i = 0; i < alpha.size() && static_cast<long long>(i) <= k; ++i)
    total += binomial(k, static_cast<long long>(i)) * alpha[i];
  return total;
}

bool in_domain(int k, std::span<const double> alpha) {
  return psi(k, alpha) < 1.0 && 1.0 < psi(k + 1, alpha);
}

ConditionReport check_conditions(const ModelParams& params) {
  ConditionReport report;
  const auto alpha = params.alpha();
  auto a = [&](std::size_t i) { return i < alpha.size() ? alpha[i] : 0.0; };
  const double a0 = a(0), a1 = a(1), a2 = a(2);
  const double combo = a0 + 3 * a1 + 2 * a2;
  report.curve_condition_gt = combo > 1 && a2 > 0 && 0 < a0 + a1 && a0 + a1 < 1;
  report.curve_condition_lt = combo < 1 && a0 + a1 < 1;

  const double g2 = static_cast<double>(params.genus()) * params.genus();
  report.technical = a1 < 1 / g2 && a0 < (g2 - 1) / g2 && a2 > (1 - 2 * g2) / g2;

  for (int k = 0; k <= params.dim_cap() + 1; ++k) report.psi_values.push_back(psi(k, alpha));
  for (int k = 0; k <= params.dim_cap(); ++k) {
    if (report.psi_values[k] < 1.0 && 1.0 < report.psi_values[k + 1]) {
      report.critical_dimension_k = k;
      break;
    }
  }
  report.critical_at_4g_plus_2 = in_domain(4 * params.genus() + 2, alpha);
  return report;
}

// ---------------------------------------------------------------- sampler

SimplicialComplex sample_complex(const ModelParams& params, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = params.ambient_size();
  const int cap = params.dim_cap();
  ComplexBuilder builder(n, cap);

  VertexMask present(n);
  std::vector<Simplex> level;
  for (Vertex v = 0; v < n; ++v)
    if (rng.bernoulli(params.p(0))) {
      present.set(v);
      level.push_back(Simplex{v});
    }
  for (const Simplex& s : level) builder.add(s);

  std::vector<VertexMask> neighbors(n, VertexMask(n));
  for (int d = 1; d <= cap && !level.empty(); ++d) {
    const double p = params.p(d);
    SimplexSet previous(level.begin(), level.end());
    std::vector<Simplex> kept;
    for (const Simplex& tau : level) {
      VertexMask candidates = present;
      if (d >= 2)
        for (Vertex u : tau.vertices()) candidates &= neighbors[u];
      for (auto v = candidates.find_next(tau.back()); v != VertexMask::npos;
           v = candidates.find_next(v)) {
        Simplex sigma = tau.with(static_cast<Vertex>(v));
        bool closed = true;
        if (d >= 2)
          for (const Simplex& b : sigma.boundary())
            if (!previous.count(b)) {
              closed = false;
              break;
            }
        if (closed && rng.bernoulli(p)) kept.push_back(std::move(sigma));
      }
    }
    if (d == 1)
      for (const Simplex& e : kept) {
        neighbors[e.front()].set(e.back());
        neighbors[e.back()].set(e.front());
      }
    for (const Simplex& s : kept) builder.add(s);
    level = std::move(kept);
  }
  return std::move(builder).seal();
}

// --------------------------------------------------------------- sandwich

double sandwich_log_probability(const SimplicialComplex& lower, const SimplicialComplex& upper,
                                const ModelParams& params) {
  const std::size_t n = params.ambient_size();
  if (lower.ambient_size() != n || upper.ambient_size() != n)
    throw std::invalid_argument("sandwich complexes must live on the model's " +
                                std::to_string(n) + " vertex labels");
  for (int d = 0; d <= lower.dim_cap(); ++d)
    for (const Simplex& s : lower.faces(d))
      if (!upper.contains(s))
        throw StructuralError("lower complex face " + s.to_string() + " is not in the upper complex");

  const int cap = params.dim_cap();
  const SimplicialComplex lifted = upper.dim_cap() >= cap ? upper : raise_cap(upper, cap);

  double total = 0.0;
  std::vector<std::size_t> exterior_counts(cap + 1);
  for (int d = 0; d <= cap; ++d) {
    for (const Simplex& sigma : exterior_faces(lifted, d)) {
      for (const Simplex& b : sigma.boundary())
        if (!lower.contains(b))
          throw StructuralError("boundary of exterior face " + sigma.to_string() +
                                " is not contained in the lower complex");
      ++exterior_counts[d];
    }
  }
  for (int d = cap + 1; d <= lower.dim_cap(); ++d)
    if (lower.face_count(d) > 0) return kNegInf;  // Y never has faces above r

  for (int d = 0; d <= cap; ++d) {
    const auto faces = static_cast<double>(lower.face_count(d));
    const auto exterior = static_cast<double>(exterior_counts[d]);
    if (faces > 0) total += faces * params.log_p(d);
    if (exterior > 0) total += exterior * params.log_q(d);
  }
  return std::isnan(total) ? kNegInf : total;
}

}  // namespace chainlab
