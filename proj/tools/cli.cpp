#include "cli.hpp"

#include "chainlab/expansion.hpp"
#include "chainlab/expectation.hpp"
#include "chainlab/monte_carlo.hpp"
#include "chainlab/params_file.hpp"
#include "chainlab/pattern.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

namespace chainlab::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kText, kCsv, kJson };

/// Options shared by every subcommand: a parameter file, per-key overrides,
/// output destination and format.
struct RunConfig {
  std::string params_path;
  std::map<std::string, std::string> overrides;
  std::string out_path;
  std::string format = "text";

  ParamSpec spec() const {
    ParamSpec spec = params_path.empty() ? ParamSpec{} : load_params(params_path);
    if (overrides.count("alpha") && overrides.count("p")) throw UsageError("give either --alpha or --p, not both");
    ParamSpec flags;
    for (const auto& [key, value] : overrides) flags.set(key, value);
    spec.merge(flags);
    return spec;
  }

  Format output_format() const {
    if (format == "text") return Format::kText;
    if (format == "csv") return Format::kCsv;
    if (format == "json" || format == "structured") return Format::kJson;
    throw UsageError("unknown format \"" + format + "\" (text, csv, json)");
  }
};

void add_common(CLI::App* app, RunConfig& config) {
  app->add_option("--params", config.params_path, "parameter file (key = value lines)");
  for (const char* key : {"g", "N", "n", "r", "alpha", "p", "seed", "star"}) {
    const std::string name = std::string("--") + key;
    app->add_option_function<std::string>(
        name, [&config, key = std::string(key)](const std::string& v) { config.overrides[key] = v; },
        std::string("override parameter ") + key);
  }
  app->add_option("-o,--out", config.out_path, "write the main output to this file");
  app->add_option("--format", config.format, "text | csv | json");
}

/// Main output goes to --out when given, else to the command's stdout.
class Output {
 public:
  Output(const RunConfig& config, std::ostream& fallback) : stream_(&fallback) {
    if (!config.out_path.empty()) {
      file_ = std::make_unique<std::ofstream>(config.out_path, std::ios::binary);
      if (!*file_) throw UsageError("cannot write " + config.out_path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

SimplicialComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open complex file " + path);
  return read_complex(in);
}

VertexSet parse_vertex_set(const std::string& text, const SimplicialComplex& gamma) {
  VertexSet set;
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  long long id;
  while (in >> id) {
    if (id < 0 || static_cast<std::size_t>(id) >= gamma.ambient_size())
      throw UsageError("vertex " + std::to_string(id) + " out of range [0, " +
                       std::to_string(gamma.ambient_size()) + ")");
    if (!gamma.has_vertex(static_cast<Vertex>(id)))
      throw UsageError("vertex " + std::to_string(id) + " is not in the complex");
    set.insert(static_cast<Vertex>(id));
  }
  if (!in.eof()) throw UsageError("bad vertex list \"" + text + "\"");
  return set;
}

std::string join(const VertexSet& set) {
  std::string s;
  for (Vertex v : set) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

json to_json(const VertexSet& set) { return json(std::vector<Vertex>(set.begin(), set.end())); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

// ------------------------------------------------------------- commands

int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ParamSpec spec = config.spec();
  const ModelParams params = spec.resolve();
  const std::uint64_t seed = spec.seed.value_or(0);
  const SimplicialComplex k = sample_complex(params, seed);
  Output target(config, out);
  if (config.output_format() == Format::kJson) {
    json faces = json::array();
    for (int d = 0; d <= k.dim_cap(); ++d)
      for (const Simplex& s : k.faces(d)) faces.push_back(std::vector<Vertex>(s.vertices().begin(), s.vertices().end()));
    json j{{"seed", seed}, {"N", k.ambient_size()}, {"r", k.dim_cap()}, {"f_vector", f_vector(k)}, {"faces", faces}};
    *target << j.dump() << '\n';
    return kExitOk;
  }
  write_complex(*target, k);
  std::ostream& summary = target.to_file() ? out : err;
  summary << "seed " << seed << " f-vector";
  for (std::size_t f : f_vector(k)) summary << ' ' << f;
  summary << '\n';
  return kExitOk;
}

int cmd_check(const RunConfig& config, std::ostream& out) {
  const ModelParams params = config.spec().resolve();
  const ConditionReport report = check_conditions(params);
  Output target(config, out);
  if (config.output_format() == Format::kJson) {
    json j = chainlab::to_json(report);
    j["g"] = params.genus();
    j["n"] = params.scale();
    j["N"] = params.ambient_size();
    j["r"] = params.dim_cap();
    *target << j.dump(2) << '\n';
    return kExitOk;
  }
  *target << "g " << params.genus() << " n " << format_number(params.scale()) << " N "
          << params.ambient_size() << " r " << params.dim_cap() << '\n';
  *target << "alpha";
  for (double a : params.alpha()) *target << ' ' << format_number(a);
  *target << "\np";
  for (double p : params.p()) *target << ' ' << format_number(p);
  *target << "\npsi";
  for (double v : report.psi_values) *target << ' ' << format_number(v);
  *target << '\n'
          << "curve condition (alpha0+3alpha1+2alpha2 > 1, alpha2 > 0, 0 < alpha0+alpha1 < 1): "
          << yes_no(report.curve_condition_gt) << '\n'
          << "curve condition (alpha0+3alpha1+2alpha2 < 1, alpha0+alpha1 < 1): "
          << yes_no(report.curve_condition_lt) << '\n'
          << "technical condition: " << yes_no(report.technical) << '\n'
          << "critical dimension: "
          << (report.critical_dimension_k ? "k = " + std::to_string(*report.critical_dimension_k)
                                          : std::string("none"))
          << '\n'
          << "critical dimension 4g+2: " << yes_no(report.critical_at_4g_plus_2) << '\n';
  return kExitOk;
}

int cmd_expand(const RunConfig& config, const std::string& complex_path, const std::string& set_text,
               int max_stages, std::ostream& out) {
  const SimplicialComplex gamma = load_complex(complex_path);
  const VertexSet seed = parse_vertex_set(set_text, gamma);
  if (max_stages == 0) max_stages = static_cast<int>(gamma.face_count(0)) + 1;
  if (max_stages < 1) throw UsageError("--max-stages must be at least 1");
  const ExpansionTrace trace = expand_to_fixpoint(gamma, seed, max_stages);
  Output target(config, out);
  if (config.output_format() == Format::kJson) {
    json j;
    j["stages"] = json::array();
    for (const auto& stage : trace.stages) j["stages"].push_back(to_json(stage));
    j["witnesses"] = json::array();
    for (const auto& step : trace.witnesses) {
      json w = json::object();
      for (const auto& [v, set] : step) w[std::to_string(v)] = to_json(set);
      j["witnesses"].push_back(w);
    }
    j["fixpoint"] = trace.reached_fixpoint;
    j["truncated"] = trace.truncated;
    j["seed"] = trace.exhausted;
    *target << j.dump(2) << '\n';
    return kExitOk;
  }
  for (std::size_t k = 0; k < trace.stages.size(); ++k) {
    *target << "stage " << k << ": " << join(trace.stages[k]) << '\n';
    if (k > 0)
      for (const auto& [v, set] : trace.witnesses[k - 1])
        *target << "  added " << v << " determined by {" << join(set) << "}\n";
  }
  *target << "fixpoint: " << yes_no(trace.reached_fixpoint) << '\n'
          << "truncated: " << yes_no(trace.truncated) << '\n'
          << "seed: " << yes_no(trace.exhausted) << '\n';
  return kExitOk;
}

int cmd_count(const RunConfig& config, const std::string& complex_path, int clique_size, std::ostream& out) {
  const ParamSpec spec = config.spec();
  const int genus = spec.g.value_or(1);
  const SimplicialComplex y = load_complex(complex_path);
  if (clique_size == 0) clique_size = 2 * genus + 4;
  const PatternCount count = count_pattern_occurrences(y, genus, clique_size);
  Output target(config, out);
  if (config.output_format() == Format::kJson) {
    json j{{"g", genus},
           {"clique_size", clique_size},
           {"subsets", count.subsets},
           {"labelings", count.labelings},
           {"subsets_in_clique", count.subsets_in_clique},
           {"labelings_in_clique", count.labelings_in_clique}};
    *target << j.dump(2) << '\n';
    return kExitOk;
  }
  *target << "g " << genus << " clique_size " << clique_size << '\n'
          << "subsets " << count.subsets << '\n'
          << "labelings " << count.labelings << '\n'
          << "subsets_in_clique " << count.subsets_in_clique << '\n'
          << "labelings_in_clique " << count.labelings_in_clique << '\n';
  return kExitOk;
}

int cmd_chain(const RunConfig& config, const std::string& complex_path, const std::string& sequence_text,
              std::ostream& out) {
  const ParamSpec spec = config.spec();
  const StarPattern star = spec.star ? StarPattern(*spec.star) : StarPattern();
  const SimplicialComplex gamma = load_complex(complex_path);
  const VertexSet members = parse_vertex_set(sequence_text, gamma);
  std::vector<Vertex> sequence;
  {
    std::string cleaned = sequence_text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in(cleaned);
    long long id;
    while (in >> id) sequence.push_back(static_cast<Vertex>(id));
  }
  if (members.size() != sequence.size()) throw UsageError("sequence repeats a vertex");
  const bool closed = is_closed_chain(gamma, sequence, star);
  Output target(config, out);
  if (config.output_format() == Format::kJson) {
    *target << json{{"sequence", sequence}, {"closed_chain", closed}}.dump() << '\n';
    return kExitOk;
  }
  *target << "closed chain: " << yes_no(closed) << '\n';
  return kExitOk;
}

int cmd_mc(const RunConfig& config, const std::string& event, std::uint64_t trials, int clique_size,
           unsigned threads, std::ostream& out) {
  if (trials == 0) throw UsageError("--trials must be at least 1");
  const ParamSpec spec = config.spec();
  McRequest request{spec.resolve()};
  request.event = parse_event(event);
  request.trials = trials;
  request.seed = spec.seed.value_or(0);
  request.clique_size = clique_size;
  request.threads = threads;

  const MCEstimate estimate = mc_estimate(request);
  const double closed = mc_closed_form(request);
  const double gap = std::abs(estimate.mean - closed);
  const bool pass = estimate.std_error > 0 ? gap <= 4 * estimate.std_error
                                           : gap <= 1e-12 * std::max(1.0, std::abs(closed));
  Output target(config, out);
  if (config.output_format() == Format::kJson) {
    json j{{"event", to_string(request.event)},
           {"seed", estimate.seed},
           {"trials", estimate.trials},
           {"mean", estimate.mean},
           {"variance", estimate.variance},
           {"stderr", estimate.std_error},
           {"closed_form", closed},
           {"pass_4_stderr", pass}};
    *target << j.dump(2) << '\n';
    return kExitOk;
  }
  *target << "event " << to_string(request.event) << '\n'
          << "seed " << estimate.seed << '\n'
          << "trials " << estimate.trials << '\n'
          << "mean " << format_number(estimate.mean) << '\n'
          << "variance " << format_number(estimate.variance) << '\n'
          << "stderr " << format_number(estimate.std_error) << '\n'
          << "closed_form " << format_number(closed) << '\n'
          << "within_4_stderr " << yes_no(pass) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, int g_min, int g_max, const std::string& alpha_rule, bool strict,
              std::ostream& out) {
  SweepConfig sweep_config;
  sweep_config.g_min = g_min;
  sweep_config.g_max = g_max;
  sweep_config.scale_rule = strict ? ScaleRule::kPowerOfTwo : ScaleRule::kLifted;
  if (alpha_rule == "technical") {
    sweep_config.alpha_rule = AlphaRule::kTechnical;
  } else if (alpha_rule == "fixed") {
    const ParamSpec spec = config.spec();
    if (!spec.alpha) throw UsageError("--alpha-rule fixed needs alpha");
    sweep_config.alpha_rule = AlphaRule::kFixed;
    sweep_config.fixed_alpha = *spec.alpha;
  } else {
    throw UsageError("unknown alpha rule \"" + alpha_rule + "\" (technical, fixed)");
  }
  const auto rows = sweep(sweep_config);
  Output target(config, out);
  if (config.output_format() == Format::kJson) {
    json j = json::array();
    for (const auto& row : rows) j.push_back(chainlab::to_json(row));
    *target << j.dump(2) << '\n';
    return kExitOk;
  }
  *target << csv_header() << '\n';
  for (const auto& row : rows) *target << csv_row(row) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random simplicial complexes, rigid expansions and chain-pattern expectations", "chainlab"};
  app.require_subcommand(1);

  RunConfig sample_cfg, check_cfg, expand_cfg, count_cfg, chain_cfg, mc_cfg, sweep_cfg;

  auto* sample = app.add_subcommand("sample", "sample a complex and write it in the text format");
  add_common(sample, sample_cfg);

  auto* check = app.add_subcommand("check", "report the parameter conditions");
  add_common(check, check_cfg);

  std::string expand_complex, expand_set;
  int max_stages = 0;
  auto* expand = app.add_subcommand("expand", "iterate rigid expansions of a vertex set");
  add_common(expand, expand_cfg);
  expand->add_option("--complex", expand_complex, "complex file")->required();
  expand->add_option("--set", expand_set, "starting vertex ids")->required();
  expand->add_option("--max-stages", max_stages, "expansion limit (default |V| + 1)");

  std::string count_complex;
  int count_clique = 0;
  auto* count = app.add_subcommand("count", "count seed-pattern occurrences in a complex");
  add_common(count, count_cfg);
  count->add_option("--complex", count_complex, "complex file")->required();
  count->add_option("--clique-size", count_clique, "ambient clique size (default 2g + 4)");

  std::string chain_complex, chain_sequence;
  auto* chain = app.add_subcommand("chain", "test whether a vertex sequence is a closed chain");
  add_common(chain, chain_cfg);
  chain->add_option("--complex", chain_complex, "complex file")->required();
  chain->add_option("--sequence", chain_sequence, "cyclic vertex sequence")->required();

  std::string event = "sandwich";
  std::uint64_t trials = 10000;
  int mc_clique = 0;
  unsigned threads = 1;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate against the closed form");
  add_common(mc, mc_cfg);
  mc->add_option("--event", event, "sandwich | pattern_count | clique_count");
  mc->add_option("--trials", trials, "number of sampled complexes");
  mc->add_option("--clique-size", mc_clique, "m for clique_count");
  mc->add_option("--threads", threads, "worker threads (0 = all cores); results do not depend on it");

  int g_min = 2, g_max = 10;
  std::string alpha_rule = "technical";
  bool strict = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "expectation report per genus as CSV");
  add_common(sweep_cmd, sweep_cfg);
  sweep_cfg.format = "csv";
  sweep_cmd->add_option("--g-min", g_min, "first genus");
  sweep_cmd->add_option("--g-max", g_max, "last genus");
  sweep_cmd->add_option("--alpha-rule", alpha_rule, "technical | fixed");
  sweep_cmd->add_flag("--strict", strict, "use n = N = 2^g even when 4g + 2 > n");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*sample) return cmd_sample(sample_cfg, out, err);
    if (*check) return cmd_check(check_cfg, out);
    if (*expand) return cmd_expand(expand_cfg, expand_complex, expand_set, max_stages, out);
    if (*count) return cmd_count(count_cfg, count_complex, count_clique, out);
    if (*chain) return cmd_chain(chain_cfg, chain_complex, chain_sequence, out);
    if (*mc) return cmd_mc(mc_cfg, event, trials, mc_clique, threads, out);
    if (*sweep_cmd) return cmd_sweep(sweep_cfg, g_min, g_max, alpha_rule, strict, out);
  } catch (const StructuralError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace chainlab::cli
