#include "chainlab/params_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chainlab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_scalar(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  std::string rest;
  if (!(in >> out) || (in >> rest)) throw std::runtime_error("bad value for " + key + ": \"" + value + "\"");
  return out;
}

std::string separators_to_spaces(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == ';'; }, ' ');
  return s;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::istringstream in(separators_to_spaces(text));
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw std::runtime_error("bad number \"" + token + "\"");
    values.push_back(v);
  }
  if (values.empty()) throw std::runtime_error("empty number list");
  return values;
}

StarEdges parse_star_edges(const std::string& text) {
  std::istringstream in(separators_to_spaces(text));
  StarEdges edges;
  std::string token;
  while (in >> token) {
    const auto dash = token.find('-');
    if (dash == std::string::npos) throw std::runtime_error("star edge \"" + token + "\" is not of the form a-b");
    const int a = parse_scalar<int>("star", token.substr(0, dash));
    const int b = parse_scalar<int>("star", token.substr(dash + 1));
    edges.emplace_back(a, b);
  }
  return edges;
}

void ParamSpec::set(const std::string& key, const std::string& value) {
  if (key == "g") g = parse_scalar<int>(key, value);
  else if (key == "N") N = parse_scalar<long long>(key, value);
  else if (key == "n") n = parse_scalar<double>(key, value);
  else if (key == "r") r = parse_scalar<int>(key, value);
  else if (key == "alpha") alpha = parse_number_list(value);
  else if (key == "p") p = parse_number_list(value);
  else if (key == "seed") seed = parse_scalar<std::uint64_t>(key, value);
  else if (key == "star") star = parse_star_edges(value);
  else throw std::runtime_error("unknown parameter \"" + key + "\"");
}

void ParamSpec::merge(const ParamSpec& o) {
  if (o.g) g = o.g;
  if (o.N) N = o.N;
  if (o.n) n = o.n;
  if (o.r) r = o.r;
  if (o.alpha) {
    alpha = o.alpha;
    p.reset();
  }
  if (o.p) {
    p = o.p;
    alpha.reset();
  }
  if (o.seed) seed = o.seed;
  if (o.star) star = o.star;
}

ModelParams ParamSpec::resolve() const {
  const int genus = g.value_or(1);
  if (genus < 1) throw std::invalid_argument("g must be at least 1");
  if (alpha && p) throw std::invalid_argument("give either alpha or p, not both");
  if (!alpha && !p) throw std::invalid_argument("one of alpha or p is required");
  if (!n && genus > 62) throw std::invalid_argument("n = 2^g overflows; set n explicitly");
  const double scale = n.value_or(std::ldexp(1.0, genus));
  long long ambient = 0;
  if (N) {
    ambient = *N;
  } else {
    if (std::floor(scale) != scale || scale > 1e12)
      throw std::invalid_argument("N defaults to n, which must then be a moderate integer");
    ambient = static_cast<long long>(scale);
  }
  if (ambient < 1) throw std::invalid_argument("N must be positive");
  const std::size_t list_len = alpha ? alpha->size() : p->size();
  const bool genus_defaults = alpha && !N;
  const int cap = r ? *r : genus_defaults ? std::max(0, 3 * genus - 3) : static_cast<int>(list_len) - 1;
  if (alpha) {
    std::vector<double> a = *alpha;
    if (cap >= 0 && a.size() < static_cast<std::size_t>(cap) + 1) a.resize(cap + 1, 0.0);
    return ModelParams::from_alpha(genus, scale, static_cast<std::size_t>(ambient), cap, std::move(a));
  }
  return ModelParams::from_probabilities(genus, scale, static_cast<std::size_t>(ambient), cap, *p);
}

ParamSpec parse_params(std::istream& in) {
  ParamSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected key = value");
    try {
      spec.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return spec;
}

ParamSpec load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file " + path);
  return parse_params(in);
}

}  // namespace chainlab
