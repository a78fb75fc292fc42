#include "chainlab/complex.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace chainlab {

namespace {

const std::vector<Simplex>& empty_faces() {
  static const std::vector<Simplex> none;
  return none;
}

// Common neighbourhood of every vertex of `s`.
VertexMask common_neighbors(const SimplicialComplex& k, const Simplex& s) {
  VertexMask mask = k.neighbor_mask(s.front());
  for (Vertex u : s.vertices().subspan(1)) mask &= k.neighbor_mask(u);
  return mask;
}

}  // namespace

// ---------------------------------------------------------------- Simplex

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : Simplex(std::vector<Vertex>(vertices)) {}

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("simplex must have at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw std::invalid_argument("simplex has a repeated vertex");
}

bool Simplex::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::vector<Simplex> Simplex::boundary() const {
  std::vector<Simplex> out;
  if (vertices_.size() < 2) return out;
  out.reserve(vertices_.size());
  for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
    std::vector<Vertex> face;
    face.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (i != skip) face.push_back(vertices_[i]);
    out.push_back(Simplex(Unchecked{}, std::move(face)));
  }
  return out;
}

Simplex Simplex::without(Vertex v) const {
  std::vector<Vertex> rest;
  rest.reserve(vertices_.size());
  for (Vertex u : vertices_)
    if (u != v) rest.push_back(u);
  if (rest.size() == vertices_.size()) throw NotFoundError("vertex not in simplex");
  return Simplex(std::move(rest));
}

Simplex Simplex::with(Vertex v) const {
  std::vector<Vertex> more(vertices_);
  auto pos = std::lower_bound(more.begin(), more.end(), v);
  if (pos != more.end() && *pos == v) throw std::invalid_argument("vertex already in simplex");
  more.insert(pos, v);
  return Simplex(Unchecked{}, std::move(more));
}

std::string Simplex::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(vertices_[i]);
  }
  return s + "}";
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Vertex v : s.vertices()) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

// ------------------------------------------------------ SimplicialComplex

SimplicialComplex::SimplicialComplex(std::size_t ambient_size, int dim_cap)
    : ambient_(ambient_size),
      cap_(dim_cap),
      ordered_(dim_cap >= 0 ? dim_cap + 1 : 0),
      lookup_(dim_cap >= 0 ? dim_cap + 1 : 0),
      present_(ambient_size),
      neighbors_(ambient_size, VertexMask(ambient_size)) {
  if (dim_cap < 0) throw std::invalid_argument("dimension cap must be non-negative");
}

int SimplicialComplex::dimension() const {
  for (int d = cap_; d >= 0; --d)
    if (!ordered_[d].empty()) return d;
  return -1;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  const int d = s.dimension();
  if (d > cap_) return false;
  if (d == 0) return has_vertex(s.front());
  if (d == 1) return has_edge(s.front(), s.back());
  return lookup_[d].count(s) != 0;
}

bool SimplicialComplex::has_edge(Vertex u, Vertex v) const {
  return u < ambient_ && v < ambient_ && neighbors_[u].test(v);
}

const std::vector<Simplex>& SimplicialComplex::faces(int dim) const {
  if (dim < 0 || dim > cap_) return empty_faces();
  return ordered_[dim];
}

std::size_t SimplicialComplex::total_faces() const {
  std::size_t total = 0;
  for (const auto& level : ordered_) total += level.size();
  return total;
}

VertexSet SimplicialComplex::vertices() const { return to_set(present_); }

const VertexMask& SimplicialComplex::neighbor_mask(Vertex v) const {
  if (!has_vertex(v)) throw NotFoundError("vertex " + std::to_string(v) + " is not in the complex");
  return neighbors_[v];
}

bool SimplicialComplex::operator==(const SimplicialComplex& other) const {
  return ambient_ == other.ambient_ && cap_ == other.cap_ && ordered_ == other.ordered_;
}

// --------------------------------------------------------- ComplexBuilder

ComplexBuilder::ComplexBuilder(std::size_t ambient_size, int dim_cap)
    : ambient_(ambient_size), cap_(dim_cap), faces_(dim_cap >= 0 ? dim_cap + 1 : 0) {
  if (dim_cap < 0) throw std::invalid_argument("dimension cap must be non-negative");
}

void ComplexBuilder::validate(const Simplex& s) const {
  if (s.back() >= ambient_)
    throw std::out_of_range("vertex " + std::to_string(s.back()) + " exceeds ambient size " +
                            std::to_string(ambient_));
  if (s.dimension() > cap_)
    throw std::invalid_argument("face " + s.to_string() + " exceeds dimension cap " +
                                std::to_string(cap_));
}

ComplexBuilder& ComplexBuilder::add(const Simplex& s) {
  validate(s);
  faces_[s.dimension()].insert(s);
  return *this;
}

ComplexBuilder& ComplexBuilder::add_closed(const Simplex& s) {
  validate(s);
  if (!faces_[s.dimension()].insert(s).second) return *this;
  for (const Simplex& b : s.boundary()) add_closed(b);
  return *this;
}

SimplicialComplex ComplexBuilder::seal() && {
  for (int d = 1; d <= cap_; ++d)
    for (const Simplex& s : faces_[d])
      for (const Simplex& b : s.boundary())
        if (!faces_[d - 1].count(b))
          throw StructuralError("face " + s.to_string() + " is missing boundary face " +
                                b.to_string());
  return std::move(*this).finish();
}

SimplicialComplex ComplexBuilder::finish() && {
  SimplicialComplex k(ambient_, cap_);
  for (int d = 0; d <= cap_; ++d) {
    auto& level = k.ordered_[d];
    level.assign(faces_[d].begin(), faces_[d].end());
    std::sort(level.begin(), level.end());
    if (d >= 2) k.lookup_[d] = std::move(faces_[d]);
  }
  for (const Simplex& v : k.ordered_[0]) k.present_.set(v.front());
  if (cap_ >= 1) {
    for (const Simplex& e : k.ordered_[1]) {
      k.neighbors_[e.front()].set(e.back());
      k.neighbors_[e.back()].set(e.front());
    }
  }
  return k;
}

// ---------------------------------------------------------- free functions

std::vector<std::size_t> f_vector(const SimplicialComplex& k) {
  std::vector<std::size_t> counts(k.dim_cap() + 1);
  for (int d = 0; d <= k.dim_cap(); ++d) counts[d] = k.face_count(d);
  return counts;
}

std::vector<Simplex> exterior_faces(const SimplicialComplex& k, int dim) {
  if (dim < 0 || dim > k.dim_cap())
    throw std::out_of_range("dimension " + std::to_string(dim) + " outside [0, " +
                            std::to_string(k.dim_cap()) + "]");
  std::vector<Simplex> out;
  const auto n = static_cast<Vertex>(k.ambient_size());
  if (dim == 0) {
    for (Vertex v = 0; v < n; ++v)
      if (!k.has_vertex(v)) out.push_back(Simplex{v});
    return out;
  }
  // Any exterior face is tau + {v} with tau its lexicographically first
  // boundary face, and v adjacent to all of tau when dim >= 2.
  for (const Simplex& tau : k.faces(dim - 1)) {
    VertexMask candidates = dim == 1 ? k.vertex_mask() : common_neighbors(k, tau);
    for (auto v = candidates.find_next(tau.back()); v != VertexMask::npos;
         v = candidates.find_next(v)) {
      Simplex sigma = tau.with(static_cast<Vertex>(v));
      if (k.contains(sigma)) continue;
      bool closed = true;
      for (const Simplex& b : sigma.boundary())
        if (!k.contains(b)) {
          closed = false;
          break;
        }
      if (closed) out.push_back(std::move(sigma));
    }
  }
  return out;
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& k, const VertexSet& subset) {
  ComplexBuilder builder(k.ambient_size(), k.dim_cap());
  for (int d = 0; d <= k.dim_cap(); ++d)
    for (const Simplex& s : k.faces(d)) {
      bool inside = true;
      for (Vertex v : s.vertices())
        if (!subset.count(v)) {
          inside = false;
          break;
        }
      if (inside) builder.add(s);
    }
  return std::move(builder).seal();
}

VertexSet adj(const SimplicialComplex& k, Vertex v) { return to_set(k.neighbor_mask(v)); }

SimplicialComplex flag_completion(const SimplicialComplex& graph, int dim_cap) {
  ComplexBuilder builder(graph.ambient_size(), dim_cap);
  std::vector<Simplex> level(graph.faces(0));
  for (const Simplex& s : level) builder.add(s);
  if (dim_cap >= 1) {
    level = graph.faces(1);
    for (const Simplex& s : level) builder.add(s);
  }
  for (int d = 2; d <= dim_cap && !level.empty(); ++d) {
    std::vector<Simplex> next;
    for (const Simplex& tau : level) {
      VertexMask candidates = common_neighbors(graph, tau);
      for (auto v = candidates.find_next(tau.back()); v != VertexMask::npos;
           v = candidates.find_next(v))
        next.push_back(tau.with(static_cast<Vertex>(v)));
    }
    for (const Simplex& s : next) builder.add(s);
    level = std::move(next);
  }
  return std::move(builder).finish();
}

SimplicialComplex full_skeleton(std::size_t ambient_size, int dim_cap) {
  ComplexBuilder builder(ambient_size, dim_cap);
  std::vector<Simplex> level;
  for (Vertex v = 0; v < ambient_size; ++v) level.push_back(Simplex{v});
  for (int d = 0; d <= dim_cap && !level.empty(); ++d) {
    for (const Simplex& s : level) builder.add(s);
    std::vector<Simplex> next;
    for (const Simplex& s : level)
      for (Vertex v = s.back() + 1; v < ambient_size; ++v) next.push_back(s.with(v));
    level = std::move(next);
  }
  return std::move(builder).finish();
}

SimplicialComplex complex_from_faces(std::size_t ambient_size, int dim_cap,
                                     const std::vector<Simplex>& faces) {
  ComplexBuilder builder(ambient_size, dim_cap);
  for (const Simplex& s : faces) builder.add_closed(s);
  return std::move(builder).seal();
}

void write_complex(std::ostream& out, const SimplicialComplex& k) {
  out << k.ambient_size() << ' ' << k.dim_cap() << '\n';
  for (int d = 0; d <= k.dim_cap(); ++d)
    for (const Simplex& s : k.faces(d)) {
      bool first = true;
      for (Vertex v : s.vertices()) {
        if (!first) out << ' ';
        out << v;
        first = false;
      }
      out << '\n';
    }
}

std::string to_text(const SimplicialComplex& k) {
  std::ostringstream out;
  write_complex(out, k);
  return out.str();
}

SimplicialComplex read_complex(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw std::runtime_error("complex file: missing header line \"N r\"");
  long long ambient = -1, cap = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> ambient >> cap) || (header >> extra) || ambient < 0 || cap < 0)
      throw std::runtime_error("complex file: malformed header \"" + line + "\"");
  }
  ComplexBuilder builder(static_cast<std::size_t>(ambient), static_cast<int>(cap));
  std::size_t lineno = 1;
  while (next_line()) {
    ++lineno;
    std::istringstream row(line);
    std::vector<Vertex> ids;
    long long id;
    while (row >> id) {
      if (id < 0) throw std::runtime_error("complex file: negative vertex id");
      ids.push_back(static_cast<Vertex>(id));
    }
    if (!row.eof()) throw std::runtime_error("complex file: bad token in \"" + line + "\"");
    try {
      builder.add_closed(Simplex(std::move(ids)));
    } catch (const std::logic_error& e) {
      throw std::runtime_error("complex file, face " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return std::move(builder).seal();
}

VertexMask to_mask(const VertexSet& s, std::size_t ambient_size) {
  VertexMask m(ambient_size);
  for (Vertex v : s) {
    if (v >= ambient_size) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    m.set(v);
  }
  return m;
}

VertexSet to_set(const VertexMask& m) {
  VertexSet s;
  for (auto v = m.find_first(); v != VertexMask::npos; v = m.find_next(v))
    s.insert(static_cast<Vertex>(v));
  return s;
}

}  // namespace chainlab
