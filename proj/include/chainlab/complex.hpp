#ifndef CHAINLAB_COMPLEX_HPP
#define CHAINLAB_COMPLEX_HPP

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace chainlab {

using Vertex = std::uint32_t;
using VertexSet = std::set<Vertex>;
using VertexMask = boost::dynamic_bitset<>;

/// Raised when a complex (or a pair of complexes) violates a structural
/// requirement such as downward closure.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a queried vertex or face is absent.
class NotFoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A non-empty set of vertices kept in ascending order.
class Simplex {
 public:
  Simplex(std::initializer_list<Vertex> vertices);
  explicit Simplex(std::vector<Vertex> vertices);

  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const { return vertices_.size(); }
  std::span<const Vertex> vertices() const { return vertices_; }
  Vertex front() const { return vertices_.front(); }
  Vertex back() const { return vertices_.back(); }

  bool contains(Vertex v) const;

  /// Codimension-one faces. Vertices have an empty boundary.
  std::vector<Simplex> boundary() const;

  Simplex without(Vertex v) const;
  Simplex with(Vertex v) const;

  std::string to_string() const;

  auto operator<=>(const Simplex&) const = default;
  bool operator==(const Simplex&) const = default;

 private:
  struct Unchecked {};
  Simplex(Unchecked, std::vector<Vertex> sorted) : vertices_(std::move(sorted)) {}

  std::vector<Vertex> vertices_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

using SimplexSet = std::unordered_set<Simplex, SimplexHash>;

class ComplexBuilder;

/// Finite abstract simplicial complex inside the simplex on `ambient_size`
/// labels, holding faces of dimension at most `dim_cap`. Immutable once
/// built; construct through ComplexBuilder.
class SimplicialComplex {
 public:
  /// The empty complex.
  SimplicialComplex(std::size_t ambient_size, int dim_cap);

  std::size_t ambient_size() const { return ambient_; }
  int dim_cap() const { return cap_; }

  /// Largest dimension of a stored face, or -1 when empty.
  int dimension() const;

  bool contains(const Simplex& s) const;
  bool has_vertex(Vertex v) const { return v < ambient_ && present_.test(v); }
  bool has_edge(Vertex u, Vertex v) const;

  /// Faces of one dimension in lexicographic order. Empty outside [0, cap].
  const std::vector<Simplex>& faces(int dim) const;
  std::size_t face_count(int dim) const { return faces(dim).size(); }
  std::size_t total_faces() const;

  VertexSet vertices() const;
  const VertexMask& vertex_mask() const { return present_; }

  /// Bitmask of 1-simplex neighbours. Throws NotFoundError if v is absent.
  const VertexMask& neighbor_mask(Vertex v) const;

  bool operator==(const SimplicialComplex& other) const;

 private:
  friend class ComplexBuilder;

  std::size_t ambient_;
  int cap_;
  std::vector<std::vector<Simplex>> ordered_;
  std::vector<SimplexSet> lookup_;
  VertexMask present_;
  std::vector<VertexMask> neighbors_;
};

/// Accumulates faces, then seals them into a SimplicialComplex after
/// verifying downward closure.
class ComplexBuilder {
 public:
  ComplexBuilder(std::size_t ambient_size, int dim_cap);

  /// Adds a single face. Throws std::out_of_range for ids >= ambient size
  /// and std::invalid_argument for faces above the dimension cap.
  ComplexBuilder& add(const Simplex& s);

  /// Adds a face together with every one of its subfaces.
  ComplexBuilder& add_closed(const Simplex& s);

  /// Throws StructuralError naming the first face whose boundary is missing.
  SimplicialComplex seal() &&;

 private:
  friend SimplicialComplex flag_completion(const SimplicialComplex& graph, int dim_cap);
  friend SimplicialComplex full_skeleton(std::size_t ambient_size, int dim_cap);

  void validate(const Simplex& s) const;
  // Sealing without the closure check, for builders closed by construction.
  SimplicialComplex finish() &&;

  std::size_t ambient_;
  int cap_;
  std::vector<SimplexSet> faces_;
};

/// Counts of faces by dimension, length dim_cap + 1.
std::vector<std::size_t> f_vector(const SimplicialComplex& k);

/// Simplices of the ambient simplex of dimension `dim` that are absent from
/// `k` but whose whole boundary lies in `k`, in lexicographic order. The
/// exterior vertices are exactly the absent labels.
std::vector<Simplex> exterior_faces(const SimplicialComplex& k, int dim);

/// Faces of `k` whose vertices all lie in `subset`.
SimplicialComplex induced_subcomplex(const SimplicialComplex& k, const VertexSet& subset);

/// Neighbours of `v` along 1-simplices. Throws NotFoundError if v is absent.
VertexSet adj(const SimplicialComplex& k, Vertex v);

/// Clique complex of the 1-skeleton of `graph`, truncated at `dim_cap`.
SimplicialComplex flag_completion(const SimplicialComplex& graph, int dim_cap);

/// Every face of dimension <= dim_cap on `ambient_size` labels.
SimplicialComplex full_skeleton(std::size_t ambient_size, int dim_cap);

/// Builds a complex from a list of faces, closing each one downward.
SimplicialComplex complex_from_faces(std::size_t ambient_size, int dim_cap,
                                     const std::vector<Simplex>& faces);

// Text format: header line "N r", then one face per line as space
// separated ascending ids, ordered by dimension then lexicographically.
void write_complex(std::ostream& out, const SimplicialComplex& k);
std::string to_text(const SimplicialComplex& k);

/// Reads the text format. Listed faces are closed downward, so listing the
/// maximal faces is enough. Blank lines and lines starting with '#' are
/// skipped. Throws std::runtime_error on malformed input.
SimplicialComplex read_complex(std::istream& in);

VertexMask to_mask(const VertexSet& s, std::size_t ambient_size);
VertexSet to_set(const VertexMask& m);

}  // namespace chainlab

#endif  // CHAINLAB_COMPLEX_HPP
