#include "chainlab/complex.hpp"
#include "chainlab/pattern.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace chainlab;

namespace {

SimplicialComplex triangle() { return complex_from_faces(3, 2, {Simplex{0, 1, 2}}); }

SimplicialComplex graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  ComplexBuilder b(n, 1);
  for (Vertex v = 0; v < n; ++v) b.add(Simplex{v});
  for (auto [u, v] : edges) b.add(Simplex{u, v});
  return std::move(b).seal();
}

bool downward_closed(const SimplicialComplex& k) {
  for (int d = 1; d <= k.dim_cap(); ++d)
    for (const Simplex& s : k.faces(d))
      for (const Simplex& b : s.boundary())
        if (!k.contains(b)) return false;
  return true;
}

// Brute force: every subset of at most dim_cap + 1 vertices whose pairs are edges.
std::vector<Simplex> brute_force_cliques(const SimplicialComplex& g, int dim_cap) {
  std::vector<Simplex> out;
  const auto n = static_cast<Vertex>(g.ambient_size());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> members;
    for (Vertex v = 0; v < n; ++v)
      if (mask & (1u << v)) members.push_back(v);
    if (static_cast<int>(members.size()) > dim_cap + 1) continue;
    bool clique = true;
    for (Vertex v : members) clique = clique && g.has_vertex(v);
    for (std::size_t i = 0; i < members.size() && clique; ++i)
      for (std::size_t j = i + 1; j < members.size() && clique; ++j)
        clique = g.has_edge(members[i], members[j]);
    if (clique) out.push_back(Simplex(members));
  }
  return out;
}

SimplicialComplex random_complex(std::mt19937& gen, std::size_t n, int cap) {
  std::bernoulli_distribution coin(0.6);
  ComplexBuilder b(n, cap);
  for (Vertex v = 0; v < n; ++v)
    if (coin(gen)) b.add(Simplex{v});
  SimplicialComplex current = std::move(b).seal();
  for (int d = 1; d <= cap; ++d) {
    ComplexBuilder next(n, cap);
    for (int e = 0; e < d; ++e)
      for (const Simplex& s : current.faces(e)) next.add(s);
    for (const Simplex& s : exterior_faces(current, d))
      if (coin(gen)) next.add(s);
    current = std::move(next).seal();
  }
  return current;
}

}  // namespace

TEST_CASE("simplex keeps vertices sorted and rejects duplicates") {
  Simplex s{3, 1, 2};
  CHECK(s.dimension() == 2);
  CHECK(s.front() == 1);
  CHECK(s.back() == 3);
  CHECK_THROWS_AS(Simplex({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Simplex(std::vector<Vertex>{}), std::invalid_argument);
  CHECK(Simplex{4}.boundary().empty());
  CHECK(s.boundary().size() == 3);
  CHECK(s.without(2) == Simplex{1, 3});
  CHECK(s.with(0) == Simplex{0, 1, 2, 3});
}

TEST_CASE("builder enforces downward closure, ids and dimension cap") {
  ComplexBuilder b(4, 2);
  b.add(Simplex{0}).add(Simplex{1}).add(Simplex{0, 1, 2});
  CHECK_THROWS_AS(std::move(b).seal(), StructuralError);
  CHECK_THROWS_AS(ComplexBuilder(3, 1).add(Simplex{5}), std::out_of_range);
  CHECK_THROWS_AS(ComplexBuilder(4, 1).add(Simplex{0, 1, 2}), std::invalid_argument);
}

TEST_CASE("f_vector") {
  CHECK(f_vector(SimplicialComplex(5, 2)) == std::vector<std::size_t>{0, 0, 0});
  CHECK(f_vector(full_skeleton(4, 2)) == std::vector<std::size_t>{4, 6, 4});
  const auto f = f_vector(build_pattern(3).graph_a);
  CHECK(f[0] == 10);
  CHECK(f[1] == 28);
}

TEST_CASE("exterior faces") {
  const PatternPair pattern = build_pattern(3);
  const auto sides = exterior_faces(pattern.flag_b, 1);
  REQUIRE(sides.size() == 8);
  for (const Simplex& e : sides) {
    const Vertex d = e.back() - e.front();
    CHECK(e.back() < 8);
    CHECK((d == 1 || d == 7));
  }
  for (int d = 2; d <= pattern.flag_b.dim_cap(); ++d) CHECK(exterior_faces(pattern.flag_b, d).empty());

  const SimplicialComplex full = full_skeleton(6, 3);
  for (int d = 0; d <= 3; ++d) CHECK(exterior_faces(full, d).empty());

  SUBCASE("absent vertices are the exterior 0-faces") {
    const SimplicialComplex k = complex_from_faces(5, 1, {Simplex{0, 2}});
    CHECK(exterior_faces(k, 0) == std::vector<Simplex>{Simplex{1}, Simplex{3}, Simplex{4}});
  }
  SUBCASE("hollow triangle has its 2-face exterior") {
    const SimplicialComplex k = graph(3, {{0, 1}, {1, 2}, {0, 2}});
    const SimplicialComplex lifted = complex_from_faces(3, 2, {Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}});
    CHECK(exterior_faces(lifted, 2) == std::vector<Simplex>{Simplex{0, 1, 2}});
    CHECK_THROWS_AS(exterior_faces(k, 2), std::out_of_range);
  }
}

TEST_CASE("exterior face properties on random complexes") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 60; ++trial) {
    const SimplicialComplex k = random_complex(gen, 7, 3);
    REQUIRE(downward_closed(k));
    for (int d = 0; d <= 3; ++d)
      for (const Simplex& s : exterior_faces(k, d)) {
        CHECK_FALSE(k.contains(s));
        for (const Simplex& b : s.boundary()) CHECK(k.contains(b));
      }
  }
}

TEST_CASE("induced subcomplex") {
  const SimplicialComplex t = triangle();
  CHECK(induced_subcomplex(t, {0, 1, 2}) == t);
  CHECK(induced_subcomplex(t, {}).total_faces() == 0);
  const SimplicialComplex edge = induced_subcomplex(t, {0, 1});
  CHECK(f_vector(edge) == std::vector<std::size_t>{2, 1, 0});
  CHECK(edge.contains(Simplex{0, 1}));

  std::mt19937 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SimplicialComplex k = random_complex(gen, 8, 2);
    VertexSet subset;
    for (Vertex v = 0; v < 8; ++v)
      if (gen() % 2) subset.insert(v);
    const SimplicialComplex once = induced_subcomplex(k, subset);
    CHECK(downward_closed(once));
    CHECK(induced_subcomplex(once, subset) == once);
  }
}

TEST_CASE("adj") {
  const SimplicialComplex star = graph(5, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(adj(star, 4).empty());
  CHECK(adj(star, 0) == VertexSet{1, 2, 3});
  CHECK_THROWS_AS(adj(complex_from_faces(3, 1, {Simplex{0}}), 2), NotFoundError);

  // v0 in pattern A for g = 3: diagonals of the octagon at v0 plus w0.
  const PatternPair pattern = build_pattern(3);
  const VertexSet around = adj(pattern.graph_a, 0);
  VertexSet expected;
  for (Vertex j = 2; j <= 6; ++j) expected.insert(j);  // excludes v1 and v7
  expected.insert(8);                                   // w0
  CHECK(around == expected);
  CHECK(around.size() == 6);
}

TEST_CASE("flag completion") {
  const SimplicialComplex tri = flag_completion(graph(3, {{0, 1}, {1, 2}, {0, 2}}), 3);
  CHECK(tri.contains(Simplex{0, 1, 2}));
  const SimplicialComplex square = flag_completion(graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 3);
  CHECK(square.dimension() == 1);

  SUBCASE("graph of B for g = 3 against brute-force cliques") {
    const PatternPair pattern = build_pattern(3, 6);
    ComplexBuilder b(10, 1);
    for (const Simplex& s : pattern.flag_b.faces(0)) b.add(s);
    for (const Simplex& s : pattern.flag_b.faces(1)) b.add(s);
    const SimplicialComplex g = std::move(b).seal();
    const SimplicialComplex flag = flag_completion(g, 6);
    const auto cliques = brute_force_cliques(g, 6);
    CHECK(flag.total_faces() == cliques.size());
    for (const Simplex& c : cliques) CHECK(flag.contains(c));
    // {w0, w1, v0, v2, v4}: every 3-subset spans a 2-face.
    const std::vector<Vertex> five{8, 9, 0, 2, 4};
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        for (std::size_t k = j + 1; k < 5; ++k) CHECK(flag.contains(Simplex{five[i], five[j], five[k]}));
  }

  SUBCASE("edge count is preserved") {
    std::mt19937 gen(3);
    for (int trial = 0; trial < 20; ++trial) {
      const SimplicialComplex g = random_complex(gen, 9, 1);
      const SimplicialComplex flag = flag_completion(g, 4);
      CHECK(downward_closed(flag));
      CHECK(flag.face_count(1) == g.face_count(1));
      CHECK(flag.total_faces() == brute_force_cliques(g, 4).size());
    }
  }
}

TEST_CASE("text format round trip") {
  const SimplicialComplex k = build_pattern(2).flag_b;
  std::istringstream in(to_text(k));
  CHECK(read_complex(in) == k);

  std::istringstream empty("6 1\n");
  CHECK(read_complex(empty).total_faces() == 0);
  CHECK(to_text(SimplicialComplex(6, 1)) == "6 1\n");

  std::istringstream maximal("# two triangles\n4 2\n0 1 2\n1 2 3\n");
  CHECK(f_vector(read_complex(maximal)) == std::vector<std::size_t>{4, 5, 2});

  std::istringstream bad_id("3 1\n0 7\n");
  CHECK_THROWS_AS(read_complex(bad_id), std::runtime_error);
  std::istringstream bad_header("three\n");
  CHECK_THROWS_AS(read_complex(bad_header), std::runtime_error);
}
