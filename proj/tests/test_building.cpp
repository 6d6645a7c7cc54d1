#include <set>

#include "btb/building.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace btb;

namespace {

LatticeClass L0(const Field& F, int r) { return LatticeClass(Lattice::standard(F, r)); }

}  // namespace

TEST_CASE("subspace counts are Gaussian binomials") {
  const Field& F2 = Field::get(2, 1);
  CHECK(enumerate_subspaces(F2, 3, 1).size() == 7);
  CHECK(enumerate_subspaces(F2, 3, 2).size() == 7);
  CHECK(enumerate_subspaces(F2, 4, 2).size() == 35);
  const Field& F3 = Field::get(3, 1);
  CHECK(enumerate_subspaces(F3, 2, 1).size() == 4);
  CHECK(neighbor_count(2, 2) == 3);
  CHECK(neighbor_count(3, 2) == 4);
  CHECK(neighbor_count(2, 3) == 14);
}

TEST_CASE("neighbor census") {
  CHECK(neighbors(L0(Field::get(2, 1), 2)).size() == 3);
  CHECK(neighbors(L0(Field::get(3, 1), 2)).size() == 4);
  CHECK(neighbors(L0(Field::get(2, 1), 3)).size() == 14);
  CHECK(neighbors(L0(Field::get(2, 2), 2)).size() == 5);
  for (const auto& n : neighbors(L0(Field::get(2, 1), 3))) CHECK(distance(L0(Field::get(2, 1), 3), n) == 1);
}

TEST_CASE("ball counts") {
  const Field& F = Field::get(2, 1);
  const Ball b0 = Ball::build(L0(F, 2), 0);
  CHECK(b0.size() == 1);
  CHECK(b0.simplices(1).empty());
  const Ball b1 = Ball::build(L0(F, 2), 1);
  CHECK(b1.size() == 4);
  CHECK(b1.simplices(1).size() == 3);
  const Ball b2 = Ball::build(L0(F, 2), 2);
  CHECK(b2.size() == 10);
  CHECK(b2.simplices(1).size() == 9);
  CHECK(b2.simplices(2).empty());
  CHECK(simplices(b2, 5).empty());
  CHECK_THROWS_AS(Ball::build(L0(F, 2), 3, 12), BudgetError);
}

TEST_CASE("every ball vertex has the full neighbor count") {
  for (auto [p, r, N] : {std::tuple{2, 2, 3}, {3, 2, 3}, {2, 3, 2}}) {
    const Field& F = Field::get(p, 1);
    const Ball b = Ball::build(L0(F, r), N);
    for (int v = 0; v < b.size(); ++v) {
      CHECK(static_cast<long long>(neighbors(b.vertex(v)).size()) == neighbor_count(p, r));
      if (b.depth(v) < N) CHECK(static_cast<long long>(b.adjacent(v).size()) == neighbor_count(p, r));
    }
  }
}

TEST_CASE("rank 3 chambers and face closure") {
  const Field& F = Field::get(2, 1);
  const Ball b = Ball::build(L0(F, 3), 2);
  int through_center = 0;
  for (const auto& s : b.simplices(2)) {
    std::set<int> types;
    for (int id : s.ids) types.insert(b.type(id));
    CHECK(types == std::set<int>{0, 1, 2});
    if (std::find(s.ids.begin(), s.ids.end(), 0) != s.ids.end()) ++through_center;
  }
  CHECK(through_center == 21);
  for (int d = 1; d <= b.max_dim(); ++d) {
    const auto& lower = b.simplices(d - 1);
    for (const auto& s : b.simplices(d)) {
      for (std::size_t j = 0; j < s.ids.size(); ++j) {
        Simplex face = s;
        face.ids.erase(face.ids.begin() + static_cast<std::ptrdiff_t>(j));
        CHECK(std::binary_search(lower.begin(), lower.end(), face));
      }
    }
  }
  for (const auto& e : b.simplices(1)) CHECK(b.type(e.ids[0]) != b.type(e.ids[1]));
}

TEST_CASE("elementary-divisor distance equals BFS distance") {
  for (auto [p, r] : {std::pair{2, 2}, {2, 3}}) {
    const Field& F = Field::get(p, 1);
    const Ball b = Ball::build(L0(F, r), 3);
    for (int v = 0; v < b.size(); ++v) {
      if (b.depth(v) > 1) continue;
      for (int w = 0; w < b.size(); ++w) {
        if (b.depth(w) > 1) continue;
        CHECK(bfs_distance(b, v, w) == distance(b.vertex(v), b.vertex(w)));
      }
    }
  }
  const Field& F = Field::get(2, 1);
  const Ball b = Ball::build(L0(F, 2), 3);
  const auto d2 = b.find(LatticeClass(Lattice::diagonal(F, {-2, 0})));
  REQUIRE(d2);
  CHECK(bfs_distance(b, 0, *d2) == 2);
  CHECK(bfs_distance(b, 0, 0) == 0);
  CHECK(bfs_distance(b, 0, b.adjacent(0).front()) == 1);
}

TEST_CASE("is_flag") {
  const Field& F = Field::get(2, 1);
  const LatticeClass a = L0(F, 2);
  const LatticeClass b(Lattice::diagonal(F, {-1, 0}));
  const LatticeClass c(Lattice::diagonal(F, {-2, 0}));
  CHECK(is_flag({a, b}));
  CHECK(is_flag({b, a}));
  CHECK_FALSE(is_flag({a, c}));
  CHECK_FALSE(is_flag({a, a}));
}

TEST_CASE("dot export") {
  const Field& F = Field::get(2, 1);
  CHECK(to_dot(Ball::build(L0(F, 2), 0)) == "graph ball {\n  0 [label=\"0:0\"];\n}\n");
  const std::string dot = to_dot(Ball::build(L0(F, 2), 1));
  CHECK(std::count(dot.begin(), dot.end(), '[') == 4);
  CHECK(dot.find("--") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t pos = dot.find("--"); pos != std::string::npos; pos = dot.find("--", pos + 1)) ++edges;
  CHECK(edges == 3);
}
