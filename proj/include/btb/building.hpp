#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "btb/lattice.hpp"

namespace btb {

/// Vertex ids of a simplex inside a Ball, sorted by ascending vertex type.
struct Simplex {
  std::vector<int> ids;
  int dim() const { return static_cast<int>(ids.size()) - 1; }
  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

/// All d-dimensional subspaces of F_q^r, one reduced row echelon basis
/// (d x r) each.
std::vector<FqMatrix> enumerate_subspaces(const Field& F, int r, int d);

/// Sum over k = 1..r-1 of the Gaussian binomial [r choose k]_q.
long long neighbor_count(int q, int r);

/// Classes <L'> with varpi L < L' < L (strict), from the proper nonzero
/// subspaces of L / varpi L. Sorted by canonical form.
std::vector<LatticeClass> neighbors(const LatticeClass& v);

/// The lattices L' with varpi L < L' < L themselves (not up to homothety),
/// in subspace enumeration order.
std::vector<Lattice> sublattices_between(const Lattice& L);

/// Whether the classes admit representatives L_0 > L_1 > ... > L_d > varpi L_0.
bool is_flag(const std::vector<LatticeClass>& vs);

/// Finite window onto the building: all vertices within distance `radius`
/// of `center`, with every simplex whose vertices all lie in the window.
class Ball {
 public:
  /// BFS with sorted neighbor lists; throws BudgetError if more than
  /// vertex_budget vertices would be created.
  static Ball build(const LatticeClass& center, int radius, long long vertex_budget = 200000);

  /// Reassemble a ball from stored data (used by import). Validates types,
  /// simplex shape, and that vertex 0 is the center.
  static Ball assemble(int radius, std::vector<LatticeClass> vertices, std::vector<std::vector<Simplex>> simplices);

  const Field& field() const { return vertices_.front().field(); }
  int rank() const { return vertices_.front().rank(); }
  int radius() const { return radius_; }
  const LatticeClass& center() const { return vertices_.front(); }

  int size() const { return static_cast<int>(vertices_.size()); }
  const LatticeClass& vertex(int id) const { return vertices_.at(id); }
  const std::vector<LatticeClass>& vertices() const { return vertices_; }
  int type(int id) const { return types_.at(id); }
  /// Graph distance from the center.
  int depth(int id) const { return depth_.at(id); }
  std::optional<int> find(const LatticeClass& c) const;
  /// Sorted ids of in-ball neighbors.
  const std::vector<int>& adjacent(int id) const { return adj_.at(id); }

  /// d-simplices (empty for d >= rank). Simplex lists are sorted.
  const std::vector<Simplex>& simplices(int d) const;
  int max_dim() const { return static_cast<int>(simplices_.size()) - 1; }
  std::vector<LatticeClass> classes(const Simplex& s) const;

  friend bool operator==(const Ball& a, const Ball& b) {
    return a.radius_ == b.radius_ && a.vertices_ == b.vertices_ && a.simplices_ == b.simplices_;
  }

 private:
  Ball() = default;
  void index_vertices();
  void fill_adjacency_from_edges();
  void compute_simplices();

  int radius_ = 0;
  std::vector<LatticeClass> vertices_;
  std::vector<int> types_;
  std::vector<int> depth_;
  std::map<LatticeClass, int> index_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<Simplex>> simplices_;
};

/// Simplices of dimension d (alias of Ball::simplices, empty past the rank).
const std::vector<Simplex>& simplices(const Ball& b, int d);

/// Shortest path length in the 1-skeleton of the ball; nullopt when w is
/// unreachable inside the window.
std::optional<int> bfs_distance(const Ball& b, int v, int w);

/// DOT graph: one node per vertex labelled "id:type", one edge per 1-simplex.
std::string to_dot(const Ball& b);

}  // namespace btb
