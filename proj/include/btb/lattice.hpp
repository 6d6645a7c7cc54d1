#pragma once

#include <compare>
#include <vector>

#include "btb/linalg.hpp"

namespace btb {

/// Generating matrix of an R-lattice: the lattice is the R-span of the columns.
using LatticeBasis = KMatrix;

/// A full-rank R-lattice in K^r in Hermite normal form.
///
/// The stored basis is lower triangular with diagonal varpi^{a_1}, ...,
/// varpi^{a_r}; entry (i, j), j < i, is the truncated expansion of its
/// residue modulo varpi^{a_i} R. Two lattices are equal iff their forms are.
class Lattice {
 public:
  /// Hermite reduction of the R-span of the columns of `gens` (r x m, m >= r).
  /// Columns are eliminated row by row, pivoting on the column of minimal
  /// valuation (ties to the lowest index); dependent columns drop out.
  /// Throws SingularMatrixError if the columns do not span K^r.
  static Lattice from_generators(const KMatrix& gens);
  /// The standard lattice R^r.
  static Lattice standard(const Field& F, int r);
  /// diag(varpi^{a_1}, ..., varpi^{a_r}) R^r.
  static Lattice diagonal(const Field& F, const std::vector<int>& exponents);

  const KMatrix& basis() const { return basis_; }
  const Field& field() const { return basis_.zero().field(); }
  int rank() const { return basis_.rows(); }
  const std::vector<int>& diag_exponents() const { return exps_; }
  /// v(det basis) = sum of the diagonal exponents.
  int det_valuation() const;

  /// varpi^k L.
  Lattice scaled(int k) const;
  /// Whether other is a sublattice of this.
  bool contains(const Lattice& other) const;
  friend Lattice operator+(const Lattice& a, const Lattice& b);
  /// g L for a K-matrix g (nonsingular).
  Lattice transformed(const KMatrix& g) const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }
  friend bool operator<(const Lattice& a, const Lattice& b);

 private:
  Lattice(KMatrix basis, std::vector<int> exps) : basis_(std::move(basis)), exps_(std::move(exps)) {}

  KMatrix basis_;
  std::vector<int> exps_;
};

/// Homothety class of a lattice: the representative with min a_i = 0.
class LatticeClass {
 public:
  explicit LatticeClass(const Lattice& L);

  const Lattice& rep() const { return rep_; }
  int rank() const { return rep_.rank(); }
  const Field& field() const { return rep_.field(); }

  friend bool operator==(const LatticeClass& a, const LatticeClass& b) { return a.rep_ == b.rep_; }
  friend bool operator<(const LatticeClass& a, const LatticeClass& b) { return a.rep_ < b.rep_; }

 private:
  Lattice rep_;
};

/// canonical_class: Hermite form of the columns of B, homothety-normalized.
/// Throws SingularMatrixError if det B = 0.
LatticeClass canonical_class(const LatticeBasis& B);

/// Exponents a_1 <= ... <= a_r with M = sum varpi^{a_i} f_i R for an R-basis
/// {f_i} of L. Negative exponents mean M is larger than L in that direction.
struct RelPos {
  std::vector<int> exponents;
  friend bool operator==(const RelPos&, const RelPos&) = default;
};

RelPos rel_position(const Lattice& L, const Lattice& M);
/// Relative position of the canonical representatives.
RelPos rel_position(const LatticeClass& L, const LatticeClass& M);

/// a_r - a_1 of the relative position: the distance in the 1-skeleton.
int distance(const LatticeClass& L, const LatticeClass& M);

/// (-v(det)) mod r of the canonical representative.
int vertex_type(const LatticeClass& L);
/// Same convention for a lattice (homothety invariant).
int vertex_type(const Lattice& L);

/// Whether the two classes span an edge: some scaling puts
/// varpi L strictly inside M strictly inside L.
bool adjacent(const LatticeClass& L, const LatticeClass& M);

}  // namespace btb
