#pragma once

#include <optional>
#include <string>
#include <vector>

#include "btb/lattice.hpp"

namespace btb {

/// F_q-basis of a finite-dimensional space of polynomial matrices cut out by
/// integrality conditions (global sections of a vector bundle on P^1).
struct SectionSpace {
  int rows = 0;
  int cols = 0;
  std::vector<PolyMatrix> basis;
  /// Per-entry degree bound (row-major) used by the solver; negative means
  /// the entry is forced to vanish.
  std::vector<int> degree_bounds;
  /// max(degree_bounds): every element has entries of degree <= this.
  int solver_bound = -1;
  /// Human-readable statement of the bound.
  std::string bound_formula;

  int dim() const { return static_cast<int>(basis.size()); }
  /// Basis as rows of F_q coefficient vectors, entry-major with degrees
  /// 0..max_degree per entry.
  FqMatrix coordinates(const Field& F, int max_degree) const;
};

/// Coordinates of one polynomial matrix in the layout of SectionSpace::coordinates.
std::vector<FieldElem> poly_matrix_coordinates(const PolyMatrix& m, int max_degree);

/// Unknown matrix X with entries prefactor * (poly of degree <= bound), plus
/// an optional constant offset C, subject to
///   left * (C + X) * right  having valuation >= exp_upto entrywise.
/// exp_upto = 0 is membership in R; exp_upto = 1 on polynomial products
/// forces exact vanishing.
struct IntegralityConstraint {
  KMatrix left;
  KMatrix right;
  int exp_upto = 0;
};

struct SectionProblem {
  int rows = 0;
  int cols = 0;
  Poly prefactor;
  /// Bounds on deg(prefactor * poly) per entry, row-major.
  std::vector<int> degree_bounds;
  std::vector<IntegralityConstraint> constraints;
  std::optional<KMatrix> offset;
  std::string bound_formula;

  explicit SectionProblem(const Field& F) : prefactor(Poly::constant(F, 1)) {}
};

/// Homogeneous solve (offset ignored). Basis elements are re-checked
/// against every constraint by direct valuation computation.
SectionSpace solve_sections(const SectionProblem& pb);

/// Affine solve: all X = X0 + span(basis). nullopt when infeasible.
struct AffineSections {
  PolyMatrix particular;
  SectionSpace directions;
};
std::optional<AffineSections> solve_affine_sections(const SectionProblem& pb);

/// Whether left * M * right has valuation >= exp_upto entrywise.
bool satisfies(const IntegralityConstraint& c, const KMatrix& M);

/// P cap L for P = A^r: polynomial vectors lying in L.
SectionSpace global_sections(const Lattice& L);
inline SectionSpace global_sections(const LatticeClass& L) { return global_sections(L.rep()); }

/// {g : entries in (f), g * src subset varpi^{-m} tgt}, g of shape
/// rank(tgt) x rank(src). Throws DomainError for zero or constant f.
SectionSpace hom_sections(const Lattice& src, const Lattice& tgt, const Poly& f, int m);
inline SectionSpace hom_sections(const LatticeClass& src, const LatticeClass& tgt, const Poly& f, int m) {
  return hom_sections(src.rep(), tgt.rep(), f, m);
}

/// The pieces of hom_sections, for callers that stack several lattices.
std::vector<int> hom_degree_bounds(const Lattice& src, const Lattice& tgt, int m);
IntegralityConstraint hom_constraint(const Lattice& src, const Lattice& tgt, int m);

}  // namespace btb
