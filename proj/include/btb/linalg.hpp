#pragma once

#include <optional>
#include <vector>

#include "btb/matrix.hpp"
#include "btb/ratk.hpp"

namespace btb {

using KMatrix = Matrix<RatK>;
using PolyMatrix = Matrix<Poly>;

/// Dense matrix over F_q.
class FqMatrix {
 public:
  FqMatrix(const Field& F, int rows, int cols)
      : F_(&F), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  const Field& field() const { return *F_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  FieldElem& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  FieldElem operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::vector<FieldElem> row(int i) const {
    return {a_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
            a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_};
  }
  void append_row(const std::vector<FieldElem>& r);

  /// In-place reduced row echelon form; zero rows are dropped. Returns the
  /// pivot column of each remaining row.
  std::vector<int> rref();
  int rank() const;

  friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
    return a.F_ == b.F_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  const Field* F_;
  int rows_;
  int cols_;
  std::vector<FieldElem> a_;
};

/// Homogeneous system sum_j coeffs[i][j] x_j = 0 in `unknowns` unknowns.
struct LinearSystem {
  int unknowns = 0;
  std::vector<std::vector<FieldElem>> equations;
  std::vector<FieldElem> rhs;  // optional right-hand side, empty = homogeneous
};

/// F_q-basis of the solution space of a homogeneous system, returned in
/// reduced row echelon form (one vector per row). Deterministic in the
/// equation order. Throws DimensionError on equations of the wrong length.
FqMatrix solve_fq(const Field& F, const LinearSystem& sys);

/// Affine solution set {x0 + span(basis)} of sys (with rhs), or nullopt if
/// inconsistent.
struct AffineSolution {
  std::vector<FieldElem> particular;
  FqMatrix basis;
};
std::optional<AffineSolution> solve_affine_fq(const Field& F, const LinearSystem& sys);

/// Row space intersection of two matrices with the same column count,
/// returned in reduced row echelon form.
FqMatrix intersect_rowspaces(const FqMatrix& a, const FqMatrix& b);
/// Whether every row of `sub` lies in the row space of `sup`.
bool rowspace_contains(const FqMatrix& sup, const FqMatrix& sub);

// ---- linear algebra over K ----

KMatrix k_zero(const Field& F, int rows, int cols);
KMatrix k_identity(const Field& F, int n);
KMatrix to_k(const PolyMatrix& m);
RatK k_det(const KMatrix& m);
/// Throws SingularMatrixError.
KMatrix k_inverse(const KMatrix& m);
/// Reduced row echelon form over K with zero rows removed.
KMatrix k_rref(const KMatrix& m);
int k_rank(const KMatrix& m);
/// Basis (rows, reduced echelon) of {x : m x = 0}.
KMatrix k_kernel(const KMatrix& m);

PolyMatrix poly_zero(const Field& F, int rows, int cols);
PolyMatrix poly_identity(const Field& F, int n);
Poly poly_det(const PolyMatrix& m);

}  // namespace btb
