#include "btb/linalg.hpp"

#include <stdexcept>

namespace btb {

void FqMatrix::append_row(const std::vector<FieldElem>& r) {
  if (static_cast<int>(r.size()) != cols_) throw DimensionError("row length does not match column count");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

std::vector<int> FqMatrix::rref() {
  const Field& F = *F_;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int piv = -1;
    for (int i = row; i < rows_; ++i) {
      if ((*this)(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (int j = 0; j < cols_; ++j) std::swap((*this)(piv, j), (*this)(row, j));
    }
    const FieldElem inv = F.inv((*this)(row, col));
    for (int j = col; j < cols_; ++j) (*this)(row, j) = F.mul((*this)(row, j), inv);
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const FieldElem c = (*this)(i, col);
      if (c == 0) continue;
      for (int j = col; j < cols_; ++j) {
        (*this)(i, j) = F.sub((*this)(i, j), F.mul(c, (*this)(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  rows_ = row;
  a_.resize(static_cast<std::size_t>(rows_) * cols_);
  return pivots;
}

int FqMatrix::rank() const {
  FqMatrix copy = *this;
  return static_cast<int>(copy.rref().size());
}

namespace {

FqMatrix system_matrix(const Field& F, const LinearSystem& sys, bool augmented) {
  FqMatrix m(F, 0, sys.unknowns + (augmented ? 1 : 0));
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto& eq = sys.equations[i];
    if (static_cast<int>(eq.size()) != sys.unknowns) {
      throw DimensionError("equation " + std::to_string(i) + " has " + std::to_string(eq.size()) +
                           " coefficients, expected " + std::to_string(sys.unknowns));
    }
    std::vector<FieldElem> r = eq;
    if (augmented) r.push_back(sys.rhs.empty() ? 0 : sys.rhs[i]);
    m.append_row(r);
  }
  return m;
}

// Kernel of an rref'd matrix with given pivots restricted to the first n columns.
FqMatrix kernel_from_rref(const FqMatrix& m, const std::vector<int>& pivots, int n) {
  const Field& F = m.field();
  std::vector<int> is_pivot(n, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] < n) is_pivot[pivots[r]] = static_cast<int>(r);
  }
  FqMatrix basis(F, 0, n);
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f] >= 0) continue;
    std::vector<FieldElem> v(n, 0);
    v[f] = 1;
    for (int c = 0; c < n; ++c) {
      if (is_pivot[c] >= 0) v[c] = F.neg(m(is_pivot[c], f));
    }
    basis.append_row(v);
  }
  basis.rref();
  return basis;
}

}  // namespace

FqMatrix solve_fq(const Field& F, const LinearSystem& sys) {
  if (!sys.rhs.empty() && sys.rhs.size() != sys.equations.size()) {
    throw DimensionError("right-hand side length does not match equation count");
  }
  FqMatrix m = system_matrix(F, sys, false);
  const auto pivots = m.rref();
  return kernel_from_rref(m, pivots, sys.unknowns);
}

std::optional<AffineSolution> solve_affine_fq(const Field& F, const LinearSystem& sys) {
  if (!sys.rhs.empty() && sys.rhs.size() != sys.equations.size()) {
    throw DimensionError("right-hand side length does not match equation count");
  }
  FqMatrix m = system_matrix(F, sys, true);
  const auto pivots = m.rref();
  const int n = sys.unknowns;
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  AffineSolution out{std::vector<FieldElem>(n, 0), kernel_from_rref(m, pivots, n)};
  for (std::size_t r = 0; r < pivots.size(); ++r) out.particular[pivots[r]] = m(static_cast<int>(r), n);
  return out;
}

FqMatrix intersect_rowspaces(const FqMatrix& a, const FqMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("row space intersection of different ambient dimensions");
  const Field& F = a.field();
  const int n = a.cols();
  // x = sum u_i a_i = sum w_j b_j  <=>  (u, w) in ker [A^T | -B^T].
  LinearSystem sys;
  sys.unknowns = a.rows() + b.rows();
  for (int c = 0; c < n; ++c) {
    std::vector<FieldElem> eq(sys.unknowns, 0);
    for (int i = 0; i < a.rows(); ++i) eq[i] = a(i, c);
    for (int j = 0; j < b.rows(); ++j) eq[a.rows() + j] = F.neg(b(j, c));
    sys.equations.push_back(std::move(eq));
  }
  const FqMatrix coeffs = solve_fq(F, sys);
  FqMatrix out(F, 0, n);
  for (int k = 0; k < coeffs.rows(); ++k) {
    std::vector<FieldElem> x(n, 0);
    for (int i = 0; i < a.rows(); ++i) {
      const FieldElem u = coeffs(k, i);
      if (u == 0) continue;
      for (int c = 0; c < n; ++c) x[c] = F.add(x[c], F.mul(u, a(i, c)));
    }
    out.append_row(x);
  }
  out.rref();
  return out;
}

bool rowspace_contains(const FqMatrix& sup, const FqMatrix& sub) {
  if (sup.cols() != sub.cols()) throw DimensionError("row space containment of different ambient dimensions");
  FqMatrix stacked = sup;
  for (int i = 0; i < sub.rows(); ++i) stacked.append_row(sub.row(i));
  return stacked.rank() == sup.rank();
}

KMatrix k_zero(const Field& F, int rows, int cols) { return KMatrix(rows, cols, RatK(F)); }

KMatrix k_identity(const Field& F, int n) {
  KMatrix m = k_zero(F, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = RatK::from_int(F, 1);
  return m;
}

KMatrix to_k(const PolyMatrix& m) {
  KMatrix out(m.rows(), m.cols(), RatK(m.zero().field()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = RatK(m(i, j));
  return out;
}

RatK k_det(const KMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const Field& F = m.zero().field();
  KMatrix a = m;
  const int n = a.rows();
  RatK det = RatK::from_int(F, 1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i) {
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return RatK(F);
    if (piv != c) {
      a.swap_rows(piv, c);
      det = -det;
    }
    det *= a(c, c);
    const RatK inv = a(c, c).inv();
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const RatK f = a(i, c) * inv;
      for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

KMatrix k_inverse(const KMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const Field& F = m.zero().field();
  const int n = m.rows();
  KMatrix a = m;
  KMatrix inv = k_identity(F, n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i) {
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) throw SingularMatrixError("matrix over K is singular");
    a.swap_rows(piv, c);
    inv.swap_rows(piv, c);
    const RatK p = a(c, c).inv();
    for (int j = 0; j < n; ++j) {
      a(c, j) = a(c, j) * p;
      inv(c, j) = inv(c, j) * p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const RatK f = a(i, c);
      for (int j = 0; j < n; ++j) {
        if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
        if (!inv(c, j).is_zero()) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

KMatrix k_rref(const KMatrix& m) {
  const Field& F = m.zero().field();
  KMatrix a = m;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < a.rows(); ++i) {
      if (!a(i, col).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    a.swap_rows(piv, row);
    const RatK p = a(row, col).inv();
    for (int j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * p;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const RatK f = a(i, col);
      for (int j = col; j < a.cols(); ++j) {
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
      }
    }
    ++row;
  }
  if (row == 0) return k_zero(F, 0, m.cols());
  return a.row_block(0, row);
}

int k_rank(const KMatrix& m) { return k_rref(m).rows(); }

KMatrix k_kernel(const KMatrix& m) {
  const Field& F = m.zero().field();
  const KMatrix e = k_rref(m);
  const int n = m.cols();
  std::vector<int> pivot_row(n, -1);
  for (int r = 0; r < e.rows(); ++r) {
    for (int c = 0; c < n; ++c) {
      if (!e(r, c).is_zero()) {
        pivot_row[c] = r;
        break;
      }
    }
  }
  std::vector<std::vector<RatK>> vecs;
  for (int f = 0; f < n; ++f) {
    if (pivot_row[f] >= 0) continue;
    std::vector<RatK> v(n, RatK(F));
    v[f] = RatK::from_int(F, 1);
    for (int c = 0; c < n; ++c) {
      if (pivot_row[c] >= 0) v[c] = -e(pivot_row[c], f);
    }
    vecs.push_back(std::move(v));
  }
  KMatrix out = k_zero(F, static_cast<int>(vecs.size()), n);
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < n; ++j) out(i, j) = vecs[i][j];
  return k_rref(out);
}

PolyMatrix poly_zero(const Field& F, int rows, int cols) { return PolyMatrix(rows, cols, Poly(F)); }

PolyMatrix poly_identity(const Field& F, int n) {
  PolyMatrix m = poly_zero(F, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Poly::constant(F, 1);
  return m;
}

Poly poly_det(const PolyMatrix& m) {
  const RatK d = k_det(to_k(m));
  if (!d.is_polynomial()) throw std::logic_error("determinant of a polynomial matrix is not polynomial");
  return d.num();
}

}  // namespace btb
