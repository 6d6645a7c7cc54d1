#include "btb/lattice.hpp"

#include <algorithm>

namespace btb {

namespace {

void col_axpy(KMatrix& A, int dst, const RatK& c, int src, int from_row) {
  for (int i = from_row; i < A.rows(); ++i) {
    if (!A(i, src).is_zero()) A(i, dst) -= c * A(i, src);
  }
}

}  // namespace

Lattice Lattice::from_generators(const KMatrix& gens) {
  const Field& F = gens.zero().field();
  const int r = gens.rows();
  int m = gens.cols();
  if (m < r) throw SingularMatrixError("fewer generators than the rank");
  KMatrix A = gens;
  std::vector<int> exps(r);

  for (int i = 0; i < r; ++i) {
    int piv = -1;
    int best = kInfValuation;
    for (int j = i; j < m; ++j) {
      const int v = A(i, j).valuation();
      if (v < best) {
        best = v;
        piv = j;
      }
    }
    if (piv < 0) throw SingularMatrixError("lattice generators do not span K^r");
    A.swap_cols(i, piv);
    // Normalize the pivot to exactly varpi^{best}.
    const RatK unit = RatK::varpi_pow(F, best) / A(i, i);
    if (!unit.is_one()) {
      for (int k = i; k < r; ++k) {
        if (!A(k, i).is_zero()) A(k, i) = A(k, i) * unit;
      }
    }
    exps[i] = best;
    const RatK pinv = RatK::varpi_pow(F, -best);
    for (int j = i + 1; j < m; ++j) {
      if (A(i, j).is_zero()) continue;
      col_axpy(A, j, A(i, j) * pinv, i, i);
    }
    // Drop columns that became zero to keep later rows cheap.
    for (int j = m - 1; j > i; --j) {
      bool zero = true;
      for (int k = i + 1; k < r && zero; ++k) zero = A(k, j).is_zero();
      if (zero && j >= r) {
        A.swap_cols(j, m - 1);
        --m;
      }
    }
  }

  KMatrix B = A.col_block(0, r);
  // Reduce the entries left of each pivot modulo the pivot.
  for (int i = 1; i < r; ++i) {
    const RatK pinv = RatK::varpi_pow(F, -exps[i]);
    for (int j = 0; j < i; ++j) {
      const RatK& x = B(i, j);
      if (x.is_zero()) continue;
      const RatK red = x.reduced_mod_varpi(exps[i]);
      if (red == x) continue;
      col_axpy(B, j, (x - red) * pinv, i, i);
      B(i, j) = red;
    }
  }
  return Lattice(std::move(B), std::move(exps));
}

Lattice Lattice::standard(const Field& F, int r) { return Lattice(k_identity(F, r), std::vector<int>(r, 0)); }

Lattice Lattice::diagonal(const Field& F, const std::vector<int>& exponents) {
  const int r = static_cast<int>(exponents.size());
  KMatrix B = k_zero(F, r, r);
  for (int i = 0; i < r; ++i) B(i, i) = RatK::varpi_pow(F, exponents[i]);
  return Lattice(std::move(B), exponents);
}

int Lattice::det_valuation() const {
  int s = 0;
  for (int a : exps_) s += a;
  return s;
}

Lattice Lattice::scaled(int k) const {
  if (k == 0) return *this;
  const RatK s = RatK::varpi_pow(field(), k);
  KMatrix B = basis_;
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j <= i; ++j) {
      if (!B(i, j).is_zero()) B(i, j) = B(i, j) * s;
    }
  std::vector<int> e = exps_;
  for (auto& a : e) a += k;
  return Lattice(std::move(B), std::move(e));
}

bool Lattice::contains(const Lattice& other) const {
  const KMatrix X = k_inverse(basis_) * other.basis_;
  for (const auto& x : X.data()) {
    if (x.valuation() < 0) return false;
  }
  return true;
}

Lattice operator+(const Lattice& a, const Lattice& b) {
  const int r = a.rank();
  if (b.rank() != r) throw DimensionError("sum of lattices of different rank");
  KMatrix G = k_zero(a.field(), r, 2 * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      G(i, j) = a.basis_(i, j);
      G(i, r + j) = b.basis_(i, j);
    }
  return Lattice::from_generators(G);
}

Lattice Lattice::transformed(const KMatrix& g) const { return from_generators(g * basis_); }

bool operator<(const Lattice& a, const Lattice& b) {
  if (a.exps_ != b.exps_) return a.exps_ < b.exps_;
  return a.basis_ < b.basis_;
}

LatticeClass::LatticeClass(const Lattice& L)
    : rep_(L.scaled(-*std::min_element(L.diag_exponents().begin(), L.diag_exponents().end()))) {}

LatticeClass canonical_class(const LatticeBasis& B) {
  if (B.rows() != B.cols()) throw DimensionError("lattice basis must be square");
  if (B.rows() < 1) throw DimensionError("lattice basis must be nonempty");
  return LatticeClass(Lattice::from_generators(B));
}

RelPos rel_position(const Lattice& L, const Lattice& M) {
  if (L.rank() != M.rank()) throw DimensionError("relative position of lattices of different rank");
  KMatrix X = k_inverse(L.basis()) * M.basis();
  const int r = X.rows();
  RelPos out;
  // Smith form over the valuation ring: the minimal-valuation entry divides
  // its row and column.
  for (int t = 0; t < r; ++t) {
    int pi = -1, pj = -1;
    int best = kInfValuation;
    for (int i = t; i < r; ++i)
      for (int j = t; j < r; ++j) {
        const int v = X(i, j).valuation();
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) throw SingularMatrixError("relative position of a degenerate lattice");
    X.swap_rows(t, pi);
    X.swap_cols(t, pj);
    out.exponents.push_back(best);
    const RatK inv = X(t, t).inv();
    for (int i = t + 1; i < r; ++i) {
      if (X(i, t).is_zero()) continue;
      const RatK c = X(i, t) * inv;
      for (int j = t; j < r; ++j) {
        if (!X(t, j).is_zero()) X(i, j) -= c * X(t, j);
      }
    }
    for (int j = t + 1; j < r; ++j) X(t, j) = RatK(X.zero().field());
  }
  std::sort(out.exponents.begin(), out.exponents.end());
  return out;
}

RelPos rel_position(const LatticeClass& L, const LatticeClass& M) { return rel_position(L.rep(), M.rep()); }

int distance(const LatticeClass& L, const LatticeClass& M) {
  const RelPos p = rel_position(L, M);
  return p.exponents.back() - p.exponents.front();
}

int vertex_type(const Lattice& L) {
  const int r = L.rank();
  return ((-L.det_valuation()) % r + r) % r;
}

int vertex_type(const LatticeClass& L) { return vertex_type(L.rep()); }

bool adjacent(const LatticeClass& L, const LatticeClass& M) {
  if (L == M) return false;
  return distance(L, M) == 1;
}

}  // namespace btb
