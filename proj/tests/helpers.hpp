#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "btb/lattice.hpp"

namespace th {

using namespace btb;

inline Poly P(const Field& F, std::vector<FieldElem> c) { return Poly(F, std::move(c)); }
inline RatK T(const Field& F, int k) { return RatK(Poly::monomial(F, 1, k)); }  // t^k

/// K-matrix from a row-major list of K elements.
inline KMatrix kmat(const Field& F, int r, int c, std::initializer_list<RatK> xs) {
  KMatrix m = k_zero(F, r, c);
  int i = 0;
  for (const auto& x : xs) {
    m(i / c, i % c) = x;
    ++i;
  }
  return m;
}

inline RatK random_ratk(const Field& F, std::mt19937& rng, int max_deg = 3) {
  std::uniform_int_distribution<int> deg(-1, max_deg);
  std::uniform_int_distribution<FieldElem> el(0, F.q() - 1);
  auto rp = [&](bool nonzero) {
    for (;;) {
      std::vector<FieldElem> c(deg(rng) + 1);
      for (auto& x : c) x = el(rng);
      Poly p(F, c);
      if (!nonzero || !p.is_zero()) return p;
    }
  };
  return RatK(rp(false), rp(true));
}

/// Element of GL_r(R) as a product of elementary matrices with entries in R
/// and a diagonal unit matrix.
inline KMatrix random_gl_r(const Field& F, int r, std::mt19937& rng) {
  KMatrix g = k_identity(F, r);
  std::uniform_int_distribution<int> idx(0, r - 1);
  std::uniform_int_distribution<FieldElem> unit(1, F.q() - 1);
  for (int s = 0; s < 4; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    RatK x = random_ratk(F, rng);
    while (x.valuation() < 0) x = x * RatK::varpi_pow(F, 1);
    KMatrix e = k_identity(F, r);
    e(i, j) = x;
    g = g * e;
  }
  KMatrix d = k_identity(F, r);
  for (int i = 0; i < r; ++i) d(i, i) = RatK::constant(F, unit(rng));
  return g * d;
}

/// Random lattice basis: diagonal varpi powers times random GL_r(A)-ish mixing.
inline KMatrix random_basis(const Field& F, int r, std::mt19937& rng, int spread = 2) {
  std::uniform_int_distribution<int> e(-spread, spread);
  std::uniform_int_distribution<int> idx(0, r - 1);
  std::uniform_int_distribution<FieldElem> el(0, F.q() - 1);
  KMatrix b = k_zero(F, r, r);
  for (int i = 0; i < r; ++i) b(i, i) = RatK::varpi_pow(F, e(rng));
  for (int s = 0; s < 3; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    KMatrix m = k_identity(F, r);
    m(i, j) = RatK(Poly(F, {el(rng), el(rng)}));
    b = m * b;
  }
  return b;
}

}  // namespace th
