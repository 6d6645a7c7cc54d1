#include <random>

#include "btb/sections.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace btb;
using th::kmat;
using th::T;

namespace {

LatticeClass diag_class(const Field& F, std::vector<int> e) { return LatticeClass(Lattice::diagonal(F, e)); }

}  // namespace

TEST_CASE("canonical_class examples") {
  const Field& F = Field::get(2, 1);
  const LatticeClass L0 = canonical_class(k_identity(F, 2));
  CHECK(L0.rep().basis() == k_identity(F, 2));
  CHECK(vertex_type(L0) == 0);

  const KMatrix dt = kmat(F, 2, 2, {T(F, 1), RatK(F), RatK(F), T(F, 0)});
  for (FieldElem u = 0; u < 2; ++u) {
    const KMatrix U = kmat(F, 2, 2, {T(F, 0), RatK::constant(F, u), RatK(F), T(F, 0)});
    CHECK(canonical_class(dt * U) == canonical_class(dt));
  }
  const KMatrix d2 = kmat(F, 2, 2, {T(F, 0), RatK(F), RatK(F), RatK::varpi_pow(F, 1)});
  CHECK(canonical_class(d2) == canonical_class(dt));
  CHECK(canonical_class(dt).rep().diag_exponents() == std::vector<int>{0, 1});

  CHECK_THROWS_AS(canonical_class(k_zero(F, 2, 2)), SingularMatrixError);
}

TEST_CASE("canonical form is lower triangular with reduced subdiagonal") {
  const Field& F = Field::get(3, 1);
  std::mt19937 rng(3);
  for (int k = 0; k < 50; ++k) {
    const LatticeClass c = canonical_class(th::random_basis(F, 3, rng));
    const KMatrix& B = c.rep().basis();
    const auto& a = c.rep().diag_exponents();
    CHECK(*std::min_element(a.begin(), a.end()) == 0);
    for (int i = 0; i < 3; ++i) {
      CHECK(B(i, i) == RatK::varpi_pow(F, a[i]));
      for (int j = i + 1; j < 3; ++j) CHECK(B(i, j).is_zero());
      for (int j = 0; j < i; ++j) CHECK(B(i, j).reduced_mod_varpi(a[i]) == B(i, j));
    }
  }
}

TEST_CASE("canonical_class is invariant under GL_r(R) and scaling") {
  for (auto [p, r] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    const Field& F = Field::get(p, 1);
    std::mt19937 rng(100 + p + r);
    std::uniform_int_distribution<int> sc(-2, 2);
    for (int k = 0; k < 200; ++k) {
      const KMatrix B = th::random_basis(F, r, rng);
      KMatrix g = th::random_gl_r(F, r, rng);
      const RatK s = RatK::varpi_pow(F, sc(rng));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) g(i, j) = g(i, j) * s;
      CHECK(canonical_class(B * g) == canonical_class(B));
    }
  }
}

TEST_CASE("rel_position examples") {
  const Field& F = Field::get(2, 1);
  const Lattice L0 = Lattice::standard(F, 2);
  const Lattice M = Lattice::from_generators(kmat(F, 2, 2, {T(F, 2), RatK(F), RatK(F), T(F, 0)}));
  CHECK(rel_position(L0, L0).exponents == std::vector<int>{0, 0});
  CHECK(rel_position(L0, M).exponents == std::vector<int>{-2, 0});
  CHECK(rel_position(M, L0).exponents == std::vector<int>{0, 2});
  // Class version works on the min-exponent-zero representatives.
  CHECK(rel_position(LatticeClass(L0), LatticeClass(M)).exponents == std::vector<int>{0, 2});
}

TEST_CASE("rel_position antisymmetry and distance metric") {
  const Field& F = Field::get(2, 1);
  std::mt19937 rng(9);
  for (int k = 0; k < 100; ++k) {
    const Lattice a = Lattice::from_generators(th::random_basis(F, 3, rng));
    const Lattice b = Lattice::from_generators(th::random_basis(F, 3, rng));
    const Lattice c = Lattice::from_generators(th::random_basis(F, 3, rng));
    auto ab = rel_position(a, b).exponents;
    auto ba = rel_position(b, a).exponents;
    std::reverse(ba.begin(), ba.end());
    for (auto& x : ba) x = -x;
    CHECK(ab == ba);
    int sum = 0;
    for (int x : ab) sum += x;
    CHECK(sum == b.det_valuation() - a.det_valuation());
    const LatticeClass A(a), B(b), C(c);
    CHECK(distance(A, B) == distance(B, A));
    CHECK(distance(A, C) <= distance(A, B) + distance(B, C));
    CHECK((distance(A, B) == 0) == (A == B));
  }
}

TEST_CASE("distance and type examples") {
  const Field& F = Field::get(2, 1);
  const LatticeClass L0 = diag_class(F, {0, 0});
  CHECK(distance(L0, L0) == 0);
  CHECK(distance(L0, diag_class(F, {-1, 0})) == 1);
  CHECK(distance(L0, diag_class(F, {-2, 0})) == 2);
  CHECK(vertex_type(diag_class(F, {-1, 0})) == 1);
  CHECK(vertex_type(Lattice::standard(F, 2).scaled(-1)) == vertex_type(L0));
  CHECK(LatticeClass(Lattice::standard(F, 2).scaled(-1)) == L0);
  CHECK(adjacent(L0, diag_class(F, {-1, 0})));
}

TEST_CASE("global_sections examples") {
  const Field& F = Field::get(2, 1);
  CHECK(global_sections(diag_class(F, {0, 0})).dim() == 2);
  CHECK(global_sections(Lattice::diagonal(F, {-2, 0})).dim() == 4);
  CHECK(global_sections(Lattice::diagonal(F, {1, 0})).dim() == 1);
}

TEST_CASE("global_sections match brute force") {
  // Oracle: all polynomial vectors with entries of degree <= 2 lying in L.
  const Field& F = Field::get(2, 1);
  std::mt19937 rng(77);
  for (int k = 0; k < 30; ++k) {
    const Lattice L = Lattice::from_generators(th::random_basis(F, 2, rng, 1));
    const SectionSpace S = global_sections(L);
    if (S.solver_bound > 2) continue;
    int count = 0;
    for (unsigned mask = 0; mask < 64; ++mask) {
      KMatrix w = k_zero(F, 2, 1);
      w(0, 0) = RatK(Poly(F, {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1}));
      w(1, 0) = RatK(Poly(F, {(mask >> 3) & 1, (mask >> 4) & 1, (mask >> 5) & 1}));
      const KMatrix c = k_inverse(L.basis()) * w;
      if (c(0, 0).valuation() >= 0 && c(1, 0).valuation() >= 0) ++count;
    }
    CHECK(count == (1 << S.dim()));
  }
}

TEST_CASE("global_sections split-bundle formula") {
  for (int p : {2, 3}) {
    const Field& F = Field::get(p, 1);
    for (int a = -3; a <= 2; ++a)
      for (int b = -3; b <= 2; ++b)
        for (int c = -1; c <= 1; ++c) {
          const int expect = std::max(0, 1 - a) + std::max(0, 1 - b) + std::max(0, 1 - c);
          CHECK(global_sections(Lattice::diagonal(F, {a, b, c})).dim() == expect);
        }
  }
}

TEST_CASE("hom_sections examples") {
  const Field& F = Field::get(2, 1);
  const Poly t = Poly::t(F);
  const LatticeClass L1 = diag_class(F, {-1, 0});
  const SectionSpace H = hom_sections(L1, L1, t, 0);
  REQUIRE(H.dim() == 1);
  PolyMatrix e = poly_zero(F, 2, 2);
  e(0, 1) = t;
  CHECK(H.basis[0] == e);
  CHECK(H.solver_bound >= 1);

  CHECK(hom_sections(diag_class(F, {0, 0}), diag_class(F, {0, 0}), t, 0).dim() == 0);

  const Lattice R1 = Lattice::standard(F, 1);
  const SectionSpace h1 = hom_sections(R1, R1, t, 1);
  REQUIRE(h1.dim() == 1);
  CHECK(h1.basis[0](0, 0) == t);
  CHECK(hom_sections(R1, R1, t, 0).dim() == 0);

  CHECK_THROWS_AS(hom_sections(R1, R1, Poly::constant(F, 1), 0), DomainError);
  CHECK_THROWS_AS(hom_sections(R1, R1, Poly(F), 0), DomainError);
}

TEST_CASE("hom_sections endomorphisms match brute force") {
  // Oracle: all 2x2 matrices with entries in (f) of degree <= 2 preserving L.
  const Field& F = Field::get(2, 1);
  const Poly f = Poly::t(F);
  std::mt19937 rng(31);
  for (int k = 0; k < 25; ++k) {
    const Lattice L = Lattice::from_generators(th::random_basis(F, 2, rng, 1));
    const SectionSpace H = hom_sections(L, L, f, 0);
    if (H.solver_bound > 2) continue;
    const KMatrix Binv = k_inverse(L.basis());
    int count = 0;
    for (unsigned mask = 0; mask < 256; ++mask) {
      KMatrix g = k_zero(F, 2, 2);
      for (int e = 0; e < 4; ++e) {
        const unsigned bits = (mask >> (2 * e)) & 3;
        g(e / 2, e % 2) = RatK(Poly(F, {0, bits & 1, bits >> 1}));
      }
      const KMatrix x = Binv * g * L.basis();
      bool ok = true;
      for (const auto& v : x.data()) ok = ok && v.valuation() >= 0;
      if (ok) ++count;
    }
    CHECK(count == (1 << H.dim()));
  }
}

TEST_CASE("hom_sections are nilpotent and closed under products") {
  for (auto [p, r] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    const Field& F = Field::get(p, 1);
    const Poly f = Poly::t(F);
    std::mt19937 rng(55 + p * r);
    for (int k = 0; k < 20; ++k) {
      const Lattice L = Lattice::from_generators(th::random_basis(F, r, rng, 2));
      const SectionSpace H = hom_sections(L, L, f, 0);
      const IntegralityConstraint c = hom_constraint(L, L, 0);
      for (const auto& h : H.basis) {
        PolyMatrix pw = h;
        for (int e = 1; e < r; ++e) pw = pw * h;
        CHECK(pw == poly_zero(F, r, r));
        for (const auto& g : H.basis) {
          const PolyMatrix prod = h * g;
          CHECK(satisfies(c, to_k(prod)));
          for (const auto& x : prod.data()) CHECK(f.divides(x));
        }
      }
    }
  }
}
