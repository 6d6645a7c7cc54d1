#include <set>

#include "btb/congruence.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace btb;
using th::kmat;
using th::T;

namespace {

Lattice diag(const Field& F, std::vector<int> e) { return Lattice::diagonal(F, e); }
LatticeClass dclass(const Field& F, std::vector<int> e) { return LatticeClass(diag(F, e)); }

PolyMatrix tE(const Field& F, int r, int i, int j, int k) {
  PolyMatrix m = poly_zero(F, r, r);
  m(i, j) = Poly::monomial(F, 1, k);
  return m;
}

SubspaceK line(const Field& F, int r, int i) {
  KMatrix v = k_zero(F, 1, r);
  v(0, i) = RatK::from_int(F, 1);
  return SubspaceK::span(v, r);
}

std::set<GroupElt> as_set(const std::vector<GroupElt>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("level and group element validation") {
  const Field& F = Field::get(2, 1);
  CHECK_THROWS_AS(Level(Poly::constant(F, 1)), DomainError);
  CHECK_THROWS_AS(Level(Poly(F)), DomainError);
  const Level lv(Poly::t(F));
  CHECK_THROWS_AS(GroupElt::at_level(poly_identity(F, 2) + tE(F, 2, 0, 1, 0), lv), DomainError);
  PolyMatrix sing = poly_zero(F, 2, 2);
  CHECK_THROWS_AS(GroupElt::make(sing), DomainError);
  const GroupElt g = GroupElt::at_level(poly_identity(F, 2) + tE(F, 2, 0, 1, 1), lv);
  CHECK((g * g.inverse()).is_identity());
}

TEST_CASE("stab_space examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  CHECK(stab_space(std::vector<Lattice>{Lattice::standard(F, 2)}, t).dim() == 0);
  CHECK(stab_space(std::vector<Lattice>{Lattice::standard(F, 3)}, t).dim() == 0);
  const StabilizerSpace H1 = stab_space(std::vector<LatticeClass>{dclass(F, {-1, 0})}, t);
  REQUIRE(H1.dim() == 1);
  CHECK(H1.H.basis[0] == tE(F, 2, 0, 1, 1));
  CHECK(stab_space(std::vector<LatticeClass>{dclass(F, {0, 0}), dclass(F, {-1, 0})}, t).dim() == 0);
  const StabilizerSpace H2 = stab_space(std::vector<LatticeClass>{dclass(F, {-2, 0})}, t);
  CHECK(H2.dim() == 2);
  CHECK(stab_order(H2) == 4);
  CHECK(stab_order(H1) == 2);
  CHECK(stab_order(stab_space(std::vector<Lattice>{Lattice::standard(F, 2)}, t)) == 1);
}

TEST_CASE("enumerate_stab examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  const auto id = enumerate_stab(stab_space(std::vector<Lattice>{Lattice::standard(F, 2)}, t));
  REQUIRE(id.size() == 1);
  CHECK(id[0].is_identity());
  const auto two = enumerate_stab(stab_space(std::vector<LatticeClass>{dclass(F, {-1, 0})}, t));
  CHECK(as_set(two) == std::set<GroupElt>{GroupElt::identity(F, 2),
                                          GroupElt::at_level(poly_identity(F, 2) + tE(F, 2, 0, 1, 1), t)});
  const auto four = enumerate_stab(stab_space(std::vector<LatticeClass>{dclass(F, {-2, 0})}, t));
  const auto s4 = as_set(four);
  for (const auto& a : four) {
    CHECK(s4.count(a.inverse()) == 1);
    for (const auto& b : four) CHECK(s4.count(a * b) == 1);
  }
  CHECK_THROWS_AS(enumerate_stab(stab_space(std::vector<LatticeClass>{dclass(F, {-2, 0})}, t), 1), BudgetError);
}

TEST_CASE("brute_stab examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  const auto a = brute_stab({Lattice::standard(F, 2)}, t, 2);
  REQUIRE(a.size() == 1);
  CHECK(a[0].is_identity());
  CHECK(as_set(brute_stab({diag(F, {-1, 0})}, t, 2)) ==
        as_set(enumerate_stab(stab_space(std::vector<Lattice>{diag(F, {-1, 0})}, t))));
  CHECK(brute_stab({diag(F, {-2, 0})}, t, 0).size() == 1);
  CHECK_THROWS_AS(brute_stab({diag(F, {-2, 0})}, t, 6, 1000), BudgetError);
}

TEST_CASE("is_unstable examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  const Level t2(Poly::monomial(F, 1, 2));
  CHECK_FALSE(is_unstable({dclass(F, {0, 0})}, t));
  CHECK(is_unstable({dclass(F, {-1, 0})}, t));
  CHECK_FALSE(is_unstable({dclass(F, {-1, 0})}, t2));
}

TEST_CASE("fixed_space examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  const SubspaceK W = fixed_space(stab_space(std::vector<Lattice>{Lattice::standard(F, 2)}, t));
  CHECK(W == SubspaceK::whole(F, 2));
  CHECK(fixed_space(stab_space(std::vector<LatticeClass>{dclass(F, {-1, 0})}, t)) == line(F, 2, 0));
  StabilizerSpace h13{{Lattice::standard(F, 3)}, Poly::t(F), {}};
  h13.H.rows = h13.H.cols = 3;
  h13.H.basis.push_back(tE(F, 3, 0, 2, 1));
  const SubspaceK fs = fixed_space(h13);
  CHECK(fs.dim() == 2);
  CHECK(fs == intersect(SubspaceK::whole(F, 3), SubspaceK::span(kmat(F, 2, 3, {T(F, 0), RatK(F), RatK(F), RatK(F), T(F, 0), RatK(F)}), 3)));
}

TEST_CASE("subspace intersection") {
  const Field& F = Field::get(3, 1);
  const SubspaceK a = SubspaceK::span(kmat(F, 2, 3, {T(F, 0), RatK(F), RatK(F), RatK(F), T(F, 0), RatK(F)}), 3);
  const SubspaceK b = SubspaceK::span(kmat(F, 2, 3, {RatK(F), T(F, 0), RatK(F), RatK(F), RatK(F), T(F, 0)}), 3);
  CHECK(intersect(a, b) == line(F, 3, 1));
  CHECK(intersect(a, line(F, 3, 2)).dim() == 0);
}

TEST_CASE("sigma data splitting") {
  const Field& F = Field::get(2, 1);
  // W_1 spanned by (1, t, 1 + t): P_1 is saturated with basis that vector.
  const SubspaceK W1 = SubspaceK::span(kmat(F, 1, 3, {T(F, 0), T(F, 1), RatK(Poly(F, {1, 1}))}), 3);
  const SigmaData sd = SigmaData::make(W1);
  CHECK(sd.k == 1);
  CHECK(to_k(sd.S) * to_k(sd.S_inv) == k_identity(F, 3));
  CHECK(W1.contains(sd.p1_basis()));
  CHECK_THROWS_AS(SigmaData::make(SubspaceK::whole(F, 3)), DomainError);
}

TEST_CASE("in_b_sigma examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  const std::vector<LatticeClass> v{dclass(F, {-1, 0})};
  CHECK(in_b_sigma(v, SigmaData::make(line(F, 2, 0)), t));
  CHECK_FALSE(in_b_sigma(v, SigmaData::make(line(F, 2, 1)), t));
  CHECK_FALSE(in_b_sigma(std::vector<LatticeClass>{dclass(F, {0, 0})}, SigmaData::make(line(F, 2, 0)), t));
}

TEST_CASE("epsilon, beta, alpha examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  const SigmaData sd = SigmaData::make(line(F, 2, 0));
  const Lattice Rq = Lattice::standard(F, 1);
  CHECK(epsilon(Rq, sd, t) == 2);
  CHECK(epsilon(Rq.scaled(-1), sd, t) == 3);
  const Lattice b = beta(Rq, sd, t);
  CHECK(b == diag(F, {-2, 0}));
  CHECK(beta(Rq.scaled(-1), sd, t) == b.scaled(-1));
  CHECK(stab_space(std::vector<Lattice>{b}, t).dim() == 2);
  CHECK(alpha(diag(F, {-2, 0}), sd) == Rq);
  CHECK(alpha(Lattice::standard(F, 2), sd) == Rq);
  CHECK(alpha(Lattice::standard(F, 2).scaled(-1), sd) == Rq.scaled(-1));
}

TEST_CASE("epsilon brute force in rank 1") {
  // Oracle: min{m : some a in (f), a != 0, deg a <= m + c} for L' = varpi^c R,
  // L~ = R, i.e. m = deg f - c.
  const Field& F = Field::get(3, 1);
  const SigmaData sd = SigmaData::make(line(F, 2, 0));
  for (const Poly& f : {Poly::t(F), Poly(F, {1, 1}), Poly(F, {1, 0, 1})}) {
    const Level lv(f);
    for (int c = -3; c <= 3; ++c) {
      const Lattice Lq = Lattice::diagonal(F, {c});
      CHECK(epsilon(Lq, sd, lv) == f.degree() - c + 1);
    }
  }
}

TEST_CASE("g_map examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  const SigmaData sd = SigmaData::make(line(F, 2, 0));
  const Lattice L = diag(F, {-1, 0});
  CHECK(epsilon_hat(L, sd, t) == 2);
  CHECK(g_map(L, 0, sd, t) == diag(F, {-2, 0}));
  CHECK(g_map(beta(alpha(L, sd), sd, t), 0, sd, t) == g_map(L, 0, sd, t));
  const int thr = absorption_threshold(L, sd, t);
  CHECK(thr == -1);  // varpi^{-n-2} e_1 lies in diag(t,1) R^2 iff n <= -1
  CHECK(g_map(L, thr, sd, t) == L);
  CHECK(g_map(L, thr + 1, sd, t) != L);
  CHECK_THROWS_AS(g_map(Lattice::standard(F, 2), 0, sd, t), DomainError);
}

TEST_CASE("apply examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  const GroupElt g = GroupElt::at_level(poly_identity(F, 2) + tE(F, 2, 0, 1, 1), t);
  const LatticeClass L0 = dclass(F, {0, 0});
  const auto img = btb::apply(g, {L0});
  CHECK(img[0] == canonical_class(kmat(F, 2, 2, {T(F, 0), T(F, 1), RatK(F), T(F, 0)})));
  CHECK(vertex_type(img[0]) == 0);
  CHECK(distance(L0, img[0]) != 1);
  CHECK(btb::apply(GroupElt::identity(F, 2), {L0}) == std::vector<LatticeClass>{L0});
}

TEST_CASE("orbit_witness examples") {
  const Field& F = Field::get(2, 1);
  const Level t(Poly::t(F));
  const std::vector<LatticeClass> s1{dclass(F, {0, 0}), dclass(F, {-1, 0})};
  const auto self = orbit_witness(s1, s1, t, 2);
  REQUIRE(self);
  CHECK(btb::apply(self->gamma, s1) == btb::apply(GroupElt::identity(F, 2), s1));

  PolyMatrix m = poly_identity(F, 2);
  m(1, 0) = Poly::t(F);
  const GroupElt g0 = GroupElt::at_level(m, t);
  const auto s2 = btb::apply(g0, s1);
  const auto w = orbit_witness(s1, s2, t, 2);
  REQUIRE(w);
  CHECK(btb::apply(w->gamma, s1) == s2);
  CHECK(w->gamma.congruence);

  CHECK_FALSE(orbit_witness({dclass(F, {0, 0})}, {dclass(F, {-1, 0})}, t, 4));
}

TEST_CASE("random level elements never move a vertex by one") {
  const Field& F = Field::get(2, 1);
  const Level lv(Poly(F, {1, 1}));
  std::mt19937 rng(4);
  const Ball b = Ball::build(LatticeClass(Lattice::standard(F, 2)), 2);
  for (int k = 0; k < 20; ++k) {
    const GroupElt g = random_level_element(lv, 2, rng);
    CHECK_FALSE(g.is_identity());
    for (const auto& v : b.vertices()) {
      const LatticeClass w = btb::apply(g, {v})[0];
      CHECK(distance(v, w) != 1);
      CHECK(vertex_type(v) == vertex_type(w));
    }
  }
}

TEST_CASE("classification does not depend on the thread count") {
  const Field& F = Field::get(2, 1);
  const Level lv(Poly::t(F));
  const Ball b = Ball::build(LatticeClass(Lattice::standard(F, 3)), 1);
  const Classification c1 = classify(b, lv, 1);
  const Classification c3 = classify(b, lv, 3);
  for (int d = 0; d <= b.max_dim(); ++d) {
    REQUIRE(c1.spaces[d].size() == c3.spaces[d].size());
    for (std::size_t i = 0; i < c1.spaces[d].size(); ++i) CHECK(c1.spaces[d][i].H.basis == c3.spaces[d][i].H.basis);
  }
}
