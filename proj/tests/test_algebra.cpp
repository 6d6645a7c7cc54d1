#include <random>

#include "btb/smith.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace btb;
using th::P;

TEST_CASE("field construction validates parameters") {
  CHECK_THROWS_AS(Field::get(6, 1), UsageError);
  CHECK_THROWS_AS(Field::get(2, 2, std::vector<int>{1, 0, 1}), UsageError);  // x^2+1 = (x+1)^2 over F_2
  const Field& F4 = Field::get(2, 2);
  CHECK(F4.q() == 4);
  CHECK(&Field::get(2, 2) == &F4);
}

TEST_CASE("field axioms on random triples") {
  for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const Field& F = Field::get(p, n);
    std::mt19937 rng(7 + p * 10 + n);
    std::uniform_int_distribution<FieldElem> el(0, F.q() - 1);
    for (int k = 0; k < 1000; ++k) {
      const FieldElem a = el(rng), b = el(rng), c = el(rng);
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
    }
  }
}

TEST_CASE("valuation at infinity") {
  const Field& F = Field::get(2, 1);
  CHECK(v_inf(RatK::varpi_pow(F, 1)) == 1);
  CHECK(v_inf(RatK(F)) == kInfValuation);
  CHECK(v_inf(RatK(P(F, {1, 1}), P(F, {0, 0, 0, 1}))) == 2);
}

TEST_CASE("valuation is multiplicative and ultrametric") {
  for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
    const Field& F = Field::get(p, n);
    std::mt19937 rng(11);
    for (int k = 0; k < 300; ++k) {
      const RatK x = th::random_ratk(F, rng), y = th::random_ratk(F, rng);
      if (!x.is_zero() && !y.is_zero()) CHECK(v_inf(x * y) == v_inf(x) + v_inf(y));
      const int m = std::min(v_inf(x), v_inf(y));
      CHECK(v_inf(x + y) >= m);
      if (v_inf(x) != v_inf(y)) CHECK(v_inf(x + y) == m);
    }
  }
}

TEST_CASE("laurent expansion round trip") {
  const Field& F = Field::get(3, 1);
  std::mt19937 rng(5);
  for (int k = 0; k < 200; ++k) {
    const RatK x = th::random_ratk(F, rng);
    if (x.is_zero()) continue;
    for (int a = -3; a <= 4; ++a) {
      const RatK red = x.reduced_mod_varpi(a);
      CHECK(v_inf(x - red) >= a);
      CHECK(red.reduced_mod_varpi(a) == red);
    }
  }
}

TEST_CASE("polynomial division and gcd") {
  const Field& F = Field::get(3, 1);
  const Poly a = P(F, {1, 2, 0, 1});
  const Poly b = P(F, {2, 1});
  const auto [q, r] = a.divmod(b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK(Poly::gcd(a * b, b * b) == b.monic());
  CHECK(P(F, {1, 1, 1}).to_string() == "t^2 + t + 1");
}

TEST_CASE("solve_fq examples") {
  const Field& F = Field::get(2, 1);
  LinearSystem s{2, {{1, 1}}, {}};
  const FqMatrix b = solve_fq(F, s);
  REQUIRE(b.rows() == 1);
  CHECK(b.row(0) == std::vector<FieldElem>{1, 1});

  LinearSystem empty{3, {}, {}};
  const FqMatrix id = solve_fq(F, empty);
  CHECK(id.rows() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id(i, j) == (i == j ? 1u : 0u));

  LinearSystem full{2, {{1, 0}, {1, 1}}, {}};
  CHECK(solve_fq(F, full).rows() == 0);

  LinearSystem bad{2, {{1, 0, 1}}, {}};
  CHECK_THROWS_AS(solve_fq(F, bad), DimensionError);
}

TEST_CASE("affine solve") {
  const Field& F = Field::get(3, 1);
  LinearSystem s{2, {{1, 1}}, {2}};
  const auto sol = solve_affine_fq(F, s);
  REQUIRE(sol);
  CHECK(F.add(sol->particular[0], sol->particular[1]) == 2);
  CHECK(sol->basis.rows() == 1);
  LinearSystem inc{1, {{1}, {1}}, {1, 2}};
  CHECK_FALSE(solve_affine_fq(F, inc));
}

namespace {

BigInt det_bareiss(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? BigInt(1) : sign * a[n - 1][n - 1];
}

// Invariant factors from determinantal divisors d_k = gcd of k x k minors.
std::vector<BigInt> snf_by_minors(const std::vector<std::vector<BigInt>>& m) {
  const int R = static_cast<int>(m.size()), C = static_cast<int>(m[0].size());
  std::vector<BigInt> dk{1};
  for (int k = 1; k <= std::min(R, C); ++k) {
    BigInt g = 0;
    std::vector<int> rs(k), cs(k);
    std::vector<bool> rsel(R, false), csel(C, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::vector<std::vector<BigInt>> sub;
        for (int i = 0; i < R; ++i) {
          if (!rsel[i]) continue;
          std::vector<BigInt> row;
          for (int j = 0; j < C; ++j)
            if (csel[j]) row.push_back(m[i][j]);
          sub.push_back(row);
        }
        g = boost::multiprecision::gcd(g, det_bareiss(sub));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    dk.push_back(abs(g));
  }
  std::vector<BigInt> out;
  for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
  return out;
}

}  // namespace

TEST_CASE("snf examples") {
  IntMatrix d(2, 2);
  d.set(0, 0, 2);
  d.set(1, 1, 4);
  SnfResult s = snf(d);
  CHECK(s.diagonal == std::vector<BigInt>{2, 4});
  CHECK(s.torsion == std::vector<BigInt>{2, 4});

  IntMatrix ones(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ones.set(i, j, 1);
  s = snf(ones);
  CHECK(s.rank == 1);
  CHECK(s.diagonal == std::vector<BigInt>{1});

  // Vertex-by-edge incidence of a 3-cycle.
  IntMatrix cyc(3, 3);
  for (int e = 0; e < 3; ++e) {
    cyc.set(e, e, -1);
    cyc.set((e + 1) % 3, e, 1);
  }
  s = snf(cyc);
  CHECK(s.rank == 2);
  CHECK(s.torsion.empty());
  CHECK(3 - s.rank == 1);  // H_1 rank
}

TEST_CASE("snf agrees with determinantal divisors on random 6x6") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m(6, 6);
    std::vector<std::vector<BigInt>> dense(6, std::vector<BigInt>(6));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const int v = trial % 3 == 0 && val(rng) > 0 ? 0 : val(rng);  // some sparse cases
        m.set(i, j, v);
        dense[i][j] = v;
      }
    const SnfResult s = snf(m);
    CHECK(s.diagonal == snf_by_minors(dense));
    for (std::size_t k = 1; k < s.diagonal.size(); ++k) CHECK(s.diagonal[k] % s.diagonal[k - 1] == 0);
  }
}

TEST_CASE("dense snf transforms") {
  std::vector<std::vector<BigInt>> m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const DenseSnf d = dense_snf(m);
  CHECK(d.D[0][0] == 2);
  CHECK(d.D[1][1] == 6);
  CHECK(d.D[2][2] == 12);
}
