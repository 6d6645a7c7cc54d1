#include <random>

#include "btb/io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace btb;
using io::Json;

TEST_CASE("polynomial parsing") {
  const Field& F2 = Field::get(2, 1);
  CHECK(io::parse_poly(F2, "t") == Poly::t(F2));
  CHECK(io::parse_poly(F2, "t + 1") == th::P(F2, {1, 1}));
  CHECK(io::parse_poly(F2, "t^2") == Poly::monomial(F2, 1, 2));
  CHECK(io::parse_poly(F2, "[1,0,1]") == th::P(F2, {1, 0, 1}));
  CHECK(io::parse_poly(F2, "1,1") == th::P(F2, {1, 1}));
  CHECK(io::parse_poly(F2, "1") == Poly::constant(F2, 1));
  const Field& F3 = Field::get(3, 1);
  CHECK(io::parse_poly(F3, "2t^2 - t + 1") == th::P(F3, {1, 2, 2}));
  CHECK(io::parse_poly(F3, "2*t") == th::P(F3, {0, 2}));
  CHECK_THROWS_AS(io::parse_poly(F3, "t^"), UsageError);
  CHECK_THROWS_AS(io::parse_poly(F3, "x+1"), UsageError);
  CHECK_THROWS_AS(io::parse_poly(F3, ""), UsageError);
  const Field& F4 = Field::get(2, 2);
  CHECK(io::parse_poly(F4, "3t+2") == th::P(F4, {2, 3}));
  CHECK_THROWS_AS(io::parse_poly(F4, "4t"), UsageError);
}

TEST_CASE("lattice classes round-trip bit-exactly") {
  std::mt19937 rng(11);
  for (auto [p, n, r] : {std::tuple{2, 1, 2}, {3, 1, 3}, {2, 2, 3}, {5, 1, 2}}) {
    const Field& F = Field::get(p, n);
    for (int it = 0; it < 25; ++it) {
      const LatticeClass c = canonical_class(th::random_basis(F, r, rng, 3));
      const Json j = io::class_to_json(c);
      const LatticeClass back = io::class_from_json(F, Json::parse(j.dump()));
      CHECK(back == c);
      CHECK(io::class_to_json(back).dump() == j.dump());
    }
  }
}

TEST_CASE("lattice import rejects non-canonical data") {
  const Field& F = Field::get(2, 1);
  CHECK_THROWS_AS(io::class_from_json(F, Json::parse(R"({"diag_exponents":[1,1],"subdiagonal":[[],[[]]]})")),
                  UsageError);
  // Lists stop at the lowest nonzero term.
  CHECK_THROWS_AS(
      io::class_from_json(F, Json::parse(R"({"diag_exponents":[0,1],"subdiagonal":[[],[[1,0,0]]]})")),
      UsageError);
  const LatticeClass c =
      io::class_from_json(F, Json::parse(R"({"diag_exponents":[0,2],"subdiagonal":[[],[[1,1]]]})"));
  CHECK(c.rep().diag_exponents() == std::vector<int>{0, 2});
  CHECK(c.rep().basis()(1, 0) == RatK(th::P(F, {1, 1}), Poly::t(F)));
}

TEST_CASE("ball JSON round-trip") {
  for (auto [p, n, r, N] : {std::tuple{2, 1, 2, 2}, {2, 1, 3, 1}, {2, 2, 2, 1}}) {
    const Field& F = Field::get(p, n);
    const Ball b = Ball::build(LatticeClass(Lattice::standard(F, r)), N);
    io::BallParams params{p, n, std::nullopt, Poly::t(F)};
    const Json j = io::ball_to_json(b, params);
    CHECK(j["vertices"].size() == static_cast<std::size_t>(b.size()));
    const io::ImportedBall back = io::ball_from_json(Json::parse(j.dump()));
    CHECK(back.ball == b);
    CHECK(*back.params.ideal == Poly::t(F));
    CHECK(io::ball_to_json(back.ball, back.params).dump() == j.dump());
  }
}

TEST_CASE("subspace and result serialization") {
  const Field& F = Field::get(3, 1);
  KMatrix rows = k_zero(F, 1, 3);
  rows(0, 0) = RatK(Poly::t(F), th::P(F, {1, 1}));
  rows(0, 2) = RatK::from_int(F, 1);
  const SubspaceK W = SubspaceK::span(rows, 3);
  CHECK(io::subspace_from_json(F, Json::parse(io::subspace_to_json(W).dump())) == W);

  const Field& F2 = Field::get(2, 1);
  const Level lv(Poly::t(F2));
  const StabilizerSpace H = stab_space(std::vector<LatticeClass>{LatticeClass(Lattice::diagonal(F2, {-2, 0}))}, lv);
  const Json hj = io::stabilizer_to_json(H);
  CHECK(hj["dim"] == 2);
  CHECK(hj["order"] == 4);

  HomologyResult h;
  h.degrees[0] = DegreeHomology{1, {}};
  h.degrees[1] = DegreeHomology{0, {BigInt(2)}};
  h.radius = 2;
  h.level = "t";
  const Json j = io::homology_to_json(h);
  CHECK(j["degree"]["1"]["torsion"][0] == 2);
  CHECK(j["meta"]["radius"] == 2);
  CHECK(j["meta"]["level"] == "t");
  CHECK(j["meta"]["augmented"] == false);
}
