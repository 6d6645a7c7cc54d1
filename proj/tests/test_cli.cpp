#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "btb/cli.hpp"
#include "doctest.h"

using namespace btb;
using cli::Config;
using cli::parse_config;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("parse_config examples") {
  const Config c = parse_config({"homology", "--q", "2", "--r", "2", "--ideal", "t", "--radius", "2"});
  CHECK(c.p == 2);
  CHECK(c.n == 1);
  CHECK(*c.level == Poly::t(*c.field));
  CHECK(c.radius == 2);
  CHECK(c.center_class->rep() == Lattice::standard(*c.field, 2));

  CHECK_THROWS_WITH_AS(parse_config({"ball", "--q", "6"}), doctest::Contains("--q"), UsageError);
  CHECK_THROWS_WITH_AS(parse_config({"homology", "--q", "2", "--ideal", "1"}), doctest::Contains("--ideal"),
                       UsageError);
  CHECK_THROWS_WITH_AS(parse_config({"ball", "--frobnicate", "1"}), doctest::Contains("--frobnicate"), UsageError);
  CHECK_THROWS_AS(parse_config({"dance"}), UsageError);
  CHECK_THROWS_AS(parse_config({"homology", "--q", "2"}), UsageError);  // level required
  CHECK_THROWS_AS(parse_config({"ball", "--r", "1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"ball", "--q", "8", "--modulus", "1,1,1,1"}), UsageError);

  const Config e = parse_config({"ball", "--q", "9", "--ideal", "[1,1]"});
  CHECK(e.p == 3);
  CHECK(e.n == 2);
  CHECK(e.level->degree() == 1);
  const Config m = parse_config({"ball", "--q", "4", "--modulus", "1,1,1"});
  CHECK(m.modulus == std::vector<int>{1, 1, 1});
}

TEST_CASE("config file, flag precedence and env budgets") {
  const std::string path = temp_file("btb_cfg_test.ini", "q = 3\nr = 2\nideal = t+1\nradius = 3\n");
  const Config c = parse_config({"components", "--radius", "1"}, path);
  CHECK(c.p == 3);
  CHECK(c.radius == 1);
  CHECK(*c.level == Poly(*c.field, {1, 1}));
  const Config c2 = parse_config({"components", "--config", path});
  CHECK(c2.radius == 3);

  const std::string bad = temp_file("btb_cfg_bad.ini", "q = 3\nshoe_size = 9\n");
  CHECK_THROWS_WITH_AS(parse_config({"ball"}, bad), doctest::Contains("shoe_size"), UsageError);

  ::setenv("BTB_VERTEX_BUDGET", "7", 1);
  CHECK(parse_config({"ball"}).vertex_budget == 7);
  CHECK(parse_config({"ball", "--vertex-budget", "9"}).vertex_budget == 9);
  const cli::RunReport r = cli::run(parse_config({"ball", "--radius", "3"}));
  CHECK(r.exit_code() == cli::kBudget);
  ::unsetenv("BTB_VERTEX_BUDGET");
}

TEST_CASE("run examples") {
  const cli::RunReport ball = cli::run(parse_config({"ball", "--q", "2", "--r", "2", "--radius", "1"}));
  CHECK(ball.exit_code() == 0);
  CHECK(ball.result["counts"]["0"] == 4);
  CHECK(ball.result["counts"]["1"] == 3);
  CHECK(ball.warnings.front() == cli::kTruncationCaption);

  const cli::RunReport h =
      cli::run(parse_config({"homology", "--q", "2", "--r", "2", "--ideal", "t", "--radius", "2"}));
  CHECK(h.exit_code() == 0);
  CHECK(h.result["euler_additive"] == true);
  CHECK(h.result["full_reduced_acyclic"] == true);
  for (const auto& [d, v] : h.result["full"]["degree"].items()) CHECK(v["betti"] == 0);
  CHECK(h.result["stable"]["meta"]["radius"] == 2);
  CHECK(h.result["stable"]["meta"]["level"] == "t");

  const cli::RunReport v = cli::run(parse_config({"verify", "--criteria", "11,12"}));
  CHECK(v.exit_code() == 0);
  CHECK(v.result["checks"].size() == 2);

  CHECK_THROWS_AS(cli::run(parse_config({"restrict", "--ideal", "t", "--coarse-ideal", "t^2"})), UsageError);
}

TEST_CASE("output does not depend on the thread count") {
  for (const char* cmd : {"homology", "components", "unstable-map"}) {
    const auto a = cli::run(parse_config({cmd, "--q", "3", "--ideal", "t", "--radius", "3", "--threads", "1"}));
    const auto b = cli::run(parse_config({cmd, "--q", "3", "--ideal", "t", "--radius", "3", "--threads", "3"}));
    CHECK(a.to_json().dump() == b.to_json().dump());
  }
}
