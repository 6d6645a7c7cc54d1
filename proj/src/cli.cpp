#include "btb/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "btb/verify.hpp"

namespace btb::cli {

namespace {

using io::Json;

const std::vector<std::string> kCommands{"ball", "stabilizer", "unstable-map", "homology",
                                         "components", "restrict", "verify"};

std::string read_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path);
  if (!in) throw UsageError(flag + ": cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON, or @path.
Json json_arg(const std::string& value, const std::string& flag) {
  const std::string text = !value.empty() && value.front() == '@' ? read_file(value.substr(1), flag) : value;
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw UsageError(flag + ": invalid JSON (" + e.what() + ")");
  }
}

// Re-throws library input errors with the flag name in front.
template <class F>
auto for_flag(const std::string& flag, F&& f) {
  try {
    return f();
  } catch (const UsageError& e) {
    throw UsageError(flag + ": " + e.what());
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  } catch (const SingularMatrixError& e) {
    throw UsageError(flag + ": " + e.what());
  } catch (const DimensionError& e) {
    throw UsageError(flag + ": " + e.what());
  } catch (const Json::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// q = p^n with p prime, or nullopt.
std::optional<std::pair<int, int>> prime_power(long long q) {
  if (q < 2) return std::nullopt;
  for (long long p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    int n = 0;
    while (q % p == 0) {
      q /= p;
      ++n;
    }
    if (q != 1) return std::nullopt;
    return std::pair<int, int>{static_cast<int>(p), n};
  }
  return std::pair<int, int>{static_cast<int>(q), 1};
}

Poly proper_level(const Field& F, const std::string& text, const std::string& flag) {
  const Poly f = for_flag(flag, [&] { return io::parse_poly(F, text); });
  if (f.is_constant()) throw UsageError(flag + ": '" + text + "' does not generate a proper nonzero ideal");
  return f;
}

void resolve(Config& c) {
  if (c.r < 2) throw UsageError("--r: rank must be at least 2");
  if (c.radius < 0) throw UsageError("--radius: must be nonnegative");
  if (c.threads < 1) throw UsageError("--threads: must be positive");
  if (c.enum_cap < 0 || c.solution_cap < 1 || c.vertex_budget < 1 || c.brute_budget < 1)
    throw UsageError("--budgets: caps must be positive");
  if (!Field::is_prime(c.p)) throw UsageError("--p: " + std::to_string(c.p) + " is not prime");
  if (c.n < 1) throw UsageError("--n: must be at least 1");
  c.field = for_flag(c.modulus ? "--modulus" : "--n", [&] { return &Field::get(c.p, c.n, c.modulus); });
  const Field& F = *c.field;
  if (c.ideal) c.level = proper_level(F, *c.ideal, "--ideal");
  if (c.coarse_ideal) c.coarse_level = proper_level(F, *c.coarse_ideal, "--coarse-ideal");
  if (c.center) {
    c.center_class = for_flag("--center", [&] { return io::class_from_json(F, json_arg(*c.center, "--center")); });
    if (c.center_class->rank() != c.r) throw UsageError("--center: class has rank " + std::to_string(c.center_class->rank()));
  } else {
    c.center_class = LatticeClass(Lattice::standard(F, c.r));
  }
  if (c.sigma) {
    c.w1 = for_flag("--sigma", [&] {
      const KMatrix rows = io::kmatrix_from_json(F, json_arg(*c.sigma, "--sigma"));
      if (rows.cols() != c.r) throw UsageError("rows must have length r");
      return SubspaceK::span(rows, c.r);
    });
    if (c.w1->dim() == 0 || c.w1->dim() >= c.r) throw UsageError("--sigma: W_1 must be a proper nonzero subspace");
  }
  const bool needs_level = c.command != "ball" && c.command != "verify";
  if (needs_level && !c.level) throw UsageError("--ideal: required by '" + c.command + "'");
  if (c.command == "restrict" && !c.coarse_level) throw UsageError("--coarse-ideal: required by 'restrict'");
  const std::string fmt = c.format;
  const bool ok = fmt == "auto" || fmt == "json" || (fmt == "dot" && c.command == "ball") ||
                  (fmt == "text" && c.command == "verify");
  if (!ok) throw UsageError("--format: '" + fmt + "' is not available for '" + c.command + "'");
  for (int id : c.criteria)
    if (id < 1 || id > verify::kCriteria) throw UsageError("--criteria: no criterion " + std::to_string(id));
}

}  // namespace

Config parse_config(const std::vector<std::string>& args, const std::optional<std::string>& file) {
  Config c;
  CLI::App app{"Truncated Bruhat-Tits buildings of GL_r over F_q(t)", "btb"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  if (file) {
    app.set_config("--config", *file, "key = value configuration file", true);
  } else {
    app.set_config("--config", "", "key = value configuration file");
  }
  std::optional<long long> q;
  std::string modulus, simplex, target, criteria;
  app.add_option("command", c.command, "command")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--q", q, "field size (prime power)");
  app.add_option("--p", c.p, "characteristic");
  app.add_option("--n", c.n, "extension degree");
  app.add_option("--modulus", modulus, "defining polynomial coefficients, low to high")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--r", c.r, "rank");
  app.add_option("--ideal", c.ideal, "level generator: polynomial in t or coefficient list")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--coarse-ideal", c.coarse_ideal, "coarse level generator (restrict)")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--radius", c.radius, "ball radius N");
  app.add_option("--center", c.center, "center class as JSON or @file");
  app.add_option("--sigma", c.sigma, "W_1 rows as K-matrix JSON or @file");
  app.add_option("--output", c.output, "output path (default stdout)");
  app.add_option("--format", c.format, "json | dot | text");
  app.add_option("--threads", c.threads, "worker threads");
  app.add_option("--enum-cap", c.enum_cap, "max stabilizer dimension to enumerate")->envname("BTB_ENUM_CAP");
  app.add_option("--solution-cap", c.solution_cap, "max points in an orbit search")->envname("BTB_SOLUTION_CAP");
  app.add_option("--vertex-budget", c.vertex_budget, "max ball vertices")->envname("BTB_VERTEX_BUDGET");
  app.add_option("--brute-budget", c.brute_budget, "max points in exhaustive search")->envname("BTB_BRUTE_BUDGET");
  app.add_option("--deg-bound", c.deg_bound, "degree bound for orbit searches");
  app.add_option("--simplex", simplex, "vertex ids of a ball simplex")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--target", target, "vertex ids of an orbit-search target")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_flag("--brute", c.brute, "compare against exhaustive search");
  app.add_option("--augmented", c.augmented, "augment the full complex (default true)");
  app.add_option("--criteria", criteria, "acceptance criteria to run (default all)")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--samples", c.samples, "random inputs for sampled criteria");
  app.add_option("--seed", c.seed, "random seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ConfigError& e) {
    throw UsageError(std::string("--config: ") + e.what());
  } catch (const CLI::FileError& e) {
    throw UsageError(std::string("--config: ") + e.what());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  auto int_list = [](const std::string& s, const std::string& flag) {
    std::vector<int> out;
    std::string body = s;
    body.erase(std::remove_if(body.begin(), body.end(), [](char ch) { return ch == '[' || ch == ']' || ch == ' '; }),
               body.end());
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError(flag + ": '" + s + "' is not a list of integers");
      }
    }
    if (out.empty()) throw UsageError(flag + ": empty list");
    return out;
  };
  if (q) {
    const auto pn = prime_power(*q);
    if (!pn) throw UsageError("--q: " + std::to_string(*q) + " is not a prime power");
    if ((app.count("--p") && pn->first != c.p) || (app.count("--n") && pn->second != c.n))
      throw UsageError("--q: disagrees with --p/--n");
    c.p = pn->first;
    c.n = pn->second;
  }
  if (!modulus.empty()) c.modulus = int_list(modulus, "--modulus");
  if (!simplex.empty()) c.simplex = int_list(simplex, "--simplex");
  if (!target.empty()) c.target = int_list(target, "--target");
  if (!criteria.empty()) c.criteria = int_list(criteria, "--criteria");
  resolve(c);
  return c;
}

int RunReport::exit_code() const {
  if (!failures.empty()) return kAssertion;
  if (budget_exceeded) return kBudget;
  return kPass;
}

Json RunReport::to_json() const {
  Json j{{"command", command}, {"status", exit_code() == kPass ? "pass" : (exit_code() == kBudget ? "budget" : "fail")}};
  j["config"] = config;
  j["warnings"] = warnings;
  j["failures"] = failures;
  j["result"] = result;
  return j;
}

namespace {

Json config_echo(const Config& c) {
  Json j{{"p", c.p}, {"n", c.n}};
  if (c.modulus) j["modulus"] = *c.modulus;
  j["r"] = c.r;
  if (c.level) j["ideal"] = io::poly_to_json(*c.level);
  if (c.coarse_level) j["coarse_ideal"] = io::poly_to_json(*c.coarse_level);
  j["radius"] = c.radius;
  j["center"] = io::class_to_json(*c.center_class);
  if (c.w1) j["sigma"] = io::subspace_to_json(*c.w1);
  j["budgets"] = Json{{"enum_cap", c.enum_cap},
                      {"solution_cap", c.solution_cap},
                      {"vertex_budget", c.vertex_budget},
                      {"brute_budget", c.brute_budget}};
  return j;
}

Ball make_ball(const Config& c) { return Ball::build(*c.center_class, c.radius, c.vertex_budget); }

// Ball simplex with the given vertex ids (any order).
Simplex find_simplex(const Ball& b, const std::vector<int>& ids, const std::string& flag) {
  for (int id : ids)
    if (id < 0 || id >= b.size()) throw UsageError(flag + ": vertex " + std::to_string(id) + " is not in the ball");
  Simplex s{ids};
  std::sort(s.ids.begin(), s.ids.end(), [&](int a, int c) { return b.type(a) < b.type(c); });
  const int d = s.dim();
  const auto& list = b.simplices(d);
  if (d > b.max_dim() || !std::binary_search(list.begin(), list.end(), s))
    throw UsageError(flag + ": vertices do not span a simplex of the ball");
  return s;
}

Json counts_json(const Ball& b) {
  Json j = Json::object();
  for (int d = 0; d <= b.max_dim(); ++d) j[std::to_string(d)] = b.simplices(d).size();
  return j;
}

void cmd_ball(const Config& c, RunReport& rep) {
  const Ball b = make_ball(c);
  rep.warnings.push_back(kTruncationCaption);
  io::BallParams params{c.p, c.n, c.modulus, c.level};
  rep.result = Json{{"counts", counts_json(b)}, {"ball", io::ball_to_json(b, params)}};
  if (c.format == "dot") rep.text = "// " + std::string(kTruncationCaption) + "\n" + to_dot(b);
}

void cmd_stabilizer(const Config& c, RunReport& rep) {
  const Ball b = make_ball(c);
  const Level lv(*c.level);
  const Simplex s = find_simplex(b, c.simplex, "--simplex");
  const StabilizerSpace H = stab_space(b, s, lv);
  Json res{{"simplex", s.ids}, {"unstable", H.dim() > 0}, {"stabilizer", io::stabilizer_to_json(H)},
           {"fixed_space", io::subspace_to_json(fixed_space(H))}};
  if (c.brute) {
    std::vector<GroupElt> fast = enumerate_stab(H, c.enum_cap);
    std::vector<Lattice> lats;
    for (int id : s.ids) lats.push_back(b.vertex(id).rep());
    const int bound = std::max(H.H.solver_bound, lv.f().degree()) + 1;
    std::vector<GroupElt> slow = brute_stab(lats, lv, bound, c.brute_budget);
    std::sort(fast.begin(), fast.end());
    std::sort(slow.begin(), slow.end());
    res["brute"] = Json{{"deg_bound", bound}, {"elements", slow.size()}, {"equal", fast == slow}};
    if (fast != slow) rep.failures.push_back("stabilizer differs from exhaustive search");
  }
  if (c.target) {
    const Simplex s2 = find_simplex(b, *c.target, "--target");
    const int bound = c.deg_bound.value_or(lv.f().degree() + 1);
    const auto w = orbit_witness(b.classes(s), b.classes(s2), lv, bound, c.solution_cap);
    res["orbit_witness"] = io::orbit_witness_to_json(w, bound);
    if (!w) rep.warnings.push_back("orbit search inconclusive at degree bound " + std::to_string(bound));
  }
  rep.result = std::move(res);
}

void cmd_unstable_map(const Config& c, RunReport& rep) {
  const Ball b = make_ball(c);
  const Level lv(*c.level);
  const Classification cls = classify(b, lv, c.threads);
  rep.warnings.push_back(kTruncationCaption);
  std::optional<SigmaData> sd;
  if (c.w1) sd = SigmaData::make(*c.w1);
  Json entries = Json::array();
  Json counts = Json::object();
  for (int d = 0; d <= b.max_dim(); ++d) {
    const auto& all = b.simplices(d);
    int unstable = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!cls.unstable(d, static_cast<int>(i))) continue;
      ++unstable;
      const StabilizerSpace& H = cls.spaces[d][i];
      const SubspaceK W = fixed_space(H);
      if (W.dim() == 0 || W.dim() >= c.r) rep.failures.push_back("improper fixed space on an unstable simplex");
      Json e{{"dim", d}, {"ids", all[i].ids}, {"stab_dim", H.dim()}, {"fixed_space", io::subspace_to_json(W)}};
      if (sd) {
        const std::vector<Lattice> lats = [&] {
          std::vector<Lattice> out;
          for (int id : all[i].ids) out.push_back(b.vertex(id).rep());
          return out;
        }();
        const bool in = in_b_sigma(lats, *sd, lv);
        e["in_b_sigma"] = in;
        if (in && d == 0) {
          const Lattice& L = lats.front();
          const LatticeClass g0(g_map(L, 0, *sd, lv));
          const auto id = b.find(g0);
          e["epsilon_hat"] = epsilon_hat(L, *sd, lv);
          e["absorption_threshold"] = absorption_threshold(L, *sd, lv);
          e["g_map_0"] = Json{{"class", io::class_to_json(g0)}, {"ball_id", id ? Json(*id) : Json(nullptr)}};
        }
      }
      entries.push_back(std::move(e));
    }
    counts[std::to_string(d)] = Json{{"total", all.size()}, {"unstable", unstable}};
  }
  rep.result = Json{{"counts", std::move(counts)}, {"unstable", std::move(entries)}};
}

// Rank of the degree-(r-1) cycle space of the stable complex.
long long top_cycle_rank(const ChainComplex& c, int r) {
  const int d = r - 1;
  if (d > c.top()) return 0;
  return c.rank(d) - snf(c.boundary(d)).rank;
}

void cmd_homology(const Config& c, RunReport& rep) {
  const Ball b = make_ball(c);
  const Level lv(*c.level);
  const Classification cls = classify(b, lv, c.threads);
  rep.warnings.push_back(kTruncationCaption);
  const std::string level = lv.f().to_string();
  auto tagged = [&](HomologyResult h) {
    h.radius = b.radius();
    h.level = level;
    return h;
  };
  const ChainComplex full = full_complex(b, c.augmented);
  const ChainComplex un = unstable_complex(b, cls);
  const StableComplex st = stable_complex(b, cls, lv);
  HomologyResult hf = tagged(homology(full, c.threads));
  hf.level.clear();  // the full complex does not depend on the level
  const HomologyResult hu = tagged(homology(un, c.threads));
  const HomologyResult hs = tagged(homology(st.complex, c.threads));
  const long long chi_full = full_complex(b, false).euler();
  const bool additive = chi_full == un.euler() + st.complex.euler();
  if (!additive) rep.failures.push_back("Euler characteristic is not additive");
  bool acyclic = true;
  if (c.augmented)
    for (const auto& [d, h] : hf.degrees) acyclic = acyclic && h.betti == 0 && h.torsion.empty();
  if (!acyclic) rep.failures.push_back("augmented full complex has nonzero reduced homology");
  Json growth = Json::object();
  for (int R = 0; R <= c.radius; ++R) {
    const Ball br = R == c.radius ? b : Ball::build(*c.center_class, R, c.vertex_budget);
    const StableComplex sr = R == c.radius ? st : stable_complex(br, classify(br, lv, c.threads), lv);
    growth[std::to_string(R)] = top_cycle_rank(sr.complex, c.r);
  }
  rep.result = Json{{"full", io::homology_to_json(hf)},
                    {"unstable", io::homology_to_json(hu)},
                    {"stable", io::homology_to_json(hs)},
                    {"euler_additive", additive},
                    {"full_reduced_acyclic", c.augmented ? Json(acyclic) : Json(nullptr)},
                    {"stable_top_cycle_rank_by_radius", std::move(growth)}};
}

void cmd_components(const Config& c, RunReport& rep) {
  const Ball b = make_ball(c);
  const Level lv(*c.level);
  const ComponentReport cr = components(b, classify(b, lv, c.threads), lv);
  rep.warnings.push_back(kTruncationCaption);
  for (const auto& comp : cr.components) {
    if (comp.is_tree && !*comp.is_tree) rep.failures.push_back("rank-2 unstable component has a cycle");
    if (comp.fixed.dim() == 0) rep.failures.push_back("component has zero common fixed space");
  }
  rep.result = io::components_to_json(cr);
}

void cmd_restrict(const Config& c, RunReport& rep) {
  const Ball b = make_ball(c);
  const Level fine(*c.level);
  const Level coarse(*c.coarse_level);
  if (!coarse.f().divides(fine.f()))
    throw UsageError("--coarse-ideal: " + coarse.f().to_string() + " does not divide " + fine.f().to_string());
  const StableComplex sf = stable_complex(b, classify(b, fine, c.threads), fine);
  const StableComplex sc = stable_complex(b, classify(b, coarse, c.threads), coarse);
  const std::vector<IntMatrix> maps = restriction_map(sf, sc);
  rep.warnings.push_back(kTruncationCaption);
  Json degrees = Json::array();
  for (std::size_t d = 0; d < maps.size(); ++d) {
    Json entries = Json::array();
    for (const auto& [i, j, v] : maps[d].triples()) entries.push_back(Json::array({i, j, v}));
    Json killed = Json::array();
    for (int j = 0; j < sf.complex.rank(static_cast<int>(d)); ++j) {
      const Simplex& s = sf.complex.generators(static_cast<int>(d))[j];
      if (sc.complex.index_of(static_cast<int>(d), s) < 0) killed.push_back(s.ids);
    }
    degrees.push_back(Json{{"degree", d},
                           {"rows", maps[d].rows()},
                           {"cols", maps[d].cols()},
                           {"entries", std::move(entries)},
                           {"killed", std::move(killed)}});
  }
  rep.result = Json{{"fine", io::poly_to_json(fine.f())},
                    {"coarse", io::poly_to_json(coarse.f())},
                    {"commutes", true},
                    {"maps", std::move(degrees)}};
}

void cmd_verify(const Config& c, RunReport& rep) {
  verify::Options opt;
  opt.threads = c.threads;
  opt.enum_cap = c.enum_cap;
  opt.brute_budget = c.brute_budget;
  opt.vertex_budget = c.vertex_budget;
  opt.samples = c.samples;
  opt.seed = c.seed;
  std::vector<int> ids = c.criteria;
  if (ids.empty())
    for (int i = 1; i <= verify::kCriteria; ++i) ids.push_back(i);
  Json checks = Json::array();
  std::ostringstream text;
  for (int id : ids) {
    const verify::CheckResult r = verify::run_criterion(id, opt);
    std::cerr << "criterion " << id << ": " << std::fixed << std::setprecision(2) << r.seconds << " s\n";
    checks.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    text << verify::format_line(r) << "\n";
    if (r.budget_exceeded) {
      rep.budget_exceeded = true;
    } else if (!r.passed) {
      rep.failures.push_back("criterion " + std::to_string(id) + " failed");
    }
  }
  rep.result = Json{{"checks", std::move(checks)}};
  if (c.format != "json") rep.text = text.str();
}

}  // namespace

RunReport run(const Config& cfg) {
  RunReport rep;
  rep.command = cfg.command;
  rep.config = config_echo(cfg);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (cfg.command == "ball") cmd_ball(cfg, rep);
    else if (cfg.command == "stabilizer") cmd_stabilizer(cfg, rep);
    else if (cfg.command == "unstable-map") cmd_unstable_map(cfg, rep);
    else if (cfg.command == "homology") cmd_homology(cfg, rep);
    else if (cfg.command == "components") cmd_components(cfg, rep);
    else if (cfg.command == "restrict") cmd_restrict(cfg, rep);
    else if (cfg.command == "verify") cmd_verify(cfg, rep);
    else throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const AssertionFailure& e) {
    rep.failures.push_back(e.what());
  } catch (const BudgetError& e) {
    rep.budget_exceeded = true;
    rep.warnings.push_back(std::string("budget exceeded: ") + e.what());
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

int error_exit(const std::string& command, const std::string& kind, const std::string& message, int code) {
  std::cerr << "btb: " << message << "\n";
  Json j{{"command", command}, {"status", "error"}, {"error", Json{{"kind", kind}, {"message", message}}}};
  std::cout << j.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args.front() == "--help" || args.front() == "-h") {
    try {
      parse_config({"--help"});
    } catch (const UsageError& e) {
      std::cout << e.what();
    }
    return args.empty() ? kUsage : kPass;
  }
  Config cfg;
  try {
    cfg = parse_config(args);
  } catch (const UsageError& e) {
    return error_exit(args.front(), "usage", e.what(), kUsage);
  }
  RunReport rep;
  try {
    rep = run(cfg);
  } catch (const UsageError& e) {
    return error_exit(cfg.command, "usage", e.what(), kUsage);
  } catch (const DomainError& e) {
    return error_exit(cfg.command, "usage", e.what(), kUsage);
  } catch (const std::exception& e) {
    return error_exit(cfg.command, "internal", e.what(), kAssertion);
  }
  std::cerr << "btb " << cfg.command << ": " << std::fixed << std::setprecision(3) << rep.seconds << " s\n";
  const bool text = !rep.text.empty() && (cfg.format == "dot" || cfg.format == "text" || cfg.format == "auto");
  const std::string body = text ? rep.text : rep.to_json().dump(2) + "\n";
  if (cfg.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(cfg.output);
    if (!out) return error_exit(cfg.command, "usage", "--output: cannot write '" + cfg.output + "'", kUsage);
    out << body;
  }
  for (const auto& f : rep.failures) std::cerr << "btb: assertion failed: " << f << "\n";
  return rep.exit_code();
}

}  // namespace btb::cli
