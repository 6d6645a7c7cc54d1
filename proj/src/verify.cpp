#include "btb/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "btb/homology.hpp"

namespace btb::verify {

namespace {

// Records the first few mismatches of a check; the check fails iff any.
class Tally {
 public:
  void require(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 3) messages_.push_back(what());
  }
  long long checks() const { return checks_; }
  bool ok() const { return failures_ == 0; }
  std::string summary(const std::string& counts) const {
    std::ostringstream os;
    os << counts << "; " << checks_ << " assertions";
    if (failures_ > 0) {
      os << ", " << failures_ << " failed";
      for (const auto& m : messages_) os << " | " << m;
    }
    return os.str();
  }

 private:
  long long checks_ = 0;
  long long failures_ = 0;
  std::vector<std::string> messages_;
};

struct Config {
  int q;
  int r;
  int radius;
};

std::string label(const Config& c) {
  return "(r,q)=(" + std::to_string(c.r) + "," + std::to_string(c.q) + ") N=" + std::to_string(c.radius);
}

const Field& prime_field(int q) { return Field::get(q, 1); }

Ball origin_ball(const Config& c, const Options& opt) {
  const Field& F = prime_field(c.q);
  return Ball::build(LatticeClass(Lattice::standard(F, c.r)), c.radius, opt.vertex_budget);
}

std::vector<Level> standard_levels(const Field& F) {
  return {Level(Poly::t(F)), Level(Poly(F, {1, 1})), Level(Poly::monomial(F, 1, 2))};
}

std::vector<Lattice> reps(const Ball& b, const Simplex& s) {
  std::vector<Lattice> out;
  for (int id : s.ids) out.push_back(b.vertex(id).rep());
  return out;
}

std::string simplex_string(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.ids[i]);
  }
  return out + "}";
}

bool is_power_of(BigInt n, int p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

// Configurations of criteria 1, 2 and 5.
const std::vector<Config> kSweep{{2, 2, 2}, {2, 3, 1}};
// Distance-check balls of criterion 3: N = 3 and N = 4.
const std::vector<Config> kDistance{{2, 2, 3}, {2, 2, 4}, {2, 3, 3}, {2, 3, 4}};
// Radius-4 forest configurations of criterion 10.
const std::vector<Config> kForest{{2, 2, 4}, {3, 2, 4}};

Lattice random_lattice(const Field& F, int r, std::mt19937& rng, int spread = 2) {
  std::uniform_int_distribution<int> e(-spread, spread);
  std::uniform_int_distribution<int> idx(0, r - 1);
  std::uniform_int_distribution<FieldElem> el(0, static_cast<FieldElem>(F.q() - 1));
  KMatrix b = k_zero(F, r, r);
  for (int i = 0; i < r; ++i) b(i, i) = RatK::varpi_pow(F, e(rng));
  for (int s = 0; s < 2 * r; ++s) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    KMatrix m = k_identity(F, r);
    m(i, j) = RatK(Poly(F, {el(rng), el(rng)}));
    b = m * b;
  }
  return Lattice::from_generators(b);
}

SubspaceK random_subspace(const Field& F, int r, int k, std::mt19937& rng) {
  std::uniform_int_distribution<FieldElem> el(0, static_cast<FieldElem>(F.q() - 1));
  for (;;) {
    KMatrix rows = k_zero(F, k, r);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < r; ++j) rows(i, j) = RatK(Poly(F, {el(rng), el(rng)}));
    if (k_rank(rows) == k) return SubspaceK::span(rows, r);
  }
}

// ---------------------------------------------------------------------------

std::string c1(const Options& opt, Tally& t) {
  const Config c{2, 2, 2};
  const Ball b = origin_ball(c, opt);
  long long simplices = 0, elements = 0;
  for (const Level& lv : standard_levels(b.field())) {
    for (int d = 0; d <= b.max_dim(); ++d) {
      for (const Simplex& s : b.simplices(d)) {
        const StabilizerSpace H = stab_space(b, s, lv);
        std::vector<GroupElt> fast = enumerate_stab(H, opt.enum_cap);
        // One degree past the solver bound, so the oracle also probes the bound.
        const int bound = std::max(H.H.solver_bound, lv.f().degree()) + 1;
        std::vector<GroupElt> slow = brute_stab(reps(b, s), lv, bound, opt.brute_budget);
        std::sort(fast.begin(), fast.end());
        std::sort(slow.begin(), slow.end());
        t.require(fast == slow, [&] {
          return "level " + lv.f().to_string() + " simplex " + simplex_string(s) + ": " +
                 std::to_string(fast.size()) + " vs brute " + std::to_string(slow.size());
        });
        ++simplices;
        elements += static_cast<long long>(fast.size());
      }
    }
  }
  return label(c) + ", levels t, t+1, t^2: " + std::to_string(simplices) + " simplices, " +
         std::to_string(elements) + " group elements matched";
}

std::string c2(const Options& opt, Tally& t) {
  long long groups = 0;
  std::map<int, long long> by_dim;
  for (const Config& c : kSweep) {
    const Ball b = origin_ball(c, opt);
    for (const Level& lv : standard_levels(b.field())) {
      const Classification cls = classify(b, lv, opt.threads);
      for (int d = 0; d <= b.max_dim(); ++d) {
        const auto& all = b.simplices(d);
        for (std::size_t i = 0; i < all.size(); ++i) {
          const StabilizerSpace& H = cls.spaces[d][i];
          const std::vector<GroupElt> G = enumerate_stab(H, opt.enum_cap);
          const std::set<GroupElt> set(G.begin(), G.end());
          const BigInt order(static_cast<long long>(set.size()));
          t.require(is_power_of(order, b.field().p()) && order == stab_order(H), [&] {
            return label(c) + " level " + lv.f().to_string() + " simplex " + simplex_string(all[i]) +
                   ": order " + order.str();
          });
          // Closure of 1 + H under products and inverses.
          bool closed = true;
          for (const auto& g : G) {
            closed = closed && set.count(g.inverse()) == 1;
            for (const auto& h : G) closed = closed && set.count(g * h) == 1;
          }
          t.require(closed, [&] { return label(c) + " simplex " + simplex_string(all[i]) + " not closed"; });
          ++groups;
          ++by_dim[H.dim()];
        }
      }
    }
  }
  std::string dims;
  for (const auto& [d, n] : by_dim) dims += (dims.empty() ? "" : ", ") + std::to_string(n) + "x q^" + std::to_string(d);
  return std::to_string(groups) + " stabilizers (" + dims + ")";
}

std::string c3(const Options& opt, Tally& t) {
  long long pairs = 0;
  std::string balls;
  for (const Config& c : kDistance) {
    const Ball b = origin_ball(c, opt);
    const int inner = c.radius / 2;
    std::vector<int> ids;
    for (int v = 0; v < b.size(); ++v)
      if (b.depth(v) <= inner) ids.push_back(v);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i; j < ids.size(); ++j) {
        const int ed = distance(b.vertex(ids[i]), b.vertex(ids[j]));
        const std::optional<int> bfs = bfs_distance(b, ids[i], ids[j]);
        t.require(bfs && *bfs == ed, [&] {
          return label(c) + " pair " + std::to_string(ids[i]) + "," + std::to_string(ids[j]) + ": " +
                 std::to_string(ed) + " vs bfs " + (bfs ? std::to_string(*bfs) : "none");
        });
        ++pairs;
      }
    }
    balls += (balls.empty() ? "" : ", ") + label(c) + " depth<=" + std::to_string(inner);
  }
  return std::to_string(pairs) + " pairs over " + balls;
}

std::string c4(const Options& opt, Tally& t) {
  std::mt19937 rng(opt.seed);
  long long moves = 0;
  int configs = 0;
  for (const Config& c : kSweep) {
    const Ball b = origin_ball(c, opt);
    for (const Level& lv : standard_levels(b.field())) {
      ++configs;
      for (int s = 0; s < opt.samples; ++s) {
        const GroupElt g = random_level_element(lv, c.r, rng);
        t.require(!g.is_identity() && g.congruence, [&] { return std::string("sampled element is trivial"); });
        for (int v = 0; v < b.size(); ++v) {
          const LatticeClass w = btb::apply(g, {b.vertex(v)}).front();
          const int d = distance(b.vertex(v), w);
          t.require(d != 1 && vertex_type(w) == b.type(v), [&] {
            return label(c) + " level " + lv.f().to_string() + " vertex " + std::to_string(v) + " moved by " +
                   std::to_string(d);
          });
          ++moves;
        }
      }
    }
  }
  return std::to_string(opt.samples) + " elements x " + std::to_string(configs) + " (config, level) pairs, " +
         std::to_string(moves) + " vertex images";
}

std::string c5(const Options& opt, Tally& t) {
  long long simplices = 0;
  for (const Config& c : kSweep) {
    const Ball b = origin_ball(c, opt);
    const Field& F = b.field();
    for (const Level& lv : standard_levels(F)) {
      const Classification cls = classify(b, lv, opt.threads);
      for (int d = 1; d <= b.max_dim(); ++d) {
        const auto& all = b.simplices(d);
        for (std::size_t i = 0; i < all.size(); ++i) {
          const SectionSpace& Hs = cls.spaces[d][i].H;
          std::vector<const SectionSpace*> parts;
          for (int v : all[i].ids) parts.push_back(&cls.spaces[0][static_cast<std::size_t>(v)].H);
          int deg = std::max(0, Hs.solver_bound);
          for (const auto* p : parts) deg = std::max(deg, p->solver_bound);
          // Intersection of the vertex spaces in common coordinates.
          FqMatrix meet = parts.front()->coordinates(F, deg);
          for (std::size_t k = 1; k < parts.size(); ++k) meet = intersect_rowspaces(meet, parts[k]->coordinates(F, deg));
          const FqMatrix mine = Hs.coordinates(F, deg);
          bool inside = true;
          for (const auto* p : parts) inside = inside && space_contains(*p, Hs);
          t.require(inside && rowspace_contains(meet, mine) && rowspace_contains(mine, meet), [&] {
            return label(c) + " level " + lv.f().to_string() + " simplex " + simplex_string(all[i]) +
                   ": dim " + std::to_string(Hs.dim()) + " vs intersection " + std::to_string(meet.rank());
          });
          ++simplices;
        }
      }
    }
  }
  return std::to_string(simplices) + " edges/chambers over " + label(kSweep[0]) + ", " + label(kSweep[1]);
}

std::string c6(const Options& opt, Tally& t) {
  long long unstable = 0;
  std::vector<Config> sweeps = kSweep;
  sweeps.insert(sweeps.end(), kForest.begin(), kForest.end());
  for (const Config& c : sweeps) {
    const Ball b = origin_ball(c, opt);
    for (const Level& lv : standard_levels(b.field())) {
      const Classification cls = classify(b, lv, opt.threads);
      for (int d = 0; d <= b.max_dim(); ++d) {
        for (std::size_t i = 0; i < b.simplices(d).size(); ++i) {
          if (!cls.unstable(d, static_cast<int>(i))) continue;
          const int dim = fixed_space(cls.spaces[d][i]).dim();
          t.require(dim > 0 && dim < c.r, [&] {
            return label(c) + " level " + lv.f().to_string() + " simplex " +
                   simplex_string(b.simplices(d)[i]) + ": fixed dim " + std::to_string(dim);
          });
          ++unstable;
        }
      }
    }
  }
  return std::to_string(unstable) + " unstable simplices checked";
}

std::string c7(const Options& opt, Tally& t) {
  std::mt19937 rng(opt.seed + 7);
  long long gmaps = 0;
  std::string cases;
  for (const Config& c : {Config{2, 2, 0}, Config{2, 3, 0}}) {
    const Field& F = prime_field(c.q);
    const std::vector<Level> levels = standard_levels(F);
    for (int k = 1; k < c.r; ++k) {
      for (int s = 0; s < opt.samples; ++s) {
        const Level& lv = levels[static_cast<std::size_t>(s) % levels.size()];
        const SigmaData sd = SigmaData::make(random_subspace(F, c.r, k, rng));
        const Lattice Lq = random_lattice(F, c.r - k, rng);
        const Lattice B = beta(Lq, sd, lv);
        const auto where = [&] {
          return "r=" + std::to_string(c.r) + " k=" + std::to_string(k) + " sample " + std::to_string(s);
        };
        t.require(in_b_sigma(std::vector<Lattice>{B}, sd, lv), [&] { return where() + ": beta(L') not in B_sigma"; });
        t.require(epsilon(Lq.scaled(-1), sd, lv) == epsilon(Lq, sd, lv) + 1,
                  [&] { return where() + ": epsilon shift law"; });
        // g_map inputs: beta(L') and a random lattice of B_sigma when one turns up.
        std::vector<Lattice> inputs{B};
        for (int attempt = 0; attempt < 20; ++attempt) {
          Lattice L = random_lattice(F, c.r, rng, 3);
          if (in_b_sigma(std::vector<Lattice>{L}, sd, lv)) {
            inputs.push_back(std::move(L));
            break;
          }
        }
        for (const Lattice& L : inputs) {
          const int thr = absorption_threshold(L, sd, lv);
          const SectionSpace kill = kill_space({L}, sd, lv).H;
          for (int n = thr - 1; n <= thr + 2; ++n) {
            const Lattice G = g_map(L, n, sd, lv);
            if (n <= thr) t.require(G == L, [&] { return where() + ": g_map moved L below the threshold"; });
            if (n > thr) t.require(!(G == L), [&] { return where() + ": g_map fixed L above the threshold"; });
            t.require(G.contains(L), [&] { return where() + ": g_map(L) does not contain L"; });
            t.require(space_contains(kill_space({G}, sd, lv).H, kill),
                      [&] { return where() + ": kill space of L not inside that of g_map(L)"; });
            ++gmaps;
          }
        }
      }
      cases += (cases.empty() ? "" : ", ") + std::string("(r,q)=(") + std::to_string(c.r) + "," +
               std::to_string(c.q) + ") dim W1=" + std::to_string(k);
    }
  }
  return std::to_string(opt.samples) + " samples each for " + cases + "; " + std::to_string(gmaps) + " g_map evaluations";
}

// Every (config, level) of criteria 1-5.
std::vector<Config> integrity_configs() {
  std::vector<Config> out = kSweep;
  out.push_back({2, 2, 3});
  out.push_back({2, 3, 3});
  return out;
}

std::string c8(const Options& opt, Tally& t) {
  int runs = 0;
  for (const Config& c : integrity_configs()) {
    const Ball b = origin_ball(c, opt);
    const ChainComplex full = full_complex(b, false);
    for (const Level& lv : standard_levels(b.field())) {
      const Classification cls = classify(b, lv, opt.threads);
      // Construction asserts d^2 = 0 and the cokernel/direct agreement; both
      // are rechecked here on the returned matrices.
      const ChainComplex un = unstable_complex(b, cls);
      const StableComplex st = stable_complex(b, cls, lv);
      for (const ChainComplex* cx : {&full, &un, &st.complex}) {
        for (int d = 1; d <= cx->top(); ++d)
          t.require((cx->boundary(d - 1) * cx->boundary(d)).is_zero(), [&] { return label(c) + ": d^2 != 0"; });
      }
      for (int d = 0; d <= st.complex.top(); ++d) {
        t.require(st.complex.rank(d) + un.rank(d) == full.rank(d), [&] { return label(c) + ": generator split"; });
      }
      t.require(full.euler() == un.euler() + st.complex.euler(), [&] {
        return label(c) + " level " + lv.f().to_string() + ": chi " + std::to_string(full.euler()) + " != " +
               std::to_string(un.euler()) + " + " + std::to_string(st.complex.euler());
      });
      ++runs;
    }
  }
  return std::to_string(runs) + " (ball, level) pairs: full/unstable/stable complexes";
}

std::string c9(const Options& opt, Tally& t) {
  std::vector<Config> balls = integrity_configs();
  balls.insert(balls.end(), kForest.begin(), kForest.end());
  std::string names;
  for (const Config& c : balls) {
    const Ball b = origin_ball(c, opt);
    const HomologyResult h = homology(full_complex(b, true), opt.threads);
    for (const auto& [d, dh] : h.degrees) {
      t.require(dh.betti == 0 && dh.torsion.empty(), [&] {
        return label(c) + ": reduced H_" + std::to_string(d) + " has rank " + std::to_string(dh.betti);
      });
    }
    names += (names.empty() ? "" : ", ") + label(c);
  }
  return "augmented complexes of " + names;
}

std::string c10(const Options& opt, Tally& t) {
  long long comps = 0, verts = 0;
  for (const Config& c : kForest) {
    const Ball b = origin_ball(c, opt);
    const Field& F = b.field();
    for (const Level& lv : {Level(Poly::t(F)), Level(Poly(F, {1, 1}))}) {
      const Classification cls = classify(b, lv, opt.threads);
      const ComponentReport rep = components(b, cls, lv);
      int total_edges = 0, total_vertices = 0;
      for (const auto& comp : rep.components) {
        t.require(comp.is_tree.value_or(false), [&] {
          return label(c) + " level " + lv.f().to_string() + ": component with " +
                 std::to_string(comp.vertices.size()) + " vertices and " + std::to_string(comp.edges) + " edges";
        });
        t.require(comp.fixed.dim() == 1, [&] {
          return label(c) + " level " + lv.f().to_string() + ": common fixed space of dim " +
                 std::to_string(comp.fixed.dim());
        });
        total_edges += comp.edges;
        total_vertices += static_cast<int>(comp.vertices.size());
      }
      // Whole unstable subgraph: a forest has V - E components.
      t.require(total_vertices - total_edges == static_cast<int>(rep.components.size()),
                [&] { return label(c) + ": unstable subgraph has a cycle"; });
      // Components with a common fixed line never share a vertex.
      std::set<int> seen;
      for (const auto& comp : rep.components)
        for (int v : comp.vertices) t.require(seen.insert(v).second, [&] { return std::string("shared vertex"); });
      comps += static_cast<long long>(rep.components.size());
      verts += total_vertices;
    }
  }
  return std::to_string(comps) + " components, " + std::to_string(verts) +
         " unstable vertices over (r,q)=(2,2),(2,3) N=4, levels t, t+1";
}

std::string c11(const Options& opt, Tally& t) {
  const Config c{2, 2, 2};
  const Ball b = origin_ball(c, opt);
  const Field& F = b.field();
  const Level fine(Poly::monomial(F, 1, 2));
  const Level coarse(Poly::t(F));
  const StableComplex sf = stable_complex(b, classify(b, fine, opt.threads), fine);
  const StableComplex sc = stable_complex(b, classify(b, coarse, opt.threads), coarse);
  const std::vector<IntMatrix> maps = restriction_map(sf, sc);
  long long killed = 0, kept = 0;
  for (int d = 0; d <= sf.complex.top(); ++d) {
    if (d > 0) {
      t.require(sc.complex.boundary(d) * maps[d] == maps[d - 1] * sf.complex.boundary(d),
                [&] { return "map does not commute in degree " + std::to_string(d); });
    }
    for (int j = 0; j < sf.complex.rank(d); ++j) {
      const int i = sc.complex.index_of(d, sf.complex.generators(d)[j]);
      int nonzero = 0;
      for (int row = 0; row < sc.complex.rank(d); ++row) nonzero += maps[d].get(row, j) != 0;
      if (i < 0) {
        t.require(nonzero == 0, [&] { return "coarse-unstable generator not killed"; });
        ++killed;
      } else {
        t.require(nonzero == 1 && maps[d].get(i, j) == 1, [&] { return "coarse-stable generator not kept"; });
        ++kept;
      }
    }
  }
  return label(c) + ": " + std::to_string(kept) + " generators kept, " + std::to_string(killed) + " killed";
}

std::string c12(const Options& opt, Tally& t) {
  for (auto [q, r, want] : {std::tuple{2, 2, 3LL}, {3, 2, 4LL}, {2, 3, 14LL}}) {
    t.require(neighbor_count(q, r) == want, [&] { return "Gaussian binomial sum for q=" + std::to_string(q); });
    const Ball b = origin_ball({q, r, 2}, opt);
    for (int v = 0; v < b.size(); ++v) {
      if (b.depth(v) > 1) continue;
      const auto nb = neighbors(b.vertex(v));
      t.require(static_cast<long long>(nb.size()) == want && static_cast<long long>(b.adjacent(v).size()) == want,
                [&] { return "vertex " + std::to_string(v) + " has " + std::to_string(nb.size()) + " neighbors"; });
    }
  }
  const Ball b = origin_ball({2, 3, 2}, opt);
  long long chambers = 0;
  for (int v = 0; v < b.size(); ++v) {
    if (b.depth(v) > 1) continue;
    long long through = 0;
    for (const Simplex& s : b.simplices(2))
      if (std::count(s.ids.begin(), s.ids.end(), v) > 0) ++through;
    t.require(through == 21, [&] { return "vertex " + std::to_string(v) + " lies on " + std::to_string(through) + " chambers"; });
  }
  for (const Simplex& s : b.simplices(2)) {
    std::set<int> types;
    for (int id : s.ids) types.insert(b.type(id));
    t.require(static_cast<int>(types.size()) == 3, [&] { return "chamber missing a type"; });
    ++chambers;
  }
  return "neighbor counts 3/4/14, 21 chambers per vertex at (r,q)=(3,2), " + std::to_string(chambers) +
         " chambers typed";
}

using Check = std::string (*)(const Options&, Tally&);
const Check kChecks[kCriteria] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
const char* kNames[kCriteria] = {"stabilizer oracle equality",
                                 "p-group law",
                                 "distance equivalence",
                                 "no displacement by one, types preserved",
                                 "vertexwise stabilizers",
                                 "fixed-space properness",
                                 "contraction-map laws",
                                 "complex integrity",
                                 "ball contractibility",
                                 "rank-2 forest",
                                 "restriction chain map",
                                 "enumeration census"};

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > kCriteria) throw UsageError("no acceptance criterion " + std::to_string(id));
  return kNames[id - 1];
}

CheckResult run_criterion(int id, const Options& opt) {
  CheckResult res;
  res.id = id;
  res.name = criterion_name(id);
  const auto start = std::chrono::steady_clock::now();
  Tally t;
  try {
    const std::string counts = kChecks[id - 1](opt, t);
    res.passed = t.ok() && t.checks() > 0;
    res.detail = t.summary(counts);
  } catch (const BudgetError& e) {
    res.budget_exceeded = true;
    res.detail = std::string("budget exceeded: ") + e.what();
  } catch (const std::exception& e) {
    res.detail = std::string("error: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::string format_line(const CheckResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail;
}

}  // namespace btb::verify
