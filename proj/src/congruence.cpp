#include "btb/congruence.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace btb {

namespace {

// Fraction-free (Bareiss) determinant over A.
Poly det_a(PolyMatrix a) {
  const Field& F = a.zero().field();
  const int n = a.rows();
  if (n == 0) return Poly::constant(F, 1);
  Poly prev = Poly::constant(F, 1);
  bool negate = false;
  for (int k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      int s = k + 1;
      while (s < n && a(s, k).is_zero()) ++s;
      if (s == n) return Poly(F);
      a.swap_rows(k, s);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

bool integral(const KMatrix& m) {
  for (const auto& x : m.data()) {
    if (x.valuation() < 0) return false;
  }
  return true;
}

PolyMatrix to_poly(const KMatrix& m) {
  PolyMatrix out = poly_zero(m.zero().field(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_polynomial()) throw AssertionFailure("expected a polynomial matrix");
      out(i, j) = m(i, j).num();
    }
  return out;
}

std::vector<Lattice> reps(const std::vector<LatticeClass>& vs) {
  std::vector<Lattice> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.rep());
  return out;
}

SectionProblem stab_problem(const std::vector<Lattice>& vs, const Level& lv) {
  if (vs.empty()) throw DomainError("stabilizer of an empty vertex set");
  const int r = vs.front().rank();
  SectionProblem pb(lv.field());
  pb.rows = r;
  pb.cols = r;
  pb.prefactor = lv.f();
  for (const auto& L : vs) {
    if (L.rank() != r) throw DimensionError("simplex vertices of different rank");
    const std::vector<int> b = hom_degree_bounds(L, L, 0);
    if (pb.degree_bounds.empty()) {
      pb.degree_bounds = b;
    } else {
      for (std::size_t e = 0; e < b.size(); ++e) pb.degree_bounds[e] = std::min(pb.degree_bounds[e], b[e]);
    }
    pb.constraints.push_back(hom_constraint(L, L, 0));
  }
  pb.bound_formula = "deg(h_kl) <= min over vertices of max_{i,j}(-v(B_ki) - v(B^-1_jl))";
  return pb;
}

// Mixed-radix counter over F_q^n; returns false after the last vector.
bool next_vector(std::vector<FieldElem>& c, int q) {
  std::size_t k = 0;
  while (k < c.size() && ++c[k] == static_cast<FieldElem>(q)) c[k++] = 0;
  return k < c.size();
}

long long checked_pow(long long q, long long e, long long cap) {
  long long v = 1;
  for (long long i = 0; i < e; ++i) {
    if (v > cap / q) return cap + 1;
    v *= q;
  }
  return v;
}

PolyMatrix combination(const Field& F, const std::vector<PolyMatrix>& basis, const std::vector<FieldElem>& c, int r,
                       int s) {
  PolyMatrix h = poly_zero(F, r, s);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (c[k] == 0) continue;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < s; ++j) {
        if (!basis[k](i, j).is_zero()) h(i, j) += basis[k](i, j).scaled(c[k]);
      }
  }
  return h;
}

int max_entry_degree(const SectionSpace& s) {
  int d = 0;
  for (const auto& b : s.basis)
    for (const auto& x : b.data()) d = std::max(d, x.degree());
  return d;
}

}  // namespace

Level::Level(Poly f) : f_(std::move(f)) {
  if (f_.is_zero() || f_.is_constant()) throw DomainError("level generator must be nonzero and nonconstant");
}

GroupElt GroupElt::make(PolyMatrix m) {
  if (m.rows() != m.cols()) throw DimensionError("group element must be square");
  const Poly d = det_a(m);
  if (d.is_zero() || !d.is_constant()) throw DomainError("determinant is not a unit of A");
  return GroupElt{std::move(m), false};
}

GroupElt GroupElt::at_level(PolyMatrix m, const Level& lv) {
  GroupElt g = make(std::move(m));
  const Field& F = lv.field();
  for (int i = 0; i < g.rank(); ++i)
    for (int j = 0; j < g.rank(); ++j) {
      Poly x = g.m(i, j);
      if (i == j) x -= Poly::constant(F, 1);
      if (!lv.f().divides(x)) throw DomainError("matrix is not congruent to 1 modulo the level");
    }
  g.congruence = true;
  return g;
}

GroupElt GroupElt::identity(const Field& F, int r) { return GroupElt{poly_identity(F, r), true}; }

bool GroupElt::is_identity() const { return m == poly_identity(m.zero().field(), rank()); }

GroupElt GroupElt::inverse() const { return GroupElt{to_poly(k_inverse(to_k(m))), congruence}; }

GroupElt operator*(const GroupElt& a, const GroupElt& b) {
  return GroupElt{a.m * b.m, a.congruence && b.congruence};
}

StabilizerSpace stab_space(const std::vector<Lattice>& vertices, const Level& lv) {
  return StabilizerSpace{vertices, lv.f(), solve_sections(stab_problem(vertices, lv))};
}

StabilizerSpace stab_space(const std::vector<LatticeClass>& vertices, const Level& lv) {
  return stab_space(reps(vertices), lv);
}

StabilizerSpace stab_space(const Ball& b, const Simplex& s, const Level& lv) { return stab_space(b.classes(s), lv); }

BigInt stab_order(const StabilizerSpace& H) {
  BigInt v = 1;
  for (int i = 0; i < H.dim(); ++i) v *= H.f.field().q();
  return v;
}

std::vector<GroupElt> enumerate_stab(const StabilizerSpace& H, int dim_cap) {
  if (H.dim() > dim_cap) {
    throw BudgetError("stabilizer dimension " + std::to_string(H.dim()) + " exceeds the enumeration cap " +
                      std::to_string(dim_cap));
  }
  const Field& F = H.f.field();
  const int r = H.H.rows;
  const PolyMatrix one = poly_identity(F, r);
  std::vector<std::pair<KMatrix, KMatrix>> checks;
  for (const auto& L : H.vertices) checks.emplace_back(k_inverse(L.basis()), L.basis());
  std::vector<GroupElt> out;
  std::vector<FieldElem> c(H.dim(), 0);
  do {
    PolyMatrix g = one + combination(F, H.H.basis, c, r, r);
    const KMatrix gk = to_k(g);
    for (const auto& [Binv, B] : checks) {
      if (!integral(Binv * gk * B)) throw AssertionFailure("stabilizer element does not fix a vertex");
    }
    out.push_back(GroupElt{std::move(g), true});
  } while (next_vector(c, F.q()));
  return out;
}

std::vector<GroupElt> brute_stab(const std::vector<Lattice>& vertices, const Level& lv, int deg_bound,
                                 long long budget) {
  const Field& F = lv.field();
  const int r = vertices.front().rank();
  const PolyMatrix one = poly_identity(F, r);
  const int free_deg = deg_bound - lv.f().degree();
  if (free_deg < 0) return {GroupElt::identity(F, r)};
  const long long slots = static_cast<long long>(free_deg + 1) * r * r;
  if (checked_pow(F.q(), slots, budget) > budget) {
    throw BudgetError("exhaustive stabilizer search exceeds the budget of " + std::to_string(budget));
  }
  std::vector<std::pair<KMatrix, KMatrix>> checks;
  for (const auto& L : vertices) checks.emplace_back(k_inverse(L.basis()), L.basis());
  std::vector<GroupElt> out;
  std::vector<FieldElem> c(static_cast<std::size_t>(slots), 0);
  do {
    PolyMatrix g = one;
    for (int e = 0; e < r * r; ++e) {
      std::vector<FieldElem> coeffs(c.begin() + static_cast<std::ptrdiff_t>(e) * (free_deg + 1),
                                    c.begin() + static_cast<std::ptrdiff_t>(e + 1) * (free_deg + 1));
      const Poly d(F, std::move(coeffs));
      if (!d.is_zero()) g(e / r, e % r) += lv.f() * d;
    }
    if (!det_a(g).is_one()) continue;
    const KMatrix gk = to_k(g);
    bool fixes = true;
    for (const auto& [Binv, B] : checks) {
      if (!integral(Binv * gk * B)) {
        fixes = false;
        break;
      }
    }
    if (fixes) out.push_back(GroupElt{std::move(g), true});
  } while (next_vector(c, F.q()));
  return out;
}

bool is_unstable(const std::vector<LatticeClass>& vertices, const Level& lv) {
  return stab_space(vertices, lv).dim() > 0;
}

SubspaceK SubspaceK::span(const KMatrix& rows, int ambient) {
  if (rows.cols() != ambient) throw DimensionError("subspace vectors of the wrong length");
  return SubspaceK{ambient, k_rref(rows)};
}

SubspaceK SubspaceK::whole(const Field& F, int r) { return SubspaceK{r, k_identity(F, r)}; }

bool SubspaceK::contains(const KMatrix& x) const {
  if (x.rows() != ambient || x.cols() != 1) throw DimensionError("vector of the wrong shape");
  KMatrix m = k_zero(x.zero().field(), dim() + 1, ambient);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < ambient; ++j) m(i, j) = basis(i, j);
  for (int j = 0; j < ambient; ++j) m(dim(), j) = x(j, 0);
  return k_rank(m) == dim();
}

namespace {

KMatrix stack_rows(const KMatrix& a, const KMatrix& b) {
  KMatrix m = k_zero(a.zero().field(), a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

}  // namespace

SubspaceK intersect(const SubspaceK& a, const SubspaceK& b) {
  if (a.ambient != b.ambient) throw DimensionError("intersection of subspaces of different ambient spaces");
  // a cap b = annihilator of (ann a + ann b).
  const KMatrix ann = stack_rows(k_kernel(a.basis), k_kernel(b.basis));
  return SubspaceK{a.ambient, k_kernel(ann)};
}

SubspaceK fixed_space(const StabilizerSpace& H) {
  const Field& F = H.f.field();
  const int r = H.H.rows;
  KMatrix stacked = k_zero(F, r * H.dim(), r);
  for (int k = 0; k < H.dim(); ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) stacked(k * r + i, j) = RatK(H.H.basis[k](i, j));
  return SubspaceK{r, k_kernel(stacked)};
}

SigmaData SigmaData::make(const SubspaceK& W1, std::optional<Lattice> Ltilde) {
  const int r = W1.ambient;
  const int k = W1.dim();
  if (k <= 0 || k >= r) throw DomainError("W_1 must be a proper nonzero subspace");
  const Field& F = W1.basis.zero().field();
  // Polynomial rows cutting out W_1.
  const KMatrix ann = k_kernel(W1.basis);
  const int m = ann.rows();
  PolyMatrix N = poly_zero(F, m, r);
  for (int i = 0; i < m; ++i) {
    Poly l = Poly::constant(F, 1);
    for (int j = 0; j < r; ++j) {
      if (!ann(i, j).is_zero()) l = l * (ann(i, j).den() / Poly::gcd(l, ann(i, j).den()));
    }
    for (int j = 0; j < r; ++j) {
      if (ann(i, j).is_zero()) continue;
      const RatK x = ann(i, j) * RatK(l);
      N(i, j) = x.num();
    }
  }
  // Column reduction N V = [0 | H] with V in GL_r(A); the kernel of N on A^r
  // is then spanned by the first k columns of V.
  PolyMatrix V = poly_identity(F, r);
  auto col_sub = [&](int dst, const Poly& c, int src) {
    for (int i = 0; i < m; ++i)
      if (!N(i, src).is_zero()) N(i, dst) -= c * N(i, src);
    for (int i = 0; i < r; ++i)
      if (!V(i, src).is_zero()) V(i, dst) -= c * V(i, src);
  };
  for (int i = m - 1; i >= 0; --i) {
    const int c = k + i;
    for (;;) {
      int piv = -1;
      for (int j = 0; j <= c; ++j) {
        if (N(i, j).is_zero()) continue;
        if (piv < 0 || N(i, j).degree() < N(i, piv).degree()) piv = j;
      }
      if (piv < 0) throw AssertionFailure("annihilator of W_1 is rank deficient");
      N.swap_cols(piv, c);
      V.swap_cols(piv, c);
      bool done = true;
      for (int j = 0; j < c; ++j) {
        if (N(i, j).is_zero()) continue;
        col_sub(j, N(i, j) / N(i, c), c);
        if (!N(i, j).is_zero()) done = false;
      }
      if (done) break;
    }
  }
  const Poly d = det_a(V);
  if (d.is_zero() || !d.is_constant()) throw AssertionFailure("splitting matrix is not invertible over A");
  PolyMatrix Vinv = to_poly(k_inverse(to_k(V)));
  Lattice Lt = Ltilde ? *Ltilde : Lattice::standard(F, k);
  if (Lt.rank() != k) throw DimensionError("reference lattice must have rank dim W_1");
  SigmaData sd{W1, k, std::move(V), std::move(Vinv), std::move(Lt)};
  const KMatrix P1 = sd.p1_basis();
  for (int j = 0; j < k; ++j) {
    if (!W1.contains(P1.col_block(j, 1))) throw AssertionFailure("P_1 basis vector outside W_1");
  }
  return sd;
}

KMatrix SigmaData::p1_basis() const { return to_k(S).col_block(0, k); }

StabilizerSpace kill_space(const std::vector<Lattice>& vertices, const SigmaData& sd, const Level& lv) {
  SectionProblem pb = stab_problem(vertices, lv);
  const Field& F = lv.field();
  pb.constraints.push_back({k_identity(F, sd.rank()), sd.p1_basis(), 1});
  return StabilizerSpace{vertices, lv.f(), solve_sections(pb)};
}

bool in_b_sigma(const std::vector<Lattice>& vertices, const SigmaData& sd, const Level& lv) {
  return kill_space(vertices, sd, lv).dim() > 0;
}

bool in_b_sigma(const std::vector<LatticeClass>& vertices, const SigmaData& sd, const Level& lv) {
  return in_b_sigma(reps(vertices), sd, lv);
}

int epsilon(const Lattice& Lq, const SigmaData& sd, const Level& lv) {
  if (Lq.rank() != sd.rank() - sd.k) throw DimensionError("quotient lattice must have rank r - dim W_1");
  const std::vector<int> b0 = hom_degree_bounds(Lq, sd.Ltilde, 0);
  const int m_lo = lv.f().degree() - *std::max_element(b0.begin(), b0.end());
  for (int m = m_lo; m < m_lo + 10000; ++m) {
    if (hom_sections(Lq, sd.Ltilde, lv.f(), m).dim() > 0) return m + 1;
  }
  throw AssertionFailure("twist search for epsilon did not terminate");
}

Lattice beta(const Lattice& Lq, const SigmaData& sd, const Level& lv) {
  const int e = epsilon(Lq, sd, lv);
  const Field& F = lv.field();
  const int r = sd.rank();
  const int k = sd.k;
  KMatrix blk = k_zero(F, r, r);
  const RatK s = RatK::varpi_pow(F, -e);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) blk(i, j) = sd.Ltilde.basis()(i, j) * s;
  for (int i = 0; i < r - k; ++i)
    for (int j = 0; j < r - k; ++j) blk(k + i, k + j) = Lq.basis()(i, j);
  return Lattice::from_generators(to_k(sd.S) * blk);
}

Lattice alpha(const Lattice& L, const SigmaData& sd) {
  const KMatrix Y = to_k(sd.S_inv) * L.basis();
  return Lattice::from_generators(Y.row_block(sd.k, sd.rank() - sd.k));
}

int epsilon_hat(const Lattice& L, const SigmaData& sd, const Level& lv) { return epsilon(alpha(L, sd), sd, lv); }

int absorption_threshold(const Lattice& L, const SigmaData& sd, const Level& lv) {
  const KMatrix X = k_inverse(L.basis()) * sd.p1_basis() * sd.Ltilde.basis();
  int vmin = kInfValuation;
  for (const auto& x : X.data()) vmin = std::min(vmin, x.valuation());
  return vmin - epsilon_hat(L, sd, lv);
}

Lattice g_map(const Lattice& L, int n, const SigmaData& sd, const Level& lv) {
  if (!in_b_sigma(std::vector<Lattice>{L}, sd, lv)) throw DomainError("g_map input is not in B(W)_sigma");
  if (n <= absorption_threshold(L, sd, lv)) return L;
  const Field& F = lv.field();
  const int r = sd.rank();
  const int k = sd.k;
  const KMatrix extra = sd.p1_basis() * sd.Ltilde.basis();
  const RatK s = RatK::varpi_pow(F, -n - epsilon_hat(L, sd, lv));
  KMatrix G = k_zero(F, r, r + k);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) G(i, j) = L.basis()(i, j);
    for (int j = 0; j < k; ++j) G(i, r + j) = extra(i, j) * s;
  }
  return Lattice::from_generators(G);
}

bool space_contains(const SectionSpace& sup, const SectionSpace& sub) {
  if (sup.rows != sub.rows || sup.cols != sub.cols) throw DimensionError("section spaces of different shape");
  if (sub.dim() == 0) return true;
  if (sup.dim() == 0) return false;
  const Field& F = sub.basis.front().zero().field();
  const int d = std::max(max_entry_degree(sup), max_entry_degree(sub));
  return rowspace_contains(sup.coordinates(F, d), sub.coordinates(F, d));
}

std::vector<LatticeClass> apply(const GroupElt& g, const std::vector<LatticeClass>& s) {
  std::vector<LatticeClass> out;
  const KMatrix gk = to_k(g.m);
  for (const auto& v : s) out.emplace_back(v.rep().transformed(gk));
  std::stable_sort(out.begin(), out.end(),
                   [](const LatticeClass& a, const LatticeClass& b) { return vertex_type(a) < vertex_type(b); });
  return out;
}

std::optional<OrbitWitness> orbit_witness(const std::vector<LatticeClass>& s1, const std::vector<LatticeClass>& s2,
                                          const Level& lv, int deg_bound, long long solution_cap) {
  if (s1.size() != s2.size() || s1.empty()) return std::nullopt;
  auto by_type = [](std::vector<LatticeClass> s) {
    std::stable_sort(s.begin(), s.end(),
                     [](const LatticeClass& a, const LatticeClass& b) { return vertex_type(a) < vertex_type(b); });
    return s;
  };
  const std::vector<LatticeClass> a = by_type(s1), b = by_type(s2);
  const int r = a.front().rank();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (vertex_type(a[i]) != vertex_type(b[i])) return std::nullopt;
  }
  const Field& F = lv.field();
  SectionProblem pb(F);
  pb.rows = r;
  pb.cols = r;
  pb.prefactor = lv.f();
  pb.degree_bounds.assign(static_cast<std::size_t>(r) * r, deg_bound);
  pb.offset = k_identity(F, r);
  pb.bound_formula = "deg(gamma_kl) <= " + std::to_string(deg_bound);
  for (std::size_t i = 0; i < a.size(); ++i) {
    // gamma has det 1, so gamma L = M' iff gamma L is inside the representative
    // M' of <M> with the same determinant valuation.
    const int shift = (a[i].rep().det_valuation() - b[i].rep().det_valuation()) / r;
    const Lattice target = b[i].rep().scaled(shift);
    pb.constraints.push_back({k_inverse(target.basis()), a[i].rep().basis(), 0});
  }
  const auto sol = solve_affine_sections(pb);
  if (!sol) return std::nullopt;
  const int dim = sol->directions.dim();
  if (checked_pow(F.q(), dim, solution_cap) > solution_cap) {
    throw BudgetError("orbit search solution space of dimension " + std::to_string(dim) + " exceeds the cap");
  }
  const PolyMatrix base = poly_identity(F, r) + sol->particular;
  std::vector<FieldElem> c(dim, 0);
  do {
    PolyMatrix g = base + combination(F, sol->directions.basis, c, r, r);
    if (!det_a(g).is_one()) continue;
    GroupElt ge = GroupElt::at_level(std::move(g), lv);
    if (btb::apply(ge, a) != b) throw AssertionFailure("orbit witness does not map the simplex");
    return OrbitWitness{std::move(ge), deg_bound, dim};
  } while (next_vector(c, F.q()));
  return std::nullopt;
}

GroupElt random_level_element(const Level& lv, int r, std::mt19937& rng, int factors, int max_deg) {
  const Field& F = lv.field();
  std::uniform_int_distribution<int> idx(0, r - 1);
  std::uniform_int_distribution<FieldElem> el(0, F.q() - 1);
  for (;;) {
    PolyMatrix g = poly_identity(F, r);
    for (int s = 0; s < factors; ++s) {
      const int i = idx(rng);
      int j = idx(rng);
      while (j == i) j = idx(rng);
      std::vector<FieldElem> c(max_deg + 1);
      for (auto& x : c) x = el(rng);
      const Poly a(F, c);
      if (a.is_zero()) continue;
      PolyMatrix e = poly_identity(F, r);
      e(i, j) = lv.f() * a;
      g = g * e;
    }
    if (g != poly_identity(F, r)) return GroupElt::at_level(std::move(g), lv);
  }
}

Classification classify(const Ball& b, const Level& lv, int threads) {
  std::vector<std::pair<int, int>> jobs;
  for (int d = 0; d <= b.max_dim(); ++d)
    for (int i = 0; i < static_cast<int>(b.simplices(d).size()); ++i) jobs.emplace_back(d, i);
  std::vector<std::optional<StabilizerSpace>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size() || failed) return;
      try {
        results[j] = stab_space(b, b.simplices(jobs[j].first)[jobs[j].second], lv);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const int n = std::max(1, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  Classification out;
  out.spaces.resize(b.max_dim() + 1);
  for (std::size_t j = 0; j < jobs.size(); ++j) out.spaces[jobs[j].first].push_back(std::move(*results[j]));
  return out;
}

}  // namespace btb
