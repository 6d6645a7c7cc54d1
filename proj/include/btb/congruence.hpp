#pragma once

#include <optional>
#include <random>
#include <vector>

#include "btb/building.hpp"
#include "btb/sections.hpp"
#include "btb/smith.hpp"

namespace btb {

/// Principal level I = (f) with f nonzero and nonconstant.
class Level {
 public:
  explicit Level(Poly f);
  const Poly& f() const { return f_; }
  const Field& field() const { return f_.field(); }
  friend bool operator==(const Level& a, const Level& b) { return a.f_ == b.f_; }

 private:
  Poly f_;
};

/// Element of GL_r(A): det is a nonzero constant. `congruence` records that
/// gamma - 1 was checked to be divisible by the level generator.
struct GroupElt {
  PolyMatrix m;
  bool congruence = false;

  /// Throws DomainError unless det m is a nonzero constant.
  static GroupElt make(PolyMatrix m);
  /// Additionally requires m = 1 mod f.
  static GroupElt at_level(PolyMatrix m, const Level& lv);
  static GroupElt identity(const Field& F, int r);

  int rank() const { return m.rows(); }
  bool is_identity() const;
  GroupElt inverse() const;
  friend GroupElt operator*(const GroupElt& a, const GroupElt& b);
  friend bool operator==(const GroupElt& a, const GroupElt& b) { return a.m == b.m; }
  friend bool operator<(const GroupElt& a, const GroupElt& b) { return a.m < b.m; }
};

/// H = Hom_A(P, IP) cap End_R(L_0) cap ... cap End_R(L_d); the stabilizer of
/// the vertex set is exactly 1 + H.
struct StabilizerSpace {
  std::vector<Lattice> vertices;
  Poly f;
  SectionSpace H;
  int dim() const { return H.dim(); }
};

StabilizerSpace stab_space(const std::vector<Lattice>& vertices, const Level& lv);
StabilizerSpace stab_space(const std::vector<LatticeClass>& vertices, const Level& lv);
StabilizerSpace stab_space(const Ball& b, const Simplex& s, const Level& lv);

/// q^dim.
BigInt stab_order(const StabilizerSpace& H);

/// All q^dim elements 1 + h, each re-verified to fix every vertex. Throws
/// BudgetError when dim exceeds `dim_cap`.
std::vector<GroupElt> enumerate_stab(const StabilizerSpace& H, int dim_cap = 12);

/// Exhaustive oracle: every gamma = 1 + f*delta with entry degrees <= deg_bound
/// and det gamma = 1 that maps each vertex lattice to itself. Throws
/// BudgetError when more than `budget` candidates would be tried.
std::vector<GroupElt> brute_stab(const std::vector<Lattice>& vertices, const Level& lv, int deg_bound,
                                 long long budget = 1LL << 22);

bool is_unstable(const std::vector<LatticeClass>& vertices, const Level& lv);

/// Reduced row echelon K-basis (rows) of a subspace of W = K^r.
struct SubspaceK {
  int ambient = 0;
  KMatrix basis;

  static SubspaceK span(const KMatrix& rows, int ambient);
  static SubspaceK whole(const Field& F, int r);
  int dim() const { return basis.rows(); }
  /// Whether the column vector x lies in the subspace.
  bool contains(const KMatrix& x) const;
  friend bool operator==(const SubspaceK& a, const SubspaceK& b) {
    return a.ambient == b.ambient && a.basis == b.basis;
  }
};

SubspaceK intersect(const SubspaceK& a, const SubspaceK& b);

/// Common kernel of all elements of H (the fixed space of 1 + H).
SubspaceK fixed_space(const StabilizerSpace& H);

/// W_1 with a saturated A-basis of P_1 = P cap W_1 and a complement:
/// S in GL_r(A) whose first k columns are an A-basis of P_1. Lattices in W_1
/// and W/W_1 are expressed in the coordinates y = S^{-1} x.
struct SigmaData {
  SubspaceK W1;
  int k = 0;
  PolyMatrix S;
  PolyMatrix S_inv;
  /// Reference lattice in W_1 (rank k, P_1 coordinates).
  Lattice Ltilde;

  /// Throws DomainError unless 0 < dim W1 < r; Ltilde defaults to R^k.
  static SigmaData make(const SubspaceK& W1, std::optional<Lattice> Ltilde = std::nullopt);
  int rank() const { return S.rows(); }
  /// First k columns of S (polynomial basis of P_1), as a K-matrix.
  KMatrix p1_basis() const;
};

/// {h in H_s : h W_1 = 0}.
StabilizerSpace kill_space(const std::vector<Lattice>& vertices, const SigmaData& sd, const Level& lv);
bool in_b_sigma(const std::vector<Lattice>& vertices, const SigmaData& sd, const Level& lv);
bool in_b_sigma(const std::vector<LatticeClass>& vertices, const SigmaData& sd, const Level& lv);

/// min{m : hom_sections(L', Ltilde, f, m) != 0} + 1 for a lattice L' of rank
/// r - k in W/W_1.
int epsilon(const Lattice& Lq, const SigmaData& sd, const Level& lv);
/// S * (varpi^{-epsilon} Ltilde (+) L').
Lattice beta(const Lattice& Lq, const SigmaData& sd, const Level& lv);
/// Projection of L to W/W_1 along the splitting.
Lattice alpha(const Lattice& L, const SigmaData& sd);
/// epsilon(alpha(L)).
int epsilon_hat(const Lattice& L, const SigmaData& sd, const Level& lv);
/// Largest n with varpi^{-n - epsilon_hat} Ltilde inside L.
int absorption_threshold(const Lattice& L, const SigmaData& sd, const Level& lv);
/// L + varpi^{-n - epsilon_hat(L)} Ltilde. Throws DomainError unless L lies
/// in B(W)_sigma.
Lattice g_map(const Lattice& L, int n, const SigmaData& sd, const Level& lv);

/// Whether every element of `sub` lies in `sup` (same shape).
bool space_contains(const SectionSpace& sup, const SectionSpace& sub);

/// gamma L_i for each vertex, canonicalized and sorted by type.
std::vector<LatticeClass> apply(const GroupElt& g, const std::vector<LatticeClass>& s);

struct OrbitWitness {
  GroupElt gamma;
  int deg_bound = 0;
  int solution_dim = 0;
};

/// A level element with entry degrees <= deg_bound mapping s1 onto s2
/// (type-respecting), or nullopt if none exists at this bound. Throws
/// BudgetError when the affine solution space exceeds `solution_cap` points.
std::optional<OrbitWitness> orbit_witness(const std::vector<LatticeClass>& s1, const std::vector<LatticeClass>& s2,
                                          const Level& lv, int deg_bound, long long solution_cap = 1LL << 20);

/// Nontrivial level element: a product of `factors` elementary matrices
/// 1 + f a E_ij with deg a <= max_deg.
GroupElt random_level_element(const Level& lv, int r, std::mt19937& rng, int factors = 3, int max_deg = 1);

/// Stabilizer spaces of every simplex of a ball, computed on `threads`
/// workers. Results do not depend on the thread count.
struct Classification {
  std::vector<std::vector<StabilizerSpace>> spaces;  // [dim][index in Ball::simplices(dim)]
  bool unstable(int d, int i) const { return spaces[d][i].dim() > 0; }
};
Classification classify(const Ball& b, const Level& lv, int threads = 1);

}  // namespace btb
