#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "btb/congruence.hpp"
#include "btb/smith.hpp"

namespace btb {

/// Free Z-modules C_d on simplex generators with boundary matrices
/// boundary[d] : C_d -> C_{d-1}. boundary[0] is the augmentation row
/// (1 x n_0) when augmented and a 0 x n_0 matrix otherwise.
class ChainComplex {
 public:
  /// Throws AssertionFailure unless every composite boundary vanishes.
  ChainComplex(std::vector<std::vector<Simplex>> gens, std::vector<IntMatrix> boundary, bool augmented);

  int top() const { return static_cast<int>(gens_.size()) - 1; }
  int rank(int d) const { return d >= 0 && d <= top() ? static_cast<int>(gens_[d].size()) : 0; }
  const std::vector<Simplex>& generators(int d) const { return gens_.at(d); }
  const IntMatrix& boundary(int d) const { return boundary_.at(d); }
  bool augmented() const { return augmented_; }
  /// Alternating sum of chain ranks (including the degree -1 copy of Z when
  /// augmented).
  long long euler() const;
  /// Index of a generator in degree d, or -1.
  int index_of(int d, const Simplex& s) const;

 private:
  std::vector<std::vector<Simplex>> gens_;
  std::vector<IntMatrix> boundary_;
  bool augmented_;
};

/// Simplicial chains of every simplex of the ball, with
/// d[x_0..x_i] = sum_j (-1)^j [x_0..^x_j..x_i] on type-sorted vertices.
ChainComplex full_complex(const Ball& b, bool augmented);

/// Subcomplex on the simplices with nontrivial stabilizer. Throws
/// AssertionFailure if that set is not closed under faces.
ChainComplex unstable_complex(const Ball& b, const Classification& cls);

struct StableComplex {
  ChainComplex complex;
  Poly f;
  int radius = 0;
};

/// Quotient of the full complex by the unstable subcomplex. Built as the
/// cokernel projection and again directly (unstable faces dropped); the two
/// boundary matrices must coincide.
StableComplex stable_complex(const Ball& b, const Classification& cls, const Level& lv);

struct DegreeHomology {
  long long betti = 0;
  std::vector<BigInt> torsion;
};

struct HomologyResult {
  std::map<int, DegreeHomology> degrees;  // includes -1 when augmented
  std::map<int, long long> chain_ranks;
  long long euler = 0;
  bool augmented = false;
  int radius = -1;
  std::string level;  // generator of the level, empty if none
};

/// Betti numbers and torsion via Smith normal form, one degree per worker.
/// Throws AssertionFailure if the Euler characteristics disagree.
HomologyResult homology(const ChainComplex& c, int threads = 1);

struct Component {
  std::vector<int> vertices;                  // ball ids, ascending
  std::vector<std::vector<Simplex>> simplices;  // unstable simplices per dimension
  SubspaceK fixed;                            // intersection of fixed spaces
  bool touches_boundary = false;              // some vertex at the ball radius
  int edges = 0;
  std::optional<bool> is_tree;                // rank 2 only
};

struct ComponentReport {
  std::vector<Component> components;
  int radius = 0;
  std::string level;
};

/// Connected components of the unstable 1-skeleton.
ComponentReport components(const Ball& b, const Classification& cls, const Level& lv);

/// Per-degree matrices of the chain map from the fine stable complex to the
/// coarse one: a generator goes to itself when coarse-stable and to 0
/// otherwise. Throws DomainError unless the coarse generator divides the fine
/// one, and AssertionFailure if the map does not commute with boundaries.
std::vector<IntMatrix> restriction_map(const StableComplex& fine, const StableComplex& coarse);

}  // namespace btb
