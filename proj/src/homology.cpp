#include "btb/homology.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace btb {

ChainComplex::ChainComplex(std::vector<std::vector<Simplex>> gens, std::vector<IntMatrix> boundary, bool augmented)
    : gens_(std::move(gens)), boundary_(std::move(boundary)), augmented_(augmented) {
  if (boundary_.size() != gens_.size()) throw DimensionError("one boundary matrix per degree is required");
  for (int d = 0; d <= top(); ++d) {
    const IntMatrix& m = boundary_[d];
    if (m.cols() != rank(d) || m.rows() != (d == 0 ? (augmented_ ? 1 : 0) : rank(d - 1))) {
      throw DimensionError("boundary matrix in degree " + std::to_string(d) + " has the wrong shape");
    }
  }
  for (int d = 1; d <= top(); ++d) {
    if (!(boundary_[d - 1] * boundary_[d]).is_zero()) {
      throw AssertionFailure("boundary squared is nonzero in degree " + std::to_string(d));
    }
  }
}

long long ChainComplex::euler() const {
  long long chi = augmented_ ? -1 : 0;
  for (int d = 0; d <= top(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(rank(d));
  return chi;
}

int ChainComplex::index_of(int d, const Simplex& s) const {
  if (d < 0 || d > top()) return -1;
  const auto& g = gens_[d];
  auto it = std::lower_bound(g.begin(), g.end(), s);
  return it != g.end() && *it == s ? static_cast<int>(it - g.begin()) : -1;
}

namespace {

Simplex drop(const Simplex& s, std::size_t j) {
  Simplex f = s;
  f.ids.erase(f.ids.begin() + static_cast<std::ptrdiff_t>(j));
  return f;
}

// Boundary of the generators `cols` against the face list `rows` (both
// sorted); faces missing from `rows` are skipped when `skip_missing`.
IntMatrix boundary_matrix(const std::vector<Simplex>& rows, const std::vector<Simplex>& cols, bool skip_missing) {
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t j = 0; j < cols[c].ids.size(); ++j) {
      const Simplex f = drop(cols[c], j);
      auto it = std::lower_bound(rows.begin(), rows.end(), f);
      if (it == rows.end() || !(*it == f)) {
        if (skip_missing) continue;
        throw AssertionFailure("face of a generator is missing from the complex");
      }
      m.add(static_cast<int>(it - rows.begin()), static_cast<int>(c), j % 2 == 0 ? 1 : -1);
    }
  }
  return m;
}

IntMatrix augmentation(int n0, bool augmented) {
  IntMatrix m(augmented ? 1 : 0, n0);
  if (augmented)
    for (int j = 0; j < n0; ++j) m.set(0, j, 1);
  return m;
}

ChainComplex complex_on(const std::vector<std::vector<Simplex>>& gens, bool augmented) {
  std::vector<IntMatrix> bd;
  for (std::size_t d = 0; d < gens.size(); ++d) {
    if (d == 0) {
      bd.push_back(augmentation(static_cast<int>(gens[0].size()), augmented));
    } else {
      bd.push_back(boundary_matrix(gens[d - 1], gens[d], false));
    }
  }
  return ChainComplex(gens, std::move(bd), augmented);
}

std::string level_string(const Poly& f) { return f.to_string(); }

}  // namespace

ChainComplex full_complex(const Ball& b, bool augmented) {
  std::vector<std::vector<Simplex>> gens;
  for (int d = 0; d <= b.max_dim(); ++d) gens.push_back(b.simplices(d));
  return complex_on(gens, augmented);
}

ChainComplex unstable_complex(const Ball& b, const Classification& cls) {
  std::vector<std::vector<Simplex>> gens(b.max_dim() + 1);
  for (int d = 0; d <= b.max_dim(); ++d) {
    const auto& all = b.simplices(d);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (cls.unstable(d, static_cast<int>(i))) gens[d].push_back(all[i]);
  }
  // Faces of unstable simplices are unstable: complex_on throws otherwise.
  return complex_on(gens, false);
}

StableComplex stable_complex(const Ball& b, const Classification& cls, const Level& lv) {
  const int top = b.max_dim();
  std::vector<std::vector<Simplex>> gens(top + 1);
  std::vector<std::vector<int>> positions(top + 1);  // index in the full complex
  for (int d = 0; d <= top; ++d) {
    const auto& all = b.simplices(d);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (!cls.unstable(d, static_cast<int>(i))) {
        gens[d].push_back(all[i]);
        positions[d].push_back(static_cast<int>(i));
      }
  }
  // (a) cokernel presentation: pi * d_full * iota.
  const ChainComplex full = full_complex(b, false);
  std::vector<IntMatrix> coker;
  for (int d = 0; d <= top; ++d) {
    if (d == 0) {
      coker.push_back(augmentation(static_cast<int>(gens[0].size()), false));
      continue;
    }
    IntMatrix pi(static_cast<int>(gens[d - 1].size()), full.rank(d - 1));
    for (std::size_t k = 0; k < positions[d - 1].size(); ++k) pi.set(static_cast<int>(k), positions[d - 1][k], 1);
    IntMatrix iota(full.rank(d), static_cast<int>(gens[d].size()));
    for (std::size_t k = 0; k < positions[d].size(); ++k) iota.set(positions[d][k], static_cast<int>(k), 1);
    coker.push_back(pi * full.boundary(d) * iota);
  }
  // (b) direct construction: faces that are unstable carry the zero symbol.
  std::vector<IntMatrix> direct;
  for (int d = 0; d <= top; ++d) {
    direct.push_back(d == 0 ? augmentation(static_cast<int>(gens[0].size()), false)
                            : boundary_matrix(gens[d - 1], gens[d], true));
  }
  for (int d = 0; d <= top; ++d) {
    if (!(coker[d] == direct[d])) {
      throw AssertionFailure("cokernel and direct stable complexes differ in degree " + std::to_string(d));
    }
  }
  return StableComplex{ChainComplex(std::move(gens), std::move(direct), false), lv.f(), b.radius()};
}

HomologyResult homology(const ChainComplex& c, int threads) {
  const int top = c.top();
  std::vector<SnfResult> snfs(top + 1);
  std::exception_ptr error;
  std::mutex mu;
  auto job = [&](int d) {
    try {
      snfs[d] = snf(c.boundary(d));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  };
  if (threads <= 1) {
    for (int d = 0; d <= top; ++d) job(d);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int d = next++; d <= top; d = next++) job(d);
      });
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  HomologyResult out;
  out.augmented = c.augmented();
  auto rank_of = [&](int d) { return d >= 0 && d <= top ? snfs[d].rank : 0; };
  const int lo = c.augmented() ? -1 : 0;
  for (int d = lo; d <= top; ++d) {
    const long long n = d < 0 ? 1 : c.rank(d);
    DegreeHomology h;
    h.betti = n - (d < 0 ? 0 : rank_of(d)) - rank_of(d + 1);
    if (d + 1 <= top) h.torsion = snfs[d + 1].torsion;
    out.degrees[d] = h;
    out.chain_ranks[d] = n;
  }
  long long chi = 0;
  for (const auto& [d, h] : out.degrees) chi += (d % 2 == 0 ? 1 : -1) * h.betti;
  if (chi != c.euler()) throw AssertionFailure("Euler characteristic of homology disagrees with chain ranks");
  out.euler = chi;
  return out;
}

ComponentReport components(const Ball& b, const Classification& cls, const Level& lv) {
  const int n = b.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  std::vector<bool> unstable_vertex(n, false);
  for (int v = 0; v < n; ++v) unstable_vertex[v] = cls.unstable(0, v);
  const auto& edges = b.simplices(1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!cls.unstable(1, static_cast<int>(e))) continue;
    parent[root(edges[e].ids[0])] = root(edges[e].ids[1]);
  }
  std::map<int, int> comp_of_root;
  ComponentReport rep;
  rep.radius = b.radius();
  rep.level = level_string(lv.f());
  const Field& F = lv.field();
  for (int v = 0; v < n; ++v) {
    if (!unstable_vertex[v]) continue;
    auto [it, fresh] = comp_of_root.emplace(root(v), static_cast<int>(rep.components.size()));
    if (fresh) {
      Component c{{}, std::vector<std::vector<Simplex>>(b.max_dim() + 1), SubspaceK::whole(F, b.rank()), false, 0,
                  std::nullopt};
      rep.components.push_back(std::move(c));
    }
    Component& c = rep.components[it->second];
    c.vertices.push_back(v);
    if (b.depth(v) >= b.radius()) c.touches_boundary = true;
  }
  for (int d = 0; d <= b.max_dim(); ++d) {
    const auto& all = b.simplices(d);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!cls.unstable(d, static_cast<int>(i))) continue;
      Component& c = rep.components[comp_of_root.at(root(all[i].ids[0]))];
      c.simplices[d].push_back(all[i]);
      c.fixed = intersect(c.fixed, fixed_space(cls.spaces[d][i]));
    }
  }
  for (auto& c : rep.components) {
    c.edges = b.max_dim() >= 1 ? static_cast<int>(c.simplices[1].size()) : 0;
    if (b.rank() == 2) c.is_tree = c.edges == static_cast<int>(c.vertices.size()) - 1;
  }
  return rep;
}

std::vector<IntMatrix> restriction_map(const StableComplex& fine, const StableComplex& coarse) {
  if (!coarse.f.divides(fine.f)) throw DomainError("fine level is not contained in the coarse level");
  const ChainComplex& F = fine.complex;
  const ChainComplex& C = coarse.complex;
  if (F.top() != C.top()) throw DimensionError("stable complexes of different dimension");
  std::vector<IntMatrix> maps;
  for (int d = 0; d <= F.top(); ++d) {
    IntMatrix m(C.rank(d), F.rank(d));
    for (int j = 0; j < F.rank(d); ++j) {
      const int i = C.index_of(d, F.generators(d)[j]);
      if (i >= 0) m.set(i, j, 1);
    }
    // Every coarse-stable simplex is fine-stable, so the map hits every
    // coarse generator.
    for (int i = 0; i < C.rank(d); ++i) {
      if (F.index_of(d, C.generators(d)[i]) < 0) throw AssertionFailure("coarse-stable simplex is fine-unstable");
    }
    maps.push_back(std::move(m));
  }
  for (int d = 1; d <= F.top(); ++d) {
    if (!(C.boundary(d) * maps[d] == maps[d - 1] * F.boundary(d))) {
      throw AssertionFailure("restriction map does not commute with the boundary in degree " + std::to_string(d));
    }
  }
  return maps;
}

}  // namespace btb
