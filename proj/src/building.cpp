#include "btb/building.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace btb {

std::vector<FqMatrix> enumerate_subspaces(const Field& F, int r, int d) {
  std::vector<FqMatrix> out;
  if (d < 0 || d > r) return out;
  const int q = F.q();
  std::vector<bool> sel(r, false);
  std::fill(sel.begin(), sel.begin() + d, true);
  do {
    std::vector<int> piv;
    for (int j = 0; j < r; ++j)
      if (sel[j]) piv.push_back(j);
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < d; ++i)
      for (int j = piv[i] + 1; j < r; ++j)
        if (!sel[j]) free.emplace_back(i, j);
    std::vector<FieldElem> digits(free.size(), 0);
    for (;;) {
      FqMatrix m(F, d, r);
      for (int i = 0; i < d; ++i) m(i, piv[i]) = 1;
      for (std::size_t k = 0; k < free.size(); ++k) m(free[k].first, free[k].second) = digits[k];
      out.push_back(std::move(m));
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == static_cast<FieldElem>(q)) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return out;
}

long long neighbor_count(int q, int r) {
  long long total = 0;
  for (int k = 1; k < r; ++k) {
    long long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
      long long a = 1, b = 1;
      for (int e = 0; e < r - i; ++e) a *= q;
      for (int e = 0; e < i + 1; ++e) b *= q;
      num *= a - 1;
      den *= b - 1;
    }
    total += num / den;
  }
  return total;
}

std::vector<Lattice> sublattices_between(const Lattice& L) {
  const Field& F = L.field();
  const int r = L.rank();
  const KMatrix& B = L.basis();
  const RatK w = RatK::varpi_pow(F, 1);
  std::vector<Lattice> out;
  for (int d = 1; d < r; ++d) {
    for (const FqMatrix& S : enumerate_subspaces(F, r, d)) {
      KMatrix G = k_zero(F, r, d + r);
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < r; ++i) {
          RatK acc(F);
          for (int j = 0; j < r; ++j) {
            if (S(k, j) != 0 && !B(i, j).is_zero()) acc += B(i, j) * RatK::constant(F, S(k, j));
          }
          G(i, k) = acc;
        }
      for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j) {
          if (!B(i, j).is_zero()) G(i, d + j) = B(i, j) * w;
        }
      out.push_back(Lattice::from_generators(G));
    }
  }
  return out;
}

std::vector<LatticeClass> neighbors(const LatticeClass& v) {
  std::vector<LatticeClass> out;
  for (const Lattice& L : sublattices_between(v.rep())) out.emplace_back(L);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_flag(const std::vector<LatticeClass>& vs) {
  if (vs.empty()) return false;
  const Lattice& L0 = vs.front().rep();
  std::vector<Lattice> reps{L0};
  for (std::size_t k = 1; k < vs.size(); ++k) {
    const RelPos p = rel_position(L0, vs[k].rep());
    if (p.exponents.back() - p.exponents.front() != 1) return false;
    reps.push_back(vs[k].rep().scaled(-p.exponents.front()));
  }
  std::sort(reps.begin(), reps.end(),
            [](const Lattice& a, const Lattice& b) { return a.det_valuation() < b.det_valuation(); });
  for (std::size_t k = 1; k < reps.size(); ++k) {
    if (reps[k].det_valuation() == reps[k - 1].det_valuation()) return false;
    if (!reps[k - 1].contains(reps[k])) return false;
  }
  return reps.front().scaled(1) != reps.back() && reps.back().contains(reps.front().scaled(1));
}

std::optional<int> Ball::find(const LatticeClass& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Simplex>& Ball::simplices(int d) const {
  static const std::vector<Simplex> kEmpty;
  if (d < 0 || d >= static_cast<int>(simplices_.size())) return kEmpty;
  return simplices_[d];
}

std::vector<LatticeClass> Ball::classes(const Simplex& s) const {
  std::vector<LatticeClass> out;
  out.reserve(s.ids.size());
  for (int id : s.ids) out.push_back(vertex(id));
  return out;
}

void Ball::index_vertices() {
  index_.clear();
  types_.clear();
  for (int i = 0; i < size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) throw DomainError("duplicate vertex in ball");
    types_.push_back(vertex_type(vertices_[i]));
  }
}

void Ball::compute_simplices() {
  const int r = rank();
  simplices_.assign(r, {});
  for (int v = 0; v < size(); ++v) simplices_[0].push_back({{v}});
  // Cliques of the 1-skeleton, extended in increasing id order.
  std::vector<int> clique;
  std::function<void(const std::vector<int>&)> extend = [&](const std::vector<int>& cand) {
    for (std::size_t k = 0; k < cand.size(); ++k) {
      const int w = cand[k];
      clique.push_back(w);
      Simplex s{clique};
      std::sort(s.ids.begin(), s.ids.end(), [&](int a, int b) { return types_[a] < types_[b]; });
      for (std::size_t i = 1; i < s.ids.size(); ++i) {
        if (types_[s.ids[i]] == types_[s.ids[i - 1]]) throw AssertionFailure("simplex with repeated vertex type");
      }
      if (!is_flag(classes(s))) throw AssertionFailure("clique of adjacent vertices is not a flag");
      simplices_[s.dim()].push_back(std::move(s));
      if (static_cast<int>(clique.size()) < r) {
        std::vector<int> next;
        const auto& nb = adj_[w];
        std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(k) + 1, cand.end(), nb.begin(), nb.end(),
                              std::back_inserter(next));
        if (!next.empty()) extend(next);
      }
      clique.pop_back();
    }
  };
  for (int v = 0; v < size(); ++v) {
    std::vector<int> cand;
    for (int w : adj_[v])
      if (w > v) cand.push_back(w);
    clique = {v};
    extend(cand);
  }
  for (auto& level : simplices_) std::sort(level.begin(), level.end());
}

Ball Ball::build(const LatticeClass& center, int radius, long long vertex_budget) {
  if (radius < 0) throw DomainError("ball radius must be nonnegative");
  Ball b;
  b.radius_ = radius;
  b.vertices_.push_back(center);
  b.depth_.push_back(0);
  b.index_.emplace(center, 0);
  std::vector<std::vector<int>> adj(1);
  for (int u = 0; u < static_cast<int>(b.vertices_.size()); ++u) {
    const std::vector<LatticeClass> nb = neighbors(b.vertices_[u]);
    for (const auto& c : nb) {
      auto it = b.index_.find(c);
      int id;
      if (it != b.index_.end()) {
        id = it->second;
      } else if (b.depth_[u] < radius) {
        if (static_cast<long long>(b.vertices_.size()) >= vertex_budget) {
          throw BudgetError("ball exceeds the vertex budget of " + std::to_string(vertex_budget));
        }
        id = static_cast<int>(b.vertices_.size());
        b.vertices_.push_back(c);
        b.depth_.push_back(b.depth_[u] + 1);
        b.index_.emplace(c, id);
        adj.emplace_back();
      } else {
        continue;
      }
      adj[u].push_back(id);
    }
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  b.adj_ = std::move(adj);
  b.index_vertices();
  b.compute_simplices();
  return b;
}

void Ball::fill_adjacency_from_edges() {
  adj_.assign(size(), {});
  for (const auto& e : simplices(1)) {
    adj_[e.ids[0]].push_back(e.ids[1]);
    adj_[e.ids[1]].push_back(e.ids[0]);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Ball Ball::assemble(int radius, std::vector<LatticeClass> vertices, std::vector<std::vector<Simplex>> simplices) {
  if (vertices.empty()) throw DomainError("ball without vertices");
  Ball b;
  b.radius_ = radius;
  b.vertices_ = std::move(vertices);
  b.index_vertices();
  const int r = b.rank();
  if (static_cast<int>(simplices.size()) > r) throw DomainError("simplices of dimension >= rank");
  simplices.resize(r);
  for (int d = 0; d < r; ++d)
    for (const auto& s : simplices[d]) {
      if (s.dim() != d) throw DomainError("simplex stored under the wrong dimension");
      for (int id : s.ids)
        if (id < 0 || id >= b.size()) throw DomainError("simplex refers to an unknown vertex");
      for (std::size_t i = 1; i < s.ids.size(); ++i)
        if (b.types_[s.ids[i - 1]] >= b.types_[s.ids[i]]) throw DomainError("simplex is not type-sorted");
    }
  b.simplices_ = std::move(simplices);
  b.fill_adjacency_from_edges();
  for (int i = 0; i < b.size(); ++i) b.depth_.push_back(distance(b.vertices_[0], b.vertices_[i]));
  return b;
}

const std::vector<Simplex>& simplices(const Ball& b, int d) { return b.simplices(d); }

std::optional<int> bfs_distance(const Ball& b, int v, int w) {
  if (v < 0 || v >= b.size() || w < 0 || w >= b.size()) throw DomainError("vertex id outside the ball");
  std::vector<int> dist(b.size(), -1);
  std::deque<int> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == w) return dist[u];
    for (int x : b.adjacent(u)) {
      if (dist[x] < 0) {
        dist[x] = dist[u] + 1;
        queue.push_back(x);
      }
    }
  }
  return std::nullopt;
}

std::string to_dot(const Ball& b) {
  std::ostringstream os;
  os << "graph ball {\n";
  for (int i = 0; i < b.size(); ++i) os << "  " << i << " [label=\"" << i << ":" << b.type(i) << "\"];\n";
  for (const auto& e : b.simplices(1)) os << "  " << e.ids[0] << " -- " << e.ids[1] << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace btb
