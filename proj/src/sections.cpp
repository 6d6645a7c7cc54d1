#include "btb/sections.hpp"

#include <algorithm>
#include <sstream>

namespace btb {

FqMatrix SectionSpace::coordinates(const Field& F, int max_degree) const {
  FqMatrix out(F, 0, rows * cols * (max_degree + 1));
  for (const auto& b : basis) out.append_row(poly_matrix_coordinates(b, max_degree));
  return out;
}

std::vector<FieldElem> poly_matrix_coordinates(const PolyMatrix& m, int max_degree) {
  std::vector<FieldElem> v;
  v.reserve(static_cast<std::size_t>(m.rows()) * m.cols() * (max_degree + 1));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j).degree() > max_degree) throw DimensionError("polynomial entry exceeds coordinate degree");
      for (int d = 0; d <= max_degree; ++d) v.push_back(m(i, j).coeff(d));
    }
  return v;
}

bool satisfies(const IntegralityConstraint& c, const KMatrix& M) {
  const KMatrix P = c.left * M * c.right;
  for (const auto& x : P.data()) {
    if (x.valuation() < c.exp_upto) return false;
  }
  return true;
}

namespace {

struct Unknown {
  int entry;
  int degree;  // degree of the free polynomial factor
};

struct Built {
  std::vector<Unknown> unknowns;
  LinearSystem sys;
};

Built build_system(const SectionProblem& pb, bool affine) {
  const Field& F = pb.prefactor.field();
  const int pdeg = pb.prefactor.degree();
  const int n_entries = pb.rows * pb.cols;
  if (static_cast<int>(pb.degree_bounds.size()) != n_entries) {
    throw DimensionError("degree bound list does not match the unknown shape");
  }
  Built out;
  std::vector<int> first(n_entries + 1, 0);
  std::vector<int> maxd(n_entries, -1);
  for (int e = 0; e < n_entries; ++e) {
    first[e] = static_cast<int>(out.unknowns.size());
    maxd[e] = pb.degree_bounds[e] - pdeg;
    for (int d = 0; d <= maxd[e]; ++d) out.unknowns.push_back({e, d});
  }
  first[n_entries] = static_cast<int>(out.unknowns.size());
  out.sys.unknowns = static_cast<int>(out.unknowns.size());
  const RatK pref(pb.prefactor);

  for (const auto& c : pb.constraints) {
    if (c.left.cols() != pb.rows || c.right.rows() != pb.cols) {
      throw DimensionError("constraint shape does not match the unknown matrix");
    }
    std::optional<KMatrix> offset_image;
    if (affine && pb.offset) offset_image = c.left * (*pb.offset) * c.right;
    for (int i = 0; i < c.left.rows(); ++i)
      for (int j = 0; j < c.right.cols(); ++j) {
        std::vector<std::pair<int, LaurentSeries>> terms;
        int xmin = c.exp_upto;
        for (int k = 0; k < pb.rows; ++k) {
          if (c.left(i, k).is_zero()) continue;
          for (int l = 0; l < pb.cols; ++l) {
            const int e = k * pb.cols + l;
            if (maxd[e] < 0 || c.right(l, j).is_zero()) continue;
            const RatK P = c.left(i, k) * pref * c.right(l, j);
            LaurentSeries s = P.laurent(c.exp_upto + maxd[e]);
            xmin = std::min(xmin, s.lo - maxd[e]);
            terms.emplace_back(e, std::move(s));
          }
        }
        LaurentSeries cst;
        if (offset_image) {
          cst = (*offset_image)(i, j).laurent(c.exp_upto);
          if (!cst.coeffs.empty()) xmin = std::min(xmin, cst.lo);
        }
        for (int x = xmin; x < c.exp_upto; ++x) {
          std::vector<FieldElem> eq(out.sys.unknowns, 0);
          bool nonzero = false;
          for (const auto& [e, s] : terms) {
            for (int u = first[e]; u < first[e + 1]; ++u) {
              const FieldElem v = s.at(x + out.unknowns[u].degree);
              if (v != 0) {
                eq[u] = v;
                nonzero = true;
              }
            }
          }
          const FieldElem rhs = affine ? F.neg(cst.at(x)) : 0;
          if (!nonzero && rhs == 0) continue;
          out.sys.equations.push_back(std::move(eq));
          if (affine) out.sys.rhs.push_back(rhs);
        }
      }
  }
  return out;
}

PolyMatrix assemble(const SectionProblem& pb, const std::vector<Unknown>& unknowns,
                    const std::vector<FieldElem>& coeffs) {
  const Field& F = pb.prefactor.field();
  std::vector<std::vector<FieldElem>> polys(static_cast<std::size_t>(pb.rows) * pb.cols);
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    if (coeffs[u] == 0) continue;
    auto& p = polys[unknowns[u].entry];
    if (static_cast<int>(p.size()) <= unknowns[u].degree) p.resize(unknowns[u].degree + 1, 0);
    p[unknowns[u].degree] = coeffs[u];
  }
  PolyMatrix m = poly_zero(F, pb.rows, pb.cols);
  for (int i = 0; i < pb.rows; ++i)
    for (int j = 0; j < pb.cols; ++j) {
      auto& p = polys[i * pb.cols + j];
      if (!p.empty()) m(i, j) = pb.prefactor * Poly(F, std::move(p));
    }
  return m;
}

SectionSpace empty_space(const SectionProblem& pb) {
  SectionSpace out;
  out.rows = pb.rows;
  out.cols = pb.cols;
  out.degree_bounds = pb.degree_bounds;
  out.solver_bound = pb.degree_bounds.empty() ? -1 : *std::max_element(pb.degree_bounds.begin(), pb.degree_bounds.end());
  out.bound_formula = pb.bound_formula;
  return out;
}

void recheck(const SectionProblem& pb, const PolyMatrix& m, const KMatrix* offset) {
  KMatrix M = to_k(m);
  if (offset) M = M + *offset;
  for (const auto& c : pb.constraints) {
    if (!satisfies(c, M)) throw AssertionFailure("section solver produced an element violating its constraints");
  }
}

}  // namespace

SectionSpace solve_sections(const SectionProblem& pb) {
  const Built b = build_system(pb, false);
  SectionSpace out = empty_space(pb);
  const Field& F = pb.prefactor.field();
  const FqMatrix basis = solve_fq(F, b.sys);
  for (int k = 0; k < basis.rows(); ++k) {
    PolyMatrix m = assemble(pb, b.unknowns, basis.row(k));
    recheck(pb, m, nullptr);
    out.basis.push_back(std::move(m));
  }
  return out;
}

std::optional<AffineSections> solve_affine_sections(const SectionProblem& pb) {
  const Built b = build_system(pb, true);
  const Field& F = pb.prefactor.field();
  const auto sol = solve_affine_fq(F, b.sys);
  if (!sol) return std::nullopt;
  AffineSections out{assemble(pb, b.unknowns, sol->particular), empty_space(pb)};
  recheck(pb, out.particular, pb.offset ? &*pb.offset : nullptr);
  for (int k = 0; k < sol->basis.rows(); ++k) {
    PolyMatrix m = assemble(pb, b.unknowns, sol->basis.row(k));
    recheck(pb, m, nullptr);
    out.directions.basis.push_back(std::move(m));
  }
  return out;
}

SectionSpace global_sections(const Lattice& L) {
  const Field& F = L.field();
  const int r = L.rank();
  SectionProblem pb(F);
  pb.rows = r;
  pb.cols = 1;
  // w = B c with c in R^r, so v(w_k) >= min_j v(B_kj).
  for (int k = 0; k < r; ++k) {
    int best = kInfValuation;
    for (int j = 0; j < r; ++j) best = std::min(best, L.basis()(k, j).valuation());
    pb.degree_bounds.push_back(-best);
  }
  pb.bound_formula = "deg(w_k) <= max_j(-v(B_kj))";
  pb.constraints.push_back({k_inverse(L.basis()), k_identity(F, 1), 0});
  return solve_sections(pb);
}

std::vector<int> hom_degree_bounds(const Lattice& src, const Lattice& tgt, int m) {
  // g = varpi^{-m} T X S^{-1} with X integral, so
  // deg g_kl <= m + max_{i,j}(-v(T_ki) - v(S^{-1}_jl)).
  const KMatrix& T = tgt.basis();
  const KMatrix Sinv = k_inverse(src.basis());
  const int rt = tgt.rank();
  const int rs = src.rank();
  std::vector<int> bounds;
  bounds.reserve(static_cast<std::size_t>(rt) * rs);
  for (int k = 0; k < rt; ++k) {
    int vt = kInfValuation;
    for (int i = 0; i < rt; ++i) vt = std::min(vt, T(k, i).valuation());
    for (int l = 0; l < rs; ++l) {
      int vs = kInfValuation;
      for (int j = 0; j < rs; ++j) vs = std::min(vs, Sinv(j, l).valuation());
      bounds.push_back(m - vt - vs);
    }
  }
  return bounds;
}

IntegralityConstraint hom_constraint(const Lattice& src, const Lattice& tgt, int m) {
  const Field& F = src.field();
  KMatrix left = k_inverse(tgt.basis());
  if (m != 0) {
    const RatK s = RatK::varpi_pow(F, m);
    for (int i = 0; i < left.rows(); ++i)
      for (int j = 0; j < left.cols(); ++j) left(i, j) = left(i, j) * s;
  }
  return {std::move(left), src.basis(), 0};
}

SectionSpace hom_sections(const Lattice& src, const Lattice& tgt, const Poly& f, int m) {
  if (f.is_zero() || f.is_constant()) throw DomainError("ideal generator must be nonzero and nonconstant");
  SectionProblem pb(f.field());
  pb.rows = tgt.rank();
  pb.cols = src.rank();
  pb.prefactor = f;
  pb.degree_bounds = hom_degree_bounds(src, tgt, m);
  std::ostringstream os;
  os << "deg(g_kl) <= " << m << " + max_{i,j}(-v(tgt_ki) - v(src^-1_jl))";
  pb.bound_formula = os.str();
  pb.constraints.push_back(hom_constraint(src, tgt, m));
  return solve_sections(pb);
}

}  // namespace btb
