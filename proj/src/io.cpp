#include "btb/io.hpp"

#include <algorithm>
#include <cctype>

namespace btb::io {

namespace {

FieldElem elem_from_json(const Field& F, const Json& j) {
  if (!j.is_number_integer()) throw UsageError("field element must be an integer");
  const long long v = j.get<long long>();
  if (v < 0 || v >= F.q()) throw UsageError("field element " + std::to_string(v) + " out of range for q = " +
                                           std::to_string(F.q()));
  return static_cast<FieldElem>(v);
}

Json bigint_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(x));
  return Json(x.str());
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing JSON key '") + key + "'");
  return j.at(key);
}

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

long long parse_int(const std::string& s, const std::string& whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw UsageError("malformed polynomial '" + whole + "'");
  if (s.size() > 9) throw UsageError("coefficient too large in '" + whole + "'");
  return std::stoll(s);
}

FieldElem checked_coeff(const Field& F, long long v, const std::string& whole) {
  if (F.n() == 1) return F.from_int(v);
  if (v >= F.q()) throw UsageError("coefficient " + std::to_string(v) + " out of range in '" + whole + "'");
  return static_cast<FieldElem>(v);
}

}  // namespace

Json poly_to_json(const Poly& f) {
  Json out = Json::array();
  for (FieldElem c : f.coeffs()) out.push_back(c);
  return out;
}

Poly poly_from_json(const Field& F, const Json& j) {
  if (!j.is_array()) throw UsageError("polynomial must be a coefficient list");
  std::vector<FieldElem> c;
  for (const auto& e : j) c.push_back(elem_from_json(F, e));
  return Poly(F, std::move(c));
}

Poly parse_poly(const Field& F, const std::string& input) {
  const std::string s = strip(input);
  if (s.empty()) throw UsageError("empty polynomial");
  if (s.front() == '[' || s.find(',') != std::string::npos || s.find('t') == std::string::npos) {
    std::string body = s;
    if (body.front() == '[') {
      if (body.back() != ']') throw UsageError("malformed coefficient list '" + input + "'");
      body = body.substr(1, body.size() - 2);
    }
    // A bare integer is a constant polynomial, not a list.
    std::vector<FieldElem> c;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const std::size_t comma = std::min(body.find(',', pos), body.size());
      c.push_back(checked_coeff(F, parse_int(body.substr(pos, comma - pos), input), input));
      pos = comma + 1;
    }
    return Poly(F, std::move(c));
  }
  Poly out(F);
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw UsageError("malformed polynomial '" + input + "'");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw UsageError("malformed polynomial '" + input + "'");
    const std::size_t tpos = term.find('t');
    FieldElem coeff;
    int deg = 0;
    if (tpos == std::string::npos) {
      coeff = checked_coeff(F, parse_int(term, input), input);
    } else {
      std::string cs = term.substr(0, tpos);
      if (!cs.empty() && cs.back() == '*') cs.pop_back();
      coeff = cs.empty() ? F.one() : checked_coeff(F, parse_int(cs, input), input);
      const std::string rest = term.substr(tpos + 1);
      if (rest.empty()) {
        deg = 1;
      } else if (rest.front() == '^') {
        deg = static_cast<int>(parse_int(rest.substr(1), input));
      } else {
        throw UsageError("malformed polynomial '" + input + "'");
      }
    }
    if (negative) coeff = F.neg(coeff);
    out = out + Poly::monomial(F, coeff, deg);
    pos = end;
  }
  return out;
}

Json ratk_to_json(const RatK& x) { return Json{{"num", poly_to_json(x.num())}, {"den", poly_to_json(x.den())}}; }

RatK ratk_from_json(const Field& F, const Json& j) {
  if (j.is_number_integer()) return RatK::constant(F, elem_from_json(F, j));
  if (j.is_array()) return RatK(poly_from_json(F, j));
  const Poly den = poly_from_json(F, member(j, "den"));
  if (den.is_zero()) throw UsageError("zero denominator");
  return RatK(poly_from_json(F, member(j, "num")), den);
}

Json kmatrix_to_json(const KMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(ratk_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

KMatrix kmatrix_from_json(const Field& F, const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw UsageError("matrix must be a nonempty list of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  KMatrix m = k_zero(F, rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) throw UsageError("ragged matrix rows");
    for (int k = 0; k < cols; ++k) m(i, k) = ratk_from_json(F, j[i][k]);
  }
  return m;
}

Json polymatrix_to_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(poly_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

PolyMatrix polymatrix_from_json(const Field& F, const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw UsageError("matrix must be a nonempty list of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  PolyMatrix m = poly_zero(F, rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) throw UsageError("ragged matrix rows");
    for (int k = 0; k < cols; ++k) m(i, k) = poly_from_json(F, j[i][k]);
  }
  return m;
}

Json lattice_to_json(const Lattice& L) {
  const auto& a = L.diag_exponents();
  Json sub = Json::array();
  for (int i = 0; i < L.rank(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < i; ++k) {
      const LaurentSeries s = L.basis()(i, k).laurent(a[i]);
      Json c = Json::array();
      for (int e = a[i] - 1; e >= s.lo; --e) c.push_back(s.at(e));
      row.push_back(std::move(c));
    }
    sub.push_back(std::move(row));
  }
  return Json{{"diag_exponents", a}, {"subdiagonal", std::move(sub)}};
}

Lattice lattice_from_json(const Field& F, const Json& j) {
  const Json& dj = member(j, "diag_exponents");
  const Json& sj = member(j, "subdiagonal");
  if (!dj.is_array() || dj.empty()) throw UsageError("diag_exponents must be a nonempty list");
  const int r = static_cast<int>(dj.size());
  if (!sj.is_array() || static_cast<int>(sj.size()) != r) throw UsageError("subdiagonal must have one row per basis vector");
  std::vector<int> a;
  for (const auto& e : dj) {
    if (!e.is_number_integer()) throw UsageError("diag_exponents must be integers");
    a.push_back(e.get<int>());
  }
  KMatrix B = k_zero(F, r, r);
  for (int i = 0; i < r; ++i) {
    B(i, i) = RatK::varpi_pow(F, a[i]);
    if (!sj[i].is_array() || static_cast<int>(sj[i].size()) != i)
      throw UsageError("subdiagonal row " + std::to_string(i) + " must hold " + std::to_string(i) + " entries");
    for (int k = 0; k < i; ++k) {
      const Json& c = sj[i][k];
      if (!c.is_array()) throw UsageError("subdiagonal entry must be a coefficient list");
      const int len = static_cast<int>(c.size());
      if (len > 0 && c.back() == 0) throw UsageError("subdiagonal coefficient list must end at a nonzero term");
      std::vector<FieldElem> asc(len);
      for (int m = 0; m < len; ++m) asc[len - 1 - m] = elem_from_json(F, c[m]);
      B(i, k) = RatK::from_laurent(F, a[i] - len, asc);
    }
  }
  Lattice L = Lattice::from_generators(B);
  if (!(L.basis() == B)) throw UsageError("lattice data is not in canonical Hermite form");
  return L;
}

Json class_to_json(const LatticeClass& c) { return lattice_to_json(c.rep()); }

LatticeClass class_from_json(const Field& F, const Json& j) {
  const Lattice L = lattice_from_json(F, j);
  const auto& a = L.diag_exponents();
  if (*std::min_element(a.begin(), a.end()) != 0) throw UsageError("class representative must have min exponent 0");
  return LatticeClass(L);
}

Json ball_to_json(const Ball& b, const BallParams& params) {
  Json p{{"p", params.p}, {"n", params.n}, {"r", b.rank()}};
  if (params.ideal) p["ideal"] = poly_to_json(*params.ideal);
  p["radius"] = b.radius();
  if (params.modulus) p["modulus"] = *params.modulus;
  Json verts = Json::array();
  for (int v = 0; v < b.size(); ++v)
    verts.push_back(Json{{"id", v}, {"class", class_to_json(b.vertex(v))}, {"type", b.type(v)}});
  Json simp = Json::object();
  for (int d = 0; d <= b.max_dim(); ++d) {
    Json list = Json::array();
    for (const auto& s : b.simplices(d)) list.push_back(s.ids);
    simp[std::to_string(d)] = std::move(list);
  }
  return Json{{"params", std::move(p)}, {"vertices", std::move(verts)}, {"simplices", std::move(simp)}};
}

ImportedBall ball_from_json(const Json& j) {
  const Json& p = member(j, "params");
  BallParams params;
  params.p = member(p, "p").get<int>();
  params.n = member(p, "n").get<int>();
  if (p.contains("modulus")) params.modulus = p.at("modulus").get<std::vector<int>>();
  const Field& F = Field::get(params.p, params.n, params.modulus);
  if (p.contains("ideal")) params.ideal = poly_from_json(F, p.at("ideal"));
  const int r = member(p, "r").get<int>();
  const int radius = member(p, "radius").get<int>();
  std::vector<LatticeClass> verts;
  const Json& vj = member(j, "vertices");
  for (std::size_t i = 0; i < vj.size(); ++i) {
    if (member(vj[i], "id").get<std::size_t>() != i) throw UsageError("vertex ids must be 0, 1, 2, ...");
    verts.push_back(class_from_json(F, member(vj[i], "class")));
    if (verts.back().rank() != r) throw UsageError("vertex rank differs from params.r");
    if (member(vj[i], "type").get<int>() != vertex_type(verts.back())) throw UsageError("stored vertex type is wrong");
  }
  if (verts.empty()) throw UsageError("ball has no vertices");
  const Json& sj = member(j, "simplices");
  std::vector<std::vector<Simplex>> simp;
  for (int d = 0; sj.contains(std::to_string(d)); ++d) {
    std::vector<Simplex> list;
    for (const auto& ids : sj.at(std::to_string(d))) list.push_back(Simplex{ids.get<std::vector<int>>()});
    simp.push_back(std::move(list));
  }
  return ImportedBall{Ball::assemble(radius, std::move(verts), std::move(simp)), params};
}

Json stabilizer_to_json(const StabilizerSpace& H) {
  Json verts = Json::array();
  for (const auto& L : H.vertices) verts.push_back(lattice_to_json(L));
  Json basis = Json::array();
  for (const auto& m : H.H.basis) basis.push_back(polymatrix_to_json(m));
  return Json{{"level", poly_to_json(H.f)},
              {"vertices", std::move(verts)},
              {"dim", H.dim()},
              {"order", bigint_to_json(stab_order(H))},
              {"degree_bound", H.H.solver_bound},
              {"bound_formula", H.H.bound_formula},
              {"basis", std::move(basis)}};
}

Json subspace_to_json(const SubspaceK& W) {
  return Json{{"ambient", W.ambient}, {"dim", W.dim()}, {"basis", W.dim() > 0 ? kmatrix_to_json(W.basis) : Json::array()}};
}

SubspaceK subspace_from_json(const Field& F, const Json& j) {
  const int ambient = member(j, "ambient").get<int>();
  const Json& b = member(j, "basis");
  if (b.empty()) return SubspaceK::span(k_zero(F, 0, ambient), ambient);
  const KMatrix m = kmatrix_from_json(F, b);
  if (m.cols() != ambient) throw UsageError("subspace basis width differs from ambient dimension");
  return SubspaceK::span(m, ambient);
}

Json group_elt_to_json(const GroupElt& g) {
  return Json{{"matrix", polymatrix_to_json(g.m)}, {"congruence", g.congruence}};
}

Json orbit_witness_to_json(const std::optional<OrbitWitness>& w, int deg_bound) {
  if (!w) return Json{{"found", false}, {"deg_bound", deg_bound}};
  return Json{{"found", true},
              {"deg_bound", w->deg_bound},
              {"solution_dim", w->solution_dim},
              {"witness", polymatrix_to_json(w->gamma.m)}};
}

Json homology_to_json(const HomologyResult& h) {
  Json deg = Json::object();
  for (const auto& [d, dh] : h.degrees) {
    Json tor = Json::array();
    for (const auto& t : dh.torsion) tor.push_back(bigint_to_json(t));
    deg[std::to_string(d)] = Json{{"betti", dh.betti}, {"torsion", std::move(tor)}};
  }
  Json ranks = Json::object();
  for (const auto& [d, n] : h.chain_ranks) ranks[std::to_string(d)] = n;
  Json meta{{"radius", h.radius},
            {"level", h.level.empty() ? Json(nullptr) : Json(h.level)},
            {"augmented", h.augmented},
            {"euler", h.euler},
            {"chain_ranks", std::move(ranks)}};
  return Json{{"degree", std::move(deg)}, {"meta", std::move(meta)}};
}

Json components_to_json(const ComponentReport& rep) {
  Json comps = Json::array();
  for (const auto& c : rep.components) {
    Json simp = Json::object();
    for (std::size_t d = 0; d < c.simplices.size(); ++d) {
      Json list = Json::array();
      for (const auto& s : c.simplices[d]) list.push_back(s.ids);
      simp[std::to_string(d)] = std::move(list);
    }
    Json cj{{"vertices", c.vertices},
            {"simplices", std::move(simp)},
            {"edges", c.edges},
            {"fixed_space", subspace_to_json(c.fixed)},
            {"touches_boundary", c.touches_boundary}};
    cj["is_tree"] = c.is_tree ? Json(*c.is_tree) : Json(nullptr);
    comps.push_back(std::move(cj));
  }
  return Json{{"components", std::move(comps)}, {"meta", Json{{"radius", rep.radius}, {"level", rep.level}}}};
}

}  // namespace btb::io
