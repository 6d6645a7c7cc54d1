#include "btb/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace btb {

Poly::Poly(const Field& F, std::vector<FieldElem> coeffs) : F_(&F), c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Field& F, FieldElem c) { return Poly(F, {c}); }

Poly Poly::monomial(const Field& F, FieldElem c, int k) {
  if (c == 0) return Poly(F);
  std::vector<FieldElem> v(static_cast<std::size_t>(k) + 1, 0);
  v[k] = c;
  return Poly(F, std::move(v));
}

Poly Poly::operator-() const {
  Poly out(*F_);
  out.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = F_->neg(c_[i]);
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F_->add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F_->sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(*a.F_);
  if (a.is_zero() || b.is_zero()) return out;
  const Field& F = *a.F_;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      out.c_[i + j] = F.add(out.c_[i + j], F.mul(a.c_[i], b.c_[j]));
    }
  }
  out.trim();
  return out;
}

Poly Poly::scaled(FieldElem c) const {
  if (c == 0) return Poly(*F_);
  Poly out = *this;
  for (auto& x : out.c_) x = F_->mul(x, c);
  return out;
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Poly out(*F_);
  out.c_.assign(static_cast<std::size_t>(k), 0);
  out.c_.insert(out.c_.end(), c_.begin(), c_.end());
  return out;
}

Poly Poly::monic() const {
  if (is_zero() || leading() == 1) return *this;
  return scaled(F_->inv(leading()));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  const Field& F = *F_;
  Poly rem = *this;
  Poly quo(F);
  const int dd = d.degree();
  if (rem.degree() < dd) return {quo, rem};
  quo.c_.assign(static_cast<std::size_t>(rem.degree() - dd + 1), 0);
  const FieldElem lc_inv = F.inv(d.leading());
  for (int i = rem.degree(); i >= dd; --i) {
    const FieldElem c = F.mul(rem.c_[i], lc_inv);
    if (c == 0) continue;
    quo.c_[i - dd] = c;
    for (int j = 0; j <= dd; ++j) {
      rem.c_[i - dd + j] = F.sub(rem.c_[i - dd + j], F.mul(c, d.c_[j]));
    }
  }
  rem.trim();
  quo.trim();
  return {quo, rem};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const FieldElem c = c_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i > 0) {
      if (c != 1) os << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace btb
