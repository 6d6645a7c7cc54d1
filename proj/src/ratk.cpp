#include "btb/ratk.hpp"

#include <stdexcept>

namespace btb {

RatK::RatK(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}

RatK::RatK(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator in K");
  normalize();
}

void RatK::normalize() {
  const Field& F = num_.field();
  if (num_.is_zero()) {
    den_ = Poly::constant(F, 1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = Poly::gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  const FieldElem lc = den_.leading();
  if (lc != 1) {
    const FieldElem li = F.inv(lc);
    num_ = num_.scaled(li);
    den_ = den_.scaled(li);
  }
}

RatK RatK::varpi_pow(const Field& F, int k) {
  if (k >= 0) return RatK(Poly::constant(F, 1), Poly::monomial(F, 1, k), Normalized{});
  return RatK(Poly::monomial(F, 1, -k));
}

RatK RatK::from_laurent(const Field& F, int lo, const std::vector<FieldElem>& coeffs) {
  // sum c_i t^{-(lo+i)} = (sum c_i t^{top-(lo+i)}) / t^{top}, top = max exponent.
  const int n = static_cast<int>(coeffs.size());
  if (n == 0) return RatK(F);
  const int top = lo + n - 1;
  const int shift = std::max(top, 0);
  std::vector<FieldElem> c(static_cast<std::size_t>(shift - lo) + 1, 0);
  for (int i = 0; i < n; ++i) c[shift - (lo + i)] = coeffs[i];
  return RatK(Poly(F, std::move(c)), Poly::monomial(F, 1, shift));
}

LaurentSeries RatK::laurent(int upto) const {
  LaurentSeries out;
  if (is_zero()) {
    out.lo = upto;
    return out;
  }
  const Field& F = field();
  const int dn = num_.degree();
  const int dd = den_.degree();
  out.lo = dd - dn;
  const int count = upto - out.lo;
  if (count <= 0) return out;
  // x = varpi^{lo} * n~(varpi) / d~(varpi), with reversed coefficient lists;
  // d~(0) = 1 because the denominator is monic.
  out.coeffs.assign(count, 0);
  for (int i = 0; i < count; ++i) {
    FieldElem s = i <= dn ? num_.coeffs()[dn - i] : 0;
    for (int j = 1; j <= i && j <= dd; ++j) {
      const FieldElem dj = den_.coeffs()[dd - j];
      if (dj != 0) s = F.sub(s, F.mul(dj, out.coeffs[i - j]));
    }
    out.coeffs[i] = s;
  }
  return out;
}

RatK RatK::reduced_mod_varpi(int a) const {
  const LaurentSeries s = laurent(a);
  return from_laurent(field(), s.lo, s.coeffs);
}

RatK operator+(const RatK& a, const RatK& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatK(a.num_ + b.num_, a.den_);
  return RatK(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatK operator-(const RatK& a, const RatK& b) {
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatK(a.num_ - b.num_, a.den_);
  return RatK(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatK operator*(const RatK& a, const RatK& b) {
  if (a.is_zero() || b.is_zero()) return RatK(a.field());
  if (a.den_.is_one() && b.den_.is_one()) return RatK(a.num_ * b.num_, a.den_, RatK::Normalized{});
  return RatK(a.num_ * b.num_, a.den_ * b.den_);
}

RatK RatK::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero in K");
  return RatK(den_, num_);
}

RatK operator/(const RatK& a, const RatK& b) { return a * b.inv(); }

std::strong_ordering operator<=>(const RatK& a, const RatK& b) {
  if (auto c = a.num_ <=> b.num_; c != 0) return c;
  return a.den_ <=> b.den_;
}

std::string RatK::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace btb
