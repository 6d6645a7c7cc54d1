#pragma once

#include <climits>
#include <compare>
#include <string>
#include <vector>

#include "btb/poly.hpp"

namespace btb {

/// Valuation sentinel for zero.
inline constexpr int kInfValuation = INT_MAX;

/// Coefficients c_lo, c_lo+1, ... of the expansion sum c_e varpi^e at
/// infinity, varpi = 1/t.
struct LaurentSeries {
  int lo = 0;
  std::vector<FieldElem> coeffs;

  FieldElem at(int e) const {
    const int i = e - lo;
    return i >= 0 && i < static_cast<int>(coeffs.size()) ? coeffs[i] : 0;
  }
};

/// Element of K = F_q(t): num/den in lowest terms with den monic.
///
/// The place at infinity is the degree place; the uniformizer is
/// varpi = 1/t, so v(x) = deg(den) - deg(num) and R = {x : v(x) >= 0}.
class RatK {
 public:
  explicit RatK(const Field& F) : num_(F), den_(Poly::constant(F, 1)) {}
  RatK(Poly num);  // NOLINT(google-explicit-constructor): A embeds in K
  RatK(Poly num, Poly den);

  static RatK from_int(const Field& F, long long v) { return RatK(Poly::constant(F, F.from_int(v))); }
  static RatK constant(const Field& F, FieldElem c) { return RatK(Poly::constant(F, c)); }
  /// varpi^k = t^{-k}.
  static RatK varpi_pow(const Field& F, int k);
  /// sum_i coeffs[i] varpi^{lo + i}.
  static RatK from_laurent(const Field& F, int lo, const std::vector<FieldElem>& coeffs);

  const Field& field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  /// deg(den) - deg(num), or kInfValuation for zero.
  int valuation() const {
    return is_zero() ? kInfValuation : den_.degree() - num_.degree();
  }

  /// Expansion at infinity for exponents v(x), ..., upto - 1 (empty for zero
  /// or when upto <= v(x)).
  LaurentSeries laurent(int upto) const;
  /// Representative of x modulo varpi^a R: the truncated expansion below a.
  RatK reduced_mod_varpi(int a) const;

  RatK operator-() const { return RatK(-num_, den_, Normalized{}); }
  friend RatK operator+(const RatK& a, const RatK& b);
  friend RatK operator-(const RatK& a, const RatK& b);
  friend RatK operator*(const RatK& a, const RatK& b);
  friend RatK operator/(const RatK& a, const RatK& b);
  RatK& operator+=(const RatK& o) { return *this = *this + o; }
  RatK& operator-=(const RatK& o) { return *this = *this - o; }
  RatK& operator*=(const RatK& o) { return *this = *this * o; }
  RatK inv() const;

  friend bool operator==(const RatK& a, const RatK& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const RatK& a, const RatK& b);

  std::string to_string() const;

 private:
  struct Normalized {};
  RatK(Poly num, Poly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Poly num_;
  Poly den_;
};

/// v_inf(x): valuation at the degree place, kInfValuation for zero.
inline int v_inf(const RatK& x) { return x.valuation(); }

}  // namespace btb
