#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "btb/field.hpp"

namespace btb {

/// Element of A = F_q[t]. Coefficients are stored low to high with no
/// trailing zeros, so the zero polynomial has an empty coefficient list.
class Poly {
 public:
  /// degree() of the zero polynomial.
  static constexpr int kZeroDegree = -1;

  explicit Poly(const Field& F) : F_(&F) {}
  Poly(const Field& F, std::vector<FieldElem> coeffs);

  static Poly constant(const Field& F, FieldElem c);
  /// c * t^k.
  static Poly monomial(const Field& F, FieldElem c, int k);
  static Poly t(const Field& F) { return monomial(F, 1, 1); }

  const Field& field() const { return *F_; }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  FieldElem coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0;
  }
  FieldElem leading() const { return c_.empty() ? 0 : c_.back(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  Poly scaled(FieldElem c) const;
  /// this * t^k, k >= 0.
  Poly shifted(int k) const;
  Poly monic() const;

  /// Euclidean division; throws std::domain_error on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }
  bool divides(const Poly& other) const { return (other % *this).is_zero(); }

  /// Monic gcd (zero when both are zero).
  static Poly gcd(Poly a, Poly b);

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  /// Total order: by degree, then coefficients from the top.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  /// Human-readable form like "t^2 + t + 1"; extension-field coefficients
  /// print as their packed integer.
  std::string to_string() const;

 private:
  void trim();

  const Field* F_;
  std::vector<FieldElem> c_;
};

}  // namespace btb
