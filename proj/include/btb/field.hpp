#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace btb {

/// Element of F_q packed as its coefficient vector over F_p in base p:
/// c_0 + c_1 p + ... + c_{n-1} p^{n-1} represents c_0 + c_1 x + ... in F_p[x]/(m).
using FieldElem = std::uint32_t;

/// The finite field F_q = F_p[x]/(m), q = p^n.
///
/// Instances are interned: Field::get returns a reference with static
/// lifetime, so elements of polynomials can hold a plain pointer to it.
/// All members are immutable after construction.
class Field {
 public:
  /// Looks up (or builds) F_{p^n}. Without an explicit modulus the built-in
  /// table is used (q <= 64), falling back to the lexicographically first
  /// irreducible polynomial. Throws UsageError when p is not prime, the
  /// modulus is not monic irreducible of degree n, or q is too large.
  static const Field& get(int p, int n, std::optional<std::vector<int>> modulus = std::nullopt);

  /// Default modulus for (p, n); coefficients low to high, monic.
  static std::vector<int> default_modulus(int p, int n);
  static bool is_prime(int p);
  /// Monic irreducibility over F_p by trial division.
  static bool is_irreducible(int p, std::span<const int> poly);

  int p() const { return p_; }
  int n() const { return n_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  FieldElem zero() const { return 0; }
  FieldElem one() const { return 1; }
  /// Image of an integer in the prime subfield.
  FieldElem from_int(long long v) const;
  FieldElem from_coeffs(std::span<const int> c) const;
  std::vector<int> coeffs(FieldElem a) const;

  FieldElem add(FieldElem a, FieldElem b) const {
    return n_ == 1 ? static_cast<FieldElem>((a + b) % static_cast<unsigned>(p_)) : add_[a * q_ + b];
  }
  FieldElem neg(FieldElem a) const {
    return n_ == 1 ? static_cast<FieldElem>((p_ - a) % p_) : neg_[a];
  }
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
  FieldElem mul(FieldElem a, FieldElem b) const {
    return n_ == 1 ? static_cast<FieldElem>((static_cast<std::uint64_t>(a) * b) % p_)
                   : mul_[a * q_ + b];
  }
  /// Throws std::domain_error on zero.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  bool operator==(const Field& o) const { return this == &o; }

 private:
  Field(int p, int n, std::vector<int> modulus);

  int p_;
  int n_;
  int q_;
  std::vector<int> modulus_;
  std::vector<FieldElem> add_, mul_, neg_, inv_;
};

}  // namespace btb
