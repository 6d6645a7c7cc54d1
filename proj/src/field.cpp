#include "btb/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "btb/error.hpp"

namespace btb {

namespace {

constexpr int kMaxPrime = 1 << 15;
constexpr int kMaxExtensionOrder = 1024;

// Conway polynomials, low-to-high coefficients, for every non-prime q <= 64.
const std::map<std::pair<int, int>, std::vector<int>>& builtin_table() {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{5, 2}, {2, 4, 1}},
      {{7, 2}, {3, 6, 1}},
  };
  return table;
}

// Remainder of a modulo b over F_p; b monic. Both low-to-high.
std::vector<int> poly_mod_p(std::vector<int> a, const std::vector<int>& b, int p) {
  const int db = static_cast<int>(b.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    const int c = ((a[i] % p) + p) % p;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p) % p;
    }
  }
  a.resize(std::max(db, 0));
  return a;
}

long long inv_mod(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    const long long qt = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - qt * nt);
    std::tie(r, nr) = std::make_pair(nr, r - qt * nr);
  }
  return (t % p + p) % p;
}

}  // namespace

bool Field::is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

bool Field::is_irreducible(int p, std::span<const int> poly) {
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg < 1 || ((poly.back() % p) + p) % p != 1) return false;
  std::vector<int> f(poly.begin(), poly.end());
  for (auto& c : f) c = ((c % p) + p) % p;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int d = 1; 2 * d <= deg; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      std::vector<int> g(d + 1);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      auto r = poly_mod_p(f, g, p);
      bool zero = true;
      for (int x : r) zero = zero && x == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<int> Field::default_modulus(int p, int n) {
  if (n == 1) return {0, 1};
  const auto& table = builtin_table();
  if (auto it = table.find({p, n}); it != table.end()) return it->second;
  long long count = 1;
  for (int i = 0; i < n; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    std::vector<int> g(n + 1);
    long long c = code;
    for (int i = 0; i < n; ++i) {
      g[i] = static_cast<int>(c % p);
      c /= p;
    }
    g[n] = 1;
    if (is_irreducible(p, g)) return g;
  }
  throw UsageError("no irreducible polynomial of degree " + std::to_string(n));
}

const Field& Field::get(int p, int n, std::optional<std::vector<int>> modulus) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, std::vector<int>>, std::unique_ptr<Field>> registry;

  if (!is_prime(p) || p >= kMaxPrime) {
    throw UsageError("field characteristic must be a prime below " + std::to_string(kMaxPrime) +
                     ", got " + std::to_string(p));
  }
  if (n < 1) throw UsageError("field degree n must be >= 1");
  long long q = 1;
  for (int i = 0; i < n; ++i) q *= p;
  if (n > 1 && q > kMaxExtensionOrder) {
    throw UsageError("extension fields are limited to q <= " + std::to_string(kMaxExtensionOrder));
  }
  std::vector<int> m = modulus ? *modulus : default_modulus(p, n);
  for (auto& c : m) c = ((c % p) + p) % p;
  if (static_cast<int>(m.size()) != n + 1 || !is_irreducible(p, m)) {
    throw UsageError("modulus must be monic irreducible of degree " + std::to_string(n));
  }

  std::lock_guard lock(mu);
  auto key = std::make_tuple(p, n, m);
  auto it = registry.find(key);
  if (it == registry.end()) {
    it = registry.emplace(key, std::unique_ptr<Field>(new Field(p, n, m))).first;
  }
  return *it->second;
}

Field::Field(int p, int n, std::vector<int> modulus) : p_(p), n_(n), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < n; ++i) q_ *= p;
  if (n_ == 1) {
    inv_.assign(q_, 0);
    for (int a = 1; a < q_; ++a) inv_[a] = static_cast<FieldElem>(inv_mod(a, p_));
    return;
  }
  const auto qq = static_cast<std::size_t>(q_);
  add_.resize(qq * qq);
  mul_.resize(qq * qq);
  neg_.resize(qq);
  inv_.assign(qq, 0);
  for (int a = 0; a < q_; ++a) {
    const auto ca = coeffs(static_cast<FieldElem>(a));
    std::vector<int> na(n_);
    for (int i = 0; i < n_; ++i) na[i] = (p_ - ca[i]) % p_;
    neg_[a] = from_coeffs(na);
    for (int b = 0; b < q_; ++b) {
      const auto cb = coeffs(static_cast<FieldElem>(b));
      std::vector<int> s(n_), prod(2 * n_ - 1, 0);
      for (int i = 0; i < n_; ++i) s[i] = (ca[i] + cb[i]) % p_;
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
      }
      add_[a * qq + b] = from_coeffs(s);
      mul_[a * qq + b] = from_coeffs(poly_mod_p(prod, modulus_, p_));
    }
  }
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b) {
      if (mul_[a * qq + b] == 1) {
        inv_[a] = static_cast<FieldElem>(b);
        break;
      }
    }
  }
}

FieldElem Field::from_int(long long v) const {
  return static_cast<FieldElem>(((v % p_) + p_) % p_);
}

FieldElem Field::from_coeffs(std::span<const int> c) const {
  FieldElem out = 0;
  FieldElem scale = 1;
  for (int i = 0; i < n_ && i < static_cast<int>(c.size()); ++i) {
    out += static_cast<FieldElem>(((c[i] % p_) + p_) % p_) * scale;
    scale *= static_cast<FieldElem>(p_);
  }
  return out;
}

std::vector<int> Field::coeffs(FieldElem a) const {
  std::vector<int> c(n_);
  for (int i = 0; i < n_; ++i) {
    c[i] = static_cast<int>(a % static_cast<FieldElem>(p_));
    a /= static_cast<FieldElem>(p_);
  }
  return c;
}

FieldElem Field::inv(FieldElem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_q");
  return inv_[a];
}

}  // namespace btb
