#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <tuple>
#include <vector>

namespace btb {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse integer matrix; explicit zeros are never stored.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long long get(int i, int j) const;
  /// Setting zero erases the entry.
  void set(int i, int j, long long v);
  void add(int i, int j, long long v) { set(i, j, get(i, j) + v); }
  std::size_t nonzeros() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  /// (row, col, value) triples in row-major order.
  std::vector<std::tuple<int, int, long long>> triples() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void check(int i, int j) const;

  int rows_ = 0;
  int cols_ = 0;
  std::map<std::pair<int, int>, long long> entries_;
};

struct SnfResult {
  /// Nonzero invariant factors d_1 | d_2 | ... (all positive).
  std::vector<BigInt> diagonal;
  int rank = 0;
  /// Invariant factors greater than one.
  std::vector<BigInt> torsion;
};

/// Smith normal form over Z with arbitrary-precision arithmetic.
///
/// Unit pivots are eliminated sparsely first (pivot on +-1 entries in short
/// rows); the remaining block is reduced densely with minimal-absolute-value
/// pivoting and recorded unimodular transforms, and U * M * V = D is
/// re-checked before returning. Throws AssertionFailure if that check fails.
SnfResult snf(const IntMatrix& m);

/// Dense reference reduction on a small matrix, returning U, D, V with
/// U * m * V = D; exposed for tests.
struct DenseSnf {
  std::vector<std::vector<BigInt>> U, D, V;
};
DenseSnf dense_snf(const std::vector<std::vector<BigInt>>& m);

}  // namespace btb
