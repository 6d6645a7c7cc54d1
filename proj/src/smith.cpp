#include "btb/smith.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <string>

#include "btb/error.hpp"

namespace btb {

void IntMatrix::check(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
    throw DimensionError("IntMatrix index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
  }
}

long long IntMatrix::get(int i, int j) const {
  check(i, j);
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

void IntMatrix::set(int i, int j, long long v) {
  check(i, j);
  if (v == 0) {
    entries_.erase({i, j});
  } else {
    entries_[{i, j}] = v;
  }
}

std::vector<std::tuple<int, int, long long>> IntMatrix::triples() const {
  std::vector<std::tuple<int, int, long long>> out;
  out.reserve(entries_.size());
  for (const auto& [ij, v] : entries_) out.emplace_back(ij.first, ij.second, v);
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("IntMatrix product shape mismatch");
  std::vector<std::vector<std::pair<int, long long>>> brows(b.rows_);
  for (const auto& [ij, v] : b.entries_) brows[ij.first].emplace_back(ij.second, v);
  std::map<std::pair<int, int>, BigInt> acc;
  for (const auto& [ij, v] : a.entries_) {
    for (const auto& [j, w] : brows[ij.second]) acc[{ij.first, j}] += BigInt(v) * w;
  }
  IntMatrix out(a.rows_, b.cols_);
  for (const auto& [ij, v] : acc) {
    if (v == 0) continue;
    if (v > BigInt(std::numeric_limits<long long>::max()) || v < BigInt(std::numeric_limits<long long>::min())) {
      throw Error("IntMatrix product entry overflows 64 bits");
    }
    out.entries_[ij] = static_cast<long long>(v);
  }
  return out;
}

namespace {

using Row = std::vector<std::pair<int, BigInt>>;  // sorted by column

// a - c * b for sorted sparse rows.
Row axpy(const Row& a, const BigInt& c, const Row& b) {
  Row out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -c * b[j].second);
      ++j;
    } else {
      BigInt v = a[i].second - c * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

using Dense = std::vector<std::vector<BigInt>>;

Dense identity(std::size_t n) {
  Dense I(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

Dense multiply(const Dense& a, const Dense& b, std::size_t cols_b) {
  Dense out(a.size(), std::vector<BigInt>(cols_b, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols_b; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

// floor-free quotient rounding toward zero is fine: we only need a remainder
// smaller in absolute value than the pivot.
BigInt quot(const BigInt& a, const BigInt& b) { return a / b; }

}  // namespace

DenseSnf dense_snf(const Dense& m) {
  const std::size_t R = m.size();
  const std::size_t C = R == 0 ? 0 : m[0].size();
  DenseSnf out{identity(R), m, identity(C)};
  Dense& A = out.D;
  Dense& U = out.U;
  Dense& V = out.V;

  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& c) {  // row dst -= c row src
    for (std::size_t j = 0; j < C; ++j) A[dst][j] -= c * A[src][j];
    for (std::size_t j = 0; j < R; ++j) U[dst][j] -= c * U[src][j];
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& c) {  // col dst -= c col src
    for (std::size_t i = 0; i < R; ++i) A[i][dst] -= c * A[i][src];
    for (std::size_t i = 0; i < C; ++i) V[i][dst] -= c * V[i][src];
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    std::swap(A[a], A[b]);
    std::swap(U[a], U[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (auto& row : A) std::swap(row[a], row[b]);
    for (auto& row : V) std::swap(row[a], row[b]);
  };

  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      // Minimal absolute value pivot in the trailing block.
      std::size_t pi = R, pj = C;
      BigInt best = 0;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          if (A[i][j] == 0) continue;
          BigInt a = abs(A[i][j]);
          if (pi == R || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi == R) return out;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (A[i][t] == 0) continue;
        row_op(i, t, quot(A[i][t], A[t][t]));
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (A[t][j] == 0) continue;
        col_op(j, t, quot(A[t][j], A[t][t]));
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility of the trailing block by the pivot.
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j) {
          if (A[i][j] % A[t][t] != 0) {
            bad = i;
            break;
          }
        }
      if (bad == R) break;
      row_op(t, bad, BigInt(-1));  // row t += row bad, then re-reduce
    }
    if (A[t][t] < 0) {
      for (std::size_t j = 0; j < C; ++j) A[t][j] = -A[t][j];
      for (std::size_t j = 0; j < R; ++j) U[t][j] = -U[t][j];
    }
  }
  return out;
}

SnfResult snf(const IntMatrix& m) {
  const int R = m.rows();
  const int C = m.cols();
  std::vector<Row> rows(R);
  for (const auto& [i, j, v] : m.triples()) rows[i].emplace_back(j, BigInt(v));
  std::vector<std::set<int>> col_rows(C);
  for (int i = 0; i < R; ++i)
    for (const auto& [j, v] : rows[i]) col_rows[j].insert(i);

  std::vector<bool> row_alive(R, true), col_alive(C, true);
  using Item = std::pair<std::size_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int i = 0; i < R; ++i) {
    if (!rows[i].empty()) heap.emplace(rows[i].size(), i);
  }

  int unit_pivots = 0;
  while (!heap.empty()) {
    auto [len, i] = heap.top();
    heap.pop();
    if (!row_alive[i] || rows[i].size() != len || rows[i].empty()) continue;
    int pj = -1;
    std::size_t best = 0;
    for (const auto& [j, v] : rows[i]) {
      if (v != 1 && v != -1) continue;
      if (pj < 0 || col_rows[j].size() < best) {
        pj = j;
        best = col_rows[j].size();
      }
    }
    if (pj < 0) continue;  // no unit yet; re-queued if the row changes
    const BigInt p = std::find_if(rows[i].begin(), rows[i].end(), [&](const auto& e) { return e.first == pj; })->second;
    const std::vector<int> others(col_rows[pj].begin(), col_rows[pj].end());
    for (int k : others) {
      if (k == i) continue;
      const BigInt akj = std::find_if(rows[k].begin(), rows[k].end(), [&](const auto& e) { return e.first == pj; })->second;
      Row updated = axpy(rows[k], akj * p, rows[i]);
      for (const auto& [j, v] : rows[k]) col_rows[j].erase(k);
      rows[k] = std::move(updated);
      for (const auto& [j, v] : rows[k]) col_rows[j].insert(k);
      if (!rows[k].empty()) heap.emplace(rows[k].size(), k);
    }
    // The pivot column is now zero outside row i; column operations clear row i.
    for (const auto& [j, v] : rows[i]) col_rows[j].erase(i);
    rows[i].clear();
    row_alive[i] = false;
    col_alive[pj] = false;
    ++unit_pivots;
  }

  // Residual block.
  std::vector<int> res_rows, res_cols;
  std::vector<int> col_index(C, -1);
  for (int i = 0; i < R; ++i) {
    if (row_alive[i] && !rows[i].empty()) res_rows.push_back(i);
  }
  for (int i : res_rows)
    for (const auto& [j, v] : rows[i]) {
      if (col_index[j] < 0) {
        col_index[j] = static_cast<int>(res_cols.size());
        res_cols.push_back(j);
      }
    }

  SnfResult out;
  out.diagonal.assign(static_cast<std::size_t>(unit_pivots), BigInt(1));
  if (!res_rows.empty()) {
    Dense block(res_rows.size(), std::vector<BigInt>(res_cols.size(), 0));
    for (std::size_t a = 0; a < res_rows.size(); ++a)
      for (const auto& [j, v] : rows[res_rows[a]]) block[a][col_index[j]] = v;
    const DenseSnf d = dense_snf(block);
    const Dense check = multiply(multiply(d.U, block, res_cols.size()), d.V, res_cols.size());
    if (check != d.D) throw AssertionFailure("Smith normal form re-multiplication check failed");
    for (std::size_t i = 0; i < res_rows.size(); ++i)
      for (std::size_t j = 0; j < res_cols.size(); ++j) {
        if (i != j && d.D[i][j] != 0) throw AssertionFailure("Smith normal form is not diagonal");
      }
    for (std::size_t t = 0; t < std::min(res_rows.size(), res_cols.size()); ++t) {
      if (d.D[t][t] != 0) out.diagonal.push_back(d.D[t][t]);
    }
  }
  for (std::size_t k = 1; k < out.diagonal.size(); ++k) {
    if (out.diagonal[k] % out.diagonal[k - 1] != 0) throw AssertionFailure("Smith divisibility chain broken");
  }
  out.rank = static_cast<int>(out.diagonal.size());
  for (const auto& d : out.diagonal) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

}  // namespace btb
