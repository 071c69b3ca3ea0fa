#pragma once

// Parapermanents of triangular number tables over any Ring.
//
// For a lower-triangular B of order n, the key element b(i,j) determines the
// derived elements b(i,j), ..., b(i,i); their product is its factorial
// product {b(i,j)}. The parapermanent sums, over every composition
// (m_1..m_r) of n, the product of {b(N_s, N_{s-1}+1)} with N_s the prefix
// sums. Two evaluators are provided: the direct composition sum (2^(n-1)
// terms) and the last-row expansion pper(B_n) = sum_s {b(n,s)} pper(B_{s-1})
// (O(n^2) multiplications). pper(B_0) = 1.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zeta/arith.hpp"
#include "zeta/compositions.hpp"
#include "zeta/errors.hpp"

namespace zeta {

template <Ring T>
class TriangularMatrix {
 public:
  TriangularMatrix() = default;

  explicit TriangularMatrix(int order) : order_(order) {
    if (order < 0) throw InvalidArgument("negative matrix order");
    entries_.assign(offset(order + 1, 1), T(0));
  }

  /// rows[i-1] holds b(i,1..i).
  static TriangularMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    TriangularMatrix m(static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != i + 1) {
        throw InvalidArgument("row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(i + 1));
      }
      for (std::size_t j = 0; j <= i; ++j) m.at(static_cast<int>(i + 1), static_cast<int>(j + 1)) = rows[i][j];
    }
    return m;
  }

  int order() const { return order_; }
  std::size_t entry_count() const { return entries_.size(); }

  const T& at(int i, int j) const { return entries_[checked_offset(i, j)]; }
  T& at(int i, int j) { return entries_[checked_offset(i, j)]; }

  friend bool operator==(const TriangularMatrix&, const TriangularMatrix&) = default;

 private:
  static std::size_t offset(int i, int j) {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(i) / 2 +
           static_cast<std::size_t>(j - 1);
  }

  std::size_t checked_offset(int i, int j) const {
    if (j < 1 || j > i || i > order_) {
      throw InvalidArgument("index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside triangle of order " + std::to_string(order_));
    }
    return offset(i, j);
  }

  int order_ = 0;
  std::vector<T> entries_;
};

/// {b(i,j)} = b(i,j) * b(i,j+1) * ... * b(i,i).
template <Ring T>
T factorial_product(const TriangularMatrix<T>& b, int i, int j) {
  T prod = b.at(i, j);
  for (int k = j + 1; k <= i; ++k) prod *= b.at(i, k);
  return prod;
}

/// Table of all factorial products, built right-to-left per row.
template <Ring T>
TriangularMatrix<T> factorial_products(const TriangularMatrix<T>& b) {
  TriangularMatrix<T> f(b.order());
  for (int i = 1; i <= b.order(); ++i) {
    f.at(i, i) = b.at(i, i);
    for (int j = i - 1; j >= 1; --j) f.at(i, j) = b.at(i, j) * f.at(i, j + 1);
  }
  return f;
}

/// pper(B_0), ..., pper(B_n) by last-row expansion, given the factorial
/// products directly. Every prefix is computed once.
template <Ring T>
std::vector<T> pper_prefixes_from_factorial_products(const TriangularMatrix<T>& f) {
  const int n = f.order();
  std::vector<T> pper(static_cast<std::size_t>(n) + 1, T(0));
  pper[0] = T(1);
  for (int k = 1; k <= n; ++k) {
    T acc(0);
    for (int s = 1; s <= k; ++s) acc += f.at(k, s) * pper[static_cast<std::size_t>(s - 1)];
    pper[static_cast<std::size_t>(k)] = std::move(acc);
  }
  return pper;
}

template <Ring T>
T pper_by_last_row(const TriangularMatrix<T>& b) {
  return pper_prefixes_from_factorial_products(factorial_products(b)).back();
}

/// Direct composition sum over a table of factorial products.
template <Ring T>
T pper_by_compositions_from_factorial_products(const TriangularMatrix<T>& f, unsigned threads = 1) {
  const int n = f.order();
  return reduce_compositions(
      n, threads, T(0),
      [&f](T& acc, std::uint64_t, std::span<const int> parts) {
        T term(1);
        int prev = 0;
        for (int m : parts) {
          term *= f.at(prev + m, prev + 1);
          prev += m;
        }
        acc += term;
      },
      [](T a, T b) {
        a += b;
        return a;
      });
}

template <Ring T>
T pper_by_compositions(const TriangularMatrix<T>& b, unsigned threads = 1) {
  return pper_by_compositions_from_factorial_products(factorial_products(b), threads);
}

}  // namespace zeta
