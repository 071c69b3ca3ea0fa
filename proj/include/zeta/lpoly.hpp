#pragma once

// L-polynomial coefficients of a function field F/F_q of genus g.
//
// Input is either point counts N_1..N_g over the constant field extensions
// or the traces t_i = alpha_i + conj(alpha_i) of the g conjugate pairs of
// reciprocal roots. With S_r = N_r - (q^r + 1), the first g+1 coefficients
// follow from any of three equivalent routes (Newton-type recurrence,
// last-row parapermanent expansion, composition sum); the remaining ones
// from the functional equation a_{2g-i} = q^(g-i) a_i.

#include <optional>
#include <span>
#include <vector>

#include "zeta/arith.hpp"
#include "zeta/parapermanent.hpp"

namespace zeta {

/// Composition-sum routes enumerate 2^(g-1) terms for a_g.
inline constexpr int kMaxCompositionGenus = 30;

/// True when q = p^k for a prime p and k >= 1.
bool is_prime_power(const BigInt& q);

struct FieldParams {
  BigInt q;
  int g = 0;

  /// Throws InvalidArgument unless q >= 2 and g >= 0; the prime-power test
  /// is applied when `check_prime_power` is set.
  void validate(bool check_prime_power = true) const;
};

class SSequence {
 public:
  SSequence(BigInt q, std::vector<BigInt> s);

  const BigInt& q() const { return q_; }
  int genus() const { return static_cast<int>(s_.size()); }
  const std::vector<BigInt>& values() const { return s_; }

  /// S_r, 1-based.
  const BigInt& at(int r) const;

  /// N_r = S_r + q^r + 1.
  BigInt point_count(int r) const;

  /// |S_r| <= 2g q^(r/2) for every r, decided exactly as S_r^2 <= 4 g^2 q^r.
  bool within_weil_bound() const;

 private:
  BigInt q_;
  std::vector<BigInt> s_;
};

/// Integer traces t_1..t_g with t_i^2 <= 4q.
class TraceData {
 public:
  TraceData(BigInt q, std::vector<BigInt> traces);

  const BigInt& q() const { return q_; }
  int genus() const { return static_cast<int>(traces_.size()); }
  const std::vector<BigInt>& traces() const { return traces_; }

 private:
  BigInt q_;
  std::vector<BigInt> traces_;
};

struct LPolynomial {
  BigInt q;
  int g = 0;
  std::vector<BigInt> coeffs;  // a_0 .. a_{2g}

  /// a_0 = 1 and a_{2g-i} = q^(g-i) a_i for 0 <= i <= g.
  bool satisfies_functional_equation() const;

  friend bool operator==(const LPolynomial&, const LPolynomial&) = default;
};

SSequence s_from_counts(const BigInt& q, std::span<const BigInt> counts);

/// N_r = q^r + 1 - sum_i p_r(t_i), with p_0 = 2, p_1 = t, p_r = t p_{r-1} - q p_{r-2}.
BigInt n_from_traces(const TraceData& td, int r);

/// S_1..S_g from traces; verifies the Weil bound.
SSequence s_from_traces(const TraceData& td);

/// Raw recurrence i a_i = sum_{j=1}^{i} S_j a_{i-j} over Q, no integrality check.
std::vector<BigRational> recurrence_rational(const SSequence& s);

/// a_0..a_g by the recurrence; ConsistencyError if some a_i is not an integer.
std::vector<BigInt> coeffs_by_recurrence(const SSequence& s);

/// Factorial products {b(i,j)} = S_{i+1-j} / i of the coefficient matrix.
TriangularMatrix<BigRational> telescoped_factorial_products(const SSequence& s);

/// The entry-level matrix b(i,j) = S_{i+1-j}/S_{i-j} (j < i), b(i,i) = S_1/i.
/// Only defined when S_1..S_{g-1} are all nonzero.
std::optional<TriangularMatrix<BigRational>> literal_coefficient_matrix(const SSequence& s);

/// a_i = pper(B_i), i = 0..g, by last-row expansion on telescoped products.
std::vector<BigRational> coeffs_by_parapermanent(const SSequence& s);

/// a_i = sum over compositions of i of prod_s S_{m_s} / (m_1 + ... + m_s).
/// Throws InvalidArgument when g > kMaxCompositionGenus.
std::vector<BigRational> coeffs_by_compositions(const SSequence& s, unsigned threads = 1);
BigRational coefficient_by_compositions(const SSequence& s, int i, unsigned threads = 1);

LPolynomial complete(std::span<const BigInt> head, const BigInt& q, int g);

/// h = L(1); ConsistencyError when h <= 0.
BigInt class_number(const LPolynomial& l);

/// h = 1 + q^g + sum_{i<g} (1 + q^(g-i)) a_i + a_g with a_i from composition sums.
BigInt class_number_formula(const SSequence& s, unsigned threads = 1);
BigInt class_number_formula(const TraceData& td, unsigned threads = 1);

/// a_0..a_g from traces via point counts and the recurrence.
std::vector<BigInt> coeffs_from_traces(const TraceData& td);

/// prod_i (1 - t_i T + q T^2), expanded exactly.
LPolynomial oracle_expand(const TraceData& td);

}  // namespace zeta
