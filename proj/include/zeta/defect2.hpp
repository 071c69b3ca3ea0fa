#pragma once

// Defect-2 curves over F_2, case (a): the trace vector of the reciprocal
// roots is +-(2, ..., 2, 0). With the angles phi_i = 1/4 (theta = pi/4,
// traces (+2,...,+2,0)) or phi_i = 3/4 (theta = 3pi/4, traces (-2,...,-2,0))
// and phi_g = 1/2, the coefficient a_n is the sum over compositions of n of
//
//   CR_theta(m) = (-1)^r 2^r 2^(n/2) prod_s C_theta(m_s) / (m_1 + ... + m_s),
//   C_theta(m)  = (g-1) cos(m theta) + cos(m pi/2),
//
// evaluated exactly in Q(sqrt 2). C_theta depends only on m mod 8.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zeta/arith.hpp"
#include "zeta/compositions.hpp"

namespace zeta {

/// Composition-sum paths enumerate 2^(n-1) terms; n = 24 is 8.4M.
inline constexpr int kMaxDefect2Order = 24;

enum class Theta { pi_4, three_pi_4 };

/// "pi4" / "3pi4".
const char* to_string(Theta t);

/// E_v = { m >= 1 : m = v (mod 8) }, v in 1..8.
class ResidueClass {
 public:
  static ResidueClass of(int m);
  int value() const { return value_; }
  bool contains(int m) const { return m >= 1 && of(m).value_ == value_; }
  friend bool operator==(ResidueClass, ResidueClass) = default;

 private:
  explicit ResidueClass(int v) : value_(v) {}
  int value_;
};

QuadExt c_theta(int m, int g, Theta theta);

QuadExt cr_theta(std::span<const int> parts, int g, Theta theta);
QuadExt cr_theta(const Composition& c, int g, Theta theta);

/// Sum of CR_theta over all compositions of n. The result must be a rational
/// integer; anything else raises ConsistencyError.
BigInt a_n_theta(int n, int g, Theta theta, unsigned threads = 1);

/// a_0..a_max_n by n a_n = sum_{i=1}^{n} -2^((i+2)/2) C_theta(i) a_{n-i}.
/// No enumeration, no cap on max_n.
std::vector<BigInt> theta_coeffs_recurrence(int max_n, int g, Theta theta);
BigInt a_n_theta_recurrence(int n, int g, Theta theta);

/// Number of a_{n,theta} values that passed the zero-sqrt2/integrality check
/// in this process.
std::uint64_t integrality_checks_performed();

/// Parity rule for the sign of CR_theta (g > 2): positive iff the number of
/// parts in E1 u E7 u E8 (pi/4) or E3 u E5 u E8 (3pi/4) is even.
Sign classify(std::span<const int> parts, int g, Theta theta);
Sign classify(const Composition& c, int g, Theta theta);

struct SignCounts {
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;

  std::int64_t difference() const { return static_cast<std::int64_t>(plus) - static_cast<std::int64_t>(minus); }
  std::uint64_t delta() const { return plus > minus ? plus - minus : minus - plus; }
  friend bool operator==(const SignCounts&, const SignCounts&) = default;
};

/// (P+, P-) over the compositions of n using `classify`; requires g > 2.
SignCounts count_signs(int n, int g, Theta theta, unsigned threads = 1);

/// Same counts from the exact sign of every CR_theta term; zero terms are in
/// neither count. Valid for every g >= 1.
SignCounts count_signs_exact(int n, int g, Theta theta, unsigned threads = 1);

struct SymmetryCheck {
  int n = 0;
  int g = 0;
  BigInt a_pi4;
  BigInt a_3pi4;
  bool sums_hold = false;      // a_{n,pi/4} = (-1)^n a_{n,3pi/4}
  bool termwise_hold = false;  // CR_{pi/4}(m) = (-1)^n CR_{3pi/4}(m) for every m
  bool holds() const { return sums_hold && termwise_hold; }
};

SymmetryCheck verify_symmetry(int n, int g, unsigned threads = 1);

enum class Claim { holds, fails, vacuous, conjecture };

const char* to_string(Claim c);

/// Checks the sign-pattern and growth claims for a_{0..g,theta}: a_{n,pi/4}
/// alternates (negative for odd n), a_{n,3pi/4} > 0, |a_n| increasing.
struct SignTheoremReport {
  int g = 0;
  bool conjecture_mode = false;  // g outside the proven range 1..6
  std::vector<BigInt> a_pi4;     // a_0..a_g
  std::vector<BigInt> a_3pi4;
  Claim signs_pi4 = Claim::fails;
  Claim signs_3pi4 = Claim::fails;
  Claim growth_weak = Claim::fails;    // |a_{n-1}| <= |a_n|
  Claim growth_strict = Claim::fails;  // |a_{n-1}| <  |a_n|
  bool methods_agree = false;          // composition sums vs recurrence (g <= 6)

  /// True when every measured claim holds or is vacuous.
  bool holds() const;
};

SignTheoremReport verify_theorem_signs(int g, unsigned threads = 1);

/// Measured verdict for the count-difference claims at n given the counts at
/// n and, when n >= 7, at n-1. Requires g > 2 for the counts to be meaningful.
Claim check_count_claims(int n, Theta theta, const SignCounts& at_n, const SignCounts* at_prev);

enum class ThetaSelection { pi_4, three_pi_4, both };

bool selects(ThetaSelection sel, Theta t);

struct Defect2Row {
  int n = 0;
  BigInt a_pi4;
  BigInt a_3pi4;
  std::optional<SignCounts> counts_pi4;
  std::optional<SignCounts> counts_3pi4;
  bool symmetry = false;
  Claim counts_claim = Claim::vacuous;
  Claim sign_theorem = Claim::vacuous;
};

struct Defect2Report {
  int g = 0;
  int max_n = 0;
  ThetaSelection selection = ThetaSelection::both;
  std::vector<Defect2Row> rows;
  SignTheoremReport theorem;           // over n <= max_n
  bool methods_agree = false;          // composition sums vs recurrence
  bool oracle_match_pi4 = false;       // vs coefficients from traces (+2,...,+2,0)
  bool oracle_match_3pi4 = false;      // vs coefficients from traces (-2,...,-2,0)
};

/// Throws InvalidArgument unless 1 <= max_n <= min(g, kMaxDefect2Order).
Defect2Report analyze(int g, int max_n, ThetaSelection selection, unsigned threads = 1);

/// Trace vector (s, ..., s, 0) of length g with s = +2 for pi/4, -2 for 3pi/4.
std::vector<BigInt> case_a_traces(int g, Theta theta);

}  // namespace zeta
