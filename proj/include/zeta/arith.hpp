#pragma once

/**
 * @file arith.hpp
 * @brief Exact scalars: big integers, reduced rationals, and Q(sqrt 2).
 *
 * BigInt is GMP's mpz_class. BigRational wraps mpq_class and keeps it in
 * canonical form (positive denominator, coprime parts), so structural
 * equality is value equality. QuadExt is a + b*sqrt(2) over BigRational; its
 * sign is decided by comparing squares, never by floating point.
 */

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace zeta {

using BigInt = mpz_class;

/// Parses a decimal integer, optionally signed. Throws InvalidArgument.
BigInt parse_bigint(std::string_view text);

/// Minimal ring contract shared by the parapermanent evaluators.
template <class T>
concept Ring = std::regular<T> && requires(T a, const T b) {
  T(0);
  T(1);
  { b + b } -> std::convertible_to<T>;
  { b * b } -> std::convertible_to<T>;
  a += b;
  a *= b;
};

class BigRational {
 public:
  BigRational() = default;

  template <std::integral I>
  BigRational(I value)  // NOLINT(google-explicit-constructor)
      : v_(static_cast<std::conditional_t<std::is_signed_v<I>, long, unsigned long>>(value)) {}

  BigRational(const BigInt& value) : v_(value) {}  // NOLINT(google-explicit-constructor)

  /// num/den reduced; throws InvalidArgument when den == 0.
  BigRational(const BigInt& num, const BigInt& den);

  /// Accepts "p" or "p/q" (decimal, optional leading minus).
  static BigRational parse(std::string_view text);

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  const mpz_class& num_ref() const { return v_.get_num(); }
  const mpz_class& den_ref() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const { return v_.get_str(); }

  BigRational operator-() const;
  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(const BigRational& a, const BigRational& b);
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

/// Checked conversion; throws InvalidArgument when `r` is not an integer.
BigInt to_bigint(const BigRational& r);

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

constexpr Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }

const char* to_string(Sign s);

/// rat + irr * sqrt(2).
class QuadExt {
 public:
  QuadExt() = default;

  template <std::integral I>
  QuadExt(I value) : rat_(value) {}  // NOLINT(google-explicit-constructor)

  QuadExt(BigRational rat) : rat_(std::move(rat)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(BigRational rat, BigRational irr) : rat_(std::move(rat)), irr_(std::move(irr)) {}

  const BigRational& rat() const { return rat_; }
  const BigRational& irr() const { return irr_; }

  bool is_zero() const { return rat_.is_zero() && irr_.is_zero(); }
  bool is_rational() const { return irr_.is_zero(); }
  double to_double() const;

  /// "a + b*sqrt2" with rationals in p/q form.
  std::string to_string() const;

  QuadExt operator-() const { return {-rat_, -irr_}; }
  QuadExt scaled(const BigRational& c) const { return {rat_ * c, irr_ * c}; }
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);

  friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
  friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator/(const QuadExt& x, const BigRational& c) { return {x.rat_ / c, x.irr_ / c}; }

  friend bool operator==(const QuadExt&, const QuadExt&) = default;

 private:
  BigRational rat_;
  BigRational irr_;
};

QuadExt quad_mul(const QuadExt& x, const QuadExt& y);

/// Exact sign of x.rat + x.irr*sqrt(2).
Sign quad_sign(const QuadExt& x);

/// 2^(n/2): (2^(n/2), 0) for even n, (0, 2^((n-1)/2)) for odd n.
QuadExt pow2_half(unsigned n);

}  // namespace zeta
