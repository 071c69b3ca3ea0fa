#include "zeta/arith.hpp"

#include <cctype>
#include <cmath>

#include "zeta/errors.hpp"

namespace zeta {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  std::string_view s = trim(text);
  if (!is_decimal_integer(s)) {
    throw InvalidArgument("not an integer: '" + std::string(text) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  v_.get_num() = num;
  v_.get_den() = den;
  v_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_bigint(s));
  const std::string_view den = trim(s.substr(slash + 1));
  if (den.empty() || den.front() == '-' || den.front() == '+') {
    throw InvalidArgument("malformed rational: '" + std::string(text) + "'");
  }
  return BigRational(parse_bigint(s.substr(0, slash)), parse_bigint(den));
}

BigRational BigRational::operator-() const {
  BigRational r;
  mpq_neg(r.v_.get_mpq_t(), v_.get_mpq_t());
  return r;
}

BigRational& BigRational::operator+=(const BigRational& o) {
  mpq_add(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
  return *this;
}

BigRational& BigRational::operator-=(const BigRational& o) {
  mpq_sub(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
  return *this;
}

BigRational& BigRational::operator*=(const BigRational& o) {
  mpq_mul(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
  return *this;
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw InvalidArgument("division by zero");
  mpq_div(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
  return *this;
}

BigRational operator*(const BigRational& a, const BigRational& b) {
  BigRational r;
  mpq_mul(r.v_.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
  return r;
}

BigInt to_bigint(const BigRational& r) {
  if (!r.is_integer()) throw InvalidArgument("not an integer: " + r.to_string());
  return r.num_ref();
}

const char* to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "?";
}

double QuadExt::to_double() const { return rat_.to_double() + irr_.to_double() * std::sqrt(2.0); }

std::string QuadExt::to_string() const { return rat_.to_string() + " + " + irr_.to_string() + "*sqrt2"; }

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  rat_ += o.rat_;
  irr_ += o.irr_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  rat_ -= o.rat_;
  irr_ -= o.irr_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) { return *this = *this * o; }

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  // Products of "pure" elements (rational, or rational * sqrt2) dominate the
  // defect-2 sums; each costs one rational multiply instead of four.
  const bool x_rat = x.irr_.is_zero();
  const bool y_rat = y.irr_.is_zero();
  if (x_rat && y_rat) return {x.rat_ * y.rat_, BigRational()};
  const bool x_irr = x.rat_.is_zero();
  const bool y_irr = y.rat_.is_zero();
  if (x_irr && y_irr) return {x.irr_ * y.irr_ * BigRational(2), BigRational()};
  if (x_rat && y_irr) return {BigRational(), x.rat_ * y.irr_};
  if (x_irr && y_rat) return {BigRational(), x.irr_ * y.rat_};
  return {x.rat_ * y.rat_ + BigRational(2) * x.irr_ * y.irr_, x.rat_ * y.irr_ + x.irr_ * y.rat_};
}

QuadExt quad_mul(const QuadExt& x, const QuadExt& y) { return x * y; }

Sign quad_sign(const QuadExt& x) {
  const int sr = x.rat().sign();
  const int si = x.irr().sign();
  if (si == 0 || sr == si) return static_cast<Sign>(sr);
  if (sr == 0) return static_cast<Sign>(si);
  // Opposite signs: the term with the larger square wins. Equality would
  // make sqrt(2) rational.
  const BigRational rat_sq = x.rat() * x.rat();
  const BigRational irr_sq = BigRational(2) * x.irr() * x.irr();
  return static_cast<Sign>(rat_sq > irr_sq ? sr : si);
}

QuadExt pow2_half(unsigned n) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, n / 2);
  if (n % 2 == 0) return {BigRational(p), BigRational()};
  return {BigRational(), BigRational(p)};
}

}  // namespace zeta
