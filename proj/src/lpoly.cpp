#include "zeta/lpoly.hpp"

#include <string>

#include <json.hpp>

#include "zeta/compositions.hpp"
#include "zeta/errors.hpp"

namespace zeta {

namespace {

using Json = nlohmann::ordered_json;

BigInt power(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Json strings(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json strings(const std::vector<BigRational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

void require_q(const BigInt& q) {
  if (q < 2) throw InvalidArgument("q must be >= 2, got " + q.get_str());
}

}  // namespace

bool is_prime_power(const BigInt& q) {
  if (q < 2) return false;
  if (mpz_probab_prime_p(q.get_mpz_t(), 40) > 0) return true;
  const auto bits = mpz_sizeinbase(q.get_mpz_t(), 2);
  BigInt root;
  for (unsigned long k = 2; k <= bits; ++k) {
    if (mpz_root(root.get_mpz_t(), q.get_mpz_t(), k) != 0) {
      if (mpz_probab_prime_p(root.get_mpz_t(), 40) > 0) return true;
    }
  }
  return false;
}

void FieldParams::validate(bool check_prime_power) const {
  require_q(q);
  if (g < 0) throw InvalidArgument("genus g must be >= 0, got " + std::to_string(g));
  if (check_prime_power && !is_prime_power(q)) {
    throw InvalidArgument("q=" + q.get_str() + " is not a prime power");
  }
}

SSequence::SSequence(BigInt q, std::vector<BigInt> s) : q_(std::move(q)), s_(std::move(s)) { require_q(q_); }

const BigInt& SSequence::at(int r) const {
  if (r < 1 || r > genus()) {
    throw InvalidArgument("S index " + std::to_string(r) + " outside [1, " + std::to_string(genus()) + "]");
  }
  return s_[static_cast<std::size_t>(r - 1)];
}

BigInt SSequence::point_count(int r) const {
  return at(r) + power(q_, static_cast<unsigned long>(r)) + 1;
}

bool SSequence::within_weil_bound() const {
  const BigInt g = genus();
  for (int r = 1; r <= genus(); ++r) {
    const BigInt& sr = at(r);
    if (sr * sr > 4 * g * g * power(q_, static_cast<unsigned long>(r))) return false;
  }
  return true;
}

TraceData::TraceData(BigInt q, std::vector<BigInt> traces) : q_(std::move(q)), traces_(std::move(traces)) {
  require_q(q_);
  for (std::size_t i = 0; i < traces_.size(); ++i) {
    if (traces_[i] * traces_[i] > 4 * q_) {
      throw InvalidArgument("trace t" + std::to_string(i + 1) + "=" + traces_[i].get_str() +
                            " violates t^2 <= 4q for q=" + q_.get_str());
    }
  }
}

bool LPolynomial::satisfies_functional_equation() const {
  if (g < 0 || coeffs.size() != static_cast<std::size_t>(2 * g + 1)) return false;
  if (coeffs[0] != 1) return false;
  for (int i = 0; i <= g; ++i) {
    const auto lhs = coeffs[static_cast<std::size_t>(2 * g - i)];
    if (lhs != power(q, static_cast<unsigned long>(g - i)) * coeffs[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

SSequence s_from_counts(const BigInt& q, std::span<const BigInt> counts) {
  require_q(q);
  if (counts.empty()) throw InvalidArgument("need at least one point count (g >= 1)");
  std::vector<BigInt> s;
  s.reserve(counts.size());
  for (std::size_t r = 1; r <= counts.size(); ++r) {
    const BigInt& n = counts[r - 1];
    if (n < 0) throw InvalidArgument("point count N" + std::to_string(r) + " is negative");
    s.push_back(n - (power(q, r) + 1));
  }
  return {q, std::move(s)};
}

BigInt n_from_traces(const TraceData& td, int r) {
  if (r < 1) throw InvalidArgument("extension degree r must be >= 1");
  BigInt sum = 0;
  for (const BigInt& t : td.traces()) {
    BigInt prev = 2;
    BigInt cur = t;
    for (int k = 2; k <= r; ++k) {
      BigInt next = t * cur - td.q() * prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    sum += cur;
  }
  return power(td.q(), static_cast<unsigned long>(r)) + 1 - sum;
}

SSequence s_from_traces(const TraceData& td) {
  std::vector<BigInt> s;
  for (int r = 1; r <= td.genus(); ++r) {
    s.push_back(n_from_traces(td, r) - (power(td.q(), static_cast<unsigned long>(r)) + 1));
  }
  SSequence seq(td.q(), std::move(s));
  if (!seq.within_weil_bound()) {
    Json state = {{"q", td.q().get_str()}, {"traces", strings(td.traces())}, {"S", strings(seq.values())}};
    throw ConsistencyError("S-values from traces exceed the Weil bound", state.dump());
  }
  return seq;
}

std::vector<BigRational> recurrence_rational(const SSequence& s) {
  const int g = s.genus();
  std::vector<BigRational> a(static_cast<std::size_t>(g) + 1);
  a[0] = BigRational(1);
  for (int i = 1; i <= g; ++i) {
    BigRational acc;
    for (int j = 1; j <= i; ++j) acc += BigRational(s.at(j)) * a[static_cast<std::size_t>(i - j)];
    a[static_cast<std::size_t>(i)] = acc / BigRational(i);
  }
  return a;
}

std::vector<BigInt> coeffs_by_recurrence(const SSequence& s) {
  const auto a = recurrence_rational(s);
  std::vector<BigInt> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_integer()) {
      Json state = {{"q", s.q().get_str()},
                    {"S", strings(s.values())},
                    {"coeffs", strings(a)},
                    {"first_non_integral", i}};
      throw ConsistencyError("coefficient a" + std::to_string(i) + " = " + a[i].to_string() +
                                 " is not an integer; the S-data is not zeta data",
                             state.dump());
    }
    out.push_back(a[i].num_ref());
  }
  return out;
}

TriangularMatrix<BigRational> telescoped_factorial_products(const SSequence& s) {
  const int g = s.genus();
  TriangularMatrix<BigRational> f(g);
  for (int i = 1; i <= g; ++i) {
    for (int j = 1; j <= i; ++j) f.at(i, j) = BigRational(s.at(i + 1 - j), BigInt(i));
  }
  return f;
}

std::optional<TriangularMatrix<BigRational>> literal_coefficient_matrix(const SSequence& s) {
  const int g = s.genus();
  for (int r = 1; r < g; ++r) {
    if (s.at(r) == 0) return std::nullopt;
  }
  TriangularMatrix<BigRational> b(g);
  for (int i = 1; i <= g; ++i) {
    for (int j = 1; j < i; ++j) b.at(i, j) = BigRational(s.at(i + 1 - j), s.at(i - j));
    b.at(i, i) = BigRational(s.at(1), BigInt(i));
  }
  return b;
}

std::vector<BigRational> coeffs_by_parapermanent(const SSequence& s) {
  return pper_prefixes_from_factorial_products(telescoped_factorial_products(s));
}

BigRational coefficient_by_compositions(const SSequence& s, int i, unsigned threads) {
  if (i < 0 || i > s.genus()) throw InvalidArgument("coefficient index outside [0, g]");
  if (i > kMaxCompositionGenus) {
    throw InvalidArgument("composition sum for a" + std::to_string(i) + " exceeds the cap g <= " +
                          std::to_string(kMaxCompositionGenus));
  }
  const auto& sv = s.values();
  return reduce_compositions(
      i, threads, BigRational(),
      [&sv](BigRational& acc, std::uint64_t, std::span<const int> parts) {
        BigInt num = 1;
        BigInt den = 1;
        int prefix = 0;
        for (int m : parts) {
          prefix += m;
          num *= sv[static_cast<std::size_t>(m - 1)];
          den *= prefix;
        }
        if (num != 0) acc += BigRational(num, den);
      },
      [](BigRational a, const BigRational& b) { return a += b; });
}

std::vector<BigRational> coeffs_by_compositions(const SSequence& s, unsigned threads) {
  if (s.genus() > kMaxCompositionGenus) {
    throw InvalidArgument("composition method limited to g <= " + std::to_string(kMaxCompositionGenus) +
                          ", got g=" + std::to_string(s.genus()));
  }
  std::vector<BigRational> a;
  for (int i = 0; i <= s.genus(); ++i) a.push_back(coefficient_by_compositions(s, i, threads));
  return a;
}

LPolynomial complete(std::span<const BigInt> head, const BigInt& q, int g) {
  if (g < 0 || head.size() != static_cast<std::size_t>(g) + 1) {
    throw InvalidArgument("complete() needs exactly g+1 leading coefficients");
  }
  LPolynomial l{q, g, std::vector<BigInt>(static_cast<std::size_t>(2 * g + 1))};
  for (int i = 0; i <= g; ++i) {
    l.coeffs[static_cast<std::size_t>(i)] = head[static_cast<std::size_t>(i)];
    l.coeffs[static_cast<std::size_t>(2 * g - i)] =
        power(q, static_cast<unsigned long>(g - i)) * head[static_cast<std::size_t>(i)];
  }
  return l;
}

BigInt class_number(const LPolynomial& l) {
  BigInt h = 0;
  for (const auto& a : l.coeffs) h += a;
  if (h <= 0) {
    Json state = {{"q", l.q.get_str()}, {"g", l.g}, {"coeffs", strings(l.coeffs)}, {"h", h.get_str()}};
    throw ConsistencyError("class number L(1) = " + h.get_str() + " is not positive", state.dump());
  }
  return h;
}

BigInt class_number_formula(const SSequence& s, unsigned threads) {
  const int g = s.genus();
  if (g < 1) throw InvalidArgument("class number formula needs g >= 1");
  const auto a = coeffs_by_compositions(s, threads);
  BigRational h = BigRational(BigInt(1 + power(s.q(), static_cast<unsigned long>(g))));
  for (int i = 1; i < g; ++i) {
    h += BigRational(BigInt(1 + power(s.q(), static_cast<unsigned long>(g - i)))) * a[static_cast<std::size_t>(i)];
  }
  h += a[static_cast<std::size_t>(g)];
  if (!h.is_integer() || h.sign() <= 0) {
    Json state = {{"q", s.q().get_str()}, {"S", strings(s.values())}, {"coeffs", strings(a)}, {"h", h.to_string()}};
    throw ConsistencyError("class number formula gave " + h.to_string() + ", not a positive integer",
                           state.dump());
  }
  return h.num_ref();
}

BigInt class_number_formula(const TraceData& td, unsigned threads) {
  return class_number_formula(s_from_traces(td), threads);
}

std::vector<BigInt> coeffs_from_traces(const TraceData& td) { return coeffs_by_recurrence(s_from_traces(td)); }

LPolynomial oracle_expand(const TraceData& td) {
  std::vector<BigInt> p{1};
  for (const BigInt& t : td.traces()) {
    std::vector<BigInt> next(p.size() + 2, BigInt(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] += p[i];
      next[i + 1] -= t * p[i];
      next[i + 2] += td.q() * p[i];
    }
    p = std::move(next);
  }
  return {td.q(), td.genus(), std::move(p)};
}

}  // namespace zeta
