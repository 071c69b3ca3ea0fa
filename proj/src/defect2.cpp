#include "zeta/defect2.hpp"

#include <atomic>
#include <string>

#include <json.hpp>

#include "zeta/errors.hpp"
#include "zeta/lpoly.hpp"

namespace zeta {

namespace {

using Json = nlohmann::ordered_json;

std::atomic<std::uint64_t> g_integrality_checks{0};

void require_genus(int g) {
  if (g < 1) throw InvalidArgument("genus g must be >= 1, got " + std::to_string(g));
}

void require_order(int n, int g) {
  require_genus(g);
  if (n < 1 || n > g) {
    throw InvalidArgument("n=" + std::to_string(n) + " outside [1, g=" + std::to_string(g) + "]");
  }
}

void require_enumerable(int n) {
  if (n > kMaxDefect2Order) {
    throw InvalidArgument("composition sum at n=" + std::to_string(n) + " exceeds the cap n <= " +
                          std::to_string(kMaxDefect2Order));
  }
}

// Per-part factors -2 C_theta(m) for m = 1..n, so that
// CR(m) = 2^(n/2) * prod_s w(m_s) / prod_s N_s.
class TermEvaluator {
 public:
  TermEvaluator(int n, int g, Theta theta) : n_(n), scale_(pow2_half(static_cast<unsigned>(n))) {
    weights_.reserve(static_cast<std::size_t>(n));
    for (int m = 1; m <= n; ++m) weights_.push_back(-c_theta(m, g, theta).scaled(BigRational(2)));
  }

  QuadExt operator()(std::span<const int> parts) const {
    QuadExt prod = scale_;
    BigInt den = 1;
    int prefix = 0;
    for (int m : parts) {
      prefix += m;
      prod = prod * weights_[static_cast<std::size_t>(m - 1)];
      den *= prefix;
    }
    return prod / BigRational(den);
  }

  int order() const { return n_; }

 private:
  int n_;
  QuadExt scale_;
  std::vector<QuadExt> weights_;
};

BigInt checked_integer(const QuadExt& value, int n, int g, Theta theta, const char* route) {
  if (!value.is_rational() || !value.rat().is_integer()) {
    Json state = {{"n", n},
                  {"g", g},
                  {"theta", to_string(theta)},
                  {"route", route},
                  {"rat", value.rat().to_string()},
                  {"irr", value.irr().to_string()}};
    throw ConsistencyError(std::string("a_{n,theta} is not a rational integer (") + route + "): " +
                               value.to_string(),
                           state.dump());
  }
  g_integrality_checks.fetch_add(1, std::memory_order_relaxed);
  return value.rat().num_ref();
}

QuadExt add(QuadExt a, const QuadExt& b) { return a += b; }

int compare_abs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

Claim strict_sign_claim(const std::vector<BigInt>& a, Theta theta) {
  for (std::size_t n = 0; n < a.size(); ++n) {
    const int want = (theta == Theta::pi_4 && n % 2 == 1) ? -1 : 1;
    if (sgn(a[n]) != want) return Claim::fails;
  }
  return Claim::holds;
}

Claim growth_claim(const std::vector<BigInt>& a, bool strict) {
  for (std::size_t n = 1; n < a.size(); ++n) {
    const int c = compare_abs(a[n - 1], a[n]);
    if (strict ? c >= 0 : c > 0) return Claim::fails;
  }
  return Claim::holds;
}

SignTheoremReport evaluate_sign_theorem(int g, std::vector<BigInt> a_pi4, std::vector<BigInt> a_3pi4) {
  SignTheoremReport r;
  r.g = g;
  r.conjecture_mode = g > 6;
  if (g == 1) {
    // a_1 = 0 on both branches: no strict sign, no growth from |a_0| = 1.
    r.signs_pi4 = r.signs_3pi4 = r.growth_weak = r.growth_strict = Claim::vacuous;
  } else {
    r.signs_pi4 = strict_sign_claim(a_pi4, Theta::pi_4);
    r.signs_3pi4 = strict_sign_claim(a_3pi4, Theta::three_pi_4);
    const bool weak = growth_claim(a_pi4, false) == Claim::holds && growth_claim(a_3pi4, false) == Claim::holds;
    const bool strict = growth_claim(a_pi4, true) == Claim::holds && growth_claim(a_3pi4, true) == Claim::holds;
    r.growth_weak = weak ? Claim::holds : Claim::fails;
    r.growth_strict = strict ? Claim::holds : Claim::fails;
  }
  r.a_pi4 = std::move(a_pi4);
  r.a_3pi4 = std::move(a_3pi4);
  return r;
}

}  // namespace

const char* to_string(Theta t) { return t == Theta::pi_4 ? "pi4" : "3pi4"; }

const char* to_string(Claim c) {
  switch (c) {
    case Claim::holds: return "holds";
    case Claim::fails: return "fails";
    case Claim::vacuous: return "vacuous";
    case Claim::conjecture: return "conjecture";
  }
  return "?";
}

ResidueClass ResidueClass::of(int m) {
  if (m < 1) throw InvalidArgument("residue classes E_v contain positive integers only");
  return ResidueClass((m - 1) % 8 + 1);
}

QuadExt c_theta(int m, int g, Theta theta) {
  require_genus(g);
  const int e = ResidueClass::of(m).value();
  const BigRational half_g1(BigInt(g - 1), BigInt(2));
  const bool odd_positive = theta == Theta::pi_4 ? (e == 1 || e == 7) : (e == 3 || e == 5);
  switch (e) {
    case 1: case 3: case 5: case 7:
      return {BigRational(), odd_positive ? half_g1 : -half_g1};
    case 2: case 6:
      return QuadExt(-1);
    case 4:
      return QuadExt(BigRational(2 - g));
    default:
      return QuadExt(BigRational(g));
  }
}

QuadExt cr_theta(std::span<const int> parts, int g, Theta theta) {
  int n = 0;
  for (int m : parts) n += m;
  return TermEvaluator(n, g, theta)(parts);
}

QuadExt cr_theta(const Composition& c, int g, Theta theta) { return cr_theta(c.view(), g, theta); }

BigInt a_n_theta(int n, int g, Theta theta, unsigned threads) {
  require_order(n, g);
  require_enumerable(n);
  const TermEvaluator term(n, g, theta);
  const QuadExt sum = reduce_compositions(
      n, threads, QuadExt(),
      [&term](QuadExt& acc, std::uint64_t, std::span<const int> parts) { acc += term(parts); }, add);
  return checked_integer(sum, n, g, theta, "compositions");
}

std::vector<BigInt> theta_coeffs_recurrence(int max_n, int g, Theta theta) {
  require_genus(g);
  if (max_n < 0) throw InvalidArgument("max_n must be >= 0");
  std::vector<QuadExt> factor;  // factor[i] = -2^((i+2)/2) C_theta(i)
  factor.reserve(static_cast<std::size_t>(max_n) + 1);
  factor.emplace_back();
  for (int i = 1; i <= max_n; ++i) factor.push_back(-(pow2_half(static_cast<unsigned>(i + 2)) * c_theta(i, g, theta)));

  std::vector<QuadExt> a{QuadExt(1)};
  std::vector<BigInt> out{BigInt(1)};
  for (int n = 1; n <= max_n; ++n) {
    QuadExt acc;
    for (int i = 1; i <= n; ++i) acc += factor[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(n - i)];
    const QuadExt an = acc / BigRational(n);
    out.push_back(checked_integer(an, n, g, theta, "recurrence"));
    a.emplace_back(BigRational(out.back()));
  }
  return out;
}

BigInt a_n_theta_recurrence(int n, int g, Theta theta) {
  require_order(n, g);
  return theta_coeffs_recurrence(n, g, theta).back();
}

std::uint64_t integrality_checks_performed() { return g_integrality_checks.load(std::memory_order_relaxed); }

Sign classify(std::span<const int> parts, int g, Theta theta) {
  if (g <= 2) throw InvalidArgument("sign classification requires g > 2, got g=" + std::to_string(g));
  int odd_count = 0;
  for (int m : parts) {
    const int e = ResidueClass::of(m).value();
    const bool flagged = theta == Theta::pi_4 ? (e == 1 || e == 7 || e == 8) : (e == 3 || e == 5 || e == 8);
    if (flagged) ++odd_count;
  }
  return odd_count % 2 == 0 ? Sign::positive : Sign::negative;
}

Sign classify(const Composition& c, int g, Theta theta) { return classify(c.view(), g, theta); }

namespace {

SignCounts add_counts(SignCounts a, const SignCounts& b) {
  a.plus += b.plus;
  a.minus += b.minus;
  return a;
}

}  // namespace

SignCounts count_signs(int n, int g, Theta theta, unsigned threads) {
  if (g <= 2) throw InvalidArgument("sign counts require g > 2, got g=" + std::to_string(g));
  if (n < 1) throw InvalidArgument("n must be >= 1");
  require_enumerable(n);
  return reduce_compositions(
      n, threads, SignCounts{},
      [g, theta](SignCounts& acc, std::uint64_t, std::span<const int> parts) {
        if (classify(parts, g, theta) == Sign::positive) {
          ++acc.plus;
        } else {
          ++acc.minus;
        }
      },
      add_counts);
}

SignCounts count_signs_exact(int n, int g, Theta theta, unsigned threads) {
  require_genus(g);
  if (n < 1) throw InvalidArgument("n must be >= 1");
  require_enumerable(n);
  const TermEvaluator term(n, g, theta);
  return reduce_compositions(
      n, threads, SignCounts{},
      [&term](SignCounts& acc, std::uint64_t, std::span<const int> parts) {
        const Sign s = quad_sign(term(parts));
        if (s == Sign::positive) ++acc.plus;
        if (s == Sign::negative) ++acc.minus;
      },
      add_counts);
}

SymmetryCheck verify_symmetry(int n, int g, unsigned threads) {
  require_order(n, g);
  require_enumerable(n);
  struct Acc {
    QuadExt pi4;
    QuadExt three_pi4;
    bool termwise = true;
  };
  const TermEvaluator t1(n, g, Theta::pi_4);
  const TermEvaluator t3(n, g, Theta::three_pi_4);
  const bool even = n % 2 == 0;
  const Acc acc = reduce_compositions(
      n, threads, Acc{},
      [&](Acc& a, std::uint64_t, std::span<const int> parts) {
        const QuadExt c1 = t1(parts);
        const QuadExt c3 = t3(parts);
        if (c1 != (even ? c3 : -c3)) a.termwise = false;
        a.pi4 += c1;
        a.three_pi4 += c3;
      },
      [](Acc a, const Acc& b) {
        a.pi4 += b.pi4;
        a.three_pi4 += b.three_pi4;
        a.termwise = a.termwise && b.termwise;
        return a;
      });
  SymmetryCheck r;
  r.n = n;
  r.g = g;
  r.a_pi4 = checked_integer(acc.pi4, n, g, Theta::pi_4, "compositions");
  r.a_3pi4 = checked_integer(acc.three_pi4, n, g, Theta::three_pi_4, "compositions");
  r.termwise_hold = acc.termwise;
  r.sums_hold = r.a_pi4 == (even ? r.a_3pi4 : BigInt(-r.a_3pi4));
  return r;
}

bool SignTheoremReport::holds() const {
  auto ok = [](Claim c) { return c == Claim::holds || c == Claim::vacuous; };
  return ok(signs_pi4) && ok(signs_3pi4) && ok(growth_weak) && ok(growth_strict) && methods_agree;
}

SignTheoremReport verify_theorem_signs(int g, unsigned threads) {
  require_genus(g);
  auto pi4 = theta_coeffs_recurrence(g, g, Theta::pi_4);
  auto three = theta_coeffs_recurrence(g, g, Theta::three_pi_4);
  bool agree = true;
  if (g <= 6) {
    for (int n = 1; n <= g; ++n) {
      agree = agree && a_n_theta(n, g, Theta::pi_4, threads) == pi4[static_cast<std::size_t>(n)];
      agree = agree && a_n_theta(n, g, Theta::three_pi_4, threads) == three[static_cast<std::size_t>(n)];
    }
  }
  SignTheoremReport r = evaluate_sign_theorem(g, std::move(pi4), std::move(three));
  r.methods_agree = agree;
  return r;
}

Claim check_count_claims(int n, Theta theta, const SignCounts& at_n, const SignCounts* at_prev) {
  const std::int64_t diff = at_n.difference();
  const bool direction = theta == Theta::three_pi_4 ? diff > 0 : (n % 2 == 0 ? diff > 0 : diff < 0);
  if (!direction) return Claim::fails;
  if (n >= 2 && n <= 5) {
    static constexpr std::int64_t kPi4[] = {2, -2, 4, -4};
    static constexpr std::int64_t kThreePi4[] = {2, 2, 4, 4};
    const std::int64_t want = (theta == Theta::pi_4 ? kPi4 : kThreePi4)[n - 2];
    return diff == want ? Claim::holds : Claim::fails;
  }
  if (n >= 6) {
    if (at_n.delta() <= static_cast<std::uint64_t>(n)) return Claim::fails;
    if (n >= 7) {
      if (at_prev == nullptr) return Claim::vacuous;
      if (at_n.delta() <= at_prev->delta()) return Claim::fails;
    }
  }
  return Claim::holds;
}

bool selects(ThetaSelection sel, Theta t) {
  if (sel == ThetaSelection::both) return true;
  return (sel == ThetaSelection::pi_4) == (t == Theta::pi_4);
}

std::vector<BigInt> case_a_traces(int g, Theta theta) {
  require_genus(g);
  std::vector<BigInt> t(static_cast<std::size_t>(g), BigInt(theta == Theta::pi_4 ? 2 : -2));
  t.back() = 0;
  return t;
}

Defect2Report analyze(int g, int max_n, ThetaSelection selection, unsigned threads) {
  require_genus(g);
  if (max_n < 1 || max_n > g) {
    throw InvalidArgument("max_n=" + std::to_string(max_n) + " outside [1, g=" + std::to_string(g) + "]");
  }
  require_enumerable(max_n);

  Defect2Report rep;
  rep.g = g;
  rep.max_n = max_n;
  rep.selection = selection;

  const auto rec_pi4 = theta_coeffs_recurrence(max_n, g, Theta::pi_4);
  const auto rec_3pi4 = theta_coeffs_recurrence(max_n, g, Theta::three_pi_4);
  const auto oracle_pi4 = coeffs_from_traces(TraceData(2, case_a_traces(g, Theta::pi_4)));
  const auto oracle_3pi4 = coeffs_from_traces(TraceData(2, case_a_traces(g, Theta::three_pi_4)));

  rep.methods_agree = true;
  rep.oracle_match_pi4 = true;
  rep.oracle_match_3pi4 = true;
  std::vector<BigInt> a_pi4{BigInt(1)};
  std::vector<BigInt> a_3pi4{BigInt(1)};

  for (int n = 1; n <= max_n; ++n) {
    const auto k = static_cast<std::size_t>(n);
    const SymmetryCheck sym = verify_symmetry(n, g, threads);
    Defect2Row row;
    row.n = n;
    row.a_pi4 = sym.a_pi4;
    row.a_3pi4 = sym.a_3pi4;
    row.symmetry = sym.holds();
    rep.methods_agree = rep.methods_agree && sym.a_pi4 == rec_pi4[k] && sym.a_3pi4 == rec_3pi4[k];
    rep.oracle_match_pi4 = rep.oracle_match_pi4 && sym.a_pi4 == oracle_pi4[k];
    rep.oracle_match_3pi4 = rep.oracle_match_3pi4 && sym.a_3pi4 == oracle_3pi4[k];
    a_pi4.push_back(sym.a_pi4);
    a_3pi4.push_back(sym.a_3pi4);

    if (g > 2) {
      bool ok = true;
      for (Theta t : {Theta::pi_4, Theta::three_pi_4}) {
        if (!selects(selection, t)) continue;
        const SignCounts counts = count_signs(n, g, t, threads);
        const auto& prev_row = rep.rows.empty() ? std::optional<SignCounts>{}
                                                : (t == Theta::pi_4 ? rep.rows.back().counts_pi4
                                                                    : rep.rows.back().counts_3pi4);
        const Claim c = check_count_claims(n, t, counts, prev_row ? &*prev_row : nullptr);
        ok = ok && c != Claim::fails;
        (t == Theta::pi_4 ? row.counts_pi4 : row.counts_3pi4) = counts;
      }
      row.counts_claim = ok ? Claim::holds : Claim::fails;
    } else {
      for (Theta t : {Theta::pi_4, Theta::three_pi_4}) {
        if (selects(selection, t)) {
          (t == Theta::pi_4 ? row.counts_pi4 : row.counts_3pi4) = count_signs_exact(n, g, t, threads);
        }
      }
      row.counts_claim = Claim::vacuous;
    }

    if (g == 1) {
      row.sign_theorem = Claim::vacuous;
    } else if (g > 6) {
      row.sign_theorem = Claim::conjecture;
    } else {
      bool ok = true;
      for (Theta t : {Theta::pi_4, Theta::three_pi_4}) {
        if (!selects(selection, t)) continue;
        const auto& a = t == Theta::pi_4 ? a_pi4 : a_3pi4;
        const int want = (t == Theta::pi_4 && n % 2 == 1) ? -1 : 1;
        ok = ok && sgn(a[k]) == want && compare_abs(a[k - 1], a[k]) < 0;
      }
      row.sign_theorem = ok ? Claim::holds : Claim::fails;
    }
    rep.rows.push_back(std::move(row));
  }

  rep.theorem = evaluate_sign_theorem(g, std::move(a_pi4), std::move(a_3pi4));
  rep.theorem.methods_agree = rep.methods_agree;
  return rep;
}

}  // namespace zeta
