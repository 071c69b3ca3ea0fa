#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zeta/defect2.hpp"
#include "zeta/errors.hpp"
#include "zeta/lpoly.hpp"

using namespace zeta;

namespace {

constexpr Theta kBoth[] = {Theta::pi_4, Theta::three_pi_4};

double angle(Theta t) { return t == Theta::pi_4 ? std::numbers::pi / 4 : 3 * std::numbers::pi / 4; }

double c_float(int m, int g, Theta t) { return (g - 1) * std::cos(m * angle(t)) + std::cos(m * std::numbers::pi / 2); }

double cr_float(const std::vector<int>& parts, int g, Theta t) {
  int n = 0, prefix = 0;
  for (int m : parts) n += m;
  double v = std::pow(2.0, n / 2.0);
  for (int m : parts) {
    prefix += m;
    v *= -2 * c_float(m, g, t) / prefix;
  }
  return v;
}

// prod (1 - t_i T + 2 T^2) over the case (a) trace vector, by convolution.
std::vector<BigInt> expand_case_a(int g, Theta t) {
  std::vector<BigInt> p{1};
  for (int i = 0; i < g; ++i) {
    const long tr = i == g - 1 ? 0 : (t == Theta::pi_4 ? 2 : -2);
    std::vector<BigInt> out(p.size() + 2, BigInt(0));
    for (std::size_t k = 0; k < p.size(); ++k) {
      out[k] += p[k];
      out[k + 1] -= tr * p[k];
      out[k + 2] += 2 * p[k];
    }
    p = out;
  }
  return p;
}

// Signed count sum_{compositions} prod w(m_s) with w = -1 on the flagged
// residue classes, via D(n) = sum_m w(m) D(n-m).
std::int64_t signed_count(int n, Theta t) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(n) + 1, 0);
  d[0] = 1;
  for (int k = 1; k <= n; ++k) {
    for (int m = 1; m <= k; ++m) {
      const int e = (m - 1) % 8 + 1;
      const bool flagged = t == Theta::pi_4 ? (e == 1 || e == 7 || e == 8) : (e == 3 || e == 5 || e == 8);
      d[static_cast<std::size_t>(k)] += (flagged ? -1 : 1) * d[static_cast<std::size_t>(k - m)];
    }
  }
  return d[static_cast<std::size_t>(n)];
}

}  // namespace

TEST_CASE("residue classes") {
  CHECK(ResidueClass::of(1).value() == 1);
  CHECK(ResidueClass::of(8).value() == 8);
  CHECK(ResidueClass::of(9).value() == 1);
  CHECK(ResidueClass::of(16).value() == 8);
  CHECK(ResidueClass::of(15).contains(7));
  CHECK_FALSE(ResidueClass::of(15).contains(8));
  CHECK_THROWS_AS(ResidueClass::of(0), InvalidArgument);
}

TEST_CASE("cosine weights") {
  CHECK(c_theta(1, 5, Theta::pi_4) == QuadExt(BigRational(0), BigRational(2)));
  CHECK(c_theta(4, 2, Theta::pi_4).is_zero());
  CHECK(c_theta(4, 2, Theta::three_pi_4).is_zero());
  CHECK(c_theta(8, 3, Theta::pi_4) == QuadExt(3));
  for (int g = 1; g <= 9; ++g) {
    for (Theta t : kBoth) {
      for (int m = 1; m <= 40; ++m) CHECK(std::abs(c_theta(m, g, t).to_double() - c_float(m, g, t)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(c_theta(1, 0, Theta::pi_4), InvalidArgument);
}

TEST_CASE("composition terms") {
  for (int g = 1; g <= 8; ++g) {
    CHECK(cr_theta(Composition({1}), g, Theta::pi_4) == QuadExt(-2 * (g - 1)));
    CHECK(cr_theta(Composition({2}), g, Theta::pi_4) == QuadExt(2));
    CHECK(cr_theta(Composition({1, 1}), g, Theta::pi_4) == QuadExt(2 * (g - 1) * (g - 1)));
  }
  for (int n = 1; n <= 10; ++n) {
    for (const auto& c : enumerate(n)) {
      for (Theta t : kBoth) {
        const double want = cr_float(c.parts(), 5, t);
        CHECK(std::abs(cr_theta(c, 5, t).to_double() - want) < 1e-9 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("coefficients: small values") {
  for (int g = 1; g <= 8; ++g) {
    CHECK(a_n_theta(1, g, Theta::three_pi_4) == 2 * (g - 1));
    CHECK(a_n_theta_recurrence(1, g, Theta::three_pi_4) == 2 * (g - 1));
  }
  CHECK(a_n_theta(1, 1, Theta::pi_4) == 0);
  CHECK(a_n_theta(2, 2, Theta::three_pi_4) == 4);
  CHECK(a_n_theta_recurrence(2, 2, Theta::three_pi_4) == 4);
  CHECK_THROWS_AS(a_n_theta(3, 2, Theta::pi_4), InvalidArgument);
  CHECK_THROWS_AS(a_n_theta(25, 30, Theta::pi_4), InvalidArgument);
}

TEST_CASE("composition sums, recurrence and the expanded product agree") {
  const auto before = integrality_checks_performed();
  for (int g = 1; g <= 12; ++g) {
    for (Theta t : kBoth) {
      const auto expanded = expand_case_a(g, t);
      const auto rec = theta_coeffs_recurrence(g, g, t);
      const auto from_traces = coeffs_from_traces(TraceData(BigInt(2), case_a_traces(g, t)));
      for (int n = 1; n <= g; ++n) {
        const auto k = static_cast<std::size_t>(n);
        CHECK(rec[k] == expanded[k]);
        CHECK(from_traces[k] == expanded[k]);
        CHECK(a_n_theta(n, g, t, 2) == expanded[k]);
      }
    }
  }
  CHECK(integrality_checks_performed() > before);
}

TEST_CASE("classification matches exact signs") {
  for (int g = 3; g <= 6; ++g) {
    for (int n = 1; n <= 12; ++n) {
      for (const auto& c : enumerate(n)) {
        for (Theta t : kBoth) CHECK(classify(c, g, t) == quad_sign(cr_theta(c, g, t)));
      }
    }
  }
  CHECK(classify(Composition({1}), 3, Theta::pi_4) == Sign::negative);
  CHECK(classify(Composition({2}), 3, Theta::pi_4) == Sign::positive);
  CHECK(classify(Composition({1, 1, 1}), 4, Theta::pi_4) == Sign::negative);
  CHECK_THROWS_AS(classify(Composition({1}), 2, Theta::pi_4), InvalidArgument);
}

TEST_CASE("sign counts") {
  for (int n = 1; n <= 18; ++n) {
    for (Theta t : kBoth) {
      const SignCounts c = count_signs(n, 4, t, 3);
      CHECK(c.plus + c.minus == composition_count(n));
      CHECK(c.difference() == signed_count(n, t));
      if (n <= 10) CHECK(count_signs_exact(n, 4, t) == c);
    }
  }
  CHECK(count_signs(2, 3, Theta::pi_4).difference() == 2);
  CHECK(count_signs(6, 6, Theta::three_pi_4).difference() == 8);
  CHECK(count_signs(7, 7, Theta::three_pi_4).difference() == 10);
  // g = 2: parts in E4 give zero terms.
  const SignCounts z = count_signs_exact(4, 2, Theta::pi_4);
  CHECK(z.plus + z.minus < composition_count(4));
  CHECK_THROWS_AS(count_signs(4, 2, Theta::pi_4), InvalidArgument);
}

TEST_CASE("count claims") {
  for (int n = 1; n <= 14; ++n) {
    for (Theta t : kBoth) {
      const SignCounts c = count_signs(n, 5, t);
      const SignCounts p = n > 1 ? count_signs(n - 1, 5, t) : SignCounts{};
      CHECK(check_count_claims(n, t, c, n > 1 ? &p : nullptr) == Claim::holds);
    }
  }
  CHECK(check_count_claims(2, Theta::pi_4, SignCounts{1, 1}, nullptr) == Claim::fails);
  CHECK(check_count_claims(8, Theta::pi_4, SignCounts{100, 90}, nullptr) == Claim::vacuous);
}

TEST_CASE("symmetry between the branches") {
  for (int g = 1; g <= 14; ++g) {
    for (int n = 1; n <= g; ++n) {
      const SymmetryCheck s = verify_symmetry(n, g, 2);
      CHECK(s.sums_hold);
      CHECK(s.termwise_hold);
    }
  }
  const SymmetryCheck s2 = verify_symmetry(2, 2);
  CHECK(s2.a_pi4 == 4);
  CHECK(s2.a_3pi4 == 4);
}

TEST_CASE("sign theorem") {
  const auto r1 = verify_theorem_signs(1);
  CHECK(r1.signs_pi4 == Claim::vacuous);
  CHECK(r1.growth_strict == Claim::vacuous);
  CHECK(r1.holds());
  for (int g = 2; g <= 6; ++g) {
    const auto r = verify_theorem_signs(g);
    CHECK_FALSE(r.conjecture_mode);
    CHECK(r.methods_agree);
    CHECK(r.signs_pi4 == Claim::holds);
    CHECK(r.signs_3pi4 == Claim::holds);
    CHECK(r.growth_weak == Claim::holds);
    CHECK(r.growth_strict == Claim::holds);
  }
  const auto r2 = verify_theorem_signs(2);
  CHECK(r2.a_pi4 == std::vector<BigInt>{1, -2, 4});
  CHECK(verify_theorem_signs(9).conjecture_mode);
}

TEST_CASE("report assembly") {
  const Defect2Report r4 = analyze(4, 4, ThetaSelection::both);
  REQUIRE(r4.rows.size() == 4);
  CHECK(r4.rows[1].counts_pi4->delta() == 2);
  CHECK(r4.rows[2].counts_pi4->delta() == 2);
  CHECK(r4.rows[3].counts_pi4->delta() == 4);
  CHECK(r4.methods_agree);
  CHECK(r4.oracle_match_pi4);
  CHECK(r4.oracle_match_3pi4);
  const Defect2Report r5 = analyze(5, 5, ThetaSelection::both);
  CHECK(r5.rows[4].counts_pi4->difference() == -4);
  CHECK(r5.rows[3].counts_3pi4->delta() == 4);
  CHECK(r5.rows[4].counts_3pi4->delta() == 4);
  for (const auto& row : r5.rows) {
    CHECK(row.symmetry);
    CHECK(row.counts_claim == Claim::holds);
    CHECK(row.sign_theorem == Claim::holds);
  }
  const Defect2Report only = analyze(4, 3, ThetaSelection::three_pi_4);
  CHECK_FALSE(only.rows[0].counts_pi4.has_value());
  CHECK(only.rows[0].counts_3pi4.has_value());
  CHECK(analyze(1, 1, ThetaSelection::both).rows[0].sign_theorem == Claim::vacuous);
  CHECK(analyze(2, 2, ThetaSelection::both).rows[1].counts_claim == Claim::vacuous);
  CHECK(analyze(8, 3, ThetaSelection::both).rows[2].sign_theorem == Claim::conjecture);
  CHECK_THROWS_AS(analyze(4, 5, ThetaSelection::both), InvalidArgument);
}

TEST_CASE("large genus recurrence") {
  const auto a = theta_coeffs_recurrence(100, 100, Theta::three_pi_4);
  const auto expanded = expand_case_a(100, Theta::three_pi_4);
  for (std::size_t n = 0; n <= 100; ++n) CHECK(a[n] == expanded[n]);
}
