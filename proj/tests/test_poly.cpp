#include "vnk/poly.hpp"

#include <random>

#include "doctest.h"

using vnk::Laurent;
using vnk::UForm;

namespace {

Laurent t(int e = 1) { return Laurent::t(e); }
Laurent q(int e = 1) { return Laurent::q(e); }

// paper values in the stored convention
Laurent v31() { return UForm{{Laurent(1), q(1) + q(3), q(2)}}.expand(); }
Laurent v41() { return UForm{{Laurent(1), -q(-1) - q(1), Laurent(1)}}.expand(); }

Laurent random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(0, 5), expo(-3, 3), coef(-4, 4);
  Laurent p;
  int n = nterms(rng);
  for (int i = 0; i < n; i++) p += Laurent::monomial(coef(rng), expo(rng), expo(rng));
  return p;
}

}  // namespace

TEST_CASE("add: cancellation, identity, merge") {
  CHECK((t() + (-t())).is_zero());
  CHECK(Laurent(1) + Laurent(0) == Laurent(1));
  Laurent lhs = (q() * t() + q(-1)) + q() * t();
  Laurent rhs = Laurent::monomial(2, 1, 1) + q(-1);
  CHECK(lhs == rhs);
}

TEST_CASE("mul: distribution, identity, trefoil Alexander square") {
  CHECK((t() + t(-1)) * q() == q() * t() + Laurent::monomial(1, -1, 1));
  Laurent p = v31();
  CHECK(p * Laurent(1) == p);
  Laurent delta = t(1) - Laurent(1) + t(-1);
  Laurent sq = delta * delta;
  Laurent want = t(2) - Laurent::monomial(2, 1, 0) + Laurent(3) - Laurent::monomial(2, -1, 0) + t(-2);
  CHECK(sq == want);
}

TEST_CASE("substitute_monomial basics") {
  Laurent p = q() * t();
  CHECK(p.subst_t_inv() == Laurent::monomial(1, -1, 1));
  CHECK(v31().subst_t_to_q() == Laurent(1));
  // V_{3_1,1}(t,-q) has nonnegative coefficients
  Laurent pos = v31().subst_q_neg();
  CHECK(pos.coeffs_nonneg());
  Laurent want = Laurent::monomial(1, 2, 2) + Laurent::monomial(1, 1, 3) + Laurent::monomial(1, 1, 1) +
                 Laurent::monomial(2, 0, 2) + Laurent(1) + Laurent::monomial(1, -1, 1) +
                 Laurent::monomial(1, -1, 3) + Laurent::monomial(1, -2, 2);
  CHECK(pos == want);
  CHECK_THROWS(p.substitute(Laurent::Monomial{2, 1, 0}, std::nullopt));
}

TEST_CASE("expand_u_form") {
  CHECK(UForm{{Laurent(1)}}.expand() == Laurent(1));
  Laurent p = v31();
  CHECK(p.subst_t_to_q() == Laurent(1));
  // q -> 1 of the u-form equals the Alexander square of the trefoil
  Laurent at_q1 = p.subst_q_one();
  Laurent delta2 = (t(1) - Laurent(1) + t(-1)) * (t(1) - Laurent(1) + t(-1));
  CHECK(at_q1 == delta2);
}

TEST_CASE("t_span and coeffs_nonneg") {
  CHECK(Laurent(1).t_span() == 0);
  CHECK(v31().t_span() == 4);
  CHECK(v41().t_span() == 4);
  CHECK(Laurent(0).coeffs_nonneg());
  CHECK_FALSE((t() - Laurent(1)).coeffs_nonneg());
  CHECK_THROWS(Laurent(0).t_span());
}

TEST_CASE("text round trip and canonical order") {
  Laurent p = v31();
  CHECK(Laurent::parse(p.text()) == p);
  CHECK(Laurent(0).text() == "0");
  CHECK(Laurent::parse("0") == Laurent(0));
  CHECK(Laurent::parse(" 2*t^1*q^-3 + -2*t^1*q^-3 ") == Laurent(0));
  CHECK(Laurent::parse("3") == Laurent(3));
  CHECK(Laurent::parse("1*t^2") == t(2));
  CHECK_THROWS(Laurent::parse("t^2"));  // coefficient required
}

TEST_CASE("exact division") {
  Laurent p = v31() * v41();
  auto d = p.divided_by(v41());
  REQUIRE(d);
  CHECK(*d == v31());
  CHECK_FALSE((p + Laurent(1)).divided_by(v41()).has_value());
  // monomial divisor
  auto h = (q(2) * t(2)).divided_by(q() * t());
  REQUIRE(h);
  CHECK(*h == q() * t());
}

TEST_CASE("exponent halving/doubling") {
  Laurent p = v31().double_exponents();
  auto h = p.halve_exponents();
  REQUIRE(h);
  CHECK(*h == v31());
  CHECK_FALSE(t(1).halve_exponents().has_value());
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(12345);
  for (int it = 0; it < 200; it++) {
    Laurent a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("substitution is a ring homomorphism") {
  std::mt19937 rng(777);
  Laurent::Monomial tm{-1, 2, 1};  // t -> -t^2 q
  Laurent::Monomial qm{1, 0, -1};  // q -> 1/q
  for (int it = 0; it < 100; it++) {
    Laurent a = random_poly(rng), b = random_poly(rng);
    CHECK((a * b).substitute(tm, qm) == a.substitute(tm, qm) * b.substitute(tm, qm));
    CHECK((a + b).substitute(tm, qm) == a.substitute(tm, qm) + b.substitute(tm, qm));
  }
}

TEST_CASE("golden symmetry: t -> 1/t fixes the appendix values") {
  for (const Laurent& p : {v31(), v41()}) {
    CHECK(p.subst_t_inv() == p);
    CHECK(p.subst_t_to_q() == Laurent(1));
  }
}
