#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vnk {

using Int = boost::multiprecision::cpp_int;

/// Exact sparse Laurent polynomial in t and q with integer coefficients.
///
/// Terms are kept in canonical order (t exponent major ascending, q exponent
/// minor ascending) with no zero coefficients, so equality, hashing and text
/// serialization are bit-stable.
class Laurent {
 public:
  struct Term {
    int32_t te = 0;
    int32_t qe = 0;
    Int c;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Laurent() = default;
  Laurent(long constant);  // NOLINT(google-explicit-constructor)
  static Laurent monomial(const Int& c, int32_t te, int32_t qe);
  static Laurent t(int32_t e = 1) { return monomial(1, e, 0); }
  static Laurent q(int32_t e = 1) { return monomial(1, 0, e); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Coefficient of t^te q^qe (zero if absent).
  const Int& coeff(int32_t te, int32_t qe) const;

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator*=(const Laurent& o);
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

  /// Multiply by the monomial c * t^te * q^qe in place.
  void mul_monomial(const Int& c, int32_t te, int32_t qe);

  /// A signed monomial image for substitution: coefficient must be +1 or -1.
  struct Monomial {
    int sign = 1;
    int32_t te = 0;
    int32_t qe = 0;
  };

  /// Substitute t -> tm, q -> qm (either may be the identity).
  /// Images must be invertible monomials; this is a ring homomorphism.
  Laurent substitute(const std::optional<Monomial>& tm, const std::optional<Monomial>& qm) const;

  /// Common substitutions.
  Laurent subst_t_inv() const;   // t -> 1/t
  Laurent subst_q_inv() const;   // q -> 1/q
  Laurent subst_q_neg() const;   // q -> -q
  Laurent subst_t_to_q() const;  // t -> q
  Laurent subst_q_one() const;   // q -> 1
  Laurent subst_t_one() const;   // t -> 1

  /// max t exponent - min t exponent; error (assert) on zero polynomial.
  int t_span() const;
  int q_span() const;
  int32_t t_min() const;
  int32_t t_max() const;
  int32_t q_min() const;
  int32_t q_max() const;

  bool coeffs_nonneg() const;

  /// Exact division: returns quotient iff divisor divides exactly.
  std::optional<Laurent> divided_by(const Laurent& d) const;

  /// Halve every exponent; requires all exponents even.
  std::optional<Laurent> halve_exponents() const;
  /// Double every exponent.
  Laurent double_exponents() const;

  /// Canonical text: "+"-joined `c*t^a*q^b` terms; "0" for the zero polynomial.
  std::string text() const;
  /// Parse the text grammar (whitespace tolerated). Throws std::runtime_error.
  static Laurent parse(std::string_view s);

  /// Total order compatible with canonical serialization (for sieve keys).
  static int compare(const Laurent& a, const Laurent& b);

 private:
  void normalize();  // sort + merge + prune zeros
  std::vector<Term> terms_;
};

/// Value in the u-substitution basis: coefficients of u^k, each a Laurent
/// polynomial in q only, with u = t + 1/t - q - 1/q.
struct UForm {
  std::vector<Laurent> u_coeffs;
  Laurent expand() const;
  static Laurent u();
};

}  // namespace vnk
