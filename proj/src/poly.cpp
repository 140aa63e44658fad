#include "vnk/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace vnk {

namespace {
inline uint64_t pack(int32_t te, int32_t qe) {
  return (uint64_t(uint32_t(te)) << 32) | uint64_t(uint32_t(qe));
}
inline std::pair<int32_t, int32_t> unpack(uint64_t k) {
  return {int32_t(uint32_t(k >> 32)), int32_t(uint32_t(k))};
}
const Int kZero = 0;
}  // namespace

Laurent::Laurent(long constant) {
  if (constant != 0) terms_.push_back({0, 0, Int(constant)});
}

Laurent Laurent::monomial(const Int& c, int32_t te, int32_t qe) {
  Laurent p;
  if (c != 0) p.terms_.push_back({te, qe, c});
  return p;
}

bool Laurent::is_one() const {
  return terms_.size() == 1 && terms_[0].te == 0 && terms_[0].qe == 0 && terms_[0].c == 1;
}

const Int& Laurent::coeff(int32_t te, int32_t qe) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair(te, qe),
                             [](const Term& t, const std::pair<int32_t, int32_t>& k) {
                               return std::pair(t.te, t.qe) < k;
                             });
  if (it != terms_.end() && it->te == te && it->qe == qe) return it->c;
  return kZero;
}

void Laurent::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return std::pair(a.te, a.qe) < std::pair(b.te, b.qe);
  });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().te == t.te && out.back().qe == t.qe) {
      out.back().c += t.c;
      if (out.back().c == 0) out.pop_back();
    } else if (t.c != 0) {
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  // merge two sorted term lists
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() &&
         std::pair(terms_[i].te, terms_[i].qe) < std::pair(o.terms_[j].te, o.terms_[j].qe))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() ||
               std::pair(o.terms_[j].te, o.terms_[j].qe) < std::pair(terms_[i].te, terms_[i].qe)) {
      out.push_back(o.terms_[j++]);
    } else {
      Term t = std::move(terms_[i++]);
      t.c += o.terms_[j++].c;
      if (t.c != 0) out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator+(const Laurent& a, const Laurent& b) {
  Laurent r = a;
  r += b;
  return r;
}

Laurent operator-(const Laurent& a, const Laurent& b) {
  Laurent r = a;
  r -= b;
  return r;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.terms_.size() == 1) {
    r = b;
    r.mul_monomial(a.terms_[0].c, a.terms_[0].te, a.terms_[0].qe);
    return r;
  }
  if (b.terms_.size() == 1) {
    r = a;
    r.mul_monomial(b.terms_[0].c, b.terms_[0].te, b.terms_[0].qe);
    return r;
  }
  std::unordered_map<uint64_t, Int> acc;
  acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 4);
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[pack(x.te + y.te, x.qe + y.qe)] += x.c * y.c;
  r.terms_.reserve(acc.size());
  for (auto& [k, c] : acc) {
    if (c == 0) continue;
    auto [te, qe] = unpack(k);
    r.terms_.push_back({te, qe, std::move(c)});
  }
  r.normalize();
  return r;
}

Laurent& Laurent::operator*=(const Laurent& o) {
  *this = *this * o;
  return *this;
}

void Laurent::mul_monomial(const Int& c, int32_t te, int32_t qe) {
  if (c == 0) {
    terms_.clear();
    return;
  }
  // uniform exponent shift keeps canonical order
  for (auto& t : terms_) {
    t.te += te;
    t.qe += qe;
    t.c *= c;
  }
}

Laurent Laurent::substitute(const std::optional<Monomial>& tm, const std::optional<Monomial>& qm) const {
  if (tm && tm->sign != 1 && tm->sign != -1) throw std::invalid_argument("substitute: non-unit image");
  if (qm && qm->sign != 1 && qm->sign != -1) throw std::invalid_argument("substitute: non-unit image");
  Laurent r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    int32_t te = 0, qe = 0;
    int sgn = 1;
    if (tm) {
      te += tm->te * t.te;
      qe += tm->qe * t.te;
      if (tm->sign < 0 && (t.te & 1)) sgn = -sgn;
    } else {
      te += t.te;
    }
    if (qm) {
      te += qm->te * t.qe;
      qe += qm->qe * t.qe;
      if (qm->sign < 0 && (t.qe & 1)) sgn = -sgn;
    } else {
      qe += t.qe;
    }
    r.terms_.push_back({te, qe, sgn < 0 ? Int(-t.c) : t.c});
  }
  r.normalize();
  return r;
}

Laurent Laurent::subst_t_inv() const { return substitute(Monomial{1, -1, 0}, std::nullopt); }
Laurent Laurent::subst_q_inv() const { return substitute(std::nullopt, Monomial{1, 0, -1}); }
Laurent Laurent::subst_q_neg() const { return substitute(std::nullopt, Monomial{-1, 0, 1}); }
Laurent Laurent::subst_t_to_q() const { return substitute(Monomial{1, 0, 1}, std::nullopt); }
Laurent Laurent::subst_q_one() const { return substitute(std::nullopt, Monomial{1, 0, 0}); }
Laurent Laurent::subst_t_one() const { return substitute(Monomial{1, 0, 0}, std::nullopt); }

int Laurent::t_span() const {
  assert(!is_zero() && "t_span undefined on zero polynomial");
  if (is_zero()) throw std::domain_error("t_span of zero polynomial");
  return t_max() - t_min();
}

int Laurent::q_span() const {
  if (is_zero()) throw std::domain_error("q_span of zero polynomial");
  return q_max() - q_min();
}

int32_t Laurent::t_min() const { return terms_.front().te; }
int32_t Laurent::t_max() const { return terms_.back().te; }

int32_t Laurent::q_min() const {
  int32_t m = terms_.front().qe;
  for (const auto& t : terms_) m = std::min(m, t.qe);
  return m;
}

int32_t Laurent::q_max() const {
  int32_t m = terms_.front().qe;
  for (const auto& t : terms_) m = std::max(m, t.qe);
  return m;
}

bool Laurent::coeffs_nonneg() const {
  for (const auto& t : terms_)
    if (t.c < 0) return false;
  return true;
}

std::optional<Laurent> Laurent::divided_by(const Laurent& d) const {
  if (d.is_zero()) return std::nullopt;
  Laurent rem = *this;
  Laurent quot;
  const Term& dl = d.terms_.back();  // lex-leading term (te major, qe minor)
  while (!rem.is_zero()) {
    const Term& rl = rem.terms_.back();
    Int qc = rl.c / dl.c;
    if (qc * dl.c != rl.c) return std::nullopt;
    Laurent m = monomial(qc, rl.te - dl.te, rl.qe - dl.qe);
    quot += m;
    rem -= m * d;
    if (!rem.is_zero() &&
        std::pair(rem.terms_.back().te, rem.terms_.back().qe) >= std::pair(rl.te, rl.qe))
      return std::nullopt;  // no progress: not divisible
  }
  return quot;
}

std::optional<Laurent> Laurent::halve_exponents() const {
  Laurent r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    if ((t.te & 1) || (t.qe & 1)) return std::nullopt;
    r.terms_.push_back({t.te / 2, t.qe / 2, t.c});
  }
  return r;  // order preserved under halving
}

Laurent Laurent::double_exponents() const {
  Laurent r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.te * 2, t.qe * 2, t.c});
  return r;
}

std::string Laurent::text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.c << "*t^" << t.te << "*q^" << t.qe;
  }
  return os.str();
}

namespace {
void skip_ws(std::string_view& s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
}

bool parse_int(std::string_view& s, long long& out) {
  skip_ws(s);
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) i++;
  size_t d0 = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) i++;
  if (i == d0) return false;
  out = std::stoll(std::string(s.substr(0, i)));
  s.remove_prefix(i);
  return true;
}

bool parse_bigint(std::string_view& s, Int& out) {
  skip_ws(s);
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) i++;
  size_t d0 = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) i++;
  if (i == d0) return false;
  out = Int(std::string(s.substr(0, i)));
  s.remove_prefix(i);
  return true;
}
}  // namespace

Laurent Laurent::parse(std::string_view s) {
  Laurent r;
  skip_ws(s);
  if (s.empty()) throw std::runtime_error("poly parse: empty input");
  bool first = true;
  while (true) {
    skip_ws(s);
    if (s.empty()) break;
    if (!first) {
      if (s.front() != '+') throw std::runtime_error("poly parse: expected '+' between terms");
      s.remove_prefix(1);
      skip_ws(s);
    }
    first = false;
    Int c;
    if (!parse_bigint(s, c)) throw std::runtime_error("poly parse: expected coefficient");
    long long te = 0, qe = 0;
    skip_ws(s);
    while (!s.empty() && s.front() == '*') {
      s.remove_prefix(1);
      skip_ws(s);
      if (s.empty() || (s.front() != 't' && s.front() != 'q'))
        throw std::runtime_error("poly parse: expected variable after '*'");
      char var = s.front();
      s.remove_prefix(1);
      skip_ws(s);
      long long e = 1;
      if (!s.empty() && s.front() == '^') {
        s.remove_prefix(1);
        if (!parse_int(s, e)) throw std::runtime_error("poly parse: expected exponent");
      }
      if (var == 't')
        te += e;
      else
        qe += e;
      skip_ws(s);
    }
    r += monomial(c, int32_t(te), int32_t(qe));
    skip_ws(s);
    if (s.empty()) break;
  }
  return r;
}

int Laurent::compare(const Laurent& a, const Laurent& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t i = 0; i < n; i++) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.te != y.te) return x.te < y.te ? -1 : 1;
    if (x.qe != y.qe) return x.qe < y.qe ? -1 : 1;
    if (x.c != y.c) return x.c < y.c ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

Laurent UForm::u() {
  Laurent u = Laurent::t(1) + Laurent::t(-1) - Laurent::q(1) - Laurent::q(-1);
  return u;
}

Laurent UForm::expand() const {
  Laurent uu = u();
  Laurent acc;
  Laurent upow = Laurent(1);
  for (size_t k = 0; k < u_coeffs.size(); k++) {
    if (k > 0) upow *= uu;
    acc += u_coeffs[k] * upow;
  }
  return acc;
}

}  // namespace vnk
