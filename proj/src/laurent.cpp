#include "dlcat/laurent.hpp"

#include <ostream>
#include <sstream>

#include "dlcat/error.hpp"
#include "dlcat/finite_field.hpp"

namespace dlcat {

Laurent::Laurent(long c) {
  if (c != 0) terms_.emplace(0, BigInt(c));
}

Laurent::Laurent(const BigInt& c) {
  if (c != 0) terms_.emplace(0, c);
}

Laurent::Laurent(std::initializer_list<std::pair<int, long>> terms) {
  for (const auto& [e, c] : terms) add_term(e, BigInt(c));
}

Laurent Laurent::monomial(int exponent, const BigInt& coeff) {
  Laurent p;
  p.add_term(exponent, coeff);
  return p;
}

Laurent Laurent::from_terms(const Terms& terms) {
  Laurent p;
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

void Laurent::add_term(int e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt Laurent::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

int Laurent::min_degree() const {
  if (terms_.empty()) throw DomainError("degree of the zero polynomial");
  return terms_.begin()->first;
}

int Laurent::max_degree() const {
  if (terms_.empty()) throw DomainError("degree of the zero polynomial");
  return terms_.rbegin()->first;
}

Laurent& Laurent::operator+=(const Laurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

Laurent& Laurent::operator*=(const Laurent& rhs) {
  *this = *this * rhs;
  return *this;
}

Laurent& Laurent::operator*=(const BigInt& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent out = *this;
  for (auto& [e, x] : out.terms_) x = -x;
  return out;
}

bool operator<(const Laurent& a, const Laurent& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms_.end() && ib != b.terms_.end();
}

Laurent Laurent::shifted(int k) const {
  Laurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
  return out;
}

Laurent Laurent::bar() const {
  Laurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
  return out;
}

Laurent Laurent::b_twist() const {
  // (-v^-1)^e = (-1)^e v^-e
  Laurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, (e % 2 == 0) ? c : BigInt(-c));
  return out;
}

Laurent Laurent::positive_part() const {
  Laurent out;
  for (auto it = terms_.upper_bound(0); it != terms_.end(); ++it) out.terms_.insert(*it);
  return out;
}

Laurent Laurent::negative_part() const {
  Laurent out;
  for (auto it = terms_.begin(); it != terms_.end() && it->first < 0; ++it)
    out.terms_.insert(*it);
  return out;
}

Laurent Laurent::restrict_exponents(int lo, int hi) const {
  Laurent out;
  for (auto it = terms_.lower_bound(lo); it != terms_.end() && it->first <= hi; ++it)
    out.terms_.insert(*it);
  return out;
}

bool Laurent::in_vZv() const { return terms_.empty() || terms_.begin()->first >= 1; }

bool Laurent::in_vinvZvinv() const {
  return terms_.empty() || terms_.rbegin()->first <= -1;
}

BigInt Laurent::eval(const BigInt& x) const {
  if (!terms_.empty() && terms_.begin()->first < 0 && x != 1 && x != -1)
    throw DomainError("evaluation at a non-unit integer with negative exponents present");
  BigInt total = 0;
  for (const auto& [e, c] : terms_) {
    BigInt pw;
    if (x == 1) {
      pw = 1;
    } else if (x == -1) {
      pw = (e % 2 == 0) ? 1 : -1;
    } else {
      mpz_pow_ui(pw.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
    }
    total += c * pw;
  }
  return total;
}

BigRat Laurent::eval_rational(const BigRat& x) const {
  if (!terms_.empty() && terms_.begin()->first < 0 && x == 0)
    throw DomainError("evaluation at 0 with negative exponents present");
  BigRat total = 0;
  for (const auto& [e, c] : terms_) {
    BigRat pw = 1;
    BigRat base = e >= 0 ? x : BigRat(1) / x;
    for (int k = 0; k < (e >= 0 ? e : -e); ++k) pw *= base;
    total += BigRat(c) * pw;
  }
  total.canonicalize();
  return total;
}

FFElem Laurent::eval(const FFElem& x) const {
  if (!terms_.empty() && terms_.begin()->first < 0 && x.is_zero())
    throw DomainError("evaluation at 0 with negative exponents present");
  FFElem total = FFElem::zero_like(x);
  for (const auto& [e, c] : terms_) {
    BigInt r = c % x.characteristic();
    if (r < 0) r += x.characteristic();
    total = total + x.pow(e) * FFElem::from_int(x, r.get_si());
  }
  return total;
}

std::string Laurent::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Laurent& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << "v";
    if (e != 1) os << "^" << e;
  }
  return os;
}

Laurent laurent_mul(const Laurent& a, const Laurent& b) { return a * b; }

Laurent substitute(const Laurent& f, Substitution rule) {
  switch (rule) {
    case Substitution::Bar:
      return f.bar();
    case Substitution::B:
      return f.b_twist();
  }
  return f;
}

}  // namespace dlcat
