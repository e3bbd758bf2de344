#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace dlcat {

using BigInt = mpz_class;
using BigRat = mpq_class;

class FFElem;

// Laurent polynomial in v with arbitrary-precision integer coefficients,
// i.e. an element of Z[v, v^-1]. Zero coefficients are never stored.
class Laurent {
 public:
  using Terms = std::map<int, BigInt>;

  Laurent() = default;
  Laurent(long c);  // NOLINT: constants convert implicitly
  Laurent(const BigInt& c);  // NOLINT
  Laurent(std::initializer_list<std::pair<int, long>> terms);

  static Laurent monomial(int exponent, const BigInt& coeff = 1);
  static Laurent v() { return monomial(1); }
  static Laurent from_terms(const Terms& terms);

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  BigInt coeff(int exponent) const;

  // Lowest / highest exponent. Only meaningful for non-zero polynomials.
  int min_degree() const;
  int max_degree() const;

  Laurent& operator+=(const Laurent& rhs);
  Laurent& operator-=(const Laurent& rhs);
  Laurent& operator*=(const Laurent& rhs);
  Laurent& operator*=(const BigInt& c);

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend Laurent operator*(Laurent a, const BigInt& c) { return a *= c; }
  Laurent operator-() const;

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
  // Total order (by exponent map) used only for deterministic containers.
  friend bool operator<(const Laurent& a, const Laurent& b);

  // Multiply by v^k.
  Laurent shifted(int k) const;

  // v -> v^-1.
  Laurent bar() const;
  // v -> -v^-1.
  Laurent b_twist() const;

  // Parts of the polynomial by exponent sign.
  Laurent positive_part() const;  // exponents > 0
  Laurent negative_part() const;  // exponents < 0
  Laurent restrict_exponents(int lo, int hi) const;  // lo <= e <= hi

  bool in_vZv() const;            // v Z[v]
  bool in_vinvZvinv() const;      // v^-1 Z[v^-1]
  bool is_monomial() const { return terms_.size() == 1; }

  // Evaluation. Negative exponents require an invertible argument; for an
  // integer argument that means +1 or -1.
  BigInt eval(const BigInt& x) const;
  BigRat eval_rational(const BigRat& x) const;
  FFElem eval(const FFElem& x) const;

  std::string to_string() const;

 private:
  void add_term(int e, const BigInt& c);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Laurent& p);

// Convolution product.
Laurent laurent_mul(const Laurent& a, const Laurent& b);

enum class Substitution { Bar, B };
Laurent substitute(const Laurent& f, Substitution rule);

}  // namespace dlcat
