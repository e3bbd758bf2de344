#pragma once

#include <cstdint>
#include <string>

namespace dlcat {

bool is_prime(std::int64_t n);
std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod);

// Element of F_l or F_{l^2}. The quadratic extension is F_l[t]/(t^2 - m0 - m1 t)
// with a fixed modulus: for odd l, t^2 = n where n is the least quadratic
// non-residue mod l; for l = 2, t^2 = t + 1. Elements of F_l embed as c1 = 0.
class FFElem {
 public:
  FFElem(std::int64_t ell, int degree, std::int64_t c0, std::int64_t c1 = 0);

  static FFElem prime_field(std::int64_t ell, std::int64_t value);
  static FFElem from_int(const FFElem& like, std::int64_t value);
  static FFElem zero_like(const FFElem& like) { return from_int(like, 0); }

  std::int64_t characteristic() const { return ell_; }
  int degree() const { return degree_; }
  std::int64_t c0() const { return c0_; }
  std::int64_t c1() const { return c1_; }
  bool is_zero() const { return c0_ == 0 && c1_ == 0; }
  bool is_one() const { return c0_ == 1 && c1_ == 0; }

  // Size of the field this element lives in: l^degree.
  std::int64_t field_size() const;

  FFElem operator+(const FFElem& o) const;
  FFElem operator-(const FFElem& o) const;
  FFElem operator-() const;
  FFElem operator*(const FFElem& o) const;
  FFElem inverse() const;
  // Negative exponents invert first.
  FFElem pow(std::int64_t e) const;

  // Equality compares values, so an F_l element equals its image in F_{l^2}.
  friend bool operator==(const FFElem& a, const FFElem& b);
  friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }
  // Lexicographic order on (c0, c1).
  friend bool operator<(const FFElem& a, const FFElem& b);

  std::string to_string() const;

 private:
  FFElem promoted(int degree) const;
  std::int64_t ell_;
  int degree_;
  std::int64_t c0_;
  std::int64_t c1_;
};

// Modulus constants m0, m1 with t^2 = m0 + m1 t for F_{l^2}.
std::int64_t quadratic_modulus_m0(std::int64_t ell);
std::int64_t quadratic_modulus_m1(std::int64_t ell);

// Square root of q in F_l or F_{l^2}; the lexicographically least of the two
// roots. Throws InvalidModulus when l | q.
FFElem ff_sqrt(std::int64_t q, std::int64_t ell);

// Multiplicative order. Throws DomainError on zero.
std::int64_t ff_order(const FFElem& x);

}  // namespace dlcat
