#include "dlcat/finite_field.hpp"

#include <algorithm>
#include <vector>

#include "dlcat/error.hpp"

namespace dlcat {

namespace {

std::int64_t norm_mod(std::int64_t x, std::int64_t m) {
  x %= m;
  return x < 0 ? x + m : x;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t legendre(std::int64_t a, std::int64_t p) {
  std::int64_t r = mod_pow(norm_mod(a, p), (p - 1) / 2, p);
  return r == p - 1 ? -1 : r;
}

std::int64_t least_nonresidue(std::int64_t p) {
  for (std::int64_t n = 2; n < p; ++n)
    if (legendre(n, p) == -1) return n;
  throw DomainError("no quadratic non-residue");
}

// Tonelli-Shanks; a must be a non-zero square mod the odd prime p.
std::int64_t tonelli_shanks(std::int64_t a, std::int64_t p) {
  a = norm_mod(a, p);
  if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
  std::int64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::int64_t z = least_nonresidue(p);
  std::int64_t m = s;
  std::int64_t c = mod_pow(z, q, p);
  std::int64_t t = mod_pow(a, q, p);
  std::int64_t r = mod_pow(a, (q + 1) / 2, p);
  while (t != 1) {
    std::int64_t i = 0;
    std::int64_t tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base = norm_mod(base, mod);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

std::int64_t quadratic_modulus_m0(std::int64_t ell) {
  return ell == 2 ? 1 : least_nonresidue(ell);
}

std::int64_t quadratic_modulus_m1(std::int64_t ell) { return ell == 2 ? 1 : 0; }

FFElem::FFElem(std::int64_t ell, int degree, std::int64_t c0, std::int64_t c1)
    : ell_(ell), degree_(degree), c0_(norm_mod(c0, ell)), c1_(norm_mod(c1, ell)) {
  if (!is_prime(ell)) throw InvalidModulus("field characteristic must be prime");
  if (degree != 1 && degree != 2) throw DomainError("extension degree must be 1 or 2");
  if (degree == 1 && c1_ != 0) throw DomainError("prime-field element with a t-component");
}

FFElem FFElem::prime_field(std::int64_t ell, std::int64_t value) {
  return FFElem(ell, 1, value, 0);
}

FFElem FFElem::from_int(const FFElem& like, std::int64_t value) {
  return FFElem(like.ell_, like.degree_, value, 0);
}

std::int64_t FFElem::field_size() const { return degree_ == 1 ? ell_ : ell_ * ell_; }

FFElem FFElem::promoted(int degree) const {
  if (degree <= degree_) return *this;
  return FFElem(ell_, degree, c0_, c1_);
}

FFElem FFElem::operator+(const FFElem& o) const {
  if (o.ell_ != ell_) throw UsageError("finite-field characteristics differ");
  int d = std::max(degree_, o.degree_);
  return FFElem(ell_, d, c0_ + o.c0_, c1_ + o.c1_);
}

FFElem FFElem::operator-() const { return FFElem(ell_, degree_, -c0_, -c1_); }

FFElem FFElem::operator-(const FFElem& o) const { return *this + (-o); }

FFElem FFElem::operator*(const FFElem& o) const {
  if (o.ell_ != ell_) throw UsageError("finite-field characteristics differ");
  int d = std::max(degree_, o.degree_);
  if (d == 1) return FFElem(ell_, 1, mul_mod(c0_, o.c0_, ell_), 0);
  // (a + bt)(c + dt) = ac + (ad + bc)t + bd t^2, t^2 = m0 + m1 t
  std::int64_t m0 = quadratic_modulus_m0(ell_);
  std::int64_t m1 = quadratic_modulus_m1(ell_);
  std::int64_t bd = mul_mod(c1_, o.c1_, ell_);
  std::int64_t r0 = (mul_mod(c0_, o.c0_, ell_) + mul_mod(bd, m0, ell_)) % ell_;
  std::int64_t r1 = (mul_mod(c0_, o.c1_, ell_) + mul_mod(c1_, o.c0_, ell_) +
                     mul_mod(bd, m1, ell_)) % ell_;
  return FFElem(ell_, 2, r0, r1);
}

FFElem FFElem::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in a finite field");
  return pow(field_size() - 2);
}

FFElem FFElem::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  FFElem result = from_int(*this, 1);
  FFElem base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool operator==(const FFElem& a, const FFElem& b) {
  return a.ell_ == b.ell_ && a.c0_ == b.c0_ && a.c1_ == b.c1_;
}

bool operator<(const FFElem& a, const FFElem& b) {
  if (a.c0_ != b.c0_) return a.c0_ < b.c0_;
  return a.c1_ < b.c1_;
}

std::string FFElem::to_string() const {
  if (degree_ == 1) return std::to_string(c0_);
  return std::to_string(c0_) + "+" + std::to_string(c1_) + "t";
}

FFElem ff_sqrt(std::int64_t q, std::int64_t ell) {
  if (!is_prime(ell)) throw InvalidModulus("l must be prime");
  std::int64_t a = norm_mod(q, ell);
  if (a == 0) throw InvalidModulus("l divides q");
  if (ell == 2) return FFElem::prime_field(2, 1);
  if (legendre(a, ell) == 1) {
    std::int64_t r = tonelli_shanks(a, ell);
    return FFElem::prime_field(ell, std::min(r, ell - r));
  }
  // q = n * c^2 with n the fixed non-residue, so sqrt(q) = c t.
  std::int64_t n = quadratic_modulus_m0(ell);
  std::int64_t ratio = mul_mod(a, mod_pow(n, ell - 2, ell), ell);
  std::int64_t c = tonelli_shanks(ratio, ell);
  return FFElem(ell, 2, 0, std::min(c, ell - c));
}

std::int64_t ff_order(const FFElem& x) {
  if (x.is_zero()) throw DomainError("multiplicative order of zero");
  std::int64_t group = x.field_size() - 1;
  std::int64_t order = group;
  std::int64_t rest = group;
  std::vector<std::int64_t> primes;
  for (std::int64_t d = 2; d * d <= rest; ++d) {
    if (rest % d == 0) {
      primes.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) primes.push_back(rest);
  for (std::int64_t p : primes)
    while (order % p == 0 && x.pow(order / p).is_one()) order /= p;
  return order;
}

}  // namespace dlcat
