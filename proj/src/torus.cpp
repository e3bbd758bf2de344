#include "dlcat/torus.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "dlcat/error.hpp"
#include "dlcat/finite_field.hpp"
#include "dlcat/parallel.hpp"

namespace dlcat {

namespace {

long pos_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long pos_mod(const BigInt& a, long m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r.get_si();
}

long ell_part(long n, long ell) {
  long out = 1;
  while (n % ell == 0) {
    n /= ell;
    out *= ell;
  }
  return out;
}

void check_ell(long ell, const FrobeniusDatum& fd) {
  if (!is_prime(ell)) throw InvalidModulus("l = " + std::to_string(ell) + " is not prime");
  if (ell == fd.p) throw InvalidModulus("l must differ from the characteristic p");
}

// Least k >= 1 with M^k = 1.
int matrix_order(const IntMatrix& M, int cap = 10000) {
  IntMatrix P = M;
  for (int k = 1; k <= cap; ++k) {
    if (P.is_identity()) return k;
    P = P * M;
  }
  throw DomainError("matrix has no finite order below the cap");
}

}  // namespace

IntMatrix FrobeniusDatum::frobenius_matrix(int w) const {
  return (group->action(w) * tau_matrix()).scaled(BigInt(q));
}

FrobeniusDatum make_frobenius(WeylGroupPtr group, long q, std::optional<int> delta) {
  if (!group) throw UsageError("Frobenius datum needs a group");
  if (q < 2) throw ValidationError("q must be a prime power >= 2");
  long p = 0;
  for (long d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = q;
  long rest = q;
  int r = 0;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1) throw ValidationError("q = " + std::to_string(q) + " is not a prime power");
  FrobeniusDatum fd;
  fd.group = std::move(group);
  fd.q = q;
  fd.p = p;
  fd.r = r;
  const int base = fd.group->datum().tau_order();
  fd.delta = base;
  if (delta) {
    if (*delta <= 0 || *delta % base != 0)
      throw ValidationError("delta must be a positive multiple of the order of tau (" +
                            std::to_string(base) + ")");
    fd.delta = *delta;
  }
  return fd;
}

FixedTorus fixed_torus(int w, const FrobeniusDatum& fd) {
  const int r = fd.group->datum().rank;
  IntMatrix M = fd.frobenius_matrix(w) - IntMatrix::identity(r);
  BigInt det = r == 0 ? BigInt(1) : M.determinant();
  if (det == 0) throw DomainError("wF - 1 is singular");
  FixedTorus t;
  t.w = w;
  if (r == 0) return t;
  SmithForm snf = smith_normal_form(M);
  t.U = snf.U;
  t.V = snf.V;
  BigInt prod = 1;
  for (const BigInt& d : snf.invariants()) {
    t.invariants.push_back(d.get_si());
    prod *= d;
  }
  if (prod != abs(det)) throw IdentityViolation("Smith invariants disagree with the determinant");
  t.order = prod.get_si();
  return t;
}

long TorusCharacter::order() const {
  long o = 1;
  for (std::size_t i = 0; i < a.size(); ++i) o = std::lcm(o, moduli[i] / std::gcd(a[i], moduli[i]));
  return o;
}

bool TorusCharacter::is_trivial() const {
  return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

std::string TorusCharacter::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

std::vector<TorusCharacter> characters(const FixedTorus& t) {
  std::vector<TorusCharacter> out;
  TorusCharacter chi{std::vector<long>(t.invariants.size(), 0), t.invariants};
  const int n = static_cast<int>(t.invariants.size());
  while (true) {
    out.push_back(chi);
    int i = n - 1;
    while (i >= 0 && ++chi.a[i] == t.invariants[i]) chi.a[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

TorusCharacter character_power(const TorusCharacter& chi, long k) {
  TorusCharacter out = chi;
  for (std::size_t i = 0; i < out.a.size(); ++i)
    out.a[i] = pos_mod(static_cast<long>((__int128)chi.a[i] * pos_mod(k, chi.moduli[i]) %
                                         chi.moduli[i]),
                       chi.moduli[i]);
  return out;
}

TorusCharacter character_product(const TorusCharacter& x, const TorusCharacter& y) {
  if (x.moduli != y.moduli) throw UsageError("characters of different tori");
  TorusCharacter out = x;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = (x.a[i] + y.a[i]) % x.moduli[i];
  return out;
}

std::pair<TorusCharacter, TorusCharacter> ell_part_split(const TorusCharacter& chi, long ell,
                                                        const FrobeniusDatum& fd) {
  check_ell(ell, fd);
  const long o = chi.order();
  const long lo = ell_part(o, ell);
  const long rest = o / lo;
  // e = 1 mod lo, 0 mod rest.
  long e = 0;
  for (long k = 0; k < lo; ++k)
    if ((k * rest) % lo == 1 % lo) {
      e = k * rest;
      break;
    }
  if (lo == 1) e = 0;
  TorusCharacter chi_l = character_power(chi, e);
  TorusCharacter chi_lp = character_power(chi, 1 - e + o);
  return {chi_l, chi_lp};
}

std::vector<TorusCharacter> ell_power_characters(const FixedTorus& t, long ell,
                                                 const FrobeniusDatum& fd) {
  check_ell(ell, fd);
  std::vector<TorusCharacter> out;
  for (auto& chi : characters(t))
    if (ell_part(chi.order(), ell) == chi.order()) out.push_back(std::move(chi));
  return out;
}

TameCharacter make_tame(long den, std::vector<long> num) {
  if (den <= 0) throw DomainError("denominator must be positive");
  long g = den;
  for (long& x : num) {
    x = pos_mod(x, den);
    g = std::gcd(g, x);
  }
  TameCharacter out;
  out.den = den / g;
  for (long x : num) out.num.push_back(x / g);
  return out;
}

std::string TameCharacter::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (i) os << ",";
    if (num[i] == 0) {
      os << 0;
    } else {
      long g = std::gcd(num[i], den);
      os << num[i] / g << "/" << den / g;
    }
  }
  os << ")";
  return os.str();
}

TameCharacter tame_character(const FixedTorus& t, const TorusCharacter& chi) {
  const std::size_t r = t.invariants.size();
  long L = 1;
  for (long d : t.invariants) L = std::lcm(L, d);
  std::vector<long> num(r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < r; ++i) acc += BigInt(chi.a[i]) * t.U(i, j) * (L / t.invariants[i]);
    num[j] = pos_mod(acc, L);
  }
  return make_tame(L, std::move(num));
}

TameCharacter act(const WeylGroup& W, int x, const TameCharacter& theta) {
  const IntMatrix& X = W.action(W.inverse(x));
  const std::size_t r = theta.num.size();
  std::vector<long> out(r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < r; ++i) acc += BigInt(theta.num[i]) * X(i, j);
    out[j] = pos_mod(acc, theta.den);
  }
  return make_tame(theta.den, std::move(out));
}

std::vector<TameCharacter> orbit(const WeylGroup& W, const TameCharacter& theta) {
  std::vector<TameCharacter> out;
  for (int x = 0; x < W.size(); ++x) out.push_back(act(W, x, theta));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GeomClass> geometric_classes(const FrobeniusDatum& fd, int threads,
                                         std::optional<long> ell_prime_to) {
  if (ell_prime_to) check_ell(*ell_prime_to, fd);
  const WeylGroup& W = *fd.group;
  struct Pair {
    int w;
    TorusCharacter chi;
    TameCharacter key;
  };
  std::vector<std::vector<Pair>> per_w(W.size());
  parallel_for(W.size(), threads, [&](int w) {
    FixedTorus t = fixed_torus(w, fd);
    std::map<TameCharacter, TameCharacter> key_of;
    for (auto& chi : characters(t)) {
      if (ell_prime_to && chi.order() % *ell_prime_to == 0) continue;
      TameCharacter theta = tame_character(t, chi);
      auto it = key_of.find(theta);
      if (it == key_of.end()) it = key_of.emplace(theta, orbit(W, theta).front()).first;
      per_w[w].push_back({w, std::move(chi), it->second});
    }
  });
  std::map<TameCharacter, GeomClass> by_key;
  for (auto& pairs : per_w)
    for (auto& pr : pairs) {
      GeomClass& gc = by_key[pr.key];
      gc.members.emplace_back(pr.w, std::move(pr.chi));
    }
  std::vector<GeomClass> out;
  for (auto& [key, gc] : by_key) {
    gc.id = static_cast<int>(out.size());
    gc.representative = key;
    gc.orbit = orbit(W, key);
    std::sort(gc.members.begin(), gc.members.end());
    out.push_back(std::move(gc));
  }
  return out;
}

long brute_force_fixed_points(int w, const FrobeniusDatum& fd, int N, long cap) {
  const int r = fd.group->datum().rank;
  const IntMatrix WT = fd.group->action(w) * fd.tau_matrix();
  const int period = r == 0 ? 1 : matrix_order(WT);
  if (N == 0) N = period;
  if (N < 0 || N % period != 0)
    throw UsageError("extension degree must be a multiple of the order of w*tau");
  if (r == 0) return 1;
  BigInt mbig = 1;
  for (int k = 0; k < N; ++k) mbig *= fd.q;
  mbig -= 1;
  if (!mbig.fits_slong_p() || mbig > BigInt(1) << 40)
    throw OracleRangeError("q^N - 1 too large for enumeration");
  const long m = mbig.get_si();
  IntMatrix A = fd.frobenius_matrix(w) - IntMatrix::identity(r);
  std::vector<long> a_mod(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) a_mod[i * r + j] = pos_mod(A(i, j), m);

  // Every solution of A a = 0 mod m also satisfies det(A) a = 0 mod m
  // (multiply by the adjugate), so only that torsion grid needs scanning
  // when the full group is too large.
  long step = 1, g = m;
  auto size_of = [&](long base) {
    BigInt total = 1;
    for (int i = 0; i < r; ++i) total *= base;
    return total;
  };
  if (size_of(m) > cap) {
    const long det = pos_mod(A.determinant(), m);
    g = std::gcd(det, m);
    if (g == 0) g = m;
    step = m / g;
    if (size_of(g) > cap) throw OracleRangeError("fixed-point enumeration exceeds the cap");
  }
  long count = 0;
  std::vector<long> b(r, 0);
  while (true) {
    bool fixed = true;
    for (int i = 0; i < r && fixed; ++i) {
      __int128 acc = 0;
      for (int j = 0; j < r; ++j) acc += (__int128)a_mod[i * r + j] * (b[j] * step);
      fixed = acc % m == 0;
    }
    if (fixed) ++count;
    int i = r - 1;
    while (i >= 0 && ++b[i] == g) b[i--] = 0;
    if (i < 0) break;
  }
  return count;
}

nlohmann::ordered_json fixed_tori_to_json(const FrobeniusDatum& fd, bool with_characters) {
  const WeylGroup& W = *fd.group;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int w = 0; w < W.size(); ++w) {
    FixedTorus t = fixed_torus(w, fd);
    nlohmann::ordered_json row;
    row["w"] = W.word_string(w);
    row["invariants"] = t.invariants;
    row["order"] = t.order;
    if (with_characters) {
      nlohmann::ordered_json chars = nlohmann::ordered_json::array();
      for (const auto& chi : characters(t)) {
        nlohmann::ordered_json c;
        c["character"] = chi.a;
        c["order"] = chi.order();
        c["tame"] = tame_character(t, chi).to_string();
        chars.push_back(std::move(c));
      }
      row["characters"] = std::move(chars);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json series_to_json(const FrobeniusDatum& fd,
                                      const std::vector<GeomClass>& classes) {
  const WeylGroup& W = *fd.group;
  nlohmann::ordered_json out;
  out["datum"] = W.datum().label;
  out["q"] = fd.q;
  out["p"] = fd.p;
  out["delta"] = fd.delta;
  out["encoding"] =
      "characters are tuples against the Smith basis of coker(wF - 1); class keys are "
      "W-orbits of the induced maps X_* -> Q/Z";
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& gc : classes) {
    nlohmann::ordered_json c;
    c["id"] = gc.id;
    c["representative"] = gc.representative.to_string();
    c["orbit_size"] = gc.orbit.size();
    c["size"] = gc.members.size();
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (const auto& [w, chi] : gc.members)
      members.push_back(nlohmann::ordered_json{{"w", W.word_string(w)}, {"character", chi.a}});
    c["members"] = std::move(members);
    arr.push_back(std::move(c));
  }
  out["classes"] = std::move(arr);
  return out;
}

}  // namespace dlcat
