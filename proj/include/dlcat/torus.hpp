#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlcat/int_matrix.hpp"
#include "dlcat/weyl_group.hpp"
#include "json.hpp"

namespace dlcat {

// Frobenius data: q = p^r and the twist tau. delta is the least d with
// tau^d = 1 unless overridden by a multiple of it.
struct FrobeniusDatum {
  WeylGroupPtr group;
  long q = 0;
  long p = 0;
  int r = 0;
  int delta = 1;

  const IntMatrix& tau_matrix() const { return group->datum().tau_matrix; }
  // Matrix of wF on X_*: q * w * tau.
  IntMatrix frobenius_matrix(int w) const;
};

// Throws ValidationError unless q is a prime power >= 2 and delta (when
// given) is a positive multiple of the order of tau.
FrobeniusDatum make_frobenius(WeylGroupPtr group, long q, std::optional<int> delta = {});

// T^{wF} = coker(wF - 1 : X_* -> X_*) = (+) Z/d_i via U (wF - 1) V = D.
struct FixedTorus {
  int w = 0;
  std::vector<long> invariants;  // d_1 | d_2 | ... | d_rank
  IntMatrix U;
  IntMatrix V;
  long order = 1;
};

FixedTorus fixed_torus(int w, const FrobeniusDatum& fd);

// Character of T^{wF} as a tuple a_i in Z/d_i.
struct TorusCharacter {
  std::vector<long> a;
  std::vector<long> moduli;

  long order() const;
  bool is_trivial() const;
  std::string to_string() const;  // "(a_1,...,a_r)"
  friend bool operator==(const TorusCharacter& x, const TorusCharacter& y) {
    return x.a == y.a && x.moduli == y.moduli;
  }
  friend bool operator<(const TorusCharacter& x, const TorusCharacter& y) {
    return x.a < y.a;
  }
};

std::vector<TorusCharacter> characters(const FixedTorus& t);
TorusCharacter character_power(const TorusCharacter& chi, long k);
TorusCharacter character_product(const TorusCharacter& x, const TorusCharacter& y);

// chi = chi_l * chi_l' with chi_l of l-power order and chi_l' of order prime to l.
std::pair<TorusCharacter, TorusCharacter> ell_part_split(const TorusCharacter& chi, long ell,
                                                        const FrobeniusDatum& fd);
// Characters of l-power order, in enumeration order.
std::vector<TorusCharacter> ell_power_characters(const FixedTorus& t, long ell,
                                                 const FrobeniusDatum& fd);

// Homomorphism X_* -> Q/Z written as num / den with den the exact order.
struct TameCharacter {
  long den = 1;
  std::vector<long> num;

  bool is_trivial() const { return den == 1; }
  std::string to_string() const;  // "(1/4,3/4)"
  friend bool operator==(const TameCharacter& x, const TameCharacter& y) {
    return x.den == y.den && x.num == y.num;
  }
  friend bool operator<(const TameCharacter& x, const TameCharacter& y) {
    if (x.den != y.den) return x.den < y.den;
    return x.num < y.num;
  }
};

TameCharacter make_tame(long den, std::vector<long> num);  // reduces
// chi composed with X_* -> T^{wF}.
TameCharacter tame_character(const FixedTorus& t, const TorusCharacter& chi);
// Left W-action: (x . theta)(y) = theta(x^-1 y).
TameCharacter act(const WeylGroup& W, int x, const TameCharacter& theta);
// Orbit under W, sorted; its first element is the canonical representative.
std::vector<TameCharacter> orbit(const WeylGroup& W, const TameCharacter& theta);

struct GeomClass {
  int id = 0;
  TameCharacter representative;
  std::vector<TameCharacter> orbit;
  std::vector<std::pair<int, TorusCharacter>> members;  // (w, chi), sorted
};

// Partition of all pairs (w, chi), w in W, chi in Irr(T^{wF}), into W-orbits
// of the transported characters. Classes are sorted by representative, so the
// unipotent class comes first. With `ell_prime_to` set, only characters of
// order prime to it are kept (coefficients in F_l-bar).
std::vector<GeomClass> geometric_classes(const FrobeniusDatum& fd, int threads = 1,
                                         std::optional<long> ell_prime_to = {});

// |T^{wF}| by enumerating t in (F_{q^N}^x)^rank with (wF)(t) = t, written as
// exponent vectors against a generator of the cyclic group F_{q^N}^x.
// N = 0 picks the order of w*tau. Throws OracleRangeError beyond `cap` points.
long brute_force_fixed_points(int w, const FrobeniusDatum& fd, int N = 0,
                              long cap = 20'000'000);

nlohmann::ordered_json fixed_tori_to_json(const FrobeniusDatum& fd, bool with_characters);
nlohmann::ordered_json series_to_json(const FrobeniusDatum& fd,
                                      const std::vector<GeomClass>& classes);

}  // namespace dlcat
