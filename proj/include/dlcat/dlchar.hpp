#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dlcat/finite_field.hpp"
#include "dlcat/hecke.hpp"
#include "dlcat/monodromic.hpp"
#include "dlcat/torus.hpp"
#include "json.hpp"

namespace dlcat {

enum class K0Kind { Std, Costd, IC, Tilt };
enum class CoeffRing { Qbar, Zbar };

std::string to_string(K0Kind kind);
K0Kind parse_k0_kind(const std::string& text);

// Multiplicities n_{v,w,chi_l}: one table for chi_l = 1 plus optional
// overrides per (v, w, character tuple of T^{wF}). Missing entries are 0.
class NMatrix {
 public:
  NMatrix() = default;
  explicit NMatrix(WeylGroupPtr group) : group_(std::move(group)) {}

  // Throws ValidationError unless v < w in the Bruhat order and n >= 0.
  void set(int v, int w, long n);
  void set_override(int v, int w, const std::vector<long>& chi, long n);
  long get(int v, int w) const;
  long get(int v, int w, const std::vector<long>& chi) const;
  bool is_zero() const;
  // Pairs (v, n) with n > 0 for a fixed w and character.
  std::vector<std::pair<int, long>> column(int w, const std::vector<long>& chi) const;

 private:
  void check(int v, int w, long n) const;
  WeylGroupPtr group_;
  std::map<std::pair<int, int>, long> base_;
  std::map<std::tuple<int, int, std::vector<long>>, long> overrides_;
};

// Schema: {"entries": [{"v", "w", "n"}], "overrides": [{"v", "w", "character", "n"}]}.
// An empty document or empty object is the zero table.
NMatrix n_matrix_from_json(const WeylGroupPtr& group, const nlohmann::json& j);
NMatrix load_n_matrix(const WeylGroupPtr& group, const std::string& path);

// Class in K_0 of the mixed category: the element of the monodromic Hecke
// algebra attached to (kind, w, chi). Tilting classes with chi nontrivial are
// conjectural; without the flag their element is left empty.
struct K0Class {
  K0Kind kind = K0Kind::Std;
  int w = 0;
  TameCharacter chi;
  CoeffRing ring = CoeffRing::Qbar;
  int tate = 0;  // number of half Tate twists; each multiplies by v^-1
  bool conjectural = false;
  std::optional<MonoElem> element;
};

// Throws GatedFeatureError for a tilting class with chi nontrivial unless
// `allow_conjectural` is set.
K0Class k0_class(K0Kind kind, const MonoBlockPtr& block, int w, int c, CoeffRing ring,
                 int tate = 0, bool allow_conjectural = false);
// Unipotent shortcut: chi trivial.
K0Class k0_class(K0Kind kind, const WeylGroupPtr& group, int w, CoeffRing ring, int tate = 0);

struct Summand {
  K0Class cls;
  long multiplicity = 1;
};

// Inverting l: a class over Z_l-bar with trivial character splits into the
// classes over Q_l-bar of the l-power characters chi_l of T^{wF}; tilting
// classes pick up extra summands T_{v,chi_l} with multiplicity n_{v,w,chi_l}.
std::vector<Summand> zl_decompose(const K0Class& c, const FrobeniusDatum& fd, long ell,
                                  const NMatrix& n, bool allow_conjectural = false);

// Formal Z[v, v^-1]-combination of symbols rho_{w,theta}.
class UniformVirtual {
 public:
  using Key = std::pair<int, TameCharacter>;

  UniformVirtual() = default;
  explicit UniformVirtual(WeylGroupPtr group) : group_(std::move(group)) {}

  const WeylGroupPtr& group() const { return group_; }
  const std::map<Key, Laurent>& terms() const { return terms_; }
  Laurent coeff(int w, const TameCharacter& theta) const;
  bool is_zero() const { return terms_.empty(); }
  void add_term(int w, const TameCharacter& theta, const Laurent& c);

  UniformVirtual& operator+=(const UniformVirtual& rhs);
  friend UniformVirtual operator+(UniformVirtual a, const UniformVirtual& b) { return a += b; }
  UniformVirtual scaled(const Laurent& c) const;
  UniformVirtual operator-() const { return scaled(Laurent(-1)); }
  // Keep only monomials whose exponent satisfies pred.
  template <class Pred>
  UniformVirtual filter_exponents(Pred pred) const {
    UniformVirtual out(group_);
    for (const auto& [k, p] : terms_)
      for (const auto& [e, c] : p.terms())
        if (pred(e)) out.add_term(k.first, k.second, Laurent::monomial(e, c));
    return out;
  }
  std::vector<int> exponents() const;  // sorted, distinct

  friend bool operator==(const UniformVirtual& a, const UniformVirtual& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const UniformVirtual& a, const UniformVirtual& b) { return !(a == b); }

  std::string to_string() const;
  nlohmann::ordered_json to_json() const;

 private:
  WeylGroupPtr group_;
  std::map<Key, Laurent> terms_;
};

TameCharacter trivial_tame(const WeylGroup& W);

UniformVirtual ch_map(const MonoElem& m);
UniformVirtual ch_map(const HeckeElem& h);
UniformVirtual ch_map(const K0Class& c);  // GatedFeatureError if the element is absent

// d(v^n rho_{w,theta}) = (-1)^l(w) v^-n rho_{w,theta}.
UniformVirtual alvis_curtis(const UniformVirtual& u);

struct DualityReport {
  int w = 0;
  TameCharacter chi;
  int sign = 0;  // d(ch(IC)) = sign * ch(T)
  UniformVirtual ic;
  UniformVirtual tilt;
};

// Throws IdentityViolation when d(ch(IC_{w,chi})) is not +-ch(T_{w,chi}).
DualityReport duality_check(const MonoKLTable& table, int w, int c, bool allow_conjectural = false);
DualityReport duality_check(const KLTable& table, int w);

// Class functions on W at v = 1 in the basis R_c (one entry per conjugacy
// class, R_x = R_c for x in c).
using ClassFunction = std::vector<BigRat>;

// tr(h)|_{v=1} = sum_E tr(h(1), E) R_E with R_E = |W|^-1 sum_x chi_E(x) R_x.
ClassFunction tr_map(const HeckeElem& h, const CharTable& table);
// (ch o b)(h) at v = 1 with rho_y -> (-1)^l(y) R_y.
ClassFunction ch_b_at_one(const HeckeElem& h, const ConjugacyClasses& classes);

struct TraceReport {
  int w = 0;
  int sign = 0;  // tr = sign * (ch o b)
  ClassFunction tr;
  ClassFunction ch_b;
  ClassFunction kl_sum;  // sum_y P_{y,w}(1) R_y
};

// Throws UnsupportedError for twisted data and IdentityViolation on mismatch.
TraceReport tr_identity_check(const KLTable& kl, const CharTable& table, int w);

enum class SqrtChoice { Canonical, Other };
SqrtChoice parse_sqrt_choice(const std::string& text);
std::string to_string(SqrtChoice choice);

struct WeightPartition {
  long ell = 0;  // 0: no reduction, every exponent is its own class
  long q = 0;
  int delta = 1;
  SqrtChoice sqrt_choice = SqrtChoice::Canonical;
  std::string sqrt_value;
  long period = 0;  // order of (sqrt q)^delta; 0 without reduction
  std::map<long, UniformVirtual> classes;  // class id -> component

  // Class id of an exponent.
  long class_of(int exponent) const;
};

WeightPartition weight_partition(const UniformVirtual& u, long q, long ell, int delta,
                                 SqrtChoice choice = SqrtChoice::Canonical);

struct ProjCertificate {
  int w = 0;
  long lambda_bar = 0;       // class of the IC component
  long tilt_lambda_bar = 0;  // class of the matching tilting component
  UniformVirtual ic_component;
  UniformVirtual dual;
  UniformVirtual tilt_component;
  int sign = 0;
  bool pass = false;
};

struct CertificateSet {
  WeylGroupPtr group;
  int w = 0;
  long q = 0;
  long ell = 0;
  SqrtChoice sqrt_choice = SqrtChoice::Canonical;
  std::string sqrt_value;
  long period = 0;
  std::vector<ProjCertificate> classes;
  bool all_pass() const;
};

// Unipotent part of the integral tilting class: ch(H_w) + sum_v n_{v,w} ch(H_v)
// in the positive KL basis.
UniformVirtual tilt_unipotent(const KLTable& kl, int w, const NMatrix& n);

CertificateSet dudas_malle_certificate(const KLTable& kl, const FrobeniusDatum& fd, int w,
                                       long ell, const NMatrix& n,
                                       SqrtChoice choice = SqrtChoice::Canonical);

nlohmann::ordered_json certificate_to_json(const CertificateSet& cert);
nlohmann::ordered_json class_function_to_json(const ClassFunction& f);

}  // namespace dlcat
