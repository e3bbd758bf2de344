#pragma once

#include <map>
#include <string>
#include <vector>

#include "dlcat/laurent.hpp"
#include "dlcat/weyl_group.hpp"
#include "json.hpp"

namespace dlcat {

// Element of the generic Hecke algebra written in the basis H_w = v^l(w) T_w.
// Multiplication rule: H_w H_s = H_ws if ws > w, else H_ws + (v^-1 - v) H_w.
class HeckeElem {
 public:
  using Coeffs = std::map<int, Laurent>;  // element index -> coefficient

  explicit HeckeElem(WeylGroupPtr group);
  static HeckeElem standard(WeylGroupPtr group, int w, const Laurent& coeff = 1);
  static HeckeElem unit(WeylGroupPtr group) { return standard(std::move(group), 0); }

  const WeylGroupPtr& group() const { return group_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Laurent coeff(int w) const;
  bool is_zero() const { return coeffs_.empty(); }

  void add_term(int w, const Laurent& c);

  HeckeElem& operator+=(const HeckeElem& rhs);
  HeckeElem& operator-=(const HeckeElem& rhs);
  friend HeckeElem operator+(HeckeElem a, const HeckeElem& b) { return a += b; }
  friend HeckeElem operator-(HeckeElem a, const HeckeElem& b) { return a -= b; }
  HeckeElem operator-() const;
  HeckeElem scaled(const Laurent& c) const;

  friend bool operator==(const HeckeElem& a, const HeckeElem& b);
  friend bool operator!=(const HeckeElem& a, const HeckeElem& b) { return !(a == b); }

  // "H_e + (v^-1 - v)*H_1" style.
  std::string to_string() const;

 private:
  WeylGroupPtr group_;
  Coeffs coeffs_;
};

HeckeElem mul(const HeckeElem& a, const HeckeElem& b);
HeckeElem mul_simple_right(const HeckeElem& h, int s);  // h * H_s
HeckeElem mul_simple_left(int s, const HeckeElem& h);   // H_s * h

// Bar involution: v -> v^-1, H_w -> H_{w^-1}^-1.
HeckeElem bar(const HeckeElem& h);
// a(v) = v, a(H_x) = (-1)^l(x) H_{x^-1}^-1.
HeckeElem invol_a(const HeckeElem& h);
// b(v) = -v^-1, b(H_w) = H_w.
HeckeElem invol_b(const HeckeElem& h);
// H_w^-1.
HeckeElem std_inverse(const WeylGroupPtr& group, int w);

enum class KLAlgorithm { Recursion, BarSolve };
enum class DescentChoice { LexLeast, LexGreatest };

struct KLOptions {
  KLAlgorithm algorithm = KLAlgorithm::Recursion;
  DescentChoice descent = DescentChoice::LexLeast;
  int threads = 1;
};

// Both self-dual bases of H: h(y, w) is the coefficient of H_y in the
// positive basis element \underline{H}_w, h_tilde(y, w) its counterpart in the
// negative basis.
class KLTable {
 public:
  KLTable(WeylGroupPtr group, std::vector<std::map<int, Laurent>> h,
          std::vector<std::map<int, Laurent>> h_tilde);

  const WeylGroupPtr& group() const { return group_; }
  Laurent h(int y, int w) const;
  Laurent h_tilde(int y, int w) const;
  const std::map<int, Laurent>& column(int w) const { return h_[w]; }
  const std::map<int, Laurent>& column_tilde(int w) const { return h_tilde_[w]; }

  HeckeElem kl_basis(int w) const;
  HeckeElem kl_tilde(int w) const;

  // P_{y,w}(1) = h_{y,w}(1).
  BigInt p_at_one(int y, int w) const;

  friend bool operator==(const KLTable& a, const KLTable& b) {
    return a.h_ == b.h_ && a.h_tilde_ == b.h_tilde_;
  }

 private:
  WeylGroupPtr group_;
  std::vector<std::map<int, Laurent>> h_;
  std::vector<std::map<int, Laurent>> h_tilde_;
};

KLTable compute_kl_table(const WeylGroupPtr& group, const KLOptions& options = {});

// Individual basis elements computed on their own (bar-matrix solve on the
// Bruhat interval below w).
HeckeElem kl_basis(const WeylGroupPtr& group, int w);
HeckeElem kl_tilde(const WeylGroupPtr& group, int w);

// Rows {"type":"kl","w","y","h","h_tilde"} for every y <= w; only the column
// of `w` when w >= 0.
nlohmann::ordered_json kl_table_to_json(const KLTable& table, int w = -1);
// Inverse of the full-table export.
KLTable kl_table_from_json(const WeylGroupPtr& group, const nlohmann::json& rows);

}  // namespace dlcat
