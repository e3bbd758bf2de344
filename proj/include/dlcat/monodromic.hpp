#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dlcat/hecke.hpp"
#include "dlcat/torus.hpp"
#include "json.hpp"

namespace dlcat {

// One block of the monodromic Hecke algebra: the span of H_w 1_chi for w in W
// and chi in one W-orbit of tame characters. Basis index of (w, c) is
// w * orbit_size + c. Relations used:
//   H_w 1_chi = 1_{w chi} H_w,
//   (H_s 1_chi)^2 = 1_chi + (v^-1 - v) H_s 1_chi   if s chi = chi,
//   H_s 1_{s chi} H_s 1_chi = 1_chi                 otherwise.
struct MonoBlock {
  WeylGroupPtr group;
  int class_id = -1;
  std::vector<TameCharacter> chars;      // sorted orbit
  std::vector<std::vector<int>> act;     // act[w][c]: index of w . chi_c
  std::vector<std::vector<char>> fixed;  // fixed[s][c]: s . chi_c == chi_c

  int orbit_size() const { return static_cast<int>(chars.size()); }
  int size() const { return group->size() * orbit_size(); }
  int index(int w, int c) const { return w * orbit_size() + c; }
  int elem_of(int index) const { return index / orbit_size(); }
  int char_of(int index) const { return index % orbit_size(); }
  int char_index(const TameCharacter& chi) const;  // throws UsageError if absent
  bool is_unipotent() const { return chars.size() == 1 && chars[0].is_trivial(); }

  friend bool operator==(const MonoBlock& a, const MonoBlock& b) {
    return a.group.get() == b.group.get() && a.chars == b.chars;
  }
};

using MonoBlockPtr = std::shared_ptr<const MonoBlock>;

MonoBlockPtr block_basis(const WeylGroupPtr& group, const GeomClass& gc);
// Block of the W-orbit of chi.
MonoBlockPtr block_of(const WeylGroupPtr& group, const TameCharacter& chi);

class MonoElem {
 public:
  using Coeffs = std::map<int, Laurent>;  // basis index -> coefficient

  explicit MonoElem(MonoBlockPtr block);
  // v^0 H_w 1_{chi_c}.
  static MonoElem basis(MonoBlockPtr block, int w, int c, const Laurent& coeff = 1);
  static MonoElem idempotent(MonoBlockPtr block, int c, const Laurent& coeff = 1) {
    return basis(std::move(block), 0, c, coeff);
  }
  static MonoElem unit(MonoBlockPtr block);

  const MonoBlockPtr& block() const { return block_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Laurent coeff(int w, int c) const;
  bool is_zero() const { return coeffs_.empty(); }
  void add_term(int index, const Laurent& c);

  MonoElem& operator+=(const MonoElem& rhs);
  MonoElem& operator-=(const MonoElem& rhs);
  friend MonoElem operator+(MonoElem a, const MonoElem& b) { return a += b; }
  friend MonoElem operator-(MonoElem a, const MonoElem& b) { return a -= b; }
  MonoElem scaled(const Laurent& c) const;

  friend bool operator==(const MonoElem& a, const MonoElem& b);
  friend bool operator!=(const MonoElem& a, const MonoElem& b) { return !(a == b); }

  std::string to_string() const;

 private:
  MonoBlockPtr block_;
  Coeffs coeffs_;
};

// Products across different blocks vanish; they raise UsageError unless
// `permissive` is set, in which case zero is returned.
MonoElem mono_mul(const MonoElem& a, const MonoElem& b, bool permissive = false);
// m * H_s, where H_s stands for sum over chi of H_s 1_chi.
MonoElem mono_mul_simple_right(const MonoElem& m, int s);
MonoElem mono_bar(const MonoElem& m);
// Scalars v -> -v^-1, basis fixed.
MonoElem mono_b(const MonoElem& m);

// Self-dual bases of a block, one column per basis index.
class MonoKLTable {
 public:
  MonoKLTable(MonoBlockPtr block, std::vector<std::map<int, Laurent>> h,
              std::vector<std::map<int, Laurent>> h_tilde);
  const MonoBlockPtr& block() const { return block_; }
  MonoElem kl(int w, int c) const;
  MonoElem kl_tilde(int w, int c) const;
  // Coefficient of H_y 1_chi_c in the basis element at (w, c).
  Laurent h(int y, int w, int c) const;
  Laurent h_tilde(int y, int w, int c) const;

 private:
  MonoBlockPtr block_;
  std::vector<std::map<int, Laurent>> h_;  // column index -> (y -> coeff)
  std::vector<std::map<int, Laurent>> h_tilde_;
};

MonoKLTable compute_mono_kl(const MonoBlockPtr& block, int threads = 1);
MonoElem mono_kl(const MonoBlockPtr& block, int w, int c);
MonoElem mono_kl_tilde(const MonoBlockPtr& block, int w, int c);

// Identification of the unipotent block with H.
HeckeElem to_hecke(const MonoElem& m);
MonoElem from_hecke(const MonoBlockPtr& unipotent, const HeckeElem& h);

nlohmann::ordered_json mono_kl_to_json(const MonoKLTable& table);

}  // namespace dlcat
