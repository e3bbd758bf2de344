#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dlcat/int_matrix.hpp"
#include "dlcat/root_datum.hpp"

namespace dlcat {

class WeylGroup;

// Element of a finite Weyl group: an index into the group's element table.
// Index 0 is the identity; indices are ordered by (length, canonical word).
struct WeylElem {
  const WeylGroup* group = nullptr;
  int index = 0;

  int length() const;
  const std::vector<int>& word() const;
  const IntMatrix& action() const;  // on X_*
  std::string to_string() const;    // hyphen-joined 1-based letters

  friend bool operator==(const WeylElem& a, const WeylElem& b) {
    return a.group == b.group && a.index == b.index;
  }
  friend bool operator!=(const WeylElem& a, const WeylElem& b) { return !(a == b); }
  friend bool operator<(const WeylElem& a, const WeylElem& b) { return a.index < b.index; }
};

// Immutable table of a finite Weyl group built from a root datum.
class WeylGroup {
 public:
  static constexpr int kDefaultCap = 100000;

  const RootDatum& datum() const { return datum_; }
  int size() const { return static_cast<int>(length_.size()); }
  int rank() const { return num_simple_; }  // number of simple reflections

  WeylElem elem(int index) const;
  WeylElem identity() const { return elem(0); }
  WeylElem simple(int s) const;  // 0-based generator index
  WeylElem longest() const { return elem(longest_); }
  std::vector<WeylElem> elements() const;

  int length(int w) const { return length_[w]; }
  const std::vector<int>& word(int w) const { return word_[w]; }
  const IntMatrix& action(int w) const { return xstar_[w]; }

  int right_mul(int w, int s) const { return right_[w * num_simple_ + s]; }
  int left_mul(int s, int w) const { return left_[w * num_simple_ + s]; }
  int inverse(int w) const { return inverse_[w]; }
  int multiply(int x, int y) const;
  // tau applied letterwise.
  int twist(int w) const { return tau_[w]; }

  bool is_left_descent(int w, int s) const { return (left_desc_[w] >> s) & 1u; }
  bool is_right_descent(int w, int s) const { return (right_desc_[w] >> s) & 1u; }
  std::uint64_t left_descents(int w) const { return left_desc_[w]; }
  std::uint64_t right_descents(int w) const { return right_desc_[w]; }

  // y <= w in the Bruhat order.
  bool bruhat_leq(int y, int w) const { return below_[w][y] != 0; }

  // Element whose canonical word (or any reduced or non-reduced word) is given.
  int from_word(const std::vector<int>& letters) const;
  // Accepts "", "e", "1-2-1", "121", "s1s2s1".
  int parse_word(std::string_view text) const;
  std::string word_string(int w) const;

 private:
  friend std::shared_ptr<const WeylGroup> build_group(const RootDatum&, int);
  WeylGroup() = default;

  RootDatum datum_;
  int num_simple_ = 0;
  int longest_ = 0;
  std::vector<int> length_;
  std::vector<std::vector<int>> word_;
  std::vector<IntMatrix> xstar_;
  std::vector<int> right_;
  std::vector<int> left_;
  std::vector<int> inverse_;
  std::vector<int> tau_;
  std::vector<std::uint64_t> left_desc_;
  std::vector<std::uint64_t> right_desc_;
  std::vector<std::vector<char>> below_;  // below_[w][y] = (y <= w)
};

using WeylGroupPtr = std::shared_ptr<const WeylGroup>;

// Enumerates W. Throws ValidationError on a malformed datum and
// InfiniteGroupError once more than `cap` elements are found.
WeylGroupPtr build_group(const RootDatum& datum, int cap = WeylGroup::kDefaultCap);

WeylElem multiply(const WeylElem& x, const WeylElem& y);
WeylElem invert(const WeylElem& x);
bool bruhat_leq(const WeylElem& y, const WeylElem& w);

// Partition of W into ordinary (twisted = false) or tau-twisted classes
// x ~ w x tau(w)^-1. Classes are ordered by their least element index.
struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
};
ConjugacyClasses conjugacy_classes(const WeylGroup& W, bool twisted = false);

// Ordinary character table of a split Weyl group computed by Dixon's method.
// values[i][c] = chi_i(g_c); row 0 is the trivial character.
struct CharTable {
  ConjugacyClasses classes;
  std::vector<std::vector<long>> values;
  std::vector<long> degrees() const;
};
CharTable char_table(const WeylGroup& W);

}  // namespace dlcat
