#pragma once

#include <map>
#include <vector>

#include "dlcat/hecke.hpp"

namespace dlcat::testing {

// Self-contained bar-matrix solve used as a second opinion on KL columns.
// bar(H_w) is assembled as the product of H_s + (v - v^-1) over a reduced
// word, then h_x - bar(h_x) = sum_{x<y<=w} R_{x,y} bar(h_y) is solved in
// order of decreasing length by keeping the positive (or negative) half.
class BarMatrixOracle {
 public:
  explicit BarMatrixOracle(WeylGroupPtr W) : W_(std::move(W)) {
    const Laurent shift{{1, 1}, {-1, -1}};
    for (int w = 0; w < W_->size(); ++w) {
      HeckeElem acc = HeckeElem::unit(W_);
      for (int s : W_->word(w))
        acc = mul(acc, HeckeElem::standard(W_, W_->simple(s).index) + HeckeElem::standard(W_, 0, shift));
      bars_.push_back(acc);
    }
  }

  std::map<int, Laurent> column(int w, bool positive) const {
    std::vector<int> order;
    for (int x = 0; x < W_->size(); ++x)
      if (x != w && W_->length(x) < W_->length(w)) order.push_back(x);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return W_->length(a) > W_->length(b); });
    std::map<int, Laurent> col{{w, Laurent(1)}};
    for (int x : order) {
      Laurent rhs;
      for (const auto& [y, hy] : col) rhs += bars_[y].coeff(x) * hy.bar();
      Laurent hx;
      for (const auto& [e, c] : rhs.terms())
        if (positive ? e > 0 : e < 0) hx += Laurent::monomial(e, c);
      if (!hx.is_zero()) col[x] = hx;
    }
    return col;
  }

 private:
  WeylGroupPtr W_;
  std::vector<HeckeElem> bars_;
};

}  // namespace dlcat::testing
