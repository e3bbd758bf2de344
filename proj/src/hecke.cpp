#include "dlcat/hecke.hpp"

#include <climits>
#include <sstream>

#include "dlcat/error.hpp"
#include "dlcat/json_io.hpp"
#include "dlcat/parallel.hpp"

namespace dlcat {

namespace {

const Laurent& v_minus_vinv() {
  static const Laurent x{{1, 1}, {-1, -1}};
  return x;
}

const Laurent& vinv_minus_v() {
  static const Laurent x{{-1, 1}, {1, -1}};
  return x;
}

void require_same(const WeylGroupPtr& a, const WeylGroupPtr& b) {
  if (a.get() != b.get()) throw UsageError("Hecke elements belong to different groups");
}

// bar(H_w) for every w, built along canonical words: bar(H_{w's}) = bar(H_w') bar(H_s).
std::vector<HeckeElem> bar_images(const WeylGroupPtr& W) {
  std::vector<HeckeElem> out;
  out.reserve(W->size());
  out.push_back(HeckeElem::unit(W));
  for (int w = 1; w < W->size(); ++w) {
    const auto& word = W->word(w);
    const int s = word.back();
    const int prefix = W->right_mul(w, s);
    const HeckeElem& base = out[prefix];
    out.push_back(mul_simple_right(base, s) + base.scaled(v_minus_vinv()));
  }
  return out;
}

// Lowest-degree symmetric correction that removes the exponents of `c`
// forbidden in the chosen basis.
Laurent symmetric_correction(const Laurent& c, bool positive) {
  if (positive) {
    Laurent neg = c.restrict_exponents(INT_MIN, -1);
    return c.restrict_exponents(0, 0) + neg + neg.bar();
  }
  Laurent pos = c.restrict_exponents(1, INT_MAX);
  return c.restrict_exponents(0, 0) + pos + pos.bar();
}

int pick_descent(const WeylGroup& W, int w, DescentChoice choice) {
  const std::uint64_t mask = W.left_descents(w);
  if (choice == DescentChoice::LexLeast) return __builtin_ctzll(mask);
  return 63 - __builtin_clzll(mask);
}

// Column of the positive (or negative) basis at w from the basis at s*w.
std::map<int, Laurent> recursion_column(const WeylGroupPtr& W, int w, bool positive,
                                        const std::vector<std::map<int, Laurent>>& known,
                                        DescentChoice choice) {
  if (w == 0) return {{0, Laurent(1)}};
  const int s = pick_descent(*W, w, choice);
  const int shorter = W->left_mul(s, w);
  HeckeElem prev(W);
  for (const auto& [y, c] : known[shorter]) prev.add_term(y, c);
  const Laurent shift = positive ? Laurent::v() : -Laurent::monomial(-1);
  HeckeElem acc = mul_simple_left(s, prev) + prev.scaled(shift);
  for (int y = w - 1; y >= 0; --y) {
    Laurent c = acc.coeff(y);
    if (c.is_zero()) continue;
    Laurent corr = symmetric_correction(c, positive);
    if (corr.is_zero()) continue;
    for (const auto& [z, hz] : known[y]) acc.add_term(z, -(corr * hz));
  }
  return acc.coeffs();
}

// Solve h_x - bar(h_x) = sum_{x<y<=w} R_{x,y} bar(h_y) from the top down.
std::map<int, Laurent> bar_solve_column(const WeylGroup& W, int w, bool positive,
                                        const std::vector<HeckeElem>& bars) {
  std::map<int, Laurent> col{{w, Laurent(1)}};
  for (int x = w - 1; x >= 0; --x) {
    if (!W.bruhat_leq(x, w)) continue;
    Laurent rhs;
    for (const auto& [y, hy] : col) {
      Laurent r = bars[y].coeff(x);
      if (!r.is_zero()) rhs += r * hy.bar();
    }
    Laurent hx = positive ? rhs.positive_part() : rhs.negative_part();
    if (hx - hx.bar() != rhs)
      throw IdentityViolation("bar-matrix system has no solution at " + W.word_string(x));
    if (!hx.is_zero()) col.emplace(x, std::move(hx));
  }
  return col;
}

HeckeElem from_column(const WeylGroupPtr& W, const std::map<int, Laurent>& col) {
  HeckeElem h(W);
  for (const auto& [y, c] : col) h.add_term(y, c);
  return h;
}

}  // namespace

HeckeElem::HeckeElem(WeylGroupPtr group) : group_(std::move(group)) {
  if (!group_) throw UsageError("Hecke element without a group");
}

HeckeElem HeckeElem::standard(WeylGroupPtr group, int w, const Laurent& coeff) {
  HeckeElem h(std::move(group));
  h.group_->elem(w);
  h.add_term(w, coeff);
  return h;
}

Laurent HeckeElem::coeff(int w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? Laurent() : it->second;
}

void HeckeElem::add_term(int w, const Laurent& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

HeckeElem& HeckeElem::operator+=(const HeckeElem& rhs) {
  require_same(group_, rhs.group_);
  for (const auto& [w, c] : rhs.coeffs_) add_term(w, c);
  return *this;
}

HeckeElem& HeckeElem::operator-=(const HeckeElem& rhs) {
  require_same(group_, rhs.group_);
  for (const auto& [w, c] : rhs.coeffs_) add_term(w, -c);
  return *this;
}

HeckeElem HeckeElem::operator-() const { return scaled(Laurent(-1)); }

HeckeElem HeckeElem::scaled(const Laurent& c) const {
  HeckeElem out(group_);
  if (c.is_zero()) return out;
  for (const auto& [w, p] : coeffs_) out.add_term(w, p * c);
  return out;
}

bool operator==(const HeckeElem& a, const HeckeElem& b) {
  return a.group_.get() == b.group_.get() && a.coeffs_ == b.coeffs_;
}

std::string HeckeElem::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    const std::string name = "H_" + (w == 0 ? std::string("e") : group_->word_string(w));
    if (c == Laurent(1)) {
      os << name;
    } else if (c.is_monomial()) {
      os << c << "*" << name;
    } else {
      os << "(" << c << ")*" << name;
    }
  }
  return os.str();
}

HeckeElem mul_simple_right(const HeckeElem& h, int s) {
  const WeylGroup& W = *h.group();
  HeckeElem out(h.group());
  for (const auto& [w, c] : h.coeffs()) {
    const int ws = W.right_mul(w, s);
    out.add_term(ws, c);
    if (W.length(ws) < W.length(w)) out.add_term(w, c * vinv_minus_v());
  }
  return out;
}

HeckeElem mul_simple_left(int s, const HeckeElem& h) {
  const WeylGroup& W = *h.group();
  HeckeElem out(h.group());
  for (const auto& [w, c] : h.coeffs()) {
    const int sw = W.left_mul(s, w);
    out.add_term(sw, c);
    if (W.length(sw) < W.length(w)) out.add_term(w, c * vinv_minus_v());
  }
  return out;
}

HeckeElem mul(const HeckeElem& a, const HeckeElem& b) {
  require_same(a.group(), b.group());
  const WeylGroup& W = *a.group();
  HeckeElem out(a.group());
  for (const auto& [y, c] : b.coeffs()) {
    HeckeElem part = a;
    for (int s : W.word(y)) part = mul_simple_right(part, s);
    out += part.scaled(c);
  }
  return out;
}

HeckeElem bar(const HeckeElem& h) {
  const WeylGroupPtr& W = h.group();
  std::map<int, HeckeElem> cache;
  std::function<const HeckeElem&(int)> image = [&](int w) -> const HeckeElem& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    HeckeElem val = HeckeElem::unit(W);
    if (w != 0) {
      const int s = W->word(w).back();
      const HeckeElem& base = image(W->right_mul(w, s));
      val = mul_simple_right(base, s) + base.scaled(v_minus_vinv());
    }
    return cache.emplace(w, std::move(val)).first->second;
  };
  HeckeElem out(W);
  for (const auto& [w, c] : h.coeffs()) out += image(w).scaled(c.bar());
  return out;
}

HeckeElem invol_a(const HeckeElem& h) {
  const WeylGroupPtr& W = h.group();
  HeckeElem out(W);
  for (const auto& [w, c] : h.coeffs()) {
    Laurent coeff = (W->length(w) % 2 == 0) ? c : -c;
    // bar(H_w) = H_{w^-1}^-1; undo the scalar bar that `bar` applies.
    out += bar(HeckeElem::standard(W, w, coeff.bar()));
  }
  return out;
}

HeckeElem invol_b(const HeckeElem& h) {
  HeckeElem out(h.group());
  for (const auto& [w, c] : h.coeffs()) out.add_term(w, c.b_twist());
  return out;
}

HeckeElem std_inverse(const WeylGroupPtr& group, int w) {
  return bar(HeckeElem::standard(group, group->inverse(w)));
}

KLTable::KLTable(WeylGroupPtr group, std::vector<std::map<int, Laurent>> h,
                 std::vector<std::map<int, Laurent>> h_tilde)
    : group_(std::move(group)), h_(std::move(h)), h_tilde_(std::move(h_tilde)) {
  if (static_cast<int>(h_.size()) != group_->size() ||
      static_cast<int>(h_tilde_.size()) != group_->size())
    throw ValidationError("KL table does not cover the group");
}

Laurent KLTable::h(int y, int w) const {
  auto it = h_.at(w).find(y);
  return it == h_[w].end() ? Laurent() : it->second;
}

Laurent KLTable::h_tilde(int y, int w) const {
  auto it = h_tilde_.at(w).find(y);
  return it == h_tilde_[w].end() ? Laurent() : it->second;
}

HeckeElem KLTable::kl_basis(int w) const { return from_column(group_, h_.at(w)); }
HeckeElem KLTable::kl_tilde(int w) const { return from_column(group_, h_tilde_.at(w)); }

BigInt KLTable::p_at_one(int y, int w) const { return h(y, w).eval(BigInt(1)); }

KLTable compute_kl_table(const WeylGroupPtr& group, const KLOptions& options) {
  const WeylGroup& W = *group;
  const int n = W.size();
  std::vector<std::map<int, Laurent>> h(n), ht(n);
  if (options.algorithm == KLAlgorithm::BarSolve) {
    const auto bars = bar_images(group);
    parallel_for(n, options.threads, [&](int w) {
      h[w] = bar_solve_column(W, w, true, bars);
      ht[w] = bar_solve_column(W, w, false, bars);
    });
    return KLTable(group, std::move(h), std::move(ht));
  }
  // Elements are indexed by length, so each length level only depends on
  // earlier levels.
  int start = 0;
  while (start < n) {
    int stop = start;
    while (stop < n && W.length(stop) == W.length(start)) ++stop;
    parallel_for(stop - start, options.threads, [&](int i) {
      const int w = start + i;
      h[w] = recursion_column(group, w, true, h, options.descent);
      ht[w] = recursion_column(group, w, false, ht, options.descent);
    });
    start = stop;
  }
  return KLTable(group, std::move(h), std::move(ht));
}

HeckeElem kl_basis(const WeylGroupPtr& group, int w) {
  group->elem(w);
  return from_column(group, bar_solve_column(*group, w, true, bar_images(group)));
}

HeckeElem kl_tilde(const WeylGroupPtr& group, int w) {
  group->elem(w);
  return from_column(group, bar_solve_column(*group, w, false, bar_images(group)));
}

nlohmann::ordered_json kl_table_to_json(const KLTable& table, int w) {
  const WeylGroup& W = *table.group();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  const int lo = w >= 0 ? w : 0;
  const int hi = w >= 0 ? w + 1 : W.size();
  for (int x = lo; x < hi; ++x) {
    for (int y = 0; y <= x; ++y) {
      if (!W.bruhat_leq(y, x)) continue;
      nlohmann::ordered_json row;
      row["type"] = "kl";
      row["w"] = W.word_string(x);
      row["y"] = W.word_string(y);
      row["h"] = laurent_to_json(table.h(y, x));
      row["h_tilde"] = laurent_to_json(table.h_tilde(y, x));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

KLTable kl_table_from_json(const WeylGroupPtr& group, const nlohmann::json& rows) {
  if (!rows.is_array()) throw ValidationError("KL table JSON must be an array of rows");
  const int n = group->size();
  std::vector<std::map<int, Laurent>> h(n), ht(n);
  for (const auto& row : rows) {
    if (!row.is_object() || !row.contains("w") || !row.contains("y"))
      throw ValidationError("KL row needs 'w' and 'y'");
    const int w = group->parse_word(row["w"].get<std::string>());
    const int y = group->parse_word(row["y"].get<std::string>());
    if (row.contains("h")) {
      Laurent p = laurent_from_json(row["h"]);
      if (!p.is_zero()) h[w][y] = std::move(p);
    }
    if (row.contains("h_tilde")) {
      Laurent p = laurent_from_json(row["h_tilde"]);
      if (!p.is_zero()) ht[w][y] = std::move(p);
    }
  }
  return KLTable(group, std::move(h), std::move(ht));
}

}  // namespace dlcat
