#include "dlcat/monodromic.hpp"

#include <algorithm>
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

void require_same(const MonoBlockPtr& a, const MonoBlockPtr& b) {
  if (a.get() != b.get() && !(*a == *b)) throw UsageError("monodromic elements from different blocks");
}

// m * bar(H_s): the extra (v - v^-1) term only where s fixes the character.
MonoElem mul_bar_simple_right(const MonoElem& m, int s) {
  const MonoBlock& B = *m.block();
  MonoElem out = mono_mul_simple_right(m, s);
  for (const auto& [idx, p] : m.coeffs())
    if (B.fixed[s][B.char_of(idx)]) out.add_term(idx, p * v_minus_vinv());
  return out;
}

// bar(H_w 1_chi_c) for every basis index.
std::vector<MonoElem> mono_bar_images(const MonoBlockPtr& block) {
  const MonoBlock& B = *block;
  const WeylGroup& W = *B.group;
  std::vector<MonoElem> out;
  out.reserve(B.size());
  for (int idx = 0; idx < B.size(); ++idx) {
    const int w = B.elem_of(idx), c = B.char_of(idx);
    MonoElem x = MonoElem::idempotent(block, B.act[w][c]);
    for (int s : W.word(w)) x = mul_bar_simple_right(x, s);
    out.push_back(std::move(x));
  }
  return out;
}

std::map<int, Laurent> solve_column(const MonoBlock& B, int w, int c, bool positive,
                                    const std::vector<MonoElem>& bars) {
  const WeylGroup& W = *B.group;
  std::map<int, Laurent> col{{w, Laurent(1)}};
  for (int x = w - 1; x >= 0; --x) {
    if (!W.bruhat_leq(x, w)) continue;
    Laurent rhs;
    for (const auto& [y, hy] : col) {
      Laurent r = bars[B.index(y, c)].coeff(x, c);
      if (!r.is_zero()) rhs += r * hy.bar();
    }
    Laurent hx = positive ? rhs.positive_part() : rhs.negative_part();
    if (hx - hx.bar() != rhs)
      throw IdentityViolation("monodromic bar system has no solution at " + W.word_string(x));
    if (!hx.is_zero()) col.emplace(x, std::move(hx));
  }
  return col;
}

MonoElem column_elem(const MonoBlockPtr& block, int c, const std::map<int, Laurent>& col) {
  MonoElem m(block);
  for (const auto& [y, p] : col) m.add_term(block->index(y, c), p);
  return m;
}

}  // namespace

int MonoBlock::char_index(const TameCharacter& chi) const {
  auto it = std::lower_bound(chars.begin(), chars.end(), chi);
  if (it == chars.end() || !(*it == chi)) throw UsageError("character not in this block");
  return static_cast<int>(it - chars.begin());
}

MonoBlockPtr block_of(const WeylGroupPtr& group, const TameCharacter& chi) {
  auto B = std::make_shared<MonoBlock>();
  B->group = group;
  B->chars = orbit(*group, chi);
  const WeylGroup& W = *group;
  B->act.assign(W.size(), std::vector<int>(B->chars.size()));
  for (int w = 0; w < W.size(); ++w)
    for (int c = 0; c < B->orbit_size(); ++c) B->act[w][c] = B->char_index(act(W, w, B->chars[c]));
  B->fixed.assign(W.rank(), std::vector<char>(B->chars.size()));
  for (int s = 0; s < W.rank(); ++s) {
    const int sw = W.simple(s).index;
    for (int c = 0; c < B->orbit_size(); ++c) B->fixed[s][c] = B->act[sw][c] == c;
  }
  return B;
}

MonoBlockPtr block_basis(const WeylGroupPtr& group, const GeomClass& gc) {
  auto B = std::const_pointer_cast<MonoBlock>(block_of(group, gc.representative));
  B->class_id = gc.id;
  return B;
}

MonoElem::MonoElem(MonoBlockPtr block) : block_(std::move(block)) {
  if (!block_) throw UsageError("monodromic element without a block");
}

MonoElem MonoElem::basis(MonoBlockPtr block, int w, int c, const Laurent& coeff) {
  if (w < 0 || w >= block->group->size() || c < 0 || c >= block->orbit_size())
    throw UsageError("basis index out of range");
  MonoElem m(std::move(block));
  m.add_term(m.block_->index(w, c), coeff);
  return m;
}

MonoElem MonoElem::unit(MonoBlockPtr block) {
  MonoElem m(block);
  for (int c = 0; c < block->orbit_size(); ++c) m.add_term(block->index(0, c), 1);
  return m;
}

Laurent MonoElem::coeff(int w, int c) const {
  auto it = coeffs_.find(block_->index(w, c));
  return it == coeffs_.end() ? Laurent() : it->second;
}

void MonoElem::add_term(int index, const Laurent& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(index, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

MonoElem& MonoElem::operator+=(const MonoElem& rhs) {
  require_same(block_, rhs.block_);
  for (const auto& [i, c] : rhs.coeffs_) add_term(i, c);
  return *this;
}

MonoElem& MonoElem::operator-=(const MonoElem& rhs) {
  require_same(block_, rhs.block_);
  for (const auto& [i, c] : rhs.coeffs_) add_term(i, -c);
  return *this;
}

MonoElem MonoElem::scaled(const Laurent& c) const {
  MonoElem out(block_);
  if (c.is_zero()) return out;
  for (const auto& [i, p] : coeffs_) out.add_term(i, p * c);
  return out;
}

bool operator==(const MonoElem& a, const MonoElem& b) {
  return *a.block_ == *b.block_ && a.coeffs_ == b.coeffs_;
}

std::string MonoElem::to_string() const {
  if (coeffs_.empty()) return "0";
  const WeylGroup& W = *block_->group;
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    const int w = block_->elem_of(idx);
    std::string name = "H_" + (w == 0 ? std::string("e") : W.word_string(w)) + "*1_" +
                       block_->chars[block_->char_of(idx)].to_string();
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

MonoElem mono_mul_simple_right(const MonoElem& m, int s) {
  const MonoBlock& B = *m.block();
  const WeylGroup& W = *B.group;
  const int sw = W.simple(s).index;
  MonoElem out(m.block());
  for (const auto& [idx, p] : m.coeffs()) {
    const int z = B.elem_of(idx), c = B.char_of(idx);
    const int zs = W.right_mul(z, s);
    const int moved = B.act[sw][c];
    out.add_term(B.index(zs, moved), p);
    if (W.length(zs) < W.length(z) && B.fixed[s][c]) out.add_term(B.index(z, c), p * vinv_minus_v());
  }
  return out;
}

MonoElem mono_mul(const MonoElem& a, const MonoElem& b, bool permissive) {
  if (a.block().get() != b.block().get() && !(*a.block() == *b.block())) {
    if (permissive) return MonoElem(a.block());
    throw UsageError("product of elements from different blocks (it is zero; pass the permissive flag)");
  }
  const MonoBlock& B = *a.block();
  const WeylGroup& W = *B.group;
  // Split the left factor by its right idempotent.
  std::vector<MonoElem> by_char(B.orbit_size(), MonoElem(a.block()));
  for (const auto& [idx, p] : a.coeffs()) by_char[B.char_of(idx)].add_term(idx, p);
  MonoElem out(a.block());
  for (const auto& [idx, q] : b.coeffs()) {
    const int y = B.elem_of(idx), c = B.char_of(idx);
    MonoElem part = by_char[B.act[y][c]];
    if (part.is_zero()) continue;
    for (int s : W.word(y)) part = mono_mul_simple_right(part, s);
    out += part.scaled(q);
  }
  return out;
}

MonoElem mono_bar(const MonoElem& m) {
  const MonoBlock& B = *m.block();
  const WeylGroup& W = *B.group;
  MonoElem out(m.block());
  for (const auto& [idx, p] : m.coeffs()) {
    const int w = B.elem_of(idx), c = B.char_of(idx);
    MonoElem x = MonoElem::basis(m.block(), 0, B.act[w][c], p.bar());
    for (int s : W.word(w)) x = mul_bar_simple_right(x, s);
    out += x;
  }
  return out;
}

MonoElem mono_b(const MonoElem& m) {
  MonoElem out(m.block());
  for (const auto& [idx, p] : m.coeffs()) out.add_term(idx, p.b_twist());
  return out;
}

MonoKLTable::MonoKLTable(MonoBlockPtr block, std::vector<std::map<int, Laurent>> h,
                         std::vector<std::map<int, Laurent>> h_tilde)
    : block_(std::move(block)), h_(std::move(h)), h_tilde_(std::move(h_tilde)) {}

MonoElem MonoKLTable::kl(int w, int c) const {
  return column_elem(block_, c, h_.at(block_->index(w, c)));
}

MonoElem MonoKLTable::kl_tilde(int w, int c) const {
  return column_elem(block_, c, h_tilde_.at(block_->index(w, c)));
}

Laurent MonoKLTable::h(int y, int w, int c) const {
  const auto& col = h_.at(block_->index(w, c));
  auto it = col.find(y);
  return it == col.end() ? Laurent() : it->second;
}

Laurent MonoKLTable::h_tilde(int y, int w, int c) const {
  const auto& col = h_tilde_.at(block_->index(w, c));
  auto it = col.find(y);
  return it == col.end() ? Laurent() : it->second;
}

MonoKLTable compute_mono_kl(const MonoBlockPtr& block, int threads) {
  const MonoBlock& B = *block;
  const auto bars = mono_bar_images(block);
  std::vector<std::map<int, Laurent>> h(B.size()), ht(B.size());
  parallel_for(B.size(), threads, [&](int idx) {
    const int w = B.elem_of(idx), c = B.char_of(idx);
    h[idx] = solve_column(B, w, c, true, bars);
    ht[idx] = solve_column(B, w, c, false, bars);
  });
  return MonoKLTable(block, std::move(h), std::move(ht));
}

MonoElem mono_kl(const MonoBlockPtr& block, int w, int c) {
  MonoElem::basis(block, w, c);
  return column_elem(block, c, solve_column(*block, w, c, true, mono_bar_images(block)));
}

MonoElem mono_kl_tilde(const MonoBlockPtr& block, int w, int c) {
  MonoElem::basis(block, w, c);
  return column_elem(block, c, solve_column(*block, w, c, false, mono_bar_images(block)));
}

HeckeElem to_hecke(const MonoElem& m) {
  if (!m.block()->is_unipotent()) throw UsageError("only the unipotent block identifies with H");
  HeckeElem h(m.block()->group);
  for (const auto& [idx, p] : m.coeffs()) h.add_term(idx, p);
  return h;
}

MonoElem from_hecke(const MonoBlockPtr& unipotent, const HeckeElem& h) {
  if (!unipotent->is_unipotent()) throw UsageError("only the unipotent block identifies with H");
  if (h.group().get() != unipotent->group.get()) throw UsageError("Hecke element from another group");
  MonoElem m(unipotent);
  for (const auto& [w, p] : h.coeffs()) m.add_term(w, p);
  return m;
}

nlohmann::ordered_json mono_kl_to_json(const MonoKLTable& table) {
  const MonoBlock& B = *table.block();
  const WeylGroup& W = *B.group;
  nlohmann::ordered_json out;
  out["class_id"] = B.class_id;
  nlohmann::ordered_json chars = nlohmann::ordered_json::array();
  for (const auto& chi : B.chars) chars.push_back(chi.to_string());
  out["characters"] = std::move(chars);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int w = 0; w < W.size(); ++w)
    for (int c = 0; c < B.orbit_size(); ++c)
      for (int y = 0; y <= w; ++y) {
        Laurent h = table.h(y, w, c), ht = table.h_tilde(y, w, c);
        if (h.is_zero() && ht.is_zero()) continue;
        nlohmann::ordered_json row;
        row["type"] = "monokl";
        row["w"] = W.word_string(w);
        row["character"] = B.chars[c].to_string();
        row["y"] = W.word_string(y);
        row["h"] = laurent_to_json(h);
        row["h_tilde"] = laurent_to_json(ht);
        rows.push_back(std::move(row));
      }
  out["rows"] = std::move(rows);
  return out;
}

}  // namespace dlcat
