#include "dlcat/weyl_group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>

#include "dlcat/error.hpp"

namespace dlcat {

namespace {

using SmallMat = std::vector<long>;  // row-major n x n

SmallMat small_mul(const SmallMat& a, const SmallMat& b, int n) {
  SmallMat out(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long x = a[i * n + k];
      if (x == 0) continue;
      for (int j = 0; j < n; ++j) out[i * n + j] += x * b[k * n + j];
    }
  return out;
}

}  // namespace

int WeylElem::length() const { return group->length(index); }
const std::vector<int>& WeylElem::word() const { return group->word(index); }
const IntMatrix& WeylElem::action() const { return group->action(index); }
std::string WeylElem::to_string() const { return group->word_string(index); }

WeylElem WeylGroup::elem(int index) const {
  if (index < 0 || index >= size()) throw UsageError("Weyl element index out of range");
  return WeylElem{this, index};
}

WeylElem WeylGroup::simple(int s) const {
  if (s < 0 || s >= num_simple_) throw UsageError("simple reflection index out of range");
  return elem(right_mul(0, s));
}

std::vector<WeylElem> WeylGroup::elements() const {
  std::vector<WeylElem> out;
  out.reserve(size());
  for (int i = 0; i < size(); ++i) out.push_back(WeylElem{this, i});
  return out;
}

int WeylGroup::multiply(int x, int y) const {
  for (int s : word_[y]) x = right_mul(x, s);
  return x;
}

int WeylGroup::from_word(const std::vector<int>& letters) const {
  int w = 0;
  for (int s : letters) {
    if (s < 0 || s >= num_simple_) throw UsageError("generator index out of range in word");
    w = right_mul(w, s);
  }
  return w;
}

int WeylGroup::parse_word(std::string_view text) const {
  std::vector<int> letters;
  std::string digits;
  auto flush = [&] {
    if (digits.empty()) return;
    letters.push_back(std::stoi(digits) - 1);
    digits.clear();
  };
  std::string_view t = text;
  if (t == "e" || t.empty()) return 0;
  if (t == "s") {
    if (num_simple_ != 1) throw UsageError("bare 's' is only meaningful in rank 1");
    return from_word({0});
  }
  bool separated = t.find_first_of("-s, ") != std::string_view::npos;
  for (char c : t) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (!separated) flush();
    } else if (c == '-' || c == 's' || c == ',' || c == ' ') {
      flush();
    } else {
      throw UsageError("cannot parse word '" + std::string(text) + "'");
    }
  }
  flush();
  for (int s : letters)
    if (s < 0 || s >= num_simple_)
      throw UsageError("generator index out of range in word '" + std::string(text) + "'");
  return from_word(letters);
}

std::string WeylGroup::word_string(int w) const {
  std::string out;
  for (std::size_t i = 0; i < word_[w].size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(word_[w][i] + 1);
  }
  return out;
}

WeylGroupPtr build_group(const RootDatum& datum, int cap) {
  datum.validate();
  const int n = datum.num_simple();
  if (n > 63) throw ValidationError("too many simple reflections");
  std::shared_ptr<WeylGroup> g(new WeylGroup());
  g->datum_ = datum;
  g->num_simple_ = n;

  // Faithful action on the span of the simple roots: s_i(a_j) = a_j - A_ij a_i.
  std::vector<SmallMat> gens(n, SmallMat(static_cast<std::size_t>(n) * n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) gens[i][k * n + j] = (k == j ? 1 : 0);
      gens[i][i * n + j] -= datum.cartan(i, j).get_si();
    }

  SmallMat id(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;

  // Breadth-first search along right multiplication; depth = length.
  std::map<SmallMat, int> index;
  std::vector<SmallMat> mats{id};
  std::vector<int> depth{0};
  index.emplace(id, 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int s = 0; s < n; ++s) {
      SmallMat next = small_mul(mats[cur], gens[s], n);
      if (index.count(next)) continue;
      if (static_cast<int>(mats.size()) >= cap)
        throw InfiniteGroupError("Weyl group enumeration exceeded " + std::to_string(cap) +
                                 " elements; datum is not of finite type");
      index.emplace(next, static_cast<int>(mats.size()));
      mats.push_back(std::move(next));
      depth.push_back(depth[cur] + 1);
      queue.push_back(static_cast<int>(mats.size()) - 1);
    }
  }
  const int N = static_cast<int>(mats.size());
  std::vector<int> right(static_cast<std::size_t>(N) * n), left(static_cast<std::size_t>(N) * n);
  for (int w = 0; w < N; ++w)
    for (int s = 0; s < n; ++s) {
      right[w * n + s] = index.at(small_mul(mats[w], gens[s], n));
      left[w * n + s] = index.at(small_mul(gens[s], mats[w], n));
    }

  // Lex-least reduced word: least left descent, then the word of s*w.
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] < depth[b]; });
  std::vector<std::vector<int>> words(N);
  for (int w : order) {
    if (depth[w] == 0) continue;
    for (int s = 0; s < n; ++s) {
      int sw = left[w * n + s];
      if (depth[sw] < depth[w]) {
        words[w] = {s};
        words[w].insert(words[w].end(), words[sw].begin(), words[sw].end());
        break;
      }
    }
  }

  // Renumber by (length, word).
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (depth[a] != depth[b]) return depth[a] < depth[b];
    return words[a] < words[b];
  });
  std::vector<int> renum(N);
  for (int i = 0; i < N; ++i) renum[order[i]] = i;

  g->length_.resize(N);
  g->word_.resize(N);
  g->right_.resize(static_cast<std::size_t>(N) * n);
  g->left_.resize(static_cast<std::size_t>(N) * n);
  for (int old = 0; old < N; ++old) {
    int w = renum[old];
    g->length_[w] = depth[old];
    g->word_[w] = words[old];
    for (int s = 0; s < n; ++s) {
      g->right_[w * n + s] = renum[right[old * n + s]];
      g->left_[w * n + s] = renum[left[old * n + s]];
    }
  }

  g->left_desc_.assign(N, 0);
  g->right_desc_.assign(N, 0);
  g->longest_ = 0;
  for (int w = 0; w < N; ++w) {
    for (int s = 0; s < n; ++s) {
      if (g->length_[g->left_mul(s, w)] < g->length_[w]) g->left_desc_[w] |= (1ull << s);
      if (g->length_[g->right_mul(w, s)] < g->length_[w]) g->right_desc_[w] |= (1ull << s);
    }
    if (g->length_[w] > g->length_[g->longest_]) g->longest_ = w;
  }

  g->inverse_.resize(N);
  g->tau_.resize(N);
  for (int w = 0; w < N; ++w) {
    int inv = 0, tw = 0;
    for (auto it = g->word_[w].rbegin(); it != g->word_[w].rend(); ++it) inv = g->right_mul(inv, *it);
    for (int s : g->word_[w]) tw = g->right_mul(tw, datum.tau[s]);
    g->inverse_[w] = inv;
    g->tau_[w] = tw;
  }

  // Action on X_*: s_i(x) = x - <root_i, x> coroot_i.
  const int r = datum.rank;
  std::vector<IntMatrix> refl;
  for (int s = 0; s < n; ++s) {
    IntMatrix m = IntMatrix::identity(r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) m(a, b) -= datum.coroots(a, s) * datum.roots(b, s);
    refl.push_back(std::move(m));
  }
  g->xstar_.assign(N, IntMatrix::identity(r));
  for (int w = 1; w < N; ++w) {
    const auto& wd = g->word_[w];
    int prefix = 0;
    for (std::size_t k = 0; k + 1 < wd.size(); ++k) prefix = g->right_mul(prefix, wd[k]);
    g->xstar_[w] = g->xstar_[prefix] * refl[wd.back()];
  }

  // Bruhat intervals by the subword property: [e, ws] = [e, w] u [e, w]s.
  g->below_.assign(N, std::vector<char>(N, 0));
  g->below_[0][0] = 1;
  for (int w = 1; w < N; ++w) {
    const auto& wd = g->word_[w];
    int prefix = 0;
    for (std::size_t k = 0; k + 1 < wd.size(); ++k) prefix = g->right_mul(prefix, wd[k]);
    const int s = wd.back();
    auto& row = g->below_[w];
    const auto& prev = g->below_[prefix];
    for (int y = 0; y < N; ++y)
      if (prev[y]) {
        row[y] = 1;
        row[g->right_mul(y, s)] = 1;
      }
  }
  return g;
}

WeylElem multiply(const WeylElem& x, const WeylElem& y) {
  if (x.group != y.group) throw UsageError("elements of different Weyl groups");
  return x.group->elem(x.group->multiply(x.index, y.index));
}

WeylElem invert(const WeylElem& x) { return x.group->elem(x.group->inverse(x.index)); }

bool bruhat_leq(const WeylElem& y, const WeylElem& w) {
  if (y.group != w.group) throw UsageError("elements of different Weyl groups");
  return w.group->bruhat_leq(y.index, w.index);
}

ConjugacyClasses conjugacy_classes(const WeylGroup& W, bool twisted) {
  const int N = W.size();
  ConjugacyClasses out;
  out.class_of.assign(N, -1);
  for (int start = 0; start < N; ++start) {
    if (out.class_of[start] >= 0) continue;
    const int id = static_cast<int>(out.classes.size());
    std::vector<int> members{start};
    out.class_of[start] = id;
    for (std::size_t k = 0; k < members.size(); ++k) {
      int x = members[k];
      for (int s = 0; s < W.rank(); ++s) {
        int t = twisted ? W.datum().tau[s] : s;
        int y = W.right_mul(W.left_mul(s, x), t);  // s x tau(s)^-1
        if (out.class_of[y] < 0) {
          out.class_of[y] = id;
          members.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.classes.push_back(std::move(members));
  }
  return out;
}

std::vector<long> CharTable::degrees() const {
  std::vector<long> out;
  for (const auto& row : values) out.push_back(row.front());
  return out;
}

}  // namespace dlcat
