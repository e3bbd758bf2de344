// Character tables of Weyl groups by Dixon's method: simultaneous
// eigenvectors of the class-multiplication matrices over F_p, lifted to the
// integers. Weyl group characters are rational, hence integer valued, so any
// prime p > 2 sqrt|W| determines the lift uniquely.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dlcat/error.hpp"
#include "dlcat/finite_field.hpp"
#include "dlcat/weyl_group.hpp"

namespace dlcat {

namespace {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;  // row-major

struct ModP {
  std::int64_t p;
  std::int64_t norm(std::int64_t x) const {
    x %= p;
    return x < 0 ? x + p : x;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return norm(a * b); }
  std::int64_t inv(std::int64_t a) const { return mod_pow(norm(a), p - 2, p); }
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& a, const ModP& F) {
  std::vector<int> pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    std::int64_t inv = F.inv(a[r][c]);
    for (auto& x : a[r]) x = F.mul(x, inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::int64_t f = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] = F.norm(a[i][j] - F.mul(f, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis (as vectors) of the null space of a square matrix.
std::vector<Vec> null_space(Mat a, const ModP& F) {
  const int n = static_cast<int>(a.size());
  std::vector<int> piv = rref(a, F);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (int free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.norm(-a[r][free]);
    out.push_back(v);
  }
  return out;
}

// Coordinates of y in the column basis B (y assumed to lie in its span).
Vec coordinates(const std::vector<Vec>& basis, const Vec& y, const ModP& F) {
  const int n = static_cast<int>(y.size());
  const int d = static_cast<int>(basis.size());
  Mat aug(n, Vec(d + 1, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) aug[i][j] = basis[j][i];
    aug[i][d] = y[i];
  }
  std::vector<int> piv = rref(aug, F);
  Vec x(d, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == d) throw IdentityViolation("class algebra subspace is not invariant");
    x[piv[r]] = aug[r][d];
  }
  return x;
}

int element_order(const WeylGroup& W, int w) {
  int k = 1;
  for (int x = w; x != 0; x = W.multiply(x, w)) ++k;
  return k;
}

}  // namespace

CharTable char_table(const WeylGroup& W) {
  if (!W.datum().is_split())
    throw UnsupportedError("character tables of twisted Weyl groups are not supported");
  const int N = W.size();
  if (N > 1152) throw UnsupportedError("character tables are limited to |W| <= 1152");

  CharTable table;
  table.classes = conjugacy_classes(W, false);
  const auto& cls = table.classes.classes;
  const auto& class_of = table.classes.class_of;
  const int c = static_cast<int>(cls.size());

  std::int64_t exponent = 1;
  for (int w = 0; w < N; ++w) exponent = std::lcm(exponent, static_cast<std::int64_t>(element_order(W, w)));
  std::int64_t p = exponent + 1;
  while (!is_prime(p) || static_cast<double>(p) <= 2.0 * std::sqrt(static_cast<double>(N)) + 1.0)
    p += exponent;
  const ModP F{p};

  // (M_i)[j][k] = #{x in C_i : x^-1 z in C_j} for a fixed z in C_k.
  std::vector<Mat> M(c, Mat(c, Vec(c, 0)));
  for (int k = 0; k < c; ++k) {
    const int z = cls[k].front();
    for (int x = 0; x < N; ++x) {
      int j = class_of[W.multiply(W.inverse(x), z)];
      M[class_of[x]][j][k] += 1;
    }
  }
  for (auto& m : M)
    for (auto& row : m)
      for (auto& x : row) x = F.norm(x);

  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> full;
    for (int i = 0; i < c; ++i) {
      Vec e(c, 0);
      e[i] = 1;
      full.push_back(e);
    }
    spaces.push_back(full);
  }
  for (int i = 0; i < c; ++i) {
    std::vector<std::vector<Vec>> next;
    for (auto& S : spaces) {
      const int d = static_cast<int>(S.size());
      if (d == 1) {
        next.push_back(S);
        continue;
      }
      Mat A(d, Vec(d, 0));  // restriction of M_i: columns are images
      for (int t = 0; t < d; ++t) {
        Vec image(c, 0);
        for (int j = 0; j < c; ++j) {
          std::int64_t acc = 0;
          for (int k = 0; k < c; ++k) acc = F.norm(acc + F.mul(M[i][j][k], S[t][k]));
          image[j] = acc;
        }
        Vec coord = coordinates(S, image, F);
        for (int r = 0; r < d; ++r) A[r][t] = coord[r];
      }
      int found = 0;
      for (std::int64_t lambda = 0; lambda < p && found < d; ++lambda) {
        Mat shifted = A;
        for (int r = 0; r < d; ++r) shifted[r][r] = F.norm(shifted[r][r] - lambda);
        auto ns = null_space(shifted, F);
        if (ns.empty()) continue;
        std::vector<Vec> sub;
        for (const auto& y : ns) {
          Vec v(c, 0);
          for (int t = 0; t < d; ++t)
            for (int k = 0; k < c; ++k) v[k] = F.norm(v[k] + F.mul(y[t], S[t][k]));
          sub.push_back(v);
        }
        found += static_cast<int>(sub.size());
        next.push_back(std::move(sub));
      }
      if (found != d) throw IdentityViolation("class matrix is not diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != c)
    throw IdentityViolation("class matrices failed to separate the characters");

  std::vector<int> inv_class(c);
  for (int k = 0; k < c; ++k) inv_class[k] = class_of[W.inverse(cls[k].front())];

  for (const auto& S : spaces) {
    Vec omega = S.front();
    std::int64_t scale = F.inv(omega[0]);  // class 0 is {e}
    for (auto& x : omega) x = F.mul(x, scale);
    std::int64_t norm = 0;
    for (int k = 0; k < c; ++k) {
      std::int64_t term = F.mul(omega[k], omega[inv_class[k]]);
      norm = F.norm(norm + F.mul(term, F.inv(static_cast<std::int64_t>(cls[k].size()))));
    }
    std::int64_t deg_sq = F.mul(N, F.inv(norm));
    std::int64_t degree = 0;
    for (std::int64_t d = 1; d * d <= N; ++d)
      if (F.norm(d * d) == deg_sq) {
        degree = d;
        break;
      }
    if (degree == 0) throw IdentityViolation("could not lift a character degree");
    std::vector<long> row(c);
    for (int k = 0; k < c; ++k) {
      std::int64_t val = F.mul(F.mul(omega[k], degree), F.inv(static_cast<std::int64_t>(cls[k].size())));
      if (val > p / 2) val -= p;
      row[k] = static_cast<long>(val);
    }
    table.values.push_back(std::move(row));
  }

  std::sort(table.values.begin(), table.values.end(),
            [](const std::vector<long>& a, const std::vector<long>& b) {
              bool ta = std::all_of(a.begin(), a.end(), [](long x) { return x == 1; });
              bool tb = std::all_of(b.begin(), b.end(), [](long x) { return x == 1; });
              if (ta != tb) return ta;
              if (a.front() != b.front()) return a.front() < b.front();
              return a > b;
            });

  // Exact row orthogonality: sum_k |C_k| chi_a(g_k) chi_b(g_k) = |W| delta_ab.
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b) {
      long long acc = 0;
      for (int k = 0; k < c; ++k)
        acc += static_cast<long long>(cls[k].size()) * table.values[a][k] * table.values[b][inv_class[k]];
      if (acc != (a == b ? N : 0)) throw IdentityViolation("lifted character table is not orthonormal");
    }
  return table;
}

}  // namespace dlcat
