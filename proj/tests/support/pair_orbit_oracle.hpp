#pragma once

#include <numeric>
#include <set>
#include <vector>

#include "dlcat/torus.hpp"

namespace dlcat::testing {

// Counts geometric classes through norm maps: with n the exponent of the
// matrices w*tau, every T^{wF} is a quotient of T^{F^n} = X_* (x) Z/(q^n - 1)
// via N_w = 1 + B + ... + B^{n-1}, B = q w tau. Characters of T^{wF} pull back
// to row vectors c N_w mod m; pairs are equivalent when the pullbacks are
// W-conjugate.
struct PairOrbitResult {
  long pairs = 0;
  long classes = 0;
  std::vector<long> pairs_per_w;
};

inline PairOrbitResult pair_orbit_oracle(const FrobeniusDatum& fd, long cap = 5'000'000) {
  const WeylGroup& W = *fd.group;
  const int r = W.datum().rank;
  using Vec = std::vector<long>;
  auto to_small = [r](const IntMatrix& M) {
    std::vector<long> out(static_cast<std::size_t>(r) * r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) out[i * r + j] = M(i, j).get_si();
    return out;
  };

  long n = 1;
  for (int w = 0; w < W.size(); ++w) {
    IntMatrix WT = W.action(w) * fd.tau_matrix();
    IntMatrix P = WT;
    long k = 1;
    while (!P.is_identity()) {
      P = P * WT;
      ++k;
    }
    n = std::lcm(n, k);
  }
  long m = 1;
  for (long k = 0; k < n; ++k) m *= fd.q;
  m -= 1;
  long total = 1;
  for (int i = 0; i < r; ++i) total *= m;
  if (total > cap) throw OracleRangeError("pair-orbit oracle out of range");

  auto row_times = [&](const Vec& c, const std::vector<long>& M) {
    Vec out(r, 0);
    for (int j = 0; j < r; ++j) {
      __int128 acc = 0;
      for (int i = 0; i < r; ++i) acc += (__int128)c[i] * M[i * r + j];
      long x = static_cast<long>(acc % m);
      out[j] = x < 0 ? x + m : x;
    }
    return out;
  };

  std::vector<std::vector<long>> actions;
  for (int x = 0; x < W.size(); ++x) actions.push_back(to_small(W.action(x)));

  PairOrbitResult res;
  std::set<Vec> all;
  for (int w = 0; w < W.size(); ++w) {
    IntMatrix B = fd.frobenius_matrix(w);
    IntMatrix N = IntMatrix::identity(r), P = IntMatrix::identity(r);
    for (long k = 1; k < n; ++k) {
      P = P * B;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) P(i, j) %= m;
      N = N + P;
    }
    std::vector<long> Nm = to_small(N);
    std::set<Vec> image;
    Vec c(r, 0);
    while (true) {
      image.insert(row_times(c, Nm));
      int i = r - 1;
      while (i >= 0 && ++c[i] == m) c[i--] = 0;
      if (i < 0) break;
    }
    res.pairs_per_w.push_back(static_cast<long>(image.size()));
    res.pairs += static_cast<long>(image.size());
    all.insert(image.begin(), image.end());
  }
  std::set<Vec> seen;
  for (const Vec& c : all) {
    if (seen.count(c)) continue;
    ++res.classes;
    for (const auto& X : actions) seen.insert(row_times(c, X));
  }
  return res;
}

}  // namespace dlcat::testing
