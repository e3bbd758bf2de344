// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dlcat/cli.hpp"
#include "dlcat/dlchar.hpp"
#include "dlcat/error.hpp"
#include "dlcat/monodromic.hpp"
#include "kl_oracle.hpp"
#include "pair_orbit_oracle.hpp"
#include "test_rng.hpp"

using namespace dlcat;

namespace {

const std::vector<std::string> kKLPresets{"A1", "A2", "A3", "B2", "B3", "G2"};

struct Failure {
  std::string what;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

WeylGroupPtr group(const std::string& label) { return build_group(make_preset(label)); }

std::vector<std::string> split_presets() {
  std::vector<std::string> out;
  for (const auto& name : preset_names())
    if (make_preset(name).is_split()) out.push_back(name);
  return out;
}

int sign_of(const WeylGroup& W, int w) { return W.length(w) % 2 ? -1 : 1; }

void kl_validity() {
  for (const auto& label : kKLPresets) {
    auto W = group(label);
    KLTable t = compute_kl_table(W);
    for (int w = 0; w < W->size(); ++w) {
      HeckeElem kl = t.kl_basis(w), klt = t.kl_tilde(w);
      expect(bar(kl) == kl, label + ": bar(H_w) != H_w at " + W->word_string(w));
      expect(bar(klt) == klt, label + ": tilde basis not bar-invariant at " + W->word_string(w));
      expect(t.h(w, w) == Laurent(1) && t.h_tilde(w, w) == Laurent(1), label + ": diagonal");
      for (int y = 0; y < W->size(); ++y) {
        if (y == w) continue;
        const Laurent h = t.h(y, w), ht = t.h_tilde(y, w);
        if (!W->bruhat_leq(y, w)) {
          expect(h.is_zero() && ht.is_zero(), label + ": entry outside the Bruhat interval");
          continue;
        }
        expect(h.in_vZv(), label + ": h not in vZ[v]");
        expect(ht.in_vinvZvinv(), label + ": h_tilde not in v^-1 Z[v^-1]");
      }
    }
  }
}

void two_algorithms() {
  for (const auto& label : {"A3", "B3"}) {
    auto W = group(label);
    KLTable rec = compute_kl_table(W, {KLAlgorithm::Recursion, DescentChoice::LexLeast, 1});
    KLTable solve = compute_kl_table(W, {KLAlgorithm::BarSolve, DescentChoice::LexLeast, 1});
    expect(rec == solve, std::string(label) + ": recursion and bar solve differ");
  }
}

void b_maps_bases() {
  for (const auto& label : preset_names()) {
    auto W = group(label);
    KLTable t = compute_kl_table(W);
    for (int w = 0; w < W->size(); ++w)
      expect(invol_b(t.kl_basis(w)) == t.kl_tilde(w), label + ": b(H_w) at " + W->word_string(w));
  }
}

void a_identity() {
  for (const auto& label : preset_names()) {
    auto W = group(label);
    KLTable t = compute_kl_table(W);
    for (int w = 0; w < W->size(); ++w) {
      HeckeElem rhs = invol_a(t.kl_tilde(w)).scaled(Laurent(sign_of(*W, w)));
      expect(t.kl_basis(w) == rhs, label + ": a-identity at " + W->word_string(w));
    }
  }
}

void a3_landmark() {
  auto W = group("A3");
  KLTable t = compute_kl_table(W);
  const int y = W->parse_word("2"), w = W->parse_word("2-1-3-2");
  const Laurent expected{{3, 1}, {1, 1}};
  expect(t.h(y, w) == expected, "table entry is " + t.h(y, w).to_string());
  testing::BarMatrixOracle oracle(W);
  auto col = oracle.column(w, true);
  expect(col.count(y) && col.at(y) == expected, "oracle disagrees");
  expect(col == t.column(w), "oracle column differs");
}

void torus_orders() {
  for (const auto& label : preset_names())
    for (long q : {2, 3}) {
      auto fd = make_frobenius(group(label), q);
      for (int w = 0; w < fd.group->size(); ++w)
        expect(fixed_torus(w, fd).order == brute_force_fixed_points(w, fd),
               label + " q=" + std::to_string(q) + " w=" + fd.group->word_string(w));
    }
  for (long q : {2, 3, 4, 5}) {
    auto fd = make_frobenius(group("GL2"), q);
    expect(fixed_torus(0, fd).order == (q - 1) * (q - 1), "GL2 split torus");
    expect(fixed_torus(1, fd).order == q * q - 1, "GL2 Coxeter torus");
  }
}

void series_counts() {
  for (const auto& [q, n] : std::vector<std::pair<long, long>>{{3, 6}, {2, 2}}) {
    auto fd = make_frobenius(group("GL2"), q);
    const long got = static_cast<long>(geometric_classes(fd).size());
    expect(got == n, "GL2 q=" + std::to_string(q) + " gave " + std::to_string(got));
    expect(testing::pair_orbit_oracle(fd).classes == n, "oracle disagrees at q=" + std::to_string(q));
  }
}

void monodromic_restriction() {
  std::mt19937 rng(testing::kSeed);
  for (const auto& label : kKLPresets) {
    auto W = group(label);
    auto fd = make_frobenius(W, 3);
    auto classes = geometric_classes(fd);
    MonoBlockPtr U = block_basis(W, classes.front());
    expect(U->is_unipotent(), label + ": first block is not unipotent");
    KLTable t = compute_kl_table(W);
    MonoKLTable mt = compute_mono_kl(U);
    for (int w = 0; w < W->size(); ++w) {
      expect(to_hecke(mt.kl(w, 0)) == t.kl_basis(w), label + ": KL basis");
      expect(to_hecke(mt.kl_tilde(w, 0)) == t.kl_tilde(w), label + ": tilde basis");
      for (int s = 0; s < W->rank(); ++s) {
        HeckeElem hw = HeckeElem::standard(W, w);
        HeckeElem hs = HeckeElem::standard(W, W->simple(s).index);
        expect(to_hecke(mono_mul(from_hecke(U, hw), from_hecke(U, hs))) == mul(hw, hs),
               label + ": product");
      }
    }
    for (int i = 0; i < 10; ++i) {
      HeckeElem a(W), b(W);
      std::uniform_int_distribution<int> pick(0, W->size() - 1);
      for (int k = 0; k < 3; ++k) {
        a.add_term(pick(rng), testing::random_laurent(rng, 2, 2, 4));
        b.add_term(pick(rng), testing::random_laurent(rng, 2, 2, 4));
      }
      expect(to_hecke(mono_mul(from_hecke(U, a), from_hecke(U, b))) == mul(a, b),
             label + ": random product");
    }
    int free_checked = 0;
    for (const auto& gc : classes) {
      auto B = block_basis(W, gc);
      for (int s = 0; s < W->rank(); ++s)
        for (int c = 0; c < B->orbit_size(); ++c) {
          if (B->fixed[s][c]) continue;
          const int sw = W->simple(s).index;
          expect(mono_kl(B, sw, c) == MonoElem::basis(B, sw, c), label + ": free H_{s,chi}");
          expect(mono_kl_tilde(B, sw, c) == MonoElem::basis(B, sw, c), label + ": free tilde");
          ++free_checked;
        }
    }
    expect(free_checked > 0, label + ": no free pair found");
  }
}

void graded_duality() {
  for (const auto& label : preset_names()) {
    auto W = group(label);
    KLTable t = compute_kl_table(W);
    for (int w = 0; w < W->size(); ++w) {
      UniformVirtual lhs = alvis_curtis(ch_map(t.kl_tilde(w)));
      UniformVirtual rhs = ch_map(t.kl_basis(w)).scaled(Laurent(sign_of(*W, w)));
      expect(lhs == rhs, label + ": duality at " + W->word_string(w));
    }
  }
}

void trace_identity() {
  for (const auto& label : {"A1", "A2", "B2", "A3"}) {
    auto W = group(label);
    CharTable ct = char_table(*W);
    KLTable t = compute_kl_table(W);
    for (int w = 0; w < W->size(); ++w) {
      TraceReport r = tr_identity_check(t, ct, w);
      ClassFunction sum(ct.classes.classes.size());
      for (int y = 0; y < W->size(); ++y)
        if (W->bruhat_leq(y, w)) sum[ct.classes.class_of[y]] += BigRat(t.p_at_one(y, w));
      expect(r.tr == sum, std::string(label) + ": tr != sum P(1) R_y at " + W->word_string(w));
      expect(r.sign == sign_of(*W, w), std::string(label) + ": sign at " + W->word_string(w));
      ClassFunction signed_chb = r.ch_b;
      for (auto& x : signed_chb) x *= r.sign;
      expect(signed_chb == r.tr, std::string(label) + ": ch o b mismatch");
    }
  }
}

void decomp_counts() {
  for (const auto& label : split_presets()) {
    auto W = group(label);
    for (long q : {2, 3}) {
      auto fd = make_frobenius(W, q);
      for (long ell : {2, 5, 7}) {
        if (ell == fd.p) continue;
        for (int w = 0; w < W->size(); ++w) {
          const auto expected = ell_power_characters(fixed_torus(w, fd), ell, fd).size();
          for (auto kind : {K0Kind::Std, K0Kind::Costd, K0Kind::Tilt}) {
            auto parts = zl_decompose(k0_class(kind, W, w, CoeffRing::Zbar), fd, ell, NMatrix(W));
            expect(parts.size() == expected, label + " w=" + W->word_string(w) + " l=" +
                                                 std::to_string(ell));
          }
        }
      }
    }
  }
}

void certificates() {
  auto A1 = group("A1");
  KLTable t1 = compute_kl_table(A1);
  auto c2 = dudas_malle_certificate(t1, make_frobenius(A1, 3), 1, 2, NMatrix(A1));
  expect(c2.classes.size() == 1 && c2.all_pass(), "l=2 q=3 is not a single passing class");
  auto c5 = dudas_malle_certificate(t1, make_frobenius(A1, 3), 1, 5, NMatrix(A1));
  expect(c5.period == 8 && c5.all_pass(), "l=5 q=3 period " + std::to_string(c5.period));
  auto c7 = dudas_malle_certificate(t1, make_frobenius(A1, 2), 1, 7, NMatrix(A1));
  expect(c7.period == 6 && c7.all_pass(), "l=7 q=2 period " + std::to_string(c7.period));

  for (const auto& label : split_presets()) {
    auto W = group(label);
    KLTable t = compute_kl_table(W);
    for (long q : {2, 3}) {
      auto fd = make_frobenius(W, q);
      for (long ell : {2, 5, 7}) {
        if (ell == fd.p) continue;
        for (int w = 0; w < W->size(); ++w)
          expect(dudas_malle_certificate(t, fd, w, ell, NMatrix(W)).all_pass(),
                 label + " q=" + std::to_string(q) + " l=" + std::to_string(ell) + " w=" +
                     W->word_string(w));
      }
    }
  }
}

std::string run_cli_capture(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  expect(code == kExitOk, "cli exited with " + std::to_string(code) + ": " + err.str());
  return out.str();
}

void determinism() {
  const std::vector<std::vector<std::string>> configs{
      {"group", "--preset", "G2"},
      {"kl", "--preset", "B3"},
      {"torus", "--preset", "B2", "--q", "3"},
      {"series", "--preset", "GL2", "--q", "3"},
      {"monokl", "--preset", "A2", "--q", "3"},
      {"duality", "--preset", "G2", "--q", "2"},
      {"trcheck", "--preset", "A3"},
      {"dudasmalle", "--preset", "B2", "--q", "3", "--l", "5"}};
  for (const auto& cfg : configs) {
    for (const char* fmt : {"json", "csv", "text"}) {
      auto base = cfg;
      base.insert(base.end(), {"--format", fmt});
      const std::string first = run_cli_capture(base);
      expect(first == run_cli_capture(base), cfg[0] + ": rerun differs");
      for (const char* threads : {"2", "4"}) {
        auto threaded = base;
        threaded.insert(threaded.end(), {"--threads", threads});
        expect(first == run_cli_capture(threaded), cfg[0] + ": differs with threads=" + threads);
      }
    }
  }
}

struct Criterion {
  int id;
  std::string name;
  std::function<void()> body;
  double limit_seconds;  // 0: no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "KL validity (A1 A2 A3 B2 B3 G2)", kl_validity, 10.0},
      {2, "recursion vs bar-matrix solve (A3 B3)", two_algorithms, 0},
      {3, "b(H_w) = tilde H_w, all presets", b_maps_bases, 0},
      {4, "H_w = (-1)^l(w) a(tilde H_w), all presets", a_identity, 0},
      {5, "A3 pair h = v^3 + v, oracle confirmed", a3_landmark, 0},
      {6, "torus orders vs brute force, q in {2,3}", torus_orders, 0},
      {7, "GL2 series counts 6 and 2 vs pair-orbit oracle", series_counts, 0},
      {8, "monodromic restriction and free blocks", monodromic_restriction, 0},
      {9, "graded duality, all presets", graded_duality, 0},
      {10, "trace identity at v = 1 (A1 A2 B2 A3)", trace_identity, 30.0},
      {11, "decomposition counts = l-power character counts", decomp_counts, 0},
      {12, "projectivity certificates, n = 0", certificates, 60.0},
      {13, "CLI determinism across runs and thread counts", determinism, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.limit_seconds > 0 && secs >= c.limit_seconds) {
      ok = false;
      detail = "runtime limit exceeded";
    }
    char timing[64];
    if (c.limit_seconds > 0)
      std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, c.limit_seconds);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " ["
              << timing << ", exact]";
    if (!ok) std::cout << " -- " << detail;
    std::cout << std::endl;
    failed += !ok;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failed ? 1 : 0;
}
