#include <random>

#include "doctest.h"
#include "dlcat/error.hpp"
#include "dlcat/monodromic.hpp"
#include "test_rng.hpp"

using namespace dlcat;

namespace {

const Laurent v = Laurent::v();
const Laurent vinv = Laurent::monomial(-1);

struct Setup {
  FrobeniusDatum fd;
  std::vector<GeomClass> classes;
  std::vector<MonoBlockPtr> blocks;
};

Setup setup(const std::string& label, long q) {
  Setup s{make_frobenius(build_group(make_preset(label)), q), {}, {}};
  s.classes = geometric_classes(s.fd);
  for (const auto& gc : s.classes) s.blocks.push_back(block_basis(s.fd.group, gc));
  return s;
}

MonoElem random_mono(const MonoBlockPtr& B, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, B->size() - 1);
  MonoElem m(B);
  for (int k = 0; k < 3; ++k) m.add_term(pick(rng), testing::random_laurent(rng, 2, 2, 4));
  return m;
}

// Right multiplication by the letters of a word.
MonoElem apply_word(MonoElem m, const std::vector<int>& word) {
  for (int s : word) m = mono_mul_simple_right(m, s);
  return m;
}

}  // namespace

TEST_CASE("block sizes") {
  auto a2 = setup("A2", 3);
  CHECK(a2.blocks.front()->is_unipotent());
  CHECK(a2.blocks.front()->size() == 6);

  auto a1 = setup("A1", 3);
  REQUIRE(a1.blocks.size() == 3);
  std::vector<int> sizes;
  for (const auto& B : a1.blocks) {
    sizes.push_back(B->size());
    CHECK(B->size() == 2 * B->orbit_size());
  }
  CHECK(sizes == std::vector<int>{2, 2, 4});
  // The quadratic character is fixed by s, the order-4 ones are swapped.
  CHECK(a1.blocks[1]->chars[0].den == 2);
  CHECK(a1.blocks[1]->fixed[0][0]);
  CHECK(a1.blocks[2]->orbit_size() == 2);
  CHECK_FALSE(a1.blocks[2]->fixed[0][0]);

  // Basis closed under the W-action.
  auto b2 = setup("B2", 3);
  for (const auto& B : b2.blocks)
    for (int w = 0; w < b2.fd.group->size(); ++w)
      for (int c = 0; c < B->orbit_size(); ++c)
        CHECK(B->act[w][c] == B->char_index(act(*b2.fd.group, w, B->chars[c])));
}

TEST_CASE("rank-one products, bar and KL elements") {
  auto a1 = setup("A1", 3);
  const MonoBlockPtr& quad = a1.blocks[1];
  const MonoBlockPtr& free_block = a1.blocks[2];

  // Idempotents.
  auto one0 = MonoElem::idempotent(free_block, 0), one1 = MonoElem::idempotent(free_block, 1);
  CHECK(mono_mul(one0, one1).is_zero());
  CHECK(mono_mul(one0, one0) == one0);
  CHECK(mono_mul(MonoElem::unit(free_block), one1) == one1);

  // Fixed case: (H_s 1_chi)^2 = 1_chi + (v^-1 - v) H_s 1_chi.
  auto hs = MonoElem::basis(quad, 1, 0);
  CHECK(mono_mul(hs, hs) == MonoElem::idempotent(quad, 0) + hs.scaled(vinv - v));
  // Free case: H_s 1_{s chi} H_s 1_chi = 1_chi.
  auto hs0 = MonoElem::basis(free_block, 1, 0), hs1 = MonoElem::basis(free_block, 1, 1);
  CHECK(mono_mul(hs1, hs0) == one0);
  CHECK(mono_mul(hs0, hs0).is_zero());

  CHECK(mono_bar(one0) == one0);
  CHECK(mono_bar(hs0) == hs0);
  CHECK(mono_bar(hs) == hs + MonoElem::idempotent(quad, 0, v - vinv));

  CHECK(mono_kl(quad, 0, 0) == MonoElem::idempotent(quad, 0));
  CHECK(mono_kl(quad, 1, 0) == hs + MonoElem::idempotent(quad, 0, v));
  CHECK(mono_kl(free_block, 1, 0) == hs0);
  CHECK(mono_kl_tilde(free_block, 1, 0) == hs0);

  // Cross-block products.
  CHECK_THROWS_AS(mono_mul(hs, hs0), UsageError);
  CHECK(mono_mul(hs, hs0, true).is_zero());
}

TEST_CASE("unipotent block reproduces the Hecke algebra") {
  std::mt19937 rng(testing::kSeed);
  for (const auto& label : {"A1", "A2", "A3", "B2", "B3", "G2", "GL2"}) {
    CAPTURE(label);
    auto W = build_group(make_preset(label));
    auto fd = make_frobenius(W, 2);
    auto classes = geometric_classes(fd);
    MonoBlockPtr U = block_basis(W, classes.front());
    REQUIRE(U->is_unipotent());
    KLTable t = compute_kl_table(W);
    MonoKLTable mt = compute_mono_kl(U);
    for (int w = 0; w < W->size(); ++w) {
      REQUIRE(to_hecke(mt.kl(w, 0)) == t.kl_basis(w));
      REQUIRE(to_hecke(mt.kl_tilde(w, 0)) == t.kl_tilde(w));
      HeckeElem hw = HeckeElem::standard(W, w);
      REQUIRE(to_hecke(mono_bar(from_hecke(U, hw))) == bar(hw));
    }
    for (int i = 0; i < 20; ++i) {
      HeckeElem a(W), b(W);
      std::uniform_int_distribution<int> pick(0, W->size() - 1);
      for (int k = 0; k < 3; ++k) {
        a.add_term(pick(rng), testing::random_laurent(rng, 2, 2, 4));
        b.add_term(pick(rng), testing::random_laurent(rng, 2, 2, 4));
      }
      REQUIRE(to_hecke(mono_mul(from_hecke(U, a), from_hecke(U, b))) == mul(a, b));
    }
  }
}

TEST_CASE("braid and quadratic relations hold on every block") {
  for (const auto& [label, q] : std::vector<std::pair<std::string, long>>{
           {"A1", 3}, {"A2", 3}, {"B2", 3}, {"G2", 2}, {"A3", 2}, {"B3", 2}, {"2A2", 2}, {"A2-adjoint", 2}}) {
    CAPTURE(label);
    auto S = setup(label, q);
    const WeylGroup& W = *S.fd.group;
    for (const auto& B : S.blocks) {
      for (int idx = 0; idx < B->size(); ++idx) {
        MonoElem m(B);
        m.add_term(idx, 1);
        for (int s = 0; s < W.rank(); ++s) {
          // H_s^2 = 1 + (v^-1 - v) H_s on fixed characters, 1 on moved ones.
          MonoElem sq = apply_word(m, {s, s});
          MonoElem expect = m;
          const int c = B->char_of(idx);
          if (B->fixed[s][c]) expect += mono_mul_simple_right(m, s).scaled(vinv - v);
          REQUIRE(sq == expect);
          for (int t = s + 1; t < W.rank(); ++t) {
            std::vector<int> st, ts;
            int x = 0, y = 0;
            do {
              st.push_back(st.size() % 2 ? t : s);
              ts.push_back(ts.size() % 2 ? s : t);
              x = W.from_word(st);
              y = W.from_word(ts);
            } while (x != y);
            REQUIRE(apply_word(m, st) == apply_word(m, ts));
          }
        }
      }
    }
  }
}

TEST_CASE("associativity on random triples in each block") {
  std::mt19937 rng(testing::kSeed + 7);
  for (const auto& [label, q] :
       std::vector<std::pair<std::string, long>>{{"A2", 3}, {"B2", 3}, {"G2", 2}, {"A3", 2}}) {
    auto S = setup(label, q);
    for (const auto& B : S.blocks)
      for (int i = 0; i < 5; ++i) {
        MonoElem a = random_mono(B, rng), b = random_mono(B, rng), c = random_mono(B, rng);
        REQUIRE(mono_mul(mono_mul(a, b), c) == mono_mul(a, mono_mul(b, c)));
        REQUIRE(mono_bar(mono_mul(a, b)) == mono_mul(mono_bar(a), mono_bar(b)));
        REQUIRE(mono_bar(mono_bar(a)) == a);
      }
  }
}

TEST_CASE("self-dual bases in every block") {
  for (const auto& label : {"A1", "A2", "B2", "G2", "GL2", "A3", "B3"}) {
    for (long q : {2, 3}) {
      CAPTURE(label);
      CAPTURE(q);
      auto S = setup(label, q);
      const WeylGroup& W = *S.fd.group;
      for (const auto& B : S.blocks) {
        MonoKLTable t = compute_mono_kl(B);
        for (int w = 0; w < W.size(); ++w)
          for (int c = 0; c < B->orbit_size(); ++c) {
            MonoElem kl = t.kl(w, c), klt = t.kl_tilde(w, c);
            REQUIRE(mono_bar(kl) == kl);
            REQUIRE(mono_bar(klt) == klt);
            REQUIRE(mono_b(kl) == klt);
            REQUIRE(t.h(w, w, c) == Laurent(1));
            for (const auto& [idx, p] : kl.coeffs()) {
              REQUIRE(B->char_of(idx) == c);
              const int y = B->elem_of(idx);
              if (y != w) {
                REQUIRE(W.bruhat_leq(y, w));
                REQUIRE(p.in_vZv());
              }
            }
            for (const auto& [idx, p] : klt.coeffs())
              if (B->elem_of(idx) != w) REQUIRE(p.in_vinvZvinv());
          }
      }
    }
  }
}

TEST_CASE("free blocks: simple reflections are already self-dual") {
  for (const auto& [label, q] :
       std::vector<std::pair<std::string, long>>{{"A1", 3}, {"A2", 3}, {"B2", 3}, {"GL2", 3}}) {
    auto S = setup(label, q);
    const WeylGroup& W = *S.fd.group;
    for (const auto& B : S.blocks)
      for (int s = 0; s < W.rank(); ++s)
        for (int c = 0; c < B->orbit_size(); ++c) {
          const int sw = W.simple(s).index;
          MonoElem expect = MonoElem::basis(B, sw, c);
          if (B->fixed[s][c]) expect += MonoElem::idempotent(B, c, v);
          REQUIRE(mono_kl(B, sw, c) == expect);
        }
  }
}

TEST_CASE("monodromic JSON export") {
  auto S = setup("A1", 3);
  auto j = mono_kl_to_json(compute_mono_kl(S.blocks[2]));
  CHECK(j["characters"].size() == 2);
  CHECK(j["rows"].size() == 4);
  CHECK(j["rows"][2]["w"] == "1");
}
