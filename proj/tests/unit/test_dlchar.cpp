#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "dlcat/dlchar.hpp"
#include "dlcat/error.hpp"
#include "test_rng.hpp"

using namespace dlcat;

namespace {

const Laurent v = Laurent::v();
const Laurent vinv = Laurent::monomial(-1);

WeylGroupPtr group(const std::string& label) { return build_group(make_preset(label)); }

UniformVirtual rho(const WeylGroupPtr& W, const std::string& word, const Laurent& c = 1) {
  UniformVirtual u(W);
  u.add_term(W->parse_word(word), trivial_tame(*W), c);
  return u;
}

ClassFunction class_vector(const ConjugacyClasses& cc, const std::map<int, long>& at) {
  ClassFunction f(cc.classes.size(), 0);
  for (const auto& [x, c] : at) f[cc.class_of[x]] += c;
  return f;
}

std::string temp_file(const std::string& name, const std::string& text) {
  std::string path = "dlcat_test_" + name + ".json";
  std::ofstream(path) << text;
  return path;
}

const std::vector<std::string> kSplit{"A1", "A2", "A3", "B2", "B3", "G2", "GL2", "A2-adjoint"};

}  // namespace

TEST_CASE("K0 dictionary") {
  auto W = group("A1");
  const int s = 1;
  auto std_s = k0_class(K0Kind::Std, W, s, CoeffRing::Qbar);
  CHECK(to_hecke(*std_s.element) == HeckeElem::standard(W, s));
  auto costd = k0_class(K0Kind::Costd, W, s, CoeffRing::Qbar);
  CHECK(to_hecke(*costd.element) == HeckeElem::standard(W, s) + HeckeElem::standard(W, 0, v - vinv));
  auto ic = k0_class(K0Kind::IC, W, s, CoeffRing::Qbar);
  CHECK(to_hecke(*ic.element) == HeckeElem::standard(W, s) - HeckeElem::standard(W, 0, vinv));
  auto tilt = k0_class(K0Kind::Tilt, W, s, CoeffRing::Zbar);
  CHECK(to_hecke(*tilt.element) == HeckeElem::standard(W, s) + HeckeElem::standard(W, 0, v));
  auto twisted = k0_class(K0Kind::Std, W, s, CoeffRing::Qbar, 2);
  CHECK(to_hecke(*twisted.element) == HeckeElem::standard(W, s, Laurent::monomial(-2)));
  CHECK(parse_k0_kind("tilt") == K0Kind::Tilt);
  CHECK_THROWS_AS(parse_k0_kind("proj"), UsageError);

  // Tilting classes with nontrivial character need the conjectural flag.
  auto fd = make_frobenius(W, 3);
  auto classes = geometric_classes(fd);
  auto B = block_basis(W, classes[2]);
  CHECK_THROWS_AS(k0_class(K0Kind::Tilt, B, s, 0, CoeffRing::Qbar), GatedFeatureError);
  auto conj = k0_class(K0Kind::Tilt, B, s, 0, CoeffRing::Qbar, 0, true);
  CHECK(conj.conjectural);
  CHECK(*conj.element == MonoElem::basis(B, s, 0));
  CHECK_NOTHROW(k0_class(K0Kind::IC, B, s, 0, CoeffRing::Qbar));
}

TEST_CASE("ch map and Alvis-Curtis duality") {
  auto W = group("A1");
  CHECK(ch_map(HeckeElem::standard(W, 1)) == rho(W, "1"));
  KLTable t = compute_kl_table(W);
  CHECK(ch_map(t.kl_basis(1)) == rho(W, "1") + rho(W, "", v));
  CHECK(ch_map(HeckeElem(W)).is_zero());
  CHECK(alvis_curtis(rho(W, "")) == rho(W, ""));
  CHECK(alvis_curtis(rho(W, "1")) == -rho(W, "1"));
  CHECK(alvis_curtis(ch_map(t.kl_tilde(1))) == -ch_map(t.kl_basis(1)));

  std::mt19937 rng(testing::kSeed);
  auto B2 = group("B2");
  auto fd = make_frobenius(B2, 3);
  auto classes = geometric_classes(fd);
  std::uniform_int_distribution<int> pick_w(0, B2->size() - 1);
  std::uniform_int_distribution<int> pick_c(0, static_cast<int>(classes.size()) - 1);
  for (int i = 0; i < 200; ++i) {
    UniformVirtual u(B2);
    for (int k = 0; k < 4; ++k)
      u.add_term(pick_w(rng), classes[pick_c(rng)].representative, testing::random_laurent(rng));
    REQUIRE(alvis_curtis(alvis_curtis(u)) == u);
  }
}

TEST_CASE("graded duality for every element of every preset") {
  for (const auto& label : kSplit) {
    auto W = group(label);
    KLTable t = compute_kl_table(W);
    for (int w = 0; w < W->size(); ++w) {
      auto r = duality_check(t, w);
      REQUIRE(r.sign == (W->length(w) % 2 ? -1 : 1));
      REQUIRE(alvis_curtis(ch_map(t.kl_tilde(w))) == ch_map(t.kl_basis(w)).scaled(Laurent(r.sign)));
    }
  }
  auto G2 = group("G2");
  KLTable g = compute_kl_table(G2);
  CHECK(duality_check(g, 0).sign == 1);
  CHECK(duality_check(g, 1).sign == -1);
}

TEST_CASE("graded duality on monodromic blocks with the conjectural flag") {
  auto W = group("B2");
  auto fd = make_frobenius(W, 3);
  for (const auto& gc : geometric_classes(fd)) {
    auto B = block_basis(W, gc);
    MonoKLTable t = compute_mono_kl(B);
    for (int w = 0; w < W->size(); ++w)
      for (int c = 0; c < B->orbit_size(); ++c) {
        if (!B->is_unipotent()) CHECK_THROWS_AS(duality_check(t, w, c), GatedFeatureError);
        REQUIRE(duality_check(t, w, c, true).sign == (W->length(w) % 2 ? -1 : 1));
      }
  }
}

TEST_CASE("trace map at v = 1") {
  auto W = group("A2");
  CharTable ct = char_table(*W);
  const auto& cc = ct.classes;
  CHECK(tr_map(HeckeElem::unit(W), ct) == class_vector(cc, {{0, 1}}));
  CHECK(tr_map(HeckeElem::standard(W, 1), ct) == class_vector(cc, {{1, 1}}));
  KLTable t = compute_kl_table(W);
  CHECK(tr_map(t.kl_basis(1), ct) == class_vector(cc, {{0, 1}, {1, 1}}));

  auto r = tr_identity_check(t, ct, 1);
  CHECK(r.sign == -1);
  CHECK(r.ch_b == class_vector(cc, {{0, -1}, {1, -1}}));
  CHECK(tr_identity_check(t, ct, 0).sign == 1);
  CHECK(tr_identity_check(t, ct, W->longest().index).sign == -1);

  for (const auto& label : {"A1", "A2", "B2", "A3", "G2"}) {
    auto G = group(label);
    CharTable table = char_table(*G);
    KLTable kl = compute_kl_table(G);
    for (int w = 0; w < G->size(); ++w) REQUIRE(tr_identity_check(kl, table, w).sign == (G->length(w) % 2 ? -1 : 1));
  }

  auto U = group("2A2");
  KLTable ku = compute_kl_table(U);
  CHECK_THROWS_AS(tr_identity_check(ku, ct, 0), UnsupportedError);
}

TEST_CASE("weight partitions") {
  auto W = group("A1");
  KLTable t = compute_kl_table(W);
  UniformVirtual u = ch_map(t.kl_tilde(1)) + rho(W, "1", Laurent{{5, 2}, {-7, 1}, {8, 3}});

  auto p2 = weight_partition(u, 3, 2, 1);
  CHECK(p2.period == 1);
  CHECK(p2.classes.size() == 1);
  auto p5 = weight_partition(u, 3, 5, 1);
  CHECK(p5.period == 8);
  auto p7 = weight_partition(u, 2, 7, 1);
  CHECK(p7.period == 6);
  CHECK(p7.sqrt_value == "3");
  auto p7o = weight_partition(u, 2, 7, 1, SqrtChoice::Other);
  CHECK(p7o.sqrt_value == "4");
  CHECK(p7o.period == 3);
  CHECK(weight_partition(u, 3, 5, 2).period == 4);
  CHECK_THROWS_AS(weight_partition(u, 3, 3, 1), InvalidModulus);

  for (const auto& p : {p2, p5, p7, p7o, weight_partition(u, 3, 0, 1)}) {
    UniformVirtual sum(W);
    std::set<int> seen;
    for (const auto& [id, comp] : p.classes) {
      sum += comp;
      for (int e : comp.exponents()) {
        REQUIRE(p.class_of(e) == id);
        REQUIRE(seen.insert(e).second);
      }
    }
    CHECK(sum == u);
  }
  auto none = weight_partition(u, 3, 0, 1);
  CHECK(none.classes.size() == u.exponents().size());
}

TEST_CASE("n-matrix files") {
  auto W = group("A2");
  CHECK(load_n_matrix(W, temp_file("empty", "")).is_zero());
  CHECK(load_n_matrix(W, temp_file("obj", "{}")).is_zero());
  auto ok = load_n_matrix(W, temp_file("ok", R"({"entries":[{"v":"1","w":"1-2-1","n":1}]})"));
  CHECK(ok.get(W->parse_word("1"), W->longest().index) == 1);
  CHECK_THROWS_AS(load_n_matrix(W, temp_file("bad", R"({"entries":[{"v":"1-2-1","w":"1","n":1}]})")),
                  ValidationError);
  CHECK_THROWS_AS(load_n_matrix(W, temp_file("neg", R"({"entries":[{"v":"1","w":"1-2","n":-1}]})")),
                  ValidationError);
  CHECK_THROWS_AS(load_n_matrix(W, temp_file("cmp", R"({"entries":[{"v":"1","w":"2","n":1}]})")),
                  ValidationError);
  CHECK_THROWS_AS(load_n_matrix(W, temp_file("junk", "{not json")), ValidationError);
  CHECK_THROWS_AS(load_n_matrix(W, "/nonexistent/n.json"), ValidationError);
  for (const auto& n : {"empty", "obj", "ok", "bad", "neg", "cmp", "junk"})
    std::remove(("dlcat_test_" + std::string(n) + ".json").c_str());

  // A nonzero entry adds tilting summands.
  auto fd = make_frobenius(W, 3);
  auto tilt = k0_class(K0Kind::Tilt, W, W->longest().index, CoeffRing::Zbar);
  auto plain = zl_decompose(tilt, fd, 2, NMatrix(W));
  auto extra = zl_decompose(tilt, fd, 2, ok);
  CHECK(extra.size() == 2 * plain.size());
  CHECK(extra[1].cls.w == W->parse_word("1"));
  CHECK(extra[1].multiplicity == 1);
}

TEST_CASE("inverting l: summand counts") {
  auto gl2 = group("GL2");
  auto fd = make_frobenius(gl2, 3);
  auto std_s = k0_class(K0Kind::Std, gl2, 1, CoeffRing::Zbar);
  CHECK(zl_decompose(std_s, fd, 2, NMatrix(gl2)).size() == 8);
  CHECK(zl_decompose(std_s, fd, 7, NMatrix(gl2)).size() == 1);
  CHECK_THROWS_AS(zl_decompose(std_s, fd, 3, NMatrix(gl2)), InvalidModulus);
  auto ic = k0_class(K0Kind::IC, gl2, 1, CoeffRing::Zbar);
  CHECK_THROWS_AS(zl_decompose(ic, fd, 2, NMatrix(gl2)), UsageError);

  auto tilt = k0_class(K0Kind::Tilt, gl2, 1, CoeffRing::Zbar);
  auto parts = zl_decompose(tilt, fd, 2, NMatrix(gl2));
  CHECK(parts.size() == 8);
  for (const auto& p : parts) {
    CHECK(p.cls.kind == K0Kind::Tilt);
    CHECK(p.cls.w == 1);
    CHECK(p.cls.element.has_value() == p.cls.chi.is_trivial());
  }
  CHECK_THROWS_AS(ch_map(parts.back().cls), GatedFeatureError);
  auto with_flag = zl_decompose(tilt, fd, 2, NMatrix(gl2), true);
  CHECK(with_flag.back().cls.element.has_value());

  for (const auto& label : kSplit)
    for (long q : {2, 3})
      for (long ell : {2, 5, 7}) {
        auto W = group(label);
        auto f = make_frobenius(W, q);
        if (ell == f.p) continue;
        for (int w = 0; w < W->size(); ++w) {
          const auto expected = ell_power_characters(fixed_torus(w, f), ell, f).size();
          for (auto kind : {K0Kind::Std, K0Kind::Costd, K0Kind::Tilt}) {
            auto parts = zl_decompose(k0_class(kind, W, w, CoeffRing::Zbar), f, ell, NMatrix(W));
            REQUIRE(parts.size() == expected);
          }
        }
      }
}

TEST_CASE("Dudas-Malle certificates: worked cases") {
  auto W = group("A1");
  KLTable t = compute_kl_table(W);
  auto fd3 = make_frobenius(W, 3);
  auto e = dudas_malle_certificate(t, fd3, 0, 5, NMatrix(W));
  CHECK(e.classes.size() == 1);
  CHECK(e.all_pass());

  auto c5 = dudas_malle_certificate(t, fd3, 1, 5, NMatrix(W));
  CHECK(c5.period == 8);
  REQUIRE(c5.classes.size() == 2);
  CHECK(c5.classes[0].lambda_bar == 0);
  CHECK(c5.classes[0].ic_component == rho(W, "1"));
  CHECK(c5.classes[0].dual == -rho(W, "1"));
  CHECK(c5.classes[1].lambda_bar == 7);
  CHECK(c5.classes[1].ic_component == rho(W, "", -vinv));
  CHECK(c5.classes[1].dual == rho(W, "", -v));
  CHECK(c5.classes[1].tilt_lambda_bar == 1);
  CHECK(c5.classes[1].tilt_component == rho(W, "", v));
  CHECK(c5.all_pass());

  auto c2 = dudas_malle_certificate(t, fd3, 1, 2, NMatrix(W));
  CHECK(c2.period == 1);
  CHECK(c2.classes.size() == 1);
  CHECK(c2.all_pass());

  auto fd2 = make_frobenius(W, 2);
  auto c7 = dudas_malle_certificate(t, fd2, 1, 7, NMatrix(W));
  CHECK(c7.period == 6);
  CHECK(c7.all_pass());
  CHECK_THROWS_AS(dudas_malle_certificate(t, fd2, 1, 2, NMatrix(W)), InvalidModulus);

  auto j = certificate_to_json(c5);
  CHECK(j["w"] == "1");
  CHECK(j["classes"].size() == 2);
  CHECK(j["pass"] == true);
}

TEST_CASE("Dudas-Malle certificates pass on the full grid with n = 0") {
  for (const auto& label : kSplit) {
    auto W = group(label);
    KLTable t = compute_kl_table(W);
    for (long q : {2, 3}) {
      auto fd = make_frobenius(W, q);
      for (long ell : {2, 5, 7}) {
        if (ell == fd.p) continue;
        for (auto choice : {SqrtChoice::Canonical, SqrtChoice::Other})
          for (int w = 0; w < W->size(); ++w)
            REQUIRE(dudas_malle_certificate(t, fd, w, ell, NMatrix(W), choice).all_pass());
      }
    }
  }
}
