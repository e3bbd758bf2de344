#include "dlcat/dlchar.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dlcat/error.hpp"
#include "dlcat/json_io.hpp"

namespace dlcat {

namespace {

long neg_class(long id, long period) {
  if (period == 0) return -id;
  return ((-id) % period + period) % period;
}

BigRat to_rat(const BigInt& x) { return BigRat(x); }

}  // namespace

std::string to_string(K0Kind kind) {
  switch (kind) {
    case K0Kind::Std: return "std";
    case K0Kind::Costd: return "costd";
    case K0Kind::IC: return "ic";
    case K0Kind::Tilt: return "tilt";
  }
  return "?";
}

K0Kind parse_k0_kind(const std::string& text) {
  if (text == "std") return K0Kind::Std;
  if (text == "costd") return K0Kind::Costd;
  if (text == "ic") return K0Kind::IC;
  if (text == "tilt") return K0Kind::Tilt;
  throw UsageError("unknown class kind '" + text + "' (std, costd, ic, tilt)");
}

// NMatrix ------------------------------------------------------------------

void NMatrix::check(int v, int w, long n) const {
  if (!group_) throw UsageError("n-matrix without a group");
  if (v < 0 || w < 0 || v >= group_->size() || w >= group_->size())
    throw ValidationError("n-matrix index out of range");
  if (v == w || !group_->bruhat_leq(v, w))
    throw ValidationError("n-matrix entry (" + group_->word_string(v) + ", " +
                          group_->word_string(w) + ") needs v < w in the Bruhat order");
  if (n < 0) throw ValidationError("n-matrix entries must be non-negative");
}

void NMatrix::set(int v, int w, long n) {
  check(v, w, n);
  if (n == 0) {
    base_.erase({v, w});
  } else {
    base_[{v, w}] = n;
  }
}

void NMatrix::set_override(int v, int w, const std::vector<long>& chi, long n) {
  check(v, w, n);
  overrides_[{v, w, chi}] = n;
}

long NMatrix::get(int v, int w) const {
  auto it = base_.find({v, w});
  return it == base_.end() ? 0 : it->second;
}

long NMatrix::get(int v, int w, const std::vector<long>& chi) const {
  auto it = overrides_.find({v, w, chi});
  if (it != overrides_.end()) return it->second;
  return get(v, w);
}

bool NMatrix::is_zero() const {
  if (!base_.empty()) return false;
  for (const auto& [k, n] : overrides_)
    if (n != 0) return false;
  return true;
}

std::vector<std::pair<int, long>> NMatrix::column(int w, const std::vector<long>& chi) const {
  std::vector<std::pair<int, long>> out;
  if (!group_) return out;
  for (int v = 0; v < w; ++v) {
    if (!group_->bruhat_leq(v, w)) continue;
    const long n = get(v, w, chi);
    if (n > 0) out.emplace_back(v, n);
  }
  return out;
}

NMatrix n_matrix_from_json(const WeylGroupPtr& group, const nlohmann::json& j) {
  NMatrix n(group);
  if (j.is_null()) return n;
  const nlohmann::json* entries = nullptr;
  const nlohmann::json* overrides = nullptr;
  if (j.is_array()) {
    entries = &j;
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      if (key != "entries" && key != "overrides")
        throw ValidationError("unknown n-matrix key '" + key + "'");
    if (j.contains("entries")) entries = &j["entries"];
    if (j.contains("overrides")) overrides = &j["overrides"];
  } else {
    throw ValidationError("n-matrix must be a JSON object");
  }
  auto read = [&](const nlohmann::json& row, bool with_char) {
    if (!row.is_object() || !row.contains("v") || !row.contains("w") || !row.contains("n"))
      throw ValidationError("n-matrix rows need 'v', 'w' and 'n'");
    if (!row["v"].is_string() || !row["w"].is_string() || !row["n"].is_number_integer())
      throw ValidationError("n-matrix row has wrong field types");
    int v = 0, w = 0;
    try {
      v = group->parse_word(row["v"].get<std::string>());
      w = group->parse_word(row["w"].get<std::string>());
    } catch (const UsageError& e) {
      throw ValidationError(std::string("n-matrix word: ") + e.what());
    }
    const long value = row["n"].get<long>();
    if (with_char) {
      if (!row.contains("character") || !row["character"].is_array())
        throw ValidationError("n-matrix override needs a 'character' tuple");
      n.set_override(v, w, row["character"].get<std::vector<long>>(), value);
    } else {
      n.set(v, w, value);
    }
  };
  if (entries) {
    if (!entries->is_array()) throw ValidationError("'entries' must be an array");
    for (const auto& row : *entries) read(row, false);
  }
  if (overrides) {
    if (!overrides->is_array()) throw ValidationError("'overrides' must be an array");
    for (const auto& row : *overrides) read(row, true);
  }
  return n;
}

NMatrix load_n_matrix(const WeylGroupPtr& group, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read n-matrix file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return NMatrix(group);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("n-matrix file is not valid JSON: " + std::string(e.what()));
  }
  return n_matrix_from_json(group, j);
}

// K0 classes ----------------------------------------------------------------

K0Class k0_class(K0Kind kind, const MonoBlockPtr& block, int w, int c, CoeffRing ring, int tate,
                 bool allow_conjectural) {
  MonoElem::basis(block, w, c);
  K0Class out;
  out.kind = kind;
  out.w = w;
  out.chi = block->chars[c];
  out.ring = ring;
  out.tate = tate;
  MonoElem elem(block);
  switch (kind) {
    case K0Kind::Std: elem = MonoElem::basis(block, w, c); break;
    case K0Kind::Costd: elem = mono_bar(MonoElem::basis(block, w, c)); break;
    case K0Kind::IC: elem = mono_kl_tilde(block, w, c); break;
    case K0Kind::Tilt:
      if (!out.chi.is_trivial()) {
        if (!allow_conjectural)
          throw GatedFeatureError(
              "tilting classes with nontrivial character are conjectural; pass --conjectural");
        out.conjectural = true;
      }
      elem = mono_kl(block, w, c);
      break;
  }
  out.element = elem.scaled(Laurent::monomial(-tate));
  return out;
}

K0Class k0_class(K0Kind kind, const WeylGroupPtr& group, int w, CoeffRing ring, int tate) {
  return k0_class(kind, block_of(group, trivial_tame(*group)), w, 0, ring, tate);
}

std::vector<Summand> zl_decompose(const K0Class& c, const FrobeniusDatum& fd, long ell,
                                  const NMatrix& n, bool allow_conjectural) {
  if (c.kind == K0Kind::IC) throw UsageError("only std, costd and tilt classes decompose");
  if (!c.chi.is_trivial()) throw UsageError("decomposition needs the trivial character");
  const WeylGroupPtr& W = fd.group;
  FixedTorus t = fixed_torus(c.w, fd);
  std::vector<Summand> out;
  for (const auto& chi_l : ell_power_characters(t, ell, fd)) {
    TameCharacter theta = tame_character(t, chi_l);
    MonoBlockPtr block = block_of(W, theta);
    const int ci = block->char_index(theta);
    auto make = [&](int w) {
      K0Class k;
      k.kind = c.kind;
      k.w = w;
      k.chi = theta;
      k.ring = CoeffRing::Qbar;
      k.tate = c.tate;
      const Laurent twist = Laurent::monomial(-c.tate);
      switch (c.kind) {
        case K0Kind::Std: k.element = MonoElem::basis(block, w, ci).scaled(twist); break;
        case K0Kind::Costd: k.element = mono_bar(MonoElem::basis(block, w, ci)).scaled(twist); break;
        default:
          k.conjectural = !theta.is_trivial();
          if (!k.conjectural || allow_conjectural) k.element = mono_kl(block, w, ci).scaled(twist);
          break;
      }
      return k;
    };
    out.push_back({make(c.w), 1});
    if (c.kind == K0Kind::Tilt)
      for (const auto& [v, mult] : n.column(c.w, chi_l.a)) out.push_back({make(v), mult});
  }
  return out;
}

// Uniform virtual characters ------------------------------------------------

TameCharacter trivial_tame(const WeylGroup& W) {
  return make_tame(1, std::vector<long>(W.datum().rank, 0));
}

Laurent UniformVirtual::coeff(int w, const TameCharacter& theta) const {
  auto it = terms_.find({w, theta});
  return it == terms_.end() ? Laurent() : it->second;
}

void UniformVirtual::add_term(int w, const TameCharacter& theta, const Laurent& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({w, theta}, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

UniformVirtual& UniformVirtual::operator+=(const UniformVirtual& rhs) {
  if (!group_) group_ = rhs.group_;
  for (const auto& [k, p] : rhs.terms_) add_term(k.first, k.second, p);
  return *this;
}

UniformVirtual UniformVirtual::scaled(const Laurent& c) const {
  UniformVirtual out(group_);
  if (c.is_zero()) return out;
  for (const auto& [k, p] : terms_) out.add_term(k.first, k.second, p * c);
  return out;
}

std::vector<int> UniformVirtual::exponents() const {
  std::set<int> out;
  for (const auto& [k, p] : terms_)
    for (const auto& [e, c] : p.terms()) out.insert(e);
  return {out.begin(), out.end()};
}

std::string UniformVirtual::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, p] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string name = "rho_" + (k.first == 0 ? std::string("e") : group_->word_string(k.first));
    if (!k.second.is_trivial()) name += k.second.to_string();
    if (p == Laurent(1)) {
      os << name;
    } else if (p.is_monomial()) {
      os << p << "*" << name;
    } else {
      os << "(" << p << ")*" << name;
    }
  }
  return os.str();
}

nlohmann::ordered_json UniformVirtual::to_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [k, p] : terms_) {
    nlohmann::ordered_json row;
    row["w"] = group_->word_string(k.first);
    row["theta"] = k.second.to_string();
    row["coeff"] = laurent_to_json(p);
    rows.push_back(std::move(row));
  }
  return rows;
}

UniformVirtual ch_map(const MonoElem& m) {
  const MonoBlock& B = *m.block();
  UniformVirtual u(B.group);
  for (const auto& [idx, p] : m.coeffs()) u.add_term(B.elem_of(idx), B.chars[B.char_of(idx)], p);
  return u;
}

UniformVirtual ch_map(const HeckeElem& h) {
  UniformVirtual u(h.group());
  const TameCharacter triv = trivial_tame(*h.group());
  for (const auto& [w, p] : h.coeffs()) u.add_term(w, triv, p);
  return u;
}

UniformVirtual ch_map(const K0Class& c) {
  if (!c.element)
    throw GatedFeatureError("class " + to_string(c.kind) + " at " + c.chi.to_string() +
                            " is conjectural; pass --conjectural");
  return ch_map(*c.element);
}

UniformVirtual alvis_curtis(const UniformVirtual& u) {
  UniformVirtual out(u.group());
  for (const auto& [k, p] : u.terms()) {
    Laurent q = p.bar();
    if (u.group()->length(k.first) % 2) q = -q;
    out.add_term(k.first, k.second, q);
  }
  return out;
}

namespace {

int match_sign(const UniformVirtual& lhs, const UniformVirtual& rhs) {
  if (lhs == rhs) return 1;
  if (lhs == -rhs) return -1;
  return 0;
}

}  // namespace

DualityReport duality_check(const MonoKLTable& table, int w, int c, bool allow_conjectural) {
  const MonoBlock& B = *table.block();
  if (!B.chars[c].is_trivial() && !allow_conjectural)
    throw GatedFeatureError("duality for nontrivial characters uses the conjectural tilting "
                            "classes; pass --conjectural");
  DualityReport r;
  r.w = w;
  r.chi = B.chars[c];
  r.ic = ch_map(table.kl_tilde(w, c));
  r.tilt = ch_map(table.kl(w, c));
  r.sign = match_sign(alvis_curtis(r.ic), r.tilt);
  if (r.sign == 0)
    throw IdentityViolation("d(ch(IC)) != +-ch(T) at w = " + B.group->word_string(w));
  return r;
}

DualityReport duality_check(const KLTable& table, int w) {
  DualityReport r;
  r.w = w;
  r.chi = trivial_tame(*table.group());
  r.ic = ch_map(table.kl_tilde(w));
  r.tilt = ch_map(table.kl_basis(w));
  r.sign = match_sign(alvis_curtis(r.ic), r.tilt);
  if (r.sign == 0)
    throw IdentityViolation("d(ch(IC)) != +-ch(T) at w = " + table.group()->word_string(w));
  return r;
}

// Trace at v = 1 -------------------------------------------------------------

ClassFunction tr_map(const HeckeElem& h, const CharTable& table) {
  const WeylGroup& W = *h.group();
  if (!W.datum().is_split()) throw UnsupportedError("the trace map needs split data");
  const auto& classes = table.classes;
  const std::size_t nc = classes.classes.size();
  std::vector<BigRat> pairing(table.values.size(), 0);
  for (const auto& [x, p] : h.coeffs()) {
    const BigRat fx = to_rat(p.eval(BigInt(1)));
    for (std::size_t e = 0; e < table.values.size(); ++e)
      pairing[e] += fx * table.values[e][classes.class_of[x]];
  }
  ClassFunction out(nc, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    BigRat acc = 0;
    for (std::size_t e = 0; e < table.values.size(); ++e) acc += pairing[e] * table.values[e][c];
    out[c] = acc * BigRat(static_cast<long>(classes.classes[c].size()), W.size());
    out[c].canonicalize();
  }
  return out;
}

ClassFunction ch_b_at_one(const HeckeElem& h, const ConjugacyClasses& classes) {
  const WeylGroup& W = *h.group();
  ClassFunction out(classes.classes.size(), 0);
  for (const auto& [y, p] : h.coeffs()) {
    BigInt val = p.b_twist().eval(BigInt(1));
    if (W.length(y) % 2) val = -val;
    out[classes.class_of[y]] += to_rat(val);
  }
  return out;
}

TraceReport tr_identity_check(const KLTable& kl, const CharTable& table, int w) {
  const WeylGroup& W = *kl.group();
  if (!W.datum().is_split()) throw UnsupportedError("the trace identity is checked for split data");
  TraceReport r;
  r.w = w;
  const HeckeElem klw = kl.kl_basis(w);
  r.tr = tr_map(klw, table);
  r.ch_b = ch_b_at_one(klw, table.classes);
  r.kl_sum.assign(table.classes.classes.size(), 0);
  for (const auto& [y, p] : kl.column(w)) r.kl_sum[table.classes.class_of[y]] += to_rat(kl.p_at_one(y, w));
  if (r.tr != r.kl_sum)
    throw IdentityViolation("tr(KL_w) at v=1 differs from sum_y P_{y,w}(1) R_y at w = " +
                            W.word_string(w));
  ClassFunction neg = r.ch_b;
  for (auto& x : neg) x = -x;
  if (r.tr == r.ch_b) {
    r.sign = 1;
  } else if (r.tr == neg) {
    r.sign = -1;
  } else {
    throw IdentityViolation("tr and ch o b disagree beyond a sign at w = " + W.word_string(w));
  }
  return r;
}

// Weight partitions and certificates ----------------------------------------

SqrtChoice parse_sqrt_choice(const std::string& text) {
  if (text == "canonical") return SqrtChoice::Canonical;
  if (text == "other") return SqrtChoice::Other;
  throw UsageError("sqrt choice must be 'canonical' or 'other'");
}

std::string to_string(SqrtChoice choice) {
  return choice == SqrtChoice::Canonical ? "canonical" : "other";
}

long WeightPartition::class_of(int exponent) const {
  if (period == 0) return exponent;
  return ((exponent % period) + period) % period;
}

WeightPartition weight_partition(const UniformVirtual& u, long q, long ell, int delta,
                                 SqrtChoice choice) {
  WeightPartition wp;
  wp.ell = ell;
  wp.q = q;
  wp.delta = delta;
  wp.sqrt_choice = choice;
  if (ell != 0) {
    FFElem x = ff_sqrt(q, ell);
    if (choice == SqrtChoice::Other) x = -x;
    wp.sqrt_value = x.to_string();
    wp.period = ff_order(x.pow(delta));
  }
  for (int e : u.exponents()) {
    const long id = wp.class_of(e);
    if (wp.classes.count(id)) continue;
    wp.classes.emplace(id, u.filter_exponents([&](int x) { return wp.class_of(x) == id; }));
  }
  return wp;
}

bool CertificateSet::all_pass() const {
  return std::all_of(classes.begin(), classes.end(), [](const ProjCertificate& c) { return c.pass; });
}

UniformVirtual tilt_unipotent(const KLTable& kl, int w, const NMatrix& n) {
  UniformVirtual u = ch_map(kl.kl_basis(w));
  const std::vector<long> triv(kl.group()->datum().rank, 0);
  for (const auto& [v, mult] : n.column(w, triv))
    u += ch_map(kl.kl_basis(v)).scaled(Laurent(mult));
  return u;
}

CertificateSet dudas_malle_certificate(const KLTable& kl, const FrobeniusDatum& fd, int w,
                                       long ell, const NMatrix& n, SqrtChoice choice) {
  const WeylGroup& W = *kl.group();
  if (!W.datum().is_split()) throw UnsupportedError("certificates are computed for split data");
  if (ell == fd.p) throw InvalidModulus("l must differ from the characteristic p");
  const int sign = duality_check(kl, w).sign;
  const UniformVirtual ic = ch_map(kl.kl_tilde(w));
  const UniformVirtual tilt = tilt_unipotent(kl, w, n);
  const WeightPartition pic = weight_partition(ic, fd.q, ell, fd.delta, choice);
  const WeightPartition ptilt = weight_partition(tilt, fd.q, ell, fd.delta, choice);

  CertificateSet out;
  out.group = kl.group();
  out.w = w;
  out.q = fd.q;
  out.ell = ell;
  out.sqrt_choice = choice;
  out.sqrt_value = pic.sqrt_value;
  out.period = pic.period;
  std::set<long> ids;
  for (const auto& [id, comp] : pic.classes) ids.insert(id);
  for (const auto& [id, comp] : ptilt.classes) ids.insert(neg_class(id, pic.period));
  for (long id : ids) {
    ProjCertificate c;
    c.w = w;
    c.lambda_bar = id;
    c.tilt_lambda_bar = neg_class(id, pic.period);
    c.sign = sign;
    auto it = pic.classes.find(id);
    c.ic_component = it == pic.classes.end() ? UniformVirtual(kl.group()) : it->second;
    c.dual = alvis_curtis(c.ic_component);
    auto jt = ptilt.classes.find(c.tilt_lambda_bar);
    c.tilt_component = jt == ptilt.classes.end() ? UniformVirtual(kl.group()) : jt->second;
    c.pass = c.dual == c.tilt_component.scaled(Laurent(sign));
    out.classes.push_back(std::move(c));
  }
  return out;
}

nlohmann::ordered_json class_function_to_json(const ClassFunction& f) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& x : f) {
    if (x.get_den() == 1) {
      out.push_back(bigint_to_json(x.get_num()));
    } else {
      out.push_back(x.get_str());
    }
  }
  return out;
}

nlohmann::ordered_json certificate_to_json(const CertificateSet& cert) {
  nlohmann::ordered_json out;
  const WeylGroup& W = *cert.group;
  out["w"] = W.word_string(cert.w);
  out["q"] = cert.q;
  out["l"] = cert.ell;
  out["sqrt_choice"] = to_string(cert.sqrt_choice);
  out["sqrt_value"] = cert.sqrt_value;
  out["period"] = cert.period;
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const auto& c : cert.classes) {
    nlohmann::ordered_json row;
    row["lambda_bar_id"] = c.lambda_bar;
    row["tilt_lambda_bar_id"] = c.tilt_lambda_bar;
    row["ic_component"] = c.ic_component.to_json();
    row["dual"] = c.dual.to_json();
    row["tilt_component"] = c.tilt_component.to_json();
    row["sign"] = c.sign;
    row["pass"] = c.pass;
    classes.push_back(std::move(row));
  }
  out["classes"] = std::move(classes);
  out["pass"] = cert.all_pass();
  return out;
}

}  // namespace dlcat
