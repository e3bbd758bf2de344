#include "dlcat/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dlcat/dlchar.hpp"
#include "dlcat/error.hpp"
#include "dlcat/json_io.hpp"
#include "dlcat/parallel.hpp"

namespace dlcat {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kCacheEnv = "DLCAT_CACHE_DIR";
constexpr const char* kCacheVersion = "kl-v1";

struct RunConfig {
  std::string command;
  std::string preset;
  std::string datum_path;
  std::optional<long> q;
  std::optional<long> ell;
  std::optional<int> delta;
  std::string sqrt_choice = "canonical";
  std::string n_matrix_path;
  std::string format = "json";
  std::optional<std::string> w;
  std::optional<int> class_id;
  int threads = 1;
  bool conjectural = false;
  bool modular = false;
  bool flip_sign = false;
};

// Command output: a JSON document and the same content as a flat table.
struct Result {
  ojson json;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool ok = true;
  std::string failure;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render(const Result& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.json.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    for (std::size_t i = 0; i < r.header.size(); ++i) out << (i ? "," : "") << csv_field(r.header[i]);
    out << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(r.header.size(), 0);
  for (std::size_t i = 0; i < r.header.size(); ++i) width[i] = r.header[i].size();
  for (const auto& row : r.rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += "  ";
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size(), ' ');
    }
    out << s << "\n";
  };
  line(r.header);
  for (const auto& row : r.rows) line(row);
}

std::string word_or_e(const WeylGroup& W, int w) { return w == 0 ? "e" : W.word_string(w); }

std::string descents(std::uint64_t mask) {
  std::string s;
  for (int i = 0; i < 64; ++i)
    if ((mask >> i) & 1u) s += (s.empty() ? "" : "-") + std::to_string(i + 1);
  return s;
}

std::string join(const std::vector<long>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

std::string rat_string(const BigRat& x) { return x.get_str(); }

// Shared context built from the config.
struct Context {
  RunConfig cfg;
  RootDatum datum;
  WeylGroupPtr group;

  std::vector<int> selected_w() const {
    if (cfg.w) return {group->parse_word(*cfg.w)};
    std::vector<int> all(group->size());
    for (int i = 0; i < group->size(); ++i) all[i] = i;
    return all;
  }

  FrobeniusDatum frobenius() const {
    if (!cfg.q) throw UsageError("--q is required for '" + cfg.command + "'");
    return make_frobenius(group, *cfg.q, cfg.delta);
  }

  long ell() const {
    if (!cfg.ell) throw UsageError("--l is required for '" + cfg.command + "'");
    return *cfg.ell;
  }

  NMatrix n_matrix() const {
    if (cfg.n_matrix_path.empty()) return NMatrix(group);
    return load_n_matrix(group, cfg.n_matrix_path);
  }
};

KLTable cached_kl_table(const Context& ctx) {
  const char* dir = std::getenv(kCacheEnv);
  std::string path;
  if (dir && *dir) {
    const std::string key = std::string(kCacheVersion) + root_datum_to_json(ctx.datum).dump();
    std::ostringstream name;
    name << "kl-" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(key) << ".json";
    path = (std::filesystem::path(dir) / name.str()).string();
    std::ifstream in(path);
    if (in) {
      try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.value("key", "") == key) return kl_table_from_json(ctx.group, j.at("rows"));
      } catch (const std::exception&) {
        // Unreadable cache entries are recomputed and overwritten.
      }
    }
    KLTable t = compute_kl_table(ctx.group, {KLAlgorithm::Recursion, DescentChoice::LexLeast,
                                             ctx.cfg.threads});
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::string tmp = path + ".tmp";
    {
      std::ofstream os(tmp);
      ojson doc;
      doc["key"] = key;
      doc["rows"] = kl_table_to_json(t);
      os << doc.dump();
    }
    std::filesystem::rename(tmp, path, ec);
    return t;
  }
  return compute_kl_table(ctx.group, {KLAlgorithm::Recursion, DescentChoice::LexLeast,
                                      ctx.cfg.threads});
}

Result cmd_group(const Context& ctx) {
  const WeylGroup& W = *ctx.group;
  Result r;
  r.json["datum"] = ctx.datum.label;
  r.json["order"] = W.size();
  r.json["longest"] = W.word_string(W.longest().index);
  r.header = {"index", "w", "length", "left_descents", "right_descents", "below"};
  ojson elems = ojson::array();
  ojson bruhat = ojson::array();
  for (int w = 0; w < W.size(); ++w) {
    ojson e;
    e["index"] = w;
    e["w"] = W.word_string(w);
    e["length"] = W.length(w);
    e["left_descents"] = descents(W.left_descents(w));
    e["right_descents"] = descents(W.right_descents(w));
    elems.push_back(e);
    std::string row;
    int below = 0;
    for (int y = 0; y < W.size(); ++y) {
      row += W.bruhat_leq(y, w) ? '1' : '0';
      below += W.bruhat_leq(y, w);
    }
    bruhat.push_back(row);
    r.rows.push_back({std::to_string(w), word_or_e(W, w), std::to_string(W.length(w)),
                      descents(W.left_descents(w)), descents(W.right_descents(w)),
                      std::to_string(below)});
  }
  r.json["elements"] = std::move(elems);
  r.json["bruhat"] = std::move(bruhat);
  return r;
}

Result cmd_kl(const Context& ctx) {
  const WeylGroup& W = *ctx.group;
  KLTable t = cached_kl_table(ctx);
  Result r;
  r.json = ojson::array();
  r.header = {"w", "y", "h", "h_tilde"};
  for (int w : ctx.selected_w()) {
    for (auto& row : kl_table_to_json(t, w)) {
      const int y = W.parse_word(row["y"].get<std::string>());
      r.rows.push_back({word_or_e(W, w), word_or_e(W, y), t.h(y, w).to_string(),
                        t.h_tilde(y, w).to_string()});
      r.json.push_back(std::move(row));
    }
  }
  return r;
}

Result cmd_torus(const Context& ctx) {
  const FrobeniusDatum fd = ctx.frobenius();
  const WeylGroup& W = *ctx.group;
  Result r;
  r.json["datum"] = ctx.datum.label;
  r.json["q"] = fd.q;
  r.json["p"] = fd.p;
  r.json["delta"] = fd.delta;
  auto all = fixed_tori_to_json(fd, true);
  ojson tori = ojson::array();
  r.header = {"w", "invariants", "order", "characters"};
  for (int w : ctx.selected_w()) {
    FixedTorus t = fixed_torus(w, fd);
    tori.push_back(all[w]);
    r.rows.push_back({word_or_e(W, w), join(t.invariants), std::to_string(t.order),
                      std::to_string(t.order)});
  }
  r.json["tori"] = std::move(tori);
  return r;
}

Result cmd_series(const Context& ctx) {
  const FrobeniusDatum fd = ctx.frobenius();
  const WeylGroup& W = *ctx.group;
  std::optional<long> filter;
  if (ctx.cfg.modular) filter = ctx.ell();
  auto classes = geometric_classes(fd, ctx.cfg.threads, filter);
  Result r;
  r.json = series_to_json(fd, classes);
  if (filter) r.json["prime_to"] = *filter;
  r.header = {"class", "representative", "w", "character"};
  for (const auto& gc : classes)
    for (const auto& [w, chi] : gc.members)
      r.rows.push_back({std::to_string(gc.id), gc.representative.to_string(), word_or_e(W, w),
                        chi.to_string()});
  return r;
}

Result cmd_monokl(const Context& ctx) {
  const FrobeniusDatum fd = ctx.frobenius();
  const WeylGroup& W = *ctx.group;
  auto classes = geometric_classes(fd, ctx.cfg.threads);
  std::vector<int> ids;
  if (ctx.cfg.class_id) {
    if (*ctx.cfg.class_id < 0 || *ctx.cfg.class_id >= static_cast<int>(classes.size()))
      throw UsageError("--class out of range (" + std::to_string(classes.size()) + " classes)");
    ids.push_back(*ctx.cfg.class_id);
  } else {
    for (int i = 0; i < static_cast<int>(classes.size()); ++i) ids.push_back(i);
  }
  std::vector<ojson> blocks(ids.size());
  parallel_for(static_cast<int>(ids.size()), ctx.cfg.threads, [&](int i) {
    auto B = block_basis(ctx.group, classes[ids[i]]);
    blocks[i] = mono_kl_to_json(compute_mono_kl(B));
  });
  Result r;
  r.json["datum"] = ctx.datum.label;
  r.json["q"] = fd.q;
  r.json["blocks"] = ojson::array();
  r.header = {"class", "w", "character", "y", "h", "h_tilde"};
  for (auto& b : blocks) {
    for (const auto& row : b["rows"]) {
      const int w = W.parse_word(row["w"].get<std::string>());
      const int y = W.parse_word(row["y"].get<std::string>());
      r.rows.push_back({std::to_string(b["class_id"].get<int>()), word_or_e(W, w),
                        row["character"].get<std::string>(), word_or_e(W, y),
                        laurent_from_json(row["h"]).to_string(),
                        laurent_from_json(row["h_tilde"]).to_string()});
    }
    r.json["blocks"].push_back(std::move(b));
  }
  return r;
}

Result cmd_duality(const Context& ctx) {
  const WeylGroup& W = *ctx.group;
  const auto ws = ctx.selected_w();
  std::vector<DualityReport> reports(ws.size());
  if (ctx.cfg.class_id) {
    const FrobeniusDatum fd = ctx.frobenius();
    auto classes = geometric_classes(fd, ctx.cfg.threads);
    if (*ctx.cfg.class_id < 0 || *ctx.cfg.class_id >= static_cast<int>(classes.size()))
      throw UsageError("--class out of range (" + std::to_string(classes.size()) + " classes)");
    auto B = block_basis(ctx.group, classes[*ctx.cfg.class_id]);
    if (!B->is_unipotent() && !ctx.cfg.conjectural)
      throw GatedFeatureError("duality on a non-unipotent block uses conjectural tilting classes; "
                              "pass --conjectural");
    MonoKLTable t = compute_mono_kl(B, ctx.cfg.threads);
    parallel_for(static_cast<int>(ws.size()), ctx.cfg.threads, [&](int i) {
      reports[i] = duality_check(t, ws[i], 0, ctx.cfg.conjectural);
    });
  } else {
    KLTable t = cached_kl_table(ctx);
    parallel_for(static_cast<int>(ws.size()), ctx.cfg.threads,
                 [&](int i) { reports[i] = duality_check(t, ws[i]); });
  }
  Result r;
  r.json["datum"] = ctx.datum.label;
  r.header = {"w", "length", "character", "sign", "expected", "pass"};
  ojson rows = ojson::array();
  for (auto& rep : reports) {
    if (ctx.cfg.flip_sign) rep.sign = -rep.sign;
    const int expected = W.length(rep.w) % 2 ? -1 : 1;
    const bool pass = rep.sign == expected;
    if (!pass) {
      r.ok = false;
      r.failure = "duality sign at w = " + word_or_e(W, rep.w) + " is " + std::to_string(rep.sign) +
                  ", expected (-1)^l(w) = " + std::to_string(expected);
    }
    ojson row;
    row["w"] = W.word_string(rep.w);
    row["length"] = W.length(rep.w);
    row["character"] = rep.chi.to_string();
    row["sign"] = rep.sign;
    row["expected_sign"] = expected;
    row["pass"] = pass;
    row["ic"] = rep.ic.to_string();
    row["tilt"] = rep.tilt.to_string();
    rows.push_back(std::move(row));
    r.rows.push_back({word_or_e(W, rep.w), std::to_string(W.length(rep.w)), rep.chi.to_string(),
                      std::to_string(rep.sign), std::to_string(expected), pass ? "true" : "false"});
  }
  r.json["rows"] = std::move(rows);
  r.json["pass"] = r.ok;
  return r;
}

Result cmd_trcheck(const Context& ctx) {
  const WeylGroup& W = *ctx.group;
  if (!ctx.datum.is_split()) throw UnsupportedError("trcheck needs split data");
  CharTable ct = char_table(W);
  KLTable t = cached_kl_table(ctx);
  const auto ws = ctx.selected_w();
  std::vector<TraceReport> reports(ws.size());
  parallel_for(static_cast<int>(ws.size()), ctx.cfg.threads,
               [&](int i) { reports[i] = tr_identity_check(t, ct, ws[i]); });
  Result r;
  r.json["datum"] = ctx.datum.label;
  ojson classes = ojson::array();
  for (const auto& c : ct.classes.classes) classes.push_back(W.word_string(c.front()));
  r.json["classes"] = classes;
  r.header = {"w", "sign", "expected", "tr", "ch_b", "pass"};
  ojson rows = ojson::array();
  auto vec_string = [](const ClassFunction& f) {
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " " : "") + rat_string(f[i]);
    return s;
  };
  for (auto& rep : reports) {
    if (ctx.cfg.flip_sign) rep.sign = -rep.sign;
    const int expected = W.length(rep.w) % 2 ? -1 : 1;
    const bool pass = rep.sign == expected;
    if (!pass) {
      r.ok = false;
      r.failure = "trace sign at w = " + word_or_e(W, rep.w) + " is " + std::to_string(rep.sign);
    }
    ojson row;
    row["w"] = W.word_string(rep.w);
    row["sign"] = rep.sign;
    row["expected_sign"] = expected;
    row["pass"] = pass;
    row["tr"] = class_function_to_json(rep.tr);
    row["ch_b"] = class_function_to_json(rep.ch_b);
    row["kl_sum"] = class_function_to_json(rep.kl_sum);
    rows.push_back(std::move(row));
    r.rows.push_back({word_or_e(W, rep.w), std::to_string(rep.sign), std::to_string(expected),
                      vec_string(rep.tr), vec_string(rep.ch_b), pass ? "true" : "false"});
  }
  r.json["rows"] = std::move(rows);
  r.json["pass"] = r.ok;
  return r;
}

Result cmd_dudasmalle(const Context& ctx) {
  const WeylGroup& W = *ctx.group;
  const FrobeniusDatum fd = ctx.frobenius();
  const long ell = ctx.ell();
  const NMatrix n = ctx.n_matrix();
  const SqrtChoice choice = parse_sqrt_choice(ctx.cfg.sqrt_choice);
  KLTable t = cached_kl_table(ctx);
  const auto ws = ctx.selected_w();
  std::vector<CertificateSet> certs(ws.size());
  parallel_for(static_cast<int>(ws.size()), ctx.cfg.threads, [&](int i) {
    certs[i] = dudas_malle_certificate(t, fd, ws[i], ell, n, choice);
  });
  Result r;
  r.json["datum"] = ctx.datum.label;
  r.json["q"] = fd.q;
  r.json["l"] = ell;
  r.json["delta"] = fd.delta;
  r.json["sqrt_choice"] = to_string(choice);
  r.json["n_matrix_zero"] = n.is_zero();
  r.header = {"w", "lambda_bar", "tilt_lambda_bar", "sign", "ic_component", "dual",
              "tilt_component", "pass"};
  ojson arr = ojson::array();
  for (auto& cert : certs) {
    if (ctx.cfg.flip_sign)
      for (auto& c : cert.classes) {
        c.sign = -c.sign;
        c.pass = c.dual == c.tilt_component.scaled(Laurent(c.sign));
      }
    if (!cert.all_pass()) {
      r.ok = false;
      r.failure = "certificate failed at w = " + word_or_e(W, cert.w);
    }
    for (const auto& c : cert.classes)
      r.rows.push_back({word_or_e(W, cert.w), std::to_string(c.lambda_bar),
                        std::to_string(c.tilt_lambda_bar), std::to_string(c.sign),
                        c.ic_component.to_string(), c.dual.to_string(),
                        c.tilt_component.to_string(), c.pass ? "true" : "false"});
    arr.push_back(certificate_to_json(cert));
  }
  r.json["certificates"] = std::move(arr);
  r.json["pass"] = r.ok;
  return r;
}

Context make_context(const RunConfig& cfg) {
  Context ctx;
  ctx.cfg = cfg;
  if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
  if (!cfg.preset.empty() && !cfg.datum_path.empty())
    throw UsageError("use either --preset or --datum, not both");
  if (!cfg.datum_path.empty()) {
    std::ifstream in(cfg.datum_path);
    if (!in) throw ValidationError("cannot read datum file '" + cfg.datum_path + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("datum file is not valid JSON: " + std::string(e.what()));
    }
    ctx.datum = root_datum_from_json(j);
  } else if (!cfg.preset.empty()) {
    ctx.datum = make_preset(cfg.preset);
  } else {
    throw UsageError("one of --preset or --datum is required");
  }
  ctx.group = build_group(ctx.datum);
  if (cfg.q) {
    FrobeniusDatum fd = make_frobenius(ctx.group, *cfg.q, cfg.delta);
    if (cfg.ell) {
      if (!is_prime(*cfg.ell)) throw InvalidModulus("--l must be prime");
      if (*cfg.ell == fd.p) throw InvalidModulus("--l must differ from the characteristic of q");
    }
  }
  return ctx;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kazhdan-Lusztig, torus and Deligne-Lusztig character computations", "dlcat"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  RunConfig cfg;
  app.add_option("--preset", cfg.preset, "Root datum preset (A1, A2, A3, B2, B3, G2, GL2, T1, ...)");
  app.add_option("--datum", cfg.datum_path, "Root datum JSON file");
  app.add_option("--q", cfg.q, "Prime power q");
  app.add_option("--l", cfg.ell, "Prime l different from the characteristic");
  app.add_option("--delta", cfg.delta, "Override for delta (multiple of the order of tau)");
  app.add_option("--sqrt", cfg.sqrt_choice, "Square root of q mod l")
      ->check(CLI::IsMember({"canonical", "other"}));
  app.add_option("--n-matrix", cfg.n_matrix_path, "JSON file with multiplicities n_{v,w}");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--w", cfg.w, "Restrict to one element, e.g. s1s2s1, 1-2-1, 121 or e");
  app.add_option("--class", cfg.class_id, "Geometric class id (monokl, duality)");
  app.add_option("--threads", cfg.threads, "Worker threads");
  app.add_flag("--conjectural", cfg.conjectural, "Allow conjectural tilting classes");
  app.add_flag("--modular", cfg.modular, "series: keep characters of order prime to --l");
  app.add_flag("--debug-flip-sign", cfg.flip_sign)->group("");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"group", "Weyl group elements, descents and Bruhat order"},
      {"kl", "Kazhdan-Lusztig table (both self-dual bases)"},
      {"torus", "Fixed tori T^{wF} and their characters"},
      {"series", "Geometric conjugacy classes of pairs (w, theta)"},
      {"monokl", "Self-dual bases of the monodromic blocks"},
      {"duality", "Signs of d(ch(IC_w)) = +-ch(T_w)"},
      {"trcheck", "Trace identity at v = 1"},
      {"dudasmalle", "Projectivity certificates per eigenvalue class mod l"}};
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->callback([&cfg, name = name] { cfg.command = name; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Context ctx = make_context(cfg);
    Result r;
    if (cfg.command == "group") r = cmd_group(ctx);
    else if (cfg.command == "kl") r = cmd_kl(ctx);
    else if (cfg.command == "torus") r = cmd_torus(ctx);
    else if (cfg.command == "series") r = cmd_series(ctx);
    else if (cfg.command == "monokl") r = cmd_monokl(ctx);
    else if (cfg.command == "duality") r = cmd_duality(ctx);
    else if (cfg.command == "trcheck") r = cmd_trcheck(ctx);
    else if (cfg.command == "dudasmalle") r = cmd_dudasmalle(ctx);
    render(r, cfg.format, out);
    if (!r.ok) {
      err << "dlcat: identity violation: " << r.failure << "\n";
      return kExitIdentity;
    }
    return kExitOk;
  } catch (const IdentityViolation& e) {
    err << "dlcat: identity violation: " << e.what() << "\n";
    return kExitIdentity;
  } catch (const GatedFeatureError& e) {
    err << "dlcat: " << e.what() << "\n";
    return kExitGated;
  } catch (const Error& e) {
    err << "dlcat: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "dlcat: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dlcat
