#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dlcat/cli.hpp"
#include "dlcat/dlchar.hpp"
#include "dlcat/error.hpp"
#include "dlcat/monodromic.hpp"

namespace py = pybind11;
using namespace dlcat;

namespace {

py::dict laurent_dict(const Laurent& p) {
  py::dict d;
  for (const auto& [e, c] : p.terms()) d[py::int_(e)] = py::int_(py::str(c.get_str()));
  return d;
}

Laurent laurent_of(const py::dict& d) {
  Laurent::Terms t;
  for (const auto& [k, v] : d) t[k.cast<int>()] = BigInt(py::str(v).cast<std::string>());
  return Laurent::from_terms(t);
}

py::object json_object(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict hecke_dict(const HeckeElem& h) {
  py::dict d;
  for (const auto& [w, c] : h.coeffs()) d[py::str(h.group()->word_string(w))] = laurent_dict(c);
  return d;
}

struct Group {
  RootDatum datum;
  WeylGroupPtr W;
};

Group make_group(const std::string& preset) {
  Group g{make_preset(preset), nullptr};
  g.W = build_group(g.datum);
  return g;
}

Group group_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(e.what());
  }
  Group g{root_datum_from_json(j), nullptr};
  g.W = build_group(g.datum);
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Kazhdan-Lusztig, torus and Deligne-Lusztig character computations";

  auto base = py::register_exception<Error>(m, "DlcatError", PyExc_ValueError);
  py::register_exception<IdentityViolation>(m, "IdentityViolation", base.ptr());
  py::register_exception<GatedFeatureError>(m, "GatedFeatureError", base.ptr());
  py::register_exception<InvalidModulus>(m, "InvalidModulus", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());

  m.def("presets", &preset_names);

  py::class_<Group>(m, "Group")
      .def(py::init(&make_group), py::arg("preset"))
      .def_static("from_json", &group_from_json, py::arg("text"))
      .def_property_readonly("label", [](const Group& g) { return g.datum.label; })
      .def_property_readonly("rank", [](const Group& g) { return g.W->rank(); })
      .def("__len__", [](const Group& g) { return g.W->size(); })
      .def("elements", [](const Group& g) {
        std::vector<std::string> out;
        for (int w = 0; w < g.W->size(); ++w) out.push_back(g.W->word_string(w));
        return out;
      })
      .def("length", [](const Group& g, const std::string& w) { return g.W->length(g.W->parse_word(w)); })
      .def("normalize", [](const Group& g, const std::string& w) {
        return g.W->word_string(g.W->parse_word(w));
      })
      .def("bruhat_leq", [](const Group& g, const std::string& y, const std::string& w) {
        return g.W->bruhat_leq(g.W->parse_word(y), g.W->parse_word(w));
      })
      .def("longest", [](const Group& g) { return g.W->word_string(g.W->longest().index); });

  py::class_<KLTable>(m, "KLTable")
      .def("h", [](const KLTable& t, const std::string& y, const std::string& w) {
        const auto& W = *t.group();
        return laurent_dict(t.h(W.parse_word(y), W.parse_word(w)));
      })
      .def("h_tilde", [](const KLTable& t, const std::string& y, const std::string& w) {
        const auto& W = *t.group();
        return laurent_dict(t.h_tilde(W.parse_word(y), W.parse_word(w)));
      })
      .def("p_at_one", [](const KLTable& t, const std::string& y, const std::string& w) {
        const auto& W = *t.group();
        return py::int_(py::str(t.p_at_one(W.parse_word(y), W.parse_word(w)).get_str()));
      })
      .def("kl_basis", [](const KLTable& t, const std::string& w) {
        return hecke_dict(t.kl_basis(t.group()->parse_word(w)));
      })
      .def("kl_tilde", [](const KLTable& t, const std::string& w) {
        return hecke_dict(t.kl_tilde(t.group()->parse_word(w)));
      })
      .def("rows", [](const KLTable& t, const std::optional<std::string>& w) {
        return json_object(kl_table_to_json(t, w ? t.group()->parse_word(*w) : -1));
      }, py::arg("w") = py::none())
      .def("__eq__", [](const KLTable& a, const KLTable& b) { return a == b; });

  m.def("kl_table", [](const Group& g, const std::string& algorithm, int threads) {
    KLOptions opt;
    if (algorithm == "recursion") opt.algorithm = KLAlgorithm::Recursion;
    else if (algorithm == "bar-solve") opt.algorithm = KLAlgorithm::BarSolve;
    else throw UsageError("algorithm must be 'recursion' or 'bar-solve'");
    opt.threads = threads;
    py::gil_scoped_release release;
    return compute_kl_table(g.W, opt);
  }, py::arg("group"), py::arg("algorithm") = "recursion", py::arg("threads") = 1);

  m.def("fixed_torus", [](const Group& g, long q, const std::string& w) {
    auto fd = make_frobenius(g.W, q);
    auto t = fixed_torus(g.W->parse_word(w), fd);
    py::dict d;
    d["w"] = g.W->word_string(t.w);
    d["invariants"] = t.invariants;
    d["order"] = t.order;
    return d;
  }, py::arg("group"), py::arg("q"), py::arg("w"));

  m.def("brute_force_fixed_points", [](const Group& g, long q, const std::string& w) {
    return brute_force_fixed_points(g.W->parse_word(w), make_frobenius(g.W, q));
  }, py::arg("group"), py::arg("q"), py::arg("w"));

  m.def("series", [](const Group& g, long q, std::optional<long> prime_to) {
    auto fd = make_frobenius(g.W, q);
    return json_object(series_to_json(fd, geometric_classes(fd, 1, prime_to)));
  }, py::arg("group"), py::arg("q"), py::arg("prime_to") = py::none());

  m.def("monodromic_kl", [](const Group& g, long q, int class_id) {
    auto fd = make_frobenius(g.W, q);
    auto classes = geometric_classes(fd);
    if (class_id < 0 || class_id >= static_cast<int>(classes.size()))
      throw UsageError("class id out of range");
    return json_object(mono_kl_to_json(compute_mono_kl(block_basis(g.W, classes[class_id]))));
  }, py::arg("group"), py::arg("q"), py::arg("class_id"));

  m.def("duality_sign", [](const KLTable& t, const std::string& w) {
    return duality_check(t, t.group()->parse_word(w)).sign;
  }, py::arg("table"), py::arg("w"));

  m.def("trace_sign", [](const KLTable& t, const std::string& w) {
    CharTable ct = char_table(*t.group());
    return tr_identity_check(t, ct, t.group()->parse_word(w)).sign;
  }, py::arg("table"), py::arg("w"));

  m.def("certificate", [](const KLTable& t, long q, long ell, const std::string& w,
                          const std::string& sqrt_choice) {
    auto fd = make_frobenius(t.group(), q);
    return json_object(certificate_to_json(dudas_malle_certificate(
        t, fd, t.group()->parse_word(w), ell, NMatrix(t.group()), parse_sqrt_choice(sqrt_choice))));
  }, py::arg("table"), py::arg("q"), py::arg("l"), py::arg("w"), py::arg("sqrt") = "canonical");

  m.def("laurent_bar", [](const py::dict& p) { return laurent_dict(laurent_of(p).bar()); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
