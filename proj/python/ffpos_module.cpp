// Python bindings for the core operations: fields, matrices, Paley graphs,
// preserver classification and the verification suites.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "ffpos/numtheory.hpp"
#include "ffpos/suites.hpp"

namespace py = pybind11;
using namespace ffpos;

namespace {

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

py::int_ big_int(BigCount v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(big_to_string(v).c_str(), nullptr, 10));
}

SymMatrix matrix_from_rows(const FieldSpec& f, const std::vector<std::vector<Elem>>& rows) {
  std::uint32_t n = static_cast<std::uint32_t>(rows.size());
  std::vector<Elem> flat;
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(Errc::BadInput, "matrix rows must form a square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return SymMatrix::from_full(f, n, flat);
}

py::object cholesky_py(const SymMatrix& A) {
  auto L = cholesky(A);
  if (!L) return py::none();
  py::list rows;
  for (std::uint32_t i = 0; i < A.n(); ++i) {
    py::list row;
    for (std::uint32_t j = 0; j < A.n(); ++j) row.append(L->at(i, j));
    rows.append(row);
  }
  return rows;
}

FnTable table_of(const FieldSpec& f, std::vector<Elem> values) {
  if (values.size() != f.q()) throw Error(Errc::BadInput, "table must have q entries");
  for (Elem v : values)
    if (v >= f.q()) throw Error(Errc::BadInput, "table value out of range");
  return FnTable{&f, std::move(values)};
}

}  // namespace

PYBIND11_MODULE(ffpos, m) {
  m.doc() = "positive definite matrices over finite fields and their entrywise preservers";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError,
                      (std::string(errc_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<FieldSpec, std::shared_ptr<FieldSpec>>(m, "Field")
      .def(py::init([](std::uint32_t p, std::uint32_t k) {
             return std::make_shared<FieldSpec>(field_new(p, k));
           }),
           py::arg("p"), py::arg("k") = 1)
      .def_property_readonly("p", &FieldSpec::p)
      .def_property_readonly("k", &FieldSpec::k)
      .def_property_readonly("q", &FieldSpec::q)
      .def_property_readonly("modulus", &FieldSpec::modulus)
      .def_property_readonly("generator", &FieldSpec::generator)
      .def("add", &FieldSpec::add)
      .def("sub", &FieldSpec::sub)
      .def("neg", &FieldSpec::neg)
      .def("mul", &FieldSpec::mul)
      .def("div", &FieldSpec::div)
      .def("inv", &FieldSpec::inv)
      .def("pow", &FieldSpec::pow)
      .def("eta", [](const FieldSpec& f, Elem x) { return sign_int(f.eta(x)); })
      .def("is_positive", &FieldSpec::is_positive)
      .def("positives", [](const FieldSpec& f) { return f.positives(); })
      .def("sqrt_positive", &FieldSpec::sqrt_positive)
      .def("frobenius", &FieldSpec::frobenius)
      .def("subfield_elements", &FieldSpec::subfield_elements)
      .def("__repr__", [](const FieldSpec& f) {
        return "Field(p=" + std::to_string(f.p()) + ", k=" + std::to_string(f.k()) + ")";
      });

  // matrices keep a reference to their field; the bindings pin the owning
  // Field object on every path that hands a matrix back to python
  py::class_<SymMatrix>(m, "SymMatrix", py::dynamic_attr())
      .def(py::init(&matrix_from_rows), py::keep_alive<1, 2>(), py::arg("field"),
           py::arg("rows"))
      .def_property_readonly("n", &SymMatrix::n)
      .def_property_readonly("entries", &SymMatrix::full)
      .def("at", &SymMatrix::at)
      .def("leading_minors", [](const SymMatrix& A) { return leading_minors(A); })
      .def("is_positive_definite", [](const SymMatrix& A) { return is_positive_definite(A); })
      .def("cholesky", &cholesky_py)
      .def("quad_form_range", [](const SymMatrix& A) { return quad_form_range(A); })
      .def("apply_entrywise",
           [](const SymMatrix& A, const std::vector<Elem>& table) {
             return apply_entrywise(table, A);
           },
           py::keep_alive<0, 1>());

  m.def(
      "enumerate_pd",
      [](py::object field_obj, std::uint32_t n) {
        const auto& f = field_obj.cast<const FieldSpec&>();
        py::list out;
        for (auto& A : enumerate_pd(f, n)) {
          py::object mat = py::cast(std::move(A));
          mat.attr("_field") = field_obj;
          out.append(mat);
        }
        return out;
      },
      py::arg("field"), py::arg("n"));

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("directed", &Graph::directed)
      .def_property_readonly("labels", &Graph::labels)
      .def("adjacent", &Graph::adjacent)
      .def("degree", &Graph::degree)
      .def("to_dot", [](const Graph& g) { return to_dot(g); });

  m.def("paley_graph", [](const FieldSpec& f) { return paley_graph(f); });
  m.def("gamma_subgraph", [](const FieldSpec& f) { return gamma_subgraph(f); });
  m.def("srg_params", [](const Graph& g) {
    auto s = srg_params(g);
    return py::make_tuple(s.v, s.k, s.lambda, s.mu);
  });
  m.def("graph_automorphisms",
        [](const Graph& g, std::uint32_t max_vertices) {
          return graph_automorphisms(g, max_vertices);
        },
        py::arg("graph"), py::arg("max_vertices") = 16);
  m.def("max_cliques", [](const Graph& g) { return max_cliques(g); });
  m.def("neighborhood_count", [](const Graph& g, Elem u, const std::vector<Elem>& target) {
    return neighborhood_count(g, u, target);
  });
  m.def("square_cosets", [](const FieldSpec& f) {
    auto fam = square_cosets(f);
    return py::make_tuple(fam.r, fam.representatives, fam.cosets);
  });
  m.def("oval_set", [](const FieldSpec& f) {
    auto [set, kind] = oval_set(f);
    return py::make_tuple(set, kind == OvalKind::Clique ? "clique" : "independent");
  });
  m.def("triple_count", [](const FieldSpec& f, Elem a, Elem b, Elem c) {
    return triple_count(f, a, b, c);
  });
  m.def("translate_intersection",
        [](const FieldSpec& f, Elem a) { return translate_intersection(f, a); });
  m.def("same_subfield_neighborhood_pairs",
        [](const FieldSpec& f) { return same_subfield_neighborhood_pairs(f); });

  m.def("interpolate", [](const FieldSpec& f, std::vector<Elem> values) {
    return interpolate(table_of(f, std::move(values)));
  });
  m.def(
      "is_preserver",
      [](const FieldSpec& f, std::vector<Elem> values, std::uint32_t n) {
        auto r = is_preserver(table_of(f, std::move(values)), n);
        return py::make_tuple(r.ok,
                              r.witness ? py::cast(r.witness->full()) : py::object(py::none()));
      },
      py::arg("field"), py::arg("table"), py::arg("n") = 2);
  m.def(
      "is_sign_preserver",
      [](const FieldSpec& f, std::vector<Elem> values, std::uint32_t n) {
        auto r = is_sign_preserver(table_of(f, std::move(values)), n);
        return py::make_tuple(r.ok,
                              r.witness ? py::cast(r.witness->full()) : py::object(py::none()));
      },
      py::arg("field"), py::arg("table"), py::arg("n") = 2);
  m.def("recognize_form", [](const FieldSpec& f, std::vector<Elem> values) {
    return json_to_py(form_to_json(recognize_form(table_of(f, std::move(values)))));
  });
  m.def("carlitz_predicate", [](const FieldSpec& f, std::vector<Elem> values) {
    return carlitz_predicate(table_of(f, std::move(values)));
  });
  m.def("carlitz_normalized_solutions", [](const FieldSpec& f) {
    std::vector<std::vector<Elem>> out;
    for (const auto& s : carlitz_normalized_solutions(f)) out.push_back(s.values);
    return out;
  });
  m.def("count_dim1_preservers",
        [](const FieldSpec& f) { return big_int(count_dim1_preservers(f)); });
  m.def("monomial_preserver_test", [](const FieldSpec& f, std::uint32_t n_exp) {
    return monomial_preserver_test(f, n_exp);
  });
  m.def(
      "classify",
      [](const FieldSpec& f, std::uint32_t n, const std::string& mode, bool prune,
         std::uint32_t jobs) {
        ClassifyOptions options;
        options.prune = prune;
        options.jobs = jobs;
        auto r = classify(
            f, n, mode == "sign" ? ClassifyMode::SignPreserver : ClassifyMode::Preserver,
            options);
        return json_to_py(classification_to_json(r));
      },
      py::arg("field"), py::arg("n") = 2, py::arg("mode") = "preserver",
      py::arg("prune") = true, py::arg("jobs") = 1);

  m.def("lucas_binom", &lucas_binom);
  m.def("binom_mod_direct", &binom_mod_direct);
  m.def("construct_r", &construct_r);
  m.def("reduced_exponent", &reduced_exponent);
  m.def("key_lemma_test", [](const FieldSpec& f, std::uint32_t n) {
    return key_lemma_test(f, n);
  });
  m.def("weil_triple_scan", [](const FieldSpec& f) { return weil_triple_scan(f); });

  m.def("suite_registry", [] {
    py::list out;
    for (const auto& d : suite_registry())
      out.append(py::dict(py::arg("id") = d.id, py::arg("summary") = d.summary,
                          py::arg("criterion") = d.criterion));
    return out;
  });
  m.def(
      "run_suite",
      [](const std::string& id, const std::string& golden_dir, std::uint32_t jobs) {
        SuiteOptions options;
        options.golden_dir = golden_dir;
        options.jobs = jobs;
        return json_to_py(run_suite(id, options).to_json());
      },
      py::arg("id"), py::arg("golden_dir") = "", py::arg("jobs") = 1);
}
