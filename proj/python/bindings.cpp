// Copyright 2026 The Diagraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "diagraph/agreement.hpp"
#include "diagraph/error.hpp"
#include "diagraph/features.hpp"
#include "diagraph/ingest.hpp"
#include "diagraph/mace.hpp"
#include "diagraph/sampling.hpp"
#include "diagraph/validate.hpp"

namespace py = pybind11;
using namespace diagraph;

namespace {

py::dict kappa_dict(const KappaResult& r) {
  py::dict d;
  d["defined"] = r.defined;
  d["kappa"] = r.kappa;
  d["z"] = r.z;
  d["p"] = r.p;
  d["observed"] = r.observed;
  d["expected"] = r.expected;
  return d;
}

AnnotationMatrix matrix_from(const std::vector<std::vector<int>>& labels,
                             std::vector<std::string> categories) {
  int k = 0;
  for (const auto& row : labels)
    for (int v : row) k = std::max(k, v + 1);
  if (categories.empty())
    for (int j = 0; j < std::max(k, 2); ++j) categories.push_back("c" + std::to_string(j));
  std::vector<std::string> annotators;
  if (!labels.empty())
    for (std::size_t a = 0; a < labels[0].size(); ++a)
      annotators.push_back("a" + std::to_string(a));
  return AnnotationMatrix(std::move(categories), std::move(annotators), labels);
}

py::list findings_list(const ValidationReport& report) {
  py::list out;
  for (const auto& f : report.findings) {
    py::dict d;
    d["severity"] = std::string(severity_name(f.severity));
    d["layer"] = std::string(layer_name(f.layer));
    d["code"] = f.code;
    d["path"] = f.path;
    d["message"] = f.message;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_diagraph, m) {
  m.doc() = "Native core of the diagraph annotation toolkit.";

  static py::exception<Error> error_type(m, "DiagraphError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string code(e.code_name());
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = code;
      if (auto* sv = dynamic_cast<const SchemaViolation*>(&e)) {
        exc.attr("schema_code") = sv->schema_code();
        exc.attr("path") = sv->path();
      }
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<LayoutSegmentation>(m, "Layout")
      .def_readonly("diagram_id", &LayoutSegmentation::diagram_id)
      .def_property_readonly("element_ids", [](const LayoutSegmentation& l) {
        std::vector<std::string> ids;
        for (const auto& e : l.elements) ids.push_back(e.id.str());
        return ids;
      });

  py::class_<Diagram>(m, "Diagram")
      .def_readonly("diagram_id", &Diagram::diagram_id)
      .def_readonly("layout", &Diagram::layout)
      .def("serialize", [](const Diagram& d) { return serialize(d); })
      .def("validate", [](const Diagram& d) { return findings_list(validate_diagram(d)); })
      .def("features", [](const Diagram& d) {
        return extract_features(d, FeatureSchema()).raw;
      });

  m.def("parse_layout", [](const std::string& bytes) { return parse_ai2d(bytes); },
        py::arg("text"));
  m.def("parse_annotation",
        [](const std::string& bytes, const LayoutSegmentation& layout, bool check) {
          return check ? parse_ai2drst(bytes, layout)
                       : parse_ai2drst_unchecked(bytes, layout);
        },
        py::arg("text"), py::arg("layout"), py::arg("check") = true);
  m.def("skeleton", &skeleton_diagram, py::arg("layout"));

  m.def("feature_dimensions", [] { return FeatureSchema().dimensions(); });
  m.def("zscore", &zscore_normalize, py::arg("rows"));
  m.def("pca", [](const Matrix& rows) {
    const Projection p = project_pca(rows);
    py::dict d;
    d["coords"] = p.coords;
    d["components"] = p.components;
    d["mean"] = p.mean;
    d["eigenvalues"] = p.eigenvalues;
    return d;
  }, py::arg("rows"));

  m.def("fleiss_kappa",
        [](const std::vector<std::vector<int>>& labels, std::vector<std::string> cats) {
          return kappa_dict(fleiss_kappa(matrix_from(labels, std::move(cats))));
        },
        py::arg("labels"), py::arg("categories") = std::vector<std::string>{});
  m.def("randolph_kappa",
        [](const std::vector<std::vector<int>>& labels, std::vector<std::string> cats) {
          return kappa_dict(randolph_kappa(matrix_from(labels, std::move(cats))));
        },
        py::arg("labels"), py::arg("categories") = std::vector<std::string>{});
  m.def("classwise_kappa",
        [](const std::vector<std::vector<int>>& labels, std::vector<std::string> cats) {
          py::dict out;
          for (const auto& c : classwise_kappa(matrix_from(labels, std::move(cats)))) {
            py::dict d;
            d["defined"] = c.defined;
            d["kappa"] = c.kappa;
            d["z"] = c.z;
            d["p"] = c.p;
            out[py::str(c.category)] = d;
          }
          return out;
        },
        py::arg("labels"), py::arg("categories") = std::vector<std::string>{});

  m.def("mace",
        [](const std::vector<std::vector<int>>& labels, int restarts, int iterations,
           std::optional<std::uint64_t> seed, std::vector<std::string> cats) {
          MaceConfig cfg;
          cfg.restarts = restarts;
          cfg.iterations = iterations;
          cfg.seed = seed;
          const MaceResult r = mace(matrix_from(labels, std::move(cats)), cfg);
          py::dict d;
          d["competence"] = r.competence;
          d["posteriors"] = r.posteriors;
          d["predicted"] = r.predicted;
          d["traces"] = r.traces;
          d["log_likelihood"] = r.log_likelihood;
          d["best_restart"] = r.best_restart;
          return d;
        },
        py::arg("labels"), py::arg("restarts") = 10, py::arg("iterations") = 50,
        py::arg("seed") = std::nullopt,
        py::arg("categories") = std::vector<std::string>{});

  m.def("sample_size", &sample_size, py::arg("population"), py::arg("fraction"));
}
