/* Copyright 2026 The dlprover Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dlprover/arith.hpp"
#include "dlprover/model.hpp"
#include "dlprover/parser.hpp"
#include "dlprover/printer.hpp"
#include "dlprover/prooftree.hpp"
#include "dlprover/server.hpp"
#include "dlprover/tactics.hpp"

namespace py = pybind11;
using namespace dlp;
using nlohmann::json;

namespace {

json witness_json(const arith::Witness& w) {
    json out = json::object();
    for (const auto& [v, q] : w) out[v] = to_string(q);
    return out;
}

std::string decide(const std::string& sequent, double timeout) {
    arith::Options o;
    o.timeout_seconds = timeout;
    auto v = arith::qe_decide(parse_sequent(sequent), o);
    if (std::holds_alternative<arith::Valid>(v)) return json{{"result", "valid"}}.dump();
    if (const auto* inv = std::get_if<arith::Invalid>(&v))
        return json{{"result", "invalid"}, {"witness", witness_json(inv->witness)}}.dump();
    return json{{"result", "unsupported"}, {"reason", std::get<arith::Unsupported>(v).reason}}.dump();
}

std::string counterexample(const std::string& sequent, double timeout) {
    arith::Options o;
    o.timeout_seconds = timeout;
    auto r = arith::counterexample(parse_sequent(sequent), o);
    if (const auto* w = std::get_if<arith::Witness>(&r))
        return json{{"result", "witness"}, {"witness", witness_json(*w)}}.dump();
    if (const auto* u = std::get_if<arith::Unsupported>(&r))
        return json{{"result", "unsupported"}, {"reason", u->reason}}.dump();
    return json{{"result", "none"}}.dump();
}

std::string prove(const std::string& model_text, const std::string& tactic, bool automatic, double timeout) {
    Model m = parse_model(model_text);
    prooftree::ProofTree tree(m.problem);
    tactics::Options opts;
    opts.timeout_seconds = timeout;
    opts.qe_timeout_seconds = timeout;
    json errors = json::array();
    if (!tactic.empty()) {
        try {
            tree.record_step(0, tactics::parse_tactic(tactic), prooftree::Provenance::Tactic, false, opts);
        } catch (const tactics::TacticError& e) {
            errors.push_back(e.what());
        }
    }
    if (automatic) {
        for (auto leaf : tree.open_leaves()) {
            try {
                tree.record_step(leaf, tactics::Tactic::atom("auto"), prooftree::Provenance::Auto, false, opts);
            } catch (const tactics::TacticError&) {
            }
        }
    }
    json open = json::array();
    for (auto leaf : tree.open_leaves()) open.push_back(to_string(tree.node(leaf).sequent));
    return json{{"proved", tree.proved()},
                {"tactic", tactics::print_tactic(tree.extract_tactic())},
                {"open_goals", open},
                {"errors", errors},
                {"tree", tree.to_json()}}
        .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Differential dynamic logic prover";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
    py::register_exception<tactics::TacticParseError>(m, "TacticParseError", PyExc_ValueError);
    py::register_exception<tactics::TacticError>(m, "TacticError", PyExc_RuntimeError);

    m.def("normalize", [](const std::string& text) { return to_string(parse_formula(text)); }, py::arg("formula"),
          "Parses a formula and prints it in canonical form.");
    m.def("normalize_sequent", [](const std::string& text) { return to_string(parse_sequent(text)); },
          py::arg("sequent"));
    m.def("normalize_tactic", [](const std::string& text) { return tactics::print_tactic(tactics::parse_tactic(text)); },
          py::arg("tactic"));
    m.def("decide", &decide, py::arg("sequent"), py::arg("timeout") = 0.0,
          py::call_guard<py::gil_scoped_release>(), "QE verdict as JSON.");
    m.def("counterexample", &counterexample, py::arg("sequent"), py::arg("timeout") = 0.0,
          py::call_guard<py::gil_scoped_release>(), "Counterexample search result as JSON.");
    m.def("prove", &prove, py::arg("model"), py::arg("tactic") = "", py::arg("auto") = false,
          py::arg("timeout") = 0.0, py::call_guard<py::gil_scoped_release>(), "Proof attempt result as JSON.");

    py::class_<server::Service>(m, "Service")
        .def(py::init([](const std::string& data_dir, double qe_timeout) {
                 server::Config cfg;
                 cfg.data_dir = data_dir;
                 cfg.qe_timeout_seconds = qe_timeout;
                 return std::make_unique<server::Service>(cfg);
             }),
             py::arg("data_dir"), py::arg("qe_timeout") = 5.0)
        .def(
            "handle",
            [](server::Service& s, const std::string& method, const std::string& path,
               const std::map<std::string, std::string>& query, const std::string& body) {
                server::Response r;
                {
                    py::gil_scoped_release release;
                    r = s.handle(method, path, query, body);
                }
                return py::make_tuple(r.status, r.text.empty() ? r.body.dump() : r.text, !r.text.empty());
            },
            py::arg("method"), py::arg("path"), py::arg("query") = std::map<std::string, std::string>{},
            py::arg("body") = "", "Returns (status, payload, is_text).");
}
