// Copyright 2026 The probtele Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "probtele/harness.hpp"
#include "probtele/netlist_io.hpp"
#include "probtele/protocol.hpp"
#include "probtele/random.hpp"

namespace py = pybind11;
using namespace probtele;

namespace {

QubitIndex qi(std::size_t q) { return QubitIndex(q); }

std::vector<QubitIndex> qis(const std::vector<std::size_t>& qs) {
  std::vector<QubitIndex> out;
  out.reserve(qs.size());
  for (std::size_t q : qs) out.emplace_back(q);
  return out;
}

std::vector<Complex> amps(const StateVector& sv) {
  return {sv.amplitudes().begin(), sv.amplitudes().end()};
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::Identity: return "I";
    case GateKind::PauliX: return "X";
    case GateKind::PauliZ: return "Z";
    case GateKind::Hadamard: return "H";
    case GateKind::RotationY: return "RY";
    case GateKind::General: break;
  }
  return "U";
}

py::dict record_dict(const OutcomeRecord& r) {
  py::dict d;
  d["m"] = r.outcome.m_string();
  d["n"] = r.outcome.n_string();
  d["ancilla"] = r.outcome.ancilla ? py::cast(*r.outcome.ancilla) : py::none();
  d["probability"] = r.probability;
  d["fidelity"] = r.fidelity;
  d["state"] = amps(r.bob_state);
  return d;
}

FactorOrder parse_order(const std::string& s) {
  if (s == "descending") return FactorOrder::Descending;
  if (s == "ascending") return FactorOrder::Ascending;
  throw std::invalid_argument("order must be 'descending' or 'ascending'");
}

std::string run_json(std::size_t n, std::optional<std::vector<double>> y,
                     std::optional<std::vector<Complex>> x, const std::string& mode,
                     std::uint64_t shots, std::uint64_t seed,
                     const std::string& un_path, bool include_states,
                     unsigned threads) {
  ExperimentConfig cfg;
  cfg.n = n;
  if (y) cfg.channel = ChannelSpec(n, *y);
  if (x) cfg.message = MessageSpec(n, *x);
  if (mode == "exact") {
    cfg.mode = Mode::Exact;
  } else if (mode == "sample") {
    cfg.mode = Mode::Sample;
  } else {
    throw ConfigError("mode", "must be exact or sample");
  }
  cfg.shots = shots;
  cfg.seed = seed;
  cfg.un_path = parse_un_path(un_path);
  cfg.include_states = include_states;
  cfg.threads = threads;
  py::gil_scoped_release release;
  return dump(run(cfg).to_json());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Probabilistic teleportation through non-maximally entangled channels";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NetlistParseError>(m, "NetlistParseError", PyExc_ValueError);

  py::class_<StateVector>(m, "StateVector")
      .def(py::init<std::size_t>(), py::arg("n_qubits"))
      .def(py::init<std::size_t, std::vector<Complex>>(), py::arg("n_qubits"),
           py::arg("amplitudes"))
      .def_property_readonly("n_qubits", &StateVector::n_qubits)
      .def_property_readonly("dimension", &StateVector::dimension)
      .def("amplitudes", &amps)
      .def("squared_norm", &StateVector::squared_norm)
      .def("normalized", &StateVector::normalized)
      .def("__len__", &StateVector::dimension)
      .def("__getitem__", [](const StateVector& sv, std::size_t i) {
        if (i >= sv.dimension()) throw py::index_error();
        return sv[i];
      })
      .def("__eq__", [](const StateVector& a, const StateVector& b) { return a == b; })
      .def("__repr__", [](const StateVector& sv) {
        return "<StateVector n_qubits=" + std::to_string(sv.n_qubits()) + ">";
      });

  m.def("basis_state", &basis_state, py::arg("n_qubits"), py::arg("index"));
  m.def("tensor", &tensor);
  m.def("apply_single", [](StateVector sv, const Gate2x2& g, std::size_t q) {
    return apply_single(std::move(sv), g, qi(q));
  }, py::arg("state"), py::arg("gate"), py::arg("target"));
  m.def("apply_cnot", [](StateVector sv, std::size_t c, std::size_t t) {
    return apply_cnot(std::move(sv), qi(c), qi(t));
  }, py::arg("state"), py::arg("control"), py::arg("target"));
  m.def("apply_multi_controlled", [](StateVector sv, const std::vector<std::size_t>& c,
                                     const Gate2x2& g, std::size_t t) {
    const auto controls = qis(c);
    return apply_multi_controlled(std::move(sv), controls, g, qi(t));
  }, py::arg("state"), py::arg("controls"), py::arg("gate"), py::arg("target"));
  m.def("split_on_qubit", [](const StateVector& sv, std::size_t q) {
    return split_on_qubit(sv, qi(q));
  }, py::arg("state"), py::arg("qubit"));
  m.def("measure_qubit", [](const StateVector& sv, std::size_t q, double r) {
    Measurement meas = measure_qubit(sv, qi(q), r);
    return py::make_tuple(meas.bit, meas.state, meas.probability);
  }, py::arg("state"), py::arg("qubit"), py::arg("rand01"));
  m.def("inner_product", &inner_product);
  m.def("fidelity", &fidelity);

  py::class_<Gate2x2>(m, "Gate")
      .def_static("from_matrix", &Gate2x2::from_matrix)
      .def_property_readonly("matrix", [](const Gate2x2& g) { return Matrix(g.matrix()); })
      .def_property_readonly("kind", [](const Gate2x2& g) { return kind_name(g.kind()); })
      .def_property_readonly("angle", &Gate2x2::angle)
      .def("adjoint", &Gate2x2::adjoint)
      .def("__eq__", [](const Gate2x2& a, const Gate2x2& b) { return a == b; });

  m.def("standard_gate", [](const std::string& name) { return standard_gate(name); });
  m.def("ry", &ry, py::arg("theta"));
  m.def("compensator", &compensator, py::arg("y0"), py::arg("yi"));
  m.def("compensator_angle", &compensator_angle, py::arg("y0"), py::arg("yi"));
  m.def("lambda_matrix", &lambda_matrix, py::arg("n_controls"), py::arg("gate"));

  py::class_<ChannelSpec>(m, "Channel")
      .def(py::init<std::size_t, std::vector<double>>(), py::arg("n"), py::arg("y"))
      .def_property_readonly("n", &ChannelSpec::n)
      .def_property_readonly("y", &ChannelSpec::y)
      .def_property_readonly("y0", &ChannelSpec::y0)
      .def("is_maximal", &ChannelSpec::is_maximal)
      .def("state", &prepare_channel_direct);

  py::class_<MessageSpec>(m, "Message")
      .def(py::init<std::size_t, std::vector<Complex>>(), py::arg("n"), py::arg("x"))
      .def_property_readonly("n", &MessageSpec::n)
      .def_property_readonly("x", &MessageSpec::x)
      .def("state", &MessageSpec::state);

  m.def("random_channel", [](std::size_t n, std::uint64_t seed) {
    Rng rng(derive_seed(seed, kChannelStream, 0));
    return random_channel(n, rng);
  }, py::arg("n"), py::arg("seed"));
  m.def("random_message", [](std::size_t n, std::uint64_t seed) {
    Rng rng(derive_seed(seed, kMessageStream, 0));
    return random_message(n, rng);
  }, py::arg("n"), py::arg("seed"));

  py::class_<Netlist>(m, "Netlist")
      .def_property_readonly("n_qubits", &Netlist::n_qubits)
      .def_property_readonly("labels", &Netlist::labels)
      .def("__len__", &Netlist::size)
      .def("matrix", &netlist_matrix)
      .def("simulate", &simulate)
      .def("to_text", &to_text)
      .def("census", [](const Netlist& nl) {
        const OpCensus c = census(nl);
        py::dict d;
        d["cnots"] = c.cnots;
        d["rotations"] = c.rotations;
        d["x_singles"] = c.x_singles;
        d["other_singles"] = c.other_singles;
        d["x_layers"] = c.x_layers;
        d["multi_controlled"] = c.multi_controlled;
        return d;
      })
      .def("__eq__", [](const Netlist& a, const Netlist& b) { return a == b; });

  m.def("parse_netlist", [](const std::string& text) { return parse_netlist(text); });
  m.def("build_un_matrix", &build_un_matrix);
  m.def("un_netlist", [](const ChannelSpec& ch, const std::string& order) {
    return un_netlist(ch, parse_order(order));
  }, py::arg("channel"), py::arg("order") = "descending");
  m.def("expand_u2_full", &expand_u2_full);
  m.def("prepare_channel_circuit", &prepare_channel_circuit);

  m.def("success_probability", &success_probability);
  m.def("enumerate_branches", [](const MessageSpec& msg, const ChannelSpec& ch,
                                 const std::string& path) {
    py::list out;
    for (const OutcomeRecord& r : enumerate_branches(msg, ch, parse_un_path(path))) {
      out.append(record_dict(r));
    }
    return out;
  }, py::arg("message"), py::arg("channel"), py::arg("un_path") = "matrix");
  m.def("sample_shot", [](const MessageSpec& msg, const ChannelSpec& ch,
                          std::uint64_t seed, std::uint64_t shot,
                          const std::string& path) {
    return record_dict(sample_shot(msg, ch, seed, shot, parse_un_path(path)));
  }, py::arg("message"), py::arg("channel"), py::arg("seed"), py::arg("shot_index"),
     py::arg("un_path") = "matrix");

  m.def("run_json", &run_json, py::arg("n"), py::arg("y") = py::none(),
        py::arg("x") = py::none(), py::arg("mode") = "exact", py::arg("shots") = 1000,
        py::arg("seed") = 0, py::arg("un_path") = "matrix",
        py::arg("include_states") = false, py::arg("threads") = 0);
  m.def("verify_json", [](std::size_t max_n, std::size_t trials, std::uint64_t seed) {
    py::gil_scoped_release release;
    return dump(run_verify(max_n, trials, seed).to_json());
  }, py::arg("max_n") = 4, py::arg("trials") = 10, py::arg("seed") = 0);
}
