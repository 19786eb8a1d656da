// Copyright 2026 The qsprep developers
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

#include "qsprep/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "qsprep/transpile.hpp"

namespace qsprep {

namespace {

using nlohmann::json;

// Dense expansion cap: 2^26 amplitudes is 1 GiB of doubles, anything above
// cannot be materialized for diagram construction anyway.
constexpr int kMaxDenseQubits = 26;

json must_parse(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw FormatError("not valid JSON");
  return j;
}

Complex complex_field(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    throw FormatError(std::string(what) + " must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw FormatError(std::string("missing integer field \"") + key + "\"");
  return j[key].get<int>();
}

std::string qubit_name(const Circuit& cir, int q) {
  char buf[32];
  if (q < cir.num_main)
    std::snprintf(buf, sizeof buf, "q[%d]", q);
  else
    std::snprintf(buf, sizeof buf, "anc[%d]", q - cir.num_main);
  return buf;
}

std::string angle_str(double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

std::string emit_json(const Circuit& cir) {
  json j;
  j["n"] = cir.num_main;
  j["ancillas"] = cir.num_ancilla;
  j["ancilla_init"] = cir.ancilla_init;
  json gates = json::array();
  for (const Gate& g : cir.gates) {
    json controls = json::array();
    for (const ControlTerm& c : g.controls)
      controls.push_back(json::array({c.qubit, c.value}));
    gates.push_back(json{
        {"label", g.label},
        {"matrix",
         json::array({json::array({json::array({g.matrix[0].real(),
                                                g.matrix[0].imag()}),
                                   json::array({g.matrix[1].real(),
                                                g.matrix[1].imag()})}),
                      json::array({json::array({g.matrix[2].real(),
                                                g.matrix[2].imag()}),
                                   json::array({g.matrix[3].real(),
                                                g.matrix[3].imag()})})})},
        {"controls", controls},
        {"target", g.target},
    });
  }
  j["gates"] = std::move(gates);
  return j.dump(2);
}

std::string emit_qasm(const Circuit& cir) {
  if (!is_transpiled(cir))
    throw DomainError("qasm output requires a transpiled circuit");
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  if (cir.num_main > 0) os << "qreg q[" << cir.num_main << "];\n";
  if (cir.num_ancilla > 0) os << "qreg anc[" << cir.num_ancilla << "];\n";
  for (int i = 0; i < cir.num_ancilla; ++i)
    if (cir.ancilla_init[i])
      os << "u(pi,0,pi) anc[" << i << "];\n";
  for (const Gate& g : cir.gates) {
    if (g.controls.empty()) {
      const ZyzAngles a = zyz_decompose(g.matrix);
      os << "u(" << angle_str(a.gamma) << "," << angle_str(a.beta) << ","
         << angle_str(a.delta) << ") " << qubit_name(cir, g.target) << ";\n";
    } else {
      os << "cx " << qubit_name(cir, g.controls.front().qubit) << ","
         << qubit_name(cir, g.target) << ";\n";
    }
  }
  return os.str();
}

}  // namespace

StateVector parse_state(const std::string& text) {
  const json j = must_parse(text);
  if (!j.is_object()) throw FormatError("state file must be a JSON object");
  const int n = int_field(j, "num_qubits");
  if (n < 0) throw FormatError("num_qubits must be non-negative");
  if (n > kMaxDenseQubits)
    throw FormatError("state too large to materialize densely");
  if (!j.contains("format") || !j["format"].is_string())
    throw FormatError("missing string field \"format\"");
  const std::string format = j["format"].get<std::string>();

  StateVector sv;
  sv.num_qubits = n;
  sv.amps.assign(size_t{1} << n, Complex(0, 0));

  if (format == "dense") {
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
      throw FormatError("dense state needs an \"amplitudes\" array");
    const json& amps = j["amplitudes"];
    if (amps.size() != sv.amps.size())
      throw FormatError("amplitude count does not match num_qubits");
    for (size_t k = 0; k < amps.size(); ++k)
      sv.amps[k] = complex_field(amps[k], "amplitude");
    return sv;
  }
  if (format == "sparse") {
    if (!j.contains("entries") || !j["entries"].is_array())
      throw FormatError("sparse state needs an \"entries\" array");
    std::unordered_set<uint64_t> seen;
    for (const json& e : j["entries"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string())
        throw FormatError("sparse entry must be [\"bits\", [re, im]]");
      const std::string bits = e[0].get<std::string>();
      if (bits.size() != static_cast<size_t>(n))
        throw FormatError("bit string length does not match num_qubits");
      uint64_t index = 0;
      for (char c : bits) {
        if (c != '0' && c != '1')
          throw FormatError("bit string may contain only 0 and 1");
        index = index << 1 | uint64_t(c - '0');
      }
      if (!seen.insert(index).second)
        throw FormatError("duplicate sparse entry");
      sv.amps[index] = complex_field(e[1], "amplitude");
    }
    return sv;
  }
  throw FormatError("format must be \"dense\" or \"sparse\"");
}

std::string emit(const Circuit& cir, EmitFormat format) {
  return format == EmitFormat::kJson ? emit_json(cir) : emit_qasm(cir);
}

Circuit parse_circuit(const std::string& text) {
  const json j = must_parse(text);
  if (!j.is_object()) throw FormatError("circuit file must be a JSON object");
  Circuit cir;
  cir.num_main = int_field(j, "n");
  cir.num_ancilla = int_field(j, "ancillas");
  if (cir.num_main < 0 || cir.num_ancilla < 0)
    throw FormatError("register sizes must be non-negative");
  if (!j.contains("ancilla_init") || !j["ancilla_init"].is_array() ||
      j["ancilla_init"].size() != static_cast<size_t>(cir.num_ancilla))
    throw FormatError("ancilla_init must list one bit per ancilla");
  for (const json& b : j["ancilla_init"]) {
    if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
      throw FormatError("ancilla_init entries must be 0 or 1");
    cir.ancilla_init.push_back(b.get<int>());
  }
  if (!j.contains("gates") || !j["gates"].is_array())
    throw FormatError("missing \"gates\" array");
  for (const json& jg : j["gates"]) {
    if (!jg.is_object() || !jg.contains("label") || !jg["label"].is_string())
      throw FormatError("gate needs a string \"label\"");
    Gate g;
    g.label = jg["label"].get<std::string>();
    g.target = int_field(jg, "target");
    if (!jg.contains("matrix") || !jg["matrix"].is_array() ||
        jg["matrix"].size() != 2 || !jg["matrix"][0].is_array() ||
        !jg["matrix"][1].is_array() || jg["matrix"][0].size() != 2 ||
        jg["matrix"][1].size() != 2)
      throw FormatError("gate matrix must be 2x2");
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        g.matrix[r * 2 + c] =
            complex_field(jg["matrix"][r][c], "matrix entry");
    if (!jg.contains("controls") || !jg["controls"].is_array())
      throw FormatError("gate needs a \"controls\" array");
    for (const json& jc : jg["controls"]) {
      if (!jc.is_array() || jc.size() != 2 || !jc[0].is_number_integer() ||
          !jc[1].is_number_integer())
        throw FormatError("control must be a [qubit, value] pair");
      const int value = jc[1].get<int>();
      if (value != 0 && value != 1)
        throw FormatError("control values must be 0 or 1");
      g.controls.push_back(ControlTerm{jc[0].get<int>(), value});
    }
    try {
      cir.append(g);
    } catch (const std::exception& e) {
      throw FormatError(std::string("invalid gate: ") + e.what());
    }
  }
  return cir;
}

std::string emit_dot(const LimTdd& dd) {
  std::ostringstream os;
  os << "digraph limtdd {\n  rankdir=TB;\n"
     << "  t [shape=box, label=\"1\"];\n";
  std::vector<uint32_t> stack{dd.root().target};
  std::unordered_set<uint32_t> seen{LimTdd::kTerminal};
  std::vector<uint32_t> order;
  if (dd.root().target != LimTdd::kTerminal) {
    seen.insert(dd.root().target);
    while (!stack.empty()) {
      const uint32_t id = stack.back();
      stack.pop_back();
      if (id == LimTdd::kTerminal) continue;
      order.push_back(id);
      const Node& v = dd.node(id);
      for (const Edge* e : {&v.low, &v.high})
        if (!e->is_zero() && seen.insert(e->target).second)
          stack.push_back(e->target);
    }
  }
  for (uint32_t id : order)
    os << "  n" << id << " [shape=circle, label=\"q" << dd.node(id).level
       << "\"];\n";
  os << "  root [shape=none, label=\"\"];\n";
  const auto name = [](uint32_t id) {
    return id == LimTdd::kTerminal ? std::string("t")
                                   : "n" + std::to_string(id);
  };
  os << "  root -> " << name(dd.root().target) << " [label=\""
     << dd.root().weight.to_string() << "\"];\n";
  for (uint32_t id : order) {
    const Node& v = dd.node(id);
    if (!v.low.is_zero())
      os << "  n" << id << " -> " << name(v.low.target)
         << " [style=dotted, color=red, label=\""
         << v.low.weight.to_string() << "\"];\n";
    if (!v.high.is_zero())
      os << "  n" << id << " -> " << name(v.high.target)
         << " [style=solid, color=blue, label=\""
         << v.high.weight.to_string() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace qsprep
