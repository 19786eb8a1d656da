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

#ifndef QSPREP_IO_HPP_
#define QSPREP_IO_HPP_

#include <string>

#include "qsprep/circuit.hpp"
#include "qsprep/limtdd.hpp"
#include "qsprep/simulator.hpp"

namespace qsprep {

// Parses a state-vector file. Dense form:
//   {"num_qubits": n, "format": "dense", "amplitudes": [[re, im], ...]}
// with index k meaning |b_{n-1}...b_0>. Sparse form replaces amplitudes with
//   "entries": [["0101", [re, im]], ...]
// using MSB-first bit strings; unspecified entries are zero. Amplitudes are
// returned as given (not normalized). Throws FormatError on malformed input
// or when the dense expansion would not fit in memory.
StateVector parse_state(const std::string& text);

enum class EmitFormat { kJson, kQasm };

// Renders a circuit. JSON round-trips losslessly through parse_circuit.
// QASM is OpenQASM 2 over registers q[n] / anc[a] using only u and cx, so
// the circuit must already be transpiled (DomainError otherwise); ancillas
// initialized to |1> get an explicit flip after the declarations.
std::string emit(const Circuit& cir, EmitFormat format);

// Inverse of emit(.., kJson). Gates are re-validated on the way in; any
// schema or unitarity violation throws FormatError.
Circuit parse_circuit(const std::string& text);

// Graphviz rendering: one box per node ranked by level, dotted low edges,
// solid high edges, every edge annotated with its label.
std::string emit_dot(const LimTdd& dd);

}  // namespace qsprep

#endif  // QSPREP_IO_HPP_
