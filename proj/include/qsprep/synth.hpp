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

#ifndef QSPREP_SYNTH_HPP_
#define QSPREP_SYNTH_HPP_

#include <span>
#include <vector>

#include "qsprep/circuit.hpp"
#include "qsprep/limtdd.hpp"

namespace qsprep {

// Which ancilla strategy a synthesis run uses.
enum class AncillaMode { kNone, kOne, kFull, kBudget };

// Unitary sending (w0, w1) with w1/w0 = c to (sqrt(|w0|^2+|w1|^2), 0),
// up to the common scale: (1/sqrt(1+|c|^2)) * [[1, conj(c)], [-c, 1]].
Mat2 rotation_from_ratio(Complex c);

// Single-qubit gates that cancel every non-identity factor of the root
// label, top factor first.  The scalar part is global phase and is left
// alone.
std::vector<Gate> eliminate_root_lim(const LimTdd& dd);

// Disentanglers: each returns a circuit D with D|v> = ||v|| * |0...0>
// up to global phase, where |v> is the diagram's state.  Ancilla wires,
// if any, start and end in their initial basis states.
//
// No ancilla; multi-controlled gates up to arity n.
Circuit state_pre_1(const LimTdd& dd);
// One ancilla flag wire tracking the current path; rotations and
// eliminations see at most the flag plus two data qubits, while the
// flag toggles carry one control per branch level above them.
Circuit state_pre_2(const LimTdd& dd);
// One ancilla per non-terminal node; every gate has arity <= 3.
Circuit state_pre_3(const LimTdd& dd);
// Fixed ancilla budget m >= 1.  m == 1 matches state_pre_2 exactly;
// m >= 2 reserves one roaming wire and spends the rest on nodes in
// breadth-first discovery order, falling back to the one-ancilla scheme
// below unallocated children.
Circuit state_pre_4(const LimTdd& dd, int m);

// End-to-end preparation: normalize, build the diagram, disentangle,
// and return the inverse circuit, which maps |0...0> (ancillas at their
// declared initial values) to the input state up to global phase.
Circuit prepare_state(std::span<const Complex> amps,
                      AncillaMode mode,
                      int budget = 0,
                      GroupKind group = GroupKind::Xp);

// Reference preparation via uniformly controlled rotations on the raw
// vector: one fully controlled block per amplitude pair, collapsed to a
// single uncontrolled gate only when a whole level agrees.  Emits
// exactly 2^n - 1 controlled blocks on states with no such collapse.
Circuit baseline_ucr(std::span<const Complex> amps);

}  // namespace qsprep

#endif  // QSPREP_SYNTH_HPP_
