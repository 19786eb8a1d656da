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

#pragma once

#include <cstdint>
#include <vector>

#include "qsprep/circuit.hpp"
#include "qsprep/numeric.hpp"

namespace qsprep {

// Dense statevector over num_qubits; amplitude index bit i = qubit i.
struct StateVector {
  int num_qubits = 0;
  std::vector<Complex> amps;

  static StateVector zero_state(int n);
  // Basis state with the given bit per qubit (bits.size() == n).
  static StateVector basis(const std::vector<int>& bits);

  double norm() const;
  void normalize();  // throws on (near-)zero vector
};

// Widest register the dense oracle will simulate. Defaults to 24 qubits;
// the QSP_VERIFY_CAP environment variable overrides.
int verify_cap();

// In-place 2x2 update over index pairs (i, i | 1<<target) whose control bits
// match. Iterates only matching indices.
void apply_gate(StateVector& state, const Gate& g);

// Runs the circuit on |ancilla_init> (x) |init_main>. init_main must have
// cir.num_main qubits; the result covers width() qubits. Throws if the width
// exceeds verify_cap().
StateVector run(const Circuit& cir, const StateVector& init_main);

// |<a|b>| for equally sized normalized states.
double fidelity_up_to_phase(const StateVector& a, const StateVector& b);

// State reached from |0...0> by `depth` gates drawn uniformly from
// {H, S, T, CX(distinct random pair)}. Deterministic for a fixed seed across
// standard libraries (hand-rolled modulo draws from mt19937_64).
StateVector random_clifford_t_state(int n, int depth, uint64_t seed);

}  // namespace qsprep
