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

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qsprep/numeric.hpp"

namespace qsprep {

// 2x2 row-major matrix [m00, m01, m10, m11].
using Mat2 = std::array<Complex, 4>;

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_adjoint(const Mat2& m);
bool mat_is_unitary(const Mat2& m, double tol = kUnitaryTol);
bool mat_approx_equal(const Mat2& a, const Mat2& b, double tol = kMergeTol);

// One control literal: gate fires when `qubit` reads `value` (0 or 1).
struct ControlTerm {
  int qubit;
  int value;
  bool operator==(const ControlTerm&) const = default;
};

// Single-qubit unitary with any number of control literals. The matrix is
// authoritative; the label names it for humans and serialization.
struct Gate {
  std::string label;
  Mat2 matrix;
  std::vector<ControlTerm> controls;  // kept sorted by qubit, qubits distinct
  int target = 0;

  int arity() const { return 1 + static_cast<int>(controls.size()); }
  Gate adjoint() const;
  bool operator==(const Gate&) const = default;
};

// Named constructors. Controlled variants are built by filling `controls`.
Gate gate_x(int target);
Gate gate_z(int target);
Gate gate_s(int target);
Gate gate_sdg(int target);
Gate gate_t(int target);
Gate gate_h(int target);
Gate gate_phase(double theta, int target);  // diag(1, e^{i theta})
Gate gate_unitary(std::string label, const Mat2& m, int target);

// Main register is qubits 0..num_main-1; ancillas follow at num_main..
// num_main+num_ancilla-1. ancilla_init holds one bit per ancilla.
struct Circuit {
  int num_main = 0;
  int num_ancilla = 0;
  std::vector<int> ancilla_init;
  std::vector<Gate> gates;

  int width() const { return num_main + num_ancilla; }
  int ancilla_qubit(int i) const { return num_main + i; }
  // Validates ranges, control distinctness, unitarity; throws otherwise.
  void append(Gate g, std::span<const ControlTerm> extra_controls = {});
};

// Copy of `cir` with `extra` added to every gate's controls. Extra qubits
// must not collide with any gate target; duplicate literals merge, and a
// contradictory literal is an error.
Circuit with_extra_control(const Circuit& cir,
                           std::span<const ControlTerm> extra);

// Reversed gate order with per-gate adjoint matrices; controls unchanged.
Circuit inverse(const Circuit& cir);

struct GateCounts {
  std::map<int, size_t> by_arity;  // arity (controls + 1) -> count
  size_t depth = 0;                // longest chain under qubit overlap
  size_t total = 0;
  size_t multi_qubit() const;
  size_t single_qubit() const;
};

GateCounts counts(const Circuit& cir);

}  // namespace qsprep
