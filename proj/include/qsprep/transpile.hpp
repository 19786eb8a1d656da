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

#include "qsprep/circuit.hpp"

namespace qsprep {

// Angles of U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ZyzAngles {
  double alpha, beta, gamma, delta;
};

ZyzAngles zyz_decompose(const Mat2& u);

// V with V*V = u (unitary square root via the axis-angle form).
Mat2 mat_sqrt(const Mat2& u);

// Rewrites every gate into CX and single-qubit gates, exactly (global phase
// included): negative controls via X conjugation, one control via the
// phase + ABC identity, two controls via the T-network (X) or the
// square-root lemma, more controls via borrowed-wire ladders and, when no
// idle wire exists, the square-root recursion. Register untouched.
Circuit transpile(const Circuit& cir);

// True when only positively-controlled X (arity 2) and single-qubit gates
// remain.
bool is_transpiled(const Circuit& cir);

}  // namespace qsprep
