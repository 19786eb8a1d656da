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
#include <cstdint>
#include <string>
#include <vector>

#include "qsprep/numeric.hpp"

namespace qsprep {

// Which single-qubit operators edge labels may carry per factor.
//   ScalarOnly: identity factors only (plain weighted decision diagram).
//   Pauli:      X^b with phases in {0, pi} (X, Z, XZ up to scalar).
//   Xp:         X^b * P(theta), theta in (-pi, pi].
enum class GroupKind { ScalarOnly, Pauli, Xp };

std::string to_string(GroupKind g);

// One local factor X^b * P(theta), P(theta) = diag(1, e^{i theta}).
// Always unitary. Identity is {x=0, theta=0}.
struct LimFactor {
  uint8_t x = 0;
  double theta = 0.0;

  bool is_identity() const { return x == 0 && theta == 0.0; }
  std::array<Complex, 4> matrix() const;  // row-major [00, 01, 10, 11]
  bool operator==(const LimFactor&) const = default;
};

// (scalar, factor) pairs: factor products and adjoints stay in X^b P(theta)
// form up to a collected phase.
struct ScaledFactor {
  Complex scalar;
  LimFactor factor;
};

// (f1 * f2) = scalar * X^b P(theta).
ScaledFactor factor_product(const LimFactor& f1, const LimFactor& f2);
// Adjoint (= inverse, factors are unitary).
ScaledFactor factor_adjoint(const LimFactor& f);

bool factor_in_group(const LimFactor& f, GroupKind g, double tol = kMergeTol);

// Local invertible map: lambda * F_{k-1} (x) ... (x) F_0 acting on a k-qubit
// vector; factors[i] acts on qubit i. The zero LIM (scalar 0, no factors)
// labels zero edges only.
struct Lim {
  Complex scalar{1.0, 0.0};
  std::vector<LimFactor> factors;

  static Lim identity(size_t num_factors) {
    Lim l;
    l.factors.assign(num_factors, LimFactor{});
    return l;
  }
  static Lim zero() { return Lim{Complex(0.0, 0.0), {}}; }

  bool is_zero() const { return scalar == Complex(0.0, 0.0); }
  bool has_identity_factors() const;
  bool is_identity() const {
    return scalar == Complex(1.0, 0.0) && has_identity_factors();
  }
  size_t size() const { return factors.size(); }

  // this * other, factorwise; both operands must have equal length.
  Lim times(const Lim& other) const;
  // Adjoint = inverse of the operator part, scalar inverted too.
  Lim inverse() const;
  // Same factors, one more identity factor on top (position size()).
  Lim lifted() const;

  // Apply to a dense 2^size() vector (reference evaluation, small sizes).
  std::vector<Complex> apply(const std::vector<Complex>& v) const;

  bool operator==(const Lim&) const = default;
  std::string to_string() const;
};

uint64_t hash_value(const Lim& l);

}  // namespace qsprep
