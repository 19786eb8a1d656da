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

#ifndef QSPREP_TESTS_SPARSE_SIM_HPP_
#define QSPREP_TESTS_SPARSE_SIM_HPP_

// Map-based reference simulator, written independently of the dense one so
// the two can cross-check each other. Amplitudes below kSparseCut are
// dropped; the circuits under test keep their support near 2^num_main
// because ancilla wires only ever see X gates conditioned on basis values.

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>

#include "qsprep/circuit.hpp"

namespace qsprep_tests {

inline constexpr double kSparseCut = 1e-14;

using SparseVec = std::unordered_map<uint64_t, qsprep::Complex>;

inline SparseVec sparse_from_dense(std::span<const qsprep::Complex> amps) {
  SparseVec v;
  for (uint64_t i = 0; i < amps.size(); ++i)
    if (std::abs(amps[i]) > kSparseCut) v.emplace(i, amps[i]);
  return v;
}

inline uint64_t ancilla_bits(const qsprep::Circuit& cir) {
  uint64_t bits = 0;
  for (int i = 0; i < cir.num_ancilla; ++i)
    if (cir.ancilla_init[i]) bits |= uint64_t{1} << (cir.num_main + i);
  return bits;
}

// Runs the circuit on |ancilla_init> (x) |init_main>.
inline SparseVec sparse_run(const qsprep::Circuit& cir,
                            const SparseVec& init_main) {
  const uint64_t seat = ancilla_bits(cir);
  SparseVec cur;
  for (const auto& [idx, a] : init_main) cur.emplace(idx | seat, a);
  for (const auto& g : cir.gates) {
    const uint64_t bit = uint64_t{1} << g.target;
    SparseVec next;
    next.reserve(cur.size() * 2);
    for (const auto& [idx, a] : cur) {
      bool on = true;
      for (const auto& c : g.controls)
        on = on && (((idx >> c.qubit) & 1) == static_cast<uint64_t>(c.value));
      if (!on) {
        next[idx] += a;
      } else if (idx & bit) {
        next[idx & ~bit] += g.matrix[1] * a;
        next[idx] += g.matrix[3] * a;
      } else {
        next[idx] += g.matrix[0] * a;
        next[idx | bit] += g.matrix[2] * a;
      }
    }
    cur.clear();
    for (const auto& [idx, a] : next)
      if (std::abs(a) > kSparseCut) cur.emplace(idx, a);
  }
  return cur;
}

// |<want|got>| over entries whose non-main bits equal `rest`; amplitude mass
// parked on other ancilla patterns simply lowers the overlap.
inline double sparse_overlap(const SparseVec& got,
                             std::span<const qsprep::Complex> want_main,
                             uint64_t rest) {
  qsprep::Complex acc = 0;
  for (uint64_t i = 0; i < want_main.size(); ++i) {
    auto it = got.find(i | rest);
    if (it != got.end()) acc += std::conj(want_main[i]) * it->second;
  }
  return std::abs(acc);
}

// Probability of one exact basis index.
inline double sparse_basis_prob(const SparseVec& got, uint64_t index) {
  auto it = got.find(index);
  return it == got.end() ? 0.0 : std::norm(it->second);
}

}  // namespace qsprep_tests

#endif  // QSPREP_TESTS_SPARSE_SIM_HPP_
