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

#include "qsprep/simulator.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

namespace qsprep {

StateVector StateVector::zero_state(int n) {
  StateVector s;
  s.num_qubits = n;
  s.amps.assign(size_t{1} << n, Complex(0, 0));
  s.amps[0] = Complex(1, 0);
  return s;
}

StateVector StateVector::basis(const std::vector<int>& bits) {
  StateVector s;
  s.num_qubits = static_cast<int>(bits.size());
  s.amps.assign(size_t{1} << s.num_qubits, Complex(0, 0));
  size_t idx = 0;
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) idx |= size_t{1} << i;
  s.amps[idx] = Complex(1, 0);
  return s;
}

double StateVector::norm() const {
  double s = 0;
  for (const auto& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (n < 1e-12) throw std::domain_error("cannot normalize zero state");
  for (auto& a : amps) a /= n;
}

int verify_cap() {
  if (const char* env = std::getenv("QSP_VERIFY_CAP")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 24;
}

void apply_gate(StateVector& state, const Gate& g) {
  const int q = state.num_qubits;
  if (g.target >= q) throw std::out_of_range("target beyond state width");
  const size_t tmask = size_t{1} << g.target;

  // Bits that are free to enumerate: everything except target and controls.
  size_t fixed = tmask;
  size_t want = 0;
  for (const auto& c : g.controls) {
    if (c.qubit >= q) throw std::out_of_range("control beyond state width");
    fixed |= size_t{1} << c.qubit;
    if (c.value) want |= size_t{1} << c.qubit;
  }
  std::vector<int> free_bits;
  for (int b = 0; b < q; ++b)
    if (!(fixed & (size_t{1} << b))) free_bits.push_back(b);

  const Mat2& m = g.matrix;
  const size_t n_free = free_bits.size();
  for (size_t j = 0; j < (size_t{1} << n_free); ++j) {
    size_t i0 = want;
    for (size_t b = 0; b < n_free; ++b)
      if (j & (size_t{1} << b)) i0 |= size_t{1} << free_bits[b];
    const size_t i1 = i0 | tmask;
    const Complex a = state.amps[i0], c = state.amps[i1];
    state.amps[i0] = m[0] * a + m[1] * c;
    state.amps[i1] = m[2] * a + m[3] * c;
  }
}

StateVector run(const Circuit& cir, const StateVector& init_main) {
  if (init_main.num_qubits != cir.num_main)
    throw std::invalid_argument("initial state width mismatch");
  if (cir.width() > verify_cap())
    throw std::domain_error("circuit wider than the dense verification cap");
  StateVector s;
  s.num_qubits = cir.width();
  s.amps.assign(size_t{1} << s.num_qubits, Complex(0, 0));
  size_t anc = 0;
  for (int i = 0; i < cir.num_ancilla; ++i)
    if (cir.ancilla_init[i]) anc |= size_t{1} << i;
  const size_t base = anc << cir.num_main;
  for (size_t i = 0; i < init_main.amps.size(); ++i)
    s.amps[base | i] = init_main.amps[i];
  for (const auto& g : cir.gates) apply_gate(s, g);
  return s;
}

double fidelity_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits)
    throw std::invalid_argument("fidelity: width mismatch");
  Complex ip(0, 0);
  for (size_t i = 0; i < a.amps.size(); ++i)
    ip += std::conj(a.amps[i]) * b.amps[i];
  return std::abs(ip);
}

StateVector random_clifford_t_state(int n, int depth, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one qubit");
  std::mt19937_64 gen(seed);
  auto draw = [&gen](uint64_t k) { return gen() % k; };  // small bias is fine
  StateVector s = StateVector::zero_state(n);
  for (int step = 0; step < depth; ++step) {
    const uint64_t kind = draw(4);
    if (kind == 3 && n >= 2) {
      const int c = static_cast<int>(draw(n));
      int t = static_cast<int>(draw(n - 1));
      if (t >= c) ++t;
      Gate g = gate_x(t);
      g.controls = {{c, 1}};
      apply_gate(s, g);
    } else {
      const int t = static_cast<int>(draw(n));
      if (kind == 0)
        apply_gate(s, gate_h(t));
      else if (kind == 1)
        apply_gate(s, gate_s(t));
      else
        apply_gate(s, gate_t(t));
    }
  }
  return s;
}

}  // namespace qsprep
