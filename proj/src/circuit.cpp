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

#include "qsprep/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsprep {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat_adjoint(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

bool mat_is_unitary(const Mat2& m, double tol) {
  const Mat2 p = mat_mul(mat_adjoint(m), m);
  return approx_equal(p[0], Complex(1, 0), tol) && approx_zero(p[1], tol) &&
         approx_zero(p[2], tol) && approx_equal(p[3], Complex(1, 0), tol);
}

bool mat_approx_equal(const Mat2& a, const Mat2& b, double tol) {
  for (int i = 0; i < 4; ++i)
    if (!approx_equal(a[i], b[i], tol)) return false;
  return true;
}

Gate Gate::adjoint() const {
  Gate g = *this;
  g.matrix = mat_adjoint(matrix);
  if (label == "S")
    g.label = "Sdg";
  else if (label == "Sdg")
    g.label = "S";
  else if (label == "T")
    g.label = "Tdg";
  else if (label == "Tdg")
    g.label = "T";
  else if (label == "P" || label == "R" || label == "U")
    ;  // label kept, matrix authoritative
  else if (label == "X" || label == "Z" || label == "H")
    ;  // self-adjoint
  else
    g.label = "U";
  return g;
}

Gate gate_x(int t) { return {"X", {0, 1, 1, 0}, {}, t}; }
Gate gate_z(int t) { return {"Z", {1, 0, 0, -1}, {}, t}; }
Gate gate_s(int t) { return {"S", {1, 0, 0, Complex(0, 1)}, {}, t}; }
Gate gate_sdg(int t) { return {"Sdg", {1, 0, 0, Complex(0, -1)}, {}, t}; }
Gate gate_t(int t) {
  return {"T", {1, 0, 0, std::polar(1.0, M_PI / 4)}, {}, t};
}
Gate gate_h(int t) {
  const double s = 1.0 / std::sqrt(2.0);
  return {"H", {s, s, s, -s}, {}, t};
}
Gate gate_phase(double theta, int t) {
  return {"P", {1, 0, 0, std::polar(1.0, theta)}, {}, t};
}
Gate gate_unitary(std::string label, const Mat2& m, int t) {
  return {std::move(label), m, {}, t};
}

namespace {

void merge_controls(std::vector<ControlTerm>& dst,
                    std::span<const ControlTerm> extra, int target) {
  for (const auto& c : extra) {
    if (c.qubit == target)
      throw std::invalid_argument("control collides with gate target");
    if (c.value != 0 && c.value != 1)
      throw std::invalid_argument("control value must be 0 or 1");
    auto it = std::find_if(dst.begin(), dst.end(), [&](const ControlTerm& d) {
      return d.qubit == c.qubit;
    });
    if (it != dst.end()) {
      if (it->value != c.value)
        throw std::invalid_argument("contradictory control literals");
      continue;
    }
    dst.push_back(c);
  }
  std::sort(dst.begin(), dst.end(),
            [](const ControlTerm& a, const ControlTerm& b) {
              return a.qubit < b.qubit;
            });
}

}  // namespace

void Circuit::append(Gate g, std::span<const ControlTerm> extra_controls) {
  if (static_cast<int>(ancilla_init.size()) != num_ancilla)
    throw std::invalid_argument("ancilla_init length mismatch");
  merge_controls(g.controls, extra_controls, g.target);
  if (g.target < 0 || g.target >= width())
    throw std::out_of_range("gate target out of range");
  for (const auto& c : g.controls)
    if (c.qubit < 0 || c.qubit >= width())
      throw std::out_of_range("control qubit out of range");
  if (!mat_is_unitary(g.matrix))
    throw std::invalid_argument("gate matrix not unitary");
  gates.push_back(std::move(g));
}

Circuit with_extra_control(const Circuit& cir,
                           std::span<const ControlTerm> extra) {
  Circuit out;
  out.num_main = cir.num_main;
  out.num_ancilla = cir.num_ancilla;
  out.ancilla_init = cir.ancilla_init;
  out.gates.reserve(cir.gates.size());
  for (const auto& g : cir.gates) {
    Gate h = g;
    merge_controls(h.controls, extra, h.target);
    out.gates.push_back(std::move(h));
  }
  return out;
}

Circuit inverse(const Circuit& cir) {
  Circuit out;
  out.num_main = cir.num_main;
  out.num_ancilla = cir.num_ancilla;
  out.ancilla_init = cir.ancilla_init;
  out.gates.reserve(cir.gates.size());
  for (auto it = cir.gates.rbegin(); it != cir.gates.rend(); ++it)
    out.gates.push_back(it->adjoint());
  return out;
}

size_t GateCounts::multi_qubit() const {
  size_t n = 0;
  for (const auto& [arity, count] : by_arity)
    if (arity >= 2) n += count;
  return n;
}

size_t GateCounts::single_qubit() const {
  auto it = by_arity.find(1);
  return it == by_arity.end() ? 0 : it->second;
}

GateCounts counts(const Circuit& cir) {
  GateCounts gc;
  std::vector<size_t> level(cir.width(), 0);
  for (const auto& g : cir.gates) {
    gc.by_arity[g.arity()]++;
    gc.total++;
    size_t d = level[g.target];
    for (const auto& c : g.controls) d = std::max(d, level[c.qubit]);
    ++d;
    level[g.target] = d;
    for (const auto& c : g.controls) level[c.qubit] = d;
    gc.depth = std::max(gc.depth, d);
  }
  return gc;
}

}  // namespace qsprep
