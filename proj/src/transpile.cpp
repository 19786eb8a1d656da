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

#include "qsprep/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsprep/numeric.hpp"

namespace qsprep {

namespace {

constexpr double kGateTol = 1e-12;

Mat2 mat_x() { return {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}}; }

bool mat_is_identity(const Mat2& m) {
  return approx_equal(m[0], Complex{1, 0}, kGateTol) && approx_zero(m[1], kGateTol) &&
         approx_zero(m[2], kGateTol) && approx_equal(m[3], Complex{1, 0}, kGateTol);
}

bool mat_is_x(const Mat2& m) {
  return approx_zero(m[0], kGateTol) && approx_equal(m[1], Complex{1, 0}, kGateTol) &&
         approx_equal(m[2], Complex{1, 0}, kGateTol) && approx_zero(m[3], kGateTol);
}

Mat2 rot_y(double phi) {
  const double c = std::cos(phi / 2), s = std::sin(phi / 2);
  return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
}

Mat2 rot_z(double phi) {
  return {std::polar(1.0, -phi / 2), Complex{0, 0}, Complex{0, 0}, std::polar(1.0, phi / 2)};
}

// Sink for the lowered gate stream; drops near-identity one-qubit gates.
struct Emitter {
  Circuit out;

  void one(const std::string& label, const Mat2& m, int target) {
    if (mat_is_identity(m)) return;
    out.append(gate_unitary(label, m, target));
  }
  void x(int q) { out.append(gate_x(q)); }
  void cx(int control, int target) {
    out.append(Gate{"X", mat_x(), {ControlTerm{control, 1}}, target});
  }
  void t(int q) { out.append(gate_t(q)); }
  void tdg(int q) { out.append(Gate{"Tdg", mat_adjoint(gate_t(q).matrix), {}, q}); }
  void h(int q) { out.append(gate_h(q)); }
};

// Controlled-U as P(alpha) on the control and A X B X C on the target,
// with A B C = I and A X B X C = e^{-i alpha} U.
void emit_cu(Emitter& e, const std::string& label, const Mat2& u, int control, int target) {
  if (mat_is_x(u)) {
    e.cx(control, target);
    return;
  }
  const ZyzAngles z = zyz_decompose(u);
  const Mat2 a = mat_mul(rot_z(z.beta), rot_y(z.gamma / 2));
  const Mat2 b = mat_mul(rot_y(-z.gamma / 2), rot_z(-(z.delta + z.beta) / 2));
  const Mat2 c = rot_z((z.delta - z.beta) / 2);
  e.one(label + "_c", c, target);
  if (!mat_is_identity(b) || !mat_is_identity(a)) {
    e.cx(control, target);
    e.one(label + "_b", b, target);
    e.cx(control, target);
  }
  e.one(label + "_a", a, target);
  if (std::abs(z.alpha) > kGateTol) e.one("P", gate_phase(z.alpha, control).matrix, control);
}

// Doubly-controlled X as the standard 6-CX, 9 single-qubit T network.
void emit_ccx(Emitter& e, int c1, int c2, int target) {
  e.h(target);
  e.cx(c2, target);
  e.tdg(target);
  e.cx(c1, target);
  e.t(target);
  e.cx(c2, target);
  e.tdg(target);
  e.cx(c1, target);
  e.t(c2);
  e.t(target);
  e.h(target);
  e.cx(c1, c2);
  e.t(c1);
  e.tdg(c2);
  e.cx(c1, c2);
}

void emit_mcu(Emitter& e, const std::string& label, const Mat2& u, std::vector<int> controls,
              int target, int width);

// Multi-controlled X. Prefers the borrowed-wire ladder (any idle wires may
// be dirty); with a single idle wire the control set is halved first; with
// none the square-root recursion frees one.
void emit_mcx(Emitter& e, std::vector<int> controls, int target, int width) {
  const int k = static_cast<int>(controls.size());
  if (k == 0) {
    e.x(target);
    return;
  }
  if (k == 1) {
    e.cx(controls[0], target);
    return;
  }
  if (k == 2) {
    emit_ccx(e, controls[0], controls[1], target);
    return;
  }
  std::vector<bool> busy(width, false);
  for (int q : controls) busy[q] = true;
  busy[target] = true;
  std::vector<int> idle;
  for (int q = 0; q < width; ++q)
    if (!busy[q]) idle.push_back(q);

  if (static_cast<int>(idle.size()) >= k - 2) {
    // Ladder over k-2 borrowed wires; each half is applied twice so any
    // junk toggled onto a borrowed wire cancels.
    const std::vector<int>& d = idle;
    auto chain_down = [&] {
      for (int i = k - 3; i >= 1; --i) emit_ccx(e, controls[i + 1], d[i - 1], d[i]);
      emit_ccx(e, controls[0], controls[1], d[0]);
    };
    auto chain_up = [&] {
      for (int i = 1; i <= k - 3; ++i) emit_ccx(e, controls[i + 1], d[i - 1], d[i]);
    };
    emit_ccx(e, controls[k - 1], d[k - 3], target);
    chain_down();
    chain_up();
    emit_ccx(e, controls[k - 1], d[k - 3], target);
    chain_down();
    chain_up();
    return;
  }
  if (!idle.empty()) {
    // Split through one borrowed wire; each half then has enough idle
    // wires (the other half's controls) for the ladder.
    const int b = idle[0];
    const int m = (k + 1) / 2;
    std::vector<int> first(controls.begin(), controls.begin() + m);
    std::vector<int> rest(controls.begin() + m, controls.end());
    rest.push_back(b);
    emit_mcx(e, rest, target, width);
    emit_mcx(e, first, b, width);
    emit_mcx(e, rest, target, width);
    emit_mcx(e, first, b, width);
    return;
  }
  emit_mcu(e, "X", mat_x(), std::move(controls), target, width);
}

// C^k U = CV(c_k, t) . C^{k-1}X(-> c_k) . CV+(c_k, t) . C^{k-1}X(-> c_k)
// . C^{k-1}V(-> t) with V*V = U; the inner X parts see t as an idle wire.
void emit_mcu(Emitter& e, const std::string& label, const Mat2& u, std::vector<int> controls,
              int target, int width) {
  const int k = static_cast<int>(controls.size());
  if (k == 0) {
    e.one(label, u, target);
    return;
  }
  if (k == 1) {
    emit_cu(e, label, u, controls[0], target);
    return;
  }
  if (k == 2 && mat_is_x(u)) {
    emit_ccx(e, controls[0], controls[1], target);
    return;
  }
  const Mat2 v = mat_sqrt(u);
  const Mat2 vdg = mat_adjoint(v);
  const int last = controls.back();
  std::vector<int> head(controls.begin(), controls.end() - 1);
  emit_cu(e, label + "_r", v, last, target);
  if (head.size() == 1) {
    e.cx(head[0], last);
    emit_cu(e, label + "_r", vdg, last, target);
    e.cx(head[0], last);
  } else {
    emit_mcx(e, head, last, width);
    emit_cu(e, label + "_r", vdg, last, target);
    emit_mcx(e, head, last, width);
  }
  emit_mcu(e, label + "_r", v, head, target, width);
}

}  // namespace

ZyzAngles zyz_decompose(const Mat2& u) {
  if (!mat_is_unitary(u, 1e-8)) throw std::invalid_argument("zyz_decompose: not unitary");
  const Complex det = u[0] * u[3] - u[1] * u[2];
  const double alpha = 0.5 * std::arg(det);
  const Complex a = u[0] * std::polar(1.0, -alpha);
  const Complex b = u[1] * std::polar(1.0, -alpha);
  const double gamma = 2.0 * std::atan2(std::abs(b), std::abs(a));
  // a = cos(g/2) e^{-i(b+d)/2}, b = -sin(g/2) e^{-i(b-d)/2}; degenerate
  // rows leave one phase sum free, pinned to zero.
  double sum = 0, diff = 0;
  if (std::abs(a) > kGateTol) sum = -2.0 * std::arg(a);
  if (std::abs(b) > kGateTol) diff = -2.0 * std::arg(-b);
  return ZyzAngles{alpha, (sum + diff) / 2, gamma, (sum - diff) / 2};
}

Mat2 mat_sqrt(const Mat2& u) {
  if (!mat_is_unitary(u, 1e-8)) throw std::invalid_argument("mat_sqrt: not unitary");
  // U = e^{i d}(cos(t) I + i sin(t) n.sigma); halve d and t.
  const Complex det = u[0] * u[3] - u[1] * u[2];
  const double d = 0.5 * std::arg(det);
  const Complex ph = std::polar(1.0, -d);
  const Complex s00 = u[0] * ph, s01 = u[1] * ph, s10 = u[2] * ph, s11 = u[3] * ph;
  const double ct = 0.5 * (s00.real() + s11.real());
  const double nx = 0.5 * (s01.imag() + s10.imag());
  const double ny = 0.5 * (s01.real() - s10.real());
  const double nz = 0.5 * (s00.imag() - s11.imag());
  const double st = std::sqrt(std::max(0.0, nx * nx + ny * ny + nz * nz));
  const double theta = std::atan2(st, ct);
  const double ch = std::cos(theta / 2), sh = std::sin(theta / 2);
  double ux = 0, uy = 0, uz = 1;
  if (st > kGateTol) {
    ux = nx / st;
    uy = ny / st;
    uz = nz / st;
  }
  const Complex hp = std::polar(1.0, d / 2);
  Mat2 v = {hp * Complex{ch, sh * uz}, hp * Complex{sh * uy, sh * ux},
            hp * Complex{-sh * uy, sh * ux}, hp * Complex{ch, -sh * uz}};
  return v;
}

Circuit transpile(const Circuit& cir) {
  Emitter e;
  e.out.num_main = cir.num_main;
  e.out.num_ancilla = cir.num_ancilla;
  e.out.ancilla_init = cir.ancilla_init;
  const int width = cir.width();
  for (const Gate& g : cir.gates) {
    std::vector<int> negated;
    std::vector<int> positives;
    for (const ControlTerm& c : g.controls) {
      if (c.value == 0) negated.push_back(c.qubit);
      positives.push_back(c.qubit);
    }
    for (int q : negated) e.x(q);
    if (positives.empty()) {
      e.one(g.label, g.matrix, g.target);
    } else if (mat_is_x(g.matrix)) {
      emit_mcx(e, positives, g.target, width);
    } else {
      emit_mcu(e, g.label, g.matrix, positives, g.target, width);
    }
    for (int q : negated) e.x(q);
  }
  return e.out;
}

bool is_transpiled(const Circuit& cir) {
  for (const Gate& g : cir.gates) {
    if (g.controls.empty()) continue;
    if (g.controls.size() != 1) return false;
    if (g.controls[0].value != 1) return false;
    if (!mat_is_x(g.matrix)) return false;
  }
  return true;
}

}  // namespace qsprep
