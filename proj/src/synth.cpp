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

#include "qsprep/synth.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qsprep/numeric.hpp"

namespace qsprep {

namespace {

// After the last rotation the remaining global scalar must be a pure phase;
// its modulus is checked against 1 within this tolerance and then dropped.
constexpr double kResidualTol = 1e-9;

// Below this relative magnitude an amplitude counts as a dead branch when
// choosing the rotation for an amplitude pair.
constexpr double kDeadBranchTol = 1e-12;

Mat2 mat_identity() {
  return Mat2{Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)};
}

// Single-qubit gate cancelling one non-identity label factor on `target`.
Gate factor_elim_gate(const LimFactor& f, int target) {
  using std::numbers::pi;
  if (f.x == 0) {
    if (angles_close(f.theta, pi)) return gate_z(target);
    return gate_phase(-f.theta, target);
  }
  if (approx_zero(f.theta)) return gate_x(target);
  return gate_unitary("XPdg", mat_adjoint(f.matrix()), target);
}

void append_gates(Circuit& dst, const Circuit& src) {
  for (const auto& g : src.gates) dst.append(g);
}

// Norm cache plus the per-node rotation shared by every algorithm.
struct SynthContext {
  const LimTdd& dd;
  int n;
  NormTable norms;

  explicit SynthContext(const LimTdd& d) : dd(d), n(d.num_qubits()) {}

  double norm_of(uint32_t id) { return dd.node_norm(id, norms); }

  // Branch ratio c at a node with two nonzero edges: the low edge is
  // identity-weighted in canonical form, so c is the high scalar scaled by
  // the child norms.
  Complex ratio(const Node& v) {
    return v.high.weight.scalar * norm_of(v.high.target) /
           norm_of(v.low.target);
  }

  Gate rotation_gate(const Node& v) {
    return gate_unitary("R", rotation_from_ratio(ratio(v)), v.level);
  }

  // Cancels the high edge's non-identity factors, top factor first, under
  // the given control condition.
  void emit_high_elims(Circuit& out, const Node& v,
                       std::span<const ControlTerm> ctl) {
    const auto& fs = v.high.weight.factors;
    for (int i = static_cast<int>(fs.size()) - 1; i >= 0; --i) {
      if (fs[i].is_identity()) continue;
      out.append(factor_elim_gate(fs[i], i), ctl);
    }
  }
};

void require_nonzero(const LimTdd& dd) {
  if (dd.root().is_zero()) throw DomainError("cannot synthesize a zero diagram");
}

// ---------------------------------------------------------------------------
// No-ancilla scheme: depth-first recursion, one memoized fragment per node,
// branch conditions added onto the finished child fragments.

struct NoAncillaScheme {
  SynthContext& cx;
  std::unordered_map<uint32_t, Circuit> memo;

  // Circuit sending the node's state to |0...0> (no incoming weight).
  const Circuit& fragment(uint32_t id) {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;

    Circuit c;
    c.num_main = cx.n;
    if (id != LimTdd::kTerminal) {
      const Node& v = cx.dd.node(id);
      const int q = v.level;
      const std::array<ControlTerm, 1> on_high{{{q, 1}}};
      const std::array<ControlTerm, 1> on_low{{{q, 0}}};
      if (v.low.is_zero()) {
        c.append(gate_x(q));
        append_gates(c, fragment(v.high.target));
      } else if (v.high.is_zero()) {
        append_gates(c, fragment(v.low.target));
      } else {
        cx.emit_high_elims(c, v, on_high);
        if (v.low.target == v.high.target) {
          append_gates(c, fragment(v.low.target));
        } else {
          append_gates(c, with_extra_control(fragment(v.low.target), on_low));
          append_gates(c, with_extra_control(fragment(v.high.target), on_high));
        }
        c.append(cx.rotation_gate(v));
      }
    }
    return memo.emplace(id, std::move(c)).first->second;
  }
};

// Census of the recursion body, binned by the worst-case gate width of the
// emitting node's level: a level-L elimination counts as an (n+1-L)-qubit
// gate and a level-L rotation or basis flip as an (n-L)-qubit gate, whatever
// its actual control count. Each reduced path visits one node per level, so
// bin s holds at most p*(n+2-s) gates and bin 1 plus the root eliminations
// at most n+1. The level is recovered from the gate shape: rotations and
// basis flips target the node qubit, eliminations carry their lowest control
// on it.
void check_no_ancilla_bounds(const Circuit& out, size_t skip,
                             const LimTdd& dd) {
  const int n = dd.num_qubits();
  const uint64_t p = dd.stats().reduced_paths;
  std::unordered_map<int, uint64_t> census;
  for (size_t i = skip; i < out.gates.size(); ++i) {
    const Gate& g = out.gates[i];
    const bool at_node = g.label == "R" || dd.group() == GroupKind::ScalarOnly;
    if (!at_node && g.controls.empty())
      throw std::logic_error("no-ancilla elimination lost its edge control");
    const int bin =
        at_node ? n - g.target : n + 1 - g.controls.front().qubit;
    if (bin < 1 || bin > n)
      throw std::logic_error("no-ancilla synthesis left the level range");
    ++census[bin];
  }
  if (census[1] + skip > static_cast<uint64_t>(n) + 1)
    throw std::logic_error("no-ancilla synthesis exceeded single-qubit bound");
  for (const auto& [bin, cnt] : census) {
    if (bin <= 1) continue;
    if (cnt > p * static_cast<uint64_t>(n + 2 - bin))
      throw std::logic_error("no-ancilla synthesis exceeded arity bound");
  }
}

// ---------------------------------------------------------------------------
// One-ancilla scheme: a flag wire holds 1 exactly on the branch currently
// being disentangled; toggles move it between siblings. Also used below
// unallocated nodes of the budgeted scheme, hence the explicit flag wire and
// no root-label handling.

struct FlagScheme {
  SynthContext& cx;
  Circuit& out;
  int flag;

  void toggle(std::vector<ControlTerm> cond) {
    Gate g = gate_x(flag);
    g.controls = std::move(cond);
    out.append(g);
  }

  void descend(uint32_t id, const std::vector<ControlTerm>& path) {
    if (id == LimTdd::kTerminal) return;
    const Node& v = cx.dd.node(id);
    const int q = v.level;
    const std::array<ControlTerm, 1> flag_on{{{flag, 1}}};
    if (v.low.is_zero()) {
      out.append(gate_x(q), flag_on);
      descend(v.high.target, path);
      return;
    }
    if (v.high.is_zero()) {
      descend(v.low.target, path);
      return;
    }
    const std::array<ControlTerm, 2> flag_and_high{{{flag, 1}, {q, 1}}};
    cx.emit_high_elims(out, v, flag_and_high);
    if (v.low.target == v.high.target) {
      descend(v.low.target, path);
    } else {
      std::vector<ControlTerm> low_path = path;
      low_path.push_back({q, 0});
      std::vector<ControlTerm> high_path = path;
      high_path.push_back({q, 1});
      toggle(high_path);
      descend(v.low.target, low_path);
      toggle(path);
      descend(v.high.target, high_path);
      toggle(low_path);
    }
    out.append(cx.rotation_gate(v), flag_on);
  }
};

// ---------------------------------------------------------------------------
// Marked-ancestry scheme: per-node ancillas record which nodes the prefix of
// the path touches. Descent cancels edge labels and marks children in
// topological breadth-first order; ascent unmarks and rotates in reverse.
// With a finite budget, nodes past the allotment fall back to the flag
// scheme on a reserved wire, conditioned on the parent's mark.

struct MarkedScheme {
  SynthContext& cx;
  const LimTdd& dd;
  Circuit& out;
  int budget;        // node ancillas available
  int roaming = -1;  // ancilla slot of the reserved flag wire, -1 if none

  std::unordered_map<uint32_t, int> slot;  // node -> ancilla slot
  int next_slot = 0;
  std::unordered_map<uint32_t, int> indeg;
  std::vector<uint32_t> order;  // dequeue order

  MarkedScheme(SynthContext& c, Circuit& o, int budget_, int roaming_)
      : cx(c), dd(c.dd), out(o), budget(budget_), roaming(roaming_) {}

  int mark_qubit(uint32_t id) const { return out.ancilla_qubit(slot.at(id)); }

  // Control value an edge presents once the node's own block has run; the
  // lone child of a zero-low node sits behind an X.
  static int edge_value(const Node& v, int b) { return v.low.is_zero() ? 0 : b; }

  void count_indegrees(uint32_t root) {
    std::vector<uint32_t> stack{root};
    std::unordered_map<uint32_t, bool> seen;
    seen[root] = true;
    while (!stack.empty()) {
      uint32_t id = stack.back();
      stack.pop_back();
      const Node& v = dd.node(id);
      for (const Edge* e : {&v.low, &v.high}) {
        if (e->is_zero() || e->target == LimTdd::kTerminal) continue;
        ++indeg[e->target];
        if (!seen[e->target]) {
          seen[e->target] = true;
          stack.push_back(e->target);
        }
      }
    }
  }

  void descend(uint32_t root) {
    count_indegrees(root);
    slot[root] = next_slot++;
    std::deque<uint32_t> queue{root};
    while (!queue.empty()) {
      const uint32_t vid = queue.front();
      queue.pop_front();
      order.push_back(vid);
      const Node& v = dd.node(vid);
      const ControlTerm mark_on{mark_qubit(vid), 1};
      if (v.low.is_zero()) {
        const std::array<ControlTerm, 1> ctl{{mark_on}};
        out.append(gate_x(v.level), ctl);
      } else if (!v.high.is_zero()) {
        const std::array<ControlTerm, 2> ctl{{mark_on, {v.level, 1}}};
        cx.emit_high_elims(out, v, ctl);
      }
      for (int b : {0, 1}) {
        const Edge& e = b ? v.high : v.low;
        if (e.is_zero() || e.target == LimTdd::kTerminal) continue;
        const uint32_t u = e.target;
        if (!slot.count(u) && next_slot < budget) slot[u] = next_slot++;
        if (!slot.count(u)) continue;
        Gate mark = gate_x(mark_qubit(u));
        mark.controls = {mark_on, ControlTerm{v.level, edge_value(v, b)}};
        out.append(mark);
        if (--indeg[u] == 0) queue.push_back(u);
      }
    }
  }

  void ascend() {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const uint32_t vid = *it;
      const Node& v = dd.node(vid);
      const ControlTerm mark_on{mark_qubit(vid), 1};
      const bool shared_child = !v.low.is_zero() && !v.high.is_zero() &&
                                v.low.target == v.high.target &&
                                v.low.target != LimTdd::kTerminal;
      if (shared_child && !slot.count(v.low.target)) {
        // Both branches continue into the same unallocated child: one flag
        // fragment under the mark alone covers them.
        flag_fragment(v.low.target, {mark_on});
      } else {
        for (int b : {0, 1}) {
          const Edge& e = b ? v.high : v.low;
          if (e.is_zero() || e.target == LimTdd::kTerminal) continue;
          const uint32_t u = e.target;
          const ControlTerm on_edge{v.level, edge_value(v, b)};
          if (slot.count(u)) {
            Gate unmark = gate_x(mark_qubit(u));
            unmark.controls = {mark_on, on_edge};
            out.append(unmark);
          } else {
            flag_fragment(u, {on_edge, mark_on});
          }
        }
      }
      if (!v.low.is_zero() && !v.high.is_zero()) {
        const std::array<ControlTerm, 1> ctl{{mark_on}};
        out.append(cx.rotation_gate(v), ctl);
      }
    }
  }

  // Flag-scheme fragment for the subtree at `id` on the reserved wire, every
  // gate additionally conditioned on `entry`. The reserved wire starts and
  // ends at 1, so the conditioned fragment is exact on both subspaces.
  void flag_fragment(uint32_t id, std::vector<ControlTerm> entry) {
    Circuit frag;
    frag.num_main = out.num_main;
    frag.num_ancilla = out.num_ancilla;
    frag.ancilla_init = out.ancilla_init;
    FlagScheme fs{cx, frag, out.ancilla_qubit(roaming)};
    fs.descend(id, {});
    append_gates(out, with_extra_control(frag, entry));
  }
};

void check_marked_bounds(const Circuit& out, const LimTdd& dd) {
  const int n = dd.num_qubits();
  const uint64_t m = dd.stats().non_terminal;
  std::unordered_map<int, uint64_t> census;
  for (const auto& g : out.gates) ++census[g.arity()];
  if (census[1] > static_cast<uint64_t>(n) || census[2] > m ||
      census[3] > (3 * static_cast<uint64_t>(n) + 4) * m)
    throw std::logic_error("marked-ancestry synthesis exceeded gate bounds");
  for (const auto& [arity, cnt] : census)
    if (arity > 3 && cnt > 0)
      throw std::logic_error("marked-ancestry synthesis emitted arity > 3");
}

// Rotation mapping the amplitude pair (w0, w1) to (sqrt(|w0|^2+|w1|^2), 0).
Mat2 rotation_for_pair(Complex w0, Complex w1) {
  const double h = std::hypot(std::abs(w0), std::abs(w1));
  if (h < kDeadBranchTol) return mat_identity();
  if (std::abs(w0) <= kDeadBranchTol * h) {
    const Complex u = w1 / std::abs(w1);
    return Mat2{Complex(0, 0), std::conj(u), -u, Complex(0, 0)};
  }
  return rotation_from_ratio(w1 / w0);
}

}  // namespace

Mat2 rotation_from_ratio(Complex c) {
  const double k = 1.0 / std::sqrt(1.0 + std::norm(c));
  return Mat2{Complex(k, 0), k * std::conj(c), -k * c, Complex(k, 0)};
}

std::vector<Gate> eliminate_root_lim(const LimTdd& dd) {
  require_nonzero(dd);
  std::vector<Gate> gates;
  const auto& fs = dd.root().weight.factors;
  for (int i = static_cast<int>(fs.size()) - 1; i >= 0; --i)
    if (!fs[i].is_identity()) gates.push_back(factor_elim_gate(fs[i], i));
  return gates;
}

Circuit state_pre_1(const LimTdd& dd) {
  require_nonzero(dd);
  Circuit out;
  out.num_main = dd.num_qubits();
  for (auto& g : eliminate_root_lim(dd)) out.append(std::move(g));
  const size_t body_start = out.gates.size();
  SynthContext cx(dd);
  NoAncillaScheme alg{cx, {}};
  append_gates(out, alg.fragment(dd.root().target));
  check_no_ancilla_bounds(out, body_start, dd);
  return out;
}

Circuit state_pre_2(const LimTdd& dd) {
  require_nonzero(dd);
  Circuit out;
  out.num_main = dd.num_qubits();
  out.num_ancilla = 1;
  out.ancilla_init = {1};
  for (auto& g : eliminate_root_lim(dd)) out.append(std::move(g));
  SynthContext cx(dd);
  FlagScheme alg{cx, out, out.ancilla_qubit(0)};
  alg.descend(dd.root().target, {});
  return out;
}

Circuit state_pre_3(const LimTdd& dd) {
  require_nonzero(dd);
  const size_t m = dd.stats().non_terminal;
  Circuit out;
  out.num_main = dd.num_qubits();
  out.num_ancilla = static_cast<int>(m);
  out.ancilla_init.assign(m, 0);
  if (m > 0) out.ancilla_init[0] = 1;
  for (auto& g : eliminate_root_lim(dd)) out.append(std::move(g));
  if (m > 0) {
    SynthContext cx(dd);
    MarkedScheme alg(cx, out, static_cast<int>(m), -1);
    alg.descend(dd.root().target);
    alg.ascend();
  }
  check_marked_bounds(out, dd);
  return out;
}

Circuit state_pre_4(const LimTdd& dd, int m) {
  require_nonzero(dd);
  if (m < 1) throw std::invalid_argument("ancilla budget must be at least 1");
  if (m == 1) return state_pre_2(dd);
  Circuit out;
  out.num_main = dd.num_qubits();
  out.num_ancilla = m;
  out.ancilla_init.assign(m, 0);
  out.ancilla_init.front() = 1;
  out.ancilla_init.back() = 1;  // reserved flag wire
  for (auto& g : eliminate_root_lim(dd)) out.append(std::move(g));
  if (dd.root().target != LimTdd::kTerminal) {
    SynthContext cx(dd);
    MarkedScheme alg(cx, out, m - 1, m - 1);
    alg.descend(dd.root().target);
    alg.ascend();
  }
  return out;
}

Circuit prepare_state(std::span<const Complex> amps, AncillaMode mode,
                      int budget, GroupKind group) {
  std::vector<Complex> v(amps.begin(), amps.end());
  double norm_sq = 0.0;
  for (const auto& a : v) norm_sq += std::norm(a);
  if (norm_sq <= 0.0) throw DomainError("cannot prepare the zero vector");
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : v) a *= inv;

  const LimTdd dd = LimTdd::build_from_statevector(v, group);
  NormTable norms;
  const double residual = std::abs(dd.root().weight.scalar) *
                          dd.node_norm(dd.root().target, norms);
  if (std::abs(residual - 1.0) > kResidualTol)
    throw std::logic_error("disentangling residual is not a pure phase");

  Circuit dis;
  switch (mode) {
    case AncillaMode::kNone:
      dis = state_pre_1(dd);
      break;
    case AncillaMode::kOne:
      dis = state_pre_2(dd);
      break;
    case AncillaMode::kFull:
      dis = state_pre_3(dd);
      break;
    case AncillaMode::kBudget:
      dis = state_pre_4(dd, budget);
      break;
  }
  return inverse(dis);
}

Circuit baseline_ucr(std::span<const Complex> amps) {
  const size_t len = amps.size();
  if (len == 0 || (len & (len - 1)) != 0)
    throw FormatError("amplitude count must be a power of two");
  int n = 0;
  while ((size_t{1} << n) < len) ++n;

  std::vector<Complex> s(amps.begin(), amps.end());
  double norm_sq = 0.0;
  for (const auto& a : s) norm_sq += std::norm(a);
  if (norm_sq <= 0.0) throw DomainError("cannot prepare the zero vector");
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : s) a *= inv;

  Circuit dis;
  dis.num_main = n;
  for (int j = 0; j < n; ++j) {
    const size_t blocks = size_t{1} << (n - 1 - j);
    std::vector<Mat2> rot(blocks);
    bool uniform = true;
    for (size_t b = 0; b < blocks; ++b) {
      const size_t i0 = b << (j + 1);
      rot[b] = rotation_for_pair(s[i0], s[i0 | (size_t{1} << j)]);
      uniform = uniform && mat_approx_equal(rot[b], rot[0]);
    }
    if (uniform) {
      if (!mat_approx_equal(rot[0], mat_identity()))
        dis.append(gate_unitary("R", rot[0], j));
    } else {
      for (size_t b = 0; b < blocks; ++b) {
        Gate g = gate_unitary("R", rot[b], j);
        for (int k = j + 1; k < n; ++k)
          g.controls.push_back(
              {k, static_cast<int>((b >> (k - j - 1)) & 1)});
        dis.append(std::move(g));
      }
    }
    for (size_t b = 0; b < blocks; ++b) {
      const size_t i0 = b << (j + 1);
      const size_t i1 = i0 | (size_t{1} << j);
      const Complex a0 = s[i0], a1 = s[i1];
      s[i0] = rot[b][0] * a0 + rot[b][1] * a1;
      s[i1] = rot[b][2] * a0 + rot[b][3] * a1;
    }
  }
  return inverse(dis);
}

}  // namespace qsprep
