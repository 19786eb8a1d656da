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

#include "qsprep/limtdd.hpp"

#include <cassert>
#include <cmath>
#include <functional>
#include <sstream>

namespace qsprep {

namespace {

Edge zero_edge() { return Edge{LimTdd::kTerminal, Lim::zero()}; }

bool halfplane_ok(const Complex& z) {
  if (z.real() > kMergeTol) return true;
  if (z.real() < -kMergeTol) return false;
  return z.imag() > 0;
}

bool lim_approx_equal(const Lim& a, const Lim& b) {
  if (a.factors.size() != b.factors.size()) return false;
  if (!approx_equal(a.scalar, b.scalar)) return false;
  for (size_t i = 0; i < a.factors.size(); ++i) {
    if (a.factors[i].x != b.factors[i].x) return false;
    if (!angles_close(a.factors[i].theta, b.factors[i].theta)) return false;
  }
  return true;
}

uint64_t node_hash(const Node& n) {
  uint64_t h = static_cast<uint64_t>(n.level);
  h = hash_combine(h, n.low.target);
  h = hash_combine(h, hash_value(n.low.weight));
  h = hash_combine(h, n.high.target);
  h = hash_combine(h, hash_value(n.high.weight));
  return h;
}

}  // namespace

// Bottom-up construction with hash-consing. Scalars/angles stored in nodes
// are O(1) ratios and pass through the value registry so approximate equality
// becomes exact equality on the stored bits; edge weights along the spine
// keep their raw scale and are never hashed.
class DiagramBuilder {
 public:
  DiagramBuilder(LimTdd& dd, double zero_cut) : dd_(dd), zero_cut_(zero_cut) {
    dd_.nodes_.push_back(Node{});  // terminal at id 0
  }

  Edge build(std::span<const Complex> amps, int level) {
    if (level < 0) {
      // The zero cut is relative to the whole state's scale, and leaf weights
      // stay exact otherwise: absolute cells or cuts applied to amplitudes
      // many orders of magnitude below one would make proportional sibling
      // subtrees look different and break merging.
      if (std::abs(amps[0]) <= zero_cut_) return zero_edge();
      return Edge{LimTdd::kTerminal, Lim{amps[0], {}}};
    }
    const size_t half = amps.size() / 2;
    Edge e0 = build(amps.first(half), level - 1);
    Edge e1 = build(amps.last(half), level - 1);
    return make_edge(level, e0, e1);
  }

 private:
  LimTdd& dd_;
  double zero_cut_;
  ValueRegistry reg_;
  std::unordered_map<uint64_t, std::vector<uint32_t>> unique_;

  GroupKind group() const { return dd_.group_; }

  uint32_t intern(const Node& n) {
    auto& bucket = unique_[node_hash(n)];
    for (uint32_t id : bucket)
      if (dd_.nodes_[id] == n) return id;
    const auto id = static_cast<uint32_t>(dd_.nodes_.size());
    dd_.nodes_.push_back(n);
    bucket.push_back(id);
    return id;
  }

  void canon_lim(Lim& l) {
    l.scalar = reg_.canon(l.scalar);
    for (auto& f : l.factors) f.theta = reg_.canon_angle(f.theta);
  }

  // Push the high-label scalar's phase freedom onto `acc` as P(theta) at
  // `level` (free under Xp, +-1 under Pauli, none under ScalarOnly).
  void extract_phase(Lim& h, Lim& acc, int level) {
    if (group() == GroupKind::ScalarOnly) return;
    if (group() == GroupKind::Xp) {
      const double phi = std::arg(h.scalar);
      if (phi == 0.0) return;
      Lim p = Lim::identity(level + 1);
      p.factors[level] = LimFactor{0, reg_.canon_angle(phi)};
      acc = acc.times(p);
      h.scalar = reg_.canon(Complex(std::abs(h.scalar), 0.0));
      return;
    }
    if (!halfplane_ok(h.scalar)) {
      Lim p = Lim::identity(level + 1);
      p.factors[level] = LimFactor{0, reg_.canon_angle(M_PI)};
      acc = acc.times(p);
      h.scalar = reg_.canon(-h.scalar);
    }
  }

  static bool factors_less(const std::vector<LimFactor>& a,
                           const std::vector<LimFactor>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].x != b[i].x) return a[i].x < b[i].x;
      if (a[i].theta != b[i].theta) return a[i].theta < b[i].theta;
    }
    return false;
  }

  // For a node whose edges share one child, (lambda, O) and
  // (e^{-i theta}/lambda, O^dag) describe the same state up to an
  // X P(theta) factor at the node's level; keep the smaller |lambda|
  // (ties: lexicographically smaller factor string).
  void maybe_swap(Lim& h, Lim& acc, int level) {
    const double mag = std::abs(h.scalar);
    const double alt = 1.0 / mag;
    bool do_swap;
    if (alt < mag - kMergeTol) {
      do_swap = true;
    } else if (alt <= mag + kMergeTol) {
      std::vector<LimFactor> adj(h.factors.size());
      for (size_t i = 0; i < h.factors.size(); ++i) {
        adj[i] = factor_adjoint(h.factors[i]).factor;
        adj[i].theta = reg_.canon_angle(adj[i].theta);
      }
      do_swap = factors_less(adj, h.factors);
    } else {
      do_swap = false;
    }
    if (!do_swap) return;

    const Complex lam_old = h.scalar;
    double theta = 0.0;
    Complex lam_new = 1.0 / lam_old;
    if (group() == GroupKind::Pauli && !halfplane_ok(lam_new)) {
      theta = M_PI;
      lam_new = -lam_new;
    }
    Lim m;
    m.scalar = lam_old;
    m.factors = h.factors;
    m.factors.push_back(LimFactor{1, reg_.canon_angle(theta)});
    acc = acc.times(m);

    Lim hn;
    hn.scalar = lam_new;
    hn.factors.resize(h.factors.size());
    for (size_t i = 0; i < h.factors.size(); ++i) {
      const ScaledFactor a = factor_adjoint(h.factors[i]);
      hn.scalar *= a.scalar;
      hn.factors[i] = a.factor;
    }
    h = hn;
    canon_lim(h);
    extract_phase(h, acc, level);  // adjoint-collected phases
    canon_lim(h);
  }

  Edge make_edge(int level, Edge e0, Edge e1) {
    const bool z0 = e0.is_zero(), z1 = e1.is_zero();
    if (z0 && z1) return zero_edge();

    if (z0) {
      if (group() == GroupKind::ScalarOnly) {
        // No X factor available: keep the zero low edge, high normalized.
        Node n{level, zero_edge(), Edge{e1.target, Lim::identity(level)}};
        return Edge{intern(n), e1.weight.lifted()};
      }
      Node n{level, Edge{e1.target, Lim::identity(level)}, zero_edge()};
      Lim w = e1.weight.lifted();
      w.factors[level] = LimFactor{1, 0.0};
      return Edge{intern(n), w};
    }
    if (z1) {
      Node n{level, Edge{e0.target, Lim::identity(level)}, zero_edge()};
      return Edge{intern(n), e0.weight.lifted()};
    }

    const Lim w0 = e0.weight;
    Lim h = w0.inverse().times(e1.weight);
    uint32_t u0 = e0.target, u1 = e1.target;
    Lim acc = Lim::identity(level + 1);

    if (u1 != u0) {
      if (auto iso = dd_.find_iso(u1, u0)) {
        h = h.times(*iso);
        u1 = u0;
      }
    }
    canon_lim(h);
    extract_phase(h, acc, level);
    if (u1 == u0 && group() != GroupKind::ScalarOnly) maybe_swap(h, acc, level);
    canon_lim(h);

    Node n{level, Edge{u0, Lim::identity(level)}, Edge{u1, h}};
    const uint32_t id = intern(n);
    Lim w = w0.lifted().times(acc);
    return Edge{id, w};
  }
};

LimTdd LimTdd::build_from_statevector(std::span<const Complex> amps,
                                      GroupKind group) {
  const size_t sz = amps.size();
  if (sz == 0 || (sz & (sz - 1)) != 0)
    throw FormatError("amplitude count must be a power of two");
  int n = 0;
  while ((size_t{1} << n) < sz) ++n;

  double max_mag = 0.0;
  for (const auto& a : amps) max_mag = std::max(max_mag, std::abs(a));
  if (max_mag == 0.0) throw DomainError("all-zero state has no diagram");

  LimTdd dd;
  dd.num_qubits_ = n;
  dd.group_ = group;
  DiagramBuilder builder(dd, max_mag * kRelativeZeroCut);
  dd.root_ = builder.build(amps, n - 1);
  return dd;
}

std::vector<Complex> LimTdd::node_semantics(uint32_t id) const {
  std::unordered_map<uint32_t, std::vector<Complex>> memo;
  std::function<const std::vector<Complex>&(uint32_t)> eval =
      [&](uint32_t v) -> const std::vector<Complex>& {
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    const Node& n = nodes_[v];
    std::vector<Complex> out;
    if (n.level < 0) {
      out = {Complex(1, 0)};
    } else {
      const size_t half = size_t{1} << n.level;
      out.assign(half * 2, Complex(0, 0));
      if (!n.low.is_zero()) {
        auto lo = n.low.weight.apply(eval(n.low.target));
        std::copy(lo.begin(), lo.end(), out.begin());
      }
      if (!n.high.is_zero()) {
        auto hi = n.high.weight.apply(eval(n.high.target));
        std::copy(hi.begin(), hi.end(), out.begin() + half);
      }
    }
    return memo.emplace(v, std::move(out)).first->second;
  };
  return eval(id);
}

std::vector<Complex> LimTdd::semantics_to_statevector() const {
  return root_.weight.apply(node_semantics(root_.target));
}

std::optional<Lim> LimTdd::find_iso(uint32_t a, uint32_t b) const {
  const uint64_t key = (static_cast<uint64_t>(a) << 32) | b;
  auto it = iso_memo_.find(key);
  if (it != iso_memo_.end()) return it->second;
  std::optional<Lim> result = find_iso_impl(a, b);
#ifndef NDEBUG
  // Soundness: |a> must equal O|b> exactly (dense check at small sizes).
  if (result && nodes_[a].level <= 9) {
    const auto va = node_semantics(a);
    const auto vb = result->apply(node_semantics(b));
    for (size_t i = 0; i < va.size(); ++i)
      assert(std::abs(va[i] - vb[i]) <= 1e-8);
  }
#endif
  iso_memo_.emplace(key, result);
  return result;
}

std::optional<Lim> LimTdd::find_iso_impl(uint32_t a, uint32_t b) const {
  const Node& na = nodes_[a];
  const Node& nb = nodes_[b];
  if (na.level != nb.level) return std::nullopt;
  if (a == b) return Lim::identity(na.level + 1);
  // a == b handles the terminal; distinct nodes are non-terminal here.

  // ScalarOnly zero-low nodes: |v> = |1> (x) lambda_high |u1>.
  if (na.low.is_zero() || nb.low.is_zero()) {
    if (!na.low.is_zero() || !nb.low.is_zero()) return std::nullopt;
    if (na.high.is_zero() || nb.high.is_zero()) return std::nullopt;
    auto m1 = find_iso(na.high.target, nb.high.target);
    if (!m1) return std::nullopt;
    Lim m = na.high.weight.times(*m1);
    m.scalar /= nb.high.weight.scalar;
    // Canonical zero-low nodes carry identity high factors, so m's factors
    // are exactly m1's.
    m.factors.push_back(LimFactor{});
    return m;
  }

  // Straight match: top factor P(theta).
  do {
    auto m0 = find_iso(na.low.target, nb.low.target);
    if (!m0) break;
    if (na.high.is_zero() != nb.high.is_zero()) break;
    if (na.high.is_zero()) {
      Lim m = *m0;
      m.factors.push_back(LimFactor{});
      return m;
    }
    auto m1 = find_iso(na.high.target, nb.high.target);
    if (!m1) break;
    // lambda_a Sa M1 == mu0 e^{i theta} (R0 . Sb) lambda_b, as operators.
    const Lim lhs = na.high.weight.times(*m1);
    const Lim rhs = Lim{Complex(1, 0), m0->factors}.times(nb.high.weight);
    bool ok = true;
    for (size_t i = 0; i < lhs.factors.size() && ok; ++i)
      ok = lhs.factors[i].x == rhs.factors[i].x &&
           angles_close(lhs.factors[i].theta, rhs.factors[i].theta);
    if (!ok) break;
    const Complex ratio = lhs.scalar / (m0->scalar * rhs.scalar);
    if (std::abs(std::abs(ratio) - 1.0) > kMergeTol) break;
    double theta = wrap_angle(std::arg(ratio));
    if (group_ == GroupKind::ScalarOnly) {
      if (!angles_close(theta, 0.0)) break;
      theta = 0.0;
    } else if (group_ == GroupKind::Pauli) {
      if (angles_close(theta, 0.0))
        theta = 0.0;
      else if (angles_close(theta, M_PI))
        theta = M_PI;
      else
        break;
    }
    Lim m = *m0;
    m.factors.push_back(LimFactor{0, theta});
    return m;
  } while (false);

  // Swapped match: top factor X P(theta).
  if (group_ == GroupKind::ScalarOnly) return std::nullopt;
  if (na.high.is_zero() || nb.high.is_zero()) return std::nullopt;
  auto mh = find_iso(na.high.target, nb.low.target);
  if (!mh) return std::nullopt;
  auto ml = find_iso(na.low.target, nb.high.target);
  if (!ml) return std::nullopt;
  const Lim u = na.high.weight.times(*mh);  // mu * R
  const Lim v = Lim{Complex(1, 0), u.factors}.times(nb.high.weight);
  for (size_t i = 0; i < v.factors.size(); ++i)
    if (v.factors[i].x != ml->factors[i].x ||
        !angles_close(v.factors[i].theta, ml->factors[i].theta))
      return std::nullopt;
  const Complex ratio = ml->scalar / (u.scalar * v.scalar);
  if (std::abs(std::abs(ratio) - 1.0) > kMergeTol) return std::nullopt;
  double theta = wrap_angle(std::arg(ratio));
  if (group_ == GroupKind::Pauli) {
    if (angles_close(theta, 0.0))
      theta = 0.0;
    else if (angles_close(theta, M_PI))
      theta = M_PI;
    else
      return std::nullopt;
  }
  Lim m = u;
  m.factors.push_back(LimFactor{1, theta});
  return m;
}

double LimTdd::node_norm(uint32_t v, NormTable& cache) const {
  if (nodes_[v].level < 0) return 1.0;
  auto it = cache.find(v);
  if (it != cache.end()) return it->second;
  const Node& n = nodes_[v];
  double s = 0.0;
  if (!n.low.is_zero()) {
    const double c = node_norm(n.low.target, cache);
    s += std::norm(n.low.weight.scalar) * c * c;
  }
  if (!n.high.is_zero()) {
    const double c = node_norm(n.high.target, cache);
    s += std::norm(n.high.weight.scalar) * c * c;
  }
  const double r = std::sqrt(s);
  cache.emplace(v, r);
  return r;
}

DiagramStats LimTdd::stats() const {
  DiagramStats st;
  std::unordered_map<uint32_t, uint64_t> paths;
  std::function<uint64_t(uint32_t)> visit = [&](uint32_t v) -> uint64_t {
    auto it = paths.find(v);
    if (it != paths.end()) return it->second;
    const Node& n = nodes_[v];
    st.total_nodes++;
    uint64_t p;
    if (n.level < 0) {
      p = 1;
    } else {
      st.non_terminal++;
      const bool z0 = n.low.is_zero(), z1 = n.high.is_zero();
      if (!z0 && !z1 && n.low.target != n.high.target) {
        st.branch_nodes++;
        p = visit(n.low.target) + visit(n.high.target);
      } else if (!z0 && !z1) {
        p = visit(n.low.target);  // parallel edges merged
      } else {
        p = visit(z0 ? n.high.target : n.low.target);
      }
    }
    paths.emplace(v, p);
    return p;
  };
  st.reduced_paths = visit(root_.target);
  return st;
}

std::string LimTdd::to_dot() const {
  std::ostringstream os;
  os << "digraph limtdd {\n  rankdir=TB;\n";
  std::unordered_map<int, std::vector<uint32_t>> by_level;
  std::vector<uint32_t> stack{root_.target};
  std::unordered_map<uint32_t, bool> seen;
  while (!stack.empty()) {
    const uint32_t v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    by_level[nodes_[v].level].push_back(v);
    if (nodes_[v].level >= 0) {
      if (!nodes_[v].low.is_zero()) stack.push_back(nodes_[v].low.target);
      if (!nodes_[v].high.is_zero()) stack.push_back(nodes_[v].high.target);
    }
  }
  os << "  root [shape=point];\n";
  for (auto& [level, ids] : by_level) {
    os << "  { rank=same;";
    for (uint32_t v : ids) {
      if (level < 0)
        os << " n" << v << " [shape=box,label=\"1\"];";
      else
        os << " n" << v << " [shape=circle,label=\"q" << level << "\"];";
    }
    os << " }\n";
  }
  os << "  root -> n" << root_.target << " [label=\""
     << root_.weight.to_string() << "\"];\n";
  for (auto& [v, _] : seen) {
    const Node& n = nodes_[v];
    if (n.level < 0) continue;
    if (!n.low.is_zero())
      os << "  n" << v << " -> n" << n.low.target << " [style=dotted,label=\""
         << n.low.weight.to_string() << "\"];\n";
    if (!n.high.is_zero())
      os << "  n" << v << " -> n" << n.high.target << " [label=\""
         << n.high.weight.to_string() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

bool LimTdd::structurally_equal(const LimTdd& other) const {
  if (num_qubits_ != other.num_qubits_ || group_ != other.group_) return false;
  std::unordered_map<uint32_t, uint32_t> mapped;
  std::function<bool(uint32_t, uint32_t)> rec = [&](uint32_t a,
                                                    uint32_t b) -> bool {
    auto it = mapped.find(a);
    if (it != mapped.end()) return it->second == b;
    const Node& na = nodes_[a];
    const Node& nb = other.nodes_[b];
    if (na.level != nb.level) return false;
    mapped.emplace(a, b);
    if (na.level < 0) return true;
    auto edge_eq = [&](const Edge& ea, const Edge& eb) {
      if (ea.is_zero() != eb.is_zero()) return false;
      if (ea.is_zero()) return true;
      return lim_approx_equal(ea.weight, eb.weight) &&
             rec(ea.target, eb.target);
    };
    return edge_eq(na.low, nb.low) && edge_eq(na.high, nb.high);
  };
  return lim_approx_equal(root_.weight, other.root_.weight) &&
         rec(root_.target, other.root_.target);
}

}  // namespace qsprep
