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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsprep/lim.hpp"

namespace qsprep {

// Edge with a LIM weight. Zero edges (scalar 0, empty factors) always target
// the terminal. For a nonzero edge into a node at level L the weight carries
// L+1 factors (qubits 0..L).
struct Edge {
  uint32_t target = 0;
  Lim weight;
  bool is_zero() const { return weight.is_zero(); }
  bool operator==(const Edge&) const = default;
};

// Non-terminal node at `level` (qubit index); children sit exactly one level
// down (or are zero edges). Canonical: low weight is identity, or low is the
// zero edge and the high weight is identity (ScalarOnly only).
struct Node {
  int level = -1;
  Edge low, high;
  bool operator==(const Node&) const = default;
};

struct DiagramStats {
  size_t total_nodes = 0;   // reachable, terminal included
  size_t non_terminal = 0;
  size_t branch_nodes = 0;  // both edges nonzero and targets distinct
  uint64_t reduced_paths = 0;  // root-to-terminal paths, parallel edges merged
};

using NormTable = std::unordered_map<uint32_t, double>;

// Decision diagram for one state vector: |v> = |0>|low(v)> + |1>|high(v)>,
// terminal = 1, edge = weight * target. Immutable once built; isomorphism
// lookups cache internally.
class LimTdd {
 public:
  static constexpr uint32_t kTerminal = 0;

  // Throws FormatError when amps is not a power of two, DomainError when all
  // amplitudes are (near-)zero. The diagram reproduces `amps` exactly; no
  // normalization is applied here.
  static LimTdd build_from_statevector(std::span<const Complex> amps,
                                       GroupKind group);

  int num_qubits() const { return num_qubits_; }
  GroupKind group() const { return group_; }
  const Edge& root() const { return root_; }
  const Node& node(uint32_t id) const { return nodes_[id]; }
  size_t allocated_nodes() const { return nodes_.size(); }

  std::vector<Complex> semantics_to_statevector() const;
  // Dense vector of one node (2^(level+1) amplitudes), no incoming weight.
  std::vector<Complex> node_semantics(uint32_t id) const;

  // LIM O with |a> = O|b>, or nullopt when the bounded structural search
  // finds none (absence of a result is not proof of non-isomorphism).
  std::optional<Lim> find_iso(uint32_t a, uint32_t b) const;

  // sqrt(|lambda_low|^2 ||low||^2 + |lambda_high|^2 ||high||^2); terminal 1.
  double node_norm(uint32_t v, NormTable& cache) const;

  DiagramStats stats() const;
  std::string to_dot() const;

  // Tolerance-aware comparison of the reachable structure (targets matched
  // through simultaneous traversal, weights compared within kMergeTol).
  bool structurally_equal(const LimTdd& other) const;

 private:
  friend class DiagramBuilder;
  int num_qubits_ = 0;
  GroupKind group_ = GroupKind::Xp;
  std::vector<Node> nodes_;
  Edge root_;
  mutable std::unordered_map<uint64_t, std::optional<Lim>> iso_memo_;

  std::optional<Lim> find_iso_impl(uint32_t a, uint32_t b) const;
};

struct FormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace qsprep
