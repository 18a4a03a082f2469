#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hbd/io_diagram.hpp"

namespace hbd {

/// Single-output io-diagram with the inputs its output actually depends on.
struct SplitBlock {
  IoDiagram base;
  std::set<std::string> deps;
  bool deterministic = true;

  const Var& output() const { return base.outputs.front(); }
};

/// Per output, the names of the inputs it depends on.
using DepTable = std::vector<std::vector<std::string>>;

/// One SplitBlock per output. With a dep table, each piece keeps only its
/// dependencies as inputs; an atom body is projected onto them (a body that
/// just forwards one input becomes Id). Without one, piece i is
/// (I(A), o_i, D(A) ;; [O(A) ~> o_i]). Throws PreconditionError unless
/// `deterministic`.
std::vector<SplitBlock> split_block(const IoDiagram& a, bool deterministic, const DepTable* deps = nullptr);

/// Samples [I ~> I,I] ;; (D(A) || D(A)) = D(A) ;; [O ~> O,O].
bool check_deterministic(const IoDiagram& a, std::size_t samples = 100, std::uint64_t seed = 1);

/// (output, input) pairs drawn from the declared dependencies.
using OiRel = std::set<std::pair<std::string, std::string>>;
OiRel oi_rel(const std::vector<SplitBlock>& blocks);
/// Transitive closure of a relation.
OiRel closure(const OiRel& r);

struct LoopReport {
  bool loop_free = true;
  /// x -> ... -> x along the dependency relation when a loop exists.
  std::vector<std::string> witness;
};
LoopReport find_algebraic_loop(const std::vector<SplitBlock>& blocks);
bool loop_free(const std::vector<SplitBlock>& blocks);

/// Outputs of some block that are inputs of some block.
std::set<std::string> internal_vars(const std::vector<SplitBlock>& blocks);

/// A ▷ B: A ;;; B when O(A) is an input of B, otherwise B.
SplitBlock internal_serial(const SplitBlock& a, const SplitBlock& b);

/// Order in which internal variables are eliminated.
struct OrderPolicy {
  enum class Kind : std::uint8_t { Given, Topological, Random };
  Kind kind = Kind::Topological;
  std::vector<std::string> vars;
  std::uint64_t seed = 0;

  static OrderPolicy given(std::vector<std::string> vars) { return {Kind::Given, std::move(vars), 0}; }
  static OrderPolicy topological() { return {Kind::Topological, {}, 0}; }
  static OrderPolicy random(std::uint64_t seed) { return {Kind::Random, {}, seed}; }
};

/// Throws PreconditionError (with a loop witness when relevant) unless the
/// blocks are single-output, deterministic, have distinct outputs and are
/// free of algebraic loops.
void check_ok_fbless(const std::vector<SplitBlock>& blocks);

/// Elimination order chosen by a policy for these blocks.
std::vector<std::string> elimination_order(const std::vector<SplitBlock>& blocks, const OrderPolicy& policy);

/// One step: the block producing `var` is composed into every consumer.
std::vector<SplitBlock> fbless_step(const std::vector<SplitBlock>& blocks, const std::string& var);

struct FblessResult {
  IoDiagram diagram;
  std::vector<std::string> order;
  std::vector<SplitBlock> final_blocks;
};

/// Eliminates internal variables one by one, then folds the rest with |||.
FblessResult fbless_run(const std::vector<SplitBlock>& blocks, const OrderPolicy& policy,
                        std::vector<std::string>* trace = nullptr);
IoDiagram fbless_translate(const std::vector<SplitBlock>& blocks, const OrderPolicy& policy = {});

struct SharingStats {
  std::size_t serial_nodes = 0;       ///< distinct Serial node objects
  std::size_t serial_nodes_tree = 0;  ///< Serial nodes counted as a tree
  std::size_t shared_serial_nodes = 0;  ///< Serial nodes with at least two parents
  std::size_t repeated_serial_structures = 0;  ///< equal Serial subterms built more than once
  /// Largest number of distinct innermost Serial nodes that contain one atom.
  std::size_t max_atom_serial_contexts = 0;
};
SharingStats count_shared_compositions(const Term& term);

}  // namespace hbd
