#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hbd/io_diagram.hpp"

namespace hbd {

/// How the choices of the abstract translation loop are resolved.
struct Strategy {
  enum class Kind : std::uint8_t { FeedbackParallel, Incremental, RandomChoices };
  Kind kind = Kind::Incremental;
  std::uint64_t seed = 0;

  static Strategy feedback_parallel() { return {Kind::FeedbackParallel, 0}; }
  static Strategy incremental() { return {Kind::Incremental, 0}; }
  static Strategy random(std::uint64_t seed) { return {Kind::RandomChoices, seed}; }
};

std::string to_string(const Strategy& s);

/// Pairwise disjoint input names and pairwise disjoint output names.
bool check_io_distinct(const std::vector<IoDiagram>& ds);

/// Stable topological order of the producer -> consumer graph. Strongly
/// connected groups keep their original relative order and are placed by
/// their earliest member.
std::vector<std::size_t> topo_order_indices(const std::vector<IoDiagram>& ds);
std::vector<IoDiagram> topo_order(const std::vector<IoDiagram>& ds);

struct TranslateOptions {
  /// After every step, re-check io-distinctness and the loop invariant
  /// FB(fold |||) ~ FB(fold ||| of the input) on a small sample budget.
  bool check_invariant = false;
  std::size_t invariant_samples = 16;
  /// Receives one line per loop iteration when set.
  std::vector<std::string>* trace = nullptr;
};

/// Throws PreconditionError for an empty or non io-distinct list.
IoDiagram translate(const std::vector<IoDiagram>& ds, const Strategy& strategy, const TranslateOptions& opts = {});

/// n-ary ||| folded from the left.
IoDiagram fold_parallel(const std::vector<IoDiagram>& ds);

}  // namespace hbd
