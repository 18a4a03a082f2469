#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hbd/frontend/pipeline.hpp"

namespace hbd::frontend {

struct StrategyRun {
  std::string name;
  Method method;
  IoDiagram diagram;
  std::size_t term_size = 0;
  double millis = 0.0;
  /// Non-empty when the method was not applicable (fbless on a diagram with
  /// an algebraic loop); such runs are left out of the matrix.
  std::string skipped;
};

/// Pairwise io-equivalence of every applicable strategy run.
struct RunReport {
  std::vector<StrategyRun> runs;
  /// matrix[i][j] over the applicable runs, in `runs` order.
  std::vector<std::vector<EquivReport>> matrix;
  std::vector<std::size_t> applicable;

  bool all_equivalent() const;
};

struct CheckConfig {
  std::size_t seeds = 20;
  std::size_t samples = 200;
  std::uint64_t seed_base = 1;
  Mode mode = Mode::Flatten;
  bool include_fbless = true;
  /// Worker threads for the pairwise checks; 0 picks the hardware count.
  std::size_t threads = 1;
};

/// Translates with fbpar, incr, `seeds` random seeds and fbless (when the
/// diagram is loop free), then fills the symmetric equivalence matrix.
RunReport check_determinacy(const DiagramDoc& doc, const CheckConfig& cfg = {});

std::string format_report(const RunReport& r);

}  // namespace hbd::frontend
