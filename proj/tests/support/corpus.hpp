#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hbd/frontend/doc.hpp"

namespace hbd::testing {

struct CorpusOptions {
  std::size_t min_blocks = 5;
  std::size_t max_blocks = 12;
  /// Block inputs read only external inputs, earlier blocks or delay outputs.
  bool loop_free = false;
  /// Allow one source to drive several targets.
  bool fanout = true;
};

/// Random valid diagram over the block library (Real, Int and Bool wires,
/// stateful and stateless blocks).
frontend::DiagramDoc random_doc(std::uint64_t seed, const CorpusOptions& opts = {});

/// `n` diagrams cycling through loop-free/arbitrary and fan-out/no-fan-out.
struct CorpusEntry {
  std::string label;
  CorpusOptions options;
  frontend::DiagramDoc doc;
};
std::vector<CorpusEntry> corpus(std::size_t n, std::uint64_t seed = 7);

/// Same diagram with blocks and wires listed in a shuffled order.
frontend::DiagramDoc permute(const frontend::DiagramDoc& doc, std::uint64_t seed);

/// Top-level document holding `doc` as its only subsystem instance.
frontend::DiagramDoc wrap_in_subsystem(const frontend::DiagramDoc& doc);

/// Random input rows in the document's external input order.
std::vector<Tuple> random_rows(const frontend::DiagramDoc& doc, std::size_t steps, std::uint64_t seed,
                               bool include_bottom = false);

}  // namespace hbd::testing
