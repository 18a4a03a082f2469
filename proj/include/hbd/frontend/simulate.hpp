#pragma once

#include <iosfwd>
#include <vector>

#include "hbd/eval.hpp"
#include "hbd/frontend/pipeline.hpp"

namespace hbd::frontend {

struct SimRow {
  Tuple inputs;
  Tuple outputs;
  Tuple state_before;
  Tuple state_after;
};

/// Columns follow the document's external declarations and the state table.
struct SimTrace {
  VarList inputs;
  VarList outputs;
  VarList states;
  std::vector<SimRow> rows;
};

/// Steps a translated diagram: each row of `inputs` (in external input order)
/// is combined with the current state, the term is evaluated, and next-state
/// values carry over. Throws PreconditionError if the diagram's interface does
/// not split into external ports and state variables, TypeError on ill-typed
/// rows and FixpointDivergence from the structural engine.
SimTrace simulate(const Translation& t, const std::vector<Tuple>& inputs, const EvalConfig& cfg = {},
                  Engine engine = Engine::Compiled);

/// Reads a header of input names (any order, each exactly once) and one row
/// per step; `bot` stands for bottom. Throws ParseError with line numbers.
std::vector<Tuple> read_inputs_csv(std::istream& in, const VarList& inputs);
void write_trace_csv(std::ostream& out, const SimTrace& trace);

/// Parses one CSV cell for a given type.
Value parse_cell(const std::string& cell, BaseType t);

}  // namespace hbd::frontend
