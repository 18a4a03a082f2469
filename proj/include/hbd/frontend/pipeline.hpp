#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hbd/feedbackless.hpp"
#include "hbd/frontend/normalize.hpp"
#include "hbd/translator.hpp"

namespace hbd::frontend {

/// Translation method: one of the loop strategies or the feedbackless one.
struct Method {
  enum class Kind : std::uint8_t { Loop, Feedbackless };
  Kind kind = Kind::Loop;
  Strategy strategy = Strategy::incremental();
  OrderPolicy order = OrderPolicy::topological();

  static Method loop(Strategy s) { return {Kind::Loop, s, {}}; }
  static Method feedbackless(OrderPolicy p = OrderPolicy::topological()) { return {Kind::Feedbackless, {}, p}; }
};

/// "fbpar", "incr", "random:<seed>", "fbless" or "fbless:random:<seed>".
std::string to_string(const Method& m);
/// Accepts the names above; "random" and "fbless-random" take `seed`.
/// Throws PreconditionError for an unknown name.
Method parse_method(const std::string& name, std::uint64_t seed);

enum class Mode : std::uint8_t { Flatten, Recursive };

struct Translation {
  IoDiagram diagram;
  StateTable states;
  VarList ext_inputs;
  VarList ext_outputs;
};

/// Translates a list of elements. Zero-output elements (Terminators) are
/// composed last with ;;; under the feedbackless method, since splitting
/// leaves nothing for them.
IoDiagram translate_elements(const std::vector<const Element*>& elements, const Method& m,
                             std::vector<std::string>* trace = nullptr);

/// Per output of `d`, the inputs of `d` it reaches through the dependency
/// tables of `elements`.
DepTable composite_deps(const std::vector<const Element*>& elements, const IoDiagram& d);

/// Flatten inlines every subsystem and translates the resulting list once.
/// Recursive translates each subsystem instance bottom-up and uses the result
/// as one element of its parent.
Translation translate_doc(const DiagramDoc& doc, const Method& m, Mode mode = Mode::Flatten,
                          std::vector<std::string>* trace = nullptr);

IoDiagram flatten_or_recurse(const DiagramDoc& doc, Mode mode, const Method& m);

}  // namespace hbd::frontend
