#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hbd/expr.hpp"
#include "hbd/feedbackless.hpp"
#include "hbd/value.hpp"

namespace hbd::frontend {

/// Block parameter: a number or boolean, or a string such as a type name.
using Param = std::variant<Value, std::string>;
using Params = std::map<std::string, Param>;

/// Internal state of a block: one extra function input (current state) and
/// one extra function output (next state).
struct StateSpec {
  BaseType type;
  Value init;
};

/// Library entry instantiated with concrete parameters.
///
/// `fn` takes the visible input ports followed by one parameter per state and
/// returns the visible output ports followed by one next-state value per state.
struct BlockDef {
  std::string kind;
  VarList in_ports;
  VarList out_ports;
  ExprFun fn;
  /// Per fn output, the fn parameters it reads.
  DepTable deps;
  bool deterministic = true;
  std::vector<StateSpec> states;
};

/// Builds a library block. Throws SchemaError for an unknown kind or a
/// malformed parameter and TypeError for an unsupported type.
BlockDef instantiate(const std::string& kind, const Params& params);

bool is_library_kind(const std::string& kind);
std::vector<std::string> library_kinds();

}  // namespace hbd::frontend
