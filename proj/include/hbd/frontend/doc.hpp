#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hbd/frontend/library.hpp"
#include "hbd/types.hpp"

namespace hbd::frontend {

/// One side of a wire. An empty `block` names an external port of the
/// enclosing document.
struct Endpoint {
  std::string block;
  std::string port;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

std::string to_string(const Endpoint& e);

struct Wire {
  Endpoint from;
  Endpoint to;
  /// Optional variable name for this wire (honoured at the top level only).
  std::string name;
};

struct BlockInst {
  std::string id;
  /// Library kind or the name of a subsystem in scope.
  std::string kind;
  Params params;
};

struct PortDecl {
  std::string name;
  BaseType type = BaseType::Real;
};

struct DiagramDoc {
  std::string name;
  std::vector<PortDecl> inputs;
  std::vector<PortDecl> outputs;
  std::vector<BlockInst> blocks;
  std::vector<Wire> wires;
  std::map<std::string, std::shared_ptr<DiagramDoc>> subsystems;
};

/// Parses and validates a `.hbd.json` document (format version 1).
///
/// Validation covers the schema (unknown fields are rejected), block kinds and
/// parameters, port resolution, wire direction, single drivers, wire types and
/// acyclic subsystem references. Throws ParseError (with line and column),
/// SchemaError, TypeError, DanglingPortError or CycleError.
DiagramDoc parse_doc(std::string_view text);
DiagramDoc load_doc(const std::string& path);

/// Serialises a document back to the JSON format.
std::string dump_doc(const DiagramDoc& doc);

/// Re-runs the validation performed by parse_doc.
void validate(const DiagramDoc& doc);

/// Resolved ports of a block instance inside a document.
struct PortSig {
  VarList inputs;
  VarList outputs;
  /// Set for library blocks.
  std::shared_ptr<const BlockDef> def;
  /// Set for subsystem instances.
  std::shared_ptr<const DiagramDoc> sub;
};

/// Scope chain used to resolve subsystem kinds, innermost first.
using Scope = std::vector<const DiagramDoc*>;

/// Throws SchemaError if `kind` is neither a subsystem in scope nor a library kind.
PortSig resolve_block(const BlockInst& b, const Scope& scope);

}  // namespace hbd::frontend
