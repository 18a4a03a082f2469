#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hbd/feedbackless.hpp"
#include "hbd/frontend/doc.hpp"
#include "hbd/io_diagram.hpp"

namespace hbd::frontend {

/// Structural normal form, applied to every nested subsystem:
/// fan-out points become chains of binary Split blocks, wires from an external
/// input straight to an external output pass through an Identity block, and
/// every unused source feeds a Terminator block. Idempotent.
DiagramDoc normalize(const DiagramDoc& doc);

/// State variable pair introduced for a stateful block.
struct StateEntry {
  Var state;
  Var next;
  Value init;
  std::string block_path;
};
using StateTable = std::vector<StateEntry>;

/// One atomic block instance with concrete variable names.
struct Element {
  std::string path;
  std::string kind;
  IoDiagram diagram;
  /// Per output of `diagram`, the input names it reads.
  DepTable deps;
  bool deterministic = true;
};

/// A document instance with its variables assigned. Items keep the block
/// order of the document; each is either an atomic element or a subsystem
/// instance.
struct Instance {
  struct Item {
    std::unique_ptr<Element> element;
    std::unique_ptr<Instance> child;
  };
  std::string path;
  std::string kind;
  std::vector<Item> items;
};

struct Design {
  Instance root;
  StateTable states;
  VarList inputs;
  VarList outputs;
};

/// Normalizes, then names every wire: external ports keep their names, an
/// explicit wire name is used when given, other wires get w1, w2, ... and
/// state pairs s1/s1', s2/s2', ... (or the block's `state` parameter), in
/// depth-first document order. Throws SchemaError when two wires end up with
/// the same name.
Design elaborate(const DiagramDoc& doc);

/// Atomic elements of an instance tree in depth-first order.
std::vector<const Element*> flatten(const Instance& inst);

/// One io-diagram per atomic block of the flattened document.
std::pair<std::vector<IoDiagram>, StateTable> to_io_diagrams(const DiagramDoc& doc);

}  // namespace hbd::frontend
