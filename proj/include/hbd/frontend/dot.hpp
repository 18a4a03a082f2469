#pragma once

#include <string>

#include "hbd/frontend/doc.hpp"

namespace hbd::frontend {

/// Graphviz rendering of the normalized, flattened diagram. Edges carry the
/// variable names used by the translation; state pairs are drawn dashed.
std::string emit_dot(const DiagramDoc& doc);

}  // namespace hbd::frontend
