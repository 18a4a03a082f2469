#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hbd/errors.hpp"
#include "hbd/frontend/library.hpp"

namespace hbd::testing {

/// Every library kind instantiated for each type it accepts.
inline std::vector<std::pair<std::string, frontend::BlockDef>> library_cases() {
  std::vector<std::pair<std::string, frontend::BlockDef>> out;
  for (const auto& kind : frontend::library_kinds()) {
    for (const char* ty : {"Real", "Int", "Bool"}) {
      frontend::Params p{{"type", std::string(ty)}};
      Value lit = std::string(ty) == "Real" ? Value::real(2.5)
                  : std::string(ty) == "Int" ? Value::integer(3)
                                             : Value::boolean(true);
      if (kind == "Gain") p["gain"] = lit;
      if (kind == "Constant") p["value"] = lit;
      if (kind == "Relational" && std::string(ty) == "Bool") p["op"] = std::string("==");
      try {
        out.emplace_back(kind + "<" + ty + ">", frontend::instantiate(kind, p));
      } catch (const SchemaError&) {
        // Kinds without a type parameter are added once below.
        break;
      } catch (const TypeError&) {
      }
    }
  }
  for (const char* kind : {"LogicalAnd", "LogicalOr", "LogicalNot"}) out.emplace_back(kind, frontend::instantiate(kind, {}));
  return out;
}

}  // namespace hbd::testing
