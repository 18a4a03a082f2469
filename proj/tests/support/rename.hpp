#pragma once

#include <map>
#include <string>

#include "hbd/io_diagram.hpp"

namespace hbd::testing {

using Renaming = std::map<std::string, std::string>;

/// Renames interface variables; names missing from `r` are kept.
inline VarList rename(const VarList& vs, const Renaming& r) {
  VarList out;
  for (const auto& v : vs) {
    auto it = r.find(v.name);
    out.push_back(Var{it == r.end() ? v.name : it->second, v.type});
  }
  return out;
}

inline IoDiagram rename(const IoDiagram& d, const Renaming& r) {
  return make_io_diagram(rename(d.inputs, r), rename(d.outputs, r), d.body);
}

/// Same interface lists (in order) after renaming `a`, and bodies equal after
/// basic rewriting up to atom and parameter names.
inline bool alpha_equal(const IoDiagram& a, const IoDiagram& b, const Renaming& r) {
  VarList ai = rename(a.inputs, r), ao = rename(a.outputs, r);
  auto same = [](const VarList& x, const VarList& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].name != y[i].name || x[i].type != y[i].type) return false;
    return true;
  };
  return same(ai, b.inputs) && same(ao, b.outputs) &&
         equal_modulo_atom_names(rewrite_basic(a.body), rewrite_basic(b.body));
}

}  // namespace hbd::testing
