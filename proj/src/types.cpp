#include "hbd/types.hpp"

#include <sstream>

namespace hbd {

std::string_view to_string(BaseType t) {
  switch (t) {
    case BaseType::Real: return "Real";
    case BaseType::Int: return "Int";
    case BaseType::Bool: return "Bool";
  }
  return "?";
}

std::optional<BaseType> parse_base_type(std::string_view s) {
  if (s == "Real") return BaseType::Real;
  if (s == "Int") return BaseType::Int;
  if (s == "Bool") return BaseType::Bool;
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, BaseType t) { return os << to_string(t); }

TypeList concat(const TypeList& a, const TypeList& b) {
  TypeList r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::string to_string(const TypeList& ts) {
  std::string s = "(";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) s += ' ';
    s += to_string(ts[i]);
  }
  return s + ")";
}

TypeList types_of(const VarList& vars) {
  TypeList r;
  r.reserve(vars.size());
  for (const auto& v : vars) r.push_back(v.type);
  return r;
}

std::string to_string(const VarList& vars) {
  std::string s = "(";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ',';
    s += vars[i].name;
  }
  return s + ")";
}

}  // namespace hbd
