#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hbd {

/// Scalar kinds carried by a single wire.
enum class BaseType : std::uint8_t { Real, Int, Bool };

std::string_view to_string(BaseType t);
std::optional<BaseType> parse_base_type(std::string_view s);
std::ostream& operator<<(std::ostream& os, BaseType t);

/// Ordered sequence of wire types; the empty list is the unit of concatenation.
using TypeList = std::vector<BaseType>;

TypeList concat(const TypeList& a, const TypeList& b);
std::string to_string(const TypeList& ts);

/// A named wire. Equality and ordering look at the name only: a document binds
/// each name to exactly one type.
struct Var {
  std::string name;
  BaseType type = BaseType::Real;

  friend bool operator==(const Var& a, const Var& b) { return a.name == b.name; }
  friend bool operator<(const Var& a, const Var& b) { return a.name < b.name; }
};

using VarList = std::vector<Var>;

/// T(x): the type list of a variable list.
TypeList types_of(const VarList& vars);
std::string to_string(const VarList& vars);

}  // namespace hbd

template <>
struct std::hash<hbd::Var> {
  std::size_t operator()(const hbd::Var& v) const noexcept { return std::hash<std::string>{}(v.name); }
};
