#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "hbd/types.hpp"

namespace hbd {

/// Element of a flat pointed cpo: either bottom (unknown) or a concrete scalar.
class Value {
 public:
  Value() = default;
  static Value bottom() { return Value{}; }
  static Value real(double r) { return Value{Rep{r}}; }
  static Value integer(std::int64_t i) { return Value{Rep{i}}; }
  static Value boolean(bool b) { return Value{Rep{b}}; }

  bool is_bottom() const { return std::holds_alternative<std::monostate>(rep_); }
  bool is_real() const { return std::holds_alternative<double>(rep_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(rep_); }
  bool is_bool() const { return std::holds_alternative<bool>(rep_); }

  double as_real() const { return std::get<double>(rep_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(rep_); }
  bool as_bool() const { return std::get<bool>(rep_); }

  /// Bottom inhabits every type; a concrete value only its own kind.
  bool inhabits(BaseType t) const;

  /// Exact identity (bit-level for reals, NaN equal to NaN).
  friend bool identical(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) { return identical(a, b); }

 private:
  using Rep = std::variant<std::monostate, double, std::int64_t, bool>;
  explicit Value(Rep r) : rep_(r) {}
  Rep rep_;
};

using Tuple = std::vector<Value>;

/// Flat order: a <= b iff a is bottom or a equals b.
bool leq(const Value& a, const Value& b);
bool leq(const Tuple& a, const Tuple& b);

/// Agreement used by property suites: bottom only matches bottom, Int/Bool
/// compare exactly, reals within `rel_tol` relative error.
bool agree(const Value& a, const Value& b, double rel_tol);
bool agree(const Tuple& a, const Tuple& b, double rel_tol);

std::string to_string(const Value& v);
std::string to_string(const Tuple& t);
std::ostream& operator<<(std::ostream& os, const Value& v);

/// Shortest round-trippable decimal form of a real; always contains '.', 'e',
/// "inf" or "nan" so it never reads back as an integer.
std::string format_real(double r);

}  // namespace hbd
