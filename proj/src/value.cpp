#include "hbd/value.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace hbd {

bool Value::inhabits(BaseType t) const {
  switch (t) {
    case BaseType::Real: return is_bottom() || is_real();
    case BaseType::Int: return is_bottom() || is_int();
    case BaseType::Bool: return is_bottom() || is_bool();
  }
  return false;
}

bool identical(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (a.is_real()) {
    double x = a.as_real(), y = b.as_real();
    if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
    return x == y && std::signbit(x) == std::signbit(y);
  }
  return a.rep_ == b.rep_;
}

bool leq(const Value& a, const Value& b) { return a.is_bottom() || identical(a, b); }

bool leq(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!leq(a[i], b[i])) return false;
  return true;
}

bool agree(const Value& a, const Value& b, double rel_tol) {
  if (a.is_bottom() || b.is_bottom()) return a.is_bottom() && b.is_bottom();
  if (a.is_real() && b.is_real()) {
    double x = a.as_real(), y = b.as_real();
    if (x == y) return true;
    if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
    return std::fabs(x - y) <= rel_tol * std::max(std::fabs(x), std::fabs(y));
  }
  return identical(a, b);
}

bool agree(const Tuple& a, const Tuple& b, double rel_tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!agree(a[i], b[i], rel_tol)) return false;
  return true;
}

std::string format_real(double r) {
  if (std::isnan(r)) return "nan";
  if (std::isinf(r)) return r > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), r);
  std::string s(buf.data(), res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string to_string(const Value& v) {
  if (v.is_bottom()) return "bot";
  if (v.is_real()) return format_real(v.as_real());
  if (v.is_int()) return std::to_string(v.as_int());
  return v.as_bool() ? "true" : "false";
}

std::string to_string(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ", ";
    s += to_string(t[i]);
  }
  return s + ")";
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << to_string(v); }

}  // namespace hbd
