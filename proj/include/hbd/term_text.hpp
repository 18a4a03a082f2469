#pragma once

#include <map>
#include <string>
#include <string_view>

#include "hbd/term.hpp"

namespace hbd {

/// S-expression syntax for terms:
///
///   (id (Real Int))  (split Real)  (sink ())  (switch Real Int)
///   (atom Add (fn ((z Real) (u Real)) ((+ z u))))
///   (serial S T)  (par S T)  (feedback S)
///
/// Expressions inside `fn` use prefix operators + - * / neg min max < <= =
/// and or not if, integer literals (3), real literals (3.0, 1e-3) and
/// true/false. A single base type may stand for a one-element type list.
struct PrintOptions {
  /// Print atoms as `(atom Name)` without their function.
  bool compact_atoms = false;
};

std::string print_term(const Term& term, PrintOptions opts = {});
std::string print_exprfun(const ExprFun& fn);

/// Atoms that may be referenced by name with the short form `(atom Name)`.
using AtomTable = std::map<std::string, Term, std::less<>>;

/// Throws ParseError on malformed text, TypeError on ill-typed atom functions.
/// The returned term may still be ill-typed as a composition; call type_of.
Term parse_term(std::string_view text, const AtomTable* atoms = nullptr);
ExprFun parse_exprfun(std::string_view text);

}  // namespace hbd
