#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "hbd/expr.hpp"
#include "hbd/types.hpp"

namespace hbd {

/// Immutable term of the block-diagram algebra. Nodes are shared, so copying a
/// Term is cheap and subterms built once may appear under several parents.
///
/// Every node records its typing `in -> out` when it is built; ill-typed nodes
/// can be represented (the parser and tests need them) but `type_of` rejects
/// them with a TypeError naming the offending subterm.
class Term {
 public:
  enum class Kind : std::uint8_t { Id, Split, Sink, Switch, Atom, Serial, Parallel, Feedback };

  /// Id(ε).
  Term();

  static Term id(TypeList t);
  static Term split(TypeList t);
  static Term sink(TypeList t);
  static Term switch_types(TypeList t, TypeList u);
  static Term atom(std::string name, std::shared_ptr<const ExprFun> fn);
  static Term atom(std::string name, ExprFun fn);
  /// Unchecked structural constructors; prefer mk_serial/mk_parallel/mk_feedback.
  static Term serial(Term first, Term second);
  static Term parallel(Term left, Term right);
  static Term feedback(Term body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  /// Type parameters of constants (`t` and, for Switch, `t'`).
  const TypeList& param() const { return node_->p1; }
  const TypeList& param2() const { return node_->p2; }

  const std::string& atom_name() const { return node_->name; }
  const ExprFun& fn() const { return *node_->fn; }
  const std::shared_ptr<const ExprFun>& fn_ptr() const { return node_->fn; }

  /// Children: first/second of Serial, left/right of Parallel, body of Feedback.
  const Term& lhs() const { return node_->children[0]; }
  const Term& rhs() const { return node_->children[1]; }
  const Term& body() const { return node_->children[0]; }

  bool well_typed() const { return node_->typed; }
  /// Typing; throws TypeError on ill-typed terms.
  const TypeList& in_type() const;
  const TypeList& out_type() const;

  /// Number of nodes counted as a tree.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }
  /// Node identity, used for sharing statistics.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind = Kind::Id;
    TypeList p1, p2;
    std::string name;
    std::shared_ptr<const ExprFun> fn;
    std::vector<Term> children;
    bool typed = false;
    TypeList in, out;
    std::string error;
    std::size_t size = 1;
    std::size_t hash = 0;
  };
  explicit Term(std::shared_ptr<Node> n);
  static Term finish(std::shared_ptr<Node> n);
  std::shared_ptr<const Node> node_;
};

using Typing = std::pair<TypeList, TypeList>;

/// (input type, output type); throws TypeError naming the offending subterm.
Typing type_of(const Term& term);

/// Checked constructors.
Term mk_serial(Term first, Term second);
Term mk_parallel(Term left, Term right);
/// Feeds the first output back into the first input; both must exist and have
/// the same BaseType.
Term mk_feedback(Term body);
/// n-fold mk_feedback; feedback_n(0, S) == S.
Term feedback_n(std::size_t n, Term body);
/// Arb(a) = feedback(Split(a)) : () -> (a).
Term mk_arb(BaseType a);

/// True iff the term is syntactically Arb(a).
bool is_arb(const Term& term);
/// Feedback nodes that are not the root of an Arb subterm.
std::size_t count_feedback_outside_arb(const Term& term);
/// All Feedback nodes (tree count).
std::size_t count_feedback(const Term& term);

/// Left-to-right application of the unit, associativity and identity laws:
/// Id(t);;S = S;;Id(t') = S, Id()||S = S||Id() = S, right-nested ;; and ||,
/// Id(t)||Id(t') = Id(t t'), and constants that only move an empty tuple
/// (Sink(), Split(), Switch((),t), Switch(t,())) replaced by identities.
/// Preserves typing and semantics, never grows the term and is idempotent.
Term rewrite_basic(const Term& term);

/// Same signature and bodies up to renaming of parameters.
bool fn_alpha_equal(const ExprFun& a, const ExprFun& b);

/// Structural equality that ignores atom names and parameter names.
bool equal_modulo_atom_names(const Term& a, const Term& b);

}  // namespace hbd

template <>
struct std::hash<hbd::Term> {
  std::size_t operator()(const hbd::Term& t) const noexcept { return t.hash(); }
};
