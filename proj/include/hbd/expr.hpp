#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hbd/types.hpp"
#include "hbd/value.hpp"

namespace hbd {

/// Operators of the atom expression language. There is deliberately no way to
/// test for bottom, so every expression denotes a monotone function.
enum class Op : std::uint8_t { Add, Sub, Mul, Div, Neg, Min, Max, Lt, Le, Eq, And, Or, Not, Ite };

std::string_view op_symbol(Op op);
std::size_t op_arity(Op op);

/// Immutable expression tree over the parameters of an ExprFun.
class Expr {
 public:
  enum class Kind : std::uint8_t { Literal, Param, Apply };

  static Expr literal(Value v);
  static Expr param(std::string name);
  static Expr apply(Op op, std::vector<Expr> args);

  Kind kind() const { return node_->kind; }
  const Value& literal_value() const { return node_->literal; }
  const std::string& param_name() const { return node_->name; }
  /// Position of the parameter in the enclosing ExprFun (set once resolved).
  int param_index() const { return node_->index; }
  Op op() const { return node_->op; }
  const std::vector<Expr>& args() const { return node_->args; }
  /// Result type, known once the expression has been resolved by an ExprFun.
  BaseType type() const { return node_->type; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  friend class ExprFun;
  friend class ExprResolverAccess;
  struct Node {
    Kind kind = Kind::Literal;
    Value literal;
    std::string name;
    int index = -1;
    Op op = Op::Add;
    std::vector<Expr> args;
    BaseType type = BaseType::Real;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Convenience builders.
namespace ex {
Expr lit(Value v);
Expr real(double r);
Expr integer(std::int64_t i);
Expr boolean(bool b);
Expr var(std::string name);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr neg(Expr a);
Expr min(Expr a, Expr b);
Expr max(Expr a, Expr b);
Expr lt(Expr a, Expr b);
Expr le(Expr a, Expr b);
Expr eq(Expr a, Expr b);
Expr land(Expr a, Expr b);
Expr lor(Expr a, Expr b);
Expr lnot(Expr a);
Expr ite(Expr c, Expr t, Expr e);
}  // namespace ex

/// Constructive function [x1..xn ~> e1..em]: typed parameters and one
/// expression per output. Construction resolves names and type-checks.
class ExprFun {
 public:
  /// Throws TypeError on unknown names, duplicate parameters or ill-typed bodies.
  ExprFun(VarList params, std::vector<Expr> bodies);

  const VarList& params() const { return params_; }
  const std::vector<Expr>& bodies() const { return bodies_; }
  const TypeList& in_types() const { return in_types_; }
  const TypeList& out_types() const { return out_types_; }

  /// Parameter indices body `out` reads.
  std::set<std::size_t> used_params(std::size_t out) const;

  /// Single-output function computing body `out` from the parameters listed in
  /// `keep` (indices, in the order given). Throws TypeError if the body reads a
  /// parameter outside `keep`.
  ExprFun project(std::size_t out, const std::vector<std::size_t>& keep) const;

  friend bool operator==(const ExprFun& a, const ExprFun& b);

 private:
  VarList params_;
  std::vector<Expr> bodies_;
  TypeList in_types_;
  TypeList out_types_;
};

}  // namespace hbd
