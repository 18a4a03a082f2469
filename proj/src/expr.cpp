#include "hbd/expr.hpp"

#include <map>

#include "hbd/errors.hpp"

namespace hbd {

std::string_view op_symbol(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Neg: return "neg";
    case Op::Min: return "min";
    case Op::Max: return "max";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Eq: return "=";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Not: return "not";
    case Op::Ite: return "if";
  }
  return "?";
}

std::size_t op_arity(Op op) {
  switch (op) {
    case Op::Neg:
    case Op::Not: return 1;
    case Op::Ite: return 3;
    default: return 2;
  }
}

Expr Expr::literal(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->literal = v;
  return Expr(std::move(n));
}

Expr Expr::param(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Param;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::apply(Op op, std::vector<Expr> args) {
  if (args.size() != op_arity(op))
    throw TypeError("operator '" + std::string(op_symbol(op)) + "' expects " + std::to_string(op_arity(op)) +
                    " arguments, got " + std::to_string(args.size()));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Apply;
  n->op = op;
  n->args = std::move(args);
  return Expr(std::move(n));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Literal: return identical(a.literal_value(), b.literal_value());
    case Expr::Kind::Param: return a.param_name() == b.param_name() && a.param_index() == b.param_index();
    case Expr::Kind::Apply: return a.op() == b.op() && a.args() == b.args();
  }
  return false;
}

namespace ex {
Expr lit(Value v) { return Expr::literal(v); }
Expr real(double r) { return Expr::literal(Value::real(r)); }
Expr integer(std::int64_t i) { return Expr::literal(Value::integer(i)); }
Expr boolean(bool b) { return Expr::literal(Value::boolean(b)); }
Expr var(std::string name) { return Expr::param(std::move(name)); }
Expr add(Expr a, Expr b) { return Expr::apply(Op::Add, {std::move(a), std::move(b)}); }
Expr sub(Expr a, Expr b) { return Expr::apply(Op::Sub, {std::move(a), std::move(b)}); }
Expr mul(Expr a, Expr b) { return Expr::apply(Op::Mul, {std::move(a), std::move(b)}); }
Expr div(Expr a, Expr b) { return Expr::apply(Op::Div, {std::move(a), std::move(b)}); }
Expr neg(Expr a) { return Expr::apply(Op::Neg, {std::move(a)}); }
Expr min(Expr a, Expr b) { return Expr::apply(Op::Min, {std::move(a), std::move(b)}); }
Expr max(Expr a, Expr b) { return Expr::apply(Op::Max, {std::move(a), std::move(b)}); }
Expr lt(Expr a, Expr b) { return Expr::apply(Op::Lt, {std::move(a), std::move(b)}); }
Expr le(Expr a, Expr b) { return Expr::apply(Op::Le, {std::move(a), std::move(b)}); }
Expr eq(Expr a, Expr b) { return Expr::apply(Op::Eq, {std::move(a), std::move(b)}); }
Expr land(Expr a, Expr b) { return Expr::apply(Op::And, {std::move(a), std::move(b)}); }
Expr lor(Expr a, Expr b) { return Expr::apply(Op::Or, {std::move(a), std::move(b)}); }
Expr lnot(Expr a) { return Expr::apply(Op::Not, {std::move(a)}); }
Expr ite(Expr c, Expr t, Expr e) { return Expr::apply(Op::Ite, {std::move(c), std::move(t), std::move(e)}); }
}  // namespace ex

namespace {

bool numeric(BaseType t) { return t == BaseType::Real || t == BaseType::Int; }

struct Resolver {
  const std::map<std::string, std::size_t>& index;
  const VarList& params;

  [[noreturn]] void fail(const std::string& msg) const { throw TypeError("expression: " + msg); }

  Expr resolve(const Expr& e) const;
};

}  // namespace

// Resolution rebuilds the tree with parameter indices and result types filled in.
class ExprResolverAccess {
 public:
  static Expr make(Expr::Kind kind, Value lit, std::string name, int index, Op op, std::vector<Expr> args,
                   BaseType type);
};

namespace {

Expr Resolver::resolve(const Expr& e) const {
  switch (e.kind()) {
    case Expr::Kind::Literal: {
      const Value& v = e.literal_value();
      if (v.is_bottom()) fail("bottom is not a literal");
      BaseType t = v.is_real() ? BaseType::Real : v.is_int() ? BaseType::Int : BaseType::Bool;
      return ExprResolverAccess::make(Expr::Kind::Literal, v, {}, -1, Op::Add, {}, t);
    }
    case Expr::Kind::Param: {
      auto it = index.find(e.param_name());
      if (it == index.end()) fail("unknown parameter '" + e.param_name() + "'");
      return ExprResolverAccess::make(Expr::Kind::Param, {}, e.param_name(), static_cast<int>(it->second), Op::Add,
                                      {}, params[it->second].type);
    }
    case Expr::Kind::Apply: break;
  }
  std::vector<Expr> args;
  args.reserve(e.args().size());
  for (const auto& a : e.args()) args.push_back(resolve(a));
  const std::string sym(op_symbol(e.op()));
  BaseType result = BaseType::Bool;
  switch (e.op()) {
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Min:
    case Op::Max:
      if (!numeric(args[0].type()) || args[0].type() != args[1].type())
        fail("'" + sym + "' needs two numeric operands of the same type");
      result = args[0].type();
      break;
    case Op::Neg:
      if (!numeric(args[0].type())) fail("'neg' needs a numeric operand");
      result = args[0].type();
      break;
    case Op::Lt:
    case Op::Le:
      if (!numeric(args[0].type()) || args[0].type() != args[1].type())
        fail("'" + sym + "' needs two numeric operands of the same type");
      break;
    case Op::Eq:
      if (args[0].type() != args[1].type()) fail("'=' needs operands of the same type");
      break;
    case Op::And:
    case Op::Or:
      if (args[0].type() != BaseType::Bool || args[1].type() != BaseType::Bool)
        fail("'" + sym + "' needs Bool operands");
      break;
    case Op::Not:
      if (args[0].type() != BaseType::Bool) fail("'not' needs a Bool operand");
      break;
    case Op::Ite:
      if (args[0].type() != BaseType::Bool) fail("'if' condition must be Bool");
      if (args[1].type() != args[2].type()) fail("'if' branches must have the same type");
      result = args[1].type();
      break;
  }
  return ExprResolverAccess::make(Expr::Kind::Apply, {}, {}, -1, e.op(), std::move(args), result);
}

void collect_params(const Expr& e, std::set<std::size_t>& out) {
  if (e.kind() == Expr::Kind::Param) out.insert(static_cast<std::size_t>(e.param_index()));
  for (const auto& a : e.args()) collect_params(a, out);
}

}  // namespace

ExprFun::ExprFun(VarList params, std::vector<Expr> bodies) : params_(std::move(params)) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!index.emplace(params_[i].name, i).second)
      throw TypeError("expression: duplicate parameter '" + params_[i].name + "'");
  }
  Resolver r{index, params_};
  bodies_.reserve(bodies.size());
  for (const auto& b : bodies) {
    bodies_.push_back(r.resolve(b));
    out_types_.push_back(bodies_.back().type());
  }
  in_types_ = types_of(params_);
}

std::set<std::size_t> ExprFun::used_params(std::size_t out) const {
  std::set<std::size_t> s;
  collect_params(bodies_.at(out), s);
  return s;
}

ExprFun ExprFun::project(std::size_t out, const std::vector<std::size_t>& keep) const {
  VarList ps;
  for (std::size_t k : keep) ps.push_back(params_.at(k));
  for (std::size_t used : used_params(out)) {
    bool kept = false;
    for (std::size_t k : keep) kept = kept || k == used;
    if (!kept)
      throw TypeError("projection of output " + std::to_string(out) + " drops parameter '" + params_[used].name +
                      "' that it reads");
  }
  return ExprFun(std::move(ps), {bodies_.at(out)});
}

bool operator==(const ExprFun& a, const ExprFun& b) {
  if (a.params_.size() != b.params_.size() || a.in_types_ != b.in_types_) return false;
  for (std::size_t i = 0; i < a.params_.size(); ++i)
    if (a.params_[i].name != b.params_[i].name) return false;
  return a.bodies_ == b.bodies_;
}

Expr ExprResolverAccess::make(Expr::Kind kind, Value lit, std::string name, int index, Op op,
                              std::vector<Expr> args, BaseType type) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->literal = lit;
  n->name = std::move(name);
  n->index = index;
  n->op = op;
  n->args = std::move(args);
  n->type = type;
  return Expr(std::move(n));
}

}  // namespace hbd
