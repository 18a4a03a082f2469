#include "hbd/frontend/library.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hbd/errors.hpp"

namespace hbd::frontend {

namespace {

struct Ctx {
  const std::string& kind;
  const Params& params;
  std::vector<std::string> allowed;

  [[noreturn]] void fail(const std::string& msg) const { throw SchemaError(kind + ": " + msg); }

  const Param* find(const std::string& key) {
    auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
  }

  BaseType type(BaseType dflt = BaseType::Real) {
    allowed.push_back("type");
    const Param* p = find("type");
    if (!p) return dflt;
    const auto* s = std::get_if<std::string>(p);
    if (!s) fail("parameter 'type' must be a type name");
    auto t = parse_base_type(*s);
    if (!t) fail("unknown type '" + *s + "'");
    return *t;
  }

  /// Numeric or boolean parameter coerced to `t`.
  Value value(const std::string& key, BaseType t, std::optional<Value> dflt) {
    allowed.push_back(key);
    const Param* p = find(key);
    if (!p) {
      if (dflt) return *dflt;
      fail("missing parameter '" + key + "'");
    }
    const auto* v = std::get_if<Value>(p);
    if (!v || v->is_bottom()) fail("parameter '" + key + "' must be a literal");
    switch (t) {
      case BaseType::Real:
        if (v->is_real()) return *v;
        if (v->is_int()) return Value::real(static_cast<double>(v->as_int()));
        break;
      case BaseType::Int:
        if (v->is_int()) return *v;
        if (v->is_real() && std::nearbyint(v->as_real()) == v->as_real() && std::abs(v->as_real()) < 9.0e15)
          return Value::integer(static_cast<std::int64_t>(v->as_real()));
        break;
      case BaseType::Bool:
        if (v->is_bool()) return *v;
        break;
    }
    throw TypeError(kind + ": parameter '" + key + "' is not a " + std::string(to_string(t)));
  }

  std::string word(const std::string& key, const std::vector<std::string>& choices, const std::string& dflt) {
    allowed.push_back(key);
    const Param* p = find(key);
    if (!p) return dflt;
    const auto* s = std::get_if<std::string>(p);
    if (!s || std::find(choices.begin(), choices.end(), *s) == choices.end()) {
      std::string all;
      for (const auto& c : choices) all += (all.empty() ? "" : ", ") + c;
      fail("parameter '" + key + "' must be one of " + all);
    }
    return *s;
  }

  void done() const {
    for (const auto& [k, v] : params)
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) fail("unknown parameter '" + k + "'");
  }
};

Value zero_of(BaseType t) {
  switch (t) {
    case BaseType::Real: return Value::real(0.0);
    case BaseType::Int: return Value::integer(0);
    case BaseType::Bool: return Value::boolean(false);
  }
  return {};
}

void require_numeric(const std::string& kind, BaseType t) {
  if (t == BaseType::Bool) throw TypeError(kind + ": Bool is not a numeric type");
}

Var pv(const char* name, BaseType t) { return Var{name, t}; }

BlockDef binary(const std::string& kind, BaseType in, BaseType out, const std::function<Expr(Expr, Expr)>& f) {
  VarList ins{pv("in1", in), pv("in2", in)};
  return BlockDef{kind, ins, {pv("out", out)}, ExprFun(ins, {f(ex::var("in1"), ex::var("in2"))}), {{"in1", "in2"}},
                  true, {}};
}

BlockDef unary(const std::string& kind, BaseType in, BaseType out, const std::function<Expr(Expr)>& f) {
  VarList ins{pv("in", in)};
  return BlockDef{kind, ins, {pv("out", out)}, ExprFun(ins, {f(ex::var("in"))}), {{"in"}}, true, {}};
}

using Builder = std::function<BlockDef(Ctx&)>;

BlockDef arith(Ctx& c, Op op) {
  BaseType t = c.type();
  require_numeric(c.kind, t);
  return binary(c.kind, t, t, [op](Expr a, Expr b) { return Expr::apply(op, {std::move(a), std::move(b)}); });
}

BlockDef minmax(Ctx& c, Op op) {
  BaseType t = c.type();
  require_numeric(c.kind, t);
  return binary(c.kind, t, t, [op](Expr a, Expr b) { return Expr::apply(op, {std::move(a), std::move(b)}); });
}

BlockDef logical(Ctx& c, Op op) {
  return binary(c.kind, BaseType::Bool, BaseType::Bool,
                [op](Expr a, Expr b) { return Expr::apply(op, {std::move(a), std::move(b)}); });
}

const std::map<std::string, Builder>& table() {
  static const std::map<std::string, Builder> t = {
      {"Add", [](Ctx& c) { return arith(c, Op::Add); }},
      {"Sub", [](Ctx& c) { return arith(c, Op::Sub); }},
      {"Product", [](Ctx& c) { return arith(c, Op::Mul); }},
      {"Divide", [](Ctx& c) { return arith(c, Op::Div); }},
      {"Min", [](Ctx& c) { return minmax(c, Op::Min); }},
      {"Max", [](Ctx& c) { return minmax(c, Op::Max); }},
      {"Gain",
       [](Ctx& c) {
         BaseType t = c.type();
         require_numeric(c.kind, t);
         Value k = c.value("gain", t, std::nullopt);
         return unary(c.kind, t, t, [k](Expr x) { return ex::mul(ex::lit(k), std::move(x)); });
       }},
      {"Constant",
       [](Ctx& c) {
         BaseType t = c.type();
         Value v = c.value("value", t, std::nullopt);
         return BlockDef{c.kind, {}, {pv("out", t)}, ExprFun({}, {ex::lit(v)}), {{}}, true, {}};
       }},
      {"UnitDelay",
       [](Ctx& c) {
         BaseType t = c.type();
         Value init = c.value("init", t, zero_of(t));
         c.allowed.push_back("state");
         if (const Param* p = c.find("state")) {
           const auto* s = std::get_if<std::string>(p);
           if (!s || s->empty() || s->find_first_of(".' ") != std::string::npos)
             c.fail("parameter 'state' must be a variable name");
         }
         VarList ins{pv("x", t), pv("s", t)};
         return BlockDef{c.kind,
                         {pv("in", t)},
                         {pv("out", t)},
                         ExprFun(ins, {ex::var("s"), ex::var("x")}),
                         {{"s"}, {"x"}},
                         true,
                         {StateSpec{t, init}}};
       }},
      {"Split",
       [](Ctx& c) {
         BaseType t = c.type();
         VarList ins{pv("in", t)};
         return BlockDef{c.kind, ins, {pv("out1", t), pv("out2", t)},
                         ExprFun(ins, {ex::var("in"), ex::var("in")}), {{"in"}, {"in"}}, true, {}};
       }},
      {"Relational",
       [](Ctx& c) {
         BaseType t = c.type();
         std::string op = c.word("op", {"<", "<=", ">", ">=", "==", "!="}, "<");
         if (t == BaseType::Bool && op != "==" && op != "!=") throw TypeError(c.kind + ": Bool supports only == and !=");
         return binary(c.kind, t, BaseType::Bool, [op](Expr a, Expr b) {
           if (op == "<") return ex::lt(a, b);
           if (op == "<=") return ex::le(a, b);
           if (op == ">") return ex::lt(b, a);
           if (op == ">=") return ex::le(b, a);
           if (op == "==") return ex::eq(a, b);
           return ex::lnot(ex::eq(a, b));
         });
       }},
      {"LogicalAnd", [](Ctx& c) { return logical(c, Op::And); }},
      {"LogicalOr", [](Ctx& c) { return logical(c, Op::Or); }},
      {"LogicalNot",
       [](Ctx& c) { return unary(c.kind, BaseType::Bool, BaseType::Bool, [](Expr x) { return ex::lnot(x); }); }},
      {"Switch",
       [](Ctx& c) {
         BaseType t = c.type();
         VarList ins{pv("ctrl", BaseType::Bool), pv("in1", t), pv("in2", t)};
         return BlockDef{c.kind, ins, {pv("out", t)},
                         ExprFun(ins, {ex::ite(ex::var("ctrl"), ex::var("in1"), ex::var("in2"))}),
                         {{"ctrl", "in1", "in2"}}, true, {}};
       }},
      {"Identity",
       [](Ctx& c) {
         BaseType t = c.type();
         return unary(c.kind, t, t, [](Expr x) { return x; });
       }},
      {"Terminator",
       [](Ctx& c) {
         BaseType t = c.type();
         VarList ins{pv("in", t)};
         return BlockDef{c.kind, ins, {}, ExprFun(ins, {}), {}, true, {}};
       }},
  };
  return t;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a = {{"SplitBlk", "Split"}, {"SwitchBlk", "Switch"}};
  return a;
}

}  // namespace

bool is_library_kind(const std::string& kind) { return table().count(kind) > 0 || aliases().count(kind) > 0; }

std::vector<std::string> library_kinds() {
  std::vector<std::string> out;
  for (const auto& [k, b] : table()) out.push_back(k);
  return out;
}

BlockDef instantiate(const std::string& kind, const Params& params) {
  std::string key = kind;
  if (auto a = aliases().find(kind); a != aliases().end()) key = a->second;
  auto it = table().find(key);
  if (it == table().end()) throw SchemaError("unknown block kind '" + kind + "'");
  Ctx c{key, params, {}};
  BlockDef def = it->second(c);
  c.done();
  return def;
}

}  // namespace hbd::frontend
