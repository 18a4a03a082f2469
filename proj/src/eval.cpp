#include "hbd/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hbd/errors.hpp"

namespace hbd {

namespace {

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

bool is_zero(const Value& v) { return (v.is_int() && v.as_int() == 0) || (v.is_real() && v.as_real() == 0.0); }

Value arith(Op op, const Value& a, const Value& b) {
  if (a.is_int()) {
    std::int64_t x = a.as_int(), y = b.as_int();
    switch (op) {
      case Op::Add: return Value::integer(wrap_add(x, y));
      case Op::Sub: return Value::integer(wrap_sub(x, y));
      case Op::Mul: return Value::integer(wrap_mul(x, y));
      case Op::Div:
        if (y == 0) return Value::bottom();
        if (x == std::numeric_limits<std::int64_t>::min() && y == -1) return Value::integer(x);
        return Value::integer(x / y);
      case Op::Min: return Value::integer(std::min(x, y));
      case Op::Max: return Value::integer(std::max(x, y));
      case Op::Lt: return Value::boolean(x < y);
      case Op::Le: return Value::boolean(x <= y);
      default: break;
    }
  } else {
    double x = a.as_real(), y = b.as_real();
    switch (op) {
      case Op::Add: return Value::real(x + y);
      case Op::Sub: return Value::real(x - y);
      case Op::Mul: return Value::real(x * y);
      case Op::Div:
        if (y == 0.0) return Value::bottom();
        return Value::real(x / y);
      case Op::Min: return Value::real(std::min(x, y));
      case Op::Max: return Value::real(std::max(x, y));
      case Op::Lt: return Value::boolean(x < y);
      case Op::Le: return Value::boolean(x <= y);
      default: break;
    }
  }
  return Value::bottom();
}

}  // namespace

Value eval_expr(const Expr& e, const Tuple& args, const EvalConfig& cfg) {
  switch (e.kind()) {
    case Expr::Kind::Literal: return e.literal_value();
    case Expr::Kind::Param: return args.at(static_cast<std::size_t>(e.param_index()));
    case Expr::Kind::Apply: break;
  }
  const auto& as = e.args();
  if (e.op() == Op::Ite) {
    Value c = eval_expr(as[0], args, cfg);
    if (c.is_bottom()) return c;
    return eval_expr(c.as_bool() ? as[1] : as[2], args, cfg);
  }
  Value a = eval_expr(as[0], args, cfg);
  if (op_arity(e.op()) == 1) {
    if (a.is_bottom()) return a;
    if (e.op() == Op::Not) return Value::boolean(!a.as_bool());
    if (a.is_int()) return Value::integer(wrap_sub(0, a.as_int()));
    return Value::real(-a.as_real());
  }
  Value b = eval_expr(as[1], args, cfg);
  if (e.op() == Op::Mul && !cfg.strict_multiply && (is_zero(a) || is_zero(b)))
    return e.type() == BaseType::Int ? Value::integer(0) : Value::real(0.0);
  if (a.is_bottom() || b.is_bottom()) return Value::bottom();
  switch (e.op()) {
    case Op::And: return Value::boolean(a.as_bool() && b.as_bool());
    case Op::Or: return Value::boolean(a.as_bool() || b.as_bool());
    case Op::Eq:
      if (a.is_real()) return Value::boolean(a.as_real() == b.as_real());
      return Value::boolean(identical(a, b));
    default: return arith(e.op(), a, b);
  }
}

Tuple eval_fn(const ExprFun& fn, const Tuple& args, const EvalConfig& cfg) {
  Tuple out;
  out.reserve(fn.bodies().size());
  for (const auto& b : fn.bodies()) out.push_back(eval_expr(b, args, cfg));
  return out;
}

void check_tuple(const TypeList& t, const Tuple& v, const char* what) {
  if (t.size() != v.size())
    throw TypeError(std::string(what) + ": expected " + std::to_string(t.size()) + " value(s) of type " +
                    to_string(t) + ", got " + std::to_string(v.size()));
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!v[i].inhabits(t[i]))
      throw TypeError(std::string(what) + ": value " + to_string(v[i]) + " at position " + std::to_string(i) +
                      " is not of type " + std::string(to_string(t[i])));
}

namespace {

struct Structural {
  const EvalConfig& cfg;
  EvalStats* stats;

  Tuple run(const Term& t, Tuple in) const {
    switch (t.kind()) {
      case Term::Kind::Id: return in;
      case Term::Kind::Split: {
        Tuple out = in;
        if (cfg.mutation == Mutation::SplitDropsSecond) out.resize(2 * in.size());
        else out.insert(out.end(), in.begin(), in.end());
        return out;
      }
      case Term::Kind::Sink: return {};
      case Term::Kind::Switch: {
        if (cfg.mutation == Mutation::SwitchIdentity) {
          const TypeList& ot = t.out_type();
          for (std::size_t i = 0; i < in.size(); ++i)
            if (!in[i].inhabits(ot[i])) in[i] = Value::bottom();
          return in;
        }
        std::size_t k = t.param().size();
        Tuple out(in.begin() + static_cast<std::ptrdiff_t>(k), in.end());
        out.insert(out.end(), in.begin(), in.begin() + static_cast<std::ptrdiff_t>(k));
        return out;
      }
      case Term::Kind::Atom: return eval_fn(t.fn(), in, cfg);
      case Term::Kind::Serial: return run(t.rhs(), run(t.lhs(), std::move(in)));
      case Term::Kind::Parallel: {
        std::size_t k = t.lhs().in_type().size();
        Tuple right(in.begin() + static_cast<std::ptrdiff_t>(k), in.end());
        in.resize(k);
        Tuple out = run(t.lhs(), std::move(in));
        Tuple r = run(t.rhs(), std::move(right));
        out.insert(out.end(), r.begin(), r.end());
        return out;
      }
      case Term::Kind::Feedback: return feedback(t.body(), in);
    }
    return {};
  }

  Tuple feedback(const Term& body, const Tuple& in) const {
    Value x = Value::bottom();
    Tuple arg;
    arg.reserve(in.size() + 1);
    for (std::size_t iter = 1;; ++iter) {
      if (iter > cfg.max_fix_iters)
        throw FixpointDivergence("feedback did not stabilise within " + std::to_string(cfg.max_fix_iters) +
                                 " iterations");
      arg.clear();
      arg.push_back(x);
      arg.insert(arg.end(), in.begin(), in.end());
      Tuple out = run(body, arg);
      if (stats) {
        ++stats->feedback_body_evals;
        stats->max_feedback_iters = std::max(stats->max_feedback_iters, iter);
      }
      if (cfg.mutation == Mutation::FeedbackSkipsFixpoint || identical(out[0], x)) {
        out.erase(out.begin());
        return out;
      }
      x = out[0];
    }
  }
};

}  // namespace

Tuple eval(const Term& term, const Tuple& input, const EvalConfig& cfg, EvalStats* stats) {
  check_tuple(term.in_type(), input, "term input");
  return Structural{cfg, stats}.run(term, input);
}

namespace {

struct NetBuilder {
  enum class WireKind : std::uint8_t { Input, AtomOut, Alias };
  struct Wire {
    WireKind kind;
    int target = -2;
  };
  std::vector<Wire> wires;
  struct RawNode {
    std::shared_ptr<const ExprFun> fn;
    std::vector<int> inputs, outputs;
  };
  std::vector<RawNode> nodes;

  int fresh(WireKind k) {
    wires.push_back({k});
    return static_cast<int>(wires.size()) - 1;
  }

  std::vector<int> compile(const Term& t, std::vector<int> in) {
    switch (t.kind()) {
      case Term::Kind::Id: return in;
      case Term::Kind::Split: {
        std::vector<int> out = in;
        out.insert(out.end(), in.begin(), in.end());
        return out;
      }
      case Term::Kind::Sink: return {};
      case Term::Kind::Switch: {
        auto k = static_cast<std::ptrdiff_t>(t.param().size());
        std::vector<int> out(in.begin() + k, in.end());
        out.insert(out.end(), in.begin(), in.begin() + k);
        return out;
      }
      case Term::Kind::Atom: {
        RawNode n{t.fn_ptr(), std::move(in), {}};
        for (std::size_t j = 0; j < t.out_type().size(); ++j) n.outputs.push_back(fresh(WireKind::AtomOut));
        nodes.push_back(n);
        return n.outputs;
      }
      case Term::Kind::Serial: return compile(t.rhs(), compile(t.lhs(), std::move(in)));
      case Term::Kind::Parallel: {
        auto k = static_cast<std::ptrdiff_t>(t.lhs().in_type().size());
        std::vector<int> right(in.begin() + k, in.end());
        in.resize(static_cast<std::size_t>(k));
        std::vector<int> out = compile(t.lhs(), std::move(in));
        std::vector<int> r = compile(t.rhs(), std::move(right));
        out.insert(out.end(), r.begin(), r.end());
        return out;
      }
      case Term::Kind::Feedback: {
        int p = fresh(WireKind::Alias);
        in.insert(in.begin(), p);
        std::vector<int> out = compile(t.body(), std::move(in));
        wires[static_cast<std::size_t>(p)].target = out[0];
        out.erase(out.begin());
        return out;
      }
    }
    return {};
  }

  // Follows alias chains; a chain that closes on itself carries no data.
  int resolve(int w) const {
    std::vector<bool> seen(wires.size(), false);
    while (w >= 0 && wires[static_cast<std::size_t>(w)].kind == WireKind::Alias) {
      if (seen[static_cast<std::size_t>(w)]) return -1;
      seen[static_cast<std::size_t>(w)] = true;
      w = wires[static_cast<std::size_t>(w)].target;
    }
    return w;
  }
};

}  // namespace

CompiledTerm::CompiledTerm(const Term& term) : in_(term.in_type()), out_(term.out_type()) {
  NetBuilder b;
  std::vector<int> ins;
  for (std::size_t i = 0; i < in_.size(); ++i) ins.push_back(b.fresh(NetBuilder::WireKind::Input));
  std::vector<int> outs = b.compile(term, ins);
  wire_count_ = b.wires.size();
  for (auto& n : b.nodes) {
    Node m{n.fn, {}, n.outputs};
    for (int w : n.inputs) m.inputs.push_back(b.resolve(w));
    nodes_.push_back(std::move(m));
  }
  for (int w : outs) outputs_.push_back(b.resolve(w));
}

Tuple CompiledTerm::run(const Tuple& input, const EvalConfig& cfg, Stats* stats) const {
  check_tuple(in_, input, "term input");
  std::vector<Value> vals(wire_count_);
  std::copy(input.begin(), input.end(), vals.begin());
  std::vector<std::size_t> updates(wire_count_, 0);
  Stats st;
  Tuple args;
  bool changed = true;
  while (changed) {
    changed = false;
    ++st.sweeps;
    for (const auto& n : nodes_) {
      args.clear();
      for (int w : n.inputs) args.push_back(w < 0 ? Value::bottom() : vals[static_cast<std::size_t>(w)]);
      Tuple res = eval_fn(*n.fn, args, cfg);
      for (std::size_t j = 0; j < res.size(); ++j) {
        auto w = static_cast<std::size_t>(n.outputs[j]);
        if (identical(vals[w], res[j])) continue;
        vals[w] = res[j];
        if (++updates[w] > cfg.max_fix_iters)
          throw FixpointDivergence("wire did not stabilise within " + std::to_string(cfg.max_fix_iters) +
                                   " updates");
        st.max_wire_updates = std::max(st.max_wire_updates, updates[w]);
        changed = true;
      }
    }
  }
  if (stats) *stats = st;
  Tuple out;
  out.reserve(outputs_.size());
  for (int w : outputs_) out.push_back(w < 0 ? Value::bottom() : vals[static_cast<std::size_t>(w)]);
  return out;
}

namespace {

double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Value random_value(BaseType t, std::mt19937_64& rng) {
  switch (t) {
    case BaseType::Bool: return Value::boolean((rng() & 1U) != 0);
    case BaseType::Int: return Value::integer(static_cast<std::int64_t>(rng() % 17) - 8);
    case BaseType::Real:
      if ((rng() & 1U) != 0) return Value::real(static_cast<double>(static_cast<std::int64_t>(rng() % 9) - 4));
      return Value::real(-8.0 + 16.0 * unit_real(rng));
  }
  return Value::bottom();
}

}  // namespace

std::vector<Tuple> sample_inputs(const TypeList& t, std::size_t n, std::uint64_t seed, bool include_bottom) {
  if (n == 0) return {};
  if (t.empty()) return {Tuple{}};
  bool all_bool = std::all_of(t.begin(), t.end(), [](BaseType b) { return b == BaseType::Bool; });
  if (all_bool) {
    std::size_t radix = include_bottom ? 3 : 2;
    std::size_t total = 1;
    for (std::size_t i = 0; i < t.size() && total <= n; ++i) total *= radix;
    if (total <= n) {
      std::vector<Tuple> all;
      all.reserve(total);
      for (std::size_t code = 0; code < total; ++code) {
        Tuple v;
        std::size_t c = code;
        for (std::size_t i = 0; i < t.size(); ++i, c /= radix) {
          std::size_t d = c % radix;
          v.push_back(d == 2 ? Value::bottom() : Value::boolean(d == 1));
        }
        all.push_back(std::move(v));
      }
      return all;
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<Tuple> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Tuple v;
    v.reserve(t.size());
    for (BaseType b : t) {
      if (include_bottom && rng() % 4 == 0) v.push_back(Value::bottom());
      else v.push_back(random_value(b, rng));
    }
    out.push_back(std::move(v));
  }
  return out;
}

MonotoneReport check_monotone(const Term& term, std::size_t samples, std::uint64_t seed, Engine engine,
                              const EvalConfig& cfg) {
  MonotoneReport rep;
  std::optional<CompiledTerm> compiled;
  if (engine == Engine::Compiled) compiled.emplace(term);
  auto run = [&](const Tuple& v) { return compiled ? compiled->run(v, cfg) : eval(term, v, cfg); };
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  // Small domains are enumerated; cycle through them so every pair is drawn afresh.
  const std::vector<Tuple> pool = sample_inputs(term.in_type(), samples, seed, true);
  for (std::size_t k = 0; k < samples && !pool.empty(); ++k) {
    const Tuple& hi = pool[k % pool.size()];
    Tuple lo = hi;
    for (auto& v : lo)
      if ((rng() & 1U) != 0) v = Value::bottom();
    Tuple lo_out = run(lo);
    Tuple hi_out = run(hi);
    ++rep.checked;
    if (!leq(lo_out, hi_out)) {
      rep.ok = false;
      rep.lower = lo;
      rep.upper = hi;
      rep.lower_out = lo_out;
      rep.upper_out = hi_out;
      return rep;
    }
  }
  return rep;
}

}  // namespace hbd
