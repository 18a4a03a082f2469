#include "hbd/io_diagram.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "hbd/errors.hpp"

namespace hbd {

bool contains(const VarList& x, const std::string& name) {
  return std::any_of(x.begin(), x.end(), [&](const Var& v) { return v.name == name; });
}

VarList inter(const VarList& x, const VarList& y) {
  VarList r;
  for (const auto& v : x)
    if (contains(y, v.name)) r.push_back(v);
  return r;
}

VarList minus(const VarList& x, const VarList& y) {
  VarList r;
  for (const auto& v : x)
    if (!contains(y, v.name)) r.push_back(v);
  return r;
}

VarList union_ord(const VarList& x, const VarList& y) {
  VarList r = x;
  for (const auto& v : minus(y, x)) r.push_back(v);
  return r;
}

bool is_perm(const VarList& x, const VarList& y) {
  if (x.size() != y.size()) return false;
  std::map<std::string, long> count;
  for (const auto& v : x) ++count[v.name];
  for (const auto& v : y) --count[v.name];
  return std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 0; });
}

bool pairwise_distinct(const VarList& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i].name == x[j].name) return false;
  return true;
}

namespace {

Term switch_one(const VarList& x, std::size_t from, const Var& u) {
  if (from == x.size()) return mk_arb(u.type);
  VarList rest(x.begin() + static_cast<std::ptrdiff_t>(from) + 1, x.end());
  if (x[from].name == u.name) return mk_parallel(Term::id({u.type}), Term::sink(types_of(rest)));
  return mk_parallel(Term::sink({x[from].type}), switch_one(x, from + 1, u));
}

Term switch_from(const VarList& x, const VarList& y, std::size_t from) {
  std::size_t left = y.size() - from;
  if (left == 0) return Term::sink(types_of(x));
  if (left == 1) return switch_one(x, 0, y[from]);
  return mk_serial(Term::split(types_of(x)),
                   mk_parallel(switch_one(x, 0, y[from]), switch_from(x, y, from + 1)));
}

bool same_names(const VarList& x, const VarList& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].name != y[i].name) return false;
  return true;
}

}  // namespace

Term switch_vars(const VarList& x, const VarList& y) {
  if (same_names(x, y)) return Term::id(types_of(x));
  return switch_from(x, y, 0);
}

void check_io_diagram(const IoDiagram& d) {
  if (!pairwise_distinct(d.inputs)) throw TypeError("io-diagram inputs " + to_string(d.inputs) + " are not distinct");
  if (!pairwise_distinct(d.outputs))
    throw TypeError("io-diagram outputs " + to_string(d.outputs) + " are not distinct");
  auto [in, out] = type_of(d.body);
  if (in != types_of(d.inputs) || out != types_of(d.outputs))
    throw TypeError("io-diagram body has typing " + to_string(in) + " -> " + to_string(out) + " but interface " +
                    to_string(d.inputs) + " -> " + to_string(d.outputs) + " needs " + to_string(types_of(d.inputs)) +
                    " -> " + to_string(types_of(d.outputs)));
}

IoDiagram make_io_diagram(VarList inputs, VarList outputs, Term body) {
  IoDiagram d{std::move(inputs), std::move(outputs), std::move(body)};
  check_io_diagram(d);
  return d;
}

std::string describe(const IoDiagram& d) { return "(" + to_string(d.inputs) + ", " + to_string(d.outputs) + ")"; }

VarList vars_between(const IoDiagram& a, const IoDiagram& b) { return inter(a.outputs, b.inputs); }

namespace {

VarList cat(const VarList& a, const VarList& b) {
  VarList r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace

IoDiagram named_serial(const IoDiagram& a, const IoDiagram& b) {
  VarList clash = inter(minus(a.outputs, b.inputs), b.outputs);
  if (!clash.empty())
    throw CompositionError("serial composition of " + describe(a) + " and " + describe(b) + ": outputs " +
                           to_string(clash) + " would be produced twice");
  VarList v = vars_between(a, b);
  VarList x = minus(b.inputs, v);
  VarList y = minus(a.outputs, v);
  VarList in = union_ord(a.inputs, x);
  VarList out = cat(y, b.outputs);
  Term body = mk_serial(switch_vars(in, cat(a.inputs, x)), mk_parallel(a.body, switch_vars(x, x)));
  body = mk_serial(body, switch_vars(cat(a.outputs, x), cat(y, b.inputs)));
  body = mk_serial(body, mk_parallel(switch_vars(y, y), b.body));
  return make_io_diagram(std::move(in), std::move(out), std::move(body));
}

IoDiagram named_parallel(const IoDiagram& a, const IoDiagram& b) {
  VarList clash = inter(a.outputs, b.outputs);
  if (!clash.empty())
    throw CompositionError("parallel composition of " + describe(a) + " and " + describe(b) + ": outputs " +
                           to_string(clash) + " occur on both sides");
  VarList in = union_ord(a.inputs, b.inputs);
  Term body = mk_serial(switch_vars(in, cat(a.inputs, b.inputs)), mk_parallel(a.body, b.body));
  return make_io_diagram(std::move(in), cat(a.outputs, b.outputs), std::move(body));
}

IoDiagram named_feedback(const IoDiagram& a) {
  VarList v = vars_between(a, a);
  VarList in = minus(a.inputs, v);
  VarList out = minus(a.outputs, v);
  Term body = mk_serial(mk_serial(switch_vars(cat(v, in), a.inputs), a.body), switch_vars(a.outputs, cat(v, out)));
  return make_io_diagram(std::move(in), std::move(out), feedback_n(v.size(), std::move(body)));
}

namespace {

Value canonical(BaseType t, int k) {
  switch (t) {
    case BaseType::Real: return Value::real(k == 0 ? 0.0 : 2.5);
    case BaseType::Int: return Value::integer(k == 0 ? 0 : 3);
    case BaseType::Bool: return Value::boolean(k != 0);
  }
  return Value::bottom();
}

std::vector<Tuple> oracle_inputs(const TypeList& t, const EquivConfig& cfg) {
  std::vector<Tuple> all;
  std::size_t total = 1;
  for (std::size_t i = 0; i < t.size() && total <= cfg.exhaustive_limit; ++i) total *= 3;
  if (total <= cfg.exhaustive_limit) {
    for (std::size_t code = 0; code < total; ++code) {
      Tuple v;
      std::size_t c = code;
      for (BaseType b : t) {
        std::size_t d = c % 3;
        c /= 3;
        v.push_back(d == 0 ? Value::bottom() : canonical(b, static_cast<int>(d) - 1));
      }
      all.push_back(std::move(v));
    }
  }
  if (!t.empty() && cfg.samples > 0) {
    auto rnd = sample_inputs(t, cfg.samples, cfg.seed, true);
    all.insert(all.end(), rnd.begin(), rnd.end());
  }
  if (all.empty()) all.push_back(Tuple(t.size()));
  return all;
}

}  // namespace

EquivReport io_equiv_report(const IoDiagram& a, const IoDiagram& b, const EquivConfig& cfg) {
  EquivReport rep;
  if (!is_perm(a.inputs, b.inputs)) {
    rep.reason = "inputs " + to_string(a.inputs) + " and " + to_string(b.inputs) + " are not permutations";
    return rep;
  }
  if (!is_perm(a.outputs, b.outputs)) {
    rep.reason = "outputs " + to_string(a.outputs) + " and " + to_string(b.outputs) + " are not permutations";
    return rep;
  }
  std::optional<Term> built;
  try {
    built = Term::serial(Term::serial(switch_vars(a.inputs, b.inputs), b.body), switch_vars(b.outputs, a.outputs));
  } catch (const TypeError&) {
  }
  if (!built || !built->well_typed() || type_of(*built) != type_of(a.body)) {
    rep.reason = "variables have different types in the two diagrams";
    return rep;
  }
  std::optional<CompiledTerm> ca, cb;
  if (cfg.engine == Engine::Compiled) {
    ca.emplace(a.body);
    cb.emplace(*built);
  }
  for (const Tuple& v : oracle_inputs(a.body.in_type(), cfg)) {
    Tuple l = ca ? ca->run(v, cfg.eval) : eval(a.body, v, cfg.eval);
    Tuple r = cb ? cb->run(v, cfg.eval) : eval(*built, v, cfg.eval);
    ++rep.checked;
    if (!agree(l, r, cfg.rel_tol)) {
      rep.reason = "outputs differ on input " + to_string(v) + ": " + to_string(l) + " vs " + to_string(r);
      rep.counterexample = v;
      rep.lhs = std::move(l);
      rep.rhs = std::move(r);
      return rep;
    }
  }
  rep.equivalent = true;
  return rep;
}

bool io_equiv(const IoDiagram& a, const IoDiagram& b, const EquivConfig& cfg) {
  return io_equiv_report(a, b, cfg).equivalent;
}

}  // namespace hbd
