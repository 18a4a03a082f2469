#include "hbd/axioms.hpp"

#include "hbd/errors.hpp"
#include "hbd/term_text.hpp"

namespace hbd {

TermGen::TermGen(std::uint64_t seed, std::size_t max_depth) : rng_(seed), max_depth_(max_depth) {}

BaseType TermGen::base() {
  switch (below(3)) {
    case 0: return BaseType::Real;
    case 1: return BaseType::Int;
    default: return BaseType::Bool;
  }
}

TypeList TermGen::types(std::size_t lo, std::size_t hi) {
  TypeList t(lo + below(hi - lo + 1));
  for (auto& b : t) b = base();
  return t;
}

Expr TermGen::expr(BaseType t, const VarList& params, std::size_t depth) {
  std::vector<const Var*> same;
  for (const auto& p : params)
    if (p.type == t) same.push_back(&p);
  auto leaf = [&]() -> Expr {
    if (!same.empty() && below(5) != 0) return ex::var(same[below(same.size())]->name);
    switch (t) {
      case BaseType::Real: return ex::real(static_cast<double>(below(9)) * 0.5 - 2.0);
      case BaseType::Int: return ex::integer(static_cast<std::int64_t>(below(7)) - 3);
      case BaseType::Bool: return ex::boolean(below(2) == 1);
    }
    return ex::boolean(false);
  };
  if (depth == 0 || below(3) == 0) return leaf();
  auto sub = [&](BaseType u) { return expr(u, params, depth - 1); };
  if (t == BaseType::Bool) {
    BaseType n = below(2) == 0 ? BaseType::Real : BaseType::Int;
    switch (below(7)) {
      case 0: return ex::lt(sub(n), sub(n));
      case 1: return ex::le(sub(n), sub(n));
      case 2: return ex::eq(sub(n), sub(n));
      case 3: return ex::land(sub(t), sub(t));
      case 4: return ex::lor(sub(t), sub(t));
      case 5: return ex::lnot(sub(t));
      default: return ex::ite(sub(BaseType::Bool), sub(t), sub(t));
    }
  }
  switch (below(8)) {
    case 0: return ex::add(sub(t), sub(t));
    case 1: return ex::sub(sub(t), sub(t));
    case 2: return ex::mul(sub(t), sub(t));
    case 3: return ex::div(sub(t), sub(t));
    case 4: return ex::neg(sub(t));
    case 5: return ex::min(sub(t), sub(t));
    case 6: return ex::max(sub(t), sub(t));
    default: return ex::ite(sub(BaseType::Bool), sub(t), sub(t));
  }
}

ExprFun TermGen::atom_fn(const TypeList& in, const TypeList& out) {
  VarList params;
  for (std::size_t i = 0; i < in.size(); ++i) params.push_back(Var{"p" + std::to_string(i), in[i]});
  std::vector<Expr> bodies;
  for (BaseType t : out) bodies.push_back(expr(t, params, 2));
  return ExprFun(params, std::move(bodies));
}

Term TermGen::atom(const TypeList& in, const TypeList& out) {
  return Term::atom("A" + std::to_string(++atoms_), atom_fn(in, out));
}

Term TermGen::term(const TypeList& in, const TypeList& out) { return term_at(in, out, max_depth_); }

Term TermGen::term_at(const TypeList& in, const TypeList& out, std::size_t depth) {
  if (depth == 0) {
    if (in == out && below(4) == 0) return Term::id(in);
    if (out.empty() && below(4) == 0) return Term::sink(in);
    if (out == concat(in, in) && below(2) == 0) return Term::split(in);
    return atom(in, out);
  }
  switch (below(7)) {
    case 0:
    case 1: {
      TypeList mid = types(0, 3);
      return mk_serial(term_at(in, mid, depth - 1), term_at(mid, out, depth - 1));
    }
    case 2:
    case 3: {
      std::size_t i = below(in.size() + 1), o = below(out.size() + 1);
      TypeList in1(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(i));
      TypeList in2(in.begin() + static_cast<std::ptrdiff_t>(i), in.end());
      TypeList out1(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(o));
      TypeList out2(out.begin() + static_cast<std::ptrdiff_t>(o), out.end());
      return mk_parallel(term_at(in1, out1, depth - 1), term_at(in2, out2, depth - 1));
    }
    case 4:
    case 5: {
      TypeList a{base()};
      return mk_feedback(term_at(concat(a, in), concat(a, out), depth - 1));
    }
    default: return term_at(in, out, 0);
  }
}

namespace {

using Eqs = std::vector<std::pair<Term, Term>>;

Term ser(Term a, Term b) { return mk_serial(std::move(a), std::move(b)); }
Term ser(Term a, Term b, Term c) { return ser(ser(std::move(a), std::move(b)), std::move(c)); }
Term par(Term a, Term b) { return mk_parallel(std::move(a), std::move(b)); }
Term par(Term a, Term b, Term c) { return par(par(std::move(a), std::move(b)), std::move(c)); }
Term fb(Term a) { return mk_feedback(std::move(a)); }

std::vector<Axiom> make_axioms() {
  std::vector<Axiom> ax;
  ax.push_back({"id-serial", "Id(t) ;; S = S ;; Id(t') = S", [](TermGen& g) {
                  TypeList t = g.types(0, 3), u = g.types(0, 3);
                  Term s = g.term(t, u);
                  return Eqs{{ser(Term::id(t), s), s}, {ser(s, Term::id(u)), s}};
                }});
  ax.push_back({"serial-assoc", "S ;; (T ;; R) = (S ;; T) ;; R", [](TermGen& g) {
                  TypeList t1 = g.types(0, 3), t2 = g.types(0, 3), t3 = g.types(0, 3), t4 = g.types(0, 3);
                  Term s = g.term(t1, t2), t = g.term(t2, t3), r = g.term(t3, t4);
                  return Eqs{{ser(s, ser(t, r)), ser(ser(s, t), r)}};
                }});
  ax.push_back({"id-empty-par", "Id() || S = S || Id() = S", [](TermGen& g) {
                  Term s = g.term(g.types(0, 3), g.types(0, 3));
                  return Eqs{{par(Term::id({}), s), s}, {par(s, Term::id({})), s}};
                }});
  ax.push_back({"par-assoc", "S || (T || R) = (S || T) || R", [](TermGen& g) {
                  Term s = g.term(g.types(0, 2), g.types(0, 2));
                  Term t = g.term(g.types(0, 2), g.types(0, 2));
                  Term r = g.term(g.types(0, 2), g.types(0, 2));
                  return Eqs{{par(s, par(t, r)), par(par(s, t), r)}};
                }});
  ax.push_back({"interchange", "(S || T) ;; (S' || T') = (S ;; S') || (T ;; T')", [](TermGen& g) {
                  TypeList s = g.types(0, 2), s1 = g.types(0, 2), s2 = g.types(0, 2);
                  TypeList t = g.types(0, 2), t1 = g.types(0, 2), t2 = g.types(0, 2);
                  Term a = g.term(s, s1), a1 = g.term(s1, s2), b = g.term(t, t1), b1 = g.term(t1, t2);
                  return Eqs{{ser(par(a, b), par(a1, b1)), par(ser(a, a1), ser(b, b1))}};
                }});
  ax.push_back({"split-sink", "Split(t) ;; Sink(t) || Id(t) = Id(t)", [](TermGen& g) {
                  TypeList t = g.types(0, 3);
                  return Eqs{{ser(Term::split(t), par(Term::sink(t), Term::id(t))), Term::id(t)}};
                }});
  ax.push_back({"split-switch", "Split(t) ;; Switch(t,t) = Split(t)", [](TermGen& g) {
                  TypeList t = g.types(0, 3);
                  return Eqs{{ser(Term::split(t), Term::switch_types(t, t)), Term::split(t)}};
                }});
  ax.push_back({"split-assoc", "Split(t) ;; Id(t) || Split(t) = Split(t) ;; Split(t) || Id(t)", [](TermGen& g) {
                  TypeList t = g.types(0, 3);
                  return Eqs{{ser(Term::split(t), par(Term::id(t), Term::split(t))),
                              ser(Term::split(t), par(Term::split(t), Term::id(t)))}};
                }});
  ax.push_back({"switch-concat", "Switch(t,t'.t'') = Switch(t,t') || Id(t'') ;; Id(t') || Switch(t,t'')",
                [](TermGen& g) {
                  TypeList t = g.types(0, 2), t1 = g.types(0, 2), t2 = g.types(0, 2);
                  return Eqs{{Term::switch_types(t, concat(t1, t2)),
                              ser(par(Term::switch_types(t, t1), Term::id(t2)),
                                  par(Term::id(t1), Term::switch_types(t, t2)))}};
                }});
  ax.push_back({"sink-concat", "Sink(t.t') = Sink(t) || Sink(t')", [](TermGen& g) {
                  TypeList t = g.types(0, 2), u = g.types(0, 2);
                  return Eqs{{Term::sink(concat(t, u)), par(Term::sink(t), Term::sink(u))}};
                }});
  ax.push_back({"split-concat", "Split(t.t') = Split(t) || Split(t') ;; Id(t) || Switch(t,t') || Id(t')",
                [](TermGen& g) {
                  TypeList t = g.types(0, 2), u = g.types(0, 2);
                  return Eqs{{Term::split(concat(t, u)), ser(par(Term::split(t), Term::split(u)),
                                                             par(Term::id(t), Term::switch_types(t, u), Term::id(u)))}};
                }});
  ax.push_back({"switch-natural", "Switch(s,t) ;; T || S ;; Switch(t',s') = S || T", [](TermGen& g) {
                  TypeList s = g.types(0, 2), s1 = g.types(0, 2), t = g.types(0, 2), t1 = g.types(0, 2);
                  Term a = g.term(s, s1), b = g.term(t, t1);
                  return Eqs{{ser(Term::switch_types(s, t), par(b, a), Term::switch_types(t1, s1)), par(a, b)}};
                }});
  ax.push_back({"feedback-switch", "feedback(Switch(a,a)) = Id(a)", [](TermGen& g) {
                  TypeList a{g.base()};
                  return Eqs{{fb(Term::switch_types(a, a)), Term::id(a)}};
                }});
  ax.push_back({"feedback-par", "feedback(S || T) = feedback(S) || T", [](TermGen& g) {
                  TypeList a{g.base()};
                  Term s = g.term(concat(a, g.types(0, 2)), concat(a, g.types(0, 2)));
                  Term t = g.term(g.types(0, 2), g.types(0, 2));
                  return Eqs{{fb(par(s, t)), par(fb(s), t)}};
                }});
  ax.push_back({"feedback-serial", "feedback(Id(a) || A ;; S ;; Id(a) || B) = A ;; feedback(S) ;; B",
                [](TermGen& g) {
                  TypeList a{g.base()};
                  TypeList s = g.types(0, 2), s1 = g.types(0, 2), t = g.types(0, 2), t1 = g.types(0, 2);
                  Term body = g.term(concat(a, s), concat(a, t));
                  Term pa = g.term(s1, s), pb = g.term(t, t1);
                  return Eqs{{fb(ser(par(Term::id(a), pa), body, par(Term::id(a), pb))), ser(pa, fb(body), pb)}};
                }});
  ax.push_back({"feedback-swap",
                "feedback^2(Switch(b,a) || Id(s) ;; S ;; Switch(a,b) || Id(t)) = feedback^2(S)", [](TermGen& g) {
                  TypeList a{g.base()}, b{g.base()};
                  TypeList s = g.types(0, 2), t = g.types(0, 2);
                  Term body = g.term(concat(concat(a, b), s), concat(concat(a, b), t));
                  Term lhs = fb(fb(ser(par(Term::switch_types(b, a), Term::id(s)), body,
                                       par(Term::switch_types(a, b), Term::id(t)))));
                  return Eqs{{lhs, fb(fb(body))}};
                }});
  return ax;
}

}  // namespace

const std::vector<Axiom>& axioms() {
  static const std::vector<Axiom> ax = make_axioms();
  return ax;
}

std::vector<AxiomResult> run_axioms(const AxiomConfig& cfg) {
  std::vector<AxiomResult> results;
  std::uint64_t salt = 0;
  for (const Axiom& ax : axioms()) {
    AxiomResult r;
    r.name = ax.name;
    r.law = ax.law;
    TermGen gen(cfg.seed * 1000003ULL + (++salt));
    for (std::size_t k = 0; k < cfg.instances; ++k) {
      ++r.instances;
      for (const auto& [lhs, rhs] : ax.instantiate(gen)) {
        const auto pool = sample_inputs(lhs.in_type(), cfg.inputs, gen.rng()(), true);
        for (std::size_t j = 0; j < cfg.inputs && !pool.empty(); ++j) {
          const Tuple& v = pool[j % pool.size()];
          ++r.checks;
          EvalStats sl, sr;
          std::string problem;
          try {
            Tuple a = eval(lhs, v, cfg.eval, &sl);
            Tuple b = eval(rhs, v, cfg.eval, &sr);
            if (!agree(a, b, cfg.eval.real_tolerance))
              problem = "lhs gives " + to_string(a) + ", rhs gives " + to_string(b);
          } catch (const Error& e) {
            problem = e.what();
          }
          r.max_feedback_iters = std::max({r.max_feedback_iters, sl.max_feedback_iters, sr.max_feedback_iters});
          if (!problem.empty()) {
            if (r.failures++ == 0) {
              PrintOptions po;
              po.compact_atoms = true;
              r.counterexample = "lhs " + print_term(lhs, po) + "\nrhs " + print_term(rhs, po) + "\ninput " +
                                 to_string(v) + ": " + problem;
            }
          }
        }
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace hbd
