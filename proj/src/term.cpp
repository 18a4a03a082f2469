#include "hbd/term.hpp"

#include <unordered_map>

#include "hbd/errors.hpp"
#include "hbd/term_text.hpp"

namespace hbd {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t hash_types(std::size_t h, const TypeList& ts) {
  h = mix(h, ts.size());
  for (auto t : ts) h = mix(h, static_cast<std::size_t>(t));
  return h;
}

std::string excerpt(const Term& t) {
  std::string s = print_term(t, {.compact_atoms = true});
  if (s.size() > 160) s = s.substr(0, 157) + "...";
  return s;
}

}  // namespace

Term::Term(std::shared_ptr<Node> n) : node_(std::move(n)) {}

Term::Term() : Term(id({})) {}

Term Term::finish(std::shared_ptr<Node> n) {
  std::size_t h = mix(0, static_cast<std::size_t>(n->kind));
  h = hash_types(h, n->p1);
  h = hash_types(h, n->p2);
  h = mix(h, std::hash<std::string>{}(n->name));
  for (const auto& c : n->children) {
    h = mix(h, c.hash());
    n->size += c.size();
  }
  n->hash = h;

  auto child_error = [&]() -> bool {
    for (const auto& c : n->children) {
      if (!c.well_typed()) {
        n->error = c.node_->error;
        return true;
      }
    }
    return false;
  };

  switch (n->kind) {
    case Kind::Id:
      n->in = n->out = n->p1;
      n->typed = true;
      break;
    case Kind::Split:
      n->in = n->p1;
      n->out = concat(n->p1, n->p1);
      n->typed = true;
      break;
    case Kind::Sink:
      n->in = n->p1;
      n->typed = true;
      break;
    case Kind::Switch:
      n->in = concat(n->p1, n->p2);
      n->out = concat(n->p2, n->p1);
      n->typed = true;
      break;
    case Kind::Atom:
      n->in = n->fn->in_types();
      n->out = n->fn->out_types();
      n->typed = true;
      break;
    case Kind::Serial: {
      if (child_error()) break;
      const Term& a = n->children[0];
      const Term& b = n->children[1];
      if (a.node_->out != b.node_->in) {
        n->error = "ill-typed serial composition: output " + to_string(a.node_->out) + " of " + excerpt(a) +
                   " does not match input " + to_string(b.node_->in) + " of " + excerpt(b);
        break;
      }
      n->in = a.node_->in;
      n->out = b.node_->out;
      n->typed = true;
      break;
    }
    case Kind::Parallel: {
      if (child_error()) break;
      const Term& a = n->children[0];
      const Term& b = n->children[1];
      n->in = concat(a.node_->in, b.node_->in);
      n->out = concat(a.node_->out, b.node_->out);
      n->typed = true;
      break;
    }
    case Kind::Feedback: {
      if (child_error()) break;
      const Term& s = n->children[0];
      const TypeList& in = s.node_->in;
      const TypeList& out = s.node_->out;
      if (in.empty() || out.empty()) {
        n->error = "ill-typed feedback: " + excerpt(s) + " has typing " + to_string(in) + " -> " + to_string(out) +
                   " with no leading wire to feed back";
        break;
      }
      if (in.front() != out.front()) {
        n->error = "ill-typed feedback: leading input " + std::string(to_string(in.front())) +
                   " differs from leading output " + std::string(to_string(out.front())) + " in " + excerpt(s);
        break;
      }
      n->in.assign(in.begin() + 1, in.end());
      n->out.assign(out.begin() + 1, out.end());
      n->typed = true;
      break;
    }
  }
  return Term(std::move(n));
}

Term Term::id(TypeList t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Id;
  n->p1 = std::move(t);
  return finish(std::move(n));
}

Term Term::split(TypeList t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Split;
  n->p1 = std::move(t);
  return finish(std::move(n));
}

Term Term::sink(TypeList t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sink;
  n->p1 = std::move(t);
  return finish(std::move(n));
}

Term Term::switch_types(TypeList t, TypeList u) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Switch;
  n->p1 = std::move(t);
  n->p2 = std::move(u);
  return finish(std::move(n));
}

Term Term::atom(std::string name, std::shared_ptr<const ExprFun> fn) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->name = std::move(name);
  n->p1 = fn->in_types();
  n->p2 = fn->out_types();
  n->fn = std::move(fn);
  return finish(std::move(n));
}

Term Term::atom(std::string name, ExprFun fn) {
  return atom(std::move(name), std::make_shared<const ExprFun>(std::move(fn)));
}

Term Term::serial(Term first, Term second) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Serial;
  n->children = {std::move(first), std::move(second)};
  return finish(std::move(n));
}

Term Term::parallel(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Parallel;
  n->children = {std::move(left), std::move(right)};
  return finish(std::move(n));
}

Term Term::feedback(Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Feedback;
  n->children = {std::move(body)};
  return finish(std::move(n));
}

const TypeList& Term::in_type() const {
  if (!node_->typed) throw TypeError(node_->error);
  return node_->in;
}

const TypeList& Term::out_type() const {
  if (!node_->typed) throw TypeError(node_->error);
  return node_->out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.p1 != y.p1 || x.p2 != y.p2 || x.name != y.name) return false;
  if (x.kind == Term::Kind::Atom && x.fn != y.fn && !(*x.fn == *y.fn)) return false;
  return x.children == y.children;
}

Typing type_of(const Term& term) { return {term.in_type(), term.out_type()}; }

Term mk_serial(Term first, Term second) {
  Term t = Term::serial(std::move(first), std::move(second));
  (void)t.in_type();
  return t;
}

Term mk_parallel(Term left, Term right) {
  Term t = Term::parallel(std::move(left), std::move(right));
  (void)t.in_type();
  return t;
}

Term mk_feedback(Term body) {
  Term t = Term::feedback(std::move(body));
  (void)t.in_type();
  return t;
}

Term feedback_n(std::size_t n, Term body) {
  for (std::size_t i = 0; i < n; ++i) body = mk_feedback(std::move(body));
  return body;
}

Term mk_arb(BaseType a) { return mk_feedback(Term::split({a})); }

bool is_arb(const Term& term) {
  return term.is(Term::Kind::Feedback) && term.body().is(Term::Kind::Split) && term.body().param().size() == 1;
}

std::size_t count_feedback(const Term& term) {
  std::size_t n = term.is(Term::Kind::Feedback) ? 1 : 0;
  switch (term.kind()) {
    case Term::Kind::Serial:
    case Term::Kind::Parallel: return n + count_feedback(term.lhs()) + count_feedback(term.rhs());
    case Term::Kind::Feedback: return n + count_feedback(term.body());
    default: return n;
  }
}

std::size_t count_feedback_outside_arb(const Term& term) {
  if (is_arb(term)) return 0;
  switch (term.kind()) {
    case Term::Kind::Serial:
    case Term::Kind::Parallel: return count_feedback_outside_arb(term.lhs()) + count_feedback_outside_arb(term.rhs());
    case Term::Kind::Feedback: return 1 + count_feedback_outside_arb(term.body());
    default: return 0;
  }
}

namespace {

bool is_id(const Term& t) { return t.is(Term::Kind::Id); }
bool is_unit(const Term& t) { return is_id(t) && t.param().empty(); }

// Both arguments are in normal form; so is the result.
Term serial_nf(const Term& a, const Term& b) {
  if (is_id(a)) return b;
  if (is_id(b)) return a;
  if (a.is(Term::Kind::Serial)) return serial_nf(a.lhs(), serial_nf(a.rhs(), b));
  return Term::serial(a, b);
}

Term parallel_nf(const Term& a, const Term& b) {
  if (is_unit(a)) return b;
  if (is_unit(b)) return a;
  if (a.is(Term::Kind::Parallel)) return parallel_nf(a.lhs(), parallel_nf(a.rhs(), b));
  if (is_id(a) && is_id(b)) return Term::id(concat(a.param(), b.param()));
  if (is_id(a) && b.is(Term::Kind::Parallel) && is_id(b.lhs()))
    return parallel_nf(Term::id(concat(a.param(), b.lhs().param())), b.rhs());
  return Term::parallel(a, b);
}

struct Rewriter {
  std::unordered_map<const void*, Term> memo;

  Term run(const Term& t) {
    if (auto it = memo.find(t.identity()); it != memo.end()) return it->second;
    Term r = t;
    switch (t.kind()) {
      case Term::Kind::Serial: r = serial_nf(run(t.lhs()), run(t.rhs())); break;
      case Term::Kind::Parallel: r = parallel_nf(run(t.lhs()), run(t.rhs())); break;
      case Term::Kind::Feedback: {
        Term b = run(t.body());
        r = b == t.body() ? t : Term::feedback(b);
        break;
      }
      case Term::Kind::Sink:
      case Term::Kind::Split:
        if (t.param().empty()) r = Term::id({});
        break;
      case Term::Kind::Switch:
        if (t.param().empty()) r = Term::id(t.param2());
        else if (t.param2().empty()) r = Term::id(t.param());
        break;
      default: break;
    }
    memo.emplace(t.identity(), r);
    return r;
  }
};

}  // namespace

Term rewrite_basic(const Term& term) {
  (void)term.in_type();
  Rewriter rw;
  return rw.run(term);
}

namespace {

bool expr_alpha_equal(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind() || a.type() != b.type()) return false;
  switch (a.kind()) {
    case Expr::Kind::Literal: return identical(a.literal_value(), b.literal_value());
    case Expr::Kind::Param: return a.param_index() == b.param_index();
    case Expr::Kind::Apply:
      if (a.op() != b.op() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!expr_alpha_equal(a.args()[i], b.args()[i])) return false;
      return true;
  }
  return false;
}

}  // namespace

bool fn_alpha_equal(const ExprFun& a, const ExprFun& b) {
  if (a.in_types() != b.in_types() || a.out_types() != b.out_types()) return false;
  for (std::size_t i = 0; i < a.bodies().size(); ++i)
    if (!expr_alpha_equal(a.bodies()[i], b.bodies()[i])) return false;
  return true;
}

bool equal_modulo_atom_names(const Term& a, const Term& b) {
  if (a.identity() == b.identity()) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Term::Kind::Id:
    case Term::Kind::Split:
    case Term::Kind::Sink:
    case Term::Kind::Switch: return a.param() == b.param() && a.param2() == b.param2();
    case Term::Kind::Atom: return a.fn_ptr() == b.fn_ptr() || fn_alpha_equal(a.fn(), b.fn());
    case Term::Kind::Serial:
    case Term::Kind::Parallel:
      return equal_modulo_atom_names(a.lhs(), b.lhs()) && equal_modulo_atom_names(a.rhs(), b.rhs());
    case Term::Kind::Feedback: return equal_modulo_atom_names(a.body(), b.body());
  }
  return false;
}

}  // namespace hbd
