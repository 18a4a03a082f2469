#include "hbd/term_text.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>

#include "hbd/errors.hpp"

namespace hbd {

namespace {

void print_types(std::string& s, const TypeList& ts) {
  if (ts.size() == 1) s += to_string(ts[0]);
  else s += to_string(ts);
}

void print_expr(std::string& s, const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Literal: {
      const Value& v = e.literal_value();
      if (v.is_real()) s += format_real(v.as_real());
      else if (v.is_int()) s += std::to_string(v.as_int());
      else s += v.as_bool() ? "true" : "false";
      return;
    }
    case Expr::Kind::Param: s += e.param_name(); return;
    case Expr::Kind::Apply:
      s += '(';
      s += op_symbol(e.op());
      for (const auto& a : e.args()) {
        s += ' ';
        print_expr(s, a);
      }
      s += ')';
      return;
  }
}

void print_fn(std::string& s, const ExprFun& fn) {
  s += "(fn (";
  for (std::size_t i = 0; i < fn.params().size(); ++i) {
    if (i) s += ' ';
    s += '(' + fn.params()[i].name + ' ' + std::string(to_string(fn.params()[i].type)) + ')';
  }
  s += ") (";
  for (std::size_t i = 0; i < fn.bodies().size(); ++i) {
    if (i) s += ' ';
    print_expr(s, fn.bodies()[i]);
  }
  s += "))";
}

void print(std::string& s, const Term& t, const PrintOptions& opts) {
  switch (t.kind()) {
    case Term::Kind::Id: s += "(id "; print_types(s, t.param()); s += ')'; return;
    case Term::Kind::Split: s += "(split "; print_types(s, t.param()); s += ')'; return;
    case Term::Kind::Sink: s += "(sink "; print_types(s, t.param()); s += ')'; return;
    case Term::Kind::Switch:
      s += "(switch ";
      print_types(s, t.param());
      s += ' ';
      print_types(s, t.param2());
      s += ')';
      return;
    case Term::Kind::Atom:
      s += "(atom " + t.atom_name();
      if (!opts.compact_atoms) {
        s += ' ';
        print_fn(s, t.fn());
      }
      s += ')';
      return;
    case Term::Kind::Serial:
    case Term::Kind::Parallel:
      s += t.is(Term::Kind::Serial) ? "(serial " : "(par ";
      print(s, t.lhs(), opts);
      s += ' ';
      print(s, t.rhs(), opts);
      s += ')';
      return;
    case Term::Kind::Feedback:
      s += "(feedback ";
      print(s, t.body(), opts);
      s += ')';
      return;
  }
}

struct Sexp {
  bool is_list = false;
  std::string atom;
  std::vector<Sexp> items;
  std::size_t pos = 0;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Sexp read_top() {
    Sexp s = read();
    skip_ws();
    if (i_ != text_.size()) fail(i_, "trailing input");
    return s;
  }

  [[noreturn]] void fail(std::size_t pos, const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < pos && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("term syntax, line " + std::to_string(line) + " column " + std::to_string(col) + ": " + msg);
  }

 private:
  void skip_ws() {
    while (i_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[i_]))) {
        ++i_;
      } else if (text_[i_] == ';') {
        while (i_ < text_.size() && text_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip_ws();
    if (i_ >= text_.size()) fail(i_, "unexpected end of input");
    Sexp s;
    s.pos = i_;
    if (text_[i_] == ')') fail(i_, "unexpected ')'");
    if (text_[i_] == '(') {
      ++i_;
      s.is_list = true;
      for (;;) {
        skip_ws();
        if (i_ >= text_.size()) fail(s.pos, "unclosed '('");
        if (text_[i_] == ')') {
          ++i_;
          return s;
        }
        s.items.push_back(read());
      }
    }
    std::size_t start = i_;
    while (i_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i_])) && text_[i_] != '(' &&
           text_[i_] != ')' && text_[i_] != ';')
      ++i_;
    s.atom = std::string(text_.substr(start, i_ - start));
    return s;
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

class Builder {
 public:
  Builder(const Reader& r, const AtomTable* atoms) : r_(r), atoms_(atoms) {}

  Term term(const Sexp& s) {
    if (!s.is_list || s.items.empty() || s.items[0].is_list) fail(s, "expected a term form");
    const std::string& head = s.items[0].atom;
    if (head == "id" || head == "split" || head == "sink") {
      arity(s, 2);
      TypeList t = types(s.items[1]);
      if (head == "id") return Term::id(std::move(t));
      if (head == "split") return Term::split(std::move(t));
      return Term::sink(std::move(t));
    }
    if (head == "switch") {
      arity(s, 3);
      return Term::switch_types(types(s.items[1]), types(s.items[2]));
    }
    if (head == "atom") {
      if (s.items.size() < 2 || s.items[1].is_list) fail(s, "atom needs a name");
      const std::string& name = s.items[1].atom;
      if (s.items.size() == 2) {
        if (atoms_) {
          auto it = atoms_->find(name);
          if (it != atoms_->end()) return it->second;
        }
        fail(s, "atom '" + name + "' has no function and is not in the atom table");
      }
      arity(s, 3);
      return Term::atom(name, fn(s.items[2]));
    }
    if (head == "serial" || head == "par") {
      arity(s, 3);
      Term a = term(s.items[1]);
      Term b = term(s.items[2]);
      return head == "serial" ? Term::serial(std::move(a), std::move(b)) : Term::parallel(std::move(a), std::move(b));
    }
    if (head == "feedback") {
      arity(s, 2);
      return Term::feedback(term(s.items[1]));
    }
    fail(s.items[0], "unknown term form '" + head + "'");
  }

  ExprFun fn(const Sexp& s) {
    if (!s.is_list || s.items.size() != 3 || s.items[0].is_list || s.items[0].atom != "fn")
      fail(s, "expected (fn (params...) (bodies...))");
    const Sexp& ps = s.items[1];
    const Sexp& bs = s.items[2];
    if (!ps.is_list) fail(ps, "expected a parameter list");
    if (!bs.is_list) fail(bs, "expected a body list");
    VarList params;
    for (const auto& p : ps.items) {
      if (!p.is_list || p.items.size() != 2 || p.items[0].is_list || p.items[1].is_list)
        fail(p, "expected (name Type)");
      params.push_back({p.items[0].atom, base_type(p.items[1])});
    }
    std::vector<Expr> bodies;
    for (const auto& b : bs.items) bodies.push_back(expr(b));
    return ExprFun(std::move(params), std::move(bodies));
  }

 private:
  [[noreturn]] void fail(const Sexp& s, const std::string& msg) const { r_.fail(s.pos, msg); }

  void arity(const Sexp& s, std::size_t n) const {
    if (s.items.size() != n)
      fail(s, "'" + s.items[0].atom + "' expects " + std::to_string(n - 1) + " argument(s)");
  }

  BaseType base_type(const Sexp& s) const {
    if (s.is_list) fail(s, "expected a base type");
    auto t = parse_base_type(s.atom);
    if (!t) fail(s, "unknown base type '" + s.atom + "'");
    return *t;
  }

  TypeList types(const Sexp& s) const {
    if (!s.is_list) return {base_type(s)};
    TypeList ts;
    for (const auto& i : s.items) ts.push_back(base_type(i));
    return ts;
  }

  std::optional<Value> number(const std::string& a) const {
    if (a.empty()) return std::nullopt;
    char c = a[0];
    bool numeric_start = std::isdigit(static_cast<unsigned char>(c)) ||
                         ((c == '-' || c == '+' || c == '.') && a.size() > 1 &&
                          (std::isdigit(static_cast<unsigned char>(a[1])) || a[1] == '.'));
    if (!numeric_start) return std::nullopt;
    bool is_real = a.find_first_of(".eE") != std::string::npos;
    const char* first = a.data() + (a[0] == '+' ? 1 : 0);
    const char* last = a.data() + a.size();
    if (is_real) {
      double d = 0;
      auto [p, ec] = std::from_chars(first, last, d);
      if (ec != std::errc{} || p != last) return std::nullopt;
      return Value::real(d);
    }
    std::int64_t i = 0;
    auto [p, ec] = std::from_chars(first, last, i);
    if (ec != std::errc{} || p != last) return std::nullopt;
    return Value::integer(i);
  }

  Expr expr(const Sexp& s) {
    if (!s.is_list) {
      if (s.atom == "true") return ex::boolean(true);
      if (s.atom == "false") return ex::boolean(false);
      if (auto v = number(s.atom)) return ex::lit(*v);
      char c = s.atom.empty() ? '\0' : s.atom[0];
      if (std::isdigit(static_cast<unsigned char>(c))) fail(s, "malformed number '" + s.atom + "'");
      return ex::var(s.atom);
    }
    if (s.items.empty() || s.items[0].is_list) fail(s, "expected (operator args...)");
    static const Op ops[] = {Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Neg, Op::Min, Op::Max,
                             Op::Lt,  Op::Le,  Op::Eq,  Op::And, Op::Or,  Op::Not, Op::Ite};
    for (Op op : ops) {
      if (op_symbol(op) != s.items[0].atom) continue;
      if (s.items.size() - 1 != op_arity(op))
        fail(s, "'" + s.items[0].atom + "' expects " + std::to_string(op_arity(op)) + " argument(s)");
      std::vector<Expr> args;
      for (std::size_t k = 1; k < s.items.size(); ++k) args.push_back(expr(s.items[k]));
      return Expr::apply(op, std::move(args));
    }
    fail(s.items[0], "unknown operator '" + s.items[0].atom + "'");
  }

  const Reader& r_;
  const AtomTable* atoms_;
};

}  // namespace

std::string print_term(const Term& term, PrintOptions opts) {
  std::string s;
  print(s, term, opts);
  return s;
}

std::string print_exprfun(const ExprFun& fn) {
  std::string s;
  print_fn(s, fn);
  return s;
}

Term parse_term(std::string_view text, const AtomTable* atoms) {
  Reader r(text);
  Sexp s = r.read_top();
  Builder b(r, atoms);
  return b.term(s);
}

ExprFun parse_exprfun(std::string_view text) {
  Reader r(text);
  Sexp s = r.read_top();
  Builder b(r, nullptr);
  return b.fn(s);
}

}  // namespace hbd
