#include "doctest.h"

#include "hbd/axioms.hpp"
#include "hbd/errors.hpp"
#include "hbd/eval.hpp"
#include "hbd/term.hpp"
#include "hbd/term_text.hpp"
#include "running_example.hpp"

using namespace hbd;

namespace {

const TypeList R{BaseType::Real};
const TypeList I{BaseType::Int};
const TypeList B{BaseType::Bool};

Term gain_atom(double k) {
  return Term::atom("Gain", ExprFun({{"x", BaseType::Real}}, {ex::mul(ex::real(k), ex::var("x"))}));
}

}  // namespace

TEST_SUITE("core_algebra") {
  TEST_CASE("type lists concatenate with the empty list as unit") {
    TypeList a{BaseType::Real, BaseType::Int};
    CHECK(concat(a, {}) == a);
    CHECK(concat({}, a) == a);
    CHECK(concat(concat(a, B), R) == concat(a, concat(B, R)));
    CHECK(parse_base_type("Bool") == BaseType::Bool);
    CHECK_FALSE(parse_base_type("Float").has_value());
  }

  TEST_CASE("vars compare by name") {
    CHECK(Var{"x", BaseType::Real} == Var{"x", BaseType::Int});
    CHECK_FALSE(Var{"x", BaseType::Real} == Var{"y", BaseType::Real});
  }

  TEST_CASE("constant typings") {
    auto sw = type_of(Term::switch_types(R, I));
    CHECK(sw.first == TypeList{BaseType::Real, BaseType::Int});
    CHECK(sw.second == TypeList{BaseType::Int, BaseType::Real});
    CHECK(type_of(Term::split(R)).second == TypeList{BaseType::Real, BaseType::Real});
    CHECK(type_of(Term::sink(I)).second.empty());
    CHECK(type_of(Term::id(B)).first == B);
  }

  TEST_CASE("serial composition") {
    auto t = type_of(mk_serial(Term::id(R), Term::split(R)));
    CHECK(t.first == R);
    CHECK(t.second == TypeList{BaseType::Real, BaseType::Real});
    auto u = type_of(mk_serial(Term::split(R), Term::switch_types(R, R)));
    CHECK(u.first == R);
    CHECK(u.second.size() == 2);
    auto id = mk_serial(Term::id(I), Term::id(I));
    CHECK(id.is(Term::Kind::Serial));
    CHECK(type_of(id).first == I);
    CHECK_THROWS_AS(mk_serial(Term::id(I), Term::id(R)), TypeError);
  }

  TEST_CASE("parallel and feedback typings") {
    auto p = type_of(mk_parallel(Term::id(R), Term::sink(I)));
    CHECK(p.first == TypeList{BaseType::Real, BaseType::Int});
    CHECK(p.second == R);
    CHECK(feedback_n(0, Term::id(R)) == Term::id(R));
    auto fb = type_of(mk_feedback(Term::switch_types(R, R)));
    CHECK(fb.first == R);
    CHECK(fb.second == R);
    CHECK_THROWS_AS(mk_feedback(Term::id({})), TypeError);
    CHECK_THROWS_AS(mk_feedback(Term::switch_types(R, I)), TypeError);
    CHECK(type_of(feedback_n(2, Term::id({BaseType::Real, BaseType::Int, BaseType::Bool}))).first == B);
  }

  TEST_CASE("Arb is feedback of Split") {
    Term a = mk_arb(BaseType::Real);
    CHECK(a.is(Term::Kind::Feedback));
    CHECK(a.body() == Term::split(R));
    CHECK(is_arb(a));
    auto t = type_of(mk_arb(BaseType::Bool));
    CHECK(t.first.empty());
    CHECK(t.second == B);
    CHECK(count_feedback(a) == 1);
    CHECK(count_feedback_outside_arb(mk_parallel(a, mk_feedback(Term::switch_types(R, R)))) == 1);
  }

  TEST_CASE("ill-typed nodes are representable but rejected by type_of") {
    Term bad = Term::serial(Term::id(I), Term::id(R));
    CHECK_FALSE(bad.well_typed());
    CHECK_THROWS_AS(type_of(bad), TypeError);
    Term nested = Term::parallel(Term::id(R), bad);
    try {
      (void)type_of(nested);
      FAIL("expected TypeError");
    } catch (const TypeError& e) {
      CHECK(std::string(e.what()).find("serial") != std::string::npos);
    }
  }

  TEST_CASE("rewrite_basic: identity elimination, unit and reassociation") {
    Term a = testing::add_atom();
    Term g = gain_atom(2.0), h = gain_atom(3.0);
    CHECK(rewrite_basic(mk_serial(Term::id({BaseType::Real, BaseType::Real}), a)) == a);
    CHECK(rewrite_basic(mk_serial(a, Term::id(R))) == a);
    CHECK(rewrite_basic(mk_parallel(Term::id({}), a)) == a);
    CHECK(rewrite_basic(mk_parallel(a, Term::id({}))) == a);
    Term left = mk_parallel(mk_parallel(g, h), a);
    CHECK(rewrite_basic(left) == mk_parallel(g, mk_parallel(h, a)));
    Term chain = mk_serial(mk_serial(g, h), g);
    CHECK(rewrite_basic(chain) == mk_serial(g, mk_serial(h, g)));
    CHECK(rewrite_basic(mk_parallel(Term::id(R), Term::id(I))) == Term::id({BaseType::Real, BaseType::Int}));
  }

  TEST_CASE("rewrite_basic replaces constants on the empty tuple") {
    CHECK(rewrite_basic(Term::sink({})) == Term::id({}));
    CHECK(rewrite_basic(Term::split({})) == Term::id({}));
    CHECK(rewrite_basic(Term::switch_types({}, R)) == Term::id(R));
    CHECK(rewrite_basic(Term::switch_types(I, {})) == Term::id(I));
  }

  TEST_CASE("rewrite_basic preserves typing and semantics, never grows and is idempotent") {
    TermGen gen(11, 3);
    for (int k = 0; k < 200; ++k) {
      TypeList in = gen.types(0, 3), out = gen.types(0, 3);
      Term t = gen.term(in, out);
      Term r = rewrite_basic(t);
      CHECK(type_of(r) == type_of(t));
      CHECK(r.size() <= t.size());
      CHECK(rewrite_basic(r) == r);
      for (const auto& v : sample_inputs(in, 10, static_cast<std::uint64_t>(k), true))
        CHECK(agree(eval(t, v), eval(r, v), 1e-9));
    }
  }

  TEST_CASE("equality modulo atom and parameter names") {
    Term a = Term::atom("P", ExprFun({{"a", BaseType::Real}}, {ex::neg(ex::var("a"))}));
    Term b = Term::atom("Q", ExprFun({{"b", BaseType::Real}}, {ex::neg(ex::var("b"))}));
    Term c = Term::atom("Q", ExprFun({{"b", BaseType::Real}}, {ex::var("b")}));
    CHECK_FALSE(a == b);
    CHECK(equal_modulo_atom_names(a, b));
    CHECK_FALSE(equal_modulo_atom_names(a, c));
    CHECK(equal_modulo_atom_names(mk_serial(a, Term::id(R)), mk_serial(b, Term::id(R))));
  }

  TEST_CASE("text format round trip") {
    Term t = mk_serial(mk_parallel(testing::add_atom(), Term::id(R)), testing::delay_atom());
    std::string s = print_term(t);
    CHECK(parse_term(s) == t);
    CHECK(print_term(parse_term(s)) == s);
    TermGen gen(5, 3);
    for (int k = 0; k < 100; ++k) {
      Term r = gen.term(gen.types(0, 3), gen.types(0, 3));
      CHECK(parse_term(print_term(r)) == r);
    }
    Term lit = parse_term("(atom K (fn ((x Int)) ((+ x 3) (* 2.5 1e-3) (if true false (not true)))))");
    CHECK(type_of(lit).second == TypeList{BaseType::Int, BaseType::Real, BaseType::Bool});
    CHECK(parse_term(print_term(lit)) == lit);
  }

  TEST_CASE("text format short atom references and errors") {
    AtomTable table{{"Add", testing::add_atom()}, {"Delay", testing::delay_atom()}};
    Term t = parse_term("(serial (par (atom Add) (id Real)) (atom Delay))", &table);
    CHECK(type_of(t).first.size() == 3);
    CHECK(print_term(t, {true}) == "(serial (par (atom Add) (id Real)) (atom Delay))");
    CHECK_THROWS_AS(parse_term("(serial (id Real)"), ParseError);
    CHECK_THROWS_AS(parse_term("(frob Real)"), ParseError);
    CHECK_THROWS_AS(parse_term("(atom Missing)"), ParseError);
    CHECK_THROWS_AS(parse_term("(atom F (fn ((x Int)) ((+ x true))))"), TypeError);
    CHECK_THROWS_AS(type_of(parse_term("(serial (id Int) (id Real))")), TypeError);
  }
}
