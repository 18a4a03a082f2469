#include "doctest.h"

#include <random>

#include "hbd/axioms.hpp"
#include "hbd/errors.hpp"
#include "hbd/io_diagram.hpp"
#include "running_example.hpp"

using namespace hbd;
using testing::rv;

namespace {

VarList vars(std::initializer_list<const char*> names) {
  VarList out;
  for (const char* n : names) out.push_back(rv(n));
  return out;
}

std::vector<std::string> names(const VarList& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.name);
  return out;
}

using Names = std::vector<std::string>;

/// Random io-diagram with the given Real-typed interface.
IoDiagram random_diagram(TermGen& gen, const VarList& in, const VarList& out) {
  return make_io_diagram(in, out, gen.term(types_of(in), types_of(out)));
}

const Value bot = Value::bottom();
Value r(double x) { return Value::real(x); }

}  // namespace

TEST_SUITE("io_diagrams") {
  TEST_CASE("list operators") {
    CHECK(names(inter(vars({"u", "v", "w"}), vars({"w", "u"}))) == Names{"u", "w"});
    CHECK(names(minus(vars({"u", "v", "w"}), vars({"v"}))) == Names{"u", "w"});
    CHECK(names(union_ord(vars({"a", "b"}), vars({"b", "c"}))) == Names{"a", "b", "c"});
    CHECK(is_perm(vars({"a", "b", "a"}), vars({"a", "a", "b"})));
    CHECK_FALSE(is_perm(vars({"a", "b", "b"}), vars({"a", "a", "b"})));
    CHECK_FALSE(is_perm(vars({"a", "b"}), vars({"a", "b", "c"})));
    CHECK(pairwise_distinct(vars({"a", "b"})));
    CHECK_FALSE(pairwise_distinct(vars({"a", "b", "a"})));
  }

  TEST_CASE("variables between diagrams") {
    auto add = testing::add_diagram();
    auto delay = testing::delay_diagram();
    CHECK(names(vars_between(add, delay)) == Names{"x"});
    CHECK(vars_between(delay, add).empty());
    CHECK(vars_between(delay, delay).empty());
  }

  TEST_CASE("general switch duplicates, drops and invents") {
    Term sw = switch_vars(vars({"u", "v"}), vars({"v", "u", "w", "u"}));
    CHECK(type_of(sw).second.size() == 4);
    CHECK(eval(sw, {Value::real(1), Value::real(2)}) == Tuple{r(2), r(1), bot, r(1)});
    CHECK(switch_vars(vars({"a", "b"}), {}) == Term::sink({BaseType::Real, BaseType::Real}));
    CHECK(eval(switch_vars({}, vars({"q"})), {}) == Tuple{bot});
  }

  TEST_CASE("general switch on equal lists is the identity") {
    VarList x{{"a", BaseType::Int}, {"b", BaseType::Bool}, {"c", BaseType::Real}};
    Term sw = switch_vars(x, x);
    for (const auto& v : sample_inputs(types_of(x), 100, 2, true)) CHECK(eval(sw, v) == v);
  }

  TEST_CASE("general switch output types follow the target list") {
    std::mt19937_64 rng(5);
    const char* pool[] = {"a", "b", "c", "d", "e"};
    const BaseType ty[] = {BaseType::Real, BaseType::Int, BaseType::Bool, BaseType::Int, BaseType::Real};
    for (int k = 0; k < 200; ++k) {
      VarList x, y;
      for (int j = 0; j < 5; ++j)
        if (rng() % 2) x.push_back({pool[j], ty[j]});
      for (std::size_t n = rng() % 5; n > 0; --n) {
        std::size_t j = rng() % 5;
        y.push_back({pool[j], ty[j]});
      }
      Term sw = switch_vars(x, y);
      CHECK(type_of(sw).first == types_of(x));
      CHECK(type_of(sw).second == types_of(y));
      for (const auto& v : sample_inputs(types_of(x), 5, static_cast<std::uint64_t>(k), true)) {
        Tuple out = eval(sw, v);
        for (std::size_t j = 0; j < y.size(); ++j) {
          auto it = std::find(x.begin(), x.end(), y[j]);
          CHECK(out[j] == (it == x.end() ? bot : v[static_cast<std::size_t>(it - x.begin())]));
        }
      }
    }
  }

  TEST_CASE("io-diagram invariants") {
    CHECK_THROWS_AS(make_io_diagram(vars({"a", "a"}), vars({"b"}), Term::id({BaseType::Real})), TypeError);
    CHECK_THROWS_AS(make_io_diagram(vars({"a"}), vars({"b", "c"}), Term::id({BaseType::Real})), TypeError);
    CHECK_NOTHROW(make_io_diagram(vars({"a"}), vars({"a"}), Term::id({BaseType::Real})));
  }

  TEST_CASE("named serial of Add and Delay") {
    IoDiagram ad = named_serial(testing::add_diagram(), testing::delay_diagram());
    CHECK(names(ad.inputs) == Names{"z", "u", "s"});
    CHECK(names(ad.outputs) == Names{"y", "s'"});
    Term expected = mk_serial(mk_parallel(testing::add_atom(), Term::id({BaseType::Real})), testing::delay_atom());
    for (const auto& v : sample_inputs(types_of(ad.inputs), 100, 1, true))
      CHECK(eval(ad.body, v) == eval(expected, v));

    IoDiagram da = named_serial(testing::delay_diagram(), testing::add_diagram());
    CHECK_FALSE(io_equiv(ad, da));
    CHECK(io_equiv_report(ad, da).reason.find("permutation") != std::string::npos);
  }

  TEST_CASE("named serial precondition") {
    auto a = make_io_diagram(vars({"p"}), vars({"q", "r"}), Term::split({BaseType::Real}));
    auto b = make_io_diagram(vars({"q"}), vars({"r"}), Term::id({BaseType::Real}));
    CHECK_THROWS_AS(named_serial(a, b), CompositionError);
  }

  TEST_CASE("named serial without shared variables shares inputs") {
    TermGen gen(4, 2);
    for (int k = 0; k < 30; ++k) {
      auto a = random_diagram(gen, vars({"a", "b"}), vars({"c"}));
      auto b = random_diagram(gen, vars({"b", "d"}), vars({"e", "f"}));
      CHECK(io_equiv(named_serial(a, b), named_parallel(a, b)));
    }
  }

  TEST_CASE("named parallel shares common inputs") {
    TermGen gen(6, 2);
    auto a = random_diagram(gen, vars({"a", "b", "c"}), vars({"u", "v", "w"}));
    auto b = random_diagram(gen, vars({"d", "b", "a"}), vars({"t", "s", "r"}));
    IoDiagram ab = named_parallel(a, b);
    CHECK(names(ab.inputs) == Names{"a", "b", "c", "d"});
    CHECK(names(ab.outputs) == Names{"u", "v", "w", "t", "s", "r"});
    for (const auto& v : sample_inputs(types_of(ab.inputs), 50, 3, true)) {
      Tuple out = eval(ab.body, v);
      Tuple oa = eval(a.body, {v[0], v[1], v[2]}), ob = eval(b.body, {v[3], v[1], v[0]});
      oa.insert(oa.end(), ob.begin(), ob.end());
      CHECK(agree(out, oa, 0.0));
    }
    CHECK_THROWS_AS(named_parallel(a, a), CompositionError);
    IoDiagram disjoint = named_parallel(testing::add_diagram(), testing::split_diagram());
    CHECK(names(disjoint.inputs) == Names{"z", "u", "y"});
  }

  TEST_CASE("named parallel is associative and commutative up to equivalence") {
    TermGen gen(8, 2);
    for (int k = 0; k < 30; ++k) {
      auto a = random_diagram(gen, vars({"a", "b"}), vars({"p"}));
      auto b = random_diagram(gen, vars({"b", "c"}), vars({"q", "r"}));
      auto c = random_diagram(gen, vars({"a", "d"}), vars({"s"}));
      IoDiagram l = named_parallel(named_parallel(a, b), c), r2 = named_parallel(a, named_parallel(b, c));
      CHECK(names(l.inputs) == names(r2.inputs));
      CHECK(names(l.outputs) == names(r2.outputs));
      CHECK(io_equiv(l, r2));
      CHECK(io_equiv(named_parallel(a, b), named_parallel(b, a)));
    }
  }

  TEST_CASE("named serial is associative under its side condition") {
    TermGen gen(9, 2);
    for (int k = 0; k < 30; ++k) {
      auto a = random_diagram(gen, vars({"a", "b"}), vars({"c", "d"}));
      auto b = random_diagram(gen, vars({"c", "e"}), vars({"f"}));
      auto c = random_diagram(gen, vars({"d", "f", "g"}), vars({"h"}));
      CHECK(io_equiv(named_serial(named_serial(a, b), c), named_serial(a, named_serial(b, c))));
    }
  }

  TEST_CASE("named feedback closes shared variables") {
    TermGen gen(10, 2);
    auto a = random_diagram(gen, vars({"a", "b", "c", "d", "e"}), vars({"u", "e", "a", "v", "d"}));
    IoDiagram fb = named_feedback(a);
    CHECK(names(fb.inputs) == Names{"b", "c"});
    CHECK(names(fb.outputs) == Names{"u", "v"});
    CHECK(count_feedback(fb.body) >= 3);
    check_io_diagram(fb);

    auto plain = random_diagram(gen, vars({"a", "b"}), vars({"c"}));
    CHECK(io_equiv(named_feedback(plain), plain));
  }

  TEST_CASE("named feedback is idempotent and a congruence") {
    TermGen gen(12, 2);
    for (int k = 0; k < 30; ++k) {
      auto a = random_diagram(gen, vars({"a", "b", "c"}), vars({"c", "d", "a"}));
      CHECK(io_equiv(named_feedback(named_feedback(a)), named_feedback(a)));
      // Same diagram with permuted interfaces.
      VarList in2{rv("c"), rv("a"), rv("b")}, out2{rv("a"), rv("c"), rv("d")};
      auto b = make_io_diagram(in2, out2,
                               mk_serial(mk_serial(switch_vars(in2, a.inputs), a.body), switch_vars(a.outputs, out2)));
      REQUIRE(io_equiv(a, b));
      CHECK(io_equiv(named_feedback(a), named_feedback(b)));
    }
  }

  TEST_CASE("io-equivalence is reflexive, symmetric and transitive") {
    TermGen gen(13, 2);
    for (int k = 0; k < 20; ++k) {
      auto a = random_diagram(gen, vars({"a", "b"}), vars({"c", "d"}));
      CHECK(io_equiv(a, a));
      VarList in2{rv("b"), rv("a")}, out2{rv("d"), rv("c")};
      auto b = make_io_diagram(in2, out2,
                               mk_serial(mk_serial(switch_vars(in2, a.inputs), a.body), switch_vars(a.outputs, out2)));
      auto c = make_io_diagram(a.inputs, a.outputs,
                               mk_serial(mk_serial(switch_vars(a.inputs, in2), b.body), switch_vars(out2, a.outputs)));
      CHECK(io_equiv(a, b));
      CHECK(io_equiv(b, a));
      CHECK(io_equiv(b, c));
      CHECK(io_equiv(a, c));
      auto other = random_diagram(gen, vars({"a", "b"}), vars({"c", "d"}));
      CHECK(io_equiv(a, other) == io_equiv(other, a));
    }
  }

  TEST_CASE("io-equivalence reports counterexamples") {
    auto a = make_io_diagram(vars({"a"}), vars({"b"}), Term::id({BaseType::Real}));
    auto b = make_io_diagram(vars({"a"}), vars({"b"}), mk_serial(Term::sink({BaseType::Real}), mk_arb(BaseType::Real)));
    EquivReport rep = io_equiv_report(a, b);
    CHECK_FALSE(rep.equivalent);
    REQUIRE(rep.counterexample.size() == 1);
    CHECK_FALSE(rep.counterexample[0].is_bottom());
    CHECK(rep.rhs == Tuple{bot});
    EquivConfig structural;
    structural.engine = Engine::Structural;
    CHECK_FALSE(io_equiv(a, b, structural));
  }

  TEST_CASE("iterated named parallel is invariant under permutation") {
    TermGen gen(14, 2);
    auto a = random_diagram(gen, vars({"a"}), vars({"b"}));
    auto b = random_diagram(gen, vars({"b", "c"}), vars({"d"}));
    auto c = random_diagram(gen, vars({"d"}), vars({"a", "e"}));
    IoDiagram abc = named_parallel(named_parallel(a, b), c), cab = named_parallel(named_parallel(c, a), b);
    CHECK(io_equiv(abc, cab));
    CHECK(io_equiv(named_feedback(abc), named_feedback(cab)));
  }

  TEST_CASE("type clashes are inequivalent, not errors") {
    IoDiagram a = make_io_diagram({Var{"a", BaseType::Int}, Var{"b", BaseType::Real}}, {Var{"c", BaseType::Int}},
                                  mk_parallel(Term::id({BaseType::Int}), Term::sink({BaseType::Real})));
    IoDiagram b = make_io_diagram({Var{"b", BaseType::Int}, Var{"a", BaseType::Real}}, {Var{"c", BaseType::Int}},
                                  mk_parallel(Term::id({BaseType::Int}), Term::sink({BaseType::Real})));
    EquivReport rep;
    CHECK_NOTHROW(rep = io_equiv_report(a, b));
    CHECK_FALSE(rep.equivalent);
    CHECK(rep.reason.find("types") != std::string::npos);
  }
}
