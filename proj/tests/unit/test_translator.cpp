#include "doctest.h"

#include "hbd/axioms.hpp"
#include "hbd/errors.hpp"
#include "hbd/translator.hpp"
#include "running_example.hpp"

using namespace hbd;
using testing::rv;

namespace {

IoDiagram gain(const char* in, const char* out) {
  return make_io_diagram({rv(in)}, {rv(out)},
                         Term::atom("Gain", ExprFun({rv("x")}, {ex::mul(ex::real(2.0), ex::var("x"))})));
}

std::vector<std::string> output_names(const std::vector<IoDiagram>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.outputs.front().name);
  return out;
}

std::vector<Strategy> strategies() {
  std::vector<Strategy> out{Strategy::feedback_parallel(), Strategy::incremental()};
  for (std::uint64_t s = 1; s <= 20; ++s) out.push_back(Strategy::random(s));
  return out;
}

}  // namespace

TEST_SUITE("translator") {
  TEST_CASE("io-distinctness") {
    CHECK(check_io_distinct(testing::running_example()));
    CHECK_FALSE(check_io_distinct({testing::add_diagram(), testing::add_diagram()}));
    CHECK(check_io_distinct({}));
  }

  TEST_CASE("topological order") {
    auto ex = testing::running_example();
    // Split, Add, Delay form one cycle: original order is kept.
    auto cyc = topo_order({ex[2], ex[0], ex[1]});
    CHECK(output_names(cyc) == std::vector<std::string>{"z", "x", "y"});
    CHECK(topo_order({ex[2], ex[0], ex[1]}).size() == 3);
    auto chain = topo_order({gain("b", "c"), gain("a", "b"), gain("u", "a")});
    CHECK(output_names(chain) == std::vector<std::string>{"a", "b", "c"});
    auto indep = topo_order({gain("p", "q"), gain("r", "s"), gain("t", "w")});
    CHECK(output_names(indep) == std::vector<std::string>{"q", "s", "w"});
    auto idx = topo_order_indices({gain("b", "c"), gain("p", "q"), gain("a", "b")});
    CHECK(idx == std::vector<std::size_t>{1, 2, 0});
  }

  TEST_CASE("interfaces of the running example") {
    for (const auto& s : strategies()) {
      IoDiagram d = translate(testing::running_example(), s);
      CHECK(is_perm(d.inputs, {rv("u"), rv("s")}));
      CHECK(is_perm(d.outputs, {rv("v"), rv("s'")}));
    }
    IoDiagram fbpar = translate(testing::running_example(), Strategy::feedback_parallel());
    CHECK(count_feedback(fbpar.body) == 3);
    IoDiagram incr = translate(testing::running_example(), Strategy::incremental());
    CHECK(count_feedback(incr.body) == 1);
  }

  TEST_CASE("all strategies agree on the running example") {
    IoDiagram ref = translate(testing::running_example(), Strategy::incremental());
    for (const auto& s : strategies()) CHECK_MESSAGE(io_equiv(ref, translate(testing::running_example(), s)), to_string(s));
  }

  TEST_CASE("running example computes the accumulator step") {
    IoDiagram d = translate(testing::running_example(), Strategy::incremental());
    // Inputs (u, s) in some order; v = s and s' = s + u.
    std::size_t iu = d.inputs[0].name == "u" ? 0 : 1;
    std::size_t iv = d.outputs[0].name == "v" ? 0 : 1;
    Tuple in(2);
    in[iu] = Value::real(2);
    in[1 - iu] = Value::real(5);
    Tuple out = eval(d.body, in);
    CHECK(out[iv] == Value::real(5));
    CHECK(out[1 - iv] == Value::real(7));
  }

  TEST_CASE("singleton list yields its named feedback") {
    auto loop = make_io_diagram({rv("a"), rv("b")}, {rv("a"), rv("c")}, Term::switch_types({BaseType::Real}, {BaseType::Real}));
    for (const auto& s : strategies()) {
      IoDiagram d = translate({loop}, s);
      CHECK(io_equiv(d, named_feedback(loop)));
      CHECK(io_equiv(named_feedback(d), d));
    }
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(translate({}, Strategy::incremental()), PreconditionError);
    CHECK_THROWS_AS(translate({testing::add_diagram(), testing::add_diagram()}, Strategy::incremental()),
                    PreconditionError);
  }

  TEST_CASE("random choices are reproducible") {
    auto ex = testing::running_example();
    CHECK(translate(ex, Strategy::random(9)).body == translate(ex, Strategy::random(9)).body);
    std::size_t distinct = 0;
    Term first = translate(ex, Strategy::random(1)).body;
    for (std::uint64_t s = 2; s <= 20; ++s) distinct += !(translate(ex, Strategy::random(s)).body == first);
    CHECK(distinct > 0);
  }

  TEST_CASE("loop invariant holds after every step") {
    TermGen gen(21, 1);
    const char* in_names[][2] = {{"a", "e"}, {"b", "x"}, {"c", "y"}, {"d", "z"}};
    const char* out_names[][2] = {{"b", "w"}, {"c", "a"}, {"d", "v"}, {"x", "y"}};
    std::vector<IoDiagram> ds;
    for (int k = 0; k < 4; ++k) {
      VarList in{rv(in_names[k][0]), rv(in_names[k][1])}, out{rv(out_names[k][0]), rv(out_names[k][1])};
      ds.push_back(make_io_diagram(in, out, gen.term(types_of(in), types_of(out))));
    }
    REQUIRE(check_io_distinct(ds));
    TranslateOptions opts;
    opts.check_invariant = true;
    std::vector<std::string> trace;
    opts.trace = &trace;
    for (const auto& s : strategies()) {
      trace.clear();
      IoDiagram d = translate(ds, s, opts);
      CHECK(!trace.empty());
      CHECK(io_equiv(d, named_feedback(fold_parallel(ds))));
    }
    trace.clear();
    translate(ds, Strategy::incremental(), opts);
    CHECK(trace.size() == 3);
    trace.clear();
    translate(ds, Strategy::feedback_parallel(), opts);
    CHECK(trace.size() == 1);
  }

  TEST_CASE("translation is independent of the list order") {
    auto ex = testing::running_example();
    std::vector<IoDiagram> perm{ex[2], ex[1], ex[0]};
    for (const auto& s : strategies()) CHECK(io_equiv(translate(ex, s), translate(perm, s)));
  }
}
