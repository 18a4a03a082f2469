#include "doctest.h"

#include <set>

#include "hbd/axioms.hpp"

using namespace hbd;

TEST_SUITE("axioms") {
  TEST_CASE("sixteen distinct laws") {
    const auto& ax = axioms();
    CHECK(ax.size() == 16);
    std::set<std::string> names;
    for (const auto& a : ax) names.insert(a.name);
    CHECK(names.size() == 16);
  }

  TEST_CASE("instances are well typed and sides share a typing") {
    TermGen gen(2);
    for (const auto& a : axioms()) {
      for (int k = 0; k < 20; ++k) {
        for (const auto& [lhs, rhs] : a.instantiate(gen)) {
          CHECK_MESSAGE(lhs.well_typed(), a.name);
          CHECK_MESSAGE(rhs.well_typed(), a.name);
          CHECK_MESSAGE(type_of(lhs) == type_of(rhs), a.name);
        }
      }
    }
  }

  TEST_CASE("generated terms have the requested typing") {
    TermGen gen(4, 3);
    for (int k = 0; k < 200; ++k) {
      TypeList in = gen.types(0, 4), out = gen.types(0, 4);
      Term t = gen.term(in, out);
      CHECK(type_of(t) == Typing{in, out});
    }
  }

  TEST_CASE("every law holds on a small budget") {
    AxiomConfig cfg;
    cfg.instances = 20;
    cfg.inputs = 20;
    for (const auto& r : run_axioms(cfg)) {
      CHECK_MESSAGE(r.ok(), r.name << ": " << r.counterexample);
      CHECK(r.max_feedback_iters <= 2);
      CHECK(r.checks >= 20);
    }
  }

  TEST_CASE("the suite detects semantic faults") {
    for (Mutation m : {Mutation::SwitchIdentity, Mutation::SplitDropsSecond, Mutation::FeedbackSkipsFixpoint}) {
      AxiomConfig cfg;
      cfg.instances = 20;
      cfg.inputs = 20;
      cfg.eval.mutation = m;
      std::size_t failing = 0;
      for (const auto& r : run_axioms(cfg)) failing += !r.ok();
      CHECK(failing >= 1);
    }
  }
}
