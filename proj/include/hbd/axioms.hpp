#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hbd/eval.hpp"
#include "hbd/term.hpp"

namespace hbd {

/// Random well-typed terms for property suites. Atoms use the operators of
/// the block library, so every generated term is monotone.
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed, std::size_t max_depth = 2);

  BaseType base();
  TypeList types(std::size_t lo, std::size_t hi);
  /// Random atom function with the given signature.
  ExprFun atom_fn(const TypeList& in, const TypeList& out);
  Term atom(const TypeList& in, const TypeList& out);
  /// Random term of type in -> out built from atoms, constants, serial,
  /// parallel and feedback, nested at most `max_depth` deep.
  Term term(const TypeList& in, const TypeList& out);
  std::mt19937_64& rng() { return rng_; }

 private:
  Term term_at(const TypeList& in, const TypeList& out, std::size_t depth);
  Expr expr(BaseType t, const VarList& params, std::size_t depth);
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }

  std::mt19937_64 rng_;
  std::size_t max_depth_;
  std::size_t atoms_ = 0;
};

/// One equational law of the algebra with a generator of instances.
struct Axiom {
  std::string name;
  std::string law;
  std::function<std::vector<std::pair<Term, Term>>(TermGen&)> instantiate;
};

const std::vector<Axiom>& axioms();

struct AxiomConfig {
  std::size_t instances = 100;
  std::size_t inputs = 100;
  std::uint64_t seed = 1;
  EvalConfig eval;
};

struct AxiomResult {
  std::string name;
  std::string law;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Largest number of body evaluations of any feedback in this suite.
  std::size_t max_feedback_iters = 0;
  std::string counterexample;

  bool ok() const { return failures == 0; }
};

/// Checks every law on `instances` random instantiations, each on `inputs`
/// sampled tuples that include bottom, with the structural evaluator.
std::vector<AxiomResult> run_axioms(const AxiomConfig& cfg);

}  // namespace hbd
