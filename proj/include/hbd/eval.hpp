#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hbd/term.hpp"
#include "hbd/value.hpp"

namespace hbd {

/// Deliberate semantic faults, used to check that the axiom suite has teeth.
enum class Mutation : std::uint8_t {
  None,
  SwitchIdentity,         ///< Switch passes its input through unchanged.
  SplitDropsSecond,       ///< Split emits bottom on its second copy.
  FeedbackSkipsFixpoint,  ///< Feedback stops after one body evaluation.
};

struct EvalConfig {
  /// When false, x * 0 = 0 * x = 0 even if x is bottom.
  bool strict_multiply = true;
  /// Body evaluations allowed per feedback (structural) or updates per wire
  /// (compiled) before FixpointDivergence is thrown.
  std::size_t max_fix_iters = 8;
  double real_tolerance = 1e-9;
  Mutation mutation = Mutation::None;
};

struct EvalStats {
  /// Largest number of body evaluations any single feedback needed.
  std::size_t max_feedback_iters = 0;
  /// Total body evaluations across all feedback nodes.
  std::size_t feedback_body_evals = 0;
};

Value eval_expr(const Expr& e, const Tuple& args, const EvalConfig& cfg = {});
Tuple eval_fn(const ExprFun& fn, const Tuple& args, const EvalConfig& cfg = {});

/// Reference semantics: compositional evaluation, each feedback computed as a
/// Kleene iteration from bottom that stops at the first repeated value.
/// Throws TypeError if `input` does not inhabit the input type.
Tuple eval(const Term& term, const Tuple& input, const EvalConfig& cfg = {}, EvalStats* stats = nullptr);

/// Netlist form of a term. Plumbing disappears into wire renaming, feedback
/// loops become wire aliases, and all atoms are iterated together from bottom
/// until stable. Agrees with `eval` and runs in polynomial time where nested
/// feedback makes `eval` exponential. Mutations are not supported.
class CompiledTerm {
 public:
  struct Stats {
    std::size_t sweeps = 0;
    /// Largest number of times one wire changed value.
    std::size_t max_wire_updates = 0;
  };

  explicit CompiledTerm(const Term& term);

  Tuple run(const Tuple& input, const EvalConfig& cfg = {}, Stats* stats = nullptr) const;

  const TypeList& in_type() const { return in_; }
  const TypeList& out_type() const { return out_; }
  std::size_t atom_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::shared_ptr<const ExprFun> fn;
    std::vector<int> inputs;  ///< resolved wire ids, -1 for constant bottom
    std::vector<int> outputs;
  };
  TypeList in_, out_;
  std::size_t wire_count_ = 0;
  std::vector<Node> nodes_;
  std::vector<int> outputs_;
};

enum class Engine : std::uint8_t { Structural, Compiled };

/// Deterministic samples of type `t`. With `include_bottom`, each coordinate is
/// bottom with probability 1/4. All-Bool types are enumerated exhaustively when
/// that takes at most `n` tuples. The empty type yields one empty tuple.
std::vector<Tuple> sample_inputs(const TypeList& t, std::size_t n, std::uint64_t seed, bool include_bottom);

struct MonotoneReport {
  bool ok = true;
  std::size_t checked = 0;
  Tuple lower, upper;          ///< offending inputs, lower <= upper
  Tuple lower_out, upper_out;  ///< their images, not ordered
};

/// Samples pairs x <= y and checks term(x) <= term(y).
MonotoneReport check_monotone(const Term& term, std::size_t samples, std::uint64_t seed,
                              Engine engine = Engine::Compiled, const EvalConfig& cfg = {});

/// Throws TypeError unless `v` has one value per type, each inhabiting it.
void check_tuple(const TypeList& t, const Tuple& v, const char* what);

}  // namespace hbd
