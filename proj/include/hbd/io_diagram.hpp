#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hbd/eval.hpp"
#include "hbd/term.hpp"
#include "hbd/types.hpp"

namespace hbd {

/// x ⊗ y: elements of x that occur in y, in x order.
VarList inter(const VarList& x, const VarList& y);
/// x ⊖ y: elements of x that do not occur in y, in x order.
VarList minus(const VarList& x, const VarList& y);
/// x ⊕ y = x · (y ⊖ x).
VarList union_ord(const VarList& x, const VarList& y);
/// True iff x and y hold the same names with the same multiplicities.
bool is_perm(const VarList& x, const VarList& y);
bool pairwise_distinct(const VarList& x);
bool contains(const VarList& x, const std::string& name);

/// General switch [x ~> y] : T(x) -> T(y). Output y_j copies the first input
/// named y_j, or is bottom (via Arb) when no input has that name.
Term switch_vars(const VarList& x, const VarList& y);

/// Diagram with named inputs and outputs: body : T(inputs) -> T(outputs).
struct IoDiagram {
  VarList inputs;
  VarList outputs;
  Term body;
};

/// Checks the invariants (distinct names, body typing) and throws TypeError.
IoDiagram make_io_diagram(VarList inputs, VarList outputs, Term body);
void check_io_diagram(const IoDiagram& d);

std::string describe(const IoDiagram& d);

/// V(A,B) = O(A) ⊗ I(B).
VarList vars_between(const IoDiagram& a, const IoDiagram& b);

/// A ;;; B. Throws CompositionError unless (O(A) ⊖ I(B)) ⊗ O(B) = ε.
IoDiagram named_serial(const IoDiagram& a, const IoDiagram& b);
/// A ||| B. Throws CompositionError unless O(A) ⊗ O(B) = ε.
IoDiagram named_parallel(const IoDiagram& a, const IoDiagram& b);
/// FB(A): closes every variable that is both an input and an output.
IoDiagram named_feedback(const IoDiagram& a);

struct EquivConfig {
  /// Random tuples (bottom included) checked in addition to any exhaustive pass.
  std::size_t samples = 200;
  /// Exhaustive pass over {bot, two canonical values}^n when 3^n is at most this.
  std::size_t exhaustive_limit = 4096;
  std::uint64_t seed = 1;
  double rel_tol = 1e-9;
  Engine engine = Engine::Compiled;
  EvalConfig eval;
};

struct EquivReport {
  bool equivalent = false;
  std::string reason;
  std::size_t checked = 0;
  Tuple counterexample;  ///< in I(A) order
  Tuple lhs, rhs;        ///< outputs in O(A) order
};

/// A ~ B: I(B) and O(B) permute I(A) and O(A), and D(A) agrees with
/// [I(A)~>I(B)] ;; D(B) ;; [O(B)~>O(A)] on every sampled input.
EquivReport io_equiv_report(const IoDiagram& a, const IoDiagram& b, const EquivConfig& cfg = {});
bool io_equiv(const IoDiagram& a, const IoDiagram& b, const EquivConfig& cfg = {});

}  // namespace hbd
