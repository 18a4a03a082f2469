#pragma once

#include <iosfwd>

namespace hbd::cli {

/// Exit codes of the `hbd` tool.
enum Exit : int {
  kOk = 0,
  kInequivalent = 1,  ///< equivalence or axiom counterexample
  kInputError = 2,    ///< usage, parse, schema, type or CSV error
  kPrecondition = 3,  ///< translation precondition failed (e.g. algebraic loop)
  kDivergence = 4,    ///< fixpoint iteration did not converge
};

/// Runs `hbd` with the given arguments (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hbd::cli
