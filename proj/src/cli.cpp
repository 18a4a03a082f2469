#include "hbd/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hbd/axioms.hpp"
#include "hbd/errors.hpp"
#include "hbd/frontend/dot.hpp"
#include "hbd/frontend/harness.hpp"
#include "hbd/frontend/simulate.hpp"
#include "hbd/term_text.hpp"

namespace hbd::cli {

namespace {

using namespace hbd::frontend;

std::uint64_t default_seed() {
  if (const char* s = std::getenv("HBD_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && end != s) return v;
  }
  return 1;
}

Mode parse_mode(const std::string& m) { return m == "recursive" ? Mode::Recursive : Mode::Flatten; }

struct Common {
  std::string file;
  std::string strategy = "incr";
  std::uint64_t seed = 1;
  std::string mode = "flatten";
};

void add_common(CLI::App* cmd, Common& c, bool with_strategy) {
  cmd->add_option("file", c.file, "diagram file (.hbd.json)")->required();
  if (with_strategy)
    cmd->add_option("--strategy", c.strategy, "fbpar, incr, random, fbless or fbless-random")
        ->check(CLI::IsMember({"fbpar", "incr", "random", "fbless", "fbless-random"}))
        ->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed for random strategies (default $HBD_SEED or 1)")->capture_default_str();
  cmd->add_option("--mode", c.mode, "subsystem handling")
      ->check(CLI::IsMember({"flatten", "recursive"}))
      ->capture_default_str();
}

void print_translation(std::ostream& out, const std::string& name, const Translation& t, bool raw) {
  out << "strategy: " << name << "\n";
  out << "inputs: " << to_string(t.diagram.inputs) << "\n";
  out << "outputs: " << to_string(t.diagram.outputs) << "\n";
  for (const auto& s : t.states)
    out << "state: " << s.state.name << " -> " << s.next.name << " init " << to_string(s.init) << " ("
        << s.block_path << ")\n";
  Term body = raw ? t.diagram.body : rewrite_basic(t.diagram.body);
  out << "feedback nodes: " << count_feedback(body) << "\n";
  out << "term: " << print_term(body) << "\n";
}

int cmd_translate(const Common& c, const std::string& emit, bool raw, bool trace, std::ostream& out) {
  DiagramDoc doc = load_doc(c.file);
  if (emit == "dot") {
    out << emit_dot(doc);
    return kOk;
  }
  Method m = parse_method(c.strategy, c.seed);
  std::vector<std::string> lines;
  Translation t = translate_doc(doc, m, parse_mode(c.mode), trace ? &lines : nullptr);
  for (const auto& l : lines) out << "trace: " << l << "\n";
  print_translation(out, to_string(m), t, raw);
  return kOk;
}

int cmd_check(const Common& c, const CheckConfig& base, std::ostream& out) {
  DiagramDoc doc = load_doc(c.file);
  CheckConfig cfg = base;
  cfg.seed_base = c.seed;
  cfg.mode = parse_mode(c.mode);
  RunReport r = check_determinacy(doc, cfg);
  out << format_report(r);
  return r.all_equivalent() ? kOk : kInequivalent;
}

int cmd_simulate(const Common& c, std::optional<std::size_t> steps, const std::string& csv, const std::string& engine,
                 std::ostream& out) {
  DiagramDoc doc = load_doc(c.file);
  Translation t = translate_doc(doc, parse_method(c.strategy, c.seed), parse_mode(c.mode));
  std::vector<Tuple> rows;
  if (!csv.empty()) {
    std::ifstream in(csv);
    if (!in) throw ParseError("cannot read '" + csv + "'");
    rows = read_inputs_csv(in, t.ext_inputs);
    if (steps) {
      if (rows.size() < *steps)
        throw ParseError("CSV has " + std::to_string(rows.size()) + " rows, " + std::to_string(*steps) +
                         " steps requested");
      rows.resize(*steps);
    }
  } else {
    if (!t.ext_inputs.empty()) throw ParseError("the diagram has inputs; pass them with --inputs");
    rows.assign(steps.value_or(0), Tuple{});
  }
  SimTrace tr = simulate(t, rows, EvalConfig{}, engine == "compiled" ? Engine::Compiled : Engine::Structural);
  write_trace_csv(out, tr);
  return kOk;
}

int cmd_axioms(const AxiomConfig& cfg, std::ostream& out) {
  auto results = run_axioms(cfg);
  std::size_t ok = 0;
  for (const auto& r : results) {
    bool pass = r.ok() && r.max_feedback_iters <= 2;
    ok += pass ? 1 : 0;
    out << (pass ? "PASS " : "FAIL ") << r.name << "  " << r.law << "  (" << r.instances << " instances, "
        << r.checks << " checks, " << r.failures << " counterexamples, max " << r.max_feedback_iters
        << " feedback iterations)\n";
    if (!r.ok()) out << r.counterexample << "\n";
  }
  out << ok << "/" << results.size() << " laws hold\n";
  return ok == results.size() ? kOk : kInequivalent;
}

int cmd_print(const std::string& file, const std::string& emit, std::ostream& out) {
  DiagramDoc doc = load_doc(file);
  if (emit == "dot") out << emit_dot(doc);
  else out << dump_doc(normalize(doc));
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compiles hierarchical block diagrams into algebra terms and checks determinacy", "hbd"};
  app.require_subcommand(1);
  const std::uint64_t seed0 = default_seed();

  Common tr_c, ck_c, sim_c;
  tr_c.seed = ck_c.seed = sim_c.seed = seed0;

  auto* tr = app.add_subcommand("translate", "translate a diagram and print the resulting term");
  add_common(tr, tr_c, true);
  std::string tr_emit = "term";
  bool tr_raw = false, tr_trace = false;
  tr->add_option("--emit", tr_emit, "term or dot")->check(CLI::IsMember({"term", "dot"}))->capture_default_str();
  tr->add_flag("--raw", tr_raw, "print the term as built, without basic rewriting");
  tr->add_flag("--trace", tr_trace, "print one line per translation step");

  auto* ck = app.add_subcommand("check", "translate with every strategy and compare them pairwise");
  add_common(ck, ck_c, false);
  CheckConfig ck_cfg;
  ck->add_option("--seeds", ck_cfg.seeds, "number of random-strategy seeds")->capture_default_str();
  ck->add_option("--samples", ck_cfg.samples, "random samples per equivalence check")->capture_default_str();
  ck->add_option("--threads", ck_cfg.threads, "worker threads (0 = hardware)")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "step a translated diagram over CSV inputs");
  add_common(sim, sim_c, true);
  std::optional<std::size_t> sim_steps;
  std::string sim_csv, sim_engine = "structural";
  sim->add_option("--steps", sim_steps, "number of steps (default: all CSV rows)");
  sim->add_option("--inputs", sim_csv, "CSV file: header of input names, one row per step, `bot` for bottom");
  sim->add_option("--engine", sim_engine, "structural or compiled")
      ->check(CLI::IsMember({"structural", "compiled"}))
      ->capture_default_str();

  auto* ax = app.add_subcommand("axioms", "check the algebra's laws on random instances");
  AxiomConfig ax_cfg;
  ax_cfg.seed = seed0;
  std::string mutation = "none";
  ax->add_option("--samples", ax_cfg.inputs, "inputs per instance")->capture_default_str();
  ax->add_option("--instances", ax_cfg.instances, "instances per law")->capture_default_str();
  ax->add_option("--seed", ax_cfg.seed, "seed (default $HBD_SEED or 1)")->capture_default_str();
  ax->add_option("--mutation", mutation, "evaluate with a deliberate fault")
      ->check(CLI::IsMember({"none", "switch-identity", "split-drops-second", "feedback-skips-fixpoint"}))
      ->capture_default_str();

  auto* pr = app.add_subcommand("print", "print the normalized document");
  std::string pr_file, pr_emit = "json";
  pr->add_option("file", pr_file, "diagram file (.hbd.json)")->required();
  pr->add_option("--emit", pr_emit, "json or dot")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*tr) return cmd_translate(tr_c, tr_emit, tr_raw, tr_trace, out);
    if (*ck) return cmd_check(ck_c, ck_cfg, out);
    if (*sim) return cmd_simulate(sim_c, sim_steps, sim_csv, sim_engine, out);
    if (*ax) {
      if (mutation == "switch-identity") ax_cfg.eval.mutation = Mutation::SwitchIdentity;
      else if (mutation == "split-drops-second") ax_cfg.eval.mutation = Mutation::SplitDropsSecond;
      else if (mutation == "feedback-skips-fixpoint") ax_cfg.eval.mutation = Mutation::FeedbackSkipsFixpoint;
      return cmd_axioms(ax_cfg, out);
    }
    if (*pr) return cmd_print(pr_file, pr_emit, out);
  } catch (const FixpointDivergence& e) {
    err << "error: " << e.what() << "\n";
    return kDivergence;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace hbd::cli
