#include "hbd/frontend/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "hbd/errors.hpp"

namespace hbd::frontend {

bool RunReport::all_equivalent() const {
  for (const auto& row : matrix)
    for (const auto& e : row)
      if (!e.equivalent) return false;
  return true;
}

RunReport check_determinacy(const DiagramDoc& doc, const CheckConfig& cfg) {
  std::vector<Method> methods{Method::loop(Strategy::feedback_parallel()), Method::loop(Strategy::incremental())};
  for (std::size_t k = 0; k < cfg.seeds; ++k) methods.push_back(Method::loop(Strategy::random(cfg.seed_base + k)));
  if (cfg.include_fbless) methods.push_back(Method::feedbackless());

  RunReport rep;
  for (const Method& m : methods) {
    StrategyRun run;
    run.name = to_string(m);
    run.method = m;
    auto t0 = std::chrono::steady_clock::now();
    try {
      run.diagram = translate_doc(doc, m, cfg.mode).diagram;
      run.term_size = run.diagram.body.size();
    } catch (const PreconditionError& e) {
      if (m.kind != Method::Kind::Feedbackless) throw;
      run.skipped = e.what();
    }
    run.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (run.skipped.empty()) rep.applicable.push_back(rep.runs.size());
    rep.runs.push_back(std::move(run));
  }

  const std::size_t n = rep.applicable.size();
  rep.matrix.assign(n, std::vector<EquivReport>(n));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    rep.matrix[i][i].equivalent = true;
    rep.matrix[i][i].reason = "identical";
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  EquivConfig ec;
  ec.samples = cfg.samples;
  ec.seed = cfg.seed_base;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t p; (p = next++) < pairs.size();) {
      auto [i, j] = pairs[p];
      rep.matrix[i][j] =
          io_equiv_report(rep.runs[rep.applicable[i]].diagram, rep.runs[rep.applicable[j]].diagram, ec);
    }
  };
  std::size_t threads = cfg.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : cfg.threads;
  threads = std::min(threads, std::max<std::size_t>(1, pairs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto [i, j] : pairs) rep.matrix[j][i] = rep.matrix[i][j];
  return rep;
}

std::string format_report(const RunReport& r) {
  std::ostringstream os;
  os << "strategies:\n";
  for (const auto& run : r.runs) {
    os << "  " << run.name;
    if (!run.skipped.empty()) {
      os << "  skipped: " << run.skipped << "\n";
      continue;
    }
    os << "  size " << run.term_size << "  " << describe(run.diagram) << "  " << run.millis << " ms\n";
  }
  os << "equivalence matrix (" << r.applicable.size() << "x" << r.applicable.size() << "):\n";
  for (std::size_t i = 0; i < r.matrix.size(); ++i) {
    os << "  ";
    for (std::size_t j = 0; j < r.matrix.size(); ++j) os << (r.matrix[i][j].equivalent ? '1' : '0');
    os << "  " << r.runs[r.applicable[i]].name << "\n";
  }
  for (std::size_t i = 0; i < r.matrix.size(); ++i)
    for (std::size_t j = i + 1; j < r.matrix.size(); ++j) {
      const EquivReport& e = r.matrix[i][j];
      if (e.equivalent) continue;
      os << "NOT EQUIVALENT " << r.runs[r.applicable[i]].name << " vs " << r.runs[r.applicable[j]].name << ": "
         << e.reason;
      if (!e.counterexample.empty() || !e.lhs.empty())
        os << " input " << to_string(e.counterexample) << " gives " << to_string(e.lhs) << " vs "
           << to_string(e.rhs);
      os << "\n";
    }
  os << (r.all_equivalent() ? "all equivalent\n" : "inequivalence found\n");
  return os.str();
}

}  // namespace hbd::frontend
