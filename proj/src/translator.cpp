#include "hbd/translator.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <random>

#include "hbd/errors.hpp"

namespace hbd {

std::string to_string(const Strategy& s) {
  switch (s.kind) {
    case Strategy::Kind::FeedbackParallel: return "fbpar";
    case Strategy::Kind::Incremental: return "incr";
    case Strategy::Kind::RandomChoices: return "random:" + std::to_string(s.seed);
  }
  return "?";
}

bool check_io_distinct(const std::vector<IoDiagram>& ds) {
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j)
      if (!inter(ds[i].inputs, ds[j].inputs).empty() || !inter(ds[i].outputs, ds[j].outputs).empty()) return false;
  return true;
}

std::vector<std::size_t> topo_order_indices(const std::vector<IoDiagram>& ds) {
  const std::size_t n = ds.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !vars_between(ds[i], ds[j]).empty()) succ[i].push_back(j);

  // Tarjan's strongly connected components.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0, ncomp = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);

  const auto nc = static_cast<std::size_t>(ncomp);
  std::vector<std::vector<std::size_t>> members(nc);
  for (std::size_t v = 0; v < n; ++v) members[static_cast<std::size_t>(comp[v])].push_back(v);
  std::vector<std::vector<std::size_t>> csucc(nc);
  std::vector<std::size_t> indeg(nc, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : succ[v]) {
      auto a = static_cast<std::size_t>(comp[v]);
      auto b = static_cast<std::size_t>(comp[w]);
      if (a != b && std::find(csucc[a].begin(), csucc[a].end(), b) == csucc[a].end()) {
        csucc[a].push_back(b);
        ++indeg[b];
      }
    }

  // Kahn, always releasing the ready component with the smallest first member.
  using Item = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (std::size_t c = 0; c < nc; ++c)
    if (indeg[c] == 0) ready.push({members[c].front(), c});
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    auto [first, c] = ready.top();
    ready.pop();
    order.insert(order.end(), members[c].begin(), members[c].end());
    for (std::size_t d : csucc[c])
      if (--indeg[d] == 0) ready.push({members[d].front(), d});
  }
  return order;
}

std::vector<IoDiagram> topo_order(const std::vector<IoDiagram>& ds) {
  std::vector<IoDiagram> out;
  for (std::size_t i : topo_order_indices(ds)) out.push_back(ds[i]);
  return out;
}

IoDiagram fold_parallel(const std::vector<IoDiagram>& ds) {
  if (ds.empty()) return make_io_diagram({}, {}, Term::id({}));
  IoDiagram acc = ds.front();
  for (std::size_t i = 1; i < ds.size(); ++i) acc = named_parallel(acc, ds[i]);
  return acc;
}

namespace {

std::string join_indices(const std::vector<std::size_t>& pick) {
  std::string s;
  for (std::size_t i : pick) s += (s.empty() ? "" : ",") + std::to_string(i);
  return s;
}

}  // namespace

IoDiagram translate(const std::vector<IoDiagram>& ds, const Strategy& strategy, const TranslateOptions& opts) {
  if (ds.empty()) throw PreconditionError("translate: the diagram list is empty");
  if (!check_io_distinct(ds)) throw PreconditionError("translate: the diagram list is not io-distinct");

  std::vector<IoDiagram> work =
      strategy.kind == Strategy::Kind::Incremental ? topo_order(ds) : std::vector<IoDiagram>(ds);
  std::optional<IoDiagram> reference;
  if (opts.check_invariant) reference = named_feedback(fold_parallel(ds));
  std::mt19937_64 rng(strategy.seed);

  while (work.size() > 1) {
    const std::size_t n = work.size();
    bool choose_a = false;
    std::vector<std::size_t> pick;
    switch (strategy.kind) {
      case Strategy::Kind::FeedbackParallel:
        choose_a = true;
        for (std::size_t i = 0; i < n; ++i) pick.push_back(i);
        break;
      case Strategy::Kind::Incremental: pick = {0, 1}; break;
      case Strategy::Kind::RandomChoices: {
        choose_a = (rng() & 1U) != 0;
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
        std::size_t k = choose_a ? 2 + rng() % (n - 1) : 2;
        pick.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
        break;
      }
    }

    IoDiagram merged = [&] {
      if (choose_a) {
        std::vector<IoDiagram> sel;
        for (std::size_t i : pick) sel.push_back(work[i]);
        return named_feedback(fold_parallel(sel));
      }
      return named_feedback(named_serial(named_feedback(work[pick[0]]), named_feedback(work[pick[1]])));
    }();

    if (opts.trace)
      opts.trace->push_back(std::string(choose_a ? "(a) FB(|||" : "(b) FB(;;;") + " of [" + join_indices(pick) +
                            "]) -> " + describe(merged));

    std::vector<IoDiagram> next{merged};
    for (std::size_t i = 0; i < n; ++i)
      if (std::find(pick.begin(), pick.end(), i) == pick.end()) next.push_back(work[i]);
    work = std::move(next);

    if (opts.check_invariant) {
      if (!check_io_distinct(work)) throw PreconditionError("translate: io-distinctness lost during translation");
      EquivConfig ec;
      ec.samples = opts.invariant_samples;
      ec.exhaustive_limit = 0;
      auto rep = io_equiv_report(named_feedback(fold_parallel(work)), *reference, ec);
      if (!rep.equivalent) throw PreconditionError("translate: loop invariant violated: " + rep.reason);
    }
  }
  return named_feedback(work.front());
}

}  // namespace hbd
