#include "hbd/feedbackless.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "hbd/errors.hpp"

namespace hbd {

namespace {

std::set<std::string> names_of(const VarList& vs) {
  std::set<std::string> s;
  for (const auto& v : vs) s.insert(v.name);
  return s;
}

std::size_t index_of(const VarList& vs, const std::string& name) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i].name == name) return i;
  return vs.size();
}

}  // namespace

std::vector<SplitBlock> split_block(const IoDiagram& a, bool deterministic, const DepTable* deps) {
  if (!deterministic) throw PreconditionError("split_block: " + describe(a) + " is not marked deterministic");
  const std::size_t n = a.outputs.size();
  if (deps && deps->size() != n)
    throw PreconditionError("split_block: dependency table has " + std::to_string(deps->size()) + " rows for " +
                            std::to_string(n) + " outputs");
  auto dep_vars = [&](std::size_t i) {
    if (!deps) return a.inputs;
    for (const auto& d : (*deps)[i])
      if (!contains(a.inputs, d))
        throw PreconditionError("split_block: dependency '" + d + "' is not an input of " + describe(a));
    VarList vs;
    for (const auto& v : a.inputs)
      if (std::find((*deps)[i].begin(), (*deps)[i].end(), v.name) != (*deps)[i].end()) vs.push_back(v);
    return vs;
  };

  std::vector<SplitBlock> out;
  if (n == 1) {
    out.push_back({a, names_of(dep_vars(0)), true});
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    VarList ins = dep_vars(i);
    VarList o{a.outputs[i]};
    Term body = Term::id({});
    if (deps && a.body.is(Term::Kind::Atom)) {
      std::vector<std::size_t> keep;
      for (const auto& v : ins) keep.push_back(index_of(a.inputs, v.name));
      ExprFun f = a.body.fn().project(i, keep);
      if (f.bodies().front().kind() == Expr::Kind::Param) body = Term::id({a.outputs[i].type});
      else body = Term::atom(a.body.atom_name() + "_" + std::to_string(i + 1), std::move(f));
    } else {
      body = mk_serial(mk_serial(switch_vars(ins, a.inputs), a.body), switch_vars(a.outputs, o));
    }
    out.push_back({make_io_diagram(ins, std::move(o), std::move(body)), names_of(ins), true});
  }
  return out;
}

bool check_deterministic(const IoDiagram& a, std::size_t samples, std::uint64_t seed) {
  VarList ii = a.inputs;
  ii.insert(ii.end(), a.inputs.begin(), a.inputs.end());
  VarList oo = a.outputs;
  oo.insert(oo.end(), a.outputs.begin(), a.outputs.end());
  CompiledTerm lhs(mk_serial(switch_vars(a.inputs, ii), mk_parallel(a.body, a.body)));
  CompiledTerm rhs(mk_serial(a.body, switch_vars(a.outputs, oo)));
  for (const Tuple& v : sample_inputs(a.body.in_type(), samples, seed, true))
    if (!agree(lhs.run(v), rhs.run(v), 1e-9)) return false;
  return true;
}

OiRel oi_rel(const std::vector<SplitBlock>& blocks) {
  OiRel r;
  for (const auto& b : blocks)
    for (const auto& o : b.base.outputs)
      for (const auto& d : b.deps) r.insert({o.name, d});
  return r;
}

OiRel closure(const OiRel& r) {
  std::map<std::string, std::set<std::string>> succ;
  for (const auto& [a, b] : r) succ[a].insert(b);
  OiRel out;
  for (const auto& [start, _] : succ) {
    std::vector<std::string> stack(succ[start].begin(), succ[start].end());
    std::set<std::string> seen;
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      if (!seen.insert(v).second) continue;
      out.insert({start, v});
      auto it = succ.find(v);
      if (it != succ.end()) stack.insert(stack.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

LoopReport find_algebraic_loop(const std::vector<SplitBlock>& blocks) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [a, b] : oi_rel(blocks)) succ[a].push_back(b);
  std::map<std::string, int> color;  // 0 new, 1 on path, 2 done
  std::vector<std::string> path;
  LoopReport rep;
  std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
    color[v] = 1;
    path.push_back(v);
    for (const auto& w : succ[v]) {
      if (color[w] == 1) {
        auto it = std::find(path.begin(), path.end(), w);
        rep.witness.assign(it, path.end());
        rep.witness.push_back(w);
        return true;
      }
      if (color[w] == 0 && dfs(w)) return true;
    }
    path.pop_back();
    color[v] = 2;
    return false;
  };
  for (const auto& [v, _] : succ) {
    if (color[v] == 0 && dfs(v)) {
      rep.loop_free = false;
      return rep;
    }
  }
  return rep;
}

bool loop_free(const std::vector<SplitBlock>& blocks) { return find_algebraic_loop(blocks).loop_free; }

std::set<std::string> internal_vars(const std::vector<SplitBlock>& blocks) {
  std::set<std::string> ins, res;
  for (const auto& b : blocks)
    for (const auto& v : b.base.inputs) ins.insert(v.name);
  for (const auto& b : blocks)
    for (const auto& o : b.base.outputs)
      if (ins.count(o.name)) res.insert(o.name);
  return res;
}

SplitBlock internal_serial(const SplitBlock& a, const SplitBlock& b) {
  if (!contains(b.base.inputs, a.output().name)) return b;
  SplitBlock r;
  r.base = named_serial(a.base, b.base);
  r.deps = b.deps;
  r.deps.erase(a.output().name);
  r.deps.insert(a.deps.begin(), a.deps.end());
  r.deterministic = a.deterministic && b.deterministic;
  return r;
}

void check_ok_fbless(const std::vector<SplitBlock>& blocks) {
  std::set<std::string> outs;
  for (const auto& b : blocks) {
    if (b.base.outputs.size() != 1)
      throw PreconditionError("feedbackless: " + describe(b.base) + " does not have exactly one output");
    if (!b.deterministic) throw PreconditionError("feedbackless: " + describe(b.base) + " is not deterministic");
    for (const auto& d : b.deps)
      if (!contains(b.base.inputs, d))
        throw PreconditionError("feedbackless: dependency '" + d + "' is not an input of " + describe(b.base));
    if (!outs.insert(b.output().name).second)
      throw PreconditionError("feedbackless: output '" + b.output().name + "' is produced twice");
  }
  LoopReport loop = find_algebraic_loop(blocks);
  if (!loop.loop_free) {
    std::string w;
    for (const auto& v : loop.witness) w += (w.empty() ? "" : " -> ") + v;
    throw PreconditionError("feedbackless: algebraic loop " + w);
  }
}

std::vector<std::string> elimination_order(const std::vector<SplitBlock>& blocks, const OrderPolicy& policy) {
  std::set<std::string> internal = internal_vars(blocks);
  switch (policy.kind) {
    case OrderPolicy::Kind::Given: return policy.vars;
    case OrderPolicy::Kind::Random: {
      std::vector<std::string> vs(internal.begin(), internal.end());
      std::mt19937_64 rng(policy.seed);
      for (std::size_t i = vs.size(); i > 1; --i) std::swap(vs[i - 1], vs[rng() % i]);
      return vs;
    }
    case OrderPolicy::Kind::Topological: break;
  }
  // Kahn over internal variables, sources first, ties by producer position.
  std::map<std::string, std::size_t> producer;
  for (std::size_t i = 0; i < blocks.size(); ++i) producer[blocks[i].output().name] = i;
  std::map<std::string, std::size_t> pending;
  std::map<std::string, std::vector<std::string>> users;
  for (const auto& u : internal) {
    pending[u] = 0;
    for (const auto& d : blocks[producer[u]].deps)
      if (internal.count(d)) {
        ++pending[u];
        users[d].push_back(u);
      }
  }
  using Item = std::pair<std::size_t, std::string>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (const auto& [u, k] : pending)
    if (k == 0) ready.push({producer[u], u});
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string u = ready.top().second;
    ready.pop();
    order.push_back(u);
    for (const auto& w : users[u])
      if (--pending[w] == 0) ready.push({producer[w], w});
  }
  return order;
}

std::vector<SplitBlock> fbless_step(const std::vector<SplitBlock>& blocks, const std::string& var) {
  auto it = std::find_if(blocks.begin(), blocks.end(), [&](const SplitBlock& b) { return b.output().name == var; });
  if (it == blocks.end()) throw PreconditionError("feedbackless: no block produces '" + var + "'");
  std::vector<SplitBlock> next;
  for (auto jt = blocks.begin(); jt != blocks.end(); ++jt)
    if (jt != it) next.push_back(internal_serial(*it, *jt));
  return next;
}

FblessResult fbless_run(const std::vector<SplitBlock>& blocks, const OrderPolicy& policy,
                        std::vector<std::string>* trace) {
  check_ok_fbless(blocks);
  FblessResult res;
  res.order = elimination_order(blocks, policy);
  std::vector<SplitBlock> work = blocks;
  for (const auto& u : res.order) {
    if (!internal_vars(work).count(u))
      throw PreconditionError("feedbackless: '" + u + "' is not an internal variable at this point");
    work = fbless_step(work, u);
    if (trace) {
      std::string s = "eliminate " + u + ":";
      for (const auto& b : work) s += " " + describe(b.base);
      trace->push_back(s);
    }
  }
  auto left = internal_vars(work);
  if (!left.empty()) {
    std::string s;
    for (const auto& v : left) s += (s.empty() ? "" : ",") + v;
    throw PreconditionError("feedbackless: elimination order leaves internal variables " + s);
  }
  std::vector<IoDiagram> ds;
  for (const auto& b : work) ds.push_back(b.base);
  if (ds.empty()) {
    res.diagram = make_io_diagram({}, {}, Term::id({}));
  } else {
    res.diagram = ds.front();
    for (std::size_t i = 1; i < ds.size(); ++i) res.diagram = named_parallel(res.diagram, ds[i]);
  }
  res.final_blocks = std::move(work);
  return res;
}

IoDiagram fbless_translate(const std::vector<SplitBlock>& blocks, const OrderPolicy& policy) {
  return fbless_run(blocks, policy).diagram;
}

SharingStats count_shared_compositions(const Term& term) {
  SharingStats st;
  std::unordered_map<const void*, Term> nodes;
  std::unordered_map<const void*, std::size_t> parents;
  std::vector<Term> stack{term};
  nodes.emplace(term.identity(), term);
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    std::vector<Term> kids;
    if (t.is(Term::Kind::Serial) || t.is(Term::Kind::Parallel)) kids = {t.lhs(), t.rhs()};
    else if (t.is(Term::Kind::Feedback)) kids = {t.body()};
    std::unordered_set<const void*> distinct;
    for (const auto& k : kids) {
      if (!distinct.insert(k.identity()).second) continue;
      ++parents[k.identity()];
      if (nodes.emplace(k.identity(), k).second) stack.push_back(k);
    }
  }

  std::unordered_map<const void*, std::size_t> tree_memo;
  std::function<std::size_t(const Term&)> tree_serials = [&](const Term& t) -> std::size_t {
    if (auto it = tree_memo.find(t.identity()); it != tree_memo.end()) return it->second;
    std::size_t n = t.is(Term::Kind::Serial) ? 1 : 0;
    if (t.is(Term::Kind::Serial) || t.is(Term::Kind::Parallel)) n += tree_serials(t.lhs()) + tree_serials(t.rhs());
    else if (t.is(Term::Kind::Feedback)) n += tree_serials(t.body());
    tree_memo.emplace(t.identity(), n);
    return n;
  };
  st.serial_nodes_tree = tree_serials(term);

  std::unordered_map<std::size_t, std::vector<Term>> by_hash;
  std::unordered_map<const void*, std::size_t> contexts;
  for (const auto& [id, t] : nodes) {
    if (!t.is(Term::Kind::Serial)) continue;
    ++st.serial_nodes;
    if (parents[id] >= 2) ++st.shared_serial_nodes;
    by_hash[t.hash()].push_back(t);
    // Atoms reachable without passing through another Serial node.
    std::unordered_set<const void*> seen;
    std::vector<Term> todo{t.lhs(), t.rhs()};
    while (!todo.empty()) {
      Term u = todo.back();
      todo.pop_back();
      if (!seen.insert(u.identity()).second) continue;
      if (u.is(Term::Kind::Atom)) ++contexts[u.identity()];
      else if (u.is(Term::Kind::Parallel)) todo.insert(todo.end(), {u.lhs(), u.rhs()});
      else if (u.is(Term::Kind::Feedback)) todo.push_back(u.body());
    }
  }
  for (auto& [h, group] : by_hash) {
    std::vector<bool> counted(group.size(), false);
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (counted[i]) continue;
      bool repeated = false;
      for (std::size_t j = i + 1; j < group.size(); ++j)
        if (!counted[j] && group[i] == group[j]) counted[j] = repeated = true;
      if (repeated) ++st.repeated_serial_structures;
    }
  }
  for (const auto& [id, n] : contexts) st.max_atom_serial_contexts = std::max(st.max_atom_serial_contexts, n);
  return st;
}

}  // namespace hbd
