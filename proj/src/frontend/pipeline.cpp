#include "hbd/frontend/pipeline.hpp"

#include <map>
#include <set>

#include "hbd/errors.hpp"

namespace hbd::frontend {

std::string to_string(const Method& m) {
  if (m.kind == Method::Kind::Loop) return to_string(m.strategy);
  switch (m.order.kind) {
    case OrderPolicy::Kind::Topological: return "fbless";
    case OrderPolicy::Kind::Random: return "fbless:random:" + std::to_string(m.order.seed);
    case OrderPolicy::Kind::Given: return "fbless:given";
  }
  return "fbless";
}

Method parse_method(const std::string& name, std::uint64_t seed) {
  if (name == "fbpar") return Method::loop(Strategy::feedback_parallel());
  if (name == "incr") return Method::loop(Strategy::incremental());
  if (name == "random") return Method::loop(Strategy::random(seed));
  if (name == "fbless") return Method::feedbackless();
  if (name == "fbless-random") return Method::feedbackless(OrderPolicy::random(seed));
  throw PreconditionError("unknown strategy '" + name + "' (expected fbpar, incr, random, fbless or fbless-random)");
}

DepTable composite_deps(const std::vector<const Element*>& elements, const IoDiagram& d) {
  std::map<std::string, std::set<std::string>> reads;
  for (const Element* e : elements)
    for (std::size_t i = 0; i < e->diagram.outputs.size() && i < e->deps.size(); ++i)
      reads[e->diagram.outputs[i].name].insert(e->deps[i].begin(), e->deps[i].end());
  DepTable out;
  for (const auto& o : d.outputs) {
    std::set<std::string> seen;
    std::vector<std::string> stack{o.name};
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      auto it = reads.find(v);
      if (it == reads.end()) continue;
      for (const auto& r : it->second)
        if (seen.insert(r).second) stack.push_back(r);
    }
    std::vector<std::string> row;
    for (const auto& i : d.inputs)
      if (seen.count(i.name)) row.push_back(i.name);
    out.push_back(std::move(row));
  }
  return out;
}

IoDiagram translate_elements(const std::vector<const Element*>& elements, const Method& m,
                             std::vector<std::string>* trace) {
  if (m.kind == Method::Kind::Loop) {
    if (elements.empty()) return make_io_diagram({}, {}, Term::id({}));
    std::vector<IoDiagram> ds;
    for (const Element* e : elements) ds.push_back(e->diagram);
    TranslateOptions opts;
    opts.trace = trace;
    return translate(ds, m.strategy, opts);
  }
  std::vector<SplitBlock> blocks;
  std::vector<IoDiagram> deferred;
  for (const Element* e : elements) {
    if (e->diagram.outputs.empty()) {
      deferred.push_back(e->diagram);
      continue;
    }
    if (!e->deterministic) throw PreconditionError("feedbackless: block '" + e->path + "' is not deterministic");
    for (auto& b : split_block(e->diagram, true, &e->deps)) blocks.push_back(std::move(b));
  }
  IoDiagram result = fbless_run(blocks, m.order, trace).diagram;
  if (!deferred.empty()) result = named_serial(result, fold_parallel(deferred));
  return result;
}

namespace {

Element translate_instance(const Instance& inst, const Method& m, std::vector<std::string>* trace) {
  std::vector<Element> own;
  std::vector<const Element*> items;
  own.reserve(inst.items.size());
  for (const auto& it : inst.items) {
    if (it.element) {
      items.push_back(it.element.get());
    } else {
      own.push_back(translate_instance(*it.child, m, trace));
      items.push_back(&own.back());
    }
  }
  Element e;
  e.path = inst.path;
  e.kind = inst.kind;
  if (trace) trace->push_back("# " + (inst.path.empty() ? std::string("<root>") : inst.path));
  e.diagram = translate_elements(items, m, trace);
  e.deps = composite_deps(items, e.diagram);
  for (const Element* i : items) e.deterministic = e.deterministic && i->deterministic;
  return e;
}

}  // namespace

Translation translate_doc(const DiagramDoc& doc, const Method& m, Mode mode, std::vector<std::string>* trace) {
  Design design = elaborate(doc);
  Translation t;
  t.states = design.states;
  t.ext_inputs = design.inputs;
  t.ext_outputs = design.outputs;
  if (mode == Mode::Flatten) t.diagram = translate_elements(flatten(design.root), m, trace);
  else t.diagram = translate_instance(design.root, m, trace).diagram;
  return t;
}

IoDiagram flatten_or_recurse(const DiagramDoc& doc, Mode mode, const Method& m) {
  return translate_doc(doc, m, mode).diagram;
}

}  // namespace hbd::frontend
