#include "hbd/frontend/normalize.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hbd/errors.hpp"

namespace hbd::frontend {

namespace {

Scope push(const DiagramDoc* d, const Scope& outer) {
  Scope s = outer;
  s.insert(s.begin(), d);
  return s;
}

/// Scope in which the subsystem `kind` visible from `scope` was defined.
Scope defining_scope(const std::string& kind, const Scope& scope) {
  for (std::size_t i = 0; i < scope.size(); ++i)
    if (scope[i]->subsystems.count(kind)) return Scope(scope.begin() + static_cast<std::ptrdiff_t>(i), scope.end());
  return {};
}

Params type_param(BaseType t) { return Params{{"type", std::string(to_string(t))}}; }

DiagramDoc normalize_in(const DiagramDoc& doc, const Scope& outer) {
  Scope scope = push(&doc, outer);
  DiagramDoc d = doc;
  for (auto& [name, sub] : d.subsystems) sub = std::make_shared<DiagramDoc>(normalize_in(*sub, scope));

  std::map<std::string, PortSig> sigs;
  std::set<std::string> ids;
  for (const auto& b : doc.blocks) {
    sigs[b.id] = resolve_block(b, scope);
    ids.insert(b.id);
  }
  auto fresh_id = [&](const std::string& base) {
    std::string id = base;
    for (int k = 2; ids.count(id); ++k) id = base + "_" + std::to_string(k);
    ids.insert(id);
    return id;
  };
  auto source_type = [&](const Endpoint& e) {
    if (e.block.empty()) {
      for (const auto& p : doc.inputs)
        if (p.name == e.port) return p.type;
    } else {
      for (const auto& p : sigs.at(e.block).outputs)
        if (p.name == e.port) return p.type;
    }
    throw DanglingPortError("unresolved wire source '" + to_string(e) + "'");
  };
  auto stem = [](const Endpoint& e) { return e.block.empty() ? e.port : e.block + "_" + e.port; };

  // Fan-out points become chains of binary Splits.
  std::map<Endpoint, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < d.wires.size(); ++i) by_source[d.wires[i].from].push_back(i);
  std::vector<Wire> wires;
  for (std::size_t i = 0; i < d.wires.size(); ++i) {
    const Wire& w = d.wires[i];
    const auto& group = by_source[w.from];
    if (group.size() == 1) {
      wires.push_back(w);
      continue;
    }
    if (group.front() != i) continue;
    BaseType t = source_type(w.from);
    Endpoint prev = w.from;
    for (std::size_t k = 0; k + 1 < group.size(); ++k) {
      std::string id = fresh_id(stem(w.from) + "_split" + std::to_string(k + 1));
      d.blocks.push_back(BlockInst{id, "Split", type_param(t)});
      wires.push_back(Wire{prev, Endpoint{id, "in"}, ""});
      const Wire& dst = d.wires[group[k]];
      wires.push_back(Wire{Endpoint{id, "out1"}, dst.to, dst.name});
      prev = Endpoint{id, "out2"};
    }
    const Wire& last = d.wires[group.back()];
    wires.push_back(Wire{prev, last.to, last.name});
  }

  // External input wired straight to an external output.
  std::vector<Wire> routed;
  for (const auto& w : wires) {
    if (!w.from.block.empty() || !w.to.block.empty()) {
      routed.push_back(w);
      continue;
    }
    std::string id = fresh_id(w.from.port + "_to_" + w.to.port);
    d.blocks.push_back(BlockInst{id, "Identity", type_param(source_type(w.from))});
    routed.push_back(Wire{w.from, Endpoint{id, "in"}, ""});
    routed.push_back(Wire{Endpoint{id, "out"}, w.to, w.name});
  }

  // Unused sources feed a Terminator.
  std::set<Endpoint> used;
  for (const auto& w : routed) used.insert(w.from);
  auto terminate = [&](const Endpoint& e, BaseType t) {
    if (used.count(e)) return;
    std::string id = fresh_id(stem(e) + "_term");
    d.blocks.push_back(BlockInst{id, "Terminator", type_param(t)});
    routed.push_back(Wire{e, Endpoint{id, "in"}, ""});
  };
  for (const auto& p : doc.inputs) terminate(Endpoint{"", p.name}, p.type);
  for (const auto& b : doc.blocks)
    for (const auto& p : sigs.at(b.id).outputs) terminate(Endpoint{b.id, p.name}, p.type);

  d.wires = std::move(routed);
  return d;
}

void collect_names(const DiagramDoc& d, std::set<std::string>& out) {
  for (const auto& w : d.wires)
    if (!w.name.empty()) out.insert(w.name);
  for (const auto& b : d.blocks)
    if (auto it = b.params.find("state"); it != b.params.end())
      if (const auto* s = std::get_if<std::string>(&it->second)) {
        out.insert(*s);
        out.insert(*s + "'");
      }
  for (const auto& [name, sub] : d.subsystems) collect_names(*sub, out);
}

struct Namer {
  std::set<std::string> reserved;
  std::set<std::string> used;
  int wires = 0;
  int states = 0;

  Var claim(const std::string& name, BaseType t) {
    if (!used.insert(name).second)
      throw SchemaError("variable name '" + name + "' is used by two wires (is a named subsystem instantiated twice?)");
    return Var{name, t};
  }
  std::string fresh(const std::string& prefix, int& counter) {
    std::string n;
    do n = prefix + std::to_string(++counter);
    while (reserved.count(n) || used.count(n) || reserved.count(n + "'") || used.count(n + "'"));
    return n;
  }
};

void elab(const DiagramDoc& d, const Scope& outer, const std::string& path, std::map<std::string, Var> ext,
          Instance& inst, Design& design, Namer& namer) {
  Scope scope = push(&d, outer);
  std::map<std::string, PortSig> sigs;
  for (const auto& b : d.blocks) sigs[b.id] = resolve_block(b, scope);
  std::map<Endpoint, Var> at_in, at_out;
  for (const auto& w : d.wires) {
    Var v;
    if (w.from.block.empty()) {
      v = ext.at(w.from.port);
    } else if (w.to.block.empty()) {
      v = ext.at(w.to.port);
    } else {
      BaseType t = BaseType::Real;
      for (const auto& p : sigs.at(w.from.block).outputs)
        if (p.name == w.from.port) t = p.type;
      v = w.name.empty() ? namer.claim(namer.fresh("w", namer.wires), t) : namer.claim(w.name, t);
    }
    at_out[w.from] = v;
    at_in[w.to] = v;
  }

  for (const auto& b : d.blocks) {
    const PortSig& sig = sigs.at(b.id);
    std::string bpath = path.empty() ? b.id : path + "/" + b.id;
    VarList ins, outs;
    for (const auto& p : sig.inputs) ins.push_back(at_in.at(Endpoint{b.id, p.name}));
    for (const auto& p : sig.outputs) outs.push_back(at_out.at(Endpoint{b.id, p.name}));
    Instance::Item item;
    if (sig.def) {
      const BlockDef& def = *sig.def;
      for (const auto& st : def.states) {
        std::string base;
        if (auto it = b.params.find("state"); it != b.params.end() && def.states.size() == 1)
          base = std::get<std::string>(it->second);
        else
          base = namer.fresh("s", namer.states);
        Var s = namer.claim(base, st.type), sn = namer.claim(base + "'", st.type);
        ins.push_back(s);
        outs.push_back(sn);
        design.states.push_back(StateEntry{s, sn, st.init, bpath});
      }
      auto el = std::make_unique<Element>();
      el->path = bpath;
      el->kind = def.kind;
      el->deterministic = def.deterministic;
      const VarList& params = def.fn.params();
      for (const auto& row : def.deps) {
        std::vector<std::string> r;
        for (const auto& name : row)
          for (std::size_t i = 0; i < params.size(); ++i)
            if (params[i].name == name) r.push_back(ins[i].name);
        el->deps.push_back(std::move(r));
      }
      el->diagram = make_io_diagram(std::move(ins), std::move(outs), Term::atom(def.kind, def.fn));
      item.element = std::move(el);
    } else {
      std::map<std::string, Var> sub_ext;
      for (std::size_t i = 0; i < sig.inputs.size(); ++i) sub_ext[sig.inputs[i].name] = ins[i];
      for (std::size_t i = 0; i < sig.outputs.size(); ++i) sub_ext[sig.outputs[i].name] = outs[i];
      auto child = std::make_unique<Instance>();
      child->path = bpath;
      child->kind = b.kind;
      elab(*sig.sub, defining_scope(b.kind, scope), bpath, std::move(sub_ext), *child, design, namer);
      item.child = std::move(child);
    }
    inst.items.push_back(std::move(item));
  }
}

void flatten_into(const Instance& inst, std::vector<const Element*>& out) {
  for (const auto& it : inst.items) {
    if (it.element) out.push_back(it.element.get());
    else flatten_into(*it.child, out);
  }
}

}  // namespace

DiagramDoc normalize(const DiagramDoc& doc) { return normalize_in(doc, {}); }

Design elaborate(const DiagramDoc& doc) {
  DiagramDoc n = normalize(doc);
  Design design;
  Namer namer;
  collect_names(n, namer.reserved);
  std::map<std::string, Var> ext;
  for (const auto& p : n.inputs) design.inputs.push_back(ext[p.name] = namer.claim(p.name, p.type));
  for (const auto& p : n.outputs) design.outputs.push_back(ext[p.name] = namer.claim(p.name, p.type));
  design.root.kind = n.name;
  elab(n, {}, "", std::move(ext), design.root, design, namer);
  return design;
}

std::vector<const Element*> flatten(const Instance& inst) {
  std::vector<const Element*> out;
  flatten_into(inst, out);
  return out;
}

std::pair<std::vector<IoDiagram>, StateTable> to_io_diagrams(const DiagramDoc& doc) {
  Design d = elaborate(doc);
  std::vector<IoDiagram> out;
  for (const Element* e : flatten(d.root)) out.push_back(e->diagram);
  return {std::move(out), d.states};
}

}  // namespace hbd::frontend
