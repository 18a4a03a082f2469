#include "corpus.hpp"

#include <algorithm>
#include <random>

namespace hbd::testing {

using frontend::BlockInst;
using frontend::DiagramDoc;
using frontend::Endpoint;
using frontend::Params;

namespace {

struct Source {
  Endpoint ep;
  BaseType type;
  int block = -1;  // -1 for an external input
  bool delay = false;
  int uses = 0;
};

std::string type_name(BaseType t) { return std::string(to_string(t)); }

}  // namespace

DiagramDoc random_doc(std::uint64_t seed, const CorpusOptions& opts) {
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };

  DiagramDoc doc;
  doc.name = "rand" + std::to_string(seed);
  const std::size_t n = opts.min_blocks + below(opts.max_blocks - opts.min_blocks + 1);

  auto num_type = [&] { return chance(0.75) ? BaseType::Real : BaseType::Int; };
  auto literal = [&](BaseType t) -> Value {
    if (t == BaseType::Int) return Value::integer(static_cast<std::int64_t>(below(7)) - 3);
    return Value::real(static_cast<double>(below(9)) * 0.5 - 2.0);
  };

  for (std::size_t i = 0; i < n; ++i) {
    BlockInst b;
    b.id = "b" + std::to_string(i + 1);
    std::size_t pick = below(20);
    BaseType t = num_type();
    if (pick < 5) {
      b.kind = "UnitDelay";
      b.params = {{"type", type_name(t)}, {"init", literal(t)}};
    } else if (pick < 8) {
      b.kind = "Add";
      b.params = {{"type", type_name(t)}};
    } else if (pick < 9) {
      b.kind = "Sub";
      b.params = {{"type", type_name(t)}};
    } else if (pick < 11) {
      b.kind = "Gain";
      b.params = {{"type", type_name(t)}, {"gain", literal(t)}};
    } else if (pick < 12) {
      b.kind = "Constant";
      b.params = {{"type", type_name(t)}, {"value", literal(t)}};
    } else if (pick < 13) {
      b.kind = chance(0.5) ? "Min" : "Max";
      b.params = {{"type", type_name(t)}};
    } else if (pick < 14) {
      b.kind = "Product";
      b.params = {{"type", type_name(t)}};
    } else if (pick < 15) {
      b.kind = "Relational";
      static const char* ops[] = {"<", "<=", ">", ">=", "==", "!="};
      b.params = {{"type", type_name(t)}, {"op", std::string(ops[below(6)])}};
    } else if (pick < 16) {
      b.kind = "Switch";
      b.params = {{"type", type_name(t)}};
    } else if (pick < 17) {
      static const char* kinds[] = {"LogicalAnd", "LogicalOr", "LogicalNot"};
      b.kind = kinds[below(3)];
    } else if (pick < 18) {
      b.kind = "Split";
      b.params = {{"type", type_name(t)}};
    } else if (pick < 19) {
      b.kind = "Identity";
      b.params = {{"type", type_name(t)}};
    } else {
      b.kind = "Divide";
      b.params = {{"type", type_name(t)}};
    }
    doc.blocks.push_back(std::move(b));
  }

  std::vector<frontend::BlockDef> defs;
  for (const auto& b : doc.blocks) defs.push_back(frontend::instantiate(b.kind, b.params));

  std::vector<Source> sources;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& p : defs[i].out_ports)
      sources.push_back({Endpoint{doc.blocks[i].id, p.name}, p.type, static_cast<int>(i), !defs[i].states.empty(), 0});

  auto new_input = [&](BaseType t) -> std::size_t {
    std::string name = "u" + std::to_string(doc.inputs.size() + 1);
    doc.inputs.push_back({name, t});
    sources.push_back({Endpoint{"", name}, t, -1, false, 0});
    return sources.size() - 1;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : defs[i].in_ports) {
      std::vector<std::size_t> cand;
      for (std::size_t s = 0; s < sources.size(); ++s) {
        const Source& src = sources[s];
        if (src.type != p.type) continue;
        if (!opts.fanout && src.uses > 0) continue;
        if (opts.loop_free && src.block >= static_cast<int>(i) && !src.delay) continue;
        cand.push_back(s);
      }
      std::size_t s = (cand.empty() || chance(0.15)) ? new_input(p.type) : cand[below(cand.size())];
      ++sources[s].uses;
      doc.wires.push_back({sources[s].ep, Endpoint{doc.blocks[i].id, p.name}, ""});
    }
  }

  std::size_t outs = 1 + below(3);
  for (std::size_t k = 0; k < outs; ++k) {
    std::vector<std::size_t> cand, unused;
    for (std::size_t s = 0; s < sources.size(); ++s) {
      if (sources[s].block < 0) continue;
      if (sources[s].uses == 0) unused.push_back(s);
      if (opts.fanout || sources[s].uses == 0) cand.push_back(s);
    }
    const auto& pool = !unused.empty() && chance(0.7) ? unused : cand;
    if (pool.empty()) break;
    std::size_t s = pool[below(pool.size())];
    ++sources[s].uses;
    std::string name = "y" + std::to_string(k + 1);
    doc.outputs.push_back({name, sources[s].type});
    doc.wires.push_back({sources[s].ep, Endpoint{"", name}, ""});
  }
  frontend::validate(doc);
  return doc;
}

std::vector<CorpusEntry> corpus(std::size_t n, std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < n; ++i) {
    CorpusOptions o;
    o.loop_free = i % 2 == 0;
    o.fanout = i % 4 < 2;
    std::string label = std::string(o.loop_free ? "loopfree" : "any") + (o.fanout ? "-fanout" : "-nofanout") + "-" +
                        std::to_string(i);
    out.push_back({label, o, random_doc(seed * 7919 + i, o)});
  }
  return out;
}

DiagramDoc permute(const DiagramDoc& doc, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DiagramDoc d = doc;
  std::shuffle(d.blocks.begin(), d.blocks.end(), rng);
  std::shuffle(d.wires.begin(), d.wires.end(), rng);
  return d;
}

DiagramDoc wrap_in_subsystem(const DiagramDoc& doc) {
  DiagramDoc top;
  top.name = "wrapped_" + doc.name;
  top.inputs = doc.inputs;
  top.outputs = doc.outputs;
  top.blocks.push_back({"inner", "Inner", {}});
  for (const auto& p : doc.inputs) top.wires.push_back({Endpoint{"", p.name}, Endpoint{"inner", p.name}, ""});
  for (const auto& p : doc.outputs) top.wires.push_back({Endpoint{"inner", p.name}, Endpoint{"", p.name}, ""});
  top.subsystems["Inner"] = std::make_shared<DiagramDoc>(doc);
  frontend::validate(top);
  return top;
}

std::vector<Tuple> random_rows(const DiagramDoc& doc, std::size_t steps, std::uint64_t seed, bool include_bottom) {
  std::mt19937_64 rng(seed);
  std::vector<Tuple> rows;
  for (std::size_t k = 0; k < steps; ++k) {
    Tuple row;
    for (const auto& p : doc.inputs) {
      if (include_bottom && rng() % 8 == 0) {
        row.push_back(Value::bottom());
        continue;
      }
      switch (p.type) {
        case BaseType::Real: row.push_back(Value::real(static_cast<double>(rng() % 17) * 0.5 - 4.0)); break;
        case BaseType::Int: row.push_back(Value::integer(static_cast<std::int64_t>(rng() % 11) - 5)); break;
        case BaseType::Bool: row.push_back(Value::boolean(rng() % 2 == 1)); break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hbd::testing
