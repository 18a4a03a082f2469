#include "hbd/frontend/doc.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hbd/errors.hpp"

namespace hbd::frontend {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string to_string(const Endpoint& e) { return e.block.empty() ? e.port : e.block + "." + e.port; }

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& msg) {
  throw SchemaError(where.empty() ? msg : where + ": " + msg);
}

void only_fields(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) schema(where, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) schema(where, "unknown field '" + k + "'");
  }
}

std::string get_string(const json& obj, const char* key, const std::string& where, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) schema(where, std::string("missing field '") + key + "'");
    return {};
  }
  if (!it->is_string()) schema(where, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

bool plain_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

std::vector<PortDecl> parse_ports(const json& obj, const char* key, const std::string& where) {
  std::vector<PortDecl> out;
  auto it = obj.find(key);
  if (it == obj.end()) return out;
  if (!it->is_array()) schema(where, std::string("field '") + key + "' must be an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& p = (*it)[i];
    std::string w = where + "." + key + "[" + std::to_string(i) + "]";
    only_fields(p, w, {"name", "type"});
    PortDecl d;
    d.name = get_string(p, "name", w, true);
    if (!plain_name(d.name)) schema(w, "invalid port name '" + d.name + "'");
    std::string t = get_string(p, "type", w, false);
    if (!t.empty()) {
      auto bt = parse_base_type(t);
      if (!bt) schema(w, "unknown type '" + t + "'");
      d.type = *bt;
    }
    out.push_back(d);
  }
  return out;
}

Params parse_params(const json& j, const std::string& where) {
  Params out;
  if (!j.is_object()) schema(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (v.is_boolean()) out[k] = Value::boolean(v.get<bool>());
    else if (v.is_number_integer()) out[k] = Value::integer(v.get<std::int64_t>());
    else if (v.is_number_float()) out[k] = Value::real(v.get<double>());
    else if (v.is_string()) out[k] = v.get<std::string>();
    else schema(where + "." + k, "parameter must be a number, boolean or string");
  }
  return out;
}

Endpoint parse_endpoint(const std::string& s, const std::string& where) {
  auto dot = s.find('.');
  Endpoint e;
  if (dot == std::string::npos) {
    e.port = s;
  } else {
    e.block = s.substr(0, dot);
    e.port = s.substr(dot + 1);
    if (e.block.empty()) schema(where, "empty block id in '" + s + "'");
  }
  if (e.port.empty()) schema(where, "empty port in '" + s + "'");
  return e;
}

DiagramDoc from_json(const json& j, const std::string& where, bool top) {
  if (top) {
    only_fields(j, where, {"version", "name", "inputs", "outputs", "blocks", "wires", "subsystems"});
    auto v = j.find("version");
    if (v == j.end()) schema(where, "missing field 'version'");
    if (!v->is_number_integer() || v->get<std::int64_t>() != 1) schema(where, "unsupported version (expected 1)");
  } else {
    only_fields(j, where, {"name", "inputs", "outputs", "blocks", "wires", "subsystems"});
  }
  DiagramDoc d;
  d.name = get_string(j, "name", where, false);
  d.inputs = parse_ports(j, "inputs", where);
  d.outputs = parse_ports(j, "outputs", where);

  if (auto it = j.find("blocks"); it != j.end()) {
    if (!it->is_array()) schema(where, "field 'blocks' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& b = (*it)[i];
      std::string w = where + ".blocks[" + std::to_string(i) + "]";
      only_fields(b, w, {"id", "kind", "params"});
      BlockInst bi;
      bi.id = get_string(b, "id", w, true);
      bi.kind = get_string(b, "kind", w, true);
      if (auto p = b.find("params"); p != b.end()) bi.params = parse_params(*p, w + ".params");
      d.blocks.push_back(std::move(bi));
    }
  }
  if (auto it = j.find("wires"); it != j.end()) {
    if (!it->is_array()) schema(where, "field 'wires' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& wj = (*it)[i];
      std::string w = where + ".wires[" + std::to_string(i) + "]";
      only_fields(wj, w, {"from", "to", "name"});
      Wire wire;
      wire.from = parse_endpoint(get_string(wj, "from", w, true), w);
      wire.to = parse_endpoint(get_string(wj, "to", w, true), w);
      wire.name = get_string(wj, "name", w, false);
      d.wires.push_back(std::move(wire));
    }
  }
  if (auto it = j.find("subsystems"); it != j.end()) {
    if (!it->is_object()) schema(where, "field 'subsystems' must be an object");
    for (const auto& [name, sj] : it->items()) {
      auto sub = std::make_shared<DiagramDoc>(from_json(sj, where + ".subsystems." + name, false));
      if (sub->name.empty()) sub->name = name;
      d.subsystems[name] = std::move(sub);
    }
  }
  return d;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

VarList ports_of(const std::vector<PortDecl>& ps) {
  VarList out;
  for (const auto& p : ps) out.push_back(Var{p.name, p.type});
  return out;
}

const Var* find_port(const VarList& ps, const std::string& name) {
  for (const auto& p : ps)
    if (p.name == name) return &p;
  return nullptr;
}

/// Replaces a 1-based numeric port reference by the port name.
void canonical_port(Endpoint& e, const VarList& ports) {
  if (e.port.empty() || !std::all_of(e.port.begin(), e.port.end(), [](char c) { return std::isdigit(c); })) return;
  std::size_t k = std::stoul(e.port);
  if (k >= 1 && k <= ports.size()) e.port = ports[k - 1].name;
}

struct Resolved {
  PortSig sig;
  std::size_t scope_depth = 0;
};

std::optional<Resolved> lookup_sub(const std::string& kind, const Scope& scope) {
  for (std::size_t i = 0; i < scope.size(); ++i) {
    auto it = scope[i]->subsystems.find(kind);
    if (it != scope[i]->subsystems.end()) {
      Resolved r;
      r.sig.inputs = ports_of(it->second->inputs);
      r.sig.outputs = ports_of(it->second->outputs);
      r.sig.sub = it->second;
      r.scope_depth = i;
      return r;
    }
  }
  return std::nullopt;
}

void canonicalize(DiagramDoc& d, Scope scope) {
  scope.insert(scope.begin(), &d);
  std::map<std::string, PortSig> sigs;
  for (const auto& b : d.blocks) {
    try {
      sigs[b.id] = resolve_block(b, scope);
    } catch (const Error&) {
      // Reported with context by validate.
    }
  }
  for (auto& w : d.wires) {
    if (auto it = sigs.find(w.from.block); !w.from.block.empty() && it != sigs.end())
      canonical_port(w.from, it->second.outputs);
    if (auto it = sigs.find(w.to.block); !w.to.block.empty() && it != sigs.end())
      canonical_port(w.to, it->second.inputs);
  }
  for (auto& [name, sub] : d.subsystems) canonicalize(*sub, scope);
}

void validate_one(const DiagramDoc& d, Scope scope, const std::string& where) {
  scope.insert(scope.begin(), &d);
  std::set<std::string> ext;
  for (const auto& p : d.inputs)
    if (!ext.insert(p.name).second) schema(where, "duplicate external port '" + p.name + "'");
  for (const auto& p : d.outputs)
    if (!ext.insert(p.name).second) schema(where, "duplicate external port '" + p.name + "'");
  for (const auto& [name, sub] : d.subsystems)
    if (is_library_kind(name)) schema(where, "subsystem '" + name + "' shadows a library block");

  std::map<std::string, PortSig> sigs;
  for (const auto& b : d.blocks) {
    if (!plain_name(b.id)) schema(where, "invalid block id '" + b.id + "'");
    if (sigs.count(b.id)) schema(where, "duplicate block id '" + b.id + "'");
    try {
      sigs[b.id] = resolve_block(b, scope);
    } catch (const SchemaError& e) {
      schema(where + ".blocks." + b.id, e.what());
    } catch (const TypeError& e) {
      throw TypeError(where + ".blocks." + b.id + ": " + e.what());
    }
  }

  VarList ext_in = ports_of(d.inputs), ext_out = ports_of(d.outputs);
  auto source_type = [&](const Endpoint& e, const std::string& w) -> BaseType {
    if (e.block.empty()) {
      if (const Var* v = find_port(ext_in, e.port)) return v->type;
      if (find_port(ext_out, e.port)) schema(w, "external output '" + e.port + "' used as a wire source");
      throw DanglingPortError(w + ": no external input named '" + e.port + "'");
    }
    auto it = sigs.find(e.block);
    if (it == sigs.end()) throw DanglingPortError(w + ": no block named '" + e.block + "'");
    if (const Var* v = find_port(it->second.outputs, e.port)) return v->type;
    if (find_port(it->second.inputs, e.port)) schema(w, "input port '" + to_string(e) + "' used as a wire source");
    throw DanglingPortError(w + ": block '" + e.block + "' has no output port '" + e.port + "'");
  };
  auto target_type = [&](const Endpoint& e, const std::string& w) -> BaseType {
    if (e.block.empty()) {
      if (const Var* v = find_port(ext_out, e.port)) return v->type;
      if (find_port(ext_in, e.port)) schema(w, "external input '" + e.port + "' used as a wire target");
      throw DanglingPortError(w + ": no external output named '" + e.port + "'");
    }
    auto it = sigs.find(e.block);
    if (it == sigs.end()) throw DanglingPortError(w + ": no block named '" + e.block + "'");
    if (const Var* v = find_port(it->second.inputs, e.port)) return v->type;
    if (find_port(it->second.outputs, e.port)) schema(w, "output port '" + to_string(e) + "' used as a wire target");
    throw DanglingPortError(w + ": block '" + e.block + "' has no input port '" + e.port + "'");
  };

  std::set<Endpoint> driven;
  std::set<std::string> names;
  for (std::size_t i = 0; i < d.wires.size(); ++i) {
    const Wire& w = d.wires[i];
    std::string wh = where + ".wires[" + std::to_string(i) + "]";
    BaseType ts = source_type(w.from, wh);
    BaseType tt = target_type(w.to, wh);
    if (ts != tt)
      throw TypeError(wh + ": wire " + to_string(w.from) + " -> " + to_string(w.to) + " connects " +
                      std::string(hbd::to_string(ts)) + " to " + std::string(hbd::to_string(tt)));
    if (!driven.insert(w.to).second) schema(wh, "port '" + to_string(w.to) + "' has two sources");
    if (!w.name.empty()) {
      if (!plain_name(w.name)) schema(wh, "invalid wire name '" + w.name + "'");
      if (ext.count(w.name) || !names.insert(w.name).second) schema(wh, "wire name '" + w.name + "' is already used");
    }
  }
  for (const auto& b : d.blocks)
    for (const auto& p : sigs[b.id].inputs)
      if (!driven.count(Endpoint{b.id, p.name}))
        throw DanglingPortError(where + ": input port '" + b.id + "." + p.name + "' is not connected");
  for (const auto& p : d.outputs)
    if (!driven.count(Endpoint{"", p.name}))
      throw DanglingPortError(where + ": external output '" + p.name + "' is not connected");

  for (const auto& [name, sub] : d.subsystems) validate_one(*sub, scope, where + ".subsystems." + name);
}

/// Depth-first search over subsystem references.
void check_cycles(const DiagramDoc& d, const Scope& outer, std::map<const DiagramDoc*, int>& color,
                  std::vector<std::string>& path) {
  Scope scope = outer;
  scope.insert(scope.begin(), &d);
  color[&d] = 1;
  for (const auto& b : d.blocks) {
    auto r = lookup_sub(b.kind, scope);
    if (!r) continue;
    const DiagramDoc* sub = r->sig.sub.get();
    path.push_back(b.kind);
    if (color[sub] == 1) {
      std::string cyc;
      for (const auto& p : path) cyc += (cyc.empty() ? "" : " -> ") + p;
      throw CycleError("cyclic subsystem references: " + cyc);
    }
    if (color[sub] == 0) {
      Scope sub_scope(scope.begin() + static_cast<std::ptrdiff_t>(r->scope_depth), scope.end());
      check_cycles(*sub, sub_scope, color, path);
    }
    path.pop_back();
  }
  color[&d] = 2;
}

ojson to_ojson(const DiagramDoc& d, bool top) {
  ojson j = ojson::object();
  if (top) j["version"] = 1;
  if (!d.name.empty()) j["name"] = d.name;
  auto ports = [](const std::vector<PortDecl>& ps) {
    ojson a = ojson::array();
    for (const auto& p : ps) a.push_back(ojson{{"name", p.name}, {"type", std::string(hbd::to_string(p.type))}});
    return a;
  };
  j["inputs"] = ports(d.inputs);
  j["outputs"] = ports(d.outputs);
  ojson blocks = ojson::array();
  for (const auto& b : d.blocks) {
    ojson bj{{"id", b.id}, {"kind", b.kind}};
    if (!b.params.empty()) {
      ojson pj = ojson::object();
      for (const auto& [k, p] : b.params) {
        if (const auto* s = std::get_if<std::string>(&p)) {
          pj[k] = *s;
        } else {
          const Value& v = std::get<Value>(p);
          if (v.is_real()) pj[k] = v.as_real();
          else if (v.is_int()) pj[k] = v.as_int();
          else if (v.is_bool()) pj[k] = v.as_bool();
        }
      }
      bj["params"] = pj;
    }
    blocks.push_back(bj);
  }
  j["blocks"] = blocks;
  ojson wires = ojson::array();
  for (const auto& w : d.wires) {
    ojson wj{{"from", to_string(w.from)}, {"to", to_string(w.to)}};
    if (!w.name.empty()) wj["name"] = w.name;
    wires.push_back(wj);
  }
  j["wires"] = wires;
  if (!d.subsystems.empty()) {
    ojson subs = ojson::object();
    for (const auto& [name, sub] : d.subsystems) subs[name] = to_ojson(*sub, false);
    j["subsystems"] = subs;
  }
  return j;
}

}  // namespace

PortSig resolve_block(const BlockInst& b, const Scope& scope) {
  if (auto r = lookup_sub(b.kind, scope)) {
    if (!b.params.empty()) throw SchemaError("subsystem instance '" + b.id + "' takes no parameters");
    return r->sig;
  }
  if (!is_library_kind(b.kind)) throw SchemaError("unknown block kind '" + b.kind + "'");
  auto def = std::make_shared<const BlockDef>(instantiate(b.kind, b.params));
  return PortSig{def->in_ports, def->out_ports, def, nullptr};
}

void validate(const DiagramDoc& doc) {
  validate_one(doc, {}, "$");
  std::map<const DiagramDoc*, int> color;
  std::vector<std::string> path{doc.name.empty() ? "<top>" : doc.name};
  check_cycles(doc, {}, color, path);
}

DiagramDoc parse_doc(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError("JSON syntax, line " + std::to_string(line) + " column " + std::to_string(col) + ": " + msg);
  }
  DiagramDoc d = from_json(j, "$", true);
  canonicalize(d, {});
  validate(d);
  return d;
}

DiagramDoc load_doc(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_doc(ss.str());
}

std::string dump_doc(const DiagramDoc& doc) { return to_ojson(doc, true).dump(2) + "\n"; }

}  // namespace hbd::frontend
