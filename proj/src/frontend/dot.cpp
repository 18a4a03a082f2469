#include "hbd/frontend/dot.hpp"

#include <map>
#include <sstream>

#include "hbd/frontend/normalize.hpp"

namespace hbd::frontend {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_dot(const DiagramDoc& doc) {
  Design d = elaborate(doc);
  std::ostringstream os;
  os << "digraph " << quote(doc.name.empty() ? "diagram" : doc.name) << " {\n  rankdir=LR;\n";
  std::map<std::string, std::string> producer;
  std::multimap<std::string, std::string> consumers;
  for (const auto& v : d.inputs) {
    os << "  " << quote("in:" + v.name) << " [shape=plaintext, label=" << quote(v.name) << "];\n";
    producer[v.name] = "in:" + v.name;
  }
  for (const auto& v : d.outputs) {
    os << "  " << quote("out:" + v.name) << " [shape=plaintext, label=" << quote(v.name) << "];\n";
    consumers.emplace(v.name, "out:" + v.name);
  }
  for (const Element* e : flatten(d.root)) {
    os << "  " << quote(e->path) << " [shape=box, label=" << quote(e->path + "\n" + e->kind) << "];\n";
    for (const auto& v : e->diagram.outputs) producer[v.name] = e->path;
    for (const auto& v : e->diagram.inputs) consumers.emplace(v.name, e->path);
  }
  for (const auto& [var, to] : consumers)
    if (auto it = producer.find(var); it != producer.end())
      os << "  " << quote(it->second) << " -> " << quote(to) << " [label=" << quote(var) << "];\n";
  for (const auto& s : d.states)
    os << "  " << quote(s.block_path) << " -> " << quote(s.block_path) << " [style=dashed, label="
       << quote(s.next.name + " / " + s.state.name) << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace hbd::frontend
