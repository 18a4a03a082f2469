#include "hbd/frontend/simulate.hpp"

#include <charconv>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "hbd/errors.hpp"

namespace hbd::frontend {

namespace {

std::size_t index_in(const VarList& vs, const std::string& name) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i].name == name) return i;
  return vs.size();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

SimTrace simulate(const Translation& t, const std::vector<Tuple>& inputs, const EvalConfig& cfg, Engine engine) {
  SimTrace tr;
  tr.inputs = t.ext_inputs;
  tr.outputs = t.ext_outputs;
  for (const auto& s : t.states) tr.states.push_back(s.state);

  VarList nexts;
  for (const auto& s : t.states) nexts.push_back(s.next);

  // Where each interface variable of the diagram comes from or goes to.
  struct Slot {
    bool state;
    std::size_t index;
  };
  std::vector<Slot> in_slots, out_slots;
  for (const auto& v : t.diagram.inputs) {
    if (std::size_t i = index_in(t.ext_inputs, v.name); i < t.ext_inputs.size()) in_slots.push_back({false, i});
    else if (std::size_t k = index_in(tr.states, v.name); k < tr.states.size()) in_slots.push_back({true, k});
    else throw PreconditionError("simulate: input '" + v.name + "' is neither external nor a state variable");
  }
  for (const auto& v : t.diagram.outputs) {
    if (std::size_t i = index_in(t.ext_outputs, v.name); i < t.ext_outputs.size()) out_slots.push_back({false, i});
    else if (std::size_t k = index_in(nexts, v.name); k < nexts.size()) out_slots.push_back({true, k});
    else throw PreconditionError("simulate: output '" + v.name + "' is neither external nor a next-state variable");
  }

  std::optional<CompiledTerm> compiled;
  if (engine == Engine::Compiled) compiled.emplace(t.diagram.body);

  Tuple state;
  for (const auto& s : t.states) state.push_back(s.init);
  for (const Tuple& row : inputs) {
    check_tuple(t.ext_inputs.empty() ? TypeList{} : types_of(t.ext_inputs), row, "simulation input row");
    Tuple in;
    for (const auto& s : in_slots) in.push_back(s.state ? state[s.index] : row[s.index]);
    Tuple out = compiled ? compiled->run(in, cfg) : eval(t.diagram.body, in, cfg);
    SimRow r;
    r.inputs = row;
    r.state_before = state;
    r.outputs.assign(t.ext_outputs.size(), Value::bottom());
    for (std::size_t i = 0; i < out_slots.size(); ++i) {
      if (out_slots[i].state) state[out_slots[i].index] = out[i];
      else r.outputs[out_slots[i].index] = out[i];
    }
    r.state_after = state;
    tr.rows.push_back(std::move(r));
  }
  return tr;
}

Value parse_cell(const std::string& cell, BaseType t) {
  if (cell == "bot") return Value::bottom();
  switch (t) {
    case BaseType::Bool:
      if (cell == "true" || cell == "1") return Value::boolean(true);
      if (cell == "false" || cell == "0") return Value::boolean(false);
      break;
    case BaseType::Int: {
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec == std::errc() && p == cell.data() + cell.size() && !cell.empty()) return Value::integer(v);
      break;
    }
    case BaseType::Real: {
      if (cell.empty()) break;
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() + cell.size()) return Value::real(v);
      break;
    }
  }
  throw ParseError("'" + cell + "' is not a " + std::string(to_string(t)) + " literal");
}

std::vector<Tuple> read_inputs_csv(std::istream& in, const VarList& inputs) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::size_t> column_of;  // CSV column -> input index
  bool header = false;
  std::vector<Tuple> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split_cells(line);
    auto where = "CSV line " + std::to_string(lineno) + ": ";
    if (!header) {
      header = true;
      std::vector<bool> seen(inputs.size(), false);
      for (const auto& c : cells) {
        std::size_t i = index_in(inputs, c);
        if (i == inputs.size()) throw ParseError(where + "unknown input column '" + c + "'");
        if (seen[i]) throw ParseError(where + "duplicate input column '" + c + "'");
        seen[i] = true;
        column_of.push_back(i);
      }
      for (std::size_t i = 0; i < inputs.size(); ++i)
        if (!seen[i]) throw ParseError(where + "missing input column '" + inputs[i].name + "'");
      continue;
    }
    if (cells.size() != column_of.size())
      throw ParseError(where + "expected " + std::to_string(column_of.size()) + " values, found " +
                       std::to_string(cells.size()));
    Tuple row(inputs.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      try {
        row[column_of[c]] = parse_cell(cells[c], inputs[column_of[c]].type);
      } catch (const ParseError& e) {
        throw ParseError(where + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  if (!header && !inputs.empty()) throw ParseError("CSV: missing header row");
  return rows;
}

void write_trace_csv(std::ostream& out, const SimTrace& tr) {
  out << "step";
  for (const auto& v : tr.inputs) out << ',' << v.name;
  for (const auto& v : tr.outputs) out << ',' << v.name;
  for (const auto& v : tr.states) out << ',' << v.name << '\'';
  out << '\n';
  for (std::size_t n = 0; n < tr.rows.size(); ++n) {
    const SimRow& r = tr.rows[n];
    out << n;
    for (const auto& v : r.inputs) out << ',' << to_string(v);
    for (const auto& v : r.outputs) out << ',' << to_string(v);
    for (const auto& v : r.state_after) out << ',' << to_string(v);
    out << '\n';
  }
}

}  // namespace hbd::frontend
