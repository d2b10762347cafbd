#pragma once

// Canonical DODL text for a workspace. Blocks appear as sort, domain,
// relation, filter, potential, concept, diagram, script, evolvent; names
// are lexicographic within a block except concepts, which are topological
// (parents first, ties lexicographic). Atoms and tuples are printed in
// their natural order. Loading the output and dumping again reproduces it
// byte for byte.

#include <set>
#include <string>

#include "intensio/format.hpp"
#include "intensio/workspace.hpp"

namespace intensio::dodl {

namespace detail {

[[nodiscard]] inline std::string format_tuple(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + t[i].text();
  return out + ")";
}

[[nodiscard]] inline std::string format_path(const std::vector<Expr>& path) {
  if (path.empty()) return "[ ]";
  std::string out = "[ ";
  for (std::size_t i = 0; i < path.size(); ++i) out += (i ? ", " : "") + format_expr(path[i]);
  return out + " ]";
}

}  // namespace detail

[[nodiscard]] inline std::string dump_relation(const Relation& r) {
  std::string out = "relation " + r.name + " (";
  for (std::size_t i = 0; i < r.attributes.size(); ++i)
    out += (i ? ", " : "") + r.attributes[i].name + " : " + r.attributes[i].sort.name;
  out += ") = {";
  if (r.tuples.empty()) return out + " };\n";
  out += "\n";
  std::size_t i = 0;
  for (const Tuple& t : r.tuples) out += "  " + detail::format_tuple(t) + (++i < r.tuples.size() ? ",\n" : "\n");
  return out + "};\n";
}

[[nodiscard]] inline std::string dump_concept(const Concept& c) {
  std::string out = "concept " + c.name;
  for (std::size_t i = 0; i < c.parents.size(); ++i) out += (i ? ", " : " : ") + c.parents[i];
  std::string body;
  for (const std::string& e : c.events) body += "  event " + e + ";\n";
  for (const MenuEntry& m : c.menus) body += "  menu " + m.label + " -> " + m.event + ";\n";
  for (const auto& [name, value] : c.own_attributes)
    body += std::string("  ") + (c.encapsulated.contains(name) ? "private " : "") + name + " = " + value.text() + ";\n";
  for (const std::string& e : c.encapsulated)
    if (!c.own_attributes.contains(e)) body += "  encapsulate " + e + ";\n";
  if (body.empty()) return out + " { };\n";
  return out + " {\n" + body + "};\n";
}

[[nodiscard]] inline std::string dump(const Workspace& ws) {
  std::string out;
  std::string block;

  for (const auto& [name, s] : ws.sorts) block += "sort " + name + " : " + std::string(to_string(s.kind)) + ";\n";
  out += block;

  auto section = [&](std::string text) {
    if (text.empty()) return;
    if (!out.empty()) out += "\n";
    out += text;
  };

  block.clear();
  for (const auto& [name, d] : ws.domains) block += "domain " + name + " : " + d.sort + " = " + format_atoms(d.elements) + ";\n";
  section(block);

  block.clear();
  for (const auto& [name, r] : ws.relations) block += dump_relation(r);
  section(block);

  block.clear();
  for (const auto& [name, f] : ws.filters)
    block += "filter " + name + "(" + f.index_var + ", " + f.candidate_var + ") = " +
             format_predicate(f.body, {f.index_var, f.candidate_var}) + ";\n";
  section(block);

  block.clear();
  for (const auto& [name, p] : ws.potentials)
    block += "potential " + name + " : carrier " + p.carrier + " index " + p.index_domain + " filter " + p.filter + ";\n";
  section(block);

  block.clear();
  for (const std::string& name : ws.concepts.topological_order()) block += dump_concept(ws.concepts.get(name));
  section(block);

  block.clear();
  for (const auto& [name, d] : ws.diagrams)
    block += "diagram " + name + " entry " + d.entry.describe() + "\n  path_a " + detail::format_path(d.path_a) +
             "\n  path_b " + detail::format_path(d.path_b) + "\n  exit " + d.exit.describe() + ";\n";
  section(block);

  block.clear();
  for (const auto& [name, s] : ws.scripts) {
    block += "script " + name + " = [";
    for (std::size_t i = 0; i < s.steps.size(); ++i)
      block += (i ? ", " : " ") + std::string("(") + s.steps[i].potential + ", " + s.steps[i].index.text() + ")";
    block += " ];\n";
  }
  section(block);

  block.clear();
  for (const auto& [name, e] : ws.evolvents) {
    block += "evolvent " + name + " = ";
    switch (e.kind) {
      case Evolvent::Kind::Identity: block += "identity"; break;
      case Evolvent::Kind::Script: block += "script " + e.script; break;
      case Evolvent::Kind::Composed: {
        block += "compose [";
        for (std::size_t i = 0; i < e.components.size(); ++i) block += (i ? ", " : "") + e.components[i];
        block += "]";
        break;
      }
    }
    block += ";\n";
  }
  section(block);

  return out;
}

}  // namespace intensio::dodl
