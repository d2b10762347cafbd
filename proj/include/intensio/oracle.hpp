#pragma once

// intensio/oracle.hpp - the relational route to a potential object's
// extensions, for filters that are a single membership test.

#include <optional>
#include <string>
#include <vector>

#include "intensio/evolver.hpp"
#include "intensio/relational.hpp"

namespace intensio {

struct OracleRoute {
  std::string relation;
  std::string index_attr;
  std::string target_attr;
};

/// Succeeds when the filter body is `member r (...)` with the index and
/// candidate variables each in exactly one position and wildcards elsewhere.
[[nodiscard]] inline std::optional<OracleRoute> oracle_route(const Workspace& ws, const std::string& po_name) {
  const PotentialObject& po = ws.potential(po_name);
  const Filter& f = ws.filter(po.filter);
  const auto* m = std::get_if<pred_node::Member>(&f.body.node());
  if (!m) return std::nullopt;
  auto rel = ws.relations.find(m->relation);
  if (rel == ws.relations.end() || rel->second.arity() != m->pattern.size()) return std::nullopt;

  std::optional<std::size_t> idx, cand;
  for (std::size_t i = 0; i < m->pattern.size(); ++i) {
    const Term& t = m->pattern[i];
    if (t.kind == Term::Kind::Wildcard) continue;
    if (t.kind != Term::Kind::Var) return std::nullopt;
    auto* slot = t.text == f.index_var ? &idx : t.text == f.candidate_var ? &cand : nullptr;
    if (!slot || *slot) return std::nullopt;
    *slot = i;
  }
  if (!idx || !cand) return std::nullopt;
  const Relation& r = rel->second;
  return OracleRoute{r.name, r.attributes[*idx].name, r.attributes[*cand].name};
}

struct OracleRow {
  Atom index;
  AtomSet indexing;
  AtomSet oracle;
  [[nodiscard]] bool equal() const { return indexing == oracle; }
};

/// Indexing against oracle_index for every index of the potential object.
[[nodiscard]] inline std::vector<OracleRow> oracle_diff(const Workspace& ws, const std::string& po_name) {
  auto route = oracle_route(ws, po_name);
  if (!route)
    fail(ErrorKind::TypeError, "filter of '" + po_name + "' is not a single membership test; no oracle route");
  const Relation& r = ws.relation(route->relation);
  std::vector<OracleRow> rows;
  for (const auto& [i, ao] : materialize_functor(WorkspaceState{ws, {}, 0, {}}, po_name))
    rows.push_back({i, ao.elements, oracle_index(r, route->index_attr, i, route->target_attr)});
  return rows;
}

}  // namespace intensio
