#pragma once

// intensio/workspace.hpp - registries of every declared thing: sorts,
// domains, relations, filters, potential objects, concepts, diagrams,
// event scripts and evolvents.

#include <map>
#include <string>
#include <vector>

#include "intensio/core.hpp"
#include "intensio/diagram.hpp"
#include "intensio/meta.hpp"
#include "intensio/predicate.hpp"
#include "intensio/relation.hpp"

namespace intensio {

struct ScriptStep {
  std::string potential;
  Atom index;

  friend bool operator==(const ScriptStep&, const ScriptStep&) = default;
};

struct EventScript {
  std::string name;
  std::vector<ScriptStep> steps;

  friend bool operator==(const EventScript&, const EventScript&) = default;
};

struct Evolvent {
  enum class Kind { Identity, Script, Composed };

  std::string name;
  Kind kind = Kind::Identity;
  std::string script;                  // Kind::Script
  std::vector<std::string> components;  // Kind::Composed

  friend bool operator==(const Evolvent&, const Evolvent&) = default;
};

namespace detail {
template <class T>
[[nodiscard]] const T& lookup_in(const std::map<std::string, T>& m, const std::string& name, ErrorKind kind,
                                 std::string_view what) {
  auto it = m.find(name);
  if (it == m.end()) fail(kind, "no " + std::string(what) + " named '" + name + "'");
  return it->second;
}
}  // namespace detail

struct Workspace {
  std::map<std::string, Sort> sorts;
  std::map<std::string, Domain> domains;
  std::map<std::string, Relation> relations;
  std::map<std::string, Filter> filters;
  std::map<std::string, PotentialObject> potentials;
  ConceptRegistry concepts;
  std::map<std::string, DiagramSpec> diagrams;
  std::map<std::string, EventScript> scripts;
  std::map<std::string, Evolvent> evolvents;

  [[nodiscard]] const Sort& sort(const std::string& n) const {
    return detail::lookup_in(sorts, n, ErrorKind::UnknownSort, "sort");
  }
  [[nodiscard]] const Domain& domain(const std::string& n) const {
    return detail::lookup_in(domains, n, ErrorKind::UnknownDomain, "domain");
  }
  [[nodiscard]] const Relation& relation(const std::string& n) const {
    return detail::lookup_in(relations, n, ErrorKind::UnknownRelation, "relation");
  }
  [[nodiscard]] const Filter& filter(const std::string& n) const {
    return detail::lookup_in(filters, n, ErrorKind::UnknownFilter, "filter");
  }
  [[nodiscard]] const PotentialObject& potential(const std::string& n) const {
    return detail::lookup_in(potentials, n, ErrorKind::UnknownPotentialObject, "potential object");
  }
  [[nodiscard]] const DiagramSpec& diagram(const std::string& n) const {
    return detail::lookup_in(diagrams, n, ErrorKind::UnknownDiagram, "diagram");
  }
  [[nodiscard]] const EventScript& script(const std::string& n) const {
    return detail::lookup_in(scripts, n, ErrorKind::UnknownScript, "script");
  }
  [[nodiscard]] const Evolvent& evolvent(const std::string& n) const {
    return detail::lookup_in(evolvents, n, ErrorKind::UnknownEvolvent, "evolvent");
  }

  [[nodiscard]] RelationLookup relation_lookup() const {
    return [this](const std::string& n) -> const Relation* {
      auto it = relations.find(n);
      return it == relations.end() ? nullptr : &it->second;
    };
  }

  friend bool operator==(const Workspace&, const Workspace&) = default;
};

}  // namespace intensio
