#pragma once

// intensio/meta.hpp - concepts (metadata objects) in an inheritance partial
// order. Ancestors supply attributes, events and menus to descendants;
// descendants may shadow attributes. Multiple parents are allowed and are
// linearized depth-first in declaration order.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "intensio/core.hpp"

namespace intensio {

struct MenuEntry {
  std::string label;
  std::string event;

  friend bool operator==(const MenuEntry&, const MenuEntry&) = default;
};

struct Concept {
  std::string name;
  std::vector<std::string> parents;
  std::map<std::string, Atom> own_attributes;
  std::vector<std::string> events;
  std::vector<MenuEntry> menus;
  std::set<std::string> encapsulated;

  [[nodiscard]] bool atomic() const noexcept { return parents.empty(); }
  friend bool operator==(const Concept&, const Concept&) = default;
};

class ConceptRegistry {
 public:
  [[nodiscard]] bool contains(const std::string& name) const { return concepts_.contains(name); }
  [[nodiscard]] std::size_t size() const noexcept { return concepts_.size(); }
  [[nodiscard]] const std::map<std::string, Concept>& all() const noexcept { return concepts_; }

  [[nodiscard]] const Concept* find(const std::string& name) const {
    auto it = concepts_.find(name);
    return it == concepts_.end() ? nullptr : &it->second;
  }

  [[nodiscard]] const Concept& get(const std::string& name) const {
    if (const Concept* c = find(name)) return *c;
    fail(ErrorKind::UnknownConcept, "no concept named '" + name + "'");
  }

  /// Registers one concept whose parents are already registered.
  void add(Concept c) { add_all({std::move(c)}); }

  /// Registers a batch atomically. Parents may refer to earlier registrations
  /// or to other members of the batch; the combined parent graph must stay
  /// acyclic. On any error the registry is left unchanged.
  void add_all(std::vector<Concept> batch) {
    std::map<std::string, Concept> merged = concepts_;
    for (Concept& c : batch) {
      if (merged.contains(c.name)) fail(ErrorKind::DuplicateName, "concept '" + c.name + "' already exists");
      std::string name = c.name;
      merged.emplace(std::move(name), std::move(c));
    }
    for (const auto& [name, c] : merged) {
      std::set<std::string> seen;
      for (const std::string& p : c.parents) {
        if (!merged.contains(p))
          fail(ErrorKind::UnknownConcept, "concept '" + name + "' names unknown parent '" + p + "'");
        if (!seen.insert(p).second)
          fail(ErrorKind::DuplicateName, "concept '" + name + "' lists parent '" + p + "' twice");
      }
    }
    if (auto cycle = find_cycle(merged)) {
      std::string path;
      for (const std::string& n : *cycle) path += (path.empty() ? "" : " -> ") + n;
      fail(ErrorKind::CycleDetected, "concept parents form a cycle: " + path);
    }
    ConceptRegistry candidate;
    candidate.concepts_ = std::move(merged);
    for (const auto& [name, c] : candidate.concepts_) {
      for (const std::string& attr : c.encapsulated) {
        if (!candidate.defines(name, attr))
          fail(ErrorKind::UnknownAttribute,
               "concept '" + name + "' encapsulates '" + attr + "' which neither it nor an ancestor defines");
      }
    }
    concepts_ = std::move(candidate.concepts_);
  }

  /// Creates a descendant of `apo` holding only `overrides`; everything else
  /// is inherited.
  const Concept& derive(const std::string& apo, const std::string& dpo_name, std::map<std::string, Atom> overrides) {
    (void)get(apo);
    Concept dpo;
    dpo.name = dpo_name;
    dpo.parents = {apo};
    dpo.own_attributes = std::move(overrides);
    add(std::move(dpo));
    return concepts_.at(dpo_name);
  }

  /// Depth-first, declaration-order ancestors without duplicates, excluding
  /// the concept itself.
  [[nodiscard]] std::vector<std::string> ancestors(const std::string& name) const {
    const Concept& c = get(name);
    std::vector<std::string> out;
    std::set<std::string> seen{name};
    std::function<void(const Concept&)> walk = [&](const Concept& node) {
      for (const std::string& p : node.parents) {
        if (!seen.insert(p).second) continue;
        out.push_back(p);
        walk(concepts_.at(p));
      }
    };
    walk(c);
    return out;
  }

  [[nodiscard]] std::set<std::string> descendants(const std::string& name) const {
    (void)get(name);
    std::set<std::string> out;
    for (const auto& [other, c] : concepts_) {
      if (other == name) continue;
      auto anc = ancestors(other);
      if (std::find(anc.begin(), anc.end(), name) != anc.end()) out.insert(other);
    }
    return out;
  }

  /// Nearest definition of `attr`: the concept's own attributes, then its
  /// ancestors in linearization order. `caller` names the concept on whose
  /// behalf resolution runs (nullopt for an external caller); encapsulated
  /// attributes are only visible to the concept and its descendants.
  [[nodiscard]] const Atom& resolve_attribute(const std::string& name, const std::string& attr,
                                              const std::optional<std::string>& caller = std::nullopt) const {
    const Concept& c = get(name);
    if (is_encapsulated(name, attr)) {
      bool inside = caller && (*caller == name || descendants(name).contains(*caller));
      if (!inside)
        fail(ErrorKind::EncapsulationViolation, "attribute '" + attr + "' of concept '" + name +
                                                    "' is encapsulated" +
                                                    (caller ? " from '" + *caller + "'" : std::string()));
    }
    if (auto it = c.own_attributes.find(attr); it != c.own_attributes.end()) return it->second;
    for (const std::string& a : ancestors(name)) {
      const Concept& anc = concepts_.at(a);
      if (auto it = anc.own_attributes.find(attr); it != anc.own_attributes.end()) return it->second;
    }
    fail(ErrorKind::UnknownAttribute, "no ancestor of '" + name + "' defines attribute '" + attr + "'");
  }

  [[nodiscard]] bool is_encapsulated(const std::string& name, const std::string& attr) const {
    if (get(name).encapsulated.contains(attr)) return true;
    for (const std::string& a : ancestors(name))
      if (concepts_.at(a).encapsulated.contains(attr)) return true;
    return false;
  }

  [[nodiscard]] std::vector<std::string> effective_events(const std::string& name) const {
    std::vector<std::string> out;
    auto take = [&](const Concept& c) {
      for (const std::string& e : c.events)
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    };
    take(get(name));
    for (const std::string& a : ancestors(name)) take(concepts_.at(a));
    return out;
  }

  /// Menus by label; a descendant's entry shadows an ancestor's.
  [[nodiscard]] std::vector<MenuEntry> effective_menus(const std::string& name) const {
    std::vector<MenuEntry> out;
    auto take = [&](const Concept& c) {
      for (const MenuEntry& m : c.menus)
        if (std::none_of(out.begin(), out.end(), [&](const MenuEntry& e) { return e.label == m.label; }))
          out.push_back(m);
    };
    take(get(name));
    for (const std::string& a : ancestors(name)) take(concepts_.at(a));
    return out;
  }

  /// Parents before children; ties broken lexicographically.
  [[nodiscard]] std::vector<std::string> topological_order() const {
    std::map<std::string, std::size_t> pending;
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& [name, c] : concepts_) {
      pending[name] = c.parents.size();
      for (const std::string& p : c.parents) children[p].push_back(name);
    }
    std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
    for (const auto& [name, n] : pending)
      if (n == 0) ready.push(name);
    std::vector<std::string> out;
    while (!ready.empty()) {
      std::string n = ready.top();
      ready.pop();
      out.push_back(n);
      for (const std::string& ch : children[n])
        if (--pending[ch] == 0) ready.push(ch);
    }
    return out;
  }

  friend bool operator==(const ConceptRegistry&, const ConceptRegistry&) = default;

 private:
  [[nodiscard]] bool defines(const std::string& name, const std::string& attr) const {
    if (concepts_.at(name).own_attributes.contains(attr)) return true;
    for (const std::string& a : ancestors(name))
      if (concepts_.at(a).own_attributes.contains(attr)) return true;
    return false;
  }

  // Returns the concepts along one cycle (first node repeated at the end).
  static std::optional<std::vector<std::string>> find_cycle(const std::map<std::string, Concept>& graph) {
    enum class Mark { White, Grey, Black };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;
    std::optional<std::vector<std::string>> found;
    std::function<void(const std::string&)> visit = [&](const std::string& n) {
      mark[n] = Mark::Grey;
      stack.push_back(n);
      for (const std::string& p : graph.at(n).parents) {
        if (found) return;
        Mark m = mark.contains(p) ? mark[p] : Mark::White;
        if (m == Mark::Grey) {
          auto from = std::find(stack.begin(), stack.end(), p);
          found = std::vector<std::string>(from, stack.end());
          found->push_back(p);
          return;
        }
        if (m == Mark::White) visit(p);
      }
      stack.pop_back();
      mark[n] = Mark::Black;
    };
    for (const auto& [name, c] : graph) {
      if (found) break;
      if (!mark.contains(name)) visit(name);
    }
    return found;
  }

  std::map<std::string, Concept> concepts_;
};

}  // namespace intensio
