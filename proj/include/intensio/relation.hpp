#pragma once

// intensio/relation.hpp - plain named relations with sorted attributes.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "intensio/core.hpp"

namespace intensio {

struct Attribute {
  std::string name;
  Sort sort;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

using Tuple = std::vector<Atom>;

/// Tuples are kept in a std::set, so iteration is lexicographic by tuple and
/// duplicates cannot exist.
struct Relation {
  std::string name;
  std::vector<Attribute> attributes;
  std::set<Tuple> tuples;

  [[nodiscard]] std::size_t arity() const noexcept { return attributes.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return tuples.size(); }

  [[nodiscard]] std::optional<std::size_t> position(std::string_view attr) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
      if (attributes[i].name == attr) return i;
    return std::nullopt;
  }

  [[nodiscard]] std::size_t require_position(std::string_view attr) const {
    if (auto p = position(attr)) return *p;
    fail(ErrorKind::UnknownAttribute, "relation " + name + " has no attribute '" + std::string(attr) + "'");
  }

  /// Checks arity and sort kinds, then inserts. Returns false for a duplicate.
  bool insert(Tuple t) {
    if (t.size() != attributes.size())
      fail(ErrorKind::ArityMismatch, "relation " + name + " expects " + std::to_string(attributes.size()) +
                                         " values, tuple has " + std::to_string(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].kind() != attributes[i].sort.kind)
        fail(ErrorKind::SortMismatch, "value '" + t[i].text() + "' does not conform to attribute " +
                                          attributes[i].name + " : " + attributes[i].sort.name);
    }
    return tuples.insert(std::move(t)).second;
  }

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Schema and tuple equality, ignoring the relation name.
[[nodiscard]] inline bool same_extension(const Relation& a, const Relation& b) {
  return a.attributes == b.attributes && a.tuples == b.tuples;
}

[[nodiscard]] inline Relation make_relation(std::string name, std::vector<Attribute> attributes,
                                            const std::vector<Tuple>& tuples = {}) {
  for (std::size_t i = 0; i < attributes.size(); ++i)
    for (std::size_t j = i + 1; j < attributes.size(); ++j)
      if (attributes[i].name == attributes[j].name)
        fail(ErrorKind::DuplicateName, "attribute '" + attributes[i].name + "' repeated in relation " + name);
  Relation r{std::move(name), std::move(attributes), {}};
  for (const Tuple& t : tuples) r.insert(t);
  return r;
}

}  // namespace intensio
