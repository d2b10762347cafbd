#pragma once

// intensio/relational.hpp - the minimal relational algebra: select,
// project, natural join, union, difference, and oracle_index, the
// plain-relational route to the sets that indexing derives.

#include <set>
#include <string>
#include <vector>

#include "intensio/predicate.hpp"
#include "intensio/relation.hpp"

namespace intensio {

/// Tuples of `r` satisfying `where`. Variables (and bare names that match an
/// attribute) range over attribute values; other bare names are constants.
[[nodiscard]] inline Relation select(const Relation& r, const Predicate& where, const RelationLookup& relations = {}) {
  std::set<std::string> attrs;
  for (const Attribute& a : r.attributes) attrs.insert(a.name);
  Predicate resolved = resolve_names(where, attrs);
  for (const std::string& v : free_vars(resolved))
    if (!attrs.contains(v)) fail(ErrorKind::UnknownAttribute, "relation " + r.name + " has no attribute '" + v + "'");

  Relation out{"sel_" + r.name, r.attributes, {}};
  for (const Tuple& t : r.tuples) {
    Environment env;
    for (std::size_t i = 0; i < t.size(); ++i) env = env.bind(r.attributes[i].name, t[i]);
    if (evaluate(resolved, env, relations)) out.tuples.insert(t);
  }
  return out;
}

/// Column restriction in the requested order, deduplicated.
[[nodiscard]] inline Relation project(const Relation& r, const std::vector<std::string>& attrs) {
  std::vector<std::size_t> cols;
  Relation out{"proj_" + r.name, {}, {}};
  for (const std::string& a : attrs) {
    std::size_t p = r.require_position(a);
    for (const Attribute& seen : out.attributes)
      if (seen.name == a) fail(ErrorKind::DuplicateName, "attribute '" + a + "' listed twice in projection");
    cols.push_back(p);
    out.attributes.push_back(r.attributes[p]);
  }
  for (const Tuple& t : r.tuples) {
    Tuple row;
    row.reserve(cols.size());
    for (std::size_t c : cols) row.push_back(t[c]);
    out.tuples.insert(std::move(row));
  }
  return out;
}

/// Natural join on every shared attribute name. Result attributes are r's,
/// followed by s's non-shared attributes in their original order.
[[nodiscard]] inline Relation join(const Relation& r, const Relation& s) {
  std::vector<std::pair<std::size_t, std::size_t>> shared;
  std::vector<std::size_t> s_rest;
  for (std::size_t j = 0; j < s.attributes.size(); ++j) {
    if (auto i = r.position(s.attributes[j].name)) {
      if (!(r.attributes[*i].sort == s.attributes[j].sort))
        fail(ErrorKind::SortMismatch, "shared attribute '" + s.attributes[j].name + "' has sort " +
                                          r.attributes[*i].sort.name + " in " + r.name + " but " +
                                          s.attributes[j].sort.name + " in " + s.name);
      shared.emplace_back(*i, j);
    } else {
      s_rest.push_back(j);
    }
  }
  if (shared.empty()) fail(ErrorKind::NoSharedAttributes, r.name + " and " + s.name + " share no attribute");

  Relation out{"join_" + r.name + "_" + s.name, r.attributes, {}};
  for (std::size_t j : s_rest) out.attributes.push_back(s.attributes[j]);
  for (const Tuple& a : r.tuples) {
    for (const Tuple& b : s.tuples) {
      bool match = true;
      for (auto [i, j] : shared) match = match && a[i] == b[j];
      if (!match) continue;
      Tuple row = a;
      for (std::size_t j : s_rest) row.push_back(b[j]);
      out.tuples.insert(std::move(row));
    }
  }
  return out;
}

namespace detail {
inline void require_same_schema(const Relation& r, const Relation& s) {
  if (r.attributes != s.attributes)
    fail(ErrorKind::SchemaMismatch, r.name + " and " + s.name + " have different attribute lists");
}
}  // namespace detail

[[nodiscard]] inline Relation set_union(const Relation& r, const Relation& s) {
  detail::require_same_schema(r, s);
  Relation out{"union_" + r.name + "_" + s.name, r.attributes, r.tuples};
  out.tuples.insert(s.tuples.begin(), s.tuples.end());
  return out;
}

[[nodiscard]] inline Relation difference(const Relation& r, const Relation& s) {
  detail::require_same_schema(r, s);
  Relation out{"diff_" + r.name + "_" + s.name, r.attributes, {}};
  for (const Tuple& t : r.tuples)
    if (!s.tuples.contains(t)) out.tuples.insert(t);
  return out;
}

/// The atoms of project(select(r, index_attr = index_value), [target_attr]).
[[nodiscard]] inline AtomSet oracle_index(const Relation& r, const std::string& index_attr, const Atom& index_value,
                                          const std::string& target_attr) {
  (void)r.require_position(index_attr);
  (void)r.require_position(target_attr);
  Relation picked = project(select(r, pred::eq(Term::var(index_attr), Term::constant(index_value))), {target_attr});
  AtomSet out;
  for (const Tuple& t : picked.tuples) out.insert(t.front());
  return out;
}

}  // namespace intensio
