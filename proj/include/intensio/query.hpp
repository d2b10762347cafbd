#pragma once

// intensio/query.hpp - relational expressions over a workspace's relations.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "intensio/format.hpp"
#include "intensio/relational.hpp"
#include "intensio/workspace.hpp"

namespace intensio {

class RelExpr;

namespace rel_node {
struct Ref {
  std::string name;
  Span span;
  friend bool operator==(const Ref&, const Ref&) = default;
};
struct Select;
struct Project;
struct Join;
struct Union;
struct Difference;
struct Oracle;
}  // namespace rel_node

class RelExpr {
 public:
  using Node = std::variant<rel_node::Ref, rel_node::Select, rel_node::Project, rel_node::Join, rel_node::Union,
                            rel_node::Difference, rel_node::Oracle>;

  explicit RelExpr(Node n);
  [[nodiscard]] const Node& node() const noexcept;
  friend bool operator==(const RelExpr& a, const RelExpr& b);

 private:
  std::shared_ptr<const Node> node_;
};

namespace rel_node {
struct Select {
  RelExpr source;
  Predicate where;
  friend bool operator==(const Select&, const Select&) = default;
};
struct Project {
  RelExpr source;
  std::vector<std::string> attributes;
  friend bool operator==(const Project&, const Project&) = default;
};
struct Join {
  RelExpr lhs, rhs;
  friend bool operator==(const Join&, const Join&) = default;
};
struct Union {
  RelExpr lhs, rhs;
  friend bool operator==(const Union&, const Union&) = default;
};
struct Difference {
  RelExpr lhs, rhs;
  friend bool operator==(const Difference&, const Difference&) = default;
};
/// Only valid as the outermost node; yields an atom set, not a relation.
struct Oracle {
  RelExpr source;
  std::string index_attr;
  Atom index_value;
  std::string target_attr;
  friend bool operator==(const Oracle&, const Oracle&) = default;
};
}  // namespace rel_node

inline RelExpr::RelExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
inline bool operator==(const RelExpr& a, const RelExpr& b) { return a.node_ == b.node_ || *a.node_ == *b.node_; }
inline const RelExpr::Node& RelExpr::node() const noexcept { return *node_; }

namespace rel {
[[nodiscard]] inline RelExpr ref(std::string name, Span span = {}) { return RelExpr(rel_node::Ref{std::move(name), span}); }
[[nodiscard]] inline RelExpr select(RelExpr src, Predicate where) {
  return RelExpr(rel_node::Select{std::move(src), std::move(where)});
}
[[nodiscard]] inline RelExpr project(RelExpr src, std::vector<std::string> attrs) {
  return RelExpr(rel_node::Project{std::move(src), std::move(attrs)});
}
[[nodiscard]] inline RelExpr join(RelExpr a, RelExpr b) { return RelExpr(rel_node::Join{std::move(a), std::move(b)}); }
[[nodiscard]] inline RelExpr set_union(RelExpr a, RelExpr b) {
  return RelExpr(rel_node::Union{std::move(a), std::move(b)});
}
[[nodiscard]] inline RelExpr difference(RelExpr a, RelExpr b) {
  return RelExpr(rel_node::Difference{std::move(a), std::move(b)});
}
[[nodiscard]] inline RelExpr oracle(RelExpr src, std::string index_attr, Atom value, std::string target_attr) {
  return RelExpr(rel_node::Oracle{std::move(src), std::move(index_attr), std::move(value), std::move(target_attr)});
}
}  // namespace rel

using QueryResult = std::variant<Relation, AtomSet>;

[[nodiscard]] inline Relation eval_relation(const RelExpr& e, const Workspace& ws) {
  using namespace rel_node;
  return std::visit(
      [&](const auto& n) -> Relation {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Ref>) {
          return ws.relation(n.name);
        } else if constexpr (std::is_same_v<N, Select>) {
          return select(eval_relation(n.source, ws), n.where, ws.relation_lookup());
        } else if constexpr (std::is_same_v<N, Project>) {
          return project(eval_relation(n.source, ws), n.attributes);
        } else if constexpr (std::is_same_v<N, Join>) {
          return join(eval_relation(n.lhs, ws), eval_relation(n.rhs, ws));
        } else if constexpr (std::is_same_v<N, Union>) {
          return set_union(eval_relation(n.lhs, ws), eval_relation(n.rhs, ws));
        } else if constexpr (std::is_same_v<N, Difference>) {
          return difference(eval_relation(n.lhs, ws), eval_relation(n.rhs, ws));
        } else {
          fail(ErrorKind::TypeError, "oracle(...) yields an atom set and cannot be nested");
        }
      },
      e.node());
}

[[nodiscard]] inline QueryResult eval_query(const RelExpr& e, const Workspace& ws) {
  if (const auto* o = std::get_if<rel_node::Oracle>(&e.node()))
    return oracle_index(eval_relation(o->source, ws), o->index_attr, o->index_value, o->target_attr);
  return eval_relation(e, ws);
}

[[nodiscard]] inline std::string format_rel_expr(const RelExpr& e) {
  using namespace rel_node;
  return std::visit(
      [&](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Ref>) {
          return n.name;
        } else if constexpr (std::is_same_v<N, Select>) {
          return "select(" + format_rel_expr(n.source) + ", " + format_predicate(n.where) + ")";
        } else if constexpr (std::is_same_v<N, Project>) {
          std::string out = "project(" + format_rel_expr(n.source) + ", [";
          for (std::size_t i = 0; i < n.attributes.size(); ++i) out += (i ? ", " : "") + n.attributes[i];
          return out + "])";
        } else if constexpr (std::is_same_v<N, Join>) {
          return "join(" + format_rel_expr(n.lhs) + ", " + format_rel_expr(n.rhs) + ")";
        } else if constexpr (std::is_same_v<N, Union>) {
          return "union(" + format_rel_expr(n.lhs) + ", " + format_rel_expr(n.rhs) + ")";
        } else if constexpr (std::is_same_v<N, Difference>) {
          return "difference(" + format_rel_expr(n.lhs) + ", " + format_rel_expr(n.rhs) + ")";
        } else {
          return "oracle(" + format_rel_expr(n.source) + ", " + n.index_attr + ", " + n.index_value.text() + ", " +
                 n.target_attr + ")";
        }
      },
      e.node());
}

/// Relation names referenced by an expression, with their source spans.
inline void collect_refs(const RelExpr& e, std::vector<rel_node::Ref>& out) {
  using namespace rel_node;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Ref>) {
          out.push_back(n);
        } else if constexpr (std::is_same_v<N, Select> || std::is_same_v<N, Project> || std::is_same_v<N, Oracle>) {
          collect_refs(n.source, out);
        } else {
          collect_refs(n.lhs, out);
          collect_refs(n.rhs, out);
        }
      },
      e.node());
}

}  // namespace intensio
