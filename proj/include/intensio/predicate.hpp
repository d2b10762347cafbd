#pragma once

// intensio/predicate.hpp - the filter predicate language.
//
// Predicates are immutable trees shared through shared_ptr. Terms are
// constants, variables, wildcards or (before scope resolution) bare names.
// A bare name becomes a variable when the enclosing scope declares it and a
// constant otherwise; see resolve_names().

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "intensio/core.hpp"
#include "intensio/relation.hpp"

namespace intensio {

struct Term {
  enum class Kind { Const, Var, Wildcard, Name };

  Kind kind = Kind::Wildcard;
  std::string text;            // variable or unresolved name
  std::optional<Atom> atom;    // set for Const

  [[nodiscard]] static Term constant(Atom a) { return Term{Kind::Const, {}, std::move(a)}; }
  [[nodiscard]] static Term var(std::string v) { return Term{Kind::Var, std::move(v), std::nullopt}; }
  [[nodiscard]] static Term wildcard() { return Term{}; }
  [[nodiscard]] static Term name(std::string n) { return Term{Kind::Name, std::move(n), std::nullopt}; }

  friend bool operator==(const Term&, const Term&) = default;
};

class Predicate;

namespace pred_node {
struct Member {
  std::string relation;
  std::vector<Term> pattern;
  Span span;
  friend bool operator==(const Member&, const Member&) = default;
};
struct Eq {
  Term lhs, rhs;
  friend bool operator==(const Eq&, const Eq&) = default;
};
struct And;
struct Or;
struct Not;
struct True {
  friend bool operator==(const True&, const True&) = default;
};
struct False {
  friend bool operator==(const False&, const False&) = default;
};
}  // namespace pred_node

class Predicate {
 public:
  using Node = std::variant<pred_node::Member, pred_node::Eq, pred_node::And, pred_node::Or, pred_node::Not,
                            pred_node::True, pred_node::False>;

  Predicate();  // True
  explicit Predicate(Node n);

  [[nodiscard]] const Node& node() const noexcept;

  friend bool operator==(const Predicate& a, const Predicate& b);

 private:
  std::shared_ptr<const Node> node_;
};

namespace pred_node {
struct And {
  Predicate lhs, rhs;
  friend bool operator==(const And&, const And&) = default;
};
struct Or {
  Predicate lhs, rhs;
  friend bool operator==(const Or&, const Or&) = default;
};
struct Not {
  Predicate operand;
  friend bool operator==(const Not&, const Not&) = default;
};
}  // namespace pred_node

inline Predicate::Predicate() : node_(std::make_shared<const Node>(pred_node::True{})) {}
inline Predicate::Predicate(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
inline bool operator==(const Predicate& a, const Predicate& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}
inline const Predicate::Node& Predicate::node() const noexcept { return *node_; }

namespace pred {
[[nodiscard]] inline Predicate member(std::string rel, std::vector<Term> pattern, Span span = {}) {
  return Predicate(pred_node::Member{std::move(rel), std::move(pattern), span});
}
[[nodiscard]] inline Predicate eq(Term a, Term b) { return Predicate(pred_node::Eq{std::move(a), std::move(b)}); }
[[nodiscard]] inline Predicate all(Predicate a, Predicate b) {
  return Predicate(pred_node::And{std::move(a), std::move(b)});
}
[[nodiscard]] inline Predicate any(Predicate a, Predicate b) {
  return Predicate(pred_node::Or{std::move(a), std::move(b)});
}
[[nodiscard]] inline Predicate negate(Predicate p) { return Predicate(pred_node::Not{std::move(p)}); }
[[nodiscard]] inline Predicate truth() { return Predicate(pred_node::True{}); }
[[nodiscard]] inline Predicate falsity() { return Predicate(pred_node::False{}); }
}  // namespace pred

/// A two-variable predicate deciding whether a candidate belongs to the
/// extension at a given index.
struct Filter {
  std::string name;
  std::string index_var;
  std::string candidate_var;
  Predicate body;

  friend bool operator==(const Filter&, const Filter&) = default;
};

/// Resolves relation names during Member evaluation; nullptr means unknown.
using RelationLookup = std::function<const Relation*(const std::string&)>;

namespace detail {

template <class F>
void visit_terms(const Predicate& p, F&& f) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, pred_node::Member>) {
          for (const Term& t : n.pattern) f(t);
        } else if constexpr (std::is_same_v<N, pred_node::Eq>) {
          f(n.lhs);
          f(n.rhs);
        } else if constexpr (std::is_same_v<N, pred_node::And> || std::is_same_v<N, pred_node::Or>) {
          visit_terms(n.lhs, f);
          visit_terms(n.rhs, f);
        } else if constexpr (std::is_same_v<N, pred_node::Not>) {
          visit_terms(n.operand, f);
        }
      },
      p.node());
}

template <class F>
void visit_members(const Predicate& p, F&& f) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, pred_node::Member>) {
          f(n);
        } else if constexpr (std::is_same_v<N, pred_node::And> || std::is_same_v<N, pred_node::Or>) {
          visit_members(n.lhs, f);
          visit_members(n.rhs, f);
        } else if constexpr (std::is_same_v<N, pred_node::Not>) {
          visit_members(n.operand, f);
        }
      },
      p.node());
}

}  // namespace detail

[[nodiscard]] inline std::set<std::string> free_vars(const Predicate& p) {
  std::set<std::string> out;
  detail::visit_terms(p, [&](const Term& t) {
    if (t.kind == Term::Kind::Var) out.insert(t.text);
  });
  return out;
}

/// Rewrites bare names: those in `scope` become variables, the rest constants.
[[nodiscard]] inline Term resolve_name(const Term& t, const std::set<std::string>& scope) {
  if (t.kind != Term::Kind::Name) return t;
  if (scope.contains(t.text)) return Term::var(t.text);
  return Term::constant(Atom::parse(t.text));
}

[[nodiscard]] inline Predicate resolve_names(const Predicate& p, const std::set<std::string>& scope) {
  using namespace pred_node;
  return std::visit(
      [&](const auto& n) -> Predicate {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Member>) {
          Member m = n;
          for (Term& t : m.pattern) t = resolve_name(t, scope);
          return Predicate(std::move(m));
        } else if constexpr (std::is_same_v<N, Eq>) {
          return pred::eq(resolve_name(n.lhs, scope), resolve_name(n.rhs, scope));
        } else if constexpr (std::is_same_v<N, And>) {
          return pred::all(resolve_names(n.lhs, scope), resolve_names(n.rhs, scope));
        } else if constexpr (std::is_same_v<N, Or>) {
          return pred::any(resolve_names(n.lhs, scope), resolve_names(n.rhs, scope));
        } else if constexpr (std::is_same_v<N, Not>) {
          return pred::negate(resolve_names(n.operand, scope));
        } else {
          return p;
        }
      },
      p.node());
}

namespace detail {

// nullopt for Wildcard; throws for unbound variables.
[[nodiscard]] inline std::optional<Atom> instantiate(const Term& t, const Environment& env) {
  switch (t.kind) {
    case Term::Kind::Const: return *t.atom;
    case Term::Kind::Wildcard: return std::nullopt;
    case Term::Kind::Var: {
      if (const Atom* a = env.lookup(t.text)) return *a;
      fail(ErrorKind::UnboundVariable, "variable '" + t.text + "' is not bound");
    }
    case Term::Kind::Name: break;
  }
  fail(ErrorKind::TypeError, "unresolved name '" + t.text + "' in predicate");
}

}  // namespace detail

/// Strict boolean evaluation, left operand first (no short-circuit, so
/// errors in either operand always surface). Member(r, pattern) holds iff some tuple of r matches
/// the instantiated pattern, wildcards matching anything. Eq with a wildcard
/// side holds trivially.
[[nodiscard]] inline bool evaluate(const Predicate& p, const Environment& env, const RelationLookup& relations) {
  using namespace pred_node;
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Member>) {
          const Relation* r = relations ? relations(n.relation) : nullptr;
          if (r == nullptr) fail(ErrorKind::UnknownRelation, "no relation named '" + n.relation + "'");
          if (n.pattern.size() != r->arity())
            fail(ErrorKind::ArityMismatch, "pattern of arity " + std::to_string(n.pattern.size()) + " against " +
                                               n.relation + " of arity " + std::to_string(r->arity()));
          std::vector<std::optional<Atom>> want;
          want.reserve(n.pattern.size());
          for (const Term& t : n.pattern) want.push_back(detail::instantiate(t, env));
          for (const Tuple& tuple : r->tuples) {
            bool match = true;
            for (std::size_t i = 0; i < want.size() && match; ++i)
              match = !want[i] || *want[i] == tuple[i];
            if (match) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<N, Eq>) {
          auto a = detail::instantiate(n.lhs, env);
          auto b = detail::instantiate(n.rhs, env);
          return !a || !b || *a == *b;
        } else if constexpr (std::is_same_v<N, And>) {
          const bool lhs = evaluate(n.lhs, env, relations);
          const bool rhs = evaluate(n.rhs, env, relations);
          return lhs && rhs;
        } else if constexpr (std::is_same_v<N, Or>) {
          const bool lhs = evaluate(n.lhs, env, relations);
          const bool rhs = evaluate(n.rhs, env, relations);
          return lhs || rhs;
        } else if constexpr (std::is_same_v<N, Not>) {
          return !evaluate(n.operand, env, relations);
        } else if constexpr (std::is_same_v<N, True>) {
          return true;
        } else {
          return false;
        }
      },
      p.node());
}

}  // namespace intensio
