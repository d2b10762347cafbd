#pragma once

// intensio/format.hpp - DODL surface syntax for terms, predicates and
// combinator expressions. Output parses back to an equal tree.

#include <set>
#include <string>
#include <string_view>

#include "intensio/diagram.hpp"
#include "intensio/predicate.hpp"

namespace intensio {

namespace syntax {

inline const std::set<std::string, std::less<>> predicate_words = {"and", "or", "not", "true", "false",
                                                                   "member", "const", "var"};
inline const std::set<std::string, std::less<>> expr_words = {"in",    "const", "var",   "pair", "fst",
                                                              "snd",   "subst", "apply", "filter", "shift",
                                                              "id",    "not"};

}  // namespace syntax

namespace detail {

[[nodiscard]] inline std::string format_const(const Atom& a, const std::set<std::string>& scope,
                                              const std::set<std::string, std::less<>>& words) {
  if (!a.numeric() && (scope.contains(a.text()) || words.contains(a.text()))) return "const(" + a.text() + ")";
  return a.text();
}

}  // namespace detail

[[nodiscard]] inline std::string format_term(const Term& t, const std::set<std::string>& scope) {
  switch (t.kind) {
    case Term::Kind::Wildcard: return "_";
    case Term::Kind::Name: return t.text;
    case Term::Kind::Var: return scope.contains(t.text) ? t.text : "var(" + t.text + ")";
    case Term::Kind::Const: return detail::format_const(*t.atom, scope, syntax::predicate_words);
  }
  return {};
}

namespace detail {

// Binding strength: or = 1, and = 2, not = 3, primaries = 4.
[[nodiscard]] inline std::string format_predicate(const Predicate& p, const std::set<std::string>& scope, int min_prec) {
  using namespace pred_node;
  auto wrap = [&](int prec, std::string s) { return prec < min_prec ? "(" + s + ")" : s; };
  return std::visit(
      [&](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Member>) {
          std::string out = "member " + n.relation + " (";
          for (std::size_t i = 0; i < n.pattern.size(); ++i) out += (i ? ", " : "") + format_term(n.pattern[i], scope);
          return out + ")";
        } else if constexpr (std::is_same_v<N, Eq>) {
          return format_term(n.lhs, scope) + " = " + format_term(n.rhs, scope);
        } else if constexpr (std::is_same_v<N, And>) {
          return wrap(2, format_predicate(n.lhs, scope, 2) + " and " + format_predicate(n.rhs, scope, 3));
        } else if constexpr (std::is_same_v<N, Or>) {
          return wrap(1, format_predicate(n.lhs, scope, 1) + " or " + format_predicate(n.rhs, scope, 2));
        } else if constexpr (std::is_same_v<N, Not>) {
          return wrap(3, "not " + format_predicate(n.operand, scope, 3));
        } else if constexpr (std::is_same_v<N, True>) {
          return "true";
        } else {
          return "false";
        }
      },
      p.node());
}

}  // namespace detail

[[nodiscard]] inline std::string format_predicate(const Predicate& p, const std::set<std::string>& scope = {}) {
  return detail::format_predicate(p, scope, 0);
}

[[nodiscard]] inline std::string format_expr(const Expr& e, const std::set<std::string>& scope = {}) {
  using namespace expr_node;
  return std::visit(
      [&](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Const>) {
          return detail::format_const(n.value, scope, syntax::expr_words);
        } else if constexpr (std::is_same_v<N, Var>) {
          return scope.contains(n.name) ? n.name : "var(" + n.name + ")";
        } else if constexpr (std::is_same_v<N, Input>) {
          return "in";
        } else if constexpr (std::is_same_v<N, FilterRef>) {
          return "filter(" + n.name + ")";
        } else if constexpr (std::is_same_v<N, Pair>) {
          return "pair(" + format_expr(n.first, scope) + ", " + format_expr(n.second, scope) + ")";
        } else if constexpr (std::is_same_v<N, Fst>) {
          return "fst(" + format_expr(n.operand, scope) + ")";
        } else if constexpr (std::is_same_v<N, Snd>) {
          return "snd(" + format_expr(n.operand, scope) + ")";
        } else if constexpr (std::is_same_v<N, Subst>) {
          std::set<std::string> inner = scope;
          inner.insert(n.var);
          return "subst(" + n.var + ", " + format_expr(n.value, scope) + ", " + format_expr(n.target, inner) + ")";
        } else if constexpr (std::is_same_v<N, Apply>) {
          return "apply(" + format_expr(n.fn, scope) + ", " + format_expr(n.arg, scope) + ")";
        } else if constexpr (std::is_same_v<N, IndexShift>) {
          return "shift(" + n.po + ", " + format_expr(n.index, scope) + ")";
        } else if constexpr (std::is_same_v<N, IdArrow>) {
          return "id(" + format_expr(n.operand, scope) + ")";
        } else {
          return "not(" + format_expr(n.operand, scope) + ")";
        }
      },
      e.node());
}

}  // namespace intensio
