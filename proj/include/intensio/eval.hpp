#pragma once

// intensio/eval.hpp - strict evaluation of combinator trees and filters,
// and the exhaustive commutativity checker for diagrams.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "intensio/diagram.hpp"
#include "intensio/predicate.hpp"
#include "intensio/workspace.hpp"

namespace intensio {

[[nodiscard]] inline bool eval_predicate(const Predicate& p, const Environment& env, const Workspace& ws) {
  return evaluate(p, env, ws.relation_lookup());
}

/// Binds the index variable (stage 1), then the candidate variable (stage
/// 2), and evaluates the body.
[[nodiscard]] inline bool run_filter(const Filter& f, const Atom& index, const Atom& candidate, const Workspace& ws) {
  Environment env = Environment{}.bind(f.index_var, index).bind(f.candidate_var, candidate);
  return eval_predicate(f.body, env, ws);
}

namespace detail {

[[nodiscard]] inline Value apply_function(const Value& fn, const Value& arg, const Workspace& ws) {
  const FunctionValue& f = fn.as_function();
  if (f.kind == FunctionValue::Kind::Filter) {
    const Filter& filter = ws.filter(f.name);
    return run_filter(filter, arg.first().as_atom(), arg.second().as_atom(), ws);
  }
  const PotentialObject& po = ws.potential(f.name);
  return run_filter(ws.filter(po.filter), *f.index, arg.as_atom(), ws);
}

}  // namespace detail

/// Evaluates `e` under `env`. `input` is the value `Input` denotes; it is
/// absent outside diagram paths.
[[nodiscard]] inline Value eval_expr(const Expr& e, const Environment& env, const Workspace& ws,
                                     const std::optional<Value>& input = std::nullopt) {
  using namespace expr_node;
  return std::visit(
      [&](const auto& n) -> Value {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Const>) {
          return n.value;
        } else if constexpr (std::is_same_v<N, Var>) {
          if (const Atom* a = env.lookup(n.name)) return *a;
          fail(ErrorKind::UnboundVariable, "variable '" + n.name + "' is not bound");
        } else if constexpr (std::is_same_v<N, Input>) {
          if (!input) fail(ErrorKind::UnboundVariable, "'in' used outside a diagram path");
          return *input;
        } else if constexpr (std::is_same_v<N, FilterRef>) {
          (void)ws.filter(n.name);
          return FunctionValue{FunctionValue::Kind::Filter, n.name, std::nullopt};
        } else if constexpr (std::is_same_v<N, Pair>) {
          Value a = eval_expr(n.first, env, ws, input);
          Value b = eval_expr(n.second, env, ws, input);
          return Value::pair(std::move(a), std::move(b));
        } else if constexpr (std::is_same_v<N, Fst>) {
          return eval_expr(n.operand, env, ws, input).first();
        } else if constexpr (std::is_same_v<N, Snd>) {
          return eval_expr(n.operand, env, ws, input).second();
        } else if constexpr (std::is_same_v<N, Subst>) {
          Value v = eval_expr(n.value, env, ws, input);
          Environment child = env.bind(n.var, v.as_atom());
          return eval_expr(n.target, child, ws, input);
        } else if constexpr (std::is_same_v<N, Apply>) {
          Value fn = eval_expr(n.fn, env, ws, input);
          Value arg = eval_expr(n.arg, env, ws, input);
          return detail::apply_function(fn, arg, ws);
        } else if constexpr (std::is_same_v<N, IndexShift>) {
          const PotentialObject& po = ws.potential(n.po);
          Atom index = eval_expr(n.index, env, ws, input).as_atom();
          (void)make_event(ws.domain(po.index_domain), index);
          return FunctionValue{FunctionValue::Kind::Shifted, n.po, index};
        } else if constexpr (std::is_same_v<N, IdArrow>) {
          return eval_expr(n.operand, env, ws, input);
        } else {
          static_assert(std::is_same_v<N, Not>);
          return !eval_expr(n.operand, env, ws, input).as_bool();
        }
      },
      e.node());
}

/// Feeds `input` through each step in order.
[[nodiscard]] inline Value run_path(const std::vector<Expr>& path, const Value& input, const Workspace& ws) {
  Value current = input;
  for (const Expr& step : path) current = eval_expr(step, Environment{}, ws, current);
  return current;
}

[[nodiscard]] inline bool conforms(const Value& v, const Shape& s, const Workspace& ws) {
  switch (s.kind()) {
    case Shape::Kind::Bool: return v.is_bool();
    case Shape::Kind::Domain: return v.is_atom() && ws.domain(s.domain_name()).contains(v.as_atom());
    case Shape::Kind::Pair: return v.is_pair() && conforms(v.first(), s.first(), ws) && conforms(v.second(), s.second(), ws);
  }
  return false;
}

/// Every value of a shape built from domains, in ascending order. Bool
/// enumerates {false, true}.
[[nodiscard]] inline std::vector<Value> enumerate_shape(const Shape& s, const Workspace& ws) {
  std::vector<Value> out;
  switch (s.kind()) {
    case Shape::Kind::Bool:
      out = {Value(false), Value(true)};
      break;
    case Shape::Kind::Domain:
      for (const Atom& a : ws.domain(s.domain_name()).elements) out.emplace_back(a);
      break;
    case Shape::Kind::Pair: {
      auto lhs = enumerate_shape(s.first(), ws);
      auto rhs = enumerate_shape(s.second(), ws);
      for (const Value& a : lhs)
        for (const Value& b : rhs) out.push_back(Value::pair(a, b));
      break;
    }
  }
  return out;
}

struct CommutativityRow {
  Value input;
  std::optional<Value> path_a;
  std::optional<Value> path_b;
  std::string error;  // empty when both paths evaluated and conformed
  bool agree = false;
};

struct CommutativityReport {
  std::string diagram;
  std::vector<CommutativityRow> rows;

  [[nodiscard]] std::size_t agreeing() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.agree; }));
  }
  [[nodiscard]] bool commutes() const { return agreeing() == rows.size(); }
};

/// Evaluates both paths on every input. Errors and exit-shape violations are
/// recorded on the row, never thrown. Rows are ordered by input.
[[nodiscard]] inline CommutativityReport check_commutes(const DiagramSpec& spec, const std::vector<Value>& inputs,
                                                        const Workspace& ws) {
  std::set<Value> ordered(inputs.begin(), inputs.end());
  CommutativityReport report{spec.name, {}};
  for (const Value& in : ordered) {
    CommutativityRow row{in, std::nullopt, std::nullopt, {}, false};
    auto run = [&](const std::vector<Expr>& path, std::optional<Value>& slot, const char* label) {
      try {
        slot = run_path(path, in, ws);
        if (!conforms(*slot, spec.exit, ws) && row.error.empty())
          row.error = std::string(label) + ": " + std::string(to_string(ErrorKind::ShapeMismatch)) + ": " +
                      slot->describe() + " is not " + spec.exit.describe();
      } catch (const Error& e) {
        if (row.error.empty()) row.error = std::string(label) + ": " + e.what();
      }
    };
    run(spec.path_a, row.path_a, "path_a");
    run(spec.path_b, row.path_b, "path_b");
    row.agree = row.error.empty() && row.path_a && row.path_b && *row.path_a == *row.path_b;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace intensio
