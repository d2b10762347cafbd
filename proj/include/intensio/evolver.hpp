#pragma once

// intensio/evolver.hpp - events, scripts and evolvents over immutable
// workspace snapshots, plus the request/response exchange with its audit log.
//
// Every operation takes a state by const reference and returns a new one.
// Stage counts triggered events: +1 per trigger, never decreasing.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "intensio/eval.hpp"
#include "intensio/query.hpp"
#include "intensio/workspace.hpp"

namespace intensio {

struct AuditEntry {
  std::uint64_t stage = 0;
  std::string kind;
  std::string target;
  std::string outcome;

  friend bool operator==(const AuditEntry&, const AuditEntry&) = default;
};

struct WorkspaceState {
  Workspace workspace;
  std::map<std::string, ActualObject> ao_library;
  std::uint64_t stage = 0;
  std::vector<AuditEntry> audit;

  friend bool operator==(const WorkspaceState&, const WorkspaceState&) = default;
};

/// The extension of `po` at `index`: carrier elements passing the filter.
[[nodiscard]] inline ActualObject derive_actual(const Workspace& ws, const std::string& po_name, const Atom& index) {
  const PotentialObject& po = ws.potential(po_name);
  Event event = make_event(ws.domain(po.index_domain), index);
  const Filter& filter = ws.filter(po.filter);
  ActualObject ao{actual_object_name(po.name, index), {}, po.name, event};
  for (const Atom& candidate : ws.domain(po.carrier).elements)
    if (run_filter(filter, index, candidate, ws)) ao.elements.insert(candidate);
  return ao;
}

struct TriggerResult {
  WorkspaceState state;
  ActualObject actual;
};

/// Fires the event (po, index). A repeated event replaces the library entry
/// and still advances the stage.
[[nodiscard]] inline TriggerResult trigger(const WorkspaceState& state, const std::string& po, const Atom& index) {
  ActualObject ao = derive_actual(state.workspace, po, index);
  WorkspaceState next = state;
  next.ao_library.insert_or_assign(ao.name, ao);
  ++next.stage;
  return {std::move(next), std::move(ao)};
}

/// index -> actual object for every index of the potential object, without
/// touching the state.
[[nodiscard]] inline std::map<Atom, ActualObject> materialize_functor(const WorkspaceState& state,
                                                                      const std::string& po_name) {
  const PotentialObject& po = state.workspace.potential(po_name);
  std::map<Atom, ActualObject> out;
  for (const Atom& i : state.workspace.domain(po.index_domain).elements)
    out.emplace(i, derive_actual(state.workspace, po_name, i));
  return out;
}

[[nodiscard]] inline WorkspaceState run_steps(const WorkspaceState& state, const std::vector<ScriptStep>& steps) {
  WorkspaceState current = state;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      current = trigger(current, steps[i].potential, steps[i].index).state;
    } catch (const ScriptError&) {
      throw;
    } catch (const Error& e) {
      throw ScriptError(i + 1, e);
    }
  }
  return current;
}

/// All-or-nothing: a failing step throws ScriptError and the caller's state is
/// untouched.
[[nodiscard]] inline WorkspaceState run_script(const WorkspaceState& state, const std::string& script) {
  return run_steps(state, state.workspace.script(script).steps);
}

[[nodiscard]] inline WorkspaceState apply_evolvent(const WorkspaceState& state, const std::string& name) {
  const Evolvent& ev = state.workspace.evolvent(name);
  switch (ev.kind) {
    case Evolvent::Kind::Identity: return state;
    case Evolvent::Kind::Script: return run_script(state, ev.script);
    case Evolvent::Kind::Composed: {
      WorkspaceState current = state;
      for (const std::string& part : ev.components) current = apply_evolvent(current, part);
      return current;
    }
  }
  return state;
}

/// Finds a composed evolvent that reaches itself. Missing components are
/// ignored here; returns the cycle path when one exists.
[[nodiscard]] inline std::optional<std::vector<std::string>> evolvent_cycle(
    const std::map<std::string, Evolvent>& evolvents) {
  std::map<std::string, int> mark;  // 0 white, 1 grey, 2 black
  std::vector<std::string> stack;
  std::optional<std::vector<std::string>> found;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    mark[n] = 1;
    stack.push_back(n);
    auto it = evolvents.find(n);
    if (it != evolvents.end() && it->second.kind == Evolvent::Kind::Composed) {
      for (const std::string& c : it->second.components) {
        if (found) return;
        if (!evolvents.contains(c)) continue;
        if (mark[c] == 1) {
          auto from = std::find(stack.begin(), stack.end(), c);
          found = std::vector<std::string>(from, stack.end());
          found->push_back(c);
          return;
        }
        if (mark[c] == 0) visit(c);
      }
    }
    stack.pop_back();
    mark[n] = 2;
  };
  for (const auto& [name, ev] : evolvents) {
    if (found) break;
    if (mark[name] == 0) visit(name);
  }
  return found;
}

// ---------------------------------------------------------------------------
// Exchange
// ---------------------------------------------------------------------------

namespace request {
struct GetPO {
  std::string name;
};
struct GetAO {
  std::string name;
};
struct GetConcept {
  std::string name;
};
struct Trigger {
  std::string po;
  Atom index;
};
struct Query {
  RelExpr expr;
};
}  // namespace request

using Request = std::variant<request::GetPO, request::GetAO, request::GetConcept, request::Trigger, request::Query>;

struct Response {
  using Payload = std::variant<std::monostate, PotentialObject, ActualObject, Concept, Relation, AtomSet>;

  Payload value;
  std::optional<ErrorKind> error;
  std::string message;

  [[nodiscard]] bool ok() const noexcept { return !error.has_value(); }
};

struct ExchangeResult {
  WorkspaceState state;
  Response response;
};

[[nodiscard]] inline std::string_view request_kind(const Request& r) {
  static constexpr std::string_view names[] = {"GetPO", "GetAO", "GetConcept", "Trigger", "Query"};
  return names[r.index()];
}

[[nodiscard]] inline std::string request_target(const Request& r) {
  return std::visit(
      [](const auto& q) -> std::string {
        using Q = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<Q, request::Trigger>) return q.po + " " + q.index.text();
        else if constexpr (std::is_same_v<Q, request::Query>) return format_rel_expr(q.expr);
        else return q.name;
      },
      r);
}

/// Dispatches a request to its owning registry. Failures come back as error
/// responses; each call appends one audit entry stamped with the stage at
/// which it ran.
[[nodiscard]] inline ExchangeResult exchange(const WorkspaceState& state, const Request& req) {
  const std::uint64_t stage = state.stage;
  ExchangeResult out{state, {}};
  try {
    std::visit(
        [&](const auto& q) {
          using Q = std::decay_t<decltype(q)>;
          if constexpr (std::is_same_v<Q, request::GetPO>) {
            out.response.value = state.workspace.potential(q.name);
          } else if constexpr (std::is_same_v<Q, request::GetAO>) {
            auto it = state.ao_library.find(q.name);
            if (it == state.ao_library.end()) fail(ErrorKind::NotFound, "no actual object named '" + q.name + "'");
            out.response.value = it->second;
          } else if constexpr (std::is_same_v<Q, request::GetConcept>) {
            out.response.value = state.workspace.concepts.get(q.name);
          } else if constexpr (std::is_same_v<Q, request::Trigger>) {
            auto [next, ao] = trigger(state, q.po, q.index);
            out.state = std::move(next);
            out.response.value = std::move(ao);
          } else {
            std::visit([&](auto&& v) { out.response.value = std::move(v); }, eval_query(q.expr, state.workspace));
          }
        },
        req);
  } catch (const Error& e) {
    out.response.value = std::monostate{};
    out.response.error = e.kind();
    out.response.message = e.detail();
  }
  out.state.audit.push_back(AuditEntry{stage, std::string(request_kind(req)), request_target(req),
                                       out.response.ok() ? "ok" : std::string(to_string(*out.response.error))});
  return out;
}

/// One line per entry: stage, request kind, target, outcome, tab-separated.
[[nodiscard]] inline std::string format_audit(const std::vector<AuditEntry>& log) {
  std::string out;
  for (const AuditEntry& e : log)
    out += std::to_string(e.stage) + "\t" + e.kind + "\t" + e.target + "\t" + e.outcome + "\n";
  return out;
}

}  // namespace intensio
