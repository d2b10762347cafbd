#pragma once

// Parsed DODL statements. Declarations mirror the workspace types but keep
// the source span of every name so diagnostics can point at it.

#include <string>
#include <variant>
#include <vector>

#include "intensio/core.hpp"
#include "intensio/diagram.hpp"
#include "intensio/predicate.hpp"
#include "intensio/query.hpp"
#include "intensio/workspace.hpp"

namespace intensio::dodl {

struct Name {
  std::string text;
  Span span;
};

struct AtomLit {
  Atom value = Atom::number(0);
  Span span;
};

struct SortDecl {
  Name name;
  SortKind kind = SortKind::Symbolic;
};

struct DomainDecl {
  Name name;
  Name sort;
  std::vector<AtomLit> atoms;
};

struct AttrDecl {
  Name name;
  Name sort;
};

struct TupleLit {
  std::vector<Atom> values;
  Span span;
};

struct RelationDecl {
  Name name;
  std::vector<AttrDecl> attributes;
  std::vector<TupleLit> tuples;
};

struct FilterDecl {
  Name name;
  Name index_var;
  Name candidate_var;
  Predicate body;
};

struct PotentialDecl {
  Name name;
  Name carrier;
  Name index_domain;
  Name filter;
};

struct ConceptAttr {
  Name name;
  AtomLit value;
  bool is_private = false;
};

struct MenuDecl {
  Name label;
  Name event;
};

struct ConceptDecl {
  Name name;
  std::vector<Name> parents;
  std::vector<ConceptAttr> attributes;
  std::vector<Name> encapsulate;
  std::vector<Name> events;
  std::vector<MenuDecl> menus;
};

struct ShapeLit {
  Shape shape = Shape::boolean();
  Span span;
};

struct DiagramDecl {
  Name name;
  ShapeLit entry;
  std::vector<Expr> path_a;
  std::vector<Expr> path_b;
  ShapeLit exit;
};

struct StepLit {
  Name potential;
  AtomLit index;
};

struct ScriptDecl {
  Name name;
  std::vector<StepLit> steps;
};

struct EvolventDecl {
  Name name;
  Evolvent::Kind kind = Evolvent::Kind::Identity;
  Name script;
  std::vector<Name> components;
};

struct TriggerCmd {
  Name potential;
  AtomLit index;
};

struct CheckCmd {
  Name diagram;
};

struct QueryCmd {
  RelExpr expr;
};

struct DumpCmd {};

using StatementNode = std::variant<SortDecl, DomainDecl, RelationDecl, FilterDecl, PotentialDecl, ConceptDecl,
                                   DiagramDecl, ScriptDecl, EvolventDecl, TriggerCmd, CheckCmd, QueryCmd, DumpCmd>;

struct Statement {
  StatementNode node;
  Span span;
};

struct SourceUnit {
  std::string path;
  std::vector<Statement> statements;
};

/// A located problem: syntax errors carry the expected-token set.
struct Diagnostic {
  ErrorKind kind = ErrorKind::SyntaxError;
  std::string message;
  Span span;
  std::string path;
  std::vector<std::string> expected;

  [[nodiscard]] std::string format() const {
    std::string out = path.empty() ? std::string("<input>") : path;
    out += ":" + std::to_string(span.line) + ":" + std::to_string(span.column) + ": error: " +
           std::string(to_string(kind)) + ": " + message;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
      out += ")";
    }
    return out;
  }
};

}  // namespace intensio::dodl
