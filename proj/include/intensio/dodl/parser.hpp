#pragma once

// Recursive-descent parser for DODL.
//
// Errors are collected, not thrown: after a syntax error the parser skips to
// the `;` that closes the current statement and carries on. Parsing stops
// after max_errors diagnostics.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "intensio/dodl/ast.hpp"
#include "intensio/dodl/lexer.hpp"
#include "intensio/format.hpp"

namespace intensio::dodl {

inline constexpr std::size_t max_errors = 20;

struct ParseResult {
  SourceUnit unit;
  std::vector<Diagnostic> errors;

  [[nodiscard]] bool ok() const noexcept { return errors.empty(); }
};

namespace detail {

inline const std::vector<std::string> statement_keywords = {
    "sort", "domain", "relation", "filter", "potential", "concept", "diagram",
    "script", "evolvent", "trigger", "check", "query", "dump"};

struct SyntaxFailure {
  Diagnostic diagnostic;
};

class Parser {
 public:
  Parser(std::string_view text, std::string path) : tokens_(tokenize(text)), path_(std::move(path)) {}

  ParseResult run() {
    ParseResult result;
    result.unit.path = path_;
    while (!at(Tok::End)) {
      std::size_t start = pos_;
      try {
        Statement s = statement();
        result.unit.statements.push_back(std::move(s));
      } catch (const SyntaxFailure& f) {
        result.errors.push_back(f.diagnostic);
        if (result.errors.size() >= max_errors) break;
        recover(start);
      }
    }
    return result;
  }

  // Entry points for fragments (CLI query argument).
  RelExpr standalone_rel_expr() {
    RelExpr e = rel_expr();
    expect(Tok::End, {"end of input"});
    return e;
  }

 private:
  // ---- token plumbing ----------------------------------------------------

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  [[nodiscard]] bool at(Tok k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }
  [[nodiscard]] bool at_word(std::string_view w, std::size_t ahead = 0) const {
    return at(Tok::Ident, ahead) && peek(ahead).text == w;
  }
  // A keyword that introduces a parenthesised form.
  [[nodiscard]] bool at_call(std::string_view w) const { return at_word(w) && at(Tok::LParen, 1); }

  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void error(std::vector<std::string> expected, std::string message = {}) const {
    const Token& t = peek();
    Diagnostic d;
    d.kind = ErrorKind::SyntaxError;
    d.span = t.span;
    d.path = path_;
    d.expected = std::move(expected);
    d.message = message.empty() ? "unexpected " + found(t) : message;
    throw SyntaxFailure{std::move(d)};
  }

  [[nodiscard]] static std::string found(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return std::string(describe(t.kind)) + " '" + std::string(t.text) + "'";
  }

  const Token& expect(Tok k, std::vector<std::string> expected = {}) {
    if (!at(k)) error(expected.empty() ? std::vector<std::string>{std::string(describe(k))} : std::move(expected));
    return advance();
  }

  const Token& expect_word(std::string_view w) {
    if (!at_word(w)) error({"'" + std::string(w) + "'"});
    return advance();
  }

  Name ident() {
    const Token& t = expect(Tok::Ident);
    return Name{std::string(t.text), t.span};
  }

  AtomLit atom() {
    if (!at(Tok::Ident) && !at(Tok::Integer)) error({"identifier", "integer"});
    const Token& t = peek();
    try {
      Atom a = t.kind == Tok::Integer ? Atom::parse(t.text) : Atom::symbol(t.text);
      advance();
      return AtomLit{std::move(a), t.span};
    } catch (const Error& e) {
      error({"integer"}, "integer '" + std::string(t.text) + "' is out of range");
    }
  }

  [[nodiscard]] Span since(std::size_t start) const {
    std::size_t last = pos_ > start ? pos_ - 1 : start;
    return Span::cover(tokens_[start].span, tokens_[last].span);
  }

  // Skip to the `;` closing the statement that began at `start`.
  void recover(std::size_t start) {
    int depth = 0;
    std::size_t i = start;
    auto track = [&](Tok k) {
      if (k == Tok::LBrace || k == Tok::LParen || k == Tok::LBracket) ++depth;
      if (k == Tok::RBrace || k == Tok::RParen || k == Tok::RBracket) --depth;
    };
    for (; i < pos_; ++i) track(tokens_[i].kind);
    if (pos_ == start && !at(Tok::End)) advance();  // always make progress
    while (!at(Tok::End)) {
      Tok k = peek().kind;
      if (k == Tok::Semicolon && depth <= 0) {
        advance();
        return;
      }
      track(k);
      advance();
    }
  }

  // ---- statements --------------------------------------------------------

  Statement statement() {
    std::size_t start = pos_;
    if (!at(Tok::Ident)) error(keyword_list());
    std::string_view kw = peek().text;
    StatementNode node = [&]() -> StatementNode {
      if (kw == "sort") return sort_decl();
      if (kw == "domain") return domain_decl();
      if (kw == "relation") return relation_decl();
      if (kw == "filter") return filter_decl();
      if (kw == "potential") return potential_decl();
      if (kw == "concept") return concept_decl();
      if (kw == "diagram") return diagram_decl();
      if (kw == "script") return script_decl();
      if (kw == "evolvent") return evolvent_decl();
      if (kw == "trigger") return trigger_cmd();
      if (kw == "check") return check_cmd();
      if (kw == "query") return query_cmd();
      if (kw == "dump") {
        advance();
        return DumpCmd{};
      }
      error(keyword_list());
    }();
    expect(Tok::Semicolon);
    return Statement{std::move(node), since(start)};
  }

  static std::vector<std::string> keyword_list() {
    std::vector<std::string> out;
    for (const auto& k : statement_keywords) out.push_back("'" + k + "'");
    return out;
  }

  SortDecl sort_decl() {
    advance();
    SortDecl d{ident(), SortKind::Symbolic};
    expect(Tok::Colon);
    if (at_word("symbolic")) {
      d.kind = SortKind::Symbolic;
    } else if (at_word("numeric")) {
      d.kind = SortKind::Numeric;
    } else {
      error({"'symbolic'", "'numeric'"});
    }
    advance();
    return d;
  }

  DomainDecl domain_decl() {
    advance();
    DomainDecl d;
    d.name = ident();
    expect(Tok::Colon);
    d.sort = ident();
    expect(Tok::Equals);
    expect(Tok::LBrace);
    if (!at(Tok::RBrace)) {
      d.atoms.push_back(atom());
      while (at(Tok::Comma)) {
        advance();
        d.atoms.push_back(atom());
      }
    }
    expect(Tok::RBrace, {"','", "'}'"});
    return d;
  }

  RelationDecl relation_decl() {
    advance();
    RelationDecl d;
    d.name = ident();
    expect(Tok::LParen);
    do {
      if (at(Tok::Comma)) advance();
      AttrDecl a;
      a.name = ident();
      expect(Tok::Colon);
      a.sort = ident();
      d.attributes.push_back(std::move(a));
    } while (at(Tok::Comma));
    expect(Tok::RParen, {"','", "')'"});
    expect(Tok::Equals);
    expect(Tok::LBrace);
    if (!at(Tok::RBrace)) {
      d.tuples.push_back(tuple());
      while (at(Tok::Comma)) {
        advance();
        d.tuples.push_back(tuple());
      }
    }
    expect(Tok::RBrace, {"','", "'}'"});
    return d;
  }

  TupleLit tuple() {
    std::size_t start = pos_;
    expect(Tok::LParen);
    TupleLit t;
    t.values.push_back(atom().value);
    while (at(Tok::Comma)) {
      advance();
      t.values.push_back(atom().value);
    }
    expect(Tok::RParen, {"','", "')'"});
    t.span = since(start);
    return t;
  }

  FilterDecl filter_decl() {
    advance();
    FilterDecl d;
    d.name = ident();
    expect(Tok::LParen);
    d.index_var = ident();
    expect(Tok::Comma);
    d.candidate_var = ident();
    expect(Tok::RParen);
    expect(Tok::Equals);
    std::set<std::string> scope{d.index_var.text, d.candidate_var.text};
    d.body = predicate(&scope);
    return d;
  }

  PotentialDecl potential_decl() {
    advance();
    PotentialDecl d;
    d.name = ident();
    expect(Tok::Colon);
    expect_word("carrier");
    d.carrier = ident();
    expect_word("index");
    d.index_domain = ident();
    expect_word("filter");
    d.filter = ident();
    return d;
  }

  ConceptDecl concept_decl() {
    advance();
    ConceptDecl d;
    d.name = ident();
    if (at(Tok::Colon)) {
      advance();
      d.parents.push_back(ident());
      while (at(Tok::Comma)) {
        advance();
        d.parents.push_back(ident());
      }
    }
    expect(Tok::LBrace, {"':'", "'{'"});
    while (!at(Tok::RBrace)) {
      if (!at(Tok::Ident)) error({"identifier", "'}'"});
      bool keyword_form = !at(Tok::Equals, 1);
      if (keyword_form && at_word("private")) {
        advance();
        ConceptAttr a;
        a.name = ident();
        expect(Tok::Equals);
        a.value = atom();
        a.is_private = true;
        d.attributes.push_back(std::move(a));
      } else if (keyword_form && at_word("encapsulate")) {
        advance();
        d.encapsulate.push_back(ident());
      } else if (keyword_form && at_word("event")) {
        advance();
        d.events.push_back(ident());
      } else if (keyword_form && at_word("menu")) {
        advance();
        MenuDecl m;
        m.label = ident();
        expect(Tok::Arrow);
        m.event = ident();
        d.menus.push_back(std::move(m));
      } else {
        ConceptAttr a;
        a.name = ident();
        expect(Tok::Equals);
        a.value = atom();
        d.attributes.push_back(std::move(a));
      }
      expect(Tok::Semicolon);
    }
    advance();
    return d;
  }

  DiagramDecl diagram_decl() {
    advance();
    DiagramDecl d;
    d.name = ident();
    expect_word("entry");
    d.entry = shape();
    expect_word("path_a");
    d.path_a = path();
    expect_word("path_b");
    d.path_b = path();
    expect_word("exit");
    d.exit = shape();
    return d;
  }

  ShapeLit shape() {
    std::size_t start = pos_;
    if (at_word("Bool")) {
      advance();
      return {Shape::boolean(), since(start)};
    }
    if (at_call("pair")) {
      advance();
      advance();
      ShapeLit a = shape();
      expect(Tok::Comma);
      ShapeLit b = shape();
      expect(Tok::RParen);
      return {Shape::pair(a.shape, b.shape), since(start)};
    }
    if (!at(Tok::Ident)) error({"'Bool'", "'pair'", "identifier"});
    return {Shape::domain(std::string(advance().text)), since(start)};
  }

  std::vector<Expr> path() {
    expect(Tok::LBracket);
    std::vector<Expr> steps;
    std::set<std::string> scope;
    if (!at(Tok::RBracket)) {
      steps.push_back(expression(scope));
      while (at(Tok::Comma)) {
        advance();
        steps.push_back(expression(scope));
      }
    }
    expect(Tok::RBracket, {"','", "']'"});
    return steps;
  }

  ScriptDecl script_decl() {
    advance();
    ScriptDecl d;
    d.name = ident();
    expect(Tok::Equals);
    expect(Tok::LBracket);
    auto step = [&] {
      expect(Tok::LParen);
      StepLit s;
      s.potential = ident();
      expect(Tok::Comma);
      s.index = atom();
      expect(Tok::RParen);
      return s;
    };
    if (!at(Tok::RBracket)) {
      d.steps.push_back(step());
      while (at(Tok::Comma)) {
        advance();
        d.steps.push_back(step());
      }
    }
    expect(Tok::RBracket, {"','", "']'"});
    return d;
  }

  EvolventDecl evolvent_decl() {
    advance();
    EvolventDecl d;
    d.name = ident();
    expect(Tok::Equals);
    if (at_word("identity")) {
      advance();
      d.kind = Evolvent::Kind::Identity;
    } else if (at_word("script")) {
      advance();
      d.kind = Evolvent::Kind::Script;
      d.script = ident();
    } else if (at_word("compose")) {
      advance();
      d.kind = Evolvent::Kind::Composed;
      expect(Tok::LBracket);
      d.components.push_back(ident());
      while (at(Tok::Comma)) {
        advance();
        d.components.push_back(ident());
      }
      expect(Tok::RBracket, {"','", "']'"});
    } else {
      error({"'identity'", "'script'", "'compose'"});
    }
    return d;
  }

  TriggerCmd trigger_cmd() {
    advance();
    TriggerCmd c;
    c.potential = ident();
    c.index = atom();
    return c;
  }

  CheckCmd check_cmd() {
    advance();
    return CheckCmd{ident()};
  }

  QueryCmd query_cmd() {
    advance();
    return QueryCmd{rel_expr()};
  }

  // ---- predicates ----------------------------------------------------------
  // `scope` == nullptr keeps bare names unresolved (select predicates).

  Predicate predicate(const std::set<std::string>* scope) {
    Predicate lhs = conjunction(scope);
    while (at_word("or")) {
      advance();
      lhs = pred::any(lhs, conjunction(scope));
    }
    return lhs;
  }

  Predicate conjunction(const std::set<std::string>* scope) {
    Predicate lhs = unary(scope);
    while (at_word("and")) {
      advance();
      lhs = pred::all(lhs, unary(scope));
    }
    return lhs;
  }

  Predicate unary(const std::set<std::string>* scope) {
    if (at_word("not")) {
      advance();
      return pred::negate(unary(scope));
    }
    return primary(scope);
  }

  Predicate primary(const std::set<std::string>* scope) {
    if (at_word("true")) {
      advance();
      return pred::truth();
    }
    if (at_word("false")) {
      advance();
      return pred::falsity();
    }
    if (at_word("member")) {
      std::size_t start = pos_;
      advance();
      Name rel = ident();
      expect(Tok::LParen);
      std::vector<Term> pattern{term(scope)};
      while (at(Tok::Comma)) {
        advance();
        pattern.push_back(term(scope));
      }
      expect(Tok::RParen, {"','", "')'"});
      return pred::member(rel.text, std::move(pattern), since(start));
    }
    if (at(Tok::LParen)) {
      advance();
      Predicate inner = predicate(scope);
      expect(Tok::RParen);
      return inner;
    }
    if (!at(Tok::Ident) && !at(Tok::Integer) && !at(Tok::Wildcard))
      error({"'true'", "'false'", "'member'", "'not'", "'('", "term"});
    Term lhs = term(scope);
    expect(Tok::Equals);
    Term rhs = term(scope);
    return pred::eq(std::move(lhs), std::move(rhs));
  }

  Term term(const std::set<std::string>* scope) {
    if (at(Tok::Wildcard)) {
      advance();
      return Term::wildcard();
    }
    if (at(Tok::Integer)) return Term::constant(atom().value);
    if (at_call("const")) {
      advance();
      advance();
      Atom a = atom().value;
      expect(Tok::RParen);
      return Term::constant(std::move(a));
    }
    if (at_call("var")) {
      advance();
      advance();
      Name v = ident();
      expect(Tok::RParen);
      return Term::var(v.text);
    }
    if (!at(Tok::Ident)) error({"identifier", "integer", "'_'"});
    std::string text(advance().text);
    if (scope == nullptr) return Term::name(std::move(text));
    if (scope->contains(text)) return Term::var(std::move(text));
    return Term::constant(Atom::symbol(text));
  }

  // ---- combinator expressions ----------------------------------------------

  Expr expression(const std::set<std::string>& scope) {
    if (at(Tok::Integer)) return expr::constant(atom().value);
    if (!at(Tok::Ident)) error({"expression"});
    if (at_word("in")) {
      advance();
      return expr::input();
    }
    if (at(Tok::LParen, 1)) {
      std::string_view kw = peek().text;
      if (syntax::expr_words.contains(kw)) return combinator(scope);
    }
    std::string text(advance().text);
    if (scope.contains(text)) return expr::var(std::move(text));
    return expr::constant(Atom::symbol(text));
  }

  Expr combinator(const std::set<std::string>& scope) {
    std::string kw(advance().text);
    advance();  // (
    Expr out;
    if (kw == "const") {
      out = expr::constant(atom().value);
    } else if (kw == "var") {
      out = expr::var(ident().text);
    } else if (kw == "pair") {
      Expr a = expression(scope);
      expect(Tok::Comma);
      out = expr::pair(std::move(a), expression(scope));
    } else if (kw == "fst") {
      out = expr::fst(expression(scope));
    } else if (kw == "snd") {
      out = expr::snd(expression(scope));
    } else if (kw == "subst") {
      Name v = ident();
      expect(Tok::Comma);
      Expr value = expression(scope);
      expect(Tok::Comma);
      std::set<std::string> inner = scope;
      inner.insert(v.text);
      out = expr::subst(v.text, std::move(value), expression(inner));
    } else if (kw == "apply") {
      Expr f = expression(scope);
      expect(Tok::Comma);
      out = expr::apply(std::move(f), expression(scope));
    } else if (kw == "filter") {
      Name f = ident();
      out = expr::filter(f.text, f.span);
    } else if (kw == "shift") {
      Name po = ident();
      expect(Tok::Comma);
      out = expr::shift(po.text, expression(scope), po.span);
    } else if (kw == "id") {
      out = expr::id(expression(scope));
    } else {
      out = expr::negate(expression(scope));
    }
    expect(Tok::RParen);
    return out;
  }

  // ---- relational expressions ----------------------------------------------

  RelExpr rel_expr() {
    if (!at(Tok::Ident)) error({"identifier"});
    if (at_call("select")) {
      advance();
      advance();
      RelExpr src = rel_expr();
      expect(Tok::Comma);
      Predicate where = predicate(nullptr);
      expect(Tok::RParen);
      return rel::select(std::move(src), std::move(where));
    }
    if (at_call("project")) {
      advance();
      advance();
      RelExpr src = rel_expr();
      expect(Tok::Comma);
      expect(Tok::LBracket);
      std::vector<std::string> attrs{ident().text};
      while (at(Tok::Comma)) {
        advance();
        attrs.push_back(ident().text);
      }
      expect(Tok::RBracket, {"','", "']'"});
      expect(Tok::RParen);
      return rel::project(std::move(src), std::move(attrs));
    }
    for (std::string_view kw : {"join", "union", "difference"}) {
      if (!at_call(kw)) continue;
      advance();
      advance();
      RelExpr a = rel_expr();
      expect(Tok::Comma);
      RelExpr b = rel_expr();
      expect(Tok::RParen);
      if (kw == "join") return rel::join(std::move(a), std::move(b));
      if (kw == "union") return rel::set_union(std::move(a), std::move(b));
      return rel::difference(std::move(a), std::move(b));
    }
    if (at_call("oracle")) {
      advance();
      advance();
      RelExpr src = rel_expr();
      expect(Tok::Comma);
      std::string index_attr = ident().text;
      expect(Tok::Comma);
      Atom value = atom().value;
      expect(Tok::Comma);
      std::string target = ident().text;
      expect(Tok::RParen);
      return rel::oracle(std::move(src), std::move(index_attr), std::move(value), std::move(target));
    }
    Name n = ident();
    return rel::ref(n.text, n.span);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string path_;
};

}  // namespace detail

[[nodiscard]] inline ParseResult parse(std::string_view text, std::string path = {}) {
  return detail::Parser(text, std::move(path)).run();
}

/// Parses a standalone relational expression such as
/// `select(Relationship1, Course = Logic)`.
[[nodiscard]] inline RelExpr parse_rel_expr(std::string_view text) {
  try {
    return detail::Parser(text, "<query>").standalone_rel_expr();
  } catch (const detail::SyntaxFailure& f) {
    fail(ErrorKind::SyntaxError, f.diagnostic.format());
  }
}

}  // namespace intensio::dodl
