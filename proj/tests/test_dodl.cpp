#include <gtest/gtest.h>

#include "support.hpp"

using namespace intensio;
using namespace intensio::dodl;

namespace {

std::string slice(std::string_view text, const Span& s) { return std::string(text.substr(s.offset, s.length)); }

std::vector<std::string> split_statements(const std::string& text) {
  // Top-level statements of the corpus end with ";\n" at bracket depth 0.
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    cur += c;
    if (c == '{' || c == '(' || c == '[') ++depth;
    if (c == '}' || c == ')' || c == ']') --depth;
    if (c == ';' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    }
  }
  return out;
}

}  // namespace

TEST(Lexer, TokensAndSpans) {
  std::string_view src = "domain Teach : Name = { Johnes, -3 }; # tail\nx -> _";
  auto toks = tokenize(src);
  std::vector<Tok> kinds;
  for (const auto& t : toks) kinds.push_back(t.kind);
  EXPECT_EQ(kinds, (std::vector<Tok>{Tok::Ident, Tok::Ident, Tok::Colon, Tok::Ident, Tok::Equals, Tok::LBrace, Tok::Ident,
                                     Tok::Comma, Tok::Integer, Tok::RBrace, Tok::Semicolon, Tok::Ident, Tok::Arrow,
                                     Tok::Wildcard, Tok::End}));
  for (const auto& t : toks) EXPECT_EQ(slice(src, t.span), t.text);
  EXPECT_EQ(toks[11].span.line, 2u);
  EXPECT_EQ(toks[11].span.column, 1u);
}

TEST(Parse, DomainTeach) {
  ParseResult r = parse("domain Teach : Name = { Johnes, Smith, Doe, Jackson };");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.unit.statements.size(), 1u);
  const auto& d = std::get<DomainDecl>(r.unit.statements[0].node);
  EXPECT_EQ(d.name.text, "Teach");
  EXPECT_EQ(d.sort.text, "Name");
  EXPECT_EQ(d.atoms.size(), 4u);
}

TEST(Parse, EmptyInput) {
  ParseResult r = parse("");
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.unit.statements.empty());
  EXPECT_TRUE(parse("  # only a comment\n").unit.statements.empty());
}

TEST(Parse, MissingSortName) {
  std::string src = "domain X : = {};";
  ParseResult r = parse(src);
  ASSERT_EQ(r.errors.size(), 1u);
  const Diagnostic& d = r.errors[0];
  EXPECT_EQ(d.kind, ErrorKind::SyntaxError);
  EXPECT_EQ(d.span.line, 1u);
  EXPECT_EQ(d.span.column, 12u);
  EXPECT_EQ(slice(src, d.span), "=");
  EXPECT_EQ(d.expected, std::vector<std::string>{"identifier"});
}

TEST(Parse, RecoversAndCapsErrors) {
  std::string src = "domain A : = {};\nsort S : symbolic;\ndomain B : S = { x ;\nsort T : numeric;\n";
  ParseResult r = parse(src);
  EXPECT_EQ(r.errors.size(), 2u);
  EXPECT_EQ(r.errors[0].span.line, 1u);
  EXPECT_EQ(r.errors[1].span.line, 3u);

  std::string many;
  for (int i = 0; i < 40; ++i) many += "domain X : = {};\n";
  EXPECT_EQ(parse(many).errors.size(), max_errors);
}

TEST(Parse, Deterministic) {
  std::string text = support::read(support::corpus_path());
  ParseResult a = parse(text), b = parse(text);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a.unit.statements.size(), b.unit.statements.size());
  EXPECT_EQ(dump(load(a.unit).workspace), dump(load(b.unit).workspace));
}

TEST(Parse, StatementSpansAreOrderedAndInside) {
  std::string text = support::read(support::corpus_path());
  ParseResult r = parse(text);
  ASSERT_TRUE(r.ok());
  std::size_t end = 0;
  for (const Statement& s : r.unit.statements) {
    EXPECT_GE(s.span.offset, end);
    EXPECT_LE(s.span.offset + s.span.length, text.size());
    EXPECT_EQ(text[s.span.offset + s.span.length - 1], ';');
    end = s.span.offset + s.span.length;
  }
}

TEST(Validate, CorpusIsClean) {
  ParseResult r = parse(support::read(support::corpus_path()), "teaching.dodl");
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(validate(r.unit).empty());
}

TEST(Validate, MemberArity) {
  std::string src =
      "sort S : symbolic;\n"
      "relation R (A : S, B : S, C : S) = { };\n"
      "filter F(i, c) = member R (i, c);\n";
  ParseResult r = parse(src);
  ASSERT_TRUE(r.ok());
  auto diags = validate(r.unit);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].kind, ErrorKind::ArityMismatch);
  EXPECT_EQ(slice(src, diags[0].span), "member R (i, c)");
}

TEST(Validate, ConceptCycle) {
  ParseResult r = parse("concept A : B { };\nconcept B : A { };\n");
  ASSERT_TRUE(r.ok());
  auto diags = validate(r.unit);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].kind, ErrorKind::CycleDetected);
  EXPECT_NE(diags[0].message.find("A"), std::string::npos);
  EXPECT_NE(diags[0].message.find("B"), std::string::npos);
}

TEST(Validate, EvolventCycle) {
  auto r = load_text("evolvent X = compose [Y];\nevolvent Y = compose [X];\nevolvent Z = identity;\n");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].kind, ErrorKind::CycleDetected);
  EXPECT_TRUE(r.workspace.evolvents.contains("Z"));
  EXPECT_FALSE(r.workspace.evolvents.contains("X"));
}

TEST(Validate, NameResolutionAndSorts) {
  std::string src =
      "sort S : symbolic;\n"
      "sort N : numeric;\n"
      "domain D : S = { a, 4 };\n"
      "domain E : Missing = { a };\n"
      "domain D : S = { b };\n"
      "relation R (A : S, H : N) = { (a, b) };\n"
      "filter F(i, c) = member Ghost (i, c);\n"
      "filter G(i, c) = i = stray and member R (i, _);\n";
  auto r = load_text(src, "bad.dodl");
  std::vector<ErrorKind> kinds;
  for (const auto& d : r.diagnostics) {
    kinds.push_back(d.kind);
    EXPECT_EQ(d.path, "bad.dodl");
    EXPECT_GT(d.span.line, 0u);
    EXPECT_FALSE(slice(src, d.span).empty());
  }
  auto has = [&](ErrorKind k) { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); };
  EXPECT_TRUE(has(ErrorKind::SortMismatch));
  EXPECT_TRUE(has(ErrorKind::UnknownSort));
  EXPECT_TRUE(has(ErrorKind::DuplicateName));
  EXPECT_TRUE(has(ErrorKind::UnknownRelation));
}

TEST(Validate, SpansSliceOffendingTokens) {
  std::string src =
      "sort S : symbolic;\n"
      "domain C : S = { x };\n"
      "potential P : carrier C index Nowhere filter Nope;\n"
      "trigger Ghost x;\n";
  auto r = load_text(src);
  ASSERT_FALSE(r.diagnostics.empty());
  std::set<std::string> slices;
  for (const auto& d : r.diagnostics) slices.insert(slice(src, d.span));
  EXPECT_TRUE(slices.contains("Nowhere"));
  EXPECT_TRUE(slices.contains("Nope"));
  EXPECT_TRUE(slices.contains("Ghost"));
}

TEST(Validate, DuplicatesCountedNotReported) {
  auto r = load_text("sort S : symbolic;\ndomain D : S = { a, a, b, b, b };\n");
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.duplicates_removed, 3u);
  EXPECT_EQ(r.workspace.domains.at("D").elements.size(), 2u);
}

TEST(Validate, DiagnosticFormat) {
  auto r = load_text("domain X : = {};", "f.dodl");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].format().rfind("f.dodl:1:12: error: SyntaxError: ", 0), 0u);
}

TEST(Dump, CorpusFixedPoint) {
  auto r = support::load_corpus();
  ASSERT_TRUE(r.ok());
  std::string once = dump(r.workspace);
  auto again = load_text(once);
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(dump(again.workspace), once);
  EXPECT_EQ(again.workspace, r.workspace);
}

TEST(Dump, OneDomain) {
  auto r = load_text("domain D : S = { b, a };\nsort S : symbolic;\nsort Unused : numeric;\n");
  ASSERT_TRUE(r.ok());
  Workspace ws;
  ws.sorts["S"] = r.workspace.sorts.at("S");
  ws.domains["D"] = r.workspace.domains.at("D");
  EXPECT_EQ(dump(ws), "sort S : symbolic;\n\ndomain D : S = { a, b };\n");
}

TEST(Dump, OrderIndependent) {
  std::string text = support::read(support::corpus_path());
  auto stmts = split_statements(text);
  ASSERT_GT(stmts.size(), 10u);
  std::string reversed;
  for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) reversed += *it + "\n";
  auto a = load_text(text), b = load_text(reversed);
  ASSERT_TRUE(b.ok()) << b.diagnostics.front().format();
  EXPECT_EQ(dump(a.workspace), dump(b.workspace));
}

TEST(Dump, EscapesShadowingAtoms) {
  std::string src =
      "sort S : symbolic;\n"
      "relation R (A : S, B : S) = { (x, in) };\n"
      "filter F(x, y) = member R (const(x), y) or y = const(in) or y = not;\n"
      "domain D : S = { x, in };\n"
      "diagram G entry pair(D, D) path_a [ subst(y, fst(in), pair(y, const(y))), fst(in) ] path_b [ const(in), subst(z, in, var(z)) ] exit D;\n";
  auto r = load_text(src);
  ASSERT_TRUE(r.ok()) << r.diagnostics.front().format();
  std::string once = dump(r.workspace);
  EXPECT_NE(once.find("const(x)"), std::string::npos);
  auto again = load_text(once);
  ASSERT_TRUE(again.ok()) << once;
  EXPECT_EQ(again.workspace, r.workspace);
  EXPECT_EQ(dump(again.workspace), once);
}

TEST(Dump, RandomWorkspacesRoundTrip) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 100; ++i) {
    std::string src = support::random_dodl(rng);
    auto r = load_text(src);
    ASSERT_TRUE(r.ok()) << src;
    std::string once = dump(r.workspace);
    auto again = load_text(once);
    ASSERT_TRUE(again.ok()) << once;
    EXPECT_EQ(dump(again.workspace), once);
    EXPECT_EQ(again.workspace, r.workspace);
  }
}

TEST(Query, ParseAndFormat) {
  RelExpr e = parse_rel_expr("project(select(Relationship1, Course = Logic), [Name])");
  EXPECT_EQ(format_rel_expr(e), "project(select(Relationship1, Course = Logic), [Name])");
  auto r = support::load_corpus();
  auto res = eval_query(e, r.workspace);
  EXPECT_EQ(std::get<Relation>(res).size(), 2u);
  try {
    (void)parse_rel_expr("project(Relationship1");
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::SyntaxError);
  }
}
