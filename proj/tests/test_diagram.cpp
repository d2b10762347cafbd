#include <gtest/gtest.h>

#include "support.hpp"

using namespace intensio;
using support::sym;

namespace {

class Teaching : public ::testing::Test {
 protected:
  void SetUp() override {
    auto r = support::load_corpus();
    ASSERT_TRUE(r.ok());
    ws = r.workspace;
  }
  Workspace ws;
};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NotFound;
}

Predicate r1_member() { return pred::member("Relationship1", {Term::var("idx"), Term::var("x"), Term::wildcard()}); }

// Brute-force reading of the corpus relation.
bool teaches(const Workspace& ws, const Atom& course, const Atom& name) {
  for (const Tuple& t : ws.relation("Relationship1").tuples)
    if (t[0] == course && t[1] == name) return true;
  return false;
}

}  // namespace

TEST(EvalExpr, FstOfPair) {
  Workspace ws;
  Value v = eval_expr(expr::fst(expr::pair(expr::constant(sym("Logic")), expr::constant(sym("Jones")))), {}, ws);
  EXPECT_EQ(v, Value(sym("Logic")));
}

TEST_F(Teaching, ApplyFilterToPair) {
  auto ap = [&](const char* c, const char* n) {
    return eval_expr(expr::apply(expr::filter("TchFilter"), expr::pair(expr::constant(sym(c)), expr::constant(sym(n)))),
                     {}, ws);
  };
  EXPECT_EQ(ap("Logic", "Johnes"), Value(true));
  EXPECT_EQ(ap("Logic", "Doe"), Value(false));
}

TEST_F(Teaching, ShiftThenApply) {
  Expr e = expr::apply(expr::shift("Tch", expr::constant(sym("Informatics"))), expr::constant(sym("Doe")));
  EXPECT_EQ(eval_expr(e, {}, ws), Value(true));
}

TEST_F(Teaching, SubstBindsInChildOnly) {
  Environment env = Environment{}.bind("y", sym("Logic"));
  Expr e = expr::subst("x", expr::constant(sym("Smith")), expr::pair(expr::var("y"), expr::var("x")));
  Value v = eval_expr(e, env, ws);
  EXPECT_EQ(v, Value::pair(sym("Logic"), sym("Smith")));
  EXPECT_EQ(env.stage(), 1u);
  EXPECT_EQ(env.lookup("x"), nullptr);
}

TEST_F(Teaching, EvaluationErrors) {
  EXPECT_EQ(kind_of([&] { (void)eval_expr(expr::var("nobody"), {}, ws); }), ErrorKind::UnboundVariable);
  EXPECT_EQ(kind_of([&] { (void)eval_expr(expr::fst(expr::constant(sym("Logic"))), {}, ws); }), ErrorKind::TypeError);
  EXPECT_EQ(kind_of([&] { (void)eval_expr(expr::apply(expr::constant(sym("a")), expr::constant(sym("b"))), {}, ws); }),
            ErrorKind::TypeError);
  EXPECT_EQ(kind_of([&] { (void)eval_expr(expr::filter("Missing"), {}, ws); }), ErrorKind::UnknownFilter);
  EXPECT_EQ(kind_of([&] { (void)eval_expr(expr::shift("Nope", expr::constant(sym("Logic"))), {}, ws); }),
            ErrorKind::UnknownPotentialObject);
}

TEST_F(Teaching, EvalPredicateMember) {
  Environment logic_smith = Environment{}.bind("idx", sym("Logic")).bind("x", sym("Smith"));
  Environment inf_smith = Environment{}.bind("idx", sym("Informatics")).bind("x", sym("Smith"));
  EXPECT_TRUE(eval_predicate(r1_member(), logic_smith, ws));
  EXPECT_FALSE(eval_predicate(r1_member(), inf_smith, ws));
  EXPECT_TRUE(eval_predicate(pred::all(pred::truth(), pred::negate(pred::falsity())), {}, ws));
}

TEST_F(Teaching, EvalPredicateErrors) {
  Environment env = Environment{}.bind("idx", sym("Logic"));
  EXPECT_EQ(kind_of([&] { (void)eval_predicate(r1_member(), env, ws); }), ErrorKind::UnboundVariable);
  Predicate short_pattern = pred::member("Relationship1", {Term::var("idx"), Term::wildcard()});
  EXPECT_EQ(kind_of([&] { (void)eval_predicate(short_pattern, env, ws); }), ErrorKind::ArityMismatch);
  EXPECT_EQ(kind_of([&] { (void)eval_predicate(pred::member("Ghost", {Term::wildcard()}), env, ws); }),
            ErrorKind::UnknownRelation);
}

TEST_F(Teaching, EvaluationIsStrict) {
  // The right operand is still evaluated after a decisive left operand.
  Predicate p = pred::any(pred::truth(), pred::eq(Term::var("unbound"), Term::wildcard()));
  EXPECT_EQ(kind_of([&] { (void)eval_predicate(p, {}, ws); }), ErrorKind::UnboundVariable);
}

TEST_F(Teaching, RunFilterExamples) {
  const Filter& f = ws.filter("TchFilter");
  EXPECT_TRUE(run_filter(f, sym("Logic"), sym("Johnes"), ws));
  EXPECT_FALSE(run_filter(f, sym("Logic"), sym("Jackson"), ws));
  Filter always{"Always", "i", "c", pred::truth()};
  EXPECT_TRUE(run_filter(always, sym("anything"), Atom::number(4), ws));
}

TEST_F(Teaching, RunFilterAgreesWithBruteForce) {
  const Filter& f = ws.filter("TchFilter");
  for (const Atom& c : ws.domain("Course").elements)
    for (const Atom& n : ws.domain("Teach").elements) EXPECT_EQ(run_filter(f, c, n, ws), teaches(ws, c, n));
}

TEST_F(Teaching, RunFilterEqualsTwoBinds) {
  const Filter& f = ws.filter("TchFilter");
  for (const Atom& c : ws.domain("Course").elements) {
    for (const Atom& n : ws.domain("Teach").elements) {
      Environment env = intensio::bind(intensio::bind(Environment{}, f.index_var, c), f.candidate_var, n);
      EXPECT_EQ(env.stage(), 2u);
      EXPECT_EQ(run_filter(f, c, n, ws), eval_predicate(f.body, env, ws));
    }
  }
}

TEST_F(Teaching, ShippedDiagramOverLogicRow) {
  const DiagramSpec& d = ws.diagram("Fig4");
  std::vector<Value> inputs;
  for (const Atom& n : ws.domain("Teach").elements) inputs.push_back(Value::pair(sym("Logic"), n));
  CommutativityReport rep = check_commutes(d, inputs, ws);
  EXPECT_EQ(rep.rows.size(), 4u);
  EXPECT_TRUE(rep.commutes());
  for (const auto& row : rep.rows) {
    ASSERT_TRUE(row.path_a.has_value());
    EXPECT_EQ(*row.path_a, Value(teaches(ws, sym("Logic"), row.input.second().as_atom())));
  }
}

TEST_F(Teaching, ShippedDiagramExhaustive) {
  const DiagramSpec& d = ws.diagram("Fig4");
  std::vector<Value> inputs = enumerate_shape(d.entry, ws);
  EXPECT_EQ(inputs.size(), 8u);
  CommutativityReport rep = check_commutes(d, inputs, ws);
  EXPECT_EQ(rep.agreeing(), 8u);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) EXPECT_LT(rep.rows[i - 1].input, rep.rows[i].input);
}

TEST_F(Teaching, NegatedPathFailsEverywhere) {
  DiagramSpec broken = ws.diagram("Fig4");
  broken.path_b.push_back(expr::negate(expr::input()));
  CommutativityReport rep = check_commutes(broken, enumerate_shape(broken.entry, ws), ws);
  EXPECT_EQ(rep.rows.size(), 8u);
  EXPECT_EQ(rep.agreeing(), 0u);
  EXPECT_FALSE(rep.commutes());
}

TEST_F(Teaching, EmptyInputsCommuteVacuously) {
  CommutativityReport rep = check_commutes(ws.diagram("Fig4"), {}, ws);
  EXPECT_TRUE(rep.rows.empty());
  EXPECT_TRUE(rep.commutes());
}

TEST_F(Teaching, ErrorsAreRecordedPerRow) {
  DiagramSpec bad{"Bad", Shape::domain("Course"), {expr::fst(expr::input())}, {expr::input()}, Shape::domain("Course")};
  CommutativityReport rep = check_commutes(bad, enumerate_shape(bad.entry, ws), ws);
  ASSERT_EQ(rep.rows.size(), 2u);
  for (const auto& row : rep.rows) {
    EXPECT_FALSE(row.agree);
    EXPECT_NE(row.error.find("TypeError"), std::string::npos);
  }
}

TEST_F(Teaching, ExitShapeViolationIsRecorded) {
  DiagramSpec d{"Shape", Shape::domain("Course"), {expr::input()}, {expr::input()}, Shape::boolean()};
  CommutativityReport rep = check_commutes(d, enumerate_shape(d.entry, ws), ws);
  for (const auto& row : rep.rows) EXPECT_NE(row.error.find("ShapeMismatch"), std::string::npos);
  EXPECT_EQ(rep.agreeing(), 0u);
}

TEST(Properties, ProjectionLaws) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(0, 3), depth(0, 3);
  std::function<Expr(int)> gen = [&](int d) -> Expr {
    if (d == 0 || pick(rng) == 0) {
      int k = pick(rng);
      return k < 2 ? expr::constant(Atom::number(pick(rng))) : expr::constant(sym(k == 2 ? "a" : "b"));
    }
    return expr::pair(gen(d - 1), gen(d - 1));
  };
  Workspace ws;
  for (int i = 0; i < 500; ++i) {
    Expr a = gen(depth(rng)), b = gen(depth(rng));
    Value va = eval_expr(a, {}, ws), vb = eval_expr(b, {}, ws);
    EXPECT_EQ(eval_expr(expr::fst(expr::pair(a, b)), {}, ws), va);
    EXPECT_EQ(eval_expr(expr::snd(expr::pair(a, b)), {}, ws), vb);
  }
}

TEST(Properties, RunFilterEqualsTwoBindsOnRandomCorpora) {
  std::mt19937 rng(29);
  for (int round = 0; round < 100; ++round) {
    auto t = support::random_triple(rng);
    Workspace ws = support::workspace_for(t);
    const Filter& f = ws.filter("F");
    for (const Atom& i : t.indices)
      for (const Atom& c : t.candidates)
        EXPECT_EQ(run_filter(f, i, c, ws),
                  eval_predicate(f.body, Environment{}.bind(f.index_var, i).bind(f.candidate_var, c), ws));
  }
}

TEST(Value, DescribeAndOrder) {
  Value p = Value::pair(sym("Logic"), Atom::number(3));
  EXPECT_EQ(p.describe(), "(Logic, 3)");
  EXPECT_LT(Value(true), Value(sym("a")));
  EXPECT_LT(Value(sym("a")), p);
  EXPECT_EQ(Value(FunctionValue{FunctionValue::Kind::Shifted, "Tch", sym("Logic")}).describe(), "shift(Tch, Logic)");
}
