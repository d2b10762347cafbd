#pragma once

// intensio/diagram.hpp - combinator trees, runtime values and shapes for
// filter diagrams. Evaluation lives in eval.hpp.

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "intensio/core.hpp"

namespace intensio {

class Expr;

namespace expr_node {
struct Const {
  Atom value;
  friend bool operator==(const Const&, const Const&) = default;
};
struct Var {
  std::string name;
  friend bool operator==(const Var&, const Var&) = default;
};
/// The value flowing into the current step of a diagram path.
struct Input {
  friend bool operator==(const Input&, const Input&) = default;
};
struct FilterRef {
  std::string name;
  Span span;
  friend bool operator==(const FilterRef&, const FilterRef&) = default;
};
struct Pair;
struct Fst;
struct Snd;
struct Subst;
struct Apply;
struct IndexShift;
struct IdArrow;
struct Not;
}  // namespace expr_node

class Expr {
 public:
  using Node = std::variant<expr_node::Const, expr_node::Var, expr_node::Input, expr_node::FilterRef, expr_node::Pair,
                            expr_node::Fst, expr_node::Snd, expr_node::Subst, expr_node::Apply, expr_node::IndexShift,
                            expr_node::IdArrow, expr_node::Not>;

  Expr();  // Input
  explicit Expr(Node n);

  [[nodiscard]] const Node& node() const noexcept;
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> node_;
};

namespace expr_node {
struct Pair {
  Expr first, second;
  friend bool operator==(const Pair&, const Pair&) = default;
};
struct Fst {
  Expr operand;
  friend bool operator==(const Fst&, const Fst&) = default;
};
struct Snd {
  Expr operand;
  friend bool operator==(const Snd&, const Snd&) = default;
};
/// Evaluates `value`, binds it to `var` in a child environment one stage
/// later, then evaluates `target` there.
struct Subst {
  std::string var;
  Expr value;
  Expr target;
  friend bool operator==(const Subst&, const Subst&) = default;
};
struct Apply {
  Expr fn, arg;
  friend bool operator==(const Apply&, const Apply&) = default;
};
/// Curries potential object `po` at the index `index` evaluates to.
struct IndexShift {
  std::string po;
  Expr index;
  Span span;
  friend bool operator==(const IndexShift&, const IndexShift&) = default;
};
struct IdArrow {
  Expr operand;
  friend bool operator==(const IdArrow&, const IdArrow&) = default;
};
struct Not {
  Expr operand;
  friend bool operator==(const Not&, const Not&) = default;
};
}  // namespace expr_node

inline Expr::Expr() : node_(std::make_shared<const Node>(expr_node::Input{})) {}
inline Expr::Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
inline bool operator==(const Expr& a, const Expr& b) { return a.node_ == b.node_ || *a.node_ == *b.node_; }
inline const Expr::Node& Expr::node() const noexcept { return *node_; }

namespace expr {
[[nodiscard]] inline Expr constant(Atom a) { return Expr(expr_node::Const{std::move(a)}); }
[[nodiscard]] inline Expr var(std::string v) { return Expr(expr_node::Var{std::move(v)}); }
[[nodiscard]] inline Expr input() { return Expr(expr_node::Input{}); }
[[nodiscard]] inline Expr filter(std::string name, Span span = {}) {
  return Expr(expr_node::FilterRef{std::move(name), span});
}
[[nodiscard]] inline Expr pair(Expr a, Expr b) { return Expr(expr_node::Pair{std::move(a), std::move(b)}); }
[[nodiscard]] inline Expr fst(Expr e) { return Expr(expr_node::Fst{std::move(e)}); }
[[nodiscard]] inline Expr snd(Expr e) { return Expr(expr_node::Snd{std::move(e)}); }
[[nodiscard]] inline Expr subst(std::string var, Expr value, Expr target) {
  return Expr(expr_node::Subst{std::move(var), std::move(value), std::move(target)});
}
[[nodiscard]] inline Expr apply(Expr fn, Expr arg) { return Expr(expr_node::Apply{std::move(fn), std::move(arg)}); }
[[nodiscard]] inline Expr shift(std::string po, Expr index, Span span = {}) {
  return Expr(expr_node::IndexShift{std::move(po), std::move(index), span});
}
[[nodiscard]] inline Expr id(Expr e) { return Expr(expr_node::IdArrow{std::move(e)}); }
[[nodiscard]] inline Expr negate(Expr e) { return Expr(expr_node::Not{std::move(e)}); }
}  // namespace expr

/// A function object: either a named binary filter, or a potential object's
/// filter curried at one index.
struct FunctionValue {
  enum class Kind { Filter, Shifted };
  Kind kind = Kind::Filter;
  std::string name;
  std::optional<Atom> index;

  friend bool operator==(const FunctionValue&, const FunctionValue&) = default;
  friend std::strong_ordering operator<=>(const FunctionValue& a, const FunctionValue& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.name.compare(b.name); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.index <=> b.index;
  }
};

class Value {
 public:
  struct PairData;
  using Data = std::variant<bool, Atom, std::shared_ptr<const PairData>, FunctionValue>;

  Value(bool b) : data_(b) {}  // NOLINT implicit
  Value(Atom a) : data_(std::move(a)) {}  // NOLINT implicit
  Value(FunctionValue f) : data_(std::move(f)) {}  // NOLINT implicit
  static Value pair(Value a, Value b);

  [[nodiscard]] bool is_bool() const noexcept { return data_.index() == 0; }
  [[nodiscard]] bool is_atom() const noexcept { return data_.index() == 1; }
  [[nodiscard]] bool is_pair() const noexcept { return data_.index() == 2; }
  [[nodiscard]] bool is_function() const noexcept { return data_.index() == 3; }

  [[nodiscard]] bool as_bool() const;
  [[nodiscard]] const Atom& as_atom() const;
  [[nodiscard]] const Value& first() const;
  [[nodiscard]] const Value& second() const;
  [[nodiscard]] const FunctionValue& as_function() const;

  [[nodiscard]] std::string describe() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  explicit Value(Data d) : data_(std::move(d)) {}
  Data data_;
};

struct Value::PairData {
  Value first;
  Value second;
};

inline Value Value::pair(Value a, Value b) {
  return Value(Data(std::make_shared<const PairData>(PairData{std::move(a), std::move(b)})));
}

inline bool Value::as_bool() const {
  if (!is_bool()) fail(ErrorKind::TypeError, "expected a boolean, got " + describe());
  return std::get<bool>(data_);
}
inline const Atom& Value::as_atom() const {
  if (!is_atom()) fail(ErrorKind::TypeError, "expected an atom, got " + describe());
  return std::get<Atom>(data_);
}
inline const Value& Value::first() const {
  if (!is_pair()) fail(ErrorKind::TypeError, "projection of a non-pair " + describe());
  return std::get<2>(data_)->first;
}
inline const Value& Value::second() const {
  if (!is_pair()) fail(ErrorKind::TypeError, "projection of a non-pair " + describe());
  return std::get<2>(data_)->second;
}
inline const FunctionValue& Value::as_function() const {
  if (!is_function()) fail(ErrorKind::TypeError, "application of a non-function " + describe());
  return std::get<FunctionValue>(data_);
}

inline std::string Value::describe() const {
  switch (data_.index()) {
    case 0: return std::get<bool>(data_) ? "true" : "false";
    case 1: return std::get<Atom>(data_).text();
    case 2: return "(" + first().describe() + ", " + second().describe() + ")";
    default: {
      const auto& f = std::get<FunctionValue>(data_);
      if (f.kind == FunctionValue::Kind::Filter) return "filter(" + f.name + ")";
      return "shift(" + f.name + ", " + f.index->text() + ")";
    }
  }
}

inline bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

// Kinds order as bool < atom < pair < function; pairs compare lexicographically.
inline std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) return a.data_.index() <=> b.data_.index();
  switch (a.data_.index()) {
    case 0: return std::get<bool>(a.data_) <=> std::get<bool>(b.data_);
    case 1: return std::get<Atom>(a.data_) <=> std::get<Atom>(b.data_);
    case 2: {
      if (auto c = a.first() <=> b.first(); c != 0) return c;
      return a.second() <=> b.second();
    }
    default: return std::get<FunctionValue>(a.data_) <=> std::get<FunctionValue>(b.data_);
  }
}

/// Entry/exit description: booleans, elements of a named domain, or pairs.
class Shape {
 public:
  enum class Kind { Bool, Domain, Pair };

  [[nodiscard]] static Shape boolean() { return Shape(Kind::Bool, {}, {}); }
  [[nodiscard]] static Shape domain(std::string name) { return Shape(Kind::Domain, std::move(name), {}); }
  [[nodiscard]] static Shape pair(Shape a, Shape b) {
    return Shape(Kind::Pair, {}, {std::move(a), std::move(b)});
  }

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& domain_name() const noexcept { return domain_; }
  [[nodiscard]] const Shape& first() const { return parts_.at(0); }
  [[nodiscard]] const Shape& second() const { return parts_.at(1); }

  [[nodiscard]] std::string describe() const {
    switch (kind_) {
      case Kind::Bool: return "Bool";
      case Kind::Domain: return domain_;
      case Kind::Pair: return "pair(" + first().describe() + ", " + second().describe() + ")";
    }
    return {};
  }

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  Shape(Kind k, std::string d, std::vector<Shape> parts) : kind_(k), domain_(std::move(d)), parts_(std::move(parts)) {}

  Kind kind_;
  std::string domain_;
  std::vector<Shape> parts_;
};

/// Two evaluation paths from a shared entry shape to a shared exit shape.
/// Each step is an expression over `Input`, the previous step's value.
struct DiagramSpec {
  std::string name;
  Shape entry = Shape::boolean();
  std::vector<Expr> path_a;
  std::vector<Expr> path_b;
  Shape exit = Shape::boolean();

  friend bool operator==(const DiagramSpec&, const DiagramSpec&) = default;
};

}  // namespace intensio
