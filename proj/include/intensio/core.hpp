#pragma once

// intensio/core.hpp - atoms, sorts, domains, environments and the
// potential/actual object pair that indexing connects.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intensio/error.hpp"

namespace intensio {

enum class SortKind { Symbolic, Numeric };

[[nodiscard]] constexpr std::string_view to_string(SortKind k) noexcept {
  return k == SortKind::Numeric ? "numeric" : "symbolic";
}

namespace detail {

constexpr std::string_view reserved_chars = "{}(),;";

[[nodiscard]] inline bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

[[nodiscard]] inline bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

[[nodiscard]] inline std::optional<std::int64_t> parse_integer(std::string_view text) noexcept {
  if (text.empty()) return std::nullopt;
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

}  // namespace detail

/// An element value: a flat symbol or a base-10 integer.
///
/// Numeric atoms are stored canonically (`020` becomes `20`). Ordering puts
/// numeric atoms first, compared by value, then symbolic atoms compared
/// byte-wise.
class Atom {
 public:
  [[nodiscard]] static Atom symbol(std::string_view text) {
    check_text(text);
    if (detail::is_digit(text.front()) || ((text.front() == '-' || text.front() == '+') && text.size() > 1 &&
                                           detail::is_digit(text[1])))
      fail(ErrorKind::ReservedCharacter, "symbolic atom may not begin with a digit: '" + std::string(text) + "'");
    return Atom(SortKind::Symbolic, std::string(text), 0);
  }

  [[nodiscard]] static Atom number(std::int64_t value) {
    return Atom(SortKind::Numeric, std::to_string(value), value);
  }

  /// Classifies by shape: integer text becomes numeric, anything else symbolic.
  [[nodiscard]] static Atom parse(std::string_view text) {
    check_text(text);
    if (auto n = detail::parse_integer(text.front() == '+' ? text.substr(1) : text)) return number(*n);
    return symbol(text);
  }

  [[nodiscard]] SortKind kind() const noexcept { return kind_; }
  [[nodiscard]] bool numeric() const noexcept { return kind_ == SortKind::Numeric; }
  [[nodiscard]] const std::string& text() const noexcept { return text_; }
  [[nodiscard]] std::int64_t value() const noexcept { return value_; }

  friend bool operator==(const Atom& a, const Atom& b) noexcept {
    return a.kind_ == b.kind_ && a.text_ == b.text_;
  }

  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) noexcept {
    if (a.kind_ != b.kind_) return a.numeric() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.numeric()) return a.value_ <=> b.value_;
    int c = a.text_.compare(b.text_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  Atom(SortKind kind, std::string text, std::int64_t value) : kind_(kind), text_(std::move(text)), value_(value) {}

  static void check_text(std::string_view text) {
    if (text.empty()) fail(ErrorKind::ReservedCharacter, "atom text is empty");
    for (char c : text) {
      if (detail::is_space(c) || detail::reserved_chars.find(c) != std::string_view::npos)
        fail(ErrorKind::ReservedCharacter, "atom '" + std::string(text) + "' contains reserved character");
    }
  }

  SortKind kind_;
  std::string text_;
  std::int64_t value_;
};

using AtomSet = std::set<Atom>;

struct Sort {
  std::string name;
  SortKind kind = SortKind::Symbolic;

  friend bool operator==(const Sort&, const Sort&) = default;
};

struct Domain {
  std::string name;
  std::string sort;
  AtomSet elements;

  [[nodiscard]] bool contains(const Atom& a) const { return elements.contains(a); }
  friend bool operator==(const Domain&, const Domain&) = default;
};

struct DomainBuild {
  Domain domain;
  std::size_t duplicates_removed = 0;
};

/// Builds a domain, removing duplicate atoms and counting how many were dropped.
[[nodiscard]] inline DomainBuild make_domain(std::string name, const Sort& sort, const std::vector<Atom>& atoms) {
  DomainBuild out;
  out.domain.name = std::move(name);
  out.domain.sort = sort.name;
  for (const Atom& a : atoms) {
    if (a.kind() != sort.kind)
      fail(ErrorKind::SortMismatch, "atom '" + a.text() + "' is " + std::string(to_string(a.kind())) + " but sort " +
                                        sort.name + " is " + std::string(to_string(sort.kind)));
    if (!out.domain.elements.insert(a).second) ++out.duplicates_removed;
  }
  return out;
}

/// Text-level overload: classifies each string by the sort's kind.
[[nodiscard]] inline DomainBuild make_domain(std::string name, const Sort& sort, const std::vector<std::string>& texts) {
  std::vector<Atom> atoms;
  atoms.reserve(texts.size());
  for (const auto& t : texts) atoms.push_back(Atom::parse(t));
  return make_domain(std::move(name), sort, atoms);
}

struct Event {
  Atom index;
  std::string index_domain;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Checked event construction: the index must belong to the domain.
[[nodiscard]] inline Event make_event(const Domain& domain, const Atom& index) {
  if (!domain.contains(index))
    fail(ErrorKind::IndexNotInDomain, "'" + index.text() + "' is not an element of domain " + domain.name);
  return Event{index, domain.name};
}

/// Variable bindings plus the stage counter. Values are immutable: bind()
/// returns a fresh environment one stage later.
class Environment {
 public:
  Environment() = default;

  [[nodiscard]] Environment bind(const std::string& var, const Atom& value) const {
    Environment next = *this;
    next.bindings_.insert_or_assign(var, value);
    ++next.stage_;
    return next;
  }

  [[nodiscard]] const Atom* lookup(std::string_view var) const {
    auto it = bindings_.find(std::string(var));
    return it == bindings_.end() ? nullptr : &it->second;
  }

  [[nodiscard]] std::uint64_t stage() const noexcept { return stage_; }
  [[nodiscard]] const std::map<std::string, Atom>& bindings() const noexcept { return bindings_; }

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  std::map<std::string, Atom> bindings_;
  std::uint64_t stage_ = 0;
};

[[nodiscard]] inline Environment bind(const Environment& env, const std::string& var, const Atom& value) {
  return env.bind(var, value);
}

/// Intensional object: candidates drawn from `carrier`, indexed by
/// `index_domain`, admitted by `filter`.
struct PotentialObject {
  std::string name;
  std::string carrier;
  std::string index_domain;
  std::string filter;

  friend bool operator==(const PotentialObject&, const PotentialObject&) = default;
};

[[nodiscard]] inline std::string actual_object_name(std::string_view po, const Atom& index) {
  return std::string(po) + "_" + index.text();
}

struct ActualObject {
  std::string name;
  AtomSet elements;
  std::string potential;
  Event event;

  friend bool operator==(const ActualObject&, const ActualObject&) = default;
};

/// `{ a, b, c }`, or `{ }` when empty.
[[nodiscard]] inline std::string format_atoms(const AtomSet& atoms) {
  if (atoms.empty()) return "{ }";
  std::string out = "{ ";
  bool first = true;
  for (const Atom& a : atoms) {
    if (!first) out += ", ";
    out += a.text();
    first = false;
  }
  return out + " }";
}

}  // namespace intensio
