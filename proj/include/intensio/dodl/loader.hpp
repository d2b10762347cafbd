#pragma once

// Turns parsed DODL units into a workspace. Declarations are processed by
// kind (sorts, domains, relations, filters, potential objects, concepts,
// diagrams, scripts, evolvents), so statement order inside a file does not
// matter. Every problem becomes a located diagnostic; the offending
// declaration is skipped and loading continues.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "intensio/dodl/ast.hpp"
#include "intensio/dodl/parser.hpp"
#include "intensio/evolver.hpp"
#include "intensio/workspace.hpp"

namespace intensio::dodl {

struct Command {
  std::string path;
  Statement statement;
};

struct LoadResult {
  Workspace workspace;
  std::vector<Diagnostic> diagnostics;
  std::size_t duplicates_removed = 0;
  std::vector<Command> commands;

  [[nodiscard]] bool ok() const noexcept { return diagnostics.empty(); }
};

namespace detail {

template <class Decl>
struct Located {
  const Decl* decl;
  const std::string* path;
};

// Strongly connected components with more than one member, or a self loop.
[[nodiscard]] inline std::vector<std::vector<std::string>> cyclic_components(
    const std::map<std::string, std::vector<std::string>>& edges) {
  std::map<std::string, int> index, low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> out;
  int counter = 0;
  std::function<void(const std::string&)> connect = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const std::string& w : edges.at(v)) {
      if (!edges.contains(w)) continue;
      if (!index.contains(w)) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.contains(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
      } while (w != v);
      const auto& self = edges.at(v);
      bool self_loop = std::find(self.begin(), self.end(), v) != self.end();
      if (comp.size() > 1 || self_loop) {
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  };
  for (const auto& [v, _] : edges)
    if (!index.contains(v)) connect(v);
  std::sort(out.begin(), out.end());
  return out;
}

class Loader {
 public:
  explicit Loader(Workspace base) { result_.workspace = std::move(base); }

  LoadResult run(const std::vector<SourceUnit>& units) {
    for (const SourceUnit& u : units) {
      for (const Statement& s : u.statements) {
        std::visit(
            [&](const auto& d) {
              using D = std::decay_t<decltype(d)>;
              if constexpr (std::is_same_v<D, SortDecl>) sorts_.push_back({&d, &u.path});
              else if constexpr (std::is_same_v<D, DomainDecl>) domains_.push_back({&d, &u.path});
              else if constexpr (std::is_same_v<D, RelationDecl>) relations_.push_back({&d, &u.path});
              else if constexpr (std::is_same_v<D, FilterDecl>) filters_.push_back({&d, &u.path});
              else if constexpr (std::is_same_v<D, PotentialDecl>) potentials_.push_back({&d, &u.path});
              else if constexpr (std::is_same_v<D, ConceptDecl>) concepts_.push_back({&d, &u.path});
              else if constexpr (std::is_same_v<D, DiagramDecl>) diagrams_.push_back({&d, &u.path});
              else if constexpr (std::is_same_v<D, ScriptDecl>) scripts_.push_back({&d, &u.path});
              else if constexpr (std::is_same_v<D, EvolventDecl>) evolvents_.push_back({&d, &u.path});
              else result_.commands.push_back(Command{u.path, s});
            },
            s.node);
      }
    }
    load_sorts();
    load_domains();
    load_relations();
    load_filters();
    load_potentials();
    load_concepts();
    load_diagrams();
    load_scripts();
    load_evolvents();
    check_commands();
    std::stable_sort(result_.diagnostics.begin(), result_.diagnostics.end(), [](const auto& a, const auto& b) {
      if (a.path != b.path) return a.path < b.path;
      return a.span.offset < b.span.offset;
    });
    return std::move(result_);
  }

 private:
  Workspace& ws() { return result_.workspace; }

  std::map<std::string, std::set<std::string>> declared_;

  void report(ErrorKind kind, std::string message, Span span, const std::string& path) {
    Diagnostic d;
    d.kind = kind;
    d.message = std::move(message);
    d.span = span;
    d.path = path;
    result_.diagnostics.push_back(std::move(d));
  }

  // Names count as taken even when their declaration was rejected.
  bool fresh(const Name& name, const std::string& path, std::string_view what) {
    if (declared_[std::string(what)].insert(name.text).second) return true;
    report(ErrorKind::DuplicateName, std::string(what) + " '" + name.text + "' is already declared", name.span, path);
    return false;
  }

  template <class T>
  bool known(const std::map<std::string, T>& registry, const Name& name, const std::string& path, ErrorKind kind,
             std::string_view what) {
    if (registry.contains(name.text)) return true;
    report(kind, "no " + std::string(what) + " named '" + name.text + "'", name.span, path);
    return false;
  }

  void load_sorts() {
    for (auto [d, path] : sorts_) {
      if (!fresh(d->name, *path, "sort")) continue;
      ws().sorts.emplace(d->name.text, Sort{d->name.text, d->kind});
    }
  }

  void load_domains() {
    for (auto [d, path] : domains_) {
      if (!fresh(d->name, *path, "domain")) continue;
      if (!known(ws().sorts, d->sort, *path, ErrorKind::UnknownSort, "sort")) continue;
      const Sort& sort = ws().sorts.at(d->sort.text);
      bool good = true;
      std::vector<Atom> atoms;
      for (const AtomLit& a : d->atoms) {
        if (a.value.kind() != sort.kind) {
          report(ErrorKind::SortMismatch,
                 "'" + a.value.text() + "' is not " + std::string(to_string(sort.kind)) + " (sort " + sort.name + ")",
                 a.span, *path);
          good = false;
        }
        atoms.push_back(a.value);
      }
      if (!good) continue;
      DomainBuild built = make_domain(d->name.text, sort, atoms);
      result_.duplicates_removed += built.duplicates_removed;
      ws().domains.emplace(d->name.text, std::move(built.domain));
    }
  }

  void load_relations() {
    for (auto [d, path] : relations_) {
      if (!fresh(d->name, *path, "relation")) continue;
      bool good = true;
      std::vector<Attribute> attrs;
      std::set<std::string> seen;
      for (const AttrDecl& a : d->attributes) {
        if (!seen.insert(a.name.text).second) {
          report(ErrorKind::DuplicateName, "attribute '" + a.name.text + "' repeated", a.name.span, *path);
          good = false;
        }
        if (!known(ws().sorts, a.sort, *path, ErrorKind::UnknownSort, "sort")) {
          good = false;
          continue;
        }
        attrs.push_back(Attribute{a.name.text, ws().sorts.at(a.sort.text)});
      }
      if (!good) continue;
      Relation r{d->name.text, attrs, {}};
      for (const TupleLit& t : d->tuples) {
        try {
          r.insert(t.values);
        } catch (const Error& e) {
          report(e.kind(), e.detail(), t.span, *path);
          good = false;
        }
      }
      if (good) ws().relations.emplace(d->name.text, std::move(r));
    }
  }

  void load_filters() {
    for (auto [d, path] : filters_) {
      if (!fresh(d->name, *path, "filter")) continue;
      bool good = true;
      if (d->index_var.text == d->candidate_var.text) {
        report(ErrorKind::DuplicateName, "index and candidate variables must differ", d->candidate_var.span, *path);
        good = false;
      }
      intensio::detail::visit_members(d->body, [&](const pred_node::Member& m) {
        auto it = ws().relations.find(m.relation);
        if (it == ws().relations.end()) {
          report(ErrorKind::UnknownRelation, "no relation named '" + m.relation + "'", m.span, *path);
          good = false;
        } else if (it->second.arity() != m.pattern.size()) {
          report(ErrorKind::ArityMismatch,
                 "pattern of arity " + std::to_string(m.pattern.size()) + " against " + m.relation + " of arity " +
                     std::to_string(it->second.arity()),
                 m.span, *path);
          good = false;
        }
      });
      for (const std::string& v : free_vars(d->body)) {
        if (v != d->index_var.text && v != d->candidate_var.text) {
          report(ErrorKind::UnboundVariable, "variable '" + v + "' is neither the index nor the candidate variable",
                 d->name.span, *path);
          good = false;
        }
      }
      if (good)
        ws().filters.emplace(d->name.text, Filter{d->name.text, d->index_var.text, d->candidate_var.text, d->body});
    }
  }

  void load_potentials() {
    for (auto [d, path] : potentials_) {
      if (!fresh(d->name, *path, "potential object")) continue;
      bool good = known(ws().domains, d->carrier, *path, ErrorKind::UnknownDomain, "domain");
      good = known(ws().domains, d->index_domain, *path, ErrorKind::UnknownDomain, "domain") && good;
      good = known(ws().filters, d->filter, *path, ErrorKind::UnknownFilter, "filter") && good;
      if (d->carrier.text == d->index_domain.text) {
        report(ErrorKind::TypeError, "carrier and index domain must be different domains",
               Span::cover(d->carrier.span, d->index_domain.span), *path);
        good = false;
      }
      if (good)
        ws().potentials.emplace(d->name.text, PotentialObject{d->name.text, d->carrier.text, d->index_domain.text,
                                                              d->filter.text});
    }
  }

  void load_concepts() {
    std::map<std::string, Located<ConceptDecl>> decls;
    for (auto loc : concepts_) {
      const Name& n = loc.decl->name;
      if (ws().concepts.contains(n.text) || decls.contains(n.text)) {
        report(ErrorKind::DuplicateName, "concept '" + n.text + "' is already declared", n.span, *loc.path);
        continue;
      }
      decls.emplace(n.text, loc);
    }

    std::set<std::string> dropped;
    std::map<std::string, std::vector<std::string>> edges;
    for (const auto& [name, loc] : decls) {
      std::set<std::string> seen;
      for (const Name& p : loc.decl->parents) {
        if (!seen.insert(p.text).second) {
          report(ErrorKind::DuplicateName, "parent '" + p.text + "' listed twice", p.span, *loc.path);
          dropped.insert(name);
        } else if (!decls.contains(p.text) && !ws().concepts.contains(p.text)) {
          report(ErrorKind::UnknownConcept, "no concept named '" + p.text + "'", p.span, *loc.path);
          dropped.insert(name);
        }
      }
      auto& out = edges[name];
      for (const Name& p : loc.decl->parents) out.push_back(p.text);
    }
    for (const auto& cycle : cyclic_components(edges)) {
      std::string names;
      for (const std::string& c : cycle) names += (names.empty() ? "" : ", ") + c;
      const auto& first = decls.at(cycle.front());
      report(ErrorKind::CycleDetected, "concept parents form a cycle through " + names, first.decl->name.span,
             *first.path);
      dropped.insert(cycle.begin(), cycle.end());
    }
    // Anything inheriting from a dropped concept goes too.
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [name, loc] : decls) {
        if (dropped.contains(name)) continue;
        for (const Name& p : loc.decl->parents) {
          if (dropped.contains(p.text)) {
            changed = dropped.insert(name).second || changed;
            break;
          }
        }
      }
    }

    std::vector<Concept> batch;
    for (const auto& [name, loc] : decls) {
      if (dropped.contains(name)) continue;
      const ConceptDecl& d = *loc.decl;
      Concept c;
      c.name = name;
      for (const Name& p : d.parents) c.parents.push_back(p.text);
      bool good = true;
      for (const ConceptAttr& a : d.attributes) {
        if (!c.own_attributes.emplace(a.name.text, a.value.value).second) {
          report(ErrorKind::DuplicateName, "attribute '" + a.name.text + "' defined twice", a.name.span, *loc.path);
          good = false;
        }
        if (a.is_private) c.encapsulated.insert(a.name.text);
      }
      for (const Name& e : d.encapsulate) c.encapsulated.insert(e.text);
      for (const Name& e : d.events) {
        if (std::find(c.events.begin(), c.events.end(), e.text) != c.events.end()) {
          report(ErrorKind::DuplicateName, "event '" + e.text + "' listed twice", e.span, *loc.path);
          good = false;
        }
        c.events.push_back(e.text);
      }
      for (const MenuDecl& m : d.menus) {
        if (std::any_of(c.menus.begin(), c.menus.end(), [&](const MenuEntry& x) { return x.label == m.label.text; })) {
          report(ErrorKind::DuplicateName, "menu '" + m.label.text + "' listed twice", m.label.span, *loc.path);
          good = false;
        }
        c.menus.push_back(MenuEntry{m.label.text, m.event.text});
      }
      if (good) batch.push_back(std::move(c));
      else dropped.insert(name);
    }

    // Encapsulated names must be defined somewhere up the chain; check with a
    // scratch registry, then register the survivors in one batch.
    for (bool changed = true; changed;) {
      changed = false;
      std::erase_if(batch, [&](const Concept& c) {
        for (const std::string& p : c.parents)
          if (dropped.contains(p)) return dropped.insert(c.name), changed = true, true;
        return false;
      });
    }
    ConceptRegistry scratch = ws().concepts;
    std::vector<Concept> plain = batch;
    for (Concept& c : plain) c.encapsulated.clear();
    scratch.add_all(plain);
    std::vector<Concept> accepted;
    for (const Concept& c : batch) {
      bool good = true;
      for (const std::string& attr : c.encapsulated) {
        bool defined = c.own_attributes.contains(attr);
        for (const std::string& a : scratch.ancestors(c.name))
          defined = defined || scratch.get(a).own_attributes.contains(attr);
        if (!defined) {
          const auto& loc = decls.at(c.name);
          Span where = loc.decl->name.span;
          for (const Name& e : loc.decl->encapsulate)
            if (e.text == attr) where = e.span;
          report(ErrorKind::UnknownAttribute,
                 "cannot encapsulate '" + attr + "': neither '" + c.name + "' nor an ancestor defines it", where,
                 *loc.path);
          good = false;
        }
      }
      if (good) accepted.push_back(c);
      else dropped.insert(c.name);
    }
    for (bool changed = true; changed;) {
      changed = false;
      std::erase_if(accepted, [&](const Concept& c) {
        for (const std::string& p : c.parents)
          if (dropped.contains(p)) return dropped.insert(c.name), changed = true, true;
        return false;
      });
    }
    try {
      ws().concepts.add_all(std::move(accepted));
    } catch (const Error& e) {
      report(e.kind(), e.detail(), {}, concepts_.empty() ? std::string() : *concepts_.front().path);
    }
  }

  void check_shape(const ShapeLit& s, const std::string& path, bool& good) {
    std::function<void(const Shape&)> walk = [&](const Shape& sh) {
      if (sh.kind() == Shape::Kind::Domain && !ws().domains.contains(sh.domain_name())) {
        report(ErrorKind::UnknownDomain, "no domain named '" + sh.domain_name() + "'", s.span, path);
        good = false;
      }
      if (sh.kind() == Shape::Kind::Pair) {
        walk(sh.first());
        walk(sh.second());
      }
    };
    walk(s.shape);
  }

  void check_expr(const Expr& e, const std::set<std::string>& scope, const DiagramDecl& d, const std::string& path,
                  bool& good) {
    using namespace expr_node;
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Var>) {
            if (!scope.contains(n.name)) {
              report(ErrorKind::UnboundVariable, "variable '" + n.name + "' is not bound by an enclosing subst",
                     d.name.span, path);
              good = false;
            }
          } else if constexpr (std::is_same_v<N, FilterRef>) {
            if (!ws().filters.contains(n.name)) {
              report(ErrorKind::UnknownFilter, "no filter named '" + n.name + "'", n.span, path);
              good = false;
            }
          } else if constexpr (std::is_same_v<N, IndexShift>) {
            if (!ws().potentials.contains(n.po)) {
              report(ErrorKind::UnknownPotentialObject, "no potential object named '" + n.po + "'", n.span, path);
              good = false;
            }
            check_expr(n.index, scope, d, path, good);
          } else if constexpr (std::is_same_v<N, Pair>) {
            check_expr(n.first, scope, d, path, good);
            check_expr(n.second, scope, d, path, good);
          } else if constexpr (std::is_same_v<N, Apply>) {
            check_expr(n.fn, scope, d, path, good);
            check_expr(n.arg, scope, d, path, good);
          } else if constexpr (std::is_same_v<N, Subst>) {
            check_expr(n.value, scope, d, path, good);
            std::set<std::string> inner = scope;
            inner.insert(n.var);
            check_expr(n.target, inner, d, path, good);
          } else if constexpr (std::is_same_v<N, Fst> || std::is_same_v<N, Snd> || std::is_same_v<N, IdArrow> ||
                               std::is_same_v<N, Not>) {
            check_expr(n.operand, scope, d, path, good);
          }
        },
        e.node());
  }

  void load_diagrams() {
    for (auto [d, path] : diagrams_) {
      if (!fresh(d->name, *path, "diagram")) continue;
      bool good = true;
      check_shape(d->entry, *path, good);
      check_shape(d->exit, *path, good);
      for (const Expr& e : d->path_a) check_expr(e, {}, *d, *path, good);
      for (const Expr& e : d->path_b) check_expr(e, {}, *d, *path, good);
      if (good)
        ws().diagrams.emplace(d->name.text, DiagramSpec{d->name.text, d->entry.shape, d->path_a, d->path_b,
                                                        d->exit.shape});
    }
  }

  bool check_event(const Name& po, const AtomLit& index, const std::string& path) {
    if (!known(ws().potentials, po, path, ErrorKind::UnknownPotentialObject, "potential object")) return false;
    const Domain& dom = ws().domains.at(ws().potentials.at(po.text).index_domain);
    if (dom.contains(index.value)) return true;
    report(ErrorKind::IndexNotInDomain, "'" + index.value.text() + "' is not an element of domain " + dom.name,
           index.span, path);
    return false;
  }

  void load_scripts() {
    for (auto [d, path] : scripts_) {
      if (!fresh(d->name, *path, "script")) continue;
      bool good = true;
      EventScript s{d->name.text, {}};
      for (const StepLit& st : d->steps) {
        good = check_event(st.potential, st.index, *path) && good;
        s.steps.push_back(ScriptStep{st.potential.text, st.index.value});
      }
      if (good) ws().scripts.emplace(d->name.text, std::move(s));
    }
  }

  void load_evolvents() {
    std::map<std::string, Located<EvolventDecl>> decls;
    for (auto loc : evolvents_) {
      if (!fresh(loc.decl->name, *loc.path, "evolvent")) continue;
      if (decls.contains(loc.decl->name.text)) {
        report(ErrorKind::DuplicateName, "evolvent '" + loc.decl->name.text + "' is already declared",
               loc.decl->name.span, *loc.path);
        continue;
      }
      decls.emplace(loc.decl->name.text, loc);
    }
    std::set<std::string> dropped;
    std::map<std::string, std::vector<std::string>> edges;
    for (const auto& [name, loc] : decls) {
      const EvolventDecl& d = *loc.decl;
      auto& out = edges[name];
      if (d.kind == Evolvent::Kind::Script &&
          !known(ws().scripts, d.script, *loc.path, ErrorKind::UnknownScript, "script"))
        dropped.insert(name);
      for (const Name& c : d.components) {
        out.push_back(c.text);
        if (!decls.contains(c.text) && !ws().evolvents.contains(c.text)) {
          report(ErrorKind::UnknownEvolvent, "no evolvent named '" + c.text + "'", c.span, *loc.path);
          dropped.insert(name);
        }
      }
    }
    for (const auto& cycle : cyclic_components(edges)) {
      std::string names;
      for (const std::string& c : cycle) names += (names.empty() ? "" : ", ") + c;
      const auto& first = decls.at(cycle.front());
      report(ErrorKind::CycleDetected, "composed evolvents form a cycle through " + names, first.decl->name.span,
             *first.path);
      dropped.insert(cycle.begin(), cycle.end());
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [name, loc] : decls) {
        if (dropped.contains(name)) continue;
        for (const Name& c : loc.decl->components)
          if (dropped.contains(c.text)) {
            changed = dropped.insert(name).second || changed;
            break;
          }
      }
    }
    for (const auto& [name, loc] : decls) {
      if (dropped.contains(name)) continue;
      const EvolventDecl& d = *loc.decl;
      Evolvent ev{name, d.kind, d.script.text, {}};
      for (const Name& c : d.components) ev.components.push_back(c.text);
      ws().evolvents.emplace(name, std::move(ev));
    }
  }

  void check_commands() {
    for (const Command& c : result_.commands) {
      std::visit(
          [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, TriggerCmd>) {
              check_event(d.potential, d.index, c.path);
            } else if constexpr (std::is_same_v<D, CheckCmd>) {
              known(ws().diagrams, d.diagram, c.path, ErrorKind::UnknownDiagram, "diagram");
            } else if constexpr (std::is_same_v<D, QueryCmd>) {
              std::vector<rel_node::Ref> refs;
              collect_refs(d.expr, refs);
              for (const auto& r : refs) known(ws().relations, Name{r.name, r.span}, c.path, ErrorKind::UnknownRelation, "relation");
            }
          },
          c.statement.node);
    }
  }

  LoadResult result_;
  std::vector<Located<SortDecl>> sorts_;
  std::vector<Located<DomainDecl>> domains_;
  std::vector<Located<RelationDecl>> relations_;
  std::vector<Located<FilterDecl>> filters_;
  std::vector<Located<PotentialDecl>> potentials_;
  std::vector<Located<ConceptDecl>> concepts_;
  std::vector<Located<DiagramDecl>> diagrams_;
  std::vector<Located<ScriptDecl>> scripts_;
  std::vector<Located<EvolventDecl>> evolvents_;
};

}  // namespace detail

/// Builds a workspace from parsed units on top of `base`.
[[nodiscard]] inline LoadResult load(const std::vector<SourceUnit>& units, Workspace base = {}) {
  return detail::Loader(std::move(base)).run(units);
}

[[nodiscard]] inline LoadResult load(const SourceUnit& unit, Workspace base = {}) {
  return load(std::vector<SourceUnit>{unit}, std::move(base));
}

/// Name resolution, arity, sort and acyclicity checks. Empty means loadable.
[[nodiscard]] inline std::vector<Diagnostic> validate(const SourceUnit& unit, const Workspace& workspace = {}) {
  return load(unit, workspace).diagnostics;
}

/// Parses then loads; syntax errors are returned as diagnostics and nothing
/// is loaded from a unit that failed to parse.
[[nodiscard]] inline LoadResult load_text(std::string_view text, std::string path = {}, Workspace base = {}) {
  ParseResult parsed = parse(text, std::move(path));
  if (!parsed.ok()) {
    LoadResult r;
    r.workspace = std::move(base);
    r.diagnostics = std::move(parsed.errors);
    return r;
  }
  return load(parsed.unit, std::move(base));
}

}  // namespace intensio::dodl
