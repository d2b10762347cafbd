#pragma once

// Batch command shell over a DODL workspace. run_cli is what main() calls;
// tests call it directly with string streams.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "intensio/intensio.hpp"

namespace intensio::cli {

inline constexpr std::string_view synopsis =
    "usage: intensio [--workspace PATH] [--quiet] [--format text|tsv] "
    "<load|index|functor|script|evolve|check|oracle-diff|query|dump|audit> [ARGS...]";

enum class Format { Text, Tsv };

namespace detail {

[[nodiscard]] inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A directory contributes its *.dodl files in name order.
[[nodiscard]] inline std::vector<std::filesystem::path> workspace_files(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::exists(root)) fail(ErrorKind::IoError, "no such workspace '" + root.string() + "'");
  if (!fs::is_directory(root)) return {root};
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_regular_file() && entry.path().extension() == ".dodl") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

[[nodiscard]] inline dodl::LoadResult load_files(const std::vector<std::filesystem::path>& files) {
  std::vector<dodl::SourceUnit> units;
  std::vector<dodl::Diagnostic> syntax;
  for (const auto& f : files) {
    dodl::ParseResult parsed = dodl::parse(read_file(f), f.string());
    if (parsed.ok()) units.push_back(std::move(parsed.unit));
    else syntax.insert(syntax.end(), parsed.errors.begin(), parsed.errors.end());
  }
  dodl::LoadResult r = dodl::load(units);
  r.diagnostics.insert(r.diagnostics.begin(), syntax.begin(), syntax.end());
  return r;
}

[[nodiscard]] inline std::string join_atoms(const AtomSet& atoms, std::string_view sep) {
  std::string out;
  for (const Atom& a : atoms) out += (out.empty() ? "" : std::string(sep)) + a.text();
  return out;
}

/// Left-aligned columns separated by two spaces, or tab-separated.
inline void print_table(std::ostream& out, Format fmt, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (fmt == Format::Tsv) {
        line += (i ? "\t" : "") + r[i];
      } else {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
    }
    out << line << "\n";
  }
}

}  // namespace detail

class Shell {
 public:
  Shell(std::ostream& out, std::ostream& err, Format fmt, bool quiet)
      : out_(out), err_(err), fmt_(fmt), quiet_(quiet) {}

  void print_actual(const ActualObject& ao) { out_ << ao.name << " = " << format_atoms(ao.elements) << "\n"; }

  int index(WorkspaceState& st, const std::string& po, const std::string& atom) {
    auto [next, ao] = trigger(st, po, Atom::parse(atom));
    st = std::move(next);
    print_actual(ao);
    return 0;
  }

  int functor(const WorkspaceState& st, const std::string& po) {
    auto mapping = materialize_functor(st, po);
    if (fmt_ == Format::Tsv) {
      std::vector<std::vector<std::string>> rows{{"index", "actual", "elements"}};
      for (const auto& [i, ao] : mapping) rows.push_back({i.text(), ao.name, detail::join_atoms(ao.elements, ",")});
      detail::print_table(out_, fmt_, rows);
    } else {
      for (const auto& [i, ao] : mapping) out_ << i.text() << " -> " << ao.name << " = " << format_atoms(ao.elements) << "\n";
    }
    return 0;
  }

  int print_state(const WorkspaceState& st) {
    for (const auto& [name, ao] : st.ao_library) print_actual(ao);
    if (!quiet_) out_ << "stage " << st.stage << "\n";
    return 0;
  }

  int check(const Workspace& ws, const std::string& name) {
    const DiagramSpec& d = ws.diagram(name);
    CommutativityReport rep = check_commutes(d, enumerate_shape(d.entry, ws), ws);
    std::vector<std::vector<std::string>> rows{{"input", "path_a", "path_b", "verdict"}};
    for (const auto& r : rep.rows) {
      std::string verdict = r.agree ? "agree" : r.error.empty() ? "DIFFER" : "error: " + r.error;
      rows.push_back({r.input.describe(), r.path_a ? r.path_a->describe() : "-", r.path_b ? r.path_b->describe() : "-",
                      verdict});
    }
    if (!quiet_ || fmt_ == Format::Tsv) detail::print_table(out_, fmt_, rows);
    if (fmt_ == Format::Text)
      out_ << rep.agreeing() << "/" << rep.rows.size() << " inputs commute\n";
    return rep.commutes() ? 0 : 1;
  }

  int oracle(const Workspace& ws, const std::string& po) {
    std::vector<std::vector<std::string>> rows{{"index", "indexing", "oracle", "verdict"}};
    bool all = true;
    for (const OracleRow& r : oracle_diff(ws, po)) {
      all = all && r.equal();
      if (fmt_ == Format::Tsv)
        rows.push_back({r.index.text(), detail::join_atoms(r.indexing, ","), detail::join_atoms(r.oracle, ","),
                        r.equal() ? "EQUAL" : "DIFFER"});
      else
        rows.push_back({r.index.text(), format_atoms(r.indexing), format_atoms(r.oracle), r.equal() ? "EQUAL" : "DIFFER"});
    }
    detail::print_table(out_, fmt_, rows);
    return all ? 0 : 1;
  }

  int query(const Workspace& ws, const RelExpr& e) {
    QueryResult res = eval_query(e, ws);
    if (const auto* atoms = std::get_if<AtomSet>(&res)) {
      if (fmt_ == Format::Tsv) {
        for (const Atom& a : *atoms) out_ << a.text() << "\n";
      } else {
        out_ << format_atoms(*atoms) << "\n";
      }
      return 0;
    }
    const Relation& r = std::get<Relation>(res);
    if (fmt_ == Format::Tsv) {
      std::vector<std::vector<std::string>> rows(1);
      for (const Attribute& a : r.attributes) rows[0].push_back(a.name);
      for (const Tuple& t : r.tuples) {
        rows.emplace_back();
        for (const Atom& a : t) rows.back().push_back(a.text());
      }
      detail::print_table(out_, fmt_, rows);
    } else {
      out_ << dodl::dump_relation(r);
    }
    return 0;
  }

  /// Commands embedded in the loaded files, in source order.
  int run_commands(WorkspaceState& st, const std::vector<dodl::Command>& cmds) {
    int code = 0;
    for (const dodl::Command& c : cmds) {
      try {
        std::visit(
            [&](const auto& d) {
              using D = std::decay_t<decltype(d)>;
              if constexpr (std::is_same_v<D, dodl::TriggerCmd>) {
                code = std::max(code, index(st, d.potential.text, d.index.value.text()));
              } else if constexpr (std::is_same_v<D, dodl::CheckCmd>) {
                code = std::max(code, check(st.workspace, d.diagram.text));
              } else if constexpr (std::is_same_v<D, dodl::QueryCmd>) {
                code = std::max(code, query(st.workspace, d.expr));
              } else if constexpr (std::is_same_v<D, dodl::DumpCmd>) {
                out_ << dodl::dump(st.workspace);
              }
            },
            c.statement.node);
      } catch (const Error& e) {
        err_ << c.path << ":" << c.statement.span.line << ":" << c.statement.span.column << ": error: " << e.what()
             << "\n";
        code = 1;
      }
    }
    return code;
  }

  int audit(WorkspaceState& st, const std::vector<dodl::Command>& cmds) {
    for (const dodl::Command& c : cmds) {
      if (const auto* t = std::get_if<dodl::TriggerCmd>(&c.statement.node))
        st = exchange(st, request::Trigger{t->potential.text, t->index.value}).state;
      else if (const auto* q = std::get_if<dodl::QueryCmd>(&c.statement.node))
        st = exchange(st, request::Query{q->expr}).state;
    }
    out_ << format_audit(st.audit);
    return 0;
  }

  void summary(const dodl::LoadResult& r, std::size_t files) {
    if (quiet_) return;
    const Workspace& ws = r.workspace;
    out_ << "loaded " << files << (files == 1 ? " file" : " files") << ": sorts=" << ws.sorts.size()
         << " domains=" << ws.domains.size() << " relations=" << ws.relations.size()
         << " filters=" << ws.filters.size() << " potentials=" << ws.potentials.size()
         << " concepts=" << ws.concepts.size() << " diagrams=" << ws.diagrams.size()
         << " scripts=" << ws.scripts.size() << " evolvents=" << ws.evolvents.size()
         << " duplicates_removed=" << r.duplicates_removed << "\n";
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  Format fmt_;
  bool quiet_;
};

/// Exit codes: 0 success, 1 diagnostics or a failed check, 2 usage error.
[[nodiscard]] inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derives actual objects from potential objects declared in DODL.", "intensio"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string workspace = ".";
  bool quiet = false;
  std::string format = "text";
  app.add_option("--workspace", workspace, "Workspace directory or DODL file");
  app.add_flag("--quiet", quiet, "Suppress summaries and per-row detail");
  app.add_option("--format", format, "Tabular output format")->check(CLI::IsMember({"text", "tsv"}));

  std::vector<std::string> files;
  std::string name, atom, expr;
  auto* load_cmd = app.add_subcommand("load", "Parse, validate and build a workspace; run embedded commands");
  load_cmd->add_option("files", files, "DODL files")->required();
  auto* index_cmd = app.add_subcommand("index", "Trigger one event and print the actual object");
  index_cmd->add_option("po", name)->required();
  index_cmd->add_option("atom", atom)->required();
  auto* functor_cmd = app.add_subcommand("functor", "Print the index to actual object mapping");
  functor_cmd->add_option("po", name)->required();
  auto* script_cmd = app.add_subcommand("script", "Run an event script");
  script_cmd->add_option("name", name)->required();
  auto* evolve_cmd = app.add_subcommand("evolve", "Apply an evolvent");
  evolve_cmd->add_option("name", name)->required();
  auto* check_cmd = app.add_subcommand("check", "Commutativity report for a diagram");
  check_cmd->add_option("diagram", name)->required();
  auto* oracle_cmd = app.add_subcommand("oracle-diff", "Compare indexing with the relational oracle");
  oracle_cmd->add_option("po", name)->required();
  auto* query_cmd = app.add_subcommand("query", "Evaluate a relational expression");
  query_cmd->add_option("expr", expr)->required();
  auto* dump_cmd = app.add_subcommand("dump", "Print the canonical DODL text");
  auto* audit_cmd = app.add_subcommand("audit", "Replay embedded commands through the exchange and print the log");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "intensio: " << e.what() << "\n" << synopsis << "\n";
    return 2;
  }
  if (app.get_subcommands().empty()) {
    err << "intensio: a command is required\n" << synopsis << "\n";
    return 2;
  }

  Shell sh(out, err, format == "tsv" ? Format::Tsv : Format::Text, quiet);
  try {
    std::vector<std::filesystem::path> paths;
    if (load_cmd->parsed()) {
      for (const auto& f : files) paths.emplace_back(f);
    } else {
      paths = detail::workspace_files(workspace);
    }
    dodl::LoadResult loaded = detail::load_files(paths);
    if (!loaded.ok()) {
      for (const auto& d : loaded.diagnostics) err << d.format() << "\n";
      return 1;
    }
    WorkspaceState st{loaded.workspace, {}, 0, {}};

    if (load_cmd->parsed()) {
      int code = sh.run_commands(st, loaded.commands);
      sh.summary(loaded, paths.size());
      return code;
    }
    if (index_cmd->parsed()) return sh.index(st, name, atom);
    if (functor_cmd->parsed()) return sh.functor(st, name);
    if (script_cmd->parsed()) return sh.print_state(run_script(st, name));
    if (evolve_cmd->parsed()) return sh.print_state(apply_evolvent(st, name));
    if (check_cmd->parsed()) return sh.check(st.workspace, name);
    if (oracle_cmd->parsed()) return sh.oracle(st.workspace, name);
    if (query_cmd->parsed()) return sh.query(st.workspace, dodl::parse_rel_expr(expr));
    if (dump_cmd->parsed()) {
      out << dodl::dump(st.workspace);
      return 0;
    }
    if (audit_cmd->parsed()) return sh.audit(st, loaded.commands);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace intensio::cli
