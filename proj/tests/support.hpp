#pragma once

// Shared fixtures: the teaching corpus and seeded random generators.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "intensio/intensio.hpp"

namespace support {

using namespace intensio;

inline std::string corpus_path(const std::string& file = "teaching.dodl") {
  return std::string(INTENSIO_CORPUS_DIR) + "/" + file;
}

inline std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline dodl::LoadResult load_corpus() { return dodl::load_text(read(corpus_path()), "teaching.dodl"); }

inline Atom sym(const char* s) { return Atom::symbol(s); }
inline AtomSet atoms(std::initializer_list<const char*> xs) {
  AtomSet out;
  for (const char* x : xs) out.insert(Atom::symbol(x));
  return out;
}

inline const Sort kSymbolic{"S", SortKind::Symbolic};
inline const Sort kNumeric{"N", SortKind::Numeric};

/// Index values i0..i{n-1}, candidates c0..c{m-1}, payload numbers.
struct RandomTriple {
  Relation relation;
  std::vector<Atom> indices;
  std::vector<Atom> candidates;
};

inline RandomTriple random_triple(std::mt19937& rng, std::size_t max_tuples = 20, std::size_t max_index = 6) {
  std::uniform_int_distribution<std::size_t> n_idx(1, max_index), n_cand(1, 6), n_tup(0, max_tuples);
  RandomTriple out;
  std::size_t ni = n_idx(rng), nc = n_cand(rng);
  for (std::size_t i = 0; i < ni; ++i) out.indices.push_back(Atom::symbol("i" + std::to_string(i)));
  for (std::size_t i = 0; i < nc; ++i) out.candidates.push_back(Atom::symbol("c" + std::to_string(i)));
  out.relation = make_relation("R", {{"Idx", {"I", SortKind::Symbolic}},
                                     {"Cand", {"C", SortKind::Symbolic}},
                                     {"Load", {"H", SortKind::Numeric}}});
  std::uniform_int_distribution<std::size_t> pi(0, ni - 1), pc(0, nc - 1);
  std::uniform_int_distribution<int> pl(0, 3);
  std::size_t want = n_tup(rng);
  for (std::size_t k = 0; k < want; ++k)
    out.relation.insert({out.indices[pi(rng)], out.candidates[pc(rng)], Atom::number(pl(rng))});
  return out;
}

/// A workspace with the random relation, its domains, the membership filter
/// and a potential object P over it.
inline Workspace workspace_for(const RandomTriple& t) {
  Workspace ws;
  ws.sorts = {{"I", {"I", SortKind::Symbolic}}, {"C", {"C", SortKind::Symbolic}}, {"H", {"H", SortKind::Numeric}}};
  ws.domains["Idx"] = Domain{"Idx", "I", AtomSet(t.indices.begin(), t.indices.end())};
  ws.domains["Cand"] = Domain{"Cand", "C", AtomSet(t.candidates.begin(), t.candidates.end())};
  ws.relations["R"] = t.relation;
  ws.filters["F"] = Filter{"F", "idx", "x",
                           pred::member("R", {Term::var("idx"), Term::var("x"), Term::wildcard()})};
  ws.potentials["P"] = PotentialObject{"P", "Cand", "Idx", "F"};
  return ws;
}

/// Random relation over the given schema with at most `max_tuples` rows
/// drawn from small alphabets so that overlaps are common.
inline Relation random_relation(std::mt19937& rng, std::string name, const std::vector<Attribute>& attrs,
                                std::size_t max_tuples = 20) {
  Relation r = make_relation(std::move(name), attrs);
  std::uniform_int_distribution<std::size_t> n(0, max_tuples);
  std::uniform_int_distribution<int> v(0, 3);
  std::size_t want = n(rng);
  for (std::size_t k = 0; k < want; ++k) {
    Tuple t;
    for (const Attribute& a : attrs)
      t.push_back(a.sort.kind == SortKind::Numeric ? Atom::number(v(rng)) : Atom::symbol("a" + std::to_string(v(rng))));
    r.insert(std::move(t));
  }
  return r;
}

/// DODL text for a random but valid workspace. Declarations are emitted in a
/// shuffled order so the dump has real canonicalization work to do.
inline std::string random_dodl(std::mt19937& rng) {
  std::uniform_int_distribution<int> small(1, 4), coin(0, 1), num(-5, 40);
  std::vector<std::string> stmts;
  stmts.push_back("sort Sym : symbolic;");
  stmts.push_back("sort Num : numeric;");

  int nd = small(rng);
  std::vector<std::string> domains;
  for (int d = 0; d < nd; ++d) {
    std::string name = "D" + std::to_string(d);
    std::string body;
    int n = small(rng) + 1;
    for (int i = 0; i < n; ++i) body += (i ? ", " : "") + std::string("e") + std::to_string(small(rng) * 3 + i % 2);
    stmts.push_back("domain " + name + " : Sym = { " + body + " };");
    domains.push_back(name);
  }
  stmts.push_back("domain Nums : Num = { " + std::to_string(num(rng)) + ", " + std::to_string(num(rng)) + " };");

  int nr = small(rng);
  for (int r = 0; r < nr; ++r) {
    std::string text = "relation R" + std::to_string(r) + " (A : Sym, B : Sym, H : Num) = {";
    int n = small(rng) * 2 - 2;
    for (int i = 0; i < n; ++i)
      text += std::string(i ? ", " : " ") + "(a" + std::to_string(small(rng)) + ", b" + std::to_string(small(rng)) +
              ", " + std::to_string(num(rng)) + ")";
    stmts.push_back(text + " };");
  }

  const char* bodies[] = {"member R0 (i, c, _)", "i = c or not member R0 (_, c, _)", "true",
                          "member R0 (i, _, 3) and c = b1", "not (i = a1 or false)"};
  int nf = small(rng);
  for (int f = 0; f < nf; ++f) {
    std::uniform_int_distribution<int> pick(0, 4);
    stmts.push_back("filter F" + std::to_string(f) + "(i, c) = " + bodies[pick(rng)] + ";");
  }
  if (domains.size() >= 2) {
    stmts.push_back("potential P : carrier " + domains[1] + " index " + domains[0] + " filter F0;");
    stmts.push_back("script S = [ ];");
  }

  int nc = small(rng);
  for (int c = 0; c < nc; ++c) {
    std::string text = "concept K" + std::to_string(c);
    if (c > 0) {
      text += " : K" + std::to_string(c - 1);
      if (c > 1 && coin(rng)) text += ", K0";
    }
    text += " {";
    if (coin(rng)) text += " event ev" + std::to_string(c) + ";";
    if (coin(rng)) text += " attr" + std::to_string(small(rng)) + " = " + std::to_string(num(rng)) + ";";
    if (coin(rng)) text += " private secret = s" + std::to_string(c) + ";";
    stmts.push_back(text + " };");
  }

  stmts.push_back("diagram G entry pair(D0, D0) path_a [ snd(in), id(in) ] path_b [ subst(v, fst(in), pair(v, in)) ] exit Bool;");
  stmts.push_back("evolvent Id = identity;");
  if (coin(rng)) stmts.push_back("evolvent Twice = compose [Id, Id];");

  std::shuffle(stmts.begin() + 2, stmts.end(), rng);
  std::string out;
  for (const auto& s : stmts) out += s + "\n";
  return out;
}

}  // namespace support
