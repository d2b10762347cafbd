#include <gtest/gtest.h>

#include <array>

#include "support.hpp"

using namespace intensio;
using support::sym;

namespace {

Concept concept_of(std::string name, std::vector<std::string> parents = {}, std::map<std::string, Atom> attrs = {}) {
  Concept c;
  c.name = std::move(name);
  c.parents = std::move(parents);
  c.own_attributes = std::move(attrs);
  return c;
}

ConceptRegistry teaching() {
  ConceptRegistry reg;
  Concept apo = concept_of("TeachAPO", {}, {{"hours_default", Atom::number(20)}});
  apo.events = {"assign"};
  apo.menus = {{"Course", "assign"}};
  reg.add(apo);
  return reg;
}

ConceptRegistry diamond() {
  ConceptRegistry reg;
  reg.add_all({concept_of("D", {"B", "C"}), concept_of("B", {"A"}, {{"a", sym("fromB")}}),
               concept_of("C", {"A"}, {{"a", sym("fromC")}}), concept_of("A", {}, {{"a", sym("fromA")}, {"z", sym("z")}})});
  return reg;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NotFound;
}

}  // namespace

TEST(Derive, PureInheritance) {
  ConceptRegistry reg = teaching();
  reg.derive("TeachAPO", "LogicTeach", {});
  EXPECT_EQ(reg.resolve_attribute("LogicTeach", "hours_default"), Atom::number(20));
  EXPECT_EQ(reg.get("LogicTeach").parents, std::vector<std::string>{"TeachAPO"});
}

TEST(Derive, OverrideShadows) {
  ConceptRegistry reg = teaching();
  reg.derive("TeachAPO", "InfTeach", {{"hours_default", Atom::number(30)}});
  EXPECT_EQ(reg.resolve_attribute("InfTeach", "hours_default"), Atom::number(30));
  EXPECT_EQ(reg.resolve_attribute("TeachAPO", "hours_default"), Atom::number(20));
}

TEST(Derive, Errors) {
  ConceptRegistry reg = teaching();
  EXPECT_EQ(kind_of([&] { reg.derive("Unknown", "X", {}); }), ErrorKind::UnknownConcept);
  EXPECT_EQ(kind_of([&] { reg.derive("TeachAPO", "TeachAPO", {}); }), ErrorKind::DuplicateName);
  EXPECT_FALSE(reg.contains("X"));
}

TEST(Derive, EventsAndMenusInherited) {
  ConceptRegistry reg = teaching();
  reg.derive("TeachAPO", "LogicTeach", {});
  EXPECT_EQ(reg.effective_events("LogicTeach"), std::vector<std::string>{"assign"});
  ASSERT_EQ(reg.effective_menus("LogicTeach").size(), 1u);
  EXPECT_EQ(reg.effective_menus("LogicTeach")[0].label, "Course");
}

TEST(Resolve, Diamond) {
  ConceptRegistry reg = diamond();
  EXPECT_EQ(reg.resolve_attribute("D", "a"), sym("fromB"));
  EXPECT_EQ(reg.resolve_attribute("D", "z"), sym("z"));
  EXPECT_EQ(kind_of([&] { (void)reg.resolve_attribute("D", "missing"); }), ErrorKind::UnknownAttribute);
  EXPECT_EQ(kind_of([&] { (void)reg.resolve_attribute("Nope", "a"); }), ErrorKind::UnknownConcept);
}

TEST(Resolve, ParentOrderDecides) {
  ConceptRegistry reg;
  reg.add_all({concept_of("P", {}, {{"k", sym("p")}}), concept_of("Q", {}, {{"k", sym("q")}}),
               concept_of("PQ", {"P", "Q"}), concept_of("QP", {"Q", "P"})});
  EXPECT_EQ(reg.resolve_attribute("PQ", "k"), sym("p"));
  EXPECT_EQ(reg.resolve_attribute("QP", "k"), sym("q"));
}

TEST(Resolve, Encapsulation) {
  ConceptRegistry reg;
  Concept base = concept_of("Base", {}, {{"secret", sym("s")}, {"open", sym("o")}});
  base.encapsulated = {"secret"};
  reg.add_all({base, concept_of("Child", {"Base"}), concept_of("Other")});
  EXPECT_EQ(reg.resolve_attribute("Base", "open"), sym("o"));
  EXPECT_EQ(kind_of([&] { (void)reg.resolve_attribute("Base", "secret"); }), ErrorKind::EncapsulationViolation);
  EXPECT_EQ(kind_of([&] { (void)reg.resolve_attribute("Base", "secret", "Other"); }),
            ErrorKind::EncapsulationViolation);
  EXPECT_EQ(reg.resolve_attribute("Base", "secret", "Base"), sym("s"));
  EXPECT_EQ(reg.resolve_attribute("Base", "secret", "Child"), sym("s"));
  EXPECT_EQ(reg.resolve_attribute("Child", "secret", "Child"), sym("s"));
}

TEST(Resolve, EncapsulateUndefinedRejected) {
  ConceptRegistry reg;
  Concept c = concept_of("C");
  c.encapsulated = {"ghost"};
  EXPECT_EQ(kind_of([&] { reg.add(c); }), ErrorKind::UnknownAttribute);
  EXPECT_EQ(reg.size(), 0u);
}

TEST(Ancestors, Examples) {
  ConceptRegistry reg;
  reg.add_all({concept_of("A"), concept_of("B", {"A"}), concept_of("C", {"B"})});
  EXPECT_TRUE(reg.ancestors("A").empty());
  EXPECT_EQ(reg.ancestors("C"), (std::vector<std::string>{"B", "A"}));
  EXPECT_EQ(diamond().ancestors("D"), (std::vector<std::string>{"B", "A", "C"}));
  EXPECT_EQ(kind_of([&] { (void)reg.ancestors("Z"); }), ErrorKind::UnknownConcept);
}

TEST(Registry, CycleNamesMembersAndLeavesRegistryUnchanged) {
  ConceptRegistry reg;
  reg.add(concept_of("Root"));
  try {
    reg.add_all({concept_of("A", {"B"}), concept_of("B", {"A"})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CycleDetected);
    std::string msg = e.what();
    EXPECT_NE(msg.find("A"), std::string::npos);
    EXPECT_NE(msg.find("B"), std::string::npos);
  }
  EXPECT_EQ(reg.size(), 1u);
}

TEST(Registry, TopologicalOrderTiesLexicographic) {
  ConceptRegistry reg;
  reg.add_all({concept_of("Z"), concept_of("M", {"Z"}), concept_of("A", {"M"}), concept_of("B")});
  EXPECT_EQ(reg.topological_order(), (std::vector<std::string>{"B", "Z", "M", "A"}));
}

TEST(Registry, UnknownParent) {
  ConceptRegistry reg;
  EXPECT_EQ(kind_of([&] { reg.add(concept_of("A", {"Ghost"})); }), ErrorKind::UnknownConcept);
}

// Every digraph on up to four nodes (self-loops included). Edge i -> j means
// j is a parent of i. The oracle is a transitive closure.
TEST(Registry, ExhaustiveSmallDigraphs) {
  std::size_t graphs = 0, rejected = 0;
  for (int n = 1; n <= 4; ++n) {
    const int edges = n * n;
    for (std::uint32_t mask = 0; mask < (1u << edges); ++mask) {
      std::array<std::array<bool, 4>, 4> reach{};
      std::vector<Concept> batch;
      for (int i = 0; i < n; ++i) {
        Concept c = concept_of("N" + std::to_string(i));
        for (int j = 0; j < n; ++j)
          if (mask & (1u << (i * n + j))) {
            c.parents.push_back("N" + std::to_string(j));
            reach[i][j] = true;
          }
        batch.push_back(c);
      }
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
      bool cyclic = false;
      for (int i = 0; i < n; ++i) cyclic = cyclic || reach[i][i];

      ConceptRegistry reg;
      ++graphs;
      try {
        reg.add_all(batch);
        ASSERT_FALSE(cyclic) << "accepted cyclic graph n=" << n << " mask=" << mask;
        for (int i = 0; i < n; ++i) {
          std::set<std::string> expect;
          for (int j = 0; j < n; ++j)
            if (reach[i][j]) expect.insert("N" + std::to_string(j));
          auto anc = reg.ancestors("N" + std::to_string(i));
          ASSERT_EQ(std::set<std::string>(anc.begin(), anc.end()), expect);
          ASSERT_EQ(anc.size(), expect.size());
        }
        ASSERT_EQ(reg.topological_order().size(), static_cast<std::size_t>(n));
      } catch (const Error& e) {
        ASSERT_TRUE(cyclic) << "rejected acyclic graph n=" << n << " mask=" << mask << ": " << e.what();
        ASSERT_EQ(e.kind(), ErrorKind::CycleDetected);
        ASSERT_EQ(reg.size(), 0u);
        ++rejected;
      }
    }
  }
  EXPECT_EQ(graphs, 2u + 16u + 512u + 65536u);
  EXPECT_GT(rejected, 0u);
}

TEST(Properties, ShadowingAndMonotonicity) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> coin(0, 1), val(0, 9);
  for (int round = 0; round < 200; ++round) {
    ConceptRegistry reg;
    std::vector<Concept> batch;
    const int n = 6;
    for (int i = 0; i < n; ++i) {
      Concept c = concept_of("C" + std::to_string(i));
      for (int j = 0; j < i; ++j)
        if (coin(rng) && coin(rng)) c.parents.push_back("C" + std::to_string(j));
      for (const char* a : {"x", "y"})
        if (coin(rng)) c.own_attributes.emplace(a, Atom::number(val(rng)));
      batch.push_back(c);
    }
    reg.add_all(batch);
    for (int i = 0; i < n; ++i) {
      std::string name = "C" + std::to_string(i);
      const Concept& c = reg.get(name);
      for (const char* a : {"x", "y"}) {
        if (c.own_attributes.contains(a)) {
          EXPECT_EQ(reg.resolve_attribute(name, a), c.own_attributes.at(a));
        }
        for (const std::string& p : c.parents) {
          bool parent_has = true;
          try {
            (void)reg.resolve_attribute(p, a);
          } catch (const Error&) {
            parent_has = false;
          }
          if (parent_has) {
            EXPECT_NO_THROW((void)reg.resolve_attribute(name, a));
          }
          if (parent_has && !c.own_attributes.contains(a) && p == c.parents.front()) {
            EXPECT_EQ(reg.resolve_attribute(name, a), reg.resolve_attribute(p, a));
          }
        }
      }
    }
  }
}
