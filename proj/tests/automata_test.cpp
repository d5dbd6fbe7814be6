#include <gtest/gtest.h>

#include "qfa/automata.hpp"
#include "qfa/constructions.hpp"
#include "qfa/error.hpp"
#include "qfa/semantics.hpp"

using namespace qfa;

TEST(Alphabet, WorkingLayout) {
  Alphabet a({"x", "y"});
  EXPECT_EQ(a.left_end(), 0u);
  EXPECT_EQ(a.right_end(), 3u);
  EXPECT_EQ(a.working_symbol(2), "y");
  EXPECT_EQ(*a.working_index("$"), 3u);
  EXPECT_EQ(a.encode({"y", "x"}), (std::vector<std::size_t>{0, 2, 1, 3}));
  EXPECT_THROW(a.encode({"z"}), UnknownSymbolError);
}

TEST(Alphabet, RejectsReservedAndDuplicateNames) {
  EXPECT_THROW(Alphabet({"a", "a"}), InvalidArgument);
  EXPECT_THROW(Alphabet({"$"}), InvalidArgument);
  EXPECT_THROW(Alphabet({""}), InvalidArgument);
  EXPECT_THROW(Alphabet({"a b"}), InvalidArgument);
}

TEST(Alphabet, ParsesWords) {
  Alphabet single({"a", "b"});
  EXPECT_EQ(single.parse_word("abba"), (Word{"a", "b", "b", "a"}));
  EXPECT_TRUE(single.parse_word("").empty());
  Alphabet multi({"up", "down"});
  EXPECT_EQ(multi.parse_word("up,down up"), (Word{"up", "down", "up"}));
  EXPECT_EQ(multi.parse_word("up"), (Word{"up"}));
}

TEST(QuantumBuilder, UnspecifiedSymbolIsIdentity) {
  QuantumAutomatonBuilder b({"q0", "acc", "rej"}, {"a"});
  b.accepting("acc").rejecting("rej");
  b.image("$", "q0", {{"acc", 1.0}});
  const auto q = b.build();
  EXPECT_EQ(q.unitary(1), SquareMatrix::identity(3));
  EXPECT_TRUE(validate(q).empty());
  EXPECT_NEAR(run_kw(q, {"a", "a"}).p_acc, 1.0, 1e-15);
}

TEST(QuantumBuilder, NonOrthogonalImagesAreReported) {
  QuantumAutomatonBuilder b({"q0", "q1"}, {"a"});
  b.image("a", "q0", {{"q0", 1.0}});
  b.image("a", "q1", {{"q0", 1.0}});
  EXPECT_THROW(b.build(), NotCompletableError);
}

TEST(QuantumBuilder, RejectsOverlappingHaltingSets) {
  QuantumAutomatonBuilder b({"q0", "h"}, {"a"});
  b.accepting("h").rejecting("h");
  EXPECT_THROW(b.build(), InvalidArgument);
}

TEST(Validate, ReportsEachProblem) {
  auto q = example_qfa();
  EXPECT_TRUE(validate(q).empty());
  q.initial = StateVector({2.0, 0, 0, 0});
  auto v = validate(q);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, Violation::Kind::normalization);
  q = example_qfa();
  q.unitaries[1].set(0, 0, 0.9);
  v = validate(q);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, Violation::Kind::unitarity);
  q.unitaries.pop_back();
  EXPECT_EQ(validate(q).back().kind, Violation::Kind::structure);
}

TEST(Reversibility, ListsCollidingPairs) {
  ClassicalAutomatonBuilder b({"a"}, HaltingMode::end_of_word);
  b.add_state("p");
  b.add_state("q");
  b.add_state("r", HaltClass::accepting);
  b.transition("p", "a", "r").transition("q", "a", "r").transition("r", "a", "p");
  const auto c = b.start("p").build();
  const auto report = is_reversible(c);
  EXPECT_FALSE(report.reversible);
  ASSERT_EQ(report.tuples.size(), 1u);
  EXPECT_EQ(report.tuples[0], (NonReversibility{0, 1, 2, 1}));
}

TEST(Reversibility, HaltingSourcesAreIgnored) {
  const auto trio = parity_prfa_trio();
  for (const auto& r : trio.rfas) EXPECT_TRUE(is_reversible(r).reversible);
}

TEST(ClassicalBuilder, MissingTransitionsFailValidation) {
  ClassicalAutomatonBuilder b({"a"}, HaltingMode::end_of_word);
  b.add_state("p");
  b.start("p");
  EXPECT_THROW(b.build(), InvalidArgument);
  EXPECT_THROW(b.add_state("p"), InvalidArgument);
  EXPECT_THROW(b.transition("p", "z", "p"), UnknownSymbolError);
}

TEST(ProbabilisticChain, RfaToPrfaToQfa) {
  const auto trio = parity_prfa_trio();
  const auto p = rfa_to_prfa(trio.rfas[0]);
  EXPECT_TRUE(validate(p).empty());
  const auto q = prfa_to_qfa(p);
  EXPECT_TRUE(validate(q).empty());
  EXPECT_NEAR(run_kw(q, {"a", "a", "a"}).p_acc, 1.0, 1e-12);
  EXPECT_NEAR(run_kw(q, {"a", "a"}).p_rej, 1.0, 1e-12);
}

TEST(ProbabilisticChain, RejectsNonReversibleInput) {
  ClassicalAutomatonBuilder b({"a"}, HaltingMode::halt_on_enter);
  b.add_state("p");
  b.add_state("q");
  b.add_state("acc", HaltClass::accepting);
  b.transition("p", "^", "p").transition("q", "^", "q");
  b.transition("p", "a", "q").transition("q", "a", "q");
  b.transition("p", "$", "acc").transition("q", "$", "acc");
  const auto c = b.start("p").build();
  EXPECT_THROW(rfa_to_prfa(c), NotReversibleError);

  ProbabilisticAutomaton p;
  p.states = {"p", "q", "acc"};
  p.alphabet = Alphabet({"a"});
  p.classes = {HaltClass::non_halting, HaltClass::non_halting, HaltClass::accepting};
  p.transitions.assign(3, std::vector<std::vector<ProbabilisticEdge>>(3));
  for (StateId s : {0u, 1u}) {
    p.transitions[s][0] = {{s, 1.0}};
    p.transitions[s][1] = {{1, 1.0}};
    p.transitions[s][2] = {{2, 1.0}};
  }
  p.initial = {{0, 1.0}};
  EXPECT_THROW(prfa_to_qfa(p), NotCompletableError);
}

TEST(ProbabilisticValidate, FlagsBadSums) {
  auto p = parity_prfa_trio().prfa;
  p.initial[0].probability += 0.1;
  EXPECT_FALSE(validate(p).empty());
}
