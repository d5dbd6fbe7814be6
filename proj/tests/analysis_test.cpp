#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfa/analysis.hpp"
#include "qfa/constructions.hpp"
#include "qfa/error.hpp"
#include "qfa/semantics.hpp"

using namespace qfa;

namespace {

ClassicalAutomaton astar_bstar_dfa() {
  ClassicalAutomatonBuilder b({"a", "b"}, HaltingMode::end_of_word);
  b.add_state("qa", HaltClass::accepting);
  b.add_state("qb", HaltClass::accepting);
  b.add_state("dead");
  b.transition("qa", "a", "qa").transition("qa", "b", "qb");
  b.transition("qb", "a", "dead").transition("qb", "b", "qb");
  b.transition("dead", "a", "dead").transition("dead", "b", "dead");
  return b.start("qa").build();
}

ClassicalAutomaton single_state(bool accept) {
  ClassicalAutomatonBuilder b({"a", "b"}, HaltingMode::end_of_word);
  b.add_state("s", accept ? HaltClass::accepting : HaltClass::non_halting);
  b.transition("s", "a", "s").transition("s", "b", "s");
  return b.start("s").build();
}

ClassicalAutomaton parity_dfa() {
  ClassicalAutomatonBuilder b({"a"}, HaltingMode::end_of_word);
  b.add_state("even");
  b.add_state("odd", HaltClass::accepting);
  b.transition("even", "a", "odd").transition("odd", "a", "even");
  return b.start("even").build();
}

// Redundant copy of a*b* with duplicated states.
ClassicalAutomaton astar_bstar_bloated() {
  ClassicalAutomatonBuilder b({"a", "b"}, HaltingMode::end_of_word);
  b.add_state("a1", HaltClass::accepting);
  b.add_state("a2", HaltClass::accepting);
  b.add_state("b1", HaltClass::accepting);
  b.add_state("d1");
  b.add_state("d2");
  b.add_state("island", HaltClass::accepting);
  b.transition("a1", "a", "a2").transition("a1", "b", "b1");
  b.transition("a2", "a", "a1").transition("a2", "b", "b1");
  b.transition("b1", "a", "d1").transition("b1", "b", "b1");
  b.transition("d1", "a", "d2").transition("d1", "b", "d2");
  b.transition("d2", "a", "d1").transition("d2", "b", "d1");
  b.transition("island", "a", "island").transition("island", "b", "island");
  return b.start("a1").build();
}

}  // namespace

TEST(Minimize, MergesEquivalentAndDropsUnreachable) {
  const auto m = minimize_dfa(astar_bstar_bloated());
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m.states, (std::vector<std::string>{"a1", "b1", "d1"}));
  EXPECT_TRUE(dfa_equivalent(m, astar_bstar_dfa()).equivalent);
}

TEST(Minimize, AgreesWithMooreRefinement) {
  Rng rng(42);
  for (int i = 0; i < 300; ++i) {
    const auto t = oracle::random_table(rng, 2 + rng.uniform_int(0, 5), 2);
    const auto c = oracle::automaton_of(t, {"a", "b"});
    const auto m = minimize_dfa(c);
    EXPECT_EQ(m.size(), oracle::minimal_size(t));
    EXPECT_EQ(oracle::signature(oracle::table_of(m), 8), oracle::signature(t, 8));
    const auto again = minimize_dfa(m);
    EXPECT_EQ(again.states, m.states);
    EXPECT_EQ(again.transitions, m.transitions);
  }
}

TEST(Minimize, AcceptsHaltOnEnterInput) {
  const auto rfa = parity_prfa_trio().rfas[0];
  const auto m = minimize_dfa(rfa);
  EXPECT_EQ(m.mode, HaltingMode::end_of_word);
  for (std::size_t len = 0; len < 8; ++len) {
    EXPECT_EQ(run_dfa(m, repeat("a", len)), run_dfa(rfa, repeat("a", len)));
  }
}

TEST(Tendencies, ClassifiesBySuffixes) {
  const auto t = classify_tendencies(astar_bstar_dfa());
  EXPECT_EQ(t[0], Tendency::mixed);
  EXPECT_EQ(t[1], Tendency::mixed);
  EXPECT_EQ(t[2], Tendency::all_rejecting);
  EXPECT_EQ(classify_tendencies(single_state(true))[0], Tendency::all_accepting);
}

TEST(ForbiddenConstruction, FoundOnAstarBstar) {
  const auto min = minimize_dfa(astar_bstar_dfa());
  const auto w = find_forbidden_construction(min);
  ASSERT_TRUE(w);
  EXPECT_EQ(min.states[w->q1], "qa");
  EXPECT_EQ(min.states[w->q2], "qb");
  EXPECT_EQ(w->x, (Word{"b"}));
  EXPECT_TRUE(verify_forbidden_construction(min, *w));

  const auto w2 = find_prfa_forbidden_construction(min);
  ASSERT_TRUE(w2);
  EXPECT_EQ(w2->x, (Word{"a"}));
  EXPECT_EQ(*w2->y, (Word{"b"}));
  EXPECT_TRUE(verify_prfa_forbidden_construction(min, *w2));
}

TEST(ForbiddenConstruction, AbsentOnReversibleLanguages) {
  for (const auto& c : {single_state(true), single_state(false), parity_dfa()}) {
    const auto min = minimize_dfa(c);
    EXPECT_FALSE(find_forbidden_construction(min));
    EXPECT_FALSE(find_prfa_forbidden_construction(min));
  }
}

TEST(ForbiddenConstruction, VerifierRejectsBadWitness) {
  const auto min = minimize_dfa(astar_bstar_dfa());
  EXPECT_FALSE(verify_forbidden_construction(min, {0, 1, {"a"}, std::nullopt}));
  EXPECT_FALSE(verify_forbidden_construction(min, {1, 1, {"b"}, std::nullopt}));
  EXPECT_FALSE(verify_prfa_forbidden_construction(min, {0, 1, {"a"}, std::nullopt}));
}

TEST(Monoid, ShortlexWitnessesAndCap) {
  const auto m = transition_monoid(minimize_dfa(astar_bstar_dfa()));
  ASSERT_EQ(m.size(), 5u);  // 1, a, b, ab, ba
  EXPECT_TRUE(m[0].witness.empty());
  EXPECT_EQ(m[1].witness, (Word{"a"}));
  EXPECT_EQ(m[2].witness, (Word{"b"}));
  EXPECT_EQ(m[3].witness, (Word{"a", "b"}));
  EXPECT_EQ(m[4].witness, (Word{"b", "a"}));
  EXPECT_EQ(m[4].mapping, (std::vector<StateId>{2, 2, 2}));
  EXPECT_THROW(transition_monoid(lm_dfa(3), 5), CapacityError);
  EXPECT_THROW(find_prfa_forbidden_construction(lm_dfa(3), 5), CapacityError);
}

TEST(Reversibilize, ParityIsUnchanged) {
  const auto min = minimize_dfa(parity_dfa());
  const auto rfa = reversibilize(min);
  EXPECT_EQ(rfa.mode, HaltingMode::halt_on_enter);
  EXPECT_EQ(rfa.non_halting_count(), min.size());
  EXPECT_TRUE(is_reversible(rfa).reversible);
  EXPECT_TRUE(dfa_equivalent(min, rfa).equivalent);
}

TEST(Reversibilize, ConstantLanguagesGiveTwoStates) {
  for (bool accept : {true, false}) {
    const auto rfa = reversibilize(minimize_dfa(single_state(accept)));
    EXPECT_EQ(rfa.size(), 2u);
    EXPECT_EQ(run_dfa(rfa, {"a", "b"}), accept);
  }
}

TEST(Reversibilize, ForbiddenConstructionThrows) {
  EXPECT_THROW(reversibilize(minimize_dfa(astar_bstar_dfa())), ForbiddenConstructionError);
}

TEST(Reversibilize, RandomReversibleCandidates) {
  Rng rng(5);
  int converted = 0;
  for (int i = 0; i < 400; ++i) {
    const auto t = oracle::random_table(rng, 2 + rng.uniform_int(0, 3), 2);
    const auto min = minimize_dfa(oracle::automaton_of(t, {"a", "b"}));
    if (find_forbidden_construction(min)) {
      EXPECT_THROW(reversibilize(min), ForbiddenConstructionError);
      continue;
    }
    const auto rfa = reversibilize(min);
    EXPECT_TRUE(is_reversible(rfa).reversible);
    const auto eq = dfa_equivalent(min, rfa);
    EXPECT_TRUE(eq.equivalent);
    ++converted;
  }
  EXPECT_GT(converted, 20);
}

TEST(Equivalence, ShortestCounterexample) {
  const auto eq = dfa_equivalent(astar_bstar_dfa(), single_state(true));
  EXPECT_FALSE(eq.equivalent);
  EXPECT_EQ(*eq.counterexample, (Word{"b", "a"}));
  const auto self = dfa_equivalent(astar_bstar_dfa(), astar_bstar_bloated());
  EXPECT_TRUE(self.equivalent);
  EXPECT_FALSE(self.counterexample);
  EXPECT_THROW(dfa_equivalent(parity_dfa(), single_state(true)), InvalidArgument);
}

TEST(Equivalence, AlphabetOrderDoesNotMatter) {
  ClassicalAutomatonBuilder b({"b", "a"}, HaltingMode::end_of_word);
  b.add_state("s", HaltClass::accepting);
  b.transition("s", "a", "s").transition("s", "b", "s");
  EXPECT_TRUE(dfa_equivalent(b.start("s").build(), single_state(true)).equivalent);
}
