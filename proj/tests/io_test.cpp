#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "qfa/constructions.hpp"
#include "qfa/error.hpp"
#include "qfa/io.hpp"
#include "qfa/semantics.hpp"

using namespace qfa;

namespace {

template <typename A>
A round_trip(const A& a) {
  const auto text = serialize_automaton({a, {}});
  return std::get<A>(parse_automaton(text).automaton);
}

std::string printed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

}  // namespace

TEST(RoundTrip, QuantumRunsAreIdentical) {
  const QuantumAutomaton samples[] = {example_qfa(), astar_bstar_qfa(), modp_qfa(13, 0).automaton,
                                      amplified_rotation(7, 3, 2)};
  for (const auto& q : samples) {
    const auto back = round_trip(q);
    EXPECT_EQ(back.states, q.states);
    for (std::size_t w = 0; w < q.unitaries.size(); ++w) EXPECT_EQ(back.unitaries[w], q.unitaries[w]);
    for (const auto& word : oracle::words_up_to(q.alphabet.symbols(), 4)) {
      const auto a = run_kw(q, word);
      const auto b = run_kw(back, word);
      EXPECT_EQ(printed(a.p_acc), printed(b.p_acc));
      EXPECT_EQ(a.p_acc, b.p_acc);
      EXPECT_EQ(a.p_rej, b.p_rej);
    }
  }
}

TEST(RoundTrip, ClassicalAndProbabilistic) {
  const auto trio = parity_prfa_trio();
  const auto lm = lm_dfa(2);
  const auto rfa = round_trip(trio.rfas[1]);
  EXPECT_EQ(rfa.mode, HaltingMode::halt_on_enter);
  EXPECT_EQ(rfa.transitions, trio.rfas[1].transitions);
  EXPECT_EQ(rfa.classes, trio.rfas[1].classes);
  const auto dfa = round_trip(lm);
  EXPECT_EQ(dfa.mode, HaltingMode::end_of_word);
  EXPECT_EQ(dfa.transitions, lm.transitions);
  const auto prfa = round_trip(trio.prfa);
  EXPECT_EQ(prfa.transitions, trio.prfa.transitions);
  EXPECT_EQ(prfa.initial, trio.prfa.initial);
}

TEST(RoundTrip, SerializationIsStable) {
  const AutomatonFile f{astar_bstar_qfa(), {{"p", cubic_root_constant()}}};
  const auto text = serialize_automaton(f);
  const auto back = parse_automaton(text);
  EXPECT_EQ(serialize_automaton(back), text);
  EXPECT_EQ(back.metadata.at("p"), cubic_root_constant());
  EXPECT_EQ(back.kind(), AutomatonKind::qfa);
}

TEST(Files, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "qfa_io_test_lm.json";
  save_automaton({lm_dfa(1), {}}, path);
  const auto f = load_automaton(path);
  EXPECT_EQ(f.kind(), AutomatonKind::dfa);
  EXPECT_TRUE(validate(f).empty());
  std::filesystem::remove(path);
  EXPECT_THROW(load_automaton(path), Error);
}

TEST(Parse, PartialOperatorsAreCompleted) {
  const auto f = parse_automaton(R"({
    "format_version": 1, "kind": "qfa",
    "states": ["q0", "q1", "acc", "rej"], "alphabet": ["a"],
    "accepting": ["acc"], "rejecting": ["rej"],
    "initial": {"q0": 1},
    "transitions": {
      "a": {"q0": {"q0": 0.5, "q1": 0.5, "rej": 0.7071067811865476},
            "q1": {"q0": 0.5, "q1": 0.5, "rej": -0.7071067811865476}},
      "$": {"q0": {"rej": [1, 0]}, "q1": {"acc": 1}}
    }
  })");
  const auto& q = std::get<QuantumAutomaton>(f.automaton);
  EXPECT_TRUE(validate(q).empty());
  EXPECT_NEAR(run_kw(q, {"a", "a"}).p_acc, 0.25, 1e-12);
}

TEST(Parse, ReportsMalformedInput) {
  EXPECT_THROW(parse_automaton("{"), ParseError);
  EXPECT_THROW(parse_automaton(R"({"kind": "dfa"})"), ParseError);
  EXPECT_THROW(parse_automaton(R"({"format_version": 2, "kind": "dfa"})"), ParseError);
  EXPECT_THROW(parse_automaton(R"({"format_version": 1, "kind": "nfa", "states": []})"), ParseError);
  EXPECT_THROW(parse_automaton(R"({"format_version": 1, "kind": "dfa", "states": ["s"],
      "alphabet": ["a"], "start": "t"})"),
               ParseError);
  EXPECT_THROW(parse_automaton(R"({"format_version": 1, "kind": "dfa", "states": ["s"],
      "alphabet": ["a"], "start": "s", "transitions": {"s": {"b": "s"}}})"),
               Error);
}

TEST(Parse, ContentIsNotValidatedUntilAsked) {
  const auto f = parse_automaton(R"({"format_version": 1, "kind": "dfa", "states": ["s", "t"],
      "alphabet": ["a"], "start": "s", "transitions": {"s": {"a": "t"}}})");
  EXPECT_FALSE(validate(f).empty());
}
