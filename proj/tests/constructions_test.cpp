#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qfa/analysis.hpp"
#include "qfa/constructions.hpp"
#include "qfa/error.hpp"
#include "qfa/semantics.hpp"

using namespace qfa;

namespace {

bool in_astar_bstar(const Word& w) {
  bool seen_b = false;
  for (const auto& s : w) {
    if (s == "b") seen_b = true;
    else if (seen_b) return false;
  }
  return true;
}

void expect_counts_modulo(const ModularCounter& m, std::size_t max_j, double reject_bound) {
  KwSimulator sim(m.automaton);
  const std::size_t a = *m.automaton.alphabet.working_index("a");
  const std::size_t end = m.automaton.alphabet.right_end();
  sim.step(0);
  for (std::size_t j = 0; j <= max_j; ++j) {
    if (j > 0) sim.step(a);
    KwSimulator done = sim;
    done.step(end);
    if (j % m.p == 0) {
      EXPECT_NEAR(done.p_acc(), 1.0, 1e-9) << "j=" << j;
    } else {
      EXPECT_GE(done.p_rej(), reject_bound - 1e-9) << "j=" << j;
    }
  }
}

}  // namespace

TEST(WorkedExample, IsValid) {
  const auto q = example_qfa();
  EXPECT_TRUE(validate(q).empty());
  EXPECT_EQ(q.non_halting_count(), 2u);
}

TEST(CubicRoot, MatchesNewton) {
  const double p = cubic_root_constant();
  EXPECT_NEAR(p, oracle::cubic_root(), 1e-14);
  EXPECT_NEAR(p * p * p + p, 1.0, 1e-14);
}

TEST(AstarBstar, ExactOnMembersAndBoundedOnOthers) {
  const auto q = astar_bstar_qfa();
  const double p = oracle::cubic_root();
  ASSERT_TRUE(validate(q).empty());
  for (const auto& w : oracle::words_up_to({"a", "b"}, 8)) {
    const auto r = run_kw(q, w);
    if (in_astar_bstar(w)) {
      EXPECT_NEAR(r.p_acc, p, 1e-9) << format_word(w);
    } else {
      EXPECT_GE(r.p_rej, p - 1e-9) << format_word(w);
    }
  }
}

TEST(Rotation, AmplitudesFollowClosedForm) {
  for (std::uint64_t p : {5u, 7u, 13u}) {
    for (std::uint64_t k = 1; k < p; ++k) {
      const auto q = rotation_automaton(p, k);
      ASSERT_TRUE(validate(q).empty());
      const auto q0 = *q.state_index("q0");
      const auto q1 = *q.state_index("q1");
      KwSimulator sim(q);
      sim.step(0);
      for (std::uint64_t j = 0; j <= 3 * p; ++j) {
        if (j > 0) sim.step(1);
        const auto [c, s] = oracle::rotation_state(p, k, j);
        EXPECT_NEAR(std::abs(sim.residual()[q0] - c), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(sim.residual()[q1] - s), 0.0, 1e-12);
      }
    }
  }
}

TEST(Rotation, RejectionIsSineSquared) {
  const std::uint64_t p = 11;
  for (std::uint64_t k = 1; k < p; ++k) {
    for (std::uint64_t j = 0; j < 2 * p; ++j) {
      const auto r = run_kw(rotation_automaton(p, k), repeat("a", j));
      const double s = std::sin(2.0 * std::numbers::pi * static_cast<double>(j * k) / p);
      EXPECT_NEAR(r.p_rej, s * s, 1e-12);
      EXPECT_NEAR(r.p_acc + r.p_rej, 1.0, 1e-12);
    }
  }
}

TEST(GoodCoefficients, HalfOfThemForSeventeen) {
  const std::uint64_t p = 17;
  for (std::uint64_t j = 1; j < p; ++j) {
    std::size_t good = 0, brute = 0;
    for (std::uint64_t k = 1; k < p; ++k) {
      good += is_good_coefficient(p, k, j);
      const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(j * k) / p);
      brute += c * c <= 0.5;
    }
    EXPECT_EQ(good, 8u) << "j=" << j;
    EXPECT_EQ(brute, 8u) << "j=" << j;
  }
  EXPECT_THROW(is_good_coefficient(p, 1, 17), InvalidArgument);
  EXPECT_THROW(is_good_coefficient(p, 0, 1), InvalidArgument);
}

TEST(GoodSequence, SearchIsSeededAndVerified) {
  const auto s = find_good_sequence(31, 0);
  EXPECT_EQ(s.length(), good_sequence_length(31));
  EXPECT_EQ(s.length(), 28u);
  EXPECT_TRUE(s.verify());
  EXPECT_EQ(find_good_sequence(31, 0).coefficients, s.coefficients);
  EXPECT_THROW(find_good_sequence(4, 0), InvalidArgument);
}

TEST(Amplified, TensorBlockIsValidAndSquaresRejection) {
  const auto q = amplified_rotation(7, 2, 3);
  EXPECT_TRUE(validate(q).empty());
  EXPECT_EQ(q.non_halting_count(), 8u);
  for (std::uint64_t j = 0; j < 14; ++j) {
    const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(2 * j) / 7);
    EXPECT_NEAR(run_kw(q, repeat("a", j)).p_acc, std::pow(c * c, 3), 1e-12);
  }
}

TEST(ModularCounter, BaseConstructionForThirtyOne) {
  const auto m = modp_qfa(31, 0);
  EXPECT_TRUE(validate(m.automaton).empty());
  EXPECT_EQ(m.automaton.non_halting_count(), 57u);
  expect_counts_modulo(m, 62, 1.0 / 8.0);
}

TEST(ModularCounter, StateCountsBelowPForLargerPrimes) {
  EXPECT_EQ(modp_qfa(59, 0).automaton.non_halting_count(), 1 + 2 * good_sequence_length(59));
  const auto m = modp_qfa(97, 0);
  EXPECT_LT(m.automaton.non_halting_count(), 97u);
  expect_counts_modulo(m, 97, 1.0 / 8.0);
}

TEST(ModularCounter, AmplifiedReachesEpsilon) {
  const auto m = modp_qfa_amplified(31, 0.6, 0);
  EXPECT_TRUE(validate(m.automaton).empty());
  expect_counts_modulo(m, 62, 0.4);
  EXPECT_THROW(modp_qfa_amplified(31, 0.0, 0), InvalidArgument);
}

TEST(Equality, AcceptsOnlyTheTargetLength) {
  const auto e = equality_qfa(20, 0.5, 60, 0);
  EXPECT_TRUE(validate(e.automaton).empty());
  EXPECT_GE(e.worst_rejection, 0.5);
  KwSimulator sim(e.automaton);
  sim.step(0);
  for (std::uint64_t n = 0; n <= 60; ++n) {
    if (n > 0) sim.step(1);
    KwSimulator done = sim;
    done.step(2);
    if (n == 20) {
      EXPECT_NEAR(done.p_acc(), 1.0, 1e-9);
    } else {
      EXPECT_GE(done.p_rej(), 0.5 - 1e-9) << "N=" << n;
    }
  }
}

TEST(Lm, SizesMinimalityAndBlowup) {
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto d = lm_dfa(m);
    EXPECT_EQ(d.size(), 3 * m + 2);
    EXPECT_EQ(minimize_dfa(d).size(), d.size());
    EXPECT_FALSE(find_forbidden_construction(d));
    const auto rfa = reversibilize(d);
    EXPECT_TRUE(is_reversible(rfa).reversible);
    EXPECT_TRUE(dfa_equivalent(d, rfa).equivalent);
    EXPECT_GE(rfa.size(), 3 * ((std::size_t{1} << m) - 1));
  }
}

TEST(ParityTrio, MajorityAndMixture) {
  const auto trio = parity_prfa_trio();
  EXPECT_TRUE(validate(trio.prfa).empty());
  for (std::size_t n = 0; n <= 40; ++n) {
    const bool member = n % 2 == 1 && n >= 3;
    int votes = 0;
    for (const auto& r : trio.rfas) votes += run_dfa(r, repeat("a", n));
    EXPECT_EQ(votes >= 2, member) << n;
    const auto out = run_prfa(trio.prfa, repeat("a", n));
    EXPECT_GE(member ? out.p_acc : out.p_rej, 2.0 / 3.0 - 1e-12) << n;
  }
  const auto min = minimize_dfa(trio.rfas[0]);
  EXPECT_FALSE(find_forbidden_construction(min));
}
