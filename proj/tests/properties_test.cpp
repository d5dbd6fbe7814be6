#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfa/constructions.hpp"
#include "qfa/semantics.hpp"

using namespace qfa;

namespace {

StateVector random_unit(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  double norm = 0;
  for (auto& x : v) {
    x = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return StateVector(std::move(v));
}

Word random_word(Rng& rng, const Alphabet& a, std::size_t max_len) {
  Word w;
  const std::size_t len = rng.uniform_int(0, max_len);
  for (std::size_t i = 0; i < len; ++i) w.push_back(a.symbols()[rng.uniform_int(0, a.size() - 1)]);
  return w;
}

std::vector<QuantumAutomaton> corpus() {
  return {example_qfa(), astar_bstar_qfa(), modp_qfa(13, 1).automaton, amplified_rotation(11, 4, 3),
          prfa_to_qfa(parity_prfa_trio().prfa)};
}

}  // namespace

TEST(Property, OperatorsPreserveNorm) {
  Rng rng(1);
  for (const auto& q : corpus()) {
    for (const auto& u : q.unitaries) {
      for (int i = 0; i < 20; ++i) {
        const auto v = random_unit(rng, q.dimension());
        EXPECT_NEAR(apply(u, v).norm_squared(), 1.0, 1e-9);
      }
    }
  }
}

TEST(Property, ProbabilityIsConservedAtEveryStep) {
  Rng rng(2);
  for (const auto& q : corpus()) {
    for (int i = 0; i < 50; ++i) {
      KwSimulator sim(q);
      for (auto w : q.alphabet.encode(random_word(rng, q.alphabet, 30))) {
        sim.step(w);
        const double total = sim.p_acc() + sim.p_rej() + sim.residual().norm_squared();
        EXPECT_NEAR(total, 1.0, 1e-9);
      }
    }
  }
}

// If two states are within euclidean distance eps, every measurement
// sequence produces outcome distributions within variational distance 4 eps.
TEST(Property, CloseStatesGiveCloseOutcomes) {
  Rng rng(3);
  const auto q = modp_qfa(13, 0).automaton;
  const auto part = q.partition();
  for (int trial = 0; trial < 10000; ++trial) {
    const auto psi = random_unit(rng, q.dimension());
    auto phi = psi;
    const double scale = std::pow(10.0, -3.0 * rng.uniform01());
    const auto noise = random_unit(rng, q.dimension());
    for (std::size_t i = 0; i < q.dimension(); ++i) phi[i] += scale * noise[i];
    const double norm = std::sqrt(phi.norm_squared());
    for (std::size_t i = 0; i < q.dimension(); ++i) phi[i] /= norm;
    double eps2 = 0;
    for (std::size_t i = 0; i < q.dimension(); ++i) eps2 += std::norm(psi[i] - phi[i]);
    const double eps = std::sqrt(eps2);

    const std::size_t len = rng.uniform_int(0, 6);
    std::vector<std::size_t> letters;
    for (std::size_t i = 0; i < len; ++i) letters.push_back(1);
    letters.push_back(q.alphabet.right_end());
    OutcomeDistribution a{0, 0, 0}, b{0, 0, 0};
    StateVector x = psi, y = phi;
    for (auto w : letters) {
      const auto mx = measure(apply(q.unitary(w), x), part);
      const auto my = measure(apply(q.unitary(w), y), part);
      a.p_acc += mx.probabilities.p_acc;
      a.p_rej += mx.probabilities.p_rej;
      b.p_acc += my.probabilities.p_acc;
      b.p_rej += my.probabilities.p_rej;
      x = mx.non_halting;
      y = my.non_halting;
    }
    a.p_non = x.norm_squared();
    b.p_non = y.norm_squared();
    EXPECT_LE(tv_distance(a, b), 4.0 * eps + 1e-12);
  }
}

TEST(Property, TraceIsPrefixConsistent) {
  Rng rng(4);
  for (const auto& q : corpus()) {
    for (int i = 0; i < 30; ++i) {
      const auto w = random_word(rng, q.alphabet, 12);
      const auto full = run_kw(q, w);
      ASSERT_EQ(full.trace.size(), w.size() + 2);
      for (std::size_t cut = 0; cut <= w.size(); ++cut) {
        KwSimulator sim(q);
        const Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
        for (auto s : q.alphabet.encode_input(prefix)) sim.step(s);
        EXPECT_EQ(sim.p_acc(), full.trace[cut].p_acc);
        EXPECT_EQ(sim.p_rej(), full.trace[cut].p_rej);
        if (cut > 0) {
          EXPECT_GE(full.trace[cut].p_acc, full.trace[cut - 1].p_acc);
          EXPECT_GE(full.trace[cut].p_rej, full.trace[cut - 1].p_rej);
        }
      }
      EXPECT_EQ(full.trace.back().p_acc, full.p_acc);
    }
  }
}

TEST(Property, MeasureOnceAgreesWhenNothingHaltsEarly) {
  // Rotation automata only halt on the right endmarker.
  for (std::uint64_t k = 1; k < 7; ++k) {
    const auto q = rotation_automaton(7, k);
    for (std::size_t j = 0; j <= 20; ++j) {
      const auto once = run_measure_once(q, repeat("a", j));
      const auto many = run_kw(q, repeat("a", j));
      EXPECT_NEAR(once.p_acc, many.p_acc, 1e-12);
      EXPECT_NEAR(once.p_rej, many.p_rej, 1e-12);
    }
  }
}

TEST(Property, ChainMatchesProbabilisticRun) {
  Rng rng(9);
  std::vector<ProbabilisticAutomaton> samples{parity_prfa_trio().prfa};
  for (int i = 0; i < 10; ++i) samples.push_back(oracle::random_prfa(rng, 2 + rng.uniform_int(0, 3)));
  for (const auto& p : samples) {
    ASSERT_TRUE(validate(p).empty());
    const auto q = prfa_to_qfa(p);
    ASSERT_TRUE(validate(q).empty());
    for (const auto& w : oracle::words_up_to(p.alphabet.symbols(), 8)) {
      const auto a = run_prfa(p, w);
      const auto b = run_kw(q, w);
      EXPECT_NEAR(a.p_acc, b.p_acc, 1e-9);
      EXPECT_NEAR(a.p_rej, b.p_rej, 1e-9);
    }
  }
}

TEST(Property, DenseOracleOnRandomWords) {
  Rng rng(6);
  for (const auto& q : corpus()) {
    for (int i = 0; i < 20; ++i) {
      const auto w = random_word(rng, q.alphabet, 10);
      const auto r = run_kw(q, w);
      const auto o = oracle::dense_kw(q, w);
      EXPECT_NEAR(r.p_acc, o.acc, 1e-12);
      EXPECT_NEAR(r.p_rej, o.rej, 1e-12);
    }
  }
}
