#pragma once

// Generators for concrete automata: small worked examples, rotation
// automata for counting modulo a prime, their amplified and composite
// forms, the equality recognizer, a family of DFAs whose reversible form
// is exponentially larger, and a probabilistic-reversible parity example.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qfa/automata.hpp"

namespace qfa {

/// Four states; V_a and V_$ are given on q0 and q1 only, the rest is completed.
QuantumAutomaton example_qfa();

/// Root of p^3 + p = 1, by bisection.
double cubic_root_constant();

/// Recognizes a*b* with probability cubic_root_constant().
QuantumAutomaton astar_bstar_qfa();

bool is_prime(std::uint64_t n);

/// Coefficient k is good for a^j when cos^2(2 pi j k / p) <= 1/2.
/// Throws InvalidArgument when p divides j or the arguments are out of range.
bool is_good_coefficient(std::uint64_t p, std::uint64_t k, std::uint64_t j);

/// Four-state automaton rotating by 2 pi k / p on every a.
QuantumAutomaton rotation_automaton(std::uint64_t p, std::uint64_t k);

/// d-fold tensor power of the rotation automaton: 2^d non-halting states
/// labelled by bit strings, one accepting state for the all-zero string and
/// a separate rejecting state for every other string.
QuantumAutomaton amplified_rotation(std::uint64_t p, std::uint64_t k, std::size_t d);

inline constexpr std::size_t kMaxAmplification = 20;
inline constexpr std::size_t kSequenceAttempts = 1000;

struct GoodSequence {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> coefficients;

  std::size_t length() const noexcept { return coefficients.size(); }
  /// Smallest fraction of good coefficients over j in 1..p-1.
  double min_good_fraction() const;
  bool verify() const { return min_good_fraction() >= 0.25; }
};

/// ceil(8 ln p)
std::size_t good_sequence_length(std::uint64_t p);

/// Samples coefficients uniformly until every j has at least a quarter good.
/// Throws SearchFailure after kSequenceAttempts samples.
GoodSequence find_good_sequence(std::uint64_t p, std::uint64_t seed);

/// Smallest d such that, for every j, at least 1 - delta of the coefficients
/// k satisfy cos^(2d)(2 pi j k / p) <= delta.
std::size_t choose_amplification(std::uint64_t p, double delta);

struct ModularCounter {
  QuantumAutomaton automaton;
  std::uint64_t p = 0;
  std::vector<std::uint64_t> coefficients;
  std::size_t amplification = 1;
};

/// Distinguished start state plus one rotation block per coefficient of a
/// good sequence; the left endmarker spreads amplitude evenly over blocks.
/// Accepts a^j with certainty when p | j and rejects otherwise with
/// probability at least 1/8.
ModularCounter modp_qfa(std::uint64_t p, std::uint64_t seed);

/// Composite of amplified blocks with error at most epsilon on non-multiples.
ModularCounter modp_qfa_amplified(std::uint64_t p, double epsilon, std::uint64_t seed);

struct EqualityRecognizer {
  QuantumAutomaton automaton;
  std::vector<std::uint64_t> primes;
  std::vector<std::vector<std::uint64_t>> coefficients;  ///< per prime
  std::size_t amplification = 1;
  double worst_rejection = 0.0;  ///< closed-form minimum over N <= n_max, N != n
};

/// Total non-halting states the equality search may use.
inline constexpr std::size_t kEqualityStateBudget = 1u << 16;

/// Accepts a^n with certainty and rejects every other a^N with N <= n_max
/// with probability at least 1 - epsilon. Throws CapacityError when no
/// design within kEqualityStateBudget reaches that bound.
EqualityRecognizer equality_qfa(std::uint64_t n, double epsilon, std::uint64_t n_max,
                                std::uint64_t seed);

/// Minimal DFA over {x, y, z} for (xy|zy)^m together with (xy|zy)^i xx, i < m.
ClassicalAutomaton lm_dfa(std::size_t m);

struct ParityTrio {
  std::array<ClassicalAutomaton, 3> rfas;
  ProbabilisticAutomaton prfa;  ///< uniform mixture of the three
};

/// Three reversible automata over {a} whose majority recognizes odd lengths
/// of at least 3; the mixture is correct with probability at least 2/3.
ParityTrio parity_prfa_trio();

}  // namespace qfa
