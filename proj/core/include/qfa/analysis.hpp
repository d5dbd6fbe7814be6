#pragma once

// Minimal-DFA machinery and structural decision procedures on minimal
// automata: the forbidden construction that caps measure-many QFAs, the
// stronger one that caps probabilistic-reversible automata, transformation
// into a reversible automaton, and language equivalence.

#include <cstddef>
#include <optional>
#include <vector>

#include "qfa/automata.hpp"

namespace qfa {

inline constexpr std::size_t kDefaultMonoidCap = 100000;

/// Whether every continuation from a state is accepted, rejected, or neither.
enum class Tendency { mixed, all_accepting, all_rejecting };

/// Decided by reachability on a plain automaton.
std::vector<Tendency> classify_tendencies(const ClassicalAutomaton& plain);

/// States q1, q2 and words witnessing a forbidden construction.
struct ConstructionWitness {
  StateId q1;
  StateId q2;
  Word x;
  std::optional<Word> y;
};

struct MonoidElement {
  std::vector<StateId> mapping;
  Word witness;  ///< shortlex-least word inducing `mapping`
};

/// Halt-on-enter input is converted to end-of-word form first. Unreachable
/// states are dropped; states are ordered by BFS from the start and each
/// class keeps the name of its BFS-earliest member.
ClassicalAutomaton minimize_dfa(const ClassicalAutomaton& c);

/// Equivalent plain automaton for a halt-on-enter one (identity on plain input).
ClassicalAutomaton to_end_of_word(const ClassicalAutomaton& c);

/// Looks for q1 != q2 and x with q1.x = q2, q2.x = q2 and q2 mixed. Pairs are
/// tried in (q1, q2) order; x is the shortlex-least shortest such word.
std::optional<ConstructionWitness> find_forbidden_construction(const ClassicalAutomaton& min);

/// Looks for mixed q1, q2 and words x, y with q1.x = q1, q1.y = q2, q2.y = q2
/// and q2 never returning to itself under powers of x. Enumerates the
/// transition monoid; throws CapacityError above `monoid_cap` elements.
std::optional<ConstructionWitness> find_prfa_forbidden_construction(
    const ClassicalAutomaton& min, std::size_t monoid_cap = kDefaultMonoidCap);

bool verify_forbidden_construction(const ClassicalAutomaton& c, const ConstructionWitness& w);
bool verify_prfa_forbidden_construction(const ClassicalAutomaton& c, const ConstructionWitness& w);

/// Identity first, then shortlex order of witnesses.
std::vector<MonoidElement> transition_monoid(const ClassicalAutomaton& c,
                                             std::size_t cap = kDefaultMonoidCap);

/// Removes non-reversibilities one maximal tuple at a time by duplicating the
/// target and everything reachable from it, then converts the result to a
/// halt-on-enter RFA. States from which every continuation is accepted
/// (rejected) become accepting (rejecting) halting states. Throws
/// ForbiddenConstructionError when no reversible automaton exists.
ClassicalAutomaton reversibilize(const ClassicalAutomaton& min);

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<Word> counterexample;  ///< shortest distinguishing word
};

/// Throws InvalidArgument when the input alphabets differ as sets.
EquivalenceResult dfa_equivalent(const ClassicalAutomaton& a, const ClassicalAutomaton& b);

/// State reached from q on an input word in a plain automaton.
StateId replay(const ClassicalAutomaton& plain, StateId q, const Word& word);

}  // namespace qfa
