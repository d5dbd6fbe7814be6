#pragma once

// Data model for 1-way automata: quantum (measure-many), deterministic,
// reversible and probabilistic-reversible, plus the RFA -> PRFA -> QFA chain.

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfa/linalg.hpp"

namespace qfa {

using StateId = std::size_t;
using Symbol = std::string;
using Word = std::vector<Symbol>;

inline constexpr std::string_view kLeftEnd = "^";
inline constexpr std::string_view kRightEnd = "$";
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Input alphabet plus the two endmarkers. Working indices are laid out as
/// 0 = left endmarker, 1..n = input symbols in order, n+1 = right endmarker.
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws InvalidArgument on duplicates, empty names or endmarker names.
  explicit Alphabet(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  std::size_t working_size() const noexcept { return symbols_.size() + 2; }

  static constexpr std::size_t left_end() noexcept { return 0; }
  std::size_t right_end() const noexcept { return symbols_.size() + 1; }
  /// Working index of an input symbol (1-based), or nullopt.
  std::optional<std::size_t> index_of(std::string_view symbol) const;
  /// Accepts input symbols and the endmarker names.
  std::optional<std::size_t> working_index(std::string_view symbol) const;
  std::string_view working_symbol(std::size_t working) const;

  /// Endmarkers are added; throws UnknownSymbolError for symbols outside Σ.
  std::vector<std::size_t> encode(const Word& word) const;
  /// Same as encode, without the endmarkers.
  std::vector<std::size_t> encode_input(const Word& word) const;

  /// Splits on ',' or whitespace when present, otherwise per character when
  /// every symbol is one character long, otherwise the whole text is a symbol.
  Word parse_word(std::string_view text) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Symbol> symbols_;
};

std::string format_word(const Word& word);
Word repeat(std::string_view symbol, std::size_t times);

struct Violation {
  enum class Kind { dimension, unitarity, normalization, partition, probability, reversibility, structure };
  Kind kind;
  std::string message;
  double magnitude = 0.0;
};

struct QuantumAutomaton {
  std::vector<std::string> states;
  Alphabet alphabet;
  std::vector<StateId> accepting;
  std::vector<StateId> rejecting;
  StateVector initial;
  /// One operator per working index.
  std::vector<SquareMatrix> unitaries;

  std::size_t dimension() const noexcept { return states.size(); }
  const SquareMatrix& unitary(std::size_t working) const { return unitaries.at(working); }
  std::optional<StateId> state_index(std::string_view name) const;
  /// Throws InvalidArgument if the halting sets overlap.
  Partition partition() const;
  std::size_t non_halting_count() const;
};

std::vector<Violation> validate(const QuantumAutomaton& q, double tol = kDefaultTolerance);

/// Assembles a QuantumAutomaton from partially specified operators. Images
/// left unspecified are filled by complete_unitary; a symbol with no images
/// at all gets the identity.
class QuantumAutomatonBuilder {
 public:
  QuantumAutomatonBuilder(std::vector<std::string> states, std::vector<Symbol> alphabet);

  QuantumAutomatonBuilder& accepting(std::string_view state);
  QuantumAutomatonBuilder& rejecting(std::string_view state);
  QuantumAutomatonBuilder& accepting(StateId state);
  QuantumAutomatonBuilder& rejecting(StateId state);
  QuantumAutomatonBuilder& initial(std::string_view state, Complex amplitude);
  QuantumAutomatonBuilder& initial(StateVector v);

  /// V_symbol(|from>) = sum of amplitude * |to>.
  QuantumAutomatonBuilder& image(std::string_view symbol, std::string_view from,
                                 const std::vector<std::pair<std::string, Complex>>& targets);
  QuantumAutomatonBuilder& image(std::string_view symbol, StateId from,
                                 std::vector<MatrixEntry> targets);
  /// A complete operator; taken as-is (validate() still checks it).
  QuantumAutomatonBuilder& matrix(std::string_view symbol, SquareMatrix m);

  QuantumAutomaton build(double tol = kDefaultTolerance) const;

 private:
  StateId require_state(std::string_view name) const;
  std::size_t require_symbol(std::string_view symbol) const;

  std::vector<std::string> states_;
  Alphabet alphabet_;
  std::vector<StateId> accepting_, rejecting_;
  StateVector initial_;
  std::vector<SquareMatrix> partial_;
  std::vector<std::vector<StateId>> specified_;
  std::vector<bool> complete_;
};

enum class HaltingMode {
  end_of_word,   ///< plain DFA: accept iff the state after the word is accepting
  halt_on_enter  ///< RFA style: endmarkers are read and halting states stop the run
};

/// Deterministic automaton. In end_of_word mode `classes` marks final states
/// as accepting and nothing as rejecting; only input symbols have transitions.
/// In halt_on_enter mode every non-halting state has a transition on every
/// working symbol and halting states have none.
struct ClassicalAutomaton {
  std::vector<std::string> states;
  Alphabet alphabet;
  StateId start = 0;
  std::vector<HaltClass> classes;
  /// transitions[state][working index]; kNoState where undefined.
  std::vector<std::vector<StateId>> transitions;
  HaltingMode mode = HaltingMode::end_of_word;

  std::size_t size() const noexcept { return states.size(); }
  StateId next(StateId q, std::size_t working) const { return transitions[q][working]; }
  bool is_accepting(StateId q) const { return classes[q] == HaltClass::accepting; }
  bool is_rejecting(StateId q) const { return classes[q] == HaltClass::rejecting; }
  bool is_halting(StateId q) const {
    return mode == HaltingMode::halt_on_enter && classes[q] != HaltClass::non_halting;
  }
  std::size_t non_halting_count() const;
  std::optional<StateId> state_index(std::string_view name) const;
  /// Working indices that carry transitions in this mode.
  std::vector<std::size_t> active_symbols() const;
};

/// Builds a ClassicalAutomaton by state and symbol names.
class ClassicalAutomatonBuilder {
 public:
  ClassicalAutomatonBuilder(std::vector<Symbol> alphabet, HaltingMode mode);

  StateId add_state(std::string name, HaltClass cls = HaltClass::non_halting);
  ClassicalAutomatonBuilder& start(std::string_view name);
  ClassicalAutomatonBuilder& transition(std::string_view from, std::string_view symbol,
                                        std::string_view to);
  ClassicalAutomaton build() const;

 private:
  StateId require_state(std::string_view name) const;

  ClassicalAutomaton automaton_;
};

std::vector<Violation> validate(const ClassicalAutomaton& c);

struct NonReversibility {
  StateId q1;
  StateId q2;
  StateId target;
  std::size_t symbol;  ///< working index

  friend bool operator==(const NonReversibility&, const NonReversibility&) = default;
};

struct ReversibilityReport {
  bool reversible = true;
  std::vector<NonReversibility> tuples;
};

/// Every pair q1 < q2 of distinct sources sharing a target on one symbol.
/// Plain automata are checked over Σ; halt-on-enter automata over Σ and the
/// endmarkers, from non-halting states.
ReversibilityReport is_reversible(const ClassicalAutomaton& c);

struct ProbabilisticEdge {
  StateId target;
  double probability;

  friend bool operator==(const ProbabilisticEdge&, const ProbabilisticEdge&) = default;
};

/// Probabilistic automaton with reversible support, halt-on-enter semantics.
struct ProbabilisticAutomaton {
  std::vector<std::string> states;
  Alphabet alphabet;
  std::vector<HaltClass> classes;
  /// transitions[state][working index]
  std::vector<std::vector<std::vector<ProbabilisticEdge>>> transitions;
  std::vector<ProbabilisticEdge> initial;

  std::size_t size() const noexcept { return states.size(); }
  std::optional<StateId> state_index(std::string_view name) const;
};

std::vector<Violation> validate(const ProbabilisticAutomaton& p);

/// Requires a reversible halt-on-enter automaton.
ProbabilisticAutomaton rfa_to_prfa(const ClassicalAutomaton& c);

/// Amplitudes are square roots of edge probabilities; halting columns are
/// completed to a unitary. Throws NotCompletableError if reversibility fails.
QuantumAutomaton prfa_to_qfa(const ProbabilisticAutomaton& p, double tol = kDefaultTolerance);

}  // namespace qfa
