#pragma once

// Exact runners for every execution model: measure-many, measure-once,
// repeated scans, probabilistic-reversible and deterministic.

#include <cstdint>
#include <vector>

#include "qfa/automata.hpp"
#include "qfa/linalg.hpp"

namespace qfa {

struct TraceStep {
  double p_acc;  ///< accepted so far
  double p_rej;  ///< rejected so far
};

struct RunOutcome {
  double p_acc = 0.0;
  double p_rej = 0.0;
  double p_non = 0.0;  ///< mass still non-halting after the right endmarker
  std::vector<TraceStep> trace;

  OutcomeDistribution distribution() const { return {p_acc, p_rej, p_non}; }
};

/// Step-by-step measure-many execution. The non-halting residue is carried
/// without renormalization, so accumulated probabilities are global.
class KwSimulator {
 public:
  explicit KwSimulator(const QuantumAutomaton& q);

  /// Applies the operator for `working` and measures.
  void step(std::size_t working);
  void run(std::span<const std::size_t> working_symbols);

  const StateVector& residual() const noexcept { return residual_; }
  double p_acc() const noexcept { return p_acc_; }
  double p_rej() const noexcept { return p_rej_; }
  const std::vector<TraceStep>& trace() const noexcept { return trace_; }
  RunOutcome outcome() const;

 private:
  const QuantumAutomaton* q_;
  Partition partition_;
  StateVector residual_;
  double p_acc_ = 0.0;
  double p_rej_ = 0.0;
  std::vector<TraceStep> trace_;
};

RunOutcome run_kw(const QuantumAutomaton& q, const Word& word);

/// All operators first, one measurement at the end.
OutcomeDistribution run_measure_once(const QuantumAutomaton& q, const Word& word);

struct ScanReport {
  /// Cumulative accept/reject after each executed scan; p_non is the residue.
  std::vector<OutcomeDistribution> cumulative;
  std::size_t scans_executed = 0;
};

/// Scans stop early once the residual mass falls below this.
inline constexpr double kNegligibleMass = 1e-24;

/// Measure-many semantics over (^ word $) repeated up to max_scans times.
ScanReport run_multiscan(const QuantumAutomaton& q, const Word& word, std::size_t max_scans);

RunOutcome run_prfa(const ProbabilisticAutomaton& p, const Word& word);

/// Plain mode: the state after the word is accepting. Halt-on-enter mode:
/// the run halts in an accepting state.
bool run_dfa(const ClassicalAutomaton& c, const Word& word);

/// Full halt-on-enter outcome of a deterministic automaton (0/1 valued).
RunOutcome run_classical(const ClassicalAutomaton& c, const Word& word);

/// Monte-Carlo execution of a PRFA with a seeded 64-bit generator.
OutcomeDistribution sample_prfa(const ProbabilisticAutomaton& p, const Word& word,
                                std::size_t samples, std::uint64_t seed = 0);

}  // namespace qfa
