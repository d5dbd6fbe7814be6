#include "qfa/semantics.hpp"

#include <cmath>

#include "qfa/error.hpp"
#include "qfa/random.hpp"

namespace qfa {

KwSimulator::KwSimulator(const QuantumAutomaton& q)
    : q_(&q), partition_(q.partition()), residual_(q.initial) {
  if (residual_.dimension() != q.dimension()) throw DimensionError("initial vector dimension mismatch");
  if (q.unitaries.size() != q.alphabet.working_size()) {
    throw DimensionError("automaton is missing operators for some symbols");
  }
}

void KwSimulator::step(std::size_t working) {
  auto m = measure(apply(q_->unitary(working), residual_), partition_);
  p_acc_ += m.probabilities.p_acc;
  p_rej_ += m.probabilities.p_rej;
  residual_ = std::move(m.non_halting);
  trace_.push_back({p_acc_, p_rej_});
}

void KwSimulator::run(std::span<const std::size_t> working_symbols) {
  for (auto w : working_symbols) step(w);
}

RunOutcome KwSimulator::outcome() const {
  return {p_acc_, p_rej_, residual_.norm_squared(), trace_};
}

RunOutcome run_kw(const QuantumAutomaton& q, const Word& word) {
  const auto symbols = q.alphabet.encode(word);
  KwSimulator sim(q);
  sim.run(symbols);
  return sim.outcome();
}

OutcomeDistribution run_measure_once(const QuantumAutomaton& q, const Word& word) {
  const auto symbols = q.alphabet.encode(word);
  StateVector v = q.initial;
  for (auto w : symbols) v = apply(q.unitary(w), v);
  return measure(v, q.partition()).probabilities;
}

ScanReport run_multiscan(const QuantumAutomaton& q, const Word& word, std::size_t max_scans) {
  if (max_scans == 0) throw InvalidArgument("max_scans must be at least 1");
  const auto symbols = q.alphabet.encode(word);
  KwSimulator sim(q);
  ScanReport report;
  for (std::size_t scan = 0; scan < max_scans; ++scan) {
    sim.run(symbols);
    const double residue = sim.residual().norm_squared();
    report.cumulative.push_back({sim.p_acc(), sim.p_rej(), residue});
    ++report.scans_executed;
    if (residue < kNegligibleMass) break;
  }
  return report;
}

RunOutcome run_prfa(const ProbabilisticAutomaton& p, const Word& word) {
  const auto symbols = p.alphabet.encode(word);
  std::vector<double> dist(p.size(), 0.0);
  for (const auto& e : p.initial) dist.at(e.target) += e.probability;

  RunOutcome out;
  std::vector<double> next(p.size());
  for (auto w : symbols) {
    std::fill(next.begin(), next.end(), 0.0);
    for (StateId q = 0; q < p.size(); ++q) {
      if (dist[q] == 0.0) continue;
      for (const auto& e : p.transitions[q][w]) next[e.target] += dist[q] * e.probability;
    }
    for (StateId q = 0; q < p.size(); ++q) {
      if (p.classes[q] == HaltClass::accepting) {
        out.p_acc += next[q];
        next[q] = 0.0;
      } else if (p.classes[q] == HaltClass::rejecting) {
        out.p_rej += next[q];
        next[q] = 0.0;
      }
    }
    dist.swap(next);
    out.trace.push_back({out.p_acc, out.p_rej});
  }
  for (double x : dist) out.p_non += x;
  return out;
}

RunOutcome run_classical(const ClassicalAutomaton& c, const Word& word) {
  RunOutcome out;
  if (c.mode == HaltingMode::end_of_word) {
    StateId q = c.start;
    for (auto w : c.alphabet.encode_input(word)) q = c.next(q, w);
    (c.is_accepting(q) ? out.p_acc : out.p_rej) = 1.0;
    out.trace.push_back({out.p_acc, out.p_rej});
    return out;
  }
  StateId q = c.start;
  bool halted = false;
  for (auto w : c.alphabet.encode(word)) {
    if (!halted) {
      q = c.next(q, w);
      if (c.is_accepting(q)) {
        out.p_acc = 1.0;
        halted = true;
      } else if (c.is_rejecting(q)) {
        out.p_rej = 1.0;
        halted = true;
      }
    }
    out.trace.push_back({out.p_acc, out.p_rej});
  }
  if (!halted) out.p_non = 1.0;
  return out;
}

bool run_dfa(const ClassicalAutomaton& c, const Word& word) {
  return run_classical(c, word).p_acc == 1.0;
}

OutcomeDistribution sample_prfa(const ProbabilisticAutomaton& p, const Word& word,
                                std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InvalidArgument("samples must be positive");
  const auto symbols = p.alphabet.encode(word);
  Rng rng(seed);
  auto draw = [&](const std::vector<ProbabilisticEdge>& edges) {
    double u = rng.uniform01();
    for (const auto& e : edges) {
      if (u < e.probability) return e.target;
      u -= e.probability;
    }
    return edges.back().target;
  };
  std::size_t acc = 0, rej = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    StateId q = draw(p.initial);
    for (auto w : symbols) {
      q = draw(p.transitions[q][w]);
      if (p.classes[q] != HaltClass::non_halting) break;
    }
    if (p.classes[q] == HaltClass::accepting) ++acc;
    if (p.classes[q] == HaltClass::rejecting) ++rej;
  }
  const double n = static_cast<double>(samples);
  return {acc / n, rej / n, (samples - acc - rej) / n};
}

}  // namespace qfa
