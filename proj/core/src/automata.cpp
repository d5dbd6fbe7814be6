#include "qfa/automata.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "qfa/error.hpp"

namespace qfa {

namespace {

std::optional<StateId> find_name(const std::vector<std::string>& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<StateId>(it - names.begin());
}

std::string deviation_text(double d) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << d;
  return os.str();
}

}  // namespace

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& s = symbols_[i];
    if (s.empty()) throw InvalidArgument("empty symbol name");
    if (s == kLeftEnd || s == kRightEnd) {
      throw InvalidArgument("symbol '" + s + "' is reserved for an endmarker");
    }
    if (s.find_first_of(", \t\n") != std::string::npos) {
      throw InvalidArgument("symbol '" + s + "' contains a separator character");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (symbols_[j] == s) throw InvalidArgument("duplicate symbol '" + s + "'");
    }
  }
}

std::optional<std::size_t> Alphabet::index_of(std::string_view symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - symbols_.begin()) + 1;
}

std::optional<std::size_t> Alphabet::working_index(std::string_view symbol) const {
  if (symbol == kLeftEnd) return left_end();
  if (symbol == kRightEnd) return right_end();
  return index_of(symbol);
}

std::string_view Alphabet::working_symbol(std::size_t working) const {
  if (working == left_end()) return kLeftEnd;
  if (working == right_end()) return kRightEnd;
  return symbols_.at(working - 1);
}

std::vector<std::size_t> Alphabet::encode_input(const Word& word) const {
  std::vector<std::size_t> out;
  out.reserve(word.size());
  for (const auto& s : word) {
    auto idx = index_of(s);
    if (!idx) throw UnknownSymbolError("symbol '" + s + "' is not in the input alphabet");
    out.push_back(*idx);
  }
  return out;
}

std::vector<std::size_t> Alphabet::encode(const Word& word) const {
  std::vector<std::size_t> out;
  out.reserve(word.size() + 2);
  out.push_back(left_end());
  for (auto i : encode_input(word)) out.push_back(i);
  out.push_back(right_end());
  return out;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word out;
  if (text.find_first_of(", \t") != std::string_view::npos) {
    std::string current;
    for (char ch : text) {
      if (ch == ',' || ch == ' ' || ch == '\t') {
        if (!current.empty()) out.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(ch);
      }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
  }
  if (text.empty()) return out;
  const bool single_chars = std::all_of(symbols_.begin(), symbols_.end(),
                                        [](const Symbol& s) { return s.size() == 1; });
  if (single_chars) {
    for (char ch : text) out.emplace_back(1, ch);
  } else {
    out.emplace_back(text);
  }
  return out;
}

std::string format_word(const Word& word) {
  const bool single = std::all_of(word.begin(), word.end(),
                                  [](const Symbol& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single && i > 0) out += ',';
    out += word[i];
  }
  return out;
}

Word repeat(std::string_view symbol, std::size_t times) {
  return Word(times, Symbol(symbol));
}

// --- QuantumAutomaton -------------------------------------------------------

std::optional<StateId> QuantumAutomaton::state_index(std::string_view name) const {
  return find_name(states, name);
}

Partition QuantumAutomaton::partition() const {
  return Partition::from_sets(dimension(), accepting, rejecting);
}

std::size_t QuantumAutomaton::non_halting_count() const {
  return partition().count(HaltClass::non_halting);
}

std::vector<Violation> validate(const QuantumAutomaton& q, double tol) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const std::size_t n = q.dimension();
  if (n == 0) {
    out.push_back({K::structure, "automaton has no states"});
    return out;
  }

  bool partition_ok = true;
  for (auto i : q.accepting) {
    if (i >= n) {
      out.push_back({K::partition, "accepting index " + std::to_string(i) + " out of range"});
      partition_ok = false;
    }
  }
  for (auto i : q.rejecting) {
    if (i >= n) {
      out.push_back({K::partition, "rejecting index " + std::to_string(i) + " out of range"});
      partition_ok = false;
    }
  }
  if (partition_ok) {
    for (auto i : q.accepting) {
      if (std::find(q.rejecting.begin(), q.rejecting.end(), i) != q.rejecting.end()) {
        out.push_back({K::partition, "state '" + q.states[i] + "' is both accepting and rejecting"});
      }
    }
  }

  if (q.initial.dimension() != n) {
    out.push_back({K::dimension, "initial vector has dimension " +
                                     std::to_string(q.initial.dimension()) + ", expected " +
                                     std::to_string(n)});
  } else if (!q.initial.is_finite()) {
    out.push_back({K::normalization, "initial vector has non-finite amplitudes"});
  } else {
    const double dev = std::abs(q.initial.norm() - 1.0);
    if (dev > tol) {
      out.push_back({K::normalization, "initial vector norm deviates from 1 by " + deviation_text(dev), dev});
    }
  }

  if (q.unitaries.size() != q.alphabet.working_size()) {
    out.push_back({K::structure, "expected " + std::to_string(q.alphabet.working_size()) +
                                     " operators (alphabet plus endmarkers), found " +
                                     std::to_string(q.unitaries.size())});
    return out;
  }
  for (std::size_t w = 0; w < q.unitaries.size(); ++w) {
    const auto& m = q.unitaries[w];
    const std::string sym(q.alphabet.working_symbol(w));
    if (m.dimension() != n) {
      out.push_back({K::dimension, "operator for '" + sym + "' has dimension " +
                                       std::to_string(m.dimension())});
      continue;
    }
    if (!m.is_finite()) {
      out.push_back({K::unitarity, "operator for '" + sym + "' has non-finite entries"});
      continue;
    }
    const auto dev = unitarity_deviation(m);
    if (dev.magnitude > tol) {
      out.push_back({K::unitarity,
                     "operator for '" + sym + "' is not unitary: image of '" + q.states[dev.column] +
                         "' deviates by " + deviation_text(dev.magnitude),
                     dev.magnitude});
    }
  }
  return out;
}

// --- QuantumAutomatonBuilder ------------------------------------------------

QuantumAutomatonBuilder::QuantumAutomatonBuilder(std::vector<std::string> states,
                                                 std::vector<Symbol> alphabet)
    : states_(std::move(states)), alphabet_(std::move(alphabet)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& s : states_) {
    if (!seen.insert(s).second) throw InvalidArgument("duplicate state name '" + s + "'");
  }
  const std::size_t n = states_.size();
  partial_.assign(alphabet_.working_size(), SquareMatrix(n));
  specified_.assign(alphabet_.working_size(), {});
  complete_.assign(alphabet_.working_size(), false);
}

StateId QuantumAutomatonBuilder::require_state(std::string_view name) const {
  auto id = find_name(states_, name);
  if (!id) throw InvalidArgument("unknown state '" + std::string(name) + "'");
  return *id;
}

std::size_t QuantumAutomatonBuilder::require_symbol(std::string_view symbol) const {
  auto w = alphabet_.working_index(symbol);
  if (!w) throw UnknownSymbolError("unknown symbol '" + std::string(symbol) + "'");
  return *w;
}

QuantumAutomatonBuilder& QuantumAutomatonBuilder::accepting(std::string_view state) {
  return accepting(require_state(state));
}
QuantumAutomatonBuilder& QuantumAutomatonBuilder::rejecting(std::string_view state) {
  return rejecting(require_state(state));
}
QuantumAutomatonBuilder& QuantumAutomatonBuilder::accepting(StateId state) {
  if (state >= states_.size()) throw InvalidArgument("accepting state out of range");
  accepting_.push_back(state);
  return *this;
}
QuantumAutomatonBuilder& QuantumAutomatonBuilder::rejecting(StateId state) {
  if (state >= states_.size()) throw InvalidArgument("rejecting state out of range");
  rejecting_.push_back(state);
  return *this;
}

QuantumAutomatonBuilder& QuantumAutomatonBuilder::initial(std::string_view state, Complex amplitude) {
  if (initial_.dimension() == 0) initial_ = StateVector(states_.size());
  initial_[require_state(state)] = amplitude;
  return *this;
}

QuantumAutomatonBuilder& QuantumAutomatonBuilder::initial(StateVector v) {
  if (v.dimension() != states_.size()) throw DimensionError("initial vector dimension mismatch");
  initial_ = std::move(v);
  return *this;
}

QuantumAutomatonBuilder& QuantumAutomatonBuilder::image(
    std::string_view symbol, std::string_view from,
    const std::vector<std::pair<std::string, Complex>>& targets) {
  std::vector<MatrixEntry> entries;
  entries.reserve(targets.size());
  for (const auto& [to, amp] : targets) entries.push_back({require_state(to), amp});
  return image(symbol, require_state(from), std::move(entries));
}

QuantumAutomatonBuilder& QuantumAutomatonBuilder::image(std::string_view symbol, StateId from,
                                                        std::vector<MatrixEntry> targets) {
  const auto w = require_symbol(symbol);
  if (complete_[w]) throw InvalidArgument("operator for '" + std::string(symbol) + "' already complete");
  if (from >= states_.size()) throw InvalidArgument("source state out of range");
  partial_[w].set_column(from, std::move(targets));
  auto& given = specified_[w];
  if (std::find(given.begin(), given.end(), from) == given.end()) given.push_back(from);
  return *this;
}

QuantumAutomatonBuilder& QuantumAutomatonBuilder::matrix(std::string_view symbol, SquareMatrix m) {
  const auto w = require_symbol(symbol);
  if (m.dimension() != states_.size()) throw DimensionError("operator dimension mismatch");
  partial_[w] = std::move(m);
  specified_[w].clear();
  complete_[w] = true;
  return *this;
}

QuantumAutomaton QuantumAutomatonBuilder::build(double tol) const {
  QuantumAutomaton q;
  q.states = states_;
  q.alphabet = alphabet_;
  q.accepting = accepting_;
  q.rejecting = rejecting_;
  std::sort(q.accepting.begin(), q.accepting.end());
  q.accepting.erase(std::unique(q.accepting.begin(), q.accepting.end()), q.accepting.end());
  std::sort(q.rejecting.begin(), q.rejecting.end());
  q.rejecting.erase(std::unique(q.rejecting.begin(), q.rejecting.end()), q.rejecting.end());
  (void)q.partition();  // throws on overlap
  q.initial = initial_.dimension() == 0 ? StateVector::basis(states_.size(), 0) : initial_;
  q.unitaries.reserve(partial_.size());
  for (std::size_t w = 0; w < partial_.size(); ++w) {
    if (complete_[w]) {
      q.unitaries.push_back(partial_[w]);
    } else {
      try {
        q.unitaries.push_back(complete_unitary(partial_[w], specified_[w], tol));
      } catch (const NotCompletableError& e) {
        throw NotCompletableError("operator for '" + std::string(alphabet_.working_symbol(w)) +
                                  "': " + e.what());
      }
    }
  }
  return q;
}

// --- ClassicalAutomaton -----------------------------------------------------

std::size_t ClassicalAutomaton::non_halting_count() const {
  std::size_t n = 0;
  for (StateId q = 0; q < size(); ++q) n += is_halting(q) ? 0 : 1;
  return n;
}

std::optional<StateId> ClassicalAutomaton::state_index(std::string_view name) const {
  return find_name(states, name);
}

std::vector<std::size_t> ClassicalAutomaton::active_symbols() const {
  std::vector<std::size_t> out;
  if (mode == HaltingMode::halt_on_enter) out.push_back(alphabet.left_end());
  for (std::size_t i = 1; i <= alphabet.size(); ++i) out.push_back(i);
  if (mode == HaltingMode::halt_on_enter) out.push_back(alphabet.right_end());
  return out;
}

ClassicalAutomatonBuilder::ClassicalAutomatonBuilder(std::vector<Symbol> alphabet, HaltingMode mode) {
  automaton_.alphabet = Alphabet(std::move(alphabet));
  automaton_.mode = mode;
}

StateId ClassicalAutomatonBuilder::add_state(std::string name, HaltClass cls) {
  if (find_name(automaton_.states, name)) throw InvalidArgument("duplicate state name '" + name + "'");
  automaton_.states.push_back(std::move(name));
  automaton_.classes.push_back(cls);
  automaton_.transitions.emplace_back(automaton_.alphabet.working_size(), kNoState);
  return automaton_.states.size() - 1;
}

StateId ClassicalAutomatonBuilder::require_state(std::string_view name) const {
  auto id = find_name(automaton_.states, name);
  if (!id) throw InvalidArgument("unknown state '" + std::string(name) + "'");
  return *id;
}

ClassicalAutomatonBuilder& ClassicalAutomatonBuilder::start(std::string_view name) {
  automaton_.start = require_state(name);
  return *this;
}

ClassicalAutomatonBuilder& ClassicalAutomatonBuilder::transition(std::string_view from,
                                                                 std::string_view symbol,
                                                                 std::string_view to) {
  auto w = automaton_.alphabet.working_index(symbol);
  if (!w) throw UnknownSymbolError("unknown symbol '" + std::string(symbol) + "'");
  automaton_.transitions[require_state(from)][*w] = require_state(to);
  return *this;
}

ClassicalAutomaton ClassicalAutomatonBuilder::build() const {
  auto violations = validate(automaton_);
  if (!violations.empty()) throw InvalidArgument(violations.front().message);
  return automaton_;
}

std::vector<Violation> validate(const ClassicalAutomaton& c) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const std::size_t n = c.size();
  if (n == 0) {
    out.push_back({K::structure, "automaton has no states"});
    return out;
  }
  if (c.classes.size() != n || c.transitions.size() != n) {
    out.push_back({K::structure, "state tables have inconsistent sizes"});
    return out;
  }
  if (c.start >= n) {
    out.push_back({K::structure, "start state out of range"});
    return out;
  }
  const std::size_t working = c.alphabet.working_size();
  const bool halting_mode = c.mode == HaltingMode::halt_on_enter;
  if (halting_mode && c.is_halting(c.start)) {
    out.push_back({K::structure, "start state '" + c.states[c.start] + "' is halting"});
  }
  for (StateId q = 0; q < n; ++q) {
    if (c.transitions[q].size() != working) {
      out.push_back({K::structure, "state '" + c.states[q] + "' has a malformed transition row"});
      continue;
    }
    if (!halting_mode && c.classes[q] == HaltClass::rejecting) {
      out.push_back({K::partition, "plain automata have no rejecting states ('" + c.states[q] + "')"});
    }
    for (std::size_t w = 0; w < working; ++w) {
      const StateId t = c.transitions[q][w];
      const bool endmarker = (w == c.alphabet.left_end() || w == c.alphabet.right_end());
      const bool expected = halting_mode ? !c.is_halting(q) : !endmarker;
      const std::string where =
          "'" + c.states[q] + "' on '" + std::string(c.alphabet.working_symbol(w)) + "'";
      if (expected && t == kNoState) {
        out.push_back({K::structure, "missing transition from " + where});
      } else if (!expected && t != kNoState) {
        out.push_back({K::structure, "unexpected transition from " + where});
      } else if (t != kNoState && t >= n) {
        out.push_back({K::structure, "transition target out of range from " + where});
      }
    }
  }
  return out;
}

ReversibilityReport is_reversible(const ClassicalAutomaton& c) {
  ReversibilityReport report;
  for (auto w : c.active_symbols()) {
    std::vector<std::vector<StateId>> preds(c.size());
    for (StateId q = 0; q < c.size(); ++q) {
      if (c.is_halting(q)) continue;
      const StateId t = c.next(q, w);
      if (t != kNoState) preds[t].push_back(q);
    }
    for (StateId t = 0; t < c.size(); ++t) {
      const auto& p = preds[t];
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
          report.tuples.push_back({p[i], p[j], t, w});
        }
      }
    }
  }
  report.reversible = report.tuples.empty();
  return report;
}

// --- ProbabilisticAutomaton -------------------------------------------------

std::optional<StateId> ProbabilisticAutomaton::state_index(std::string_view name) const {
  return find_name(states, name);
}

std::vector<Violation> validate(const ProbabilisticAutomaton& p) {
  using K = Violation::Kind;
  constexpr double kSumTolerance = 1e-12;
  std::vector<Violation> out;
  const std::size_t n = p.size();
  if (n == 0) {
    out.push_back({K::structure, "automaton has no states"});
    return out;
  }
  if (p.classes.size() != n || p.transitions.size() != n) {
    out.push_back({K::structure, "state tables have inconsistent sizes"});
    return out;
  }
  const std::size_t working = p.alphabet.working_size();
  for (StateId q = 0; q < n; ++q) {
    if (p.transitions[q].size() != working) {
      out.push_back({K::structure, "state '" + p.states[q] + "' has a malformed transition row"});
      return out;
    }
  }

  double initial_sum = 0.0;
  for (const auto& e : p.initial) {
    if (e.target >= n) {
      out.push_back({K::structure, "initial distribution references a state out of range"});
      continue;
    }
    if (!(e.probability > 0.0 && e.probability <= 1.0)) {
      out.push_back({K::probability, "initial probability of '" + p.states[e.target] + "' outside (0,1]"});
    }
    if (p.classes[e.target] != HaltClass::non_halting) {
      out.push_back({K::structure, "initial distribution puts mass on halting state '" +
                                       p.states[e.target] + "'"});
    }
    initial_sum += e.probability;
  }
  if (std::abs(initial_sum - 1.0) > kSumTolerance) {
    out.push_back({K::probability, "initial distribution sums to " + std::to_string(initial_sum),
                   std::abs(initial_sum - 1.0)});
  }

  for (std::size_t w = 0; w < working; ++w) {
    const std::string sym(p.alphabet.working_symbol(w));
    std::vector<StateId> source_of(n, kNoState);
    for (StateId q = 0; q < n; ++q) {
      const auto& edges = p.transitions[q][w];
      const bool halting = p.classes[q] != HaltClass::non_halting;
      const std::string where = "'" + p.states[q] + "' on '" + sym + "'";
      if (halting) {
        if (!edges.empty()) out.push_back({K::structure, "halting state has transitions: " + where});
        continue;
      }
      if (edges.empty()) {
        out.push_back({K::structure, "missing transition from " + where});
        continue;
      }
      double sum = 0.0;
      for (const auto& e : edges) {
        if (e.target >= n) {
          out.push_back({K::structure, "transition target out of range from " + where});
          continue;
        }
        if (!(e.probability > 0.0 && e.probability <= 1.0)) {
          out.push_back({K::probability, "edge probability outside (0,1] from " + where});
        }
        sum += e.probability;
        if (e.probability > 0.0) {
          if (source_of[e.target] != kNoState && source_of[e.target] != q) {
            out.push_back({K::reversibility, "'" + p.states[e.target] + "' on '" + sym +
                                                 "' has two sources: '" + p.states[source_of[e.target]] +
                                                 "' and '" + p.states[q] + "'"});
          }
          source_of[e.target] = q;
        }
      }
      if (std::abs(sum - 1.0) > kSumTolerance) {
        out.push_back({K::probability, "outgoing probabilities from " + where + " sum to " +
                                           std::to_string(sum),
                       std::abs(sum - 1.0)});
      }
    }
  }
  return out;
}

ProbabilisticAutomaton rfa_to_prfa(const ClassicalAutomaton& c) {
  if (c.mode != HaltingMode::halt_on_enter) {
    throw InvalidArgument("rfa_to_prfa expects a halt-on-enter automaton");
  }
  if (auto v = validate(c); !v.empty()) throw InvalidArgument(v.front().message);
  auto report = is_reversible(c);
  if (!report.reversible) {
    const auto& t = report.tuples.front();
    throw NotReversibleError("'" + c.states[t.q1] + "' and '" + c.states[t.q2] + "' both enter '" +
                             c.states[t.target] + "' on '" +
                             std::string(c.alphabet.working_symbol(t.symbol)) + "'");
  }
  ProbabilisticAutomaton p;
  p.states = c.states;
  p.alphabet = c.alphabet;
  p.classes = c.classes;
  p.transitions.assign(c.size(), std::vector<std::vector<ProbabilisticEdge>>(c.alphabet.working_size()));
  for (StateId q = 0; q < c.size(); ++q) {
    if (c.is_halting(q)) continue;
    for (std::size_t w = 0; w < c.alphabet.working_size(); ++w) {
      p.transitions[q][w].push_back({c.next(q, w), 1.0});
    }
  }
  p.initial.push_back({c.start, 1.0});
  return p;
}

QuantumAutomaton prfa_to_qfa(const ProbabilisticAutomaton& p, double tol) {
  for (const auto& v : validate(p)) {
    if (v.kind == Violation::Kind::reversibility) {
      throw NotCompletableError("non-unitary specification: " + v.message);
    }
    throw InvalidArgument(v.message);
  }
  QuantumAutomatonBuilder b(p.states, p.alphabet.symbols());
  for (StateId q = 0; q < p.size(); ++q) {
    if (p.classes[q] == HaltClass::accepting) b.accepting(q);
    if (p.classes[q] == HaltClass::rejecting) b.rejecting(q);
  }
  StateVector init(p.size());
  for (const auto& e : p.initial) init[e.target] += std::sqrt(e.probability);
  b.initial(std::move(init));
  for (StateId q = 0; q < p.size(); ++q) {
    if (p.classes[q] != HaltClass::non_halting) continue;
    for (std::size_t w = 0; w < p.alphabet.working_size(); ++w) {
      std::vector<MatrixEntry> entries;
      for (const auto& e : p.transitions[q][w]) entries.push_back({e.target, std::sqrt(e.probability)});
      b.image(p.alphabet.working_symbol(w), q, std::move(entries));
    }
  }
  return b.build(tol);
}

}  // namespace qfa
