#include "qfa/io.hpp"

#include <fstream>
#include <unordered_map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qfa/error.hpp"

namespace qfa {

namespace {

using Json = nlohmann::json;

std::vector<std::string> string_list(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

// State names with constant-time lookup.
class Names {
 public:
  explicit Names(std::vector<std::string> states) : states_(std::move(states)) {
    if (states_.empty()) throw ParseError("no states");
    for (StateId i = 0; i < states_.size(); ++i) {
      if (!index_.emplace(states_[i], i).second) throw ParseError("duplicate state '" + states_[i] + "'");
    }
  }
  const std::vector<std::string>& list() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  StateId operator()(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ParseError("unknown state '" + name + "'");
    return it->second;
  }

 private:
  std::vector<std::string> states_;
  std::unordered_map<std::string, StateId> index_;
};

std::size_t working(const Alphabet& alphabet, const std::string& symbol) {
  auto w = alphabet.working_index(symbol);
  if (!w) throw ParseError("unknown symbol '" + symbol + "'");
  return *w;
}

Complex amplitude(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("amplitude must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json amplitude_json(Complex c) { return Json::array({c.real(), c.imag()}); }

QuantumAutomaton parse_quantum(const Json& j, const Names& lookup, const Alphabet& alphabet) {
  QuantumAutomatonBuilder b(lookup.list(), alphabet.symbols());
  for (const auto& s : string_list(j, "accepting")) b.accepting(lookup(s));
  for (const auto& s : string_list(j, "rejecting")) b.rejecting(lookup(s));
  if (j.contains("initial")) {
    StateVector init(lookup.size());
    for (const auto& [name, amp] : j.at("initial").items()) init[lookup(name)] = amplitude(amp);
    b.initial(std::move(init));
  }
  if (j.contains("transitions")) {
    for (const auto& [symbol, images] : j.at("transitions").items()) {
      const std::size_t w = working(alphabet, symbol);
      SquareMatrix m(lookup.size());
      std::size_t given = 0;
      for (const auto& [from, targets] : images.items()) {
        std::vector<MatrixEntry> col;
        for (const auto& [to, amp] : targets.items()) col.push_back({lookup(to), amplitude(amp)});
        try {
          m.set_column(lookup(from), std::move(col));
        } catch (const InvalidArgument& e) {
          throw ParseError(e.what());
        }
        ++given;
      }
      const std::string sym(alphabet.working_symbol(w));
      if (given == lookup.size()) {
        b.matrix(sym, std::move(m));
      } else {
        for (const auto& [from, targets] : images.items()) {
          const StateId f = lookup(from);
          auto col = m.column(f);
          b.image(sym, f, std::vector<MatrixEntry>(col.begin(), col.end()));
        }
      }
    }
  }
  return b.build();
}

ClassicalAutomaton parse_classical(const Json& j, const Names& lookup, const Alphabet& alphabet,
                                   HaltingMode mode) {
  ClassicalAutomaton c;
  c.states = lookup.list();
  c.alphabet = alphabet;
  c.mode = mode;
  c.classes.assign(lookup.size(), HaltClass::non_halting);
  for (const auto& s : string_list(j, "accepting")) c.classes[lookup(s)] = HaltClass::accepting;
  for (const auto& s : string_list(j, "rejecting")) {
    auto& cls = c.classes[lookup(s)];
    if (cls == HaltClass::accepting) throw ParseError("state '" + s + "' is both accepting and rejecting");
    cls = HaltClass::rejecting;
  }
  if (!j.contains("start")) throw ParseError("missing start state");
  c.start = lookup(j.at("start").get<std::string>());
  c.transitions.assign(lookup.size(), std::vector<StateId>(alphabet.working_size(), kNoState));
  if (j.contains("transitions")) {
    for (const auto& [from, row] : j.at("transitions").items()) {
      const StateId f = lookup(from);
      for (const auto& [symbol, to] : row.items()) {
        c.transitions[f][working(alphabet, symbol)] = lookup(to.get<std::string>());
      }
    }
  }
  return c;
}

ProbabilisticAutomaton parse_probabilistic(const Json& j, const Names& lookup,
                                           const Alphabet& alphabet) {
  ProbabilisticAutomaton p;
  p.states = lookup.list();
  p.alphabet = alphabet;
  p.classes.assign(lookup.size(), HaltClass::non_halting);
  for (const auto& s : string_list(j, "accepting")) p.classes[lookup(s)] = HaltClass::accepting;
  for (const auto& s : string_list(j, "rejecting")) {
    auto& cls = p.classes[lookup(s)];
    if (cls == HaltClass::accepting) throw ParseError("state '" + s + "' is both accepting and rejecting");
    cls = HaltClass::rejecting;
  }
  if (!j.contains("initial")) throw ParseError("missing initial distribution");
  for (const auto& [name, prob] : j.at("initial").items()) {
    p.initial.push_back({lookup(name), prob.get<double>()});
  }
  p.transitions.assign(lookup.size(), std::vector<std::vector<ProbabilisticEdge>>(alphabet.working_size()));
  if (j.contains("transitions")) {
    for (const auto& [from, row] : j.at("transitions").items()) {
      const StateId f = lookup(from);
      for (const auto& [symbol, targets] : row.items()) {
        auto& edges = p.transitions[f][working(alphabet, symbol)];
        for (const auto& [to, prob] : targets.items()) edges.push_back({lookup(to), prob.get<double>()});
      }
    }
  }
  return p;
}

Json names_of(const std::vector<std::string>& states, const std::vector<StateId>& ids) {
  Json out = Json::array();
  for (auto i : ids) out.push_back(states[i]);
  return out;
}

template <typename Classes>
Json names_with(const std::vector<std::string>& states, const Classes& classes, HaltClass cls) {
  Json out = Json::array();
  for (StateId i = 0; i < states.size(); ++i) {
    if (classes[i] == cls) out.push_back(states[i]);
  }
  return out;
}

Json to_json(const QuantumAutomaton& q) {
  Json j;
  j["states"] = q.states;
  j["alphabet"] = q.alphabet.symbols();
  j["accepting"] = names_of(q.states, q.accepting);
  j["rejecting"] = names_of(q.states, q.rejecting);
  Json init = Json::object();
  for (StateId i = 0; i < q.dimension(); ++i) {
    if (q.initial[i] != Complex{}) init[q.states[i]] = amplitude_json(q.initial[i]);
  }
  j["initial"] = init;
  Json transitions = Json::object();
  for (std::size_t w = 0; w < q.unitaries.size(); ++w) {
    Json op = Json::object();
    for (StateId col = 0; col < q.dimension(); ++col) {
      Json image = Json::object();
      for (const auto& e : q.unitaries[w].column(col)) image[q.states[e.row]] = amplitude_json(e.value);
      op[q.states[col]] = std::move(image);
    }
    transitions[std::string(q.alphabet.working_symbol(w))] = std::move(op);
  }
  j["transitions"] = std::move(transitions);
  return j;
}

Json to_json(const ClassicalAutomaton& c) {
  Json j;
  j["states"] = c.states;
  j["alphabet"] = c.alphabet.symbols();
  j["start"] = c.states[c.start];
  j["accepting"] = names_with(c.states, c.classes, HaltClass::accepting);
  if (c.mode == HaltingMode::halt_on_enter) j["rejecting"] = names_with(c.states, c.classes, HaltClass::rejecting);
  Json transitions = Json::object();
  for (StateId q = 0; q < c.size(); ++q) {
    Json row = Json::object();
    for (std::size_t w = 0; w < c.alphabet.working_size(); ++w) {
      if (c.transitions[q][w] != kNoState) {
        row[std::string(c.alphabet.working_symbol(w))] = c.states[c.transitions[q][w]];
      }
    }
    if (!row.empty()) transitions[c.states[q]] = std::move(row);
  }
  j["transitions"] = std::move(transitions);
  return j;
}

Json to_json(const ProbabilisticAutomaton& p) {
  Json j;
  j["states"] = p.states;
  j["alphabet"] = p.alphabet.symbols();
  j["accepting"] = names_with(p.states, p.classes, HaltClass::accepting);
  j["rejecting"] = names_with(p.states, p.classes, HaltClass::rejecting);
  Json init = Json::object();
  for (const auto& e : p.initial) init[p.states[e.target]] = e.probability;
  j["initial"] = std::move(init);
  Json transitions = Json::object();
  for (StateId q = 0; q < p.size(); ++q) {
    Json row = Json::object();
    for (std::size_t w = 0; w < p.transitions[q].size(); ++w) {
      if (p.transitions[q][w].empty()) continue;
      Json edges = Json::object();
      for (const auto& e : p.transitions[q][w]) edges[p.states[e.target]] = e.probability;
      row[std::string(p.alphabet.working_symbol(w))] = std::move(edges);
    }
    if (!row.empty()) transitions[p.states[q]] = std::move(row);
  }
  j["transitions"] = std::move(transitions);
  return j;
}

}  // namespace

std::string_view kind_name(AutomatonKind kind) {
  switch (kind) {
    case AutomatonKind::qfa: return "qfa";
    case AutomatonKind::dfa: return "dfa";
    case AutomatonKind::rfa: return "rfa";
    case AutomatonKind::prfa: return "prfa";
  }
  return "unknown";
}

AutomatonKind AutomatonFile::kind() const {
  if (std::holds_alternative<QuantumAutomaton>(automaton)) return AutomatonKind::qfa;
  if (std::holds_alternative<ProbabilisticAutomaton>(automaton)) return AutomatonKind::prfa;
  return std::get<ClassicalAutomaton>(automaton).mode == HaltingMode::end_of_word ? AutomatonKind::dfa
                                                                                   : AutomatonKind::rfa;
}

AutomatonFile parse_automaton(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (!j.is_object()) throw ParseError("top level must be an object");
    const int version = j.value("format_version", 0);
    if (version != kFormatVersion) {
      throw ParseError("unsupported format_version " + std::to_string(version));
    }
    const Names states(string_list(j, "states"));
    Alphabet alphabet;
    try {
      alphabet = Alphabet(string_list(j, "alphabet"));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
    AutomatonFile file;
    if (j.contains("metadata")) file.metadata = j.at("metadata").get<std::map<std::string, double>>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "qfa") {
      file.automaton = parse_quantum(j, states, alphabet);
    } else if (kind == "dfa") {
      file.automaton = parse_classical(j, states, alphabet, HaltingMode::end_of_word);
    } else if (kind == "rfa") {
      file.automaton = parse_classical(j, states, alphabet, HaltingMode::halt_on_enter);
    } else if (kind == "prfa") {
      file.automaton = parse_probabilistic(j, states, alphabet);
    } else {
      throw ParseError("unknown kind '" + kind + "'");
    }
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

AutomatonFile load_automaton(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_automaton(text.str());
}

std::string serialize_automaton(const AutomatonFile& file) {
  Json body = std::visit([](const auto& a) { return to_json(a); }, file.automaton);
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = kind_name(file.kind());
  for (auto& [key, value] : body.items()) j[key] = value;
  if (!file.metadata.empty()) j["metadata"] = file.metadata;
  return j.dump(2) + "\n";
}

void save_automaton(const AutomatonFile& file, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << serialize_automaton(file);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::vector<Violation> validate(const AutomatonFile& file, double tol) {
  return std::visit(
      [tol](const auto& a) {
        if constexpr (std::is_same_v<std::decay_t<decltype(a)>, QuantumAutomaton>) {
          return validate(a, tol);
        } else {
          return validate(a);
        }
      },
      file.automaton);
}

}  // namespace qfa
