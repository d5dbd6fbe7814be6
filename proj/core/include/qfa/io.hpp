#pragma once

// JSON automaton files. Amplitudes are [re, im] pairs written with
// round-trip precision, so save followed by load is exact.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfa/automata.hpp"

namespace qfa {

inline constexpr int kFormatVersion = 1;

enum class AutomatonKind { qfa, dfa, rfa, prfa };

std::string_view kind_name(AutomatonKind kind);

struct AutomatonFile {
  std::variant<QuantumAutomaton, ClassicalAutomaton, ProbabilisticAutomaton> automaton;
  /// Named constants recorded by generators.
  std::map<std::string, double> metadata;

  AutomatonKind kind() const;
};

/// Throws ParseError on malformed text and NotCompletableError when partial
/// quantum operators cannot be completed. Content is not validated.
AutomatonFile parse_automaton(std::string_view text);
AutomatonFile load_automaton(const std::filesystem::path& path);

std::string serialize_automaton(const AutomatonFile& file);
void save_automaton(const AutomatonFile& file, const std::filesystem::path& path);

std::vector<Violation> validate(const AutomatonFile& file, double tol = kDefaultTolerance);

}  // namespace qfa
