#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "qfa/analysis.hpp"
#include "qfa/cli/app.hpp"
#include "qfa/constructions.hpp"
#include "qfa/error.hpp"
#include "qfa/io.hpp"
#include "qfa/semantics.hpp"
#include "report.hpp"

namespace qfa::cli {

namespace {

using Json = Report::Json;

struct Globals {
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  bool json = false;
};

// Raised when a file parses but does not describe a valid automaton.
class InvalidFile : public std::runtime_error {
 public:
  explicit InvalidFile(std::vector<Violation> v)
      : std::runtime_error("automaton failed validation"), violations(std::move(v)) {}
  std::vector<Violation> violations;
};

AutomatonFile load_checked(const std::string& path, double tol) {
  auto file = load_automaton(path);
  if (auto v = validate(file, tol); !v.empty()) throw InvalidFile(std::move(v));
  return file;
}

std::string word_text(const Word& w) { return w.empty() ? "(empty)" : format_word(w); }

Word parse_input(const Alphabet& alphabet, const std::string& text) {
  Word w = alphabet.parse_word(text);
  (void)alphabet.encode_input(w);  // reports unknown symbols
  return w;
}

const Alphabet& alphabet_of(const AutomatonFile& f) {
  return std::visit([](const auto& a) -> const Alphabet& { return a.alphabet; }, f.automaton);
}

std::size_t state_count(const AutomatonFile& f) {
  return std::visit([](const auto& a) { return a.states.size(); }, f.automaton);
}

std::size_t non_halting_count(const AutomatonFile& f) {
  return std::visit(
      [](const auto& a) -> std::size_t {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ProbabilisticAutomaton>) {
          std::size_t n = 0;
          for (auto c : a.classes) n += c == HaltClass::non_halting ? 1 : 0;
          return n;
        } else {
          return a.non_halting_count();
        }
      },
      f.automaton);
}

ClassicalAutomaton require_classical(const AutomatonFile& f, const std::string& path) {
  if (!std::holds_alternative<ClassicalAutomaton>(f.automaton)) {
    throw InvalidArgument("'" + path + "' is not a dfa or rfa file");
  }
  return std::get<ClassicalAutomaton>(f.automaton);
}

struct RunOptions {
  std::string mode = "kw";
  std::size_t scans = 1;
};

// Outcome of one execution plus the per-step trace where one exists.
RunOutcome execute(const AutomatonFile& f, const Word& word, const RunOptions& opt, Report* report) {
  if (const auto* q = std::get_if<QuantumAutomaton>(&f.automaton)) {
    if (opt.mode == "once") {
      const auto d = run_measure_once(*q, word);
      return {d.p_acc, d.p_rej, d.p_non, {}};
    }
    if (opt.mode == "scans") {
      const auto r = run_multiscan(*q, word, opt.scans);
      if (report) {
        report->add("scans_executed", static_cast<std::uint64_t>(r.scans_executed));
        for (std::size_t i = 0; i < r.cumulative.size(); ++i) {
          const auto& c = r.cumulative[i];
          report->append("scan", Json{{"scan", i + 1}, {"p_acc", c.p_acc}, {"p_rej", c.p_rej}, {"p_non", c.p_non}},
                         std::to_string(i + 1) + " p_acc=" + format_probability(c.p_acc) +
                             " p_rej=" + format_probability(c.p_rej) + " p_non=" + format_probability(c.p_non));
        }
      }
      const auto& last = r.cumulative.back();
      return {last.p_acc, last.p_rej, last.p_non, {}};
    }
    if (opt.mode != "kw") throw InvalidArgument("unknown mode '" + opt.mode + "'");
    return run_kw(*q, word);
  }
  if (opt.mode != "kw") throw InvalidArgument("mode '" + opt.mode + "' applies to qfa files only");
  if (const auto* p = std::get_if<ProbabilisticAutomaton>(&f.automaton)) return run_prfa(*p, word);
  return run_classical(std::get<ClassicalAutomaton>(f.automaton), word);
}

void add_outcome(Report& r, const OutcomeDistribution& d) {
  r.add("p_acc", d.p_acc);
  r.add("p_rej", d.p_rej);
  r.add("p_non", d.p_non);
}

// --- verification ----------------------------------------------------------

class Checks {
 public:
  explicit Checks(Report& r) : report_(r) {}

  /// A check passes when its margin is non-negative.
  void check(const std::string& name, double margin, const std::string& detail = {}) {
    const bool ok = margin >= 0.0;
    passed_ = passed_ && ok;
    min_margin_ = std::min(min_margin_, margin);
    std::string text = name + (ok ? " pass" : " FAIL") + " margin=" + format_probability(margin);
    if (!detail.empty()) text += " " + detail;
    report_.append("check", Json{{"name", name}, {"passed", ok}, {"margin", margin}, {"detail", detail}},
                   std::move(text));
  }

  int finish() {
    report_.add("min_margin", min_margin_);
    report_.add("result", passed_ ? "pass" : "fail");
    return passed_ ? kExitSuccess : kExitVerificationFailed;
  }

 private:
  Report& report_;
  bool passed_ = true;
  double min_margin_ = std::numeric_limits<double>::infinity();
};

// Worst case of a per-length rejection bound on a unary automaton.
struct UnaryBound {
  double worst = std::numeric_limits<double>::infinity();
  std::uint64_t where = 0;

  void update(double margin, std::uint64_t length) {
    if (margin < worst) {
      worst = margin;
      where = length;
    }
  }
};

void verify_unary(Checks& checks, const QuantumAutomaton& q, std::uint64_t limit,
                  const std::function<bool(std::uint64_t)>& member, double reject_bound, double tol) {
  // Every a^len shares the prefix ^ a^len, so one simulator is advanced
  // and copied before the right endmarker.
  UnaryBound accept, reject;
  KwSimulator prefix(q);
  prefix.step(q.alphabet.left_end());
  const std::size_t letter = *q.alphabet.index_of("a");
  for (std::uint64_t len = 0; len <= limit; ++len) {
    if (len > 0) prefix.step(letter);
    KwSimulator full = prefix;
    full.step(q.alphabet.right_end());
    const auto r = full.outcome();
    if (member(len)) {
      accept.update(r.p_acc - (1.0 - tol), len);
    } else {
      reject.update(r.p_rej - (reject_bound - tol), len);
    }
  }
  if (accept.worst != std::numeric_limits<double>::infinity()) {
    checks.check("accept-members", accept.worst, "worst_length=" + std::to_string(accept.where));
  }
  checks.check("reject-non-members", reject.worst, "worst_length=" + std::to_string(reject.where));
}

struct TargetParams {
  std::uint64_t p = 31;
  std::uint64_t k = 1;
  std::size_t d = 1;
  double epsilon = 0.0;  // 0: target default
  std::uint64_t n = 20;
  std::uint64_t n_max = 0;  // 0: three times n
  std::size_t m = 2;
  std::uint64_t limit() const { return n_max == 0 ? 3 * n : n_max; }
  double error(double fallback) const { return epsilon == 0.0 ? fallback : epsilon; }
};

void add_target_options(CLI::App* cmd, TargetParams& t) {
  cmd->add_option("--p", t.p, "Prime modulus")->capture_default_str();
  cmd->add_option("--k", t.k, "Rotation coefficient")->capture_default_str();
  cmd->add_option("--d", t.d, "Tensor power")->capture_default_str();
  cmd->add_option("--epsilon", t.epsilon, "Error bound (default 0.6 for modp-amplified, 0.5 for equality)");
  cmd->add_option("--n", t.n, "Target length for equality")->capture_default_str();
  cmd->add_option("--n-max", t.n_max, "Longest length covered by equality (default 3n)");
  cmd->add_option("--m", t.m, "Block count for the lm family")->capture_default_str();
}

const std::vector<std::string> kTargets = {"sec22",    "astarbstar", "modp", "modp-amplified",
                                           "equality", "lm",         "prfa-trio", "rotation"};

bool in_astar_bstar(const Word& w) {
  bool seen_b = false;
  for (const auto& s : w) {
    if (s == "b") seen_b = true;
    if (s == "a" && seen_b) return false;
  }
  return true;
}

std::vector<Word> all_words(const std::vector<std::string>& symbols, std::size_t max_len) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    for (const auto& s : symbols) {
      Word w = out[i];
      w.push_back(s);
      out.push_back(std::move(w));
    }
  }
  return out;
}

int verify_target(const std::string& target, const TargetParams& t, const Globals& g, Report& report) {
  Checks checks(report);
  const double tol = g.tolerance;
  if (target == "sec22") {
    const auto r = run_kw(example_qfa(), {"a", "a"});
    checks.check("aa-accept", tol - std::abs(r.p_acc - 0.25));
    checks.check("aa-reject", tol - std::abs(r.p_rej - 0.75));
  } else if (target == "astarbstar") {
    const auto q = astar_bstar_qfa();
    const double p = cubic_root_constant();
    report.add("p", p);
    double in_margin = std::numeric_limits<double>::infinity(), out_margin = in_margin;
    Word worst_in, worst_out;
    for (const auto& w : all_words({"a", "b"}, 8)) {
      const auto r = run_kw(q, w);
      if (in_astar_bstar(w)) {
        const double m = tol - std::abs(r.p_acc - p);
        if (m < in_margin) in_margin = m, worst_in = w;
      } else {
        const double m = r.p_rej - (p - tol);
        if (m < out_margin) out_margin = m, worst_out = w;
      }
    }
    checks.check("members-accepted-with-p", in_margin, "worst_word=" + word_text(worst_in));
    checks.check("non-members-rejected", out_margin, "worst_word=" + word_text(worst_out));
  } else if (target == "rotation") {
    const auto q = amplified_rotation(t.p, t.k, t.d);
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint64_t j = 0; j <= 3 * t.p; ++j) {
      const auto r = run_kw(q, repeat("a", j));
      const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>((j * t.k) % t.p) / static_cast<double>(t.p));
      worst = std::min(worst, tol - std::abs(r.p_acc - std::pow(c * c, static_cast<double>(t.d))));
    }
    checks.check("closed-form-acceptance", worst);
  } else if (target == "modp") {
    const auto c = modp_qfa(t.p, g.seed);
    report.add("blocks", static_cast<std::uint64_t>(c.coefficients.size()));
    verify_unary(checks, c.automaton, 2 * t.p, [&](std::uint64_t j) { return j % t.p == 0; }, 0.125, tol);
  } else if (target == "modp-amplified") {
    const auto c = modp_qfa_amplified(t.p, t.error(0.6), g.seed);
    report.add("blocks", static_cast<std::uint64_t>(c.coefficients.size()));
    report.add("amplification", static_cast<std::uint64_t>(c.amplification));
    verify_unary(checks, c.automaton, 2 * t.p, [&](std::uint64_t j) { return j % t.p == 0; },
                 1.0 - t.error(0.6), tol);
  } else if (target == "equality") {
    const auto e = equality_qfa(t.n, t.error(0.5), t.limit(), g.seed);
    report.add("non_halting", static_cast<std::uint64_t>(e.automaton.non_halting_count()));
    verify_unary(checks, e.automaton, t.limit(), [&](std::uint64_t len) { return len == t.n; },
                 1.0 - t.error(0.5), tol);
  } else if (target == "lm") {
    const auto dfa = lm_dfa(t.m);
    const auto min = minimize_dfa(dfa);
    const double expected = 3.0 * static_cast<double>(t.m) + 2.0;
    checks.check("state-count", -std::abs(static_cast<double>(dfa.size()) - expected) + 0.0);
    checks.check("already-minimal", -std::abs(static_cast<double>(min.size()) - expected) + 0.0);
    const auto rfa = reversibilize(min);
    const auto eq = dfa_equivalent(dfa, rfa);
    checks.check("reversible", is_reversible(rfa).reversible ? 0.0 : -1.0);
    checks.check("equivalent", eq.equivalent ? 0.0 : -1.0,
                 eq.counterexample ? "counterexample=" + word_text(*eq.counterexample) : "");
    const double bound = 3.0 * (std::pow(2.0, static_cast<double>(t.m)) - 1.0);
    report.add("rfa_states", static_cast<std::uint64_t>(rfa.size()));
    report.add("rfa_non_halting", static_cast<std::uint64_t>(rfa.non_halting_count()));
    checks.check("size-lower-bound", static_cast<double>(rfa.size()) - bound);
  } else if (target == "prfa-trio") {
    const auto trio = parity_prfa_trio();
    const auto qfa = prfa_to_qfa(trio.prfa, tol);
    double correct = std::numeric_limits<double>::infinity(), agree = correct;
    for (std::uint64_t len = 0; len <= 40; ++len) {
      const Word w = repeat("a", len);
      const auto r = run_prfa(trio.prfa, w);
      const bool member = len >= 3 && len % 2 == 1;
      correct = std::min(correct, (member ? r.p_acc : r.p_rej) - (2.0 / 3.0 - tol));
      const auto k = run_kw(qfa, w);
      agree = std::min(agree, tol - tv_distance(r.distribution(), k.distribution()));
    }
    checks.check("correct-with-two-thirds", correct);
    checks.check("quantum-agrees", agree);
  } else {
    throw InvalidArgument("unknown target '" + target + "'");
  }
  return checks.finish();
}

AutomatonFile build_target(const std::string& target, const TargetParams& t, const Globals& g, Report& report) {
  AutomatonFile file;
  if (target == "sec22") {
    file.automaton = example_qfa();
  } else if (target == "astarbstar") {
    const double p = cubic_root_constant();
    file.automaton = astar_bstar_qfa();
    file.metadata["p"] = p;
    report.add("p", p);
    report.add("residual", std::abs(p * p * p + p - 1.0));
  } else if (target == "rotation") {
    file.automaton = amplified_rotation(t.p, t.k, t.d);
  } else if (target == "modp" || target == "modp-amplified") {
    const auto c = target == "modp" ? modp_qfa(t.p, g.seed) : modp_qfa_amplified(t.p, t.error(0.6), g.seed);
    Json ks = c.coefficients;
    std::string text;
    for (auto k : c.coefficients) text += (text.empty() ? "" : ",") + std::to_string(k);
    report.add("blocks", static_cast<std::uint64_t>(c.coefficients.size()));
    report.add("coefficients", ks, text);
    report.add("amplification", static_cast<std::uint64_t>(c.amplification));
    file.metadata["p"] = static_cast<double>(t.p);
    file.metadata["blocks"] = static_cast<double>(c.coefficients.size());
    file.metadata["amplification"] = static_cast<double>(c.amplification);
    file.automaton = c.automaton;
  } else if (target == "equality") {
    const auto e = equality_qfa(t.n, t.error(0.5), t.limit(), g.seed);
    std::string text;
    for (auto p : e.primes) text += (text.empty() ? "" : ",") + std::to_string(p);
    report.add("primes", Json(e.primes), text);
    report.add("amplification", static_cast<std::uint64_t>(e.amplification));
    report.add("worst_rejection", e.worst_rejection);
    file.metadata["n"] = static_cast<double>(t.n);
    file.metadata["n_max"] = static_cast<double>(t.limit());
    file.metadata["amplification"] = static_cast<double>(e.amplification);
    file.automaton = e.automaton;
  } else if (target == "lm") {
    file.automaton = lm_dfa(t.m);
    file.metadata["m"] = static_cast<double>(t.m);
  } else if (target == "prfa-trio") {
    file.automaton = parity_prfa_trio().prfa;
  } else {
    throw InvalidArgument("unknown target '" + target + "'");
  }
  report.add("kind", std::string(kind_name(file.kind())));
  report.add("states", static_cast<std::uint64_t>(state_count(file)));
  report.add("non_halting", static_cast<std::uint64_t>(non_halting_count(file)));
  return file;
}

void add_witness(Report& report, const std::string& key, const ClassicalAutomaton& min,
                 const std::optional<ConstructionWitness>& w) {
  if (!w) {
    report.add(key, Json(nullptr), "absent");
    return;
  }
  Json j{{"q1", min.states[w->q1]}, {"q2", min.states[w->q2]}, {"x", w->x}};
  std::string text = "present q1=" + min.states[w->q1] + " q2=" + min.states[w->q2] + " x=" + word_text(w->x);
  if (w->y) {
    j["y"] = *w->y;
    text += " y=" + word_text(*w->y);
  }
  report.add(key, std::move(j), std::move(text));
}

int dispatch(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  app.add_option("--tolerance", g.tolerance, "Numerical tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized searches")->capture_default_str();
  app.add_flag("--json", g.json, "Print reports as JSON");
  app.require_subcommand(1);
  app.fallthrough();

  std::function<int(Report&)> action;

  // run
  std::string run_file, run_word;
  RunOptions run_opt;
  bool run_trace = false;
  auto* run_cmd = app.add_subcommand("run", "Execute an automaton on a word");
  run_cmd->add_option("file", run_file, "Automaton file")->required();
  run_cmd->add_option("word", run_word, "Input word (empty for the empty word)");
  run_cmd->add_option("--mode", run_opt.mode, "kw | once | scans")
      ->check(CLI::IsMember({"kw", "once", "scans"}))
      ->capture_default_str();
  run_cmd->add_option("--scans", run_opt.scans, "Maximum number of scans")->capture_default_str();
  run_cmd->add_flag("--trace", run_trace, "Print cumulative probabilities after every symbol");
  run_cmd->callback([&] {
    action = [&](Report& r) {
      const auto file = load_checked(run_file, g.tolerance);
      const Word w = parse_input(alphabet_of(file), run_word);
      const auto outcome = execute(file, w, run_opt, &r);
      add_outcome(r, outcome.distribution());
      if (run_trace) {
        const auto symbols = file.kind() == AutomatonKind::dfa ? alphabet_of(file).encode_input(w)
                                                               : alphabet_of(file).encode(w);
        const bool per_symbol = outcome.trace.size() == symbols.size();
        for (std::size_t i = 0; i < outcome.trace.size(); ++i) {
          const auto& s = outcome.trace[i];
          const std::string sym = per_symbol ? std::string(alphabet_of(file).working_symbol(symbols[i])) : "";
          r.append("trace", Json{{"step", i + 1}, {"symbol", sym}, {"p_acc", s.p_acc}, {"p_rej", s.p_rej}},
                   std::to_string(i + 1) + " " + sym + " p_acc=" + format_probability(s.p_acc) +
                       " p_rej=" + format_probability(s.p_rej));
        }
      }
      return int{kExitSuccess};
    };
  });

  // analyze
  std::string analyze_file, analyze_out;
  std::size_t monoid_cap = kDefaultMonoidCap;
  auto* analyze_cmd = app.add_subcommand("analyze", "Structural analysis of a DFA");
  analyze_cmd->add_option("file", analyze_file, "dfa or rfa file")->required();
  analyze_cmd->add_option("--reversibilize", analyze_out, "Write the reversible automaton here");
  analyze_cmd->add_option("--monoid-cap", monoid_cap, "Transition monoid size limit")->capture_default_str();
  analyze_cmd->callback([&] {
    action = [&](Report& r) {
      const auto file = load_checked(analyze_file, g.tolerance);
      const auto min = minimize_dfa(require_classical(file, analyze_file));
      r.add("minimal_states", static_cast<std::uint64_t>(min.size()));
      const auto first = find_forbidden_construction(min);
      add_witness(r, "forbidden_construction", min, first);
      int code = kExitSuccess;
      try {
        add_witness(r, "prfa_forbidden_construction", min, find_prfa_forbidden_construction(min, monoid_cap));
      } catch (const CapacityError&) {
        r.add("prfa_forbidden_construction", Json("capacity-exceeded"), "capacity-exceeded");
        code = kExitCapacity;
      }
      r.add("minimal_reversible", is_reversible(min).reversible);
      r.add("reversible_form_exists", !first.has_value());
      if (!analyze_out.empty()) {
        const auto rfa = reversibilize(min);
        save_automaton(AutomatonFile{rfa, {}}, analyze_out);
        r.add("rfa_states", static_cast<std::uint64_t>(rfa.size()));
        r.add("rfa_non_halting", static_cast<std::uint64_t>(rfa.non_halting_count()));
        r.add("rfa_file", analyze_out);
      }
      return code;
    };
  });

  // build
  std::string build_target_name, build_out;
  TargetParams build_params;
  auto* build_cmd = app.add_subcommand("build", "Generate a concrete automaton");
  build_cmd->add_option("target", build_target_name, "Construction to generate")
      ->required()
      ->check(CLI::IsMember(kTargets));
  build_cmd->add_option("-o,--out", build_out, "Output file")->required();
  add_target_options(build_cmd, build_params);
  build_cmd->callback([&] {
    action = [&](Report& r) {
      const auto file = build_target(build_target_name, build_params, g, r);
      save_automaton(file, build_out);
      r.add("file", build_out);
      return int{kExitSuccess};
    };
  });

  // verify
  std::string verify_target_name;
  TargetParams verify_params;
  auto* verify_cmd = app.add_subcommand("verify", "Check a construction against its stated bounds");
  verify_cmd->add_option("target", verify_target_name, "Construction to check")
      ->required()
      ->check(CLI::IsMember(kTargets));
  add_target_options(verify_cmd, verify_params);
  verify_cmd->callback([&] {
    action = [&](Report& r) { return verify_target(verify_target_name, verify_params, g, r); };
  });

  // equiv
  std::string equiv_a, equiv_b;
  auto* equiv_cmd = app.add_subcommand("equiv", "Language equivalence of two deterministic automata");
  equiv_cmd->add_option("first", equiv_a, "dfa or rfa file")->required();
  equiv_cmd->add_option("second", equiv_b, "dfa or rfa file")->required();
  equiv_cmd->callback([&] {
    action = [&](Report& r) {
      const auto a = require_classical(load_checked(equiv_a, g.tolerance), equiv_a);
      const auto b = require_classical(load_checked(equiv_b, g.tolerance), equiv_b);
      const auto eq = dfa_equivalent(a, b);
      r.add("equivalent", eq.equivalent);
      if (eq.counterexample) r.add("counterexample", Json(*eq.counterexample), word_text(*eq.counterexample));
      return eq.equivalent ? int{kExitSuccess} : int{kExitVerificationFailed};
    };
  });

  // dist
  std::string dist_a, dist_b, dist_word, dist_word_b;
  bool dist_word_b_set = false;
  RunOptions dist_opt;
  auto* dist_cmd = app.add_subcommand("dist", "Variational distance between two run outcomes");
  dist_cmd->add_option("first", dist_a, "Automaton file")->required();
  dist_cmd->add_option("second", dist_b, "Automaton file")->required();
  dist_cmd->add_option("word", dist_word, "Input word for both runs");
  dist_cmd->add_option("--word-b", dist_word_b, "Different input word for the second run");
  dist_cmd->add_option("--mode", dist_opt.mode, "kw | once | scans")
      ->check(CLI::IsMember({"kw", "once", "scans"}))
      ->capture_default_str();
  dist_cmd->add_option("--scans", dist_opt.scans, "Maximum number of scans")->capture_default_str();
  dist_cmd->callback([&] {
    dist_word_b_set = dist_cmd->count("--word-b") > 0;
    action = [&](Report& r) {
      const auto a = load_checked(dist_a, g.tolerance);
      const auto b = load_checked(dist_b, g.tolerance);
      const auto ra = execute(a, parse_input(alphabet_of(a), dist_word), dist_opt, nullptr).distribution();
      const auto rb = execute(b, parse_input(alphabet_of(b), dist_word_b_set ? dist_word_b : dist_word),
                              dist_opt, nullptr)
                          .distribution();
      r.add("first", Json{{"p_acc", ra.p_acc}, {"p_rej", ra.p_rej}, {"p_non", ra.p_non}},
            format_probability(ra.p_acc) + "," + format_probability(ra.p_rej) + "," + format_probability(ra.p_non));
      r.add("second", Json{{"p_acc", rb.p_acc}, {"p_rej", rb.p_rej}, {"p_non", rb.p_non}},
            format_probability(rb.p_acc) + "," + format_probability(rb.p_rej) + "," + format_probability(rb.p_non));
      r.add("distance", tv_distance(ra, rb));
      return int{kExitSuccess};
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitInputError;
  }
  if (!(g.tolerance > 0.0)) {
    err << "error: --tolerance must be positive\n";
    return kExitInputError;
  }

  Report report;
  const int code = action(report);
  report.write(out, g.json);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum finite automata toolkit", "qfa"};
  try {
    return dispatch(app, args, out, err);
  } catch (const InvalidFile& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& v : e.violations) err << "  violation: " << v.message << '\n';
    return kExitInputError;
  } catch (const CapacityError& e) {
    err << "error: capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const SearchFailure& e) {
    err << "error: search failed: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace qfa::cli
