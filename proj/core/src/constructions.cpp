#include "qfa/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "qfa/error.hpp"
#include "qfa/random.hpp"

namespace qfa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rotation_angle(std::uint64_t p, std::uint64_t multiple) {
  return kTwoPi * static_cast<double>(multiple % p) / static_cast<double>(p);
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

void require_coefficient(std::uint64_t p, std::uint64_t k) {
  if (k < 1 || k >= p) throw InvalidArgument("coefficient must lie in 1..p-1");
}

// cos^2 of the rotation angle after j steps of coefficient k.
double cos_squared(std::uint64_t p, std::uint64_t k, std::uint64_t j) {
  const double c = std::cos(rotation_angle(p, (j % p) * k));
  return c * c;
}

std::string bit_label(std::size_t value, std::size_t d) {
  std::string s(d, '0');
  for (std::size_t i = 0; i < d; ++i) {
    if ((value >> (d - 1 - i)) & 1u) s[i] = '1';
  }
  return s;
}

// d-fold tensor power of [[cos, i sin], [i sin, cos]].
std::vector<std::vector<MatrixEntry>> tensor_rotation(double angle, std::size_t d) {
  const double c = std::cos(angle), s = std::sin(angle);
  std::vector<Complex> weight(d + 1);
  static const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t h = 0; h <= d; ++h) {
    weight[h] = std::pow(c, static_cast<double>(d - h)) * std::pow(s, static_cast<double>(h)) *
                kIPowers[h % 4];
  }
  const std::size_t dim = std::size_t{1} << d;
  std::vector<std::vector<MatrixEntry>> cols(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    for (std::size_t row = 0; row < dim; ++row) {
      const Complex w = weight[std::popcount(row ^ col)];
      if (w != Complex{}) cols[col].push_back({row, w});
    }
  }
  return cols;
}

// One rotation block: 2^d non-halting states followed by their halting
// counterparts. The right endmarker undoes a rotation by `shift` steps and
// then swaps every non-halting state with its halting partner.
struct Block {
  std::vector<std::string> names;
  std::vector<HaltClass> classes;
  SquareMatrix letter;
  SquareMatrix right_end;
};

Block rotation_block(std::uint64_t p, std::uint64_t k, std::size_t d, std::uint64_t shift) {
  const std::size_t half = std::size_t{1} << d;
  Block b;
  b.letter = SquareMatrix(2 * half);
  b.right_end = SquareMatrix(2 * half);
  for (std::size_t v = 0; v < half; ++v) b.names.push_back("q" + bit_label(v, d));
  for (std::size_t v = 0; v < half; ++v) {
    if (v == 0) {
      b.names.push_back("acc");
    } else {
      b.names.push_back(d == 1 ? "rej" : "rej" + bit_label(v, d));
    }
  }
  b.classes.assign(half, HaltClass::non_halting);
  b.classes.push_back(HaltClass::accepting);
  b.classes.insert(b.classes.end(), half - 1, HaltClass::rejecting);

  auto forward = tensor_rotation(rotation_angle(p, k), d);
  for (std::size_t v = 0; v < half; ++v) {
    b.letter.set_column(v, std::move(forward[v]));
    b.letter.set_column(half + v, {{half + v, 1.0}});
  }
  const std::uint64_t undo = (p - (shift % p) * k % p) % p;
  auto inverse = tensor_rotation(rotation_angle(p, undo), d);
  for (std::size_t v = 0; v < half; ++v) {
    for (auto& e : inverse[v]) e.row += half;
    b.right_end.set_column(v, std::move(inverse[v]));
    b.right_end.set_column(half + v, {{v, 1.0}});
  }
  return b;
}

QuantumAutomaton standalone(Block b) {
  QuantumAutomaton q;
  q.states = std::move(b.names);
  q.alphabet = Alphabet({"a"});
  for (StateId i = 0; i < q.states.size(); ++i) {
    if (b.classes[i] == HaltClass::accepting) q.accepting.push_back(i);
    if (b.classes[i] == HaltClass::rejecting) q.rejecting.push_back(i);
  }
  q.initial = StateVector::basis(q.states.size(), 0);
  q.unitaries = {SquareMatrix::identity(q.states.size()), std::move(b.letter), std::move(b.right_end)};
  return q;
}

// A start state followed by the blocks. The left endmarker is the reflection
// exchanging |start> with the uniform superposition of the blocks' first states.
QuantumAutomaton composite(std::vector<Block> blocks) {
  QuantumAutomaton q;
  q.alphabet = Alphabet({"a"});
  q.states.push_back("start");
  std::vector<HaltClass> classes{HaltClass::non_halting};
  std::vector<std::size_t> entry;
  std::vector<SquareMatrix> letters{SquareMatrix::identity(1)}, ends{SquareMatrix::identity(1)};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    entry.push_back(q.states.size());
    for (const auto& n : blocks[i].names) q.states.push_back("b" + std::to_string(i) + "." + n);
    classes.insert(classes.end(), blocks[i].classes.begin(), blocks[i].classes.end());
    letters.push_back(std::move(blocks[i].letter));
    ends.push_back(std::move(blocks[i].right_end));
  }
  const std::size_t dim = q.states.size();
  for (StateId i = 0; i < dim; ++i) {
    if (classes[i] == HaltClass::accepting) q.accepting.push_back(i);
    if (classes[i] == HaltClass::rejecting) q.rejecting.push_back(i);
  }
  q.initial = StateVector::basis(dim, 0);

  // H = I - w w^T with w = e_start - u, u the uniform superposition.
  const double share = 1.0 / std::sqrt(static_cast<double>(entry.size()));
  SquareMatrix left = SquareMatrix::identity(dim);
  std::vector<MatrixEntry> to_blocks;
  for (auto e : entry) to_blocks.push_back({e, share});
  left.set_column(0, to_blocks);
  for (auto e : entry) {
    std::vector<MatrixEntry> col{{0, share}};
    for (auto f : entry) col.push_back({f, (f == e ? 1.0 : 0.0) - share * share});
    left.set_column(e, std::move(col));
  }
  q.unitaries = {std::move(left), direct_sum(letters), direct_sum(ends)};
  return q;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Smallest fraction over j in 1..p-1 of coefficients satisfying `good`.
template <typename Good>
double min_fraction(std::uint64_t p, const std::vector<std::uint64_t>& ks, Good good) {
  double worst = 1.0;
  for (std::uint64_t j = 1; j < p; ++j) {
    std::size_t count = 0;
    for (auto k : ks) count += good(k, j) ? 1 : 0;
    worst = std::min(worst, static_cast<double>(count) / static_cast<double>(ks.size()));
  }
  return worst;
}

}  // namespace

QuantumAutomaton example_qfa() {
  const double h = 1.0 / std::sqrt(2.0);
  QuantumAutomatonBuilder b({"q0", "q1", "q_acc", "q_rej"}, {"a"});
  b.accepting("q_acc").rejecting("q_rej");
  b.image("a", "q0", {{"q0", 0.5}, {"q1", 0.5}, {"q_rej", h}});
  b.image("a", "q1", {{"q0", 0.5}, {"q1", 0.5}, {"q_rej", -h}});
  b.image("$", "q0", {{"q_rej", 1.0}});
  b.image("$", "q1", {{"q_acc", 1.0}});
  return b.build();
}

double cubic_root_constant() {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (mid * mid * mid + mid - 1.0 < 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  if (std::abs(root * root * root + root - 1.0) >= 1e-13) throw SearchFailure("cubic root not certified");
  return root;
}

QuantumAutomaton astar_bstar_qfa() {
  const double p = cubic_root_constant();
  const double mix = std::sqrt(p * (1.0 - p));
  QuantumAutomatonBuilder b({"q0", "q1", "q_acc", "q_rej"}, {"a", "b"});
  b.accepting("q_acc").rejecting("q_rej");
  b.initial(StateVector({std::sqrt(1.0 - p), std::sqrt(p), 0.0, 0.0}));
  b.image("a", "q0", {{"q0", 1.0 - p}, {"q1", mix}, {"q_rej", std::sqrt(p)}});
  b.image("a", "q1", {{"q0", mix}, {"q1", p}, {"q_rej", -std::sqrt(1.0 - p)}});
  b.image("b", "q0", {{"q_rej", 1.0}});
  b.image("b", "q1", {{"q1", 1.0}});
  b.image("$", "q0", {{"q_rej", 1.0}});
  b.image("$", "q1", {{"q_acc", 1.0}});
  return b.build();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

bool is_good_coefficient(std::uint64_t p, std::uint64_t k, std::uint64_t j) {
  require_prime(p);
  require_coefficient(p, k);
  if (j % p == 0) throw InvalidArgument("j must not be divisible by p");
  return cos_squared(p, k, j) <= 0.5;
}

QuantumAutomaton rotation_automaton(std::uint64_t p, std::uint64_t k) {
  return amplified_rotation(p, k, 1);
}

QuantumAutomaton amplified_rotation(std::uint64_t p, std::uint64_t k, std::size_t d) {
  require_prime(p);
  require_coefficient(p, k);
  if (d < 1) throw InvalidArgument("amplification must be at least 1");
  if (d > kMaxAmplification) {
    throw CapacityError("amplification " + std::to_string(d) + " exceeds " +
                        std::to_string(kMaxAmplification));
  }
  return standalone(rotation_block(p, k, d, 0));
}

double GoodSequence::min_good_fraction() const {
  if (coefficients.empty()) return 0.0;
  return min_fraction(p, coefficients, [this](std::uint64_t k, std::uint64_t j) {
    return cos_squared(p, k, j) <= 0.5;
  });
}

std::size_t good_sequence_length(std::uint64_t p) {
  return static_cast<std::size_t>(std::ceil(8.0 * std::log(static_cast<double>(p))));
}

GoodSequence find_good_sequence(std::uint64_t p, std::uint64_t seed) {
  require_prime(p);
  if (p < 3) throw InvalidArgument("p must be at least 3");
  Rng rng(seed);
  GoodSequence seq{p, std::vector<std::uint64_t>(good_sequence_length(p))};
  for (std::size_t attempt = 0; attempt < kSequenceAttempts; ++attempt) {
    for (auto& k : seq.coefficients) k = rng.uniform_int(1, p - 1);
    if (seq.verify()) return seq;
  }
  throw SearchFailure("no good sequence for p = " + std::to_string(p) + " within " +
                      std::to_string(kSequenceAttempts) + " attempts");
}

std::size_t choose_amplification(std::uint64_t p, double delta) {
  require_prime(p);
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 1/2)");
  constexpr double kSlack = 1e-9;
  std::vector<std::uint64_t> all(p - 1);
  for (std::uint64_t k = 1; k < p; ++k) all[k - 1] = k;
  for (std::size_t d = 1; d <= 64; ++d) {
    const double fraction = min_fraction(p, all, [&](std::uint64_t k, std::uint64_t j) {
      return std::pow(cos_squared(p, k, j), static_cast<double>(d)) <= delta + kSlack;
    });
    if (fraction >= 1.0 - delta - kSlack) return d;
  }
  throw SearchFailure("no amplification up to 64 reaches delta = " + std::to_string(delta));
}

ModularCounter modp_qfa(std::uint64_t p, std::uint64_t seed) {
  const auto seq = find_good_sequence(p, seed);
  std::vector<Block> blocks;
  for (auto k : seq.coefficients) blocks.push_back(rotation_block(p, k, 1, 0));
  return {composite(std::move(blocks)), p, seq.coefficients, 1};
}

ModularCounter modp_qfa_amplified(std::uint64_t p, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  require_prime(p);
  if (p < 3) throw InvalidArgument("p must be at least 3");
  const double delta = epsilon / 3.0;
  if (delta >= 0.5) throw InvalidArgument("epsilon too large");
  const std::size_t d = choose_amplification(p, delta);
  if (d > kMaxAmplification) throw CapacityError("amplification " + std::to_string(d) + " too large");

  auto block_good = [&](std::uint64_t k, std::uint64_t j) {
    return std::pow(cos_squared(p, k, j), static_cast<double>(d)) <= delta + 1e-9;
  };
  // Shortest sequence in which every j has at least 1 - 2 delta good blocks.
  Rng rng(seed);
  const std::size_t max_length = good_sequence_length(p);
  const std::size_t tries = kSequenceAttempts / max_length + 1;
  std::vector<std::uint64_t> ks;
  for (std::size_t length = 1; length <= max_length; ++length) {
    ks.resize(length);
    for (std::size_t t = 0; t < tries; ++t) {
      for (auto& k : ks) k = rng.uniform_int(1, p - 1);
      if (min_fraction(p, ks, block_good) >= 1.0 - 2.0 * delta - 1e-12) {
        std::vector<Block> blocks;
        for (auto k : ks) blocks.push_back(rotation_block(p, k, d, 0));
        return {composite(std::move(blocks)), p, ks, d};
      }
    }
  }
  throw SearchFailure("no delta-good sequence of amplified blocks found");
}

EqualityRecognizer equality_qfa(std::uint64_t n, double epsilon, std::uint64_t n_max,
                                std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (n_max < 2 * n) throw InvalidArgument("n_max must be at least 2n");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");

  // Candidate primes start at 3: a prime of 2 rotates by pi and never rejects.
  std::vector<std::uint64_t> primes;
  std::vector<GoodSequence> sequences;
  auto extend = [&] {
    std::uint64_t c = primes.empty() ? 3 : primes.back() + 2;
    while (!is_prime(c)) c += 2;
    primes.push_back(c);
    sequences.push_back(find_good_sequence(c, mix_seed(seed, c)));
  };

  // cos^2 per prime, residue and coefficient; the rejection of a block on
  // a^N depends only on (N - n) mod p.
  auto block_rejection = [&](std::size_t i, std::uint64_t residue, std::size_t d) {
    double sum = 0.0;
    for (auto k : sequences[i].coefficients) {
      sum += 1.0 - std::pow(cos_squared(primes[i], k, residue), static_cast<double>(d));
    }
    return sum / static_cast<double>(sequences[i].length());
  };

  struct Design {
    std::size_t count = 0, d = 0, states = 0;
    double worst = 0.0;
  };
  std::optional<Design> best;
  const double target = 1.0 - epsilon;
  for (std::size_t count = 1;; ++count) {
    while (primes.size() < count) extend();
    std::size_t blocks = 0;
    for (std::size_t i = 0; i < count; ++i) blocks += sequences[i].length();
    if (1 + 2 * blocks > kEqualityStateBudget) break;
    if (best && 1 + 2 * blocks >= best->states) break;
    for (std::size_t d = 1; d <= kMaxAmplification; ++d) {
      const std::size_t states = 1 + blocks * (std::size_t{1} << d);
      if (states > kEqualityStateBudget || (best && states >= best->states)) break;
      std::vector<std::vector<double>> table(count);
      for (std::size_t i = 0; i < count; ++i) {
        table[i].resize(primes[i]);
        for (std::uint64_t r = 1; r < primes[i]; ++r) table[i][r] = block_rejection(i, r, d);
      }
      double worst = 1.0;
      for (std::uint64_t big_n = 0; big_n <= n_max && worst >= target; ++big_n) {
        if (big_n == n) continue;
        const std::uint64_t diff = big_n > n ? big_n - n : n - big_n;
        // The left endmarker weights every block equally.
        double rej = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
          const std::uint64_t r = big_n > n ? diff % primes[i] : (primes[i] - diff % primes[i]) % primes[i];
          rej += table[i][r] * static_cast<double>(sequences[i].length());
        }
        worst = std::min(worst, rej / static_cast<double>(blocks));
      }
      if (worst >= target) {
        best = Design{count, d, states, worst};
        break;
      }
    }
  }
  if (!best) {
    throw CapacityError("no equality recognizer within " + std::to_string(kEqualityStateBudget) +
                        " non-halting states");
  }

  EqualityRecognizer out;
  out.amplification = best->d;
  out.worst_rejection = best->worst;
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < best->count; ++i) {
    out.primes.push_back(primes[i]);
    out.coefficients.push_back(sequences[i].coefficients);
  }
  for (std::size_t i = 0; i < best->count; ++i) {
    for (auto k : sequences[i].coefficients) blocks.push_back(rotation_block(primes[i], k, best->d, n));
  }
  out.automaton = composite(std::move(blocks));
  return out;
}

ClassicalAutomaton lm_dfa(std::size_t m) {
  if (m < 1) throw InvalidArgument("m must be at least 1");
  ClassicalAutomatonBuilder b({"x", "y", "z"}, HaltingMode::end_of_word);
  auto a_name = [m](std::size_t i) { return i == m ? std::string("F") : "A" + std::to_string(i); };
  for (std::size_t i = 0; i < m; ++i) {
    b.add_state(a_name(i));
    b.add_state("B" + std::to_string(i));
    b.add_state("C" + std::to_string(i));
  }
  b.add_state("F", HaltClass::accepting);
  b.add_state("D");
  for (std::size_t i = 0; i < m; ++i) {
    const std::string a = a_name(i), bi = "B" + std::to_string(i), ci = "C" + std::to_string(i);
    b.transition(a, "x", bi).transition(a, "z", ci).transition(a, "y", "D");
    b.transition(bi, "y", a_name(i + 1)).transition(bi, "x", "F").transition(bi, "z", "D");
    b.transition(ci, "y", a_name(i + 1)).transition(ci, "x", "D").transition(ci, "z", "D");
  }
  for (const char* s : {"x", "y", "z"}) b.transition("F", s, "D").transition("D", s, "D");
  b.start("A0");
  return b.build();
}

ParityTrio parity_prfa_trio() {
  ParityTrio trio;
  {
    ClassicalAutomatonBuilder b({"a"}, HaltingMode::halt_on_enter);
    b.add_state("even");
    b.add_state("odd");
    b.add_state("acc", HaltClass::accepting);
    b.add_state("rej", HaltClass::rejecting);
    b.transition("even", "^", "even").transition("odd", "^", "odd");
    b.transition("even", "a", "odd").transition("odd", "a", "even");
    b.transition("even", "$", "rej").transition("odd", "$", "acc");
    trio.rfas[0] = b.start("even").build();
  }
  for (int variant : {1, 2}) {
    const HaltClass second = variant == 1 ? HaltClass::accepting : HaltClass::rejecting;
    ClassicalAutomatonBuilder b({"a"}, HaltingMode::halt_on_enter);
    b.add_state("s0");
    b.add_state("s1");
    b.add_state("r0", HaltClass::rejecting);
    b.add_state("r1", HaltClass::rejecting);
    b.transition("s0", "^", "s0").transition("s1", "^", "s1");
    b.transition("s0", "$", "r0").transition("s1", "$", "r1");
    b.transition("s0", "a", "s1");
    if (second == HaltClass::accepting) {
      b.add_state("acc", HaltClass::accepting);
      b.transition("s1", "a", "acc");
    } else {
      b.transition("s1", "a", "r0");
    }
    trio.rfas[variant] = b.start("s0").build();
  }

  ProbabilisticAutomaton& mix = trio.prfa;
  mix.alphabet = Alphabet({"a"});
  for (std::size_t r = 0; r < 3; ++r) {
    const auto part = rfa_to_prfa(trio.rfas[r]);
    const StateId offset = mix.states.size();
    for (StateId q = 0; q < part.size(); ++q) {
      mix.states.push_back("r" + std::to_string(r + 1) + "." + part.states[q]);
      mix.classes.push_back(part.classes[q]);
      auto rows = part.transitions[q];
      for (auto& edges : rows) {
        for (auto& e : edges) e.target += offset;
      }
      mix.transitions.push_back(std::move(rows));
    }
    for (const auto& e : part.initial) mix.initial.push_back({e.target + offset, e.probability / 3.0});
  }
  return trio;
}

}  // namespace qfa
