#include "qfa/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>

#include "qfa/error.hpp"

namespace qfa {

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

void require_valid(const ClassicalAutomaton& c) {
  if (auto v = validate(c); !v.empty()) throw InvalidArgument(v.front().message);
}

std::string unique_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += "'";
  return base;
}

struct MappingHash {
  std::size_t operator()(const std::vector<StateId>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace

StateId replay(const ClassicalAutomaton& plain, StateId q, const Word& word) {
  for (auto w : plain.alphabet.encode_input(word)) q = plain.next(q, w);
  return q;
}

std::vector<Tendency> classify_tendencies(const ClassicalAutomaton& plain) {
  if (plain.mode != HaltingMode::end_of_word) {
    throw InvalidArgument("tendencies are defined on plain automata");
  }
  const std::size_t n = plain.size();
  std::vector<std::vector<StateId>> preds(n);
  for (StateId q = 0; q < n; ++q) {
    for (std::size_t a = 1; a <= plain.alphabet.size(); ++a) preds[plain.next(q, a)].push_back(q);
  }
  auto reaches = [&](bool final_flag) {
    std::vector<bool> seen(n, false);
    std::deque<StateId> queue;
    for (StateId q = 0; q < n; ++q) {
      if (plain.is_accepting(q) == final_flag) {
        seen[q] = true;
        queue.push_back(q);
      }
    }
    while (!queue.empty()) {
      const StateId q = queue.front();
      queue.pop_front();
      for (auto p : preds[q]) {
        if (!seen[p]) {
          seen[p] = true;
          queue.push_back(p);
        }
      }
    }
    return seen;
  };
  const auto can_accept = reaches(true);
  const auto can_reject = reaches(false);
  std::vector<Tendency> out(n);
  for (StateId q = 0; q < n; ++q) {
    if (!can_reject[q]) {
      out[q] = Tendency::all_accepting;
    } else if (!can_accept[q]) {
      out[q] = Tendency::all_rejecting;
    } else {
      out[q] = Tendency::mixed;
    }
  }
  return out;
}

ClassicalAutomaton to_end_of_word(const ClassicalAutomaton& c) {
  require_valid(c);
  if (c.mode == HaltingMode::end_of_word) return c;

  std::set<std::string> taken(c.states.begin(), c.states.end());
  std::vector<StateId> remap(c.size(), kNoState);
  ClassicalAutomaton out;
  out.alphabet = c.alphabet;
  out.mode = HaltingMode::end_of_word;
  for (StateId q = 0; q < c.size(); ++q) {
    if (c.is_halting(q)) continue;
    remap[q] = out.states.size();
    out.states.push_back(c.states[q]);
  }
  const StateId accept_sink = out.states.size();
  out.states.push_back(unique_name("accept-sink", taken));
  const StateId reject_sink = out.states.size();
  out.states.push_back(unique_name("reject-sink", taken));

  auto target = [&](StateId t) {
    if (c.is_accepting(t)) return accept_sink;
    if (c.is_rejecting(t)) return reject_sink;
    return remap[t];
  };
  const std::size_t working = c.alphabet.working_size();
  out.classes.assign(out.states.size(), HaltClass::non_halting);
  out.transitions.assign(out.states.size(), std::vector<StateId>(working, kNoState));
  for (StateId q = 0; q < c.size(); ++q) {
    if (c.is_halting(q)) continue;
    const StateId nq = remap[q];
    for (std::size_t a = 1; a <= c.alphabet.size(); ++a) out.transitions[nq][a] = target(c.next(q, a));
    if (c.is_accepting(c.next(q, c.alphabet.right_end()))) out.classes[nq] = HaltClass::accepting;
  }
  for (std::size_t a = 1; a <= c.alphabet.size(); ++a) {
    out.transitions[accept_sink][a] = accept_sink;
    out.transitions[reject_sink][a] = reject_sink;
  }
  out.classes[accept_sink] = HaltClass::accepting;
  out.start = target(c.next(c.start, c.alphabet.left_end()));
  return out;
}

ClassicalAutomaton minimize_dfa(const ClassicalAutomaton& input) {
  const ClassicalAutomaton c = to_end_of_word(input);
  const std::size_t k = c.alphabet.size();

  // Reachable states in BFS order become local ids.
  std::vector<StateId> order;
  std::vector<std::size_t> local(c.size(), kUnset);
  order.push_back(c.start);
  local[c.start] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t a = 1; a <= k; ++a) {
      const StateId t = c.next(order[i], a);
      if (local[t] == kUnset) {
        local[t] = order.size();
        order.push_back(t);
      }
    }
  }
  const std::size_t m = order.size();
  std::vector<std::vector<std::size_t>> delta(m, std::vector<std::size_t>(k));
  std::vector<std::vector<std::vector<std::size_t>>> inverse(k, std::vector<std::vector<std::size_t>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      delta[i][a] = local[c.next(order[i], a + 1)];
      inverse[a][delta[i][a]].push_back(i);
    }
  }

  // Hopcroft partition refinement.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of(m);
  {
    std::vector<std::size_t> finals, others;
    for (std::size_t i = 0; i < m; ++i) (c.is_accepting(order[i]) ? finals : others).push_back(i);
    for (auto* part : {&finals, &others}) {
      if (part->empty()) continue;
      for (auto i : *part) block_of[i] = blocks.size();
      blocks.push_back(std::move(*part));
    }
  }
  std::vector<std::vector<char>> in_work;
  std::vector<std::pair<std::size_t, std::size_t>> work;
  auto push_work = [&](std::size_t b, std::size_t a) {
    if (!in_work[b][a]) {
      in_work[b][a] = 1;
      work.emplace_back(b, a);
    }
  };
  in_work.assign(blocks.size(), std::vector<char>(k, 0));
  if (blocks.size() == 2) {
    const std::size_t smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    for (std::size_t a = 0; a < k; ++a) push_work(smaller, a);
  }
  std::vector<char> marked(m, 0);
  std::vector<std::size_t> marked_count;
  while (!work.empty()) {
    const auto [splitter, a] = work.back();
    work.pop_back();
    in_work[splitter][a] = 0;

    std::vector<std::size_t> x;
    for (auto j : blocks[splitter]) {
      for (auto i : inverse[a][j]) {
        if (!marked[i]) {
          marked[i] = 1;
          x.push_back(i);
        }
      }
    }
    marked_count.assign(blocks.size(), 0);
    std::vector<std::size_t> touched;
    for (auto i : x) {
      if (marked_count[block_of[i]]++ == 0) touched.push_back(block_of[i]);
    }
    for (auto y : touched) {
      if (marked_count[y] == blocks[y].size()) continue;
      std::vector<std::size_t> inside, outside;
      for (auto i : blocks[y]) (marked[i] ? inside : outside).push_back(i);
      const std::size_t z = blocks.size();
      for (auto i : inside) block_of[i] = z;
      blocks[y] = std::move(outside);
      blocks.push_back(std::move(inside));
      in_work.emplace_back(k, 0);
      for (std::size_t b = 0; b < k; ++b) {
        if (in_work[y][b]) {
          push_work(z, b);
        } else {
          push_work(blocks[z].size() <= blocks[y].size() ? z : y, b);
        }
      }
    }
    for (auto i : x) marked[i] = 0;
  }

  // Canonical numbering by BFS over blocks.
  std::vector<std::size_t> new_id(blocks.size(), kUnset);
  std::vector<std::size_t> block_order;
  new_id[block_of[0]] = 0;
  block_order.push_back(block_of[0]);
  for (std::size_t i = 0; i < block_order.size(); ++i) {
    const std::size_t rep = *std::min_element(blocks[block_order[i]].begin(), blocks[block_order[i]].end());
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t b = block_of[delta[rep][a]];
      if (new_id[b] == kUnset) {
        new_id[b] = block_order.size();
        block_order.push_back(b);
      }
    }
  }

  ClassicalAutomaton out;
  out.alphabet = c.alphabet;
  out.mode = HaltingMode::end_of_word;
  out.start = 0;
  const std::size_t working = c.alphabet.working_size();
  for (auto b : block_order) {
    const std::size_t rep = *std::min_element(blocks[b].begin(), blocks[b].end());
    out.states.push_back(c.states[order[rep]]);
    out.classes.push_back(c.is_accepting(order[rep]) ? HaltClass::accepting : HaltClass::non_halting);
    std::vector<StateId> row(working, kNoState);
    for (std::size_t a = 0; a < k; ++a) row[a + 1] = new_id[block_of[delta[rep][a]]];
    out.transitions.push_back(std::move(row));
  }
  return out;
}

std::optional<ConstructionWitness> find_forbidden_construction(const ClassicalAutomaton& input) {
  const ClassicalAutomaton c = to_end_of_word(input);
  const std::size_t n = c.size();
  const std::size_t k = c.alphabet.size();
  const auto tendency = classify_tendencies(c);

  std::vector<std::vector<std::vector<StateId>>> inverse(k + 1, std::vector<std::vector<StateId>>(n));
  for (StateId q = 0; q < n; ++q) {
    for (std::size_t a = 1; a <= k; ++a) inverse[a][c.next(q, a)].push_back(q);
  }

  std::optional<std::pair<StateId, StateId>> best;
  std::vector<std::size_t> best_dist;
  std::vector<std::size_t> dist(n * n);
  for (StateId q2 = 0; q2 < n; ++q2) {
    if (tendency[q2] != Tendency::mixed) continue;
    // Backward BFS from (q2, q2) in the pair graph.
    std::fill(dist.begin(), dist.end(), kUnset);
    std::deque<std::size_t> queue;
    dist[q2 * n + q2] = 0;
    queue.push_back(q2 * n + q2);
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      const StateId p = node / n, r = node % n;
      for (std::size_t a = 1; a <= k; ++a) {
        for (auto pp : inverse[a][p]) {
          for (auto rr : inverse[a][r]) {
            const std::size_t prev = pp * n + rr;
            if (dist[prev] == kUnset) {
              dist[prev] = dist[node] + 1;
              queue.push_back(prev);
            }
          }
        }
      }
    }
    for (StateId q1 = 0; q1 < n; ++q1) {
      if (q1 == q2 || dist[q1 * n + q2] == kUnset) continue;
      if (!best || std::make_pair(q1, q2) < *best) {
        best = std::make_pair(q1, q2);
        best_dist = dist;
      }
      break;
    }
  }
  if (!best) return std::nullopt;

  ConstructionWitness w{best->first, best->second, {}, std::nullopt};
  StateId p = w.q1, r = w.q2;
  while (!(p == w.q2 && r == w.q2)) {
    const std::size_t d = best_dist[p * n + r];
    for (std::size_t a = 1; a <= k; ++a) {
      const StateId np = c.next(p, a), nr = c.next(r, a);
      if (best_dist[np * n + nr] + 1 == d) {
        w.x.emplace_back(c.alphabet.working_symbol(a));
        p = np;
        r = nr;
        break;
      }
    }
  }
  return w;
}

std::vector<MonoidElement> transition_monoid(const ClassicalAutomaton& input, std::size_t cap) {
  const ClassicalAutomaton c = to_end_of_word(input);
  const std::size_t n = c.size();
  std::vector<MonoidElement> elements;
  std::unordered_map<std::vector<StateId>, std::size_t, MappingHash> index;

  MonoidElement id;
  id.mapping.resize(n);
  for (StateId q = 0; q < n; ++q) id.mapping[q] = q;
  index.emplace(id.mapping, 0);
  elements.push_back(std::move(id));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t a = 1; a <= c.alphabet.size(); ++a) {
      std::vector<StateId> g(n);
      for (StateId q = 0; q < n; ++q) g[q] = c.next(elements[i].mapping[q], a);
      if (index.count(g)) continue;
      if (elements.size() >= cap) {
        throw CapacityError("transition monoid exceeds " + std::to_string(cap) + " elements");
      }
      Word witness = elements[i].witness;
      witness.emplace_back(c.alphabet.working_symbol(a));
      index.emplace(g, elements.size());
      elements.push_back({std::move(g), std::move(witness)});
    }
  }
  return elements;
}

std::optional<ConstructionWitness> find_prfa_forbidden_construction(const ClassicalAutomaton& input,
                                                                    std::size_t monoid_cap) {
  const ClassicalAutomaton c = to_end_of_word(input);
  const std::size_t n = c.size();
  const auto tendency = classify_tendencies(c);
  const auto monoid = transition_monoid(c, monoid_cap);

  // First monoid element y with y(q1) = q2 and y(q2) = q2.
  std::vector<std::size_t> first_y(n * n, kUnset);
  for (std::size_t e = 0; e < monoid.size(); ++e) {
    const auto& f = monoid[e].mapping;
    for (StateId q1 = 0; q1 < n; ++q1) {
      const StateId q2 = f[q1];
      if (q2 != q1 && f[q2] == q2 && first_y[q1 * n + q2] == kUnset) first_y[q1 * n + q2] = e;
    }
  }

  for (const auto& x : monoid) {
    const auto& f = x.mapping;
    for (StateId q1 = 0; q1 < n; ++q1) {
      if (f[q1] != q1 || tendency[q1] != Tendency::mixed) continue;
      for (StateId q2 = 0; q2 < n; ++q2) {
        if (q2 == q1 || tendency[q2] != Tendency::mixed) continue;
        const std::size_t y = first_y[q1 * n + q2];
        if (y == kUnset) continue;
        bool returns = false;
        StateId s = q2;
        for (std::size_t i = 0; i < n && !returns; ++i) {
          s = f[s];
          returns = (s == q2);
        }
        if (!returns) return ConstructionWitness{q1, q2, x.witness, monoid[y].witness};
      }
    }
  }
  return std::nullopt;
}

bool verify_forbidden_construction(const ClassicalAutomaton& input, const ConstructionWitness& w) {
  const ClassicalAutomaton c = to_end_of_word(input);
  if (w.q1 >= c.size() || w.q2 >= c.size() || w.q1 == w.q2) return false;
  const auto tendency = classify_tendencies(c);
  return replay(c, w.q1, w.x) == w.q2 && replay(c, w.q2, w.x) == w.q2 &&
         tendency[w.q2] == Tendency::mixed;
}

bool verify_prfa_forbidden_construction(const ClassicalAutomaton& input, const ConstructionWitness& w) {
  const ClassicalAutomaton c = to_end_of_word(input);
  if (!w.y || w.q1 >= c.size() || w.q2 >= c.size()) return false;
  const auto tendency = classify_tendencies(c);
  if (tendency[w.q1] != Tendency::mixed || tendency[w.q2] != Tendency::mixed) return false;
  if (replay(c, w.q1, w.x) != w.q1) return false;
  if (replay(c, w.q1, *w.y) != w.q2 || replay(c, w.q2, *w.y) != w.q2) return false;
  StateId s = w.q2;
  for (std::size_t i = 0; i < c.size(); ++i) {
    s = replay(c, s, w.x);
    if (s == w.q2) return false;
  }
  return true;
}

namespace {

struct WorkState {
  std::string name;
  bool final = false;
  Tendency tendency = Tendency::mixed;
  std::vector<std::size_t> next;  // by input symbol, 0-based
};

// Drops states unreachable from `start`, keeping relative order.
void compact(std::vector<WorkState>& states, std::size_t& start) {
  std::vector<bool> seen(states.size(), false);
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop_front();
    for (auto t : states[q].next) {
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  std::vector<std::size_t> remap(states.size(), kUnset);
  std::vector<WorkState> out;
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (!seen[q]) continue;
    remap[q] = out.size();
    out.push_back(std::move(states[q]));
  }
  for (auto& s : out) {
    for (auto& t : s.next) t = remap[t];
  }
  start = remap[start];
  states = std::move(out);
}

struct Tuple {
  std::size_t q1, q2, target, symbol;
};

}  // namespace

ClassicalAutomaton reversibilize(const ClassicalAutomaton& input) {
  if (input.mode != HaltingMode::end_of_word) {
    throw InvalidArgument("reversibilize expects a plain automaton");
  }
  require_valid(input);
  if (auto w = find_forbidden_construction(input)) {
    throw ForbiddenConstructionError("forbidden construction at ('" + input.states[w->q1] + "', '" +
                                     input.states[w->q2] + "') with x = '" + format_word(w->x) + "'");
  }
  const std::size_t k = input.alphabet.size();
  const auto tendency = classify_tendencies(input);

  std::vector<WorkState> states(input.size());
  for (StateId q = 0; q < input.size(); ++q) {
    states[q].name = input.states[q];
    states[q].final = input.is_accepting(q);
    states[q].tendency = tendency[q];
    for (std::size_t a = 1; a <= k; ++a) states[q].next.push_back(input.next(q, a));
  }
  std::size_t start = input.start;
  compact(states, start);

  auto mixed = [&](std::size_t q) { return states[q].tendency == Tendency::mixed; };

  for (;;) {
    const std::size_t n = states.size();
    std::vector<Tuple> tuples;
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<std::vector<std::size_t>> preds(n);
      for (std::size_t q = 0; q < n; ++q) {
        if (mixed(q) && mixed(states[q].next[a])) preds[states[q].next[a]].push_back(q);
      }
      for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t i = 0; i < preds[t].size(); ++i) {
          for (std::size_t j = i + 1; j < preds[t].size(); ++j) {
            auto p = preds[t][i], r = preds[t][j];
            if (states[r].name < states[p].name) std::swap(p, r);
            tuples.push_back({p, r, t, a});
          }
        }
      }
    }
    if (tuples.empty()) break;

    // States reachable from each tuple target through mixed states.
    std::map<std::size_t, std::vector<bool>> reach;
    for (const auto& t : tuples) {
      if (reach.count(t.target)) continue;
      std::vector<bool> seen(n, false);
      std::deque<std::size_t> queue{t.target};
      seen[t.target] = true;
      while (!queue.empty()) {
        const auto q = queue.front();
        queue.pop_front();
        for (auto s : states[q].next) {
          if (!seen[s] && mixed(s)) {
            seen[s] = true;
            queue.push_back(s);
          }
        }
      }
      reach.emplace(t.target, std::move(seen));
    }

    const Tuple* chosen = nullptr;
    auto key = [&](const Tuple& t) {
      return std::tie(states[t.q1].name, states[t.q2].name, states[t.target].name,
                      input.alphabet.symbols()[t.symbol]);
    };
    for (const auto& t : tuples) {
      const auto& r = reach.at(t.target);
      const bool maximal = std::none_of(tuples.begin(), tuples.end(),
                                        [&](const Tuple& o) { return r[o.q1] || r[o.q2]; });
      if (maximal && (!chosen || key(t) < key(*chosen))) chosen = &t;
    }
    if (!chosen) throw Error("no maximal non-reversibility; the ordering is cyclic");
    const Tuple pick = *chosen;

    // Duplicate the target and everything reachable from it.
    const auto& dup = reach.at(pick.target);
    std::vector<std::size_t> copy0(n, kUnset), copy1(n, kUnset);
    std::vector<WorkState> grown = states;
    for (std::size_t q = 0; q < n; ++q) {
      if (!dup[q]) continue;
      copy0[q] = grown.size();
      grown.push_back(states[q]);
      grown.back().name = states[q].name + "#0";
      copy1[q] = grown.size();
      grown.push_back(states[q]);
      grown.back().name = states[q].name + "#1";
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (!dup[q]) continue;
      for (std::size_t a = 0; a < k; ++a) {
        const auto t = states[q].next[a];
        if (dup[t]) {
          grown[copy0[q]].next[a] = copy0[t];
          grown[copy1[q]].next[a] = copy1[t];
        }
      }
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (dup[q]) continue;
      for (std::size_t a = 0; a < k; ++a) {
        const auto t = states[q].next[a];
        if (!dup[t]) continue;
        const bool second = (q == pick.q2 && a == pick.symbol && t == pick.target);
        grown[q].next[a] = second ? copy1[t] : copy0[t];
      }
    }
    if (dup[start]) start = copy0[start];
    states = std::move(grown);
    compact(states, start);  // originals of duplicated states are now unreachable
  }

  // Conversion to halt-on-enter form.
  std::set<std::string> taken;
  for (const auto& s : states) taken.insert(s.name);
  std::string accept_base = "accept", reject_base = "reject";
  for (const auto& s : states) {
    if (s.tendency == Tendency::all_accepting) accept_base = s.name;
    if (s.tendency == Tendency::all_rejecting) reject_base = s.name;
  }
  if (!std::any_of(states.begin(), states.end(), [&](const WorkState& s) { return s.name == accept_base; })) {
    accept_base = unique_name(accept_base, taken);
  }
  if (!std::any_of(states.begin(), states.end(), [&](const WorkState& s) { return s.name == reject_base; })) {
    reject_base = unique_name(reject_base, taken);
  }

  ClassicalAutomaton out;
  out.alphabet = input.alphabet;
  out.mode = HaltingMode::halt_on_enter;
  const std::size_t working = input.alphabet.working_size();

  if (!mixed(start)) {
    const bool accepts = states[start].tendency == Tendency::all_accepting;
    out.states = {states[start].name, accepts ? accept_base : reject_base};
    out.classes = {HaltClass::non_halting, accepts ? HaltClass::accepting : HaltClass::rejecting};
    out.transitions = {std::vector<StateId>(working, 0), std::vector<StateId>(working, kNoState)};
    out.transitions[0][out.alphabet.left_end()] = 1;
    out.transitions[0][out.alphabet.right_end()] = 1;
    out.start = 0;
    return out;
  }

  std::vector<StateId> remap(states.size(), kNoState);
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (!mixed(q)) continue;
    remap[q] = out.states.size();
    out.states.push_back(states[q].name);
    out.classes.push_back(HaltClass::non_halting);
  }
  const std::size_t non_halting = out.states.size();
  out.transitions.assign(non_halting, std::vector<StateId>(working, kNoState));
  out.start = remap[start];

  // Halting targets are handed out per symbol so that every symbol stays
  // injective; copies of a class are shared across symbols.
  std::vector<std::vector<std::pair<StateId, std::size_t>>> accept_edges, reject_edges;
  accept_edges.resize(working);
  reject_edges.resize(working);
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (!mixed(q)) continue;
    const StateId nq = remap[q];
    out.transitions[nq][out.alphabet.left_end()] = nq;
    for (std::size_t a = 0; a < k; ++a) {
      const auto t = states[q].next[a];
      if (mixed(t)) {
        out.transitions[nq][a + 1] = remap[t];
      } else if (states[t].tendency == Tendency::all_accepting) {
        accept_edges[a + 1].push_back({nq, a + 1});
      } else {
        reject_edges[a + 1].push_back({nq, a + 1});
      }
    }
    (states[q].final ? accept_edges : reject_edges)[out.alphabet.right_end()].push_back(
        {nq, out.alphabet.right_end()});
  }
  auto add_halting = [&](const std::vector<std::vector<std::pair<StateId, std::size_t>>>& edges,
                         const std::string& base, HaltClass cls) {
    std::size_t copies = 0;
    for (const auto& e : edges) copies = std::max(copies, e.size());
    const StateId first = out.states.size();
    for (std::size_t i = 0; i < copies; ++i) {
      out.states.push_back(i == 0 ? base : unique_name(base + "~" + std::to_string(i), taken));
      out.classes.push_back(cls);
      out.transitions.emplace_back(working, kNoState);
    }
    for (const auto& e : edges) {
      for (std::size_t i = 0; i < e.size(); ++i) out.transitions[e[i].first][e[i].second] = first + i;
    }
  };
  add_halting(accept_edges, accept_base, HaltClass::accepting);
  add_halting(reject_edges, reject_base, HaltClass::rejecting);
  return out;
}

EquivalenceResult dfa_equivalent(const ClassicalAutomaton& a_in, const ClassicalAutomaton& b_in) {
  {
    auto sa = a_in.alphabet.symbols(), sb = b_in.alphabet.symbols();
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) throw InvalidArgument("alphabet mismatch");
  }
  const ClassicalAutomaton a = to_end_of_word(a_in);
  const ClassicalAutomaton b = to_end_of_word(b_in);
  const std::size_t k = a.alphabet.size();
  std::vector<std::size_t> b_symbol(k + 1);
  for (std::size_t s = 1; s <= k; ++s) b_symbol[s] = *b.alphabet.index_of(a.alphabet.symbols()[s - 1]);

  const std::size_t nb = b.size();
  std::vector<std::size_t> parent(a.size() * nb, kUnset);
  std::vector<std::size_t> via(a.size() * nb, 0);
  std::deque<std::size_t> queue;
  const std::size_t root = a.start * nb + b.start;
  parent[root] = root;
  queue.push_back(root);
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    const StateId p = node / nb, r = node % nb;
    if (a.is_accepting(p) != b.is_accepting(r)) {
      Word w;
      for (std::size_t cur = node; cur != root; cur = parent[cur]) {
        w.emplace_back(a.alphabet.working_symbol(via[cur]));
      }
      std::reverse(w.begin(), w.end());
      return {false, std::move(w)};
    }
    for (std::size_t s = 1; s <= k; ++s) {
      const std::size_t nxt = a.next(p, s) * nb + b.next(r, b_symbol[s]);
      if (parent[nxt] == kUnset) {
        parent[nxt] = node;
        via[nxt] = s;
        queue.push_back(nxt);
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace qfa
