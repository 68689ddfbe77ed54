#include "ranksched/solvers.hpp"

#include <algorithm>
#include <bit>

#include "ranksched/detail/engine.hpp"
#include "ranksched/errors.hpp"
#include "ranksched/greedy.hpp"

namespace ranksched::solvers {

namespace {

constexpr std::uint32_t kUnassigned = UINT32_MAX;

void require_two_machine_unit(const Game& g, const char* op) {
  detail::require_job_level(g);
  if (g.m() != 2) {
    throw ContractError(std::string(op) + " requires exactly 2 machines");
  }
  if (!g.unit_jobs()) {
    throw ContractError(std::string(op) + " requires unit job lengths");
  }
  if (!g.single_set()) {
    throw ContractError(std::string(op) + " requires a single competition set");
  }
}

// Speed shape of a two-machine game: fast/slow machine indices and the
// reduced ratio slow/fast = a/b <= 1 (a = b = 1 for identical machines).
struct SpeedShape {
  std::uint32_t fast, slow;
  BigInt a, b;
};

SpeedShape speed_shape(const Game& g) {
  SpeedShape sh;
  sh.fast = g.machine(1).rate > g.machine(0).rate ? 1u : 0u;
  sh.slow = 1u - sh.fast;
  Rational r = g.machine(sh.slow).rate / g.machine(sh.fast).rate;
  sh.a = r.num();
  sh.b = r.den();
  return sh;
}

// --- dedupable simulation of the unit-job list-scheduling run --------------

struct SimState {
  std::vector<std::uint64_t> mask;       // assigned jobs
  std::array<std::uint32_t, 2> cnt{0, 0};  // jobs per machine, input order
  std::vector<std::uint32_t> assign;     // job -> machine, kUnassigned if none
};

bool mask_has(const std::vector<std::uint64_t>& mask, std::uint32_t j) {
  return (mask[j >> 6] >> (j & 63)) & 1u;
}

SimState initial_state(const Game& g) {
  SimState st;
  st.mask.assign((g.n() + 63) / 64, 0);
  st.assign.assign(g.n(), kUnassigned);
  return st;
}

// Machines minimizing (count+1)/rate; {0,1} on a tie.
std::vector<std::uint32_t> tied_argmin(const Game& g, const SimState& st) {
  Rational k0 = Rational(st.cnt[0] + 1) / g.machine(0).rate;
  Rational k1 = Rational(st.cnt[1] + 1) / g.machine(1).rate;
  if (k0 < k1) return {0};
  if (k1 < k0) return {1};
  return {0, 1};
}

SimState advanced(const Game& g, const SimState& st, std::uint32_t i) {
  SimState nx = st;
  for (std::uint32_t j : g.list_for(i)) {
    if (!mask_has(nx.mask, j)) {
      nx.mask[j >> 6] |= std::uint64_t(1) << (j & 63);
      nx.assign[j] = i;
      ++nx.cnt[i];
      return nx;
    }
  }
  throw InternalError("list-scheduling step with no unassigned job left");
}

void push_dedup(std::vector<SimState>& states, SimState st) {
  for (const SimState& o : states) {
    if (o.mask == st.mask && o.cnt[0] == st.cnt[0]) return;
  }
  states.push_back(std::move(st));
}

std::uint32_t symmetric_difference_size(const std::vector<std::uint64_t>& x,
                                        const std::vector<std::uint64_t>& y) {
  std::uint32_t bits = 0;
  for (std::size_t w = 0; w < x.size(); ++w) {
    bits += static_cast<std::uint32_t>(std::popcount(x[w] ^ y[w]));
  }
  return bits;
}

// At a completion-block boundary the reachable prefix sets number at most
// two, two candidates differ in exactly one job each way, and per-machine
// counts are forced. These follow from the block structure of the run; a
// violation is a bug.
void assert_block_boundary(const Game& g, const std::vector<SimState>& states,
                           const SpeedShape& sh, std::uint64_t blocks_done) {
  std::vector<const std::vector<std::uint64_t>*> masks;
  for (const SimState& st : states) {
    bool seen = false;
    for (auto* m : masks) seen = seen || (*m == st.mask);
    if (!seen) masks.push_back(&st.mask);
    BigInt want_fast = blocks_done * sh.b;
    BigInt want_slow = blocks_done * sh.a;
    if (BigInt(st.cnt[sh.fast]) != want_fast ||
        BigInt(st.cnt[sh.slow]) != want_slow) {
      throw InternalError(
          "block boundary reached with unbalanced machine counts");
    }
  }
  if (masks.size() > 2) {
    throw InternalError("more than two reachable prefix sets at a block "
                        "boundary");
  }
  if (masks.size() == 2 &&
      symmetric_difference_size(*masks[0], *masks[1]) != 2) {
    throw InternalError(
        "two block-boundary prefix sets differ in more than one job each");
  }
}

std::vector<SimState> simulate_dedup(const Game& g, std::uint32_t steps,
                                     const SpeedShape& sh,
                                     std::uint64_t block) {
  std::vector<SimState> states{initial_state(g)};
  for (std::uint32_t t = 1; t <= steps; ++t) {
    std::vector<SimState> next;
    for (const SimState& st : states) {
      for (std::uint32_t i : tied_argmin(g, st)) {
        push_dedup(next, advanced(g, st, i));
      }
    }
    states = std::move(next);
    if (states.size() > 64) {
      throw InternalError("list-scheduling frontier exceeded its bound");
    }
    if (block > 0 && t % block == 0) {
      assert_block_boundary(g, states, sh, t / block);
    }
  }
  return states;
}

// Explicitly branches every tie of the remaining steps (no dedup) and
// collects the distinct final assignments.
void complete_all(const Game& g, const SimState& st, std::uint32_t remaining,
                  std::vector<SimState>& finals) {
  if (finals.size() > 8) {
    throw InternalError("final completion block branched beyond its bound");
  }
  if (remaining == 0) {
    for (const SimState& o : finals) {
      if (o.assign == st.assign) return;
    }
    finals.push_back(st);
    return;
  }
  for (std::uint32_t i : tied_argmin(g, st)) {
    complete_all(g, advanced(g, st, i), remaining - 1, finals);
  }
}

// Last jobs of the two machines mutually precede each other's counterpart in
// their own machine's list: the stability condition when both machines
// finish at the same time.
bool mutual_priority(const Game& g, const SimState& fin, std::uint32_t fast,
                     std::uint32_t slow) {
  std::uint32_t jf = kUnassigned, js = kUnassigned;
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    if (fin.assign[j] == fast &&
        (jf == kUnassigned || g.pos(fast, jf) < g.pos(fast, j))) {
      jf = j;
    }
    if (fin.assign[j] == slow &&
        (js == kUnassigned || g.pos(slow, js) < g.pos(slow, j))) {
      js = j;
    }
  }
  if (jf == kUnassigned || js == kUnassigned) {
    throw InternalError("balanced final state with an empty machine");
  }
  return g.pos(fast, jf) < g.pos(fast, js) &&
         g.pos(slow, js) < g.pos(slow, jf);
}

// Shared even/c==0 path: simulate (with dedup) to the last block boundary,
// then branch the final block explicitly and accept any final state whose
// last jobs mutually precede each other.
SolveResult solve_balanced_final_block(const Game& g, const SpeedShape& sh,
                                       std::uint32_t block) {
  const std::uint32_t boundary = g.n() - block;
  std::vector<SimState> states = simulate_dedup(g, boundary, sh, block);
  std::vector<SimState> finals;
  for (const SimState& st : states) {
    complete_all(g, st, block, finals);
  }
  for (const SimState& fin : finals) {
    if (mutual_priority(g, fin, sh.fast, sh.slow)) {
      return {true, Profile{fin.assign}};
    }
  }
  return {false, std::nullopt};
}

}  // namespace

Game make_inversed_policies(std::vector<Job> jobs,
                            std::array<std::string, 2> machine_ids,
                            std::vector<std::uint32_t> first_list,
                            CompetitionStructure competition) {
  std::vector<std::uint32_t> second(first_list.rbegin(), first_list.rend());
  std::vector<Machine> machines{{machine_ids[0], Rational(1)},
                                {machine_ids[1], Rational(1)}};
  return Game::make(std::move(jobs), std::move(machines),
                    Priorities::per_machine(
                        {std::move(first_list), std::move(second)}),
                    std::move(competition));
}

bool is_inversed_policies(const Game& g) {
  if (g.m() != 2 || !g.identical_rates() || g.set_level()) return false;
  const auto& first = g.list_for(0);
  const auto& second = g.list_for(1);
  for (std::uint32_t k = 0; k < g.n(); ++k) {
    if (second[k] != first[g.n() - 1 - k]) return false;
  }
  return true;
}

SolveResult solve_inversed(const Game& g) {
  if (!is_inversed_policies(g)) {
    throw ContractError(
        "solve_inversed requires two identical machines with mirrored lists");
  }
  return {true, greedy::algorithm1(g)};
}

SolveResult decide_global_unit(const Game& g) {
  detail::require_job_level(g);
  if (!g.unit_jobs() || !g.identical_rates()) {
    throw ContractError(
        "decide_global_unit requires unit jobs on identical machines");
  }
  if (!g.has_global_list()) {
    throw ContractError("decide_global_unit requires one global list");
  }
  if (!g.single_set()) {
    throw ContractError("decide_global_unit requires a single competition set");
  }
  if (g.m() == 1) {
    Profile s;
    s.machine_of.assign(g.n(), 0);
    return {true, std::move(s)};
  }
  if (g.n() == 1) {
    Profile s;
    s.machine_of.assign(1, 0);
    return {true, std::move(s)};
  }
  if (g.m() == 2 && g.n() % 2 == 1) {
    // Under lowest-index ties the first machine picks first within every
    // layer, so its slot-l job precedes the other machine's in its own list
    // and taking the leftover job keeps both exposed jobs unbeatable.
    return {true, greedy::algorithm1(g)};
  }
  return {false, std::nullopt};
}

SolveResult solve_p2_unit(const Game& g) {
  require_two_machine_unit(g, "solve_p2_unit");
  if (!g.identical_rates()) {
    throw ContractError("solve_p2_unit requires identical machine rates");
  }
  if (g.n() % 2 == 1) {
    return {true, greedy::algorithm1(g)};
  }
  return solve_balanced_final_block(g, speed_shape(g), 2);
}

SolveResult solve_q2_unit(const Game& g) {
  require_two_machine_unit(g, "solve_q2_unit");
  const SpeedShape sh = speed_shape(g);
  const BigInt block = sh.a + sh.b;
  if (block > g.n() || BigInt(g.n()) % block != 0) {
    // Truncated last block: the run always ends with the fast machine ahead
    // when ties go to it, and its last job outranks any same-time rival.
    return {true,
            greedy::algorithm2(g, greedy::TieBreak::prefer_machine(sh.fast))};
  }
  return solve_balanced_final_block(g, sh,
                                    block.convert_to<std::uint32_t>());
}

SolveResult decide_global_q2(const Game& g) {
  require_two_machine_unit(g, "decide_global_q2");
  if (!g.has_global_list()) {
    throw ContractError("decide_global_q2 requires one global list");
  }
  const SpeedShape sh = speed_shape(g);
  const BigInt block = sh.a + sh.b;
  if (block > g.n() || BigInt(g.n()) % block != 0) {
    return {true,
            greedy::algorithm2(g, greedy::TieBreak::prefer_machine(sh.fast))};
  }
  // With one global list and complete blocks, the last block's two final jobs
  // always tie in a way one of them can exploit.
  return {false, std::nullopt};
}

GammaFrontier gamma_frontier(const Game& g, std::uint32_t k) {
  require_two_machine_unit(g, "gamma_frontier");
  const SpeedShape sh = speed_shape(g);
  const BigInt block = sh.a + sh.b;
  if (BigInt(k) * block > g.n()) {
    throw ValidationError("gamma_frontier: only " +
                          (BigInt(g.n()) / block).str() +
                          " full blocks exist, asked for " + std::to_string(k));
  }
  const auto steps = static_cast<std::uint32_t>(BigInt(k) * block);
  std::vector<SimState> states = simulate_dedup(g, steps, sh,
                                                steps == 0 ? 0
                                                           : block.convert_to<std::uint64_t>());
  GammaFrontier fr;
  fr.jobs_assigned = steps;
  // Distinct prefix sets only; representatives carry the assignment.
  for (const SimState& st : states) {
    bool seen = false;
    for (GammaCandidate& c : fr.candidates) {
      std::vector<bool> in_c(g.n(), false);
      for (std::uint32_t j : c.jobs) in_c[j] = true;
      bool same = true;
      for (std::uint32_t j = 0; j < g.n(); ++j) {
        if (in_c[j] != mask_has(st.mask, j)) {
          same = false;
          break;
        }
      }
      if (same) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    GammaCandidate c;
    c.last_job = {kUnassigned, kUnassigned};
    for (std::uint32_t j = 0; j < g.n(); ++j) {
      if (!mask_has(st.mask, j)) continue;
      c.jobs.push_back(j);
      c.machine_of.push_back(st.assign[j]);
      const std::uint32_t i = st.assign[j];
      if (c.last_job[i] == kUnassigned ||
          g.pos(i, c.last_job[i]) < g.pos(i, j)) {
        c.last_job[i] = j;
      }
    }
    for (std::uint32_t i = 0; i < 2; ++i) {
      const auto& list = g.list_for(i);
      std::uint32_t cur = 0;
      while (cur < g.n() && mask_has(st.mask, list[cur])) ++cur;
      c.cursor[i] = cur;
    }
    fr.candidates.push_back(std::move(c));
  }
  if (fr.candidates.size() > 2) {
    throw InternalError("more than two prefix sets at a block boundary");
  }
  return fr;
}

}  // namespace ranksched::solvers
