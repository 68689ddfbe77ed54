#include "ranksched/competition.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "ranksched/errors.hpp"

namespace ranksched::competition {

namespace {

void require_set_level(const Game& g) {
  if (!g.set_level()) {
    throw ContractError(
        "the seniority model requires set-level priority lists");
  }
}

// Shape and residency invariants: one queue per (machine, set), every job in
// exactly one queue, members in the right set.
void validate_state(const Game& g, const SeniorityState& st) {
  if (st.queues.size() != g.m()) {
    throw ValidationError("seniority state has " +
                          std::to_string(st.queues.size()) +
                          " machines, the game has " + std::to_string(g.m()));
  }
  std::vector<bool> seen(g.n(), false);
  for (std::uint32_t i = 0; i < g.m(); ++i) {
    if (st.queues[i].size() != g.set_count()) {
      throw ValidationError(
          "seniority state machine " + g.machine(i).id + " has " +
          std::to_string(st.queues[i].size()) + " set queues, expected " +
          std::to_string(g.set_count()));
    }
    for (std::uint32_t l = 0; l < g.set_count(); ++l) {
      for (std::uint32_t j : st.queues[i][l]) {
        if (j >= g.n()) {
          throw ValidationError("seniority state refers to job index " +
                                std::to_string(j) + " out of range");
        }
        if (g.set_of(j) != l) {
          throw ValidationError("job " + g.job(j).id +
                                " is queued under the wrong competition set");
        }
        if (seen[j]) {
          throw ValidationError("job " + g.job(j).id +
                                " appears twice in the seniority state");
        }
        seen[j] = true;
      }
    }
  }
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    if (!seen[j]) {
      throw ValidationError("job " + g.job(j).id +
                            " is missing from the seniority state");
    }
  }
}

// Doubled average-tie rank of j within its set, from completion times.
std::int64_t rank2_of(const Game& g, const std::vector<Rational>& comp,
                      std::uint32_t j) {
  std::int64_t less = 0, tied = 0;
  for (std::uint32_t o : g.set_members(g.set_of(j))) {
    if (comp[o] < comp[j]) {
      ++less;
    } else if (comp[o] == comp[j]) {
      ++tied;
    }
  }
  return 2 * less + tied + 1;
}

using PrefKey = std::pair<std::int64_t, Rational>;  // (rank2, completion)

PrefKey pref_key(const Game& g, const SeniorityState& st, std::uint32_t j) {
  const std::vector<Rational> comp = seniority_completions(g, st);
  return {rank2_of(g, comp, j), comp[j]};
}

bool key_less(const PrefKey& a, const PrefKey& b) {
  if (a.first != b.first) return a.first < b.first;
  return a.second < b.second;
}

}  // namespace

RankVector set_ranks(const Game& g, const Profile& s) { return ranks(g, s); }

SeniorityState SeniorityState::from_profile(const Game& g, const Profile& p) {
  validate_profile(g, p);
  SeniorityState st;
  st.queues.assign(g.m(), std::vector<std::vector<std::uint32_t>>(
                              g.set_count()));
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    st.queues[p.machine_of[j]][g.set_of(j)].push_back(j);
  }
  return st;
}

Profile SeniorityState::to_profile(const Game& g) const {
  validate_state(g, *this);
  Profile p;
  p.machine_of.assign(g.n(), 0);
  for (std::uint32_t i = 0; i < g.m(); ++i) {
    for (const auto& queue : queues[i]) {
      for (std::uint32_t j : queue) p.machine_of[j] = i;
    }
  }
  return p;
}

std::uint32_t SeniorityState::machine_of(const Game& g,
                                         std::uint32_t j) const {
  for (std::uint32_t i = 0; i < g.m() && i < queues.size(); ++i) {
    for (const auto& queue : queues[i]) {
      for (std::uint32_t o : queue) {
        if (o == j) return i;
      }
    }
  }
  throw ValidationError("job " + g.job(j).id +
                        " is missing from the seniority state");
}

std::vector<Rational> seniority_completions(const Game& g,
                                            const SeniorityState& st) {
  require_set_level(g);
  validate_state(g, st);
  std::vector<Rational> comp(g.n());
  for (std::uint32_t i = 0; i < g.m(); ++i) {
    Rational cum(0);
    for (std::uint32_t l : g.set_list_for(i)) {
      for (std::uint32_t j : st.queues[i][l]) {
        cum += g.job(j).length;
        comp[j] = cum / g.machine(i).rate;
      }
    }
  }
  return comp;
}

SeniorityState seniority_deviate(const Game& g, const SeniorityState& st,
                                 std::uint32_t j, std::uint32_t target) {
  validate_state(g, st);
  if (j >= g.n()) {
    throw ValidationError("job index " + std::to_string(j) + " out of range");
  }
  if (target >= g.m()) {
    throw ValidationError("machine index " + std::to_string(target) +
                          " out of range");
  }
  const std::uint32_t cur = st.machine_of(g, j);
  if (cur == target) {
    throw ContractError("deviation of job " + g.job(j).id +
                        " must change its machine");
  }
  SeniorityState out = st;
  const std::uint32_t l = g.set_of(j);
  auto& from = out.queues[cur][l];
  from.erase(std::find(from.begin(), from.end(), j));
  out.queues[target][l].push_back(j);
  return out;
}

bool seniority_prefers(const Game& g, const SeniorityState& st,
                       std::uint32_t j, std::uint32_t target) {
  require_set_level(g);
  const PrefKey before = pref_key(g, st, j);
  const PrefKey after = pref_key(g, seniority_deviate(g, st, j, target), j);
  return key_less(after, before);
}

SenTrace seniority_brd(const Game& g, const SeniorityState& start,
                       std::uint64_t max_steps) {
  require_set_level(g);
  validate_state(g, start);
  SenTrace tr;
  SeniorityState st = start;
  for (std::uint64_t step = 0; step < max_steps; ++step) {
    bool moved = false;
    for (std::uint32_t j = 0; j < g.n() && !moved; ++j) {
      const std::uint32_t cur = st.machine_of(g, j);
      const PrefKey here = pref_key(g, st, j);
      std::optional<std::uint32_t> best;
      PrefKey best_key = here;
      std::optional<SeniorityState> best_state;
      for (std::uint32_t t = 0; t < g.m(); ++t) {
        if (t == cur) continue;
        SeniorityState nx = seniority_deviate(g, st, j, t);
        const PrefKey key = pref_key(g, nx, j);
        if (key_less(key, best_key)) {
          best = t;
          best_key = key;
          best_state = std::move(nx);
        }
      }
      if (best) {
        tr.steps.push_back({j, *best});
        st = std::move(*best_state);
        moved = true;
      }
    }
    if (!moved) {
      tr.status = SenStatus::reached_ne;
      tr.final_state = std::move(st);
      return tr;
    }
  }
  tr.status = SenStatus::budget_exhausted;
  tr.final_state = std::move(st);
  return tr;
}

std::uint64_t default_budget(const Game& g) {
  const Rational w2 = g.total_work() * g.total_work();
  BigInt steps = (w2.num() + w2.den() - 1) / w2.den();
  if (steps < 1) steps = 1;
  const BigInt cap = std::numeric_limits<std::uint64_t>::max();
  if (steps > cap) return std::numeric_limits<std::uint64_t>::max();
  return steps.convert_to<std::uint64_t>();
}

}  // namespace ranksched::competition
