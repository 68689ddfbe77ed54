#include "ranksched/greedy.hpp"

#include <string>

#include "ranksched/detail/engine.hpp"
#include "ranksched/errors.hpp"

namespace ranksched::greedy {

namespace {

// Shared list-scheduling loop. Key per machine: load (identical machines) or
// (load+1)/rate (related machines, unit jobs).
Profile run_list_scheduling(const Game& g, const TieBreak& tb, bool related) {
  detail::require_job_level(g);
  const std::uint32_t n = g.n();
  const std::uint32_t m = g.m();
  std::vector<Rational> load(m, Rational(0));
  std::vector<bool> assigned(n, false);
  std::vector<std::uint32_t> cursor(m, 0);
  std::vector<std::uint32_t> argmin;
  Profile s;
  s.machine_of.assign(n, 0);
  std::size_t tie_cursor = 0;

  for (std::uint32_t step = 0; step < n; ++step) {
    argmin.clear();
    Rational best;
    for (std::uint32_t i = 0; i < m; ++i) {
      Rational key = related ? (load[i] + Rational(1)) / g.machine(i).rate
                             : load[i];
      if (argmin.empty() || key < best) {
        best = key;
        argmin.assign(1, i);
      } else if (key == best) {
        argmin.push_back(i);
      }
    }
    std::uint32_t chosen;
    if (argmin.size() == 1 || tb.kind() == TieBreak::Kind::lowest_index) {
      chosen = argmin[0];
    } else if (tb.kind() == TieBreak::Kind::prefer_machine) {
      chosen = argmin[0];
      for (std::uint32_t i : argmin) {
        if (i == tb.preferred()) chosen = i;
      }
    } else {
      if (tie_cursor >= tb.sequence().size()) {
        throw ValidationError(
            "tie-break sequence exhausted: step " + std::to_string(step + 1) +
            " is tied but no entry is left");
      }
      chosen = tb.sequence()[tie_cursor++];
      bool ok = false;
      for (std::uint32_t i : argmin) ok = ok || (i == chosen);
      if (!ok) {
        throw ValidationError("tie-break sequence entry " +
                              std::to_string(tie_cursor) +
                              " names a machine outside the tied argmin set");
      }
    }
    const auto& list = g.list_for(chosen);
    while (assigned[list[cursor[chosen]]]) ++cursor[chosen];
    const std::uint32_t job = list[cursor[chosen]];
    assigned[job] = true;
    s.machine_of[job] = chosen;
    load[chosen] += g.job(job).length;
  }
  if (tb.is_explicit() && tie_cursor != tb.sequence().size()) {
    throw ValidationError(
        "tie-break sequence has " +
        std::to_string(tb.sequence().size() - tie_cursor) +
        " unused entries");
  }
  return s;
}

// True iff no job can strictly reduce its completion time by moving.
bool cost_stable(const Game& g, const Profile& s, const ScheduleView& v) {
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    for (std::uint32_t t = 0; t < g.m(); ++t) {
      if (t == s.machine_of[j]) continue;
      Rational work = g.job(j).length;
      for (std::uint32_t k : v.order[t]) {
        if (g.pos(t, k) < g.pos(t, j)) work += g.job(k).length;
      }
      if (work / g.machine(t).rate < v.completion[j]) return false;
    }
  }
  return true;
}

void require_cost_stable(const Game& g, const Profile& s,
                         const ScheduleView& v, const char* op) {
  if (!cost_stable(g, s, v)) {
    throw ContractError(std::string(op) +
                        ": profile is not cost-stable (a job can strictly "
                        "reduce its completion time)");
  }
}

}  // namespace

Profile algorithm1(const Game& g, const TieBreak& tb) {
  detail::require_job_level(g);
  if (!g.identical_rates()) {
    throw ContractError("algorithm1 requires identical machine rates");
  }
  return run_list_scheduling(g, tb, /*related=*/false);
}

Profile algorithm2(const Game& g, const TieBreak& tb) {
  detail::require_job_level(g);
  if (!g.unit_jobs()) {
    throw ContractError("algorithm2 requires unit job lengths");
  }
  return run_list_scheduling(g, tb, /*related=*/true);
}

std::optional<NeWitness> rank_decreasing_witness(const Game& g,
                                                 const Profile& s,
                                                 bool verify) {
  detail::require_job_level(g);
  validate_profile(g, s);
  if (!g.unit_jobs()) {
    throw ContractError("rank_decreasing_witness requires unit job lengths");
  }
  if (!g.single_set()) {
    throw ContractError(
        "rank_decreasing_witness requires a single competition set");
  }
  ScheduleView v = build_schedule(g, s);
  if (verify) require_cost_stable(g, s, v, "rank_decreasing_witness");

  for (std::uint32_t i = 0; i < g.m(); ++i) {
    if (v.order[i].empty()) continue;
    const std::uint32_t j = v.order[i].back();
    for (std::uint32_t z = 0; z < g.m(); ++z) {
      if (z == i) continue;
      for (std::uint32_t w : v.order[z]) {
        if (v.completion[w] == v.completion[j] && g.pos(z, j) < g.pos(z, w)) {
          return NeWitness{j, z};
        }
      }
    }
  }
  return std::nullopt;
}

bool check_identical_unit_stability(const Game& g, const Profile& s,
                                    bool verify) {
  detail::require_job_level(g);
  validate_profile(g, s);
  if (!g.unit_jobs() || !g.identical_rates()) {
    throw ContractError(
        "check_identical_unit_stability requires unit jobs on identical "
        "machines");
  }
  if (!g.single_set()) {
    throw ContractError(
        "check_identical_unit_stability requires a single competition set");
  }
  const std::uint32_t n = g.n();
  const std::uint32_t m = g.m();
  const std::uint32_t full = n / m;   // short-machine height
  const std::uint32_t tall = n % m;   // number of machines one job taller
  ScheduleView v = build_schedule(g, s);
  if (verify) {
    std::uint32_t seen_tall = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      const auto h = static_cast<std::uint32_t>(v.order[i].size());
      if (h == full + 1) {
        ++seen_tall;
      } else if (h != full) {
        throw ContractError(
            "check_identical_unit_stability: machine loads are not balanced");
      }
    }
    if (seen_tall != tall) {
      throw ContractError(
          "check_identical_unit_stability: machine loads are not balanced");
    }
    require_cost_stable(g, s, v, "check_identical_unit_stability");
  }

  // Last layer (completion full+1), last jobs of the short machines
  // (completion full), and second-to-last jobs of the tall machines.
  std::vector<std::uint32_t> top, last_short, under_top;
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto h = static_cast<std::uint32_t>(v.order[i].size());
    if (h == full + 1) {
      top.push_back(v.order[i].back());
      if (full >= 1) under_top.push_back(v.order[i][full - 1]);
    } else if (h == full && full >= 1) {
      last_short.push_back(v.order[i].back());
    }
  }

  // No job of the same layer may precede a layer member in the member's own
  // machine list, and no last-layer-of-short job may precede a tall machine's
  // second-to-last job there.
  for (std::uint32_t j : top) {
    const std::uint32_t i = s.machine_of[j];
    for (std::uint32_t w : top) {
      if (g.pos(i, w) < g.pos(i, j)) return false;
    }
  }
  for (std::uint32_t j : last_short) {
    const std::uint32_t i = s.machine_of[j];
    for (std::uint32_t w : last_short) {
      if (g.pos(i, w) < g.pos(i, j)) return false;
    }
  }
  for (std::uint32_t j : under_top) {
    const std::uint32_t i = s.machine_of[j];
    for (std::uint32_t w : last_short) {
      if (g.pos(i, w) < g.pos(i, j)) return false;
    }
  }
  return true;
}

bool check_q2_unit_stability(const Game& g, const Profile& s, bool verify) {
  detail::require_job_level(g);
  validate_profile(g, s);
  if (g.m() != 2) {
    throw ContractError("check_q2_unit_stability requires exactly 2 machines");
  }
  if (!g.unit_jobs()) {
    throw ContractError("check_q2_unit_stability requires unit job lengths");
  }
  if (!g.single_set()) {
    throw ContractError(
        "check_q2_unit_stability requires a single competition set");
  }
  ScheduleView v = build_schedule(g, s);
  if (verify) require_cost_stable(g, s, v, "check_q2_unit_stability");

  const std::uint32_t fast =
      g.machine(1).rate > g.machine(0).rate ? 1u : 0u;
  const std::uint32_t slow = 1u - fast;
  const Rational cf = v.order[fast].empty()
                          ? Rational(0)
                          : v.completion[v.order[fast].back()];
  const Rational cs = v.order[slow].empty()
                          ? Rational(0)
                          : v.completion[v.order[slow].back()];

  if (cf < cs) return true;
  if (cf == cs) {
    const std::uint32_t j1 = v.order[fast].back();
    const std::uint32_t j2 = v.order[slow].back();
    return g.pos(fast, j1) < g.pos(fast, j2) &&
           g.pos(slow, j2) < g.pos(slow, j1);
  }
  // Fast machine finishes later: only the slow machine's last job could gain,
  // by slotting in ahead of a fast-machine job completing at its own time.
  if (v.order[slow].empty()) return true;
  const std::uint32_t j2 = v.order[slow].back();
  for (std::uint32_t w : v.order[fast]) {
    if (v.completion[w] == v.completion[j2]) {
      return g.pos(fast, w) < g.pos(fast, j2);
    }
  }
  return true;
}

}  // namespace ranksched::greedy
