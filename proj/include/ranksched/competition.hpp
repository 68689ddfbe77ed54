#pragma once

#include <cstdint>
#include <vector>

#include "ranksched/game.hpp"
#include "ranksched/schedule.hpp"

namespace ranksched::competition {

// Average-tie ranks computed within each competition set independently.
// Alias for the core rank computation, named for call sites that care about
// the partition; singleton sets make every rank 1.
RankVector set_ranks(const Game& g, const Profile& s);

// Residency state of the seniority model: machines order resident jobs by
// their set-level priority list, and within a set by arrival (a deviating
// job is appended last to its set's queue on the target machine).
struct SeniorityState {
  // queues[i][l] = jobs of competition set l resident on machine i, in
  // seniority order.
  std::vector<std::vector<std::vector<std::uint32_t>>> queues;

  // Residents seeded from a plain assignment; jobs arrive in input order.
  static SeniorityState from_profile(const Game& g, const Profile& p);
  Profile to_profile(const Game& g) const;
  std::uint32_t machine_of(const Game& g, std::uint32_t j) const;
};

// Completion time per job under the seniority processing order.
std::vector<Rational> seniority_completions(const Game& g,
                                            const SeniorityState& st);

// Post-deviation state: j leaves its queue and joins set queue set_of(j) on
// target, last. Contract error when target is j's current machine.
SeniorityState seniority_deviate(const Game& g, const SeniorityState& st,
                                 std::uint32_t j, std::uint32_t target);

// True iff j strictly prefers the post-deviation state (lower rank within
// its set, or equal rank and lower completion).
bool seniority_prefers(const Game& g, const SeniorityState& st,
                       std::uint32_t j, std::uint32_t target);

struct SenStep {
  std::uint32_t job;
  std::uint32_t target;
};

enum class SenStatus { reached_ne, budget_exhausted };

struct SenTrace {
  std::vector<SenStep> steps;
  SeniorityState final_state;
  SenStatus status = SenStatus::reached_ne;
};

// Best-response walk in the seniority model: the first job (input order) with
// a strictly preferred target moves to its best one (ties to the lowest
// machine index). Requires set-level priority lists.
SenTrace seniority_brd(const Game& g, const SeniorityState& start,
                       std::uint64_t max_steps);

// Step budget for convergence checks: ceil((total work)^2), at least 1.
std::uint64_t default_budget(const Game& g);

}  // namespace ranksched::competition
