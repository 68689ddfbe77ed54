#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ranksched/game.hpp"

namespace ranksched {

// Fully evaluated schedule for one profile of a job-level game.
struct ScheduleView {
  // Per machine: job indices in processing order.
  std::vector<std::vector<std::uint32_t>> order;
  // Per job: position on its machine (0-based), preceding-work-including-self,
  // and completion time.
  std::vector<std::uint32_t> slot;
  std::vector<Rational> prefix_work;
  std::vector<Rational> completion;
  // Per machine: total assigned length.
  std::vector<Rational> load;
};

struct RankVector {
  // Per job: average-tie rank of its completion time within its competition
  // set (1-based; half-integral under ties).
  std::vector<Rational> rank;
};

ScheduleView build_schedule(const Game& g, const Profile& s);
RankVector ranks(const Game& g, const Profile& s);
Rational makespan(const Game& g, const Profile& s);

// True iff job j strictly prefers s_alt over s: lower rank, or equal rank and
// lower completion time. The profiles may differ only in j's own strategy.
bool prefers(const Game& g, std::uint32_t j, const Profile& s,
             const Profile& s_alt);

// Machines achieving j's best (rank, completion) key when j alone moves;
// ascending indices, current machine included when it is optimal.
std::vector<std::uint32_t> best_responses(const Game& g, const Profile& s,
                                          std::uint32_t j);

struct NeWitness {
  std::uint32_t job;
  std::uint32_t target;
};

struct NeResult {
  bool stable;
  // Present iff !stable: the lexicographically-first (by id) suboptimal job
  // and the lowest-index machine among its best responses.
  std::optional<NeWitness> witness;
};

NeResult is_ne(const Game& g, const Profile& s);

}  // namespace ranksched
