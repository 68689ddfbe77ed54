#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ranksched/game.hpp"

namespace ranksched::solvers {

struct SolveResult {
  bool exists;                     // equilibrium-exists verdict
  std::optional<Profile> witness;  // present iff exists
};

// Two identical machines whose lists mirror each other (the second machine
// ranks the jobs in exactly the reverse order of the first).
Game make_inversed_policies(std::vector<Job> jobs,
                            std::array<std::string, 2> machine_ids,
                            std::vector<std::uint32_t> first_list,
                            CompetitionStructure competition =
                                CompetitionStructure::single());
bool is_inversed_policies(const Game& g);

// Mirrored-list games always have an equilibrium; the default list-scheduling
// run is one, under any competition partition.
SolveResult solve_inversed(const Game& g);

// Unit jobs, identical machines, one global list, single competition set.
// An equilibrium exists iff m == 1, n == 1, or (m == 2 and n odd).
SolveResult decide_global_unit(const Game& g);

// Unit jobs on two identical machines, job-level lists, single set.
SolveResult solve_p2_unit(const Game& g);

// Unit jobs on two related machines, job-level lists, single set.
SolveResult solve_q2_unit(const Game& g);

// Unit jobs, two related machines, one global list, single set. With reduced
// speed ratio a/b, an equilibrium exists iff n mod (a+b) != 0.
SolveResult decide_global_q2(const Game& g);

// Reachable prefix-set frontier of the list-scheduling run after k full
// completion blocks (layers on identical machines). At most two candidates
// ever exist, and two candidates differ in exactly one job each way; both
// facts are asserted.
struct GammaCandidate {
  std::vector<std::uint32_t> jobs;        // assigned prefix set, ascending
  std::vector<std::uint32_t> machine_of;  // aligned with jobs, representative run
  // Last job per machine in the representative run (UINT32_MAX if none) and
  // the first-unassigned position of each machine's list.
  std::array<std::uint32_t, 2> last_job;
  std::array<std::uint32_t, 2> cursor;
};

struct GammaFrontier {
  std::uint32_t jobs_assigned;  // k * block size
  std::vector<GammaCandidate> candidates;
};

GammaFrontier gamma_frontier(const Game& g, std::uint32_t k);

}  // namespace ranksched::solvers
