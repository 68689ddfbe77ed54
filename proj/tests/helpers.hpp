#pragma once

// Shared builders for the test suite.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ranksched/game.hpp"
#include "ranksched/schedule.hpp"

namespace rstest {

using namespace ranksched;

// n unit jobs "1".."n" on m identical machines "M1".."Mm" with the global
// identity list and a single competition set.
inline Game unit_global(std::uint32_t n, std::uint32_t m) {
  std::vector<Job> jobs;
  for (std::uint32_t j = 1; j <= n; ++j) {
    jobs.push_back({std::to_string(j), Rational(1)});
  }
  std::vector<Machine> machines;
  for (std::uint32_t i = 1; i <= m; ++i) {
    machines.push_back({"M" + std::to_string(i), Rational(1)});
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  return Game::make(std::move(jobs), std::move(machines),
                    Priorities::global_list(std::move(order)),
                    CompetitionStructure::single());
}

// n unit jobs on machines of rate 1 and r with the global identity list.
inline Game unit_q2_global(std::uint32_t n, const Rational& r) {
  std::vector<Job> jobs;
  for (std::uint32_t j = 1; j <= n; ++j) {
    jobs.push_back({std::to_string(j), Rational(1)});
  }
  std::vector<Machine> machines{{"M1", Rational(1)}, {"M2", r}};
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  return Game::make(std::move(jobs), std::move(machines),
                    Priorities::global_list(std::move(order)),
                    CompetitionStructure::single());
}

inline Profile prof(std::initializer_list<std::uint32_t> machine_of) {
  Profile p;
  p.machine_of.assign(machine_of.begin(), machine_of.end());
  return p;
}

inline std::vector<std::uint32_t> random_permutation(std::mt19937_64& rng,
                                                     std::uint32_t n) {
  std::vector<std::uint32_t> out(n);
  std::iota(out.begin(), out.end(), 0);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

// Random job-level game: integer lengths in [1, max_len] (1 when unit),
// per-machine random lists, single competition set.
inline Game random_game(std::mt19937_64& rng, std::uint32_t n,
                        std::uint32_t m, std::uint32_t max_len,
                        const std::vector<Rational>& rates) {
  std::uniform_int_distribution<std::uint32_t> len(1, max_len);
  std::vector<Job> jobs;
  for (std::uint32_t j = 1; j <= n; ++j) {
    jobs.push_back({"j" + std::to_string(j), Rational(len(rng))});
  }
  std::vector<Machine> machines;
  for (std::uint32_t i = 0; i < m; ++i) {
    machines.push_back({"M" + std::to_string(i + 1), rates[i]});
  }
  std::vector<std::vector<std::uint32_t>> lists;
  for (std::uint32_t i = 0; i < m; ++i) {
    lists.push_back(random_permutation(rng, n));
  }
  return Game::make(std::move(jobs), std::move(machines),
                    Priorities::per_machine(std::move(lists)),
                    CompetitionStructure::single());
}

inline Game random_identical_game(std::mt19937_64& rng, std::uint32_t n,
                                  std::uint32_t m, std::uint32_t max_len) {
  return random_game(rng, n, m, max_len,
                     std::vector<Rational>(m, Rational(1)));
}

// Random partition of {0..n-1} into at most max_sets nonempty sets.
inline CompetitionStructure random_partition(std::mt19937_64& rng,
                                             std::uint32_t n,
                                             std::uint32_t max_sets) {
  std::uniform_int_distribution<std::uint32_t> pick(0, max_sets - 1);
  std::vector<std::vector<std::uint32_t>> sets(max_sets);
  for (std::uint32_t j = 0; j < n; ++j) sets[pick(rng)].push_back(j);
  std::erase_if(sets, [](const auto& s) { return s.empty(); });
  return CompetitionStructure::of_sets(std::move(sets));
}

// True iff no job can strictly reduce its completion time by moving.
inline bool cost_stable(const Game& g, const Profile& s) {
  const ScheduleView view = build_schedule(g, s);
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    for (std::uint32_t t = 0; t < g.m(); ++t) {
      if (t == s.machine_of[j]) continue;
      Profile q = s;
      q.machine_of[j] = t;
      if (build_schedule(g, q).completion[j] < view.completion[j]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace rstest
