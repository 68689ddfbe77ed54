#include "ranksched/game.hpp"

#include <algorithm>

#include "ranksched/errors.hpp"

namespace ranksched {

namespace {

// Checks that `list` is a permutation of 0..count-1.
void check_permutation(const std::vector<std::uint32_t>& list,
                       std::uint32_t count, const std::string& what) {
  if (list.size() != count) {
    throw ValidationError(what + " has " + std::to_string(list.size()) +
                          " entries, expected " + std::to_string(count));
  }
  std::vector<bool> seen(count, false);
  for (std::uint32_t v : list) {
    if (v >= count || seen[v]) {
      throw ValidationError(what + " is not a permutation");
    }
    seen[v] = true;
  }
}

}  // namespace

Game Game::make(std::vector<Job> jobs, std::vector<Machine> machines,
                Priorities priorities, CompetitionStructure competition) {
  Game g;
  if (jobs.empty()) throw ValidationError("game needs at least one job");
  if (machines.empty()) throw ValidationError("game needs at least one machine");

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    if (job.id.empty()) throw ValidationError("job with empty id");
    if (job.length.sign() <= 0) {
      throw ValidationError("job '" + job.id + "' has non-positive length");
    }
    if (!g.job_index_.emplace(job.id, static_cast<std::uint32_t>(j)).second) {
      throw ValidationError("duplicate job id '" + job.id + "'");
    }
  }
  for (std::size_t i = 0; i < machines.size(); ++i) {
    const Machine& mc = machines[i];
    if (mc.id.empty()) throw ValidationError("machine with empty id");
    if (mc.rate.sign() <= 0) {
      throw ValidationError("machine '" + mc.id + "' has non-positive rate");
    }
    if (!g.machine_index_.emplace(mc.id, static_cast<std::uint32_t>(i))
             .second) {
      throw ValidationError("duplicate machine id '" + mc.id + "'");
    }
  }

  const auto n = static_cast<std::uint32_t>(jobs.size());
  const auto m = static_cast<std::uint32_t>(machines.size());

  // Normalize the competition partition.
  g.set_of_.assign(n, 0);
  switch (competition.mode) {
    case CompetitionStructure::Mode::single: {
      g.sets_.emplace_back();
      for (std::uint32_t j = 0; j < n; ++j) g.sets_[0].push_back(j);
      break;
    }
    case CompetitionStructure::Mode::singletons: {
      g.sets_.resize(n);
      for (std::uint32_t j = 0; j < n; ++j) {
        g.sets_[j] = {j};
        g.set_of_[j] = j;
      }
      break;
    }
    case CompetitionStructure::Mode::sets: {
      if (competition.sets.empty()) {
        throw ValidationError("competition sets must be nonempty");
      }
      std::vector<bool> covered(n, false);
      for (std::size_t s = 0; s < competition.sets.size(); ++s) {
        const auto& set = competition.sets[s];
        if (set.empty()) {
          throw ValidationError("competition set " + std::to_string(s + 1) +
                                " is empty");
        }
        for (std::uint32_t j : set) {
          if (j >= n) {
            throw ValidationError("competition set " + std::to_string(s + 1) +
                                  " references an unknown job");
          }
          if (covered[j]) {
            throw ValidationError("job '" + jobs[j].id +
                                  "' appears in two competition sets");
          }
          covered[j] = true;
          g.set_of_[j] = static_cast<std::uint32_t>(s);
        }
      }
      for (std::uint32_t j = 0; j < n; ++j) {
        if (!covered[j]) {
          throw ValidationError("job '" + jobs[j].id +
                                "' is missing from the competition partition");
        }
      }
      g.sets_ = competition.sets;
      break;
    }
  }

  // Validate priority lists.
  switch (priorities.mode) {
    case PriorityMode::global:
      if (priorities.lists.size() != 1) {
        throw ValidationError("global priorities take exactly one list");
      }
      check_permutation(priorities.lists[0], n, "global priority list");
      break;
    case PriorityMode::per_machine:
      if (priorities.lists.size() != m) {
        throw ValidationError("per-machine priorities take one list per machine");
      }
      for (std::uint32_t i = 0; i < m; ++i) {
        check_permutation(priorities.lists[i], n,
                          "priority list of machine '" + machines[i].id + "'");
      }
      break;
    case PriorityMode::set_level: {
      const auto c = static_cast<std::uint32_t>(g.sets_.size());
      if (priorities.lists.size() != 1 && priorities.lists.size() != m) {
        throw ValidationError(
            "set-level priorities take one list or one list per machine");
      }
      for (std::size_t i = 0; i < priorities.lists.size(); ++i) {
        check_permutation(priorities.lists[i], c,
                          "set-level priority list " + std::to_string(i + 1));
      }
      break;
    }
  }

  // Job-level position matrix.
  if (priorities.mode != PriorityMode::set_level) {
    g.pos_.assign(static_cast<std::size_t>(m) * n, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
      const auto& list =
          priorities.lists[priorities.mode == PriorityMode::global ? 0 : i];
      for (std::uint32_t k = 0; k < n; ++k) {
        g.pos_[static_cast<std::size_t>(i) * n + list[k]] = k;
      }
    }
  }

  g.identical_rates_ = true;
  for (const Machine& mc : machines) {
    if (!(mc.rate == machines[0].rate)) {
      g.identical_rates_ = false;
      break;
    }
  }
  g.unit_jobs_ = true;
  g.total_work_ = Rational(0);
  for (const Job& job : jobs) {
    if (!(job.length == Rational(1))) g.unit_jobs_ = false;
    g.total_work_ += job.length;
  }

  g.lex_order_.resize(n);
  for (std::uint32_t j = 0; j < n; ++j) g.lex_order_[j] = j;
  std::sort(g.lex_order_.begin(), g.lex_order_.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              return jobs[a].id < jobs[b].id;
            });

  g.jobs_ = std::move(jobs);
  g.machines_ = std::move(machines);
  g.prio_ = std::move(priorities);
  g.comp_ = std::move(competition);
  return g;
}

const std::vector<std::uint32_t>& Game::list_for(std::uint32_t i) const {
  if (set_level()) {
    throw ContractError(
        "set-level games have no static job-level priority list");
  }
  return prio_.lists[prio_.mode == PriorityMode::global ? 0 : i];
}

std::uint32_t Game::pos(std::uint32_t i, std::uint32_t j) const {
  if (set_level()) {
    throw ContractError(
        "set-level games have no static job-level priority list");
  }
  return pos_[static_cast<std::size_t>(i) * n() + j];
}

const std::vector<std::uint32_t>& Game::set_list_for(std::uint32_t i) const {
  if (!set_level()) {
    throw ContractError("job-level games have no set-level priority list");
  }
  return prio_.lists[prio_.lists.size() == 1 ? 0 : i];
}

std::optional<std::uint32_t> Game::job_index(std::string_view id) const {
  auto it = job_index_.find(std::string(id));
  if (it == job_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Game::machine_index(std::string_view id) const {
  auto it = machine_index_.find(std::string(id));
  if (it == machine_index_.end()) return std::nullopt;
  return it->second;
}

Game Game::with_competition(CompetitionStructure competition) const {
  return make(jobs_, machines_, prio_, std::move(competition));
}

void validate_profile(const Game& g, const Profile& p) {
  if (p.machine_of.size() != g.n()) {
    throw ValidationError("profile assigns " +
                          std::to_string(p.machine_of.size()) +
                          " jobs, game has " + std::to_string(g.n()));
  }
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    if (p.machine_of[j] >= g.m()) {
      throw ValidationError("profile assigns job '" + g.job(j).id +
                            "' to an unknown machine");
    }
  }
}

}  // namespace ranksched
