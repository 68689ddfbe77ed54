#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ranksched/rational.hpp"

namespace ranksched {

struct Job {
  std::string id;
  Rational length;
};

struct Machine {
  std::string id;
  Rational rate;
};

enum class PriorityMode { global, per_machine, set_level };

struct CompetitionStructure {
  enum class Mode { single, singletons, sets };
  Mode mode = Mode::single;
  // Job indices per set; used only when mode == sets (normalized sets for the
  // other modes are materialized inside Game).
  std::vector<std::vector<std::uint32_t>> sets;

  static CompetitionStructure single() { return {}; }
  static CompetitionStructure singletons() {
    CompetitionStructure c;
    c.mode = Mode::singletons;
    return c;
  }
  static CompetitionStructure of_sets(
      std::vector<std::vector<std::uint32_t>> sets) {
    CompetitionStructure c;
    c.mode = Mode::sets;
    c.sets = std::move(sets);
    return c;
  }
};

struct Priorities {
  PriorityMode mode = PriorityMode::global;
  // Job-level modes: lists of job indices (1 list for global, m lists for
  // per_machine). Set-level: lists of competition-set indices (1 or m lists).
  std::vector<std::vector<std::uint32_t>> lists;

  static Priorities global_list(std::vector<std::uint32_t> order) {
    return {PriorityMode::global, {std::move(order)}};
  }
  static Priorities per_machine(
      std::vector<std::vector<std::uint32_t>> lists) {
    return {PriorityMode::per_machine, std::move(lists)};
  }
  static Priorities set_level(std::vector<std::vector<std::uint32_t>> lists) {
    return {PriorityMode::set_level, std::move(lists)};
  }
};

// A pure strategy profile: machine index per job, jobs in input order.
struct Profile {
  std::vector<std::uint32_t> machine_of;

  friend bool operator==(const Profile&, const Profile&) = default;
};

// Immutable, validated game instance. Construction via make() checks all
// structural invariants; every accessor afterwards is cheap.
class Game {
public:
  static Game make(std::vector<Job> jobs, std::vector<Machine> machines,
                   Priorities priorities, CompetitionStructure competition);

  std::uint32_t n() const noexcept {
    return static_cast<std::uint32_t>(jobs_.size());
  }
  std::uint32_t m() const noexcept {
    return static_cast<std::uint32_t>(machines_.size());
  }
  const Job& job(std::uint32_t j) const { return jobs_[j]; }
  const Machine& machine(std::uint32_t i) const { return machines_[i]; }
  const std::vector<Job>& jobs() const noexcept { return jobs_; }
  const std::vector<Machine>& machines() const noexcept { return machines_; }

  PriorityMode priority_mode() const noexcept { return prio_.mode; }
  const Priorities& priorities() const noexcept { return prio_; }
  // True when priorities are a single job-level list shared by all machines.
  bool has_global_list() const noexcept {
    return prio_.mode == PriorityMode::global;
  }
  bool set_level() const noexcept {
    return prio_.mode == PriorityMode::set_level;
  }

  // Job-level priority list of machine i. Contract error on set-level games:
  // their static job order is undefined (it depends on seniority state).
  const std::vector<std::uint32_t>& list_for(std::uint32_t i) const;
  // Position of job j in machine i's job-level list (0-based).
  std::uint32_t pos(std::uint32_t i, std::uint32_t j) const;
  // Set-level priority list of machine i (set indices). Contract error on
  // job-level games.
  const std::vector<std::uint32_t>& set_list_for(std::uint32_t i) const;

  const CompetitionStructure& competition() const noexcept { return comp_; }
  std::uint32_t set_count() const noexcept {
    return static_cast<std::uint32_t>(sets_.size());
  }
  std::uint32_t set_of(std::uint32_t j) const { return set_of_[j]; }
  const std::vector<std::uint32_t>& set_members(std::uint32_t s) const {
    return sets_[s];
  }
  bool single_set() const noexcept {
    return sets_.size() == 1;
  }

  std::optional<std::uint32_t> job_index(std::string_view id) const;
  std::optional<std::uint32_t> machine_index(std::string_view id) const;

  bool identical_rates() const noexcept { return identical_rates_; }
  bool unit_jobs() const noexcept { return unit_jobs_; }
  const Rational& total_work() const noexcept { return total_work_; }

  // Job indices ordered by ascending id string; the tie-break order used for
  // witness selection.
  const std::vector<std::uint32_t>& lex_order() const noexcept {
    return lex_order_;
  }

  // Same jobs, machines, and priorities under a different partition.
  Game with_competition(CompetitionStructure competition) const;

private:
  Game() = default;

  std::vector<Job> jobs_;
  std::vector<Machine> machines_;
  Priorities prio_;
  CompetitionStructure comp_;

  std::vector<std::vector<std::uint32_t>> sets_;  // normalized partition
  std::vector<std::uint32_t> set_of_;
  std::vector<std::uint32_t> pos_;  // m*n matrix, job-level games only
  std::vector<std::uint32_t> lex_order_;
  std::unordered_map<std::string, std::uint32_t> job_index_;
  std::unordered_map<std::string, std::uint32_t> machine_index_;
  Rational total_work_;
  bool identical_rates_ = true;
  bool unit_jobs_ = true;
};

// Throws ValidationError unless p assigns every job of g a valid machine.
void validate_profile(const Game& g, const Profile& p);

}  // namespace ranksched
