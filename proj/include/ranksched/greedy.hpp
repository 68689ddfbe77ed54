#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ranksched/game.hpp"
#include "ranksched/schedule.hpp"

namespace ranksched::greedy {

// Tie-break policy for the list-scheduling constructions: the lowest-index
// machine of the argmin set (default), a preferred machine whenever it is
// tied (used by the equilibrium constructions), or an explicit machine
// sequence consumed one entry per tied step. Explicit sequences are
// validated: a chosen machine must belong to the tied argmin set, and the run
// must consume the sequence exactly (no surplus, no deficit).
class TieBreak {
public:
  enum class Kind { lowest_index, prefer_machine, explicit_sequence };

  static TieBreak lowest_index() { return TieBreak{}; }
  static TieBreak prefer_machine(std::uint32_t machine) {
    TieBreak t;
    t.kind_ = Kind::prefer_machine;
    t.preferred_ = machine;
    return t;
  }
  static TieBreak explicit_sequence(std::vector<std::uint32_t> seq) {
    TieBreak t;
    t.kind_ = Kind::explicit_sequence;
    t.seq_ = std::move(seq);
    return t;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_explicit() const noexcept { return kind_ == Kind::explicit_sequence; }
  std::uint32_t preferred() const noexcept { return preferred_; }
  const std::vector<std::uint32_t>& sequence() const noexcept { return seq_; }

private:
  Kind kind_ = Kind::lowest_index;
  std::uint32_t preferred_ = 0;
  std::vector<std::uint32_t> seq_;
};

// List scheduling on identical machines: repeatedly give the least-loaded
// machine the first unassigned job of its own priority list.
Profile algorithm1(const Game& g, const TieBreak& tb = TieBreak::lowest_index());

// Unit jobs on related machines: the machine minimizing (load+1)/rate takes
// the first unassigned job of its list.
Profile algorithm2(const Game& g, const TieBreak& tb = TieBreak::lowest_index());

// For a cost-stable profile of a unit-job, single-competition-set game:
// a job has a strictly beneficial deviation iff it is last on its machine and
// some machine z holds a job j' completing at the same time with the moving
// job ahead of j' in z's list. Returns the first such (job, z) scanning
// machines in ascending index order, or nullopt (profile stable).
// With verify=true (default), cost-stability of s is checked first and a
// contract error raised if it fails.
std::optional<NeWitness> rank_decreasing_witness(const Game& g,
                                                 const Profile& s,
                                                 bool verify = true);

// Stability test for balanced, cost-stable profiles of unit jobs on identical
// machines (the outputs of algorithm1), by the positional conditions on the
// last two completion layers. Equivalent to is_ne on that domain.
bool check_identical_unit_stability(const Game& g, const Profile& s,
                                    bool verify = true);

// Stability test for cost-stable profiles of unit jobs on two related
// machines (the outputs of algorithm2), by comparing the machines' last
// completion times and the list positions of their last jobs. Equivalent to
// is_ne on that domain.
bool check_q2_unit_stability(const Game& g, const Profile& s,
                             bool verify = true);

}  // namespace ranksched::greedy
