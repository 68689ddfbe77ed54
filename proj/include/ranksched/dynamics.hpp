#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ranksched/game.hpp"
#include "ranksched/oracle.hpp"

namespace ranksched::dynamics {

enum class DeviatorRule {
  // Highest-priority laggard when one exists, else the lowest-priority
  // suboptimal player (positions in the global list). Requires a global
  // job-level list; the laggard set is computed only on its own domain (unit
  // jobs, identical machines, single competition set) and is empty otherwise.
  priority_based,
  lowest_id,      // lexicographically smallest suboptimal job id
  highest_rank,   // worst current rank; ties by smallest id
  uniform_random  // uniform over the suboptimal players
};

struct SubLag {
  std::vector<std::uint32_t> sub;  // ascending input order
  std::vector<std::uint32_t> lag;
};

// Suboptimal players (some strictly improving move exists) and laggards
// (rank worse than the guaranteed bound for their list position). The
// laggard set is defined only for unit jobs on identical machines under one
// global list and a single competition set; contract error outside.
SubLag sub_and_lag(const Game& g, const Profile& s);

// Deviator under the rule; contract error when s is stable. The seed only
// matters for uniform_random.
std::uint32_t pick_deviator(const Game& g, const Profile& s, DeviatorRule rule,
                            std::uint64_t seed = 0);

struct BrStep {
  Profile from;
  std::uint32_t deviator;
  std::uint32_t target;
};

enum class BrStatus { reached_ne, entered_cycle, budget_exhausted };

struct BrTrace {
  std::vector<BrStep> steps;
  Profile final_profile;
  BrStatus status;
};

// Best-response walk: each step moves the rule's deviator to one of its best
// responses (uniform among them). Deterministic for a fixed seed; stops on
// stability, on revisiting a profile, or when the step budget runs out.
BrTrace brd_run(const Game& g, const Profile& start, DeviatorRule rule,
                std::uint64_t max_steps, std::uint64_t seed);

struct ProfileGraph {
  enum class Mode { all_player, rule_restricted };
  Mode mode = Mode::all_player;
  std::optional<DeviatorRule> rule;  // set when rule_restricted
  bool full_space = true;            // all m^n profiles vs reachable subset
  std::vector<Profile> vertices;     // ascending code order when full_space
  std::vector<std::vector<std::uint32_t>> adj;  // edges by vertex index
};

struct GraphOptions {
  ProfileGraph::Mode mode = ProfileGraph::Mode::all_player;
  DeviatorRule rule = DeviatorRule::uniform_random;  // rule_restricted only
  std::vector<Profile> starts;  // empty: enumerate the whole space
  std::uint64_t cap;
  bool force = false;

  GraphOptions() : cap(oracle::default_cap()) {}
};

// Directed graph of strictly beneficial best-response moves. all_player mode
// has an edge per (suboptimal player, best-response target); rule_restricted
// keeps only the rule's deviator (for uniform_random this is the all-player
// edge set — the chain's support). Stable profiles have out-degree 0.
ProfileGraph build_profile_graph(const Game& g, const GraphOptions& opts = {});

struct SinkComponent {
  std::vector<std::uint32_t> members;  // vertex indices, ascending code order
  std::vector<Profile> profiles;       // aligned with members
  bool is_ne = false;                  // singleton absorbing equilibrium
  bool approximate = false;            // stationary distribution not exact
  std::vector<Rational> stationary;    // aligned; exact path only
  std::vector<double> stationary_approx;  // approximate path only
  Rational expected_cost;              // stationary-weighted makespan
  double expected_cost_approx = 0.0;
};

struct SinkAnalysis {
  ProfileGraph graph;  // the rule-restricted graph analyzed
  std::vector<SinkComponent> sinks;
};

// Terminal strongly connected components of the rule's best-response chain,
// with their exact stationary distributions (rational elimination up to 64
// states; Cesaro-averaged double iteration above, flagged approximate).
SinkAnalysis sink_analysis(const Game& g, DeviatorRule rule,
                           const GraphOptions& opts = {});

struct PosinkResult {
  Rational value;
  bool approximate = false;
};

// Worst sink's expected cost over the optimal makespan.
PosinkResult posink(const Game& g, DeviatorRule rule,
                    const GraphOptions& opts = {});

}  // namespace ranksched::dynamics
