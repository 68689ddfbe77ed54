#pragma once

#include <cstdint>
#include <string>

#include "ranksched/dynamics.hpp"
#include "ranksched/game.hpp"
#include "ranksched/instances.hpp"
#include "ranksched/oracle.hpp"
#include "ranksched/schedule.hpp"
#include "ranksched/solvers.hpp"

namespace ranksched::io {

// Instance files. Strict schema: unknown fields are rejected, every error
// names the offending field path (e.g. "machines[1].rate"). Rationals are
// strings "p" or "p/q" (plain JSON integers are also accepted on input).
Game parse_instance(const std::string& text);
std::string serialize_instance(const Game& g, int indent = 2);

// Profile files: {"assignment": {"<job id>": "<machine id>", ...}}.
Profile parse_profile(const std::string& text, const Game& g);
std::string serialize_profile(const Game& g, const Profile& p,
                              int indent = 2);

// Matching instance files: {"n": 3, "triples": [[1,1,1], ...]} (1-based).
instances::ThreeDMInstance parse_3dm(const std::string& text);
std::string serialize_3dm(const instances::ThreeDMInstance& inst,
                          int indent = 2);

// Family parameters from a JSON object {"m":3,"k":2,"r":"1/2","eps":"1/100"}
// (all fields optional; the family validates which ones it needs).
instances::FamilySpec parse_family_spec(const std::string& family,
                                        const std::string& params_json);

// Deviator-rule names: priority | lowest-id | highest-rank | uniform.
std::string rule_name(dynamics::DeviatorRule rule);
dynamics::DeviatorRule parse_rule(const std::string& name);

// Base-m digit key of a profile ('0'-'9','a'-'z'); rejects m > 36.
std::string profile_digits(const Game& g, const Profile& p);

// JSON report builders (machine output of the C API and the CLI).
std::string check_report(const Game& g, const Profile& p, const NeResult& r,
                         int indent = 2);
std::string solve_report(const Game& g, const std::string& mode,
                         const solvers::SolveResult& r, int indent = 2);
std::string oracle_report(const Game& g, const oracle::Report& r,
                          bool cost_only, int indent = 2);
std::string brd_report(const Game& g, const dynamics::BrTrace& t,
                       dynamics::DeviatorRule rule, std::uint64_t seed,
                       int indent = 2);
std::string sinks_report(const Game& g, const dynamics::SinkAnalysis& an,
                         dynamics::DeviatorRule rule, const Rational& opt,
                         int indent = 2);
std::string reduction_report(const instances::ThreeDMInstance& inst,
                             const instances::NormalizeResult& norm,
                             int indent = 2);

// Profile-graph exports; vertices keyed by their digit strings.
std::string graph_dot(const Game& g, const dynamics::ProfileGraph& gr);
std::string graph_json(const Game& g, const dynamics::ProfileGraph& gr,
                       int indent = 2);

}  // namespace ranksched::io
