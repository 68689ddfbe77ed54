#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ranksched/game.hpp"

namespace ranksched::instances {

// Parameters for a named lower-bound / example family. Each family reads a
// fixed subset of the fields and rejects the rest:
//   invpol-poa      k >= 1
//   identical-pos   m >= 2
//   q2-small-r      r with r^2 + r <= 1
//   q2-large-r      r with r^2 + r > 1
//   g1, g2          m >= 2, eps (optional)
//   g3              r with r^2 + r <= 1, eps (optional)
//   g4              r with r^2 + r > 1
//   g5              r, eps (optional)
//   sink-gprime     r
// All r parameters live in (0, 1]; eps defaults to 1/1000.
struct FamilySpec {
  std::string family;
  std::optional<std::uint32_t> m;
  std::optional<std::uint32_t> k;
  std::optional<Rational> r;
  std::optional<Rational> eps;
};

const std::vector<std::string>& family_names();

// Deterministic generator; validation error (naming the constraint) on
// out-of-domain parameters.
Game generate(const FamilySpec& spec);

// A 3-dimensional matching instance: triples over three element universes
// X, Y, Z, each of size n. Elements are 1-based indices.
struct ThreeDMInstance {
  std::uint32_t n = 0;
  std::vector<std::array<std::uint32_t, 3>> triples;
};

// Shape checks: n > 0, at least one triple, all coordinates in 1..n.
void validate_3dm(const ThreeDMInstance& inst);

// Scheduling game whose equilibria encode perfect matchings of inst: one
// machine per triple, 2n unit element jobs, |T| - n dummy jobs of length 2,
// and 2|T| unit filler jobs (total length 4|T|). By default every element
// must occur in 2 or 3 triples (the normalized form the construction
// assumes); allow_unnormalized skips that check and builds the game anyway.
Game reduce_3dm(const ThreeDMInstance& inst, bool allow_unnormalized = false);

// The canonical stable profile induced by a perfect matching (triple indices,
// 0-based): matched machines run their two element jobs plus fillers,
// the remaining machines of each type take one dummy plus fillers; every
// machine has load 4. Validation error when the indices are not a perfect
// matching of inst.
Profile matching_profile(const ThreeDMInstance& inst,
                         const std::vector<std::uint32_t>& matching,
                         const Game& reduced);

// Exhaustive matcher, intended as an independent ground truth on small
// instances; refuses more than 24 triples. Picks lowest triple indices first.
std::optional<std::vector<std::uint32_t>> solve_3dm_bruteforce(
    const ThreeDMInstance& inst);

// Single-occurrence preprocessing: while some element lies in exactly one
// triple, that triple is forced into every perfect matching, and every triple
// sharing an element with it is discarded. The residual instance is
// re-indexed compactly (element order preserved, surviving triples in input
// order). feasible == false means the cascade proved no perfect matching
// exists.
struct NormalizeResult {
  ThreeDMInstance instance;
  std::vector<std::uint32_t> forced;  // input triple indices, ascending
  std::vector<std::uint32_t> kept;    // input indices of surviving triples
  bool feasible = true;
};

NormalizeResult normalize_3dm(const ThreeDMInstance& inst);

}  // namespace ranksched::instances
