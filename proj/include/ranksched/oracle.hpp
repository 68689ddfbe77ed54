#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ranksched/game.hpp"

namespace ranksched::oracle {

// Enumeration refusal threshold: RANKSCHED_CAP (decimal) when set and valid,
// otherwise 2^24 profiles.
std::uint64_t default_cap();

struct Options {
  std::uint64_t cap;
  bool force = false;   // enumerate past the cap (addressability still bounds)
  unsigned threads = 1;

  Options() : cap(default_cap()) {}
};

struct Report {
  std::uint64_t profile_count = 0;  // m^n
  Rational total_work;              // sum of job lengths
  Rational opt_makespan;
  Profile opt_profile;              // lowest-code profile achieving it
  std::vector<Profile> ne_profiles;  // ascending profile code
  // Defined iff ne_profiles is nonempty; worst/best equilibrium makespan
  // divided by opt_makespan.
  std::optional<Rational> poa;
  std::optional<Rational> pos;
};

struct PoaPos {
  std::optional<Rational> poa;
  std::optional<Rational> pos;
};

// Full exhaustive report over all m^n profiles.
Report analyze(const Game& g, const Options& opts = {});

std::vector<Profile> enumerate_ne(const Game& g, const Options& opts = {});
std::pair<Rational, Profile> opt_makespan(const Game& g,
                                          const Options& opts = {});
PoaPos poa_pos(const Game& g, const Options& opts = {});
// Same game under the singleton partition: every rank is 1, so preference
// degenerates to completion time alone.
PoaPos cost_only_poa_pos(const Game& g, const Options& opts = {});

// Profile <-> code, big-endian base-m digits in job input order (job 0 is the
// most significant digit), so ascending codes sort digit strings
// lexicographically.
std::uint64_t profile_code(const Game& g, const Profile& s);
Profile profile_from_code(const Game& g, std::uint64_t code);

// m^n after the cap and addressability checks (CapError on refusal).
std::uint64_t admitted_profile_count(const Game& g, std::uint64_t cap,
                                     bool force);

}  // namespace ranksched::oracle
