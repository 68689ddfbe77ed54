#pragma once

// Evaluation engine shared by the core predicates, the oracle, and the
// dynamics module. Instantiated at two number types with identical
// semantics:
//
//   Engine<Rational>     — direct exact arithmetic.
//   Engine<std::int64_t> — completions scaled by K = lcm(length
//                          denominators) * lcm(rate numerators), which makes
//                          every completion time an exact integer. Available
//                          only when the magnitude bound holds (checked at
//                          construction); the dispatcher falls back to the
//                          Rational engine otherwise.
//
// Rank comparisons use doubled ranks (2*rank is an integer for average-tie
// ranks), so no division ever happens on a decision path.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "ranksched/errors.hpp"
#include "ranksched/game.hpp"

namespace ranksched::detail {

struct WitnessLite {
  std::uint32_t job;
  std::uint32_t target;
};

template <class T>
class Engine {
public:
  const Game* game = nullptr;
  std::vector<T> length;  // per job (scaled for the integer engine)
  std::vector<T> factor;  // per machine; completion = work-prefix * factor
  BigInt scale_int = 1;   // C_true = C_scaled / scale_int

  // Scaled completion times of every job under s.
  void completions(const Profile& s, std::vector<T>& out) const {
    const std::uint32_t mm = game->m();
    out.resize(game->n());
    for (std::uint32_t i = 0; i < mm; ++i) {
      const auto& list = game->list_for(i);
      T cum{0};
      for (std::uint32_t j : list) {
        if (s.machine_of[j] == i) {
          cum += length[j];
          out[j] = cum * factor[i];
        }
      }
    }
  }

  // Completions after moving job j to `target`, given base = completions(s).
  // Only the source and target machines are recomputed.
  void deviation(const Profile& s, std::uint32_t j, std::uint32_t target,
                 const std::vector<T>& base, std::vector<T>& out) const {
    out = base;
    const std::uint32_t src = s.machine_of[j];
    {
      T cum{0};
      for (std::uint32_t k : game->list_for(src)) {
        if (k != j && s.machine_of[k] == src) {
          cum += length[k];
          out[k] = cum * factor[src];
        }
      }
    }
    {
      T cum{0};
      for (std::uint32_t k : game->list_for(target)) {
        if (k == j || s.machine_of[k] == target) {
          cum += length[k];
          out[k] = cum * factor[target];
        }
      }
    }
  }

  // Twice the rank of job j within its competition set (average-tie ranks).
  std::int64_t rank2(const std::vector<T>& comp, std::uint32_t j) const {
    std::int64_t less = 0;
    std::int64_t tied = 0;
    for (std::uint32_t k : game->set_members(game->set_of(j))) {
      if (comp[k] < comp[j]) {
        ++less;
      } else if (comp[k] == comp[j]) {
        ++tied;  // includes j itself
      }
    }
    return 2 * less + tied + 1;
  }

  Rational to_rational(const T& v) const {
    if constexpr (std::is_same_v<T, Rational>) {
      return v;
    } else {
      return Rational(BigInt(v), scale_int);
    }
  }

  // --- derived predicates ----------------------------------------------

  // True iff no job strictly improves (rank, completion) by switching
  // machines. With a non-null witness, reports the lexicographically-first
  // (by job id) suboptimal job and the lowest-index machine among its best
  // responses.
  bool stable(const Profile& s, WitnessLite* witness = nullptr) {
    completions(s, base_);
    if (witness == nullptr) {
      for (std::uint32_t j = 0; j < game->n(); ++j) {
        if (better_target_exists(s, j)) return false;
      }
      return true;
    }
    for (std::uint32_t j : game->lex_order()) {
      if (auto t = best_improving_target(s, j)) {
        *witness = {j, *t};
        return false;
      }
    }
    return true;
  }

  // Jobs with at least one strictly improving move, ascending input order.
  void suboptimal(const Profile& s, std::vector<std::uint32_t>& out) {
    completions(s, base_);
    out.clear();
    for (std::uint32_t j = 0; j < game->n(); ++j) {
      if (better_target_exists(s, j)) out.push_back(j);
    }
  }

  // Full best-response set of job j (machines achieving its best (rank,
  // completion) key, current machine included when optimal), ascending.
  void best_responses(const Profile& s, std::uint32_t j,
                      std::vector<std::uint32_t>& out) {
    completions(s, base_);
    best_responses_with_base(s, j, out);
  }

  // Same, assuming base_ already holds completions(s).
  void best_responses_with_base(const Profile& s, std::uint32_t j,
                                std::vector<std::uint32_t>& out) {
    const std::uint32_t mm = game->m();
    std::int64_t best_r = rank2(base_, j);
    T best_c = base_[j];
    for (std::uint32_t t = 0; t < mm; ++t) {
      if (t == s.machine_of[j]) continue;
      deviation(s, j, t, base_, dev_);
      std::int64_t r = rank2(dev_, j);
      if (r < best_r || (r == best_r && dev_[j] < best_c)) {
        best_r = r;
        best_c = dev_[j];
      }
    }
    out.clear();
    for (std::uint32_t t = 0; t < mm; ++t) {
      if (t == s.machine_of[j]) {
        if (rank2(base_, j) == best_r && base_[j] == best_c) out.push_back(t);
        continue;
      }
      deviation(s, j, t, base_, dev_);
      if (rank2(dev_, j) == best_r && dev_[j] == best_c) out.push_back(t);
    }
  }

  // Lowest-index strictly improving target achieving j's best key, if any.
  // Assumes base_ = completions(s); recomputed by stable()/callers.
  std::optional<std::uint32_t> best_improving_target(const Profile& s,
                                                     std::uint32_t j) {
    const std::uint32_t mm = game->m();
    std::int64_t best_r = rank2(base_, j);
    T best_c = base_[j];
    bool found = false;
    std::uint32_t best_t = 0;
    for (std::uint32_t t = 0; t < mm; ++t) {
      if (t == s.machine_of[j]) continue;
      deviation(s, j, t, base_, dev_);
      std::int64_t r = rank2(dev_, j);
      if (r < best_r || (r == best_r && dev_[j] < best_c)) {
        best_r = r;
        best_c = dev_[j];
        best_t = t;
        found = true;
      }
    }
    return found ? std::optional(best_t) : std::nullopt;
  }

  bool better_target_exists(const Profile& s, std::uint32_t j) {
    const std::int64_t r0 = rank2(base_, j);
    const std::uint32_t mm = game->m();
    for (std::uint32_t t = 0; t < mm; ++t) {
      if (t == s.machine_of[j]) continue;
      deviation(s, j, t, base_, dev_);
      std::int64_t r = rank2(dev_, j);
      if (r < r0 || (r == r0 && dev_[j] < base_[j])) return true;
    }
    return false;
  }

  const std::vector<T>& base() const { return base_; }

  std::vector<T> base_;  // scratch: completions of the profile under study
  std::vector<T> dev_;   // scratch: completions after a single deviation
};

inline void require_job_level(const Game& g) {
  if (g.set_level()) {
    throw ContractError(
        "operation requires job-level priorities; this game is set-level");
  }
}

inline Engine<Rational> make_exact_engine(const Game& g) {
  require_job_level(g);
  Engine<Rational> e;
  e.game = &g;
  e.length.reserve(g.n());
  for (std::uint32_t j = 0; j < g.n(); ++j) e.length.push_back(g.job(j).length);
  e.factor.reserve(g.m());
  for (std::uint32_t i = 0; i < g.m(); ++i) {
    e.factor.push_back(Rational(1) / g.machine(i).rate);
  }
  e.base_.resize(g.n());
  e.dev_.resize(g.n());
  return e;
}

inline std::optional<Engine<std::int64_t>> make_fast_engine(const Game& g) {
  require_job_level(g);
  using boost::multiprecision::lcm;
  BigInt L = 1;
  for (std::uint32_t j = 0; j < g.n(); ++j) L = lcm(L, g.job(j).length.den());
  BigInt A = 1;
  for (std::uint32_t i = 0; i < g.m(); ++i) {
    A = lcm(A, g.machine(i).rate.num());
  }
  std::vector<BigInt> p(g.n());
  BigInt sum_p = 0;
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    p[j] = g.job(j).length.num() * (L / g.job(j).length.den());
    sum_p += p[j];
  }
  std::vector<BigInt> f(g.m());
  BigInt max_f = 0;
  for (std::uint32_t i = 0; i < g.m(); ++i) {
    f[i] = g.machine(i).rate.den() * (A / g.machine(i).rate.num());
    if (f[i] > max_f) max_f = f[i];
  }
  const BigInt bound = BigInt(1) << 62;
  if (sum_p * max_f > bound) return std::nullopt;

  Engine<std::int64_t> e;
  e.game = &g;
  e.scale_int = L * A;
  e.length.reserve(g.n());
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    e.length.push_back(p[j].convert_to<std::int64_t>());
  }
  e.factor.reserve(g.m());
  for (std::uint32_t i = 0; i < g.m(); ++i) {
    e.factor.push_back(f[i].convert_to<std::int64_t>());
  }
  e.base_.resize(g.n());
  e.dev_.resize(g.n());
  return e;
}

// Runs f on the integer engine when its magnitude bound admits the game,
// otherwise on the Rational engine. f must be callable on both.
template <class F>
decltype(auto) with_engine(const Game& g, F&& f) {
  if (auto fast = make_fast_engine(g)) {
    return std::forward<F>(f)(*fast);
  }
  auto exact = make_exact_engine(g);
  return std::forward<F>(f)(exact);
}

}  // namespace ranksched::detail
