#include "ranksched/schedule.hpp"

#include "ranksched/detail/engine.hpp"
#include "ranksched/errors.hpp"

namespace ranksched {

ScheduleView build_schedule(const Game& g, const Profile& s) {
  detail::require_job_level(g);
  validate_profile(g, s);
  ScheduleView v;
  v.order.resize(g.m());
  v.slot.assign(g.n(), 0);
  v.prefix_work.assign(g.n(), Rational(0));
  v.completion.assign(g.n(), Rational(0));
  v.load.assign(g.m(), Rational(0));
  for (std::uint32_t i = 0; i < g.m(); ++i) {
    Rational cum(0);
    for (std::uint32_t j : g.list_for(i)) {
      if (s.machine_of[j] != i) continue;
      cum += g.job(j).length;
      v.slot[j] = static_cast<std::uint32_t>(v.order[i].size());
      v.order[i].push_back(j);
      v.prefix_work[j] = cum;
      v.completion[j] = cum / g.machine(i).rate;
    }
    v.load[i] = cum;
  }
  return v;
}

RankVector ranks(const Game& g, const Profile& s) {
  detail::require_job_level(g);
  validate_profile(g, s);
  return detail::with_engine(g, [&](auto& eng) {
    eng.completions(s, eng.base_);
    RankVector r;
    r.rank.reserve(g.n());
    for (std::uint32_t j = 0; j < g.n(); ++j) {
      r.rank.push_back(Rational(eng.rank2(eng.base_, j), 2));
    }
    return r;
  });
}

Rational makespan(const Game& g, const Profile& s) {
  detail::require_job_level(g);
  validate_profile(g, s);
  return detail::with_engine(g, [&](auto& eng) {
    eng.completions(s, eng.base_);
    auto best = eng.base_[0];
    for (std::uint32_t j = 1; j < g.n(); ++j) {
      if (best < eng.base_[j]) best = eng.base_[j];
    }
    return eng.to_rational(best);
  });
}

bool prefers(const Game& g, std::uint32_t j, const Profile& s,
             const Profile& s_alt) {
  detail::require_job_level(g);
  validate_profile(g, s);
  validate_profile(g, s_alt);
  if (j >= g.n()) throw ValidationError("prefers: job index out of range");
  for (std::uint32_t k = 0; k < g.n(); ++k) {
    if (k != j && s.machine_of[k] != s_alt.machine_of[k]) {
      throw ContractError(
          "prefers: profiles differ in another player's strategy ('" +
          g.job(k).id + "')");
    }
  }
  return detail::with_engine(g, [&](auto& eng) {
    eng.completions(s, eng.base_);
    const std::int64_t r0 = eng.rank2(eng.base_, j);
    const auto c0 = eng.base_[j];
    eng.completions(s_alt, eng.dev_);
    const std::int64_t r1 = eng.rank2(eng.dev_, j);
    return r1 < r0 || (r1 == r0 && eng.dev_[j] < c0);
  });
}

std::vector<std::uint32_t> best_responses(const Game& g, const Profile& s,
                                          std::uint32_t j) {
  detail::require_job_level(g);
  validate_profile(g, s);
  if (j >= g.n()) {
    throw ValidationError("best_responses: job index out of range");
  }
  return detail::with_engine(g, [&](auto& eng) {
    std::vector<std::uint32_t> out;
    eng.best_responses(s, j, out);
    return out;
  });
}

NeResult is_ne(const Game& g, const Profile& s) {
  detail::require_job_level(g);
  validate_profile(g, s);
  return detail::with_engine(g, [&](auto& eng) {
    detail::WitnessLite w;
    if (eng.stable(s, &w)) return NeResult{true, std::nullopt};
    return NeResult{false, NeWitness{w.job, w.target}};
  });
}

}  // namespace ranksched
