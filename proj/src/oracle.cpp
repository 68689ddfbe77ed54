#include "ranksched/oracle.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#include "ranksched/detail/engine.hpp"
#include "ranksched/errors.hpp"

namespace ranksched::oracle {

namespace {

constexpr std::uint64_t kAddressable = std::uint64_t(1) << 62;

template <class T>
struct ScanAcc {
  std::vector<std::uint64_t> ne_codes;
  bool have_any = false;
  T best_makespan{};
  std::uint64_t best_code = 0;
  bool have_ne = false;
  T ne_min{}, ne_max{};

  void merge(const ScanAcc& o) {
    ne_codes.insert(ne_codes.end(), o.ne_codes.begin(), o.ne_codes.end());
    if (o.have_any &&
        (!have_any || o.best_makespan < best_makespan ||
         (o.best_makespan == best_makespan && o.best_code < best_code))) {
      best_makespan = o.best_makespan;
      best_code = o.best_code;
      have_any = true;
    }
    if (o.have_ne) {
      if (!have_ne) {
        ne_min = o.ne_min;
        ne_max = o.ne_max;
        have_ne = true;
      } else {
        if (o.ne_min < ne_min) ne_min = o.ne_min;
        if (ne_max < o.ne_max) ne_max = o.ne_max;
      }
    }
  }
};

// Scans codes [lo, hi) in ascending order with an incrementing odometer over
// the base-m digits (job input order, job 0 most significant).
template <class T>
void scan_range(detail::Engine<T> eng, std::uint64_t lo, std::uint64_t hi,
                bool with_stability, ScanAcc<T>& acc) {
  const Game& g = *eng.game;
  const std::uint32_t n = g.n();
  const std::uint32_t m = g.m();
  Profile s;
  s.machine_of.assign(n, 0);
  {
    std::uint64_t v = lo;
    for (std::uint32_t t = n; t-- > 0;) {
      s.machine_of[t] = static_cast<std::uint32_t>(v % m);
      v /= m;
    }
  }
  for (std::uint64_t code = lo; code < hi; ++code) {
    eng.completions(s, eng.base_);
    T worst = eng.base_[0];
    for (std::uint32_t j = 1; j < n; ++j) {
      if (worst < eng.base_[j]) worst = eng.base_[j];
    }
    if (!acc.have_any || worst < acc.best_makespan) {
      acc.best_makespan = worst;
      acc.best_code = code;
      acc.have_any = true;
    }
    if (with_stability) {
      bool stable = true;
      for (std::uint32_t j = 0; j < n; ++j) {
        if (eng.better_target_exists(s, j)) {
          stable = false;
          break;
        }
      }
      if (stable) {
        acc.ne_codes.push_back(code);
        if (!acc.have_ne) {
          acc.ne_min = acc.ne_max = worst;
          acc.have_ne = true;
        } else {
          if (worst < acc.ne_min) acc.ne_min = worst;
          if (acc.ne_max < worst) acc.ne_max = worst;
        }
      }
    }
    if (code + 1 < hi) {
      for (std::uint32_t t = n; t-- > 0;) {
        if (++s.machine_of[t] < m) break;
        s.machine_of[t] = 0;
      }
    }
  }
}

template <class T>
Report run_analysis(detail::Engine<T>& eng, std::uint64_t total,
                    bool with_stability, unsigned threads) {
  const Game& g = *eng.game;
  ScanAcc<T> acc;
  if (threads <= 1 || total < 4096) {
    scan_range(eng, 0, total, with_stability, acc);
  } else {
    const unsigned workers = threads;
    std::vector<ScanAcc<T>> accs(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::uint64_t(w) * chunk;
      const std::uint64_t hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi, w] {
        scan_range(eng, lo, hi, with_stability, accs[w]);
      });
    }
    for (auto& t : pool) t.join();
    for (auto& a : accs) acc.merge(a);
  }

  Report rep;
  rep.profile_count = total;
  rep.total_work = g.total_work();
  rep.opt_makespan = eng.to_rational(acc.best_makespan);
  rep.opt_profile = profile_from_code(g, acc.best_code);
  rep.ne_profiles.reserve(acc.ne_codes.size());
  for (std::uint64_t code : acc.ne_codes) {
    rep.ne_profiles.push_back(profile_from_code(g, code));
  }
  if (acc.have_ne) {
    rep.poa = eng.to_rational(acc.ne_max) / rep.opt_makespan;
    rep.pos = eng.to_rational(acc.ne_min) / rep.opt_makespan;
  }
  return rep;
}

Report analyze_impl(const Game& g, const Options& opts, bool with_stability) {
  detail::require_job_level(g);
  const std::uint64_t total =
      admitted_profile_count(g, opts.cap, opts.force);
  return detail::with_engine(g, [&](auto& eng) {
    return run_analysis(eng, total, with_stability, opts.threads);
  });
}

}  // namespace

std::uint64_t admitted_profile_count(const Game& g, std::uint64_t cap,
                                     bool force) {
  BigInt total = 1;
  for (std::uint32_t j = 0; j < g.n(); ++j) total *= g.m();
  if (!force && total > cap) {
    std::uint64_t req = total > BigInt(UINT64_MAX)
                            ? UINT64_MAX
                            : total.convert_to<std::uint64_t>();
    throw CapError("profile space has " + total.str() +
                       " profiles, above the cap of " + std::to_string(cap) +
                       " (set RANKSCHED_CAP or force to override)",
                   req, cap);
  }
  if (total > kAddressable) {
    throw CapError("profile space has " + total.str() +
                       " profiles, beyond the addressable enumeration range",
                   UINT64_MAX, kAddressable);
  }
  return total.convert_to<std::uint64_t>();
}

std::uint64_t default_cap() {
  if (const char* env = std::getenv("RANKSCHED_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && end != nullptr && *end == '\0' && v > 0) {
      return static_cast<std::uint64_t>(v);
    }
  }
  return std::uint64_t(1) << 24;
}

Report analyze(const Game& g, const Options& opts) {
  return analyze_impl(g, opts, /*with_stability=*/true);
}

std::vector<Profile> enumerate_ne(const Game& g, const Options& opts) {
  return analyze(g, opts).ne_profiles;
}

std::pair<Rational, Profile> opt_makespan(const Game& g, const Options& opts) {
  Report rep = analyze_impl(g, opts, /*with_stability=*/false);
  return {rep.opt_makespan, rep.opt_profile};
}

PoaPos poa_pos(const Game& g, const Options& opts) {
  Report rep = analyze(g, opts);
  return {rep.poa, rep.pos};
}

PoaPos cost_only_poa_pos(const Game& g, const Options& opts) {
  return poa_pos(g.with_competition(CompetitionStructure::singletons()), opts);
}

std::uint64_t profile_code(const Game& g, const Profile& s) {
  validate_profile(g, s);
  std::uint64_t code = 0;
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    code = code * g.m() + s.machine_of[j];
  }
  return code;
}

Profile profile_from_code(const Game& g, std::uint64_t code) {
  Profile s;
  s.machine_of.assign(g.n(), 0);
  for (std::uint32_t t = g.n(); t-- > 0;) {
    s.machine_of[t] = static_cast<std::uint32_t>(code % g.m());
    code /= g.m();
  }
  return s;
}

}  // namespace ranksched::oracle
