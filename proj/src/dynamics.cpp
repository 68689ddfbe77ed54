#include "ranksched/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "ranksched/detail/engine.hpp"
#include "ranksched/errors.hpp"

namespace ranksched::dynamics {

namespace {

std::string profile_key(const Profile& s) {
  return {reinterpret_cast<const char*>(s.machine_of.data()),
          s.machine_of.size() * sizeof(std::uint32_t)};
}

std::string digit_string(const Game& g, const Profile& s) {
  static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  out.reserve(g.n());
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    out.push_back(g.m() <= 36 ? digits[s.machine_of[j]] : '?');
  }
  return out;
}

bool lag_domain(const Game& g) {
  return g.unit_jobs() && g.identical_rates() && g.has_global_list() &&
         g.single_set() && !g.set_level();
}

// Laggards: rank strictly worse than the position-k guarantee
// m*ceil(k/m) - (m-1)/2 (k = 1-based global list position). Doubled to stay
// integral. Assumes eng.base_ = completions(s).
template <class T>
void compute_lag(const Game& g, detail::Engine<T>& eng,
                 std::vector<std::uint32_t>& lag) {
  lag.clear();
  const std::int64_t m = g.m();
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    const std::int64_t k = g.pos(0, j) + 1;
    const std::int64_t bound2 = 2 * m * ((k + m - 1) / m) - (m - 1);
    if (eng.rank2(eng.base_, j) > bound2) lag.push_back(j);
  }
}

// Rule choice among the suboptimal players. eng.base_ must hold
// completions(s). Only uniform_random consumes the rng.
template <class T>
std::uint32_t pick_from_sub(const Game& g, detail::Engine<T>& eng,
                            const std::vector<std::uint32_t>& sub,
                            DeviatorRule rule, std::mt19937_64* rng) {
  switch (rule) {
    case DeviatorRule::lowest_id: {
      std::uint32_t best = sub[0];
      for (std::uint32_t j : sub) {
        if (g.job(j).id < g.job(best).id) best = j;
      }
      return best;
    }
    case DeviatorRule::highest_rank: {
      std::uint32_t best = sub[0];
      std::int64_t best_rank = eng.rank2(eng.base_, best);
      for (std::uint32_t j : sub) {
        const std::int64_t r = eng.rank2(eng.base_, j);
        if (r > best_rank ||
            (r == best_rank && g.job(j).id < g.job(best).id)) {
          best = j;
          best_rank = r;
        }
      }
      return best;
    }
    case DeviatorRule::uniform_random: {
      std::uniform_int_distribution<std::size_t> d(0, sub.size() - 1);
      return sub[d(*rng)];
    }
    case DeviatorRule::priority_based: {
      if (!g.has_global_list()) {
        throw ContractError(
            "priority-based deviator rule requires one global list");
      }
      if (lag_domain(g)) {
        std::vector<std::uint32_t> lag;
        compute_lag(g, eng, lag);
        if (!lag.empty()) {
          std::uint32_t best = lag[0];
          for (std::uint32_t j : lag) {
            if (g.pos(0, j) < g.pos(0, best)) best = j;
          }
          bool suboptimal = false;
          for (std::uint32_t j : sub) suboptimal = suboptimal || (j == best);
          if (!suboptimal) {
            throw InternalError(
                "laggard without a strictly improving move");
          }
          return best;
        }
      }
      std::uint32_t best = sub[0];
      for (std::uint32_t j : sub) {
        if (g.pos(0, j) > g.pos(0, best)) best = j;
      }
      return best;
    }
  }
  throw InternalError("unknown deviator rule");
}

Rational rational_from_double(double v) {
  const double scaled = std::ldexp(v, 40);
  BigInt num = static_cast<long long>(std::llround(scaled));
  return Rational(num, BigInt(1) << 40);
}

// --- graph construction -----------------------------------------------------

// Appends the rule-relevant (deviator, targets) moves of s. eng.base_ is left
// holding completions(s).
template <class T>
void collect_moves(const Game& g, detail::Engine<T>& eng, const Profile& s,
                   ProfileGraph::Mode mode, DeviatorRule rule,
                   std::vector<std::uint32_t>& sub,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) {
  out.clear();
  eng.suboptimal(s, sub);
  if (sub.empty()) return;
  std::vector<std::uint32_t> deviators;
  if (mode == ProfileGraph::Mode::all_player ||
      rule == DeviatorRule::uniform_random) {
    deviators = sub;
  } else {
    deviators.push_back(pick_from_sub(g, eng, sub, rule, nullptr));
  }
  std::vector<std::uint32_t> brs;
  for (std::uint32_t j : deviators) {
    eng.best_responses_with_base(s, j, brs);
    for (std::uint32_t t : brs) out.emplace_back(j, t);
  }
}

template <class T>
ProfileGraph build_graph_with_engine(const Game& g, detail::Engine<T>& eng,
                                     const GraphOptions& opts) {
  ProfileGraph gr;
  gr.mode = opts.mode;
  if (opts.mode == ProfileGraph::Mode::rule_restricted) gr.rule = opts.rule;
  std::vector<std::uint32_t> sub;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> moves;

  if (opts.starts.empty()) {
    const std::uint64_t total =
        oracle::admitted_profile_count(g, opts.cap, opts.force);
    gr.full_space = true;
    gr.vertices.reserve(total);
    gr.adj.resize(total);
    std::vector<std::uint64_t> pow(g.n(), 1);
    for (std::uint32_t j = g.n() - 1; j > 0; --j) {
      pow[j - 1] = pow[j] * g.m();
    }
    Profile s;
    s.machine_of.assign(g.n(), 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      gr.vertices.push_back(s);
      collect_moves(g, eng, s, opts.mode, opts.rule, sub, moves);
      auto& edges = gr.adj[code];
      edges.reserve(moves.size());
      for (auto [j, t] : moves) {
        const std::uint64_t target =
            code + (std::uint64_t(t) - s.machine_of[j]) * pow[j];
        edges.push_back(static_cast<std::uint32_t>(target));
      }
      if (code + 1 < total) {
        for (std::uint32_t d = g.n(); d-- > 0;) {
          if (++s.machine_of[d] < g.m()) break;
          s.machine_of[d] = 0;
        }
      }
    }
    return gr;
  }

  gr.full_space = false;
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::uint32_t> queue;
  auto intern = [&](const Profile& p) {
    auto [it, added] = index.emplace(
        profile_key(p), static_cast<std::uint32_t>(gr.vertices.size()));
    if (added) {
      if (!opts.force && gr.vertices.size() >= opts.cap) {
        throw CapError("reachable profile set exceeds the cap of " +
                           std::to_string(opts.cap),
                       gr.vertices.size() + 1, opts.cap);
      }
      gr.vertices.push_back(p);
      gr.adj.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (const Profile& p : opts.starts) {
    validate_profile(g, p);
    intern(p);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    Profile s = gr.vertices[v];
    collect_moves(g, eng, s, opts.mode, opts.rule, sub, moves);
    for (auto [j, t] : moves) {
      Profile nx = s;
      nx.machine_of[j] = t;
      // intern may grow gr.adj; resolve the target before indexing into it.
      const std::uint32_t w = intern(nx);
      gr.adj[v].push_back(w);
    }
  }
  return gr;
}

// --- strongly connected components (iterative Tarjan) -----------------------

constexpr std::uint32_t kUnset = UINT32_MAX;

struct SccResult {
  std::vector<std::uint32_t> comp;  // component id per vertex
  std::uint32_t count = 0;
};

SccResult tarjan(const std::vector<std::vector<std::uint32_t>>& adj) {
  const auto n = static_cast<std::uint32_t>(adj.size());
  SccResult res;
  res.comp.assign(n, kUnset);
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t v;
    std::uint32_t edge;
  };
  std::vector<Frame> frames;
  std::uint32_t next_index = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.v].size()) {
        const std::uint32_t w = adj[f.v][f.edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        const std::uint32_t v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
        if (low[v] == index[v]) {
          const std::uint32_t id = res.count++;
          while (true) {
            const std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            res.comp[w] = id;
            if (w == v) break;
          }
        }
      }
    }
  }
  return res;
}

// --- stationary distributions ------------------------------------------------

// Exact stationary row vector of an irreducible kernel (dense, k <= 64):
// solve f P = f with sum(f) = 1 by rational elimination, then verify the
// solution exactly.
std::vector<Rational> stationary_exact(
    const std::vector<std::vector<Rational>>& P) {
  const std::size_t k = P.size();
  std::vector<std::vector<Rational>> M(
      k, std::vector<Rational>(k + 1, Rational(0)));
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      M[y][x] += P[x][y];
    }
    M[x][x] -= Rational(1);
  }
  for (std::size_t c = 0; c < k; ++c) M[k - 1][c] = Rational(1);
  M[k - 1][k] = Rational(1);

  for (std::size_t col = 0, row = 0; col < k && row < k; ++col) {
    std::size_t piv = row;
    while (piv < k && M[piv][col].sign() == 0) ++piv;
    if (piv == k) continue;
    std::swap(M[piv], M[row]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == row || M[r][col].sign() == 0) continue;
      Rational factor = M[r][col] / M[row][col];
      for (std::size_t c = col; c <= k; ++c) {
        M[r][c] -= factor * M[row][c];
      }
    }
    ++row;
  }
  std::vector<Rational> f(k, Rational(0));
  for (std::size_t r = 0; r < k; ++r) {
    std::size_t lead = 0;
    while (lead < k && M[r][lead].sign() == 0) ++lead;
    if (lead == k) {
      if (M[r][k].sign() != 0) {
        throw InternalError("stationary system is inconsistent");
      }
      continue;
    }
    f[lead] = M[r][k] / M[r][lead];
  }

  Rational sum(0);
  for (const Rational& v : f) {
    if (v.sign() < 0) throw InternalError("negative stationary probability");
    sum += v;
  }
  if (!(sum == Rational(1))) {
    throw InternalError("stationary probabilities do not sum to one");
  }
  for (std::size_t y = 0; y < k; ++y) {
    Rational acc(0);
    for (std::size_t x = 0; x < k; ++x) acc += f[x] * P[x][y];
    if (!(acc == f[y])) {
      throw InternalError("stationary residual is nonzero");
    }
  }
  return f;
}

// Cesaro-averaged power iteration; handles periodic chains. Total-variation
// tolerance 1e-9 between doubling windows.
std::vector<double> stationary_approx(
    const std::vector<std::vector<Rational>>& P) {
  const std::size_t k = P.size();
  std::vector<std::vector<double>> pd(k, std::vector<double>(k, 0.0));
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) pd[x][y] = P[x][y].to_double();
  }
  std::vector<double> f(k, 1.0 / static_cast<double>(k)), nx(k, 0.0);
  std::vector<double> sum(k, 0.0), avg(k, 0.0), prev_avg(k, 1.0);
  std::size_t iters = 0;
  std::size_t window = 64;
  while (iters < 2'000'000) {
    for (std::size_t step = 0; step < window; ++step) {
      std::fill(nx.begin(), nx.end(), 0.0);
      for (std::size_t x = 0; x < k; ++x) {
        if (f[x] == 0.0) continue;
        for (std::size_t y = 0; y < k; ++y) nx[y] += f[x] * pd[x][y];
      }
      f.swap(nx);
      for (std::size_t y = 0; y < k; ++y) sum[y] += f[y];
      ++iters;
    }
    double tv = 0.0;
    for (std::size_t y = 0; y < k; ++y) {
      avg[y] = sum[y] / static_cast<double>(iters);
      tv += std::abs(avg[y] - prev_avg[y]);
    }
    if (tv / 2.0 < 1e-9) break;
    prev_avg = avg;
    window *= 2;
  }
  return avg;
}

}  // namespace

SubLag sub_and_lag(const Game& g, const Profile& s) {
  detail::require_job_level(g);
  validate_profile(g, s);
  if (!lag_domain(g)) {
    throw ContractError(
        "sub_and_lag requires unit jobs, identical machines, one global "
        "list, and a single competition set");
  }
  return detail::with_engine(g, [&](auto& eng) {
    SubLag out;
    eng.suboptimal(s, out.sub);
    compute_lag(g, eng, out.lag);
    return out;
  });
}

std::uint32_t pick_deviator(const Game& g, const Profile& s, DeviatorRule rule,
                            std::uint64_t seed) {
  detail::require_job_level(g);
  validate_profile(g, s);
  return detail::with_engine(g, [&](auto& eng) {
    std::vector<std::uint32_t> sub;
    eng.suboptimal(s, sub);
    if (sub.empty()) {
      throw ContractError("pick_deviator: the profile is stable");
    }
    std::mt19937_64 rng(seed);
    return pick_from_sub(g, eng, sub, rule, &rng);
  });
}

BrTrace brd_run(const Game& g, const Profile& start, DeviatorRule rule,
                std::uint64_t max_steps, std::uint64_t seed) {
  detail::require_job_level(g);
  validate_profile(g, start);
  if (rule == DeviatorRule::priority_based && !g.has_global_list()) {
    throw ContractError(
        "priority-based deviator rule requires one global list");
  }
  return detail::with_engine(g, [&](auto& eng) {
    std::mt19937_64 rng(seed);
    BrTrace tr;
    Profile s = start;
    std::unordered_set<std::string> visited;
    visited.insert(profile_key(s));
    std::vector<std::uint32_t> sub, brs;
    for (std::uint64_t step = 0; step < max_steps; ++step) {
      eng.suboptimal(s, sub);
      if (sub.empty()) {
        tr.status = BrStatus::reached_ne;
        tr.final_profile = s;
        return tr;
      }
      const std::uint32_t j = pick_from_sub(g, eng, sub, rule, &rng);
      eng.best_responses_with_base(s, j, brs);
      std::uint32_t t = brs[0];
      if (brs.size() > 1) {
        std::uniform_int_distribution<std::size_t> d(0, brs.size() - 1);
        t = brs[d(rng)];
      }
      tr.steps.push_back({s, j, t});
      s.machine_of[j] = t;
      if (!visited.insert(profile_key(s)).second) {
        tr.status = BrStatus::entered_cycle;
        tr.final_profile = s;
        return tr;
      }
    }
    tr.status = BrStatus::budget_exhausted;
    tr.final_profile = s;
    return tr;
  });
}

ProfileGraph build_profile_graph(const Game& g, const GraphOptions& opts) {
  detail::require_job_level(g);
  if (opts.mode == ProfileGraph::Mode::rule_restricted &&
      opts.rule == DeviatorRule::priority_based && !g.has_global_list()) {
    throw ContractError(
        "priority-based deviator rule requires one global list");
  }
  return detail::with_engine(
      g, [&](auto& eng) { return build_graph_with_engine(g, eng, opts); });
}

SinkAnalysis sink_analysis(const Game& g, DeviatorRule rule,
                           const GraphOptions& opts) {
  GraphOptions gopts = opts;
  gopts.mode = ProfileGraph::Mode::rule_restricted;
  gopts.rule = rule;
  SinkAnalysis an;
  an.graph = build_profile_graph(g, gopts);
  const auto& adj = an.graph.adj;
  SccResult scc = tarjan(adj);

  std::vector<bool> terminal(scc.count, true);
  for (std::uint32_t v = 0; v < adj.size(); ++v) {
    for (std::uint32_t w : adj[v]) {
      if (scc.comp[w] != scc.comp[v]) terminal[scc.comp[v]] = false;
    }
  }
  std::vector<std::vector<std::uint32_t>> members(scc.count);
  for (std::uint32_t v = 0; v < adj.size(); ++v) {
    if (terminal[scc.comp[v]]) members[scc.comp[v]].push_back(v);
  }

  detail::with_engine(g, [&](auto& eng) {
    std::vector<std::uint32_t> sub, brs;
    for (std::uint32_t c = 0; c < scc.count; ++c) {
      if (!terminal[c]) continue;
      SinkComponent sink;
      sink.members = members[c];
      std::sort(sink.members.begin(), sink.members.end(),
                [&](std::uint32_t a, std::uint32_t b) {
                  return digit_string(g, an.graph.vertices[a]) <
                         digit_string(g, an.graph.vertices[b]);
                });
      for (std::uint32_t v : sink.members) {
        sink.profiles.push_back(an.graph.vertices[v]);
      }
      const std::size_t k = sink.members.size();

      if (k == 1 && adj[sink.members[0]].empty()) {
        sink.is_ne = true;
        sink.stationary = {Rational(1)};
        sink.expected_cost = [&] {
          eng.completions(sink.profiles[0], eng.base_);
          auto worst = eng.base_[0];
          for (std::uint32_t j = 1; j < g.n(); ++j) {
            if (worst < eng.base_[j]) worst = eng.base_[j];
          }
          return eng.to_rational(worst);
        }();
        sink.expected_cost_approx = sink.expected_cost.to_double();
        an.sinks.push_back(std::move(sink));
        continue;
      }

      // Transition kernel restricted to the sink.
      std::unordered_map<std::string, std::uint32_t> local;
      for (std::uint32_t x = 0; x < k; ++x) {
        local[profile_key(sink.profiles[x])] = x;
      }
      std::vector<std::vector<Rational>> P(
          k, std::vector<Rational>(k, Rational(0)));
      for (std::uint32_t x = 0; x < k; ++x) {
        const Profile& s = sink.profiles[x];
        eng.suboptimal(s, sub);
        if (sub.empty()) {
          throw InternalError("stable profile inside a multi-state sink");
        }
        std::vector<std::uint32_t> deviators;
        if (rule == DeviatorRule::uniform_random) {
          deviators = sub;
        } else {
          deviators.push_back(pick_from_sub(g, eng, sub, rule, nullptr));
        }
        const Rational dev_w(1, static_cast<long long>(deviators.size()));
        for (std::uint32_t j : deviators) {
          eng.completions(s, eng.base_);
          eng.best_responses_with_base(s, j, brs);
          const Rational w =
              dev_w / Rational(static_cast<long long>(brs.size()));
          for (std::uint32_t t : brs) {
            Profile nx = s;
            nx.machine_of[j] = t;
            auto it = local.find(profile_key(nx));
            if (it == local.end()) {
              throw InternalError("sink transition leaves the component");
            }
            P[x][it->second] += w;
          }
        }
      }

      std::vector<Rational> makespans(k);
      for (std::size_t x = 0; x < k; ++x) {
        eng.completions(sink.profiles[x], eng.base_);
        auto worst = eng.base_[0];
        for (std::uint32_t j = 1; j < g.n(); ++j) {
          if (worst < eng.base_[j]) worst = eng.base_[j];
        }
        makespans[x] = eng.to_rational(worst);
      }

      if (k <= 64) {
        sink.stationary = stationary_exact(P);
        sink.expected_cost = Rational(0);
        for (std::size_t x = 0; x < k; ++x) {
          sink.expected_cost += sink.stationary[x] * makespans[x];
        }
        sink.expected_cost_approx = sink.expected_cost.to_double();
      } else {
        sink.approximate = true;
        sink.stationary_approx = stationary_approx(P);
        double acc = 0.0;
        for (std::size_t x = 0; x < k; ++x) {
          acc += sink.stationary_approx[x] * makespans[x].to_double();
        }
        sink.expected_cost_approx = acc;
        sink.expected_cost = rational_from_double(acc);
      }
      an.sinks.push_back(std::move(sink));
    }
    return 0;
  });
  return an;
}

PosinkResult posink(const Game& g, DeviatorRule rule,
                    const GraphOptions& opts) {
  SinkAnalysis an = sink_analysis(g, rule, opts);
  oracle::Options oopts;
  oopts.cap = opts.cap;
  oopts.force = opts.force;
  const Rational opt = oracle::opt_makespan(g, oopts).first;
  PosinkResult res;
  bool first = true;
  for (const SinkComponent& sink : an.sinks) {
    if (sink.approximate) res.approximate = true;
    const Rational ratio = sink.expected_cost / opt;
    if (first || res.value < ratio) {
      res.value = ratio;
      first = false;
    }
  }
  if (first) throw InternalError("no sink component found");
  return res;
}

}  // namespace ranksched::dynamics
