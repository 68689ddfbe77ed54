#include "ranksched/instances.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>

#include "ranksched/errors.hpp"

namespace ranksched::instances {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

struct JobBuilder {
  std::vector<Job> jobs;

  std::uint32_t add(std::string id, Rational length) {
    jobs.push_back({std::move(id), std::move(length)});
    return static_cast<std::uint32_t>(jobs.size() - 1);
  }
};

std::vector<Machine> identical_machines(std::uint32_t m) {
  std::vector<Machine> out;
  for (std::uint32_t i = 1; i <= m; ++i) {
    out.push_back({"M" + std::to_string(i), Rational(1)});
  }
  return out;
}

std::vector<Machine> fast_slow_machines(const Rational& r) {
  return {{"M1", Rational(1)}, {"M2", r}};
}

// Parameter-shape checks: each family reads a fixed subset of the fields.
void require_params(const FamilySpec& spec, bool wants_m, bool wants_k,
                    bool wants_r, bool wants_eps) {
  auto check = [&](bool wants, bool has, const char* name) {
    if (wants && !has) {
      fail("family " + spec.family + " requires parameter " + name);
    }
    if (!wants && has) {
      fail("family " + spec.family + " does not take parameter " + name);
    }
  };
  check(wants_m, spec.m.has_value(), "m");
  check(wants_k, spec.k.has_value(), "k");
  check(wants_r, spec.r.has_value(), "r");
  if (!wants_eps && spec.eps.has_value()) {
    fail("family " + spec.family + " does not take parameter eps");
  }
}

Rational checked_r(const FamilySpec& spec) {
  const Rational& r = *spec.r;
  if (r.sign() <= 0 || Rational(1) < r) {
    fail("family " + spec.family + " requires r in (0, 1]");
  }
  return r;
}

Rational eps_or_default(const FamilySpec& spec) {
  Rational eps = spec.eps.value_or(Rational(1, 1000));
  if (eps.sign() <= 0) {
    fail("family " + spec.family + " requires eps > 0");
  }
  return eps;
}

Game gen_invpol_poa(const FamilySpec& spec) {
  require_params(spec, false, true, false, false);
  const std::uint32_t k = *spec.k;
  if (k < 1) fail("family invpol-poa requires k >= 1");
  JobBuilder b;
  std::vector<std::uint32_t> units;
  for (std::uint32_t t = 1; t <= 2 * k; ++t) {
    units.push_back(b.add("j" + std::to_string(t), Rational(1)));
  }
  const std::uint32_t star =
      b.add("jstar", Rational(static_cast<long long>(2) * k));
  std::vector<std::uint32_t> first;
  for (std::uint32_t t = 0; t < k; ++t) first.push_back(units[t]);
  first.push_back(star);
  for (std::uint32_t t = k; t < 2 * k; ++t) first.push_back(units[t]);
  std::vector<std::uint32_t> second(first.rbegin(), first.rend());
  return Game::make(std::move(b.jobs), identical_machines(2),
                    Priorities::per_machine({first, second}),
                    CompetitionStructure::single());
}

Game gen_identical_pos(const FamilySpec& spec) {
  require_params(spec, true, false, false, false);
  const std::uint32_t m = *spec.m;
  if (m < 2) fail("family identical-pos requires m >= 2");
  JobBuilder b;
  const std::uint32_t n_units = m * (m - 1);
  std::vector<std::uint32_t> units;
  for (std::uint32_t t = 1; t <= n_units; ++t) {
    units.push_back(b.add("j" + std::to_string(t), Rational(1)));
  }
  const std::uint32_t star =
      b.add("jstar", Rational(static_cast<long long>(m)));
  std::vector<std::vector<std::uint32_t>> lists;
  for (std::uint32_t i = 1; i <= m; ++i) {
    const std::uint32_t delayed = m * (m - 2) + i;  // 1-based unit number
    std::vector<std::uint32_t> list;
    for (std::uint32_t t = 1; t <= n_units; ++t) {
      if (t != delayed) list.push_back(units[t - 1]);
    }
    list.push_back(units[delayed - 1]);
    list.push_back(star);
    lists.push_back(std::move(list));
  }
  return Game::make(std::move(b.jobs), identical_machines(m),
                    Priorities::per_machine(std::move(lists)),
                    CompetitionStructure::single());
}

Game gen_q2_small_r(const FamilySpec& spec) {
  require_params(spec, false, false, true, false);
  const Rational r = checked_r(spec);
  if (Rational(1) < r * r + r) {
    fail("family q2-small-r requires r^2 + r <= 1");
  }
  JobBuilder b;
  const std::uint32_t a = b.add("a", Rational(1));
  const std::uint32_t jb = b.add("b", Rational(1) / r);
  return Game::make(std::move(b.jobs), fast_slow_machines(r),
                    Priorities::global_list({a, jb}),
                    CompetitionStructure::single());
}

Game gen_q2_large_r(const FamilySpec& spec) {
  require_params(spec, false, false, true, false);
  const Rational r = checked_r(spec);
  if (!(Rational(1) < r * r + r)) {
    fail("family q2-large-r requires r^2 + r > 1");
  }
  JobBuilder b;
  const std::uint32_t x = b.add("x", Rational(1));
  const std::uint32_t y = b.add("y", r * r + r - Rational(1));
  const std::uint32_t z = b.add("z", r + Rational(1));
  return Game::make(std::move(b.jobs), fast_slow_machines(r),
                    Priorities::per_machine({{x, y, z}, {y, x, z}}),
                    CompetitionStructure::single());
}

Game gen_g1(const FamilySpec& spec) {
  require_params(spec, true, false, false, true);
  const std::uint32_t m = *spec.m;
  if (m < 2) fail("family g1 requires m >= 2");
  const Rational eps = eps_or_default(spec);
  if (!(eps < Rational(1))) {
    fail("family g1 requires eps < 1 (job b has length 1 - eps)");
  }
  JobBuilder b;
  const Rational big(static_cast<long long>(m) - 1);
  const std::uint32_t ja = b.add("a", big);
  const std::uint32_t jb = b.add("b", Rational(1) - eps);
  const std::uint32_t jc = b.add("c", eps);
  const std::uint32_t jd = b.add("d", Rational(static_cast<long long>(m)));
  std::vector<std::uint32_t> xs, ys;
  for (std::uint32_t i = 3; i <= m; ++i) {
    xs.push_back(b.add("x" + std::to_string(i), big));
  }
  for (std::uint32_t i = 3; i <= m; ++i) {
    ys.push_back(b.add("y" + std::to_string(i), Rational(1)));
  }
  auto append = [](std::vector<std::uint32_t>& list,
                   const std::vector<std::uint32_t>& seg,
                   std::uint32_t skip = UINT32_MAX) {
    for (std::uint32_t j : seg) {
      if (j != skip) list.push_back(j);
    }
  };
  std::vector<std::vector<std::uint32_t>> lists;
  std::vector<std::uint32_t> l1{jb, ja, jc};
  append(l1, ys);
  l1.push_back(jd);
  append(l1, xs);
  lists.push_back(std::move(l1));
  std::vector<std::uint32_t> l2{ja, jd, jc};
  append(l2, ys);
  l2.push_back(jb);
  append(l2, xs);
  lists.push_back(std::move(l2));
  for (std::uint32_t i = 3; i <= m; ++i) {
    std::vector<std::uint32_t> li{xs[i - 3]};
    append(li, xs, xs[i - 3]);
    li.push_back(ys[i - 3]);
    append(li, ys, ys[i - 3]);
    li.push_back(jc);
    li.push_back(jd);
    li.push_back(ja);
    li.push_back(jb);
    lists.push_back(std::move(li));
  }
  return Game::make(std::move(b.jobs), identical_machines(m),
                    Priorities::per_machine(std::move(lists)),
                    CompetitionStructure::single());
}

Game gen_g2(const FamilySpec& spec) {
  require_params(spec, true, false, false, true);
  const std::uint32_t m = *spec.m;
  if (m < 2) fail("family g2 requires m >= 2");
  const Rational eps = eps_or_default(spec);
  const Rational pa = Rational(static_cast<long long>(m) - 1) -
                      Rational(static_cast<long long>(m)) * eps;
  if (pa.sign() <= 0) {
    fail("family g2 requires eps < (m-1)/m (job a has length m-1-m*eps)");
  }
  JobBuilder b;
  const std::uint32_t ja = b.add("a", pa);
  const std::uint32_t jd = b.add("d", Rational(1));
  const std::uint32_t je = b.add("e", Rational(static_cast<long long>(m)));
  std::vector<std::uint32_t> cs;
  for (std::uint32_t i = 1; i <= m; ++i) {
    cs.push_back(b.add("c" + std::to_string(i), eps));
  }
  std::vector<std::uint32_t> xs, ys;  // xs interleaves x_{i1}, x_{i2}
  for (std::uint32_t i = 3; i <= m; ++i) {
    xs.push_back(b.add("x" + std::to_string(i) + "_1",
                       Rational(static_cast<long long>(m - i + 1)) + eps));
    xs.push_back(b.add("x" + std::to_string(i) + "_2",
                       Rational(static_cast<long long>(i) - 2)));
  }
  for (std::uint32_t i = 3; i <= m; ++i) {
    ys.push_back(b.add("y" + std::to_string(i), Rational(1)));
  }
  auto append = [](std::vector<std::uint32_t>& list,
                   const std::vector<std::uint32_t>& seg,
                   std::uint32_t skip1 = UINT32_MAX,
                   std::uint32_t skip2 = UINT32_MAX) {
    for (std::uint32_t j : seg) {
      if (j != skip1 && j != skip2) list.push_back(j);
    }
  };
  std::vector<std::vector<std::uint32_t>> lists;
  std::vector<std::uint32_t> l1{cs[0], ja};
  for (std::uint32_t i = 1; i < m; ++i) l1.push_back(cs[i]);
  l1.push_back(je);
  l1.push_back(jd);
  append(l1, xs);
  append(l1, ys);
  lists.push_back(std::move(l1));
  std::vector<std::uint32_t> l2{ja, jd};
  for (std::uint32_t i = m; i >= 3; --i) l2.push_back(ys[i - 3]);
  l2.push_back(je);
  append(l2, cs);
  append(l2, xs);
  lists.push_back(std::move(l2));
  for (std::uint32_t i = 3; i <= m; ++i) {
    const std::uint32_t xi1 = xs[2 * (i - 3)];
    const std::uint32_t xi2 = xs[2 * (i - 3) + 1];
    std::vector<std::uint32_t> li{xi1, ys[i - 3], xi2, ja, jd, je};
    append(li, cs);
    append(li, xs, xi1, xi2);
    append(li, ys, ys[i - 3]);
    lists.push_back(std::move(li));
  }
  return Game::make(std::move(b.jobs), identical_machines(m),
                    Priorities::per_machine(std::move(lists)),
                    CompetitionStructure::single());
}

Game gen_g3(const FamilySpec& spec) {
  require_params(spec, false, false, true, true);
  const Rational r = checked_r(spec);
  if (Rational(1) < r * r + r) {
    fail("family g3 requires r^2 + r <= 1");
  }
  const Rational eps = eps_or_default(spec);
  if (!(eps < Rational(1))) {
    fail("family g3 requires eps < 1 (job a has length 1 - eps)");
  }
  JobBuilder b;
  const std::uint32_t ja = b.add("a", Rational(1) - eps);
  const std::uint32_t jb = b.add("b", eps);
  const std::uint32_t jc = b.add("c", Rational(1) / r);
  return Game::make(std::move(b.jobs), fast_slow_machines(r),
                    Priorities::per_machine({{ja, jc, jb}, {ja, jb, jc}}),
                    CompetitionStructure::single());
}

Game gen_g4(const FamilySpec& spec) {
  require_params(spec, false, false, true, false);
  const Rational r = checked_r(spec);
  if (!(Rational(1) < r * r + r)) {
    fail("family g4 requires r^2 + r > 1 (job y has length r^2 + r - 1)");
  }
  JobBuilder b;
  const std::uint32_t x = b.add("x", Rational(1));
  const std::uint32_t y = b.add("y", r * r + r - Rational(1));
  const std::uint32_t z = b.add("z", r + Rational(1));
  return Game::make(std::move(b.jobs), fast_slow_machines(r),
                    Priorities::per_machine({{x, z, y}, {x, y, z}}),
                    CompetitionStructure::single());
}

Game gen_g5(const FamilySpec& spec) {
  require_params(spec, false, false, true, true);
  const Rational r = checked_r(spec);
  const Rational eps = eps_or_default(spec);
  if (!(eps < r * r + r)) {
    fail("family g5 requires eps < r^2 + r (job d has length r^2 + r - eps)");
  }
  JobBuilder b;
  const std::uint32_t ja = b.add("a", r * r);
  const std::uint32_t jb = b.add("b", r + Rational(1) - r * r);
  const std::uint32_t jc = b.add("c", eps);
  const std::uint32_t jd = b.add("d", r * r + r - eps);
  return Game::make(
      std::move(b.jobs), fast_slow_machines(r),
      Priorities::per_machine({{ja, jb, jc, jd}, {ja, jc, jd, jb}}),
      CompetitionStructure::single());
}

Game gen_sink_gprime(const FamilySpec& spec) {
  require_params(spec, false, false, true, false);
  const Rational r = checked_r(spec);
  JobBuilder b;
  const std::uint32_t a = b.add("a", Rational(1));
  const std::uint32_t jb = b.add("b", r);
  return Game::make(std::move(b.jobs), fast_slow_machines(r),
                    Priorities::global_list({a, jb}),
                    CompetitionStructure::single());
}

const char* axis_letter(std::size_t axis) {
  static const char* letters[3] = {"x", "y", "z"};
  return letters[axis];
}

// counts[axis][element - 1] over the given triples.
std::array<std::vector<std::uint32_t>, 3> occurrence_counts(
    const ThreeDMInstance& inst, const std::vector<bool>* alive = nullptr) {
  std::array<std::vector<std::uint32_t>, 3> counts;
  for (auto& c : counts) c.assign(inst.n, 0);
  for (std::size_t t = 0; t < inst.triples.size(); ++t) {
    if (alive && !(*alive)[t]) continue;
    for (std::size_t axis = 0; axis < 3; ++axis) {
      ++counts[axis][inst.triples[t][axis] - 1];
    }
  }
  return counts;
}

}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "invpol-poa", "identical-pos", "q2-small-r", "q2-large-r", "g1",
      "g2",         "g3",            "g4",         "g5",         "sink-gprime"};
  return names;
}

Game generate(const FamilySpec& spec) {
  if (spec.family == "invpol-poa") return gen_invpol_poa(spec);
  if (spec.family == "identical-pos") return gen_identical_pos(spec);
  if (spec.family == "q2-small-r") return gen_q2_small_r(spec);
  if (spec.family == "q2-large-r") return gen_q2_large_r(spec);
  if (spec.family == "g1") return gen_g1(spec);
  if (spec.family == "g2") return gen_g2(spec);
  if (spec.family == "g3") return gen_g3(spec);
  if (spec.family == "g4") return gen_g4(spec);
  if (spec.family == "g5") return gen_g5(spec);
  if (spec.family == "sink-gprime") return gen_sink_gprime(spec);
  fail("unknown family \"" + spec.family + "\"");
}

void validate_3dm(const ThreeDMInstance& inst) {
  if (inst.n == 0) fail("3dm: n must be positive");
  if (inst.triples.empty()) fail("3dm: at least one triple is required");
  for (std::size_t t = 0; t < inst.triples.size(); ++t) {
    for (std::size_t axis = 0; axis < 3; ++axis) {
      const std::uint32_t v = inst.triples[t][axis];
      if (v < 1 || v > inst.n) {
        fail("3dm: triples[" + std::to_string(t) + "]." + axis_letter(axis) +
             " = " + std::to_string(v) + " is out of range 1.." +
             std::to_string(inst.n));
      }
    }
  }
}

Game reduce_3dm(const ThreeDMInstance& inst, bool allow_unnormalized) {
  validate_3dm(inst);
  const auto counts = occurrence_counts(inst);
  if (!allow_unnormalized) {
    for (std::size_t axis = 0; axis < 3; ++axis) {
      for (std::uint32_t e = 0; e < inst.n; ++e) {
        const std::uint32_t c = counts[axis][e];
        if (c != 2 && c != 3) {
          fail("3dm: element " + std::string(axis_letter(axis)) +
               std::to_string(e + 1) + " occurs " + std::to_string(c) +
               " time(s); the normalized form requires 2 or 3 (pass "
               "allow_unnormalized to build the game anyway)");
        }
      }
    }
  }
  const auto T = static_cast<std::uint32_t>(inst.triples.size());
  JobBuilder b;
  std::vector<std::uint32_t> y_idx(inst.n), z_idx(inst.n);
  for (std::uint32_t j = 1; j <= inst.n; ++j) {
    y_idx[j - 1] = b.add("y" + std::to_string(j), Rational(1));
  }
  for (std::uint32_t k = 1; k <= inst.n; ++k) {
    z_idx[k - 1] = b.add("z" + std::to_string(k), Rational(1));
  }
  std::vector<std::vector<std::uint32_t>> d_idx(inst.n);
  for (std::uint32_t i = 1; i <= inst.n; ++i) {
    const std::uint32_t tau = counts[0][i - 1];
    for (std::uint32_t q = 1; q + 1 <= tau; ++q) {
      d_idx[i - 1].push_back(
          b.add("d" + std::to_string(i) + "_" + std::to_string(q),
                Rational(2)));
    }
  }
  std::vector<std::uint32_t> u_idx(T), v_idx(T);
  for (std::uint32_t l = 1; l <= T; ++l) {
    u_idx[l - 1] = b.add("u" + std::to_string(l), Rational(1));
  }
  for (std::uint32_t l = 1; l <= T; ++l) {
    v_idx[l - 1] = b.add("v" + std::to_string(l), Rational(1));
  }

  std::vector<std::vector<std::uint32_t>> lists;
  for (std::uint32_t l = 0; l < T; ++l) {
    const auto [xi, yj, zk] = inst.triples[l];
    std::vector<std::uint32_t> list;
    list.reserve(b.jobs.size());
    for (std::uint32_t d : d_idx[xi - 1]) list.push_back(d);
    list.push_back(y_idx[yj - 1]);
    list.push_back(z_idx[zk - 1]);
    for (std::uint32_t u : u_idx) list.push_back(u);
    list.push_back(v_idx[l]);
    for (std::uint32_t l2 = 0; l2 < T; ++l2) {
      if (l2 != l) list.push_back(v_idx[l2]);
    }
    for (std::uint32_t i = 1; i <= inst.n; ++i) {
      if (i == xi) continue;
      for (std::uint32_t d : d_idx[i - 1]) list.push_back(d);
    }
    for (std::uint32_t j = 1; j <= inst.n; ++j) {
      if (j != yj) list.push_back(y_idx[j - 1]);
    }
    for (std::uint32_t k = 1; k <= inst.n; ++k) {
      if (k != zk) list.push_back(z_idx[k - 1]);
    }
    lists.push_back(std::move(list));
  }
  std::vector<Machine> machines;
  for (std::uint32_t l = 1; l <= T; ++l) {
    machines.push_back({"M" + std::to_string(l), Rational(1)});
  }
  return Game::make(std::move(b.jobs), std::move(machines),
                    Priorities::per_machine(std::move(lists)),
                    CompetitionStructure::single());
}

Profile matching_profile(const ThreeDMInstance& inst,
                         const std::vector<std::uint32_t>& matching,
                         const Game& reduced) {
  validate_3dm(inst);
  const auto T = static_cast<std::uint32_t>(inst.triples.size());
  if (matching.size() != inst.n) {
    fail("matching must contain exactly n = " + std::to_string(inst.n) +
         " triples, got " + std::to_string(matching.size()));
  }
  std::array<std::vector<bool>, 3> covered;
  for (auto& c : covered) c.assign(inst.n, false);
  std::vector<bool> matched(T, false);
  for (std::uint32_t l : matching) {
    if (l >= T) {
      fail("matching refers to triple index " + std::to_string(l) +
           ", but the instance has only " + std::to_string(T) + " triples");
    }
    matched[l] = true;
    for (std::size_t axis = 0; axis < 3; ++axis) {
      const std::uint32_t e = inst.triples[l][axis];
      if (covered[axis][e - 1]) {
        fail("not a perfect matching: element " +
             std::string(axis_letter(axis)) + std::to_string(e) +
             " is covered twice");
      }
      covered[axis][e - 1] = true;
    }
  }
  for (std::size_t axis = 0; axis < 3; ++axis) {
    for (std::uint32_t e = 0; e < inst.n; ++e) {
      if (!covered[axis][e]) {
        fail("not a perfect matching: element " +
             std::string(axis_letter(axis)) + std::to_string(e + 1) +
             " is not covered");
      }
    }
  }

  auto job_on = [&](const std::string& id, std::uint32_t machine,
                    Profile& p) {
    const auto j = reduced.job_index(id);
    if (!j) {
      throw ValidationError(
          "the given game is not the reduction of this instance (missing "
          "job " +
          id + ")");
    }
    p.machine_of[*j] = machine;
  };

  Profile p;
  p.machine_of.assign(reduced.n(), UINT32_MAX);
  for (std::uint32_t l = 0; l < T; ++l) {
    job_on("u" + std::to_string(l + 1), l, p);
    job_on("v" + std::to_string(l + 1), l, p);
  }
  for (std::uint32_t l : matching) {
    const auto [xi, yj, zk] = inst.triples[l];
    (void)xi;
    job_on("y" + std::to_string(yj), l, p);
    job_on("z" + std::to_string(zk), l, p);
  }
  // Dummies of type i go to the non-matched type-i machines, both ascending.
  for (std::uint32_t i = 1; i <= inst.n; ++i) {
    std::uint32_t q = 1;
    for (std::uint32_t l = 0; l < T; ++l) {
      if (inst.triples[l][0] != i || matched[l]) continue;
      job_on("d" + std::to_string(i) + "_" + std::to_string(q), l, p);
      ++q;
    }
  }
  for (std::uint32_t j = 0; j < reduced.n(); ++j) {
    if (p.machine_of[j] == UINT32_MAX) {
      throw ValidationError(
          "the given game is not the reduction of this instance (job " +
          reduced.job(j).id + " was never placed)");
    }
  }
  return p;
}

std::optional<std::vector<std::uint32_t>> solve_3dm_bruteforce(
    const ThreeDMInstance& inst) {
  validate_3dm(inst);
  if (inst.triples.size() > 24) {
    fail("brute-force matcher refuses instances with more than 24 triples");
  }
  std::vector<std::vector<std::uint32_t>> by_x(inst.n);
  for (std::uint32_t t = 0; t < inst.triples.size(); ++t) {
    by_x[inst.triples[t][0] - 1].push_back(t);
  }
  std::vector<bool> used_y(inst.n, false), used_z(inst.n, false);
  std::vector<std::uint32_t> chosen;
  std::function<bool(std::uint32_t)> place = [&](std::uint32_t i) {
    if (i == inst.n) return true;
    for (std::uint32_t t : by_x[i]) {
      const std::uint32_t yj = inst.triples[t][1], zk = inst.triples[t][2];
      if (used_y[yj - 1] || used_z[zk - 1]) continue;
      used_y[yj - 1] = used_z[zk - 1] = true;
      chosen.push_back(t);
      if (place(i + 1)) return true;
      chosen.pop_back();
      used_y[yj - 1] = used_z[zk - 1] = false;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

NormalizeResult normalize_3dm(const ThreeDMInstance& inst) {
  validate_3dm(inst);
  NormalizeResult res;
  std::vector<bool> alive(inst.triples.size(), true);
  std::array<std::vector<bool>, 3> covered;
  for (auto& c : covered) c.assign(inst.n, false);

  while (true) {
    const auto counts = occurrence_counts(inst, &alive);
    std::optional<std::uint32_t> forced_triple;
    for (std::size_t axis = 0; axis < 3 && !forced_triple; ++axis) {
      for (std::uint32_t e = 0; e < inst.n; ++e) {
        if (covered[axis][e]) continue;
        if (counts[axis][e] == 0) {
          res.feasible = false;
          break;
        }
        if (counts[axis][e] == 1) {
          for (std::uint32_t t = 0; t < inst.triples.size(); ++t) {
            if (alive[t] && inst.triples[t][axis] == e + 1) {
              forced_triple = t;
              break;
            }
          }
          break;
        }
      }
      if (!res.feasible) break;
    }
    if (!res.feasible || !forced_triple) break;
    const std::uint32_t f = *forced_triple;
    res.forced.push_back(f);
    for (std::size_t axis = 0; axis < 3; ++axis) {
      covered[axis][inst.triples[f][axis] - 1] = true;
    }
    for (std::uint32_t t = 0; t < inst.triples.size(); ++t) {
      if (!alive[t]) continue;
      for (std::size_t axis = 0; axis < 3; ++axis) {
        if (inst.triples[t][axis] == inst.triples[f][axis]) {
          alive[t] = false;
          break;
        }
      }
    }
  }
  std::sort(res.forced.begin(), res.forced.end());

  // Compact the residual element universe; covered elements drop out.
  std::array<std::vector<std::uint32_t>, 3> remap;
  std::uint32_t next = 0;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    remap[axis].assign(inst.n, 0);
    next = 0;
    for (std::uint32_t e = 0; e < inst.n; ++e) {
      if (!covered[axis][e]) remap[axis][e] = ++next;
    }
  }
  res.instance.n = next;  // identical across axes: one forced triple covers
                          // one element of each universe
  for (std::uint32_t t = 0; t < inst.triples.size(); ++t) {
    if (!alive[t]) continue;
    res.kept.push_back(t);
    res.instance.triples.push_back({remap[0][inst.triples[t][0] - 1],
                                    remap[1][inst.triples[t][1] - 1],
                                    remap[2][inst.triples[t][2] - 1]});
  }
  return res;
}

}  // namespace ranksched::instances
