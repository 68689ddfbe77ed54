#include "ranksched/io.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ranksched/errors.hpp"

namespace ranksched::io {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kNeListCap = 1000;    // equilibria listed per report
constexpr std::size_t kTraceCap = 10000;    // steps listed per walk report
constexpr std::size_t kSinkListCap = 256;   // profiles listed per sink

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

std::string dot(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string idx(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

void expect_object(const Json& v, const std::string& path) {
  if (!v.is_object()) fail(path + ": expected an object");
}

void expect_array(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path + ": expected an array");
}

void check_keys(const Json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) {
      fail((path.empty() ? std::string() : path + ": ") + "unknown field \"" +
           item.key() + "\"");
    }
  }
}

const Json& require_field(const Json& obj, const std::string& path,
                          const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail((path.empty() ? std::string() : path + ": ") + "missing field \"" +
         key + "\"");
  }
  return *it;
}

void forbid_field(const Json& obj, const std::string& path, const char* key,
                  const std::string& why) {
  if (obj.contains(key)) {
    fail((path.empty() ? std::string() : path + ": ") + "field \"" + key +
         "\" is not allowed " + why);
  }
}

std::string string_field(const Json& v, const std::string& path) {
  if (!v.is_string()) fail(path + ": expected a string");
  return v.get<std::string>();
}

Rational rational_field(const Json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const Error& e) {
      fail(path + ": " + e.what());
    }
  }
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(
                std::numeric_limits<std::int64_t>::max())) {
      fail(path + ": integer too large; use a rational string");
    }
    return Rational(static_cast<long long>(u));
  }
  if (v.is_number_integer()) {
    return Rational(static_cast<long long>(v.get<std::int64_t>()));
  }
  fail(path + ": expected a rational string \"p\" or \"p/q\"");
}

std::uint32_t uint_field(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() ||
      v.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
    fail(path + ": expected a non-negative integer");
  }
  return static_cast<std::uint32_t>(v.get<std::uint64_t>());
}

using IndexMap = std::unordered_map<std::string, std::uint32_t>;

std::vector<std::uint32_t> job_list_field(const Json& v,
                                          const std::string& path,
                                          const IndexMap& jobs) {
  expect_array(v, path);
  std::vector<std::uint32_t> out;
  out.reserve(v.size());
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string id = string_field(v[t], idx(path, t));
    auto it = jobs.find(id);
    if (it == jobs.end()) {
      fail(idx(path, t) + ": unknown job id \"" + id + "\"");
    }
    out.push_back(it->second);
  }
  return out;
}

// Set names are positional: "S1" is the first set of the partition.
std::uint32_t set_name_field(const Json& v, const std::string& path,
                             std::uint32_t set_count) {
  const std::string name = string_field(v, path);
  std::uint32_t value = 0;
  bool ok = name.size() >= 2 && name[0] == 'S' && name[1] != '0';
  for (std::size_t t = 1; ok && t < name.size(); ++t) {
    if (name[t] < '0' || name[t] > '9' || value > set_count) {
      ok = false;
    } else {
      value = value * 10 + static_cast<std::uint32_t>(name[t] - '0');
    }
  }
  if (!ok || value < 1 || value > set_count) {
    fail(path + ": unknown set name \"" + name + "\" (the instance has " +
         std::to_string(set_count) + " competition set(s))");
  }
  return value - 1;
}

std::string set_name(std::uint32_t index) {
  return "S" + std::to_string(index + 1);
}

const char* kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

Json assignment_map(const Game& g, const Profile& p) {
  Json out = Json::object();
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    out[g.job(j).id] = g.machine(p.machine_of[j]).id;
  }
  return out;
}

Json rational_or_null(const std::optional<Rational>& v) {
  return v ? Json(v->str()) : Json(nullptr);
}

std::string dump(const Json& j, int indent) {
  return indent > 0 ? j.dump(indent) : j.dump();
}

}  // namespace

Game parse_instance(const std::string& text) {
  const Json root = parse_text(text);
  expect_object(root, "instance");
  check_keys(root, "", {"jobs", "machines", "priorities", "competition"});

  std::vector<Job> jobs;
  IndexMap job_index;
  {
    const Json& arr = require_field(root, "", "jobs");
    expect_array(arr, "jobs");
    for (std::size_t t = 0; t < arr.size(); ++t) {
      const std::string path = idx("jobs", t);
      expect_object(arr[t], path);
      check_keys(arr[t], path, {"id", "length"});
      std::string id =
          string_field(require_field(arr[t], path, "id"), dot(path, "id"));
      if (!job_index.emplace(id, static_cast<std::uint32_t>(t)).second) {
        fail(dot(path, "id") + ": duplicate job id \"" + id + "\"");
      }
      jobs.push_back({std::move(id),
                      rational_field(require_field(arr[t], path, "length"),
                                     dot(path, "length"))});
    }
  }

  std::vector<Machine> machines;
  {
    const Json& arr = require_field(root, "", "machines");
    expect_array(arr, "machines");
    IndexMap machine_index;
    for (std::size_t t = 0; t < arr.size(); ++t) {
      const std::string path = idx("machines", t);
      expect_object(arr[t], path);
      check_keys(arr[t], path, {"id", "rate"});
      std::string id =
          string_field(require_field(arr[t], path, "id"), dot(path, "id"));
      if (!machine_index.emplace(id, static_cast<std::uint32_t>(t)).second) {
        fail(dot(path, "id") + ": duplicate machine id \"" + id + "\"");
      }
      machines.push_back({std::move(id),
                          rational_field(require_field(arr[t], path, "rate"),
                                         dot(path, "rate"))});
    }
  }

  CompetitionStructure comp = CompetitionStructure::single();
  if (root.contains("competition")) {
    const Json& cv = root["competition"];
    expect_object(cv, "competition");
    check_keys(cv, "competition", {"mode", "sets"});
    const std::string mode =
        string_field(require_field(cv, "competition", "mode"),
                     "competition.mode");
    if (mode == "single") {
      forbid_field(cv, "competition", "sets", "when mode is \"single\"");
    } else if (mode == "singletons") {
      forbid_field(cv, "competition", "sets", "when mode is \"singletons\"");
      comp = CompetitionStructure::singletons();
    } else if (mode == "sets") {
      const Json& sv = require_field(cv, "competition", "sets");
      expect_array(sv, "competition.sets");
      std::vector<std::vector<std::uint32_t>> sets;
      for (std::size_t t = 0; t < sv.size(); ++t) {
        sets.push_back(
            job_list_field(sv[t], idx("competition.sets", t), job_index));
      }
      comp = CompetitionStructure::of_sets(std::move(sets));
    } else {
      fail("competition.mode: expected \"single\", \"singletons\", or "
           "\"sets\"");
    }
  }
  const std::uint32_t set_count =
      comp.mode == CompetitionStructure::Mode::single
          ? 1
          : (comp.mode == CompetitionStructure::Mode::singletons
                 ? static_cast<std::uint32_t>(jobs.size())
                 : static_cast<std::uint32_t>(comp.sets.size()));

  Priorities prio;
  {
    const Json& pv = require_field(root, "", "priorities");
    expect_object(pv, "priorities");
    check_keys(pv, "priorities", {"mode", "list", "lists"});
    const std::string mode = string_field(
        require_field(pv, "priorities", "mode"), "priorities.mode");
    if (mode == "global") {
      forbid_field(pv, "priorities", "lists", "when mode is \"global\"");
      prio = Priorities::global_list(job_list_field(
          require_field(pv, "priorities", "list"), "priorities.list",
          job_index));
    } else if (mode == "per_machine") {
      forbid_field(pv, "priorities", "list", "when mode is \"per_machine\"");
      const Json& lv = require_field(pv, "priorities", "lists");
      expect_array(lv, "priorities.lists");
      std::vector<std::vector<std::uint32_t>> lists;
      for (std::size_t t = 0; t < lv.size(); ++t) {
        lists.push_back(
            job_list_field(lv[t], idx("priorities.lists", t), job_index));
      }
      prio = Priorities::per_machine(std::move(lists));
    } else if (mode == "set_level") {
      forbid_field(pv, "priorities", "list", "when mode is \"set_level\"");
      const Json& lv = require_field(pv, "priorities", "lists");
      expect_array(lv, "priorities.lists");
      std::vector<std::vector<std::uint32_t>> lists;
      for (std::size_t t = 0; t < lv.size(); ++t) {
        const std::string path = idx("priorities.lists", t);
        expect_array(lv[t], path);
        std::vector<std::uint32_t> list;
        for (std::size_t u = 0; u < lv[t].size(); ++u) {
          list.push_back(set_name_field(lv[t][u], idx(path, u), set_count));
        }
        lists.push_back(std::move(list));
      }
      prio = Priorities::set_level(std::move(lists));
    } else {
      fail("priorities.mode: expected \"global\", \"per_machine\", or "
           "\"set_level\"");
    }
  }

  return Game::make(std::move(jobs), std::move(machines), std::move(prio),
                    std::move(comp));
}

std::string serialize_instance(const Game& g, int indent) {
  Json root;
  root["jobs"] = Json::array();
  for (const Job& j : g.jobs()) {
    root["jobs"].push_back({{"id", j.id}, {"length", j.length.str()}});
  }
  root["machines"] = Json::array();
  for (const Machine& mc : g.machines()) {
    root["machines"].push_back({{"id", mc.id}, {"rate", mc.rate.str()}});
  }
  Json prio;
  const auto job_ids = [&](const std::vector<std::uint32_t>& list) {
    Json out = Json::array();
    for (std::uint32_t j : list) out.push_back(g.job(j).id);
    return out;
  };
  switch (g.priority_mode()) {
    case PriorityMode::global:
      prio["mode"] = "global";
      prio["list"] = job_ids(g.priorities().lists[0]);
      break;
    case PriorityMode::per_machine: {
      prio["mode"] = "per_machine";
      prio["lists"] = Json::array();
      for (const auto& list : g.priorities().lists) {
        prio["lists"].push_back(job_ids(list));
      }
      break;
    }
    case PriorityMode::set_level: {
      prio["mode"] = "set_level";
      prio["lists"] = Json::array();
      for (const auto& list : g.priorities().lists) {
        Json names = Json::array();
        for (std::uint32_t s : list) names.push_back(set_name(s));
        prio["lists"].push_back(std::move(names));
      }
      break;
    }
  }
  root["priorities"] = std::move(prio);
  Json comp;
  switch (g.competition().mode) {
    case CompetitionStructure::Mode::single:
      comp["mode"] = "single";
      break;
    case CompetitionStructure::Mode::singletons:
      comp["mode"] = "singletons";
      break;
    case CompetitionStructure::Mode::sets: {
      comp["mode"] = "sets";
      comp["sets"] = Json::array();
      for (const auto& set : g.competition().sets) {
        comp["sets"].push_back(job_ids(set));
      }
      break;
    }
  }
  root["competition"] = std::move(comp);
  return dump(root, indent);
}

Profile parse_profile(const std::string& text, const Game& g) {
  const Json root = parse_text(text);
  expect_object(root, "profile");
  check_keys(root, "", {"assignment"});
  const Json& av = require_field(root, "", "assignment");
  expect_object(av, "assignment");
  Profile p;
  p.machine_of.assign(g.n(), UINT32_MAX);
  for (const auto& item : av.items()) {
    const auto j = g.job_index(item.key());
    if (!j) {
      fail("assignment: unknown job id \"" + item.key() + "\"");
    }
    const std::string mid =
        string_field(item.value(), "assignment." + item.key());
    const auto i = g.machine_index(mid);
    if (!i) {
      fail("assignment." + item.key() + ": unknown machine id \"" + mid +
           "\"");
    }
    p.machine_of[*j] = *i;
  }
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    if (p.machine_of[j] == UINT32_MAX) {
      fail("assignment: missing job \"" + g.job(j).id + "\"");
    }
  }
  return p;
}

std::string serialize_profile(const Game& g, const Profile& p, int indent) {
  validate_profile(g, p);
  Json root;
  root["assignment"] = assignment_map(g, p);
  return dump(root, indent);
}

instances::ThreeDMInstance parse_3dm(const std::string& text) {
  const Json root = parse_text(text);
  expect_object(root, "instance");
  check_keys(root, "", {"n", "triples"});
  instances::ThreeDMInstance inst;
  inst.n = uint_field(require_field(root, "", "n"), "n");
  const Json& tv = require_field(root, "", "triples");
  expect_array(tv, "triples");
  for (std::size_t t = 0; t < tv.size(); ++t) {
    const std::string path = idx("triples", t);
    expect_array(tv[t], path);
    if (tv[t].size() != 3) {
      fail(path + ": expected exactly three elements");
    }
    inst.triples.push_back({uint_field(tv[t][0], idx(path, 0)),
                            uint_field(tv[t][1], idx(path, 1)),
                            uint_field(tv[t][2], idx(path, 2))});
  }
  instances::validate_3dm(inst);
  return inst;
}

std::string serialize_3dm(const instances::ThreeDMInstance& inst,
                          int indent) {
  Json root;
  root["n"] = inst.n;
  root["triples"] = Json::array();
  for (const auto& t : inst.triples) {
    root["triples"].push_back({t[0], t[1], t[2]});
  }
  return dump(root, indent);
}

instances::FamilySpec parse_family_spec(const std::string& family,
                                        const std::string& params_json) {
  const Json root = parse_text(params_json.empty() ? "{}" : params_json);
  expect_object(root, "params");
  check_keys(root, "params", {"m", "k", "r", "eps"});
  instances::FamilySpec spec;
  spec.family = family;
  if (root.contains("m")) spec.m = uint_field(root["m"], "params.m");
  if (root.contains("k")) spec.k = uint_field(root["k"], "params.k");
  if (root.contains("r")) spec.r = rational_field(root["r"], "params.r");
  if (root.contains("eps")) {
    spec.eps = rational_field(root["eps"], "params.eps");
  }
  return spec;
}

std::string rule_name(dynamics::DeviatorRule rule) {
  switch (rule) {
    case dynamics::DeviatorRule::priority_based:
      return "priority";
    case dynamics::DeviatorRule::lowest_id:
      return "lowest-id";
    case dynamics::DeviatorRule::highest_rank:
      return "highest-rank";
    case dynamics::DeviatorRule::uniform_random:
      return "uniform";
  }
  throw InternalError("unknown deviator rule");
}

dynamics::DeviatorRule parse_rule(const std::string& name) {
  if (name == "priority") return dynamics::DeviatorRule::priority_based;
  if (name == "lowest-id") return dynamics::DeviatorRule::lowest_id;
  if (name == "highest-rank") return dynamics::DeviatorRule::highest_rank;
  if (name == "uniform") return dynamics::DeviatorRule::uniform_random;
  fail("unknown deviator rule \"" + name +
       "\" (expected priority, lowest-id, highest-rank, or uniform)");
}

std::string profile_digits(const Game& g, const Profile& p) {
  if (g.m() > 36) {
    fail("digit keys support at most 36 machines, the game has " +
         std::to_string(g.m()));
  }
  std::string out;
  out.reserve(g.n());
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    out.push_back(kDigits[p.machine_of[j]]);
  }
  return out;
}

std::string check_report(const Game& g, const Profile& p, const NeResult& r,
                         int indent) {
  Json root;
  root["stable"] = r.stable;
  if (r.witness) {
    root["witness"] = {{"job", g.job(r.witness->job).id},
                       {"target", g.machine(r.witness->target).id}};
  } else {
    root["witness"] = nullptr;
  }
  root["makespan"] = makespan(g, p).str();
  const ScheduleView view = build_schedule(g, p);
  const RankVector rv = ranks(g, p);
  root["jobs"] = Json::array();
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    root["jobs"].push_back({{"id", g.job(j).id},
                            {"machine", g.machine(p.machine_of[j]).id},
                            {"completion", view.completion[j].str()},
                            {"rank", rv.rank[j].str()}});
  }
  return dump(root, indent);
}

std::string solve_report(const Game& g, const std::string& mode,
                         const solvers::SolveResult& r, int indent) {
  Json root;
  root["mode"] = mode;
  root["exists"] = r.exists;
  root["profile"] = r.witness ? assignment_map(g, *r.witness) : Json(nullptr);
  if (r.witness) {
    root["makespan"] = makespan(g, *r.witness).str();
  }
  return dump(root, indent);
}

std::string oracle_report(const Game& g, const oracle::Report& r,
                          bool cost_only, int indent) {
  Json root;
  root["cost_only"] = cost_only;
  root["profile_count"] = r.profile_count;
  root["total_work"] = r.total_work.str();
  root["opt_makespan"] = r.opt_makespan.str();
  root["opt_profile"] = assignment_map(g, r.opt_profile);
  root["ne_count"] = r.ne_profiles.size();
  Json list = Json::array();
  for (std::size_t t = 0; t < r.ne_profiles.size() && t < kNeListCap; ++t) {
    list.push_back(profile_digits(g, r.ne_profiles[t]));
  }
  root["ne_profiles"] = std::move(list);
  root["ne_profiles_truncated"] = r.ne_profiles.size() > kNeListCap;
  root["poa"] = rational_or_null(r.poa);
  root["pos"] = rational_or_null(r.pos);
  return dump(root, indent);
}

std::string brd_report(const Game& g, const dynamics::BrTrace& t,
                       dynamics::DeviatorRule rule, std::uint64_t seed,
                       int indent) {
  Json root;
  root["rule"] = rule_name(rule);
  root["seed"] = seed;
  switch (t.status) {
    case dynamics::BrStatus::reached_ne:
      root["status"] = "reached_ne";
      break;
    case dynamics::BrStatus::entered_cycle:
      root["status"] = "entered_cycle";
      break;
    case dynamics::BrStatus::budget_exhausted:
      root["status"] = "budget_exhausted";
      break;
  }
  root["step_count"] = t.steps.size();
  root["final"] = assignment_map(g, t.final_profile);
  Json trace = Json::array();
  for (std::size_t s = 0; s < t.steps.size() && s < kTraceCap; ++s) {
    const dynamics::BrStep& step = t.steps[s];
    trace.push_back({{"profile", profile_digits(g, step.from)},
                     {"deviator", g.job(step.deviator).id},
                     {"target", g.machine(step.target).id}});
  }
  root["trace"] = std::move(trace);
  root["trace_truncated"] = t.steps.size() > kTraceCap;
  return dump(root, indent);
}

std::string sinks_report(const Game& g, const dynamics::SinkAnalysis& an,
                         dynamics::DeviatorRule rule, const Rational& opt,
                         int indent) {
  Json root;
  root["rule"] = rule_name(rule);
  root["vertices"] = an.graph.vertices.size();
  root["full_space"] = an.graph.full_space;
  root["sink_count"] = an.sinks.size();
  root["sinks"] = Json::array();
  std::optional<Rational> worst;
  bool worst_approx = false;
  for (const dynamics::SinkComponent& sink : an.sinks) {
    Json sj;
    sj["size"] = sink.members.size();
    sj["is_ne"] = sink.is_ne;
    sj["approximate"] = sink.approximate;
    Json profiles = Json::array();
    for (std::size_t t = 0; t < sink.profiles.size() && t < kSinkListCap;
         ++t) {
      profiles.push_back(profile_digits(g, sink.profiles[t]));
    }
    sj["profiles"] = std::move(profiles);
    sj["profiles_truncated"] = sink.profiles.size() > kSinkListCap;
    if (!sink.approximate) {
      Json stat = Json::array();
      for (std::size_t t = 0; t < sink.stationary.size() && t < kSinkListCap;
           ++t) {
        stat.push_back(sink.stationary[t].str());
      }
      sj["stationary"] = std::move(stat);
    } else {
      Json stat = Json::array();
      for (std::size_t t = 0;
           t < sink.stationary_approx.size() && t < kSinkListCap; ++t) {
        stat.push_back(sink.stationary_approx[t]);
      }
      sj["stationary_approx"] = std::move(stat);
    }
    sj["expected_cost"] = sink.expected_cost.str();
    sj["expected_cost_approx"] = sink.expected_cost_approx;
    root["sinks"].push_back(std::move(sj));
    if (sink.approximate) worst_approx = true;
    const Rational ratio = sink.expected_cost / opt;
    if (!worst || *worst < ratio) worst = ratio;
  }
  root["opt_makespan"] = opt.str();
  if (worst) {
    root["posink"] = {{"value", worst->str()}, {"approximate", worst_approx}};
  } else {
    root["posink"] = nullptr;
  }
  return dump(root, indent);
}

std::string reduction_report(const instances::ThreeDMInstance& inst,
                             const instances::NormalizeResult& norm,
                             int indent) {
  Json root;
  root["n"] = inst.n;
  root["triple_count"] = inst.triples.size();
  root["job_count"] = inst.n + 3 * inst.triples.size();
  root["machine_count"] = inst.triples.size();
  Json nj;
  nj["feasible"] = norm.feasible;
  nj["forced"] = Json::array();
  for (std::uint32_t t : norm.forced) nj["forced"].push_back(t + 1);
  nj["kept"] = Json::array();
  for (std::uint32_t t : norm.kept) nj["kept"].push_back(t + 1);
  nj["residual_n"] = norm.instance.n;
  root["normalize"] = std::move(nj);
  return dump(root, indent);
}

std::string graph_dot(const Game& g, const dynamics::ProfileGraph& gr) {
  std::string out = "digraph best_response {\n";
  for (std::size_t v = 0; v < gr.vertices.size(); ++v) {
    const std::string key = profile_digits(g, gr.vertices[v]);
    if (gr.adj[v].empty()) {
      out += "  \"" + key + "\" [peripheries=2];\n";
    }
    for (std::uint32_t w : gr.adj[v]) {
      out += "  \"" + key + "\" -> \"" +
             profile_digits(g, gr.vertices[w]) + "\";\n";
    }
  }
  out += "}\n";
  return out;
}

std::string graph_json(const Game& g, const dynamics::ProfileGraph& gr,
                       int indent) {
  Json root;
  root["mode"] = gr.mode == dynamics::ProfileGraph::Mode::all_player
                     ? "all_player"
                     : "rule_restricted";
  if (gr.rule) {
    root["rule"] = rule_name(*gr.rule);
  }
  root["full_space"] = gr.full_space;
  Json edges = Json::object();
  for (std::size_t v = 0; v < gr.vertices.size(); ++v) {
    Json targets = Json::array();
    for (std::uint32_t w : gr.adj[v]) {
      targets.push_back(profile_digits(g, gr.vertices[w]));
    }
    edges[profile_digits(g, gr.vertices[v])] = std::move(targets);
  }
  root["vertices"] = gr.vertices.size();
  root["edges"] = std::move(edges);
  return dump(root, indent);
}

}  // namespace ranksched::io
