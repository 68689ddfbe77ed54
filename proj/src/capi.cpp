#include "ranksched.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "json.hpp"
#include "ranksched/dynamics.hpp"
#include "ranksched/errors.hpp"
#include "ranksched/game.hpp"
#include "ranksched/instances.hpp"
#include "ranksched/io.hpp"
#include "ranksched/oracle.hpp"
#include "ranksched/schedule.hpp"
#include "ranksched/solvers.hpp"

struct rs_game {
  ranksched::Game game;
};

namespace {

namespace rs = ranksched;
using Json = nlohmann::ordered_json;

char* dup_cstr(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_error(char** out_error, const std::string& msg) {
  if (out_error != nullptr) *out_error = dup_cstr(msg);
}

template <typename Fn>
int guarded(char** out_error, Fn&& fn) {
  if (out_error != nullptr) *out_error = nullptr;
  try {
    return fn();
  } catch (const rs::Error& e) {
    put_error(out_error, e.what());
    return e.code();
  } catch (const std::exception& e) {
    put_error(out_error, e.what());
    return RS_INTERNAL_ERROR;
  }
}

const rs::Game& game_of(const rs_game* game) {
  if (game == nullptr) throw rs::ValidationError("null game handle");
  return game->game;
}

std::string required_text(const char* s, const char* what) {
  if (s == nullptr) {
    throw rs::ValidationError(std::string("null ") + what);
  }
  return s;
}

template <typename T>
void require_out(T** out, const char* what) {
  if (out == nullptr) {
    throw rs::ValidationError(std::string("null output parameter ") + what);
  }
  *out = nullptr;
}

// Options documents are strict like every other input: unknown fields are
// an error, not a silent no-op.
Json parse_options(const char* text,
                   std::initializer_list<const char*> allowed) {
  std::string s = text == nullptr ? "" : text;
  if (s.empty()) s = "{}";
  Json root;
  try {
    root = Json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw rs::ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw rs::ValidationError("options: expected an object");
  }
  for (const auto& item : root.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) {
      throw rs::ValidationError("options: unknown field \"" + item.key() +
                                "\"");
    }
  }
  return root;
}

std::uint64_t u64_option(const Json& root, const char* key,
                         std::uint64_t fallback) {
  if (!root.contains(key)) return fallback;
  const Json& v = root[key];
  if (!v.is_number_unsigned()) {
    throw rs::ValidationError(std::string("options.") + key +
                              ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool bool_option(const Json& root, const char* key, bool fallback) {
  if (!root.contains(key)) return fallback;
  const Json& v = root[key];
  if (!v.is_boolean()) {
    throw rs::ValidationError(std::string("options.") + key +
                              ": expected a boolean");
  }
  return v.get<bool>();
}

rs::dynamics::DeviatorRule rule_option(const Json& root, const char* key) {
  if (!root.contains(key)) return rs::dynamics::DeviatorRule::uniform_random;
  const Json& v = root[key];
  if (!v.is_string()) {
    throw rs::ValidationError(std::string("options.") + key +
                              ": expected a rule name string");
  }
  return rs::io::parse_rule(v.get<std::string>());
}

// {"<job id>": "<machine id>", ...}, every job covered exactly once.
rs::Profile assignment_option(const Json& v, const std::string& path,
                              const rs::Game& g) {
  if (!v.is_object()) {
    throw rs::ValidationError(path + ": expected an object");
  }
  rs::Profile p;
  p.machine_of.assign(g.n(), UINT32_MAX);
  for (const auto& item : v.items()) {
    const auto j = g.job_index(item.key());
    if (!j) {
      throw rs::ValidationError(path + ": unknown job id \"" + item.key() +
                                "\"");
    }
    if (!item.value().is_string()) {
      throw rs::ValidationError(path + "." + item.key() +
                                ": expected a machine id string");
    }
    const auto i = g.machine_index(item.value().get<std::string>());
    if (!i) {
      throw rs::ValidationError(path + "." + item.key() +
                                ": unknown machine id \"" +
                                item.value().get<std::string>() + "\"");
    }
    p.machine_of[*j] = *i;
  }
  for (std::uint32_t j = 0; j < g.n(); ++j) {
    if (p.machine_of[j] == UINT32_MAX) {
      throw rs::ValidationError(path + ": missing job \"" + g.job(j).id +
                                "\"");
    }
  }
  return p;
}

int finish(char** out, const std::string& text) {
  *out = dup_cstr(text);
  return RS_OK;
}

}  // namespace

extern "C" {

const char* rs_version(void) { return "1.0.0"; }

void rs_string_free(char* s) { std::free(s); }

void rs_game_free(rs_game* game) { delete game; }

int rs_game_parse(const char* instance_json, rs_game** out_game,
                  char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_game, "out_game");
    rs::Game g =
        rs::io::parse_instance(required_text(instance_json, "instance"));
    *out_game = new rs_game{std::move(g)};
    return RS_OK;
  });
}

int rs_game_generate(const char* family, const char* params_json,
                     rs_game** out_game, char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_game, "out_game");
    const auto spec = rs::io::parse_family_spec(
        required_text(family, "family name"),
        params_json == nullptr ? "" : params_json);
    *out_game = new rs_game{rs::instances::generate(spec)};
    return RS_OK;
  });
}

int rs_game_reduce_3dm(const char* instance_json, int allow_unnormalized,
                       rs_game** out_game, char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_game, "out_game");
    const auto inst =
        rs::io::parse_3dm(required_text(instance_json, "instance"));
    *out_game =
        new rs_game{rs::instances::reduce_3dm(inst, allow_unnormalized != 0)};
    return RS_OK;
  });
}

int rs_game_serialize(const rs_game* game, char** out_json,
                      char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_json, "out_json");
    return finish(out_json, rs::io::serialize_instance(game_of(game)));
  });
}

int rs_game_info(const rs_game* game, char** out_json, char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_json, "out_json");
    const rs::Game& g = game_of(game);
    Json root;
    root["n"] = g.n();
    root["m"] = g.m();
    Json jobs = Json::array();
    for (const rs::Job& j : g.jobs()) jobs.push_back(j.id);
    root["jobs"] = std::move(jobs);
    Json machines = Json::array();
    for (const rs::Machine& mc : g.machines()) machines.push_back(mc.id);
    root["machines"] = std::move(machines);
    root["unit_jobs"] = g.unit_jobs();
    root["identical_rates"] = g.identical_rates();
    root["total_work"] = g.total_work().str();
    switch (g.priority_mode()) {
      case rs::PriorityMode::global:
        root["priority_mode"] = "global";
        break;
      case rs::PriorityMode::per_machine:
        root["priority_mode"] = "per_machine";
        break;
      case rs::PriorityMode::set_level:
        root["priority_mode"] = "set_level";
        break;
    }
    switch (g.competition().mode) {
      case rs::CompetitionStructure::Mode::single:
        root["competition_mode"] = "single";
        break;
      case rs::CompetitionStructure::Mode::singletons:
        root["competition_mode"] = "singletons";
        break;
      case rs::CompetitionStructure::Mode::sets:
        root["competition_mode"] = "sets";
        break;
    }
    root["set_count"] = g.set_count();
    return finish(out_json, root.dump(2));
  });
}

int rs_check(const rs_game* game, const char* profile_json,
             char** out_report, char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_report, "out_report");
    const rs::Game& g = game_of(game);
    const rs::Profile p =
        rs::io::parse_profile(required_text(profile_json, "profile"), g);
    const rs::NeResult r = rs::is_ne(g, p);
    return finish(out_report, rs::io::check_report(g, p, r));
  });
}

int rs_solve(const rs_game* game, const char* mode, char** out_report,
             char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_report, "out_report");
    const rs::Game& g = game_of(game);
    const std::string m = required_text(mode, "mode");
    rs::solvers::SolveResult r;
    if (m == "inversed") {
      r = rs::solvers::solve_inversed(g);
    } else if (m == "global-unit") {
      r = rs::solvers::decide_global_unit(g);
    } else if (m == "p2-unit") {
      r = rs::solvers::solve_p2_unit(g);
    } else if (m == "q2-unit") {
      r = rs::solvers::solve_q2_unit(g);
    } else if (m == "global-q2") {
      r = rs::solvers::decide_global_q2(g);
    } else if (m == "oracle") {
      auto ne = rs::oracle::enumerate_ne(g);
      r.exists = !ne.empty();
      if (r.exists) r.witness = std::move(ne.front());
    } else {
      throw rs::ValidationError(
          "unknown solve mode \"" + m +
          "\" (expected inversed, global-unit, p2-unit, q2-unit, global-q2, "
          "or oracle)");
    }
    finish(out_report, rs::io::solve_report(g, m, r));
    return r.exists ? RS_OK : RS_NO_NE;
  });
}

int rs_oracle(const rs_game* game, const char* options_json,
              char** out_report, char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_report, "out_report");
    const Json root = parse_options(options_json,
                                    {"cost_only", "cap", "force", "threads"});
    rs::oracle::Options opts;
    opts.cap = u64_option(root, "cap", opts.cap);
    opts.force = bool_option(root, "force", false);
    const std::uint64_t threads = u64_option(root, "threads", 1);
    opts.threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads == 0 ? 1 : threads, 256));
    const bool cost_only = bool_option(root, "cost_only", false);
    const rs::Game& base = game_of(game);
    const rs::Game g =
        cost_only
            ? base.with_competition(rs::CompetitionStructure::singletons())
            : base;
    const rs::oracle::Report rep = rs::oracle::analyze(g, opts);
    return finish(out_report, rs::io::oracle_report(g, rep, cost_only));
  });
}

int rs_brd(const rs_game* game, const char* options_json, char** out_report,
           char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_report, "out_report");
    const rs::Game& g = game_of(game);
    const Json root = parse_options(options_json,
                                    {"start", "rule", "seed", "max_steps"});
    rs::Profile start;
    if (root.contains("start")) {
      start = assignment_option(root["start"], "options.start", g);
    } else {
      start.machine_of.assign(g.n(), 0);
    }
    const auto rule = rule_option(root, "rule");
    const std::uint64_t seed = u64_option(root, "seed", 0);
    const std::uint64_t max_steps = u64_option(root, "max_steps", 100000);
    const rs::dynamics::BrTrace trace =
        rs::dynamics::brd_run(g, start, rule, max_steps, seed);
    return finish(out_report, rs::io::brd_report(g, trace, rule, seed));
  });
}

int rs_sinks(const rs_game* game, const char* options_json,
             char** out_report, char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_report, "out_report");
    const rs::Game& g = game_of(game);
    const Json root =
        parse_options(options_json, {"rule", "start", "cap", "force"});
    const auto rule = rule_option(root, "rule");
    rs::dynamics::GraphOptions opts;
    opts.cap = u64_option(root, "cap", opts.cap);
    opts.force = bool_option(root, "force", false);
    if (root.contains("start")) {
      opts.starts.push_back(
          assignment_option(root["start"], "options.start", g));
    }
    const rs::dynamics::SinkAnalysis an = rs::dynamics::sink_analysis(g, rule, opts);
    rs::oracle::Options oo;
    oo.cap = opts.cap;
    oo.force = opts.force;
    const rs::Rational opt = rs::oracle::opt_makespan(g, oo).first;
    return finish(out_report, rs::io::sinks_report(g, an, rule, opt));
  });
}

int rs_graph(const rs_game* game, const char* options_json,
             char** out_output, char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_output, "out_output");
    const rs::Game& g = game_of(game);
    const Json root = parse_options(
        options_json, {"mode", "rule", "format", "start", "cap", "force"});
    rs::dynamics::GraphOptions opts;
    if (root.contains("mode")) {
      const Json& v = root["mode"];
      if (!v.is_string() ||
          (v.get<std::string>() != "all" && v.get<std::string>() != "rule")) {
        throw rs::ValidationError(
            "options.mode: expected \"all\" or \"rule\"");
      }
      if (v.get<std::string>() == "rule") {
        opts.mode = rs::dynamics::ProfileGraph::Mode::rule_restricted;
      }
    }
    opts.rule = rule_option(root, "rule");
    opts.cap = u64_option(root, "cap", opts.cap);
    opts.force = bool_option(root, "force", false);
    if (root.contains("start")) {
      opts.starts.push_back(
          assignment_option(root["start"], "options.start", g));
    }
    std::string format = "dot";
    if (root.contains("format")) {
      const Json& v = root["format"];
      if (!v.is_string() ||
          (v.get<std::string>() != "dot" && v.get<std::string>() != "json")) {
        throw rs::ValidationError(
            "options.format: expected \"dot\" or \"json\"");
      }
      format = v.get<std::string>();
    }
    const rs::dynamics::ProfileGraph gr = rs::dynamics::build_profile_graph(g, opts);
    return finish(out_output, format == "dot" ? rs::io::graph_dot(g, gr)
                                              : rs::io::graph_json(g, gr));
  });
}

int rs_reduction_summary(const char* instance_json, char** out_report,
                         char** out_error) {
  return guarded(out_error, [&] {
    require_out(out_report, "out_report");
    const auto inst =
        rs::io::parse_3dm(required_text(instance_json, "instance"));
    const auto norm = rs::instances::normalize_3dm(inst);
    return finish(out_report, rs::io::reduction_report(inst, norm));
  });
}

}  // extern "C"
