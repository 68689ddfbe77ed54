// Command-line shell over the C API. Machine output is the API's JSON,
// untouched; text output is rendered here from that same JSON.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ranksched.h"

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
  int code;
  std::string message;
};

std::string take(char* s) {
  std::string out = s == nullptr ? std::string() : s;
  rs_string_free(s);
  return out;
}

[[noreturn]] void fail(int status, char* err) {
  throw Failure{status == 0 ? 2 : status, take(err)};
}

struct GameHandle {
  rs_game* ptr = nullptr;
  GameHandle() = default;
  GameHandle(const GameHandle&) = delete;
  GameHandle& operator=(const GameHandle&) = delete;
  ~GameHandle() { rs_game_free(ptr); }
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{2, "cannot open " + path};
    ss << in.rdbuf();
  }
  return ss.str();
}

void load_game(GameHandle& g, const std::string& file) {
  const std::string text = read_input(file);
  char* err = nullptr;
  const int st = rs_game_parse(text.c_str(), &g.ptr, &err);
  if (st != RS_OK) fail(st, err);
}

void write_output(const std::string& path, const std::string& text) {
  const bool needs_newline = text.empty() || text.back() != '\n';
  if (path.empty() || path == "-") {
    std::cout << text;
    if (needs_newline) std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{2, "cannot open " + path};
  out << text;
  if (needs_newline) out << '\n';
}

std::string decimal_of(const std::string& rat) {
  const auto slash = rat.find('/');
  const long double p = std::strtold(rat.c_str(), nullptr);
  const long double q = slash == std::string::npos
                            ? 1.0L
                            : std::strtold(rat.c_str() + slash + 1, nullptr);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6Lg", q == 0 ? p : p / q);
  return buf;
}

// Exact value, optionally followed by a 6-significant-digit reading.
std::string rat_str(const Json& v, bool dec) {
  if (v.is_null()) return "undefined";
  std::string s = v.get<std::string>();
  if (dec) s += " (" + decimal_of(s) + ")";
  return s;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void print_table(std::ostream& os, const Table& t) {
  std::vector<std::size_t> w(t.header.size());
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    w[c] = t.header[c].size();
  }
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      w[c] = std::max(w[c], row[c].size());
    }
  }
  const auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c];
      if (c + 1 < row.size()) os << std::string(w[c] - row[c].size() + 2, ' ');
    }
    os << '\n';
  };
  line(t.header);
  std::size_t total = 2 * (w.size() - 1);
  for (const std::size_t c : w) total += c;
  os << std::string(total, '-') << '\n';
  for (const auto& row : t.rows) line(row);
}

void print_assignment(std::ostream& os, const Json& map) {
  Table t;
  t.header = {"job", "machine"};
  for (const auto& item : map.items()) {
    t.rows.push_back({item.key(), item.value().get<std::string>()});
  }
  print_table(os, t);
}

Json parse_report(const std::string& text) {
  // The C API produced this string; a parse failure here is a bug.
  return Json::parse(text);
}

// The inner {"job": "machine"} map of a profile document.
Json start_map(const std::string& file) {
  Json doc;
  try {
    doc = Json::parse(read_input(file));
  } catch (const nlohmann::json::exception& e) {
    throw Failure{2, std::string("invalid JSON: ") + e.what()};
  }
  if (!doc.is_object() || !doc.contains("assignment") ||
      !doc["assignment"].is_object()) {
    throw Failure{2, "profile: expected {\"assignment\": {...}}"};
  }
  return doc["assignment"];
}

// ---- subcommand runners ------------------------------------------------

int run_check(const std::string& file, const std::string& profile_file,
              const std::string& format, bool dec) {
  GameHandle g;
  load_game(g, file);
  const std::string profile = read_input(profile_file);
  char* out = nullptr;
  char* err = nullptr;
  const int st = rs_check(g.ptr, profile.c_str(), &out, &err);
  if (st != RS_OK) fail(st, err);
  const std::string report = take(out);
  if (format == "json") {
    std::cout << report << '\n';
    return 0;
  }
  const Json r = parse_report(report);
  std::cout << "stable: " << (r["stable"].get<bool>() ? "yes" : "no") << '\n';
  if (!r["witness"].is_null()) {
    std::cout << "witness: " << r["witness"]["job"].get<std::string>()
              << " -> " << r["witness"]["target"].get<std::string>() << '\n';
  }
  std::cout << "makespan: " << rat_str(r["makespan"], dec) << '\n';
  Table t;
  t.header = {"job", "machine", "completion", "rank"};
  for (const auto& row : r["jobs"]) {
    t.rows.push_back({row["id"].get<std::string>(),
                      row["machine"].get<std::string>(),
                      rat_str(row["completion"], dec),
                      rat_str(row["rank"], dec)});
  }
  print_table(std::cout, t);
  return 0;
}

int run_solve(const std::string& file, const std::string& mode,
              const std::string& format, bool dec, bool emit_profile) {
  GameHandle g;
  load_game(g, file);
  char* out = nullptr;
  char* err = nullptr;
  const int st = rs_solve(g.ptr, mode.c_str(), &out, &err);
  if (st != RS_OK && st != RS_NO_NE) fail(st, err);
  const std::string report = take(out);
  const Json r = parse_report(report);
  if (emit_profile) {
    if (!r["profile"].is_null()) {
      const Json doc = {{"assignment", r["profile"]}};
      std::cout << doc.dump(2) << '\n';
    }
    return st == RS_NO_NE ? 4 : 0;
  }
  if (format == "json") {
    std::cout << report << '\n';
  } else {
    std::cout << "mode: " << r["mode"].get<std::string>() << '\n';
    std::cout << "equilibrium: " << (r["exists"].get<bool>() ? "exists" : "none")
              << '\n';
    if (!r["profile"].is_null()) {
      std::cout << "makespan: " << rat_str(r["makespan"], dec) << '\n';
      print_assignment(std::cout, r["profile"]);
    }
  }
  return st == RS_NO_NE ? 4 : 0;
}

int run_poa(const std::string& file, bool cost_only, std::uint64_t cap,
            bool cap_set, bool force, unsigned threads,
            const std::string& format, bool dec) {
  GameHandle g;
  load_game(g, file);
  Json opts = Json::object();
  if (cost_only) opts["cost_only"] = true;
  if (cap_set) opts["cap"] = cap;
  if (force) opts["force"] = true;
  if (threads > 1) opts["threads"] = threads;
  char* out = nullptr;
  char* err = nullptr;
  const int st = rs_oracle(g.ptr, opts.dump().c_str(), &out, &err);
  if (st != RS_OK) fail(st, err);
  const std::string report = take(out);
  const Json r = parse_report(report);
  const bool no_ne = r["ne_count"].get<std::uint64_t>() == 0;
  if (format == "json") {
    std::cout << report << '\n';
  } else {
    std::cout << "cost model: "
              << (r["cost_only"].get<bool>() ? "completion time only"
                                             : "rank-based")
              << '\n';
    std::cout << "profiles: " << r["profile_count"].get<std::uint64_t>()
              << '\n';
    std::cout << "total work: " << rat_str(r["total_work"], dec) << '\n';
    std::cout << "optimum makespan: " << rat_str(r["opt_makespan"], dec)
              << '\n';
    std::cout << "equilibria: " << r["ne_count"].get<std::uint64_t>() << '\n';
    std::cout << "poa: " << rat_str(r["poa"], dec) << '\n';
    std::cout << "pos: " << rat_str(r["pos"], dec) << '\n';
    std::cout << "optimal assignment:\n";
    print_assignment(std::cout, r["opt_profile"]);
  }
  return no_ne ? 4 : 0;
}

int run_brd(const std::string& file, const std::string& profile_file,
            const std::string& rule, std::uint64_t seed,
            std::uint64_t max_steps, const std::string& format, bool dec) {
  GameHandle g;
  load_game(g, file);
  Json opts = Json::object();
  if (!profile_file.empty()) opts["start"] = start_map(profile_file);
  opts["rule"] = rule;
  opts["seed"] = seed;
  opts["max_steps"] = max_steps;
  char* out = nullptr;
  char* err = nullptr;
  const int st = rs_brd(g.ptr, opts.dump().c_str(), &out, &err);
  if (st != RS_OK) fail(st, err);
  const std::string report = take(out);
  if (format == "json") {
    std::cout << report << '\n';
    return 0;
  }
  (void)dec;
  const Json r = parse_report(report);
  std::cout << "rule: " << r["rule"].get<std::string>() << '\n';
  std::cout << "seed: " << r["seed"].get<std::uint64_t>() << '\n';
  const std::string status = r["status"].get<std::string>();
  const std::uint64_t steps = r["step_count"].get<std::uint64_t>();
  if (status == "reached_ne") {
    std::cout << "status: reached an equilibrium after " << steps
              << " step(s)\n";
  } else if (status == "entered_cycle") {
    std::cout << "status: revisited a profile after " << steps
              << " step(s) (cycle)\n";
  } else {
    std::cout << "status: step budget exhausted after " << steps
              << " step(s)\n";
  }
  std::cout << "final assignment:\n";
  print_assignment(std::cout, r["final"]);
  return 0;
}

int run_sinks(const std::string& file, const std::string& profile_file,
              const std::string& rule, std::uint64_t cap, bool cap_set,
              bool force, const std::string& format, bool dec) {
  GameHandle g;
  load_game(g, file);
  Json opts = Json::object();
  opts["rule"] = rule;
  if (!profile_file.empty()) opts["start"] = start_map(profile_file);
  if (cap_set) opts["cap"] = cap;
  if (force) opts["force"] = true;
  char* out = nullptr;
  char* err = nullptr;
  const int st = rs_sinks(g.ptr, opts.dump().c_str(), &out, &err);
  if (st != RS_OK) fail(st, err);
  const std::string report = take(out);
  if (format == "json") {
    std::cout << report << '\n';
    return 0;
  }
  const Json r = parse_report(report);
  std::cout << "rule: " << r["rule"].get<std::string>() << '\n';
  std::cout << "vertices: " << r["vertices"].get<std::uint64_t>()
            << (r["full_space"].get<bool>() ? " (full profile space)"
                                            : " (reachable from start)")
            << '\n';
  std::cout << "optimum makespan: " << rat_str(r["opt_makespan"], dec)
            << '\n';
  std::cout << "sinks: " << r["sink_count"].get<std::uint64_t>() << '\n';
  std::size_t index = 1;
  for (const auto& sink : r["sinks"]) {
    std::cout << "sink " << index++ << ": size "
              << sink["size"].get<std::uint64_t>();
    if (sink["approximate"].get<bool>()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6g",
                    sink["expected_cost_approx"].get<double>());
      std::cout << ", expected cost ~" << buf << " (approximate)";
    } else {
      std::cout << ", expected cost "
                << rat_str(sink["expected_cost"], dec);
    }
    if (sink["is_ne"].get<bool>()) std::cout << " (equilibrium)";
    std::cout << '\n';
    std::cout << "  states:";
    std::size_t shown = 0;
    for (const auto& p : sink["profiles"]) {
      if (shown == 8) {
        std::cout << " ...";
        break;
      }
      std::cout << ' ' << p.get<std::string>();
      ++shown;
    }
    std::cout << '\n';
  }
  if (r["posink"].is_null()) {
    std::cout << "posink: undefined\n";
  } else {
    std::cout << "posink: " << rat_str(r["posink"]["value"], dec)
              << (r["posink"]["approximate"].get<bool>() ? " (approximate)"
                                                         : "")
              << '\n';
  }
  return 0;
}

int run_gen(const std::string& family, const Json& params,
            const std::string& output) {
  GameHandle g;
  char* err = nullptr;
  int st = rs_game_generate(family.c_str(), params.dump().c_str(), &g.ptr,
                            &err);
  if (st != RS_OK) fail(st, err);
  char* out = nullptr;
  st = rs_game_serialize(g.ptr, &out, &err);
  if (st != RS_OK) fail(st, err);
  write_output(output, take(out));
  return 0;
}

int run_reduce3dm(const std::string& file, bool allow_unnormalized,
                  bool summary, const std::string& format,
                  const std::string& output) {
  const std::string text = read_input(file);
  char* err = nullptr;
  if (summary) {
    char* out = nullptr;
    const int st = rs_reduction_summary(text.c_str(), &out, &err);
    if (st != RS_OK) fail(st, err);
    const std::string report = take(out);
    if (format == "json") {
      write_output(output, report);
      return 0;
    }
    const Json r = parse_report(report);
    std::ostringstream os;
    os << "elements per axis: " << r["n"].get<std::uint64_t>() << '\n';
    os << "triples: " << r["triple_count"].get<std::uint64_t>() << '\n';
    os << "game size: " << r["job_count"].get<std::uint64_t>() << " jobs on "
       << r["machine_count"].get<std::uint64_t>() << " machines\n";
    const Json& nj = r["normalize"];
    os << "normalization: "
       << (nj["feasible"].get<bool>() ? "feasible" : "infeasible") << '\n';
    const auto list = [&os](const char* label, const Json& arr) {
      os << label << ':';
      for (const auto& v : arr) os << ' ' << v.get<std::uint64_t>();
      if (arr.empty()) os << " (none)";
      os << '\n';
    };
    list("forced triples", nj["forced"]);
    list("surviving triples", nj["kept"]);
    os << "residual elements per axis: "
       << nj["residual_n"].get<std::uint64_t>() << '\n';
    write_output(output, os.str());
    return 0;
  }
  GameHandle g;
  int st = rs_game_reduce_3dm(text.c_str(), allow_unnormalized ? 1 : 0,
                              &g.ptr, &err);
  if (st != RS_OK) fail(st, err);
  char* out = nullptr;
  st = rs_game_serialize(g.ptr, &out, &err);
  if (st != RS_OK) fail(st, err);
  write_output(output, take(out));
  return 0;
}

int run_graph(const std::string& file, const std::string& mode,
              const std::string& rule, const std::string& profile_file,
              const std::string& format, std::uint64_t cap, bool cap_set,
              bool force, const std::string& output) {
  GameHandle g;
  load_game(g, file);
  Json opts = Json::object();
  opts["mode"] = mode;
  if (mode == "rule") opts["rule"] = rule;
  opts["format"] = format;
  if (!profile_file.empty()) opts["start"] = start_map(profile_file);
  if (cap_set) opts["cap"] = cap;
  if (force) opts["force"] = true;
  char* out = nullptr;
  char* err = nullptr;
  const int st = rs_graph(g.ptr, opts.dump().c_str(), &out, &err);
  if (st != RS_OK) fail(st, err);
  write_output(output, take(out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact analysis of scheduling games with rank-based payoffs"};
  app.require_subcommand(1);

  const std::string format_doc = "output format (default text)";
  const std::string file_doc = "instance file (stdin when absent)";
  const std::string rule_doc =
      "deviator rule: priority | lowest-id | highest-rank | uniform";

  std::string file;
  std::string profile_file;
  std::string format = "text";
  std::string output;
  bool decimal = false;

  auto* check = app.add_subcommand("check", "test a profile for stability");
  check->add_option("--file,-f", file, file_doc);
  check->add_option("--profile,-p", profile_file, "profile file")->required();
  check->add_option("--format", format, format_doc)
      ->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--decimal", decimal, "add decimal readings");

  std::string mode = "oracle";
  bool emit_profile = false;
  auto* solve = app.add_subcommand(
      "solve", "decide equilibrium existence, with a witness");
  solve->add_option("--file,-f", file, file_doc);
  solve->add_option("--mode", mode,
                    "inversed | global-unit | p2-unit | q2-unit | global-q2 "
                    "| oracle (default)");
  solve->add_option("--format", format, format_doc)
      ->check(CLI::IsMember({"text", "json"}));
  solve->add_flag("--decimal", decimal, "add decimal readings");
  solve->add_flag("--emit-profile", emit_profile,
                  "print only the witness profile document");

  bool cost_only = false;
  bool force = false;
  std::uint64_t cap = 0;
  unsigned threads = 1;
  auto* poa = app.add_subcommand(
      "poa", "exhaustive equilibrium analysis and efficiency ratios");
  poa->add_option("--file,-f", file, file_doc);
  poa->add_flag("--cost-only", cost_only,
                "classical payoffs: completion time only");
  auto* poa_cap = poa->add_option("--cap", cap, "profile enumeration cap");
  poa->add_flag("--force", force, "enumerate past the cap");
  poa->add_option("--threads", threads, "worker threads");
  poa->add_option("--format", format, format_doc)
      ->check(CLI::IsMember({"text", "json"}));
  poa->add_flag("--decimal", decimal, "add decimal readings");

  std::string rule = "uniform";
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 100000;
  auto* brd = app.add_subcommand("brd", "run best-response dynamics");
  brd->add_option("--file,-f", file, file_doc);
  brd->add_option("--profile,-p", profile_file,
                  "start profile (default: all jobs on the first machine)");
  brd->add_option("--rule", rule, rule_doc);
  brd->add_option("--seed", seed, "random seed");
  brd->add_option("--max-steps", max_steps, "step budget");
  brd->add_option("--format", format, format_doc)
      ->check(CLI::IsMember({"text", "json"}));
  brd->add_flag("--decimal", decimal, "add decimal readings");

  auto* sinks = app.add_subcommand(
      "sinks", "terminal components of the best-response chain");
  sinks->add_option("--file,-f", file, file_doc);
  sinks->add_option("--profile,-p", profile_file,
                    "analyze the set reachable from this profile");
  sinks->add_option("--rule", rule, rule_doc);
  auto* sinks_cap =
      sinks->add_option("--cap", cap, "profile enumeration cap");
  sinks->add_flag("--force", force, "enumerate past the cap");
  sinks->add_option("--format", format, format_doc)
      ->check(CLI::IsMember({"text", "json"}));
  sinks->add_flag("--decimal", decimal, "add decimal readings");

  std::string family;
  std::uint64_t param_m = 0;
  std::uint64_t param_k = 0;
  std::string param_r;
  std::string param_eps;
  auto* gen = app.add_subcommand("gen", "generate a named instance family");
  gen->add_option("--family", family,
                  "invpol-poa | identical-pos | q2-small-r | q2-large-r | "
                  "g1 | g2 | g3 | g4 | g5 | sink-gprime")
      ->required();
  auto* gen_m = gen->add_option("--m", param_m, "machine count");
  auto* gen_k = gen->add_option("--k", param_k, "size parameter");
  auto* gen_r = gen->add_option("--r", param_r, "speed ratio, e.g. 1/2");
  auto* gen_eps = gen->add_option("--eps", param_eps, "perturbation, e.g. 1/100");
  gen->add_option("--output,-o", output, "write to file (default stdout)");

  bool allow_unnormalized = false;
  bool summary = false;
  auto* reduce = app.add_subcommand(
      "reduce3dm", "encode a three-dimensional matching instance as a game");
  reduce->add_option("--file,-f", file, "matching instance file (stdin when absent)");
  reduce->add_flag("--allow-unnormalized", allow_unnormalized,
                   "accept occurrence counts outside {2,3}");
  reduce->add_flag("--summary", summary,
                   "print the normalization summary instead of the game");
  reduce->add_option("--format", format, format_doc)
      ->check(CLI::IsMember({"text", "json"}));
  reduce->add_option("--output,-o", output, "write to file (default stdout)");

  std::string graph_mode = "all";
  std::string graph_format = "dot";
  auto* graph = app.add_subcommand(
      "graph", "export the best-response graph as DOT or JSON");
  graph->add_option("--file,-f", file, file_doc);
  graph->add_option("--mode", graph_mode, "all | rule")
      ->check(CLI::IsMember({"all", "rule"}));
  graph->add_option("--rule", rule, rule_doc);
  graph->add_option("--profile,-p", profile_file,
                    "export the set reachable from this profile");
  graph->add_option("--format", graph_format, "dot | json")
      ->check(CLI::IsMember({"dot", "json"}));
  auto* graph_cap =
      graph->add_option("--cap", cap, "profile enumeration cap");
  graph->add_flag("--force", force, "enumerate past the cap");
  graph->add_option("--output,-o", output, "write to file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(file, profile_file, format, decimal);
    if (*solve) return run_solve(file, mode, format, decimal, emit_profile);
    if (*poa) {
      return run_poa(file, cost_only, cap, poa_cap->count() > 0, force,
                     threads, format, decimal);
    }
    if (*brd) {
      return run_brd(file, profile_file, rule, seed, max_steps, format,
                     decimal);
    }
    if (*sinks) {
      return run_sinks(file, profile_file, rule, cap, sinks_cap->count() > 0,
                       force, format, decimal);
    }
    if (*gen) {
      Json params = Json::object();
      if (gen_m->count() > 0) params["m"] = param_m;
      if (gen_k->count() > 0) params["k"] = param_k;
      if (gen_r->count() > 0) params["r"] = param_r;
      if (gen_eps->count() > 0) params["eps"] = param_eps;
      return run_gen(family, params, output);
    }
    if (*reduce) {
      return run_reduce3dm(file, allow_unnormalized, summary, format, output);
    }
    if (*graph) {
      return run_graph(file, graph_mode, rule, profile_file, graph_format,
                       cap, graph_cap->count() > 0, force, output);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return 2;
}
