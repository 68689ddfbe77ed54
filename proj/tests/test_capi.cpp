#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Exercises the shared library exactly as an embedding application would:
// through ranksched.h only, with every payload a JSON string.

#include <string>

#include "json.hpp"
#include "ranksched.h"

using nlohmann::json;

namespace {

constexpr const char* kThreeUnits = R"({
  "jobs": [
    {"id": "a", "length": 1},
    {"id": "b", "length": 1},
    {"id": "c", "length": 1}
  ],
  "machines": [{"id": "M1", "rate": 1}, {"id": "M2", "rate": 1}],
  "priorities": {"mode": "global", "list": ["a", "b", "c"]}
})";

constexpr const char* kChase = R"({
  "jobs": [{"id": "a", "length": 1}, {"id": "b", "length": 1}],
  "machines": [{"id": "M1", "rate": 1}, {"id": "M2", "rate": 1}],
  "priorities": {"mode": "global", "list": ["a", "b"]}
})";

constexpr const char* kFig4 =
    R"({"n": 3, "triples": [[1,1,1],[1,2,3],[2,2,1],[2,1,2],[2,3,1],
                            [3,3,3],[3,1,1]]})";

struct GameHandle {
  rs_game* g = nullptr;
  ~GameHandle() { rs_game_free(g); }
};

struct Str {
  char* s = nullptr;
  ~Str() { rs_string_free(s); }
  std::string value() const { return s ? std::string(s) : std::string(); }
};

rs_game* must_parse(const char* text) {
  rs_game* g = nullptr;
  Str err;
  REQUIRE(rs_game_parse(text, &g, &err.s) == RS_OK);
  REQUIRE(g != nullptr);
  return g;
}

}  // namespace

TEST_CASE("the library reports its version from static storage") {
  CHECK(std::string(rs_version()) == "1.0.0");
  CHECK(rs_version() == rs_version());  // same pointer, not to be freed
}

TEST_CASE("parse and serialize are inverse on the wire") {
  GameHandle h{must_parse(kThreeUnits)};
  Str first;
  REQUIRE(rs_game_serialize(h.g, &first.s, nullptr) == RS_OK);

  GameHandle h2;
  REQUIRE(rs_game_parse(first.s, &h2.g, nullptr) == RS_OK);
  Str second;
  REQUIRE(rs_game_serialize(h2.g, &second.s, nullptr) == RS_OK);
  CHECK(first.value() == second.value());
}

TEST_CASE("validation failures carry the field path and leave outputs null") {
  rs_game* g = reinterpret_cast<rs_game*>(1);
  Str err;
  int rc = rs_game_parse(R"({"jobs": [{"id": "a", "length": 1}],
                             "machines": [], "priorities": {"mode": "bogus"}})",
                         &g, &err.s);
  CHECK(rc == RS_VALIDATION_ERROR);
  CHECK(g == nullptr);  // reset on failure
  CHECK(err.value() ==
        "priorities.mode: expected \"global\", \"per_machine\", or "
        "\"set_level\"");

  Str err2;
  CHECK(rs_game_parse(nullptr, &g, &err2.s) == RS_VALIDATION_ERROR);
  CHECK(err2.value() == "null instance");
}

TEST_CASE("null out parameters are rejected, null frees are ignored") {
  GameHandle h{must_parse(kThreeUnits)};
  Str err;
  CHECK(rs_game_serialize(h.g, nullptr, &err.s) == RS_VALIDATION_ERROR);
  CHECK(err.value() == "null output parameter out_json");

  Str err2;
  CHECK(rs_check(nullptr, "{}", &err2.s, nullptr) == RS_VALIDATION_ERROR);

  rs_game_free(nullptr);
  rs_string_free(nullptr);
}

TEST_CASE("game info summarizes structure") {
  GameHandle h;
  Str err;
  REQUIRE(rs_game_generate("sink-gprime", R"({"r": "1/2"})", &h.g, &err.s) ==
          RS_OK);
  Str info;
  REQUIRE(rs_game_info(h.g, &info.s, nullptr) == RS_OK);
  json j = json::parse(info.value());
  CHECK(j["n"] == 2);
  CHECK(j["m"] == 2);
  CHECK(j["unit_jobs"] == false);
  CHECK(j["identical_rates"] == false);
  CHECK(j["total_work"] == "3/2");
  CHECK(j["priority_mode"] == "global");
  CHECK(j["competition_mode"] == "single");
  CHECK(j["set_count"] == 1);
}

TEST_CASE("solve distinguishes no-equilibrium from failure") {
  GameHandle chase{must_parse(kChase)};
  Str rep;
  Str err;
  int rc = rs_solve(chase.g, "oracle", &rep.s, &err.s);
  CHECK(rc == RS_NO_NE);
  json j = json::parse(rep.value());  // report still written
  CHECK(j["exists"] == false);
  CHECK(j["profile"].is_null());

  GameHandle three{must_parse(kThreeUnits)};
  Str rep2;
  REQUIRE(rs_solve(three.g, "oracle", &rep2.s, nullptr) == RS_OK);
  json j2 = json::parse(rep2.value());
  CHECK(j2["exists"] == true);
  CHECK(j2["profile"].is_object());
  CHECK(j2["makespan"] == "2");

  Str err3;
  CHECK(rs_solve(three.g, "newton", &rep2.s, &err3.s) == RS_VALIDATION_ERROR);
  CHECK(err3.value() ==
        "unknown solve mode \"newton\" (expected inversed, global-unit, "
        "p2-unit, q2-unit, global-q2, or oracle)");
}

TEST_CASE("the oracle honors its enumeration cap") {
  GameHandle h{must_parse(kThreeUnits)};  // 2^3 = 8 profiles
  Str rep;
  Str err;
  int rc = rs_oracle(h.g, R"({"cap": 4})", &rep.s, &err.s);
  CHECK(rc == RS_CAP_EXCEEDED);
  CHECK(err.value().find("8 profiles") != std::string::npos);

  Str rep2;
  REQUIRE(rs_oracle(h.g, R"({"cap": 4, "force": true})", &rep2.s, nullptr) ==
          RS_OK);
  json j = json::parse(rep2.value());
  CHECK(j["profile_count"] == 8);
  CHECK(j["ne_count"] == 2);
  CHECK(j["poa"] == "1");

  Str err2;
  CHECK(rs_oracle(h.g, R"({"caps": 4})", &rep2.s, &err2.s) ==
        RS_VALIDATION_ERROR);
  CHECK(err2.value() == "options: unknown field \"caps\"");
}

TEST_CASE("cost-only analysis drops the rank layer") {
  GameHandle h;
  REQUIRE(rs_game_generate("g3", R"({"r": "1/2", "eps": "1/100"})", &h.g,
                           nullptr) == RS_OK);
  Str with_comp;
  REQUIRE(rs_oracle(h.g, nullptr, &with_comp.s, nullptr) == RS_OK);
  CHECK(json::parse(with_comp.value())["poa"] == "1");

  Str cost_only;
  REQUIRE(rs_oracle(h.g, R"({"cost_only": true})", &cost_only.s, nullptr) ==
          RS_OK);
  json j = json::parse(cost_only.value());
  CHECK(j["cost_only"] == true);
  CHECK(j["pos"] == "299/200");
}

TEST_CASE("walks are reproducible for a fixed seed") {
  GameHandle h{must_parse(kThreeUnits)};
  const char* opts = R"({"rule": "uniform", "seed": 99, "max_steps": 50})";
  Str a, b;
  REQUIRE(rs_brd(h.g, opts, &a.s, nullptr) == RS_OK);
  REQUIRE(rs_brd(h.g, opts, &b.s, nullptr) == RS_OK);
  CHECK(a.value() == b.value());
  json j = json::parse(a.value());
  CHECK(j["rule"] == "uniform");
  CHECK(j["seed"] == 99);
  CHECK(j["status"] == "reached_ne");
}

TEST_CASE("sink analysis reports long-run costs exactly") {
  GameHandle h;
  REQUIRE(rs_game_generate("sink-gprime", R"({"r": "1/2"})", &h.g, nullptr) ==
          RS_OK);
  Str rep;
  REQUIRE(rs_sinks(h.g, R"({"rule": "priority"})", &rep.s, nullptr) == RS_OK);
  json j = json::parse(rep.value());
  CHECK(j["sink_count"] == 1);
  CHECK(j["sinks"][0]["size"] == 4);
  CHECK(j["sinks"][0]["is_ne"] == false);
  CHECK(j["sinks"][0]["expected_cost"] == "15/8");
  CHECK(j["posink"]["value"] == "15/8");
  CHECK(j["posink"]["approximate"] == false);
}

TEST_CASE("graphs export in both formats") {
  GameHandle h{must_parse(kChase)};
  Str dot;
  REQUIRE(rs_graph(h.g, nullptr, &dot.s, nullptr) == RS_OK);
  CHECK(dot.value().rfind("digraph best_response", 0) == 0);

  Str out;
  REQUIRE(rs_graph(h.g, R"({"format": "json", "mode": "all"})", &out.s,
                   nullptr) == RS_OK);
  json j = json::parse(out.value());
  CHECK(j["mode"] == "all_player");
  CHECK(j["vertices"] == 4);

  Str err;
  CHECK(rs_graph(h.g, R"({"format": "svg"})", &out.s, &err.s) ==
        RS_VALIDATION_ERROR);
  CHECK(err.value() == "options.format: expected \"dot\" or \"json\"");
}

TEST_CASE("matching games build only when occurrences are normal") {
  GameHandle strict;
  Str err;
  CHECK(rs_game_reduce_3dm(kFig4, 0, &strict.g, &err.s) ==
        RS_VALIDATION_ERROR);
  CHECK(err.value().find("element z1 occurs 4 time(s)") != std::string::npos);

  GameHandle forced;
  REQUIRE(rs_game_reduce_3dm(kFig4, 1, &forced.g, nullptr) == RS_OK);
  Str info;
  REQUIRE(rs_game_info(forced.g, &info.s, nullptr) == RS_OK);
  json j = json::parse(info.value());
  CHECK(j["n"] == 24);
  CHECK(j["m"] == 7);

  Str rep;
  REQUIRE(rs_reduction_summary(kFig4, &rep.s, nullptr) == RS_OK);
  json r = json::parse(rep.value());
  CHECK(r["normalize"]["feasible"] == false);
  CHECK(r["normalize"]["forced"] == json::array({2, 4}));
}
