#ifndef RANKSCHED_H
#define RANKSCHED_H

/* C interface of the ranksched engine.
 *
 * Conventions:
 *   - Every call returns a status code from the enum below. On failure the
 *     out parameters are left null and, when `out_error` is non-null, it
 *     receives a malloc'd message; release it with rs_string_free.
 *   - All payloads are JSON strings (UTF-8, exact rationals as "p" / "p/q").
 *     Strings returned through char** are malloc'd and owned by the caller.
 *   - `out_error` may always be passed as NULL to discard the message.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  RS_OK = 0,
  RS_VALIDATION_ERROR = 2, /* malformed input or violated precondition */
  RS_CAP_EXCEEDED = 3,     /* enumeration refused, profile space over cap */
  RS_NO_NE = 4,            /* rs_solve: analysis succeeded, no equilibrium */
  RS_INTERNAL_ERROR = 5    /* a checked invariant failed; always a bug */
};

typedef struct rs_game rs_game;

/* Library version, static storage; do not free. */
const char* rs_version(void);

/* Releases a string returned through any char** out parameter. */
void rs_string_free(char* s);

void rs_game_free(rs_game* game);

/* Builds a game from an instance document:
 * {"jobs":[{"id","length"}], "machines":[{"id","rate"}],
 *  "priorities":{...}, "competition":{...}}. */
int rs_game_parse(const char* instance_json, rs_game** out_game,
                  char** out_error);

/* Builds a named instance family; `params_json` is an object of the
 * family's parameters, e.g. {"m":3} or {"r":"1/2","eps":"1/100"}
 * (NULL or "" means no parameters). */
int rs_game_generate(const char* family, const char* params_json,
                     rs_game** out_game, char** out_error);

/* Builds the scheduling game encoding a three-dimensional matching
 * instance {"n":..,"triples":[[x,y,z],..]} (1-based). By default the
 * instance must be occurrence-normalized (every element in 2 or 3
 * triples); pass a nonzero flag to lift that requirement. */
int rs_game_reduce_3dm(const char* instance_json, int allow_unnormalized,
                       rs_game** out_game, char** out_error);

/* Canonical instance document of the game (round-trips through
 * rs_game_parse). */
int rs_game_serialize(const rs_game* game, char** out_json,
                      char** out_error);

/* Summary object: sizes, ids, structural flags. */
int rs_game_info(const rs_game* game, char** out_json, char** out_error);

/* Stability report for a profile {"assignment":{"<job>":"<machine>"}}:
 * verdict, witness deviation if any, completion times and ranks. */
int rs_check(const rs_game* game, const char* profile_json,
             char** out_report, char** out_error);

/* Equilibrium existence by structural solver or exhaustive search. Modes:
 * inversed | global-unit | p2-unit | q2-unit | global-q2 | oracle.
 * Returns RS_OK with a witness profile, or RS_NO_NE with the report still
 * written (exists=false) when the verdict is that no equilibrium exists. */
int rs_solve(const rs_game* game, const char* mode, char** out_report,
             char** out_error);

/* Exhaustive analysis: equilibrium list, optimum, efficiency ratios.
 * Options object (NULL or "" for defaults):
 * {"cost_only":false,"cap":<count>,"force":false,"threads":<count>}. */
int rs_oracle(const rs_game* game, const char* options_json,
              char** out_report, char** out_error);

/* Best-response walk. Options object (NULL or "" for defaults):
 * {"start":{"<job>":"<machine>"},   first machine for every job if absent
 *  "rule":"priority|lowest-id|highest-rank|uniform",  default "uniform"
 *  "seed":0, "max_steps":<count>}. */
int rs_brd(const rs_game* game, const char* options_json, char** out_report,
           char** out_error);

/* Terminal components of the best-response graph, their long-run
 * distributions and expected costs. Options object (NULL/"" for defaults):
 * {"rule":"...", "start":{...}, "cap":<count>, "force":false}.
 * Without "start" the full profile space is used; with it, the reachable
 * set from that profile. */
int rs_sinks(const rs_game* game, const char* options_json,
             char** out_report, char** out_error);

/* Best-response graph export. Options object (NULL/"" for defaults):
 * {"mode":"all|rule", "rule":"...", "format":"dot|json",
 *  "start":{...}, "cap":<count>, "force":false}. */
int rs_graph(const rs_game* game, const char* options_json,
             char** out_output, char** out_error);

/* Normalization summary of a matching instance: forced and surviving
 * triples, residual size, feasibility verdict. */
int rs_reduction_summary(const char* instance_json, char** out_report,
                         char** out_error);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RANKSCHED_H */
