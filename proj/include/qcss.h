/* qcss — consciousness-weighted soccer simulation, C89-compatible surface.
 *
 * Every function returns QCSS_OK or an error status; qcss_last_error() gives
 * the thread-local human-readable detail of the most recent failure. Strings
 * and byte buffers returned through out-parameters are owned by the caller
 * and released with qcss_string_free / qcss_bytes_free. Reports are JSON.
 */
#ifndef QCSS_H
#define QCSS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef QCSS_API
#define QCSS_API __attribute__((visibility("default")))
#endif

typedef enum qcss_status {
  QCSS_OK = 0,
  QCSS_ERR_INVALID_ARGUMENT = 1,
  QCSS_ERR_PARSE = 2,
  QCSS_ERR_IO = 3,
  QCSS_ERR_NETWORK = 4,
  QCSS_ERR_STATE = 5,
  QCSS_ERR_DECODE = 6,
  QCSS_ERR_INTERNAL = 7
} qcss_status;

/* A parsed match trace. */
typedef struct qcss_trace qcss_trace;

QCSS_API const char* qcss_version(void);
QCSS_API const char* qcss_last_error(void);

QCSS_API void qcss_string_free(char* s);
QCSS_API void qcss_bytes_free(uint8_t* p);

/* Runs the match described by the JSON config file. trace_path may be NULL
 * (no trace written). overrides_json may be NULL or an object with any of
 * "seed" (integer), "match_ticks" (integer), "virtual_clock" (bool, forces
 * the deterministic in-process transport). On success *stats_json_out holds
 * the match statistics report. */
QCSS_API qcss_status qcss_match_run(const char* config_path, const char* trace_path,
                                    const char* overrides_json, char** stats_json_out);

QCSS_API qcss_status qcss_trace_open(const char* path, qcss_trace** out);
QCSS_API void qcss_trace_close(qcss_trace* trace);

/* Re-derives every tick of the trace on the virtual clock and compares
 * winners, distributions and will values; the report says where (if
 * anywhere) the recomputation diverged. */
QCSS_API qcss_status qcss_trace_replay(const qcss_trace* trace, char** report_json_out);

QCSS_API qcss_status qcss_trace_stats(const qcss_trace* trace, char** stats_json_out);

/* Home-advantage study. overrides_json may be NULL or an object with any of
 * "repetitions", "supporters", "ticks", "seed". */
QCSS_API qcss_status qcss_experiment_home_advantage(const char* config_path,
                                                    const char* overrides_json,
                                                    char** report_json_out);

/* In-process swarm scale probe: per-tick scoring/selection timings. */
QCSS_API qcss_status qcss_bench_swarm(uint32_t supporters, uint32_t ticks,
                                      char** report_json_out);

/* Wire codec for foreign agents: bytes to a JSON description and back.
 * The JSON form is {"type": "join"|"join_ack"|"reality"|"proposal"|
 * "match_end"|"error", ...fields...}. */
QCSS_API qcss_status qcss_message_decode(const uint8_t* data, size_t size,
                                         char** message_json_out);
QCSS_API qcss_status qcss_message_encode(const char* message_json, uint8_t** data_out,
                                         size_t* size_out);

/* Joins a running scheduler and plays the match to its end. params_json:
 *   {"host": "127.0.0.1", "port": 7777, "role": "player"|"supporter",
 *    "team": "home"|"guest", "shirt": 0..11, "behavior": "reference"|"echo"|"bias",
 *    "archetype": "attacker"|"midfielder"|"defender", "bias": 1.0,
 *    "max_speed": 0.8, "deadline_margin_ms": 10, "seed": 0}
 * Returns once the match ends or the connection is lost; the summary
 * reports ticks seen, proposals sent and how the session ended. */
QCSS_API qcss_status qcss_agent_run(const char* params_json, char** summary_json_out);

#ifdef __cplusplus
}
#endif

#endif /* QCSS_H */
