#ifndef COTANGENT_H
#define COTANGENT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Commands understood by [`cotangent_run`].
 */
typedef enum CotangentCommand {
  COTANGENT_COMMAND_TMODS = 0,
  COTANGENT_COMMAND_EXAL = 1,
  COTANGENT_COMMAND_LIFT = 2,
  COTANGENT_COMMAND_DEFORM = 3,
  COTANGENT_COMMAND_ORACLE = 4,
} CotangentCommand;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum CotangentStatus {
  COTANGENT_STATUS_OK = 0,
  COTANGENT_STATUS_INVALID = 1,
  COTANGENT_STATUS_BUDGET_EXCEEDED = 2,
  COTANGENT_STATUS_ORACLE_MISMATCH = 3,
  COTANGENT_STATUS_NULL_POINTER = 4,
  COTANGENT_STATUS_PANIC = 5,
} CotangentStatus;

/**
 * A parsed problem file.
 */
typedef struct CotangentProblem CotangentProblem;

/**
 * Parses a JSON problem file.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum CotangentStatus cotangent_problem_parse(const char *json, struct CotangentProblem **out);

/**
 * Releases a handle from [`cotangent_problem_parse`]. Null is ignored.
 *
 * # Safety
 * `problem` must come from [`cotangent_problem_parse`] and not be used afterwards.
 */
void cotangent_problem_free(struct CotangentProblem *problem);

/**
 * Runs every problem accepted by `command` and writes the JSON report to `out`.
 *
 * On [`CotangentStatus::OracleMismatch`] the report is still written.
 *
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum CotangentStatus cotangent_run(const struct CotangentProblem *problem,
                                   enum CotangentCommand command,
                                   bool oracle,
                                   uint64_t seed,
                                   char **out);

/**
 * The message of the last failure on this thread, or null. Owned by the library.
 */
const char *cotangent_last_error(void);

/**
 * Releases a string returned by [`cotangent_run`]. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cotangent_string_free(char *s);

#endif  /* COTANGENT_H */
