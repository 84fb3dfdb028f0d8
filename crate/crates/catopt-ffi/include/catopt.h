/* C interface to the catopt solver. */

#ifndef CATOPT_H
#define CATOPT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Why a call failed, or `Ok` when it did not.
 */
typedef enum CatoptError {
  CATOPT_ERROR_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  CATOPT_ERROR_NULL_ARGUMENT,
  /**
   * A string argument was not valid UTF-8.
   */
  CATOPT_ERROR_INVALID_UTF8,
  /**
   * The problem file could not be read or parsed; the error message
   * carries the details.
   */
  CATOPT_ERROR_LOAD_FAILED,
  /**
   * An options field was out of range.
   */
  CATOPT_ERROR_INVALID_OPTIONS,
  /**
   * The solver panicked; this indicates a bug in the library.
   */
  CATOPT_ERROR_INTERNAL,
} CatoptError;

/**
 * How a finished solve ended.
 */
typedef enum CatoptStatus {
  /**
   * The search space is exhausted and the incumbent is optimal to
   * within the configured tolerance.
   */
  CATOPT_STATUS_OPTIMAL = 0,
  /**
   * The search space is exhausted and contains no feasible point.
   */
  CATOPT_STATUS_INFEASIBLE,
  /**
   * The node limit was reached first; the incumbent and lower bound
   * are the best found so far.
   */
  CATOPT_STATUS_LIMIT,
} CatoptStatus;

/**
 * A loaded problem. Create with `catopt_problem_load`, release with
 * `catopt_problem_free`.
 */
typedef struct CatoptProblem CatoptProblem;

/**
 * The outcome of a solve. Release with `catopt_result_free`.
 */
typedef struct CatoptResult CatoptResult;

/**
 * Solver configuration. Obtain defaults from `catopt_options_default`
 * and adjust fields as needed.
 */
typedef struct CatoptOptions {
  /**
   * Required improvement margin; must be positive and finite.
   */
  double epsilon;
  /**
   * Queue order: 0 best-first, 1 depth-first, 2 breadth-first.
   */
  uint32_t exploration;
  /**
   * Split variable choice: 0 smear, 1 largest domain, 2 round robin.
   */
  uint32_t branching;
  /**
   * Upper bounding: 0 probes the midpoint-nearest item per catalog,
   * any other value enumerates up to that many item combinations per
   * node.
   */
  uint64_t ub_cap;
  /**
   * Stop after this many nodes; 0 means no limit.
   */
  uint64_t max_nodes;
} CatoptOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads a problem file. On success writes a fresh handle to `out` and
 * returns `Ok`; on failure returns the reason and, when `err_msg` is not
 * NULL, stores a message there that must be released with
 * `catopt_string_free`.
 *
 * # Safety
 *
 * `path` must point to a NUL-terminated string; `out` and `err_msg`, when
 * non-NULL, must point to writable pointer slots.
 */
enum CatoptError catopt_problem_load(const char *path, struct CatoptProblem **out, char **err_msg);

/**
 * Releases a problem handle. NULL is ignored.
 *
 * # Safety
 *
 * `p` must be NULL or a handle from `catopt_problem_load` that has not
 * been freed yet.
 */
void catopt_problem_free(struct CatoptProblem *p);

/**
 * Number of variables in the problem, 0 for NULL.
 *
 * # Safety
 *
 * `p` must be NULL or a live problem handle.
 */
size_t catopt_problem_num_vars(const struct CatoptProblem *p);

/**
 * Number of catalogs bound in the problem, 0 for NULL.
 *
 * # Safety
 *
 * `p` must be NULL or a live problem handle.
 */
size_t catopt_problem_num_catalogs(const struct CatoptProblem *p);

/**
 * Name of variable `i`, or NULL when out of range. The pointer stays
 * valid until the problem is freed; do not release it separately.
 *
 * # Safety
 *
 * `p` must be NULL or a live problem handle.
 */
const char *catopt_problem_var_name(const struct CatoptProblem *p, size_t i);

/**
 * The default solver configuration.
 */
struct CatoptOptions catopt_options_default(void);

/**
 * Solves the problem and writes a result handle to `out`. Pass NULL
 * options for defaults.
 *
 * # Safety
 *
 * `p` must be a live problem handle, `options` NULL or a valid options
 * struct, and `out` a writable pointer slot.
 */
enum CatoptError catopt_solve(const struct CatoptProblem *p,
                              const struct CatoptOptions *options,
                              struct CatoptResult **out);

/**
 * Releases a result handle. NULL is ignored.
 *
 * # Safety
 *
 * `r` must be NULL or a handle from `catopt_solve` that has not been
 * freed yet.
 */
void catopt_result_free(struct CatoptResult *r);

/**
 * How the solve ended. NULL reports `Limit`.
 *
 * # Safety
 *
 * `r` must be NULL or a live result handle.
 */
enum CatoptStatus catopt_result_status(const struct CatoptResult *r);

/**
 * Objective value of the incumbent, +inf when none was found.
 *
 * # Safety
 *
 * `r` must be NULL or a live result handle.
 */
double catopt_result_objective(const struct CatoptResult *r);

/**
 * Certified lower bound on the global minimum.
 *
 * # Safety
 *
 * `r` must be NULL or a live result handle.
 */
double catopt_result_lower_bound(const struct CatoptResult *r);

/**
 * Number of processed search nodes.
 *
 * # Safety
 *
 * `r` must be NULL or a live result handle.
 */
uint64_t catopt_result_nodes(const struct CatoptResult *r);

/**
 * Whether the result carries an incumbent point.
 *
 * # Safety
 *
 * `r` must be NULL or a live result handle.
 */
bool catopt_result_has_point(const struct CatoptResult *r);

/**
 * Value of variable `i` at the incumbent, NaN when there is no incumbent
 * or `i` is out of range.
 *
 * # Safety
 *
 * `r` must be NULL or a live result handle.
 */
double catopt_result_value(const struct CatoptResult *r, size_t i);

/**
 * One-based id of the item the incumbent selects from catalog `i`,
 * matching the id column of the catalog file. Returns 0 when there is no
 * incumbent or `i` is out of range.
 *
 * # Safety
 *
 * `r` must be NULL or a live result handle.
 */
uint64_t catopt_result_item(const struct CatoptResult *r, size_t i);

/**
 * Releases a string produced by this library. NULL is ignored.
 *
 * # Safety
 *
 * `s` must be NULL or a string returned through an `err_msg` slot, freed
 * at most once.
 */
void catopt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CATOPT_H */
