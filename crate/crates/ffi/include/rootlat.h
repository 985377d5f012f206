#ifndef ROOTLAT_H
#define ROOTLAT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RlLevel {
  RL_LEVEL_ALL = 0,
  RL_LEVEL_ANTISYM = 1,
  RL_LEVEL_SEMICLOSED = 2,
  RL_LEVEL_CLOSED = 3,
  RL_LEVEL_POSETS = 4,
} RlLevel;

typedef enum RlStatus {
  RL_STATUS_OK = 0,
  RL_STATUS_NULL_ARGUMENT = 1,
  RL_STATUS_CONFIG = 2,
  RL_STATUS_PARSE = 3,
  RL_STATUS_UNSUPPORTED = 4,
  RL_STATUS_CONTRACT = 5,
  RL_STATUS_MIXED_SYSTEMS = 6,
  RL_STATUS_RESOURCE = 7,
  RL_STATUS_INVARIANT = 8,
  RL_STATUS_NO_CHARACTERIZATION = 9,
  RL_STATUS_IO = 10,
  RL_STATUS_PANIC = 11,
} RlStatus;

/**
 * A family of subsets in canonical order.
 */
typedef struct RlFamily RlFamily;

/**
 * A subset of the roots of one system.
 */
typedef struct RlSet RlSet;

/**
 * A root system.
 */
typedef struct RlSystem RlSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; valid until the next call.
 */
const char *rl_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void rl_string_free(char *s);

/**
 * Builds a root system from a label such as `"B3"`.
 *
 * # Safety
 * `label` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RlStatus rl_system_new(const char *label, struct RlSystem **out_system);

/**
 * # Safety
 * `system` must come from [`rl_system_new`] or be null.
 */
void rl_system_free(struct RlSystem *system);

/**
 * # Safety
 * `system` must be a live handle; `rank` and `roots` valid pointers.
 */
enum RlStatus rl_system_sizes(const struct RlSystem *system, size_t *rank, size_t *roots);

/**
 * Parses a set literal such as `"+[1,1],-[0,1]"`.
 *
 * # Safety
 * Pointers must be valid; `literal` NUL-terminated.
 */
enum RlStatus rl_set_parse(const struct RlSystem *system,
                           const char *literal,
                           struct RlSet **out_set);

/**
 * # Safety
 * `set` must come from this library or be null.
 */
void rl_set_free(struct RlSet *set);

/**
 * Canonical literal of `set`; free with [`rl_string_free`].
 *
 * # Safety
 * Pointers must be valid and `set` must belong to `system`.
 */
enum RlStatus rl_set_to_literal(const struct RlSystem *system,
                                const struct RlSet *set,
                                char **out_literal);

/**
 * Whether `set` lies in `level`.
 *
 * # Safety
 * Pointers must be valid and `set` must belong to `system`.
 */
enum RlStatus rl_set_in_level(const struct RlSystem *system,
                              const struct RlSet *set,
                              enum RlLevel level,
                              bool *result);

/**
 * Closure of `set`; crystallographic systems only.
 *
 * # Safety
 * Pointers must be valid and `set` must belong to `system`.
 */
enum RlStatus rl_set_closure(const struct RlSystem *system,
                             const struct RlSet *set,
                             struct RlSet **out_set);

/**
 * `left ⩽ right` in the weak order.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RlStatus rl_weak_le(const struct RlSet *left, const struct RlSet *right, bool *result);

/**
 * Meet (`join = false`) or join (`join = true`) at `level`.
 *
 * # Safety
 * Pointers must be valid and both sets must belong to `system`.
 */
enum RlStatus rl_lattice_op(const struct RlSystem *system,
                            enum RlLevel level,
                            bool join,
                            const struct RlSet *left,
                            const struct RlSet *right,
                            struct RlSet **out_set);

/**
 * Constructs a family by tag (`"woip"`, `"coep"`, ...). `coxeter` may be
 * null for the linear element.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum RlStatus rl_family_build(const struct RlSystem *system,
                              const char *tag,
                              const char *coxeter,
                              struct RlFamily **out_family);

/**
 * # Safety
 * `family` must come from this library or be null.
 */
void rl_family_free(struct RlFamily *family);

/**
 * # Safety
 * Pointers must be valid.
 */
enum RlStatus rl_family_len(const struct RlFamily *family, size_t *len);

/**
 * Copy of member `index`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RlStatus rl_family_get(const struct RlFamily *family, size_t index, struct RlSet **out_set);

/**
 * Size of a level or family (`"posets"`, `"closed"`, `"coip"`, ...).
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated; `coxeter` may be null.
 */
enum RlStatus rl_census_count(const struct RlSystem *system,
                              const char *family,
                              const char *coxeter,
                              uint64_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROOTLAT_H */
