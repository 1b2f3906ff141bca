#ifndef CCKIT_H
#define CCKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible function.
 */
typedef enum CckitStatus {
  /*
   The call succeeded and every check in the report passed.
   */
  CCKIT_STATUS_OK = 0,
  /*
   The report was produced but at least one check failed.
   */
  CCKIT_STATUS_CHECK_FAILED = 1,
  /*
   Malformed input, or a structure unsuitable for the command.
   */
  CCKIT_STATUS_INPUT_ERROR = 2,
  /*
   A required pointer argument was null.
   */
  CCKIT_STATUS_NULL_POINTER = 3,
  /*
   An unexpected internal failure.
   */
  CCKIT_STATUS_INTERNAL = 4,
} CckitStatus;

/*
 A parsed structure `(omega, Omega)` with its chart.
 */
typedef struct CckitStructure CckitStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a structure file.

 # Safety
 `json` must be a nul-terminated string and `out` a valid pointer to writable storage.
 */
enum CckitStatus cckit_structure_from_json(const char *json, struct CckitStructure **out);

/*
 Loads a built-in example (`cosym3`, `contact3`, `contact5`, `acc3`, `singular3`).

 # Safety
 `name` must be a nul-terminated string and `out` a valid pointer to writable storage.
 */
enum CckitStatus cckit_structure_from_example(const char *name, struct CckitStructure **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `s` must be null or a handle returned by this library and not yet freed.
 */
void cckit_structure_free(struct CckitStructure *s);

/*
 Dimension of the chart, or 0 for a null handle.

 # Safety
 `s` must be null or a live handle.
 */
size_t cckit_structure_dimension(const struct CckitStructure *s);

/*
 Structure class and regularity density.

 # Safety
 `s` must be a live handle and `out_json` a valid pointer to writable storage.
 */
enum CckitStatus cckit_classify_json(const struct CckitStructure *s, char **out_json);

/*
 Dual pair `(E, Lambda)` with its duality certificate.

 # Safety
 `s` must be a live handle and `out_json` a valid pointer to writable storage.
 */
enum CckitStatus cckit_dualize_json(const struct CckitStructure *s, char **out_json);

/*
 Duality conditions and contravariant identities.

 # Safety
 `s` must be a live handle and `out_json` a valid pointer to writable storage.
 */
enum CckitStatus cckit_verify_json(const struct CckitStructure *s, char **out_json);

/*
 Bracket of the two pairs in `pairs_json`, with the compatibility check.

 # Safety
 `s` must be a live handle, `pairs_json` a nul-terminated string and `out_json` a valid
 pointer to writable storage.
 */
enum CckitStatus cckit_bracket_json(const struct CckitStructure *s,
                                    const char *pairs_json,
                                    char **out_json);

/*
 Generator conditions for `target` on each pair, cross-checked against Lie derivatives.

 # Safety
 `s` must be a live handle, `pairs_json` and `target` nul-terminated strings and `out_json` a
 valid pointer to writable storage.
 */
enum CckitStatus cckit_symmetry_json(const struct CckitStructure *s,
                                     const char *pairs_json,
                                     const char *target,
                                     char **out_json);

/*
 Randomized identity suite.

 # Safety
 `s` must be a live handle and `out_json` a valid pointer to writable storage.
 */
enum CckitStatus cckit_suite_json(const struct CckitStructure *s,
                                  size_t trials,
                                  uint32_t degree,
                                  uint64_t seed,
                                  char **out_json);

/*
 Caps the number of terms any intermediate polynomial may hold; 0 removes the cap.
 */
void cckit_set_term_limit(size_t limit);

/*
 Message for the last failure on this thread, or null. Valid until the next call into the
 library from the same thread.
 */
const char *cckit_last_error_message(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must be null or a string returned by this library and not yet freed.
 */
void cckit_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CCKIT_H */
