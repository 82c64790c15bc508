#ifndef ZWTICK_H
#define ZWTICK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/* Every function returns ZWT_OK or an error code; zwt_last_error() describes the failure. */

#define ZWT_OK 0

#define ZWT_ERR_NULL 1

#define ZWT_ERR_UTF8 2

#define ZWT_ERR_PARSE 3

#define ZWT_ERR_ARITY 4

#define ZWT_ERR_TICKED 5

#define ZWT_ERR_DIMENSION 6

#define ZWT_ERR_INVALID 7

#define ZWT_ERR_TOO_LARGE 8

#define ZWT_ERR_ARITHMETIC 9

#define ZWT_ERR_IO 10

#define ZWT_ERR_PANIC 11

// Complete positivity could not be decided numerically.
#define ZWT_CP_UNKNOWN -1

// Opaque diagram handle.
typedef struct ZwtDiagram ZwtDiagram;

// Opaque matrix handle with exact entries.
typedef struct ZwtMatrix ZwtMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next call into the library from the same thread.
const char *zwt_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void zwt_string_free(char *s);

// Parses a diagram term.
//
// # Safety
// `src` is a nul-terminated string; `out` is writable.
int zwt_diagram_parse(const char *src, struct ZwtDiagram **out);

// # Safety
// `d` comes from this library and has not been freed. Null is ignored.
void zwt_diagram_free(struct ZwtDiagram *d);

// Number of input and output wires.
//
// # Safety
// Handles are live; output pointers are writable.
int zwt_diagram_arity(const struct ZwtDiagram *d, uintptr_t *inputs, uintptr_t *outputs);

// Canonical text of the diagram.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_diagram_print(const struct ZwtDiagram *d, char **out);

// `after ∘ before`.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_diagram_compose(const struct ZwtDiagram *after,
                        const struct ZwtDiagram *before,
                        struct ZwtDiagram **out);

// `top ⊗ bottom`.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_diagram_tensor(const struct ZwtDiagram *top,
                       const struct ZwtDiagram *bottom,
                       struct ZwtDiagram **out);

// Whether two diagrams denote the same superoperator.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_diagram_equal(const struct ZwtDiagram *a, const struct ZwtDiagram *b, bool *out);

// Pure interpretation of a tick-free diagram.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_diagram_interp(const struct ZwtDiagram *d, struct ZwtMatrix **out);

// Choi matrix; `proper` bends the inputs through ticked caps.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_diagram_choi(const struct ZwtDiagram *d, bool proper, struct ZwtMatrix **out);

// Applies the superoperator of `d` to `rho`.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_diagram_apply(const struct ZwtDiagram *d,
                      const struct ZwtMatrix *rho,
                      struct ZwtMatrix **out);

// Canonical normal form of the map, in the text format of `zwt nf`.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_diagram_normal_form(const struct ZwtDiagram *d, char **out);

// Hermiticity preservation, and complete positivity as 1, 0 or
// `ZWT_CP_UNKNOWN`.
//
// # Safety
// Handles are live; output pointers are writable.
int zwt_diagram_classify(const struct ZwtDiagram *d, bool *hp, int *cp);

// Parses a matrix: a "rows cols" header, then one row per line.
//
// # Safety
// `src` is a nul-terminated string; `out` is writable.
int zwt_matrix_parse(const char *src, struct ZwtMatrix **out);

// # Safety
// `m` comes from this library and has not been freed. Null is ignored.
void zwt_matrix_free(struct ZwtMatrix *m);

// # Safety
// Handles are live; output pointers are writable.
int zwt_matrix_dims(const struct ZwtMatrix *m, uintptr_t *rows, uintptr_t *cols);

// Entry `(r, c)` as a double-precision complex number.
//
// # Safety
// Handles are live; output pointers are writable.
int zwt_matrix_entry(const struct ZwtMatrix *m, uintptr_t r, uintptr_t c, double *re, double *im);

// Text form, exact unless `float` is set.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_matrix_to_text(const struct ZwtMatrix *m, bool float_, char **out);

// Positive-partial-transpose test with the first `split` qubits transposed.
//
// # Safety
// Handles are live; `out` is writable.
int zwt_ppt(const struct ZwtMatrix *rho, uintptr_t split, bool *out);

// Checks every rule schema on the sample grid plus `extra` random samples
// per schema drawn from `seed`.
//
// # Safety
// Output pointers are writable.
int zwt_check_axioms(uintptr_t extra, uint64_t seed, uintptr_t *total, uintptr_t *failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZWTICK_H */
