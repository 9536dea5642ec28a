#ifndef CAVITY_SPECTRA_H
#define CAVITY_SPECTRA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum CsStatus {
  CS_STATUS_OK = 0,
  // A required pointer argument was null.
  CS_STATUS_NULL_POINTER = 1,
  // An argument was outside its domain.
  CS_STATUS_INVALID_ARGUMENT = 2,
  // The computation failed to converge or produced a non-finite value.
  CS_STATUS_NUMERICAL = 3,
  // An internal panic was caught at the boundary.
  CS_STATUS_PANIC = 4,
} CsStatus;

// A radial model (system, angular quantum number, radius).
typedef struct CsModel CsModel;

// Eigenvalues of one solve, sorted ascending.
typedef struct CsSpectrum CsSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Free particle in a sphere of radius `radius` with orbital number `l`.
//
// # Safety
// `out` must be valid for writes.
enum CsStatus cs_model_free_sphere(uint32_t l, double radius, struct CsModel **out);

// Hydrogen centered in a sphere (units ħ = M = e² = 1).
//
// # Safety
// `out` must be valid for writes.
enum CsStatus cs_model_hydrogen_sphere(uint32_t l, double radius, struct CsModel **out);

// Two-dimensional hydrogen on a cone with scale factor `s` in (0, 1].
//
// # Safety
// `out` must be valid for writes.
enum CsStatus cs_model_hydrogen_cone(int32_t m, double s, double radius, struct CsModel **out);

// Releases a model. Null is ignored.
//
// # Safety
// `model` must be null or a handle not yet freed.
void cs_model_free(struct CsModel *model);

// Energy unit used for display: π²/(2MR²) for the free particle, Me⁴ otherwise.
//
// # Safety
// `model` must be a live handle and `out` valid for writes.
enum CsStatus cs_model_display_unit(const struct CsModel *model, double *out);

// Converts γ (±infinity allowed) into the boundary angle u = arctan(γR).
//
// # Safety
// `out` must be valid for writes.
enum CsStatus cs_boundary_u(double gamma, double radius, double *out);

// Boundary residual at `energy` for the condition with angle `u`; zero at eigenvalues.
//
// # Safety
// `model` must be a live handle and `out` valid for writes.
enum CsStatus cs_residual(const struct CsModel *model, double u, double energy, double *out);

// The `count` lowest eigenvalues for boundary angle `u`.
//
// # Safety
// `model` must be a live handle and `out` valid for writes.
enum CsStatus cs_solve_lowest(const struct CsModel *model,
                              double u,
                              uintptr_t count,
                              struct CsSpectrum **out);

// All eigenvalues in `[e_min, e_max]` (internal units) for boundary angle `u`.
// `max_states` caps the count; 0 means no cap.
//
// # Safety
// `model` must be a live handle and `out` valid for writes.
enum CsStatus cs_solve_window(const struct CsModel *model,
                              double u,
                              double e_min,
                              double e_max,
                              uintptr_t max_states,
                              struct CsSpectrum **out);

// Number of levels in a spectrum; 0 for null.
//
// # Safety
// `spectrum` must be null or a live handle.
uintptr_t cs_spectrum_len(const struct CsSpectrum *spectrum);

// Energy (internal units) and node count of level `index`.
//
// # Safety
// `spectrum` must be a live handle; `energy` and `nodes` valid for writes.
enum CsStatus cs_spectrum_level(const struct CsSpectrum *spectrum,
                                uintptr_t index,
                                double *energy,
                                uintptr_t *nodes);

// True when the solve reported a missed root or a missing ground state.
//
// # Safety
// `spectrum` must be null or a live handle.
bool cs_spectrum_flagged(const struct CsSpectrum *spectrum);

// Releases a spectrum. Null is ignored.
//
// # Safety
// `spectrum` must be null or a handle not yet freed.
void cs_spectrum_free(struct CsSpectrum *spectrum);

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *cs_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *cs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAVITY_SPECTRA_H */
