#ifndef XXTELE_H
#define XXTELE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; values match the exit codes of the `xxtele` CLI where they overlap.
 */
typedef enum XxStatus {
  XX_STATUS_OK = 0,
  XX_STATUS_NUMERICAL_FAILURE = 1,
  XX_STATUS_INVALID_PARAMETER = 2,
  XX_STATUS_NO_SOLUTION = 3,
  XX_STATUS_NULL_POINTER = 5,
  XX_STATUS_PANIC = 6,
} XxStatus;

/**
 * Gibbs state of the two-qubit XX chain.
 */
typedef struct XxThermalState XxThermalState;

typedef struct XxFidelityEstimate {
  double average;
  double stderr;
  uint64_t samples;
} XxFidelityEstimate;

typedef struct XxCriticalPoint {
  double eta;
  double t_critical_over_j;
  double residual_concurrence;
  double solver_residual;
} XxCriticalPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *xx_version(void);

/**
 * Copies the calling thread's last error message into `buf` (nul-terminated,
 * truncated to `len`). Returns the full message length excluding the
 * terminator, or 0 when there is no error.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t xx_last_error_message(char *buf, size_t len);

/**
 * Builds the thermal state for coupling `j`, field `b_m` and temperature `t > 0`.
 *
 * # Safety
 * `out` must be valid for a pointer write. The handle must be released with
 * [`xx_thermal_state_free`].
 */
enum XxStatus xx_thermal_state_new(double j, double b_m, double t, struct XxThermalState **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `handle` must be null or come from [`xx_thermal_state_new`] and not be used afterwards.
 */
void xx_thermal_state_free(struct XxThermalState *handle);

/**
 * # Safety
 * `handle` must be live; `out` valid for a write.
 */
enum XxStatus xx_thermal_state_partition_function(const struct XxThermalState *handle, double *out);

/**
 * Writes the 4x4 density matrix row-major into `re[16]` and `im[16]`.
 *
 * # Safety
 * `handle` must be live; `re` and `im` valid for 16 doubles each.
 */
enum XxStatus xx_thermal_state_density(const struct XxThermalState *handle, double *re, double *im);

/**
 * Wootters concurrence of the state.
 *
 * # Safety
 * `handle` must be live; `out` valid for a write.
 */
enum XxStatus xx_thermal_state_concurrence(const struct XxThermalState *handle, double *out);

/**
 * Teleportation channel weights `p[4]` in the order Ψ-, Φ-, Φ+, Ψ+.
 *
 * # Safety
 * `handle` must be live; `out` valid for 4 doubles.
 */
enum XxStatus xx_thermal_state_bell_weights(const struct XxThermalState *handle, double *out);

/**
 * Teleports `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`; writes the 2x2 output
 * row-major into `re[4]` and `im[4]`.
 *
 * # Safety
 * `handle` must be live; `re` and `im` valid for 4 doubles each.
 */
enum XxStatus xx_thermal_state_teleport(const struct XxThermalState *handle,
                                        double theta,
                                        double phi,
                                        double *re,
                                        double *im);

/**
 * Monte Carlo average fidelity over `samples` Haar-random inputs.
 *
 * # Safety
 * `handle` must be live; `out` valid for a write.
 */
enum XxStatus xx_thermal_state_mc_fidelity(const struct XxThermalState *handle,
                                           uint64_t samples,
                                           uint64_t seed,
                                           struct XxFidelityEstimate *out);

/**
 * Deterministic sphere-averaged fidelity by quadrature.
 *
 * # Safety
 * `handle` must be live; `out` valid for a write.
 */
enum XxStatus xx_thermal_state_quadrature_fidelity(const struct XxThermalState *handle,
                                                   double *out);

/**
 * Closed-form thermal concurrence.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum XxStatus xx_thermal_concurrence(double j, double b_m, double t, double *out);

/**
 * Closed-form average teleportation fidelity.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum XxStatus xx_average_fidelity(double j, double b_m, double t, double *out);

/**
 * Closed-form fidelity for an input at polar angle `theta`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum XxStatus xx_output_fidelity(double j, double b_m, double t, double theta, double *out);

/**
 * Whether the thermal channel beats the classical fidelity 2/3.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum XxStatus xx_better_than_classical(double j, double b_m, double t, bool *out);

/**
 * `|j| / arcsinh(1)`; `XX_STATUS_NO_SOLUTION` for `j = 0`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum XxStatus xx_zero_entanglement_temperature(double j, double *out);

/**
 * Critical temperature for `B_m = eta * j`; `XX_STATUS_NO_SOLUTION` for `eta >= 1`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum XxStatus xx_critical_temperature(double eta, double j, struct XxCriticalPoint *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XXTELE_H */
