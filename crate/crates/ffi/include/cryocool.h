#ifndef CRYOCOOL_H
#define CRYOCOOL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Set in [`CryoResult::flags`] when |ΔT|/T_amb exceeds the linearization limit.
 */
#define CRYO_FLAG_LINEARIZATION 1

/**
 * Set in [`CryoResult::flags`] when the viscosity expansion is outside its range.
 */
#define CRYO_FLAG_EXPANSION 2

/**
 * Result of every fallible call.
 */
typedef enum CryoStatus {
  CRYO_STATUS_OK = 0,
  CRYO_STATUS_OUT_OF_RANGE = 1,
  CRYO_STATUS_DEGENERATE = 2,
  CRYO_STATUS_DOMAIN = 3,
  CRYO_STATUS_CALIBRATION = 4,
  CRYO_STATUS_INVALID_ARGUMENT = 5,
  CRYO_STATUS_UNKNOWN_NAME = 6,
  CRYO_STATUS_PARSE = 7,
  CRYO_STATUS_IO = 8,
  CRYO_STATUS_NULL_POINTER = 9,
  CRYO_STATUS_PANIC = 10,
} CryoStatus;

/**
 * Kind of values a spectrum holds.
 */
typedef enum CryoSpectrumKind {
  /**
   * Absolute cross section, m².
   */
  CRYO_SPECTRUM_KIND_CROSS_SECTION = 0,
  /**
   * Relative intensity, arbitrary units.
   */
  CRYO_SPECTRUM_KIND_INTENSITY = 1,
} CryoSpectrumKind;

typedef struct CryoScenario CryoScenario;

typedef struct CryoSpectrum CryoSpectrum;

typedef struct CryoTable CryoTable;

/**
 * Defect ensemble parameters (SI units).
 */
typedef struct CryoSpecies {
  double gamma_rad;
  double lambda_f;
  double number_density;
  double quantum_efficiency;
} CryoSpecies;

/**
 * Pump beam (SI units).
 */
typedef struct CryoBeam {
  double power;
  double wavelength;
  double spot_radius;
} CryoBeam;

/**
 * Particle and surroundings. `h_conv` = 0 means vacuum (radiative load only);
 * `interaction_length` <= 0 means the diameter. `solvent` 0 = none, 1 = D2O,
 * 2 = H2O; a solvent is only used with a convective load.
 */
typedef struct CryoEnvironment {
  double diameter;
  double interaction_length;
  double emissivity;
  double ambient_t;
  double h_conv;
  int32_t solvent;
} CryoEnvironment;

/**
 * Observables at one operating point. `chi` is NaN without a solvent.
 */
typedef struct CryoResult {
  double saturation_intensity;
  double cooling_power;
  double delta_t;
  double lambda_f_star;
  double chi;
  uint32_t flags;
} CryoResult;

/**
 * One row of a result table. `ok` is 0 where the model has no solution, and
 * the result fields are then NaN.
 */
typedef struct CryoRow {
  double wavelength;
  double power;
  double diameter;
  double quantum_efficiency;
  double sigma_abs;
  double sigma_se;
  int32_t ok;
  struct CryoResult result;
} CryoRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread ("" after a success). The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *cryo_last_error(void);

/**
 * Library version, a static string.
 */
const char *cryo_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void cryo_string_free(char *s);

/**
 * I_S = h c γ_rad / (λ σ_abs), W/m².
 *
 * # Safety
 * `out_value` must be a valid pointer.
 */
enum CryoStatus cryo_saturation_intensity(double lambda,
                                          double sigma_abs,
                                          double gamma_rad,
                                          double *out_value);

/**
 * λ_F* = λ_F η / (2η − 1); fails for η <= 0.5.
 *
 * # Safety
 * `out_value` must be a valid pointer.
 */
enum CryoStatus cryo_effective_mean_wavelength(double lambda_f,
                                               double quantum_efficiency,
                                               double *out_value);

/**
 * σ_se/σ_abs at `lambda` for a ground/excited doublet structure (splittings in eV).
 *
 * # Safety
 * `out_value` must be a valid pointer.
 */
enum CryoStatus cryo_mccumber_ratio(double lambda,
                                    double temperature,
                                    double delta_e_lower,
                                    double delta_e_upper,
                                    uint32_t d_lower,
                                    uint32_t d_upper,
                                    double lambda_zl,
                                    double *out_value);

/**
 * χ = D_CBM / D_amb for a particle `delta_t` away from solvent `solvent_name`
 * ("D2O" or "H2O") at `ambient_t`.
 *
 * # Safety
 * `solvent_name` must be a NUL-terminated string and `out_value` a valid pointer.
 */
enum CryoStatus cryo_diffusion_ratio(const char *solvent_name,
                                     double ambient_t,
                                     double delta_t,
                                     double *out_value);

/**
 * Cooling power, temperature change and diffusion ratio at one operating point.
 *
 * # Safety
 * All pointers must be valid.
 */
enum CryoStatus cryo_evaluate(const struct CryoSpecies *species,
                              const struct CryoBeam *beam,
                              const struct CryoEnvironment *env,
                              double sigma_abs,
                              double sigma_se,
                              struct CryoResult *out_result);

/**
 * NV⁻ defaults: γ_rad = 1/12 ns, λ_F = 721 nm, N = 2.65e24 m⁻³, η = 1.
 *
 * # Safety
 * `out_species` must be a valid pointer.
 */
enum CryoStatus cryo_species_nv(struct CryoSpecies *out_species);

/**
 * SiV⁻ defaults: γ_rad = 1/1.2 ns, λ_F = 741 nm, N = 2.65e23 m⁻³, η = 1.
 *
 * # Safety
 * `out_species` must be a valid pointer.
 */
enum CryoStatus cryo_species_siv(struct CryoSpecies *out_species);

/**
 * Loads a bundled spectrum by name (see `cryocool list spectra`).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out_handle` a valid pointer.
 */
enum CryoStatus cryo_spectrum_bundled(const char *name, struct CryoSpectrum **out_handle);

/**
 * Reads a spectrum file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out_handle` a valid pointer.
 */
enum CryoStatus cryo_spectrum_read(const char *path, struct CryoSpectrum **out_handle);

/**
 * Builds a spectrum from `len` wavelengths (m, strictly increasing) and values.
 *
 * # Safety
 * `wavelengths` and `values` must point to `len` doubles; `out_handle` must be valid.
 */
enum CryoStatus cryo_spectrum_new(const double *wavelengths,
                                  const double *values,
                                  size_t len,
                                  enum CryoSpectrumKind kind,
                                  struct CryoSpectrum **out_handle);

/**
 * Number of samples, or 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live spectrum handle.
 */
size_t cryo_spectrum_len(const struct CryoSpectrum *handle);

/**
 * Copies up to `capacity` samples into the caller's arrays (either may be null).
 *
 * # Safety
 * Non-null arrays must hold `capacity` doubles.
 */
enum CryoStatus cryo_spectrum_copy(const struct CryoSpectrum *handle,
                                   double *wavelengths,
                                   double *values,
                                   size_t capacity);

/**
 * Linear interpolation at `lambda` (m); out of range is an error.
 *
 * # Safety
 * `handle` must be a live spectrum handle and `out_value` a valid pointer.
 */
enum CryoStatus cryo_spectrum_interpolate(const struct CryoSpectrum *handle,
                                          double lambda,
                                          double *out_value);

/**
 * Mean emission wavelength ∫λ s dλ / ∫s dλ, m.
 *
 * # Safety
 * `handle` must be a live spectrum handle and `out_value` a valid pointer.
 */
enum CryoStatus cryo_spectrum_mean_wavelength(const struct CryoSpectrum *handle, double *out_value);

/**
 * McCumber absorption cross section from an emission cross section.
 *
 * # Safety
 * `emission` must be a live handle; `out_handle` a valid pointer.
 */
enum CryoStatus cryo_spectrum_absorption_from_emission(const struct CryoSpectrum *emission,
                                                       double temperature,
                                                       double delta_e_lower,
                                                       double delta_e_upper,
                                                       uint32_t d_lower,
                                                       uint32_t d_upper,
                                                       double lambda_zl,
                                                       struct CryoSpectrum **out_handle);

/**
 * Releases a spectrum. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not be freed twice.
 */
void cryo_spectrum_free(struct CryoSpectrum *handle);

/**
 * One of the built-in scenarios: "nv-vacuum", "nv-water" or "siv-vacuum".
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out_handle` a valid pointer.
 */
enum CryoStatus cryo_scenario_builtin(const char *name, struct CryoScenario **out_handle);

/**
 * Parses scenario text (`section.key = value` lines, or a CSV header).
 *
 * # Safety
 * `text_in` must be a NUL-terminated string and `out_handle` a valid pointer.
 */
enum CryoStatus cryo_scenario_parse(const char *text_in, struct CryoScenario **out_handle);

/**
 * Sets one key, e.g. ("beam.power_W", "0.5") or ("sweep.wavelength_m", "7.2e-7:8e-7:81").
 * On failure the scenario is unchanged.
 *
 * # Safety
 * `handle` must be a live scenario handle; `key` and `value` NUL-terminated strings.
 */
enum CryoStatus cryo_scenario_set(struct CryoScenario *handle, const char *key, const char *value);

/**
 * Canonical scenario text; free with `cryo_string_free`.
 *
 * # Safety
 * `handle` must be a live scenario handle and `out_text` a valid pointer.
 */
enum CryoStatus cryo_scenario_to_text(const struct CryoScenario *handle, char **out_text);

/**
 * Runs the scenario's sweep.
 *
 * # Safety
 * `handle` must be a live scenario handle and `out_table` a valid pointer.
 */
enum CryoStatus cryo_scenario_run(const struct CryoScenario *handle, struct CryoTable **out_table);

/**
 * Releases a scenario. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not be freed twice.
 */
void cryo_scenario_free(struct CryoScenario *handle);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live table handle.
 */
size_t cryo_table_len(const struct CryoTable *handle);

/**
 * Copies row `index`.
 *
 * # Safety
 * `handle` must be a live table handle and `out_row` a valid pointer.
 */
enum CryoStatus cryo_table_row(const struct CryoTable *handle,
                               size_t index,
                               struct CryoRow *out_row);

/**
 * The table as CSV text (same as the command line); free with `cryo_string_free`.
 *
 * # Safety
 * `handle` must be a live table handle and `out_text` a valid pointer.
 */
enum CryoStatus cryo_table_to_csv(const struct CryoTable *handle, char **out_text);

/**
 * Releases a table. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not be freed twice.
 */
void cryo_table_free(struct CryoTable *handle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRYOCOOL_H */
