//! C ABI for the cryocool model.
//!
//! Every fallible function returns a [`CryoStatus`]; on failure a message is
//! available from [`cryo_last_error`] on the same thread. Spectra, scenarios and
//! result tables are opaque handles released with their `_free` function. Strings
//! returned by the library are released with [`cryo_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cryocool::brownian::{builtin_solvent, diffusion_ratio};
use cryocool::cooling::{self, BeamParams, CoolingResult, DefectSpecies, ParticleEnvironment, ThermalLoad};
use cryocool::scenarios::{builtin_scenario, run_scenario, OutputTable, Scenario};
use cryocool::spectra::{self, DoubletStructure, Spectrum, SpectrumKind};
use cryocool::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CryoStatus {
    Ok = 0,
    OutOfRange = 1,
    Degenerate = 2,
    Domain = 3,
    Calibration = 4,
    InvalidArgument = 5,
    UnknownName = 6,
    Parse = 7,
    Io = 8,
    NullPointer = 9,
    Panic = 10,
}

impl From<&Error> for CryoStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::OutOfRange { .. } => CryoStatus::OutOfRange,
            Error::Degenerate(_) => CryoStatus::Degenerate,
            Error::Domain(_) => CryoStatus::Domain,
            Error::Calibration(_) => CryoStatus::Calibration,
            Error::InvalidArgument(_) => CryoStatus::InvalidArgument,
            Error::UnknownName { .. } => CryoStatus::UnknownName,
            Error::Parse { .. } => CryoStatus::Parse,
            Error::Io { .. } => CryoStatus::Io,
        }
    }
}

/// Kind of values a spectrum holds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CryoSpectrumKind {
    /// Absolute cross section, m².
    CrossSection = 0,
    /// Relative intensity, arbitrary units.
    Intensity = 1,
}

/// Defect ensemble parameters (SI units).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CryoSpecies {
    pub gamma_rad: f64,
    pub lambda_f: f64,
    pub number_density: f64,
    pub quantum_efficiency: f64,
}

/// Pump beam (SI units).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CryoBeam {
    pub power: f64,
    pub wavelength: f64,
    pub spot_radius: f64,
}

/// Particle and surroundings. `h_conv` = 0 means vacuum (radiative load only);
/// `interaction_length` <= 0 means the diameter. `solvent` 0 = none, 1 = D2O,
/// 2 = H2O; a solvent is only used with a convective load.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CryoEnvironment {
    pub diameter: f64,
    pub interaction_length: f64,
    pub emissivity: f64,
    pub ambient_t: f64,
    pub h_conv: f64,
    pub solvent: i32,
}

/// Set in [`CryoResult::flags`] when |ΔT|/T_amb exceeds the linearization limit.
pub const CRYO_FLAG_LINEARIZATION: u32 = 1;
/// Set in [`CryoResult::flags`] when the viscosity expansion is outside its range.
pub const CRYO_FLAG_EXPANSION: u32 = 2;

/// Observables at one operating point. `chi` is NaN without a solvent.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CryoResult {
    pub saturation_intensity: f64,
    pub cooling_power: f64,
    pub delta_t: f64,
    pub lambda_f_star: f64,
    pub chi: f64,
    pub flags: u32,
}

/// One row of a result table. `ok` is 0 where the model has no solution, and
/// the result fields are then NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CryoRow {
    pub wavelength: f64,
    pub power: f64,
    pub diameter: f64,
    pub quantum_efficiency: f64,
    pub sigma_abs: f64,
    pub sigma_se: f64,
    pub ok: i32,
    pub result: CryoResult,
}

pub struct CryoSpectrum(Spectrum);
pub struct CryoScenario(Scenario);
pub struct CryoTable(OutputTable);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CryoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CryoStatus::Ok
        }
        Ok(Err(fail)) => {
            set_error(fail.message);
            fail.status
        }
        Err(_) => {
            set_error("internal panic");
            CryoStatus::Panic
        }
    }
}

struct Fail {
    status: CryoStatus,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail {
            status: CryoStatus::from(&e),
            message: e.to_string(),
        }
    }
}

fn null(what: &str) -> Fail {
    Fail {
        status: CryoStatus::NullPointer,
        message: format!("{what} is null"),
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail {
        status: CryoStatus::InvalidArgument,
        message: msg.into(),
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| invalid("string contains a NUL byte"))
}

/// Message for the last failed call on this thread ("" after a success). The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn cryo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn cryo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cryo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- scalar physics -------------------------------------------------------

/// I_S = h c γ_rad / (λ σ_abs), W/m².
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_saturation_intensity(
    lambda: f64,
    sigma_abs: f64,
    gamma_rad: f64,
    out_value: *mut f64,
) -> CryoStatus {
    guard(|| {
        *out(out_value, "out_value")? = cooling::saturation_intensity(lambda, sigma_abs, gamma_rad)?;
        Ok(())
    })
}

/// λ_F* = λ_F η / (2η − 1); fails for η <= 0.5.
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_effective_mean_wavelength(
    lambda_f: f64,
    quantum_efficiency: f64,
    out_value: *mut f64,
) -> CryoStatus {
    guard(|| {
        *out(out_value, "out_value")? = cooling::effective_mean_wavelength(lambda_f, quantum_efficiency)?;
        Ok(())
    })
}

/// σ_se/σ_abs at `lambda` for a ground/excited doublet structure (splittings in eV).
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_mccumber_ratio(
    lambda: f64,
    temperature: f64,
    delta_e_lower: f64,
    delta_e_upper: f64,
    d_lower: u32,
    d_upper: u32,
    lambda_zl: f64,
    out_value: *mut f64,
) -> CryoStatus {
    guard(|| {
        let levels = DoubletStructure::new(delta_e_lower, delta_e_upper, d_lower, d_upper, lambda_zl)?;
        *out(out_value, "out_value")? = spectra::mccumber_ratio(lambda, temperature, &levels)?;
        Ok(())
    })
}

/// χ = D_CBM / D_amb for a particle `delta_t` away from solvent `solvent_name`
/// ("D2O" or "H2O") at `ambient_t`.
///
/// # Safety
/// `solvent_name` must be a NUL-terminated string and `out_value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_diffusion_ratio(
    solvent_name: *const c_char,
    ambient_t: f64,
    delta_t: f64,
    out_value: *mut f64,
) -> CryoStatus {
    guard(|| {
        let solvent = builtin_solvent(text(solvent_name, "solvent_name")?)?;
        *out(out_value, "out_value")? = diffusion_ratio(ambient_t, delta_t, &solvent)?;
        Ok(())
    })
}

fn to_result(r: &CoolingResult) -> CryoResult {
    CryoResult {
        saturation_intensity: r.saturation_intensity,
        cooling_power: r.cooling_power,
        delta_t: r.delta_t,
        lambda_f_star: r.lambda_f_star,
        chi: r.chi.unwrap_or(f64::NAN),
        flags: (r.flags.linearization as u32) * CRYO_FLAG_LINEARIZATION
            + (r.flags.expansion as u32) * CRYO_FLAG_EXPANSION,
    }
}

fn environment(e: &CryoEnvironment) -> Result<ParticleEnvironment, Fail> {
    let solvent = match e.solvent {
        0 => None,
        1 => Some(builtin_solvent("D2O")?),
        2 => Some(builtin_solvent("H2O")?),
        other => return Err(invalid(format!("unknown solvent code {other}"))),
    };
    Ok(ParticleEnvironment {
        diameter: e.diameter,
        interaction_length: (e.interaction_length > 0.0).then_some(e.interaction_length),
        emissivity: e.emissivity,
        ambient_t: e.ambient_t,
        load: if e.h_conv > 0.0 {
            ThermalLoad::LiquidConvective { h_conv: e.h_conv }
        } else {
            ThermalLoad::VacuumRadiative
        },
        solvent,
    })
}

/// Cooling power, temperature change and diffusion ratio at one operating point.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn cryo_evaluate(
    species: *const CryoSpecies,
    beam: *const CryoBeam,
    env: *const CryoEnvironment,
    sigma_abs: f64,
    sigma_se: f64,
    out_result: *mut CryoResult,
) -> CryoStatus {
    guard(|| {
        let s = get(species, "species")?;
        let b = get(beam, "beam")?;
        let species = DefectSpecies {
            name: "ffi".into(),
            gamma_rad: s.gamma_rad,
            lambda_f: s.lambda_f,
            number_density: s.number_density,
            quantum_efficiency: s.quantum_efficiency,
            levels: None,
        };
        let beam = BeamParams {
            power: b.power,
            wavelength: b.wavelength,
            spot_radius: b.spot_radius,
        };
        let env = environment(get(env, "env")?)?;
        species.validate()?;
        beam.validate()?;
        env.validate()?;
        let r = cooling::evaluate(&species, &beam, &env, sigma_abs, sigma_se)?;
        *out(out_result, "out_result")? = to_result(&r);
        Ok(())
    })
}

/// NV⁻ defaults: γ_rad = 1/12 ns, λ_F = 721 nm, N = 2.65e24 m⁻³, η = 1.
///
/// # Safety
/// `out_species` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_species_nv(out_species: *mut CryoSpecies) -> CryoStatus {
    guard(|| {
        let s = DefectSpecies::nv();
        *out(out_species, "out_species")? = CryoSpecies {
            gamma_rad: s.gamma_rad,
            lambda_f: s.lambda_f,
            number_density: s.number_density,
            quantum_efficiency: s.quantum_efficiency,
        };
        Ok(())
    })
}

/// SiV⁻ defaults: γ_rad = 1/1.2 ns, λ_F = 741 nm, N = 2.65e23 m⁻³, η = 1.
///
/// # Safety
/// `out_species` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_species_siv(out_species: *mut CryoSpecies) -> CryoStatus {
    guard(|| {
        let s = DefectSpecies::siv();
        *out(out_species, "out_species")? = CryoSpecies {
            gamma_rad: s.gamma_rad,
            lambda_f: s.lambda_f,
            number_density: s.number_density,
            quantum_efficiency: s.quantum_efficiency,
        };
        Ok(())
    })
}

// ---- spectra --------------------------------------------------------------

fn boxed<T>(value: T, out_handle: *mut *mut T) -> Result<(), Fail> {
    // SAFETY: caller-provided out pointer, checked for null
    let slot = unsafe { out(out_handle, "out_handle")? };
    *slot = Box::into_raw(Box::new(value));
    Ok(())
}

/// Loads a bundled spectrum by name (see `cryocool list spectra`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_spectrum_bundled(name: *const c_char, out_handle: *mut *mut CryoSpectrum) -> CryoStatus {
    guard(|| {
        boxed(
            CryoSpectrum(spectra::bundled_spectrum(text(name, "name")?)?),
            out_handle,
        )
    })
}

/// Reads a spectrum file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_spectrum_read(path: *const c_char, out_handle: *mut *mut CryoSpectrum) -> CryoStatus {
    guard(|| boxed(CryoSpectrum(spectra::read_spectrum(text(path, "path")?)?), out_handle))
}

/// Builds a spectrum from `len` wavelengths (m, strictly increasing) and values.
///
/// # Safety
/// `wavelengths` and `values` must point to `len` doubles; `out_handle` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cryo_spectrum_new(
    wavelengths: *const f64,
    values: *const f64,
    len: usize,
    kind: CryoSpectrumKind,
    out_handle: *mut *mut CryoSpectrum,
) -> CryoStatus {
    guard(|| {
        if wavelengths.is_null() || values.is_null() {
            return Err(null("wavelengths/values"));
        }
        let w = std::slice::from_raw_parts(wavelengths, len).to_vec();
        let v = std::slice::from_raw_parts(values, len).to_vec();
        let kind = match kind {
            CryoSpectrumKind::CrossSection => SpectrumKind::CrossSection,
            CryoSpectrumKind::Intensity => SpectrumKind::Intensity,
        };
        boxed(CryoSpectrum(Spectrum::new(w, v, kind)?), out_handle)
    })
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live spectrum handle.
#[no_mangle]
pub unsafe extern "C" fn cryo_spectrum_len(handle: *const CryoSpectrum) -> usize {
    handle.as_ref().map_or(0, |s| s.0.len())
}

/// Copies up to `capacity` samples into the caller's arrays (either may be null).
///
/// # Safety
/// Non-null arrays must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn cryo_spectrum_copy(
    handle: *const CryoSpectrum,
    wavelengths: *mut f64,
    values: *mut f64,
    capacity: usize,
) -> CryoStatus {
    guard(|| {
        let s = &get(handle, "handle")?.0;
        let n = capacity.min(s.len());
        if !wavelengths.is_null() {
            std::slice::from_raw_parts_mut(wavelengths, n).copy_from_slice(&s.wavelengths()[..n]);
        }
        if !values.is_null() {
            std::slice::from_raw_parts_mut(values, n).copy_from_slice(&s.values()[..n]);
        }
        Ok(())
    })
}

/// Linear interpolation at `lambda` (m); out of range is an error.
///
/// # Safety
/// `handle` must be a live spectrum handle and `out_value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_spectrum_interpolate(
    handle: *const CryoSpectrum,
    lambda: f64,
    out_value: *mut f64,
) -> CryoStatus {
    guard(|| {
        *out(out_value, "out_value")? = get(handle, "handle")?.0.interpolate(lambda)?;
        Ok(())
    })
}

/// Mean emission wavelength ∫λ s dλ / ∫s dλ, m.
///
/// # Safety
/// `handle` must be a live spectrum handle and `out_value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_spectrum_mean_wavelength(handle: *const CryoSpectrum, out_value: *mut f64) -> CryoStatus {
    guard(|| {
        *out(out_value, "out_value")? = spectra::mean_fluorescence_wavelength(&get(handle, "handle")?.0)?;
        Ok(())
    })
}

/// McCumber absorption cross section from an emission cross section.
///
/// # Safety
/// `emission` must be a live handle; `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_spectrum_absorption_from_emission(
    emission: *const CryoSpectrum,
    temperature: f64,
    delta_e_lower: f64,
    delta_e_upper: f64,
    d_lower: u32,
    d_upper: u32,
    lambda_zl: f64,
    out_handle: *mut *mut CryoSpectrum,
) -> CryoStatus {
    guard(|| {
        let levels = DoubletStructure::new(delta_e_lower, delta_e_upper, d_lower, d_upper, lambda_zl)?;
        let abs = spectra::absorption_from_emission(&get(emission, "emission")?.0, temperature, &levels)?;
        boxed(CryoSpectrum(abs), out_handle)
    })
}

/// Releases a spectrum. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cryo_spectrum_free(handle: *mut CryoSpectrum) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

// ---- scenarios and tables -------------------------------------------------

/// One of the built-in scenarios: "nv-vacuum", "nv-water" or "siv-vacuum".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_scenario_builtin(name: *const c_char, out_handle: *mut *mut CryoScenario) -> CryoStatus {
    guard(|| boxed(CryoScenario(builtin_scenario(text(name, "name")?)?), out_handle))
}

/// Parses scenario text (`section.key = value` lines, or a CSV header).
///
/// # Safety
/// `text_in` must be a NUL-terminated string and `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_scenario_parse(text_in: *const c_char, out_handle: *mut *mut CryoScenario) -> CryoStatus {
    guard(|| {
        boxed(
            CryoScenario(Scenario::parse(text(text_in, "text")?, "ffi")?),
            out_handle,
        )
    })
}

/// Sets one key, e.g. ("beam.power_W", "0.5") or ("sweep.wavelength_m", "7.2e-7:8e-7:81").
/// On failure the scenario is unchanged.
///
/// # Safety
/// `handle` must be a live scenario handle; `key` and `value` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn cryo_scenario_set(
    handle: *mut CryoScenario,
    key: *const c_char,
    value: *const c_char,
) -> CryoStatus {
    guard(|| {
        let s = out(handle, "handle")?;
        let updated = s.0.with_overrides(&[(text(key, "key")?, text(value, "value")?)])?;
        s.0 = updated;
        Ok(())
    })
}

/// Canonical scenario text; free with `cryo_string_free`.
///
/// # Safety
/// `handle` must be a live scenario handle and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_scenario_to_text(handle: *const CryoScenario, out_text: *mut *mut c_char) -> CryoStatus {
    guard(|| {
        *out(out_text, "out_text")? = to_c_string(get(handle, "handle")?.0.to_text())?;
        Ok(())
    })
}

/// Runs the scenario's sweep.
///
/// # Safety
/// `handle` must be a live scenario handle and `out_table` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_scenario_run(handle: *const CryoScenario, out_table: *mut *mut CryoTable) -> CryoStatus {
    guard(|| {
        let t = run_scenario(&get(handle, "handle")?.0, &[] as &[(&str, &str)])?;
        boxed(CryoTable(t), out_table)
    })
}

/// Releases a scenario. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cryo_scenario_free(handle: *mut CryoScenario) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn cryo_table_len(handle: *const CryoTable) -> usize {
    handle.as_ref().map_or(0, |t| t.0.rows.len())
}

/// Copies row `index`.
///
/// # Safety
/// `handle` must be a live table handle and `out_row` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_table_row(handle: *const CryoTable, index: usize, out_row: *mut CryoRow) -> CryoStatus {
    guard(|| {
        let t = &get(handle, "handle")?.0;
        let r = t
            .rows
            .get(index)
            .ok_or_else(|| invalid(format!("row {index} out of {}", t.rows.len())))?;
        let nan = f64::NAN;
        *out(out_row, "out_row")? = CryoRow {
            wavelength: r.wavelength,
            power: r.power,
            diameter: r.diameter,
            quantum_efficiency: r.quantum_efficiency,
            sigma_abs: r.sigma_abs,
            sigma_se: r.sigma_se,
            ok: r.result.is_ok() as i32,
            result: r.result.as_ref().map(to_result).unwrap_or(CryoResult {
                saturation_intensity: nan,
                cooling_power: nan,
                delta_t: nan,
                lambda_f_star: nan,
                chi: nan,
                flags: 0,
            }),
        };
        Ok(())
    })
}

/// The table as CSV text (same as the command line); free with `cryo_string_free`.
///
/// # Safety
/// `handle` must be a live table handle and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cryo_table_to_csv(handle: *const CryoTable, out_text: *mut *mut c_char) -> CryoStatus {
    guard(|| {
        *out(out_text, "out_text")? = to_c_string(get(handle, "handle")?.0.to_csv())?;
        Ok(())
    })
}

/// Releases a table. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cryo_table_free(handle: *mut CryoTable) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}
