//! Two-level optical refrigeration: saturation, cooling power and the
//! equilibrium temperature change under a radiative or convective load.
//!
//! Geometry: a cylindrical beam of area `α_eff = π r_s²` crosses a spherical
//! particle of diameter `D` over an interaction length `L` (default `L = D`);
//! the particle exchanges heat through its surface `A = π D²`. With `L = D`
//! the load-balance result reduces to
//!
//! ```text
//! ΔT = N α_eff I_S / (π D (4 ε σ_B T³ + h_cv)) · σ_abs (1 − λ/λ_F*) / (1 + σ_se/σ_abs + α_eff I_S / P)
//! ```
//!
//! with `h_cv = 0` in vacuum. Non-radiative heating enters only through the
//! effective mean fluorescence wavelength λ_F*, used uniformly everywhere.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::brownian::SolventModel;
use crate::constants::{HC, STEFAN_BOLTZMANN};
use crate::error::{Error, Result};
use crate::spectra::{DoubletStructure, Spectrum};

/// |ΔT| / T_amb above which the linearized radiative load is flagged.
pub const LINEARIZATION_LIMIT: f64 = 0.2;

/// Photophysical constants of a dopant ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectSpecies {
    pub name: String,
    /// Radiative decay rate, s⁻¹.
    pub gamma_rad: f64,
    /// Mean fluorescence wavelength, m.
    pub lambda_f: f64,
    /// Defect number density, m⁻³.
    pub number_density: f64,
    pub quantum_efficiency: f64,
    pub levels: Option<DoubletStructure>,
}

impl DefectSpecies {
    /// NV⁻: 1/γ_rad = 12 ns, λ_F = 721 nm, N = 2.65×10²⁴ m⁻³ (~15 ppm), η = 1.
    pub fn nv() -> Self {
        DefectSpecies {
            name: "NV-".into(),
            gamma_rad: 1.0 / 12e-9,
            lambda_f: 721e-9,
            number_density: 2.65e24,
            quantum_efficiency: 1.0,
            levels: None,
        }
    }

    /// SiV⁻: τ_rad = 1.2 ns, λ_F = 741 nm, N = 2.65×10²³ m⁻³ (~1.5 ppm), η = 1.
    pub fn siv() -> Self {
        DefectSpecies {
            name: "SiV-".into(),
            gamma_rad: 1.0 / 1.2e-9,
            lambda_f: 741e-9,
            number_density: 2.65e23,
            quantum_efficiency: 1.0,
            levels: Some(DoubletStructure::siv()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("gamma_rad", self.gamma_rad)?;
        positive("lambda_F", self.lambda_f)?;
        positive("number_density", self.number_density)?;
        if !(self.quantum_efficiency > 0.0 && self.quantum_efficiency <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "quantum efficiency must lie in (0, 1], got {}",
                self.quantum_efficiency
            )));
        }
        if let Some(levels) = &self.levels {
            levels.validate()?;
        }
        Ok(())
    }

    /// λ_F* under the worst-case assumption that every non-radiative decay heats.
    pub fn lambda_f_star(&self) -> Result<f64> {
        effective_mean_wavelength(self.lambda_f, self.quantum_efficiency)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamParams {
    /// W
    pub power: f64,
    /// m
    pub wavelength: f64,
    /// m
    pub spot_radius: f64,
}

impl BeamParams {
    pub fn validate(&self) -> Result<()> {
        positive("beam power", self.power)?;
        positive("beam wavelength", self.wavelength)?;
        positive("spot radius", self.spot_radius)
    }

    /// α_eff = π r_s².
    pub fn effective_area(&self) -> f64 {
        PI * self.spot_radius * self.spot_radius
    }
}

/// What brings the particle back towards ambient temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThermalLoad {
    /// Blackbody exchange only (levitated in vacuum).
    VacuumRadiative,
    /// Blackbody exchange plus convection into a liquid, `h_conv` in W·m⁻²·K⁻¹.
    LiquidConvective { h_conv: f64 },
}

impl ThermalLoad {
    pub fn h_conv(&self) -> f64 {
        match self {
            ThermalLoad::VacuumRadiative => 0.0,
            ThermalLoad::LiquidConvective { h_conv } => *h_conv,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleEnvironment {
    /// Particle diameter, m.
    pub diameter: f64,
    /// Beam path length inside the particle, m. `None` means the diameter.
    pub interaction_length: Option<f64>,
    pub emissivity: f64,
    /// K
    pub ambient_t: f64,
    pub load: ThermalLoad,
    pub solvent: Option<SolventModel>,
}

impl ParticleEnvironment {
    /// Levitated particle in vacuum at 295 K with unit emissivity.
    pub fn vacuum(diameter: f64) -> Self {
        ParticleEnvironment {
            diameter,
            interaction_length: None,
            emissivity: 1.0,
            ambient_t: 295.0,
            load: ThermalLoad::VacuumRadiative,
            solvent: None,
        }
    }

    /// Particle in D₂O with h_cv = 30 W·m⁻²·K⁻¹ at 295 K.
    pub fn heavy_water(diameter: f64) -> Self {
        ParticleEnvironment {
            load: ThermalLoad::LiquidConvective { h_conv: 30.0 },
            solvent: Some(SolventModel::heavy_water()),
            ..Self::vacuum(diameter)
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("diameter", self.diameter)?;
        positive("interaction length", self.interaction_length())?;
        positive("ambient temperature", self.ambient_t)?;
        if !(self.emissivity > 0.0 && self.emissivity <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "emissivity must lie in (0, 1], got {}",
                self.emissivity
            )));
        }
        if let ThermalLoad::LiquidConvective { h_conv } = self.load {
            positive("h_conv", h_conv)?;
        }
        if let Some(s) = &self.solvent {
            s.validate()?;
        }
        Ok(())
    }

    pub fn interaction_length(&self) -> f64 {
        self.interaction_length.unwrap_or(self.diameter)
    }

    /// A = π D².
    pub fn surface_area(&self) -> f64 {
        PI * self.diameter * self.diameter
    }

    /// Linearized load per kelvin of temperature difference, W/K:
    /// A (4 ε σ_B T³ + h_cv).
    pub fn load_coefficient(&self) -> f64 {
        self.surface_area() * self.load_per_area()
    }

    fn load_per_area(&self) -> f64 {
        4.0 * self.emissivity * STEFAN_BOLTZMANN * self.ambient_t.powi(3) + self.load.h_conv()
    }
}

/// Warnings attached to a result that is computed but of doubtful validity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WarnFlags {
    /// |ΔT| is large compared with T_amb; the linearized load is suspect.
    pub linearization: bool,
    /// The cold-Brownian-motion viscosity expansion is outside its comfortable range.
    pub expansion: bool,
}

impl WarnFlags {
    pub fn is_empty(&self) -> bool {
        !self.linearization && !self.expansion
    }

    pub fn label(&self) -> &'static str {
        match (self.linearization, self.expansion) {
            (false, false) => "none",
            (true, false) => "linearization",
            (false, true) => "expansion",
            (true, true) => "linearization+expansion",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoolingResult {
    /// W·m⁻²
    pub saturation_intensity: f64,
    /// W, positive when heat is extracted.
    pub cooling_power: f64,
    /// K, negative when the particle cools.
    pub delta_t: f64,
    /// m
    pub lambda_f_star: f64,
    /// D_CBM / D_amb, liquid environments only.
    pub chi: Option<f64>,
    pub flags: WarnFlags,
}

fn positive(what: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{what} must be positive, got {v:e}")))
    }
}

/// I_S = h c γ_rad / (λ σ_abs).
pub fn saturation_intensity(lambda: f64, sigma_abs: f64, gamma_rad: f64) -> Result<f64> {
    positive("wavelength", lambda)?;
    positive("gamma_rad", gamma_rad)?;
    if sigma_abs == 0.0 {
        return Err(Error::Domain(format!(
            "no absorption at {:.3} nm (sigma_abs = 0); saturation intensity is unbounded",
            lambda * 1e9
        )));
    }
    positive("sigma_abs", sigma_abs)?;
    Ok(HC * gamma_rad / (lambda * sigma_abs))
}

/// λ_F* = λ_F η / (2η − 1): all non-radiative decay heats the crystal.
pub fn effective_mean_wavelength(lambda_f: f64, quantum_efficiency: f64) -> Result<f64> {
    positive("lambda_F", lambda_f)?;
    if !(quantum_efficiency <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "quantum efficiency must not exceed 1, got {quantum_efficiency}"
        )));
    }
    if !(quantum_efficiency > 0.5) {
        return Err(Error::Domain(format!(
            "quantum efficiency {quantum_efficiency} <= 0.5: non-radiative heating outweighs \
             anti-Stokes cooling at every wavelength (lambda_F* diverges)"
        )));
    }
    if quantum_efficiency == 1.0 {
        return Ok(lambda_f);
    }
    Ok(lambda_f * quantum_efficiency / (2.0 * quantum_efficiency - 1.0))
}

/// λ_F* = [1/λ_F − κ/(h c γ_rad)]⁻¹ for a heating power κ per excited defect.
pub fn effective_mean_wavelength_from_kappa(lambda_f: f64, kappa: f64, gamma_rad: f64) -> Result<f64> {
    positive("lambda_F", lambda_f)?;
    positive("gamma_rad", gamma_rad)?;
    if !(kappa >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "heating kappa must be non-negative, got {kappa:e}"
        )));
    }
    let inverse = 1.0 / lambda_f - kappa / (HC * gamma_rad);
    if !(inverse > 0.0) {
        return Err(Error::Domain(format!(
            "heating kappa = {kappa:e} W reaches the emitted photon power h c gamma_rad / lambda_F = {:e} W",
            HC * gamma_rad / lambda_f
        )));
    }
    Ok(1.0 / inverse)
}

struct Evaluation {
    intensity: f64,
    lambda_f_star: f64,
    /// σ_abs / (1 + σ_se/σ_abs + α I_S / P)
    saturation_factor: f64,
}

fn evaluate_common(
    species: &DefectSpecies,
    beam: &BeamParams,
    env: &ParticleEnvironment,
    sigma_abs: f64,
    sigma_se: f64,
) -> Result<Evaluation> {
    species.validate()?;
    beam.validate()?;
    env.validate()?;
    if !(sigma_se >= 0.0 && sigma_se.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "sigma_se must be finite and non-negative, got {sigma_se:e}"
        )));
    }
    let lambda_f_star = species.lambda_f_star()?;
    let intensity = saturation_intensity(beam.wavelength, sigma_abs, species.gamma_rad)?;
    let denominator = 1.0 + sigma_se / sigma_abs + beam.effective_area() * intensity / beam.power;
    Ok(Evaluation {
        intensity,
        lambda_f_star,
        saturation_factor: sigma_abs / denominator,
    })
}

/// P_cool = N L α_eff I_S σ_abs (λ/λ_F* − 1) / (1 + σ_se/σ_abs + α_eff I_S / P).
pub fn cooling_power(
    species: &DefectSpecies,
    beam: &BeamParams,
    env: &ParticleEnvironment,
    sigma_abs: f64,
    sigma_se: f64,
) -> Result<f64> {
    let e = evaluate_common(species, beam, env, sigma_abs, sigma_se)?;
    Ok(power_from(species, beam, env, &e))
}

fn power_from(species: &DefectSpecies, beam: &BeamParams, env: &ParticleEnvironment, e: &Evaluation) -> f64 {
    species.number_density
        * env.interaction_length()
        * beam.effective_area()
        * e.intensity
        * e.saturation_factor
        * (beam.wavelength / e.lambda_f_star - 1.0)
}

/// Equilibrium temperature change of the particle, K (negative = cooling).
pub fn equilibrium_delta_t(
    species: &DefectSpecies,
    beam: &BeamParams,
    env: &ParticleEnvironment,
    sigma_abs: f64,
    sigma_se: f64,
) -> Result<f64> {
    let e = evaluate_common(species, beam, env, sigma_abs, sigma_se)?;
    Ok(delta_t_from(species, beam, env, &e))
}

fn delta_t_from(species: &DefectSpecies, beam: &BeamParams, env: &ParticleEnvironment, e: &Evaluation) -> f64 {
    // L/D is exactly 1 unless the interaction length is overridden
    let geometry = env.interaction_length() / env.diameter;
    let prefactor = species.number_density * beam.effective_area() * e.intensity * geometry
        / (PI * env.diameter * env.load_per_area());
    prefactor * e.saturation_factor * (1.0 - beam.wavelength / e.lambda_f_star)
}

/// All observables at one operating point, with validity flags.
pub fn evaluate(
    species: &DefectSpecies,
    beam: &BeamParams,
    env: &ParticleEnvironment,
    sigma_abs: f64,
    sigma_se: f64,
) -> Result<CoolingResult> {
    let e = evaluate_common(species, beam, env, sigma_abs, sigma_se)?;
    let cooling_power = power_from(species, beam, env, &e);
    let delta_t = delta_t_from(species, beam, env, &e);
    let mut flags = WarnFlags {
        linearization: delta_t.abs() / env.ambient_t > LINEARIZATION_LIMIT,
        expansion: false,
    };
    let chi = match (&env.load, &env.solvent) {
        (ThermalLoad::LiquidConvective { .. }, Some(solvent)) => {
            let chi = crate::brownian::diffusion_ratio(env.ambient_t, delta_t, solvent).ok();
            flags.expansion = crate::brownian::expansion_suspect(env.ambient_t, delta_t, solvent);
            Some(chi.unwrap_or(f64::NAN))
        }
        _ => None,
    };
    Ok(CoolingResult {
        saturation_intensity: e.intensity,
        cooling_power,
        delta_t,
        lambda_f_star: e.lambda_f_star,
        chi,
        flags,
    })
}

/// One wavelength of a sweep. Rows whose model evaluation fails keep the error
/// instead of aborting the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub wavelength: f64,
    pub sigma_abs: f64,
    pub sigma_se: f64,
    pub result: Result<CoolingResult>,
}

/// ΔT (and friends) across `lambda_grid` at fixed power and spot size.
///
/// Grid points are evaluated in parallel; rows come back in grid order.
pub fn sweep_delta_t(
    species: &DefectSpecies,
    env: &ParticleEnvironment,
    power: f64,
    spot_radius: f64,
    sigma_abs: &Spectrum,
    sigma_se: &Spectrum,
    lambda_grid: &[f64],
) -> Result<Vec<SweepRow>> {
    if lambda_grid.is_empty() {
        return Err(Error::InvalidArgument("wavelength grid is empty".into()));
    }
    for &w in lambda_grid {
        sigma_abs.interpolate(w)?;
        sigma_se.interpolate(w)?;
    }
    Ok(lambda_grid
        .par_iter()
        .map(|&wavelength| {
            let sa = sigma_abs.interpolate(wavelength).unwrap_or(f64::NAN);
            let se = sigma_se.interpolate(wavelength).unwrap_or(f64::NAN);
            let beam = BeamParams {
                power,
                wavelength,
                spot_radius,
            };
            SweepRow {
                wavelength,
                sigma_abs: sa,
                sigma_se: se,
                result: evaluate(species, &beam, env, sa, se),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const H: f64 = 6.62607015e-34;
    const C: f64 = 299792458.0;

    fn nv_example() -> (DefectSpecies, BeamParams, ParticleEnvironment) {
        let beam = BeamParams {
            power: 0.1,
            wavelength: 760e-9,
            spot_radius: 5e-6,
        };
        (DefectSpecies::nv(), beam, ParticleEnvironment::vacuum(20e-6))
    }

    #[test]
    fn saturation_intensity_hand_value() {
        // h c γ / (λ σ) = 1.98644586e-25 · 8.333e7 / (7.6e-7 · 1e-25)
        let got = saturation_intensity(760e-9, 1e-25, 8.333e7).unwrap();
        let hand = H * C * 8.333e7 / (760e-9 * 1e-25);
        assert!((got / hand - 1.0).abs() < 1e-14);
        assert!((got / 2.178e14 - 1.0).abs() < 1e-3, "{got:e}");
        let half = saturation_intensity(760e-9, 2e-25, 8.333e7).unwrap();
        assert!((half / got - 0.5).abs() < 1e-15);
        let triple = saturation_intensity(760e-9, 1e-25, 3.0 * 8.333e7).unwrap();
        assert!((triple / got - 3.0).abs() < 1e-14);
        assert!(matches!(saturation_intensity(760e-9, 0.0, 1e7), Err(Error::Domain(_))));
    }

    #[test]
    fn effective_wavelength_from_quantum_efficiency() {
        assert_eq!(effective_mean_wavelength(721e-9, 1.0).unwrap(), 721e-9);
        let w = effective_mean_wavelength(700e-9, 0.75).unwrap();
        assert!((w / (1.5 * 700e-9) - 1.0).abs() < 1e-15);
        assert!(matches!(effective_mean_wavelength(700e-9, 0.5), Err(Error::Domain(_))));
        assert!(matches!(effective_mean_wavelength(700e-9, 0.2), Err(Error::Domain(_))));
        assert!(effective_mean_wavelength(700e-9, 1.1).is_err());
        let near_pole = effective_mean_wavelength(700e-9, 0.5 + 1e-9).unwrap();
        assert!(near_pole > 1e-1);
    }

    #[test]
    fn effective_wavelength_from_kappa() {
        let gamma = 1.0 / 12e-9;
        let lf = 721e-9;
        assert_eq!(effective_mean_wavelength_from_kappa(lf, 0.0, gamma).unwrap(), lf);
        let pole = H * C * gamma / lf;
        let half = effective_mean_wavelength_from_kappa(lf, 0.5 * pole, gamma).unwrap();
        assert!((half / (2.0 * lf) - 1.0).abs() < 1e-12);
        assert!(matches!(
            effective_mean_wavelength_from_kappa(lf, pole, gamma),
            Err(Error::Domain(_))
        ));
        assert!(effective_mean_wavelength_from_kappa(lf, -1.0, gamma).is_err());
        // worst case: κ = γ_nrad h c / λ_F with γ_nrad = γ_rad (1 − η)/η
        for eta in [0.55, 0.6, 0.75, 0.9, 0.99] {
            let kappa = gamma * (1.0 - eta) / eta * H * C / lf;
            let a = effective_mean_wavelength_from_kappa(lf, kappa, gamma).unwrap();
            let b = effective_mean_wavelength(lf, eta).unwrap();
            assert!((a / b - 1.0).abs() < 1e-12, "eta={eta}");
        }
    }

    /// Independent factor-by-factor evaluation of the NV worked example.
    fn hand_nv_example() -> (f64, f64) {
        let n = 2.65e24;
        let d = 20e-6;
        let area = std::f64::consts::PI * 25e-12;
        let gamma = 1.0 / 12e-9;
        let (lam, lf, sa, se, p, t): (f64, f64, f64, f64, f64, f64) = (760e-9, 721e-9, 1e-25, 3e-24, 0.1, 295.0);
        let sigma_b = 5.670374419e-8;
        let is = H * C * gamma / (lam * sa);
        let den = 1.0 + se / sa + area * is / p;
        let p_cool = n * d * area * is * sa * (lam / lf - 1.0) / den;
        let dt = n * area * is / (4.0 * std::f64::consts::PI * d * sigma_b * t.powi(3)) * sa * (1.0 - lam / lf) / den;
        (p_cool, dt)
    }

    #[test]
    fn nv_worked_example() {
        let (species, beam, env) = nv_example();
        let (p_hand, dt_hand) = hand_nv_example();
        let p = cooling_power(&species, &beam, &env, 1e-25, 3e-24).unwrap();
        let dt = equilibrium_delta_t(&species, &beam, &env, 1e-25, 3e-24).unwrap();
        assert!((p / p_hand - 1.0).abs() < 1e-9, "{p:e} vs {p_hand:e}");
        assert!((dt / dt_hand - 1.0).abs() < 1e-9, "{dt} vs {dt_hand}");
        assert!((p / 2.866e-8 - 1.0).abs() < 2e-3, "{p:e}");
        assert!((dt / -3.917 - 1.0).abs() < 2e-3, "{dt}");
    }

    #[test]
    fn zero_at_effective_wavelength() {
        let (species, mut beam, env) = nv_example();
        beam.wavelength = species.lambda_f;
        assert_eq!(cooling_power(&species, &beam, &env, 1e-25, 3e-24).unwrap(), 0.0);
        assert_eq!(equilibrium_delta_t(&species, &beam, &env, 1e-25, 3e-24).unwrap(), 0.0);
    }

    #[test]
    fn convective_load_shrinks_delta_t() {
        let (species, beam, vac) = nv_example();
        let water = ParticleEnvironment {
            load: ThermalLoad::LiquidConvective { h_conv: 30.0 },
            ..vac.clone()
        };
        let a = equilibrium_delta_t(&species, &beam, &vac, 1e-25, 3e-24).unwrap();
        let b = equilibrium_delta_t(&species, &beam, &water, 1e-25, 3e-24).unwrap();
        let rad = 4.0 * 5.670374419e-8 * 295.0f64.powi(3);
        assert!((b / a - rad / (rad + 30.0)).abs() < 1e-9);
        assert!(b.abs() < a.abs());
    }

    #[test]
    fn power_saturation() {
        let (species, mut beam, env) = nv_example();
        let is = saturation_intensity(760e-9, 1e-25, species.gamma_rad).unwrap();
        beam.power = 1e3 * beam.effective_area() * is;
        let p1 = cooling_power(&species, &beam, &env, 1e-25, 3e-24).unwrap();
        beam.power *= 2.0;
        let p2 = cooling_power(&species, &beam, &env, 1e-25, 3e-24).unwrap();
        let limit =
            species.number_density * 20e-6 * beam.effective_area() * is * 1e-25 * (760.0 / 721.0 - 1.0) / (1.0 + 30.0);
        assert!(p1 < limit && p2 < limit);
        assert!((p2 - p1).abs() / p1 < 0.01);
        assert!((limit - p2) / limit < 1e-3);
    }

    #[test]
    fn interaction_length_override_scales_linearly() {
        let (species, beam, mut env) = nv_example();
        let base = evaluate(&species, &beam, &env, 1e-25, 3e-24).unwrap();
        env.interaction_length = Some(10e-6);
        let half = evaluate(&species, &beam, &env, 1e-25, 3e-24).unwrap();
        assert!((half.cooling_power / base.cooling_power - 0.5).abs() < 1e-12);
        assert!((half.delta_t / base.delta_t - 0.5).abs() < 1e-12);
    }

    #[test]
    fn low_quantum_efficiency_is_rejected() {
        let (mut species, beam, env) = nv_example();
        species.quantum_efficiency = 0.5;
        assert!(matches!(
            cooling_power(&species, &beam, &env, 1e-25, 3e-24),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn linearization_flag() {
        let (species, mut beam, env) = nv_example();
        let small = evaluate(&species, &beam, &env, 1e-25, 3e-24).unwrap();
        assert!(small.flags.is_empty());
        beam.power = 100.0;
        let big = evaluate(&species, &beam, &env, 1e-22, 3e-24).unwrap();
        assert!(big.delta_t.abs() > 59.0);
        assert!(big.flags.linearization);
        assert_eq!(big.flags.label(), "linearization");
    }

    #[test]
    fn sweep_rejects_empty_and_out_of_range_grids() {
        let s = Spectrum::new(
            vec![700e-9, 800e-9],
            vec![1e-25, 1e-25],
            crate::spectra::SpectrumKind::CrossSection,
        )
        .unwrap();
        let env = ParticleEnvironment::vacuum(20e-6);
        assert!(sweep_delta_t(&DefectSpecies::nv(), &env, 0.1, 5e-6, &s, &s, &[]).is_err());
        assert!(sweep_delta_t(&DefectSpecies::nv(), &env, 0.1, 5e-6, &s, &s, &[900e-9]).is_err());
    }

    #[test]
    fn sweep_marks_failed_rows() {
        let sa = Spectrum::new(
            vec![700e-9, 750e-9, 800e-9],
            vec![1e-25, 0.0, 1e-25],
            crate::spectra::SpectrumKind::CrossSection,
        )
        .unwrap();
        let se = Spectrum::new(
            vec![700e-9, 800e-9],
            vec![1e-24, 1e-24],
            crate::spectra::SpectrumKind::CrossSection,
        )
        .unwrap();
        let env = ParticleEnvironment::vacuum(20e-6);
        let rows = sweep_delta_t(
            &DefectSpecies::nv(),
            &env,
            0.1,
            5e-6,
            &sa,
            &se,
            &[720e-9, 750e-9, 780e-9],
        )
        .unwrap();
        assert!(rows[0].result.is_ok());
        assert!(rows[1].result.is_err());
        assert!(rows[2].result.is_ok());
    }

    fn valid_inputs() -> impl Strategy<Value = (DefectSpecies, BeamParams, ParticleEnvironment, f64, f64)> {
        (
            (1e6f64..1e10, 600e-9f64..800e-9, 1e21f64..1e26, 0.55f64..=1.0),
            (1e-4f64..10.0, 600e-9f64..1000e-9, 1e-6f64..5e-5),
            (
                1e-6f64..3e-4,
                0.1f64..=1.0,
                100.0f64..400.0,
                prop_oneof![Just(0.0), 1.0f64..100.0],
            ),
            (-28.0f64..-19.0, -28.0f64..-18.0),
        )
            .prop_map(|(sp, bm, en, (lsa, lse))| {
                let species = DefectSpecies {
                    name: "x".into(),
                    gamma_rad: sp.0,
                    lambda_f: sp.1,
                    number_density: sp.2,
                    quantum_efficiency: sp.3,
                    levels: None,
                };
                let beam = BeamParams {
                    power: bm.0,
                    wavelength: bm.1,
                    spot_radius: bm.2,
                };
                let env = ParticleEnvironment {
                    diameter: en.0,
                    interaction_length: None,
                    emissivity: en.1,
                    ambient_t: en.2,
                    load: if en.3 == 0.0 {
                        ThermalLoad::VacuumRadiative
                    } else {
                        ThermalLoad::LiquidConvective { h_conv: en.3 }
                    },
                    solvent: None,
                };
                (species, beam, env, 10f64.powf(lsa), 10f64.powf(lse))
            })
    }

    proptest! {
        #[test]
        fn sign_law_and_load_consistency((species, beam, env, sa, se) in valid_inputs()) {
            let r = evaluate(&species, &beam, &env, sa, se).unwrap();
            let detuning = beam.wavelength - r.lambda_f_star;
            prop_assert!(r.delta_t * detuning <= 0.0);
            prop_assert!(r.cooling_power * detuning >= 0.0);
            let via_load = -r.cooling_power / env.load_coefficient();
            if r.delta_t != 0.0 {
                prop_assert!((via_load / r.delta_t - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn more_power_never_reduces_cooling((species, beam, env, sa, se) in valid_inputs(), factor in 1.0f64..100.0) {
            let a = equilibrium_delta_t(&species, &beam, &env, sa, se).unwrap();
            let stronger = BeamParams { power: beam.power * factor, ..beam };
            let b = equilibrium_delta_t(&species, &stronger, &env, sa, se).unwrap();
            prop_assert!(b.abs() >= a.abs() * (1.0 - 1e-12));
        }

        #[test]
        fn lower_efficiency_is_worse((species, beam, env, sa, se) in valid_inputs(), drop in 0.01f64..0.4) {
            prop_assume!(beam.wavelength > species.lambda_f);
            let eta = species.quantum_efficiency.max(0.5 + drop + 1e-3);
            let better = DefectSpecies { quantum_efficiency: eta, ..species.clone() };
            let worse = DefectSpecies { quantum_efficiency: eta - drop, ..species };
            let a = equilibrium_delta_t(&better, &beam, &env, sa, se).unwrap();
            let b = equilibrium_delta_t(&worse, &beam, &env, sa, se).unwrap();
            prop_assert!(b > a);
        }
    }
}
