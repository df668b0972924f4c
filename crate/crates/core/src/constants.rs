//! Physical constants (CODATA 2018, SI), 12 significant digits where not exact.

/// Planck constant, J·s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Stefan-Boltzmann constant, W·m⁻²·K⁻⁴.
pub const STEFAN_BOLTZMANN: f64 = 5.670_374_419_18e-8;
/// Elementary charge, C (exact). Converts eV to J.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// h·c, J·m.
pub const HC: f64 = PLANCK * SPEED_OF_LIGHT;

/// One-line rendering used in output headers.
pub fn header_line() -> String {
    format!(
        "h={PLANCK:e} J s; c={SPEED_OF_LIGHT:e} m/s; k_B={BOLTZMANN:e} J/K; sigma_B={STEFAN_BOLTZMANN:e} W/(m^2 K^4)"
    )
}
