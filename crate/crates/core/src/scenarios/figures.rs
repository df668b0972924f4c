//! Sweeps behind the published cooling figures, one table per plotted curve.
//!
//! Curve powers and grids are not fully stated in the captions; the values here
//! are reconstructions chosen to span the plotted axes.

use crate::error::{Error, Result};

use super::{builtin_scenario, run_scenario, OutputTable};

/// Names accepted by [`figure`].
pub const FIGURES: [&str; 8] = ["fig2a", "fig2b", "fig2c", "fig2d", "fig4a", "fig4b", "fig6a", "fig6b"];

/// One curve (or surface) of a figure: a scenario plus overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub scenario: &'static str,
    pub overrides: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub name: &'static str,
    pub description: &'static str,
    pub curves: Vec<Curve>,
}

fn curve(label: impl Into<String>, scenario: &'static str, overrides: &[(&str, &str)]) -> Curve {
    Curve {
        label: label.into(),
        scenario,
        overrides: overrides.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
    }
}

fn power_curves(scenario: &'static str, lambda: &str, powers: &[&str]) -> Vec<Curve> {
    powers
        .iter()
        .map(|p| {
            curve(
                format!("P={p}W"),
                scenario,
                &[("beam.power_W", p), ("sweep.wavelength_m", lambda)],
            )
        })
        .collect()
}

pub fn figure(name: &str) -> Result<Figure> {
    const NV_LAMBDA: &str = "7e-7:8.5e-7:301";
    const SIV_LAMBDA: &str = "7.2e-7:8.2e-7:201";
    const QE: &str = "0.55:1:46";
    let (description, curves) = match name {
        "fig2a" | "fig2c" => (
            if name == "fig2a" {
                "NV, vacuum, 20 um: delta_T vs wavelength for three powers"
            } else {
                "NV, vacuum, 20 um: P_cool vs wavelength for three powers"
            },
            power_curves("nv-vacuum", NV_LAMBDA, &["0.01", "0.1", "1"]),
        ),
        "fig2b" | "fig2d" => (
            if name == "fig2b" {
                "NV, vacuum, 20 um, 1 W: delta_T over (quantum efficiency, wavelength)"
            } else {
                "NV, vacuum, 20 um, 1 W: P_cool over (quantum efficiency, wavelength)"
            },
            vec![curve(
                "P=1W",
                "nv-vacuum",
                &[
                    ("beam.power_W", "1"),
                    ("sweep.quantum_efficiency", QE),
                    ("sweep.wavelength_m", "7e-7:8.5e-7:151"),
                ],
            )],
        ),
        "fig4a" => (
            "SiV, vacuum, 20 um: delta_T vs wavelength for three powers",
            power_curves("siv-vacuum", SIV_LAMBDA, &["1e-5", "1e-4", "1e-3"]),
        ),
        "fig4b" => (
            "SiV, vacuum, 20 um, 0.1 mW: delta_T over (quantum efficiency, wavelength)",
            vec![curve(
                "P=1e-4W",
                "siv-vacuum",
                &[
                    ("beam.power_W", "1e-4"),
                    ("sweep.quantum_efficiency", QE),
                    ("sweep.wavelength_m", "7.2e-7:8.2e-7:101"),
                ],
            )],
        ),
        "fig6a" | "fig6b" => (
            if name == "fig6a" {
                "NV in D2O, 1 W: delta_T over (diameter, wavelength)"
            } else {
                "NV in D2O, 1 W: diffusion ratio chi over (diameter, wavelength)"
            },
            vec![curve(
                "P=1W",
                "nv-water",
                &[
                    ("beam.power_W", "1"),
                    ("sweep.diameter_m", "1e-5:2.5e-4:25"),
                    ("sweep.wavelength_m", "7.22e-7:8e-7:79"),
                ],
            )],
        ),
        _ => {
            return Err(Error::UnknownName {
                kind: "figure",
                name: name.to_string(),
                valid: FIGURES.join(", "),
            })
        }
    };
    let name = FIGURES.iter().copied().find(|f| *f == name).expect("matched above");
    Ok(Figure {
        name,
        description,
        curves,
    })
}

/// Runs every curve of a figure, in curve order.
pub fn run_figure(name: &str) -> Result<Vec<(Curve, OutputTable)>> {
    let fig = figure(name)?;
    fig.curves
        .into_iter()
        .map(|c| {
            let table = run_scenario(&builtin_scenario(c.scenario)?, &c.overrides)?;
            Ok((c, table))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_figure_is_defined() {
        for name in FIGURES {
            let f = figure(name).unwrap();
            assert!(!f.curves.is_empty());
            for c in &f.curves {
                let s = builtin_scenario(c.scenario).unwrap();
                s.with_overrides(&c.overrides).unwrap();
            }
        }
        assert!(matches!(figure("fig3"), Err(Error::UnknownName { .. })));
    }

    #[test]
    fn fig2a_has_three_curves_crossing_at_lambda_f() {
        let curves = run_figure("fig2a").unwrap();
        assert_eq!(curves.len(), 3);
        for (_, t) in &curves {
            let below = t.rows.iter().filter(|r| r.wavelength < 721e-9);
            let above = t.rows.iter().filter(|r| r.wavelength > 721e-9);
            assert!(below.into_iter().all(|r| r.result.as_ref().unwrap().delta_t > 0.0));
            assert!(above.into_iter().all(|r| r.result.as_ref().unwrap().delta_t < 0.0));
        }
    }
}
