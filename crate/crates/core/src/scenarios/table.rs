use std::fmt::Write as _;
use std::path::Path;

use crate::constants;
use crate::cooling::CoolingResult;
use crate::error::{Error, Result};

use super::Scenario;

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    /// m
    pub wavelength: f64,
    /// W
    pub power: f64,
    /// m
    pub diameter: f64,
    pub quantum_efficiency: f64,
    pub sigma_abs: f64,
    pub sigma_se: f64,
    pub result: Result<CoolingResult>,
}

/// The coldest point of a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub row: usize,
    pub delta_t: f64,
    pub wavelength: f64,
    pub power: f64,
    pub diameter: f64,
    pub quantum_efficiency: f64,
}

/// Sweep results plus enough header text to rerun them.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub scenario_name: String,
    /// Free-form `# ` header lines (without the marker).
    pub notes: Vec<String>,
    /// Canonical scenario text, written as `#@ ` lines.
    pub scenario_text: String,
    /// Whether a diffusion-ratio column is present (liquid with a solvent).
    pub has_chi: bool,
    pub rows: Vec<TableRow>,
}

const BASE_COLUMNS: [&str; 10] = [
    "lambda_nm",
    "power_W",
    "diameter_m",
    "quantum_efficiency",
    "sigma_abs_m2",
    "sigma_se_m2",
    "I_S_W_m2",
    "P_cool_W",
    "delta_T_K",
    "lambda_F_star_nm",
];

impl OutputTable {
    pub(crate) fn new(s: &Scenario, abs_origin: &str, se_origin: &str, rows: Vec<TableRow>) -> Self {
        let notes = vec![
            format!("cryocool {}", env!("CARGO_PKG_VERSION")),
            format!("scenario: {}", s.name),
            format!("constants: {}", constants::header_line()),
            format!(
                "ambient temperature: {} K (295 K is the room-temperature default)",
                s.env.ambient_t
            ),
            format!("sigma_abs: {} [{abs_origin}]", s.sigma_abs),
            format!("sigma_se: {} [{se_origin}]", s.sigma_se),
            "rows with status=no-result have no physical solution (e.g. quantum efficiency <= 0.5)".into(),
        ];
        OutputTable {
            scenario_name: s.name.clone(),
            notes,
            scenario_text: s.to_text(),
            has_chi: s.env.solvent.is_some() && s.env.load.h_conv() > 0.0,
            rows,
        }
    }

    pub fn columns(&self) -> Vec<&'static str> {
        let mut cols = BASE_COLUMNS.to_vec();
        if self.has_chi {
            cols.push("chi");
        }
        cols.extend(["warn_flags", "status"]);
        cols
    }

    pub fn ok_count(&self) -> usize {
        self.rows.iter().filter(|r| r.result.is_ok()).count()
    }

    /// Row with the lowest ΔT (first one on ties), if any row succeeded.
    pub fn summary(&self) -> Option<Summary> {
        let mut best: Option<Summary> = None;
        for (i, r) in self.rows.iter().enumerate() {
            let Ok(res) = &r.result else { continue };
            if best.is_none_or(|b| res.delta_t < b.delta_t) {
                best = Some(Summary {
                    row: i,
                    delta_t: res.delta_t,
                    wavelength: r.wavelength,
                    power: r.power,
                    diameter: r.diameter,
                    quantum_efficiency: r.quantum_efficiency,
                });
            }
        }
        best
    }

    pub fn summary_line(&self) -> String {
        let counts = format!("{} of {} points evaluated", self.ok_count(), self.rows.len());
        match self.summary() {
            Some(b) => format!(
                "min delta_T_K={:.6e} at lambda_nm={:.4}, power_W={:e}, diameter_m={:e}, quantum_efficiency={}; {counts}",
                b.delta_t,
                b.wavelength * 1e9,
                b.power,
                b.diameter,
                b.quantum_efficiency
            ),
            None => format!("no point has a solution; {counts}"),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for n in &self.notes {
            let _ = writeln!(out, "# {n}");
        }
        for line in self.scenario_text.lines() {
            let _ = writeln!(out, "#@ {line}");
        }
        out.push_str(&self.columns().join(","));
        out.push('\n');
        let nan = f64::NAN;
        for r in &self.rows {
            let mut cells: Vec<String> = [
                r.wavelength * 1e9,
                r.power,
                r.diameter,
                r.quantum_efficiency,
                r.sigma_abs,
                r.sigma_se,
            ]
            .iter()
            .map(|v| num(*v))
            .collect();
            match &r.result {
                Ok(res) => {
                    cells.extend(
                        [
                            res.saturation_intensity,
                            res.cooling_power,
                            res.delta_t,
                            res.lambda_f_star * 1e9,
                        ]
                        .map(num),
                    );
                    if self.has_chi {
                        cells.push(num(res.chi.unwrap_or(nan)));
                    }
                    cells.push(res.flags.label().to_string());
                    cells.push("ok".into());
                }
                Err(_) => {
                    let blanks = if self.has_chi { 5 } else { 4 };
                    cells.extend(std::iter::repeat_n(num(nan), blanks));
                    cells.push("none".into());
                    cells.push("no-result".into());
                }
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        let _ = writeln!(out, "# summary: {}", self.summary_line());
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()).map_err(|e| Error::io(path.display(), e))
    }
}

fn num(v: f64) -> String {
    format!("{v:.9e}")
}

#[cfg(test)]
mod tests {
    use super::super::{builtin_scenario, run_scenario, Scenario};

    #[test]
    fn csv_shape_and_rerun_header() {
        let s = builtin_scenario("nv-water").unwrap();
        let t = run_scenario(&s, &[("sweep.wavelength_m", "7.5e-7:7.7e-7:5")]).unwrap();
        assert!(t.has_chi);
        let csv = t.to_csv();
        let header = csv.lines().find(|l| l.starts_with("lambda_nm")).unwrap();
        let width = header.split(',').count();
        assert_eq!(width, 13);
        let data: Vec<&str> = csv
            .lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("lambda"))
            .collect();
        assert_eq!(data.len(), 5);
        assert!(data.iter().all(|l| l.split(',').count() == width));
        assert!(csv.lines().last().unwrap().starts_with("# summary: min delta_T_K="));

        let again = Scenario::parse(&csv, "csv").unwrap();
        assert_eq!(again.to_text(), t.scenario_text);
        let rerun = run_scenario(&again, &[] as &[(&str, &str)]).unwrap();
        assert_eq!(rerun.to_csv(), csv);
    }

    #[test]
    fn failed_rows_are_nan() {
        let s = builtin_scenario("nv-vacuum").unwrap();
        let t = run_scenario(
            &s,
            &[("sweep.wavelength_m", "7.6e-7"), ("species.quantum_efficiency", "0.5")],
        )
        .unwrap();
        assert_eq!(t.ok_count(), 0);
        assert!(t.summary().is_none());
        let csv = t.to_csv();
        assert!(csv.contains("NaN,NaN,NaN,NaN,none,no-result"));
        assert!(csv.contains("no point has a solution"));
    }
}
