//! The `cryocool` command line.
//!
//! Exit status: 0 on success, 1 when the model has no solution (including a
//! sweep in which every point failed), 2 for usage, parse and I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::brownian::builtin_solvents;
use crate::datapath::{self, DATA_PATH_ENV};
use crate::error::{Error, Result};
use crate::scenarios::{
    builtin_scenario, figure, run_figure, run_scenario, Axis, Grid, Scenario, SpectrumRef, BUILTIN_SCENARIOS, FIGURES,
    KEYS,
};
use crate::spectra::{
    absorption_from_emission, bundled_names, bundled_spectrum, calibrate_absorption, fl_emission_cross_section,
    mean_fluorescence_wavelength, read_spectrum, render_spectrum, CalibrationAnchor, DoubletStructure, Spectrum,
    SpectrumKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MODEL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cryocool",
    version,
    about = "Anti-Stokes optical cryocooling of NV/SiV-doped diamond microcrystals",
    after_help = "Data files (spectra, solvents) are also looked up in the directories listed in CRYOCOOL_DATA_PATH."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep a scenario and write the results as CSV.
    Sweep(SweepArgs),
    /// Spectrum utilities.
    #[command(subcommand)]
    Spectrum(SpectrumCommand),
    /// Regenerate the data behind a named figure.
    Figure(FigureArgs),
    /// List built-in scenarios, figures, spectra, solvents or scenario keys.
    List {
        #[arg(value_parser = ["all", "scenarios", "figures", "spectra", "solvents", "keys"], default_value = "all")]
        what: String,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Built-in scenario name.
    #[arg(long, conflicts_with = "scenario_file", required_unless_present = "scenario_file")]
    scenario: Option<String>,
    /// Scenario file (`section.key = value` lines, or a CSV written by this tool).
    #[arg(long)]
    scenario_file: Option<PathBuf>,
    /// Power grid, W (`start:stop:count` or one value; mW/uW suffixes accepted).
    #[arg(long)]
    power: Option<String>,
    /// Wavelength grid. Bare numbers of at least 1e-3 are nm, smaller ones meters;
    /// `nm`, `um` and `m` suffixes accepted.
    #[arg(long)]
    lambda: Option<String>,
    /// Diameter grid, m (`um`/`nm` suffixes accepted).
    #[arg(long)]
    diameter: Option<String>,
    /// Quantum-efficiency grid.
    #[arg(long)]
    qe: Option<String>,
    /// Override any scenario key, e.g. `--set env.ambient_T_K=300`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Write the CSV here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Worker threads (results do not depend on this).
    #[arg(long)]
    threads: Option<usize>,
    /// Print the resolved scenario text and exit.
    #[arg(long)]
    print_scenario: bool,
}

#[derive(Subcommand, Debug)]
enum SpectrumCommand {
    /// Print the mean emission wavelength λ_F of a spectrum.
    MeanLambda {
        /// `bundled:<name>`, `file:<path>` or a path.
        spectrum: String,
    },
    /// Derive the SiV absorption cross section from photoluminescence via
    /// Füchtbauer–Ladenburg and McCumber.
    DeriveSivAbs {
        /// Photoluminescence (or emission cross-section) spectrum.
        #[arg(long, default_value = "bundled:siv-pl")]
        pl: String,
        /// Temperature, K.
        #[arg(long = "T", default_value_t = 295.0)]
        temperature: f64,
        /// Zero-phonon line (same length units as sweep --lambda).
        #[arg(long, default_value = "738e-9")]
        zpl: String,
        /// Radiative lifetime, s.
        #[arg(long, default_value_t = 1.2e-9)]
        tau: f64,
        /// Refractive index.
        #[arg(long, default_value_t = 2.4)]
        n: f64,
        /// Lower-doublet splitting, eV.
        #[arg(long, default_value_t = 0.2e-3)]
        delta_e_lower: f64,
        /// Upper-doublet splitting, eV.
        #[arg(long, default_value_t = 1.05e-3)]
        delta_e_upper: f64,
        /// Also write the emission cross section here.
        #[arg(long)]
        emission_output: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scale a relative absorption signal to absolute cross sections.
    CalibrateNvAbs {
        /// Relative-signal spectrum file.
        file: PathBuf,
        /// `wavelength:cross_section_m2` (wavelength as for sweep --lambda).
        #[arg(long, default_value = "532e-9:0.95e-20")]
        anchor: String,
        /// Pump power of the reference measurement, W.
        #[arg(long, default_value_t = 200e-6)]
        ref_power: f64,
        /// Pump power of the relative measurement, W.
        #[arg(long, default_value_t = 200e-6)]
        measurement_power: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct FigureArgs {
    /// fig2a, fig2b, fig2c, fig2d, fig4a, fig4b, fig6a or fig6b.
    name: String,
    /// Write one CSV per curve into this directory instead of standard output.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().ansi().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Sweep(a) => sweep(a, stdout, stderr),
        Command::Spectrum(c) => spectrum(c, stdout),
        Command::Figure(a) => cmd_figure(&a, stdout, stderr),
        Command::List { what } => list(&what, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_model_domain() {
                EXIT_MODEL
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match threads {
        None => f(),
        Some(0) => Err(Error::InvalidArgument("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start {n} threads: {e}")))?
            .install(f),
    }
}

fn emit(text: &str, output: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path.display(), e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("standard output", e)),
    }
}

/// Parses a length with an optional unit suffix. Without a suffix, values of at
/// least 1e-3 are taken as nanometers when `bare_nm` is set.
pub fn parse_length(text: &str, bare_nm: bool) -> Result<f64> {
    let t = text.trim();
    let units = [("nm", 1e9), ("um", 1e6), ("µm", 1e6), ("mm", 1e3), ("m", 1.0)];
    let (number, scale) = units
        .iter()
        .find_map(|(suffix, scale)| t.strip_suffix(suffix).map(|n| (n, Some(*scale))))
        .unwrap_or((t, None));
    let v: f64 = number
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("'{t}' is not a length")))?;
    Ok(match scale {
        Some(per_meter) => v / per_meter,
        None if bare_nm && v.abs() >= 1e-3 => v / 1e9,
        None => v,
    })
}

fn parse_power(text: &str) -> Result<f64> {
    let t = text.trim();
    let units = [("mW", 1e3), ("uW", 1e6), ("µW", 1e6), ("W", 1.0)];
    let (number, scale) = units
        .iter()
        .find_map(|(suffix, scale)| t.strip_suffix(suffix).map(|n| (n, *scale)))
        .unwrap_or((t, 1.0));
    number
        .trim()
        .parse::<f64>()
        .map(|v| v / scale)
        .map_err(|_| Error::InvalidArgument(format!("'{t}' is not a power")))
}

/// `start:stop:count` or a single value, each endpoint converted by `value`.
pub fn parse_grid(text: &str, value: impl Fn(&str) -> Result<f64>) -> Result<Grid> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(Grid::single(value(v)?)),
        [a, b, n] => {
            let count = n
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("'{}' is not a point count", n.trim())))?;
            Grid::new(value(a)?, value(b)?, count)
        }
        _ => Err(Error::InvalidArgument(format!(
            "grid '{text}' must be 'value' or 'start:stop:count'"
        ))),
    }
}

type ValueParser = dyn Fn(&str) -> Result<f64>;

fn sweep(a: SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let scenario = match (&a.scenario, &a.scenario_file) {
        (Some(name), _) => builtin_scenario(name)?,
        (None, Some(path)) => Scenario::read(datapath::resolve(path))?,
        (None, None) => return Err(Error::InvalidArgument("give --scenario or --scenario-file".into())),
    };
    let mut overrides: Vec<(String, String)> = Vec::new();
    let axes: [(Axis, &Option<String>, &ValueParser); 4] = [
        (Axis::Diameter, &a.diameter, &|t| parse_length(t, false)),
        (Axis::Power, &a.power, &parse_power),
        (Axis::QuantumEfficiency, &a.qe, &|t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("'{}' is not a number", t.trim())))
        }),
        (Axis::Wavelength, &a.lambda, &|t| parse_length(t, true)),
    ];
    for (axis, flag, conv) in axes {
        if let Some(text) = flag {
            let grid = parse_grid(text, conv).map_err(|e| Error::InvalidArgument(format!("{}: {e}", axis.key())))?;
            overrides.push((axis.key().to_string(), grid.to_string()));
        }
    }
    for kv in &a.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("--set expects KEY=VALUE, got '{kv}'")))?;
        overrides.push((k.trim().to_string(), v.trim().to_string()));
    }

    if a.print_scenario {
        emit(
            &scenario.with_overrides(&overrides)?.to_text(),
            a.output.as_deref(),
            stdout,
        )?;
        return Ok(EXIT_OK);
    }
    let table = with_threads(a.threads, || run_scenario(&scenario, &overrides))?;
    emit(&table.to_csv(), a.output.as_deref(), stdout)?;
    let _ = writeln!(stderr, "summary: {}", table.summary_line());
    Ok(if table.ok_count() == 0 { EXIT_MODEL } else { EXIT_OK })
}

fn load_spectrum(reference: &str) -> Result<Spectrum> {
    match reference.parse::<SpectrumRef>() {
        Ok(SpectrumRef::Bundled(name)) => bundled_spectrum(&name),
        Ok(SpectrumRef::File(path)) => read_spectrum(datapath::resolve(&path)),
        Err(_) if !reference.starts_with("bundled:") => read_spectrum(datapath::resolve(Path::new(reference))),
        Err(e) => Err(e),
    }
}

fn spectrum(c: SpectrumCommand, stdout: &mut dyn Write) -> Result<i32> {
    match c {
        SpectrumCommand::MeanLambda { spectrum } => {
            let s = load_spectrum(&spectrum)?;
            let mean = mean_fluorescence_wavelength(&s)?;
            writeln!(stdout, "{:.3} nm", mean * 1e9).map_err(|e| Error::io("standard output", e))?;
        }
        SpectrumCommand::DeriveSivAbs {
            pl,
            temperature,
            zpl,
            tau,
            n,
            delta_e_lower,
            delta_e_upper,
            emission_output,
            output,
        } => {
            let source = load_spectrum(&pl)?;
            let emission = match source.kind() {
                SpectrumKind::Intensity => fl_emission_cross_section(&source, tau, n)?,
                SpectrumKind::CrossSection => source,
            };
            let levels = DoubletStructure::new(delta_e_lower, delta_e_upper, 2, 2, parse_length(&zpl, true)?)?;
            let absorption = absorption_from_emission(&emission, temperature, &levels)?;
            if let Some(path) = &emission_output {
                emit(&render_spectrum(&emission), Some(path), stdout)?;
            }
            emit(&render_spectrum(&absorption), output.as_deref(), stdout)?;
        }
        SpectrumCommand::CalibrateNvAbs {
            file,
            anchor,
            ref_power,
            measurement_power,
            output,
        } => {
            let (w, s) = anchor
                .split_once(':')
                .ok_or_else(|| Error::InvalidArgument(format!("--anchor expects LAMBDA:SIGMA, got '{anchor}'")))?;
            let sigma: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("'{}' is not a cross section", s.trim())))?;
            let anchor = CalibrationAnchor {
                ref_wavelength: parse_length(w, true)?,
                ref_cross_section: sigma,
                ref_power,
                measurement_power,
            };
            let relative = read_spectrum(datapath::resolve(&file))?;
            let calibrated = calibrate_absorption(&relative, &anchor)?;
            emit(&render_spectrum(&calibrated), output.as_deref(), stdout)?;
        }
    }
    Ok(EXIT_OK)
}

fn file_label(label: &str) -> String {
    label
        .chars()
        .filter_map(|c| match c {
            '=' => None,
            c if c.is_ascii_alphanumeric() || c == '.' || c == '-' => Some(c),
            _ => Some('_'),
        })
        .collect()
}

fn cmd_figure(a: &FigureArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let fig = figure(&a.name)?;
    let curves = with_threads(a.threads, || run_figure(&a.name))?;
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display(), e))?;
    }
    let mut any_ok = false;
    for (curve, table) in &curves {
        any_ok |= table.ok_count() > 0;
        let text = format!(
            "# figure: {}: {}\n# curve: {}\n{}",
            fig.name,
            fig.description,
            curve.label,
            table.to_csv()
        );
        match &a.out_dir {
            Some(dir) => {
                let path = dir.join(format!("{}_{}.csv", fig.name, file_label(&curve.label)));
                emit(&text, Some(&path), stdout)?;
                let _ = writeln!(stderr, "wrote {}", path.display());
            }
            None => emit(&text, None, stdout)?,
        }
        let _ = writeln!(stderr, "{} {}: {}", fig.name, curve.label, table.summary_line());
    }
    Ok(if any_ok { EXIT_OK } else { EXIT_MODEL })
}

fn list(what: &str, stdout: &mut dyn Write) -> Result<i32> {
    let mut out = String::new();
    let all = what == "all";
    let mut section = |title: &str, items: Vec<String>| {
        if all {
            out.push_str(&format!("{title}:\n"));
            for i in items {
                out.push_str(&format!("  {i}\n"));
            }
        } else {
            for i in items {
                out.push_str(&format!("{i}\n"));
            }
        }
    };
    if all || what == "scenarios" {
        section("scenarios", BUILTIN_SCENARIOS.iter().map(|s| s.to_string()).collect());
    }
    if all || what == "figures" {
        let items = FIGURES
            .iter()
            .map(|f| figure(f).map(|fig| format!("{f}  {}", fig.description)))
            .collect::<Result<Vec<_>>>()?;
        section("figures", items);
    }
    if all || what == "spectra" {
        section(
            "spectra",
            bundled_names().iter().map(|n| format!("bundled:{n}")).collect(),
        );
    }
    if all || what == "solvents" {
        section(
            "solvents",
            builtin_solvents()
                .iter()
                .map(|s| {
                    format!(
                        "{}  eta_inf={:e} Pa s, A={} K, T_VF={} K",
                        s.name, s.eta_infinity, s.a_vogel, s.t_vf
                    )
                })
                .collect(),
        );
    }
    if all || what == "keys" {
        section("scenario keys", KEYS.iter().map(|k| k.to_string()).collect());
    }
    if all {
        let dirs = datapath::search_dirs();
        out.push_str(&format!(
            "{DATA_PATH_ENV}: {}\n",
            if dirs.is_empty() {
                "(unset)".to_string()
            } else {
                dirs.iter()
                    .map(|d| d.display().to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            }
        ));
    }
    emit(&out, None, stdout)?;
    Ok(EXIT_OK)
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = run(std::env::args_os(), &mut out, &mut stderr.lock());
    if out.flush().is_err() {
        return EXIT_USAGE;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("cryocool").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn length_units() {
        assert_eq!(parse_length("760", true).unwrap(), 760e-9);
        assert_eq!(parse_length("760e-9", true).unwrap(), 760e-9);
        assert_eq!(parse_length("0.76um", true).unwrap(), 0.76e-6);
        assert_eq!(parse_length("10e-6", false).unwrap(), 10e-6);
        assert_eq!(parse_length("10um", false).unwrap(), 10e-6);
        assert!(parse_length("ten", true).is_err());
        assert_eq!(parse_power("100mW").unwrap(), 0.1);
        let g = parse_grid("722:800:79", |t| parse_length(t, true)).unwrap();
        assert_eq!(g.count, 79);
        assert_eq!(g.stop, 800e-9);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["sweep"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["sweep", "--scenario", "nope"]).0, EXIT_USAGE);
        assert_eq!(
            run_args(&["sweep", "--scenario", "nv-vacuum", "--lambda", "800:700:3"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["sweep", "--scenario", "nv-vacuum", "--set", "beam.nope=1"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_args(&["figure", "fig9"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn whole_grid_failure_exits_1() {
        let (code, out, err) = run_args(&[
            "sweep",
            "--scenario",
            "nv-vacuum",
            "--lambda",
            "760",
            "--qe",
            "0.3:0.5:3",
        ]);
        assert_eq!(code, EXIT_MODEL);
        assert!(out.contains("no-result"));
        assert!(err.contains("no point has a solution"));
    }

    #[test]
    fn list_names_everything() {
        let (code, out, _) = run_args(&["list"]);
        assert_eq!(code, 0);
        for name in ["nv-vacuum", "fig6b", "bundled:siv-pl", "D2O", "beam.power_W"] {
            assert!(out.contains(name), "{name}");
        }
    }
}
