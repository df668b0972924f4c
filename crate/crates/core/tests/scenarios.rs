use proptest::prelude::*;

use cryocool::scenarios::{builtin_scenario, run_scenario, Scenario, BUILTIN_SCENARIOS};

const NONE: &[(&str, &str)] = &[];

#[test]
fn builtin_parameters() {
    let nv = builtin_scenario("nv-vacuum").unwrap();
    assert_eq!(nv.species.number_density, 2.65e24);
    assert_eq!(nv.env.diameter, 20e-6);
    assert_eq!(nv.beam.spot_radius, 5e-6);
    assert_eq!(nv.species.quantum_efficiency, 1.0);
    assert_eq!(nv.env.ambient_t, 295.0);

    let siv = builtin_scenario("siv-vacuum").unwrap();
    assert_eq!(siv.species.number_density, 2.65e23);
    assert!((1.0 / siv.species.gamma_rad - 1.2e-9).abs() < 1e-24);
    assert_eq!(siv.species.lambda_f, 741e-9);

    let water = builtin_scenario("nv-water").unwrap();
    assert_eq!(water.env.load.h_conv(), 30.0);
    assert_eq!(water.env.solvent.as_ref().unwrap().name, "D2O");

    let err = builtin_scenario("siv-water").unwrap_err().to_string();
    for name in BUILTIN_SCENARIOS {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn empty_overrides_equal_defaults() {
    for name in BUILTIN_SCENARIOS {
        let s = builtin_scenario(name).unwrap();
        let a = run_scenario(&s, NONE).unwrap().to_csv();
        let b = run_scenario(&builtin_scenario(name).unwrap(), NONE).unwrap().to_csv();
        assert_eq!(a, b);
    }
}

#[test]
fn water_cooling_weakens_with_diameter() {
    let s = builtin_scenario("nv-water").unwrap();
    let t = run_scenario(
        &s,
        &[("sweep.wavelength_m", "7.6e-7"), ("sweep.diameter_m", "1e-5:2.5e-4:25")],
    )
    .unwrap();
    let pick = |d: f64| {
        t.rows
            .iter()
            .find(|r| (r.diameter - d).abs() < 1e-12)
            .unwrap()
            .result
            .as_ref()
            .copied()
            .unwrap()
    };
    let (a, b, c) = (pick(10e-6), pick(50e-6), pick(250e-6));
    assert!(a.delta_t.abs() > b.delta_t.abs() && b.delta_t.abs() > c.delta_t.abs());
    assert!(a.chi.unwrap() < b.chi.unwrap() && b.chi.unwrap() < c.chi.unwrap() && c.chi.unwrap() < 1.0);
}

#[test]
fn spectrum_file_references_resolve() {
    let dir = std::env::temp_dir().join(format!("cryocool-scn-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let se = dir.join("se.csv");
    std::fs::write(&se, "# kind=cross_section_m2\n700,1e-21\n800,1e-21\n").unwrap();
    let s = builtin_scenario("nv-vacuum").unwrap();
    let t = run_scenario(
        &s,
        &[
            ("spectra.sigma_se", format!("file:{}", se.display()).as_str()),
            ("sweep.wavelength_m", "7.5e-7"),
        ],
    )
    .unwrap();
    assert_eq!(t.rows[0].sigma_se, 1e-21);
    assert!(run_scenario(&s, &[("spectra.sigma_abs", "file:/nonexistent/abs.csv")]).is_err());
}

fn arb_overrides() -> impl Strategy<Value = Vec<(String, String)>> {
    (
        1e-3f64..10.0,
        1e-6f64..1e-3,
        0.51f64..1.0,
        200.0f64..400.0,
        1e-6f64..2e-5,
        prop::option::of((1usize..50, 1e-9f64..1e-7)),
    )
        .prop_map(|(p, d, q, t, r, grid)| {
            let mut v = vec![
                ("beam.power_W".to_string(), p.to_string()),
                ("env.diameter_m".to_string(), d.to_string()),
                ("species.quantum_efficiency".to_string(), q.to_string()),
                ("env.ambient_T_K".to_string(), t.to_string()),
                ("beam.spot_radius_m".to_string(), r.to_string()),
            ];
            if let Some((n, span)) = grid {
                v.push((
                    "sweep.wavelength_m".into(),
                    format!("{:e}:{:e}:{}", 7.3e-7, 7.3e-7 + span, n + 1),
                ));
            }
            v
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip_is_a_fixed_point(
        name in prop::sample::select(BUILTIN_SCENARIOS.to_vec()),
        overrides in arb_overrides(),
    ) {
        let s = builtin_scenario(name).unwrap().with_overrides(&overrides).unwrap();
        let text = s.to_text();
        let parsed = Scenario::parse(&text, "prop").unwrap();
        prop_assert_eq!(&parsed, &s);
        prop_assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn runs_are_deterministic_and_complete(
        name in prop::sample::select(BUILTIN_SCENARIOS.to_vec()),
        overrides in arb_overrides(),
    ) {
        let s = builtin_scenario(name).unwrap();
        let a = run_scenario(&s, &overrides).unwrap();
        let b = run_scenario(&s, &overrides).unwrap();
        prop_assert_eq!(a.to_csv(), b.to_csv());
        let width = a.columns().len();
        let csv = a.to_csv();
        for line in csv.lines().filter(|l| !l.starts_with('#')) {
            prop_assert_eq!(line.split(',').count(), width);
        }
    }
}
