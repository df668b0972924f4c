use std::ffi::{CStr, CString};
use std::ptr;

use cryocool_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cryo_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn worked_example_through_the_c_abi() {
    let mut species = CryoSpecies {
        gamma_rad: 0.0,
        lambda_f: 0.0,
        number_density: 0.0,
        quantum_efficiency: 0.0,
    };
    unsafe {
        assert_eq!(cryo_species_nv(&mut species), CryoStatus::Ok);
        let beam = CryoBeam {
            power: 0.1,
            wavelength: 760e-9,
            spot_radius: 5e-6,
        };
        let env = CryoEnvironment {
            diameter: 20e-6,
            interaction_length: 0.0,
            emissivity: 1.0,
            ambient_t: 295.0,
            h_conv: 0.0,
            solvent: 0,
        };
        let mut r = CryoResult::default();
        assert_eq!(
            cryo_evaluate(&species, &beam, &env, 1e-25, 3e-24, &mut r),
            CryoStatus::Ok
        );
        assert!(
            (r.cooling_power / 2.866332e-8 - 1.0).abs() < 1e-6,
            "{}",
            r.cooling_power
        );
        assert!((r.delta_t / -3.917228 - 1.0).abs() < 1e-6, "{}", r.delta_t);
        assert!(r.chi.is_nan());
        assert_eq!(r.flags, 0);

        species.quantum_efficiency = 0.5;
        assert_eq!(
            cryo_evaluate(&species, &beam, &env, 1e-25, 3e-24, &mut r),
            CryoStatus::Domain
        );
        assert!(last_error().contains("0.5"), "{}", last_error());
    }
}

#[test]
fn scalar_functions() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(cryo_effective_mean_wavelength(700e-9, 0.75, &mut v), CryoStatus::Ok);
        assert!((v - 1050e-9).abs() < 1e-20);
        assert_eq!(
            cryo_mccumber_ratio(738e-9, 295.0, 0.2e-3, 1.05e-3, 2, 2, 738e-9, &mut v),
            CryoStatus::Ok
        );
        assert!((v - 1.01665).abs() < 1e-4);
        let d2o = CString::new("D2O").unwrap();
        assert_eq!(cryo_diffusion_ratio(d2o.as_ptr(), 295.0, 0.0, &mut v), CryoStatus::Ok);
        assert_eq!(v, 1.0);
        let oil = CString::new("oil").unwrap();
        assert_eq!(
            cryo_diffusion_ratio(oil.as_ptr(), 295.0, -20.0, &mut v),
            CryoStatus::UnknownName
        );
        assert_eq!(cryo_saturation_intensity(760e-9, 0.0, 1e7, &mut v), CryoStatus::Domain);
        assert_eq!(
            cryo_saturation_intensity(760e-9, 1e-25, 1e7, ptr::null_mut()),
            CryoStatus::NullPointer
        );
        assert!(!last_error().is_empty());
        assert_eq!(cryo_saturation_intensity(760e-9, 1e-25, 1e7, &mut v), CryoStatus::Ok);
        assert!(last_error().is_empty());
    }
}

#[test]
fn spectrum_handles() {
    unsafe {
        let name = CString::new("nv-emission").unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(cryo_spectrum_bundled(name.as_ptr(), &mut h), CryoStatus::Ok);
        let n = cryo_spectrum_len(h);
        assert!(n > 100);
        let mut w = vec![0.0; n];
        let mut s = vec![0.0; n];
        assert_eq!(cryo_spectrum_copy(h, w.as_mut_ptr(), s.as_mut_ptr(), n), CryoStatus::Ok);
        assert_eq!(w[0], 600e-9);
        let mut mean = 0.0;
        assert_eq!(cryo_spectrum_mean_wavelength(h, &mut mean), CryoStatus::Ok);
        assert!((mean * 1e9 - 721.0).abs() < 2.0);
        let mut v = 0.0;
        assert_eq!(cryo_spectrum_interpolate(h, 400e-9, &mut v), CryoStatus::OutOfRange);
        cryo_spectrum_free(h);

        let grid = [730e-9, 738e-9, 750e-9];
        let se = [1e-21, 2e-21, 1e-21];
        let mut em = ptr::null_mut();
        assert_eq!(
            cryo_spectrum_new(grid.as_ptr(), se.as_ptr(), 3, CryoSpectrumKind::CrossSection, &mut em),
            CryoStatus::Ok
        );
        let mut abs = ptr::null_mut();
        assert_eq!(
            cryo_spectrum_absorption_from_emission(em, 295.0, 0.2e-3, 1.05e-3, 2, 2, 738e-9, &mut abs),
            CryoStatus::Ok
        );
        let mut at_zl = 0.0;
        cryo_spectrum_interpolate(abs, 738e-9, &mut at_zl);
        let mut z = 0.0;
        cryo_mccumber_ratio(738e-9, 295.0, 0.2e-3, 1.05e-3, 2, 2, 738e-9, &mut z);
        assert!((at_zl * z / 2e-21 - 1.0).abs() < 1e-12);
        cryo_spectrum_free(abs);
        cryo_spectrum_free(em);

        let unsorted = [750e-9, 700e-9];
        let mut bad = ptr::null_mut();
        assert_ne!(
            cryo_spectrum_new(unsorted.as_ptr(), se.as_ptr(), 2, CryoSpectrumKind::Intensity, &mut bad),
            CryoStatus::Ok
        );
        assert!(bad.is_null());
        cryo_spectrum_free(ptr::null_mut());
    }
}

#[test]
fn scenario_and_table_handles() {
    unsafe {
        let name = CString::new("nv-water").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(cryo_scenario_builtin(name.as_ptr(), &mut s), CryoStatus::Ok);
        let key = CString::new("sweep.wavelength_m").unwrap();
        let grid = CString::new("7.3e-7:7.6e-7:4").unwrap();
        assert_eq!(cryo_scenario_set(s, key.as_ptr(), grid.as_ptr()), CryoStatus::Ok);
        let bogus = CString::new("beam.nope").unwrap();
        assert_eq!(
            cryo_scenario_set(s, bogus.as_ptr(), grid.as_ptr()),
            CryoStatus::UnknownName
        );
        assert!(last_error().contains("beam.nope"));

        let mut text = ptr::null_mut();
        assert_eq!(cryo_scenario_to_text(s, &mut text), CryoStatus::Ok);
        let owned = CStr::from_ptr(text).to_str().unwrap().to_string();
        assert!(owned.contains("sweep.wavelength_m = 7.3e-7:7.6e-7:4"));
        let mut copy = ptr::null_mut();
        assert_eq!(cryo_scenario_parse(text, &mut copy), CryoStatus::Ok);
        cryo_string_free(text);

        let mut t = ptr::null_mut();
        assert_eq!(cryo_scenario_run(copy, &mut t), CryoStatus::Ok);
        assert_eq!(cryo_table_len(t), 4);
        let mut row = CryoRow::default();
        assert_eq!(cryo_table_row(t, 3, &mut row), CryoStatus::Ok);
        assert_eq!(row.ok, 1);
        assert_eq!(row.wavelength, 7.6e-7);
        assert!(row.result.delta_t < 0.0 && row.result.chi < 1.0);
        assert_eq!(cryo_table_row(t, 4, &mut row), CryoStatus::InvalidArgument);

        let mut csv = ptr::null_mut();
        assert_eq!(cryo_table_to_csv(t, &mut csv), CryoStatus::Ok);
        assert!(CStr::from_ptr(csv).to_str().unwrap().contains("lambda_nm,"));
        cryo_string_free(csv);

        cryo_table_free(t);
        cryo_scenario_free(copy);
        cryo_scenario_free(s);
    }
}
