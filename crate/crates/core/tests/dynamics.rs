#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;

use jcm_core::entanglement::reduced_density;
use jcm_core::oracle::{compare, integrate};
use jcm_core::statistics::{field_moment, mean_photon_number, quadrature_squeezing, second_moment};
use jcm_core::{eval_g, evolve, Complex64, FieldAmplitudes, ModelParams, Motion, Nonlinearity};

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn oracle_tracks_number_state_with_higher_mode_structure() {
    let params = ModelParams::builder()
        .lambda(0.6)
        .p(2)
        .alpha_sq(0.0)
        .n_max(Some(12))
        .nonlinearity(Nonlinearity::PoschlTeller { nu: 0.5 })
        .build()
        .unwrap();
    let field = FieldAmplitudes::number_state(3, 12).unwrap();
    for t in [0.4, 1.7, 3.9] {
        let oracle = integrate(&params, &field, t, 0.001).unwrap();
        let analytic = evolve(&params, &field, t);
        assert!(compare(&oracle, &analytic).unwrap() < 1e-8, "t = {t}");
        assert!((oracle.norm_sqr() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn oracle_observables_agree_with_closed_forms() {
    let params = ModelParams::builder()
        .alpha(Complex64::from_polar(2.0, -0.7))
        .n_max(Some(40))
        .nonlinearity(Nonlinearity::Harmonious)
        .motion(Motion::Static)
        .build()
        .unwrap();
    let field = params.coherent_field().unwrap();
    let t = 2.3;
    let oracle = integrate(&params, &field, t, 0.002).unwrap();
    let state = evolve(&params, &field, t);

    let rho = reduced_density(&state);
    let dense = oracle.reduced_atom_density();
    for i in 0..3 {
        for j in 0..3 {
            assert!((rho.rho()[i][j] - dense[i][j]).norm() < 1e-8);
        }
    }
    assert!((oracle.number_moment(1) - mean_photon_number(&state)).abs() < 1e-7);
    assert!((oracle.number_moment(2) - second_moment(&state)).abs() < 1e-6);
    for r in 1..=2 {
        let m = field_moment(&state, r).unwrap();
        assert!((oracle.annihilation_moment(r) - m).norm() < 1e-7);
    }
    let (vx, vp) = quadrature_squeezing(&state).unwrap();
    let (ox, op) = oracle.quadrature_parameters();
    assert!((vx - ox).abs() < 1e-6 && (vp - op).abs() < 1e-6);
}

#[test]
fn custom_table_reproduces_builtin_profiles() {
    for kind in [
        Nonlinearity::TrappedIon { eta: 0.3 },
        Nonlinearity::Harmonious,
        Nonlinearity::PoschlTeller { nu: 2.0 },
    ] {
        let builtin = ModelParams::builder()
            .nonlinearity(kind.clone())
            .build()
            .unwrap();
        let table = (1..=builtin.n_max() + 1)
            .map(|n| eval_g(&kind, n).unwrap())
            .collect();
        let custom = ModelParams::builder()
            .nonlinearity(Nonlinearity::Custom(table))
            .build()
            .unwrap();
        let field = builtin.coherent_field().unwrap();
        for t in [0.3, 2.0, 7.5] {
            let a = evolve(&builtin, &field, t);
            let b = evolve(&custom, &field, t);
            assert_eq!(a.a(), b.a());
            assert_eq!(a.b(), b.b());
        }
    }
}

#[test]
fn moving_atom_returns_to_initial_state() {
    for p in 1..=3 {
        let params = ModelParams::builder()
            .p(p)
            .lambda(1.3)
            .nonlinearity(Nonlinearity::TrappedIon { eta: 0.2 })
            .build()
            .unwrap();
        let field = params.coherent_field().unwrap();
        let period = params.revival_period().unwrap();
        assert!((period - 2.0 * PI / (p as f64 * 1.3)).abs() < 1e-15);
        let s0 = evolve(&params, &field, 0.0);
        for k in 1..=3 {
            let s = evolve(&params, &field, k as f64 * period);
            assert!(max_diff(s.a(), s0.a()) < 1e-12);
            assert!(s.b().iter().all(|b| b.norm() < 1e-12));
        }
    }
}

#[test]
fn static_atom_has_no_revival_period() {
    let params = ModelParams::builder()
        .motion(Motion::Static)
        .build()
        .unwrap();
    assert_eq!(params.revival_period(), None);
    let field = params.coherent_field().unwrap();
    let s = evolve(&params, &field, 2.0 * PI);
    assert!(s.b().iter().any(|b| b.norm() > 1e-3));
}
