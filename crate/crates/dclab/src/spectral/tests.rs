use std::sync::Arc;

use num_complex::Complex64;

use super::*;
use crate::extensions::{boundary_residual, cd_constants, extract_boundary_data, Beta, ExtensionSpec, DEFAULT_WINDOW};
use crate::greenop::GreenOperator;
use crate::homogeneous::Coupling;
use crate::radial::{apply_dirac, GridParams, RadialGrid, SpinorFunction};

fn grid() -> Arc<RadialGrid> {
    Arc::new(RadialGrid::new(GridParams::default()).unwrap())
}

#[test]
fn sommerfeld_values() {
    assert_eq!(sommerfeld_energy(0.0, 3, 1).unwrap(), 1.0);
    assert!((sommerfeld_energy(-0.5, 0, 1).unwrap() - 0.75f64.sqrt()).abs() < 1e-15);
    let mut last = 1.0;
    for k in 1..20 {
        let e = sommerfeld_energy(0.05 * f64::from(k), 1, -1).unwrap();
        assert!(e < last);
        last = e;
    }
    assert!(sommerfeld_energy(1.2, 0, 1).is_err());
}

#[test]
fn gap_bound_limits() {
    assert!((gap_lower_bound(Beta::Infinite, 2.5) - 0.4).abs() < 1e-15);
    assert_eq!(gap_lower_bound(Beta::Finite(0.0), 2.5), 0.0);
    let mut last = 0.0;
    for b in [0.1, 1.0, 10.0, 100.0] {
        let e = gap_lower_bound(Beta::Finite(-b), 2.5);
        assert!(e > last && e < 0.4);
        last = e;
    }
}

#[test]
fn decaying_solution_at_zero_is_phi() {
    let g = grid();
    let c = Coupling::critical(0.9, 1).unwrap();
    let op = GreenOperator::new(&c, g.clone()).unwrap();
    let psi = decaying_solution(&c, 0.0, &g).unwrap();
    let phi = op.phi();
    let phi = phi.scale(Complex64::from(1.0 / phi.norm()));
    let sign = if psi.value(500)[0].re * phi.value(500)[0].re > 0.0 { 1.0 } else { -1.0 };
    let diff = psi.sub(&phi.scale(Complex64::from(sign))).unwrap().norm();
    assert!(diff < 1e-6, "{diff}");
}

#[test]
fn decaying_solution_solves_the_equation() {
    let g = grid();
    let c = Coupling::critical(0.9, -1).unwrap();
    for e in [-0.7, 0.3, 0.95] {
        let psi = decaying_solution(&c, e, &g).unwrap();
        let d = apply_dirac(&c, e, &psi);
        let range = d.interior_between(1e-7, 30.0);
        let scale: f64 = range.clone().map(|i| psi.value(i)[0].norm() / g.nodes()[i]).fold(0.0, f64::max);
        let worst = range.map(|i| d.values.value(i)[0].norm()).fold(0.0, f64::max);
        assert!(worst < 1e-6 * scale, "E = {e}: {worst:e} vs {scale:e}");
    }
}

#[test]
fn beta_of_energy_vanishes_at_zero() {
    let g = grid();
    let c = Coupling::critical(0.9, 1).unwrap();
    let op = GreenOperator::new(&c, g).unwrap();
    match beta_of_energy(&c, 0.0, cd_constants(&op)).unwrap() {
        Beta::Finite(b) => assert!(b.abs() < 1e-8, "{b}"),
        Beta::Infinite => panic!("infinite"),
    }
}

#[test]
fn subcritical_levels_follow_sommerfeld() {
    // kappa = -1 carries n = 0, 1, 2; kappa = +1 starts at n = 1
    let nu = -0.5;
    for (kappa, first) in [(-1, 0u32), (1, 1)] {
        let c = Coupling::new(nu, kappa).unwrap();
        let spec = ExtensionSpec { beta: Beta::Infinite, ratio_target: None };
        let report = eigenvalues_in_gap(&c, &spec, (0.5, 0.999), 200).unwrap();
        let got = report.energies();
        for n in 0..3 {
            let want = sommerfeld_energy(nu, first + n, kappa).unwrap();
            assert!((got[n as usize] - want).abs() < 1e-6, "kappa {kappa} n {}: {got:?} vs {want}", first + n);
        }
    }
}

#[test]
fn zero_is_an_eigenvalue_of_beta_zero() {
    let g = grid();
    let c = Coupling::critical(0.9, 1).unwrap();
    let op = GreenOperator::new(&c, g).unwrap();
    let spec = ExtensionSpec::new(Beta::Finite(0.0), cd_constants(&op));
    let report = eigenvalues_in_gap(&c, &spec, (-0.5, 0.5), 41).unwrap();
    assert!(report.energies().iter().any(|e| e.abs() < 1e-8), "{:?}", report.energies());
}

#[test]
fn rank_one_inverse_matches_shooting() {
    let g = grid();
    let c = Coupling::critical(0.9, 1).unwrap();
    let op = GreenOperator::new(&c, g.clone()).unwrap();
    let cd = cd_constants(&op);
    let src = |r: f64| [Complex64::from(r * (-1.5 * r).exp()), Complex64::new((1.0 - r) * (-2.0 * r).exp(), 0.2 * r * (-1.7 * r).exp())];
    let h = SpinorFunction::from_fn(g.clone(), src);
    for beta in [-3.0, 0.5, 2.0] {
        let spec = ExtensionSpec::new(Beta::Finite(beta), cd);
        let f = apply_sbeta_inverse(&op, &spec, &h).unwrap();
        let bd = extract_boundary_data(&c, &f, DEFAULT_WINDOW).unwrap();
        assert!(boundary_residual(&spec, &bd).unwrap() < 1e-3);
        let other = solve_with_condition(&c, &spec, &g, &src).unwrap();
        let err = f.sub(&other).unwrap().norm() / f.norm();
        assert!(err < 1e-5, "beta {beta}: {err}");
    }
    let zero = ExtensionSpec::new(Beta::Finite(0.0), cd);
    assert!(apply_sbeta_inverse(&op, &zero, &h).is_err());
}

#[test]
fn krein_family_is_a_null_solution() {
    let g = grid();
    let c = Coupling::critical(0.9, 1).unwrap();
    let op = GreenOperator::new(&c, g.clone()).unwrap();
    let phi = op.phi();
    for z in [0.2, -0.3] {
        let pz = krein_phi_z(&op, z).unwrap();
        let d = apply_dirac(&c, z, &pz);
        let range = d.interior_between(1e-6, 30.0);
        let res = d.values.norm_over(range.clone()) / apply_dirac(&c, 0.0, &pz).values.sub(&pz.scale(Complex64::from(-z))).unwrap().norm_over(range);
        assert!(res < 1e-6, "z = {z}: {res}");
        // same short-distance singular part as Phi
        let bd = extract_boundary_data(&c, &pz, DEFAULT_WINDOW).unwrap();
        assert!((bd.g0[0] - op.system().gamma_plus()).norm() < 1e-6);
        assert!(pz.norm() > 0.0);
    }
    assert_eq!(krein_phi_z(&op, 0.0).unwrap().sub(&phi).unwrap().norm(), 0.0);
    let h = 1e-3;
    let slope = krein_phi_z(&op, h).unwrap().sub(&phi).unwrap().norm() / h;
    let bound = op.apply(&phi).unwrap().norm();
    assert!((slope / bound - 1.0).abs() < 1e-2, "{slope} vs {bound}");
}

#[test]
fn rank_one_inverse_matches_random_sources() {
    use rand::{Rng, SeedableRng};
    let g = grid();
    let c = Coupling::critical(0.9, 1).unwrap();
    let op = GreenOperator::new(&c, g.clone()).unwrap();
    let cd = cd_constants(&op);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let a: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        // the direct solve needs sources decaying faster than e^{-r}
        let (la, lb) = (rng.gen_range(1.3..3.0), rng.gen_range(1.3..3.0));
        let src = move |r: f64| {
            let (eu, el) = ((-la * r).exp(), (-lb * r).exp());
            [Complex64::new((a[0] + a[1] * r) * eu, a[2] * r * eu), Complex64::new((a[3] + a[4] * r * r) * el, (a[5] + a[6] * r) * el)]
        };
        let h = SpinorFunction::from_fn(g.clone(), &src);
        for beta in [-3.0, -1.0, 0.5, 2.0] {
            let spec = ExtensionSpec::new(Beta::Finite(beta), cd);
            let f = apply_sbeta_inverse(&op, &spec, &h).unwrap();
            let other = solve_with_condition(&c, &spec, &g, &src).unwrap();
            worst = worst.max(f.sub(&other).unwrap().norm() / f.norm());
        }
    }
    assert!(worst < 1e-5, "{worst:e}");
}

#[test]
fn eigenvalue_count_is_stable_under_refinement() {
    let c = Coupling::critical(0.9, 1).unwrap();
    let op = GreenOperator::new(&c, grid()).unwrap();
    for beta in [Beta::Finite(-1.0), Beta::Finite(0.25), Beta::Infinite] {
        let spec = ExtensionSpec::new(beta, cd_constants(&op));
        let coarse = eigenvalues_in_gap(&c, &spec, (-0.999, 0.999), 200).unwrap().energies();
        let fine = eigenvalues_in_gap(&c, &spec, (-0.999, 0.999), 400).unwrap().energies();
        assert_eq!(coarse.len(), fine.len(), "beta {beta}: {coarse:?} vs {fine:?}");
        for (a, b) in coarse.iter().zip(&fine) {
            assert!((a - b).abs() < 1e-8);
        }
    }
}
