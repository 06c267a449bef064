//! Closed forms checked against arbitrary-precision reference values.

mod common;

use common::oracle::*;
use common::{default_grid, frozen, rel};
use dclab::extensions::cd_constants;
use dclab::greenop::{green_kernel, GreenOperator};
use dclab::homogeneous::{build_fundamental_system, Coupling};
use dclab::specfun::{gamma_fn, kummer_m, tricomi_u, HypergeometricParams};

#[test]
fn kummer_and_tricomi_match_reference() {
    let b = B_09;
    let low = HypergeometricParams::new(-b, 1.0 - 2.0 * b).unwrap();
    let high = HypergeometricParams::new(1.0 - b, 2.0 - 2.0 * b).unwrap();
    for (k, &x) in U_ARGS.iter().enumerate() {
        assert!(rel(tricomi_u(low, x).unwrap(), U_LOW_09[k]) < 1e-11, "U low at {x}");
        assert!(rel(tricomi_u(high, x).unwrap(), U_HIGH_09[k]) < 1e-11, "U high at {x}");
    }
    for (k, &x) in M_ARGS.iter().enumerate() {
        assert!(rel(kummer_m(low, x).unwrap(), M_LOW_09[k]) < 1e-11, "M low at {x}");
        assert!(rel(kummer_m(high, x).unwrap(), M_HIGH_09[k]) < 1e-11, "M high at {x}");
    }
}

#[test]
fn gamma_at_negative_double_exponent() {
    for (b, want) in [(B_088, GAMMA_MINUS_2B_088), (B_09, GAMMA_MINUS_2B_09), (B_095, GAMMA_MINUS_2B_095)] {
        assert!(rel(gamma_fn(-2.0 * b).unwrap(), want) < 1e-13);
    }
}

#[test]
fn solutions_match_reference_profiles() {
    let fs = build_fundamental_system(&Coupling::critical(0.9, 1).unwrap()).unwrap();
    for (k, &r) in V_RADII.iter().enumerate() {
        let (v0, vi, u0) = (fs.v0(r).unwrap(), fs.v_inf(r).unwrap(), fs.u_pair().u0(r).unwrap());
        for s in 0..2 {
            assert!(rel(v0[s], V0_09[k][s]) < 1e-10, "v0[{s}] at {r}: {} vs {}", v0[s], V0_09[k][s]);
            assert!(rel(vi[s], VINF_09[k][s]) < 1e-10, "v_inf[{s}] at {r}");
            assert!(rel(u0[s], U0_09[k][s]) < 1e-10, "u0[{s}] at {r}");
        }
    }
}

#[test]
fn fundamental_constants_match_reference() {
    for f in frozen() {
        let fs = build_fundamental_system(&Coupling::critical(f.nu, 1).unwrap()).unwrap();
        assert!(rel(fs.exponent(), f.b) < 1e-15);
        assert!(rel(fs.w0_inf(), f.w) < 1e-12, "W at {}", f.nu);
        assert!(rel(fs.q_plus(), f.q[0]) < 1e-12 && rel(fs.q_minus(), f.q[1]) < 1e-12, "q at {}", f.nu);
        let lead = fs.singular_lead();
        assert!(rel(lead[0], f.lead[0]) < 1e-12 && rel(lead[1], f.lead[1]) < 1e-12, "lead at {}", f.nu);
    }
}

#[test]
fn quadrature_constants_match_reference() {
    let grid = default_grid();
    for f in frozen() {
        let op = GreenOperator::new(&Coupling::critical(f.nu, 1).unwrap(), grid.clone()).unwrap();
        assert!(rel(op.vinf_norm_sq(), f.norm_sq) < 1e-8, "norm at {}: {}", f.nu, op.vinf_norm_sq());
        let (pp, pm) = op.p_pm();
        assert!(rel(pp, f.p[0]) < 1e-8 && rel(pm, f.p[1]) < 1e-8, "p at {}", f.nu);
        let (c, d) = cd_constants(&op);
        assert!(rel(c, f.c) < 1e-8 && rel(d, f.d) < 1e-12, "c, d at {}", f.nu);
    }
}

#[test]
fn kernel_norm_on_the_diagonal() {
    let k = green_kernel(&Coupling::critical(0.9, 1).unwrap(), 2.0, 2.0).unwrap();
    let norm = k.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    assert!(rel(norm, KERNEL_NORM_2_09) < 1e-11);
}
