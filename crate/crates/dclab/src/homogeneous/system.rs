use std::f64::consts::PI;

use num_complex::Complex64;

use super::Coupling;
use crate::error::Result;
use crate::specfun::{gamma_fn, kummer_m, tricomi_u, HypergeometricParams};

/// `det [[f+, g+], [f-, g-]]`.
pub fn wronskian_at(f: [Complex64; 2], g: [Complex64; 2]) -> Complex64 {
    f[0] * g[1] - f[1] * g[0]
}

/// Real version of [`wronskian_at`].
pub fn wronskian_real(f: [f64; 2], g: [f64; 2]) -> f64 {
    f[0] * g[1] - f[1] * g[0]
}

/// Closed-form solutions `u0` (Kummer) and `u_inf` (Tricomi) of `S u = 0`.
///
/// The `kappa = -1` channel reuses the `kappa = +1` formulas at `-nu` with
/// the two components swapped, since swapping components maps
/// `S(nu, kappa)` to `-S(-nu, -kappa)`.
#[derive(Debug, Clone)]
pub struct UPair {
    coupling: Coupling,
    nu: f64,
    b: f64,
    swap: bool,
    low: HypergeometricParams,
    high: HypergeometricParams,
    regular_low: HypergeometricParams,
    regular_high: HypergeometricParams,
    /// `Gamma(2B)/Gamma(B)`
    ratio: f64,
    /// `Gamma(-2B)/Gamma(-B)`
    ratio_neg: f64,
}

pub fn build_u_pair(c: &Coupling) -> Result<UPair> {
    if !c.is_critical() {
        return Err(crate::Error::Regime(format!("nu = {}, kappa = {}", c.nu(), c.kappa())));
    }
    let b = c.exponent();
    let swap = c.kappa() < 0;
    Ok(UPair {
        coupling: *c,
        nu: if swap { -c.nu() } else { c.nu() },
        b,
        swap,
        low: HypergeometricParams::new(-b, 1.0 - 2.0 * b)?,
        high: HypergeometricParams::new(1.0 - b, 2.0 - 2.0 * b)?,
        regular_low: HypergeometricParams::new(b, 1.0 + 2.0 * b)?,
        regular_high: HypergeometricParams::new(b, 2.0 * b)?,
        ratio: gamma_fn(2.0 * b)? / gamma_fn(b)?,
        ratio_neg: gamma_fn(-2.0 * b)? / gamma_fn(-b)?,
    })
}

impl UPair {
    fn orient(&self, v: [f64; 2]) -> [f64; 2] {
        if self.swap {
            [v[1], v[0]]
        } else {
            v
        }
    }

    pub fn coupling(&self) -> &Coupling {
        &self.coupling
    }

    pub fn u0(&self, r: f64) -> Result<[f64; 2]> {
        let (nu, b) = (self.nu, self.b);
        let x = 2.0 * r;
        let pre = (-r).exp() * r.powf(-b);
        let m1 = kummer_m(self.low, x)?;
        let m2 = kummer_m(self.high, x)?;
        let tail = 2.0 * r * b / ((1.0 + nu) * (1.0 - 2.0 * b)) * m2;
        Ok(self.orient([
            pre * ((1.0 + nu + b) / (1.0 + nu) * m1 + tail),
            pre * (-(1.0 + nu - b) / (1.0 + nu) * m1 + tail),
        ]))
    }

    pub fn u_inf(&self, r: f64) -> Result<[f64; 2]> {
        let (nu, b) = (self.nu, self.b);
        let x = 2.0 * r;
        let pre = (-r).exp() * r.powf(-b);
        let t1 = tricomi_u(self.low, x)?;
        let t2 = tricomi_u(self.high, x)?;
        let tail = 2.0 * r * b / (1.0 + nu) * t2;
        Ok(self.orient([
            pre * ((1.0 + nu + b) / (1.0 + nu) * t1 - tail),
            pre * (-(1.0 + nu - b) / (1.0 + nu) * t1 - tail),
        ]))
    }

    /// `u_inf - Gamma(2B)/Gamma(B) u0`, with the divergent parts cancelled
    /// analytically so that no digits are lost as `r -> 0`.
    pub fn v0(&self, r: f64) -> Result<[f64; 2]> {
        let (nu, b) = (self.nu, self.b);
        let x = 2.0 * r;
        let pre = 4f64.powf(b) * r.powf(b) * (-r).exp();
        let m_low = kummer_m(self.regular_low, x)?;
        let m_high = kummer_m(self.regular_high, x)?;
        // Gamma(1-2B)/Gamma(1-B) = 2 Gamma(-2B)/Gamma(-B)
        let common = b / (1.0 + nu) * 2.0 * self.ratio_neg * m_high;
        Ok(self.orient([
            pre * ((1.0 + nu + b) / (1.0 + nu) * self.ratio_neg * m_low - common),
            pre * ((-(1.0 + nu) + b) / (1.0 + nu) * self.ratio_neg * m_low - common),
        ]))
    }

    /// `Gamma(2B)/Gamma(B)`.
    pub fn gamma_ratio(&self) -> f64 {
        self.ratio
    }
}

/// The rebased pair `v0 = u_inf - Gamma(2B)/Gamma(B) u0`, `v_inf = u_inf`,
/// with their short-distance coefficients and the constant Wronskian.
#[derive(Debug, Clone)]
pub struct FundamentalSystem {
    pair: UPair,
    w0_inf: f64,
    q: [f64; 2],
    lead: [f64; 2],
}

pub fn build_fundamental_system(c: &Coupling) -> Result<FundamentalSystem> {
    FundamentalSystem::new(c)
}

impl FundamentalSystem {
    pub fn new(c: &Coupling) -> Result<Self> {
        let pair = build_u_pair(c)?;
        let (nu, b) = (pair.nu, pair.b);
        let four_b = 4f64.powf(b);
        let mut w0_inf = four_b * b / ((1.0 + nu) * (b * PI).cos());
        let q = [
            four_b * (-b + (1.0 + nu)) * pair.ratio_neg / (1.0 + nu),
            four_b * (-b - (1.0 + nu)) * pair.ratio_neg / (1.0 + nu),
        ];
        let lead = [pair.ratio * (1.0 + nu + b) / (1.0 + nu), -pair.ratio * (1.0 + nu - b) / (1.0 + nu)];
        if pair.swap {
            // swapping components flips the sign of every Wronskian
            w0_inf = -w0_inf;
        }
        let (q, lead) = (pair.orient(q), pair.orient(lead));
        Ok(Self { pair, w0_inf, q, lead })
    }

    pub fn coupling(&self) -> &Coupling {
        &self.pair.coupling
    }

    pub fn exponent(&self) -> f64 {
        self.pair.b
    }

    pub fn u_pair(&self) -> &UPair {
        &self.pair
    }

    pub fn v0(&self, r: f64) -> Result<[f64; 2]> {
        self.pair.v0(r)
    }

    pub fn v_inf(&self, r: f64) -> Result<[f64; 2]> {
        self.pair.u_inf(r)
    }

    /// The constant `W_r(v0, v_inf)`.
    pub fn w0_inf(&self) -> f64 {
        self.w0_inf
    }

    /// Coefficients of `r^B` in `v0` (and in `v_inf`).
    pub fn q(&self) -> [f64; 2] {
        self.q
    }

    pub fn q_plus(&self) -> f64 {
        self.q[0]
    }

    pub fn q_minus(&self) -> f64 {
        self.q[1]
    }

    /// Coefficients of `r^{-B}` in `v_inf`.
    pub fn singular_lead(&self) -> [f64; 2] {
        self.lead
    }

    /// Upper singular coefficient of `v_inf`, the normaliser of the boundary condition.
    pub fn gamma_plus(&self) -> f64 {
        self.lead[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn wronskian_basics() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::default();
        let f = [Complex64::new(0.3, 1.0), Complex64::new(-2.0, 0.5)];
        assert_eq!(wronskian_at(f, f), zero);
        assert_eq!(wronskian_at([one, zero], [zero, one]), one);
    }

    #[test]
    fn wronskian_is_constant_and_matches_closed_form() {
        for nu in [0.88, 0.9, 0.95, -0.9] {
            for kappa in [1, -1] {
                let fs = build_fundamental_system(&Coupling::critical(nu, kappa).unwrap()).unwrap();
                for r in [1e-6, 1e-3, 0.1, 0.37, 1.0, 5.0, 20.0] {
                    let w = wronskian_real(fs.v0(r).unwrap(), fs.v_inf(r).unwrap());
                    assert!(rel(w, fs.w0_inf()) < 1e-9, "nu {nu} kappa {kappa} r {r}: {w} vs {}", fs.w0_inf());
                }
            }
        }
    }

    #[test]
    fn rebased_solution_equals_difference_where_stable() {
        let fs = build_fundamental_system(&Coupling::critical(0.9, 1).unwrap()).unwrap();
        let g = fs.u_pair().gamma_ratio();
        for r in [0.05, 0.4, 2.0, 8.0] {
            let u0 = fs.u_pair().u0(r).unwrap();
            let ui = fs.v_inf(r).unwrap();
            let v0 = fs.v0(r).unwrap();
            for p in 0..2 {
                let diff = ui[p] - g * u0[p];
                assert!((v0[p] - diff).abs() < 1e-11 * (ui[p].abs() + (g * u0[p]).abs()), "r {r}");
            }
        }
    }

    #[test]
    fn short_distance_limits() {
        let nu: f64 = 0.9;
        let b = (1.0 - nu * nu).sqrt();
        let fs = build_fundamental_system(&Coupling::critical(nu, 1).unwrap()).unwrap();
        let r = 1e-7;
        let u0 = fs.u_pair().u0(r).unwrap();
        let s = r.powf(b);
        assert!(rel(u0[0] * s, (1.0 + nu + b) / (1.0 + nu)) < 1e-4);
        assert!(rel(u0[1] * s, -(1.0 + nu - b) / (1.0 + nu)) < 1e-4);
        let v0 = fs.v0(r).unwrap();
        assert!(rel(v0[0] / s, fs.q_plus()) < 1e-4);
        assert!(rel(v0[1] / s, fs.q_minus()) < 1e-4);
        let vi = fs.v_inf(r).unwrap();
        assert!(rel(vi[0] * s, fs.singular_lead()[0]) < 1e-4);
        assert!(rel(vi[1] * s, fs.singular_lead()[1]) < 1e-4);
    }

    #[test]
    fn large_distance_profile() {
        // e^r u_inf(r) / 2^B tends to (1, -1)
        let nu: f64 = 0.9;
        let b = (1.0 - nu * nu).sqrt();
        let fs = build_fundamental_system(&Coupling::critical(nu, 1).unwrap()).unwrap();
        let v = fs.v_inf(30.0).unwrap();
        let scale = 30f64.exp() / 2f64.powf(b);
        assert!((v[0] * scale - 1.0).abs() < 0.03);
        assert!((v[1] * scale + 1.0).abs() < 0.03);
    }

    #[test]
    fn q_coefficients_never_vanish() {
        for k in 0..50 {
            let nu = 0.8661 + (0.9999 - 0.8661) * k as f64 / 49.0;
            let fs = build_fundamental_system(&Coupling::critical(nu, 1).unwrap()).unwrap();
            assert!(fs.q_plus().abs() > 1e-6 && fs.q_minus().abs() > 1e-6);
            assert!(fs.w0_inf() > 0.0);
        }
    }

    #[test]
    fn requires_critical_coupling() {
        assert!(build_u_pair(&Coupling::new(0.5, 1).unwrap()).is_err());
    }
}
