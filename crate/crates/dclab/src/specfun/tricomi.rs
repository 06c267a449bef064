use std::f64::consts::PI;

use super::{gamma_fn, kummer_m, CompensatedSum, HypergeometricParams};
use crate::error::{Error, Result};

/// Below this argument the two-Kummer connection formula is used.
const CONNECTION_LIMIT: f64 = 2.0;
/// Above this argument the large-x expansion is accurate to rounding.
const EXPANSION_FROM: f64 = 60.0;
/// Step of the exp-sinh trapezoidal rule.
const DE_STEP: f64 = 1.0 / 16.0;

/// Tricomi's function `U(a, b, x)` for `x > 0` and non-integer `b`.
///
/// Small arguments use the connection formula, which cancels badly once
/// `M` grows like `e^x`; moderate arguments use the Laplace integral on an
/// exp-sinh rule, and large arguments the asymptotic expansion.
pub fn tricomi_u(p: HypergeometricParams, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain { func: "tricomi_u", x });
    }
    check_b(p)?;
    if x <= CONNECTION_LIMIT {
        tricomi_u_connection(p, x)
    } else if x <= EXPANSION_FROM {
        laplace(p, x)
    } else {
        Ok(expansion(p, x))
    }
}

fn check_b(p: HypergeometricParams) -> Result<()> {
    if (p.b - p.b.round()).abs() < 1e-12 {
        return Err(Error::InvalidParams(format!("integer b = {} is not supported", p.b)));
    }
    Ok(())
}

/// `U` from two Kummer functions. Warns when the two terms cancel heavily.
pub fn tricomi_u_connection(p: HypergeometricParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain { func: "tricomi_u", x });
    }
    check_b(p)?;
    let (a, b) = (p.a, p.b);
    let first = coefficient(1.0 - b, a - b + 1.0)? * kummer_m(p, x)?;
    let second = coefficient(b - 1.0, a)?
        * x.powf(1.0 - b)
        * kummer_m(HypergeometricParams::new(a - b + 1.0, 2.0 - b)?, x)?;
    let value = first + second;
    if first.abs() + second.abs() > 1e6 * value.abs() {
        log::warn!("tricomi_u: connection formula cancels at a={a}, b={b}, x={x}");
    }
    Ok(value)
}

/// `Gamma(num) / Gamma(den)`, zero when `den` sits on a pole.
fn coefficient(num: f64, den: f64) -> Result<f64> {
    if den <= 0.0 && den == den.round() {
        return Ok(0.0);
    }
    Ok(gamma_fn(num)? / gamma_fn(den)?)
}

fn laplace(p: HypergeometricParams, x: f64) -> Result<f64> {
    if p.a > 0.0 {
        return laplace_positive(p.a, p.b, x);
    }
    // lift a above zero, then recur back down (U is minimal as a grows)
    let lift = (1.0 - p.a).ceil();
    let top = p.a + lift;
    let mut upper = laplace_positive(top + 1.0, p.b, x)?;
    let mut current = laplace_positive(top, p.b, x)?;
    let mut a = top;
    while a > p.a + 0.5 {
        let lower = -(p.b - 2.0 * a - x) * current - a * (a - p.b + 1.0) * upper;
        upper = current;
        current = lower;
        a -= 1.0;
    }
    Ok(current)
}

/// `x^{-a}/Gamma(a) * int_0^inf e^{-u} u^{a-1} (1+u/x)^{b-a-1} du` for `a > 0`.
fn laplace_positive(a: f64, b: f64, x: f64) -> Result<f64> {
    let c = b - a - 1.0;
    let half_pi = 0.5 * PI;
    let tau_left = -(45.0 / (a * half_pi)).asinh();
    let tau_right = ((110.0 + 2.0 * c.abs()).ln() / half_pi).asinh();
    let n = ((tau_right - tau_left) / DE_STEP).ceil() as usize;
    let mut sum = CompensatedSum::default();
    for i in 0..=n {
        let tau = tau_left + i as f64 * DE_STEP;
        let log_u = half_pi * tau.sinh();
        let u = log_u.exp();
        let log_f = -u + a * log_u + c * (u / x).ln_1p();
        sum.add(log_f.exp() * half_pi * tau.cosh());
    }
    Ok(sum.value() * DE_STEP * x.powf(-a) / gamma_fn(a)?)
}

fn expansion(p: HypergeometricParams, x: f64) -> f64 {
    let (a, b) = (p.a, p.b);
    let mut sum = CompensatedSum::default();
    let mut term = 1.0;
    sum.add(term);
    let mut k = 0.0;
    loop {
        let next = -term * (a + k) * (a - b + 1.0 + k) / ((k + 1.0) * x);
        if next == 0.0 {
            break;
        }
        if next.abs() >= term.abs() || next.abs() <= 1e-17 * sum.value().abs() {
            if next.abs() < term.abs() {
                sum.add(next);
            }
            break;
        }
        sum.add(next);
        term = next;
        k += 1.0;
    }
    x.powf(-a) * sum.value()
}
