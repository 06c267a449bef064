use super::{gamma_fn, CompensatedSum, HypergeometricParams};
use crate::error::{Error, Result};

/// Above this argument the power series is replaced by the large-x expansion.
pub(crate) const SERIES_LIMIT: f64 = 60.0;
/// `e^x` leaves the double range shortly after this.
const OVERFLOW_LIMIT: f64 = 700.0;

/// Kummer's function `M(a, b, x)` for `x >= 0`.
pub fn kummer_m(p: HypergeometricParams, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain { func: "kummer_m", x });
    }
    let polynomial = p.a <= 0.0 && p.a == p.a.round();
    if x <= SERIES_LIMIT || polynomial {
        return Ok(series(p, x));
    }
    if x > OVERFLOW_LIMIT {
        return Err(Error::Overflow { func: "kummer_m", x });
    }
    asymptotic(p, x)
}

fn series(p: HypergeometricParams, x: f64) -> f64 {
    let mut sum = CompensatedSum::default();
    sum.add(1.0);
    let mut term = 1.0;
    let mut k = 0.0;
    loop {
        term *= (p.a + k) / (p.b + k) * x / (k + 1.0);
        sum.add(term);
        k += 1.0;
        if term == 0.0 {
            break;
        }
        // past the peak of the terms the tail is geometric
        if k > x + p.a.abs() && term.abs() <= 1e-17 * sum.value().abs() {
            break;
        }
        if k > 5000.0 {
            break;
        }
    }
    sum.value()
}

fn asymptotic(p: HypergeometricParams, x: f64) -> Result<f64> {
    let (a, b) = (p.a, p.b);
    let prefactor = gamma_fn(b)? / gamma_fn(a)? * (x + (a - b) * x.ln()).exp();
    let mut sum = CompensatedSum::default();
    let mut term = 1.0;
    sum.add(term);
    let mut k = 0.0;
    loop {
        let next = term * (b - a + k) * (1.0 - a + k) / ((k + 1.0) * x);
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
    let value = prefactor * sum.value();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { func: "kummer_m", x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64) -> HypergeometricParams {
        HypergeometricParams::new(a, b).unwrap()
    }

    fn critical_b(nu: f64) -> f64 {
        (1.0 - nu * nu).sqrt()
    }

    #[test]
    fn unity_at_origin() {
        let bb = critical_b(0.9);
        for p in [params(-bb, 1.0 - 2.0 * bb), params(1.0 - bb, 2.0 - 2.0 * bb), params(2.5, 0.3)] {
            assert_eq!(kummer_m(p, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn elementary_cases() {
        // M(a, a, x) = e^x
        for x in [0.1f64, 1.0, 10.0, 59.0, 75.0] {
            let v = kummer_m(params(0.7, 0.7), x).unwrap();
            assert!(((v - x.exp()) / x.exp()).abs() < 1e-13, "x = {x}");
        }
        // M(1, 2, x) = (e^x - 1)/x
        for x in [0.3f64, 5.0, 40.0, 90.0] {
            let exact = x.exp_m1() / x;
            let v = kummer_m(params(1.0, 2.0), x).unwrap();
            assert!(((v - exact) / exact).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn derivative_relation_by_central_differences() {
        let bb = critical_b(0.9);
        let p = params(-bb, 1.0 - 2.0 * bb);
        let up = params(p.a + 1.0, p.b + 1.0);
        let mut x: f64 = 0.1;
        while x <= 10.0 {
            let h = 1e-5 * x.max(1.0);
            let d = (kummer_m(p, x + h).unwrap() - kummer_m(p, x - h).unwrap()) / (2.0 * h);
            let exact = p.a / p.b * kummer_m(up, x).unwrap();
            assert!(((d - exact) / exact).abs() < 1e-8, "x = {x}");
            x += 0.7;
        }
    }

    #[test]
    fn series_and_expansion_meet() {
        let bb = critical_b(0.95);
        for p in [params(-bb, 1.0 - 2.0 * bb), params(1.0 - bb, 2.0 - 2.0 * bb), params(bb, 2.0 * bb)] {
            let s = series(p, 61.0);
            let e = asymptotic(p, 61.0).unwrap();
            assert!(((s - e) / s).abs() < 1e-13, "{p:?}");
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(kummer_m(params(0.5, 1.5), 800.0), Err(Error::Overflow { .. })));
        assert!(kummer_m(params(0.5, 1.5), -1.0).is_err());
    }
}
