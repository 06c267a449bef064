use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
// published coefficients, kept digit for digit
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        (PI * (-1.0 - r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn gamma_lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // split the power so that it does not overflow before exp(-t) pulls it back
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * ((-t).exp() * half) * acc
}

/// The Gamma function for real arguments.
///
/// Arguments below one half go through the reflection formula.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain { func: "gamma", x });
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::GammaPole(x));
    }
    let value = if x < 0.5 {
        PI / (sin_pi(x) * gamma_lanczos(1.0 - x))
    } else {
        gamma_lanczos(x)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { func: "gamma", x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn classical_values() {
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma_fn(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma_fn(5.0).unwrap(), 24.0) < 1e-14);
        assert!(rel(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-14);
    }

    #[test]
    fn poles_are_errors() {
        assert!(matches!(gamma_fn(0.0), Err(Error::GammaPole(_))));
        assert!(matches!(gamma_fn(-3.0), Err(Error::GammaPole(_))));
    }

    #[test]
    fn recurrence_on_sample_points() {
        let mut x: f64 = -2.97;
        while x < 10.0 {
            let near_pole = (x - x.round()).abs() < 0.05 && x.round() <= 0.0;
            let next_near_pole = (x + 1.0 - (x + 1.0).round()).abs() < 0.05 && (x + 1.0).round() <= 0.0;
            if !near_pole && !next_near_pole {
                let lhs = gamma_fn(x + 1.0).unwrap();
                let rhs = x * gamma_fn(x).unwrap();
                assert!(rel(lhs, rhs) < 1e-12, "x = {x}");
            }
            x += 0.0131;
        }
    }

    #[test]
    fn sin_pi_zeros() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-4.0), 0.0);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-1.5) - 1.0).abs() < 1e-16);
    }
}
