//! Initial-value integration of `(S - E) u = s` in the log-radius variable.
//!
//! With `t = ln r` the system reads `u' = M(t) u + r sigma`, where `M` is
//! bounded as `r -> 0`. Steps use the 4-stage Gauss-Legendre collocation
//! method (order 8), which keeps the Wronskian of two solutions exactly
//! invariant up to rounding, with step-doubling error control.

use std::sync::OnceLock;

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use super::gauss::{gauss_legendre, partial_integration_matrices};
use crate::error::{Error, Result};
use crate::homogeneous::Coupling;

/// Relative local error accepted per step.
pub const STEP_TOLERANCE: f64 = 1e-12;
/// Smallest radius the integrator will approach.
pub const SMALLEST_RADIUS: f64 = 1e-10;
const MAX_LOG_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Inward,
    Outward,
}

/// Samples of a solution along the integration path.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub radii: Vec<f64>,
    pub values: Vec<[Complex64; 2]>,
}

impl Trajectory {
    pub fn last(&self) -> [Complex64; 2] {
        *self.values.last().expect("trajectory is never empty")
    }
}

struct Collocation {
    c: [f64; 4],
    a: [[f64; 4]; 4],
    b: [f64; 4],
}

fn collocation() -> &'static Collocation {
    static RULE: OnceLock<Collocation> = OnceLock::new();
    RULE.get_or_init(|| {
        let (t, w) = gauss_legendre(4);
        let (left, _) = partial_integration_matrices(&t, &w);
        let mut rule = Collocation { c: [0.0; 4], a: [[0.0; 4]; 4], b: [0.0; 4] };
        for i in 0..4 {
            rule.c[i] = 0.5 * (1.0 + t[i]);
            rule.b[i] = 0.5 * w[i];
            for (a, l) in rule.a[i].iter_mut().zip(&left[i]) {
                *a = 0.5 * l;
            }
        }
        rule
    })
}

/// Linear system `y' = M(t) y + f(t)` in `t = ln r` with `COLS` real columns.
struct LogSystem<'a, const COLS: usize> {
    nu: f64,
    kappa: f64,
    energy: f64,
    source: Option<&'a dyn Fn(f64) -> [[f64; 2]; COLS]>,
}

impl<const COLS: usize> LogSystem<'_, COLS> {
    fn matrix(&self, t: f64) -> [[f64; 2]; 2] {
        let r = t.exp();
        [
            [-self.kappa, (1.0 + self.energy) * r - self.nu],
            [(1.0 - self.energy) * r + self.nu, self.kappa],
        ]
    }

    fn forcing(&self, t: f64) -> [[f64; 2]; COLS] {
        match self.source {
            None => [[0.0; 2]; COLS],
            Some(src) => {
                let r = t.exp();
                let s = src(r);
                let mut out = [[0.0; 2]; COLS];
                for (o, col) in out.iter_mut().zip(s) {
                    *o = [r * col[1], -r * col[0]];
                }
                out
            }
        }
    }

    fn step(&self, t: f64, y: &[[f64; 2]; COLS], h: f64) -> Result<[[f64; 2]; COLS]> {
        let rule = collocation();
        let mats: Vec<[[f64; 2]; 2]> = rule.c.iter().map(|ci| self.matrix(t + ci * h)).collect();
        let mut lhs = SMatrix::<f64, 8, 8>::identity();
        for i in 0..4 {
            for j in 0..4 {
                for p in 0..2 {
                    for q in 0..2 {
                        lhs[(2 * i + p, 2 * j + q)] -= h * rule.a[i][j] * mats[i][p][q];
                    }
                }
            }
        }
        let lu = lhs.lu();
        let mut out = *y;
        for (col, yc) in y.iter().enumerate() {
            let mut rhs = SVector::<f64, 8>::zeros();
            for i in 0..4 {
                let f = self.forcing(t + rule.c[i] * h)[col];
                for p in 0..2 {
                    rhs[2 * i + p] = mats[i][p][0] * yc[0] + mats[i][p][1] * yc[1] + f[p];
                }
            }
            let k = lu.solve(&rhs).ok_or(Error::StepUnderflow(t.exp()))?;
            for i in 0..4 {
                out[col][0] += h * rule.b[i] * k[2 * i];
                out[col][1] += h * rule.b[i] * k[2 * i + 1];
            }
        }
        Ok(out)
    }

    /// Integrates from `t0` through each of `targets` (monotone), returning the states there.
    fn run(&self, t0: f64, y0: [[f64; 2]; COLS], targets: &[f64]) -> Result<Vec<[[f64; 2]; COLS]>> {
        let mut out = Vec::with_capacity(targets.len());
        let mut t = t0;
        let mut y = y0;
        let sign = if targets.last().copied().unwrap_or(t0) >= t0 { 1.0 } else { -1.0 };
        let scale0 = 1.0 + self.nu.abs() + self.kappa.abs();
        let mut h = sign * (0.2 / (scale0 + t0.exp() * (1.0 + self.energy.abs()))).min(MAX_LOG_STEP);
        let mut prev_err = STEP_TOLERANCE;
        for &target in targets {
            while (target - t) * sign > 0.0 {
                let remaining = target - t;
                let landing = h.abs() >= remaining.abs() * (1.0 - 1e-12);
                let step = if landing { remaining } else { h };
                let full = self.step(t, &y, step)?;
                let half = self.step(t, &y, 0.5 * step)?;
                let fine = self.step(t + 0.5 * step, &half, 0.5 * step)?;
                let mut err: f64 = 0.0;
                let mut size: f64 = 0.0;
                for col in 0..COLS {
                    for p in 0..2 {
                        err = err.max((fine[col][p] - full[col][p]).abs());
                        size = size.max(fine[col][p].abs()).max(y[col][p].abs());
                    }
                }
                let err = err / size.max(f64::MIN_POSITIVE);
                if err <= STEP_TOLERANCE {
                    // no local extrapolation: it would break the exact
                    // conservation of quadratic invariants
                    y = fine;
                    t = if landing { target } else { t + step };
                    let factor = 0.9
                        * (STEP_TOLERANCE / err.max(1e-300)).powf(0.7 / 9.0)
                        * (prev_err / STEP_TOLERANCE).powf(0.4 / 9.0);
                    prev_err = err.max(1e-300);
                    if !landing || step.abs() >= h.abs() * 0.5 {
                        h = step * factor.clamp(0.2, 4.0);
                    }
                    if h.abs() > MAX_LOG_STEP {
                        h = sign * MAX_LOG_STEP;
                    }
                } else {
                    h = step * (0.9 * (STEP_TOLERANCE / err).powf(1.0 / 9.0)).clamp(0.1, 0.9);
                }
                if h.abs() < 1e-14 {
                    return Err(Error::StepUnderflow(t.exp()));
                }
            }
            out.push(y);
        }
        Ok(out)
    }
}

fn validate(r_start: f64, r_end: f64, direction: Direction) -> Result<()> {
    if !(r_start > 0.0 && r_end > 0.0 && r_start.is_finite() && r_end.is_finite()) {
        return Err(Error::InvalidRange(format!("radii must be positive, got {r_start} -> {r_end}")));
    }
    if r_end < SMALLEST_RADIUS || r_start < SMALLEST_RADIUS {
        return Err(Error::StepUnderflow(r_end.min(r_start)));
    }
    let consistent = match direction {
        Direction::Inward => r_end <= r_start,
        Direction::Outward => r_end >= r_start,
    };
    if !consistent {
        return Err(Error::InvalidRange(format!("{direction:?} integration from {r_start} to {r_end}")));
    }
    Ok(())
}

/// Sample radii strictly inside the path, in travel order, then `r_end`.
fn path_points(r_start: f64, r_end: f64, samples: &[f64]) -> Vec<f64> {
    let (lo, hi) = if r_start < r_end { (r_start, r_end) } else { (r_end, r_start) };
    let mut pts: Vec<f64> = samples.iter().copied().filter(|&r| r >= lo && r <= hi && r != r_end).collect();
    if r_start < r_end {
        pts.sort_by(f64::total_cmp);
    } else {
        pts.sort_by(|a, b| b.total_cmp(a));
    }
    pts.dedup();
    pts.push(r_end);
    pts
}

/// Integrates `(S - E) u = 0` from `(r_start, u_start)` to `r_end`, sampling at
/// every radius of `samples` on the way and always at `r_end`.
pub fn integrate_ivp(
    c: &Coupling,
    energy: f64,
    r_start: f64,
    u_start: [Complex64; 2],
    direction: Direction,
    r_end: f64,
    samples: &[f64],
) -> Result<Trajectory> {
    integrate_inhomogeneous(c, energy, r_start, u_start, direction, r_end, samples, None)
}

/// As [`integrate_ivp`] for `(S - E) u = source`.
#[allow(clippy::too_many_arguments)]
pub fn integrate_ivp_with_source(
    c: &Coupling,
    energy: f64,
    r_start: f64,
    u_start: [Complex64; 2],
    direction: Direction,
    r_end: f64,
    samples: &[f64],
    source: &dyn Fn(f64) -> [Complex64; 2],
) -> Result<Trajectory> {
    integrate_inhomogeneous(c, energy, r_start, u_start, direction, r_end, samples, Some(source))
}

#[allow(clippy::too_many_arguments)]
fn integrate_inhomogeneous(
    c: &Coupling,
    energy: f64,
    r_start: f64,
    u_start: [Complex64; 2],
    direction: Direction,
    r_end: f64,
    samples: &[f64],
    source: Option<&dyn Fn(f64) -> [Complex64; 2]>,
) -> Result<Trajectory> {
    validate(r_start, r_end, direction)?;
    if source.is_none() && u_start.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::InvalidParams("zero initial value".into()));
    }
    let radii = path_points(r_start, r_end, samples);
    let targets: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let split = source.map(|src| {
        move |r: f64| {
            let [u, l] = src(r);
            [[u.re, l.re], [u.im, l.im]]
        }
    });
    let system = LogSystem::<2> {
        nu: c.nu(),
        kappa: f64::from(c.kappa()),
        energy,
        source: split.as_ref().map(|f| f as &dyn Fn(f64) -> [[f64; 2]; 2]),
    };
    let y0 = [[u_start[0].re, u_start[1].re], [u_start[0].im, u_start[1].im]];
    let states = system.run(r_start.ln(), y0, &targets)?;
    let values = states
        .into_iter()
        .map(|[re, im]| [Complex64::new(re[0], im[0]), Complex64::new(re[1], im[1])])
        .collect();
    Ok(Trajectory { radii, values })
}

/// Real-valued homogeneous integration, the fast path for shooting.
pub fn integrate_real(
    c: &Coupling,
    energy: f64,
    r_start: f64,
    u_start: [f64; 2],
    r_end: f64,
    samples: &[f64],
) -> Result<(Vec<f64>, Vec<[f64; 2]>)> {
    let direction = if r_end <= r_start { Direction::Inward } else { Direction::Outward };
    validate(r_start, r_end, direction)?;
    let radii = path_points(r_start, r_end, samples);
    let targets: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let system = LogSystem::<1> { nu: c.nu(), kappa: f64::from(c.kappa()), energy, source: None };
    let states = system.run(r_start.ln(), [u_start], &targets)?;
    Ok((radii, states.into_iter().map(|[v]| v).collect()))
}
