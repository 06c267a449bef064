//! Power-series solutions `r^{+-s} sum a_k r^k` of `(S - E) u = 0` about `r = 0`.

use super::Coupling;

/// One Frobenius solution with leading exponent `sigma`.
#[derive(Debug, Clone)]
pub struct FrobeniusSeries {
    sigma: f64,
    coeffs: Vec<[f64; 2]>,
}

impl FrobeniusSeries {
    /// Series with exponent `sign * s`, normalised so the leading vector is
    /// `(nu, -(kappa + sigma))` scaled to unit length.
    pub fn new(c: &Coupling, energy: f64, sign: f64, terms: usize) -> Self {
        let sigma = sign.signum() * c.exponent();
        let (nu, kappa) = (c.nu(), f64::from(c.kappa()));
        let lead = [nu, -(kappa + sigma)];
        let len = lead[0].hypot(lead[1]);
        let mut coeffs = vec![[lead[0] / len, lead[1] / len]];
        for k in 1..terms {
            let prev = coeffs[k - 1];
            // (M0 - (sigma + k)) a_k = -M1 a_{k-1}
            let rhs = [-(1.0 + energy) * prev[1], -(1.0 - energy) * prev[0]];
            let lam = sigma + k as f64;
            let m = [[-kappa - lam, -nu], [nu, kappa - lam]];
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            coeffs.push([
                (m[1][1] * rhs[0] - m[0][1] * rhs[1]) / det,
                (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det,
            ]);
        }
        Self { sigma, coeffs }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn leading(&self) -> [f64; 2] {
        self.coeffs[0]
    }

    pub fn eval(&self, r: f64) -> [f64; 2] {
        let mut acc = [0.0; 2];
        let mut p = 1.0;
        for a in &self.coeffs {
            acc[0] += a[0] * p;
            acc[1] += a[1] * p;
            p *= r;
        }
        let scale = r.powf(self.sigma);
        [acc[0] * scale, acc[1] * scale]
    }
}

/// The pair of Frobenius solutions at one energy.
#[derive(Debug, Clone)]
pub struct FrobeniusPair {
    pub singular: FrobeniusSeries,
    pub regular: FrobeniusSeries,
}

impl FrobeniusPair {
    pub fn new(c: &Coupling, energy: f64) -> Self {
        Self {
            singular: FrobeniusSeries::new(c, energy, -1.0, 40),
            regular: FrobeniusSeries::new(c, energy, 1.0, 40),
        }
    }

    /// Short-distance coefficients `(g0, g1)` of the solution equal to `u` at `r`.
    pub fn boundary_coefficients(&self, r: f64, u: [f64; 2]) -> ([f64; 2], [f64; 2]) {
        let a = self.singular.eval(r);
        let b = self.regular.eval(r);
        let det = a[0] * b[1] - a[1] * b[0];
        let alpha = (u[0] * b[1] - u[1] * b[0]) / det;
        let beta = (a[0] * u[1] - a[1] * u[0]) / det;
        let (la, lb) = (self.singular.leading(), self.regular.leading());
        ([alpha * la[0], alpha * la[1]], [beta * lb[0], beta * lb[1]])
    }
}
