//! Invariant of the `SU(3)/SO(3)` double coset used to screen `(t₁, t₂)`.
//!
//! In the Cartesian spin-1 basis `|x⟩, |y⟩, |z⟩` every hard rotation is a
//! real orthogonal matrix and `L₄ = diag(1, 1, −2)/3`, `L₇ = diag(−2, 1, 1)/3`.
//! Writing `U = O₁·D·O₂` with `D = e^{−i(t₁L₄ + t₂L₇)}` gives
//! `UᵀU = O₂ᵀ D² O₂`, so a unimodular target is reachable at `(t₁, t₂)` iff
//! `UᵀU` and `D²` share a spectrum. For unimodular unitaries the spectrum is
//! fixed by the trace, which leaves one complex equation
//!
//! ```text
//! F(t₁, t₂) = Σ_k exp(−2i(t₁a_k + t₂b_k)) − Tr(UᵀU) = 0.
//! ```

use num_complex::Complex64;

use crate::su3::Operator3;

type Op = Operator3<f64>;

/// Diagonal of `L₄` in the Cartesian basis.
pub const L4_DIAG: [f64; 3] = [1.0 / 3.0, 1.0 / 3.0, -2.0 / 3.0];
/// Diagonal of `L₇` in the Cartesian basis.
pub const L7_DIAG: [f64; 3] = [-2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];

/// Columns are `|x⟩, |y⟩, |z⟩` expressed in the `|+1⟩, |0⟩, |−1⟩` basis.
pub fn cartesian_basis() -> Op {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Op::from_parts(
        [[-r, 0.0, 0.0], [0.0, 0.0, 1.0], [r, 0.0, 0.0]],
        [[0.0, r, 0.0], [0.0; 3], [0.0, r, 0.0]],
    )
}

/// `Tr(UᵀU)` with `U` taken in the Cartesian basis.
pub fn coset_trace(target: &Op) -> Complex64 {
    let w = cartesian_basis();
    let u = w.adjoint() * *target * w;
    (u.transpose() * u).trace()
}

#[derive(Clone, Copy, Debug)]
pub struct TimeEquation {
    pub trace: Complex64,
}

impl TimeEquation {
    pub fn new(target: &Op) -> Self {
        Self {
            trace: coset_trace(target),
        }
    }

    /// `F(t₁, t₂)` and its partial derivatives.
    pub fn eval(&self, t1: f64, t2: f64) -> (Complex64, Complex64, Complex64) {
        let mut f = -self.trace;
        let mut d1 = Complex64::new(0.0, 0.0);
        let mut d2 = Complex64::new(0.0, 0.0);
        for k in 0..3 {
            let e = Complex64::from_polar(1.0, -2.0 * (t1 * L4_DIAG[k] + t2 * L7_DIAG[k]));
            f += e;
            d1 += e * Complex64::new(0.0, -2.0 * L4_DIAG[k]);
            d2 += e * Complex64::new(0.0, -2.0 * L7_DIAG[k]);
        }
        (f, d1, d2)
    }

    pub fn mismatch(&self, t1: f64, t2: f64) -> f64 {
        self.eval(t1, t2).0.norm()
    }

    /// Damped Gauss–Newton on the two real components of `F`, keeping
    /// `(t₁, t₂)` inside `[0, upper]²`.
    pub fn refine(&self, start: (f64, f64), upper: f64, max_iter: usize) -> (f64, f64, f64) {
        let clamp = |v: f64| v.max(0.0).min(upper);
        let (mut t1, mut t2) = (clamp(start.0), clamp(start.1));
        let mut cost = self.mismatch(t1, t2);
        let mut lambda = 1e-6;
        for _ in 0..max_iter {
            if cost < 1e-15 {
                break;
            }
            let (f, d1, d2) = self.eval(t1, t2);
            // Normal equations for J = [[d1.re, d2.re], [d1.im, d2.im]].
            let a11 = d1.norm_sqr();
            let a22 = d2.norm_sqr();
            let a12 = d1.re * d2.re + d1.im * d2.im;
            let g1 = d1.re * f.re + d1.im * f.im;
            let g2 = d2.re * f.re + d2.im * f.im;
            let mut accepted = false;
            while lambda < 1e10 {
                let (b11, b22) = (a11 + lambda * (a11 + 1e-12), a22 + lambda * (a22 + 1e-12));
                let det = b11 * b22 - a12 * a12;
                if det.abs() < 1e-300 {
                    lambda *= 10.0;
                    continue;
                }
                let s1 = -(b22 * g1 - a12 * g2) / det;
                let s2 = -(b11 * g2 - a12 * g1) / det;
                let (n1, n2) = (clamp(t1 + s1), clamp(t2 + s2));
                let c = self.mismatch(n1, n2);
                if c < cost {
                    t1 = n1;
                    t2 = n2;
                    cost = c;
                    lambda = (lambda * 0.1).max(1e-15);
                    accepted = true;
                    break;
                }
                lambda *= 10.0;
            }
            if !accepted {
                break;
            }
        }
        (t1, t2, cost)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Generator;
    use crate::su3::phase_sensitive_distance;

    #[test]
    fn cartan_generators_are_diagonal_in_cartesian_basis() {
        let w = cartesian_basis();
        assert!(w.unitary_deviation() < 1e-15);
        let l4 = w.adjoint() * Generator::L4.matrix::<f64>() * w;
        let l7 = w.adjoint() * Generator::L7.matrix::<f64>() * w;
        assert!(phase_sensitive_distance(&l4, &Op::diag(L4_DIAG)) < 1e-15);
        assert!(phase_sensitive_distance(&l7, &Op::diag(L7_DIAG)) < 1e-15);
        for g in [Generator::Ix, Generator::Iy] {
            let r = w.adjoint() * g.exp::<f64>(0.77) * w;
            for z in r.entries.iter().flatten() {
                assert!(z.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn invariant_vanishes_on_reachable_points() {
        let u = Generator::Ix.exp(0.3)
            * Generator::L4.exp(0.9)
            * Generator::L8.exp(1.4)
            * Generator::Iy.exp(-2.0);
        let eq = TimeEquation::new(&u);
        assert!(eq.mismatch(0.9, 1.4) < 1e-14);
        assert!(eq.mismatch(1.0, 1.4) > 1e-3);
        let (t1, t2, c) = eq.refine((0.95, 1.35), 7.0, 100);
        assert!(c < 1e-13);
        assert!(eq.mismatch(t1, t2) < 1e-13);
    }
}
