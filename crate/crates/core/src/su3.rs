//! 3×3 complex operator algebra on the spin-1 qutrit space.
//!
//! Basis order is `|m = +1⟩, |m = 0⟩, |m = −1⟩`. Energies are measured in
//! units of the quadrupole constant `q` and times in units of `1/q`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A 3×3 complex matrix, row-major: `entries[row][col]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Operator3<T> {
    pub entries: [[Complex<T>; 3]; 3],
}

#[inline]
fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

impl<T: Real> Operator3<T> {
    pub fn new(entries: [[Complex<T>; 3]; 3]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self {
            entries: [[Complex::new(T::zero(), T::zero()); 3]; 3],
        }
    }

    pub fn identity() -> Self {
        Self::diag([T::one(), T::one(), T::one()])
    }

    pub fn diag(d: [T; 3]) -> Self {
        Self::diag_complex([c(d[0], T::zero()), c(d[1], T::zero()), c(d[2], T::zero())])
    }

    pub fn diag_complex(d: [Complex<T>; 3]) -> Self {
        let mut m = Self::zero();
        for (k, v) in d.into_iter().enumerate() {
            m.entries[k][k] = v;
        }
        m
    }

    /// Builds a matrix from real and imaginary parts given as `f64` literals.
    pub fn from_parts(re: [[f64; 3]; 3], im: [[f64; 3]; 3]) -> Self {
        let mut m = Self::zero();
        for j in 0..3 {
            for k in 0..3 {
                m.entries[j][k] = c(T::lit(re[j][k]), T::lit(im[j][k]));
            }
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for j in 0..3 {
            for k in 0..3 {
                m.entries[j][k] = self.entries[k][j].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for j in 0..3 {
            for k in 0..3 {
                m.entries[j][k] = self.entries[k][j];
            }
        }
        m
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z = *z * s);
        m
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(c(s, T::zero()))
    }

    /// Multiplies by the global phase factor `e^{iφ}`.
    pub fn with_phase(&self, phi: T) -> Self {
        self.scale(Complex::from_polar(T::one(), phi))
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    pub fn det(&self) -> Complex<T> {
        let m = &self.entries;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Hilbert–Schmidt inner product `Tr(self† · other)`.
    pub fn hs_inner(&self, other: &Self) -> Complex<T> {
        let mut s = c(T::zero(), T::zero());
        for j in 0..3 {
            for k in 0..3 {
                s = s + self.entries[j][k].conj() * other.entries[j][k];
            }
        }
        s
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Largest `|H[j][k] − conj(H[k][j])|`.
    pub fn hermitian_deviation(&self) -> T {
        let mut worst = T::zero();
        for j in 0..3 {
            for k in j..3 {
                worst = worst.max((self.entries[j][k] - self.entries[k][j].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= T::hermitian_tol()
    }

    /// `‖U†U − I‖_F`.
    pub fn unitary_deviation(&self) -> T {
        (self.adjoint() * *self - Self::identity()).frobenius_norm()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary_deviation() <= T::unitary_tol()
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> Operator3<U> {
        let mut m = Operator3::<U>::zero();
        for j in 0..3 {
            for k in 0..3 {
                let z = self.entries[j][k];
                m.entries[j][k] = Complex::new(f(z.re), f(z.im));
            }
        }
        m
    }
}

impl<T: Real> Default for Operator3<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> Mul for Operator3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut r = Self::zero();
        for j in 0..3 {
            for k in 0..3 {
                let mut s = c(T::zero(), T::zero());
                for l in 0..3 {
                    s = s + self.entries[j][l] * rhs.entries[l][k];
                }
                r.entries[j][k] = s;
            }
        }
        r
    }
}

impl<T: Real> Add for Operator3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut r = self;
        for j in 0..3 {
            for k in 0..3 {
                r.entries[j][k] = r.entries[j][k] + rhs.entries[j][k];
            }
        }
        r
    }
}

impl<T: Real> Sub for Operator3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for Operator3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_real(-T::one())
    }
}

/// The spin-1 angular momentum operators and the quadrupole Hamiltonian.
#[derive(Clone, Copy, Debug)]
pub struct Spin1<T> {
    pub ix: Operator3<T>,
    pub iy: Operator3<T>,
    pub iz: Operator3<T>,
    pub hq: Operator3<T>,
}

/// `I_x`, `I_y`, `I_z` and `H_q = I_z² − 2/3` (with `q = 1`, on resonance).
pub fn spin1_operators<T: Real>() -> Spin1<T> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let ix = Operator3::from_parts([[0.0, r, 0.0], [r, 0.0, r], [0.0, r, 0.0]], [[0.0; 3]; 3]);
    let iy = Operator3::from_parts([[0.0; 3]; 3], [[0.0, -r, 0.0], [r, 0.0, -r], [0.0, r, 0.0]]);
    let iz = Operator3::diag([T::one(), T::zero(), -T::one()]);
    let third = T::one() / T::lit(3.0);
    let hq = Operator3::diag([third, -(third + third), third]);
    Spin1 { ix, iy, iz, hq }
}

/// Eigendecomposition `H = V · diag(λ) · V†` of a Hermitian 3×3 matrix.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen<T> {
    pub values: [T; 3],
    pub vectors: Operator3<T>,
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation factors the pivot `a_pq = |a_pq| e^{iφ}` as
/// `diag(e^{iφ}, 1) · M · diag(e^{−iφ}, 1)` with `M` real symmetric and applies
/// the real Jacobi rotation to `M`.
pub fn hermitian_eigen<T: Real>(h: &Operator3<T>) -> HermitianEigen<T> {
    let mut a = *h;
    // Force exact Hermitian symmetry so round-off in the input cannot stall the sweep.
    for j in 0..3 {
        a.entries[j][j].im = T::zero();
        for k in (j + 1)..3 {
            let avg = (a.entries[j][k] + a.entries[k][j].conj()).scale(T::lit(0.5));
            a.entries[j][k] = avg;
            a.entries[k][j] = avg.conj();
        }
    }
    let mut v = Operator3::<T>::identity();
    let scale = a.frobenius_norm().max(T::min_positive_value());
    for _sweep in 0..64 {
        let off =
            (a.entries[0][1].norm_sqr() + a.entries[0][2].norm_sqr() + a.entries[1][2].norm_sqr())
                .sqrt();
        if off <= T::epsilon() * scale * T::lit(1e-2) {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a.entries[p][q];
            let b = apq.norm();
            if b <= T::min_positive_value() {
                continue;
            }
            let phase = apq.scale(T::one() / b);
            let app = a.entries[p][p].re;
            let aqq = a.entries[q][q].re;
            let theta = (aqq - app) / (b + b);
            let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
            let t = if theta == T::zero() { T::one() } else { t };
            let cs = T::one() / (t * t + T::one()).sqrt();
            let sn = t * cs;
            // Rotation J with J[p][p] = c·e^{iφ}, J[p][q] = s·e^{iφ}, J[q][p] = −s, J[q][q] = c.
            let mut j = Operator3::<T>::identity();
            j.entries[p][p] = phase.scale(cs);
            j.entries[p][q] = phase.scale(sn);
            j.entries[q][p] = c(-sn, T::zero());
            j.entries[q][q] = c(cs, T::zero());
            a = j.adjoint() * a * j;
            a.entries[p][q] = c(T::zero(), T::zero());
            a.entries[q][p] = c(T::zero(), T::zero());
            v = v * j;
        }
    }
    HermitianEigen {
        values: [a.entries[0][0].re, a.entries[1][1].re, a.entries[2][2].re],
        vectors: v,
    }
}

/// `exp(−i t H)` for Hermitian `H`, via eigendecomposition.
pub fn herm_expm<T: Real>(h: &Operator3<T>, t: T) -> Result<Operator3<T>> {
    let dev = h.hermitian_deviation();
    if dev > T::hermitian_tol() * h.frobenius_norm().max(T::one()) {
        return Err(Error::NotHermitian {
            deviation: dev.to_f64(),
        });
    }
    let eig = hermitian_eigen(h);
    let phases = eig.values.map(|l| Complex::from_polar(T::one(), -l * t));
    Ok(eig.vectors * Operator3::diag_complex(phases) * eig.vectors.adjoint())
}

/// Phase-insensitive gate fidelity `|Tr(U†V)| / 3`.
pub fn gate_fidelity<T: Real>(u: &Operator3<T>, v: &Operator3<T>) -> Result<T> {
    for m in [u, v] {
        let dev = m.unitary_deviation();
        if dev > T::unitary_tol() {
            return Err(Error::NotUnitary {
                deviation: dev.to_f64(),
            });
        }
    }
    Ok(u.hs_inner(v).norm() / T::lit(3.0))
}

/// Phase-sensitive distance `‖U − V‖_F`.
pub fn phase_sensitive_distance<T: Real>(u: &Operator3<T>, v: &Operator3<T>) -> T {
    (*u - *v).frobenius_norm()
}

/// Closed-form `exp(−iθ I_n)` for a spin-1 component with spectrum `{1, 0, −1}`:
/// `1 − i sinθ·I_n + (cosθ − 1)·I_n²`.
pub fn spin_rotation<T: Real>(generator: &Operator3<T>, theta: T) -> Operator3<T> {
    let sq = *generator * *generator;
    Operator3::identity()
        + generator.scale(c(T::zero(), -theta.sin()))
        + sq.scale_real(theta.cos() - T::one())
}
