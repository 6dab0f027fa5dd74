//! The su(3) generator basis adapted to hard-pulse control, its Cartan
//! structure `su(3) = 𝔭 ⊕ 𝔨` with `𝔨 = span{I_x, I_y, I_z}`, and the
//! eight-factor sequence
//!
//! ```text
//! U = Q(α₁, β₁, γ₁) · e^{−i t₁ L₄} · e^{−i t₂ L₇} · Q(α₂, β₂, γ₂)
//! ```
//!
//! where `Q` is an Euler rotation (`x–y–x` or `y–x–y`) and `L₇` may be
//! swapped for `L₈`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::su3::{herm_expm, phase_sensitive_distance, spin1_operators, spin_rotation, Operator3};

/// `L₁ … L₈`, stored zero-indexed.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorBasis<T> {
    pub l: [Operator3<T>; 8],
}

impl<T: Real> GeneratorBasis<T> {
    /// `L_m`, one-based.
    pub fn get(&self, m: usize) -> &Operator3<T> {
        &self.l[m - 1]
    }

    pub fn compact(&self) -> &[Operator3<T>] {
        &self.l[..3]
    }

    pub fn noncompact(&self) -> &[Operator3<T>] {
        &self.l[3..]
    }
}

/// Conjugation `e^{−iθI} X e^{iθI}`.
fn adjoint_action<T: Real>(generator: &Operator3<T>, theta: T, x: &Operator3<T>) -> Operator3<T> {
    let u = herm_expm(generator, theta).expect("spin operators are Hermitian");
    u * *x * u.adjoint()
}

/// Builds `L₅ … L₈` by conjugating `H_q` with hard rotations.
pub fn generator_basis<T: Real>() -> GeneratorBasis<T> {
    let s = spin1_operators::<T>();
    let quarter = T::FRAC_PI_4();
    let half = T::FRAC_PI_2();
    let l5 = adjoint_action(&s.ix, quarter, &s.hq);
    let l6 = adjoint_action(&s.iy, quarter, &s.hq);
    let l7 = adjoint_action(&s.iy, half, &s.hq);
    let l8 = adjoint_action(&s.iy, -half, &l5);
    GeneratorBasis {
        l: [s.ix, s.iy, s.iz, s.hq, l5, l6, l7, l8],
    }
}

fn explicit_l5<T: Real>() -> Operator3<T> {
    let r2 = std::f64::consts::SQRT_2;
    let k = 1.0 / (12.0 * r2);
    Operator3::from_parts(
        [
            [r2 * k, 0.0, -3.0 * r2 * k],
            [0.0, -2.0 * r2 * k, 0.0],
            [-3.0 * r2 * k, 0.0, r2 * k],
        ],
        [
            [0.0, 6.0 * k, 0.0],
            [-6.0 * k, 0.0, -6.0 * k],
            [0.0, 6.0 * k, 0.0],
        ],
    )
}

fn explicit_l6<T: Real>() -> Operator3<T> {
    let r2 = std::f64::consts::SQRT_2;
    let k = 1.0 / (12.0 * r2);
    Operator3::from_parts(
        [
            [r2 * k, 6.0 * k, 3.0 * r2 * k],
            [6.0 * k, -2.0 * r2 * k, -6.0 * k],
            [3.0 * r2 * k, -6.0 * k, r2 * k],
        ],
        [[0.0; 3]; 3],
    )
}

fn explicit_l7<T: Real>() -> Operator3<T> {
    let s6 = 1.0 / 6.0;
    Operator3::from_parts(
        [[-s6, 0.0, 0.5], [0.0, 2.0 * s6, 0.0], [0.5, 0.0, -s6]],
        [[0.0; 3]; 3],
    )
}

fn explicit_l8<T: Real>() -> Operator3<T> {
    let s6 = 1.0 / 6.0;
    Operator3::from_parts(
        [[-s6, 0.0, 0.0], [0.0, 2.0 * s6, 0.0], [0.0, 0.0, -s6]],
        [[0.0, 0.0, -0.5], [0.0; 3], [0.5, 0.0, 0.0]],
    )
}

/// The explicit matrix forms of `L₁ … L₈` (with `q = 1`).
pub fn explicit_basis<T: Real>() -> GeneratorBasis<T> {
    let s = spin1_operators::<T>();
    GeneratorBasis {
        l: [
            s.ix,
            s.iy,
            s.iz,
            s.hq,
            explicit_l5(),
            explicit_l6(),
            explicit_l7(),
            explicit_l8(),
        ],
    }
}

/// One commutator `[L_a, L_b]` checked against its claimed subspace.
#[derive(Clone, Debug)]
pub struct CommutatorCheck {
    /// One-based generator indices.
    pub a: usize,
    pub b: usize,
    pub lands_in: Subspace,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subspace {
    /// `𝔨 = span{L₁, L₂, L₃}`
    Compact,
    /// `𝔭 = span{L₄ … L₈}`
    Noncompact,
}

/// Outcome of the three closure relations `[𝔨,𝔨] ⊂ 𝔨`, `[𝔭,𝔨] ⊂ 𝔭`, `[𝔭,𝔭] ⊂ 𝔨`.
#[derive(Clone, Debug)]
pub struct CartanReport {
    pub k_closed: bool,
    pub pk_in_p: bool,
    pub pp_in_k: bool,
    /// All 28 unordered pairs `a < b`.
    pub checks: Vec<CommutatorCheck>,
    pub tolerance: f64,
}

impl CartanReport {
    pub fn all_pass(&self) -> bool {
        self.k_closed && self.pk_in_p && self.pp_in_k
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CommutatorCheck> {
        self.checks.iter().filter(|c| c.residual >= self.tolerance)
    }
}

/// Hilbert–Schmidt orthonormal basis of the span of `ops` (Gram–Schmidt).
fn orthonormalize<T: Real>(ops: &[Operator3<T>]) -> Vec<Operator3<T>> {
    let mut out: Vec<Operator3<T>> = Vec::new();
    for op in ops {
        let mut v = *op;
        for e in &out {
            v = v - e.scale(e.hs_inner(&v));
        }
        let n = v.frobenius_norm();
        if n > T::lit(1e-9) {
            out.push(v.scale_real(T::one() / n));
        }
    }
    out
}

/// Norm of the component of `x` orthogonal to the span of `onb`.
fn off_span_residual<T: Real>(x: &Operator3<T>, onb: &[Operator3<T>]) -> T {
    let mut v = *x;
    for e in onb {
        v = v - e.scale(e.hs_inner(&v));
    }
    v.frobenius_norm()
}

pub const CARTAN_TOL: f64 = 1e-10;

/// Checks the closure relations of the Cartan decomposition for a basis.
pub fn check_cartan_structure<T: Real>(basis: &GeneratorBasis<T>) -> CartanReport {
    let k_onb = orthonormalize(basis.compact());
    let p_onb = orthonormalize(basis.noncompact());
    let mut checks = Vec::with_capacity(28);
    let (mut kk, mut pk, mut pp) = (true, true, true);
    for a in 0..8 {
        for b in (a + 1)..8 {
            let comm = basis.l[a].commutator(&basis.l[b]);
            let a_in_k = a < 3;
            let b_in_k = b < 3;
            let lands_in = if a_in_k == b_in_k {
                Subspace::Compact
            } else {
                Subspace::Noncompact
            };
            let onb = if lands_in == Subspace::Compact {
                &k_onb
            } else {
                &p_onb
            };
            let residual = off_span_residual(&comm, onb).to_f64();
            let ok = residual < CARTAN_TOL;
            match (a_in_k, b_in_k) {
                (true, true) => kk &= ok,
                (false, false) => pp &= ok,
                _ => pk &= ok,
            }
            checks.push(CommutatorCheck {
                a: a + 1,
                b: b + 1,
                lands_in,
                residual,
            });
        }
    }
    CartanReport {
        k_closed: kk,
        pk_in_p: pk,
        pp_in_k: pp,
        checks,
        tolerance: CARTAN_TOL,
    }
}

/// Axis order of the Euler rotations `Q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EulerConvention {
    #[default]
    #[serde(rename = "XYX")]
    Xyx,
    #[serde(rename = "YXY")]
    Yxy,
}

impl EulerConvention {
    pub const ALL: [Self; 2] = [Self::Xyx, Self::Yxy];
}

impl fmt::Display for EulerConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Xyx => "XYX",
            Self::Yxy => "YXY",
        })
    }
}

impl FromStr for EulerConvention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().replace('-', "").as_str() {
            "XYX" => Ok(Self::Xyx),
            "YXY" => Ok(Self::Yxy),
            _ => Err(format!("unknown Euler convention '{s}'")),
        }
    }
}

/// Which generator accompanies `L₄` in the Cartan subalgebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanPair {
    #[default]
    #[serde(rename = "L4_L7")]
    L4L7,
    #[serde(rename = "L4_L8")]
    L4L8,
}

impl CartanPair {
    pub const ALL: [Self; 2] = [Self::L4L7, Self::L4L8];
}

impl fmt::Display for CartanPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::L4L7 => "L4_L7",
            Self::L4L8 => "L4_L8",
        })
    }
}

impl FromStr for CartanPair {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "L4_L7" | "L4L7" => Ok(Self::L4L7),
            "L4_L8" | "L4L8" => Ok(Self::L4L8),
            _ => Err(format!("unknown Cartan pair '{s}'")),
        }
    }
}

/// Parameters of the eight-factor sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SequenceParams<T> {
    pub alpha1: T,
    pub beta1: T,
    pub gamma1: T,
    pub alpha2: T,
    pub beta2: T,
    pub gamma2: T,
    pub t1: T,
    pub t2: T,
    pub euler_convention: EulerConvention,
    pub cartan_pair: CartanPair,
}

impl<T: Real> SequenceParams<T> {
    pub fn identity() -> Self {
        Self {
            alpha1: T::zero(),
            beta1: T::zero(),
            gamma1: T::zero(),
            alpha2: T::zero(),
            beta2: T::zero(),
            gamma2: T::zero(),
            t1: T::zero(),
            t2: T::zero(),
            euler_convention: EulerConvention::Xyx,
            cartan_pair: CartanPair::L4L7,
        }
    }

    /// `[α₁, β₁, γ₁, α₂, β₂, γ₂, t₁, t₂]`
    pub fn values(&self) -> [T; 8] {
        [
            self.alpha1,
            self.beta1,
            self.gamma1,
            self.alpha2,
            self.beta2,
            self.gamma2,
            self.t1,
            self.t2,
        ]
    }

    pub fn from_values(
        v: [T; 8],
        euler_convention: EulerConvention,
        cartan_pair: CartanPair,
    ) -> Self {
        Self {
            alpha1: v[0],
            beta1: v[1],
            gamma1: v[2],
            alpha2: v[3],
            beta2: v[4],
            gamma2: v[5],
            t1: v[6],
            t2: v[7],
            euler_convention,
            cartan_pair,
        }
    }

    pub fn total_time(&self) -> T {
        self.t1 + self.t2
    }

    pub fn check_times(&self) -> Result<()> {
        if self.t1 < T::zero() || self.t2 < T::zero() || self.t1.is_nan() || self.t2.is_nan() {
            return Err(Error::NegativeTime {
                t1: self.t1.to_f64(),
                t2: self.t2.to_f64(),
            });
        }
        Ok(())
    }

    /// The factors in operator (left-to-right) order.
    pub fn factors(&self) -> [(Generator, T); 8] {
        let (a, b) = self.euler_convention.axes();
        let c = self.cartan_pair.generator();
        [
            (a, self.alpha1),
            (b, self.beta1),
            (a, self.gamma1),
            (Generator::L4, self.t1),
            (c, self.t2),
            (a, self.alpha2),
            (b, self.beta2),
            (a, self.gamma2),
        ]
    }
}

/// Generators appearing as single factors `e^{−i p G}` in the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Ix,
    Iy,
    L4,
    L7,
    L8,
}

impl EulerConvention {
    /// (outer axis, middle axis)
    pub fn axes(self) -> (Generator, Generator) {
        match self {
            Self::Xyx => (Generator::Ix, Generator::Iy),
            Self::Yxy => (Generator::Iy, Generator::Ix),
        }
    }
}

impl CartanPair {
    pub fn generator(self) -> Generator {
        match self {
            Self::L4L7 => Generator::L7,
            Self::L4L8 => Generator::L8,
        }
    }
}

impl Generator {
    pub fn matrix<T: Real>(self) -> Operator3<T> {
        match self {
            Self::Ix => spin1_operators().ix,
            Self::Iy => spin1_operators().iy,
            Self::L4 => spin1_operators().hq,
            Self::L7 => explicit_l7(),
            Self::L8 => explicit_l8(),
        }
    }

    /// Closed-form `e^{−i p G}`.
    ///
    /// Spin components have spectrum `{1, 0, −1}`; the Cartan generators have
    /// spectrum `{1/3, 1/3, −2/3}`, so `G = 1/3 − P` with `P` a rank-one
    /// projector and `e^{−ipG} = e^{−ip/3}·1 + (e^{2ip/3} − e^{−ip/3})·P`.
    pub fn exp<T: Real>(self, p: T) -> Operator3<T> {
        let g = self.matrix::<T>();
        match self {
            Self::Ix | Self::Iy => spin_rotation(&g, p),
            Self::L4 | Self::L7 | Self::L8 => {
                let third = T::one() / T::lit(3.0);
                let proj = Operator3::identity().scale_real(third) - g;
                let lo = Complex::from_polar(T::one(), -p * third);
                let hi = Complex::from_polar(T::one(), (p + p) * third);
                Operator3::identity().scale(lo) + proj.scale(hi - lo)
            }
        }
    }
}

/// `e^{−iαA} e^{−iβB} e^{−iγA}` with `(A, B) = (I_x, I_y)` or `(I_y, I_x)`.
pub fn euler_rotation<T: Real>(
    alpha: T,
    beta: T,
    gamma: T,
    convention: EulerConvention,
) -> Operator3<T> {
    let (a, b) = convention.axes();
    a.exp(alpha) * b.exp(beta) * a.exp(gamma)
}

/// The sequence unitary `Q₁ · e^{−it₁L₄} · e^{−it₂L₇|₈} · Q₂`.
pub fn sequence_unitary<T: Real>(p: &SequenceParams<T>) -> Result<Operator3<T>> {
    p.check_times()?;
    Ok(sequence_unitary_unchecked(p))
}

/// As [`sequence_unitary`] without the sign check on the times.
pub fn sequence_unitary_unchecked<T: Real>(p: &SequenceParams<T>) -> Operator3<T> {
    p.factors()
        .iter()
        .fold(Operator3::identity(), |acc, (g, v)| acc * g.exp(*v))
}

/// `‖e^{iφ}G − U(p)‖_F`; negative times are evaluated as given.
pub fn residual<T: Real>(p: &SequenceParams<T>, gate: &Operator3<T>, phi: T) -> T {
    phase_sensitive_distance(&gate.with_phase(phi), &sequence_unitary_unchecked(p))
}

/// `ξ(θ) = ½·atan2(2√2 sin(θ/2), 1 + 3 cos(θ/2))`.
pub fn xi<T: Real>(theta: T) -> T {
    let half = theta / T::lit(2.0);
    let num = T::lit(2.0 * std::f64::consts::SQRT_2) * half.sin();
    let den = T::one() + T::lit(3.0) * half.cos();
    num.atan2(den) / T::lit(2.0)
}

/// `η(θ) = π/2 + ξ(θ)`.
pub fn eta<T: Real>(theta: T) -> T {
    T::FRAC_PI_2() + xi(theta)
}
