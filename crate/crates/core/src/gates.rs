//! Named qutrit target gates and their admissible global phases.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{wrap_positive, Real};
use crate::su3::Operator3;

/// Selective rotations between two levels and the qutrit Fourier transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateName {
    Rx12,
    Ry12,
    Rx23,
    Ry23,
    Rx13,
    Ry13,
    #[serde(rename = "QFT")]
    Qft,
}

impl GateName {
    pub const ALL: [GateName; 7] = [
        Self::Rx12,
        Self::Ry12,
        Self::Rx23,
        Self::Ry23,
        Self::Rx13,
        Self::Ry13,
        Self::Qft,
    ];

    pub const ROTATIONS: [GateName; 6] = [
        Self::Rx12,
        Self::Ry12,
        Self::Rx23,
        Self::Ry23,
        Self::Rx13,
        Self::Ry13,
    ];

    pub fn is_rotation(self) -> bool {
        self != Self::Qft
    }

    /// Level pair addressed by a rotation (0-based indices).
    pub fn levels(self) -> Option<(usize, usize)> {
        match self {
            Self::Rx12 | Self::Ry12 => Some((0, 1)),
            Self::Rx23 | Self::Ry23 => Some((1, 2)),
            Self::Rx13 | Self::Ry13 => Some((0, 2)),
            Self::Qft => None,
        }
    }

    pub fn family(self) -> Option<GateFamily> {
        self.levels().map(|l| match l {
            (0, 1) => GateFamily::R12,
            (1, 2) => GateFamily::R23,
            _ => GateFamily::R13,
        })
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Rx12 => "Rx12",
            Self::Ry12 => "Ry12",
            Self::Rx23 => "Rx23",
            Self::Ry23 => "Ry23",
            Self::Rx13 => "Rx13",
            Self::Ry13 => "Ry13",
            Self::Qft => "QFT",
        };
        f.write_str(s)
    }
}

impl FromStr for GateName {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|g| g.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!(
                    "unknown gate '{s}' (expected one of Rx12, Ry12, Rx23, Ry23, Rx13, Ry13, QFT)"
                )
            })
    }
}

/// Rotation families sharing a minimum-time curve (x and y rotations on the
/// same level pair have identical times).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateFamily {
    R12,
    R23,
    R13,
}

impl GateFamily {
    pub const ALL: [Self; 3] = [Self::R12, Self::R23, Self::R13];

    /// The x and y rotations on this level pair.
    pub fn members(self) -> [GateName; 2] {
        match self {
            Self::R12 => [GateName::Rx12, GateName::Ry12],
            Self::R23 => [GateName::Rx23, GateName::Ry23],
            Self::R13 => [GateName::Rx13, GateName::Ry13],
        }
    }

    pub fn representative(self) -> GateName {
        match self {
            Self::R12 => GateName::Rx12,
            Self::R23 => GateName::Rx23,
            Self::R13 => GateName::Rx13,
        }
    }
}

impl fmt::Display for GateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for GateFamily {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "R12" => Ok(Self::R12),
            "R23" => Ok(Self::R23),
            "R13" => Ok(Self::R13),
            _ => Err(format!(
                "unknown gate family '{s}' (expected R12, R23 or R13)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateTarget<T> {
    pub name: GateName,
    /// Rotation angle; zero for the Fourier transform.
    pub theta: T,
    pub unitary: Operator3<T>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GlobalPhaseSet<T> {
    /// Smallest phase in `[0, π]` making `det(e^{iφ₀} U) = 1`.
    pub phi0: T,
    /// `φ₀ + 2πp/3` for `p = 0, 1, 2`, reduced into `[0, 2π)`.
    pub phases: [T; 3],
}

/// Builds a named gate.
///
/// Rotations follow `R_α(θ) = exp(−iθσ_α/2)` on the addressed level pair, so
/// `R_x` carries `−i sin(θ/2)` off the diagonal and `R_y` the real
/// `[[c, −s], [s, c]]` block. The angle must lie in `[0, 2π)`; `θ` and
/// `θ + 2π` differ only by the sign of the 2×2 block. `theta` is ignored for
/// the Fourier transform.
pub fn make_gate<T: Real>(name: GateName, theta: T) -> Result<GateTarget<T>> {
    if name == GateName::Qft {
        return Ok(GateTarget {
            name,
            theta: T::zero(),
            unitary: qft(),
        });
    }
    if !(theta >= T::zero() && theta < T::TAU()) {
        return Err(Error::AngleOutOfRange {
            theta: theta.to_f64(),
        });
    }
    Ok(GateTarget {
        name,
        theta,
        unitary: rotation_unitary(name, theta),
    })
}

/// Rotation matrix for any real angle (no range check).
pub fn rotation_unitary<T: Real>(name: GateName, theta: T) -> Operator3<T> {
    let (j, k) = name.levels().expect("rotation gate");
    let half = theta / T::lit(2.0);
    let (s, cs) = half.sin_cos();
    let mut u = Operator3::identity();
    u.entries[j][j] = Complex::new(cs, T::zero());
    u.entries[k][k] = Complex::new(cs, T::zero());
    match name {
        GateName::Rx12 | GateName::Rx23 | GateName::Rx13 => {
            u.entries[j][k] = Complex::new(T::zero(), -s);
            u.entries[k][j] = Complex::new(T::zero(), -s);
        }
        _ => {
            u.entries[j][k] = Complex::new(-s, T::zero());
            u.entries[k][j] = Complex::new(s, T::zero());
        }
    }
    u
}

/// The 3×3 discrete Fourier transform, `F[j][k] = σ^{jk}/√3`, `σ = e^{2πi/3}`.
pub fn qft<T: Real>() -> Operator3<T> {
    let norm = T::one() / T::lit(3.0).sqrt();
    let mut u = Operator3::zero();
    for j in 0..3 {
        for k in 0..3 {
            let power = ((j * k) % 3) as f64;
            u.entries[j][k] =
                Complex::from_polar(norm, T::lit(2.0 * std::f64::consts::PI * power / 3.0));
        }
    }
    u
}

/// Admissible global phases of a target, computed analytically from `det U`.
pub fn global_phases<T: Real>(gate: &GateTarget<T>) -> GlobalPhaseSet<T> {
    phases_of(&gate.unitary)
}

/// As [`global_phases`] for an arbitrary unitary.
pub fn phases_of<T: Real>(u: &Operator3<T>) -> GlobalPhaseSet<T> {
    let third_turn = T::TAU() / T::lit(3.0);
    // e^{3iφ} det U = 1  ⇔  φ ≡ −arg(det U)/3  (mod 2π/3).
    let delta = u.det().arg();
    let mut phi0 = (-delta / T::lit(3.0)) % third_turn;
    if phi0 < T::zero() {
        phi0 = phi0 + third_turn;
    }
    if (third_turn - phi0).abs() < T::hermitian_tol() {
        phi0 = T::zero();
    }
    let phases = [0.0, 1.0, 2.0].map(|p| wrap_positive(phi0 + third_turn * T::lit(p)));
    GlobalPhaseSet { phi0, phases }
}
