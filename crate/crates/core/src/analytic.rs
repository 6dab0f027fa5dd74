//! Closed-form time-optimal solutions for the selective rotations and the
//! qutrit Fourier transform, stored as one data record per table row.
//!
//! Angles are written with
//! `ξ(θ) = ½·atan2(2√2 sin(θ/2), 1 + 3 cos(θ/2))` and `η = π/2 + ξ`;
//! times with `a(θ) = arccos(cos²(θ/4))` for the 1–2 and 2–3 rotations and
//! `c = arccos(√(2/3))` for the Fourier transform.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::cartan::{eta, residual, xi, CartanPair, EulerConvention, SequenceParams};
use crate::error::{Error, Result};
use crate::gates::{make_gate, qft, rotation_unitary, GateFamily, GateName};
use crate::scalar::{wrap_positive, Real};

/// Symbolic Euler angle of a table row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleExpr {
    /// `num·π/den`
    PiFrac(i32, i32),
    Xi,
    Eta,
}

impl AngleExpr {
    pub const ZERO: Self = Self::PiFrac(0, 1);

    pub fn eval<T: Real>(self, theta: T) -> T {
        match self {
            Self::PiFrac(n, d) => T::PI() * T::lit(n as f64) / T::lit(d as f64),
            Self::Xi => xi(theta),
            Self::Eta => eta(theta),
        }
    }
}

/// Base function a time expression scales.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeBase {
    /// `arccos(cos²(θ/4))`
    ArccosCos2,
    /// `θ`
    Theta,
    /// `arccos(√(2/3))`
    QftConst,
}

impl TimeBase {
    pub fn eval<T: Real>(self, theta: T) -> T {
        match self {
            // arccos(cos²x) = 2·arcsin(sin x/√2) on [0, π/2], without the
            // cancellation near x = 0.
            Self::ArccosCos2 => {
                let s = (theta / T::lit(4.0)).sin() / T::SQRT_2();
                T::lit(2.0) * s.max(-T::one()).min(T::one()).asin()
            }
            Self::Theta => theta,
            Self::QftConst => T::lit(2.0 / 3.0).sqrt().acos(),
        }
    }
}

/// `pi·π + scale·base(θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeExpr {
    pub pi: f64,
    pub scale: f64,
    pub base: TimeBase,
}

impl TimeExpr {
    pub const fn new(pi: f64, scale: f64, base: TimeBase) -> Self {
        Self { pi, scale, base }
    }

    pub fn eval<T: Real>(&self, theta: T) -> T {
        T::PI() * T::lit(self.pi) + T::lit(self.scale) * self.base.eval(theta)
    }
}

/// One row of the solution tables.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub gate: GateName,
    /// Global phase in units of π/6.
    pub phi_sixths: u8,
    /// `[α₁, β₁, γ₁, α₂, β₂, γ₂]`
    pub angles: [AngleExpr; 6],
    pub t1: TimeExpr,
    pub t2: TimeExpr,
    pub convention: EulerConvention,
    pub cartan_pair: CartanPair,
    /// Closed-form minimum time, transcribed separately from `t1`, `t2`.
    pub tmin: TimeExpr,
}

impl TableRow {
    pub fn phi<T: Real>(&self) -> T {
        T::PI() * T::lit(self.phi_sixths as f64) / T::lit(6.0)
    }

    pub fn params<T: Real>(&self, theta: T) -> SequenceParams<T> {
        let a = self.angles.map(|e| e.eval(theta));
        SequenceParams::from_values(
            [
                a[0],
                a[1],
                a[2],
                a[3],
                a[4],
                a[5],
                self.t1.eval(theta),
                self.t2.eval(theta),
            ],
            self.convention,
            self.cartan_pair,
        )
    }

    pub fn label(&self) -> String {
        format!("{} phi={}pi/6", self.gate, self.phi_sixths)
    }
}

const fn frac(n: i32, d: i32) -> AngleExpr {
    AngleExpr::PiFrac(n, d)
}

const Z: AngleExpr = AngleExpr::ZERO;
const XI: AngleExpr = AngleExpr::Xi;
const ETA: AngleExpr = AngleExpr::Eta;
const A: TimeBase = TimeBase::ArccosCos2;
const TH: TimeBase = TimeBase::Theta;
const QC: TimeBase = TimeBase::QftConst;

const fn t(pi: f64, scale: f64, base: TimeBase) -> TimeExpr {
    TimeExpr::new(pi, scale, base)
}

#[allow(clippy::too_many_arguments)]
const fn row(
    gate: GateName,
    phi_sixths: u8,
    angles: [AngleExpr; 6],
    t1: TimeExpr,
    t2: TimeExpr,
    convention: EulerConvention,
    cartan_pair: CartanPair,
    tmin: TimeExpr,
) -> TableRow {
    TableRow {
        gate,
        phi_sixths,
        angles,
        t1,
        t2,
        convention,
        cartan_pair,
        tmin,
    }
}

/// All tabulated solutions: 18 selective-rotation rows and 3 Fourier rows.
pub fn solution_table() -> Vec<TableRow> {
    use CartanPair::{L4L7, L4L8};
    use EulerConvention::{Xyx, Yxy};
    use GateName::*;

    let tau = t(0.0, 1.0, A);
    let two_tau = t(0.0, 2.0, A);
    let pi_minus_a = t(1.0, -1.0, A);
    let pi_minus_2a = t(1.0, -2.0, A);
    let half_theta = t(0.0, 0.5, TH);
    let theta = t(0.0, 1.0, TH);
    let pi_minus_half_theta = t(1.0, -0.5, TH);
    let pi_minus_theta = t(1.0, -1.0, TH);
    let pi = t(1.0, 0.0, A);

    let t3a = t(0.0, 3.0, A);
    let t2pi_3a = t(2.0, -3.0, A);
    let t3half = t(0.0, 1.5, TH);
    let t2pi_3half = t(2.0, -1.5, TH);

    vec![
        // φ = 0
        row(
            Rx12,
            0,
            [XI, frac(-1, 4), frac(1, 2), frac(-1, 2), frac(1, 4), XI],
            tau,
            two_tau,
            Xyx,
            L4L7,
            t3a,
        ),
        row(
            Ry12,
            0,
            [Z, XI, frac(-1, 4), frac(1, 4), XI, Z],
            two_tau,
            tau,
            Xyx,
            L4L7,
            t3a,
        ),
        row(
            Rx23,
            0,
            [XI, frac(1, 4), frac(1, 2), frac(-1, 2), frac(-1, 4), XI],
            tau,
            two_tau,
            Xyx,
            L4L7,
            t3a,
        ),
        row(
            Ry23,
            0,
            [Z, XI, frac(1, 4), frac(-1, 4), XI, Z],
            two_tau,
            tau,
            Xyx,
            L4L7,
            t3a,
        ),
        row(Rx13, 0, [Z; 6], half_theta, theta, Xyx, L4L7, t3half),
        row(Ry13, 0, [Z; 6], half_theta, theta, Xyx, L4L8, t3half),
        // φ = 2π/3
        row(
            Rx12,
            4,
            [XI, frac(1, 4), frac(1, 1), Z, frac(-1, 4), XI],
            tau,
            pi_minus_a,
            Xyx,
            L4L7,
            pi,
        ),
        row(
            Ry12,
            4,
            [ETA, frac(-1, 2), frac(1, 4), frac(1, 4), frac(1, 2), ETA],
            pi_minus_a,
            tau,
            Yxy,
            L4L7,
            pi,
        ),
        row(
            Rx23,
            4,
            [XI, frac(-1, 4), frac(1, 1), Z, frac(1, 4), XI],
            tau,
            pi_minus_a,
            Xyx,
            L4L7,
            pi,
        ),
        row(
            Ry23,
            4,
            [ETA, frac(1, 2), frac(1, 4), frac(1, 4), frac(-1, 2), ETA],
            pi_minus_a,
            tau,
            Yxy,
            L4L7,
            pi,
        ),
        row(
            Rx13,
            4,
            [frac(1, 2), frac(-1, 2), Z, Z, frac(-1, 2), frac(1, 2)],
            half_theta,
            pi_minus_half_theta,
            Xyx,
            L4L7,
            pi,
        ),
        row(
            Ry13,
            4,
            [frac(-1, 2), frac(1, 4), Z, Z, frac(1, 4), frac(-1, 2)],
            half_theta,
            pi_minus_half_theta,
            Xyx,
            L4L7,
            pi,
        ),
        // φ = 4π/3
        row(
            Rx12,
            8,
            [XI, frac(1, 4), frac(-1, 2), frac(-1, 2), frac(3, 4), XI],
            pi_minus_a,
            pi_minus_2a,
            Xyx,
            L4L7,
            t2pi_3a,
        ),
        row(
            Ry12,
            8,
            [XI, frac(1, 4), frac(-1, 2), frac(-1, 2), frac(-1, 4), XI],
            pi_minus_a,
            pi_minus_2a,
            Yxy,
            L4L7,
            t2pi_3a,
        ),
        row(
            Rx23,
            8,
            [XI, frac(-1, 4), frac(1, 2), frac(1, 2), frac(-3, 4), XI],
            pi_minus_a,
            pi_minus_2a,
            Xyx,
            L4L7,
            t2pi_3a,
        ),
        row(
            Ry23,
            8,
            [XI, frac(-1, 4), frac(1, 2), frac(1, 2), frac(1, 4), XI],
            pi_minus_a,
            pi_minus_2a,
            Yxy,
            L4L7,
            t2pi_3a,
        ),
        row(
            Rx13,
            8,
            [frac(-1, 2), frac(1, 2), Z, Z, frac(1, 2), frac(-1, 2)],
            pi_minus_theta,
            pi_minus_half_theta,
            Yxy,
            L4L7,
            t2pi_3half,
        ),
        row(
            Ry13,
            8,
            [frac(1, 2), frac(1, 4), Z, Z, frac(1, 4), frac(1, 2)],
            pi_minus_theta,
            pi_minus_half_theta,
            Yxy,
            L4L7,
            t2pi_3half,
        ),
        // Fourier transform
        row(
            Qft,
            1,
            [
                frac(-1, 2),
                frac(1, 3),
                frac(1, 4),
                frac(-1, 4),
                frac(2, 3),
                frac(-1, 2),
            ],
            t(1.0, -2.0, QC),
            t(1.0, -1.0, QC),
            Xyx,
            L4L7,
            t(2.0, -3.0, QC),
        ),
        row(
            Qft,
            5,
            [
                frac(-1, 2),
                frac(1, 3),
                frac(-1, 4),
                frac(-1, 4),
                frac(1, 3),
                frac(1, 2),
            ],
            t(0.0, 2.0, QC),
            t(0.0, 1.0, QC),
            Xyx,
            L4L7,
            t(0.0, 3.0, QC),
        ),
        // These angles reproduce the gate only with y–x–y blocks.
        row(
            Qft,
            9,
            [
                frac(-1, 2),
                frac(1, 6),
                frac(1, 4),
                frac(-1, 4),
                frac(1, 6),
                frac(1, 2),
            ],
            t(0.0, 1.0, QC),
            t(1.0, -1.0, QC),
            Yxy,
            L4L7,
            t(1.0, 0.0, QC),
        ),
    ]
}

/// A fully evaluated table solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticSolution<T> {
    pub gate: GateName,
    pub theta: T,
    pub phi: T,
    pub params: SequenceParams<T>,
    pub tmin: T,
    /// `θ` lies in the validated domain `[0, π]` (always true for the Fourier transform).
    pub validated: bool,
}

const PHASE_MATCH_TOL: f64 = 1e-9;

fn phase_matches<T: Real>(row: &TableRow, phi: T) -> bool {
    let target = wrap_positive(phi).to_f64();
    let tab = row.phi::<f64>();
    let d = (target - tab).abs();
    d < PHASE_MATCH_TOL || (std::f64::consts::TAU - d) < PHASE_MATCH_TOL
}

/// Finds the row for `(gate, φ)` in `rows`.
pub fn find_row<T: Real>(rows: &[TableRow], gate: GateName, phi: T) -> Result<TableRow> {
    rows.iter()
        .find(|r| r.gate == gate && phase_matches(r, phi))
        .copied()
        .ok_or(Error::UnknownCombination {
            gate: gate.to_string(),
            phi: phi.to_f64(),
        })
}

/// Evaluates a row at `θ` without domain restrictions.
pub fn evaluate_row<T: Real>(row: &TableRow, theta: T) -> Result<AnalyticSolution<T>> {
    let theta = if row.gate.is_rotation() {
        theta
    } else {
        T::zero()
    };
    let params = row.params(theta);
    params.check_times()?;
    let validated = !row.gate.is_rotation() || (theta >= T::zero() && theta <= T::PI());
    Ok(AnalyticSolution {
        gate: row.gate,
        theta,
        phi: row.phi(),
        params,
        tmin: row.tmin.eval(theta),
        validated,
    })
}

/// Tabulated solution for `(gate, θ, φ)` with `θ ∈ [0, π]`.
pub fn lookup_solution<T: Real>(gate: GateName, theta: T, phi: T) -> Result<AnalyticSolution<T>> {
    if gate.is_rotation() && !(theta >= T::zero() && theta <= T::PI()) {
        return Err(Error::ThetaOutOfValidatedDomain {
            theta: theta.to_f64(),
        });
    }
    let row = find_row(&solution_table(), gate, phi)?;
    evaluate_row(&row, theta)
}

/// As [`lookup_solution`] but accepts any `θ ∈ [0, 2π)`, flagging values
/// beyond `π` as unvalidated.
pub fn lookup_solution_extended<T: Real>(
    gate: GateName,
    theta: T,
    phi: T,
) -> Result<AnalyticSolution<T>> {
    if gate.is_rotation() && !(theta >= T::zero() && theta < T::TAU()) {
        return Err(Error::AngleOutOfRange {
            theta: theta.to_f64(),
        });
    }
    let row = find_row(&solution_table(), gate, phi)?;
    evaluate_row(&row, theta)
}

/// `(θ, T_min)` along a grid for one rotation family and phase.
pub fn tmin_curve<T: Real>(family: GateFamily, phi: T, theta_grid: &[T]) -> Result<Vec<(T, T)>> {
    let row = find_row(&solution_table(), family.representative(), phi)?;
    theta_grid
        .iter()
        .map(|&theta| {
            if !(theta >= T::zero() && theta <= T::PI()) {
                return Err(Error::ThetaOutOfValidatedDomain {
                    theta: theta.to_f64(),
                });
            }
            Ok((theta, row.tmin.eval(theta)))
        })
        .collect()
}

/// Leading-order minimum time of the 1–2 rotation at φ = 0: `3θ/(2√2)`.
pub fn small_angle_tmin<T: Real>(theta: T) -> T {
    T::lit(3.0) * theta / (T::lit(2.0) * T::SQRT_2())
}

/// `3·arccos(cos²(θ/4))`, the exact counterpart of [`small_angle_tmin`].
pub fn exact_r12_tmin<T: Real>(theta: T) -> T {
    T::lit(3.0) * TimeBase::ArccosCos2.eval(theta)
}

/// The default validation grid `{kπ/12 : k = 1..12}`.
pub fn validation_grid() -> Vec<f64> {
    (1..=12)
        .map(|k| k as f64 * std::f64::consts::PI / 12.0)
        .collect()
}

pub const ROW_RESIDUAL_TOL: f64 = 1e-9;
pub const ROW_TIME_TOL: f64 = 1e-12;

/// One evaluated row as written to the table CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    pub gate: String,
    pub phi: f64,
    pub theta: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub gamma1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub gamma2: f64,
    pub t1: f64,
    pub t2: f64,
    pub convention: String,
    pub cartan_pair: String,
    #[serde(rename = "Tmin")]
    pub tmin: f64,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct RowFailure {
    pub label: String,
    pub theta: f64,
    pub residual: f64,
    pub time_mismatch: f64,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct TableValidation {
    pub records: Vec<TableRecord>,
    pub failures: Vec<RowFailure>,
}

impl TableValidation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every row over `theta_grid` (Fourier rows once) and checks the
/// residual against `e^{iφ}U_G` and `t₁ + t₂ = T_min`.
pub fn validate_table(rows: &[TableRow], theta_grid: &[f64]) -> TableValidation {
    let mut out = TableValidation::default();
    for row in rows {
        let thetas: Vec<f64> = if row.gate.is_rotation() {
            theta_grid.to_vec()
        } else {
            vec![0.0]
        };
        for theta in thetas {
            let label = row.label();
            let sol = match evaluate_row::<f64>(row, theta) {
                Ok(s) => s,
                Err(e) => {
                    out.failures.push(RowFailure {
                        label,
                        theta,
                        residual: f64::NAN,
                        time_mismatch: f64::NAN,
                        reason: e.to_string(),
                    });
                    continue;
                }
            };
            let unitary = if row.gate.is_rotation() {
                rotation_unitary(row.gate, theta)
            } else {
                qft()
            };
            let res = residual(&sol.params, &unitary, sol.phi);
            let mismatch = (sol.params.total_time() - sol.tmin).abs();
            let p = &sol.params;
            out.records.push(TableRecord {
                gate: row.gate.to_string(),
                phi: sol.phi,
                theta: sol.theta,
                alpha1: p.alpha1,
                beta1: p.beta1,
                gamma1: p.gamma1,
                alpha2: p.alpha2,
                beta2: p.beta2,
                gamma2: p.gamma2,
                t1: p.t1,
                t2: p.t2,
                convention: p.euler_convention.to_string(),
                cartan_pair: p.cartan_pair.to_string(),
                tmin: sol.tmin,
                residual: res,
            });
            let bad_res = !(res < ROW_RESIDUAL_TOL);
            let bad_time = !(mismatch <= ROW_TIME_TOL);
            if bad_res || bad_time {
                let reason = match (bad_res, bad_time) {
                    (true, true) => "residual and t1+t2 != Tmin",
                    (true, false) => "residual",
                    _ => "t1+t2 != Tmin",
                };
                out.failures.push(RowFailure {
                    label,
                    theta,
                    residual: res,
                    time_mismatch: mismatch,
                    reason: reason.into(),
                });
            }
        }
    }
    out
}

pub fn write_table_csv<W: Write>(records: &[TableRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `(θ, T_min)` pairs as CSV with header `theta,Tmin`.
pub fn write_curve_csv<W: Write>(points: &[(f64, f64)], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["theta", "Tmin"])?;
    for (theta, tmin) in points {
        w.write_record([format!("{theta:.17e}"), format!("{tmin:.17e}")])?;
    }
    w.flush()?;
    Ok(())
}

/// Builds a gate and its tabulated solution in one step.
pub fn gate_and_solution(
    gate: GateName,
    theta: f64,
    phi: f64,
) -> Result<(crate::gates::GateTarget<f64>, AnalyticSolution<f64>)> {
    let target = make_gate(gate, theta)?;
    let sol = lookup_solution(gate, theta, phi)?;
    Ok((target, sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn table_has_expected_shape() {
        let rows = solution_table();
        assert_eq!(rows.iter().filter(|r| r.gate.is_rotation()).count(), 18);
        assert_eq!(rows.iter().filter(|r| r.gate == GateName::Qft).count(), 3);
        for g in GateName::ROTATIONS {
            for k in [0u8, 4, 8] {
                assert_eq!(
                    rows.iter()
                        .filter(|r| r.gate == g && r.phi_sixths == k)
                        .count(),
                    1
                );
            }
        }
    }

    #[test]
    fn every_row_reproduces_its_gate_on_the_grid() {
        let v = validate_table(&solution_table(), &validation_grid());
        for f in &v.failures {
            eprintln!(
                "{} θ={} residual={:e} dt={:e} ({})",
                f.label, f.theta, f.residual, f.time_mismatch, f.reason
            );
        }
        assert!(v.passed());
        assert_eq!(v.records.len(), 18 * 12 + 3);
    }

    #[test]
    fn rx12_at_pi_phase_zero() {
        let s = lookup_solution(GateName::Rx12, PI, 0.0).unwrap();
        let tau = PI / 3.0;
        assert!((s.params.t1 - tau).abs() < 1e-14);
        assert!((s.params.t2 - 2.0 * tau).abs() < 1e-14);
        assert!((s.tmin - PI).abs() < 1e-14);
    }

    #[test]
    fn rx12_at_pi_phase_two_thirds() {
        let s = lookup_solution(GateName::Rx12, PI, 2.0 * PI / 3.0).unwrap();
        assert!((s.tmin - PI).abs() < 1e-14);
        // t1 = τ₂ = π/3, t2 = τ₁ = π − π/3.
        assert!((s.params.t1 - PI / 3.0).abs() < 1e-14);
        assert!((s.params.t2 - 2.0 * PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn qft_rows() {
        let c = (2.0f64 / 3.0).sqrt().acos();
        assert!((c - 0.615480).abs() < 1e-6);
        let s = lookup_solution(GateName::Qft, 0.0, 5.0 * PI / 6.0).unwrap();
        assert!((s.params.t1 - 2.0 * c).abs() < 1e-15);
        assert!((s.params.t2 - c).abs() < 1e-15);
        assert!((s.tmin - 1.846439).abs() < 1e-6);
        let s9 = lookup_solution(GateName::Qft, 0.0, 9.0 * PI / 6.0).unwrap();
        assert!((s9.tmin - PI).abs() < 1e-15);
        let s1 = lookup_solution(GateName::Qft, 0.0, PI / 6.0).unwrap();
        assert!((s1.tmin - 4.436746).abs() < 1e-6);
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(
            lookup_solution(GateName::Rx12, 1.0, 0.3),
            Err(Error::UnknownCombination { .. })
        ));
        assert!(matches!(
            lookup_solution(GateName::Qft, 0.0, 0.0),
            Err(Error::UnknownCombination { .. })
        ));
        assert!(matches!(
            lookup_solution(GateName::Rx12, 3.5, 0.0),
            Err(Error::ThetaOutOfValidatedDomain { .. })
        ));
        let ext = lookup_solution_extended(GateName::Rx12, 3.5, 0.0).unwrap();
        assert!(!ext.validated);
        // Phases are matched modulo 2π.
        assert!(lookup_solution(GateName::Rx12, 1.0, 2.0 * PI).is_ok());
    }

    #[test]
    fn curve_examples() {
        let c = tmin_curve(GateFamily::R12, 0.0, &[0.0]).unwrap();
        assert_eq!(c[0].1, 0.0);
        let both: Vec<f64> = [2.0 * PI / 3.0, 4.0 * PI / 3.0]
            .iter()
            .map(|&phi| tmin_curve(GateFamily::R13, phi, &[2.0 * PI / 3.0]).unwrap()[0].1)
            .collect();
        assert!((both[0] - PI).abs() < 1e-12 && (both[1] - PI).abs() < 1e-12);
        let grid: Vec<f64> = (0..=20).map(|k| k as f64 * PI / 20.0).collect();
        for (_, t) in tmin_curve(GateFamily::R12, 2.0 * PI / 3.0, &grid).unwrap() {
            assert!((t - PI).abs() < 1e-12);
        }
        let two = tmin_curve(GateFamily::R12, 0.0, &[PI / 2.0, PI]).unwrap();
        // 3·arccos(cos²(π/8)) = 3·arccos(0.8535534) = 1.6440852
        assert!((two[0].1 - 1.644_085_222_860_938).abs() < 1e-12);
        assert!((two[1].1 - PI).abs() < 1e-12);
    }

    #[test]
    fn monotone_curves() {
        let grid: Vec<f64> = (1..=200).map(|k| k as f64 * PI / 200.0).collect();
        for fam in [GateFamily::R12, GateFamily::R23, GateFamily::R13] {
            let up = tmin_curve(fam, 0.0, &grid).unwrap();
            let down = tmin_curve(fam, 4.0 * PI / 3.0, &grid).unwrap();
            assert!(up.windows(2).all(|w| w[1].1 >= w[0].1));
            assert!(down.windows(2).all(|w| w[1].1 <= w[0].1));
        }
    }

    #[test]
    fn small_angle_expansion() {
        assert_eq!(small_angle_tmin(0.0f64), 0.0);
        let (approx, exact) = (small_angle_tmin(0.1f64), exact_r12_tmin(0.1f64));
        assert!((approx - 0.106066).abs() < 1e-6);
        // Reference values from 40-digit evaluation.
        assert!((exact - 0.106_060_492_302_005_42).abs() < 1e-15);
        assert!(((approx - exact) / exact).abs() < 1e-4);
        let (a, e) = (small_angle_tmin(1e-3f64), exact_r12_tmin(1e-3f64));
        assert!((e - 0.001_060_660_166_255_549_5).abs() < 1e-17);
        assert!(((a - e) / e).abs() < 1e-7);
    }

    #[test]
    fn qft_constant_equals_xi_at_pi() {
        let c = TimeBase::QftConst.eval(0.0f64);
        assert!((c - 0.5 * (2.0 * 2f64.sqrt()).atan()).abs() < 1e-12);
        assert!((c - xi(PI)).abs() < 1e-12);
    }

    #[test]
    fn arcsin_form_matches_arccos_form() {
        for k in 0..=100 {
            let theta = k as f64 * std::f64::consts::TAU / 100.0;
            let c = (theta / 4.0).cos();
            let direct = (c * c).acos();
            assert!((TimeBase::ArccosCos2.eval(theta) - direct).abs() < 1e-7);
        }
    }

    #[test]
    fn times_never_negative_on_domain() {
        let grid: Vec<f64> = (0..=120).map(|k| k as f64 * PI / 120.0).collect();
        for row in solution_table() {
            for &theta in &grid {
                let p = row.params(theta);
                assert!(
                    p.t1 >= -1e-15 && p.t2 >= -1e-15,
                    "{} at θ={theta}",
                    row.label()
                );
            }
        }
    }

    #[test]
    fn rows_serialize_as_json() {
        let rows = solution_table();
        let s = serde_json::to_string(&rows).unwrap();
        let back: Vec<TableRow> = serde_json::from_str(&s).unwrap();
        assert_eq!(rows, back);
    }

    #[test]
    fn csv_layout() {
        let v = validate_table(&solution_table()[..1], &[PI]);
        let mut buf = Vec::new();
        write_table_csv(&v.records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(
            header,
            "gate,phi,theta,alpha1,beta1,gamma1,alpha2,beta2,gamma2,t1,t2,convention,cartan_pair,Tmin,residual"
        );
    }

    #[test]
    fn single_precision_rows_still_reproduce() {
        let row = find_row(&solution_table(), GateName::Ry23, 0.0f32).unwrap();
        let sol = evaluate_row(&row, 1.0f32).unwrap();
        let u = rotation_unitary(GateName::Ry23, 1.0f32);
        assert!(residual(&sol.params, &u, sol.phi) < 1e-5);
    }
}
