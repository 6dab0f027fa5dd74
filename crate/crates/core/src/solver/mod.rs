//! Numerical minimum-time search for arbitrary targets.
//!
//! For a target `e^{iφ}G` the search
//!
//! 1. scans `(t₁, t₂)` over `[0, 2π]²` on a grid, scoring each point with the
//!    coset invariant in [`spectral`] (zero exactly where the target is
//!    reachable with those times),
//! 2. polishes every promising grid point to a root of that invariant,
//! 3. visits the roots in order of increasing `t₁ + t₂`, fits the six Euler
//!    angles by multistart Levenberg–Marquardt for both Euler conventions and
//!    both Cartan pairs, and polishes all eight parameters jointly.
//!
//! The first root whose polished residual beats `residual_tol` is returned.
//! The result is the best time found ("numerical T_min"); optimality is not
//! proven.

mod lm;
pub mod spectral;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{residual, CartanPair, EulerConvention, SequenceParams};
use crate::error::{Error, Result};
use crate::gates::{phases_of, GateTarget};
use crate::su3::Operator3;

use lm::{minimize, FreeSet, Problem};
use spectral::TimeEquation;

type Op = Operator3<f64>;

pub const DEFAULT_SEED: u64 = 0x5eed_2014;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// A point is feasible when `‖e^{iφ}G − U(p)‖_F < residual_tol`.
    pub residual_tol: f64,
    /// Random restarts of the angle fit (the all-zero start is extra).
    pub n_restarts: usize,
    pub rng_seed: u64,
    /// Spacing of the `(t₁, t₂)` scan.
    pub t_grid_step: f64,
    /// Roots of the time equation closer than this are merged, and totals
    /// within this of each other count as ties.
    pub refine_tol: f64,
    /// Run restarts on the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-8,
            n_restarts: 12,
            rng_seed: DEFAULT_SEED,
            t_grid_step: std::f64::consts::PI / 60.0,
            refine_tol: 1e-4,
            parallel: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.residual_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "residual_tol must be positive, got {}",
                self.residual_tol
            )));
        }
        if self.n_restarts < 1 {
            return Err(Error::InvalidConfig("n_restarts must be at least 1".into()));
        }
        if !(self.t_grid_step > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "t_grid_step must be positive, got {}",
                self.t_grid_step
            )));
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "refine_tol must be positive, got {}",
                self.refine_tol
            )));
        }
        Ok(())
    }
}

/// Best Euler angles for frozen times.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleFit {
    pub params: SequenceParams<f64>,
    pub residual: f64,
    pub restarts_used: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub params: SequenceParams<f64>,
    pub residual_value: f64,
    /// `t₁ + t₂`
    pub total_time: f64,
    pub feasible: bool,
    pub restarts_used: usize,
}

impl SolveResult {
    fn new(
        params: SequenceParams<f64>,
        residual_value: f64,
        tol: f64,
        restarts_used: usize,
    ) -> Self {
        Self {
            params,
            residual_value,
            total_time: params.t1 + params.t2,
            feasible: residual_value < tol,
            restarts_used,
        }
    }
}

const ANGLE_ITERS: usize = 150;
const POLISH_ITERS: usize = 200;

fn starts(config: &SolverConfig) -> Vec<[f64; 6]> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut out = vec![[0.0; 6]];
    for _ in 0..config.n_restarts {
        let mut a = [0.0; 6];
        for v in &mut a {
            *v = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        }
        out.push(a);
    }
    out
}

/// Multistart minimization of the residual over the six angles, times frozen.
///
/// Deterministic for a given `rng_seed`; ties between restarts go to the
/// earlier restart.
pub fn solve_at_fixed_times(
    gate: &Op,
    phi: f64,
    t1: f64,
    t2: f64,
    convention: EulerConvention,
    cartan_pair: CartanPair,
    config: &SolverConfig,
) -> Result<AngleFit> {
    if t1 < 0.0 || t2 < 0.0 {
        return Err(Error::NegativeTime { t1, t2 });
    }
    config.validate()?;
    let target = gate.with_phase(phi);
    let problem = Problem {
        target: &target,
        convention,
        pair: cartan_pair,
    };
    let starts = starts(config);
    let run = |a: &[f64; 6]| {
        let x = [a[0], a[1], a[2], a[3], a[4], a[5], t1, t2];
        minimize(&problem, x, FreeSet::Angles, ANGLE_ITERS)
    };
    let outcomes: Vec<_> = if config.parallel {
        starts.par_iter().map(run).collect()
    } else {
        starts.iter().map(run).collect()
    };
    let mut best = outcomes[0];
    for o in &outcomes[1..] {
        if o.residual < best.residual {
            best = *o;
        }
    }
    let params = SequenceParams::from_values(best.x, convention, cartan_pair);
    Ok(AngleFit {
        params,
        residual: best.residual,
        restarts_used: starts.len(),
    })
}

/// Roots of the time equation reachable from the grid, sorted by `t₁ + t₂`.
fn candidate_times(eq: &TimeEquation, config: &SolverConfig) -> Vec<(f64, f64)> {
    let two_pi = std::f64::consts::TAU;
    let h = config.t_grid_step;
    let n = (two_pi / h + 1e-9).floor() as usize + 1;
    // |∂F/∂t| ≤ 8/3, so any root within half a cell leaves |F| < 8h/3 at the
    // nearest grid point.
    let threshold = 3.0 * h;
    let mut roots: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (g1, g2) = (i as f64 * h, j as f64 * h);
            if eq.mismatch(g1, g2) >= threshold {
                continue;
            }
            let (t1, t2, c) = eq.refine((g1, g2), two_pi + h, 100);
            if c > 1e-9 {
                continue;
            }
            if roots
                .iter()
                .all(|r| (r.0 - t1).abs() + (r.1 - t2).abs() > config.refine_tol)
            {
                roots.push((t1, t2));
            }
        }
    }
    roots.sort_by(|a, b| (a.0 + a.1).total_cmp(&(b.0 + b.1)));
    roots
}

const VARIANTS: [(EulerConvention, CartanPair); 4] = [
    (EulerConvention::Xyx, CartanPair::L4L7),
    (EulerConvention::Yxy, CartanPair::L4L7),
    (EulerConvention::Xyx, CartanPair::L4L8),
    (EulerConvention::Yxy, CartanPair::L4L8),
];

/// Smallest feasible `t₁ + t₂` for `e^{iφ}·gate`.
pub fn find_tmin(gate: &Op, phi: f64, config: &SolverConfig) -> Result<SolveResult> {
    config.validate()?;
    let dev = gate.unitary_deviation();
    if dev > 1e-8 {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let target = gate.with_phase(phi);
    let det = target.det();
    if (det - num_complex::Complex64::new(1.0, 0.0)).norm() > 1e-8 {
        return Err(Error::NoFeasiblePointFound {
            reason: format!("det(e^(i phi) G) = {det}, so phi is not an admissible global phase"),
        });
    }
    let eq = TimeEquation::new(&target);
    let roots = candidate_times(&eq, config);
    if roots.is_empty() {
        return Err(Error::NoFeasiblePointFound {
            reason: "no root of the time equation on the grid".into(),
        });
    }

    let mut restarts = 0usize;
    let mut closest: Option<SolveResult> = None;
    for (t1, t2) in roots {
        let mut best: Option<SolveResult> = None;
        for (conv, pair) in VARIANTS {
            let fit = solve_at_fixed_times(gate, phi, t1, t2, conv, pair, config)?;
            restarts += fit.restarts_used;
            let problem = Problem {
                target: &target,
                convention: conv,
                pair,
            };
            let polished = minimize(&problem, fit.params.values(), FreeSet::All, POLISH_ITERS);
            let params = SequenceParams::from_values(polished.x, conv, pair);
            let res = residual(&params, gate, phi);
            let cand = SolveResult::new(params, res, config.residual_tol, restarts);
            if best
                .as_ref()
                .is_none_or(|b| cand.residual_value < b.residual_value)
            {
                best = Some(cand);
            }
        }
        let best = best.expect("four variants tried");
        if best.feasible {
            return Ok(SolveResult {
                restarts_used: restarts,
                ..best
            });
        }
        if closest
            .as_ref()
            .is_none_or(|c| best.residual_value < c.residual_value)
        {
            closest = Some(best);
        }
    }
    let c = closest.expect("at least one root");
    Err(Error::NoFeasiblePointFound {
        reason: format!(
            "best residual {:.3e} at T = {:.6} exceeds residual_tol {:.1e}",
            c.residual_value, c.total_time, config.residual_tol
        ),
    })
}

/// Result of searching all admissible global phases.
#[derive(Clone, Debug)]
pub struct PhaseSearch {
    pub phi_best: f64,
    pub best: SolveResult,
    /// Per-phase outcome in the order of [`crate::gates::global_phases`].
    pub per_phase: Vec<(f64, std::result::Result<SolveResult, String>)>,
}

/// Runs [`find_tmin`] for each admissible global phase and keeps the fastest.
/// Totals within `refine_tol` tie, and ties go to the earlier phase.
pub fn min_over_phases(gate: &GateTarget<f64>, config: &SolverConfig) -> Result<PhaseSearch> {
    min_over_phases_of(&gate.unitary, config)
}

/// [`min_over_phases`] for an arbitrary unitary.
pub fn min_over_phases_of(u: &Op, config: &SolverConfig) -> Result<PhaseSearch> {
    let phases = phases_of(u).phases;
    let mut per_phase = Vec::with_capacity(3);
    let mut best: Option<(f64, SolveResult)> = None;
    let mut last_err = None;
    for phi in phases {
        match find_tmin(u, phi, config) {
            Ok(r) => {
                if best
                    .as_ref()
                    .is_none_or(|(_, b)| r.total_time < b.total_time - config.refine_tol)
                {
                    best = Some((phi, r));
                }
                per_phase.push((phi, Ok(r)));
            }
            // Non-unitary input fails identically for every phase.
            Err(e @ Error::NotUnitary { .. }) => return Err(e),
            Err(e) => {
                per_phase.push((phi, Err(e.to_string())));
                last_err = Some(e);
            }
        }
    }
    match best {
        Some((phi_best, best)) => Ok(PhaseSearch {
            phi_best,
            best,
            per_phase,
        }),
        None => Err(last_err.unwrap_or(Error::NoFeasiblePointFound {
            reason: "no admissible phase".into(),
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{exact_r12_tmin, lookup_solution};
    use crate::cartan::sequence_unitary;
    use crate::gates::{make_gate, GateName};
    use std::f64::consts::PI;

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        for bad in [
            SolverConfig {
                residual_tol: 0.0,
                ..Default::default()
            },
            SolverConfig {
                n_restarts: 0,
                ..Default::default()
            },
            SolverConfig {
                t_grid_step: -1.0,
                ..Default::default()
            },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn fixed_times_rx12_pi() {
        let g = make_gate(GateName::Rx12, PI).unwrap();
        let cfg = SolverConfig::default();
        let fit = solve_at_fixed_times(
            &g.unitary,
            0.0,
            PI / 3.0,
            2.0 * PI / 3.0,
            EulerConvention::Xyx,
            CartanPair::L4L7,
            &cfg,
        )
        .unwrap();
        assert!(fit.residual < 1e-8, "{}", fit.residual);
        assert!(residual(&fit.params, &g.unitary, 0.0) < 1e-8);
    }

    #[test]
    fn fixed_times_identity() {
        let cfg = SolverConfig::default();
        let fit = solve_at_fixed_times(
            &Op::identity(),
            0.0,
            0.0,
            0.0,
            EulerConvention::Xyx,
            CartanPair::L4L7,
            &cfg,
        )
        .unwrap();
        assert!(fit.residual < 1e-10);
        assert_eq!(fit.params.values(), [0.0; 8]);
    }

    #[test]
    fn fixed_times_qft() {
        let g = make_gate::<f64>(GateName::Qft, 0.0).unwrap();
        let c = (2.0f64 / 3.0).sqrt().acos();
        let cfg = SolverConfig::default();
        let fit = solve_at_fixed_times(
            &g.unitary,
            5.0 * PI / 6.0,
            2.0 * c,
            c,
            EulerConvention::Xyx,
            CartanPair::L4L7,
            &cfg,
        )
        .unwrap();
        assert!(fit.residual < 1e-8, "{}", fit.residual);
    }

    #[test]
    fn fixed_times_rejects_negative() {
        let cfg = SolverConfig::default();
        let r = solve_at_fixed_times(
            &Op::identity(),
            0.0,
            -1.0,
            0.0,
            EulerConvention::Xyx,
            CartanPair::L4L7,
            &cfg,
        );
        assert!(matches!(r, Err(Error::NegativeTime { .. })));
    }

    #[test]
    fn finds_rx12_half_pi() {
        let g = make_gate(GateName::Rx12, PI / 2.0).unwrap();
        let r = find_tmin(&g.unitary, 0.0, &SolverConfig::default()).unwrap();
        assert!(r.feasible);
        assert!(
            (r.total_time - exact_r12_tmin(PI / 2.0)).abs() < 1e-3,
            "{}",
            r.total_time
        );
        assert!(r.params.t1 >= 0.0 && r.params.t2 >= 0.0);
        let u = sequence_unitary(&r.params).unwrap();
        assert!((u - g.unitary).frobenius_norm() < 1e-8);
    }

    #[test]
    fn finds_qft_three_halves_pi() {
        let g = make_gate::<f64>(GateName::Qft, 0.0).unwrap();
        let r = find_tmin(&g.unitary, 9.0 * PI / 6.0, &SolverConfig::default()).unwrap();
        assert!((r.total_time - PI).abs() < 1e-3);
    }

    #[test]
    fn inadmissible_phase_is_infeasible() {
        let g = make_gate(GateName::Ry23, 1.0).unwrap();
        assert!(matches!(
            find_tmin(&g.unitary, 0.4, &SolverConfig::default()),
            Err(Error::NoFeasiblePointFound { .. })
        ));
    }

    #[test]
    fn rejects_non_unitary() {
        let mut m = Op::identity();
        m.entries[0][0].re = 2.0;
        assert!(matches!(
            find_tmin(&m, 0.0, &SolverConfig::default()),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn phase_search_qft() {
        let g = make_gate::<f64>(GateName::Qft, 0.0).unwrap();
        let s = min_over_phases(&g, &SolverConfig::default()).unwrap();
        assert!((s.phi_best - 5.0 * PI / 6.0).abs() < 1e-9);
        assert!((s.best.total_time - 1.846439).abs() < 1e-3);
        let table = lookup_solution(GateName::Qft, 0.0, 5.0 * PI / 6.0).unwrap();
        assert!((s.best.total_time - table.tmin).abs() < 1e-6);
    }

    #[test]
    fn serial_and_parallel_agree_bitwise() {
        let g = make_gate(GateName::Ry13, 0.8).unwrap();
        let par = find_tmin(&g.unitary, 2.0 * PI / 3.0, &SolverConfig::default()).unwrap();
        let ser = find_tmin(
            &g.unitary,
            2.0 * PI / 3.0,
            &SolverConfig {
                parallel: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(par, ser);
        let again = find_tmin(&g.unitary, 2.0 * PI / 3.0, &SolverConfig::default()).unwrap();
        assert_eq!(par, again);
    }
}
