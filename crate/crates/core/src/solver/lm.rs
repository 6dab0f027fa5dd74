//! Levenberg–Marquardt on the 18 real components of `U(p) − e^{iφ}G`.

use num_complex::Complex64;

use crate::cartan::{CartanPair, EulerConvention, Generator, SequenceParams};
use crate::su3::Operator3;

type Op = Operator3<f64>;

/// Which sequence parameters the minimizer may move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum FreeSet {
    /// The six Euler angles; times frozen.
    Angles,
    /// All eight parameters, with `t₁, t₂ ≥ 0` enforced by projection.
    All,
}

impl FreeSet {
    fn indices(self) -> &'static [usize] {
        match self {
            Self::Angles => &[0, 1, 2, 3, 4, 5],
            Self::All => &[0, 1, 2, 3, 4, 5, 6, 7],
        }
    }
}

pub(crate) struct Problem<'a> {
    pub target: &'a Op,
    pub convention: EulerConvention,
    pub pair: CartanPair,
}

/// Position in the operator product of each entry of `SequenceParams::values`.
const FACTOR_POS: [usize; 8] = [0, 1, 2, 5, 6, 7, 3, 4];

fn flatten(d: &Op) -> [f64; 18] {
    let mut r = [0.0; 18];
    for (k, z) in d.entries.iter().flatten().enumerate() {
        r[2 * k] = z.re;
        r[2 * k + 1] = z.im;
    }
    r
}

impl Problem<'_> {
    fn factors(&self, x: &[f64; 8]) -> [(Generator, f64); 8] {
        SequenceParams::from_values(*x, self.convention, self.pair).factors()
    }

    pub fn residual_vec(&self, x: &[f64; 8]) -> [f64; 18] {
        let u = self
            .factors(x)
            .iter()
            .fold(Op::identity(), |acc, (g, v)| acc * g.exp(*v));
        flatten(&(u - *self.target))
    }

    /// Residual vector and Jacobian columns for the free parameters.
    fn linearize(&self, x: &[f64; 8], free: FreeSet) -> ([f64; 18], Vec<[f64; 18]>) {
        let f = self.factors(x);
        let e: Vec<Op> = f.iter().map(|(g, v)| g.exp(*v)).collect();
        let mut prefix = [Op::identity(); 9];
        for k in 0..8 {
            prefix[k + 1] = prefix[k] * e[k];
        }
        let mut suffix = [Op::identity(); 9];
        for k in (0..8).rev() {
            suffix[k] = e[k] * suffix[k + 1];
        }
        let r = flatten(&(prefix[8] - *self.target));
        let minus_i = Complex64::new(0.0, -1.0);
        let cols = free
            .indices()
            .iter()
            .map(|&i| {
                let k = FACTOR_POS[i];
                let gk = f[k].0.matrix::<f64>().scale(minus_i);
                flatten(&(prefix[k] * gk * e[k] * suffix[k + 1]))
            })
            .collect();
        (r, cols)
    }
}

fn norm_sq(r: &[f64; 18]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

#[allow(clippy::needless_range_loop)]
/// Solves the symmetric positive definite system `a·x = b` by Cholesky.
fn cholesky_solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    Some(x)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct LmOutcome {
    pub x: [f64; 8],
    /// Frobenius residual `‖U(x) − target‖`.
    pub residual: f64,
}

pub(crate) fn minimize(
    problem: &Problem<'_>,
    start: [f64; 8],
    free: FreeSet,
    max_iter: usize,
) -> LmOutcome {
    let idx = free.indices();
    let n = idx.len();
    let project = |x: &mut [f64; 8]| {
        if free == FreeSet::All {
            x[6] = x[6].max(0.0);
            x[7] = x[7].max(0.0);
        }
    };
    let mut x = start;
    project(&mut x);
    let mut cost = norm_sq(&problem.residual_vec(&x));
    let mut lambda = 1e-3;
    for _ in 0..max_iter {
        if cost < 1e-30 {
            break;
        }
        let (r, cols) = problem.linearize(&x, free);
        let mut jtj = vec![vec![0.0; n]; n];
        let mut grad = vec![0.0; n];
        for a in 0..n {
            grad[a] = cols[a].iter().zip(&r).map(|(j, r)| j * r).sum();
            for b in 0..=a {
                let v: f64 = cols[a].iter().zip(&cols[b]).map(|(p, q)| p * q).sum();
                jtj[a][b] = v;
                jtj[b][a] = v;
            }
        }
        let mut improved = false;
        while lambda < 1e12 {
            let mut damped = jtj.clone();
            for (a, row) in damped.iter_mut().enumerate() {
                row[a] += lambda * (jtj[a][a] + 1e-9);
            }
            let rhs: Vec<f64> = grad.iter().map(|g| -g).collect();
            let Some(step) = cholesky_solve(&damped, &rhs) else {
                lambda *= 4.0;
                continue;
            };
            let mut trial = x;
            for (k, &i) in idx.iter().enumerate() {
                trial[i] += step[k];
            }
            project(&mut trial);
            let c = norm_sq(&problem.residual_vec(&trial));
            if c < cost {
                let step_norm: f64 = step.iter().map(|s| s * s).sum::<f64>().sqrt();
                x = trial;
                let gain = cost - c;
                cost = c;
                lambda = (lambda / 3.0).max(1e-12);
                improved = true;
                if step_norm < 1e-15 || gain < 1e-32 {
                    return LmOutcome {
                        x,
                        residual: cost.sqrt(),
                    };
                }
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    LmOutcome {
        x,
        residual: cost.sqrt(),
    }
}
