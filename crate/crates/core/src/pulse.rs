//! Pulse programs: hard nonselective x/y pulses separated by free evolution
//! under `H_q`, plus finite-amplitude simulation.
//!
//! Events are stored in time order (index 0 runs first), which is the reverse
//! of the factor order in the sequence product.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanPair, Generator, SequenceParams};
use crate::error::{Error, Result};
use crate::scalar::{wrap_angle, Real};
use crate::su3::{gate_fidelity, herm_expm, spin1_operators, Operator3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    fn generator(self) -> Generator {
        match self {
            Self::X => Generator::Ix,
            Self::Y => Generator::Iy,
        }
    }

    fn matrix<T: Real>(self) -> Operator3<T> {
        let s = spin1_operators::<T>();
        match self {
            Self::X => s.ix,
            Self::Y => s.iy,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::X => "x",
            Self::Y => "y",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PulseEvent<T> {
    /// `e^{−i·angle·I_axis}`, angle in `(−π, π]`.
    HardPulse {
        axis: Axis,
        #[serde(rename = "angle_rad")]
        angle: T,
    },
    /// `e^{−i·duration·H_q}`, duration in units of `1/q`.
    Delay { duration: T },
}

impl<T: Real> PulseEvent<T> {
    pub fn is_pulse(&self) -> bool {
        matches!(self, Self::HardPulse { .. })
    }

    /// Ideal propagator of this event.
    pub fn unitary(&self) -> Operator3<T> {
        match *self {
            Self::HardPulse { axis, angle } => axis.generator().exp(angle),
            Self::Delay { duration } => Generator::L4.exp(duration),
        }
    }
}

impl<T: Real> std::fmt::Display for PulseEvent<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::HardPulse { axis, angle } => write!(f, "{axis}({angle})"),
            Self::Delay { duration } => write!(f, "Delay({duration})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseProgram<T> {
    pub events: Vec<PulseEvent<T>>,
    pub total_free_time: T,
}

impl<T: Real> PulseProgram<T> {
    pub fn empty() -> Self {
        Self {
            events: Vec::new(),
            total_free_time: T::zero(),
        }
    }

    pub fn pulse_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_pulse()).count()
    }

    pub fn delay_count(&self) -> usize {
        self.events.len() - self.pulse_count()
    }
}

/// Factor expansion of the sequence in operator order (leftmost first).
fn expand<T: Real>(p: &SequenceParams<T>) -> Vec<PulseEvent<T>> {
    let half_pi = T::FRAC_PI_2();
    let quarter_pi = T::FRAC_PI_4();
    let pulse = |axis, angle| PulseEvent::HardPulse { axis, angle };
    let mut out = Vec::with_capacity(16);
    for (g, v) in p.factors() {
        match g {
            Generator::Ix => out.push(pulse(Axis::X, v)),
            Generator::Iy => out.push(pulse(Axis::Y, v)),
            Generator::L4 => out.push(PulseEvent::Delay { duration: v }),
            Generator::L7 => out.extend([
                pulse(Axis::Y, half_pi),
                PulseEvent::Delay { duration: v },
                pulse(Axis::Y, -half_pi),
            ]),
            Generator::L8 => out.extend([
                pulse(Axis::Y, -half_pi),
                pulse(Axis::X, quarter_pi),
                PulseEvent::Delay { duration: v },
                pulse(Axis::X, -quarter_pi),
                pulse(Axis::Y, half_pi),
            ]),
        }
    }
    out
}

fn time_ordered<T: Real>(p: &SequenceParams<T>) -> Result<Vec<PulseEvent<T>>> {
    p.check_times()?;
    let mut events = expand(p);
    events.reverse();
    Ok(events)
}

/// Compiles without merging or dropping anything.
pub fn compile_unmerged<T: Real>(p: &SequenceParams<T>) -> Result<PulseProgram<T>> {
    Ok(PulseProgram {
        events: time_ordered(p)?,
        total_free_time: p.t1 + p.t2,
    })
}

/// Compiles the sequence into a time-ordered program, merging adjacent pulses
/// on the same axis (and adjacent delays) and dropping identity events.
pub fn compile<T: Real>(p: &SequenceParams<T>) -> Result<PulseProgram<T>> {
    let zero_angle = T::epsilon() * T::lit(16.0);
    let mut out: Vec<PulseEvent<T>> = Vec::new();
    for ev in time_ordered(p)? {
        match ev {
            PulseEvent::Delay { duration } => {
                if duration == T::zero() {
                    continue;
                }
                if let Some(PulseEvent::Delay { duration: d }) = out.last_mut() {
                    *d = *d + duration;
                } else {
                    out.push(ev);
                }
            }
            PulseEvent::HardPulse { axis, angle } => {
                let mut angle = wrap_angle(angle);
                if let Some(&PulseEvent::HardPulse {
                    axis: prev,
                    angle: a,
                }) = out.last()
                {
                    if prev == axis {
                        out.pop();
                        angle = wrap_angle(a + angle);
                    }
                }
                if angle.abs() > zero_angle {
                    out.push(PulseEvent::HardPulse { axis, angle });
                }
                // A dropped pulse can leave two delays next to each other.
                if let [.., PulseEvent::Delay { duration: a }, PulseEvent::Delay { duration: b }] =
                    out[..]
                {
                    out.truncate(out.len() - 2);
                    out.push(PulseEvent::Delay { duration: a + b });
                }
            }
        }
    }
    Ok(PulseProgram {
        events: out,
        total_free_time: p.t1 + p.t2,
    })
}

/// Time-ordered product of the ideal event propagators.
pub fn simulate_ideal<T: Real>(prog: &PulseProgram<T>) -> Operator3<T> {
    prog.events
        .iter()
        .fold(Operator3::identity(), |acc, e| e.unitary() * acc)
}

/// Each pulse runs for `|angle|/ω` under `H_q ± ω·I_axis`; delays are exact.
pub fn simulate_finite<T: Real>(prog: &PulseProgram<T>, omega: T) -> Result<Operator3<T>> {
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(Error::NonpositiveAmplitude {
            omega: omega.to_f64(),
        });
    }
    let hq = spin1_operators::<T>().hq;
    let mut acc = Operator3::identity();
    for e in &prog.events {
        let u = match *e {
            PulseEvent::HardPulse { axis, angle } => {
                let amp = if angle < T::zero() { -omega } else { omega };
                herm_expm(
                    &(hq + axis.matrix::<T>().scale_real(amp)),
                    angle.abs() / omega,
                )?
            }
            PulseEvent::Delay { .. } => e.unitary(),
        };
        acc = u * acc;
    }
    Ok(acc)
}

/// `(ω, 1 − F(simulate_finite(prog, ω), target))` for each `ω`.
pub fn error_vs_amplitude<T: Real>(
    prog: &PulseProgram<T>,
    target: &Operator3<T>,
    omegas: &[T],
) -> Result<Vec<(T, T)>> {
    if omegas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidConfig(
            "omega list must be strictly ascending".into(),
        ));
    }
    omegas
        .iter()
        .map(|&w| {
            let u = simulate_finite(prog, w)?;
            Ok((w, T::one() - gate_fidelity(&u, target)?))
        })
        .collect()
}

pub const DEFAULT_OMEGAS: [f64; 4] = [10.0, 1e2, 1e3, 1e4];

pub const PROGRAM_SCHEMA_VERSION: u32 = 1;

/// Serialized form of a compiled program.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProgramDocument {
    pub version: u32,
    pub q_units: bool,
    pub target_gate: Option<String>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    /// `‖simulate_ideal(program) − e^{iφ}G‖_F` when a target is known.
    pub residual: Option<f64>,
    pub total_free_time: f64,
    pub source_params: SequenceParams<f64>,
    pub events: Vec<PulseEvent<f64>>,
}

impl ProgramDocument {
    pub fn new(prog: &PulseProgram<f64>, source: &SequenceParams<f64>) -> Self {
        Self {
            version: PROGRAM_SCHEMA_VERSION,
            q_units: true,
            target_gate: None,
            theta: None,
            phi: None,
            residual: None,
            total_free_time: prog.total_free_time,
            source_params: *source,
            events: prog.events.clone(),
        }
    }

    pub fn program(&self) -> PulseProgram<f64> {
        PulseProgram {
            events: self.events.clone(),
            total_free_time: self.total_free_time,
        }
    }
}

pub fn write_program_json<W: Write>(doc: &ProgramDocument, writer: W) -> Result<()> {
    serde_json::to_writer_pretty(writer, doc)?;
    Ok(())
}

pub fn read_program_json<R: std::io::Read>(reader: R) -> Result<ProgramDocument> {
    Ok(serde_json::from_reader(reader)?)
}

pub fn write_sweep_csv<W: Write>(sweep: &[(f64, f64)], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["omega", "infidelity"])?;
    for (omega, inf) in sweep {
        w.write_record([format!("{omega:e}"), format!("{inf:e}")])?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `log(infidelity)` against `log(1/ω)`.
pub fn loglog_slope(sweep: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = sweep
        .iter()
        .map(|&(w, e)| ((1.0 / w).ln(), e.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Upper bound on pulses for a compiled program of the given shape.
pub fn pulse_bound(p: &SequenceParams<f64>) -> usize {
    use crate::cartan::EulerConvention;
    match (p.cartan_pair, p.euler_convention) {
        (CartanPair::L4L7, _) => 8,
        (CartanPair::L4L8, EulerConvention::Yxy) => 9,
        (CartanPair::L4L8, EulerConvention::Xyx) => 10,
    }
}
