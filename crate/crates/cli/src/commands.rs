use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::json;

use qutrit_kak::analytic::{
    lookup_solution, solution_table, tmin_curve, validate_table, validation_grid, write_curve_csv,
    write_table_csv, TableRow,
};
use qutrit_kak::cartan::{residual, SequenceParams};
use qutrit_kak::gates::{global_phases, make_gate, GateFamily};
use qutrit_kak::pulse::{
    compile as compile_program, error_vs_amplitude, simulate_ideal, write_program_json,
    write_sweep_csv, ProgramDocument,
};
use qutrit_kak::solver::{find_tmin, min_over_phases_of, SolverConfig};
use qutrit_kak::su3::phase_sensitive_distance;
use qutrit_kak::{Error, Operator};

use crate::exit::{CliError, FAILURE, INVALID, NON_UNITARY};
use crate::{CompileArgs, SolveArgs, SolverFlags};

const PI: f64 = std::f64::consts::PI;
const UNITARY_TOL: f64 = 1e-8;

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn open(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::io(path, e))
}

fn in_pi(x: f64) -> String {
    format!("{:.6}π", x / PI)
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::io(path, e))?;
    use std::io::Write;
    w.write_all(b"\n")
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(path, e))
}

pub fn tables(out: &Path, rows_file: Option<&Path>) -> Result<(), CliError> {
    let start = Instant::now();
    let rows: Vec<TableRow> = match rows_file {
        Some(p) => serde_json::from_reader(open(p)?)
            .map_err(|e| CliError::new(INVALID, format!("{}: {e}", p.display())))?,
        None => solution_table(),
    };
    let v = validate_table(&rows, &validation_grid());
    write_table_csv(&v.records, create(out)?)?;
    let rotations = rows.iter().filter(|r| r.gate.is_rotation()).count();
    println!(
        "{} rows ({} rotation, {} QFT), {} records written to {}",
        rows.len(),
        rotations,
        rows.len() - rotations,
        v.records.len(),
        out.display()
    );
    for f in &v.failures {
        println!(
            "FAIL {} theta={}: {} (residual {:.3e}, time mismatch {:.3e})",
            f.label,
            in_pi(f.theta),
            f.reason,
            f.residual,
            f.time_mismatch
        );
    }
    let max_res = v.records.iter().map(|r| r.residual).fold(0.0, f64::max);
    println!(
        "max residual {max_res:.3e}; wall time {:.3} s",
        start.elapsed().as_secs_f64()
    );
    if v.passed() {
        println!("PASS");
        Ok(())
    } else {
        Err(CliError::new(
            FAILURE,
            format!("{} row evaluations failed", v.failures.len()),
        ))
    }
}

pub fn curve(
    family: GateFamily,
    phi: f64,
    theta_min: f64,
    theta_max: f64,
    points: usize,
    out: &Path,
) -> Result<(), CliError> {
    // Angles parsed from "1" land within rounding of π.
    let slack = 1e-12;
    if !(theta_min >= -slack && theta_min < theta_max && theta_max <= PI + slack) {
        return Err(CliError::new(
            INVALID,
            format!(
                "need 0 ≤ theta-min < theta-max ≤ π, got [{}, {}]",
                in_pi(theta_min),
                in_pi(theta_max)
            ),
        ));
    }
    if points < 2 {
        return Err(CliError::new(
            INVALID,
            format!("need at least 2 points, got {points}"),
        ));
    }
    let (lo, hi) = (theta_min.max(0.0), theta_max.min(PI));
    let grid: Vec<f64> = (0..points)
        .map(|k| {
            if k + 1 == points {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (points - 1) as f64
            }
        })
        .collect();
    let pts = tmin_curve(family, phi, &grid)?;
    write_curve_csv(&pts, create(out)?)?;
    let (tmin, tmax) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(_, t)| {
            (a.min(t), b.max(t))
        });
    println!(
        "{family} phi={}: {} points on [{}, {}], Tmin in [{tmin:.9}, {tmax:.9}] -> {}",
        in_pi(phi),
        pts.len(),
        in_pi(lo),
        in_pi(hi),
        out.display()
    );
    Ok(())
}

fn solver_config(f: &SolverFlags) -> Result<SolverConfig, CliError> {
    let cfg = SolverConfig {
        residual_tol: f.residual_tol,
        n_restarts: f.restarts,
        rng_seed: f.seed,
        t_grid_step: f.grid_step,
        ..SolverConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Deserialize)]
struct MatrixFile {
    real: [[f64; 3]; 3],
    #[serde(default)]
    imag: [[f64; 3]; 3],
}

fn read_matrix(path: &Path) -> Result<Operator, CliError> {
    let m: MatrixFile = serde_json::from_reader(open(path)?)
        .map_err(|e| CliError::new(INVALID, format!("{}: {e}", path.display())))?;
    let mut u = Operator::zero();
    for i in 0..3 {
        for j in 0..3 {
            u.entries[i][j] = Complex64::new(m.real[i][j], m.imag[i][j]);
        }
    }
    let dev = u.unitary_deviation();
    if dev > UNITARY_TOL {
        return Err(CliError::new(
            NON_UNITARY,
            format!("input matrix is not unitary: ‖U†U − I‖ = {dev:.3e}"),
        ));
    }
    Ok(u)
}

pub fn solve(a: SolveArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let cfg = solver_config(&a.solver)?;
    let (u, target) = match (&a.gate, &a.matrix) {
        (Some(g), _) => (
            make_gate(*g, a.theta)?.unitary,
            json!({ "gate": g, "theta": a.theta }),
        ),
        (None, Some(p)) => (
            read_matrix(p)?,
            json!({ "matrix": p.display().to_string() }),
        ),
        (None, None) => {
            return Err(CliError::new(
                INVALID,
                "either --gate or --matrix is required",
            ))
        }
    };
    let (phi, result, per_phase) = match a.phi {
        Some(phi) => (phi, find_tmin(&u, phi, &cfg)?, None),
        None => {
            let s = min_over_phases_of(&u, &cfg)?;
            let per: Vec<_> = s
                .per_phase
                .iter()
                .map(|(phi, r)| match r {
                    Ok(r) => json!({ "phi": phi, "total_time": r.total_time, "residual": r.residual_value }),
                    Err(e) => json!({ "phi": phi, "error": e }),
                })
                .collect();
            (s.phi_best, s.best, Some(per))
        }
    };
    let check = residual(&result.params, &u, phi);
    let report = json!({
        "command": "solve",
        "target": target,
        "config": cfg,
        "seed": cfg.rng_seed,
        "phi": phi,
        "result": result,
        "residual": check,
        "per_phase": per_phase,
    });
    write_json(&a.out, &report)?;
    if let Some(per) = &per_phase {
        for p in per {
            println!("  phase {p}");
        }
    }
    println!(
        "phi={} numerical Tmin={:.9} (t1={:.9}, t2={:.9}, {} {}), residual {check:.3e}, seed {}; wall time {:.2} s",
        in_pi(phi),
        result.total_time,
        result.params.t1,
        result.params.t2,
        result.params.euler_convention,
        result.params.cartan_pair,
        cfg.rng_seed,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

pub fn compile(a: CompileArgs) -> Result<(), CliError> {
    let gate = make_gate(a.gate, a.theta)?;
    let phi = a.phi.unwrap_or_else(|| global_phases(&gate).phi0);
    let (params, source): (SequenceParams<f64>, &str) = match lookup_solution(a.gate, a.theta, phi)
    {
        Ok(s) => (s.params, "table"),
        Err(Error::UnknownCombination { .. } | Error::ThetaOutOfValidatedDomain { .. }) => {
            let cfg = solver_config(&a.solver)?;
            (find_tmin(&gate.unitary, phi, &cfg)?.params, "solver")
        }
        Err(e) => return Err(e.into()),
    };
    let prog = compile_program(&params)?;
    let target = gate.unitary.with_phase(phi);
    let res = phase_sensitive_distance(&simulate_ideal(&prog), &target);
    let sweep = error_vs_amplitude(&prog, &target, &a.omega)?;

    let doc = ProgramDocument {
        target_gate: Some(a.gate.to_string()),
        theta: Some(a.theta),
        phi: Some(phi),
        residual: Some(res),
        ..ProgramDocument::new(&prog, &params)
    };
    write_program_json(&doc, create(&a.out)?)?;
    write_sweep_csv(&sweep, create(&a.sweep_out)?)?;

    println!(
        "{} theta={} phi={} ({source}): {} pulses, {} delays, T={:.9}, residual {res:.3e}",
        a.gate,
        in_pi(a.theta),
        in_pi(phi),
        prog.pulse_count(),
        prog.delay_count(),
        prog.total_free_time
    );
    for (k, e) in prog.events.iter().enumerate() {
        println!("  {k}: {e}");
    }
    for (w, inf) in &sweep {
        println!("  omega={w:e} infidelity={inf:.3e}");
    }
    println!(
        "program -> {}, sweep -> {}",
        a.out.display(),
        a.sweep_out.display()
    );
    Ok(())
}
