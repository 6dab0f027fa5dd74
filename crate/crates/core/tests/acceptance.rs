//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use qutrit_kak::analytic::{
    lookup_solution, small_angle_tmin, solution_table, tmin_curve, validate_table, validation_grid,
};
use qutrit_kak::cartan::{check_cartan_structure, generator_basis, sequence_unitary, CARTAN_TOL};
use qutrit_kak::gates::{GateFamily, GateName};
use qutrit_kak::pulse::{
    compile, error_vs_amplitude, loglog_slope, simulate_ideal, DEFAULT_OMEGAS,
};
use qutrit_kak::solver::{find_tmin, SolverConfig};
use qutrit_kak::su3::phase_sensitive_distance;
use qutrit_kak::Params;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let v = validate_table(&solution_table(), &validation_grid());
    let elapsed = start.elapsed().as_secs_f64();
    let max_res = v.records.iter().map(|r| r.residual).fold(0.0, f64::max);
    let pass = v.passed() && v.records.len() == 18 * 12 + 3 && elapsed < 1.0;
    outcome(
        pass,
        format!(
            "{} records, {} failures, max residual {max_res:.2e}, {elapsed:.3} s",
            v.records.len(),
            v.failures.len()
        ),
    )
}

fn qft_times() -> Outcome {
    let c = 3.0 * (2.0f64 / 3.0).sqrt().acos();
    let cases = [(9.0, PI), (5.0, c), (1.0, 2.0 * PI - c)];
    let mut worst = 0.0f64;
    for (sixths, expected) in cases {
        let s = lookup_solution(GateName::Qft, 0.0, sixths * PI / 6.0).unwrap();
        worst = worst.max((s.tmin - expected).abs());
    }
    let named = (c - 1.846439).abs() < 1e-6 && (2.0 * PI - c - 4.436746).abs() < 1e-6;
    outcome(
        worst < 1e-6 && named,
        format!("max |T - expected| {worst:.2e}"),
    )
}

fn solver_cross_validation() -> Outcome {
    let cfg = SolverConfig::default();
    let mut worst = 0.0f64;
    let mut slowest = 0.0f64;
    let mut failures = Vec::new();
    let mut count = 0;
    for family in GateFamily::ALL {
        for gate in family.members() {
            for phi in [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0] {
                for n in 1..=4 {
                    let theta = n as f64 * PI / 4.0;
                    let expected = lookup_solution(gate, theta, phi).unwrap().tmin;
                    let g = qutrit_kak::gates::make_gate(gate, theta).unwrap();
                    let start = Instant::now();
                    let r = find_tmin(&g.unitary, phi, &cfg);
                    slowest = slowest.max(start.elapsed().as_secs_f64());
                    count += 1;
                    match r {
                        Ok(r) if r.feasible && (r.total_time - expected).abs() < 1e-3 => {
                            worst = worst.max((r.total_time - expected).abs());
                        }
                        Ok(r) => failures.push(format!(
                            "{gate} φ={phi:.4} θ={theta:.4}: T={} vs {expected}",
                            r.total_time
                        )),
                        Err(e) => failures.push(format!("{gate} φ={phi:.4} θ={theta:.4}: {e}")),
                    }
                }
            }
        }
    }
    let pass = failures.is_empty() && slowest < 300.0;
    let mut detail =
        format!("{count} triples, max |T - formula| {worst:.2e}, slowest {slowest:.2} s");
    for f in failures {
        detail.push_str(&format!("\n      {f}"));
    }
    outcome(pass, detail)
}

fn phase_dependence() -> Outcome {
    let grid: Vec<f64> = (1..=240).map(|k| k as f64 * PI / 240.0).collect();
    let mut problems = Vec::new();
    for family in GateFamily::ALL {
        let flat = tmin_curve(family, 2.0 * PI / 3.0, &grid).unwrap();
        if flat.iter().any(|&(_, t)| (t - PI).abs() > 1e-9) {
            problems.push(format!("{family} φ=2π/3 not constant"));
        }
        let up = tmin_curve(family, 0.0, &grid).unwrap();
        if up.windows(2).any(|w| w[1].1 < w[0].1) {
            problems.push(format!("{family} φ=0 decreases"));
        }
        let down = tmin_curve(family, 4.0 * PI / 3.0, &grid).unwrap();
        if down.windows(2).any(|w| w[1].1 > w[0].1) {
            problems.push(format!("{family} φ=4π/3 increases"));
        }
    }
    let cross = 2.0 * PI / 3.0;
    let a = tmin_curve(GateFamily::R13, 2.0 * PI / 3.0, &[cross]).unwrap()[0].1;
    let b = tmin_curve(GateFamily::R13, 4.0 * PI / 3.0, &[cross]).unwrap()[0].1;
    if (a - PI).abs() > 1e-9 || (b - PI).abs() > 1e-9 {
        problems.push(format!("R13 crossing at 2π/3: {a}, {b}"));
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("3 families, {} θ points", grid.len())
        } else {
            problems.join("; ")
        },
    )
}

fn small_angle() -> Outcome {
    let theta = 0.1f64;
    let exact = lookup_solution(GateName::Rx12, theta, 0.0).unwrap().tmin;
    let gap = (exact - small_angle_tmin(theta)).abs() / theta;
    outcome(gap < 1e-3, format!("relative gap {gap:.3e} at θ = 0.1"))
}

fn cartan_structure() -> Outcome {
    let basis = generator_basis::<f64>();
    let report = check_cartan_structure(&basis);
    let c47 = basis.get(4).commutator(basis.get(7)).frobenius_norm();
    let c48 = basis.get(4).commutator(basis.get(8)).frobenius_norm();
    let pass =
        report.all_pass() && report.max_residual() < CARTAN_TOL && c47 < 1e-12 && c48 < 1e-12;
    outcome(
        pass,
        format!(
            "{} checks, max residual {:.2e}, |[L4,L7]| {c47:.1e}, |[L4,L8]| {c48:.1e}",
            report.checks.len(),
            report.max_residual()
        ),
    )
}

fn tabulated_params() -> Vec<(String, Params)> {
    let mut out = Vec::new();
    for row in solution_table() {
        if row.gate.is_rotation() {
            for theta in validation_grid() {
                out.push((format!("{} θ={theta:.4}", row.label()), row.params(theta)));
            }
        } else {
            out.push((row.label(), row.params(0.0)));
        }
    }
    out
}

fn compile_round_trip() -> Outcome {
    let mut worst = 0.0f64;
    let mut max_pulses = 0;
    let mut max_delays = 0;
    let mut failures = Vec::new();
    let all = tabulated_params();
    for (label, p) in &all {
        let prog = compile(p).unwrap();
        let d = phase_sensitive_distance(&simulate_ideal(&prog), &sequence_unitary(p).unwrap());
        worst = worst.max(d);
        max_pulses = max_pulses.max(prog.pulse_count());
        max_delays = max_delays.max(prog.delay_count());
        if d >= 1e-12 || prog.pulse_count() > 8 || prog.delay_count() > 2 {
            failures.push(label.clone());
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} programs, max distance {worst:.2e}, max pulses {max_pulses}, max delays {max_delays}{}", all.len(), if failures.is_empty() { String::new() } else { format!(", failing: {}", failures.join(", ")) }),
    )
}

fn finite_amplitude() -> Outcome {
    let mut slopes = (f64::INFINITY, f64::NEG_INFINITY);
    let mut worst_final = 0.0f64;
    let mut failures = Vec::new();
    let all = tabulated_params();
    for (label, p) in &all {
        let prog = compile(p).unwrap();
        let target = sequence_unitary(p).unwrap();
        let sweep = error_vs_amplitude(&prog, &target, &DEFAULT_OMEGAS).unwrap();
        let decreasing = sweep.windows(2).all(|w| w[1].1 < w[0].1);
        let last = sweep.last().unwrap().1;
        let slope = loglog_slope(&sweep[1..]);
        slopes = (slopes.0.min(slope), slopes.1.max(slope));
        worst_final = worst_final.max(last);
        if !decreasing || last >= 1e-4 || !(0.8..=2.2).contains(&slope) {
            failures.push(format!("{label} slope {slope:.3} final {last:.2e}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} programs, slope range [{:.3}, {:.3}], max infidelity at 1e4 {worst_final:.2e}{}",
            all.len(),
            slopes.0,
            slopes.1,
            if failures.is_empty() {
                String::new()
            } else {
                format!(", failing: {}", failures.join(", "))
            }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 table reproduction", table_reproduction),
        ("2 QFT minimum times", qft_times),
        ("3 solver cross-validation", solver_cross_validation),
        ("4 phase-dependence phenomena", phase_dependence),
        ("5 small-angle asymptotics", small_angle),
        ("6 Cartan structure", cartan_structure),
        ("7 compile/simulate round-trip", compile_round_trip),
        ("8 finite-amplitude convergence", finite_amplitude),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let o = run();
        all &= o.pass;
        println!(
            "[{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {}",
        if all { "all criteria pass" } else { "FAILED" }
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
