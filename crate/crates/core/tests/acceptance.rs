//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --release --test acceptance` for realistic
//! timings; the time limits are asserted in every profile.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qsym::arith::{frac, int};
use qsym::cli;
use qsym::identities::{
    check_expansion, check_limit_q1, check_recurrence, check_shift, sweep, HMode, Identity, Mutation, SweepConfig,
};
use qsym::qbernoulli::{
    beta_higher, beta_weighted, classical_bernoulli_higher, classical_bernoulli_numbers, BetaQuery, WeightedBetaQuery,
};
use qsym::volkenborn::{convergence_report, Family, PadicContext, Valuation, VolkenbornParams};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_hold(cfg: &SweepConfig) -> Outcome {
    let reports = sweep(cfg).map_err(|e| e.to_string())?;
    match reports.iter().find(|r| !r.holds) {
        Some(bad) => Err(format!("counterexample {}", bad.to_json_line(false))),
        None => Ok(format!("{} checks", reports.len())),
    }
}

fn within(limit: Duration, start: Instant, ok: String) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{ok}, but took {took:.2?} (limit {limit:?})"));
    }
    Ok(format!("{ok} in {took:.2?}"))
}

fn c1_recurrence() -> Outcome {
    let start = Instant::now();
    for n in 0..=12 {
        let rep = check_recurrence(n).map_err(|e| e.to_string())?;
        if !rep.holds {
            return Err(rep.to_json_line(false));
        }
    }
    within(Duration::from_secs(5), start, "n = 0..12 hold".into())
}

fn c2_shift() -> Outcome {
    for n in 0..=10 {
        let rep = check_shift(n).map_err(|e| e.to_string())?;
        if !rep.holds {
            return Err(rep.to_json_line(false));
        }
    }
    Ok("n = 0..10 hold".into())
}

fn c3_expansion() -> Outcome {
    for n in 0..=6 {
        for x in 0..=3 {
            let rep = check_expansion(n, x).map_err(|e| e.to_string())?;
            if !rep.holds {
                return Err(rep.to_json_line(false));
            }
        }
    }
    Ok("n = 0..6, x = 0..3 hold".into())
}

fn c4_unweighted_symmetry() -> Outcome {
    let start = Instant::now();
    let cfg = SweepConfig {
        identities: vec![Identity::Thm3, Identity::Thm4],
        n: (0..=5).collect(),
        r: vec![1, 2, 3],
        w1: vec![1, 2, 3],
        w2: vec![1, 2, 3],
        x: vec![0, 1, 2],
        threads: Some(1),
        ..Default::default()
    };
    let ok = all_hold(&cfg)?;
    within(Duration::from_secs(180), start, format!("{ok} on one thread"))
}

fn c5_weighted_symmetry() -> Outcome {
    let cfg = SweepConfig {
        identities: vec![Identity::Thm5, Identity::Thm6],
        n: (0..=4).collect(),
        r: vec![1, 2],
        h: vec![0, 1, 3],
        h_mode: HMode::OffsetFromR,
        w1: vec![1, 2, 3],
        w2: vec![1, 2, 3],
        x: vec![0, 1, 2],
        ..Default::default()
    };
    all_hold(&cfg)
}

fn c6_multiplication() -> Outcome {
    let cfg = SweepConfig {
        identities: vec![Identity::Multiplication],
        n: (0..=4).collect(),
        r: vec![1, 2],
        w1: vec![1, 2, 3, 4],
        x: vec![0, 1, 2],
        ..Default::default()
    };
    all_hold(&cfg)
}

fn c7_classical_limit() -> Outcome {
    for n in 0..=6 {
        for r in 1..=3 {
            for x in 0..=2 {
                let rep = check_limit_q1(n, r, x).map_err(|e| e.to_string())?;
                if !rep.holds {
                    return Err(rep.to_json_line(false));
                }
            }
        }
    }
    let b = classical_bernoulli_numbers(2);
    let b12 = classical_bernoulli_higher(1, 2, &int(0)).map_err(|e| e.to_string())?;
    if b[1] != frac(-1, 2) || b[2] != frac(1, 6) || b12 != int(-1) {
        return Err(format!("spot values B1={} B2={} B1^(2)={}", b[1], b[2], b12));
    }
    // the q-side agrees with the spot values too
    let lim = |n, r| beta_higher(&BetaQuery::new(n, r, 1, 0).unwrap()).unwrap().limit_at_one().unwrap();
    if lim(1, 1) != frac(-1, 2) || lim(2, 1) != frac(1, 6) || lim(1, 2) != int(-1) {
        return Err("q -> 1 limits disagree with spot values".into());
    }
    Ok("n <= 6, r <= 3, x <= 2 and spot values".into())
}

fn c8_weighted_bridge() -> Outcome {
    for n in 0..=6 {
        for x in 0..=2 {
            let a = beta_weighted(&WeightedBetaQuery::new(n, 1, 1, 1, x).unwrap()).map_err(|e| e.to_string())?;
            let b = beta_higher(&BetaQuery::new(n, 1, 1, x).unwrap()).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("n={n} x={x}: {} vs {}", a.to_pretty(), b.to_pretty()));
            }
        }
    }
    Ok("n <= 6, x <= 2".into())
}

fn c9_volkenborn() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut lowest_final = i64::MAX;
    for r in 1..=2u32 {
        let ctx = PadicContext::new(5, Some(int(6)), if r == 1 { 4 } else { 3 }).map_err(|e| e.to_string())?;
        for n in 0..=3 {
            for x in 0..=1 {
                let mut runs = vec![(Family::Multi, None)];
                runs.extend([r as i64, r as i64 + 1].map(|h| (Family::Weighted, Some(h))));
                for (family, h) in runs {
                    let rep =
                        convergence_report(family, VolkenbornParams { n, r, h, x }, &ctx).map_err(|e| e.to_string())?;
                    count += 1;
                    if !rep.monotone {
                        return Err(format!("not monotone: {}", rep.to_json()));
                    }
                    if r == 1 {
                        match rep.last_valuation() {
                            Some(Valuation::Infinite) => {}
                            Some(Valuation::Finite(v)) if v >= 3 => lowest_final = lowest_final.min(v),
                            _ => return Err(format!("final valuation below 3: {}", rep.to_json())),
                        }
                    }
                }
            }
        }
    }
    within(
        Duration::from_secs(120),
        start,
        format!("{count} reports monotone, smallest final r=1 valuation {lowest_final}"),
    )
}

fn c10_mutation() -> Outcome {
    let cfg = SweepConfig {
        identities: vec![Identity::Thm4],
        n: (0..=3).collect(),
        r: vec![1, 2],
        w1: vec![1, 2, 3],
        w2: vec![1, 2, 3],
        x: vec![0, 1],
        mutation: Some(Mutation::Thm4LhsExponent),
        ..Default::default()
    };
    let reports = sweep(&cfg).map_err(|e| e.to_string())?;
    let failed = reports.iter().filter(|r| !r.holds).count();
    if failed == 0 {
        return Err("mutated checker still reports success everywhere".into());
    }
    let out = cli::verify_with(&cfg, None, false);
    if out.code != 1 {
        return Err(format!("mutated sweep exited {} instead of 1", out.code));
    }
    Ok(format!("{failed} of {} mutated checks fail", reports.len()))
}

fn c11_determinism() -> Outcome {
    let commands = [
        "verify --identity thm3,thm4,thm5,thm6 --max-n 3 --max-r 2 --max-w 3 --max-x 1",
        "table --n 0:6 --r 1:2 --w 1:3 --arg 0:2",
    ];
    for cmd in commands {
        let mut outputs = Vec::new();
        for threads in ["1", "4", "1", "4"] {
            let args = ["qsym", "--threads", threads].into_iter().chain(cmd.split_whitespace());
            let out = cli::run(args);
            if out.code != 0 {
                return Err(format!("{cmd} exited {}: {}", out.code, out.stderr));
            }
            outputs.push(out.stdout);
        }
        if outputs.iter().any(|o| o != &outputs[0]) {
            return Err(format!("{cmd}: output differs between runs"));
        }
    }
    Ok("verify and table byte-identical across threads 1 and 4".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("carlitz recurrence, n <= 12", c1_recurrence),
        ("shift identity, n <= 10", c2_shift),
        ("binomial expansion, n <= 6", c3_expansion),
        ("unweighted symmetry (thm3, thm4)", c4_unweighted_symmetry),
        ("weighted symmetry (thm5, thm6)", c5_weighted_symmetry),
        ("multiplication formula", c6_multiplication),
        ("classical limit q -> 1", c7_classical_limit),
        ("weighted bridge h = r = 1", c8_weighted_bridge),
        ("q-Volkenborn convergence, p = 5", c9_volkenborn),
        ("checker integrity under mutation", c10_mutation),
        ("determinism across thread counts", c11_determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
