//! Subcommand dispatch for the thin binary. Exit codes: 0 solved/agreed,
//! 2 divergence found, 3 input error.

use std::fs;
use std::path::Path;

use crate::fuzz::{self, Classification, FuzzParams};
use crate::io::{self, CounterexampleRecord};
use crate::lpp::lpp_solve;
use crate::oracle::{simplex_solve, verify_solution, OracleStatus};
use crate::rat::Rat;

const USAGE: &str = "\
substlp <command> [args]

commands:
  solve <file> [--trace out.jsonl] [--h P/Q] [--oracle-check]
      run the substitution solver on a problem file
  oracle <file>
      run the exact simplex reference solver
  check <file> --x R,R,... --z R
      verify a claimed solution exactly
  replay <counterexample.json>
      re-run a recorded divergence and confirm it reproduces
  fuzz [--m K] [--n K] [--count K] [--seed K] [--range K] [--out DIR]
      random cross-check campaign against the oracle

problem file schema:
  {\"name\"?: str, \"objective\": [\"p/q\", ...], \"A\": [[\"p/q\", ...], ...], \"b\": [\"p/q\", ...]}
";

pub fn run(args: Vec<String>) -> i32 {
    let mut it = args.into_iter();
    match it.next().as_deref() {
        Some("solve") => cmd_solve(it.collect()),
        Some("oracle") => cmd_oracle(it.collect()),
        Some("check") => cmd_check(it.collect()),
        Some("replay") => cmd_replay(it.collect()),
        Some("fuzz") => cmd_fuzz(it.collect()),
        Some("--help") | Some("-h") | Some("help") => {
            println!("{USAGE}");
            0
        }
        Some(other) => {
            eprintln!("unknown command: {other}\n{USAGE}");
            3
        }
        None => {
            eprintln!("{USAGE}");
            3
        }
    }
}

fn input_err(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    3
}

fn read_problem(path: &str) -> Result<io::ProblemFile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    io::parse_problem(&text).map_err(|e| format!("{path}: {e}"))
}

fn take_value(
    flag: &str,
    it: &mut std::vec::IntoIter<String>,
) -> Result<String, String> {
    it.next().ok_or_else(|| format!("{flag} needs a value"))
}

fn cmd_solve(args: Vec<String>) -> i32 {
    let mut file = None;
    let mut trace_path = None;
    let mut h = Rat::one();
    let mut oracle_check = false;
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--trace" => match take_value("--trace", &mut it) {
                Ok(v) => trace_path = Some(v),
                Err(e) => return input_err(e),
            },
            "--h" => match take_value("--h", &mut it).and_then(|v| {
                v.parse::<Rat>().map_err(|e| e.to_string())
            }) {
                Ok(v) if v.is_positive() => h = v,
                Ok(_) => return input_err("--h must be positive"),
                Err(e) => return input_err(e),
            },
            "--oracle-check" => oracle_check = true,
            _ if file.is_none() => file = Some(arg),
            other => return input_err(format!("unexpected argument: {other}")),
        }
    }
    let Some(file) = file else {
        return input_err("solve needs a problem file");
    };
    let pf = match read_problem(&file) {
        Ok(pf) => pf,
        Err(e) => return input_err(e),
    };
    let a = pf.matrix();
    let outcome = match lpp_solve(&a, &pf.b, &pf.objective) {
        Ok(o) => o,
        Err(e) => return input_err(e),
    };
    if let Some(path) = trace_path {
        let mut buf = Vec::new();
        if let Err(e) = io::write_trace_jsonl(&outcome, &mut buf) {
            return input_err(e);
        }
        if let Err(e) = fs::write(&path, buf) {
            return input_err(format!("{path}: {e}"));
        }
    }
    let report = io::outcome_report(&outcome, &h);
    println!("{}", serde_json::to_string_pretty(&report).expect("report"));
    if oracle_check {
        let oracle = simplex_solve(&a, &pf.b, &pf.objective);
        let class = fuzz::classify(&outcome, &oracle);
        let summary = io::oracle_summary(&oracle);
        eprintln!(
            "oracle: {} (z = {}), classification: {}",
            summary.status,
            summary
                .z
                .map(|z| z.to_string())
                .unwrap_or_else(|| "-".into()),
            class.as_str()
        );
        if class != Classification::Agree {
            return 2;
        }
    }
    0
}

fn cmd_oracle(args: Vec<String>) -> i32 {
    let [file] = args.as_slice() else {
        return input_err("oracle needs exactly one problem file");
    };
    let pf = match read_problem(file) {
        Ok(pf) => pf,
        Err(e) => return input_err(e),
    };
    let out = simplex_solve(&pf.matrix(), &pf.b, &pf.objective);
    let value = match &out.status {
        OracleStatus::Optimal { x, z } => serde_json::json!({
            "status": "optimal",
            "z": z,
            "x": x,
            "pivots": out.pivots,
        }),
        OracleStatus::Unbounded { ray } => serde_json::json!({
            "status": "unbounded",
            "ray": ray,
            "pivots": out.pivots,
        }),
        OracleStatus::Infeasible => serde_json::json!({
            "status": "infeasible",
            "pivots": out.pivots,
        }),
    };
    println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    0
}

fn cmd_check(args: Vec<String>) -> i32 {
    let mut file = None;
    let mut xs: Option<Vec<Rat>> = None;
    let mut z: Option<Rat> = None;
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--x" => match take_value("--x", &mut it) {
                Ok(v) => {
                    let parsed: Result<Vec<Rat>, _> =
                        v.split(',').map(|tok| tok.trim().parse()).collect();
                    match parsed {
                        Ok(v) => xs = Some(v),
                        Err(e) => return input_err(e),
                    }
                }
                Err(e) => return input_err(e),
            },
            "--z" => match take_value("--z", &mut it).and_then(|v| {
                v.parse::<Rat>().map_err(|e| e.to_string())
            }) {
                Ok(v) => z = Some(v),
                Err(e) => return input_err(e),
            },
            _ if file.is_none() => file = Some(arg),
            other => return input_err(format!("unexpected argument: {other}")),
        }
    }
    let (Some(file), Some(xs), Some(z)) = (file, xs, z) else {
        return input_err("check needs <file> --x ... --z ...");
    };
    let pf = match read_problem(&file) {
        Ok(pf) => pf,
        Err(e) => return input_err(e),
    };
    let valid = verify_solution(&pf.matrix(), &pf.b, &pf.objective, &xs, &z);
    println!("{}", serde_json::json!({ "valid": valid }));
    if valid {
        0
    } else {
        2
    }
}

fn cmd_replay(args: Vec<String>) -> i32 {
    let [file] = args.as_slice() else {
        return input_err("replay needs exactly one counterexample file");
    };
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return input_err(format!("{file}: {e}")),
    };
    let rec: CounterexampleRecord = match serde_json::from_str(&text) {
        Ok(r) => r,
        Err(e) => return input_err(format!("{file}: {e}")),
    };
    let replay = match fuzz::replay_record(&rec) {
        Ok(r) => r,
        Err(e) => return input_err(e),
    };
    println!(
        "{}",
        serde_json::json!({
            "reproduced": replay.reproduced,
            "divergence": replay.divergence,
            "method": replay.method,
            "oracle": replay.oracle,
        })
    );
    if replay.reproduced {
        0
    } else {
        2
    }
}

fn cmd_fuzz(args: Vec<String>) -> i32 {
    let mut params = FuzzParams::default();
    let mut out_dir = String::from("counterexamples");
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        let numeric = |flag: &str, it: &mut std::vec::IntoIter<String>| {
            take_value(flag, it).and_then(|v| v.parse::<u64>().map_err(|e| e.to_string()))
        };
        match arg.as_str() {
            "--m" => match numeric("--m", &mut it) {
                Ok(v) if v >= 1 => params.m_max = v as usize,
                Ok(_) => return input_err("--m must be at least 1"),
                Err(e) => return input_err(e),
            },
            "--n" => match numeric("--n", &mut it) {
                Ok(v) if v >= 1 => params.n_max = v as usize,
                Ok(_) => return input_err("--n must be at least 1"),
                Err(e) => return input_err(e),
            },
            "--count" => match numeric("--count", &mut it) {
                Ok(v) => params.count = v as usize,
                Err(e) => return input_err(e),
            },
            "--seed" => match numeric("--seed", &mut it) {
                Ok(v) => params.seed = v,
                Err(e) => return input_err(e),
            },
            "--range" => match numeric("--range", &mut it) {
                Ok(v) if v >= 1 => params.entry_range = v as i64,
                Ok(_) => return input_err("--range must be at least 1"),
                Err(e) => return input_err(e),
            },
            "--out" => match take_value("--out", &mut it) {
                Ok(v) => out_dir = v,
                Err(e) => return input_err(e),
            },
            other => return input_err(format!("unexpected argument: {other}")),
        }
    }
    let started = std::time::Instant::now();
    let report = fuzz::fuzz_run(&params);
    let elapsed = started.elapsed();
    if !report.records.is_empty() {
        if let Err(e) = fs::create_dir_all(&out_dir) {
            return input_err(format!("{out_dir}: {e}"));
        }
        for rec in &report.records {
            let path = Path::new(&out_dir).join(format!("cex-{:05}.json", rec.index));
            let text = serde_json::to_string_pretty(rec).expect("record");
            if let Err(e) = fs::write(&path, text) {
                return input_err(format!("{}: {e}", path.display()));
            }
        }
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&serde_json::json!({
            "params": report.params,
            "tally": report.tally,
            "divergences": report.records.len(),
            "out_dir": if report.records.is_empty() { None } else { Some(&out_dir) },
        }))
        .expect("report json")
    );
    eprintln!(
        "fuzz: {} instances in {:.2}s",
        report.tally.total(),
        elapsed.as_secs_f64()
    );
    if report.records.is_empty() {
        0
    } else {
        2
    }
}
