//! Command-line front end: solve, kernelize, generate, benchmark, self-test.
//!
//! Exit codes: 0 solution found / command succeeded, 1 REJECT (no solution),
//! 2 usage or format error, 3 internal invariant violation.

mod pool;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::time::Instant;

use pool::ScopedPool;
use report::RunReport;
use setpack::instance::{
    gen_planted, gen_random, parse_instance, serialize_instance, serialize_kernel,
    serialize_solution, validate, verify_solution, Instance, Kind, Solution,
};
use setpack::kernel::{kernelize, KernelResult};
use setpack::oracle::{brute_force_solve, OracleBudget};
use setpack::repset::binomial;
use setpack::selfcheck::run_suites;
use setpack::solver::{dm3, wdm, wsp, SolveError};

const USAGE: &str = "\
setpack: exact solvers for weighted q-dimensional matching (WDM) and
weighted q-set packing (WSP)

USAGE:
  setpack solve --alg <wdm|wsp|dm3|brute> [--kernel] [--threads N] [--budget N] <file>
  setpack kernelize <file>
  setpack gen --kind <wdm|wsp> --q Q --p P --sizes N[,N...]
              (--members M | --planted [--extra E])
              [--weight-lo L] [--weight-hi H] [--seed S] [--out FILE]
  setpack bench [--alg <wdm|wsp|dm3|brute>] [--kernel] [--threads N] [--budget N] <dir>
  setpack selftest [--quick]

Instances are plain text: a `WDM <q> <p>` or `WSP <q> <p>` header, then one
`T e1 .. eq w` (or `S e1 .. eq w`) line per member; `#` starts a comment line.
Solutions print as `WEIGHT <w>` plus `PICK <index>` lines, or `REJECT`.

solve       runs one algorithm on one instance; with --kernel, kernelizes
            first and lifts the picks back to original member indices.
kernelize   prints the reduced instance with `# MAPM`/`# MAPE` trailer lines.
gen         writes a seeded random instance; --planted guarantees a feasible
            one and records the planted weight in a trailing comment.
bench       one tab-separated report line per file in the directory.
selftest    runs the built-in invariant suites against the brute-force oracle.

Exit codes: 0 solved/ok, 1 REJECT, 2 usage or format error, 3 internal error.
";

const EXIT_OK: i32 = 0;
const EXIT_REJECT: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_INTERNAL: i32 = 3;

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INTERNAL, message: message.into() }
    }
}

/// Engine errors mean the solver fed itself inconsistent families; everything
/// else the caller can fix.
fn solve_failure(e: SolveError) -> Failure {
    match e {
        SolveError::Engine(_) => Failure::internal(e.to_string()),
        _ => Failure::usage(e.to_string()),
    }
}

type CmdResult = Result<i32, Failure>;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = match run(&args) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("setpack: {}", failure.message);
            failure.code
        }
    };
    std::process::exit(code);
}

fn run(args: &[String]) -> CmdResult {
    let Some((command, rest)) = args.split_first() else {
        eprint!("{}", USAGE);
        return Ok(EXIT_USAGE);
    };
    match command.as_str() {
        "solve" => cmd_solve(rest),
        "kernelize" => cmd_kernelize(rest),
        "gen" => cmd_gen(rest),
        "bench" => cmd_bench(rest),
        "selftest" => cmd_selftest(rest),
        "help" | "--help" | "-h" => {
            print!("{}", USAGE);
            Ok(EXIT_OK)
        }
        other => Err(Failure::usage(format!("unknown command `{}`; try `setpack help`", other))),
    }
}

// ---------------------------------------------------------------- arguments

struct Flags {
    values: BTreeMap<&'static str, String>,
    switches: Vec<&'static str>,
    positional: Vec<String>,
}

fn scan_flags(
    args: &[String],
    value_flags: &'static [&'static str],
    switch_flags: &'static [&'static str],
) -> Result<Flags, Failure> {
    let mut flags =
        Flags { values: BTreeMap::new(), switches: Vec::new(), positional: Vec::new() };
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        if let Some(&flag) = value_flags.iter().find(|&&f| f == arg) {
            let value = iter
                .next()
                .ok_or_else(|| Failure::usage(format!("flag {} needs a value", flag)))?;
            flags.values.insert(flag, value.clone());
        } else if let Some(&flag) = switch_flags.iter().find(|&&f| f == arg) {
            flags.switches.push(flag);
        } else if arg.starts_with('-') {
            return Err(Failure::usage(format!("unknown flag `{}`", arg)));
        } else {
            flags.positional.push(arg.clone());
        }
    }
    Ok(flags)
}

impl Flags {
    fn has(&self, flag: &'static str) -> bool {
        self.switches.contains(&flag)
    }

    fn required(&self, flag: &str) -> Result<&str, Failure> {
        self.values
            .get(flag)
            .map(String::as_str)
            .ok_or_else(|| Failure::usage(format!("flag {} is required", flag)))
    }

    fn parsed<T: std::str::FromStr>(&self, flag: &str, default: T) -> Result<T, Failure> {
        match self.values.get(flag) {
            None => Ok(default),
            Some(raw) => raw
                .parse()
                .map_err(|_| Failure::usage(format!("bad value `{}` for {}", raw, flag))),
        }
    }

    fn one_positional(&self, what: &str) -> Result<&str, Failure> {
        match self.positional.as_slice() {
            [single] => Ok(single),
            [] => Err(Failure::usage(format!("missing {}", what))),
            _ => Err(Failure::usage(format!("expected exactly one {}", what))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Alg {
    Wdm,
    Wsp,
    Dm3,
    Brute,
}

impl Alg {
    fn parse(raw: &str) -> Result<Self, Failure> {
        match raw {
            "wdm" => Ok(Alg::Wdm),
            "wsp" => Ok(Alg::Wsp),
            "dm3" => Ok(Alg::Dm3),
            "brute" => Ok(Alg::Brute),
            _ => Err(Failure::usage(format!(
                "unknown algorithm `{}` (expected wdm, wsp, dm3 or brute)",
                raw
            ))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Alg::Wdm => "wdm",
            Alg::Wsp => "wsp",
            Alg::Dm3 => "dm3",
            Alg::Brute => "brute",
        }
    }

    fn default_for(kind: Kind) -> Self {
        match kind {
            Kind::Wdm => Alg::Wdm,
            Kind::Wsp => Alg::Wsp,
        }
    }
}

fn parse_kind(raw: &str) -> Result<Kind, Failure> {
    match raw {
        "wdm" => Ok(Kind::Wdm),
        "wsp" => Ok(Kind::Wsp),
        _ => Err(Failure::usage(format!("unknown kind `{}` (expected wdm or wsp)", raw))),
    }
}

fn load_instance(path: &str) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {}", path, e)))?;
    let inst =
        parse_instance(&text).map_err(|e| Failure::usage(format!("{}: {}", path, e)))?;
    let violations = validate(&inst);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::usage(format!("{}: invalid instance: {}", path, list.join("; "))));
    }
    Ok(inst)
}

fn check_compat(alg: Alg, inst: &Instance) -> Result<(), Failure> {
    let expect = |kind: Kind| {
        if inst.kind == kind {
            Ok(())
        } else {
            Err(Failure::usage(format!(
                "algorithm {} expects a {} instance, got {}",
                alg.name(),
                kind,
                inst.kind
            )))
        }
    };
    match alg {
        Alg::Brute => Ok(()),
        Alg::Wdm => expect(Kind::Wdm),
        Alg::Wsp => expect(Kind::Wsp),
        Alg::Dm3 => {
            expect(Kind::Wdm)?;
            if inst.q != 3 {
                return Err(Failure::usage(format!("dm3 requires q = 3, got q = {}", inst.q)));
            }
            if !inst.members.is_empty() && inst.uniform_weight().is_none() {
                return Err(Failure::usage(
                    "dm3 handles the unweighted problem; all weights must be equal",
                ));
            }
            // The anchored DP enumerates subsets of a pool of 2(p-1) elements.
            if inst.p > 6 {
                return Err(Failure::usage(format!(
                    "dm3 refuses p = {} (> 6): its search space grows as 4^(p-1); use --alg wdm",
                    inst.p
                )));
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------- commands

fn cmd_solve(args: &[String]) -> CmdResult {
    let flags = scan_flags(args, &["--alg", "--threads", "--budget"], &["--kernel"])?;
    let alg = Alg::parse(flags.required("--alg")?)?;
    let path = flags.one_positional("instance file")?;
    let inst = load_instance(path)?;
    check_compat(alg, &inst)?;
    let threads: usize = flags.parsed("--threads", 1)?;
    let budget: u64 = flags.parsed("--budget", OracleBudget::default().max_combinations)?;
    let pool = ScopedPool::new(threads);

    let reduced: Option<KernelResult> = if flags.has("--kernel") {
        Some(kernelize(&inst).map_err(solve_failure)?)
    } else {
        None
    };
    let target: &Instance = reduced.as_ref().map_or(&inst, |k| &k.kernel);

    let solution = dispatch(alg, target, &pool, budget)?;
    let solution = match (&reduced, solution) {
        (Some(k), Some(sol)) => {
            Some(Solution { picked: k.lift(&sol.picked), total_weight: sol.total_weight })
        }
        (_, sol) => sol,
    };

    match solution {
        None => {
            print!("{}", serialize_solution(None));
            Ok(EXIT_REJECT)
        }
        Some(sol) => {
            verify_solution(&inst, &sol)
                .map_err(|e| Failure::internal(format!("solver returned a bad solution: {}", e)))?;
            print!("{}", serialize_solution(Some(&sol)));
            Ok(EXIT_OK)
        }
    }
}

fn dispatch(
    alg: Alg,
    inst: &Instance,
    pool: &ScopedPool,
    budget: u64,
) -> Result<Option<Solution>, Failure> {
    match alg {
        Alg::Wdm => wdm::solve(inst, pool).map_err(solve_failure),
        Alg::Wsp => wsp::solve(inst, pool).map_err(solve_failure),
        Alg::Dm3 => dm3::solve(inst, pool).map_err(solve_failure),
        Alg::Brute => brute_force_solve(inst, OracleBudget { max_combinations: budget })
            .map_err(|e| Failure::usage(e.to_string())),
    }
}

fn cmd_kernelize(args: &[String]) -> CmdResult {
    let flags = scan_flags(args, &[], &[])?;
    let path = flags.one_positional("instance file")?;
    let inst = load_instance(path)?;
    let result = kernelize(&inst).map_err(solve_failure)?;
    print!("{}", serialize_kernel(&result));
    Ok(EXIT_OK)
}

fn cmd_gen(args: &[String]) -> CmdResult {
    let flags = scan_flags(
        args,
        &[
            "--kind",
            "--q",
            "--p",
            "--sizes",
            "--members",
            "--extra",
            "--weight-lo",
            "--weight-hi",
            "--seed",
            "--out",
        ],
        &["--planted"],
    )?;
    let kind = parse_kind(flags.required("--kind")?)?;
    let q: usize = flags
        .required("--q")?
        .parse()
        .map_err(|_| Failure::usage("bad value for --q"))?;
    let p: usize = flags
        .required("--p")?
        .parse()
        .map_err(|_| Failure::usage("bad value for --p"))?;
    let sizes: Vec<usize> = flags
        .required("--sizes")?
        .split(',')
        .map(|tok| tok.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage("bad value for --sizes (comma-separated integers)"))?;
    let seed: u64 = flags.parsed("--seed", 0)?;
    let weight_lo: i64 = flags.parsed("--weight-lo", -10)?;
    let weight_hi: i64 = flags.parsed("--weight-hi", 10)?;

    let text = if flags.has("--planted") {
        let extra: usize = flags.parsed("--extra", 0)?;
        let (inst, witness) =
            gen_planted(seed, kind, q, p, &sizes, extra, weight_lo, weight_hi)
                .map_err(|e| Failure::usage(e.to_string()))?;
        format!("{}# PLANTED {}\n", serialize_instance(&inst), witness)
    } else {
        let members: usize = flags
            .required("--members")?
            .parse()
            .map_err(|_| Failure::usage("bad value for --members"))?;
        let inst = gen_random(seed, kind, q, p, &sizes, members, weight_lo, weight_hi)
            .map_err(|e| Failure::usage(e.to_string()))?;
        serialize_instance(&inst)
    };

    match flags.values.get("--out") {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {}", path, e)))?,
        None => print!("{}", text),
    }
    Ok(EXIT_OK)
}

fn cmd_bench(args: &[String]) -> CmdResult {
    let flags = scan_flags(args, &["--alg", "--threads", "--budget"], &["--kernel"])?;
    let dir = flags.one_positional("instance directory")?;
    let threads: usize = flags.parsed("--threads", 1)?;
    let budget: u64 = flags.parsed("--budget", OracleBudget::default().max_combinations)?;
    let use_kernel = flags.has("--kernel");
    let forced_alg = match flags.values.get("--alg") {
        Some(raw) => Some(Alg::parse(raw)?),
        None => None,
    };
    let pool = ScopedPool::new(threads);

    let mut names: Vec<String> = fs::read_dir(dir)
        .map_err(|e| Failure::usage(format!("cannot read {}: {}", dir, e)))?
        .filter_map(|entry| entry.ok())
        .filter(|entry| entry.file_type().map(|t| t.is_file()).unwrap_or(false))
        .map(|entry| entry.file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();

    println!("{}", RunReport::TSV_HEADER);
    let mut benched = 0usize;
    let mut peak_cell = 0usize;
    let mut peak_universe = 0usize;
    for name in names {
        let path = format!("{}/{}", dir.trim_end_matches('/'), name);
        let inst = load_instance(&path)?;
        let alg = forced_alg.unwrap_or_else(|| Alg::default_for(inst.kind));
        check_compat(alg, &inst).map_err(|f| Failure { code: f.code, message: format!("{}: {}", name, f.message) })?;
        let report = run_report(alg, &inst, use_kernel, &pool, budget)?;
        println!("{}", report.tsv_row(&name));
        benched += 1;
        peak_cell = peak_cell.max(report.peak_cell);
        peak_universe = peak_universe.max(report.universe);
    }
    eprintln!(
        "# benched {} instance(s); largest universe {}, peak DP cell {}",
        benched, peak_universe, peak_cell
    );
    Ok(EXIT_OK)
}

/// Runs one instance, tracking the largest DP cell and checking every cell
/// against the engine's size bound.
fn run_report(
    alg: Alg,
    inst: &Instance,
    use_kernel: bool,
    pool: &ScopedPool,
    budget: u64,
) -> Result<RunReport, Failure> {
    let start = Instant::now();
    let reduced: Option<KernelResult> = if use_kernel {
        Some(kernelize(inst).map_err(solve_failure)?)
    } else {
        None
    };
    let target: &Instance = reduced.as_ref().map_or(inst, |k| &k.kernel);
    let q = target.q as u64;
    let p = target.p as u64;

    let mut peak_cell = 0usize;
    let mut bound_violation: Option<String> = None;
    let solution = match alg {
        Alg::Brute => brute_force_solve(target, OracleBudget { max_combinations: budget })
            .map_err(|e| Failure::usage(e.to_string()))?,
        Alg::Wdm => wdm::solve_traced(target, pool, &mut |u, i, cell| {
            peak_cell = peak_cell.max(cell.len());
            let bound = binomial((q - 1) * p, (q - 1) * i as u64);
            if cell.len() as u128 > bound {
                bound_violation
                    .get_or_insert(format!("cell (u={}, i={}) has {} entries", u, i, cell.len()));
            }
        })
        .map_err(solve_failure)?,
        Alg::Wsp => wsp::solve_traced(target, pool, &mut |u, i, cell| {
            peak_cell = peak_cell.max(cell.len());
            let i = i as u64;
            let bound = binomial((q - 1) * i + q * (p - i), (q - 1) * i);
            if cell.len() as u128 > bound {
                bound_violation
                    .get_or_insert(format!("cell (u={}, i={}) has {} entries", u, i, cell.len()));
            }
        })
        .map_err(solve_failure)?,
        Alg::Dm3 => dm3::solve_traced(target, &mut |cell| {
            peak_cell = peak_cell.max(cell.cell.len());
            let pc = cell.covered.count_ones() as usize;
            let fits = 2 * cell.i >= pc && cell.r + pc >= 2 * cell.i;
            let bound = if fits {
                binomial(cell.r as u64, (2 * cell.i - pc) as u64)
            } else {
                0 // cells outside their own feasibility bounds stay empty
            };
            if cell.cell.len() as u128 > bound {
                bound_violation.get_or_insert(format!(
                    "cell (t={}, r={}, u={}, i={}) has {} entries",
                    cell.t,
                    cell.r,
                    cell.u,
                    cell.i,
                    cell.cell.len()
                ));
            }
        })
        .map_err(solve_failure)?,
    };
    if let Some(violation) = bound_violation {
        return Err(Failure::internal(format!("DP cell exceeded its size bound: {}", violation)));
    }

    let solution = match (&reduced, solution) {
        (Some(k), Some(sol)) => {
            Some(Solution { picked: k.lift(&sol.picked), total_weight: sol.total_weight })
        }
        (_, sol) => sol,
    };
    if let Some(sol) = &solution {
        verify_solution(inst, sol)
            .map_err(|e| Failure::internal(format!("solver returned a bad solution: {}", e)))?;
    }

    Ok(RunReport {
        algorithm: alg.name(),
        q: target.q,
        p: target.p,
        members: inst.members.len(),
        universe: inst.universe_size(),
        millis: start.elapsed().as_millis(),
        peak_cell,
        result: solution.map(|s| s.total_weight),
    })
}

fn cmd_selftest(args: &[String]) -> CmdResult {
    let flags = scan_flags(args, &[], &["--quick"])?;
    if !flags.positional.is_empty() {
        return Err(Failure::usage("selftest takes no positional arguments"));
    }
    let mut failed = false;
    for outcome in run_suites(flags.has("--quick")) {
        if outcome.passed() {
            println!("{}: PASS ({} cases)", outcome.name, outcome.cases);
        } else {
            failed = true;
            println!(
                "{}: FAIL ({}/{} cases): {}",
                outcome.name,
                outcome.failures,
                outcome.cases,
                outcome.first_failure.as_deref().unwrap_or("unknown")
            );
        }
    }
    if failed {
        Err(Failure::internal("selftest found invariant violations"))
    } else {
        Ok(EXIT_OK)
    }
}
