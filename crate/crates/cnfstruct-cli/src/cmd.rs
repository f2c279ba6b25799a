use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{anyhow, Context};
use serde_json::{json, Map, Value};

use cnfstruct::bounds::{self, BoundsFunction, Potprec};
use cnfstruct::classify::Limits;
use cnfstruct::dimacs;
use cnfstruct::enumerate;
use cnfstruct::model::{Clause, ClauseSet, MultiClauseSet};
use cnfstruct::reduce;
use cnfstruct::suites::{Config, Runner, Suite};
use cnfstruct::transform;

use crate::report::{AnalysisReport, InputInfo, ReduceReport, ReductionSummary, SCHEMA_VERSION};
use crate::LimitArgs;

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

pub struct CmdError {
    pub code: u8,
    pub error: anyhow::Error,
}

pub type CmdResult = Result<u8, CmdError>;

fn usage(e: impl Into<anyhow::Error>) -> CmdError {
    CmdError { code: EXIT_USAGE, error: e.into() }
}

fn input(e: impl Into<anyhow::Error>) -> CmdError {
    CmdError { code: EXIT_INPUT, error: e.into() }
}

fn limits(args: &LimitArgs) -> Result<Limits, CmdError> {
    let base = Limits::from_env().context(Limits::ENV).map_err(usage)?;
    match &args.limits {
        Some(spec) => base.with_overrides(spec).context("--limits").map_err(usage),
        None => Ok(base),
    }
}

fn read_input(path: Option<&str>) -> Result<Vec<u8>, CmdError> {
    match path {
        None | Some("-") => {
            let mut buf = vec![];
            std::io::stdin().read_to_end(&mut buf).context("reading standard input").map_err(input)?;
            Ok(buf)
        }
        Some(p) => fs::read(p).with_context(|| format!("reading {p}")).map_err(input),
    }
}

fn parse(raw: &[u8], strict: bool) -> Result<MultiClauseSet, CmdError> {
    dimacs::parse_dimacs(raw, strict).map_err(input)
}

fn emit(text: &str, out: Option<&str>) -> Result<(), CmdError> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {p}")).map_err(input),
        None => {
            std::io::stdout().write_all(text.as_bytes()).context("writing standard output").map_err(input)
        }
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<(), CmdError> {
    let text = serde_json::to_string_pretty(v).map_err(input)?;
    println!("{text}");
    Ok(())
}

pub fn analyze(path: Option<&str>, json: bool, strict: bool, limit_args: &LimitArgs) -> CmdResult {
    let limits = limits(limit_args)?;
    let raw = read_input(path)?;
    let f = parse(&raw, strict)?;
    let report = AnalysisReport::new(&raw, &f, &limits);
    if json {
        print_json(&report)?;
    } else {
        print!("{}", report.plain());
    }
    Ok(0)
}

pub struct ReduceOpts {
    pub witnesses: bool,
    pub witness_limit: Option<usize>,
    pub out: Option<String>,
    pub json: bool,
    pub strict: bool,
}

pub fn reduce(path: Option<&str>, opts: ReduceOpts, limit_args: &LimitArgs) -> CmdResult {
    let limits = limits(limit_args)?;
    let raw = read_input(path)?;
    let f = parse(&raw, opts.strict)?;
    let witness_limit = opts.witness_limit.unwrap_or(limits.witness);
    let trace = reduce::autarky_reduce(&f, opts.witnesses, witness_limit);
    let text = dimacs::write_dimacs(&trace.result);
    if opts.json {
        if let Some(p) = &opts.out {
            emit(&text, Some(p))?;
        }
        print_json(&ReduceReport {
            schema_version: SCHEMA_VERSION,
            input: InputInfo::of(&raw),
            limits,
            summary: ReductionSummary::of(&trace),
            trace: &trace,
            result_dimacs: text,
        })?;
    } else {
        emit(&text, opts.out.as_deref())?;
        let mut err = std::io::stderr().lock();
        for (i, step) in trace.steps.iter().enumerate() {
            let line = match step {
                reduce::ReductionStep::Collapse { removed } => format!("collapse: {removed} repeated occurrences removed"),
                reduce::ReductionStep::Bottom { removed } => format!("bottom: empty clause present, {removed} clauses removed"),
                reduce::ReductionStep::Kernel { autarkies, removed } => {
                    format!("kernel: {} matching autarkies, {removed} clauses removed", autarkies.len())
                }
                reduce::ReductionStep::Surplus { vars, removed, witness } => format!(
                    "surplus: V = {{{}}}, {removed} clauses removed{}",
                    vars.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                    witness.as_ref().map_or(String::new(), |w| format!(", witness {w}"))
                ),
            };
            let _ = writeln!(err, "step {i}: {line}");
        }
        let _ = writeln!(err, "result: n={} c={}; limits {limits}", trace.result.n(), trace.result.c());
    }
    Ok(0)
}

fn parse_range(s: &str) -> anyhow::Result<(u64, u64)> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| anyhow!("bad number `{t}` in range `{s}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a == 0 || a > b {
        return Err(anyhow!("range `{s}` must satisfy 1 <= start <= end"));
    }
    if b - a >= 1_000_000 {
        return Err(anyhow!("range `{s}` has more than 10^6 rows"));
    }
    Ok((a, b))
}

pub fn bounds(range: &str, seqs: &[String], prefix: Option<&str>, json: bool) -> CmdResult {
    let (lo, hi) = parse_range(range).map_err(usage)?;
    let known = ["nm", "nm1", "i", "iprime", "h", "na", "s2", "jumps"];
    if let Some(bad) = seqs.iter().find(|s| !known.contains(&s.as_str())) {
        return Err(usage(anyhow!("unknown sequence `{bad}` (one of {})", known.join(", "))));
    }
    let mut potprec = match prefix {
        Some(p) => {
            let values = p
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| anyhow!("bad prefix entry `{t}`")))
                .collect::<anyhow::Result<Vec<_>>>()
                .map_err(usage)?;
            Some(Potprec::new(BoundsFunction::new(values).map_err(usage)?))
        }
        None => None,
    };
    let mut columns: Vec<String> = seqs.to_vec();
    if potprec.is_some() {
        columns.push("potprec".into());
    }
    let mut rows = vec![];
    for k in lo..=hi {
        let mut row = vec![k];
        for s in seqs {
            let v = match s.as_str() {
                "nm" => bounds::nm(k),
                "nm1" => bounds::nm1(k),
                "i" => bounds::nm_i(k),
                "iprime" => bounds::nm_iprime(k),
                "h" => bounds::nm_h(k),
                "na" => bounds::n_a(k),
                "s2" => bounds::s2(k),
                _ => Ok(bounds::is_jump(k) as u64),
            };
            row.push(v.with_context(|| format!("{s}({k})")).map_err(usage)?);
        }
        if let Some(p) = potprec.as_mut() {
            row.push(p.eval(k).with_context(|| format!("potprec({k})")).map_err(usage)?);
        }
        rows.push(row);
    }
    if json {
        let objs: Vec<Value> = rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                m.insert("k".into(), json!(row[0]));
                for (c, v) in columns.iter().zip(&row[1..]) {
                    m.insert(c.clone(), json!(v));
                }
                Value::Object(m)
            })
            .collect();
        print_json(&json!({ "schema_version": SCHEMA_VERSION, "columns": columns, "rows": objs }))?;
    } else {
        let mut out = format!("k\t{}\n", columns.join("\t"));
        for row in rows {
            out.push_str(&row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\t"));
            out.push('\n');
        }
        emit(&out, None)?;
    }
    Ok(0)
}

pub struct GenOpts {
    pub delta: Option<u64>,
    pub vars: Option<u64>,
    pub degree: Option<u64>,
}

fn small(v: u64, what: &str) -> anyhow::Result<u32> {
    u32::try_from(v).map_err(|_| anyhow!("{what} = {v} is too large"))
}

fn build(family: &str, params: &[u64], o: &GenOpts) -> anyhow::Result<ClauseSet> {
    let arg = |i: usize, named: Option<u64>, what: &str| -> anyhow::Result<u64> {
        named.or_else(|| params.get(i).copied()).ok_or_else(|| anyhow!("{family} needs {what}"))
    };
    let n = |what| -> anyhow::Result<u32> { small(arg(0, o.vars, what)?, what) };
    Ok(match family.to_ascii_lowercase().as_str() {
        "a" => transform::gen_a(n("the number of variables")?)?,
        "dt" => transform::gen_dt(n("the number of variables")?)?,
        "m" => transform::gen_m(n("the number of variables")?)?,
        "f3" => transform::gen_f3(),
        "f4" => transform::gen_f4(),
        "def6" => transform::gen_def6_witness(),
        "uclash" => {
            let k = arg(0, o.delta, "--delta")?;
            let vars = match o.vars.or_else(|| params.get(1).copied()) {
                Some(v) => small(v, "--vars")?,
                None => small(bounds::n_a(k)?, "nA(k)")?,
            };
            transform::gen_uclash(k, vars)?
        }
        "vmu-sharp" => transform::gen_vmu_sharp(arg(0, o.delta, "the deficiency")?)?,
        "mlean-highdeg" => {
            let k = arg(0, o.delta, "--delta")?;
            let degree = o.degree.or_else(|| params.get(1).copied()).unwrap_or(1);
            transform::gen_mlean_highdeg(k, small(degree, "--degree")?)?
        }
        "fsue-chain" => {
            let len = small(arg(0, None, "the chain length")?, "length")?;
            if len > 20 {
                return Err(anyhow!("chain length {len} exceeds 20"));
            }
            transform::fsue_chain(&ClauseSet::new([Clause::bottom()]), len)?
        }
        _ => return Err(anyhow!("unknown family `{family}`")),
    })
}

pub fn generate(family: &str, params: &[u64], opts: GenOpts, out: Option<&str>) -> CmdResult {
    let f = build(family, params, &opts).map_err(usage)?;
    emit(&dimacs::write_dimacs(&f.to_multi()), out)?;
    Ok(0)
}

pub fn enumerate(n: u32, cap: Option<usize>, out_dir: &str, json: bool, limit_args: &LimitArgs) -> CmdResult {
    let limits = limits(limit_args)?;
    let cat = enumerate::enum_uclash_limited(n, cap, limits.n as u32).map_err(usage)?;
    let (cnfs, meta) = enumerate::write_catalog(&cat, Path::new(out_dir)).map_err(input)?;
    let oracle = if n <= 3 && !cat.partial {
        Some(enumerate::enum_uclash_backtrack(n).map_err(usage)?.len())
    } else {
        None
    };
    let violations = enumerate::check_catalog(&cat);
    let agree = oracle.is_none_or(|o| o == cat.entries.len());
    if json {
        print_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "n": n,
            "classes": cat.entries.len(),
            "partial": cat.partial,
            "oracle_classes": oracle,
            "violations": violations,
            "files": [cnfs, meta],
            "limits": limits,
        }))?;
    } else {
        println!("n: {n}");
        println!("classes: {}", cat.entries.len());
        println!("partial: {}", cat.partial);
        if let Some(o) = oracle {
            println!("oracle: {o} ({})", if agree { "agree" } else { "DISAGREE" });
        }
        println!("violations: {}", violations.len());
        for v in &violations {
            println!("  {} {}", v.id, v.invariant);
        }
        println!("files: {} {}", cnfs.display(), meta.display());
        println!("limits: {limits}");
    }
    Ok(if agree && violations.is_empty() { 0 } else { EXIT_VERIFY })
}

pub fn verify(suite: &str, seed: u64, fuzz_count: usize, json: bool, limit_args: &LimitArgs) -> CmdResult {
    let limits = limits(limit_args)?;
    let suite: Suite = suite.parse().map_err(usage)?;
    let mut runner = Runner::new(Config { seed, limits, fuzz_count, ..Config::default() });
    let checks = runner.run_suite(suite);
    let passed = checks.iter().all(|c| c.passed);
    if json {
        print_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "suite": suite,
            "seed": seed,
            "limits": limits,
            "passed": passed,
            "checks": checks,
            "failures": checks.iter().filter(|c| !c.passed).map(|c| c.id).collect::<Vec<_>>(),
        }))?;
    } else {
        println!("limits: {limits}; seed: {seed}");
        for c in &checks {
            println!("{c}");
        }
        println!("{} of {} checks passed", checks.iter().filter(|c| c.passed).count(), checks.len());
    }
    Ok(if passed { 0 } else { EXIT_VERIFY })
}
