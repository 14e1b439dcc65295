use std::ops::RangeInclusive;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use belyi_core::passport::{DEFAULT_DEGREE_CAP, LARGE_DEGREE_CAP};
use belyi_core::{EnumerationTask, Mode, Passport};
use belyi_db::{beta, counts_table, max_size_table, read_jsonl, write_jsonl, OrbitRecord, PassportRecord, StatsTable};
use belyi_series::io::{ModelJson, NewtonJson, VerifyJson};
use belyi_series::model::BasisFunction;
use belyi_series::verify::{verify_ramification, Verdict};
use belyi_series::{rr_basis, SeriesError};
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::input::{parse_degrees, read_group_file};
use crate::{Cli, Command, Common, SeriesCommand, Source};

pub const DEFAULT_DIGITS: usize = 50;

/// Exit status for an error: 1 when a computation ran and failed to reach
/// an answer, 2 for usage, input and capacity problems.
pub fn error_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(s) = cause.downcast_ref::<SeriesError>() {
            if matches!(s, SeriesError::Diverged { .. } | SeriesError::Singular | SeriesError::TwoTorsion) {
                return 1;
            }
        }
    }
    2
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(out) = &cli.common.out {
        check_writable(out)?;
    }
    let work = || match &cli.command {
        Command::Enumerate { degree, genus, group_file, allow_large, pointed } => {
            enumerate(&cli.common, degree.as_deref(), *genus, group_file.as_deref(), *allow_large, *pointed)
        }
        Command::Stats { source, orbits } => stats(&cli.common, source, orbits.as_deref()),
        Command::Pointed { source, only_descending } => pointed(&cli.common, source, *only_descending),
        Command::Verify { fixture } => verify(&cli.common, fixture),
        Command::Series(sub) => series(&cli.common, sub),
    };
    match cli.common.jobs {
        Some(0) => bail!("--jobs must be at least 1"),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(work),
        None => work(),
    }
}

fn check_writable(out: &Path) -> Result<()> {
    let parent = out.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    if !parent.is_dir() {
        bail!("output directory {} does not exist", parent.display());
    }
    if out.is_dir() {
        bail!("output path {} is a directory", out.display());
    }
    Ok(())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes pretty JSON through a temporary file and a rename.
fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string_pretty(value)? + "\n")?;
    std::fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn check_degrees(degrees: &RangeInclusive<usize>, allow_large: bool) -> Result<()> {
    for d in degrees.clone() {
        let mut task = EnumerationTask::whole_degree(d);
        task.allow_large = allow_large;
        task.check_degree()?;
    }
    if *degrees.end() > DEFAULT_DEGREE_CAP {
        eprintln!(
            "warning: degree {} enumeration takes hours to days and tens of GB of memory (cap {LARGE_DEGREE_CAP})",
            degrees.end()
        );
    }
    Ok(())
}

fn summary_line(t: &StatsTable, d: usize) -> String {
    if t.degree_total(d) == 0 {
        format!("d={d}: 0 (total 0)")
    } else {
        t.summary_line(d)
    }
}

fn enumerate(
    common: &Common,
    degree: Option<&str>,
    genus: Option<usize>,
    group_file: Option<&Path>,
    allow_large: bool,
    pointed: bool,
) -> Result<ExitCode> {
    let generators = group_file.map(read_group_file).transpose()?;
    let degrees = match (degree, &generators) {
        (Some(s), _) => parse_degrees(s)?,
        (None, Some(g)) => g[0].degree()..=g[0].degree(),
        (None, None) => bail!("give --degree or --group-file"),
    };
    if let Some(g) = &generators {
        if degrees != (g[0].degree()..=g[0].degree()) {
            bail!("the group file has degree {}, not {degree:?}", g[0].degree());
        }
    }
    check_degrees(&degrees, allow_large)?;

    let mut passports: Vec<Passport> = Vec::new();
    for d in degrees.clone() {
        let task = EnumerationTask {
            mode: match &generators {
                Some(g) => Mode::PerGroup { generators: g.clone() },
                None => Mode::WholeDegree,
            },
            genus,
            allow_large,
            ..EnumerationTask::whole_degree(d)
        };
        passports.extend(task.run()?);
    }
    let records: Vec<PassportRecord> = passports
        .iter()
        .map(|p| if pointed { PassportRecord::from_passport_pointed(p) } else { PassportRecord::from_passport(p) })
        .collect();
    if let Some(out) = &common.out {
        write_jsonl(out, &records)?;
    }
    let t = counts_table(&records);
    for d in degrees {
        println!("{}", summary_line(&t, d));
    }
    Ok(ExitCode::SUCCESS)
}

/// Records from the input file, or from enumerating `--degree`.
fn load_records(source: &Source, pointed: bool) -> Result<Vec<PassportRecord>> {
    match (&source.input, &source.degree) {
        (Some(path), None) => Ok(read_jsonl(path)?),
        (None, Some(s)) => {
            let degrees = parse_degrees(s)?;
            check_degrees(&degrees, source.allow_large)?;
            let mut out = Vec::new();
            for d in degrees {
                let task = EnumerationTask { allow_large: source.allow_large, ..EnumerationTask::whole_degree(d) };
                out.extend(task.run()?.iter().map(|p| {
                    if pointed {
                        PassportRecord::from_passport_pointed(p)
                    } else {
                        PassportRecord::from_passport(p)
                    }
                }));
            }
            Ok(out)
        }
        (Some(_), Some(_)) => bail!("give an input file or --degree, not both"),
        (None, None) => bail!("give an input file or --degree"),
    }
}

fn ratio_json(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        q.to_string()
    }
}

fn stats(common: &Common, source: &Source, orbits: Option<&Path>) -> Result<ExitCode> {
    let records = load_records(source, false)?;
    let orbits: Vec<OrbitRecord> = match orbits {
        Some(p) => read_jsonl(p)?,
        None => Vec::new(),
    };
    let table = counts_table(&records);
    let max_sizes = max_size_table(&records);
    println!("passports by degree and genus");
    print!("{}", table.render_counts());
    println!();
    for &d in table.counts.keys() {
        println!("{}", summary_line(&table, d));
    }
    println!();
    println!("largest passport size");
    for (d, m) in &max_sizes {
        println!("d={d}: {m}");
    }
    println!();
    println!("beta (passports of degree at most d)");
    let mut betas = serde_json::Map::new();
    for &d in table.counts.keys() {
        let b = beta(&records, &orbits, d)?;
        println!("d={d}: {b}");
        betas.insert(
            d.to_string(),
            json!({"low": ratio_json(b.low()), "high": ratio_json(b.high()), "exact": b.low() == b.high()}),
        );
    }
    if let Some(out) = &common.out {
        let counts: serde_json::Map<String, serde_json::Value> = table
            .counts
            .iter()
            .map(|(d, m)| (d.to_string(), json!(m.iter().map(|(g, c)| (g.to_string(), json!(c))).collect::<serde_json::Map<_, _>>())))
            .collect();
        let sizes: serde_json::Map<String, serde_json::Value> =
            max_sizes.iter().map(|(d, m)| (d.to_string(), json!(m))).collect();
        write_json(out, &json!({"counts": counts, "max_sizes": sizes, "beta": betas}))?;
    }
    Ok(ExitCode::SUCCESS)
}

/// `descends: yes (s=0, e=5, a=1)` or `descends by pointed criterion: no`.
pub fn descent_line(r: &PassportRecord) -> String {
    match &r.descent_witness {
        Some(w) => format!("descends: yes (s={}, e={}, a={})", w.s, w.e, w.a),
        None => "descends by pointed criterion: no".to_string(),
    }
}

fn pointed(common: &Common, source: &Source, only_descending: bool) -> Result<ExitCode> {
    let mut records = load_records(source, true)?;
    if source.input.is_some() {
        for r in records.iter_mut() {
            r.recompute_pointed()?;
        }
    }
    let mut hits = 0;
    for r in &records {
        if r.descends_guaranteed {
            hits += 1;
        } else if only_descending {
            continue;
        }
        println!("{} size {}: {}", r.key, r.size, descent_line(r));
    }
    println!("{hits} of {} passports descend by the pointed criterion", records.len());
    if let Some(out) = &common.out {
        write_jsonl(out, &records)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(common: &Common, fixture: &Path) -> Result<ExitCode> {
    let input: VerifyJson = read_json(fixture)?;
    let digits = common.digits.or(input.digits).unwrap_or(DEFAULT_DIGITS);
    let map = input.to_map()?;
    let report = verify_ramification(&map, &input.ramification, digits)?;
    println!("{report}");
    if let Some(out) = &common.out {
        let fibres: Vec<_> = report
            .fibres
            .iter()
            .map(|f| json!({"over": f.fibre.to_string(), "expected": f.expected, "found": f.found, "ok": f.ok()}))
            .collect();
        let verdict = match &report.verdict {
            Verdict::Pass => "pass".to_string(),
            Verdict::Fail => "fail".to_string(),
            Verdict::Inconclusive(why) => format!("inconclusive: {why}"),
        };
        write_json(out, &json!({"degree": report.degree, "fibres": fibres, "verdict": verdict}))?;
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn function_text(f: &BasisFunction<BigRational>) -> String {
    let a = &f.function.a;
    let b = &f.function.b;
    match (a.is_zero(), b.is_zero()) {
        (_, true) => format!("{a}"),
        (true, false) => format!("({b})*y"),
        (false, false) => format!("{a} + ({b})*y"),
    }
}

fn series(common: &Common, sub: &SeriesCommand) -> Result<ExitCode> {
    let digits = common.digits.unwrap_or(DEFAULT_DIGITS);
    match sub {
        SeriesCommand::LaurentTail { model, j } => {
            let m = read_json::<ModelJson>(model)?.to_model()?;
            let tail = m.laurent_tail(*j)?;
            println!("P{j} = {tail}");
            if let Some(out) = &common.out {
                write_json(out, &json!({"j": j, "coefficients": tail.to_strings()}))?;
            }
        }
        SeriesCommand::RrBasis { model, pole_order } => {
            let m = read_json::<ModelJson>(model)?.to_model()?;
            let basis = rr_basis(&m, *pole_order)?;
            println!("dimension {}", basis.len());
            for f in &basis {
                println!("pole {}: {}", f.pole_order, function_text(f));
            }
            if let Some(out) = &common.out {
                let rows: Vec<_> = basis
                    .iter()
                    .map(|f| json!({"pole_order": f.pole_order, "a": f.function.a.to_strings(), "b": f.function.b.to_strings()}))
                    .collect();
                write_json(out, &json!({"pole_order": pole_order, "basis": rows}))?;
            }
        }
        SeriesCommand::NewtonRefine { problem, tol } => {
            let p: NewtonJson = read_json(problem)?;
            let target = match tol {
                Some(t) if *t > 0.0 && *t < 1.0 => (-t.log10()).ceil() as usize,
                Some(t) => bail!("--tol must lie strictly between 0 and 1, got {t}"),
                None => digits.saturating_sub(10).max(1),
            };
            if target >= digits {
                bail!("target residual 1e-{target} needs more than {digits} digits of precision");
            }
            let res = p.solve(digits, target)?;
            println!("initial residual 1e{:.2}", res.initial_residual_log10);
            for s in &res.iterations {
                println!("iteration {}: residual 1e{:.2}, step 1e{:.2}", s.iteration, s.residual_log10, s.step_log10);
            }
            println!("converged in {} iterations", res.iterations.len());
            let show = 20.min(digits);
            for (name, [re, im]) in res.variables.iter().zip(&res.values) {
                let (sign, mag) = match im.strip_prefix('-') {
                    Some(m) => ('-', m),
                    None => ('+', im.as_str()),
                };
                println!("{name} = {} {sign} {}i", truncate(re, show), truncate(mag, show));
            }
            if let Some(out) = &common.out {
                write_json(out, &serde_json::to_value(&res)?)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn truncate(s: &str, digits: usize) -> &str {
    let keep = s.char_indices().filter(|(_, c)| c.is_ascii_digit()).nth(digits).map(|(i, _)| i).unwrap_or(s.len());
    if s[keep..].contains(['e', 'E']) {
        s
    } else {
        &s[..keep]
    }
}
