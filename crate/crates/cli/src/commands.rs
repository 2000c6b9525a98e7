use std::fmt::Write as _;

use permstack::dynamics::{self, build_sort_table, fertility_max, image_size, inverse_sort, orbit_partition};
use permstack::machine::{self, sort_with_trace, t_clumping};
use permstack::perm::MAX_ENUM_N;
use permstack::verify::{parse_suites, run_suite};
use permstack::{Error, PatternSet, Perm, Word};
use serde_json::json;

use crate::Format;

pub const DEFAULT_CAP: usize = 8;
pub const CAP_ENV: &str = "PERMSTACK_MAX_N";

/// A non-zero exit: code, message for stderr, and anything already produced
/// for stdout.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub stdout: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), stdout: String::new() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PatternTooShort(_) | Error::EmptyPatternSet | Error::NotBijective(_) => 3,
            Error::SizeCap { .. } | Error::CatalanOverflow(_) => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

type Out = Result<String, Failure>;

/// The largest `n` an exhaustive command accepts.
pub fn size_cap() -> Result<usize, Failure> {
    match std::env::var(CAP_ENV) {
        Err(_) => Ok(DEFAULT_CAP),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap <= MAX_ENUM_N => Ok(cap),
            Ok(cap) => Err(Failure::new(2, format!("{CAP_ENV}={cap} is above the hard limit of {MAX_ENUM_N}"))),
            Err(_) => Err(Failure::new(2, format!("{CAP_ENV}={v:?} is not a number"))),
        },
    }
}

fn within_cap(n: usize, cap: usize) -> Result<(), Failure> {
    if n > cap {
        return Err(Failure::new(
            4,
            format!("n = {n} exceeds the size cap of {cap} (set {CAP_ENV} to raise it, at most {MAX_ENUM_N})"),
        ));
    }
    Ok(())
}

fn patterns(s: &str) -> Result<PatternSet, Failure> {
    s.parse::<PatternSet>().map_err(Failure::from)
}

fn word(s: &str) -> Result<Word, Failure> {
    s.parse::<Word>().map_err(Failure::from)
}

fn perm(s: &str) -> Result<Perm, Failure> {
    s.parse::<Perm>().map_err(Failure::from)
}

fn no_csv(fmt: Format, command: &str) -> Result<(), Failure> {
    if fmt == Format::Csv {
        return Err(Failure::new(2, format!("--format csv is only supported by table, not {command}")));
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn joined(perms: &[Perm], sep: &str) -> String {
    perms.iter().map(Perm::to_string).collect::<Vec<_>>().join(sep)
}

pub fn sort(t: &str, p: &str, trace: bool, fmt: Format) -> Out {
    no_csv(fmt, "sort")?;
    let (t, w) = (patterns(t)?, word(p)?);
    if trace {
        let (_, _, trace) = sort_with_trace(&w, &t);
        return Ok(trace.to_json_lines());
    }
    match fmt {
        Format::Json => {
            let (out, moves, _) = sort_with_trace(&w, &t);
            Ok(pretty(&json!({
                "patterns": t.to_string(),
                "input": w,
                "output": out,
                "movement_sequence": moves.to_string(),
            })))
        }
        _ => Ok(format!("{}\n", machine::sort(&w, &t))),
    }
}

pub fn table(max_n: usize, fmt: Format, cap: usize) -> Out {
    within_cap(max_n, cap)?;
    let table = build_sort_table(max_n)?;
    Ok(match fmt {
        Format::Text => table.to_text(),
        Format::Csv => {
            for row in &table.rows {
                if let Some(note) = &row.note {
                    eprintln!("warning: ({},{}): {note}", row.sigma, row.tau);
                }
            }
            table.to_csv()
        }
        Format::Json => pretty(&table),
    })
}

pub fn preimages(t: &str, p: &str, fmt: Format, cap: usize) -> Out {
    no_csv(fmt, "preimages")?;
    let (t, gamma) = (patterns(t)?, perm(p)?);
    within_cap(gamma.len(), cap)?;
    let found = dynamics::preimages(&gamma, &t)?;
    Ok(match fmt {
        Format::Json => pretty(&json!({
            "patterns": t.to_string(),
            "target": gamma,
            "count": found.len(),
            "preimages": found,
        })),
        _ => found.iter().map(|q| format!("{q}\n")).collect(),
    })
}

pub fn fertility(t: &str, n: usize, fmt: Format, cap: usize) -> Out {
    no_csv(fmt, "fertility")?;
    let t = patterns(t)?;
    within_cap(n, cap)?;
    let report = fertility_max(&t, n)?;
    Ok(match fmt {
        Format::Json => pretty(&report),
        _ => {
            let mut out = String::new();
            writeln!(out, "max preimages: {}", report.max_count).unwrap();
            writeln!(out, "bound: {}", report.bound).unwrap();
            writeln!(out, "witnesses ({}):", report.witnesses.len()).unwrap();
            for w in &report.witnesses {
                writeln!(out, "  {w}").unwrap();
            }
            out
        }
    })
}

pub fn orbit(t: &str, p: &str, fmt: Format, cap: usize) -> Out {
    no_csv(fmt, "orbit")?;
    let (t, p) = (patterns(t)?, perm(p)?);
    within_cap(p.len(), cap)?;
    let report = dynamics::orbit(&p, &t)?;
    Ok(match fmt {
        Format::Json => pretty(&report),
        _ => {
            let mut out = String::new();
            writeln!(out, "start: {}", report.start).unwrap();
            if report.tail.is_empty() {
                writeln!(out, "tail: none").unwrap();
            } else {
                writeln!(out, "tail: {}", joined(&report.tail, " -> ")).unwrap();
            }
            writeln!(out, "cycle: {}", joined(&report.cycle, " -> ")).unwrap();
            writeln!(out, "cycle length: {}", report.cycle_length).unwrap();
            out
        }
    })
}

pub fn periodic(t: &str, n: usize, fmt: Format, cap: usize) -> Out {
    no_csv(fmt, "periodic")?;
    let t = patterns(t)?;
    within_cap(n, cap)?;
    let cycles = orbit_partition(&t, n)?;
    let points: usize = cycles.iter().map(Vec::len).sum();
    Ok(match fmt {
        Format::Json => pretty(&json!({
            "patterns": t.to_string(),
            "n": n,
            "periodic_points": points,
            "cycles": cycles,
        })),
        _ => {
            let mut out = format!("{points} periodic points in {} cycles\n", cycles.len());
            for c in &cycles {
                writeln!(out, "  {}", joined(c, " -> ")).unwrap();
            }
            out
        }
    })
}

pub fn image(t: &str, n: usize, fmt: Format, cap: usize) -> Out {
    no_csv(fmt, "image")?;
    let t = patterns(t)?;
    within_cap(n, cap)?;
    let size = image_size(&t, n)?;
    Ok(match fmt {
        Format::Json => pretty(&json!({ "patterns": t.to_string(), "n": n, "image_size": size })),
        _ => format!("{size}\n"),
    })
}

pub fn verify(suites: &str, max_n: usize, fmt: Format, cap: usize) -> Out {
    no_csv(fmt, "verify")?;
    within_cap(max_n, cap)?;
    let suites = parse_suites(suites)?;
    let mut reports = Vec::new();
    for s in suites {
        reports.push(run_suite(s, max_n)?);
    }
    let out = match fmt {
        Format::Json => pretty(&reports),
        _ => {
            let mut out = String::new();
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {} (n <= {})", r.suite, r.max_n).unwrap();
                for line in &r.lines {
                    writeln!(out, "  {line}").unwrap();
                }
                if let Some(f) = &r.failure {
                    writeln!(out, "  failed: {f}").unwrap();
                }
            }
            out
        }
    };
    match reports.iter().find(|r| !r.passed) {
        None => Ok(out),
        Some(r) => Err(Failure {
            code: 1,
            message: format!("{}: {}", r.suite, r.failure.as_deref().unwrap_or("failed")),
            stdout: out,
        }),
    }
}

pub fn clump(t: &str, p: &str, fmt: Format) -> Out {
    no_csv(fmt, "clump")?;
    let (t, w) = (patterns(t)?, word(p)?);
    let clumping = t_clumping(&w, &t);
    Ok(match fmt {
        Format::Json => pretty(&clumping),
        _ => match clumping {
            None => "none\n".to_string(),
            Some(c) => {
                let parts: Vec<String> = c.segments.iter().map(Word::to_string).collect();
                format!("{}\n", parts.join("|"))
            }
        },
    })
}

pub fn inverse(t: &str, p: &str, fmt: Format) -> Out {
    no_csv(fmt, "inverse")?;
    let (t, p) = (patterns(t)?, perm(p)?);
    let q = inverse_sort(&p, &t)?;
    Ok(match fmt {
        Format::Json => pretty(&json!({ "patterns": t.to_string(), "input": p, "inverse": q })),
        _ => format!("{q}\n"),
    })
}
