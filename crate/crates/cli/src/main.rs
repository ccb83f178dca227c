//! `univalence`: command-line front end.

mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;
use univalence::bounds::{
    self, check_lower_bound, solve_threshold, BoundStatus, BoundsError, Mode, PiMultiple,
};
use univalence::certificate::factor::{format_factorization, trial_factor, TRIAL_LIMIT};
use univalence::certificate::{
    find_certificate, scan_upper_bound, verify_certificate, Certificate, CertificateError,
    ExactValue,
};
use univalence::format_rational;
use univalence::grunsky::{psd_check, GrunskyMatrix};
use univalence::ratseries::{f_a_series, log_f_a_over_z_series, q_a_series};

use output::{Format, Report};

/// Exit statuses.
const EXIT_OK: u8 = 0;
const EXIT_INTERNAL: u8 = 1;
const EXIT_NO_EVIDENCE: u8 = 2;
const EXIT_INDETERMINATE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "univalence",
    version,
    about = "Exact Grunsky certificates and interval-certified univalence bounds"
)]
struct Cli {
    /// Working precision in bits for interval computations.
    #[arg(long, global = true, env = "UNIVALENCE_PRECISION", default_value_t = bounds::DEFAULT_PRECISION,
          value_parser = clap::value_parser!(u32).range(64..=4096))]
    precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Family {
    /// Parameter of F_a as p/q.
    #[arg(long, value_parser = parse::rational, allow_hyphen_values = true)]
    a: BigRational,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    order: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Function {
    /// z F_a'/F_a = exp(2a arctan z)
    Qa,
    Fa,
    /// log(F_a(z)/z)
    Logfa,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact power-series coefficients.
    Coeffs {
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum)]
        function: Function,
    },
    /// Export the Grunsky matrix G(n) of F_a.
    Grunsky {
        #[command(flatten)]
        family: Family,
    },
    /// Exact positive semi-definiteness test of G(n).
    Psd {
        #[command(flatten)]
        family: Family,
    },
    /// Search for a rational vector v with v G(n) v^T < 0.
    Certify {
        #[command(flatten)]
        family: Family,
        /// Initial continued-fraction denominator bound (doubled up to 4096).
        #[arg(long, default_value_t = univalence::certificate::START_DENOMINATOR)]
        max_denominator: u64,
        /// Record the current time in the certificate.
        #[arg(long)]
        timestamp: bool,
    },
    /// Re-verify a certificate file from scratch.
    Verify {
        /// Certificate JSON; the bundled a = 5/7, n = 18 vector if omitted.
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Extra factor to test against the numerator (repeatable).
        #[arg(long = "divisor")]
        divisors: Vec<BigInt>,
    },
    /// Check (2 delta/pi) Phi(c) <= 1 through H(x1, c) for delta = q pi.
    Bounds {
        #[arg(long, value_parser = str::parse::<Mode>)]
        mode: Mode,
        /// q in delta = q pi.
        #[arg(long, value_parser = parse::rational)]
        delta: BigRational,
        /// Chosen automatically when omitted.
        #[arg(long, value_parser = parse::rational)]
        x1: Option<BigRational>,
    },
    /// Bracket the root of (2 delta/pi) Phi(c(delta)) = 1.
    Solve {
        #[arg(long, value_parser = str::parse::<Mode>)]
        mode: Mode,
        #[arg(long, value_parser = parse::positive_decimal, default_value = "1e-5")]
        tol: BigRational,
    },
    /// Smallest certifying order for each a of a grid.
    Scan {
        /// Comma-separated list, e.g. 5/7,1.
        #[arg(long, value_parser = parse::grid, conflicts_with = "range", required_unless_present = "range")]
        grid: Option<parse::Grid>,
        /// start:stop:step, stop included.
        #[arg(long, value_parser = parse::range)]
        range: Option<parse::Grid>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        max_order: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // keep 2 free for "no evidence"
            return ExitCode::from(if e.use_stderr() {
                EXIT_INTERNAL
            } else {
                EXIT_OK
            });
        }
    };
    match run(&cli) {
        Ok((report, code)) => match report.write(cli.format, cli.out.as_deref()) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(EXIT_INTERNAL)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn run(cli: &Cli) -> Result<(Report, u8)> {
    match &cli.command {
        Command::Coeffs { family, function } => coeffs(family, *function),
        Command::Grunsky { family } => grunsky(family),
        Command::Psd { family } => psd(family),
        Command::Certify {
            family,
            max_denominator,
            timestamp,
        } => certify(family, *max_denominator, *timestamp),
        Command::Verify { fixture, divisors } => verify(fixture.as_ref(), divisors),
        Command::Bounds { mode, delta, x1 } => bound(*mode, delta, x1.as_ref(), cli.precision),
        Command::Solve { mode, tol } => solve(*mode, tol, cli.precision),
        Command::Scan {
            grid,
            range,
            max_order,
        } => {
            let a_values = grid.as_ref().or(range.as_ref()).expect("clap enforces one");
            scan(&a_values.0, *max_order as usize, cli.precision)
        }
    }
}

fn coeffs(family: &Family, function: Function) -> Result<(Report, u8)> {
    let order = family.order as usize;
    let (name, series) = match function {
        Function::Qa => ("qa", q_a_series(&family.a, order)),
        Function::Fa => ("fa", f_a_series(&family.a, order)),
        Function::Logfa => ("logfa", log_f_a_over_z_series(&family.a, order)),
    };
    let coefficients = strings(series.coeffs());
    let a = format_rational(&family.a);
    let rows = coefficients
        .iter()
        .enumerate()
        .map(|(n, c)| vec![name.to_string(), a.clone(), n.to_string(), c.clone()])
        .collect();
    let body = json!({ "function": name, "a": a, "order": order, "coefficients": coefficients });
    let report = Report::new(&body)?.table(vec!["function", "a", "n", "coefficient"], rows);
    Ok((report, EXIT_OK))
}

fn matrix(family: &Family) -> Result<GrunskyMatrix> {
    GrunskyMatrix::for_f_a(&family.a, family.order as usize).context("building G(n)")
}

fn grunsky(family: &Family) -> Result<(Report, u8)> {
    let g = matrix(family)?;
    let mut rows = Vec::new();
    for (j, row) in g.entries.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            rows.push(vec![
                (j + 1).to_string(),
                (k + 1).to_string(),
                format_rational(x),
            ]);
        }
    }
    Ok((
        Report::new(&g)?.table(vec!["j", "k", "entry"], rows),
        EXIT_OK,
    ))
}

fn psd(family: &Family) -> Result<(Report, u8)> {
    let g = matrix(family)?;
    let report = psd_check(&g)?;
    let mut body = serde_json::to_value(&report)?;
    body["a"] = format_rational(&family.a).into();
    body["order"] = family.order.into();
    let row = vec![
        format_rational(&family.a),
        family.order.to_string(),
        serde_json::to_value(report.verdict)?
            .as_str()
            .unwrap_or_default()
            .to_string(),
        report
            .witness_value
            .as_ref()
            .map(format_rational)
            .unwrap_or_default(),
        report
            .witness
            .as_deref()
            .map(|w| strings(w).join(";"))
            .unwrap_or_default(),
    ];
    let table = vec!["a", "order", "verdict", "witness_value", "witness"];
    Ok((Report::new(&body)?.table(table, vec![row]), EXIT_OK))
}

fn certificate_row(cert: &Certificate) -> Vec<String> {
    vec![
        format_rational(&cert.a),
        cert.order.to_string(),
        cert.verified.to_string(),
        cert.value.as_ref().map(format_rational).unwrap_or_default(),
        strings(&cert.vector).join(";"),
    ]
}

const CERTIFICATE_COLUMNS: [&str; 5] = ["a", "order", "verified", "value", "vector"];

fn certify(family: &Family, max_denominator: u64, timestamp: bool) -> Result<(Report, u8)> {
    match find_certificate(&family.a, family.order as usize, max_denominator) {
        Ok(mut cert) => {
            if timestamp {
                cert.timestamp = Some(SystemTime::now().duration_since(UNIX_EPOCH)?.as_secs());
            }
            let row = certificate_row(&cert);
            let report = Report::new(&cert)?.table(CERTIFICATE_COLUMNS.to_vec(), vec![row]);
            Ok((report, EXIT_OK))
        }
        Err(
            e @ (CertificateError::NoNegativeDirection { .. }
            | CertificateError::VerificationFailed { .. }),
        ) => {
            eprintln!("no certificate: {e}");
            let body = json!({
                "a": format_rational(&family.a),
                "order": family.order,
                "verified": false,
                "reason": e.to_string(),
            });
            let row = vec![
                format_rational(&family.a),
                family.order.to_string(),
                "false".into(),
                String::new(),
                String::new(),
            ];
            let report = Report::new(&body)?.table(CERTIFICATE_COLUMNS.to_vec(), vec![row]);
            Ok((report, EXIT_NO_EVIDENCE))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct DivisorCheck {
    divisor: String,
    divides: bool,
}

fn verify(fixture: Option<&PathBuf>, divisors: &[BigInt]) -> Result<(Report, u8)> {
    let cert = match fixture {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            Certificate::from_json(&text)
                .with_context(|| format!("malformed certificate {}", path.display()))?
        }
        None => Certificate::bundled(),
    };
    let check = verify_certificate(&cert);
    let mut body = json!({
        "a": format_rational(&cert.a),
        "order": cert.order,
        "valid": check.valid,
        "value": check.value.as_ref().map(ExactValue::from_rational),
        "diagnostic": check.diagnostic,
    });
    let mut den_text = String::new();
    if let Some(value) = &check.value {
        let den = trial_factor(value.denom(), TRIAL_LIMIT);
        let num = trial_factor(value.numer(), TRIAL_LIMIT);
        den_text = format_factorization(&den);
        body["denominator_factorization"] = den_text.clone().into();
        body["numerator_factorization"] = format_factorization(&num).into();
        let mut rest = num.cofactor.clone();
        let mut checks = Vec::new();
        for d in divisors {
            let divides = !d.is_zero() && (&rest % d).is_zero();
            if divides {
                rest /= d;
            }
            checks.push(DivisorCheck {
                divisor: d.to_string(),
                divides,
            });
        }
        if !divisors.is_empty() {
            body["divisors"] = serde_json::to_value(checks)?;
            body["remaining_cofactor"] = rest.to_string().into();
        }
    }
    let row = vec![
        format_rational(&cert.a),
        cert.order.to_string(),
        check.valid.to_string(),
        check
            .value
            .as_ref()
            .map(format_rational)
            .unwrap_or_default(),
        den_text,
    ];
    let report = Report::new(&body)?.table(
        vec!["a", "order", "valid", "value", "denominator_factorization"],
        vec![row],
    );
    if !check.valid {
        eprintln!(
            "certificate rejected: {}",
            check.diagnostic.unwrap_or_default()
        );
    }
    Ok((
        report,
        if check.valid {
            EXIT_OK
        } else {
            EXIT_NO_EVIDENCE
        },
    ))
}

fn bound(
    mode: Mode,
    delta: &BigRational,
    x1: Option<&BigRational>,
    bits: u32,
) -> Result<(Report, u8)> {
    let rep = check_lower_bound(delta, mode, x1, bits)?;
    let code = match rep.status {
        BoundStatus::Certified => EXIT_OK,
        BoundStatus::Refuted => EXIT_NO_EVIDENCE,
        BoundStatus::Indeterminate => EXIT_INDETERMINATE,
    };
    let (m_lo, m_hi) = rep.lemma_margin.to_decimal_pair(20);
    let (t_lo, t_hi) = rep.threshold.to_decimal_pair(20);
    let row = vec![
        rep.mode.to_string(),
        rep.delta.to_string(),
        format_rational(&rep.x1),
        m_lo,
        m_hi,
        t_lo,
        t_hi,
        rep.certified.to_string(),
        serde_json::to_value(rep.status)?
            .as_str()
            .unwrap_or_default()
            .to_string(),
        rep.precision_bits.to_string(),
    ];
    let table = vec![
        "mode",
        "delta",
        "x1",
        "lemma_margin_lo",
        "lemma_margin_hi",
        "threshold_lo",
        "threshold_hi",
        "certified",
        "status",
        "precision_bits",
    ];
    Ok((Report::new(&rep)?.table(table, vec![row]), code))
}

fn solve(mode: Mode, tol: &BigRational, bits: u32) -> Result<(Report, u8)> {
    let table = vec!["mode", "lo", "hi", "iterations", "precision_bits", "status"];
    match solve_threshold(mode, tol, bits) {
        Ok(b) => {
            let (lo, hi) = b.bracket.to_decimal_pair(20);
            let row = vec![
                mode.to_string(),
                lo,
                hi,
                b.iterations.to_string(),
                b.precision_bits.to_string(),
                "bracketed".into(),
            ];
            Ok((Report::new(&b)?.table(table, vec![row]), EXIT_OK))
        }
        Err(BoundsError::Indeterminate { bits, bracket }) => {
            eprintln!("precision exhausted at {bits} bits");
            let (lo, hi) = bracket.to_decimal_pair(20);
            let body = json!({ "mode": mode, "bracket": bracket, "precision_bits": bits, "status": "indeterminate" });
            let row = vec![
                mode.to_string(),
                lo,
                hi,
                String::new(),
                bits.to_string(),
                "indeterminate".into(),
            ];
            Ok((
                Report::new(&body)?.table(table, vec![row]),
                EXIT_INDETERMINATE,
            ))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct ScanLine {
    a: String,
    order: Option<usize>,
    /// Implied bound delta_0 <= pi a when a certificate exists.
    upper_bound: Option<String>,
    upper_bound_decimal: Option<(String, String)>,
    note: Option<String>,
}

fn scan(a_values: &[BigRational], max_order: usize, bits: u32) -> Result<(Report, u8)> {
    let rows = scan_upper_bound(a_values, max_order);
    let lines: Vec<ScanLine> = rows
        .iter()
        .map(|row| {
            let certified = row.order.is_some();
            let bound = certified.then(|| PiMultiple(row.a.clone()));
            ScanLine {
                a: format_rational(&row.a),
                order: row.order,
                upper_bound_decimal: bound.as_ref().map(|b| b.enclose(bits).to_decimal_pair(12)),
                upper_bound: bound.map(|b| b.to_string()),
                note: row.note.clone(),
            }
        })
        .collect();
    let table_rows = lines
        .iter()
        .map(|l| {
            vec![
                l.a.clone(),
                l.order
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "none".into()),
                l.upper_bound.clone().unwrap_or_default(),
                l.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let body = json!({ "max_order": max_order, "rows": lines });
    let report = Report::new(&body)?.table(vec!["a", "order", "upper_bound", "note"], table_rows);
    Ok((report, EXIT_OK))
}
