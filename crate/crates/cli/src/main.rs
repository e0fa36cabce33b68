//! `fusionchar`: characters, Kostka polynomials, coinvariants, bases and
//! oracle cross-checks from the command line.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on bad
//! input.

use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use fusionchar_core::characters::{char_fermionic, char_recursive, supernomial};
use fusionchar_core::coinvariants::{
    coinv_character, coinv_character_alternating, coinv_character_w3, restrict_character,
};
use fusionchar_core::kostka::{check_alternating_sum, restricted_kostka, unrestricted_kostka};
use fusionchar_core::oracle::coinv::{coinv_quotient_character_with, symmetric_spec};
use fusionchar_core::oracle::{fusion_gr_character, hilbert_character_with, OracleOptions};
use fusionchar_core::verify::{run_suites, Suite, SuiteStatus, SweepBounds};
use fusionchar_core::{build_basis, verify_basis, Error, FusionSpec, IdentityReport, MPoly, Partition};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "fusionchar", version, about = "Graded characters of sl_n fusion products")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Character of the fusion product for a spec.
    Char {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = CharMethod::Fermionic)]
        method: CharMethod,
    },
    /// Restricted or unrestricted sl_2 Kostka polynomials.
    Kostka {
        #[arg(long)]
        level: Option<u32>,
        #[arg(long = "l")]
        label: Option<u32>,
        #[arg(long)]
        mu: String,
        #[arg(long, conflicts_with = "unrestricted")]
        restricted: bool,
        /// `K_{j,mu}` for this `j`.
        #[arg(long, value_name = "J")]
        unrestricted: Option<u32>,
        /// Compare the restricted polynomial with its alternating-sum form.
        #[arg(long, conflicts_with = "unrestricted")]
        check_alternating: bool,
    },
    /// q-supernomial coefficient.
    Supernomial {
        /// Weight composition `lambda_1,..,lambda_n`.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Character of the level-restricted coinvariants.
    Coinv {
        #[arg(long)]
        level: u32,
        #[arg(long = "l")]
        label: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = CoinvMethod::Fermionic)]
        method: CoinvMethod,
        /// Cross-check against the quotient-ring oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Monomial basis of the fusion product.
    Basis {
        #[command(flatten)]
        spec: SpecArgs,
        /// Check the basis against the quotient ring.
        #[arg(long)]
        verify: bool,
    },
    /// Brute-force characters by linear algebra.
    Oracle {
        #[command(flatten)]
        spec: SpecArgs,
        /// Evaluation points (integers or fractions); selects the filtered tensor product.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Option<Vec<String>>,
        /// Coinvariant quotient `k,l`.
        #[arg(long, value_name = "K,L", conflicts_with = "z")]
        coinv: Option<String>,
        #[arg(long, default_value_t = OracleOptions::default().max_monomials)]
        max_monomials: usize,
    },
    /// Run the cross-check suites.
    Verify {
        /// `all` or a comma-separated list of suite names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_boxes: Option<u32>,
        #[arg(long)]
        max_rank: Option<usize>,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Factors `n:k,n:k,..`; `-` for none.
    #[arg(long, allow_hyphen_values = true)]
    spec: String,
    /// Rank `n` of `sl_n`; defaults to the largest `n_p`.
    #[arg(long)]
    rank: Option<usize>,
}

impl SpecArgs {
    fn parse(&self) -> Result<FusionSpec, Error> {
        FusionSpec::parse(&self.spec, self.rank)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CharMethod {
    Fermionic,
    Recursive,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoinvMethod {
    Fermionic,
    W3,
    Alternating,
}

/// What a command produced: JSON for the envelope, text for humans, and
/// whether any verification failed.
struct Output {
    spec: String,
    result: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn poly(spec: String, p: &MPoly) -> Self {
        Output {
            spec,
            result: p.to_json(),
            text: p.to_grouped_text(),
            ok: true,
        }
    }

    fn identities(spec: String, reports: &[IdentityReport]) -> Self {
        let text = reports
            .iter()
            .map(|r| {
                if r.passed() {
                    format!("PASS {}", r.name)
                } else {
                    format!(
                        "FAIL {}: {} != {}",
                        r.name,
                        r.lhs.to_grouped_text(),
                        r.rhs.to_grouped_text()
                    )
                }
            })
            .collect::<Vec<_>>()
            .join("\n");
        Output {
            spec,
            result: serde_json::to_value(reports).expect("reports serialize"),
            text,
            ok: reports.iter().all(IdentityReport::passed),
        }
    }
}

fn partition(s: &str) -> Result<Partition, Error> {
    s.parse()
}

fn composition(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad composition {s:?}")))
        })
        .collect()
}

fn required(v: Option<u32>, flag: &str) -> Result<u32, Error> {
    v.ok_or_else(|| Error::Parse(format!("--{flag} is required here")))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Char { .. } => "char",
        Command::Kostka { .. } => "kostka",
        Command::Supernomial { .. } => "supernomial",
        Command::Coinv { .. } => "coinv",
        Command::Basis { .. } => "basis",
        Command::Oracle { .. } => "oracle",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(command: &Command, format: Format) -> anyhow::Result<Output> {
    Ok(match command {
        Command::Char { spec, method } => {
            let s = spec.parse()?;
            let chi = match method {
                CharMethod::Fermionic => char_fermionic(s.chain()),
                CharMethod::Recursive => char_recursive(s.chain())?,
                CharMethod::Oracle => hilbert_character_with(&s, &OracleOptions::default())?,
            };
            Output::poly(s.to_spec_string(), &chi)
        }
        Command::Kostka {
            level,
            label,
            mu,
            restricted: _,
            unrestricted,
            check_alternating,
        } => {
            let mu = partition(mu)?;
            if let Some(j) = unrestricted {
                Output::poly(format!("j={j} mu={mu}"), &unrestricted_kostka(*j, &mu)?)
            } else {
                let k = required(*level, "level")?;
                let l = required(*label, "l")?;
                let desc = format!("k={k} l={l} mu={mu}");
                if *check_alternating {
                    Output::identities(desc, &[check_alternating_sum(k, l, &mu)?])
                } else {
                    Output::poly(desc, &restricted_kostka(k, l, &mu)?)
                }
            }
        }
        Command::Supernomial { lambda, mu } => {
            let lambda = composition(lambda)?;
            let mu = partition(mu)?;
            let desc = format!(
                "lambda={} mu={mu}",
                lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            );
            Output::poly(desc, &supernomial(&lambda, &mu)?)
        }
        Command::Coinv {
            level,
            label,
            lambda,
            method,
            verify,
        } => {
            let (k, l) = (*level, *label);
            let lambda = partition(lambda)?;
            let desc = format!("k={k} l={l} lambda={lambda}");
            if *verify {
                let chi3 =
                    coinv_quotient_character_with(&symmetric_spec(&lambda, 3)?, k, l, &OracleOptions::default())?;
                let reports = [
                    IdentityReport::new(
                        format!("oracle k={k} l={l} lambda={lambda}"),
                        chi3.clone(),
                        coinv_character_w3(k, l, &lambda)?,
                    ),
                    IdentityReport::new(
                        format!("restricted oracle k={k} l={l} lambda={lambda}"),
                        restrict_character(&chi3, &lambda)?,
                        coinv_character(k, l, &lambda)?,
                    ),
                    IdentityReport::new(
                        format!("alternating sum k={k} l={l} lambda={lambda}"),
                        coinv_character_alternating(k, l, &lambda)?,
                        coinv_character(k, l, &lambda)?,
                    ),
                ];
                Output::identities(desc, &reports)
            } else {
                let chi = match method {
                    CoinvMethod::Fermionic => coinv_character(k, l, &lambda)?,
                    CoinvMethod::W3 => coinv_character_w3(k, l, &lambda)?,
                    CoinvMethod::Alternating => coinv_character_alternating(k, l, &lambda)?,
                };
                Output::poly(desc, &chi)
            }
        }
        Command::Basis { spec, verify } => {
            let s = spec.parse()?;
            let basis = build_basis(&s)?;
            let sl2 = s.rank() == 2;
            let monomials: Vec<String> = basis.iter().map(|m| m.to_text(sl2)).collect();
            let mut result = json!({ "size": basis.len(), "monomials": monomials });
            let mut text = monomials.join("\n");
            let mut ok = true;
            if *verify {
                let report = verify_basis(&basis, &s)?;
                ok = report.passed();
                result["verification"] = serde_json::to_value(&report)?;
                if format == Format::Text {
                    eprintln!(
                        "{} {} monomials{}",
                        if ok { "PASS" } else { "FAIL" },
                        basis.len(),
                        report.failures.iter().map(|f| format!("\n  {f}")).collect::<String>()
                    );
                }
            }
            if text.is_empty() {
                text.push('1');
            }
            Output {
                spec: s.to_spec_string(),
                result,
                text,
                ok,
            }
        }
        Command::Oracle {
            spec,
            z,
            coinv,
            max_monomials,
        } => {
            let s = spec.parse()?;
            let opts = OracleOptions {
                max_monomials: *max_monomials,
                ..OracleOptions::default()
            };
            let chi = if let Some(points) = z {
                let points: Vec<BigRational> = points
                    .iter()
                    .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad point {p:?}"))))
                    .collect::<Result<_, _>>()?;
                fusion_gr_character(&s, &points)?
            } else if let Some(kl) = coinv {
                let parts = composition(kl)?;
                let [k, l] = parts[..] else {
                    return Err(Error::Parse(format!("--coinv expects k,l, got {kl:?}")).into());
                };
                coinv_quotient_character_with(&s, k, l, &opts)?
            } else {
                hilbert_character_with(&s, &opts)?
            };
            Output::poly(s.to_spec_string(), &chi)
        }
        Command::Verify {
            suite,
            max_boxes,
            max_rank,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                suite.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?
            };
            let mut bounds = SweepBounds::default();
            if let Some(b) = max_boxes {
                bounds = bounds.with_max_boxes(*b);
            }
            if let Some(n) = max_rank {
                bounds.max_rank = *n;
            }
            let bounds = bounds.capped();
            let report = run_suites(&suites, &bounds);
            let text = report
                .suites
                .iter()
                .map(|s| match s.status {
                    SuiteStatus::Passed => format!("PASS {} ({} checks)", s.suite, s.checked),
                    SuiteStatus::Skipped => {
                        format!("SKIP {} ({})", s.suite, s.note.as_deref().unwrap_or("out of bounds"))
                    }
                    SuiteStatus::Failed => format!(
                        "FAIL {} ({} of {} checks){}",
                        s.suite,
                        s.failures.len(),
                        s.checked,
                        s.failures.iter().map(|f| format!("\n  {f}")).collect::<String>()
                    ),
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output {
                spec: suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(","),
                ok: report.passed(),
                result: serde_json::to_value(&report)?,
                text,
            }
        }
    })
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    spec: &'a str,
    version: &'a str,
    result: &'a Value,
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("FUSIONCHAR_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        anyhow!(Error::Parse(format!(
            "FUSIONCHAR_THREADS must be a positive integer, got {v:?}"
        )))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the worker pool")
}

/// Verification failures exit 1; everything the caller can fix exits 2.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Consistency(_)) => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    configure_threads()?;
    let out = dispatch(&cli.command, cli.format)?;
    let mut body = match cli.format {
        Format::Text => out.text,
        Format::Json => serde_json::to_string_pretty(&Envelope {
            command: command_name(&cli.command),
            spec: &out.spec,
            version: VERSION,
            result: &out.result,
        })?,
    };
    body.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {path}"))?,
        None => print!("{body}"),
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fusionchar: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
