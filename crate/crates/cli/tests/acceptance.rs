//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails or overruns its time budget.

use std::collections::HashSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fusionchar_core::verify::{run_suite, Suite, SuiteReport, SweepBounds};

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_suites(reports: &[SuiteReport]) -> Outcome {
    let ok = reports.iter().all(|r| r.passed() && r.checked > 0);
    let mut detail = reports
        .iter()
        .map(|r| format!("{}: {} checks", r.suite, r.checked))
        .collect::<Vec<_>>()
        .join(", ");
    for r in reports {
        for f in r.failures.iter().take(5) {
            detail.push_str(&format!("\n    {f}"));
        }
    }
    Outcome { ok, detail }
}

fn suites(list: &[Suite]) -> Outcome {
    let bounds = SweepBounds::default();
    from_suites(&list.iter().map(|&s| run_suite(s, &bounds)).collect::<Vec<_>>())
}

const LISTED: [&str; 18] = [
    "1",
    "e[0]",
    "e[0]^2",
    "e[0]^3",
    "e[0]^4",
    "e[0]^5",
    "e[1]",
    "e[0]e[1]",
    "e[0]^2e[1]",
    "e[0]^3e[1]",
    "e[2]",
    "e[1]^2",
    "e[0]e[2]",
    "e[0]e[1]^2",
    "e[0]^2e[2]",
    "e[0]^2e[1]^2",
    "e[1]e[2]",
    "e[1]^3",
];

fn worked_example_basis() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_fusionchar"))
        .args(["basis", "--spec", "2:2,2:2,2:1", "--format", "text"])
        .output()
        .expect("run fusionchar");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    let got: HashSet<&str> = lines.iter().copied().collect();
    let want: HashSet<&str> = LISTED.into_iter().collect();
    let ok = out.status.success() && lines.len() == 18 && got == want;
    Outcome {
        ok,
        detail: format!("{} monomials, exit {:?}", lines.len(), out.status.code()),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 worked example basis", Duration::from_secs(1), worked_example_basis),
        ("2 triple agreement", Duration::from_secs(300), || {
            suites(&[Suite::TripleAgreement])
        }),
        ("3 Z-independence", Duration::from_secs(120), || {
            suites(&[Suite::ZIndependence])
        }),
        ("4 exact sequence", Duration::from_secs(120), || {
            suites(&[Suite::ExactSequence])
        }),
        ("5 rank-2 coinvariant quotients", Duration::from_secs(120), || {
            suites(&[Suite::CoinvariantsRank2])
        }),
        ("6 rank-3 coinvariant quotients", Duration::from_secs(300), || {
            suites(&[Suite::CoinvariantsRank3])
        }),
        ("7 Verlinde consistency", Duration::from_secs(60), || {
            suites(&[Suite::Verlinde])
        }),
        ("8 alternating sums", Duration::from_secs(120), || {
            suites(&[Suite::AlternatingSums])
        }),
        ("9 appendix filtrations", Duration::from_secs(120), || {
            suites(&[Suite::Appendix])
        }),
        ("10 structural", Duration::from_secs(60), || {
            suites(&[Suite::Structural])
        }),
    ];
    let mut all = true;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < budget;
        let ok = outcome.ok && in_time;
        all &= ok;
        println!(
            "{} criterion {name}: {} [{:.2?} of {:?}{}]",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed,
            budget,
            if in_time { "" } else { ", over budget" }
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
