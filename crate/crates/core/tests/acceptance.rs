//! Acceptance gate: every property suite at full trial counts and tolerances.
//! Prints one line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use orbitq::verify::{run, Suite, VerifyConfig};

fn describe(suite: Suite) -> &'static str {
    match suite {
        Suite::OrbitInvarianceK1 => "k=1 values fixed by SO(n), nu scaled by det C under O(n), n=1..6, 1e-7",
        Suite::OrbitInvarianceK2 => "k=2 values fixed by O(n), n=0..6, 1e-7",
        Suite::SectionIndependence => "Y replaced by Y*Q at every level, repeated eigenvalues included, 1e-7",
        Suite::Surjectivity => "preimage round trip 1e-8, section/pi0 round trip 1e-9",
        Suite::SoOracle => "exact SO(W) test agrees with alignment search on End(W), n=2,3",
        Suite::TinyFiber => "n=1, k=2: equal values iff b' = +-b (grid) or b' = e^{ia} b",
        Suite::Gamma => "gamma invariant under (c l, c^-1 m), image hits both signs and all phases",
        Suite::Continuity => "residual shrinks along eps = 1e-2, 1e-3, 1e-4 in >= 95% of trials",
        Suite::Layout => "output length equals dim_V, JSON round trip is bit-exact",
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    for (i, suite) in Suite::ALL.into_iter().enumerate() {
        let start = Instant::now();
        let report = run(suite, &cfg);
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        println!(
            "[{verdict}] {}. {:<22} {} | {} trials, {} failures, max residual {:.2e} ({:.1}s)",
            i + 1,
            report.suite,
            describe(suite),
            report.trials,
            report.failures,
            report.max_residual,
            start.elapsed().as_secs_f64()
        );
        for note in &report.notes {
            println!("       {note}");
        }
        if !report.passed {
            failed += 1;
            for case in report.cases.iter().filter(|c| !c.passed()) {
                println!(
                    "       failing case {} {} k={} n={}: {} of {} ({:?})",
                    case.label,
                    case.field,
                    case.k,
                    case.n,
                    case.failures,
                    case.trials,
                    case.first_failure.as_ref().map(|f| (&f.message, f.seed))
                );
            }
        }
    }
    println!("{} of {} criteria passed", Suite::ALL.len() - failed, Suite::ALL.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
