//! Acceptance criteria 1–10, one line per criterion. Exits nonzero when any
//! criterion fails. `ACCEPTANCE_ONLY=2,5` restricts the run;
//! `ACCEPTANCE_LEDGER=path` also writes the ledger as TSV.

use spectral_certify::exec::Exec;
use spectral_certify::harness::{run_reproduction_suite, SuiteOptions};
use std::process::ExitCode;

fn main() -> ExitCode {
    let only: Vec<u8> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect())
        .unwrap_or_default();
    let opts = SuiteOptions { exec: Exec::default(), only };
    let ledger = run_reproduction_suite(&opts, |row| println!("{}", row.line()));
    if let Ok(path) = std::env::var("ACCEPTANCE_LEDGER") {
        std::fs::write(&path, ledger.to_tsv()).expect("ledger path is writable");
    }
    let failed = ledger.rows.iter().filter(|r| !r.pass).count();
    println!("acceptance: {} of {} criteria pass", ledger.rows.len() - failed, ledger.rows.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
