//! Reproduction suite: one ledger row per acceptance criterion, with the
//! measured value next to the expected one. Failures are rows, not errors.
//! Every random draw is seed-pinned, so reruns give identical ledgers
//! (up to elapsed times).

mod criteria;
pub mod oracles;

use crate::exec::Exec;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::time::Instant;

pub use criteria::{control_matrices, Suite};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub criterion: u8,
    pub name: String,
    pub measured: String,
    pub expected: String,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub rows: Vec<LedgerRow>,
}

impl Ledger {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("criterion\tname\tpass\telapsed_ms\tmeasured\texpected\n");
        for r in &self.rows {
            let clean = |s: &str| s.replace(['\t', '\n'], " ");
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.criterion,
                r.name,
                if r.pass { "pass" } else { "FAIL" },
                r.elapsed_ms,
                clean(&r.measured),
                clean(&r.expected)
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }
}

impl LedgerRow {
    /// `criterion N  pass  name (elapsed): measured`.
    pub fn line(&self) -> String {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2}  {verdict}  {} ({:.1} s): {}",
            self.criterion,
            self.name,
            self.elapsed_ms as f64 / 1000.0,
            self.measured
        );
        if !self.pass {
            let _ = write!(s, " | expected: {}", self.expected);
        }
        s
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "fig1 imprimitive example"),
    (2, "fig2 full minor scan"),
    (3, "fig3 vanishing orbit"),
    (4, "cyclic shift baseline"),
    (5, "A_n live test"),
    (6, "walk-matrix identities"),
    (7, "complement pairs"),
    (8, "uncertainty witnesses"),
    (9, "block-Krylov and Gram"),
    (10, "oracle equivalence"),
];

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct SuiteOptions {
    pub exec: Exec,
    /// Criteria to run; empty means all.
    pub only: Vec<u8>,
}


/// Runs the selected criteria in order, calling `progress` after each row.
pub fn run_reproduction_suite(opts: &SuiteOptions, mut progress: impl FnMut(&LedgerRow)) -> Ledger {
    let suite = Suite::new(opts.exec);
    let mut rows = Vec::new();
    for (id, name) in CRITERIA {
        if !opts.only.is_empty() && !opts.only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = suite.run(id);
        let row = LedgerRow {
            criterion: id,
            name: name.to_string(),
            measured: outcome.measured,
            expected: outcome.expected,
            pass: outcome.pass,
            elapsed_ms: start.elapsed().as_millis() as u64,
        };
        progress(&row);
        rows.push(row);
    }
    Ledger { rows }
}

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub measured: String,
    pub expected: String,
    pub pass: bool,
}
