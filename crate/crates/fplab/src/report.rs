//! Machine-readable run reports.
//!
//! Every CLI command answers with a [`RunReport`] (scans answer with a
//! [`ScanReport`] wrapping many entries).  The JSON layout is versioned
//! through [`SCHEMA`] and round-trips: parsing an emitted report gives the
//! same value back.

use serde::{Deserialize, Serialize};

use crate::oracle::{ArithmeticMode, GeneratorProfile, HfRecord};
use crate::typevec::{BettiTable, DoubleClassification, PseudoPrediction};

/// Version tag carried by every report.
pub const SCHEMA: &str = "fplab-1";

/// Overall outcome of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every predicted quantity present equals the corresponding oracle
    /// quantity.
    Match,
    /// Some prediction that had to hold does not.
    Mismatch,
    /// Nothing was compared, or the comparison carries no verdict (for
    /// example an oracle run on a type whose invariant is allowed to
    /// vary).
    NotApplicable,
}

/// Echo of the parameters a command ran with.  Fields are filled only
/// where they apply, so the JSON stays small.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_vector: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pseudo_vector: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub double: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_h: Option<Vec<u32>>,
}

/// The combinatorial side of a report: whichever predictor ran.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Predictions {
    /// Double-point scheme over a type vector.
    Double(DoubleClassification),
    /// Reduced scheme over a pseudo type vector.
    Pseudo(PseudoPrediction),
}

/// The oracle side of a report.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleResults {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hf: Option<HfRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<GeneratorProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiTable>,
    /// How many times the modular path fell back to exact arithmetic.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub escalations: u32,
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

/// One command run: echoed inputs, predictions, oracle output, verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub inputs: Inputs,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predictions: Option<Predictions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_results: Option<OracleResults>,
    pub verdict: Verdict,
    pub arithmetic_mode: ArithmeticMode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RunReport {
    /// A fresh report for `command`; starts out with nothing compared.
    pub fn new(command: &str, inputs: Inputs, mode: ArithmeticMode) -> Self {
        RunReport {
            schema: SCHEMA.to_owned(),
            command: command.to_owned(),
            inputs,
            predictions: None,
            oracle_results: None,
            verdict: Verdict::NotApplicable,
            arithmetic_mode: mode,
            notes: Vec::new(),
        }
    }

    /// Records one comparison.  A failed comparison makes the whole
    /// report a mismatch; passed ones upgrade "not applicable" to
    /// "match" but never override an earlier failure.
    pub fn check(&mut self, what: &str, ok: bool) {
        if ok {
            if self.verdict == Verdict::NotApplicable {
                self.verdict = Verdict::Match;
            }
        } else {
            self.verdict = Verdict::Mismatch;
            self.notes.push(format!("mismatch: {what}"));
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Process exit code for this report.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Mismatch => 1,
            _ => 0,
        }
    }
}

/// Classification of one type vector inside a scan, with the optional
/// oracle spot-check and non-uniqueness witnesses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub type_vector: Vec<u32>,
    pub hf_unique: bool,
    pub betti_unique: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_gen_count: Option<u32>,
    /// Oracle confirmations that ran for this vector, if any.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracle_runs: Vec<ScanOracleRun>,
    /// For a non-unique verdict: two concrete realizations that differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ScanWitness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// One oracle confirmation inside a scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOracleRun {
    pub config: String,
    pub seed: u64,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_h: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiTable>,
}

/// Two runs that demonstrate a non-unique invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanWitness {
    pub first: ScanOracleRun,
    pub second: ScanOracleRun,
}

/// Totals plus per-vector entries for a whole scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: String,
    pub command: String,
    pub max_entry: u32,
    pub what: String,
    pub total: usize,
    pub hf_unique_count: usize,
    pub betti_unique_count: usize,
    pub entries: Vec<ScanEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typevec::TypeVector;

    #[test]
    fn report_round_trips_through_json() {
        let t = TypeVector::new(vec![2, 4, 5]).unwrap();
        let mut report = RunReport::new(
            "predict",
            Inputs {
                type_vector: Some(vec![2, 4, 5]),
                double: true,
                ..Inputs::default()
            },
            ArithmeticMode::Exact,
        );
        report.predictions = Some(Predictions::Double(t.classify_double()));
        report.check("delta_h", true);
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn pseudo_predictions_round_trip_distinctly() {
        let p = crate::typevec::PseudoTypeVector::new(vec![1, 2, 2, 3]).unwrap();
        let report = RunReport {
            predictions: Some(Predictions::Pseudo(p.predict())),
            ..RunReport::new("predict", Inputs::default(), ArithmeticMode::Modular)
        };
        let json = serde_json::to_string(&report).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert!(matches!(back.predictions, Some(Predictions::Pseudo(_))));
        assert_eq!(back, report);
    }

    #[test]
    fn verdict_strings_are_kebab_case() {
        assert_eq!(
            serde_json::to_string(&Verdict::NotApplicable).unwrap(),
            "\"not-applicable\""
        );
        assert_eq!(serde_json::to_string(&Verdict::Match).unwrap(), "\"match\"");
    }

    #[test]
    fn checks_never_unfail_a_report() {
        let mut r = RunReport::new("verify", Inputs::default(), ArithmeticMode::Exact);
        assert_eq!(r.verdict, Verdict::NotApplicable);
        r.check("hf", true);
        assert_eq!(r.verdict, Verdict::Match);
        r.check("betti", false);
        r.check("regularity", true);
        assert_eq!(r.verdict, Verdict::Mismatch);
        assert_eq!(r.exit_code(), 1);
    }
}
