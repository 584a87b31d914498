//! The operations behind the CLI subcommands, kept free of argument
//! parsing so they are callable (and testable) as plain functions.
//!
//! Each command produces a [`CommandOutput`]: the machine-readable
//! report plus the human-readable text the binary prints.  Exit codes
//! come from the report.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::config::{cubic_points, cubic_form_value, scattered_points, with_multiplicity, Configuration};
use crate::error::{Error, Result};
use crate::oracle::{
    betti_table, dump_condition_matrix, hilbert_function, ArithmeticMode, HfRecord, RankEngine,
};
use crate::report::{
    Inputs, OracleResults, Predictions, RunReport, ScanEntry, ScanOracleRun, ScanReport,
    ScanWitness, Verdict, SCHEMA,
};
use crate::typevec::{
    ctr_support_delta_h, ztr_delta_h, BettiTable, PseudoTypeVector, TypeVector,
};

/// Which family of configurations a command should build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigChoice {
    Standard,
    SpreadOut,
    StandardPseudo,
    Generic,
    GenericLines,
    Ct,
    Ctr,
    Ch,
}

impl ConfigChoice {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "standard" => ConfigChoice::Standard,
            "spread-out" => ConfigChoice::SpreadOut,
            "standard-pseudo" => ConfigChoice::StandardPseudo,
            "generic" => ConfigChoice::Generic,
            "generic-lines" => ConfigChoice::GenericLines,
            "ct" => ConfigChoice::Ct,
            "ctr" => ConfigChoice::Ctr,
            "ch" => ConfigChoice::Ch,
            other => {
                return Err(Error::Usage(format!(
                    "unknown configuration family {other:?}; expected one of standard, \
                     spread-out, standard-pseudo, generic, generic-lines, ct, ctr, ch"
                )))
            }
        })
    }

    fn name(self) -> &'static str {
        match self {
            ConfigChoice::Standard => "standard",
            ConfigChoice::SpreadOut => "spread-out",
            ConfigChoice::StandardPseudo => "standard-pseudo",
            ConfigChoice::Generic => "generic",
            ConfigChoice::GenericLines => "generic-lines",
            ConfigChoice::Ct => "ct",
            ConfigChoice::Ctr => "ctr",
            ConfigChoice::Ch => "ch",
        }
    }

    /// Whether points of this family stay off every foreign line, which
    /// is what the uniqueness predictions quantify over.
    fn predictable(self) -> bool {
        !matches!(self, ConfigChoice::Ct | ConfigChoice::Ctr | ConfigChoice::Ch)
    }
}

/// A finished command: report for machines, text for people.
#[derive(Debug)]
pub struct CommandOutput {
    pub report: RunReport,
    pub text: String,
}

/// Exit code for an error that aborted a command.
pub fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::Degenerate { .. } => 3,
        Error::Usage(_)
        | Error::UnknownExample(_)
        | Error::InvalidVector(_)
        | Error::NotPointHilbertFunction(_)
        | Error::Unsupported(_) => 2,
        _ => 1,
    }
}

fn seq(values: &[u32]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------

/// Pure prediction from a (pseudo) type vector; never touches the oracle.
pub fn predict(
    type_vector: Option<Vec<u32>>,
    pseudo_vector: Option<Vec<u32>>,
    double: bool,
) -> Result<CommandOutput> {
    let inputs = Inputs {
        type_vector: type_vector.clone(),
        pseudo_vector: pseudo_vector.clone(),
        double,
        ..Inputs::default()
    };
    let mut report = RunReport::new("predict", inputs, ArithmeticMode::Exact);
    let mut text = String::new();
    match (type_vector, pseudo_vector) {
        (Some(t), None) if double => {
            let t = TypeVector::new(t)?;
            let c = t.classify_double();
            writeln!(text, "double scheme over a type ({}) configuration", seq(t.entries())).unwrap();
            writeln!(text, "  pseudo type vector : ({})", seq(&c.pseudo_type)).unwrap();
            writeln!(text, "  hilbert function   : {}", if c.hf_unique { "determined by the type" } else { "varies with the configuration" }).unwrap();
            writeln!(text, "  delta h            : {}{}", seq(&c.delta_h), if c.hf_unique { "" } else { "  (spread-out value)" }).unwrap();
            writeln!(text, "  regularity         : {}", c.regularity).unwrap();
            if let Some(betti) = &c.betti {
                writeln!(text, "  minimal generators : {}", c.min_gen_count.unwrap()).unwrap();
                writeln!(text, "{}", betti.render()).unwrap();
            } else {
                writeln!(text, "  betti numbers      : not determined by the type").unwrap();
            }
            report.predictions = Some(Predictions::Double(c));
        }
        (Some(t), None) => {
            let t = TypeVector::new(t)?;
            let p = PseudoTypeVector::from(&t);
            text.push_str(&render_pseudo_prediction(&p, "reduced linear configuration"));
            report.predictions = Some(Predictions::Pseudo(p.predict()));
        }
        (None, Some(p)) => {
            if double {
                return Err(Error::Usage(
                    "--double applies to --type vectors; doubling predictions for pseudo \
                     types are not available"
                        .into(),
                ));
            }
            let p = PseudoTypeVector::new(p)?;
            text.push_str(&render_pseudo_prediction(&p, "pseudo linear configuration"));
            report.predictions = Some(Predictions::Pseudo(p.predict()));
        }
        _ => {
            return Err(Error::Usage(
                "pass exactly one of --type or --pseudo".into(),
            ))
        }
    }
    Ok(CommandOutput { report, text })
}

fn render_pseudo_prediction(p: &PseudoTypeVector, label: &str) -> String {
    let pred = p.predict();
    let mut text = String::new();
    writeln!(text, "{label} of pseudo type ({})", seq(&pred.pseudo)).unwrap();
    writeln!(text, "  first difference   : ({})", seq(&pred.diff)).unwrap();
    writeln!(text, "  hilbert function   : {}", if pred.hf_unique { "determined by the type" } else { "varies with the configuration" }).unwrap();
    writeln!(text, "  delta h            : {}{}", seq(&pred.delta_h), if pred.hf_unique { "" } else { "  (standard-configuration value)" }).unwrap();
    match pred.regularity {
        Some(r) => writeln!(text, "  regularity         : {r}").unwrap(),
        None => writeln!(text, "  regularity         : not determined by the type").unwrap(),
    }
    match (&pred.betti, pred.betti_unique) {
        (Some(betti), _) => {
            writeln!(text, "  minimal generators : {}", pred.min_gen_count.unwrap()).unwrap();
            writeln!(text, "{}", betti.render()).unwrap();
        }
        (None, Some(false)) => {
            writeln!(text, "  betti numbers      : not determined by the type").unwrap()
        }
        (None, _) => writeln!(
            text,
            "  betti numbers      : not determined (hilbert function already varies)"
        )
        .unwrap(),
    }
    text
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

pub struct VerifyOptions {
    pub type_vector: Option<Vec<u32>>,
    pub pseudo_vector: Option<Vec<u32>>,
    pub double: bool,
    pub config: Option<ConfigChoice>,
    pub t: Option<u32>,
    pub r: Option<u32>,
    pub seed: u64,
    pub mode: ArithmeticMode,
    pub dump_matrix: Option<u32>,
}

/// Builds the requested configuration, runs the oracle, and compares
/// against every prediction that is supposed to hold.
pub fn verify(opts: &VerifyOptions) -> Result<CommandOutput> {
    let choice = match opts.config {
        Some(c) => c,
        None => match (&opts.type_vector, &opts.pseudo_vector) {
            (Some(_), None) => ConfigChoice::Standard,
            (None, Some(_)) => ConfigChoice::StandardPseudo,
            _ => ConfigChoice::Ct,
        },
    };
    let inputs = Inputs {
        type_vector: opts.type_vector.clone(),
        pseudo_vector: opts.pseudo_vector.clone(),
        double: opts.double,
        config: Some(choice.name().to_owned()),
        seed: Some(opts.seed),
        t: opts.t,
        r: opts.r,
        ..Inputs::default()
    };
    let mut report = RunReport::new("verify", inputs, opts.mode);
    let mut text = String::new();

    // -- build the configuration ---------------------------------------
    let config = build_configuration(opts, choice)?;
    let scheme = if opts.double { config.double() } else { config.support() };
    if let Some(d) = opts.dump_matrix {
        writeln!(text, "condition matrix at degree {d}:").unwrap();
        text.push_str(&dump_condition_matrix(&scheme, d)?);
        text.push('\n');
    }

    // -- predictions ----------------------------------------------------
    enum Expected {
        Double(crate::typevec::DoubleClassification),
        Pseudo(crate::typevec::PseudoPrediction),
    }
    let expected = match (&opts.type_vector, &opts.pseudo_vector) {
        (Some(t), None) => {
            let t = TypeVector::new(t.clone())?;
            if opts.double {
                Expected::Double(t.classify_double())
            } else {
                Expected::Pseudo(PseudoTypeVector::from(&t).predict())
            }
        }
        (None, Some(p)) => {
            if opts.double {
                return Err(Error::Usage(
                    "--double needs --type; doubling predictions for pseudo types are \
                     not available"
                        .into(),
                ));
            }
            Expected::Pseudo(PseudoTypeVector::new(p.clone())?.predict())
        }
        (None, None) => {
            // Intersection families carry their own implied pseudo type:
            // row i of the full configuration holds i - 1 points, and the
            // partial variant swaps the last row for one with r points.
            if opts.double {
                return Err(Error::Usage(
                    "use the extremal command for doubled intersection configurations".into(),
                ));
            }
            let t = opts.t.ok_or_else(|| {
                Error::Usage("pass --type, --pseudo, or an intersection family via --t".into())
            })?;
            let mut rows: Vec<u32> = (1..t).collect();
            if choice == ConfigChoice::Ctr {
                let r = opts.r.unwrap_or(0);
                *rows.last_mut().expect("t >= 2 checked by the builder") = r;
                rows.sort_unstable();
            }
            Expected::Pseudo(PseudoTypeVector::new(rows)?.predict())
        }
        (Some(_), Some(_)) => {
            return Err(Error::Usage("pass exactly one of --type or --pseudo".into()))
        }
    };

    // -- oracle ---------------------------------------------------------
    let engine = RankEngine::new(opts.mode, opts.seed);
    let hf = hilbert_function(&scheme, &engine)?;
    let mut oracle = OracleResults { hf: Some(hf.clone()), ..OracleResults::default() };

    match &expected {
        Expected::Double(c) => {
            report.check("regularity = twice the largest line count", hf.regularity == c.regularity);
            compare_delta(&mut report, &mut text, c.hf_unique, &c.delta_h, &hf.delta_h);
            if let Some(predicted) = &c.betti {
                let (profile, table) = betti_table(&scheme, &engine)?;
                report.check("betti table", &table == predicted);
                writeln!(text, "oracle betti table:\n{}", table.render()).unwrap();
                oracle.generators = Some(profile);
                oracle.betti = Some(table);
            } else if c.hf_unique {
                report.note("betti numbers not determined by the type; oracle table not compared");
            }
            report.predictions = Some(Predictions::Double(c.clone()));
        }
        Expected::Pseudo(p) => {
            if choice.predictable() {
                compare_delta(&mut report, &mut text, p.hf_unique, &p.delta_h, &hf.delta_h);
                if let Some(reg) = p.regularity {
                    report.check("regularity", hf.regularity == reg);
                }
                if let Some(predicted) = &p.betti {
                    let (profile, table) = betti_table(&scheme, &engine)?;
                    report.check("betti table", &table == predicted);
                    writeln!(text, "oracle betti table:\n{}", table.render()).unwrap();
                    oracle.generators = Some(profile);
                    oracle.betti = Some(table);
                }
            } else {
                // Intersection-style families share the type's Hilbert
                // function but nothing finer.
                report.check("support hilbert function", hf.delta_h == p.delta_h);
                report.note("generator degrees are not type-determined for this family");
            }
            report.predictions = Some(Predictions::Pseudo(p.clone()));
        }
    }

    oracle.escalations = engine.escalations();
    report.oracle_results = Some(oracle);
    writeln!(text, "oracle delta h: {}", seq(&hf.delta_h)).unwrap();
    writeln!(text, "verdict: {}", verdict_name(report.verdict)).unwrap();
    Ok(CommandOutput { report, text })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Match => "match",
        Verdict::Mismatch => "mismatch",
        Verdict::NotApplicable => "not-applicable",
    }
}

fn compare_delta(
    report: &mut RunReport,
    text: &mut String,
    unique: bool,
    predicted: &[u32],
    oracle: &[u32],
) {
    if unique {
        report.check("hilbert function", predicted == oracle);
    } else if predicted == oracle {
        report.note("hilbert function not type-determined; this run matched the standard value");
    } else {
        report.note(format!(
            "expected-nonunique: oracle delta h ({}) differs from the standard value ({})",
            seq(oracle),
            seq(predicted)
        ));
        writeln!(text, "hilbert function differs from the standard value, as this type allows").unwrap();
    }
}

fn build_configuration(opts: &VerifyOptions, choice: ConfigChoice) -> Result<Configuration> {
    let need_type = || -> Result<TypeVector> {
        TypeVector::new(opts.type_vector.clone().ok_or_else(|| {
            Error::Usage(format!("--config {} needs --type", choice.name()))
        })?)
    };
    // A doubled scheme keeps the support's rows; doubling happens later.
    // Predictions for doubles read the *type* vector, so `generic` builds
    // its rows straight from the type's entries.
    let pseudo_rows = || -> Result<PseudoTypeVector> {
        match (&opts.type_vector, &opts.pseudo_vector) {
            (Some(t), None) => {
                TypeVector::new(t.clone())?;
                PseudoTypeVector::new(t.clone())
            }
            (None, Some(p)) => PseudoTypeVector::new(p.clone()),
            _ => Err(Error::Usage(format!(
                "--config {} needs --type or --pseudo",
                choice.name()
            ))),
        }
    };
    match choice {
        ConfigChoice::Standard => Ok(Configuration::standard_linear(&need_type()?)),
        ConfigChoice::SpreadOut => Ok(Configuration::spread_out(&need_type()?)),
        ConfigChoice::StandardPseudo => Ok(Configuration::standard_pseudo(&pseudo_rows()?)),
        ConfigChoice::Generic => Configuration::generic_pseudo(&pseudo_rows()?, opts.seed),
        ConfigChoice::GenericLines => Configuration::generic_lines(&pseudo_rows()?, opts.seed),
        ConfigChoice::Ch => Configuration::skeleton(&need_type()?, opts.seed),
        ConfigChoice::Ct => {
            let t = opts.t.ok_or_else(|| Error::Usage("--config ct needs --t".into()))?;
            Configuration::intersection(t, opts.seed)
        }
        ConfigChoice::Ctr => {
            let t = opts.t.ok_or_else(|| Error::Usage("--config ctr needs --t".into()))?;
            let r = opts.r.ok_or_else(|| Error::Usage("--config ctr needs --r".into()))?;
            Configuration::partial_intersection(t, r, opts.seed)
        }
    }
}

// ---------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanWhat {
    Hf,
    Betti,
}

impl ScanWhat {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "hf" => Ok(ScanWhat::Hf),
            "betti" => Ok(ScanWhat::Betti),
            other => Err(Error::Usage(format!(
                "unknown scan subject {other:?}; expected hf or betti"
            ))),
        }
    }
}

pub struct ScanOptions {
    pub max_entry: u32,
    pub what: ScanWhat,
    pub oracle_cap: u32,
    pub trials: u32,
    pub seed: u64,
    pub mode: ArithmeticMode,
}

/// Classifies every type vector with entries up to the bound, spot-checks
/// a subset against the oracle, and hunts for witnesses on every
/// non-unique verdict.
pub fn scan(opts: &ScanOptions) -> Result<(ScanReport, String)> {
    if !(1..=12).contains(&opts.max_entry) {
        return Err(Error::Usage(
            "the scan is exhaustive over subsets; the bound must be between 1 and 12".into(),
        ));
    }
    let mut vectors: Vec<Vec<u32>> = Vec::new();
    for mask in 1u32..(1 << opts.max_entry) {
        let v: Vec<u32> = (1..=opts.max_entry).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        vectors.push(v);
    }
    vectors.sort();

    let entries: Vec<ScanEntry> = vectors
        .par_iter()
        .map(|v| scan_entry(v, opts))
        .collect::<Result<_>>()?;

    let hf_unique_count = entries.iter().filter(|e| e.hf_unique).count();
    let betti_unique_count = entries.iter().filter(|e| e.betti_unique).count();
    let hard_failures: Vec<String> = entries
        .iter()
        .flat_map(|e| e.notes.iter())
        .filter(|n| n.starts_with("contradiction"))
        .cloned()
        .collect();
    let mut report = ScanReport {
        schema: SCHEMA.to_owned(),
        command: "scan".to_owned(),
        max_entry: opts.max_entry,
        what: match opts.what {
            ScanWhat::Hf => "hf".to_owned(),
            ScanWhat::Betti => "betti".to_owned(),
        },
        total: entries.len(),
        hf_unique_count,
        betti_unique_count,
        entries,
        notes: Vec::new(),
    };

    let mut text = String::new();
    writeln!(
        text,
        "{} type vectors with entries <= {}: {} with a type-determined hilbert function, \
         {} with type-determined betti numbers",
        report.total, opts.max_entry, hf_unique_count, betti_unique_count
    )
    .unwrap();
    for e in &report.entries {
        let flags = match (e.hf_unique, e.betti_unique) {
            (true, true) => "hf+betti unique",
            (true, false) => "hf unique, betti varies",
            (false, _) => "hf varies",
        };
        let mut line = format!("  ({:<16} {}", format!("{}):", seq(&e.type_vector)), flags);
        if !e.oracle_runs.is_empty() {
            let ok = e.oracle_runs.iter().filter(|r| r.agrees).count();
            if e.hf_unique && (matches!(opts.what, ScanWhat::Hf) || e.betti_unique) {
                write!(line, "; oracle {ok}/{} agree", e.oracle_runs.len()).unwrap();
            } else {
                let base = match opts.what {
                    ScanWhat::Hf => "standard value",
                    ScanWhat::Betti => "spread-out table",
                };
                write!(line, "; {ok}/{} runs equal the {base}", e.oracle_runs.len()).unwrap();
            }
        }
        if let Some(w) = &e.witness {
            write!(
                line,
                "; witness {}#{} vs {}#{}",
                w.first.config, w.first.seed, w.second.config, w.second.seed
            )
            .unwrap();
        }
        for n in &e.notes {
            write!(line, "; {n}").unwrap();
        }
        writeln!(text, "{line}").unwrap();
    }
    if !hard_failures.is_empty() {
        report.notes = hard_failures;
        writeln!(text, "CONTRADICTIONS FOUND — see notes").unwrap();
    }
    Ok((report, text))
}

fn scan_entry(v: &[u32], opts: &ScanOptions) -> Result<ScanEntry> {
    let t = TypeVector::new(v.to_vec()).expect("enumerated vectors are strictly increasing");
    let c = t.classify_double();
    let mut entry = ScanEntry {
        type_vector: v.to_vec(),
        hf_unique: c.hf_unique,
        betti_unique: c.betti_unique,
        min_gen_count: c.min_gen_count,
        oracle_runs: Vec::new(),
        witness: None,
        notes: Vec::new(),
    };
    if t.sigma() > opts.oracle_cap {
        entry.notes.push("oracle skipped (largest entry above the cap)".to_owned());
        return Ok(entry);
    }
    let rows = PseudoTypeVector::new(v.to_vec()).expect("strictly increasing");
    match opts.what {
        ScanWhat::Hf => {
            for s in 0..opts.trials as u64 {
                let seed = opts.seed + s;
                let config = Configuration::generic_pseudo(&rows, seed)?;
                let engine = RankEngine::new(opts.mode, seed);
                let hf = hilbert_function(&config.double(), &engine)?;
                let agrees = hf.delta_h == c.delta_h;
                entry.oracle_runs.push(ScanOracleRun {
                    config: "generic".to_owned(),
                    seed,
                    agrees,
                    delta_h: Some(hf.delta_h),
                    betti: None,
                });
            }
            if c.hf_unique {
                if let Some(bad) = entry.oracle_runs.iter().find(|r| !r.agrees) {
                    entry.notes.push(format!(
                        "contradiction: type ({}) is hf-unique but seed {} disagreed",
                        seq(v),
                        bad.seed
                    ));
                }
            } else {
                entry.witness = hf_witness(&t, &entry.oracle_runs, opts)?;
                if entry.witness.is_none() {
                    entry.notes.push("no differing pair found within budget".to_owned());
                }
            }
        }
        ScanWhat::Betti => {
            if !c.hf_unique {
                entry.notes.push(
                    "hilbert function already varies; betti comparison skipped".to_owned(),
                );
                return Ok(entry);
            }
            let spread = run_betti(&Configuration::spread_out(&t), true, opts.mode, opts.seed)?;
            let spread_run = ScanOracleRun {
                config: "spread-out".to_owned(),
                seed: opts.seed,
                agrees: c.betti.as_ref() == Some(&spread),
                delta_h: None,
                betti: Some(spread.clone()),
            };
            if c.betti_unique {
                entry.oracle_runs.push(spread_run.clone());
                for s in 1..opts.trials as u64 {
                    let seed = opts.seed + s;
                    let config = Configuration::generic_lines(&rows, seed)?;
                    let table = run_betti(&config, true, opts.mode, seed)?;
                    entry.oracle_runs.push(ScanOracleRun {
                        config: "generic-lines".to_owned(),
                        seed,
                        agrees: c.betti.as_ref() == Some(&table),
                        delta_h: None,
                        betti: Some(table),
                    });
                }
                if let Some(bad) = entry.oracle_runs.iter().find(|r| !r.agrees) {
                    entry.notes.push(format!(
                        "contradiction: type ({}) is betti-unique but {}#{} disagreed",
                        seq(v),
                        bad.config,
                        bad.seed
                    ));
                }
            } else {
                // betti varies: hunt for a second table
                let mut found = None;
                for s in 0..opts.trials as u64 {
                    let seed = opts.seed + s + 1;
                    let config = Configuration::generic_lines(&rows, seed)?;
                    let table = run_betti(&config, true, opts.mode, seed)?;
                    let run = ScanOracleRun {
                        config: "generic-lines".to_owned(),
                        seed,
                        agrees: table == spread,
                        delta_h: None,
                        betti: Some(table.clone()),
                    };
                    if table != spread && found.is_none() {
                        found = Some(run.clone());
                    }
                    entry.oracle_runs.push(run);
                }
                match found {
                    Some(second) => {
                        entry.witness = Some(ScanWitness { first: spread_run, second })
                    }
                    None => entry
                        .notes
                        .push("no differing betti table found within budget".to_owned()),
                }
            }
        }
    }
    Ok(entry)
}

fn hf_witness(
    t: &TypeVector,
    generic_runs: &[ScanOracleRun],
    opts: &ScanOptions,
) -> Result<Option<ScanWitness>> {
    let engine = RankEngine::new(opts.mode, opts.seed);
    let spread = hilbert_function(&Configuration::spread_out(t).double(), &engine)?;
    let standard = hilbert_function(&Configuration::standard_linear(t).double(), &engine)?;
    let spread_run = ScanOracleRun {
        config: "spread-out".to_owned(),
        seed: 0,
        agrees: true,
        delta_h: Some(spread.delta_h.clone()),
        betti: None,
    };
    if standard.delta_h != spread.delta_h {
        return Ok(Some(ScanWitness {
            first: spread_run,
            second: ScanOracleRun {
                config: "standard".to_owned(),
                seed: 0,
                agrees: false,
                delta_h: Some(standard.delta_h),
                betti: None,
            },
        }));
    }
    for run in generic_runs {
        if run.delta_h.as_deref() != Some(&spread.delta_h[..]) {
            return Ok(Some(ScanWitness { first: spread_run, second: run.clone() }));
        }
    }
    Ok(None)
}

fn run_betti(
    config: &Configuration,
    double: bool,
    mode: ArithmeticMode,
    seed: u64,
) -> Result<BettiTable> {
    let scheme = if double { config.double() } else { config.support() };
    let engine = RankEngine::new(mode, seed);
    Ok(betti_table(&scheme, &engine)?.1)
}

// ---------------------------------------------------------------------
// extremal
// ---------------------------------------------------------------------

pub struct ExtremalOptions {
    pub t: u32,
    pub r: u32,
    pub trials: u32,
    pub seed: u64,
    pub mode: ArithmeticMode,
}

/// Figures out which intersection configuration a `--delta-h` request
/// refers to: the sequence must be `1, 2, ..., t-1` or that with one
/// final entry `r < t` appended.
pub fn extremal_target_from_delta(delta: &[u32]) -> Result<(u32, u32)> {
    let n = delta.len();
    if n >= 1 && delta.iter().enumerate().all(|(i, &v)| v == i as u32 + 1) {
        return Ok((n as u32 + 1, 0));
    }
    if n >= 2
        && delta[..n - 1].iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
        && delta[n - 1] <= delta[n - 2]
    {
        return Ok((n as u32, delta[n - 1]));
    }
    Err(Error::NotPointHilbertFunction(format!(
        "({}) is not of the generic shape 1, 2, ..., t-1 [, r]",
        seq(delta)
    )))
}

/// Compares the doubled intersection configuration against doubled
/// random supports sharing its support Hilbert function, reporting
/// whether the configuration attains the pointwise minimum.
pub fn extremal(opts: &ExtremalOptions) -> Result<CommandOutput> {
    let inputs = Inputs {
        t: Some(opts.t),
        r: Some(opts.r),
        trials: Some(opts.trials),
        seed: Some(opts.seed),
        ..Inputs::default()
    };
    let mut report = RunReport::new("extremal", inputs, opts.mode);
    let mut text = String::new();

    let config = if opts.r == 0 {
        Configuration::intersection(opts.t, opts.seed)?
    } else {
        Configuration::partial_intersection(opts.t, opts.r, opts.seed)?
    };
    let engine = RankEngine::new(opts.mode, opts.seed);
    let support_target = ctr_support_delta_h(opts.t, opts.r)?;
    let support_hf = hilbert_function(&config.support(), &engine)?;
    report.check("support hilbert function is generic", support_hf.delta_h == support_target);

    let double_hf = hilbert_function(&config.double(), &engine)?;
    writeln!(text, "doubled intersection configuration delta h: {}", seq(&double_hf.delta_h)).unwrap();
    match ztr_delta_h(opts.t, opts.r) {
        Ok(row) => report.check("tabulated delta h", double_hf.delta_h == row),
        Err(Error::Unsupported(_)) => {
            report.note("no tabulated value for this (t, r); oracle value reported as is")
        }
        Err(e) => return Err(e),
    }

    // Sample reduced supports with the same support Hilbert function and
    // double each one; the configuration should stay pointwise at or
    // below every sampled double.
    let n_points: u32 = support_target.iter().sum();
    let mut master = ChaCha20Rng::seed_from_u64(opts.seed ^ 0x5851_f42d_4c95_7f2d);
    let mut attained = true;
    let mut below: Vec<u64> = Vec::new();
    for _ in 0..opts.trials {
        let mut accepted = None;
        for _ in 0..64 {
            let sample_seed: u64 = master.gen();
            let pts = scattered_points(n_points, sample_seed);
            let support = with_multiplicity(&pts, 1);
            let sample_engine = RankEngine::new(opts.mode, sample_seed);
            let hf = hilbert_function(&support, &sample_engine)?;
            if hf.delta_h == support_target {
                let dbl = hilbert_function(&with_multiplicity(&pts, 2), &sample_engine)?;
                accepted = Some((sample_seed, dbl));
                break;
            }
        }
        let (sample_seed, sample) = accepted.ok_or_else(|| Error::Degenerate {
            attempts: 64,
            detail: format!(
                "could not sample a support with delta h ({}) in 64 tries",
                seq(&support_target)
            ),
        })?;
        for d in 0..double_hf.h.len().max(sample.h.len()) {
            if cum(&sample, d) < cum(&double_hf, d) {
                attained = false;
                if !below.contains(&sample_seed) {
                    below.push(sample_seed);
                }
            }
        }
    }

    report.check(
        "the intersection configuration attains the pointwise minimum",
        attained,
    );
    if attained {
        report.note(format!(
            "consistent: no doubled sample dipped below the configuration in {} trials",
            opts.trials
        ));
        writeln!(text, "consistent across {} sampled supports", opts.trials).unwrap();
    } else {
        report.note(format!("counterexample-found: sample seeds {:?} dip below", below));
        writeln!(text, "counterexample found: sample seeds {below:?} dip below").unwrap();
    }
    report.oracle_results = Some(OracleResults {
        hf: Some(double_hf),
        escalations: engine.escalations(),
        ..OracleResults::default()
    });
    Ok(CommandOutput { report, text })
}

/// Hilbert function value at degree `d`, reading past the stored prefix
/// as the stabilized value (the scheme degree).
fn cum(hf: &HfRecord, d: usize) -> u32 {
    hf.h.get(d).copied().unwrap_or(hf.degree)
}

// ---------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------

const FIXTURES: &str = include_str!("../../../fixtures/reproduce.toml");

#[derive(Debug, Deserialize)]
struct FixtureFile {
    version: String,
    example: Vec<Fixture>,
}

#[derive(Debug, Deserialize)]
struct Fixture {
    id: String,
    title: String,
    #[allow(dead_code)]
    source: String,
    #[serde(rename = "type")]
    type_vector: Option<Vec<u32>>,
    pseudo: Option<Vec<u32>>,
    h: Option<Vec<u32>>,
    delta_h: Option<Vec<u32>>,
    beta1: Option<Vec<u32>>,
    beta2: Option<Vec<u32>>,
    first_beta1: Option<Vec<u32>>,
    first_beta2: Option<Vec<u32>>,
    second_beta1: Option<Vec<u32>>,
    second_beta2: Option<Vec<u32>>,
    spread_out_delta_h: Option<Vec<u32>>,
    standard_delta_h: Option<Vec<u32>>,
    points: Option<u32>,
    support_delta_h: Option<Vec<u32>>,
    double_delta_h: Option<Vec<u32>>,
    companion_type: Option<Vec<u32>>,
    companion_support_delta_h: Option<Vec<u32>>,
    rows: Option<Vec<ZRow>>,
}

#[derive(Debug, Deserialize)]
struct ZRow {
    t: u32,
    r: u32,
    delta_h: Vec<u32>,
}

fn load_fixture(id: &str) -> Result<Fixture> {
    let file: FixtureFile = toml::from_str(FIXTURES)
        .map_err(|e| Error::Inconsistent(format!("built-in fixture file is broken: {e}")))?;
    if file.version != "fplab-fixtures-1" {
        return Err(Error::Inconsistent(format!(
            "unexpected fixture version {}",
            file.version
        )));
    }
    file.example
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownExample(format!("no example named {id:?}")))
}

/// Fixture ids `reproduce` understands, in fixture-file order.
pub fn reproduce_ids() -> Vec<String> {
    toml::from_str::<FixtureFile>(FIXTURES)
        .map(|f| f.example.into_iter().map(|e| e.id).collect())
        .unwrap_or_default()
}

pub struct ReproduceOptions {
    pub id: String,
    pub mode: ArithmeticMode,
    pub seed: u64,
    pub trials: u32,
}

/// Recomputes one frozen example from scratch and diffs it against the
/// stored values.
pub fn reproduce(opts: &ReproduceOptions) -> Result<CommandOutput> {
    let fixture = load_fixture(&opts.id)?;
    let inputs = Inputs {
        example: Some(opts.id.clone()),
        seed: Some(opts.seed),
        trials: Some(opts.trials),
        ..Inputs::default()
    };
    let mut report = RunReport::new("reproduce", inputs, opts.mode);
    let mut text = format!("{}\n", fixture.title);
    match opts.id.as_str() {
        "pseudo-3-6-6-7-12-14" => reproduce_pseudo_oseq(&fixture, opts, &mut report, &mut text)?,
        "ex-2-4-5" => reproduce_ex245(&fixture, opts, &mut report, &mut text)?,
        "special-4-5-8-9-10" => reproduce_special(&fixture, opts, &mut report, &mut text)?,
        "betti-2-3-4-5" => reproduce_two_bettis(&fixture, opts, &mut report, &mut text)?,
        "not-unique-1-2-2-3" => reproduce_not_unique(&fixture, opts, &mut report, &mut text)?,
        "supp-diff-hf" => reproduce_supp_diff(&fixture, opts, &mut report, &mut text)?,
        "zt-table" => reproduce_zt_table(&fixture, opts, &mut report, &mut text)?,
        other => return Err(Error::UnknownExample(format!("no example named {other:?}"))),
    }
    writeln!(text, "verdict: {}", verdict_name(report.verdict)).unwrap();
    Ok(CommandOutput { report, text })
}

fn expect_line(text: &mut String, label: &str, expected: &[u32], got: &[u32]) {
    writeln!(text, "  {label}").unwrap();
    writeln!(text, "    expected: {}", seq(expected)).unwrap();
    if expected == got {
        writeln!(text, "    got     : (same)").unwrap();
    } else {
        writeln!(text, "    got     : {}", seq(got)).unwrap();
    }
}

fn need(field: Option<Vec<u32>>, name: &str) -> Result<Vec<u32>> {
    field.ok_or_else(|| Error::Inconsistent(format!("fixture is missing {name}")))
}

fn reproduce_pseudo_oseq(
    fixture: &Fixture,
    opts: &ReproduceOptions,
    report: &mut RunReport,
    text: &mut String,
) -> Result<()> {
    let pseudo = PseudoTypeVector::new(need(fixture.pseudo.clone(), "pseudo")?)?;
    let expected = need(fixture.delta_h.clone(), "delta_h")?;
    let predicted = pseudo.standard_osequence();
    report.check("predicted standard O-sequence", predicted == expected);
    expect_line(text, "standard O-sequence (predictor)", &expected, &predicted);
    let engine = RankEngine::new(opts.mode, opts.seed);
    let hf = hilbert_function(&Configuration::standard_pseudo(&pseudo).support(), &engine)?;
    report.check("oracle delta h on the standard configuration", hf.delta_h == expected);
    expect_line(text, "oracle delta h (standard configuration)", &expected, &hf.delta_h);
    report.predictions = Some(Predictions::Pseudo(pseudo.predict()));
    report.oracle_results = Some(OracleResults {
        hf: Some(hf),
        escalations: engine.escalations(),
        ..OracleResults::default()
    });
    Ok(())
}

fn reproduce_ex245(
    fixture: &Fixture,
    opts: &ReproduceOptions,
    report: &mut RunReport,
    text: &mut String,
) -> Result<()> {
    let t = TypeVector::new(need(fixture.type_vector.clone(), "type")?)?;
    let expected_h = need(fixture.h.clone(), "h")?;
    let expected_delta = need(fixture.delta_h.clone(), "delta_h")?;
    let expected_betti = BettiTable::new(
        need(fixture.beta1.clone(), "beta1")?,
        need(fixture.beta2.clone(), "beta2")?,
    )?;
    let classification = t.classify_double();
    report.check("predicted delta h", classification.delta_h == expected_delta);
    report.check(
        "predicted betti table",
        classification.betti.as_ref() == Some(&expected_betti),
    );
    let engine = RankEngine::new(opts.mode, opts.seed);
    let scheme = Configuration::spread_out(&t).double();
    let (profile, table) = betti_table(&scheme, &engine)?;
    report.check("oracle h", profile.hf.h == expected_h);
    report.check("oracle delta h", profile.hf.delta_h == expected_delta);
    report.check("oracle betti table", table == expected_betti);
    expect_line(text, "hilbert function", &expected_h, &profile.hf.h);
    writeln!(
        text,
        "    (stabilizes: h({}) = {} = scheme degree)",
        profile.hf.h.len(),
        profile.hf.degree
    )
    .unwrap();
    expect_line(text, "delta h", &expected_delta, &profile.hf.delta_h);
    writeln!(text, "  betti table (oracle, spread-out double):").unwrap();
    writeln!(text, "{}", table.render()).unwrap();
    report.predictions = Some(Predictions::Double(classification));
    report.oracle_results = Some(OracleResults {
        hf: Some(profile.hf.clone()),
        generators: Some(profile),
        betti: Some(table),
        escalations: engine.escalations(),
    });
    Ok(())
}

fn reproduce_special(
    fixture: &Fixture,
    opts: &ReproduceOptions,
    report: &mut RunReport,
    text: &mut String,
) -> Result<()> {
    let t = TypeVector::new(need(fixture.type_vector.clone(), "type")?)?;
    let spread_expected = need(fixture.spread_out_delta_h.clone(), "spread_out_delta_h")?;
    let standard_expected = need(fixture.standard_delta_h.clone(), "standard_delta_h")?;
    let classification = t.classify_double();
    report.check(
        "the standard O-sequence is the spread-out value",
        classification.delta_h == spread_expected,
    );
    report.check("this type is classified hf-nonunique", !classification.hf_unique);
    let spread = Configuration::spread_out(&t).double();
    let standard = Configuration::standard_linear(&t).double();
    let (spread_hf, standard_hf) = rayon::join(
        || hilbert_function(&spread, &RankEngine::new(opts.mode, opts.seed)),
        || hilbert_function(&standard, &RankEngine::new(opts.mode, opts.seed)),
    );
    let spread_hf = spread_hf?;
    let standard_hf = standard_hf?;
    report.check("spread-out oracle delta h", spread_hf.delta_h == spread_expected);
    report.check("standard oracle delta h", standard_hf.delta_h == standard_expected);
    report.check(
        "both regularities are twice the largest line count",
        spread_hf.regularity == classification.regularity
            && standard_hf.regularity == classification.regularity,
    );
    expect_line(text, "spread-out double delta h", &spread_expected, &spread_hf.delta_h);
    expect_line(text, "standard double delta h", &standard_expected, &standard_hf.delta_h);
    let differ: Vec<usize> = (0..spread_hf.delta_h.len().max(standard_hf.delta_h.len()))
        .filter(|&d| spread_hf.delta_h.get(d) != standard_hf.delta_h.get(d))
        .collect();
    writeln!(
        text,
        "  the two hilbert functions differ in degrees {:?} yet share regularity {}",
        differ, classification.regularity
    )
    .unwrap();
    report.predictions = Some(Predictions::Double(classification));
    report.oracle_results = Some(OracleResults {
        hf: Some(spread_hf),
        ..OracleResults::default()
    });
    Ok(())
}

fn reproduce_two_bettis(
    fixture: &Fixture,
    opts: &ReproduceOptions,
    report: &mut RunReport,
    text: &mut String,
) -> Result<()> {
    let t = TypeVector::new(need(fixture.type_vector.clone(), "type")?)?;
    let expected_delta = need(fixture.delta_h.clone(), "delta_h")?;
    let first = BettiTable::new(
        need(fixture.first_beta1.clone(), "first_beta1")?,
        need(fixture.first_beta2.clone(), "first_beta2")?,
    )?;
    let second = BettiTable::new(
        need(fixture.second_beta1.clone(), "second_beta1")?,
        need(fixture.second_beta2.clone(), "second_beta2")?,
    )?;
    let classification = t.classify_double();
    report.check("hilbert function is type-determined", classification.hf_unique);
    report.check("betti numbers are not type-determined", !classification.betti_unique);
    report.check("shared delta h", classification.delta_h == expected_delta);

    let engine = RankEngine::new(opts.mode, opts.seed);
    let (spread_profile, spread_table) =
        betti_table(&Configuration::spread_out(&t).double(), &engine)?;
    report.check("spread-out double realizes the first table", spread_table == first);
    report.check("spread-out delta h", spread_profile.hf.delta_h == expected_delta);
    writeln!(text, "  spread-out double:").unwrap();
    writeln!(text, "{}", spread_table.render()).unwrap();

    let rows = PseudoTypeVector::new(t.entries().to_vec())?;
    let mut second_found = None;
    let mut extras: Vec<BettiTable> = Vec::new();
    for s in 0..opts.trials as u64 {
        let seed = opts.seed + s + 1;
        let config = Configuration::generic_lines(&rows, seed)?;
        let engine = RankEngine::new(opts.mode, seed);
        let (profile, table) = betti_table(&config.double(), &engine)?;
        report.check(
            "every realization shares the hilbert function",
            profile.hf.delta_h == expected_delta,
        );
        if table == second {
            if second_found.is_none() {
                second_found = Some(seed);
            }
        } else if table != first && !extras.contains(&table) {
            extras.push(table);
        }
        if second_found.is_some() {
            break;
        }
    }
    report.check("a generic realization gives the second table", second_found.is_some());
    if let Some(seed) = second_found {
        writeln!(text, "  generic-lines double (seed {seed}):").unwrap();
        writeln!(text, "{}", second.render()).unwrap();
        report.note(format!("second table realized by generic-lines seed {seed}"));
    }
    for extra in &extras {
        report.note(format!(
            "additional table observed (completeness not asserted): beta1 = {:?}, beta2 = {:?}",
            extra.beta1, extra.beta2
        ));
    }
    report.predictions = Some(Predictions::Double(classification));
    report.oracle_results = Some(OracleResults {
        hf: Some(spread_profile.hf.clone()),
        generators: Some(spread_profile),
        betti: Some(spread_table),
        escalations: engine.escalations(),
    });
    Ok(())
}

fn reproduce_not_unique(
    fixture: &Fixture,
    opts: &ReproduceOptions,
    report: &mut RunReport,
    text: &mut String,
) -> Result<()> {
    let pseudo = PseudoTypeVector::new(need(fixture.pseudo.clone(), "pseudo")?)?;
    let expected_delta = need(fixture.delta_h.clone(), "delta_h")?;
    let first = BettiTable::new(
        need(fixture.first_beta1.clone(), "first_beta1")?,
        need(fixture.first_beta2.clone(), "first_beta2")?,
    )?;
    let second = BettiTable::new(
        need(fixture.second_beta1.clone(), "second_beta1")?,
        need(fixture.second_beta2.clone(), "second_beta2")?,
    )?;
    let prediction = pseudo.predict();
    report.check("hilbert function is type-determined", prediction.hf_unique);
    report.check(
        "betti numbers are not type-determined",
        prediction.betti_unique == Some(false),
    );
    report.check("shared delta h", prediction.delta_h == expected_delta);

    let engine = RankEngine::new(opts.mode, opts.seed);
    let (std_profile, std_table) =
        betti_table(&Configuration::standard_pseudo(&pseudo).support(), &engine)?;
    report.check("standard configuration realizes the first table", std_table == first);
    report.check("standard delta h", std_profile.hf.delta_h == expected_delta);
    writeln!(text, "  standard configuration:").unwrap();
    writeln!(text, "{}", std_table.render()).unwrap();

    let mut second_found = None;
    for s in 0..opts.trials as u64 {
        let seed = opts.seed + s + 1;
        let config = Configuration::generic_pseudo(&pseudo, seed)?;
        let engine = RankEngine::new(opts.mode, seed);
        let (profile, table) = betti_table(&config.support(), &engine)?;
        report.check(
            "every realization shares the hilbert function",
            profile.hf.delta_h == expected_delta,
        );
        if table == second {
            second_found = Some(seed);
            break;
        }
    }
    report.check("a generic realization gives the second table", second_found.is_some());
    if let Some(seed) = second_found {
        writeln!(text, "  generic configuration (seed {seed}):").unwrap();
        writeln!(text, "{}", second.render()).unwrap();
        report.note(format!("second table realized by generic seed {seed}"));
    }
    report.predictions = Some(Predictions::Pseudo(prediction));
    report.oracle_results = Some(OracleResults {
        hf: Some(std_profile.hf.clone()),
        generators: Some(std_profile),
        betti: Some(std_table),
        escalations: engine.escalations(),
    });
    Ok(())
}

fn reproduce_supp_diff(
    fixture: &Fixture,
    opts: &ReproduceOptions,
    report: &mut RunReport,
    text: &mut String,
) -> Result<()> {
    let n = fixture.points.ok_or_else(|| Error::Inconsistent("fixture is missing points".into()))?;
    let support_expected = need(fixture.support_delta_h.clone(), "support_delta_h")?;
    let double_expected = need(fixture.double_delta_h.clone(), "double_delta_h")?;
    let companion = TypeVector::new(need(fixture.companion_type.clone(), "companion_type")?)?;
    let companion_support = need(
        fixture.companion_support_delta_h.clone(),
        "companion_support_delta_h",
    )?;

    let pts = cubic_points(n, opts.seed)?;
    report.check(
        "all sampled points satisfy the cubic equation",
        pts.iter().all(|p| cubic_form_value(p) == 0.into()),
    );
    let engine = RankEngine::new(opts.mode, opts.seed);
    let support_hf = hilbert_function(&with_multiplicity(&pts, 1), &engine)?;
    report.check("cubic-points support delta h", support_hf.delta_h == support_expected);
    expect_line(text, "support delta h (points on the cubic)", &support_expected, &support_hf.delta_h);
    let double_hf = hilbert_function(&with_multiplicity(&pts, 2), &engine)?;
    report.check("cubic-points double delta h", double_hf.delta_h == double_expected);
    expect_line(text, "double delta h (points on the cubic)", &double_expected, &double_hf.delta_h);

    let spread = Configuration::spread_out(&companion);
    let companion_support_hf = hilbert_function(&spread.support(), &engine)?;
    report.check(
        "companion support delta h",
        companion_support_hf.delta_h == companion_support,
    );
    expect_line(
        text,
        "support delta h (spread-out companion)",
        &companion_support,
        &companion_support_hf.delta_h,
    );
    let companion_double_hf = hilbert_function(&spread.double(), &engine)?;
    report.check(
        "companion double delta h equals the cubic one",
        companion_double_hf.delta_h == double_expected,
    );
    expect_line(
        text,
        "double delta h (spread-out companion)",
        &double_expected,
        &companion_double_hf.delta_h,
    );
    report.note("the supports have different hilbert functions; the doubles share one");
    report.predictions = Some(Predictions::Double(companion.classify_double()));
    report.oracle_results = Some(OracleResults {
        hf: Some(double_hf),
        escalations: engine.escalations(),
        ..OracleResults::default()
    });
    Ok(())
}

fn reproduce_zt_table(
    fixture: &Fixture,
    opts: &ReproduceOptions,
    report: &mut RunReport,
    text: &mut String,
) -> Result<()> {
    let rows = fixture
        .rows
        .as_ref()
        .ok_or_else(|| Error::Inconsistent("fixture is missing rows".into()))?;
    let results: Vec<Result<(u32, u32, Vec<u32>, Vec<u32>)>> = rows
        .par_iter()
        .map(|row| {
            let config = if row.r == 0 {
                Configuration::intersection(row.t, opts.seed)?
            } else {
                Configuration::partial_intersection(row.t, row.r, opts.seed)?
            };
            let engine = RankEngine::new(opts.mode, opts.seed);
            let hf = hilbert_function(&config.double(), &engine)?;
            Ok((row.t, row.r, row.delta_h.clone(), hf.delta_h))
        })
        .collect();
    for result in results {
        let (t, r, expected, got) = result?;
        let label = if r == 0 { format!("t = {t}") } else { format!("t = {t}, r = {r}") };
        report.check(&format!("oracle row {label}"), expected == got);
        if let Ok(table_row) = ztr_delta_h(t, r) {
            report.check(&format!("stored row {label}"), table_row == expected);
        }
        expect_line(text, &label, &expected, &got);
    }
    report.check("closed form matches the stored full rows", {
        rows.iter()
            .filter(|r| r.r == 0)
            .all(|r| ztr_delta_h(r.t, 0).map(|v| v == r.delta_h).unwrap_or(false))
    });
    Ok(())
}
