//! The rank oracle: invariants computed from coordinates alone.
//!
//! Nothing in here knows about type vectors.  A scheme is a bag of fat
//! points; imposing it on the forms of degree `d` gives an integer
//! matrix (one value row per simple point, three partial-derivative rows
//! per double point), and every invariant below — Hilbert function,
//! generator degrees, Betti numbers — is a statement about ranks and
//! kernels of those matrices.  That independence is what lets the test
//! suite play the two halves of the crate against each other.
//!
//! Ranks are taken either exactly (fraction-free over Z) or modulo two
//! independently chosen random 62-bit primes.  The modular path accepts a
//! value only when both primes agree and falls back to the exact path
//! whenever they do not, or whenever a structural cross-check fails.

pub mod linalg;

use std::cell::Cell;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::config::FatPoint;
use crate::error::{Error, Result};
use crate::typevec::{numerator_from_delta, BettiTable};
use linalg::IntMatrix;

/// Which arithmetic backs the rank computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithmeticMode {
    /// Fraction-free elimination over Z: slow, unconditional.
    Exact,
    /// Ranks mod two random 62-bit primes, escalating to exact on any
    /// disagreement or failed invariant.
    Modular,
}

/// A rank backend with the cross-checking policy baked in.
pub struct RankEngine {
    mode: ArithmeticMode,
    primes: (u64, u64),
    escalations: Cell<u32>,
}

#[derive(Clone, Copy)]
enum Backend {
    Exact,
    Mod(u64),
}

impl RankEngine {
    /// An engine in the given mode; the seed only picks the primes.
    pub fn new(mode: ArithmeticMode, seed: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let p1 = linalg::random_prime(&mut rng);
        let p2 = loop {
            let q = linalg::random_prime(&mut rng);
            if q != p1 {
                break q;
            }
        };
        Self { mode, primes: (p1, p2), escalations: Cell::new(0) }
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    /// How many times the modular path had to redo work exactly.
    pub fn escalations(&self) -> u32 {
        self.escalations.get()
    }

    fn note_escalation(&self) {
        self.escalations.set(self.escalations.get() + 1);
    }

    /// Rank under the engine's policy.
    pub fn rank(&self, m: &IntMatrix) -> usize {
        match self.mode {
            ArithmeticMode::Exact => m.rank_exact(),
            ArithmeticMode::Modular => {
                let r1 = m.rank_mod(self.primes.0);
                let r2 = m.rank_mod(self.primes.1);
                if r1 == r2 {
                    r1
                } else {
                    self.note_escalation();
                    m.rank_exact()
                }
            }
        }
    }
}

/// `dim_k R_d` for the polynomial ring in three variables.
pub fn form_space_dim(d: u32) -> u32 {
    (d + 1) * (d + 2) / 2
}

/// Exponent triples of the degree-`d` monomials, graded-lex with
/// `x > y > z` (so `x^d` first, `z^d` last).
pub fn monomials(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::with_capacity(form_space_dim(d) as usize);
    for a in (0..=d).rev() {
        for b in (0..=(d - a)).rev() {
            out.push((a, b, d - a - b));
        }
    }
    out
}

/// Column index of `x^a y^b z^(d-a-b)` in [`monomials`]`(d)`.
fn mono_index(d: u32, a: u32, b: u32) -> usize {
    let k = d - a;
    (k * (k + 1) / 2 + (k - b)) as usize
}

fn powers(base: &BigInt, d: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(d as usize + 1);
    out.push(BigInt::from(1));
    for i in 1..=d as usize {
        let next = &out[i - 1] * base;
        out.push(next);
    }
    out
}

/// The matrix whose rank is the number of conditions the scheme imposes
/// on forms of degree `d`: a value row for each simple point, and for
/// each double point the three first-partial rows (in degree 0, where
/// the partials of every form vanish, the value row instead).
pub fn condition_matrix(scheme: &[FatPoint], d: u32) -> Result<IntMatrix> {
    let mons = monomials(d);
    let mut m = IntMatrix::new(mons.len());
    for fat in scheme {
        let [x, y, z] = fat.point.coords();
        let (xp, yp, zp) = (powers(x, d), powers(y, d), powers(z, d));
        let value_row = || -> Vec<BigInt> {
            mons.iter()
                .map(|&(a, b, c)| &xp[a as usize] * &yp[b as usize] * &zp[c as usize])
                .collect()
        };
        match fat.multiplicity {
            1 => m.push_row(value_row()),
            2 if d == 0 => m.push_row(value_row()),
            2 => {
                m.push_row(
                    mons.iter()
                        .map(|&(a, b, c)| {
                            if a == 0 {
                                BigInt::zero()
                            } else {
                                BigInt::from(a) * &xp[a as usize - 1] * &yp[b as usize]
                                    * &zp[c as usize]
                            }
                        })
                        .collect(),
                );
                m.push_row(
                    mons.iter()
                        .map(|&(a, b, c)| {
                            if b == 0 {
                                BigInt::zero()
                            } else {
                                BigInt::from(b) * &xp[a as usize] * &yp[b as usize - 1]
                                    * &zp[c as usize]
                            }
                        })
                        .collect(),
                );
                m.push_row(
                    mons.iter()
                        .map(|&(a, b, c)| {
                            if c == 0 {
                                BigInt::zero()
                            } else {
                                BigInt::from(c) * &xp[a as usize] * &yp[b as usize]
                                    * &zp[c as usize - 1]
                            }
                        })
                        .collect(),
                );
            }
            other => {
                return Err(Error::Unsupported(format!(
                    "multiplicity {other} points are not implemented (only 1 and 2)"
                )))
            }
        }
    }
    Ok(m)
}

/// Total degree of the fat-point scheme: `sum of m(m+1)/2`.
pub fn scheme_degree(scheme: &[FatPoint]) -> u32 {
    scheme.iter().map(|f| f.multiplicity * (f.multiplicity + 1) / 2).sum()
}

/// Hilbert function data measured by the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfRecord {
    /// `h(0), h(1), ...` up to the first degree where it reaches the
    /// scheme degree.
    pub h: Vec<u32>,
    /// First difference of `h`.
    pub delta_h: Vec<u32>,
    /// Least degree of a form vanishing on the scheme.
    pub alpha: u32,
    /// Least degree where the difference function has dropped to zero,
    /// i.e. one past the last nonzero entry of `delta_h`.
    pub sigma: u32,
    /// Castelnuovo-Mumford regularity of the ideal; for points in the
    /// plane this always coincides with `sigma`.
    pub regularity: u32,
    /// Degree of the scheme.
    pub degree: u32,
}

/// Hilbert function by brute rank, degree by degree, until it
/// stabilizes at the scheme degree.
pub fn hilbert_function(scheme: &[FatPoint], engine: &RankEngine) -> Result<HfRecord> {
    match hf_attempt(scheme, engine, false) {
        Err(Error::Inconsistent(_)) if engine.mode == ArithmeticMode::Modular => {
            engine.note_escalation();
            hf_attempt(scheme, engine, true)
        }
        other => other,
    }
}

fn hf_attempt(scheme: &[FatPoint], engine: &RankEngine, force_exact: bool) -> Result<HfRecord> {
    if scheme.is_empty() {
        return Err(Error::InvalidVector("empty scheme".into()));
    }
    let degree = scheme_degree(scheme);
    let mut h: Vec<u32> = Vec::new();
    for d in 0.. {
        if d > degree + 1 {
            return Err(Error::Inconsistent(
                "hilbert function failed to stabilize at the scheme degree".into(),
            ));
        }
        let m = condition_matrix(scheme, d)?;
        let rank = if force_exact { m.rank_exact() } else { engine.rank(&m) } as u32;
        if rank > degree.min(form_space_dim(d)) {
            return Err(Error::Inconsistent(format!(
                "h({d}) = {rank} exceeds its bound"
            )));
        }
        if let Some(&prev) = h.last() {
            if rank < prev || (prev < degree && rank == prev) {
                return Err(Error::Inconsistent(format!(
                    "hilbert function not strictly increasing at degree {d}"
                )));
            }
        }
        h.push(rank);
        if rank == degree {
            break;
        }
    }
    let mut delta_h = Vec::with_capacity(h.len());
    let mut prev = 0;
    for &v in &h {
        delta_h.push(v - prev);
        prev = v;
    }
    let alpha = (0..)
        .zip(h.iter())
        .find(|&(d, &v)| v < form_space_dim(d))
        .map(|(d, _)| d)
        .unwrap_or(h.len() as u32);
    let sigma = delta_h.len() as u32;
    Ok(HfRecord { h, delta_h, alpha, sigma, regularity: sigma, degree })
}

/// Generator degrees of the scheme's ideal, measured degree by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorProfile {
    pub hf: HfRecord,
    /// Degrees of a minimal generating set, sorted, with repetition.
    pub beta1: Vec<u32>,
}

/// Minimal generator degrees: in each degree `d` the number of new
/// generators is `dim I_d` minus the rank of `R_1 * I_{d-1}` inside the
/// degree-`d` forms, with `I_{d-1}` realized as the kernel of the
/// condition matrix one degree down.  Generators live in degrees up to
/// the regularity, so the scan stops there.
pub fn generator_degrees(scheme: &[FatPoint], engine: &RankEngine) -> Result<GeneratorProfile> {
    let hf = hilbert_function(scheme, engine)?;
    let beta1 = match engine.mode {
        ArithmeticMode::Exact => beta1_attempt(scheme, &hf, Backend::Exact)?,
        ArithmeticMode::Modular => {
            let first = beta1_attempt(scheme, &hf, Backend::Mod(engine.primes.0));
            let second = beta1_attempt(scheme, &hf, Backend::Mod(engine.primes.1));
            match (first, second) {
                (Ok(a), Ok(b)) if a == b => a,
                (Ok(_), Ok(_))
                | (Err(Error::Inconsistent(_)), _)
                | (_, Err(Error::Inconsistent(_))) => {
                    engine.note_escalation();
                    beta1_attempt(scheme, &hf, Backend::Exact)?
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
    };
    Ok(GeneratorProfile { hf, beta1 })
}

fn beta1_attempt(scheme: &[FatPoint], hf: &HfRecord, backend: Backend) -> Result<Vec<u32>> {
    let degree = hf.degree;
    let h_at = |d: u32| -> u32 {
        hf.h.get(d as usize).copied().unwrap_or(degree)
    };
    let mut beta1 = Vec::new();
    for d in hf.alpha..=hf.regularity {
        let dim_i = form_space_dim(d) - h_at(d);
        let fresh = if d == hf.alpha {
            dim_i
        } else {
            let below = condition_matrix(scheme, d - 1)?;
            let expected_kernel = (form_space_dim(d - 1) - h_at(d - 1)) as usize;
            let image_rank = match backend {
                Backend::Exact => {
                    let kernel = below.kernel_exact();
                    if kernel.len() != expected_kernel {
                        return Err(Error::Inconsistent(format!(
                            "kernel dimension {} at degree {} disagrees with the hilbert function ({})",
                            kernel.len(),
                            d - 1,
                            expected_kernel
                        )));
                    }
                    shifted_span_exact(&kernel, d - 1).rank_exact()
                }
                Backend::Mod(p) => {
                    let kernel = below.kernel_mod(p);
                    if kernel.len() != expected_kernel {
                        return Err(Error::Inconsistent(format!(
                            "kernel dimension {} at degree {} disagrees with the hilbert function ({})",
                            kernel.len(),
                            d - 1,
                            expected_kernel
                        )));
                    }
                    linalg::rank_mod_rows(shifted_span_mod(&kernel, d - 1), p)
                }
            } as u32;
            if image_rank > dim_i {
                return Err(Error::Inconsistent(format!(
                    "degree {d}: image of R_1 * I_{} larger than I_{d}",
                    d - 1
                )));
            }
            dim_i - image_rank
        };
        beta1.extend(std::iter::repeat(d).take(fresh as usize));
    }
    if beta1.is_empty() {
        return Err(Error::Inconsistent("ideal of a finite scheme has generators".into()));
    }
    Ok(beta1)
}

/// Rows spanning `R_1 * V` in degree `d + 1`, for `V` spanned by integer
/// coefficient vectors over the degree-`d` monomials.
fn shifted_span_exact(vectors: &[Vec<BigInt>], d: u32) -> IntMatrix {
    let mut m = IntMatrix::new(form_space_dim(d + 1) as usize);
    let mons = monomials(d);
    for v in vectors {
        for shift in 0..3u8 {
            let mut row = vec![BigInt::zero(); form_space_dim(d + 1) as usize];
            for (coef, &(a, b, _)) in v.iter().zip(mons.iter()) {
                if coef.is_zero() {
                    continue;
                }
                let idx = match shift {
                    0 => mono_index(d + 1, a + 1, b),
                    1 => mono_index(d + 1, a, b + 1),
                    _ => mono_index(d + 1, a, b),
                };
                row[idx] = coef.clone();
            }
            m.push_row(row);
        }
    }
    m
}

fn shifted_span_mod(vectors: &[Vec<u64>], d: u32) -> Vec<Vec<u64>> {
    let mons = monomials(d);
    let width = form_space_dim(d + 1) as usize;
    let mut rows = Vec::with_capacity(3 * vectors.len());
    for v in vectors {
        for shift in 0..3u8 {
            let mut row = vec![0u64; width];
            for (&coef, &(a, b, _)) in v.iter().zip(mons.iter()) {
                if coef == 0 {
                    continue;
                }
                let idx = match shift {
                    0 => mono_index(d + 1, a + 1, b),
                    1 => mono_index(d + 1, a, b + 1),
                    _ => mono_index(d + 1, a, b),
                };
                row[idx] = coef;
            }
            rows.push(row);
        }
    }
    rows
}

/// Full graded Betti numbers: the generator degrees are measured, the
/// syzygy degrees then follow from the Hilbert series, and the shape
/// checks of [`BettiTable::new`] guard the result.
pub fn betti_table(scheme: &[FatPoint], engine: &RankEngine) -> Result<(GeneratorProfile, BettiTable)> {
    let profile = generator_degrees(scheme, engine)?;
    match betti_from_profile(&profile) {
        Err(Error::Inconsistent(detail)) if engine.mode == ArithmeticMode::Modular => {
            // a wrong modular rank that slipped through both primes —
            // redo everything without them
            engine.note_escalation();
            let exact = RankEngine::new(ArithmeticMode::Exact, 0);
            let profile = generator_degrees(scheme, &exact)?;
            betti_from_profile(&profile).map_err(|e| match e {
                Error::Inconsistent(d2) => {
                    Error::Inconsistent(format!("{d2} (modular pass had failed with: {detail})"))
                }
                other => other,
            })
        }
        other => other,
    }
}

fn betti_from_profile(profile: &GeneratorProfile) -> Result<(GeneratorProfile, BettiTable)> {
    let numerator = numerator_from_delta(&profile.hf.delta_h);
    let top = numerator.len().max(profile.beta1.last().map_or(0, |&b| b as usize + 1));
    let mut beta2 = Vec::new();
    for j in 0..top {
        let b1 = profile.beta1.iter().filter(|&&b| b as usize == j).count() as i64;
        let k = numerator.get(j).copied().unwrap_or(0) + b1;
        if k < 0 {
            return Err(Error::Inconsistent(format!(
                "negative syzygy count in degree {j}"
            )));
        }
        if j == 0 && k != 1 {
            return Err(Error::Inconsistent(
                "hilbert numerator does not start at 1".into(),
            ));
        }
        if j > 0 {
            beta2.extend(std::iter::repeat(j as u32).take(k as usize));
        }
    }
    let table = BettiTable::new(profile.beta1.clone(), beta2)?;
    Ok((profile.clone(), table))
}

/// Human-readable dump of a condition matrix, monomial headers included.
/// Plain-text dump of the degree-`d` condition matrix: one row per line,
/// entries separated by single spaces.  All entries are integers; a
/// rational entry would print as `num/den`, but denominator clearing at
/// construction time means that never happens in practice.
pub fn dump_condition_matrix(scheme: &[FatPoint], d: u32) -> Result<String> {
    let m = condition_matrix(scheme, d)?;
    let mut out = String::new();
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn render_condition_matrix(scheme: &[FatPoint], d: u32) -> Result<String> {
    let m = condition_matrix(scheme, d)?;
    let labels: Vec<String> = monomials(d)
        .iter()
        .map(|&(a, b, c)| {
            let part = |v: &str, e: u32| match e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            let s = format!("{}{}{}", part("x", a), part("y", b), part("z", c));
            if s.is_empty() {
                "1".to_string()
            } else {
                s
            }
        })
        .collect();
    let mut row_labels = Vec::new();
    for (i, fat) in scheme.iter().enumerate() {
        if fat.multiplicity == 1 || d == 0 {
            row_labels.push(format!("p{i}"));
        } else {
            for v in ["dx", "dy", "dz"] {
                row_labels.push(format!("p{i} {v}"));
            }
        }
    }
    let mut widths: Vec<usize> = labels.iter().map(|l| l.len()).collect();
    for row in m.rows() {
        for (w, x) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(x.to_string().len());
        }
    }
    let label_w = row_labels.iter().map(|l| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&" ".repeat(label_w));
    for (l, w) in labels.iter().zip(widths.iter()) {
        out.push_str(&format!(" {l:>w$}"));
    }
    out.push('\n');
    for (rl, row) in row_labels.iter().zip(m.rows()) {
        out.push_str(&format!("{rl:<label_w$}"));
        for (x, w) in row.iter().zip(widths.iter()) {
            out.push_str(&format!(" {:>w$}", x.to_string()));
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{cubic_points, with_multiplicity, Configuration};
    use crate::typevec::{PseudoTypeVector, TypeVector};

    fn tv(e: &[u32]) -> TypeVector {
        TypeVector::new(e.to_vec()).unwrap()
    }

    fn ptv(e: &[u32]) -> PseudoTypeVector {
        PseudoTypeVector::new(e.to_vec()).unwrap()
    }

    fn exact() -> RankEngine {
        RankEngine::new(ArithmeticMode::Exact, 0)
    }

    fn modular() -> RankEngine {
        RankEngine::new(ArithmeticMode::Modular, 0)
    }

    #[test]
    fn monomial_order_and_index() {
        assert_eq!(
            monomials(2),
            vec![(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
        );
        for d in 0..7 {
            for (i, &(a, b, _)) in monomials(d).iter().enumerate() {
                assert_eq!(mono_index(d, a, b), i);
            }
            assert_eq!(monomials(d).len() as u32, form_space_dim(d));
        }
    }

    #[test]
    fn support_hilbert_functions_match_type_predictions() {
        for entries in [vec![1, 2, 4, 7], vec![2, 4, 5], vec![3]] {
            let t = tv(&entries);
            let c = Configuration::standard_linear(&t);
            let hf = hilbert_function(&c.support(), &exact()).unwrap();
            assert_eq!(hf.delta_h, t.delta_h(), "{entries:?}");
            assert_eq!(hf.alpha as usize, t.r());
            assert_eq!(hf.regularity, t.sigma());
        }
    }

    #[test]
    fn pseudo_supports_split_by_configuration() {
        // the staircase of (1,1,2,2) has four points on a vertical line,
        // the generic realization does not; their hilbert functions differ
        let p = ptv(&[1, 1, 2, 2]);
        let standard = Configuration::standard_pseudo(&p);
        let hf = hilbert_function(&standard.support(), &exact()).unwrap();
        assert_eq!(hf.delta_h, vec![1, 2, 2, 1]);
        assert_eq!(hf.delta_h, p.standard_osequence());

        let generic = Configuration::generic_pseudo(&p, 2).unwrap();
        let hf = hilbert_function(&generic.support(), &exact()).unwrap();
        assert_eq!(hf.delta_h, vec![1, 2, 3]);
    }

    #[test]
    fn points_on_the_cubic_are_otherwise_general() {
        let pts = cubic_points(5, 0).unwrap();
        let hf = hilbert_function(&with_multiplicity(&pts, 1), &exact()).unwrap();
        assert_eq!(hf.h, vec![1, 3, 5]);
        // nine of them force the cubic itself and nothing smaller
        let pts = cubic_points(9, 0).unwrap();
        let hf = hilbert_function(&with_multiplicity(&pts, 1), &modular()).unwrap();
        assert_eq!(hf.alpha, 3);
        assert_eq!(hf.h, vec![1, 3, 6, 9]);
    }

    #[test]
    fn double_point_resolution() {
        let scheme = with_multiplicity(&[crate::config::ProjPoint::affine_int(2, 5)], 2);
        let (profile, table) = betti_table(&scheme, &exact()).unwrap();
        assert_eq!(profile.hf.delta_h, vec![1, 2]);
        assert_eq!(table, BettiTable::new(vec![2, 2, 2], vec![3, 3]).unwrap());
    }

    #[test]
    fn doubled_two_line_scheme_matches_its_printed_resolution() {
        // three points, one alone on a line and two on another, doubled:
        // generators in degrees {3, 4, 4, 4}, syzygies in {5, 5, 5}
        let c = Configuration::standard_linear(&tv(&[1, 2]));
        let engine = exact();
        let (profile, table) = betti_table(&c.double(), &engine).unwrap();
        assert_eq!(profile.hf.delta_h, vec![1, 2, 3, 3]);
        assert_eq!(profile.hf.h, vec![1, 3, 6, 9]);
        assert_eq!(table, BettiTable::new(vec![3, 4, 4, 4], vec![5, 5, 5]).unwrap());
        // and the combinatorial side predicts exactly the same
        let predicted = tv(&[1, 2]).classify_double();
        assert!(predicted.betti_unique);
        assert_eq!(predicted.delta_h, profile.hf.delta_h);
        assert_eq!(predicted.betti.unwrap(), table);
    }

    #[test]
    fn modular_engine_agrees_and_reports_no_escalations() {
        let c = Configuration::standard_linear(&tv(&[1, 2]));
        let engine = modular();
        let (profile, table) = betti_table(&c.double(), &engine).unwrap();
        assert_eq!(table, BettiTable::new(vec![3, 4, 4, 4], vec![5, 5, 5]).unwrap());
        assert_eq!(profile.hf.delta_h, vec![1, 2, 3, 3]);
        assert_eq!(engine.escalations(), 0);
    }

    #[test]
    fn intersection_doubles_match_the_closed_form() {
        let c = Configuration::intersection(4, 1).unwrap();
        let hf = hilbert_function(&c.double(), &exact()).unwrap();
        assert_eq!(hf.delta_h, crate::typevec::ztr_delta_h(4, 0).unwrap());
        // support too
        let hf = hilbert_function(&c.support(), &exact()).unwrap();
        assert_eq!(hf.delta_h, crate::typevec::ct_delta_h(4).unwrap());
    }

    #[test]
    fn unsupported_multiplicity_is_rejected() {
        let scheme = with_multiplicity(&[crate::config::ProjPoint::affine_int(0, 0)], 3);
        assert!(matches!(
            hilbert_function(&scheme, &exact()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn matrix_dump_is_labeled() {
        let c = Configuration::standard_linear(&tv(&[1, 2]));
        let dump = render_condition_matrix(&c.double(), 2).unwrap();
        assert!(dump.contains("x^2"));
        assert!(dump.contains("yz"));
        assert!(dump.contains("p0 dx"));
        assert!(dump.contains("p2 dz"));
    }
}
