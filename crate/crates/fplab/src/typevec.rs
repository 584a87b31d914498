//! Type vectors, pseudo type vectors and everything that can be predicted
//! from them without touching coordinates.
//!
//! A *type vector* `(d_1 < d_2 < ... < d_r)` records a configuration of
//! points in the plane with `d_i` points on the i-th line; these vectors
//! classify the Hilbert functions of reduced point sets in P^2.  A *pseudo
//! type vector* relaxes strict growth to weak growth, with no value allowed
//! three times.  The first difference of a pseudo type vector controls both
//! whether the Hilbert function of the attached double-point scheme is
//! forced, and whether its graded Betti numbers are forced.
//!
//! The module is purely combinatorial: all the linear algebra lives in
//! [`crate::oracle`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly increasing vector `(d_1 < ... < d_r)` of positive line counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeVector {
    entries: Vec<u32>,
}

/// Weakly increasing vector `(m_1 <= ... <= m_p)` of positive line counts
/// in which no value appears three times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PseudoTypeVector {
    entries: Vec<u32>,
}

/// First difference `(m_1 - 0, m_2 - m_1, ...)` of a pseudo type vector.
///
/// The first entry is positive and no two consecutive entries are zero;
/// both facts follow from the shape of a pseudo type vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffVector {
    entries: Vec<u32>,
}

/// Graded Betti numbers of a height-two ideal: generator degrees (`beta1`)
/// and first-syzygy degrees (`beta2`), kept as sorted multisets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    /// Degrees of a minimal generating set, sorted, with repetition.
    pub beta1: Vec<u32>,
    /// Degrees of the first syzygies, sorted, with repetition.
    pub beta2: Vec<u32>,
}

/// One link in a chain of basic double links: the ideal grows by
/// `G * I + (F)` with `deg F = d1` and `deg G = d2` (a line or a conic).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BdlStep {
    /// Degree of the form `F` (the number of new points per line).
    pub d1: u32,
    /// Degree of the auxiliary form `G`: 1 for a single new line, 2 when
    /// two equal entries are handled at once.
    pub d2: u32,
}

/// Everything the combinatorics alone can say about the scheme attached
/// to a pseudo type vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoPrediction {
    /// The input vector.
    pub pseudo: Vec<u32>,
    /// Its first difference.
    pub diff: Vec<u32>,
    /// Whether every configuration of this pseudo type has the same
    /// Hilbert function.
    pub hf_unique: bool,
    /// First difference of the standard O-sequence of the vector.  When
    /// `hf_unique` holds this is *the* Hilbert function; otherwise it is
    /// the one realized by the standard configuration.
    pub delta_h: Vec<u32>,
    /// Castelnuovo-Mumford regularity, known only when the Hilbert
    /// function is forced.
    pub regularity: Option<u32>,
    /// Whether the graded Betti numbers are forced; undefined when the
    /// Hilbert function already varies.
    pub betti_unique: Option<bool>,
    /// The forced Betti table, when there is one.
    pub betti: Option<BettiTable>,
    /// Number of minimal generators, when the Betti table is forced.
    pub min_gen_count: Option<u32>,
}

/// Predictions for the double-point scheme supported on a configuration
/// of a given type vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleClassification {
    /// The supporting type vector.
    pub type_vector: Vec<u32>,
    /// The pseudo type vector attached to the doubling: the sorted merge
    /// of the `n_i` and the `2 n_i`.
    pub pseudo_type: Vec<u32>,
    /// First difference of `pseudo_type`.
    pub diff: Vec<u32>,
    /// Whether all double schemes over configurations of this type share
    /// one Hilbert function.
    pub hf_unique: bool,
    /// Whether they also share their graded Betti numbers.
    pub betti_unique: bool,
    /// First difference of the standard O-sequence of `pseudo_type`; the
    /// common Hilbert function when `hf_unique`, and in every case the one
    /// realized by the spread-out configuration.
    pub delta_h: Vec<u32>,
    /// Regularity of the double scheme.  This one is independent of the
    /// chosen configuration: always `2 * n_r`.
    pub regularity: u32,
    /// The forced Betti table, when `betti_unique`.
    pub betti: Option<BettiTable>,
    /// Number of minimal generators, when `betti_unique`.
    pub min_gen_count: Option<u32>,
}

impl TypeVector {
    /// Builds a type vector, rejecting anything not strictly increasing
    /// or containing a zero.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidVector("type vector is empty".into()));
        }
        if entries[0] == 0 {
            return Err(Error::InvalidVector("entries must be positive".into()));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidVector(format!(
                "type vector must be strictly increasing, got {entries:?}"
            )));
        }
        Ok(Self { entries })
    }

    /// The entries `(d_1, ..., d_r)`.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Number of lines `r`; equals the least degree in which the point
    /// set fails to impose independent conditions plus one, i.e. alpha.
    pub fn r(&self) -> usize {
        self.entries.len()
    }

    /// Total number of points.
    pub fn point_count(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// Last entry `d_r`; equals the sigma invariant (one past the last
    /// nonzero entry of the difference Hilbert function).
    pub fn sigma(&self) -> u32 {
        *self.entries.last().unwrap()
    }

    /// Difference Hilbert function of a configuration of this type:
    /// the i-th row contributes an all-ones block of length `d_i`
    /// shifted right by `r - i`.
    ///
    /// ```
    /// use fplab::typevec::TypeVector;
    /// let t = TypeVector::new(vec![1, 2, 4, 7]).unwrap();
    /// assert_eq!(t.delta_h(), vec![1, 2, 3, 4, 2, 1, 1]);
    /// ```
    pub fn delta_h(&self) -> Vec<u32> {
        let r = self.entries.len();
        let mut out = vec![0u32; self.sigma() as usize];
        for (i, &d) in self.entries.iter().enumerate() {
            let shift = r - 1 - i;
            for slot in out.iter_mut().skip(shift).take(d as usize) {
                *slot += 1;
            }
        }
        out
    }

    /// Recovers the type vector from a difference Hilbert function,
    /// peeling one all-ones block per line starting with the longest.
    ///
    /// Returns [`Error::NotPointHilbertFunction`] when the sequence is not
    /// the difference Hilbert function of any reduced point set in the
    /// plane (it must read `1, 2, ..., alpha` and then never increase).
    pub fn from_delta_h(delta: &[u32]) -> Result<Self> {
        let mut v: Vec<u32> = delta.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        if v.is_empty() {
            return Err(Error::NotPointHilbertFunction("empty sequence".into()));
        }
        // shape check: t+1 up to alpha, non-increasing afterwards
        let alpha = v
            .iter()
            .enumerate()
            .position(|(t, &x)| x != t as u32 + 1)
            .unwrap_or(v.len());
        if alpha == 0 {
            return Err(Error::NotPointHilbertFunction(format!(
                "must start with 1, got {:?}",
                v[0]
            )));
        }
        if v[alpha..].windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotPointHilbertFunction(format!(
                "increases again after degree {alpha}"
            )));
        }
        if alpha < v.len() && v[alpha] > alpha as u32 {
            return Err(Error::NotPointHilbertFunction(format!(
                "value {} in degree {} exceeds {}",
                v[alpha], alpha, alpha
            )));
        }
        if v.iter().any(|&x| x == 0) {
            return Err(Error::NotPointHilbertFunction(
                "internal zero entry".into(),
            ));
        }

        let mut rows_desc = Vec::with_capacity(alpha);
        while !v.is_empty() {
            rows_desc.push(v.len() as u32);
            for x in v.iter_mut() {
                *x -= 1;
            }
            v.remove(0);
            while v.last() == Some(&0) {
                v.pop();
            }
            // entries strictly between the new end and old sigma cannot be
            // zero: the shape check above rules it out
            debug_assert!(v.iter().all(|&x| x > 0) || v.is_empty());
        }
        rows_desc.reverse();
        if rows_desc.len() != alpha {
            return Err(Error::Inconsistent(format!(
                "peeled {} rows but alpha = {alpha}",
                rows_desc.len()
            )));
        }
        Self::new(rows_desc)
    }

    /// The pseudo type vector attached to the first infinitesimal
    /// neighborhood: the sorted merge of the `n_i` with the `2 n_i`.
    pub fn associated_pseudo(&self) -> PseudoTypeVector {
        let mut merged: Vec<u32> = self
            .entries
            .iter()
            .copied()
            .chain(self.entries.iter().map(|&n| 2 * n))
            .collect();
        merged.sort_unstable();
        // a value can land at most twice (once from each list), so this
        // is always a valid pseudo type vector
        PseudoTypeVector::new(merged).expect("merge of n_i and 2n_i is always valid")
    }

    /// Classifies the double-point scheme supported on configurations of
    /// this type: forced Hilbert function? forced Betti numbers? and the
    /// data that is forced.
    pub fn classify_double(&self) -> DoubleClassification {
        let pseudo = self.associated_pseudo();
        let diff = pseudo.diff();
        let hf_unique = diff.zeros_separated();
        let betti_unique = hf_unique && diff.betti_obstruction().is_none();
        let delta_h = pseudo.standard_osequence();
        let betti = betti_unique.then(|| pseudo.bdl_betti());
        let min_gen_count = betti_unique
            .then(|| pseudo.len() as u32 + 1 - diff.zero_count() as u32);
        DoubleClassification {
            type_vector: self.entries.clone(),
            pseudo_type: pseudo.entries.clone(),
            diff: diff.entries.clone(),
            hf_unique,
            betti_unique,
            delta_h,
            regularity: 2 * self.sigma(),
            betti,
            min_gen_count,
        }
    }

    /// Type of the configuration after deleting one point from the line
    /// with the given (1-based) index.  The result can have one repeated
    /// value, so it is a pseudo type vector.
    pub fn remove_point(&self, line_index: usize) -> Result<PseudoTypeVector> {
        if line_index == 0 || line_index > self.entries.len() {
            return Err(Error::InvalidVector(format!(
                "line index {line_index} out of range 1..={}",
                self.entries.len()
            )));
        }
        let mut entries = self.entries.clone();
        entries[line_index - 1] -= 1;
        if entries[line_index - 1] == 0 {
            entries.remove(line_index - 1);
        }
        entries.sort_unstable();
        if entries.is_empty() {
            return Err(Error::InvalidVector(
                "removing the point leaves an empty configuration".into(),
            ));
        }
        let pseudo = PseudoTypeVector::new(entries)?;
        // deleting a single point never obstructs the Betti numbers
        debug_assert!(pseudo.diff().betti_obstruction().is_none());
        Ok(pseudo)
    }
}

impl PseudoTypeVector {
    /// Builds a pseudo type vector: weakly increasing, positive, and no
    /// value three times (two consecutive equal entries must be followed
    /// by a strictly larger one).
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidVector("pseudo type vector is empty".into()));
        }
        if entries[0] == 0 {
            return Err(Error::InvalidVector("entries must be positive".into()));
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidVector(format!(
                "pseudo type vector must be weakly increasing, got {entries:?}"
            )));
        }
        if entries.windows(3).any(|w| w[0] == w[2]) {
            return Err(Error::InvalidVector(format!(
                "no value may appear three times, got {entries:?}"
            )));
        }
        Ok(Self { entries })
    }

    /// The entries `(m_1, ..., m_p)`.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Number of lines `p`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when there are no entries — never, by construction.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest entry `m_p`.
    pub fn max_entry(&self) -> u32 {
        *self.entries.last().unwrap()
    }

    /// Total number of points.
    pub fn point_count(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// First difference, with a formal leading zero: `(m_1, m_2 - m_1, ...)`.
    pub fn diff(&self) -> DiffVector {
        let mut out = Vec::with_capacity(self.entries.len());
        let mut prev = 0;
        for &m in &self.entries {
            out.push(m - prev);
            prev = m;
        }
        DiffVector { entries: out }
    }

    /// The standard O-sequence of the vector: a shifted sum of blocks,
    /// one per entry.  A lone entry `m_i` contributes an all-ones block
    /// of length `m_i`; the second of two equal entries contributes the
    /// profile `1, 2, ..., 2, 1` of total `2 m_i`; the first of two equal
    /// entries contributes nothing.  Block `i` is shifted right by `p - i`.
    ///
    /// This is the difference Hilbert function realized by the standard
    /// configuration of the vector, and — whenever the zero entries of the
    /// first difference are separated by something bigger than 1 — by
    /// every configuration of the vector.
    pub fn standard_osequence(&self) -> Vec<u32> {
        let p = self.entries.len();
        let mut out = vec![0u32; self.max_entry() as usize + p];
        for i in 1..=p {
            let m = self.entries[i - 1];
            let prev = if i >= 2 { self.entries[i - 2] } else { 0 };
            let next = self.entries.get(i).copied();
            let shift = p - i;
            if prev < m && next != Some(m) {
                // lone entry: ones of length m
                for slot in out.iter_mut().skip(shift).take(m as usize) {
                    *slot += 1;
                }
            } else if prev == m {
                // second of a pair: 1, 2, ..., 2, 1 over degrees 0..=m
                out[shift] += 1;
                for slot in out.iter_mut().skip(shift + 1).take(m as usize - 1) {
                    *slot += 2;
                }
                out[shift + m as usize] += 1;
            }
            // first of a pair contributes nothing
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// The chain of basic double links that builds the standard
    /// configuration: equal neighbours are consumed in one conic step,
    /// lone entries in one line step.
    pub fn bdl_steps(&self) -> Vec<BdlStep> {
        let mut steps = Vec::new();
        let mut i = 0;
        while i < self.entries.len() {
            if i + 1 < self.entries.len() && self.entries[i] == self.entries[i + 1] {
                steps.push(BdlStep { d1: self.entries[i], d2: 2 });
                i += 2;
            } else {
                steps.push(BdlStep { d1: self.entries[i], d2: 1 });
                i += 1;
            }
        }
        steps
    }

    /// Difference Hilbert function obtained by running the chain of basic
    /// double links from the empty scheme.  Equals
    /// [`standard_osequence`](Self::standard_osequence); kept separate so
    /// the identity can be tested.
    pub fn delta_h_by_bdl(&self) -> Vec<u32> {
        let mut delta = Vec::new();
        for step in self.bdl_steps() {
            delta = bdl_hf_step(&delta, step.d1, step.d2)
                .expect("chain steps are always valid");
        }
        delta
    }

    /// Betti table of the all-no-split run of the chain of basic double
    /// links: the first step lays down a complete intersection, each later
    /// step applies the mapping cone without cancellation.
    ///
    /// When [`DiffVector::betti_obstruction`] is `None` (and the zero
    /// entries of the difference are separated), this is the Betti table
    /// of *every* configuration of the vector.
    pub fn bdl_betti(&self) -> BettiTable {
        let steps = self.bdl_steps();
        let first = steps[0];
        // complete intersection of the first form with a line or a conic
        let mut betti = BettiTable::complete_intersection(first.d2, first.d1);
        for step in &steps[1..] {
            betti = betti
                .bdl_step(step.d1, step.d2, false)
                .expect("no-split steps cannot fail");
        }
        betti
    }

    /// Full combinatorial prediction for this pseudo type vector.
    pub fn predict(&self) -> PseudoPrediction {
        let diff = self.diff();
        let hf_unique = diff.zeros_separated();
        let delta_h = self.standard_osequence();
        let (regularity, betti_unique) = if hf_unique {
            let reg = if diff.ends_in_zero_then_ones() {
                self.max_entry() + 1
            } else {
                self.max_entry()
            };
            (Some(reg), Some(diff.betti_obstruction().is_none()))
        } else {
            (None, None)
        };
        let betti = (betti_unique == Some(true)).then(|| self.bdl_betti());
        let min_gen_count = (betti_unique == Some(true))
            .then(|| self.len() as u32 + 1 - diff.zero_count() as u32);
        PseudoPrediction {
            pseudo: self.entries.clone(),
            diff: diff.entries.clone(),
            hf_unique,
            delta_h,
            regularity,
            betti_unique,
            betti,
            min_gen_count,
        }
    }
}

impl From<&TypeVector> for PseudoTypeVector {
    fn from(t: &TypeVector) -> Self {
        // strictly increasing is in particular weakly increasing
        PseudoTypeVector { entries: t.entries.clone() }
    }
}

impl DiffVector {
    /// The difference entries.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Number of zero entries.
    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|&&x| x == 0).count()
    }

    /// True when between any two zero entries there is an entry larger
    /// than 1.  This is exactly the condition under which the Hilbert
    /// function of a configuration is determined by its pseudo type
    /// vector alone.
    pub fn zeros_separated(&self) -> bool {
        let mut last_zero: Option<usize> = None;
        for (i, &x) in self.entries.iter().enumerate() {
            if x == 0 {
                if let Some(j) = last_zero {
                    if !self.entries[j + 1..i].iter().any(|&y| y > 1) {
                        return false;
                    }
                }
                last_zero = Some(i);
            }
        }
        true
    }

    /// Scans for a contiguous segment of the shape `1, 0, (2, 0)*, 1`.
    /// Such a segment is exactly what allows two configurations of the
    /// same pseudo type to have different graded Betti numbers, so `None`
    /// means the Betti table is forced (given separated zeros).
    ///
    /// Returns the inclusive index range of the first offending segment.
    pub fn betti_obstruction(&self) -> Option<(usize, usize)> {
        let e = &self.entries;
        for start in 0..e.len() {
            if e[start] != 1 || start + 1 >= e.len() || e[start + 1] != 0 {
                continue;
            }
            let mut pos = start + 2;
            loop {
                if pos < e.len() && e[pos] == 1 {
                    return Some((start, pos));
                }
                if pos + 1 < e.len() && e[pos] == 2 && e[pos + 1] == 0 {
                    pos += 2;
                } else {
                    break;
                }
            }
        }
        None
    }

    /// True when the vector ends with a zero, possibly followed by
    /// nothing but ones.  In that case the regularity of the scheme is
    /// `m_p + 1` instead of `m_p`.
    pub fn ends_in_zero_then_ones(&self) -> bool {
        let mut i = self.entries.len();
        while i > 0 && self.entries[i - 1] == 1 {
            i -= 1;
        }
        i > 0 && self.entries[i - 1] == 0
    }
}

impl BettiTable {
    /// Builds a table from generator and syzygy degrees, enforcing the
    /// height-two shape: one more generator than syzygies, and every
    /// syzygy in a degree beyond the initial degree.
    pub fn new(mut beta1: Vec<u32>, mut beta2: Vec<u32>) -> Result<Self> {
        beta1.sort_unstable();
        beta2.sort_unstable();
        if beta1.is_empty() {
            return Err(Error::Inconsistent("no generators".into()));
        }
        if beta2.len() + 1 != beta1.len() {
            return Err(Error::Inconsistent(format!(
                "{} generators need {} syzygies, got {}",
                beta1.len(),
                beta1.len() - 1,
                beta2.len()
            )));
        }
        if let (Some(&g), Some(&s)) = (beta1.first(), beta2.first()) {
            if s <= g {
                return Err(Error::Inconsistent(format!(
                    "syzygy degree {s} not beyond initial degree {g}"
                )));
            }
        }
        Ok(Self { beta1, beta2 })
    }

    /// Resolution of a complete intersection of forms of degrees `a`, `b`:
    /// generators in degrees `a` and `b`, one syzygy in degree `a + b`.
    pub fn complete_intersection(a: u32, b: u32) -> Self {
        Self::new(vec![a, b], vec![a + b]).expect("koszul shape is valid")
    }

    /// Number of minimal generators.
    pub fn generator_count(&self) -> usize {
        self.beta1.len()
    }

    /// Mapping cone of one basic double link `G*I + (F)` with
    /// `deg F = d1`, `deg G = d2`: every degree moves up by `d2`, a new
    /// generator appears in degree `d1` and a new syzygy in `d1 + d2`.
    /// With `split` the cone cancels one generator/syzygy pair in degree
    /// `d1 + d2` (the case where `F` is chosen among the minimal
    /// generators); this needs a generator of degree `d1` to exist.
    pub fn bdl_step(&self, d1: u32, d2: u32, split: bool) -> Result<Self> {
        let mut beta1: Vec<u32> = self.beta1.iter().map(|&b| b + d2).collect();
        let mut beta2: Vec<u32> = self.beta2.iter().map(|&b| b + d2).collect();
        beta1.push(d1);
        beta2.push(d1 + d2);
        if split {
            let cancel = d1 + d2;
            let Some(i) = beta1.iter().position(|&b| b == cancel) else {
                return Err(Error::Inconsistent(format!(
                    "split requested but no generator of degree {cancel} to cancel"
                )));
            };
            beta1.remove(i);
            let j = beta2
                .iter()
                .position(|&b| b == cancel)
                .expect("the syzygy just added is present");
            beta2.remove(j);
        }
        Self::new(beta1, beta2)
    }

    /// Coefficients of the numerator `1 - sum t^{beta1} + sum t^{beta2}`
    /// of the Hilbert series against the free resolution.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let top = self
            .beta1
            .iter()
            .chain(self.beta2.iter())
            .max()
            .copied()
            .unwrap_or(0) as usize;
        let mut k = vec![0i64; top + 1];
        k[0] = 1;
        for &b in &self.beta1 {
            k[b as usize] -= 1;
        }
        for &b in &self.beta2 {
            k[b as usize] += 1;
        }
        k
    }

    /// Checks the table against a difference Hilbert function: the
    /// numerator of the Hilbert series must equal `(1 - t)^2` times the
    /// difference polynomial.
    pub fn matches_delta_h(&self, delta: &[u32]) -> bool {
        self.hilbert_numerator() == numerator_from_delta(delta)
    }

    /// Macaulay-style display: one row per internal degree, generator
    /// counts one column over, syzygy counts two over.
    pub fn render(&self) -> String {
        let max_row = self
            .beta1
            .iter()
            .map(|&b| b.saturating_sub(1))
            .chain(self.beta2.iter().map(|&b| b.saturating_sub(2)))
            .max()
            .unwrap_or(0);
        let cell = |n: usize| {
            if n == 0 {
                "-".to_string()
            } else {
                n.to_string()
            }
        };
        let mut lines = vec![format!(
            "{:>7} {:>4} {:>4} {:>4}",
            "", "0", "1", "2"
        )];
        lines.push(format!(
            "{:>7} {:>4} {:>4} {:>4}",
            "total:",
            1,
            self.beta1.len(),
            self.beta2.len()
        ));
        for row in 0..=max_row {
            let c0 = usize::from(row == 0);
            let c1 = self.beta1.iter().filter(|&&b| b == row + 1).count();
            let c2 = self.beta2.iter().filter(|&&b| b == row + 2).count();
            if c0 + c1 + c2 == 0 {
                continue;
            }
            lines.push(format!(
                "{:>7} {:>4} {:>4} {:>4}",
                format!("{row}:"),
                cell(c0),
                cell(c1),
                cell(c2)
            ));
        }
        lines.join("\n")
    }
}

/// Difference Hilbert function of a complete intersection of degrees
/// `(d1, d2)` with `d2` a line or a conic: all ones for a line, the
/// `1, 2, ..., 2, 1` profile for a conic.
pub fn ci_delta_h(d1: u32, d2: u32) -> Result<Vec<u32>> {
    if d1 == 0 || !(d2 == 1 || d2 == 2) {
        return Err(Error::Unsupported(format!(
            "complete intersection profile needs d1 >= 1 and d2 in {{1, 2}}, got ({d1}, {d2})"
        )));
    }
    Ok(if d2 == 1 {
        vec![1; d1 as usize]
    } else {
        let mut v = vec![2; d1 as usize + 1];
        v[0] = 1;
        v[d1 as usize] = 1;
        v
    })
}

/// One basic double link on the level of Hilbert functions:
/// `delta_Z(t) = delta_CI(d1, d2)(t) + delta_X(t - d2)`.
pub fn bdl_hf_step(prev: &[u32], d1: u32, d2: u32) -> Result<Vec<u32>> {
    let ci = ci_delta_h(d1, d2)?;
    let len = ci.len().max(prev.len() + d2 as usize);
    let mut out = vec![0u32; len];
    for (t, &v) in ci.iter().enumerate() {
        out[t] += v;
    }
    for (t, &v) in prev.iter().enumerate() {
        out[t + d2 as usize] += v;
    }
    Ok(out)
}

/// Hilbert function from its first difference (partial sums).
pub fn h_from_delta(delta: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(delta.len());
    let mut acc = 0;
    for &d in delta {
        acc += d;
        out.push(acc);
    }
    out
}

/// `(1 - t)^2 *` the difference polynomial, as signed coefficients: the
/// Hilbert-series numerator every resolution of the scheme must match.
pub fn numerator_from_delta(delta: &[u32]) -> Vec<i64> {
    let mut k = vec![0i64; delta.len() + 2];
    for (t, &v) in delta.iter().enumerate() {
        let v = v as i64;
        k[t] += v;
        k[t + 1] -= 2 * v;
        k[t + 2] += v;
    }
    while k.last() == Some(&0) {
        k.pop();
    }
    k
}

/// Difference Hilbert function of the pairwise-intersection configuration
/// of `t` general lines: `1, 2, ..., t-1`.
pub fn ct_delta_h(t: u32) -> Result<Vec<u32>> {
    if t < 2 {
        return Err(Error::Unsupported(format!(
            "need at least two lines to intersect, got t = {t}"
        )));
    }
    Ok((1..t).collect())
}

/// Difference Hilbert function of the support of the partial
/// intersection configuration: `1, 2, ..., t-1, r` (`r = 0` drops the
/// last entry).
pub fn ctr_support_delta_h(t: u32, r: u32) -> Result<Vec<u32>> {
    if r > t {
        return Err(Error::InvalidVector(format!(
            "need 0 <= r <= t, got (t, r) = ({t}, {r})"
        )));
    }
    let mut v = ct_delta_h(t)?;
    if r > 0 {
        v.push(r);
    }
    Ok(v)
}

/// Difference Hilbert function of the double-point scheme over the
/// intersection configuration.  `r = 0` has the closed form
/// `1, 2, ..., t-1` followed by `t - 1` copies of `t`; for `0 < r < t`
/// only the tabulated values for `t` in `{4, 5}` are known here.
pub fn ztr_delta_h(t: u32, r: u32) -> Result<Vec<u32>> {
    if r > t {
        return Err(Error::InvalidVector(format!(
            "need 0 <= r <= t, got (t, r) = ({t}, {r})"
        )));
    }
    if r == 0 {
        let mut v = ct_delta_h(t)?;
        v.extend(std::iter::repeat(t).take(t as usize - 1));
        return Ok(v);
    }
    let table: &[u32] = match (t, r) {
        (4, 1) => &[1, 2, 3, 4, 5, 4, 1, 1],
        (4, 2) => &[1, 2, 3, 4, 5, 5, 2, 2],
        (4, 3) => &[1, 2, 3, 4, 5, 5, 4, 3],
        (5, 1) => &[1, 2, 3, 4, 5, 6, 5, 5, 1, 1],
        (5, 2) => &[1, 2, 3, 4, 5, 6, 6, 5, 2, 2],
        (5, 3) => &[1, 2, 3, 4, 5, 6, 6, 6, 3, 3],
        (5, 4) => &[1, 2, 3, 4, 5, 6, 6, 6, 5, 4],
        _ if r == t => {
            return Err(Error::Unsupported(format!(
                "(t, t) coincides with ({}, 0); ask for that instead",
                t + 1
            )))
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no tabulated value for (t, r) = ({t}, {r})"
            )))
        }
    };
    Ok(table.to_vec())
}
