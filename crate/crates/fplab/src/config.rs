//! Concrete point configurations with exact rational coordinates.
//!
//! Everything downstream (the rank oracle) consumes a flat list of fat
//! points, so a configuration here is just a recipe: which lines, which
//! points on them, in an order compatible with its (pseudo) type vector.
//! Coordinates are projective integer triples, kept primitive, so the
//! interpolation matrices stay over the integers no matter how the points
//! were produced.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::typevec::{PseudoTypeVector, TypeVector};

/// How many resampling rounds a randomized generator gets before giving up.
const ATTEMPT_BUDGET: u32 = 64;

/// A point of P^2 with primitive integer coordinates, sign-normalized so
/// that equal points compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [BigInt; 3],
}

/// A line in P^2, stored by the primitive integer coefficients of its
/// defining form `a x + b y + c z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineForm {
    coeffs: [BigInt; 3],
}

/// A point together with the multiplicity imposed on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatPoint {
    pub point: ProjPoint,
    pub multiplicity: u32,
}

/// One line of a configuration and the points chosen on it.
#[derive(Debug, Clone)]
pub struct ConfigRow {
    pub line: LineForm,
    pub points: Vec<ProjPoint>,
}

/// The family a configuration was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigKind {
    /// Left-aligned points on consecutive horizontal lines.
    StandardLinear,
    /// Left-aligned points, lines ordered so higher-degree rows sit lower.
    SpreadOut,
    /// The staircase configuration of a pseudo type vector.
    StandardPseudo,
    /// Horizontal lines at random heights, random abscissas.
    GenericPseudo,
    /// Random lines in general position, random points on them.
    GenericLines,
    /// All pairwise intersections of `t` general lines.
    Intersection,
    /// Intersections of `t` general lines plus part of a `(t+1)`-st.
    PartialIntersection,
    /// Rows built from the intersection skeleton of the lines themselves.
    Skeleton,
}

impl std::fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConfigKind::StandardLinear => "standard",
            ConfigKind::SpreadOut => "spread-out",
            ConfigKind::StandardPseudo => "standard-pseudo",
            ConfigKind::GenericPseudo => "generic-pseudo",
            ConfigKind::GenericLines => "generic-lines",
            ConfigKind::Intersection => "intersection",
            ConfigKind::PartialIntersection => "partial-intersection",
            ConfigKind::Skeleton => "skeleton",
        };
        f.write_str(s)
    }
}

/// Points distributed over rows of distinct lines.
#[derive(Debug, Clone)]
pub struct Configuration {
    kind: ConfigKind,
    rows: Vec<ConfigRow>,
}

fn primitive3(mut v: [BigInt; 3]) -> [BigInt; 3] {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    v
}

impl ProjPoint {
    /// Point from raw projective coordinates; normalized on the way in.
    pub fn new(x: BigInt, y: BigInt, z: BigInt) -> Result<Self> {
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(Error::InvalidVector(
                "(0 : 0 : 0) is not a projective point".into(),
            ));
        }
        Ok(Self { coords: primitive3([x, y, z]) })
    }

    /// Affine integer point `(x, y, 1)`.
    pub fn affine_int(x: i64, y: i64) -> Self {
        Self::new(BigInt::from(x), BigInt::from(y), BigInt::one()).unwrap()
    }

    /// Affine rational point, cleared to integer coordinates.
    pub fn affine(x: &BigRational, y: &BigRational) -> Self {
        let l: BigInt = x.denom().lcm(y.denom());
        let xi = (x * BigRational::from(l.clone())).to_integer();
        let yi = (y * BigRational::from(l.clone())).to_integer();
        Self::new(xi, yi, l).unwrap()
    }

    /// The normalized coordinates.
    pub fn coords(&self) -> &[BigInt; 3] {
        &self.coords
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{} : {} : {}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl LineForm {
    /// Line `a x + b y + c z = 0`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::InvalidVector("zero form is not a line".into()));
        }
        Ok(Self { coeffs: primitive3([a, b, c]) })
    }

    fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    /// The horizontal line `y = h z`.
    pub fn horizontal(h: i64) -> Self {
        Self::from_ints(0, 1, -h).unwrap()
    }

    /// Value of the defining form at a point; zero exactly on the line.
    pub fn eval(&self, p: &ProjPoint) -> BigInt {
        self.coeffs
            .iter()
            .zip(p.coords().iter())
            .map(|(a, x)| a * x)
            .sum()
    }

    /// Whether the point lies on the line.
    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// Intersection point of two distinct lines (the cross product).
    pub fn intersection(&self, other: &LineForm) -> Result<ProjPoint> {
        let a = &self.coeffs;
        let b = &other.coeffs;
        ProjPoint::new(
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        )
        .map_err(|_| Error::Degenerate {
            attempts: 0,
            detail: "intersecting a line with itself".into(),
        })
    }

    /// A point of the line with parameter `t`: the line is rational, so
    /// this walks it through integer parameter values.
    fn point_at(&self, t: i64) -> ProjPoint {
        let [a, b, c] = &self.coeffs;
        let t = BigInt::from(t);
        if !b.is_zero() {
            // x = t, solve for y: y = -(a t + c) / b, cleared of denominators
            ProjPoint::new(&t * b.clone(), -(a * &t + c), b.clone()).unwrap()
        } else if !a.is_zero() {
            // a x + c z = 0: x fixed, y free
            ProjPoint::new(-c.clone(), t * a.clone(), a.clone()).unwrap()
        } else {
            // the line z = 0
            ProjPoint::new(BigInt::one(), t, BigInt::zero()).unwrap()
        }
    }

    /// The coefficients `(a, b, c)`.
    pub fn coeffs(&self) -> &[BigInt; 3] {
        &self.coeffs
    }
}

impl Configuration {
    fn build(kind: ConfigKind, rows: Vec<ConfigRow>) -> Result<Self> {
        let config = Self { kind, rows };
        config.validate()?;
        Ok(config)
    }

    /// Which family the configuration came from.
    pub fn kind(&self) -> ConfigKind {
        self.kind
    }

    /// The rows, ordered by weakly increasing size.
    pub fn rows(&self) -> &[ConfigRow] {
        &self.rows
    }

    /// Row sizes as a pseudo type vector.
    pub fn pseudo_type(&self) -> Result<PseudoTypeVector> {
        PseudoTypeVector::new(self.rows.iter().map(|r| r.points.len() as u32).collect())
    }

    /// Every point once, with multiplicity 1.
    pub fn support(&self) -> Vec<FatPoint> {
        self.fat_points(1)
    }

    /// Every point once, with multiplicity 2.
    pub fn double(&self) -> Vec<FatPoint> {
        self.fat_points(2)
    }

    fn fat_points(&self, multiplicity: u32) -> Vec<FatPoint> {
        self.rows
            .iter()
            .flat_map(|r| r.points.iter())
            .map(|p| FatPoint { point: p.clone(), multiplicity })
            .collect()
    }

    /// Number of points in the support.
    pub fn point_count(&self) -> usize {
        self.rows.iter().map(|r| r.points.len()).sum()
    }

    /// Structural soundness: rows weakly increasing and nonempty, lines
    /// distinct, points distinct and on their lines, and no point of an
    /// earlier row on a later row's line (so peeling lines from the last
    /// row downward recovers exactly the row sizes — which is what having
    /// that type *means*).
    ///
    /// The intersection-based families deliberately place points on
    /// several of their lines at once; everything else gets the stronger
    /// check that a point lies on *no* line but its own.
    pub fn validate(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::InvalidVector("configuration has no rows".into()));
        }
        for w in self.rows.windows(2) {
            if w[0].points.len() > w[1].points.len() {
                return Err(Error::InvalidVector(
                    "rows must come in weakly increasing size".into(),
                ));
            }
        }
        let cross_incidence_allowed = matches!(
            self.kind,
            ConfigKind::Intersection | ConfigKind::PartialIntersection | ConfigKind::Skeleton
        );
        for (i, row) in self.rows.iter().enumerate() {
            if row.points.is_empty() {
                return Err(Error::InvalidVector(format!("row {i} is empty")));
            }
            for p in &row.points {
                if !row.line.contains(p) {
                    return Err(Error::InvalidVector(format!(
                        "point {p} is not on its row line"
                    )));
                }
            }
            for j in 0..i {
                if self.rows[j].line == row.line {
                    return Err(Error::InvalidVector(format!(
                        "rows {j} and {i} share a line"
                    )));
                }
                for p in &self.rows[j].points {
                    if row.line.contains(p) {
                        return Err(Error::InvalidVector(format!(
                            "point {p} of row {j} lies on the later line of row {i}"
                        )));
                    }
                }
                if !cross_incidence_allowed {
                    for p in &row.points {
                        if self.rows[j].line.contains(p) {
                            return Err(Error::InvalidVector(format!(
                                "point {p} of row {i} lies on the line of row {j}"
                            )));
                        }
                    }
                }
            }
        }
        let all: Vec<&ProjPoint> = self.rows.iter().flat_map(|r| r.points.iter()).collect();
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                if all[a] == all[b] {
                    return Err(Error::InvalidVector(format!(
                        "point {} appears twice",
                        all[a]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The standard configuration of a type vector: row `i` puts
    /// `d_i` left-aligned points on the horizontal line at height `r - i`.
    pub fn standard_linear(t: &TypeVector) -> Configuration {
        Self::staircase(ConfigKind::StandardLinear, t.entries())
            .expect("staircase rows are always consistent")
    }

    /// The standard configuration of a pseudo type vector (same
    /// staircase, but rows may repeat a size).
    pub fn standard_pseudo(p: &PseudoTypeVector) -> Configuration {
        Self::staircase(ConfigKind::StandardPseudo, p.entries())
            .expect("staircase rows are always consistent")
    }

    fn staircase(kind: ConfigKind, sizes: &[u32]) -> Result<Configuration> {
        let r = sizes.len();
        let rows = sizes
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let h = (r - 1 - i) as i64;
                ConfigRow {
                    line: LineForm::horizontal(h),
                    points: (0..d as i64).map(|x| ProjPoint::affine_int(x, h)).collect(),
                }
            })
            .collect();
        Self::build(kind, rows)
    }

    /// Left-aligned points with the rows spread apart: row `i` sits at
    /// height `d_r - d_i`, so gaps between consecutive degrees become
    /// gaps between the lines.
    pub fn spread_out(t: &TypeVector) -> Configuration {
        let top = t.sigma() as i64;
        let rows = t
            .entries()
            .iter()
            .map(|&d| {
                let h = top - d as i64;
                ConfigRow {
                    line: LineForm::horizontal(h),
                    points: (0..d as i64).map(|x| ProjPoint::affine_int(x, h)).collect(),
                }
            })
            .collect();
        Self::build(ConfigKind::SpreadOut, rows)
            .expect("distinct degrees give distinct heights")
    }

    /// The staircase's horizontal lines, but with seeded random
    /// abscissas instead of consecutive ones: generic among
    /// configurations with horizontal lines.
    pub fn generic_pseudo(p: &PseudoTypeVector, seed: u64) -> Result<Configuration> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let r = p.len();
        let rows = p
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let h = (r - 1 - i) as i64;
                let mut xs = std::collections::BTreeSet::new();
                while xs.len() < m as usize {
                    xs.insert(rng.gen_range(-10_000i64..=10_000));
                }
                ConfigRow {
                    line: LineForm::horizontal(h),
                    points: xs.into_iter().map(|x| ProjPoint::affine_int(x, h)).collect(),
                }
            })
            .collect();
        Self::build(ConfigKind::GenericPseudo, rows)
    }

    /// Fully generic realization: seeded random lines in general
    /// position, seeded random points on them.
    pub fn generic_lines(p: &PseudoTypeVector, seed: u64) -> Result<Configuration> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let lines = sample_general_lines(&mut rng, p.len())?;
        let mut rows: Vec<ConfigRow> = Vec::with_capacity(p.len());
        let mut taken: Vec<ProjPoint> = Vec::new();
        for (i, &m) in p.entries().iter().enumerate() {
            let mut points = Vec::with_capacity(m as usize);
            let mut attempts = 0;
            while points.len() < m as usize {
                if attempts > ATTEMPT_BUDGET + 8 * m {
                    return Err(Error::Degenerate {
                        attempts,
                        detail: format!("could not place {m} generic points on line {i}"),
                    });
                }
                attempts += 1;
                let cand = lines[i].point_at(rng.gen_range(-10_000i64..=10_000));
                let on_other_line = lines.iter().enumerate().any(|(j, l)| j != i && l.contains(&cand));
                if on_other_line || taken.contains(&cand) || points.contains(&cand) {
                    continue;
                }
                points.push(cand);
            }
            taken.extend(points.iter().cloned());
            rows.push(ConfigRow { line: lines[i].clone(), points });
        }
        Self::build(ConfigKind::GenericLines, rows)
    }

    /// All pairwise intersection points of `t` seeded general lines,
    /// grouped so that line `k` carries its intersections with the
    /// earlier lines; the row sizes are `1, 2, ..., t-1`.
    ///
    /// For a fixed seed the line family is a prefix of the family used
    /// for `t + 1` and for [`Configuration::partial_intersection`], so the
    /// containments between those configurations really hold pointwise.
    pub fn intersection(t: u32, seed: u64) -> Result<Configuration> {
        if t < 2 {
            return Err(Error::Unsupported(format!(
                "need at least two lines to intersect, got t = {t}"
            )));
        }
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let lines = sample_general_lines(&mut rng, t as usize)?;
        let rows = intersection_rows(&lines, t as usize)?;
        Self::build(ConfigKind::Intersection, rows)
    }

    /// The intersection configuration of `t` general lines together with
    /// the first `r` intersection points on a `(t + 1)`-st general line.
    pub fn partial_intersection(t: u32, r: u32, seed: u64) -> Result<Configuration> {
        if t < 2 || r == 0 || r >= t {
            return Err(Error::Unsupported(format!(
                "partial intersection needs t >= 2 and 0 < r < t, got ({t}, {r})"
            )));
        }
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let lines = sample_general_lines(&mut rng, t as usize + 1)?;
        let mut rows = intersection_rows(&lines, t as usize)?;
        let last = &lines[t as usize];
        let extra = ConfigRow {
            line: last.clone(),
            points: (0..r as usize)
                .map(|i| lines[i].intersection(last))
                .collect::<Result<_>>()?,
        };
        // insert by size so the rows stay weakly increasing
        let pos = rows
            .iter()
            .position(|row| row.points.len() > r as usize)
            .unwrap_or(rows.len());
        rows.insert(pos, extra);
        Self::build(ConfigKind::PartialIntersection, rows)
    }

    /// A configuration of the given type whose rows reuse the
    /// intersection skeleton of the lines: row `i` takes the intersection
    /// points with all earlier lines and with one shared transversal,
    /// then fills up with generic points.  Every row meets every earlier
    /// line in a configuration point.
    pub fn skeleton(t: &TypeVector, seed: u64) -> Result<Configuration> {
        let r = t.r();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        // r configuration lines plus one transversal
        let lines = sample_general_lines(&mut rng, r + 1)?;
        let transversal = &lines[r];
        let mut rows: Vec<ConfigRow> = Vec::with_capacity(r);
        for (i, &n) in t.entries().iter().enumerate() {
            let mut points: Vec<ProjPoint> = (0..i)
                .map(|j| lines[j].intersection(&lines[i]))
                .collect::<Result<_>>()?;
            points.push(transversal.intersection(&lines[i])?);
            let mut attempts = 0;
            while points.len() < n as usize {
                if attempts > ATTEMPT_BUDGET + 8 * n {
                    return Err(Error::Degenerate {
                        attempts,
                        detail: format!("could not fill row {i} of the skeleton"),
                    });
                }
                attempts += 1;
                let cand = lines[i].point_at(rng.gen_range(-10_000i64..=10_000));
                let on_other = lines
                    .iter()
                    .enumerate()
                    .any(|(j, l)| j != i && l.contains(&cand));
                if on_other || points.contains(&cand) {
                    continue;
                }
                points.push(cand);
            }
            rows.push(ConfigRow { line: lines[i].clone(), points });
        }
        Self::build(ConfigKind::Skeleton, rows)
    }
}

/// Incrementally samples lines in general position: each new line is
/// projectively new and misses every intersection point of the earlier
/// ones, so no three lines of the family are concurrent.  The accepted
/// family is a deterministic function of the generator state, and a
/// longer family extends a shorter one.
fn sample_general_lines(rng: &mut ChaCha20Rng, count: usize) -> Result<Vec<LineForm>> {
    let mut lines: Vec<LineForm> = Vec::with_capacity(count);
    let mut meets: Vec<ProjPoint> = Vec::new();
    while lines.len() < count {
        let mut attempts = 0;
        let accepted = loop {
            if attempts >= ATTEMPT_BUDGET {
                return Err(Error::Degenerate {
                    attempts,
                    detail: format!("no admissible line after {attempts} draws"),
                });
            }
            attempts += 1;
            let Ok(cand) = LineForm::from_ints(
                rng.gen_range(-9i64..=9),
                rng.gen_range(-9i64..=9),
                rng.gen_range(-9i64..=9),
            ) else {
                continue;
            };
            if lines.contains(&cand) {
                continue;
            }
            if meets.iter().any(|p| cand.contains(p)) {
                continue;
            }
            break cand;
        };
        for l in &lines {
            meets.push(l.intersection(&accepted)?);
        }
        lines.push(accepted);
    }
    Ok(lines)
}

fn intersection_rows(lines: &[LineForm], t: usize) -> Result<Vec<ConfigRow>> {
    // line k (from the second one on) carries its meets with lines 0..k
    (1..t)
        .map(|k| {
            Ok(ConfigRow {
                line: lines[k].clone(),
                points: (0..k)
                    .map(|j| lines[j].intersection(&lines[k]))
                    .collect::<Result<_>>()?,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------
// points on a cubic
// ---------------------------------------------------------------------

type AffinePt = (BigRational, BigRational);

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// chord-tangent addition on y^2 + y = x^3 - x
fn ec_add(p: &AffinePt, q: &AffinePt) -> AffinePt {
    let (x1, y1) = p;
    let (x2, y2) = q;
    let lambda = if p == q {
        // tangent slope; 2y + 1 = 0 only at 2-torsion, which the curve
        // has none of over Q
        (rat(3) * x1 * x1 - rat(1)) / (rat(2) * y1 + rat(1))
    } else {
        assert!(x1 != x2, "adding a point to its negative");
        (y2 - y1) / (x2 - x1)
    };
    let x3 = &lambda * &lambda - x1 - x2;
    let y3 = &lambda * (x1 - &x3) - y1 - rat(1);
    (x3, y3)
}

/// Multiples `k * (0, 0)` on `y^2 + y = x^3 - x`, a rank-one curve with
/// trivial torsion, so all multiples are distinct affine points.
fn ec_multiple(k: u32) -> AffinePt {
    assert!(k >= 1);
    let gen = (rat(0), rat(0));
    let mut acc = gen.clone();
    for _ in 1..k {
        acc = ec_add(&acc, &gen);
    }
    acc
}

/// `n` distinct points on the irreducible cubic `y^2 z + y z^2 = x^3 - x z^2`,
/// taken as multiples of a non-torsion point.  The multipliers are
/// distinct and positive, so no three of the points are collinear and no
/// six lie on a conic (either would force a zero-sum of multipliers).
/// A seed reshuffles which multiples are used.
pub fn cubic_points(n: u32, seed: u64) -> Result<Vec<ProjPoint>> {
    if n == 0 {
        return Err(Error::InvalidVector("asked for zero points".into()));
    }
    if n > 40 {
        return Err(Error::Unsupported(format!(
            "coordinate heights explode beyond 40 multiples, asked for {n}"
        )));
    }
    let mut ks: Vec<u32> = if seed == 0 {
        (1..=n).collect()
    } else {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut set = std::collections::BTreeSet::new();
        while set.len() < n as usize {
            set.insert(rng.gen_range(1..=2 * n));
        }
        set.into_iter().collect()
    };
    ks.sort_unstable();
    Ok(ks
        .into_iter()
        .map(|k| {
            let (x, y) = ec_multiple(k);
            ProjPoint::affine(&x, &y)
        })
        .collect())
}

/// The cubic form behind [`cubic_points`], evaluated at a point.
pub fn cubic_form_value(p: &ProjPoint) -> BigInt {
    let [x, y, z] = p.coords();
    y * y * z + y * z * z - x * x * x + x * z * z
}

/// Wraps bare points with a multiplicity.
pub fn with_multiplicity(points: &[ProjPoint], multiplicity: u32) -> Vec<FatPoint> {
    points
        .iter()
        .map(|p| FatPoint { point: p.clone(), multiplicity })
        .collect()
}

/// `n` distinct pseudo-random integer points with no imposed structure —
/// the raw material for "random reduced scheme" experiments.
pub fn scattered_points(n: u32, seed: u64) -> Vec<ProjPoint> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < n as usize {
        seen.insert((
            rng.gen_range(-10_000i64..=10_000),
            rng.gen_range(-10_000i64..=10_000),
        ));
    }
    seen.into_iter().map(|(x, y)| ProjPoint::affine_int(x, y)).collect()
}
