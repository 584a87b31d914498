//! Integer and prime-field linear algebra for the rank oracle.
//!
//! Two rank engines back everything here: fraction-free elimination
//! (Bareiss) over the integers, which never leaves Z and divides exactly
//! by the previous pivot, and plain Gaussian elimination over Z/p for
//! random 62-bit primes.  Kernels come from reduced row echelon form,
//! rationally (then cleared back to primitive integer vectors) or mod p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

/// Row-major matrix over the integers.
#[derive(Debug, Clone)]
pub struct IntMatrix {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
}

/// Rows get chunked to rayon once a pivot step touches this many entries.
const PAR_THRESHOLD: usize = 4_096;

impl IntMatrix {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Rank over Q, computed fraction-free: every intermediate entry is a
    /// minor of the original matrix, and each elimination step divides
    /// exactly by the previous pivot.  Pivots are chosen smallest in
    /// absolute value to slow coefficient growth.
    pub fn rank_exact(&self) -> usize {
        let mut m = self.rows.clone();
        let nrows = m.len();
        let ncols = self.cols;
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..ncols {
            if rank == nrows {
                break;
            }
            // smallest nonzero candidate in this column
            let pivot_row = (rank..nrows)
                .filter(|&i| !m[i][col].is_zero())
                .min_by_key(|&i| m[i][col].magnitude().clone());
            let Some(p) = pivot_row else { continue };
            m.swap(rank, p);
            let (head, tail) = m.split_at_mut(rank + 1);
            let pivot = &head[rank];
            let update = |row: &mut Vec<BigInt>| {
                let lead = std::mem::replace(&mut row[col], BigInt::zero());
                for j in col + 1..ncols {
                    let num = &pivot[col] * &row[j] - &lead * &pivot[j];
                    debug_assert!(
                        num.is_multiple_of(&prev),
                        "fraction-free invariant violated"
                    );
                    row[j] = num / &prev;
                }
            };
            if (nrows - rank) * (ncols - col) >= PAR_THRESHOLD {
                tail.par_iter_mut().for_each(update);
            } else {
                tail.iter_mut().for_each(update);
            }
            prev = pivot[col].clone();
            rank += 1;
        }
        rank
    }

    /// Rank of the reduction mod `p`.
    pub fn rank_mod(&self, p: u64) -> usize {
        gauss_mod(self.reduce_mod(p), p, false).0
    }

    /// The matrix with entries reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Vec<Vec<u64>> {
        let pb = BigInt::from(p);
        self.rows
            .iter()
            .map(|row| row.iter().map(|x| mod_to_u64(x, &pb, p)).collect())
            .collect()
    }

    /// Basis of the right kernel over Q, cleared to primitive integer
    /// vectors (one per free column of the reduced echelon form).
    pub fn kernel_exact(&self) -> Vec<Vec<BigInt>> {
        let mut m: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|x| BigRational::from(x.clone())).collect())
            .collect();
        let ncols = self.cols;
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][col].clone();
            for x in m[r].iter_mut() {
                *x /= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, pv) in row.iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * pv;
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![BigRational::zero(); ncols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            basis.push(clear_denominators(&v));
        }
        basis
    }

    /// Basis of the right kernel of the reduction mod `p`.
    pub fn kernel_mod(&self, p: u64) -> Vec<Vec<u64>> {
        let (rank, m, pivots) = gauss_mod(self.reduce_mod(p), p, true);
        debug_assert_eq!(rank, pivots.len());
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                let c = m[row][free];
                if c != 0 {
                    v[pc] = p - c;
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Rank of a raw residue matrix over Z/p.
pub fn rank_mod_rows(rows: Vec<Vec<u64>>, p: u64) -> usize {
    gauss_mod(rows, p, false).0
}

/// Scales a rational vector to a primitive integer one.
fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from(l.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn mod_to_u64(x: &BigInt, pb: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(pb);
    debug_assert!(!r.is_negative() && r < *pb);
    r.to_u64().unwrap_or_else(|| unreachable!("residue below {p} fits in u64"))
}

/// Gaussian elimination over Z/p.  Returns the rank, and when
/// `full_reduce` is set also the reduced rows (pivot entries scaled to 1,
/// eliminated above and below) together with the pivot columns.
fn gauss_mod(mut m: Vec<Vec<u64>>, p: u64, full_reduce: bool) -> (usize, Vec<Vec<u64>>, Vec<usize>) {
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(i) = (r..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, i);
        let inv = inv_mod(m[r][col], p);
        if full_reduce {
            for x in m[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
        }
        let (above, rest) = m.split_at_mut(r);
        let (pivot_part, hi) = rest.split_at_mut(1);
        let pivot = &pivot_part[0];
        let eliminate = |row: &mut Vec<u64>| {
            if row[col] == 0 {
                return;
            }
            // factor such that row - factor * pivot clears the column
            let f = if full_reduce {
                row[col]
            } else {
                mul_mod(row[col], inv, p)
            };
            for (x, pv) in row.iter_mut().zip(pivot.iter()) {
                *x = sub_mod(*x, mul_mod(f, *pv, p), p);
            }
        };
        if (nrows - r) * (ncols - col) >= PAR_THRESHOLD {
            hi.par_iter_mut().for_each(eliminate);
        } else {
            hi.iter_mut().for_each(eliminate);
        }
        if full_reduce {
            above.iter_mut().for_each(eliminate);
        }
        pivots.push(col);
        r += 1;
    }
    (r, m, pivots)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse mod a prime, via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for the whole u64 range with this
/// base set.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A random prime in `[2^61, 2^62)`, big enough that a fixed nonzero
/// minor is divisible by a sampled prime only with vanishing probability.
pub fn random_prime(rng: &mut ChaCha20Rng) -> u64 {
    loop {
        let candidate = rng.gen_range(1u64 << 61..1u64 << 62) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}
