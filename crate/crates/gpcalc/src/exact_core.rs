//! Arbitrary-precision integer/rational arithmetic and combinatorial primitives.
//!
//! All values are immutable and all operations are pure and exact; no rounding
//! occurs anywhere in the crate.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with positive
/// denominator (invariants maintained by `num::rational::Ratio`).
pub type Rat = Ratio<BigInt>;

/// Convenience constructor for an integer-valued rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Convenience constructor for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// `n!` for `n >= 0`.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// `1/n!` for `n >= 0`, and `0` for `n < 0`.
///
/// The negative case is the degeneracy-locus convention that makes the
/// determinant evaluation of Schur-indexed classes agree with its product form
/// when an index leaves range.
pub fn inv_factorial(n: i64) -> Rat {
    if n < 0 {
        Rat::zero()
    } else {
        Rat::new(Int::one(), factorial(n as u64))
    }
}

/// Binomial coefficient; `0` when `k < 0` or `k > n >= 0`.
///
/// For negative `n` the falling-factorial extension is used.
pub fn binomial(n: i64, k: i64) -> Int {
    if k < 0 || (n >= 0 && k > n) {
        return Int::zero();
    }
    let mut num = Int::one();
    for j in 0..k {
        num *= Int::from(n - j);
    }
    let q = Rat::new(num, factorial(k as u64));
    debug_assert!(q.is_integer());
    q.to_integer()
}

/// Exact determinant of a square rational matrix by Gaussian elimination with
/// partial (first-nonzero) pivoting.
pub fn det(entries: &[Vec<Rat>]) -> Rat {
    let n = entries.len();
    assert!(
        entries.iter().all(|row| row.len() == n),
        "determinant requires a square matrix"
    );
    let mut m: Vec<Vec<Rat>> = entries.to_vec();
    let mut sign = Rat::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        let inv = m[col][col].clone();
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = &m[row][col] / &inv;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[row][c] -= sub;
            }
        }
    }
    let mut d = sign;
    for (i, row) in m.iter().enumerate() {
        d *= row[i].clone();
    }
    d
}

/// A partition: a non-increasing sequence of positive integers.
///
/// Trailing zeros are stripped on construction, so `(2,1,0)` and `(2,1)` are
/// the same key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, stripping trailing zeros.
    ///
    /// # Panics
    /// Panics if the parts are not non-increasing.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be non-increasing: {parts:?}"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// A single column of `k` boxes, i.e. `(1^k)`; the index partition of the
    /// `k`-th elementary symmetric class.
    pub fn column(k: u32) -> Self {
        Partition {
            parts: vec![1; k as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of (non-zero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `true` when every part equals 1 (this includes the empty partition).
    pub fn is_column(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// The parts padded with zeros to length `n`.
    ///
    /// # Panics
    /// Panics if the partition has more than `n` parts.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(self.parts.len() <= n, "partition has more than {n} parts");
        let mut v = self.parts.clone();
        v.resize(n, 0);
        v
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Renders a rational as `p/q` in lowest terms, or as a plain integer when the
/// denominator is 1.
pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
