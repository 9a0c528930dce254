//! Determinantal evaluation of Schur-indexed intersection numbers on the
//! variety `W` of special linear series, Pieri expansion of elementary-class
//! products, integration of ambient classes, and counting formulas.
//!
//! The basic evaluation rule expresses a Schur monomial of top degree `r+1`
//! on `W` as an explicit rational multiple of the top theta power of the
//! Picard variety, which integrates to the factorial of the curve genus.
//! Every such number is computed twice — once by the closed product form and
//! once as a determinant of reciprocal factorials — and the two must agree.

use num::{One, Zero};
use thiserror::Error;

use crate::ambient_ring::{AmbientClass, BNParams, RingError};
use crate::exact_core::{det, factorial, inv_factorial, rat_i, Int, Partition, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BnError {
    #[error("not top degree: |lambda| + t = {0}, expected {1}")]
    NotTopDegree(u32, u32),
    #[error("partition {0} has more than {1} parts")]
    TooManyParts(Partition, usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("dual evaluation mismatch: product form {0} != determinant form {1}")]
    DualMismatch(Rat, Rat),
}

/// Number of points of the zero-dimensional Brill-Noether variety one degree
/// down; equivalently the top Schur number `(1^{r+1})` on `W`. Always a
/// positive integer:
/// `(rs+s)! * r!(r-1)!...1! / ((s+r)!(s+r-1)!...s!)`.
pub fn count_grd(p: BNParams) -> Rat {
    let (r, s) = (p.r() as u64, p.s() as u64);
    let mut num = Rat::from_integer(factorial(r * s + s));
    for i in 1..=r {
        num *= Rat::from_integer(factorial(i));
    }
    for i in 0..=r {
        num /= Rat::from_integer(factorial(s + i));
    }
    assert!(num.is_integer(), "count_grd must be an integer");
    num
}

/// Evaluates the Schur monomial `s_lambda * theta^t` of top degree `r+1` on
/// `W`, by both the product form and the reciprocal-factorial determinant
/// form; the two must agree exactly.
pub fn eval_schur_theta(p: BNParams, lambda: &Partition, t: u32) -> Result<Rat, BnError> {
    let (product, determinant) = eval_schur_theta_forms(p, lambda, t)?;
    if product != determinant {
        return Err(BnError::DualMismatch(product, determinant));
    }
    Ok(product)
}

/// The product form of [`eval_schur_theta`] alone.
pub fn eval_schur_theta_product(p: BNParams, lambda: &Partition, t: u32) -> Result<Rat, BnError> {
    Ok(eval_schur_theta_forms(p, lambda, t)?.0)
}

/// The reciprocal-factorial determinant form of [`eval_schur_theta`] alone.
pub fn eval_schur_theta_det(p: BNParams, lambda: &Partition, t: u32) -> Result<Rat, BnError> {
    Ok(eval_schur_theta_forms(p, lambda, t)?.1)
}

fn eval_schur_theta_forms(
    p: BNParams,
    lambda: &Partition,
    t: u32,
) -> Result<(Rat, Rat), BnError> {
    let nv = p.nvars();
    if lambda.len() > nv {
        return Err(BnError::TooManyParts(lambda.clone(), nv));
    }
    let top = p.dim_w();
    if lambda.size() + t != top {
        return Err(BnError::NotTopDegree(lambda.size() + t, top));
    }
    let (r, s) = (p.r() as i64, p.s() as i64);
    let i: Vec<i64> = lambda.padded(nv).iter().map(|&x| x as i64).collect();
    let g_c = p.g_curve() as u64;
    let top_theta = Rat::from_integer(factorial(g_c));

    // Product form: prod_{j>l} (i_l - i_j + j - l) / prod_j (s + r + i_j - j)!
    let mut product = Rat::one();
    for j in 0..nv {
        for l in 0..j {
            product *= rat_i(i[l] - i[j] + j as i64 - l as i64);
        }
        product *= inv_factorial(s + r + i[j] - (j as i64 + 1));
    }
    let product = product * &top_theta;

    // Determinant form: det( 1 / (s - 1 + i_j - j + l)! ) * (curve genus)!,
    // with j, l running over 1..=r+1.
    let matrix: Vec<Vec<Rat>> = (0..nv)
        .map(|j| {
            (0..nv)
                .map(|l| inv_factorial(s - 1 + i[j] - j as i64 + l as i64))
                .collect()
        })
        .collect();
    let determinant = det(&matrix) * &top_theta;

    Ok((product, determinant))
}

/// All partitions obtained from `lambda` by adding a vertical strip of `k`
/// boxes (at most one per row), truncated to at most `nvars` parts. This is
/// the expansion of the product of `lambda`'s Schur class with the `k`-th
/// elementary class; each term appears with coefficient 1.
pub fn pieri_column(lambda: &Partition, k: u32, nvars: usize) -> Vec<Partition> {
    let padded = lambda.padded(nvars.max(lambda.len()));
    let n = nvars;
    let mut out = Vec::new();
    // Choose epsilon in {0,1}^n with sum k such that padded + epsilon is
    // non-increasing; rows beyond nvars may not receive boxes.
    fn rec(
        padded: &[u32],
        n: usize,
        row: usize,
        remaining: u32,
        prev: u32,
        acc: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if row == n {
            if remaining == 0 {
                out.push(Partition::new(acc.clone()));
            }
            return;
        }
        for add in 0..=remaining.min(1) {
            let v = padded[row] + add;
            if v > prev {
                continue;
            }
            acc.push(v);
            rec(padded, n, row + 1, remaining - add, v, acc, out);
            acc.pop();
        }
    }
    if lambda.len() <= n {
        rec(&padded[..n], n, 0, k, u32::MAX, &mut Vec::new(), &mut out);
    }
    out
}

/// Expands a product of elementary classes `prod_k e_k` in the Schur basis on
/// `nvars` variables by iterated Pieri steps; partitions with more than
/// `nvars` parts are discarded. Coefficients are positive integers.
pub fn elementary_to_schur(factors: &[u32], nvars: usize) -> Vec<(Partition, Int)> {
    use std::collections::BTreeMap;
    let mut acc: BTreeMap<Partition, Int> = BTreeMap::new();
    acc.insert(Partition::empty(), Int::one());
    for &k in factors {
        let mut next: BTreeMap<Partition, Int> = BTreeMap::new();
        for (lam, coeff) in &acc {
            for mu in pieri_column(lam, k, nvars) {
                *next.entry(mu).or_insert_with(Int::zero) += coeff;
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

/// Full ring product including products of two non-trivial Schur keys, as
/// long as one of them is a column (an elementary class); those are expanded
/// by the Pieri rule.
pub fn mul(a: &AmbientClass, b: &AmbientClass) -> Result<AmbientClass, BnError> {
    let nv = a.nvars();
    Ok(a.mul_with(b, &mut |x: &Partition, y: &Partition| {
        let (col, other) = if x.is_column() {
            (x, y)
        } else if y.is_column() {
            (y, x)
        } else {
            return Err(RingError::SchurProduct(x.clone(), y.clone()));
        };
        Ok(pieri_column(other, col.size(), nv)
            .into_iter()
            .map(|m| (m, Rat::one()))
            .collect())
    })?)
}

/// Integrates an ambient class of total degree `r+2` over the product of the
/// curve with `W`. Terms with an odd Kuenneth factor or without the curve
/// point class vanish; the rest push down to Schur-theta numbers on `W`.
pub fn integrate(p: BNParams, cls: &AmbientClass) -> Result<Rat, BnError> {
    let expected = p.r() + 2;
    if !cls.is_homogeneous_of(expected) {
        let found = cls
            .terms()
            .map(|(k, _)| k.degree())
            .find(|&d| d != expected)
            .unwrap_or(0);
        return Err(BnError::Ring(RingError::NotHomogeneous { expected, found }));
    }
    let mut total = Rat::zero();
    for (key, coeff) in cls.terms() {
        if key.c == 1 || key.e == 0 {
            continue;
        }
        total += coeff * eval_schur_theta(p, &key.m, key.t)?;
    }
    Ok(total)
}

/// One row of the degree-`r+1` monomial evaluation table.
#[derive(Clone, Debug)]
pub struct TableRow {
    /// Human-readable monomial, e.g. `x1^2 x2..xr * theta`.
    pub label: &'static str,
    pub partition: Partition,
    pub theta: u32,
    /// Value from the determinant/product evaluation.
    pub direct: Rat,
    /// Corrected closed-form value; must equal `direct`.
    pub closed: Rat,
    /// Closed-form value from the originally circulated table; differs from
    /// `closed` exactly on the flagged row.
    pub printed: Rat,
    /// True on the single row whose circulated closed form carries a
    /// misprint (a stray `/s` in place of `/2`).
    pub misprint: bool,
}

struct RowSpec {
    label: &'static str,
    min_r: u32,
    theta: u32,
    // (head parts, number of trailing ones as a function of r)
    shape: fn(u32) -> Vec<u32>,
    // closed-form factor multiplying the point count, as a function of (r, s)
    factor: fn(i64, i64) -> Rat,
    misprint: bool,
}

fn ones(head: &[u32], count: i64) -> Vec<u32> {
    assert!(count >= 0);
    let mut v = head.to_vec();
    v.extend(std::iter::repeat(1).take(count as usize));
    v
}

fn row_specs() -> Vec<RowSpec> {
    fn q(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }
    vec![
        RowSpec {
            label: "x1..x(r+1)",
            min_r: 1,
            theta: 0,
            shape: |r| ones(&[], r as i64 + 1),
            factor: |_, _| Rat::one(),
            misprint: false,
        },
        RowSpec {
            label: "x1^2 x2^2 x3..x(r-1)",
            min_r: 3,
            theta: 0,
            shape: |r| ones(&[2, 2], r as i64 - 3),
            factor: |r, s| {
                q(
                    s * (s + 1) * (r + 1) * (r + 1) * (r - 2) * (r + 2),
                    4 * (s + r) * (s + r + 1),
                )
            },
            misprint: false,
        },
        RowSpec {
            label: "x1^2 x2..xr",
            min_r: 1,
            theta: 0,
            shape: |r| ones(&[2], r as i64 - 1),
            factor: |r, s| q(r * (r + 2) * s, s + r + 1),
            misprint: false,
        },
        RowSpec {
            label: "x1^3 x2..x(r-1)",
            min_r: 2,
            theta: 0,
            shape: |r| ones(&[3], r as i64 - 2),
            factor: |r, s| {
                q(
                    r * (r - 1) * (r + 2) * (r + 3) * s * (s + 1),
                    4 * (s + r + 1) * (s + r + 2),
                )
            },
            misprint: false,
        },
        RowSpec {
            label: "x1..xr * theta",
            min_r: 1,
            theta: 1,
            shape: |r| ones(&[], r as i64),
            factor: |r, s| rat_i((r + 1) * s),
            misprint: false,
        },
        RowSpec {
            label: "x1^2 x2..x(r-1) * theta",
            min_r: 2,
            theta: 1,
            shape: |r| ones(&[2], r as i64 - 2),
            factor: |r, s| q((s + 1) * (r - 1) * (r + 2) * (r + 1) * s, 2 * (s + r + 1)),
            misprint: false,
        },
        RowSpec {
            label: "x1^2 x2^2 x3..x(r-2) * theta",
            min_r: 4,
            theta: 1,
            shape: |r| ones(&[2, 2], r as i64 - 4),
            factor: |r, s| {
                q(
                    (r - 3) * (r + 1) * (r + 2) * r * (s + 1) * (s + 2) * (r + 1) * s,
                    12 * (s + r + 1) * (s + r),
                )
            },
            misprint: false,
        },
        RowSpec {
            label: "x1^3 x2..x(r-2) * theta",
            min_r: 3,
            theta: 1,
            shape: |r| ones(&[3], r as i64 - 3),
            factor: |r, s| {
                q(
                    (r + 2) * (r + 3) * (r - 1) * (r - 2) * (s + 1) * (s + 2) * (r + 1) * s,
                    12 * (s + r + 1) * (s + r + 2),
                )
            },
            misprint: false,
        },
        RowSpec {
            label: "x1..x(r-1) * theta^2",
            min_r: 1,
            theta: 2,
            shape: |r| ones(&[], r as i64 - 1),
            factor: |r, s| q(r * (r + 1) * s * (s + 1), 2),
            misprint: true,
        },
        RowSpec {
            label: "x1^2 x2..x(r-2) * theta^2",
            min_r: 3,
            theta: 2,
            shape: |r| ones(&[2], r as i64 - 3),
            factor: |r, s| {
                q(
                    (r + 2) * (r - 2) * (s + 2) * r * (r + 1) * s * (s + 1),
                    3 * (s + r + 1) * 2,
                )
            },
            misprint: false,
        },
        RowSpec {
            label: "x1..x(r-2) * theta^3",
            min_r: 2,
            theta: 3,
            shape: |r| ones(&[], r as i64 - 2),
            factor: |r, s| q((r + 1) * r * (r - 1) * (s + 2) * (s + 1) * s, 6),
            misprint: false,
        },
    ]
}

/// Evaluates every applicable row of the degree-`r+1` monomial table, pairing
/// the direct determinant evaluation with the closed form. Exactly one row is
/// flagged with a corrected closed form; on that row `printed` records the
/// uncorrected value (`r(r+1)s(s+1)/s` times the point count instead of
/// `r(r+1)s(s+1)/2`). Rows that need more variables than `r+1` are skipped.
pub fn monomial_table(p: BNParams) -> Result<Vec<TableRow>, BnError> {
    let (r, s) = (p.r() as i64, p.s() as i64);
    let c = count_grd(p);
    let mut rows = Vec::new();
    for spec in row_specs() {
        if p.r() < spec.min_r {
            continue;
        }
        let partition = Partition::new((spec.shape)(p.r()));
        let direct = eval_schur_theta(p, &partition, spec.theta)?;
        let closed = (spec.factor)(r, s) * &c;
        let printed = if spec.misprint {
            // The uncorrected factor divides by s instead of 2.
            Rat::new(
                Int::from(r * (r + 1) * s * (s + 1)),
                Int::from(s),
            ) * &c
        } else {
            closed.clone()
        };
        rows.push(TableRow {
            label: spec.label,
            partition,
            theta: spec.theta,
            direct,
            closed,
            printed,
            misprint: spec.misprint,
        });
    }
    Ok(rows)
}

/// Genus of `W` for parameters `p`; a positive integer:
/// `1 + g! * s(r+1)/(s+r+1) * prod_{i=0}^r i!/(s+i)!` with `g = rs+s+1`.
pub fn genus_wrd(p: BNParams) -> Rat {
    let (r, s) = (p.r() as u64, p.s() as u64);
    let g = p.g_div() as u64;
    let mut v = Rat::from_integer(factorial(g));
    v *= Rat::new(Int::from(s * (r + 1)), Int::from(s + r + 1));
    for i in 0..=r {
        v *= Rat::new(factorial(i), factorial(s + i));
    }
    v += Rat::one();
    assert!(v.is_integer(), "genus_wrd must be an integer");
    v
}

/// Closed form of [`genus_wrd`] special to `r = 1`:
/// `1 + s/(s+1) * binomial(2s+2, s)`.
pub fn genus_wrd_rank_one(s: u32) -> Rat {
    let s = s as i64;
    Rat::one() + Rat::new(Int::from(s), Int::from(s + 1)) * crate::exact_core::binomial(2 * s + 2, s)
}
