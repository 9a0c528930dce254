//! Normal-form arithmetic in the graded ring of cohomology classes on the
//! product `C x Pic^d(C)` of a curve with its degree-`d` Picard variety.
//!
//! The ring is generated by the point class `eta` of the curve factor, the
//! Kuenneth cross term `gamma`, the theta class `theta`, and Schur-indexed
//! tautological classes (partitions with at most `r+1` parts). The relations
//! are `eta^2 = 0`, `gamma*eta = 0`, and `gamma^2 = -2*eta*theta`; they admit
//! the confluent normal form enforced here: every surviving key has
//! `eta`-exponent and `gamma`-exponent in `{0, 1}` and never both equal to 1.
//!
//! Schur keys are the only tautological basis stored; elementary classes
//! `c_k` are the column partitions `(1^k)` and products of two non-trivial
//! Schur keys must be routed through the Pieri expansion in [`crate::bn_numbers`].

use std::collections::BTreeMap;

use num::{One, Zero};
use thiserror::Error;

use crate::exact_core::{fmt_rat, rat_i, Partition, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("too many parts: partition {0} needs more than {1} variables")]
    TooManyParts(Partition, usize),
    #[error("expand via Pieri first: cannot multiply Schur keys {0} and {1} directly")]
    SchurProduct(Partition, Partition),
    #[error("chern difference index {0} out of range [{1}, {2}]")]
    ChernIndex(i64, i64, i64),
    #[error("class is not homogeneous of degree {expected}: found key of degree {found}")]
    NotHomogeneous { expected: u32, found: u32 },
}

/// The discrete parameters of the Brill-Noether setup: a rank `r >= 1` and an
/// index `s >= 2`, from which the curve genus, the degree, the divisor genus,
/// and the dimension of the variety of linear series are derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BNParams {
    r: u32,
    s: u32,
}

impl BNParams {
    /// Requires `r >= 1` and `s >= 2`.
    pub fn new(r: u32, s: u32) -> Option<Self> {
        (r >= 1 && s >= 2).then_some(BNParams { r, s })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Genus of the underlying curve: `r*s + s`.
    pub fn g_curve(&self) -> u32 {
        self.r * self.s + self.s
    }

    /// Degree of the linear series: `r*s + r + 1`.
    pub fn degree(&self) -> u32 {
        self.r * self.s + self.r + 1
    }

    /// Genus on which the divisor of interest lives: `r*s + s + 1`.
    pub fn g_div(&self) -> u32 {
        self.g_curve() + 1
    }

    /// Dimension of the variety of linear series, `r + 1`; also the number of
    /// Schur variables.
    pub fn dim_w(&self) -> u32 {
        self.r + 1
    }

    /// Number of Schur variables, `r + 1`.
    pub fn nvars(&self) -> usize {
        (self.r + 1) as usize
    }
}

/// A monomial key in normal form: `eta^e * gamma^c * theta^t * s_m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Key {
    pub e: u8,
    pub c: u8,
    pub t: u32,
    pub m: Partition,
}

impl Key {
    pub fn degree(&self) -> u32 {
        self.e as u32 + self.c as u32 + self.t + self.m.size()
    }
}

/// A class in the ambient graded ring, stored as a finite sum of normal-form
/// keys with non-zero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientClass {
    nvars: usize,
    terms: BTreeMap<Key, Rat>,
}

/// Applies the relations to a raw monomial. Returns the surviving normal-form
/// key and the sign/scale it picks up, or `None` if the monomial dies.
fn reduce_key(mut e: u32, mut c: u32, mut t: u32, m: Partition, mut coeff: Rat) -> Option<(Key, Rat)> {
    // gamma^2 = -2 * eta * theta
    while c >= 2 {
        c -= 2;
        e += 1;
        t += 1;
        coeff *= rat_i(-2);
    }
    // eta^2 = 0 and gamma * eta = 0
    if e >= 2 || (e >= 1 && c >= 1) {
        return None;
    }
    Some((
        Key {
            e: e as u8,
            c: c as u8,
            t,
            m,
        },
        coeff,
    ))
}

impl AmbientClass {
    pub fn zero(nvars: usize) -> Self {
        AmbientClass {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, 0, 0, 0, Partition::empty(), Rat::one()).unwrap()
    }

    pub fn eta(nvars: usize) -> Self {
        Self::monomial(nvars, 1, 0, 0, Partition::empty(), Rat::one()).unwrap()
    }

    pub fn gamma(nvars: usize) -> Self {
        Self::monomial(nvars, 0, 1, 0, Partition::empty(), Rat::one()).unwrap()
    }

    pub fn theta(nvars: usize) -> Self {
        Self::monomial(nvars, 0, 0, 1, Partition::empty(), Rat::one()).unwrap()
    }

    /// The Schur class of a partition.
    pub fn schur(nvars: usize, m: Partition) -> Result<Self, RingError> {
        Self::monomial(nvars, 0, 0, 0, m, Rat::one())
    }

    /// The `k`-th elementary class, i.e. the column partition `(1^k)`.
    /// Returns the zero class for `k` out of the range `0..=nvars`.
    pub fn elem(nvars: usize, k: i64) -> Self {
        if k < 0 || k > nvars as i64 {
            Self::zero(nvars)
        } else {
            Self::schur(nvars, Partition::column(k as u32)).unwrap()
        }
    }

    /// A single reduced monomial `coeff * eta^e * gamma^c * theta^t * s_m`.
    pub fn monomial(
        nvars: usize,
        e: u32,
        c: u32,
        t: u32,
        m: Partition,
        coeff: Rat,
    ) -> Result<Self, RingError> {
        Self::from_terms(nvars, vec![(e, c, t, m, coeff)])
    }

    /// Builds the reduced normal form of a sum of raw monomials.
    pub fn from_terms(
        nvars: usize,
        parts: Vec<(u32, u32, u32, Partition, Rat)>,
    ) -> Result<Self, RingError> {
        let mut cls = Self::zero(nvars);
        for (e, c, t, m, coeff) in parts {
            if m.len() > nvars {
                return Err(RingError::TooManyParts(m, nvars));
            }
            if let Some((key, coeff)) = reduce_key(e, c, t, m, coeff) {
                cls.accumulate(key, coeff);
            }
        }
        Ok(cls)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over the normal-form terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Rat)> {
        self.terms.iter()
    }

    /// The coefficient of a normal-form key (zero if absent).
    pub fn coeff(&self, e: u8, c: u8, t: u32, m: &Partition) -> Rat {
        self.terms
            .get(&Key {
                e,
                c,
                t,
                m: m.clone(),
            })
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn accumulate(&mut self, key: Key, coeff: Rat) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.accumulate(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat_i(-1)))
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        if factor.is_zero() {
            return Self::zero(self.nvars);
        }
        AmbientClass {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * factor))
                .collect(),
        }
    }

    /// Ring product. Products of two non-trivial Schur keys are refused; route
    /// those through [`crate::bn_numbers::mul`], which performs the Pieri
    /// expansion.
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.mul_with(other, &mut |a: &Partition, b: &Partition| {
            Err(RingError::SchurProduct(a.clone(), b.clone()))
        })
    }

    /// Bilinear product with a caller-supplied expansion for products of two
    /// non-trivial Schur keys. The expansion returns the Schur-basis terms of
    /// `s_a * s_b` (already truncated to at most `nvars` parts).
    pub fn mul_with(
        &self,
        other: &Self,
        schur_mul: &mut dyn FnMut(&Partition, &Partition) -> Result<Vec<(Partition, Rat)>, RingError>,
    ) -> Result<Self, RingError> {
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
        let mut out = Self::zero(self.nvars);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let coeff = va * vb;
                let e = ka.e as u32 + kb.e as u32;
                let c = ka.c as u32 + kb.c as u32;
                let t = ka.t + kb.t;
                let schur_terms: Vec<(Partition, Rat)> = if ka.m.is_empty() {
                    vec![(kb.m.clone(), Rat::one())]
                } else if kb.m.is_empty() {
                    vec![(ka.m.clone(), Rat::one())]
                } else {
                    schur_mul(&ka.m, &kb.m)?
                };
                for (m, mult) in schur_terms {
                    if let Some((key, coeff)) = reduce_key(e, c, t, m, &coeff * mult) {
                        out.accumulate(key, coeff);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `true` when every term has the given total degree.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|k| k.degree() == degree)
    }
}

impl std::fmt::Display for AmbientClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_rat(v))?;
            if k.e > 0 {
                write!(f, "*eta")?;
            }
            if k.c > 0 {
                write!(f, "*gamma")?;
            }
            if k.t > 0 {
                write!(f, "*theta^{}", k.t)?;
            }
            if !k.m.is_empty() {
                write!(f, "*s{}", k.m)?;
            }
        }
        Ok(())
    }
}

/// The twisting class `q*eta + w*gamma` appearing in the degeneracy-locus
/// Chern-class formulas below.
fn linear_eta_gamma(nvars: usize, q: i64, w: i64) -> AmbientClass {
    AmbientClass::from_terms(
        nvars,
        vec![
            (1, 0, 0, Partition::empty(), rat_i(q)),
            (0, 1, 0, Partition::empty(), rat_i(w)),
        ],
    )
    .unwrap()
}

/// Shared shape of the jet and node difference-bundle Chern classes.
///
/// With `L = q*eta + w*gamma` and `h` the eta-theta coefficient, the three
/// recorded classes are
/// * `k = r`:   `c_r + h*c_{r-2}*eta*theta + L*c_{r-1}`  (the locus class),
/// * `k = r+1`: `c_{r+1} + h*c_{r-1}*eta*theta + L*c_r`,
/// * `k = r+2`: `L*c_{r+1} + h*c_r*eta*theta`,
/// where `c_j` is the `j`-th elementary class (zero out of range `0..=r+1`).
fn chern_difference(p: BNParams, k: i64, q: i64, w: i64, h: i64) -> Result<AmbientClass, RingError> {
    let r = p.r() as i64;
    if k < r || k > r + 2 {
        return Err(RingError::ChernIndex(k, r, r + 2));
    }
    let nv = p.nvars();
    let lin = linear_eta_gamma(nv, q, w);
    let etatheta =
        AmbientClass::monomial(nv, 1, 0, 1, Partition::empty(), rat_i(h)).unwrap();
    let (top, mid, low) = if k == r + 2 {
        (None, r + 1, r)
    } else {
        (Some(k), k - 1, k - 2)
    };
    let mut out = AmbientClass::zero(nv);
    if let Some(top) = top {
        out = out.add(&AmbientClass::elem(nv, top));
    }
    out = out.add(&lin.mul(&AmbientClass::elem(nv, mid))?);
    out = out.add(&etatheta.mul(&AmbientClass::elem(nv, low))?);
    Ok(out)
}

/// Chern classes `c_k` (for `k` in `r..=r+2`) of the difference between the
/// pulled-back dual tautological bundle and the dual first-jet bundle. The
/// `k = r` case is the class of the cuspidal-pencil surface inside
/// `C x W^r_d(C)`.
pub fn chern_jet_difference(p: BNParams, k: i64) -> Result<AmbientClass, RingError> {
    let (r, s) = (p.r() as i64, p.s() as i64);
    chern_difference(p, k, 4 * r * s + 2 * r + 2 * s, 2, -6)
}

/// Chern classes `c_k` (for `k` in `r..=r+2`) of the difference between the
/// pulled-back dual tautological bundle and the dual of the rank-2 evaluation
/// bundle of the nodal construction. The `k = r` case is the class of the
/// nodal-pencil surface inside `C x W^r_d(C)`.
pub fn chern_node_difference(p: BNParams, k: i64) -> Result<AmbientClass, RingError> {
    let (r, s) = (p.r() as i64, p.s() as i64);
    chern_difference(p, k, r * s + r, 1, -2)
}

/// Canonical class of the variety of linear series, as the coefficient pair
/// `(theta, c_1)`: `(r+1) * theta + (s-r-2) * c_1`.
pub fn canonical_class_w(p: BNParams) -> (Rat, Rat) {
    let (r, s) = (p.r() as i64, p.s() as i64);
    (rat_i(r + 1), rat_i(s - r - 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    fn p12() -> BNParams {
        BNParams::new(1, 2).unwrap()
    }

    #[test]
    fn derived_parameters() {
        let p = p12();
        assert_eq!(p.g_curve(), 4);
        assert_eq!(p.degree(), 4);
        assert_eq!(p.g_div(), 5);
        assert_eq!(p.dim_w(), 2);
        assert!(BNParams::new(0, 2).is_none());
        assert!(BNParams::new(1, 1).is_none());
    }

    #[test]
    fn relations_reduce() {
        // gamma^2 -> -2 eta theta
        let c = AmbientClass::monomial(2, 0, 2, 0, Partition::empty(), rat_i(1)).unwrap();
        assert_eq!(
            c,
            AmbientClass::monomial(2, 1, 0, 1, Partition::empty(), rat_i(-2)).unwrap()
        );
        // eta^2 -> 0
        let c = AmbientClass::monomial(2, 2, 0, 0, Partition::empty(), rat_i(5)).unwrap();
        assert!(c.is_zero());
        // gamma * eta -> 0
        let c = AmbientClass::monomial(2, 1, 1, 0, Partition::empty(), rat_i(3)).unwrap();
        assert!(c.is_zero());
        // gamma^3 -> gamma * (-2 eta theta) -> 0
        let c = AmbientClass::monomial(2, 0, 3, 0, Partition::empty(), rat_i(1)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn too_many_parts_rejected() {
        let err = AmbientClass::schur(2, Partition::new(vec![1, 1, 1])).unwrap_err();
        assert!(matches!(err, RingError::TooManyParts(_, 2)));
    }

    #[test]
    fn first_chern_of_poincare_squares_to_minus_two_eta_theta() {
        // (d*eta + gamma)^2 = -2 eta theta for any d: the d^2 eta^2 and the
        // cross terms die, only gamma^2 survives.
        let d = 7;
        let c1p = linear_eta_gamma(2, d, 1);
        let sq = c1p.mul(&c1p).unwrap();
        assert_eq!(
            sq,
            AmbientClass::monomial(2, 1, 0, 1, Partition::empty(), rat_i(-2)).unwrap()
        );
    }

    #[test]
    fn general_linear_eta_gamma_product() {
        // (a*eta + 2*gamma) * (b*eta + 2*gamma) = -8 eta theta
        let a = linear_eta_gamma(2, 11, 2);
        let b = linear_eta_gamma(2, -3, 2);
        assert_eq!(
            a.mul(&b).unwrap(),
            AmbientClass::monomial(2, 1, 0, 1, Partition::empty(), rat_i(-8)).unwrap()
        );
    }

    #[test]
    fn theta_powers_multiply() {
        let t = AmbientClass::theta(2);
        let t2 = t.mul(&t).unwrap();
        assert_eq!(
            t2,
            AmbientClass::monomial(2, 0, 0, 2, Partition::empty(), rat_i(1)).unwrap()
        );
    }

    #[test]
    fn schur_times_schur_refused() {
        let a = AmbientClass::schur(3, Partition::new(vec![2, 1])).unwrap();
        let b = AmbientClass::schur(3, Partition::new(vec![1])).unwrap();
        assert!(matches!(a.mul(&b), Err(RingError::SchurProduct(_, _))));
    }

    #[test]
    fn reduction_is_confluent_on_random_products() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        for _ in 0..100 {
            let mut gen = |max_e: u32| {
                AmbientClass::from_terms(
                    2,
                    (0..3)
                        .map(|_| {
                            (
                                rng.gen_range(0..=max_e),
                                rng.gen_range(0..3),
                                rng.gen_range(0..2),
                                Partition::empty(),
                                rat(rng.gen_range(-5..6), rng.gen_range(1..4)),
                            )
                        })
                        .collect(),
                )
                .unwrap()
            };
            let (a, b, c) = (gen(1), gen(1), gen(1));
            // Associativity of the reduced product is a proxy for confluence:
            // the two orders apply the rewrite rules in different sequences.
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            // Distributivity over addition.
            let lhs = a.mul(&b.add(&c)).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jet_difference_small_rank() {
        let p = p12();
        let nv = p.nvars();
        // k = r at (1,2): c_1 + (14 eta + 2 gamma), since c_{-1} = 0, c_0 = 1.
        let x = chern_jet_difference(p, 1).unwrap();
        let expected = AmbientClass::from_terms(
            nv,
            vec![
                (0, 0, 0, Partition::new(vec![1]), rat_i(1)),
                (1, 0, 0, Partition::empty(), rat_i(14)),
                (0, 1, 0, Partition::empty(), rat_i(2)),
            ],
        )
        .unwrap();
        assert_eq!(x, expected);

        // k = r+1: c_2 - 6 eta theta + (14 eta + 2 gamma) c_1.
        let x = chern_jet_difference(p, 2).unwrap();
        let expected = AmbientClass::from_terms(
            nv,
            vec![
                (0, 0, 0, Partition::new(vec![1, 1]), rat_i(1)),
                (1, 0, 1, Partition::empty(), rat_i(-6)),
                (1, 0, 0, Partition::new(vec![1]), rat_i(14)),
                (0, 1, 0, Partition::new(vec![1]), rat_i(2)),
            ],
        )
        .unwrap();
        assert_eq!(x, expected);

        // k = r+2: (14 eta + 2 gamma) c_2 - 6 c_1 eta theta.
        let x = chern_jet_difference(p, 3).unwrap();
        let expected = AmbientClass::from_terms(
            nv,
            vec![
                (1, 0, 0, Partition::new(vec![1, 1]), rat_i(14)),
                (0, 1, 0, Partition::new(vec![1, 1]), rat_i(2)),
                (1, 0, 1, Partition::new(vec![1]), rat_i(-6)),
            ],
        )
        .unwrap();
        assert_eq!(x, expected);

        assert!(chern_jet_difference(p, 0).is_err());
        assert!(chern_jet_difference(p, 4).is_err());
    }

    #[test]
    fn node_difference_small_rank() {
        let p = p12();
        let nv = p.nvars();
        // k = r at (1,2): c_1 + (3 eta + gamma).
        let y = chern_node_difference(p, 1).unwrap();
        let expected = AmbientClass::from_terms(
            nv,
            vec![
                (0, 0, 0, Partition::new(vec![1]), rat_i(1)),
                (1, 0, 0, Partition::empty(), rat_i(3)),
                (0, 1, 0, Partition::empty(), rat_i(1)),
            ],
        )
        .unwrap();
        assert_eq!(y, expected);

        // k = r+1: c_2 - 2 eta theta + (3 eta + gamma) c_1.
        let y = chern_node_difference(p, 2).unwrap();
        let expected = AmbientClass::from_terms(
            nv,
            vec![
                (0, 0, 0, Partition::new(vec![1, 1]), rat_i(1)),
                (1, 0, 1, Partition::empty(), rat_i(-2)),
                (1, 0, 0, Partition::new(vec![1]), rat_i(3)),
                (0, 1, 0, Partition::new(vec![1]), rat_i(1)),
            ],
        )
        .unwrap();
        assert_eq!(y, expected);

        // k = r+2: (3 eta + gamma) c_2 - 2 c_1 eta theta.
        let y = chern_node_difference(p, 3).unwrap();
        let expected = AmbientClass::from_terms(
            nv,
            vec![
                (1, 0, 0, Partition::new(vec![1, 1]), rat_i(3)),
                (0, 1, 0, Partition::new(vec![1, 1]), rat_i(1)),
                (1, 0, 1, Partition::new(vec![1]), rat_i(-2)),
            ],
        )
        .unwrap();
        assert_eq!(y, expected);
    }

    #[test]
    fn canonical_class_pairs() {
        assert_eq!(canonical_class_w(p12()), (rat_i(2), rat_i(-1)));
        assert_eq!(
            canonical_class_w(BNParams::new(2, 2).unwrap()),
            (rat_i(3), rat_i(-2))
        );
        assert_eq!(
            canonical_class_w(BNParams::new(1, 3).unwrap()),
            (rat_i(2), rat_i(0))
        );
    }
}
