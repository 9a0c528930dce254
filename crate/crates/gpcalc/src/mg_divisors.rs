//! Divisor classes on the moduli space of genus-`g` stable curves: slope
//! computation, test-curve pairings, and a registry of named classes.
//!
//! A divisor class is written `a*lambda - sum_j b_j*delta_j` with `j` running
//! over `0..=g/2`. Boundary coefficients carry a knowledge state: many classes
//! are only pinned down on `lambda`, `delta_0`, `delta_1`, with the remaining
//! coefficients known only to be at least as large as the printed ones.

use num::Zero;
use thiserror::Error;

use crate::exact_core::{factorial, fmt_rat, rat_i, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DivisorError {
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
    #[error("invalid boundary index {j} for genus {g}")]
    InvalidIndex { j: u32, g: u32 },
    #[error("minimum coefficient ambiguous: a lower bound lies below the exact minimum")]
    MinimumAmbiguous,
    #[error("not of effective-normal form (non-positive coefficient)")]
    NotEffectiveNormalForm,
    #[error("coefficient delta_{0} is not exact")]
    CoefficientNotExact(u32),
    #[error("unknown registry name {0:?}")]
    UnknownName(String),
}

/// Knowledge state of a single boundary coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Exact(Rat),
    /// The coefficient is only known to be `>=` the stored value.
    LowerBound(Rat),
    Unknown,
}

impl Coeff {
    pub fn exact_i(n: i64) -> Coeff {
        Coeff::Exact(rat_i(n))
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Coeff::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// Scalar multiple, degrading knowledge monotonically: a lower bound
    /// survives only a non-negative scalar (a negative one would flip it into
    /// an upper bound, which this type does not represent).
    pub fn scale(&self, c: &Rat) -> Coeff {
        if c.is_zero() {
            return Coeff::Exact(Rat::zero());
        }
        match self {
            Coeff::Exact(v) => Coeff::Exact(v * c),
            Coeff::LowerBound(v) if c > &Rat::zero() => Coeff::LowerBound(v * c),
            _ => Coeff::Unknown,
        }
    }

    /// Sum, degrading knowledge monotonically.
    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a + b),
            (Coeff::Unknown, _) | (_, Coeff::Unknown) => Coeff::Unknown,
            (a, b) => {
                let (va, vb) = match (a, b) {
                    (Coeff::Exact(x) | Coeff::LowerBound(x), Coeff::Exact(y) | Coeff::LowerBound(y)) => (x, y),
                    _ => unreachable!(),
                };
                Coeff::LowerBound(va + vb)
            }
        }
    }
}

impl std::fmt::Display for Coeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coeff::Exact(v) => write!(f, "{}", fmt_rat(v)),
            Coeff::LowerBound(v) => write!(f, ">={}", fmt_rat(v)),
            Coeff::Unknown => write!(f, "?"),
        }
    }
}

/// A divisor class `lambda * λ - sum_j delta[j] * δ_j` on the moduli space of
/// genus-`g` stable curves; `delta` has length `g/2 + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgDivisorClass {
    g: u32,
    lambda: Rat,
    delta: Vec<Coeff>,
}

impl MgDivisorClass {
    pub fn new(g: u32, lambda: Rat, delta: Vec<Coeff>) -> Self {
        assert!(g >= 2, "genus must be at least 2");
        assert_eq!(
            delta.len(),
            (g / 2 + 1) as usize,
            "delta must have one entry for each j in 0..=g/2"
        );
        MgDivisorClass { g, lambda, delta }
    }

    /// Class with all-exact boundary coefficients given as integers.
    pub fn exact_i(g: u32, lambda: i64, delta: &[i64]) -> Self {
        Self::new(
            g,
            rat_i(lambda),
            delta.iter().map(|&b| Coeff::exact_i(b)).collect(),
        )
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn delta(&self, j: u32) -> &Coeff {
        &self.delta[j as usize]
    }

    pub fn deltas(&self) -> &[Coeff] {
        &self.delta
    }

    pub fn scale(&self, c: &Rat) -> Self {
        MgDivisorClass {
            g: self.g,
            lambda: &self.lambda * c,
            delta: self.delta.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, DivisorError> {
        if self.g != other.g {
            return Err(DivisorError::GenusMismatch(self.g, other.g));
        }
        Ok(MgDivisorClass {
            g: self.g,
            lambda: &self.lambda + &other.lambda,
            delta: self
                .delta
                .iter()
                .zip(&other.delta)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }
}

impl std::fmt::Display for MgDivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*lambda", fmt_rat(&self.lambda))?;
        for (j, b) in self.delta.iter().enumerate() {
            write!(f, " - ({})*delta_{}", b, j)?;
        }
        Ok(())
    }
}

/// Slope `a / min_j b_j` of an effective-normal-form class.
///
/// The minimum runs over the exact boundary coefficients. Lower-bound
/// coefficients must not undercut that minimum (else the true minimum is
/// ambiguous). Coefficients recorded as plain `Unknown` are tail coefficients
/// of classes whose source asserts `b_j >= b_1` for `j >= 2`; they are
/// accepted under that documented minimality assumption.
pub fn slope(d: &MgDivisorClass) -> Result<Rat, DivisorError> {
    if d.lambda <= Rat::zero() {
        return Err(DivisorError::NotEffectiveNormalForm);
    }
    if d.delta[0].exact().is_none() {
        return Err(DivisorError::CoefficientNotExact(0));
    }
    let mut min: Option<&Rat> = None;
    for b in &d.delta {
        if let Coeff::Exact(v) = b {
            if v <= &Rat::zero() {
                return Err(DivisorError::NotEffectiveNormalForm);
            }
            if min.map_or(true, |m| v < m) {
                min = Some(v);
            }
        }
    }
    let min = min.expect("delta_0 is exact");
    for b in &d.delta {
        if let Coeff::LowerBound(v) = b {
            if v < min {
                return Err(DivisorError::MinimumAmbiguous);
            }
        }
    }
    Ok(&d.lambda / min)
}

/// Intersection numbers of a one-parameter test family with the generators of
/// the Picard group of the moduli space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestCurveVector {
    pub g: u32,
    pub dot_lambda: Rat,
    pub dot_delta: Vec<Rat>,
}

/// The standard test curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestCurve {
    /// Irreducible nodal curves: a fixed genus `g-1` curve with one moving
    /// point glued to one fixed point;
    /// `(lambda, delta_0, delta_1) = (0, -(2g-2), 1)`.
    C0,
    /// Elliptic tail moving family: `delta_1 -> -(2g-4)`.
    C1,
    /// Genus-`j` tail family, `j >= 2`: `delta_j -> -2j+2`.
    Cj(u32),
    /// Pencil of plane cubics glued to a fixed genus `g-1` curve:
    /// `(lambda, delta_0, delta_1) = (1, 12, -1)`.
    R,
}

/// The pairing vector of a test curve at genus `g`.
pub fn test_curve(name: TestCurve, g: u32) -> Result<TestCurveVector, DivisorError> {
    let len = (g / 2 + 1) as usize;
    let mut dot_delta = vec![Rat::zero(); len];
    let mut dot_lambda = Rat::zero();
    match name {
        TestCurve::C0 | TestCurve::Cj(0) => {
            dot_delta[0] = rat_i(-(2 * g as i64 - 2));
            dot_delta[1] = rat_i(1);
        }
        TestCurve::C1 | TestCurve::Cj(1) => {
            dot_delta[1] = rat_i(-(2 * g as i64 - 4));
        }
        TestCurve::Cj(j) => {
            if j as usize >= len {
                return Err(DivisorError::InvalidIndex { j, g });
            }
            dot_delta[j as usize] = rat_i(-2 * j as i64 + 2);
        }
        TestCurve::R => {
            dot_lambda = rat_i(1);
            dot_delta[0] = rat_i(12);
            dot_delta[1] = rat_i(-1);
        }
    }
    Ok(TestCurveVector {
        g,
        dot_lambda,
        dot_delta,
    })
}

/// Bilinear pairing of a class with a test family:
/// `a*(T.lambda) - sum_j b_j*(T.delta_j)`.
///
/// Every boundary coefficient hit by a non-zero entry of `T` must be exact.
pub fn pair(d: &MgDivisorClass, t: &TestCurveVector) -> Result<Rat, DivisorError> {
    if d.g != t.g {
        return Err(DivisorError::GenusMismatch(d.g, t.g));
    }
    let mut total = &d.lambda * &t.dot_lambda;
    for (j, (b, td)) in d.delta.iter().zip(&t.dot_delta).enumerate() {
        if td.is_zero() {
            continue;
        }
        match b {
            Coeff::Exact(v) => total -= v * td,
            _ => return Err(DivisorError::CoefficientNotExact(j as u32)),
        }
    }
    Ok(total)
}

/// Named divisor classes, exactly as printed in the sources they come from.
///
/// `Diaz_4` is recorded through its slope `44/5` only; its boundary tail is
/// stored as lower bounds so that `slope` still evaluates. `GP_5_4` is the
/// combination `2 * M1_5_3 + GP10_5_4`.
pub fn registry(name: &str) -> Result<MgDivisorClass, DivisorError> {
    Ok(match name {
        "M1_3_2" => MgDivisorClass::exact_i(3, 9, &[1, 3]),
        "GP_4_3" => MgDivisorClass::exact_i(4, 34, &[4, 14, 18]),
        "Diaz_4" => MgDivisorClass::new(
            4,
            rat_i(44),
            vec![
                Coeff::exact_i(5),
                Coeff::LowerBound(rat_i(5)),
                Coeff::LowerBound(rat_i(5)),
            ],
        ),
        "M1_5_3" => MgDivisorClass::exact_i(5, 8, &[1, 4, 6]),
        "GP10_5_4" => MgDivisorClass::exact_i(5, 33, &[4, 15, 21]).scale(&rat_i(4)),
        "GP_5_4" => MgDivisorClass::exact_i(5, 148, &[18, 68, 96]),
        "M1_7_4" => MgDivisorClass::exact_i(7, 15, &[2, 9, 15, 18]),
        "GP_7_5" => MgDivisorClass::exact_i(7, 201, &[26, 111, 177, 198]).scale(&rat_i(4)),
        "K10" => MgDivisorClass::exact_i(10, 7, &[1, 5, 9, 12, 14, 15]),
        _ => return Err(DivisorError::UnknownName(name.to_string())),
    })
}

/// Names accepted by [`registry`], in display order.
pub const REGISTRY_NAMES: [&str; 9] = [
    "M1_3_2", "GP_4_3", "Diaz_4", "M1_5_3", "GP10_5_4", "GP_5_4", "M1_7_4", "GP_7_5", "K10",
];

/// Class of the pencil locus on genus `2s+1`:
/// `(2s-2)!/((s+1)!(s-1)!) * (6(s+2)λ - (s+1)δ_0 - 6sδ_1 - ...)`,
/// with only the `λ`, `δ_0`, `δ_1` coefficients printed; the tail is Unknown.
pub fn bn_pencil_class(s: u32) -> MgDivisorClass {
    assert!(s >= 2);
    let g = 2 * s + 1;
    let s = s as u64;
    let pre = Rat::new(
        factorial(2 * s - 2),
        factorial(s + 1) * factorial(s - 1),
    );
    let mut delta = vec![
        Coeff::Exact(rat_i(s as i64 + 1) * &pre),
        Coeff::Exact(rat_i(6 * s as i64) * &pre),
    ];
    delta.resize((g / 2 + 1) as usize, Coeff::Unknown);
    MgDivisorClass::new(g, rat_i(6 * (s as i64 + 2)) * &pre, delta)
}

/// `a - 12 b_0 + b_1`, the elliptic-pencil relation; zero on classes whose
/// restriction to the elliptic-tail pencil vanishes.
pub fn elliptic_pencil_relation(d: &MgDivisorClass) -> Result<Rat, DivisorError> {
    pair(d, &test_curve(TestCurve::R, d.g())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    #[test]
    fn slope_examples() {
        assert_eq!(slope(&registry("GP10_5_4").unwrap()).unwrap(), rat(33, 4));
        assert_eq!(slope(&registry("K10").unwrap()).unwrap(), rat_i(7));
        let d = MgDivisorClass::new(
            5,
            rat_i(148),
            vec![
                Coeff::exact_i(18),
                Coeff::exact_i(68),
                Coeff::LowerBound(rat_i(68)),
            ],
        );
        assert_eq!(slope(&d).unwrap(), rat(74, 9));
    }

    #[test]
    fn slope_errors() {
        // Lower bound below the exact minimum: ambiguous.
        let d = MgDivisorClass::new(
            5,
            rat_i(10),
            vec![
                Coeff::exact_i(2),
                Coeff::LowerBound(rat_i(1)),
                Coeff::Unknown,
            ],
        );
        assert_eq!(slope(&d), Err(DivisorError::MinimumAmbiguous));
        // Non-positive exact coefficient.
        let d = MgDivisorClass::exact_i(4, 10, &[1, -1, 2]);
        assert_eq!(slope(&d), Err(DivisorError::NotEffectiveNormalForm));
        // delta_0 must be exact.
        let d = MgDivisorClass::new(
            4,
            rat_i(10),
            vec![Coeff::Unknown, Coeff::exact_i(1), Coeff::exact_i(1)],
        );
        assert_eq!(slope(&d), Err(DivisorError::CoefficientNotExact(0)));
    }

    #[test]
    fn test_curve_examples() {
        let c0 = test_curve(TestCurve::C0, 5).unwrap();
        assert_eq!(c0.dot_lambda, rat_i(0));
        assert_eq!(c0.dot_delta, vec![rat_i(-8), rat_i(1), rat_i(0)]);
        let c1 = test_curve(TestCurve::C1, 5).unwrap();
        assert_eq!(c1.dot_delta, vec![rat_i(0), rat_i(-6), rat_i(0)]);
        let r = test_curve(TestCurve::R, 5).unwrap();
        assert_eq!(r.dot_lambda, rat_i(1));
        assert_eq!(r.dot_delta, vec![rat_i(12), rat_i(-1), rat_i(0)]);
        let c2 = test_curve(TestCurve::Cj(2), 7).unwrap();
        assert_eq!(c2.dot_delta, vec![rat_i(0), rat_i(0), rat_i(-2), rat_i(0)]);
        assert!(test_curve(TestCurve::Cj(4), 5).is_err());
    }

    #[test]
    fn pair_examples() {
        let gp = registry("GP_5_4").unwrap();
        assert_eq!(
            pair(&gp, &test_curve(TestCurve::C1, 5).unwrap()).unwrap(),
            rat_i(408)
        );
        assert_eq!(
            pair(&gp, &test_curve(TestCurve::C0, 5).unwrap()).unwrap(),
            rat_i(76)
        );
        assert_eq!(
            pair(&gp, &test_curve(TestCurve::R, 5).unwrap()).unwrap(),
            rat_i(0)
        );
        // A needed-but-unknown coefficient is an error.
        let d = bn_pencil_class(3);
        assert!(pair(&d, &test_curve(TestCurve::Cj(2), 7).unwrap()).is_err());
    }

    #[test]
    fn pairing_identities() {
        // pair(D,R) = a - 12 b0 + b1; pair(D,C0) = (2g-2) b0 - b1;
        // pair(D,C1) = (2g-4) b1.
        for name in ["M1_3_2", "GP_4_3", "M1_5_3", "GP_5_4", "M1_7_4", "K10"] {
            let d = registry(name).unwrap();
            let g = d.g() as i64;
            let a = d.lambda().clone();
            let b0 = d.delta(0).exact().unwrap().clone();
            let b1 = d.delta(1).exact().unwrap().clone();
            assert_eq!(
                pair(&d, &test_curve(TestCurve::R, d.g()).unwrap()).unwrap(),
                &a - rat_i(12) * &b0 + &b1
            );
            assert_eq!(
                pair(&d, &test_curve(TestCurve::C0, d.g()).unwrap()).unwrap(),
                rat_i(2 * g - 2) * &b0 - &b1
            );
            assert_eq!(
                pair(&d, &test_curve(TestCurve::C1, d.g()).unwrap()).unwrap(),
                rat_i(2 * g - 4) * &b1
            );
        }
    }

    #[test]
    fn registry_matches_printed_classes() {
        let m = registry("M1_3_2").unwrap();
        assert_eq!(m.lambda(), &rat_i(9));
        assert_eq!(m.delta(1), &Coeff::exact_i(3));
        let gp75 = registry("GP_7_5").unwrap();
        assert_eq!(gp75.lambda(), &rat_i(804));
        assert_eq!(gp75.delta(3), &Coeff::exact_i(792));
        assert!(registry("nope").is_err());
    }

    #[test]
    fn registry_small_genus_slopes() {
        // Slopes of the effective-cone witnesses at g = 3, 4, 5, 7, 10.
        assert_eq!(slope(&registry("M1_3_2").unwrap()).unwrap(), rat_i(9));
        assert_eq!(slope(&registry("GP_4_3").unwrap()).unwrap(), rat(17, 2));
        assert_eq!(slope(&registry("M1_5_3").unwrap()).unwrap(), rat_i(8));
        assert_eq!(slope(&registry("M1_7_4").unwrap()).unwrap(), rat(15, 2));
        assert_eq!(slope(&registry("K10").unwrap()).unwrap(), rat_i(7));
        // Moving-slope witnesses.
        assert_eq!(slope(&registry("Diaz_4").unwrap()).unwrap(), rat(44, 5));
        assert_eq!(slope(&registry("GP_7_5").unwrap()).unwrap(), rat(201, 26));
    }

    #[test]
    fn bn_pencil_class_examples() {
        let d = bn_pencil_class(2);
        assert_eq!(d.lambda(), &rat_i(8));
        assert_eq!(d.delta(0), &Coeff::exact_i(1));
        assert_eq!(d.delta(1), &Coeff::exact_i(4));
        assert_eq!(d.delta(2), &Coeff::Unknown);
        let d = bn_pencil_class(3);
        assert_eq!(d.lambda(), &rat_i(15));
        assert_eq!(d.delta(0), &Coeff::exact_i(2));
        assert_eq!(d.delta(1), &Coeff::exact_i(9));
        // Agreement with the genus-7 registry class on the printed entries.
        let m = registry("M1_7_4").unwrap();
        assert_eq!(d.lambda(), m.lambda());
        assert_eq!(d.delta(0), m.delta(0));
        assert_eq!(d.delta(1), m.delta(1));
    }

    #[test]
    fn bn_pencil_slope_closed_form() {
        for s in 2..=12u32 {
            let got = slope(&bn_pencil_class(s)).unwrap();
            let g = 2 * s as i64 + 1;
            assert_eq!(got, rat_i(6) + rat(12, g + 1));
        }
    }

    #[test]
    fn coefficient_arithmetic_degrades_monotonically() {
        let e = Coeff::exact_i(3);
        let lb = Coeff::LowerBound(rat_i(2));
        assert_eq!(e.add(&lb), Coeff::LowerBound(rat_i(5)));
        assert_eq!(e.add(&Coeff::Unknown), Coeff::Unknown);
        assert_eq!(lb.scale(&rat_i(2)), Coeff::LowerBound(rat_i(4)));
        assert_eq!(lb.scale(&rat_i(-2)), Coeff::Unknown);
        assert_eq!(Coeff::Unknown.scale(&rat_i(0)), Coeff::Exact(rat_i(0)));
        // Linear combination with a negative scalar on a lower bound.
        let d1 = bn_pencil_class(2);
        let scaled = d1.scale(&rat_i(-1));
        assert_eq!(scaled.delta(2), &Coeff::Unknown);
        assert_eq!(scaled.delta(0), &Coeff::exact_i(-1));
    }

    #[test]
    fn gp_5_4_decomposition() {
        // GP_5_4 = 2 * M1_5_3 + GP10_5_4 on all coefficients.
        let lhs = registry("GP_5_4").unwrap();
        let rhs = registry("M1_5_3")
            .unwrap()
            .scale(&rat_i(2))
            .add(&registry("GP10_5_4").unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
