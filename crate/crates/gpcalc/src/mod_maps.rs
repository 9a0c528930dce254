//! Divisor arithmetic of two maps between moduli spaces: the map sending a
//! genus `2s+1` curve to the curve parametrizing its special pencils, and the
//! map from genus-5 curves to six-dimensional Prym data.
//!
//! For the first map the module records the pushforwards of the standard test
//! curves, the pullbacks of the boundary generators, and the closed slope
//! formula for pullbacks of slope-`c` normalized classes, all of which must
//! satisfy the projection formula against each other. For the second map it
//! records the tautological first Chern classes, the ramification divisor
//! class, and its pullback to genus 5.

use num::Zero;
use thiserror::Error;

use crate::ambient_ring::BNParams;
use crate::bn_numbers::count_grd;
use crate::exact_core::{binomial, rat, rat_i, Int, Rat};
use crate::gp_pipeline::gp_closed_form;
use crate::mg_divisors::{pair, test_curve, Coeff, DivisorError, MgDivisorClass, TestCurve};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error("outside slope-c cone: the delta_0 coefficient of the pullback is not positive")]
    OutsideSlopeCone,
}

fn q(n: i128, d: i128) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Degrees of the pushforward of a test curve against the boundary
/// generators of the target space; entries for `delta'_j`, `j >= 2`, all
/// vanish and are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardVector {
    pub lambda: Rat,
    pub delta0: Rat,
    pub delta1: Rat,
}

/// Pushforward degrees of the test curves `R`, `C0`, `C1` at parameter `s`
/// (source genus `2s+1`). The `delta'_0` entries of `C0` and `C1` are the
/// pairings of the test curves with the rank-one Gieseker-Petri class (for
/// `C0` less the excess term `4 n_0 s`); they are computed from that class
/// and cross-checked against the printed closed formulas.
pub fn pushforward_numbers(s: u32, curve: TestCurve) -> Result<PushforwardVector, MapError> {
    assert!(s >= 2);
    let p = BNParams::new(1, s).expect("r = 1, s >= 2");
    let n0 = count_grd(p);
    let g = 2 * s + 1;
    let si = s as i128;
    let gp = gp_closed_form(p).class;
    Ok(match curve {
        TestCurve::R => PushforwardVector {
            lambda: n0.clone(),
            delta0: rat_i(12) * &n0,
            delta1: -n0,
        },
        TestCurve::C1 | TestCurve::Cj(1) => {
            let d0 = pair(&gp, &test_curve(TestCurve::C1, g)?)?;
            let closed = q(4 * si * (si - 1) * (12 * si * si + 23 * si + 8), si + 2) * &n0;
            assert_eq!(d0, closed, "C1 pairing must match its closed formula");
            PushforwardVector {
                lambda: q(2 * si * (si - 1) * (6 * si * si + 10 * si + 1), si + 2) * &n0,
                delta0: d0,
                delta1: -rat_i(4 * s as i64 - 2) * &n0,
            }
        }
        TestCurve::C0 | TestCurve::Cj(0) => {
            let gp_pairing = pair(&gp, &test_curve(TestCurve::C0, g)?)?;
            let closed = q(2 * si * (si - 1) * (4 * si * si + 9 * si + 4), si + 2) * &n0;
            assert_eq!(gp_pairing, closed, "C0 pairing must match its closed formula");
            PushforwardVector {
                lambda: q(si * (si - 1) * (2 * si * si + 4 * si + 1), si + 2) * &n0,
                delta0: gp_pairing - rat_i(4 * s as i64) * &n0,
                delta1: n0,
            }
        }
        TestCurve::Cj(_) => PushforwardVector {
            lambda: Rat::zero(),
            delta0: Rat::zero(),
            delta1: Rat::zero(),
        },
    })
}

/// Boundary generators of the target space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiGenerator {
    Lambda,
    Delta0,
    Delta1,
    /// `delta'_j` for `j >= 2`.
    DeltaJ(u32),
}

/// Pullback of a generator to the genus-`2s+1` source:
///
/// * `lambda'` pulls back to
///   `n_0 [ (6s^4+20s^3-s^2-20s-2)/((s+2)(2s-1)) λ - s(s^2-1)/(2s-1) δ_0
///   - 2s(s-1)(6s^2+10s+1)/((s+2)(4s-2)) δ_1 - ... ]` with every tail
///   coefficient at least the `δ_0` one;
/// * `delta'_0` pulls back to `n_0 δ_0` plus the Gieseker-Petri class;
/// * `delta'_1` pulls back to `n_0 δ_1`;
/// * `delta'_j` pulls back to zero for `j >= 2`.
pub fn phi_pullback(s: u32, gen: PhiGenerator) -> MgDivisorClass {
    assert!(s >= 2);
    let p = BNParams::new(1, s).expect("r = 1, s >= 2");
    let n0 = count_grd(p);
    let g = 2 * s + 1;
    let len = (g / 2 + 1) as usize;
    let si = s as i128;
    match gen {
        PhiGenerator::Lambda => {
            let lam = q(
                6 * si.pow(4) + 20 * si.pow(3) - si * si - 20 * si - 2,
                (si + 2) * (2 * si - 1),
            ) * &n0;
            let b0 = q(si * (si * si - 1), 2 * si - 1) * &n0;
            let b1 = q(
                2 * si * (si - 1) * (6 * si * si + 10 * si + 1),
                (si + 2) * (4 * si - 2),
            ) * &n0;
            let mut delta = vec![Coeff::Exact(b0.clone()), Coeff::Exact(b1)];
            delta.resize(len, Coeff::LowerBound(b0));
            MgDivisorClass::new(g, lam, delta)
        }
        PhiGenerator::Delta0 => {
            let mut n0_delta = vec![Coeff::Exact(-n0)];
            n0_delta.resize(len, Coeff::Exact(Rat::zero()));
            let correction = MgDivisorClass::new(g, Rat::zero(), n0_delta);
            gp_closed_form(p)
                .class
                .add(&correction)
                .expect("same genus")
        }
        PhiGenerator::Delta1 => {
            let mut delta = vec![Coeff::Exact(Rat::zero()); len];
            delta[1] = Coeff::Exact(-n0);
            MgDivisorClass::new(g, Rat::zero(), delta)
        }
        PhiGenerator::DeltaJ(j) => {
            assert!(j >= 2, "use Delta0/Delta1 for low boundary indices");
            MgDivisorClass::new(g, Rat::zero(), vec![Coeff::Exact(Rat::zero()); len])
        }
    }
}

/// Smallest `c` for which `c λ' - δ'_0 - δ'_1` pulls back with positive
/// `δ_0`-coefficient.
fn slope_cone_threshold(s: u32) -> Rat {
    let p = BNParams::new(1, s).expect("r = 1, s >= 2");
    let n0 = count_grd(p);
    let si = s as i128;
    let b0_unit = q(si * (si * si - 1), 2 * si - 1) * &n0;
    (gp_closed_form(p).b0 - n0) / b0_unit
}

/// Closed-form slope of the pullback of the slope-`c` class
/// `c λ' - δ'_0 - δ'_1`:
/// `6 + (8s^3(c-4)+5cs^2-30s^2+20s-8cs-2c+24)/(s(s+2)(cs^2-4s^2-c-s+6))`.
pub fn phi_slope_closed(s: u32, c: &Rat) -> Result<Rat, MapError> {
    assert!(s >= 2);
    if c <= &slope_cone_threshold(s) {
        return Err(MapError::OutsideSlopeCone);
    }
    let si = s as i128;
    let num = q(8 * si.pow(3), 1) * (c - rat_i(4))
        + q(5 * si * si - 8 * si - 2, 1) * c
        + q(-30 * si * si + 20 * si + 24, 1);
    let den = q(si * (si + 2), 1) * (q(si * si - 1, 1) * c - q(4 * si * si + si - 6, 1));
    Ok(rat_i(6) + num / den)
}

/// The same slope computed directly: pull back `c λ' - δ'_0 - δ'_1`
/// generator by generator and take the ratio of the `λ`- and
/// `δ_0`-coefficients.
pub fn phi_slope_direct(s: u32, c: &Rat) -> Result<Rat, MapError> {
    let lam = phi_pullback(s, PhiGenerator::Lambda);
    let d0 = phi_pullback(s, PhiGenerator::Delta0);
    let d1 = phi_pullback(s, PhiGenerator::Delta1);
    let class = lam
        .scale(c)
        .add(&d0.scale(&rat_i(-1)))?
        .add(&d1.scale(&rat_i(-1)))?;
    let b0 = class.delta(0).exact().expect("delta_0 is exact").clone();
    if b0 <= Rat::zero() {
        return Err(MapError::OutsideSlopeCone);
    }
    Ok(class.lambda() / b0)
}

/// Limit of [`phi_slope_closed`] as `c` grows: the ratio of the `λ`- and
/// `δ_0`-coefficients of the pullback of `λ'`.
pub fn phi_slope_limit(s: u32) -> Rat {
    let lam = phi_pullback(s, PhiGenerator::Lambda);
    lam.lambda() / lam.delta(0).exact().expect("delta_0 is exact")
}

/// A divisor class on the space of Prym data, written
/// `lambda·λ + kappa1·π*(κ_1) - d0p·δ'_0 - d0pp·δ''_0 - d0r·δ^r_0`,
/// possibly with unrecorded higher-boundary terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrymClass {
    pub lambda: Rat,
    pub kappa1: Rat,
    pub d0p: Rat,
    pub d0pp: Rat,
    pub d0r: Rat,
    /// True when the class carries unrecorded terms supported on the higher
    /// boundary (images of `δ_j`, `j >= 1`, under the covering map).
    pub higher_boundary_unknown: bool,
}

impl PrymClass {
    /// Eliminates `π*(κ_1)` via `κ_1 = 12λ - δ` and
    /// `π*(δ_0) = δ'_0 + δ''_0 + 2δ^r_0`; the pulled-back higher boundary
    /// `π*(δ_j)`, `j >= 1`, becomes an unrecorded tail.
    pub fn substitute_kappa1(&self) -> PrymClass {
        let k = &self.kappa1;
        PrymClass {
            lambda: &self.lambda + rat_i(12) * k,
            kappa1: Rat::zero(),
            d0p: &self.d0p + k,
            d0pp: &self.d0pp + k,
            d0r: &self.d0r + rat_i(2) * k,
            higher_boundary_unknown: self.higher_boundary_unknown || !k.is_zero(),
        }
    }
}

/// First Chern class of the `i`-th tautological bundle:
/// `binomial(i,2)·π*(κ_1) + λ - (i²/4)·δ^r_0`.
pub fn prym_taut_c1(i: u32) -> PrymClass {
    assert!(i >= 1);
    PrymClass {
        lambda: rat_i(1),
        kappa1: Rat::from_integer(binomial(i as i64, 2)),
        d0p: Rat::zero(),
        d0pp: Rat::zero(),
        d0r: rat((i * i) as i64, 4),
        higher_boundary_unknown: false,
    }
}

/// Class of the ramification divisor of the Prym period map at genus `g`:
/// `c_1(E_2) - g·c_1(E_1)` (the symmetric square of `E_1` has rank `g-1`
/// on the relevant space, so `c_1(Sym² E_1) = g·c_1(E_1)`), with `κ_1`
/// eliminated. At `g = 6` this is `7λ - δ'_0 - δ''_0 - (3/2)δ^r_0` plus
/// unrecorded higher-boundary terms.
pub fn prym_ramification_class(g: u32) -> PrymClass {
    assert!(g >= 2);
    let e1 = prym_taut_c1(1);
    let e2 = prym_taut_c1(2);
    let gi = rat_i(g as i64);
    let before = PrymClass {
        lambda: &e2.lambda - &gi * &e1.lambda,
        kappa1: &e2.kappa1 - &gi * &e1.kappa1,
        d0p: &e2.d0p - &gi * &e1.d0p,
        d0pp: &e2.d0pp - &gi * &e1.d0pp,
        d0r: &e2.d0r - &gi * &e1.d0r,
        higher_boundary_unknown: false,
    };
    before.substitute_kappa1()
}

/// Generators of the Picard group of the space of Prym data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuGenerator {
    Lambda,
    D0Prime,
    D0DoublePrime,
    D0Ram,
}

/// Pullback of a generator under the genus-5 Prym construction:
///
/// * `λ` pulls back to `34λ - 4δ_0 - 15δ_1 - (?)δ_2` (the `δ_2` coefficient
///   is genuinely unrecorded);
/// * `δ'_0` pulls back to `δ_0`;
/// * `δ''_0` pulls back to `8λ - δ_0 - 4δ_1 - 6δ_2`;
/// * `δ^r_0` pulls back to `4(33λ - 4δ_0 - 15δ_1 - 21δ_2)`.
pub fn nu_pullback(gen: NuGenerator) -> MgDivisorClass {
    match gen {
        NuGenerator::Lambda => MgDivisorClass::new(
            5,
            rat_i(34),
            vec![Coeff::exact_i(4), Coeff::exact_i(15), Coeff::Unknown],
        ),
        NuGenerator::D0Prime => MgDivisorClass::exact_i(5, 0, &[-1, 0, 0]),
        NuGenerator::D0DoublePrime => crate::mg_divisors::registry("M1_5_3").expect("known name"),
        NuGenerator::D0Ram => crate::mg_divisors::registry("GP10_5_4").expect("known name"),
    }
}

/// Pullback of the Prym ramification class to genus 5, with its slope and the
/// two competing `δ_1`-readings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuRamificationPullback {
    /// `7ν*(λ) - ν*(δ'_0) - ν*(δ''_0) - (3/2)ν*(δ^r_0)`.
    pub class: MgDivisorClass,
    pub slope: Rat,
    /// `δ_1`-coefficient from the direct linear combination (11, so
    /// `a_1 = 11/4` in the normalization `4(8λ - δ_0 - a_1δ_1 - ...)`).
    pub delta1_direct: Rat,
    /// `δ_1`-coefficient implied by the asserted interior identification of
    /// the pullback with four times the pencil-locus class (16). The two
    /// readings are reported side by side and deliberately not reconciled.
    pub delta1_from_identification: Rat,
}

pub fn nu_ramification_pullback() -> Result<NuRamificationPullback, MapError> {
    let ram = prym_ramification_class(6);
    assert_eq!(ram.lambda, rat_i(7));
    let class = nu_pullback(NuGenerator::Lambda)
        .scale(&ram.lambda)
        .add(&nu_pullback(NuGenerator::D0Prime).scale(&-ram.d0p))?
        .add(&nu_pullback(NuGenerator::D0DoublePrime).scale(&-ram.d0pp))?
        .add(&nu_pullback(NuGenerator::D0Ram).scale(&-ram.d0r))?;
    let slope = crate::mg_divisors::slope(&class)?;
    let delta1_direct = class.delta(1).exact().expect("delta_1 is exact").clone();
    let delta1_from_identification = crate::mg_divisors::registry("M1_5_3")
        .expect("known name")
        .scale(&rat_i(4))
        .delta(1)
        .exact()
        .expect("exact")
        .clone();
    Ok(NuRamificationPullback {
        class,
        slope,
        delta1_direct,
        delta1_from_identification,
    })
}
