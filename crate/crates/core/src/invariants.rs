//! Exact numerical invariants: Chern data of a surface isogenous to a
//! product, the combinatorics of its generic m-canonical branch curve, the
//! Chisini threshold and the multiplet bounds.
//!
//! Branch-curve formulas for general m. Let ℓ̃ ∈ |mK| be the preimage of a
//! generic line, ν = (mK)² the covering degree and R = K + 3ℓ̃ the
//! ramification curve. Then
//!
//! * adjunction: χ_top(ℓ̃) = −mK·(m+1)K = −m(m+1)K²
//! * Riemann–Hurwitz on ℓ̃ → ℓ: χ_top(ℓ̃) = 2ν − d, so d = (3m² + m)K²
//! * adjunction on R = (3m+1)K: χ_top(R) = −(3m+1)(3m+2)K²
//! * Euler numbers over the strata of ℙ²: c₂ + χ_top(R) = 3ν − c, so
//!   c = (12m² + 9m + 2)K² − c₂
//! * R normalises B: g(B) = 1 − χ_top(R)/2 and
//!   2n = χ_top(R) + d² − 3d − 2c.
//!
//! At m = 2 these give d = 14K², c = 68K² − c₂, n = 98K⁴ − 117K² + c₂ and
//! χ_top(R) = −56K².

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::branch_type::BranchType;
use crate::error::{Error, Result};
use crate::exact::{big, log2_big, Exact, RealValue};
use crate::spherical::{genus_from_type, RamificationStructure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    #[serde(with = "big")]
    pub chi: BigInt,
    #[serde(with = "big")]
    pub e: BigInt,
    #[serde(with = "big")]
    pub ksq: BigInt,
    #[serde(with = "big")]
    pub g1: BigInt,
    #[serde(with = "big")]
    pub g2: BigInt,
    pub q: u32,
    pub order: u64,
}

pub fn surface_invariants(r: &RamificationStructure) -> Result<SurfaceInvariants> {
    let inv = surface_invariants_from_types(
        r.group().order() as u64,
        r.t1().unordered_type(),
        r.t2().unordered_type(),
    )?;
    let (g1, g2) = r.genera();
    if (&inv.g1, &inv.g2) != (g1, g2) {
        return Err(Error::Inconsistent(format!(
            "cached genera ({g1},{g2}) differ from recomputed ({},{})",
            inv.g1, inv.g2
        )));
    }
    Ok(inv)
}

/// Invariants of the surface defined by a ramification structure of type
/// (τ₁, τ₂) on a group of the given order. χ is computed from the genera
/// and, independently, from the types; the two must agree.
pub fn surface_invariants_from_types(
    order: u64,
    tau1: &BranchType,
    tau2: &BranchType,
) -> Result<SurfaceInvariants> {
    let genus = |tau: &BranchType| -> Result<BigInt> {
        let g = genus_from_type(order, tau);
        if !g.is_integer() {
            return Err(Error::GenusNotIntegral(g.to_string()));
        }
        let g = g.to_integer();
        if g < BigInt::from(2) {
            return Err(Error::GenusBelowTwo(g.to_string()));
        }
        Ok(g)
    };
    let g1 = genus(tau1)?;
    let g2 = genus(tau2)?;
    let one = BigInt::one();
    let ord = BigInt::from(order);
    let numer = (&g1 - &one) * (&g2 - &one);
    let (chi, rem) = numer.div_rem(&ord);
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!(
            "(g1-1)(g2-1) = {numer} is not divisible by |G| = {order}"
        )));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let a1 = tau1.defect_sum() - &two;
    let a2 = tau2.defect_sum() - &two;
    let four_chi = BigRational::from_integer(ord) * a1 * a2;
    if four_chi != BigRational::from_integer(&chi * 4) {
        return Err(Error::Inconsistent(format!(
            "chi from genera ({chi}) disagrees with chi from types ({})",
            four_chi / BigRational::from_integer(BigInt::from(4))
        )));
    }
    Ok(SurfaceInvariants {
        e: &chi * 4,
        ksq: &chi * 8,
        chi,
        g1,
        g2,
        q: 0,
        order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCurveInvariants {
    pub m: u32,
    #[serde(with = "big")]
    pub nu: BigInt,
    #[serde(with = "big")]
    pub d: BigInt,
    #[serde(with = "big")]
    pub n: BigInt,
    #[serde(with = "big")]
    pub c: BigInt,
    #[serde(with = "big")]
    pub g: BigInt,
    #[serde(with = "big")]
    pub euler_r: BigInt,
}

/// Degree, nodes, cusps, genus and χ_top(R) of the generic m-canonical
/// branch curve of a surface with K² = `ksq` and c₂ = `c2`.
pub fn branch_curve_invariants(ksq: &BigInt, c2: &BigInt, m: u32) -> Result<BranchCurveInvariants> {
    if !ksq.is_positive() {
        return Err(Error::InvalidChern(format!("K^2 = {ksq} must be positive")));
    }
    if m < 2 {
        return Err(Error::Parameter(format!("m = {m} must be at least 2")));
    }
    let mm = BigInt::from(m);
    let nu = &mm * &mm * ksq;
    let d = (BigInt::from(3) * &mm * &mm + &mm) * ksq;
    let euler_r: BigInt = -((BigInt::from(3) * &mm + 1u8) * (BigInt::from(3) * &mm + 2u8)) * ksq;
    let c: BigInt = (BigInt::from(12) * &mm * &mm + BigInt::from(9) * &mm + 2u8) * ksq - c2;
    let two_n: BigInt = &euler_r + &d * &d - BigInt::from(3) * &d - BigInt::from(2) * &c;
    let (n, rem) = two_n.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::InvalidChern(format!(
            "node count {two_n}/2 is not an integer"
        )));
    }
    if c.is_negative() || n.is_negative() {
        return Err(Error::InvalidChern(format!(
            "negative singularity count (n = {n}, c = {c})"
        )));
    }
    let g = BigInt::one() - &euler_r / BigInt::from(2);
    Ok(BranchCurveInvariants {
        m,
        nu,
        d,
        n,
        c,
        g,
        euler_r,
    })
}

/// (n_d, c_d) = (d²/2 − 233d/28, 135d/28) for d a positive multiple of 28.
pub fn main_theorem_counts(d: &BigInt) -> Result<(BigInt, BigInt)> {
    let t28 = BigInt::from(28);
    if !d.is_positive() || !d.is_multiple_of(&t28) {
        return Err(Error::InadmissibleDegree(d.to_string()));
    }
    let n = d * d / 2 - BigInt::from(233) * d / &t28;
    let c = BigInt::from(135) * d / &t28;
    Ok((n, c))
}

/// 4(3d + g − 1) / (2(3d + g − 1) − c).
pub fn chisini_threshold(d: &BigInt, g: &BigInt, c: &BigInt) -> Result<BigRational> {
    let base: BigInt = BigInt::from(3) * d + g - 1u8;
    let denom: BigInt = BigInt::from(2) * &base - c;
    if !denom.is_positive() {
        return Err(Error::ThresholdUndefined(denom.to_string()));
    }
    Ok(BigRational::new(BigInt::from(4) * base, denom))
}

/// Whether the covering degree strictly exceeds the Chisini threshold.
pub fn chisini_ok(nu: &BigInt, d: &BigInt, g: &BigInt, c: &BigInt) -> Result<bool> {
    let t = chisini_threshold(d, g, c)?;
    Ok(BigRational::from_integer(nu.clone()) > t)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "big")]
    pub d: BigInt,
    #[serde(with = "big")]
    pub n_d: BigInt,
    #[serde(with = "big")]
    pub c_d: BigInt,
    pub epsilon: Exact,
    /// ((8/14)·d)^{1/(2+ε)}
    pub log2_lower_thm_main: RealValue,
    /// χ^{1/(2+ε)}
    pub log2_lower_eq15: RealValue,
    /// 77·y²·log₂ y with y = K²
    pub log2_upper_catanese: RealValue,
}

pub fn multiplet_bounds(ksq: &BigInt, chi: &BigInt, epsilon: &BigRational) -> Result<BoundReport> {
    if !epsilon.is_positive() {
        return Err(Error::Parameter(format!("epsilon = {epsilon} must be positive")));
    }
    if !ksq.is_positive() || !chi.is_positive() {
        return Err(Error::Parameter("K^2 and chi must be positive".into()));
    }
    let d = BigInt::from(14) * ksq;
    let (n_d, c_d) = main_theorem_counts(&d)?;
    // (8/14)·d = 8·K², an integer
    let base = BigInt::from(8) * ksq;
    let exponent = BigRational::one() / (BigRational::from_integer(BigInt::from(2)) + epsilon);
    Ok(BoundReport {
        log2_lower_thm_main: rational_power(&base, &exponent),
        log2_lower_eq15: rational_power(chi, &exponent),
        log2_upper_catanese: catanese_log2(ksq),
        epsilon: Exact(epsilon.clone()),
        d,
        n_d,
        c_d,
    })
}

/// x^(p/q) for positive integer x; exact when x^p is a perfect q-th power.
fn rational_power(x: &BigInt, e: &BigRational) -> RealValue {
    let (p, q) = (e.numer(), e.denom());
    let exact = match (p.to_u32(), q.to_u32()) {
        (Some(p), Some(q)) if (x.bits() as u128) * (p as u128) <= 1 << 20 => {
            let xp = x.pow(p);
            let r = xp.nth_root(q);
            (r.pow(q) == xp).then_some(r)
        }
        _ => None,
    };
    match exact {
        Some(r) => RealValue::exact(r),
        None => {
            let ef = crate::exact::rational_to_f64(e);
            RealValue::approx((log2_big(x) * ef).exp2())
        }
    }
}

fn catanese_log2(y: &BigInt) -> RealValue {
    let y2 = y * y * 77;
    if y.is_positive() && (y & (y - 1u8)).is_zero() {
        let log = BigInt::from(y.bits() - 1);
        RealValue::exact(y2 * log)
    } else {
        let v = log2_big(&y2) + log2_big(y).log2();
        RealValue::approx(v.exp2())
    }
}

/// P_m = χ + m(m−1)/2 · K², for minimal surfaces of general type.
pub fn plurigenus_dimension(chi: &BigInt, ksq: &BigInt, m: u32) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::Parameter(format!("m = {m} must be at least 2")));
    }
    let m = BigInt::from(m);
    Ok(chi + (&m * (&m - 1u8) / 2u8) * ksq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn worked_row() {
        let c = branch_curve_invariants(&b(8), &b(4), 2).unwrap();
        assert_eq!(
            (c.nu, c.d.clone(), c.c.clone(), c.n.clone(), c.euler_r, c.g.clone()),
            (b(32), b(112), b(540), b(5340), b(-448), b(225))
        );
        // genus-degree formula
        assert_eq!((&c.d - 1) * (&c.d - 2) / 2 - &c.n - &c.c, c.g);
    }

    #[test]
    fn smallest_sip_row() {
        let c = branch_curve_invariants(&b(2), &b(1), 2).unwrap();
        assert_eq!((c.d, c.c, c.n), (b(28), b(135), b(159)));
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(branch_curve_invariants(&b(0), &b(1), 2), Err(Error::InvalidChern(_))));
        assert!(matches!(branch_curve_invariants(&b(8), &b(4), 1), Err(Error::Parameter(_))));
        // c2 huge makes the cusp count negative
        assert!(matches!(branch_curve_invariants(&b(1), &b(1000), 2), Err(Error::InvalidChern(_))));
    }

    #[test]
    fn main_theorem_values() {
        assert_eq!(main_theorem_counts(&b(112)).unwrap(), (b(5340), b(540)));
        assert_eq!(main_theorem_counts(&b(28)).unwrap(), (b(159), b(135)));
        assert!(matches!(main_theorem_counts(&b(30)), Err(Error::InadmissibleDegree(_))));
        assert!(main_theorem_counts(&b(0)).is_err());
    }

    #[test]
    fn chisini_values() {
        let t = chisini_threshold(&b(112), &b(225), &b(540)).unwrap();
        assert_eq!(t, BigRational::new(b(112), b(29)));
        assert!(chisini_ok(&b(32), &b(112), &b(225), &b(540)).unwrap());
        let t0 = chisini_threshold(&b(10), &b(3), &b(0)).unwrap();
        assert_eq!(t0, BigRational::from_integer(b(2)));
        assert!(chisini_ok(&b(3), &b(10), &b(3), &b(0)).unwrap());
        assert!(!chisini_ok(&b(2), &b(10), &b(3), &b(0)).unwrap());
        assert!(matches!(
            chisini_threshold(&b(1), &b(0), &b(100)),
            Err(Error::ThresholdUndefined(_))
        ));
    }

    #[test]
    fn bounds_spot_check() {
        let r = multiplet_bounds(&b(4096), &b(512), &BigRational::one()).unwrap();
        assert_eq!(r.d, b(57344));
        assert_eq!(r.log2_lower_thm_main.exact, Some(b(32)));
        assert_eq!(r.log2_lower_thm_main.decimal, 32.0);
        assert_eq!(r.log2_lower_eq15.exact, Some(b(8)));
        let r8 = multiplet_bounds(&b(8), &b(1), &BigRational::one()).unwrap();
        assert_eq!(r8.log2_upper_catanese.exact, Some(b(14784)));
    }

    #[test]
    fn inexact_bound_is_rounded() {
        let r = multiplet_bounds(&b(16), &b(2), &BigRational::one()).unwrap();
        // 128^(1/3)
        assert!(r.log2_lower_thm_main.exact.is_none());
        assert!((r.log2_lower_thm_main.decimal - 5.03968419958).abs() < 1e-10);
        assert!(multiplet_bounds(&b(16), &b(2), &BigRational::zero()).is_err());
    }

    #[test]
    fn plurigenus_examples() {
        assert_eq!(plurigenus_dimension(&b(1), &b(8), 2).unwrap(), b(9));
        assert_eq!(plurigenus_dimension(&b(128), &b(1024), 2).unwrap(), b(1152));
        assert!(plurigenus_dimension(&b(1), &b(8), 1).is_err());
    }

    #[test]
    fn chi_both_routes() {
        let inv =
            surface_invariants_from_types(8, &BranchType::involutions(6), &BranchType::involutions(6))
                .unwrap();
        assert_eq!((inv.chi.clone(), inv.e.clone(), inv.ksq.clone()), (b(2), b(8), b(16)));
        let fam = surface_invariants_from_types(
            8,
            &BranchType::involutions(12),
            &BranchType::involutions(36),
        )
        .unwrap();
        assert_eq!((fam.g1, fam.g2, fam.chi), (b(17), b(65), b(128)));
    }
}
