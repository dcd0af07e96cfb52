//! The (Z/2Z)^k family: ramification structures of type
//! (2^{k(k+1)}, 2^{4+2^{l−k+1}}) with l > 2k, giving surfaces with
//! χ = 2^{l−3}(k² + k − 4), and the multiplet reports built on them.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branch_type::BranchType;
use crate::error::{Error, Result};
use crate::exact::{big, Exact, RealValue};
use crate::group::{f2_rank, ElemId, FiniteGroup, MAX_EA_RANK};
use crate::hurwitz::{count_components, feasible_odd_set, Completeness, CountOptions};
use crate::invariants::{
    branch_curve_invariants, chisini_threshold, main_theorem_counts, multiplet_bounds,
    plurigenus_dimension, surface_invariants, surface_invariants_from_types, BoundReport,
    BranchCurveInvariants, SurfaceInvariants,
};
use crate::spherical::{RamificationStructure, SphericalSystem};

/// Witness tuples longer than this are not materialised.
pub const WITNESS_LENGTH_CAP: u64 = 1 << 20;
/// Support candidates examined by the witness search.
pub const WITNESS_NODE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub k: u32,
    pub l: u32,
    pub tau1: BranchType,
    pub tau2: BranchType,
    #[serde(with = "big")]
    pub chi: BigInt,
    pub epsilon: Exact,
    #[serde(with = "big")]
    pub g1: BigInt,
    #[serde(with = "big")]
    pub g2: BigInt,
}

pub fn family_params(k: u32, l: u32) -> Result<FamilyParams> {
    if k < 2 {
        return Err(Error::Parameter(format!("k = {k} must be at least 2")));
    }
    if k > MAX_EA_RANK {
        return Err(Error::Parameter(format!("k = {k} exceeds {MAX_EA_RANK}")));
    }
    if l <= 2 * k {
        return Err(Error::Parameter(format!("l = {l} must exceed 2k = {}", 2 * k)));
    }
    if l - k + 1 > 60 {
        return Err(Error::Parameter(format!("l = {l} too large for k = {k}")));
    }
    let tau1 = BranchType::involutions((k * (k + 1)) as u64);
    let tau2 = BranchType::involutions(4 + (1u64 << (l - k + 1)));
    let chi = (BigInt::one() << (l - 3)) * BigInt::from(k * k + k - 4);
    let inv = surface_invariants_from_types(1u64 << k, &tau1, &tau2)?;
    let one = BigInt::one();
    let expect_g1 = (BigInt::one() << (k - 2)) * BigInt::from(k * k + k - 4);
    let expect_g2 = BigInt::one() << (l - 1);
    if inv.chi != chi || &inv.g1 - &one != expect_g1 || &inv.g2 - &one != expect_g2 {
        return Err(Error::Inconsistent(format!(
            "family (k={k}, l={l}): genera ({},{}) / chi {} do not match closed forms",
            inv.g1, inv.g2, inv.chi
        )));
    }
    let epsilon = BigRational::new(BigInt::from(l), BigInt::from(k)) - BigInt::from(2);
    Ok(FamilyParams {
        k,
        l,
        tau1,
        tau2,
        chi,
        epsilon: Exact(epsilon),
        g1: inv.g1,
        g2: inv.g2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessStatus {
    Found,
    NotFound,
    /// No structure exists: the exhaustive support search was completed.
    None,
    NotSearched,
}

/// Looks for one explicit ramification structure of the family type.
/// Supports are searched in increasing size; multiplicities are then set to
/// 1 on a zero-sum odd set, 2 elsewhere, with the surplus on the first
/// vector.
pub fn find_witness(params: &FamilyParams) -> Result<(WitnessStatus, Option<RamificationStructure>)> {
    let n1 = params.tau1.len();
    let n2 = params.tau2.len();
    if n1 + n2 > WITNESS_LENGTH_CAP || params.k > 8 {
        return Ok((WitnessStatus::NotSearched, None));
    }
    let k = params.k;
    let vectors: Vec<u32> = (1..(1u32 << k)).collect();
    let mut nodes = 0u64;
    let mut exhausted = true;
    let mut found: Option<(Vec<u32>, u64, Vec<u32>, u64)> = None;
    'outer: for s1 in k as usize..=vectors.len() {
        let mut combo1 = Combinations::new(vectors.len(), s1);
        while let Some(c1) = combo1.next_combo() {
            nodes += 1;
            if nodes > WITNESS_NODE_BUDGET {
                exhausted = false;
                break 'outer;
            }
            let sup1: Vec<u32> = c1.iter().map(|&i| vectors[i]).collect();
            if f2_rank(&sup1) != k {
                continue;
            }
            let Some(odd1) = feasible_odd_set(&sup1, n1) else { continue };
            let rest: Vec<u32> = vectors.iter().copied().filter(|v| !sup1.contains(v)).collect();
            for s2 in k as usize..=rest.len() {
                let mut combo2 = Combinations::new(rest.len(), s2);
                while let Some(c2) = combo2.next_combo() {
                    nodes += 1;
                    if nodes > WITNESS_NODE_BUDGET {
                        exhausted = false;
                        break 'outer;
                    }
                    let sup2: Vec<u32> = c2.iter().map(|&i| rest[i]).collect();
                    if f2_rank(&sup2) != k {
                        continue;
                    }
                    if let Some(odd2) = feasible_odd_set(&sup2, n2) {
                        found = Some((sup1, odd1, sup2, odd2));
                        break 'outer;
                    }
                }
            }
        }
    }
    let Some((sup1, odd1, sup2, odd2)) = found else {
        let status = if exhausted {
            WitnessStatus::None
        } else {
            WitnessStatus::NotFound
        };
        return Ok((status, None));
    };
    let group = Arc::new(FiniteGroup::elementary_abelian(k)?);
    let t1 = SphericalSystem::new(group.clone(), realize(&sup1, odd1, n1))?;
    let t2 = SphericalSystem::new(group, realize(&sup2, odd2, n2))?;
    let r = RamificationStructure::new(t1, t2)?;
    Ok((WitnessStatus::Found, Some(r)))
}

fn realize(support: &[u32], odd: u64, n: u64) -> Vec<ElemId> {
    let mut mult: Vec<u64> = (0..support.len())
        .map(|i| if odd >> i & 1 == 1 { 1 } else { 2 })
        .collect();
    let used: u64 = mult.iter().sum();
    mult[0] += n - used;
    let mut out = Vec::with_capacity(n as usize);
    for (&v, &m) in support.iter().zip(&mult) {
        out.extend(std::iter::repeat_n(v, m as usize));
    }
    out
}

/// k-subsets of 0..n in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
        }
    }

    fn next_combo(&mut self) -> Option<&[usize]> {
        let k = self.idx.len();
        if k > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCount {
    pub h: Option<u64>,
    pub completeness: Completeness,
    /// For formula-only rows: the asymptotic lower bound log₂ h ≥ χ^{1/(2+ε)},
    /// stated, not verified.
    pub log2_h_lower_bound: Option<RealValue>,
    pub note: Option<String>,
}

/// Exact number of components when the search fits the budget, otherwise a
/// formula-only row.
pub fn family_component_count(params: &FamilyParams, opts: &CountOptions) -> Result<FamilyCount> {
    let formula_only = |note: String| -> Result<FamilyCount> {
        let bounds = multiplet_bounds(&(&params.chi * 8), &params.chi, &params.epsilon.0)?;
        Ok(FamilyCount {
            h: None,
            completeness: Completeness::FormulaOnly,
            log2_h_lower_bound: Some(bounds.log2_lower_eq15),
            note: Some(note),
        })
    };
    if params.k > opts.aut_rank_cap {
        return formula_only(format!(
            "GL({},2) exceeds the automorphism enumeration cap",
            params.k
        ));
    }
    let group = Arc::new(FiniteGroup::elementary_abelian(params.k)?);
    match count_components(&group, &params.tau1, &params.tau2, opts) {
        Ok(c) => Ok(FamilyCount {
            h: Some(c.h),
            completeness: c.completeness,
            log2_h_lower_bound: None,
            note: (c.h == 0).then(|| "0 structures".to_string()),
        }),
        Err(Error::BudgetExceeded { what, budget }) => {
            formula_only(format!("budget {budget} exceeded: {what}"))
        }
        Err(Error::Capacity(m)) => formula_only(m),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChisiniCheck {
    pub threshold: Exact,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultipletReport {
    pub params: FamilyParams,
    pub h: Option<u64>,
    pub completeness: Completeness,
    pub count_note: Option<String>,
    pub log2_h_lower_bound: Option<RealValue>,
    pub witness: WitnessStatus,
    pub invariants: SurfaceInvariants,
    pub curve: BranchCurveInvariants,
    pub chisini: ChisiniCheck,
    #[serde(with = "big")]
    pub p2: BigInt,
    pub bounds: BoundReport,
    pub very_ampleness: String,
}

pub fn multiplet_report(
    k: u32,
    l: u32,
    epsilon_override: Option<BigRational>,
    opts: &CountOptions,
) -> Result<MultipletReport> {
    let params = family_params(k, l)?;
    let (witness, structure) = find_witness(&params)?;
    let invariants = match &structure {
        Some(r) => surface_invariants(r)?,
        None => surface_invariants_from_types(1u64 << k, &params.tau1, &params.tau2)?,
    };
    if invariants.chi != params.chi {
        return Err(Error::Inconsistent("witness chi differs from family chi".into()));
    }
    let curve = branch_curve_invariants(&invariants.ksq, &invariants.e, 2)?;
    let threshold = chisini_threshold(&curve.d, &curve.g, &curve.c)?;
    let ok = BigRational::from_integer(curve.nu.clone()) > threshold;
    let epsilon = epsilon_override.unwrap_or_else(|| params.epsilon.0.clone());
    let bounds = multiplet_bounds(&invariants.ksq, &invariants.chi, &epsilon)?;
    if curve.d != &invariants.ksq * 14 {
        return Err(Error::Inconsistent("d != 14 K^2".into()));
    }
    if main_theorem_counts(&curve.d)? != (curve.n.clone(), curve.c.clone()) {
        return Err(Error::Inconsistent(
            "branch-curve singularities disagree with the closed forms in d".into(),
        ));
    }
    let count = family_component_count(&params, opts)?;
    let p2 = plurigenus_dimension(&invariants.chi, &invariants.ksq, 2)?;
    Ok(MultipletReport {
        params,
        h: count.h,
        completeness: count.completeness,
        count_note: count.note,
        log2_h_lower_bound: count.log2_h_lower_bound,
        witness,
        invariants,
        curve,
        chisini: ChisiniCheck {
            threshold: Exact(threshold),
            ok,
        },
        p2,
        bounds,
        very_ampleness: "assumed".into(),
    })
}

/// Reports for several (k, l), computed in parallel, returned in input order.
pub fn multiplet_reports(
    rows: &[(u32, u32)],
    epsilon_override: Option<BigRational>,
    opts: &CountOptions,
) -> Vec<Result<MultipletReport>> {
    rows.par_iter()
        .map(|&(k, l)| multiplet_report(k, l, epsilon_override.clone(), opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_k3_l7() {
        let p = family_params(3, 7).unwrap();
        assert_eq!(p.tau1, BranchType::involutions(12));
        assert_eq!(p.tau2, BranchType::involutions(36));
        assert_eq!(p.chi, BigInt::from(128));
        assert_eq!(p.epsilon.0, BigRational::new(1.into(), 3.into()));
        assert_eq!((p.g1, p.g2), (BigInt::from(17), BigInt::from(65)));
    }

    #[test]
    fn params_k2_l5() {
        let p = family_params(2, 5).unwrap();
        assert_eq!(p.tau1, BranchType::involutions(6));
        assert_eq!(p.tau2, BranchType::involutions(20));
        assert_eq!(p.chi, BigInt::from(8));
    }

    #[test]
    fn params_constraints() {
        assert!(matches!(family_params(3, 6), Err(Error::Parameter(_))));
        assert!(matches!(family_params(1, 5), Err(Error::Parameter(_))));
    }

    #[test]
    fn k2_has_no_structures() {
        let p = family_params(2, 5).unwrap();
        let (status, r) = find_witness(&p).unwrap();
        assert_eq!(status, WitnessStatus::None);
        assert!(r.is_none());
        let c = family_component_count(&p, &CountOptions::default()).unwrap();
        assert_eq!(c.h, Some(0));
        assert_eq!(c.completeness, Completeness::Exact);
    }

    #[test]
    fn witnesses_exist_for_k3_to_5() {
        for k in 3..=5 {
            let p = family_params(k, 2 * k + 1).unwrap();
            let (status, r) = find_witness(&p).unwrap();
            assert_eq!(status, WitnessStatus::Found, "k={k}");
            let inv = surface_invariants(&r.unwrap()).unwrap();
            assert_eq!(inv.chi, p.chi);
        }
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut c = Combinations::new(5, 3);
        let mut n = 0;
        while c.next_combo().is_some() {
            n += 1;
        }
        assert_eq!(n, 10);
    }
}
