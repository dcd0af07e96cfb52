//! Report documents emitted by the CLI. Every document carries `schema`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use zf_core::exact::big;
use zf_core::{
    BoundReport, Completeness, Convention, Exact, MultipletReport, PairClassKey, SurfaceInvariants,
};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub schema: u32,
    pub group: String,
    pub tau: String,
    pub mode: String,
    /// Systems produced (listed or not).
    pub count: u64,
    /// Distinct entry multisets among them, for abelian groups.
    pub multiset_classes: Option<u64>,
    pub completeness: Completeness,
    pub systems: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentsReport {
    pub schema: u32,
    pub group: String,
    pub tau1: String,
    pub tau2: String,
    pub h: Option<u64>,
    pub completeness: Completeness,
    pub convention: Convention,
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keys: Option<Vec<PairClassKey>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub schema: u32,
    pub m: u32,
    #[serde(with = "big")]
    pub ksq: BigInt,
    #[serde(with = "big")]
    pub c2: BigInt,
    #[serde(with = "big")]
    pub d: BigInt,
    #[serde(with = "big")]
    pub n: BigInt,
    #[serde(with = "big")]
    pub c: BigInt,
    #[serde(with = "big")]
    pub g: BigInt,
    #[serde(with = "big")]
    pub nu: BigInt,
    #[serde(with = "big")]
    pub euler_r: BigInt,
    pub chisini_threshold: Exact,
    pub chisini_ok: bool,
    pub surface: Option<SurfaceInvariants>,
    /// P_m = h⁰(mK), when χ is known.
    #[serde(default, with = "opt_big")]
    pub plurigenus: Option<BigInt>,
    /// P_m − 1, the dimension of the m-canonical ambient space.
    #[serde(default, with = "opt_big")]
    pub embedding_dim: Option<BigInt>,
    pub bounds: Option<BoundReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub schema: u32,
    pub report: MultipletReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub schema: u32,
    pub rows: Vec<MultipletReport>,
}

mod opt_big {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => big::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "big")] BigInt);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}
