//! Unordered branching types such as `(2^4, 3^2)`, stored run-length encoded
//! because the family types reach lengths in the thousands.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchType {
    // (order, multiplicity), orders strictly increasing, multiplicities > 0
    parts: Vec<(u32, u64)>,
}

impl BranchType {
    pub fn from_parts(parts: impl IntoIterator<Item = (u32, u64)>) -> Result<Self> {
        let mut v: Vec<(u32, u64)> = Vec::new();
        for (m, c) in parts {
            if m < 2 {
                return Err(Error::TypeSyntax(format!("order {m} < 2")));
            }
            if c == 0 {
                continue;
            }
            v.push((m, c));
        }
        v.sort_unstable();
        let mut merged: Vec<(u32, u64)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        if merged.is_empty() {
            return Err(Error::TypeSyntax("empty type".into()));
        }
        Ok(BranchType { parts: merged })
    }

    pub fn from_orders(orders: &[u32]) -> Result<Self> {
        Self::from_parts(orders.iter().map(|&m| (m, 1)))
    }

    /// (2^n)
    pub fn involutions(n: u64) -> Self {
        BranchType {
            parts: vec![(2, n)],
        }
    }

    pub fn parts(&self) -> &[(u32, u64)] {
        &self.parts
    }

    /// Number of branch points r.
    pub fn len(&self) -> u64 {
        self.parts.iter().map(|&(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn count_of(&self, order: u32) -> u64 {
        self.parts
            .iter()
            .find(|&&(m, _)| m == order)
            .map_or(0, |&(_, c)| c)
    }

    /// Non-decreasing list of orders.
    pub fn expanded(&self) -> Vec<u32> {
        self.parts
            .iter()
            .flat_map(|&(m, c)| std::iter::repeat_n(m, c as usize))
            .collect()
    }

    /// Σ (1 − 1/mᵢ), exactly.
    pub fn defect_sum(&self) -> BigRational {
        self.parts.iter().fold(BigRational::from_integer(0.into()), |acc, &(m, c)| {
            acc + BigRational::new(BigInt::from(c) * BigInt::from(m - 1), BigInt::from(m))
        })
    }

    /// Rendering with superscript exponents, e.g. `(2⁴,3²)`.
    pub fn shorthand(&self) -> String {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        let body: Vec<String> = self
            .parts
            .iter()
            .map(|&(m, c)| {
                if c == 1 {
                    m.to_string()
                } else {
                    let exp: String = c
                        .to_string()
                        .chars()
                        .map(|d| SUP[d.to_digit(10).unwrap() as usize])
                        .collect();
                    format!("{m}{exp}")
                }
            })
            .collect();
        format!("({})", body.join(","))
    }
}

impl fmt::Display for BranchType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(m, c)) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{m}^{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BranchType {
    type Err = Error;

    /// Accepts `2^6`, `2^4,3^2`, `2,2,3` and an optional surrounding pair of
    /// parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::TypeSyntax(s.to_string());
        let body = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if body.is_empty() {
            return Err(bad());
        }
        let mut parts = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            let (m, c) = match tok.split_once('^') {
                Some((m, c)) => (m.trim(), c.trim()),
                None => (tok, "1"),
            };
            let m: u32 = m.parse().map_err(|_| bad())?;
            let c: u64 = c.parse().map_err(|_| bad())?;
            if m < 2 || c == 0 {
                return Err(bad());
            }
            parts.push((m, c));
        }
        Self::from_parts(parts).map_err(|_| bad())
    }
}

impl Serialize for BranchType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BranchType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
