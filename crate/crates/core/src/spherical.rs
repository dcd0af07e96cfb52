//! Spherical systems of generators, ramification structures and their
//! enumeration.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::branch_type::BranchType;
use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup, IDENTITY};

/// Ordered enumeration over a nonabelian group is refused when the raw
/// search space r·log₂|G| exceeds this many bits.
pub const ORDERED_SEARCH_BITS: f64 = 40.0;

/// An ordered generating tuple with product one.
#[derive(Clone, Debug)]
pub struct SphericalSystem {
    group: Arc<FiniteGroup>,
    entries: Vec<ElemId>,
    tau: BranchType,
    sigma: Vec<ElemId>,
}

impl PartialEq for SphericalSystem {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_group(&other.group) && self.entries == other.entries
    }
}

impl Eq for SphericalSystem {}

impl SphericalSystem {
    /// Validates `entries` as a spherical system of generators of `group`.
    pub fn new(group: Arc<FiniteGroup>, entries: Vec<ElemId>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::TooShort(entries.len()));
        }
        for &e in &entries {
            group.element(e)?;
            if e == IDENTITY {
                return Err(Error::IdentityEntry);
            }
        }
        if !group.generates(&entries) {
            return Err(Error::NotGenerating);
        }
        if product(&group, &entries) != IDENTITY {
            return Err(Error::ProductNotIdentity);
        }
        Ok(Self::new_unchecked(group, entries))
    }

    pub(crate) fn new_unchecked(group: Arc<FiniteGroup>, entries: Vec<ElemId>) -> Self {
        let orders: Vec<u32> = entries.iter().map(|&e| group.element_order(e)).collect();
        let tau = BranchType::from_orders(&orders).expect("entries are non-identity");
        let sigma = compute_sigma(&group, &entries);
        SphericalSystem {
            group,
            entries,
            tau,
            sigma,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn entries(&self) -> &[ElemId] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sorted multiset of entry orders.
    pub fn unordered_type(&self) -> &BranchType {
        &self.tau
    }

    /// Σ(T), sorted by id; always contains the identity.
    pub fn sigma_set(&self) -> &[ElemId] {
        &self.sigma
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|&e| self.group.label(e)).collect()
    }

    /// Sigma sets meet only in the identity.
    pub fn disjoint(&self, other: &SphericalSystem) -> Result<bool> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(sorted_meet_is_trivial(&self.sigma, &other.sigma))
    }
}

pub(crate) fn product(group: &FiniteGroup, entries: &[ElemId]) -> ElemId {
    entries.iter().fold(IDENTITY, |acc, &e| group.mul(acc, e))
}

/// Union over entries of all conjugates of all powers, identity included.
pub(crate) fn compute_sigma(group: &FiniteGroup, entries: &[ElemId]) -> Vec<ElemId> {
    let mut out: Vec<ElemId> = vec![IDENTITY];
    if group.ea_rank().is_some() {
        out.extend(entries.iter().copied());
    } else {
        let mut member = vec![false; group.order()];
        member[IDENTITY as usize] = true;
        for &v in entries {
            let mut p = v;
            while p != IDENTITY && !member[p as usize] {
                for c in group.conjugacy_class(p) {
                    member[c as usize] = true;
                }
                p = group.mul(p, v);
            }
        }
        out = (0..group.order() as ElemId)
            .filter(|&x| member[x as usize])
            .collect();
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn sorted_meet_is_trivial(a: &[ElemId], b: &[ElemId]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] != IDENTITY {
                    return false;
                }
                i += 1;
                j += 1;
            }
        }
    }
    true
}

/// Exact Riemann–Hurwitz genus: 2g − 2 = |G|·(−2 + Σ(1 − 1/mᵢ)).
pub fn genus_from_type(order: u64, tau: &BranchType) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let bracket = tau.defect_sum() - &two;
    let two_g_minus_two = BigRational::from_integer(BigInt::from(order)) * bracket;
    (two_g_minus_two + &two) / two
}

/// Integral genus of the cover, or the error describing why there is none.
pub(crate) fn checked_genus(order: u64, tau: &BranchType) -> Result<BigInt> {
    let g = genus_from_type(order, tau);
    if !g.is_integer() {
        return Err(Error::GenusNotIntegral(g.to_string()));
    }
    let g = g.to_integer();
    if g < BigInt::from(2) {
        return Err(Error::GenusBelowTwo(g.to_string()));
    }
    Ok(g)
}

/// A validated pair of disjoint spherical systems with both genera ≥ 2.
#[derive(Clone, Debug)]
pub struct RamificationStructure {
    t1: SphericalSystem,
    t2: SphericalSystem,
    g1: BigInt,
    g2: BigInt,
}

impl RamificationStructure {
    pub fn new(t1: SphericalSystem, t2: SphericalSystem) -> Result<Self> {
        if !t1.group.same_group(&t2.group) {
            return Err(Error::GroupMismatch);
        }
        for t in [&t1, &t2] {
            if t.len() < 3 {
                return Err(Error::TooFewBranchPoints(t.len()));
            }
        }
        if !t1.disjoint(&t2)? {
            return Err(Error::NotDisjoint);
        }
        let order = t1.group.order() as u64;
        let g1 = checked_genus(order, &t1.tau)?;
        let g2 = checked_genus(order, &t2.tau)?;
        Ok(RamificationStructure { t1, t2, g1, g2 })
    }

    pub fn t1(&self) -> &SphericalSystem {
        &self.t1
    }

    pub fn t2(&self) -> &SphericalSystem {
        &self.t2
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.t1.group
    }

    pub fn genera(&self) -> (&BigInt, &BigInt) {
        (&self.g1, &self.g2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    Ordered,
    /// One representative (entries sorted by id) per entry multiset.
    /// Abelian groups only.
    Multiset,
}

/// Streams every spherical system of type `tau`, each exactly once.
pub fn enumerate_spherical_systems(
    group: &Arc<FiniteGroup>,
    tau: &BranchType,
    mode: EnumerationMode,
) -> Result<Box<dyn Iterator<Item = SphericalSystem> + Send>> {
    let r = tau.len();
    if r < 2 {
        return Err(Error::TooShort(r as usize));
    }
    let abelian = group.is_abelian();
    if mode == EnumerationMode::Multiset && !abelian {
        return Err(Error::NonAbelianMultiset);
    }
    if !abelian {
        let bits = r as f64 * (group.order() as f64).log2();
        if bits > ORDERED_SEARCH_BITS {
            return Err(Error::BudgetExceeded {
                what: format!(
                    "ordered enumeration of type {tau} over {} ({bits:.1} bits)",
                    group.name()
                ),
                budget: ORDERED_SEARCH_BITS as u64,
            });
        }
    }
    let search = TupleSearch::new(group.clone(), tau, abelian);
    let g = group.clone();
    let tuples: Box<dyn Iterator<Item = Vec<ElemId>> + Send> = match (mode, abelian) {
        (EnumerationMode::Multiset, _) | (EnumerationMode::Ordered, false) => Box::new(search),
        (EnumerationMode::Ordered, true) => Box::new(search.flat_map(DistinctPermutations::new)),
    };
    Ok(Box::new(
        tuples.map(move |t| SphericalSystem::new_unchecked(g.clone(), t)),
    ))
}

/// Depth-first search over tuples of the requested order multiset with
/// product one. In sorted mode entries are non-decreasing by id, so each
/// multiset is produced once.
struct TupleSearch {
    group: Arc<FiniteGroup>,
    r: usize,
    sorted: bool,
    slot_of: Vec<Option<usize>>,
    remaining: Vec<u64>,
    entries: Vec<ElemId>,
    prefix: Vec<ElemId>,
    cursor: Vec<ElemId>,
    done: bool,
}

impl TupleSearch {
    fn new(group: Arc<FiniteGroup>, tau: &BranchType, sorted: bool) -> Self {
        let parts = tau.parts();
        let slot_of: Vec<Option<usize>> = group
            .elements()
            .map(|e| {
                let o = group.element_order(e);
                parts.iter().position(|&(m, _)| m == o)
            })
            .collect();
        let remaining: Vec<u64> = parts.iter().map(|&(_, c)| c).collect();
        // Orders that never occur make the stream empty.
        let feasible = parts
            .iter()
            .enumerate()
            .all(|(i, _)| slot_of.contains(&Some(i)));
        let r = tau.len() as usize;
        TupleSearch {
            group,
            r,
            sorted,
            slot_of,
            remaining,
            entries: Vec::with_capacity(r),
            prefix: vec![IDENTITY],
            cursor: vec![0],
            done: !feasible,
        }
    }

    fn pop(&mut self) {
        if let Some(e) = self.entries.pop() {
            let slot = self.slot_of[e as usize].expect("pushed entries have a slot");
            self.remaining[slot] += 1;
            self.prefix.pop();
            self.cursor.pop();
        }
    }
}

impl Iterator for TupleSearch {
    type Item = Vec<ElemId>;

    fn next(&mut self) -> Option<Vec<ElemId>> {
        let n = self.group.order() as ElemId;
        while !self.done {
            let depth = self.entries.len();
            if depth + 1 == self.r {
                // Last entry is forced by the product condition.
                let last = self.group.inv(*self.prefix.last().unwrap());
                let ok = self.slot_of[last as usize].is_some_and(|s| self.remaining[s] == 1)
                    && (!self.sorted || self.entries.last().is_none_or(|&p| last >= p));
                let mut out = None;
                if ok {
                    let mut t = self.entries.clone();
                    t.push(last);
                    if self.group.generates(&t) {
                        out = Some(t);
                    }
                }
                if depth == 0 {
                    self.done = true;
                } else {
                    self.pop();
                }
                if out.is_some() {
                    return out;
                }
                continue;
            }
            let start = self.cursor[depth];
            let mut chosen = None;
            for e in start..n {
                if let Some(s) = self.slot_of[e as usize] {
                    if self.remaining[s] > 0 {
                        chosen = Some((e, s));
                        break;
                    }
                }
            }
            match chosen {
                Some((e, s)) => {
                    self.cursor[depth] = e + 1;
                    self.remaining[s] -= 1;
                    let p = self.group.mul(*self.prefix.last().unwrap(), e);
                    self.entries.push(e);
                    self.prefix.push(p);
                    self.cursor.push(if self.sorted { e } else { 0 });
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                    } else {
                        self.pop();
                    }
                }
            }
        }
        None
    }
}

/// All distinct permutations of a sorted tuple, in lexicographic order.
struct DistinctPermutations {
    current: Option<Vec<ElemId>>,
}

impl DistinctPermutations {
    fn new(sorted: Vec<ElemId>) -> Self {
        DistinctPermutations {
            current: Some(sorted),
        }
    }
}

impl Iterator for DistinctPermutations {
    type Item = Vec<ElemId>;

    fn next(&mut self) -> Option<Vec<ElemId>> {
        let out = self.current.take()?;
        let mut nxt = out.clone();
        if next_permutation(&mut nxt) {
            self.current = Some(nxt);
        }
        Some(out)
    }
}

pub(crate) fn next_permutation(v: &mut [ElemId]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Number of distinct orderings of a multiset, r!/∏ cᵢ!.
pub fn multiset_permutations(entries: &[ElemId]) -> BigInt {
    let mut sorted = entries.to_vec();
    sorted.sort_unstable();
    let mut total = factorial(sorted.len() as u64);
    for run in sorted.chunk_by(|a, b| a == b) {
        total /= factorial(run.len() as u64);
    }
    total
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient as f64 for budget estimates.
pub(crate) fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
