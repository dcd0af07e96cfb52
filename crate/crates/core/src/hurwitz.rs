//! Hurwitz moves, Hurwitz orbits and counting of ramification structures up
//! to simultaneous automorphisms and separate Hurwitz equivalence.
//!
//! A class of pairs is keyed by the least pair of Hurwitz-orbit
//! representatives over all admissible transformations, where the
//! representative of an orbit is its lexicographically least tuple. For
//! abelian groups the orbit of a tuple is the set of all its orderings, so
//! the representative is just the sorted tuple and no search is needed.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::branch_type::BranchType;
use crate::error::{Error, Result};
use crate::group::{f2_rank, Automorphism, ElemId, FiniteGroup, DEFAULT_EA_AUT_RANK_CAP};
use crate::spherical::{
    binomial_f64, checked_genus, compute_sigma, enumerate_spherical_systems,
    sorted_meet_is_trivial, EnumerationMode, RamificationStructure, SphericalSystem,
};

pub const DEFAULT_ORBIT_BUDGET: usize = 1_000_000;
pub const DEFAULT_WORK_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// In-place braid move at position `i`.
///
/// Forward: (a, b) ↦ (b, b⁻¹·a·b). Inverse: (a, b) ↦ (a·b·a⁻¹, a).
#[inline]
pub fn apply_move(group: &FiniteGroup, tuple: &mut [ElemId], i: usize, dir: Direction) {
    let (a, b) = (tuple[i], tuple[i + 1]);
    match dir {
        Direction::Forward => {
            tuple[i] = b;
            tuple[i + 1] = group.mul(group.mul(group.inv(b), a), b);
        }
        Direction::Inverse => {
            tuple[i] = group.mul(group.mul(a, b), group.inv(a));
            tuple[i + 1] = a;
        }
    }
}

pub fn hurwitz_move(t: &SphericalSystem, i: usize, dir: Direction) -> Result<SphericalSystem> {
    if i + 1 >= t.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: t.len(),
        });
    }
    let mut entries = t.entries().to_vec();
    apply_move(t.group(), &mut entries, i, dir);
    Ok(SphericalSystem::new_unchecked(t.group().clone(), entries))
}

#[derive(Clone, Debug)]
pub struct HurwitzOrbit {
    pub tuples: BTreeSet<Vec<ElemId>>,
    /// False when the search stopped at the budget.
    pub complete: bool,
}

impl HurwitzOrbit {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn systems(&self, group: &Arc<FiniteGroup>) -> Vec<SphericalSystem> {
        self.tuples
            .iter()
            .map(|t| SphericalSystem::new_unchecked(group.clone(), t.clone()))
            .collect()
    }
}

/// Breadth-first closure of `t` under forward and inverse moves.
pub fn hurwitz_orbit(t: &SphericalSystem, budget: usize) -> HurwitzOrbit {
    let (seen, complete) = orbit_search(t.group(), t.entries(), budget);
    HurwitzOrbit {
        tuples: seen.into_iter().collect(),
        complete,
    }
}

fn orbit_search(
    group: &FiniteGroup,
    start: &[ElemId],
    budget: usize,
) -> (HashSet<Vec<ElemId>>, bool) {
    let mut seen: HashSet<Vec<ElemId>> = HashSet::new();
    seen.insert(start.to_vec());
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(t) = queue.pop_front() {
        for i in 0..t.len().saturating_sub(1) {
            for dir in [Direction::Forward, Direction::Inverse] {
                let mut u = t.clone();
                apply_move(group, &mut u, i, dir);
                if !seen.contains(&u) {
                    if seen.len() >= budget {
                        return (seen, false);
                    }
                    seen.insert(u.clone());
                    queue.push_back(u);
                }
            }
        }
    }
    (seen, true)
}

/// Least tuple in the Hurwitz orbit of `t`.
fn orbit_representative(group: &FiniteGroup, t: &[ElemId], budget: usize) -> Result<Vec<ElemId>> {
    if group.is_abelian() {
        let mut s = t.to_vec();
        s.sort_unstable();
        return Ok(s);
    }
    let (seen, complete) = orbit_search(group, t, budget);
    if !complete {
        return Err(Error::BudgetExceeded {
            what: "Hurwitz orbit".into(),
            budget: budget as u64,
        });
    }
    Ok(seen.into_iter().min().expect("orbit contains the start tuple"))
}

/// Canonical, deterministic byte encoding of a class of ramification
/// structures. Rendered as lowercase hex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairClassKey(Vec<u8>);

impl PairClassKey {
    fn encode(first: &[ElemId], second: &[ElemId]) -> Self {
        let mut bytes = Vec::with_capacity(first.len() + second.len() + 4);
        for side in [first, second] {
            push_varint(&mut bytes, side.len() as u64);
            for &e in side {
                push_varint(&mut bytes, e as u64);
            }
        }
        PairClassKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The two representative tuples the key was built from.
    pub fn decode(&self) -> (Vec<ElemId>, Vec<ElemId>) {
        let mut pos = 0;
        let mut read = || {
            let mut v = 0u64;
            let mut shift = 0;
            loop {
                let b = self.0[pos];
                pos += 1;
                v |= ((b & 0x7f) as u64) << shift;
                if b & 0x80 == 0 {
                    return v;
                }
                shift += 7;
            }
        };
        let mut sides = Vec::with_capacity(2);
        for _ in 0..2 {
            let n = read();
            sides.push((0..n).map(|_| read() as ElemId).collect::<Vec<_>>());
        }
        let second = sides.pop().unwrap();
        (sides.pop().unwrap(), second)
    }
}

fn push_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let b = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(b);
            return;
        }
        out.push(b | 0x80);
    }
}

impl fmt::Display for PairClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl Serialize for PairClassKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PairClassKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.len() % 2 != 0 {
            return Err(serde::de::Error::custom("odd-length hex key"));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16))
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map(PairClassKey)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct CountOptions {
    /// Keep (T₁,T₂) and (T₂,T₁) apart even when τ₁ = τ₂.
    pub count_ordered_pairs: bool,
    /// Also identify (T₁,T₂) with (g·T₁·g⁻¹, T₂).
    pub identify_inner: bool,
    /// Upper bound on enumerated candidates / canonicalisation work.
    pub budget: u64,
    pub orbit_budget: usize,
    pub aut_rank_cap: u32,
    /// Skip the (Z/2Z)^k fast path. Used to cross-check the two paths.
    pub force_generic: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            count_ordered_pairs: false,
            identify_inner: false,
            budget: DEFAULT_WORK_BUDGET,
            orbit_budget: DEFAULT_ORBIT_BUDGET,
            aut_rank_cap: DEFAULT_EA_AUT_RANK_CAP,
            force_generic: false,
        }
    }
}

impl CountOptions {
    fn swap_applies(&self, tau1: &BranchType, tau2: &BranchType) -> bool {
        tau1 == tau2 && !self.count_ordered_pairs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    Exact,
    BudgetLimited,
    FormulaOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convention {
    pub swap_identified: bool,
    pub identify_inner: bool,
    /// What h counts: plain components for the (Z/2Z)^k family, otherwise
    /// components or pairs of complex-conjugate components.
    pub label: String,
}

impl Convention {
    pub fn new(group: &FiniteGroup, swap: bool, inner: bool) -> Self {
        let label = if group.ea_rank().is_some() {
            "components"
        } else {
            "components or conjugate-component pairs"
        };
        Convention {
            swap_identified: swap,
            identify_inner: inner,
            label: label.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentCount {
    pub h: u64,
    pub keys: BTreeSet<PairClassKey>,
    pub completeness: Completeness,
    pub convention: Convention,
}

/// Canonical key of the class of `r` under simultaneous `auts` and separate
/// Hurwitz moves (plus the swap and inner conventions in `opts`).
pub fn pair_class_key(
    r: &RamificationStructure,
    auts: &[Automorphism],
    opts: &CountOptions,
) -> Result<PairClassKey> {
    let group = r.group();
    let swap = opts.swap_applies(r.t1().unordered_type(), r.t2().unordered_type());
    let inner: Vec<ElemId> = if opts.identify_inner && !group.is_abelian() {
        group.elements().collect()
    } else {
        vec![crate::group::IDENTITY]
    };
    let mut best: Option<(Vec<ElemId>, Vec<ElemId>)> = None;
    let mut consider = |cand: (Vec<ElemId>, Vec<ElemId>)| {
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    };
    for phi in auts {
        let img2: Vec<ElemId> = r.t2().entries().iter().map(|&e| phi.apply(e)).collect();
        let rep2 = orbit_representative(group, &img2, opts.orbit_budget)?;
        for &g in &inner {
            let img1: Vec<ElemId> = r
                .t1()
                .entries()
                .iter()
                .map(|&e| phi.apply(group.conjugate(g, e)))
                .collect();
            let rep1 = orbit_representative(group, &img1, opts.orbit_budget)?;
            if swap {
                consider((rep2.clone(), rep1.clone()));
            }
            consider((rep1, rep2.clone()));
        }
    }
    let (a, b) = best.ok_or_else(|| Error::Parameter("empty automorphism list".into()))?;
    Ok(PairClassKey::encode(&a, &b))
}

/// Number of classes of ramification structures of type (τ₁, τ₂) on
/// `group`, together with their canonical keys.
pub fn count_components(
    group: &Arc<FiniteGroup>,
    tau1: &BranchType,
    tau2: &BranchType,
    opts: &CountOptions,
) -> Result<ComponentCount> {
    let swap = opts.swap_applies(tau1, tau2);
    let convention = Convention::new(group, swap, opts.identify_inner && !group.is_abelian());
    let empty = |convention| ComponentCount {
        h: 0,
        keys: BTreeSet::new(),
        completeness: Completeness::Exact,
        convention,
    };
    let order = group.order() as u64;
    if tau1.len() < 3
        || tau2.len() < 3
        || checked_genus(order, tau1).is_err()
        || checked_genus(order, tau2).is_err()
    {
        return Ok(empty(convention));
    }
    let present: HashSet<u32> = group.elements().map(|e| group.element_order(e)).collect();
    if tau1
        .parts()
        .iter()
        .chain(tau2.parts())
        .any(|(m, _)| !present.contains(m))
    {
        return Ok(empty(convention));
    }

    if let (Some(k), false) = (group.ea_rank(), opts.force_generic) {
        let keys = count_elementary_abelian(group, k, tau1.len(), tau2.len(), swap, opts)?;
        return Ok(ComponentCount {
            h: keys.len() as u64,
            keys,
            completeness: Completeness::Exact,
            convention,
        });
    }
    count_generic(group, tau1, tau2, swap, convention, opts)
}

struct OrbitTable {
    index: HashMap<Vec<ElemId>, u32>,
    reps: Vec<Vec<ElemId>>,
    sigmas: Vec<Vec<ElemId>>,
    complete: bool,
}

fn orbit_table(group: &Arc<FiniteGroup>, tau: &BranchType, opts: &CountOptions) -> Result<OrbitTable> {
    let mut table = OrbitTable {
        index: HashMap::new(),
        reps: Vec::new(),
        sigmas: Vec::new(),
        complete: true,
    };
    let mut enumerated = 0u64;
    for t in enumerate_spherical_systems(group, tau, EnumerationMode::Ordered)? {
        enumerated += 1;
        if enumerated > opts.budget {
            return Err(Error::BudgetExceeded {
                what: format!("enumeration of type {tau} systems over {}", group.name()),
                budget: opts.budget,
            });
        }
        if table.index.contains_key(t.entries()) {
            continue;
        }
        let (orbit, complete) = orbit_search(group, t.entries(), opts.orbit_budget);
        table.complete &= complete;
        let id = table.reps.len() as u32;
        let rep = orbit.iter().min().expect("nonempty").clone();
        table.sigmas.push(t.sigma_set().to_vec());
        table.reps.push(rep);
        for u in orbit {
            table.index.insert(u, id);
        }
    }
    Ok(table)
}

fn rep_of(table: &OrbitTable, id: u32) -> &[ElemId] {
    &table.reps[id as usize]
}

fn count_generic(
    group: &Arc<FiniteGroup>,
    tau1: &BranchType,
    tau2: &BranchType,
    swap: bool,
    convention: Convention,
    opts: &CountOptions,
) -> Result<ComponentCount> {
    let auts = group.automorphisms(opts.aut_rank_cap)?;
    let first_owned = orbit_table(group, tau1, opts)?;
    let first = &first_owned;
    let second_owned;
    let second = if tau1 == tau2 {
        first
    } else {
        second_owned = orbit_table(group, tau2, opts)?;
        &second_owned
    };
    let inner: Vec<ElemId> = if convention.identify_inner {
        group.elements().collect()
    } else {
        vec![crate::group::IDENTITY]
    };
    let missing = std::sync::atomic::AtomicBool::new(false);
    let lookup = |table: &OrbitTable, t: &[ElemId]| -> Option<u32> {
        let id = table.index.get(t).copied();
        if id.is_none() {
            missing.store(true, std::sync::atomic::Ordering::Relaxed);
        }
        id
    };

    let keys: BTreeSet<PairClassKey> = (0..first.reps.len())
        .into_par_iter()
        .flat_map_iter(|o1| {
            let mut local = Vec::new();
            for o2 in 0..second.reps.len() {
                if !sorted_meet_is_trivial(&first.sigmas[o1], &second.sigmas[o2]) {
                    continue;
                }
                let mut best: Option<(u32, u32, bool)> = None;
                let better = |a: (u32, u32, bool), b: (u32, u32, bool)| -> bool {
                    let key = |x: (u32, u32, bool)| {
                        if x.2 {
                            (rep_of(second, x.0), rep_of(first, x.1))
                        } else {
                            (rep_of(first, x.0), rep_of(second, x.1))
                        }
                    };
                    key(a) < key(b)
                };
                for phi in &auts {
                    let img2: Vec<ElemId> =
                        second.reps[o2].iter().map(|&e| phi.apply(e)).collect();
                    let Some(i2) = lookup(second, &img2) else { continue };
                    for &g in &inner {
                        let img1: Vec<ElemId> = first.reps[o1]
                            .iter()
                            .map(|&e| phi.apply(group.conjugate(g, e)))
                            .collect();
                        let Some(i1) = lookup(first, &img1) else { continue };
                        let mut cands = vec![(i1, i2, false)];
                        if swap {
                            cands.push((i2, i1, true));
                        }
                        for c in cands {
                            if best.is_none_or(|b| better(c, b)) {
                                best = Some(c);
                            }
                        }
                    }
                }
                if let Some(b) = best {
                    let (a, c) = if b.2 {
                        (rep_of(second, b.0), rep_of(first, b.1))
                    } else {
                        (rep_of(first, b.0), rep_of(second, b.1))
                    };
                    local.push(PairClassKey::encode(a, c));
                }
            }
            local
        })
        .collect();

    let complete = first.complete
        && second.complete
        && !missing.load(std::sync::atomic::Ordering::Relaxed);
    Ok(ComponentCount {
        h: keys.len() as u64,
        keys,
        completeness: if complete {
            Completeness::Exact
        } else {
            Completeness::BudgetLimited
        },
        convention,
    })
}

/// A zero-sum subset O of `members` (as a bitmask over `members`) with
/// |O| ≡ n (mod 2) and 2|S| − |O| ≤ n, if any. Such an O is exactly the set
/// of odd multiplicities of some admissible multiplicity function with
/// total `n` on support S = `members`.
pub(crate) fn feasible_odd_set(members: &[u32], n: u64) -> Option<u64> {
    let s = members.len() as u64;
    if s > n || members.len() > 40 {
        return None;
    }
    (0u64..(1 << members.len())).find(|&sub| {
        let odd = sub.count_ones() as u64;
        odd % 2 == n % 2
            && 2 * s - odd <= n
            && members
                .iter()
                .enumerate()
                .filter(|(i, _)| sub >> i & 1 == 1)
                .fold(0, |acc, (_, &v)| acc ^ v)
                == 0
    })
}

fn permute_mask(perm: &[u8], mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << perm[i];
        m &= m - 1;
    }
    out
}

/// Compositions of `n` into one positive part per support vector whose odd
/// parts XOR to zero.
fn parity_compositions(support: &[u32], n: u64) -> Vec<Vec<u32>> {
    fn rec(
        support: &[u32],
        left: u64,
        xor: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let i = cur.len();
        if i + 1 == support.len() {
            let m = left;
            let x = if m % 2 == 1 { xor ^ support[i] } else { xor };
            if x == 0 {
                cur.push(m as u32);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let rest = (support.len() - i - 1) as u64;
        for m in 1..=(left - rest) {
            let x = if m % 2 == 1 { xor ^ support[i] } else { xor };
            cur.push(m as u32);
            rec(support, left - m, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if support.is_empty() || (support.len() as u64) > n {
        return out;
    }
    rec(support, n, 0, &mut Vec::with_capacity(support.len()), &mut out);
    out
}

struct SupportOrbit {
    s1: u32,
    s2: u32,
    /// (permutation index, swapped) fixing (s1, s2).
    stabilizer: Vec<(usize, bool)>,
}

/// Fast path for (Z/2Z)^k: every tuple is determined up to Hurwitz moves by
/// its multiplicity function on the nonzero vectors, so a class is a pair of
/// multiplicity functions with disjoint spanning supports, modulo GL(k,2).
fn count_elementary_abelian(
    group: &FiniteGroup,
    k: u32,
    n1: u64,
    n2: u64,
    swap: bool,
    opts: &CountOptions,
) -> Result<BTreeSet<PairClassKey>> {
    let nvec = (1usize << k) - 1;
    let raw_pairs = 3f64.powi(nvec as i32);
    if raw_pairs > opts.budget as f64 {
        return Err(Error::BudgetExceeded {
            what: format!("support-pair search over Z2^{k} ({raw_pairs:.3e} candidates)"),
            budget: opts.budget,
        });
    }
    let auts = group.automorphisms(opts.aut_rank_cap)?;
    // vectors[i] = i + 1; perms map index -> index
    let vectors: Vec<u32> = (1..=nvec as u32).collect();
    let perms: Vec<Vec<u8>> = auts
        .iter()
        .map(|a| vectors.iter().map(|&v| (a.apply(v) - 1) as u8).collect())
        .collect();

    let full = if nvec == 32 { u32::MAX } else { (1u32 << nvec) - 1 };
    let valid_for = |n: u64| -> Vec<bool> {
        (0..=full)
            .map(|mask| {
                let members: Vec<u32> = (0..nvec)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| vectors[i])
                    .collect();
                f2_rank(&members) == k && feasible_odd_set(&members, n).is_some()
            })
            .collect()
    };
    let valid1 = valid_for(n1);
    let valid2 = if n1 == n2 { valid1.clone() } else { valid_for(n2) };

    let transform = |(s1, s2): (u32, u32), p: usize, swapped: bool| -> (u32, u32) {
        let a = permute_mask(&perms[p], s1);
        let b = permute_mask(&perms[p], s2);
        if swapped {
            (b, a)
        } else {
            (a, b)
        }
    };
    let swaps: &[bool] = if swap { &[false, true] } else { &[false] };

    let mut visited: HashSet<(u32, u32)> = HashSet::new();
    let mut orbits: Vec<SupportOrbit> = Vec::new();
    for s1 in 0..=full {
        if !valid1[s1 as usize] {
            continue;
        }
        let rest = full & !s1;
        let mut s2 = rest;
        loop {
            if valid2[s2 as usize] && !visited.contains(&(s1, s2)) {
                let mut stabilizer = Vec::new();
                for p in 0..perms.len() {
                    for &sw in swaps {
                        let img = transform((s1, s2), p, sw);
                        if img == (s1, s2) {
                            stabilizer.push((p, sw));
                        }
                        visited.insert(img);
                    }
                }
                orbits.push(SupportOrbit { s1, s2, stabilizer });
            }
            if s2 == 0 {
                break;
            }
            s2 = (s2 - 1) & rest;
        }
    }

    let work: f64 = orbits
        .iter()
        .map(|o| {
            binomial_f64(n1 - 1, o.s1.count_ones() as u64 - 1)
                * binomial_f64(n2 - 1, o.s2.count_ones() as u64 - 1)
                * o.stabilizer.len() as f64
        })
        .sum();
    if work > opts.budget as f64 {
        return Err(Error::BudgetExceeded {
            what: format!(
                "canonicalisation of multiplicity pairs over Z2^{k} for lengths ({n1},{n2}) ({work:.3e} steps)"
            ),
            budget: opts.budget,
        });
    }

    let members_of = |mask: u32| -> Vec<usize> { (0..nvec).filter(|&i| mask >> i & 1 == 1).collect() };

    // Classes are first told apart within each support orbit, using only its
    // stabilizer; each is then put in the global form (maximum over all of
    // Aut and the swap) so keys agree with `pair_class_key`.
    let mut classes: BTreeSet<Vec<u32>> = BTreeSet::new();
    for orbit in &orbits {
        let idx1 = members_of(orbit.s1);
        let idx2 = members_of(orbit.s2);
        let sup1: Vec<u32> = idx1.iter().map(|&i| vectors[i]).collect();
        let sup2: Vec<u32> = idx2.iter().map(|&i| vectors[i]).collect();
        let comps1 = parity_compositions(&sup1, n1);
        let comps2 = parity_compositions(&sup2, n2);
        if comps1.is_empty() || comps2.is_empty() {
            continue;
        }
        let chunk: Vec<Vec<u32>> = comps1
            .par_iter()
            .flat_map_iter(|c1| {
                let mut base = vec![0u32; 2 * nvec];
                for (j, &i) in idx1.iter().enumerate() {
                    base[i] = c1[j];
                }
                let mut out = Vec::with_capacity(comps2.len());
                for c2 in &comps2 {
                    for slot in base[nvec..].iter_mut() {
                        *slot = 0;
                    }
                    for (j, &i) in idx2.iter().enumerate() {
                        base[nvec + i] = c2[j];
                    }
                    out.push(best_image(&base, nvec, &perms, orbit.stabilizer.iter().copied()));
                }
                out
            })
            .collect();
        classes.extend(chunk);
    }
    let all: Vec<(usize, bool)> = (0..perms.len())
        .flat_map(|p| swaps.iter().map(move |&sw| (p, sw)))
        .collect();
    let classes: Vec<Vec<u32>> = classes.into_iter().collect();
    let keys: Vec<PairClassKey> = classes
        .par_iter()
        .map(|m| multiplicities_to_key(&best_image(m, nvec, &perms, all.iter().copied()), nvec))
        .collect();
    Ok(keys.into_iter().collect())
}

/// Largest image of the concatenated multiplicity vector `base` under the
/// given (permutation, swapped) elements. Larger multiplicity on a smaller
/// vector means a lexicographically smaller sorted entry list, so this is
/// the minimum of the sorted tuples used by [`pair_class_key`].
fn best_image(
    base: &[u32],
    nvec: usize,
    perms: &[Vec<u8>],
    elements: impl Iterator<Item = (usize, bool)>,
) -> Vec<u32> {
    let mut cand = vec![0u32; 2 * nvec];
    let mut best = vec![0u32; 2 * nvec];
    for (p, sw) in elements {
        let perm = &perms[p];
        for i in 0..nvec {
            let (a, b) = (base[i], base[nvec + i]);
            let j = perm[i] as usize;
            if sw {
                cand[j] = b;
                cand[nvec + j] = a;
            } else {
                cand[j] = a;
                cand[nvec + j] = b;
            }
        }
        if cand > best {
            best.copy_from_slice(&cand);
        }
    }
    best
}

fn multiplicities_to_key(mult: &[u32], nvec: usize) -> PairClassKey {
    let expand = |m: &[u32]| -> Vec<ElemId> {
        m.iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n((i + 1) as ElemId, c as usize))
            .collect()
    };
    PairClassKey::encode(&expand(&mult[..nvec]), &expand(&mult[nvec..]))
}

/// Σ-set of a raw tuple; exposed for invariant checks.
pub fn sigma_of(group: &FiniteGroup, tuple: &[ElemId]) -> Vec<ElemId> {
    compute_sigma(group, tuple)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2(k: u32) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::elementary_abelian(k).unwrap())
    }

    fn sys(g: &Arc<FiniteGroup>, labels: &[&str]) -> SphericalSystem {
        let e = labels.iter().map(|s| g.parse_element(s).unwrap()).collect();
        SphericalSystem::new(g.clone(), e).unwrap()
    }

    #[test]
    fn abelian_move_is_transposition() {
        let g = z2(2);
        let t = sys(&g, &["10", "01", "11"]);
        let u = hurwitz_move(&t, 0, Direction::Forward).unwrap();
        assert_eq!(u.labels(), vec!["01", "10", "11"]);
        assert!(matches!(
            hurwitz_move(&t, 2, Direction::Forward),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn s3_move_conjugates() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        // ((12),(23),(12),(23)) has product ((12)(23))^2 = (132)... use a valid one
        let t = SphericalSystem::new_unchecked(s3.clone(), vec![1, 3, 2, 3]);
        let u = hurwitz_move(&t, 0, Direction::Forward).unwrap();
        assert_eq!(u.entries()[0], 3);
        assert_eq!(u.entries()[1], 2); // (23)(12)(23) = (13)
    }

    #[test]
    fn orbits_small() {
        let g = z2(2);
        assert_eq!(hurwitz_orbit(&sys(&g, &["10", "01", "11"]), 100).len(), 6);
        assert_eq!(hurwitz_orbit(&sys(&g, &["10", "10", "01", "01"]), 100).len(), 6);
        let partial = hurwitz_orbit(&sys(&g, &["10", "10", "01", "01"]), 3);
        assert!(!partial.complete);
        assert_eq!(partial.len(), 3);
    }

    #[test]
    fn constant_tuple_orbit_is_singleton() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let t = SphericalSystem::new_unchecked(s3, vec![1, 1]);
        assert_eq!(hurwitz_orbit(&t, 10).len(), 1);
    }

    #[test]
    fn key_roundtrip() {
        let k = PairClassKey::encode(&[1, 2, 300], &[4]);
        assert_eq!(k.decode(), (vec![1, 2, 300], vec![4]));
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(serde_json::from_str::<PairClassKey>(&s).unwrap(), k);
    }

    #[test]
    fn parity_compositions_small() {
        // Z2^2 support {10,01,11}, n = 4: odd parts must XOR to zero
        let c = parity_compositions(&[1, 2, 3], 4);
        // (2,1,1) is the only... plus permutations of which part is 2: odd parts
        // {01,11} XOR = 10 ≠ 0, so none with exactly two odd parts; all-odd
        // impossible (sum 4 needs even count). Hence zero.
        assert!(c.is_empty());
        let c = parity_compositions(&[1, 2, 3], 5);
        assert_eq!(c.len(), 3); // (3,1,1),(1,3,1),(1,1,3)
    }

    #[test]
    fn z2_squared_has_no_structures() {
        let g = z2(2);
        let tau = BranchType::involutions(4);
        let c = count_components(&g, &tau, &tau, &CountOptions::default()).unwrap();
        assert_eq!(c.h, 0);
    }

    #[test]
    fn missing_order_gives_zero() {
        let g = z2(3);
        let c = count_components(
            &g,
            &"3^6".parse().unwrap(),
            &"2^6".parse().unwrap(),
            &CountOptions::default(),
        )
        .unwrap();
        assert_eq!(c.h, 0);
    }
}
