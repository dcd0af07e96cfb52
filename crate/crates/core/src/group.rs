//! Finite groups with two representations: bit-vectors for (Z/2Z)^k and
//! explicit multiplication tables for small arbitrary groups.
//!
//! Elements are plain `u32` ids. The identity is always id 0. For the
//! elementary abelian representation the id *is* the bit-vector, so the
//! product is XOR and no tables are stored.

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub type ElemId = u32;
pub const IDENTITY: ElemId = 0;

/// Largest rank accepted for the bit-vector representation.
pub const MAX_EA_RANK: u32 = 20;
/// Largest order accepted for multiplication-table groups.
pub const MAX_TABLE_ORDER: usize = 64;
/// Largest rank for which `automorphisms` enumerates all of GL(k, 2).
pub const DEFAULT_EA_AUT_RANK_CAP: u32 = 5;

const MAX_TABLE_AUT_CANDIDATES: u128 = 10_000_000;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// An element tagged with the group it came from. Use this for the checked
/// API; hot loops work on raw [`ElemId`]s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: u64,
    id: ElemId,
}

impl GroupElement {
    pub fn id(&self) -> ElemId {
        self.id
    }
}

#[derive(Clone, Debug)]
enum Repr {
    ElementaryAbelian { rank: u32 },
    Table { table: Vec<ElemId> },
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    uid: u64,
    name: String,
    order: usize,
    repr: Repr,
    // Table groups only; empty for the bit-vector representation.
    inverse: Vec<ElemId>,
    orders: Vec<u32>,
    class_of: Vec<u32>,
    classes: Vec<Vec<ElemId>>,
    abelian: bool,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.uid == other.uid
    }
}

impl Eq for FiniteGroup {}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn next_uid() -> u64 {
    NEXT_UID.fetch_add(1, Ordering::Relaxed)
}

impl FiniteGroup {
    /// (Z/2Z)^rank as bit-vectors.
    pub fn elementary_abelian(rank: u32) -> Result<Self> {
        if rank == 0 || rank > MAX_EA_RANK {
            return Err(Error::InvalidGroup(format!(
                "rank {rank} outside 1..={MAX_EA_RANK} for Z2^k"
            )));
        }
        Ok(FiniteGroup {
            uid: next_uid(),
            name: format!("Z2^{rank}"),
            order: 1usize << rank,
            repr: Repr::ElementaryAbelian { rank },
            inverse: Vec::new(),
            orders: Vec::new(),
            class_of: Vec::new(),
            classes: Vec::new(),
            abelian: true,
        })
    }

    /// Builds a group from a row-major multiplication table. Element 0 must
    /// be the identity. The table is checked exhaustively for the group
    /// axioms.
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<ElemId>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::InvalidGroup(format!(
                "table groups are limited to order {MAX_TABLE_ORDER}, got {n}"
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x as usize >= n {
                    return Err(Error::InvalidGroup(format!(
                        "entry {x} in row {i} out of range"
                    )));
                }
            }
            table.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "multiplication is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for (a, slot) in inverse.iter_mut().enumerate() {
            let inv = (0..n).find(|&b| at(a, b) == 0 && at(b, a) == 0);
            match inv {
                Some(b) => *slot = b as ElemId,
                None => {
                    return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
                }
            }
        }
        let mut orders = vec![0u32; n];
        for (a, slot) in orders.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = at(x, a);
                k += 1;
            }
            *slot = k;
        }
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<ElemId>> = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let idx = classes.len() as u32;
            let mut class: Vec<ElemId> = (0..n)
                .map(|g| at(at(g, x), inverse[g] as usize) as ElemId)
                .collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y as usize] = idx;
            }
            classes.push(class);
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| at(a, b) == at(b, a)));
        Ok(FiniteGroup {
            uid: next_uid(),
            name: name.into(),
            order: n,
            repr: Repr::Table { table },
            inverse,
            orders,
            class_of,
            classes,
            abelian,
        })
    }

    /// Table group from a list of permutations closed under composition.
    /// `perms[0]` must be the identity. Product is `a·b = a∘b` (apply b first).
    fn from_permutations(name: &str, perms: &[Vec<usize>]) -> Self {
        let n = perms.len();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed set");
        let rows = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let comp: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
                        index(&comp) as ElemId
                    })
                    .collect()
            })
            .collect();
        Self::from_table(name, rows).expect("permutation group tables are valid")
    }

    /// The symmetric group on three points. Ids: 0=id, 1=(12), 2=(13),
    /// 3=(23), 4=(123), 5=(132).
    pub fn symmetric3() -> Self {
        let perms = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![2, 1, 0],
            vec![0, 2, 1],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ];
        Self::from_permutations("S3", &perms)
    }

    /// Dihedral group of order 2n as symmetries of an n-gon. Ids 0..n are
    /// rotations r^i, ids n..2n are reflections s·r^i.
    pub fn dihedral(n: usize) -> Result<Self> {
        if !(2..=MAX_TABLE_ORDER / 2).contains(&n) {
            return Err(Error::InvalidGroup(format!("dihedral n={n} out of range")));
        }
        let rot = |i: usize| -> Vec<usize> { (0..n).map(|p| (p + i) % n).collect() };
        let refl = |i: usize| -> Vec<usize> { (0..n).map(|p| (n + i - p) % n).collect() };
        let perms: Vec<Vec<usize>> = (0..n).map(rot).chain((0..n).map(refl)).collect();
        Ok(Self::from_permutations(&format!("D{n}"), &perms))
    }

    /// Quaternion group. Ids: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k.
    pub fn quaternion8() -> Self {
        // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
        fn mul_unit(a: usize, b: usize) -> (bool, usize) {
            const T: [[(bool, usize); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            T[a][b]
        }
        let decode = |id: usize| (id % 2 == 1, id / 2);
        let rows = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (sa, ua) = decode(a);
                        let (sb, ub) = decode(b);
                        let (s, u) = mul_unit(ua, ub);
                        let neg = sa ^ sb ^ s;
                        (u * 2 + neg as usize) as ElemId
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", rows).expect("Q8 table is valid")
    }

    /// Cyclic group of order n (table representation).
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(Error::InvalidGroup(format!("cyclic order {n} out of range")));
        }
        let rows = (0..n)
            .map(|a| (0..n).map(|b| ((a + b) % n) as ElemId).collect())
            .collect();
        Self::from_table(format!("Z{n}"), rows)
    }

    /// Parses the group file format: first line the order n, then n lines of
    /// n space-separated ids.
    pub fn parse_table_file(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let first = lines
            .next()
            .ok_or_else(|| Error::GroupFile("empty file".into()))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::GroupFile(format!("line 1: `{first}` is not an order")))?;
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<ElemId>().map_err(|_| {
                        Error::GroupFile(format!("line {}: `{t}` is not an element id", i + 2))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::GroupFile(format!(
                "expected {n} table rows, found {}",
                rows.len()
            )));
        }
        Self::from_table(name, rows).map_err(|e| match e {
            Error::InvalidGroup(m) => Error::GroupFile(m),
            other => other,
        })
    }

    /// Resolves a group spec: `Z2^k`, `S3`, `D<n>`, `Q8` or `Z<n>`. Returns
    /// `None` if the token is not a built-in name (callers then try a file).
    pub fn from_builtin(spec: &str) -> Option<Result<Self>> {
        let s = spec.trim();
        if let Some(k) = s.strip_prefix("Z2^") {
            return Some(
                k.parse::<u32>()
                    .map_err(|_| Error::InvalidGroup(format!("bad rank in `{s}`")))
                    .and_then(Self::elementary_abelian),
            );
        }
        match s {
            "S3" => return Some(Ok(Self::symmetric3())),
            "Q8" => return Some(Ok(Self::quaternion8())),
            _ => {}
        }
        if let Some(n) = s.strip_prefix('D').and_then(|t| t.parse::<usize>().ok()) {
            return Some(Self::dihedral(n));
        }
        if let Some(n) = s.strip_prefix('Z').and_then(|t| t.parse::<usize>().ok()) {
            return Some(Self::cyclic(n));
        }
        None
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Rank k when the group is represented as (Z/2Z)^k.
    pub fn ea_rank(&self) -> Option<u32> {
        match self.repr {
            Repr::ElementaryAbelian { rank } => Some(rank),
            Repr::Table { .. } => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        self.uid == other.uid
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.order as ElemId
    }

    pub fn element(&self, id: ElemId) -> Result<GroupElement> {
        if (id as usize) < self.order {
            Ok(GroupElement { group: self.uid, id })
        } else {
            Err(Error::ElementOutOfRange {
                id: id as u64,
                order: self.order,
            })
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.uid,
            id: IDENTITY,
        }
    }

    /// Checked product of two tagged elements.
    pub fn mul_checked(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement> {
        if g.group != self.uid || h.group != self.uid {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupElement {
            group: self.uid,
            id: self.mul(g.id, h.id),
        })
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.repr {
            Repr::ElementaryAbelian { .. } => a ^ b,
            Repr::Table { table } => table[a as usize * self.order + b as usize],
        }
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        match self.repr {
            Repr::ElementaryAbelian { .. } => a,
            Repr::Table { .. } => self.inverse[a as usize],
        }
    }

    /// g·x·g⁻¹
    #[inline]
    pub fn conjugate(&self, g: ElemId, x: ElemId) -> ElemId {
        if self.abelian {
            return x;
        }
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: ElemId, n: u64) -> ElemId {
        let mut acc = IDENTITY;
        let mut base = a;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: ElemId) -> u32 {
        match self.repr {
            Repr::ElementaryAbelian { .. } => {
                if a == IDENTITY {
                    1
                } else {
                    2
                }
            }
            Repr::Table { .. } => self.orders[a as usize],
        }
    }

    /// Index of the conjugacy class containing `a`.
    pub fn class_of(&self, a: ElemId) -> u32 {
        match self.repr {
            Repr::ElementaryAbelian { .. } => a,
            Repr::Table { .. } => self.class_of[a as usize],
        }
    }

    /// Conjugacy class of `a`, sorted by id.
    pub fn conjugacy_class(&self, a: ElemId) -> Vec<ElemId> {
        match self.repr {
            Repr::ElementaryAbelian { .. } => vec![a],
            Repr::Table { .. } => self.classes[self.class_of[a as usize] as usize].clone(),
        }
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn subgroup_closure(&self, gens: &[ElemId]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[IDENTITY as usize] = true;
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Whether `subset` generates the whole group. Uses F2-rank for the
    /// bit-vector representation.
    pub fn generates(&self, subset: &[ElemId]) -> bool {
        match self.repr {
            Repr::ElementaryAbelian { rank } => f2_rank(subset) == rank,
            Repr::Table { .. } => self.subgroup_closure(subset).iter().all(|&b| b),
        }
    }

    /// Human-readable element label: a bit string for (Z/2Z)^k (bit i is the
    /// i-th character), the decimal id otherwise.
    pub fn label(&self, a: ElemId) -> String {
        match self.repr {
            Repr::ElementaryAbelian { rank } => (0..rank)
                .map(|i| if a >> i & 1 == 1 { '1' } else { '0' })
                .collect(),
            Repr::Table { .. } => a.to_string(),
        }
    }

    /// Inverse of [`label`](Self::label).
    pub fn parse_element(&self, s: &str) -> Result<ElemId> {
        let s = s.trim();
        match self.repr {
            Repr::ElementaryAbelian { rank } => {
                if s.len() != rank as usize || !s.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::InvalidGroup(format!(
                        "`{s}` is not a length-{rank} bit string"
                    )));
                }
                Ok(s.chars()
                    .enumerate()
                    .fold(0, |acc, (i, c)| acc | (((c == '1') as u32) << i)))
            }
            Repr::Table { .. } => {
                let id: ElemId = s
                    .parse()
                    .map_err(|_| Error::InvalidGroup(format!("`{s}` is not an element id")))?;
                self.element(id).map(|e| e.id)
            }
        }
    }

    /// All automorphisms of the group, without duplicates. For (Z/2Z)^k these
    /// are the invertible k×k matrices over F2, enumerated row by row; the
    /// enumeration is refused above `rank_cap`.
    pub fn automorphisms(&self, rank_cap: u32) -> Result<Vec<Automorphism>> {
        match self.repr {
            Repr::ElementaryAbelian { rank } => {
                if rank > rank_cap || rank > BitMatrix::MAX_RANK {
                    return Err(Error::Capacity(format!(
                        "GL({rank},2) has {} elements, above the enumeration cap (rank {rank_cap})",
                        gl2_order(rank)
                    )));
                }
                Ok(enumerate_gl2(rank)
                    .into_iter()
                    .map(Automorphism::Linear)
                    .collect())
            }
            Repr::Table { .. } => self.table_automorphisms(),
        }
    }

    fn table_automorphisms(&self) -> Result<Vec<Automorphism>> {
        // Greedy generating set; each new generator strictly enlarges the closure.
        let mut gens: Vec<ElemId> = Vec::new();
        let mut closure = self.subgroup_closure(&gens);
        for x in self.elements() {
            if !closure[x as usize] {
                gens.push(x);
                closure = self.subgroup_closure(&gens);
            }
        }
        let candidates: Vec<Vec<ElemId>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                self.elements().filter(|&y| self.element_order(y) == o).collect()
            })
            .collect();
        let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
        if total > MAX_TABLE_AUT_CANDIDATES {
            return Err(Error::Capacity(format!(
                "{total} generator-image candidates for automorphisms of {}",
                self.name
            )));
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<ElemId> = choice
                .iter()
                .zip(&candidates)
                .map(|(&i, c)| c[i])
                .collect();
            if let Some(map) = self.extend_homomorphism(&gens, &images) {
                out.push(Automorphism::Permutation(map));
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return Ok(out);
                }
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Extends gens ↦ images along the right Cayley graph. Returns the map if
    /// it is a well-defined bijective homomorphism.
    fn extend_homomorphism(&self, gens: &[ElemId], images: &[ElemId]) -> Option<Vec<ElemId>> {
        const UNSET: ElemId = ElemId::MAX;
        let mut map = vec![UNSET; self.order];
        map[IDENTITY as usize] = IDENTITY;
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x as usize];
            for (&g, &fg) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = self.mul(fx, fg);
                match map[y as usize] {
                    UNSET => {
                        map[y as usize] = fy;
                        queue.push_back(y);
                    }
                    v if v != fy => return None,
                    _ => {}
                }
            }
        }
        let mut hit = vec![false; self.order];
        for &v in &map {
            if v == UNSET || std::mem::replace(&mut hit[v as usize], true) {
                return None;
            }
        }
        Some(map)
    }
}

/// Rank over F2 of a set of bit-vectors (Gaussian elimination on a basis
/// keyed by leading bit).
pub fn f2_rank(vectors: &[u32]) -> u32 {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for &v in vectors {
        let mut x = v;
        while x != 0 {
            let top = 31 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                rank += 1;
                break;
            }
            x ^= basis[top];
        }
    }
    rank
}

/// |GL(k,2)| = ∏_{i<k} (2^k − 2^i).
pub fn gl2_order(k: u32) -> u128 {
    (0..k).map(|i| (1u128 << k) - (1u128 << i)).product()
}

/// A k×k matrix over F2 stored by columns: column i is the image of the
/// basis vector with bit i set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rank: u8,
    cols: [u8; 8],
}

impl BitMatrix {
    pub const MAX_RANK: u32 = 8;

    pub fn from_columns(cols: &[u32]) -> Result<Self> {
        let k = cols.len();
        if k == 0 || k > Self::MAX_RANK as usize {
            return Err(Error::Parameter(format!("matrix size {k} out of range")));
        }
        let mut c = [0u8; 8];
        for (i, &v) in cols.iter().enumerate() {
            if v >> k != 0 {
                return Err(Error::Parameter(format!("column {v:#b} has too many bits")));
            }
            c[i] = v as u8;
        }
        Ok(BitMatrix {
            rank: k as u8,
            cols: c,
        })
    }

    pub fn size(&self) -> u32 {
        self.rank as u32
    }

    pub fn columns(&self) -> &[u8] {
        &self.cols[..self.rank as usize]
    }

    #[inline]
    pub fn apply(&self, v: ElemId) -> ElemId {
        let mut out = 0u32;
        let mut bits = v;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out ^= self.cols[i] as u32;
            bits &= bits - 1;
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        let cols: Vec<u32> = self.columns().iter().map(|&c| c as u32).collect();
        f2_rank(&cols) == self.size()
    }

    /// self ∘ other
    pub fn compose(&self, other: &BitMatrix) -> BitMatrix {
        let mut cols = [0u8; 8];
        for (i, slot) in cols.iter_mut().enumerate().take(self.rank as usize) {
            *slot = self.apply(other.cols[i] as u32) as u8;
        }
        BitMatrix {
            rank: self.rank,
            cols,
        }
    }
}

fn enumerate_gl2(k: u32) -> Vec<BitMatrix> {
    let mut out = Vec::with_capacity(gl2_order(k) as usize);
    let mut cols = Vec::with_capacity(k as usize);
    fn rec(k: u32, cols: &mut Vec<u32>, out: &mut Vec<BitMatrix>) {
        if cols.len() == k as usize {
            out.push(BitMatrix::from_columns(cols).expect("size checked"));
            return;
        }
        // span of chosen columns
        let mut span = vec![false; 1 << k];
        for mask in 0u32..(1 << cols.len()) {
            let v = cols
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, &c)| acc ^ c);
            span[v as usize] = true;
        }
        for v in 1u32..(1 << k) {
            if !span[v as usize] {
                cols.push(v);
                rec(k, cols, out);
                cols.pop();
            }
        }
    }
    rec(k, &mut cols, &mut out);
    out
}

/// Two generators of GL(k,2), for ranks too large to enumerate: the
/// elementary transvection e1 ↦ e1+e2 and the cyclic shift of the basis.
pub fn gl_generators(k: u32) -> Result<Vec<BitMatrix>> {
    if k == 0 || k > BitMatrix::MAX_RANK {
        return Err(Error::Parameter(format!("rank {k} out of range")));
    }
    if k == 1 {
        return Ok(vec![BitMatrix::from_columns(&[1])?]);
    }
    let mut transvection: Vec<u32> = (0..k).map(|i| 1 << i).collect();
    transvection[0] = 0b11;
    let shift: Vec<u32> = (0..k).map(|i| 1 << ((i + 1) % k)).collect();
    Ok(vec![
        BitMatrix::from_columns(&transvection)?,
        BitMatrix::from_columns(&shift)?,
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Automorphism {
    Linear(BitMatrix),
    Permutation(Vec<ElemId>),
}

impl Automorphism {
    #[inline]
    pub fn apply(&self, a: ElemId) -> ElemId {
        match self {
            Automorphism::Linear(m) => m.apply(a),
            Automorphism::Permutation(p) => p[a as usize],
        }
    }

    /// Images of every element id, in order.
    pub fn images(&self, group: &FiniteGroup) -> Vec<ElemId> {
        group.elements().map(|a| self.apply(a)).collect()
    }
}
