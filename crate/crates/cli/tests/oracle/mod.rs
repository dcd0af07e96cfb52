//! Reference computations that never call the counting code under test.
//!
//! Everything here works directly on bit-vectors: elements of (Z/2)^k are
//! integers in 0..2^k and the group law is XOR. The algorithms are the
//! slowest obvious ones (brute-force tuples, union-find over explicit pairs,
//! Burnside over the full matrix group) so they can serve as ground truth.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

/// Rank over F2 by straightforward elimination.
pub fn rank(vectors: &[u32]) -> u32 {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len() as u32
}

/// All ordered tuples of `r` nonzero vectors in (Z/2)^k with XOR zero that
/// span the whole space.
pub fn ea_systems(k: u32, r: usize) -> Vec<Vec<u32>> {
    let top = (1u32 << k) - 1;
    let mut out = Vec::new();
    let mut t = vec![1u32; r];
    loop {
        if t.iter().fold(0, |a, &b| a ^ b) == 0 && rank(&t) == k {
            out.push(t.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            if t[i] < top {
                t[i] += 1;
                break;
            }
            t[i] = 1;
            i += 1;
        }
    }
}

/// Brute-force filter over every candidate tuple, including the identity,
/// for the criterion that a system generates and multiplies to zero.
pub fn brute_force_systems(k: u32, r: usize) -> Vec<Vec<u32>> {
    let size = 1u32 << k;
    let total = (size as u64).pow(r as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let t: Vec<u32> = (0..r)
            .map(|_| {
                let d = (c % size as u64) as u32;
                c /= size as u64;
                d
            })
            .collect();
        if t.contains(&0) {
            continue;
        }
        if t.iter().fold(0, |a, &b| a ^ b) != 0 {
            continue;
        }
        if rank(&t) != k {
            continue;
        }
        out.push(t);
    }
    out
}

/// A matrix stored as the images of the standard basis vectors.
pub type Matrix = Vec<u32>;

pub fn apply(m: &Matrix, v: u32) -> u32 {
    let mut out = 0;
    for (i, &col) in m.iter().enumerate() {
        if v >> i & 1 == 1 {
            out ^= col;
        }
    }
    out
}

/// Every invertible k×k matrix over F2, found by trying all column choices.
pub fn all_gl(k: u32) -> Vec<Matrix> {
    let size = 1u32 << k;
    let mut out = Vec::new();
    let mut cols = vec![0u32; k as usize];
    fn rec(i: usize, k: u32, size: u32, cols: &mut Vec<u32>, out: &mut Vec<Matrix>) {
        if i == k as usize {
            if rank(cols) == k {
                out.push(cols.clone());
            }
            return;
        }
        for c in 1..size {
            cols[i] = c;
            rec(i + 1, k, size, cols, out);
        }
    }
    rec(0, k, size, &mut cols, &mut out);
    out
}

/// A transvection and a cyclic coordinate shift. The caller checks they
/// generate by closing them up.
pub fn gl_pair(k: u32) -> Vec<Matrix> {
    let mut shift: Matrix = (0..k).map(|i| 1 << ((i + 1) % k)).collect();
    if k == 1 {
        shift = vec![1];
    }
    let mut trans: Matrix = (0..k).map(|i| 1 << i).collect();
    if k > 1 {
        trans[0] = 0b11;
    }
    vec![trans, shift]
}

pub fn closure_size(k: u32, gens: &[Matrix]) -> usize {
    let id: Matrix = (0..k).map(|i| 1 << i).collect();
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut stack = vec![id.clone()];
    seen.insert(id);
    while let Some(m) = stack.pop() {
        for g in gens {
            let prod: Matrix = m.iter().map(|&c| apply(g, c)).collect();
            if seen.insert(prod.clone()) {
                stack.push(prod);
            }
        }
    }
    seen.len()
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

fn encode(t: &[u32]) -> u64 {
    t.iter().fold(0u64, |acc, &x| acc << 5 | x as u64)
}

fn support(t: &[u32]) -> u64 {
    t.iter().fold(0u64, |acc, &x| acc | 1 << x)
}

/// Classes of ordered pairs of disjoint spanning systems under Hurwitz
/// moves on either side, simultaneous linear automorphisms, and (when
/// `swap`) exchange of the two sides. Every ordered tuple is materialized.
pub struct NaiveClasses {
    index: HashMap<(u64, u64), u32>,
    root: Vec<u32>,
}

impl NaiveClasses {
    pub fn count(&self) -> usize {
        self.root.iter().collect::<HashSet<_>>().len()
    }

    /// Class label of a pair, or `None` if it is not a valid structure.
    pub fn class_of(&self, a: &[u32], b: &[u32]) -> Option<u32> {
        self.index
            .get(&(encode(a), encode(b)))
            .map(|&n| self.root[n as usize])
    }
}

pub fn naive_classes(k: u32, r1: usize, r2: usize, swap: bool) -> NaiveClasses {
    let gens = gl_pair(k);
    assert_eq!(closure_size(k, &gens), all_gl(k).len(), "oracle generators do not generate");
    let s1 = ea_systems(k, r1);
    let s2 = if r1 == r2 { s1.clone() } else { ea_systems(k, r2) };
    let mut index: HashMap<(u64, u64), u32> = HashMap::new();
    let mut pairs: Vec<(&[u32], &[u32])> = Vec::new();
    for a in &s1 {
        let sa = support(a);
        for b in &s2 {
            if sa & support(b) == 0 {
                index.insert((encode(a), encode(b)), pairs.len() as u32);
                pairs.push((a, b));
            }
        }
    }
    let mut uf = UnionFind::new(pairs.len());
    let look = |a: &[u32], b: &[u32]| -> u32 { index[&(encode(a), encode(b))] };
    let braid = |t: &[u32], i: usize| -> Vec<u32> {
        let mut m = t.to_vec();
        let (x, y) = (m[i], m[i + 1]);
        m[i] = y;
        m[i + 1] = y ^ x ^ y;
        m
    };
    for (n, &(a, b)) in pairs.iter().enumerate() {
        let n = n as u32;
        for i in 0..a.len() - 1 {
            uf.union(n, look(&braid(a, i), b));
        }
        for i in 0..b.len() - 1 {
            uf.union(n, look(a, &braid(b, i)));
        }
        for g in &gens {
            let ga: Vec<u32> = a.iter().map(|&v| apply(g, v)).collect();
            let gb: Vec<u32> = b.iter().map(|&v| apply(g, v)).collect();
            uf.union(n, look(&ga, &gb));
        }
        if swap && r1 == r2 {
            uf.union(n, look(b, a));
        }
    }
    let root = (0..pairs.len() as u32).map(|n| uf.find(n)).collect();
    NaiveClasses { index, root }
}

pub fn naive_component_count(k: u32, r1: usize, r2: usize, swap: bool) -> usize {
    naive_classes(k, r1, r2, swap).count()
}

/// Cycles of a matrix acting on the nonzero vectors.
fn cycles(k: u32, g: &Matrix) -> Vec<Vec<u32>> {
    let size = 1u32 << k;
    let mut seen = vec![false; size as usize];
    let mut out = Vec::new();
    for v in 1..size {
        if seen[v as usize] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = v;
        while !seen[x as usize] {
            seen[x as usize] = true;
            cyc.push(x);
            x = apply(g, x);
        }
        out.push(cyc);
    }
    out
}

/// Ways to put a multiplicity a ≥ 1 on each chosen cycle so that the total
/// count is `n` and the odd cycles XOR to zero.
fn side_solutions(chosen: &[(usize, u32)], n: u64, k: u32) -> u128 {
    // state: (total, xor) -> count
    let size = 1usize << k;
    let mut dp = vec![vec![0u128; size]; n as usize + 1];
    dp[0][0] = 1;
    for &(len, x) in chosen {
        let mut next = vec![vec![0u128; size]; n as usize + 1];
        for total in 0..=n as usize {
            for acc in 0..size {
                let c = dp[total][acc];
                if c == 0 {
                    continue;
                }
                let mut a = 1usize;
                while total + a * len <= n as usize {
                    let nx = if a % 2 == 1 { acc ^ x as usize } else { acc };
                    next[total + a * len][nx] += c;
                    a += 1;
                }
            }
        }
        dp = next;
    }
    dp[n as usize][0]
}

/// Orbits of the full linear group on pairs of multiplicity functions
/// (sizes n1 and n2, disjoint spanning supports, odd part summing to zero),
/// by Burnside's lemma. Without `swap` the two sides are distinguished.
pub fn burnside_count(k: u32, n1: u64, n2: u64, swap: bool) -> u128 {
    let gl = all_gl(k);
    let mut total: u128 = 0;
    for g in &gl {
        let cyc = cycles(k, g);
        let t = cyc.len();
        let info: Vec<(usize, u32)> = cyc
            .iter()
            .map(|c| (c.len(), c.iter().fold(0, |a, &b| a ^ b)))
            .collect();
        let mut assign = vec![0u8; t];
        loop {
            let mut ok = true;
            let mut sides: [Vec<(usize, u32)>; 2] = [Vec::new(), Vec::new()];
            let mut vecs: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
            for (c, &s) in assign.iter().enumerate() {
                if s > 0 {
                    sides[s as usize - 1].push(info[c]);
                    vecs[s as usize - 1].extend(cyc[c].iter().copied());
                }
            }
            for v in &vecs {
                if rank(v) != k {
                    ok = false;
                }
            }
            if ok {
                total += side_solutions(&sides[0], n1, k) * side_solutions(&sides[1], n2, k);
            }
            let mut i = 0;
            loop {
                if i == t {
                    break;
                }
                assign[i] += 1;
                if assign[i] < 3 {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
            if i == t {
                break;
            }
        }
    }
    let mut order = gl.len() as u128;
    if swap && n1 == n2 {
        // Elements g∘swap fix (m, m∘g⁻¹) with m invariant under g²; sum
        // them by enumerating valid multiplicity functions directly.
        let ms = multiplicity_functions(k, n1);
        for g in &gl {
            let gsq: Matrix = g.iter().map(|&c| apply(g, c)).collect();
            for m in &ms {
                let moved = pull(m, &gsq, k);
                if &moved != m {
                    continue;
                }
                let other = pull(m, g, k);
                let disjoint = (1..1usize << k).all(|v| m[v] == 0 || other[v] == 0);
                if disjoint {
                    total += 1;
                }
            }
        }
        order *= 2;
    }
    assert_eq!(total % order, 0, "Burnside sum not divisible by group order");
    total / order
}

/// m∘g⁻¹, i.e. the multiplicity function moved by g.
fn pull(m: &[u64], g: &Matrix, k: u32) -> Vec<u64> {
    let mut out = vec![0u64; 1 << k];
    for v in 1..1u32 << k {
        out[apply(g, v) as usize] = m[v as usize];
    }
    out
}

/// Every valid multiplicity function of total size n: spanning support and
/// odd-multiplicity vectors summing to zero.
pub fn multiplicity_functions(k: u32, n: u64) -> Vec<Vec<u64>> {
    let size = 1usize << k;
    let mut out = Vec::new();
    let mut m = vec![0u64; size];
    fn rec(v: usize, left: u64, k: u32, m: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let size = 1usize << k;
        if v == size {
            if left != 0 {
                return;
            }
            let xor = (1..size).filter(|&u| m[u] % 2 == 1).fold(0, |a, u| a ^ u);
            let supp: Vec<u32> = (1..size).filter(|&u| m[u] > 0).map(|u| u as u32).collect();
            if xor == 0 && rank(&supp) == k {
                out.push(m.clone());
            }
            return;
        }
        for a in 0..=left {
            m[v] = a;
            rec(v + 1, left - a, k, m, out);
        }
        m[v] = 0;
    }
    rec(1, n, k, &mut m, &mut out);
    out
}
