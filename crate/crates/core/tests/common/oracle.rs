//! Brute-force oracles written directly from the definitions.

use std::collections::BTreeSet;

use bshell_core::corpus::permutations;
use bshell_core::generate::{boolean, broom};
use bshell_core::nested::facets;
use bshell_core::orders::el_order;
use bshell_core::shelling::check_shelling;
use bshell_core::{BuildingSet, Flat, Matroid, NestedSet};

use super::{arc, corpus};

/// Smallest flat containing `bits`, found by scanning all flats.
pub fn join_bits(m: &Matroid, bits: u64) -> u64 {
    m.flats()
        .iter()
        .map(|f| f.bits())
        .filter(|f| f & bits == bits)
        .min_by_key(|f| f.count_ones())
        .unwrap()
}

fn comparable(a: u64, b: u64) -> bool {
    a & b == a || a & b == b
}

/// Nested: contains max(B), and no antichain of two or more members joins into B.
fn oracle_nested(m: &Matroid, b: &[u64], maxb: &[u64], s: &[u64]) -> bool {
    if !maxb.iter().all(|x| s.contains(x)) {
        return false;
    }
    for mask in 1u32..(1 << s.len()) {
        if mask.count_ones() < 2 {
            continue;
        }
        let pick: Vec<u64> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        let antichain = pick.iter().enumerate().all(|(i, &x)| pick[i + 1..].iter().all(|&y| !comparable(x, y)));
        if antichain && b.contains(&join_bits(m, pick.iter().fold(0, |a, x| a | x))) {
            return false;
        }
    }
    true
}

/// Inclusion-maximal nested sets by filtering every subset of B.
pub fn oracle_facets(bs: &BuildingSet) -> BTreeSet<Vec<u64>> {
    let m = bs.matroid();
    let b: Vec<u64> = bs.members().iter().map(|x| x.bits()).collect();
    let maxb: Vec<u64> = b.iter().copied().filter(|&x| !b.iter().any(|&y| y != x && x & y == x)).collect();
    let mut nested_sets: Vec<Vec<u64>> = Vec::new();
    for mask in 0u32..(1 << b.len()) {
        let s: Vec<u64> = (0..b.len()).filter(|i| mask >> i & 1 == 1).map(|i| b[i]).collect();
        if oracle_nested(m, &b, &maxb, &s) {
            nested_sets.push(s);
        }
    }
    let is_sub = |a: &Vec<u64>, c: &Vec<u64>| a.len() < c.len() && a.iter().all(|x| c.contains(x));
    nested_sets
        .iter()
        .filter(|s| !nested_sets.iter().any(|t| is_sub(s, t)))
        .map(|s| {
            let mut v = s.clone();
            v.sort();
            v
        })
        .collect()
}

pub fn library_facets(b: &BuildingSet) -> BTreeSet<Vec<u64>> {
    facets(b)
        .iter()
        .map(|n| {
            let mut v: Vec<u64> = n.flats().iter().map(|x| x.bits()).collect();
            v.sort();
            v
        })
        .collect()
}

/// The shelling condition read literally: for every earlier facet `F_i` there
/// is an earlier `F_k` and `x ∈ F_j` with `F_i ∩ F_j ⊆ F_k ∩ F_j = F_j \ {x}`.
pub fn oracle_is_shelling(order: &[BTreeSet<u64>]) -> bool {
    if order.first().is_none_or(|f| f.len() <= 1) {
        return true;
    }
    (1..order.len()).all(|j| {
        let fj = &order[j];
        (0..j).all(|i| {
            let common: BTreeSet<u64> = order[i].intersection(fj).copied().collect();
            (0..j).any(|k| {
                let ck: BTreeSet<u64> = order[k].intersection(fj).copied().collect();
                ck.len() + 1 == fj.len() && common.is_subset(&ck)
            })
        })
    })
}

pub fn reduced_bits(b: &BuildingSet, n: &NestedSet) -> BTreeSet<u64> {
    n.reduced(b).iter().map(|x| x.bits()).collect()
}

/// Maximal chains sorted by label sequences, found by depth-first search over
/// flats. Every corpus matroid used here is simple, so the label of a cover is
/// the smallest ground index it adds.
pub fn oracle_el(m: &Matroid) -> Vec<Vec<u64>> {
    let flats: Vec<u64> = m.flats().iter().map(|f| f.bits()).collect();
    let rank = |f: u64| m.rank_of(Flat::from_bits(f));
    let mut chains: Vec<Vec<u64>> = Vec::new();
    let mut stack: Vec<Vec<u64>> = vec![vec![0]];
    while let Some(ch) = stack.pop() {
        let top = *ch.last().unwrap();
        if top == m.ground().bits() {
            chains.push(ch[1..].to_vec());
            continue;
        }
        for &y in &flats {
            if y & top == top && y != top && rank(y) == rank(top) + 1 {
                let mut next = ch.clone();
                next.push(y);
                stack.push(next);
            }
        }
    }
    let label = |ch: &Vec<u64>| -> Vec<u32> {
        let mut prev = 0u64;
        ch.iter()
            .map(|&y| {
                let l = (y & !prev).trailing_zeros();
                prev = y;
                l
            })
            .collect()
    };
    chains.sort_by_key(label);
    chains
}

/// Outcome of an oracle sweep: cases compared and disagreements found.
pub struct OracleRun {
    pub cases: usize,
    pub failures: Vec<String>,
}

/// Facet enumeration against subset filtering on every instance with |B| ≤ 12.
pub fn facets_vs_oracle() -> OracleRun {
    let mut run = OracleRun { cases: 0, failures: Vec::new() };
    for inst in corpus().iter().filter(|i| i.building.members().len() <= 12) {
        run.cases += 1;
        if library_facets(&inst.building) != oracle_facets(&inst.building) {
            run.failures.push(inst.name.clone());
        }
    }
    run
}

/// `check_shelling` against the literal definition on every ordering of
/// every complex with at most seven facets. Each complex must admit at least
/// one shelling, and each reported violation must be the first failing step.
pub fn shelling_vs_oracle() -> OracleRun {
    let mut run = OracleRun { cases: 0, failures: Vec::new() };
    for inst in corpus() {
        let b = &inst.building;
        let fs = facets(b);
        if fs.len() > 7 {
            continue;
        }
        let reduced: Vec<BTreeSet<u64>> = fs.iter().map(|n| reduced_bits(b, n)).collect();
        let mut shellable = false;
        for p in permutations(fs.len()) {
            run.cases += 1;
            let order: Vec<BTreeSet<u64>> = p.iter().map(|&i| reduced[i].clone()).collect();
            let as_vec: Vec<Vec<u64>> = order.iter().map(|f| f.iter().copied().collect()).collect();
            let ours = check_shelling(&as_vec).unwrap();
            let theirs = oracle_is_shelling(&order);
            if ours.verdict != theirs {
                run.failures.push(format!("{} order {p:?}: verdict {}", inst.name, ours.verdict));
            }
            if let Some(v) = &ours.first_violation {
                if oracle_is_shelling(&order[..=v.j]) || !oracle_is_shelling(&order[..v.j]) {
                    run.failures.push(format!("{} order {p:?}: witness {v:?} is not the first failure", inst.name));
                }
            }
            shellable |= theirs;
        }
        if !shellable {
            run.failures.push(format!("{} has no shelling order", inst.name));
        }
    }
    run
}

/// `el_order` against brute-force chain sorting.
pub fn el_vs_oracle() -> OracleRun {
    let mut run = OracleRun { cases: 0, failures: Vec::new() };
    for (name, m) in [("boolean 3", boolean(3)), ("broom", broom()), ("boolean 4", boolean(4))] {
        run.cases += 1;
        let b = BuildingSet::maximal(arc(m.clone()));
        let ours: Vec<Vec<u64>> =
            el_order(&b).unwrap().facets.iter().map(|n| n.flats().iter().map(|x| x.bits()).collect()).collect();
        if ours != oracle_el(&m) {
            run.failures.push(name.to_string());
        }
    }
    run
}
