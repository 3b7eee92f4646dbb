//! The test corpus: small uniform and graphic matroids, the broom, and
//! direct sums, each with its building sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::building::{enumerate_building_sets, BuildingSet};
use crate::error::Result;
use crate::flat::Flat;
use crate::generate::{broom, graphic, uniform};
use crate::matroid::Matroid;

/// Above this many nonempty flats only the minimal and maximal building sets are used.
pub const ALL_BUILDING_SETS_LIMIT: usize = 14;

#[derive(Clone, Debug)]
pub struct CorpusMatroid {
    pub name: String,
    pub matroid: Arc<Matroid>,
}

/// `U_{r,n}` for `1 ≤ r ≤ n ≤ max_n`.
pub fn uniform_family(max_n: usize) -> Vec<CorpusMatroid> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for r in 1..=n {
            out.push(CorpusMatroid {
                name: format!("uniform:{r},{n}"),
                matroid: Arc::new(uniform(r, n).expect("1 <= r <= n")),
            });
        }
    }
    out
}

/// Edge sets of all connected graphs on exactly `v` vertices, one per
/// isomorphism class. Edges are pairs `(a, b)` with `a < b`, sorted.
pub fn connected_graphs(v: usize) -> Vec<Vec<(usize, usize)>> {
    let all: Vec<(usize, usize)> =
        (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    let perms = permutations(v);
    let mut classes: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for mask in 0u32..(1 << all.len()) {
        let edges: Vec<(usize, usize)> =
            all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        if !is_connected(v, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                    .collect();
                e.sort();
                e
            })
            .min()
            .expect("at least one permutation");
        classes.insert(canon);
    }
    classes.into_iter().collect()
}

fn is_connected(v: usize, edges: &[(usize, usize)]) -> bool {
    if v == 0 {
        return true;
    }
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            let y = if a == x { b } else if b == x { a } else { continue };
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Cycle matroids of connected graphs on up to `max_v` vertices. Graphs with
/// identical cycle matroids (for example trees with the same number of edges)
/// appear once.
pub fn graphic_family(max_v: usize) -> Vec<CorpusMatroid> {
    let mut out: Vec<CorpusMatroid> = Vec::new();
    for v in 1..=max_v {
        for edges in connected_graphs(v) {
            let m = graphic(&edges).expect("simple graphs have no loops");
            if out.iter().any(|c| *c.matroid == m) {
                continue;
            }
            let spec: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            out.push(CorpusMatroid { name: format!("graphic:{}", spec.join(",")), matroid: Arc::new(m) });
        }
    }
    out
}

/// Pairwise direct sums of small connected pieces with at most `max_n` elements.
pub fn direct_sum_family(max_n: usize) -> Vec<CorpusMatroid> {
    let pieces: Vec<(String, Matroid)> = [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
        .iter()
        .map(|&(r, n)| (format!("uniform:{r},{n}"), uniform(r, n).unwrap()))
        .chain([("broom".to_string(), broom())])
        .collect();
    let mut out = Vec::new();
    for i in 0..pieces.len() {
        for j in i..pieces.len() {
            let (na, a) = &pieces[i];
            let (nb, b) = &pieces[j];
            if a.len() + b.len() > max_n {
                continue;
            }
            let shifted: Vec<String> = (a.len()..a.len() + b.len()).map(|k| k.to_string()).collect();
            let sum = a.direct_sum(&b.relabelled(&shifted).unwrap()).unwrap();
            out.push(CorpusMatroid { name: format!("{na}+{nb}"), matroid: Arc::new(sum) });
        }
    }
    out
}

/// The full matroid corpus: uniform (n ≤ 6), graphic (≤ 5 vertices), the
/// broom, and direct sums (n ≤ 6).
pub fn standard_matroids() -> Vec<CorpusMatroid> {
    let mut out = uniform_family(6);
    out.extend(graphic_family(5));
    out.push(CorpusMatroid { name: "broom".into(), matroid: Arc::new(broom()) });
    out.extend(direct_sum_family(6));
    out
}

/// All building sets when there are few flats, otherwise the minimal and maximal ones.
pub fn building_sets_for(m: &Arc<Matroid>) -> Result<Vec<BuildingSet>> {
    if m.flats().len() - 1 <= ALL_BUILDING_SETS_LIMIT {
        enumerate_building_sets(m, 1 << ALL_BUILDING_SETS_LIMIT)
    } else {
        let lo = BuildingSet::minimal(m.clone());
        let hi = BuildingSet::maximal(m.clone());
        Ok(if lo == hi { vec![lo] } else { vec![lo, hi] })
    }
}

#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub name: String,
    pub building: BuildingSet,
}

/// Every (matroid, building set) pair of the standard corpus.
pub fn standard_instances() -> Result<Vec<CorpusInstance>> {
    let mut out = Vec::new();
    for cm in standard_matroids() {
        for (k, b) in building_sets_for(&cm.matroid)?.into_iter().enumerate() {
            out.push(CorpusInstance { name: format!("{}#{k}", cm.name), building: b });
        }
    }
    Ok(out)
}

/// Moves a building set onto the matroid with ground order `order`
/// (`order[new] = old`).
pub fn permute_building(b: &BuildingSet, order: &[usize]) -> Result<BuildingSet> {
    let m = b.matroid();
    let pm = Arc::new(m.permuted(order)?);
    let mut map = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        map[old] = new;
    }
    let members: Vec<Flat> = b.members().iter().map(|x| x.map_indices(&map)).collect();
    BuildingSet::new(pm, members)
}
