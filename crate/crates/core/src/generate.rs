//! Standard matroid families, built by iterated closure from `cl(∅)`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::flat::{Flat, MAX_GROUND};
use crate::matroid::Matroid;

/// Builds the lattice of flats of the closure operator `cl` on `n` elements.
pub fn from_closure(n: usize, cl: impl Fn(Flat) -> Flat) -> Result<Matroid> {
    if n > MAX_GROUND {
        return Err(Error::GroundTooLarge(n));
    }
    let start = cl(Flat::EMPTY);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let ground = Flat::full(n);
    while let Some(f) = queue.pop_front() {
        for e in ground.difference(f).iter() {
            let g = cl(f.with(e));
            if seen.insert(g) {
                queue.push_back(g);
            }
        }
    }
    Matroid::with_index_labels(n, seen)
}

/// The uniform matroid `U_{r,n}`.
pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if r > n {
        return Err(Error::Parse(format!("uniform matroid needs r <= n, got r={r}, n={n}")));
    }
    let ground = Flat::full(n);
    from_closure(n, |s| if s.len() < r { s } else { ground })
}

/// The free matroid on `n` elements; its lattice of flats is Boolean.
pub fn boolean(n: usize) -> Matroid {
    from_closure(n, |s| s).expect("Boolean lattice is geometric")
}

/// Cycle matroid of a multigraph; element `i` is edge `edges[i]`.
pub fn graphic(edges: &[(usize, usize)]) -> Result<Matroid> {
    if edges.iter().any(|&(u, v)| u == v) {
        return Err(Error::HasLoops);
    }
    let nv = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let cl = |s: Flat| {
        let mut uf = UnionFind::new(nv);
        for i in s.iter() {
            uf.union(edges[i].0, edges[i].1);
        }
        Flat::from_indices(
            edges
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| uf.find(u) == uf.find(v))
                .map(|(i, _)| i),
        )
    };
    from_closure(edges.len(), cl)
}

/// The rank-3 "broom": a coloop `0` next to a triangle `123`.
pub fn broom() -> Matroid {
    let flats = [
        &[][..],
        &[0],
        &[1],
        &[2],
        &[3],
        &[0, 1],
        &[0, 2],
        &[0, 3],
        &[1, 2, 3],
        &[0, 1, 2, 3],
    ]
    .map(|ix| Flat::from_indices(ix.iter().copied()));
    Matroid::with_index_labels(4, flats).expect("broom flats are geometric")
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}
