//! Facet orders: normal-complex (NC), nested lexicographic (NL), Björner's
//! EL order, and orders induced by a user-supplied vector.
//!
//! Atoms are compared by their smallest ground index, so every order here
//! depends on the ground order of the matroid.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::geometry::{dot, is_cubical, lex_cmp, vertices, CubicalFunction, VertexSolution, Q};
use crate::matroid::Matroid;
use crate::nested::{facets, is_nested, NestedSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Nc,
    Nl,
    El,
    User,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Nc => "nc",
            Provenance::Nl => "nl",
            Provenance::El => "el",
            Provenance::User => "user",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetOrder {
    pub facets: Vec<NestedSet>,
    pub provenance: Provenance,
}

impl FacetOrder {
    pub fn first(&self) -> Option<&NestedSet> {
        self.facets.first()
    }
}

/// Sort key of an atom: its smallest ground index.
fn key(atom: Flat) -> usize {
    atom.min_index().expect("atoms are nonempty")
}

fn cmp_atoms(a: &[Flat], b: &[Flat]) -> Ordering {
    a.iter().map(|&x| key(x)).cmp(b.iter().map(|&x| key(x)))
}

/// `m_N(X)`: the smallest atom below `X` that lies below no member of `N`
/// strictly under `X`.
pub fn label_flat(m: &Matroid, n: &NestedSet, x: Flat) -> Flat {
    let below: Vec<Flat> = n.flats().iter().copied().filter(|y| y.is_proper_subset(x)).collect();
    m.atoms()
        .iter()
        .copied()
        .find(|a| a.is_subset(x) && !below.iter().any(|y| a.is_subset(*y)))
        .unwrap_or_else(|| panic!("{} has no NL label in {n:?}", m.fmt_flat(x)))
}

/// Flats of a nested set in pluck order, each with its label `m_N(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NlLabeling {
    pub pairs: Vec<(Flat, Flat)>,
}

impl NlLabeling {
    pub fn atoms(&self) -> Vec<Flat> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn flats(&self) -> Vec<Flat> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn label_of(&self, x: Flat) -> Option<Flat> {
        self.pairs.iter().find(|p| p.0 == x).map(|p| p.1)
    }

    /// 1-based positions `i` with `m_i > m_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        descents(&self.atoms())
    }
}

/// 1-based positions `i` where the atom sequence decreases from `i` to `i + 1`.
pub fn descents(atoms: &[Flat]) -> Vec<usize> {
    atoms
        .windows(2)
        .enumerate()
        .filter(|(_, w)| key(w[0]) > key(w[1]))
        .map(|(i, _)| i + 1)
        .collect()
}

/// The NL-labeling: repeatedly pluck the inclusion-minimal remaining flat
/// with the smallest label.
pub fn nl_labeling(m: &Matroid, n: &NestedSet) -> NlLabeling {
    let labels: Vec<Flat> = n.flats().iter().map(|&x| label_flat(m, n, x)).collect();
    let mut remaining: Vec<usize> = (0..n.len()).collect();
    let mut pairs = Vec::with_capacity(n.len());
    while !remaining.is_empty() {
        let fs = n.flats();
        let minimal = remaining
            .iter()
            .copied()
            .filter(|&i| !remaining.iter().any(|&j| fs[j].is_proper_subset(fs[i])));
        let best = minimal.min_by_key(|&i| key(labels[i])).expect("a finite poset has minimal elements");
        let ties = remaining
            .iter()
            .filter(|&&i| {
                i != best
                    && labels[i] == labels[best]
                    && !remaining.iter().any(|&j| fs[j].is_proper_subset(fs[i]))
            })
            .count();
        assert_eq!(ties, 0, "two minimal flats of {n:?} share a label");
        pairs.push((fs[best], labels[best]));
        remaining.retain(|&i| i != best);
    }
    NlLabeling { pairs }
}

/// Facets sorted by the lexicographic order of their NL-labelings.
pub fn nl_order(b: &BuildingSet) -> FacetOrder {
    let m = b.matroid();
    let mut keyed: Vec<(Vec<Flat>, NestedSet)> =
        facets(b).into_iter().map(|n| (nl_labeling(m, &n).atoms(), n)).collect();
    keyed.sort_by(|a, b| cmp_atoms(&a.0, &b.0));
    for w in keyed.windows(2) {
        assert_ne!(w[0].0, w[1].0, "two facets share an NL-labeling");
    }
    FacetOrder { facets: keyed.into_iter().map(|p| p.1).collect(), provenance: Provenance::Nl }
}

/// The unique inclusion-maximal member `Y` of `b` with `a ≤ Y ≤ a ∨ join`.
fn interval_top(b: &BuildingSet, a: Flat, join: Flat) -> std::result::Result<Flat, String> {
    let top = b.matroid().join2(a, join);
    let inside: Vec<Flat> = b
        .members()
        .iter()
        .copied()
        .filter(|y| a.is_subset(*y) && y.is_subset(top))
        .collect();
    let maximal: Vec<Flat> = inside
        .iter()
        .copied()
        .filter(|y| !inside.iter().any(|z| y.is_proper_subset(*z)))
        .collect();
    match maximal.as_slice() {
        [x] => Ok(*x),
        [] => Err("no member of B in the interval".into()),
        _ => Err("the interval has several maximal members of B".into()),
    }
}

/// The facet whose NL-labeling is increasing: take the smallest atom not
/// below the join so far, then the largest member of `B` between it and its
/// join with everything chosen.
pub fn construct_n_min(b: &BuildingSet) -> NestedSet {
    let m = b.matroid();
    let mut chosen = Vec::with_capacity(m.rank());
    let mut join = Flat::EMPTY;
    while chosen.len() < m.rank() {
        let a = *m
            .atoms()
            .iter()
            .find(|a| !a.is_subset(join))
            .expect("the join has rank below rank(M)");
        let x = interval_top(b, a, join).expect("the interval has a unique top member of B");
        chosen.push(x);
        join = m.join2(join, x);
    }
    NestedSet::new(chosen)
}

/// Rebuilds a facet from its NL-labeling; fails unless the result is a facet
/// whose labeling is exactly `atoms`.
pub fn reconstruct_from_labeling(b: &BuildingSet, atoms: &[Flat]) -> Result<NestedSet> {
    let m = b.matroid();
    let bad = |msg: String| Error::NotALabeling(msg);
    if atoms.len() != m.rank() {
        return Err(bad(format!("expected {} atoms, got {}", m.rank(), atoms.len())));
    }
    let mut chosen = Vec::with_capacity(atoms.len());
    let mut join = Flat::EMPTY;
    for &a in atoms {
        if !m.atoms().contains(&a) {
            return Err(bad(format!("{} is not an atom", m.fmt_flat(a))));
        }
        let x = interval_top(b, a, join).map_err(|e| bad(format!("at atom {}: {e}", m.fmt_flat(a))))?;
        if chosen.contains(&x) {
            return Err(bad(format!("{} would be chosen twice", m.fmt_flat(x))));
        }
        chosen.push(x);
        join = m.join2(join, x);
    }
    let n = NestedSet::new(chosen);
    if !is_nested(b, n.flats()) {
        return Err(bad(format!("{} is not nested", n.display(m))));
    }
    if nl_labeling(m, &n).atoms() != atoms {
        return Err(bad(format!("{} has a different labeling", n.display(m))));
    }
    Ok(n)
}

/// Vertices sorted lexicographically decreasing: the NC order.
pub fn nc_vertices(b: &BuildingSet, c: &CubicalFunction) -> Result<Vec<VertexSolution>> {
    if !is_cubical(b, c)? {
        return Err(Error::NonCubical("some vertex leaves its open cone".into()));
    }
    let mut vs = vertices(b, c)?;
    vs.sort_by(|x, y| lex_cmp(&y.point, &x.point));
    let m = b.matroid();
    for w in vs.windows(2) {
        if w[0].point == w[1].point {
            return Err(Error::DuplicateVertices(
                w[0].facet.display(m).to_string(),
                w[1].facet.display(m).to_string(),
            ));
        }
    }
    Ok(vs)
}

pub fn nc_order(b: &BuildingSet, c: &CubicalFunction) -> Result<FacetOrder> {
    let vs = nc_vertices(b, c)?;
    Ok(FacetOrder { facets: vs.into_iter().map(|v| v.facet).collect(), provenance: Provenance::Nc })
}

/// Facets sorted by decreasing `⟨v_N, γ⟩`; ties are an error.
pub fn gamma_order(b: &BuildingSet, c: &CubicalFunction, gamma: &[Q]) -> Result<FacetOrder> {
    let m = b.matroid();
    if gamma.len() != m.len() {
        return Err(Error::DimensionMismatch { expected: m.len(), got: gamma.len() });
    }
    let mut keyed: Vec<(Q, NestedSet)> =
        vertices(b, c)?.into_iter().map(|v| (dot(&v.point, gamma), v.facet)).collect();
    keyed.sort_by(|x, y| y.0.cmp(&x.0));
    for w in keyed.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::GammaTie(
                w[0].1.display(m).to_string(),
                w[1].1.display(m).to_string(),
            ));
        }
    }
    Ok(FacetOrder { facets: keyed.into_iter().map(|p| p.1).collect(), provenance: Provenance::User })
}

/// Björner's edge label of a cover `x ⋖ y`: the smallest atom below `y` but not `x`.
pub fn el_label(m: &Matroid, x: Flat, y: Flat) -> Flat {
    *m.atoms()
        .iter()
        .find(|a| a.is_subset(y) && !a.is_subset(x))
        .expect("a cover adds at least one atom")
}

/// Maximal chains of the lattice of flats, without the bottom element.
pub fn maximal_chains(m: &Matroid) -> Vec<Vec<Flat>> {
    fn go(m: &Matroid, chain: &mut Vec<Flat>, out: &mut Vec<Vec<Flat>>) {
        let last = chain.last().copied().unwrap_or(Flat::EMPTY);
        if last == m.ground() {
            out.push(chain.clone());
            return;
        }
        for y in m.upper_covers(last).collect::<Vec<_>>() {
            chain.push(y);
            go(m, chain, out);
            chain.pop();
        }
    }
    let mut out = Vec::new();
    go(m, &mut Vec::new(), &mut out);
    out
}

/// Edge labels along a chain that starts just above the empty flat.
pub fn chain_labels(m: &Matroid, chain: &[Flat]) -> Vec<Flat> {
    let mut prev = Flat::EMPTY;
    chain
        .iter()
        .map(|&y| {
            let l = el_label(m, prev, y);
            prev = y;
            l
        })
        .collect()
}

/// Maximal chains sorted by their EL label sequences, as nested sets of the
/// maximal building set (the chain minus the empty flat).
pub fn el_order(b: &BuildingSet) -> Result<FacetOrder> {
    if !b.is_maximal_building_set() {
        return Err(Error::ELRequiresMaximal);
    }
    let m = b.matroid();
    let mut keyed: Vec<(Vec<Flat>, Vec<Flat>)> =
        maximal_chains(m).into_iter().map(|c| (chain_labels(m, &c), c)).collect();
    keyed.sort_by(|x, y| cmp_atoms(&x.0, &y.0));
    Ok(FacetOrder {
        facets: keyed.into_iter().map(|(_, c)| NestedSet::new(c)).collect(),
        provenance: Provenance::El,
    })
}
