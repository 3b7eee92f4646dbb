//! Nested sets, facet enumeration, and the link map `τ_Z`.

use std::fmt;

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::matroid::Matroid;

/// A set of building-set members, kept in canonical flat order.
///
/// Facets always carry `max(B)`; [`NestedSet::reduced`] strips it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NestedSet(Vec<Flat>);

impl NestedSet {
    pub fn new(flats: impl IntoIterator<Item = Flat>) -> Self {
        let mut v: Vec<Flat> = flats.into_iter().collect();
        v.sort();
        v.dedup();
        NestedSet(v)
    }

    pub fn flats(&self) -> &[Flat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: Flat) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// The members outside `max(B)`: the face of the nested set complex.
    pub fn reduced(&self, b: &BuildingSet) -> Vec<Flat> {
        self.0.iter().copied().filter(|&x| !b.is_maximal(x)).collect()
    }

    pub fn display<'a>(&'a self, m: &'a Matroid) -> impl fmt::Display + 'a {
        DisplayFlats(m, &self.0)
    }
}

impl fmt::Debug for NestedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

struct DisplayFlats<'a>(&'a Matroid, &'a [Flat]);

impl fmt::Display for DisplayFlats<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.fmt_flats(self.1))
    }
}

/// Why a set of flats fails to be nested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NestedWitness {
    NotMember(Flat),
    MissingMaximal(Flat),
    /// A set of pairwise incomparable members whose join lies in `B`.
    Antichain { members: Vec<Flat>, join: Flat },
}

impl NestedWitness {
    pub fn describe(&self, m: &Matroid) -> String {
        match self {
            NestedWitness::NotMember(x) => format!("{} is not in the building set", m.fmt_flat(*x)),
            NestedWitness::MissingMaximal(x) => format!("maximal member {} is missing", m.fmt_flat(*x)),
            NestedWitness::Antichain { members, join } => format!(
                "antichain {} has join {} in the building set",
                m.fmt_flats(members),
                m.fmt_flat(*join)
            ),
        }
    }
}

/// Finds a reason `flats` is not nested in `b`, if there is one.
///
/// Checks every antichain of size at least two, not only pairs.
pub fn nested_witness(b: &BuildingSet, flats: &[Flat]) -> Option<NestedWitness> {
    if let Some(&x) = flats.iter().find(|&&x| !b.contains(x)) {
        return Some(NestedWitness::NotMember(x));
    }
    if let Some(&x) = b.maximal_members().iter().find(|x| !flats.contains(x)) {
        return Some(NestedWitness::MissingMaximal(x));
    }
    let mut seen: Vec<Flat> = Vec::with_capacity(flats.len());
    for &x in flats {
        if seen.contains(&x) {
            continue;
        }
        if let Some(w) = antichain_with(b, &seen, x) {
            return Some(w);
        }
        seen.push(x);
    }
    None
}

pub fn is_nested(b: &BuildingSet, flats: &[Flat]) -> bool {
    nested_witness(b, flats).is_none()
}

/// Looks for an antichain `{x} ∪ S`, `S ⊆ others`, whose join lies in `b`.
fn antichain_with(b: &BuildingSet, others: &[Flat], x: Flat) -> Option<NestedWitness> {
    let m = b.matroid();
    let pool: Vec<Flat> = others.iter().copied().filter(|y| !y.comparable(x)).collect();
    let mut chosen = vec![x];
    fn go(
        b: &BuildingSet,
        m: &Matroid,
        pool: &[Flat],
        start: usize,
        chosen: &mut Vec<Flat>,
    ) -> Option<NestedWitness> {
        for i in start..pool.len() {
            let y = pool[i];
            if chosen.iter().any(|c| c.comparable(y)) {
                continue;
            }
            chosen.push(y);
            let join = m.join(chosen);
            if b.contains(join) {
                let mut members = chosen.clone();
                members.sort();
                return Some(NestedWitness::Antichain { members, join });
            }
            if let Some(w) = go(b, m, pool, i + 1, chosen) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }
    go(b, m, &pool, 0, &mut chosen)
}

/// All facets: nested sets of cardinality `rank(M)`, in a fixed order.
///
/// Backtracks over `B \ max(B)` in canonical order starting from `max(B)`.
pub fn facets(b: &BuildingSet) -> Vec<NestedSet> {
    let rank = b.matroid().rank();
    let candidates: Vec<Flat> = b.non_maximal().collect();
    let mut current: Vec<Flat> = b.maximal_members().to_vec();
    let mut out = Vec::new();

    fn go(
        b: &BuildingSet,
        rank: usize,
        candidates: &[Flat],
        start: usize,
        current: &mut Vec<Flat>,
        out: &mut Vec<NestedSet>,
    ) {
        if current.len() == rank {
            out.push(NestedSet::new(current.iter().copied()));
            return;
        }
        if current.len() + (candidates.len() - start) < rank {
            return;
        }
        for i in start..candidates.len() {
            let x = candidates[i];
            if antichain_with(b, current, x).is_none() {
                current.push(x);
                go(b, rank, candidates, i + 1, current, out);
                current.pop();
            }
        }
    }

    if current.len() <= rank {
        go(b, rank, &candidates, 0, &mut current, &mut out);
    }
    out
}

/// Parent pointers of a nested set under inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    pub nodes: Vec<Flat>,
    /// `parent[i]` is the smallest node strictly containing `nodes[i]`.
    pub parent: Vec<Option<usize>>,
}

impl Forest {
    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&j| self.parent[j] == Some(i)).collect()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&j| self.parent[j].is_none()).collect()
    }
}

/// The forest poset of a nested set.
///
/// The members strictly above any node form a chain, so the parent is the
/// smallest of them.
pub fn forest(n: &NestedSet) -> Forest {
    let nodes = n.flats().to_vec();
    let parent = nodes
        .iter()
        .map(|&x| {
            let above: Vec<usize> =
                (0..nodes.len()).filter(|&j| x.is_proper_subset(nodes[j])).collect();
            let p = above.iter().copied().min_by_key(|&j| nodes[j]);
            debug_assert!(above.iter().all(|&j| nodes[p.unwrap()].is_subset(nodes[j])));
            p
        })
        .collect();
    Forest { nodes, parent }
}

/// The link of a non-maximal member `Z`, realized as the nested set complex
/// of `B|_Z ∪ B^Z` on the restriction ⊕ contraction matroid.
#[derive(Clone, Debug)]
pub struct Link {
    source: BuildingSet,
    z: Flat,
    product: BuildingSet,
}

impl Link {
    pub fn new(b: &BuildingSet, z: Flat) -> Result<Link> {
        let product = b.product(z)?;
        Ok(Link { source: b.clone(), z, product })
    }

    pub fn z(&self) -> Flat {
        self.z
    }

    pub fn source(&self) -> &BuildingSet {
        &self.source
    }

    pub fn product(&self) -> &BuildingSet {
        &self.product
    }

    /// Whether `τ_Z` is defined at `x`: `x` is `Z`, a maximal member, or a
    /// member with `{x, Z} ∪ max(B)` nested.
    pub fn in_domain(&self, x: Flat) -> bool {
        if x == self.z || self.source.is_maximal(x) {
            return true;
        }
        if !self.source.contains(x) {
            return false;
        }
        let mut set = self.source.maximal_members().to_vec();
        set.push(self.z);
        set.push(x);
        is_nested(&self.source, &set)
    }

    /// `τ_Z(x)`: `x` itself if `x ≤ Z`, otherwise `(x ∨ Z) \ Z`.
    pub fn tau(&self, x: Flat) -> Result<Flat> {
        if !self.in_domain(x) {
            let m = self.source.matroid();
            return Err(Error::NotInLink { z: m.fmt_flat(self.z), x: m.fmt_flat(x) });
        }
        Ok(self.tau_unchecked(x))
    }

    pub(crate) fn tau_unchecked(&self, x: Flat) -> Flat {
        if x.is_subset(self.z) {
            x
        } else {
            self.source.matroid().join2(x, self.z).difference(self.z)
        }
    }

    /// Image of a nested set containing `Z`, as a nested set of the product
    /// building set. `Z` maps to itself, so it stays in the image.
    pub fn image(&self, n: &NestedSet) -> Result<NestedSet> {
        let m = self.source.matroid();
        if !n.contains(self.z) {
            return Err(Error::NotInLink { z: m.fmt_flat(self.z), x: format!("{}", n.display(m)) });
        }
        if let Some(w) = nested_witness(&self.source, n.flats()) {
            return Err(Error::NotNested(w.describe(m)));
        }
        let image = NestedSet::new(n.flats().iter().map(|&x| self.tau_unchecked(x)));
        assert_eq!(image.len(), n.len(), "τ_Z collapsed two members of {n:?}");
        if let Some(w) = nested_witness(&self.product, image.flats()) {
            return Err(Error::NotNested(format!(
                "image of {} under τ is not nested: {}",
                n.display(m),
                w.describe(self.product.matroid())
            )));
        }
        Ok(image)
    }

    /// Pairs `(x, τ_Z(x))` for the preimage set `LinkVert(Z) ∪ {Z} ∪ max(B)`.
    pub fn vertex_map(&self) -> Vec<(Flat, Flat)> {
        self.source
            .members()
            .iter()
            .copied()
            .filter(|&x| self.in_domain(x))
            .map(|x| (x, self.tau_unchecked(x)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{boolean, broom};
    use std::sync::Arc;

    fn f(ix: &[usize]) -> Flat {
        Flat::from_indices(ix.iter().copied())
    }

    fn shown(m: &Matroid, fs: &[NestedSet]) -> Vec<String> {
        fs.iter().map(|n| n.display(m).to_string()).collect()
    }

    #[test]
    fn nested_examples() {
        let m = Arc::new(broom());
        let bm = BuildingSet::minimal(m.clone());
        assert!(is_nested(&bm, &[f(&[0]), f(&[1]), f(&[1, 2, 3])]));
        assert!(is_nested(&bm, bm.maximal_members()));
        let bmax = BuildingSet::maximal(m);
        let w = nested_witness(&bmax, &[f(&[0]), f(&[1]), f(&[0, 1]), f(&[0, 1, 2, 3])]).unwrap();
        assert_eq!(w, NestedWitness::Antichain { members: vec![f(&[0]), f(&[1])], join: f(&[0, 1]) });
        assert_eq!(
            nested_witness(&bmax, &[f(&[0])]),
            Some(NestedWitness::MissingMaximal(f(&[0, 1, 2, 3])))
        );
    }

    #[test]
    fn larger_antichains_are_checked() {
        // On Boolean_3 with B = atoms + 123, {1,2,3} has pairwise joins outside
        // B but the triple join 123 is in B.
        let m = Arc::new(boolean(3));
        let b = BuildingSet::new(m, [f(&[0]), f(&[1]), f(&[2]), f(&[0, 1, 2])]).unwrap();
        let w = nested_witness(&b, &[f(&[0]), f(&[1]), f(&[2]), f(&[0, 1, 2])]).unwrap();
        assert!(matches!(w, NestedWitness::Antichain { ref members, .. } if members.len() == 3));
    }

    #[test]
    fn broom_facets() {
        let m = Arc::new(broom());
        let bm = BuildingSet::minimal(m.clone());
        assert_eq!(shown(&m, &facets(&bm)), ["{0,1,123}", "{0,2,123}", "{0,3,123}"]);
        let bmax = BuildingSet::maximal(m.clone());
        let fs = facets(&bmax);
        assert_eq!(fs.len(), 9);
        assert!(fs.iter().all(|n| n.len() == 3));
        let reduced = fs[0].reduced(&bmax);
        assert_eq!(reduced.len(), 2);
    }

    #[test]
    fn rank_one_has_single_facet() {
        let m = Arc::new(crate::generate::uniform(1, 3).unwrap());
        let b = BuildingSet::maximal(m);
        let fs = facets(&b);
        assert_eq!(fs, vec![NestedSet::new(b.maximal_members().iter().copied())]);
        assert!(fs[0].reduced(&b).is_empty());
    }

    #[test]
    fn reduced_examples() {
        let m = Arc::new(broom());
        let bm = BuildingSet::minimal(m.clone());
        let n = NestedSet::new([f(&[0]), f(&[1]), f(&[1, 2, 3])]);
        assert_eq!(n.reduced(&bm), vec![f(&[1])]);
        let bmax = BuildingSet::maximal(m);
        let n = NestedSet::new([f(&[2]), f(&[0, 2]), f(&[0, 1, 2, 3])]);
        assert_eq!(n.reduced(&bmax), vec![f(&[2]), f(&[0, 2])]);
    }

    #[test]
    fn forest_examples() {
        let n = NestedSet::new([f(&[1]), f(&[0, 1]), f(&[0, 1, 2, 3])]);
        let fo = forest(&n);
        assert_eq!(fo.parent, vec![Some(1), Some(2), None]);
        // Boolean_5 with B = {1,2,3,4,5,13,123,45} on labels 1..5
        let m = Arc::new(boolean(5));
        let b = BuildingSet::new(
            m.clone(),
            [f(&[0]), f(&[1]), f(&[2]), f(&[3]), f(&[4]), f(&[0, 2]), f(&[0, 1, 2]), f(&[3, 4])],
        )
        .unwrap();
        let n = NestedSet::new([f(&[0]), f(&[1]), f(&[0, 1, 2]), f(&[3]), f(&[3, 4])]);
        assert!(is_nested(&b, n.flats()));
        let fo = forest(&n);
        let i123 = fo.nodes.iter().position(|&x| x == f(&[0, 1, 2])).unwrap();
        let kids: Vec<Flat> = fo.children(i123).into_iter().map(|j| fo.nodes[j]).collect();
        assert_eq!(kids, vec![f(&[0]), f(&[1])]);
        assert_eq!(fo.roots().len(), 2);
    }

    #[test]
    fn tau_examples() {
        let m = Arc::new(broom());
        let b = BuildingSet::maximal(m);
        let l0 = Link::new(&b, f(&[0])).unwrap();
        assert_eq!(l0.tau(f(&[0, 1])).unwrap(), f(&[1]));
        assert_eq!(l0.tau(f(&[0, 2])).unwrap(), f(&[2]));
        assert_eq!(l0.tau(f(&[0, 3])).unwrap(), f(&[3]));
        assert_eq!(l0.tau(f(&[0])).unwrap(), f(&[0]));
        assert!(matches!(l0.tau(f(&[1])), Err(Error::NotInLink { .. })));
        let l1 = Link::new(&b, f(&[1])).unwrap();
        assert_eq!(l1.tau(f(&[1, 2, 3])).unwrap(), f(&[2, 3]));
        let l01 = Link::new(&b, f(&[0, 1])).unwrap();
        assert_eq!(l01.tau(f(&[1])).unwrap(), f(&[1]));
    }

    #[test]
    fn link_image_of_max_is_product_max() {
        let m = Arc::new(broom());
        let b = BuildingSet::maximal(m);
        for z in b.non_maximal().collect::<Vec<_>>() {
            let l = Link::new(&b, z).unwrap();
            let mut base = b.maximal_members().to_vec();
            base.push(z);
            let img = l.image(&NestedSet::new(base)).unwrap();
            assert_eq!(img.flats(), l.product().maximal_members());
        }
    }
}
