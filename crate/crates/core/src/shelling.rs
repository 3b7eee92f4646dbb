//! Shelling-order checks for pure simplicial complexes, and local
//! equivalence of facet orders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::geometry::CubicalFunction;
use crate::nested::NestedSet;
use crate::orders::{nc_order, FacetOrder};

/// The pair `(j, i)`, `i < j`, for which every facet of the form
/// `F_j \ {x}` glued to an earlier facet still contains a vertex of `F_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingViolation {
    pub j: usize,
    pub i: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingReport<T> {
    pub facets: Vec<Vec<T>>,
    pub verdict: bool,
    pub first_violation: Option<ShellingViolation>,
    /// For each step `j`, the vertices `x ∈ F_j` with `F_j \ {x}` inside an
    /// earlier facet: the codimension-one faces along which `F_j` is glued.
    pub glue: Vec<Vec<T>>,
}

/// Checks that each facet meets the union of its predecessors in a nonempty
/// union of its own codimension-one faces.
///
/// Equivalently: for all `i < j` some `x ∈ F_j \ F_i` has `F_j \ {x} ⊆ F_k`
/// for some `k < j`.
pub fn check_shelling<T: Ord + Clone + Debug>(order: &[Vec<T>]) -> Result<ShellingReport<T>> {
    let facets: Vec<Vec<T>> = order
        .iter()
        .map(|f| {
            let mut v = f.clone();
            v.sort();
            v.dedup();
            v
        })
        .collect();
    if let Some(first) = facets.first() {
        if let Some(other) = facets.iter().find(|f| f.len() != first.len()) {
            return Err(Error::NotPure(first.len(), other.len()));
        }
    }
    let mut seen = BTreeSet::new();
    for f in &facets {
        if !seen.insert(f) {
            return Err(Error::DuplicateFacet(format!("{f:?}")));
        }
    }

    // Facets as bitsets over the sorted vertex list.
    let vertices: Vec<&T> = seen.iter().flat_map(|f| f.iter()).collect::<BTreeSet<_>>().into_iter().collect();
    let words = vertices.len().div_ceil(64).max(1);
    let bits: Vec<Vec<u64>> = facets
        .iter()
        .map(|f| {
            let mut w = vec![0u64; words];
            for x in f {
                let i = vertices.binary_search(&x).unwrap();
                w[i / 64] |= 1 << (i % 64);
            }
            w
        })
        .collect();

    let mut glue = Vec::with_capacity(facets.len());
    let mut first_violation = None;
    for j in 0..facets.len() {
        // x ∈ R_j iff F_j \ F_k = {x} for some earlier F_k.
        let mut r = vec![0u64; words];
        for fk in &bits[..j] {
            let diff: Vec<u64> = bits[j].iter().zip(fk).map(|(a, b)| a & !b).collect();
            if diff.iter().map(|w| w.count_ones()).sum::<u32>() == 1 {
                for (rw, dw) in r.iter_mut().zip(&diff) {
                    *rw |= dw;
                }
            }
        }
        if first_violation.is_none() {
            let covered = |fi: &Vec<u64>| r.iter().zip(fi).all(|(a, b)| a & !b == 0);
            if let Some(i) = (0..j).find(|&i| covered(&bits[i])) {
                first_violation = Some(ShellingViolation { j, i });
            }
        }
        let rj = (0..vertices.len())
            .filter(|&i| r[i / 64] >> (i % 64) & 1 == 1)
            .map(|i| vertices[i].clone())
            .collect();
        glue.push(rj);
    }
    Ok(ShellingReport { verdict: first_violation.is_none(), facets, first_violation, glue })
}

/// Shelling check of a facet order on reduced nested sets.
pub fn check_order(b: &BuildingSet, order: &FacetOrder) -> Result<ShellingReport<Flat>> {
    let reduced: Vec<Vec<Flat>> = order.facets.iter().map(|n| n.reduced(b)).collect();
    check_shelling(&reduced)
}

/// Shelling check of the NC order of a cubical `c`.
pub fn verify_nc_shelling(b: &BuildingSet, c: &CubicalFunction) -> Result<ShellingReport<Flat>> {
    check_order(b, &nc_order(b, c)?)
}

/// Codimension-one faces of the complex of reduced facets.
pub fn codim_one_faces(b: &BuildingSet, facets: &[NestedSet]) -> Vec<Vec<Flat>> {
    let mut faces = BTreeSet::new();
    for n in facets {
        let r = n.reduced(b);
        for i in 0..r.len() {
            let mut face = r.clone();
            face.remove(i);
            faces.insert(face);
        }
    }
    faces.into_iter().collect()
}

/// Finds a codimension-one face on whose star the two orders disagree.
///
/// In weak mode only the first facet of each star is compared. `None`
/// means the orders are (weakly) locally equivalent.
pub fn local_equivalence_witness(
    o1: &FacetOrder,
    o2: &FacetOrder,
    b: &BuildingSet,
    weak: bool,
) -> Result<Option<Vec<Flat>>> {
    same_facets(o1, o2)?;
    for face in codim_one_faces(b, &o1.facets) {
        let star = |o: &FacetOrder| -> Vec<NestedSet> {
            o.facets
                .iter()
                .filter(|n| face.iter().all(|&x| n.contains(x)))
                .cloned()
                .collect()
        };
        let (s1, s2) = (star(o1), star(o2));
        let agree = if weak { s1.first() == s2.first() } else { s1 == s2 };
        if !agree {
            return Ok(Some(face));
        }
    }
    Ok(None)
}

pub fn check_local_equivalence(
    o1: &FacetOrder,
    o2: &FacetOrder,
    b: &BuildingSet,
    weak: bool,
) -> Result<bool> {
    Ok(local_equivalence_witness(o1, o2, b, weak)?.is_none())
}

fn same_facets(o1: &FacetOrder, o2: &FacetOrder) -> Result<()> {
    fn count(o: &FacetOrder) -> BTreeMap<&NestedSet, usize> {
        let mut m = BTreeMap::new();
        for n in &o.facets {
            *m.entry(n).or_default() += 1;
        }
        m
    }
    if count(o1) != count(o2) {
        return Err(Error::MismatchedFacetSets);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderComparison {
    pub equal: bool,
    pub locally_equivalent: bool,
    pub weakly_locally_equivalent: bool,
    pub same_minimum: bool,
}

pub fn compare_orders(o1: &FacetOrder, o2: &FacetOrder, b: &BuildingSet) -> Result<OrderComparison> {
    same_facets(o1, o2)?;
    Ok(OrderComparison {
        equal: o1.facets == o2.facets,
        locally_equivalent: check_local_equivalence(o1, o2, b, false)?,
        weakly_locally_equivalent: check_local_equivalence(o1, o2, b, true)?,
        same_minimum: o1.first() == o2.first(),
    })
}
