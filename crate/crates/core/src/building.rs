//! Building sets of a lattice of flats.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::matroid::Matroid;

/// One failed condition of the building-set characterization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A connected flat is not a member.
    MissingConnected(Flat),
    /// `x` and `y` intersect but their join is not a member.
    MissingJoin { x: Flat, y: Flat, join: Flat },
}

impl Violation {
    pub fn describe(&self, m: &Matroid) -> String {
        match self {
            Violation::MissingConnected(f) => format!("connected flat {} is missing", m.fmt_flat(*f)),
            Violation::MissingJoin { x, y, join } => format!(
                "{} and {} intersect but their join {} is missing",
                m.fmt_flat(*x),
                m.fmt_flat(*y),
                m.fmt_flat(*join)
            ),
        }
    }
}

/// Checks `members` against the characterization: every connected flat is a
/// member, and intersecting members have their join in the set.
///
/// Returns the list of violations; an empty list means `members` is a building set.
pub fn building_set_violations(m: &Matroid, members: &[Flat]) -> Result<Vec<Violation>> {
    let set = member_set(m, members)?;
    let mut out = Vec::new();
    for c in m.connected_flats() {
        if !set.contains(&c) {
            out.push(Violation::MissingConnected(c));
        }
    }
    let v: Vec<Flat> = set.iter().copied().collect();
    for (i, &x) in v.iter().enumerate() {
        for &y in &v[i + 1..] {
            if x.intersects(y) {
                let join = m.join2(x, y);
                if !set.contains(&join) {
                    out.push(Violation::MissingJoin { x, y, join });
                }
            }
        }
    }
    Ok(out)
}

pub fn is_building_set(m: &Matroid, members: &[Flat]) -> Result<bool> {
    Ok(building_set_violations(m, members)?.is_empty())
}

fn member_set(m: &Matroid, members: &[Flat]) -> Result<BTreeSet<Flat>> {
    let mut set = BTreeSet::new();
    for &f in members {
        if f.is_empty() {
            return Err(Error::EmptyMember);
        }
        m.require_flat(f)?;
        set.insert(f);
    }
    Ok(set)
}

/// A validated building set together with its matroid.
#[derive(Clone, Debug)]
pub struct BuildingSet {
    matroid: Arc<Matroid>,
    members: Vec<Flat>,
    maximal: Vec<Flat>,
}

impl PartialEq for BuildingSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && *self.matroid == *other.matroid
    }
}

impl Eq for BuildingSet {}

impl BuildingSet {
    pub fn new(matroid: Arc<Matroid>, members: impl IntoIterator<Item = Flat>) -> Result<Self> {
        let members: Vec<Flat> = members.into_iter().collect();
        let violations = building_set_violations(&matroid, &members)?;
        if let Some(v) = violations.first() {
            return Err(Error::NotABuildingSet(v.describe(&matroid)));
        }
        Ok(Self::from_checked(matroid, member_set_unchecked(members)))
    }

    fn from_checked(matroid: Arc<Matroid>, members: Vec<Flat>) -> Self {
        let maximal = members
            .iter()
            .copied()
            .filter(|x| !members.iter().any(|y| x.is_proper_subset(*y)))
            .collect();
        BuildingSet { matroid, members, maximal }
    }

    /// The connected flats; the smallest building set.
    pub fn minimal(matroid: Arc<Matroid>) -> Self {
        let members = matroid.connected_flats();
        Self::from_checked(matroid, members)
    }

    /// All nonempty flats.
    pub fn maximal(matroid: Arc<Matroid>) -> Self {
        let members = matroid.flats()[1..].to_vec();
        Self::from_checked(matroid, members)
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn matroid_arc(&self) -> &Arc<Matroid> {
        &self.matroid
    }

    /// Members in canonical flat order.
    pub fn members(&self) -> &[Flat] {
        &self.members
    }

    /// `max(B)`: the inclusion-maximal members, in canonical order.
    pub fn maximal_members(&self) -> &[Flat] {
        &self.maximal
    }

    pub fn contains(&self, x: Flat) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_maximal(&self, x: Flat) -> bool {
        self.maximal.contains(&x)
    }

    /// Members that are not maximal, in canonical order.
    pub fn non_maximal(&self) -> impl Iterator<Item = Flat> + '_ {
        self.members.iter().copied().filter(|x| !self.is_maximal(*x))
    }

    /// True when this is the set of all nonempty flats.
    pub fn is_maximal_building_set(&self) -> bool {
        self.members.len() + 1 == self.matroid.flats().len()
    }

    /// The maximal member containing `x`, if `x` is nonempty.
    pub fn maximal_above(&self, x: Flat) -> Option<Flat> {
        self.maximal.iter().copied().find(|m| x.is_subset(*m) && !x.is_empty())
    }

    /// `B|_X`, on the restricted matroid.
    pub fn restrict(&self, x: Flat) -> Result<BuildingSet> {
        let m = Arc::new(self.matroid.restriction(x)?);
        let members = self
            .members
            .iter()
            .filter(|y| y.is_subset(x))
            .map(|y| y.compress(x))
            .collect::<Vec<_>>();
        Ok(Self::from_checked(m, member_set_unchecked(members)))
    }

    /// `B^X = {(Y ∨ X) \ X : Y ∈ B, Y ≰ X}`, on the contracted matroid.
    pub fn contract(&self, x: Flat) -> Result<BuildingSet> {
        self.require_link_vertex(x)?;
        let m = Arc::new(self.matroid.contraction(x)?);
        let rest = self.matroid.ground().difference(x);
        let members = self.upper_part(x).map(|w| w.compress(rest)).collect::<Vec<_>>();
        Ok(Self::from_checked(m, member_set_unchecked(members)))
    }

    /// `B|_X ∪ B^X` on the restriction ⊕ contraction matroid, with every member
    /// written as a subset of the original ground set.
    pub fn product(&self, x: Flat) -> Result<BuildingSet> {
        self.require_link_vertex(x)?;
        let m = Arc::new(self.matroid.split_at(x)?);
        let lower = self.members.iter().copied().filter(|y| y.is_subset(x));
        let members: Vec<Flat> = lower.chain(self.upper_part(x)).collect();
        BuildingSet::new(m, members)
    }

    fn upper_part(&self, x: Flat) -> impl Iterator<Item = Flat> + '_ {
        self.members
            .iter()
            .filter(move |y| !y.is_subset(x))
            .map(move |&y| self.matroid.join2(y, x).difference(x))
    }

    fn require_link_vertex(&self, x: Flat) -> Result<()> {
        if !self.contains(x) {
            return Err(Error::XNotInBuildingSet(self.matroid.fmt_flat(x)));
        }
        if self.is_maximal(x) {
            return Err(Error::XMaximal(self.matroid.fmt_flat(x)));
        }
        Ok(())
    }

    /// Members sorted and rendered with the matroid's labels.
    pub fn fmt_members(&self) -> String {
        self.matroid.fmt_flats(&self.members)
    }
}

fn member_set_unchecked(members: Vec<Flat>) -> Vec<Flat> {
    let set: BTreeSet<Flat> = members.into_iter().collect();
    set.into_iter().collect()
}

/// Closes `set` under joins of intersecting pairs.
fn close_under_joins(m: &Matroid, set: &mut BTreeSet<Flat>) {
    loop {
        let v: Vec<Flat> = set.iter().copied().collect();
        let mut added = false;
        for (i, &x) in v.iter().enumerate() {
            for &y in &v[i + 1..] {
                if x.intersects(y) && set.insert(m.join2(x, y)) {
                    added = true;
                }
            }
        }
        if !added {
            return;
        }
    }
}

/// Every building set of `m`.
///
/// Each subset of the non-connected flats is added to the connected flats and
/// closed under joins of intersecting members; duplicates are dropped. Fails
/// when the number of subsets to try exceeds `cap`.
pub fn enumerate_building_sets(m: &Arc<Matroid>, cap: u128) -> Result<Vec<BuildingSet>> {
    let connected = m.connected_flats();
    let others: Vec<Flat> = m.flats()[1..]
        .iter()
        .copied()
        .filter(|f| !connected.contains(f))
        .collect();
    let needed = 1u128.checked_shl(others.len() as u32).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let mut found: BTreeSet<Vec<Flat>> = BTreeSet::new();
    for mask in 0..needed {
        let mut set: BTreeSet<Flat> = connected.iter().copied().collect();
        for (bit, &f) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                set.insert(f);
            }
        }
        close_under_joins(m, &mut set);
        found.insert(set.into_iter().collect());
    }
    let mut out: Vec<Vec<Flat>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out
        .into_iter()
        .map(|members| BuildingSet::from_checked(Arc::clone(m), members))
        .collect())
}
