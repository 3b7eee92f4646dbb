//! Loopless matroids stored extensionally by their lattice of flats.
//!
//! The ground order is the order of `labels`. It decides the order of atoms
//! (atoms are compared by their smallest ground index), so two matroids that
//! differ only by a relabelling are different values here.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::flat::{Flat, MAX_GROUND};

#[derive(Clone, Debug)]
pub struct Matroid {
    labels: Vec<String>,
    flats: Vec<Flat>,
    ranks: Vec<usize>,
    index: HashMap<Flat, usize>,
    covers: Vec<Vec<usize>>,
    atoms: Vec<Flat>,
    rank: usize,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.flats == other.flats
    }
}

impl Eq for Matroid {}

impl Matroid {
    /// Checks the geometric-lattice axioms and computes ranks.
    ///
    /// The axioms checked are: the ground set is a flat, flats are closed under
    /// intersection, the empty set is a flat (no loops), and for every flat `F`
    /// the flats covering `F` partition `E \ F`.
    pub fn new(labels: Vec<String>, flat_list: impl IntoIterator<Item = Flat>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let ground = Flat::full(n);
        let set: BTreeSet<Flat> = flat_list.into_iter().collect();
        for f in &set {
            if !f.is_subset(ground) {
                return Err(Error::NotALattice(format!("{f:?} is not a subset of the ground set")));
            }
        }
        if !set.contains(&ground) {
            return Err(Error::NotALattice("the ground set is not a flat".into()));
        }
        let flats: Vec<Flat> = set.iter().copied().collect();
        for (i, a) in flats.iter().enumerate() {
            for b in &flats[i + 1..] {
                let meet = a.intersection(*b);
                if !set.contains(&meet) {
                    return Err(Error::NotALattice(format!(
                        "{a:?} ∩ {b:?} = {meet:?} is not a flat"
                    )));
                }
            }
        }
        if flats[0] != Flat::EMPTY {
            return Err(Error::HasLoops);
        }

        let index: HashMap<Flat, usize> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();

        // Upper covers. Candidates are visited by increasing cardinality, so a
        // strict superset is a cover exactly when it contains no cover found so far.
        let mut covers = vec![Vec::new(); flats.len()];
        for (i, &f) in flats.iter().enumerate() {
            let mut found: Vec<usize> = Vec::new();
            for (j, &g) in flats.iter().enumerate().skip(i + 1) {
                if f.is_proper_subset(g) && !found.iter().any(|&c| flats[c].is_subset(g)) {
                    found.push(j);
                }
            }
            covers[i] = found;
        }

        let render = |f: Flat| format!("{f:?}");
        for (i, &f) in flats.iter().enumerate() {
            if f == ground {
                continue;
            }
            let mut union = f;
            let mut total = f.len();
            for &c in &covers[i] {
                let extra = flats[c].difference(f);
                union = union.union(extra);
                total += extra.len();
            }
            if union != ground {
                let missing = ground.difference(union);
                return Err(Error::CoverPartitionViolation {
                    flat: render(f),
                    detail: format!("elements {missing:?} lie in no covering flat"),
                });
            }
            if total != n {
                return Err(Error::CoverPartitionViolation {
                    flat: render(f),
                    detail: "two covering flats overlap outside the flat".into(),
                });
            }
        }

        let mut ranks = vec![usize::MAX; flats.len()];
        ranks[0] = 0;
        for i in 0..flats.len() {
            let r = ranks[i];
            debug_assert!(r != usize::MAX);
            for &c in &covers[i] {
                if ranks[c] == usize::MAX {
                    ranks[c] = r + 1;
                } else if ranks[c] != r + 1 {
                    return Err(Error::CoverPartitionViolation {
                        flat: render(flats[c]),
                        detail: "maximal chains below it have different lengths".into(),
                    });
                }
            }
        }
        let rank = ranks[index[&ground]];
        let mut atoms: Vec<Flat> = flats
            .iter()
            .zip(&ranks)
            .filter(|(_, &r)| r == 1)
            .map(|(&f, _)| f)
            .collect();
        atoms.sort_by_key(|a| a.min_index());

        Ok(Matroid { labels, flats, ranks, index, covers, atoms, rank })
    }

    /// Matroid with ground labels `"0", "1", ..`.
    pub fn with_index_labels(n: usize, flats: impl IntoIterator<Item = Flat>) -> Result<Self> {
        Matroid::new((0..n).map(|i| i.to_string()).collect(), flats)
    }

    /// The matroid on the empty ground set.
    pub fn empty() -> Self {
        Matroid::new(Vec::new(), [Flat::EMPTY]).expect("empty matroid is valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ground(&self) -> Flat {
        Flat::full(self.labels.len())
    }

    /// Rank of the matroid.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All flats in canonical order; `flats()[0]` is the empty flat.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn is_flat(&self, s: Flat) -> bool {
        self.index.contains_key(&s)
    }

    pub fn flat_index(&self, f: Flat) -> Option<usize> {
        self.index.get(&f).copied()
    }

    /// Rank-one flats sorted by their smallest ground index.
    pub fn atoms(&self) -> &[Flat] {
        &self.atoms
    }

    /// Flats covering `f` in the lattice.
    pub fn upper_covers(&self, f: Flat) -> impl Iterator<Item = Flat> + '_ {
        let i = self.index[&f];
        self.covers[i].iter().map(move |&c| self.flats[c])
    }

    /// Smallest flat containing `s`.
    pub fn closure(&self, s: Flat) -> Flat {
        // Flats are sorted by cardinality, so the first flat containing `s`
        // is contained in every other one.
        *self
            .flats
            .iter()
            .find(|f| s.is_subset(**f))
            .expect("the ground set contains every subset")
    }

    pub fn rank_of(&self, s: Flat) -> usize {
        let cl = self.closure(s);
        self.ranks[self.index[&cl]]
    }

    pub fn join(&self, flats: &[Flat]) -> Flat {
        self.closure(crate::flat::union_all(flats))
    }

    pub fn join2(&self, a: Flat, b: Flat) -> Flat {
        self.closure(a.union(b))
    }

    pub fn meet(&self, a: Flat, b: Flat) -> Flat {
        a.intersection(b)
    }

    /// Restriction to the flat `x`, re-indexed onto the elements of `x` in ground order.
    pub fn restriction(&self, x: Flat) -> Result<Matroid> {
        self.require_flat(x)?;
        let labels = x.iter().map(|i| self.labels[i].clone()).collect();
        let flats = self
            .flats
            .iter()
            .filter(|f| f.is_subset(x))
            .map(|f| f.compress(x));
        Matroid::new(labels, flats)
    }

    /// Contraction of the flat `x`, on the ground set `E \ x` in ground order.
    pub fn contraction(&self, x: Flat) -> Result<Matroid> {
        self.require_flat(x)?;
        let rest = self.ground().difference(x);
        let labels = rest.iter().map(|i| self.labels[i].clone()).collect();
        let flats = self
            .flats
            .iter()
            .filter(|f| x.is_subset(**f))
            .map(|f| f.difference(x).compress(rest));
        Matroid::new(labels, flats)
    }

    /// Direct sum; the ground set of `other` is appended after ours.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        for l in &other.labels {
            if self.labels.contains(l) {
                return Err(Error::LabelCollision(l.clone()));
            }
        }
        let n = self.len();
        if n + other.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(n + other.len()));
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        let mut flats = Vec::with_capacity(self.flats.len() * other.flats.len());
        for &a in &self.flats {
            for &b in &other.flats {
                flats.push(a.union(Flat::from_bits(b.bits() << n)));
            }
        }
        Matroid::new(labels, flats)
    }

    /// The direct sum of the restriction to `x` and the contraction of `x`,
    /// kept on the original ground set: its flats are `Y ∪ W` with `Y ≤ x`
    /// and `W = V \ x` for flats `V ≥ x`.
    pub fn split_at(&self, x: Flat) -> Result<Matroid> {
        self.require_flat(x)?;
        let lower: Vec<Flat> = self.flats.iter().copied().filter(|f| f.is_subset(x)).collect();
        let upper: Vec<Flat> = self
            .flats
            .iter()
            .filter(|f| x.is_subset(**f))
            .map(|f| f.difference(x))
            .collect();
        let mut flats = Vec::with_capacity(lower.len() * upper.len());
        for &y in &lower {
            for &w in &upper {
                flats.push(y.union(w));
            }
        }
        Matroid::new(self.labels.clone(), flats)
    }

    /// True iff the restriction to `x` is connected: no proper nonempty
    /// `A ⊂ x` has `rank(A) + rank(x \ A) = rank(x)`.
    ///
    /// Exponential in `|x|`; only subsets containing the smallest element are
    /// tried since `A` and `x \ A` play symmetric roles.
    pub fn is_connected_flat(&self, x: Flat) -> bool {
        if x.is_empty() {
            return false;
        }
        let r = self.rank_of(x);
        let first = x.min_index().unwrap();
        let rest: Vec<usize> = x.iter().filter(|&i| i != first).collect();
        let k = rest.len();
        for mask in 0u64..(1u64 << k) {
            let mut a = Flat::EMPTY.with(first);
            for (bit, &i) in rest.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    a = a.with(i);
                }
            }
            if a == x {
                continue;
            }
            if self.rank_of(a) + self.rank_of(x.difference(a)) == r {
                return false;
            }
        }
        true
    }

    /// Nonempty connected flats in canonical order.
    pub fn connected_flats(&self) -> Vec<Flat> {
        self.flats
            .iter()
            .copied()
            .filter(|&f| !f.is_empty() && self.is_connected_flat(f))
            .collect()
    }

    /// Reorders the ground set: new position `i` holds old element `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Matroid> {
        let map = permutation_map(order, self.len())?;
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        let flats = self.flats.iter().map(|f| f.map_indices(&map));
        Matroid::new(labels, flats)
    }

    /// Ground order given by labels, e.g. `["2", "1", "3"]`.
    pub fn permuted_by_labels<S: AsRef<str>>(&self, order: &[S]) -> Result<(Matroid, Vec<usize>)> {
        let idx = order
            .iter()
            .map(|l| self.label_index(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let m = self.permuted(&idx)?;
        Ok((m, idx))
    }

    /// Same matroid with new ground labels, position by position.
    pub fn relabelled<S: AsRef<str>>(&self, labels: &[S]) -> Result<Matroid> {
        if labels.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: labels.len() });
        }
        let labels = labels.iter().map(|l| l.as_ref().to_string()).collect();
        Matroid::new(labels, self.flats.iter().copied())
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Parses a set of labels into a subset of the ground set.
    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Flat> {
        let mut f = Flat::EMPTY;
        for l in labels {
            f = f.with(self.label_index(l.as_ref())?);
        }
        Ok(f)
    }

    /// Parses a set of labels and checks it is a flat.
    pub fn flat_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Flat> {
        let f = self.subset_from_labels(labels)?;
        self.require_flat(f)?;
        Ok(f)
    }

    pub fn flat_labels(&self, f: Flat) -> Vec<String> {
        f.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Compact rendering: `0123` when every label is one character, `{a,b}` otherwise.
    pub fn fmt_flat(&self, f: Flat) -> String {
        if f.is_empty() {
            return "∅".into();
        }
        let short = self.labels.iter().all(|l| l.chars().count() == 1);
        let parts = self.flat_labels(f);
        if short {
            parts.concat()
        } else {
            format!("{{{}}}", parts.join(","))
        }
    }

    pub fn fmt_flats(&self, fs: &[Flat]) -> String {
        let inner: Vec<String> = fs.iter().map(|&f| self.fmt_flat(f)).collect();
        format!("{{{}}}", inner.join(","))
    }

    pub(crate) fn require_flat(&self, f: Flat) -> Result<()> {
        if self.is_flat(f) {
            Ok(())
        } else {
            Err(Error::NotAFlat(self.fmt_flat(f)))
        }
    }
}

/// Inverse of a permutation given as `order[new] = old`.
pub(crate) fn permutation_map(order: &[usize], n: usize) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::Parse(format!(
            "ground order has {} entries, expected {n}",
            order.len()
        )));
    }
    let mut map = vec![usize::MAX; n];
    for (new, &old) in order.iter().enumerate() {
        if old >= n || map[old] != usize::MAX {
            return Err(Error::Parse(format!("ground order {order:?} is not a permutation")));
        }
        map[old] = new;
    }
    Ok(map)
}
