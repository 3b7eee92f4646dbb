//! Normal-complex vertices in exact arithmetic.
//!
//! For a facet `N` the vertex `v_N` is the point of the cone spanned by
//! `{e_X : X ∈ N}` with `⟨v_N, e_X⟩ = c_X` for every `X ∈ N`. Writing
//! `v_N = Σ λ_X e_X` turns this into the Gram system `G λ = c_N` with
//! `G[X][Y] = |X ∩ Y|`, and `v_N` lies in the relative interior of the cone
//! exactly when every non-maximal `λ_X` is positive.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::flat::Flat;
pub use crate::linalg::Q;
use crate::nested::{facets, Link, NestedSet};

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A value `c_X` for every member of a building set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalFunction {
    values: BTreeMap<Flat, Q>,
}

impl CubicalFunction {
    /// Checks that `values` covers every member of `b`; extra keys are rejected.
    pub fn new(b: &BuildingSet, values: BTreeMap<Flat, Q>) -> Result<Self> {
        let m = b.matroid();
        for &x in b.members() {
            if !values.contains_key(&x) {
                return Err(Error::MissingValue(m.fmt_flat(x)));
            }
        }
        if let Some(x) = values.keys().find(|&&x| !b.contains(x)) {
            return Err(Error::XNotInBuildingSet(m.fmt_flat(*x)));
        }
        Ok(CubicalFunction { values })
    }

    pub fn from_fn(b: &BuildingSet, mut f: impl FnMut(Flat) -> Q) -> Self {
        CubicalFunction { values: b.members().iter().map(|&x| (x, f(x))).collect() }
    }

    pub fn get(&self, x: Flat) -> &Q {
        &self.values[&x]
    }

    pub fn values(&self) -> &BTreeMap<Flat, Q> {
        &self.values
    }
}

/// `G[X][Y] = |X ∩ Y|` over the members of `n` in canonical order.
pub fn gram_matrix(n: &NestedSet) -> Vec<Vec<Q>> {
    let fs = n.flats();
    fs.iter()
        .map(|x| fs.iter().map(|y| q(x.intersection(*y).len() as i64)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSolution {
    pub facet: NestedSet,
    /// `λ_X` for each member of the facet, in the facet's order.
    pub lambda: Vec<(Flat, Q)>,
    pub point: Vec<Q>,
    /// Every non-maximal `λ_X` is strictly positive.
    pub interior: bool,
}

pub fn vertex(b: &BuildingSet, n: &NestedSet, c: &CubicalFunction) -> Result<VertexSolution> {
    let m = b.matroid();
    let rhs: Vec<Q> = n.flats().iter().map(|&x| c.get(x).clone()).collect();
    let lam = crate::linalg::solve(&gram_matrix(n), &rhs)
        .ok_or_else(|| Error::SingularGram(n.display(m).to_string()))?;
    let mut point = vec![Q::zero(); m.len()];
    for (&x, l) in n.flats().iter().zip(&lam) {
        for i in x.iter() {
            point[i] += l;
        }
    }
    let interior = n
        .flats()
        .iter()
        .zip(&lam)
        .all(|(&x, l)| b.is_maximal(x) || l.is_positive());
    Ok(VertexSolution {
        facet: n.clone(),
        lambda: n.flats().iter().copied().zip(lam).collect(),
        point,
        interior,
    })
}

/// Vertices of every facet, in facet enumeration order.
pub fn vertices(b: &BuildingSet, c: &CubicalFunction) -> Result<Vec<VertexSolution>> {
    facets(b).iter().map(|n| vertex(b, n, c)).collect()
}

/// Facets where the vertex leaves the open cone, with their offending `λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CubicalReport {
    pub failures: Vec<(NestedSet, Vec<(Flat, Q)>)>,
}

impl CubicalReport {
    pub fn is_cubical(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn cubical_report(b: &BuildingSet, c: &CubicalFunction) -> Result<CubicalReport> {
    let mut report = CubicalReport::default();
    for v in vertices(b, c)? {
        if !v.interior {
            let bad = v
                .lambda
                .into_iter()
                .filter(|(x, l)| !b.is_maximal(*x) && !l.is_positive())
                .collect();
            report.failures.push((v.facet, bad));
        }
    }
    Ok(report)
}

pub fn is_cubical(b: &BuildingSet, c: &CubicalFunction) -> Result<bool> {
    Ok(cubical_report(b, c)?.is_cubical())
}

/// `c_X = |X| (|E| - |X|)`.
pub fn quadratic_family(b: &BuildingSet) -> CubicalFunction {
    let n = b.matroid().len() as i64;
    CubicalFunction::from_fn(b, |x| {
        let k = x.len() as i64;
        q(k * (n - k))
    })
}

/// `c_X = α^{|E|} - α^{|X|}` with `α = |E| + 1`.
pub fn exponential_family(b: &BuildingSet) -> CubicalFunction {
    let n = b.matroid().len();
    let alpha = BigInt::from(n as u64 + 1);
    let top = num::pow(alpha.clone(), n);
    CubicalFunction::from_fn(b, |x| Q::from_integer(&top - num::pow(alpha.clone(), x.len())))
}

const RANDOM_ATTEMPTS: usize = 200;

/// A verified cubical function.
///
/// Tries the quadratic family, then the exponential family, then seeded
/// random perturbations of both. The seed only matters when both families fail.
pub fn default_cubical(b: &BuildingSet, seed: u64) -> Result<CubicalFunction> {
    for c in [quadratic_family(b), exponential_family(b)] {
        if is_cubical(b, &c)? {
            return Ok(c);
        }
    }
    match perturbation_search(b, seed)? {
        (Some(c), _) => Ok(c),
        (None, attempts) => Err(Error::SearchExhausted { attempts: attempts + 2 }),
    }
}

/// A verified cubical function drawn at random around the two families.
///
/// Unlike [`default_cubical`] every seed gives its own perturbation, so
/// sweeping seeds exercises genuinely different vertex sets.
pub fn random_cubical(b: &BuildingSet, seed: u64) -> Result<CubicalFunction> {
    match perturbation_search(b, seed)? {
        (Some(c), _) => Ok(c),
        (None, attempts) => Err(Error::SearchExhausted { attempts }),
    }
}

fn perturbation_search(b: &BuildingSet, seed: u64) -> Result<(Option<CubicalFunction>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    for base in [quadratic_family(b), exponential_family(b)] {
        // Shrink the perturbation as attempts fail, so a cubical base is
        // eventually recovered up to a tiny shift.
        let mut scale = Q::new(1.into(), 2.into());
        for round in 0..RANDOM_ATTEMPTS / 2 {
            attempts += 1;
            let c = CubicalFunction::from_fn(b, |x| {
                let den: i64 = rng.gen_range(1..=8);
                let num: i64 = rng.gen_range(-den..=den);
                base.get(x) + &scale * Q::new(num.into(), den.into())
            });
            if is_cubical(b, &c)? {
                return Ok((Some(c), attempts));
            }
            if round % 10 == 9 {
                scale /= q(4);
            }
        }
    }
    Ok((None, attempts))
}

/// `τ_Z(c)` on the product building set of the link of `Z`:
/// `c_X - c_Z` at `τ_Z(X)` when `Z < X`, and `c_X` otherwise.
pub fn restrict_cubical(link: &Link, c: &CubicalFunction) -> Result<CubicalFunction> {
    let z = link.z();
    let cz = c.get(z);
    let mut values = BTreeMap::new();
    for (x, tx) in link.vertex_map() {
        let v = if z.is_proper_subset(x) { c.get(x) - cz } else { c.get(x).clone() };
        let previous = values.insert(tx, v);
        assert!(previous.is_none(), "τ_Z is not injective on the link vertices");
    }
    CubicalFunction::new(link.product(), values)
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Coordinatewise lexicographic comparison.
pub fn lex_cmp(a: &[Q], b: &[Q]) -> Ordering {
    a.iter().cmp(b.iter())
}

/// Pair of facets on which `γ` disagrees with lexicographic comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexCounterexample {
    pub first: NestedSet,
    pub second: NestedSet,
    pub lex: Ordering,
    pub gamma: Ordering,
}

/// Checks that `⟨v_N - v_N', γ⟩` has the sign of the lexicographic comparison
/// of `v_N` and `v_N'` for every pair of facets.
pub fn lexicographic_counterexample(
    b: &BuildingSet,
    c: &CubicalFunction,
    gamma: &[Q],
) -> Result<Option<LexCounterexample>> {
    let m = b.matroid();
    if gamma.len() != m.len() {
        return Err(Error::DimensionMismatch { expected: m.len(), got: gamma.len() });
    }
    let vs = vertices(b, c)?;
    let products: Vec<Q> = vs.iter().map(|v| dot(&v.point, gamma)).collect();
    let mut found = None;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let lex = lex_cmp(&vs[i].point, &vs[j].point);
            if lex == Ordering::Equal {
                return Err(Error::DuplicateVertices(
                    vs[i].facet.display(m).to_string(),
                    vs[j].facet.display(m).to_string(),
                ));
            }
            let g = products[i].cmp(&products[j]);
            if g != lex && found.is_none() {
                found = Some(LexCounterexample {
                    first: vs[i].facet.clone(),
                    second: vs[j].facet.clone(),
                    lex,
                    gamma: g,
                });
            }
        }
    }
    Ok(found)
}

pub fn is_lexicographic_vector(b: &BuildingSet, c: &CubicalFunction, gamma: &[Q]) -> Result<bool> {
    Ok(lexicographic_counterexample(b, c, gamma)?.is_none())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((p, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(parse_int(p)?, d))
        }
        None => Ok(Q::from_integer(parse_int(s)?)),
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
