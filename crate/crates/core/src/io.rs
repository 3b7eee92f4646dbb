//! JSON schemas for matroids, building sets, cubical functions and reports.
//!
//! Flats are written as arrays of ground labels. Rationals are `"p/q"` strings.
//! Maps use `BTreeMap` so output is byte-for-byte reproducible.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::geometry::{format_rational, parse_rational, CubicalFunction, VertexSolution, Q};
use crate::matroid::Matroid;
use crate::nested::NestedSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub ground: Vec<String>,
    pub flats: Vec<Vec<String>>,
}

impl MatroidJson {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidJson {
            ground: m.labels().to_vec(),
            flats: m.flats().iter().map(|&f| m.flat_labels(f)).collect(),
        }
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        let index: BTreeMap<&str, usize> =
            self.ground.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let flats = self
            .flats
            .iter()
            .map(|f| {
                f.iter()
                    .map(|l| index.get(l.as_str()).copied().ok_or_else(|| Error::UnknownLabel(l.clone())))
                    .collect::<Result<Vec<usize>>>()
                    .map(Flat::from_indices)
            })
            .collect::<Result<Vec<Flat>>>()?;
        Matroid::new(self.ground.clone(), flats)
    }
}

/// `"minimal"`, `"maximal"`, or an explicit member list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BuildingJson {
    Keyword(String),
    Members { members: Vec<Vec<String>> },
}

impl BuildingJson {
    pub fn from_building(b: &BuildingSet) -> Self {
        let m = b.matroid();
        BuildingJson::Members { members: b.members().iter().map(|&x| m.flat_labels(x)).collect() }
    }

    pub fn resolve(&self, m: Arc<Matroid>) -> Result<BuildingSet> {
        match self {
            BuildingJson::Keyword(k) if k == "minimal" => Ok(BuildingSet::minimal(m)),
            BuildingJson::Keyword(k) if k == "maximal" => Ok(BuildingSet::maximal(m)),
            BuildingJson::Keyword(k) => Err(Error::Parse(format!("unknown building set keyword {k:?}"))),
            BuildingJson::Members { members } => {
                let flats = members
                    .iter()
                    .map(|f| m.flat_from_labels(f))
                    .collect::<Result<Vec<_>>>()?;
                BuildingSet::new(m, flats)
            }
        }
    }
}

/// Comma-joined labels of a flat in ground order, e.g. `"1,2,3"`.
pub fn flat_key(m: &Matroid, x: Flat) -> String {
    m.flat_labels(x).join(",")
}

pub fn parse_flat_key(m: &Matroid, key: &str) -> Result<Flat> {
    let labels: Vec<&str> = key.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    m.flat_from_labels(&labels)
}

/// Facet key: flat keys joined by `;`, e.g. `"0;0,1;0,1,2,3"`.
pub fn facet_key(m: &Matroid, n: &NestedSet) -> String {
    n.flats().iter().map(|&x| flat_key(m, x)).collect::<Vec<_>>().join(";")
}

pub fn nested_labels(m: &Matroid, flats: &[Flat]) -> Vec<Vec<String>> {
    flats.iter().map(|&x| m.flat_labels(x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicalJson {
    pub c: BTreeMap<String, String>,
}

impl CubicalJson {
    pub fn from_cubical(m: &Matroid, c: &CubicalFunction) -> Self {
        CubicalJson {
            c: c.values().iter().map(|(&x, v)| (flat_key(m, x), format_rational(v))).collect(),
        }
    }

    pub fn resolve(&self, b: &BuildingSet) -> Result<CubicalFunction> {
        let m = b.matroid();
        let mut values = BTreeMap::new();
        for (k, v) in &self.c {
            values.insert(parse_flat_key(m, k)?, parse_rational(v)?);
        }
        CubicalFunction::new(b, values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub lambda: BTreeMap<String, String>,
    pub point: Vec<String>,
}

pub fn vertex_json(m: &Matroid, v: &VertexSolution) -> VertexJson {
    VertexJson {
        lambda: v.lambda.iter().map(|(x, l)| (flat_key(m, *x), format_rational(l))).collect(),
        point: v.point.iter().map(format_rational).collect(),
    }
}

/// Facet key → vertex data.
pub type VertexReport = BTreeMap<String, VertexJson>;

pub fn vertex_report(m: &Matroid, vs: &[VertexSolution]) -> VertexReport {
    vs.iter().map(|v| (facet_key(m, &v.facet), vertex_json(m, v))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetExport {
    pub full: Vec<Vec<Vec<String>>>,
    pub reduced: Vec<Vec<Vec<String>>>,
}

impl FacetExport {
    pub fn new(b: &BuildingSet, facets: &[NestedSet]) -> Self {
        let m = b.matroid();
        FacetExport {
            full: facets.iter().map(|n| nested_labels(m, n.flats())).collect(),
            reduced: facets.iter().map(|n| nested_labels(m, &n.reduced(b))).collect(),
        }
    }
}

pub fn rational_vector(items: &[String]) -> Result<Vec<Q>> {
    items.iter().map(|s| parse_rational(s)).collect()
}
