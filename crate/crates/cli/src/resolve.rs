//! Turning command-line instance specs into validated values.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use bshell_core::generate::{boolean, broom, graphic, uniform};
use bshell_core::geometry::{default_cubical, parse_rational, quadratic_family, random_cubical};
use bshell_core::io::{BuildingJson, CubicalJson, MatroidJson};
use bshell_core::{BuildingSet, CubicalFunction, Matroid, Q};

/// Reads `spec` as inline JSON when it starts with `{` or `"`, otherwise as a file.
fn read_json_source(spec: &str) -> Result<String> {
    let t = spec.trim_start();
    if t.starts_with('{') || t.starts_with('"') {
        return Ok(spec.to_string());
    }
    std::fs::read_to_string(spec).with_context(|| format!("cannot read {spec}"))
}

fn generator(spec: &str) -> Result<Option<Matroid>> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = |s: &str| -> Result<Vec<usize>> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad number {t:?} in {spec:?}")))
            .collect()
    };
    let m = match name {
        "broom" => broom(),
        "uniform" => match nums(args)?.as_slice() {
            [r, n] => uniform(*r, *n)?,
            _ => bail!("expected uniform:r,n, got {spec:?}"),
        },
        "boolean" => match nums(args)?.as_slice() {
            [n] => boolean(*n),
            _ => bail!("expected boolean:n, got {spec:?}"),
        },
        "graphic" => {
            let edges = args
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|e| {
                    let (a, b) = e.split_once('-').with_context(|| format!("bad edge {e:?}"))?;
                    Ok((a.trim().parse()?, b.trim().parse()?))
                })
                .collect::<Result<Vec<(usize, usize)>>>()?;
            graphic(&edges)?
        }
        _ => return Ok(None),
    };
    Ok(Some(m))
}

/// A matroid from a file, inline JSON, or a generator spec such as
/// `uniform:2,4`, `boolean:3`, `graphic:0-1,1-2,0-2`, `broom`. Summands joined
/// by `+` form a direct sum; generated summands are numbered consecutively.
pub fn matroid(spec: &str) -> Result<Matroid> {
    if Path::new(spec).is_file() || spec.trim_start().starts_with('{') {
        let text = read_json_source(spec)?;
        let j: MatroidJson = serde_json::from_str(&text).with_context(|| format!("parsing matroid {spec}"))?;
        return Ok(j.to_matroid()?);
    }
    let mut total: Option<Matroid> = None;
    for part in spec.split('+') {
        let part = part.trim();
        let offset = total.as_ref().map_or(0, Matroid::len);
        let m = match generator(part)? {
            Some(g) => {
                let labels: Vec<String> = (offset..offset + g.len()).map(|i| i.to_string()).collect();
                g.relabelled(&labels)?
            }
            None if Path::new(part).is_file() => {
                let j: MatroidJson = serde_json::from_str(&read_json_source(part)?)?;
                j.to_matroid()?
            }
            None => bail!("unknown matroid spec {part:?}"),
        };
        total = Some(match total {
            None => m,
            Some(t) => t.direct_sum(&m)?,
        });
    }
    total.context("empty matroid spec")
}

/// Reorders the ground set by a comma-separated label list.
pub fn ground_order(m: Matroid, order: Option<&str>) -> Result<Matroid> {
    match order {
        None => Ok(m),
        Some(o) => {
            let labels: Vec<&str> = o.split(',').map(str::trim).collect();
            Ok(m.permuted_by_labels(&labels)?.0)
        }
    }
}

pub fn building_json(spec: &str) -> Result<BuildingJson> {
    match spec {
        "minimal" | "maximal" => Ok(BuildingJson::Keyword(spec.to_string())),
        _ => {
            let text = read_json_source(spec)?;
            serde_json::from_str(&text).with_context(|| format!("parsing building set {spec}"))
        }
    }
}

pub fn building(m: Arc<Matroid>, spec: &str) -> Result<BuildingSet> {
    Ok(building_json(spec)?.resolve(m)?)
}

/// `auto[:seed]`, `random[:seed]`, `quadratic`, a file, or inline JSON.
pub fn cubical(b: &BuildingSet, spec: &str, default_seed: u64) -> Result<CubicalFunction> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let seed = || -> Result<u64> {
        if arg.is_empty() {
            Ok(default_seed)
        } else {
            arg.parse().with_context(|| format!("bad seed in {spec:?}"))
        }
    };
    Ok(match name {
        "auto" => default_cubical(b, seed()?)?,
        "random" => random_cubical(b, seed()?)?,
        "quadratic" => quadratic_family(b),
        _ => {
            let text = read_json_source(spec)?;
            let j: CubicalJson = serde_json::from_str(&text).with_context(|| format!("parsing c {spec}"))?;
            j.resolve(b)?
        }
    })
}

/// Comma-separated rationals, e.g. `1000,100,10,1` or `1/2,-3`.
pub fn gamma(spec: &str) -> Result<Vec<Q>> {
    spec.split(',').map(|t| Ok(parse_rational(t)?)).collect()
}
