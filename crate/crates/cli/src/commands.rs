use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use bshell_core::building::building_set_violations;
use bshell_core::corpus::{
    building_sets_for, direct_sum_family, graphic_family, standard_matroids, uniform_family, CorpusInstance,
    CorpusMatroid,
};
use bshell_core::generate::broom;
use bshell_core::geometry::{cubical_report, default_cubical, dot, format_rational, q, vertices};
use bshell_core::io::{
    facet_key, nested_labels, parse_flat_key, vertex_report, BuildingJson, FacetExport, MatroidJson,
};
use bshell_core::nested::facets as all_facets;
use bshell_core::orders::{chain_labels, el_order, gamma_order, nc_order, nc_vertices, nl_labeling, nl_order};
use bshell_core::search::{search_nl_shelling, write_findings};
use bshell_core::shelling::{check_order, compare_orders, local_equivalence_witness, verify_nc_shelling};
use bshell_core::{BuildingSet, CubicalFunction, FacetOrder, Flat, Matroid, NestedSet, Provenance, Q};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{resolve, CubicalArgs, Family, InstanceArgs, MatroidArgs, OrderKind, Outcome};

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn load_matroid(a: &MatroidArgs) -> Result<Matroid> {
    resolve::ground_order(resolve::matroid(&a.matroid)?, a.ground_order.as_deref())
}

fn load_instance(a: &InstanceArgs) -> Result<BuildingSet> {
    let m = Arc::new(load_matroid(&a.base)?);
    resolve::building(m, &a.building)
}

fn atom_labels(m: &Matroid, atoms: &[Flat]) -> Vec<String> {
    atoms.iter().map(|&a| m.fmt_flat(a)).collect()
}

fn rationals(xs: &[Q]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

pub fn matroid(a: &MatroidArgs) -> Result<Outcome> {
    let m = load_matroid(a)?;
    let connected = m.connected_flats();
    if a.json {
        let mut v = serde_json::to_value(MatroidJson::from_matroid(&m))?;
        v["rank"] = json!(m.rank());
        v["ranks"] = json!(m.flats().iter().map(|&f| m.rank_of(f)).collect::<Vec<_>>());
        v["atoms"] = json!(nested_labels(&m, m.atoms()));
        v["connected"] = json!(nested_labels(&m, &connected));
        print_json(&v)?;
    } else {
        println!("ground: {}", m.labels().join(" "));
        println!("rank: {}", m.rank());
        println!("flats: {}", m.flats().len());
        for r in 0..=m.rank() {
            let row: Vec<Flat> = m.flats().iter().copied().filter(|&f| m.rank_of(f) == r).collect();
            println!("  rank {r}: {}", m.fmt_flats(&row));
        }
        println!("atoms: {}", m.fmt_flats(m.atoms()));
        println!("connected flats: {}", m.fmt_flats(&connected));
    }
    Ok(Outcome::Pass)
}

/// Reports violations instead of failing on an invalid member list.
pub fn building(a: &InstanceArgs) -> Result<Outcome> {
    let m = Arc::new(load_matroid(&a.base)?);
    let members = match resolve::building_json(&a.building)? {
        BuildingJson::Members { members } => {
            members.iter().map(|f| m.flat_from_labels(f)).collect::<bshell_core::Result<Vec<_>>>()?
        }
        k => k.resolve(m.clone())?.members().to_vec(),
    };
    let violations = building_set_violations(&m, &members)?;
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(|v| v.describe(&m)).collect();
        if a.base.json {
            print_json(&json!({ "valid": false, "violations": text }))?;
        } else {
            println!("not a building set");
            for t in text {
                println!("  {t}");
            }
        }
        return Ok(Outcome::Fail);
    }
    let b = BuildingSet::new(m.clone(), members)?;
    if a.base.json {
        print_json(&json!({
            "valid": true,
            "members": nested_labels(&m, b.members()),
            "maximal": nested_labels(&m, b.maximal_members()),
        }))?;
    } else {
        println!("members: {}", b.fmt_members());
        println!("maximal: {}", m.fmt_flats(b.maximal_members()));
    }
    Ok(Outcome::Pass)
}

pub fn facets(a: &InstanceArgs) -> Result<Outcome> {
    let b = load_instance(a)?;
    let m = b.matroid();
    let fs = all_facets(&b);
    if a.base.json {
        print_json(&FacetExport::new(&b, &fs))?;
    } else {
        println!("{} facets", fs.len());
        for n in &fs {
            println!("  {}  reduced {}", n.display(m), m.fmt_flats(&n.reduced(&b)));
        }
    }
    Ok(Outcome::Pass)
}

fn load_cubical(b: &BuildingSet, c: &CubicalArgs) -> Result<CubicalFunction> {
    resolve::cubical(b, &c.c, c.seed)
}

pub fn vertices_cmd(a: &InstanceArgs, c: &CubicalArgs) -> Result<Outcome> {
    let b = load_instance(a)?;
    let m = b.matroid();
    let cf = load_cubical(&b, c)?;
    let vs = vertices(&b, &cf)?;
    if a.base.json {
        print_json(&vertex_report(m, &vs))?;
    } else {
        for v in &vs {
            let lambda: Vec<String> =
                v.lambda.iter().map(|(x, l)| format!("{}={}", m.fmt_flat(*x), format_rational(l))).collect();
            println!("{}  v=({})  λ: {}", v.facet.display(m), rationals(&v.point).join(","), lambda.join(" "));
        }
    }
    Ok(Outcome::Pass)
}

pub fn check_cubical(a: &InstanceArgs, c: &CubicalArgs) -> Result<Outcome> {
    let b = load_instance(a)?;
    let m = b.matroid();
    let cf = load_cubical(&b, c)?;
    let report = cubical_report(&b, &cf)?;
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|(n, lam)| {
            json!({
                "facet": facet_key(m, n),
                "lambda": lam.iter().map(|(x, l)| (m.fmt_flat(*x), format_rational(l))).collect::<Vec<_>>(),
            })
        })
        .collect();
    if a.base.json {
        print_json(&json!({ "cubical": report.is_cubical(), "failures": failures }))?;
    } else if report.is_cubical() {
        println!("cubical");
    } else {
        println!("not cubical on {} facets", failures.len());
        for (n, lam) in &report.failures {
            let bad: Vec<String> = lam
                .iter()
                .filter(|(x, l)| !b.is_maximal(*x) && *l <= q(0))
                .map(|(x, l)| format!("λ_{}={}", m.fmt_flat(*x), format_rational(l)))
                .collect();
            println!("  {}  {}", n.display(m), bad.join(" "));
        }
    }
    Ok(if report.is_cubical() { Outcome::Pass } else { Outcome::Fail })
}

fn build_order(
    kind: OrderKind,
    b: &BuildingSet,
    c: &CubicalArgs,
    gamma: Option<&[Q]>,
) -> Result<FacetOrder> {
    Ok(match kind {
        OrderKind::Nc => nc_order(b, &load_cubical(b, c)?)?,
        OrderKind::Nl => nl_order(b),
        OrderKind::El => el_order(b)?,
        OrderKind::Gamma => {
            let g = gamma.context("the gamma order needs --gamma")?;
            gamma_order(b, &load_cubical(b, c)?, g)?
        }
    })
}

fn parse_gamma(g: Option<&str>) -> Result<Option<Vec<Q>>> {
    g.map(resolve::gamma).transpose()
}

pub fn order(kind: OrderKind, a: &InstanceArgs, c: &CubicalArgs, gamma: Option<&str>) -> Result<Outcome> {
    let b = load_instance(a)?;
    let m = b.matroid();
    let g = parse_gamma(gamma)?;
    let o = build_order(kind, &b, c, g.as_deref())?;
    let points: Option<Vec<Vec<Q>>> = match kind {
        OrderKind::Nc | OrderKind::Gamma => {
            let cf = load_cubical(&b, c)?;
            let vs = if kind == OrderKind::Nc { nc_vertices(&b, &cf)? } else { vertices(&b, &cf)? };
            Some(
                o.facets
                    .iter()
                    .map(|n| vs.iter().find(|v| &v.facet == n).expect("every facet has a vertex").point.clone())
                    .collect(),
            )
        }
        _ => None,
    };
    let labels: Vec<Vec<String>> = o
        .facets
        .iter()
        .map(|n| match kind {
            OrderKind::El => atom_labels(m, &chain_labels(m, n.flats())),
            _ => atom_labels(m, &nl_labeling(m, n).atoms()),
        })
        .collect();
    let products: Option<Vec<Q>> =
        g.as_ref().zip(points.as_ref()).map(|(g, ps)| ps.iter().map(|p| dot(p, g)).collect());
    if a.base.json {
        let rows: Vec<Value> = o
            .facets
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut row = json!({ "facet": nested_labels(m, n.flats()), "labels": labels[i] });
                if let Some(ps) = &points {
                    row["point"] = json!(rationals(&ps[i]));
                }
                if let Some(ip) = &products {
                    row["inner_product"] = json!(format_rational(&ip[i]));
                }
                row
            })
            .collect();
        print_json(&json!({ "provenance": o.provenance, "facets": rows }))?;
    } else {
        for (i, n) in o.facets.iter().enumerate() {
            let tag = if kind == OrderKind::El { "e" } else { "m" };
            let mut line = format!("{:>3}. {}  {tag}=({})", i + 1, n.display(m), labels[i].join(","));
            if let Some(ps) = &points {
                line += &format!("  v=({})", rationals(&ps[i]).join(","));
            }
            if let Some(ip) = &products {
                line += &format!("  <v,γ>={}", format_rational(&ip[i]));
            }
            println!("{line}");
        }
    }
    Ok(Outcome::Pass)
}

/// A user order: a JSON array of facet keys, inline or in a file.
fn user_order(b: &BuildingSet, spec: &str) -> Result<FacetOrder> {
    let text = if spec.trim_start().starts_with('[') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec).with_context(|| format!("cannot read order {spec}"))?
    };
    let keys: Vec<String> = serde_json::from_str(&text).context("an order is a JSON array of facet keys")?;
    let m = b.matroid();
    let facets = keys
        .iter()
        .map(|k| {
            let flats = k.split(';').map(|x| parse_flat_key(m, x)).collect::<bshell_core::Result<Vec<_>>>()?;
            Ok(NestedSet::new(flats))
        })
        .collect::<Result<Vec<_>>>()?;
    let given: BTreeSet<&NestedSet> = facets.iter().collect();
    let expected = all_facets(b);
    if given.len() != facets.len() || given != expected.iter().collect() {
        bail!("the order must list every facet exactly once ({} facets)", expected.len());
    }
    Ok(FacetOrder { facets, provenance: Provenance::User })
}

pub fn verify(a: &InstanceArgs, c: &CubicalArgs, order: &str, gamma: Option<&str>) -> Result<Outcome> {
    let b = load_instance(a)?;
    let m = b.matroid();
    let g = parse_gamma(gamma)?;
    let o = match (g.as_deref(), order) {
        (Some(g), _) => build_order(OrderKind::Gamma, &b, c, Some(g))?,
        (None, "nc") => build_order(OrderKind::Nc, &b, c, None)?,
        (None, "nl") => build_order(OrderKind::Nl, &b, c, None)?,
        (None, "el") => build_order(OrderKind::El, &b, c, None)?,
        (None, spec) => user_order(&b, spec)?,
    };
    let report = check_order(&b, &o)?;
    let violation = report.first_violation.as_ref().map(|v| {
        json!({
            "j": v.j,
            "i": v.i,
            "facet_j": nested_labels(m, &report.facets[v.j]),
            "facet_i": nested_labels(m, &report.facets[v.i]),
        })
    });
    if a.base.json {
        print_json(&json!({
            "provenance": o.provenance,
            "verdict": report.verdict,
            "facets": report.facets.iter().map(|f| nested_labels(m, f)).collect::<Vec<_>>(),
            "violation": violation,
        }))?;
    } else if report.verdict {
        println!("shelling order ({} facets, {})", o.facets.len(), o.provenance);
    } else {
        let v = report.first_violation.as_ref().expect("a failed verdict has a witness");
        println!("not a shelling order ({})", o.provenance);
        println!(
            "  facet {} {} meets earlier facet {} {} outside its glued boundary",
            v.j + 1,
            m.fmt_flats(&report.facets[v.j]),
            v.i + 1,
            m.fmt_flats(&report.facets[v.i]),
        );
    }
    Ok(if report.verdict { Outcome::Pass } else { Outcome::Fail })
}

fn corpus_instances(matroids: Vec<CorpusMatroid>) -> Result<Vec<CorpusInstance>> {
    let mut out = Vec::new();
    for cm in matroids {
        for (k, b) in building_sets_for(&cm.matroid)?.into_iter().enumerate() {
            out.push(CorpusInstance { name: format!("{}#{k}", cm.name), building: b });
        }
    }
    Ok(out)
}

pub fn verify_corpus(seeds: u64, as_json: bool) -> Result<Outcome> {
    let instances = corpus_instances(standard_matroids())?;
    let results: Vec<(String, u64, Result<bool, String>)> = instances
        .par_iter()
        .flat_map_iter(|inst| {
            (0..seeds).map(move |s| {
                let r = default_cubical(&inst.building, s)
                    .and_then(|c| verify_nc_shelling(&inst.building, &c))
                    .map(|rep| rep.verdict)
                    .map_err(|e| e.to_string());
                (inst.name.clone(), s, r)
            })
        })
        .collect();
    let failures: Vec<&(String, u64, Result<bool, String>)> =
        results.iter().filter(|r| !matches!(r.2, Ok(true))).collect();
    if as_json {
        let rows: Vec<Value> = failures
            .iter()
            .map(|(n, s, r)| json!({ "instance": n, "seed": s, "error": r.as_ref().err() }))
            .collect();
        print_json(&json!({
            "instances": instances.len(),
            "runs": results.len(),
            "failures": rows,
        }))?;
    } else {
        println!("{} instances, {} runs, {} failures", instances.len(), results.len(), failures.len());
        for (n, s, r) in &failures {
            match r {
                Ok(_) => println!("  {n} seed {s}: not a shelling order"),
                Err(e) => println!("  {n} seed {s}: {e}"),
            }
        }
    }
    Ok(if failures.is_empty() { Outcome::Pass } else { Outcome::Fail })
}

pub fn compare(
    ka: OrderKind,
    kb: OrderKind,
    a: &InstanceArgs,
    c: &CubicalArgs,
    gamma: Option<&str>,
) -> Result<Outcome> {
    let b = load_instance(a)?;
    let m = b.matroid();
    let g = parse_gamma(gamma)?;
    let o1 = build_order(ka, &b, c, g.as_deref())?;
    let o2 = build_order(kb, &b, c, g.as_deref())?;
    let cmp = compare_orders(&o1, &o2, &b)?;
    let witness = local_equivalence_witness(&o1, &o2, &b, true)?;
    if a.base.json {
        let mut v = serde_json::to_value(&cmp)?;
        v["weak_witness"] = json!(witness.as_ref().map(|f| nested_labels(m, f)));
        print_json(&v)?;
    } else {
        println!("equal: {}", cmp.equal);
        println!("locally equivalent: {}", cmp.locally_equivalent);
        println!("weakly locally equivalent: {}", cmp.weakly_locally_equivalent);
        if let Some(f) = &witness {
            println!("  stars differ in their first facet at {}", m.fmt_flats(f));
        }
        println!("same minimum: {}", cmp.same_minimum);
    }
    Ok(Outcome::Pass)
}

fn family_matroids(family: Family) -> Vec<CorpusMatroid> {
    match family {
        Family::All => standard_matroids(),
        Family::Uniform => uniform_family(6),
        Family::Graphic => graphic_family(5),
        Family::Broom => vec![CorpusMatroid { name: "broom".into(), matroid: Arc::new(broom()) }],
        Family::Sums => direct_sum_family(6),
    }
}

pub fn search(
    family: Family,
    max_n: Option<usize>,
    seed: u64,
    budget: Option<usize>,
    out: Option<&Path>,
) -> Result<Outcome> {
    let matroids: Vec<CorpusMatroid> = family_matroids(family)
        .into_iter()
        .filter(|cm| max_n.is_none_or(|n| cm.matroid.len() <= n))
        .collect();
    let instances = corpus_instances(matroids)?;
    let outcome = search_nl_shelling(&instances, seed, budget.unwrap_or(usize::MAX))?;
    match out {
        Some(path) => {
            let file = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("cannot open {}", path.display()))?;
            let mut w = std::io::BufWriter::new(file);
            write_findings(&mut w, &outcome.findings)?;
            w.flush()?;
        }
        None => write_findings(std::io::stdout().lock(), &outcome.findings)?,
    }
    eprintln!(
        "{} instances, {}/{} tasks run, {} findings{}",
        instances.len(),
        outcome.tasks_run,
        outcome.tasks_planned,
        outcome.findings.len(),
        if outcome.budget_exhausted { ", budget exhausted" } else { "" },
    );
    Ok(if outcome.findings.is_empty() { Outcome::Pass } else { Outcome::Fail })
}
