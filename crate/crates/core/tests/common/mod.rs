//! Shared fixtures and the structural invariant suite.
#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use bshell_core::corpus::{standard_instances, CorpusInstance};
use bshell_core::geometry::{default_cubical, random_cubical, restrict_cubical, vertex, vertices};
use bshell_core::nested::facets;
use bshell_core::orders::{
    construct_n_min, label_flat, nc_order, nl_labeling, nl_order, reconstruct_from_labeling,
};
use bshell_core::{BuildingSet, CubicalFunction, Flat, Link, Matroid, NestedSet};
use rayon::prelude::*;

pub mod oracle;

pub fn corpus() -> &'static [CorpusInstance] {
    static CORPUS: OnceLock<Vec<CorpusInstance>> = OnceLock::new();
    CORPUS.get_or_init(|| standard_instances().expect("the standard corpus is valid"))
}

/// Flat from comma-separated labels.
pub fn flat(m: &Matroid, labels: &str) -> Flat {
    let ls: Vec<&str> = labels.split(',').filter(|s| !s.is_empty()).collect();
    m.flat_from_labels(&ls).unwrap()
}

/// Flat from a string of single-character labels, e.g. `"123"`.
pub fn fl(m: &Matroid, chars: &str) -> Flat {
    let ls: Vec<String> = chars.chars().map(String::from).collect();
    m.flat_from_labels(&ls).unwrap()
}

pub fn nested(m: &Matroid, sets: &[&str]) -> NestedSet {
    NestedSet::new(sets.iter().map(|s| fl(m, s)))
}

pub fn show(m: &Matroid, fs: &[NestedSet]) -> Vec<String> {
    fs.iter().map(|n| n.display(m).to_string()).collect()
}

/// Labels of a labeling as a string, e.g. `"312"`.
pub fn atoms_str(m: &Matroid, atoms: &[Flat]) -> String {
    atoms.iter().map(|&a| m.fmt_flat(a)).collect()
}

pub fn with_ground_order(m: &Matroid, order: &[&str]) -> Matroid {
    m.permuted_by_labels(order).unwrap().0
}

/// Cubical functions used by the invariant suite for one instance.
pub fn suite_cubicals(b: &BuildingSet) -> Vec<CubicalFunction> {
    vec![default_cubical(b, 0).unwrap(), random_cubical(b, 1).unwrap()]
}

/// A named invariant and the failures it produced across the corpus.
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

fn run_over<F>(name: &'static str, check: F) -> SuiteResult
where
    F: Fn(&CorpusInstance) -> (usize, Vec<String>) + Sync,
{
    let per: Vec<(usize, Vec<String>)> = corpus().par_iter().map(|i| check(i)).collect();
    let checked = per.iter().map(|p| p.0).sum();
    let failures = per.into_iter().flat_map(|p| p.1).collect();
    SuiteResult { name, checked, failures }
}

pub fn gram_invertible() -> SuiteResult {
    run_over("gram matrices are invertible", |inst| {
        let b = &inst.building;
        let c = default_cubical(b, 0).unwrap();
        let fs = facets(b);
        let bad = fs
            .iter()
            .filter(|n| vertex(b, n, &c).is_err())
            .map(|n| format!("{}: singular at {}", inst.name, n.display(b.matroid())))
            .collect();
        (fs.len(), bad)
    })
}

pub fn vertices_distinct() -> SuiteResult {
    run_over("vertices are distinct", |inst| {
        let b = &inst.building;
        let mut bad = Vec::new();
        let mut checked = 0;
        for c in suite_cubicals(b) {
            let mut pts: Vec<_> = vertices(b, &c).unwrap().into_iter().map(|v| v.point).collect();
            checked += pts.len();
            pts.sort();
            let n = pts.len();
            pts.dedup();
            if pts.len() != n {
                bad.push(format!("{}: repeated vertex", inst.name));
            }
        }
        (checked, bad)
    })
}

pub fn facet_sizes() -> SuiteResult {
    run_over("facets have rank(M) members", |inst| {
        let b = &inst.building;
        let r = b.matroid().rank();
        let fs = facets(b);
        let bad = fs
            .iter()
            .filter(|n| n.len() != r)
            .map(|n| format!("{}: {} has {} members", inst.name, n.display(b.matroid()), n.len()))
            .collect();
        (fs.len(), bad)
    })
}

pub fn max_partitions_ground() -> SuiteResult {
    run_over("max(B) partitions E", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let mx = b.maximal_members();
        let mut seen = 0u64;
        let mut ok = true;
        for x in mx {
            ok &= seen & x.bits() == 0;
            seen |= x.bits();
        }
        ok &= seen == m.ground().bits();
        (1, if ok { vec![] } else { vec![format!("{}: max(B) = {}", inst.name, m.fmt_flats(mx))] })
    })
}

pub fn nl_injective_round_trip() -> SuiteResult {
    run_over("NL labels are injective and invert", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let mut bad = Vec::new();
        let fs = facets(b);
        let mut seen = std::collections::BTreeSet::new();
        for n in &fs {
            let atoms = nl_labeling(m, n).atoms();
            let mut distinct = atoms.clone();
            distinct.sort();
            distinct.dedup();
            if distinct.len() != atoms.len() || atoms.len() != m.rank() {
                bad.push(format!("{}: labels of {} repeat", inst.name, n.display(m)));
            }
            if !seen.insert(atoms.clone()) {
                bad.push(format!("{}: two facets share labeling {}", inst.name, atoms_str(m, &atoms)));
            }
            match reconstruct_from_labeling(b, &atoms) {
                Ok(back) if &back == n => {}
                other => bad.push(format!("{}: {} reconstructs as {other:?}", inst.name, n.display(m))),
            }
        }
        (fs.len(), bad)
    })
}

pub fn unique_increasing_is_min() -> SuiteResult {
    run_over("the increasing labeling is unique and NL-minimal", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let increasing: Vec<NestedSet> = facets(b)
            .into_iter()
            .filter(|n| {
                let keys: Vec<usize> = nl_labeling(m, n).atoms().iter().map(|a| a.min_index().unwrap()).collect();
                keys.windows(2).all(|w| w[0] < w[1])
            })
            .collect();
        let nl_min = nl_order(b).facets[0].clone();
        let ok = increasing.len() == 1 && increasing[0] == nl_min && construct_n_min(b) == nl_min;
        (1, if ok { vec![] } else { vec![format!("{}: increasing {:?}", inst.name, show(m, &increasing))] })
    })
}

/// Calls `f(link, n, image)` for every facet `n` and every non-maximal `Z ∈ n`.
fn for_each_link(b: &BuildingSet, mut f: impl FnMut(&Link, &NestedSet, &NestedSet)) {
    let fs = facets(b);
    for z in b.non_maximal().collect::<Vec<_>>() {
        let link = Link::new(b, z).unwrap();
        for n in fs.iter().filter(|n| n.contains(z)) {
            let image = link.image(n).unwrap();
            f(&link, n, &image);
        }
    }
}

pub fn link_vertices_and_cubicality() -> SuiteResult {
    run_over("link vertices agree and restricted c is cubical", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let mut bad = Vec::new();
        let mut checked = 0;
        for c in suite_cubicals(b) {
            for z in b.non_maximal().collect::<Vec<_>>() {
                let link = Link::new(b, z).unwrap();
                let cz = match restrict_cubical(&link, &c) {
                    Ok(cz) => cz,
                    Err(e) => {
                        bad.push(format!("{}: Z={} {e}", inst.name, m.fmt_flat(z)));
                        continue;
                    }
                };
                if !bshell_core::geometry::is_cubical(link.product(), &cz).unwrap() {
                    bad.push(format!("{}: restricted c at Z={} is not cubical", inst.name, m.fmt_flat(z)));
                }
                for n in facets(b).iter().filter(|n| n.contains(z)) {
                    checked += 1;
                    let image = link.image(n).unwrap();
                    let v = vertex(b, n, &c).unwrap().point;
                    let w = vertex(link.product(), &image, &cz).unwrap().point;
                    if v != w {
                        bad.push(format!("{}: Z={} vertex of {} moves", inst.name, m.fmt_flat(z), n.display(m)));
                    }
                }
            }
        }
        (checked, bad)
    })
}

pub fn nc_order_survives_links() -> SuiteResult {
    run_over("NC order is preserved under links", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let mut bad = Vec::new();
        let mut checked = 0;
        for c in suite_cubicals(b) {
            let global = nc_order(b, &c).unwrap();
            for z in b.non_maximal().collect::<Vec<_>>() {
                let link = Link::new(b, z).unwrap();
                let cz = restrict_cubical(&link, &c).unwrap();
                let local = nc_order(link.product(), &cz).unwrap();
                let expected: Vec<NestedSet> = global
                    .facets
                    .iter()
                    .filter(|n| n.contains(z))
                    .map(|n| link.image(n).unwrap())
                    .collect();
                checked += expected.len();
                if local.facets != expected {
                    bad.push(format!("{}: order changes in the link of {}", inst.name, m.fmt_flat(z)));
                }
            }
        }
        (checked, bad)
    })
}

pub fn nc_min_is_nl_min() -> SuiteResult {
    run_over("NC minimum equals NL minimum", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let nl_min = nl_order(b).facets[0].clone();
        let mut bad = Vec::new();
        let cs = suite_cubicals(b);
        for c in &cs {
            let nc_min = nc_order(b, c).unwrap().facets[0].clone();
            if nc_min != nl_min {
                bad.push(format!("{}: NC min {} but NL min {}", inst.name, nc_min.display(m), nl_min.display(m)));
            }
        }
        (cs.len(), bad)
    })
}

pub fn label_transport() -> SuiteResult {
    run_over("labels transport through links", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let mut bad = Vec::new();
        let mut checked = 0;
        for_each_link(b, |link, n, image| {
            let z = link.z();
            let pm = link.product().matroid();
            for &x in n.flats() {
                checked += 1;
                let a = label_flat(m, n, x);
                let want = if x.is_subset(z) { a } else { m.join2(a, z).difference(z) };
                let got = label_flat(pm, image, link.tau(x).unwrap());
                if got != want {
                    bad.push(format!(
                        "{}: Z={} N={} X={}: label {} expected {}",
                        inst.name,
                        m.fmt_flat(z),
                        n.display(m),
                        m.fmt_flat(x),
                        m.fmt_flat(got),
                        m.fmt_flat(want)
                    ));
                }
            }
        });
        (checked, bad)
    })
}

pub fn descents_survive_links() -> SuiteResult {
    run_over("descents survive links", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let mut bad = Vec::new();
        let mut checked = 0;
        for_each_link(b, |link, n, image| {
            let lab = nl_labeling(m, n);
            let flats = lab.flats();
            // a descent at position i (1-based) sits at the flat X_i
            let qualifies = lab.descents().iter().any(|&i| flats[i - 1] != link.z());
            if qualifies {
                checked += 1;
                if nl_labeling(link.product().matroid(), image).descents().is_empty() {
                    bad.push(format!("{}: Z={} N={}", inst.name, m.fmt_flat(link.z()), n.display(m)));
                }
            }
        });
        (checked, bad)
    })
}

pub fn incomparable_members() -> SuiteResult {
    run_over("incomparable nested members are disjoint and split joins", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let mut bad = Vec::new();
        let mut checked = 0;
        for n in facets(b) {
            let r = n.reduced(b);
            for (i, &x) in r.iter().enumerate() {
                for &z in &r[i + 1..] {
                    if x.comparable(z) {
                        continue;
                    }
                    checked += 1;
                    if x.intersects(z) {
                        bad.push(format!("{}: {} meets {}", inst.name, m.fmt_flat(x), m.fmt_flat(z)));
                    }
                    if m.join2(x, z).difference(z) != x || m.join2(x, z).difference(x) != z {
                        bad.push(format!("{}: join of {} and {} adds elements", inst.name, m.fmt_flat(x), m.fmt_flat(z)));
                    }
                }
            }
        }
        (checked, bad)
    })
}

pub fn restrict_contract_valid() -> SuiteResult {
    run_over("restrictions and contractions are building sets", |inst| {
        let b = &inst.building;
        let m = b.matroid();
        let mut bad = Vec::new();
        let mut checked = 0;
        for x in b.non_maximal().collect::<Vec<_>>() {
            checked += 1;
            for (what, r) in [("restriction", b.restrict(x)), ("contraction", b.contract(x)), ("product", b.product(x))] {
                if let Err(e) = r {
                    bad.push(format!("{}: {what} at {}: {e}", inst.name, m.fmt_flat(x)));
                }
            }
        }
        for x in m.flats().iter().copied().filter(|x| !x.is_empty()) {
            checked += 1;
            if let Err(e) = b.restrict(x) {
                bad.push(format!("{}: restriction at flat {}: {e}", inst.name, m.fmt_flat(x)));
            }
        }
        (checked, bad)
    })
}

pub fn structural_suite() -> Vec<SuiteResult> {
    vec![
        gram_invertible(),
        vertices_distinct(),
        facet_sizes(),
        max_partitions_ground(),
        nl_injective_round_trip(),
        unique_increasing_is_min(),
        link_vertices_and_cubicality(),
        nc_order_survives_links(),
        nc_min_is_nl_min(),
        label_transport(),
        descents_survive_links(),
        incomparable_members(),
        restrict_contract_valid(),
    ]
}

pub fn arc(m: Matroid) -> Arc<Matroid> {
    Arc::new(m)
}
