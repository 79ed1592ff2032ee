//! Built-in catalog of every group of order at most 15, one entry per
//! isomorphism class, plus a few product aliases with convenient labellings.

use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const MAX_CATALOG_ORDER: usize = 15;

struct Entry {
    order: usize,
    name: &'static str,
    canonical: bool,
    group: FiniteGroup,
}

fn dihedral(n: usize) -> Result<FiniteGroup> {
    // r^k s^e encoded as (k, e); s r = r^-1 s.
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|e| (0..n).map(move |k| (k, e))).collect();
    FiniteGroup::from_operation(format!("D{n}"), &elements, |&(k1, e1), &(k2, e2)| {
        let k = if e1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
        (k, e1 ^ e2)
    })
}

fn dicyclic(n: usize) -> Result<FiniteGroup> {
    // a^k x^e with a of order 2n, x^2 = a^n, x a = a^-1 x.
    let m = 2 * n;
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|e| (0..m).map(move |k| (k, e))).collect();
    FiniteGroup::from_operation(format!("Dic{n}"), &elements, |&(k1, e1), &(k2, e2)| match (e1, e2) {
        (0, _) => ((k1 + k2) % m, e2),
        (_, 0) => ((k1 + m - k2) % m, 1),
        _ => ((k1 + m - k2 + n) % m, 0),
    })
}

fn alternating4() -> Result<FiniteGroup> {
    let even: Vec<Vec<usize>> = (0..4)
        .permutations(4)
        .filter(|p| {
            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            inversions % 2 == 0
        })
        .collect();
    FiniteGroup::from_operation("A4", &even, |a, b| (0..4).map(|i| b[a[i]]).collect())
}

fn build() -> Vec<Entry> {
    let c = FiniteGroup::cyclic;
    let x = FiniteGroup::direct_product;
    let mut raw: Vec<(usize, &'static str, bool, FiniteGroup)> = vec![
        (1, "C1", true, c(1)),
        (2, "C2", true, c(2)),
        (3, "C3", true, c(3)),
        (4, "C4", true, c(4)),
        (4, "C2xC2", true, x(&c(2), &c(2))),
        (5, "C5", true, c(5)),
        (6, "C6", true, c(6)),
        (6, "S3", true, dihedral(3).expect("D3").with_name("S3")),
        (7, "C7", true, c(7)),
        (8, "C8", true, c(8)),
        (8, "C4xC2", true, x(&c(4), &c(2))),
        (8, "C2xC2xC2", true, x(&x(&c(2), &c(2)), &c(2))),
        (8, "D4", true, dihedral(4).expect("D4")),
        (8, "Q8", true, dicyclic(2).expect("Q8").with_name("Q8")),
        (9, "C9", true, c(9)),
        (9, "C3xC3", true, x(&c(3), &c(3))),
        (10, "C10", true, c(10)),
        (10, "D5", true, dihedral(5).expect("D5")),
        (11, "C11", true, c(11)),
        (12, "C12", true, c(12)),
        (12, "C6xC2", true, x(&c(6), &c(2))),
        (12, "A4", true, alternating4().expect("A4")),
        (12, "D6", true, dihedral(6).expect("D6")),
        (12, "Dic3", true, dicyclic(3).expect("Dic3")),
        (13, "C13", true, c(13)),
        (14, "C14", true, c(14)),
        (14, "D7", true, dihedral(7).expect("D7")),
        (15, "C15", true, c(15)),
        (15, "C3xC5", false, x(&c(3), &c(5))),
    ];
    raw.iter_mut().for_each(|(_, name, _, g)| *g = g.clone().with_name(*name));
    raw.into_iter()
        .map(|(order, name, canonical, group)| {
            group.check_axioms().unwrap_or_else(|e| panic!("catalog group {name} is invalid: {e}"));
            assert_eq!(group.order(), order, "catalog group {name} has the wrong order");
            Entry { order, name, canonical, group }
        })
        .collect()
}

fn entries() -> &'static [Entry] {
    static CATALOG: OnceLock<Vec<Entry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Looks up `(order, name)` in the catalog.
pub fn catalog_group(order: usize, name: &str) -> Result<FiniteGroup> {
    entries()
        .iter()
        .find(|e| e.order == order && e.name == name)
        .map(|e| e.group.clone())
        .ok_or_else(|| Error::CatalogMiss { order, name: name.to_string() })
}

/// Looks up a catalog group by name alone.
pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    entries()
        .iter()
        .find(|e| e.name == name)
        .map(|e| e.group.clone())
        .ok_or_else(|| Error::CatalogMiss { order: 0, name: name.to_string() })
}

/// One group per isomorphism class of the given order.
pub fn groups_of_order(order: usize) -> Vec<FiniteGroup> {
    entries().iter().filter(|e| e.order == order && e.canonical).map(|e| e.group.clone()).collect()
}

/// `(order, name)` for every catalog entry, aliases included.
pub fn catalog_names() -> Vec<(usize, &'static str)> {
    entries().iter().map(|e| (e.order, e.name)).collect()
}
