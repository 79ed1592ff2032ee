//! Block designs from the orbits of a planar nearring, and the check for
//! additively closed orbits.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ferrero::PlanarNearring;
use crate::nearfield::Nearfield;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Balance {
    Balanced { lambda: usize },
    /// A pair whose count differs from the pair `(0, 1)`'s count.
    Unbalanced { pair: (usize, usize), count: usize, reference: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDesign {
    pub points: Vec<usize>,
    pub basic_blocks: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
    /// `pair_counts[i][j]` for `i < j`: blocks containing both points.
    pub pair_counts: Vec<Vec<usize>>,
    pub block_size: Option<usize>,
    pub replication: Option<usize>,
    pub balance: Balance,
    /// Some translate arose more than once before deduplication.
    pub repeated_translates: bool,
    /// Blocks span every point.
    pub degenerate: bool,
}

impl BlockDesign {
    pub fn v(&self) -> usize {
        self.points.len()
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn lambda(&self) -> Option<usize> {
        match self.balance {
            Balance::Balanced { lambda } => Some(lambda),
            Balance::Unbalanced { .. } => None,
        }
    }

    pub fn pair_count(&self, x: usize, y: usize) -> usize {
        let (i, j) = if x < y { (x, y) } else { (y, x) };
        self.pair_counts[i][j]
    }

    /// Sum of per-pair counts over unordered pairs.
    pub fn total_pair_incidences(&self) -> usize {
        self.pair_counts.iter().flatten().sum()
    }

    /// `sum over blocks of k (k - 1) / 2`.
    pub fn expected_pair_incidences(&self) -> usize {
        self.blocks.iter().map(|b| b.len() * (b.len() - 1) / 2).sum()
    }
}

/// The distinct sets `a Phi u {0}` for nonzero `a`.
pub fn basic_blocks(nearring: &PlanarNearring) -> Result<Vec<Vec<usize>>> {
    let prov = nearring.require_provenance()?;
    let mut blocks: Vec<Vec<usize>> = prov
        .pair()
        .nonzero_orbits()
        .iter()
        .map(|o| {
            let mut b = o.members.clone();
            b.push(0);
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort();
    blocks.dedup();
    Ok(blocks)
}

/// All translates `a Phi* + b`, deduplicated, with exhaustive pair counts.
pub fn block_design(nearring: &PlanarNearring) -> Result<BlockDesign> {
    let basic = basic_blocks(nearring)?;
    let n = nearring.order();
    let mut all: Vec<Vec<usize>> = Vec::new();
    for block in &basic {
        for b in 0..n {
            let mut t: Vec<usize> = block.iter().map(|&x| nearring.add(x, b)).collect();
            t.sort_unstable();
            all.push(t);
        }
    }
    let raw = all.len();
    all.sort();
    all.dedup();
    let repeated_translates = all.len() != raw;

    let mut pair_counts = vec![vec![0usize; n]; n];
    for block in &all {
        for (i, &x) in block.iter().enumerate() {
            for &y in &block[i + 1..] {
                pair_counts[x][y] += 1;
            }
        }
    }
    let reference = if n >= 2 { pair_counts[0][1] } else { 0 };
    let witness = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| pair_counts[x][y] != reference);
    let balance = match witness {
        None => Balance::Balanced { lambda: reference },
        Some(pair) => Balance::Unbalanced { pair, count: pair_counts[pair.0][pair.1], reference },
    };
    let sizes: BTreeSet<usize> = all.iter().map(Vec::len).collect();
    let block_size = (sizes.len() == 1).then(|| *sizes.iter().next().expect("nonempty"));
    let replications: BTreeSet<usize> = (0..n).map(|x| all.iter().filter(|b| b.contains(&x)).count()).collect();
    let replication = (replications.len() == 1).then(|| *replications.iter().next().expect("nonempty"));
    Ok(BlockDesign {
        points: (0..n).collect(),
        degenerate: all.iter().any(|b| b.len() == n),
        basic_blocks: basic,
        blocks: all,
        pair_counts,
        block_size,
        replication,
        balance,
        repeated_translates,
    })
}

/// Text export: `v b k`, then `lambda L` or `unbalanced x,y count`, then one
/// block per line. `k` is `-` when block sizes vary.
pub fn export_design(design: &BlockDesign) -> String {
    let mut out = String::new();
    let k = design.block_size.map_or_else(|| "-".to_string(), |k| k.to_string());
    writeln!(out, "{} {} {k}", design.v(), design.b()).expect("string write");
    match &design.balance {
        Balance::Balanced { lambda } => writeln!(out, "lambda {lambda}"),
        Balance::Unbalanced { pair, count, .. } => writeln!(out, "unbalanced {},{} {count}", pair.0, pair.1),
    }
    .expect("string write");
    for block in &design.blocks {
        let line: Vec<String> = block.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", line.join(" ")).expect("string write");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpaceWitness {
    /// The orbit `a Phi*` used as scalars.
    pub subfield: Vec<usize>,
    pub field: Nearfield,
    /// Dimension of `N` over the subfield.
    pub dimension: usize,
    /// `Phi` equals the multiplicative group of the subfield acting by `*`.
    pub phi_is_field_units: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureReport {
    /// Every orbit closed, addition abelian and more than one orbit.
    VectorSpace(Box<VectorSpaceWitness>),
    /// Every orbit closed but the vector-space hypotheses fail.
    ClosedOnly { reason: String },
    NotClosed { orbit: Vec<usize>, witness: (usize, usize, usize) },
}

/// Checks `a Phi*` for closure under `+`, in orbit-representative order. When
/// all are closed, exhibits the scalar field and checks the vector-space axioms.
pub fn orbits_additively_closed(nearring: &PlanarNearring) -> Result<ClosureReport> {
    let blocks = basic_blocks(nearring)?;
    let prov = nearring.require_provenance()?;
    let mut ordered: Vec<(usize, &Vec<usize>)> = prov
        .pair()
        .nonzero_orbits()
        .iter()
        .map(|o| (prov.rep_of(o.members[0]).expect("nonzero"), &o.members))
        .collect();
    ordered.sort();
    for (_, members) in ordered {
        let mut star = members.clone();
        star.push(0);
        star.sort_unstable();
        for &x in &star {
            for &y in &star {
                let s = nearring.add(x, y);
                if star.binary_search(&s).is_err() {
                    return Ok(ClosureReport::NotClosed { orbit: star, witness: (x, y, s) });
                }
            }
        }
    }
    if !nearring.group().is_abelian() {
        return Ok(ClosureReport::ClosedOnly { reason: "addition is not abelian".into() });
    }
    if blocks.len() < 2 {
        return Ok(ClosureReport::ClosedOnly { reason: "only one orbit".into() });
    }
    let Some(a) = (1..nearring.order()).find(|&x| !nearring.is_zero_multiplier(x)) else {
        return Ok(ClosureReport::ClosedOnly { reason: "every nonzero element is a zero multiplier".into() });
    };
    let subfield = blocks.into_iter().find(|b| b.binary_search(&a).is_ok()).expect("a lies in an orbit");
    let idx = |x: usize| subfield.binary_search(&x).expect("closed");
    let add: Vec<Vec<usize>> = subfield.iter().map(|&x| subfield.iter().map(|&y| idx(nearring.add(x, y))).collect()).collect();
    let mul: Vec<Vec<usize>> = subfield.iter().map(|&x| subfield.iter().map(|&y| idx(nearring.mul(x, y))).collect()).collect();
    let group = crate::group::FiniteGroup::from_table("F", add)?;
    let field = Nearfield::from_tables("F", group, mul)?;
    if !field.is_field() {
        return Err(Error::TheoremViolation(format!("closed orbit {subfield:?} is a proper nearfield, not a field")));
    }

    // Scalars act as v . f = v * f.
    let n = nearring.order();
    for &f in &subfield {
        for &g in &subfield {
            for v in 0..n {
                let fg = nearring.add(f, g);
                if nearring.mul(v, fg) != nearring.add(nearring.mul(v, f), nearring.mul(v, g)) {
                    return Err(Error::TheoremViolation(format!("v = {v}: v({f} + {g}) != v{f} + v{g}")));
                }
                if nearring.mul(nearring.mul(v, f), g) != nearring.mul(v, nearring.mul(f, g)) {
                    return Err(Error::TheoremViolation(format!("v = {v}: (v{f}){g} != v({f}{g})")));
                }
                for w in 0..n {
                    if nearring.mul(nearring.add(v, w), f) != nearring.add(nearring.mul(v, f), nearring.mul(w, f)) {
                        return Err(Error::TheoremViolation(format!("({v} + {w}){f} is not distributive")));
                    }
                }
            }
        }
    }
    let one = subfield[field.one()];
    if let Some(v) = (0..n).find(|&v| nearring.mul(v, one) != v) {
        return Err(Error::TheoremViolation(format!("the unit {one} of the subfield does not fix {v}")));
    }
    let q = subfield.len();
    let mut dimension = 0;
    let mut size = 1;
    while size < n {
        size *= q;
        dimension += 1;
    }
    if size != n {
        return Err(Error::TheoremViolation(format!("|N| = {n} is not a power of {q}")));
    }
    let phi = prov.phi();
    let units: BTreeSet<Vec<usize>> =
        subfield[1..].iter().map(|&f| (0..n).map(|v| nearring.mul(v, f)).collect()).collect();
    let phi_set: BTreeSet<Vec<usize>> = phi.elements().iter().map(|e| e.map().to_vec()).collect();
    Ok(ClosureReport::VectorSpace(Box::new(VectorSpaceWitness {
        subfield,
        field,
        dimension,
        phi_is_field_units: units == phi_set,
    })))
}
