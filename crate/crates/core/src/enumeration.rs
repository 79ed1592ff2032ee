//! Isomorphism-reduced enumeration of planar nearrings on catalog groups.
//!
//! For each group `G` and each fixed point free `Phi <= Aut(G)` up to
//! conjugacy, the sweep runs over subsets of orbits for `M` and over
//! representatives for the remaining orbits. The representative chosen inside
//! an `M` orbit never changes the multiplication, so it is fixed to the
//! orbit's least element.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{distributive_elements, generalized_centre, zero_multipliers};
use crate::catalog::groups_of_order;
use crate::error::{Error, Result};
use crate::ferrero::{construct, is_planar, multiplier_classes, right_identities, FerreroPair, PlanarNearring, RepChoice};
use crate::group::{automorphism_group, Automorphism, AutomorphismGroup, FiniteGroup};

/// Every subgroup of `Aut(G)` acting fixed point freely, trivial group
/// included, one per conjugacy class, ordered by size then members.
pub fn fpf_automorphism_groups(group: &FiniteGroup) -> Vec<AutomorphismGroup> {
    let aut = automorphism_group(group);
    let id = aut.identity_index();
    let fpf: Vec<usize> = (0..aut.order()).filter(|&i| i != id && aut.get(i).nonzero_fixed_points().is_empty()).collect();
    let all_fpf = |s: &[usize]| s.iter().all(|&i| i == id || fpf.binary_search(&i).is_ok());

    let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([vec![id]]);
    let mut frontier: Vec<Vec<usize>> = vec![vec![id]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for &g in fpf.iter().filter(|g| s.binary_search(g).is_err()) {
                let mut gens = s.clone();
                gens.push(g);
                let joined = aut.closure(&gens);
                if all_fpf(&joined) && found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }

    let mut subgroups: Vec<Vec<usize>> = found.into_iter().collect();
    subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for s in subgroups {
        if seen.contains(&s) {
            continue;
        }
        for g in 0..aut.order() {
            let gi = aut.inverse(g);
            let mut conj: Vec<usize> = s.iter().map(|&x| aut.compose(aut.compose(gi, x), g)).collect();
            conj.sort_unstable();
            seen.insert(conj);
        }
        out.push(aut.subgroup(&s).expect("closed subgroup"));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    All,
    NontrivialDistributive,
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Filter::All),
            "nontrivial-distributive" => Ok(Filter::NontrivialDistributive),
            other => Err(Error::Argument(format!("unknown filter '{other}'"))),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::All => "all",
            Filter::NontrivialDistributive => "nontrivial-distributive",
        })
    }
}

/// Isomorphism-invariant data of one element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementProfile {
    pub additive_order: usize,
    pub zero_multiplier: bool,
    pub right_identity: bool,
    pub idempotent: bool,
    /// Sorted additive orders of `x * y` over `y`.
    pub row_orders: Vec<usize>,
    /// Sorted additive orders of `y * x` over `y`.
    pub column_orders: Vec<usize>,
    /// Number of `y` with `x * y = x`.
    pub left_fixed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub distributive: usize,
    pub zero_multipliers: usize,
    pub multiplier_classes: usize,
    pub profiles: Vec<ElementProfile>,
}

impl Fingerprint {
    /// Short hex digest of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("fingerprint serializes");
        let hash = Sha256::digest(json.as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

fn element_profiles(nearring: &PlanarNearring) -> Vec<ElementProfile> {
    let n = nearring.order();
    let group = nearring.group();
    let orders: Vec<usize> = (0..n).map(|x| group.element_order(x)).collect();
    let right_ids = right_identities(nearring);
    (0..n)
        .map(|x| {
            let mut row_orders: Vec<usize> = (0..n).map(|y| orders[nearring.mul(x, y)]).collect();
            let mut column_orders: Vec<usize> = (0..n).map(|y| orders[nearring.mul(y, x)]).collect();
            row_orders.sort_unstable();
            column_orders.sort_unstable();
            ElementProfile {
                additive_order: orders[x],
                zero_multiplier: x != 0 && (0..n).all(|y| nearring.mul(y, x) == 0),
                right_identity: right_ids.binary_search(&x).is_ok(),
                idempotent: nearring.mul(x, x) == x,
                row_orders,
                column_orders,
                left_fixed: (0..n).filter(|&y| nearring.mul(x, y) == x).count(),
            }
        })
        .collect()
}

pub fn fingerprint(nearring: &PlanarNearring) -> Fingerprint {
    let mut profiles = element_profiles(nearring);
    profiles.sort();
    Fingerprint {
        order: nearring.order(),
        abelian: nearring.group().is_abelian(),
        distributive: distributive_elements(nearring).members.len(),
        zero_multipliers: zero_multipliers(nearring).members.len() - 1,
        multiplier_classes: multiplier_classes(nearring).classes.len(),
        profiles,
    }
}

/// A bijection `f` with `f(a + b) = f(a) + f(b)` and `f(a * b) = f(a) * f(b)`.
pub fn nearrings_isomorphic(left: &PlanarNearring, right: &PlanarNearring) -> Option<Vec<usize>> {
    let n = left.order();
    if n != right.order() || fingerprint(left) != fingerprint(right) {
        return None;
    }
    let pl = element_profiles(left);
    let pr = element_profiles(right);
    let gens = left.group().generating_set();
    let candidates: Vec<Vec<usize>> = gens.iter().map(|&g| (0..n).filter(|&h| pr[h] == pl[g]).collect()).collect();

    let extend = |images: &[usize]| -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = left.add(x, g);
                let fy = right.add(map[x], h);
                if map[y] == usize::MAX {
                    if pl[y] != pr[fy] {
                        return None;
                    }
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let mut hit = vec![false; n];
        for &y in &map {
            if y == usize::MAX || std::mem::replace(&mut hit[y], true) {
                return None;
            }
        }
        let preserves = (0..n).all(|a| {
            (0..n).all(|b| {
                map[left.add(a, b)] == right.add(map[a], map[b]) && map[left.mul(a, b)] == right.mul(map[a], map[b])
            })
        });
        preserves.then_some(map)
    };

    let mut images = Vec::with_capacity(gens.len());
    fn search(
        depth: usize,
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        extend: &dyn Fn(&[usize]) -> Option<Vec<usize>>,
    ) -> Option<Vec<usize>> {
        if depth == candidates.len() {
            return extend(images);
        }
        for &h in &candidates[depth] {
            images.push(h);
            if let Some(m) = search(depth + 1, candidates, images, extend) {
                return Some(m);
            }
            images.pop();
        }
        None
    }
    search(0, &candidates, &mut images, &extend)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub canonical: PlanarNearring,
    pub fingerprint: Fingerprint,
    pub members_found: usize,
}

impl IsoClass {
    pub fn order(&self) -> usize {
        self.canonical.order()
    }

    pub fn phi_order(&self) -> usize {
        self.canonical.phi().map_or(0, AutomorphismGroup::order)
    }
}

fn merge_into(classes: &mut Vec<IsoClass>, index: &mut BTreeMap<Fingerprint, Vec<usize>>, candidate: IsoClass) {
    let bucket = index.entry(candidate.fingerprint.clone()).or_default();
    for &i in bucket.iter() {
        if nearrings_isomorphic(&classes[i].canonical, &candidate.canonical).is_some() {
            classes[i].members_found += candidate.members_found;
            return;
        }
    }
    bucket.push(classes.len());
    classes.push(candidate);
}

/// Every `(M, R)` choice for a pair: `M` as a subset of nonzero orbits, least
/// members as `M` representatives, any member elsewhere.
pub fn representative_choices(pair: &FerreroPair) -> Vec<RepChoice> {
    let orbits = pair.nonzero_orbits();
    let t = orbits.len();
    let mut out = Vec::new();
    for mask in 0..(1usize << t) {
        let zero: Vec<usize> = (0..t).filter(|i| mask >> i & 1 == 1).map(|i| orbits[i].members[0]).collect();
        let live: Vec<&Vec<usize>> = (0..t).filter(|i| mask >> i & 1 == 0).map(|i| &orbits[i].members).collect();
        let mut idx = vec![0usize; live.len()];
        loop {
            let mut reps = zero.clone();
            reps.extend(live.iter().zip(&idx).map(|(o, &k)| o[k]));
            out.push(RepChoice::new(reps, zero.clone()));
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < live[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    out
}

fn sweep_partition(pair: &FerreroPair, filter: Filter) -> Result<Vec<IsoClass>> {
    let mut classes = Vec::new();
    let mut index = BTreeMap::new();
    for choice in representative_choices(pair) {
        let nr = construct(pair, &choice)?;
        if !is_planar(&nr, true)?.is_planar() {
            continue;
        }
        if filter == Filter::NontrivialDistributive && !distributive_elements(&nr).is_nontrivial() {
            continue;
        }
        let fp = fingerprint(&nr);
        merge_into(&mut classes, &mut index, IsoClass { canonical: nr, fingerprint: fp, members_found: 1 });
    }
    Ok(classes)
}

/// All planar nearrings on catalog groups of order `2..=max_order`, one per
/// isomorphism class, sorted by `(order, fingerprint)`.
pub fn enumerate_planar_nearrings(max_order: usize, filter: Filter) -> Result<Vec<IsoClass>> {
    let partitions: Vec<FerreroPair> = (2..=max_order)
        .flat_map(groups_of_order)
        .flat_map(|g| {
            fpf_automorphism_groups(&g)
                .into_iter()
                .map(move |phi| FerreroPair::new(g.clone(), phi).expect("fpf subgroup gives a Ferrero pair"))
        })
        .collect();
    let found: Vec<Vec<IsoClass>> =
        partitions.par_iter().map(|pair| sweep_partition(pair, filter)).collect::<Result<Vec<_>>>()?;
    let mut classes = Vec::new();
    let mut index = BTreeMap::new();
    for candidate in found.into_iter().flatten() {
        merge_into(&mut classes, &mut index, candidate);
    }
    classes.sort_by(|a, b| (a.order(), &a.fingerprint).cmp(&(b.order(), &b.fingerprint)));
    Ok(classes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestTables {
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub index: usize,
    pub order: usize,
    pub group: String,
    pub fingerprint: String,
    pub phi_order: usize,
    pub phi_generators: Vec<Vec<usize>>,
    pub reps: Vec<usize>,
    pub zero_reps: Vec<usize>,
    pub distributive: usize,
    pub zero_multipliers: usize,
    pub gc_case: u8,
    pub members_found: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tables: Option<ManifestTables>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub max_order: usize,
    pub filter: Filter,
    pub class_count: usize,
    pub classes: Vec<ManifestRecord>,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// One record per class; the generalized-centre check runs on each.
pub fn build_manifest(classes: &[IsoClass], max_order: usize, filter: Filter, tables: bool) -> Result<Manifest> {
    let records = classes
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let n = &c.canonical;
            let prov = n.provenance().ok_or_else(|| Error::Argument("class without Ferrero data".into()))?;
            let phi = prov.phi();
            let phi_generators = phi.generators().into_iter().map(|i| phi.get(i).map().to_vec()).collect();
            Ok(ManifestRecord {
                index,
                order: n.order(),
                group: n.group().name().to_string(),
                fingerprint: c.fingerprint.digest(),
                phi_order: phi.order(),
                phi_generators,
                reps: prov.choice().reps().to_vec(),
                zero_reps: prov.choice().zero_reps().to_vec(),
                distributive: c.fingerprint.distributive,
                zero_multipliers: c.fingerprint.zero_multipliers,
                gc_case: generalized_centre(n)?.case_tag(),
                members_found: c.members_found,
                tables: tables.then(|| ManifestTables { add: n.group().rows(), mul: n.mul_rows() }),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Manifest { max_order, filter, class_count: records.len(), classes: records })
}

/// Planar nearring on `C_{p^2}`: `Phi` the order-`(p - 1)` units, `pZ` the
/// zero multipliers with representative `p`, and `p - 1 + pZ` as the
/// remaining representatives.
pub fn zp2_family(p: usize) -> Result<PlanarNearring> {
    if ![3, 5, 7, 11].contains(&p) {
        return Err(Error::Argument(format!("p must be one of 3, 5, 7, 11 (got {p})")));
    }
    let n = p * p;
    let group = FiniteGroup::cyclic(n).with_name(format!("C{n}"));
    let units: Vec<Automorphism> = (1..n)
        .filter(|&u| {
            let mut x = 1;
            for _ in 0..p - 1 {
                x = x * u % n;
            }
            x == 1
        })
        .map(|u| Automorphism::multiplication(&group, u))
        .collect();
    let phi = AutomorphismGroup::from_elements(n, units)?;
    let pair = FerreroPair::new(group, phi)?;
    let mut reps: Vec<usize> = (0..p).map(|k| p - 1 + k * p).collect();
    reps.push(p);
    construct(&pair, &RepChoice::new(reps, vec![p]))
}
