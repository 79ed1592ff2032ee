//! Finite nearvector spaces in component form `F^n` with twisted scalar
//! action `(x_1, ..., x_n) a = (x_1 psi_1(a), ..., x_n psi_n(a))`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::distributive_elements;
use crate::error::{Error, Result};
use crate::ferrero::{construct, FerreroPair, PlanarNearring, RepChoice};
use crate::group::{Automorphism, AutomorphismGroup, FiniteGroup};
use crate::nearfield::{kern, Nearfield};

/// How a component twist is described before it is resolved against a
/// nearfield.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistSpec {
    Identity,
    /// `x -> x^k`.
    Power(u32),
    /// Explicit image of every element.
    Map(Vec<usize>),
}

impl FromStr for TwistSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "id" {
            return Ok(TwistSpec::Identity);
        }
        let bad = || Error::Argument(format!("cannot parse twist '{s}' (expected id, pow:K or map:A,B,...)"));
        if let Some(k) = s.strip_prefix("pow:") {
            return k.parse().map(TwistSpec::Power).map_err(|_| bad());
        }
        if let Some(list) = s.strip_prefix("map:") {
            return list
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(TwistSpec::Map)
                .map_err(|_| bad());
        }
        Err(bad())
    }
}

impl TwistSpec {
    /// Splits `id,pow:3,map:0,1,3,2` into specs; bare numbers extend a preceding `map:`.
    pub fn parse_list(spec: &str) -> Result<Vec<TwistSpec>> {
        let mut tokens: Vec<String> = Vec::new();
        for part in spec.split(',').map(str::trim) {
            let continues_map = part.parse::<usize>().is_ok() && tokens.last().is_some_and(|t| t.starts_with("map:"));
            match tokens.last_mut() {
                Some(last) if continues_map => {
                    last.push(',');
                    last.push_str(part);
                }
                _ => tokens.push(part.to_string()),
            }
        }
        tokens.iter().map(|t| t.parse()).collect()
    }
}

impl fmt::Display for TwistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistSpec::Identity => write!(f, "id"),
            TwistSpec::Power(k) => write!(f, "pow:{k}"),
            TwistSpec::Map(m) => {
                write!(f, "map:")?;
                let parts: Vec<String> = m.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearvectorSpace {
    field: Nearfield,
    twists: Vec<Vec<usize>>,
    inverse_twists: Vec<Vec<usize>>,
    group: FiniteGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiKernelSet {
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularDecomposition {
    /// Blocks of 0-based component indices, each sorted, ordered by least member.
    pub parts: Vec<Vec<usize>>,
}

fn resolve_twist(field: &Nearfield, spec: &TwistSpec) -> Result<Vec<usize>> {
    let q = field.order();
    let map = match spec {
        TwistSpec::Identity => (0..q).collect(),
        TwistSpec::Power(k) => (0..q).map(|x| if x == 0 { 0 } else { field.power(x, *k) }).collect(),
        TwistSpec::Map(m) => m.clone(),
    };
    if map.len() != q {
        return Err(Error::InvalidNearvectorSpace(format!("twist {spec} has {} images, expected {q}", map.len())));
    }
    let mut seen = vec![false; q];
    for &y in &map {
        if y >= q || std::mem::replace(&mut seen[y], true) {
            return Err(Error::InvalidNearvectorSpace(format!("twist {spec} is not a bijection")));
        }
    }
    if map[0] != 0 {
        return Err(Error::InvalidNearvectorSpace(format!("twist {spec} moves 0")));
    }
    for a in 1..q {
        for b in 1..q {
            if map[field.mul(a, b)] != field.mul(map[a], map[b]) {
                return Err(Error::InvalidNearvectorSpace(format!(
                    "twist {spec} is not multiplicative: ({a}, {b})"
                )));
            }
        }
    }
    Ok(map)
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Builds `F^n` with one twist per component.
pub fn make_nearvector_space(field: &Nearfield, twists: &[TwistSpec]) -> Result<NearvectorSpace> {
    if twists.is_empty() {
        return Err(Error::InvalidNearvectorSpace("at least one component is required".into()));
    }
    let twists = twists.iter().map(|t| resolve_twist(field, t)).collect::<Result<Vec<_>>>()?;
    let inverse_twists = twists.iter().map(|t| invert(t)).collect();
    let additive = field.additive_group();
    let mut group = additive.clone();
    for _ in 1..twists.len() {
        group = FiniteGroup::direct_product(&group, additive);
    }
    let name = format!("{}^{}", field.name(), twists.len());
    Ok(NearvectorSpace { field: field.clone(), twists, inverse_twists, group: group.with_name(name) })
}

impl NearvectorSpace {
    pub fn field(&self) -> &Nearfield {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.twists.len()
    }

    pub fn twist(&self, i: usize) -> &[usize] {
        &self.twists[i]
    }

    /// Additive group of `V`; vector indices put the first coordinate most significant.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn coordinates(&self, v: usize) -> Vec<usize> {
        let q = self.field.order();
        let mut out = vec![0; self.dimension()];
        let mut rest = v;
        for slot in out.iter_mut().rev() {
            *slot = rest % q;
            rest /= q;
        }
        out
    }

    pub fn vector(&self, coordinates: &[usize]) -> usize {
        let q = self.field.order();
        coordinates.iter().fold(0, |acc, &c| acc * q + c)
    }

    pub fn scalar(&self, v: usize, alpha: usize) -> usize {
        let coords: Vec<usize> = self
            .coordinates(v)
            .iter()
            .zip(&self.twists)
            .map(|(&x, psi)| self.field.mul(x, psi[alpha]))
            .collect();
        self.vector(&coords)
    }

    /// Scalar action of every nonzero field element, indexed by that element.
    pub fn scalar_automorphisms(&self) -> Vec<Automorphism> {
        (1..self.field.order())
            .map(|a| Automorphism::new((0..self.order()).map(|v| self.scalar(v, a)).collect()))
            .collect()
    }

    fn support(&self, v: usize) -> Vec<usize> {
        self.coordinates(v).iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect()
    }
}

/// `x` such that every `x a + x b` is again some `x c`.
pub fn quasi_kernel(space: &NearvectorSpace) -> QuasiKernelSet {
    let q = space.field.order();
    let n = space.order();
    let members = (0..n)
        .filter(|&x| {
            let multiples: Vec<usize> = (0..q).map(|a| space.scalar(x, a)).collect();
            let mut hit = vec![false; n];
            multiples.iter().for_each(|&m| hit[m] = true);
            multiples.iter().all(|&a| multiples.iter().all(|&b| hit[space.group.add(a, b)]))
        })
        .collect();
    QuasiKernelSet { members }
}

/// Groups components whose twists differ by an automorphism of `F`.
pub fn regular_decomposition(space: &NearvectorSpace) -> RegularDecomposition {
    let autos = space.field.automorphisms();
    let equivalent = |i: usize, j: usize| {
        autos.iter().any(|sigma| space.twists[i].iter().zip(&space.twists[j]).all(|(&a, &b)| sigma[a] == b))
    };
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for i in 0..space.dimension() {
        match parts.iter_mut().find(|p| equivalent(p[0], i)) {
            Some(p) => p.push(i),
            None => parts.push(vec![i]),
        }
    }
    RegularDecomposition { parts }
}

/// Orbits of the scalar action lying inside the kernel of the projection
/// onto `coordinate`, each as a sorted member list.
pub fn kernel_orbits(space: &NearvectorSpace, coordinate: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; space.order()];
    let mut out = Vec::new();
    for v in 1..space.order() {
        if seen[v] || space.coordinates(v)[coordinate] != 0 {
            continue;
        }
        let orbit: BTreeSet<usize> = (1..space.field.order()).map(|a| space.scalar(v, a)).collect();
        orbit.iter().for_each(|&x| seen[x] = true);
        out.push(orbit.into_iter().collect());
    }
    out
}

/// Planar nearring `a * b = a (b_c)` on `V` for the projection onto
/// coordinate `c`. `zero_reps` picks one representative in each orbit inside
/// the kernel of the projection (least members by default).
pub fn derived_planar_nearring(
    space: &NearvectorSpace,
    coordinate: usize,
    zero_reps: Option<&[usize]>,
) -> Result<PlanarNearring> {
    if coordinate >= space.dimension() {
        return Err(Error::Argument(format!(
            "coordinate {coordinate} out of range for dimension {}",
            space.dimension()
        )));
    }
    let group = space.group.clone();
    let phi = AutomorphismGroup::from_elements(space.order(), space.scalar_automorphisms())?;
    let pair = FerreroPair::new(group, phi)?;
    let one = space.field.one();
    let live: Vec<usize> = (1..space.order()).filter(|&v| space.coordinates(v)[coordinate] == one).collect();
    let kernel = kernel_orbits(space, coordinate);
    let zero: Vec<usize> = match zero_reps {
        None => kernel.iter().map(|o| o[0]).collect(),
        Some(chosen) => {
            if let Some(&bad) = chosen.iter().find(|&&r| r >= space.order() || r == 0 || space.coordinates(r)[coordinate] != 0) {
                return Err(Error::Argument(format!("representative {bad} is not a nonzero vector in the kernel")));
            }
            chosen.to_vec()
        }
    };
    let reps: Vec<usize> = live.iter().chain(&zero).copied().collect();
    let choice = RepChoice::new(reps, zero);
    choice.validate(&pair).map_err(|e| Error::Argument(e.to_string()))?;
    let nearring = construct(&pair, &choice)?;

    let psi_inv = &space.inverse_twists[coordinate];
    for a in 0..space.order() {
        for b in 0..space.order() {
            let expected = space.scalar(a, psi_inv[space.coordinates(b)[coordinate]]);
            if nearring.mul(a, b) != expected {
                return Err(Error::TheoremViolation(format!(
                    "{a} * {b} = {} but {a} ({b} projected) = {expected}",
                    nearring.mul(a, b)
                )));
            }
        }
    }
    Ok(nearring)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub components: Vec<usize>,
    /// `D` intersected with the vectors supported on this block.
    pub intersection: Vec<usize>,
    /// Vectors on this block with every coordinate in `kern(F)`.
    pub plain_prediction: Vec<usize>,
    /// Per component, `k` with `x -> k psi_i(psi_c^-1(x))` additive.
    pub twisted_kerns: Vec<Vec<usize>>,
    /// Vectors on this block with coordinate `i` in the `i`-th twisted kern.
    pub twisted_prediction: Vec<usize>,
    pub matches_plain: bool,
    pub matches_twisted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub coordinate: usize,
    pub distributive: Vec<usize>,
    pub kern: Vec<usize>,
    pub blocks: Vec<BlockReport>,
    /// `D` is the set of sums of its block intersections.
    pub splits: bool,
    pub plain_reading_holds: bool,
    pub twisted_reading_holds: bool,
}

fn supported_on(space: &NearvectorSpace, block: &[usize], allowed: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    (0..space.order())
        .filter(|&v| {
            space.coordinates(v).iter().enumerate().all(|(i, &x)| {
                if block.contains(&i) {
                    allowed(i, x)
                } else {
                    x == 0
                }
            })
        })
        .collect()
}

/// Computes `D` of the derived nearring and compares it, block by block,
/// against the plain-kern and twist-adjusted-kern readings. Nothing is asserted.
pub fn check_conjecture(
    space: &NearvectorSpace,
    coordinate: usize,
    zero_reps: Option<&[usize]>,
) -> Result<ConjectureReport> {
    let nearring = derived_planar_nearring(space, coordinate, zero_reps)?;
    let distributive = distributive_elements(&nearring).members;
    let field = &space.field;
    let kern_set = kern(field).members;
    let q = field.order();
    let psi_c_inv = &space.inverse_twists[coordinate];
    let twisted_kern = |i: usize| -> Vec<usize> {
        let psi = &space.twists[i];
        let f = |k: usize, x: usize| field.mul(k, psi[psi_c_inv[x]]);
        (0..q)
            .filter(|&k| (0..q).all(|x| (0..q).all(|y| f(k, field.add(x, y)) == field.add(f(k, x), f(k, y)))))
            .collect()
    };
    let in_d = |v: usize| distributive.binary_search(&v).is_ok();
    let decomposition = regular_decomposition(space);
    let blocks: Vec<BlockReport> = decomposition
        .parts
        .iter()
        .map(|block| {
            let intersection: Vec<usize> = supported_on(space, block, |_, _| true).into_iter().filter(|&v| in_d(v)).collect();
            let plain_prediction = supported_on(space, block, |_, x| kern_set.contains(&x));
            let twisted_kerns: Vec<Vec<usize>> = block.iter().map(|&i| twisted_kern(i)).collect();
            let twisted_prediction = supported_on(space, block, |i, x| {
                let pos = block.iter().position(|&j| j == i).expect("in block");
                twisted_kerns[pos].contains(&x)
            });
            BlockReport {
                components: block.clone(),
                matches_plain: intersection == plain_prediction,
                matches_twisted: intersection == twisted_prediction,
                intersection,
                plain_prediction,
                twisted_kerns,
                twisted_prediction,
            }
        })
        .collect();

    let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
    for b in &blocks {
        sums = sums.iter().flat_map(|&s| b.intersection.iter().map(move |&x| (s, x))).map(|(s, x)| space.group.add(s, x)).collect();
    }
    let splits = sums.into_iter().collect::<Vec<_>>() == distributive;
    Ok(ConjectureReport {
        coordinate,
        plain_reading_holds: blocks.iter().all(|b| b.matches_plain),
        twisted_reading_holds: blocks.iter().all(|b| b.matches_twisted),
        distributive,
        kern: kern_set,
        blocks,
        splits,
    })
}

/// True when the only nonzero coordinate of `v` lies in `kern(F)`.
pub fn is_kern_axis_vector(space: &NearvectorSpace, v: usize) -> bool {
    let support = space.support(v);
    let kern_set = kern(&space.field).members;
    support.len() == 1 && kern_set.contains(&space.coordinates(v)[support[0]])
}
