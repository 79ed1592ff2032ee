//! Planar nearrings from Ferrero pairs.
//!
//! Given a group `N` with a fixed point free automorphism group `Phi`, a set
//! `R` of orbit representatives and a subset `M` of `R`, every nonzero `a`
//! factors uniquely as `a = r_a phi_a` and
//!
//! ```text
//! a * b = 0          if b = 0 or r_b in M
//! a * b = a phi_b    otherwise
//! ```

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    is_fixed_point_free, minus_id_plus_phi_bijective, orbits, Automorphism, AutomorphismGroup, FiniteGroup, Orbit,
};
use crate::nearfield::Nearfield;

/// Orders above this are only checked exhaustively on request.
pub const EXHAUSTIVE_PLANARITY_LIMIT: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FerreroPair {
    group: FiniteGroup,
    phi: AutomorphismGroup,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
}

impl FerreroPair {
    pub fn new(group: FiniteGroup, phi: AutomorphismGroup) -> Result<Self> {
        if phi.degree() != group.order() {
            return Err(Error::Construction(format!(
                "automorphisms act on {} points but the group has order {}",
                phi.degree(),
                group.order()
            )));
        }
        for e in phi.elements() {
            e.validate(&group).map_err(|err| Error::Construction(err.to_string()))?;
        }
        if !is_fixed_point_free(&phi, &group) {
            let (e, x) = phi
                .elements()
                .iter()
                .filter(|e| !e.is_identity())
                .find_map(|e| e.nonzero_fixed_points().first().map(|&x| (e, x)))
                .expect("a fixed point exists");
            return Err(Error::Construction(format!("{:?} fixes the nonzero element {x}", e.map())));
        }
        if let Some(e) = phi.elements().iter().find(|e| !e.is_identity() && !minus_id_plus_phi_bijective(e, &group)) {
            return Err(Error::Construction(format!("-id + {:?} is not bijective", e.map())));
        }
        let orbits = orbits(&phi, &group);
        let mut orbit_of = vec![0; group.order()];
        for (i, o) in orbits.iter().enumerate() {
            for &m in &o.members {
                orbit_of[m] = i;
            }
        }
        Ok(FerreroPair { group, phi, orbits, orbit_of })
    }

    pub fn from_generators(group: FiniteGroup, generators: &[Automorphism]) -> Result<Self> {
        let phi = AutomorphismGroup::from_generators(group.order(), generators)
            .map_err(|e| Error::Construction(e.to_string()))?;
        Self::new(group, phi)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn phi(&self) -> &AutomorphismGroup {
        &self.phi
    }

    /// All orbits, `{0}` first.
    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn nonzero_orbits(&self) -> &[Orbit] {
        &self.orbits[1..]
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }
}

/// The representative set `R` and its zero-multiplier subset `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepChoice {
    reps: Vec<usize>,
    zero_reps: Vec<usize>,
}

impl RepChoice {
    pub fn new(mut reps: Vec<usize>, mut zero_reps: Vec<usize>) -> Self {
        reps.sort_unstable();
        zero_reps.sort_unstable();
        RepChoice { reps, zero_reps }
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn zero_reps(&self) -> &[usize] {
        &self.zero_reps
    }

    pub fn is_zero_rep(&self, r: usize) -> bool {
        self.zero_reps.binary_search(&r).is_ok()
    }

    pub fn validate(&self, pair: &FerreroPair) -> Result<()> {
        let n = pair.group.order();
        let mut hit = vec![None; pair.orbits.len()];
        for &r in &self.reps {
            if r == 0 || r >= n {
                return Err(Error::Construction(format!("{r} cannot be an orbit representative")));
            }
            let o = pair.orbit_of(r);
            if let Some(prev) = hit[o].replace(r) {
                return Err(Error::Construction(format!("{prev} and {r} represent the same orbit")));
            }
        }
        if let Some(o) = (1..pair.orbits.len()).find(|&o| hit[o].is_none()) {
            return Err(Error::Construction(format!(
                "orbit {:?} has no representative",
                pair.orbits[o].members
            )));
        }
        if self.reps.windows(2).any(|w| w[0] == w[1]) || self.zero_reps.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Construction("duplicate representative".into()));
        }
        if let Some(&m) = self.zero_reps.iter().find(|m| self.reps.binary_search(m).is_err()) {
            return Err(Error::Construction(format!("zero multiplier {m} is not a representative")));
        }
        Ok(())
    }
}

/// Ferrero data together with the factorisation `a = r_a phi_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pair: FerreroPair,
    choice: RepChoice,
    factor: Vec<Option<(usize, usize)>>,
    zero_orbit: Vec<bool>,
}

impl Provenance {
    pub fn pair(&self) -> &FerreroPair {
        &self.pair
    }

    pub fn choice(&self) -> &RepChoice {
        &self.choice
    }

    pub fn phi(&self) -> &AutomorphismGroup {
        &self.pair.phi
    }

    /// `(r_a, phi_a)` with `phi_a` an index into [`Provenance::phi`].
    pub fn factor(&self, a: usize) -> Option<(usize, usize)> {
        self.factor[a]
    }

    pub fn is_zero_multiplier_orbit(&self, orbit: usize) -> bool {
        self.zero_orbit[orbit]
    }

    /// Representative of the orbit containing `x`.
    pub fn rep_of(&self, x: usize) -> Option<usize> {
        self.factor[x].map(|(r, _)| r)
    }
}

/// A nearring given by tables, optionally carrying the Ferrero data it was
/// built from (or recovered from its tables).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarNearring {
    group: FiniteGroup,
    mul: Vec<usize>,
    provenance: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Planarity {
    /// Verified exhaustively, or (for large orders on request) from valid
    /// Ferrero data.
    Planar { by_construction: bool },
    TooFewClasses { classes: usize },
    /// `x * a = x * b + c` has `solutions` solutions.
    NotUnique { a: usize, b: usize, c: usize, solutions: usize },
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar { .. })
    }
}

/// Builds the nearring of a Ferrero pair and representative choice.
pub fn construct(pair: &FerreroPair, choice: &RepChoice) -> Result<PlanarNearring> {
    choice.validate(pair)?;
    let n = pair.group.order();
    let phi = &pair.phi;
    let mut factor = vec![None; n];
    for &r in &choice.reps {
        for k in 0..phi.order() {
            let a = phi.apply(k, r);
            if factor[a].replace((r, k)).is_some() {
                return Err(Error::Construction(format!("{a} factors in two ways")));
            }
        }
    }
    let mut zero_orbit = vec![false; pair.orbits.len()];
    for &m in &choice.zero_reps {
        zero_orbit[pair.orbit_of(m)] = true;
    }
    let mut mul = vec![0; n * n];
    for b in 1..n {
        let (rb, kb) = factor[b].expect("nonzero elements factor");
        if choice.is_zero_rep(rb) {
            continue;
        }
        for a in 0..n {
            mul[a * n + b] = phi.apply(kb, a);
        }
    }
    let nr = PlanarNearring {
        group: pair.group.clone(),
        mul,
        provenance: Some(Provenance { pair: pair.clone(), choice: choice.clone(), factor, zero_orbit }),
    };
    nr.check_nearring_axioms()?;
    Ok(nr)
}

impl PlanarNearring {
    /// Wraps explicit tables after checking the nearring axioms (right
    /// distributivity, associativity, zero symmetry), then tries to recover
    /// Ferrero data from the right multiplication maps.
    pub fn from_tables(group: FiniteGroup, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        if mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidNearring("multiplication table has the wrong shape".into()));
        }
        let mut nr = PlanarNearring { group, mul: mul.into_iter().flatten().collect(), provenance: None };
        nr.check_nearring_axioms()?;
        nr.provenance = nr.recover_provenance();
        Ok(nr)
    }

    pub fn from_nearfield(field: &Nearfield) -> Self {
        Self::from_tables(field.additive_group().clone(), field.mul_rows())
            .expect("a nearfield is a zero symmetric nearring")
    }

    /// Returns the nearring with Ferrero data replaced by the given choice,
    /// provided it reproduces the same multiplication.
    pub fn with_provenance(self, pair: &FerreroPair, choice: &RepChoice) -> Result<Self> {
        let rebuilt = construct(pair, choice)?;
        if rebuilt.group != self.group || rebuilt.mul != self.mul {
            return Err(Error::Construction("Ferrero data does not reproduce the tables".into()));
        }
        Ok(rebuilt)
    }

    pub fn check_nearring_axioms(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mul(0, a) != 0 || self.mul(a, 0) != 0 {
                return Err(Error::InvalidNearring(format!("not zero symmetric at {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                let sum = self.add(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidNearring(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                    if self.mul(sum, c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(Error::InvalidNearring(format!(
                            "right distributivity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn recover_provenance(&self) -> Option<Provenance> {
        let n = self.order();
        let zm: Vec<bool> = (0..n).map(|b| b != 0 && (0..n).all(|x| self.mul(x, b) == 0)).collect();
        let mut maps: HashMap<Vec<usize>, ()> = HashMap::new();
        let mut autos = Vec::new();
        for b in (1..n).filter(|&b| !zm[b]) {
            let column: Vec<usize> = (0..n).map(|x| self.mul(x, b)).collect();
            if maps.insert(column.clone(), ()).is_none() {
                autos.push(Automorphism::new(column));
            }
        }
        if autos.is_empty() {
            return None;
        }
        let phi = AutomorphismGroup::from_elements(n, autos).ok()?;
        let pair = FerreroPair::new(self.group.clone(), phi).ok()?;
        let mut reps = Vec::new();
        let mut zero_reps = Vec::new();
        for o in pair.nonzero_orbits() {
            if o.members.iter().all(|&x| zm[x]) {
                zero_reps.push(o.representative);
                reps.push(o.representative);
            } else {
                let ids: Vec<usize> =
                    o.members.iter().copied().filter(|&e| (0..n).all(|x| self.mul(x, e) == x)).collect();
                if ids.len() != 1 {
                    return None;
                }
                reps.push(ids[0]);
            }
        }
        let choice = RepChoice::new(reps, zero_reps);
        let rebuilt = construct(&pair, &choice).ok()?;
        (rebuilt.mul == self.mul).then(|| rebuilt.provenance.expect("constructed"))
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.group.neg(a)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.group.order() + b]
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub(crate) fn require_provenance(&self) -> Result<&Provenance> {
        self.provenance
            .as_ref()
            .ok_or_else(|| Error::Argument("nearring carries no Ferrero data".into()))
    }

    pub fn phi(&self) -> Option<&AutomorphismGroup> {
        self.provenance.as_ref().map(|p| p.phi())
    }

    /// Nonzero elements of zero-multiplier orbits (as recorded by `M`).
    pub fn is_zero_multiplier(&self, x: usize) -> bool {
        x != 0 && (0..self.order()).all(|a| self.mul(a, x) == 0)
    }
}

/// The unique `(r_a, phi_a)` with `a = r_a phi_a`.
pub fn factorize(nearring: &PlanarNearring, a: usize) -> Result<(usize, usize)> {
    if a == 0 || a >= nearring.order() {
        return Err(Error::Argument(format!("{a} is not a nonzero element")));
    }
    Ok(nearring.require_provenance()?.factor(a).expect("nonzero elements factor"))
}

/// Partition by equality of multiplication-table columns.
pub fn multiplier_classes(nearring: &PlanarNearring) -> MultiplierClasses {
    let n = nearring.order();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(n);
    for b in 0..n {
        let column: Vec<usize> = (0..n).map(|x| nearring.mul(x, b)).collect();
        let next = classes.len();
        let c = *index.entry(column).or_insert(next);
        if c == next {
            classes.push(Vec::new());
        }
        classes[c].push(b);
        class_of.push(c);
    }
    MultiplierClasses { classes, class_of }
}

/// Checks planarity. With `exhaustive` off and order above
/// [`EXHAUSTIVE_PLANARITY_LIMIT`], the Ferrero data is re-verified instead.
pub fn is_planar(nearring: &PlanarNearring, exhaustive: bool) -> Result<Planarity> {
    let n = nearring.order();
    let classes = multiplier_classes(nearring);
    if classes.classes.len() < 3 {
        return Ok(Planarity::TooFewClasses { classes: classes.classes.len() });
    }
    if !exhaustive && n > EXHAUSTIVE_PLANARITY_LIMIT {
        let prov = nearring
            .provenance()
            .ok_or_else(|| Error::Indeterminate("no Ferrero data and exhaustive check disabled".into()))?;
        let (group, phi) = (prov.pair().group(), prov.phi());
        let ok = is_fixed_point_free(phi, group)
            && phi.elements().iter().all(|e| e.is_identity() || minus_id_plus_phi_bijective(e, group));
        if !ok {
            return Err(Error::Indeterminate("Ferrero preconditions fail".into()));
        }
        return Ok(Planarity::Planar { by_construction: true });
    }
    let reps: Vec<usize> = classes.classes.iter().map(|c| c[0]).collect();
    let pairs: Vec<(usize, usize)> =
        reps.iter().flat_map(|&a| reps.iter().filter(move |&&b| b != a).map(move |&b| (a, b))).collect();
    // x * a = x * b + c  <=>  c = -(x * b) + x * a; that map must be bijective.
    let check = |&(a, b): &(usize, usize)| -> Option<Planarity> {
        let mut count = vec![0usize; n];
        for x in 0..n {
            let c = nearring.add(nearring.neg(nearring.mul(x, b)), nearring.mul(x, a));
            count[c] += 1;
        }
        count
            .iter()
            .position(|&k| k != 1)
            .map(|c| Planarity::NotUnique { a, b, c, solutions: count[c] })
    };
    let failure = if n > EXHAUSTIVE_PLANARITY_LIMIT {
        pairs.par_iter().find_map_first(check)
    } else {
        pairs.iter().find_map(check)
    };
    Ok(failure.unwrap_or(Planarity::Planar { by_construction: false }))
}

/// All `e` with `x * e = x` for every `x`.
pub fn right_identities(nearring: &PlanarNearring) -> Vec<usize> {
    let n = nearring.order();
    (0..n).filter(|&e| (0..n).all(|x| nearring.mul(x, e) == x)).collect()
}
