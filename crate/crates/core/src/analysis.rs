//! Distributive elements, zero multipliers, ideals and the generalized centre
//! of a planar nearring, together with exhaustive checks of the structural
//! results that hold for them.
//!
//! Everything here is computed by brute force over the tables. Where a
//! structural result predicts a set, the prediction is compared against the
//! brute-force answer and a disagreement is reported as
//! [`Error::TheoremViolation`] rather than papered over.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ferrero::{is_planar, PlanarNearring, Provenance};
use crate::nearfield::Nearfield;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributiveSet {
    pub members: Vec<usize>,
}

impl DistributiveSet {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// More than just `0`.
    pub fn is_nontrivial(&self) -> bool {
        self.members.len() > 1
    }
}

/// `{0}` together with every zero multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroMultiplierIdeal {
    pub members: Vec<usize>,
}

impl ZeroMultiplierIdeal {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum IdealStatus {
    NotSubgroup { reason: String },
    NotNormal { conjugator: usize, element: usize },
    /// A normal subgroup satisfying neither ideal condition.
    Neither { right_witness: String, left_witness: String },
    RightOnly { left_witness: String },
    LeftOnly { right_witness: String },
    TwoSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GcCase {
    /// `D(N)` meets only zero-multiplier orbits: `GC(N)` is the zero multipliers.
    ZeroMultiplierOrbits,
    /// `D(N)` meets several orbits, one not of zero multipliers: `GC(N) = {0}`.
    SeveralOrbits,
    /// `D(N)` meets exactly one orbit `a Phi`, not of zero multipliers.
    SingleOrbit,
    /// `D(N) = {0}`: `GC(N) = N`.
    TrivialDistributor,
}

impl GcCase {
    pub fn tag(self) -> u8 {
        match self {
            GcCase::ZeroMultiplierOrbits => 1,
            GcCase::SeveralOrbits => 2,
            GcCase::SingleOrbit => 3,
            GcCase::TrivialDistributor => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcReport {
    pub gc: Vec<usize>,
    pub case: GcCase,
    /// For the single-orbit case, `(a Z(Phi)*, a Phi*)` with `a` the orbit's
    /// representative.
    pub bounds: Option<(Vec<usize>, Vec<usize>)>,
}

impl GcReport {
    pub fn case_tag(&self) -> u8 {
        self.case.tag()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectDecomposition {
    /// The non-zero-multiplier distributive element used.
    pub distributive_element: usize,
    /// `K`: zero multipliers and `0`.
    pub kernel: Vec<usize>,
    /// `F = d Phi*`, a subnearfield.
    pub subnearfield: Vec<usize>,
    /// `F` relabelled: index `j` stands for `subnearfield[j]`.
    pub field: Nearfield,
    /// `pairing[i][j] = kernel[i] + subnearfield[j]`.
    pub pairing: Vec<Vec<usize>>,
    /// `action[j][i]` is the kernel index of `kernel[i] phi_f` for the
    /// `j`-th nonzero element `f` of the subnearfield.
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemidirectOutcome {
    Split(Box<SemidirectDecomposition>),
    Absent { reason: String },
}

pub fn distributive_elements(nearring: &PlanarNearring) -> DistributiveSet {
    let n = nearring.order();
    let members = (0..n)
        .filter(|&d| {
            (0..n).all(|a| {
                let da = nearring.mul(d, a);
                (0..n).all(|b| nearring.mul(d, nearring.add(a, b)) == nearring.add(da, nearring.mul(d, b)))
            })
        })
        .collect();
    DistributiveSet { members }
}

pub fn zero_multipliers(nearring: &PlanarNearring) -> ZeroMultiplierIdeal {
    let n = nearring.order();
    let members = (0..n).filter(|&x| x == 0 || nearring.is_zero_multiplier(x)).collect();
    ZeroMultiplierIdeal { members }
}

/// Classifies `set` against the subgroup, normality, right-ideal
/// (`i * n` in `I`) and left-ideal (`n * m - n * (m + i)` in `I`, plus
/// multiplicative closure) conditions.
pub fn is_ideal(nearring: &PlanarNearring, set: &[usize]) -> IdealStatus {
    let group = nearring.group();
    let n = nearring.order();
    let mut s: Vec<usize> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(reason) = group.subgroup_violation(&s) {
        return IdealStatus::NotSubgroup { reason };
    }
    if let Some((conjugator, element)) = group.normality_violation(&s) {
        return IdealStatus::NotNormal { conjugator, element };
    }
    let member = |x: usize| s.binary_search(&x).is_ok();

    let right_witness = s.iter().find_map(|&i| {
        (0..n).find(|&m| !member(nearring.mul(i, m))).map(|m| format!("{i} * {m} = {}", nearring.mul(i, m)))
    });
    let closure_witness = s.iter().find_map(|&i| {
        s.iter().find(|&&j| !member(nearring.mul(i, j))).map(|&j| format!("{i} * {j} = {}", nearring.mul(i, j)))
    });
    let left_witness = closure_witness.or_else(|| {
        (0..n).find_map(|a| {
            (0..n).find_map(|m| {
                s.iter().find_map(|&i| {
                    let v = group.sub(nearring.mul(a, m), nearring.mul(a, nearring.add(m, i)));
                    (!member(v)).then(|| format!("{a} * {m} - {a} * ({m} + {i}) = {v}"))
                })
            })
        })
    });
    match (right_witness, left_witness) {
        (None, None) => IdealStatus::TwoSided,
        (None, Some(left_witness)) => IdealStatus::RightOnly { left_witness },
        (Some(right_witness), None) => IdealStatus::LeftOnly { right_witness },
        (Some(right_witness), Some(left_witness)) => IdealStatus::Neither { right_witness, left_witness },
    }
}

fn orbit_star(prov: &Provenance, x: usize) -> Vec<usize> {
    let pair = prov.pair();
    let mut members = vec![0];
    members.extend(&pair.orbits()[pair.orbit_of(x)].members);
    members.sort_unstable();
    members
}

/// Brute-force `GC(N)` together with the case predicted by which orbits
/// `D(N)` meets. `D(N) = {0}` takes priority over the zero-multiplier case.
pub fn generalized_centre(nearring: &PlanarNearring) -> Result<GcReport> {
    let n = nearring.order();
    let dist = distributive_elements(nearring);
    let gc: Vec<usize> = (0..n)
        .filter(|&x| dist.members.iter().all(|&d| nearring.mul(x, d) == nearring.mul(d, x)))
        .collect();
    let violation = |case: GcCase, expected: &str| {
        Err(Error::TheoremViolation(format!(
            "generalized centre {gc:?} disagrees with case {}: expected {expected}",
            case.tag()
        )))
    };

    if !dist.is_nontrivial() {
        let case = GcCase::TrivialDistributor;
        if gc.len() != n {
            return violation(case, "all of N");
        }
        return Ok(GcReport { gc, case, bounds: None });
    }

    let prov = nearring.require_provenance()?;
    let pair = prov.pair();
    let hit: BTreeSet<usize> = dist.members[1..].iter().map(|&d| pair.orbit_of(d)).collect();
    let any_live = hit.iter().any(|&o| !prov.is_zero_multiplier_orbit(o));

    if !any_live {
        let case = GcCase::ZeroMultiplierOrbits;
        let zm = zero_multipliers(nearring).members;
        if gc != zm {
            return violation(case, &format!("{zm:?}"));
        }
        return Ok(GcReport { gc, case, bounds: None });
    }
    if hit.len() >= 2 {
        let case = GcCase::SeveralOrbits;
        if gc != [0] {
            return violation(case, "[0]");
        }
        return Ok(GcReport { gc, case, bounds: None });
    }

    let case = GcCase::SingleOrbit;
    let orbit = *hit.iter().next().expect("one orbit");
    let a = prov.rep_of(pair.orbits()[orbit].members[0]).expect("nonzero");
    let phi = prov.phi();
    let mut lower: Vec<usize> = std::iter::once(0).chain(phi.centre_indices().into_iter().map(|z| phi.apply(z, a))).collect();
    lower.sort_unstable();
    lower.dedup();
    let upper = orbit_star(prov, a);
    let contains = |big: &[usize], small: &[usize]| small.iter().all(|x| big.binary_search(x).is_ok());
    if !contains(&gc, &lower) || !contains(&upper, &gc) {
        return violation(case, &format!("{lower:?} <= GC <= {upper:?}"));
    }
    if nearring.group().is_abelian() {
        if gc != upper {
            return violation(case, &format!("exactly {upper:?} (abelian addition)"));
        }
    } else if gc != upper || dist.members != upper {
        return violation(case, &format!("GC = D = {upper:?} (non-abelian addition)"));
    }
    Ok(GcReport { gc, case, bounds: Some((lower, upper)) })
}

/// Restricts `op` to `members` (sorted, containing 0) and validates the
/// result as a nearfield.
fn induced_nearfield(
    nearring: &PlanarNearring,
    members: &[usize],
    op: impl Fn(usize, usize) -> usize,
) -> Result<Nearfield> {
    let index = |x: usize| members.binary_search(&x).ok();
    let mut add = Vec::with_capacity(members.len());
    let mut mul = Vec::with_capacity(members.len());
    for &x in members {
        let mut add_row = Vec::with_capacity(members.len());
        let mut mul_row = Vec::with_capacity(members.len());
        for &y in members {
            let s = nearring.add(x, y);
            let p = op(x, y);
            add_row.push(index(s).ok_or_else(|| Error::InvalidNearfield(format!("{x} + {y} = {s} leaves the set")))?);
            mul_row.push(index(p).ok_or_else(|| Error::InvalidNearfield(format!("{x} * {y} = {p} leaves the set")))?);
        }
        add.push(add_row);
        mul.push(mul_row);
    }
    let group = crate::group::FiniteGroup::from_table("F", add).map_err(|e| Error::InvalidNearfield(e.to_string()))?;
    Nearfield::from_tables("F", group, mul)
}

/// Splits `N` as `K x| F` when `D(N)` has a non-zero-multiplier element,
/// and verifies that multiplication follows
/// `(k1 + f1) * (k2 + f2) = 0` if `f2 = 0`, else `k1 phi_f2 + f1 phi_f2`.
pub fn semidirect_decomposition(nearring: &PlanarNearring) -> Result<SemidirectOutcome> {
    let dist = distributive_elements(nearring);
    let Some(d) = dist.members.iter().copied().find(|&d| d != 0 && !nearring.is_zero_multiplier(d)) else {
        let reason = if dist.is_nontrivial() {
            "every distributive element is a zero multiplier"
        } else {
            "D(N) = {0}"
        };
        return Ok(SemidirectOutcome::Absent { reason: reason.into() });
    };
    let prov = nearring.require_provenance()?;
    let phi = prov.phi();
    let kernel = zero_multipliers(nearring).members;
    let subnearfield = orbit_star(prov, d);
    let field = induced_nearfield(nearring, &subnearfield, |x, y| nearring.mul(x, y))
        .map_err(|e| Error::TheoremViolation(format!("orbit of {d} is not a subnearfield: {e}")))?;

    let group = nearring.group();
    if let Some(reason) = group.subgroup_violation(&kernel) {
        return Err(Error::TheoremViolation(format!("zero multipliers are not a subgroup: {reason}")));
    }
    let n = nearring.order();
    let mut seen = vec![false; n];
    let pairing: Vec<Vec<usize>> = kernel
        .iter()
        .map(|&k| subnearfield.iter().map(|&f| group.add(k, f)).collect::<Vec<_>>())
        .collect();
    for &x in pairing.iter().flatten() {
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::TheoremViolation(format!("{x} is a sum k + f in two ways")));
        }
    }
    if kernel.len() * subnearfield.len() != n {
        return Err(Error::TheoremViolation("K + F does not cover N".into()));
    }

    let phi_of = |f: usize| prov.factor(f).expect("nonzero").1;
    for (i1, &k1) in kernel.iter().enumerate() {
        for (j1, &f1) in subnearfield.iter().enumerate() {
            let left = pairing[i1][j1];
            for (i2, _) in kernel.iter().enumerate() {
                for (j2, &f2) in subnearfield.iter().enumerate() {
                    let right = pairing[i2][j2];
                    let expected = if f2 == 0 {
                        0
                    } else {
                        let k = phi_of(f2);
                        group.add(phi.apply(k, k1), phi.apply(k, f1))
                    };
                    if nearring.mul(left, right) != expected {
                        return Err(Error::TheoremViolation(format!(
                            "({k1} + {f1}) * ({} + {f2}) = {}, formula gives {expected}",
                            kernel[i2],
                            nearring.mul(left, right)
                        )));
                    }
                }
            }
        }
    }
    let action = subnearfield[1..]
        .iter()
        .map(|&f| {
            let k = phi_of(f);
            kernel
                .iter()
                .map(|&x| {
                    kernel.binary_search(&phi.apply(k, x)).map_err(|_| {
                        Error::TheoremViolation(format!("Phi does not preserve K at {x}"))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SemidirectOutcome::Split(Box::new(SemidirectDecomposition {
        distributive_element: d,
        kernel,
        subnearfield,
        field,
        pairing,
        action,
    })))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaId {
    /// `d` distributive implies `d Phi*` is additively closed.
    AdditiveClosure,
    /// `{phi : r_d phi in D(N)}` is a subgroup of `Phi` containing `Z(Phi)`.
    StabilizerSubgroup,
    /// `d Phi*` is a planar nearfield for non-zero-multiplier distributive `d`.
    OrbitNearfield,
    /// `(d Phi*, +, o)` with `d phi1 o d phi2 = d (phi1 phi2)` is a nearfield
    /// for zero-multiplier distributive `d`.
    ZeroMultiplierOrbitNearfield,
    /// `phi_{m+a} = phi_a` for zero multipliers `m` and other `a`.
    EquivalentMultipliers,
    /// The zero multipliers form a two-sided ideal.
    ZeroMultiplierIdeal,
    /// `N = K x| F` with the split multiplication formula.
    SemidirectSplit,
    /// At most one primary summand of `(N, +)` carries nonzero products.
    PrimaryDecomposition,
    /// Brute-force `GC(N)` agrees with the four-case prediction.
    GeneralizedCentre,
}

impl LemmaId {
    pub const ALL: [LemmaId; 9] = [
        LemmaId::AdditiveClosure,
        LemmaId::StabilizerSubgroup,
        LemmaId::OrbitNearfield,
        LemmaId::ZeroMultiplierOrbitNearfield,
        LemmaId::EquivalentMultipliers,
        LemmaId::ZeroMultiplierIdeal,
        LemmaId::SemidirectSplit,
        LemmaId::PrimaryDecomposition,
        LemmaId::GeneralizedCentre,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LemmaId::AdditiveClosure => "a",
            LemmaId::StabilizerSubgroup => "b",
            LemmaId::OrbitNearfield => "c",
            LemmaId::ZeroMultiplierOrbitNearfield => "c'",
            LemmaId::EquivalentMultipliers => "d",
            LemmaId::ZeroMultiplierIdeal => "e",
            LemmaId::SemidirectSplit => "s",
            LemmaId::PrimaryDecomposition => "f",
            LemmaId::GeneralizedCentre => "g",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            LemmaId::AdditiveClosure => "distributive orbits are additively closed",
            LemmaId::StabilizerSubgroup => "{phi : r_d phi in D(N)} is a subgroup containing Z(Phi)",
            LemmaId::OrbitNearfield => "non-zero-multiplier distributive orbits are planar nearfields",
            LemmaId::ZeroMultiplierOrbitNearfield => "zero-multiplier distributive orbits carry a nearfield",
            LemmaId::EquivalentMultipliers => "phi_(m+a) = phi_(a+m) = phi_a",
            LemmaId::ZeroMultiplierIdeal => "zero multipliers form a two-sided ideal",
            LemmaId::SemidirectSplit => "N is K x| F with the split multiplication",
            LemmaId::PrimaryDecomposition => "at most one primary summand has nonzero products",
            LemmaId::GeneralizedCentre => "generalized centre matches its case",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum LemmaStatus {
    Pass { detail: String },
    Fail { witness: String },
    NotApplicable { reason: String },
}

impl LemmaStatus {
    pub fn is_pass(&self) -> bool {
        matches!(self, LemmaStatus::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, LemmaStatus::Fail { .. })
    }

    pub fn is_not_applicable(&self) -> bool {
        matches!(self, LemmaStatus::NotApplicable { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaItem {
    pub id: LemmaId,
    pub status: LemmaStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub items: Vec<LemmaItem>,
}

impl LemmaReport {
    pub fn status(&self, id: LemmaId) -> &LemmaStatus {
        &self.items.iter().find(|i| i.id == id).expect("every lemma is reported").status
    }

    pub fn has_failures(&self) -> bool {
        self.items.iter().any(|i| i.status.is_fail())
    }

    pub fn failures(&self) -> Vec<&LemmaItem> {
        self.items.iter().filter(|i| i.status.is_fail()).collect()
    }
}

struct Context<'a> {
    nearring: &'a PlanarNearring,
    prov: &'a Provenance,
    dist: DistributiveSet,
    zm: ZeroMultiplierIdeal,
    live_dist: Vec<usize>,
}

fn pass(detail: impl Into<String>) -> LemmaStatus {
    LemmaStatus::Pass { detail: detail.into() }
}

fn fail(witness: impl Into<String>) -> LemmaStatus {
    LemmaStatus::Fail { witness: witness.into() }
}

fn not_applicable(reason: impl Into<String>) -> LemmaStatus {
    LemmaStatus::NotApplicable { reason: reason.into() }
}

const NO_LIVE: &str = "no distributive element outside the zero multipliers";
const TRIVIAL_D: &str = "D(N) = {0}";

/// One representative per orbit among the given elements.
fn per_orbit(prov: &Provenance, elements: &[usize]) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    elements.iter().copied().filter(|&x| seen.insert(prov.pair().orbit_of(x))).collect()
}

fn check_additive_closure(cx: &Context) -> LemmaStatus {
    for &d in cx.dist.members.iter().filter(|&&d| d != 0) {
        let star = orbit_star(cx.prov, d);
        for &x in &star {
            for &y in &star {
                let s = cx.nearring.add(x, y);
                if star.binary_search(&s).is_err() {
                    return fail(format!("d = {d}: {x} + {y} = {s} is outside {star:?}"));
                }
            }
        }
    }
    if cx.dist.is_nontrivial() {
        pass(format!("{} distributive orbit(s) closed", per_orbit(cx.prov, &cx.dist.members[1..]).len()))
    } else {
        pass("only d = 0")
    }
}

fn check_stabilizer(cx: &Context) -> LemmaStatus {
    if cx.live_dist.is_empty() {
        return not_applicable(NO_LIVE);
    }
    let phi = cx.prov.phi();
    let centre = phi.centre_indices();
    for &d in &cx.live_dist {
        let r = cx.prov.rep_of(d).expect("nonzero");
        let stab: Vec<usize> = (0..phi.order()).filter(|&k| cx.dist.contains(phi.apply(k, r))).collect();
        let member = |k: usize| stab.binary_search(&k).is_ok();
        if !member(phi.identity_index()) {
            return fail(format!("d = {d}: r_d = {r} is not distributive"));
        }
        for &a in &stab {
            if !member(phi.inverse(a)) {
                return fail(format!("d = {d}: inverse of automorphism #{a} missing"));
            }
            if let Some(&b) = stab.iter().find(|&&b| !member(phi.compose(a, b))) {
                return fail(format!("d = {d}: automorphisms #{a} and #{b} compose outside the set"));
            }
        }
        if let Some(z) = centre.iter().find(|&&z| !member(z)) {
            return fail(format!("d = {d}: central automorphism #{z} sends r_d to {}", phi.apply(*z, r)));
        }
    }
    pass(format!("|Z(Phi)| = {}", centre.len()))
}

fn check_orbit_nearfield(cx: &Context) -> LemmaStatus {
    if cx.live_dist.is_empty() {
        return not_applicable(NO_LIVE);
    }
    for d in per_orbit(cx.prov, &cx.live_dist) {
        let star = orbit_star(cx.prov, d);
        let field = match induced_nearfield(cx.nearring, &star, |x, y| cx.nearring.mul(x, y)) {
            Ok(f) => f,
            Err(e) => return fail(format!("d = {d}: {e}")),
        };
        let sub = PlanarNearring::from_nearfield(&field);
        match is_planar(&sub, true) {
            Ok(p) if p.is_planar() => {}
            other => return fail(format!("d = {d}: orbit nearfield is not planar ({other:?})")),
        }
    }
    pass("orbit nearfield(s) verified")
}

fn check_zero_multiplier_orbit_nearfield(cx: &Context) -> LemmaStatus {
    let dead: Vec<usize> = cx.dist.members.iter().copied().filter(|&d| d != 0 && cx.zm.contains(d)).collect();
    if dead.is_empty() {
        return not_applicable("no nonzero zero-multiplier distributive element");
    }
    let phi = cx.prov.phi();
    for d in per_orbit(cx.prov, &dead) {
        let star = orbit_star(cx.prov, d);
        // Position of each orbit element relative to the base point d.
        let mut rel = vec![usize::MAX; cx.nearring.order()];
        for k in 0..phi.order() {
            rel[phi.apply(k, d)] = k;
        }
        let circ = |x: usize, y: usize| if x == 0 || y == 0 { 0 } else { phi.apply(rel[y], x) };
        if let Err(e) = induced_nearfield(cx.nearring, &star, circ) {
            return fail(format!("d = {d}: {e}"));
        }
    }
    pass("zero-multiplier orbit nearfield(s) verified")
}

fn check_equivalent_multipliers(cx: &Context) -> LemmaStatus {
    if !cx.dist.is_nontrivial() {
        return not_applicable(TRIVIAL_D);
    }
    let n = cx.nearring.order();
    for &m in &cx.zm.members {
        for a in (1..n).filter(|&a| !cx.zm.contains(a)) {
            let phi_a = cx.prov.factor(a).expect("nonzero").1;
            for s in [cx.nearring.add(m, a), cx.nearring.add(a, m)] {
                match cx.prov.factor(s) {
                    Some((_, k)) if k == phi_a => {}
                    _ => return fail(format!("m = {m}, a = {a}: phi of {s} differs from phi_a")),
                }
            }
        }
    }
    pass(format!("{} zero multiplier(s) checked", cx.zm.members.len() - 1))
}

fn check_zero_multiplier_ideal(cx: &Context) -> LemmaStatus {
    if !cx.dist.is_nontrivial() {
        return not_applicable(TRIVIAL_D);
    }
    match is_ideal(cx.nearring, &cx.zm.members) {
        IdealStatus::TwoSided => pass(format!("{:?} is a two-sided ideal", cx.zm.members)),
        other => fail(format!("{:?}: {other:?}", cx.zm.members)),
    }
}

fn check_semidirect(cx: &Context) -> LemmaStatus {
    if cx.live_dist.is_empty() {
        return not_applicable(NO_LIVE);
    }
    match semidirect_decomposition(cx.nearring) {
        Ok(SemidirectOutcome::Split(s)) => {
            pass(format!("|K| = {}, |F| = {}", s.kernel.len(), s.subnearfield.len()))
        }
        Ok(SemidirectOutcome::Absent { reason }) => fail(format!("no decomposition: {reason}")),
        Err(e) => fail(e.to_string()),
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

fn check_primary_decomposition(cx: &Context) -> LemmaStatus {
    if !cx.dist.is_nontrivial() {
        return not_applicable(TRIVIAL_D);
    }
    if cx.live_dist.is_empty() {
        return not_applicable(NO_LIVE);
    }
    let nr = cx.nearring;
    let group = nr.group();
    let n = nr.order();
    let primes = prime_factors(n);
    let is_power_of = |mut k: usize, p: usize| {
        while k.is_multiple_of(p) {
            k /= p;
        }
        k == 1
    };
    let parts: Vec<Vec<usize>> = primes
        .iter()
        .map(|&p| (0..n).filter(|&x| is_power_of(group.element_order(x), p)).collect())
        .collect();
    for (part, p) in parts.iter().zip(&primes) {
        if let Some(reason) = group.subgroup_violation(part) {
            return fail(format!("{p}-primary part is not a subgroup: {reason}"));
        }
    }
    if parts.iter().map(|p| p.len()).product::<usize>() != n {
        return fail("primary parts do not multiply to |N|");
    }
    for i in 0..parts.len() {
        for j in 0..i {
            for &x in &parts[i] {
                if let Some(&y) = parts[j].iter().find(|&&y| group.add(x, y) != group.add(y, x)) {
                    return fail(format!("{x} and {y} from different primary parts do not commute"));
                }
            }
        }
    }
    let busy: Vec<usize> = parts
        .iter()
        .zip(&primes)
        .filter(|(part, _)| part.iter().any(|&x| part.iter().any(|&y| nr.mul(x, y) != 0)))
        .map(|(_, &p)| p)
        .collect();
    if busy.len() > 1 {
        return fail(format!("primary parts for primes {busy:?} all carry nonzero products"));
    }
    pass(format!("primes {primes:?}, nonzero products only in {busy:?}"))
}

fn check_generalized_centre(cx: &Context) -> LemmaStatus {
    match generalized_centre(cx.nearring) {
        Ok(r) => pass(format!("case {}, GC = {:?}", r.case_tag(), r.gc)),
        Err(e) => fail(e.to_string()),
    }
}

/// Runs every structural check against `nearring`. Requires Ferrero data.
pub fn verify_lemma_suite(nearring: &PlanarNearring) -> Result<LemmaReport> {
    let prov = nearring.require_provenance()?;
    let dist = distributive_elements(nearring);
    let zm = zero_multipliers(nearring);
    let live_dist = dist.members.iter().copied().filter(|&d| d != 0 && !zm.contains(d)).collect();
    let cx = Context { nearring, prov, dist, zm, live_dist };
    let items = LemmaId::ALL
        .iter()
        .map(|&id| {
            let status = match id {
                LemmaId::AdditiveClosure => check_additive_closure(&cx),
                LemmaId::StabilizerSubgroup => check_stabilizer(&cx),
                LemmaId::OrbitNearfield => check_orbit_nearfield(&cx),
                LemmaId::ZeroMultiplierOrbitNearfield => check_zero_multiplier_orbit_nearfield(&cx),
                LemmaId::EquivalentMultipliers => check_equivalent_multipliers(&cx),
                LemmaId::ZeroMultiplierIdeal => check_zero_multiplier_ideal(&cx),
                LemmaId::SemidirectSplit => check_semidirect(&cx),
                LemmaId::PrimaryDecomposition => check_primary_decomposition(&cx),
                LemmaId::GeneralizedCentre => check_generalized_centre(&cx),
            };
            LemmaItem { id, status }
        })
        .collect();
    Ok(LemmaReport { items })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::nearfield::make_field;

    #[test]
    fn z9_sets() {
        let n = examples::z9_example();
        assert_eq!(distributive_elements(&n).members, vec![0, 3, 6]);
        assert_eq!(zero_multipliers(&n).members, vec![0, 3, 6]);
        assert_eq!(is_ideal(&n, &[0, 3, 6]), IdealStatus::TwoSided);
        assert!(matches!(is_ideal(&n, &[0, 1]), IdealStatus::NotSubgroup { .. }));
    }

    #[test]
    fn order_fifteen_sets() {
        let n = examples::order_fifteen_example();
        // (x, y) has index 5x + y.
        assert_eq!(distributive_elements(&n).members, vec![0, 5, 10]);
        assert_eq!(zero_multipliers(&n).members, vec![0, 1, 2, 3, 4]);
        assert_eq!(is_ideal(&n, &[0, 1, 2, 3, 4]), IdealStatus::TwoSided);
    }

    #[test]
    fn fields_are_fully_distributive() {
        for q in [3, 4, 5, 7, 8, 9] {
            let n = PlanarNearring::from_nearfield(&make_field(q).unwrap());
            assert_eq!(distributive_elements(&n).members.len(), q);
            assert_eq!(zero_multipliers(&n).members, vec![0]);
            let gc = generalized_centre(&n).unwrap();
            assert_eq!(gc.gc.len(), q);
            assert_eq!(gc.case, GcCase::SingleOrbit);
        }
    }

    #[test]
    fn generalized_centre_cases() {
        let z9 = generalized_centre(&examples::z9_example()).unwrap();
        assert_eq!((z9.gc.clone(), z9.case_tag()), (vec![0, 3, 6], 1));
        let o15 = generalized_centre(&examples::order_fifteen_example()).unwrap();
        assert_eq!(o15.case_tag(), 3);
        assert_eq!(o15.gc, vec![0, 5, 10]);
        let (lower, upper) = o15.bounds.unwrap();
        assert_eq!(upper, vec![0, 5, 10]);
        assert!(lower.iter().all(|x| upper.contains(x)));
        let ring = generalized_centre(&examples::planar_ring_9()).unwrap();
        assert_eq!((ring.gc.clone(), ring.case_tag()), (vec![0], 2));
    }

    #[test]
    fn trivial_distributor_is_case_four() {
        // C5 with Phi = {1, -1} and no zero multipliers: two live orbits, D(N) = {0}.
        let g = crate::group::FiniteGroup::cyclic(5);
        let neg = crate::group::Automorphism::negation(&g);
        let n = examples::ferrero_nearring(g, &[neg], &[1, 2], &[]).unwrap();
        assert_eq!(distributive_elements(&n).members, vec![0]);
        let r = generalized_centre(&n).unwrap();
        assert_eq!((r.gc.len(), r.case_tag()), (5, 4));
    }

    #[test]
    fn semidirect_for_order_fifteen() {
        let SemidirectOutcome::Split(s) = semidirect_decomposition(&examples::order_fifteen_example()).unwrap() else {
            panic!("expected a split");
        };
        assert_eq!(s.kernel, vec![0, 1, 2, 3, 4]);
        assert_eq!(s.subnearfield, vec![0, 5, 10]);
        assert!(s.field.is_field());
        assert_eq!(s.field.order(), 3);
        assert_eq!(s.action.len(), 2);
    }

    #[test]
    fn semidirect_absent_for_z9() {
        assert!(matches!(
            semidirect_decomposition(&examples::z9_example()).unwrap(),
            SemidirectOutcome::Absent { .. }
        ));
    }

    #[test]
    fn semidirect_for_nearfields_is_trivial() {
        let n = PlanarNearring::from_nearfield(&crate::nearfield::make_dickson_nearfield_9());
        let SemidirectOutcome::Split(s) = semidirect_decomposition(&n).unwrap() else { panic!() };
        assert_eq!(s.kernel, vec![0]);
        assert_eq!(s.subnearfield.len(), 9);
    }

    #[test]
    fn lemma_suite_on_z9() {
        let r = verify_lemma_suite(&examples::z9_example()).unwrap();
        assert!(!r.has_failures(), "{r:?}");
        for id in [LemmaId::AdditiveClosure, LemmaId::EquivalentMultipliers, LemmaId::ZeroMultiplierIdeal] {
            assert!(r.status(id).is_pass(), "{id:?}");
        }
        for id in [LemmaId::StabilizerSubgroup, LemmaId::OrbitNearfield, LemmaId::PrimaryDecomposition] {
            assert!(r.status(id).is_not_applicable(), "{id:?}");
        }
        assert!(r.status(LemmaId::ZeroMultiplierOrbitNearfield).is_pass());
        assert!(r.status(LemmaId::GeneralizedCentre).is_pass());
    }

    #[test]
    fn lemma_suite_on_order_fifteen() {
        let r = verify_lemma_suite(&examples::order_fifteen_example()).unwrap();
        for item in &r.items {
            if item.id == LemmaId::ZeroMultiplierOrbitNearfield {
                continue;
            }
            assert!(item.status.is_pass(), "{:?}: {:?}", item.id, item.status);
        }
    }

    #[test]
    fn lemma_suite_on_field() {
        let r = verify_lemma_suite(&PlanarNearring::from_nearfield(&make_field(5).unwrap())).unwrap();
        assert!(!r.has_failures());
        assert!(r.items.iter().filter(|i| !i.status.is_not_applicable()).all(|i| i.status.is_pass()));
    }
}
