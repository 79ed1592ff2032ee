use std::fmt::Write as _;

use nearring_core::analysis::{
    distributive_elements, generalized_centre, is_ideal, semidirect_decomposition, verify_lemma_suite, zero_multipliers,
    GcReport, IdealStatus, LemmaReport, LemmaStatus, SemidirectOutcome,
};
use nearring_core::ferrero::PlanarNearring;
use nearring_core::nearvector::{
    check_conjecture, derived_planar_nearring, quasi_kernel, regular_decomposition, ConjectureReport, NearvectorSpace,
};
use nearring_core::{Error, Result};
use serde::Serialize;

pub fn set(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn summary(n: &PlanarNearring) -> Result<String> {
    let d = distributive_elements(n).members;
    let gc = generalized_centre(n)?;
    let phi = n.phi().map_or(0, |p| p.order());
    Ok(format!(
        "order {}, |Phi| = {phi}, D(N) = {}, GC(N) = {} (case {})",
        n.order(),
        set(&d),
        set(&gc.gc),
        gc.case_tag()
    ))
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum SemidirectSummary {
    Split { distributive_element: usize, kernel: Vec<usize>, subnearfield: Vec<usize>, subnearfield_is_field: bool },
    Absent { reason: String },
    Violation { message: String },
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub order: usize,
    pub phi_order: Option<usize>,
    pub reps: Option<Vec<usize>>,
    pub zero_reps: Option<Vec<usize>>,
    pub distributive: Vec<usize>,
    pub zero_multipliers: Vec<usize>,
    pub zero_multiplier_ideal: IdealStatus,
    pub generalized_centre: Option<GcReport>,
    pub generalized_centre_violation: Option<String>,
    pub semidirect: SemidirectSummary,
    pub lemmas: LemmaReport,
}

pub fn analysis(n: &PlanarNearring) -> Result<AnalysisReport> {
    let zm = zero_multipliers(n).members;
    let (gc, gc_violation) = match generalized_centre(n) {
        Ok(r) => (Some(r), None),
        Err(Error::TheoremViolation(m)) => (None, Some(m)),
        Err(e) => return Err(e),
    };
    let semidirect = match semidirect_decomposition(n) {
        Ok(SemidirectOutcome::Split(s)) => SemidirectSummary::Split {
            distributive_element: s.distributive_element,
            subnearfield_is_field: s.field.is_field(),
            kernel: s.kernel,
            subnearfield: s.subnearfield,
        },
        Ok(SemidirectOutcome::Absent { reason }) => SemidirectSummary::Absent { reason },
        Err(Error::TheoremViolation(message)) => SemidirectSummary::Violation { message },
        Err(e) => return Err(e),
    };
    let prov = n.provenance();
    Ok(AnalysisReport {
        name: n.name().to_string(),
        order: n.order(),
        phi_order: prov.map(|p| p.phi().order()),
        reps: prov.map(|p| p.choice().reps().to_vec()),
        zero_reps: prov.map(|p| p.choice().zero_reps().to_vec()),
        distributive: distributive_elements(n).members,
        zero_multiplier_ideal: is_ideal(n, &zm),
        zero_multipliers: zm,
        generalized_centre: gc,
        generalized_centre_violation: gc_violation,
        semidirect,
        lemmas: verify_lemma_suite(n)?,
    })
}

fn ideal_text(s: &IdealStatus) -> String {
    match s {
        IdealStatus::TwoSided => "two-sided ideal".into(),
        IdealStatus::RightOnly { left_witness } => format!("right ideal only (left fails: {left_witness})"),
        IdealStatus::LeftOnly { right_witness } => format!("left ideal only (right fails: {right_witness})"),
        IdealStatus::Neither { right_witness, .. } => format!("normal subgroup, not an ideal ({right_witness})"),
        IdealStatus::NotNormal { conjugator, element } => format!("not normal ({conjugator} conjugates {element} out)"),
        IdealStatus::NotSubgroup { reason } => format!("not a subgroup ({reason})"),
    }
}

pub fn lemma_lines(r: &LemmaReport) -> String {
    let mut out = String::new();
    for item in &r.items {
        let (tag, detail) = match &item.status {
            LemmaStatus::Pass { detail } => ("pass", detail),
            LemmaStatus::Fail { witness } => ("FAIL", witness),
            LemmaStatus::NotApplicable { reason } => ("n/a", reason),
        };
        writeln!(out, "  ({:<2}) {tag:<4}  {}: {detail}", item.id.label(), item.id.description()).ok();
    }
    out
}

pub fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    writeln!(out, "nearring {} of order {}", r.name, r.order).ok();
    if let (Some(phi), Some(reps), Some(zero)) = (r.phi_order, &r.reps, &r.zero_reps) {
        writeln!(out, "|Phi| = {phi}, R = {}, M = {}", set(reps), set(zero)).ok();
    }
    writeln!(out, "D(N) = {}", set(&r.distributive)).ok();
    writeln!(out, "zero multipliers = {}", set(&r.zero_multipliers)).ok();
    writeln!(out, "zero multipliers: {}", ideal_text(&r.zero_multiplier_ideal)).ok();
    match (&r.generalized_centre, &r.generalized_centre_violation) {
        (Some(gc), _) => writeln!(out, "GC(N) = {} (case {})", set(&gc.gc), gc.case_tag()),
        (None, Some(m)) => writeln!(out, "GC(N): VIOLATION {m}"),
        (None, None) => Ok(()),
    }
    .ok();
    match &r.semidirect {
        SemidirectSummary::Split { distributive_element, kernel, subnearfield, subnearfield_is_field } => writeln!(
            out,
            "semidirect: N = K x| F via d = {distributive_element}, K = {} (order {}), F = {} (order {}, {})",
            set(kernel),
            kernel.len(),
            set(subnearfield),
            subnearfield.len(),
            if *subnearfield_is_field { "field" } else { "proper nearfield" }
        ),
        SemidirectSummary::Absent { reason } => writeln!(out, "semidirect: absent ({reason})"),
        SemidirectSummary::Violation { message } => writeln!(out, "semidirect: VIOLATION {message}"),
    }
    .ok();
    writeln!(out, "lemmas:").ok();
    out.push_str(&lemma_lines(&r.lemmas));
    out
}

#[derive(Serialize)]
pub struct NearvectorReport {
    pub field: String,
    pub dimension: usize,
    pub order: usize,
    pub twists: Vec<Vec<usize>>,
    pub quasi_kernel: Vec<Vec<usize>>,
    /// 1-based component indices.
    pub regular_blocks: Vec<Vec<usize>>,
    /// 1-based.
    pub coordinate: usize,
    pub distributive: Vec<Vec<usize>>,
    pub conjecture: ConjectureReport,
}

pub fn nearvector(
    space: &NearvectorSpace,
    coordinate: usize,
    zero_reps: Option<&[usize]>,
) -> Result<(NearvectorReport, PlanarNearring)> {
    let nearring = derived_planar_nearring(space, coordinate, zero_reps)?;
    let conjecture = check_conjecture(space, coordinate, zero_reps)?;
    let coords = |xs: &[usize]| xs.iter().map(|&v| space.coordinates(v)).collect::<Vec<_>>();
    let report = NearvectorReport {
        field: space.field().name().to_string(),
        dimension: space.dimension(),
        order: space.order(),
        twists: (0..space.dimension()).map(|i| space.twist(i).to_vec()).collect(),
        quasi_kernel: coords(&quasi_kernel(space).members),
        regular_blocks: regular_decomposition(space)
            .parts
            .iter()
            .map(|p| p.iter().map(|i| i + 1).collect())
            .collect(),
        coordinate: coordinate + 1,
        distributive: coords(&conjecture.distributive),
        conjecture,
    };
    Ok((report, nearring))
}

fn tuples(vs: &[Vec<usize>]) -> String {
    vs.iter()
        .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn nearvector_text(space: &NearvectorSpace, r: &NearvectorReport) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    writeln!(out, "nearvector space over {} of dimension {} ({} vectors)", r.field, r.dimension, r.order).ok();
    for (i, t) in r.twists.iter().enumerate() {
        writeln!(out, "twist {}: {}", i + 1, tuples(std::slice::from_ref(t))).ok();
    }
    writeln!(out, "Q(V) ({}): {}", r.quasi_kernel.len(), tuples(&r.quasi_kernel)).ok();
    let blocks: Vec<String> = r.regular_blocks.iter().map(|b| set(b)).collect();
    writeln!(out, "regular blocks: {}", blocks.join(" ")).ok();
    writeln!(out, "derived nearring on coordinate {}", r.coordinate).ok();
    writeln!(out, "D(V) ({}): {}", r.distributive.len(), tuples(&r.distributive)).ok();
    writeln!(out, "kern(F) = {}", set(&r.conjecture.kern)).ok();
    for b in &r.conjecture.blocks {
        let comps: Vec<usize> = b.components.iter().map(|i| i + 1).collect();
        let inter: Vec<Vec<usize>> = b.intersection.iter().map(|&v| space.coordinates(v)).collect();
        writeln!(
            out,
            "block {}: D meets it in {} vector(s); kern reading {}, twisted-kern reading {}",
            set(&comps),
            inter.len(),
            if b.matches_plain { "matches" } else { "differs" },
            if b.matches_twisted { "matches" } else { "differs" }
        )
        .ok();
    }
    writeln!(out, "D splits over blocks: {}", yes(r.conjecture.splits)).ok();
    out
}
