//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nearring_core::analysis::{
    distributive_elements, generalized_centre, is_ideal, verify_lemma_suite, zero_multipliers, GcCase, IdealStatus,
};
use nearring_core::design::{block_design, orbits_additively_closed, Balance, BlockDesign, ClosureReport};
use nearring_core::enumeration::{build_manifest, enumerate_planar_nearrings, nearrings_isomorphic, zp2_family, Filter, IsoClass};
use nearring_core::examples::{order_fifteen_example, z9_example};
use nearring_core::ferrero::PlanarNearring;
use nearring_core::group::FiniteGroup;
use nearring_core::nearfield::{kern, make_dickson_nearfield_9, make_field};
use nearring_core::nearvector::{derived_planar_nearring, make_nearvector_space, quasi_kernel, TwistSpec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool").install(f)
}

/// `F3 x F3` with `(a, b) * (c, d) = (ac, bc)`, built straight from the formula.
fn planar_ring_reference() -> PlanarNearring {
    let f3 = FiniteGroup::cyclic(3);
    let g = FiniteGroup::direct_product(&f3, &f3);
    let mul = (0..9)
        .map(|x: usize| (0..9).map(|y: usize| 3 * ((x / 3) * (y / 3) % 3) + (x % 3) * (y / 3) % 3).collect())
        .collect();
    PlanarNearring::from_tables(g, mul).expect("planar ring tables")
}

struct Reference {
    label: String,
    nearring: PlanarNearring,
    phi_order: usize,
}

fn references() -> Vec<Reference> {
    let mut out: Vec<Reference> = [3, 4, 5, 7, 8, 9, 11, 13]
        .iter()
        .map(|&q| Reference {
            label: format!("field of order {q}"),
            nearring: PlanarNearring::from_nearfield(&make_field(q).unwrap()),
            phi_order: q - 1,
        })
        .collect();
    out.push(Reference {
        label: "proper nearfield of order 9".into(),
        nearring: PlanarNearring::from_nearfield(&make_dickson_nearfield_9()),
        phi_order: 8,
    });
    out.push(Reference { label: "planar ring of order 9".into(), nearring: planar_ring_reference(), phi_order: 2 });
    out.push(Reference { label: "Z9 example".into(), nearring: z9_example(), phi_order: 2 });
    out.push(Reference { label: "order-15 example".into(), nearring: order_fifteen_example(), phi_order: 2 });
    out
}

fn describe(c: &IsoClass) -> String {
    format!(
        "{} |Phi|={} |D|={} reps={:?}",
        c.canonical.group().name(),
        c.phi_order(),
        c.fingerprint.distributive,
        c.canonical.provenance().map(|p| p.choice().reps().to_vec())
    )
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let classes = single_threaded(|| enumerate_planar_nearrings(15, Filter::NontrivialDistributive)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let refs = references();
    let mut used = vec![false; refs.len()];
    let mut unmatched = Vec::new();
    for c in &classes {
        let hit = refs.iter().enumerate().find(|(i, r)| {
            !used[*i]
                && r.nearring.order() == c.order()
                && r.phi_order == c.phi_order()
                && distributive_elements(&r.nearring).members.len() == c.fingerprint.distributive
                && nearrings_isomorphic(&r.nearring, &c.canonical).is_some()
        });
        match hit {
            Some((i, _)) => used[i] = true,
            None => unmatched.push(describe(c)),
        }
    }
    let missing: Vec<&str> = refs.iter().zip(&used).filter(|(_, u)| !**u).map(|(r, _)| r.label.as_str()).collect();
    check(
        classes.len() == 12 && unmatched.is_empty() && missing.is_empty(),
        format!("{} classes; unmatched {unmatched:?}; missing {missing:?}", classes.len()),
    )?;
    check(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("12 classes, each isomorphic to its reference, {:.2}s single-threaded", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let z9 = z9_example();
    check(distributive_elements(&z9).members == [0, 3, 6], "Z9: D(N)")?;
    let gc = generalized_centre(&z9).map_err(|e| e.to_string())?;
    check(gc.gc == [0, 3, 6] && gc.case == GcCase::ZeroMultiplierOrbits, format!("Z9: GC {:?} case {}", gc.gc, gc.case_tag()))?;

    // Index 5x + y for (x, y) in Z3 x Z5.
    let o15 = order_fifteen_example();
    let d = distributive_elements(&o15).members;
    check(d == [0, 5, 10], format!("order 15: D(N) = {d:?}"))?;
    let zm = zero_multipliers(&o15).members;
    check(zm == [0, 1, 2, 3, 4], format!("order 15: zero multipliers {zm:?}"))?;
    check(is_ideal(&o15, &zm) == IdealStatus::TwoSided, "order 15: zero multipliers not a two-sided ideal")?;

    let k = kern(&make_dickson_nearfield_9()).members;
    check(k.len() == 3, format!("Dickson kern {k:?}"))?;
    Ok("Z9 D = GC = {0,3,6} case 1; order 15 D = C3x0, {0}xC5 two-sided ideal; |kern| = 3".into())
}

fn criterion_3() -> Outcome {
    let f5 = make_field(5).unwrap();
    let ex1 = make_nearvector_space(&f5, &[TwistSpec::Identity, TwistSpec::Power(3)]).map_err(|e| e.to_string())?;
    let axes: Vec<usize> = (0..25).filter(|v| v / 5 == 0 || v % 5 == 0).collect();
    let q1 = quasi_kernel(&ex1).members;
    let n1 = derived_planar_nearring(&ex1, 0, None).map_err(|e| e.to_string())?;
    let d1 = distributive_elements(&n1).members;
    let d1_expected: Vec<usize> = (0..5).map(|x| 5 * x).collect();

    let dickson = make_dickson_nearfield_9();
    let k = kern(&dickson).members;
    let ex2 = make_nearvector_space(&dickson, &[TwistSpec::Identity, TwistSpec::Identity]).map_err(|e| e.to_string())?;
    let kk: Vec<usize> = (0..81).filter(|v| k.contains(&(v / 9)) && k.contains(&(v % 9))).collect();
    let q2 = quasi_kernel(&ex2).members;
    let n2 = derived_planar_nearring(&ex2, 0, None).map_err(|e| e.to_string())?;
    let d2 = distributive_elements(&n2).members;

    let mut failures = Vec::new();
    if q1 != axes {
        failures.push(format!("example 1 Q(V) has {} elements, expected the 9 axis vectors", q1.len()));
    }
    if d1 != d1_expected {
        failures.push(format!("example 1 D(V) = {d1:?}"));
    }
    if q2 != kk {
        let extra: BTreeSet<usize> = q2.iter().copied().filter(|v| !kk.contains(v)).collect();
        failures.push(format!(
            "example 2 Q(V) has {} elements, expected K x K (9); e.g. {:?} is in Q(V) but not K x K",
            q2.len(),
            extra.iter().take(3).map(|v| (v / 9, v % 9)).collect::<Vec<_>>()
        ));
    }
    if d2 != kk {
        failures.push(format!("example 2 D(V) = {d2:?}"));
    }
    if failures.is_empty() {
        Ok("example 1 Q = axes, D = F x 0; example 2 Q = D = K x K".into())
    } else {
        Err(format!("{}; example 2 D(V) = K x K with {} elements", failures.join("; "), d2.len()))
    }
}

fn criterion_4() -> Outcome {
    let mut timings = Vec::new();
    for p in [3, 5, 7, 11] {
        let start = Instant::now();
        let n = zp2_family(p).map_err(|e| e.to_string())?;
        let d = distributive_elements(&n).members;
        let expected: Vec<usize> = (0..p).map(|k| k * p).collect();
        check(d == expected, format!("p = {p}: D(N) = {d:?}"))?;
        check(d.iter().skip(1).all(|&x| n.is_zero_multiplier(x)), format!("p = {p}: a distributive element multiplies"))?;
        let complements = n.group().complements(&expected);
        check(complements.is_empty(), format!("p = {p}: complement {:?}", complements.first()))?;
        let suite = verify_lemma_suite(&n).map_err(|e| e.to_string())?;
        check(!suite.has_failures(), format!("p = {p}: lemma failures {:?}", suite.failures()))?;
        let elapsed = start.elapsed();
        check(elapsed < Duration::from_secs(300), format!("p = {p}: took {elapsed:?}"))?;
        timings.push(format!("p={p} {:.2}s", elapsed.as_secs_f64()));
    }
    check(nearrings_isomorphic(&zp2_family(3).unwrap(), &z9_example()).is_some(), "p = 3 not isomorphic to the Z9 example")?;
    Ok(format!("D = pZ, all zero multipliers, no complements ({})", timings.join(", ")))
}

fn criterion_5() -> Outcome {
    let classes = enumerate_planar_nearrings(15, Filter::All).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    for c in &classes {
        match verify_lemma_suite(&c.canonical) {
            Ok(r) if !r.has_failures() => {}
            Ok(r) => failures.push(format!("{}: {:?}", describe(c), r.failures())),
            Err(e) => failures.push(format!("{}: {e}", describe(c))),
        }
    }
    check(failures.is_empty(), format!("{} failing classes: {:?}", failures.len(), failures.iter().take(3).collect::<Vec<_>>()))?;
    Ok(format!("{} classes, no lemma failures", classes.len()))
}

fn criterion_6() -> Outcome {
    match orbits_additively_closed(&nearring_core::examples::planar_ring_9()).map_err(|e| e.to_string())? {
        ClosureReport::VectorSpace(w) => check(
            w.field.order() == 3 && w.field.is_field() && w.dimension == 2 && w.phi_is_field_units,
            format!("planar ring witness {:?}", w.subfield),
        )?,
        other => return Err(format!("planar ring: {other:?}")),
    }
    match orbits_additively_closed(&z9_example()).map_err(|e| e.to_string())? {
        ClosureReport::NotClosed { orbit, witness } => {
            check(orbit == [0, 2, 7], format!("Z9 witness orbit {orbit:?} ({witness:?})"))?
        }
        other => return Err(format!("Z9: {other:?}")),
    }
    Ok("planar ring is a 2-dimensional space over F3; Z9 fails at {0,2,7}".into())
}

/// Recount pair coverage from the block list alone.
fn recount(design: &BlockDesign) -> Result<Option<usize>, String> {
    let v = design.v();
    let mut counts = BTreeSet::new();
    let mut total = 0;
    for x in 0..v {
        for y in x + 1..v {
            let c = design.blocks.iter().filter(|b| b.contains(&x) && b.contains(&y)).count();
            if c != design.pair_count(x, y) {
                return Err(format!("pair ({x},{y}): {c} vs {}", design.pair_count(x, y)));
            }
            counts.insert(c);
            total += c;
        }
    }
    let expected: usize = design.blocks.iter().map(|b| b.len() * (b.len() - 1) / 2).sum();
    if total != expected || design.total_pair_incidences() != expected {
        return Err(format!("pair total {total} vs block sum {expected}"));
    }
    Ok((counts.len() == 1).then(|| *counts.iter().next().unwrap()))
}

fn criterion_7() -> Outcome {
    let mut summary = Vec::new();
    for (label, n) in [("Z9", z9_example()), ("order 15", order_fifteen_example())] {
        let d = block_design(&n).map_err(|e| e.to_string())?;
        let independent = recount(&d).map_err(|e| format!("{label}: {e}"))?;
        check(independent == d.lambda(), format!("{label}: verdict {:?} vs recount {independent:?}", d.balance))?;
        let verdict = match d.balance {
            Balance::Balanced { lambda } => format!("lambda {lambda}"),
            Balance::Unbalanced { pair, count, .. } => format!("unbalanced at {pair:?} ({count})"),
        };
        summary.push(format!("{label}: v={} b={} {verdict}", d.v(), d.b()));
    }
    Ok(summary.join("; "))
}

fn criterion_8() -> Outcome {
    let run = || -> Result<String, String> {
        let classes = enumerate_planar_nearrings(15, Filter::All).map_err(|e| e.to_string())?;
        Ok(build_manifest(&classes, 15, Filter::All, true).map_err(|e| e.to_string())?.to_json())
    };
    let first = run()?;
    let second = run()?;
    check(first.as_bytes() == second.as_bytes(), "manifests differ")?;
    Ok(format!("two manifests identical ({} bytes)", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("enumeration reproduces the 12 classes", criterion_1),
        ("named example values", criterion_2),
        ("nearvector examples", criterion_3),
        ("Z_{p^2} family", criterion_4),
        ("lemma suite over all classes", criterion_5),
        ("additively closed orbits", criterion_6),
        ("block design pair counts", criterion_7),
        ("deterministic manifests", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
