//! Named verification suites. Each returns one [`Check`] per assertion so
//! callers can report every outcome, not just the first failure.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::dold_thom::{dold_thom_space, filtration_inclusion, induced_map, DoldThomSpace};
use crate::error::{Error, SimplicialError};
use crate::homology::{compare_homology, simplicial_homology, HomologyResult};
use crate::monoid::{abc, cyclic, one_point, threshold_filtration, trivial, truncated_naturals, Coefficients, Element, PartialMonoid};
use crate::nerve::{classifying_space, nerve_to_circle_comparison};
use crate::simplicial::{
    collapse_map, compose_maps, identity_map, sphere, wedge, wedge_fold, wedge_inclusion, SimplicialMap, SimplicialSet, Subcomplex,
};

pub const SUITES: [&str; 5] = ["nerve-circle", "trivial-smash", "functoriality", "identities", "filtration"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>) -> Self {
        let (expected, computed) = (expected.into(), computed.into());
        let pass = expected == computed;
        Check { name: name.into(), expected, computed, pass }
    }

    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        Check::new(name, "true", pass.to_string())
    }
}

/// Fixture monoids with their display tags.
pub fn fixture_monoids() -> Vec<(&'static str, PartialMonoid)> {
    vec![
        ("point", one_point()),
        ("cyclic:2", cyclic(2).expect("fixture")),
        ("cyclic:3", cyclic(3).expect("fixture")),
        ("trivial:1", trivial(1).expect("fixture")),
        ("trivial:2", trivial(2).expect("fixture")),
        ("trivial:3", trivial(3).expect("fixture")),
        ("truncated:2", truncated_naturals(2).expect("fixture")),
        ("abc", abc()),
    ]
}

/// Fixture base spaces built to `depth`.
pub fn fixture_spaces(depth: usize) -> Vec<(&'static str, Arc<SimplicialSet>)> {
    let s1 = sphere(1, depth).expect("fixture");
    vec![
        ("sphere:1", Arc::new(s1.clone())),
        ("sphere:2", Arc::new(sphere(2, depth).expect("fixture"))),
        ("wedge:sphere:1*2", Arc::new(wedge(&s1, 2).expect("fixture"))),
    ]
}

pub fn run_suite(name: &str) -> Result<Vec<Check>, Error> {
    match name {
        "nerve-circle" => nerve_circle(4),
        "trivial-smash" => trivial_smash(4),
        "functoriality" => functoriality(3),
        "identities" => identities(4),
        "filtration" => filtration(4),
        other => Err(SimplicialError::InvalidParameter(format!("unknown suite `{other}`; expected one of {}", SUITES.join(", "))).into()),
    }
}

/// `BM` against `M[S¹]`: homology through `depth - 1`, and the canonical
/// alignment as a simplicial isomorphism.
pub fn nerve_circle(depth: usize) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    for (tag, m) in fixture_monoids() {
        let cmp = nerve_to_circle_comparison(&m, depth)?;
        let hb = simplicial_homology(cmp.nerve.space(), depth - 1, true)?;
        let hc = simplicial_homology(cmp.circle.space(), depth - 1, true)?;
        checks.push(Check::new(format!("{tag}: reduced homology of BM vs M[S1]"), hb.to_string(), hc.to_string()));
        checks.push(Check::flag(format!("{tag}: alignment is an isomorphism"), cmp.alignment.is_some()));
    }
    Ok(checks)
}

/// `wedge(X, q) -> M[X]` sending the `c`-th copy of `x` to the point `x`
/// labeled by the `c`-th nonzero element.
pub fn trivial_smash_map(base: &Arc<SimplicialSet>, wedged: &Arc<SimplicialSet>, space: &DoldThomSpace) -> Result<SimplicialMap, Error> {
    let m = space.coefficients().carrier();
    let nonzero: Vec<Element> = m.nonzero_elements().collect();
    let mut assignment: Vec<Vec<u32>> = (0..=base.depth()).map(|k| vec![space.space().basepoint(k); wedged.count(k)]).collect();
    for (c, &label) in nonzero.iter().enumerate() {
        let inc = wedge_inclusion(base, wedged, nonzero.len(), c + 1)?;
        for (k, row) in assignment.iter_mut().enumerate() {
            for x in (0..base.count(k) as u32).filter(|&x| x != base.basepoint(k)) {
                let target = space
                    .find_named(k, &[(base.name(k, x), m.name(label))])
                    .ok_or_else(|| SimplicialError::Internal(format!("no single-point configuration on {}", base.name(k, x))))?;
                row[inc.apply(k, x) as usize] = target;
            }
        }
    }
    Ok(SimplicialMap::new(wedged.clone(), space.space().clone(), assignment)?)
}

/// For trivial multiplication with `q` nonzero elements, `M[X]` is
/// `wedge(X, q)` and `H̃(M[X]) = H̃(X)^q`.
pub fn trivial_smash(depth: usize) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    for q in 1..=3 {
        let m: Coefficients = trivial(q)?.into();
        for (tag, x) in fixture_spaces(depth) {
            let space = dold_thom_space(&m, &x, None, depth)?;
            let w = Arc::new(wedge(&x, q)?);
            let iso = trivial_smash_map(&x, &w, &space)?;
            checks.push(Check::flag(format!("trivial:{q} on {tag}: wedge of {q} copies is isomorphic"), iso.is_isomorphism()));
            let hx = simplicial_homology(&x, depth - 1, true)?;
            let expected = HomologyResult { reduced: true, groups: hx.groups.iter().map(|g| g.power(q)).collect() };
            let computed = simplicial_homology(space.space(), depth - 1, true)?;
            checks.push(Check::new(format!("trivial:{q} on {tag}: reduced homology"), expected.to_string(), computed.to_string()));
        }
    }
    Ok(checks)
}

/// The fold of `wedge(S¹, 2)` sends `a` on copy 1 and `b` on the mirrored
/// simplex of copy 2 to `c`.
pub fn fold_fixture(depth: usize) -> Result<Check, Error> {
    let s1 = Arc::new(sphere(1, depth)?);
    let w = Arc::new(wedge(&s1, 2)?);
    let fold = wedge_fold(&s1, &w, 2)?;
    let m: Coefficients = abc().into();
    let source = dold_thom_space(&m, &w, None, depth)?;
    let target = dold_thom_space(&m, &s1, None, depth)?;
    let f = induced_map(&fold, &source, &target)?;
    let x = source
        .find_named(1, &[("[0,1]@1", "a"), ("[0,1]@2", "b")])
        .ok_or_else(|| SimplicialError::Internal("fold fixture configuration missing".into()))?;
    Ok(Check::new("fold: {[0,1]@1=a,[0,1]@2=b}", "{[0,1]=c}", target.space().name(1, f.apply(1, x))))
}

/// `M[id] = id` and `M[g ∘ f] = M[g] ∘ M[f]` on fixture maps.
pub fn functoriality(depth: usize) -> Result<Vec<Check>, Error> {
    let mut checks = vec![fold_fixture(depth)?];
    let s1 = Arc::new(sphere(1, depth)?);
    let w = Arc::new(wedge(&s1, 2)?);
    let fold = wedge_fold(&s1, &w, 2)?;
    let inc2 = wedge_inclusion(&s1, &w, 2, 2)?;
    let edge = Subcomplex::generated(&w, &[(1, inc2.apply(1, 1))]);
    let pinch = collapse_map(&w, &edge)?;
    for (tag, m) in [("cyclic:2", cyclic(2)?), ("abc", abc()), ("truncated:2", truncated_naturals(2)?)] {
        let m: Coefficients = m.into();
        let on_s1 = dold_thom_space(&m, &s1, None, depth)?;
        let on_w = dold_thom_space(&m, &w, None, depth)?;
        let on_pinched = dold_thom_space(&m, pinch.target(), None, depth)?;
        for (name, space) in [("S1", &on_s1), ("wedge", &on_w)] {
            let id = induced_map(&identity_map(space.base()), space, space)?;
            checks.push(Check::flag(format!("{tag}: M[id] = id on {name}"), id == identity_map(space.space())));
        }
        // fold ∘ inc2 = id_S1
        let composite = compose_maps(&inc2, &fold)?;
        let lhs = induced_map(&composite, &on_s1, &on_s1)?;
        let rhs = compose_maps(&induced_map(&inc2, &on_s1, &on_w)?, &induced_map(&fold, &on_w, &on_s1)?)?;
        checks.push(Check::flag(format!("{tag}: M[fold . inc] = M[fold] . M[inc]"), lhs == rhs));
        checks.push(Check::flag(format!("{tag}: M[fold . inc] = id"), lhs == identity_map(on_s1.space())));
        // pinch ∘ inc2 collapses everything
        let composite = compose_maps(&inc2, &pinch)?;
        let lhs = induced_map(&composite, &on_s1, &on_pinched)?;
        let rhs = compose_maps(&induced_map(&inc2, &on_s1, &on_w)?, &induced_map(&pinch, &on_w, &on_pinched)?)?;
        checks.push(Check::flag(format!("{tag}: M[pinch . inc] = M[pinch] . M[inc]"), lhs == rhs));
        let empty = (0..=depth).all(|k| lhs.assignment()[k].iter().all(|&c| on_pinched.configurations(k)[c as usize].support_size() == 0));
        checks.push(Check::flag(format!("{tag}: collapsed copy carries no labels"), empty));
    }
    Ok(checks)
}

fn identity_check(name: String, x: &SimplicialSet) -> Check {
    let violations = x.validate_identities();
    let computed = match violations.first() {
        None => "0 violations".to_string(),
        Some(v) => format!("{} violations, first: {v}", violations.len()),
    };
    Check::new(name, "0 violations", computed)
}

/// Simplicial identities on every nerve and Dold-Thom space of the fixtures.
pub fn identities(depth: usize) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    for (tag, m) in fixture_monoids() {
        checks.push(identity_check(format!("B({tag})"), classifying_space(&m, depth)?.space()));
        let coeffs: Coefficients = m.into();
        for (xtag, x) in fixture_spaces(depth) {
            checks.push(identity_check(format!("{tag}[{xtag}]"), dold_thom_space(&coeffs, &x, None, depth)?.space()));
        }
    }
    let filtered: Coefficients = threshold_filtration(3, 3)?.into();
    for (xtag, x) in fixture_spaces(depth) {
        checks.push(identity_check(format!("threshold:3:3[{xtag}]"), dold_thom_space(&filtered, &x, None, depth)?.space()));
    }
    Ok(checks)
}

type PointSet = BTreeSet<Vec<(u32, Element)>>;

fn point_set(space: &DoldThomSpace, k: usize) -> PointSet {
    space.configurations(k).iter().map(|c| c.points().to_vec()).collect()
}

/// Filtered Dold-Thom space against the union of its per-level spaces, the
/// recorded admitting levels, and the point-bound filtration.
pub fn filtration(depth: usize) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    let f = threshold_filtration(3, 3)?;
    let coeffs: Coefficients = f.clone().into();
    for (xtag, x) in fixture_spaces(depth) {
        let whole = dold_thom_space(&coeffs, &x, None, depth)?;
        let parts: Vec<DoldThomSpace> =
            f.levels().iter().map(|l| dold_thom_space(&l.clone().into(), &x, None, depth)).collect::<Result<_, _>>()?;
        let mut union_ok = true;
        let mut levels_ok = true;
        for k in 0..=depth {
            let part_sets: Vec<PointSet> = parts.iter().map(|p| point_set(p, k)).collect();
            let union: PointSet = part_sets.iter().flatten().cloned().collect();
            union_ok &= union == point_set(&whole, k);
            for (i, c) in whole.configurations(k).iter().enumerate() {
                let least = part_sets.iter().position(|s| s.contains(c.points()));
                levels_ok &= least == Some(whole.admitted_at(k, i as u32));
            }
        }
        checks.push(Check::flag(format!("threshold:3:3[{xtag}]: equals union of level spaces"), union_ok));
        checks.push(Check::flag(format!("threshold:3:3[{xtag}]: admitting level is least"), levels_ok));
    }
    let t3: Coefficients = truncated_naturals(3)?.into();
    let s1 = Arc::new(sphere(1, depth)?);
    let bounded: Vec<DoldThomSpace> = (0..=3).map(|n| dold_thom_space(&t3, &s1, Some(n), depth)).collect::<Result<_, _>>()?;
    for n in 0..3 {
        let inc = filtration_inclusion(&bounded[n], &bounded[n + 1])?;
        checks.push(Check::flag(format!("truncated:3[sphere:1]: M_{n} into M_{} is injective", n + 1), inc.is_injective()));
    }
    let unbounded = dold_thom_space(&t3, &s1, None, depth)?;
    let top = filtration_inclusion(&bounded[3], &unbounded)?;
    // Labels are at least 1 and sum to at most 3, so no configuration has more than 3 points.
    checks.push(Check::flag("truncated:3[sphere:1]: M_3 into M is an isomorphism", top.is_isomorphism()));
    Ok(checks)
}

/// Reduced homology comparison as a check.
pub fn homology_check(name: impl Into<String>, expected: &HomologyResult, computed: &HomologyResult) -> Result<Check, Error> {
    let through = expected.through();
    let cmp = compare_homology(expected, computed, through)?;
    let mut check = Check::new(name, expected.to_string(), computed.to_string());
    check.pass = cmp.equal();
    Ok(check)
}
