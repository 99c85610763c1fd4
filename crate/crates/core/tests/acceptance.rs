//! Acceptance suite: one line per criterion with its tolerance, elapsed
//! time and time limit. Exits nonzero if any criterion fails or overruns.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use dold_thom::dold_thom::dold_thom_space;
use dold_thom::homology::{compare_homology, homology, normalized_chains, simplicial_homology, HomologyGroup, HomologyResult};
use dold_thom::monoid::{abc, cyclic, parse_monoid_text, trivial, truncated_naturals, Coefficients, PartialMonoid};
use dold_thom::nerve::{classifying_space, nerve_to_circle_comparison};
use dold_thom::simplicial::{sphere, wedge, SimplicialSet};
use dold_thom::suites::{fixture_monoids, fixture_spaces, functoriality, identities};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit_secs: u64,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Every valid monoid among the shipped fixture files; filtered files
/// contribute each of their levels.
fn shipped_monoids() -> Vec<(String, PartialMonoid)> {
    let mut out = Vec::new();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    for path in paths.into_iter().filter(|p| p.extension().is_some_and(|e| e == "monoid")) {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(&path).unwrap();
        match parse_monoid_text(&text).unwrap().validate().1 {
            Some(Coefficients::Plain(m)) => out.push((name, m)),
            Some(Coefficients::Filtered(f)) => out.extend(f.levels().iter().enumerate().map(|(i, m)| (format!("{name}#{i}"), m.clone()))),
            None => {}
        }
    }
    out
}

fn reduced(groups: Vec<HomologyGroup>) -> HomologyResult {
    HomologyResult { reduced: true, groups }
}

fn coherence() -> Outcome {
    let mut monoids: Vec<(String, PartialMonoid)> = fixture_monoids().into_iter().map(|(t, m)| (t.to_string(), m)).collect();
    let shipped = shipped_monoids();
    ensure(shipped.len() >= 6, || format!("only {} shipped fixtures loaded", shipped.len()))?;
    monoids.extend(shipped);
    let fixtures = monoids.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    monoids.extend((0..200).map(|i| (format!("random #{i}"), random_monoid(&mut rng))));
    let mut multisets = 0;
    for (name, m) in &monoids {
        ensure(m.len() <= 6, || format!("{name} has {} elements", m.len()))?;
        let failures = coherence_failures(m, 5);
        ensure(failures.is_empty(), || format!("{name}: {}", failures[0]))?;
        multisets += common::multisets(m.len(), 5).len();
    }
    Ok(format!("{fixtures} fixtures + 200 random monoids, {multisets} multisets"))
}

fn simplicial_identities() -> Outcome {
    let checks = identities(4).map_err(|e| e.to_string())?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
    ensure(failed.is_empty(), || format!("{}: {}", failed[0].name, failed[0].computed))?;
    Ok(format!("{} spaces", checks.len()))
}

fn suspension() -> Outcome {
    for q in 1..=3 {
        let b = classifying_space(&trivial(q).unwrap(), 4).unwrap();
        let h = simplicial_homology(b.space(), 3, true).unwrap();
        let expected = reduced(vec![HomologyGroup::zero(), HomologyGroup::free(q), HomologyGroup::zero(), HomologyGroup::zero()]);
        ensure(h == expected, || format!("trivial({q}): {h}, expected {expected}"))?;
    }
    Ok("q = 1, 2, 3".into())
}

fn group_homology() -> Outcome {
    for q in [2, 3] {
        let b = classifying_space(&cyclic(q).unwrap(), 5).unwrap();
        let h = simplicial_homology(b.space(), 4, false).unwrap();
        let oracle: Vec<HomologyGroup> =
            bar_homology(q, 4).into_iter().map(|(r, t)| HomologyGroup::new(r, &t.iter().map(|&x| x as u64).collect::<Vec<_>>())).collect();
        ensure(h.groups == oracle, || format!("Z/{q}: {h}, bar oracle {oracle:?}"))?;
    }
    Ok("Z/2, Z/3 through degree 4".into())
}

fn nerve_circle() -> Outcome {
    let mut isos = Vec::new();
    for (tag, m) in [("Z/2", cyclic(2).unwrap()), ("Z/3", cyclic(3).unwrap()), ("trivial(2)", trivial(2).unwrap()), ("abc", abc())] {
        let cmp = nerve_to_circle_comparison(&m, 4).unwrap();
        let hb = simplicial_homology(cmp.nerve.space(), 3, true).unwrap();
        let hc = simplicial_homology(cmp.circle.space(), 3, true).unwrap();
        ensure(compare_homology(&hb, &hc, 3).unwrap().equal(), || format!("{tag}: BM {hb} vs M[S1] {hc}"))?;
        if m.is_total() {
            ensure(cmp.alignment.is_some(), || format!("{tag}: alignment is not an isomorphism"))?;
        }
        if cmp.alignment.is_some() {
            isos.push(tag);
        }
    }
    Ok(format!("isomorphism verified for {}", isos.join(", ")))
}

fn trivial_smash() -> Outcome {
    let z = HomologyGroup::zero;
    let known = [
        ("sphere:1", vec![z(), HomologyGroup::free(1), z(), z()]),
        ("sphere:2", vec![z(), z(), HomologyGroup::free(1), z()]),
        ("wedge:sphere:1*2", vec![z(), HomologyGroup::free(2), z(), z()]),
    ];
    let spaces = fixture_spaces(4);
    for q in 1..=2 {
        let m = Coefficients::Plain(trivial(q).unwrap());
        for ((tag, x), (known_tag, hx)) in spaces.iter().zip(&known) {
            assert_eq!(tag, known_tag);
            let h = simplicial_homology(dold_thom_space(&m, x, None, 4).unwrap().space(), 3, true).unwrap();
            let expected = reduced(hx.iter().map(|g| g.power(q)).collect());
            ensure(h == expected, || format!("trivial({q}) on {tag}: {h}, expected {expected}"))?;
        }
    }
    Ok("X in {S1, S2, S1 v S1}, q = 1, 2".into())
}

fn symmetric_products() -> Outcome {
    let s2 = Arc::new(sphere(2, 5).unwrap());
    let sp2 = dold_thom_space(&Coefficients::Plain(truncated_naturals(2).unwrap()), &s2, None, 5).unwrap();
    let h = simplicial_homology(sp2.space(), 4, false).unwrap();
    let cp2 = homology(&cp2_complex(), false).unwrap();
    ensure(compare_homology(&cp2, &h, 4).unwrap().equal(), || format!("SP2(S2): {h}, CP2 oracle {cp2}"))?;
    ensure(h.betti() == [1, 0, 1, 0, 1] && !h.has_torsion(), || format!("SP2(S2): {h}"))?;
    let sp1 = dold_thom_space(&Coefficients::Plain(truncated_naturals(1).unwrap()), &s2, None, 5).unwrap();
    let h1 = simplicial_homology(sp1.space(), 4, false).unwrap();
    let hs = simplicial_homology(&s2, 4, false).unwrap();
    ensure(h1 == hs, || format!("SP1(S2): {h1}, S2: {hs}"))?;
    Ok(format!("SP2(S2) = {h}"))
}

fn dold_thom_prediction() -> Outcome {
    for q in [2u64, 3] {
        let m = Coefficients::Plain(cyclic(q as usize).unwrap());
        for n in 1..=2 {
            let x = Arc::new(sphere(n, n + 1).unwrap());
            let h = simplicial_homology(dold_thom_space(&m, &x, None, n + 1).unwrap().space(), n, true).unwrap();
            let mut expected = vec![HomologyGroup::zero(); n];
            expected.push(HomologyGroup::cyclic(q));
            ensure(h.groups == expected, || format!("Z/{q} on S{n}: {h}"))?;
        }
    }
    Ok("Z/2, Z/3 on S1, S2".into())
}

fn functoriality_check() -> Outcome {
    let checks = functoriality(3).map_err(|e| e.to_string())?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
    ensure(failed.is_empty(), || format!("{}: expected {}, computed {}", failed[0].name, failed[0].expected, failed[0].computed))?;
    Ok(format!("{} checks including the fold fixture", checks.len()))
}

fn generated_spaces() -> Vec<(String, SimplicialSet)> {
    let mut out = Vec::new();
    for (tag, m) in fixture_monoids() {
        out.push((format!("B({tag})"), (**classifying_space(&m, 4).unwrap().space()).clone()));
        let coeffs = Coefficients::Plain(m);
        for (xtag, x) in fixture_spaces(4) {
            out.push((format!("{tag}[{xtag}]"), (**dold_thom_space(&coeffs, &x, None, 4).unwrap().space()).clone()));
        }
    }
    out.push(("S1 v S1 v S1".into(), wedge(&sphere(1, 4).unwrap(), 3).unwrap()));
    out
}

fn linear_algebra() -> Outcome {
    let spaces = generated_spaces();
    for (name, x) in &spaces {
        let c = normalized_chains(x, 3).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.boundary_defect().is_none(), || format!("{name}: boundary does not square to zero"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_000a);
    for i in 0..500 {
        let a = random_matrix(&mut rng, 12, 9);
        smith_postconditions(&a).map_err(|e| format!("matrix #{i}: {e}"))?;
    }
    Ok(format!("{} complexes, 500 matrices", spaces.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "axiom coherence", limit_secs: 10, run: coherence },
        Criterion { id: 2, title: "simplicial identities", limit_secs: 30, run: simplicial_identities },
        Criterion { id: 3, title: "suspension identity", limit_secs: 5, run: suspension },
        Criterion { id: 4, title: "group-homology oracle", limit_secs: 10, run: group_homology },
        Criterion { id: 5, title: "nerve-circle identity", limit_secs: 60, run: nerve_circle },
        Criterion { id: 6, title: "trivial-multiplication smash", limit_secs: 30, run: trivial_smash },
        Criterion { id: 7, title: "symmetric-product recovery", limit_secs: 120, run: symmetric_products },
        Criterion { id: 8, title: "Dold-Thom homology prediction", limit_secs: 120, run: dold_thom_prediction },
        Criterion { id: 9, title: "functoriality", limit_secs: 10, run: functoriality_check },
        Criterion { id: 10, title: "linear-algebra gates", limit_secs: 20, run: linear_algebra },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(c.limit_secs);
        let (status, detail) = match outcome {
            Ok(_) if elapsed > limit => ("FAIL", "time limit exceeded".to_string()),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {status} {:<30} tolerance exact  time {:>7.3}s / {:>3}s  {detail}",
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.limit_secs
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
