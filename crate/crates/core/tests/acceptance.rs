//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

mod common;

use std::time::Instant;

use oreham::families::{family_atlas, FamilyId, FamilySpec};
use oreham::hamiltonicity::{find_hamiltonian_cycle_backtracking, is_hamiltonian, Fault};
use oreham::recognizers::{recognize_exception, recognize_family, recognize_thm5};
use oreham::verification::{enumerate_graphs, verify_theorem, HypothesisFilter, Theorem};
use oreham::{
    are_isomorphic, build_family, delete, is_k_vertex_fault_hamiltonian, vertex_connectivity,
    EdgeList, Graph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn theorem_runs(theorem: Theorem, orders: &[usize]) -> Outcome {
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    for &n in orders {
        let r = verify_theorem(theorem, n).map_err(|e| e.to_string())?;
        if r.verdicts.values().sum::<usize>() != r.enumerated {
            bad.push(format!("n={n}: histogram does not sum to {}", r.enumerated));
        }
        if !r.counterexamples.is_empty() {
            bad.push(format!("n={n}: {:?}", r.counterexamples));
        }
        notes.push(format!("n={n}: {} graphs, {:.1}s", r.enumerated, r.seconds));
    }
    if bad.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    for n in [8, 9] {
        let r = verify_theorem(Theorem::Thm6, n).map_err(|e| e.to_string())?;
        if !r.counterexamples.is_empty() {
            bad.push(format!("n={n}: {} counterexamples {:?}", r.counterexamples.len(), r.counterexamples));
        }
        for name in r.verdicts.keys() {
            let ok = name == "FAULT_TOLERANT"
                || name == "COUNTEREXAMPLE"
                || name.starts_with("EXCEPTION(ETA");
            if !ok {
                bad.push(format!("n={n}: unexpected verdict {name}"));
            }
        }
        if n == 8 {
            let even = ["ETA3", "ETA4", "ETA4_MINUS", "ETA4_EQ", "ETA5"];
            for name in r.verdicts.keys().filter(|k| k.starts_with("EXCEPTION")) {
                if !even.iter().any(|f| *name == format!("EXCEPTION({f})")) {
                    bad.push(format!("n=8: odd-order family {name}"));
                }
            }
        }
        notes.push(format!("n={n}: {} graphs {:?} {:.1}s", r.enumerated, r.verdicts, r.seconds));
    }
    if bad.is_empty() {
        Ok(notes.join("; "))
    } else {
        bad.extend(notes);
        Err(bad.join("; "))
    }
}

fn criterion_5() -> Outcome {
    let fig12 = oreham::families::fig12_graph();
    if recognize_thm5(&fig12) != Some(FamilyId::Zhao5) {
        return Err("Fig. 12 graph not in shape (5)".into());
    }
    theorem_runs(Theorem::Thm5, &[4, 5, 6, 7, 8, 9]).map(|s| format!("fig12 -> ZHAO5; {s}"))
}

/// Degree claims for one family instance, vertex names resolved from the spec.
fn figure_claims(spec: &FamilySpec, g: &Graph) -> Result<(), String> {
    let d = |v: usize| g.degree(v);
    let n = spec.n;
    let check = |what: &str, ok: bool| if ok { Ok(()) } else { Err(format!("{what} fails on {}", g.to_graph6())) };
    match (spec.family, n) {
        (FamilyId::Eta1, 9) => {
            let &(v1, u1) = spec.deleted.as_slice().first().unwrap_or(&(0, 5));
            let _ = v1;
            check("H degrees >= 4", (0..5).all(|v| d(v) >= 4))?;
            check("deg(u1) = 4", d(u1) == 4)?;
            check("other u = 5", (5..9).filter(|&u| u != u1).all(|u| d(u) == 5))
        }
        (FamilyId::Eta2, 7) => {
            check("H degrees > 3", (0..4).all(|v| d(v) > 3))?;
            check("u = 4", (4..7).all(|u| d(u) == 4))
        }
        (FamilyId::Eta2, 9) => {
            check("H degrees >= 4", (0..5).all(|v| d(v) >= 4))?;
            check("u = 5", (5..9).all(|u| d(u) == 5))
        }
        (FamilyId::Eta3, 10) => {
            check("H degrees >= 5", (0..5).all(|v| d(v) >= 5))?;
            check("u1, u2 = 6", d(5) == 6 && d(6) == 6)?;
            check("u3..u5 = 5", (7..10).all(|u| d(u) == 5))
        }
        (FamilyId::Eta4, 10) => {
            check("v >= 5", (0..3).all(|v| d(v) >= 5))?;
            check("x, y >= 6", d(3) >= 6 && d(4) >= 6)?;
            check("u1, u2 = 6", d(5) == 6 && d(6) == 6)?;
            check("u3..u5 = 5", (7..10).all(|u| d(u) == 5))
        }
        (FamilyId::Eta4Minus, 10) => {
            let &(a, b) = spec.deleted.as_slice().first().unwrap_or(&(4, 5));
            let (y, x) = (a, 7 - a);
            let (u1, u2) = (b, 11 - b);
            check("v >= 5", (0..3).all(|v| d(v) >= 5))?;
            check("x >= 6, y >= 5", d(x) >= 6 && d(y) >= 5)?;
            check("u2 = 6", d(u2) == 6)?;
            check("other u = 5", [u1, 7, 8, 9].iter().all(|&u| d(u) == 5))
        }
        (FamilyId::Eta4Eq, 10) => {
            check("v >= 5", (0..3).all(|v| d(v) >= 5))?;
            check("x, y >= 5", d(3) >= 5 && d(4) >= 5)?;
            check("u = 5", (5..10).all(|u| d(u) == 5))
        }
        (FamilyId::Eta5, 10) => {
            check("H >= 5", (0..5).all(|v| d(v) >= 5))?;
            check("u = 5", (5..10).all(|u| d(u) == 5))
        }
        (FamilyId::Eta6, 10) => {
            check("H >= 6", (0..4).all(|v| d(v) >= 6))?;
            check("u = 5", (4..10).all(|u| d(u) == 5))
        }
        (FamilyId::Eta7, 9) => {
            check("H >= 5", (0..4).all(|v| d(v) >= 5))?;
            check("u1 = 4", d(4) == 4)?;
            check("other u = 5", (5..9).all(|u| d(u) == 5))
        }
        _ => Ok(()),
    }
}

fn criterion_6() -> Outcome {
    let atlas = family_atlas(10);
    let figures: [(&str, FamilyId, usize); 10] = [
        ("2", FamilyId::Eta1, 9),
        ("3", FamilyId::Eta2, 7),
        ("4", FamilyId::Eta2, 9),
        ("5", FamilyId::Eta3, 10),
        ("6", FamilyId::Eta4, 10),
        ("7", FamilyId::Eta4Minus, 10),
        ("8", FamilyId::Eta4Eq, 10),
        ("9", FamilyId::Eta5, 10),
        ("10", FamilyId::Eta6, 10),
        ("11", FamilyId::Eta7, 9),
    ];
    let mut checked = 0;
    for (fig, f, n) in figures {
        let instances: Vec<_> = atlas.iter().filter(|(s, _)| s.family == f && s.n == n).collect();
        if instances.is_empty() {
            return Err(format!("Fig. {fig}: no instance"));
        }
        for (spec, g) in instances {
            figure_claims(spec, g).map_err(|e| format!("Fig. {fig}: {e}"))?;
            checked += 1;
        }
    }
    Ok(format!("10 figures, {checked} instances"))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.15..0.85);
    let edges: Vec<(usize, usize)> = common::pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn criterion_7() -> Outcome {
    let none = HypothesisFilter::none();
    let mut classes = Vec::new();
    for n in 3..=7 {
        enumerate_graphs(n, &none, |g| classes.push(g.clone())).map_err(|e| e.to_string())?;
    }
    // hamiltonicity: DP vs plain backtracking, and the pruned backtracker
    for g in &classes {
        let dp = is_hamiltonian(g);
        if dp != common::brute_hamiltonian(g) || dp != find_hamiltonian_cycle_backtracking(g).is_some() {
            return Err(format!("hamiltonicity disagrees on {g}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let n = rng.gen_range(3..=14);
        let g = random_graph(&mut rng, n);
        if is_hamiltonian(&g) != find_hamiltonian_cycle_backtracking(&g).is_some() {
            return Err(format!("DP vs backtracking disagree on {g}"));
        }
    }
    // connectivity: flow vs brute force
    for g in classes.iter().filter(|g| g.order() >= 2) {
        if vertex_connectivity(g).unwrap().kappa != common::brute_kappa(g) {
            return Err(format!("kappa disagrees on {g}"));
        }
    }
    for _ in 0..1000 {
        let g = random_graph(&mut rng, 8);
        if vertex_connectivity(&g).unwrap().kappa != common::brute_kappa(&g) {
            return Err(format!("kappa disagrees on {g}"));
        }
    }
    // enumeration counts vs the filter-everything pass
    let mut counts = Vec::new();
    for n in 3..=7 {
        let got = classes.iter().filter(|g| g.order() == n).count();
        let want = common::classes_by_filtering(n, |_| true).len();
        if got != want {
            return Err(format!("n={n}: enumerator {got}, oracle {want}"));
        }
        counts.push(format!("{n}:{got}"));
    }
    if counts[1] != "4:11" || counts[2] != "5:34" {
        return Err(format!("pinned counts differ: {counts:?}"));
    }
    Ok(format!("classes {}; 10000 random DP/backtrack; 1000 random kappa", counts.join(" ")))
}

fn scramble(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    g.permute(&perm)
}

fn criterion_8() -> Outcome {
    let atlas = family_atlas(10);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = 0;
    for (spec, g) in &atlas {
        let h = scramble(g, &mut rng);
        let back = recognize_family(&h, spec.family)
            .ok_or_else(|| format!("{} n={} not recognized: {}", spec.family, spec.n, g))?;
        let rebuilt = build_family(&back).map_err(|e| format!("{}: rebuild failed: {e}", spec.family))?;
        if !are_isomorphic(&rebuilt, g) {
            return Err(format!("{} n={}: rebuild not isomorphic", spec.family, spec.n));
        }
        if spec.family.is_eta() {
            let r = recognize_exception(&h)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{} n={}: exception recognizer missed {g}", spec.family, spec.n))?;
            if r.sub_scale || !are_isomorphic(&build_family(&r.spec).map_err(|e| e.to_string())?, g) {
                return Err(format!("{} n={}: exception round trip failed", spec.family, spec.n));
            }
        }
        ok += 1;
    }
    Ok(format!("{ok}/{} atlas instances", atlas.len()))
}

fn criterion_9() -> Outcome {
    let atlas = family_atlas(10);
    let mut count = 0;
    let mut singles = 0;
    for (spec, g) in atlas.iter().filter(|(s, _)| s.family.is_eta()) {
        let v = is_k_vertex_fault_hamiltonian(g, 2).map_err(|e| e.to_string())?;
        let Some(Fault::Vertices(w)) = v.witness else {
            return Err(format!("{} n={}: 2-vertex-fault tolerant: {g}", spec.family, spec.n));
        };
        let (rest, _) = delete(g, &w, &EdgeList::empty()).unwrap();
        if common::brute_hamiltonian(&rest) {
            return Err(format!("{} n={}: witness {w:?} does not break {g}", spec.family, spec.n));
        }
        if w.len() == 1 {
            singles += 1;
        }
        count += 1;
    }
    Ok(format!("{count} eta instances fail, {singles} already at a single vertex"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 Theorem 6 exhaustive, n = 8, 9", criterion_1),
        ("2 Theorem 1, n = 5..9", || theorem_runs(Theorem::Thm1, &[5, 6, 7, 8, 9])),
        ("3 Theorem 2 vertex and edge clauses, n = 6..9", || {
            theorem_runs(Theorem::Thm2, &[6, 7, 8, 9])
        }),
        ("4 Theorem 4, n = 5..9", || theorem_runs(Theorem::Thm4, &[5, 6, 7, 8, 9])),
        ("5 Theorem 5, n = 4..9", criterion_5),
        ("6 figure degree tables", criterion_6),
        ("7 oracle equivalences", criterion_7),
        ("8 atlas round trip, n <= 10", criterion_8),
        ("9 eta instances are not 2-fault tolerant, n <= 10", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} [{secs:.1}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name} [{secs:.1}s] {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
