//! Acceptance run: one PASS/FAIL line per criterion. Built without the test
//! harness so the lines reach the terminal.
//!
//! Criteria listed in `OPEN` are expected to fail for a documented reason;
//! the run fails if any other criterion fails, or if an open one starts
//! passing (so the list cannot go stale).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;

use hypcyc::homology::{
    centralizer_homology, gamma_tors_report, group_homology_rips, per_class_homology, torsion_classes,
    untruncated_cap, Theory, TruncationSpec,
};
use hypcyc::geometry::delta_estimate;
use hypcyc::resolutions::ThetaPrime;
use hypcyc::scans::{scan_nabla, scan_splitting, ScanSpec};
use hypcyc::tree::{subset_metric, ApproxTree};
use hypcyc::verify::{
    bicombing_checks, chain_map_checks, cone_identity, elliptic_check, homotopy_identity, operator_identities,
    seeded_simplices, splitting_check, tree_checks, Check,
};
use hypcyc::{CayleyBall, GroupModel, Q};

const SEED: u64 = 20240601;

/// Criterion numbers expected to fail, with the reason printed alongside.
const OPEN: &[(usize, &str)] = &[(
    10,
    "C21 is a supremum approached as (2W-1)/(2W) by geodesic edges and never attained, so it moves with every weight cap",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn models() -> Vec<GroupModel> {
    vec![
        GroupModel::free_group(2),
        GroupModel::cyclic(2),
        GroupModel::cyclic(3),
        GroupModel::cyclic(4),
        GroupModel::dihedral(),
        GroupModel::free_product(&[2, 3]),
    ]
}

fn failed(checks: &[(String, Check)]) -> Vec<String> {
    checks
        .iter()
        .filter(|(_, c)| !c.passed)
        .map(|(m, c)| format!("{m}/{}: {:?}", c.name, c.failures))
        .collect()
}

fn operator_identities_all() -> Outcome {
    let t = Instant::now();
    let checks: Vec<(String, Check)> = models().iter().map(|m| (m.name(), operator_identities(m, 4, 6))).collect();
    let forms: usize = checks.iter().map(|(_, c)| c.checked).sum();
    let elapsed = t.elapsed();
    let bad = failed(&checks);
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(300),
        format!("{forms} forms, {:.1}s {}", elapsed.as_secs_f64(), bad.join("; ")),
    )
}

fn homotopy_and_cone() -> Outcome {
    let mut checks = Vec::new();
    for m in models() {
        let samples = seeded_simplices(&m, 200, 3, 2, SEED).expect("samples");
        let tp = ThetaPrime::new(&m, 4);
        checks.push((m.name(), homotopy_identity(&tp, &samples, SEED).expect("homotopy")));
        checks.push((m.name(), cone_identity(&m, &samples, SEED).expect("cone")));
    }
    let bad = failed(&checks);
    outcome(bad.is_empty(), format!("{} checks of 200 samples {}", checks.len(), bad.join("; ")))
}

fn tree_approximation() -> Outcome {
    let mut checks = Vec::new();
    let mut deltas = Vec::new();
    for m in models() {
        let ball = CayleyBall::new(&m, 6).expect("ball");
        let est = delta_estimate(&m, &ball, 20_000, SEED);
        deltas.push(format!("{}:δ={}", m.name(), est.delta));
        checks.push((m.name(), tree_checks(&m, 6, 100, 6, &est.delta, SEED).expect("tree")));
    }
    // the free group is a tree, so Φ must be an isometry on every subset
    let f2 = GroupModel::free_group(2);
    let ball = CayleyBall::new(&f2, 6).expect("ball");
    let mut iso = true;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(SEED);
    for _ in 0..100 {
        let size = rand::Rng::gen_range(&mut rng, 1..=6);
        let f: Vec<_> = rand::seq::SliceRandom::choose_multiple(ball.elements(), &mut rng, size).cloned().collect();
        let d = subset_metric(&f2, &f);
        let tree = ApproxTree::new(&d, 0).expect("tree");
        for i in 0..f.len() {
            for j in 0..f.len() {
                iso &= tree.dist(&tree.phi(i), &tree.phi(j)) == d[i][j];
            }
        }
    }
    let bad = failed(&checks);
    outcome(bad.is_empty() && iso, format!("{} free-group isometry {iso} {}", deltas.join(" "), bad.join("; ")))
}

fn bicombing_and_chain_maps() -> Outcome {
    let mut checks = Vec::new();
    for m in models() {
        checks.push((m.name(), bicombing_checks(&m, 4, 200, SEED).expect("bicombing")));
        let samples = seeded_simplices(&m, 120, 3, 2, SEED + 1).expect("samples");
        let tp = ThetaPrime::new(&m, 4);
        checks.push((m.name(), chain_map_checks(&tp, &samples, SEED).expect("chain maps")));
    }
    let bad = failed(&checks);
    outcome(bad.is_empty(), format!("{} checks {}", checks.len(), bad.join("; ")))
}

fn splitting_identities() -> Outcome {
    let f2 = GroupModel::free_group(2);
    let b = f2.parse("b").unwrap();
    let mut checks = vec![(f2.name(), splitting_check(&f2, &b, 2, 6).expect("splitting"))];
    for m in [GroupModel::cyclic(2), GroupModel::cyclic(3), GroupModel::free_product(&[2, 3])] {
        let cap = untruncated_cap(&m, 4).unwrap_or(6);
        for v in torsion_classes(&m).unwrap().iter().filter(|v| !v.is_identity()) {
            checks.push((m.name(), elliptic_check(&m, v, 3, cap).expect("elliptic")));
        }
    }
    let total: usize = checks.iter().map(|(_, c)| c.checked).sum();
    let bad = failed(&checks);
    outcome(bad.is_empty(), format!("{total} forms {}", bad.join("; ")))
}

/// Dense exact rank, kept separate from the library's sparse elimination.
fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in col..ncols {
                    let delta = &f * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Tensors `a₀⊗…⊗a_k` of `ℂ[ℤ/n]` with `Σaᵢ ≡ v`.
fn tensors(n: u32, k: usize, v: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..=k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |a| [t.clone(), vec![a]].concat())).collect();
    }
    out.retain(|t| t.iter().sum::<u32>() % n == v);
    out
}

/// Unnormalized Hochschild boundary of `ℂ[ℤ/n]`.
fn hoch(n: u32, t: &[u32]) -> Vec<(Vec<u32>, i64)> {
    let k = t.len() - 1;
    let mut out = Vec::new();
    for i in 0..k {
        let mut s = t.to_vec();
        let merged = (s[i] + s[i + 1]) % n;
        s.splice(i..=i + 1, [merged]);
        out.push((s, if i % 2 == 0 { 1 } else { -1 }));
    }
    if k > 0 {
        let mut s = t[..k].to_vec();
        s[0] = (t[k] + t[0]) % n;
        out.push((s, if k.is_multiple_of(2) { 1 } else { -1 }));
    }
    out
}

/// Coinvariants of `t(a₀…a_k) = (−1)^k (a_k a₀ … a_{k−1})`: canonical
/// representative and sign, or `None` when the orbit dies.
fn connes_class(t: &[u32]) -> Option<(Vec<u32>, i64)> {
    let k = t.len() - 1;
    let step = if k.is_multiple_of(2) { 1 } else { -1 };
    let mut best = (t.to_vec(), 1);
    let mut cur = t.to_vec();
    let mut sign = 1;
    for _ in 0..k {
        cur.rotate_right(1);
        sign *= step;
        if cur == t && sign == -1 {
            return None;
        }
        if cur < best.0 {
            best = (cur.clone(), sign);
        }
    }
    Some(best)
}

fn oracle(n: u32, v: u32, cyclic: bool, top: usize) -> Vec<usize> {
    let basis = |k: usize| -> Vec<Vec<u32>> {
        let all = tensors(n, k, v);
        if !cyclic {
            return all;
        }
        let mut reps: Vec<Vec<u32>> = all.iter().filter_map(|t| connes_class(t).map(|c| c.0)).collect();
        reps.sort();
        reps.dedup();
        reps
    };
    let bases: Vec<Vec<Vec<u32>>> = (0..=top + 1).map(basis).collect();
    let rank_of = |k: usize| -> usize {
        if k == 0 {
            return 0;
        }
        let index: BTreeMap<&Vec<u32>, usize> = bases[k - 1].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let rows: Vec<Vec<BigRational>> = bases[k]
            .iter()
            .map(|t| {
                let mut row = vec![BigRational::zero(); bases[k - 1].len()];
                for (s, c) in hoch(n, t) {
                    let (s, c) = if cyclic {
                        match connes_class(&s) {
                            Some((r, sg)) => (r, c * sg),
                            None => continue,
                        }
                    } else {
                        (s, c)
                    };
                    row[index[&s]] += BigRational::from_integer(c.into());
                }
                row
            })
            .collect();
        dense_rank(rows)
    };
    let ranks: Vec<usize> = (0..=top + 1).map(rank_of).collect();
    (0..=top).map(|k| bases[k].len() - ranks[k] - ranks[k + 1]).collect()
}

fn finite_ground_truth() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 1..=4u32 {
        let m = GroupModel::cyclic(n);
        let spec = TruncationSpec { degree_cap: 3, weight_cap: untruncated_cap(&m, 4).unwrap(), rips: 0 };
        let mut hp = (0, 0);
        for v in torsion_classes(&m).unwrap().iter() {
            let dims = |th| per_class_homology(&m, v, th, &spec).unwrap();
            let hh: Vec<usize> = dims(Theory::HH).iter().map(|r| r.dimension).collect();
            let hc: Vec<usize> = dims(Theory::HC).iter().map(|r| r.dimension).collect();
            let p = dims(Theory::HP);
            hp = (hp.0 + p[0].dimension, hp.1 + p[1].dimension);
            let z = centralizer_homology(&m, v, 3);
            let formula_hc: Vec<usize> = (0..=3).map(|k| (0..=k / 2).map(|j| z[k - 2 * j]).sum()).collect();
            let exp = v.0.first().map_or(0, |s| s.exp as u32);
            let (ohh, ohc) = (oracle(n, exp, false, 3), oracle(n, exp, true, 3));
            let good = hh == vec![1, 0, 0, 0] && hc == vec![1, 0, 1, 0] && hh == z && hc == formula_hc && hh == ohh && hc == ohc;
            ok &= good;
            if !good {
                notes.push(format!("Z{n} ⟨{}⟩ HH {hh:?} oracle {ohh:?} HC {hc:?} oracle {ohc:?}", m.format(v)));
            }
        }
        ok &= hp == (n as usize, 0);
        notes.push(format!("Z{n} HP {hp:?}"));
    }
    outcome(ok, notes.join(" "))
}

fn rips_group_homology() -> Outcome {
    let t = Instant::now();
    let cases = [
        (GroupModel::free_group(2), vec![1, 2, 0]),
        (GroupModel::cyclic(2), vec![1, 0, 0]),
        (GroupModel::cyclic(3), vec![1, 0, 0]),
        (GroupModel::cyclic(4), vec![1, 0, 0]),
        (GroupModel::cyclic(5), vec![1, 0, 0]),
        (GroupModel::dihedral(), vec![1, 0, 0]),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (m, want) in cases {
        let h = group_homology_rips(&m, 4, 2).expect("rips homology");
        ok &= h == want;
        notes.push(format!("{}:{h:?}", m.name()));
    }
    let elapsed = t.elapsed();
    outcome(ok && elapsed < Duration::from_secs(600), format!("{} {:.1}s", notes.join(" "), elapsed.as_secs_f64()))
}

fn hyperbolic_vanishing() -> Outcome {
    let f2 = GroupModel::free_group(2);
    let mut notes = Vec::new();
    let mut ok = true;
    for word in ["b", "ab"] {
        let v = f2.parse(word).unwrap();
        let found = [2u32, 4, 6].into_iter().find(|&w| {
            let hc = |cap| -> Vec<usize> {
                let s = TruncationSpec { degree_cap: 2, weight_cap: cap, rips: 0 };
                per_class_homology(&f2, &v, Theory::HC, &s).unwrap().iter().map(|r| r.dimension).collect()
            };
            hc(w) == vec![1, 0, 0] && hc(w + 2) == vec![1, 0, 0]
        });
        ok &= found.is_some();
        notes.push(match found {
            Some(w) => format!("⟨{word}⟩ HC (1,0,0) stable from W={w}"),
            None => format!("⟨{word}⟩ not stable by W=8"),
        });
    }
    outcome(ok, notes.join(" "))
}

fn torsion_report() -> Outcome {
    let f2 = GroupModel::free_group(2);
    let z23 = GroupModel::free_product(&[2, 3]);
    let cases = [
        (GroupModel::cyclic(2), 4, vec![]),
        (z23.clone(), 7, vec![z23.parse("at").unwrap()]),
        (f2.clone(), 6, vec![f2.parse("b").unwrap(), f2.parse("ab").unwrap()]),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (m, w, hyp) in cases {
        let spec = TruncationSpec { degree_cap: 1, weight_cap: w, rips: 4 };
        let r = gamma_tors_report(&m, &spec, &hyp).expect("report");
        let rows_ok = r.torsion.iter().all(|t| t.agree && t.stable.0 && t.stable.1);
        let hyp_ok = r.hyperbolic.iter().all(|h| h.status == "zero");
        ok &= rows_ok && hyp_ok && r.left == r.right;
        notes.push(format!("{}: {:?} vs {:?}", m.name(), r.left, r.right));
    }
    outcome(ok, notes.join(" "))
}

fn constant_scans() -> Outcome {
    let base = |w: u32, classes: Vec<String>| ScanSpec {
        degree_cap: 1,
        weight_cap: w,
        seed: SEED,
        budget: 5000,
        lambda0: Q::from_integer(2.into()),
        lambda1: Q::new(5.into(), 4.into()),
        rips: 4,
        power_cap: 2,
        classes,
    };
    let z23 = GroupModel::free_product(&[2, 3]);
    let f2 = GroupModel::free_group(2);
    let run = |w: u32| {
        let mut cs = scan_nabla(&z23, &base(w, vec![])).expect("nabla scan");
        cs.push(scan_splitting(&f2, &base(w, vec!["b".into(), "ab".into()])).expect("splitting scan"));
        cs
    };
    let (at4, again, at5) = (run(4), run(4), run(5));
    let reproducible = at4 == again;
    let finite = at4.iter().chain(&at5).all(|c| c.skipped == 0 && c.value > Q::zero());
    let mut drift = Vec::new();
    for (a, b) in at4.iter().zip(&at5) {
        if a.value != b.value {
            drift.push(format!("{} {}→{}", a.name, a.value, b.value));
        }
    }
    let classes = at4.last().map_or(0, |c| c.per_class.len());
    let values: Vec<String> = at4.iter().map(|c| format!("{}={}", c.name, c.value)).collect();
    outcome(
        reproducible && finite && drift.is_empty() && classes >= 2,
        format!("{} reproducible {reproducible} drift [{}]", values.join(" "), drift.join(", ")),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("operator identities", operator_identities_all),
        ("homotopy and cone identities", homotopy_and_cone),
        ("tree approximation", tree_approximation),
        ("bicombing and chain maps", bicombing_and_chain_maps),
        ("splitting identities", splitting_identities),
        ("finite-group ground truth", finite_ground_truth),
        ("Rips group homology", rips_group_homology),
        ("hyperbolic-class vanishing", hyperbolic_vanishing),
        ("torsion-class report", torsion_report),
        ("constant scans", constant_scans),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let t = Instant::now();
        let r = run();
        let open = OPEN.iter().find(|(k, _)| *k == n);
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:2} {verdict} {name} [{:.1}s] {}", t.elapsed().as_secs_f64(), r.detail.trim());
        match (r.pass, open) {
            (false, Some((_, why))) => println!("             open: {why}"),
            (false, None) => unexpected.push(n),
            (true, Some(_)) => unexpected.push(n),
            (true, None) => {}
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
