//! Acceptance battery: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are false as stated; they are still
//! evaluated in full and reported as FAIL, and the target only fails if one
//! of them starts passing silently or if any other criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use fse_core::counting::{self, DavisMethod};
use fse_core::enumerate::{
    all_labeled_solutions, connected_classes, endo_classes, solution_class_codes, solution_classes, Method,
};
use fse_core::fse::{
    aut_brute, aut_group, build_solution, from_pointed, from_quadruple, is_decomposable, power, power_iterated,
    to_pointed, to_quadruple, verify_braid, Decomposition, Quadruple, Solution, SolutionKind,
};
use fse_core::funcgraph::{self, is_connected};
use fse_core::{EndoMap, PairMap, Perm, RectFactorization};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_FAILURES: &[usize] = &[9];

type Outcome = (bool, String);

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn c1() -> Outcome {
    let a = counting::davis_d(15, DavisMethod::BruijnSum);
    let b = counting::davis_d(15, DavisMethod::EulerProduct);
    let same = (1..=15).all(|n| a.get(n) == b.get(n));
    let ok = same && *a.get(1) == big(1) && *a.get(15) == big(1328993);
    (ok, format!("d(1) = {}, d(15) = {}, methods agree for n <= 15: {same}", a.get(1), a.get(15)))
}

fn c2() -> Outcome {
    let c = counting::harary_c(10);
    let want = [1u64, 2, 4, 9, 20, 51, 125, 329, 862, 2311];
    let series_ok = (1..=10).all(|n| *c.get(n) == big(want[n - 1]));
    let mut enumerated = Vec::new();
    for n in 1..=6 {
        enumerated.push(connected_classes(n).unwrap().len());
    }
    let enum_ok = enumerated.iter().enumerate().all(|(i, &k)| big(k as u64) == *c.get(i + 1));
    (series_ok && enum_ok, format!("c(1..10) = {:?}; connected classes n <= 6: {enumerated:?}", want))
}

fn c3() -> Outcome {
    let d = counting::davis_d(5, DavisMethod::BruijnSum);
    let got: Vec<usize> = (1..=5).map(|n| endo_classes(n).unwrap().len()).collect();
    let ok = got.iter().enumerate().all(|(i, &k)| big(k as u64) == *d.get(i + 1));
    (ok, format!("self-map classes n = 1..5: {got:?}"))
}

fn c4() -> Outcome {
    let b2 = solution_class_codes(2, Method::Brute).unwrap();
    let r2 = solution_class_codes(2, Method::ViaPointed).unwrap();
    let q2 = solution_class_codes(2, Method::ViaQuadruple).unwrap();
    let r3 = solution_class_codes(3, Method::ViaPointed).unwrap();
    let q3 = solution_class_codes(3, Method::ViaQuadruple).unwrap();
    let ok = b2 == r2 && r2 == q2 && r3 == q3;
    (ok, format!("n = 2: {}/{}/{} classes; n = 3: {}/{} classes", b2.len(), r2.len(), q2.len(), r3.len(), q3.len()))
}

fn c5() -> Outcome {
    let p = counting::partition_p(4);
    let d = counting::davis_d(4, DavisMethod::EulerProduct);
    let c = counting::harary_c(4);
    let mut bad = Vec::new();
    for n in 1..=4 {
        let t = solution_classes(n, Method::ViaQuadruple).unwrap();
        let sum_div =
            |s: &counting::BigSeries| -> BigUint { counting::divisors(n).into_iter().map(|m| s.get(m).clone()).sum() };
        let unitary: BigUint = big(counting::tau(n) as u64)
            + counting::divisors(n).into_iter().map(|k| big((k / 2) as u64)).sum::<BigUint>();
        let rows = [
            ("involutive", big(counting::tau(n) as u64)),
            ("idempotent", p.get(n).clone()),
            ("left_nondeg", d.get(n).clone()),
            ("right_nondeg", p.get(n).clone()),
            ("bijective", sum_div(&p)),
            ("pi1_surjective", sum_div(&d)),
            ("unitary", unitary),
            ("indecomposable_left_nondeg", c.get(n).clone()),
            ("indecomposable_right_nondeg", big(1)),
            ("indecomposable_idempotent", big(1)),
        ];
        for (name, want) in rows {
            let got = t.counts.get(name).copied().unwrap_or(0);
            if big(got as u64) != want {
                bad.push(format!("n={n} {name}: {got} vs {want}"));
            }
        }
    }
    (bad.is_empty(), if bad.is_empty() { "10 counts x n = 1..4 match".into() } else { bad.join("; ") })
}

/// Order of `pm` under composition if some power is the identity.
fn brute_finite_order(pm: &PairMap) -> Option<u64> {
    let mut seen = std::collections::HashSet::new();
    let mut cur = pm.clone();
    for k in 1.. {
        if cur.is_identity() {
            return Some(k);
        }
        if !seen.insert(cur.clone()) {
            return None;
        }
        cur = cur.compose(pm).unwrap();
    }
    unreachable!()
}

fn c6() -> Outcome {
    let mut got = Vec::new();
    let mut ok = true;
    for n in 1..=4 {
        let t = solution_classes(n, Method::ViaQuadruple).unwrap();
        let brute =
            t.classes.iter().filter(|cl| brute_finite_order(cl.representative.pm()).is_some_and(|o| o >= 2)).count();
        ok &= big(brute as u64) == counting::finite_order_count(n);
        ok &= counting::finite_order_count_literal(n) == counting::finite_order_count(n) + 1u32;
        got.push(brute);
    }
    ok &= got[1] == 2;
    (ok, format!("finite order >= 2 classes n = 1..4: {got:?} (identity term excluded)"))
}

fn c7() -> Outcome {
    let mut checked = 0usize;
    for f in EndoMap::all(5) {
        if funcgraph::aut_order(&f).0 != big(funcgraph::aut_brute(&f).unwrap().len() as u64) {
            return (false, format!("self-map {f:?}"));
        }
        checked += 1;
    }
    for n in 1..=4 {
        for s in all_labeled_solutions(n).unwrap() {
            if aut_group(&s).unwrap().order != big(aut_brute(&s).unwrap().len() as u64) {
                return (false, format!("solution {:?}", s.pm()));
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let f = EndoMap::new((0..7).map(|_| rng.gen_range(0..7)).collect()).unwrap();
        if funcgraph::aut_order(&f).0 != big(funcgraph::aut_brute(&f).unwrap().len() as u64) {
            return (false, format!("self-map {f:?}"));
        }
        checked += 1;
    }
    (true, format!("{checked} structural orders equal brute centralizers"))
}

fn random_solution(rng: &mut ChaCha8Rng) -> Solution {
    let n = rng.gen_range(1..=7);
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    let k = rng.gen_range(1..=n);
    let image = &pts[..k];
    let h: Vec<usize> = (0..n).map(|x| if image.contains(&x) { x } else { image[rng.gen_range(0..k)] }).collect();
    let divs = counting::divisors(k);
    let a = divs[rng.gen_range(0..divs.len())];
    let b = k / a;
    let rect = RectFactorization::from_grid(n, a, b, image.to_vec()).unwrap();
    let theta = EndoMap::new((0..b).map(|_| rng.gen_range(0..b)).collect()).unwrap();
    from_quadruple(&Quadruple::new(EndoMap::new(h).unwrap(), rect, theta).unwrap()).unwrap()
}

fn c8() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=4 {
        for s in all_labeled_solutions(n).unwrap() {
            let (t, theta) = to_pointed(&s);
            if from_pointed(&t, &theta).unwrap() != s || from_quadruple(&to_quadruple(&s)).unwrap() != s {
                return (false, format!("round trip fails on {:?}", s.pm()));
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let s = random_solution(&mut rng);
        for k in 1..=10 {
            if power(&s, k) != power_iterated(s.pm(), k) {
                return (false, format!("power {k} of {:?}", s.pm()));
            }
        }
    }
    (true, format!("{checked} labeled round trips; 200 x 10 powers"))
}

fn c9() -> Outcome {
    let mut notes = Vec::new();
    let mut braid_ok = true;
    for n in 1..=4 {
        braid_ok &= all_labeled_solutions(n).unwrap().iter().all(|s| verify_braid(s.pm()));
    }
    let five = solution_classes(5, Method::ViaQuadruple).unwrap();
    braid_ok &= five.classes.iter().all(|cl| verify_braid(cl.representative.pm()));
    notes.push(format!("braid: {braid_ok}"));

    let mut counterexamples = Vec::new();
    for n in 2..=5 {
        let t = solution_classes(n, Method::ViaQuadruple).unwrap();
        for cl in &t.classes {
            if cl.flags.bijective && !cl.flags.decomposable {
                counterexamples.push(format!("{:?}", cl.representative.pm()));
            }
        }
    }
    let bijective_ok = counterexamples.is_empty();
    notes.push(format!(
        "bijective => decomposable: {bijective_ok} ({} indecomposable bijective classes for n = 2..5{})",
        counterexamples.len(),
        counterexamples.first().map(|c| format!(", e.g. {c}")).unwrap_or_default()
    ));

    let mut graph_ok = true;
    for n in 1..=5 {
        for f in EndoMap::all(n) {
            let s = build_solution(SolutionKind::RF(f.clone())).unwrap();
            let decomposable = matches!(is_decomposable(&s).unwrap(), Decomposition::Decomposable { .. });
            graph_ok &= decomposable == !is_connected(&f);
        }
    }
    notes.push(format!("R_f decomposable <=> disconnected: {graph_ok}"));
    (braid_ok && bijective_ok && graph_ok, notes.join("; "))
}

fn c10() -> Outcome {
    let mobius_ok = counting::mobius_invert_check(15);
    let p = counting::partition_p(12);
    let sums_ok = (1..=12).all(|n| counting::order_class_distribution(n).values().sum::<BigUint>() == *p.get(n));
    let landau: Vec<BigUint> = (1..=12).map(counting::landau_g).collect();
    let landau_ok = (1..=12).all(|n| {
        let brute = counting::partitions(n).iter().map(|q| q.lcm()).max().unwrap();
        landau[n - 1] == BigUint::from(brute)
    });
    // independent check of the lcm brute force: maximal permutation order
    let by_perms_ok = (1..=7).all(|n| BigUint::from(Perm::all(n).map(|q| q.order()).max().unwrap()) == landau[n - 1]);
    (
        mobius_ok && sums_ok && landau_ok && by_perms_ok,
        format!("inversion: {mobius_ok}; order-class sums: {sums_ok}; g(1..12) = {landau:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 10] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10];
    let mut unexpected = 0;
    for (i, crit) in criteria.iter().enumerate() {
        let id = i + 1;
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(crit)) {
            Ok(r) => r,
            Err(e) => {
                let msg =
                    e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                (false, format!("panicked: {}", msg.unwrap_or_default()))
            }
        };
        let known = KNOWN_FAILURES.contains(&id);
        println!("criterion {id:>2}: {} — {detail}", if ok { "PASS" } else { "FAIL" });
        if known && !ok {
            println!("              known failure: the claim is false as stated (see README)");
        }
        if ok == known {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected outcome(s)");
        ExitCode::FAILURE
    }
}
