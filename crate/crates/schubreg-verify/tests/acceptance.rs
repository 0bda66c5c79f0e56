//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fail.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use schubreg::groth::{
    double_grothendieck, grothendieck_degree, kpolynomial_kl, single_grothendieck, unspecialized_grothendieck,
};
use schubreg::ladder::{
    ladder_to_grassmannian_pair, ladder_to_vexillary, present_ideal, reg_ladder, GeneratorSpec, Ladder, MarkedPoint,
    Subject,
};
use schubreg::perm::all_permutations;
use schubreg::regularity::{deg_grassmannian, f_a, f_d, reg_kl_321, reg_schubert};
use schubreg::stats::{vexillary_data, vexillary_from_shapes};
use schubreg::tableaux::{construct_t_w, construct_u_v, fsvd_expansion, fsvt_expansion, DEFAULT_BUDGET};
use schubreg::{Cell, Diagram, Partition, Permutation, SparsePoly, VarId};
use schubreg_verify::{run_sweep, Class, SweepOptions};

/// Wall-clock limits.
const WORKED_VALUES_LIMIT: Duration = Duration::from_secs(60);
const CI_SWEEP_LIMIT: Duration = Duration::from_secs(30);
const FULL_SWEEP_LIMIT: Duration = Duration::from_secs(600);

/// Number of S_5 permutations in each tableau spot-check.
const SPOT_CHECK: usize = 25;

type Outcome = Result<String, String>;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn part(parts: &[usize]) -> Partition {
    Partition::new(parts).unwrap()
}

fn cells(cs: &[Cell]) -> Diagram {
    cs.iter().copied().collect()
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    check(got == want, format!("{what}: got {got:?}, want {want:?}"))
}

fn sweep(class: Class, n: usize, limit: Duration) -> Outcome {
    let start = Instant::now();
    let r = run_sweep(class, &SweepOptions { jobs: 4, ..SweepOptions::new(n) }).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if !r.passed() {
        return Err(format!("{class} n={n}: {} ({})", r.summary(), r.mismatches[0]));
    }
    check(took <= limit, format!("{class} n={n} took {took:.1?}, limit {limit:?}"))?;
    Ok(format!("{class} n={n}: {} in {took:.1?}", r.summary()))
}

fn c1() -> Outcome {
    let w = p("1462375");
    let r = reg_schubert(&w).map_err(|e| e.to_string())?;
    eq("reg", r.value, 6)?;
    eq("deg", grothendieck_degree(&w), 12)?;
    eq("f_d", f_d(&w).unwrap(), 12)?;
    Ok(format!("reg = 6 via {}, deg = 12", r.method))
}

fn c2() -> Outcome {
    let v = p("169247358");
    eq("reg", reg_schubert(&v).unwrap().value, 8)?;
    eq("deg", grothendieck_degree(&v), 21)?;
    let d = vexillary_data(&v).unwrap();
    eq("lambda", d.shape.parts().to_vec(), vec![6, 4, 2, 1])?;
    eq("mu", d.envelope.parts().to_vec(), vec![8, 8, 8, 5, 5, 5])?;
    eq("phi", d.flag.clone(), vec![3, 3, 6, 6])?;
    eq("F_v", d.filling_rows(), vec![vec![1, 1, 1, 1, 2, 2], vec![1, 1, 1, 1], vec![2, 3], vec![2]])?;
    Ok("reg = 8, deg = 21, shape data and filling match".into())
}

fn c3() -> Outcome {
    let w = p("72416835");
    eq("code", w.code(), vec![6, 1, 2, 0, 2, 2, 0, 0])?;
    eq("Ess", w.essential_set(), cells(&[(1, 6), (3, 1), (3, 3), (6, 3), (6, 5)]))?;
    let dom = cells(&[(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 1), (3, 1)]);
    eq("Dom", w.dominant_component(), dom)?;
    Ok("code, Ess and Dom match".into())
}

fn c4() -> Outcome {
    let v = vexillary_from_shapes(&part(&[6, 6, 4, 4, 4]), &part(&[5, 4, 2, 1])).map_err(|e| e.to_string())?;
    eq("v", v, p("5713624"))?;
    Ok("5713624".into())
}

fn c5() -> Outcome {
    let g = p("1457236");
    let d = deg_grassmannian(&part(&[3, 2, 2]), 4).unwrap();
    eq("deg_grassmannian", d, 12)?;
    eq("f_d", f_d(&g).unwrap(), 12)?;
    eq("f_a", f_a(&g).unwrap(), 12)?;
    Ok("all three give 12".into())
}

fn c6() -> Outcome {
    let (v, w) = (p("34512"), p("21435"));
    let t = |i, j| SparsePoly::var(VarId::T2(i, j));
    let want = &(&t(1, 1) * &t(3, 1)) + &(&t(1, 1) * &t(2, 2)) - &t(1, 1) * &t(2, 2) * t(3, 1);
    eq("G_{v,w}(t)", unspecialized_grothendieck(&v, &w), want)?;
    let s = &SparsePoly::one() - &SparsePoly::t();
    let k = &SparsePoly::constant(2) * &s.pow(2) - s.pow(3);
    eq("K-polynomial", kpolynomial_kl(&v, &w).unwrap(), k)?;
    eq("reg", reg_kl_321(&v, &w).unwrap().value, 1)?;
    Ok("polynomials match, reg = 1".into())
}

fn filling(rows: &[&[&[usize]]]) -> BTreeMap<Cell, Vec<usize>> {
    let mut out = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            out.insert((i + 1, j + 1), e.to_vec());
        }
    }
    out
}

fn c7() -> Outcome {
    let t = construct_t_w(&p("1462375")).map_err(|e| e.to_string())?;
    let t_want: BTreeMap<Cell, Vec<usize>> = [
        ((2, 2), vec![1, 2]),
        ((2, 3), vec![1]),
        ((3, 2), vec![3]),
        ((3, 3), vec![2, 3]),
        ((3, 5), vec![1, 2]),
        ((6, 5), vec![3, 4, 5, 6]),
    ]
    .into_iter()
    .collect();
    eq("T_w", &t.entries, &t_want)?;
    eq("#T_w", t.size(), 12)?;
    let u = construct_u_v(&p("169247358")).map_err(|e| e.to_string())?;
    eq("#U_v", u.size(), 21)?;
    let u_want = filling(&[
        &[&[1], &[1], &[1], &[1, 2], &[2], &[2, 3]],
        &[&[2], &[2], &[2, 3], &[3]],
        &[&[3], &[3, 4, 5, 6]],
        &[&[4, 5, 6]],
    ]);
    let diff: Vec<_> = u_want.iter().filter(|(c, e)| u.entries.get(c) != Some(e)).collect();
    check(
        diff.is_empty(),
        format!(
            "T_w matches with 12 entries; U_v has 21 entries but differs from the reference at {:?} (got {:?})",
            diff.iter().map(|(c, _)| **c).collect::<Vec<_>>(),
            diff.iter().map(|(c, _)| u.entries.get(c)).collect::<Vec<_>>(),
        ),
    )?;
    Ok("T_w and U_v match with 12 and 21 entries".into())
}

fn c8() -> Outcome {
    let pts = [MarkedPoint { r: 3, c: 3, d: 5 }, MarkedPoint { r: 2, c: 3, d: 3 }, MarkedPoint { r: 3, c: 5, d: 3 }];
    let l = Ladder::from_corners(&[(3, 5), (5, 3)], &pts).map_err(|e| e.to_string())?;
    let mut gens = present_ideal(&Subject::Ladder(l.clone())).generators;
    gens.sort();
    let mut want = vec![
        GeneratorSpec { minor_size: 3, rows: 5, cols: 3 },
        GeneratorSpec { minor_size: 2, rows: 3, cols: 3 },
        GeneratorSpec { minor_size: 3, rows: 3, cols: 5 },
    ];
    want.sort();
    eq("generators", gens, want)?;
    eq("v", ladder_to_vexillary(&l).unwrap(), p("146253"))?;
    let (u, g) = ladder_to_grassmannian_pair(&l).unwrap();
    let mut du = Diagram::new();
    for i in 1..=5 {
        for j in 1..=3 {
            du.insert((i, j));
        }
    }
    for i in 3..=5 {
        for j in 6..=7 {
            du.insert((i, j));
        }
    }
    eq("D(u)", u.rothe_diagram(), du)?;
    eq("D(g)", g.rothe_diagram(), cells(&[(3, 3), (4, 3), (5, 3), (4, 5), (5, 5), (5, 7)]))?;
    Ok(format!("three minor groups, v = 146253, u = {u}, g = {g}"))
}

fn c9() -> Outcome {
    let a = sweep(Class::Avoid1432, 5, CI_SWEEP_LIMIT)?;
    let b = sweep(Class::Avoid1432, 6, FULL_SWEEP_LIMIT)?;
    Ok(format!("{a}; {b}"))
}

fn c10() -> Outcome {
    let a = sweep(Class::Vexillary, 5, CI_SWEEP_LIMIT)?;
    let b = sweep(Class::Vexillary, 6, FULL_SWEEP_LIMIT)?;
    Ok(format!("{a}; {b}"))
}

fn c11() -> Outcome {
    sweep(Class::GrassmannianPairs, 5, CI_SWEEP_LIMIT)
}

fn every_fourth(n: usize, keep: impl Fn(&Permutation) -> bool) -> Vec<Permutation> {
    all_permutations(n).into_iter().filter(|w| keep(w)).step_by(4).take(SPOT_CHECK).collect()
}

fn c12() -> Outcome {
    let y_to_zero = |f: &SparsePoly| f.substitute_all(|v| matches!(v, VarId::Y(_)), &SparsePoly::zero());
    let fsvd_ok = |w: &Permutation| y_to_zero(&fsvd_expansion(w, DEFAULT_BUDGET).unwrap()) == single_grothendieck(w);
    let fsvt_ok = |v: &Permutation| fsvt_expansion(v, DEFAULT_BUDGET).unwrap() == double_grothendieck(v);
    let mut counts = Vec::new();
    for n in 1..=4 {
        for w in all_permutations(n) {
            if w.avoids_1432() {
                check(fsvd_ok(&w), format!("FSVD expansion differs at {w}"))?;
            }
            if w.is_vexillary() {
                check(fsvt_ok(&w), format!("FSVT expansion differs at {w}"))?;
            }
        }
    }
    let d = every_fourth(5, |w| w.avoids_1432());
    let t = every_fourth(5, |w| w.is_vexillary());
    for w in &d {
        check(fsvd_ok(w), format!("FSVD expansion differs at {w}"))?;
    }
    for v in &t {
        check(fsvt_ok(v), format!("FSVT expansion differs at {v}"))?;
    }
    counts.push(d.len());
    counts.push(t.len());
    eq("spot-check sizes", counts, vec![SPOT_CHECK, SPOT_CHECK])?;
    Ok(format!("S_1..S_4 exhaustive, {SPOT_CHECK} + {SPOT_CHECK} S_5 spot checks"))
}

fn c13() -> Outcome {
    sweep(Class::Excited, 5, CI_SWEEP_LIMIT)
}

fn c14() -> Outcome {
    sweep(Class::Kl321, 5, CI_SWEEP_LIMIT)
}

fn c15() -> Outcome {
    sweep(Class::Transition, 6, FULL_SWEEP_LIMIT)
}

fn c16() -> Outcome {
    let corpus = sweep(Class::Ladders, 8, CI_SWEEP_LIMIT)?;
    let mut rects = 0;
    for a in 1..=5 {
        for b in 1..=5 {
            for r in 1..=a.min(b) {
                let l = Ladder::from_corners(&[(a, b)], &[MarkedPoint { r, c: a, d: b }]).unwrap();
                let lambda = part(&vec![b - r + 1; a - r + 1]);
                let want = deg_grassmannian(&lambda, a).unwrap() - lambda.size();
                eq(&format!("{a}x{b} rank {r}"), reg_ladder(&l).unwrap().value, want)?;
                rects += 1;
            }
        }
    }
    Ok(format!("{corpus}; {rects} rectangles"))
}

fn c17() -> Outcome {
    sweep(Class::Operators, 5, CI_SWEEP_LIMIT)
}

fn run(n: usize, f: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let took = start.elapsed();
    match &outcome {
        Ok(detail) => println!("criterion {n}: PASS - {detail} [{took:.1?}]"),
        Err(detail) => println!("criterion {n}: FAIL - {detail} [{took:.1?}]"),
    }
    outcome.is_ok()
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let worked: [fn() -> Outcome; 8] = [c1, c2, c3, c4, c5, c6, c7, c8];
    let sweeps: [fn() -> Outcome; 9] = [c9, c10, c11, c12, c13, c14, c15, c16, c17];

    let start = Instant::now();
    let mut results: Vec<bool> = worked.iter().enumerate().map(|(i, f)| run(i + 1, *f)).collect();
    let took = start.elapsed();
    let within = took <= WORKED_VALUES_LIMIT;
    println!(
        "criteria 1-8 together took {took:.1?} ({} the {WORKED_VALUES_LIMIT:?} limit)",
        if within { "within" } else { "over" }
    );
    if !within {
        results.push(false);
    }
    results.extend(sweeps.iter().enumerate().map(|(i, f)| run(i + 9, *f)));

    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
