use std::collections::BTreeMap;

use schubreg::groth::{double_grothendieck, single_grothendieck};
use schubreg::perm::all_permutations;
use schubreg::regularity::{f_a, f_d};
use schubreg::stats::vexillary_data;
use schubreg::tableaux::{
    construct_t_w, construct_u_v, enumerate_fsvd, enumerate_fsvt, fsvd_expansion, fsvt_expansion, is_fsvd,
    is_fsvt, DEFAULT_BUDGET,
};
use schubreg::{Cell, Permutation, SparsePoly, VarId};

type Filling = BTreeMap<Cell, Vec<usize>>;

/// Tableau conditions written out directly: sets in [1, flag(row)], columns
/// strictly increasing downward, rows compared by `row_ok(left, right)`.
fn satisfies(t: &Filling, flag: &dyn Fn(usize) -> usize, row_ok: fn(&[usize], &[usize]) -> bool) -> bool {
    for (&(r, c), s) in t {
        if s.is_empty() || s.iter().any(|&x| x < 1 || x > flag(r)) {
            return false;
        }
        for (&(r2, c2), s2) in t {
            if c2 == c && r2 > r && s.iter().max() >= s2.iter().min() {
                return false;
            }
            if r2 == r && c2 > c && !row_ok(s, s2) {
                return false;
            }
        }
    }
    true
}

fn all_fillings(cells: &[Cell], flag: &dyn Fn(usize) -> usize) -> Vec<Filling> {
    let mut out = vec![Filling::new()];
    for &c in cells {
        let m = flag(c.0);
        let mut next = Vec::new();
        for t in &out {
            for mask in 1u32..(1 << m) {
                let s: Vec<usize> = (1..=m).filter(|&x| mask >> (x - 1) & 1 == 1).collect();
                let mut t2 = t.clone();
                t2.insert(c, s);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn search_space(cells: &[Cell], flag: &dyn Fn(usize) -> usize) -> u64 {
    cells.iter().map(|c| (1u64 << flag(c.0)) - 1).product()
}

fn y_to_zero(f: &SparsePoly) -> SparsePoly {
    f.substitute_all(|v| matches!(v, VarId::Y(_)), &SparsePoly::zero())
}

fn avoiding_1432(n: usize) -> Vec<Permutation> {
    all_permutations(n).into_iter().filter(|w| w.avoids_1432()).collect()
}

fn vexillary(n: usize) -> Vec<Permutation> {
    all_permutations(n).into_iter().filter(|w| w.is_vexillary()).collect()
}

#[test]
fn fsvd_enumeration_matches_brute_force() {
    let mut compared = 0;
    for w in avoiding_1432(5) {
        let cells: Vec<Cell> = w.rothe_diagram().iter().collect();
        let flag = |r: usize| r;
        let got: Vec<Filling> = enumerate_fsvd(&w, DEFAULT_BUDGET).unwrap().into_iter().map(|t| t.entries).collect();
        if search_space(&cells, &flag) <= 200_000 {
            let mut want: Vec<Filling> = all_fillings(&cells, &flag)
                .into_iter()
                .filter(|t| satisfies(t, &flag, |a, b| a.iter().min() >= b.iter().max()))
                .collect();
            want.sort();
            assert_eq!(got, want, "{w}");
            compared += 1;
        }
    }
    assert!(compared > 50);
}

#[test]
fn fsvt_enumeration_matches_brute_force() {
    let mut compared = 0;
    for v in vexillary(5) {
        let vd = vexillary_data(&v).unwrap();
        let cells: Vec<Cell> = vd.shape.cells().iter().collect();
        let phi = vd.flag.clone();
        let flag = move |r: usize| phi[r - 1];
        let got: Vec<Filling> = enumerate_fsvt(&v, DEFAULT_BUDGET).unwrap().into_iter().map(|t| t.entries).collect();
        if search_space(&cells, &flag) <= 200_000 {
            let mut want: Vec<Filling> = all_fillings(&cells, &flag)
                .into_iter()
                .filter(|t| satisfies(t, &flag, |a, b| a.iter().max() <= b.iter().min()))
                .collect();
            want.sort();
            assert_eq!(got, want, "{v}");
            compared += 1;
        }
    }
    assert!(compared > 50);
}

#[test]
fn enumerated_fillings_pass_checkers() {
    for w in avoiding_1432(5) {
        for t in enumerate_fsvd(&w, DEFAULT_BUDGET).unwrap() {
            assert!(is_fsvd(&w, &t), "{w}\n{t}");
        }
    }
    for v in vexillary(5) {
        for t in enumerate_fsvt(&v, DEFAULT_BUDGET).unwrap() {
            assert!(is_fsvt(&v, &t), "{v}\n{t}");
        }
    }
}

#[test]
fn fsvd_expansion_gives_grothendieck() {
    for w in avoiding_1432(4) {
        let e = fsvd_expansion(&w, DEFAULT_BUDGET).unwrap();
        assert_eq!(y_to_zero(&e), single_grothendieck(&w), "{w}");
        assert_eq!(e, double_grothendieck(&w), "{w}");
    }
    for w in avoiding_1432(5) {
        assert_eq!(fsvd_expansion(&w, DEFAULT_BUDGET).unwrap(), double_grothendieck(&w), "{w}");
    }
}

#[test]
fn fsvt_expansion_gives_double_grothendieck() {
    for n in 4..=5 {
        for v in vexillary(n) {
            assert_eq!(fsvt_expansion(&v, DEFAULT_BUDGET).unwrap(), double_grothendieck(&v), "{v}");
        }
    }
}

#[test]
fn t_w_is_a_maximal_fsvd() {
    for w in avoiding_1432(5) {
        let t = construct_t_w(&w).unwrap();
        let all = enumerate_fsvd(&w, DEFAULT_BUDGET).unwrap();
        assert!(all.contains(&t), "{w}\n{t}");
        assert_eq!(t.size(), all.iter().map(|s| s.size()).max().unwrap(), "{w}");
        assert_eq!(t.size(), f_d(&w).unwrap());
    }
}

#[test]
fn u_v_is_a_maximal_fsvt() {
    for v in vexillary(5) {
        let u = construct_u_v(&v).unwrap();
        let all = enumerate_fsvt(&v, DEFAULT_BUDGET).unwrap();
        assert!(all.contains(&u), "{v}\n{u}");
        assert_eq!(u.size(), all.iter().map(|s| s.size()).max().unwrap(), "{v}");
        assert_eq!(u.size(), f_a(&v).unwrap());
    }
}

#[test]
fn larger_examples() {
    let w: Permutation = "1462375".parse().unwrap();
    let all = enumerate_fsvd(&w, DEFAULT_BUDGET).unwrap();
    assert_eq!(all.iter().map(|t| t.size()).max(), Some(12));
    let v: Permutation = "169247358".parse().unwrap();
    let u = construct_u_v(&v).unwrap();
    assert!(is_fsvt(&v, &u));
    assert_eq!(u.size(), 21);
}

#[test]
fn constructions_valid_up_to_s7() {
    for n in 6..=7 {
        for w in all_permutations(n) {
            if w.avoids_1432() {
                let t = construct_t_w(&w).unwrap();
                assert!(is_fsvd(&w, &t), "{w}\n{t}");
                assert_eq!(t.size(), f_d(&w).unwrap(), "{w}");
            }
            if w.is_vexillary() {
                let u = construct_u_v(&w).unwrap();
                assert!(is_fsvt(&w, &u), "{w}\n{u}");
                assert_eq!(u.size(), f_a(&w).unwrap(), "{w}");
            }
        }
    }
}
