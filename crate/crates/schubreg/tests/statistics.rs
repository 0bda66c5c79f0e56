use std::collections::BTreeMap;

use schubreg::perm::all_permutations;
use schubreg::stats::{
    d_bot, enumerate_excited, enumerate_kexcited, rho_a, rho_d, sigma_k, vexillary_data, vexillary_from_shapes,
};
use schubreg::{Cell, Diagram, Partition, Permutation};

/// Longest chain by exhaustive subset search.
fn brute_chain(cells: &Diagram, follows: impl Fn(Cell, Cell) -> bool) -> usize {
    let cs: Vec<Cell> = cells.iter().collect();
    let mut best = 0;
    for mask in 0u32..(1 << cs.len()) {
        let chosen: Vec<Cell> = (0..cs.len()).filter(|&k| mask >> k & 1 == 1).map(|k| cs[k]).collect();
        if chosen.windows(2).all(|w| follows(w[0], w[1])) {
            best = best.max(chosen.len());
        }
    }
    best
}

fn diag_multiset(cells: impl Iterator<Item = Cell>) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for (i, j) in cells {
        *m.entry(j as i64 - i as i64).or_insert(0) += 1;
    }
    m
}

#[test]
fn partition_counts() {
    let p = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
    for (n, &count) in p.iter().enumerate() {
        assert_eq!(Partition::all_of_size(n).len(), count);
    }
}

#[test]
fn staircase_value_is_longest_antidiagonal() {
    for n in 0..=12 {
        for l in Partition::all_of_size(n) {
            let cells = l.cells();
            let brute = brute_chain(&cells, |a, b| b.0 > a.0 && b.1 < a.1);
            assert_eq!(l.staircase_sv(), brute, "{l}");
            assert_eq!(rho_a(&cells), brute, "{l}");
        }
    }
}

#[test]
fn path_statistics_match_brute_force_on_diagrams() {
    for w in all_permutations(6).into_iter().step_by(7) {
        let d = w.rothe_diagram();
        if d.len() > 12 {
            continue;
        }
        assert_eq!(rho_d(&d), brute_chain(&d, |a, b| b.0 > a.0 && b.1 > a.1), "{w}");
        assert_eq!(rho_a(&d), brute_chain(&d, |a, b| b.0 > a.0 && b.1 < a.1), "{w}");
    }
}

#[test]
fn vexillary_shape_data() {
    for v in all_permutations(6).into_iter().filter(|v| v.is_vexillary()) {
        let vd = vexillary_data(&v).unwrap();
        assert_eq!(diag_multiset(v.rothe_diagram().iter()), diag_multiset(vd.shape.cells().iter()), "{v}");
        assert!(vd.envelope.contains(&vd.shape));
        for k in 1..=vd.max_filling() {
            assert!(vd.tau(k + 1).is_subset(&vd.tau(k)));
        }
        assert!(vd.tau(vd.max_filling() + 1).is_empty());
        // filling weakly increases along diagonals
        for (&(i, j), &f) in &vd.filling {
            if let Some(&g) = vd.filling.get(&(i + 1, j + 1)) {
                assert!(f <= g, "{v}");
            }
        }
    }
}

#[test]
fn sigma_sets() {
    for w in all_permutations(6) {
        let d = w.rothe_diagram();
        let full = rho_d(&d);
        for k in 1..=6 {
            let s = sigma_k(&w, k).unwrap();
            assert!(s.is_subset(&d));
            assert!(rho_d(&s) <= full);
        }
    }
}

#[test]
fn excited_diagrams() {
    for n in 1..=8 {
        for mu in Partition::all_of_size(n) {
            for m in 0..=n {
                for lambda in Partition::all_of_size(m).into_iter().filter(|l| mu.contains(l)) {
                    let plain = enumerate_excited(&mu, &lambda).unwrap();
                    let k = enumerate_kexcited(&mu, &lambda).unwrap();
                    let bot = d_bot(&mu, &lambda).unwrap();
                    assert!(plain.contains(&bot));
                    for d in &plain {
                        assert_eq!(d.len(), lambda.size());
                        assert!(k.contains(d));
                    }
                    for d in &k {
                        assert!(d.iter().all(|c| mu.contains_cell(c)));
                        assert!(d.len() >= lambda.size());
                    }
                }
            }
        }
    }
}

#[test]
fn vexillary_from_shapes_sweep() {
    let mut pairs = 0;
    for n in 0..=12 {
        for mu in Partition::all_of_size(n) {
            for m in 0..=n {
                for lambda in Partition::all_of_size(m).into_iter().filter(|l| mu.contains(l)) {
                    let v = vexillary_from_shapes(&mu, &lambda).unwrap();
                    assert!(v.is_vexillary());
                    assert_eq!(v.rothe_diagram(), d_bot(&mu, &lambda).unwrap(), "{mu} {lambda}");
                    pairs += 1;
                }
            }
        }
    }
    assert_eq!(pairs, 8855);
}

#[test]
fn shape_example() {
    let mu: Partition = "(6,6,4,4,4)".parse().unwrap();
    let lambda: Partition = "(5,4,2,1,0)".parse().unwrap();
    assert_eq!(vexillary_from_shapes(&mu, &lambda).unwrap(), "5713624".parse::<Permutation>().unwrap());
    assert!(vexillary_from_shapes(&lambda, &mu).is_err());
}
