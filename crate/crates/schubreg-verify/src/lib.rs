//! Exhaustive sweeps over small symmetric groups and seeded random corpora
//! that check the closed-form degree and regularity formulas against
//! Grothendieck polynomials and against each other.

use std::fmt;
use std::str::FromStr;

use itertools::iproduct;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use schubreg::groth::{
    double_grothendieck, excited_expansion, grothendieck_degree, kpolynomial_kl, single_grothendieck,
    unspecialized_grothendieck, vexillary_degree_by_transition,
};
use schubreg::ladder::{ladder_to_grassmannian_pair, ladder_to_vexillary, reg_ladder, Ladder};
use schubreg::perm::{all_permutations, bruhat_leq};
use schubreg::poly::Monomial;
use schubreg::regularity::{deg_grassmannian, f_a, f_d, reg_grassmannian_patch, reg_kl_321};
use schubreg::stats::vexillary_from_shapes;
use schubreg::tableaux::{construct_t_w, construct_u_v, fsvd_expansion, fsvt_expansion, is_fsvd, is_fsvt};
use schubreg::{Error, Partition, Permutation, Result, SparsePoly, VarId};

pub const DEFAULT_SEED: u64 = 7;
pub const LADDER_CORPUS_SIZE: usize = 50;
pub const POLYNOMIAL_SUITE_SIZE: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Avoid1432,
    Vexillary,
    Grassmannian,
    GrassmannianPairs,
    Kl321,
    Transition,
    Excited,
    Fsvd,
    Fsvt,
    Ladders,
    Operators,
}

impl Class {
    pub const ALL: [Class; 11] = [
        Class::Avoid1432,
        Class::Vexillary,
        Class::Grassmannian,
        Class::GrassmannianPairs,
        Class::Kl321,
        Class::Transition,
        Class::Excited,
        Class::Fsvd,
        Class::Fsvt,
        Class::Ladders,
        Class::Operators,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::Avoid1432 => "1432",
            Class::Vexillary => "vexillary",
            Class::Grassmannian => "grassmannian",
            Class::GrassmannianPairs => "grassmannian-pairs",
            Class::Kl321 => "kl321",
            Class::Transition => "transition",
            Class::Excited => "excited",
            Class::Fsvd => "fsvd",
            Class::Fsvt => "fsvt",
            Class::Ladders => "ladders",
            Class::Operators => "operators",
        }
    }

    /// What a single checked item is called in the summary line.
    pub fn noun(self) -> &'static str {
        match self {
            Class::GrassmannianPairs | Class::Kl321 => "pairs",
            Class::Ladders => "ladders",
            Class::Operators => "polynomials",
            _ => "permutations",
        }
    }

    /// The statement being checked.
    pub fn claim(self) -> &'static str {
        match self {
            Class::Avoid1432 => "f_d(w) = deg G_w for 1432-avoiding w",
            Class::Vexillary => "f_a(v) = deg G_v for vexillary v",
            Class::Grassmannian => "f_d = f_a = deg_grassmannian = deg G_g for Grassmannian g",
            Class::GrassmannianPairs => "deg G_{u,g}(t) = deg G_v(x) and patch formula = max pipe",
            Class::Kl321 => "max barred pipe size - l(w) = deg K - l(w) for 321-avoiding v",
            Class::Transition => "transition degree = deg G_v for vexillary v",
            Class::Excited => "K-excited diagram sum = double G_v for vexillary v",
            Class::Fsvd => "FSVD expansion = G_w and T_w is a maximal FSVD",
            Class::Fsvt => "FSVT expansion = double G_v and U_v is a maximal FSVT",
            Class::Ladders => "ladder formula = Grassmannian patch = deg G_v - l(v)",
            Class::Operators => "divided difference and isobaric operator relations",
        }
    }

    /// Largest n accepted without an explicit override.
    pub fn default_ceiling(self) -> usize {
        match self {
            Class::Avoid1432 | Class::Vexillary | Class::Grassmannian | Class::Transition => 6,
            Class::Ladders => 8,
            _ => 5,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Class::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown class '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub n: usize,
    pub seed: u64,
    pub jobs: usize,
    pub budget: u64,
    pub ceiling: Option<usize>,
}

impl SweepOptions {
    pub fn new(n: usize) -> Self {
        SweepOptions { n, seed: DEFAULT_SEED, jobs: 1, budget: schubreg::tableaux::DEFAULT_BUDGET, ceiling: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub class: Class,
    pub n: usize,
    pub checked: usize,
    /// Descriptions of failing items, in sweep order.
    pub mismatches: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn summary(&self) -> String {
        format!("checked {} {}, {} mismatches", self.checked, self.class.noun(), self.mismatches.len())
    }
}

fn shape(w: &Permutation) -> Partition {
    let mut c = w.code();
    c.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(&c).expect("sorted code")
}

fn expect_eq<T: PartialEq + fmt::Debug>(what: &str, a: T, b: T) -> std::result::Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a:?} vs {b:?}"))
    }
}

fn run_checks<T: Sync>(
    items: &[T],
    jobs: usize,
    label: impl Fn(&T) -> String + Sync,
    check: impl Fn(&T) -> std::result::Result<(), String> + Sync,
) -> Vec<String> {
    let one = |t: &T| match check(t) {
        Ok(()) => None,
        Err(msg) => Some(format!("{}: {msg}", label(t))),
    };
    let results: Vec<Option<String>> = if jobs <= 1 {
        items.iter().map(one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        pool.install(|| items.par_iter().map(one).collect())
    };
    results.into_iter().flatten().collect()
}

fn err_string(e: Error) -> String {
    e.to_string()
}

/// Fixed-seed random polynomials in x_1..x_nvars of degree at most 6.
pub fn polynomial_suite(seed: u64, count: usize, nvars: usize) -> Vec<SparsePoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let terms = rng.gen_range(1..=8);
            SparsePoly::from_terms((0..terms).map(|_| {
                let deg = rng.gen_range(0..=6);
                let mut exps = vec![0u32; nvars];
                for _ in 0..deg {
                    exps[rng.gen_range(0..nvars)] += 1;
                }
                let mono: Monomial = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (VarId::X(i as u32 + 1), e))
                    .collect();
                (mono, BigInt::from(rng.gen_range(-9i64..=9)))
            }))
        })
        .collect()
}

/// Fixed-seed random valid ladders inside a grid x grid square.
pub fn ladder_corpus(seed: u64, count: usize, grid: usize) -> Vec<Ladder> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Ladder::random(grid, &mut |k| rng.gen_range(0..k))).collect()
}

/// Every operator identity that fails on f, for variables x_1..x_nvars.
pub fn operator_failures(f: &SparsePoly, nvars: u32) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..nvars {
        if !f.divided_difference(i).divided_difference(i).is_zero() {
            out.push(format!("d{i}^2 != 0"));
        }
        let p = f.pi(i);
        if p.pi(i) != p {
            out.push(format!("pi{i}^2 != pi{i}"));
        }
        if i + 1 < nvars && f.pi(i).pi(i + 1).pi(i) != f.pi(i + 1).pi(i).pi(i + 1) {
            out.push(format!("braid fails at {i}"));
        }
        for j in i + 2..nvars {
            if f.pi(i).pi(j) != f.pi(j).pi(i) {
                out.push(format!("pi{i} pi{j} do not commute"));
            }
        }
    }
    out
}

fn grassmannian_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let grass: Vec<Permutation> = all_permutations(n).into_iter().filter(|w| w.is_grassmannian()).collect();
    iproduct!(grass.iter(), grass.iter())
        .filter(|(u, g)| u.grassmannian_descent() == g.grassmannian_descent() && shape(u).contains(&shape(g)))
        .map(|(u, g)| (u.clone(), g.clone()))
        .collect()
}

fn kl_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let all = all_permutations(n);
    iproduct!(all.iter().filter(|v| v.is_321_avoiding()), all.iter())
        .filter(|(v, w)| bruhat_leq(w, v))
        .map(|(v, w)| (v.clone(), w.clone()))
        .collect()
}

fn y_to_zero(f: &SparsePoly) -> SparsePoly {
    f.substitute_all(|v| matches!(v, VarId::Y(_)), &SparsePoly::zero())
}

fn check_budget(len: usize, budget: u64) -> Result<()> {
    if len as u64 > budget {
        Err(Error::EnumerationBudgetExceeded(budget))
    } else {
        Ok(())
    }
}

fn perms(n: usize, keep: impl Fn(&Permutation) -> bool) -> Vec<Permutation> {
    all_permutations(n).into_iter().filter(|w| keep(w)).collect()
}

fn perm_sweep(
    opts: &SweepOptions,
    items: Vec<Permutation>,
    check: impl Fn(&Permutation) -> std::result::Result<(), String> + Sync,
) -> Result<(usize, Vec<String>)> {
    check_budget(items.len(), opts.budget)?;
    Ok((items.len(), run_checks(&items, opts.jobs, |w| w.to_string(), check)))
}

fn pair_sweep(
    opts: &SweepOptions,
    items: Vec<(Permutation, Permutation)>,
    check: impl Fn(&(Permutation, Permutation)) -> std::result::Result<(), String> + Sync,
) -> Result<(usize, Vec<String>)> {
    check_budget(items.len(), opts.budget)?;
    Ok((items.len(), run_checks(&items, opts.jobs, |(a, b)| format!("({a}, {b})"), check)))
}

/// Runs one sweep. Items are checked in parallel when jobs > 1, and the
/// report lists mismatches in the same order as a serial run.
pub fn run_sweep(class: Class, opts: &SweepOptions) -> Result<SweepReport> {
    let n = opts.n;
    let ceiling = opts.ceiling.unwrap_or_else(|| class.default_ceiling());
    if n == 0 || n > ceiling {
        return Err(Error::IndexOutOfRange(format!("n = {n} must lie in 1..={ceiling} for class {class}")));
    }
    let budget = opts.budget;
    let (checked, mismatches) = match class {
        Class::Avoid1432 => perm_sweep(opts, perms(n, |w| w.avoids_1432()), |w| {
            expect_eq("f_d vs degree", f_d(w).map_err(err_string)?, grothendieck_degree(w))
        })?,
        Class::Vexillary => perm_sweep(opts, perms(n, |w| w.is_vexillary()), |v| {
            expect_eq("f_a vs degree", f_a(v).map_err(err_string)?, grothendieck_degree(v))
        })?,
        Class::Grassmannian => perm_sweep(opts, perms(n, |w| w.is_grassmannian()), |g| {
            let k = g.grassmannian_descent().expect("Grassmannian");
            let d = deg_grassmannian(&shape(g), k).map_err(err_string)?;
            expect_eq("deg_grassmannian vs degree", d, grothendieck_degree(g))?;
            expect_eq("f_d vs deg_grassmannian", f_d(g).map_err(err_string)?, d)?;
            expect_eq("f_a vs deg_grassmannian", f_a(g).map_err(err_string)?, d)
        })?,
        Class::GrassmannianPairs => pair_sweep(opts, grassmannian_pairs(n), |(u, g)| {
            let v = vexillary_from_shapes(&shape(u), &shape(g)).map_err(err_string)?;
            let t = unspecialized_grothendieck(u, g).degree().map(|d| d as usize);
            expect_eq("deg G_{u,g}(t) vs deg G_v", t, Some(grothendieck_degree(&v)))?;
            let patch = reg_grassmannian_patch(u, g).map_err(err_string)?.value;
            let pipes = reg_kl_321(u, g).map_err(err_string)?.value;
            expect_eq("patch formula vs max pipe", patch, pipes)
        })?,
        Class::Kl321 => pair_sweep(opts, kl_pairs(n), |(v, w)| {
            let reg = reg_kl_321(v, w).map_err(err_string)?.value;
            let k = kpolynomial_kl(v, w).map_err(err_string)?;
            let deg = k.degree().ok_or("zero K-polynomial")? as usize;
            expect_eq("max pipe vs K-polynomial degree", reg, deg - w.length())
        })?,
        Class::Transition => perm_sweep(opts, perms(n, |w| w.is_vexillary()), |v| {
            let t = vexillary_degree_by_transition(v).map_err(err_string)?;
            expect_eq("transition vs degree", t, grothendieck_degree(v))
        })?,
        Class::Excited => perm_sweep(opts, perms(n, |w| w.is_vexillary()), |v| {
            let e = excited_expansion(v).map_err(err_string)?;
            if e == double_grothendieck(v) {
                Ok(())
            } else {
                Err("excited sum differs from the double Grothendieck polynomial".into())
            }
        })?,
        Class::Fsvd => perm_sweep(opts, perms(n, |w| w.avoids_1432()), |w| {
            let e = fsvd_expansion(w, budget).map_err(err_string)?;
            if y_to_zero(&e) != single_grothendieck(w) {
                return Err("FSVD expansion differs from G_w".into());
            }
            let t = construct_t_w(w).map_err(err_string)?;
            if !is_fsvd(w, &t) {
                return Err(format!("T_w is not a flagged filling:\n{t}"));
            }
            expect_eq("#T_w vs f_d", t.size(), f_d(w).map_err(err_string)?)
        })?,
        Class::Fsvt => perm_sweep(opts, perms(n, |w| w.is_vexillary()), |v| {
            if fsvt_expansion(v, budget).map_err(err_string)? != double_grothendieck(v) {
                return Err("FSVT expansion differs from the double Grothendieck polynomial".into());
            }
            let u = construct_u_v(v).map_err(err_string)?;
            if !is_fsvt(v, &u) {
                return Err(format!("U_v is not a flagged filling:\n{u}"));
            }
            expect_eq("#U_v vs f_a", u.size(), f_a(v).map_err(err_string)?)
        })?,
        Class::Ladders => {
            let corpus = ladder_corpus(opts.seed, LADDER_CORPUS_SIZE, n);
            check_budget(corpus.len(), budget)?;
            let label = |l: &Ladder| l.to_json().to_string();
            let mism = run_checks(&corpus, opts.jobs, label, |l| {
                let v = ladder_to_vexillary(l).map_err(err_string)?;
                let a = reg_ladder(l).map_err(err_string)?.value;
                let (u, g) = ladder_to_grassmannian_pair(l).map_err(err_string)?;
                let b = reg_grassmannian_patch(&u, &g).map_err(err_string)?.value;
                let c = grothendieck_degree(&v) - v.length();
                expect_eq("ladder / patch / degree", (a, b), (c, c))
            });
            (corpus.len(), mism)
        }
        Class::Operators => {
            let suite = polynomial_suite(opts.seed, POLYNOMIAL_SUITE_SIZE, n);
            check_budget(suite.len(), budget)?;
            let mism = run_checks(&suite, opts.jobs, |f| f.to_string(), |f| {
                let fails = operator_failures(f, n as u32);
                if fails.is_empty() {
                    Ok(())
                } else {
                    Err(fails.join(", "))
                }
            });
            (suite.len(), mism)
        }
    };
    Ok(SweepReport { class, n, checked, mismatches })
}
