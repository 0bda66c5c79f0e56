//! Grothendieck polynomials: the π-recursion, pipe enumeration, the
//! unspecialized and K-polynomial specializations, and vexillary transition.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::{bruhat_leq, demazure_product, Cell, Diagram, Permutation};
use crate::poly::{SparsePoly, VarId};
use crate::stats::{enumerate_kexcited, vexillary_data};

/// Which chain of π operators leads from the base case down to w.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Start at w0 of S_n and take the first ascent at each step.
    Longest,
    /// Start at the first dominant permutation reached by sorting the code.
    Dominant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Single,
    Double,
}

type Key = (Kind, Route, Permutation);

/// Permutation-keyed memo of computed polynomials, safe to share across threads.
pub struct GrothendieckCache {
    map: RwLock<HashMap<Key, Arc<SparsePoly>>>,
    limit: usize,
}

impl Default for GrothendieckCache {
    fn default() -> Self {
        Self::with_limit(200_000)
    }
}

impl GrothendieckCache {
    /// Once `limit` entries are stored, new results are computed but not kept.
    pub fn with_limit(limit: usize) -> Self {
        GrothendieckCache { map: RwLock::new(HashMap::new()), limit }
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().unwrap().clear();
    }

    pub fn single(&self, w: &Permutation) -> Arc<SparsePoly> {
        self.get(Kind::Single, Route::Dominant, &w.trimmed())
    }

    pub fn double(&self, w: &Permutation) -> Arc<SparsePoly> {
        self.get(Kind::Double, Route::Dominant, &w.trimmed())
    }

    pub fn single_via(&self, w: &Permutation, route: Route) -> Arc<SparsePoly> {
        self.get(Kind::Single, route, w)
    }

    pub fn double_via(&self, w: &Permutation, route: Route) -> Arc<SparsePoly> {
        self.get(Kind::Double, route, w)
    }

    fn get(&self, kind: Kind, route: Route, w: &Permutation) -> Arc<SparsePoly> {
        let key = (kind, route, w.clone());
        if let Some(p) = self.map.read().unwrap().get(&key) {
            return p.clone();
        }
        let value = Arc::new(self.compute(kind, route, w));
        let mut map = self.map.write().unwrap();
        if map.len() < self.limit {
            map.insert(key, value.clone());
        }
        value
    }

    fn compute(&self, kind: Kind, route: Route, w: &Permutation) -> SparsePoly {
        let step = match route {
            Route::Dominant => {
                let c = w.code();
                (0..c.len().saturating_sub(1)).find(|&i| c[i] < c[i + 1])
            }
            Route::Longest => (0..w.n() - 1).find(|&i| w.oneline()[i] < w.oneline()[i + 1]),
        };
        match step {
            None => base_polynomial(kind, w),
            Some(i0) => {
                let up = w.swap_positions(i0 + 1, i0 + 2);
                self.get(kind, route, &up).pi(i0 as u32 + 1)
            }
        }
    }
}

/// Base case for a dominant permutation: Π x_i (or Π x_i ⊕ y_j) over D(w).
fn base_polynomial(kind: Kind, w: &Permutation) -> SparsePoly {
    let mut acc = SparsePoly::one();
    for (i, j) in w.rothe_diagram().iter() {
        let f = match kind {
            Kind::Single => SparsePoly::x(i as u32),
            Kind::Double => SparsePoly::x(i as u32).oplus(&SparsePoly::y(j as u32)),
        };
        acc = &acc * &f;
    }
    acc
}

pub fn global_cache() -> &'static GrothendieckCache {
    static CACHE: OnceLock<GrothendieckCache> = OnceLock::new();
    CACHE.get_or_init(GrothendieckCache::default)
}

/// 𝔊_w(x).
pub fn single_grothendieck(w: &Permutation) -> SparsePoly {
    (*global_cache().single(w)).clone()
}

/// 𝔊_w(x; y).
pub fn double_grothendieck(w: &Permutation) -> SparsePoly {
    (*global_cache().double(w)).clone()
}

pub fn grothendieck_degree(w: &Permutation) -> usize {
    global_cache().single(w).degree().expect("Grothendieck polynomials are nonzero") as usize
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PipeSubset {
    pub cells: Diagram,
    pub demazure_value: Permutation,
}

/// Cells of D(v) in reading order (right to left within rows, top row
/// first), each with its label: the k-th cell from the left in row i gets i + k − 1.
pub fn reading_order(v: &Permutation) -> Vec<(Cell, usize)> {
    let d = v.rothe_diagram();
    let mut out = Vec::with_capacity(d.len());
    for i in 1..=d.max_row() {
        let row: Vec<Cell> = d.row(i).collect();
        for (k, &c) in row.iter().enumerate().rev() {
            out.push((c, i + k));
        }
    }
    out
}

struct PipeSearch<'a> {
    letters: &'a [(Cell, usize)],
    target: Vec<usize>,
    target_inv: Vec<usize>,
    target_len: usize,
    closed: bool,
    chosen: Vec<Cell>,
    out: Vec<PipeSubset>,
}

impl PipeSearch<'_> {
    fn run(&mut self, pos: usize, state: &mut Vec<usize>, len: usize) {
        if self.target_len - len > self.letters.len() - pos {
            return;
        }
        if pos == self.letters.len() {
            if *state == self.target {
                let demazure_value = Permutation::from_one_line(state).unwrap();
                self.out.push(PipeSubset { cells: self.chosen.iter().copied().collect(), demazure_value });
            }
            return;
        }
        self.run(pos + 1, state, len);
        let (cell, s) = self.letters[pos];
        let (a, b) = (state[s - 1], state[s]);
        if a < b {
            // new inversion (a, b) must also be an inversion of the target
            if self.target_inv[b - 1] < self.target_inv[a - 1] {
                state.swap(s - 1, s);
                self.chosen.push(cell);
                self.run(pos + 1, state, len + 1);
                self.chosen.pop();
                state.swap(s - 1, s);
            }
        } else if self.closed {
            self.chosen.push(cell);
            self.run(pos + 1, state, len);
            self.chosen.pop();
        }
    }
}

fn common_size(v: &Permutation, w: &Permutation) -> usize {
    v.n().max(w.n())
}

/// Pipes(v, w) (closed = false) or barred Pipes(v, w) (closed = true).
pub fn enumerate_pipes(v: &Permutation, w: &Permutation, closed: bool) -> Vec<PipeSubset> {
    let n = common_size(v, w);
    let (v, w) = (v.embed(n), w.embed(n));
    let letters = reading_order(&v);
    let mut search = PipeSearch {
        letters: &letters,
        target: w.oneline().to_vec(),
        target_inv: w.inverse().oneline().to_vec(),
        target_len: w.length(),
        closed,
        chosen: Vec::new(),
        out: Vec::new(),
    };
    let mut state: Vec<usize> = (1..=n).collect();
    search.run(0, &mut state, 0);
    let mut out = search.out;
    out.sort();
    out
}

/// Same result as [`enumerate_pipes`] by brute force over all subsets of D(v).
pub fn enumerate_pipes_exhaustive(v: &Permutation, w: &Permutation, closed: bool) -> Vec<PipeSubset> {
    let n = common_size(v, w);
    let (v, w) = (v.embed(n), w.embed(n));
    let letters = reading_order(&v);
    assert!(letters.len() < 24, "exhaustive pipe enumeration is for small diagrams");
    let mut out = Vec::new();
    for mask in 0u32..(1 << letters.len()) {
        let picked: Vec<&(Cell, usize)> =
            letters.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, l)| l).collect();
        let word: Vec<usize> = picked.iter().map(|l| l.1).collect();
        let d = demazure_product(&word, n).expect("labels lie in [n-1]");
        let ok = if closed { d == w } else { d == w && word.len() == w.length() };
        if ok {
            out.push(PipeSubset { cells: picked.iter().map(|l| l.0).collect(), demazure_value: d });
        }
    }
    out.sort();
    out
}

fn sign(exp: usize) -> BigInt {
    if exp % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// 𝔊_{v,w}(t) = Σ over barred Pipes of (−1)^{#P−ℓ(w)} Π t_ij.
pub fn unspecialized_grothendieck(v: &Permutation, w: &Permutation) -> SparsePoly {
    let lw = w.length();
    SparsePoly::from_terms(enumerate_pipes(v, w, true).into_iter().map(|p| {
        let mono = p.cells.iter().map(|(i, j)| (VarId::T2(i as u32, j as u32), 1)).collect();
        (mono, sign(p.cells.len() - lw))
    }))
}

fn one_minus_t() -> SparsePoly {
    &SparsePoly::one() - &SparsePoly::t()
}

/// K(S/I_w; t) = 𝔊_w(1−t, ..., 1−t).
pub fn kpolynomial_schubert(w: &Permutation) -> SparsePoly {
    single_grothendieck(w).substitute_all(|v| matches!(v, VarId::X(_)), &one_minus_t())
}

fn check_kl_input(v: &Permutation, w: &Permutation) -> Result<()> {
    if !v.is_321_avoiding() {
        return Err(Error::Not321Avoiding(v.to_string()));
    }
    if !bruhat_leq(w, v) {
        return Err(Error::NotBruhatComparable { w: w.to_string(), v: v.to_string() });
    }
    Ok(())
}

/// K-polynomial of the Kazhdan-Lusztig variety: Σ (−1)^{#P−ℓ(w)} (1−t)^{#P}.
pub fn kpolynomial_kl(v: &Permutation, w: &Permutation) -> Result<SparsePoly> {
    check_kl_input(v, w)?;
    let lw = w.length();
    let base = one_minus_t();
    let mut acc = SparsePoly::zero();
    for p in enumerate_pipes(v, w, true) {
        let k = p.cells.len();
        acc = &acc + &base.pow(k as u32).scalar_mul(&sign(k - lw));
    }
    Ok(acc)
}

/// Max #P over barred Pipes(v, w), after checking the KL preconditions.
pub fn max_barred_pipe(v: &Permutation, w: &Permutation) -> Result<PipeSubset> {
    check_kl_input(v, w)?;
    enumerate_pipes(v, w, true)
        .into_iter()
        .max_by(|a, b| a.cells.len().cmp(&b.cells.len()).then_with(|| b.cmp(a)))
        .ok_or_else(|| Error::InternalMismatch(format!("no barred pipes for ({v}, {w})")))
}

/// Σ over K-excited diagrams of (μ(v), λ(v)) of (−1)^{#D−|λ|} Π (x_i ⊕ y_j).
pub fn excited_expansion(v: &Permutation) -> Result<SparsePoly> {
    let vd = vexillary_data(v)?;
    let base = vd.shape.size();
    let mut acc = SparsePoly::zero();
    for d in enumerate_kexcited(&vd.envelope, &vd.shape)? {
        let mut term = SparsePoly::constant(1).scalar_mul(&sign(d.len() - base));
        for (i, j) in d.iter() {
            term = &term * &SparsePoly::x(i as u32).oplus(&SparsePoly::y(j as u32));
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionStep {
    pub source: Permutation,
    pub maximal_corner: Cell,
    pub pivot: Permutation,
    pub companion: Option<Permutation>,
    pub accessible: bool,
}

pub fn transition_step(v: &Permutation) -> Result<TransitionStep> {
    if !v.is_vexillary() {
        return Err(Error::NotVexillary(v.to_string()));
    }
    let d = v.rothe_diagram();
    let (r, s) = d.iter().max_by_key(|&(i, j)| (i, j)).ok_or(Error::IdentityHasNoCorner)?;
    let pivot = v.swap_positions(r, v.inverse().at(s));
    let lp = pivot.length();
    let pw = pivot.oneline();
    // i < r with ℓ(v_P t_{i,r}) = ℓ(v_P) + 1
    let companions: Vec<usize> = (1..r)
        .filter(|&i| {
            pw[i - 1] < pw[r - 1] && !(i + 1..r).any(|k| pw[i - 1] < pw[k - 1] && pw[k - 1] < pw[r - 1])
        })
        .collect();
    if companions.len() > 1 {
        return Err(Error::InternalMismatch(format!("{v} has {} companions", companions.len())));
    }
    let companion = companions.first().map(|&i| pivot.swap_positions(i, r));
    debug_assert!(companion.as_ref().map_or(true, |c| c.length() == lp + 1));
    let accessible = !v.dominant_component().contains((r, s))
        && !d.iter().any(|(i, j)| (i, j) != (r, s) && i >= r && j >= s);
    Ok(TransitionStep { source: v.clone(), maximal_corner: (r, s), pivot, companion, accessible })
}

/// deg 𝔊_v through the transition recursion, never touching polynomials.
pub fn vexillary_degree_by_transition(v: &Permutation) -> Result<usize> {
    fn go(v: &Permutation, memo: &mut HashMap<Permutation, usize>) -> Result<usize> {
        let v = v.trimmed();
        if v.is_identity() {
            return Ok(0);
        }
        if let Some(&d) = memo.get(&v) {
            return Ok(d);
        }
        let step = transition_step(&v)?;
        let dp = go(&step.pivot, memo)?;
        let d = match &step.companion {
            None => dp + 1,
            Some(c) => dp.max(go(c, memo)?) + 1,
        };
        memo.insert(v, d);
        Ok(d)
    }
    if !v.is_vexillary() {
        return Err(Error::NotVexillary(v.to_string()));
    }
    go(v, &mut HashMap::new())
}

/// 𝔊_v(x) through the transition recursion: x_r 𝔊_{v_P} + (1 − x_r) 𝔊_{v_C}.
pub fn vexillary_grothendieck_by_transition(v: &Permutation) -> Result<SparsePoly> {
    fn go(v: &Permutation, memo: &mut HashMap<Permutation, SparsePoly>) -> Result<SparsePoly> {
        let v = v.trimmed();
        if v.is_identity() {
            return Ok(SparsePoly::one());
        }
        if let Some(p) = memo.get(&v) {
            return Ok(p.clone());
        }
        let step = transition_step(&v)?;
        let xr = SparsePoly::x(step.maximal_corner.0 as u32);
        let mut p = &xr * &go(&step.pivot, memo)?;
        if let Some(c) = &step.companion {
            p = &p + &(&(&SparsePoly::one() - &xr) * &go(c, memo)?);
        }
        memo.insert(v, p.clone());
        Ok(p)
    }
    if !v.is_vexillary() {
        return Err(Error::NotVexillary(v.to_string()));
    }
    go(v, &mut HashMap::new())
}
