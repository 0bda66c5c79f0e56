//! Flagged set-valued tableaux on Rothe diagrams (FSVD) and on the shape of a
//! vexillary permutation (FSVT), their weight expansions, and the maximal
//! fillings T_w and U_v.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Cell, Diagram, Permutation};
use crate::poly::SparsePoly;
use crate::stats::{max_antidiagonal_path, max_diagonal_path, sigma_k, vexillary_data};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Flavor {
    RotheShape,
    YoungShape,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetValuedFilling {
    pub flavor: Flavor,
    pub support: Diagram,
    pub entries: BTreeMap<Cell, Vec<usize>>,
}

#[derive(Serialize)]
struct CellJson<'a> {
    cell: [usize; 2],
    entries: &'a [usize],
}

impl SetValuedFilling {
    pub fn size(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn get(&self, c: Cell) -> Option<&[usize]> {
        self.entries.get(&c).map(Vec::as_slice)
    }

    /// One line per row; cells separated by '|', digits of a set run
    /// together unless some value has two digits, in which case they are
    /// space separated. Rows with no cells are left blank.
    pub fn render_text(&self) -> String {
        let wide = self.entries.values().flatten().any(|&v| v >= 10);
        let mut out = String::new();
        for i in 1..=self.support.max_row() {
            let cells: Vec<String> = self
                .support
                .row(i)
                .map(|c| {
                    let e = &self.entries[&c];
                    let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                    parts.join(if wide { " " } else { "" })
                })
                .collect();
            out.push_str(&cells.join("|"));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<CellJson> =
            self.entries.iter().map(|(&(r, c), e)| CellJson { cell: [r, c], entries: e }).collect();
        serde_json::to_value(cells).expect("plain data serializes")
    }
}

impl fmt::Display for SetValuedFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

/// Nearest support cell to the west in the same row, and to the north in the same column.
fn neighbours(support: &Diagram) -> (Vec<Cell>, Vec<Option<usize>>, Vec<Option<usize>>) {
    let cells: Vec<Cell> = support.iter().collect();
    let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let west = cells
        .iter()
        .map(|&(i, j)| support.row(i).filter(|&(_, jj)| jj < j).last().map(|c| index[&c]))
        .collect();
    let north = cells
        .iter()
        .map(|&(i, j)| (1..i).rev().find(|&ii| support.contains((ii, j))).map(|ii| index[&(ii, j)]))
        .collect();
    (cells, west, north)
}

struct Enumerator<'a, F: FnMut(&[Cell], &[Vec<usize>])> {
    cells: Vec<Cell>,
    west: Vec<Option<usize>>,
    north: Vec<Option<usize>>,
    flag: &'a dyn Fn(usize) -> usize,
    flavor: Flavor,
    budget: u64,
    count: u64,
    current: Vec<Vec<usize>>,
    visit: F,
}

impl<F: FnMut(&[Cell], &[Vec<usize>])> Enumerator<'_, F> {
    fn bounds(&self, k: usize) -> (usize, usize) {
        let row = self.cells[k].0;
        let mut lo = 1;
        let mut hi = (self.flag)(row);
        if let Some(n) = self.north[k] {
            lo = lo.max(self.current[n].last().unwrap() + 1);
        }
        if let Some(w) = self.west[k] {
            match self.flavor {
                // rows weakly decrease: max T(b) <= min T(a)
                Flavor::RotheShape => hi = hi.min(self.current[w][0]),
                // rows weakly increase: min T(b) >= max T(a)
                Flavor::YoungShape => lo = lo.max(*self.current[w].last().unwrap()),
            }
        }
        (lo, hi)
    }

    fn run(&mut self, k: usize) -> Result<()> {
        if k == self.cells.len() {
            self.count += 1;
            if self.count > self.budget {
                return Err(Error::EnumerationBudgetExceeded(self.budget));
            }
            (self.visit)(&self.cells, &self.current);
            return Ok(());
        }
        let (lo, hi) = self.bounds(k);
        if lo > hi {
            return Ok(());
        }
        let width = hi - lo + 1;
        for mask in 1u64..(1u64 << width) {
            self.current[k] = (0..width).filter(|b| mask >> b & 1 == 1).map(|b| lo + b).collect();
            self.run(k + 1)?;
        }
        self.current[k].clear();
        Ok(())
    }
}

fn enumerate_on(
    support: &Diagram,
    flavor: Flavor,
    flag: &dyn Fn(usize) -> usize,
    budget: u64,
    visit: impl FnMut(&[Cell], &[Vec<usize>]),
) -> Result<u64> {
    let (cells, west, north) = neighbours(support);
    let m = cells.len();
    let mut e = Enumerator {
        cells,
        west,
        north,
        flag,
        flavor,
        budget,
        count: 0,
        current: vec![Vec::new(); m],
        visit,
    };
    e.run(0)?;
    Ok(e.count)
}

fn require_1432(w: &Permutation) -> Result<()> {
    if w.avoids_1432() {
        Ok(())
    } else {
        Err(Error::Not1432Avoiding(w.to_string()))
    }
}

/// Visits every element of FSVD(w) without materializing the set.
pub fn for_each_fsvd(
    w: &Permutation,
    budget: u64,
    mut visit: impl FnMut(&[Cell], &[Vec<usize>]),
) -> Result<u64> {
    require_1432(w)?;
    enumerate_on(&w.rothe_diagram(), Flavor::RotheShape, &|row| row, budget, |c, e| visit(c, e))
}

/// Visits every element of FSVT(v).
pub fn for_each_fsvt(
    v: &Permutation,
    budget: u64,
    mut visit: impl FnMut(&[Cell], &[Vec<usize>]),
) -> Result<u64> {
    let vd = vexillary_data(v)?;
    let flag = vd.flag.clone();
    enumerate_on(&vd.shape.cells(), Flavor::YoungShape, &move |row| flag[row - 1], budget, |c, e| {
        visit(c, e)
    })
}

fn collect(
    flavor: Flavor,
    support: Diagram,
    run: impl FnOnce(&mut dyn FnMut(&[Cell], &[Vec<usize>])) -> Result<u64>,
) -> Result<Vec<SetValuedFilling>> {
    let mut out = Vec::new();
    run(&mut |cells, entries| {
        out.push(SetValuedFilling {
            flavor,
            support: support.clone(),
            entries: cells.iter().copied().zip(entries.iter().cloned()).collect(),
        })
    })?;
    out.sort();
    Ok(out)
}

pub fn enumerate_fsvd(w: &Permutation, budget: u64) -> Result<Vec<SetValuedFilling>> {
    require_1432(w)?;
    collect(Flavor::RotheShape, w.rothe_diagram(), |f| for_each_fsvd(w, budget, f))
}

pub fn enumerate_fsvt(v: &Permutation, budget: u64) -> Result<Vec<SetValuedFilling>> {
    let support = vexillary_data(v)?.shape.cells();
    collect(Flavor::YoungShape, support, |f| for_each_fsvt(v, budget, f))
}

/// Checks the FSVD conditions pairwise over all cells, independently of the enumerator.
pub fn is_fsvd(w: &Permutation, t: &SetValuedFilling) -> bool {
    let d = w.rothe_diagram();
    if t.flavor != Flavor::RotheShape || t.support != d || t.entries.keys().copied().collect::<Diagram>() != d {
        return false;
    }
    let valid_sets = t.entries.iter().all(|(&(r, _), e)| {
        !e.is_empty() && e.windows(2).all(|p| p[0] < p[1]) && e[0] >= 1 && *e.last().unwrap() <= r
    });
    valid_sets
        && t.entries.iter().all(|(&(r1, c1), a)| {
            t.entries.iter().all(|(&(r2, c2), b)| {
                let column_ok = !(c1 == c2 && r1 < r2) || a.last().unwrap() < b.first().unwrap();
                let row_ok = !(r1 == r2 && c1 < c2) || a.first().unwrap() >= b.last().unwrap();
                column_ok && row_ok
            })
        })
}

/// Checks the FSVT conditions pairwise over all cells.
pub fn is_fsvt(v: &Permutation, t: &SetValuedFilling) -> bool {
    let Ok(vd) = vexillary_data(v) else {
        return false;
    };
    let shape = vd.shape.cells();
    if t.flavor != Flavor::YoungShape
        || t.support != shape
        || t.entries.keys().copied().collect::<Diagram>() != shape
    {
        return false;
    }
    let valid_sets = t.entries.iter().all(|(&(r, _), e)| {
        !e.is_empty() && e.windows(2).all(|p| p[0] < p[1]) && e[0] >= 1 && *e.last().unwrap() <= vd.flag[r - 1]
    });
    valid_sets
        && t.entries.iter().all(|(&(r1, c1), a)| {
            t.entries.iter().all(|(&(r2, c2), b)| {
                let column_ok = !(c1 == c2 && r1 < r2) || a.last().unwrap() < b.first().unwrap();
                let row_ok = !(r1 == r2 && c1 < c2) || a.last().unwrap() <= b.first().unwrap();
                column_ok && row_ok
            })
        })
}

fn signed(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn sum_weights(
    base: usize,
    run: impl FnOnce(&mut dyn FnMut(&[Cell], &[Vec<usize>])) -> Result<u64>,
    y_index: impl Fn(Cell, usize, usize) -> usize,
) -> Result<SparsePoly> {
    // memo of x_a ⊕ y_b factors
    let mut factors: BTreeMap<(usize, usize), SparsePoly> = BTreeMap::new();
    let mut acc = SparsePoly::zero();
    run(&mut |cells, entries| {
        let mut term = SparsePoly::one();
        let mut total = 0;
        let mut pos_in_row = 0;
        for (k, (&cell, e)) in cells.iter().zip(entries).enumerate() {
            pos_in_row = if k > 0 && cells[k - 1].0 == cell.0 { pos_in_row + 1 } else { 1 };
            for &val in e {
                total += 1;
                let yi = y_index(cell, pos_in_row, val);
                let f = factors
                    .entry((val, yi))
                    .or_insert_with(|| SparsePoly::x(val as u32).oplus(&SparsePoly::y(yi as u32)));
                term = &term * f;
            }
        }
        acc = &acc + &term.scalar_mul(&signed(total - base));
    })?;
    Ok(acc)
}

/// Σ over FSVD(w) of (−1)^{#T−#D(w)} Π (x_val ⊕ y_{λ_r + φ_r − c − val + 1}) with
/// λ_r = code_r, φ_r = r and c the position of the cell counted from the
/// right end of its row, so the y index is r + p − val for the p-th cell from the left.
pub fn fsvd_expansion(w: &Permutation, budget: u64) -> Result<SparsePoly> {
    require_1432(w)?;
    let base = w.length();
    sum_weights(base, |f| for_each_fsvd(w, budget, f), |(r, _), p, val| r + p - val)
}

/// Σ over FSVT(v) of (−1)^{#T−|λ|} Π (x_val ⊕ y_{val + c − r}).
pub fn fsvt_expansion(v: &Permutation, budget: u64) -> Result<SparsePoly> {
    let base = vexillary_data(v)?.shape.size();
    sum_weights(base, |f| for_each_fsvt(v, budget, f), |(r, c), _, val| val + c - r)
}

/// The maximal FSVD filling T_w built by inserting along extremal diagonal paths.
pub fn construct_t_w(w: &Permutation) -> Result<SetValuedFilling> {
    require_1432(w)?;
    let d = w.rothe_diagram();
    let mut entries: BTreeMap<Cell, Vec<usize>> = d.iter().map(|c| (c, vec![c.0])).collect();
    for k in 1..w.last_code_index() {
        let path = max_diagonal_path(&sigma_k(w, k)?);
        if path.is_empty() {
            continue;
        }
        // weakly northeast of some path cell, but not above the path's first row
        let top = path[0].0;
        let north_east: Vec<Cell> = d
            .iter()
            .filter(|c| !path.contains(c) && c.0 >= top && path.iter().any(|&(p, q)| c.0 <= p && c.1 >= q))
            .collect();
        for c in &path {
            let e = entries.get_mut(c).unwrap();
            e.insert(0, e[0] - 1);
        }
        for c in north_east {
            for v in entries.get_mut(&c).unwrap() {
                *v -= 1;
            }
        }
    }
    Ok(SetValuedFilling { flavor: Flavor::RotheShape, support: d, entries })
}

/// The maximal FSVT filling U_v built by inserting along extremal antidiagonal paths.
pub fn construct_u_v(v: &Permutation) -> Result<SetValuedFilling> {
    let vd = vexillary_data(v)?;
    let shape = vd.shape.cells();
    let mut entries: BTreeMap<Cell, Vec<usize>> = shape.iter().map(|c| (c, vec![c.0])).collect();
    for k in 1..=vd.max_filling() {
        let path = max_antidiagonal_path(&vd.tau(k));
        let south_east: Vec<Cell> = shape
            .iter()
            .filter(|c| !path.contains(c) && path.iter().any(|&(p, q)| c.0 >= p && c.1 >= q))
            .collect();
        for c in &path {
            let e = entries.get_mut(c).unwrap();
            e.push(e.last().unwrap() + 1);
        }
        for c in south_east {
            for v in entries.get_mut(&c).unwrap() {
                *v += 1;
            }
        }
    }
    Ok(SetValuedFilling { flavor: Flavor::YoungShape, support: shape, entries })
}
