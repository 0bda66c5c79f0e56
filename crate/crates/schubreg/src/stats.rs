//! Partitions, diagonal/antidiagonal path statistics, vexillary shape data
//! and excited Young diagrams.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Cell, Diagram, Permutation};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(&v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    /// Trailing zeros are dropped.
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        let mut parts = parts.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// λ_i with λ_i = 0 past the end (1-indexed).
    pub fn part(&self, i: usize) -> usize {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn contains_cell(&self, (i, j): Cell) -> bool {
        i >= 1 && j >= 1 && j <= self.part(i)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.parts.len() <= self.parts.len()
            && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn cells(&self) -> Diagram {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (1..=l).map(move |j| (i + 1, j)))
            .collect()
    }

    /// Removes the first i columns.
    pub fn trunc(&self, i: usize) -> Partition {
        Partition { parts: self.parts.iter().filter(|&&l| l > i).map(|&l| l - i).collect() }
    }

    /// sv(λ) = max k with the staircase (k, k−1, ..., 1) ⊆ λ.
    pub fn staircase_sv(&self) -> usize {
        (0..)
            .take_while(|&k| (1..=k).all(|i| self.part(i) >= k + 1 - i))
            .last()
            .unwrap_or(0)
    }

    /// Smallest partition containing every cell of the diagram.
    pub fn envelope(d: &Diagram) -> Partition {
        let rows = d.max_row();
        let mut parts = vec![0; rows];
        for (i, j) in d.iter() {
            parts[i - 1] = parts[i - 1].max(j);
        }
        for i in (0..rows.saturating_sub(1)).rev() {
            parts[i] = parts[i].max(parts[i + 1]);
        }
        Partition::new(&parts).expect("suffix maxima are weakly decreasing")
    }

    /// All partitions of n, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<usize> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?}"))))
            .collect::<Result<_>>()?;
        Partition::new(&parts)
    }
}

fn longest_chain(cells: &Diagram, follows: impl Fn(Cell, Cell) -> bool) -> Vec<Cell> {
    // best[k] = length of the longest chain starting at cells[k]
    let cs: Vec<Cell> = cells.iter().collect();
    let m = cs.len();
    let mut best = vec![1usize; m];
    for a in (0..m).rev() {
        for b in a + 1..m {
            if follows(cs[a], cs[b]) {
                best[a] = best[a].max(best[b] + 1);
            }
        }
    }
    let Some(&top) = best.iter().max() else {
        return Vec::new();
    };
    // greedy choice of the smallest admissible cell gives the lexicographically least chain
    let mut path = Vec::with_capacity(top);
    let mut need = top;
    let mut prev: Option<Cell> = None;
    for k in 0..m {
        if need == 0 {
            break;
        }
        let ok = prev.map_or(true, |p| follows(p, cs[k]));
        if ok && best[k] == need {
            path.push(cs[k]);
            prev = Some(cs[k]);
            need -= 1;
        }
    }
    path
}

/// Longest chain strictly increasing in both row and column, choosing the
/// northmost-then-westmost one among those of maximum size.
pub fn max_diagonal_path(cells: &Diagram) -> Vec<Cell> {
    longest_chain(cells, |a, b| b.0 > a.0 && b.1 > a.1)
}

/// Longest chain with rows increasing and columns decreasing.
pub fn max_antidiagonal_path(cells: &Diagram) -> Vec<Cell> {
    longest_chain(cells, |a, b| b.0 > a.0 && b.1 < a.1)
}

pub fn rho_d(cells: &Diagram) -> usize {
    max_diagonal_path(cells).len()
}

pub fn rho_a(cells: &Diagram) -> usize {
    max_antidiagonal_path(cells).len()
}

/// σ_k(w): cells of D(w) strictly southeast of (k, w_k).
pub fn sigma_k(w: &Permutation, k: usize) -> Result<Diagram> {
    if k == 0 || k > w.n() {
        return Err(Error::IndexOutOfRange(format!("k = {k} not in [1,{}]", w.n())));
    }
    let wk = w.at(k);
    Ok(w.rothe_diagram().filter(|(i, j)| i > k && j > wk))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VexillaryData {
    pub shape: Partition,
    pub envelope: Partition,
    pub flag: Vec<usize>,
    pub filling: BTreeMap<Cell, usize>,
}

impl VexillaryData {
    pub fn filling_rows(&self) -> Vec<Vec<usize>> {
        (1..=self.shape.num_parts())
            .map(|i| (1..=self.shape.part(i)).map(|j| self.filling[&(i, j)]).collect())
            .collect()
    }

    /// τ_k: cells of the shape whose filling is at least k.
    pub fn tau(&self, k: usize) -> Diagram {
        self.filling.iter().filter(|(_, &f)| f >= k).map(|(&c, _)| c).collect()
    }

    pub fn max_filling(&self) -> usize {
        self.filling.values().copied().max().unwrap_or(0)
    }
}

fn content(c: Cell) -> i64 {
    c.1 as i64 - c.0 as i64
}

pub fn vexillary_data(v: &Permutation) -> Result<VexillaryData> {
    if !v.is_vexillary() {
        return Err(Error::NotVexillary(v.to_string()));
    }
    let d = v.rothe_diagram();
    let mut code = v.code();
    code.sort_unstable_by(|a, b| b.cmp(a));
    let shape = Partition::new(&code).expect("sorted code");
    let envelope = Partition::envelope(&d);

    let flag = (1..=shape.num_parts())
        .map(|i| {
            let diag = shape.part(i) as i64 - i as i64;
            (1..=envelope.num_parts())
                .filter(|&j| {
                    let col = j as i64 + diag;
                    col >= 1 && envelope.contains_cell((j, col as usize))
                })
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut ranks_by_content: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for c in d.iter() {
        ranks_by_content.entry(content(c)).or_default().push(v.rank_unchecked(c.0, c.1));
    }
    let mut cells_by_content: BTreeMap<i64, Vec<Cell>> = BTreeMap::new();
    for c in shape.cells().iter() {
        cells_by_content.entry(content(c)).or_default().push(c);
    }
    let mut filling = BTreeMap::new();
    for (k, cells) in &cells_by_content {
        let mut ranks = ranks_by_content.get(k).cloned().unwrap_or_default();
        if ranks.len() != cells.len() {
            return Err(Error::InternalMismatch(format!(
                "diagonal {k} of D({v}) has {} cells but the shape has {}",
                ranks.len(),
                cells.len()
            )));
        }
        ranks.sort_unstable();
        for (c, r) in cells.iter().zip(ranks) {
            filling.insert(*c, r);
        }
    }
    if ranks_by_content.len() != cells_by_content.len() {
        return Err(Error::InternalMismatch(format!("diagonals of D({v}) and its shape differ")));
    }
    Ok(VexillaryData { shape, envelope, flag, filling })
}

pub fn tau_k(v: &Permutation, k: usize) -> Result<Diagram> {
    Ok(vexillary_data(v)?.tau(k))
}

fn check_contained(mu: &Partition, lambda: &Partition) -> Result<()> {
    if mu.contains(lambda) {
        Ok(())
    } else {
        Err(Error::ShapeNotContained { inner: lambda.to_string(), outer: mu.to_string() })
    }
}

pub fn d_top(mu: &Partition, lambda: &Partition) -> Result<Diagram> {
    check_contained(mu, lambda)?;
    Ok(lambda.cells())
}

/// Whether the 2x2 window at (i,j) permits a move: (i,j) ∈ D, the other
/// three cells are outside D, and all four lie in μ.
fn move_available(mu: &Partition, d: &Diagram, (i, j): Cell) -> bool {
    d.contains((i, j))
        && !d.contains((i, j + 1))
        && !d.contains((i + 1, j))
        && !d.contains((i + 1, j + 1))
        && mu.contains_cell((i + 1, j + 1))
}

fn closure(mu: &Partition, lambda: &Partition, k_moves: bool) -> Result<Vec<Diagram>> {
    let start = d_top(mu, lambda)?;
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        for c in d.iter() {
            if !move_available(mu, &d, c) {
                continue;
            }
            let mut moved = d.clone();
            moved.remove(c);
            moved.insert((c.0 + 1, c.1 + 1));
            let mut next = vec![moved];
            if k_moves {
                let mut grown = d.clone();
                grown.insert((c.0 + 1, c.1 + 1));
                next.push(grown);
            }
            for e in next {
                if seen.insert(e.clone()) {
                    queue.push_back(e);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// ExcitedYD(μ, λ): the plain excited-move closure of λ inside μ.
pub fn enumerate_excited(mu: &Partition, lambda: &Partition) -> Result<Vec<Diagram>> {
    closure(mu, lambda, false)
}

/// KExcitedYD(μ, λ): closure under both plain and K-theoretic moves.
pub fn enumerate_kexcited(mu: &Partition, lambda: &Partition) -> Result<Vec<Diagram>> {
    closure(mu, lambda, true)
}

pub fn d_bot(mu: &Partition, lambda: &Partition) -> Result<Diagram> {
    let mut d = d_top(mu, lambda)?;
    loop {
        let mut moved = false;
        let cells: Vec<Cell> = d.iter().collect();
        for c in cells {
            if move_available(mu, &d, c) {
                d.remove(c);
                d.insert((c.0 + 1, c.1 + 1));
                moved = true;
            }
        }
        if !moved {
            return Ok(d);
        }
    }
}

/// The vexillary permutation whose Rothe diagram is D_bot(μ, λ).
pub fn vexillary_from_shapes(mu: &Partition, lambda: &Partition) -> Result<Permutation> {
    let d = d_bot(mu, lambda)?;
    let v = Permutation::from_rothe_diagram(&d)?;
    if !v.is_vexillary() {
        return Err(Error::ReconstructionFailure(format!("{v} is not vexillary")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partitions() {
        let l = part("(3,2,2,0)");
        assert_eq!(l.to_string(), "(3,2,2)");
        assert_eq!(l.size(), 7);
        assert_eq!(l.staircase_sv(), 3);
        assert_eq!(l.trunc(2), part("(1)"));
        assert_eq!(l.trunc(2).staircase_sv(), 1);
        assert_eq!(l.trunc(0), l);
        assert_eq!(Partition::empty().staircase_sv(), 0);
        assert!("(1,2)".parse::<Partition>().is_err());
        assert_eq!(Partition::all_of_size(5).len(), 7);
    }

    #[test]
    fn path_stats() {
        assert_eq!(rho_d(&Diagram::new()), 0);
        let w = p("1462375");
        assert_eq!(rho_d(&sigma_k(&w, 1).unwrap()), 3);
        assert!(sigma_k(&w, 3).unwrap().is_empty());
        assert_eq!(sigma_k(&w, 1).unwrap().len(), 6);
        assert!(sigma_k(&w, 8).is_err());
        let v = p("169247358");
        assert_eq!(rho_a(&tau_k(&v, 1).unwrap()), 4);
    }

    #[test]
    fn vexillary_example() {
        let vd = vexillary_data(&p("169247358")).unwrap();
        assert_eq!(vd.shape, part("(6,4,2,1)"));
        assert_eq!(vd.envelope, part("(8,8,8,5,5,5)"));
        assert_eq!(vd.flag, vec![3, 3, 6, 6]);
        assert_eq!(
            vd.filling_rows(),
            vec![vec![1, 1, 1, 1, 2, 2], vec![1, 1, 1, 1], vec![2, 3], vec![2]]
        );
        assert_eq!(vd.tau(1).len(), 13);
        assert_eq!(vd.tau(3).iter().collect::<Vec<_>>(), vec![(3, 2)]);
        assert!(vd.tau(4).is_empty());
        assert!(matches!(vexillary_data(&p("2143")), Err(Error::NotVexillary(_))));
    }

    #[test]
    fn excited() {
        let mu = part("(6,6,4,4,4)");
        let lambda = part("(5,4,2,1)");
        let bot = d_bot(&mu, &lambda).unwrap();
        assert_eq!(vexillary_from_shapes(&mu, &lambda).unwrap(), p("5713624"));
        assert_eq!(bot, p("5713624").rothe_diagram());
        assert_eq!(enumerate_kexcited(&part("(2,2)"), &part("(1)")).unwrap().len(), 3);
        let l = part("(2,1)");
        assert_eq!(enumerate_kexcited(&l, &l).unwrap(), vec![l.cells()]);
        assert!(matches!(
            d_bot(&part("(1)"), &part("(2)")),
            Err(Error::ShapeNotContained { .. })
        ));
    }
}
