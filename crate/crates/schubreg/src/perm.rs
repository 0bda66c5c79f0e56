//! Permutations of [n], Rothe diagrams and the order-theoretic primitives.
//!
//! Everything is 1-indexed in matrix convention: cell (i, j) is row i, column j,
//! row 1 at the top.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Cell = (usize, usize);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    oneline: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::from_one_line(&v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.oneline
    }
}

impl Permutation {
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::NotAPermutation("empty sequence".into()));
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in values {
            if v == 0 || v > n {
                return Err(Error::NotAPermutation(format!("value {v} outside [1,{n}]")));
            }
            if seen[v] {
                return Err(Error::NotAPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { oneline: values.to_vec() })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { oneline: (1..=n.max(1)).collect() }
    }

    pub fn longest(n: usize) -> Self {
        Permutation { oneline: (1..=n.max(1)).rev().collect() }
    }

    /// The simple transposition s_i in S_n.
    pub fn simple(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange(format!("s_{i} in S_{n}")));
        }
        let mut w = Self::identity(n);
        w.oneline.swap(i - 1, i);
        Ok(w)
    }

    /// Builds the permutation with the given Lehmer code, in the smallest S_n that fits.
    pub fn from_code(code: &[usize]) -> Self {
        let n = code
            .iter()
            .enumerate()
            .map(|(i, &c)| i + 1 + c)
            .max()
            .unwrap_or(1)
            .max(code.len())
            .max(1);
        let mut unused: Vec<usize> = (1..=n).collect();
        let mut out = Vec::with_capacity(n);
        for &c in code {
            out.push(unused.remove(c));
        }
        out.extend(unused);
        Permutation { oneline: out }.trimmed()
    }

    pub fn n(&self) -> usize {
        self.oneline.len()
    }

    pub fn oneline(&self) -> &[usize] {
        &self.oneline
    }

    /// w_i, with fixed points beyond n.
    pub fn at(&self, i: usize) -> usize {
        if i >= 1 && i <= self.n() {
            self.oneline[i - 1]
        } else {
            i
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.oneline.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { oneline: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.oneline.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Appends fixed points up to size m (no-op if m <= n).
    pub fn embed(&self, m: usize) -> Self {
        let mut v = self.oneline.clone();
        for k in self.n() + 1..=m {
            v.push(k);
        }
        Permutation { oneline: v }
    }

    /// Drops trailing fixed points, keeping at least S_1.
    pub fn trimmed(&self) -> Self {
        let mut v = self.oneline.clone();
        while v.len() > 1 && *v.last().unwrap() == v.len() {
            v.pop();
        }
        Permutation { oneline: v }
    }

    /// Composition (self ∘ other)(i) = self(other(i)), embedding as needed.
    pub fn compose(&self, other: &Permutation) -> Self {
        let m = self.n().max(other.n());
        Permutation { oneline: (1..=m).map(|i| self.at(other.at(i))).collect() }
    }

    /// Right multiplication by the transposition t_{i,j}: swaps positions i and j.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut w = self.embed(i.max(j));
        w.oneline.swap(i - 1, j - 1);
        w
    }

    pub fn rank(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.n();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange(format!("({i},{j}) outside [1,{n}]^2")));
        }
        Ok(self.rank_unchecked(i, j))
    }

    /// r_w(i,j) for any i, j >= 0, treating w as fixing everything beyond n.
    pub fn rank_unchecked(&self, i: usize, j: usize) -> usize {
        (1..=i).filter(|&k| self.at(k) <= j).count()
    }

    /// The full n x n rank matrix, row-major, 0-based storage of 1-based ranks.
    pub fn rank_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut r = vec![vec![0; n + 1]; n + 1];
        for i in 1..=n {
            for j in 1..=n {
                r[i][j] = r[i - 1][j] + r[i][j - 1] - r[i - 1][j - 1]
                    + usize::from(self.oneline[i - 1] == j);
            }
        }
        r
    }

    pub fn rothe_diagram(&self) -> Diagram {
        let inv = self.inverse();
        let n = self.n();
        let mut cells = BTreeSet::new();
        for i in 1..=n {
            for j in 1..=n {
                if self.at(i) > j && inv.at(j) > i {
                    cells.insert((i, j));
                }
            }
        }
        Diagram { cells }
    }

    pub fn code(&self) -> Vec<usize> {
        let n = self.n();
        (0..n)
            .map(|i| (i + 1..n).filter(|&k| self.oneline[k] < self.oneline[i]).count())
            .collect()
    }

    /// L(code(w)): the last index with a nonzero code entry, 0 for the identity.
    pub fn last_code_index(&self) -> usize {
        self.code().iter().rposition(|&c| c > 0).map_or(0, |p| p + 1)
    }

    pub fn length(&self) -> usize {
        let n = self.n();
        let mut l = 0;
        for i in 0..n {
            for k in i + 1..n {
                if self.oneline[i] > self.oneline[k] {
                    l += 1;
                }
            }
        }
        l
    }

    pub fn essential_set(&self) -> Diagram {
        let d = self.rothe_diagram();
        let cells = d
            .iter()
            .filter(|&(i, j)| !d.contains((i + 1, j)) && !d.contains((i, j + 1)))
            .collect();
        Diagram { cells }
    }

    /// Dom(w): the connected component of D(w) containing (1,1).
    pub fn dominant_component(&self) -> Diagram {
        let d = self.rothe_diagram();
        let mut comp = BTreeSet::new();
        if !d.contains((1, 1)) {
            return Diagram { cells: comp };
        }
        let mut stack = vec![(1, 1)];
        comp.insert((1, 1));
        while let Some((i, j)) = stack.pop() {
            let mut nbrs = vec![(i + 1, j), (i, j + 1)];
            if i > 1 {
                nbrs.push((i - 1, j));
            }
            if j > 1 {
                nbrs.push((i, j - 1));
            }
            for c in nbrs {
                if d.contains(c) && comp.insert(c) {
                    stack.push(c);
                }
            }
        }
        Diagram { cells: comp }
    }

    /// Dominant permutations are exactly those whose diagram is a partition at (1,1).
    pub fn is_dominant(&self) -> bool {
        self.code().windows(2).all(|w| w[0] >= w[1])
    }

    pub fn contains_pattern(&self, p: &Pattern) -> bool {
        let k = p.0.len();
        if k > self.n() {
            return false;
        }
        let mut chosen = Vec::with_capacity(k);
        self.pattern_search(&p.0, 0, &mut chosen)
    }

    fn pattern_search(&self, p: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
        let m = chosen.len();
        if m == p.len() {
            return true;
        }
        let remaining = p.len() - m;
        for pos in start..=self.n() - remaining {
            let val = self.oneline[pos];
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(t, &prev)| (prev < val) == (p[t] < p[m]));
            if consistent {
                chosen.push(val);
                if self.pattern_search(p, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    pub fn avoids_1432(&self) -> bool {
        !self.contains_pattern(&Pattern::p1432())
    }

    pub fn is_vexillary(&self) -> bool {
        !self.contains_pattern(&Pattern::p2143())
    }

    pub fn is_321_avoiding(&self) -> bool {
        !self.contains_pattern(&Pattern::p321())
    }

    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&k| self.oneline[k - 1] > self.oneline[k]).collect()
    }

    /// Exactly one descent; the identity is not Grassmannian.
    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() == 1
    }

    pub fn grassmannian_descent(&self) -> Option<usize> {
        match self.descents().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    /// Positions of the inversions as value pairs (a < b with b before a).
    pub fn value_inversions(&self) -> BTreeSet<(usize, usize)> {
        let mut s = BTreeSet::new();
        for i in 0..self.n() {
            for k in i + 1..self.n() {
                if self.oneline[i] > self.oneline[k] {
                    s.insert((self.oneline[k], self.oneline[i]));
                }
            }
        }
        s
    }

    /// Reconstructs a permutation from its Rothe diagram.
    pub fn from_rothe_diagram(d: &Diagram) -> Result<Self> {
        let rows = d.iter().map(|c| c.0).max().unwrap_or(0);
        let code: Vec<usize> = (1..=rows).map(|i| d.row(i).count()).collect();
        let w = Permutation::from_code(&code);
        if w.rothe_diagram() != *d {
            return Err(Error::ReconstructionFailure(d.to_string()));
        }
        Ok(w)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.oneline.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// Accepts comma/whitespace separated one-line notation, or a bare digit
/// string like "1462375" when every value is a single digit.
impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let has_sep = s.contains(|c: char| c == ',' || c.is_whitespace());
        let values: Vec<usize> = if has_sep {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad character {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::from_one_line(&values)
    }
}

/// A finite set of grid cells kept in row-major order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagram {
    cells: BTreeSet<Cell>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    pub fn insert(&mut self, c: Cell) -> bool {
        self.cells.insert(c)
    }

    pub fn remove(&mut self, c: Cell) -> bool {
        self.cells.remove(&c)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn row(&self, i: usize) -> impl DoubleEndedIterator<Item = Cell> + '_ {
        self.cells.range((i, 0)..(i + 1, 0)).copied()
    }

    pub fn is_subset(&self, other: &Diagram) -> bool {
        self.cells.is_subset(&other.cells)
    }

    pub fn filter(&self, pred: impl Fn(Cell) -> bool) -> Diagram {
        self.iter().filter(|&c| pred(c)).collect()
    }

    pub fn max_row(&self) -> usize {
        self.iter().map(|c| c.0).max().unwrap_or(0)
    }

    pub fn max_col(&self) -> usize {
        self.iter().map(|c| c.1).max().unwrap_or(0)
    }

    /// Multiline picture: '#' for cells, '.' otherwise.
    pub fn render(&self) -> String {
        let (r, c) = (self.max_row(), self.max_col());
        let mut s = String::new();
        for i in 1..=r {
            for j in 1..=c {
                s.push(if self.contains((i, j)) { '#' } else { '.' });
            }
            s.push('\n');
        }
        s
    }
}

impl FromIterator<Cell> for Diagram {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        Diagram { cells: iter.into_iter().collect() }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(i, j)| format!("({i},{j})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern(Vec<usize>);

impl Pattern {
    pub fn new(values: &[usize]) -> Result<Self> {
        Permutation::from_one_line(values).map(|p| Pattern(p.oneline))
    }

    pub fn p1432() -> Self {
        Pattern(vec![1, 4, 3, 2])
    }

    pub fn p2143() -> Self {
        Pattern(vec![2, 1, 4, 3])
    }

    pub fn p321() -> Self {
        Pattern(vec![3, 2, 1])
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

/// Demazure (0-Hecke) product of a word of simple reflections in S_n.
pub fn demazure_product(word: &[usize], n: usize) -> Result<Permutation> {
    let mut w = Permutation::identity(n);
    for &i in word {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange(format!("letter {i} not in [1,{}]", n - 1)));
        }
        if w.oneline[i - 1] < w.oneline[i] {
            w.oneline.swap(i - 1, i);
        }
    }
    Ok(w)
}

pub fn is_reduced_word(word: &[usize], w: &Permutation) -> bool {
    let n = w.n().max(word.iter().map(|&i| i + 1).max().unwrap_or(1));
    match demazure_product(word, n) {
        Ok(d) => d == w.embed(n) && word.len() == w.length(),
        Err(_) => false,
    }
}

/// w <= v in Bruhat order, via r_w >= r_v entrywise.
pub fn bruhat_leq(w: &Permutation, v: &Permutation) -> bool {
    let n = w.n().max(v.n());
    let (rw, rv) = (w.embed(n).rank_matrix(), v.embed(n).rank_matrix());
    (1..=n).all(|i| (1..=n).all(|j| rw[i][j] >= rv[i][j]))
}

/// All permutations of [n] in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation { oneline: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}
