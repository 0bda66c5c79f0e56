//! One-sided mixed ladder determinantal ideals: validation, the reduction to
//! a vexillary permutation and to a Grassmannian Kazhdan-Lusztig pair,
//! regularity, and ideal presentations with a Macaulay2 export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::{Cell, Permutation};
use crate::regularity::{reg_grassmannian_patch, RegularityReport, Witness, Method};
use crate::stats::{rho_a, vexillary_data};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedPoint {
    pub r: usize,
    pub c: usize,
    pub d: usize,
}

/// On-disk form. Exactly one of `se_corners` and `row_lengths` is given.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub se_corners: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_lengths: Option<Vec<usize>>,
    pub points: Vec<MarkedPoint>,
}

/// A validated ladder. Points are kept in northeast-to-southwest order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ladder {
    row_lengths: Vec<usize>,
    points: Vec<MarkedPoint>,
}

fn corners_to_rows(corners: &[Cell]) -> Result<Vec<usize>> {
    if corners.is_empty() {
        return Err(Error::InvalidCorners("no corners".into()));
    }
    if corners.iter().any(|&(a, b)| a == 0 || b == 0) {
        return Err(Error::InvalidCorners("coordinates are 1-indexed".into()));
    }
    if corners.windows(2).any(|w| w[1].0 <= w[0].0 || w[1].1 >= w[0].1) {
        return Err(Error::InvalidCorners(
            "rows must strictly increase and columns strictly decrease".into(),
        ));
    }
    let mut rows = Vec::new();
    for &(a, b) in corners {
        rows.resize(a, b);
    }
    Ok(rows)
}

impl Ladder {
    pub fn from_corners(corners: &[Cell], points: &[MarkedPoint]) -> Result<Self> {
        Self::from_row_lengths(&corners_to_rows(corners)?, points)
    }

    pub fn from_row_lengths(rows: &[usize], points: &[MarkedPoint]) -> Result<Self> {
        if rows.is_empty() || rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidCorners(format!(
                "row lengths {rows:?} must be positive and weakly decreasing"
            )));
        }
        let mut points = points.to_vec();
        points.sort_by(|p, q| p.c.cmp(&q.c).then(q.d.cmp(&p.d)));
        let ladder = Ladder { row_lengths: rows.to_vec(), points };
        ladder.validate()?;
        Ok(ladder)
    }

    pub fn from_file(f: &LadderFile) -> Result<Self> {
        match (&f.se_corners, &f.row_lengths) {
            (Some(c), None) => {
                let corners: Vec<Cell> = c.iter().map(|&[a, b]| (a, b)).collect();
                Self::from_corners(&corners, &f.points)
            }
            (None, Some(r)) => Self::from_row_lengths(r, &f.points),
            _ => Err(Error::Parse("give exactly one of se_corners and row_lengths".into())),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: LadderFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&f)
    }

    pub fn to_file(&self) -> LadderFile {
        LadderFile {
            se_corners: Some(self.se_corners().into_iter().map(|(a, b)| [a, b]).collect()),
            row_lengths: None,
            points: self.points.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.to_file()).expect("plain data serializes")
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    pub fn points(&self) -> &[MarkedPoint] {
        &self.points
    }

    pub fn num_rows(&self) -> usize {
        self.row_lengths.len()
    }

    /// ℓ_i, zero below the last row.
    pub fn row_length(&self, i: usize) -> usize {
        if i >= 1 && i <= self.row_lengths.len() {
            self.row_lengths[i - 1]
        } else {
            0
        }
    }

    pub fn contains(&self, (i, j): Cell) -> bool {
        j >= 1 && j <= self.row_length(i)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (1..=self.num_rows()).flat_map(move |i| (1..=self.row_length(i)).map(move |j| (i, j)))
    }

    /// Southeast corners, northeast to southwest.
    pub fn se_corners(&self) -> Vec<Cell> {
        (1..=self.num_rows())
            .filter(|&i| self.row_length(i + 1) < self.row_length(i))
            .map(|i| (i, self.row_length(i)))
            .collect()
    }

    /// Cells whose southeast vertex lies on the boundary path.
    pub fn on_boundary(&self, (c, d): Cell) -> bool {
        c >= 1 && d >= 1 && d <= self.row_length(c) && d >= self.row_length(c + 1)
    }

    fn validate(&self) -> Result<()> {
        for p in &self.points {
            if !self.on_boundary((p.c, p.d)) {
                return Err(Error::PointOffBoundary(p.c, p.d));
            }
            if p.r == 0 {
                return Err(Error::RankChainViolation(format!("rank at ({},{}) is 0", p.c, p.d)));
            }
            if p.r > p.c.min(p.d) {
                return Err(Error::RankChainViolation(format!(
                    "rank {} exceeds the size of the {}x{} region",
                    p.r, p.c, p.d
                )));
            }
        }
        for w in self.points.windows(2) {
            let (p, q) = (w[0], w[1]);
            if p.c - p.r >= q.c - q.r {
                return Err(Error::RankChainViolation(format!(
                    "c - r must strictly increase: ({},{}) gives {}, ({},{}) gives {}",
                    p.c,
                    p.d,
                    p.c - p.r,
                    q.c,
                    q.d,
                    q.c - q.r
                )));
            }
            if p.d - p.r <= q.d - q.r {
                return Err(Error::RankChainViolation(format!(
                    "d - r must strictly decrease: ({},{}) gives {}, ({},{}) gives {}",
                    p.c,
                    p.d,
                    p.d - p.r,
                    q.c,
                    q.d,
                    q.d - q.r
                )));
            }
        }
        for (i, j) in self.cells() {
            if !self.points.iter().any(|p| i <= p.c && j <= p.d) {
                return Err(Error::UncoveredVariable(i, j));
            }
        }
        Ok(())
    }

    /// A random valid ladder fitting in a grid x grid square. `below(k)` must
    /// return a uniform value in 0..k.
    pub fn random(grid: usize, below: &mut dyn FnMut(usize) -> usize) -> Ladder {
        assert!(grid >= 1);
        loop {
            let m = 1 + below(grid);
            let mut rows = vec![1 + below(grid)];
            for _ in 1..m {
                let prev = *rows.last().unwrap();
                rows.push(prev - below(prev.min(3)));
            }
            let shape = Ladder { row_lengths: rows.clone(), points: Vec::new() };
            let corners = shape.se_corners();
            let mut cells: Vec<Cell> = shape
                .cells()
                .filter(|&c| shape.on_boundary(c) && (corners.contains(&c) || below(2) == 0))
                .collect();
            cells.sort_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)));
            'attempt: for _ in 0..20 {
                // c − r strictly increasing and d − r strictly decreasing; extra
                // points that do not fit are dropped, corners must fit
                let mut points = Vec::with_capacity(cells.len());
                let (mut lo_x, mut hi_y) = (0usize, usize::MAX);
                for (idx, &(c, d)) in cells.iter().enumerate() {
                    let corner = corners.contains(&(c, d));
                    let corners_after = corners.iter().filter(|&&k| cells[idx + 1..].contains(&k)).count();
                    let r_max = c.min(d.saturating_sub(corners_after)).min((c + 1).saturating_sub(lo_x + 1));
                    let r_min = if hi_y == usize::MAX { 1 } else { (d + 1).saturating_sub(hi_y).max(1) };
                    if r_min > r_max || c < lo_x {
                        if corner {
                            continue 'attempt;
                        }
                        continue;
                    }
                    let r = r_max - below((r_max - r_min + 1).min(2));
                    points.push(MarkedPoint { r, c, d });
                    lo_x = c - r + 1;
                    hi_y = d - r;
                }
                if let Ok(l) = Ladder::from_row_lengths(&rows, &points) {
                    return l;
                }
            }
        }
    }

    /// n = number of rows + length of the first row.
    pub fn ambient_size(&self) -> usize {
        self.num_rows() + self.row_length(1)
    }
}

/// The permutation whose rank function is the largest one obeying
/// r(c, d) <= q at the given cells, if that function is a permutation's.
fn maximal_rank_permutation(rows: usize, cols: usize, bounds: &[(usize, usize, usize)]) -> Result<Permutation> {
    let n = rows.max(cols);
    let rank = |i: usize, j: usize| -> usize {
        let mut r = i.min(j);
        for &(c, d, q) in bounds {
            r = r.min(q + i.saturating_sub(c) + j.saturating_sub(d));
        }
        r
    };
    let mut oneline = Vec::with_capacity(n);
    for i in 1..=n {
        let mut hits = (1..=n).filter(|&j| rank(i, j) + rank(i - 1, j - 1) - rank(i - 1, j) - rank(i, j - 1) == 1);
        let j = hits.next().ok_or_else(|| Error::NoSuchPermutation(format!("row {i} has no 1")))?;
        if hits.next().is_some() {
            return Err(Error::NoSuchPermutation(format!("row {i} has two 1s")));
        }
        oneline.push(j);
    }
    let w = Permutation::from_one_line(&oneline).map_err(|e| Error::NoSuchPermutation(e.to_string()))?;
    // every density entry must be 0 or 1, not just one per row
    for i in 1..=n {
        for j in 1..=n {
            let dens = rank(i, j) as i64 + rank(i - 1, j - 1) as i64 - rank(i - 1, j) as i64 - rank(i, j - 1) as i64;
            if dens != i64::from(w.at(i) == j) {
                return Err(Error::NoSuchPermutation(format!("rank density at ({i},{j}) is {dens}")));
            }
        }
    }
    Ok(w)
}

/// The vexillary v with Ess(v) the marked points and r_v(c, d) = r − 1 there.
pub fn ladder_to_vexillary(l: &Ladder) -> Result<Permutation> {
    let bounds: Vec<(usize, usize, usize)> = l.points.iter().map(|p| (p.c, p.d, p.r - 1)).collect();
    let n = l.ambient_size();
    let v = maximal_rank_permutation(n, n, &bounds)?.trimmed();
    let ess: Vec<Cell> = v.essential_set().iter().collect();
    let mut want: Vec<Cell> = l.points.iter().map(|p| (p.c, p.d)).collect();
    want.sort();
    if ess != want {
        return Err(Error::NoSuchPermutation(format!("{v} has essential set {ess:?}, expected {want:?}")));
    }
    for p in &l.points {
        if v.rank_unchecked(p.c, p.d) != p.r - 1 {
            return Err(Error::NoSuchPermutation(format!("rank of {v} at ({},{}) is off", p.c, p.d)));
        }
    }
    if !v.is_vexillary() {
        return Err(Error::NoSuchPermutation(format!("{v} is not vexillary")));
    }
    Ok(v)
}

/// The Grassmannian pair (u, g) with common descent m = number of rows.
///
/// u places the ladder, flipped upside down, as D(u): u(i) = ℓ_{m+1−i} + i.
/// g takes the largest row-m rank function with r_g(m, d + m − c) <= r − 1 + m − c
/// at every marked point.
pub fn ladder_to_grassmannian_pair(l: &Ladder) -> Result<(Permutation, Permutation)> {
    let m = l.num_rows();
    let n = l.ambient_size();
    let top: Vec<usize> = (1..=m).map(|i| l.row_length(m + 1 - i) + i).collect();
    let u = complete_grassmannian(&top, n)?;

    let bounds: Vec<(usize, usize)> = l.points.iter().map(|p| (p.d + m - p.c, p.r - 1 + m - p.c)).collect();
    let rank = |j: usize| -> usize {
        bounds.iter().fold(j.min(m), |acc, &(jp, q)| acc.min(q + j.saturating_sub(jp)))
    };
    if rank(n) != m {
        return Err(Error::NoSuchPermutation(format!("rank bounds leave row {m} short of full rank")));
    }
    let top_g: Vec<usize> = (1..=n).filter(|&j| rank(j) > rank(j - 1)).collect();
    let g = complete_grassmannian(&top_g, n)?;
    for (name, w) in [("u", &u), ("g", &g)] {
        if w.grassmannian_descent() != Some(m) {
            return Err(Error::NoSuchPermutation(format!("{name} = {w} does not have unique descent {m}")));
        }
    }
    Ok((u, g))
}

fn complete_grassmannian(top: &[usize], n: usize) -> Result<Permutation> {
    let mut oneline = top.to_vec();
    oneline.extend((1..=n).filter(|j| !top.contains(j)));
    Permutation::from_one_line(&oneline).map_err(|e| Error::NoSuchPermutation(e.to_string()))
}

/// reg(S/I_{L,r}) = Σ_k ρ_a(τ_k(v)) for v = ladder_to_vexillary(l).
pub fn reg_ladder(l: &Ladder) -> Result<RegularityReport> {
    let v = ladder_to_vexillary(l)?;
    let vd = vexillary_data(&v)?;
    let sizes: Vec<usize> = (1..=vd.max_filling()).map(|k| rho_a(&vd.tau(k))).collect();
    Ok(RegularityReport {
        value: sizes.iter().sum(),
        method: Method::FormulaVexillary,
        witness: Witness::PathSizes(sizes),
    })
}

/// reg_ladder, also computed through the Grassmannian patch and compared.
pub fn reg_ladder_verified(l: &Ladder) -> Result<RegularityReport> {
    let report = reg_ladder(l)?;
    let (u, g) = ladder_to_grassmannian_pair(l)?;
    let patch = reg_grassmannian_patch(&u, &g)?;
    if patch.value != report.value {
        return Err(Error::InternalMismatch(format!(
            "ladder regularity {} but Grassmannian patch ({u}, {g}) gives {}",
            report.value, patch.value
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Schubert(Permutation),
    KazhdanLusztig { v: Permutation, w: Permutation },
    Ladder(Ladder),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Entry {
    Var(String),
    One,
    Zero,
}

/// Minors of the given size in the northwest rows x cols submatrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GeneratorSpec {
    pub minor_size: usize,
    pub rows: usize,
    pub cols: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    pub kind: &'static str,
    pub nrows: usize,
    pub ncols: usize,
    /// Only nonzero entries are stored.
    pub variable_grid: BTreeMap<Cell, Entry>,
    pub generators: Vec<GeneratorSpec>,
}

impl IdealPresentation {
    pub fn entry(&self, c: Cell) -> &Entry {
        self.variable_grid.get(&c).unwrap_or(&Entry::Zero)
    }

    pub fn variables(&self) -> Vec<String> {
        self.variable_grid
            .values()
            .filter_map(|e| match e {
                Entry::Var(s) => Some(s.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "nrows": self.nrows,
            "ncols": self.ncols,
            "variables": self.variables(),
            "generators": self.generators,
        })
    }
}

fn essential_generators(w: &Permutation) -> Vec<GeneratorSpec> {
    w.essential_set()
        .iter()
        .map(|(i, j)| GeneratorSpec { minor_size: w.rank_unchecked(i, j) + 1, rows: i, cols: j })
        .collect()
}

pub fn present_ideal(subject: &Subject) -> IdealPresentation {
    match subject {
        Subject::Schubert(w) => {
            let n = w.n();
            let grid = (1..=n)
                .flat_map(|i| (1..=n).map(move |j| ((i, j), Entry::Var(format!("x_({i},{j})")))))
                .collect();
            IdealPresentation {
                kind: "schubert",
                nrows: n,
                ncols: n,
                variable_grid: grid,
                generators: essential_generators(w),
            }
        }
        Subject::KazhdanLusztig { v, w } => {
            let n = v.n().max(w.n());
            let (v, w) = (v.embed(n), w.embed(n));
            let mut grid: BTreeMap<Cell, Entry> =
                v.rothe_diagram().iter().map(|(i, j)| ((i, j), Entry::Var(format!("z_({i},{j})")))).collect();
            for i in 1..=n {
                grid.insert((i, v.at(i)), Entry::One);
            }
            IdealPresentation {
                kind: "kazhdan_lusztig",
                nrows: n,
                ncols: n,
                variable_grid: grid,
                generators: essential_generators(&w),
            }
        }
        Subject::Ladder(l) => {
            let grid = l.cells().map(|(i, j)| ((i, j), Entry::Var(format!("z_({i},{j})")))).collect();
            // listed southwest to northeast
            let generators = l
                .points
                .iter()
                .rev()
                .map(|p| GeneratorSpec { minor_size: p.r, rows: p.c, cols: p.d })
                .collect();
            IdealPresentation {
                kind: "ladder",
                nrows: l.num_rows(),
                ncols: l.row_length(1),
                variable_grid: grid,
                generators,
            }
        }
    }
}

/// Reads the generators of J_{u,g} in ladder terms. A Grassmannian g with
/// descent m has its essential cells in row m. In M^(u)_{[m],[j]} the first
/// t = r_u(m, j) rows carry a unit column, so the size-s minors there
/// correspond to size s − t minors of the ladder's [m − t] x [j − t] corner.
pub fn kl_generators_in_ladder_terms(u: &Permutation, g: &Permutation) -> Vec<GeneratorSpec> {
    let mut out: Vec<GeneratorSpec> = essential_generators(g)
        .into_iter()
        .map(|s| {
            let t = u.rank_unchecked(s.rows, s.cols);
            GeneratorSpec { minor_size: s.minor_size - t, rows: s.rows - t, cols: s.cols - t }
        })
        .collect();
    out.sort();
    out
}

/// Macaulay2 script defining the ring, the matrix and the ideal, and printing its regularity.
pub fn export_cas(p: &IdealPresentation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "-- {} ideal, {}x{} matrix", p.kind, p.nrows, p.ncols);
    let vars = p.variables();
    if vars.is_empty() {
        s.push_str("R = QQ;\n");
    } else {
        let _ = writeln!(s, "R = QQ[{}];", vars.join(", "));
    }
    let rows: Vec<String> = (1..=p.nrows)
        .map(|i| {
            let entries: Vec<String> = (1..=p.ncols)
                .map(|j| match p.entry((i, j)) {
                    Entry::Var(v) => v.clone(),
                    Entry::One => "1".into(),
                    Entry::Zero => "0".into(),
                })
                .collect();
            format!("{{{}}}", entries.join(", "))
        })
        .collect();
    let _ = writeln!(s, "M = matrix(R, {{{}}});", rows.join(", "));
    if p.generators.is_empty() {
        s.push_str("I = ideal(0_R);\n");
    } else {
        let parts: Vec<String> = p
            .generators
            .iter()
            .map(|g| {
                format!(
                    "minors({}, submatrix(M, toList(0..{}), toList(0..{})))",
                    g.minor_size,
                    g.rows - 1,
                    g.cols - 1
                )
            })
            .collect();
        let _ = writeln!(s, "I = {};", parts.join(" + "));
    }
    s.push_str("print regularity comodule I;\n");
    s
}
