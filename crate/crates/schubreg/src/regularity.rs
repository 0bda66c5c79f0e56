//! Regularity of S/I for Schubert determinantal ideals and Kazhdan-Lusztig
//! ideals of Grassmannian patches, as deg K(S/I; t) − ht(I) via closed forms.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groth::{grothendieck_degree, max_barred_pipe};
use crate::perm::{Diagram, Permutation};
use crate::stats::{rho_a, rho_d, sigma_k, vexillary_data, vexillary_from_shapes, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Formula1432,
    FormulaVexillary,
    FormulaGrassmannian,
    OracleDegree,
    KlPipes,
    GrassmannianPatch,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Formula1432 => "formula_1432",
            Method::FormulaVexillary => "formula_vexillary",
            Method::FormulaGrassmannian => "formula_grassmannian",
            Method::OracleDegree => "oracle_degree",
            Method::KlPipes => "kl_pipes",
            Method::GrassmannianPatch => "grassmannian_patch",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// ρ(σ_k) or ρ(τ_k) for k = 1, 2, ...
    PathSizes(Vec<usize>),
    /// sv(trunc^{λ_i}(λ)) for i = 1..k.
    StaircaseValues(Vec<usize>),
    Degree { degree: usize, height: usize },
    Pipe { cells: Diagram, length: usize },
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::PathSizes(s) => json!({ "path_sizes": s }),
            Witness::StaircaseValues(s) => json!({ "staircase_values": s }),
            Witness::Degree { degree, height } => json!({ "degree": degree, "height": height }),
            Witness::Pipe { cells, length } => json!({
                "pipe": cells.iter().map(|(i, j)| [i, j]).collect::<Vec<_>>(),
                "length": length,
            }),
        }
    }

    /// The value the witness certifies.
    pub fn certified_value(&self) -> usize {
        match self {
            Witness::PathSizes(s) | Witness::StaircaseValues(s) => s.iter().sum(),
            Witness::Degree { degree, height } => degree - height,
            Witness::Pipe { cells, length } => cells.len() - length,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub value: usize,
    pub method: Method,
    pub witness: Witness,
}

impl RegularityReport {
    fn new(method: Method, witness: Witness) -> Self {
        RegularityReport { value: witness.certified_value(), method, witness }
    }

    pub fn to_json(&self, input: Value) -> Value {
        json!({
            "input": input,
            "reg": self.value,
            "method": self.method.name(),
            "witness": self.witness.to_json(),
        })
    }
}

/// ht I_w = #D(w).
pub fn height_schubert(w: &Permutation) -> usize {
    w.length()
}

/// ht J_{u,g} = |λ(g)|.
pub fn height_grassmannian_patch(g: &Permutation) -> usize {
    shape_of(g).size()
}

fn shape_of(w: &Permutation) -> Partition {
    let mut code = w.code();
    code.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(&code).expect("sorted code")
}

fn sigma_path_sizes(w: &Permutation) -> Vec<usize> {
    (1..=w.n()).map(|k| rho_d(&sigma_k(w, k).expect("k in range"))).collect()
}

fn tau_path_sizes(v: &Permutation) -> Result<Vec<usize>> {
    let vd = vexillary_data(v)?;
    Ok((1..=vd.max_filling()).map(|k| rho_a(&vd.tau(k))).collect())
}

/// f_d(w) = #D(w) + Σ_k ρ_d(σ_k(w)).
pub fn f_d(w: &Permutation) -> Result<usize> {
    if !w.avoids_1432() {
        return Err(Error::Not1432Avoiding(w.to_string()));
    }
    Ok(w.length() + sigma_path_sizes(w).iter().sum::<usize>())
}

/// f_a(v) = #D(v) + Σ_k ρ_a(τ_k(v)).
pub fn f_a(v: &Permutation) -> Result<usize> {
    Ok(v.length() + tau_path_sizes(v)?.iter().sum::<usize>())
}

/// deg 𝔊_λ(x_1..x_k) = |λ| + Σ_{i≤k} sv(trunc^{λ_i}(λ)).
pub fn deg_grassmannian(lambda: &Partition, k: usize) -> Result<usize> {
    Ok(lambda.size() + grassmannian_staircase_values(lambda, k)?.iter().sum::<usize>())
}

fn grassmannian_staircase_values(lambda: &Partition, k: usize) -> Result<Vec<usize>> {
    if lambda.num_parts() > k {
        return Err(Error::TooManyParts(lambda.to_string(), k));
    }
    Ok((1..=k).map(|i| lambda.trunc(lambda.part(i)).staircase_sv()).collect())
}

/// The Grassmannian permutation with descent k and shape λ.
pub fn grassmannian_permutation(lambda: &Partition, k: usize) -> Result<Permutation> {
    if lambda.num_parts() > k {
        return Err(Error::TooManyParts(lambda.to_string(), k));
    }
    let code: Vec<usize> = (1..=k).map(|i| lambda.part(k + 1 - i)).collect();
    Ok(Permutation::from_code(&code))
}

fn mismatch(what: &str, w: &Permutation, a: usize, b: usize) -> Error {
    Error::InternalMismatch(format!("{what} disagree on {w}: {a} vs {b}"))
}

/// reg(S/I_w), preferring closed forms and cross-checking whenever two apply.
pub fn reg_schubert(w: &Permutation) -> Result<RegularityReport> {
    let ell = w.length();
    if let Some(k) = w.grassmannian_descent() {
        let values = grassmannian_staircase_values(&shape_of(w), k)?;
        let report = RegularityReport::new(Method::FormulaGrassmannian, Witness::StaircaseValues(values));
        for (name, other) in [("f_d", f_d(w)?), ("f_a", f_a(w)?)] {
            if other - ell != report.value {
                return Err(mismatch(&format!("formula_grassmannian and {name}"), w, report.value, other - ell));
            }
        }
        return Ok(report);
    }
    if w.avoids_1432() {
        let report = RegularityReport::new(Method::Formula1432, Witness::PathSizes(sigma_path_sizes(w)));
        if w.is_vexillary() {
            let fa = f_a(w)?;
            if fa - ell != report.value {
                return Err(mismatch("f_d and f_a", w, report.value, fa - ell));
            }
        }
        return Ok(report);
    }
    if w.is_vexillary() {
        return Ok(RegularityReport::new(Method::FormulaVexillary, Witness::PathSizes(tau_path_sizes(w)?)));
    }
    Ok(reg_schubert_oracle(w))
}

/// deg 𝔊_w − ℓ(w) straight from the polynomial.
pub fn reg_schubert_oracle(w: &Permutation) -> RegularityReport {
    let witness = Witness::Degree { degree: grothendieck_degree(w), height: height_schubert(w) };
    RegularityReport::new(Method::OracleDegree, witness)
}

/// reg_schubert plus an independent check against the Grothendieck degree.
pub fn reg_schubert_verified(w: &Permutation) -> Result<RegularityReport> {
    let report = reg_schubert(w)?;
    let oracle = reg_schubert_oracle(w);
    if report.value != oracle.value {
        return Err(mismatch(&format!("{} and oracle_degree", report.method), w, report.value, oracle.value));
    }
    Ok(report)
}

/// reg of the Kazhdan-Lusztig variety for 321-avoiding v: max #P − ℓ(w) over barred Pipes(v, w).
pub fn reg_kl_321(v: &Permutation, w: &Permutation) -> Result<RegularityReport> {
    let pipe = max_barred_pipe(v, w)?;
    Ok(RegularityReport::new(Method::KlPipes, Witness::Pipe { cells: pipe.cells, length: w.length() }))
}

/// The vexillary v with D(v) = D_bot(λ(u), λ(g)) for a Grassmannian pair.
pub fn patch_vexillary(u: &Permutation, g: &Permutation) -> Result<Permutation> {
    let ku = u.grassmannian_descent().ok_or_else(|| Error::NotGrassmannian(u.to_string()))?;
    let kg = g.grassmannian_descent().ok_or_else(|| Error::NotGrassmannian(g.to_string()))?;
    if ku != kg {
        return Err(Error::DescentMismatch(ku, kg));
    }
    vexillary_from_shapes(&shape_of(u), &shape_of(g))
}

/// reg(k[z^u]/J_{u,g}) = Σ_k ρ_a(τ_k(v)) for v = patch_vexillary(u, g).
pub fn reg_grassmannian_patch(u: &Permutation, g: &Permutation) -> Result<RegularityReport> {
    let v = patch_vexillary(u, g)?;
    Ok(RegularityReport::new(Method::GrassmannianPatch, Witness::PathSizes(tau_path_sizes(&v)?)))
}
