//! Sparse multivariate polynomials with big-integer coefficients, plus the
//! divided difference and isobaric divided difference operators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    X(u32),
    Y(u32),
    T(Option<u32>),
    T2(u32, u32),
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarId::X(i) => write!(f, "x{i}"),
            VarId::Y(j) => write!(f, "y{j}"),
            VarId::T(None) => write!(f, "t"),
            VarId::T(Some(i)) => write!(f, "t{i}"),
            VarId::T2(i, j) if i < 10 && j < 10 => write!(f, "t{i}{j}"),
            VarId::T2(i, j) => write!(f, "t({i},{j})"),
        }
    }
}

/// Sorted (variable, exponent) pairs; exponents are always positive.
pub type Monomial = Vec<(VarId, u32)>;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, BigInt>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn mono_degree(m: &Monomial) -> u32 {
    m.iter().map(|&(_, e)| e).sum()
}

fn exponent_of(m: &Monomial, v: VarId) -> u32 {
    m.iter().find(|&&(u, _)| u == v).map_or(0, |&(_, e)| e)
}

/// Replaces the exponents of the listed variables, dropping zeros and re-sorting.
fn with_exponents(m: &Monomial, changes: &[(VarId, u32)]) -> Monomial {
    let mut out: Monomial = m
        .iter()
        .filter(|(v, _)| !changes.iter().any(|(c, _)| c == v))
        .copied()
        .collect();
    out.extend(changes.iter().filter(|&&(_, e)| e > 0).copied());
    out.sort();
    out
}

/// What substitute does with variables missing from the assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unassigned {
    Keep,
    Reject,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_terms([(Vec::new(), BigInt::from(c))])
    }

    pub fn var(v: VarId) -> Self {
        Self::from_terms([(vec![(v, 1)], BigInt::one())])
    }

    pub fn x(i: u32) -> Self {
        Self::var(VarId::X(i))
    }

    pub fn y(j: u32) -> Self {
        Self::var(VarId::Y(j))
    }

    pub fn t() -> Self {
        Self::var(VarId::T(None))
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut m: Monomial = m.into_iter().filter(|&(_, e)| e > 0).collect();
        m.sort();
        Self::from_terms([(m, c)])
    }

    /// Sums up possibly repeated terms; input monomials must already be sorted.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = SparsePoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Maximum total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(mono_degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(mono_degree).min()
    }

    pub fn homogeneous_component(&self, d: u32) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| mono_degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.iter().map(|&(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn scalar_mul(&self, c: &BigInt) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = SparsePoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// a ⊕ b = a + b − ab.
    pub fn oplus(&self, other: &SparsePoly) -> SparsePoly {
        &(self + other) - &(self * other)
    }

    /// Applies a map to every monomial, summing collisions.
    fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> SparsePoly {
        SparsePoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// s_i: swaps x_i and x_{i+1}.
    pub fn swap_x(&self, i: u32) -> SparsePoly {
        let (a, b) = (VarId::X(i), VarId::X(i + 1));
        self.map_monomials(|m| {
            let (ea, eb) = (exponent_of(m, a), exponent_of(m, b));
            with_exponents(m, &[(a, eb), (b, ea)])
        })
    }

    /// ∂_i via the closed form for each monomial pair. Acts only on x variables.
    pub fn divided_difference(&self, i: u32) -> SparsePoly {
        let (a, b) = (VarId::X(i), VarId::X(i + 1));
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let (ea, eb) = (exponent_of(m, a), exponent_of(m, b));
            if ea == eb {
                continue;
            }
            // ∂(x^p y^q) = ±(xy)^lo * (x^{d-1} + x^{d-2} y + ... + y^{d-1}), d = |p - q|
            let (lo, d) = (ea.min(eb), ea.abs_diff(eb));
            let coeff = if ea > eb { c.clone() } else { -c.clone() };
            for k in 0..d {
                let mono = with_exponents(m, &[(a, lo + d - 1 - k), (b, lo + k)]);
                out.add_term(mono, coeff.clone());
            }
        }
        out
    }

    /// ∂_i via exact long division of f − s_i f by x_i − x_{i+1}; errors on a remainder.
    pub fn divided_difference_by_division(&self, i: u32) -> Result<SparsePoly> {
        let numerator = self - &self.swap_x(i);
        numerator.exact_div_linear(i)
    }

    /// Divides by x_i − x_{i+1}, treating the polynomial as univariate in x_i.
    pub fn exact_div_linear(&self, i: u32) -> Result<SparsePoly> {
        let (a, b) = (VarId::X(i), VarId::X(i + 1));
        // coefficients c_k of a^k, as polynomials without a
        let mut by_power: BTreeMap<u32, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = exponent_of(m, a);
            by_power
                .entry(e)
                .or_default()
                .add_term(with_exponents(m, &[(a, 0)]), c.clone());
        }
        let Some(&top) = by_power.keys().next_back() else {
            return Ok(SparsePoly::zero());
        };
        let xb = SparsePoly::var(b);
        let mut quotient = SparsePoly::zero();
        let mut q = SparsePoly::zero();
        // synthetic division: q_{k-1} = c_k + b q_k
        for k in (1..=top).rev() {
            let ck = by_power.get(&k).cloned().unwrap_or_default();
            q = &ck + &(&xb * &q);
            let shifted = q.map_monomials(|m| with_exponents(m, &[(a, k - 1)]));
            quotient = &quotient + &shifted;
        }
        let c0 = by_power.get(&0).cloned().unwrap_or_default();
        let remainder = &c0 + &(&xb * &q);
        if !remainder.is_zero() {
            return Err(Error::NonExactDivision(i, i + 1));
        }
        Ok(quotient)
    }

    /// π_i f = ∂_i((1 − x_{i+1}) f).
    pub fn pi(&self, i: u32) -> SparsePoly {
        let factor = &SparsePoly::one() - &SparsePoly::x(i + 1);
        (&factor * self).divided_difference(i)
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(
        &self,
        assignment: &HashMap<VarId, SparsePoly>,
        unassigned: Unassigned,
    ) -> Result<SparsePoly> {
        let mut powers: HashMap<(VarId, u32), SparsePoly> = HashMap::new();
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut term = SparsePoly::constant(1).scalar_mul(c);
            let mut kept: Monomial = Vec::new();
            for &(v, e) in m {
                match assignment.get(&v) {
                    Some(val) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| val.pow(e));
                        term = &term * pw;
                    }
                    None if unassigned == Unassigned::Keep => kept.push((v, e)),
                    None => return Err(Error::UnassignedVariable(v.to_string())),
                }
            }
            if !kept.is_empty() {
                term = &term * &SparsePoly::monomial(kept, BigInt::one());
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitutes every variable accepted by `pick` with the same value.
    pub fn substitute_all(&self, pick: impl Fn(VarId) -> bool, value: &SparsePoly) -> SparsePoly {
        let map: HashMap<VarId, SparsePoly> =
            self.variables().into_iter().filter(|&v| pick(v)).map(|v| (v, value.clone())).collect();
        self.substitute(&map, Unassigned::Keep).expect("passthrough substitution cannot fail")
    }

    /// Terms in printing order: by degree, then lex with earlier variables first.
    fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut ts: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        ts.sort_by(|(m1, _), (m2, _)| {
            mono_degree(m1).cmp(&mono_degree(m2)).then_with(|| {
                for (p, q) in m1.iter().zip(m2.iter()) {
                    let o = p.0.cmp(&q.0).then(q.1.cmp(&p.1));
                    if o != std::cmp::Ordering::Equal {
                        return o;
                    }
                }
                m2.len().cmp(&m1.len())
            })
        });
        ts
    }

    /// Rewrites a polynomial in t alone as Σ c_k (1−t)^k and prints it that way.
    pub fn display_in_one_minus_t(&self) -> Option<String> {
        let t = VarId::T(None);
        if self.variables().iter().any(|&v| v != t) {
            return None;
        }
        // t = 1 − s
        let s = SparsePoly::var(VarId::T(Some(u32::MAX)));
        let one_minus_s = &SparsePoly::one() - &s;
        let mut map = HashMap::new();
        map.insert(t, one_minus_s);
        let in_s = self.substitute(&map, Unassigned::Reject).ok()?;
        if in_s.is_zero() {
            return Some("0".into());
        }
        let mut out = String::new();
        for (idx, (m, c)) in in_s.sorted_terms().into_iter().enumerate() {
            let k = m.first().map_or(0, |&(_, e)| e);
            let factor = match k {
                0 => String::new(),
                1 => "(1-t)".into(),
                _ => format!("(1-t)^{k}"),
            };
            push_term(&mut out, idx == 0, c, &factor);
        }
        Some(out)
    }
}

fn push_term(out: &mut String, first: bool, c: &BigInt, body: &str) {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if body.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format!("{abs}*{body}"));
    }
}

fn render_monomial(m: &Monomial) -> String {
    m.iter()
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            push_term(&mut out, idx == 0, c, &render_monomial(m));
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: SparsePoly) -> SparsePoly {
        &self + &rhs
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus_t() -> SparsePoly {
        &SparsePoly::one() - &SparsePoly::t()
    }

    #[test]
    fn arithmetic() {
        let p = &SparsePoly::x(1) + &SparsePoly::y(2);
        assert_eq!(&SparsePoly::zero() + &p, p);
        assert_eq!((one_minus_t() * one_minus_t()).to_string(), "1 - 2*t + t^2");
        assert_eq!(SparsePoly::x(1).oplus(&SparsePoly::y(1)).num_terms(), 3);
        assert_eq!(SparsePoly::x(1).oplus(&SparsePoly::zero()), SparsePoly::x(1));
        assert_eq!(one_minus_t().oplus(&one_minus_t()).to_string(), "1 - t^2");
        assert_eq!(SparsePoly::x(1).oplus(&SparsePoly::y(2)).to_string(), "x1 + y2 - x1*y2");
        assert_eq!(SparsePoly::zero().degree(), None);
        assert_eq!(SparsePoly::one().degree(), Some(0));
    }

    #[test]
    fn divided_differences() {
        assert_eq!(SparsePoly::x(1).divided_difference(1), SparsePoly::one());
        let m = SparsePoly::monomial(vec![(VarId::X(1), 2), (VarId::X(2), 1)], BigInt::one());
        let expect = SparsePoly::monomial(vec![(VarId::X(1), 1), (VarId::X(2), 1)], BigInt::one());
        assert_eq!(m.divided_difference(1), expect);
        let sym = &SparsePoly::x(1) + &SparsePoly::x(2);
        assert!(sym.divided_difference(1).is_zero());
        assert_eq!(SparsePoly::x(1).pi(1), SparsePoly::one());
        assert_eq!(SparsePoly::one().pi(1), SparsePoly::one());
        assert_eq!(m.divided_difference_by_division(1).unwrap(), expect);
    }

    #[test]
    fn non_exact_division_detected() {
        assert_eq!(SparsePoly::x(1).exact_div_linear(1), Err(Error::NonExactDivision(1, 2)));
        let f = &SparsePoly::x(1) - &SparsePoly::x(2);
        assert_eq!(f.exact_div_linear(1).unwrap(), SparsePoly::one());
    }

    #[test]
    fn substitution() {
        let p = SparsePoly::monomial(vec![(VarId::X(1), 1), (VarId::X(2), 1)], BigInt::one());
        let mut map = HashMap::new();
        map.insert(VarId::X(1), one_minus_t());
        map.insert(VarId::X(2), one_minus_t());
        assert_eq!(p.substitute(&map, Unassigned::Reject).unwrap().to_string(), "1 - 2*t + t^2");
        assert_eq!(p.substitute(&HashMap::new(), Unassigned::Keep).unwrap(), p);
        assert!(matches!(
            p.substitute(&HashMap::new(), Unassigned::Reject),
            Err(Error::UnassignedVariable(_))
        ));
    }

    #[test]
    fn one_minus_t_form() {
        let p = &(one_minus_t().pow(2).scalar_mul(&BigInt::from(2))) - &one_minus_t().pow(3);
        assert_eq!(p.display_in_one_minus_t().unwrap(), "2*(1-t)^2 - (1-t)^3");
        assert_eq!(SparsePoly::one().display_in_one_minus_t().unwrap(), "1");
        assert!(SparsePoly::x(1).display_in_one_minus_t().is_none());
    }

    #[test]
    fn printing_order() {
        let p = &(&SparsePoly::x(2).pow(2) + &SparsePoly::x(1).pow(2)) + &(&SparsePoly::x(1) * &SparsePoly::x(2));
        assert_eq!(p.to_string(), "x1^2 + x1*x2 + x2^2");
        let q = SparsePoly::var(VarId::T2(1, 1));
        assert_eq!(q.to_string(), "t11");
    }
}
