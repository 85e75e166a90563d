//! Symmetric functions in commuting variables, indexed by integer partitions, as the
//! target of the projection `ρ` that lets the variables commute.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Basis, NcSymElement, Rational};
use crate::error::{Error, Result};
use crate::partitions::IntegerPartition;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymBasis {
    M,
    P,
    E,
    H,
}

impl SymBasis {
    pub fn symbol(self) -> &'static str {
        match self {
            SymBasis::M => "m",
            SymBasis::P => "p",
            SymBasis::E => "e",
            SymBasis::H => "h",
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymElement {
    basis: SymBasis,
    degree: usize,
    terms: BTreeMap<IntegerPartition, Rational>,
}

impl SymElement {
    pub fn zero(basis: SymBasis, degree: usize) -> Self {
        SymElement {
            basis,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_term(basis: SymBasis, lam: IntegerPartition, coeff: Rational) -> Self {
        let mut s = Self::zero(basis, lam.n());
        s.add_term(lam, coeff);
        s
    }

    pub fn basis(&self) -> SymBasis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<IntegerPartition, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lam: &IntegerPartition) -> Rational {
        self.terms.get(lam).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, lam: IntegerPartition, c: Rational) {
        let slot = self.terms.entry(lam.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lam);
        }
    }

    pub fn add(&self, other: &SymElement) -> Result<SymElement> {
        if self.basis != other.basis || self.degree != other.degree {
            return Err(Error::domain(
                "adding Sym elements of different basis or degree",
            ));
        }
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SymElement {
        let mut out = Self::zero(self.basis, self.degree);
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v * c);
        }
        out
    }

    /// Product using `b_λ b_μ = b_{λ∪μ}`, valid for the multiplicative bases `p`, `e`, `h`.
    pub fn multiply(&self, other: &SymElement) -> Result<SymElement> {
        if self.basis != other.basis || self.basis == SymBasis::M {
            return Err(Error::domain(
                "Sym products are supported only within one of the p, e, h bases",
            ));
        }
        let mut out = Self::zero(self.basis, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.union(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// Polynomial in `k` commuting variables, keyed by exponent vector.
    pub fn commutative_expansion(&self, k: usize) -> BTreeMap<Vec<u32>, Rational> {
        let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (lam, c) in &self.terms {
            for (mono, v) in basis_polynomial(self.basis, lam, k) {
                *out.entry(mono).or_insert_with(Rational::zero) += c * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

type Poly = BTreeMap<Vec<u32>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Exponent vectors of length `k` with entries drawn from `parts` in every distinct arrangement,
/// remaining positions zero.
fn arrangements(parts: &[u32], k: usize) -> Vec<Vec<u32>> {
    fn rec(rest: &mut Vec<u32>, cur: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            if rest.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        if rest.len() > k - cur.len() {
            return;
        }
        // zero first, then each distinct remaining part
        cur.push(0);
        rec(rest, cur, k, out);
        cur.pop();
        let mut tried: Vec<u32> = Vec::new();
        for i in 0..rest.len() {
            let v = rest[i];
            if tried.contains(&v) {
                continue;
            }
            tried.push(v);
            rest.remove(i);
            cur.push(v);
            rec(rest, cur, k, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut parts.to_vec(), &mut Vec::new(), k, &mut out);
    out
}

fn basis_polynomial(basis: SymBasis, lam: &IntegerPartition, k: usize) -> Poly {
    if basis == SymBasis::M {
        let parts: Vec<u32> = lam.parts().iter().map(|&p| p as u32).collect();
        return arrangements(&parts, k)
            .into_iter()
            .map(|e| (e, Rational::one()))
            .collect();
    }
    let mut acc: Poly = std::iter::once((vec![0; k], Rational::one())).collect();
    for &r in lam.parts() {
        let factor: Poly = match basis {
            SymBasis::P => (0..k)
                .map(|i| {
                    let mut e = vec![0; k];
                    e[i] = r as u32;
                    (e, Rational::one())
                })
                .collect(),
            // squarefree monomials of degree r
            SymBasis::E => arrangements(&vec![1; r], k)
                .into_iter()
                .map(|e| (e, Rational::one()))
                .collect(),
            // all monomials of degree r
            SymBasis::H => compositions(r as u32, k)
                .into_iter()
                .map(|e| (e, Rational::one()))
                .collect(),
            SymBasis::M => unreachable!(),
        };
        acc = poly_mul(&acc, &factor);
    }
    acc
}

fn compositions(total: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl NcSymElement {
    /// The projection `ρ` to Sym obtained by letting the variables commute.
    ///
    /// `p_π ↦ p_{λ(π)}`, `e_π ↦ λ(π)! e_{λ(π)}`, `h_π ↦ λ(π)! h_{λ(π)}` and
    /// `m_π ↦ λ(π)^! m_{λ(π)}`. `x` terms are rewritten in `p` first.
    pub fn project(&self) -> Result<SymElement> {
        let f = if self.basis() == Basis::X {
            self.convert(Basis::P)?
        } else {
            self.clone()
        };
        let basis = match f.basis() {
            Basis::M => SymBasis::M,
            Basis::P => SymBasis::P,
            Basis::E => SymBasis::E,
            Basis::H => SymBasis::H,
            Basis::X => unreachable!(),
        };
        let mut out = SymElement::zero(basis, f.degree());
        for (pi, c) in f.terms() {
            let lam = pi.shape();
            let scalar = match basis {
                SymBasis::P => 1,
                SymBasis::E | SymBasis::H => lam.factorial(),
                SymBasis::M => lam.shriek(),
            };
            out.add_term(lam, c * Rational::from_integer(BigInt::from(scalar)));
        }
        Ok(out)
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| format!("{c} {}{l}", self.basis.symbol()))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymElement(deg {}: {self})", self.degree)
    }
}
