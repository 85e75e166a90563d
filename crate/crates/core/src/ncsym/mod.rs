//! Elements of NCSym as sparse exact-rational combinations over set partitions.
//!
//! An element carries the basis its coefficients refer to. All products, the
//! induction operator `↑` and the permutation action are computed in the `p` basis,
//! where each is a relabelling of indices, and the result is converted back.

pub mod json;
mod sym;
pub(crate) mod tables;
mod words;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{Permutation, SetPartition};

pub use json::{ElementJson, IntRepr, TermJson};
pub use sym::{SymBasis, SymElement};
pub use words::Word;

pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    P,
    E,
    H,
    X,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::M, Basis::P, Basis::E, Basis::H, Basis::X];

    pub fn symbol(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::P => "p",
            Basis::E => "e",
            Basis::H => "h",
            Basis::X => "x",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "m" => Ok(Basis::M),
            "p" => Ok(Basis::P),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            "x" => Ok(Basis::X),
            other => Err(Error::domain(format!(
                "unknown basis `{other}` (expected one of m, p, e, h, x)"
            ))),
        }
    }
}

/// A homogeneous element of NCSym of a fixed degree, expressed in one basis.
///
/// Zero coefficients are never stored. Two elements compare equal when they are the
/// same element of NCSym, whatever bases they are written in.
#[derive(Clone)]
pub struct NcSymElement {
    basis: Basis,
    degree: usize,
    terms: BTreeMap<SetPartition, Rational>,
}

impl NcSymElement {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        NcSymElement {
            basis,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The unit of NCSym, of degree 0.
    pub fn one() -> Self {
        Self::basis_term(Basis::P, SetPartition::empty(), Rational::one())
    }

    /// `coeff · b_π`.
    pub fn basis_term(basis: Basis, pi: SetPartition, coeff: Rational) -> Self {
        let mut e = Self::zero(basis, pi.n());
        if !coeff.is_zero() {
            e.terms.insert(pi, coeff);
        }
        e
    }

    /// Builds an element from `(partition, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        basis: Basis,
        degree: usize,
        terms: impl IntoIterator<Item = (SetPartition, Rational)>,
    ) -> Result<Self> {
        let mut e = Self::zero(basis, degree);
        for (pi, c) in terms {
            if pi.n() != degree {
                return Err(Error::domain(format!(
                    "term {pi} does not have degree {degree}"
                )));
            }
            e.add_term(pi, c);
        }
        Ok(e)
    }

    pub(crate) fn from_map_unchecked(
        basis: Basis,
        degree: usize,
        mut terms: BTreeMap<SetPartition, Rational>,
    ) -> Self {
        terms.retain(|_, c| !c.is_zero());
        NcSymElement {
            basis,
            degree,
            terms,
        }
    }

    fn add_term(&mut self, pi: SetPartition, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(pi) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<SetPartition, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `b_π` in this element's own basis; zero when absent.
    pub fn coeff(&self, pi: &SetPartition) -> Rational {
        self.terms.get(pi).cloned().unwrap_or_else(Rational::zero)
    }

    /// `[b_π] f` after converting to `basis`.
    pub fn coefficient(&self, basis: Basis, pi: &SetPartition) -> Result<Rational> {
        Ok(self.convert(basis)?.coeff(pi))
    }

    /// The same element of NCSym written in `target`.
    pub fn convert(&self, target: Basis) -> Result<NcSymElement> {
        if target == self.basis || self.degree == 0 {
            let mut out = self.clone();
            out.basis = target;
            return Ok(out);
        }
        let idx = tables::partition_index(self.degree)?;
        let positions: Vec<(usize, &Rational)> = self
            .terms
            .iter()
            .map(|(p, c)| (idx.position(p), c))
            .collect();
        let in_p = if self.basis == Basis::P {
            positions
                .into_iter()
                .map(|(i, c)| (i, c.clone()))
                .collect::<BTreeMap<_, _>>()
        } else {
            let table = tables::basis_table(self.basis, self.degree)?;
            tables::apply_columns(positions.into_iter(), &table.to_p)
        };
        let out = if target == Basis::P {
            in_p
        } else {
            let table = tables::basis_table(target, self.degree)?;
            tables::apply_columns(in_p.iter().map(|(i, c)| (*i, c)), &table.from_p)
        };
        Ok(NcSymElement {
            basis: target,
            degree: self.degree,
            terms: out
                .into_iter()
                .map(|(i, c)| (idx.parts[i].clone(), c))
                .collect(),
        })
    }

    fn check_same_degree(&self, other: &NcSymElement) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::domain(format!(
                "degree mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// Sum of two elements of the same degree. Mixed bases produce a `p`-basis result.
    pub fn add(&self, other: &NcSymElement) -> Result<NcSymElement> {
        if self.is_zero() && self.degree != other.degree {
            return Ok(other.clone());
        }
        if other.is_zero() && self.degree != other.degree {
            return Ok(self.clone());
        }
        self.check_same_degree(other)?;
        let (mut acc, rhs) = if self.basis == other.basis {
            (self.clone(), other.clone())
        } else {
            (self.convert(Basis::P)?, other.convert(Basis::P)?)
        };
        for (p, c) in rhs.terms {
            acc.add_term(p, c);
        }
        Ok(acc)
    }

    pub fn sub(&self, other: &NcSymElement) -> Result<NcSymElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> NcSymElement {
        if c.is_zero() {
            return Self::zero(self.basis, self.degree);
        }
        NcSymElement {
            basis: self.basis,
            degree: self.degree,
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> NcSymElement {
        self.scale(&rat(-1))
    }

    /// Product in NCSym, computed bilinearly in `p` where `p_π p_σ = p_{π|σ}`.
    ///
    /// The result is written in the operands' common basis, or in `p` when they differ.
    pub fn multiply(&self, other: &NcSymElement) -> Result<NcSymElement> {
        let target = if self.basis == other.basis {
            self.basis
        } else {
            Basis::P
        };
        let lhs = self.convert(Basis::P)?;
        let rhs = other.convert(Basis::P)?;
        let mut out = BTreeMap::new();
        for (a, ca) in &lhs.terms {
            for (b, cb) in &rhs.terms {
                *out.entry(a.slash(b)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        NcSymElement::from_map_unchecked(Basis::P, self.degree + other.degree, out).convert(target)
    }

    /// The induction operator `↑`, raising degree by one: `p_π↑ = p_{π⊕(n+1)}`.
    pub fn induce(&self) -> Result<NcSymElement> {
        if self.degree == 0 {
            return Err(Error::domain("cannot induce a degree-0 element"));
        }
        let in_p = self.convert(Basis::P)?;
        let mut out = BTreeMap::new();
        for (p, c) in in_p.terms {
            out.insert(p.oplus()?, c);
        }
        NcSymElement::from_map_unchecked(Basis::P, self.degree + 1, out).convert(self.basis)
    }

    /// The action `δ ∘ f`, relabelling `p_π ↦ p_{δ(π)}`.
    pub fn act(&self, delta: &Permutation) -> Result<NcSymElement> {
        if delta.n() != self.degree {
            return Err(Error::domain(format!(
                "permutation of [{}] acting on degree {}",
                delta.n(),
                self.degree
            )));
        }
        let in_p = self.convert(Basis::P)?;
        let out = in_p
            .terms
            .into_iter()
            .map(|(p, c)| (p.apply_unchecked(delta), c))
            .collect();
        NcSymElement::from_map_unchecked(Basis::P, self.degree, out).convert(self.basis)
    }

    /// Every coefficient in `basis` is nonnegative.
    pub fn is_positive(&self, basis: Basis) -> Result<bool> {
        Ok(self
            .convert(basis)?
            .terms
            .values()
            .all(|c| !c.is_negative()))
    }

    /// Every coefficient in `basis` is nonpositive.
    pub fn is_negative(&self, basis: Basis) -> Result<bool> {
        Ok(self
            .convert(basis)?
            .terms
            .values()
            .all(|c| !c.is_positive()))
    }

    /// When this element is `c · b_π` for a single `π`, returns `(π, c)`.
    pub fn as_single_term(&self) -> Option<(&SetPartition, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

pub fn is_b_positive(f: &NcSymElement, basis: Basis) -> Result<bool> {
    f.is_positive(basis)
}

pub fn is_b_negative(f: &NcSymElement, basis: Basis) -> Result<bool> {
    f.is_negative(basis)
}

impl PartialEq for NcSymElement {
    fn eq(&self, other: &Self) -> bool {
        if self.degree != other.degree {
            return false;
        }
        if self.basis == other.basis {
            return self.terms == other.terms;
        }
        let lhs = self
            .convert(Basis::P)
            .expect("degree within conversion limit");
        let rhs = other
            .convert(Basis::P)
            .expect("degree within conversion limit");
        lhs.terms == rhs.terms
    }
}

impl Eq for NcSymElement {}

impl fmt::Display for NcSymElement {
    /// Human-readable form such as `-1/2 e[1,3/2] + e[1/2/3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{}[{p}]", self.basis)?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcSymElement(deg {}: {self})", self.degree)
    }
}
