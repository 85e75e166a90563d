//! Direct expansion into noncommuting monomials `x_{i_1} ⋯ x_{i_n}` over `k` variables.
//!
//! Monomial, power-sum and elementary terms are evaluated straight from their
//! defining conditions on the word's kernel (which positions carry equal letters),
//! so this expansion does not use any change-of-basis table for those bases.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Basis, NcSymElement, Rational};
use crate::error::{Error, Result};
use crate::partitions::SetPartition;

/// A word over the alphabet `1..=k`.
pub type Word = Vec<u8>;

const MAX_WORDS: u128 = 20_000_000;

impl NcSymElement {
    /// Coefficients of every monomial in `k` noncommuting variables; zero coefficients omitted.
    ///
    /// `x` and `h` terms are first rewritten in `p`.
    pub fn word_expansion(&self, k: usize) -> Result<BTreeMap<Word, Rational>> {
        if k == 0 || k > u8::MAX as usize {
            return Err(Error::domain(format!(
                "variable count must lie in 1..=255, got {k}"
            )));
        }
        let n = self.degree();
        let count = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if count > MAX_WORDS {
            return Err(Error::Resource {
                limit: "word_expansion words",
                value: count.min(usize::MAX as u128) as usize,
                max: MAX_WORDS as usize,
            });
        }
        let f = match self.basis() {
            Basis::X | Basis::H => self.convert(Basis::P)?,
            _ => self.clone(),
        };
        let mut out = BTreeMap::new();
        let mut word = vec![1u8; n];
        loop {
            let kernel = SetPartition::from_labels(&word);
            let mut c = Rational::zero();
            for (pi, coeff) in f.terms() {
                if word_matches(f.basis(), pi, &kernel) {
                    c += coeff;
                }
            }
            if !c.is_zero() {
                out.insert(word.clone(), c);
            }
            // odometer increment, last letter fastest
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if (word[i] as usize) < k {
                    word[i] += 1;
                    break;
                }
                word[i] = 1;
            }
        }
    }
}

/// Whether a word with the given kernel contributes to `b_π`.
fn word_matches(basis: Basis, pi: &SetPartition, kernel: &SetPartition) -> bool {
    match basis {
        // i_j = i_k exactly when j, k share a block
        Basis::M => pi == kernel,
        // i_j = i_k whenever j, k share a block
        Basis::P => pi.is_refinement_of(kernel),
        // i_j ≠ i_k whenever j, k share a block
        Basis::E => {
            let r = pi.rgs();
            let w = kernel.rgs();
            for a in 0..r.len() {
                for b in a + 1..r.len() {
                    if r[a] == r[b] && w[a] == w[b] {
                        return false;
                    }
                }
            }
            true
        }
        Basis::X | Basis::H => unreachable!("rewritten in p before expansion"),
    }
}
