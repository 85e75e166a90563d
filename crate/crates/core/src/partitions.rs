//! Set partitions of `[n]`, the refinement lattice, and integer-partition shapes.
//!
//! A [`SetPartition`] is stored as its restricted growth string: entry `i` is the
//! index of the block containing element `i + 1`, with blocks numbered in order of
//! first appearance. This encoding is unique, so derived equality, hashing and
//! ordering are all canonical. Ordering two partitions of the same ground set
//! compares their restricted growth strings lexicographically.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{self, HARD_MAX_N};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<u8>,
}

impl SetPartition {
    /// The unique partition of the empty set.
    pub fn empty() -> Self {
        SetPartition { rgs: Vec::new() }
    }

    /// Builds a partition from a 0-based restricted growth string.
    pub fn from_rgs(rgs: &[u8]) -> Result<Self> {
        if rgs.len() > HARD_MAX_N {
            return Err(Error::domain(format!(
                "ground set of size {} exceeds {HARD_MAX_N}",
                rgs.len()
            )));
        }
        let mut next = 0u8;
        for (i, &b) in rgs.iter().enumerate() {
            if b > next {
                return Err(Error::domain(format!(
                    "not a restricted growth string: entry {} is {b}, expected at most {next}",
                    i + 1
                )));
            }
            if b == next {
                next += 1;
            }
        }
        Ok(SetPartition { rgs: rgs.to_vec() })
    }

    /// Builds a partition of `[n]` from 1-based blocks given in any order.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if n > HARD_MAX_N {
            return Err(Error::domain(format!(
                "ground set of size {n} exceeds {HARD_MAX_N}"
            )));
        }
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::domain("empty block"));
            }
            for &x in block {
                if x == 0 || x > n {
                    return Err(Error::domain(format!("element {x} outside 1..={n}")));
                }
                if label[x - 1] != usize::MAX {
                    return Err(Error::domain(format!("element {x} appears twice")));
                }
                label[x - 1] = b;
            }
        }
        if let Some(i) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::domain(format!("element {} is not covered", i + 1)));
        }
        Ok(Self::from_labels(&label))
    }

    /// Canonicalizes an arbitrary labelling: elements with equal labels share a block.
    pub(crate) fn from_labels<T: PartialEq + Copy>(labels: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(p) => p as u8,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        SetPartition { rgs }
    }

    /// `0̂_n`, all singletons.
    pub fn finest(n: usize) -> Self {
        SetPartition {
            rgs: (0..n as u8).collect(),
        }
    }

    /// `1̂_n`, a single block.
    pub fn coarsest(n: usize) -> Self {
        SetPartition { rgs: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    /// Blocks as sorted 1-based element lists, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b as usize].push(i + 1);
        }
        blocks
    }

    /// Index of the block holding the 1-based element `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.rgs[x - 1] as usize
    }

    pub fn is_finest(&self) -> bool {
        self.num_blocks() == self.n()
    }

    pub fn is_coarsest(&self) -> bool {
        self.rgs.iter().all(|&b| b == 0)
    }

    /// `self ≤ other` in refinement order: every block of `self` lies in a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::domain(format!(
                "partitions of different ground sets ({} and {})",
                self.n(),
                other.n()
            )));
        }
        Ok(self.is_refinement_of(other))
    }

    pub(crate) fn is_refinement_of(&self, other: &SetPartition) -> bool {
        let mut image = [u8::MAX; HARD_MAX_N];
        for (&a, &b) in self.rgs.iter().zip(&other.rgs) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    /// Slash product: `self` followed by the blocks of `other` shifted by `self.n()`.
    pub fn slash(&self, other: &SetPartition) -> SetPartition {
        let shift = self.num_blocks() as u8;
        let mut rgs = self.rgs.clone();
        rgs.extend(other.rgs.iter().map(|&b| b + shift));
        SetPartition { rgs }
    }

    /// The unique factorization into atomic partitions under the slash product.
    /// The empty partition decomposes into the empty list.
    pub fn atomic_decomposition(&self) -> Vec<SetPartition> {
        let mut last = vec![0usize; self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            last[b as usize] = i;
        }
        let mut factors = Vec::new();
        let mut start = 0;
        let mut reach = 0;
        for (i, &b) in self.rgs.iter().enumerate() {
            reach = reach.max(last[b as usize]);
            if reach == i {
                factors.push(Self::from_labels(&self.rgs[start..=i]));
                start = i + 1;
            }
        }
        factors
    }

    pub fn is_atomic(&self) -> bool {
        self.n() > 0 && self.atomic_decomposition().len() == 1
    }

    /// Block sizes in weakly decreasing order.
    pub fn shape(&self) -> IntegerPartition {
        let mut sizes = vec![0usize; self.num_blocks()];
        for &b in &self.rgs {
            sizes[b as usize] += 1;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts: sizes }
    }

    /// `π ⊕ (n+1)`: appends a new element to the block holding the current last element.
    pub fn oplus(&self) -> Result<SetPartition> {
        let Some(&last) = self.rgs.last() else {
            return Err(Error::domain("oplus needs a nonempty ground set"));
        };
        if self.n() >= HARD_MAX_N {
            return Err(Error::domain(format!(
                "ground set would exceed {HARD_MAX_N}"
            )));
        }
        let mut rgs = self.rgs.clone();
        rgs.push(last);
        Ok(SetPartition { rgs })
    }

    /// Image of the partition under a permutation of the ground set.
    pub fn apply(&self, delta: &Permutation) -> Result<SetPartition> {
        if delta.n() != self.n() {
            return Err(Error::domain(format!(
                "permutation of [{}] applied to a partition of [{}]",
                delta.n(),
                self.n()
            )));
        }
        Ok(self.apply_unchecked(delta))
    }

    pub(crate) fn apply_unchecked(&self, delta: &Permutation) -> SetPartition {
        let mut labels = vec![0u8; self.n()];
        for (i, &b) in self.rgs.iter().enumerate() {
            labels[delta.image(i + 1) - 1] = b;
        }
        Self::from_labels(&labels)
    }

    /// Every σ with σ ≤ self, in no particular order.
    pub fn refinements(&self) -> Vec<SetPartition> {
        let n = self.n();
        let mut acc: Vec<Vec<usize>> = vec![vec![0; n]];
        for (bi, block) in self.blocks().into_iter().enumerate() {
            let local = all_rgs(block.len());
            let mut next = Vec::with_capacity(acc.len() * local.len());
            for labels in &acc {
                for r in &local {
                    let mut l = labels.clone();
                    for (&x, &sub) in block.iter().zip(r) {
                        l[x - 1] = bi * n + sub as usize;
                    }
                    next.push(l);
                }
            }
            acc = next;
        }
        acc.iter().map(|l| Self::from_labels(l)).collect()
    }

    /// Every σ with self ≤ σ, in no particular order.
    pub fn coarsenings(&self) -> Vec<SetPartition> {
        all_rgs(self.num_blocks())
            .into_iter()
            .map(|merge| {
                let labels: Vec<u8> = self.rgs.iter().map(|&b| merge[b as usize]).collect();
                Self::from_labels(&labels)
            })
            .collect()
    }

    /// Restricted growth string packed four bits per entry, with the length in the top bits.
    pub(crate) fn pack(&self) -> u64 {
        let mut code = (self.n() as u64) << 59;
        for (i, &b) in self.rgs.iter().enumerate() {
            code |= (b as u64) << (4 * i);
        }
        code
    }

    pub(crate) fn unpack(code: u64) -> SetPartition {
        let n = (code >> 59) as usize;
        let rgs = (0..n).map(|i| ((code >> (4 * i)) & 0xF) as u8).collect();
        SetPartition { rgs }
    }
}

/// All restricted growth strings of length `n`, in lexicographic order.
fn all_rgs(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut rgs = vec![0u8; n];
    // max_prefix[i] = max(rgs[0..i])
    let mut max_prefix = vec![0u8; n];
    loop {
        out.push(rgs.clone());
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if rgs[i] <= max_prefix[i] {
                rgs[i] += 1;
                break;
            }
            i -= 1;
        }
        for j in i + 1..n {
            max_prefix[j] = max_prefix[j - 1].max(rgs[j - 1]);
            rgs[j] = 0;
        }
    }
}

/// All set partitions of `[n]` in lexicographic order of restricted growth strings.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    let max = limits::max_n();
    if n == 0 || n > max {
        return Err(Error::domain(format!(
            "enumerate_partitions needs 1 <= n <= {max}, got {n}"
        )));
    }
    Ok(all_rgs(n)
        .into_iter()
        .map(|rgs| SetPartition { rgs })
        .collect())
}

/// Like [`enumerate_partitions`] but accepts `n = 0` and skips the configurable limit.
pub(crate) fn partitions_unchecked(n: usize) -> Vec<SetPartition> {
    all_rgs(n)
        .into_iter()
        .map(|rgs| SetPartition { rgs })
        .collect()
}

/// Bell number via the Bell triangle.
pub fn bell_number(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for v in &row {
            let prev = *next.last().unwrap();
            next.push(prev + v);
        }
        row = next;
    }
    row[0]
}

/// Möbius function of the partition lattice on the interval `[sigma, pi]`.
///
/// Product over blocks `B` of `pi` of `(-1)^(k-1) (k-1)!`, where `k` counts the
/// blocks of `sigma` inside `B`.
pub fn mobius_interval(sigma: &SetPartition, pi: &SetPartition) -> Result<i64> {
    if !sigma.refines(pi)? {
        return Err(Error::domain(format!("{sigma} does not refine {pi}")));
    }
    Ok(mobius_unchecked(sigma, pi))
}

pub(crate) fn mobius_unchecked(sigma: &SetPartition, pi: &SetPartition) -> i64 {
    let mut counts = [0usize; HARD_MAX_N];
    let mut seen = [false; HARD_MAX_N];
    for (&a, &b) in sigma.rgs.iter().zip(&pi.rgs) {
        if !seen[a as usize] {
            seen[a as usize] = true;
            counts[b as usize] += 1;
        }
    }
    counts[..pi.num_blocks()]
        .iter()
        .map(|&k| signed_factorial(k - 1))
        .product()
}

/// `(-1)^m m!`
fn signed_factorial(m: usize) -> i64 {
    let f: i64 = (1..=m as i64).product();
    if m.is_multiple_of(2) {
        f
    } else {
        -f
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bi, block) in self.blocks().iter().enumerate() {
            if bi > 0 {
                f.write_str("/")?;
            }
            for (i, x) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Accepts the comma form `1,3,4/2,5` and, for ground sets of at most nine
    /// elements, the compact digit form `134/25`. The empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SetPartition::empty());
        }
        let compact = !s.contains(',') && s.chars().all(|c| c == '/' || ('1'..='9').contains(&c));
        if compact {
            let blocks: Vec<Vec<usize>> = s
                .split('/')
                .map(|b| b.chars().map(|c| c as usize - '0' as usize).collect())
                .collect();
            let n: usize = blocks.iter().map(Vec::len).sum();
            if n <= 9 {
                if let Ok(p) = SetPartition::from_blocks(n, &blocks) {
                    return Ok(p);
                }
            }
        }
        let mut blocks = Vec::new();
        for b in s.split('/') {
            let block = b
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(1, format!("bad element `{x}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::from_blocks(n, &blocks).map_err(|e| Error::parse(1, e.to_string()))
    }
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("integer partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(
                "integer partition parts must be weakly decreasing",
            ));
        }
        Ok(IntegerPartition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &IntegerPartition) -> IntegerPartition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts }
    }

    /// `λ! = λ_1! λ_2! ⋯`
    pub fn factorial(&self) -> u128 {
        self.parts.iter().map(|&p| factorial(p)).product()
    }

    /// `λ^! = m_1! m_2! ⋯` where `m_i` is the multiplicity of part `i`.
    pub fn shriek(&self) -> u128 {
        let mut out = 1u128;
        let mut i = 0;
        while i < self.parts.len() {
            let j = self.parts[i..]
                .iter()
                .take_while(|&&p| p == self.parts[i])
                .count();
            out *= factorial(j);
            i += j;
        }
        out
    }
}

pub fn lambda_factorial(lam: &IntegerPartition) -> u128 {
    lam.factorial()
}

pub fn lambda_shriek(lam: &IntegerPartition) -> u128 {
    lam.shriek()
}

pub(crate) fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;

    /// Accepts `3,2,2,1` with or without surrounding parentheses; `()` is empty.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if inner.is_empty() {
            return Ok(IntegerPartition { parts: Vec::new() });
        }
        let parts = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(1, format!("bad part `{x}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntegerPartition::new(parts)
    }
}

impl Serialize for IntegerPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntegerPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A bijection on `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::domain(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 1-based point `x`.
    pub fn image(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::domain("composing permutations of different sizes"));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.image(x)).collect(),
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2,1,3` or, for n ≤ 9, the compact `213`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let images = if s.contains(',') {
            s.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(1, format!("bad image `{x}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse(1, format!("bad image `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn bell_by_binomial_recurrence(n: usize) -> u128 {
        // B(m+1) = sum_k C(m,k) B(k)
        let mut b = vec![1u128];
        for m in 0..n {
            let mut c = 1u128;
            let mut s = 0u128;
            for (k, bk) in b.iter().enumerate() {
                s += c * bk;
                c = c * (m - k) as u128 / (k + 1) as u128;
            }
            b.push(s);
        }
        b[n]
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_partitions(1).unwrap(), vec![sp("1")]);
        let three: Vec<String> = enumerate_partitions(3)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(three, ["1,2,3", "1,2/3", "1,3/2", "1/2,3", "1/2/3"]);
        assert_eq!(enumerate_partitions(5).unwrap().len(), 52);
    }

    #[test]
    fn enumeration_counts_match_bell() {
        for n in 1..=7 {
            let parts = enumerate_partitions(n).unwrap();
            assert_eq!(parts.len() as u128, bell_by_binomial_recurrence(n));
            assert_eq!(bell_number(n), bell_by_binomial_recurrence(n));
            let mut sorted = parts.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, parts, "strictly increasing and duplicate-free");
        }
    }

    #[test]
    fn enumeration_rejects_bad_sizes() {
        assert!(matches!(enumerate_partitions(0), Err(Error::Domain(_))));
        assert!(matches!(
            enumerate_partitions(limits::max_n() + 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn refinement_examples() {
        assert!(sp("134/25/6/78").refines(&sp("1346/25/78")).unwrap());
        assert!(sp("12/3").refines(&sp("12/3")).unwrap());
        assert!(!sp("12/3").refines(&sp("13/2")).unwrap());
        assert!(sp("12").refines(&sp("123")).is_err());
    }

    #[test]
    fn refinement_is_partial_order() {
        for n in 1..=5 {
            let ps = enumerate_partitions(n).unwrap();
            for a in &ps {
                assert!(a.is_refinement_of(a));
                for b in &ps {
                    if a.is_refinement_of(b) && b.is_refinement_of(a) {
                        assert_eq!(a, b);
                    }
                    for c in &ps {
                        if a.is_refinement_of(b) && b.is_refinement_of(c) {
                            assert!(a.is_refinement_of(c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn refinements_and_coarsenings_match_filter() {
        for n in 1..=6 {
            let ps = enumerate_partitions(n).unwrap();
            for p in &ps {
                let mut down = p.refinements();
                down.sort();
                let want: Vec<_> = ps
                    .iter()
                    .filter(|s| s.is_refinement_of(p))
                    .cloned()
                    .collect();
                assert_eq!(down, want);
                let mut up = p.coarsenings();
                up.sort();
                let want: Vec<_> = ps
                    .iter()
                    .filter(|s| p.is_refinement_of(s))
                    .cloned()
                    .collect();
                assert_eq!(up, want);
            }
        }
    }

    #[test]
    fn slash_examples() {
        assert_eq!(sp("134/25").slash(&sp("1/23")), sp("134/25/6/78"));
        assert_eq!(sp("1").slash(&sp("1")), sp("1/2"));
        assert_eq!(sp("12").slash(&sp("12")), sp("12/34"));
        assert_eq!(sp("12").slash(&SetPartition::empty()), sp("12"));
    }

    #[test]
    fn atomic_decomposition_examples() {
        assert_eq!(
            sp("134/25/6/78").atomic_decomposition(),
            vec![sp("134/25"), sp("1"), sp("12")]
        );
        assert_eq!(sp("1/2/3").atomic_decomposition(), vec![sp("1"); 3]);
        assert_eq!(sp("123").atomic_decomposition(), vec![sp("123")]);
        assert!(sp("13/2").is_atomic());
        assert!(!sp("1/23").is_atomic());
    }

    #[test]
    fn atomic_factors_reassemble() {
        for n in 1..=7 {
            for p in enumerate_partitions(n).unwrap() {
                let factors = p.atomic_decomposition();
                for f in &factors {
                    assert!(f.is_atomic(), "{f} from {p}");
                    // no proper prefix of an atom is a union of blocks
                    for k in 1..f.n() {
                        let left = &f.rgs()[..k];
                        let closed = f.rgs()[k..].iter().all(|b| !left.contains(b));
                        assert!(!closed);
                    }
                }
                let folded = factors
                    .iter()
                    .fold(SetPartition::empty(), |acc, f| acc.slash(f));
                assert_eq!(folded, p);
            }
        }
    }

    #[test]
    fn shape_and_factorials() {
        let lam = sp("134/25/6/78").shape();
        assert_eq!(lam.parts(), &[3, 2, 2, 1]);
        assert_eq!(lambda_factorial(&lam), 24);
        assert_eq!(lambda_shriek(&lam), 2);
        assert_eq!(SetPartition::coarsest(5).shape().parts(), &[5]);
        assert_eq!(SetPartition::finest(4).shape().parts(), &[1, 1, 1, 1]);
        let one = IntegerPartition::new(vec![1]).unwrap();
        assert_eq!((one.factorial(), one.shriek()), (1, 1));
        assert!(IntegerPartition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn mobius_examples() {
        let z4 = SetPartition::finest(4);
        assert_eq!(
            mobius_interval(&z4, &SetPartition::coarsest(4)).unwrap(),
            -6
        );
        assert_eq!(mobius_interval(&sp("12/3"), &sp("12/3")).unwrap(), 1);
        assert_eq!(mobius_interval(&z4, &sp("12/34")).unwrap(), 1);
        assert!(mobius_interval(&sp("12/3"), &sp("13/2")).is_err());
    }

    #[test]
    fn mobius_matches_recursive_definition() {
        for n in 1..=6 {
            let ps = enumerate_partitions(n).unwrap();
            for sigma in &ps {
                // interval elements sorted so that every τ precedes its coarsenings
                let mut interval: Vec<&SetPartition> =
                    ps.iter().filter(|t| sigma.is_refinement_of(t)).collect();
                interval.sort_by_key(|t| std::cmp::Reverse(t.num_blocks()));
                let mut mu: Vec<i64> = Vec::with_capacity(interval.len());
                for (i, pi) in interval.iter().enumerate() {
                    let v = if i == 0 {
                        1
                    } else {
                        -(0..i)
                            .filter(|&j| interval[j].is_refinement_of(pi) && interval[j] != *pi)
                            .map(|j| mu[j])
                            .sum::<i64>()
                    };
                    mu.push(v);
                    assert_eq!(mobius_interval(sigma, pi).unwrap(), v, "[{sigma}, {pi}]");
                }
            }
        }
    }

    #[test]
    fn permutation_action_examples() {
        let d213: Permutation = "213".parse().unwrap();
        assert_eq!(sp("1/23").apply(&d213).unwrap(), sp("13/2"));
        assert_eq!(
            sp("12/3").apply(&Permutation::identity(3)).unwrap(),
            sp("12/3")
        );
        let d321: Permutation = "321".parse().unwrap();
        assert_eq!(sp("12/3").apply(&d321).unwrap(), sp("1/23"));
        assert!(sp("12").apply(&d321).is_err());
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(sp("14/23").oplus().unwrap(), sp("145/23"));
        assert_eq!(sp("1").oplus().unwrap(), sp("12"));
        assert_eq!(sp("1/2").oplus().unwrap(), sp("1/23"));
        assert!(SetPartition::empty().oplus().is_err());
    }

    #[test]
    fn text_format() {
        let p = sp("134/25/6/78");
        assert_eq!(p.to_string(), "1,3,4/2,5/6/7,8");
        assert_eq!(sp("1,3,4/2,5/6/7,8"), p);
        assert_eq!(sp("7,8/6/2,5/1,3,4"), p);
        let ten: SetPartition = "1,10/2/3/4/5/6/7/8/9".parse().unwrap();
        assert_eq!(ten.n(), 10);
        assert!("12/2".parse::<SetPartition>().is_err());
        assert!("1,3".parse::<SetPartition>().is_err());
        assert_eq!(sp("").n(), 0);
    }

    #[test]
    fn pack_round_trip() {
        for p in enumerate_partitions(6).unwrap() {
            assert_eq!(SetPartition::unpack(p.pack()), p);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_partition(max_n: usize) -> impl Strategy<Value = SetPartition> {
            (1..=max_n).prop_flat_map(|n| {
                proptest::collection::vec(0..n, n)
                    .prop_map(|labels| SetPartition::from_labels(&labels))
            })
        }

        fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((1..=n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::new(v).unwrap())
        }

        proptest! {
            #[test]
            fn rgs_round_trip(p in arb_partition(9)) {
                prop_assert_eq!(SetPartition::from_rgs(p.rgs()).unwrap(), p.clone());
                prop_assert_eq!(p.to_string().parse::<SetPartition>().unwrap(), p.clone());
                prop_assert_eq!(SetPartition::from_blocks(p.n(), &p.blocks()).unwrap(), p);
            }

            #[test]
            fn slash_associative_and_shape_additive(
                a in arb_partition(4), b in arb_partition(4), c in arb_partition(4)
            ) {
                prop_assert_eq!(a.slash(&b).slash(&c), a.slash(&b.slash(&c)));
                prop_assert_eq!(a.slash(&b).shape(), a.shape().union(&b.shape()));
            }

            #[test]
            fn permutation_action_is_group_action(
                (p, d1, d2) in (1usize..=7).prop_flat_map(|n| (
                    proptest::collection::vec(0..n, n).prop_map(|l| SetPartition::from_labels(&l)),
                    arb_perm(n),
                    arb_perm(n),
                ))
            ) {
                let lhs = p.apply(&d2).unwrap().apply(&d1).unwrap();
                let rhs = p.apply(&d1.compose(&d2).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(p.apply(&d1).unwrap().apply(&d1.inverse()).unwrap(), p);
            }
        }
    }
}
