//! Per-degree change-of-basis tables, built lazily and shared process-wide.
//!
//! Every basis is related to `p` by a system that is triangular for refinement:
//!
//! * `x_π = Σ_{σ≤π} μ(σ,π) p_σ` and `p_π = Σ_{σ≤π} x_σ`
//! * `p_π = Σ_{σ≥π} m_σ` and, by Möbius inversion, `m_π = Σ_{σ≥π} μ(π,σ) p_σ`
//! * `p_π = (1/μ(0̂,π)) Σ_{σ≤π} μ(σ,π) e_σ`; `e → p` is obtained by back-substitution
//! * `h_π = Σ_{σ≤π} |μ(0̂,σ)| p_σ`; `p → h` is obtained by back-substitution

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::{Basis, Rational};
use crate::cache::OnceMap;
use crate::error::{Error, Result};
use crate::limits;
use crate::partitions::{mobius_unchecked, partitions_unchecked, SetPartition};

/// Sparse column: `(partition index, coefficient)` pairs sorted by index.
pub(crate) type Column = Vec<(usize, Rational)>;

/// All partitions of `[n]` with their refinement intervals.
pub(crate) struct PartitionIndex {
    pub parts: Vec<SetPartition>,
    pub index: HashMap<SetPartition, usize>,
    /// `down[i]`: indices of every σ ≤ parts[i], sorted.
    pub down: Vec<Vec<usize>>,
    /// `up[i]`: indices of every σ ≥ parts[i], sorted.
    pub up: Vec<Vec<usize>>,
}

impl PartitionIndex {
    fn build(n: usize) -> Self {
        let parts = partitions_unchecked(n);
        let index: HashMap<SetPartition, usize> = parts
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let sorted_indices = |ps: Vec<SetPartition>| {
            let mut v: Vec<usize> = ps.iter().map(|p| index[p]).collect();
            v.sort_unstable();
            v
        };
        let down = parts
            .iter()
            .map(|p| sorted_indices(p.refinements()))
            .collect();
        let up = parts
            .iter()
            .map(|p| sorted_indices(p.coarsenings()))
            .collect();
        PartitionIndex {
            parts,
            index,
            down,
            up,
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn position(&self, p: &SetPartition) -> usize {
        self.index[p]
    }
}

/// Change-of-basis data between one basis and `p` in a fixed degree.
pub(crate) struct BasisTable {
    /// `to_p[i]`: expansion of `b_{parts[i]}` in `p`.
    pub to_p: Vec<Column>,
    /// `from_p[i]`: expansion of `p_{parts[i]}` in `b`.
    pub from_p: Vec<Column>,
}

fn index_cache() -> &'static OnceMap<usize, PartitionIndex> {
    static CACHE: OnceLock<OnceMap<usize, PartitionIndex>> = OnceLock::new();
    CACHE.get_or_init(OnceMap::new)
}

fn table_cache() -> &'static OnceMap<(Basis, usize), BasisTable> {
    static CACHE: OnceLock<OnceMap<(Basis, usize), BasisTable>> = OnceLock::new();
    CACHE.get_or_init(OnceMap::new)
}

pub(crate) fn partition_index(n: usize) -> Result<Arc<PartitionIndex>> {
    limits::check_n(n)?;
    Ok(index_cache().get_or_init(&n, || PartitionIndex::build(n)))
}

pub(crate) fn basis_table(basis: Basis, n: usize) -> Result<Arc<BasisTable>> {
    if basis == Basis::P {
        return Err(Error::Invariant("no table for the p basis".into()));
    }
    let idx = partition_index(n)?;
    Ok(table_cache().get_or_init(&(basis, n), || build_table(basis, &idx)))
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn build_table(basis: Basis, idx: &PartitionIndex) -> BasisTable {
    let parts = &idx.parts;
    let zero_n = SetPartition::finest(parts[0].n());
    match basis {
        Basis::X => {
            let to_p = (0..idx.len())
                .map(|i| {
                    idx.down[i]
                        .iter()
                        .map(|&s| (s, int(mobius_unchecked(&parts[s], &parts[i]))))
                        .collect()
                })
                .collect();
            let from_p = (0..idx.len())
                .map(|i| idx.down[i].iter().map(|&s| (s, Rational::one())).collect())
                .collect();
            BasisTable { to_p, from_p }
        }
        Basis::M => {
            let to_p = (0..idx.len())
                .map(|i| {
                    idx.up[i]
                        .iter()
                        .map(|&s| (s, int(mobius_unchecked(&parts[i], &parts[s]))))
                        .collect()
                })
                .collect();
            let from_p = (0..idx.len())
                .map(|i| idx.up[i].iter().map(|&s| (s, Rational::one())).collect())
                .collect();
            BasisTable { to_p, from_p }
        }
        Basis::E => {
            let from_p: Vec<Column> = (0..idx.len())
                .map(|i| {
                    let denom = mobius_unchecked(&zero_n, &parts[i]);
                    idx.down[i]
                        .iter()
                        .map(|&s| {
                            let mu = mobius_unchecked(&parts[s], &parts[i]);
                            (s, Rational::new(mu.into(), denom.into()))
                        })
                        .collect()
                })
                .collect();
            let to_p = invert_lower(idx, &from_p);
            BasisTable { to_p, from_p }
        }
        Basis::H => {
            let to_p: Vec<Column> = (0..idx.len())
                .map(|i| {
                    idx.down[i]
                        .iter()
                        .map(|&s| (s, int(mobius_unchecked(&zero_n, &parts[s]).abs())))
                        .collect()
                })
                .collect();
            let from_p = invert_lower(idx, &to_p);
            BasisTable { to_p, from_p }
        }
        Basis::P => unreachable!("p has no table"),
    }
}

/// Inverts a system `a_π = Σ_{σ≤π} c(σ,π) b_σ` (nonzero diagonal) into `b_π = Σ_{σ≤π} d(σ,π) a_σ`.
///
/// Columns are solved finest-first, so every `b_σ` with `σ < π` is already known
/// when `b_π` is isolated from `a_π`.
pub(crate) fn invert_lower(idx: &PartitionIndex, cols: &[Column]) -> Vec<Column> {
    let mut order: Vec<usize> = (0..idx.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(idx.parts[i].num_blocks()));
    let mut inv: Vec<Column> = vec![Vec::new(); idx.len()];
    for &i in &order {
        let diag = cols[i]
            .iter()
            .find(|(s, _)| *s == i)
            .map(|(_, c)| c.clone())
            .expect("triangular system with zero diagonal");
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        acc.insert(i, diag.recip());
        for (s, c) in &cols[i] {
            if *s == i {
                continue;
            }
            let factor = c / &diag;
            for (t, d) in &inv[*s] {
                *acc.entry(*t).or_insert_with(Rational::zero) -= &factor * d;
            }
        }
        inv[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    }
    inv
}

/// Applies columns to sparse input coefficients, returning a sparse result.
pub(crate) fn apply_columns<'a>(
    terms: impl Iterator<Item = (usize, &'a Rational)>,
    cols: &[Column],
) -> BTreeMap<usize, Rational> {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, a) in terms {
        for (j, c) in &cols[i] {
            *acc.entry(*j).or_insert_with(Rational::zero) += a * c;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}
