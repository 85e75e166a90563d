//! The chromatic symmetric function `Y_G` in noncommuting variables.
//!
//! Four independent routes compute it:
//!
//! * [`y_subset`]: `Σ_{S⊆E} (−1)^{|S|} p_{π(S)}`
//! * [`y_mobius`]: `Σ_{π∈L_G} μ_L(0̂,π) p_π` over the lattice of contractions
//! * [`y_deletion_contraction`]: `Y_G = Y_{G−ε} − Y_{G/ε}↑` with relabelling
//! * [`y_definition`]: `Σ m_π` over partitions whose blocks are independent sets
//!
//! The remaining functions turn known structural facts about `Y_G` into checks
//! that either report or return an [`Error::Invariant`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{
    block_masks, complete_graph_union, components_partition, contract_last_edge,
    contraction_lattice, delete_edges, path_edge_closure, relabel, Edge, LabeledGraph,
};
use crate::limits;
use crate::ncsym::{rat, Basis, NcSymElement, Rational, SymBasis, SymElement};
use crate::partitions::{
    bell_number, factorial, partitions_unchecked, IntegerPartition, Permutation, SetPartition,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Subset,
    Mobius,
    #[serde(rename = "delcon")]
    DeletionContraction,
    Definition,
    Auto,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subset" => Ok(Method::Subset),
            "mobius" => Ok(Method::Mobius),
            "delcon" => Ok(Method::DeletionContraction),
            "definition" => Ok(Method::Definition),
            "auto" => Ok(Method::Auto),
            other => Err(Error::domain(format!(
                "unknown method `{other}` (expected subset, mobius, delcon, definition or auto)"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Subset => "subset",
            Method::Mobius => "mobius",
            Method::DeletionContraction => "delcon",
            Method::Definition => "definition",
            Method::Auto => "auto",
        })
    }
}

/// Edge count up to which [`Method::Auto`] uses the subset expansion.
pub const AUTO_SUBSET_MAX_EDGES: usize = 18;
/// Bell-number bound up to which [`Method::Auto`] falls back to the Möbius expansion.
pub const AUTO_MOBIUS_MAX_BELL: u128 = 21_147;
/// Recursive calls allowed in one deletion–contraction evaluation.
pub const DELCON_CALL_BUDGET: usize = 2_000_000;

/// Picks the concrete method [`Method::Auto`] resolves to for `g`.
pub fn resolve_method(g: &LabeledGraph, method: Method) -> Method {
    if method != Method::Auto {
        return method;
    }
    if g.num_edges() <= AUTO_SUBSET_MAX_EDGES.min(limits::subset_edge_limit()) {
        Method::Subset
    } else if bell_number(g.n()) <= AUTO_MOBIUS_MAX_BELL && g.n() <= limits::max_n() {
        Method::Mobius
    } else {
        Method::DeletionContraction
    }
}

/// `Y_G` by the requested method. Every method except `Definition` answers in `p`;
/// `Definition` answers in `m`.
pub fn chromatic_symmetric_function(g: &LabeledGraph, method: Method) -> Result<NcSymElement> {
    match resolve_method(g, method) {
        Method::Subset => y_subset(g),
        Method::Mobius => y_mobius(g),
        Method::DeletionContraction => y_deletion_contraction(g),
        Method::Definition => y_definition(g),
        Method::Auto => unreachable!(),
    }
}

/// `Y_G` in the `p` basis by the default method.
pub fn compute_y(g: &LabeledGraph) -> Result<NcSymElement> {
    chromatic_symmetric_function(g, Method::Auto)?.convert(Basis::P)
}

fn check_subset_limit(g: &LabeledGraph) -> Result<()> {
    let max = limits::subset_edge_limit();
    if g.num_edges() > max {
        return Err(Error::Resource {
            limit: "subset_edge_limit",
            value: g.num_edges(),
            max,
        });
    }
    Ok(())
}

const SUBSET_CHUNK: u64 = 1 << 12;

/// Runs `key` on the vertex labelling of `([n], S)` for every `S ⊆ E` and sums `(−1)^{|S|}`
/// per key. Chunks are processed in parallel and merged by exact integer addition.
fn signed_subset_counts<K, F>(g: &LabeledGraph, key: F) -> HashMap<K, i64>
where
    K: Eq + std::hash::Hash + Send,
    F: Fn(&[u8]) -> K + Sync,
{
    let n = g.n();
    let edges: Vec<(u8, u8)> = g
        .edges()
        .iter()
        .map(|&(u, v)| ((u - 1) as u8, (v - 1) as u8))
        .collect();
    let total: u64 = 1 << edges.len();
    let chunks = total.div_ceil(SUBSET_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut counts: HashMap<K, i64> = HashMap::new();
            let mut parent = [0u8; limits::HARD_MAX_N];
            let lo = c * SUBSET_CHUNK;
            let hi = (lo + SUBSET_CHUNK).min(total);
            for mask in lo..hi {
                for (i, p) in parent.iter_mut().enumerate().take(n) {
                    *p = i as u8;
                }
                let mut bits = mask;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let (u, v) = edges[j];
                    let a = find(&mut parent, u);
                    let b = find(&mut parent, v);
                    if a != b {
                        parent[a.max(b) as usize] = a.min(b);
                    }
                }
                for i in 0..n {
                    parent[i] = find(&mut parent, i as u8);
                }
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                *counts.entry(key(&parent[..n])).or_insert(0) += sign;
            }
            counts
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

fn find(parent: &mut [u8], mut x: u8) -> u8 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

/// Root labels are each component's least vertex, so first appearance order is canonical.
fn pack_roots(roots: &[u8]) -> u64 {
    SetPartition::from_labels(roots).pack()
}

fn element_from_counts(
    basis: Basis,
    n: usize,
    counts: impl IntoIterator<Item = (SetPartition, i64)>,
) -> NcSymElement {
    let terms: BTreeMap<SetPartition, Rational> = counts
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(p, c)| (p, rat(c)))
        .collect();
    NcSymElement::from_map_unchecked(basis, n, terms)
}

/// `Y_G = Σ_{S⊆E(G)} (−1)^{|S|} p_{π(S)}`.
pub fn y_subset(g: &LabeledGraph) -> Result<NcSymElement> {
    check_subset_limit(g)?;
    let counts = signed_subset_counts(g, pack_roots);
    Ok(element_from_counts(
        Basis::P,
        g.n(),
        counts
            .into_iter()
            .map(|(k, c)| (SetPartition::unpack(k), c)),
    ))
}

/// `Y_G = Σ_{π∈L_G} μ_L(0̂_n, π) p_π`.
pub fn y_mobius(g: &LabeledGraph) -> Result<NcSymElement> {
    let lattice = contraction_lattice(g)?;
    Ok(element_from_counts(
        Basis::P,
        g.n(),
        lattice.iter().map(|(p, mu)| (p.clone(), mu)),
    ))
}

/// `Y_G` as `Σ m_π` over partitions whose every block is an independent set of `G`,
/// which regroups the sum over proper colourings by the kernel of the colouring.
pub fn y_definition(g: &LabeledGraph) -> Result<NcSymElement> {
    limits::check_n(g.n())?;
    let adj = g.adjacency();
    let independent = |p: &SetPartition| {
        block_masks(p).into_iter().all(|m| {
            let mut bits = m;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if adj[v] & m != 0 {
                    return false;
                }
            }
            true
        })
    };
    Ok(element_from_counts(
        Basis::M,
        g.n(),
        partitions_unchecked(g.n())
            .into_iter()
            .filter(independent)
            .map(|p| (p, 1)),
    ))
}

/// `Y_G` by deletion–contraction on the lexicographically largest edge, after relabelling
/// its endpoints to `n−1, n`. Disconnected graphs are split into components first.
pub fn y_deletion_contraction(g: &LabeledGraph) -> Result<NcSymElement> {
    limits::check_n(g.n())?;
    let mut state = DelCon {
        memo: HashMap::new(),
        calls: 0,
    };
    state.eval(g)
}

struct DelCon {
    memo: HashMap<LabeledGraph, NcSymElement>,
    calls: usize,
}

impl DelCon {
    fn eval(&mut self, g: &LabeledGraph) -> Result<NcSymElement> {
        if let Some(y) = self.memo.get(g) {
            return Ok(y.clone());
        }
        self.calls += 1;
        if self.calls > DELCON_CALL_BUDGET {
            return Err(Error::Resource {
                limit: "deletion_contraction_calls",
                value: self.calls,
                max: DELCON_CALL_BUDGET,
            });
        }
        let n = g.n();
        let y = if g.num_edges() == 0 {
            NcSymElement::basis_term(Basis::P, SetPartition::finest(n), rat(1))
        } else if !g.is_connected() {
            // δ(G) = G_1 | G_2 | ⋯ and Y_G = δ^{-1} ∘ (Y_{G_1} Y_{G_2} ⋯)
            let comps = components_partition(g).blocks();
            let mut images = vec![0; n];
            let mut next = 1;
            let mut product = NcSymElement::one();
            for block in &comps {
                for &v in block {
                    images[v - 1] = next;
                    next += 1;
                }
                product = product.multiply(&self.eval(&g.induced(block))?)?;
            }
            let delta = Permutation::new(images)?;
            product.act(&delta.inverse())?
        } else {
            let &(u, v) = g.edges().last().expect("nonempty edge set");
            let delta = endpoint_relabelling(n, u, v);
            let moved = relabel(&delta, g)?;
            let deleted = delete_edges(&moved, &[(n - 1, n)])?;
            let contracted = contract_last_edge(&moved)?;
            let y_moved = self
                .eval(&deleted)?
                .sub(&self.eval(&contracted)?.induce()?)?;
            y_moved.act(&delta.inverse())?
        };
        self.memo.insert(g.clone(), y.clone());
        Ok(y)
    }
}

/// The permutation sending `u ↦ n−1`, `v ↦ n` and the other labels to `1..n−2` in order.
fn endpoint_relabelling(n: usize, u: usize, v: usize) -> Permutation {
    let mut images = vec![0; n];
    let mut next = 1;
    for x in 1..=n {
        if x == u {
            images[x - 1] = n - 1;
        } else if x == v {
            images[x - 1] = n;
        } else {
            images[x - 1] = next;
            next += 1;
        }
    }
    Permutation::new(images).expect("valid relabelling")
}

/// Stanley's `X_G = Σ_{S⊆E} (−1)^{|S|} p_{λ(π(S))}` in commuting variables.
pub fn x_classical(g: &LabeledGraph) -> Result<SymElement> {
    check_subset_limit(g)?;
    let counts = signed_subset_counts(g, |roots| {
        let mut sizes = [0u8; limits::HARD_MAX_N];
        for &r in roots {
            sizes[r as usize] += 1;
        }
        let mut parts: Vec<u8> = sizes.iter().copied().filter(|&s| s > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    });
    let mut out = SymElement::zero(SymBasis::P, g.n());
    for (parts, c) in counts {
        if c != 0 {
            let lam = IntegerPartition::new(parts.into_iter().map(usize::from).collect())?;
            out.add_term(lam, rat(c));
        }
    }
    Ok(out)
}

/// `Σ_{S⊆[k−1]} (−1)^{|S|} Y_{G − ∪_{i∈S} ε_i}` for edges `ε_1..ε_k` forming a cycle of `G`.
/// The result is the zero element of degree `n` whenever the identity holds.
pub fn k_deletion_sum(g: &LabeledGraph, cycle_edges: &[Edge]) -> Result<NcSymElement> {
    check_is_cycle(g, cycle_edges)?;
    let k = cycle_edges.len();
    let mut total = NcSymElement::zero(Basis::P, g.n());
    for mask in 0u32..1 << (k - 1) {
        let removed: Vec<Edge> = (0..k - 1)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| cycle_edges[i])
            .collect();
        let y = compute_y(&delete_edges(g, &removed)?)?;
        let signed = if removed.len().is_multiple_of(2) {
            y
        } else {
            y.neg()
        };
        total = total.add(&signed)?;
    }
    Ok(total)
}

fn check_is_cycle(g: &LabeledGraph, cycle_edges: &[Edge]) -> Result<()> {
    let k = cycle_edges.len();
    if k < 3 {
        return Err(Error::domain("a cycle needs at least 3 edges"));
    }
    let mut edges: Vec<Edge> = cycle_edges
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    for &(u, v) in &edges {
        if !g.has_edge(u, v) {
            return Err(Error::domain(format!(
                "edge {{{u},{v}}} is not in the graph"
            )));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    if edges.len() != k {
        return Err(Error::domain("cycle edges repeat"));
    }
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in &edges {
        *degree.entry(u).or_insert(0) += 1;
        *degree.entry(v).or_insert(0) += 1;
    }
    if degree.len() != k || degree.values().any(|&d| d != 2) {
        return Err(Error::domain("edges do not form a simple cycle"));
    }
    // 2-regular on k vertices with k edges: a single cycle iff connected
    let verts: Vec<usize> = degree.keys().copied().collect();
    let local = LabeledGraph::new(
        k,
        edges.iter().map(|&(u, v)| {
            (
                verts.binary_search(&u).unwrap() + 1,
                verts.binary_search(&v).unwrap() + 1,
            )
        }),
    )?;
    if !local.is_connected() {
        return Err(Error::domain("edges form several disjoint cycles"));
    }
    Ok(())
}

/// Closed-form `x`-expansion of a tree:
/// `Y_T = (−1)^{n−1} Σ x_σ` over σ whose same-block tree paths cover every edge and in
/// which no leaf is a singleton block.
pub fn tree_x_expansion(t: &LabeledGraph) -> Result<NcSymElement> {
    if !t.is_tree() {
        return Err(Error::domain("tree_x_expansion needs a tree"));
    }
    limits::check_n(t.n())?;
    let n = t.n();
    let leaves: Vec<usize> = (1..=n).filter(|&v| t.degree(v) == 1).collect();
    let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
    let mut terms = Vec::new();
    for sigma in partitions_unchecked(n) {
        let leaf_alone = leaves.iter().any(|&l| {
            let b = sigma.block_of(l);
            sigma.rgs().iter().filter(|&&x| x as usize == b).count() < 2
        });
        if leaf_alone {
            continue;
        }
        if path_edge_closure(t, &sigma)?.len() == t.num_edges() {
            terms.push((sigma, sign));
        }
    }
    Ok(element_from_counts(Basis::X, n, terms))
}

/// `[e_{1̂_n}] Y_G = |[p_{1̂_n}] Y_G| / (n−1)!`, using the subset expansion for `[p_{1̂_n}]`.
pub fn top_e_coefficient_formula(g: &LabeledGraph) -> Result<Rational> {
    let n = g.n();
    if n == 0 {
        return Ok(Rational::one());
    }
    let top = y_subset(g)?.coeff(&SetPartition::coarsest(n));
    Ok(top.abs() / big_factorial(n - 1))
}

/// `[e_{B_1/B_2}] Y_G = −|[p_{1̂_n}]Y_G|/(n−1)! + (−1)^n Σ_{S: π(S)=B_1/B_2} (−1)^{|S|} / ((|B_1|−1)!(|B_2|−1)!)`.
pub fn two_block_e_coefficient_formula(g: &LabeledGraph, pi: &SetPartition) -> Result<Rational> {
    let n = g.n();
    if pi.n() != n || pi.num_blocks() != 2 {
        return Err(Error::domain(format!(
            "{pi} is not a two-block partition of [{n}]"
        )));
    }
    let y = y_subset(g)?;
    let top = y.coeff(&SetPartition::coarsest(n)).abs() / big_factorial(n - 1);
    // Σ_{S: π(S)=π} (−1)^{|S|} is exactly [p_π] of the subset expansion
    let hits = y.coeff(pi);
    let blocks = pi.blocks();
    let denom = big_factorial(blocks[0].len() - 1) * big_factorial(blocks[1].len() - 1);
    let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
    Ok(-top + sign * hits / denom)
}

fn big_factorial(m: usize) -> Rational {
    Rational::from_integer(BigInt::from(factorial(m)))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EVerdict {
    EPositive,
    Mixed,
    Zero,
}

/// A partition with a strictly negative `e`-coefficient in `Y_G`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NegativeWitness {
    pub partition: SetPartition,
    /// From the full `e`-expansion of `Y_G`.
    pub coefficient: Rational,
    /// From the two-block coefficient formula on the component, times the top coefficients
    /// of the other components.
    pub formula_coefficient: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EPositivityReport {
    pub verdict: EVerdict,
    pub is_clique_union: bool,
    pub negative_witness: Option<NegativeWitness>,
    /// `[e_{π(G)}] Y_G`, the product over components of `[e_{1̂}] Y_{G_i}`; equals
    /// `[e_{1̂_n}] Y_G` for connected `G`.
    pub top_coefficient: Rational,
    pub positive_terms: usize,
    pub negative_terms: usize,
}

/// Classifies `e`-positivity of `Y_G` and cross-checks the structural prediction.
///
/// Fails with [`Error::Invariant`] when the expansion contradicts the clique-union
/// criterion or a witness coefficient disagrees between formula and expansion.
pub fn classify_e_positivity(g: &LabeledGraph) -> Result<EPositivityReport> {
    let n = g.n();
    let y_e = compute_y(g)?.convert(Basis::E)?;
    let positive_terms = y_e.terms().values().filter(|c| c.is_positive()).count();
    let negative_terms = y_e.terms().values().filter(|c| c.is_negative()).count();
    let verdict = if y_e.is_zero() {
        EVerdict::Zero
    } else if negative_terms == 0 {
        EVerdict::EPositive
    } else {
        EVerdict::Mixed
    };
    let is_clique_union = g.is_clique_union();
    if (verdict == EVerdict::EPositive) != is_clique_union {
        return Err(Error::Invariant(format!(
            "{}: verdict {verdict:?} but clique union = {is_clique_union}",
            g.encoding()
        )));
    }
    if negative_terms > 0 && positive_terms == 0 {
        return Err(Error::Invariant(format!(
            "{}: Y_G is e-negative",
            g.encoding()
        )));
    }

    let comps = components_partition(g).blocks();
    let mut top_parts = Vec::with_capacity(comps.len());
    for block in &comps {
        top_parts.push(top_e_coefficient_formula(&g.induced(block))?);
    }
    let top_coefficient: Rational = top_parts.iter().product();
    let components = components_partition(g);
    if y_e.coeff(&components) != top_coefficient {
        return Err(Error::Invariant(format!(
            "{}: top e-coefficient {} differs from formula {top_coefficient}",
            g.encoding(),
            y_e.coeff(&components)
        )));
    }

    let mut negative_witness = None;
    for (ci, block) in comps.iter().enumerate() {
        let h = g.induced(block);
        let Some((a, b)) = first_non_edge(&h) else {
            continue;
        };
        let c = h.n();
        let rest: Vec<usize> = (1..=c).filter(|&x| x != a && x != b).collect();
        let local = SetPartition::from_blocks(c, &[vec![a, b], rest])?;
        let local_formula = two_block_e_coefficient_formula(&h, &local)?;
        let local_full = compute_y(&h)?.coefficient(Basis::E, &local)?;
        if local_formula != local_full || !local_formula.is_negative() {
            return Err(Error::Invariant(format!(
                "{}: two-block coefficient formula {local_formula} vs expansion {local_full}",
                h.encoding()
            )));
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (cj, other) in comps.iter().enumerate() {
            if cj == ci {
                let (ga, gb) = (block[a - 1], block[b - 1]);
                blocks.push(vec![ga, gb]);
                blocks.push(
                    other
                        .iter()
                        .copied()
                        .filter(|&x| x != ga && x != gb)
                        .collect(),
                );
            } else {
                blocks.push(other.clone());
            }
        }
        let partition = SetPartition::from_blocks(n, &blocks)?;
        let formula_coefficient: Rational = top_parts
            .iter()
            .enumerate()
            .map(|(cj, t)| {
                if cj == ci {
                    local_formula.clone()
                } else {
                    t.clone()
                }
            })
            .product();
        let coefficient = y_e.coeff(&partition);
        if coefficient != formula_coefficient {
            return Err(Error::Invariant(format!(
                "{}: witness {partition} has coefficient {coefficient}, formula gives {formula_coefficient}",
                g.encoding()
            )));
        }
        negative_witness = Some(NegativeWitness {
            partition,
            coefficient,
            formula_coefficient,
        });
        break;
    }
    if negative_witness.is_none() != is_clique_union {
        return Err(Error::Invariant(format!(
            "{}: witness presence disagrees with clique-union test",
            g.encoding()
        )));
    }
    Ok(EPositivityReport {
        verdict,
        is_clique_union,
        negative_witness,
        top_coefficient,
        positive_terms,
        negative_terms,
    })
}

/// Lexicographically first pair `u < v` with no edge between them.
fn first_non_edge(g: &LabeledGraph) -> Option<(usize, usize)> {
    (1..=g.n())
        .flat_map(|u| (u + 1..=g.n()).map(move |v| (u, v)))
        .find(|&(u, v)| !g.has_edge(u, v))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XSignReport {
    pub n: usize,
    /// Number of connected components.
    pub k: usize,
    /// `(−1)^{n−k}`.
    pub sign: i8,
    /// `Z_G = (−1)^{n−k} Y_G` has no negative `x`-coefficient.
    pub z_is_x_positive: bool,
    pub y_in_x: NcSymElement,
}

/// Expands `Y_G` in `x` and tests that `(−1)^{n−k} Y_G` is `x`-positive.
pub fn x_sign_report(g: &LabeledGraph) -> Result<XSignReport> {
    let n = g.n();
    let k = components_partition(g).num_blocks();
    let sign: i8 = if (n - k).is_multiple_of(2) { 1 } else { -1 };
    let y_in_x = compute_y(g)?.convert(Basis::X)?;
    let z_is_x_positive = y_in_x
        .terms()
        .values()
        .all(|c| (c * rat(sign as i64)) >= Rational::zero());
    Ok(XSignReport {
        n,
        k,
        sign,
        z_is_x_positive,
        y_in_x,
    })
}

/// `(−1)^{t_π} Y_{K_π}` for `π` with blocks of size 1 or 2, where `t_π` counts the
/// blocks of size 2; fails unless it equals `x_π`.
pub fn matching_x_identity(pi: &SetPartition) -> Result<NcSymElement> {
    let blocks = pi.blocks();
    if let Some(b) = blocks.iter().find(|b| b.len() > 2) {
        return Err(Error::domain(format!(
            "block {b:?} of {pi} has more than two elements"
        )));
    }
    let t = blocks.iter().filter(|b| b.len() == 2).count();
    let y = compute_y(&complete_graph_union(pi))?;
    let signed = if t % 2 == 0 { y } else { y.neg() }.convert(Basis::X)?;
    let want = NcSymElement::basis_term(Basis::X, pi.clone(), rat(1));
    if signed.terms() != want.terms() {
        return Err(Error::Invariant(format!(
            "(-1)^t Y_K[{pi}] = {signed}, not x[{pi}]"
        )));
    }
    Ok(signed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{all_labeled_graphs, all_labeled_trees, find_cycles, random_graph};
    use crate::ncsym::ratio;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn g(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new(n, edges.iter().copied()).unwrap()
    }

    fn p_combo(terms: &[(&str, i64)]) -> NcSymElement {
        let n = sp(terms[0].0).n();
        NcSymElement::from_terms(Basis::P, n, terms.iter().map(|(s, c)| (sp(s), rat(*c)))).unwrap()
    }

    fn path3() -> LabeledGraph {
        LabeledGraph::path(3)
    }

    #[test]
    fn subset_examples() {
        let k2 = LabeledGraph::complete(2);
        assert_eq!(
            y_subset(&k2).unwrap().terms(),
            p_combo(&[("1/2", 1), ("12", -1)]).terms()
        );
        let e4 = LabeledGraph::edgeless(4);
        assert_eq!(
            y_subset(&e4).unwrap().terms(),
            p_combo(&[("1/2/3/4", 1)]).terms()
        );
        let k3 = LabeledGraph::complete(3);
        let want = p_combo(&[
            ("1/2/3", 1),
            ("12/3", -1),
            ("13/2", -1),
            ("1/23", -1),
            ("123", 2),
        ]);
        assert_eq!(y_subset(&k3).unwrap().terms(), want.terms());
        assert_eq!(y_mobius(&k3).unwrap().terms(), want.terms());
    }

    #[test]
    fn mobius_examples() {
        let want = p_combo(&[("1/2/3", 1), ("12/3", -1), ("1/23", -1), ("123", 1)]);
        assert_eq!(y_mobius(&path3()).unwrap().terms(), want.terms());
        assert_eq!(y_subset(&path3()).unwrap().terms(), want.terms());
        assert_eq!(
            y_mobius(&LabeledGraph::edgeless(1)).unwrap().terms(),
            p_combo(&[("1", 1)]).terms()
        );
        let k = complete_graph_union(&sp("13/2"));
        let e = NcSymElement::basis_term(Basis::E, sp("13/2"), rat(1));
        assert_eq!(y_mobius(&k).unwrap(), e);
    }

    #[test]
    fn deletion_contraction_examples() {
        let k2 = LabeledGraph::complete(2);
        assert_eq!(y_deletion_contraction(&k2).unwrap(), y_subset(&k2).unwrap());
        for gr in [
            path3(),
            LabeledGraph::complete(3),
            g(4, &[(1, 3), (2, 4), (3, 4)]),
        ] {
            assert_eq!(y_deletion_contraction(&gr).unwrap(), y_subset(&gr).unwrap());
        }
        assert_eq!(
            y_deletion_contraction(&LabeledGraph::edgeless(0)).unwrap(),
            NcSymElement::one()
        );
    }

    #[test]
    fn definition_examples() {
        let k4 = LabeledGraph::complete(4);
        let y = y_definition(&k4).unwrap();
        assert_eq!(y.basis(), Basis::M);
        assert_eq!(y.len(), 1);
        assert_eq!(y.coeff(&SetPartition::finest(4)), rat(1));
        assert_eq!(y_definition(&LabeledGraph::edgeless(4)).unwrap().len(), 15);
        let k = complete_graph_union(&sp("13/2"));
        let y = y_definition(&k).unwrap();
        let want = NcSymElement::from_terms(
            Basis::M,
            3,
            [
                (sp("1/2/3"), rat(1)),
                (sp("12/3"), rat(1)),
                (sp("1/23"), rat(1)),
            ],
        )
        .unwrap();
        assert_eq!(y.terms(), want.terms());
        let e = NcSymElement::basis_term(Basis::E, sp("13/2"), rat(1));
        assert_eq!(y.word_expansion(3).unwrap(), e.word_expansion(3).unwrap());
    }

    #[test]
    fn four_methods_agree_on_small_graphs() {
        for n in 1..=4 {
            for gr in all_labeled_graphs(n).unwrap() {
                let a = y_subset(&gr).unwrap();
                assert_eq!(y_mobius(&gr).unwrap().terms(), a.terms());
                assert_eq!(y_deletion_contraction(&gr).unwrap().terms(), a.terms());
                assert_eq!(
                    y_definition(&gr)
                        .unwrap()
                        .convert(Basis::P)
                        .unwrap()
                        .terms(),
                    a.terms()
                );
            }
        }
        for seed in 0..5 {
            let gr = random_graph(6, 0.5, seed).unwrap();
            let a = y_subset(&gr).unwrap();
            assert_eq!(y_deletion_contraction(&gr).unwrap().terms(), a.terms());
        }
    }

    #[test]
    fn resource_limit_on_subset_method() {
        let k8 = LabeledGraph::complete(8);
        assert!(matches!(
            y_subset(&k8),
            Err(Error::Resource {
                limit: "subset_edge_limit",
                ..
            })
        ));
        assert_eq!(resolve_method(&k8, Method::Auto), Method::Mobius);
        assert_eq!(resolve_method(&path3(), Method::Auto), Method::Subset);
    }

    #[test]
    fn x_classical_examples() {
        let x = x_classical(&LabeledGraph::complete(2)).unwrap();
        let l11 = IntegerPartition::new(vec![1, 1]).unwrap();
        let l2 = IntegerPartition::new(vec![2]).unwrap();
        assert_eq!(x.coeff(&l11), rat(1));
        assert_eq!(x.coeff(&l2), rat(-1));
        let x = x_classical(&LabeledGraph::edgeless(3)).unwrap();
        assert_eq!(x.terms().len(), 1);
        for gr in all_labeled_graphs(4).unwrap() {
            assert_eq!(
                x_classical(&gr).unwrap(),
                y_subset(&gr).unwrap().project().unwrap()
            );
        }
    }

    #[test]
    fn k_deletion_examples() {
        let k3 = LabeledGraph::complete(3);
        let z = k_deletion_sum(&k3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 3);
        let c4 = LabeledGraph::cycle(4).unwrap();
        assert!(k_deletion_sum(&c4, &[(1, 2), (2, 3), (3, 4), (1, 4)])
            .unwrap()
            .is_zero());
        let gr = random_graph(6, 0.7, 3).unwrap();
        let five = find_cycles(&gr, 5).unwrap();
        let c5 = five.iter().find(|c| c.edges.len() == 5).expect("a 5-cycle");
        assert!(k_deletion_sum(&gr, &c5.edges).unwrap().is_zero());
        assert!(k_deletion_sum(&k3, &[(1, 2), (2, 3)]).is_err());
        assert!(k_deletion_sum(&LabeledGraph::path(4), &[(1, 2), (2, 3), (3, 4)]).is_err());
        let two_triangles = complete_graph_union(&sp("123/456"));
        let both: Vec<Edge> = two_triangles.edges().to_vec();
        assert!(k_deletion_sum(&two_triangles, &both).is_err());
    }

    #[test]
    fn tree_examples() {
        let want =
            NcSymElement::from_terms(Basis::X, 3, [(sp("123"), rat(1)), (sp("13/2"), rat(1))])
                .unwrap();
        assert_eq!(tree_x_expansion(&path3()).unwrap().terms(), want.terms());
        let k2 = tree_x_expansion(&LabeledGraph::complete(2)).unwrap();
        assert_eq!(k2.coeff(&sp("12")), rat(-1));
        assert_eq!(k2.len(), 1);
        let star = g(4, &[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(
            tree_x_expansion(&star).unwrap().terms(),
            y_subset(&star).unwrap().convert(Basis::X).unwrap().terms()
        );
        assert!(tree_x_expansion(&LabeledGraph::complete(3)).is_err());
        for t in all_labeled_trees(5).unwrap() {
            assert_eq!(
                tree_x_expansion(&t).unwrap(),
                y_subset(&t).unwrap(),
                "{}",
                t.encoding()
            );
        }
    }

    #[test]
    fn coefficient_formulas() {
        assert_eq!(top_e_coefficient_formula(&path3()).unwrap(), ratio(1, 2));
        assert_eq!(
            two_block_e_coefficient_formula(&path3(), &sp("13/2")).unwrap(),
            ratio(-1, 2)
        );
        let y_e = y_subset(&path3()).unwrap().convert(Basis::E).unwrap();
        assert_eq!(y_e.coeff(&sp("13/2")), ratio(-1, 2));
        assert_eq!(y_e.coeff(&sp("123")), ratio(1, 2));
        for n in 2..=4 {
            for gr in all_labeled_graphs(n).unwrap() {
                if !gr.is_connected() {
                    continue;
                }
                let y_e = y_subset(&gr).unwrap().convert(Basis::E).unwrap();
                let top = top_e_coefficient_formula(&gr).unwrap();
                assert!(top.is_positive());
                assert_eq!(y_e.coeff(&SetPartition::coarsest(n)), top);
                for pi in partitions_unchecked(n)
                    .into_iter()
                    .filter(|p| p.num_blocks() == 2)
                {
                    assert_eq!(
                        two_block_e_coefficient_formula(&gr, &pi).unwrap(),
                        y_e.coeff(&pi),
                        "{} at {pi}",
                        gr.encoding()
                    );
                }
            }
        }
        assert!(two_block_e_coefficient_formula(&path3(), &sp("123")).is_err());
    }

    #[test]
    fn e_positivity_examples() {
        let r = classify_e_positivity(&complete_graph_union(&sp("134/25/6/78"))).unwrap();
        assert_eq!(r.verdict, EVerdict::EPositive);
        assert!(r.is_clique_union);
        assert!(r.negative_witness.is_none());
        let r = classify_e_positivity(&path3()).unwrap();
        assert_eq!(r.verdict, EVerdict::Mixed);
        let w = r.negative_witness.unwrap();
        assert_eq!(w.partition, sp("13/2"));
        assert_eq!(w.coefficient, ratio(-1, 2));
        assert_eq!(r.top_coefficient, ratio(1, 2));
        // disconnected: path 1-2-3 next to an edge 4-5
        let gr = g(5, &[(1, 2), (2, 3), (4, 5)]);
        let r = classify_e_positivity(&gr).unwrap();
        let w = r.negative_witness.unwrap();
        assert_eq!(w.partition, sp("13/2/45"));
        assert_eq!(w.coefficient, ratio(-1, 2));
        assert_eq!(r.top_coefficient, ratio(1, 2));
    }

    #[test]
    fn x_sign_examples() {
        let r = x_sign_report(&path3()).unwrap();
        assert_eq!((r.n, r.k, r.sign, r.z_is_x_positive), (3, 1, 1, true));
        let r = x_sign_report(&LabeledGraph::complete(2)).unwrap();
        assert_eq!(r.sign, -1);
        assert_eq!(r.y_in_x.coeff(&sp("12")), rat(-1));
        let r = x_sign_report(&complete_graph_union(&sp("13/2"))).unwrap();
        assert_eq!((r.k, r.sign), (2, -1));
        assert_eq!(r.y_in_x.terms().len(), 1);
        assert_eq!(r.y_in_x.coeff(&sp("13/2")), rat(-1));
    }

    #[test]
    fn matching_examples() {
        assert_eq!(
            matching_x_identity(&sp("1")).unwrap().coeff(&sp("1")),
            rat(1)
        );
        assert_eq!(
            matching_x_identity(&sp("13/2")).unwrap().coeff(&sp("13/2")),
            rat(1)
        );
        assert_eq!(matching_x_identity(&sp("12/34")).unwrap().len(), 1);
        assert!(matches!(
            matching_x_identity(&sp("123")),
            Err(Error::Domain(_))
        ));
    }
}
