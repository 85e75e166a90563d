//! Chromatic bases of `NCSym^n`.
//!
//! Pick one graph `G_α` with `π(G_α) = α` for every atomic `α`. For an arbitrary `π` with
//! atomic decomposition `α_1 | α_2 | ⋯` set `G_π = G_{α_1} | G_{α_2} | ⋯`; then
//! `{Y_{G_π} : π ⊢ [n]}` is a basis. In `p` each `Y_{G_π}` is supported on partitions
//! refining `π`, with `μ_L(0̂, π)` on the diagonal.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chromatic::compute_y;
use crate::error::{Error, Result};
use crate::graphs::{
    complete_graph_union, components_partition, contraction_lattice, slash_union, LabeledGraph,
};
use crate::limits;
use crate::ncsym::json::{rational_parts, IntRepr};
use crate::ncsym::{rat, Basis, NcSymElement, Rational};
use crate::partitions::{partitions_unchecked, SetPartition};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomicGeneratorStrategy {
    /// Each block's elements joined in increasing order by a path.
    PathPerBlock,
    /// Each block a clique, so `G_π = K_π`.
    CliquePerBlock,
}

impl AtomicGeneratorStrategy {
    pub const ALL: [AtomicGeneratorStrategy; 2] = [Self::PathPerBlock, Self::CliquePerBlock];

    pub fn name(self) -> &'static str {
        match self {
            Self::PathPerBlock => "path_per_block",
            Self::CliquePerBlock => "clique_per_block",
        }
    }
}

impl fmt::Display for AtomicGeneratorStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AtomicGeneratorStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" | "path_per_block" => Ok(Self::PathPerBlock),
            "clique" | "clique_per_block" => Ok(Self::CliquePerBlock),
            other => Err(Error::domain(format!(
                "unknown strategy `{other}` (expected path or clique)"
            ))),
        }
    }
}

/// The generator `G_α` chosen by `strategy` for an atomic `α`.
pub fn generator_graph(
    strategy: AtomicGeneratorStrategy,
    alpha: &SetPartition,
) -> Result<LabeledGraph> {
    if !alpha.is_atomic() {
        return Err(Error::domain(format!("{alpha} is not atomic")));
    }
    Ok(block_graph(strategy, alpha))
}

fn block_graph(strategy: AtomicGeneratorStrategy, pi: &SetPartition) -> LabeledGraph {
    match strategy {
        AtomicGeneratorStrategy::CliquePerBlock => complete_graph_union(pi),
        AtomicGeneratorStrategy::PathPerBlock => {
            let edges = pi
                .blocks()
                .into_iter()
                .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>());
            LabeledGraph::new(pi.n(), edges).expect("block paths are simple")
        }
    }
}

/// Atomic partitions of `[m]` for `1 ≤ m ≤ n`, grouped by `m`.
pub fn atomic_partitions_up_to(n: usize) -> Result<Vec<SetPartition>> {
    limits::check_n(n)?;
    Ok((1..=n)
        .flat_map(partitions_unchecked)
        .filter(SetPartition::is_atomic)
        .collect())
}

#[derive(Clone, Debug)]
pub struct ChromaticBasis {
    n: usize,
    /// `None` when the generators were supplied by the caller.
    strategy: Option<AtomicGeneratorStrategy>,
    generators: BTreeMap<SetPartition, LabeledGraph>,
    /// Canonical (lexicographic RGS) order of the partitions of `[n]`.
    partitions: Vec<SetPartition>,
    graphs: Vec<LabeledGraph>,
    elements: Vec<NcSymElement>,
    /// `μ_L(0̂, π)` of `L_{G_π}`, in canonical order.
    diagonal: Vec<Rational>,
    /// Positions in canonical order sorted by (blocks descending, canonical order).
    triangular_order: Vec<usize>,
}

impl ChromaticBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strategy(&self) -> Option<AtomicGeneratorStrategy> {
        self.strategy
    }

    pub fn generators(&self) -> &BTreeMap<SetPartition, LabeledGraph> {
        &self.generators
    }

    pub fn partitions(&self) -> &[SetPartition] {
        &self.partitions
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    fn position(&self, pi: &SetPartition) -> Option<usize> {
        self.partitions.binary_search(pi).ok()
    }

    /// `G_π`.
    pub fn graph(&self, pi: &SetPartition) -> Option<&LabeledGraph> {
        self.position(pi).map(|i| &self.graphs[i])
    }

    /// `Y_{G_π}` in the `p` basis.
    pub fn element(&self, pi: &SetPartition) -> Option<&NcSymElement> {
        self.position(pi).map(|i| &self.elements[i])
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = (&SetPartition, &NcSymElement)> {
        self.partitions.iter().zip(&self.elements)
    }

    pub fn diagonal(&self) -> impl Iterator<Item = (&SetPartition, &Rational)> {
        self.partitions.iter().zip(&self.diagonal)
    }

    /// The refinement-compatible order used for the triangularity certificate.
    pub fn triangular_order(&self) -> Vec<&SetPartition> {
        self.triangular_order
            .iter()
            .map(|&i| &self.partitions[i])
            .collect()
    }

    /// Dense transition matrix: row `i` holds the `p`-coefficients of `Y_{G_{π_i}}`,
    /// rows and columns in canonical partition order.
    pub fn transition(&self) -> Vec<Vec<Rational>> {
        self.elements
            .iter()
            .map(|y| self.partitions.iter().map(|s| y.coeff(s)).collect())
            .collect()
    }
}

/// Builds the basis for one of the shipped strategies.
pub fn build_basis(n: usize, strategy: AtomicGeneratorStrategy) -> Result<ChromaticBasis> {
    let generators = atomic_partitions_up_to(n)?
        .into_iter()
        .map(|a| {
            let g = block_graph(strategy, &a);
            (a, g)
        })
        .collect();
    assemble(n, Some(strategy), generators)
}

/// Builds the basis from caller-chosen generators, one per atomic `α ⊢ [m]`, `1 ≤ m ≤ n`.
pub fn build_basis_with(
    n: usize,
    generators: BTreeMap<SetPartition, LabeledGraph>,
) -> Result<ChromaticBasis> {
    for alpha in atomic_partitions_up_to(n)? {
        if !generators.contains_key(&alpha) {
            return Err(Error::domain(format!(
                "no generator for atomic partition {alpha}"
            )));
        }
    }
    for (alpha, g) in &generators {
        if !alpha.is_atomic() {
            return Err(Error::domain(format!("{alpha} is not atomic")));
        }
        if alpha.n() > n {
            return Err(Error::domain(format!("{alpha} is larger than degree {n}")));
        }
        if g.n() != alpha.n() || components_partition(g) != *alpha {
            return Err(Error::domain(format!(
                "generator {} for {alpha} has components {}",
                g.encoding(),
                components_partition(g)
            )));
        }
    }
    assemble(n, None, generators)
}

fn assemble(
    n: usize,
    strategy: Option<AtomicGeneratorStrategy>,
    generators: BTreeMap<SetPartition, LabeledGraph>,
) -> Result<ChromaticBasis> {
    let partitions = partitions_unchecked(n);
    let built: Vec<(LabeledGraph, NcSymElement, Rational)> = partitions
        .par_iter()
        .map(|pi| {
            let g = pi
                .atomic_decomposition()
                .iter()
                .fold(LabeledGraph::edgeless(0), |acc, a| {
                    slash_union(&acc, &generators[a])
                });
            let y = compute_y(&g)?;
            let mu = contraction_lattice(&g)?
                .mobius0(pi)
                .ok_or_else(|| Error::Invariant(format!("{pi} is not a contraction of G_π")))?;
            Ok((g, y, rat(mu)))
        })
        .collect::<Result<_>>()?;
    let mut graphs = Vec::with_capacity(built.len());
    let mut elements = Vec::with_capacity(built.len());
    let mut diagonal = Vec::with_capacity(built.len());
    for (g, y, mu) in built {
        graphs.push(g);
        elements.push(y);
        diagonal.push(mu);
    }
    let mut triangular_order: Vec<usize> = (0..partitions.len()).collect();
    triangular_order.sort_by_key(|&i| std::cmp::Reverse(partitions[i].num_blocks()));
    let basis = ChromaticBasis {
        n,
        strategy,
        generators,
        partitions,
        graphs,
        elements,
        diagonal,
        triangular_order,
    };
    certify(&basis)?;
    Ok(basis)
}

/// Checks that each `Y_{G_π}` lives on partitions no later than `π` in the triangular
/// order and has the nonzero diagonal `μ_L(0̂, π)`.
fn certify(basis: &ChromaticBasis) -> Result<()> {
    let mut rank = vec![0; basis.len()];
    for (r, &i) in basis.triangular_order.iter().enumerate() {
        rank[i] = r;
    }
    for (i, pi) in basis.partitions.iter().enumerate() {
        let y = &basis.elements[i];
        if basis.diagonal[i].is_zero() || y.coeff(pi) != basis.diagonal[i] {
            return Err(Error::Invariant(format!(
                "diagonal at {pi} is {} but μ_L(0̂,π) = {}",
                y.coeff(pi),
                basis.diagonal[i]
            )));
        }
        for sigma in y.terms().keys() {
            let j = basis.position(sigma).expect("same degree");
            if rank[j] > rank[i] {
                return Err(Error::Invariant(format!(
                    "Y_G[{pi}] has a p-term at {sigma}, above the diagonal"
                )));
            }
        }
    }
    Ok(())
}

/// Coefficients `c_π` with `f = Σ c_π Y_{G_π}`, zero coefficients omitted.
pub fn express(
    f: &NcSymElement,
    basis: &ChromaticBasis,
) -> Result<BTreeMap<SetPartition, Rational>> {
    if f.degree() != basis.n && !f.is_zero() {
        return Err(Error::domain(format!(
            "element has degree {} but the basis has degree {}",
            f.degree(),
            basis.n
        )));
    }
    let mut residual: BTreeMap<SetPartition, Rational> = f.convert(Basis::P)?.terms().clone();
    let mut out = BTreeMap::new();
    for &i in basis.triangular_order.iter().rev() {
        let pi = &basis.partitions[i];
        let Some(r) = residual.get(pi).cloned() else {
            continue;
        };
        let c = r / &basis.diagonal[i];
        for (sigma, a) in basis.elements[i].terms() {
            let e = residual.entry(sigma.clone()).or_insert_with(Rational::zero);
            *e -= &c * a;
            if e.is_zero() {
                residual.remove(sigma);
            }
        }
        out.insert(pi.clone(), c);
    }
    if !residual.is_empty() {
        return Err(Error::Invariant("triangular solve left a residual".into()));
    }
    Ok(out)
}

/// `Σ c_π Y_{G_π}` in the `p` basis.
pub fn combine(
    coeffs: &BTreeMap<SetPartition, Rational>,
    basis: &ChromaticBasis,
) -> Result<NcSymElement> {
    let mut total = NcSymElement::zero(Basis::P, basis.n);
    for (pi, c) in coeffs {
        let y = basis
            .element(pi)
            .ok_or_else(|| Error::domain(format!("{pi} is not a partition of [{}]", basis.n)))?;
        total = total.add(&y.scale(c))?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: IntRepr,
    pub den: IntRepr,
}

impl From<&Rational> for RationalJson {
    fn from(c: &Rational) -> Self {
        let (num, den) = rational_parts(c);
        RationalJson { num, den }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub alpha: String,
    pub graph: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisGraphJson {
    pub partition: String,
    pub graph: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub n: usize,
    pub strategy: Option<AtomicGeneratorStrategy>,
    /// One graph per atomic partition.
    pub generators: Vec<GeneratorJson>,
    pub partitions: Vec<String>,
    /// `G_π` for every `π ⊢ [n]`, in `partitions` order.
    pub graphs: Vec<BasisGraphJson>,
    pub diagonal: Vec<RationalJson>,
    /// Row `i`: `Y_{G_{π_i}}` in `p`. Rows and columns follow `partitions`.
    pub transition: Vec<Vec<RationalJson>>,
}

impl ChromaticBasis {
    pub fn to_json(&self) -> BasisJson {
        BasisJson {
            n: self.n,
            strategy: self.strategy,
            generators: self
                .generators
                .iter()
                .map(|(a, g)| GeneratorJson {
                    alpha: a.to_string(),
                    graph: g.encoding(),
                })
                .collect(),
            partitions: self.partitions.iter().map(ToString::to_string).collect(),
            graphs: self
                .partitions
                .iter()
                .zip(&self.graphs)
                .map(|(p, g)| BasisGraphJson {
                    partition: p.to_string(),
                    graph: g.encoding(),
                })
                .collect(),
            diagonal: self.diagonal.iter().map(RationalJson::from).collect(),
            transition: self
                .transition()
                .iter()
                .map(|row| row.iter().map(RationalJson::from).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::bell_number;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn generator_examples() {
        let g = generator_graph(AtomicGeneratorStrategy::PathPerBlock, &sp("134/25")).unwrap();
        assert_eq!(g.edges(), &[(1, 3), (2, 5), (3, 4)]);
        let g = generator_graph(AtomicGeneratorStrategy::CliquePerBlock, &sp("124/3")).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (1, 4), (2, 4)]);
        for s in AtomicGeneratorStrategy::ALL {
            let g = generator_graph(s, &sp("1")).unwrap();
            assert_eq!((g.n(), g.num_edges()), (1, 0));
            assert!(matches!(
                generator_graph(s, &sp("1/2")),
                Err(Error::Domain(_))
            ));
        }
        assert_eq!(
            "path".parse::<AtomicGeneratorStrategy>().unwrap(),
            AtomicGeneratorStrategy::PathPerBlock
        );
        assert!("star".parse::<AtomicGeneratorStrategy>().is_err());
    }

    #[test]
    fn build_examples() {
        let b = build_basis(1, AtomicGeneratorStrategy::PathPerBlock).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(
            *b.element(&sp("1")).unwrap(),
            NcSymElement::basis_term(Basis::P, sp("1"), rat(1))
        );

        let b = build_basis(3, AtomicGeneratorStrategy::CliquePerBlock).unwrap();
        assert_eq!(b.generators().len(), 4);
        for (pi, y) in b.basis_elements() {
            assert_eq!(*y, NcSymElement::basis_term(Basis::E, pi.clone(), rat(1)));
        }

        let b = build_basis(3, AtomicGeneratorStrategy::PathPerBlock).unwrap();
        let y = b.element(&sp("123")).unwrap();
        let want = NcSymElement::from_terms(
            Basis::P,
            3,
            [
                (sp("1/2/3"), rat(1)),
                (sp("12/3"), rat(-1)),
                (sp("1/23"), rat(-1)),
                (sp("123"), rat(1)),
            ],
        )
        .unwrap();
        assert_eq!(y.terms(), want.terms());
    }

    #[test]
    fn triangular_order_refines() {
        let b = build_basis(4, AtomicGeneratorStrategy::PathPerBlock).unwrap();
        let order = b.triangular_order();
        for (i, a) in order.iter().enumerate() {
            for c in &order[..i] {
                assert!(!a.is_refinement_of(c) || a == c);
            }
        }
        assert_eq!(order.len() as u128, bell_number(4));
    }

    #[test]
    fn express_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in AtomicGeneratorStrategy::ALL {
            let b = build_basis(4, s).unwrap();
            for (pi, y) in b.basis_elements() {
                let c = express(y, &b).unwrap();
                assert_eq!(c.len(), 1);
                assert_eq!(c[pi], rat(1));
            }
            let mut coeffs = BTreeMap::new();
            for p in b.partitions() {
                let c = Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into());
                if rng.gen_bool(0.4) && !c.is_zero() {
                    coeffs.insert(p.clone(), c);
                }
            }
            let f = combine(&coeffs, &b).unwrap();
            assert_eq!(express(&f, &b).unwrap(), coeffs);
        }
        let b = build_basis(3, AtomicGeneratorStrategy::PathPerBlock).unwrap();
        let p = NcSymElement::basis_term(Basis::P, sp("123"), rat(1));
        let c = express(&p, &b).unwrap();
        assert_eq!(combine(&c, &b).unwrap(), p);
        let e = NcSymElement::basis_term(Basis::E, sp("123"), rat(1));
        let clique = build_basis(3, AtomicGeneratorStrategy::CliquePerBlock).unwrap();
        assert_eq!(
            express(&e, &clique).unwrap(),
            BTreeMap::from([(sp("123"), rat(1))])
        );
        assert!(matches!(
            express(
                &p,
                &build_basis(2, AtomicGeneratorStrategy::PathPerBlock).unwrap()
            ),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn user_generators_are_validated() {
        let mut gens: BTreeMap<SetPartition, LabeledGraph> = atomic_partitions_up_to(3)
            .unwrap()
            .into_iter()
            .map(|a| {
                let g = block_graph(AtomicGeneratorStrategy::PathPerBlock, &a);
                (a, g)
            })
            .collect();
        // a different spanning tree of the block {1,2,3}
        gens.insert(sp("123"), LabeledGraph::new(3, [(1, 3), (2, 3)]).unwrap());
        let b = build_basis_with(3, gens.clone()).unwrap();
        assert_eq!(b.strategy(), None);
        gens.insert(sp("123"), LabeledGraph::new(3, [(1, 3)]).unwrap());
        assert!(matches!(
            build_basis_with(3, gens.clone()),
            Err(Error::Domain(_))
        ));
        gens.remove(&sp("123"));
        assert!(matches!(build_basis_with(3, gens), Err(Error::Domain(_))));
    }

    #[test]
    fn json_export() {
        let b = build_basis(2, AtomicGeneratorStrategy::PathPerBlock).unwrap();
        let s = serde_json::to_string(&b.to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"strategy":"path_per_block","generators":[{"alpha":"1","graph":"n=1;"},{"alpha":"1,2","graph":"n=2;1-2"}],"partitions":["1,2","1/2"],"graphs":[{"partition":"1,2","graph":"n=2;1-2"},{"partition":"1/2","graph":"n=2;"}],"diagonal":[{"num":-1,"den":1},{"num":1,"den":1}],"transition":[[{"num":-1,"den":1},{"num":1,"den":1}],[{"num":0,"den":1},{"num":1,"den":1}]]}"#
        );
    }
}
