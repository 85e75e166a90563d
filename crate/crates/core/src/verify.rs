//! Property suites over graph and partition corpora.
//!
//! Each suite checks one family of identities instance by instance and reports every
//! failing instance together with the expected and actual values. Instances run in
//! parallel; results are collected in instance order, so reports do not depend on the
//! number of workers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chromatic::{
    classify_e_positivity, compute_y, k_deletion_sum, tree_x_expansion, x_sign_report,
    y_definition, y_deletion_contraction, y_mobius, y_subset, EVerdict,
};
use crate::chromatic_bases::{
    build_basis, combine, express, AtomicGeneratorStrategy, ChromaticBasis,
};
use crate::error::{Error, Result};
use crate::graphs::{
    all_labeled_graphs, all_labeled_trees, find_cycles, random_graph, random_permutation,
    random_tree, relabel, slash_union, LabeledGraph,
};
use crate::limits;
use crate::ncsym::{Basis, NcSymElement, Rational};
use crate::partitions::{partitions_unchecked, SetPartition};

/// Largest `n` whose graph corpus is every labeled graph; larger `n` use random graphs.
pub const EXHAUSTIVE_GRAPH_N: usize = 5;
/// Largest `n` whose tree corpus is every labeled tree.
pub const EXHAUSTIVE_TREE_N: usize = 7;
/// Random graphs (or trees) drawn when a corpus is not exhaustive.
pub const RANDOM_CORPUS_SIZE: usize = 50;
/// Edge probability of random corpus graphs.
pub const RANDOM_EDGE_PROBABILITY: f64 = 0.5;
/// Seeded `(G, δ)` pairs per relabeling run.
pub const RELABELING_PAIRS: usize = 20;
/// Seeded random combinations per strategy in the bases suite.
pub const EXPRESS_COMBINATIONS: usize = 20;
/// Longest cycle checked by the k-deletion suite.
pub const MAX_CYCLE_LENGTH: usize = 5;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "agreement")]
    Agreement,
    #[serde(rename = "kdeletion")]
    KDeletion,
    #[serde(rename = "trees")]
    Trees,
    #[serde(rename = "multiplicativity")]
    Multiplicativity,
    #[serde(rename = "relabeling")]
    Relabeling,
    #[serde(rename = "roundtrip")]
    Roundtrip,
    #[serde(rename = "epos-scan")]
    EposScan,
    #[serde(rename = "xsign-scan")]
    XsignScan,
    #[serde(rename = "bases")]
    Bases,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Agreement,
        Suite::KDeletion,
        Suite::Trees,
        Suite::Multiplicativity,
        Suite::Relabeling,
        Suite::Roundtrip,
        Suite::EposScan,
        Suite::XsignScan,
        Suite::Bases,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Agreement => "agreement",
            Suite::KDeletion => "kdeletion",
            Suite::Trees => "trees",
            Suite::Multiplicativity => "multiplicativity",
            Suite::Relabeling => "relabeling",
            Suite::Roundtrip => "roundtrip",
            Suite::EposScan => "epos-scan",
            Suite::XsignScan => "xsign-scan",
            Suite::Bases => "bases",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::domain(format!(
                    "unknown suite `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub n: usize,
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} n={} seed={}: {} instances, {} passed, {} failed",
            self.suite, self.n, self.seed, self.instances, self.passed, self.failed
        )?;
        for fail in &self.failures {
            writeln!(f, "FAIL {}", fail.instance)?;
            writeln!(f, "  expected: {}", fail.expected)?;
            writeln!(f, "  actual:   {}", fail.actual)?;
        }
        Ok(())
    }
}

type Outcome = Result<Option<Failure>>;

fn fail(
    instance: impl Into<String>,
    expected: impl fmt::Display,
    actual: impl fmt::Display,
) -> Outcome {
    Ok(Some(Failure {
        instance: instance.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }))
}

fn same(
    instance: impl FnOnce() -> String,
    expected: &NcSymElement,
    actual: &NcSymElement,
) -> Outcome {
    if expected == actual {
        Ok(None)
    } else {
        fail(instance(), expected, actual)
    }
}

/// The graph corpus for `n`: every labeled graph when `n` is small, otherwise
/// [`RANDOM_CORPUS_SIZE`] seeded random graphs.
pub fn graph_corpus(n: usize, seed: u64) -> Result<Vec<LabeledGraph>> {
    if n <= EXHAUSTIVE_GRAPH_N {
        all_labeled_graphs(n)
    } else {
        (0..RANDOM_CORPUS_SIZE as u64)
            .map(|i| random_graph(n, RANDOM_EDGE_PROBABILITY, seed.wrapping_add(i)))
            .collect()
    }
}

/// Every labeled tree when `n` is small, otherwise seeded random trees.
pub fn tree_corpus(n: usize, seed: u64) -> Result<Vec<LabeledGraph>> {
    if n <= EXHAUSTIVE_TREE_N {
        all_labeled_trees(n)
    } else {
        (0..RANDOM_CORPUS_SIZE as u64)
            .map(|i| random_tree(n, seed.wrapping_add(i)))
            .collect()
    }
}

/// Whether `suite` at size `n` draws random instances, and so depends on the seed.
pub fn uses_randomness(suite: Suite, n: usize) -> bool {
    match suite {
        Suite::Relabeling | Suite::Bases => true,
        Suite::Roundtrip => false,
        Suite::Trees => n > EXHAUSTIVE_TREE_N,
        Suite::Multiplicativity => n > EXHAUSTIVE_GRAPH_N + 1,
        Suite::Agreement | Suite::KDeletion | Suite::EposScan | Suite::XsignScan => {
            n > EXHAUSTIVE_GRAPH_N
        }
    }
}

/// Runs `suite` at size `n`. `workers` bounds the thread count; `None` uses the default pool.
pub fn run_suite(
    suite: Suite,
    n: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<VerifyReport> {
    limits::check_n(n)?;
    match workers {
        Some(0) => Err(Error::domain("worker count must be positive")),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
            pool.install(|| run_in_pool(suite, n, seed))
        }
        None => run_in_pool(suite, n, seed),
    }
}

fn run_in_pool(suite: Suite, n: usize, seed: u64) -> Result<VerifyReport> {
    let (instances, outcomes) = match suite {
        Suite::Agreement => check_all(&graph_corpus(n, seed)?, agreement)?,
        Suite::KDeletion => {
            let mut items = Vec::new();
            for g in graph_corpus(n, seed)? {
                for c in find_cycles(&g, MAX_CYCLE_LENGTH)? {
                    items.push((g.clone(), c.edges));
                }
            }
            check_all(&items, |(g, edges)| {
                let z = k_deletion_sum(g, edges)?;
                if z.is_zero() && z.degree() == g.n() {
                    Ok(None)
                } else {
                    fail(
                        format!("{} cycle {edges:?}", g.encoding()),
                        format!("0 in degree {}", g.n()),
                        &z,
                    )
                }
            })?
        }
        Suite::Trees => check_all(&tree_corpus(n, seed)?, |t| {
            let want = y_subset(t)?.convert(Basis::X)?;
            same(|| t.encoding(), &want, &tree_x_expansion(t)?)
        })?,
        Suite::Multiplicativity => {
            let mut items = Vec::new();
            for a in 1..n {
                let right = graph_corpus(n - a, seed)?;
                for g in graph_corpus(a, seed)? {
                    for h in &right {
                        items.push((g.clone(), h.clone()));
                    }
                }
            }
            check_all(&items, |(g, h)| {
                let want = y_subset(g)?.multiply(&y_subset(h)?)?;
                let got = y_subset(&slash_union(g, h))?;
                same(
                    || format!("{} | {}", g.encoding(), h.encoding()),
                    &want,
                    &got,
                )
            })?
        }
        Suite::Relabeling => {
            let items: Vec<(LabeledGraph, crate::Permutation)> = (0..RELABELING_PAIRS as u64)
                .map(|i| {
                    let s = seed.wrapping_add(i);
                    Ok((
                        random_graph(n, RANDOM_EDGE_PROBABILITY, s)?,
                        random_permutation(n, s ^ 0x9e37_79b9_7f4a_7c15),
                    ))
                })
                .collect::<Result<_>>()?;
            check_all(&items, |(g, delta)| {
                let want = compute_y(g)?.act(delta)?;
                let got = compute_y(&relabel(delta, g)?)?;
                same(
                    || format!("{} relabelled by {delta}", g.encoding()),
                    &want,
                    &got,
                )
            })?
        }
        Suite::Roundtrip => {
            let items: Vec<(SetPartition, Basis)> = partitions_unchecked(n)
                .into_iter()
                .flat_map(|p| [Basis::M, Basis::E, Basis::H, Basis::X].map(|b| (p.clone(), b)))
                .collect();
            check_all(&items, |(pi, b)| {
                let one = Rational::from_integer(1.into());
                let start = NcSymElement::basis_term(*b, pi.clone(), one.clone());
                let back = start.convert(Basis::P)?.convert(*b)?;
                if back.basis() != *b || back.terms() != start.terms() {
                    return fail(format!("{}[{pi}] via p", b.symbol()), &start, &back);
                }
                let p = NcSymElement::basis_term(Basis::P, pi.clone(), one);
                let back = p.convert(*b)?.convert(Basis::P)?;
                if back.terms() != p.terms() {
                    return fail(format!("p[{pi}] via {}", b.symbol()), &p, &back);
                }
                Ok(None)
            })?
        }
        Suite::EposScan => check_all(&graph_corpus(n, seed)?, |g| {
            let r = classify_e_positivity(g)?;
            let mixed_ok =
                r.verdict == EVerdict::Mixed && r.positive_terms > 0 && r.negative_terms > 0;
            if r.is_clique_union && r.verdict == EVerdict::EPositive
                || !r.is_clique_union && mixed_ok
            {
                Ok(None)
            } else {
                fail(
                    g.encoding(),
                    if r.is_clique_union {
                        "e_positive"
                    } else {
                        "mixed with both signs"
                    },
                    format!(
                        "{:?} (+{}, -{})",
                        r.verdict, r.positive_terms, r.negative_terms
                    ),
                )
            }
        })?,
        Suite::XsignScan => check_all(&graph_corpus(n, seed)?, |g| {
            let r = x_sign_report(g)?;
            if r.z_is_x_positive {
                Ok(None)
            } else {
                fail(g.encoding(), "(-1)^(n-k) Y_G x-positive", &r.y_in_x)
            }
        })?,
        Suite::Bases => {
            let mut instances = 0;
            let mut outcomes = Vec::new();
            for s in AtomicGeneratorStrategy::ALL {
                let basis = match build_basis(n, s) {
                    Ok(b) => b,
                    Err(e @ Error::Resource { .. }) => return Err(e),
                    Err(e) => {
                        instances += 1;
                        outcomes.push(Some(Failure {
                            instance: format!("{s} n={n}"),
                            expected: "certified triangular basis".into(),
                            actual: e.to_string(),
                        }));
                        continue;
                    }
                };
                let parts = partitions_unchecked(n);
                let (k, o) = check_all(&parts, |pi| basis_element_checks(&basis, s, pi))?;
                instances += k;
                outcomes.extend(o);
                let combos: Vec<u64> = (0..EXPRESS_COMBINATIONS as u64)
                    .map(|i| seed.wrapping_add(i))
                    .collect();
                let (k, o) = check_all(&combos, |&cs| {
                    let coeffs = random_combination(basis.partitions(), cs);
                    let f = combine(&coeffs, &basis)?;
                    let got = express(&f, &basis)?;
                    if got == coeffs {
                        Ok(None)
                    } else {
                        fail(
                            format!("{s} n={n} combination seed {cs}"),
                            format_coeffs(&coeffs),
                            format_coeffs(&got),
                        )
                    }
                })?;
                instances += k;
                outcomes.extend(o);
            }
            (instances, outcomes)
        }
    };
    let failures: Vec<Failure> = outcomes.into_iter().flatten().collect();
    Ok(VerifyReport {
        suite,
        n,
        seed,
        instances,
        passed: instances - failures.len(),
        failed: failures.len(),
        failures,
    })
}

fn agreement(g: &LabeledGraph) -> Outcome {
    let want = y_subset(g)?;
    let label = || g.encoding();
    for (name, got) in [
        ("mobius", y_mobius(g)?),
        ("delcon", y_deletion_contraction(g)?),
        ("definition", y_definition(g)?.convert(Basis::P)?),
    ] {
        if got.terms() != want.terms() {
            return fail(format!("{} ({name})", label()), &want, &got);
        }
    }
    Ok(None)
}

/// Generator multiplicativity, clique reproduction of `e`, and `express` on a basis element.
fn basis_element_checks(
    basis: &ChromaticBasis,
    s: AtomicGeneratorStrategy,
    pi: &SetPartition,
) -> Outcome {
    let label = || format!("{s} element {pi}");
    let y = basis.element(pi).expect("partition of [n]");
    let mut product = NcSymElement::one();
    for alpha in pi.atomic_decomposition() {
        product = product.multiply(&compute_y(&basis.generators()[&alpha])?)?;
    }
    if product.terms() != y.terms() {
        return fail(format!("{} (product of generators)", label()), &product, y);
    }
    if s == AtomicGeneratorStrategy::CliquePerBlock {
        let e = NcSymElement::basis_term(Basis::E, pi.clone(), Rational::from_integer(1.into()));
        if *y != e {
            return fail(format!("{} (clique is e)", label()), &e, y);
        }
    }
    let c = express(y, basis)?;
    if c.len() != 1 || c.get(pi).map(|v| v == &Rational::from_integer(1.into())) != Some(true) {
        return fail(format!("{} (express)", label()), pi, format_coeffs(&c));
    }
    Ok(None)
}

/// Nonzero small rationals on a seeded random subset of `parts`.
pub fn random_combination(parts: &[SetPartition], seed: u64) -> BTreeMap<SetPartition, Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeMap::new();
    for p in parts {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=6);
        if num != 0 && rng.gen_bool(0.5) {
            out.insert(p.clone(), Rational::new(num.into(), den.into()));
        }
    }
    out
}

fn format_coeffs(c: &BTreeMap<SetPartition, Rational>) -> String {
    let items: Vec<String> = c.iter().map(|(p, v)| format!("{p}: {v}")).collect();
    format!("{{{}}}", items.join(", "))
}

/// Runs `check` on every item in parallel, keeping item order. Resource errors abort the
/// suite; any other error counts as a failure of that instance.
fn check_all<T, F>(items: &[T], check: F) -> Result<(usize, Vec<Option<Failure>>)>
where
    T: Sync + fmt::Debug,
    F: Fn(&T) -> Outcome + Sync,
{
    let outcomes: Vec<Outcome> = items.par_iter().map(&check).collect();
    let mut out = Vec::with_capacity(outcomes.len());
    for (item, o) in items.iter().zip(outcomes) {
        match o {
            Ok(v) => out.push(v),
            Err(e @ Error::Resource { .. }) => return Err(e),
            Err(e) => out.push(Some(Failure {
                instance: format!("{item:?}"),
                expected: "no error".into(),
                actual: e.to_string(),
            })),
        }
    }
    Ok((items.len(), out))
}
