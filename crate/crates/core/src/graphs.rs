//! Labeled finite simple graphs on vertex set `[n]` and the constructions used on them.
//!
//! Text format:
//!
//! ```text
//! # optional comments
//! n 3
//! e 1 2
//! e 2 3
//! ```

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limits::{self, HARD_MAX_N};
use crate::partitions::{partitions_unchecked, Permutation, SetPartition};

pub type Edge = (usize, usize);

/// Vertex labels index set-partition entries, so graphs share the partition size cap.
pub const MAX_VERTICES: usize = HARD_MAX_N;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<Edge>,
}

fn normalize(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl LabeledGraph {
    /// Builds a graph from edges given in any order and orientation.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::domain(format!(
                "at most {MAX_VERTICES} vertices supported"
            )));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::domain(format!("loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::domain(format!("edge {{{u},{v}}} outside 1..={n}")));
            }
            if !set.insert(normalize(u, v)) {
                return Err(Error::domain(format!("duplicate edge {{{u},{v}}}")));
            }
        }
        Ok(LabeledGraph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn edgeless(n: usize) -> Self {
        LabeledGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        complete_graph_union(&SetPartition::coarsest(n))
    }

    /// Path `1 – 2 – ⋯ – n`.
    pub fn path(n: usize) -> Self {
        LabeledGraph {
            n,
            edges: (1..n).map(|i| (i, i + 1)).collect(),
        }
    }

    /// Cycle `1 – 2 – ⋯ – n – 1`, for `n ≥ 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain("a cycle needs at least 3 vertices"));
        }
        LabeledGraph::new(n, (1..=n).map(|i| (i, i % n + 1)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&normalize(u, v)).is_ok()
    }

    /// Neighbourhood bitmasks; bit `v - 1` of entry `u - 1` marks the edge `{u, v}`.
    pub fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || components_partition(self).num_blocks() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Every connected component is a complete graph.
    pub fn is_clique_union(&self) -> bool {
        let comps = components_partition(self);
        comps.blocks().iter().all(|b| {
            b.iter()
                .enumerate()
                .all(|(i, &u)| b[i + 1..].iter().all(|&v| self.has_edge(u, v)))
        })
    }

    /// The induced subgraph on `vertices`, relabelled `1..` in increasing order.
    pub fn induced(&self, vertices: &[usize]) -> LabeledGraph {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        let pos = |x: usize| sorted.binary_search(&x).ok().map(|i| i + 1);
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((pos(u)?, pos(v)?)))
            .collect();
        LabeledGraph {
            n: sorted.len(),
            edges,
        }
    }
}

/// `K_π`: one clique per block of `π`, on that block's labels.
pub fn complete_graph_union(pi: &SetPartition) -> LabeledGraph {
    let mut edges = Vec::new();
    for block in pi.blocks() {
        for (i, &u) in block.iter().enumerate() {
            for &v in &block[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    LabeledGraph { n: pi.n(), edges }
}

/// `G | H`: disjoint union with the labels of `H` shifted past those of `G`.
pub fn slash_union(g: &LabeledGraph, h: &LabeledGraph) -> LabeledGraph {
    let mut edges = g.edges.clone();
    edges.extend(h.edges.iter().map(|&(u, v)| (u + g.n, v + g.n)));
    LabeledGraph {
        n: g.n + h.n,
        edges,
    }
}

/// `G − S`.
pub fn delete_edges(g: &LabeledGraph, s: &[Edge]) -> Result<LabeledGraph> {
    let remove: BTreeSet<Edge> = s.iter().map(|&(u, v)| normalize(u, v)).collect();
    for e in &remove {
        if !g.has_edge(e.0, e.1) {
            return Err(Error::domain(format!(
                "edge {{{},{}}} is not in the graph",
                e.0, e.1
            )));
        }
    }
    Ok(LabeledGraph {
        n: g.n,
        edges: g
            .edges
            .iter()
            .filter(|e| !remove.contains(e))
            .copied()
            .collect(),
    })
}

/// Contracts the edge `{n−1, n}`; the merged vertex is labelled `n−1`.
pub fn contract_last_edge(g: &LabeledGraph) -> Result<LabeledGraph> {
    let n = g.n;
    if n < 2 || !g.has_edge(n - 1, n) {
        return Err(Error::domain(format!(
            "contraction needs the edge {{{}, {n}}}",
            n.saturating_sub(1)
        )));
    }
    let edges: BTreeSet<Edge> = g
        .edges
        .iter()
        .filter(|&&e| e != (n - 1, n))
        .map(|&(u, v)| normalize(u.min(n - 1), v.min(n - 1)))
        .collect();
    Ok(LabeledGraph {
        n: n - 1,
        edges: edges.into_iter().collect(),
    })
}

/// `δ(G)`: vertex `i` is renamed `δ(i)`.
pub fn relabel(delta: &Permutation, g: &LabeledGraph) -> Result<LabeledGraph> {
    if delta.n() != g.n {
        return Err(Error::domain(format!(
            "permutation of [{}] relabelling a graph on [{}]",
            delta.n(),
            g.n
        )));
    }
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|&(u, v)| normalize(delta.image(u), delta.image(v)))
        .collect();
    edges.sort_unstable();
    Ok(LabeledGraph { n: g.n, edges })
}

/// Connected components as a set partition.
pub fn components_partition(g: &LabeledGraph) -> SetPartition {
    spanning_components(g.n, g.edges.iter().copied())
}

fn spanning_components(n: usize, edges: impl Iterator<Item = Edge>) -> SetPartition {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in edges {
        let a = find(&mut parent, u - 1);
        let b = find(&mut parent, v - 1);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    SetPartition::from_labels(&roots)
}

/// `π(S)`: components of the spanning subgraph `([n], S)`.
pub fn edge_subset_partition(g: &LabeledGraph, s: &[Edge]) -> Result<SetPartition> {
    for &(u, v) in s {
        if !g.has_edge(u, v) {
            return Err(Error::domain(format!(
                "edge {{{u},{v}}} is not in the graph"
            )));
        }
    }
    Ok(spanning_components(
        g.n,
        s.iter().map(|&(u, v)| normalize(u, v)),
    ))
}

/// Whether the vertices in `mask` induce a connected subgraph.
pub(crate) fn mask_connected(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let start = mask & mask.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let next = adj[v] & mask & !seen;
        seen |= next;
        frontier |= next;
    }
    seen == mask
}

/// Every block of `pi` induces a connected subgraph.
pub fn is_connected_partition(g: &LabeledGraph, pi: &SetPartition) -> bool {
    let adj = g.adjacency();
    block_masks(pi).into_iter().all(|m| mask_connected(&adj, m))
}

pub(crate) fn block_masks(pi: &SetPartition) -> Vec<u64> {
    let mut masks = vec![0u64; pi.num_blocks()];
    for (i, &b) in pi.rgs().iter().enumerate() {
        masks[b as usize] |= 1 << i;
    }
    masks
}

/// The connected partitions `L_G` with `μ_L(0̂, π)` for each.
#[derive(Clone, Debug)]
pub struct ContractionLattice {
    graph: LabeledGraph,
    elements: Vec<SetPartition>,
    mobius0: Vec<i64>,
}

impl ContractionLattice {
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    /// Connected partitions ordered finest-first (a linear extension of refinement).
    pub fn elements(&self) -> &[SetPartition] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `μ_L(0̂, π)`, or `None` when `π` is not a connected partition.
    pub fn mobius0(&self, pi: &SetPartition) -> Option<i64> {
        self.elements
            .iter()
            .position(|p| p == pi)
            .map(|i| self.mobius0[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SetPartition, i64)> {
        self.elements.iter().zip(self.mobius0.iter().copied())
    }
}

/// Builds `L_G` and evaluates `μ_L(0̂, ·)` by the defining recursion
/// `μ(0̂,0̂) = 1`, `μ(0̂,π) = −Σ_{0̂ ≤ τ < π} μ(0̂,τ)`.
pub fn contraction_lattice(g: &LabeledGraph) -> Result<ContractionLattice> {
    limits::check_n(g.n)?;
    let adj = g.adjacency();
    let mut elements: Vec<SetPartition> = partitions_unchecked(g.n)
        .into_iter()
        .filter(|p| block_masks(p).into_iter().all(|m| mask_connected(&adj, m)))
        .collect();
    elements.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then(a.cmp(b)));
    let mut mobius0: Vec<i64> = Vec::with_capacity(elements.len());
    for (i, pi) in elements.iter().enumerate() {
        let v = if i == 0 {
            1
        } else {
            -(0..i)
                .filter(|&j| elements[j].is_refinement_of(pi))
                .map(|j| mobius0[j])
                .sum::<i64>()
        };
        mobius0.push(v);
    }
    Ok(ContractionLattice {
        graph: g.clone(),
        elements,
        mobius0,
    })
}

/// Edges on the tree paths joining every pair of vertices that share a block of `sigma`.
pub fn path_edge_closure(t: &LabeledGraph, sigma: &SetPartition) -> Result<BTreeSet<Edge>> {
    if !t.is_tree() {
        return Err(Error::domain("path_edge_closure needs a tree"));
    }
    if sigma.n() != t.n {
        return Err(Error::domain(
            "partition and tree have different vertex sets",
        ));
    }
    let parent = tree_parents(t);
    let depth = tree_depths(&parent);
    let mut out = BTreeSet::new();
    for block in sigma.blocks() {
        let root = block[0];
        for &v in &block[1..] {
            let (mut a, mut b) = (root, v);
            while a != b {
                if depth[a] >= depth[b] {
                    out.insert(normalize(a, parent[a]));
                    a = parent[a];
                } else {
                    out.insert(normalize(b, parent[b]));
                    b = parent[b];
                }
            }
        }
    }
    Ok(out)
}

/// Parent pointers of a tree rooted at vertex 1 (index 0 unused; the root is its own parent).
fn tree_parents(t: &LabeledGraph) -> Vec<usize> {
    let adj = t.adjacency();
    let mut parent = vec![0; t.n + 1];
    parent[1] = 1;
    let mut queue = VecDeque::from([1usize]);
    while let Some(u) = queue.pop_front() {
        let mut nb = adj[u - 1];
        while nb != 0 {
            let v = nb.trailing_zeros() as usize + 1;
            nb &= nb - 1;
            if parent[v] == 0 {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    parent
}

fn tree_depths(parent: &[usize]) -> Vec<usize> {
    (0..parent.len())
        .map(|v| {
            if v == 0 {
                return 0;
            }
            let mut d = 0;
            let mut x = v;
            while parent[x] != x {
                x = parent[x];
                d += 1;
            }
            d
        })
        .collect()
}

/// Largest `n` for which every labeled graph may be listed.
pub const MAX_ENUMERATED_GRAPH_N: usize = 7;

/// All `2^{C(n,2)}` labeled graphs on `[n]`. Graph `i` contains the `j`-th pair in
/// lexicographic order exactly when bit `j` of `i` is set.
pub fn all_labeled_graphs(n: usize) -> Result<Vec<LabeledGraph>> {
    if n > MAX_ENUMERATED_GRAPH_N {
        return Err(Error::domain(format!(
            "all_labeled_graphs supports n <= {MAX_ENUMERATED_GRAPH_N}, got {n}"
        )));
    }
    let pairs: Vec<Edge> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    Ok((0u64..1 << pairs.len())
        .map(|mask| LabeledGraph {
            n,
            edges: pairs
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &e)| e)
                .collect(),
        })
        .collect())
}

pub const MAX_ENUMERATED_TREE_N: usize = 9;

/// All `n^{n−2}` labeled trees on `[n]`, decoded from Prüfer sequences in lexicographic order.
pub fn all_labeled_trees(n: usize) -> Result<Vec<LabeledGraph>> {
    if n == 0 || n > MAX_ENUMERATED_TREE_N {
        return Err(Error::domain(format!(
            "all_labeled_trees supports 1 <= n <= {MAX_ENUMERATED_TREE_N}, got {n}"
        )));
    }
    if n <= 2 {
        return Ok(vec![LabeledGraph::path(n)]);
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![1usize; len];
    for _ in 0..total {
        out.push(prufer_decode(n, &seq));
        for i in (0..len).rev() {
            if seq[i] < n {
                seq[i] += 1;
                break;
            }
            seq[i] = 1;
        }
    }
    Ok(out)
}

fn prufer_decode(n: usize, seq: &[usize]) -> LabeledGraph {
    let mut degree = vec![1usize; n + 1];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).unwrap();
        edges.push(normalize(leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push(normalize(rest[0], rest[1]));
    edges.sort_unstable();
    LabeledGraph { n, edges }
}

/// Erdős–Rényi graph: each pair joined independently with `edge_probability`,
/// reproducible from `seed`.
pub fn random_graph(n: usize, edge_probability: f64, seed: u64) -> Result<LabeledGraph> {
    if !(0.0..=1.0).contains(&edge_probability) {
        return Err(Error::domain(format!(
            "edge probability {edge_probability} outside [0, 1]"
        )));
    }
    if n > HARD_MAX_N {
        return Err(Error::domain(format!(
            "random_graph supports n <= {HARD_MAX_N}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(edge_probability) {
                edges.push((u, v));
            }
        }
    }
    Ok(LabeledGraph { n, edges })
}

/// Uniformly random labeled tree on `[n]` from a random Prüfer sequence, reproducible from `seed`.
pub fn random_tree(n: usize, seed: u64) -> Result<LabeledGraph> {
    if n == 0 || n > HARD_MAX_N {
        return Err(Error::domain(format!(
            "random_tree supports 1 <= n <= {HARD_MAX_N}"
        )));
    }
    if n <= 2 {
        return Ok(LabeledGraph::path(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    Ok(prufer_decode(n, &seq))
}

/// Uniformly random permutation of `[n]`, reproducible from `seed`.
pub fn random_permutation(n: usize, seed: u64) -> Permutation {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(&mut rng);
    Permutation::new(images).expect("shuffle of 1..=n")
}

/// A simple cycle: `vertices[i]` is joined to `vertices[i+1]` by `edges[i]`, and the last
/// vertex back to the first by the final edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

/// Every simple cycle of length `3..=max_length`, each reported once: it starts at its
/// smallest vertex and its second vertex is smaller than its last.
pub fn find_cycles(g: &LabeledGraph, max_length: usize) -> Result<Vec<Cycle>> {
    if max_length < 3 {
        return Err(Error::domain("cycles have length at least 3"));
    }
    let adj = g.adjacency();
    let mut out = Vec::new();
    for start in 1..=g.n {
        let mut path = vec![start];
        extend_cycles(&adj, start, max_length, &mut path, &mut out);
    }
    Ok(out)
}

fn extend_cycles(
    adj: &[u64],
    start: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Cycle>,
) {
    let last = *path.last().unwrap();
    let mut nb = adj[last - 1];
    while nb != 0 {
        let v = nb.trailing_zeros() as usize + 1;
        nb &= nb - 1;
        if v == start && path.len() >= 3 && path[1] < last {
            let vertices = path.clone();
            let k = vertices.len();
            let edges = (0..k)
                .map(|i| normalize(vertices[i], vertices[(i + 1) % k]))
                .collect();
            out.push(Cycle { vertices, edges });
        }
        if v > start && !path.contains(&v) && path.len() < max_len {
            path.push(v);
            extend_cycles(adj, start, max_len, path, out);
            path.pop();
        }
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (u, v) in &self.edges {
            writeln!(f, "e {u} {v}")?;
        }
        Ok(())
    }
}

impl LabeledGraph {
    /// Compact one-line form `n=3;1-2,2-3` used in reports.
    pub fn encoding(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("n={};{}", self.n, edges.join(","))
    }
}

impl FromStr for LabeledGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges: BTreeSet<Edge> = BTreeSet::new();
        for (i, raw) in s.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("expected a number, found `{t}`")))
            };
            match fields.as_slice() {
                ["n", count] => {
                    if n.is_some() {
                        return Err(Error::parse(line_no, "duplicate header line"));
                    }
                    let count = num(count)?;
                    if count > MAX_VERTICES {
                        return Err(Error::parse(
                            line_no,
                            format!("at most {MAX_VERTICES} vertices supported"),
                        ));
                    }
                    n = Some(count);
                }
                ["e", a, b] => {
                    let Some(count) = n else {
                        return Err(Error::parse(line_no, "edge before the `n <N>` header"));
                    };
                    let (u, v) = (num(a)?, num(b)?);
                    if !(1 <= u && u < v && v <= count) {
                        return Err(Error::parse(
                            line_no,
                            format!("edge `{u} {v}` must satisfy 1 <= u < v <= {count}"),
                        ));
                    }
                    if !edges.insert((u, v)) {
                        return Err(Error::parse(line_no, format!("duplicate edge `{u} {v}`")));
                    }
                }
                _ => return Err(Error::parse(line_no, format!("unrecognized line `{line}`"))),
            }
        }
        let Some(n) = n else {
            return Err(Error::parse(s.lines().count(), "missing `n <N>` header"));
        };
        Ok(LabeledGraph {
            n,
            edges: edges.into_iter().collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn g(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn complete_graph_union_examples() {
        let k = complete_graph_union(&sp("134/25/6/78"));
        assert_eq!(k.n(), 8);
        assert_eq!(k.edges(), &[(1, 3), (1, 4), (2, 5), (3, 4), (7, 8)]);
        assert_eq!(
            complete_graph_union(&SetPartition::coarsest(4)).num_edges(),
            6
        );
        assert_eq!(
            complete_graph_union(&SetPartition::finest(4)).num_edges(),
            0
        );
    }

    #[test]
    fn slash_union_examples() {
        let h = g(3, &[(1, 2)]);
        let gh = slash_union(&g(5, &[(1, 2), (2, 3), (4, 5)]), &h);
        assert_eq!(gh.n(), 8);
        assert!(gh.has_edge(6, 7));
        let gg = g(3, &[(1, 3)]);
        assert_eq!(slash_union(&gg, &LabeledGraph::edgeless(0)), gg);
        assert_eq!(
            slash_union(&LabeledGraph::complete(1), &LabeledGraph::complete(2)),
            g(3, &[(2, 3)])
        );
    }

    #[test]
    fn slash_union_of_cliques_is_clique_of_slash() {
        for a in partitions_unchecked(3) {
            for b in partitions_unchecked(3) {
                assert_eq!(
                    slash_union(&complete_graph_union(&a), &complete_graph_union(&b)),
                    complete_graph_union(&a.slash(&b))
                );
                let (ga, gb) = (complete_graph_union(&a), complete_graph_union(&b));
                assert_eq!(
                    components_partition(&slash_union(&ga, &gb)),
                    components_partition(&ga).slash(&components_partition(&gb))
                );
            }
        }
    }

    #[test]
    fn deletion_and_contraction() {
        let k3 = LabeledGraph::complete(3);
        assert_eq!(
            delete_edges(&k3, k3.edges()).unwrap(),
            LabeledGraph::edgeless(3)
        );
        assert_eq!(contract_last_edge(&k3).unwrap(), LabeledGraph::complete(2));
        assert_eq!(
            contract_last_edge(&LabeledGraph::path(3)).unwrap(),
            g(2, &[(1, 2)])
        );
        assert!(contract_last_edge(&g(3, &[(1, 3)])).is_err());
        assert!(delete_edges(&g(3, &[(1, 3)]), &[(1, 2)]).is_err());
    }

    #[test]
    fn relabel_examples() {
        let gr = g(3, &[(1, 3)]);
        assert_eq!(relabel(&Permutation::identity(3), &gr).unwrap(), gr);
        let d: Permutation = "213".parse().unwrap();
        assert_eq!(relabel(&d, &gr).unwrap(), g(3, &[(2, 3)]));
        let d: Permutation = "312".parse().unwrap();
        let back = relabel(&d.inverse(), &relabel(&d, &gr).unwrap()).unwrap();
        assert_eq!(back, gr);
        assert!(relabel(&Permutation::identity(2), &gr).is_err());
    }

    #[test]
    fn components_examples() {
        let k = complete_graph_union(&sp("134/25/6/78"));
        assert_eq!(components_partition(&k), sp("134/25/6/78"));
        assert_eq!(
            components_partition(&LabeledGraph::path(4)),
            SetPartition::coarsest(4)
        );
        assert_eq!(
            components_partition(&LabeledGraph::edgeless(4)),
            SetPartition::finest(4)
        );
    }

    #[test]
    fn edge_subset_partition_examples() {
        let k = complete_graph_union(&sp("134/25/6/78"));
        assert_eq!(
            edge_subset_partition(&k, &[(1, 3), (1, 4), (7, 8)]).unwrap(),
            sp("134/2/5/6/78")
        );
        assert_eq!(
            edge_subset_partition(&k, &[]).unwrap(),
            SetPartition::finest(8)
        );
        let k4 = LabeledGraph::complete(4);
        assert_eq!(
            edge_subset_partition(&k4, k4.edges()).unwrap(),
            SetPartition::coarsest(4)
        );
        assert!(edge_subset_partition(&k, &[(1, 2)]).is_err());
    }

    #[test]
    fn contraction_lattice_examples() {
        let l = contraction_lattice(&LabeledGraph::path(3)).unwrap();
        let mut els: Vec<String> = l.elements().iter().map(|p| p.to_string()).collect();
        els.sort();
        assert_eq!(els, ["1,2,3", "1,2/3", "1/2,3", "1/2/3"]);
        assert_eq!(l.mobius0(&sp("1/2/3")), Some(1));
        assert_eq!(l.mobius0(&sp("12/3")), Some(-1));
        assert_eq!(l.mobius0(&sp("1/23")), Some(-1));
        assert_eq!(l.mobius0(&sp("123")), Some(1));
        assert_eq!(l.mobius0(&sp("13/2")), None);
        let l = contraction_lattice(&LabeledGraph::edgeless(4)).unwrap();
        assert_eq!(l.elements(), &[SetPartition::finest(4)]);
        let l = contraction_lattice(&LabeledGraph::complete(3)).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l.mobius0(&SetPartition::coarsest(3)), Some(2));
    }

    #[test]
    fn complete_graph_lattice_is_partition_lattice() {
        use crate::partitions::mobius_interval;
        for n in 1..=5 {
            let l = contraction_lattice(&LabeledGraph::complete(n)).unwrap();
            assert_eq!(l.len(), partitions_unchecked(n).len());
            for (p, mu) in l.iter() {
                assert_eq!(mu, mobius_interval(&SetPartition::finest(n), p).unwrap());
            }
        }
    }

    #[test]
    fn lattice_properties_on_small_graphs() {
        for n in 1..=5 {
            for gr in all_labeled_graphs(n).unwrap() {
                let l = contraction_lattice(&gr).unwrap();
                assert_eq!(l.elements()[0], SetPartition::finest(n));
                if gr.is_connected() {
                    assert!(l.mobius0(&SetPartition::coarsest(n)).is_some());
                }
                for (p, mu) in l.iter() {
                    assert_ne!(mu, 0, "{} at {p}", gr.encoding());
                    assert!(is_connected_partition(&gr, p));
                }
                // π(S) is always a connected partition
                let m = gr.num_edges();
                for mask in 0u32..1 << m {
                    let s: Vec<Edge> = (0..m)
                        .filter(|j| mask >> j & 1 == 1)
                        .map(|j| gr.edges()[j])
                        .collect();
                    let p = edge_subset_partition(&gr, &s).unwrap();
                    assert!(l.mobius0(&p).is_some());
                }
            }
        }
    }

    #[test]
    fn path_edge_closure_examples() {
        let p3 = LabeledGraph::path(3);
        let all: BTreeSet<Edge> = p3.edges().iter().copied().collect();
        assert_eq!(path_edge_closure(&p3, &sp("13/2")).unwrap(), all);
        assert!(path_edge_closure(&p3, &SetPartition::finest(3))
            .unwrap()
            .is_empty());
        assert_eq!(
            path_edge_closure(&p3, &SetPartition::coarsest(3)).unwrap(),
            all
        );
        assert!(path_edge_closure(&LabeledGraph::complete(3), &sp("13/2")).is_err());
        let star = g(4, &[(1, 2), (1, 3), (1, 4)]);
        let want: BTreeSet<Edge> = [(1, 2), (1, 3)].into_iter().collect();
        assert_eq!(path_edge_closure(&star, &sp("23/1/4")).unwrap(), want);
    }

    #[test]
    fn corpus_generators() {
        assert_eq!(all_labeled_graphs(3).unwrap().len(), 8);
        assert_eq!(all_labeled_graphs(5).unwrap().len(), 1024);
        let trees = all_labeled_trees(4).unwrap();
        assert_eq!(trees.len(), 16);
        assert!(trees.iter().all(LabeledGraph::is_tree));
        let mut dedup = trees.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 16);
        assert_eq!(all_labeled_trees(6).unwrap().len(), 1296);
        assert_eq!(
            random_graph(6, 0.5, 7).unwrap(),
            random_graph(6, 0.5, 7).unwrap()
        );
        assert!(random_graph(6, 1.5, 7).is_err());
        assert_eq!(random_graph(5, 1.0, 1).unwrap(), LabeledGraph::complete(5));
        assert!(all_labeled_graphs(8).is_err());
    }

    #[test]
    fn cycle_search() {
        let k4 = LabeledGraph::complete(4);
        let cycles = find_cycles(&k4, 4).unwrap();
        // four triangles and three 4-cycles
        assert_eq!(cycles.len(), 7);
        for c in &cycles {
            assert_eq!(c.vertices.len(), c.edges.len());
            assert!(c.edges.iter().all(|&(u, v)| k4.has_edge(u, v)));
        }
        assert_eq!(find_cycles(&k4, 3).unwrap().len(), 4);
        assert!(find_cycles(&LabeledGraph::path(5), 5).unwrap().is_empty());
        assert_eq!(
            find_cycles(&LabeledGraph::complete(5), 5).unwrap().len(),
            10 + 15 + 12
        );
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let text = "# a path\nn 3\ne 1 2\n\ne 2 3\n";
        let gr: LabeledGraph = text.parse().unwrap();
        assert_eq!(gr, LabeledGraph::path(3));
        assert_eq!(gr.to_string().parse::<LabeledGraph>().unwrap(), gr);
        let err = |s: &str| match s.parse::<LabeledGraph>() {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(err("n 3\ne 1 2\ne 1 2\n"), 3);
        assert_eq!(err("n 3\ne 1 4\n"), 2);
        assert_eq!(err("n 3\ne 2 1\n"), 2);
        assert_eq!(err("e 1 2\n"), 1);
        assert_eq!(err("n 3\nx\n"), 2);
        assert_eq!(err("# nothing\n"), 1);
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..20 {
            let t = random_tree(7, seed).unwrap();
            assert!(t.is_tree());
            assert_eq!(t, random_tree(7, seed).unwrap());
        }
        assert_eq!(random_tree(1, 0).unwrap().n(), 1);
        assert!(random_tree(0, 0).is_err());
    }
}
