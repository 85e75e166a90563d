//! Serializable views of library results.

use ncsym::chromatic::{EPositivityReport, EVerdict, XSignReport};
use ncsym::chromatic_bases::RationalJson;
use ncsym::graphs::{components_partition, LabeledGraph};
use serde::Serialize;

#[derive(Serialize)]
pub struct WitnessJson {
    pub partition: String,
    pub coefficient: RationalJson,
    pub formula_coefficient: RationalJson,
}

#[derive(Serialize)]
pub struct EPositivityJson {
    pub verdict: EVerdict,
    pub is_clique_union: bool,
    pub negative_witness: Option<WitnessJson>,
    pub top_coefficient: RationalJson,
    pub positive_terms: usize,
    pub negative_terms: usize,
}

impl From<&EPositivityReport> for EPositivityJson {
    fn from(r: &EPositivityReport) -> Self {
        EPositivityJson {
            verdict: r.verdict,
            is_clique_union: r.is_clique_union,
            negative_witness: r.negative_witness.as_ref().map(|w| WitnessJson {
                partition: w.partition.to_string(),
                coefficient: (&w.coefficient).into(),
                formula_coefficient: (&w.formula_coefficient).into(),
            }),
            top_coefficient: (&r.top_coefficient).into(),
            positive_terms: r.positive_terms,
            negative_terms: r.negative_terms,
        }
    }
}

#[derive(Serialize)]
pub struct XSignJson {
    pub n: usize,
    pub k: usize,
    pub sign: i8,
    pub z_is_x_positive: bool,
}

impl From<&XSignReport> for XSignJson {
    fn from(r: &XSignReport) -> Self {
        XSignJson {
            n: r.n,
            k: r.k,
            sign: r.sign,
            z_is_x_positive: r.z_is_x_positive,
        }
    }
}

#[derive(Serialize)]
pub struct ClassifyJson {
    pub graph: String,
    pub e_positivity: EPositivityJson,
    pub x_sign: XSignJson,
}

#[derive(Serialize)]
pub struct InfoJson {
    pub graph: String,
    pub n: usize,
    pub num_edges: usize,
    pub edges: Vec<[usize; 2]>,
    pub components: String,
    pub num_components: usize,
    pub is_connected: bool,
    pub is_tree: bool,
    pub is_clique_union: bool,
}

impl From<&LabeledGraph> for InfoJson {
    fn from(g: &LabeledGraph) -> Self {
        let comps = components_partition(g);
        InfoJson {
            graph: g.encoding(),
            n: g.n(),
            num_edges: g.num_edges(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            components: comps.to_string(),
            num_components: comps.num_blocks(),
            is_connected: g.is_connected(),
            is_tree: g.is_tree(),
            is_clique_union: g.is_clique_union(),
        }
    }
}
