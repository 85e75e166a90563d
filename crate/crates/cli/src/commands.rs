use std::fmt::{self, Write as _};
use std::io::Read;

use ncsym::chromatic::{
    chromatic_symmetric_function, classify_e_positivity, x_sign_report, Method,
};
use ncsym::chromatic_bases::{build_basis, AtomicGeneratorStrategy};
use ncsym::graphs::LabeledGraph;
use ncsym::verify::{run_suite, uses_randomness, Suite};
use ncsym::{limits, Basis, Error, NcSymElement};
use serde::Serialize;

use crate::report::{ClassifyJson, InfoJson};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: String, message: String },
    Lib(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Lib(Error::Parse { .. } | Error::Domain(_)) => 2,
            CliError::Lib(Error::Resource { .. }) => 3,
            CliError::Lib(Error::Invariant(_)) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type Output = Result<(String, bool), CliError>;

pub fn apply_env_limits() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("NCSYM_MAX_N") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("NCSYM_MAX_N must be an integer, got `{v}`")))?;
        limits::set_max_n(n)?;
    }
    Ok(())
}

pub fn init_threads(threads: usize) -> Result<(), CliError> {
    if threads == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

fn read_input(path: &str) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn read_graph(path: &str) -> Result<LabeledGraph, CliError> {
    Ok(read_input(path)?.parse()?)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    s.push('\n');
    s
}

fn element_text(f: &NcSymElement) -> String {
    format!(
        "basis {}, degree {}, {} terms\n{f}\n",
        f.basis().symbol(),
        f.degree(),
        f.len()
    )
}

pub fn expand(graph: &str, basis: Basis, method: Method, json: bool) -> Output {
    let g = read_graph(graph)?;
    let y = chromatic_symmetric_function(&g, method)?.convert(basis)?;
    Ok((
        if json {
            json_line(&y.to_json())
        } else {
            element_text(&y)
        },
        true,
    ))
}

pub fn convert(expr: &str, from: Basis, to: Basis, json: bool) -> Output {
    let f = NcSymElement::from_json_str(&read_input(expr)?)?;
    if f.basis() != from {
        return Err(CliError::Usage(format!(
            "element is written in basis {} but --from is {}",
            f.basis().symbol(),
            from.symbol()
        )));
    }
    let g = f.convert(to)?;
    Ok((
        if json {
            json_line(&g.to_json())
        } else {
            element_text(&g)
        },
        true,
    ))
}

pub fn classify(graph: &str, json: bool) -> Output {
    let g = read_graph(graph)?;
    let e = classify_e_positivity(&g)?;
    let x = x_sign_report(&g)?;
    if json {
        let report = ClassifyJson {
            graph: g.encoding(),
            e_positivity: (&e).into(),
            x_sign: (&x).into(),
        };
        return Ok((json_line(&report), true));
    }
    let mut s = String::new();
    let verdict = serde_json::to_value(e.verdict).expect("verdict serializes");
    writeln!(s, "graph: {}", g.encoding()).unwrap();
    writeln!(s, "e-positivity: {}", verdict.as_str().unwrap_or_default()).unwrap();
    writeln!(s, "clique union: {}", e.is_clique_union).unwrap();
    match &e.negative_witness {
        Some(w) => writeln!(
            s,
            "negative witness: e[{}] coefficient {} (formula {})",
            w.partition, w.coefficient, w.formula_coefficient
        )
        .unwrap(),
        None => writeln!(s, "negative witness: none").unwrap(),
    }
    writeln!(s, "top coefficient: {}", e.top_coefficient).unwrap();
    writeln!(
        s,
        "e-terms: {} positive, {} negative",
        e.positive_terms, e.negative_terms
    )
    .unwrap();
    writeln!(
        s,
        "x-sign: n={} k={} sign={:+} z x-positive: {}",
        x.n, x.k, x.sign, x.z_is_x_positive
    )
    .unwrap();
    Ok((s, true))
}

pub fn verify(suite: &str, n: usize, seed: Option<u64>, json: bool) -> Output {
    let suite: Suite = suite.parse()?;
    let seed = match seed {
        Some(s) => s,
        None if uses_randomness(suite, n) => {
            return Err(CliError::Usage(format!(
                "suite {suite} at n={n} draws random instances; pass --seed"
            )))
        }
        None => 0,
    };
    let report = run_suite(suite, n, seed, None)?;
    let ok = report.ok();
    Ok((
        if json {
            json_line(&report)
        } else {
            report.to_string()
        },
        ok,
    ))
}

pub fn basis(n: usize, strategy: AtomicGeneratorStrategy, json: bool) -> Output {
    let b = build_basis(n, strategy)?;
    let j = b.to_json();
    if json {
        return Ok((json_line(&j), true));
    }
    let mut s = String::new();
    writeln!(s, "chromatic basis n={n} strategy={strategy}").unwrap();
    writeln!(s, "generators ({}):", j.generators.len()).unwrap();
    for g in &j.generators {
        writeln!(s, "  {}: {}", g.alpha, g.graph).unwrap();
    }
    writeln!(s, "basis graphs ({}):", j.graphs.len()).unwrap();
    for g in &j.graphs {
        writeln!(s, "  {}: {}", g.partition, g.graph).unwrap();
    }
    writeln!(s, "diagonal:").unwrap();
    for (p, d) in b.diagonal() {
        writeln!(s, "  {p}: {d}").unwrap();
    }
    writeln!(
        s,
        "transition (row pi: p-coefficients of Y_G[pi], columns in partition order):"
    )
    .unwrap();
    for (p, row) in b.partitions().iter().zip(b.transition()) {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(s, "  {p}: {}", cells.join(" ")).unwrap();
    }
    Ok((s, true))
}

pub fn info(graph: &str, json: bool) -> Output {
    let g = read_graph(graph)?;
    let i = InfoJson::from(&g);
    if json {
        return Ok((json_line(&i), true));
    }
    let mut s = String::new();
    writeln!(s, "graph: {}", i.graph).unwrap();
    writeln!(s, "vertices: {}", i.n).unwrap();
    writeln!(s, "edges: {}", i.num_edges).unwrap();
    writeln!(s, "components: {} ({})", i.components, i.num_components).unwrap();
    writeln!(s, "connected: {}", i.is_connected).unwrap();
    writeln!(s, "tree: {}", i.is_tree).unwrap();
    writeln!(s, "clique union: {}", i.is_clique_union).unwrap();
    Ok((s, true))
}
