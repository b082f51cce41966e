//! Text formats: a canonical knapsack format, TSPLIB (`EUC_2D` and
//! `EXPLICIT`/`FULL_MATRIX`), ASCII DIMACS graphs and OR-Library SCP files,
//! plus `.opt` sidecars carrying known optima.
//!
//! Every 1-based index in a file becomes 0-based here. All parsers accept LF
//! and CRLF line endings.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::instances::{
    Distances, EuclideanTspInstance, Graph, InstanceError, Item, KnapsackInstance,
    MatrixTspInstance, ProblemInstance, ProblemKind, Rounding, SetCoverInstance,
};

/// Largest TSP dimension accepted; distance tables are dense.
pub const MAX_TSP_DIMENSION: usize = 5_000;
/// Largest graph accepted from a DIMACS header.
pub const MAX_GRAPH_VERTICES: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported format: {0}")]
    Unsupported(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("no optimum known for {0} (add a .opt sidecar or pass --optimum)")]
    MissingOptimum(PathBuf),
    #[error("invalid optimum: {0}")]
    Optimum(String),
}

pub type Result<T> = std::result::Result<T, IoError>;

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

/// Whitespace tokens tagged with their 1-based line number.
struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let items: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)))
            .collect();
        let last_line = text.lines().count().max(1);
        Tokens { items, pos: 0, last_line }
    }

    fn remaining(&self) -> usize {
        self.items.len() - self.pos
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.items.get(self.pos) {
            Some(&tok) => {
                self.pos += 1;
                Ok(tok)
            }
            None => Err(parse_err(self.last_line, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn usize(&mut self, what: &str) -> Result<(usize, usize)> {
        let (line, tok) = self.next(what)?;
        tok.parse::<usize>()
            .map(|v| (line, v))
            .map_err(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
    }

    fn f64(&mut self, what: &str) -> Result<(usize, f64)> {
        let (line, tok) = self.next(what)?;
        parse_f64(tok).map(|v| (line, v)).ok_or_else(|| parse_err(line, format!("expected {what}, found `{tok}`")))
    }
}

fn parse_f64(tok: &str) -> Option<f64> {
    tok.parse::<f64>().ok().filter(|v| v.is_finite())
}

// ---------------------------------------------------------------------------
// Knapsack

/// Canonical knapsack text: a line `n W`, then `n` lines `value weight`.
/// Blank lines and `#` comments are ignored.
pub fn parse_knapsack(text: &str) -> Result<KnapsackInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty knapsack file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, cap] = fields[..] else {
        return Err(parse_err(hline, "header must be `n W`"));
    };
    let n: usize = n.parse().map_err(|_| parse_err(hline, format!("bad item count `{n}`")))?;
    let cap = parse_f64(cap).ok_or_else(|| parse_err(hline, format!("bad capacity `{cap}`")))?;
    if cap <= 0.0 {
        return Err(parse_err(hline, "capacity must be positive"));
    }
    let mut items = Vec::new();
    for (line, body) in lines {
        if items.len() == n {
            return Err(parse_err(line, format!("more than the declared {n} items")));
        }
        let f: Vec<&str> = body.split_whitespace().collect();
        let [v, w] = f[..] else {
            return Err(parse_err(line, "item line must be `value weight`"));
        };
        let value = parse_f64(v).ok_or_else(|| parse_err(line, format!("bad value `{v}`")))?;
        let weight = parse_f64(w).ok_or_else(|| parse_err(line, format!("bad weight `{w}`")))?;
        if weight <= 0.0 {
            return Err(parse_err(line, "weight must be positive"));
        }
        if value < 0.0 {
            return Err(parse_err(line, "value must be non-negative"));
        }
        items.push(Item { value, weight });
    }
    if items.len() != n {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("declared {n} items, found {}", items.len()),
        ));
    }
    Ok(KnapsackInstance::new(items, cap)?)
}

pub fn write_knapsack(inst: &KnapsackInstance) -> String {
    let mut out = format!("{} {}\n", inst.len(), inst.capacity());
    for it in inst.items() {
        let _ = writeln!(out, "{} {}", it.value, it.weight);
    }
    out
}

// ---------------------------------------------------------------------------
// TSPLIB

/// A parsed TSPLIB file.
#[derive(Debug, Clone, PartialEq)]
pub enum TspFile {
    Euclidean { name: String, instance: EuclideanTspInstance },
    Matrix { name: String, instance: MatrixTspInstance },
}

impl TspFile {
    pub fn name(&self) -> &str {
        match self {
            TspFile::Euclidean { name, .. } | TspFile::Matrix { name, .. } => name,
        }
    }

    pub fn into_problem(self) -> ProblemInstance {
        match self {
            TspFile::Euclidean { instance, .. } => ProblemInstance::EuclideanTsp(instance),
            TspFile::Matrix { instance, .. } => ProblemInstance::MatrixTsp(instance),
        }
    }
}

pub fn parse_tsplib(text: &str) -> Result<TspFile> {
    parse_tsplib_with(text, Rounding::Nint)
}

/// Parses TSPLIB with an explicit rounding rule for `EUC_2D` distances.
pub fn parse_tsplib_with(text: &str, rounding: Rounding) -> Result<TspFile> {
    let mut name = String::new();
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<String> = None;
    let mut weight_format: Option<String> = None;
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).collect();

    let mut idx = 0;
    let mut section: Option<(usize, &str)> = None;
    while idx < lines.len() {
        let (line, body) = lines[idx];
        idx += 1;
        if body.is_empty() {
            continue;
        }
        let upper = body.to_ascii_uppercase();
        if upper == "EOF" {
            break;
        }
        if upper.ends_with("_SECTION") {
            section = Some((line, body));
            break;
        }
        let (key, value) = match body.split_once(':') {
            Some((k, v)) => (k.trim().to_ascii_uppercase(), v.trim()),
            None => return Err(parse_err(line, format!("expected `KEY: VALUE`, found `{body}`"))),
        };
        match key.as_str() {
            "NAME" => name = value.to_string(),
            "TYPE" => {
                if !value.eq_ignore_ascii_case("TSP") {
                    return Err(IoError::Unsupported(format!("TYPE {value}")));
                }
            }
            "DIMENSION" => {
                let d: usize =
                    value.parse().map_err(|_| parse_err(line, format!("bad DIMENSION `{value}`")))?;
                if d > MAX_TSP_DIMENSION {
                    return Err(IoError::Unsupported(format!("DIMENSION {d} exceeds {MAX_TSP_DIMENSION}")));
                }
                dimension = Some(d);
            }
            "EDGE_WEIGHT_TYPE" => weight_type = Some(value.to_ascii_uppercase()),
            "EDGE_WEIGHT_FORMAT" => weight_format = Some(value.to_ascii_uppercase()),
            _ => {}
        }
    }

    let (sline, sname) = section.ok_or_else(|| parse_err(lines.len().max(1), "no data section"))?;
    let n = dimension.ok_or_else(|| parse_err(sline, "DIMENSION missing before data section"))?;
    let weight_type = weight_type.ok_or_else(|| parse_err(sline, "EDGE_WEIGHT_TYPE missing"))?;
    let rest = &lines[idx..];

    match weight_type.as_str() {
        "EUC_2D" => {
            if !sname.eq_ignore_ascii_case("NODE_COORD_SECTION") {
                return Err(parse_err(sline, format!("EUC_2D expects NODE_COORD_SECTION, found {sname}")));
            }
            let mut points: Vec<Option<(f64, f64)>> = vec![None; n];
            let mut read = 0;
            for &(line, body) in rest {
                if body.is_empty() {
                    continue;
                }
                if body.eq_ignore_ascii_case("EOF") || read == n {
                    break;
                }
                let f: Vec<&str> = body.split_whitespace().collect();
                let [id, x, y] = f[..] else {
                    return Err(parse_err(line, "coordinate line must be `id x y`"));
                };
                let id: usize = id.parse().map_err(|_| parse_err(line, format!("bad node id `{id}`")))?;
                if id == 0 || id > n {
                    return Err(parse_err(line, format!("node id {id} outside 1..={n}")));
                }
                let x = parse_f64(x).ok_or_else(|| parse_err(line, format!("bad coordinate `{x}`")))?;
                let y = parse_f64(y).ok_or_else(|| parse_err(line, format!("bad coordinate `{y}`")))?;
                if points[id - 1].replace((x, y)).is_some() {
                    return Err(parse_err(line, format!("node {id} listed twice")));
                }
                read += 1;
            }
            if read != n {
                return Err(parse_err(sline, format!("DIMENSION is {n} but {read} nodes were listed")));
            }
            let points = points.into_iter().map(|p| p.expect("all ids seen")).collect();
            let instance = EuclideanTspInstance::with_rounding(points, rounding)?;
            Ok(TspFile::Euclidean { name, instance })
        }
        "EXPLICIT" => {
            match weight_format.as_deref() {
                Some("FULL_MATRIX") => {}
                other => {
                    return Err(IoError::Unsupported(format!(
                        "EDGE_WEIGHT_FORMAT {}",
                        other.unwrap_or("(missing)")
                    )))
                }
            }
            if !sname.eq_ignore_ascii_case("EDGE_WEIGHT_SECTION") {
                return Err(parse_err(sline, format!("EXPLICIT expects EDGE_WEIGHT_SECTION, found {sname}")));
            }
            let mut values = Vec::new();
            'outer: for &(line, body) in rest {
                if body.eq_ignore_ascii_case("EOF") {
                    break;
                }
                for tok in body.split_whitespace() {
                    if values.len() == n * n {
                        break 'outer;
                    }
                    let v: u64 = tok.parse().map_err(|_| parse_err(line, format!("bad weight `{tok}`")))?;
                    values.push(v);
                }
            }
            if values.len() != n * n {
                return Err(parse_err(
                    sline,
                    format!("DIMENSION {n} needs {} weights, found {}", n * n, values.len()),
                ));
            }
            let rows = values.chunks(n.max(1)).map(<[u64]>::to_vec).collect();
            let instance = MatrixTspInstance::new(rows)?;
            Ok(TspFile::Matrix { name, instance })
        }
        other => Err(IoError::Unsupported(format!("EDGE_WEIGHT_TYPE {other}"))),
    }
}

pub fn write_tsplib_euclidean(name: &str, inst: &EuclideanTspInstance) -> String {
    let mut out = format!(
        "NAME: {name}\nTYPE: TSP\nDIMENSION: {}\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n",
        inst.n()
    );
    for (i, (x, y)) in inst.points().iter().enumerate() {
        let _ = writeln!(out, "{} {x} {y}", i + 1);
    }
    out.push_str("EOF\n");
    out
}

pub fn write_tsplib_matrix(name: &str, inst: &MatrixTspInstance) -> String {
    let mut out = format!(
        "NAME: {name}\nTYPE: TSP\nDIMENSION: {}\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n",
        inst.n()
    );
    for row in inst.rows() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out.push_str("EOF\n");
    out
}

// ---------------------------------------------------------------------------
// DIMACS

/// A DIMACS graph plus what the parser had to clean up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsGraph {
    pub graph: Graph,
    /// Edges listed more than once (in either orientation) and collapsed.
    pub duplicate_edges: usize,
    pub declared_edges: usize,
}

pub fn parse_dimacs_graph(text: &str) -> Result<DimacsGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut f = raw.split_whitespace();
        match f.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "second `p` line"));
                }
                let kind = f.next().unwrap_or("");
                if !matches!(kind, "edge" | "edges" | "col") {
                    return Err(parse_err(line, format!("expected `p edge`, found `p {kind}`")));
                }
                let n = f.next().and_then(|t| t.parse::<usize>().ok());
                let m = f.next().and_then(|t| t.parse::<usize>().ok());
                let (Some(n), Some(m)) = (n, m) else {
                    return Err(parse_err(line, "problem line must be `p edge <n> <m>`"));
                };
                if n == 0 || n > MAX_GRAPH_VERTICES {
                    return Err(parse_err(line, format!("vertex count {n} outside 1..={MAX_GRAPH_VERTICES}")));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "edge before the `p` line"))?;
                let u = f.next().and_then(|t| t.parse::<usize>().ok());
                let v = f.next().and_then(|t| t.parse::<usize>().ok());
                let (Some(u), Some(v)) = (u, v) else {
                    return Err(parse_err(line, "edge line must be `e <u> <v>`"));
                };
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(line, format!("endpoint out of range 1..={n}: ({u}, {v})")));
                }
                if u == v {
                    return Err(parse_err(line, format!("self-loop on vertex {u}")));
                }
                edges.push(((u - 1).min(v - 1), (u - 1).max(v - 1)));
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(text.lines().count().max(1), "missing `p edge` line"))?;
    let listed = edges.len();
    edges.sort_unstable();
    edges.dedup();
    let duplicate_edges = listed - edges.len();
    if duplicate_edges > 0 {
        log::warn!("collapsed {duplicate_edges} duplicate edges");
    }
    let graph = Graph::new(n, edges)?;
    Ok(DimacsGraph { graph, duplicate_edges, declared_edges: m })
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

// ---------------------------------------------------------------------------
// OR-Library set covering

/// OR-Library SCP layout: `m n`, `n` column costs, then per row a count and
/// that many 1-based column indices. Tokens may wrap freely across lines.
/// Costs are read and discarded: the objective is the number of columns.
pub fn parse_orlib_scp(text: &str) -> Result<SetCoverInstance> {
    let mut t = Tokens::new(text);
    let (_, rows) = t.usize("row count")?;
    let (_, cols) = t.usize("column count")?;
    if cols > t.remaining() {
        return Err(parse_err(t.last_line, format!("expected {cols} column costs, input too short")));
    }
    for _ in 0..cols {
        t.f64("column cost")?;
    }
    if rows > t.remaining() {
        return Err(parse_err(t.last_line, format!("expected {rows} rows, input too short")));
    }
    let mut family: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for row in 0..rows {
        let (line, k) = t.usize("row cover count")?;
        if k == 0 {
            return Err(parse_err(line, format!("row {} cannot be covered by any column", row + 1)));
        }
        if k > t.remaining() {
            return Err(parse_err(t.last_line, format!("row {} lists {k} columns, input too short", row + 1)));
        }
        for _ in 0..k {
            let (line, c) = t.usize("column index")?;
            if c == 0 || c > cols {
                return Err(parse_err(line, format!("column index {c} outside 1..={cols}")));
            }
            family[c - 1].push(row);
        }
    }
    Ok(SetCoverInstance::new(rows, family)?)
}

/// Writes OR-Library SCP with unit costs, twelve tokens per line.
pub fn write_orlib_scp(inst: &SetCoverInstance) -> String {
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); inst.universe_size()];
    for (j, s) in inst.family().iter().enumerate() {
        for &e in s {
            rows[e as usize].push(j + 1);
        }
    }
    let mut out = format!("{} {}\n", inst.universe_size(), inst.subset_count());
    let push_wrapped = |out: &mut String, toks: &[String]| {
        for chunk in toks.chunks(12) {
            out.push_str(&chunk.join(" "));
            out.push('\n');
        }
    };
    push_wrapped(&mut out, &vec!["1".to_string(); inst.subset_count()]);
    for r in rows {
        let _ = writeln!(out, "{}", r.len());
        push_wrapped(&mut out, &r.iter().map(usize::to_string).collect::<Vec<_>>());
    }
    out
}

// ---------------------------------------------------------------------------
// Optima

pub fn parse_optimum(text: &str) -> Result<f64> {
    let tok = text.split_whitespace().next().ok_or_else(|| IoError::Optimum("empty optimum file".into()))?;
    let v = parse_f64(tok).ok_or_else(|| IoError::Optimum(format!("`{tok}` is not a number")))?;
    if v <= 0.0 {
        return Err(IoError::Optimum(format!("optimum must be positive, got {v}")));
    }
    Ok(v)
}

/// Sidecar candidates for an instance, most specific first:
/// `<instance>.<kind>.opt`, then `<instance>.opt`.
pub fn sidecar_paths(instance: &Path, kind: ProblemKind) -> [PathBuf; 2] {
    let with = |suffix: &str| {
        let mut s = instance.as_os_str().to_owned();
        s.push(suffix);
        PathBuf::from(s)
    };
    [with(&format!(".{}.opt", kind.id())), with(".opt")]
}

/// Resolves the optimum for an instance; an explicit value wins over any
/// sidecar file.
pub fn read_optimum(instance: &Path, kind: ProblemKind, flag: Option<f64>) -> Result<Option<f64>> {
    if let Some(v) = flag {
        if !(v > 0.0 && v.is_finite()) {
            return Err(IoError::Optimum(format!("optimum must be positive, got {v}")));
        }
        return Ok(Some(v));
    }
    for path in sidecar_paths(instance, kind) {
        if path.is_file() {
            let text = fs::read_to_string(&path).map_err(|source| IoError::Io { path: path.clone(), source })?;
            return parse_optimum(&text).map(Some);
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Instance files

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatTag {
    Knapsack,
    Tsplib,
    Dimacs,
    OrLibScp,
}

impl FormatTag {
    pub fn for_kind(kind: ProblemKind) -> FormatTag {
        match kind {
            ProblemKind::Knapsack => FormatTag::Knapsack,
            ProblemKind::EuclideanTsp | ProblemKind::MatrixTsp => FormatTag::Tsplib,
            ProblemKind::VertexCover | ProblemKind::IndependentSet => FormatTag::Dimacs,
            ProblemKind::SetCover => FormatTag::OrLibScp,
        }
    }
}

/// A loaded benchmark instance.
#[derive(Debug, Clone)]
pub struct InstanceFile {
    pub path: PathBuf,
    pub name: String,
    pub format: FormatTag,
    pub instance: ProblemInstance,
    pub optimum: Option<f64>,
}

impl InstanceFile {
    pub fn require_optimum(&self) -> Result<f64> {
        self.optimum.ok_or_else(|| IoError::MissingOptimum(self.path.clone()))
    }
}

/// Parses `text` as an instance of `kind`.
pub fn parse_instance(text: &str, kind: ProblemKind) -> Result<ProblemInstance> {
    Ok(match kind {
        ProblemKind::Knapsack => ProblemInstance::Knapsack(parse_knapsack(text)?),
        ProblemKind::EuclideanTsp | ProblemKind::MatrixTsp => {
            let p = parse_tsplib(text)?.into_problem();
            if p.kind() != kind {
                return Err(IoError::Unsupported(format!(
                    "file holds a {} instance but {} was requested",
                    p.kind(),
                    kind
                )));
            }
            p
        }
        ProblemKind::VertexCover => ProblemInstance::VertexCover(parse_dimacs_graph(text)?.graph),
        ProblemKind::IndependentSet => ProblemInstance::IndependentSet(parse_dimacs_graph(text)?.graph),
        ProblemKind::SetCover => ProblemInstance::SetCover(parse_orlib_scp(text)?),
    })
}

/// Serialises an instance in the format its kind is read from.
pub fn write_instance(name: &str, inst: &ProblemInstance) -> String {
    match inst {
        ProblemInstance::Knapsack(k) => write_knapsack(k),
        ProblemInstance::EuclideanTsp(t) => write_tsplib_euclidean(name, t),
        ProblemInstance::MatrixTsp(m) => write_tsplib_matrix(name, m),
        ProblemInstance::VertexCover(g) | ProblemInstance::IndependentSet(g) => write_dimacs(g),
        ProblemInstance::SetCover(s) => write_orlib_scp(s),
    }
}

/// Reads and parses an instance file and resolves its optimum.
pub fn load_instance(path: &Path, kind: ProblemKind, optimum: Option<f64>) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Io { path: path.to_path_buf(), source })?;
    let instance = parse_instance(&text, kind)?;
    let name = match kind {
        ProblemKind::EuclideanTsp | ProblemKind::MatrixTsp => {
            parse_tsplib(&text).ok().map(|f| f.name().to_string()).filter(|n| !n.is_empty())
        }
        _ => None,
    }
    .unwrap_or_else(|| {
        path.file_name()
            .map(|f| f.to_string_lossy().split('.').next().unwrap_or_default().to_string())
            .unwrap_or_default()
    });
    let optimum = read_optimum(path, kind, optimum)?;
    Ok(InstanceFile { path: path.to_path_buf(), name, format: FormatTag::for_kind(kind), instance, optimum })
}
