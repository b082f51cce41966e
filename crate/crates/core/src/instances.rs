//! Problem data for the six benchmark problems, feasibility predicates and
//! the overcost metric used by every report.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid tour: {0}")]
    InvalidTour(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("optimum metadata inconsistent: {0}")]
    Metadata(String),
}

pub type Result<T> = std::result::Result<T, InstanceError>;

/// Optimisation direction of a problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// True when `a` is strictly better than `b`.
    #[inline]
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Minimize => a < b,
            Sense::Maximize => a > b,
        }
    }

    /// The better of two values (the first on ties).
    #[inline]
    pub fn best_of(self, a: f64, b: f64) -> f64 {
        if self.better(b, a) {
            b
        } else {
            a
        }
    }

    pub fn worst_value(self) -> f64 {
        match self {
            Sense::Minimize => f64::INFINITY,
            Sense::Maximize => f64::NEG_INFINITY,
        }
    }
}

/// Approximability classes, ordered from the most optimistic to the most
/// pessimistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ApproxClass {
    Fptas,
    Ptas,
    Apx,
    LogApx,
    PolyApx,
    ExpApx,
}

impl ApproxClass {
    pub const ALL: [ApproxClass; 6] = [
        ApproxClass::Fptas,
        ApproxClass::Ptas,
        ApproxClass::Apx,
        ApproxClass::LogApx,
        ApproxClass::PolyApx,
        ApproxClass::ExpApx,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ApproxClass::Fptas => "FPTAS",
            ApproxClass::Ptas => "PTAS",
            ApproxClass::Apx => "APX",
            ApproxClass::LogApx => "Log-APX",
            ApproxClass::PolyApx => "Poly-APX",
            ApproxClass::ExpApx => "Exp-APX",
        }
    }
}

impl fmt::Display for ApproxClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The six problems of the suite, one per approximability class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Knapsack,
    EuclideanTsp,
    VertexCover,
    SetCover,
    IndependentSet,
    MatrixTsp,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] = [
        ProblemKind::Knapsack,
        ProblemKind::EuclideanTsp,
        ProblemKind::VertexCover,
        ProblemKind::SetCover,
        ProblemKind::IndependentSet,
        ProblemKind::MatrixTsp,
    ];

    pub fn class(self) -> ApproxClass {
        match self {
            ProblemKind::Knapsack => ApproxClass::Fptas,
            ProblemKind::EuclideanTsp => ApproxClass::Ptas,
            ProblemKind::VertexCover => ApproxClass::Apx,
            ProblemKind::SetCover => ApproxClass::LogApx,
            ProblemKind::IndependentSet => ApproxClass::PolyApx,
            ProblemKind::MatrixTsp => ApproxClass::ExpApx,
        }
    }

    pub fn sense(self) -> Sense {
        match self {
            ProblemKind::Knapsack | ProblemKind::IndependentSet => Sense::Maximize,
            _ => Sense::Minimize,
        }
    }

    /// Short identifier used on the command line and in spec files.
    pub fn id(self) -> &'static str {
        match self {
            ProblemKind::Knapsack => "knapsack",
            ProblemKind::EuclideanTsp => "tsp",
            ProblemKind::VertexCover => "mvc",
            ProblemKind::SetCover => "msc",
            ProblemKind::IndependentSet => "mis",
            ProblemKind::MatrixTsp => "matrix-tsp",
        }
    }

    /// Human readable name, as printed in table captions.
    pub fn title(self) -> &'static str {
        match self {
            ProblemKind::Knapsack => "Knapsack",
            ProblemKind::EuclideanTsp => "Euclidean TSP",
            ProblemKind::VertexCover => "Minimum Vertex Cover",
            ProblemKind::SetCover => "Minimum Set Covering",
            ProblemKind::IndependentSet => "Maximum Independent Set",
            ProblemKind::MatrixTsp => "TSP",
        }
    }

    pub fn for_class(class: ApproxClass) -> ProblemKind {
        match class {
            ApproxClass::Fptas => ProblemKind::Knapsack,
            ApproxClass::Ptas => ProblemKind::EuclideanTsp,
            ApproxClass::Apx => ProblemKind::VertexCover,
            ApproxClass::LogApx => ProblemKind::SetCover,
            ApproxClass::PolyApx => ProblemKind::IndependentSet,
            ApproxClass::ExpApx => ProblemKind::MatrixTsp,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ProblemKind {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "knapsack" | "kp" => Ok(ProblemKind::Knapsack),
            "tsp" | "euclidean-tsp" | "etsp" => Ok(ProblemKind::EuclideanTsp),
            "mvc" | "vertex-cover" => Ok(ProblemKind::VertexCover),
            "msc" | "set-cover" | "scp" => Ok(ProblemKind::SetCover),
            "mis" | "independent-set" => Ok(ProblemKind::IndependentSet),
            "matrix-tsp" | "mtsp" | "matrix" => Ok(ProblemKind::MatrixTsp),
            other => Err(InstanceError::Invalid(format!("unknown problem kind `{other}`"))),
        }
    }
}

/// A bit vector over items, vertices or family members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Selection(Vec<bool>);

pub type KnapsackSelection = Selection;
pub type VertexSubset = Selection;
pub type SubsetSelection = Selection;

impl Selection {
    pub fn empty(len: usize) -> Self {
        Selection(vec![false; len])
    }

    pub fn full(len: usize) -> Self {
        Selection(vec![true; len])
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = vec![false; len];
        for i in indices {
            bits[i] = true;
        }
        Selection(bits)
    }

    /// Parses a string of `0`/`1` characters, e.g. `"101"`.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(InstanceError::Invalid(format!("bad bit `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Selection)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// The complement with respect to the full index range.
    pub fn complement(&self) -> Self {
        Selection(self.0.iter().map(|b| !b).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    fn check_len(&self, expected: usize) -> Result<()> {
        if self.0.len() == expected {
            Ok(())
        } else {
            Err(InstanceError::Dimension { expected, found: self.0.len() })
        }
    }
}

impl From<Vec<bool>> for Selection {
    fn from(bits: Vec<bool>) -> Self {
        Selection(bits)
    }
}

// ---------------------------------------------------------------------------
// Knapsack

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Item {
    pub value: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackInstance {
    items: Vec<Item>,
    capacity: f64,
}

/// Result of [`KnapsackInstance::evaluate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnapsackEval {
    pub value: f64,
    pub weight: f64,
    pub feasible: bool,
}

impl KnapsackInstance {
    pub fn new(items: Vec<Item>, capacity: f64) -> Result<Self> {
        if !(capacity > 0.0 && capacity.is_finite()) {
            return Err(InstanceError::Invalid(format!("capacity must be positive, got {capacity}")));
        }
        for (i, it) in items.iter().enumerate() {
            if !(it.weight > 0.0 && it.weight.is_finite()) {
                return Err(InstanceError::Invalid(format!(
                    "item {i}: weight must be positive, got {}",
                    it.weight
                )));
            }
            if !(it.value >= 0.0 && it.value.is_finite()) {
                return Err(InstanceError::Invalid(format!(
                    "item {i}: value must be non-negative, got {}",
                    it.value
                )));
            }
        }
        Ok(KnapsackInstance { items, capacity })
    }

    /// Convenience constructor from `(value, weight)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)], capacity: f64) -> Result<Self> {
        Self::new(pairs.iter().map(|&(value, weight)| Item { value, weight }).collect(), capacity)
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn density(&self, i: usize) -> f64 {
        self.items[i].value / self.items[i].weight
    }

    /// Item indices sorted by non-increasing density, lower index first on ties.
    pub fn density_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.items.len()).collect();
        order.sort_by(|&a, &b| self.density(b).total_cmp(&self.density(a)).then(a.cmp(&b)));
        order
    }

    pub fn evaluate(&self, sel: &KnapsackSelection) -> Result<KnapsackEval> {
        sel.check_len(self.items.len())?;
        let (value, weight) = sel
            .indices()
            .fold((0.0, 0.0), |(v, w), i| (v + self.items[i].value, w + self.items[i].weight));
        Ok(KnapsackEval { value, weight, feasible: weight <= self.capacity })
    }
}

/// Value, weight and feasibility of a knapsack selection.
pub fn knapsack_eval(inst: &KnapsackInstance, sel: &KnapsackSelection) -> Result<KnapsackEval> {
    inst.evaluate(sel)
}

// ---------------------------------------------------------------------------
// Graphs

/// Simple undirected graph. Edges are stored normalised (`u < v`) and sorted
/// lexicographically; that order is the "edge index order" used by repair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(InstanceError::Invalid("graph needs at least one vertex".into()));
        }
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(InstanceError::Invalid(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(InstanceError::Invalid(format!("self-loop on vertex {u}")));
            }
            normalized.push((u.min(v) as u32, u.max(v) as u32));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(InstanceError::Invalid(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &normalized {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { vertex_count, edges: normalized, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn is_vertex_cover(&self, s: &VertexSubset) -> Result<bool> {
        s.check_len(self.vertex_count)?;
        let bits = s.bits();
        Ok(self.edges.iter().all(|&(u, v)| bits[u as usize] || bits[v as usize]))
    }

    pub fn is_independent_set(&self, s: &VertexSubset) -> Result<bool> {
        s.check_len(self.vertex_count)?;
        let bits = s.bits();
        Ok(!self.edges.iter().any(|&(u, v)| bits[u as usize] && bits[v as usize]))
    }
}

pub fn is_vertex_cover(g: &Graph, s: &VertexSubset) -> Result<bool> {
    g.is_vertex_cover(s)
}

pub fn is_independent_set(g: &Graph, s: &VertexSubset) -> Result<bool> {
    g.is_independent_set(s)
}

// ---------------------------------------------------------------------------
// TSP

/// Symmetric distance oracle over `0..n`.
pub trait Distances {
    fn n(&self) -> usize;
    fn dist(&self, i: usize, j: usize) -> f64;
}

/// How Euclidean distances are turned into edge lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rounding {
    /// TSPLIB `EUC_2D`: `nint(d) = floor(d + 0.5)`.
    #[default]
    Nint,
    /// Raw real distances.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanTspInstance {
    points: Vec<(f64, f64)>,
    rounding: Rounding,
    table: Vec<f64>,
}

impl EuclideanTspInstance {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        Self::with_rounding(points, Rounding::Nint)
    }

    pub fn with_rounding(points: Vec<(f64, f64)>, rounding: Rounding) -> Result<Self> {
        if points.len() < 3 {
            return Err(InstanceError::Invalid(format!(
                "a tour needs at least 3 cities, got {}",
                points.len()
            )));
        }
        if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(InstanceError::Invalid("non-finite coordinate".into()));
        }
        let n = points.len();
        let mut table = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                let d = (dx * dx + dy * dy).sqrt();
                let d = match rounding {
                    Rounding::Nint => (d + 0.5).floor(),
                    Rounding::Exact => d,
                };
                table[i * n + j] = d;
                table[j * n + i] = d;
            }
        }
        Ok(EuclideanTspInstance { points, rounding, table })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }
}

impl Distances for EuclideanTspInstance {
    fn n(&self) -> usize {
        self.points.len()
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        self.table[i * self.points.len() + j]
    }
}

/// Explicit symmetric integer distance matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTspInstance {
    n: usize,
    dist: Vec<u64>,
}

impl MatrixTspInstance {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if n < 3 {
            return Err(InstanceError::Invalid(format!("a tour needs at least 3 cities, got {n}")));
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(InstanceError::Invalid(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            dist.extend_from_slice(row);
        }
        for i in 0..n {
            if dist[i * n + i] != 0 {
                return Err(InstanceError::Invalid(format!("non-zero diagonal at {i}")));
            }
            for j in (i + 1)..n {
                if dist[i * n + j] != dist[j * n + i] {
                    return Err(InstanceError::Invalid(format!(
                        "asymmetric matrix: d({i},{j}) = {} but d({j},{i}) = {}",
                        dist[i * n + j],
                        dist[j * n + i]
                    )));
                }
            }
        }
        Ok(MatrixTspInstance { n, dist })
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.dist[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.dist.chunks(self.n)
    }
}

impl Distances for MatrixTspInstance {
    fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j] as f64
    }
}

/// A Hamiltonian cycle given as a vertex permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour(Vec<usize>);

impl Tour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        validate_permutation(&order)?;
        Ok(Tour(order))
    }

    /// The identity permutation `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        Tour((0..n).collect())
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(validate_permutation(&order).is_ok());
        Tour(order)
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn into_order(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Closed tour length under `d`.
    pub fn length<D: Distances + ?Sized>(&self, d: &D) -> Result<f64> {
        if self.0.len() != d.n() {
            return Err(InstanceError::Dimension { expected: d.n(), found: self.0.len() });
        }
        Ok(cycle_length(d, &self.0))
    }
}

pub fn validate_permutation(order: &[usize]) -> Result<()> {
    let mut seen = vec![false; order.len()];
    for &v in order {
        if v >= order.len() {
            return Err(InstanceError::InvalidTour(format!("vertex {v} out of range 0..{}", order.len())));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(InstanceError::InvalidTour(format!("vertex {v} visited twice")));
        }
    }
    Ok(())
}

#[inline]
pub(crate) fn cycle_length<D: Distances + ?Sized>(d: &D, order: &[usize]) -> f64 {
    match order.len() {
        0 => 0.0,
        n => (0..n).map(|i| d.dist(order[i], order[(i + 1) % n])).sum(),
    }
}

/// Tour length on any distance oracle. The permutation is validated first.
pub fn tour_length<D: Distances + ?Sized>(inst: &D, order: &[usize]) -> Result<f64> {
    validate_permutation(order)?;
    if order.len() != inst.n() {
        return Err(InstanceError::Dimension { expected: inst.n(), found: order.len() });
    }
    Ok(cycle_length(inst, order))
}

// ---------------------------------------------------------------------------
// Set cover

/// Unicost set covering instance over the universe `0..universe_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    universe_size: usize,
    family: Vec<Vec<u32>>,
}

impl SetCoverInstance {
    pub fn new(universe_size: usize, family: Vec<Vec<usize>>) -> Result<Self> {
        let mut covered = vec![false; universe_size];
        let mut sets = Vec::with_capacity(family.len());
        for (j, subset) in family.into_iter().enumerate() {
            let mut s: Vec<u32> = Vec::with_capacity(subset.len());
            for e in subset {
                if e >= universe_size {
                    return Err(InstanceError::Invalid(format!(
                        "subset {j} contains element {e} outside 0..{universe_size}"
                    )));
                }
                covered[e] = true;
                s.push(e as u32);
            }
            s.sort_unstable();
            s.dedup();
            sets.push(s);
        }
        if let Some(e) = covered.iter().position(|&c| !c) {
            return Err(InstanceError::Invalid(format!("element {e} is not covered by any subset")));
        }
        Ok(SetCoverInstance { universe_size, family: sets })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn family(&self) -> &[Vec<u32>] {
        &self.family
    }

    pub fn subset_count(&self) -> usize {
        self.family.len()
    }

    pub fn covers_universe(&self, sel: &SubsetSelection) -> Result<bool> {
        sel.check_len(self.family.len())?;
        let mut covered = vec![false; self.universe_size];
        for j in sel.indices() {
            for &e in &self.family[j] {
                covered[e as usize] = true;
            }
        }
        Ok(covered.into_iter().all(|c| c))
    }
}

pub fn covers_universe(inst: &SetCoverInstance, sel: &SubsetSelection) -> Result<bool> {
    inst.covers_universe(sel)
}

// ---------------------------------------------------------------------------
// Overcost

/// Percentage distance of `value` from `optimum`: `100 * |value - opt| / opt`.
///
/// A value on the wrong side of the optimum (better than optimal) means the
/// optimum metadata is wrong and is reported as an error.
pub fn overcost(value: f64, optimum: f64, sense: Sense) -> Result<f64> {
    if !(optimum > 0.0 && optimum.is_finite()) {
        return Err(InstanceError::Metadata(format!("optimum must be positive, got {optimum}")));
    }
    // Allow float noise on the boundary.
    let slack = 1e-9 * optimum;
    let wrong_side = match sense {
        Sense::Minimize => value < optimum - slack,
        Sense::Maximize => value > optimum + slack,
    };
    if wrong_side {
        return Err(InstanceError::Metadata(format!(
            "value {value} is better than the declared optimum {optimum}"
        )));
    }
    Ok(100.0 * (value - optimum).abs() / optimum)
}

// ---------------------------------------------------------------------------
// Unified views

/// Any of the six benchmark instances.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemInstance {
    Knapsack(KnapsackInstance),
    EuclideanTsp(EuclideanTspInstance),
    VertexCover(Graph),
    SetCover(SetCoverInstance),
    IndependentSet(Graph),
    MatrixTsp(MatrixTspInstance),
}

/// A candidate solution for some [`ProblemInstance`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Solution {
    Subset(Selection),
    Tour(Tour),
}

impl Solution {
    pub fn as_subset(&self) -> Option<&Selection> {
        match self {
            Solution::Subset(s) => Some(s),
            Solution::Tour(_) => None,
        }
    }

    pub fn as_tour(&self) -> Option<&Tour> {
        match self {
            Solution::Tour(t) => Some(t),
            Solution::Subset(_) => None,
        }
    }
}

impl fmt::Display for Solution {
    /// Space-separated 0-based indices (chosen elements, or the visiting order).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = match self {
            Solution::Subset(s) => s.indices().map(|i| i.to_string()).collect(),
            Solution::Tour(t) => t.order().iter().map(|i| i.to_string()).collect(),
        };
        f.write_str(&items.join(" "))
    }
}

impl ProblemInstance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemInstance::Knapsack(_) => ProblemKind::Knapsack,
            ProblemInstance::EuclideanTsp(_) => ProblemKind::EuclideanTsp,
            ProblemInstance::VertexCover(_) => ProblemKind::VertexCover,
            ProblemInstance::SetCover(_) => ProblemKind::SetCover,
            ProblemInstance::IndependentSet(_) => ProblemKind::IndependentSet,
            ProblemInstance::MatrixTsp(_) => ProblemKind::MatrixTsp,
        }
    }

    pub fn class(&self) -> ApproxClass {
        self.kind().class()
    }

    pub fn sense(&self) -> Sense {
        self.kind().sense()
    }

    /// Genome length: items, cities, vertices or family members.
    pub fn dimension(&self) -> usize {
        match self {
            ProblemInstance::Knapsack(k) => k.len(),
            ProblemInstance::EuclideanTsp(t) => t.n(),
            ProblemInstance::VertexCover(g) | ProblemInstance::IndependentSet(g) => g.vertex_count(),
            ProblemInstance::SetCover(s) => s.subset_count(),
            ProblemInstance::MatrixTsp(m) => m.n(),
        }
    }

    pub fn is_feasible(&self, sol: &Solution) -> Result<bool> {
        match (self, sol) {
            (ProblemInstance::Knapsack(k), Solution::Subset(s)) => Ok(k.evaluate(s)?.feasible),
            (ProblemInstance::VertexCover(g), Solution::Subset(s)) => g.is_vertex_cover(s),
            (ProblemInstance::IndependentSet(g), Solution::Subset(s)) => g.is_independent_set(s),
            (ProblemInstance::SetCover(c), Solution::Subset(s)) => c.covers_universe(s),
            (ProblemInstance::EuclideanTsp(t), Solution::Tour(tour)) => {
                tour.length(t).map(|_| true)
            }
            (ProblemInstance::MatrixTsp(m), Solution::Tour(tour)) => tour.length(m).map(|_| true),
            _ => Err(InstanceError::Invalid(format!(
                "solution encoding does not match a {} instance",
                self.kind()
            ))),
        }
    }

    /// Objective value of a feasible solution.
    pub fn objective(&self, sol: &Solution) -> Result<f64> {
        if !self.is_feasible(sol)? {
            return Err(InstanceError::Invalid(format!("infeasible {} solution", self.kind())));
        }
        Ok(match (self, sol) {
            (ProblemInstance::Knapsack(k), Solution::Subset(s)) => k.evaluate(s)?.value,
            (ProblemInstance::EuclideanTsp(t), Solution::Tour(tour)) => tour.length(t)?,
            (ProblemInstance::MatrixTsp(m), Solution::Tour(tour)) => tour.length(m)?,
            (_, Solution::Subset(s)) => s.count() as f64,
            _ => unreachable!("encoding checked by is_feasible"),
        })
    }
}
