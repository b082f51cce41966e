//! Seeded generators for benchmark-style instances.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instances::{
    EuclideanTspInstance, Graph, InstanceError, Item, KnapsackInstance, MatrixTspInstance, Result,
    SetCoverInstance,
};

/// Symmetric matrix with zero diagonal and off-diagonal entries uniform in
/// `1..=max`.
pub fn random_matrix_tsp(n: usize, max: u64, seed: u64) -> Result<MatrixTspInstance> {
    if max == 0 {
        return Err(InstanceError::Invalid("maximum distance must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.random_range(1..=max);
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    MatrixTspInstance::new(rows)
}

/// Points uniform on the integer grid `[0, side)²`.
pub fn random_euclidean_tsp(n: usize, side: u32, seed: u64) -> Result<EuclideanTspInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points =
        (0..n).map(|_| (rng.random_range(0..side) as f64, rng.random_range(0..side) as f64)).collect();
    EuclideanTspInstance::new(points)
}

/// Parameters of a forced-satisfiable model RB instance, as used by the
/// BHOSLIB `frb` graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RbParams {
    /// Number of CSP variables (`30` in `frb30-15-*`).
    pub variables: usize,
    /// Domain size per variable (`15` in `frb30-15-*`).
    pub domain: usize,
    /// Fraction of incompatible value pairs per constraint.
    pub tightness: f64,
    /// Constraint density; the instance has `round(r * n * ln n)` constraints.
    pub r: f64,
    pub seed: u64,
}

impl RbParams {
    /// The `frbN-D` family: `alpha = ln D / ln N`, tightness `p = 0.25` and
    /// `r = alpha / -ln(1 - p)`, which places the instance at the
    /// satisfiability threshold.
    pub fn frb(variables: usize, domain: usize, seed: u64) -> Self {
        let alpha = (domain as f64).ln() / (variables as f64).ln();
        let tightness = 0.25;
        let r = alpha / -(1.0f64 - tightness).ln();
        RbParams { variables, domain, tightness, r, seed }
    }
}

/// An independent-set benchmark graph with a planted optimum.
#[derive(Debug, Clone)]
pub struct PlantedGraph {
    pub graph: Graph,
    /// One vertex per variable; an independent set of maximum size.
    pub hidden: Vec<usize>,
}

/// Builds the MIS graph of a forced-satisfiable model RB instance.
///
/// Vertex `v * domain + a` stands for "variable `v` takes value `a`". The
/// values of each variable form a clique, and every incompatible pair of a
/// constraint is an edge. A hidden assignment is drawn first and never made
/// incompatible, so it is an independent set of size `variables`, which is
/// optimal because the cliques partition the vertices.
pub fn rb_graph(p: RbParams) -> Result<PlantedGraph> {
    let (n, d) = (p.variables, p.domain);
    if n < 2 || d < 1 {
        return Err(InstanceError::Invalid("model RB needs at least 2 variables and 1 value".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let hidden_values: Vec<usize> = (0..n).map(|_| rng.random_range(0..d)).collect();
    let constraints = (p.r * n as f64 * (n as f64).ln()).round() as usize;
    let per_constraint = (p.tightness * (d * d) as f64).round() as usize;

    let vertex = |var: usize, val: usize| var * d + val;
    let mut edges = Vec::new();
    for var in 0..n {
        for a in 0..d {
            for b in (a + 1)..d {
                edges.push((vertex(var, a), vertex(var, b)));
            }
        }
    }
    for _ in 0..constraints {
        let pair = sample(&mut rng, n, 2);
        let (x, y) = (pair.index(0), pair.index(1));
        // Every value pair except the hidden one may be declared incompatible.
        let forbidden = hidden_values[x] * d + hidden_values[y];
        let picks = sample(&mut rng, d * d - 1, per_constraint.min(d * d - 1));
        for k in picks.iter() {
            let code = if k >= forbidden { k + 1 } else { k };
            edges.push((vertex(x, code / d), vertex(y, code % d)));
        }
    }
    let mut normalized: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    normalized.sort_unstable();
    normalized.dedup();
    let graph = Graph::new(n * d, normalized)?;
    let hidden = hidden_values.iter().enumerate().map(|(var, &val)| vertex(var, val)).collect();
    Ok(PlantedGraph { graph, hidden })
}

/// Set covering instance whose rows are the 2-colourings of `points` points
/// (both colours used, up to swapping) and whose columns are the 4-point
/// subsets. A subset covers a colouring when it is monochromatic, so a cover
/// is a family of 4-subsets that every 2-colouring leaves monochromatic in
/// at least one member.
///
/// `points = 10` gives 511 rows and 210 columns.
pub fn clr_set_cover(points: usize) -> Result<SetCoverInstance> {
    if !(5..=20).contains(&points) {
        return Err(InstanceError::Invalid(format!("points must be in 5..=20, got {points}")));
    }
    // Fix the colour of the last point to quotient out the swap symmetry.
    let colourings: Vec<u32> = (1u32..(1 << (points - 1))).collect();
    let mut family = Vec::new();
    for a in 0..points {
        for b in (a + 1)..points {
            for c in (b + 1)..points {
                for d in (c + 1)..points {
                    let t = (1u32 << a) | (1 << b) | (1 << c) | (1 << d);
                    let covered: Vec<usize> = colourings
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| {
                            let inside = m & t;
                            inside == 0 || inside == t
                        })
                        .map(|(row, _)| row)
                        .collect();
                    family.push(covered);
                }
            }
        }
    }
    SetCoverInstance::new(colourings.len(), family)
}

/// Classical knapsack instance families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnapsackClass {
    /// Values and weights independent in `1..=range`.
    Uncorrelated,
    /// Value within `range/10` of the weight.
    WeaklyCorrelated,
    /// Value = weight + `range/10`.
    StronglyCorrelated,
    /// Value = weight.
    SubsetSum,
}

impl std::str::FromStr for KnapsackClass {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uncorrelated" => Ok(KnapsackClass::Uncorrelated),
            "weakly" | "weakly-correlated" => Ok(KnapsackClass::WeaklyCorrelated),
            "strongly" | "strongly-correlated" => Ok(KnapsackClass::StronglyCorrelated),
            "subset-sum" => Ok(KnapsackClass::SubsetSum),
            other => Err(InstanceError::Invalid(format!("unknown knapsack class `{other}`"))),
        }
    }
}

/// Integer knapsack instance; the capacity is `capacity_ratio` times the
/// total weight (at least 1).
pub fn random_knapsack(
    n: usize,
    class: KnapsackClass,
    range: u64,
    capacity_ratio: f64,
    seed: u64,
) -> Result<KnapsackInstance> {
    if range < 10 {
        return Err(InstanceError::Invalid("coefficient range must be at least 10".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = range / 10;
    let items: Vec<Item> = (0..n)
        .map(|_| {
            let w = rng.random_range(1..=range);
            let v = match class {
                KnapsackClass::Uncorrelated => rng.random_range(1..=range),
                KnapsackClass::WeaklyCorrelated => {
                    let lo = w.saturating_sub(spread).max(1);
                    rng.random_range(lo..=w + spread)
                }
                KnapsackClass::StronglyCorrelated => w + spread,
                KnapsackClass::SubsetSum => w,
            };
            Item { value: v as f64, weight: w as f64 }
        })
        .collect();
    let total: f64 = items.iter().map(|i| i.weight).sum();
    let capacity = (capacity_ratio * total).floor().max(1.0);
    KnapsackInstance::new(items, capacity)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Random coverable set-cover instance: each subset takes every element with
/// probability `p`, then every uncovered element is added to a random subset.
pub fn random_set_cover(universe: usize, subsets: usize, p: f64, seed: u64) -> Result<SetCoverInstance> {
    if subsets == 0 && universe > 0 {
        return Err(InstanceError::Invalid("need at least one subset".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family: Vec<Vec<usize>> =
        (0..subsets).map(|_| (0..universe).filter(|_| rng.random_bool(p.clamp(0.0, 1.0))).collect()).collect();
    for e in 0..universe {
        if !family.iter().any(|s| s.contains(&e)) {
            let j = rng.random_range(0..subsets);
            family[j].push(e);
        }
    }
    SetCoverInstance::new(universe, family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Distances, Selection};

    #[test]
    fn matrix_is_symmetric_in_range() {
        let m = random_matrix_tsp(20, 1000, 7).unwrap();
        for i in 0..20 {
            for j in 0..20 {
                assert_eq!(m.entry(i, j), m.entry(j, i));
                if i != j {
                    assert!((1..=1000).contains(&m.entry(i, j)));
                }
            }
        }
        assert_eq!(random_matrix_tsp(20, 1000, 7).unwrap(), m);
        assert_ne!(random_matrix_tsp(20, 1000, 8).unwrap(), m);
        assert_eq!(random_euclidean_tsp(10, 100, 1).unwrap().n(), 10);
    }

    #[test]
    fn rb_hidden_set_is_independent_and_maximum_size() {
        let p = rb_graph(RbParams::frb(8, 4, 3)).unwrap();
        assert_eq!(p.graph.vertex_count(), 32);
        assert_eq!(p.hidden.len(), 8);
        let sel = Selection::from_indices(32, p.hidden.iter().copied());
        assert!(p.graph.is_independent_set(&sel).unwrap());
        // Each variable's values form a clique.
        for a in 0..4 {
            for b in (a + 1)..4 {
                assert!(p.graph.has_edge(a, b));
            }
        }
    }

    #[test]
    fn frb30_15_shape() {
        let p = rb_graph(RbParams::frb(30, 15, 1)).unwrap();
        assert_eq!(p.graph.vertex_count(), 450);
        // Published frb30-15 graphs have 17,827 edges; the generator lands
        // in the same range.
        let m = p.graph.edge_count();
        assert!((16_000..20_000).contains(&m), "{m} edges");
    }

    #[test]
    fn clr10_shape() {
        let s = clr_set_cover(10).unwrap();
        assert_eq!(s.universe_size(), 511);
        assert_eq!(s.subset_count(), 210);
        // The other six points are free, minus the single-colour case.
        assert!(s.family().iter().all(|f| f.len() == 63));
    }

    #[test]
    fn knapsack_classes() {
        let k = random_knapsack(50, KnapsackClass::StronglyCorrelated, 1000, 0.5, 9).unwrap();
        assert!(k.items().iter().all(|i| i.value == i.weight + 100.0));
        let k = random_knapsack(50, KnapsackClass::SubsetSum, 1000, 0.5, 9).unwrap();
        assert!(k.items().iter().all(|i| i.value == i.weight));
        let total: f64 = k.items().iter().map(|i| i.weight).sum();
        assert_eq!(k.capacity(), (total * 0.5).floor());
    }

    #[test]
    fn random_set_cover_is_coverable() {
        for seed in 0..20 {
            let s = random_set_cover(15, 6, 0.2, seed).unwrap();
            assert!(s.covers_universe(&Selection::full(6)).unwrap());
        }
    }
}
