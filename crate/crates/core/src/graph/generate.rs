use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::sequence::{lattice_rule, BallSource};
use super::{Graph, GraphError, Provenance};

/// Pairing attempts before `random_regular` gives up.
const MAX_PAIRING_ATTEMPTS: u64 = 100_000;

/// Deterministic graph families.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Root with `d` children, every other internal vertex with `d - 1`
    /// children, `depth` generations below the root.
    Tree { d: usize, depth: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// Induced subgraph of the square lattice on `|x| + |y| <= radius`.
    GridBall { radius: usize },
    RandomRegular { n: usize, d: usize, seed: u64 },
    Petersen,
}

pub fn generate(family: &Family) -> Result<Graph, GraphError> {
    let g = match *family {
        Family::Tree { d, depth } => tree(d, depth)?,
        Family::Cycle { n } => cycle(n)?,
        Family::Complete { n } => complete(n)?,
        Family::GridBall { radius } => lattice_rule(2)
            .ball(radius)
            .expect("lattice rule is symmetric")
            .graph,
        Family::RandomRegular { n, d, seed } => random_regular(n, d, seed)?,
        Family::Petersen => petersen(),
    };
    Ok(g.with_provenance(Provenance::Generated(family.clone())))
}

fn infeasible(msg: impl Into<String>) -> GraphError {
    GraphError::InfeasibleParameters(msg.into())
}

fn tree(d: usize, depth: usize) -> Result<Graph, GraphError> {
    if d < 2 {
        return Err(infeasible(format!("tree needs d >= 2, got {d}")));
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![0usize];
    for generation in 0..depth {
        let children = if generation == 0 { d } else { d - 1 };
        let mut next = Vec::with_capacity(frontier.len() * children);
        for &parent in &frontier {
            for _ in 0..children {
                let child = adjacency.len();
                adjacency.push(vec![parent]);
                adjacency[parent].push(child);
                next.push(child);
            }
        }
        frontier = next;
    }
    Ok(Graph::from_adjacency(adjacency, Provenance::EdgeList))
}

fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(infeasible(format!("cycle needs n >= 3, got {n}")));
    }
    let adjacency = (0..n)
        .map(|v| vec![(v + n - 1) % n, (v + 1) % n])
        .collect();
    Ok(Graph::from_adjacency(adjacency, Provenance::EdgeList))
}

fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(infeasible("complete graph needs n >= 1"));
    }
    let adjacency = (0..n)
        .map(|v| (0..n).filter(|&w| w != v).collect())
        .collect();
    Ok(Graph::from_adjacency(adjacency, Provenance::EdgeList))
}

fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, &edges).expect("petersen edges are simple")
}

/// Configuration model: shuffle `n * d` half-edges, pair neighbours, and
/// reject pairings with loops or multi-edges. Attempt `k` draws from stream
/// `k` of the generator keyed on `seed`.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 || d < 2 || d >= n || (n * d) % 2 != 0 {
        return Err(infeasible(format!(
            "random regular graph needs n >= 3, 2 <= d < n and n*d even; got n={n}, d={d}"
        )));
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for attempt in 0..MAX_PAIRING_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        points.sort_unstable();
        points.shuffle(&mut rng);
        let mut adjacency = vec![Vec::with_capacity(d); n];
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adjacency[u].contains(&v) {
                continue 'attempt;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        return Ok(Graph::from_adjacency(adjacency, Provenance::EdgeList));
    }
    Err(infeasible(format!(
        "no simple pairing for n={n}, d={d} within {MAX_PAIRING_ATTEMPTS} attempts"
    )))
}
