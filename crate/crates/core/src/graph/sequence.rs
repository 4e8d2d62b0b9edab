//! Infinite graphs given by a neighbour rule, realised through BFS balls.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use super::{Graph, GraphError, Provenance};

/// A finite truncation together with BFS depths from the root (vertex 0).
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub graph: Graph,
    pub depth: Vec<Option<usize>>,
    pub radius: usize,
}

impl Ball {
    /// Vertices at depth exactly `radius`.
    pub fn boundary(&self) -> impl Iterator<Item = usize> + '_ {
        self.depth
            .iter()
            .enumerate()
            .filter(move |(_, d)| **d == Some(self.radius))
            .map(|(v, _)| v)
    }
}

/// Anything that can hand out the truncation of index `radius`.
pub trait BallSource: Send + Sync {
    fn name(&self) -> String;
    fn ball(&self, radius: usize) -> Result<Ball, GraphError>;
}

type Rule<K> = Arc<dyn Fn(&K) -> Vec<K> + Send + Sync>;

/// A locally finite graph described by a root and a pure neighbour rule.
#[derive(Clone)]
pub struct LocalRuleGraph<K> {
    name: String,
    root: K,
    rule: Rule<K>,
}

impl<K: Debug> Debug for LocalRuleGraph<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LocalRuleGraph")
            .field("name", &self.name)
            .field("root", &self.root)
            .finish_non_exhaustive()
    }
}

impl<K> LocalRuleGraph<K>
where
    K: Clone + Eq + Hash + Debug + Send + Sync,
{
    pub fn new(
        name: impl Into<String>,
        root: K,
        rule: impl Fn(&K) -> Vec<K> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            root,
            rule: Arc::new(rule),
        }
    }

    pub fn root(&self) -> &K {
        &self.root
    }

    pub fn neighbors(&self, key: &K) -> Vec<K> {
        (self.rule)(key)
    }

    /// Induced subgraph on the radius-`radius` BFS ball, re-indexed in BFS
    /// discovery order. Returns the original key of every dense id.
    ///
    /// Every neighbour pair met inside the ball is checked for symmetry.
    pub fn ball_with_keys(&self, radius: usize) -> Result<(Ball, Vec<K>), GraphError> {
        let mut index: HashMap<K, usize> = HashMap::new();
        let mut keys = vec![self.root.clone()];
        let mut depth = vec![Some(0)];
        let mut rule_out: Vec<Vec<K>> = Vec::new();
        index.insert(self.root.clone(), 0);

        let mut head = 0;
        while head < keys.len() {
            let nbrs = (self.rule)(&keys[head]);
            let d = depth[head].unwrap();
            for w in &nbrs {
                if *w == keys[head] {
                    return Err(GraphError::AsymmetricRule {
                        from: format!("{w:?}"),
                        to: format!("{w:?} (self-loop)"),
                    });
                }
                if d < radius {
                    if let Entry::Vacant(slot) = index.entry(w.clone()) {
                        slot.insert(keys.len());
                        keys.push(w.clone());
                        depth.push(Some(d + 1));
                    }
                }
            }
            rule_out.push(nbrs);
            head += 1;
        }

        let mut adjacency = vec![Vec::new(); keys.len()];
        for (v, nbrs) in rule_out.iter().enumerate() {
            for w in nbrs {
                if let Some(&wi) = index.get(w) {
                    if !rule_out[wi].contains(&keys[v]) {
                        return Err(GraphError::AsymmetricRule {
                            from: format!("{:?}", keys[v]),
                            to: format!("{w:?}"),
                        });
                    }
                    adjacency[v].push(wi);
                }
            }
        }
        let labels = keys.iter().map(|k| format!("{k:?}")).collect();
        let graph = Graph::from_adjacency(
            adjacency,
            Provenance::Truncation {
                rule: self.name.clone(),
                radius,
            },
        )
        .with_labels(labels);
        Ok((
            Ball {
                graph,
                depth,
                radius,
            },
            keys,
        ))
    }
}

impl<K> BallSource for LocalRuleGraph<K>
where
    K: Clone + Eq + Hash + Debug + Send + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn ball(&self, radius: usize) -> Result<Ball, GraphError> {
        self.ball_with_keys(radius).map(|(ball, _)| ball)
    }
}

/// The infinite tree in which every vertex has degree `d`. Keys are child
/// index paths from the root.
pub fn regular_tree_rule(d: usize) -> LocalRuleGraph<Vec<u32>> {
    assert!(d >= 2, "regular tree needs d >= 2");
    LocalRuleGraph::new(format!("tree{d}"), Vec::new(), move |path: &Vec<u32>| {
        let children = if path.is_empty() { d } else { d - 1 };
        let mut out = Vec::with_capacity(d);
        if let Some((_, parent)) = path.split_last() {
            out.push(parent.to_vec());
        }
        for c in 0..children as u32 {
            let mut child = path.clone();
            child.push(c);
            out.push(child);
        }
        out
    })
}

/// The hypercubic lattice Z^dim rooted at the origin.
pub fn lattice_rule(dim: usize) -> LocalRuleGraph<Vec<i64>> {
    assert!(dim >= 1);
    LocalRuleGraph::new(format!("z{dim}"), vec![0; dim], move |x: &Vec<i64>| {
        let mut out = Vec::with_capacity(2 * dim);
        for axis in 0..dim {
            for step in [-1, 1] {
                let mut y = x.clone();
                y[axis] += step;
                out.push(y);
            }
        }
        out
    })
}

impl LocalRuleGraph<usize> {
    /// BFS balls of a finite graph around `root`.
    pub fn from_graph(graph: Arc<Graph>, root: usize) -> Self {
        let name = format!("ball-root{root}");
        LocalRuleGraph::new(name, root, move |&v: &usize| graph.neighbors(v).to_vec())
    }
}

/// A caller-supplied list of graphs; index `i` is truncation `i` and depths
/// are BFS distances from `root`.
#[derive(Debug, Clone)]
pub struct ExplicitSequence {
    pub graphs: Vec<Graph>,
    pub root: usize,
}

impl BallSource for ExplicitSequence {
    fn name(&self) -> String {
        "explicit".into()
    }

    fn ball(&self, radius: usize) -> Result<Ball, GraphError> {
        let graph = self
            .graphs
            .get(radius)
            .ok_or(GraphError::UndeclaredRadius { radius })?
            .clone();
        graph.check_vertex(self.root)?;
        let depth = graph.distances_from(self.root);
        Ok(Ball {
            graph,
            depth,
            radius,
        })
    }
}

/// Increasing truncations `G_t` of a source at the declared radii.
pub struct SubgraphSequence {
    source: Box<dyn BallSource>,
    radii: Vec<usize>,
}

impl Debug for SubgraphSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgraphSequence")
            .field("source", &self.source.name())
            .field("radii", &self.radii)
            .finish()
    }
}

impl SubgraphSequence {
    /// `radii` must be strictly increasing.
    pub fn new(source: impl BallSource + 'static, radii: Vec<usize>) -> Self {
        assert!(
            radii.windows(2).all(|w| w[0] < w[1]),
            "truncation radii must be strictly increasing"
        );
        Self {
            source: Box::new(source),
            radii,
        }
    }

    /// Radii `0..=t_max`.
    pub fn up_to(source: impl BallSource + 'static, t_max: usize) -> Self {
        Self::new(source, (0..=t_max).collect())
    }

    /// Presents `g` as the constant sequence `G_t = g` for `t <= t_max`.
    pub fn constant(g: Graph, root: usize, t_max: usize) -> Self {
        let graphs = vec![g; t_max + 1];
        Self::up_to(ExplicitSequence { graphs, root }, t_max)
    }

    pub fn name(&self) -> String {
        self.source.name()
    }

    pub fn radii(&self) -> &[usize] {
        &self.radii
    }

    pub fn truncate(&self, t: usize) -> Result<Ball, GraphError> {
        if self.radii.binary_search(&t).is_err() {
            return Err(GraphError::UndeclaredRadius { radius: t });
        }
        self.source.ball(t)
    }
}
