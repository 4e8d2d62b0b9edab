//! Strong ℓ-connectivity of the oriented line graph.
//!
//! The length of a non-backtracking walk from arc `a` to its reverse counts
//! the edges traversed strictly between `a` and `ā`, i.e. the closed walk
//! that leaves `head(a)` and returns to it. It is one less than the number
//! of OLG steps from `a` to `ā`; on a triangle it is 3.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use super::HashimotoMatrix;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OlgConnectivity {
    pub ell: usize,
    pub holds: bool,
    /// Per arc: shortest walk length to the reverse arc, `None` if it
    /// exceeds `ell`.
    pub witness: Vec<Option<usize>>,
}

fn return_length(h: &HashimotoMatrix, a: usize, cap: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) -> Option<usize> {
    let target = h.arcs().reverse(a);
    let max_steps = cap + 1;
    let mut touched = vec![a];
    dist[a] = 0;
    queue.clear();
    queue.push_back(a);
    let mut found = None;
    'bfs: while let Some(b) = queue.pop_front() {
        let db = dist[b];
        if db == max_steps {
            continue;
        }
        for &c in h.row(b) {
            if dist[c] == usize::MAX {
                dist[c] = db + 1;
                touched.push(c);
                if c == target {
                    found = Some(db);
                    break 'bfs;
                }
                queue.push_back(c);
            }
        }
    }
    for t in touched {
        dist[t] = usize::MAX;
    }
    found
}

/// Shortest return length for every arc, searching up to `cap`.
pub fn shortest_return_lengths(h: &HashimotoMatrix, cap: usize) -> Vec<Option<usize>> {
    let n = h.dimension();
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![usize::MAX; n], VecDeque::new()),
            |(dist, queue), a| return_length(h, a, cap, dist, queue),
        )
        .collect()
}

/// Holds iff every arc reaches its reverse by a walk of length at most `ell`.
pub fn strong_ell_connected(h: &HashimotoMatrix, ell: usize) -> OlgConnectivity {
    assert!(ell >= 1, "ell must be >= 1");
    let witness = shortest_return_lengths(h, ell);
    let holds = !witness.is_empty() && witness.iter().all(Option::is_some);
    OlgConnectivity {
        ell,
        holds,
        witness,
    }
}

/// Smallest `ell <= ell_max` for which strong ℓ-connectivity holds.
pub fn smallest_certifying_ell(h: &HashimotoMatrix, ell_max: usize) -> Option<usize> {
    if h.dimension() == 0 {
        return None;
    }
    shortest_return_lengths(h, ell_max)
        .into_iter()
        .try_fold(0, |acc, len| len.map(|l| acc.max(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, Graph};
    use crate::nonbacktracking::hashimoto;

    #[test]
    fn cycle_never_returns() {
        for n in 3..9 {
            let h = hashimoto(&generate(&Family::Cycle { n }).unwrap());
            let r = strong_ell_connected(&h, 2 * n);
            assert!(!r.holds);
            assert!(r.witness.iter().all(Option::is_none));
        }
    }

    #[test]
    fn complete4_via_triangle() {
        let h = hashimoto(&generate(&Family::Complete { n: 4 }).unwrap());
        assert!(!strong_ell_connected(&h, 2).holds);
        let r = strong_ell_connected(&h, 3);
        assert!(r.holds);
        assert!(r.witness.iter().all(|&w| w == Some(3)));
        assert_eq!(smallest_certifying_ell(&h, 10), Some(3));
    }

    #[test]
    fn petersen_via_pentagon() {
        let h = hashimoto(&generate(&Family::Petersen).unwrap());
        assert!(!strong_ell_connected(&h, 4).holds);
        assert!(strong_ell_connected(&h, 5).holds);
        assert_eq!(smallest_certifying_ell(&h, 10), Some(5));
    }

    #[test]
    fn pendant_edge_returns_through_cycle() {
        // triangle 0-1-2 with pendant 2-3: arc 3->2 goes round and comes back
        let g = Graph::from_edges(0, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let h = hashimoto(&g);
        let a = h.arcs().find(3, 2).unwrap();
        assert_eq!(shortest_return_lengths(&h, 10)[a], Some(3));
        // but 2->3 dead-ends at the leaf
        assert_eq!(smallest_certifying_ell(&h, 10), None);
    }
}
