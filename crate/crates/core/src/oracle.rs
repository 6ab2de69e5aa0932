//! Brute-force geodesic counting, independent of the matrix algorithm.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::corridor::{build_corridor, Corridor, MU0, PI0};
use crate::counting::{count_minimal_sequences, CountResult};
use crate::invariants::{binary_to_steps, BinaryInvariants, StepSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {dst} is unreachable from {src}")]
    Unreachable { src: usize, dst: usize },
}

/// An undirected graph without loops or parallel edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Self {
        SimpleGraph {
            adjacency: vec![Vec::new(); vertex_count],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, OracleError> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(OracleError::NoSuchVertex(w));
            }
        }
        if u == v {
            return Err(OracleError::Loop(u));
        }
        if self.adjacency[u].contains(&v) {
            return Ok(false);
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        self.edge_count += 1;
        Ok(true)
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u).is_some_and(|a| a.contains(&v))
    }

    /// Each edge once, as `(min, max)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }
}

/// The 1-skeleton of a corridor restricted to tunnel vertices.
#[derive(Debug, Clone)]
pub struct CorridorGraph {
    pub graph: SimpleGraph,
    /// Corridor vertex id to graph vertex id; `None` for `μ₀`.
    pub index: Vec<Option<usize>>,
}

impl CorridorGraph {
    pub fn vertex(&self, corridor_id: usize) -> usize {
        self.index[corridor_id].expect("mu0 is not part of the corridor graph")
    }
}

pub fn corridor_graph(c: &Corridor) -> CorridorGraph {
    let index: Vec<Option<usize>> = (0..c.vertices().len())
        .map(|id| match id {
            MU0 => None,
            id if id > MU0 => Some(id - 1),
            id => Some(id),
        })
        .collect();
    let mut graph = SimpleGraph::new(c.vertices().len() - 1);
    for t in c.triangles() {
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            if let (Some(u), Some(v)) = (index[t[i]], index[t[j]]) {
                graph
                    .add_edge(u, v)
                    .expect("triangles have distinct vertices");
            }
        }
    }
    CorridorGraph { graph, index }
}

/// Breadth-first layers from `src` with the number of shortest paths to each
/// vertex: the count at `v` is the sum over neighbors one layer closer.
/// `None` marks unreachable vertices.
pub fn geodesic_counts_from(g: &SimpleGraph, src: usize) -> Vec<Option<(usize, BigUint)>> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut count: Vec<BigUint> = vec![BigUint::zero(); n];
    if src >= n {
        return vec![None; n];
    }
    dist[src] = Some(0);
    count[src] = BigUint::one();
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            match dist[v] {
                None => {
                    dist[v] = Some(du + 1);
                    count[v] = count[u].clone();
                    queue.push_back(v);
                }
                Some(dv) if dv == du + 1 => {
                    let add = count[u].clone();
                    count[v] += add;
                }
                Some(_) => {}
            }
        }
    }
    dist.into_iter()
        .zip(count)
        .map(|(d, c)| d.map(|d| (d, c)))
        .collect()
}

pub fn geodesic_count(
    g: &SimpleGraph,
    src: usize,
    dst: usize,
) -> Result<(usize, BigUint), OracleError> {
    for v in [src, dst] {
        if v >= g.vertex_count() {
            return Err(OracleError::NoSuchVertex(v));
        }
    }
    geodesic_counts_from(g, src)
        .swap_remove(dst)
        .ok_or(OracleError::Unreachable { src, dst })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCheck {
    pub depth: usize,
    pub lambda: BigUint,
    pub rho: BigUint,
    pub oracle_left: BigUint,
    pub oracle_right: BigUint,
}

impl LevelCheck {
    pub fn agrees(&self) -> bool {
        self.lambda == self.oracle_left && self.rho == self.oracle_right
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub binary: BinaryInvariants,
    pub matrix: (usize, BigUint),
    pub oracle: (usize, BigUint),
    pub levels: Vec<LevelCheck>,
    /// Whether the corridor has exactly `k` ∇-edges, `k` from the run count.
    pub nabla_count_agrees: bool,
}

impl EquivalenceReport {
    pub fn agrees(&self) -> bool {
        self.matrix == self.oracle
            && self.nabla_count_agrees
            && self.levels.iter().all(LevelCheck::agrees)
    }
}

pub fn check_equivalence(b: &BinaryInvariants) -> EquivalenceReport {
    check_equivalence_with(b, count_minimal_sequences)
}

/// As [`check_equivalence`], with the matrix side replaced by `counter`.
pub fn check_equivalence_with(
    b: &BinaryInvariants,
    counter: impl Fn(&StepSequence) -> CountResult,
) -> EquivalenceReport {
    let steps = binary_to_steps(b);
    let result = counter(&steps);
    let corridor = build_corridor(&steps).expect("binary inputs are never simple");
    let cg = corridor_graph(&corridor);
    let counts = geodesic_counts_from(&cg.graph, cg.vertex(PI0));
    let at = |id: usize| {
        counts[cg.vertex(id)]
            .clone()
            .expect("corridors are connected")
    };

    let oracle = at(corridor.tau());
    let levels = corridor
        .nabla_edges()
        .iter()
        .zip(&result.profile)
        .map(|(e, (lambda, rho))| LevelCheck {
            depth: e.depth,
            lambda: lambda.clone(),
            rho: rho.clone(),
            oracle_left: at(e.left).1,
            oracle_right: at(e.right).1,
        })
        .collect();

    EquivalenceReport {
        binary: b.clone(),
        matrix: (result.depth, result.count.clone()),
        oracle,
        levels,
        nabla_count_agrees: corridor.nabla_edges().len() == result.profile.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthVerification {
    pub length: usize,
    pub inputs: u64,
    pub failures: u64,
    /// Smallest failing input in enumeration order.
    pub first_failure: Option<BinaryInvariants>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationSummary {
    pub lengths: Vec<LengthVerification>,
}

impl VerificationSummary {
    pub fn all_agree(&self) -> bool {
        self.lengths.iter().all(|l| l.failures == 0)
    }

    pub fn first_failure(&self) -> Option<&BinaryInvariants> {
        self.lengths.iter().find_map(|l| l.first_failure.as_ref())
    }
}

/// Exhaustive equivalence check over all binary inputs of length `0..=max_length`.
pub fn verify_up_to(max_length: usize) -> VerificationSummary {
    verify_up_to_with(max_length, &count_minimal_sequences)
}

pub fn verify_up_to_with(
    max_length: usize,
    counter: &(dyn Fn(&StepSequence) -> CountResult + Sync),
) -> VerificationSummary {
    let lengths = (0..=max_length)
        .map(|len| {
            let (failures, first) = (0..1u64 << len)
                .into_par_iter()
                .map(|i| {
                    let b = BinaryInvariants::from_index(i, len);
                    if check_equivalence_with(&b, counter).agrees() {
                        (0u64, None)
                    } else {
                        (1, Some(i))
                    }
                })
                .reduce(
                    || (0, None),
                    |(fa, ia), (fb, ib)| {
                        let first = match (ia, ib) {
                            (Some(a), Some(b)) => Some(a.min(b)),
                            (a, b) => a.or(b),
                        };
                        (fa + fb, first)
                    },
                );
            LengthVerification {
                length: len,
                inputs: 1 << len,
                failures,
                first_failure: first.map(|i| BinaryInvariants::from_index(i, len)),
            }
        })
        .collect();
    VerificationSummary { lengths }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{parse_binary, parse_steps};

    fn corridor(s: &str) -> Corridor {
        build_corridor(&parse_steps(s).unwrap()).unwrap()
    }

    #[test]
    fn corridor_graph_of_two_triangles() {
        let cg = corridor_graph(&corridor("DR"));
        assert_eq!(cg.graph.vertex_count(), 3);
        assert_eq!(cg.graph.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(cg.index[MU0], None);

        let cg = corridor_graph(&corridor("DRRRDRDLLLDLDRR"));
        assert_eq!(cg.graph.vertex_count(), 16);
    }

    #[test]
    fn graph_basics() {
        let mut g = SimpleGraph::new(3);
        assert_eq!(g.add_edge(0, 1), Ok(true));
        assert_eq!(g.add_edge(1, 0), Ok(false));
        assert_eq!(g.add_edge(1, 1), Err(OracleError::Loop(1)));
        assert_eq!(g.add_edge(1, 3), Err(OracleError::NoSuchVertex(3)));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn geodesic_count_small_graphs() {
        let mut path = SimpleGraph::new(3);
        path.add_edge(0, 1).unwrap();
        path.add_edge(1, 2).unwrap();
        assert_eq!(geodesic_count(&path, 0, 2), Ok((2, BigUint::one())));

        let mut cycle = SimpleGraph::new(4);
        for i in 0..4 {
            cycle.add_edge(i, (i + 1) % 4).unwrap();
        }
        assert_eq!(geodesic_count(&cycle, 0, 2), Ok((2, BigUint::from(2u32))));

        let split = SimpleGraph::new(2);
        assert_eq!(
            geodesic_count(&split, 0, 1),
            Err(OracleError::Unreachable { src: 0, dst: 1 })
        );
    }

    #[test]
    fn worked_example_through_the_oracle() {
        let c = corridor("DRRRDRDLLLDLDRR");
        let cg = corridor_graph(&c);
        let got = geodesic_count(&cg.graph, cg.vertex(PI0), cg.vertex(c.tau())).unwrap();
        assert_eq!(got, (5, BigUint::from(4u32)));
    }

    #[test]
    fn check_equivalence_examples() {
        let r = check_equivalence(&parse_binary("0011100011100").unwrap());
        assert!(r.agrees());
        assert_eq!(r.oracle, (5, BigUint::from(4u32)));

        let r = check_equivalence(&BinaryInvariants::default());
        assert!(r.agrees());
        assert_eq!(r.oracle, (1, BigUint::one()));
    }

    #[test]
    fn geodesic_counts_are_symmetric_on_corridors() {
        for len in 0..=7 {
            for b in BinaryInvariants::all_of_length(len) {
                let c = build_corridor(&binary_to_steps(&b)).unwrap();
                let cg = corridor_graph(&c);
                let (s, t) = (cg.vertex(PI0), cg.vertex(c.tau()));
                assert_eq!(
                    geodesic_count(&cg.graph, s, t),
                    geodesic_count(&cg.graph, t, s)
                );
            }
        }
    }

    #[test]
    fn consecutive_nabla_edges_share_a_side_edge() {
        for len in 0..=10 {
            for b in BinaryInvariants::all_of_length(len) {
                let c = build_corridor(&binary_to_steps(&b)).unwrap();
                for pair in c.nabla_edges().windows(2) {
                    let (up, down) = (pair[0], pair[1]);
                    assert!(
                        c.has_edge(up.left, down.left) || c.has_edge(up.right, down.right),
                        "{b}"
                    );
                }
            }
        }
    }

    #[test]
    fn faulty_counter_is_detected() {
        let off_by_one = |s: &StepSequence| {
            let mut r = count_minimal_sequences(s);
            if r.count > BigUint::one() {
                r.count += 1u32;
            }
            r
        };
        let summary = verify_up_to_with(4, &off_by_one);
        assert!(!summary.all_agree());
        assert_eq!(summary.first_failure().unwrap().to_string(), "1");
        assert!(verify_up_to(6).all_agree());
    }
}
