//! The corridor of a tunnel: the strip of triangles whose barycenters lie on
//! the principal path, with vertex depths, sides and ∇-edges.
//!
//! The strip is drawn with the edge `(μ₀, π₀)` on top, `μ₀` on the left.
//! Triangle `Σ_0 = (μ₀, π₀, w₁)` comes from step 0; every later step adds one
//! triangle and one vertex. The traveler's turn `t_i` decides through which
//! edge the path leaves the triangle that created `w_i`: a left turn pivots
//! on the right endpoint and puts `w_i` on the left side, a right turn pivots
//! on the left endpoint and puts `w_i` on the right side. The last vertex `τ`
//! lands opposite its predecessor, so the bottom edge is `(τ_{n-1}, τ_n)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::invariants::{
    parse_steps, run_decomposition, steps_to_turns, ParseError, SimpleTunnel, Step, StepSequence,
    Turn,
};

pub const PI0: usize = 0;
pub const MU0: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Where `τ` sits relative to the last ∇-edge, plus the two degenerate cases
/// reported by the counting algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disposition {
    LeftEndpoint,
    RightEndpoint,
    /// `τ` and the endpoints of the last ∇-edge span a triangle.
    SpansBelow,
    /// A single run with no trailing `D`: `τ` is adjacent to `π₀`.
    Depth1Special,
    /// The step sequence `D`.
    SimpleTunnel,
}

impl Disposition {
    pub fn as_str(self) -> &'static str {
        match self {
            Disposition::LeftEndpoint => "left_endpoint",
            Disposition::RightEndpoint => "right_endpoint",
            Disposition::SpansBelow => "spans_below",
            Disposition::Depth1Special => "depth1_special",
            Disposition::SimpleTunnel => "simple_tunnel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorridorVertex {
    pub id: usize,
    /// `None` for `μ₀`, which is not a tunnel.
    pub depth: Option<usize>,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NablaEdge {
    pub depth: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corridor {
    steps: StepSequence,
    vertices: Vec<CorridorVertex>,
    triangles: Vec<[usize; 3]>,
    cross_edges: Vec<(usize, usize)>,
    nabla_edges: Vec<NablaEdge>,
    tau: usize,
    disposition: Disposition,
}

/// `π₀`, `μ₀`, then `w1, w2, ...` in creation order.
pub fn vertex_label(id: usize) -> String {
    match id {
        PI0 => "pi0".to_string(),
        MU0 => "mu0".to_string(),
        _ => format!("w{}", id - 1),
    }
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

pub fn build_corridor(s: &StepSequence) -> Result<Corridor, SimpleTunnel> {
    let turns = steps_to_turns(s)?;
    let n = s.len();
    debug_assert_eq!(turns.len(), n - 1);

    let mut sides = vec![Side::Right, Side::Left];
    let mut triangles = Vec::with_capacity(n);
    let mut cross_edges = Vec::with_capacity(n);
    let (mut left, mut right) = (MU0, PI0);
    cross_edges.push((left, right));

    for i in 0..n {
        let v = 2 + i;
        triangles.push([left, right, v]);
        match turns.turns().get(i) {
            Some(Turn::Left) => {
                sides.push(Side::Left);
                left = v;
                cross_edges.push((left, right));
            }
            Some(Turn::Right) => {
                sides.push(Side::Right);
                right = v;
                cross_edges.push((left, right));
            }
            None => {
                let side = if left == v - 1 {
                    Side::Right
                } else {
                    Side::Left
                };
                sides.push(side);
            }
        }
    }
    let tau = n + 1;

    let edges = edge_set(&triangles);
    let depths = bfs_depths(sides.len(), &edges);
    let vertices: Vec<CorridorVertex> = sides
        .iter()
        .enumerate()
        .map(|(id, &side)| CorridorVertex {
            id,
            depth: depths[id],
            side,
        })
        .collect();

    let disposition = match s.last() {
        Step::Down => Disposition::SpansBelow,
        Step::Left => Disposition::LeftEndpoint,
        Step::Right => Disposition::RightEndpoint,
    };
    let nabla_edges = find_nabla_edges(&vertices, &edges);

    Ok(Corridor {
        steps: s.clone(),
        vertices,
        triangles,
        cross_edges,
        nabla_edges,
        tau,
        disposition,
    })
}

fn edge_set(triangles: &[[usize; 3]]) -> BTreeSet<(usize, usize)> {
    triangles
        .iter()
        .flat_map(|&[a, b, c]| [edge_key(a, b), edge_key(b, c), edge_key(a, c)])
        .collect()
}

/// Breadth-first distance from `π₀`, never entering `μ₀`.
fn bfs_depths(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Option<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != MU0 && v != MU0 {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut depth = vec![None; n];
    depth[PI0] = Some(0);
    let mut queue = VecDeque::from([PI0]);
    while let Some(u) = queue.pop_front() {
        let du = depth[u].unwrap();
        for &v in &adj[u] {
            if depth[v].is_none() {
                depth[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    depth
}

fn find_nabla_edges(
    vertices: &[CorridorVertex],
    edges: &BTreeSet<(usize, usize)>,
) -> Vec<NablaEdge> {
    let chain = |side: Side| -> Vec<&CorridorVertex> {
        vertices
            .iter()
            .filter(|v| v.side == side && v.id != MU0)
            .collect()
    };
    let left = chain(Side::Left);
    let right = chain(Side::Right);
    let max_depth = vertices.iter().filter_map(|v| v.depth).max().unwrap_or(0);

    // the last vertex of depth d on a side, provided nothing after it is shallower
    let endpoint = |chain: &[&CorridorVertex], d: usize| -> Option<usize> {
        let pos = chain.iter().rposition(|v| v.depth == Some(d))?;
        chain[pos + 1..]
            .iter()
            .all(|v| v.depth.is_some_and(|e| e > d))
            .then_some(chain[pos].id)
    };

    (1..=max_depth)
        .filter_map(|d| {
            let l = endpoint(&left, d)?;
            let r = endpoint(&right, d)?;
            edges.contains(&edge_key(l, r)).then_some(NablaEdge {
                depth: d,
                left: l,
                right: r,
            })
        })
        .collect()
}

impl Corridor {
    pub fn steps(&self) -> &StepSequence {
        &self.steps
    }

    pub fn vertices(&self) -> &[CorridorVertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &CorridorVertex {
        &self.vertices[id]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// The top edge followed by the edges shared by consecutive triangles,
    /// each as `(left, right)`.
    pub fn cross_edges(&self) -> &[(usize, usize)] {
        &self.cross_edges
    }

    /// The bottom edge `(τ_{n-1}, τ)`, as `(left, right)`.
    pub fn bottom_edge(&self) -> (usize, usize) {
        let prev = self.tau - 1;
        match self.vertices[self.tau].side {
            Side::Left => (self.tau, prev),
            Side::Right => (prev, self.tau),
        }
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn tau_depth(&self) -> usize {
        self.vertices[self.tau]
            .depth
            .expect("tau is a tunnel vertex")
    }

    pub fn disposition(&self) -> Disposition {
        self.disposition
    }

    /// Every edge of every triangle, each once, as `(min, max)`.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        edge_set(&self.triangles)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.triangles
            .iter()
            .any(|t| t.contains(&u) && t.contains(&v) && u != v)
    }

    /// Vertex ids of one side, top to bottom.
    pub fn side_chain(&self, side: Side) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|v| v.side == side)
            .map(|v| v.id)
            .collect()
    }

    /// The number of runs of the step sequence.
    pub fn run_count(&self) -> usize {
        run_decomposition(&self.steps).runs.len()
    }

    pub fn nabla_edges(&self) -> &[NablaEdge] {
        &self.nabla_edges
    }

    pub fn nabla(&self, depth: usize) -> Option<&NablaEdge> {
        self.nabla_edges.iter().find(|e| e.depth == depth)
    }

    pub fn to_document(&self) -> CorridorDocument {
        corridor_to_document(self)
    }

    /// Inverse of [`corridor_to_document`].
    pub fn from_document(doc: &CorridorDocument) -> Result<Corridor, ParseError> {
        Ok(Corridor {
            steps: parse_steps(&doc.steps)?,
            vertices: doc
                .vertices
                .iter()
                .map(|v| CorridorVertex {
                    id: v.id,
                    depth: v.depth,
                    side: v.side,
                })
                .collect(),
            triangles: doc.triangles.clone(),
            cross_edges: doc.cross_edges.iter().map(|&[l, r]| (l, r)).collect(),
            nabla_edges: doc.nabla_edges.clone(),
            tau: doc.tau,
            disposition: doc.disposition,
        })
    }
}

/// `(depth, left, right)` in increasing depth order.
pub fn nabla_edges(c: &Corridor) -> Vec<(usize, usize, usize)> {
    c.nabla_edges
        .iter()
        .map(|e| (e.depth, e.left, e.right))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub label: String,
    pub depth: Option<usize>,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorridorDocument {
    pub steps: String,
    pub vertices: Vec<VertexRecord>,
    pub triangles: Vec<[usize; 3]>,
    pub cross_edges: Vec<[usize; 2]>,
    pub nabla_edges: Vec<NablaEdge>,
    pub tau: usize,
    pub disposition: Disposition,
}

pub fn corridor_to_document(c: &Corridor) -> CorridorDocument {
    CorridorDocument {
        steps: c.steps.to_string(),
        vertices: c
            .vertices
            .iter()
            .map(|v| VertexRecord {
                id: v.id,
                label: vertex_label(v.id),
                depth: v.depth,
                side: v.side,
            })
            .collect(),
        triangles: c.triangles.clone(),
        cross_edges: c.cross_edges.iter().map(|&(l, r)| [l, r]).collect(),
        nabla_edges: c.nabla_edges.clone(),
        tau: c.tau,
        disposition: c.disposition,
    }
}

/// Two columns, left and right side, one row per cross edge from the top
/// edge down to the bottom edge. The vertex introduced by the previous
/// triangle is starred; ∇-edges are drawn with `=`.
pub fn render_ascii(c: &Corridor) -> String {
    let cell = |id: usize| match c.vertices[id].depth {
        Some(d) => format!("{} ({})", vertex_label(id), d),
        None => vertex_label(id),
    };
    let mut rows: Vec<(usize, usize)> = c.cross_edges.clone();
    rows.push(c.bottom_edge());

    let mut out = String::new();
    let _ = writeln!(
        out,
        "corridor {}: {} vertices, {} triangles",
        c.steps,
        c.vertices.len(),
        c.triangles.len()
    );
    let tau_note = match c.disposition {
        Disposition::SpansBelow => {
            let last = c.nabla_edges.last().map_or(0, |e| e.depth);
            format!("spans a triangle below nabla({last})")
        }
        Disposition::LeftEndpoint => "left endpoint of the last nabla-edge".to_string(),
        _ => "right endpoint of the last nabla-edge".to_string(),
    };
    let _ = writeln!(
        out,
        "tau = {} at depth {}, {}",
        vertex_label(c.tau),
        c.tau_depth(),
        tau_note
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "   {:<12}         {:<12}", "left", "right");

    let mut prev: Option<(usize, usize)> = None;
    for (l, r) in rows {
        let nabla = c.nabla_edges.iter().find(|e| e.left == l && e.right == r);
        let (lmark, rmark, diag) = match prev {
            Some((pl, _)) if pl != l => ("*", " ", '/'),
            Some((_, pr)) if pr != r => (" ", "*", '\\'),
            _ => (" ", " ", ' '),
        };
        let bar = if nabla.is_some() { "=====" } else { "-----" };
        let tag = nabla.map_or(String::new(), |e| format!("  nabla({})", e.depth));
        let line = format!(
            " {lmark} {:<12} {diag}{bar}{diag} {rmark} {:<12}{tag}",
            cell(l),
            cell(r)
        );
        let _ = writeln!(out, "{}", line.trim_end());
        prev = Some((l, r));
    }
    out
}
