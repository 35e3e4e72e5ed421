//! Graph surgeries: edge subdivision, grafting pendant paths, moving edge
//! bundles between vertices, internal-path detection, and the broom
//! parameter reduction used when shrinking dissociation numbers.

use crate::graph::{Graph, GraphError, MAX_ORDER};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("subdivision count must be at least 1")]
    BadSubdivisionCount,
    #[error("resulting order {order} exceeds 64")]
    Overflow { order: usize },
    #[error("grafting needs k >= m >= 0, got k={k}, m={m}")]
    BadGraftLengths { k: usize, m: usize },
    #[error("rewire precondition violated: {0}")]
    RewirePrecondition(String),
    #[error("no reduction rule applies to (s, t) = ({s}, {t})")]
    NoApplicableRule { s: usize, t: usize },
}

/// Replaces the edge `uv` by a path through `k` fresh vertices. The fresh
/// vertices take the highest indices, ordered from the `u` side.
pub fn subdivide(g: &Graph, u: usize, v: usize, k: usize) -> Result<Graph, TransformError> {
    if k < 1 {
        return Err(TransformError::BadSubdivisionCount);
    }
    let order = g.order() + k;
    if order > MAX_ORDER {
        return Err(TransformError::Overflow { order });
    }
    let mut out = g.delete_edge(u, v)?;
    let mut prev = u;
    for _ in 0..k {
        let fresh = out.order();
        out = out.append_vertex(1u64 << prev)?;
        prev = fresh;
    }
    Ok(out.add_edge(prev, v)?)
}

/// Attaches two fresh pendant paths, of `k` and `m` vertices, to `v`
/// (`k >= m >= 0`). The `k`-path takes the lower fresh indices.
pub fn graft_paths(g: &Graph, v: usize, k: usize, m: usize) -> Result<Graph, TransformError> {
    if k < m {
        return Err(TransformError::BadGraftLengths { k, m });
    }
    let order = g.order() + k + m;
    if order > MAX_ORDER {
        return Err(TransformError::Overflow { order });
    }
    if v >= g.order() {
        return Err(TransformError::Graph(GraphError::IndexOutOfRange {
            v,
            order: g.order(),
        }));
    }
    let mut out = g.clone();
    for len in [k, m] {
        let mut prev = v;
        for _ in 0..len {
            let fresh = out.order();
            out = out.append_vertex(1u64 << prev)?;
            prev = fresh;
        }
    }
    Ok(out)
}

/// Moves the edges between `v` and `moved` over to `u`: deletes `v-x` and
/// adds `u-x` for every `x` in `moved`. Requires `moved` to be a subset of
/// `N(v) \ N(u)` not containing `u`.
pub fn rewire(g: &Graph, u: usize, v: usize, moved: u64) -> Result<Graph, TransformError> {
    let pre = |msg: &str| TransformError::RewirePrecondition(msg.to_string());
    if u == v {
        return Err(pre("u and v must differ"));
    }
    if u >= g.order() || v >= g.order() || moved & !g.vertex_mask() != 0 {
        return Err(pre("vertex out of range"));
    }
    if moved & (1u64 << u) != 0 {
        return Err(pre("u must not be moved"));
    }
    if moved & !g.neighbors(v) != 0 {
        return Err(pre("moved set must consist of neighbours of v"));
    }
    if moved & g.neighbors(u) != 0 {
        return Err(pre("moved set must avoid neighbours of u"));
    }
    let mut out = g.clone();
    let mut rest = moved;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out = out.delete_edge(v, x)?.add_edge(u, x)?;
    }
    Ok(out)
}

/// A maximal path whose endpoints have degree at least 3 and whose
/// interior vertices have degree exactly 2. The endpoints may coincide
/// (a cycle hanging from a single branch vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalPath {
    pub vertices: Vec<usize>,
}

impl InternalPath {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn is_closed(&self) -> bool {
        let (a, b) = self.endpoints();
        a == b
    }

    /// Consecutive vertex pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// All maximal internal paths of `g`, each reported once: open paths with
/// the smaller endpoint first, closed paths starting at their branch
/// vertex with the smaller-indexed neighbour first.
pub fn internal_paths(g: &Graph) -> Vec<InternalPath> {
    let mut out = Vec::new();
    let branch = g.branch_vertices();
    let mut bs = branch;
    while bs != 0 {
        let b = bs.trailing_zeros() as usize;
        bs &= bs - 1;
        let mut nbrs = g.neighbors(b);
        while nbrs != 0 {
            let x = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            let mut path = vec![b, x];
            let mut prev = b;
            let mut cur = x;
            while g.degree(cur) == 2 {
                let next = (g.neighbors(cur) & !(1u64 << prev)).trailing_zeros() as usize;
                prev = cur;
                cur = next;
                path.push(cur);
            }
            if g.degree(cur) < 3 {
                continue; // pendant chain, not internal
            }
            let last = *path.last().unwrap();
            let keep = if path[0] == last {
                path[1] < path[path.len() - 2]
            } else {
                path[0] < last
            };
            if keep {
                debug_assert!(path.windows(2).all(|w| g.has_edge(w[0], w[1])));
                out.push(InternalPath { vertices: path });
            }
        }
    }
    out
}

/// One step of the broom parameter reduction at fixed order: converts
/// `(s, t)` to `(1, t-2)` when `s = 0`, to `(0, t-1)` when `s = 1`, and to
/// `(s-2, t+1)` otherwise.
pub fn bst_reduce(n: usize, s: usize, t: usize) -> Result<(usize, usize, usize), TransformError> {
    if s + 2 * t < 2 {
        return Err(TransformError::NoApplicableRule { s, t });
    }
    let (s2, t2) = match s {
        0 if t >= 2 => (1, t - 2),
        0 => return Err(TransformError::NoApplicableRule { s, t }),
        1 if t >= 1 => (0, t - 1),
        1 => return Err(TransformError::NoApplicableRule { s, t }),
        _ => (s - 2, t + 1),
    };
    Ok((n, s2, t2))
}
