//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Each vertex's neighbourhood is a single `u64` bitset row, so adjacency
//! tests, degree counts and set operations inside search loops are a few
//! machine instructions. Every mutating operation returns a fresh `Graph`;
//! values can be shared freely between worker threads.

use thiserror::Error;

/// Largest supported order. A neighbour set is one machine word.
pub const MAX_ORDER: usize = 64;

/// Errors from graph construction and editing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {v} out of range for order {order}")]
    IndexOutOfRange { v: usize, order: usize },
    #[error("order {order} outside supported range 1..=64")]
    OrderOutOfRange { order: usize },
    #[error("edge ({u}, {v}) already present")]
    EdgeExists { u: usize, v: usize },
    #[error("edge ({u}, {v}) not present")]
    EdgeMissing { u: usize, v: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("adjacency rows not symmetric at ({u}, {v})")]
    NotSymmetric { u: usize, v: usize },
    #[error("combined order {order} exceeds 64")]
    OrderOverflow { order: usize },
    #[error("vertex set must be a nonempty subset of the graph's vertices")]
    BadVertexSet,
}

/// Bitmask with the lowest `n` bits set.
#[inline(always)]
pub const fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline(always)]
const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Lists the vertices of a bitmask in ascending order.
pub fn mask_vertices(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// An immutable simple graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        if order == 0 || order > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange { order });
        }
        Ok(Graph {
            adj: vec![0u64; order],
        })
    }

    /// Builds a graph from an explicit edge list. Repeated edges are fine.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating the invariants
    /// (symmetry, zero diagonal, no bits beyond the order).
    pub fn from_adj_rows(adj: Vec<u64>) -> Result<Self, GraphError> {
        let order = adj.len();
        if order == 0 || order > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange { order });
        }
        let mask = full_mask(order);
        for (v, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                return Err(GraphError::IndexOutOfRange {
                    v: (row & !mask).trailing_zeros() as usize,
                    order,
                });
            }
            if row & bit(v) != 0 {
                return Err(GraphError::SelfLoop { v });
            }
        }
        for u in 0..order {
            for v in (u + 1)..order {
                if (adj[u] >> v) & 1 != (adj[v] >> u) & 1 {
                    return Err(GraphError::NotSymmetric { u, v });
                }
            }
        }
        Ok(Graph { adj })
    }

    /// Internal constructor for rows already known to be valid.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(Graph::from_adj_rows(adj.clone()).is_ok());
        Graph { adj }
    }

    #[inline(always)]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Bitmask of all vertices.
    #[inline(always)]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.order())
    }

    /// Neighbour set of `v` as a bitmask.
    #[inline(always)]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// All edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            let mut rest = self.adj[u] & !full_mask(u + 1);
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    /// Degree sequence in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Vertices of degree at least 3, as a bitmask.
    pub fn branch_vertices(&self) -> u64 {
        let mut mask = 0u64;
        for v in 0..self.order() {
            if self.degree(v) >= 3 {
                mask |= bit(v);
            }
        }
        mask
    }

    /// Bitmask of the connected component containing `start`.
    pub fn component_of(&self, start: usize) -> u64 {
        let mut visited = bit(start);
        let mut frontier = visited;
        while frontier != 0 {
            let mut reach = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                reach |= self.adj[v];
            }
            frontier = reach & !visited;
            visited |= frontier;
        }
        visited
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertex_mask()
    }

    /// Connected with exactly `order - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edge_count() == self.order() - 1 && self.is_connected()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order() {
            Err(GraphError::IndexOutOfRange {
                v,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    /// Copy with the edge `uv` added. The edge must be absent.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop { v });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists { u, v });
        }
        let mut adj = self.adj.clone();
        adj[u] |= bit(v);
        adj[v] |= bit(u);
        Ok(Graph { adj })
    }

    /// Copy with the edge `uv` removed. The edge must be present.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || !self.has_edge(u, v) {
            return Err(GraphError::EdgeMissing { u, v });
        }
        let mut adj = self.adj.clone();
        adj[u] &= !bit(v);
        adj[v] &= !bit(u);
        Ok(Graph { adj })
    }

    /// Copy with vertex `v` removed; vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        if self.order() == 1 {
            return Err(GraphError::OrderOutOfRange { order: 0 });
        }
        let low = full_mask(v);
        let mut adj = Vec::with_capacity(self.order() - 1);
        for (u, &row) in self.adj.iter().enumerate() {
            if u == v {
                continue;
            }
            adj.push((row & low) | ((row >> 1) & !low));
        }
        Ok(Graph { adj })
    }

    /// Subgraph induced by the vertices of `mask`, reindexed densely in
    /// ascending order of their original labels.
    pub fn induced_subgraph(&self, mask: u64) -> Result<Graph, GraphError> {
        if mask == 0 || mask & !self.vertex_mask() != 0 {
            return Err(GraphError::BadVertexSet);
        }
        let verts = mask_vertices(mask);
        let mut adj = vec![0u64; verts.len()];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    adj[i] |= bit(j);
                    adj[j] |= bit(i);
                }
            }
        }
        Ok(Graph { adj })
    }

    /// Disjoint union; `other`'s vertices are relabelled upwards.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.order();
        let order = n + other.order();
        if order > MAX_ORDER {
            return Err(GraphError::OrderOverflow { order });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&row| row << n));
        Ok(Graph { adj })
    }

    /// Join: disjoint union plus all edges between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.order();
        let mut g = self.disjoint_union(other)?;
        let left = full_mask(n);
        let right = g.vertex_mask() & !left;
        for v in 0..n {
            g.adj[v] |= right;
        }
        for v in n..g.order() {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// Copy with one extra vertex whose neighbour set is `nbrs`.
    pub fn append_vertex(&self, nbrs: u64) -> Result<Graph, GraphError> {
        let order = self.order() + 1;
        if order > MAX_ORDER {
            return Err(GraphError::OrderOverflow { order });
        }
        if nbrs & !self.vertex_mask() != 0 {
            return Err(GraphError::BadVertexSet);
        }
        let mut adj = self.adj.clone();
        let newbit = bit(order - 1);
        let mut rest = nbrs;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            adj[v] |= newbit;
        }
        adj.push(nbrs);
        Ok(Graph { adj })
    }

    /// Relabels vertices: `perm[old] = new`. `perm` must be a permutation
    /// of `0..order`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        debug_assert_eq!(
            {
                let mut seen = 0u64;
                for &p in perm {
                    seen |= bit(p);
                }
                seen
            },
            full_mask(n),
            "not a permutation"
        );
        let mut adj = vec![0u64; n];
        for u in 0..n {
            let mut row = self.adj[u];
            let mut newrow = 0u64;
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                newrow |= bit(perm[v]);
            }
            adj[perm[u]] = newrow;
        }
        Graph { adj }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn construction_validates_invariants() {
        assert_eq!(Graph::empty(0).unwrap_err(), GraphError::OrderOutOfRange { order: 0 });
        assert_eq!(Graph::empty(65).unwrap_err(), GraphError::OrderOutOfRange { order: 65 });
        assert!(matches!(
            Graph::from_adj_rows(vec![0b10, 0b00]).unwrap_err(),
            GraphError::NotSymmetric { .. }
        ));
        assert!(matches!(
            Graph::from_adj_rows(vec![0b01, 0b00]).unwrap_err(),
            GraphError::SelfLoop { v: 0 }
        ));
        assert!(Graph::from_adj_rows(vec![0b10, 0b01]).is_ok());
    }

    #[test]
    fn edit_operations_leave_original_unchanged() {
        let g = path(4);
        let h = g.add_edge(0, 3).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(h.edge_count(), 4);
        assert!(h.has_edge(0, 3));
        let back = h.delete_edge(0, 3).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edit_error_paths() {
        let g = path(3);
        assert_eq!(g.add_edge(0, 1).unwrap_err(), GraphError::EdgeExists { u: 0, v: 1 });
        assert_eq!(g.delete_edge(0, 2).unwrap_err(), GraphError::EdgeMissing { u: 0, v: 2 });
        assert!(matches!(g.add_edge(0, 7), Err(GraphError::IndexOutOfRange { .. })));
        assert_eq!(g.add_edge(1, 1).unwrap_err(), GraphError::SelfLoop { v: 1 });
    }

    #[test]
    fn delete_vertex_reindexes_downward() {
        // C4 minus a vertex is P3 on the remaining, reindexed labels.
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let g = c4.delete_vertex(1).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
        assert!(c4.delete_vertex(4).is_err());
        let k1 = Graph::empty(1).unwrap();
        assert!(k1.delete_vertex(0).is_err());
    }

    #[test]
    fn induced_subgraph_of_clique() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let k5 = Graph::from_edges(5, &edges).unwrap();
        let k3 = k5.induced_subgraph(0b00111).unwrap();
        assert_eq!(k3.order(), 3);
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k5.induced_subgraph(0).unwrap_err(), GraphError::BadVertexSet);
        assert_eq!(k5.induced_subgraph(1 << 5).unwrap_err(), GraphError::BadVertexSet);
    }

    #[test]
    fn union_and_join_counts() {
        let a = path(3);
        let b = path(2);
        let u = a.disjoint_union(&b).unwrap();
        assert_eq!(u.order(), 5);
        assert_eq!(u.edge_count(), 3);
        assert!(!u.is_connected());
        let j = a.join(&b).unwrap();
        assert_eq!(j.edge_count(), 3 + 3 * 2);
        assert!(j.is_connected());
        let k32 = Graph::empty(32).unwrap();
        let k33 = Graph::empty(33).unwrap();
        assert!(matches!(
            k32.join(&k33),
            Err(GraphError::OrderOverflow { order: 65 })
        ));
    }

    #[test]
    fn join_of_single_vertices_is_an_edge() {
        let k1 = Graph::empty(1).unwrap();
        let k2 = k1.join(&k1).unwrap();
        assert_eq!(k2.order(), 2);
        assert!(k2.has_edge(0, 1));
    }

    #[test]
    fn join_k2_with_two_singletons_is_k4_minus_edge() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let two = Graph::empty(2).unwrap();
        let g = k2.join(&two).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edge_count(), 5);
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn connectivity_and_branch_vertices() {
        assert!(path(7).is_connected());
        assert_eq!(path(7).branch_vertices(), 0);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.branch_vertices(), 0b0001);
        assert!(Graph::empty(3).unwrap().component_of(1) == 0b010);
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn permute_is_adjacency_preserving() {
        let g = path(5);
        let perm = [2usize, 0, 4, 1, 3];
        let h = g.permute(&perm);
        for (u, v) in g.edges() {
            assert!(h.has_edge(perm[u], perm[v]));
        }
        assert_eq!(h.edge_count(), g.edge_count());
    }

    #[test]
    fn append_vertex_matches_manual_build() {
        let g = path(3).append_vertex(0b101).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.has_edge(3, 0) && g.has_edge(3, 2) && !g.has_edge(3, 1));
    }
}
