//! Canonical labelling via partition refinement and exhaustive branching.
//!
//! `canonical_form` relabels a graph so that isomorphic graphs map to an
//! identical byte string: two graphs are isomorphic iff their canonical
//! forms are equal. The search refines an ordered partition (1-dimensional
//! Weisfeiler-Leman), branches on the first non-singleton cell, and keeps
//! the lexicographically smallest leaf labelling. Automorphisms discovered
//! from equal leaves prune symmetric branches, so cliques, empty graphs and
//! complete multipartite graphs stay cheap.
//!
//! `is_min_string_labeling` is a separate, slower predicate: whether the
//! identity labelling attains the minimum upper-triangle bit string over
//! *all* permutations. Deleting the last vertex of a min-string labelling
//! leaves a min-string labelling, which is exactly the property orderly
//! enumeration needs; the refinement-based form does not have it.

use crate::graph::{full_mask, Graph};

/// Order-prefixed canonical upper-triangle bit string.
///
/// Byte 0 is the order; the remaining bytes pack the upper triangle of the
/// canonically relabelled adjacency matrix column by column, most
/// significant bit first (the same bit order as graph6).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.bytes[0] as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Rebuilds the canonically labelled graph from the packed bits.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut adj = vec![0u64; n];
        let mut t = 0usize;
        for col in 1..n {
            for row in 0..col {
                let byte = self.bytes[1 + t / 8];
                if (byte >> (7 - t % 8)) & 1 == 1 {
                    adj[row] |= 1u64 << col;
                    adj[col] |= 1u64 << row;
                }
                t += 1;
            }
        }
        Graph::from_rows_unchecked(adj)
    }
}

/// Upper-triangle columns of `g` under the labelling `lab` (`lab[pos]` is
/// the original vertex at canonical position `pos`). Column `j` holds the
/// adjacencies to positions `0..j`, earliest position most significant.
fn column_tuple(g: &Graph, lab: &[u8]) -> Vec<u64> {
    let n = g.order();
    let mut cols = Vec::with_capacity(n.saturating_sub(1));
    for j in 1..n {
        let vj = lab[j] as usize;
        let mut col = 0u64;
        for &vi in &lab[..j] {
            col = (col << 1) | g.has_edge(vi as usize, vj) as u64;
        }
        cols.push(col);
    }
    cols
}

fn pack_form(n: usize, cols: &[u64]) -> CanonicalForm {
    let nbits = n * (n - 1) / 2;
    let mut bytes = vec![0u8; 1 + nbits.div_ceil(8)];
    bytes[0] = n as u8;
    let mut t = 0usize;
    for (j, &col) in cols.iter().enumerate() {
        let width = j + 1;
        for k in (0..width).rev() {
            if (col >> k) & 1 == 1 {
                bytes[1 + t / 8] |= 1 << (7 - t % 8);
            }
            t += 1;
        }
    }
    CanonicalForm { bytes }
}

/// Ordered partition in a flat, copyable layout: `lab` lists the vertices,
/// `end[i]` marks position `i` as the last member of its cell.
#[derive(Clone, Copy)]
struct Part {
    lab: [u8; 64],
    end: [bool; 64],
}

impl Part {
    fn unit(n: usize) -> Part {
        let mut p = Part {
            lab: [0; 64],
            end: [false; 64],
        };
        for v in 0..n {
            p.lab[v] = v as u8;
        }
        p.end[n - 1] = true;
        p
    }
}

struct CanonSearch<'a> {
    g: &'a Graph,
    n: usize,
    best_cols: Vec<u64>,
    best_lab: Vec<u8>,
    have_best: bool,
    /// Automorphism generators found from equal leaves, as vertex maps.
    auts: Vec<[u8; 64]>,
    /// Vertices individualised along the current search path.
    fixed: Vec<u8>,
}

impl<'a> CanonSearch<'a> {
    fn new(g: &'a Graph) -> Self {
        CanonSearch {
            g,
            n: g.order(),
            best_cols: Vec::new(),
            best_lab: Vec::new(),
            have_best: false,
            auts: Vec::new(),
            fixed: Vec::new(),
        }
    }

    /// Equitable refinement: repeatedly split cells by the count vector of
    /// neighbours in every current cell, sub-cells ordered by ascending
    /// count vector. The result depends only on the isomorphism type and
    /// the incoming cell order.
    fn refine(&self, p: &mut Part) {
        let n = self.n;
        let mut masks = [0u64; 64];
        loop {
            // Cell bitmasks for counting.
            let mut ncells = 0usize;
            let mut start = 0usize;
            for i in 0..n {
                masks[ncells] = masks[ncells] | (1u64 << p.lab[i]);
                if p.end[i] {
                    ncells += 1;
                    if ncells < 64 {
                        masks[ncells] = 0;
                    }
                    let _ = start;
                    start = i + 1;
                }
            }
            let mut changed = false;
            let mut i = 0usize;
            while i < n {
                let s = i;
                while !p.end[i] {
                    i += 1;
                }
                let e = i + 1;
                i = e;
                if e - s <= 1 {
                    continue;
                }
                // Key of each member: counts against every cell, in order.
                let mut keyed: Vec<([u8; 64], u8)> = Vec::with_capacity(e - s);
                for &v in &p.lab[s..e] {
                    let mut key = [0u8; 64];
                    let row = self.g.neighbors(v as usize);
                    for (c, key_c) in key.iter_mut().enumerate().take(ncells) {
                        *key_c = (row & masks[c]).count_ones() as u8;
                    }
                    keyed.push((key, v));
                }
                keyed.sort_unstable();
                let uniform = keyed.windows(2).all(|w| w[0].0 == w[1].0);
                for (k, (key, v)) in keyed.iter().enumerate() {
                    p.lab[s + k] = *v;
                    if s + k + 1 < e {
                        p.end[s + k] = *key != keyed[k + 1].0;
                    }
                }
                if !uniform {
                    changed = true;
                }
            }
            if !changed {
                return;
            }
            masks[0] = 0;
        }
    }

    fn dfs(&mut self, mut p: Part) {
        self.refine(&mut p);
        let n = self.n;
        // Length of the leading run of singleton cells.
        let mut k = 0usize;
        while k < n && p.end[k] {
            k += 1;
        }
        if self.have_best && k > 0 {
            let prefix = column_tuple_prefix(self.g, &p.lab[..k]);
            if prefix.as_slice() > &self.best_cols[..prefix.len()] {
                return;
            }
        }
        if k == n {
            let cols = column_tuple(self.g, &p.lab[..n]);
            if !self.have_best || cols < self.best_cols {
                self.best_cols = cols;
                self.best_lab = p.lab[..n].to_vec();
                self.have_best = true;
            } else if cols == self.best_cols {
                // Equal strings witness an automorphism best_lab[i] -> lab[i].
                let mut aut = [0u8; 64];
                for i in 0..n {
                    aut[self.best_lab[i] as usize] = p.lab[i];
                }
                self.auts.push(aut);
            }
            return;
        }
        // First non-singleton cell.
        let s = k;
        let mut e = s;
        while !p.end[e] {
            e += 1;
        }
        e += 1;
        let mut members: Vec<u8> = p.lab[s..e].to_vec();
        members.sort_unstable();
        let mut tried: Vec<u8> = Vec::new();
        for &v in &members {
            if self.prunable(v, &tried, &members) {
                continue;
            }
            // Individualise v: cell becomes [v | rest].
            let mut child = p;
            child.lab[s] = v;
            child.end[s] = true;
            let mut w = s + 1;
            for &m in &members {
                if m != v {
                    child.lab[w] = m;
                    w += 1;
                }
            }
            self.fixed.push(v);
            self.dfs(child);
            self.fixed.pop();
            tried.push(v);
        }
    }

    /// Skips `v` when a known automorphism fixing the individualised path
    /// maps it into the already-tried set: the subtree would repeat work.
    fn prunable(&self, v: u8, tried: &[u8], members: &[u8]) -> bool {
        if tried.is_empty() {
            return false;
        }
        for &u in tried {
            // Interchangeable twins (the transposition is an automorphism).
            let ru = self.g.neighbors(u as usize) & !(1u64 << v);
            let rv = self.g.neighbors(v as usize) & !(1u64 << u);
            if ru == rv {
                return true;
            }
        }
        // Orbit of v under the generators that fix the current path.
        let usable: Vec<&[u8; 64]> = self
            .auts
            .iter()
            .filter(|a| self.fixed.iter().all(|&f| a[f as usize] == f))
            .collect();
        if usable.is_empty() {
            return false;
        }
        let mut orbit = 1u64 << v;
        loop {
            let mut grown = false;
            for a in &usable {
                for &m in members {
                    if orbit & (1u64 << m) != 0 {
                        let img = a[m as usize];
                        if orbit & (1u64 << img) == 0 {
                            orbit |= 1u64 << img;
                            grown = true;
                        }
                    }
                }
            }
            if !grown {
                break;
            }
        }
        tried.iter().any(|&u| orbit & (1u64 << u) != 0)
    }
}

fn column_tuple_prefix(g: &Graph, lab: &[u8]) -> Vec<u64> {
    let mut cols = Vec::with_capacity(lab.len().saturating_sub(1));
    for j in 1..lab.len() {
        let vj = lab[j] as usize;
        let mut col = 0u64;
        for &vi in &lab[..j] {
            col = (col << 1) | g.has_edge(vi as usize, vj) as u64;
        }
        cols.push(col);
    }
    cols
}

/// Canonical form together with the relabelling that produces it
/// (`perm[original] = canonical position`).
pub fn canonical_relabeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.order();
    if n == 1 {
        return (CanonicalForm { bytes: vec![1] }, vec![0]);
    }
    let mut search = CanonSearch::new(g);
    search.dfs(Part::unit(n));
    let form = pack_form(n, &search.best_cols);
    let mut perm = vec![0usize; n];
    for (pos, &v) in search.best_lab.iter().enumerate() {
        perm[v as usize] = pos;
    }
    (form, perm)
}

/// Canonical form: equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_relabeling(g).0
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

/// Whether the identity labelling attains the minimum upper-triangle bit
/// string over all vertex permutations.
pub(crate) fn is_min_string_labeling(g: &Graph) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    let id_lab: Vec<u8> = (0..n as u8).collect();
    let id_cols = column_tuple(g, &id_lab);
    let mut search = MinStringSearch {
        g,
        n,
        id_cols,
        auts: Vec::new(),
        found_better: false,
        placed: Vec::with_capacity(n),
        used: 0,
        col_of: [0u64; 64],
    };
    search.dfs();
    !search.found_better
}

struct MinStringSearch<'a> {
    g: &'a Graph,
    n: usize,
    id_cols: Vec<u64>,
    auts: Vec<[u8; 64]>,
    found_better: bool,
    placed: Vec<u8>,
    used: u64,
    /// Adjacency bits of each vertex to the placed prefix, earliest first.
    col_of: [u64; 64],
}

impl<'a> MinStringSearch<'a> {
    fn dfs(&mut self) {
        let pos = self.placed.len();
        if pos == self.n {
            // Full labelling with a string equal to the identity's: the map
            // position -> placed vertex is an automorphism.
            if self.placed.iter().enumerate().any(|(i, &v)| v as usize != i) {
                let mut aut = [0u8; 64];
                for (i, &v) in self.placed.iter().enumerate() {
                    aut[i] = v;
                }
                self.auts.push(aut);
            }
            return;
        }
        let mut candidates: Vec<(u64, u8)> = Vec::with_capacity(self.n - pos);
        let mut unused = full_mask(self.n) & !self.used;
        while unused != 0 {
            let v = unused.trailing_zeros() as u8;
            unused &= unused - 1;
            candidates.push((self.col_of[v as usize], v));
        }
        candidates.sort_unstable();
        let mut tried: Vec<u8> = Vec::new();
        for (col, v) in candidates {
            if self.found_better {
                return;
            }
            if pos > 0 {
                if col < self.id_cols[pos - 1] {
                    self.found_better = true;
                    return;
                }
                if col > self.id_cols[pos - 1] {
                    continue;
                }
            }
            if self.prunable(v, &tried) {
                continue;
            }
            self.place(v);
            self.dfs();
            self.unplace(v);
            if self.found_better {
                return;
            }
            tried.push(v);
        }
    }

    fn place(&mut self, v: u8) {
        self.placed.push(v);
        self.used |= 1u64 << v;
        let row = self.g.neighbors(v as usize);
        for w in 0..self.n {
            self.col_of[w] = (self.col_of[w] << 1) | ((row >> w) & 1);
        }
    }

    fn unplace(&mut self, v: u8) {
        self.placed.pop();
        self.used &= !(1u64 << v);
        for w in 0..self.n {
            self.col_of[w] >>= 1;
        }
    }

    fn prunable(&self, v: u8, tried: &[u8]) -> bool {
        for &u in tried {
            let ru = self.g.neighbors(u as usize) & !(1u64 << v);
            let rv = self.g.neighbors(v as usize) & !(1u64 << u);
            if ru == rv {
                return true;
            }
        }
        if self.auts.is_empty() {
            return false;
        }
        let usable: Vec<&[u8; 64]> = self
            .auts
            .iter()
            .filter(|a| self.placed.iter().all(|&f| a[f as usize] == f))
            .collect();
        if usable.is_empty() {
            return false;
        }
        let mut orbit = 1u64 << v;
        loop {
            let mut grown = false;
            for a in &usable {
                let mut m = orbit;
                while m != 0 {
                    let x = m.trailing_zeros() as usize;
                    m &= m - 1;
                    let img = a[x];
                    if orbit & (1u64 << img) == 0 {
                        orbit |= 1u64 << img;
                        grown = true;
                    }
                }
            }
            if !grown {
                break;
            }
        }
        tried.iter().any(|&u| orbit & (1u64 << u) != 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn relabelling_is_invariant() {
        let g = path(6).add_edge(0, 3).unwrap();
        let perm = [3usize, 5, 0, 1, 4, 2];
        assert_eq!(canonical_form(&g), canonical_form(&g.permute(&perm)));
    }

    #[test]
    fn p4_and_star_differ() {
        let p4 = path(4);
        let s4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!is_isomorphic(&p4, &s4));
        assert!(is_isomorphic(&p4, &p4.permute(&[2, 0, 3, 1])));
    }

    #[test]
    fn canonical_form_rebuilds_the_graph() {
        let g = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3)]).unwrap();
        let (form, perm) = canonical_relabeling(&g);
        let relabelled = g.permute(&perm);
        assert_eq!(form.to_graph(), relabelled);
        assert_eq!(canonical_form(&relabelled), form);
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        // K8, its complement and K_{4,4} all have huge automorphism groups.
        let mut edges = Vec::new();
        for u in 0..8 {
            for v in (u + 1)..8 {
                edges.push((u, v));
            }
        }
        let k8 = Graph::from_edges(8, &edges).unwrap();
        let empty = Graph::empty(8).unwrap();
        let mut cross = Vec::new();
        for u in 0..4 {
            for v in 4..8 {
                cross.push((u, v));
            }
        }
        let k44 = Graph::from_edges(8, &cross).unwrap();
        for g in [k8, empty, k44] {
            let f = canonical_form(&g);
            assert_eq!(f, canonical_form(&g.permute(&[7, 2, 5, 0, 3, 6, 1, 4])));
        }
    }

    #[test]
    fn min_string_prefix_property() {
        // For every min-string labelled graph, dropping the last vertex
        // keeps the labelling minimal.
        let g = Graph::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4), (0, 1)]).unwrap();
        // Find some min-string labelling by trying all permutations.
        let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
        let mut perm = vec![0usize; 5];
        permute_all(&mut perm, 0, &mut |p| {
            let lab: Vec<u8> = {
                let mut inv = vec![0u8; 5];
                for (orig, &pos) in p.iter().enumerate() {
                    inv[pos] = orig as u8;
                }
                inv
            };
            let cols = column_tuple(&g, &lab);
            if best.as_ref().map_or(true, |(b, _)| cols < *b) {
                best = Some((cols, p.to_vec()));
            }
        });
        let (_, perm) = best.unwrap();
        let h = g.permute(&perm);
        assert!(is_min_string_labeling(&h));
        let parent = h.delete_vertex(4).unwrap();
        assert!(is_min_string_labeling(&parent));
    }

    fn permute_all(perm: &mut Vec<usize>, depth: usize, f: &mut impl FnMut(&[usize])) {
        let n = perm.len();
        if depth == n {
            f(perm);
            return;
        }
        for v in 0..n {
            if perm[..depth].contains(&v) {
                continue;
            }
            perm[depth] = v;
            permute_all(perm, depth + 1, f);
        }
    }

    #[test]
    fn min_string_rejects_non_minimal() {
        // K2 + K1 labelled with the edge first is not minimal.
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(!is_min_string_labeling(&g));
        let h = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert!(is_min_string_labeling(&h));
    }
}
