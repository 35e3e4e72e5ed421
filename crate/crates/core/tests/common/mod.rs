//! Shared oracles for the integration suites. Everything here is written
//! independently of the library's own algorithms: classification by
//! explicit permutation orbits, a second graph6 decoder, and seeded
//! random-graph helpers.
//!
//! Not every test binary uses every helper.
#![allow(dead_code)]

use diss_spectra::graph::{full_mask, Graph};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All permutations of 0..n (plain recursion; fine for n <= 8).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

fn edge_index(i: usize, j: usize) -> usize {
    // Column-major upper triangle: (i, j) with i < j sits at j(j-1)/2 + i.
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Graph for an upper-triangle edge mask on `n` vertices.
pub fn graph_of_edge_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> edge_index(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Isomorphism classes of all labelled graphs on `n` vertices, computed by
/// expanding permutation orbits over edge masks. Returns the orbit-minimum
/// mask of every class. Exponential; intended for n <= 7.
pub fn orbit_class_representatives(n: usize) -> Vec<u64> {
    let nbits = n * (n - 1) / 2;
    assert!(nbits <= 21, "oracle supports n <= 7");
    // Each permutation becomes a map of edge-bit positions.
    let perms = permutations(n);
    let edge_maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            (0..nbits)
                .map(|idx| {
                    // Invert edge_index.
                    let mut j = 1;
                    while (j + 1) * j / 2 <= idx {
                        j += 1;
                    }
                    let i = idx - j * (j - 1) / 2;
                    let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                    edge_index(a, b)
                })
                .collect()
        })
        .collect();
    let total = 1usize << nbits;
    let mut visited = vec![false; total];
    let mut reps = Vec::new();
    for mask in 0..total as u64 {
        if visited[mask as usize] {
            continue;
        }
        let mut min = mask;
        for map in &edge_maps {
            let mut img = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                img |= 1u64 << map[b];
            }
            visited[img as usize] = true;
            min = min.min(img);
        }
        reps.push(min);
    }
    reps
}

/// A second graph6 decoder, written by direct index arithmetic rather than
/// a streaming loop.
pub fn decode_graph6_independent(text: &str) -> Option<Graph> {
    let bytes = text.trim_end().as_bytes();
    let (n, data): (usize, &[u8]) = if bytes.first()? == &126 {
        let n = bytes.get(1..4)?.iter().try_fold(0usize, |acc, &b| {
            (63..=126).contains(&b).then(|| (acc << 6) | (b - 63) as usize)
        })?;
        (n, &bytes[4..])
    } else {
        ((bytes[0] as usize).checked_sub(63)?, &bytes[1..])
    };
    if n == 0 || n > 64 {
        return None;
    }
    let nbits = n * (n - 1) / 2;
    if data.len() != nbits.div_ceil(6) {
        return None;
    }
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            let k = edge_index(i, j);
            let byte = *data.get(k / 6)? as usize;
            if !(63..=126).contains(&byte) {
                return None;
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).ok()
}

/// Random graph with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random connected graph: resamples until the draw is connected.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Uniformly random vertex subset of a mask.
pub fn random_subset(rng: &mut ChaCha8Rng, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        if rng.random_bool(0.5) {
            out |= 1u64 << v;
        }
    }
    out
}

/// Random permutation of 0..n.
pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

#[allow(dead_code)]
pub fn all_vertices(n: usize) -> u64 {
    full_mask(n)
}
