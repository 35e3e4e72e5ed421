//! Spectral radius and Perron vector of connected graphs.
//!
//! The workhorse is power iteration on A + I (the shift keeps the dominant
//! eigenvalue strictly separated on bipartite graphs) with the Rayleigh
//! quotient as the eigenvalue estimate. A second, independent route goes
//! through the integer characteristic polynomial: Faddeev-LeVerrier in
//! i128 arithmetic and Newton's method from above, which converges
//! monotonically because adjacency spectra are real.

use crate::graph::Graph;
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-10;
/// Tighter tolerance for separating spectral radii near 2.
pub const SMITH_TOL: f64 = 1e-12;
/// Gap under which two spectral radii are treated as a tie.
pub const TIE_GAP: f64 = 1e-8;

const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("tolerance must be positive")]
    BadTolerance,
}

/// Spectral radius, Perron vector and convergence metadata.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub rho: f64,
    perron: Vec<f64>,
    pub iterations: usize,
    /// Final `max_i |(A x)_i - rho x_i|`.
    pub residual: f64,
}

impl SpectralResult {
    /// The unit-norm positive eigenvector.
    pub fn perron(&self) -> &[f64] {
        &self.perron
    }

    /// Perron component at `v`. Panics if `v` is out of range.
    pub fn perron_component(&self, v: usize) -> f64 {
        assert!(
            v < self.perron.len(),
            "vertex {v} out of range for order {}",
            self.perron.len()
        );
        self.perron[v]
    }
}

/// Adjacency access used by the iteration, so callers with more than 64
/// vertices (large structured families) can reuse the same engine.
trait Adjacency {
    fn order(&self) -> usize;
    fn matvec(&self, x: &[f64], y: &mut [f64]);
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        Graph::order(self)
    }

    fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (v, out) in y.iter_mut().enumerate() {
            let mut row = self.neighbors(v);
            let mut sum = 0.0;
            while row != 0 {
                let u = row.trailing_zeros() as usize;
                row &= row - 1;
                sum += x[u];
            }
            *out = sum;
        }
    }
}

struct ListAdjacency<'a>(&'a [Vec<u32>]);

impl Adjacency for ListAdjacency<'_> {
    fn order(&self) -> usize {
        self.0.len()
    }

    fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (v, out) in y.iter_mut().enumerate() {
            *out = self.0[v].iter().map(|&u| x[u as usize]).sum();
        }
    }
}

fn power_iteration<A: Adjacency>(a: &A, tol: f64) -> Result<SpectralResult, SpectralError> {
    if tol <= 0.0 {
        return Err(SpectralError::BadTolerance);
    }
    let n = a.order();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    for it in 1..=MAX_ITERATIONS {
        a.matvec(&x, &mut y);
        // x is unit, so the Rayleigh quotient is just <x, Ax>.
        let rho: f64 = x.iter().zip(&y).map(|(xi, yi)| xi * yi).sum();
        let residual = x
            .iter()
            .zip(&y)
            .map(|(xi, yi)| (yi - rho * xi).abs())
            .fold(0.0f64, f64::max);
        if residual <= tol {
            return Ok(SpectralResult {
                rho,
                perron: x,
                iterations: it,
                residual,
            });
        }
        // Shifted update: z = (A + I) x, normalised.
        let mut norm = 0.0;
        for (zi, xi) in y.iter_mut().zip(&x) {
            *zi += xi;
            norm += *zi * *zi;
        }
        let norm = norm.sqrt();
        for (xi, zi) in x.iter_mut().zip(&y) {
            *xi = zi / norm;
        }
    }
    Err(SpectralError::NoConvergence(MAX_ITERATIONS))
}

/// Spectral radius and Perron vector of a connected graph.
///
/// Deterministic for a given `(g, tol)`: fixed all-ones start vector and a
/// fixed update order.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult, SpectralError> {
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    power_iteration(g, tol)
}

/// Same engine over plain neighbour lists (no 64-vertex cap). The lists
/// must describe a connected symmetric adjacency structure.
pub fn spectral_radius_of_lists(adj: &[Vec<u32>], tol: f64) -> Result<SpectralResult, SpectralError> {
    let n = adj.len();
    // Connectivity check by traversal.
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u as usize] {
                seen[u as usize] = true;
                count += 1;
                stack.push(u as usize);
            }
        }
    }
    if count != n {
        return Err(SpectralError::Disconnected);
    }
    power_iteration(&ListAdjacency(adj), tol)
}

/// Integer characteristic polynomial of the adjacency matrix, leading
/// coefficient first: `p(x) = c[0] x^n + c[1] x^(n-1) + ... + c[n]`.
///
/// Faddeev-LeVerrier; every division is exact. i128 intermediates are
/// comfortably large for the supported order range.
pub fn charpoly(g: &Graph) -> Vec<i128> {
    let n = g.order();
    let a: Vec<Vec<i128>> = (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v) as i128).collect())
        .collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[0] = 1;
    // m starts as A; at step k, c_k = -tr(m)/k and m <- A (m + c_k I).
    let mut m = a.clone();
    for k in 1..=n {
        let tr: i128 = (0..n).map(|i| m[i][i]).sum();
        let c = -tr / k as i128;
        debug_assert_eq!(-tr % k as i128, 0, "Faddeev-LeVerrier division not exact");
        coeffs[k] = c;
        if k == n {
            break;
        }
        for i in 0..n {
            m[i][i] += c;
        }
        let mut next = vec![vec![0i128; n]; n];
        for (i, next_row) in next.iter_mut().enumerate() {
            for (j, cell) in next_row.iter_mut().enumerate() {
                let mut s = 0i128;
                for (l, m_row) in m.iter().enumerate() {
                    if a[i][l] != 0 {
                        s += m_row[j];
                    }
                }
                *cell = s;
            }
        }
        m = next;
    }
    coeffs
}

fn poly_eval(coeffs: &[i128], x: f64) -> (f64, f64) {
    // Horner for p and p' simultaneously.
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c as f64;
    }
    (p, dp)
}

/// Largest root of the characteristic polynomial, by Newton's method from
/// above. All roots are real (the matrix is symmetric), so the iteration
/// decreases monotonically to the largest one.
pub fn charpoly_largest_root(g: &Graph) -> f64 {
    let coeffs = charpoly(g);
    let mut x = g.order() as f64;
    for _ in 0..200 {
        let (p, dp) = poly_eval(&coeffs, x);
        if dp <= 0.0 {
            break;
        }
        let step = p / dp;
        x -= step;
        if step.abs() < 1e-13 {
            break;
        }
    }
    x
}

/// Whether two graphs have identical integer characteristic polynomials
/// (cospectral adjacency matrices).
pub fn cospectral(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && charpoly(a) == charpoly(b)
}

/// `x^6 - (2r+7) x^4 + (r+3)(r+4) x^2 - 1`.
pub fn charpoly_rho1(rho: f64, r: u32) -> f64 {
    let r = r as f64;
    let x2 = rho * rho;
    ((x2 - (2.0 * r + 7.0)) * x2 + (r + 3.0) * (r + 4.0)) * x2 - 1.0
}

/// `x^4 - (r+4) x^2 - x + 1`.
pub fn charpoly_rho2(rho: f64, r: u32) -> f64 {
    let r = r as f64;
    let x2 = rho * rho;
    x2 * x2 - (r + 4.0) * x2 - rho + 1.0
}

/// Which of the two fixed characteristic equations to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharpolyKind {
    Rho1,
    Rho2,
}

/// The unique root exceeding `sqrt(r+4)`, by bisection to 1e-12. Both
/// polynomials are negative at `sqrt(r+4)` and increasing beyond it.
pub fn solve_charpoly(which: CharpolyKind, r: u32) -> f64 {
    let f = |x: f64| match which {
        CharpolyKind::Rho1 => charpoly_rho1(x, r),
        CharpolyKind::Rho2 => charpoly_rho2(x, r),
    };
    let mut lo = ((r + 4) as f64).sqrt();
    debug_assert!(f(lo) < 0.0);
    let mut hi = lo + 1.0;
    while f(hi) <= 0.0 {
        hi += 1.0;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use std::f64::consts::PI;

    #[test]
    fn rejects_disconnected_and_bad_tolerance() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(spectral_radius(&g, 1e-10).unwrap_err(), SpectralError::Disconnected);
        let p2 = families::path(2).unwrap();
        assert_eq!(
            spectral_radius(&p2, 0.0).unwrap_err(),
            SpectralError::BadTolerance
        );
    }

    #[test]
    fn paths_match_the_cosine_formula() {
        for n in 2..=12 {
            let g = families::path(n).unwrap();
            let r = spectral_radius(&g, 1e-12).unwrap();
            let expected = 2.0 * (PI / (n as f64 + 1.0)).cos();
            assert!((r.rho - expected).abs() <= 1e-9, "n={n}: {} vs {expected}", r.rho);
            assert!(r.residual <= 1e-12);
        }
    }

    #[test]
    fn single_vertex_and_single_edge() {
        let k1 = Graph::empty(1).unwrap();
        let r = spectral_radius(&k1, 1e-10).unwrap();
        assert_eq!(r.rho, 0.0);
        let k2 = families::path(2).unwrap();
        let r = spectral_radius(&k2, 1e-10).unwrap();
        assert!((r.rho - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn perron_vector_is_positive_unit_and_symmetric_on_cliques() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let k5 = Graph::from_edges(5, &edges).unwrap();
        let r = spectral_radius(&k5, 1e-12).unwrap();
        assert!((r.rho - 4.0).abs() <= 1e-9);
        let expected = 1.0 / 5.0f64.sqrt();
        for v in 0..5 {
            assert!((r.perron_component(v) - expected).abs() <= 1e-8);
        }
    }

    #[test]
    fn star_center_dominates_leaves() {
        let s4 = families::star(4).unwrap();
        let r = spectral_radius(&s4, 1e-12).unwrap();
        for leaf in 1..4 {
            assert!(r.perron_component(0) > r.perron_component(leaf));
        }
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn perron_component_rejects_bad_index() {
        let g = families::path(3).unwrap();
        let r = spectral_radius(&g, 1e-10).unwrap();
        let _ = r.perron_component(3);
    }

    #[test]
    fn charpoly_of_small_graphs() {
        // K3: x^3 - 3x - 2.
        let k3 = families::cycle(3).unwrap();
        assert_eq!(charpoly(&k3), vec![1, 0, -3, -2]);
        assert!((charpoly_largest_root(&k3) - 2.0).abs() <= 1e-10);
        // P3: x^3 - 2x.
        let p3 = families::path(3).unwrap();
        assert_eq!(charpoly(&p3), vec![1, 0, -2, 0]);
        assert!((charpoly_largest_root(&p3) - 2.0f64.sqrt()).abs() <= 1e-10);
    }

    #[test]
    fn list_backend_agrees_with_bitset_backend() {
        let g = families::cycle(9).unwrap();
        let lists: Vec<Vec<u32>> = (0..9)
            .map(|v| {
                crate::graph::mask_vertices(g.neighbors(v))
                    .into_iter()
                    .map(|u| u as u32)
                    .collect()
            })
            .collect();
        let a = spectral_radius(&g, 1e-12).unwrap();
        let b = spectral_radius_of_lists(&lists, 1e-12).unwrap();
        assert!((a.rho - b.rho).abs() <= 1e-11);
    }

    #[test]
    fn fixed_polynomials_and_roots() {
        for r in 0..=10 {
            let root = solve_charpoly(CharpolyKind::Rho2, r);
            assert!(root > ((r + 4) as f64).sqrt());
            assert!(charpoly_rho2(root, r).abs() <= 1e-9);
            let root1 = solve_charpoly(CharpolyKind::Rho1, r);
            assert!(root1 > ((r + 4) as f64).sqrt());
            assert!(charpoly_rho1(root1, r).abs() <= 1e-8);
        }
    }
}
