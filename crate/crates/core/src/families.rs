//! Constructors for the named graph families, with deterministic vertex
//! labellings (spine/centre vertices first, pendant vertices last) so that
//! tests can address Perron components by role.
//!
//! `FamilySpec` is the short text form used by the CLI and in reports,
//! e.g. `"S(0,3)"`, `"H(12)"`, `"G3(1,2,0,3)"`; parsing is
//! case-insensitive.

use crate::canon::canonical_form;
use crate::graph::{Graph, GraphError, MAX_ORDER};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("cannot parse family spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad(family: &str, reason: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameters {
        family: family.to_string(),
        reason: reason.into(),
    }
}

/// Path on `n` vertices, labelled 0..n-1 along the path.
pub fn path(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(bad("P", "need n >= 1"));
    }
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Ok(Graph::from_edges(n, &edges)?)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(bad("C", "need n >= 3"));
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Ok(Graph::from_edges(n, &edges)?)
}

/// Star on `n` vertices with centre 0.
pub fn star(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(bad("STAR", "need n >= 1"));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
    Ok(Graph::from_edges(n, &edges)?)
}

/// Spider `S(r,t)`: a centre (vertex 0) with `r` pendant leaves
/// (1..=r) and `t` pendant 2-paths (pairs `(r+2i+1, r+2i+2)`, the first
/// vertex of each pair adjacent to the centre). Order `r + 2t + 1`.
pub fn s_rt(r: usize, t: usize) -> Result<Graph, FamilyError> {
    if r + t == 0 {
        return Err(bad("S", "need r + t >= 1"));
    }
    let n = r + 2 * t + 1;
    if n > MAX_ORDER {
        return Err(bad("S", format!("order {n} exceeds 64")));
    }
    let mut edges: Vec<(usize, usize)> = (1..=r).map(|v| (0, v)).collect();
    for i in 0..t {
        let a = r + 2 * i + 1;
        edges.push((0, a));
        edges.push((a, a + 1));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// `H(n)` for `n >= 8`: a 4-vertex spine with pendant 2-paths split as
/// evenly as possible between the two spine ends (`ceil((n-4)/4)` and
/// `floor((n-4)/4)` of them); for odd `n` one extra leaf sits on the end
/// with the smaller share. Equivalently `G3(0, s, 0, q)` respectively
/// `G3(0, s, 1, q)`, which fixes the labelling.
pub fn h_n(n: usize) -> Result<Graph, FamilyError> {
    if n < 8 {
        return Err(bad("H", "need n >= 8"));
    }
    if n % 2 == 0 {
        let m = (n - 4) / 2;
        g_family(3, 0, m.div_ceil(2), 0, m / 2)
    } else {
        let m = (n - 5) / 2;
        g_family(3, 0, m.div_ceil(2), 1, m / 2)
    }
}

/// Broom `B(n, s, t)`: a path on `n - s - 2t` vertices (labelled 0..)
/// with `s` leaves and `t` pendant 2-paths attached to its last vertex.
pub fn b_nst(n: usize, s: usize, t: usize) -> Result<Graph, FamilyError> {
    if s + t == 0 {
        return Err(bad("B", "need s + t >= 1"));
    }
    if n < s + 2 * t + 1 {
        return Err(bad("B", "need n - s - 2t >= 1"));
    }
    if n > MAX_ORDER {
        return Err(bad("B", format!("order {n} exceeds 64")));
    }
    let spine = n - s - 2 * t;
    let hub = spine - 1;
    let mut edges: Vec<(usize, usize)> = (0..spine - 1).map(|i| (i, i + 1)).collect();
    for leaf in spine..spine + s {
        edges.push((hub, leaf));
    }
    for i in 0..t {
        let a = spine + s + 2 * i;
        edges.push((hub, a));
        edges.push((a, a + 1));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// The Smith-graph families: the connected graphs with spectral radius
/// below 2 (`W`, `E6`..`E8`, together with paths) and exactly 2
/// (`WTILDE`, `E6TILDE`..`E8TILDE`, together with cycles).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmithKind {
    Wn,
    E6,
    E7,
    E8,
    WTilde,
    E6Tilde,
    E7Tilde,
    E8Tilde,
}

fn path_plus_pendants(len: usize, pendants: &[(usize, usize)]) -> Result<Graph, FamilyError> {
    // Path 0..len-1; each (attach, new) adds a pendant vertex.
    let n = len + pendants.len();
    let mut edges: Vec<(usize, usize)> = (0..len - 1).map(|i| (i, i + 1)).collect();
    for &(attach, new) in pendants {
        edges.push((attach, new));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Builds one of the Smith graphs. `W(n)` (n >= 5) is a path on `n-1`
/// vertices with a pendant at its second vertex; `WTILDE(n)` (n >= 6) has
/// pendants at the second and second-to-last vertices of a path on `n-2`
/// vertices. The `E`-shapes have fixed orders (6, 7, 8 and 7, 8, 9).
pub fn smith_graph(kind: SmithKind, n: Option<usize>) -> Result<Graph, FamilyError> {
    use SmithKind::*;
    let fixed = |name: &str, order: usize| -> Result<(), FamilyError> {
        match n {
            None => Ok(()),
            Some(m) if m == order => Ok(()),
            Some(m) => Err(bad(name, format!("fixed order {order}, got n={m}"))),
        }
    };
    match kind {
        Wn => {
            let n = n.ok_or_else(|| bad("W", "needs a parameter n"))?;
            if n < 5 {
                return Err(bad("W", "need n >= 5"));
            }
            if n > MAX_ORDER {
                return Err(bad("W", format!("order {n} exceeds 64")));
            }
            path_plus_pendants(n - 1, &[(1, n - 1)])
        }
        WTilde => {
            let n = n.ok_or_else(|| bad("WTILDE", "needs a parameter n"))?;
            if n < 6 {
                return Err(bad("WTILDE", "need n >= 6"));
            }
            if n > MAX_ORDER {
                return Err(bad("WTILDE", format!("order {n} exceeds 64")));
            }
            path_plus_pendants(n - 2, &[(1, n - 2), (n - 4, n - 1)])
        }
        E6 => {
            fixed("E6", 6)?;
            path_plus_pendants(5, &[(2, 5)])
        }
        E7 => {
            fixed("E7", 7)?;
            path_plus_pendants(6, &[(2, 6)])
        }
        E8 => {
            fixed("E8", 8)?;
            path_plus_pendants(7, &[(2, 7)])
        }
        E6Tilde => {
            fixed("E6TILDE", 7)?;
            path_plus_pendants(5, &[(2, 5), (5, 6)])
        }
        E7Tilde => {
            fixed("E7TILDE", 8)?;
            path_plus_pendants(7, &[(3, 7)])
        }
        E8Tilde => {
            fixed("E8TILDE", 9)?;
            path_plus_pendants(8, &[(2, 8)])
        }
    }
}

/// `G1(r,s,p,q)`..`G4(r,s,p,q)`: two hub vertices `v1`, `v2` joined by a
/// spine of length 1..3, `v1` carrying `r` leaves and `s` pendant 2-paths,
/// `v2` carrying `p` leaves and `q` pendant 2-paths.
///
/// Labelling: `v1 = 0`, `v2 = 1`, spine vertices `v3 = 2` (and `v4 = 3`
/// where present; in `G4`, `v4 = 3` is the pendant of the middle vertex
/// `v3`). Then `r` leaves of `v1`, `s` pairs of `v1` (inner vertex first),
/// `p` leaves of `v2`, `q` pairs of `v2`.
pub fn g_family(i: u32, r: usize, s: usize, p: usize, q: usize) -> Result<Graph, FamilyError> {
    let name = format!("G{i}");
    let (core, mut edges): (usize, Vec<(usize, usize)>) = match i {
        1 => (2, vec![(0, 1)]),
        2 => (3, vec![(0, 2), (2, 1)]),
        3 => (4, vec![(0, 2), (2, 3), (3, 1)]),
        4 => (4, vec![(0, 2), (2, 1), (2, 3)]),
        _ => return Err(bad(&name, "family index must be 1..=4")),
    };
    let n = core + r + 2 * s + p + 2 * q;
    if n > MAX_ORDER {
        return Err(bad(&name, format!("order {n} exceeds 64")));
    }
    let mut next = core;
    for _ in 0..r {
        edges.push((0, next));
        next += 1;
    }
    for _ in 0..s {
        edges.push((0, next));
        edges.push((next, next + 1));
        next += 2;
    }
    for _ in 0..p {
        edges.push((1, next));
        next += 1;
    }
    for _ in 0..q {
        edges.push((1, next));
        edges.push((next, next + 1));
        next += 2;
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Balanced complete multipartite graph on `n >= 2` vertices with
/// `ceil(n/2)` parts: all parts of size 2, plus one singleton when `n` is
/// odd (the last part). Parts are labelled consecutively.
pub fn balanced_multipartite(n: usize) -> Result<Graph, FamilyError> {
    if n < 2 {
        return Err(bad("BMP", "need n >= 2"));
    }
    if n > MAX_ORDER {
        return Err(bad("BMP", format!("order {n} exceeds 64")));
    }
    let part_of = |v: usize| v / 2;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if part_of(u) != part_of(v) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// The dissociation-number maximiser: `K_{n-k}` joined to a maximum
/// matching on `k` vertices (`k/2` disjoint edges, plus a singleton when
/// `k` is odd). Clique vertices come first.
pub fn join_maximizer(n: usize, k: usize) -> Result<Graph, FamilyError> {
    if !(2..=n).contains(&k) {
        return Err(bad("JOIN", "need 2 <= k <= n"));
    }
    if n > MAX_ORDER {
        return Err(bad("JOIN", format!("order {n} exceeds 64")));
    }
    let clique = n - k;
    let mut edges = Vec::new();
    for u in 0..clique {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    for i in 0..k / 2 {
        let a = clique + 2 * i;
        edges.push((a, a + 1));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Tagged description of a named family instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    Path,
    Cycle,
    Star,
    Srt,
    Hn,
    Bnst,
    Wn,
    WTilde,
    E6,
    E7,
    E8,
    E6Tilde,
    E7Tilde,
    E8Tilde,
    G1,
    G2,
    G3,
    G4,
    BalancedMultipartite,
    JoinMaximizer,
}

impl FamilyKind {
    fn name(self) -> &'static str {
        use FamilyKind::*;
        match self {
            Path => "P",
            Cycle => "C",
            Star => "STAR",
            Srt => "S",
            Hn => "H",
            Bnst => "B",
            Wn => "W",
            WTilde => "WTILDE",
            E6 => "E6",
            E7 => "E7",
            E8 => "E8",
            E6Tilde => "E6TILDE",
            E7Tilde => "E7TILDE",
            E8Tilde => "E8TILDE",
            G1 => "G1",
            G2 => "G2",
            G3 => "G3",
            G4 => "G4",
            BalancedMultipartite => "BMP",
            JoinMaximizer => "JOIN",
        }
    }

    fn arity(self) -> usize {
        use FamilyKind::*;
        match self {
            E6 | E7 | E8 | E6Tilde | E7Tilde | E8Tilde => 0,
            Path | Cycle | Star | Hn | Wn | WTilde | BalancedMultipartite => 1,
            Srt | JoinMaximizer => 2,
            Bnst => 3,
            G1 | G2 | G3 | G4 => 4,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if !self.params.is_empty() {
            let parts: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, params: Vec<usize>) -> Self {
        FamilySpec { kind, params }
    }

    /// Parses `NAME` or `NAME(p1,...,pk)`, case-insensitively.
    pub fn parse(input: &str) -> Result<Self, FamilyError> {
        let err = |reason: &str| FamilyError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let text = input.trim();
        let (name, params) = match text.find('(') {
            None => (text, Vec::new()),
            Some(open) => {
                let inner = text[open..]
                    .strip_prefix('(')
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| err("expected closing parenthesis"))?;
                let params: Result<Vec<usize>, _> = inner
                    .split(',')
                    .map(|p| p.trim().parse::<usize>())
                    .collect();
                (
                    &text[..open],
                    params.map_err(|_| err("parameters must be nonnegative integers"))?,
                )
            }
        };
        use FamilyKind::*;
        let kind = match name.to_ascii_uppercase().as_str() {
            "P" | "PATH" => Path,
            "C" | "CYCLE" => Cycle,
            "STAR" => Star,
            "S" => Srt,
            "H" => Hn,
            "B" => Bnst,
            "W" => Wn,
            "WTILDE" | "WT" => WTilde,
            "E6" => E6,
            "E7" => E7,
            "E8" => E8,
            "E6TILDE" | "E6T" => E6Tilde,
            "E7TILDE" | "E7T" => E7Tilde,
            "E8TILDE" | "E8T" => E8Tilde,
            "G1" => G1,
            "G2" => G2,
            "G3" => G3,
            "G4" => G4,
            "BMP" | "MULTIPARTITE" => BalancedMultipartite,
            "JOIN" => JoinMaximizer,
            _ => return Err(err("unknown family name")),
        };
        if params.len() != kind.arity() {
            return Err(err(&format!(
                "{} takes {} parameter(s), got {}",
                kind.name(),
                kind.arity(),
                params.len()
            )));
        }
        Ok(FamilySpec { kind, params })
    }

    /// Builds the graph this spec describes.
    pub fn build(&self) -> Result<Graph, FamilyError> {
        use FamilyKind::*;
        let p = &self.params;
        match self.kind {
            Path => path(p[0]),
            Cycle => cycle(p[0]),
            Star => star(p[0]),
            Srt => s_rt(p[0], p[1]),
            Hn => h_n(p[0]),
            Bnst => b_nst(p[0], p[1], p[2]),
            Wn => smith_graph(SmithKind::Wn, Some(p[0])),
            WTilde => smith_graph(SmithKind::WTilde, Some(p[0])),
            E6 => smith_graph(SmithKind::E6, None),
            E7 => smith_graph(SmithKind::E7, None),
            E8 => smith_graph(SmithKind::E8, None),
            E6Tilde => smith_graph(SmithKind::E6Tilde, None),
            E7Tilde => smith_graph(SmithKind::E7Tilde, None),
            E8Tilde => smith_graph(SmithKind::E8Tilde, None),
            G1 => g_family(1, p[0], p[1], p[2], p[3]),
            G2 => g_family(2, p[0], p[1], p[2], p[3]),
            G3 => g_family(3, p[0], p[1], p[2], p[3]),
            G4 => g_family(4, p[0], p[1], p[2], p[3]),
            BalancedMultipartite => balanced_multipartite(p[0]),
            JoinMaximizer => join_maximizer(p[0], p[1]),
        }
    }
}

/// All family specs whose graph has exactly `n` vertices. The order of
/// this list is the priority used by [`match_family`].
pub fn all_specs_of_order(n: usize) -> Vec<FamilySpec> {
    use FamilyKind::*;
    let mut out = Vec::new();
    let mut push = |kind: FamilyKind, params: Vec<usize>| {
        out.push(FamilySpec::new(kind, params));
    };
    push(Path, vec![n]);
    if n >= 3 {
        push(Cycle, vec![n]);
    }
    if n >= 5 {
        push(Wn, vec![n]);
    }
    if n >= 6 {
        push(WTilde, vec![n]);
    }
    match n {
        6 => push(E6, vec![]),
        7 => {
            push(E7, vec![]);
            push(E6Tilde, vec![]);
        }
        8 => {
            push(E8, vec![]);
            push(E7Tilde, vec![]);
        }
        9 => push(E8Tilde, vec![]),
        _ => {}
    }
    // Spiders S(r,t) with r + 2t + 1 = n.
    for t in 0..=(n.saturating_sub(1)) / 2 {
        let r = n - 1 - 2 * t;
        if r + t >= 1 {
            push(Srt, vec![r, t]);
        }
    }
    if n >= 8 {
        push(Hn, vec![n]);
    }
    push(Star, vec![n]);
    // Brooms B(n,s,t) with a nonempty spine.
    for s in 0..n {
        for t in 0..=(n.saturating_sub(s + 1)) / 2 {
            if s + t >= 1 && n >= s + 2 * t + 1 {
                push(Bnst, vec![n, s, t]);
            }
        }
    }
    // G-families over the full parameter grids at this order.
    for (i, core) in [(1usize, 2usize), (2, 3), (3, 4), (4, 4)] {
        if n < core {
            continue;
        }
        let rest = n - core;
        for s in 0..=rest / 2 {
            for q in 0..=(rest - 2 * s) / 2 {
                let leaves = rest - 2 * s - 2 * q;
                for r in 0..=leaves {
                    let p = leaves - r;
                    let kind = [G1, G2, G3, G4][i - 1];
                    push(kind, vec![r, s, p, q]);
                }
            }
        }
    }
    if n >= 2 {
        push(BalancedMultipartite, vec![n]);
        for k in 2..=n {
            push(JoinMaximizer, vec![n, k]);
        }
    }
    out
}

/// First family spec (in the fixed priority order) isomorphic to `g`.
pub fn match_family(g: &Graph) -> Option<FamilySpec> {
    let target = canonical_form(g);
    let edges = g.edge_count();
    for spec in all_specs_of_order(g.order()) {
        if let Ok(h) = spec.build() {
            if h.edge_count() == edges && canonical_form(&h) == target {
                return Some(spec);
            }
        }
    }
    None
}
