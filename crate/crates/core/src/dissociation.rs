//! Exact dissociation numbers.
//!
//! A dissociation set induces a subgraph of maximum degree at most one; the
//! dissociation number `diss(G)` is the largest size of such a set. Three
//! engines share the contract: subset brute force (order <= 24), a
//! branch-and-bound solver for anything up to 64 vertices, and a rooted
//! dynamic program restricted to trees. All return the same value and the
//! lexicographically smallest witness among maximum dissociation sets.

use crate::graph::{full_mask, mask_vertices, Graph};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DissError {
    #[error("order {order} exceeds the brute-force cap {cap}")]
    OrderAboveCap { order: usize, cap: usize },
    #[error("input graph is not a tree")]
    NotATree,
}

/// A dissociation number and one witnessing maximum dissociation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissResult {
    pub value: usize,
    witness: u64,
}

impl DissResult {
    pub fn witness_mask(&self) -> u64 {
        self.witness
    }

    /// Witness vertices in ascending order.
    pub fn witness_vertices(&self) -> Vec<usize> {
        mask_vertices(self.witness)
    }
}

/// Whether `mask` induces a subgraph with maximum degree at most one.
pub fn is_dissociation_set(g: &Graph, mask: u64) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (g.neighbors(v) & mask).count_ones() > 1 {
            return false;
        }
    }
    true
}

/// `a` precedes `b` as a sorted vertex list (for equal-size masks this is
/// the usual lexicographic order on the sorted sequences).
fn lex_smaller(a: u64, b: u64) -> bool {
    if a == b {
        return false;
    }
    let diff = a ^ b;
    a & (diff & diff.wrapping_neg()) != 0
}

/// Exhaustive maximum over all vertex subsets, scanning sizes downwards so
/// the first feasible size wins. Capped at 24 vertices.
pub fn diss_bruteforce(g: &Graph) -> Result<DissResult, DissError> {
    const CAP: usize = 24;
    let n = g.order();
    if n > CAP {
        return Err(DissError::OrderAboveCap { order: n, cap: CAP });
    }
    let all = full_mask(n);
    for size in (1..=n).rev() {
        let mut best: Option<u64> = None;
        // Gosper's hack walks all subsets of the given popcount.
        let mut mask = full_mask(size);
        loop {
            if is_dissociation_set(g, mask) && best.map_or(true, |b| lex_smaller(mask, b)) {
                best = Some(mask);
            }
            if mask == all & !full_mask(n - size) {
                break;
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
        if let Some(witness) = best {
            return Ok(DissResult {
                value: size,
                witness,
            });
        }
    }
    unreachable!("a single vertex is always a dissociation set");
}

/// Branch-and-bound maximiser. `forced_in` / `forced_out` pin decisions;
/// returns `None` when `forced_in` itself is infeasible.
fn bnb_value(g: &Graph, forced_in: u64, forced_out: u64) -> Option<usize> {
    if !is_dissociation_set(g, forced_in) {
        return None;
    }
    let n = g.order();
    let mut matched = 0u64;
    let mut rest = forced_in;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if g.neighbors(v) & forced_in != 0 {
            matched |= 1u64 << v;
        }
    }
    let free = full_mask(n) & !forced_in & !forced_out;
    let mut best = greedy_seed(g, forced_in, matched, free);
    branch(g, free, forced_in, matched, &mut best);
    Some(best)
}

/// Greedy start: repeatedly select a feasible free vertex of minimum
/// residual degree. Only a lower bound, used to seed pruning.
fn greedy_seed(g: &Graph, sel0: u64, matched0: u64, free0: u64) -> usize {
    let (mut sel, mut matched, mut free) = (sel0, matched0, free0);
    loop {
        let mut pick: Option<(usize, usize)> = None;
        let mut rest = free;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !can_select(g, v, sel, matched) {
                continue;
            }
            let deg = (g.neighbors(v) & free).count_ones() as usize;
            if pick.map_or(true, |(d, _)| deg < d) {
                pick = Some((deg, v));
            }
        }
        match pick {
            None => return sel.count_ones() as usize,
            Some((_, v)) => {
                let hit = g.neighbors(v) & sel;
                if hit != 0 {
                    matched |= hit | (1u64 << v);
                }
                sel |= 1u64 << v;
                free &= !(1u64 << v);
            }
        }
    }
}

#[inline]
fn can_select(g: &Graph, v: usize, sel: u64, matched: u64) -> bool {
    let hit = g.neighbors(v) & sel;
    hit.count_ones() <= 1 && hit & matched == 0
}

fn branch(g: &Graph, free: u64, sel: u64, matched: u64, best: &mut usize) {
    let selected = sel.count_ones() as usize;
    if selected + free.count_ones() as usize <= *best {
        return;
    }
    if free == 0 {
        *best = selected;
        return;
    }
    // Forced picks: isolated free vertices with no selected neighbour join
    // the set with no side effects.
    let mut f = free;
    let mut sel = sel;
    let mut free = free;
    while f != 0 {
        let v = f.trailing_zeros() as usize;
        f &= f - 1;
        if g.neighbors(v) & (free | sel) == 0 {
            sel |= 1u64 << v;
            free &= !(1u64 << v);
        }
    }
    if free == 0 {
        let selected = sel.count_ones() as usize;
        if selected > *best {
            *best = selected;
        }
        return;
    }
    // Branch on a maximum-residual-degree free vertex, excluding first.
    let mut pick = free.trailing_zeros() as usize;
    let mut pick_deg = 0usize;
    let mut rest = free;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let deg = (g.neighbors(v) & free).count_ones() as usize;
        if deg > pick_deg {
            pick_deg = deg;
            pick = v;
        }
    }
    let vbit = 1u64 << pick;
    branch(g, free & !vbit, sel, matched, best);
    if can_select(g, pick, sel, matched) {
        let hit = g.neighbors(pick) & sel;
        let matched2 = if hit != 0 { matched | hit | vbit } else { matched };
        branch(g, free & !vbit, sel | vbit, matched2, best);
    }
}

/// Lexicographically smallest maximum set, given the optimum `value` and an
/// oracle for constrained optima.
fn lex_min_witness(
    n: usize,
    value: usize,
    solve: impl Fn(u64, u64) -> Option<usize>,
) -> u64 {
    let mut chosen = 0u64;
    let mut rejected = 0u64;
    for v in 0..n {
        if chosen.count_ones() as usize == value {
            break;
        }
        let bit = 1u64 << v;
        if solve(chosen | bit, rejected) == Some(value) {
            chosen |= bit;
        } else {
            rejected |= bit;
        }
    }
    debug_assert_eq!(chosen.count_ones() as usize, value);
    chosen
}

/// Exact dissociation number for any graph on up to 64 vertices.
pub fn diss_exact(g: &Graph) -> DissResult {
    let value = bnb_value(g, 0, 0).expect("empty forced set is feasible");
    let witness = lex_min_witness(g.order(), value, |inc, exc| bnb_value(g, inc, exc));
    DissResult { value, witness }
}

/// Value-only fast path used by enumeration filters.
pub(crate) fn diss_value(g: &Graph) -> usize {
    bnb_value(g, 0, 0).expect("empty forced set is feasible")
}

const NEG: i32 = i32::MIN / 2;

/// Rooted DP over three states per vertex: excluded, selected-unmatched,
/// selected-matched-to-a-child. Vertices in `forced_in` must be selected,
/// vertices in `forced_out` must not; used for witness construction.
fn tree_dp(g: &Graph, order_parent: &[(usize, Option<usize>)], forced_in: u64, forced_out: u64) -> i32 {
    let n = g.order();
    // f[v] = (excluded, selected unmatched, selected matched)
    let mut f = vec![[NEG; 3]; n];
    for &(v, parent) in order_parent.iter().rev() {
        let may_out = forced_in & (1u64 << v) == 0;
        let may_in = forced_out & (1u64 << v) == 0;
        let mut kids = g.neighbors(v);
        if let Some(p) = parent {
            kids &= !(1u64 << p);
        }
        let mut sum_any = 0i32;
        let mut any_ok = true;
        let mut sum0 = 0i32; // over children with feasible "excluded" state
        let mut must_match: Option<usize> = None; // child that cannot be excluded
        let mut overconstrained = false;
        let mut best_gain = NEG; // max f1(c) - f0(c) where both are feasible
        let mut rest = kids;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let m = f[c][0].max(f[c][1]).max(f[c][2]);
            if m <= NEG / 2 {
                any_ok = false;
            } else {
                sum_any += m;
            }
            if f[c][0] <= NEG / 2 {
                if must_match.replace(c).is_some() {
                    overconstrained = true;
                }
            } else {
                sum0 += f[c][0];
                if f[c][1] > NEG / 2 {
                    best_gain = best_gain.max(f[c][1] - f[c][0]);
                }
            }
        }
        let f0 = if any_ok { sum_any } else { NEG };
        // v selected: every child must be excluded, except that exactly one
        // child may be selected-unmatched and become v's partner (f2).
        let (f1, f2) = if overconstrained {
            (NEG, NEG)
        } else {
            match must_match {
                Some(c) if f[c][1] > NEG / 2 => (NEG, 1 + sum0 + f[c][1]),
                Some(_) => (NEG, NEG),
                None => (
                    1 + sum0,
                    if best_gain > NEG / 2 { 1 + sum0 + best_gain } else { NEG },
                ),
            }
        };
        f[v] = [
            if may_out { f0 } else { NEG },
            if may_in { f1 } else { NEG },
            if may_in { f2 } else { NEG },
        ];
    }
    let root = order_parent[0].0;
    f[root][0].max(f[root][1]).max(f[root][2])
}

/// BFS order with parents for a tree rooted at 0.
fn bfs_order(g: &Graph) -> Vec<(usize, Option<usize>)> {
    let n = g.order();
    let mut order = Vec::with_capacity(n);
    let mut seen = 1u64;
    order.push((0usize, None));
    let mut head = 0;
    while head < order.len() {
        let (v, _) = order[head];
        head += 1;
        let mut rest = g.neighbors(v) & !seen;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            seen |= 1u64 << c;
            order.push((c, Some(v)));
        }
    }
    order
}

/// Linear-time engine for trees (connected, |E| = n - 1).
pub fn diss_tree(g: &Graph) -> Result<DissResult, DissError> {
    if !g.is_tree() {
        return Err(DissError::NotATree);
    }
    let order = bfs_order(g);
    let value = tree_dp(g, &order, 0, 0) as usize;
    let witness = lex_min_witness(g.order(), value, |inc, exc| {
        let got = tree_dp(g, &order, inc, exc);
        (got > NEG / 2).then(|| got as usize)
    });
    Ok(DissResult { value, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn cliques_have_dissociation_two() {
        for n in 2..=8 {
            let g = complete(n);
            assert_eq!(diss_bruteforce(&g).unwrap().value, 2);
            assert_eq!(diss_exact(&g).value, 2);
        }
    }

    #[test]
    fn paths_and_cycles_match_closed_forms() {
        let p7 = families::path(7).unwrap();
        assert_eq!(diss_bruteforce(&p7).unwrap().value, 5);
        let c7 = families::cycle(7).unwrap();
        assert_eq!(diss_bruteforce(&c7).unwrap().value, 4);
    }

    #[test]
    fn bruteforce_cap_is_enforced() {
        let g = Graph::empty(25).unwrap();
        assert!(matches!(
            diss_bruteforce(&g),
            Err(DissError::OrderAboveCap { order: 25, cap: 24 })
        ));
    }

    #[test]
    fn witnesses_are_valid_and_lex_minimal() {
        let g = families::cycle(6).unwrap();
        let r = diss_bruteforce(&g).unwrap();
        assert!(is_dissociation_set(&g, r.witness_mask()));
        assert_eq!(r.witness_vertices().len(), r.value);
        let e = diss_exact(&g);
        assert_eq!(e.value, r.value);
        assert_eq!(e.witness_mask(), r.witness_mask());
        // {0,1,3,4} is the lexicographically least maximum set of C6.
        assert_eq!(r.witness_vertices(), vec![0, 1, 3, 4]);
    }

    #[test]
    fn tree_engine_matches_on_spiders() {
        let s = families::s_rt(1, 4).unwrap(); // order 10
        let t = diss_tree(&s).unwrap();
        assert_eq!(t.value, 9);
        assert_eq!(t.value, diss_exact(&s).value);
        assert_eq!(t.witness_mask(), diss_exact(&s).witness_mask());
    }

    #[test]
    fn tree_engine_rejects_non_trees() {
        let c4 = families::cycle(4).unwrap();
        assert_eq!(diss_tree(&c4).unwrap_err(), DissError::NotATree);
        let two = Graph::empty(2).unwrap();
        assert_eq!(diss_tree(&two).unwrap_err(), DissError::NotATree);
    }

    #[test]
    fn lex_order_on_masks() {
        assert!(lex_smaller(0b100001, 0b000110)); // {0,5} < {1,2}
        assert!(lex_smaller(0b00110, 0b01010)); // {1,2} < {1,3}
        assert!(!lex_smaller(0b01010, 0b00110));
    }
}
