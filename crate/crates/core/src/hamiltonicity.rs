//! Exact hamiltonian-cycle decision and fault-tolerance checks.
//!
//! The main solver is a subset dynamic program over (visited set, endpoint)
//! states. A degree-ordered backtracking search is kept alongside it as an
//! independent cross-check and as the fallback above the DP order cap.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, low_mask, Bits, Edge, Graph};
use crate::invariants::{independence_number, is_connected};

/// Largest order handled by the subset DP.
pub const DP_MAX_ORDER: usize = 24;

/// A hamiltonian cycle as a vertex sequence; the closing edge is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HamCycle(pub Vec<usize>);

impl HamCycle {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let n = g.order();
        let c = &self.0;
        if c.len() != n || n < 3 {
            return Err(format!("cycle has {} vertices, graph has {n}", c.len()));
        }
        let mut seen = 0u64;
        for &v in c {
            if v >= n || seen & bit(v) != 0 {
                return Err(format!("vertex {v} repeated or out of range"));
            }
            seen |= bit(v);
        }
        for i in 0..n {
            let (a, b) = (c[i], c[(i + 1) % n]);
            if !g.has_edge(a, b) {
                return Err(format!("({a}, {b}) is not an edge"));
            }
        }
        Ok(())
    }
}

/// Cheap exact necessary conditions. `false` means certainly non-hamiltonian.
fn passes_quick_checks(g: &Graph) -> bool {
    let n = g.order();
    if n < 3 {
        return false;
    }
    if (0..n).any(|v| g.degree(v) < 2) {
        return false;
    }
    if !is_connected(g) {
        return false;
    }
    // an independent set larger than n/2 leaves some gap without a vertex
    match independence_number(g) {
        Ok(alpha) => 2 * alpha <= n,
        Err(_) => true,
    }
}

/// Path table from vertex 0: `table[mask]` holds the endpoints `v` such that
/// some path starting at 0 visits exactly `{0} ∪ mask` and ends at `v`.
/// Masks and endpoints are over vertices `1..n`, shifted down by one.
fn path_table(g: &Graph) -> Vec<u32> {
    let n = g.order();
    let m = n - 1;
    let adj: Vec<u32> = (1..n).map(|v| (g.neighbors(v) >> 1) as u32).collect();
    let start = (g.neighbors(0) >> 1) as u32;
    let mut table = vec![0u32; 1usize << m];
    for v in Bits(start as u64) {
        table[1 << v] |= 1 << v;
    }
    for mask in 1usize..(1 << m) {
        let ends = table[mask];
        if ends == 0 {
            continue;
        }
        for v in Bits(ends as u64) {
            let fresh = adj[v] & !(mask as u32);
            for w in Bits(fresh as u64) {
                table[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    table
}

fn dp_decide(g: &Graph) -> bool {
    let n = g.order();
    let table = path_table(g);
    let closing = (g.neighbors(0) >> 1) as u32;
    table[(1usize << (n - 1)) - 1] & closing != 0
}

fn dp_cycle(g: &Graph) -> Option<HamCycle> {
    let n = g.order();
    let table = path_table(g);
    let closing = (g.neighbors(0) >> 1) as u32;
    let mut mask = (1usize << (n - 1)) - 1;
    let mut ends = table[mask] & closing;
    if ends == 0 {
        return None;
    }
    let mut rev = Vec::with_capacity(n);
    loop {
        let v = ends.trailing_zeros() as usize;
        rev.push(v + 1);
        mask &= !(1 << v);
        if mask == 0 {
            break;
        }
        let prev = (g.neighbors(v + 1) >> 1) as u32;
        ends = table[mask] & prev;
        debug_assert!(ends != 0);
    }
    rev.push(0);
    rev.reverse();
    Some(HamCycle(rev))
}

/// Exact search for a hamiltonian cycle. Orders above [`DP_MAX_ORDER`] use
/// the backtracking search.
pub fn find_hamiltonian_cycle(g: &Graph) -> Option<HamCycle> {
    if !passes_quick_checks(g) {
        return None;
    }
    if g.order() > DP_MAX_ORDER {
        return find_hamiltonian_cycle_backtracking(g);
    }
    dp_cycle(g)
}

/// Decision only; skips cycle reconstruction.
pub fn is_hamiltonian(g: &Graph) -> bool {
    if !passes_quick_checks(g) {
        return false;
    }
    if g.order() > DP_MAX_ORDER {
        return find_hamiltonian_cycle_backtracking(g).is_some();
    }
    dp_decide(g)
}

/// Depth-first extension from vertex 0, trying low-degree neighbours first
/// and pruning when an unvisited vertex has fewer than two usable
/// neighbours left.
pub fn find_hamiltonian_cycle_backtracking(g: &Graph) -> Option<HamCycle> {
    let n = g.order();
    if n < 3 {
        return None;
    }
    let full = low_mask(n);
    let mut path = vec![0usize];
    if extend(g, full, bit(0), &mut path) {
        Some(HamCycle(path))
    } else {
        None
    }
}

fn extend(g: &Graph, full: u64, visited: u64, path: &mut Vec<usize>) -> bool {
    let n = g.order();
    let last = *path.last().unwrap();
    if path.len() == n {
        return g.has_edge(last, 0);
    }
    let open = full & !visited;
    // each unvisited vertex needs two neighbours among unvisited vertices
    // and the two path ends
    let ends = bit(0) | bit(last);
    for v in Bits(open) {
        let usable = g.neighbors(v) & (open | ends);
        if usable.count_ones() < 2 {
            return false;
        }
    }
    let mut next: Vec<usize> = Bits(g.neighbors(last) & open).collect();
    next.sort_by_key(|&w| ((g.neighbors(w) & open).count_ones(), w));
    for w in next {
        path.push(w);
        if extend(g, full, visited | bit(w), path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Vertices or edges removed in a fault scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Fault {
    Vertices(Vec<usize>),
    Edges(Vec<Edge>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaultVerdict {
    pub tolerant: bool,
    /// First failing fault set in enumeration order; present iff not tolerant.
    pub witness: Option<Fault>,
}

impl FaultVerdict {
    fn tolerant() -> Self {
        FaultVerdict {
            tolerant: true,
            witness: None,
        }
    }

    fn failed(f: Fault) -> Self {
        FaultVerdict {
            tolerant: false,
            witness: Some(f),
        }
    }
}

/// Index tuples of size `k` from `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Checks every vertex set of size at most `k`, smallest sizes first and
/// lexicographically within a size.
pub fn is_k_vertex_fault_hamiltonian(g: &Graph, k: usize) -> Result<FaultVerdict> {
    let n = g.order();
    if n < k + 3 {
        return Err(Error::OrderOutOfRange {
            n,
            min: k + 3,
            max: crate::graph::MAX_ORDER,
        });
    }
    let full = g.vertex_mask();
    for size in 0..=k {
        for f in combinations(n, size) {
            let drop = f.iter().fold(0u64, |m, &v| m | bit(v));
            if !is_hamiltonian(&g.induced(full & !drop)) {
                return Ok(FaultVerdict::failed(Fault::Vertices(f)));
            }
        }
    }
    Ok(FaultVerdict::tolerant())
}

/// Same scheme over edge sets; edges are indexed in [`Graph::edges`] order.
pub fn is_k_edge_fault_hamiltonian(g: &Graph, k: usize) -> Result<FaultVerdict> {
    let n = g.order();
    if n < 3 {
        return Err(Error::OrderOutOfRange {
            n,
            min: 3,
            max: crate::graph::MAX_ORDER,
        });
    }
    let edges: Vec<Edge> = g.edges().collect();
    for size in 0..=k.min(edges.len()) {
        for f in combinations(edges.len(), size) {
            let mut h = g.clone();
            for &i in &f {
                h.clear(edges[i].0, edges[i].1);
            }
            if !is_hamiltonian(&h) {
                return Ok(FaultVerdict::failed(Fault::Edges(
                    f.iter().map(|&i| edges[i]).collect(),
                )));
            }
        }
    }
    Ok(FaultVerdict::tolerant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{join, parse_graph6};

    fn petersen() -> Graph {
        parse_graph6("IheA@GUAo").unwrap()
    }

    #[test]
    fn combinations_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn cycle_found_on_c6() {
        let c6 = Graph::cycle(6).unwrap();
        let c = find_hamiltonian_cycle(&c6).unwrap();
        c.validate(&c6).unwrap();
        assert_eq!(c.vertices().len(), 6);
    }

    #[test]
    fn unbalanced_bipartite_and_petersen() {
        let k34 = join(&Graph::empty(3).unwrap(), &Graph::empty(4).unwrap()).unwrap();
        assert!(find_hamiltonian_cycle(&k34).is_none());
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(find_hamiltonian_cycle(&p).is_none());
        assert!(find_hamiltonian_cycle_backtracking(&p).is_none());
        assert!(dp_cycle(&p).is_none());
    }

    #[test]
    fn tiny_orders() {
        assert!(find_hamiltonian_cycle(&Graph::complete(2).unwrap()).is_none());
        assert!(find_hamiltonian_cycle(&Graph::complete(1).unwrap()).is_none());
        let k3 = Graph::complete(3).unwrap();
        find_hamiltonian_cycle(&k3).unwrap().validate(&k3).unwrap();
    }

    #[test]
    fn large_order_falls_back() {
        let c30 = Graph::cycle(30).unwrap();
        let c = find_hamiltonian_cycle(&c30).unwrap();
        c.validate(&c30).unwrap();
    }

    #[test]
    fn vertex_faults() {
        let k5 = Graph::complete(5).unwrap();
        assert!(is_k_vertex_fault_hamiltonian(&k5, 2).unwrap().tolerant);
        assert!(is_k_vertex_fault_hamiltonian(&k5, 3).is_err());

        // K4 ∨ K̄4 minus one K4 vertex is K3 ∨ K̄4, already too unbalanced
        let eta5 = join(&Graph::complete(4).unwrap(), &Graph::empty(4).unwrap()).unwrap();
        let v = is_k_vertex_fault_hamiltonian(&eta5, 2).unwrap();
        assert!(!v.tolerant);
        assert_eq!(v.witness, Some(Fault::Vertices(vec![0])));
        assert!(is_k_vertex_fault_hamiltonian(&eta5, 0).unwrap().tolerant);
    }

    #[test]
    fn edge_faults() {
        let c5 = Graph::cycle(5).unwrap();
        let v = is_k_edge_fault_hamiltonian(&c5, 1).unwrap();
        assert!(!v.tolerant);
        assert_eq!(v.witness, Some(Fault::Edges(vec![(0, 1)])));
        assert!(is_k_edge_fault_hamiltonian(&c5, 0).unwrap().tolerant);
    }

    #[test]
    fn k5_survives_every_edge_pair() {
        // exhaustive oracle: remove each pair of edges and ask the backtracker
        let k5 = Graph::complete(5).unwrap();
        let edges: Vec<_> = k5.edges().collect();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let h = k5.without_edge(edges[i].0, edges[i].1).without_edge(edges[j].0, edges[j].1);
                assert!(find_hamiltonian_cycle_backtracking(&h).is_some());
            }
        }
        assert!(is_k_edge_fault_hamiltonian(&k5, 2).unwrap().tolerant);
    }
}
