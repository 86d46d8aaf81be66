//! Degree, degree-sum, connectivity and independence invariants.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub degrees: Vec<usize>,
    /// Minimum degree; 0 for the empty graph.
    pub min: usize,
}

pub fn degree_sequence(g: &Graph) -> DegreeSequence {
    let degrees: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let min = degrees.iter().copied().min().unwrap_or(0);
    DegreeSequence { degrees, min }
}

/// Minimum degree sum over nonadjacent pairs. Complete graphs have no such
/// pair and get `Infinite`, which compares above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sigma2 {
    Finite(usize),
    Infinite,
}

impl Sigma2 {
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Sigma2::Infinite => true,
            Sigma2::Finite(v) => v as i64 >= bound,
        }
    }
}

impl Ord for Sigma2 {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Sigma2::Infinite, Sigma2::Infinite) => Ordering::Equal,
            (Sigma2::Infinite, _) => Ordering::Greater,
            (_, Sigma2::Infinite) => Ordering::Less,
            (Sigma2::Finite(a), Sigma2::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Sigma2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sigma2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma2::Finite(v) => write!(f, "{v}"),
            Sigma2::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Sigma2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Sigma2::Finite(v) => s.serialize_u64(*v as u64),
            Sigma2::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn sigma2(g: &Graph) -> Sigma2 {
    let n = g.order();
    let full = g.vertex_mask();
    let mut best: Option<usize> = None;
    for u in 0..n {
        let du = g.degree(u);
        let later = full & !((bit(u) << 1) - 1);
        for v in Bits(!g.neighbors(u) & later) {
            let s = du + g.degree(v);
            if best.is_none_or(|b| s < b) {
                best = Some(s);
            }
        }
    }
    best.map_or(Sigma2::Infinite, Sigma2::Finite)
}

/// True iff σ₂(g) ≥ `bound`, exiting on the first violating pair.
pub(crate) fn sigma2_at_least(g: &Graph, bound: i64) -> bool {
    let n = g.order();
    let full = g.vertex_mask();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    for u in 0..n {
        let later = full & !((bit(u) << 1) - 1);
        for v in Bits(!g.neighbors(u) & later) {
            if deg[u] + deg[v] < bound {
                return false;
            }
        }
    }
    true
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    reach(g, 0, g.vertex_mask()) == g.vertex_mask()
}

/// Vertices reachable from `start` inside `within`.
pub(crate) fn reach(g: &Graph, start: usize, within: u64) -> u64 {
    let mut seen = bit(start);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in Bits(frontier) {
            next |= g.neighbors(v);
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Connected components as vertex masks, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<u64> {
    let mut left = g.vertex_mask();
    let mut out = Vec::new();
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let c = reach(g, s, left);
        out.push(c);
        left &= !c;
    }
    out
}

/// A minimum vertex cut and two vertex sets it separates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutCertificate {
    pub cut: Vec<usize>,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl CutCertificate {
    /// Re-checks the certificate by deleting the cut.
    pub fn verify(&self, g: &Graph) -> bool {
        let cut: u64 = self.cut.iter().fold(0, |m, &v| m | bit(v));
        let a: u64 = self.side_a.iter().fold(0, |m, &v| m | bit(v));
        let b: u64 = self.side_b.iter().fold(0, |m, &v| m | bit(v));
        if a == 0 || b == 0 || a & b != 0 || (a | b) & cut != 0 {
            return false;
        }
        let rest = g.vertex_mask() & !cut;
        let from_a = reach(g, a.trailing_zeros() as usize, rest);
        from_a & a == a && from_a & b == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub kappa: usize,
    /// `None` exactly when the graph is complete (κ = n − 1 by convention).
    pub certificate: Option<CutCertificate>,
}

impl Connectivity {
    pub fn is_complete(&self) -> bool {
        self.certificate.is_none()
    }
}

/// Unit-capacity vertex-disjoint path search between two nonadjacent
/// vertices, in the split graph where each vertex `v` becomes an arc
/// `in(v) -> out(v)` of capacity one and each edge `uv` becomes arcs
/// `out(u) -> in(v)`, `out(v) -> in(u)` of unbounded capacity.
struct SplitFlow<'a> {
    g: &'a Graph,
    n: usize,
    // flow over split arcs; in(v) = 2v, out(v) = 2v + 1
    flow: Vec<i32>,
}

impl<'a> SplitFlow<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        SplitFlow {
            g,
            n,
            flow: vec![0; 4 * n * n],
        }
    }

    #[inline]
    fn idx(&self, a: usize, b: usize) -> usize {
        a * 2 * self.n + b
    }

    fn residual(&self, a: usize, b: usize) -> i32 {
        let (va, vb) = (a / 2, b / 2);
        let cap = if va == vb && a.is_multiple_of(2) && b == a + 1 {
            1
        } else if va != vb && a % 2 == 1 && b.is_multiple_of(2) && self.g.has_edge(va, vb) {
            self.n as i32
        } else {
            0
        };
        cap - self.flow[self.idx(a, b)]
    }

    fn push(&mut self, a: usize, b: usize) {
        let i = self.idx(a, b);
        let j = self.idx(b, a);
        self.flow[i] += 1;
        self.flow[j] -= 1;
    }

    /// BFS over residual arcs from out(s). Stops early once `dst` is reached.
    fn bfs(&self, s: usize, dst: Option<usize>) -> Vec<usize> {
        let m = 2 * self.n;
        let mut parent = vec![usize::MAX; m];
        let src = 2 * s + 1;
        parent[src] = src;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            if Some(a) == dst {
                break;
            }
            let side = 1 - a % 2;
            let partner = std::iter::once(a ^ 1);
            let across = Bits(self.g.neighbors(a / 2)).map(|w| 2 * w + side);
            for b in partner.chain(across) {
                if parent[b] == usize::MAX && self.residual(a, b) > 0 {
                    parent[b] = a;
                    queue.push_back(b);
                }
            }
        }
        parent
    }

    /// Maximum number of internally disjoint s–t paths, stopping at `limit`.
    fn max_paths(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.flow.iter_mut().for_each(|f| *f = 0);
        let mut count = 0;
        while count < limit {
            let parent = self.bfs(s, Some(2 * t));
            if parent[2 * t] == usize::MAX {
                break;
            }
            let mut b = 2 * t;
            while b != 2 * s + 1 {
                let a = parent[b];
                self.push(a, b);
                b = a;
            }
            count += 1;
        }
        count
    }

    /// Minimum cut read off the residual graph after a maximum flow.
    fn cut(&self, s: usize) -> CutCertificate {
        let parent = self.bfs(s, None);
        let reached = |a: usize| parent[a] != usize::MAX;
        let mut cut = Vec::new();
        let mut side_a = Vec::new();
        let mut side_b = Vec::new();
        for v in 0..self.n {
            let (i, o) = (reached(2 * v), reached(2 * v + 1));
            if i && !o {
                cut.push(v);
            } else if o {
                side_a.push(v);
            } else {
                side_b.push(v);
            }
        }
        CutCertificate { cut, side_a, side_b }
    }
}

/// κ(g) with a certificate.
///
/// Scans pairs `(v_i, v_j)`, `j > i`, for `i` up to the running minimum: any
/// minimum cut misses one of the first κ + 1 vertices, and the first missed
/// vertex is separated from some later vertex.
pub fn vertex_connectivity(g: &Graph) -> Result<Connectivity> {
    let n = g.order();
    if n < 2 {
        return Err(Error::OrderOutOfRange { n, min: 2, max: 64 });
    }
    if g.is_complete() {
        return Ok(Connectivity {
            kappa: n - 1,
            certificate: None,
        });
    }
    let mut flow = SplitFlow::new(g);
    let mut best = n - 1;
    let mut best_pair = None;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            let k = flow.max_paths(i, j, best);
            if k < best || best_pair.is_none() {
                best = k;
                best_pair = Some((i, j));
            }
        }
        i += 1;
    }
    let (s, t) = best_pair.expect("an incomplete graph has a nonadjacent pair");
    flow.max_paths(s, t, usize::MAX);
    let cert = flow.cut(s);
    debug_assert_eq!(cert.cut.len(), best);
    debug_assert!(cert.verify(g));
    Ok(Connectivity {
        kappa: best,
        certificate: Some(cert),
    })
}

/// True iff κ(g) ≥ k, without building a certificate.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if k == 0 {
        return true;
    }
    if n < k + 1 {
        return false;
    }
    if g.is_complete() {
        return true;
    }
    if (0..n).any(|v| g.degree(v) < k) {
        return false;
    }
    if k == 1 {
        return is_connected(g);
    }
    let mut flow = SplitFlow::new(g);
    for i in 0..k.min(n) {
        for j in i + 1..n {
            if !g.has_edge(i, j) && flow.max_paths(i, j, k) < k {
                return false;
            }
        }
    }
    true
}

/// Largest independent set size, by branch and bound on cliques of the
/// complement with a greedy colouring bound.
pub fn independence_number(g: &Graph) -> Result<usize> {
    const CAP: usize = 40;
    let n = g.order();
    if n > CAP {
        return Err(Error::OrderOutOfRange { n, min: 0, max: CAP });
    }
    let comp = g.complement();
    let mut best = 0;
    max_clique(&comp, 0, comp.vertex_mask(), &mut best);
    Ok(best)
}

pub(crate) fn max_clique(g: &Graph, size: usize, mut cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    // greedy colouring of the candidates, recording each vertex's colour bound
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(cand.count_ones() as usize);
    let mut uncoloured = cand;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut avail = uncoloured;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !bit(v) & !g.neighbors(v);
            uncoloured &= !bit(v);
            order.push((v, colour));
        }
    }
    for &(v, c) in order.iter().rev() {
        if size + c <= *best {
            return;
        }
        max_clique(g, size + 1, cand & g.neighbors(v), best);
        cand &= !bit(v);
    }
}
