//! Dense simple undirected graphs on at most 64 vertices.
//!
//! Each adjacency row is one `u64`, so neighbourhood queries and most
//! invariants reduce to word operations. Graph values are immutable once
//! built; every operator returns a new graph.
//!
//! Composite constructions put the first operand's vertices at indices
//! `0..n1` and the second operand's at `n1..n1 + n2`.

use std::fmt;

use crate::error::{Error, Result};

mod graph6;

pub use graph6::parse_graph6;

/// Largest supported order.
pub const MAX_ORDER: usize = 64;

/// An unordered vertex pair, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

fn normalize(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Ordered list of distinct unordered vertex pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct EdgeList(Vec<Edge>);

impl EdgeList {
    /// Normalizes each pair and rejects loops and duplicates.
    pub fn new<I: IntoIterator<Item = Edge>>(pairs: I) -> Result<Self> {
        let mut out: Vec<Edge> = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = normalize(u, v);
            if out.contains(&e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
            out.push(e);
        }
        Ok(EdgeList(out))
    }

    pub fn empty() -> Self {
        EdgeList(Vec::new())
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.0.iter()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.contains(&normalize(u, v))
    }

    /// Checks every endpoint against the order of a target graph.
    pub fn check_bounds(&self, n: usize) -> Result<()> {
        for &(u, v) in &self.0 {
            if v >= n {
                return Err(Error::NoSuchVertex { v, n });
            }
            debug_assert!(u < v);
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a EdgeList {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// The primitive graphs every construction starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primitive {
    Complete,
    Empty,
    Cycle,
    Path,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_graph6())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::OrderOutOfRange {
            n,
            min: 0,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        check_order(n)?;
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn complete(n: usize) -> Result<Graph> {
        check_order(n)?;
        let full = low_mask(n);
        Ok(Graph {
            n,
            rows: (0..n).map(|i| full & !bit(i)).collect(),
        })
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::OrderOutOfRange { n, min: 3, max: MAX_ORDER });
        }
        let mut g = Graph::path(n)?;
        g.set(0, n - 1);
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for i in 1..n {
            g.set(i - 1, i);
        }
        Ok(g)
    }

    pub fn primitive(kind: Primitive, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::OrderOutOfRange { n, min: 1, max: MAX_ORDER });
        }
        match kind {
            Primitive::Complete => Graph::complete(n),
            Primitive::Empty => Graph::empty(n),
            Primitive::Cycle => Graph::cycle(n),
            Primitive::Path => Graph::path(n),
        }
    }

    /// `k` disjoint copies of `K2`.
    pub fn matching(k: usize) -> Result<Graph> {
        let mut g = Graph::empty(2 * k)?;
        for i in 0..k {
            g.set(2 * i, 2 * i + 1);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(Error::NoSuchVertex { v: u.max(v), n });
            }
            g.set(u, v);
        }
        Ok(g)
    }

    /// Builds from raw rows; the caller guarantees symmetry and a zero diagonal.
    pub(crate) fn from_rows_unchecked(n: usize, rows: Vec<u64>) -> Graph {
        debug_assert_eq!(rows.len(), n);
        let g = Graph { n, rows };
        debug_assert!(g.validate().is_ok());
        g
    }

    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.rows[u] |= bit(v);
        self.rows[v] |= bit(u);
    }

    #[inline]
    pub(crate) fn clear(&mut self, u: usize, v: usize) {
        self.rows[u] &= !bit(v);
        self.rows[v] &= !bit(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Bit mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> u64 {
        self.rows[u]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.rows[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Nonadjacent pairs `(u, v)` with `u < v`.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let full = self.vertex_mask();
        (0..self.n).flat_map(move |u| {
            Bits(!self.rows[u] & full & !low_mask(u + 1)).map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        let full = self.vertex_mask();
        (0..self.n).all(|i| self.rows[i] | bit(i) == full)
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        Graph {
            n: self.n,
            rows: (0..self.n).map(|i| !self.rows[i] & full & !bit(i)).collect(),
        }
    }

    /// Copy with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.set(u, v);
        g
    }

    /// Copy with one edge removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.clear(u, v);
        g
    }

    /// Subgraph induced by the vertices of `mask`, relabeled in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        self.induced_ordered(&keep)
    }

    /// Subgraph induced by `vertices`, with `vertices[i]` becoming vertex `i`.
    pub fn induced_ordered(&self, vertices: &[usize]) -> Graph {
        let m = vertices.len();
        let mut rows = vec![0u64; m];
        for (i, &u) in vertices.iter().enumerate() {
            let r = self.rows[u];
            let mut out = 0u64;
            for (j, &v) in vertices.iter().enumerate() {
                if r & bit(v) != 0 {
                    out |= bit(j);
                }
            }
            rows[i] = out;
        }
        Graph { n: m, rows }
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            let mut out = 0u64;
            for v in Bits(self.rows[u]) {
                out |= bit(perm[v]);
            }
            rows[perm[u]] = out;
        }
        Graph { n: self.n, rows }
    }

    /// Checks symmetry, zero diagonal and that no bit lies beyond the order.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.rows.len() != self.n {
            return Err(format!("{} rows for order {}", self.rows.len(), self.n));
        }
        let full = self.vertex_mask();
        for u in 0..self.n {
            let r = self.rows[u];
            if r & !full != 0 {
                return Err(format!("row {u} has bits beyond the order"));
            }
            if r & bit(u) != 0 {
                return Err(format!("loop at {u}"));
            }
            for v in Bits(r) {
                if self.rows[v] & bit(u) == 0 {
                    return Err(format!("asymmetric pair ({u}, {v})"));
                }
            }
        }
        Ok(())
    }

    pub fn to_graph6(&self) -> String {
        graph6::write_graph6(self)
    }

    /// Graphviz rendering for figures; not parsed back.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// `g1 ∨ g2`: disjoint union plus every cross pair.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let (n1, n2) = (g1.n, g2.n);
    check_order(n1 + n2)?;
    let right = low_mask(n1 + n2) & !low_mask(n1);
    let left = low_mask(n1);
    let mut rows = Vec::with_capacity(n1 + n2);
    rows.extend(g1.rows.iter().map(|r| r | right));
    rows.extend(g2.rows.iter().map(|r| (r << n1) | left));
    let g = Graph { n: n1 + n2, rows };
    debug_assert!(g.validate().is_ok());
    Ok(g)
}

/// `g1 + g2`: block-diagonal adjacency.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let (n1, n2) = (g1.n, g2.n);
    check_order(n1 + n2)?;
    let mut rows = Vec::with_capacity(n1 + n2);
    rows.extend_from_slice(&g1.rows);
    rows.extend(g2.rows.iter().map(|r| r << n1));
    let g = Graph { n: n1 + n2, rows };
    debug_assert!(g.validate().is_ok());
    Ok(g)
}

/// Disjoint union of several graphs, blocks in argument order.
pub fn union_all(parts: &[&Graph]) -> Result<Graph> {
    let mut acc = Graph::empty(0)?;
    for p in parts {
        acc = disjoint_union(&acc, p)?;
    }
    Ok(acc)
}

/// `g1 : g2`: disjoint union plus exactly the listed cross edges.
///
/// Cross pairs are given in the combined labeling, so each must have one
/// endpoint below `g1.order()` and one at or above it.
pub fn link(g1: &Graph, g2: &Graph, cross: &EdgeList) -> Result<Graph> {
    let n1 = g1.n;
    let mut g = disjoint_union(g1, g2)?;
    cross.check_bounds(g.n)?;
    for &(u, v) in cross {
        if (u < n1) == (v < n1) {
            return Err(Error::CrossEdgeInsideBlock(u, v));
        }
        g.set(u, v);
    }
    debug_assert!(g.validate().is_ok());
    Ok(g)
}

/// Removes `edges`, then `vertices`, relabeling survivors contiguously.
///
/// Returns the new graph and, for each new index, its index in `g`.
pub fn delete(g: &Graph, vertices: &[usize], edges: &EdgeList) -> Result<(Graph, Vec<usize>)> {
    let mut out = g.clone();
    edges.check_bounds(g.n)?;
    for &(u, v) in edges {
        if !g.has_edge(u, v) {
            return Err(Error::NoSuchEdge(u, v));
        }
        out.clear(u, v);
    }
    let mut drop = 0u64;
    for &v in vertices {
        if v >= g.n {
            return Err(Error::NoSuchVertex { v, n: g.n });
        }
        drop |= bit(v);
    }
    let keep: Vec<usize> = Bits(g.vertex_mask() & !drop).collect();
    let result = out.induced_ordered(&keep);
    debug_assert!(result.validate().is_ok());
    Ok((result, keep))
}

/// `g1 ∨ g2` minus the listed cross pairs (∨⁻ / ∨⁼ when one / two are listed).
pub fn join_minus(g1: &Graph, g2: &Graph, missing: &EdgeList) -> Result<Graph> {
    let g = join(g1, g2)?;
    let n1 = g1.n;
    for &(u, v) in missing {
        if (u < n1) == (v < n1) {
            return Err(Error::CrossEdgeInsideBlock(u, v));
        }
    }
    Ok(delete(&g, &[], missing)?.0)
}
