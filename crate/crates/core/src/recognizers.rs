//! Isomorphism and family membership.
//!
//! Membership is decided up to isomorphism. Join-shaped families are found
//! through the complement: a join `A ∨ B` minus a set `M` of cross pairs
//! has `B` as a union of components of `complement(G) − M`. Every `B` side
//! used by the families (an independent set, optionally with one edge or a
//! few matching edges) is connected in the complement, so `B` is a single
//! component there.

use std::fmt;

use serde::Serialize;

use crate::canon::canonical_labeling;
use crate::error::{Error, Result};
use crate::families::{build_family, realize, Eta4Layout, FamilyId, FamilySpec};
use crate::graph::{bit, Bits, Edge, EdgeList, Graph};
use crate::hamiltonicity::combinations;
use crate::invariants::components;

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX_ORDER: usize = 32;

/// graph6 bytes of the canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLabel(pub Vec<u8>);

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel({})", String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalLabel> {
    if g.order() > CANON_MAX_ORDER {
        return Err(Error::Unsupported {
            n: g.order(),
            what: "canonical form (n <= 32)",
        });
    }
    Ok(CanonicalLabel(
        canonical_labeling(g).graph.to_graph6().into_bytes(),
    ))
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    find_isomorphism(g1, g2).is_some()
}

/// A bijection `phi` with `g1.permute(phi) == g2`, if one exists.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let l1 = canonical_labeling(g1);
    let l2 = canonical_labeling(g2);
    if l1.graph != l2.graph {
        return None;
    }
    let mut phi = vec![0; g1.order()];
    for (i, &v) in l1.lab.iter().enumerate() {
        phi[v] = l2.lab[i];
    }
    debug_assert_eq!(&g1.permute(&phi), g2);
    Some(phi)
}

/// A bipartition realizing `A ∨ B` minus the `missing` cross pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinDecomposition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub missing: EdgeList,
}

/// Complement edges, in lexicographic order.
fn co_edges(g: &Graph) -> Vec<Edge> {
    g.non_edges().collect()
}

fn without_pairs(gc: &Graph, pairs: &[Edge]) -> Graph {
    let mut h = gc.clone();
    for &(a, b) in pairs {
        h.clear(a, b);
    }
    h
}

/// Every bipartition `(A, B)` with `0 ∈ A` such that the cross pairs absent
/// from `g` are at most `max_missing`. The number of results can grow as
/// `2^c` for a complement with `c` components.
pub fn join_decomposition(g: &Graph, max_missing: usize) -> Vec<JoinDecomposition> {
    let n = g.order();
    if n < 2 {
        return Vec::new();
    }
    let gc = g.complement();
    let pairs = co_edges(g);
    let mut out = Vec::new();
    for m in 0..=max_missing.min(2) {
        for pick in combinations(pairs.len(), m) {
            let missing: Vec<Edge> = pick.iter().map(|&i| pairs[i]).collect();
            let comps = components(&without_pairs(&gc, &missing));
            let comp_of = |v: usize| comps.iter().position(|&c| c & bit(v) != 0).unwrap();
            if missing.iter().any(|&(a, b)| comp_of(a) == comp_of(b)) {
                continue;
            }
            let k = comps.len();
            // component 0 contains vertex 0 and is fixed on side A
            for sides in 0u64..(1u64 << (k - 1)) {
                let side = |c: usize| c > 0 && sides & (1 << (c - 1)) != 0;
                if missing.iter().any(|&(a, b)| side(comp_of(a)) == side(comp_of(b))) {
                    continue;
                }
                let bmask: u64 = (0..k).filter(|&c| side(c)).map(|c| comps[c]).sum();
                if bmask == 0 {
                    continue;
                }
                out.push(JoinDecomposition {
                    a: Bits(g.vertex_mask() & !bmask).collect(),
                    b: Bits(bmask).collect(),
                    missing: EdgeList::new(missing.iter().copied()).unwrap(),
                });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BShape {
    Independent,
    OneEdge,
    ThreeK2,
    K1TwoK2,
}

struct JoinShape {
    b_size: usize,
    b: BShape,
    missing: usize,
}

fn join_shape(f: FamilyId, n: usize) -> Option<JoinShape> {
    use BShape::*;
    use FamilyId::*;
    let s = |b_size, b, missing| Some(JoinShape { b_size, b, missing });
    match f {
        Eta1 => s((n - 1) / 2, Independent, 1),
        Eta2 => s((n - 1) / 2, Independent, 0),
        Eta3 | Eta4 => s(n / 2, OneEdge, 0),
        Zhao9 => s((n + 2) / 2, OneEdge, 0),
        Eta4Minus => s(n / 2, OneEdge, 1),
        Eta4Eq => s(n / 2, OneEdge, 2),
        Eta5 | G2Fam => s(n / 2, Independent, 0),
        Eta6 | Zhao2 => s(6, ThreeK2, 0),
        Eta7 | Zhao3 => s(5, K1TwoK2, 0),
        Zhao5 => s(n.div_ceil(2), Independent, 1),
        Zhao7 => s(n.div_ceil(2), Independent, 0),
        Zhao8 => s((n + 2) / 2, Independent, 0),
        _ => None,
    }
}

/// Orders the `B` side as the family lays it out, if `g[B]` has the shape.
fn order_b_side(g: &Graph, b: u64, shape: BShape) -> Option<Vec<usize>> {
    let inside = |v: usize| g.neighbors(v) & b;
    let verts: Vec<usize> = Bits(b).collect();
    let edges: Vec<Edge> = verts
        .iter()
        .flat_map(|&u| Bits(inside(u)).filter(move |&w| w > u).map(move |w| (u, w)))
        .collect();
    let isolated: Vec<usize> = verts.iter().copied().filter(|&v| inside(v) == 0).collect();
    let matching = verts.iter().all(|&v| inside(v).count_ones() <= 1);
    let pairs = || edges.iter().flat_map(|&(u, w)| [u, w]);
    match shape {
        BShape::Independent if edges.is_empty() => Some(verts),
        BShape::OneEdge if edges.len() == 1 => Some(pairs().chain(isolated).collect()),
        BShape::ThreeK2 if matching && edges.len() == 3 && isolated.is_empty() => {
            Some(pairs().collect())
        }
        BShape::K1TwoK2 if matching && edges.len() == 2 && isolated.len() == 1 => {
            Some(isolated.iter().copied().chain(pairs()).collect())
        }
        _ => None,
    }
}

/// Families that have a sub-scale version: same parity, order below the
/// family's smallest legal order.
fn is_sub_scale(f: FamilyId, n: usize) -> bool {
    n >= 5
        && f.fixed_order().is_none()
        && f.check_order(n).is_err()
        && (1..=4).any(|k| f.check_order(n + 2 * k).is_ok())
}

/// Tries every `(B, M)` candidate for a join-shaped family. Returns the
/// spec and whether it only matches below the legal order.
fn match_join_family(g: &Graph, f: FamilyId) -> Option<(FamilySpec, bool)> {
    let n = g.order();
    let shape = join_shape(f, n)?;
    let legal = f.check_order(n).is_ok();
    let sub = !legal && is_sub_scale(f, n);
    if !legal && !sub {
        return None;
    }
    if shape.b_size == 0 || shape.b_size >= n {
        return None;
    }
    let gc = g.complement();
    let pairs = co_edges(g);
    for pick in combinations(pairs.len(), shape.missing) {
        let missing: Vec<Edge> = pick.iter().map(|&i| pairs[i]).collect();
        for comp in components(&without_pairs(&gc, &missing)) {
            if comp.count_ones() as usize != shape.b_size {
                continue;
            }
            let crosses = |&(a, b): &Edge| (comp & bit(a) != 0) != (comp & bit(b) != 0);
            if !missing.iter().all(crosses) {
                continue;
            }
            let Some(b_order) = order_b_side(g, comp, shape.b) else {
                continue;
            };
            let a_mask = g.vertex_mask() & !comp;
            for spec_and_order in layouts(g, f, a_mask, &b_order, &missing) {
                let (spec, order) = spec_and_order;
                let Ok(built) = realize(&spec) else { continue };
                if built != g.induced_ordered(&order) {
                    continue;
                }
                if legal && build_family(&spec).is_err() {
                    continue;
                }
                return Some((spec, sub));
            }
        }
    }
    None
}

/// Candidate `(spec, vertex order)` pairs for one `(A, B, M)` split. For
/// most families there is exactly one; the η₄ variants choose `x`, `y`.
fn layouts(
    g: &Graph,
    f: FamilyId,
    a_mask: u64,
    b_order: &[usize],
    missing: &[Edge],
) -> Vec<(FamilySpec, Vec<usize>)> {
    use FamilyId::*;
    let n = g.order();
    let a: Vec<usize> = Bits(a_mask).collect();
    let finish = |order: Vec<usize>, h_verts: &[usize], cross: Vec<Edge>| {
        let pos = positions(&order, n);
        let map = |&(u, v): &Edge| {
            let (p, q) = (pos[u], pos[v]);
            (p.min(q), p.max(q))
        };
        let spec = FamilySpec::new(f, n)
            .with_h(g.induced_ordered(h_verts))
            .with_cross(EdgeList::new(cross.iter().map(map)).unwrap())
            .with_deleted(EdgeList::new(missing.iter().map(map)).unwrap());
        (spec, order)
    };
    match f {
        Eta4 | Eta4Minus | Eta4Eq => {
            let (u1, u2) = (b_order[0], b_order[1]);
            let mut xy: Vec<(usize, usize)> = Vec::new();
            match missing {
                [] => {
                    for &x in &a {
                        for y in Bits(g.neighbors(x) & a_mask) {
                            if y > x {
                                xy.push((x, y));
                            }
                        }
                    }
                }
                [(p, q)] => {
                    let (x, u) = if a_mask & bit(*p) != 0 { (*p, *q) } else { (*q, *p) };
                    if u == u1 || u == u2 {
                        xy.extend(Bits(g.neighbors(x) & a_mask).map(|y| (x, y)));
                    }
                }
                [e1, e2] => {
                    let side = |&(p, q): &Edge| {
                        if a_mask & bit(p) != 0 {
                            (p, q)
                        } else {
                            (q, p)
                        }
                    };
                    let ((x, ux), (y, uy)) = (side(e1), side(e2));
                    let us = [ux.min(uy), ux.max(uy)];
                    if x != y && us == [u1.min(u2), u1.max(u2)] && g.has_edge(x, y) {
                        xy.push((x, y));
                    }
                }
                _ => {}
            }
            let mut out = Vec::new();
            for (x, y) in xy {
                let v: Vec<usize> = a.iter().copied().filter(|&w| w != x && w != y).collect();
                let order: Vec<usize> = v.iter().copied().chain([x, y]).chain(b_order.iter().copied()).collect();
                let cross: Vec<Edge> = v
                    .iter()
                    .flat_map(|&w| [x, y].into_iter().filter(move |&z| g.has_edge(w, z)).map(move |z| (w, z)))
                    .collect();
                let (spec, order) = finish(order, &v, cross);
                // the layout puts u1, u2 first on the B side; keep the deleted
                // pairs inside RE of that layout
                let l = Eta4Layout::new(n);
                if spec.deleted.iter().all(|e| l.re().contains(e)) {
                    out.push((spec, order));
                }
            }
            out
        }
        _ => {
            let order: Vec<usize> = a.iter().chain(b_order).copied().collect();
            vec![finish(order, &a, Vec::new())]
        }
    }
}

fn positions(order: &[usize], n: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// Result of exception recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognition {
    pub spec: FamilySpec,
    /// The shape matched, but `n` is below the family's legal order.
    pub sub_scale: bool,
    /// Other η families the graph also belongs to.
    pub alternates: Vec<FamilyId>,
}

/// Decides membership in the η families. Overlaps resolve to the lowest
/// family in [`FamilyId::ETA`] order, with the rest listed as alternates.
pub fn recognize_exception(g: &Graph) -> Result<Option<Recognition>> {
    let n = g.order();
    if !(5..=CANON_MAX_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange {
            n,
            min: 5,
            max: CANON_MAX_ORDER,
        });
    }
    let mut legal: Vec<FamilySpec> = Vec::new();
    let mut sub: Vec<FamilySpec> = Vec::new();
    for f in FamilyId::ETA {
        if let Some((spec, is_sub)) = match_join_family(g, f) {
            if is_sub {
                sub.push(spec);
            } else {
                legal.push(spec);
            }
        }
    }
    let (found, sub_scale) = if legal.is_empty() { (sub, true) } else { (legal, false) };
    let mut it = found.into_iter();
    Ok(it.next().map(|spec| Recognition {
        spec,
        sub_scale,
        alternates: it.map(|s| s.family).collect(),
    }))
}

/// `H2 ∨ (K_s ∪ K_t)`: two vertices adjacent to everything else, the rest
/// splitting into two cliques. `s` is reported as the smaller clique.
fn match_g1(g: &Graph) -> Option<FamilySpec> {
    let n = g.order();
    if n == 3 {
        return g.is_complete().then(|| FamilySpec::new(FamilyId::G1Fam, 3));
    }
    if n < 4 {
        return None;
    }
    let all = g.vertex_mask();
    for p in 0..n {
        for q in p + 1..n {
            let rest = all & !bit(p) & !bit(q);
            if (g.neighbors(p) | bit(p)) & rest != rest || (g.neighbors(q) | bit(q)) & rest != rest
            {
                continue;
            }
            let comps: Vec<u64> = components(&g.induced(rest))
                .into_iter()
                .map(|c| {
                    let verts: Vec<usize> = Bits(rest).collect();
                    Bits(c).map(|i| bit(verts[i])).sum()
                })
                .collect();
            if comps.len() != 2 {
                continue;
            }
            let clique = |c: u64| Bits(c).all(|v| g.neighbors(v) & c == c & !bit(v));
            if !comps.iter().all(|&c| clique(c)) {
                continue;
            }
            let (small, large) = if comps[0].count_ones() <= comps[1].count_ones() {
                (comps[0], comps[1])
            } else {
                (comps[1], comps[0])
            };
            let s = small.count_ones() as usize;
            let order: Vec<usize> = [p, q].into_iter().chain(Bits(small)).chain(Bits(large)).collect();
            let spec = FamilySpec::new(FamilyId::G1Fam, n)
                .with_h(g.induced_ordered(&[p, q]))
                .with_param("s", s);
            if matches!(realize(&spec), Ok(b) if b == g.induced_ordered(&order)) {
                return Some(spec);
            }
        }
    }
    None
}

/// `K_h : ω : K'_t`: removing `ω` leaves a complete component `K_h` and,
/// on the other side, a clique minus a matching (disconnected only when
/// `t = 2` loses its edge), with `h <= t`.
fn match_cut_vertex(g: &Graph) -> Option<FamilySpec> {
    let n = g.order();
    if n < 3 {
        return None;
    }
    let all = g.vertex_mask();
    let missing_inside = |c: u64| -> Vec<Edge> {
        Bits(c)
            .flat_map(|u| Bits(c & !g.neighbors(u)).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    };
    let is_matching = |m: &[Edge]| {
        let mut seen = 0u64;
        m.iter().all(|&(a, b)| {
            let ok = seen & (bit(a) | bit(b)) == 0;
            seen |= bit(a) | bit(b);
            ok
        })
    };
    for w in 0..n {
        let rest = all & !bit(w);
        let verts: Vec<usize> = Bits(rest).collect();
        let comps: Vec<u64> = components(&g.induced(rest))
            .into_iter()
            .map(|c| Bits(c).map(|i| bit(verts[i])).sum())
            .collect();
        if comps.len() < 2 {
            continue;
        }
        for &kh in &comps {
            let kt = rest & !kh;
            if kh.count_ones() > kt.count_ones() || !missing_inside(kh).is_empty() {
                continue;
            }
            let holes = missing_inside(kt);
            if !is_matching(&holes) {
                continue;
            }
            let h = kh.count_ones() as usize;
            let order: Vec<usize> = Bits(kh).chain([w]).chain(Bits(kt)).collect();
            let pos = positions(&order, n);
            let map = |(a, b): Edge| (pos[a].min(pos[b]), pos[a].max(pos[b]));
            let cross: Vec<Edge> = Bits(g.neighbors(w)).map(|v| map((v, w))).collect();
            let spec = FamilySpec::new(FamilyId::Zhao4, n)
                .with_param("h", h)
                .with_param("t", n - 1 - h)
                .with_cross(EdgeList::new(cross).ok()?)
                .with_deleted(EdgeList::new(holes.into_iter().map(map)).ok()?);
            if matches!(build_family(&spec), Ok(b) if b == g.induced_ordered(&order)) {
                return Some(spec);
            }
        }
    }
    None
}

/// Fixed-shape families: the graph must be isomorphic to a built instance.
fn match_fixed(g: &Graph, f: FamilyId) -> Option<FamilySpec> {
    let n = g.order();
    f.check_order(n).ok()?;
    let mut candidates = vec![FamilySpec::new(f, n)];
    if let Some(k) = f.h_order(n) {
        candidates = (0u64..1 << (k * (k - 1) / 2))
            .map(|mask| {
                let pairs: Vec<Edge> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
                let edges: Vec<Edge> = Bits(mask).map(|i| pairs[i]).collect();
                FamilySpec::new(f, n).with_h(Graph::from_edges(k, &edges).unwrap())
            })
            .collect();
    }
    candidates
        .into_iter()
        .find(|spec| matches!(build_family(spec), Ok(b) if are_isomorphic(&b, g)))
}

/// Membership in one family, with a witnessing spec whose build is
/// isomorphic to `g`. Sub-scale shapes are not members.
pub fn recognize_family(g: &Graph, f: FamilyId) -> Option<FamilySpec> {
    use FamilyId::*;
    match f {
        G1Fam => match_g1(g),
        Zhao4 => match_cut_vertex(g),
        Ac1 | Ac2 | Ac3 | Ac4 | Ac5 | Zhao1 | Zhao6 => match_fixed(g, f),
        _ => match match_join_family(g, f) {
            Some((spec, false)) => Some(spec),
            _ => None,
        },
    }
}

/// Which of the nine non-hamiltonian shapes `g` has, checked in order, so
/// the drawing `K1 : C'6` lands in shape (5).
pub fn recognize_thm5(g: &Graph) -> Option<FamilyId> {
    FamilyId::ZHAO
        .into_iter()
        .find(|&f| recognize_family(g, f).is_some())
}
