//! Independent reference implementations used as test oracles. Nothing here
//! calls into the flow, DP or refinement code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use oreham::Graph;

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

pub fn from_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Every permutation of `0..n`, Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Smallest adjacency-bit encoding over all relabelings.
pub fn brute_canon(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let n = g.order();
    let ps = pairs(n);
    perms
        .iter()
        .map(|p| {
            let mut inv = vec![0; n];
            for (v, &w) in p.iter().enumerate() {
                inv[w] = v;
            }
            ps.iter()
                .enumerate()
                .filter(|(_, &(a, b))| g.has_edge(inv[a], inv[b]))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .min()
        .unwrap()
}

fn connected_within(g: &Graph, keep: u64) -> bool {
    let Some(start) = (0..g.order()).find(|&v| keep >> v & 1 == 1) else {
        return true;
    };
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in 0..g.order() {
            if keep >> w & 1 == 1 && seen >> w & 1 == 0 && g.has_edge(v, w) {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == keep
}

/// Size of the smallest vertex set whose removal disconnects `g` or leaves
/// one vertex.
pub fn brute_kappa(g: &Graph) -> usize {
    let n = g.order();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for k in 0..n.saturating_sub(1) {
        for drop in 0u64..1 << n {
            if drop.count_ones() as usize != k {
                continue;
            }
            if !connected_within(g, all & !drop) {
                return k;
            }
        }
    }
    n - 1
}

/// Plain backtracking over paths from vertex 0, no pruning.
pub fn brute_hamiltonian(g: &Graph) -> bool {
    let n = g.order();
    if n < 3 {
        return false;
    }
    fn go(g: &Graph, path: &mut Vec<usize>, used: u64) -> bool {
        let n = g.order();
        let last = *path.last().unwrap();
        if path.len() == n {
            return g.has_edge(last, path[0]);
        }
        for w in 1..n {
            if used >> w & 1 == 0 && g.has_edge(last, w) {
                path.push(w);
                if go(g, path, used | 1 << w) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    go(g, &mut vec![0], 1)
}

/// Minimum over nonadjacent pairs of the degree sum; `None` when complete.
pub fn brute_sigma2(g: &Graph) -> Option<usize> {
    let n = g.order();
    pairs(n)
        .into_iter()
        .filter(|&(a, b)| !g.has_edge(a, b))
        .map(|(a, b)| g.degree(a) + g.degree(b))
        .min()
}

/// Filter-everything pass: every labeled graph on `n` vertices, keep those
/// accepted by `keep`, dedup by the library's canonical form.
pub fn classes_by_filtering(n: usize, keep: impl Fn(&Graph) -> bool) -> BTreeSet<Vec<u8>> {
    let m = pairs(n).len();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << m {
        let g = from_mask(n, mask);
        if keep(&g) {
            out.insert(oreham::canonical_form(&g).unwrap().0);
        }
    }
    out
}
