//! Canonical labeling by partition refinement and individualization.
//!
//! The ordered partition is refined to an equitable one (cells split by
//! neighbour counts into each splitter cell, subcells ordered by count).
//! Non-discrete partitions branch on every vertex of the first non-singleton
//! cell. Each discrete leaf gives a relabeling; the canonical graph is the
//! lexicographically least relabeled adjacency. Leaves that reproduce the
//! current best graph yield automorphisms, which prune sibling branches in
//! the same orbit of the prefix stabilizer.

use crate::graph::{bit, Bits, Graph};

/// Relabeled graph plus `lab`, where `lab[i]` is the original vertex placed at
/// canonical position `i`.
pub struct Labeling {
    pub graph: Graph,
    pub lab: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    best_rows: Vec<u64>,
    best_lab: Vec<usize>,
    have_best: bool,
    automorphisms: Vec<Vec<usize>>,
    scratch: Vec<u64>,
}

/// Splits every cell by neighbour counts until the partition is equitable.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let mut i = 0;
    // i indexes the splitter; restart from 0 whenever anything split
    while i < cells.len() {
        let splitter = cells[i];
        let mut changed = false;
        let mut j = 0;
        while j < cells.len() {
            let cell = cells[j];
            if cell.count_ones() == 1 {
                j += 1;
                continue;
            }
            let mut groups: Vec<(u32, u64)> = Vec::new();
            for v in Bits(cell) {
                let c = (g.neighbors(v) & splitter).count_ones();
                match groups.iter_mut().find(|(k, _)| *k == c) {
                    Some((_, m)) => *m |= bit(v),
                    None => groups.push((c, bit(v))),
                }
            }
            if groups.len() > 1 {
                groups.sort_unstable_by_key(|&(k, _)| k);
                let parts = groups.len();
                cells.splice(j..=j, groups.into_iter().map(|(_, m)| m));
                j += parts;
                changed = true;
            } else {
                j += 1;
            }
        }
        if changed {
            i = 0;
        } else {
            i += 1;
        }
    }
}

fn orbit_roots(n: usize, gens: &[&Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for gamma in gens {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, gamma[v]));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

impl<'a> Search<'a> {
    fn leaf(&mut self, cells: &[u64]) {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = vec![0usize; self.n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &v) in lab.iter().enumerate() {
            let mut row = 0u64;
            for w in Bits(self.g.neighbors(v)) {
                row |= bit(pos[w]);
            }
            self.scratch[i] = row;
        }
        if !self.have_best {
            self.best_rows.copy_from_slice(&self.scratch);
            self.best_lab = lab;
            self.have_best = true;
            return;
        }
        match self.scratch.cmp(&self.best_rows) {
            std::cmp::Ordering::Less => {
                self.best_rows.copy_from_slice(&self.scratch);
                self.best_lab = lab;
            }
            std::cmp::Ordering::Equal => {
                let mut gamma = vec![0usize; self.n];
                for i in 0..self.n {
                    gamma[self.best_lab[i]] = lab[i];
                }
                if gamma.iter().enumerate().any(|(v, &w)| v != w) {
                    self.automorphisms.push(gamma);
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }

    fn descend(&mut self, mut cells: Vec<u64>, prefix: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let target = cells[t];
        let mut tried: Vec<usize> = Vec::new();
        for v in Bits(target) {
            if !tried.is_empty() {
                let stab: Vec<&Vec<usize>> = self
                    .automorphisms
                    .iter()
                    .filter(|gm| prefix.iter().all(|&p| gm[p] == p))
                    .collect();
                if !stab.is_empty() {
                    let roots = orbit_roots(self.n, &stab);
                    if tried.iter().any(|&u| roots[u] == roots[v]) {
                        continue;
                    }
                }
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(bit(v));
            next.push(target & !bit(v));
            next.extend_from_slice(&cells[t + 1..]);
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
        }
    }
}

/// Canonical relabeling of `g`. Isomorphic inputs give identical graphs.
pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    if n == 0 {
        return Labeling {
            graph: g.clone(),
            lab: Vec::new(),
        };
    }
    let mut s = Search {
        g,
        n,
        best_rows: vec![0; n],
        best_lab: Vec::new(),
        have_best: false,
        automorphisms: Vec::new(),
        scratch: vec![0; n],
    };
    // start from the degree partition; refinement against the unit cell does
    // the same split, this just saves a pass
    let mut by_degree: Vec<(u32, u64)> = Vec::new();
    for v in 0..n {
        let d = g.neighbors(v).count_ones();
        match by_degree.iter_mut().find(|(k, _)| *k == d) {
            Some((_, m)) => *m |= bit(v),
            None => by_degree.push((d, bit(v))),
        }
    }
    by_degree.sort_unstable_by_key(|&(k, _)| k);
    let cells: Vec<u64> = by_degree.into_iter().map(|(_, m)| m).collect();
    s.descend(cells, &mut Vec::new());
    Labeling {
        graph: Graph::from_rows_unchecked(n, s.best_rows),
        lab: s.best_lab,
    }
}
