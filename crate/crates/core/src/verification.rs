//! Isomorph-free enumeration, Theorem 6 classification and theorem reports.
//!
//! Enumeration runs on complements. Starting from the empty complement
//! (the complete graph), a node adds one complement edge at a time, which
//! deletes one edge of the graph itself. σ₂, vertex connectivity and
//! connectedness can only drop when an edge is deleted, so a node whose
//! graph fails those parts of the filter is cut together with its whole
//! subtree. Duplicates are removed by canonical augmentation: a child `D`
//! is kept only when removing its canonically last edge leads back to the
//! parent's isomorphism class.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::canon::canonical_labeling;
use crate::error::{Error, Result};
use crate::families::{FamilyId, FamilySpec};
use crate::graph::{bit, Graph};
use crate::hamiltonicity::{
    is_hamiltonian, is_k_edge_fault_hamiltonian, is_k_vertex_fault_hamiltonian,
};
use crate::invariants::{is_connected, is_k_connected, sigma2, sigma2_at_least, vertex_connectivity};
use crate::recognizers::{are_isomorphic, recognize_exception, recognize_family, recognize_thm5, Recognition};

/// Smallest and largest order for built-in generation.
pub const ENUM_MIN_ORDER: usize = 3;
pub const ENUM_MAX_ORDER: usize = 11;
/// Default cap for graph6 stream input.
pub const STREAM_MAX_ORDER: usize = 12;

/// A σ₂ floor written relative to the order, such as `n` or `n-2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NOffset(pub i64);

impl NOffset {
    pub fn at(self, n: usize) -> i64 {
        n as i64 + self.0
    }
}

impl fmt::Display for NOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("n"),
            d if d < 0 => write!(f, "n-{}", -d),
            d => write!(f, "n+{d}"),
        }
    }
}

impl FromStr for NOffset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::FamilySpec(format!("bad sigma2 floor `{s}`, expected n, n-k or n+k"));
        let rest = t.strip_prefix('n').ok_or_else(bad)?;
        if rest.is_empty() {
            return Ok(NOffset(0));
        }
        let (sign, digits) = rest.split_at(1);
        let k: i64 = digits.parse().map_err(|_| bad())?;
        match sign {
            "-" => Ok(NOffset(-k)),
            "+" => Ok(NOffset(k)),
            _ => Err(bad()),
        }
    }
}

/// Which graphs an enumeration emits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HypothesisFilter {
    pub min_sigma2: Option<NOffset>,
    pub min_kappa: Option<usize>,
    pub connected_only: bool,
    /// Keep only graphs that are non-hamiltonian but become hamiltonian
    /// after adding any missing edge.
    pub maximal_non_hamiltonian: bool,
}

impl HypothesisFilter {
    pub fn none() -> Self {
        Self::default()
    }

    /// Parts of the filter closed under edge deletion.
    fn passes_hereditary(&self, g: &Graph) -> bool {
        let n = g.order();
        if let Some(d) = self.min_sigma2 {
            if !sigma2_at_least(g, d.at(n)) {
                return false;
            }
        }
        if self.connected_only && !is_connected(g) {
            return false;
        }
        if let Some(k) = self.min_kappa {
            if k > 0 && !is_k_connected(g, k) {
                return false;
            }
        }
        true
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        self.passes_hereditary(g) && (!self.maximal_non_hamiltonian || is_maximal_non_hamiltonian(g))
    }
}

pub fn is_maximal_non_hamiltonian(g: &Graph) -> bool {
    !is_hamiltonian(g) && g.non_edges().all(|(u, v)| is_hamiltonian(&g.with_edge(u, v)))
}

struct Enumerator<'a> {
    n: usize,
    filter: &'a HypothesisFilter,
}

impl Enumerator<'_> {
    /// Accepted children of canonical complement `c`, each in canonical form.
    fn children(&self, c: &Graph) -> Vec<Graph> {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut out = Vec::new();
        for (u, v) in c.non_edges() {
            let d = c.with_edge(u, v);
            if !self.filter.passes_hereditary(&d.complement()) {
                continue;
            }
            let l = canonical_labeling(&d);
            let mut pos = vec![0; self.n];
            for (i, &w) in l.lab.iter().enumerate() {
                pos[w] = i;
            }
            // last edge in canonical order: the highest row's highest neighbour
            let hi = (0..self.n).rev().find(|&i| l.graph.neighbors(i) != 0).expect("d has an edge");
            let lo = 63 - l.graph.neighbors(hi).leading_zeros() as usize;
            let (p, q) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
            // within row `hi` the last neighbour is the largest position below it
            let last = if lo < hi { (lo, hi) } else { (hi, lo) };
            let accept = (p, q) == last || {
                let parent = d.without_edge(l.lab[last.0], l.lab[last.1]);
                canonical_labeling(&parent).graph == *c
            };
            if accept && seen.insert(l.graph.rows().to_vec()) {
                out.push(l.graph);
            }
        }
        out
    }

    fn emit(&self, c: &Graph, sink: &mut dyn FnMut(Graph)) {
        let g = c.complement();
        if !self.filter.maximal_non_hamiltonian || is_maximal_non_hamiltonian(&g) {
            sink(g);
        }
    }

    fn dfs(&self, c: Graph, sink: &mut dyn FnMut(Graph)) {
        self.emit(&c, sink);
        for child in self.children(&c) {
            self.dfs(child, sink);
        }
    }

    fn root(&self) -> Option<Graph> {
        let root = Graph::empty(self.n).expect("order checked");
        self.filter.passes_hereditary(&root.complement()).then_some(root)
    }
}

fn check_enum_order(n: usize) -> Result<()> {
    if (ENUM_MIN_ORDER..=ENUM_MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange {
            n,
            min: ENUM_MIN_ORDER,
            max: ENUM_MAX_ORDER,
        })
    }
}

/// Calls `sink` once per isomorphism class on `n` vertices passing `filter`,
/// serially and in a fixed order. Returns the number of graphs emitted.
pub fn enumerate_graphs(
    n: usize,
    filter: &HypothesisFilter,
    mut sink: impl FnMut(&Graph),
) -> Result<usize> {
    check_enum_order(n)?;
    let e = Enumerator { n, filter };
    let mut count = 0;
    if let Some(root) = e.root() {
        e.dfs(root, &mut |g| {
            count += 1;
            sink(&g);
        });
    }
    Ok(count)
}

/// All classes passing `filter`, generated in parallel and sorted.
///
/// The tree is expanded serially for a few levels; the subtrees below run
/// on the rayon pool (`workers` threads, or the global pool when `None`).
pub fn enumerate_sorted(
    n: usize,
    filter: &HypothesisFilter,
    workers: Option<usize>,
) -> Result<Vec<Graph>> {
    check_enum_order(n)?;
    let e = Enumerator { n, filter };
    let Some(root) = e.root() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut level = vec![root];
    for _ in 0..3 {
        let mut next = Vec::new();
        for c in &level {
            e.emit(c, &mut |g| out.push(g));
            next.extend(e.children(c));
        }
        level = next;
    }
    let run = || -> Vec<Graph> {
        level
            .into_par_iter()
            .flat_map_iter(|c| {
                let mut local = Vec::new();
                e.dfs(c, &mut |g| local.push(g));
                local
            })
            .collect()
    };
    out.extend(with_pool(workers, run)?);
    out.sort();
    Ok(out)
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::FamilySpec(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Verdict of the 2-vertex-fault classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    FaultTolerant,
    Exception(FamilyId),
    HypothesisRejected(String),
    Counterexample,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::FaultTolerant => f.write_str("FAULT_TOLERANT"),
            Verdict::Exception(id) => write!(f, "EXCEPTION({id})"),
            Verdict::HypothesisRejected(why) => write!(f, "HYPOTHESIS_REJECTED({why})"),
            Verdict::Counterexample => f.write_str("COUNTEREXAMPLE"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One graph's verdict plus its witness: the failing fault pair, the
/// recognized family, or the hypothesis value that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub graph6: String,
    pub verdict: Verdict,
    pub fault: Option<Vec<usize>>,
    pub recognition: Option<Recognition>,
}

impl Classification {
    pub fn is_counterexample(&self) -> bool {
        self.verdict == Verdict::Counterexample
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        m.insert("graph6".into(), self.graph6.clone().into());
        let kind = match &self.verdict {
            Verdict::FaultTolerant => "FAULT_TOLERANT",
            Verdict::Exception(_) => "EXCEPTION",
            Verdict::HypothesisRejected(_) => "HYPOTHESIS_REJECTED",
            Verdict::Counterexample => "COUNTEREXAMPLE",
        };
        m.insert("verdict".into(), kind.into());
        match &self.verdict {
            Verdict::Exception(f) => {
                m.insert("family".into(), f.name().into());
            }
            Verdict::HypothesisRejected(why) => {
                m.insert("reason".into(), why.clone().into());
            }
            _ => {}
        }
        if let Some(f) = &self.fault {
            m.insert("fault".into(), serde_json::json!(f));
        }
        if let Some(r) = &self.recognition {
            m.insert("spec".into(), r.spec.to_json());
            let alts: Vec<&str> = r.alternates.iter().map(|f| f.name()).collect();
            m.insert("alternates".into(), serde_json::json!(alts));
        }
        serde_json::Value::Object(m)
    }
}

/// Theorem 6 pipeline: hypothesis (σ₂ ≥ n, κ ≥ 4), then the 2-vertex-fault
/// check, then exception recognition. Sub-scale shapes do not count as
/// recognized.
pub fn classify_graph(g: &Graph) -> Result<Classification> {
    let n = g.order();
    if n < 5 {
        return Err(Error::OrderOutOfRange { n, min: 5, max: 32 });
    }
    let mut c = Classification {
        graph6: g.to_graph6(),
        verdict: Verdict::FaultTolerant,
        fault: None,
        recognition: None,
    };
    let s2 = sigma2(g);
    if !s2.at_least(n as i64) {
        c.verdict = Verdict::HypothesisRejected(format!("sigma2={s2} < n={n}"));
        return Ok(c);
    }
    let kappa = vertex_connectivity(g)?.kappa;
    if kappa < 4 {
        c.verdict = Verdict::HypothesisRejected(format!("kappa={kappa} < 4"));
        return Ok(c);
    }
    let fv = is_k_vertex_fault_hamiltonian(g, 2)?;
    if fv.tolerant {
        return Ok(c);
    }
    c.fault = fv.witness.map(|w| match w {
        crate::hamiltonicity::Fault::Vertices(v) => v,
        crate::hamiltonicity::Fault::Edges(_) => unreachable!("vertex fault check"),
    });
    match recognize_exception(g)? {
        Some(r) if !r.sub_scale => {
            c.verdict = Verdict::Exception(r.spec.family);
            c.recognition = Some(r);
        }
        _ => c.verdict = Verdict::Counterexample,
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    Thm1,
    Thm2,
    Thm4,
    Thm5,
    Thm6,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [Theorem::Thm1, Theorem::Thm2, Theorem::Thm4, Theorem::Thm5, Theorem::Thm6];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Thm1 => "THM1",
            Theorem::Thm2 => "THM2",
            Theorem::Thm4 => "THM4",
            Theorem::Thm5 => "THM5",
            Theorem::Thm6 => "THM6",
        }
    }

    /// The hypothesis population.
    pub fn filter(self) -> HypothesisFilter {
        match self {
            Theorem::Thm1 | Theorem::Thm2 => HypothesisFilter {
                min_sigma2: Some(NOffset(0)),
                ..Default::default()
            },
            Theorem::Thm4 => HypothesisFilter {
                min_sigma2: Some(NOffset(-2)),
                min_kappa: Some(2),
                connected_only: true,
                maximal_non_hamiltonian: true,
            },
            Theorem::Thm5 => HypothesisFilter {
                min_sigma2: Some(NOffset(-2)),
                connected_only: true,
                ..Default::default()
            },
            Theorem::Thm6 => HypothesisFilter {
                min_sigma2: Some(NOffset(0)),
                min_kappa: Some(4),
                ..Default::default()
            },
        }
    }

    fn min_order(self) -> usize {
        match self {
            Theorem::Thm6 => 5,
            _ => 3,
        }
    }

    /// Verdict name for one graph of the population, and whether it
    /// violates the theorem.
    pub fn check(self, g: &Graph) -> Result<(String, bool)> {
        let n = g.order();
        Ok(match self {
            Theorem::Thm1 => {
                if is_hamiltonian(g) {
                    ("HAMILTONIAN".into(), false)
                } else {
                    ("VIOLATION".into(), true)
                }
            }
            Theorem::Thm2 => {
                let vertex = if is_k_vertex_fault_hamiltonian(g, 1)?.tolerant {
                    "TOLERANT"
                } else if recognize_family(g, FamilyId::G1Fam).is_some() {
                    "G1_FAM"
                } else if recognize_family(g, FamilyId::G2Fam).is_some() {
                    "G2_FAM"
                } else {
                    "VIOLATION"
                };
                let edge = if is_k_edge_fault_hamiltonian(g, 1)?.tolerant {
                    "TOLERANT"
                } else {
                    match recognize_family(g, FamilyId::G1Fam) {
                        Some(spec) if n == 3 || matches!(spec.params.get("s"), Some(1 | 2)) => "G1_FAM",
                        _ => "VIOLATION",
                    }
                };
                let bad = vertex == "VIOLATION" || edge == "VIOLATION";
                (format!("VERTEX_{vertex}/EDGE_{edge}"), bad)
            }
            Theorem::Thm4 => {
                let hit = FamilyId::AC.into_iter().find(|&f| {
                    f.check_order(n).is_ok()
                        && matches!(
                            crate::families::build_family(&FamilySpec::new(f, n)),
                            Ok(b) if are_isomorphic(&b, g)
                        )
                });
                match hit {
                    Some(f) => (f.name().into(), false),
                    None => ("VIOLATION".into(), true),
                }
            }
            Theorem::Thm5 => {
                if is_hamiltonian(g) {
                    ("HAMILTONIAN".into(), false)
                } else {
                    match recognize_thm5(g) {
                        Some(f) => (f.name().into(), false),
                        None => ("VIOLATION".into(), true),
                    }
                }
            }
            Theorem::Thm6 => {
                let c = classify_graph(g)?;
                let bad = c.is_counterexample();
                (c.verdict.to_string(), bad)
            }
        })
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let t = t.strip_prefix("THM").unwrap_or(&t);
        match t {
            "1" => Ok(Theorem::Thm1),
            "2" => Ok(Theorem::Thm2),
            "4" => Ok(Theorem::Thm4),
            "5" => Ok(Theorem::Thm5),
            "6" => Ok(Theorem::Thm6),
            _ => Err(Error::FamilySpec(format!("unknown theorem `{s}`, expected 1, 2, 4, 5 or 6"))),
        }
    }
}

/// Outcome of checking one theorem over a population. `seconds` is wall
/// time and the only field that differs between identical runs.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub n: usize,
    pub enumerated: usize,
    pub verdicts: BTreeMap<String, usize>,
    pub counterexamples: Vec<String>,
    pub seconds: f64,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Same report with the timing zeroed, for comparisons.
    pub fn without_timing(&self) -> Self {
        VerificationReport {
            seconds: 0.0,
            ..self.clone()
        }
    }
}

fn check_population(
    theorem: Theorem,
    n: usize,
    graphs: Vec<Graph>,
    workers: Option<usize>,
    started: Instant,
) -> Result<VerificationReport> {
    let results: Vec<Result<(String, bool, String)>> = with_pool(workers, || {
        graphs
            .par_iter()
            .map(|g| theorem.check(g).map(|(v, bad)| (v, bad, g.to_graph6())))
            .collect()
    })?;
    let mut verdicts = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for r in results {
        let (v, bad, g6) = r?;
        *verdicts.entry(v).or_insert(0) += 1;
        if bad {
            counterexamples.push(g6);
        }
    }
    counterexamples.sort();
    Ok(VerificationReport {
        theorem: theorem.name().into(),
        n,
        enumerated: graphs.len(),
        verdicts,
        counterexamples,
        seconds: started.elapsed().as_secs_f64(),
    })
}

/// Enumerates the theorem's hypothesis population at order `n` and checks
/// its conclusion on every graph.
pub fn verify_theorem(theorem: Theorem, n: usize) -> Result<VerificationReport> {
    verify_theorem_with(theorem, n, None)
}

pub fn verify_theorem_with(
    theorem: Theorem,
    n: usize,
    workers: Option<usize>,
) -> Result<VerificationReport> {
    if n < theorem.min_order() {
        return Err(Error::Unsupported {
            n,
            what: "order below the theorem's range",
        });
    }
    let started = Instant::now();
    let graphs = enumerate_sorted(n, &theorem.filter(), workers)?;
    check_population(theorem, n, graphs, workers, started)
}

/// Stream mode: checks externally supplied graphs (assumed pairwise
/// non-isomorphic) that pass the theorem's hypothesis. All graphs must
/// have the same order, at most `max_n`.
pub fn verify_graphs(
    theorem: Theorem,
    graphs: impl IntoIterator<Item = Graph>,
    max_n: usize,
    workers: Option<usize>,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let filter = theorem.filter();
    let mut n = None;
    let mut kept = Vec::new();
    for g in graphs {
        let order = g.order();
        if order > max_n || order < theorem.min_order() {
            return Err(Error::OrderOutOfRange {
                n: order,
                min: theorem.min_order(),
                max: max_n,
            });
        }
        match n {
            None => n = Some(order),
            Some(m) if m != order => {
                return Err(Error::Unsupported {
                    n: order,
                    what: "mixed orders in one stream",
                })
            }
            _ => {}
        }
        if filter.accepts(&g) {
            kept.push(g);
        }
    }
    kept.sort();
    check_population(theorem, n.unwrap_or(0), kept, workers, started)
}

/// Labeled graphs on `n` vertices as a bitmask over the pairs in
/// lexicographic order; used for small exhaustive passes.
pub fn graph_from_pair_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n).expect("order within cap");
    let mut i = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask & bit(i) != 0 {
                g.set(a, b);
            }
            i += 1;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::join;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_graphs(4, &HypothesisFilter::none(), |_| {}).unwrap(), 11);
        assert_eq!(enumerate_graphs(5, &HypothesisFilter::none(), |_| {}).unwrap(), 34);
        assert_eq!(enumerate_graphs(6, &HypothesisFilter::none(), |_| {}).unwrap(), 156);
    }

    #[test]
    fn sorted_matches_serial() {
        let f = HypothesisFilter::none();
        let mut serial = Vec::new();
        enumerate_graphs(6, &f, |g| serial.push(g.clone())).unwrap();
        serial.sort();
        assert_eq!(enumerate_sorted(6, &f, Some(2)).unwrap(), serial);
    }

    #[test]
    fn order_range() {
        assert!(enumerate_graphs(2, &HypothesisFilter::none(), |_| {}).is_err());
        assert!(enumerate_graphs(12, &HypothesisFilter::none(), |_| {}).is_err());
    }

    #[test]
    fn classify_examples() {
        let k8 = Graph::complete(8).unwrap();
        assert_eq!(classify_graph(&k8).unwrap().verdict, Verdict::FaultTolerant);
        let k4 = Graph::complete(4).unwrap();
        let eta5 = join(&k4, &Graph::empty(4).unwrap()).unwrap();
        let c = classify_graph(&eta5).unwrap();
        assert!(matches!(c.verdict, Verdict::Exception(_)));
        assert_eq!(c.fault.as_deref(), Some(&[0][..]));
        let k33 = join(&Graph::empty(3).unwrap(), &Graph::empty(3).unwrap()).unwrap();
        assert_eq!(
            classify_graph(&k33).unwrap().verdict.to_string(),
            "HYPOTHESIS_REJECTED(kappa=3 < 4)"
        );
        assert!(classify_graph(&Graph::complete(4).unwrap()).is_err());
    }

    #[test]
    fn offsets_parse() {
        assert_eq!("n".parse::<NOffset>().unwrap(), NOffset(0));
        assert_eq!("n-2".parse::<NOffset>().unwrap(), NOffset(-2));
        assert_eq!(NOffset(-2).to_string(), "n-2");
        assert!("m-2".parse::<NOffset>().is_err());
        assert_eq!("6".parse::<Theorem>().unwrap(), Theorem::Thm6);
        assert!("3".parse::<Theorem>().is_err());
    }

    #[test]
    fn thm1_small() {
        let r = verify_theorem(Theorem::Thm1, 6).unwrap();
        assert!(r.counterexamples.is_empty());
        assert_eq!(r.verdicts.values().sum::<usize>(), r.enumerated);
    }
}
