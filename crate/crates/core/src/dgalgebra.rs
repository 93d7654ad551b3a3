//! The dg-preprojective algebra of a tree: paths in the double quiver with
//! "jumps" `l_i` of length 2, graded by length and by the number of jumps.
//!
//! A basis element of the component `A_{i,j;l}` is a [`JumpPath`] from `i` to
//! `j` whose length (edges count 1, jumps count 2) is `l`. The differential
//! lowers the jump count by one, replacing the `a`-th jump `l_m` (counted in
//! traversal order) by `(-1)^{a+1} θ_m`, where
//! `θ_m = Σ_{n ~ m} ε(m→n) [m→n→m]` is the mesh element.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::dynkin::TreeGraph;
use crate::error::{Error, Result};
use crate::exactla::{homology_dims, ChainComplex, ComplexDims, Limits, SparseIntMatrix};
use crate::hatquiver::{HatQuiver, HatVertex, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Edge of the double quiver; raises the level by 1.
    Edge { from: usize, to: usize },
    /// The jump `l_i`; raises the level by 2 and stays at node `i`.
    Jump(usize),
}

impl Step {
    pub fn length(self) -> usize {
        match self {
            Step::Edge { .. } => 1,
            Step::Jump(_) => 2,
        }
    }

    fn end(self) -> usize {
        match self {
            Step::Edge { to, .. } => to,
            Step::Jump(i) => i,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Edge { from, to } => write!(f, "e({from}-{to})"),
            Step::Jump(i) => write!(f, "j({i})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JumpPath {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl JumpPath {
    /// The idempotent `e_i`.
    pub fn trivial(i: usize) -> Self {
        JumpPath { start: i, steps: Vec::new() }
    }

    /// Validates that consecutive steps compose in `graph`.
    pub fn new(graph: &TreeGraph, start: usize, steps: Vec<Step>) -> Result<Self> {
        let mut at = start;
        for s in &steps {
            match *s {
                Step::Edge { from, to } if from == at && graph.adjacent(from, to) => at = to,
                Step::Jump(i) if i == at => {}
                _ => return Err(Error::Parse(format!("step {s} does not start at node {at}"))),
            }
        }
        Ok(JumpPath { start, steps })
    }

    pub fn end(&self) -> usize {
        self.steps.last().map_or(self.start, |s| s.end())
    }

    pub fn length(&self) -> usize {
        self.steps.iter().map(|s| s.length()).sum()
    }

    pub fn jumps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Jump(_))).count()
    }

    /// `"e(1-2);j(2);e(2-1)"`, or `"id(i)"` for the idempotent.
    pub fn step_string(&self) -> String {
        if self.steps.is_empty() {
            return format!("id({})", self.start);
        }
        self.steps.iter().map(Step::to_string).collect::<Vec<_>>().join(";")
    }
}

impl fmt::Display for JumpPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.step_string())
    }
}

/// Product `p · q`: traverse `q`, then `p`. `None` is the zero element.
pub fn multiply(p: &JumpPath, q: &JumpPath) -> Option<JumpPath> {
    if q.end() != p.start {
        return None;
    }
    let mut steps = q.steps.clone();
    steps.extend_from_slice(&p.steps);
    Some(JumpPath { start: q.start, steps })
}

/// Signs on oriented edges with `ε(e) + ε(ē) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonChoice {
    signs: BTreeMap<(usize, usize), i64>,
}

impl EpsilonChoice {
    /// `+1` on edges oriented from a parity-0 node to a parity-1 node.
    pub fn standard(graph: &TreeGraph) -> Self {
        let mut signs = BTreeMap::new();
        for &(a, b) in graph.edges() {
            let (even, odd) = if graph.parity(a) == 0 { (a, b) } else { (b, a) };
            signs.insert((even, odd), 1);
            signs.insert((odd, even), -1);
        }
        EpsilonChoice { signs }
    }

    /// Validates antisymmetry and coverage of every edge.
    pub fn new(graph: &TreeGraph, signs: BTreeMap<(usize, usize), i64>) -> Result<Self> {
        for &(a, b) in graph.edges() {
            let (x, y) = (signs.get(&(a, b)), signs.get(&(b, a)));
            match (x, y) {
                (Some(&x), Some(&y)) if x.abs() == 1 && x + y == 0 => {}
                _ => return Err(Error::Parse(format!("ε on edge {a}-{b} is not ±1 antisymmetric"))),
            }
        }
        if signs.len() != 2 * graph.edges().len() {
            return Err(Error::Parse("ε assigned to a non-edge".into()));
        }
        Ok(EpsilonChoice { signs })
    }

    /// The same choice with the sign reversed on edge `a - b`.
    pub fn flipped(&self, a: usize, b: usize) -> Self {
        let mut signs = self.signs.clone();
        for key in [(a, b), (b, a)] {
            if let Some(s) = signs.get_mut(&key) {
                *s = -*s;
            }
        }
        EpsilonChoice { signs }
    }

    pub fn sign(&self, from: usize, to: usize) -> i64 {
        self.signs[&(from, to)]
    }
}

/// The mesh element `θ_i` as a formal sum of paths in `A⁰_{i,i;2}`.
pub fn theta(graph: &TreeGraph, eps: &EpsilonChoice, i: usize) -> Vec<(i64, JumpPath)> {
    graph
        .neighbors(i)
        .iter()
        .map(|&m| {
            let path = JumpPath {
                start: i,
                steps: vec![Step::Edge { from: i, to: m }, Step::Edge { from: m, to: i }],
            };
            (eps.sign(i, m), path)
        })
        .collect()
}

/// Number of jump paths from `i` to `j` of length `l` with `k` jumps.
pub fn path_count(graph: &TreeGraph, i: usize, j: usize, l: usize, k: usize) -> u128 {
    CountTable::towards(graph, j, l).get(l, k, i)
}

/// `counts[len][k][v]` = paths from `v` to a fixed target with that length and jump count.
struct CountTable {
    n: usize,
    counts: Vec<Vec<Vec<u128>>>,
}

impl CountTable {
    fn towards(graph: &TreeGraph, target: usize, max_len: usize) -> Self {
        let n = graph.node_count();
        let mut counts = vec![vec![vec![0u128; n]; max_len / 2 + 1]; max_len + 1];
        counts[0][0][target - 1] = 1;
        for len in 1..=max_len {
            for k in 0..=len / 2 {
                for v in 1..=n {
                    let mut c: u128 = 0;
                    if k <= (len - 1) / 2 {
                        for &u in graph.neighbors(v) {
                            c = c.saturating_add(counts[len - 1][k][u - 1]);
                        }
                    }
                    if k >= 1 && len >= 2 {
                        c = c.saturating_add(counts[len - 2][k - 1][v - 1]);
                    }
                    counts[len][k][v - 1] = c;
                }
            }
        }
        CountTable { n, counts }
    }

    fn get(&self, len: usize, k: usize, v: usize) -> u128 {
        if v == 0 || v > self.n {
            return 0;
        }
        self.counts
            .get(len)
            .and_then(|row| row.get(k))
            .map_or(0, |row| row[v - 1])
    }
}

/// All jump paths from `i` to `j` of length `l` with exactly `k` jumps, in
/// lexicographic order of their step sequences.
pub fn enumerate_basis(
    graph: &TreeGraph,
    i: usize,
    j: usize,
    l: usize,
    k: usize,
    limits: &Limits,
) -> Result<Vec<JumpPath>> {
    let table = CountTable::towards(graph, j, l);
    let total = table.get(l, k, i);
    if total > limits.max_basis as u128 {
        return Err(Error::SizeLimitExceeded {
            what: format!("basis of A^{k}_{{{i},{j};{l}}}"),
            required: total,
            limit: limits.max_basis as u128,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut steps = Vec::with_capacity(l);
    enumerate_rec(graph, &table, i, l, k, i, &mut steps, &mut out);
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    graph: &TreeGraph,
    table: &CountTable,
    start: usize,
    rem_len: usize,
    rem_k: usize,
    at: usize,
    steps: &mut Vec<Step>,
    out: &mut Vec<JumpPath>,
) {
    if table.get(rem_len, rem_k, at) == 0 {
        return;
    }
    if rem_len == 0 {
        out.push(JumpPath { start, steps: steps.clone() });
        return;
    }
    // Edges (by target) sort before the jump.
    for &to in graph.neighbors(at) {
        steps.push(Step::Edge { from: at, to });
        enumerate_rec(graph, table, start, rem_len - 1, rem_k, to, steps, out);
        steps.pop();
    }
    if rem_k >= 1 && rem_len >= 2 {
        steps.push(Step::Jump(at));
        enumerate_rec(graph, table, start, rem_len - 2, rem_k - 1, at, steps, out);
        steps.pop();
    }
}

/// The complex `A_{i,j;l} = ⊕_k A^{-k}_{i,j;l}` with its differential.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    /// `bases[k]`: basis of the `k`-jump part.
    pub bases: Vec<Vec<JumpPath>>,
    pub complex: ChainComplex,
}

impl GradedComponent {
    pub fn build(
        graph: &TreeGraph,
        eps: &EpsilonChoice,
        i: usize,
        j: usize,
        l: usize,
        limits: &Limits,
    ) -> Result<Self> {
        let table = CountTable::towards(graph, j, l);
        let top = l / 2;
        let total: u128 = (0..=top).map(|k| table.get(l, k, i)).fold(0, u128::saturating_add);
        if total > limits.max_basis as u128 {
            return Err(Error::SizeLimitExceeded {
                what: format!("component A_{{{i},{j};{l}}}"),
                required: total,
                limit: limits.max_basis as u128,
            });
        }
        let bases: Vec<Vec<JumpPath>> = (0..=top)
            .map(|k| enumerate_basis(graph, i, j, l, k, limits))
            .collect::<Result<_>>()?;
        let differentials = (1..=top).map(|k| differential_matrix(graph, eps, &bases[k - 1], &bases[k])).collect();
        let dims = bases.iter().map(Vec::len).collect();
        let complex = ChainComplex::new(dims, differentials)?;
        complex.check()?;
        Ok(GradedComponent { i, j, l, bases, complex })
    }

    /// Differential matrices `d_1, ..., d_top`.
    pub fn differential(&self) -> &[SparseIntMatrix] {
        self.complex.differentials()
    }

    pub fn homology(&self, limits: &Limits) -> Result<ComplexDims> {
        homology_dims(&self.complex, limits)
    }

    /// JSON dump: bases as step strings, differentials as `[row, col, value]` triplets.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Diff {
            k: usize,
            rows: usize,
            cols: usize,
            entries: Vec<(usize, usize, i64)>,
        }
        #[derive(Serialize)]
        struct Doc {
            i: usize,
            j: usize,
            l: usize,
            bases: Vec<Vec<String>>,
            differentials: Vec<Diff>,
        }
        let doc = Doc {
            i: self.i,
            j: self.j,
            l: self.l,
            bases: self.bases.iter().map(|b| b.iter().map(JumpPath::step_string).collect()).collect(),
            differentials: self
                .differential()
                .iter()
                .enumerate()
                .map(|(idx, d)| Diff {
                    k: idx + 1,
                    rows: d.nrows(),
                    cols: d.ncols(),
                    entries: d.triplets().collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}

/// `d_k` as a `|target| × |source|` matrix.
fn differential_matrix(
    graph: &TreeGraph,
    eps: &EpsilonChoice,
    target: &[JumpPath],
    source: &[JumpPath],
) -> SparseIntMatrix {
    let index: HashMap<&[Step], usize> =
        target.iter().enumerate().map(|(r, p)| (p.steps.as_slice(), r)).collect();
    let mut triplets = Vec::new();
    let mut buf: Vec<Step> = Vec::new();
    for (c, path) in source.iter().enumerate() {
        let mut a = 0usize;
        for (pos, step) in path.steps.iter().enumerate() {
            let Step::Jump(m) = *step else { continue };
            a += 1;
            let sign = if a % 2 == 1 { 1 } else { -1 };
            for &n in graph.neighbors(m) {
                buf.clear();
                buf.extend_from_slice(&path.steps[..pos]);
                buf.push(Step::Edge { from: m, to: n });
                buf.push(Step::Edge { from: n, to: m });
                buf.extend_from_slice(&path.steps[pos + 1..]);
                let r = index[buf.as_slice()];
                triplets.push((r, c, sign * eps.sign(m, n)));
            }
        }
    }
    SparseIntMatrix::from_triplets(target.len(), source.len(), triplets)
}

/// Homology dimensions of `A_{i,j;l}`, indexed by jump count.
pub fn component_homology(
    graph: &TreeGraph,
    eps: &EpsilonChoice,
    i: usize,
    j: usize,
    l: usize,
    limits: &Limits,
) -> Result<ComplexDims> {
    GradedComponent::build(graph, eps, i, j, l, limits)?.homology(limits)
}

/// Dimensions `X_q^k(v) = #Path^k(q, v)` over a window of `Γ̂`.
pub fn projective_rank_data(
    quiver: &HatQuiver,
    q: HatVertex,
    k: usize,
) -> Result<BTreeMap<HatVertex, u128>> {
    let Mode::Window { hi, .. } = quiver.mode() else {
        return Err(Error::Parse("projective_rank_data needs a window quiver".into()));
    };
    let q = quiver.normalize(q)?;
    let graph = quiver.graph();
    let max_len = (hi - q.level).max(0) as usize;
    let mut out = BTreeMap::new();
    for &v in quiver.vertices() {
        let count = if v.level < q.level {
            0
        } else {
            let len = (v.level - q.level) as usize;
            debug_assert!(len <= max_len);
            path_count(graph, q.node, v.node, len, k)
        };
        out.insert(v, count);
    }
    Ok(out)
}
