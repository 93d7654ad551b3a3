//! Hom and Ext¹ dimensions between the indecomposables `X_q` of the
//! 2-periodic category, computed three ways:
//!
//! * `Quotient`: homology of the dg-preprojective component `A_{i,j;l}`,
//!   taking `l` in `[0, 2h)` as the representative of the cyclic distance.
//! * `Knitting`: the Euler characteristic knitted across `Γ̂_cyc`, split by sign.
//! * `Oracle`: the hereditary Euler form on knitted root classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dgalgebra::{component_homology, EpsilonChoice};
use crate::dynkin::{DynkinDiagram, TreeGraph};
use crate::error::{Error, Result};
use crate::exactla::{ComplexDims, Limits};
use crate::hatquiver::{HatQuiver, HatVertex, HeightFunction};
use crate::roots::{knit, oracle_euler_table, projective_dimension_vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quotient,
    Knitting,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Quotient, Method::Knitting, Method::Oracle];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Quotient => "quotient",
            Method::Knitting => "knitting",
            Method::Oracle => "oracle",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quotient" => Ok(Method::Quotient),
            "knitting" => Ok(Method::Knitting),
            "oracle" => Ok(Method::Oracle),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RHomProfile {
    pub source: HatVertex,
    pub target: HatVertex,
    pub hom: u64,
    pub ext1: u64,
    pub euler: i64,
}

impl RHomProfile {
    /// Splits an Euler characteristic assuming it lives in a single degree.
    pub fn from_euler(source: HatVertex, target: HatVertex, euler: i64) -> Self {
        RHomProfile {
            source,
            target,
            hom: euler.max(0) as u64,
            ext1: (-euler).max(0) as u64,
            euler,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTable {
    pub diagram: String,
    pub method: Method,
    /// Keyed by `(q, q′)` for `Hom(X_q, X_q′)`.
    pub entries: BTreeMap<(HatVertex, HatVertex), RHomProfile>,
}

impl HomTable {
    pub fn get(&self, q: HatVertex, qp: HatVertex) -> &RHomProfile {
        &self.entries[&(q, qp)]
    }

    /// Pairs whose (hom, ext1) differ from `other`.
    pub fn disagreements(&self, other: &HomTable) -> Vec<(HatVertex, HatVertex)> {
        self.entries
            .iter()
            .filter(|(k, p)| other.entries.get(k).map(|o| (o.hom, o.ext1)) != Some((p.hom, p.ext1)))
            .map(|(&k, _)| k)
            .collect()
    }

    /// Rows `q,q′,hom,ext1,method` with vertices written `i:n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,target,hom,ext1,method\n");
        for p in self.entries.values() {
            out.push_str(&format!(
                "{}:{},{}:{},{},{},{}\n",
                p.source.node, p.source.level, p.target.node, p.target.level, p.hom, p.ext1, self.method
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            diagram: &'a str,
            method: Method,
            entries: Vec<&'a RHomProfile>,
        }
        let doc = Doc { diagram: &self.diagram, method: self.method, entries: self.entries.values().collect() };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientDims {
    pub hom: u64,
    pub ext_by_degree: Vec<u64>,
}

/// `Path(q′, q)/J` and the higher homology of `A_{i,j;l}` in window mode,
/// with `i = node(q′)`, `j = node(q)`, `l = level(q) − level(q′)`.
pub fn mesh_quotient_dim(
    graph: &TreeGraph,
    eps: &EpsilonChoice,
    qp: HatVertex,
    q: HatVertex,
    limits: &Limits,
) -> Result<QuotientDims> {
    for v in [qp, q] {
        if v.node == 0 || v.node > graph.node_count() {
            return Err(Error::InvalidVertex { node: v.node, level: v.level, reason: "no such node".into() });
        }
        if (v.level - graph.parity(v.node) as i64).rem_euclid(2) != 0 {
            return Err(Error::InvalidVertex { node: v.node, level: v.level, reason: "wrong parity".into() });
        }
    }
    if q.level < qp.level {
        return Ok(QuotientDims { hom: 0, ext_by_degree: vec![0] });
    }
    let l = (q.level - qp.level) as usize;
    let dims = component_homology(graph, eps, qp.node, q.node, l, limits)?;
    Ok(QuotientDims {
        hom: dims.h(0) as u64,
        ext_by_degree: dims.homology.iter().map(|&x| x as u64).collect(),
    })
}

/// Memoised homology of `A_{i,j;l}`.
#[derive(Clone, Debug)]
pub struct QuotientCache {
    graph: TreeGraph,
    eps: EpsilonChoice,
    limits: Limits,
    cache: BTreeMap<(usize, usize, usize), ComplexDims>,
}

impl QuotientCache {
    pub fn new(graph: &TreeGraph, eps: EpsilonChoice, limits: Limits) -> Self {
        QuotientCache { graph: graph.clone(), eps, limits, cache: BTreeMap::new() }
    }

    pub fn get(&mut self, i: usize, j: usize, l: usize) -> Result<&ComplexDims> {
        if !self.cache.contains_key(&(i, j, l)) {
            let dims = component_homology(&self.graph, &self.eps, i, j, l, &self.limits)?;
            self.cache.insert((i, j, l), dims);
        }
        Ok(&self.cache[&(i, j, l)])
    }

    /// Every component computed so far, in key order.
    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize, usize), &ComplexDims)> {
        self.cache.iter()
    }
}

/// `(i, j, l)` of the component computing `Hom(X_q, X_q′)` in `Γ̂_cyc`.
pub fn cyclic_component(q: HatVertex, qp: HatVertex, period: i64) -> (usize, usize, usize) {
    (qp.node, q.node, (q.level - qp.level).rem_euclid(period) as usize)
}

/// `E(q) = ⟨X_q, X_q′⟩` for all `q ∈ Γ̂_cyc`, knitted from the bipartite
/// slice shifted to pass through `q′`.
pub fn knit_euler(diagram: &DynkinDiagram, qp: HatVertex) -> Result<BTreeMap<HatVertex, i64>> {
    let graph = diagram.graph();
    let cyc = HatQuiver::cyclic(diagram);
    let qp = cyc.normalize(qp)?;
    let base = HeightFunction::bipartite(graph);
    let height = base.shifted(qp.level - base.at(qp.node));
    let paths_from_qp = projective_dimension_vector(graph, &height, qp.node);
    let values = knit(diagram, &height, |i| vec![paths_from_qp[i - 1]])?;
    let out: BTreeMap<HatVertex, i64> = values.into_iter().map(|(k, v)| (k, v[0])).collect();
    if out[&qp] != 1 {
        return Err(Error::KnittingInconsistency(format!("E({qp}) = {} ≠ 1", out[&qp])));
    }
    Ok(out)
}

/// The full table over `Γ̂_cyc²` by the chosen method.
pub fn hom_table(diagram: &DynkinDiagram, method: Method, limits: &Limits) -> Result<HomTable> {
    let cyc = HatQuiver::cyclic(diagram);
    let verts = cyc.vertices().to_vec();
    let mut entries = BTreeMap::new();
    match method {
        Method::Quotient => {
            let period = cyc.period().expect("cyclic");
            let mut cache = QuotientCache::new(diagram.graph(), EpsilonChoice::standard(diagram.graph()), *limits);
            for &q in &verts {
                for &qp in &verts {
                    let (i, j, l) = cyclic_component(q, qp, period);
                    let dims = cache.get(i, j, l)?;
                    let (hom, ext1) = (dims.h(0) as u64, dims.h(1) as u64);
                    let euler = hom as i64 - ext1 as i64;
                    entries.insert((q, qp), RHomProfile { source: q, target: qp, hom, ext1, euler });
                }
            }
        }
        Method::Knitting => {
            for &qp in &verts {
                let e = knit_euler(diagram, qp)?;
                for &q in &verts {
                    entries.insert((q, qp), RHomProfile::from_euler(q, qp, e[&q]));
                }
            }
        }
        Method::Oracle => {
            let table = oracle_euler_table(diagram, &HeightFunction::bipartite(diagram.graph()))?;
            for ((q, qp), e) in table {
                entries.insert((q, qp), RHomProfile::from_euler(q, qp, e));
            }
        }
    }
    Ok(HomTable { diagram: diagram.to_string(), method, entries })
}

/// Pairs violating `hom(q, q′) = ext1(q′, τq)`.
pub fn serre_violations(table: &HomTable, cyc: &HatQuiver) -> Result<Vec<(HatVertex, HatVertex)>> {
    serre_violations_with_shift(table, cyc, 1)
}

/// Pairs violating `hom(q, q′) = ext1(q′, τ^k q)`.
pub fn serre_violations_with_shift(
    table: &HomTable,
    cyc: &HatQuiver,
    k: i64,
) -> Result<Vec<(HatVertex, HatVertex)>> {
    let mut bad = Vec::new();
    for (&(q, qp), p) in &table.entries {
        let tq = cyc.tau(q, k)?;
        if table.get(qp, tq).ext1 != p.hom {
            bad.push((q, qp));
        }
    }
    Ok(bad)
}

/// Pairs violating `hom(τq, τq′) = hom(q, q′)` or the same for ext1.
pub fn tau_equivariance_violations(table: &HomTable, cyc: &HatQuiver) -> Result<Vec<(HatVertex, HatVertex)>> {
    let mut bad = Vec::new();
    for (&(q, qp), p) in &table.entries {
        let moved = table.get(cyc.tau(q, 1)?, cyc.tau(qp, 1)?);
        if (moved.hom, moved.ext1) != (p.hom, p.ext1) {
            bad.push((q, qp));
        }
    }
    Ok(bad)
}

/// Targets `q′` where `Σ_q euler(q, q′)` differs from its value at `τq′`.
pub fn row_sum_violations(table: &HomTable, cyc: &HatQuiver) -> Result<Vec<HatVertex>> {
    let mut sums: BTreeMap<HatVertex, i64> = BTreeMap::new();
    for (&(_, qp), p) in &table.entries {
        *sums.entry(qp).or_default() += p.euler;
    }
    let mut bad = Vec::new();
    for (&qp, &s) in &sums {
        if sums[&cyc.tau(qp, 1)?] != s {
            bad.push(qp);
        }
    }
    Ok(bad)
}

/// Diagonal entries other than `hom = 1, ext1 = 0`.
pub fn diagonal_violations(table: &HomTable) -> Vec<HatVertex> {
    table
        .entries
        .iter()
        .filter(|((q, qp), p)| q == qp && (p.hom, p.ext1) != (1, 0))
        .map(|(&(q, _), _)| q)
        .collect()
}

/// Components with more than one nonzero homology degree.
pub fn concentration_violations(cache: &QuotientCache) -> Vec<(usize, usize, usize)> {
    cache
        .components()
        .filter(|(_, d)| d.support().len() > 1)
        .map(|(&k, _)| k)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicityRow {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    /// `dim H_k(A_{i,j;l})` for `k = 0, 1, ...`.
    pub lower: Vec<usize>,
    /// `dim H_k(A_{i,j;l+2h})`.
    pub upper: Vec<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicityReport {
    pub coxeter_number: u32,
    pub rows: Vec<PeriodicityRow>,
    /// Components that exceeded the cutoff, as `(i, j, l)`.
    pub skipped: Vec<(usize, usize, usize)>,
    #[serde(skip)]
    pub first_cutoff: Option<Error>,
}

impl PeriodicityReport {
    pub fn passed(&self) -> bool {
        self.skipped.is_empty() && self.rows.iter().all(|r| r.holds)
    }
}

/// Checks `dim H_k(A_{i,j;l}) = dim H_{k+2}(A_{i,j;l+2h})` for all `k`, and
/// that `H_0, H_1` of the longer component vanish.
pub fn periodicity_check(diagram: &DynkinDiagram, l_max: usize, limits: &Limits) -> Result<PeriodicityReport> {
    let graph = diagram.graph();
    let eps = EpsilonChoice::standard(graph);
    let h = diagram.coxeter_number();
    let shift = 2 * h as usize;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut first_cutoff = None;
    for i in graph.nodes() {
        for j in graph.nodes() {
            for l in 0..=l_max {
                let lower = component_homology(graph, &eps, i, j, l, limits);
                let upper = component_homology(graph, &eps, i, j, l + shift, limits);
                let (lower, upper) = match (lower, upper) {
                    (Ok(a), Ok(b)) => (a.homology, b.homology),
                    (Err(e @ Error::SizeLimitExceeded { .. }), _) | (_, Err(e @ Error::SizeLimitExceeded { .. })) => {
                        skipped.push((i, j, l));
                        first_cutoff.get_or_insert(e);
                        continue;
                    }
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                };
                let at = |v: &[usize], k: usize| v.get(k).copied().unwrap_or(0);
                let len = lower.len().max(upper.len());
                let holds = (0..len).all(|k| at(&lower, k) == at(&upper, k + 2)) && at(&upper, 0) == 0 && at(&upper, 1) == 0;
                rows.push(PeriodicityRow { i, j, l, lower, upper, holds });
            }
        }
    }
    Ok(PeriodicityReport { coxeter_number: h, rows, skipped, first_cutoff })
}
