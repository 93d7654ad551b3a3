//! The translation quiver `Γ̂ ⊂ Γ × ℤ` and its cyclic quotient `Γ̂_cyc ⊂ Γ × ℤ_{2h}`.
//!
//! Vertices are the pairs `(i, n)` with `n + p(i)` even; every edge `i - j`
//! of the tree gives arrows `(i, n) → (j, n + 1)` and `(j, n) → (i, n + 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::dynkin::{DynkinDiagram, TreeGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HatVertex {
    pub node: usize,
    pub level: i64,
}

impl HatVertex {
    pub const fn new(node: usize, level: i64) -> Self {
        HatVertex { node, level }
    }
}

impl Ord for HatVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level, self.node).cmp(&(other.level, other.node))
    }
}

impl PartialOrd for HatVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HatVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.node, self.level)
    }
}

impl Serialize for HatVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.node as i64, self.level].serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Levels `lo..=hi` of `Γ̂`.
    Window { lo: i64, hi: i64 },
    /// Levels modulo `period = 2h`.
    Cyclic { period: i64 },
}

/// An arrow `(from, level) → (to, level + 1)`, identified by the oriented
/// tree edge and its source level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub level: i64,
}

#[derive(Clone, Debug)]
struct Twist {
    coxeter_number: i64,
    involution: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HatQuiver {
    graph: TreeGraph,
    mode: Mode,
    twist: Option<Twist>,
    vertices: Vec<HatVertex>,
    arrows: Vec<(HatVertex, HatVertex)>,
}

impl HatQuiver {
    /// Window `lo..=hi` of `Γ̂` for an arbitrary tree.
    pub fn window(graph: &TreeGraph, lo: i64, hi: i64) -> Self {
        Self::assemble(graph.clone(), Mode::Window { lo, hi }, None)
    }

    /// Window `lo..=hi` of `Γ̂` for a Dynkin diagram; `ν` and `γ` are available.
    pub fn dynkin_window(diagram: &DynkinDiagram, lo: i64, hi: i64) -> Self {
        Self::assemble(diagram.graph().clone(), Mode::Window { lo, hi }, Some(twist_of(diagram)))
    }

    /// The cyclic quiver `Γ̂_cyc` with levels in `0..2h`.
    pub fn cyclic(diagram: &DynkinDiagram) -> Self {
        let period = 2 * diagram.coxeter_number() as i64;
        Self::assemble(diagram.graph().clone(), Mode::Cyclic { period }, Some(twist_of(diagram)))
    }

    fn assemble(graph: TreeGraph, mode: Mode, twist: Option<Twist>) -> Self {
        let (lo, hi) = match mode {
            Mode::Window { lo, hi } => (lo, hi),
            Mode::Cyclic { period } => (0, period - 1),
        };
        let mut vertices = Vec::new();
        for level in lo..=hi {
            for i in graph.nodes() {
                if (level + graph.parity(i) as i64).rem_euclid(2) == 0 {
                    vertices.push(HatVertex::new(i, level));
                }
            }
        }
        let mut q = HatQuiver { graph, mode, twist, vertices, arrows: Vec::new() };
        let mut arrows = Vec::new();
        for &v in &q.vertices {
            for &j in q.graph.neighbors(v.node) {
                let target = HatVertex::new(j, v.level + 1);
                if let Ok(t) = q.normalize(target) {
                    arrows.push((v, t));
                }
            }
        }
        arrows.sort();
        q.arrows = arrows;
        q
    }

    pub fn graph(&self) -> &TreeGraph {
        &self.graph
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn period(&self) -> Option<i64> {
        match self.mode {
            Mode::Cyclic { period } => Some(period),
            Mode::Window { .. } => None,
        }
    }

    /// Vertices sorted by `(level, node)`.
    pub fn vertices(&self) -> &[HatVertex] {
        &self.vertices
    }

    /// Arrows as `(source, target)`, sorted.
    pub fn arrows(&self) -> &[(HatVertex, HatVertex)] {
        &self.arrows
    }

    /// Arrows in the `(edge, source level)` form.
    pub fn arrow_triples(&self) -> Vec<Arrow> {
        self.arrows
            .iter()
            .map(|(s, t)| Arrow { from: s.node, to: t.node, level: s.level })
            .collect()
    }

    /// Checks parity and reduces the level into range (cyclic) or checks the window.
    pub fn normalize(&self, v: HatVertex) -> Result<HatVertex> {
        if v.node == 0 || v.node > self.graph.node_count() {
            return Err(Error::InvalidVertex {
                node: v.node,
                level: v.level,
                reason: format!("node out of range 1..={}", self.graph.node_count()),
            });
        }
        if (v.level + self.graph.parity(v.node) as i64).rem_euclid(2) != 0 {
            return Err(Error::InvalidVertex {
                node: v.node,
                level: v.level,
                reason: "level + parity(node) must be even".into(),
            });
        }
        match self.mode {
            Mode::Cyclic { period } => Ok(HatVertex::new(v.node, v.level.rem_euclid(period))),
            Mode::Window { lo, hi } => {
                if (lo..=hi).contains(&v.level) {
                    Ok(v)
                } else {
                    Err(Error::WindowExceeded { node: v.node, level: v.level, lo, hi })
                }
            }
        }
    }

    pub fn contains(&self, v: HatVertex) -> bool {
        self.normalize(v).is_ok_and(|w| w == v)
    }

    /// `τ^k(i, n) = (i, n + 2k)`.
    pub fn tau(&self, q: HatVertex, k: i64) -> Result<HatVertex> {
        self.normalize(HatVertex::new(q.node, q.level + 2 * k))
    }

    /// `ν(i, n) = (ǐ, n + h - 2)`.
    pub fn nakayama(&self, q: HatVertex) -> Result<HatVertex> {
        let t = self.twist.as_ref().ok_or(Error::RequiresDynkin)?;
        self.normalize(HatVertex::new(t.involution[q.node - 1], q.level + t.coxeter_number - 2))
    }

    /// `γ(i, n) = (ǐ, n + h) = τ ν (i, n)`.
    pub fn twisted_nakayama(&self, q: HatVertex) -> Result<HatVertex> {
        let t = self.twist.as_ref().ok_or(Error::RequiresDynkin)?;
        self.normalize(HatVertex::new(t.involution[q.node - 1], q.level + t.coxeter_number))
    }

    /// Targets of arrows out of `q` (all of them, even outside a window).
    pub fn successors(&self, q: HatVertex) -> Vec<HatVertex> {
        self.graph
            .neighbors(q.node)
            .iter()
            .map(|&j| HatVertex::new(j, q.level + 1))
            .map(|v| self.normalize(v).unwrap_or(v))
            .collect()
    }

    pub fn predecessors(&self, q: HatVertex) -> Vec<HatVertex> {
        self.graph
            .neighbors(q.node)
            .iter()
            .map(|&j| HatVertex::new(j, q.level - 1))
            .map(|v| self.normalize(v).unwrap_or(v))
            .collect()
    }

    pub fn emit(&self, format: QuiverFormat) -> String {
        match format {
            QuiverFormat::Dot => self.emit_dot(),
            QuiverFormat::Json => self.emit_json(),
        }
    }

    /// DOT rendering; one node `"i_n"` per vertex.
    pub fn emit_dot(&self) -> String {
        let mut out = String::from("digraph hatquiver {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}_{}\" [label=\"{}\"];", v.node, v.level, v);
        }
        for (s, t) in &self.arrows {
            let _ = writeln!(out, "  \"{}_{}\" -> \"{}_{}\";", s.node, s.level, t.node, t.level);
        }
        out.push_str("}\n");
        out
    }

    /// `{"vertices":[{"node":i,"level":n}],"arrows":[[[i,n],[j,m]]]}`.
    pub fn emit_json(&self) -> String {
        #[derive(Serialize)]
        struct V {
            node: usize,
            level: i64,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            vertices: Vec<V>,
            arrows: &'a [(HatVertex, HatVertex)],
        }
        let doc = Doc {
            vertices: self.vertices.iter().map(|v| V { node: v.node, level: v.level }).collect(),
            arrows: &self.arrows,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuiverFormat {
    Dot,
    Json,
}

fn twist_of(d: &DynkinDiagram) -> Twist {
    Twist {
        coxeter_number: d.coxeter_number() as i64,
        involution: (1..=d.rank()).map(|i| d.involution(i)).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `𝐡 : Γ → ℤ` with `𝐡(j) = 𝐡(i) ± 1` on edges and `𝐡(i) ≡ p(i) mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeightFunction {
    values: Vec<i64>,
}

impl HeightFunction {
    pub fn new(graph: &TreeGraph, values: Vec<i64>) -> Result<Self> {
        if values.len() != graph.node_count() {
            return Err(Error::InvalidHeight(format!(
                "{} values for {} nodes",
                values.len(),
                graph.node_count()
            )));
        }
        for i in graph.nodes() {
            if (values[i - 1] - graph.parity(i) as i64).rem_euclid(2) != 0 {
                return Err(Error::InvalidHeight(format!("h({i}) has the wrong parity")));
            }
        }
        for &(a, b) in graph.edges() {
            if (values[a - 1] - values[b - 1]).abs() != 1 {
                return Err(Error::InvalidHeight(format!("|h({a}) - h({b})| != 1")));
            }
        }
        Ok(HeightFunction { values })
    }

    /// The bipartite height function `𝐡(i) = p(i)`.
    pub fn bipartite(graph: &TreeGraph) -> Self {
        HeightFunction { values: graph.nodes().map(|i| graph.parity(i) as i64).collect() }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, i: usize) -> i64 {
        self.values[i - 1]
    }

    /// Adds an even constant.
    pub fn shifted(&self, by: i64) -> Self {
        assert!(by % 2 == 0, "height shifts must be even");
        HeightFunction { values: self.values.iter().map(|v| v + by).collect() }
    }

    /// The induced orientation `Ω_𝐡`: `i → j` iff `𝐡(j) = 𝐡(i) + 1`.
    pub fn orientation(&self, graph: &TreeGraph) -> Vec<(usize, usize)> {
        let mut arrows: Vec<_> = graph
            .edges()
            .iter()
            .map(|&(a, b)| if self.at(b) == self.at(a) + 1 { (a, b) } else { (b, a) })
            .collect();
        arrows.sort_unstable();
        arrows
    }

    pub fn is_source(&self, graph: &TreeGraph, i: usize) -> bool {
        graph.neighbors(i).iter().all(|&j| self.at(j) == self.at(i) + 1)
    }

    pub fn is_sink(&self, graph: &TreeGraph, i: usize) -> bool {
        graph.neighbors(i).iter().all(|&j| self.at(j) == self.at(i) - 1)
    }

    pub fn sources(&self, graph: &TreeGraph) -> Vec<usize> {
        graph.nodes().filter(|&i| self.is_source(graph, i)).collect()
    }

    pub fn sinks(&self, graph: &TreeGraph) -> Vec<usize> {
        graph.nodes().filter(|&i| self.is_sink(graph, i)).collect()
    }

    /// `s_i^+` (at a source) raises `𝐡(i)` by 2; `s_i^-` (at a sink) lowers it by 2.
    pub fn reflect(&self, graph: &TreeGraph, i: usize, sign: Sign) -> Result<Self> {
        let (ok, delta, expected) = match sign {
            Sign::Plus => (self.is_source(graph, i), 2, "source"),
            Sign::Minus => (self.is_sink(graph, i), -2, "sink"),
        };
        if !ok {
            return Err(Error::NotSourceOrSink { node: i, expected });
        }
        let mut values = self.values.clone();
        values[i - 1] += delta;
        Ok(HeightFunction { values })
    }
}

/// The slice `Γ_𝐡 = {(i, 𝐡(i))}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub height: HeightFunction,
    pub vertices: Vec<HatVertex>,
    pub orientation: Vec<(usize, usize)>,
}

impl Slice {
    pub fn of(graph: &TreeGraph, height: &HeightFunction) -> Result<Self> {
        let height = HeightFunction::new(graph, height.values.clone())?;
        let vertices = graph.nodes().map(|i| HatVertex::new(i, height.at(i))).collect();
        let orientation = height.orientation(graph);
        Ok(Slice { height, vertices, orientation })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashMap, VecDeque};

    fn dyn_(s: &str) -> DynkinDiagram {
        DynkinDiagram::parse(s).unwrap()
    }

    #[test]
    fn tau_examples() {
        let a4 = dyn_("A4");
        let w = HatQuiver::dynkin_window(&a4, -20, 20);
        assert_eq!(w.tau(HatVertex::new(1, 0), 1).unwrap(), HatVertex::new(1, 2));
        let q = HatVertex::new(2, 3);
        assert_eq!(w.tau(q, 0).unwrap(), q);
        let cyc = HatQuiver::cyclic(&a4);
        for &v in cyc.vertices() {
            assert_eq!(cyc.tau(v, 5).unwrap(), v);
        }
        assert!(matches!(
            w.tau(HatVertex::new(1, 20), 1),
            Err(Error::WindowExceeded { .. })
        ));
    }

    #[test]
    fn nakayama_examples() {
        let a4 = dyn_("A4");
        let w = HatQuiver::dynkin_window(&a4, -30, 30);
        // p(1) = 0 here, so (1,1) is not a vertex; (1,0) and (1,2) are.
        assert_eq!(w.nakayama(HatVertex::new(1, 0)).unwrap(), HatVertex::new(4, 3));
        assert_eq!(w.nakayama(HatVertex::new(1, 2)).unwrap(), HatVertex::new(4, 5));
        assert_eq!(w.twisted_nakayama(HatVertex::new(1, 0)).unwrap(), HatVertex::new(4, 5));
        assert!(w.nakayama(HatVertex::new(1, 1)).is_err());
        let d4 = dyn_("D4");
        let w = HatQuiver::dynkin_window(&d4, -30, 30);
        for i in 1..=4 {
            let q = HatVertex::new(i, d4.parity(i) as i64);
            assert_eq!(w.nakayama(q).unwrap(), HatVertex::new(i, q.level + 4));
        }
        let plain = HatQuiver::window(d4.graph(), 0, 4);
        assert_eq!(plain.nakayama(HatVertex::new(1, 0)), Err(Error::RequiresDynkin));
    }

    #[test]
    fn cyclic_permutations_commute_with_tau() {
        for s in ["A1", "A2", "A4", "A5", "D4", "D5", "E6", "E7", "E8"] {
            let d = dyn_(s);
            let cyc = HatQuiver::cyclic(&d);
            let verts: BTreeSet<_> = cyc.vertices().iter().copied().collect();
            assert_eq!(verts.len(), d.rank() * d.coxeter_number() as usize, "{s}");
            let nu: BTreeSet<_> = verts.iter().map(|&v| cyc.nakayama(v).unwrap()).collect();
            let gamma: BTreeSet<_> =
                verts.iter().map(|&v| cyc.twisted_nakayama(v).unwrap()).collect();
            assert_eq!(nu, verts);
            assert_eq!(gamma, verts);
            let h = d.coxeter_number() as i64;
            for &v in &verts {
                let t = cyc.tau(v, 1).unwrap();
                assert_eq!(cyc.nakayama(t).unwrap(), cyc.tau(cyc.nakayama(v).unwrap(), 1).unwrap());
                let g = cyc.twisted_nakayama(v).unwrap();
                assert_eq!(cyc.twisted_nakayama(g).unwrap(), cyc.tau(v, h).unwrap());
                let n = cyc.nakayama(v).unwrap();
                assert_eq!(cyc.nakayama(n).unwrap(), cyc.tau(v, h - 2).unwrap());
            }
        }
    }

    #[test]
    fn degrees_match_tree() {
        let d5 = dyn_("D5");
        let w = HatQuiver::window(d5.graph(), -4, 12);
        let mut out: HashMap<HatVertex, usize> = HashMap::new();
        let mut inn: HashMap<HatVertex, usize> = HashMap::new();
        for (s, t) in w.arrows() {
            *out.entry(*s).or_default() += 1;
            *inn.entry(*t).or_default() += 1;
        }
        for &v in w.vertices() {
            if v.level > -4 && v.level < 12 {
                let deg = d5.graph().degree(v.node);
                assert_eq!(out.get(&v).copied().unwrap_or(0), deg);
                assert_eq!(inn.get(&v).copied().unwrap_or(0), deg);
            }
        }
        let cyc = HatQuiver::cyclic(&d5);
        assert_eq!(cyc.vertices().len(), 40);
        let arrows: usize = cyc.vertices().iter().map(|v| d5.graph().degree(v.node)).sum();
        assert_eq!(cyc.arrows().len(), arrows);
    }

    #[test]
    fn slice_examples() {
        let a2 = dyn_("A2");
        let h = HeightFunction::new(a2.graph(), vec![0, 1]).unwrap();
        let s = Slice::of(a2.graph(), &h).unwrap();
        assert_eq!(s.vertices, vec![HatVertex::new(1, 0), HatVertex::new(2, 1)]);
        assert_eq!(s.orientation, vec![(1, 2)]);

        let d5 = dyn_("D5");
        let b = HeightFunction::bipartite(d5.graph());
        let s = Slice::of(d5.graph(), &b).unwrap();
        for (a, c) in s.orientation {
            assert_eq!((d5.parity(a), d5.parity(c)), (0, 1));
        }
        let w = HatQuiver::window(d5.graph(), -10, 10);
        let shifted = Slice::of(d5.graph(), &b.shifted(2)).unwrap();
        let base = Slice::of(d5.graph(), &b).unwrap();
        for (x, y) in base.vertices.iter().zip(&shifted.vertices) {
            assert_eq!(w.tau(*x, 1).unwrap(), *y);
        }
        assert!(matches!(
            HeightFunction::new(a2.graph(), vec![0, 3]),
            Err(Error::InvalidHeight(_))
        ));
        assert!(matches!(
            HeightFunction::new(a2.graph(), vec![1, 2]),
            Err(Error::InvalidHeight(_))
        ));
    }

    #[test]
    fn reflection_moves() {
        let a2 = dyn_("A2");
        let g = a2.graph();
        let h = HeightFunction::new(g, vec![0, 1]).unwrap();
        let up = h.reflect(g, 1, Sign::Plus).unwrap();
        assert_eq!(up.values(), &[2, 1]);
        assert_eq!(up.reflect(g, 1, Sign::Minus).unwrap(), h);
        assert!(matches!(
            h.reflect(g, 2, Sign::Plus),
            Err(Error::NotSourceOrSink { node: 2, .. })
        ));
        assert!(matches!(h.reflect(g, 1, Sign::Minus), Err(Error::NotSourceOrSink { .. })));
    }

    #[test]
    fn a3_height_functions_are_connected() {
        // BFS over height functions on A_3 up to shifts by multiples of 2h = 8.
        let a3 = dyn_("A3");
        let g = a3.graph();
        let modulus = 2 * a3.coxeter_number() as i64;
        let reduce = |h: &HeightFunction| -> Vec<i64> {
            let off = h.values()[0].div_euclid(modulus) * modulus;
            h.values().iter().map(|v| v - off).collect()
        };
        let mut all = BTreeSet::new();
        for a in (0..modulus).step_by(2) {
            for s1 in [-1, 1] {
                for s2 in [-1, 1] {
                    let h = HeightFunction::new(g, vec![a, a + s1, a + s1 + s2]).unwrap();
                    all.insert(reduce(&h));
                }
            }
        }
        assert_eq!(all.len(), 16);
        let mut diameter = 0;
        for start in &all {
            let mut dist = HashMap::from([(start.clone(), 0usize)]);
            let mut queue = VecDeque::from([start.clone()]);
            while let Some(cur) = queue.pop_front() {
                let h = HeightFunction::new(g, cur.clone()).unwrap();
                for i in 1..=3 {
                    for sign in [Sign::Plus, Sign::Minus] {
                        if let Ok(next) = h.reflect(g, i, sign) {
                            let key = reduce(&next);
                            if !dist.contains_key(&key) {
                                dist.insert(key.clone(), dist[&cur] + 1);
                                queue.push_back(key);
                            }
                        }
                    }
                }
            }
            assert_eq!(dist.len(), all.len());
            diameter = diameter.max(*dist.values().max().unwrap());
        }
        assert!(diameter <= 12, "diameter {diameter}");
    }

    #[test]
    fn emission() {
        let a1 = dyn_("A1");
        let cyc = HatQuiver::cyclic(&a1);
        assert_eq!(cyc.vertices(), &[HatVertex::new(1, 0), HatVertex::new(1, 2)]);
        assert!(cyc.arrows().is_empty());

        let a2 = dyn_("A2");
        let w = HatQuiver::window(a2.graph(), 0, 2);
        assert_eq!(
            w.vertices(),
            &[HatVertex::new(1, 0), HatVertex::new(2, 1), HatVertex::new(1, 2)]
        );
        assert_eq!(
            w.arrows(),
            &[
                (HatVertex::new(1, 0), HatVertex::new(2, 1)),
                (HatVertex::new(2, 1), HatVertex::new(1, 2))
            ]
        );
        let json = w.emit_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["vertices"][1], serde_json::json!({"node": 2, "level": 1}));
        assert_eq!(v["arrows"][0], serde_json::json!([[1, 0], [2, 1]]));
        let dot = w.emit_dot();
        assert!(dot.contains("\"1_0\" -> \"2_1\";"));
        assert_eq!(dot, w.emit(QuiverFormat::Dot));
    }
}
