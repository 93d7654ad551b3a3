//! Grothendieck-group classes of the indecomposables `X_q`, knitted from a
//! slice, compared against a brute-force root system.
//!
//! Classes are written in the simple-module basis of `(Γ, Ω_𝐡)`, so the Euler
//! form is the hereditary one, `⟨e_i, e_j⟩ = δ_ij − #{i → j}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::dynkin::{simple_reflection, DynkinDiagram, TreeGraph};
use crate::error::{Error, Result};
use crate::hatquiver::{HatQuiver, HatVertex, HeightFunction, Sign};
use crate::matrix::IntMatrix;

/// Closure bound; E_8 has 240 roots.
const ROOT_BOUND: usize = 10_000;

pub type RootClass = Vec<i64>;

/// The root system generated by reflections from the Cartan matrix.
#[derive(Clone, Debug)]
pub struct RootSystemOracle {
    cartan: IntMatrix,
    roots: BTreeSet<RootClass>,
    reflections: Vec<IntMatrix>,
    w0: IntMatrix,
}

impl RootSystemOracle {
    pub fn new(diagram: &DynkinDiagram) -> Result<Self> {
        Self::from_graph(diagram.graph())
    }

    /// Fails with `NonFiniteType` when the closure does not terminate.
    pub fn from_graph(graph: &TreeGraph) -> Result<Self> {
        let cartan = graph.cartan();
        let n = graph.node_count();
        let reflections: Vec<IntMatrix> = (0..n).map(|i| simple_reflection(&cartan, i)).collect();
        let mut roots = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if roots.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(v) = queue.pop_front() {
            for s in &reflections {
                let w = s.apply(&v);
                if roots.insert(w.clone()) {
                    if roots.len() > ROOT_BOUND {
                        return Err(Error::NonFiniteType(ROOT_BOUND));
                    }
                    queue.push_back(w);
                }
            }
        }
        let w0 = longest(&reflections, n);
        Ok(RootSystemOracle { cartan, roots, reflections, w0 })
    }

    pub fn rank(&self) -> usize {
        self.cartan.nrows()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn roots(&self) -> &BTreeSet<RootClass> {
        &self.roots
    }

    pub fn positive_roots(&self) -> Vec<RootClass> {
        self.roots.iter().filter(|r| is_positive(r)).cloned().collect()
    }

    /// `s_i` for 1-based `i`.
    pub fn reflection(&self, i: usize) -> &IntMatrix {
        &self.reflections[i - 1]
    }

    pub fn longest_element(&self) -> &IntMatrix {
        &self.w0
    }

    /// `(u, v)` under the Cartan form.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        self.cartan.pair(u, v)
    }
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0)
}

/// Right-multiply by `s_i` while some `w(α_i)` is still positive.
fn longest(reflections: &[IntMatrix], n: usize) -> IntMatrix {
    let mut w = IntMatrix::identity(n);
    loop {
        let next = (0..n).find(|&i| is_positive(&w.column(i)));
        match next {
            Some(i) => w = &w * &reflections[i],
            None => return w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearForms {
    pub euler_matrix: IntMatrix,
    pub sym_matrix: IntMatrix,
}

impl BilinearForms {
    pub fn new(graph: &TreeGraph, height: &HeightFunction) -> Self {
        let n = graph.node_count();
        let mut euler = IntMatrix::identity(n);
        for (a, b) in height.orientation(graph) {
            euler[(a - 1, b - 1)] -= 1;
        }
        let sym = {
            let t = euler.transpose();
            let mut s = euler.clone();
            for i in 0..n {
                for j in 0..n {
                    s[(i, j)] += t[(i, j)];
                }
            }
            s
        };
        BilinearForms { euler_matrix: euler, sym_matrix: sym }
    }

    pub fn euler(&self, u: &[i64], v: &[i64]) -> i64 {
        self.euler_matrix.pair(u, v)
    }

    pub fn sym(&self, u: &[i64], v: &[i64]) -> i64 {
        self.sym_matrix.pair(u, v)
    }
}

/// `P_i(j) = 1` iff `Ω_𝐡` has a directed path `i → j`.
pub fn projective_dimension_vector(graph: &TreeGraph, height: &HeightFunction, i: usize) -> RootClass {
    let mut v = vec![0; graph.node_count()];
    let mut stack = vec![i];
    while let Some(a) = stack.pop() {
        v[a - 1] = 1;
        for &b in graph.neighbors(a) {
            if height.at(b) == height.at(a) + 1 {
                stack.push(b);
            }
        }
    }
    v
}

/// Classes `c(q)` for every `q ∈ Γ̂_cyc`, keyed by the normalized vertex.
#[derive(Clone, Debug)]
pub struct ClassMap {
    pub height: HeightFunction,
    pub classes: BTreeMap<HatVertex, RootClass>,
}

impl ClassMap {
    pub fn class(&self, q: HatVertex) -> &RootClass {
        &self.classes[&q]
    }
}

/// Knits `c(τq) = Σ_{q→q″} c(q″) − c(q)` upward from the slice of `height`
/// over two full periods, checking closure and `c(γq) = −c(q)`.
pub fn class_knitting(diagram: &DynkinDiagram, height: &HeightFunction) -> Result<ClassMap> {
    let graph = diagram.graph();
    let height = HeightFunction::new(graph, height.values().to_vec())?;
    let classes = knit(diagram, &height, |i| projective_dimension_vector(graph, &height, i))?;
    let cyc = HatQuiver::cyclic(diagram);
    for (&q, c) in &classes {
        let g = cyc.twisted_nakayama(q)?;
        let neg: RootClass = c.iter().map(|x| -x).collect();
        if classes[&g] != neg {
            return Err(Error::KnittingInconsistency(format!("c(γ{q}) ≠ −c({q})")));
        }
    }
    Ok(ClassMap { height, classes })
}

/// The mesh recursion `v(τq) = Σ_{q→q″} v(q″) − v(q)` run upward from the
/// slice values `init(i)` at `(i, 𝐡(i))`, folded onto `Γ̂_cyc`. Fails if the
/// values are not `2h`-periodic.
pub(crate) fn knit(
    diagram: &DynkinDiagram,
    height: &HeightFunction,
    init: impl Fn(usize) -> Vec<i64>,
) -> Result<BTreeMap<HatVertex, Vec<i64>>> {
    let graph = diagram.graph();
    let cyc = HatQuiver::cyclic(diagram);
    let h = diagram.coxeter_number() as i64;

    let mut win: BTreeMap<HatVertex, Vec<i64>> = BTreeMap::new();
    for i in graph.nodes() {
        win.insert(HatVertex::new(i, height.at(i)), init(i));
    }
    let lo = height.values().iter().min().copied().unwrap_or(0);
    let hi = height.values().iter().max().copied().unwrap_or(0) + 4 * h;
    for level in lo..=hi {
        for i in graph.nodes() {
            if level < height.at(i) + 2 || (level - height.at(i)) % 2 != 0 {
                continue;
            }
            let mut c: Vec<i64> = win[&HatVertex::new(i, level - 2)].iter().map(|x| -x).collect();
            for &j in graph.neighbors(i) {
                let mid = &win[&HatVertex::new(j, level - 1)];
                for (a, b) in c.iter_mut().zip(mid) {
                    *a += b;
                }
            }
            win.insert(HatVertex::new(i, level), c);
        }
    }

    let mut out = BTreeMap::new();
    for (v, c) in win {
        let key = cyc.normalize(v)?;
        match out.get(&key) {
            None => {
                out.insert(key, c);
            }
            Some(prev) if *prev == c => {}
            Some(_) => {
                return Err(Error::KnittingInconsistency(format!(
                    "value at {v} disagrees with its image {key} in Γ̂_cyc"
                )))
            }
        }
    }
    if out.len() != cyc.vertices().len() {
        return Err(Error::KnittingInconsistency("knitting did not cover Γ̂_cyc".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionEntry {
    pub vertex: HatVertex,
    pub class: RootClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub diagram: String,
    pub vertex_count: usize,
    pub root_count: usize,
    pub injective: bool,
    pub missing_roots: Vec<RootClass>,
    pub extra_classes: Vec<RootClass>,
    pub bad_norms: Vec<HatVertex>,
    pub bijection: Vec<BijectionEntry>,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        self.injective
            && self.missing_roots.is_empty()
            && self.extra_classes.is_empty()
            && self.bad_norms.is_empty()
            && self.vertex_count == self.root_count
    }

    /// `[{"vertex":[i,n],"class":[...]}, ...]`.
    pub fn bijection_json(&self) -> String {
        serde_json::to_string(&self.bijection).expect("serializable")
    }
}

/// Compares the knitted classes with the oracle root set.
pub fn realize_root_system(diagram: &DynkinDiagram, height: &HeightFunction) -> Result<RealizationReport> {
    let oracle = RootSystemOracle::new(diagram)?;
    let classes = class_knitting(diagram, height)?;
    let forms = BilinearForms::new(diagram.graph(), &classes.height);
    let found: BTreeSet<RootClass> = classes.classes.values().cloned().collect();
    let bad_norms = classes
        .classes
        .iter()
        .filter(|(_, c)| forms.sym(c, c) != 2)
        .map(|(&q, _)| q)
        .collect();
    Ok(RealizationReport {
        diagram: diagram.to_string(),
        vertex_count: classes.classes.len(),
        root_count: oracle.roots().len(),
        injective: found.len() == classes.classes.len(),
        missing_roots: oracle.roots().difference(&found).cloned().collect(),
        extra_classes: found.difference(oracle.roots()).cloned().collect(),
        bad_norms,
        bijection: classes
            .classes
            .iter()
            .map(|(&vertex, class)| BijectionEntry { vertex, class: class.clone() })
            .collect(),
    })
}

/// Gram matrix `(c(q), c(q′))` of all classes as CSV, rows and columns in vertex order.
pub fn gram_csv(classes: &ClassMap, forms: &BilinearForms) -> String {
    let verts: Vec<_> = classes.classes.keys().copied().collect();
    let mut out = String::from("vertex");
    for v in &verts {
        out.push_str(&format!(",\"{v}\""));
    }
    out.push('\n');
    for a in &verts {
        out.push_str(&format!("\"{a}\""));
        for b in &verts {
            out.push_str(&format!(",{}", forms.sym(classes.class(*a), classes.class(*b))));
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterElement {
    pub matrix: IntMatrix,
    pub order: Option<u32>,
    pub coxeter_number: u32,
    pub preserves_form: bool,
    /// For bipartite 𝐡: `C = ∏_{p(i)=0} s_i · ∏_{p(i)=1} s_i`.
    pub bipartite_factorization: Option<bool>,
}

impl CoxeterElement {
    pub fn passed(&self) -> bool {
        self.order == Some(self.coxeter_number)
            && self.preserves_form
            && self.bipartite_factorization != Some(false)
    }
}

/// The matrix with `C·c(q) = c(τq)` for all `q`, solved on the slice classes.
pub fn coxeter_element(diagram: &DynkinDiagram, height: &HeightFunction) -> Result<CoxeterElement> {
    let classes = class_knitting(diagram, height)?;
    let cyc = HatQuiver::cyclic(diagram);
    let graph = diagram.graph();
    let slice: Vec<HatVertex> = graph.nodes().map(|i| HatVertex::new(i, height.at(i))).collect();
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for &v in &slice {
        let q = cyc.normalize(v)?;
        src.push(classes.class(q).clone());
        dst.push(classes.class(cyc.tau(q, 1)?).clone());
    }
    let p = IntMatrix::from_columns(&src);
    let p_inv = p
        .integer_inverse()
        .ok_or_else(|| Error::NotWellDefined("slice classes are not a basis".into()))?;
    let c = &IntMatrix::from_columns(&dst) * &p_inv;
    for (&q, class) in &classes.classes {
        if c.apply(class) != *classes.class(cyc.tau(q, 1)?) {
            return Err(Error::NotWellDefined(format!("C·c({q}) ≠ c(τ{q})")));
        }
    }
    let forms = BilinearForms::new(graph, height);
    let preserves_form = &(&c.transpose() * &forms.sym_matrix) * &c == forms.sym_matrix;
    let bipartite_factorization = (*height == HeightFunction::bipartite(graph)
        || *height == HeightFunction::bipartite(graph).shifted(height.at(1) - graph.parity(1) as i64))
    .then(|| c == bipartite_coxeter(graph));
    let h = diagram.coxeter_number();
    Ok(CoxeterElement {
        order: c.order(4 * h),
        matrix: c,
        coxeter_number: h,
        preserves_form,
        bipartite_factorization,
    })
}

/// `∏_{p(i)=0} s_i · ∏_{p(i)=1} s_i` (the parity-1 batch acts first).
pub fn bipartite_coxeter(graph: &TreeGraph) -> IntMatrix {
    let cartan = graph.cartan();
    let n = graph.node_count();
    let batch = |p: u8| {
        graph
            .nodes()
            .filter(|&i| graph.parity(i) == p)
            .fold(IntMatrix::identity(n), |acc, i| &acc * &simple_reflection(&cartan, i - 1))
    };
    &batch(0) * &batch(1)
}

#[derive(Clone, Debug, Serialize)]
pub struct BgpReport {
    pub node: usize,
    pub sign: &'static str,
    pub mismatches: Vec<HatVertex>,
}

/// Compares classes knitted from `s_i^±𝐡` with `s_i` applied to classes knitted from `𝐡`.
pub fn bgp_compatibility(diagram: &DynkinDiagram, height: &HeightFunction, i: usize) -> Result<BgpReport> {
    let graph = diagram.graph();
    let sign = if height.is_source(graph, i) {
        Sign::Plus
    } else if height.is_sink(graph, i) {
        Sign::Minus
    } else {
        return Err(Error::NotSourceOrSink { node: i, expected: "source or sink" });
    };
    let reflected = height.reflect(graph, i, sign)?;
    let before = class_knitting(diagram, height)?;
    let after = class_knitting(diagram, &reflected)?;
    let s = simple_reflection(&graph.cartan(), i - 1);
    let mismatches = before
        .classes
        .iter()
        .filter(|(q, c)| s.apply(c) != after.classes[q])
        .map(|(&q, _)| q)
        .collect();
    Ok(BgpReport {
        node: i,
        sign: if sign == Sign::Plus { "+" } else { "-" },
        mismatches,
    })
}

/// `euler(q, q′) = ⟨c(q), c(q′)⟩`, keyed by `(q, q′)`.
pub fn oracle_euler_table(
    diagram: &DynkinDiagram,
    height: &HeightFunction,
) -> Result<BTreeMap<(HatVertex, HatVertex), i64>> {
    let classes = class_knitting(diagram, height)?;
    let forms = BilinearForms::new(diagram.graph(), height);
    let mut out = BTreeMap::new();
    for (&q, a) in &classes.classes {
        for (&qp, b) in &classes.classes {
            out.insert((q, qp), forms.euler(a, b));
        }
    }
    Ok(out)
}
