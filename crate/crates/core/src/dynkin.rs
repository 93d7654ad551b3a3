//! Simply-laced Dynkin diagrams and general trees.
//!
//! Nodes are labelled `1..=n` everywhere in the public API. Labelling of the
//! standard diagrams:
//!
//! * `A_n`: the path `1 - 2 - ... - n`;
//! * `D_n`: the path `1 - ... - (n-2)` with `n-1` and `n` both attached to `n-2`;
//! * `E_n`: the path `1 - ... - (n-1)` with `n` attached to node `3`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::roots::RootSystemOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// A `(family, rank)` pair such as `D5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagramSpec {
    pub family: Family,
    pub rank: usize,
}

impl DiagramSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DiagramSpec { family, rank })
        } else {
            Err(Error::UnsupportedDiagram(format!("{family:?}{rank}")))
        }
    }
}

impl FromStr for DiagramSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedDiagram(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank: usize = digits.parse().map_err(|_| bad())?;
        DiagramSpec::new(family, rank).map_err(|_| bad())
    }
}

impl fmt::Display for DiagramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// A finite tree on nodes `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    parity: Vec<u8>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeJson {
    nodes: usize,
    edges: Vec<[usize; 2]>,
}

impl TreeGraph {
    /// Validates that `edges` form a tree on `1..=n` and computes the parity
    /// 2-colouring with `p(1) = 0`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a tree needs at least one node".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges on {n} nodes (a tree has {})",
                edges.len(),
                n - 1
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidTree(format!("edge {a}-{b} out of range 1..={n}")));
            }
            if a == b {
                return Err(Error::InvalidTree(format!("self-loop at {a}")));
            }
            let e = (a.min(b), a.max(b));
            if normalized.contains(&e) {
                return Err(Error::InvalidTree(format!("multi-edge {}-{}", e.0, e.1)));
            }
            normalized.push(e);
            adjacency[a - 1].push(b);
            adjacency[b - 1].push(a);
        }
        normalized.sort_unstable();
        for adj in &mut adjacency {
            adj.sort_unstable();
        }

        let mut parity = vec![u8::MAX; n];
        parity[0] = 0;
        let mut queue = VecDeque::from([1usize]);
        while let Some(i) = queue.pop_front() {
            for &j in &adjacency[i - 1] {
                if parity[j - 1] == u8::MAX {
                    parity[j - 1] = 1 - parity[i - 1];
                    queue.push_back(j);
                }
            }
        }
        if parity.contains(&u8::MAX) {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        Ok(TreeGraph { n, edges: normalized, adjacency, parity })
    }

    /// Parses `{"nodes": n, "edges": [[i, j], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TreeJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidTree(e.to_string()))?;
        let edges: Vec<_> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(raw.nodes, &edges)
    }

    /// The star with centre `1` and `arms` leaves; `star(4)` is the affine `D̃_4` tree.
    pub fn star(arms: usize) -> Self {
        let edges: Vec<_> = (2..=arms + 1).map(|j| (1, j)).collect();
        Self::new(arms + 1, &edges).expect("a star is a tree")
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Edges as sorted pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i - 1]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i - 1].len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i - 1].binary_search(&j).is_ok()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i - 1]
    }

    /// Generalized Cartan matrix `2I - adjacency`.
    pub fn cartan(&self) -> IntMatrix {
        let mut c = IntMatrix::identity(self.n);
        for i in 0..self.n {
            c[(i, i)] = 2;
        }
        for &(a, b) in &self.edges {
            c[(a - 1, b - 1)] = -1;
            c[(b - 1, a - 1)] = -1;
        }
        c
    }

    /// Tree distance between two nodes.
    pub fn distance(&self, from: usize, to: usize) -> usize {
        let mut dist = vec![usize::MAX; self.n];
        dist[from - 1] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(i) = queue.pop_front() {
            if i == to {
                break;
            }
            for &j in self.neighbors(i) {
                if dist[j - 1] == usize::MAX {
                    dist[j - 1] = dist[i - 1] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist[to - 1]
    }
}

/// A simply-laced Dynkin diagram with its Cartan data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    spec: DiagramSpec,
    graph: TreeGraph,
    cartan: IntMatrix,
    coxeter_number: u32,
    involution: Vec<usize>,
}

impl DynkinDiagram {
    pub fn build(spec: DiagramSpec) -> Result<Self> {
        let DiagramSpec { family, rank: n } = DiagramSpec::new(spec.family, spec.rank)?;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let path_len = match family {
            Family::A => n,
            Family::D => n - 2,
            Family::E => n - 1,
        };
        edges.extend((1..path_len).map(|i| (i, i + 1)));
        match family {
            Family::A => {}
            Family::D => {
                edges.push((n - 2, n - 1));
                edges.push((n - 2, n));
            }
            Family::E => edges.push((3, n)),
        }
        let graph = TreeGraph::new(n, &edges)?;
        let cartan = graph.cartan();

        let mut involution: Vec<usize> = (1..=n).collect();
        match family {
            Family::A => involution = (1..=n).map(|i| n + 1 - i).collect(),
            Family::D if n % 2 == 1 => involution.swap(n - 2, n - 1),
            Family::E if n == 6 => {
                involution.swap(0, 4);
                involution.swap(1, 3);
            }
            _ => {}
        }

        let coxeter_number = coxeter_matrix(&cartan)
            .order(1000)
            .ok_or(Error::NonFiniteType(1000))?;

        Ok(DynkinDiagram { spec, graph, cartan, coxeter_number, involution })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::build(text.parse()?)
    }

    pub fn spec(&self) -> DiagramSpec {
        self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn graph(&self) -> &TreeGraph {
        &self.graph
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Coxeter number `h`, the order of `s_1 s_2 ... s_n`.
    pub fn coxeter_number(&self) -> u32 {
        self.coxeter_number
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.graph.parity(i)
    }

    /// The involution `i ↦ ǐ` with `-α_i = w₀(α_ǐ)`.
    pub fn involution(&self, i: usize) -> usize {
        self.involution[i - 1]
    }

    /// Checks the stored involution against the longest Weyl element.
    pub fn involution_check(&self) -> bool {
        let Ok(oracle) = RootSystemOracle::new(self) else {
            return false;
        };
        let n = self.rank();
        (1..=n).all(|i| {
            let mut alpha = vec![0; n];
            alpha[self.involution(i) - 1] = 1;
            let image = oracle.longest_element().apply(&alpha);
            image.iter().enumerate().all(|(j, &x)| x == if j + 1 == i { -1 } else { 0 })
        })
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

/// Matrix of the simple reflection `s_i(v) = v - (v, α_i) α_i` in the simple-root basis.
pub(crate) fn simple_reflection(cartan: &IntMatrix, i: usize) -> IntMatrix {
    let n = cartan.nrows();
    let mut s = IntMatrix::identity(n);
    for j in 0..n {
        s[(i, j)] -= cartan[(i, j)];
    }
    s
}

fn coxeter_matrix(cartan: &IntMatrix) -> IntMatrix {
    (0..cartan.nrows()).fold(IntMatrix::identity(cartan.nrows()), |acc, i| {
        &acc * &simple_reflection(cartan, i)
    })
}
