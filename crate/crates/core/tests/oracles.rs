//! Independent recomputations of derived values: closed-form root and Coxeter
//! counts, brute-force path enumeration, and Hom dimensions as path spaces
//! modulo the span of `u·θ_m·v`, ranked with plain rational elimination.

use std::collections::BTreeMap;

use meshroots::dgalgebra::{component_homology, enumerate_basis, path_count, EpsilonChoice};
use meshroots::roots::RootSystemOracle;
use meshroots::{DynkinDiagram, Limits, TreeGraph};
use num_rational::Ratio;
use num_traits::Zero;

fn dg(s: &str) -> DynkinDiagram {
    DynkinDiagram::parse(s).unwrap()
}

#[test]
fn coxeter_numbers_closed_form() {
    for n in 1..=8 {
        assert_eq!(dg(&format!("A{n}")).coxeter_number(), n as u32 + 1);
    }
    for n in 4..=10 {
        assert_eq!(dg(&format!("D{n}")).coxeter_number(), 2 * n as u32 - 2);
    }
    for (s, h) in [("E6", 12), ("E7", 18), ("E8", 30)] {
        assert_eq!(dg(s).coxeter_number(), h);
    }
}

#[test]
fn positive_root_counts_closed_form() {
    let mut cases: Vec<(String, usize)> = (1..=8).map(|n| (format!("A{n}"), n * (n + 1) / 2)).collect();
    cases.extend((4..=8).map(|n| (format!("D{n}"), n * (n - 1))));
    cases.extend([("E6".into(), 36), ("E7".into(), 63), ("E8".into(), 120)]);
    for (s, pos) in cases {
        let o = RootSystemOracle::new(&dg(&s)).unwrap();
        assert_eq!(o.positive_roots().len(), pos, "{s}");
        // Highest root heights: h - 1.
        let top = o.positive_roots().iter().map(|r| r.iter().sum::<i64>()).max().unwrap();
        assert_eq!(top, dg(&s).coxeter_number() as i64 - 1, "{s}");
    }
}

/// All walks of length `len` in the double quiver, as node sequences.
fn walks(g: &TreeGraph, i: usize, j: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(g: &TreeGraph, j: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let at = *cur.last().unwrap();
        if left == 0 {
            if at == j {
                out.push(cur.clone());
            }
            return;
        }
        for &n in g.neighbors(at) {
            cur.push(n);
            rec(g, j, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, j, len, &mut vec![i], &mut out);
    out
}

fn dense_rank(mut rows: Vec<Vec<Ratio<i64>>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c] / pivot[c];
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim e_i Π e_j` in length `l`: walks modulo the span of `u θ_m v`.
fn preprojective_dim(g: &TreeGraph, eps: &EpsilonChoice, i: usize, j: usize, l: usize) -> usize {
    let basis = walks(g, i, j, l);
    if l < 2 {
        return basis.len();
    }
    let index: BTreeMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut relations = Vec::new();
    for pos in 0..=l - 2 {
        for m in g.nodes() {
            for u in walks(g, i, m, pos) {
                for v in walks(g, m, j, l - 2 - pos) {
                    let mut row = vec![Ratio::from_integer(0); basis.len()];
                    for &n in g.neighbors(m) {
                        let mut w = u.clone();
                        w.push(n);
                        w.push(m);
                        w.extend_from_slice(&v[1..]);
                        row[index[&w]] += Ratio::from_integer(eps.sign(m, n));
                    }
                    relations.push(row);
                }
            }
        }
    }
    basis.len() - dense_rank(relations)
}

#[test]
fn h0_is_the_preprojective_algebra() {
    let limits = Limits::default();
    for (s, lmax) in [("A2", 5), ("A3", 7), ("A4", 6), ("D4", 6)] {
        let g = dg(s).graph().clone();
        let eps = EpsilonChoice::standard(&g);
        for i in g.nodes() {
            for j in g.nodes() {
                for l in 0..=lmax {
                    let h = component_homology(&g, &eps, i, j, l, &limits).unwrap();
                    assert_eq!(h.h(0), preprojective_dim(&g, &eps, i, j, l), "{s} ({i},{j};{l})");
                }
            }
        }
    }
}

#[test]
fn preprojective_total_dimension() {
    // dim Π(A_n) = n(n+1)(n+2)/6 and Π vanishes above length h - 2.
    let limits = Limits::default();
    for n in 1..=4usize {
        let d = dg(&format!("A{n}"));
        let g = d.graph();
        let eps = EpsilonChoice::standard(g);
        let h = d.coxeter_number() as usize;
        let mut total = 0;
        for i in g.nodes() {
            for j in g.nodes() {
                for l in 0..=h {
                    let h0 = component_homology(g, &eps, i, j, l, &limits).unwrap().h(0);
                    if l > h - 2 {
                        assert_eq!(h0, 0);
                    }
                    total += h0;
                }
            }
        }
        assert_eq!(total, n * (n + 1) * (n + 2) / 6, "A{n}");
    }
}

#[test]
fn path_counts_by_brute_force() {
    // Without jumps the count is the number of walks; with k jumps, choose
    // their positions among the l - 2k + 1 stops of a walk of length l - 2k.
    fn binom(n: usize, k: usize) -> u128 {
        (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128)
    }
    let limits = Limits::default();
    for s in ["A3", "D4"] {
        let g = dg(s).graph().clone();
        for i in g.nodes() {
            for j in g.nodes() {
                for l in 0..=7 {
                    for k in 0..=l / 2 {
                        let walks_len = walks(&g, i, j, l - 2 * k).len() as u128;
                        let stops = l - 2 * k + 1;
                        let expected = walks_len * binom(stops + k - 1, k);
                        assert_eq!(path_count(&g, i, j, l, k), expected, "{s} {i} {j} {l} {k}");
                        assert_eq!(enumerate_basis(&g, i, j, l, k, &limits).unwrap().len() as u128, expected);
                    }
                }
            }
        }
    }
}
