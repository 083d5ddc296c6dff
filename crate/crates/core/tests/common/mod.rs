//! Brute-force oracles built from first principles, sharing no algorithm
//! with the library beyond polynomial arithmetic.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gkm_core::poly_core::{monomials_of_degree, LinearForm, Monomial, Polynomial, Rational};
use gkm_core::LabeledGraph;
use num_traits::{One, Zero};

/// Rank by plain Gaussian elimination with full row swaps.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for k in c..cols {
                let sub = &f * &rows[r][k];
                rows[i][k] -= sub;
            }
        }
        r += 1;
    }
    r
}

fn coefficient_rows(polys: &[Polynomial], monomials: &[Monomial]) -> Vec<Vec<Rational>> {
    monomials
        .iter()
        .map(|m| polys.iter().map(|p| p.coefficient(m)).collect())
        .collect()
}

/// Ideal membership by cofactor search: `p` is in `<forms>` iff each
/// homogeneous part `p_d` equals `sum h_i e_i` for some `h_i` of degree
/// `d - 1`, decided by comparing ranks with and without `p_d`.
pub fn ideal_member(forms: &[LinearForm], p: &Polynomial) -> bool {
    let n = p.nvars();
    let Some(top) = p.degree() else {
        return true;
    };
    for d in 0..=top {
        let part = p.homogeneous_part(d);
        if part.is_zero() {
            continue;
        }
        if d == 0 || forms.is_empty() {
            return false;
        }
        let mut generators = Vec::new();
        for e in forms {
            for m in monomials_of_degree(n, d - 1) {
                generators.push(&Polynomial::monomial(m, Rational::one()) * &e.to_polynomial());
            }
        }
        let targets = monomials_of_degree(n, d);
        let base = rank(transpose(coefficient_rows(&generators, &targets)));
        generators.push(part);
        let with = rank(transpose(coefficient_rows(&generators, &targets)));
        if with != base {
            return false;
        }
    }
    true
}

pub fn divides(e: &LinearForm, p: &Polynomial) -> bool {
    ideal_member(std::slice::from_ref(e), p)
}

fn transpose(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let cols = rows.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Solution space of `f(src) - f(dst) = label * h_e` in degree `d`, with
/// unknowns the degree-`d` coefficients of every `f(v)` and degree-`d-1`
/// coefficients of every `h_e`. Since labels are nonzero, `h` is determined
/// by `f`, so this is isomorphic to `H^d`. Returns the vertex blocks of a
/// basis, as `[vertex][monomial]` coefficient arrays.
pub fn cohomology_solutions(g: &LabeledGraph, d: u32) -> Vec<Vec<Vec<Rational>>> {
    let n = g.nvars();
    let mons = monomials_of_degree(n, d);
    let lower = if d == 0 { Vec::new() } else { monomials_of_degree(n, d - 1) };
    let nv = g.num_vertices();
    let f_cols = nv * mons.len();
    let cols = f_cols + g.num_edges() * lower.len();
    let mon_index: BTreeMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        let mut block = vec![vec![Rational::zero(); cols]; mons.len()];
        for (i, row) in block.iter_mut().enumerate() {
            row[e.src * mons.len() + i] += Rational::one();
            row[e.dst * mons.len() + i] -= Rational::one();
        }
        for (j, m) in lower.iter().enumerate() {
            let prod = &Polynomial::monomial(m.clone(), Rational::one()) * &e.label.to_polynomial();
            for (mm, c) in prod.terms() {
                block[mon_index[mm]][f_cols + k * lower.len() + j] -= c;
            }
        }
        rows.extend(block);
    }
    let basis = nullspace(rows, cols);
    basis
        .into_iter()
        .map(|v| {
            (0..nv)
                .map(|u| v[u * mons.len()..(u + 1) * mons.len()].to_vec())
                .collect()
        })
        .collect()
}

pub fn cohomology_dim(g: &LabeledGraph, d: u32) -> usize {
    cohomology_solutions(g, d).len()
}

/// Rank of the restriction `H^d(g) -> H^d(sub)` compared with `dim H^d(sub)`.
pub fn restriction_surjective(g: &LabeledGraph, sub: &LabeledGraph, d: u32) -> bool {
    let keep: Vec<usize> = sub.ids().iter().map(|id| g.index_of(id).unwrap()).collect();
    let images: Vec<Vec<Rational>> = cohomology_solutions(g, d)
        .into_iter()
        .map(|blocks| keep.iter().flat_map(|&v| blocks[v].clone()).collect())
        .collect();
    let image = if images.is_empty() { 0 } else { rank(images) };
    image == cohomology_dim(sub, d)
}

fn nullspace(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    // reduced row echelon form, then read off one vector per free column
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..cols {
                    let sub = &f * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    (0..cols)
        .filter(|c| !pivot_set.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

/// Tableau criterion: `u <= w` iff for every `k` the sorted first `k`
/// entries of `u` are entrywise at most those of `w`.
pub fn tableau_leq(u: &[u8], w: &[u8]) -> bool {
    (1..=u.len()).all(|k| {
        let mut a = u[..k].to_vec();
        let mut b = w[..k].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.iter().zip(&b).all(|(x, y)| x <= y)
    })
}

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn poly(s: &str, n: usize) -> Polynomial {
    Polynomial::parse(s, n).unwrap()
}

pub fn form(c: &[i64]) -> LinearForm {
    LinearForm::from_ints(c).unwrap()
}
