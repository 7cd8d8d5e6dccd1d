//! Second determinant implementation: literal Laplace expansion along the
//! top row, recursing on minors, with H-monomials kept as raw words.

use std::collections::BTreeMap;

use itertools::Itertools;

use nsym::algebra::{Basis, BasisExpr, Composition, IntSeq};
use nsym::expansions::{immaculate_to_h, skew_immaculate_to_h, SkewShape};
use nsym::oracles::{jacobi_trudi_matrix, ndet_expand};
use nsym::Options;

type Words = BTreeMap<Vec<u32>, i64>;

fn laplace(rows: &[Vec<i64>], cols: &[usize]) -> Words {
    let mut out = Words::new();
    if rows.is_empty() {
        out.insert(Vec::new(), 1);
        return out;
    }
    for (pos, &j) in cols.iter().enumerate() {
        let entry = rows[0][j];
        if entry < 0 {
            continue;
        }
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
        for (word, coeff) in laplace(&rows[1..], &rest) {
            let mut w = Vec::with_capacity(word.len() + 1);
            if entry > 0 {
                w.push(entry as u32);
            }
            w.extend(word);
            *out.entry(w).or_insert(0) += sign * coeff;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn laplace_expr(mu: &IntSeq, nu: Option<&IntSeq>) -> BasisExpr {
    let m = jacobi_trudi_matrix(mu, nu);
    let cols: Vec<usize> = (0..m.k()).collect();
    BasisExpr::from_terms(
        Basis::H,
        laplace(m.rows(), &cols).into_iter().map(|(w, c)| (Composition::new(w).unwrap(), c)),
    )
}

fn box_shapes(lo: i64, hi: i64, k: usize) -> impl Iterator<Item = IntSeq> {
    (0..k).map(|_| lo..=hi).multi_cartesian_product().map(IntSeq::new)
}

#[test]
fn permutation_sum_matches_laplace() {
    let opts = Options::default();
    for k in 0..=4 {
        for mu in box_shapes(-2, 3, k) {
            let m = jacobi_trudi_matrix(&mu, None);
            assert_eq!(ndet_expand(&m, &opts).unwrap(), laplace_expr(&mu, None), "mu = {}", mu);
        }
    }
}

#[test]
fn skew_permutation_sum_matches_laplace() {
    let opts = Options::default();
    for k in 1..=3 {
        for mu in box_shapes(-1, 3, k) {
            for nu in box_shapes(-1, 2, k) {
                let m = jacobi_trudi_matrix(&mu, Some(&nu));
                assert_eq!(ndet_expand(&m, &opts).unwrap(), laplace_expr(&mu, Some(&nu)), "{}/{}", mu, nu);
            }
        }
    }
}

#[test]
fn coverings_match_laplace() {
    let opts = Options::default();
    for mu in box_shapes(-1, 4, 4) {
        assert_eq!(immaculate_to_h(&mu, &opts).unwrap(), laplace_expr(&mu, None), "mu = {}", mu);
    }
    for mu in box_shapes(0, 3, 3) {
        for nu in box_shapes(-2, 3, 3) {
            let shape = SkewShape::new(mu.clone(), nu.clone());
            assert_eq!(skew_immaculate_to_h(&shape, &opts).unwrap(), laplace_expr(&mu, Some(&nu)), "{}", shape);
        }
    }
}

#[test]
fn top_row_order_matters() {
    // the determinant is not symmetric under reversing rows
    let mu = IntSeq::from([1, 2]);
    let rev = IntSeq::from([2, 1]);
    let a = laplace_expr(&mu, None);
    let b = laplace_expr(&rev, None);
    assert_ne!(a, b);
    assert_eq!(b, BasisExpr::parse_text("H(2,1) - H(3)", Basis::H).unwrap());
    assert_eq!(a, BasisExpr::parse_text("H(1,2) - H(2,1)", Basis::H).unwrap());
}
