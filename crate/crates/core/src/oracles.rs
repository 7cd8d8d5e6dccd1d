//! Determinant computations that do not use tunnel hooks, plus the duality
//! check between the immaculate and monomial expansions.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{normalize_h_index, Basis, BasisExpr, Composition, IntSeq};
use crate::error::Result;
use crate::expansions::{immaculate_to_h, monomial_to_dual_immaculate};
use crate::Options;

/// Square grid of raw H subscripts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JTMatrix {
    entries: Vec<Vec<i64>>,
}

impl JTMatrix {
    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }
}

/// Entry `(i, j)` is `mu_i + j - i`, or `(mu_i - i) - (nu_j - j)` with a
/// skew. The shorter sequence is zero-padded.
pub fn jacobi_trudi_matrix(mu: &IntSeq, nu: Option<&IntSeq>) -> JTMatrix {
    let k = mu.len().max(nu.map_or(0, |n| n.len()));
    let mu = mu.padded(k);
    let nu = nu.map_or_else(|| IntSeq::zeros(k), |n| n.padded(k));
    let entries = (0..k).map(|i| (0..k).map(|j| (mu[i] - i as i64) - (nu[j] - j as i64)).collect()).collect();
    JTMatrix { entries }
}

fn inversion_parity(p: &[usize]) -> i64 {
    let mut n = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                n += 1;
            }
        }
    }
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Visits `(sign, row-ordered subscripts)` for every permutation.
fn permutation_terms(m: &JTMatrix, mut visit: impl FnMut(i64, Vec<i64>)) {
    let k = m.k();
    for p in (0..k).permutations(k) {
        let subs = p.iter().enumerate().map(|(i, &j)| m.get(i, j)).collect();
        visit(inversion_parity(&p), subs);
    }
}

/// Row-ordered noncommutative determinant in the H basis.
pub fn ndet_expand(m: &JTMatrix, opts: &Options) -> Result<BasisExpr> {
    opts.check(m.k())?;
    let mut out = BasisExpr::zero(Basis::H);
    permutation_terms(m, |sign, subs| {
        if let Some(index) = normalize_h_index(&subs) {
            out.add_term(index, sign);
        }
    });
    Ok(out)
}

/// Jacobi-Trudi determinant with commuting `h`'s; terms are indexed by
/// partitions.
pub fn commutative_jacobi_trudi(lambda: &IntSeq, nu: Option<&IntSeq>, opts: &Options) -> Result<BasisExpr> {
    let m = jacobi_trudi_matrix(lambda, nu);
    opts.check(m.k())?;
    let mut out = BasisExpr::zero(Basis::HSym);
    permutation_terms(&m, |sign, mut subs| {
        if subs.iter().all(|&v| v >= 0) {
            subs.sort_unstable_by(|a, b| b.cmp(a));
            let index = normalize_h_index(&subs).expect("nonnegative");
            out.add_term(index, sign);
        }
    });
    Ok(out)
}

/// Outcome of a verification sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub n: usize,
    pub pass: bool,
    pub counterexample: Option<serde_json::Value>,
}

impl Report {
    pub fn passed(check: &str, n: usize) -> Self {
        Report { check: check.to_string(), n, pass: true, counterexample: None }
    }

    pub fn failed(check: &str, n: usize, counterexample: serde_json::Value) -> Self {
        Report { check: check.to_string(), n, pass: false, counterexample: Some(counterexample) }
    }
}

/// Compares `B[alpha][mu]` (dual immaculate coefficients of `M_alpha`) with
/// `A[mu][alpha]` (H coefficients of `I_mu`) over all compositions of `n`.
pub fn duality_transpose_check(n: usize, opts: &Options) -> Result<Report> {
    opts.check(n)?;
    let comps = Composition::all_of(n as u32);
    let mut a: BTreeMap<(Composition, Composition), i64> = BTreeMap::new();
    for beta in &comps {
        for (alpha, c) in immaculate_to_h(&beta.to_int_seq(), opts)?.terms() {
            a.insert((beta.clone(), alpha.clone()), c);
        }
    }
    for alpha in &comps {
        let row = monomial_to_dual_immaculate(alpha, opts)?;
        for mu in &comps {
            let b = row.coeff(mu);
            let at = a.get(&(mu.clone(), alpha.clone())).copied().unwrap_or(0);
            if b != at {
                return Ok(Report::failed(
                    "duality_transpose",
                    n,
                    serde_json::json!({
                        "alpha": alpha.parts(),
                        "mu": mu.parts(),
                        "monomial_coeff": b,
                        "immaculate_coeff": at,
                    }),
                ));
            }
        }
    }
    Ok(Report::passed("duality_transpose", n))
}
