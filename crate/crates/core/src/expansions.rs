//! Expansions built from tunnel hook coverings.

use std::fmt;

use serde::Serialize;

use crate::algebra::{
    flatten, h_multiply, linear_permutations, normalize_h_index, Basis, BasisExpr, Composition, IntSeq,
};
use crate::diagram::{build_diagram, Cell};
use crate::error::{Error, Result};
use crate::thc::{fold_coverings, TunnelHookCovering};
use crate::Options;

/// A pair `mu/nu` of integer sequences of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SkewShape {
    pub mu: IntSeq,
    pub nu: IntSeq,
}

impl SkewShape {
    /// Zero-pads whichever sequence is shorter.
    pub fn new(mu: IntSeq, nu: IntSeq) -> Self {
        let k = mu.len().max(nu.len());
        SkewShape { mu: mu.padded(k), nu: nu.padded(k) }
    }

    pub fn straight(mu: IntSeq) -> Self {
        let k = mu.len();
        SkewShape { mu, nu: IntSeq::zeros(k) }
    }

    pub fn k(&self) -> usize {
        self.mu.len()
    }

    /// True when `nu` is a nonnegative partition, so the shape has a
    /// diagram of its own.
    pub fn has_partition_skew(&self) -> bool {
        self.nu.iter().all(|&v| v >= 0) && self.nu.is_weakly_decreasing()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nu.is_all_zero() {
            write!(f, "{}", self.mu)
        } else {
            write!(f, "{}/{}", self.mu, self.nu)
        }
    }
}

fn add_covering(mut acc: BasisExpr, g: TunnelHookCovering) -> BasisExpr {
    if let Some(index) = g.h_index() {
        acc.add_term(index, g.total_sign as i64);
    }
    acc
}

fn merge(mut a: BasisExpr, b: BasisExpr) -> BasisExpr {
    a.merge(&b).expect("same basis");
    a
}

fn covering_sum(mu: &IntSeq, nu: &IntSeq, opts: &Options) -> Result<BasisExpr> {
    fold_coverings(mu, nu, opts, || BasisExpr::zero(Basis::H), add_covering, merge)
}

/// `I_mu` in the H basis, summed over all tunnel hook coverings of `D_mu`.
pub fn immaculate_to_h(mu: &IntSeq, opts: &Options) -> Result<BasisExpr> {
    covering_sum(mu, &IntSeq::zeros(mu.len()), opts)
}

/// `I_{mu/nu}` in the H basis for arbitrary integer `nu`.
pub fn skew_immaculate_to_h(shape: &SkewShape, opts: &Options) -> Result<BasisExpr> {
    opts.check(shape.k())?;
    if shape.has_partition_skew() {
        return covering_sum(&shape.mu, &shape.nu, opts);
    }
    let st = straighten_skew(shape);
    if st.sign == 0 {
        return Ok(BasisExpr::zero(Basis::H));
    }
    Ok(covering_sum(&st.shape.mu, &st.shape.nu, opts)?.scaled(st.sign as i64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Straightened {
    /// `-1`, `0` or `1`; zero means the shape's function vanishes.
    pub sign: i8,
    pub shape: SkewShape,
}

/// Rewrites `mu/nu` as `sign * I_{mu'/nu'}` with `nu'` a nonnegative
/// partition. Negative entries of `nu` are lifted first by adding the same
/// constant to every entry of both sequences; then adjacent columns are
/// swapped, `(l_p, l_{p+1}) -> (l_{p+1} - 1, l_p + 1)`, until `nu` is
/// weakly decreasing.
pub fn straighten_skew(shape: &SkewShape) -> Straightened {
    let mut mu = shape.mu.to_vec();
    let mut nu = shape.nu.to_vec();
    if let Some(&low) = nu.iter().min() {
        if low < 0 {
            mu.iter_mut().for_each(|v| *v -= low);
            nu.iter_mut().for_each(|v| *v -= low);
        }
    }
    let mut sign = 1i8;
    loop {
        if nu.windows(2).any(|w| w[1] == w[0] + 1) {
            sign = 0;
            break;
        }
        let Some(p) = nu.windows(2).position(|w| w[1] > w[0]) else { break };
        let (a, b) = (nu[p], nu[p + 1]);
        nu[p] = b - 1;
        nu[p + 1] = a + 1;
        sign = -sign;
    }
    Straightened { sign, shape: SkewShape { mu: mu.into(), nu: nu.into() } }
}

/// One term `sign * H_prefix * I_shape` of a prefix decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixTerm {
    pub sign: i8,
    /// Raw H subscripts; normalize before use.
    pub prefix: IntSeq,
    pub shape: SkewShape,
}

impl PrefixTerm {
    /// This term in the H basis.
    pub fn to_h(&self, opts: &Options) -> Result<BasisExpr> {
        let Some(index) = normalize_h_index(&self.prefix) else {
            return Ok(BasisExpr::zero(Basis::H));
        };
        let head = BasisExpr::monomial(Basis::H, index, self.sign as i64);
        h_multiply(&head, &skew_immaculate_to_h(&self.shape, opts)?)
    }
}

/// Splits `I_mu` after its first `m` rows: one term per linear permutation
/// `pi` of `m` values from `1..=k`, with prefix `(mu_i - i + pi_i)` and the
/// skew shape left by the first `m` hooks.
pub fn skew_prefix_decomposition(mu: &IntSeq, m: usize, opts: &Options) -> Result<Vec<PrefixTerm>> {
    let k = mu.len();
    opts.check(k)?;
    if m == 0 || m > k {
        return Err(Error::PrefixOutOfRange { m, k });
    }
    let mut out = Vec::new();
    for pi in linear_permutations(k, m)? {
        let chosen = pi.chosen();
        let cells: Vec<Cell> = (0..m)
            .map(|r| {
                let shift = chosen[..r].iter().filter(|&&x| x > chosen[r]).count();
                Cell::new(chosen[r] + shift, 1 + shift)
            })
            .collect();
        let (deltas, nu) = realize_prefix(mu, &cells)?;
        let prefix: IntSeq = (0..m).map(|i| mu[i] - (i as i64 + 1) + chosen[i] as i64).collect();
        debug_assert_eq!(prefix.as_slice(), &deltas[..]);
        out.push(PrefixTerm {
            sign: pi.sign(),
            prefix,
            shape: SkewShape { mu: mu[m..].to_vec().into(), nu: nu[m..].to_vec().into() },
        });
    }
    Ok(out)
}

/// Deltas of the first hooks and the skew left behind.
fn realize_prefix(mu: &IntSeq, cells: &[Cell]) -> Result<(Vec<i64>, Vec<i64>)> {
    let mut d = build_diagram(mu, &IntSeq::zeros(mu.len()), 0)?;
    let mut deltas = Vec::with_capacity(cells.len());
    for &tau in cells {
        let h = d.make_tunnel_hook(tau)?;
        deltas.push(h.delta);
        d = d.apply_hook(&h)?;
    }
    Ok((deltas, d.nu().to_vec()))
}

/// Sums a prefix decomposition back into the H basis.
pub fn reassemble_prefix_terms(terms: &[PrefixTerm], opts: &Options) -> Result<BasisExpr> {
    let mut out = BasisExpr::zero(Basis::H);
    for t in terms {
        out.merge(&t.to_h(opts)?)?;
    }
    Ok(out)
}

/// `M_alpha` in the dual immaculate basis: the coefficient of `dI_mu` is the
/// signed count of coverings of `D_mu` whose deltas are nonnegative and
/// flatten to `alpha`.
pub fn monomial_to_dual_immaculate(alpha: &Composition, opts: &Options) -> Result<BasisExpr> {
    let n = alpha.size();
    opts.check(usize::try_from(n).unwrap_or(usize::MAX))?;
    let mut out = BasisExpr::zero(Basis::DualImmaculate);
    for mu in Composition::all_of(n as u32) {
        let mu_seq = mu.to_int_seq();
        let coeff = fold_coverings(
            &mu_seq,
            &IntSeq::zeros(mu.len()),
            opts,
            || 0i64,
            |acc, g| {
                let hit = g.delta_seq.iter().all(|&d| d >= 0) && flatten(&g.delta_seq).is_ok_and(|f| &f == alpha);
                if hit {
                    acc + g.total_sign as i64
                } else {
                    acc
                }
            },
            |a, b| a + b,
        )?;
        out.add_term(mu, coeff);
    }
    Ok(out)
}

/// Image in the commutative symmetric functions: `H_alpha -> h_alpha`.
pub fn forgetful_to_h(x: &BasisExpr) -> Result<BasisExpr> {
    if x.basis() != Basis::H {
        return Err(Error::BasisMismatch { expected: Basis::H, found: x.basis() });
    }
    Ok(x.map_linear(Basis::HSym, |alpha| BasisExpr::monomial(Basis::HSym, alpha.sorted_partition(), 1)))
}
