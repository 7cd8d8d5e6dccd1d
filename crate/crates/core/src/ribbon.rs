//! Ribbon basis: conversions to and from H, products, and the direct
//! signed-permutation expansion of immaculates.

use crate::algebra::{coarsenings, Basis, BasisExpr, Composition, Permutation};
use crate::error::{Error, Result};
use crate::Options;

fn require(x: &BasisExpr, basis: Basis) -> Result<()> {
    if x.basis() != basis {
        return Err(Error::BasisMismatch { expected: basis, found: x.basis() });
    }
    Ok(())
}

/// `R_alpha = sum over coarsenings beta of (-1)^(l(alpha) - l(beta)) H_beta`.
pub fn ribbon_to_h(x: &BasisExpr) -> Result<BasisExpr> {
    require(x, Basis::R)?;
    Ok(x.map_linear(Basis::H, |alpha| {
        BasisExpr::from_terms(
            Basis::H,
            coarsenings(alpha).into_iter().map(|beta| {
                let sign = if (alpha.len() - beta.len()) % 2 == 0 { 1 } else { -1 };
                (beta, sign)
            }),
        )
    }))
}

/// `H_alpha = sum over coarsenings beta of R_beta`.
pub fn h_to_ribbon(x: &BasisExpr) -> Result<BasisExpr> {
    require(x, Basis::H)?;
    Ok(x.map_linear(Basis::R, |alpha| {
        BasisExpr::from_terms(Basis::R, coarsenings(alpha).into_iter().map(|beta| (beta, 1)))
    }))
}

/// `R_alpha R_beta = R_{alpha.beta} + R_{alpha (.) beta}`.
pub fn ribbon_product(alpha: &Composition, beta: &Composition) -> Result<BasisExpr> {
    if alpha.is_empty() || beta.is_empty() {
        return Err(Error::EmptyFactor);
    }
    Ok(BasisExpr::from_terms(Basis::R, [(alpha.concat(beta), 1), (alpha.near_concat(beta), 1)]))
}

/// Smallest `J` in `1..=k` with `alpha_l >= l` for `l <= J` and
/// `alpha_l = J` for `l > J`.
pub fn im2rib_class(alpha: &Composition) -> Option<usize> {
    let parts = alpha.parts();
    let k = parts.len();
    (1..=k).find(|&j| {
        parts[..j].iter().enumerate().all(|(i, &a)| a as usize > i) && parts[j..].iter().all(|&a| a as usize == j)
    })
}

/// `sum over sigma in S_k of sign(sigma) R_{(alpha_i - i + sigma_i)}`, where a
/// term vanishes as soon as one of its parts is `<= 0`. This equals the
/// ribbon expansion of `I_alpha` when [`im2rib_class`] holds; `force`
/// evaluates it anyway.
pub fn immaculate_to_ribbon_direct(alpha: &Composition, force: bool, opts: &Options) -> Result<BasisExpr> {
    let k = alpha.len();
    opts.check(k)?;
    if !force && im2rib_class(alpha).is_none() && k > 0 {
        return Err(Error::ClassViolation(alpha.parts().to_vec()));
    }
    let mut out = BasisExpr::zero(Basis::R);
    for sigma in Permutation::all(k) {
        let parts: Option<Vec<u32>> = alpha
            .parts()
            .iter()
            .zip(sigma.one_line())
            .enumerate()
            .map(|(i, (&a, &s))| u32::try_from(a as i64 - (i as i64 + 1) + s as i64).ok().filter(|&p| p > 0))
            .collect();
        if let Some(parts) = parts {
            out.add_term(Composition::new(parts)?, sigma.sign() as i64);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansions::immaculate_to_h;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn r(text: &str) -> BasisExpr {
        BasisExpr::parse_text(text, Basis::R).unwrap()
    }

    fn h(text: &str) -> BasisExpr {
        BasisExpr::parse_text(text, Basis::H).unwrap()
    }

    #[test]
    fn conversion_examples() {
        assert_eq!(ribbon_to_h(&r("R(2,1)")).unwrap(), h("H(2,1) - H(3)"));
        assert_eq!(ribbon_to_h(&r("R(5)")).unwrap(), h("H(5)"));
        assert_eq!(ribbon_to_h(&r("R(1,1)")).unwrap(), h("H(1,1) - H(2)"));
        assert_eq!(h_to_ribbon(&h("H(2,1)")).unwrap(), r("R(2,1) + R(3)"));
        assert_eq!(h_to_ribbon(&h("H(1,1,1)")).unwrap(), r("R(1,1,1) + R(2,1) + R(1,2) + R(3)"));
        assert!(ribbon_to_h(&h("H(1)")).is_err());
        assert!(h_to_ribbon(&r("R(1)")).is_err());
        assert_eq!(ribbon_to_h(&BasisExpr::unit(Basis::R)).unwrap(), BasisExpr::unit(Basis::H));
    }

    #[test]
    fn product_examples() {
        assert_eq!(ribbon_product(&c("2"), &c("1")).unwrap(), r("R(2,1) + R(3)"));
        assert_eq!(ribbon_product(&c("1,1"), &c("2")).unwrap(), r("R(1,1,2) + R(1,3)"));
        assert_eq!(ribbon_product(&Composition::empty(), &c("2")), Err(Error::EmptyFactor));
    }

    #[test]
    fn class_examples() {
        assert_eq!(im2rib_class(&c("1,1,2,3")), None);
        assert_eq!(im2rib_class(&c("1,2,3,4")), Some(4));
        assert_eq!(im2rib_class(&c("5,5,2,2,2")), Some(2));
        assert_eq!(im2rib_class(&c("3,3,3")), Some(3));
        assert_eq!(im2rib_class(&c("4,4,1")), None);
        assert_eq!(im2rib_class(&c("2,2,2,2")), Some(2));
        assert_eq!(im2rib_class(&Composition::empty()), None);
    }

    #[test]
    fn direct_examples() {
        let opts = Options::default();
        assert_eq!(
            immaculate_to_ribbon_direct(&c("1,1,2,3"), true, &opts).unwrap(),
            r("R(1,1,2,3) - R(1,1,3,2) - R(1,2,1,3) + R(1,2,3,1) + R(1,3,1,2) - R(1,3,2,1)")
        );
        assert_eq!(
            immaculate_to_ribbon_direct(&c("1,1,2,3"), false, &opts),
            Err(Error::ClassViolation(vec![1, 1, 2, 3]))
        );
        assert_eq!(immaculate_to_ribbon_direct(&c("4"), false, &opts).unwrap(), r("R(4)"));
        assert_eq!(immaculate_to_ribbon_direct(&c("2,2"), false, &opts).unwrap(), r("R(2,2) - R(3,1)"));
        let via_h = h_to_ribbon(&immaculate_to_h(&c("1,1,2,3").to_int_seq(), &opts).unwrap()).unwrap();
        assert_eq!(via_h, immaculate_to_ribbon_direct(&c("1,1,2,3"), true, &opts).unwrap());
    }
}
