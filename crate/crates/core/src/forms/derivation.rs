use num_bigint::BigInt;

use super::{FormContext, FormError};
use crate::exact_poly::{Monomial, Polynomial, Rational, Variable};

/// Applies the derivation sending `s_i` to `factor * s_j` where
/// `rule(n, i) = Some((factor, j))`, acting diagonally on every series.
fn apply(p: &Polynomial, n: u32, rule: impl Fn(u32, u32) -> Option<(i64, u32)>) -> Polynomial {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        for (v, e) in m.iter() {
            let Variable::Coeff(s, i) = v else { continue };
            let Some((factor, j)) = rule(n, i) else { continue };
            if factor == 0 {
                continue;
            }
            let image = m
                .shifted(v, -1)
                .expect("variable occurs")
                .mul(&Monomial::var(s.at(j)));
            terms.push((image, c * Rational::from_integer(BigInt::from(factor * e as i64))));
        }
    }
    Polynomial::from_terms(terms)
}

fn derivation(
    p: &Polynomial,
    ctx: &FormContext,
    covariant: bool,
    rule: impl Fn(u32, u32) -> Option<(i64, u32)>,
) -> Result<Polynomial, FormError> {
    for v in p.variables() {
        ctx.check(v, covariant)?;
    }
    Ok(apply(p, ctx.order(), rule))
}

fn d_rule(_n: u32, i: u32) -> Option<(i64, u32)> {
    (i > 0).then(|| (i as i64, i - 1))
}

fn dstar_rule(n: u32, i: u32) -> Option<(i64, u32)> {
    (i < n).then(|| ((n - i) as i64, i + 1))
}

/// `D(s_i) = i s_{i-1}`.
pub fn derive_d(p: &Polynomial, ctx: &FormContext) -> Result<Polynomial, FormError> {
    derivation(p, ctx, false, d_rule)
}

/// `D*(s_i) = (n - i) s_{i+1}`.
pub fn derive_dstar(p: &Polynomial, ctx: &FormContext) -> Result<Polynomial, FormError> {
    derivation(p, ctx, false, dstar_rule)
}

/// `E(s_i) = (n - 2i) s_i`.
pub fn derive_e(p: &Polynomial, ctx: &FormContext) -> Result<Polynomial, FormError> {
    derivation(p, ctx, false, |n, i| Some((n as i64 - 2 * i as i64, i)))
}

/// `D*` without the context check, for inputs already known to be legal.
pub(crate) fn dstar_unchecked(p: &Polynomial, n: u32) -> Polynomial {
    apply(p, n, dstar_rule)
}

fn monomial_weight(m: &Monomial, n: u32) -> i64 {
    m.iter()
        .filter_map(|(v, e)| match v {
            Variable::Coeff(_, i) => Some(e as i64 * (n as i64 - 2 * i as i64)),
            _ => None,
        })
        .sum()
}

fn common_value(p: &Polynomial, f: impl Fn(&Monomial) -> i64) -> Option<i64> {
    let mut values = p.terms().map(|(m, _)| f(m));
    let first = values.next()?;
    values.all(|w| w == first).then_some(first)
}

/// The eigenvalue `w` with `E(p) = w p`, if `p` is a nonzero eigenvector.
pub fn weight(p: &Polynomial, ctx: &FormContext) -> Option<i64> {
    if p.variables().into_iter().any(|v| ctx.check(v, false).is_err()) {
        return None;
    }
    common_value(p, |m| monomial_weight(m, ctx.order()))
}

pub fn is_isobaric(p: &Polynomial, ctx: &FormContext) -> bool {
    weight(p, ctx).is_some()
}

/// The weight formula `n (k_0 + ... + k_n) - 2 (k_1 + ... + k_n)` evaluated
/// literally, for comparison with [`weight`].
pub fn printed_weight(p: &Polynomial, ctx: &FormContext) -> Option<i64> {
    let n = ctx.order() as i64;
    common_value(p, |m| {
        m.iter()
            .filter_map(|(v, e)| match v {
                Variable::Coeff(_, i) => Some(e as i64 * (n - if i >= 1 { 2 } else { 0 })),
                _ => None,
            })
            .sum()
    })
}

pub fn is_semi_invariant(p: &Polynomial, ctx: &FormContext) -> bool {
    derive_d(p, ctx).is_ok_and(|d| d.is_zero())
}

pub fn is_invariant(p: &Polynomial, ctx: &FormContext) -> bool {
    is_semi_invariant(p, ctx) && derive_dstar(p, ctx).is_ok_and(|d| d.is_zero())
}

/// Membership in the kernels of both `D - Y d/dX` and `D* - X d/dY`.
pub fn is_covariant(p: &Polynomial, ctx: &FormContext) -> bool {
    let twisted = || -> Result<bool, FormError> {
        let x = Polynomial::var(Variable::CovX);
        let y = Polynomial::var(Variable::CovY);
        let first = derivation(p, ctx, true, d_rule)? - &y * &p.partial(Variable::CovX);
        if !first.is_zero() {
            return Ok(false);
        }
        let second = derivation(p, ctx, true, dstar_rule)? - &x * &p.partial(Variable::CovY);
        Ok(second.is_zero())
    };
    twisted().unwrap_or(false)
}

/// `max { k : (D*)^k(s) != 0 }` by direct iteration.
pub fn ord_iterated(s: &Polynomial, ctx: &FormContext) -> Result<u32, FormError> {
    if s.is_zero() {
        return Err(FormError::Zero);
    }
    let mut current = derive_dstar(s, ctx)?;
    let mut k = 0;
    while !current.is_zero() {
        k += 1;
        current = dstar_unchecked(&current, ctx.order());
    }
    Ok(k)
}

/// Order of a semi-invariant. Homogeneous isobaric inputs use the weight;
/// debug builds confirm it by iterating `D*`.
pub fn ord(s: &Polynomial, ctx: &FormContext) -> Result<u32, FormError> {
    if s.is_zero() {
        return Err(FormError::Zero);
    }
    if !derive_d(s, ctx)?.is_zero() {
        return Err(FormError::NotSemiInvariant);
    }
    match weight(s, ctx) {
        Some(w) if s.is_homogeneous() && w >= 0 => {
            debug_assert_eq!(ord_iterated(s, ctx).ok(), Some(w as u32));
            Ok(w as u32)
        }
        _ => ord_iterated(s, ctx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::{parse, Series};

    fn ctx(n: u32) -> FormContext {
        FormContext::single(n, Series::A).unwrap()
    }

    #[test]
    fn derivations_on_generators() {
        assert_eq!(derive_d(&parse("a2").unwrap(), &ctx(3)).unwrap(), parse("2*a1").unwrap());
        assert_eq!(derive_dstar(&parse("a0").unwrap(), &ctx(3)).unwrap(), parse("3*a1").unwrap());
        assert_eq!(derive_e(&parse("a1").unwrap(), &ctx(5)).unwrap(), parse("3*a1").unwrap());
        assert!(derive_d(&parse("a0*a2 - a1^2").unwrap(), &ctx(2)).unwrap().is_zero());
    }

    #[test]
    fn context_violations() {
        assert!(matches!(derive_d(&parse("a4").unwrap(), &ctx(3)), Err(FormError::OutOfContext { .. })));
        assert!(matches!(derive_d(&parse("b0").unwrap(), &ctx(3)), Err(FormError::OutOfContext { .. })));
        assert!(matches!(derive_d(&parse("X*a0").unwrap(), &ctx(3)), Err(FormError::OutOfContext { .. })));
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&parse("a0").unwrap(), &ctx(5)), Some(5));
        assert_eq!(weight(&parse("a0*a2 - a1^2").unwrap(), &ctx(2)), Some(0));
        assert_eq!(weight(&parse("a0*a2 - a1^2").unwrap(), &ctx(4)), Some(4));
        assert_eq!(weight(&parse("a0 + a1").unwrap(), &ctx(4)), None);
        assert!(!is_isobaric(&parse("a0 + a1").unwrap(), &ctx(4)));
        assert_eq!(printed_weight(&parse("a0*a2").unwrap(), &ctx(4)), Some(6));
    }

    #[test]
    fn classification() {
        assert!(!is_semi_invariant(&parse("a1").unwrap(), &ctx(2)));
        assert!(is_invariant(&parse("a0*a2 - a1^2").unwrap(), &ctx(2)));
        assert!(!is_invariant(&parse("a0*a2 - a1^2").unwrap(), &ctx(3)));
        assert!(is_covariant(&parse("a0*X^2 + 2*a1*X*Y + a2*Y^2").unwrap(), &ctx(2)));
        assert!(!is_covariant(&parse("a0*X^2 + a1*X*Y + a2*Y^2").unwrap(), &ctx(2)));
    }

    #[test]
    fn orders() {
        assert_eq!(ord(&parse("a0").unwrap(), &ctx(3)), Ok(3));
        assert_eq!(ord(&parse("a0*a2 - a1^2").unwrap(), &ctx(2)), Ok(0));
        assert_eq!(ord(&parse("a0*a2 - a1^2").unwrap(), &ctx(4)), Ok(4));
        assert_eq!(ord_iterated(&parse("a0*a2 - a1^2").unwrap(), &ctx(4)), Ok(4));
        assert_eq!(ord(&parse("a1").unwrap(), &ctx(3)), Err(FormError::NotSemiInvariant));
        assert_eq!(ord(&Polynomial::zero(), &ctx(3)), Err(FormError::Zero));
    }
}
