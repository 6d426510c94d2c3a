use num_bigint::BigInt;
use num_traits::One;

use super::derivation::dstar_unchecked;
use super::{FormContext, FormError, SemiInvariant};
use crate::exact_poly::{binomial, factorial, Monomial, Polynomial, Rational, Series, Variable};

/// `sum_i C(n, i) s_i X^(n-i) Y^i`.
pub fn generic_form(ctx: &FormContext, series: Series) -> Result<Polynomial, FormError> {
    ctx.require(series)?;
    let n = ctx.order();
    let terms = (0..=n).map(|i| {
        let m = Monomial::from_pairs([
            (series.at(i), 1),
            (Variable::CovX, n - i),
            (Variable::CovY, i),
        ]);
        (m, Rational::from_integer(binomial(n as u64, i as u64)))
    });
    Ok(Polynomial::from_terms(terms))
}

fn xy_degree(m: &Monomial) -> u32 {
    m.exponent(Variable::CovX) + m.exponent(Variable::CovY)
}

/// Common total degree in `X`, `Y`; `None` if the terms disagree or `c = 0`.
pub fn xy_order(c: &Polynomial) -> Option<u32> {
    let mut degrees = c.terms().map(|(m, _)| xy_degree(m));
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

/// Coefficient of `X^d` in a covariant of order `d`.
pub fn kappa(c: &Polynomial) -> Result<Polynomial, FormError> {
    if c.is_zero() {
        return Ok(Polynomial::zero());
    }
    let d = xy_order(c).ok_or(FormError::NotXyHomogeneous)?;
    Ok(c.map_terms(|m, coeff| {
        (m.exponent(Variable::CovX) == d)
            .then(|| (m.restricted(|v| !v.is_covariant()), coeff.clone()))
    }))
}

/// `sum_i (D*)^i(s) / i! X^(ord-i) Y^i`.
pub fn kappa_inv(s: &SemiInvariant) -> Polynomial {
    let n = s.context().order();
    let ord = s.ord();
    let mut current = s.poly().clone();
    let mut out = Polynomial::zero();
    for i in 0..=ord {
        if current.is_zero() {
            break;
        }
        let xy = Monomial::from_pairs([(Variable::CovX, ord - i), (Variable::CovY, i)]);
        let scale = Rational::new(BigInt::one(), factorial(i as u64));
        out += current.mul_monomial(&scale, &xy);
        current = dstar_unchecked(&current, n);
    }
    out
}

fn mixed_partial(p: &Polynomial, dx: u32, dy: u32) -> Polynomial {
    let mut out = p.clone();
    for _ in 0..dx {
        out = out.partial(Variable::CovX);
    }
    for _ in 0..dy {
        out = out.partial(Variable::CovY);
    }
    out
}

/// `(f, g)^r = sum_i (-1)^i C(r, i) d^r f / dX^(r-i) dY^i * d^r g / dX^i dY^(r-i)`.
pub fn transvectant(f: &Polynomial, g: &Polynomial, r: u32) -> Result<Polynomial, FormError> {
    let order_f = if f.is_zero() { r } else { xy_order(f).ok_or(FormError::NotXyHomogeneous)? };
    let order_g = if g.is_zero() { r } else { xy_order(g).ok_or(FormError::NotXyHomogeneous)? };
    let max = order_f.min(order_g);
    if r > max {
        return Err(FormError::Range { r, max });
    }
    let mut out = Polynomial::zero();
    for i in 0..=r {
        let c = Rational::from_integer(binomial(r as u64, i as u64));
        let term = &mixed_partial(f, r - i, i) * &mixed_partial(g, i, r - i);
        if i % 2 == 0 {
            out += term.scale(&c);
        } else {
            out -= term.scale(&c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::parse;
    use crate::forms::is_covariant;

    fn ctx(n: u32) -> FormContext {
        FormContext::single(n, Series::A).unwrap()
    }

    #[test]
    fn generic_forms() {
        assert_eq!(generic_form(&ctx(1), Series::A).unwrap(), parse("a0*X + a1*Y").unwrap());
        assert_eq!(
            generic_form(&ctx(3), Series::A).unwrap(),
            parse("a0*X^3 + 3*a1*X^2*Y + 3*a2*X*Y^2 + a3*Y^3").unwrap()
        );
        let b = FormContext::single(2, Series::B).unwrap();
        assert_eq!(generic_form(&b, Series::B).unwrap(), parse("b0*X^2 + 2*b1*X*Y + b2*Y^2").unwrap());
        assert!(generic_form(&ctx(2), Series::C).is_err());
        assert!(is_covariant(&generic_form(&ctx(5), Series::A).unwrap(), &ctx(5)));
    }

    #[test]
    fn kappa_round_trip() {
        for n in 1..6 {
            let a0 = SemiInvariant::certify(parse("a0").unwrap(), &ctx(n)).unwrap();
            let alpha = kappa_inv(&a0);
            assert_eq!(alpha, generic_form(&ctx(n), Series::A).unwrap());
            assert_eq!(kappa(&alpha).unwrap(), parse("a0").unwrap());
        }
        let h = SemiInvariant::certify(parse("a0*a2 - a1^2").unwrap(), &ctx(2)).unwrap();
        assert_eq!(kappa_inv(&h), parse("a0*a2 - a1^2").unwrap());
        assert_eq!(kappa(&parse("a0*X + a1*Y^2").unwrap()), Err(FormError::NotXyHomogeneous));
    }

    #[test]
    fn transvectants() {
        let alpha = generic_form(&ctx(3), Series::A).unwrap();
        let beta = parse("a0*X + a1*Y").unwrap();
        assert_eq!(transvectant(&alpha, &beta, 0).unwrap(), &alpha * &beta);
        assert!(transvectant(&alpha, &alpha, 1).unwrap().is_zero());
        let hess = transvectant(&alpha, &alpha, 2).unwrap();
        let fxx = alpha.partial(Variable::CovX).partial(Variable::CovX);
        let fyy = alpha.partial(Variable::CovY).partial(Variable::CovY);
        let fxy = alpha.partial(Variable::CovX).partial(Variable::CovY);
        assert_eq!(hess, (&(&fxx * &fyy) - &(&fxy * &fxy)).scale(&Rational::from_integer(2.into())));
        assert!(is_covariant(&hess, &ctx(3)));
        assert_eq!(transvectant(&alpha, &beta, 2), Err(FormError::Range { r: 2, max: 1 }));
    }
}
