use super::derivation::{derive_d, dstar_unchecked, ord_iterated, weight};
use super::{FormContext, FormError};
use crate::exact_poly::{binomial, falling_factorial, Polynomial, Rational, Variable};

/// A polynomial certified to lie in the kernel of `D`, with its degree,
/// weight, order and properness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiInvariant {
    poly: Polynomial,
    context: FormContext,
    degree: u32,
    weight: i64,
    ord: u32,
    proper: bool,
}

impl SemiInvariant {
    /// Certifies a nonzero homogeneous isobaric semi-invariant.
    pub fn certify(poly: Polynomial, ctx: &FormContext) -> Result<Self, FormError> {
        if poly.is_zero() {
            return Err(FormError::Zero);
        }
        if !derive_d(&poly, ctx)?.is_zero() {
            return Err(FormError::NotSemiInvariant);
        }
        if poly.variables().contains(&Variable::X) {
            return Err(FormError::OutOfContext {
                variable: Variable::X,
                order: ctx.order(),
                series: ctx.to_string(),
            });
        }
        if !poly.is_homogeneous() {
            return Err(FormError::NotHomogeneous);
        }
        let w = weight(&poly, ctx).ok_or(FormError::NotIsobaric)?;
        let ord = u32::try_from(w).map_err(|_| FormError::Metadata {
            what: "weight",
            expected: 0,
            actual: w,
        })?;
        debug_assert_eq!(ord_iterated(&poly, ctx), Ok(ord));
        let degree = poly.total_degree().unwrap_or(0);
        let proper = is_proper(&poly, ctx);
        Ok(SemiInvariant { poly, context: ctx.clone(), degree, weight: w, ord, proper })
    }

    /// Like [`SemiInvariant::certify`] but with nominal degree and weight,
    /// which are checked when `poly` is nonzero and recorded as-is otherwise.
    pub fn certify_with(
        poly: Polynomial,
        ctx: &FormContext,
        degree: u32,
        weight: i64,
    ) -> Result<Self, FormError> {
        if poly.is_zero() {
            let ord = u32::try_from(weight).unwrap_or(0);
            return Ok(SemiInvariant {
                poly,
                context: ctx.clone(),
                degree,
                weight,
                ord,
                proper: false,
            });
        }
        let s = SemiInvariant::certify(poly, ctx)?;
        if s.degree != degree {
            return Err(FormError::Metadata {
                what: "degree",
                expected: degree as i64,
                actual: s.degree as i64,
            });
        }
        if s.weight != weight {
            return Err(FormError::Metadata { what: "weight", expected: weight, actual: s.weight });
        }
        Ok(s)
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn context(&self) -> &FormContext {
        &self.context
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn ord(&self) -> u32 {
        self.ord
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// `p` involves the last coefficient of some active series.
fn is_proper(p: &Polynomial, ctx: &FormContext) -> bool {
    ctx.series().any(|s| !p.partial(s.at(ctx.order())).is_zero())
}

fn dstar_powers(p: &Polynomial, n: u32, upto: u32) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(upto as usize + 1);
    let mut current = p.clone();
    for _ in 0..=upto {
        let next = dstar_unchecked(&current, n);
        out.push(current);
        current = next;
    }
    out
}

/// `[p, q]^r = sum_i (-1)^i C(r, i) (D*)^i p / [ord p]_i * (D*)^(r-i) q / [ord q]_(r-i)`.
pub fn semi_transvectant(
    p: &SemiInvariant,
    q: &SemiInvariant,
    r: u32,
) -> Result<SemiInvariant, FormError> {
    let ctx = p.context.union(&q.context)?;
    let max = p.ord.min(q.ord);
    if r > max {
        return Err(FormError::Range { r, max });
    }
    let n = ctx.order();
    let dp = dstar_powers(&p.poly, n, r);
    let dq = dstar_powers(&q.poly, n, r);
    let mut out = Polynomial::zero();
    for i in 0..=r {
        let j = r - i;
        let numer = binomial(r as u64, i as u64);
        let denom = falling_factorial(p.ord as i64, i as u64)
            * falling_factorial(q.ord as i64, j as u64);
        let mut c = Rational::new(numer, denom);
        if i % 2 == 1 {
            c = -c;
        }
        out += (&dp[i as usize] * &dq[j as usize]).scale(&c);
    }
    let weight = p.weight + q.weight - 2 * r as i64;
    SemiInvariant::certify_with(out, &ctx, p.degree + q.degree, weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::{parse, Series};
    use crate::forms::{kappa, kappa_inv, transvectant};

    fn ctx(n: u32) -> FormContext {
        FormContext::single(n, Series::A).unwrap()
    }

    fn si(text: &str, n: u32) -> SemiInvariant {
        SemiInvariant::certify(parse(text).unwrap(), &ctx(n)).unwrap()
    }

    #[test]
    fn certification() {
        let h = si("a0*a2 - a1^2", 4);
        assert_eq!((h.degree(), h.weight(), h.ord()), (2, 4, 4));
        assert!(!h.is_proper());
        assert!(si("a0*a2 - a1^2", 2).is_proper());
        assert_eq!(
            SemiInvariant::certify(parse("a1").unwrap(), &ctx(2)),
            Err(FormError::NotSemiInvariant)
        );
        assert_eq!(SemiInvariant::certify(Polynomial::zero(), &ctx(2)), Err(FormError::Zero));
    }

    #[test]
    fn semi_hessian_from_a0() {
        for n in 2..7 {
            let a0 = si("a0", n);
            let s = semi_transvectant(&a0, &a0, 2).unwrap();
            assert_eq!(s.poly(), &parse("2*a0*a2 - 2*a1^2").unwrap());
            assert_eq!(s.weight(), 2 * n as i64 - 4);
        }
    }

    #[test]
    fn zeroth_and_odd() {
        let a0 = si("a0", 3);
        let h = si("a0*a2 - a1^2", 3);
        assert_eq!(semi_transvectant(&a0, &h, 0).unwrap().poly(), &(a0.poly() * h.poly()));
        let odd = semi_transvectant(&a0, &a0, 3).unwrap();
        assert!(odd.is_zero());
        assert_eq!(odd.weight(), 0);
        assert_eq!(semi_transvectant(&a0, &h, 3), Err(FormError::Range { r: 3, max: 2 }));
    }

    #[test]
    fn agrees_with_covariant_route_up_to_falling_factorials() {
        let n = 4;
        let a0 = si("a0", n);
        let h = si("a0*a2 - a1^2", n);
        for r in 0..=4 {
            let direct = semi_transvectant(&a0, &h, r).unwrap();
            let via = kappa(&transvectant(&kappa_inv(&a0), &kappa_inv(&h), r).unwrap()).unwrap();
            let factor = falling_factorial(4, r as u64) * falling_factorial(4, r as u64);
            assert_eq!(via, direct.poly().scale(&Rational::from_integer(factor)));
        }
    }
}
