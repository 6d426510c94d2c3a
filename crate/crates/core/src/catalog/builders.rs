use num_bigint::BigInt;
use num_traits::One;

use super::closed::{self, symbolic, TrBarVariant};
use super::{CatalogError, ClosedFormCheck, Construction, Verdict};
use crate::exact_poly::{binomial, det, rat, Polynomial, PolyMatrix, Rational, Series};
use crate::forms::{derive_d, semi_transvectant, FormContext, SemiInvariant};

/// A normative value together with its comparisons against printed formulas.
#[derive(Clone, Debug)]
pub struct CrossChecked {
    pub value: SemiInvariant,
    pub checks: Vec<ClosedFormCheck>,
}

/// `W_n` as printed, with the semi-invariance verdict attached.
#[derive(Clone, Debug)]
pub struct WPoly {
    pub poly: Polynomial,
    pub context: FormContext,
    pub is_semi_invariant: bool,
    pub d_image: Polynomial,
}

/// The 3x3 determinant with a flag for repeated series.
#[derive(Clone, Debug)]
pub struct Delta3 {
    pub value: SemiInvariant,
    pub degenerate: bool,
}

pub(crate) fn require_order(c: Construction, n: u32) -> Result<(), CatalogError> {
    if n < c.min_order() {
        Err(CatalogError::BelowMinOrder { construction: c, n, rule: c.order_rule() })
    } else {
        Ok(())
    }
}

fn context(n: u32, series: &[Series]) -> Result<FormContext, CatalogError> {
    Ok(FormContext::new(n, series.iter().copied())?)
}

fn lead(n: u32, s: Series) -> Result<SemiInvariant, CatalogError> {
    let ctx = FormContext::single(n, s)?;
    Ok(SemiInvariant::certify(Polynomial::var(s.at(0)), &ctx)?)
}

fn certify(c: Construction, poly: Polynomial, ctx: &FormContext, n: u32) -> Result<SemiInvariant, CatalogError> {
    let degree = c.degree(n).expect("homogeneous construction");
    let weight = c.weight(n).expect("isobaric construction");
    Ok(SemiInvariant::certify_with(poly, ctx, degree, weight)?)
}

fn check(label: &str, normative: &SemiInvariant, closed: Polynomial) -> ClosedFormCheck {
    ClosedFormCheck { label: label.to_string(), verdict: Verdict::compare(normative.poly(), &closed) }
}

/// `[s1_0, s2_0]^n = sum (-1)^i C(n, i) s1_i s2_(n-i)`.
pub fn dv(n: u32, s1: Series, s2: Series) -> Result<SemiInvariant, CatalogError> {
    let c = if s1 == s2 { Construction::Dv1 } else { Construction::Dv2 };
    require_order(c, n)?;
    Ok(semi_transvectant(&lead(n, s1)?, &lead(n, s2)?, n)?)
}

/// `W_n = sum_{i=1}^{n} (-1)^i C(n, i) a_(n-i) a_1^i`, exactly as printed.
pub fn w_poly(n: u32) -> Result<WPoly, CatalogError> {
    require_order(Construction::W, n)?;
    let ctx = FormContext::single(n, Series::A)?;
    let a = |i: u32| Polynomial::var(Series::A.at(i));
    let mut poly = Polynomial::zero();
    for i in 1..=n {
        let mut c = Rational::from_integer(binomial(n as u64, i as u64));
        if i % 2 == 1 {
            c = -c;
        }
        poly += (&a(n - i) * &a(1).pow(i)).scale(&c);
    }
    let d_image = derive_d(&poly, &ctx)?;
    Ok(WPoly { is_semi_invariant: d_image.is_zero(), poly, context: ctx, d_image })
}

/// `1/2 [s_0, s_0]^2 = s_0 s_2 - s_1^2`.
pub fn semi_hessian(s: Series, n: u32) -> Result<SemiInvariant, CatalogError> {
    require_order(Construction::SemiHessian, n)?;
    let a0 = lead(n, s)?;
    let twice = semi_transvectant(&a0, &a0, 2)?;
    let ctx = twice.context().clone();
    Ok(SemiInvariant::certify(twice.poly().scale(&rat(1, 2)), &ctx)?)
}

/// `[p, q]^1 = p D*(q) / ord q - D*(p) / ord p * q`.
pub fn semi_jacobian(p: &SemiInvariant, q: &SemiInvariant) -> Result<SemiInvariant, CatalogError> {
    Ok(semi_transvectant(p, q, 1)?)
}

/// `Tr_n(a0) = [a0, 1/2 [a0, a0]^2]^n`.
pub fn tr_single(n: u32) -> Result<CrossChecked, CatalogError> {
    require_order(Construction::Tr1, n)?;
    let value = semi_transvectant(&lead(n, Series::A)?, &semi_hessian(Series::A, n)?, n)?;
    let checks = vec![check("printed double sum", &value, closed::tr_single(n, &symbolic)?)];
    Ok(CrossChecked { value, checks })
}

/// `Ch_n(a0) = [1/2 [a0, a0]^2, 1/2 [a0, a0]^2]^n`.
pub fn ch_single(n: u32) -> Result<CrossChecked, CatalogError> {
    require_order(Construction::Ch1, n)?;
    let h = semi_hessian(Series::A, n)?;
    let value = semi_transvectant(&h, &h, n)?;
    let checks = vec![check("printed triple sum", &value, closed::ch_single(n, &symbolic)?)];
    Ok(CrossChecked { value, checks })
}

/// The `(2n-1) x (2n-1)` Sylvester matrix of the form and its `X`-derivative:
/// `n - 1` shifted rows of `C(n, i) s_i`, then `n` shifted rows of
/// `(n - i) C(n, i) s_i`.
pub fn discriminant_matrix(n: u32, s: Series) -> PolyMatrix {
    let size = (2 * n - 1) as usize;
    let mut m = vec![vec![Polynomial::zero(); size]; size];
    let entry = |i: u32, factor: BigInt| {
        Polynomial::var(s.at(i)).scale(&Rational::from_integer(factor * binomial(n as u64, i as u64)))
    };
    for r in 0..(n - 1) as usize {
        for i in 0..=n {
            m[r][r + i as usize] = entry(i, BigInt::one());
        }
    }
    for r in 0..n as usize {
        for i in 0..n {
            m[n as usize - 1 + r][r + i as usize] = entry(i, BigInt::from(n - i));
        }
    }
    m
}

/// `(-1)^(n(n-1)/2)` times the determinant of [`discriminant_matrix`].
pub fn discr(n: u32, s: Series) -> Result<SemiInvariant, CatalogError> {
    require_order(Construction::Discr, n)?;
    let ctx = FormContext::single(n, s)?;
    let mut value = det(&discriminant_matrix(n, s))?;
    if (n * (n - 1) / 2) % 2 == 1 {
        value = -value;
    }
    certify(Construction::Discr, value, &ctx, n)
}

/// The `2n x 2n` matrix of `n` shifted coefficient rows of each form.
pub fn resultant_matrix(n: u32, s1: Series, s2: Series) -> PolyMatrix {
    let size = (2 * n) as usize;
    let mut m = vec![vec![Polynomial::zero(); size]; size];
    for (block, s) in [s1, s2].into_iter().enumerate() {
        for r in 0..n as usize {
            for i in 0..=n {
                let c = Rational::from_integer(binomial(n as u64, i as u64));
                m[block * n as usize + r][r + i as usize] = Polynomial::var(s.at(i)).scale(&c);
            }
        }
    }
    m
}

pub fn sres(n: u32, s1: Series, s2: Series) -> Result<SemiInvariant, CatalogError> {
    require_order(Construction::SRes, n)?;
    let ctx = context(n, &[s1, s2])?;
    let value = det(&resultant_matrix(n, s1, s2))?;
    certify(Construction::SRes, value, &ctx, n)
}

/// `Tr_n(a0, b0) = [a0, [a0, b0]^1]^n`.
pub fn tr_joint2(n: u32) -> Result<CrossChecked, CatalogError> {
    require_order(Construction::Tr2, n)?;
    let (a0, b0) = (lead(n, Series::A)?, lead(n, Series::B)?);
    let value = semi_transvectant(&a0, &semi_transvectant(&a0, &b0, 1)?, n)?;
    let checks = vec![check("printed double sum", &value, closed::tr_joint2(n, &symbolic)?)];
    Ok(CrossChecked { value, checks })
}

/// `T̄r_n(a0, b0) = [a0, [a0, b0]^2]^n`, compared with the printed sum and
/// three relabelled readings of it.
pub fn tr_bar_joint2(n: u32) -> Result<CrossChecked, CatalogError> {
    require_order(Construction::TrBar2, n)?;
    let (a0, b0) = (lead(n, Series::A)?, lead(n, Series::B)?);
    let value = semi_transvectant(&a0, &semi_transvectant(&a0, &b0, 2)?, n)?;
    let printed = TrBarVariant::printed(n);
    let ord = 2 * n as i64 - 4;
    let variants = [
        ("printed double sum", printed),
        ("auxiliary: [2n-4]_i denominator", TrBarVariant { denominator_base: ord, ..printed }),
        ("auxiliary: a indexed by j", TrBarVariant { j_indexed: true, ..printed }),
        (
            "auxiliary: a indexed by j, [2n-4]_i denominator",
            TrBarVariant { j_indexed: true, denominator_base: ord },
        ),
    ];
    let mut checks = Vec::new();
    for (label, variant) in variants {
        checks.push(check(label, &value, closed::tr_bar_joint2(n, variant, &symbolic)?));
    }
    Ok(CrossChecked { value, checks })
}

/// `Tr_n(a0, b0, c0) = [a0, [b0, c0]^1]^n`.
pub fn tr_joint3(n: u32) -> Result<CrossChecked, CatalogError> {
    let value = tr_joint3_with(n, Series::A, Series::B, Series::C)?;
    let checks = vec![check("printed double sum", &value, closed::tr_joint3(n, &symbolic)?)];
    Ok(CrossChecked { value, checks })
}

pub fn tr_joint3_with(n: u32, s1: Series, s2: Series, s3: Series) -> Result<SemiInvariant, CatalogError> {
    require_order(Construction::Tr3, n)?;
    let jac = semi_jacobian(&lead(n, s2)?, &lead(n, s3)?)?;
    Ok(semi_transvectant(&lead(n, s1)?, &jac, n)?)
}

/// `det [[s1_0, s2_0, s3_0], [s1_1, s2_1, s3_1], [s1_2, s2_2, s3_2]]`.
pub fn delta3x3(n: u32, s1: Series, s2: Series, s3: Series) -> Result<Delta3, CatalogError> {
    require_order(Construction::Delta3x3, n)?;
    let ctx = context(n, &[s1, s2, s3])?;
    let m: PolyMatrix = (0..3)
        .map(|r| [s1, s2, s3].iter().map(|s| Polynomial::var(s.at(r))).collect())
        .collect();
    let value = certify(Construction::Delta3x3, det(&m)?, &ctx, n)?;
    let degenerate = s1 == s2 || s2 == s3 || s1 == s3;
    Ok(Delta3 { value, degenerate })
}

/// `Ch_n(a0, b0, c0, d0) = [a0, Delta(b, c, d)]^n`.
pub fn ch_joint4(n: u32) -> Result<CrossChecked, CatalogError> {
    require_order(Construction::Ch4, n)?;
    let delta = delta3x3(n, Series::B, Series::C, Series::D)?.value;
    let value = semi_transvectant(&lead(n, Series::A)?, &delta, n)?;
    let checks = vec![check("printed triple sum", &value, closed::ch_joint4(n, &symbolic)?)];
    Ok(CrossChecked { value, checks })
}

/// The header reading `[d0, Delta(b, c, d)]^n`, which involves only three series.
pub fn ch_joint4_header_variant(n: u32) -> Result<SemiInvariant, CatalogError> {
    require_order(Construction::Ch4, n)?;
    let delta = delta3x3(n, Series::B, Series::C, Series::D)?.value;
    Ok(semi_transvectant(&lead(n, Series::D)?, &delta, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::parse;
    use crate::forms::is_semi_invariant;

    #[test]
    fn dv_examples() {
        assert!(dv(1, Series::A, Series::A).unwrap().is_zero());
        assert_eq!(dv(2, Series::A, Series::A).unwrap().poly(), &parse("2*a0*a2 - 2*a1^2").unwrap());
        assert_eq!(dv(2, Series::A, Series::B).unwrap().poly(), &parse("a0*b2 - 2*a1*b1 + a2*b0").unwrap());
        for n in 1..7 {
            let expected: Polynomial = (0..=n)
                .map(|i| {
                    let c = Rational::from_integer(binomial(n as u64, i as u64) * if i % 2 == 0 { 1 } else { -1 });
                    (&Polynomial::var(Series::A.at(i)) * &Polynomial::var(Series::B.at(n - i))).scale(&c)
                })
                .sum();
            assert_eq!(dv(n, Series::A, Series::B).unwrap().poly(), &expected);
        }
    }

    #[test]
    fn w_as_printed() {
        let w2 = w_poly(2).unwrap();
        assert_eq!(w2.poly, parse("a0*a1^2 - 2*a1^2").unwrap());
        assert!(!w2.is_semi_invariant);
        assert_eq!(w2.d_image, parse("2*a0^2*a1 - 4*a0*a1").unwrap());
        assert_eq!(w_poly(3).unwrap().poly.len(), 3);
    }

    #[test]
    fn hessian_and_jacobian() {
        assert_eq!(semi_hessian(Series::A, 3).unwrap().poly(), &parse("a0*a2 - a1^2").unwrap());
        let (b0, c0) = (lead(3, Series::B).unwrap(), lead(3, Series::C).unwrap());
        assert_eq!(semi_jacobian(&b0, &c0).unwrap().poly(), &parse("b0*c1 - b1*c0").unwrap());
        assert!(semi_jacobian(&b0, &b0).unwrap().is_zero());
    }

    #[test]
    fn discriminant_matrix_at_three_is_the_printed_one() {
        let m = discriminant_matrix(3, Series::A);
        let rows = [
            "a0, 3*a1, 3*a2, a3, 0",
            "0, a0, 3*a1, 3*a2, a3",
            "3*a0, 6*a1, 3*a2, 0, 0",
            "0, 3*a0, 6*a1, 3*a2, 0",
            "0, 0, 3*a0, 6*a1, 3*a2",
        ];
        for (row, text) in m.iter().zip(rows) {
            let expected: Vec<Polynomial> = text.split(", ").map(|t| parse(t).unwrap()).collect();
            assert_eq!(row, &expected);
        }
    }

    #[test]
    fn small_discriminants_and_resultants() {
        assert_eq!(discr(2, Series::A).unwrap().poly(), &parse("-4*a0*(a0*a2 - a1^2)").unwrap());
        assert!(discr(3, Series::A).unwrap().is_proper());
        let r = sres(2, Series::A, Series::B).unwrap();
        assert_eq!(
            r.poly(),
            &parse("a0^2*b2^2 - 4*a0*a1*b1*b2 - 2*a0*a2*b0*b2 + 4*a0*a2*b1^2 + 4*a1^2*b0*b2 - 4*a1*a2*b0*b1 + a2^2*b0^2")
                .unwrap()
        );
        assert!(sres(2, Series::A, Series::A).unwrap().is_zero());
    }

    #[test]
    fn range_errors() {
        assert!(matches!(tr_single(3), Err(CatalogError::BelowMinOrder { n: 3, .. })));
        assert!(matches!(tr_bar_joint2(3), Err(CatalogError::BelowMinOrder { n: 3, .. })));
        assert!(matches!(ch_joint4(2), Err(CatalogError::BelowMinOrder { n: 2, .. })));
    }

    #[test]
    fn delta_and_joint_constructions() {
        let d = delta3x3(3, Series::B, Series::C, Series::D).unwrap();
        assert_eq!(d.value.weight(), 3);
        assert!(!d.degenerate);
        let dd = delta3x3(3, Series::B, Series::B, Series::D).unwrap();
        assert!(dd.degenerate && dd.value.is_zero());
        let t = tr_joint3_with(3, Series::A, Series::B, Series::C).unwrap();
        let swapped = tr_joint3_with(3, Series::A, Series::C, Series::B).unwrap();
        assert_eq!(t.poly(), &-swapped.poly());
        assert!(is_semi_invariant(t.poly(), t.context()));
        let ch4 = ch_joint4(3).unwrap();
        assert_eq!(ch4.value.degree(), 4);
        assert!(ch_joint4_header_variant(3).unwrap().poly().variables().iter().all(|v| !matches!(v, crate::exact_poly::Variable::Coeff(Series::A, _))));
    }

    #[test]
    fn tr_single_matches_printed_sum() {
        for n in 4..=6 {
            let t = tr_single(n).unwrap();
            assert_eq!(t.checks[0].verdict, Verdict::Equal, "n = {n}");
            assert_eq!(t.value.weight(), n as i64 - 4);
        }
    }
}
