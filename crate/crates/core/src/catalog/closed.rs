//! Printed closed-form expansions of the transvectant constructions.
//!
//! Every formula is generic over an atom map that turns a coefficient `s_k`
//! into a polynomial. With [`symbolic`] this yields the closed polynomial;
//! with [`ones`] it yields the matching binomial sum.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::CatalogError;
use crate::exact_poly::{binomial, factorial, falling_factorial, Polynomial, Rational, Series};

pub type Atom<'a> = &'a dyn Fn(Series, u32) -> Polynomial;

pub fn symbolic(s: Series, k: u32) -> Polynomial {
    Polynomial::var(s.at(k))
}

pub fn ones(_: Series, _: u32) -> Polynomial {
    Polynomial::one()
}

use Series::{A, B, C, D};

fn ff(m: i64, k: u32) -> BigInt {
    falling_factorial(m, k as u64)
}

fn choose(n: u32, k: u32) -> BigInt {
    binomial(n as u64, k as u64)
}

fn sign(i: u32) -> BigInt {
    if i.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// A matrix entry `factor * s_index`.
#[derive(Clone)]
struct Entry {
    factor: BigInt,
    series: Series,
    index: u32,
}

fn e(factor: BigInt, series: Series, index: u32) -> Entry {
    Entry { factor, series, index }
}

/// `scalar * prod(entries)`, skipping the atoms when the scalar part vanishes.
fn product(scalar: BigInt, entries: &[&Entry], atom: Atom) -> Polynomial {
    let total = entries.iter().fold(scalar, |acc, en| acc * &en.factor);
    if total.is_zero() {
        return Polynomial::zero();
    }
    entries.iter().fold(Polynomial::constant(Rational::from_integer(total)), |acc, en| {
        &acc * &atom(en.series, en.index)
    })
}

fn det2(m: [[Entry; 2]; 2], scalar: &BigInt, atom: Atom) -> Polynomial {
    product(scalar.clone(), &[&m[0][0], &m[1][1]], atom)
        - product(scalar.clone(), &[&m[0][1], &m[1][0]], atom)
}

fn det3(m: &[[Entry; 3]; 3], scalar: &BigInt, atom: Atom) -> Polynomial {
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([0, 2, 1], false),
        ([2, 1, 0], false),
        ([1, 0, 2], false),
    ];
    let mut out = Polynomial::zero();
    for (p, even) in PERMS {
        let term = product(scalar.clone(), &[&m[0][p[0]], &m[1][p[1]], &m[2][p[2]]], atom);
        if even {
            out += term;
        } else {
            out -= term;
        }
    }
    out
}

/// `sum_{i=0}^{n} numer(i) / denom(i)` where a zero denominator is accepted
/// only when its numerator has already vanished.
fn lazy_sum(
    formula: &'static str,
    n: u32,
    denom: impl Fn(u32) -> BigInt,
    numer: impl Fn(u32) -> Polynomial,
) -> Result<Polynomial, CatalogError> {
    let mut out = Polynomial::zero();
    for i in 0..=n {
        let top = numer(i);
        if top.is_zero() {
            continue;
        }
        let bottom = denom(i);
        if bottom.is_zero() {
            return Err(CatalogError::ZeroDenominator { formula, i });
        }
        out += top.scale(&Rational::new(BigInt::one(), bottom));
    }
    Ok(out)
}

/// `D*^i` of the semi-hessian, expanded by the determinant derivative rule.
fn hessian_minor(n: u32, i: u32, j: u32, scalar: &BigInt, atom: Atom) -> Polynomial {
    let n = n as i64;
    det2(
        [
            [e(ff(n, j), A, j), e(ff(n - 1, i - j), A, i - j + 1)],
            [e(ff(n - 1, j), A, j + 1), e(ff(n - 2, i - j), A, i - j + 2)],
        ],
        scalar,
        atom,
    )
}

/// `Tr_n(a0)` double sum with the `[2n-4]_i` denominator.
pub fn tr_single(n: u32, atom: Atom) -> Result<Polynomial, CatalogError> {
    lazy_sum("tr", n, |i| ff(2 * n as i64 - 4, i), |i| {
        let outer = sign(i) * choose(n, i);
        let inner: Polynomial = (0..=i).map(|j| hessian_minor(n, i, j, &choose(i, j), atom)).sum();
        &inner * &product(outer, &[&e(BigInt::one(), A, n - i)], atom)
    })
}

/// `Ch_n(a0)` triple sum of products of semi-hessian minors.
pub fn ch_single(n: u32, atom: Atom) -> Result<Polynomial, CatalogError> {
    let w = 2 * n as i64 - 4;
    lazy_sum("ch", n, |i| ff(w, i) * ff(w, n - i), |i| {
        let mut acc = Polynomial::zero();
        for j in 0..=i {
            let right = hessian_minor(n, i, j, &choose(i, j), atom);
            if right.is_zero() {
                continue;
            }
            for k in 0..=n - i {
                let left = hessian_minor(n, n - i, k, &choose(n - i, k), atom);
                acc += &left * &right;
            }
        }
        acc.scale(&Rational::from_integer(sign(i) * choose(n, i)))
    })
}

/// `Tr_n(a0, b0)` with the printed `[2n-2]_i` denominator.
pub fn tr_joint2(n: u32, atom: Atom) -> Result<Polynomial, CatalogError> {
    let m = n as i64;
    lazy_sum("tr2", n, |i| ff(2 * m - 2, i), |i| {
        let inner: Polynomial = (0..=i)
            .map(|j| {
                det2(
                    [
                        [e(ff(m, j), A, j), e(ff(m, i - j), B, i - j)],
                        [e(ff(m - 1, j), A, j + 1), e(ff(m - 1, i - j), B, i - j + 1)],
                    ],
                    &choose(i, j),
                    atom,
                )
            })
            .sum();
        &inner * &product(sign(i) * choose(n, i), &[&e(BigInt::one(), A, n - i)], atom)
    })
}

/// Reading of the `T̄r_n(a0, b0)` sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrBarVariant {
    /// Index the `a` factors of `A_{i,j}` by `j` instead of the printed `i`.
    pub j_indexed: bool,
    /// Base `m` of the `[m]_i` denominator; printed as `2n - 2`.
    pub denominator_base: i64,
}

impl TrBarVariant {
    pub fn printed(n: u32) -> Self {
        TrBarVariant { j_indexed: false, denominator_base: 2 * n as i64 - 2 }
    }
}

pub fn tr_bar_joint2(n: u32, variant: TrBarVariant, atom: Atom) -> Result<Polynomial, CatalogError> {
    let m = n as i64;
    lazy_sum("trbar2", n, |i| ff(variant.denominator_base, i), |i| {
        let mut inner = Polynomial::zero();
        for j in 0..=i {
            let k = if variant.j_indexed { j } else { i };
            let l = i - j;
            let c = choose(i, j);
            inner += product(c.clone(), &[&e(ff(m, k), A, k), &e(ff(m - 2, l), B, l + 2)], atom);
            inner -= product(
                c.clone() * 2,
                &[&e(ff(m - 1, k), A, k + 1), &e(ff(m - 1, l), B, l + 1)],
                atom,
            );
            inner += product(c, &[&e(ff(m - 2, k), A, k + 2), &e(ff(m, l), B, l)], atom);
        }
        &inner * &product(sign(i) * choose(n, i), &[&e(BigInt::one(), A, n - i)], atom)
    })
}

/// `Tr_n(a0, b0, c0)` double sum.
pub fn tr_joint3(n: u32, atom: Atom) -> Result<Polynomial, CatalogError> {
    let m = n as i64;
    lazy_sum("tr3", n, |i| ff(2 * m - 2, i), |i| {
        let inner: Polynomial = (0..=i)
            .map(|j| {
                let scalar = ff(m, j) * ff(m - 1, i - j) * choose(i, j);
                det2(
                    [
                        [e(BigInt::one(), B, j), e(BigInt::one(), C, j)],
                        [e(BigInt::one(), B, i - j + 1), e(BigInt::one(), C, i - j + 1)],
                    ],
                    &scalar,
                    atom,
                )
            })
            .sum();
        &inner * &product(sign(i) * choose(n, i), &[&e(BigInt::one(), A, n - i)], atom)
    })
}

/// `Ch_n(a0, b0, c0, d0)` sum over compositions `i1 + i2 + i3 = i`.
pub fn ch_joint4(n: u32, atom: Atom) -> Result<Polynomial, CatalogError> {
    let m = n as i64;
    lazy_sum("ch4", n, |i| ff(3 * m - 6, i), |i| {
        let mut inner = Polynomial::zero();
        for i1 in 0..=i {
            for i2 in 0..=i - i1 {
                let i3 = i - i1 - i2;
                let multinomial = factorial(i as u64)
                    / (factorial(i1 as u64) * factorial(i2 as u64) * factorial(i3 as u64));
                let row = |r: u32| {
                    [
                        e(ff(m - r as i64, i1), B, i1 + r),
                        e(ff(m - r as i64, i2), C, i2 + r),
                        e(ff(m - r as i64, i3), D, i3 + r),
                    ]
                };
                inner += det3(&[row(0), row(1), row(2)], &multinomial, atom);
            }
        }
        &inner * &product(sign(i) * choose(n, i), &[&e(BigInt::one(), A, n - i)], atom)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::parse;

    #[test]
    fn low_order_sums_expand_as_printed() {
        let tr2 = tr_joint2(3, &symbolic).unwrap();
        assert!(!tr2.is_zero());
        assert!(tr2.variables().iter().all(|v| matches!(v, crate::exact_poly::Variable::Coeff(s, k) if *k <= 3 && (*s == A || *s == B))));
        assert_eq!(tr_joint3(1, &ones).unwrap(), Polynomial::zero());
    }

    #[test]
    fn zero_denominators_need_vanishing_numerators() {
        let live = lazy_sum("t", 2, |i| BigInt::from(1 - i as i64), |_| Polynomial::one());
        assert_eq!(live, Err(CatalogError::ZeroDenominator { formula: "t", i: 1 }));
        let dead = lazy_sum("t", 2, |i| BigInt::from(1 - i as i64), |i| {
            if i == 1 { Polynomial::zero() } else { Polynomial::one() }
        });
        assert_eq!(dead, Ok(parse("0").unwrap()));
    }

    #[test]
    fn binomial_sums_vanish_on_small_orders() {
        assert!(tr_single(4, &ones).unwrap().is_zero());
        assert!(ch_single(4, &ones).unwrap().is_zero());
        assert!(tr_joint2(3, &ones).unwrap().is_zero());
        assert!(ch_joint4(4, &ones).unwrap().is_zero());
        assert_eq!(tr_bar_joint2(2, TrBarVariant::printed(2), &ones).unwrap(), parse("3").unwrap());
    }
}
