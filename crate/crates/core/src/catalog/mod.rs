//! Named semi-invariant constructions: `Dv`, `W`, semi-hessian and
//! semi-jacobian, `Tr`, `Ch`, the discriminant and resultant, and the joint
//! constructions on two, three and four forms.

mod builders;
pub mod closed;
mod construction;
mod verdict;

pub use builders::{
    ch_joint4, ch_joint4_header_variant, ch_single, delta3x3, discr, discriminant_matrix, dv, resultant_matrix,
    semi_hessian, semi_jacobian, sres, tr_bar_joint2, tr_joint2, tr_joint3, tr_joint3_with, tr_single, w_poly,
    CrossChecked, Delta3, WPoly,
};
pub use construction::Construction;
pub use verdict::{ClosedFormCheck, Verdict};

use crate::exact_poly::{PolyError, Polynomial, Series};
use crate::forms::{derive_d, FormContext, FormError, SemiInvariant};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("{rule}; got n = {n}")]
    BelowMinOrder { construction: Construction, n: u32, rule: String },
    #[error("{construction} takes {expected} series, got {got}")]
    SeriesCount { construction: Construction, expected: usize, got: usize },
    #[error("closed formula {formula}: nonzero numerator over a zero denominator at i = {i}")]
    ZeroDenominator { formula: &'static str, i: u32 },
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Output of [`build`]: the polynomial, its certificate when it is a
/// semi-invariant, and any closed-formula comparisons.
#[derive(Clone, Debug)]
pub struct Built {
    pub construction: Construction,
    pub n: u32,
    pub series: Vec<Series>,
    pub context: FormContext,
    pub poly: Polynomial,
    /// `None` exactly when `D(poly) != 0`, which only happens for `W`.
    pub certified: Option<SemiInvariant>,
    pub d_image: Polynomial,
    pub checks: Vec<ClosedFormCheck>,
    pub degenerate: bool,
}

impl Built {
    fn from_semi(c: Construction, n: u32, series: Vec<Series>, s: SemiInvariant) -> Built {
        Built {
            construction: c,
            n,
            series,
            context: s.context().clone(),
            poly: s.poly().clone(),
            d_image: Polynomial::zero(),
            certified: Some(s),
            checks: Vec::new(),
            degenerate: false,
        }
    }

    fn with_checks(mut self, checks: Vec<ClosedFormCheck>) -> Built {
        self.checks = checks;
        self
    }
}

/// Builds `c` at order `n` on the given series (the construction's default
/// series when `series` is empty).
///
/// Constructions with fixed series labels in their printed formulas
/// (`tr`, `ch`, `tr2`, `trbar2`, `ch4`) accept only their defaults.
pub fn build(c: Construction, n: u32, series: &[Series]) -> Result<Built, CatalogError> {
    use Construction::*;
    let series: Vec<Series> = if series.is_empty() { c.default_series().to_vec() } else { series.to_vec() };
    if series.len() != c.arity() {
        return Err(CatalogError::SeriesCount { construction: c, expected: c.arity(), got: series.len() });
    }
    builders::require_order(c, n)?;
    let fixed = matches!(c, Tr1 | Ch1 | Tr2 | TrBar2 | Ch4) && series != c.default_series();
    if fixed {
        let s = series.iter().find(|s| !c.default_series().contains(s)).copied().unwrap_or(series[0]);
        return Err(FormError::InactiveSeries(s).into());
    }
    let s = |k: usize| series[k];
    let built = match c {
        Dv1 => Built::from_semi(c, n, series.clone(), dv(n, s(0), s(0))?),
        Dv2 => Built::from_semi(c, n, series.clone(), dv(n, s(0), s(1))?),
        W => {
            if s(0) != Series::A {
                return Err(FormError::InactiveSeries(s(0)).into());
            }
            let w = w_poly(n)?;
            let certified = if w.is_semi_invariant { SemiInvariant::certify(w.poly.clone(), &w.context).ok() } else { None };
            Built {
                construction: c,
                n,
                series: series.clone(),
                context: w.context,
                poly: w.poly,
                certified,
                d_image: w.d_image,
                checks: Vec::new(),
                degenerate: false,
            }
        }
        SemiHessian => Built::from_semi(c, n, series.clone(), semi_hessian(s(0), n)?),
        SemiJacobian => {
            let p = SemiInvariant::certify(Polynomial::var(s(0).at(0)), &FormContext::single(n, s(0))?)?;
            let q = SemiInvariant::certify(Polynomial::var(s(1).at(0)), &FormContext::single(n, s(1))?)?;
            Built::from_semi(c, n, series.clone(), semi_jacobian(&p, &q)?)
        }
        Discr => Built::from_semi(c, n, series.clone(), discr(n, s(0))?),
        SRes => Built::from_semi(c, n, series.clone(), sres(n, s(0), s(1))?),
        Tr3 => {
            let default = series == c.default_series();
            if default {
                let cc = tr_joint3(n)?;
                Built::from_semi(c, n, series.clone(), cc.value).with_checks(cc.checks)
            } else {
                Built::from_semi(c, n, series.clone(), tr_joint3_with(n, s(0), s(1), s(2))?)
            }
        }
        Delta3x3 => {
            let d = delta3x3(n, s(0), s(1), s(2))?;
            let mut b = Built::from_semi(c, n, series.clone(), d.value);
            b.degenerate = d.degenerate;
            b
        }
        Tr1 => cross(c, n, &series, tr_single(n)?),
        Ch1 => cross(c, n, &series, ch_single(n)?),
        Tr2 => cross(c, n, &series, tr_joint2(n)?),
        TrBar2 => cross(c, n, &series, tr_bar_joint2(n)?),
        Ch4 => cross(c, n, &series, ch_joint4(n)?),
    };
    debug_assert_eq!(derive_d(&built.poly, &built.context).ok(), Some(built.d_image.clone()));
    Ok(built)
}

fn cross(c: Construction, n: u32, series: &[Series], cc: CrossChecked) -> Built {
    Built::from_semi(c, n, series.to_vec(), cc.value).with_checks(cc.checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_validates_series() {
        assert!(matches!(
            build(Construction::Dv2, 2, &[Series::A]),
            Err(CatalogError::SeriesCount { expected: 2, got: 1, .. })
        ));
        assert!(build(Construction::Tr2, 2, &[Series::C, Series::D]).is_err());
        let b = build(Construction::SemiHessian, 3, &[Series::C]).unwrap();
        assert_eq!(b.poly.to_string(), "c0*c2 - c1^2");
        assert_eq!(
            build(Construction::Tr1, 3, &[]).unwrap_err().to_string(),
            "tr requires n >= 4 (ord of the semi-hessian is 2n-4, which must be at least n); got n = 3"
        );
    }

    #[test]
    fn w_is_built_uncertified() {
        let b = build(Construction::W, 2, &[]).unwrap();
        assert!(b.certified.is_none());
        assert!(!b.d_image.is_zero());
    }
}
