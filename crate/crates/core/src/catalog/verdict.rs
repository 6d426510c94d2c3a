use serde::Serialize;

use crate::exact_poly::{format_rational, Monomial, Polynomial, Rational};

/// Outcome of comparing a printed closed formula with the normative value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    /// `closed = factor * normative`.
    Proportional {
        #[serde(with = "crate::exact_poly::serde_string")]
        factor: Rational,
    },
    /// The first monomial (in display order) whose coefficients disagree.
    Differs {
        monomial: String,
        normative: String,
        closed: String,
    },
}

impl Verdict {
    pub fn compare(normative: &Polynomial, closed: &Polynomial) -> Verdict {
        if normative == closed {
            return Verdict::Equal;
        }
        if let (Some((m, a)), false) = (normative.leading_term(), closed.is_zero()) {
            let factor = closed.coeff(m) / a;
            if normative.scale(&factor) == *closed {
                return Verdict::Proportional { factor };
            }
        }
        let mut monomials: Vec<&Monomial> = normative
            .terms()
            .chain(closed.terms())
            .map(|(m, _)| m)
            .collect();
        monomials.sort();
        let first = monomials
            .into_iter()
            .rev()
            .find(|m| normative.coeff(m) != closed.coeff(m))
            .expect("polynomials differ");
        Verdict::Differs {
            monomial: first.to_string(),
            normative: format_rational(&normative.coeff(first)),
            closed: format_rational(&closed.coeff(first)),
        }
    }

    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

/// A labelled comparison between the normative route and one printed formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub label: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::{parse, rat};

    #[test]
    fn verdicts() {
        let p = parse("a0*a2 - a1^2").unwrap();
        assert_eq!(Verdict::compare(&p, &p), Verdict::Equal);
        assert_eq!(Verdict::compare(&p, &-&p), Verdict::Proportional { factor: rat(-1, 1) });
        let q = parse("a0*a2 - 2*a1^2").unwrap();
        assert_eq!(
            Verdict::compare(&p, &q),
            Verdict::Differs { monomial: "a1^2".into(), normative: "-1".into(), closed: "-2".into() }
        );
        let json = serde_json::to_string(&ClosedFormCheck {
            label: "printed".into(),
            verdict: Verdict::Proportional { factor: rat(-1, 1) },
        })
        .unwrap();
        assert_eq!(json, r#"{"label":"printed","verdict":"proportional","factor":"-1"}"#);
    }
}
