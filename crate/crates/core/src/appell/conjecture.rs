use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{cache_snapshot, merge_cache, phi_with, Families, Family, FamilyAssignment};
use crate::catalog::{build, Construction};
use crate::exact_poly::{binomial, format_rational, rat, serde_string, serde_string_opt, Polynomial, Rational, Series, Variable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Conjecture {
    /// `sum (-1)^i C(n,i) E_i E_(n-i)(x) = -2 E_(n+1)`.
    #[serde(rename = "euler-dv")]
    EulerDv,
    /// `||Discr_n(H)|| = prod_(k=1)^n k^k`.
    #[serde(rename = "hermite-discr")]
    HermiteDiscr,
    /// `sum (-1)^i C(n,i) B_i(x) E_(n-i)(x) = -2(2^(2n-1) - 1) B_(2n)`.
    #[serde(rename = "be-dv")]
    BeDv,
}

impl Conjecture {
    pub const ALL: [Conjecture; 3] = [Conjecture::EulerDv, Conjecture::HermiteDiscr, Conjecture::BeDv];

    pub fn name(self) -> &'static str {
        match self {
            Conjecture::EulerDv => "euler-dv",
            Conjecture::HermiteDiscr => "hermite-discr",
            Conjecture::BeDv => "be-dv",
        }
    }

    pub fn min_order(self) -> u32 {
        match self {
            Conjecture::HermiteDiscr => 2,
            _ => 1,
        }
    }

    fn construction(self) -> (Construction, FamilyAssignment) {
        match self {
            Conjecture::EulerDv => (Construction::Dv1, FamilyAssignment::new().with(Series::A, Family::E)),
            Conjecture::HermiteDiscr => (Construction::Discr, FamilyAssignment::new().with(Series::A, Family::H)),
            Conjecture::BeDv => (
                Construction::Dv2,
                FamilyAssignment::new().with(Series::A, Family::B).with(Series::B, Family::E),
            ),
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Conjecture::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown conjecture {s:?} (expected one of euler-dv, hermite-discr, be-dv)"))
    }
}

/// A labelled alternative reading evaluated next to the printed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxiliaryColumn {
    pub label: &'static str,
    #[serde(with = "serde_string")]
    pub value: Rational,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: u32,
    /// The norm, or `None` when the image is not constant or undefined.
    #[serde(with = "serde_string_opt")]
    pub lhs: Option<Rational>,
    #[serde(with = "serde_string")]
    pub rhs: Rational,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub auxiliary: Vec<AuxiliaryColumn>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ConjectureRow {
    pub fn render(&self) -> String {
        let lhs = self.lhs.as_ref().map(format_rational).unwrap_or_else(|| "undefined".into());
        let mut line = format!(
            "n={}: lhs = {lhs}, rhs = {} {}",
            self.n,
            format_rational(&self.rhs),
            if self.matches { "match" } else { "MISMATCH" }
        );
        for aux in &self.auxiliary {
            line.push_str(&format!(
                "; {} = {} {}",
                aux.label,
                format_rational(&aux.value),
                if aux.matches { "match" } else { "mismatch" }
            ));
        }
        if let Some(e) = &self.error {
            line.push_str(&format!(" ({e})"));
        }
        line
    }
}

/// The values of `||Dv_n(B, E)||` printed for `n = 1..4`.
pub const BE_DV_TABLE: [(i64, i64); 4] = [(0, 1), (-1, 3), (0, 1), (7, 15)];

fn pow2(e: u32) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

fn rhs(c: Conjecture, n: u32, families: &mut Families) -> Rational {
    match c {
        Conjecture::EulerDv => -families.norm(Family::E, n as usize + 1) * rat(2, 1),
        Conjecture::HermiteDiscr => (1..=n)
            .map(|k| Rational::from_integer(BigInt::from(k).pow(k)))
            .product(),
        Conjecture::BeDv => -(pow2(2 * n - 1) - Rational::one()) * families.norm(Family::B, 2 * n as usize) * rat(2, 1),
    }
}

fn auxiliary(c: Conjecture, n: u32, lhs: Option<&Rational>, families: &mut Families) -> Vec<AuxiliaryColumn> {
    if c != Conjecture::BeDv {
        return Vec::new();
    }
    let mut out = Vec::new();
    let variant = -(pow2(n - 1) - Rational::one()) * families.norm(Family::B, n as usize) * rat(2, 1);
    out.push(AuxiliaryColumn {
        label: "auxiliary -2(2^(n-1)-1)B_n",
        matches: lhs == Some(&variant),
        value: variant,
    });
    if let Some(&(p, q)) = BE_DV_TABLE.get(n as usize - 1) {
        let value = rat(p, q);
        out.push(AuxiliaryColumn { label: "printed table", matches: lhs == Some(&value), value });
    }
    out
}

/// Evaluates the conjecture exactly for each `n`, with the right-hand side
/// taken as printed.
pub fn conjecture_check(c: Conjecture, range: RangeInclusive<u32>) -> Vec<ConjectureRow> {
    let mut families = cache_snapshot();
    let (construction, assignment) = c.construction();
    let rows = range
        .map(|n| {
            let value = if n < c.min_order() {
                Err(format!("{c} requires n >= {}", c.min_order()))
            } else {
                build(construction, n, &[])
                    .map_err(|e| e.to_string())
                    .and_then(|b| phi_with(&mut families, &b.poly, &assignment).map_err(|e| e.to_string()))
                    .and_then(|image| image.as_constant().ok_or_else(|| format!("image {image} is not constant")))
            };
            let rhs = if n >= c.min_order() { rhs(c, n, &mut families) } else { Rational::zero() };
            let lhs = value.as_ref().ok().cloned();
            ConjectureRow {
                n,
                matches: lhs.as_ref() == Some(&rhs),
                auxiliary: if n >= c.min_order() { auxiliary(c, n, lhs.as_ref(), &mut families) } else { Vec::new() },
                lhs,
                rhs,
                error: value.err(),
            }
        })
        .collect();
    merge_cache(families);
    rows
}

/// Per-family check of `Dv_n(A, T) = ||Dv_n(A, T)||` and of the rearranged
/// identity `A_n(x) = sum_(i<n) (-1)^(i+1) C(n,i) A_i(x) x^(n-i) + A_n(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RearrangementRow {
    pub family: Family,
    pub n: u32,
    /// Whether `Dv_n(A, T)` is constant.
    pub constant: bool,
    #[serde(with = "serde_string_opt")]
    pub norm: Option<Rational>,
    /// `(-1)^n A_n(0)`, the value at `x = 0`.
    #[serde(with = "serde_string")]
    pub signed_number: Rational,
    /// `A_n(0)` as printed.
    #[serde(with = "serde_string")]
    pub printed_norm: Rational,
    pub rearrangement_holds: bool,
}

pub fn rearrangement_check(family: Family, range: RangeInclusive<u32>) -> Vec<RearrangementRow> {
    let mut families = cache_snapshot();
    let assignment = FamilyAssignment::new().with(Series::A, family).with(Series::B, Family::T);
    let x = Polynomial::var(Variable::X);
    let rows = range
        .map(|n| {
            let dv = build(Construction::Dv2, n, &[]).expect("dv2 is defined for n >= 1");
            let image = phi_with(&mut families, &dv.poly, &assignment).expect("assignment is total");
            let printed_norm = families.norm(family, n as usize);
            let signed_number = if n % 2 == 0 { printed_norm.clone() } else { -printed_norm.clone() };
            let mut rhs = Polynomial::constant(printed_norm.clone());
            for i in 0..n {
                let mut c = Rational::from_integer(binomial(n as u64, i as u64));
                if i % 2 == 0 {
                    c = -c;
                }
                rhs += &(families.poly(family, i as usize) * &x.pow(n - i)).scale(&c);
            }
            RearrangementRow {
                family,
                n,
                constant: image.diff_x().is_zero(),
                norm: image.as_constant(),
                signed_number,
                printed_norm,
                rearrangement_holds: *families.poly(family, n as usize) == rhs,
            }
        })
        .collect();
    merge_cache(families);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples() {
        let euler = conjecture_check(Conjecture::EulerDv, 2..=2);
        assert_eq!(euler[0].lhs, Some(rat(-1, 2)));
        assert!(euler[0].matches);
        let hermite = conjecture_check(Conjecture::HermiteDiscr, 3..=3);
        assert_eq!((hermite[0].lhs.clone(), hermite[0].rhs.clone()), (Some(rat(108, 1)), rat(108, 1)));
        let be = conjecture_check(Conjecture::BeDv, 2..=2);
        assert_eq!((be[0].lhs.clone(), be[0].rhs.clone()), (Some(rat(-1, 3)), rat(7, 15)));
        assert!(!be[0].matches);
        assert!(be[0].auxiliary.iter().all(|a| a.matches));
    }

    #[test]
    fn out_of_domain_rows_are_data() {
        let rows = conjecture_check(Conjecture::HermiteDiscr, 1..=2);
        assert!(rows[0].error.is_some() && !rows[0].matches);
        assert!(rows[1].matches);
    }

    #[test]
    fn rearrangement_fails_only_for_odd_orders() {
        for row in rearrangement_check(Family::B, 1..=6) {
            assert!(row.constant);
            assert_eq!(row.norm.as_ref(), Some(&row.signed_number));
            assert_eq!(row.rearrangement_holds, row.n % 2 == 0, "n = {}", row.n);
        }
    }
}
