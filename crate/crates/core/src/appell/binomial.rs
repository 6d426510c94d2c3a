use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalog::closed::{self, ones, TrBarVariant};
use crate::catalog::{build, CatalogError, Construction};
use crate::exact_poly::{format_rational, serde_string_opt, Polynomial, Rational};

/// A sum that should vanish: a catalog construction at the all-ones vector,
/// or one of the printed binomial sums obtained from the closed formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinomialSum {
    Ones(Construction),
    Tr,
    Ch,
    Tr2,
    TrBar2,
    Ch4,
}

impl BinomialSum {
    pub const SUMS: [BinomialSum; 5] =
        [BinomialSum::Tr, BinomialSum::Ch, BinomialSum::Tr2, BinomialSum::TrBar2, BinomialSum::Ch4];

    pub fn name(self) -> String {
        match self {
            BinomialSum::Ones(c) => format!("ones:{c}"),
            other => other.construction().name().to_string(),
        }
    }

    /// The construction whose order domain the sum shares.
    pub fn construction(self) -> Construction {
        match self {
            BinomialSum::Ones(c) => c,
            BinomialSum::Tr => Construction::Tr1,
            BinomialSum::Ch => Construction::Ch1,
            BinomialSum::Tr2 => Construction::Tr2,
            BinomialSum::TrBar2 => Construction::TrBar2,
            BinomialSum::Ch4 => Construction::Ch4,
        }
    }

    pub fn min_order(self) -> u32 {
        self.construction().min_order()
    }
}

impl fmt::Display for BinomialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for BinomialSum {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(c) = s.strip_prefix("ones:") {
            return c.parse().map(BinomialSum::Ones);
        }
        BinomialSum::SUMS
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown sum {s:?} (expected tr, ch, tr2, trbar2, ch4 or ones:<construction>)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialRow {
    pub n: u32,
    #[serde(with = "serde_string_opt")]
    pub value: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BinomialRow {
    pub fn vanishes(&self) -> bool {
        self.value.as_ref().is_some_and(Zero::is_zero)
    }

    pub fn render(&self) -> String {
        match (&self.value, &self.error) {
            (Some(v), _) => format!("n={}: {}", self.n, format_rational(v)),
            (None, Some(e)) => format!("n={}: {e}", self.n),
            (None, None) => format!("n={}: undefined", self.n),
        }
    }
}

/// Every coefficient of `p` replaced by 1.
pub fn at_ones(p: &Polynomial) -> Rational {
    let values: HashMap<_, _> = p.variables().into_iter().map(|v| (v, Rational::one())).collect();
    p.evaluate(&values).expect("every variable is bound")
}

fn value(which: BinomialSum, n: u32) -> Result<Rational, CatalogError> {
    let sum = match which {
        BinomialSum::Ones(c) => return build(c, n, &[]).map(|b| at_ones(&b.poly)),
        BinomialSum::Tr => closed::tr_single(n, &ones)?,
        BinomialSum::Ch => closed::ch_single(n, &ones)?,
        BinomialSum::Tr2 => closed::tr_joint2(n, &ones)?,
        BinomialSum::TrBar2 => closed::tr_bar_joint2(n, TrBarVariant::printed(n), &ones)?,
        BinomialSum::Ch4 => closed::ch_joint4(n, &ones)?,
    };
    Ok(sum.as_constant().expect("the ones atom leaves no variables"))
}

/// Evaluates the sum exactly for each `n`; orders outside the domain are
/// reported inline.
pub fn binomial_check(which: BinomialSum, range: RangeInclusive<u32>) -> Vec<BinomialRow> {
    range
        .map(|n| {
            if n < which.min_order() {
                return BinomialRow {
                    n,
                    value: None,
                    error: Some(which.construction().order_rule()),
                };
            }
            match value(which, n) {
                Ok(v) => BinomialRow { n, value: Some(v), error: None },
                Err(e) => BinomialRow { n, value: None, error: Some(e.to_string()) },
            }
        })
        .collect()
}
