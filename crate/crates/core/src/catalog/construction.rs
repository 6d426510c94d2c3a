use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact_poly::Series;

/// The named semi-invariant constructions. The CLI identifier of each
/// variant is its serde name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Construction {
    #[serde(rename = "dv")]
    Dv1,
    #[serde(rename = "w")]
    W,
    #[serde(rename = "tr")]
    Tr1,
    #[serde(rename = "ch")]
    Ch1,
    #[serde(rename = "discr")]
    Discr,
    #[serde(rename = "dv2")]
    Dv2,
    #[serde(rename = "tr2")]
    Tr2,
    #[serde(rename = "trbar2")]
    TrBar2,
    #[serde(rename = "sres")]
    SRes,
    #[serde(rename = "tr3")]
    Tr3,
    #[serde(rename = "delta3")]
    Delta3x3,
    #[serde(rename = "ch4")]
    Ch4,
    #[serde(rename = "hess")]
    SemiHessian,
    #[serde(rename = "jac")]
    SemiJacobian,
}

use Construction::*;

impl Construction {
    pub const ALL: [Construction; 14] = [
        Dv1, W, Tr1, Ch1, Discr, Dv2, Tr2, TrBar2, SRes, Tr3, Delta3x3, Ch4, SemiHessian, SemiJacobian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Dv1 => "dv",
            W => "w",
            Tr1 => "tr",
            Ch1 => "ch",
            Discr => "discr",
            Dv2 => "dv2",
            Tr2 => "tr2",
            TrBar2 => "trbar2",
            SRes => "sres",
            Tr3 => "tr3",
            Delta3x3 => "delta3",
            Ch4 => "ch4",
            SemiHessian => "hess",
            SemiJacobian => "jac",
        }
    }

    /// Number of distinct series consumed.
    pub fn arity(self) -> usize {
        self.default_series().len()
    }

    pub fn default_series(self) -> &'static [Series] {
        use Series::*;
        match self {
            Dv1 | W | Tr1 | Ch1 | Discr | SemiHessian => &[A],
            Dv2 | Tr2 | TrBar2 | SRes | SemiJacobian => &[A, B],
            Tr3 => &[A, B, C],
            Delta3x3 => &[B, C, D],
            Ch4 => &[A, B, C, D],
        }
    }

    pub fn min_order(self) -> u32 {
        match self {
            Dv1 | Dv2 | SRes | SemiJacobian => 1,
            W | Discr | Tr2 | Tr3 | Delta3x3 | SemiHessian => 2,
            Ch4 => 3,
            Tr1 | Ch1 | TrBar2 => 4,
        }
    }

    /// Degree in the coefficients; `None` for the inhomogeneous `W`.
    pub fn degree(self, n: u32) -> Option<u32> {
        match self {
            W => None,
            Dv1 | Dv2 | SemiHessian | SemiJacobian => Some(2),
            Tr1 | Tr2 | TrBar2 | Tr3 | Delta3x3 => Some(3),
            Ch1 | Ch4 => Some(4),
            Discr => Some(2 * n - 1),
            SRes => Some(2 * n),
        }
    }

    /// Weight `E`-eigenvalue at order `n`; `None` for `W`.
    pub fn weight(self, n: u32) -> Option<i64> {
        let n = n as i64;
        match self {
            W => None,
            Dv1 | Dv2 | SRes => Some(0),
            Discr => Some(n),
            Tr1 | TrBar2 => Some(n - 4),
            Ch1 => Some(2 * n - 8),
            Tr2 | Tr3 => Some(n - 2),
            Delta3x3 => Some(3 * n - 6),
            Ch4 => Some(2 * n - 6),
            SemiHessian => Some(2 * n - 4),
            SemiJacobian => Some(2 * n - 2),
        }
    }

    /// Whether a printed closed formula exists to compare against.
    pub fn has_closed_form(self) -> bool {
        matches!(self, Tr1 | Ch1 | Tr2 | TrBar2 | Tr3 | Ch4)
    }

    /// Human-readable rule quoted when `n` is below [`Construction::min_order`].
    pub fn order_rule(self) -> String {
        let why = match self {
            Tr1 => "ord of the semi-hessian is 2n-4, which must be at least n",
            Ch1 => "the semi-hessian needs order 2n-4 >= n",
            TrBar2 => "ord of [a0,b0]^2 is 2n-4, which must be at least n",
            Ch4 => "ord of the 3x3 determinant is 3n-6, which must be at least n",
            Tr2 | Tr3 => "ord of the semi-jacobian is 2n-2, which must be at least n",
            Delta3x3 | SemiHessian => "the construction uses coefficients up to index 2",
            Discr => "the Sylvester matrix needs n >= 2",
            W => "the defining sum needs n >= 2",
            Dv1 | Dv2 | SRes | SemiJacobian => "the order must be positive",
        };
        format!("{} requires n >= {} ({})", self.name(), self.min_order(), why)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Construction::ALL.iter().map(|c| c.name()).collect();
                format!("unknown construction {s:?} (expected one of {})", names.join(", "))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Construction::ALL {
            assert_eq!(c.name().parse::<Construction>(), Ok(c));
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
        assert!("nope".parse::<Construction>().is_err());
    }

    #[test]
    fn weights_vanish_exactly_at_invariants() {
        assert_eq!(Tr1.weight(4), Some(0));
        assert_eq!(Ch4.weight(3), Some(0));
        assert_eq!(Delta3x3.weight(3), Some(3));
        assert_eq!(W.weight(3), None);
        assert_eq!(Discr.weight(3), Some(3));
    }
}
