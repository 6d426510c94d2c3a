use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Label of a coefficient series. Up to four generic forms share one order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    pub const ALL: [Series; 4] = [Series::A, Series::B, Series::C, Series::D];

    pub fn letter(self) -> char {
        match self {
            Series::A => 'a',
            Series::B => 'b',
            Series::C => 'c',
            Series::D => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Series> {
        match c {
            'a' => Some(Series::A),
            'b' => Some(Series::B),
            'c' => Some(Series::C),
            'd' => Some(Series::D),
            _ => None,
        }
    }

    /// The coefficient variable `s_i` of this series.
    pub fn at(self, index: u32) -> Variable {
        Variable::Coeff(self, index)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Series {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next().and_then(Series::from_letter), chars.next()) {
            (Some(series), None) => Ok(series),
            _ => Err(format!("unknown series {s:?} (expected one of a, b, c, d)")),
        }
    }
}

/// A polynomial variable.
///
/// The derived ordering is the canonical one: coefficient variables by series
/// and then index, then the Appell variable `x`, then `X < Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Coeff(Series, u32),
    X,
    CovX,
    CovY,
}

impl Variable {
    pub fn is_coeff(self) -> bool {
        matches!(self, Variable::Coeff(..))
    }

    pub fn is_covariant(self) -> bool {
        matches!(self, Variable::CovX | Variable::CovY)
    }

    /// Plain name as accepted by the expression parser: `a3`, `b{12}`, `x`, `X`, `Y`.
    pub fn plain_name(self) -> String {
        match self {
            Variable::Coeff(s, i) if i < 10 => format!("{}{}", s.letter(), i),
            Variable::Coeff(s, i) => format!("{}{{{}}}", s.letter(), i),
            Variable::X => "x".to_string(),
            Variable::CovX => "X".to_string(),
            Variable::CovY => "Y".to_string(),
        }
    }

    pub fn latex_name(self) -> String {
        match self {
            Variable::Coeff(s, i) => format!("{}_{{{}}}", s.letter(), i),
            other => other.plain_name(),
        }
    }

    /// Inverse of [`Variable::plain_name`]; also accepts unbraced multi-digit
    /// indices (`a12`), which only occur in JSON keys.
    pub fn from_name(name: &str) -> Option<Variable> {
        match name {
            "x" => return Some(Variable::X),
            "X" => return Some(Variable::CovX),
            "Y" => return Some(Variable::CovY),
            _ => {}
        }
        let mut chars = name.chars();
        let series = Series::from_letter(chars.next()?)?;
        let rest = chars.as_str();
        let digits = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(rest);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return None;
        }
        digits.parse().ok().map(|i| Variable::Coeff(series, i))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.plain_name())
    }
}
