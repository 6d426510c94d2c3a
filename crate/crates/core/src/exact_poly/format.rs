//! Rendering polynomials as plain text, LaTeX and JSON.
//!
//! Terms are printed leading term first in the canonical monomial order, so
//! output is deterministic.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::polynomial::{Monomial, Polynomial};
use super::rational::{format_rational, parse_rational, Rational};
use super::variable::Variable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Plain,
    Latex,
    Json,
}

impl FromStr for Style {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Style::Plain),
            "latex" => Ok(Style::Latex),
            "json" => Ok(Style::Json),
            other => Err(format!("unknown format {other:?} (expected plain, latex or json)")),
        }
    }
}

pub fn format(p: &Polynomial, style: Style) -> String {
    match style {
        Style::Plain => format_plain(p),
        Style::Latex => format_latex(p),
        Style::Json => serde_json::to_string(p).expect("polynomial serializes"),
    }
}

pub fn format_plain(p: &Polynomial) -> String {
    render(p, format_rational, plain_monomial, "*")
}

pub fn format_latex(p: &Polynomial) -> String {
    render(p, latex_rational, latex_monomial, " ")
}

fn render(
    p: &Polynomial,
    scalar: impl Fn(&Rational) -> String,
    monomial: impl Fn(&Monomial) -> String,
    coeff_sep: &str,
) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms_desc().enumerate() {
        let magnitude = c.abs();
        match (k, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            out.push_str(&scalar(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&monomial(m));
        } else {
            out.push_str(&scalar(&magnitude));
            out.push_str(coeff_sep);
            out.push_str(&monomial(m));
        }
    }
    out
}

fn plain_monomial(m: &Monomial) -> String {
    m.to_string()
}

fn latex_monomial(m: &Monomial) -> String {
    m.iter()
        .map(|(v, e)| {
            if e == 1 {
                v.latex_name()
            } else {
                format!("{}^{{{}}}", v.latex_name(), e)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn latex_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

struct Powers<'a>(&'a Monomial);

impl Serialize for Powers<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (v, e) in self.0.iter() {
            map.serialize_entry(&v.plain_name(), &e)?;
        }
        map.end()
    }
}

struct Term<'a>(&'a Monomial, &'a Rational);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("coeff", &format_rational(self.1))?;
        st.serialize_field("powers", &Powers(self.0))?;
        st.end()
    }
}

struct Terms<'a>(&'a Polynomial);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (m, c) in self.0.terms_desc() {
            seq.serialize_element(&Term(m, c))?;
        }
        seq.end()
    }
}

/// `{"terms":[{"coeff":"3/2","powers":{"a0":1,"a2":1}}, ...]}`
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Polynomial", 1)?;
        st.serialize_field("terms", &Terms(self))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct RawTerm {
    coeff: String,
    powers: RawPowers,
}

struct RawPowers(Vec<(Variable, u32)>);

impl<'de> Deserialize<'de> for RawPowers {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PowersVisitor;

        impl<'de> Visitor<'de> for PowersVisitor {
            type Value = RawPowers;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from variable names to exponents")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RawPowers, A::Error> {
                let mut out = Vec::new();
                while let Some((name, exp)) = map.next_entry::<String, u32>()? {
                    let v = Variable::from_name(&name)
                        .ok_or_else(|| de::Error::custom(format!("unknown variable {name:?}")))?;
                    out.push((v, exp));
                }
                Ok(RawPowers(out))
            }
        }

        d.deserialize_map(PowersVisitor)
    }
}

#[derive(Deserialize)]
struct RawPolynomial {
    terms: Vec<RawTerm>,
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPolynomial::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c = parse_rational(&t.coeff)
                .ok_or_else(|| de::Error::custom(format!("invalid coefficient {:?}", t.coeff)))?;
            terms.push((Monomial::from_pairs(t.powers.0), c));
        }
        Ok(Polynomial::from_terms(terms))
    }
}
