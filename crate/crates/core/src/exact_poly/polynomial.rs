use std::cmp::Ordering;
use std::collections::{btree_map::Entry, BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::rational::Rational;
use super::variable::Variable;
use super::PolyError;

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with every exponent positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[(Variable, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial::power(v, 1)
    }

    pub fn power(v: Variable, exp: u32) -> Self {
        let mut m = Monomial::one();
        if exp > 0 {
            m.0.push((v, exp));
        }
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Variable, u32)>>(pairs: I) -> Self {
        pairs
            .into_iter()
            .fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::power(v, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|pos| self.0[pos].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.clone();
        for (v, e) in other.iter() {
            out = out.shifted(v, -(e as i64))?;
        }
        Some(out)
    }

    /// Changes the exponent of `v` by `delta`; `None` if it would go negative.
    pub fn shifted(&self, v: Variable, delta: i64) -> Option<Monomial> {
        let mut out = self.0.clone();
        match out.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(pos) => {
                let e = out[pos].1 as i64 + delta;
                match e.cmp(&0) {
                    Ordering::Less => return None,
                    Ordering::Equal => {
                        out.remove(pos);
                    }
                    Ordering::Greater => out[pos].1 = e as u32,
                }
            }
            Err(pos) => match delta.cmp(&0) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.insert(pos, (v, delta as u32)),
            },
        }
        Some(Monomial(out))
    }

    /// The monomial with every variable rejected by `keep` removed.
    pub fn restricted(&self, keep: impl Fn(Variable) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(v, _)| keep(v)).collect())
    }
}

/// Lexicographic order with earlier variables dominating: `a0*a2 > a1^2 > x^2 > x > 1`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut lhs = self.0.iter();
        let mut rhs = other.0.iter();
        loop {
            match (lhs.next(), rhs.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => {
                    if va != vb {
                        return if va < vb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(eb);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: Variable) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc = HashMap::new();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        Polynomial::from_accumulator(acc)
    }

    fn from_accumulator(acc: HashMap<Monomial, Rational>) -> Self {
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Monomial::one()).is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in display order (leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Variable) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// `self += c * m * p` without building the intermediate product.
    pub(crate) fn add_product(&mut self, p: &Polynomial, c: &Rational, m: &Monomial) {
        for (n, a) in &p.terms {
            add_term(&mut self.terms, n.mul(m), a * c);
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power with a signed exponent; negative exponents are a domain error.
    pub fn try_pow(&self, exp: i64) -> Result<Polynomial, PolyError> {
        if exp < 0 {
            return Err(PolyError::NegativeExponent(exp));
        }
        let exp = u32::try_from(exp).map_err(|_| PolyError::NegativeExponent(exp))?;
        Ok(self.pow(exp))
    }

    pub fn partial(&self, v: Variable) -> Polynomial {
        let mut acc = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let lowered = m.shifted(v, -1).expect("exponent is positive");
                accumulate(&mut acc, lowered, c * Rational::from_integer(e.into()));
            }
        }
        Polynomial::from_accumulator(acc)
    }

    /// Formal derivative with respect to the Appell variable `x`.
    pub fn diff_x(&self) -> Polynomial {
        debug_assert!(
            self.variables().iter().all(|v| !v.is_covariant()),
            "diff_x is defined on polynomials without X, Y"
        );
        self.partial(Variable::X)
    }

    /// Ring homomorphism fixed by the images of the variables.
    ///
    /// Every variable occurring in `self` must be bound.
    pub fn substitute(&self, bindings: &HashMap<Variable, Polynomial>) -> Result<Polynomial, PolyError> {
        let mut powers: HashMap<(Variable, u32), Polynomial> = HashMap::new();
        let mut result = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for (v, e) in m.iter() {
                let image = bindings.get(&v).ok_or(PolyError::MissingBinding(v))?;
                let power = powers
                    .entry((v, e))
                    .or_insert_with(|| image.pow(e));
                term = &term * &*power;
                if term.is_zero() {
                    break;
                }
            }
            result += &term;
        }
        Ok(result)
    }

    /// Evaluates with every occurring variable bound to a rational.
    pub fn evaluate(&self, values: &HashMap<Variable, Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.iter() {
                let value = values.get(&v).ok_or(PolyError::MissingBinding(v))?;
                term *= num_traits::pow(value.clone(), e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Maps every term through `f`, which returns a replacement coefficient and
    /// monomial (or `None` to drop the term). Results are re-accumulated.
    pub fn map_terms<F>(&self, mut f: F) -> Polynomial
    where
        F: FnMut(&Monomial, &Rational) -> Option<(Monomial, Rational)>,
    {
        let mut acc = HashMap::new();
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, c) {
                accumulate(&mut acc, m2, c2);
            }
        }
        Polynomial::from_accumulator(acc)
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        let (lead_m, lead_c) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        if divisor.len() == 1 {
            let inv = lead_c.recip();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                let q = m.div(lead_m).ok_or(PolyError::InexactDivision)?;
                terms.insert(q, c * &inv);
            }
            return Ok(Polynomial { terms });
        }
        let inv = lead_c.recip();
        let mut rem = self.terms.clone();
        let mut quotient = BTreeMap::new();
        while let Some((m, c)) = rem.pop_last() {
            let q_m = m.div(lead_m).ok_or(PolyError::InexactDivision)?;
            let q_c = c * &inv;
            for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                let key = dm.mul(&q_m);
                let delta = &q_c * dc;
                match rem.entry(key) {
                    Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quotient.insert(q_m, q_c);
        }
        Ok(Polynomial { terms: quotient })
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    match terms.entry(m) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn accumulate(acc: &mut HashMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += c,
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

impl From<Variable> for Polynomial {
    fn from(v: Variable) -> Self {
        Polynomial::var(v)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(Rational::from_integer(c.into()))
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            match self.terms.entry(m.clone()) {
                Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
            }
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            match self.terms.entry(m.clone()) {
                Entry::Occupied(mut o) => {
                    *o.get_mut() -= c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                Entry::Vacant(v) => {
                    v.insert(-c);
                }
            }
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if self.len() == 1 {
            let (m, c) = self.leading_term().unwrap();
            return rhs.mul_monomial(c, m);
        }
        if rhs.len() == 1 {
            let (m, c) = rhs.leading_term().unwrap();
            return self.mul_monomial(c, m);
        }
        let mut acc = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut acc, ma.mul(mb), ca * cb);
            }
        }
        Polynomial::from_accumulator(acc)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        if self.is_zero() {
            *self = rhs;
            return;
        }
        for (m, c) in rhs.terms {
            add_term(&mut self.terms, m, c);
        }
    }
}

impl SubAssign<Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::format_plain(self))
    }
}
