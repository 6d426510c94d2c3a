use std::collections::BTreeSet;
use std::fmt;

use super::FormError;
use crate::exact_poly::{Series, Variable};

/// Order `n` of the generic binary forms together with the active coefficient
/// series. All active series share the same order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormContext {
    order: u32,
    series: BTreeSet<Series>,
}

impl FormContext {
    pub fn new(order: u32, series: impl IntoIterator<Item = Series>) -> Result<Self, FormError> {
        let series: BTreeSet<Series> = series.into_iter().collect();
        if order == 0 || series.is_empty() {
            return Err(FormError::EmptyContext);
        }
        Ok(FormContext { order, series })
    }

    pub fn single(order: u32, series: Series) -> Result<Self, FormError> {
        FormContext::new(order, [series])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn series(&self) -> impl Iterator<Item = Series> + '_ {
        self.series.iter().copied()
    }

    pub fn contains(&self, s: Series) -> bool {
        self.series.contains(&s)
    }

    pub fn union(&self, other: &FormContext) -> Result<FormContext, FormError> {
        if self.order != other.order {
            return Err(FormError::OrderMismatch(self.order, other.order));
        }
        FormContext::new(self.order, self.series().chain(other.series()))
    }

    pub fn require(&self, s: Series) -> Result<(), FormError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(FormError::InactiveSeries(s))
        }
    }

    /// Coefficient variables must be active with index at most `n`. `x` is
    /// always allowed; `X`, `Y` only when `covariant` is set.
    pub(crate) fn check(&self, v: Variable, covariant: bool) -> Result<(), FormError> {
        let ok = match v {
            Variable::Coeff(s, i) => self.contains(s) && i <= self.order,
            Variable::X => true,
            Variable::CovX | Variable::CovY => covariant,
        };
        if ok {
            Ok(())
        } else {
            Err(FormError::OutOfContext {
                variable: v,
                order: self.order,
                series: self.to_string(),
            })
        }
    }
}

impl fmt::Display for FormContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.series().map(|s| s.to_string()).collect();
        write!(f, "{}", names.join(","))
    }
}
