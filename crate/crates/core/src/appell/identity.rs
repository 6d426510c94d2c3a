use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use super::{cache_snapshot, Families, Family};
use crate::catalog::{build, Built, CatalogError, Construction};
use crate::exact_poly::{serde_string_opt, PolyError, Polynomial, Rational, Series, Variable};
use crate::forms::{FormContext, SemiInvariant};

/// Which Appell family replaces each coefficient series.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FamilyAssignment(BTreeMap<Series, Family>);

impl FamilyAssignment {
    pub fn new() -> Self {
        FamilyAssignment::default()
    }

    pub fn with(mut self, s: Series, f: Family) -> Self {
        self.0.insert(s, f);
        self
    }

    pub fn insert(&mut self, s: Series, f: Family) -> Option<Family> {
        self.0.insert(s, f)
    }

    pub fn get(&self, s: Series) -> Option<Family> {
        self.0.get(&s).copied()
    }

    /// Assigned series in ascending order.
    pub fn series(&self) -> Vec<Series> {
        self.0.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `series=family` items such as `a=B`.
    pub fn parse_items<'a>(items: impl IntoIterator<Item = &'a str>) -> Result<Self, String> {
        let mut out = FamilyAssignment::new();
        for item in items {
            let (s, f) = item
                .split_once('=')
                .ok_or_else(|| format!("assignment {item:?} is not of the form series=family"))?;
            let s: Series = s.trim().parse()?;
            let f: Family = f.trim().parse()?;
            if out.insert(s, f).is_some() {
                return Err(format!("series {s} is assigned twice"));
            }
        }
        Ok(out)
    }

    /// Fails unless the assigned series are exactly those of `ctx`.
    pub fn check_total(&self, ctx: &FormContext) -> Result<(), String> {
        if let Some(s) = ctx.series().find(|s| self.get(*s).is_none()) {
            return Err(format!("no family assigned to series {s}"));
        }
        if let Some(s) = self.0.keys().find(|s| !ctx.contains(**s)) {
            return Err(format!("series {s} is not active in the context ({ctx})"));
        }
        Ok(())
    }
}

impl FromStr for FamilyAssignment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyAssignment::parse_items(s.split([',', ' ']).filter(|t| !t.is_empty()))
    }
}

impl fmt::Display for FamilyAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|(s, fam)| format!("{s}={fam}")).collect();
        f.write_str(&items.join(" "))
    }
}

/// Substitution homomorphism `s_i -> A_i(x)` using the shared family cache.
pub fn phi(p: &Polynomial, assignment: &FamilyAssignment) -> Result<Polynomial, PolyError> {
    let mut families = cache_snapshot();
    let image = phi_with(&mut families, p, assignment);
    super::merge_cache(families);
    image
}

/// [`phi`] against a caller-owned cache.
pub fn phi_with(
    families: &mut Families,
    p: &Polynomial,
    assignment: &FamilyAssignment,
) -> Result<Polynomial, PolyError> {
    let mut bindings = HashMap::new();
    for v in p.variables() {
        let image = match v {
            Variable::Coeff(s, i) => {
                let f = assignment.get(s).ok_or(PolyError::MissingBinding(v))?;
                families.poly(f, i as usize).clone()
            }
            Variable::X => Polynomial::var(Variable::X),
            _ => return Err(PolyError::MissingBinding(v)),
        };
        bindings.insert(v, image);
    }
    p.substitute(&bindings)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The image is constant and no expectation was given.
    Constant,
    NonConstant,
    Match,
    Mismatch,
    /// The construction is not defined at this order.
    Undefined,
    Error,
}

/// Where the `expected` value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Supplied,
}

/// Result of substituting an Appell assignment into a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub construction: Construction,
    pub n: u32,
    pub assignment: FamilyAssignment,
    pub constant: bool,
    #[serde(with = "serde_string_opt", skip_serializing_if = "Option::is_none")]
    pub norm: Option<Rational>,
    #[serde(serialize_with = "plain", skip_serializing_if = "Polynomial::is_constant")]
    pub image: Polynomial,
    #[serde(with = "serde_string_opt", skip_serializing_if = "Option::is_none")]
    pub expected: Option<Rational>,
    pub provenance: Provenance,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn plain<S: Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl IdentityReport {
    fn failed(construction: Construction, n: u32, assignment: &FamilyAssignment, status: Status, error: String) -> Self {
        IdentityReport {
            construction,
            n,
            assignment: assignment.clone(),
            constant: false,
            norm: None,
            image: Polynomial::zero(),
            expected: None,
            provenance: Provenance::Computed,
            status,
            error: Some(error),
        }
    }

    /// Attaches an expected norm and updates the status.
    pub fn expect(mut self, value: Rational) -> Self {
        if matches!(self.status, Status::Constant | Status::Match | Status::Mismatch) {
            self.status = if self.norm.as_ref() == Some(&value) { Status::Match } else { Status::Mismatch };
        }
        self.expected = Some(value);
        self.provenance = Provenance::Supplied;
        self
    }

    /// True unless the identity failed or could not be evaluated.
    pub fn holds(&self) -> bool {
        matches!(self.status, Status::Constant | Status::Match)
    }

    pub fn render(&self) -> String {
        let head = format!("{} n={} [{}]", self.construction, self.n, self.assignment);
        match self.status {
            Status::Undefined | Status::Error => {
                format!("{head}: {}", self.error.as_deref().unwrap_or("failed"))
            }
            Status::NonConstant => format!("{head}: not constant, image = {}", self.image),
            _ => {
                let norm = self.norm.as_ref().map(crate::exact_poly::format_rational).unwrap_or_default();
                match &self.expected {
                    Some(e) => format!(
                        "{head}: norm = {norm}, expected {} ({})",
                        crate::exact_poly::format_rational(e),
                        if self.status == Status::Match { "PASS" } else { "FAIL" }
                    ),
                    None => format!("{head}: norm = {norm}"),
                }
            }
        }
    }
}

fn report(
    families: &mut Families,
    construction: Construction,
    n: u32,
    poly: &Polynomial,
    ctx: &FormContext,
    assignment: &FamilyAssignment,
) -> IdentityReport {
    if let Err(e) = assignment.check_total(ctx) {
        return IdentityReport::failed(construction, n, assignment, Status::Error, e);
    }
    let image = match phi_with(families, poly, assignment) {
        Ok(image) => image,
        Err(e) => return IdentityReport::failed(construction, n, assignment, Status::Error, e.to_string()),
    };
    let constant = image.diff_x().is_zero();
    debug_assert_eq!(constant, image.is_constant());
    IdentityReport {
        construction,
        n,
        assignment: assignment.clone(),
        constant,
        norm: constant.then(|| image.constant_term()),
        image,
        expected: None,
        provenance: Provenance::Computed,
        status: if constant { Status::Constant } else { Status::NonConstant },
        error: None,
    }
}

/// Substitutes `assignment` into a certified semi-invariant.
pub fn verify_identity(
    construction: Construction,
    s: &SemiInvariant,
    assignment: &FamilyAssignment,
) -> IdentityReport {
    let mut families = cache_snapshot();
    let out = report(&mut families, construction, s.context().order(), s.poly(), s.context(), assignment);
    super::merge_cache(families);
    out
}

/// Like [`verify_identity`], but also accepts uncertified outputs such as `W_n`,
/// whose report then carries the full non-constant image.
pub fn verify_built(b: &Built, assignment: &FamilyAssignment) -> IdentityReport {
    let mut families = cache_snapshot();
    let out = report(&mut families, b.construction, b.n, &b.poly, &b.context, assignment);
    super::merge_cache(families);
    out
}

fn scan_one(families: &mut Families, c: Construction, n: u32, assignment: &FamilyAssignment) -> IdentityReport {
    match build(c, n, &assignment.series()) {
        Ok(b) => report(families, c, n, &b.poly, &b.context, assignment),
        Err(e @ CatalogError::BelowMinOrder { .. }) => {
            IdentityReport::failed(c, n, assignment, Status::Undefined, e.to_string())
        }
        Err(e) => IdentityReport::failed(c, n, assignment, Status::Error, e.to_string()),
    }
}

/// One report per `n`, in order. Work is sharded by `n` over `jobs` threads and
/// each shard owns its family cache, so the output does not depend on `jobs`.
pub fn norm_table(
    c: Construction,
    assignment: &FamilyAssignment,
    range: RangeInclusive<u32>,
    jobs: usize,
) -> Vec<IdentityReport> {
    let seed = cache_snapshot();
    let orders: Vec<u32> = range.collect();
    let run = || {
        orders
            .par_iter()
            .map_init(|| seed.clone(), |families, &n| scan_one(families, c, n, assignment))
            .collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => {
            let mut families = seed.clone();
            orders.iter().map(|&n| scan_one(&mut families, c, n, assignment)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::{parse, rat};
    use Series::A;

    fn assign(items: &str) -> FamilyAssignment {
        items.parse().unwrap()
    }

    #[test]
    fn assignments_parse_and_print() {
        let a = assign("a=B, b=E");
        assert_eq!(a, FamilyAssignment::new().with(A, Family::B).with(Series::B, Family::E));
        assert_eq!(a.to_string(), "a=B b=E");
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"a":"B","b":"E"}"#);
        assert!("a=Q".parse::<FamilyAssignment>().is_err());
        assert!("a=B a=E".parse::<FamilyAssignment>().is_err());
        assert!("aB".parse::<FamilyAssignment>().is_err());
    }

    #[test]
    fn gamma_images() {
        let gamma = parse("a0*a2 - a1^2").unwrap();
        assert_eq!(phi(&gamma, &assign("a=B")).unwrap(), Polynomial::constant(rat(-1, 12)));
        assert_eq!(phi(&gamma, &assign("a=T")).unwrap(), Polynomial::zero());
        assert_eq!(phi(&gamma, &assign("a=H")).unwrap(), Polynomial::constant(rat(-1, 1)));
        assert_eq!(phi(&gamma, &assign("b=H")), Err(PolyError::MissingBinding(A.at(0))));
    }

    #[test]
    fn reports_serialize_compactly() {
        let b = build(Construction::Dv2, 2, &[]).unwrap();
        let r = verify_built(&b, &assign("a=B b=E"));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"construction":"dv2","n":2,"assignment":{"a":"B","b":"E"},"constant":true,"norm":"-1/3","provenance":"computed","status":"constant"}"#
        );
        let r = r.expect(rat(1, 3));
        assert_eq!(r.status, Status::Mismatch);
        assert!(!r.holds());
    }

    #[test]
    fn non_semi_invariants_report_their_image() {
        let w = build(Construction::W, 2, &[]).unwrap();
        let r = verify_built(&w, &assign("a=B"));
        assert_eq!(r.status, Status::NonConstant);
        assert!(!r.constant);
        assert!(r.image.degree_in(Variable::X) > 0);
        assert!(serde_json::to_string(&r).unwrap().contains("\"image\":"));
    }

    #[test]
    fn assignment_must_be_total() {
        let b = build(Construction::Dv2, 2, &[]).unwrap();
        assert_eq!(verify_built(&b, &assign("a=B")).status, Status::Error);
        assert_eq!(verify_built(&b, &assign("a=B b=E c=H")).status, Status::Error);
    }

    #[test]
    fn scans_record_undefined_orders_inline() {
        let rows = norm_table(Construction::Tr1, &assign("a=H"), 3..=4, 2);
        assert_eq!(rows[0].status, Status::Undefined);
        assert_eq!(rows[1].norm, Some(rat(-6, 1)));
    }
}
