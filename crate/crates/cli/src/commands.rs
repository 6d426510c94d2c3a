use std::fs;
use std::path::Path;
use std::process::ExitCode;

use binform::appell::{
    binomial_check, cache_snapshot, conjecture_check, family_poly, install_cache, norm_table, rearrangement_check,
    verify_built, Conjecture, Families, Family, Status,
};
use binform::catalog::{build, Verdict};
use binform::exact_poly::{format, format_rational, parse_rational, parse_with_limit, Series, Style, Variable};
use binform::forms::{
    derive_d, is_invariant, is_isobaric, is_semi_invariant, ord, printed_weight, weight, FormContext,
};
use serde_json::json;

use crate::{parse_assignment, Command};

pub enum Outcome {
    Ok,
    Mismatch,
}

impl Outcome {
    pub fn code(self) -> ExitCode {
        match self {
            Outcome::Ok => ExitCode::SUCCESS,
            Outcome::Mismatch => ExitCode::from(1),
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Ok
        } else {
            Outcome::Mismatch
        }
    }
}

pub fn load_cache(dir: &Path) {
    match Families::load(dir) {
        Ok(families) => install_cache(families),
        Err(e) => eprintln!("warning: ignoring family cache: {e}"),
    }
}

pub fn save_cache(dir: &Path) {
    if let Err(e) = cache_snapshot().save(dir) {
        eprintln!("warning: could not save family cache: {e}");
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Poly { family, degree, format: style } => {
            println!("{}", format(&family_poly(family, degree), style));
            Ok(Outcome::Ok)
        }
        Command::Build { construction, order, series, format: style, checks } => {
            let b = build(construction, order, &series).map_err(|e| e.to_string())?;
            if style == Style::Json {
                let out = json!({
                    "construction": construction,
                    "n": order,
                    "series": b.series,
                    "poly": b.poly,
                    "semi_invariant": b.certified.is_some(),
                    "degree": b.certified.as_ref().map(|s| s.degree()),
                    "weight": b.certified.as_ref().map(|s| s.weight()),
                    "checks": b.checks,
                });
                println!("{out}");
                return Ok(Outcome::Ok);
            }
            println!("{}", format(&b.poly, style));
            if checks {
                for c in &b.checks {
                    let verdict = match &c.verdict {
                        Verdict::Equal => "equal".to_string(),
                        Verdict::Proportional { factor } => format!("proportional, factor {}", format_rational(factor)),
                        Verdict::Differs { monomial, normative, closed } => {
                            format!("differs at {monomial}: {normative} vs {closed}")
                        }
                    };
                    println!("check {}: {verdict}", c.label);
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Check { expr, order, verbose } => check(&expr, order, verbose),
        Command::Verify { construction, order, assign, expect, json } => {
            let assignment = parse_assignment(&assign)?;
            let expected = expect
                .map(|t| parse_rational(&t).ok_or_else(|| format!("invalid rational {t:?}")))
                .transpose()?;
            let b = build(construction, order, &assignment.series()).map_err(|e| e.to_string())?;
            let mut report = verify_built(&b, &assignment);
            if let Some(e) = expected {
                report = report.expect(e);
            }
            if json {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                println!("{}", report.render());
            }
            match report.status {
                Status::Undefined | Status::Error => Err(report.error.unwrap_or_default()),
                _ => Ok(Outcome::from_pass(report.holds())),
            }
        }
        Command::Scan { construction, assign, from, to, jobs, out } => {
            if from > to {
                return Err(format!("empty range: --from {from} exceeds --to {to}"));
            }
            let assignment = parse_assignment(&assign)?;
            let rows = norm_table(construction, &assignment, from..=to, jobs);
            match out {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&rows).expect("reports serialize");
                    if path.as_os_str() == "-" {
                        println!("{text}");
                    } else {
                        fs::write(&path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    }
                }
                None => rows.iter().for_each(|r| println!("{}", r.render())),
            }
            Ok(Outcome::Ok)
        }
        Command::Conjecture { name, from, to, json } => conjecture(&name, from, to, json),
        Command::Binomial { sum, from, to, json } => {
            let rows = binomial_check(sum, from.unwrap_or(sum.min_order())..=to);
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
            } else {
                rows.iter().for_each(|r| println!("{sum} {}", r.render()));
            }
            Ok(Outcome::from_pass(rows.iter().all(|r| r.value.is_none() || r.vanishes())))
        }
    }
}

fn check(expr: &str, order: u32, verbose: bool) -> Result<Outcome, String> {
    let text = match fs::read_to_string(expr) {
        Ok(contents) => contents,
        Err(_) => expr.to_string(),
    };
    let p = parse_with_limit(text.trim(), Some(order)).map_err(|e| e.to_string())?;
    let mut series: Vec<Series> = p
        .variables()
        .into_iter()
        .filter_map(|v| match v {
            Variable::Coeff(s, _) => Some(s),
            _ => None,
        })
        .collect();
    series.dedup();
    if series.is_empty() {
        series.push(Series::A);
    }
    let ctx = FormContext::new(order, series).map_err(|e| e.to_string())?;
    let d_image = derive_d(&p, &ctx).map_err(|e| e.to_string())?;
    let semi = d_image.is_zero();
    println!("semi-invariant: {}", yes_no(semi));
    println!("invariant: {}", yes_no(is_invariant(&p, &ctx)));
    match p.is_homogeneous().then(|| p.total_degree()).flatten() {
        Some(d) => println!("degree: {d}"),
        None => println!("degree: inhomogeneous"),
    }
    match weight(&p, &ctx) {
        Some(w) => println!("weight: {w}"),
        None => println!("weight: not isobaric"),
    }
    if semi && is_isobaric(&p, &ctx) && !p.is_zero() {
        println!("ord: {}", ord(&p, &ctx).map_err(|e| e.to_string())?);
    } else {
        println!("ord: undefined");
    }
    let proper = ctx.series().any(|s| !p.partial(s.at(order)).is_zero());
    println!("proper: {}", yes_no(proper));
    if !semi {
        println!("D-image: {d_image}");
    }
    if verbose {
        println!("context: order {order}, series {ctx}");
        match printed_weight(&p, &ctx) {
            Some(w) => println!("printed weight formula: {w}"),
            None => println!("printed weight formula: not constant on terms"),
        }
        println!("semi-invariant (kernel test): {}", yes_no(is_semi_invariant(&p, &ctx)));
        if semi {
            println!("D-image: 0");
        }
    }
    Ok(Outcome::Ok)
}

fn conjecture(name: &str, from: Option<u32>, to: u32, json: bool) -> Result<Outcome, String> {
    let shift = match name {
        "b-shift" => Some(Family::B),
        "e-shift" => Some(Family::E),
        "h-shift" => Some(Family::H),
        _ => None,
    };
    if let Some(family) = shift {
        let rows = rearrangement_check(family, from.unwrap_or(1)..=to);
        if json {
            println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
        } else {
            for r in &rows {
                let norm = r.norm.as_ref().map(format_rational).unwrap_or_else(|| "not constant".into());
                println!(
                    "n={} ({}): Dv({family},T) = {norm}, (-1)^n {family}_n(0) = {}, printed {family}_n(0) = {}, rearranged identity {}",
                    r.n,
                    if r.n % 2 == 0 { "even" } else { "odd" },
                    format_rational(&r.signed_number),
                    format_rational(&r.printed_norm),
                    if r.rearrangement_holds { "holds" } else { "FAILS" }
                );
            }
        }
        return Ok(Outcome::from_pass(rows.iter().all(|r| r.rearrangement_holds)));
    }
    let c: Conjecture = name
        .parse()
        .map_err(|_| format!("unknown conjecture {name:?} (expected one of euler-dv, hermite-discr, be-dv, b-shift, e-shift, h-shift)"))?;
    let rows = conjecture_check(c, from.unwrap_or(c.min_order())..=to);
    if json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
    } else {
        rows.iter().for_each(|r| println!("{c} {}", r.render()));
    }
    Ok(Outcome::from_pass(rows.iter().all(|r| r.matches)))
}
