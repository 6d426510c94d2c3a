//! Determinants of square matrices with polynomial entries.

use std::collections::BTreeMap;

use super::polynomial::Polynomial;
use super::PolyError;

/// Row-major square matrix of polynomials.
pub type PolyMatrix = Vec<Vec<Polynomial>>;

/// Size up to which [`det`] expands cofactors instead of running Bareiss.
pub const COFACTOR_LIMIT: usize = 4;

fn check_square(m: &[Vec<Polynomial>]) -> Result<usize, PolyError> {
    let rows = m.len();
    if rows == 0 {
        return Err(PolyError::Shape { rows: 0, cols: 0 });
    }
    for row in m {
        if row.len() != rows {
            return Err(PolyError::Shape { rows, cols: row.len() });
        }
    }
    Ok(rows)
}

/// Exact determinant: cofactor expansion for `k <= 4`, memoized minor
/// expansion above that.
pub fn det(m: &[Vec<Polynomial>]) -> Result<Polynomial, PolyError> {
    let k = check_square(m)?;
    if k <= COFACTOR_LIMIT {
        det_cofactor(m)
    } else {
        det_minors(m)
    }
}

/// Division-free expansion by rows, memoizing the sum of signed partial
/// products for each set of used columns. Rows are taken in order of their
/// first nonzero column and states that can no longer be completed are
/// dropped, which keeps banded matrices such as Sylvester matrices cheap.
/// Supports up to 64 columns.
pub fn det_minors(m: &[Vec<Polynomial>]) -> Result<Polynomial, PolyError> {
    let k = check_square(m)?;
    if k > 64 {
        return Err(PolyError::Shape { rows: k, cols: k });
    }
    let support: Vec<u64> = m
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, e)| !e.is_zero()).fold(0, |acc, (c, _)| acc | 1 << c))
        .collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&r| support[r].trailing_zeros());
    let mut reachable = vec![0u64; k + 1];
    for pos in (0..k).rev() {
        reachable[pos] = reachable[pos + 1] | support[order[pos]];
    }
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut layer: BTreeMap<u64, Polynomial> = BTreeMap::from([(0, Polynomial::one())]);
    for (pos, &r) in order.iter().enumerate() {
        let mut next: BTreeMap<u64, Polynomial> = BTreeMap::new();
        for (&mask, partial) in &layer {
            for (c, entry) in m[r].iter().enumerate() {
                let bit = 1u64 << c;
                let used = mask | bit;
                if mask & bit != 0 || entry.is_zero() || (full & !used) & !reachable[pos + 1] != 0 {
                    continue;
                }
                let slot = next.entry(used).or_insert_with(Polynomial::zero);
                let odd = (mask >> c).count_ones() % 2 == 1;
                for (mono, coeff) in entry.terms() {
                    let coeff = if odd { -coeff } else { coeff.clone() };
                    slot.add_product(partial, &coeff, mono);
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        if next.is_empty() {
            return Ok(Polynomial::zero());
        }
        layer = next;
    }
    let d = layer.into_values().next().unwrap_or_else(Polynomial::zero);
    Ok(if permutation_is_odd(&order) { -d } else { d })
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for start in 0..p.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<Polynomial>]) -> Result<Polynomial, PolyError> {
    let k = check_square(m)?;
    let rows: Vec<&[Polynomial]> = m.iter().map(Vec::as_slice).collect();
    let cols: Vec<usize> = (0..k).collect();
    Ok(cofactor_rec(&rows, &cols))
}

fn cofactor_rec(rows: &[&[Polynomial]], cols: &[usize]) -> Polynomial {
    match cols.len() {
        0 => Polynomial::one(),
        1 => rows[0][cols[0]].clone(),
        _ => {
            let mut total = Polynomial::zero();
            for (pos, &c) in cols.iter().enumerate() {
                let entry = &rows[0][c];
                if entry.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
                let minor = cofactor_rec(&rows[1..], &rest);
                let term = entry * &minor;
                if pos % 2 == 0 {
                    total += &term;
                } else {
                    total -= &term;
                }
            }
            total
        }
    }
}

/// Fraction-free Gaussian elimination. Every division is exact by Sylvester's
/// identity; a remainder means a bug and is reported as an error.
pub fn det_bareiss(m: &[Vec<Polynomial>]) -> Result<Polynomial, PolyError> {
    let k = check_square(m)?;
    let mut a: PolyMatrix = m.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for i in 0..k - 1 {
        if a[i][i].is_zero() {
            match (i + 1..k).find(|&r| !a[r][i].is_zero()) {
                Some(r) => {
                    a.swap(i, r);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero()),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let cross = &(&a[r][c] * &a[i][i]) - &(&a[r][i] * &a[i][c]);
                a[r][c] = cross
                    .div_exact(&prev)
                    .map_err(|_| PolyError::BareissRemainder { step: i })?;
            }
            a[r][i] = Polynomial::zero();
        }
        prev = a[i][i].clone();
    }
    let d = a[k - 1][k - 1].clone();
    Ok(if negate { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::rational::int;
    use crate::exact_poly::variable::Series;

    fn a(i: u32) -> Polynomial {
        Polynomial::var(Series::A.at(i))
    }

    #[test]
    fn two_by_two_semi_hessian() {
        let m = vec![vec![a(0), a(1)], vec![a(1), a(2)]];
        let expected = &(&a(0) * &a(2)) - &a(1).pow(2);
        assert_eq!(det(&m).unwrap(), expected);
        assert_eq!(det_bareiss(&m).unwrap(), expected);
        assert_eq!(det_minors(&m).unwrap(), expected);
    }

    #[test]
    fn equal_rows_vanish() {
        let row = vec![a(0), a(1), Polynomial::from(3), a(2), a(3)];
        let m = vec![
            row.clone(),
            vec![a(1), a(2), a(3), a(0), Polynomial::one()],
            row,
            vec![a(2), Polynomial::zero(), a(1), a(1), a(0)],
            vec![a(3), a(3), a(0), Polynomial::from(5), a(2)],
        ];
        assert!(det(&m).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        let m = vec![vec![a(0), a(1)], vec![a(1)]];
        assert_eq!(det(&m), Err(PolyError::Shape { rows: 2, cols: 1 }));
        assert_eq!(det(&[]), Err(PolyError::Shape { rows: 0, cols: 0 }));
    }

    #[test]
    fn bareiss_pivots_past_zero_entries() {
        let z = Polynomial::zero();
        let m = vec![
            vec![z.clone(), a(0), z.clone(), z.clone(), z.clone()],
            vec![a(1), z.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), a(2), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), Polynomial::from(2), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone(), a(3)],
        ];
        let expected = (&(&a(0) * &a(1)) * &(&a(2) * &a(3))).scale(&int(-2));
        assert_eq!(det_bareiss(&m).unwrap(), expected);
        assert_eq!(det_cofactor(&m).unwrap(), expected);
        assert_eq!(det_minors(&m).unwrap(), expected);
    }
}
