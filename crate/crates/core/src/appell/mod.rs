//! Appell families, the substitution homomorphism `phi`, norms of
//! semi-invariants, conjecture scans and binomial sums.

mod binomial;
mod conjecture;
mod family;
mod identity;

use std::sync::{LazyLock, RwLock};

pub use binomial::{at_ones, binomial_check, BinomialRow, BinomialSum};
pub use conjecture::{
    conjecture_check, rearrangement_check, AuxiliaryColumn, Conjecture, ConjectureRow, RearrangementRow, BE_DV_TABLE,
};
pub use family::{AppellFamily, CacheError, Families, Family};
pub use identity::{
    norm_table, phi, phi_with, verify_built, verify_identity, FamilyAssignment, IdentityReport, Provenance, Status,
};

use crate::exact_poly::{Polynomial, Rational};

static CACHE: LazyLock<RwLock<Families>> = LazyLock::new(|| RwLock::new(Families::default()));

fn read_cache() -> std::sync::RwLockReadGuard<'static, Families> {
    CACHE.read().unwrap_or_else(|e| e.into_inner())
}

fn write_cache() -> std::sync::RwLockWriteGuard<'static, Families> {
    CACHE.write().unwrap_or_else(|e| e.into_inner())
}

/// `A_k(x)` for the family `f`.
pub fn family_poly(f: Family, k: usize) -> Polynomial {
    if let Some(p) = read_cache().get(f).get(k) {
        return p.clone();
    }
    write_cache().poly(f, k).clone()
}

/// `A_k(0)`: Bernoulli numbers, the Euler numbers `E_k(0)`, Hermite numbers,
/// and `[k = 0]` for the powers.
pub fn family_norm(f: Family, k: usize) -> Rational {
    family_poly(f, k).constant_term()
}

/// Copy of the shared cache.
pub fn cache_snapshot() -> Families {
    read_cache().clone()
}

/// Replaces the shared cache, e.g. with one loaded from disk.
pub fn install_cache(families: Families) {
    *write_cache() = families;
}

/// Keeps whichever cache is longer for each family. Members are uniquely
/// determined, so merging never changes a cached value.
pub(crate) fn merge_cache(families: Families) {
    let mut shared = write_cache();
    for f in Family::ALL {
        if families.get(f).len() > shared.get(f).len() {
            *shared.get_mut(f) = families.get(f).clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::rat;

    #[test]
    fn shared_cache_norms() {
        assert_eq!(family_norm(Family::B, 2), rat(1, 6));
        assert_eq!(family_norm(Family::H, 2), rat(-1, 1));
        assert_eq!(family_norm(Family::T, 3), rat(0, 1));
        assert_eq!(family_norm(Family::T, 0), rat(1, 1));
        assert_eq!(family_poly(Family::H, 3).to_string(), "x^3 - 3*x");
    }
}
