use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_poly::{binomial, rat, Polynomial, Rational, Variable};

/// The four Appell sequences: Bernoulli, Euler, Hermite (probabilists') and
/// the powers `x^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    E,
    H,
    T,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::B, Family::E, Family::H, Family::T];

    pub fn letter(self) -> char {
        match self {
            Family::B => 'B',
            Family::E => 'E',
            Family::H => 'H',
            Family::T => 'T',
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" => Ok(Family::B),
            "E" => Ok(Family::E),
            "H" => Ok(Family::H),
            "T" => Ok(Family::T),
            _ => Err(format!("unknown family {s:?} (expected one of B, E, H, T)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed cache file {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("cached {family} sequence is inconsistent at index {index}")]
    Inconsistent { family: Family, index: usize },
}

/// Growable cache of `A_0(x), A_1(x), ...` and the numbers `A_k(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppellFamily {
    family: Family,
    polys: Vec<Polynomial>,
    #[serde(with = "norms_as_strings")]
    norms: Vec<Rational>,
}

/// Dense coefficients, lowest degree first.
type Dense = Vec<Rational>;

fn to_poly(dense: &[Rational]) -> Polynomial {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| Polynomial::var(Variable::X).pow(k as u32).scale(c))
        .sum()
}

fn to_dense(p: &Polynomial) -> Dense {
    let degree = p.degree_in(Variable::X) as usize;
    let mut out = vec![Rational::zero(); degree + 1];
    for (m, c) in p.terms() {
        out[m.exponent(Variable::X) as usize] = c.clone();
    }
    out
}

fn choose(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n as u64, k as u64))
}

impl AppellFamily {
    pub fn new(family: Family) -> Self {
        AppellFamily { family, polys: vec![Polynomial::one()], norms: vec![Rational::one()] }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of cached members.
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&Polynomial> {
        self.polys.get(k)
    }

    pub fn poly(&mut self, k: usize) -> &Polynomial {
        self.extend_to(k);
        &self.polys[k]
    }

    pub fn norm(&mut self, k: usize) -> Rational {
        self.extend_to(k);
        self.norms[k].clone()
    }

    /// Grows the cache until `A_k` is present.
    pub fn extend_to(&mut self, k: usize) {
        while self.polys.len() <= k {
            let next = self.next_dense();
            self.norms.push(next[0].clone());
            self.polys.push(to_poly(&next));
        }
    }

    fn next_dense(&self) -> Dense {
        let n = self.polys.len();
        let mut out = vec![Rational::zero(); n + 1];
        match self.family {
            Family::B => {
                // B_n = -1/(n+1) sum_{k<n} C(n+1, k) B_k, then B_n(x) = sum C(n, k) B_k x^(n-k).
                let bn = -(0..n).map(|k| choose(n + 1, k) * &self.norms[k]).sum::<Rational>()
                    / Rational::from_integer((n as i64 + 1).into());
                for k in 0..=n {
                    let bk = if k == n { &bn } else { &self.norms[k] };
                    out[n - k] = choose(n, k) * bk;
                }
            }
            Family::E => {
                out[n] = Rational::one();
                let half = rat(1, 2);
                for k in 0..n {
                    let scale = choose(n, k) * &half;
                    for (d, c) in to_dense(&self.polys[k]).into_iter().enumerate() {
                        out[d] -= &scale * c;
                    }
                }
            }
            Family::H => {
                for (d, c) in to_dense(&self.polys[n - 1]).into_iter().enumerate() {
                    out[d + 1] += c;
                }
                if n >= 2 {
                    let scale = Rational::from_integer((n as i64 - 1).into());
                    for (d, c) in to_dense(&self.polys[n - 2]).into_iter().enumerate() {
                        out[d] -= &scale * c;
                    }
                }
            }
            Family::T => out[n] = Rational::one(),
        }
        out
    }

    /// Checks `A_0 = 1`, degree `k`, the Appell property and the cached norms.
    pub fn validate(&self) -> Result<(), CacheError> {
        let bad = |index| CacheError::Inconsistent { family: self.family, index };
        if self.polys.len() != self.norms.len() || self.polys.first().map(Polynomial::is_one) != Some(true) {
            return Err(bad(0));
        }
        for (k, p) in self.polys.iter().enumerate() {
            let only_x = p.variables().iter().all(|v| *v == Variable::X);
            let monic_degree = p.degree_in(Variable::X) as usize == k
                && p.coeff(&crate::exact_poly::Monomial::power(Variable::X, k as u32)).is_one();
            if !only_x || !monic_degree || p.constant_term() != self.norms[k] {
                return Err(bad(k));
            }
            if k >= 1 {
                let scaled = self.polys[k - 1].scale(&Rational::from_integer((k as i64).into()));
                if p.diff_x() != scaled {
                    return Err(bad(k));
                }
            }
        }
        Ok(())
    }

    fn file_name(family: Family) -> String {
        format!("appell_{}.json", family.letter())
    }

    /// Reads `appell_<F>.json` from `dir`; `Ok(None)` when the file is absent.
    pub fn load(dir: &Path, family: Family) -> Result<Option<Self>, CacheError> {
        let path = dir.join(Self::file_name(family));
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path: path.display().to_string(), source }),
        };
        let cached: AppellFamily = serde_json::from_str(&text)
            .map_err(|source| CacheError::Json { path: path.display().to_string(), source })?;
        if cached.family != family {
            return Err(CacheError::Inconsistent { family, index: 0 });
        }
        cached.validate()?;
        Ok(Some(cached))
    }

    pub fn save(&self, dir: &Path) -> Result<(), CacheError> {
        let path = dir.join(Self::file_name(self.family));
        let io = |source| CacheError::Io { path: path.display().to_string(), source };
        fs::create_dir_all(dir).map_err(io)?;
        let text = serde_json::to_string(self).expect("cache serializes");
        fs::write(&path, text).map_err(io)
    }
}

mod norms_as_strings {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::exact_poly::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|t| parse_rational(&t).ok_or_else(|| D::Error::custom(format!("invalid rational {t:?}"))))
            .collect()
    }
}

/// One cache per family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Families([AppellFamily; 4]);

impl Default for Families {
    fn default() -> Self {
        Families(Family::ALL.map(AppellFamily::new))
    }
}

impl Families {
    pub fn get(&self, f: Family) -> &AppellFamily {
        &self.0[f.slot()]
    }

    pub fn get_mut(&mut self, f: Family) -> &mut AppellFamily {
        &mut self.0[f.slot()]
    }

    pub fn poly(&mut self, f: Family, k: usize) -> &Polynomial {
        self.get_mut(f).poly(k)
    }

    pub fn norm(&mut self, f: Family, k: usize) -> Rational {
        self.get_mut(f).norm(k)
    }

    pub fn extend_to(&mut self, k: usize) {
        for fam in &mut self.0 {
            fam.extend_to(k);
        }
    }

    /// Loads every family present in `dir`, keeping fresh caches for the rest.
    pub fn load(dir: &Path) -> Result<Self, CacheError> {
        let mut out = Families::default();
        for f in Family::ALL {
            if let Some(cached) = AppellFamily::load(dir, f)? {
                out.0[f.slot()] = cached;
            }
        }
        Ok(out)
    }

    pub fn save(&self, dir: &Path) -> Result<(), CacheError> {
        self.0.iter().try_for_each(|fam| fam.save(dir))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::parse;

    #[test]
    fn second_members() {
        let mut fams = Families::default();
        assert_eq!(*fams.poly(Family::B, 2), parse("x^2 - x + 1/6").unwrap());
        assert_eq!(*fams.poly(Family::E, 2), parse("x^2 - x").unwrap());
        assert_eq!(*fams.poly(Family::H, 2), parse("x^2 - 1").unwrap());
        assert_eq!(*fams.poly(Family::T, 2), parse("x^2").unwrap());
        assert_eq!(fams.norm(Family::B, 2), rat(1, 6));
        assert_eq!(fams.norm(Family::H, 2), rat(-1, 1));
        assert_eq!(fams.norm(Family::E, 3), rat(1, 4));
        assert_eq!(fams.norm(Family::B, 1), rat(-1, 2));
    }

    #[test]
    fn growth_keeps_invariants() {
        let mut fams = Families::default();
        fams.extend_to(12);
        for f in Family::ALL {
            assert_eq!(fams.get(f).len(), 13);
            fams.get(f).validate().unwrap();
        }
    }

    #[test]
    fn corrupted_cache_is_rejected() {
        let mut fam = AppellFamily::new(Family::E);
        fam.extend_to(4);
        fam.norms[3] = rat(1, 3);
        assert!(matches!(fam.validate(), Err(CacheError::Inconsistent { index: 3, .. })));
    }

    #[test]
    fn cache_round_trips_through_json() {
        let dir = std::env::temp_dir().join(format!("binform-cache-{}", std::process::id()));
        let mut fams = Families::default();
        fams.extend_to(6);
        fams.save(&dir).unwrap();
        let loaded = Families::load(&dir).unwrap();
        assert_eq!(loaded, fams);
        fs::remove_dir_all(&dir).unwrap();
    }
}
