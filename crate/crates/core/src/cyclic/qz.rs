//! Elements of `ℚ/ℤ` as reduced fractions, and their decomposition into
//! Prüfer `p`-components.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::arith::{factorize, gcd, inv_mod, mul_mod};
use crate::error::{Error, Result};

/// Denominators above this are rejected.
pub const DENOMINATOR_BOUND: u64 = 1_000_000;

/// `num/den` modulo 1, reduced: `0 ≤ num < den`, `gcd(num, den) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QZElem {
    num: u64,
    den: u64,
}

impl QZElem {
    pub const ZERO: QZElem = QZElem { num: 0, den: 1 };

    /// Reduces `num/den` modulo 1.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::input("zero denominator"));
        }
        let r = num % den;
        let g = gcd(r, den);
        let (num, den) = (r / g, den / g);
        if den > DENOMINATOR_BOUND {
            return Err(Error::TooLarge {
                what: "denominator",
                size: den,
                bound: DENOMINATOR_BOUND,
            });
        }
        Ok(QZElem { num, den })
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, other: &QZElem) -> Result<QZElem> {
        let g = gcd(self.den, other.den);
        let den = (self.den / g)
            .checked_mul(other.den)
            .ok_or(Error::Overflow("ℚ/ℤ addition"))?;
        let a = mul_mod(self.num, den / self.den, den);
        let b = mul_mod(other.num, den / other.den, den);
        QZElem::new((a + b) % den, den)
    }

    pub fn neg(&self) -> QZElem {
        if self.num == 0 {
            *self
        } else {
            QZElem {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    /// `k · self` modulo 1.
    pub fn scale(&self, k: u64) -> QZElem {
        let num = mul_mod(self.num, k, self.den);
        let g = gcd(num, self.den);
        QZElem {
            num: num / g,
            den: self.den / g,
        }
    }
}

impl fmt::Display for QZElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for QZElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for QZElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| Error::input(format!("bad fraction {s:?}: {e}")))
        };
        match s.split_once('/') {
            Some((a, d)) => QZElem::new(parse(a)?, parse(d)?),
            None => QZElem::new(parse(s)?, 1),
        }
    }
}

/// A finitely supported element of `⊕_p U(p)`. Absent primes are zero; every
/// stored component is nonzero with denominator a power of its prime.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PruferVector {
    /// Sorted by prime.
    components: Vec<(u64, QZElem)>,
}

impl PruferVector {
    pub fn zero() -> Self {
        PruferVector::default()
    }

    /// Builds a vector from `(p, x_p)` pairs, validating that each
    /// denominator is a power of `p`. Zero components are dropped.
    pub fn from_components(parts: impl IntoIterator<Item = (u64, QZElem)>) -> Result<Self> {
        let mut components: Vec<(u64, QZElem)> = Vec::new();
        for (p, x) in parts {
            if x.is_zero() {
                continue;
            }
            let f = factorize(x.den);
            if f.len() != 1 || f[0].0 != p {
                return Err(Error::input(format!(
                    "component {x} at prime {p} does not have a {p}-power denominator"
                )));
            }
            components.push((p, x));
        }
        components.sort_unstable_by_key(|&(p, _)| p);
        if let Some(w) = components.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::input(format!("prime {} given twice", w[0].0)));
        }
        Ok(PruferVector { components })
    }

    pub fn component(&self, p: u64) -> QZElem {
        self.components
            .binary_search_by_key(&p, |&(q, _)| q)
            .map_or(QZElem::ZERO, |i| self.components[i].1)
    }

    pub fn components(&self) -> impl Iterator<Item = (u64, QZElem)> + '_ {
        self.components.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &PruferVector) -> Result<PruferVector> {
        let mut components = Vec::with_capacity(self.components.len() + other.components.len());
        let (mut i, mut j) = (0, 0);
        while i < self.components.len() || j < other.components.len() {
            let a = self.components.get(i);
            let b = other.components.get(j);
            let next = match (a, b) {
                (Some(&(p, x)), Some(&(q, _))) if p < q => {
                    i += 1;
                    (p, x)
                }
                (Some(&(p, _)), Some(&(q, y))) if q < p => {
                    j += 1;
                    (q, y)
                }
                (Some(&(p, x)), Some(&(_, y))) => {
                    i += 1;
                    j += 1;
                    (p, x.add(&y)?)
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            if !next.1.is_zero() {
                components.push(next);
            }
        }
        Ok(PruferVector { components })
    }

    /// Multiplies each component `x_p` by `factor(p)`.
    pub fn scale_by(&self, factor: impl Fn(u64) -> u64) -> PruferVector {
        PruferVector {
            components: self
                .components
                .iter()
                .map(|&(p, x)| (p, x.scale(factor(p))))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// The sum of the components in `ℚ/ℤ`.
    pub fn recompose(&self) -> Result<QZElem> {
        let d = self.components.iter().try_fold(1u64, |d, (_, x)| {
            d.checked_mul(x.den).ok_or(Error::Overflow("Prüfer recomposition"))
        })?;
        // denominators are pairwise coprime, so Σ a_p/q_p = (Σ a_p·(d/q_p))/d
        let num = self
            .components
            .iter()
            .fold(0u64, |acc, (_, x)| (acc + mul_mod(x.num, d / x.den, d)) % d);
        if d > DENOMINATOR_BOUND {
            return Err(Error::TooLarge {
                what: "denominator",
                size: d,
                bound: DENOMINATOR_BOUND,
            });
        }
        // each a_p is a unit mod q_p, so num is a unit mod d
        Ok(QZElem { num, den: d })
    }
}

impl fmt::Display for PruferVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, x)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PruferVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts either the vector rendering `{2: 3/4, 3: 2/3}` or a plain
/// fraction `a/d`, which is decomposed.
impl FromStr for PruferVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let Some(inner) = t.strip_prefix('{') else {
            return prufer_decompose(&t.parse()?);
        };
        let inner = inner
            .strip_suffix('}')
            .ok_or_else(|| Error::input(format!("unterminated vector {s:?}")))?;
        let mut parts = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (p, x) = item
                .split_once(':')
                .ok_or_else(|| Error::input(format!("expected `p: a/d`, got {item:?}")))?;
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|e| Error::input(format!("bad prime {p:?}: {e}")))?;
            parts.push((p, x.parse()?));
        }
        PruferVector::from_components(parts)
    }
}

/// Splits `a/d` into its components `a_p / p^{v_p(d)}`, with
/// `a_p ≡ a · (d / p^{v_p(d)})⁻¹ (mod p^{v_p(d)})`.
pub fn prufer_decompose(q: &QZElem) -> Result<PruferVector> {
    if q.is_zero() {
        return Ok(PruferVector::zero());
    }
    let factors = factorize(q.den);
    if let [(p, _)] = factors[..] {
        return Ok(PruferVector {
            components: vec![(p, *q)],
        });
    }
    let components = factors
        .into_iter()
        .map(|(p, alpha)| {
            let pa = p.pow(alpha);
            let rest = q.den / pa;
            let inv = inv_mod(rest % pa, pa).expect("cofactor is coprime to p");
            // a is a unit mod p^α, so the fraction is already reduced
            let a = mul_mod(q.num % pa, inv, pa);
            (p, QZElem { num: a, den: pa })
        })
        .collect();
    Ok(PruferVector { components })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: u64, d: u64) -> QZElem {
        QZElem::new(a, d).unwrap()
    }

    #[test]
    fn reduction_and_display() {
        assert_eq!(q(6, 8), q(3, 4));
        assert_eq!(q(5, 4), q(1, 4));
        assert_eq!(q(4, 4), QZElem::ZERO);
        assert_eq!(q(10, 12).to_string(), "5/6");
        assert_eq!(QZElem::ZERO.to_string(), "0/1");
        assert!(QZElem::new(1, 0).is_err());
        assert!(QZElem::new(1, DENOMINATOR_BOUND + 1).is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(3, 4).add(&q(2, 3)).unwrap(), q(5, 12));
        assert_eq!(q(1, 2).add(&q(1, 2)).unwrap(), QZElem::ZERO);
        assert_eq!(q(1, 3).neg(), q(2, 3));
        assert_eq!(q(1, 2).scale(3), q(1, 2));
        assert_eq!(q(1, 4).scale(2), q(1, 2));
    }

    #[test]
    fn decomposition_examples() {
        assert!(prufer_decompose(&QZElem::ZERO).unwrap().is_zero());

        // brute force: the unique a < 4, b < 3 with a/4 + b/3 ≡ 5/12
        let mut hits = Vec::new();
        for a in 0..4 {
            for b in 0..3 {
                if q(a, 4).add(&q(b, 3)).unwrap() == q(5, 12) {
                    hits.push((a, b));
                }
            }
        }
        assert_eq!(hits, vec![(3, 2)]);
        let v = prufer_decompose(&q(5, 12)).unwrap();
        assert_eq!(v.to_string(), "{2: 3/4, 3: 2/3}");

        assert_eq!(prufer_decompose(&q(1, 8)).unwrap().to_string(), "{2: 1/8}");
    }

    #[test]
    fn parsing() {
        let v: PruferVector = "{2: 1/2, 3: 1/3}".parse().unwrap();
        assert_eq!(v.component(2), q(1, 2));
        assert_eq!(v.component(5), QZElem::ZERO);
        let w: PruferVector = "5/12".parse().unwrap();
        assert_eq!(w.to_string(), "{2: 3/4, 3: 2/3}");
        assert_eq!("{}".parse::<PruferVector>().unwrap(), PruferVector::zero());
        assert!("{2: 1/3}".parse::<PruferVector>().is_err());
        assert!("{2: 1/2, 2: 1/4}".parse::<PruferVector>().is_err());
        assert!("x/3".parse::<QZElem>().is_err());
    }
}
