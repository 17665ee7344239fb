//! Embeddings between finite cyclic groups, the automorphism lemma, and
//! amalgamation.

use std::fmt;

use serde::Serialize;

use super::arith::{gcd, inv_mod, mul_mod};
use crate::error::{Error, Result};

/// The map `n̂ : ℤ_m → ℤ_M`, `x ↦ n·x mod M`.
///
/// The multiplier is kept as a positive integer rather than a residue: the
/// Katětov functor `K(n̂)` reads the prime factorisation of `n` itself, and
/// two integers with the same residue can give different `K`. Use
/// [`CyclicEmbedding::same_map`] to compare the underlying group maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicEmbedding {
    source: u64,
    target: u64,
    multiplier: u64,
}

impl CyclicEmbedding {
    /// Requires `m | M`, `n ≥ 1` and `gcd(n, M) = M/m`.
    pub fn new(source: u64, target: u64, multiplier: u64) -> Result<Self> {
        if source == 0 || target == 0 {
            return Err(Error::input("cyclic group orders must be positive"));
        }
        if !target.is_multiple_of(source) {
            return Err(Error::input(format!(
                "ℤ_{source} does not embed in ℤ_{target}: {source} ∤ {target}"
            )));
        }
        if multiplier == 0 {
            return Err(Error::input("multiplier must be positive"));
        }
        let k = target / source;
        if gcd(multiplier, target) != k {
            return Err(Error::input(format!(
                "x ↦ {multiplier}x is not an embedding ℤ_{source} → ℤ_{target}: \
                 gcd({multiplier}, {target}) ≠ {k}"
            )));
        }
        Ok(CyclicEmbedding {
            source,
            target,
            multiplier,
        })
    }

    /// `k̂ : ℤ_m → ℤ_{mk}`, the inclusion onto the subgroup of order `m`.
    pub fn canonical(source: u64, target: u64) -> Result<Self> {
        if source == 0 || !target.is_multiple_of(source) {
            return Err(Error::input(format!("ℤ_{source} does not embed in ℤ_{target}")));
        }
        CyclicEmbedding::new(source, target, target / source)
    }

    /// The automorphism `b̂` of `ℤ_n`.
    pub fn automorphism(n: u64, b: u64) -> Result<Self> {
        CyclicEmbedding::new(n, n, b)
    }

    pub fn source_order(&self) -> u64 {
        self.source
    }

    pub fn target_order(&self) -> u64 {
        self.target
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    /// `target / source`.
    pub fn index(&self) -> u64 {
        self.target / self.source
    }

    pub fn residue(&self) -> u64 {
        self.multiplier % self.target
    }

    pub fn apply(&self, x: u64) -> u64 {
        mul_mod(self.multiplier, x, self.target)
    }

    pub fn same_map(&self, other: &CyclicEmbedding) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.residue() == other.residue()
    }

    /// `next ∘ self`, multiplying the integer multipliers.
    pub fn then(&self, next: &CyclicEmbedding) -> Result<CyclicEmbedding> {
        if self.target != next.source {
            return Err(Error::input(format!(
                "cannot compose ℤ_{} → ℤ_{} with ℤ_{} → ℤ_{}",
                self.source, self.target, next.source, next.target
            )));
        }
        let multiplier = self
            .multiplier
            .checked_mul(next.multiplier)
            .ok_or(Error::Overflow("embedding composition"))?;
        CyclicEmbedding::new(self.source, next.target, multiplier)
    }
}

impl fmt::Display for CyclicEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}̂ : ℤ_{} → ℤ_{}", self.multiplier, self.source, self.target)
    }
}

/// Given embeddings `e, f : ℤ_k → ℤ_n`, returns the smallest `b ≥ 1` with
/// `gcd(b, n) = 1` and `b·e ≡ f (mod n)`, so that `f = b̂ ∘ e`.
pub fn lemma_solve(e: &CyclicEmbedding, f: &CyclicEmbedding) -> Result<u64> {
    if e.source != f.source || e.target != f.target {
        return Err(Error::input(format!(
            "embeddings have different orders: ℤ_{} → ℤ_{} and ℤ_{} → ℤ_{}",
            e.source, e.target, f.source, f.target
        )));
    }
    let (k, n) = (e.source, e.target);
    let l = n / k;
    // e = l·u, f = l·v with u, v units mod k; need b ≡ v/u (mod k)
    let u = (e.residue() / l) % k;
    let v = (f.residue() / l) % k;
    let u_inv = inv_mod(u, k).ok_or_else(|| Error::invariant("embedding cofactor is not a unit"))?;
    let c = mul_mod(v, u_inv, k);
    let mut b = if c == 0 { k } else { c };
    while gcd(b, n) != 1 {
        b += k;
        if b > n.saturating_mul(k) {
            return Err(Error::invariant(format!("no unit lift of {c} mod {k} in ℤ_{n}")));
        }
    }
    if mul_mod(b, e.residue(), n) != f.residue() {
        return Err(Error::invariant(format!("lemma answer {b} fails for {e} and {f}")));
    }
    Ok(b)
}

/// A commuting square `left ∘ f = right ∘ g` into `ℤ_{mn}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Amalgam {
    pub left: CyclicEmbedding,
    pub right: CyclicEmbedding,
    /// The automorphism `b` of `ℤ_{mn}` applied after the canonical
    /// embedding of `ℤ_m`.
    pub twist: u64,
}

/// Amalgamates `f : ℤ_k → ℤ_m` and `g : ℤ_k → ℤ_n` over `ℤ_{mn}`: both
/// canonical embeddings are taken, then the left one is corrected by the
/// automorphism from [`lemma_solve`].
pub fn amalgamate(f: &CyclicEmbedding, g: &CyclicEmbedding) -> Result<Amalgam> {
    if f.source != g.source {
        return Err(Error::input(format!(
            "embeddings have different sources ℤ_{} and ℤ_{}",
            f.source, g.source
        )));
    }
    let (m, n) = (f.target, g.target);
    let mn = m.checked_mul(n).ok_or(Error::Overflow("amalgamation target"))?;
    let f1 = CyclicEmbedding::canonical(m, mn)?;
    let g1 = CyclicEmbedding::canonical(n, mn)?;
    let twist = lemma_solve(&f.then(&f1)?, &g.then(&g1)?)?;
    let left = f1.then(&CyclicEmbedding::automorphism(mn, twist)?)?;
    let right = g1;
    for x in 0..f.source {
        if left.apply(f.apply(x)) != right.apply(g.apply(x)) {
            return Err(Error::invariant(format!(
                "amalgamation square fails at {x} for {f} and {g}"
            )));
        }
    }
    Ok(Amalgam { left, right, twist })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::arith::units;

    fn emb(m: u64, n: u64, r: u64) -> CyclicEmbedding {
        CyclicEmbedding::new(m, n, r).unwrap()
    }

    #[test]
    fn validation() {
        assert!(CyclicEmbedding::new(3, 6, 2).is_ok());
        assert!(CyclicEmbedding::new(3, 6, 4).is_ok());
        assert!(CyclicEmbedding::new(3, 6, 6).is_err());
        assert!(CyclicEmbedding::new(3, 6, 3).is_err());
        assert!(CyclicEmbedding::new(4, 6, 1).is_err());
        assert!(CyclicEmbedding::new(1, 1, 0).is_err());
        assert!(CyclicEmbedding::new(2, 6, 15).is_ok());
        assert!(emb(2, 6, 3).same_map(&emb(2, 6, 15)));
        assert_ne!(emb(2, 6, 3), emb(2, 6, 15));
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_solve(&emb(3, 6, 2), &emb(3, 6, 4)).unwrap(), 5);
        assert_eq!(lemma_solve(&emb(3, 6, 2), &emb(3, 6, 2)).unwrap(), 1);
        assert_eq!(lemma_solve(&emb(1, 1, 1), &emb(1, 1, 1)).unwrap(), 1);
        assert!(lemma_solve(&emb(3, 6, 2), &emb(2, 6, 3)).is_err());
    }

    #[test]
    fn lemma_matches_unit_scan() {
        for n in 1..=24u64 {
            for k in (1..=n).filter(|k| n % k == 0) {
                let ms: Vec<u64> = (1..=n).filter(|&r| gcd(r, n) == n / k).collect();
                for &a in &ms {
                    for &c in &ms {
                        let (e, f) = (emb(k, n, a), emb(k, n, c));
                        let scan = (1..=n)
                            .find(|&b| gcd(b, n) == 1 && mul_mod(b, a, n) == c % n)
                            .unwrap();
                        assert_eq!(lemma_solve(&e, &f).unwrap(), scan, "{e} {f}");
                    }
                }
            }
        }
        assert!(!units(6).is_empty());
    }

    #[test]
    fn amalgamation_examples() {
        let a = amalgamate(&emb(2, 4, 2), &emb(2, 6, 3)).unwrap();
        assert_eq!(a.left.target_order(), 24);
        for x in 0..2 {
            assert_eq!(a.left.apply(2 * x), a.right.apply(3 * x));
        }
        let f = emb(3, 6, 4);
        assert_eq!(amalgamate(&f, &f).unwrap().twist, 1);
        let t = amalgamate(&emb(1, 5, 5), &emb(1, 7, 7)).unwrap();
        assert_eq!(t.left.apply(0), 0);
    }
}
