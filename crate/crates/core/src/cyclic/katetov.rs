//! The Katětov functor on finite cyclic groups: `η_m`, `K(n̂)`, and the
//! extension operators `aut(ℤ_k) → aut(ℤ_n)` it is meant to induce.

use serde::Serialize;

use super::arith::{crt, factorize, gcd, mul_mod, p_free_part, pow_mod, units, valuation};
use super::qz::{PruferVector, QZElem};
use crate::error::{Error, Result};
use crate::homogeneity::find_homomorphic_section;
use crate::perm::Perm;

/// `η_m(l) = ⟨ l·[m]_p / m : p ∈ ℙ ⟩`, taken literally.
pub fn eta(m: u64, l: u64) -> Result<PruferVector> {
    if m == 0 {
        return Err(Error::input("η_m needs m ≥ 1"));
    }
    if l >= m {
        return Err(Error::input(format!("{l} is not an element of ℤ_{m}")));
    }
    let mut parts = Vec::new();
    for (p, _) in factorize(m) {
        let num = l
            .checked_mul(p_free_part(m, p)?)
            .ok_or(Error::Overflow("η_m numerator"))?;
        parts.push((p, QZElem::new(num, m)?));
    }
    PruferVector::from_components(parts)
}

/// `K(n̂)(x) = ⟨ [n]_p · x_p : p ∈ ℙ ⟩`.
pub fn k_apply(n: u64, x: &PruferVector) -> Result<PruferVector> {
    if n == 0 {
        return Err(Error::input("K(n̂) needs n ≥ 1"));
    }
    Ok(x.scale_by(|p| n / p.pow(valuation(n, p))))
}

fn check_extension_args(b: u64, k: u64, n: u64) -> Result<u64> {
    if k == 0 || n == 0 || !n.is_multiple_of(k) {
        return Err(Error::input(format!("need k | n with k, n ≥ 1, got k = {k}, n = {n}")));
    }
    let b = b % k;
    if gcd(b, k) != 1 {
        return Err(Error::input(format!("{b} is not a unit modulo {k}")));
    }
    Ok(b)
}

/// A unit `c` modulo `n` whose multiplication map on `ℤ_n` extends
/// `b̂ ∈ aut(ℤ_k)` along the subgroup of order `k`, chosen prime by prime so
/// that `b ↦ c` is a homomorphism `(ℤ/k)* → (ℤ/n)*` whenever one exists.
///
/// On the `p`-part `ℤ_{p^e}` with `p^a ∥ k`:
/// * `a = 0`: the identity.
/// * `a = e`: `b` itself.
/// * `p` odd, `a = 1`: the Teichmüller lift `b^{p^{e-1}}`.
/// * `p = 2`, `a = 1`: the identity.
/// * `p = 2`, `a = 2`: `±1` according to `b mod 4`.
/// * otherwise no homomorphic choice exists and `b` is used; the caller can
///   detect this with [`is_homomorphic_extension`].
///
/// Returns the representative in `1..=n`.
pub fn extend_automorphism(b: u64, k: u64, n: u64) -> Result<u64> {
    let b = check_extension_args(b, k, n)?;
    let mut residues = Vec::new();
    let mut moduli = Vec::new();
    for (p, e) in factorize(n) {
        let q = p.pow(e);
        let a = valuation(k, p);
        let c = if a == 0 {
            1
        } else if a == e {
            b % q
        } else if p != 2 && a == 1 {
            pow_mod(b, p.pow(e - 1), q)
        } else if p == 2 && a == 1 {
            1
        } else if p == 2 && a == 2 {
            if b % 4 == 1 {
                1
            } else {
                q - 1
            }
        } else {
            b % q
        };
        residues.push(c);
        moduli.push(q);
    }
    let c = crt(&residues, &moduli)?;
    let c = if c == 0 { n } else { c };
    if c % k != b % k || gcd(c, n) != 1 {
        return Err(Error::invariant(format!(
            "{c} does not extend {b} from ℤ_{k} to ℤ_{n}"
        )));
    }
    Ok(c)
}

/// The restriction of `K(b̂)` to the subgroup of `ℚ/ℤ` of order `n`: the unit
/// `c ≡ [b]_p (mod p^{v_p(n)})` for each `p | n`, with `b` taken as its
/// representative in `1..k`.
pub fn katetov_restriction(b: u64, k: u64, n: u64) -> Result<u64> {
    let b = check_extension_args(b, k, n)?;
    let b = if b == 0 { 1 } else { b };
    let mut residues = Vec::new();
    let mut moduli = Vec::new();
    for (p, e) in factorize(n) {
        let q = p.pow(e);
        residues.push(p_free_part(b, p)? % q);
        moduli.push(q);
    }
    let c = crt(&residues, &moduli)?;
    Ok(if c == 0 { n } else { c })
}

/// Why an assignment `b ↦ c` fails to be a homomorphic extension section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SectionDefect {
    /// `ĉ` does not extend `b̂`.
    NotExtension { b: u64, c: u64 },
    /// `E(b₁b₂) ≠ E(b₁)E(b₂)`.
    NotHomomorphic { b1: u64, b2: u64 },
}

impl std::fmt::Display for SectionDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SectionDefect::NotExtension { b, c } => write!(f, "{c}̂ does not extend {b}̂"),
            SectionDefect::NotHomomorphic { b1, b2 } => {
                write!(f, "E({b1}·{b2}) ≠ E({b1})·E({b2})")
            }
        }
    }
}

/// Checks that `op(·, k, n)` sends units mod `k` to extending units mod `n`
/// and respects products. Returns the first defect in lexicographic order.
pub fn is_homomorphic_extension(
    k: u64,
    n: u64,
    op: impl Fn(u64, u64, u64) -> Result<u64>,
) -> Result<Option<SectionDefect>> {
    let us = units(k);
    let table: Vec<u64> = us.iter().map(|&b| op(b, k, n)).collect::<Result<_>>()?;
    for (&b, &c) in us.iter().zip(&table) {
        if c % k != b % k || gcd(c, n) != 1 {
            return Ok(Some(SectionDefect::NotExtension { b, c }));
        }
    }
    let image = |b: u64| table[us.binary_search(&(b % k)).expect("units are closed")];
    for &b1 in &us {
        for &b2 in &us {
            let lhs = image(mul_mod(b1, b2, k)) % n;
            let rhs = mul_mod(image(b1), image(b2), n);
            if lhs != rhs {
                return Ok(Some(SectionDefect::NotHomomorphic { b1, b2 }));
            }
        }
    }
    Ok(None)
}

/// Builds `aut(ℤ_k)` and its candidate extensions in `aut(ℤ_n)` as
/// permutations (`ℤ_k` sitting in `ℤ_n` as the multiples of `n/k`) and runs
/// the generic section search.
pub fn generic_section_exists(k: u64, n: u64) -> Result<bool> {
    check_extension_args(1, k, n)?;
    let step = n / k;
    let mult = |c: u64, m: u64| {
        Perm::from_images((0..m).map(|x| mul_mod(c, x, m) as usize).collect())
    };
    let source: Vec<Perm> = units(k).into_iter().map(|b| mult(b, k)).collect::<Result<_>>()?;
    let global: Vec<Perm> = units(n).into_iter().map(|c| mult(c, n)).collect::<Result<_>>()?;
    let candidates: Vec<Vec<Perm>> = source
        .iter()
        .map(|h| {
            global
                .iter()
                .filter(|g| {
                    (0..k as usize).all(|x| g.apply(x * step as usize) == h.apply(x) * step as usize)
                })
                .cloned()
                .collect()
        })
        .collect();
    Ok(find_homomorphic_section(&source, &candidates).is_some())
}

/// Section check for one subgroup `ℤ_k ≤ ℤ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupSection {
    pub k: u64,
    /// `(b, extend_automorphism(b, k, n))` for every unit `b` mod `k`.
    pub section: Vec<(u64, u64)>,
    pub defect: Option<SectionDefect>,
    /// Defect of the literal restriction of `K`, for comparison.
    pub katetov_defect: Option<SectionDefect>,
    pub generic_exists: bool,
}

/// Whether `ℤ_n` is uniformly homogeneous, subgroup by subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicUniformReport {
    pub n: u64,
    pub subgroups: Vec<SubgroupSection>,
}

impl CyclicUniformReport {
    pub fn uniform(&self) -> bool {
        self.subgroups.iter().all(|s| s.defect.is_none())
    }

    /// The number-theoretic and generic answers coincide on every subgroup.
    pub fn agrees_with_generic(&self) -> bool {
        self.subgroups
            .iter()
            .all(|s| s.defect.is_none() == s.generic_exists)
    }

    pub fn first_failure(&self) -> Option<&SubgroupSection> {
        self.subgroups.iter().find(|s| s.defect.is_some())
    }
}

/// Bound on `n` for [`cyclic_uniform_report`]; the generic cross-check
/// builds permutations of degree `n`.
pub const CYCLIC_UNIFORM_BOUND: u64 = 512;

pub fn cyclic_uniform_report(n: u64) -> Result<CyclicUniformReport> {
    if n == 0 {
        return Err(Error::input("ℤ_n needs n ≥ 1"));
    }
    if n > CYCLIC_UNIFORM_BOUND {
        return Err(Error::TooLarge {
            what: "cyclic group",
            size: n,
            bound: CYCLIC_UNIFORM_BOUND,
        });
    }
    let mut subgroups = Vec::new();
    for k in (1..=n).filter(|k| n.is_multiple_of(*k)) {
        let section = units(k)
            .into_iter()
            .map(|b| Ok((b, extend_automorphism(b, k, n)?)))
            .collect::<Result<_>>()?;
        subgroups.push(SubgroupSection {
            k,
            section,
            defect: is_homomorphic_extension(k, n, extend_automorphism)?,
            katetov_defect: is_homomorphic_extension(k, n, katetov_restriction)?,
            generic_exists: generic_section_exists(k, n)?,
        });
    }
    Ok(CyclicUniformReport { n, subgroups })
}
