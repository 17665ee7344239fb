//! Finite sets: the explicit extension functor and the Katětov obstruction
//! for the class of sets of size at most `n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homogeneity::{Obstruction, PartialIso};
use crate::perm::Perm;

/// A bijection between two subsets of `{0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SetBijection {
    pub ambient: usize,
    pub map: PartialIso,
}

impl SetBijection {
    pub fn new(ambient: usize, domain: Vec<usize>, images: Vec<usize>) -> Result<Self> {
        let map = PartialIso::new(domain, images)?;
        if let Some(&v) = map.domain.iter().chain(&map.map).find(|&&v| v >= ambient) {
            return Err(Error::VertexOutOfRange { vertex: v, size: ambient });
        }
        Ok(SetBijection { ambient, map })
    }

    /// `self ∘ other`, when `other` lands on `self`'s domain.
    pub fn compose(&self, other: &SetBijection) -> Option<SetBijection> {
        (self.ambient == other.ambient)
            .then(|| self.map.compose(&other.map))
            .flatten()
            .map(|map| SetBijection {
                ambient: self.ambient,
                map,
            })
    }
}

/// Extends `f : A → B` to a permutation of `{0..n-1}` sending `n ∖ A` onto
/// `n ∖ B` in increasing order.
pub fn ens_extend(f: &SetBijection) -> Perm {
    let n = f.ambient;
    let mut images = vec![usize::MAX; n];
    let mut in_domain = vec![false; n];
    let mut in_image = vec![false; n];
    for (&a, &b) in f.map.domain.iter().zip(&f.map.map) {
        images[a] = b;
        in_domain[a] = true;
        in_image[b] = true;
    }
    let rest_source = (0..n).filter(|&v| !in_domain[v]);
    let rest_target = (0..n).filter(|&v| !in_image[v]);
    for (a, b) in rest_source.zip(rest_target) {
        images[a] = b;
    }
    Perm::from_images_unchecked(images)
}

/// For `n ≥ 3`: the transposition of the two largest points, fixing
/// `{0..n-3}`. This is the lexicographically first nontrivial permutation
/// and so matches the generic scan. For `n ≤ 2` every nontrivial
/// permutation is fixed-point free and there is no witness.
pub fn ens_obstruction(n: usize) -> Result<Option<Obstruction>> {
    if n == 0 {
        return Err(Error::precondition("Ens(n) needs n ≥ 1"));
    }
    if n < 3 {
        return Ok(None);
    }
    let witness = Perm::from_cycles(n, &[&[n - 2, n - 1]])?;
    Ok(Some(Obstruction {
        fixed_set: (0..n - 2).collect(),
        witness,
    }))
}

/// Every bijection between equal-size subsets of `{0..n-1}`, including the
/// empty one when `include_empty` is set.
pub fn all_set_bijections(n: usize, include_empty: bool) -> Vec<SetBijection> {
    use itertools::Itertools;
    let mut out = Vec::new();
    let start = if include_empty { 0 } else { 1 };
    for k in start..=n {
        for domain in (0..n).combinations(k) {
            for image in (0..n).permutations(k) {
                out.push(SetBijection {
                    ambient: n,
                    map: PartialIso {
                        domain: domain.clone(),
                        map: image,
                    },
                });
            }
        }
    }
    out
}
