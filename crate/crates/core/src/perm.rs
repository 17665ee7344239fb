//! Permutations of `{0..n-1}` and finite permutation groups stored by
//! their full element sets.
//!
//! Composition is right-to-left throughout the crate:
//! `g.compose(&h)` is the map `x ↦ g(h(x))`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree for which [`symmetric_group`] will enumerate elements.
pub const SYMMETRIC_GROUP_BOUND: usize = 8;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    /// Builds a permutation from its image array, rejecting anything that is
    /// not a bijection of `{0..len-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::input(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm(images)
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        size: degree,
                    });
                }
                if touched[x] {
                    return Err(Error::input(format!("point {x} occurs in two cycles")));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, mut exp: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let mut current = self.clone();
        let mut k = 1;
        while !current.is_identity() {
            current = current.compose(self);
            k += 1;
        }
        k
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.0[i] == i).collect()
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// A finite permutation group, kept as its complete element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: BTreeSet<Perm>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            elements: BTreeSet::from([Perm::identity(degree)]),
        }
    }

    /// Wraps an element set after checking it is a group.
    pub fn from_elements(degree: usize, elements: impl IntoIterator<Item = Perm>) -> Result<Self> {
        let elements: BTreeSet<Perm> = elements.into_iter().collect();
        if let Some(p) = elements.iter().find(|p| p.degree() != degree) {
            return Err(Error::input(format!(
                "element {p} has degree {}, expected {degree}",
                p.degree()
            )));
        }
        let group = PermGroup { degree, elements };
        if !group.is_closed() {
            return Err(Error::input("element set is not a group"));
        }
        Ok(group)
    }

    /// For element sets that are groups by construction (automorphism groups).
    pub(crate) fn from_elements_unchecked(degree: usize, elements: BTreeSet<Perm>) -> Self {
        PermGroup { degree, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.contains(p)
    }

    /// Elements in lexicographic order of their image arrays.
    pub fn iter(&self) -> impl Iterator<Item = &Perm> + '_ {
        self.elements.iter()
    }

    pub fn elements(&self) -> &BTreeSet<Perm> {
        &self.elements
    }

    /// Checks identity membership and `x ∘ y⁻¹ ∈ G` for every pair.
    pub fn is_closed(&self) -> bool {
        if !self.elements.contains(&Perm::identity(self.degree)) {
            return false;
        }
        let inverses: Vec<Perm> = self.elements.iter().map(Perm::inverse).collect();
        self.elements
            .iter()
            .all(|x| inverses.iter().all(|yi| self.elements.contains(&x.compose(yi))))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.elements.iter().any(|g| g.order() == n)
    }
}

/// Smallest group of the given degree containing `generators`.
pub fn group_closure(degree: usize, generators: &[Perm]) -> Result<PermGroup> {
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::input(format!(
            "generator {g} has degree {}, expected {degree}",
            g.degree()
        )));
    }
    let mut elements = BTreeSet::from([Perm::identity(degree)]);
    let mut queue = VecDeque::from([Perm::identity(degree)]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if elements.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    // Finite: products of generators already include inverses.
    Ok(PermGroup { degree, elements })
}

/// All `n!` permutations of degree `n`, in lexicographic order.
pub fn symmetric_group(n: usize) -> Result<PermGroup> {
    if n > SYMMETRIC_GROUP_BOUND {
        return Err(Error::TooLarge {
            what: "symmetric group degree",
            size: n as u64,
            bound: SYMMETRIC_GROUP_BOUND as u64,
        });
    }
    Ok(PermGroup {
        degree: n,
        elements: all_permutations(n).collect(),
    })
}

/// Iterates all permutations of `{0..n-1}` in lexicographic order.
pub(crate) fn all_permutations(n: usize) -> impl Iterator<Item = Perm> {
    use itertools::Itertools;
    (0..n).permutations(n).map(Perm)
}

/// Checks `f(g ∘ h) = f(g) ∘ f(h)` for every pair of elements of `source`.
pub fn is_homomorphism(source: &PermGroup, f: &BTreeMap<Perm, Perm>) -> Result<bool> {
    let mut image_degree = None;
    for g in source.iter() {
        let img = f
            .get(g)
            .ok_or_else(|| Error::input(format!("map undefined at {g}")))?;
        match image_degree {
            None => image_degree = Some(img.degree()),
            Some(d) if d != img.degree() => {
                return Err(Error::input("images have mixed degrees"));
            }
            _ => {}
        }
    }
    Ok(source.iter().all(|g| {
        source
            .iter()
            .all(|h| f[&g.compose(h)] == f[g].compose(&f[h]))
    }))
}

/// Extends `h ∈ S_k` to `S_n` by fixing `{k..n-1}`.
pub fn embed_sym(h: &Perm, n: usize) -> Result<Perm> {
    let k = h.degree();
    if k > n {
        return Err(Error::precondition(format!(
            "cannot embed S_{k} into S_{n}: {k} > {n}"
        )));
    }
    let mut images = h.0.clone();
    images.extend(k..n);
    Ok(Perm(images))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn composition_is_right_to_left() {
        let g = p(&[1, 2, 0]);
        let h = p(&[1, 0, 2]);
        // h first: 0 -> 1, then g: 1 -> 2
        assert_eq!(g.compose(&h).apply(0), 2);
        assert_eq!(&g * &h, g.compose(&h));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn cycle_display() {
        assert_eq!(Perm::identity(3).to_string(), "()");
        let eta = p(&[1, 0, 3, 4, 5, 2]);
        assert_eq!(eta.to_string(), "(0 1)(2 3 4 5)");
        assert_eq!(
            Perm::from_cycles(6, &[&[0, 1], &[2, 3, 4, 5]]).unwrap(),
            eta
        );
        assert_eq!(eta.order(), 4);
        assert_eq!(eta.pow(4), Perm::identity(6));
        assert!(!eta.pow(2).is_identity());
    }

    #[test]
    fn closure_examples() {
        let eta = p(&[1, 0, 3, 4, 5, 2]);
        let g = group_closure(6, &[eta]).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_cyclic());
        assert!(g.is_closed());

        assert_eq!(group_closure(4, &[]).unwrap(), PermGroup::trivial(4));

        let s3 = group_closure(3, &[p(&[1, 0, 2]), p(&[1, 2, 0])]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3, symmetric_group(3).unwrap());
    }

    #[test]
    fn closure_rejects_mixed_degrees() {
        assert!(group_closure(3, &[p(&[1, 0])]).is_err());
    }

    #[test]
    fn homomorphism_examples() {
        let s3 = symmetric_group(3).unwrap();
        let trivial: BTreeMap<_, _> = s3.iter().map(|g| (g.clone(), Perm::identity(5))).collect();
        assert!(is_homomorphism(&s3, &trivial).unwrap());

        let incl: BTreeMap<_, _> = s3
            .iter()
            .map(|g| (g.clone(), embed_sym(g, 5).unwrap()))
            .collect();
        assert!(is_homomorphism(&s3, &incl).unwrap());

        // Z2 -> Z4 sending the involution to a generator of order 4.
        let z2 = symmetric_group(2).unwrap();
        let eta = p(&[1, 0, 3, 4, 5, 2]);
        let bad: BTreeMap<_, _> = [
            (Perm::identity(2), Perm::identity(6)),
            (p(&[1, 0]), eta),
        ]
        .into_iter()
        .collect();
        assert!(!is_homomorphism(&z2, &bad).unwrap());

        let partial: BTreeMap<_, _> = [(Perm::identity(2), Perm::identity(2))].into_iter().collect();
        assert!(is_homomorphism(&z2, &partial).is_err());
    }

    #[test]
    fn embed_sym_examples() {
        assert_eq!(embed_sym(&Perm::identity(2), 5).unwrap(), Perm::identity(5));
        assert_eq!(embed_sym(&p(&[1, 0]), 4).unwrap(), p(&[1, 0, 2, 3]));
        let c = p(&[1, 2, 0]);
        assert_eq!(embed_sym(&c, 3).unwrap(), c);
        assert!(embed_sym(&c, 2).is_err());
    }

    #[test]
    fn symmetric_group_bound() {
        assert_eq!(symmetric_group(4).unwrap().order(), 24);
        assert!(symmetric_group(9).is_err());
    }
}
