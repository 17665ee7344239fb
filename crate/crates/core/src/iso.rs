//! Embeddings, isomorphisms, automorphism groups, canonical forms and ages.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, Perm, PermGroup};
use crate::structure::FinStructure;

/// Default size bound for [`canonical_form`] (8! = 40320 relabelings).
pub const CANONICAL_BOUND: usize = 8;

/// Backtracking search for induced embeddings `a → b`.
///
/// Vertices of `a` are assigned in increasing order and candidates tried in
/// increasing order, so results come out in lexicographic order of the map
/// array. `fixed[v] = Some(w)` forces `v ↦ w`.
fn search_embeddings<F>(a: &FinStructure, b: &FinStructure, fixed: &[Option<usize>], mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = a.size();
    if a.signature() != b.signature() || n > b.size() {
        return;
    }
    debug_assert_eq!(fixed.len(), n);
    let bijective = n == b.size();
    // Invariants are preserved by isomorphisms; embeddings only preserve the
    // constant-tuple flags, which `consistent` already checks.
    let (inv_a, inv_b): (Vec<_>, Vec<_>) = if bijective {
        (
            (0..n).map(|v| a.vertex_invariant(v)).collect(),
            (0..b.size()).map(|v| b.vertex_invariant(v)).collect(),
        )
    } else {
        (Vec::new(), Vec::new())
    };
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; b.size()];
    let mut scratch = Vec::new();
    let _ = extend(
        a, b, fixed, &inv_a, &inv_b, 0, &mut map, &mut used, &mut scratch, &mut visit,
    );
}

#[allow(clippy::too_many_arguments)]
fn extend<F>(
    a: &FinStructure,
    b: &FinStructure,
    fixed: &[Option<usize>],
    inv_a: &[Vec<usize>],
    inv_b: &[Vec<usize>],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
    scratch: &mut Vec<usize>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if v == a.size() {
        return visit(map);
    }
    let candidates: Box<dyn Iterator<Item = usize>> = match fixed[v] {
        Some(w) => Box::new(std::iter::once(w)),
        None => Box::new(0..b.size()),
    };
    for w in candidates {
        if w >= b.size() || used[w] {
            continue;
        }
        if !inv_a.is_empty() && inv_a[v] != inv_b[w] {
            continue;
        }
        map[v] = w;
        if consistent(a, b, map, v, scratch) {
            used[w] = true;
            extend(a, b, fixed, inv_a, inv_b, v + 1, map, used, scratch, visit)?;
            used[w] = false;
        }
    }
    map[v] = usize::MAX;
    ControlFlow::Continue(())
}

/// Checks every tuple over `{0..=v}` that mentions `v`.
fn consistent(a: &FinStructure, b: &FinStructure, map: &[usize], v: usize, t: &mut Vec<usize>) -> bool {
    let mut image = Vec::new();
    for rel in 0..a.relation_count() {
        t.clear();
        t.resize(a.arity(rel), 0);
        loop {
            if t.contains(&v) {
                image.clear();
                image.extend(t.iter().map(|&x| map[x]));
                if a.holds(rel, t) != b.holds(rel, &image) {
                    return false;
                }
            }
            if !next_tuple(t, v) {
                break;
            }
        }
    }
    true
}

/// Odometer step over `{0..=max}^len`; false once exhausted.
pub(crate) fn next_tuple(t: &mut [usize], max: usize) -> bool {
    for i in (0..t.len()).rev() {
        if t[i] < max {
            t[i] += 1;
            t[i + 1..].iter_mut().for_each(|x| *x = 0);
            return true;
        }
    }
    false
}

/// All induced embeddings `a → b`, lexicographically ordered.
pub fn embeddings(a: &FinStructure, b: &FinStructure) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search_embeddings(a, b, &vec![None; a.size()], |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// First embedding `a → b` agreeing with `fixed` wherever it is `Some`.
pub fn embedding_extending(
    a: &FinStructure,
    b: &FinStructure,
    fixed: &[Option<usize>],
) -> Option<Vec<usize>> {
    let mut found = None;
    search_embeddings(a, b, fixed, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// All isomorphisms `a → b` in lexicographic order of the map array.
pub fn find_isomorphisms(a: &FinStructure, b: &FinStructure) -> Vec<Perm> {
    if a.size() != b.size() {
        return Vec::new();
    }
    embeddings(a, b)
        .into_iter()
        .map(Perm::from_images_unchecked)
        .collect()
}

pub fn are_isomorphic(a: &FinStructure, b: &FinStructure) -> bool {
    a.size() == b.size() && embedding_extending(a, b, &vec![None; a.size()]).is_some()
}

pub fn automorphism_group(s: &FinStructure) -> PermGroup {
    let elements: BTreeSet<Perm> = find_isomorphisms(s, s).into_iter().collect();
    PermGroup::from_elements_unchecked(s.size(), elements)
}

/// Lexicographically minimal relation-table encoding over all relabelings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    code: Vec<u8>,
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.code
    }

    pub fn to_hex(&self) -> String {
        self.code.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(hex: &str) -> Option<Self> {
        if !hex.len().is_multiple_of(2) {
            return None;
        }
        let code = (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(hex.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        Some(CanonicalForm { code })
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

/// Bits of `π⁻¹·S` in cell order, i.e. bit `u` is `S ⊨ R(π(u))`.
fn encode_pulled_back(s: &FinStructure, pi: &Perm, bits: &mut Vec<bool>) {
    bits.clear();
    let n = s.size();
    let mut t = Vec::new();
    let mut image = Vec::new();
    for rel in 0..s.relation_count() {
        let arity = s.arity(rel);
        let cells = n.pow(arity as u32);
        for mut idx in 0..cells {
            t.clear();
            for _ in 0..arity {
                t.push(idx % n);
                idx /= n;
            }
            t.reverse();
            image.clear();
            image.extend(t.iter().map(|&x| pi.apply(x)));
            bits.push(s.holds(rel, &image));
        }
    }
}

fn pack(size: usize, bits: &[bool]) -> CanonicalForm {
    let mut code = Vec::with_capacity(2 + bits.len() / 8);
    code.push(size as u8);
    for chunk in bits.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 0x80 >> i;
            }
        }
        code.push(byte);
    }
    CanonicalForm { code }
}

/// Returns `σ` and the canonical form such that `s.relabeled(σ)` is the
/// canonical representative of `s`'s isomorphism class.
pub fn canonical_labeling_with_bound(s: &FinStructure, bound: usize) -> Result<(Perm, CanonicalForm)> {
    if s.size() > bound {
        return Err(Error::TooLarge {
            what: "structure for canonical form",
            size: s.size() as u64,
            bound: bound as u64,
        });
    }
    let mut best: Option<(Vec<bool>, Perm)> = None;
    let mut bits = Vec::new();
    for pi in all_permutations(s.size()) {
        encode_pulled_back(s, &pi, &mut bits);
        if best.as_ref().is_none_or(|(b, _)| bits < *b) {
            best = Some((bits.clone(), pi));
        }
    }
    let (bits, pi) = best.expect("at least one permutation");
    Ok((pi.inverse(), pack(s.size(), &bits)))
}

pub fn canonical_labeling(s: &FinStructure) -> Result<(Perm, CanonicalForm)> {
    canonical_labeling_with_bound(s, CANONICAL_BOUND)
}

pub fn canonical_form(s: &FinStructure) -> Result<CanonicalForm> {
    canonical_labeling(s).map(|(_, c)| c)
}

/// The canonical representative of `s`'s isomorphism class.
pub fn canonical_representative(s: &FinStructure) -> Result<(FinStructure, CanonicalForm)> {
    let (sigma, code) = canonical_labeling(s)?;
    Ok((s.relabeled(&sigma), code))
}

/// One isomorphism class of nonempty induced substructures.
#[derive(Clone, Debug)]
pub struct AgeClass {
    pub representative: FinStructure,
    pub code: CanonicalForm,
    /// Every subset of the ambient structure in this class, sorted.
    pub copies: Vec<Vec<usize>>,
}

impl AgeClass {
    pub fn size(&self) -> usize {
        self.representative.size()
    }
}

/// Nonempty subsets of `{0..n-1}` as sorted vertex lists.
pub(crate) fn nonempty_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Isomorphism classes of nonempty induced substructures, sorted by
/// (size, canonical code), each with all of its copies.
pub fn age_classes(s: &FinStructure) -> Result<Vec<AgeClass>> {
    if s.size() > CANONICAL_BOUND {
        return Err(Error::TooLarge {
            what: "structure for age computation",
            size: s.size() as u64,
            bound: CANONICAL_BOUND as u64,
        });
    }
    let mut classes: BTreeMap<(usize, CanonicalForm), AgeClass> = BTreeMap::new();
    for subset in nonempty_subsets(s.size()) {
        let (sub, _) = s.induced_substructure(&subset)?;
        let key = (sub.size(), canonical_form(&sub)?);
        match classes.get_mut(&key) {
            Some(class) => class.copies.push(subset),
            None => {
                let (rep, code) = canonical_representative(&sub)?;
                classes.insert(
                    key,
                    AgeClass {
                        representative: rep,
                        code,
                        copies: vec![subset],
                    },
                );
            }
        }
    }
    Ok(classes
        .into_values()
        .map(|mut c| {
            c.copies.sort();
            c
        })
        .collect())
}

/// One canonical representative per isomorphism class of nonempty
/// substructures, sorted by (size, canonical code).
pub fn age(s: &FinStructure) -> Result<Vec<FinStructure>> {
    Ok(age_classes(s)?.into_iter().map(|c| c.representative).collect())
}
