//! Decision procedures for homogeneity, set-homogeneity and uniform
//! homogeneity of finite relational structures, and the Katětov-functor
//! obstruction for finite Fraïssé limits.
//!
//! Only nonempty substructures are considered. In a relational signature
//! every nonempty subset carries an induced substructure, so all scans run
//! over subsets of the universe grouped by isomorphism class.
//!
//! Uniform homogeneity is decided class by class: for a set-homogeneous
//! structure it holds iff every class representative `A` admits a
//! homomorphism `E_A : aut(A) → aut(S)` whose values extend their arguments.
//! A successful decision returns the full extension functor `K`, built as
//! `K(f) = φ_Y ∘ E_A(φ_Y⁻¹ ∘ f ∘ φ_X ↾ A) ∘ φ_X⁻¹` and re-verified against
//! the three functor conditions before it is handed out.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::{
    age_classes, automorphism_group, embedding_extending, embeddings, find_isomorphisms, AgeClass,
    CANONICAL_BOUND,
};
use crate::perm::Perm;
use crate::structure::FinStructure;

/// An injective partial map on the universe. `map[i]` is the image of
/// `domain[i]`; `domain` is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartialIso {
    pub domain: Vec<usize>,
    pub map: Vec<usize>,
}

impl PartialIso {
    pub fn new(domain: Vec<usize>, map: Vec<usize>) -> Result<Self> {
        if domain.len() != map.len() {
            return Err(Error::input("domain and map lengths differ"));
        }
        if domain.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("domain must be strictly increasing"));
        }
        let mut img = map.clone();
        img.sort_unstable();
        if img.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("partial map is not injective"));
        }
        Ok(PartialIso { domain, map })
    }

    pub fn identity(domain: Vec<usize>) -> Self {
        PartialIso {
            map: domain.clone(),
            domain,
        }
    }

    /// Lifts a bijection between re-indexed copies to the ambient universe.
    fn from_local(x: &[usize], y: &[usize], local: &Perm) -> Self {
        PartialIso {
            domain: x.to_vec(),
            map: local.images().iter().map(|&j| y[j]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn apply(&self, v: usize) -> Option<usize> {
        self.domain
            .binary_search(&v)
            .ok()
            .map(|i| self.map[i])
    }

    /// Sorted image set.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img
    }

    /// `self ∘ other`; requires `other`'s image to equal `self`'s domain.
    pub fn compose(&self, other: &PartialIso) -> Option<PartialIso> {
        let map = other
            .map
            .iter()
            .map(|&v| self.apply(v))
            .collect::<Option<Vec<_>>>()?;
        (other.len() == self.len()).then(|| PartialIso {
            domain: other.domain.clone(),
            map,
        })
    }

    pub fn is_extended_by(&self, g: &Perm) -> bool {
        self.domain
            .iter()
            .zip(&self.map)
            .all(|(&a, &b)| g.apply(a) == b)
    }

    /// Whether this map is an isomorphism between the substructures of
    /// `source` and `target` induced on its domain and image.
    pub fn is_isomorphism(&self, source: &FinStructure, target: &FinStructure) -> bool {
        if source.signature() != target.signature()
            || self.domain.iter().any(|&v| v >= source.size())
            || self.map.iter().any(|&v| v >= target.size())
        {
            return false;
        }
        let k = self.len();
        let mut t = Vec::new();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        for rel in 0..source.relation_count() {
            t.clear();
            t.resize(source.arity(rel), 0);
            if k == 0 {
                continue;
            }
            loop {
                src.clear();
                src.extend(t.iter().map(|&i| self.domain[i]));
                dst.clear();
                dst.extend(t.iter().map(|&i| self.map[i]));
                if source.holds(rel, &src) != target.holds(rel, &dst) {
                    return false;
                }
                if !crate::iso::next_tuple(&mut t, k - 1) {
                    break;
                }
            }
        }
        true
    }
}

/// A yes/no answer with an optional counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    fn fail(w: W) -> Self {
        Verdict {
            holds: false,
            witness: Some(w),
        }
    }
}

fn check_bound(s: &FinStructure) -> Result<()> {
    if s.size() > CANONICAL_BOUND {
        return Err(Error::TooLarge {
            what: "structure for homogeneity analysis",
            size: s.size() as u64,
            bound: CANONICAL_BOUND as u64,
        });
    }
    Ok(())
}

/// Isomorphisms between copies `x` and `y` of one age class, as ambient partial maps.
fn isos_between(s: &FinStructure, x: &[usize], y: &[usize]) -> Result<Vec<PartialIso>> {
    let (sx, _) = s.induced_substructure(x)?;
    let (sy, _) = s.induced_substructure(y)?;
    Ok(find_isomorphisms(&sx, &sy)
        .iter()
        .map(|local| PartialIso::from_local(x, y, local))
        .collect())
}

/// Every isomorphism between nonempty substructures extends to an automorphism.
pub fn is_homogeneous(s: &FinStructure) -> Result<Verdict<PartialIso>> {
    check_bound(s)?;
    let aut: Vec<Perm> = automorphism_group(s).iter().cloned().collect();
    for class in age_classes(s)? {
        for x in &class.copies {
            for y in &class.copies {
                for f in isos_between(s, x, y)? {
                    if !aut.iter().any(|g| f.is_extended_by(g)) {
                        return Ok(Verdict::fail(f));
                    }
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// Two isomorphic substructures with no automorphism carrying one onto the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetPair {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
}

fn image_set(g: &Perm, x: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = x.iter().map(|&v| g.apply(v)).collect();
    img.sort_unstable();
    img
}

/// For isomorphic nonempty substructures `A`, `B` some automorphism maps `A` onto `B`.
pub fn is_set_homogeneous(s: &FinStructure) -> Result<Verdict<SetPair>> {
    check_bound(s)?;
    let aut = automorphism_group(s);
    Ok(set_homogeneity_with(&aut.iter().cloned().collect::<Vec<_>>(), &age_classes(s)?))
}

fn set_homogeneity_with(aut: &[Perm], classes: &[AgeClass]) -> Verdict<SetPair> {
    for class in classes {
        for x in &class.copies {
            let images: Vec<Vec<usize>> = aut.iter().map(|g| image_set(g, x)).collect();
            if let Some(y) = class.copies.iter().find(|y| !images.contains(y)) {
                return Verdict::fail(SetPair {
                    from: x.clone(),
                    to: y.clone(),
                });
            }
        }
    }
    Verdict::pass()
}

/// Counterexample to the extension property: an embedding of the
/// substructure of `b` on `a_subset` into `S` that no embedding of `b`
/// into `S` extends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionFailure {
    pub b: FinStructure,
    pub a_subset: Vec<usize>,
    pub embedding: Vec<usize>,
}

/// The extension-property formulation of homogeneity: for `A ⊆ B` in the
/// age and every embedding `e : A → S` there is an embedding `g : B → S`
/// with `e = g ∘ incl`. Works from embeddings alone, never consulting the
/// automorphism group.
pub fn satisfies_extension_property(s: &FinStructure) -> Result<Verdict<ExtensionFailure>> {
    check_bound(s)?;
    for class in age_classes(s)? {
        let b = &class.representative;
        for a_subset in crate::iso::nonempty_subsets(b.size()) {
            let (a, _) = b.induced_substructure(&a_subset)?;
            for e in embeddings(&a, s) {
                let mut fixed = vec![None; b.size()];
                for (i, &v) in a_subset.iter().enumerate() {
                    fixed[v] = Some(e[i]);
                }
                if embedding_extending(b, s, &fixed).is_none() {
                    return Ok(Verdict::fail(ExtensionFailure {
                        b: b.clone(),
                        a_subset,
                        embedding: e,
                    }));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// A homomorphic choice of extensions `E_A : aut(A) → aut(S)` for one
/// substructure `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionWitness {
    /// The substructure on `embedded`, re-indexed to `{0..|A|-1}`.
    pub class_rep: FinStructure,
    /// Sorted vertex set of `A` inside the ambient structure.
    pub embedded: Vec<usize>,
    /// Keys are automorphisms of `class_rep`; values are automorphisms of
    /// the ambient structure.
    pub section: BTreeMap<Perm, Perm>,
}

/// Searches for a homomorphism `E` from the group `source` with
/// `E(source[i]) ∈ candidates[i]`.
///
/// Assignments are propagated through products, so only a generating set is
/// ever branched on. Returns the images aligned with `source`.
pub fn find_homomorphic_section(source: &[Perm], candidates: &[Vec<Perm>]) -> Option<Vec<Perm>> {
    assert_eq!(source.len(), candidates.len());
    let index: HashMap<&Perm, usize> = source.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut products = vec![Vec::with_capacity(source.len()); source.len()];
    for (i, x) in source.iter().enumerate() {
        for y in source {
            products[i].push(*index.get(&x.compose(y)).expect("source must be a group"));
        }
    }
    let assigned = vec![None; source.len()];
    section_backtrack(&products, candidates, assigned)
}

fn section_backtrack(
    products: &[Vec<usize>],
    candidates: &[Vec<Perm>],
    assigned: Vec<Option<Perm>>,
) -> Option<Vec<Perm>> {
    let Some(next) = assigned.iter().position(Option::is_none) else {
        return Some(assigned.into_iter().map(Option::unwrap).collect());
    };
    for c in &candidates[next] {
        let mut trial = assigned.clone();
        if assign_and_propagate(products, candidates, &mut trial, next, c.clone()) {
            if let Some(done) = section_backtrack(products, candidates, trial) {
                return Some(done);
            }
        }
    }
    None
}

fn assign_and_propagate(
    products: &[Vec<usize>],
    candidates: &[Vec<Perm>],
    assigned: &mut [Option<Perm>],
    at: usize,
    value: Perm,
) -> bool {
    assigned[at] = Some(value);
    let mut queue = VecDeque::from([at]);
    while let Some(x) = queue.pop_front() {
        for y in 0..assigned.len() {
            if assigned[y].is_none() {
                continue;
            }
            for (l, r) in [(x, y), (y, x)] {
                let z = products[l][r];
                let prod = assigned[l].as_ref().unwrap().compose(assigned[r].as_ref().unwrap());
                match &assigned[z] {
                    Some(existing) if *existing != prod => return false,
                    Some(_) => {}
                    None => {
                        if !candidates[z].contains(&prod) {
                            return false;
                        }
                        assigned[z] = Some(prod);
                        queue.push_back(z);
                    }
                }
            }
        }
    }
    true
}

/// Extensions to `aut` of every automorphism of the substructure on `subset`.
fn section_candidates(
    aut: &[Perm],
    subset: &[usize],
    local_aut: &[Perm],
) -> Vec<Vec<Perm>> {
    local_aut
        .iter()
        .map(|h| {
            let f = PartialIso::from_local(subset, subset, h);
            aut.iter().filter(|g| f.is_extended_by(g)).cloned().collect()
        })
        .collect()
}

fn section_search_unchecked(
    s: &FinStructure,
    aut: &[Perm],
    subset: &[usize],
) -> Result<Option<SectionWitness>> {
    let (sub, embedded) = s.induced_substructure(subset)?;
    let local_aut: Vec<Perm> = automorphism_group(&sub).iter().cloned().collect();
    let candidates = section_candidates(aut, &embedded, &local_aut);
    Ok(
        find_homomorphic_section(&local_aut, &candidates).map(|images| SectionWitness {
            class_rep: sub,
            embedded,
            section: local_aut.into_iter().zip(images).collect(),
        }),
    )
}

/// Exhaustively looks for a homomorphic extension section on the
/// substructure induced by `subset`. Requires `s` to be set-homogeneous.
pub fn section_search(s: &FinStructure, subset: &[usize]) -> Result<Option<SectionWitness>> {
    check_bound(s)?;
    if subset.is_empty() {
        return Err(Error::precondition("section search needs a nonempty substructure"));
    }
    if let Some(&v) = subset.iter().find(|&&v| v >= s.size()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            size: s.size(),
        });
    }
    let aut: Vec<Perm> = automorphism_group(s).iter().cloned().collect();
    if !set_homogeneity_with(&aut, &age_classes(s)?).holds {
        return Err(Error::precondition("structure is not set-homogeneous"));
    }
    section_search_unchecked(s, &aut, subset)
}

/// Per isomorphism class: the representative copy `A` and an automorphism
/// `φ_X` with `φ_X[A] = X` for each copy `X`.
#[derive(Clone, Debug)]
pub struct Anchor {
    pub representative: Vec<usize>,
    pub phis: Vec<(Vec<usize>, Perm)>,
}

/// An extension operator `K` on all isomorphisms between nonempty
/// substructures, satisfying the functor conditions.
#[derive(Clone, Debug)]
pub struct UniformFunctor {
    anchors: Vec<Anchor>,
    table: HashMap<PartialIso, Perm>,
}

impl UniformFunctor {
    pub fn get(&self, f: &PartialIso) -> Option<&Perm> {
        self.table.get(f)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn anchors(&self) -> &[Anchor] {
        &self.anchors
    }

    /// Table entries sorted by partial map.
    pub fn entries(&self) -> Vec<(&PartialIso, &Perm)> {
        let mut v: Vec<_> = self.table.iter().collect();
        v.sort();
        v
    }
}

/// Which functor condition failed, and where.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FunctorViolation {
    Missing(PartialIso),
    IdentityNotPreserved(PartialIso),
    NotAnAutomorphism(PartialIso),
    DoesNotExtend(PartialIso),
    NotMultiplicative { f: PartialIso, g: PartialIso },
}

/// All isomorphisms between nonempty substructures, grouped by class.
fn all_partial_isos(s: &FinStructure, classes: &[AgeClass]) -> Result<Vec<Vec<PartialIso>>> {
    classes
        .iter()
        .map(|class| {
            let mut isos = Vec::new();
            for x in &class.copies {
                for y in &class.copies {
                    isos.extend(isos_between(s, x, y)?);
                }
            }
            Ok(isos)
        })
        .collect()
}

/// Literal scan of the three conditions on an extension operator `k`:
/// `K(id_A) = id`, `K(f)` is an automorphism extending `f`, and
/// `K(g ∘ f) = K(g) ∘ K(f)` for all composable `f`, `g`.
pub fn check_functor_conditions<K>(s: &FinStructure, k: K) -> Result<Result<(), FunctorViolation>>
where
    K: Fn(&PartialIso) -> Option<Perm>,
{
    check_bound(s)?;
    let classes = age_classes(s)?;
    let id = Perm::identity(s.size());
    for isos in all_partial_isos(s, &classes)? {
        let mut values = HashMap::with_capacity(isos.len());
        for f in &isos {
            let Some(kf) = k(f) else {
                return Ok(Err(FunctorViolation::Missing(f.clone())));
            };
            if f.domain == f.map && kf != id {
                return Ok(Err(FunctorViolation::IdentityNotPreserved(f.clone())));
            }
            if kf.degree() != s.size() || s.relabeled(&kf) != *s {
                return Ok(Err(FunctorViolation::NotAnAutomorphism(f.clone())));
            }
            if !f.is_extended_by(&kf) {
                return Ok(Err(FunctorViolation::DoesNotExtend(f.clone())));
            }
            values.insert(f, kf);
        }
        // group by source copy so composable pairs are found directly
        let mut by_source: HashMap<&[usize], Vec<&PartialIso>> = HashMap::new();
        for f in &isos {
            by_source.entry(f.domain.as_slice()).or_default().push(f);
        }
        for f in &isos {
            let image = f.image();
            for g in by_source.get(image.as_slice()).into_iter().flatten() {
                let gf = g.compose(f).expect("composable by construction");
                if values[&gf] != values[*g].compose(&values[f]) {
                    return Ok(Err(FunctorViolation::NotMultiplicative {
                        f: f.clone(),
                        g: (*g).clone(),
                    }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Assembles `K` from one section per isomorphism class and re-verifies it.
pub fn build_uniform_functor(s: &FinStructure, sections: &[SectionWitness]) -> Result<UniformFunctor> {
    check_bound(s)?;
    let aut: Vec<Perm> = automorphism_group(s).iter().cloned().collect();
    build_uniform_functor_with(s, &aut, &age_classes(s)?, sections)
}

fn build_uniform_functor_with(
    s: &FinStructure,
    aut: &[Perm],
    classes: &[AgeClass],
    sections: &[SectionWitness],
) -> Result<UniformFunctor> {
    let mut anchors = Vec::with_capacity(classes.len());
    let mut table = HashMap::new();
    for class in classes {
        let section = sections
            .iter()
            .find(|w| class.copies.contains(&w.embedded))
            .ok_or_else(|| {
                Error::precondition(format!("no section supplied for class of {:?}", class.copies[0]))
            })?;
        let a = &section.embedded;
        let mut phis = Vec::with_capacity(class.copies.len());
        for x in &class.copies {
            let phi = aut
                .iter()
                .find(|g| image_set(g, a) == *x)
                .ok_or_else(|| Error::precondition("structure is not set-homogeneous"))?;
            phis.push((x.clone(), phi.clone()));
        }
        for (x, phi_x) in &phis {
            let phi_x_inv = phi_x.inverse();
            for (y, phi_y) in &phis {
                let phi_y_inv = phi_y.inverse();
                for f in isos_between(s, x, y)? {
                    // h = φ_Y⁻¹ ∘ f ∘ φ_X restricted to A, in A's local indexing
                    let local: Vec<usize> = a
                        .iter()
                        .map(|&v| {
                            let w = phi_y_inv.apply(f.apply(phi_x.apply(v)).expect("φ_X maps A onto X"));
                            a.binary_search(&w).expect("h is a permutation of A")
                        })
                        .collect();
                    let h = Perm::from_images_unchecked(local);
                    let e = section.section.get(&h).ok_or_else(|| {
                        Error::invariant(format!("section has no value at {h}"))
                    })?;
                    table.insert(f, phi_y.compose(e).compose(&phi_x_inv));
                }
            }
        }
        anchors.push(Anchor {
            representative: a.clone(),
            phis,
        });
    }
    let functor = UniformFunctor { anchors, table };
    if let Err(v) = check_functor_conditions(s, |f| functor.get(f).cloned())? {
        return Err(Error::invariant(format!("constructed functor fails: {v:?}")));
    }
    Ok(functor)
}

/// Why a structure is not uniformly homogeneous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum UniformityFailure {
    NotSetHomogeneous(SetPair),
    /// The class of this copy admits no homomorphic extension section.
    NoSection { class_copy: Vec<usize> },
}

#[derive(Clone, Debug)]
pub enum UniformOutcome {
    Uniform(UniformFunctor),
    NotUniform(UniformityFailure),
}

impl UniformOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, UniformOutcome::Uniform(_))
    }

    pub fn functor(&self) -> Option<&UniformFunctor> {
        match self {
            UniformOutcome::Uniform(k) => Some(k),
            UniformOutcome::NotUniform(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&UniformityFailure> {
        match self {
            UniformOutcome::Uniform(_) => None,
            UniformOutcome::NotUniform(f) => Some(f),
        }
    }
}

pub fn is_uniformly_homogeneous(s: &FinStructure) -> Result<UniformOutcome> {
    check_bound(s)?;
    let aut: Vec<Perm> = automorphism_group(s).iter().cloned().collect();
    let classes = age_classes(s)?;
    if let Verdict {
        witness: Some(pair), ..
    } = set_homogeneity_with(&aut, &classes)
    {
        return Ok(UniformOutcome::NotUniform(UniformityFailure::NotSetHomogeneous(pair)));
    }
    let mut sections = Vec::with_capacity(classes.len());
    for class in &classes {
        match section_search_unchecked(s, &aut, &class.copies[0])? {
            Some(w) => sections.push(w),
            None => {
                return Ok(UniformOutcome::NotUniform(UniformityFailure::NoSection {
                    class_copy: class.copies[0].clone(),
                }))
            }
        }
    }
    build_uniform_functor_with(s, &aut, &classes, &sections).map(UniformOutcome::Uniform)
}

/// A nontrivial automorphism fixing a nonempty substructure pointwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub fixed_set: Vec<usize>,
    pub witness: Perm,
}

/// Scans nontrivial automorphisms in lexicographic order for one with a
/// fixed point; its full fixed-point set is returned as `A`. The input
/// must be homogeneous (it is then the Fraïssé limit of its own age).
pub fn katetov_obstruction(s: &FinStructure) -> Result<Option<Obstruction>> {
    if !is_homogeneous(s)?.holds {
        return Err(Error::precondition("structure is not homogeneous"));
    }
    Ok(obstruction_in(automorphism_group(s).iter()))
}

pub(crate) fn obstruction_in<'a>(aut: impl Iterator<Item = &'a Perm>) -> Option<Obstruction> {
    aut.filter(|h| !h.is_identity())
        .find_map(|h| {
            let fixed = h.fixed_points();
            (!fixed.is_empty()).then(|| Obstruction {
                fixed_set: fixed,
                witness: h.clone(),
            })
        })
}

/// All verdicts for one structure.
#[derive(Clone, Debug, Serialize)]
pub struct HomogeneityReport {
    pub size: usize,
    pub automorphism_group_order: usize,
    pub homogeneous: bool,
    pub set_homogeneous: bool,
    pub uniformly_homogeneous: bool,
    /// Only meaningful for homogeneous inputs; false otherwise.
    pub katetov_obstructed: bool,
    pub homogeneity_failure: Option<PartialIso>,
    pub set_homogeneity_failure: Option<SetPair>,
    pub uniformity_failure: Option<UniformityFailure>,
    pub obstruction: Option<Obstruction>,
    pub functor_entries: Option<usize>,
}

pub fn analyze(s: &FinStructure) -> Result<HomogeneityReport> {
    let homog = is_homogeneous(s)?;
    let set_homog = is_set_homogeneous(s)?;
    let uniform = is_uniformly_homogeneous(s)?;
    let aut = automorphism_group(s);
    let obstruction = if homog.holds {
        obstruction_in(aut.iter())
    } else {
        None
    };
    if (uniform.holds() && !homog.holds) || (homog.holds && !set_homog.holds) {
        return Err(Error::invariant(format!(
            "implication chain violated: uniform={} homogeneous={} set_homogeneous={}",
            uniform.holds(),
            homog.holds,
            set_homog.holds
        )));
    }
    Ok(HomogeneityReport {
        size: s.size(),
        automorphism_group_order: aut.order(),
        homogeneous: homog.holds,
        set_homogeneous: set_homog.holds,
        uniformly_homogeneous: uniform.holds(),
        katetov_obstructed: obstruction.is_some(),
        homogeneity_failure: homog.witness,
        set_homogeneity_failure: set_homog.witness,
        uniformity_failure: uniform.failure().cloned(),
        obstruction,
        functor_entries: uniform.functor().map(UniformFunctor::len),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{digraph_m, directed_cycle, eta};

    fn path() -> FinStructure {
        FinStructure::digraph(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn m_is_homogeneous() {
        assert!(is_homogeneous(&digraph_m()).unwrap().holds);
        assert!(satisfies_extension_property(&digraph_m()).unwrap().holds);
    }

    #[test]
    fn four_cycle_is_homogeneous() {
        assert!(is_homogeneous(&directed_cycle(4)).unwrap().holds);
    }

    #[test]
    fn path_fails_on_point_swap() {
        let v = is_homogeneous(&path()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(PartialIso::new(vec![0], vec![1]).unwrap()));

        let sh = is_set_homogeneous(&path()).unwrap();
        assert!(!sh.holds);
        assert_eq!(sh.witness, Some(SetPair { from: vec![0], to: vec![1] }));
        assert!(!satisfies_extension_property(&path()).unwrap().holds);
    }

    #[test]
    fn set_homogeneity_examples() {
        assert!(is_set_homogeneous(&digraph_m()).unwrap().holds);
        assert!(is_set_homogeneous(&FinStructure::bare_set(1)).unwrap().holds);
    }

    #[test]
    fn section_on_m_cycle_is_eta_powers() {
        let w = section_search(&digraph_m(), &[2, 3, 4, 5]).unwrap().unwrap();
        assert_eq!(w.section.len(), 4);
        for (h, g) in &w.section {
            // the extension restricted to C is h itself, and it is a power of η
            assert!((0..4).any(|i| eta().pow(i) == *g));
            for (i, &v) in w.embedded.iter().enumerate() {
                assert_eq!(g.apply(v), w.embedded[h.apply(i)]);
            }
        }
    }

    #[test]
    fn no_section_on_loop_pair() {
        assert_eq!(section_search(&digraph_m(), &[0, 1]).unwrap(), None);
    }

    #[test]
    fn full_universe_section_is_identity() {
        let m = digraph_m();
        let w = section_search(&m, &[0, 1, 2, 3, 4, 5]).unwrap().unwrap();
        assert!(w.section.iter().all(|(h, g)| h == g));
    }

    #[test]
    fn section_search_preconditions() {
        assert!(section_search(&digraph_m(), &[]).is_err());
        assert!(matches!(
            section_search(&path(), &[0]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn m_is_not_uniformly_homogeneous() {
        let out = is_uniformly_homogeneous(&digraph_m()).unwrap();
        assert_eq!(
            out.failure(),
            Some(&UniformityFailure::NoSection { class_copy: vec![0, 1] })
        );
    }

    #[test]
    fn finite_sets_and_four_cycle_are_uniform() {
        for n in 1..=4 {
            let out = is_uniformly_homogeneous(&FinStructure::bare_set(n)).unwrap();
            assert!(out.holds(), "Ens({n})");
        }
        let out = is_uniformly_homogeneous(&directed_cycle(4)).unwrap();
        assert!(out.holds());
    }

    #[test]
    fn one_point_functor_has_single_identity_entry() {
        let p = FinStructure::bare_set(1);
        let out = is_uniformly_homogeneous(&p).unwrap();
        let k = out.functor().unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k.get(&PartialIso::identity(vec![0])), Some(&Perm::identity(1)));
    }

    #[test]
    fn functor_check_catches_bad_operators() {
        let set = FinStructure::bare_set(3);
        // swapping the two points outside the domain breaks K(id) = id
        let res = check_functor_conditions(&set, |f| {
            let mut g = Perm::identity(3).images().to_vec();
            for (&a, &b) in f.domain.iter().zip(&f.map) {
                g[a] = b;
            }
            let rest: Vec<usize> = (0..3).filter(|v| !f.domain.contains(v)).collect();
            let targets: Vec<usize> = (0..3).filter(|v| !f.map.contains(v)).collect();
            for (i, &a) in rest.iter().enumerate() {
                g[a] = targets[targets.len() - 1 - i];
            }
            Perm::from_images(g).ok()
        })
        .unwrap();
        assert!(matches!(res, Err(FunctorViolation::IdentityNotPreserved(_))));
    }

    #[test]
    fn obstruction_examples() {
        let o = katetov_obstruction(&FinStructure::bare_set(3)).unwrap().unwrap();
        assert_eq!(o.fixed_set, vec![0]);
        assert_eq!(o.witness, Perm::from_cycles(3, &[&[1, 2]]).unwrap());

        assert_eq!(katetov_obstruction(&FinStructure::bare_set(2)).unwrap(), None);

        // η, η², η³: only η² has fixed points, namely a and b
        let o = katetov_obstruction(&digraph_m()).unwrap().unwrap();
        assert_eq!(o.fixed_set, vec![0, 1]);
        assert_eq!(o.witness, eta().pow(2));

        assert!(katetov_obstruction(&path()).is_err());
    }

    #[test]
    fn report_for_m() {
        let r = analyze(&digraph_m()).unwrap();
        assert!(r.homogeneous && r.set_homogeneous && !r.uniformly_homogeneous);
        assert!(r.katetov_obstructed);
        assert_eq!(r.automorphism_group_order, 4);
    }

    #[test]
    fn partial_iso_validation() {
        assert!(PartialIso::new(vec![1, 0], vec![0, 1]).is_err());
        assert!(PartialIso::new(vec![0, 1], vec![2, 2]).is_err());
        let f = PartialIso::new(vec![0, 2], vec![3, 1]).unwrap();
        assert_eq!(f.image(), vec![1, 3]);
        let g = PartialIso::new(vec![1, 3], vec![4, 5]).unwrap();
        assert_eq!(g.compose(&f), Some(PartialIso::new(vec![0, 2], vec![5, 4]).unwrap()));
        assert_eq!(f.compose(&g), None);
    }
}
