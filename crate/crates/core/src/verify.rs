//! Reproduces every checkable claim about the fixture `M`, finite sets and
//! finite cyclic groups as a list of named pass/fail checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclic::arith::{gcd, mul_mod};
use crate::cyclic::{
    amalgamate, cyclic_uniform_report, eta as eta_m, k_apply, lemma_solve, prufer_decompose,
    CyclicEmbedding, QZElem,
};
use crate::ens::{all_set_bijections, ens_extend, ens_obstruction};
use crate::error::Result;
use crate::fixtures::{digraph_m, directed_cycle, eta, m_vertex_names, M_CYCLE, M_LOOP_PAIR};
use crate::homogeneity::{
    is_homogeneous, is_uniformly_homogeneous, katetov_obstruction, satisfies_extension_property,
    PartialIso, UniformityFailure,
};
use crate::iso::automorphism_group;
use crate::perm::{embed_sym, group_closure, is_homomorphism, symmetric_group, Perm};
use crate::structure::FinStructure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// The first counterexample, for failed checks.
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn pass(detail: impl Into<String>) -> Outcome {
        Ok(Ok(detail.into()))
    }

    fn fail(detail: impl Into<String>, counterexample: impl Into<String>) -> Outcome {
        Ok(Err((detail.into(), counterexample.into())))
    }
}

/// `Ok(Ok(detail))` passes, `Ok(Err((detail, counterexample)))` fails, and
/// `Err` is an error raised while checking (also a failure).
pub type Outcome = Result<std::result::Result<String, (String, String)>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "passed": self.checks.iter().filter(|c| c.passed).count(),
            "failed": self.checks.iter().filter(|c| !c.passed).count(),
            "checks": self.checks,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{tag}] ({}) {}: {}", c.id, c.name, c.detail);
            if let Some(x) = &c.counterexample {
                let _ = writeln!(out, "       counterexample: {x}");
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        out
    }
}

type CheckFn = fn() -> Outcome;

const CHECKS: [(&str, &str, CheckFn); 13] = [
    ("i", "aut(M) is cyclic of order 4, generated by η", check_aut_m),
    ("ii", "M is homogeneous", check_m_homogeneous),
    ("iii", "M is not uniformly homogeneous, obstructed at {a, b}", check_m_not_uniform),
    ("iv", "no involution of M extends the swap of a and b", check_swap_extensions),
    ("v", "every automorphism of M restricted to C is some η^i", check_cycle_claim),
    ("vi", "the directed 4-cycle is homogeneous", check_four_cycle),
    ("vii", "Ens(n) has a Katětov obstruction iff n ≥ 3", check_ens_obstruction),
    ("viii", "ens_extend is a functor (n ≤ 5)", check_ens_functor),
    ("ix", "embed_sym is a homomorphism S_k → S_n (k ≤ n ≤ 6)", check_embed_sym),
    ("x", "the automorphism lemma holds for k | n ≤ 60", check_lemma),
    ("xi", "amalgamation squares commute (k, m, n ≤ 12)", check_amalgamation),
    ("xii", "K satisfies conditions 1-3 (m, k ≤ 30)", check_katetov_conditions),
    ("xiii", "ℤ_n is uniformly homogeneous for n ≤ 30", check_cyclic_uniform),
];

/// Runs all thirteen checks; the report is ordered by check index.
pub fn verify_paper() -> VerificationReport {
    let checks = CHECKS
        .par_iter()
        .map(|&(id, name, f)| {
            let (passed, detail, counterexample) = match f() {
                Ok(Ok(d)) => (true, d, None),
                Ok(Err((d, x))) => (false, d, Some(x)),
                Err(e) => (false, "error while checking".to_owned(), Some(e.to_string())),
            };
            CheckResult {
                id,
                name,
                passed,
                detail,
                counterexample,
            }
        })
        .collect();
    VerificationReport { checks }
}

fn check_aut_m() -> Outcome {
    let aut = automorphism_group(&digraph_m());
    let generated = group_closure(6, &[eta()])?;
    if aut.elements() != generated.elements() {
        return CheckResult::fail(
            format!("|aut(M)| = {}, |⟨η⟩| = {}", aut.order(), generated.order()),
            "aut(M) ≠ ⟨η⟩",
        );
    }
    if aut.order() != 4 || !aut.is_cyclic() || eta().pow(2).is_identity() {
        return CheckResult::fail(format!("|aut(M)| = {}", aut.order()), "not cyclic of order 4");
    }
    CheckResult::pass(format!("order 4, cyclic, η = {}", eta()))
}

fn check_m_homogeneous() -> Outcome {
    let m = digraph_m();
    let v = is_homogeneous(&m)?;
    let ext = satisfies_extension_property(&m)?;
    match (v.witness, ext.holds) {
        (None, true) => CheckResult::pass("every isomorphism between nonempty substructures extends; extension property holds"),
        (Some(f), _) => CheckResult::fail("a partial isomorphism does not extend", format!("{f:?}")),
        (None, false) => CheckResult::fail("checkers disagree", "extension property fails"),
    }
}

fn check_m_not_uniform() -> Outcome {
    let out = is_uniformly_homogeneous(&digraph_m())?;
    match out.failure() {
        Some(UniformityFailure::NoSection { class_copy }) if class_copy == &M_LOOP_PAIR => {
            CheckResult::pass(format!(
                "no homomorphic section aut(A) → aut(M) for A = {}",
                m_vertex_names(class_copy)
            ))
        }
        Some(other) => CheckResult::fail("wrong obstruction", format!("{other:?}")),
        None => CheckResult::fail("a uniform extension functor was found", "M is uniform"),
    }
}

fn check_swap_extensions() -> Outcome {
    let swap = PartialIso::new(M_LOOP_PAIR.to_vec(), vec![1, 0])?;
    let aut = automorphism_group(&digraph_m());
    let ext: Vec<&Perm> = aut.iter().filter(|g| swap.is_extended_by(g)).collect();
    let expected: BTreeSet<Perm> = [eta(), eta().pow(3)].into_iter().collect();
    let got: BTreeSet<Perm> = ext.iter().map(|&g| g.clone()).collect();
    if got != expected {
        return CheckResult::fail(
            format!("{} extensions", got.len()),
            format!("extensions {:?} ≠ {{η, η³}}", got.iter().map(Perm::to_string).collect::<Vec<_>>()),
        );
    }
    if let Some(inv) = ext.iter().find(|g| g.order() == 2) {
        return CheckResult::fail("an involution extends the swap", inv.to_string());
    }
    CheckResult::pass("extensions are exactly η and η³, both of order 4")
}

fn check_cycle_claim() -> Outcome {
    let m = digraph_m();
    let (c, embedded) = m.induced_substructure(&M_CYCLE)?;
    let local = automorphism_group(&c);
    let mut matched = Vec::new();
    for psi in local.iter() {
        let hit = (0..4u64).find(|&i| {
            let g = eta().pow(i);
            (0..embedded.len()).all(|x| g.apply(embedded[x]) == embedded[psi.apply(x)])
        });
        match hit {
            Some(i) => matched.push(i),
            None => return CheckResult::fail("an automorphism of C is not a power of η", psi.to_string()),
        }
    }
    if local.order() != 4 {
        return CheckResult::fail(format!("|aut(C)| = {}", local.order()), "expected 4");
    }
    CheckResult::pass(format!(
        "4 automorphisms of C matched to η^i, i = {matched:?}"
    ))
}

fn check_four_cycle() -> Outcome {
    match is_homogeneous(&directed_cycle(4))?.witness {
        None => CheckResult::pass("all partial isomorphisms extend"),
        Some(f) => CheckResult::fail("a partial isomorphism does not extend", format!("{f:?}")),
    }
}

fn check_ens_obstruction() -> Outcome {
    for n in 1..=6 {
        let explicit = ens_obstruction(n)?;
        let generic = katetov_obstruction(&FinStructure::bare_set(n))?;
        if explicit.is_some() != (n >= 3) {
            return CheckResult::fail("wrong threshold", format!("n = {n}: {explicit:?}"));
        }
        if explicit != generic {
            return CheckResult::fail(
                "explicit and generic obstructions differ",
                format!("n = {n}: {explicit:?} vs {generic:?}"),
            );
        }
    }
    let o = ens_obstruction(3)?.expect("n = 3");
    CheckResult::pass(format!(
        "none for n ≤ 2; n = 3 fixes {:?} with {} (checked n ≤ 6)",
        o.fixed_set, o.witness
    ))
}

/// Identity and composition laws of `ens_extend` over all bijections
/// between nonempty subsets of `{0..n-1}`. Returns the number of composable
/// pairs checked.
pub fn ens_functor_laws(max_n: usize) -> std::result::Result<usize, String> {
    let mut pairs = 0;
    for n in 1..=max_n {
        let all = all_set_bijections(n, false);
        let mut by_domain: BTreeMap<&[usize], Vec<&crate::ens::SetBijection>> = BTreeMap::new();
        for f in &all {
            by_domain.entry(&f.map.domain).or_default().push(f);
            if f.map.domain == f.map.map && !ens_extend(f).is_identity() {
                return Err(format!("ens_extend(id on {:?}) ≠ id", f.map.domain));
            }
            if !f.map.is_extended_by(&ens_extend(f)) {
                return Err(format!("ens_extend({:?}) does not extend it", f.map));
            }
        }
        for f in &all {
            let mut image = f.map.map.clone();
            image.sort_unstable();
            let ef = ens_extend(f);
            for g in by_domain.get(image.as_slice()).into_iter().flatten() {
                let gf = g.compose(f).expect("composable");
                pairs += 1;
                if ens_extend(&gf) != ens_extend(g).compose(&ef) {
                    return Err(format!("composition fails for f = {:?}, g = {:?}", f.map, g.map));
                }
            }
        }
    }
    Ok(pairs)
}

fn check_ens_functor() -> Outcome {
    match ens_functor_laws(5) {
        Ok(pairs) => CheckResult::pass(format!("identity and composition laws hold on {pairs} composable pairs")),
        Err(x) => CheckResult::fail("functor law violated", x),
    }
}

/// Identity, extension and homomorphism laws of `embed_sym` for
/// `k ≤ n ≤ max_n`. Returns the number of products checked.
pub fn embed_sym_laws(max_n: usize) -> Result<std::result::Result<usize, String>> {
    let mut products = 0;
    for n in 1..=max_n {
        for k in 1..=n {
            let sk = symmetric_group(k)?;
            let mut f = BTreeMap::new();
            for h in sk.iter() {
                let e = embed_sym(h, n)?;
                if (0..k).any(|x| e.apply(x) != h.apply(x)) || (k..n).any(|x| e.apply(x) != x) {
                    return Ok(Err(format!("embed_sym({h}, {n}) = {e} does not extend")));
                }
                f.insert(h.clone(), e);
            }
            if !f[&Perm::identity(k)].is_identity() {
                return Ok(Err(format!("embed_sym(id_{k}, {n}) ≠ id")));
            }
            if !is_homomorphism(&sk, &f)? {
                return Ok(Err(format!("S_{k} → S_{n} is not a homomorphism")));
            }
            products += sk.order() * sk.order();
        }
    }
    Ok(Ok(products))
}

fn check_embed_sym() -> Outcome {
    match embed_sym_laws(6)? {
        Ok(p) => CheckResult::pass(format!("identity, extension and homomorphism laws hold ({p} products)")),
        Err(x) => CheckResult::fail("law violated", x),
    }
}

/// Every embedding `ℤ_k → ℤ_n` as an integer multiplier in `1..=n`.
pub fn embeddings_into(k: u64, n: u64) -> Vec<CyclicEmbedding> {
    (1..=n)
        .filter(|&r| gcd(r, n) == n / k)
        .map(|r| CyclicEmbedding::new(k, n, r).expect("valid by construction"))
        .collect()
}

/// Compares `lemma_solve` with a scan over all units for every pair of
/// embeddings `ℤ_k → ℤ_n`, `k | n ≤ max_n`. Returns the number of pairs.
pub fn lemma_oracle(max_n: u64) -> Result<std::result::Result<usize, String>> {
    let mut pairs = 0;
    for n in 1..=max_n {
        for k in (1..=n).filter(|k| n % k == 0) {
            let es = embeddings_into(k, n);
            for e in &es {
                for f in &es {
                    let b = lemma_solve(e, f)?;
                    let scan = (1..=n).find(|&b| gcd(b, n) == 1 && mul_mod(b, e.residue(), n) == f.residue());
                    if scan != Some(b) {
                        return Ok(Err(format!("{e}, {f}: lemma gives {b}, scan gives {scan:?}")));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(Ok(pairs))
}

fn check_lemma() -> Outcome {
    match lemma_oracle(60)? {
        Ok(p) => CheckResult::pass(format!("{p} embedding pairs match the brute-force unit scan")),
        Err(x) => CheckResult::fail("lemma answer differs from brute force", x),
    }
}

/// Amalgamates every span `ℤ_m ← ℤ_k → ℤ_n` with `k, m, n ≤ bound` and
/// re-checks each square pointwise. Returns the number of spans.
pub fn amalgamation_oracle(bound: u64) -> Result<std::result::Result<usize, String>> {
    let mut spans = 0;
    for k in 1..=bound {
        for m in (k..=bound).step_by(k as usize) {
            for n in (k..=bound).step_by(k as usize) {
                for f in embeddings_into(k, m) {
                    for g in embeddings_into(k, n) {
                        let a = amalgamate(&f, &g)?;
                        if a.left.target_order() != m * n
                            || (0..k).any(|x| a.left.apply(f.apply(x)) != a.right.apply(g.apply(x)))
                        {
                            return Ok(Err(format!("square for {f} and {g} does not commute")));
                        }
                        spans += 1;
                    }
                }
            }
        }
    }
    Ok(Ok(spans))
}

fn check_amalgamation() -> Outcome {
    match amalgamation_oracle(12)? {
        Ok(s) => CheckResult::pass(format!("{s} squares commute in ℤ_(mn)")),
        Err(x) => CheckResult::fail("square fails", x),
    }
}

/// Counts of points checked for each condition on `K`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KatetovCounts {
    pub embedding: usize,
    pub composition: usize,
    pub naturality: usize,
}

/// Checks, for all `m, k ≤ bound` and every embedding `n̂ : ℤ_m → ℤ_{mk}`
/// with `n ≤ mk`:
/// 1. `K(n̂)` is additive and injective on the subgroup of order `L` of
///    `ℚ/ℤ` for every `L ≤ bound`;
/// 2. `K((n₁n₂)̂) = K(n̂₂) ∘ K(n̂₁)` for every `n̂₂ : ℤ_{mk} → ℤ_{mkl}`,
///    `l ≤ 3`, on a generator of the subgroup of order `mkl`;
/// 3. `η_{mk}(n̂(x)) = K(n̂)(η_m(x))` for every `x ∈ ℤ_m`.
pub fn katetov_conditions(bound: u64) -> Result<std::result::Result<KatetovCounts, String>> {
    let mut counts = KatetovCounts::default();
    let mut multipliers = BTreeSet::new();
    for m in 1..=bound {
        let etas: Vec<_> = (0..m).map(|x| eta_m(m, x)).collect::<Result<_>>()?;
        for k in 1..=bound {
            let mk = m * k;
            for e in embeddings_into(m, mk) {
                let n = e.multiplier();
                multipliers.insert(n);
                for (x, ex) in etas.iter().enumerate() {
                    let lhs = eta_m(mk, e.apply(x as u64))?;
                    let rhs = k_apply(n, ex)?;
                    if lhs != rhs {
                        return Ok(Err(format!(
                            "naturality fails for {e} at x = {x}: η_{mk}(n̂x) = {lhs}, K(n̂)(η_{m}(x)) = {rhs}"
                        )));
                    }
                    counts.naturality += 1;
                }
                for l in 1..=3 {
                    let x = prufer_decompose(&QZElem::new(1, mk * l)?)?;
                    let kx = k_apply(n, &x)?;
                    for e2 in embeddings_into(mk, mk * l) {
                        let n2 = e2.multiplier();
                        let lhs = k_apply(n * n2, &x)?;
                        let rhs = k_apply(n2, &kx)?;
                        if lhs != rhs {
                            return Ok(Err(format!(
                                "K({}̂) ≠ K({n2}̂) ∘ K({n}̂) at {x}",
                                n * n2
                            )));
                        }
                        counts.composition += 1;
                    }
                }
            }
        }
    }
    for &n in &multipliers {
        for order in 1..=bound {
            let g = prufer_decompose(&QZElem::new(1, order)?)?;
            let kg = k_apply(n, &g)?;
            let mut acc = crate::cyclic::PruferVector::zero();
            let mut k_acc = crate::cyclic::PruferVector::zero();
            for a in 0..order {
                // acc = a·g; K(a·g) must equal a·K(g) and vanish only at a = 0
                let image = k_apply(n, &acc)?;
                if image != k_acc {
                    return Ok(Err(format!("K({n}̂) is not additive on {a}/{order}")));
                }
                if a > 0 && image.is_zero() {
                    return Ok(Err(format!("K({n}̂) kills {a}/{order}")));
                }
                acc = acc.add(&g)?;
                k_acc = k_acc.add(&kg)?;
                counts.embedding += 1;
            }
        }
    }
    Ok(Ok(counts))
}

fn check_katetov_conditions() -> Outcome {
    match katetov_conditions(30)? {
        Ok(c) => CheckResult::pass(format!(
            "condition 1 on {} points, condition 2 on {} composites, naturality on {} points",
            c.embedding, c.composition, c.naturality
        )),
        Err(x) => CheckResult::fail("condition violated", x),
    }
}

fn check_cyclic_uniform() -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=30 {
        let r = cyclic_uniform_report(n)?;
        if !r.agrees_with_generic() {
            return CheckResult::fail(
                "number-theoretic and generic section searches disagree",
                format!("ℤ_{n}"),
            );
        }
        if let Some(s) = r.first_failure() {
            failures.push((n, s.k, s.defect.expect("failure has a defect")));
        }
    }
    match failures.first() {
        None => CheckResult::pass("homomorphic sections (ℤ/k)* → (ℤ/n)* exist for every k | n ≤ 30"),
        Some(&(n, k, defect)) => CheckResult::fail(
            format!(
                "no homomorphic section for (n, k) in {:?}; the generic search agrees",
                failures.iter().map(|&(n, k, _)| (n, k)).collect::<Vec<_>>()
            ),
            format!("ℤ_{n} over its subgroup of order {k}: {defect}"),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_on_small_bounds() {
        assert!(ens_functor_laws(3).unwrap() > 0);
        assert!(embed_sym_laws(4).unwrap().is_ok());
        assert!(lemma_oracle(12).unwrap().is_ok());
        assert!(amalgamation_oracle(6).unwrap().is_ok());
        assert!(katetov_conditions(6).unwrap().is_ok());
    }

    #[test]
    fn fixture_checks_pass() {
        for f in [
            check_aut_m,
            check_m_homogeneous,
            check_m_not_uniform,
            check_swap_extensions,
            check_cycle_claim,
            check_four_cycle,
            check_ens_obstruction,
        ] {
            let out = f().unwrap();
            assert!(out.is_ok(), "{out:?}");
        }
    }
}
