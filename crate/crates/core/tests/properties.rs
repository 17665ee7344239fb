use std::collections::BTreeMap;

use proptest::prelude::*;

use homog_core::cyclic::{k_apply, prufer_decompose, PruferVector, QZElem};
use homog_core::fixtures::digraph_m;
use homog_core::homogeneity::section_search;
use homog_core::iso::age_classes;
use homog_core::{canonical_form, is_homogeneous, is_uniformly_homogeneous, FinStructure, Perm};

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn digraph(max_n: usize) -> impl Strategy<Value = FinStructure> {
    (1..=max_n).prop_flat_map(|n| {
        (0..1u64 << (n * n)).prop_map(move |mask| FinStructure::from_adjacency_mask(n, mask))
    })
}

fn relabelled_pair(max_n: usize) -> impl Strategy<Value = (FinStructure, Perm)> {
    digraph(max_n).prop_flat_map(|s| {
        let n = s.size();
        (Just(s), perm(n))
    })
}

fn fraction_below(bound: u64) -> impl Strategy<Value = QZElem> {
    (1..=bound, any::<u64>()).prop_map(|(d, a)| QZElem::new(a % d, d).unwrap())
}

fn fraction() -> impl Strategy<Value = QZElem> {
    fraction_below(10_000)
}

fn homogeneous_masks() -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for n in 3..=5 {
        let text = std::fs::read_to_string(format!(
            "{}/tests/data/homogeneous_classes_{n}.txt",
            env!("CARGO_MANIFEST_DIR")
        ))
        .unwrap();
        out.extend(
            text.lines()
                .filter_map(|l| l.strip_prefix("class "))
                .map(|m| (n, m.trim().parse::<u64>().unwrap())),
        );
    }
    out
}

fn homogeneous_relabelled() -> impl Strategy<Value = FinStructure> {
    let masks = homogeneous_masks();
    let mut pool: Vec<FinStructure> =
        masks.into_iter().map(|(n, m)| FinStructure::from_adjacency_mask(n, m)).collect();
    pool.push(digraph_m());
    prop::sample::select(pool).prop_flat_map(|s| {
        let n = s.size();
        perm(n).prop_map(move |g| s.relabeled(&g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn perm_group_laws((a, b, c) in (1usize..=7).prop_flat_map(|n| (perm(n), perm(n), perm(n)))) {
        let n = a.degree();
        let id = Perm::identity(n);
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&id), a.clone());
        prop_assert_eq!(id.compose(&a), a.clone());
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order()).is_identity());
        for x in 0..n {
            prop_assert_eq!(a.compose(&b).apply(x), a.apply(b.apply(x)));
        }
    }

    #[test]
    fn canonical_form_is_relabelling_invariant((s, g) in relabelled_pair(5)) {
        prop_assert_eq!(canonical_form(&s).unwrap(), canonical_form(&s.relabeled(&g)).unwrap());
    }

    #[test]
    fn homogeneity_is_relabelling_invariant((s, g) in relabelled_pair(4)) {
        let t = s.relabeled(&g);
        prop_assert_eq!(is_homogeneous(&s).unwrap().holds, is_homogeneous(&t).unwrap().holds);
        prop_assert_eq!(
            is_uniformly_homogeneous(&s).unwrap().holds(),
            is_uniformly_homogeneous(&t).unwrap().holds()
        );
    }

    #[test]
    // lcm of the denominators stays under the rational bound
    fn prufer_decomposition_is_additive(x in fraction_below(1_000), y in fraction_below(1_000)) {
        let px = prufer_decompose(&x).unwrap();
        let py = prufer_decompose(&y).unwrap();
        let sum = x.add(&y).unwrap();
        prop_assert_eq!(prufer_decompose(&sum).unwrap(), px.add(&py).unwrap());
        prop_assert_eq!(px.recompose().unwrap(), x);
    }

    #[test]
    fn katetov_map_is_an_injective_homomorphism(n in 1u64..=10_000, x in fraction(), y in fraction()) {
        let px = prufer_decompose(&x).unwrap();
        let py = prufer_decompose(&y).unwrap();
        let lhs = k_apply(n, &px.add(&py).unwrap()).unwrap();
        let rhs = k_apply(n, &px).unwrap().add(&k_apply(n, &py).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(k_apply(n, &px).unwrap().is_zero(), px.is_zero());
        prop_assert_eq!(k_apply(n, &PruferVector::zero()).unwrap(), PruferVector::zero());
    }

    #[test]
    fn katetov_map_composes(n1 in 1u64..=3_000, n2 in 1u64..=3_000, x in fraction()) {
        let px = prufer_decompose(&x).unwrap();
        let once = k_apply(n1 * n2, &px).unwrap();
        let twice = k_apply(n2, &k_apply(n1, &px).unwrap()).unwrap();
        prop_assert_eq!(once, twice);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// In a set-homogeneous structure a section exists at one copy of a
    /// class exactly when it exists at every copy.
    #[test]
    fn section_existence_is_constant_on_classes(s in homogeneous_relabelled()) {
        let mut seen: BTreeMap<Vec<u8>, bool> = BTreeMap::new();
        for class in age_classes(&s).unwrap() {
            for copy in &class.copies {
                let found = section_search(&s, copy).unwrap().is_some();
                let key = class.code.as_bytes().to_vec();
                let first = *seen.entry(key).or_insert(found);
                prop_assert_eq!(first, found, "copy {:?}", copy);
            }
        }
    }
}

#[test]
fn m_sections_fail_exactly_on_loop_pairs() {
    let m = digraph_m();
    for class in age_classes(&m).unwrap() {
        let found: Vec<bool> = class
            .copies
            .iter()
            .map(|c| section_search(&m, c).unwrap().is_some())
            .collect();
        let expected = !class.copies.contains(&vec![0, 1]);
        assert!(found.iter().all(|&f| f == expected), "{:?}", class.copies);
    }
}
