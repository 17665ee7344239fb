//! The extension functors produced by the uniform-homogeneity checker,
//! re-checked against a brute-force list of partial isomorphisms.

use itertools::Itertools;

use homog_core::ens::{ens_extend, SetBijection};
use homog_core::homogeneity::{check_functor_conditions, PartialIso};
use homog_core::search::{enumerate_digraphs, pipeline_verdict, FilterStages};
use homog_core::{is_uniformly_homogeneous, FinStructure, Perm, UniformFunctor};

/// Every isomorphism between nonempty induced substructures, by direct
/// enumeration of injective maps.
fn naive_partial_isos(s: &FinStructure) -> Vec<PartialIso> {
    let n = s.size();
    let adj = |i: usize, j: usize| s.relation_count() > 0 && s.holds(0, &[i, j]);
    let mut out = Vec::new();
    for k in 1..=n {
        for a in (0..n).combinations(k) {
            for b in (0..n).permutations(k) {
                let ok = (0..k).all(|i| (0..k).all(|j| adj(a[i], a[j]) == adj(b[i], b[j])));
                if ok {
                    out.push(PartialIso::new(a.clone(), b).unwrap());
                }
            }
        }
    }
    out
}

fn is_automorphism(s: &FinStructure, g: &Perm) -> bool {
    let n = s.size();
    (0..n).all(|i| (0..n).all(|j| s.holds(0, &[i, j]) == s.holds(0, &[g.apply(i), g.apply(j)])))
}

fn compose(g: &PartialIso, f: &PartialIso) -> Option<PartialIso> {
    let mut image = f.map.clone();
    image.sort_unstable();
    if image != g.domain {
        return None;
    }
    let map = f.map.iter().map(|&y| g.map[g.domain.binary_search(&y).unwrap()]).collect();
    Some(PartialIso::new(f.domain.clone(), map).unwrap())
}

fn assert_functor(s: &FinStructure, k: &UniformFunctor) {
    let isos = naive_partial_isos(s);
    assert_eq!(k.len(), isos.len(), "table size on {s:?}");
    for f in &isos {
        let kf = k.get(f).unwrap_or_else(|| panic!("no value at {f:?}"));
        assert!(is_automorphism(s, kf));
        for (&x, &y) in f.domain.iter().zip(&f.map) {
            assert_eq!(kf.apply(x), y);
        }
        if f.domain == f.map {
            assert!(kf.is_identity());
        }
    }
    for f in &isos {
        for g in &isos {
            if let Some(gf) = compose(g, f) {
                assert_eq!(*k.get(&gf).unwrap(), k.get(g).unwrap().compose(k.get(f).unwrap()));
            }
        }
    }
}

#[test]
fn uniform_functors_on_small_digraphs() {
    let mut checked = 0;
    for n in 1..=4 {
        for s in enumerate_digraphs(n).unwrap() {
            let mask = s.adjacency_mask().unwrap();
            if !pipeline_verdict(n, mask, FilterStages::ALL).unwrap() {
                continue;
            }
            let out = is_uniformly_homogeneous(&s).unwrap();
            let k = out.functor().unwrap_or_else(|| panic!("{n} vertices, mask {mask:#x} not uniform"));
            assert_functor(&s, k);
            checked += 1;
        }
    }
    assert_eq!(checked, 2 + 12 + 56 + 552);
}

#[test]
fn ens_extend_and_generic_functor_on_bare_sets() {
    for n in 1..=4 {
        let s = FinStructure::bare_set(n);
        let explicit = check_functor_conditions(&s, |f| {
            Some(ens_extend(&SetBijection::new(n, f.domain.clone(), f.map.clone()).unwrap()))
        })
        .unwrap();
        assert!(explicit.is_ok(), "ens_extend on {n}: {explicit:?}");

        let out = is_uniformly_homogeneous(&s).unwrap();
        let k = out.functor().expect("bare sets are uniformly homogeneous");
        let generic = check_functor_conditions(&s, |f| k.get(f).cloned()).unwrap();
        assert!(generic.is_ok());
        let naive = naive_partial_isos(&s);
        assert_eq!(naive.len(), k.len());
    }
}

#[test]
fn functor_checker_rejects_a_broken_table() {
    let s = FinStructure::bare_set(3);
    let swap = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
    // identity everywhere except on partial maps moving 2
    let out = check_functor_conditions(&s, |f| {
        if f.domain == f.map {
            Some(Perm::identity(3))
        } else {
            Some(swap.clone())
        }
    })
    .unwrap();
    assert!(out.is_err());
}
