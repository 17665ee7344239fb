//! One line per acceptance criterion on stderr, then a single verdict.
//!
//! The criteria run one after another inside a single test so that the
//! runtime bounds are measured without competing test threads.

use std::io::Write;
use std::time::{Duration, Instant};

use homog_core::cyclic::arith::factorize;
use homog_core::cyclic::{cyclic_uniform_report, prufer_decompose, QZElem};
use homog_core::homogeneity::satisfies_extension_property;
use homog_core::search::{classify_all, enumerate_digraphs, sample_check, FilterStages, SearchConfig};
use homog_core::verify::{
    amalgamation_oracle, embed_sym_laws, ens_functor_laws, katetov_conditions, lemma_oracle,
    verify_paper,
};
use homog_core::{is_homogeneous, is_set_homogeneous, is_uniformly_homogeneous, Result};

const VERIFY_PAPER_LIMIT: Duration = Duration::from_secs(10);
const FUNCTOR_PAIRS_MIN: usize = 10_000;
const KATETOV_LIMIT: Duration = Duration::from_secs(60);
const CROSS_CHECK_LIMIT: Duration = Duration::from_secs(60);
const SEARCH_4_LIMIT: Duration = Duration::from_secs(5 * 60);
const SEARCH_5_LIMIT: Duration = Duration::from_secs(60 * 60);
const SAMPLES: usize = 100;
const SAMPLE_SEED: u64 = 0;
const PRUFER_DENOMINATOR: u64 = 10_000;
const PRUFER_LIMIT: Duration = Duration::from_secs(10);

struct Line {
    passed: bool,
    detail: String,
}

fn line(passed: bool, detail: impl Into<String>) -> Line {
    Line {
        passed,
        detail: detail.into(),
    }
}

fn within(t: Duration, limit: Duration) -> bool {
    t < limit
}

fn criterion_1() -> Result<Line> {
    let start = Instant::now();
    let report = verify_paper();
    let t = start.elapsed();
    let failed: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("({}) {}", c.id, c.detail))
        .collect();
    let core = ["i", "ii", "iii", "iv"]
        .iter()
        .all(|id| report.check(id).is_some_and(|c| c.passed));
    let passed = failed.is_empty() && core && within(t, VERIFY_PAPER_LIMIT);
    Ok(line(
        passed,
        format!(
            "{}/{} checks in {t:.2?} (limit {VERIFY_PAPER_LIMIT:?}){}",
            report.checks.len() - failed.len(),
            report.checks.len(),
            if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join("; ")) }
        ),
    ))
}

fn criterion_2() -> Result<Line> {
    let ens = ens_functor_laws(5);
    let sym = embed_sym_laws(5)?;
    Ok(match (ens, sym) {
        (Ok(pairs), Ok(products)) => line(
            pairs >= FUNCTOR_PAIRS_MIN,
            format!("ens_extend: {pairs} composable pairs (min {FUNCTOR_PAIRS_MIN}); embed_sym: {products} products"),
        ),
        (Err(x), _) | (_, Err(x)) => line(false, x),
    })
}

fn criterion_3() -> Result<Line> {
    let start = Instant::now();
    let out = katetov_conditions(30)?;
    let t = start.elapsed();
    Ok(match out {
        Ok(c) => line(
            within(t, KATETOV_LIMIT) && c.naturality > 0,
            format!(
                "m, k ≤ 30: {} additivity points, {} composites, {} naturality points in {t:.2?} (limit {KATETOV_LIMIT:?})",
                c.embedding, c.composition, c.naturality
            ),
        ),
        Err(x) => line(false, x),
    })
}

fn criterion_4() -> Result<Line> {
    Ok(match (lemma_oracle(60)?, amalgamation_oracle(12)?) {
        (Ok(pairs), Ok(squares)) => line(
            true,
            format!("{pairs} embedding pairs with k | n ≤ 60 match the unit scan; {squares} squares commute"),
        ),
        (Err(x), _) | (_, Err(x)) => line(false, x),
    })
}

fn criterion_5() -> Result<Line> {
    let mut failures = Vec::new();
    let mut subgroups = 0;
    for n in 1..=30 {
        let r = cyclic_uniform_report(n)?;
        if !r.agrees_with_generic() {
            return Ok(line(false, format!("ℤ_{n}: section search and generic search disagree")));
        }
        subgroups += r.subgroups.len();
        if let Some(s) = r.first_failure() {
            failures.push(format!("ℤ_{n} over order {}: {}", s.k, s.defect.expect("defect")));
        }
    }
    Ok(line(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{subgroups} subgroups of ℤ_n, n ≤ 30, all admit homomorphic sections")
        } else {
            format!(
                "{} of {subgroups} subgroups admit no homomorphic section (generic search agrees): {}",
                failures.len(),
                failures.join("; ")
            )
        },
    ))
}

fn criterion_6() -> Result<Line> {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=3 {
        for s in enumerate_digraphs(n)? {
            count += 1;
            let hom = is_homogeneous(&s)?.holds;
            let ext = satisfies_extension_property(&s)?.holds;
            let set = is_set_homogeneous(&s)?.holds;
            let uni = is_uniformly_homogeneous(&s)?.holds();
            if hom != ext || (uni && !hom) || (hom && !set) {
                return Ok(line(
                    false,
                    format!("{n} vertices, mask {:#x}: hom {hom}, ext {ext}, set {set}, uniform {uni}", s.adjacency_mask().unwrap_or(0)),
                ));
            }
        }
    }
    let t = start.elapsed();
    Ok(line(
        within(t, CROSS_CHECK_LIMIT),
        format!("{count} labelled digraphs on 1 to 3 vertices agree in {t:.2?} (limit {CROSS_CHECK_LIMIT:?})"),
    ))
}

fn criterion_7() -> Result<Line> {
    let start = Instant::now();
    let runs: Vec<_> = [1, 4, 16]
        .into_iter()
        .map(|chunks| {
            classify_all(&SearchConfig {
                max_vertices: 4,
                chunks,
                ..SearchConfig::default()
            })
        })
        .collect::<Result<_>>()?;
    let t4 = start.elapsed() / 3;
    let invariant = runs.windows(2).all(|w| w[0].sizes == w[1].sizes);

    let start = Instant::now();
    let five = classify_all(&SearchConfig {
        max_vertices: 5,
        samples: SAMPLES,
        seed: SAMPLE_SEED,
        ..SearchConfig::default()
    })?;
    let t5 = start.elapsed();
    let witnesses = five.witnesses().count();
    let samples = five.sample_check.clone().expect("samples requested");
    let direct = sample_check(5, SAMPLES, SAMPLE_SEED, FilterStages::ALL)?;

    let passed = invariant
        && within(t4, SEARCH_4_LIMIT)
        && within(t5, SEARCH_5_LIMIT)
        && five.all_complete()
        && samples.agreed == SAMPLES
        && samples == direct;
    let classes: usize = five.sizes.iter().map(|s| s.classes.len()).sum();
    Ok(line(
        passed,
        format!(
            "n ≤ 4 in {t4:.2?} (limit {SEARCH_4_LIMIT:?}), chunk-invariant {invariant}; \
             n ≤ 5 in {t5:.2?} (limit {SEARCH_5_LIMIT:?}), {classes} homogeneous classes, \
             {witnesses} homogeneous non-uniform; samples {}/{SAMPLES} agree (seed {SAMPLE_SEED})",
            samples.agreed
        ),
    ))
}

fn criterion_8() -> Result<Line> {
    let start = Instant::now();
    let mut count = 0u64;
    for d in 1..=PRUFER_DENOMINATOR {
        let primes: Vec<u64> = factorize(d).into_iter().map(|(p, _)| p).collect();
        for a in 0..d {
            if primes.iter().any(|&p| a % p == 0) || (a == 0 && d > 1) {
                continue;
            }
            let q = QZElem::new(a, d)?;
            let back = prufer_decompose(&q)?.recompose()?;
            if back != q {
                return Ok(line(false, format!("{q} recomposes to {back}")));
            }
            count += 1;
        }
    }
    let t = start.elapsed();
    Ok(line(
        within(t, PRUFER_LIMIT),
        format!("{count} reduced fractions with denominator ≤ {PRUFER_DENOMINATOR} in {t:.2?} (limit {PRUFER_LIMIT:?})"),
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [fn() -> Result<Line>; 8] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    let _ = writeln!(err);
    for (i, f) in criteria.iter().enumerate() {
        let l = f().unwrap_or_else(|e| line(false, format!("error: {e}")));
        let _ = writeln!(err, "criterion {}: {} {}", i + 1, if l.passed { "PASS" } else { "FAIL" }, l.detail);
        if !l.passed {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
