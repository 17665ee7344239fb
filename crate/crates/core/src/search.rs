//! Exhaustive classification of small digraphs.
//!
//! Every labelled digraph on `n` vertices is an adjacency mask with arrow
//! `(i, j)` at bit `i·n + j`. Masks run through a sequence of necessary
//! filters before the full homogeneity checker; survivors are deduplicated
//! by canonical form and each class is tested for uniform homogeneity.
//!
//! Stages, in order:
//! * `degree`: loopless vertices share one (out, in) degree pair, and so do
//!   looped vertices.
//! * `pair_profile`: for each vertex `v`, the multiset of pair types
//!   `(v→w, w→v, w looped)` over `w ≠ v` is constant on looped and on
//!   loopless vertices.
//! * `orbit_count`: for every `k`, the number of automorphism orbits on
//!   injective `k`-tuples (by Burnside) equals the number of realised
//!   ordered `k`-types. This is equivalent to homogeneity.
//! * `homogeneous`: the full checker.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::io::Write as _;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homogeneity::{is_homogeneous, is_uniformly_homogeneous};
use crate::iso::canonical_representative;
use crate::structure::FinStructure;

/// Largest vertex count accepted at all.
pub const MAX_VERTICES: usize = 6;
/// Largest vertex count enumerated in full without an explicit range.
pub const FULL_ENUMERATION_BOUND: usize = 5;

pub const SCOPE_NOTE: &str = "digraphs (one binary relation, loops allowed)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FilterStages {
    pub degree: bool,
    pub pair_profile: bool,
    pub orbit_count: bool,
}

impl FilterStages {
    pub const ALL: FilterStages = FilterStages {
        degree: true,
        pair_profile: true,
        orbit_count: true,
    };
    pub const NONE: FilterStages = FilterStages {
        degree: false,
        pair_profile: false,
        orbit_count: false,
    };

    fn code(&self) -> String {
        [(self.degree, 'd'), (self.pair_profile, 'p'), (self.orbit_count, 'o')]
            .iter()
            .map(|&(on, c)| if on { c } else { '-' })
            .collect()
    }
}

impl Default for FilterStages {
    fn default() -> Self {
        FilterStages::ALL
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_vertices: usize,
    pub chunks: usize,
    pub checkpoint: Option<PathBuf>,
    pub filters: FilterStages,
    /// Restricts the search to this mask range at `max_vertices` only.
    pub range: Option<Range<u64>>,
    /// Random `max_vertices`-vertex digraphs compared against the
    /// unfiltered checker.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_vertices: FULL_ENUMERATION_BOUND,
            chunks: 16,
            checkpoint: None,
            filters: FilterStages::ALL,
            range: None,
            samples: 0,
            seed: 0,
        }
    }
}

/// Number of masks surviving each stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    pub enumerated: u64,
    pub degree: u64,
    pub pair_profile: u64,
    pub orbit_count: u64,
    pub homogeneous: u64,
}

impl StageCounts {
    fn add(&mut self, o: &StageCounts) {
        self.enumerated += o.enumerated;
        self.degree += o.degree;
        self.pair_profile += o.pair_profile;
        self.orbit_count += o.orbit_count;
        self.homogeneous += o.homogeneous;
    }

    pub fn as_pairs(&self) -> [(&'static str, u64); 5] {
        [
            ("enumerated", self.enumerated),
            ("degree", self.degree),
            ("pair_profile", self.pair_profile),
            ("orbit_count", self.orbit_count),
            ("homogeneous", self.homogeneous),
        ]
    }
}

/// One isomorphism class of homogeneous digraphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub code: String,
    /// Mask of the canonical representative.
    pub mask: u64,
    pub arrows: usize,
    pub uniform: bool,
    pub structure: FinStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub n: usize,
    pub range: (u64, u64),
    pub complete: bool,
    pub stages: StageCounts,
    pub classes: Vec<ClassRecord>,
}

impl SizeReport {
    pub fn non_uniform(&self) -> impl Iterator<Item = &ClassRecord> {
        self.classes.iter().filter(|c| !c.uniform)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleCheck {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub agreed: usize,
    pub homogeneous: usize,
    /// Masks on which the pipeline and the naive checker disagree.
    pub disagreements: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub max_vertices: usize,
    pub filters: FilterStages,
    pub sizes: Vec<SizeReport>,
    pub sample_check: Option<SampleCheck>,
    pub wall_time_seconds: f64,
}

impl SearchReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &ClassRecord> {
        self.sizes.iter().flat_map(SizeReport::non_uniform)
    }

    pub fn all_complete(&self) -> bool {
        self.sizes.iter().all(|s| s.complete)
    }

    pub fn to_json(&self) -> Value {
        let sizes: Vec<Value> = self
            .sizes
            .iter()
            .map(|s| {
                json!({
                    "n": s.n,
                    "range": [s.range.0, s.range.1],
                    "complete": s.complete,
                    "stages": s.stages.as_pairs().iter()
                        .map(|(name, count)| json!({"stage": name, "count": count}))
                        .collect::<Vec<_>>(),
                    "classes": s.classes.iter().map(class_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "schema": 1,
            "scope": SCOPE_NOTE,
            "n": self.max_vertices,
            "filters": self.filters,
            "sizes": sizes,
            "stages": self.sizes.iter().map(|s| json!({"n": s.n, "counts": s.stages})).collect::<Vec<_>>(),
            "witnesses": self.witnesses().map(|c| c.structure.to_file()).collect::<Vec<_>>(),
            "sample_check": self.sample_check,
            "wall_time_seconds": self.wall_time_seconds,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "search scope: {SCOPE_NOTE}");
        let _ = writeln!(out, "filters: {}", self.filters.code());
        let _ = writeln!(
            out,
            "{:>2} {:>12} {:>12} {:>12} {:>12} {:>12} {:>8} {:>12}",
            "n", "enumerated", "degree", "pair_profile", "orbit_count", "homogeneous", "classes",
            "non-uniform"
        );
        for s in &self.sizes {
            let c = &s.stages;
            let _ = writeln!(
                out,
                "{:>2} {:>12} {:>12} {:>12} {:>12} {:>12} {:>8} {:>12}{}",
                s.n,
                c.enumerated,
                c.degree,
                c.pair_profile,
                c.orbit_count,
                c.homogeneous,
                s.classes.len(),
                s.non_uniform().count(),
                if s.complete {
                    String::new()
                } else {
                    format!("  (masks {}..{} only)", s.range.0, s.range.1)
                }
            );
        }
        for s in &self.sizes {
            for c in &s.classes {
                let _ = writeln!(
                    out,
                    "n={} class {} arrows={} uniform={} {}",
                    s.n,
                    c.code,
                    c.arrows,
                    c.uniform,
                    arrow_list(&c.structure)
                );
            }
        }
        let witnesses = self.witnesses().count();
        if witnesses == 0 {
            let covered = self.sizes.iter().filter(|s| s.complete).map(|s| s.n).max();
            match covered {
                Some(n) if self.all_complete() => {
                    let _ = writeln!(
                        out,
                        "no homogeneous digraph on at most {n} vertices fails uniform homogeneity"
                    );
                }
                _ => {
                    let _ = writeln!(out, "no homogeneous, non-uniform digraph in the searched range");
                }
            }
        } else {
            let _ = writeln!(out, "homogeneous but not uniformly homogeneous: {witnesses} class(es)");
        }
        if let Some(sc) = &self.sample_check {
            let _ = writeln!(
                out,
                "sample check: {}/{} random {}-vertex digraphs agree with the unfiltered checker (seed {})",
                sc.agreed, sc.samples, sc.n, sc.seed
            );
        }
        let _ = writeln!(out, "wall time: {:.2}s", self.wall_time_seconds);
        out
    }
}

fn class_json(c: &ClassRecord) -> Value {
    json!({
        "code": c.code,
        "mask": c.mask,
        "arrows": c.arrows,
        "uniform": c.uniform,
        "structure": c.structure.to_file(),
    })
}

fn arrow_list(s: &FinStructure) -> String {
    let arrows: Vec<String> = s.tuples(0).map(|t| format!("{}{}", t[0], t[1])).collect();
    format!("[{}]", arrows.join(" "))
}

/// Masks are `n²`-bit numbers; `n ≤ 6` keeps them inside a `u64`.
fn mask_space(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::input("vertex count must be at least 1"));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "digraph vertex count",
            size: n as u64,
            bound: MAX_VERTICES as u64,
        });
    }
    Ok(1u64 << (n * n))
}

/// All `2^(n²)` labelled digraphs on `n` vertices in increasing mask order.
pub fn enumerate_digraphs(n: usize) -> Result<impl Iterator<Item = FinStructure>> {
    let total = mask_space(n)?;
    Ok((0..total).map(move |m| FinStructure::from_adjacency_mask(n, m)))
}

/// Precomputed bit layouts for one vertex count.
struct Layout {
    n: usize,
    columns: Vec<u64>,
    perms: Vec<Vec<usize>>,
    /// Injective `k`-tuples for `k = 1..=n`.
    tuples: Vec<Vec<Vec<usize>>>,
}

impl Layout {
    fn new(n: usize) -> Self {
        let columns = (0..n)
            .map(|j| (0..n).fold(0u64, |c, i| c | 1 << (i * n + j)))
            .collect();
        let perms = (0..n).permutations(n).collect();
        let tuples = (1..=n).map(|k| (0..n).permutations(k).collect()).collect();
        Layout {
            n,
            columns,
            perms,
            tuples,
        }
    }

    #[inline]
    fn adj(&self, mask: u64, i: usize, j: usize) -> bool {
        mask >> (i * self.n + j) & 1 == 1
    }

    #[inline]
    fn looped(&self, mask: u64, v: usize) -> bool {
        self.adj(mask, v, v)
    }

    fn degree_ok(&self, mask: u64) -> bool {
        let n = self.n;
        let row = (1u64 << n) - 1;
        let mut seen: [Option<(u32, u32)>; 2] = [None, None];
        for v in 0..n {
            let out = ((mask >> (v * n)) & row).count_ones();
            let inn = (mask & self.columns[v]).count_ones();
            let slot = &mut seen[self.looped(mask, v) as usize];
            match slot {
                None => *slot = Some((out, inn)),
                Some(p) if *p != (out, inn) => return false,
                _ => {}
            }
        }
        true
    }

    fn pair_profile_ok(&self, mask: u64) -> bool {
        let mut seen: [Option<[u8; 8]>; 2] = [None, None];
        for v in 0..self.n {
            let mut profile = [0u8; 8];
            for w in (0..self.n).filter(|&w| w != v) {
                let t = self.adj(mask, v, w) as usize
                    | (self.adj(mask, w, v) as usize) << 1
                    | (self.looped(mask, w) as usize) << 2;
                profile[t] += 1;
            }
            let slot = &mut seen[self.looped(mask, v) as usize];
            match slot {
                None => *slot = Some(profile),
                Some(p) if *p != profile => return false,
                _ => {}
            }
        }
        true
    }

    fn automorphisms(&self, mask: u64) -> Vec<&Vec<usize>> {
        let n = self.n;
        self.perms
            .iter()
            .filter(|p| {
                (0..n).all(|i| (0..n).all(|j| self.adj(mask, i, j) == self.adj(mask, p[i], p[j])))
            })
            .collect()
    }

    fn tuple_type(&self, mask: u64, t: &[usize]) -> u64 {
        let k = t.len();
        let mut code = 0u64;
        for (a, &x) in t.iter().enumerate() {
            for (b, &y) in t.iter().enumerate() {
                if self.adj(mask, x, y) {
                    code |= 1 << (a * k + b);
                }
            }
        }
        code
    }

    fn orbit_count_ok(&self, mask: u64) -> bool {
        let aut = self.automorphisms(mask);
        let order = aut.len() as u64;
        let fixed: Vec<u64> = aut
            .iter()
            .map(|p| p.iter().enumerate().filter(|&(i, &x)| i == x).count() as u64)
            .collect();
        for k in 1..=self.n {
            let falling = |f: u64| (0..k as u64).fold(1u64, |acc, i| acc * f.saturating_sub(i));
            let sum: u64 = fixed.iter().map(|&f| falling(f)).sum();
            debug_assert_eq!(sum % order, 0);
            let orbits = sum / order;
            let types: HashSet<u64> = self.tuples[k - 1]
                .iter()
                .map(|t| self.tuple_type(mask, t))
                .collect();
            if orbits != types.len() as u64 {
                return false;
            }
        }
        true
    }
}

/// Necessary condition for homogeneity of a digraph: one (out, in) degree
/// pair for loopless vertices and one for looped vertices.
pub fn invariant_prefilter(s: &FinStructure) -> Result<bool> {
    let mask = digraph_mask(s)?;
    Ok(Layout::new(s.size()).degree_ok(mask))
}

fn digraph_mask(s: &FinStructure) -> Result<u64> {
    if s.size() > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "digraph vertex count",
            size: s.size() as u64,
            bound: MAX_VERTICES as u64,
        });
    }
    s.adjacency_mask()
        .ok_or_else(|| Error::input("the search filters need a digraph signature"))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct ChunkResult {
    counts: StageCounts,
    /// Canonical code → canonical representative mask.
    classes: BTreeMap<String, u64>,
}

impl ChunkResult {
    fn merge(&mut self, o: &ChunkResult) {
        self.counts.add(&o.counts);
        self.classes.extend(o.classes.iter().map(|(k, v)| (k.clone(), *v)));
    }
}

fn run_chunk(layout: &Layout, masks: Range<u64>, filters: FilterStages) -> Result<ChunkResult> {
    let n = layout.n;
    let mut r = ChunkResult::default();
    for mask in masks {
        r.counts.enumerated += 1;
        if filters.degree && !layout.degree_ok(mask) {
            continue;
        }
        r.counts.degree += 1;
        if filters.pair_profile && !layout.pair_profile_ok(mask) {
            continue;
        }
        r.counts.pair_profile += 1;
        if filters.orbit_count && !layout.orbit_count_ok(mask) {
            continue;
        }
        r.counts.orbit_count += 1;
        let s = FinStructure::from_adjacency_mask(n, mask);
        if !is_homogeneous(&s)?.holds {
            if filters.orbit_count {
                return Err(Error::invariant(format!(
                    "orbit count accepts non-homogeneous mask {mask:#x} on {n} vertices"
                )));
            }
            continue;
        }
        r.counts.homogeneous += 1;
        let (rep, code) = canonical_representative(&s)?;
        let rep_mask = rep.adjacency_mask().expect("digraph");
        r.classes.entry(code.to_hex()).or_insert(rep_mask);
    }
    Ok(r)
}

/// Runs the pipeline on a single mask; true iff it is homogeneous.
pub fn pipeline_verdict(n: usize, mask: u64, filters: FilterStages) -> Result<bool> {
    if mask >= mask_space(n)? {
        return Err(Error::input(format!("mask {mask:#x} has bits beyond {n}² positions")));
    }
    let r = run_chunk(&Layout::new(n), mask..mask + 1, filters)?;
    Ok(r.counts.homogeneous == 1)
}

fn chunk_bounds(range: &Range<u64>, chunks: usize, i: usize) -> Range<u64> {
    let len = (range.end - range.start) as u128;
    let lo = range.start + (len * i as u128 / chunks as u128) as u64;
    let hi = range.start + (len * (i as u128 + 1) / chunks as u128) as u64;
    lo..hi
}

struct Plan {
    sizes: Vec<(usize, Range<u64>, bool)>,
}

fn plan(config: &SearchConfig) -> Result<Plan> {
    let top = config.max_vertices;
    let space = mask_space(top)?;
    if config.chunks == 0 {
        return Err(Error::input("chunk count must be at least 1"));
    }
    match &config.range {
        Some(r) => {
            if r.start >= r.end || r.end > space {
                return Err(Error::input(format!(
                    "mask range {}..{} is empty or exceeds 2^{} for {top} vertices",
                    r.start,
                    r.end,
                    top * top
                )));
            }
            let complete = r.start == 0 && r.end == space;
            Ok(Plan {
                sizes: vec![(top, r.clone(), complete)],
            })
        }
        None => {
            if top > FULL_ENUMERATION_BOUND {
                return Err(Error::TooLarge {
                    what: "full enumeration vertex count (pass a mask range)",
                    size: top as u64,
                    bound: FULL_ENUMERATION_BOUND as u64,
                });
            }
            Ok(Plan {
                sizes: (1..=top).map(|n| (n, 0..1u64 << (n * n), true)).collect(),
            })
        }
    }
}

const CHECKPOINT_MAGIC: &str = "homog-search-checkpoint 1";

fn checkpoint_header(config: &SearchConfig, plan: &Plan) -> String {
    let ranges: Vec<String> = plan
        .sizes
        .iter()
        .map(|(n, r, _)| format!("{n}:{}:{}", r.start, r.end))
        .collect();
    format!(
        "{CHECKPOINT_MAGIC}\nconfig chunks={} filters={} sizes={}\n",
        config.chunks,
        config.filters.code(),
        ranges.join(",")
    )
}

type Done = BTreeMap<(usize, usize), ChunkResult>;

fn load_checkpoint(path: &Path, header: &str) -> Result<Done> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Done::new()),
        Err(source) => {
            return Err(Error::Io {
                path: path.to_owned(),
                source,
            })
        }
    };
    let bad = |line: usize, msg: &str| Error::Parse {
        context: format!("{}:{}", path.display(), line + 1),
        message: msg.to_owned(),
    };
    if !text.starts_with(header) {
        return Err(bad(0, "checkpoint was written for a different search configuration"));
    }
    let mut done = Done::new();
    for (i, line) in text.lines().enumerate().skip(header.lines().count()) {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 9 || f[0] != "chunk" {
            return Err(bad(i, "expected `chunk n index enumerated degree pair orbit homogeneous classes`"));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad(i, "bad number"));
        let key = (num(f[1])? as usize, num(f[2])? as usize);
        let counts = StageCounts {
            enumerated: num(f[3])?,
            degree: num(f[4])?,
            pair_profile: num(f[5])?,
            orbit_count: num(f[6])?,
            homogeneous: num(f[7])?,
        };
        let mut classes = BTreeMap::new();
        if f[8] != "-" {
            for item in f[8].split(',') {
                let (code, mask) = item.split_once('=').ok_or_else(|| bad(i, "bad class entry"))?;
                classes.insert(code.to_owned(), num(mask)?);
            }
        }
        done.insert(key, ChunkResult { counts, classes });
    }
    Ok(done)
}

fn write_checkpoint(path: &Path, header: &str, done: &Done) -> Result<()> {
    let mut text = header.to_owned();
    for ((n, i), r) in done {
        let c = &r.counts;
        let classes = if r.classes.is_empty() {
            "-".to_owned()
        } else {
            r.classes.iter().map(|(k, v)| format!("{k}={v}")).join(",")
        };
        let _ = writeln!(
            text,
            "chunk {n} {i} {} {} {} {} {} {classes}",
            c.enumerated, c.degree, c.pair_profile, c.orbit_count, c.homogeneous
        );
    }
    let io = |source| Error::Io {
        path: path.to_owned(),
        source,
    };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Runs the full search described by `config`.
pub fn classify_all(config: &SearchConfig) -> Result<SearchReport> {
    let start = Instant::now();
    let plan = plan(config)?;
    let header = checkpoint_header(config, &plan);
    let done = match &config.checkpoint {
        Some(p) => load_checkpoint(p, &header)?,
        None => Done::new(),
    };
    let layouts: BTreeMap<usize, Layout> =
        plan.sizes.iter().map(|(n, _, _)| (*n, Layout::new(*n))).collect();
    let pending: Vec<(usize, usize, Range<u64>)> = plan
        .sizes
        .iter()
        .flat_map(|(n, r, _)| {
            (0..config.chunks).map(move |i| (*n, i, chunk_bounds(r, config.chunks, i)))
        })
        .filter(|(n, i, _)| !done.contains_key(&(*n, *i)))
        .collect();

    let done = Mutex::new(done);
    pending
        .into_par_iter()
        .try_for_each(|(n, i, masks)| -> Result<()> {
            let r = run_chunk(&layouts[&n], masks, config.filters)?;
            let mut d = done.lock().expect("checkpoint lock");
            d.insert((n, i), r);
            if let Some(p) = &config.checkpoint {
                write_checkpoint(p, &header, &d)?;
            }
            Ok(())
        })?;
    let done = done.into_inner().expect("checkpoint lock");

    let mut sizes = Vec::new();
    for (n, range, complete) in &plan.sizes {
        let mut merged = ChunkResult::default();
        for i in 0..config.chunks {
            merged.merge(&done[&(*n, i)]);
        }
        let mut classes = Vec::new();
        for (code, mask) in merged.classes {
            let structure = FinStructure::from_adjacency_mask(*n, mask);
            classes.push(ClassRecord {
                code,
                mask,
                arrows: structure.tuple_count(),
                uniform: is_uniformly_homogeneous(&structure)?.holds(),
                structure,
            });
        }
        sizes.push(SizeReport {
            n: *n,
            range: (range.start, range.end),
            complete: *complete,
            stages: merged.counts,
            classes,
        });
    }
    let sample_check = if config.samples > 0 {
        Some(sample_check(config.max_vertices, config.samples, config.seed, config.filters)?)
    } else {
        None
    };
    Ok(SearchReport {
        max_vertices: config.max_vertices,
        filters: config.filters,
        sizes,
        sample_check,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Classifies the masks in `range` on `n` vertices, in one chunk.
pub fn classify_range(n: usize, range: Range<u64>, filters: FilterStages) -> Result<SizeReport> {
    let config = SearchConfig {
        max_vertices: n,
        chunks: 1,
        range: Some(range),
        filters,
        ..SearchConfig::default()
    };
    let mut report = classify_all(&config)?;
    Ok(report.sizes.remove(0))
}

/// Compares the pipeline with the unfiltered checker on `samples` uniformly
/// random `n`-vertex digraphs drawn from a ChaCha8 stream seeded by `seed`.
pub fn sample_check(n: usize, samples: usize, seed: u64, filters: FilterStages) -> Result<SampleCheck> {
    let space = mask_space(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreed = 0;
    let mut homogeneous = 0;
    let mut disagreements = Vec::new();
    for _ in 0..samples {
        let mask = rng.gen_range(0..space);
        let naive = is_homogeneous(&FinStructure::from_adjacency_mask(n, mask))?.holds;
        let piped = pipeline_verdict(n, mask, filters)?;
        homogeneous += naive as usize;
        if naive == piped {
            agreed += 1;
        } else {
            disagreements.push(mask);
        }
    }
    Ok(SampleCheck {
        n,
        seed,
        samples,
        agreed,
        homogeneous,
        disagreements,
    })
}
