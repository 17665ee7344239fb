use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homog_core::cyclic::{
    amalgamate, cyclic_uniform_report, eta, extend_automorphism, k_apply, lemma_solve,
    CyclicEmbedding, PruferVector,
};
use homog_core::fixtures::{is_digraph_m, m_vertex_names, M_NAMES};
use homog_core::homogeneity::UniformityFailure;
use homog_core::iso::age_classes;
use homog_core::search::{classify_all, FilterStages, SearchConfig};
use homog_core::verify::verify_paper;
use homog_core::{analyze, automorphism_group, katetov_obstruction, Error, ErrorKind, FinStructure};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "homog", version, about = "Homogeneity checks for finite structures")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Homogeneity, set-homogeneity, uniform homogeneity and obstruction.
    Check { file: PathBuf },
    /// The automorphism group.
    Aut { file: PathBuf },
    /// Isomorphism classes of nonempty induced substructures.
    Age { file: PathBuf },
    /// A nontrivial automorphism fixing a nonempty substructure pointwise.
    Obstruction { file: PathBuf },
    /// Classify all digraphs up to a vertex count.
    Search(SearchArgs),
    /// Finite cyclic groups and ℚ/ℤ.
    #[command(subcommand)]
    Cyclic(CyclicCommand),
    /// Run every check on the fixtures, finite sets and cyclic groups.
    VerifyPaper,
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long)]
    max_vertices: usize,
    #[arg(long, default_value_t = 16)]
    chunks: usize,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Mask range `A:B` (half-open) at the top vertex count only.
    #[arg(long, value_parser = parse_range)]
    range: Option<std::ops::Range<u64>>,
    /// Random digraphs compared against the unfiltered checker.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    no_degree: bool,
    #[arg(long)]
    no_pair_profile: bool,
    #[arg(long)]
    no_orbit_count: bool,
}

#[derive(Subcommand)]
enum CyclicCommand {
    /// b with f = b̂ ∘ e for embeddings e, f : ℤ_k → ℤ_n.
    Lemma { k: u64, n: u64, e: u64, f: u64 },
    /// Amalgamate f : ℤ_k → ℤ_m and g : ℤ_k → ℤ_n over ℤ_(mn).
    Amalgamate { k: u64, m: u64, n: u64, f: u64, g: u64 },
    /// η_m(l) as a Prüfer vector.
    Eta { m: u64, l: u64 },
    /// K(n̂)(x) for a Prüfer vector or fraction x.
    Kapply { n: u64, x: String },
    /// Extend the automorphism b̂ of ℤ_k to ℤ_n.
    Extend { b: u64, k: u64, n: u64 },
    /// Whether ℤ_n is uniformly homogeneous.
    Uniform { n: u64 },
}

fn parse_range(s: &str) -> Result<std::ops::Range<u64>, String> {
    let num = |t: &str| {
        let t = t.trim();
        match t.strip_prefix("0x") {
            Some(h) => u64::from_str_radix(h, 16),
            None => t.parse(),
        }
        .map_err(|e| format!("bad range bound {t:?}: {e}"))
    };
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    Ok(num(a)?..num(b)?)
}

/// What a subcommand prints, and whether it counts as a failed check.
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            failed: false,
        }
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(1));
    }
    v
}

fn load(path: &Path) -> homog_core::Result<FinStructure> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    FinStructure::from_json_str(&text).map_err(|e| match e {
        Error::Parse { context, message } => Error::Parse {
            context: format!("{}: {context}", path.display()),
            message,
        },
        other => other,
    })
}

fn set_text(s: &FinStructure, vs: &[usize]) -> String {
    let nums: Vec<String> = vs.iter().map(usize::to_string).collect();
    let base = format!("{{{}}}", nums.join(", "));
    if is_digraph_m(s) {
        format!("{base} = {}", m_vertex_names(vs))
    } else {
        base
    }
}

fn header(s: &FinStructure) -> String {
    let noun = if s.size() == 1 { "vertex" } else { "vertices" };
    let mut out = format!("structure: {} {noun}", s.size());
    if is_digraph_m(s) {
        let names: Vec<String> = M_NAMES.iter().enumerate().map(|(i, n)| format!("{n}={i}")).collect();
        let _ = write!(out, " (digraph M: {})", names.join(" "));
    }
    out.push('\n');
    out
}

fn cmd_check(path: &Path) -> homog_core::Result<Output> {
    let s = load(path)?;
    let r = analyze(&s)?;
    let mut t = header(&s);
    let _ = writeln!(t, "automorphism group order: {}", r.automorphism_group_order);
    let _ = writeln!(t, "homogeneous: {}", r.homogeneous);
    let _ = writeln!(t, "set_homogeneous: {}", r.set_homogeneous);
    let _ = writeln!(t, "uniformly_homogeneous: {}", r.uniformly_homogeneous);
    if let Some(f) = &r.homogeneity_failure {
        let _ = writeln!(t, "non-extending isomorphism: {:?} -> {:?}", f.domain, f.map);
    }
    if let Some(p) = &r.set_homogeneity_failure {
        let _ = writeln!(t, "no automorphism maps {} onto {}", set_text(&s, &p.from), set_text(&s, &p.to));
    }
    let mut witness_class = None;
    match &r.uniformity_failure {
        Some(UniformityFailure::NoSection { class_copy }) => {
            witness_class = Some(class_copy.clone());
            let _ = writeln!(t, "witness class: {}", set_text(&s, class_copy));
        }
        Some(UniformityFailure::NotSetHomogeneous(_)) => {
            let _ = writeln!(t, "witness: not set-homogeneous");
        }
        None => {}
    }
    if let Some(n) = r.functor_entries {
        let _ = writeln!(t, "extension functor entries: {n}");
    }
    if let Some(o) = &r.obstruction {
        let _ = writeln!(t, "katetov obstruction: fixes {} pointwise, witness {}", set_text(&s, &o.fixed_set), o.witness);
    }
    let mut json = with_schema(serde_json::to_value(&r).expect("report serializes"));
    json["witness_class"] = json!(witness_class);
    Ok(Output::ok(t, json))
}

fn cmd_aut(path: &Path) -> homog_core::Result<Output> {
    let s = load(path)?;
    let g = automorphism_group(&s);
    let mut t = header(&s);
    let _ = writeln!(t, "order: {}", g.order());
    let _ = writeln!(t, "cyclic: {}", g.is_cyclic());
    for p in g.iter() {
        let _ = writeln!(t, "{p}  {:?}", p.images());
    }
    let json = json!({
        "schema": 1,
        "order": g.order(),
        "cyclic": g.is_cyclic(),
        "elements": g.iter().collect::<Vec<_>>(),
    });
    Ok(Output::ok(t, json))
}

fn cmd_age(path: &Path) -> homog_core::Result<Output> {
    let s = load(path)?;
    let classes = age_classes(&s)?;
    let mut t = header(&s);
    let _ = writeln!(t, "{} classes", classes.len());
    let mut items = Vec::new();
    for c in &classes {
        let _ = writeln!(
            t,
            "size {} code {} copies {}: {}",
            c.size(),
            c.code,
            c.copies.len(),
            c.representative
        );
        items.push(json!({
            "size": c.size(),
            "code": c.code,
            "copies": c.copies,
            "representative": c.representative,
        }));
    }
    Ok(Output::ok(t, json!({"schema": 1, "classes": items})))
}

fn cmd_obstruction(path: &Path) -> homog_core::Result<Output> {
    let s = load(path)?;
    let o = katetov_obstruction(&s)?;
    let mut t = header(&s);
    match &o {
        Some(o) => {
            let _ = writeln!(t, "fixed set: {}", set_text(&s, &o.fixed_set));
            let _ = writeln!(t, "witness: {}", o.witness);
        }
        None => {
            let _ = writeln!(t, "no nontrivial automorphism has a fixed point");
        }
    }
    Ok(Output::ok(t, json!({"schema": 1, "obstruction": o})))
}

fn cmd_search(a: &SearchArgs) -> homog_core::Result<Output> {
    let config = SearchConfig {
        max_vertices: a.max_vertices,
        chunks: a.chunks,
        checkpoint: a.checkpoint.clone(),
        filters: FilterStages {
            degree: !a.no_degree,
            pair_profile: !a.no_pair_profile,
            orbit_count: !a.no_orbit_count,
        },
        range: a.range.clone(),
        samples: a.samples,
        seed: a.seed,
    };
    let r = classify_all(&config)?;
    let failed = r
        .sample_check
        .as_ref()
        .is_some_and(|s| !s.disagreements.is_empty());
    Ok(Output {
        text: r.render_text(),
        json: r.to_json(),
        failed,
    })
}

fn cmd_cyclic(c: &CyclicCommand) -> homog_core::Result<Output> {
    Ok(match *c {
        CyclicCommand::Lemma { k, n, e, f } => {
            let (e, f) = (CyclicEmbedding::new(k, n, e)?, CyclicEmbedding::new(k, n, f)?);
            let b = lemma_solve(&e, &f)?;
            Output::ok(format!("{b}\n"), json!({"schema": 1, "b": b}))
        }
        CyclicCommand::Amalgamate { k, m, n, f, g } => {
            let (f, g) = (CyclicEmbedding::new(k, m, f)?, CyclicEmbedding::new(k, n, g)?);
            let a = amalgamate(&f, &g)?;
            let text = format!(
                "target: ℤ_{}\nleft: {}\nright: {}\ntwist: {}\n",
                a.left.target_order(),
                a.left,
                a.right,
                a.twist
            );
            Output::ok(text, with_schema(serde_json::to_value(a).expect("serializes")))
        }
        CyclicCommand::Eta { m, l } => {
            let v = eta(m, l)?;
            Output::ok(format!("{v}\n"), json!({"schema": 1, "value": v}))
        }
        CyclicCommand::Kapply { n, ref x } => {
            let x: PruferVector = x.parse()?;
            let v = k_apply(n, &x)?;
            Output::ok(format!("{v}\n"), json!({"schema": 1, "value": v}))
        }
        CyclicCommand::Extend { b, k, n } => {
            let c = extend_automorphism(b, k, n)?;
            Output::ok(format!("{c}\n"), json!({"schema": 1, "c": c}))
        }
        CyclicCommand::Uniform { n } => {
            let r = cyclic_uniform_report(n)?;
            let mut t = String::new();
            for s in &r.subgroups {
                let status = match &s.defect {
                    None => "section found".to_owned(),
                    Some(d) => format!("no homomorphic section: {d}"),
                };
                let _ = writeln!(
                    t,
                    "k = {:>3}: {status}; generic search: {}",
                    s.k,
                    if s.generic_exists { "section exists" } else { "no section" }
                );
            }
            let _ = writeln!(t, "ℤ_{n} uniformly homogeneous: {}", r.uniform());
            let mut json = with_schema(serde_json::to_value(&r).expect("serializes"));
            json["uniform"] = json!(r.uniform());
            Output {
                text: t,
                json,
                failed: !r.uniform(),
            }
        }
    })
}

fn cmd_verify() -> Output {
    let r = verify_paper();
    Output {
        text: r.render_text(),
        json: r.to_json(),
        failed: !r.all_passed(),
    }
}

fn run(cli: &Cli) -> homog_core::Result<Output> {
    match &cli.command {
        Command::Check { file } => cmd_check(file),
        Command::Aut { file } => cmd_aut(file),
        Command::Age { file } => cmd_age(file),
        Command::Obstruction { file } => cmd_obstruction(file),
        Command::Search(a) => cmd_search(a),
        Command::Cyclic(c) => cmd_cyclic(c),
        Command::VerifyPaper => Ok(cmd_verify()),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json output")
                ),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e.kind() {
                ErrorKind::Input | ErrorKind::Capability | ErrorKind::Io => ExitCode::from(2),
                ErrorKind::Internal => ExitCode::from(1),
            }
        }
    }
}
