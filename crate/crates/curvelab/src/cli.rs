//! Command-line front end: every library operation as a subcommand with
//! reproducible machine-readable output.
//!
//! Output contract: one JSON document on stdout (or CSV for series
//! commands), byte-identical for identical argv and seed. Diagnostics go
//! to stderr as single lines naming the offending token. Exit codes:
//! 0 success, 2 input error, 3 honest uncertainty (uncertified counts,
//! inconclusive verdicts, exhausted searches), 4 numeric degeneracy.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::experiments::{
    boundedness_probe, empirical_k, homology_basis_search, presets, t_grid, thick_sample,
    ProbeClassification, ProbeConfig, ProbeSeries, DIVERGENCE_FACTOR_DEFAULT,
};
use crate::experiments::bers_greedy;
use crate::hyperbolic::{
    build_holonomy, collar_width, curve_length, multicurve_length, systole_estimate, FNPoint,
    Holonomy, SYSTOLE_BUDGET_DEFAULT,
};
use crate::intersection::{Intersector, RadiusPolicy};
use crate::search::{criterion_check, orbit_min_intersection, orbit_min_length, OrbitSearchReport};
use crate::topology::slope::parse_multicurve_spec;
use crate::topology::word::format_word;
use crate::topology::{pants_type_by_tag, Aggregator, Multicurve, SurfaceSig};

/// JSON schema the envelope of every subcommand validates against.
pub const OUTPUT_SCHEMA: &str = include_str!("../../../schemas/output.schema.json");

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "curvelab",
    version,
    about = "Certified curve lengths, crossing numbers, and boundedness probes on low-complexity hyperbolic surfaces",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Geodesic length of a curve or multicurve at a point
    Length(LengthArgs),
    /// Shortest closed geodesic over a bounded word pool
    Systole(SystoleArgs),
    /// Certified crossing numbers (self or mutual)
    Intersect(IntersectArgs),
    /// Minimize crossings and length over the mapping-class orbit
    OrbitMin(OrbitMinArgs),
    /// Boundedness verdict for a family over all pants types
    Criterion(CriterionArgs),
    /// Minimal type length along a pinch path, with collar floors
    PinchProbe(PinchProbeArgs),
    /// Greedy short pants decomposition from certified simple curves
    Bers(BudgetedPointArgs),
    /// Canonical homology basis on the closed genus-2 surface
    HomologyBasis(BudgetedPointArgs),
    /// Rejection-sample points with a systole floor
    ThickSample(SampleArgs),
    /// Empirical thick-part constant: max orbit-minimal length over a sample
    EmpiricalK(EmpiricalKArgs),
    /// Run the built-in invariant battery
    Selftest,
}

/// Flags selecting a surface and a point of its parameter space.
#[derive(Args, Debug)]
struct PointArgs {
    /// Surface signature as `g,n` (genus, cusps); required unless a
    /// preset supplies it
    #[arg(long)]
    surface: Option<String>,
    /// Pants type tag; defaults to the reference decomposition
    #[arg(long)]
    pants_type: Option<String>,
    /// Comma-separated decomposition-curve lengths; defaults to the
    /// reference point
    #[arg(long)]
    lengths: Option<String>,
    /// Comma-separated twists; zeros when lengths are given without them
    #[arg(long)]
    twists: Option<String>,
}

#[derive(Args, Debug)]
struct LengthArgs {
    #[command(flatten)]
    point: PointArgs,
    /// A single curve: word over the generators, or `p/q` on the
    /// once-punctured torus
    #[arg(long)]
    word: Option<String>,
    /// A multicurve: comma-separated components, `max:` prefix for the
    /// max aggregator
    #[arg(long)]
    multicurve: Option<String>,
}

#[derive(Args, Debug)]
struct SystoleArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Word-length budget for the candidate pool
    #[arg(long, default_value_t = SYSTOLE_BUDGET_DEFAULT)]
    budget: usize,
}

#[derive(Args, Debug)]
struct IntersectArgs {
    #[command(flatten)]
    point: PointArgs,
    /// One multicurve for self-crossings, twice for mutual crossings
    #[arg(long, required = true)]
    multicurve: Vec<String>,
    /// Coset-enumeration radius cap
    #[arg(long, default_value_t = 6)]
    radius: usize,
}

#[derive(Args, Debug)]
struct OrbitMinArgs {
    #[command(flatten)]
    point: PointArgs,
    /// The multicurve whose orbit is searched
    #[arg(long)]
    multicurve: String,
    /// Move-ball depth of the orbit search
    #[arg(long, default_value_t = 6)]
    depth: usize,
    /// Coset-enumeration radius cap
    #[arg(long, default_value_t = 6)]
    radius: usize,
}

#[derive(Args, Debug)]
struct CriterionArgs {
    /// Surface signature as `g,n`; not needed with --preset
    #[arg(long)]
    surface: Option<String>,
    /// Single-member family shorthand
    #[arg(long)]
    multicurve: Option<String>,
    /// Semicolon-separated multicurves forming the family
    #[arg(long)]
    family: Option<String>,
    /// Run a named built-in family instead of explicit flags
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, default_value_t = 6)]
    depth: usize,
    #[arg(long, default_value_t = 6)]
    radius: usize,
}

#[derive(Args, Debug)]
struct PinchProbeArgs {
    #[command(flatten)]
    point: PointArgs,
    /// The multicurve the probe follows
    #[arg(long)]
    multicurve: Option<String>,
    /// Run a named built-in family instead of explicit flags
    #[arg(long)]
    preset: Option<String>,
    /// Number of geometric pinch steps 1, 1/2, …
    #[arg(long, default_value_t = 8)]
    t_steps: usize,
    #[arg(long, default_value_t = 6)]
    depth: usize,
    #[arg(long, default_value_t = 6)]
    radius: usize,
    /// Growth ratio declaring divergence
    #[arg(long, default_value_t = DIVERGENCE_FACTOR_DEFAULT)]
    divergence_factor: f64,
    /// `csv` (default) or `json`
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args, Debug)]
struct BudgetedPointArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Word-length budget for the candidate pool
    #[arg(long, default_value_t = 6)]
    budget: usize,
    /// Coset-enumeration radius cap
    #[arg(long, default_value_t = 6)]
    radius: usize,
}

#[derive(Args, Debug)]
struct SampleArgs {
    /// Surface signature as `g,n`
    #[arg(long)]
    surface: String,
    /// Systole floor of the sample
    #[arg(long)]
    epsilon: f64,
    /// Number of points to accept
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Word-length budget for the per-point systole scan
    #[arg(long, default_value_t = 6)]
    budget: usize,
    /// `json` (default) or `csv`
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args, Debug)]
struct EmpiricalKArgs {
    #[command(flatten)]
    sample: SampleArgs,
    /// The type whose orbit-minimal length is maximized
    #[arg(long)]
    multicurve: String,
    /// Move-ball depth of the per-point orbit search
    #[arg(long, default_value_t = 6)]
    depth: usize,
}

/// What a subcommand handler produced: a document plus the exit code.
struct Outcome {
    rendered: Rendered,
    exit: i32,
}

enum Rendered {
    Json(Value),
    Csv(String),
}

impl Outcome {
    fn json(v: Value, exit: i32) -> Self {
        Outcome {
            rendered: Rendered::Json(v),
            exit,
        }
    }

    fn csv(s: String, exit: i32) -> Self {
        Outcome {
            rendered: Rendered::Csv(s),
            exit,
        }
    }
}

/// Entry point: parse argv, run, print, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let line = e
                .to_string()
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .to_string();
            eprintln!("{line}");
            return 2;
        }
    };
    if let Err(e) = init_thread_pool() {
        eprintln!("error[{}]: {e}", e.code());
        return e.exit_code();
    }
    match dispatch(&cli.command) {
        Ok(out) => {
            match out.rendered {
                Rendered::Json(v) => {
                    println!("{}", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Rendered::Csv(s) => print!("{s}"),
            }
            out.exit
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            e.exit_code()
        }
    }
}

/// Honor CURVELAB_THREADS as a cap on internal parallelism.
fn init_thread_pool() -> Result<()> {
    let Ok(raw) = std::env::var("CURVELAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.parse().map_err(|_| {
        Error::Parse(format!("CURVELAB_THREADS `{raw}`: expected a positive integer"))
    })?;
    if n == 0 {
        return Err(Error::Parse(
            "CURVELAB_THREADS `0`: expected a positive integer".into(),
        ));
    }
    // A second initialization (only possible when embedded) keeps the
    // existing pool; that is fine for a cap.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Length(a) => cmd_length(a),
        Command::Systole(a) => cmd_systole(a),
        Command::Intersect(a) => cmd_intersect(a),
        Command::OrbitMin(a) => cmd_orbit_min(a),
        Command::Criterion(a) => cmd_criterion(a),
        Command::PinchProbe(a) => cmd_pinch_probe(a),
        Command::Bers(a) => cmd_bers(a),
        Command::HomologyBasis(a) => cmd_homology_basis(a),
        Command::ThickSample(a) => cmd_thick_sample(a),
        Command::EmpiricalK(a) => cmd_empirical_k(a),
        Command::Selftest => cmd_selftest(),
    }
}

// ---------------------------------------------------------------------
// Input resolution
// ---------------------------------------------------------------------

fn parse_surface(s: &str) -> Result<SurfaceSig> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Parse(format!("surface `{s}`: expected `g,n`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let g: u32 = parts[0].parse().map_err(|_| bad())?;
    let n: u32 = parts[1].parse().map_err(|_| bad())?;
    SurfaceSig::new(g, n)
}

fn parse_floats(flag: &str, s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| Error::Parse(format!("{flag} token `{tok}`: expected a number")))
        })
        .collect()
}

/// Materialize the Fenchel–Nielsen point selected by the flags.
fn resolve_point(args: &PointArgs) -> Result<(SurfaceSig, FNPoint)> {
    let Some(surface) = &args.surface else {
        return Err(Error::Parse("--surface is required".into()));
    };
    let sig = parse_surface(surface)?;
    let reference = FNPoint::reference(sig);
    let decomposition = match &args.pants_type {
        Some(tag) => pants_type_by_tag(sig, tag)?,
        None => reference.decomposition.clone(),
    };
    let lengths = match &args.lengths {
        Some(s) => parse_floats("--lengths", s)?,
        None => reference.lengths.clone(),
    };
    let twists = match &args.twists {
        Some(s) => parse_floats("--twists", s)?,
        None if args.lengths.is_some() => vec![0.0; lengths.len()],
        None => reference.twists.clone(),
    };
    let point = FNPoint::new(decomposition, lengths, twists)?;
    Ok((sig, point))
}

fn holonomy_of(point: &FNPoint) -> Result<Holonomy> {
    build_holonomy(point)
}

/// Parse a multicurve flag value, warning on proper-power components.
fn parse_multicurve(sig: SurfaceSig, spec: &str) -> Result<Multicurve> {
    let m = parse_multicurve_spec(sig, spec)?;
    for w in &m.components {
        if w.is_proper_power() {
            eprintln!(
                "warning: component `{}` is a proper power of a shorter class",
                format_word(w)
            );
        }
    }
    Ok(m)
}

fn aggregator_name(a: Aggregator) -> &'static str {
    match a {
        Aggregator::Sum => "sum",
        Aggregator::Max => "max",
    }
}

fn point_input_json(sig: SurfaceSig, point: &FNPoint) -> Value {
    json!({
        "surface": sig.to_string(),
        "pants_type": point.decomposition.type_tag,
        "lengths": point.lengths,
        "twists": point.twists,
    })
}

fn envelope(command: &str, seed: u64, input: Value, result: Value) -> Value {
    json!({
        "tool": "curvelab",
        "version": VERSION,
        "command": command,
        "seed": seed,
        "input": input,
        "result": result,
    })
}

fn report_json(r: &OrbitSearchReport) -> Value {
    json!({
        "value": r.best_value.as_f64(),
        "witness_moves": r.witness.move_names(),
        "depth_reached": r.depth_reached,
        "exhaustive": r.exhaustive,
        "certified": r.certified,
    })
}

// ---------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------

fn cmd_length(a: &LengthArgs) -> Result<Outcome> {
    let (sig, point) = resolve_point(&a.point)?;
    let h = holonomy_of(&point)?;
    let mut input = point_input_json(sig, &point);
    let result = match (&a.word, &a.multicurve) {
        (Some(w), None) => {
            let m = parse_multicurve(sig, w)?;
            if m.components.len() != 1 {
                return Err(Error::Parse(format!(
                    "--word `{w}`: expected a single curve; use --multicurve for several"
                )));
            }
            input["word"] = json!(w.trim());
            let word = &m.components[0];
            let l = curve_length(&h, word)?;
            json!({ "length": l, "components": [{ "word": format_word(word), "length": l }] })
        }
        (None, Some(spec)) => {
            let m = parse_multicurve(sig, spec)?;
            input["multicurve"] = json!(spec.trim());
            let total = multicurve_length(&h, &m)?;
            let comps: Vec<Value> = m
                .components
                .iter()
                .map(|w| {
                    Ok(json!({ "word": format_word(w), "length": curve_length(&h, w)? }))
                })
                .collect::<Result<_>>()?;
            json!({
                "length": total,
                "aggregator": aggregator_name(m.aggregator),
                "components": comps,
            })
        }
        _ => {
            return Err(Error::Parse(
                "length needs exactly one of --word or --multicurve".into(),
            ))
        }
    };
    Ok(Outcome::json(envelope("length", 0, input, result), 0))
}

fn cmd_systole(a: &SystoleArgs) -> Result<Outcome> {
    let (sig, point) = resolve_point(&a.point)?;
    let h = holonomy_of(&point)?;
    let est = systole_estimate(&h, a.budget)?;
    let mut input = point_input_json(sig, &point);
    input["budget"] = json!(a.budget);
    let result = json!({
        "value": est.value,
        "witness": format_word(&est.witness),
        "word_budget": est.word_budget,
    });
    Ok(Outcome::json(envelope("systole", 0, input, result), 0))
}

fn cmd_intersect(a: &IntersectArgs) -> Result<Outcome> {
    let (sig, point) = resolve_point(&a.point)?;
    if a.multicurve.len() > 2 {
        return Err(Error::Parse(format!(
            "--multicurve given {} times; expected one (self-crossings) or two (mutual)",
            a.multicurve.len()
        )));
    }
    let h = holonomy_of(&point)?;
    let engine = Intersector::new(&h);
    let mut input = point_input_json(sig, &point);
    input["multicurve"] = json!(a.multicurve.iter().map(|s| s.trim()).collect::<Vec<_>>());
    input["radius"] = json!(a.radius);
    let (mode, count) = if a.multicurve.len() == 1 {
        let m = parse_multicurve(sig, &a.multicurve[0])?;
        (
            "self",
            engine.multicurve_self_intersection(&m, a.radius, RadiusPolicy::Adaptive)?,
        )
    } else {
        let m1 = parse_multicurve(sig, &a.multicurve[0])?;
        let m2 = parse_multicurve(sig, &a.multicurve[1])?;
        (
            "mutual",
            engine.multicurve_mutual(&m1, &m2, a.radius, RadiusPolicy::Adaptive)?,
        )
    };
    let result = json!({
        "mode": mode,
        "count": count.count,
        "certified": count.certified,
        "radius_used": count.radius_used,
    });
    let exit = if count.certified { 0 } else { 3 };
    Ok(Outcome::json(envelope("intersect", 0, input, result), exit))
}

fn cmd_orbit_min(a: &OrbitMinArgs) -> Result<Outcome> {
    let (sig, point) = resolve_point(&a.point)?;
    let m = parse_multicurve(sig, &a.multicurve)?;
    let h = holonomy_of(&point)?;
    let crossings = orbit_min_intersection(&h, &point.decomposition, &m, a.depth, a.radius)?;
    let length = orbit_min_length(&h, &m, a.depth)?;
    let mut input = point_input_json(sig, &point);
    input["multicurve"] = json!(a.multicurve.trim());
    input["depth"] = json!(a.depth);
    input["radius"] = json!(a.radius);
    let exit = if crossings.certified && length.certified {
        0
    } else {
        3
    };
    let result = json!({
        "crossings": report_json(&crossings),
        "length": report_json(&length),
    });
    Ok(Outcome::json(envelope("orbit-min", 0, input, result), exit))
}

fn resolve_family(a: &CriterionArgs) -> Result<(SurfaceSig, Vec<Multicurve>, Value, usize, usize)> {
    if let Some(name) = &a.preset {
        if a.surface.is_some() || a.multicurve.is_some() || a.family.is_some() {
            return Err(Error::Parse(
                "--preset replaces --surface/--multicurve/--family".into(),
            ));
        }
        let p = presets::by_name(name)?;
        let input = json!({
            "preset": p.name,
            "surface": p.surface().to_string(),
            "family": p.family,
            "depth": p.depth,
            "radius": p.radius,
        });
        return Ok((p.surface(), p.family_multicurves()?, input, p.depth, p.radius));
    }
    let Some(surface) = &a.surface else {
        return Err(Error::Parse("criterion needs --surface (or --preset)".into()));
    };
    let sig = parse_surface(surface)?;
    let specs: Vec<String> = match (&a.family, &a.multicurve) {
        (Some(f), None) => f.split(';').map(|s| s.trim().to_string()).collect(),
        (None, Some(m)) => vec![m.trim().to_string()],
        (None, None) => {
            return Err(Error::Parse(
                "criterion needs --family or --multicurve (or --preset)".into(),
            ))
        }
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "criterion takes --family or --multicurve, not both".into(),
            ))
        }
    };
    if specs.iter().any(|s| s.is_empty()) {
        return Err(Error::Parse("--family has an empty member".into()));
    }
    let family = specs
        .iter()
        .map(|s| parse_multicurve(sig, s))
        .collect::<Result<Vec<_>>>()?;
    let input = json!({
        "surface": surface.trim(),
        "family": specs,
        "depth": a.depth,
        "radius": a.radius,
    });
    Ok((sig, family, input, a.depth, a.radius))
}

fn cmd_criterion(a: &CriterionArgs) -> Result<Outcome> {
    let (sig, family, input, depth, radius) = resolve_family(a)?;
    let verdict = criterion_check(sig, &family, depth, radius);
    let per_type: Vec<Value> = verdict
        .per_pants_type
        .iter()
        .map(|f| {
            json!({
                "tag": f.tag,
                "min_intersection": f.min_intersection,
                "certified": f.certified,
                "exhaustive": f.exhaustive,
                "witness_moves": f.witness_moves,
                "member": f.member,
            })
        })
        .collect();
    let result = json!({
        "verdict": verdict.verdict.as_str(),
        "per_pants_type": per_type,
        "note": verdict.note,
    });
    let exit = match verdict.verdict {
        crate::search::Verdict::Inconclusive => 3,
        _ => 0,
    };
    Ok(Outcome::json(envelope("criterion", 0, input, result), exit))
}

fn probe_series_json(series: &ProbeSeries) -> Value {
    json!({
        "t": series.t_values,
        "min_lengths": series.min_lengths,
        "lower_bounds": series.lower_bounds,
        "i_min": series.i_min,
        "i_min_exhaustive": series.i_min_exhaustive,
        "certified": series.certified,
        "classification": series.classification.as_str(),
        "note": series.note,
    })
}

fn cmd_pinch_probe(a: &PinchProbeArgs) -> Result<Outcome> {
    if a.format != "csv" && a.format != "json" {
        return Err(Error::Parse(format!(
            "--format `{}`: expected `csv` or `json`",
            a.format
        )));
    }
    let (series, input, header) = if let Some(name) = &a.preset {
        if a.multicurve.is_some() {
            return Err(Error::Parse("--preset replaces --multicurve".into()));
        }
        let p = presets::by_name(name)?;
        let series = p.run_probe()?;
        let input = json!({
            "preset": p.name,
            "surface": p.surface().to_string(),
            "multicurve": p.family[p.probe_member],
            "t_steps": p.t_steps,
            "depth": p.depth,
            "radius": p.radius,
            "divergence_factor": p.divergence_factor,
        });
        let header = format!(
            "# curvelab {VERSION} pinch-probe preset={} surface={} multicurve={}\n",
            p.name,
            p.surface(),
            p.family[p.probe_member]
        );
        (series, input, header)
    } else {
        let Some(spec) = &a.multicurve else {
            return Err(Error::Parse(
                "pinch-probe needs --multicurve (or --preset)".into(),
            ));
        };
        let (sig, point) = resolve_point(&a.point)?;
        let m = parse_multicurve(sig, spec)?;
        if a.t_steps < 4 {
            return Err(Error::Parse(format!(
                "--t-steps {}: need at least 4 pinch steps",
                a.t_steps
            )));
        }
        let cfg = ProbeConfig {
            t_grid: t_grid(a.t_steps),
            depth: a.depth,
            radius: a.radius,
            divergence_factor: a.divergence_factor,
        };
        let series = boundedness_probe(&point, &m, &cfg)?;
        let mut input = point_input_json(sig, &point);
        input["multicurve"] = json!(spec.trim());
        input["t_steps"] = json!(a.t_steps);
        input["depth"] = json!(a.depth);
        input["radius"] = json!(a.radius);
        input["divergence_factor"] = json!(a.divergence_factor);
        let header = format!(
            "# curvelab {VERSION} pinch-probe surface={} multicurve={} t_steps={} depth={} radius={}\n",
            sig,
            spec.trim(),
            a.t_steps,
            a.depth,
            a.radius
        );
        (series, input, header)
    };
    let exit = match series.classification {
        ProbeClassification::Undetermined => 3,
        _ => 0,
    };
    if a.format == "json" {
        let result = probe_series_json(&series);
        Ok(Outcome::json(envelope("pinch-probe", 0, input, result), exit))
    } else {
        Ok(Outcome::csv(format!("{header}{}", series.to_csv()), exit))
    }
}

fn cmd_bers(a: &BudgetedPointArgs) -> Result<Outcome> {
    let (sig, point) = resolve_point(&a.point)?;
    let h = holonomy_of(&point)?;
    let found = bers_greedy(&h, a.budget, a.radius)?;
    let mut input = point_input_json(sig, &point);
    input["budget"] = json!(a.budget);
    input["radius"] = json!(a.radius);
    let result = json!({
        "type_tag": found.decomposition.type_tag,
        "curves": found.decomposition.curve_names(),
        "cuff_lengths": found.cuff_lengths,
        "max_cuff": found.max_cuff,
        "total_cuff": found.total_cuff,
    });
    Ok(Outcome::json(envelope("bers", 0, input, result), 0))
}

fn cmd_homology_basis(a: &BudgetedPointArgs) -> Result<Outcome> {
    let (sig, point) = resolve_point(&a.point)?;
    let h = holonomy_of(&point)?;
    let basis = homology_basis_search(&h, a.budget, a.radius)?;
    let mut input = point_input_json(sig, &point);
    input["budget"] = json!(a.budget);
    input["radius"] = json!(a.radius);
    let result = json!({
        "curves": basis.curves.iter().map(format_word).collect::<Vec<_>>(),
        "lengths": basis.lengths,
        "max_length": basis.max_length,
        "classes": basis.classes,
    });
    Ok(Outcome::json(envelope("homology-basis", 0, input, result), 0))
}

fn sample_input_json(a: &SampleArgs) -> Value {
    json!({
        "surface": a.surface.trim(),
        "epsilon": a.epsilon,
        "count": a.count,
        "seed": a.seed,
        "budget": a.budget,
    })
}

fn cmd_thick_sample(a: &SampleArgs) -> Result<Outcome> {
    if a.format != "csv" && a.format != "json" {
        return Err(Error::Parse(format!(
            "--format `{}`: expected `csv` or `json`",
            a.format
        )));
    }
    let sig = parse_surface(&a.surface)?;
    let sample = thick_sample(sig, a.epsilon, a.count, a.seed, a.budget)?;
    if a.format == "json" {
        let points: Vec<Value> = sample
            .points
            .iter()
            .map(|p| json!({ "lengths": p.lengths, "twists": p.twists }))
            .collect();
        let result = json!({
            "count": sample.points.len(),
            "rejected": sample.rejected,
            "pants_type": FNPoint::reference(sig).decomposition.type_tag,
            "points": points,
        });
        Ok(Outcome::json(
            envelope("thick-sample", a.seed, sample_input_json(a), result),
            0,
        ))
    } else {
        let names = FNPoint::reference(sig).decomposition.curve_names();
        let mut out = format!(
            "# curvelab {VERSION} thick-sample surface={} epsilon={} count={} seed={} budget={}\n",
            a.surface.trim(),
            a.epsilon,
            a.count,
            a.seed,
            a.budget
        );
        out.push_str("index");
        for n in &names {
            out.push_str(&format!(",len_{n}"));
        }
        for n in &names {
            out.push_str(&format!(",twist_{n}"));
        }
        out.push('\n');
        for (i, p) in sample.points.iter().enumerate() {
            out.push_str(&i.to_string());
            for l in &p.lengths {
                out.push_str(&format!(",{l}"));
            }
            for t in &p.twists {
                out.push_str(&format!(",{t}"));
            }
            out.push('\n');
        }
        Ok(Outcome::csv(out, 0))
    }
}

fn cmd_empirical_k(a: &EmpiricalKArgs) -> Result<Outcome> {
    let sig = parse_surface(&a.sample.surface)?;
    let m = parse_multicurve(sig, &a.multicurve)?;
    let sample = thick_sample(sig, a.sample.epsilon, a.sample.count, a.sample.seed, a.sample.budget)?;
    let k = empirical_k(&sample, &m, a.depth)?;
    let mut input = sample_input_json(&a.sample);
    input["multicurve"] = json!(a.multicurve.trim());
    input["depth"] = json!(a.depth);
    let result = json!({
        "value": k.value,
        "argmax": k.argmax,
        "per_point": k.per_point,
        "rejected": sample.rejected,
    });
    Ok(Outcome::json(
        envelope("empirical-k", a.sample.seed, input, result),
        0,
    ))
}

// ---------------------------------------------------------------------
// Selftest
// ---------------------------------------------------------------------

struct Check {
    name: &'static str,
    detail: Option<String>,
}

impl Check {
    fn ok(name: &'static str) -> Self {
        Check { name, detail: None }
    }

    fn fail(name: &'static str, why: String) -> Self {
        Check {
            name,
            detail: Some(why),
        }
    }
}

fn selftest_checks() -> Vec<Check> {
    let mut out = Vec::new();

    // Closed-form anchors.
    out.push(run_check("anchor-figure-eight", || {
        let p = FNPoint::reference(SurfaceSig::new(0, 3)?);
        let h = build_holonomy(&p)?;
        let w = crate::topology::word::parse_word(p.sig(), "aB")?;
        let got = curve_length(&h, &w)?;
        let want = 2.0 * 3.0f64.acosh();
        expect_close("figure-eight length", got, want, 1e-8)
    }));
    out.push(run_check("anchor-modular-systole", || {
        let p = FNPoint::reference(SurfaceSig::new(1, 1)?);
        let h = build_holonomy(&p)?;
        let want = 2.0 * 1.5f64.acosh();
        for s in ["a", "b", "ab"] {
            let w = crate::topology::word::parse_word(p.sig(), s)?;
            expect_close(s, curve_length(&h, &w)?, want, 1e-8)?;
        }
        Ok(())
    }));

    // Trace identity on seeded random word pairs.
    out.push(run_check("trace-identity", || {
        use rand::{Rng, SeedableRng};
        let p = FNPoint::reference(SurfaceSig::new(1, 1)?);
        let h = build_holonomy(&p)?;
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(0);
        for _ in 0..500 {
            let mk = |rng: &mut rand_chacha::ChaCha20Rng| {
                let len = rng.gen_range(1..=6);
                let w: Vec<i8> = (0..len)
                    .map(|_| {
                        let x = rng.gen_range(0..4);
                        [1i8, -1, 2, -2][x]
                    })
                    .collect();
                h.matrix_of(&crate::topology::word::Word(w))
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let lhs = a.mul(&b.inverse()).trace();
            let rhs = a.trace() * b.trace() - a.mul(&b).trace();
            if (lhs - rhs).abs() > 1e-9 * (1.0 + rhs.abs()) {
                return Err(Error::Parse(format!(
                    "trace identity off by {}",
                    (lhs - rhs).abs()
                )));
            }
        }
        Ok(())
    }));

    // Collar width against its alternate closed form.
    out.push(run_check("collar-identity", || {
        for k in 1..=60 {
            let l = 0.1 * k as f64;
            let got = collar_width(l);
            let want = (1.0 / (l / 2.0).tanh()).acosh();
            expect_close("collar width", got, want, 1e-12)?;
        }
        Ok(())
    }));

    // Certified counts against slope arithmetic.
    out.push(run_check("slope-oracle", || {
        let p = FNPoint::reference(SurfaceSig::new(1, 1)?);
        let h = build_holonomy(&p)?;
        let engine = Intersector::new(&h);
        let sig = p.sig();
        let slopes = [(1i64, 0i64), (0, 1), (1, 1), (1, -1), (2, 1), (3, 2)];
        for (i, &(p1, q1)) in slopes.iter().enumerate() {
            for &(p2, q2) in &slopes[i + 1..] {
                let w1 = parse_multicurve_spec(sig, &format!("{p1}/{q1}"))?.components[0].clone();
                let w2 = parse_multicurve_spec(sig, &format!("{p2}/{q2}"))?.components[0].clone();
                let want = (p1 * q2 - q1 * p2).unsigned_abs() as usize;
                let got = engine.pair_count(&w1, &w2, 6, RadiusPolicy::Adaptive)?;
                if !got.certified || got.count != want {
                    return Err(Error::Parse(format!(
                        "count {p1}/{q1} vs {p2}/{q2}: got {} (certified {}), want {want}",
                        got.count, got.certified
                    )));
                }
            }
        }
        Ok(())
    }));

    // Probe on the bounded preset: certified BOUNDED series.
    out.push(run_check("probe-bounded-preset", || {
        let p = presets::by_name("bounded-slope")?;
        let series = p.run_probe()?;
        if series.classification != ProbeClassification::Bounded {
            return Err(Error::Parse(format!(
                "bounded-slope probe classified {}",
                series.classification.as_str()
            )));
        }
        Ok(())
    }));

    // Rendering determinism.
    out.push(run_check("render-determinism", || {
        let args = LengthArgs {
            point: PointArgs {
                surface: Some("1,1".into()),
                pants_type: None,
                lengths: None,
                twists: None,
            },
            word: Some("ab".into()),
            multicurve: None,
        };
        let a = render_for_test(&cmd_length(&args)?);
        let b = render_for_test(&cmd_length(&args)?);
        if a != b {
            return Err(Error::Parse("length output not byte-stable".into()));
        }
        Ok(())
    }));

    // The shipped schema is valid JSON and names every subcommand.
    out.push(run_check("schema-well-formed", || {
        let schema: Value = serde_json::from_str(OUTPUT_SCHEMA)
            .map_err(|e| Error::Parse(format!("schema file does not parse: {e}")))?;
        let cmds = schema["properties"]["command"]["enum"]
            .as_array()
            .ok_or_else(|| Error::Parse("schema lacks a command enum".into()))?;
        for need in [
            "length",
            "systole",
            "intersect",
            "orbit-min",
            "criterion",
            "pinch-probe",
            "bers",
            "homology-basis",
            "thick-sample",
            "empirical-k",
            "selftest",
        ] {
            if !cmds.iter().any(|c| c == need) {
                return Err(Error::Parse(format!("schema misses command `{need}`")));
            }
        }
        Ok(())
    }));

    out
}

fn run_check(name: &'static str, f: impl FnOnce() -> Result<()>) -> Check {
    match f() {
        Ok(()) => Check::ok(name),
        Err(e) => Check::fail(name, e.to_string()),
    }
}

fn expect_close(what: &str, got: f64, want: f64, tol: f64) -> Result<()> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(Error::Parse(format!("{what}: got {got}, want {want}")))
    }
}

fn render_for_test(out: &Outcome) -> String {
    match &out.rendered {
        Rendered::Json(v) => serde_json::to_string_pretty(v).expect("serializable"),
        Rendered::Csv(s) => s.clone(),
    }
}

fn cmd_selftest() -> Result<Outcome> {
    let checks = selftest_checks();
    let failed = checks.iter().filter(|c| c.detail.is_some()).count();
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| match &c.detail {
            None => json!({ "name": c.name, "ok": true }),
            Some(d) => json!({ "name": c.name, "ok": false, "detail": d }),
        })
        .collect();
    let result = json!({
        "checks": rows,
        "passed": checks.len() - failed,
        "failed": failed,
    });
    let exit = if failed == 0 { 0 } else { 1 };
    Ok(Outcome::json(
        envelope("selftest", 0, json!({}), result),
        exit,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run(std::iter::once("curvelab").chain(args.iter().copied()))
    }

    #[test]
    fn surface_parsing_names_the_token() {
        let err = parse_surface("1;1").unwrap_err();
        assert!(err.to_string().contains("1;1"));
    }

    #[test]
    fn unknown_surface_is_an_input_error() {
        assert_eq!(run_args(&["length", "--surface", "9,9", "--word", "ab"]), 2);
    }

    #[test]
    fn length_on_the_reference_point_succeeds() {
        assert_eq!(run_args(&["length", "--surface", "1,1", "--word", "ab"]), 0);
    }

    #[test]
    fn slope_tokens_rejected_off_the_punctured_torus() {
        assert_eq!(
            run_args(&["length", "--surface", "0,3", "--word", "1/0"]),
            2
        );
    }

    #[test]
    fn criterion_takes_single_multicurve_or_family() {
        assert_eq!(
            run_args(&[
                "criterion",
                "--surface",
                "1,1",
                "--multicurve",
                "1/0,0/1",
                "--depth",
                "4"
            ]),
            0
        );
    }

    #[test]
    fn thread_cap_env_is_validated() {
        // Malformed values surface as input errors on any command.
        std::env::set_var("CURVELAB_THREADS", "many");
        let code = run_args(&["length", "--surface", "1,1", "--word", "a"]);
        std::env::remove_var("CURVELAB_THREADS");
        assert_eq!(code, 2);
    }
}
