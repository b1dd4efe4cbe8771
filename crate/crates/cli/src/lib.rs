//! The `lbrep` command line. [`dispatch`] parses arguments, runs one
//! computation and returns the report text together with an exit code:
//! 0 when every asserted check passed, 1 when one failed, 2 on a usage
//! error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lbrep::affine::{
    agl_order, allowed_determinants, determinant_profile, drinfeld_r_check, generate_image, rho_generators,
    surjectivity_predicate, AffineParams, DEFAULT_CAP,
};
use lbrep::analysis::{
    bmw_check, branching_graph, end_dim, hom_dim, is_irreducible, localization_table, localization_triangle_check,
    semisimplicity_check, ActionModule,
};
use lbrep::bvs::{affine_bvs, extend_to_loop, tau_q, tau_x, AnyBvs, Side};
use lbrep::io::{emit_dot, seed_from_env, to_pretty, with_manifest, RunManifest};
use lbrep::presentations::{check_relations, relations_for, Convention, Report, Variant};
use lbrep::scalars::{random_primes, Field, Rational, ZmInt};
use lbrep::tensor::{charge_blocks, harmonic_module, HarmonicLabel, TauRep};
use lbrep::Error;

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "lbrep", version, about = "Exact checks on loop braid group representations")]
struct Cli {
    /// Arithmetic backend, where the command supports a choice.
    #[arg(long, value_enum, global = true)]
    ring: Option<RingArg>,
    /// Prime for `--ring zp` (default: drawn from the seed).
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Record wall time in the manifest (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Rational,
    Zp,
    Laurent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RepArg {
    Affine,
    Tau,
    Bvs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Standard,
    Transposed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a relation family on a representation.
    CheckRelations {
        #[arg(long, value_enum)]
        rep: RepArg,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
        #[arg(long = "N")]
        colours: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// JSON file describing a braided vector space.
        #[arg(long)]
        bvs: Option<PathBuf>,
        #[arg(long, default_value = "right")]
        side: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "LB")]
        variant: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::Standard)]
        convention: ConventionArg,
    },
    /// Check the Yang-Baxter equation for the affine solution or a JSON one.
    Ybe {
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
        #[arg(long)]
        bvs: Option<PathBuf>,
    },
    /// Order of the image of the affine representation by closure.
    AffineImage {
        #[arg(long)]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// List every element as a flat row-major array of residues.
        #[arg(long)]
        emit_elements: bool,
    },
    /// Young and harmonic modules of the colour-word representation.
    Decompose {
        #[arg(long = "N")]
        colours: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        x: String,
        /// Include sparse bases.
        #[arg(long)]
        basis: bool,
    },
    /// Branching graph of harmonic modules up to `nmax` strands.
    Branch {
        #[arg(long = "N")]
        colours: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        x: String,
        /// Print DOT instead of JSON, or write it to FILE.
        #[arg(long, num_args = 0..=1, value_name = "FILE")]
        dot: Option<Option<PathBuf>>,
    },
    /// Endomorphism and pairwise Hom dimensions of all harmonic modules.
    Irreducible {
        #[arg(long = "N")]
        colours: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        x: String,
    },
    /// BMW-type relations for the q-form on three strands.
    BmwCheck {
        #[arg(long = "N")]
        colours: usize,
    },
    /// Radical and centre of the image algebra.
    Semisimple {
        #[arg(long = "N")]
        colours: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        x: String,
        /// Also compare centres across the localization by `f_N / N!`.
        #[arg(long)]
        triangle: bool,
    },
    /// Localize every harmonic module by `f_N`.
    Localize {
        #[arg(long = "N")]
        colours: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        x: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckRelations { .. } => "check-relations",
            Command::Ybe { .. } => "ybe",
            Command::AffineImage { .. } => "affine-image",
            Command::Decompose { .. } => "decompose",
            Command::Branch { .. } => "branch",
            Command::Irreducible { .. } => "irreducible",
            Command::BmwCheck { .. } => "bmw-check",
            Command::Semisimple { .. } => "semisimple",
            Command::Localize { .. } => "localize",
        }
    }
}

pub const COMMANDS: [&str; 9] = [
    "check-relations",
    "ybe",
    "affine-image",
    "decompose",
    "branch",
    "irreducible",
    "bmw-check",
    "semisimple",
    "localize",
];

/// The JSON schema of a command's report.
pub fn schema(command: &str) -> Option<&'static str> {
    Some(match command {
        "check-relations" => include_str!("../schemas/check-relations.schema.json"),
        "ybe" => include_str!("../schemas/ybe.schema.json"),
        "affine-image" => include_str!("../schemas/affine-image.schema.json"),
        "decompose" => include_str!("../schemas/decompose.schema.json"),
        "branch" => include_str!("../schemas/branch.schema.json"),
        "irreducible" => include_str!("../schemas/irreducible.schema.json"),
        "bmw-check" => include_str!("../schemas/bmw-check.schema.json"),
        "semisimple" => include_str!("../schemas/semisimple.schema.json"),
        "localize" => include_str!("../schemas/localize.schema.json"),
        _ => return None,
    })
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Parse(_) | Error::BadPrime(_) | Error::NonFieldModulus { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

/// A finished command: its report body, whether every asserted check
/// passed, and optional DOT text to print instead of JSON.
struct Finished {
    body: Value,
    ok: bool,
    dot: Option<String>,
}

fn body<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types always serialize")
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_x(x: &str) -> CmdResult<Rational> {
    Ok(x.parse::<Rational>()?)
}

/// Run the command line `argv` (including the program name).
pub fn dispatch<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                let hint = args.get(1).and_then(|c| schema(c)).map(|s| format!("\nreport schema:\n{s}")).unwrap_or_default();
                Outcome { code, stdout: String::new(), stderr: format!("{text}{hint}") }
            };
        }
    };
    let name = cli.command.name();
    match run(&cli) {
        Ok((manifest, finished)) => {
            let stdout = match finished.dot {
                Some(dot) => format!("{dot}\n"),
                None => match with_manifest(&manifest, &finished.body) {
                    Ok(v) => to_pretty(&v),
                    Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
                },
            };
            Outcome { code: if finished.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n\nreport schema for {name}:\n{}", schema(name).unwrap_or("")),
        },
        Err(Failure::Internal(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn run(cli: &Cli) -> CmdResult<(RunManifest, Finished)> {
    let seed = seed_from_env().map_err(|e| usage(e.to_string()))?;
    let start = Instant::now();
    let (mut manifest, finished) = match &cli.command {
        Command::CheckRelations { rep, m, t, colours, x, bvs, side, n, variant, convention } => {
            check_relations_cmd(cli, seed, *rep, *m, *t, *colours, x.as_deref(), bvs.as_ref(), side, *n, variant, *convention)?
        }
        Command::Ybe { m, t, bvs } => ybe_cmd(seed, *m, *t, bvs.as_ref())?,
        Command::AffineImage { m, t, n, cap, emit_elements } => affine_image_cmd(seed, *m, *t, *n, *cap, *emit_elements)?,
        Command::Decompose { colours, n, x, basis } => decompose_cmd(cli, seed, *colours, *n, x, *basis)?,
        Command::Branch { colours, nmax, x, dot } => branch_cmd(seed, *colours, *nmax, x, dot.as_ref())?,
        Command::Irreducible { colours, n, x } => irreducible_cmd(cli, seed, *colours, *n, x)?,
        Command::BmwCheck { colours } => {
            let report = bmw_check(*colours)?;
            let manifest = RunManifest::new("bmw-check", "laurent", seed).param("N", *colours);
            (manifest, Finished { ok: report.ok, body: body(&report), dot: None })
        }
        Command::Semisimple { colours, n, x, triangle } => semisimple_cmd(cli, seed, *colours, *n, x, *triangle)?,
        Command::Localize { colours, n, x } => localize_cmd(cli, seed, *colours, *n, x)?,
    };
    if cli.timing {
        manifest.wall_time_us = Some(start.elapsed().as_micros() as u64);
    }
    Ok((manifest, finished))
}

fn report_finished(report: Report) -> Finished {
    Finished { ok: report.ok, body: json!({ "report": body(&report) }), dot: None }
}

fn required<T: Copy>(v: Option<T>, flag: &str) -> CmdResult<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required here")))
}

#[allow(clippy::too_many_arguments)]
fn check_relations_cmd(
    cli: &Cli,
    seed: u64,
    rep: RepArg,
    m: Option<u64>,
    t: Option<i64>,
    colours: Option<usize>,
    x: Option<&str>,
    bvs_path: Option<&PathBuf>,
    side: &str,
    n: usize,
    variant: &str,
    convention: ConventionArg,
) -> CmdResult<(RunManifest, Finished)> {
    let variant: Variant = variant.parse()?;
    let conv = match convention {
        ConventionArg::Standard => Convention::Standard,
        ConventionArg::Transposed => Convention::Transposed,
    };
    let base = |ring: &str| {
        RunManifest::new("check-relations", ring, seed)
            .param("n", n)
            .param("variant", variant.to_string())
            .param("convention", format!("{convention:?}").to_lowercase())
    };
    let rels = relations_for(n, variant)?;
    match rep {
        RepArg::Affine => {
            let (m, t) = (required(m, "m")?, required(t, "t")?);
            let p = AffineParams::new(m, t, n)?;
            let images = rho_generators(&p)?.image_set()?;
            let report = check_relations(&images, &rels, conv)?;
            let manifest = base("zm").param("rep", "affine").param("m", m).param("t", t);
            Ok((manifest, report_finished(report)))
        }
        RepArg::Tau => {
            let colours = required(colours, "N")?;
            let manifest = base(if cli.ring == Some(RingArg::Laurent) { "laurent" } else { "rational" })
                .param("rep", "tau")
                .param("N", colours);
            let report = if cli.ring == Some(RingArg::Laurent) {
                tau_q(colours)?.check(n, variant, conv)?
            } else {
                let x = parse_x(x.ok_or_else(|| usage("--x is required for --rep tau"))?)?;
                tau_x(colours, &x)?.check(n, variant, conv)?
            };
            let manifest = match x {
                Some(x) if cli.ring != Some(RingArg::Laurent) => manifest.param("x", x),
                _ => manifest,
            };
            Ok((manifest, report_finished(report)))
        }
        RepArg::Bvs => {
            let path = bvs_path.ok_or_else(|| usage("--bvs FILE is required for --rep bvs"))?;
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let side: Side = side.parse()?;
            let any = AnyBvs::from_json_str(&text)?;
            let (ring, report) = match any {
                AnyBvs::Rational(b) => ("rational", extend_to_loop(b, side)?.check(n, variant, conv)?),
                AnyBvs::Laurent(b) => ("laurent", extend_to_loop(b, side)?.check(n, variant, conv)?),
                AnyBvs::Zm(b) => ("zm", extend_to_loop(b, side)?.check(n, variant, conv)?),
            };
            let manifest = base(ring).param("rep", "bvs").param("bvs", path.display().to_string()).param("side", format!("{side:?}").to_lowercase());
            Ok((manifest, report_finished(report)))
        }
    }
}

fn ybe_cmd(seed: u64, m: Option<u64>, t: Option<i64>, bvs_path: Option<&PathBuf>) -> CmdResult<(RunManifest, Finished)> {
    if let Some(path) = bvs_path {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let any = AnyBvs::from_json_str(&text)?;
        let ok = any.check_yang_baxter()?;
        let ring = match any {
            AnyBvs::Rational(_) => "rational",
            AnyBvs::Laurent(_) => "laurent",
            AnyBvs::Zm(_) => "zm",
        };
        let manifest = RunManifest::new("ybe", ring, seed).param("bvs", path.display().to_string());
        return Ok((manifest, Finished { ok, body: json!({ "d": any.d(), "yang_baxter": ok }), dot: None }));
    }
    let (m, t) = (required(m, "m")?, required(t, "t")?);
    let p = AffineParams::new(m, t, 2)?;
    let b = affine_bvs(m, p.t)?;
    let ok = lbrep::bvs::check_yang_baxter(&b)?;
    let mut out = json!({ "d": b.d(), "yang_baxter": ok });
    if let Ok(check) = drinfeld_r_check(m, t) {
        out["drinfeld"] = body(&check);
    }
    let manifest = RunManifest::new("ybe", "rational", seed).param("m", m).param("t", t);
    Ok((manifest, Finished { ok, body: out, dot: None }))
}

fn affine_image_cmd(
    seed: u64,
    m: u64,
    t: i64,
    n: usize,
    cap: usize,
    emit_elements: bool,
) -> CmdResult<(RunManifest, Finished)> {
    let p = AffineParams::new(m, t, n)?;
    let closure = generate_image(&p, cap)?;
    let expected = agl_order(m, (n - 1) as u32)?;
    let mats: Vec<_> = closure.element_matrices().collect();
    let dets: Vec<u64> = determinant_profile(&mats)?.iter().map(ZmInt::residue).collect();
    let allowed: Vec<u64> = allowed_determinants(m, t).iter().map(ZmInt::residue).collect();
    let within = dets.iter().all(|d| allowed.contains(d));
    let predicate = surjectivity_predicate(m, t)?;
    let mut out = json!({
        "m": m,
        "t": p.t,
        "n": n,
        "order": closure.order,
        "expected_order": u64::try_from(expected).map(Value::from).unwrap_or_else(|_| Value::from(expected.to_string())),
        "complete": closure.complete,
        "surjective": closure.complete && closure.order as u128 == expected,
        "determinants": dets,
        "allowed_determinants": allowed,
        "surjective_predicted": predicate.units_ok && predicate.generates,
        "surjectivity_predicate": body(&predicate),
    });
    if emit_elements {
        out["elements"] = json!(closure.elements);
    }
    let manifest = RunManifest::new("affine-image", "zm", seed).param("m", m).param("t", t).param("n", n).param("cap", cap);
    Ok((manifest, Finished { ok: closure.complete && within, body: out, dot: None }))
}

/// Field choice for the colour-word commands.
enum FieldChoice {
    Rational,
    Zp(u64),
}

fn field_choice(cli: &Cli, seed: u64) -> CmdResult<FieldChoice> {
    match cli.ring {
        None | Some(RingArg::Rational) => Ok(FieldChoice::Rational),
        Some(RingArg::Zp) => Ok(FieldChoice::Zp(cli.prime.unwrap_or_else(|| random_primes(1, seed)[0]))),
        Some(RingArg::Laurent) => Err(usage("this command needs a field: use --ring rational or --ring zp")),
    }
}

fn ring_name(choice: &FieldChoice) -> String {
    match choice {
        FieldChoice::Rational => "rational".into(),
        FieldChoice::Zp(p) => format!("zp:{p}"),
    }
}

fn label_json(l: &HarmonicLabel) -> Value {
    json!({ "label": l.to_string(), "lambda": l.lambda, "mu": l.mu })
}

fn decompose_in<F: Field>(rep: &TauRep<F>, with_basis: bool) -> CmdResult<(Value, bool)> {
    let dec = charge_blocks(rep.colours, rep.n)?;
    let mut modules = Vec::new();
    let mut total: u128 = 0;
    for (lambda, &m_lambda) in &dec.multiplicities {
        for label in HarmonicLabel::all_for(lambda) {
            let spec = harmonic_module(rep, &label)?;
            total += m_lambda as u128 * label.multiplicity() as u128 * spec.dim() as u128;
            let mut entry = label_json(&label);
            entry["dim"] = json!(spec.dim());
            entry["copies"] = json!(label.multiplicity());
            entry["block_multiplicity"] = json!(m_lambda);
            if with_basis {
                let basis: Vec<Value> = spec
                    .sparse_basis()
                    .iter()
                    .map(|v| Value::Object(v.iter().map(|(w, c)| (w.to_string(), c.to_json())).collect()))
                    .collect();
                entry["basis"] = Value::Array(basis);
            }
            modules.push(entry);
        }
    }
    let expected = (rep.colours as u128).pow(rep.n as u32);
    let out = json!({ "modules": modules, "total_dim": total.to_string(), "expected_total_dim": expected.to_string() });
    Ok((out, total == expected))
}

fn decompose_cmd(cli: &Cli, seed: u64, colours: usize, n: usize, x: &str, with_basis: bool) -> CmdResult<(RunManifest, Finished)> {
    let xr = parse_x(x)?;
    let choice = field_choice(cli, seed)?;
    let (out, ok) = match choice {
        FieldChoice::Rational => decompose_in(&TauRep::x_form(colours, n, &xr)?, with_basis)?,
        FieldChoice::Zp(p) => decompose_in(&TauRep::<ZmInt>::in_field(colours, n, &xr, &p)?, with_basis)?,
    };
    let manifest = RunManifest::new("decompose", &ring_name(&choice), seed)
        .param("N", colours)
        .param("n", n)
        .param("x", x)
        .param("basis", with_basis);
    Ok((manifest, Finished { ok, body: out, dot: None }))
}

fn branch_cmd(seed: u64, colours: usize, nmax: usize, x: &str, dot: Option<&Option<PathBuf>>) -> CmdResult<(RunManifest, Finished)> {
    if !(2..=3).contains(&colours) {
        return Err(usage("branching graphs are drawn for N = 2 or 3"));
    }
    let xr = parse_x(x)?;
    let graph = branching_graph(colours, nmax, &xr, seed)?;
    let text = emit_dot(&graph)?;
    let manifest = RunManifest::new("branch", "rational", seed).param("N", colours).param("nmax", nmax).param("x", x);
    let nodes: Vec<Value> = graph
        .nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let mut v = label_json(&node.label);
            v["id"] = json!(i);
            v["n"] = json!(node.n);
            v["dim"] = json!(node.dim);
            v["pos"] = json!(node.coords);
            v
        })
        .collect();
    let out = json!({ "nodes": nodes, "edges": body(&graph.edges) });
    match dot {
        Some(None) => Ok((manifest, Finished { ok: true, body: out, dot: Some(text) })),
        Some(Some(path)) => {
            std::fs::write(path, format!("{text}\n")).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok((manifest.param("dot", path.display().to_string()), Finished { ok: true, body: out, dot: None }))
        }
        None => Ok((manifest, Finished { ok: true, body: out, dot: None })),
    }
}

#[derive(Serialize, PartialEq)]
struct ModuleVerdict {
    label: String,
    dim: usize,
    end_dim: usize,
    irreducible: bool,
    method: lbrep::analysis::IrreducibilityMethod,
}

fn irreducible_in<F: Field>(rep: &TauRep<F>, seed: u64) -> CmdResult<(Vec<ModuleVerdict>, Vec<Value>)> {
    let labels = HarmonicLabel::all_at(rep.colours, rep.n);
    let modules: Vec<ActionModule<F>> =
        labels.iter().map(|l| Ok(ActionModule::full(&harmonic_module(rep, l)?)?)).collect::<CmdResult<_>>()?;
    let mut verdicts = Vec::new();
    for (l, m) in labels.iter().zip(&modules) {
        let v = is_irreducible(m, seed)?;
        verdicts.push(ModuleVerdict {
            label: l.to_string(),
            dim: m.dim,
            end_dim: end_dim(m)?,
            irreducible: v.irreducible,
            method: v.method,
        });
    }
    let mut nonzero = Vec::new();
    for i in 0..modules.len() {
        for j in 0..modules.len() {
            if i != j {
                let h = hom_dim(&modules[i], &modules[j])?;
                if h != 0 {
                    nonzero.push(json!({ "from": labels[i].to_string(), "to": labels[j].to_string(), "hom_dim": h }));
                }
            }
        }
    }
    Ok((verdicts, nonzero))
}

fn irreducible_cmd(cli: &Cli, seed: u64, colours: usize, n: usize, x: &str) -> CmdResult<(RunManifest, Finished)> {
    let xr = parse_x(x)?;
    let choice = field_choice(cli, seed)?;
    let (verdicts, nonzero, ring) = match choice {
        FieldChoice::Rational => {
            let (v, h) = irreducible_in(&TauRep::x_form(colours, n, &xr)?, seed)?;
            (v, h, "rational".to_string())
        }
        FieldChoice::Zp(_) => {
            // a modular verdict counts only when two primes agree
            let primes = match cli.prime {
                Some(p) => vec![p, random_primes(1, seed)[0]],
                None => random_primes(2, seed),
            };
            let a = irreducible_in(&TauRep::<ZmInt>::in_field(colours, n, &xr, &primes[0])?, seed)?;
            let b = irreducible_in(&TauRep::<ZmInt>::in_field(colours, n, &xr, &primes[1])?, seed)?;
            if a.0 != b.0 || a.1 != b.1 {
                return Err(Failure::Internal(format!("verdicts differ modulo {} and {}", primes[0], primes[1])));
            }
            (a.0, a.1, format!("zp:{},{}", primes[0], primes[1]))
        }
    };
    let ok = verdicts.iter().all(|v| v.irreducible && v.end_dim == 1) && nonzero.is_empty();
    let out = json!({ "modules": body(&verdicts), "nonzero_homs": nonzero, "pairwise_non_isomorphic": nonzero.is_empty() });
    let manifest = RunManifest::new("irreducible", &ring, seed).param("N", colours).param("n", n).param("x", x);
    Ok((manifest, Finished { ok, body: out, dot: None }))
}

fn semisimple_cmd(cli: &Cli, seed: u64, colours: usize, n: usize, x: &str, triangle: bool) -> CmdResult<(RunManifest, Finished)> {
    if matches!(cli.ring, Some(RingArg::Zp | RingArg::Laurent)) {
        return Err(usage("the trace-form test needs characteristic zero: use --ring rational"));
    }
    let xr = parse_x(x)?;
    let report = semisimplicity_check(colours, n, &xr)?;
    let mut ok = report.semisimple;
    let mut out = body(&report);
    if triangle {
        let t = localization_triangle_check(colours, n, &xr)?;
        ok &= t.holds;
        out["triangle"] = body(&t);
    }
    let manifest = RunManifest::new("semisimple", "rational", seed)
        .param("N", colours)
        .param("n", n)
        .param("x", x)
        .param("triangle", triangle);
    Ok((manifest, Finished { ok, body: out, dot: None }))
}

fn localize_cmd(cli: &Cli, seed: u64, colours: usize, n: usize, x: &str) -> CmdResult<(RunManifest, Finished)> {
    let xr = parse_x(x)?;
    let choice = field_choice(cli, seed)?;
    let rows = match choice {
        FieldChoice::Rational => localization_table(&TauRep::x_form(colours, n, &xr)?)?,
        FieldChoice::Zp(p) => localization_table(&TauRep::<ZmInt>::in_field(colours, n, &xr, &p)?)?,
    };
    let ok = rows.iter().all(|r| r.matches);
    let entries: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut v = label_json(&r.label);
            v["dim"] = json!(r.dim);
            v["e_null"] = json!(r.e_null);
            v["localized_dim"] = json!(r.localized_dim);
            v["predicted"] = r.predicted.as_ref().map_or(Value::Null, |p| Value::from(p.to_string()));
            v["matches"] = json!(r.matches);
            v
        })
        .collect();
    let manifest = RunManifest::new("localize", &ring_name(&choice), seed).param("N", colours).param("n", n).param("x", x);
    Ok((manifest, Finished { ok, body: json!({ "modules": entries }), dot: None }))
}
