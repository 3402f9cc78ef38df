//! Command-line frontend: normal forms, inversion sets, projections,
//! verification sweeps, Hasse diagrams and oracle checks.
//!
//! Exit codes: 0 on success, 1 when a verification or oracle check reports
//! failures, 2 for usage, parse and configuration errors.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use coxkit::{
    CoxeterSystem, EnumeratedGroup, GroupElement, GroupSpec, NamedType, OracleModel, StatementId,
    SweepOptions, SweepScope, SweepSummary, Sweeper, DEFAULT_LENGTH_CAP,
};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "coxkit", version, about = "Coxeter system computations", max_term_width = 100)]
struct Cli {
    #[command(flatten)]
    group: GroupArgs,

    /// Length cap for enumeration and for accepted element lengths.
    /// Groups with an infinite bond require an explicit value for
    /// enumeration commands.
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Emit a structured JSON mirror of the command output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct GroupArgs {
    /// Catalog group type, e.g. A3, B4, D5, I2(7), I2(inf), H3, H4, F4, E6.
    #[arg(long = "type", global = true, value_name = "NAME")]
    type_name: Option<String>,

    /// Path to a group-spec file (TOML with `type` or `rank`/`bonds`).
    #[arg(long, global = true, value_name = "PATH")]
    group_file: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical normal form and length of a word.
    Nf { word: String },
    /// List the left (or right) inversion set of an element.
    Inversions {
        word: String,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
    },
    /// Split an element into its parabolic quotient and parabolic parts.
    Project {
        word: String,
        /// Mask syntax: "s0,s1", complement "~s3", or "" for the empty mask.
        #[arg(allow_hyphen_values = false)]
        mask: String,
    },
    /// Run a verification sweep for one statement or all of them.
    Verify {
        /// One of thm-2.1, cor-2.2, cor-2.3, cor-2.4, cor-2.5, prop-2.6,
        /// minimal-union, eq0, all.
        statement: String,
        #[arg(long, value_enum, default_value_t = ScopeArg::Auto)]
        scope: ScopeArg,
        /// Instances per statement in sampled mode.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit the Hasse diagram of the weak or Bruhat order as DOT.
    Hasse {
        #[arg(long, value_enum, default_value_t = OrderKind::Weak)]
        order: OrderKind,
    },
    /// Check the engine against the permutation models of types A and B.
    OracleCheck {
        /// "exhaustive", or a sample count; default picks by group size.
        #[arg(long, default_value = "auto")]
        samples: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    Auto,
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderKind {
    Weak,
    Bruhat,
}

/// Operational failure: reported on stderr, exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Run = Result<ExitCode, Failure>;

struct Context {
    sys: CoxeterSystem,
    named: Option<NamedType>,
    label: String,
    cap: usize,
    cap_explicit: bool,
    json: bool,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self, Failure> {
        let spec = match (&cli.group.type_name, &cli.group.group_file) {
            (Some(name), None) => GroupSpec::Named(NamedType::parse(name)?),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
                GroupSpec::parse(&text)?
            }
            (None, None) => return Err(Failure("pass --type NAME or --group-file PATH".into())),
            (Some(_), Some(_)) => unreachable!("clap group forbids both"),
        };
        let matrix = spec.matrix();
        let named = spec.named_type();
        let label = match named {
            Some(ty) => ty.to_string(),
            None => format!("custom(rank {})", matrix.rank()),
        };
        let cap = cli.cap.unwrap_or(40);
        // Inversions and conjugates of capped elements need headroom in the
        // engine; element lengths are checked against the cap separately.
        let engine_cap = DEFAULT_LENGTH_CAP.max(4 * cap + 8);
        let sys = CoxeterSystem::new(matrix).with_length_cap(engine_cap);
        Ok(Context { sys, named, label, cap, cap_explicit: cli.cap.is_some(), json: cli.json })
    }

    fn element(&self, text: &str) -> Result<GroupElement, Failure> {
        let w = self.sys.parse_element(text)?;
        if w.length() > self.cap {
            return Err(Failure(format!(
                "element has length {}, beyond the cap {} (raise --cap)",
                w.length(),
                self.cap
            )));
        }
        Ok(w)
    }

    /// Enumerates the group; infinite groups demand an explicit cap.
    fn enumerate(&self) -> Result<EnumeratedGroup, Failure> {
        if self.sys.matrix().has_infinite_bond() && !self.cap_explicit {
            return Err(Failure(format!(
                "{} is infinite: enumeration requires an explicit --cap",
                self.label
            )));
        }
        Ok(self.sys.enumerated(self.cap))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match Context::new(&cli) {
        Ok(ctx) => ctx,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let run = match &cli.command {
        Command::Nf { word } => cmd_nf(&ctx, word),
        Command::Inversions { word, side } => cmd_inversions(&ctx, word, *side),
        Command::Project { word, mask } => cmd_project(&ctx, word, mask),
        Command::Verify { statement, scope, samples, seed } => {
            cmd_verify(&ctx, statement, *scope, *samples, *seed)
        }
        Command::Hasse { order } => cmd_hasse(&ctx, *order),
        Command::OracleCheck { samples, seed } => cmd_oracle_check(&ctx, samples, *seed),
    };
    match run {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct NfOutput<'a> {
    schema: u32,
    command: &'static str,
    group: &'a str,
    input: &'a str,
    normal_form: String,
    length: usize,
}

fn cmd_nf(ctx: &Context, word: &str) -> Run {
    let w = ctx.element(word)?;
    if ctx.json {
        let out = NfOutput {
            schema: SCHEMA,
            command: "nf",
            group: &ctx.label,
            input: word,
            normal_form: w.to_string(),
            length: w.length(),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!("{w}, length {}", w.length());
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct InversionsOutput<'a> {
    schema: u32,
    command: &'static str,
    group: &'a str,
    element: String,
    side: &'static str,
    members: Vec<String>,
}

fn cmd_inversions(ctx: &Context, word: &str, side: Side) -> Run {
    let w = ctx.element(word)?;
    let set = match side {
        Side::Left => ctx.sys.left_inversions(&w)?,
        Side::Right => ctx.sys.right_inversions(&w)?,
    };
    if ctx.json {
        let out = InversionsOutput {
            schema: SCHEMA,
            command: "inversions",
            group: &ctx.label,
            element: w.to_string(),
            side: if side == Side::Left { "left" } else { "right" },
            members: set.iter().map(|t| t.to_string()).collect(),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        for t in set.iter() {
            println!("{t}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ProjectOutput<'a> {
    schema: u32,
    command: &'static str,
    group: &'a str,
    element: String,
    mask: String,
    quotient: String,
    quotient_length: usize,
    parabolic: String,
    parabolic_length: usize,
}

fn cmd_project(ctx: &Context, word: &str, mask_text: &str) -> Run {
    let w = ctx.element(word)?;
    let mask = ctx.sys.parse_mask(mask_text)?;
    let f = ctx.sys.project(&w, mask)?;
    if ctx.json {
        let out = ProjectOutput {
            schema: SCHEMA,
            command: "project",
            group: &ctx.label,
            element: w.to_string(),
            mask: mask.to_string(),
            quotient: f.quotient.to_string(),
            quotient_length: f.quotient.length(),
            parabolic: f.parabolic.to_string(),
            parabolic_length: f.parabolic.length(),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!("w^J = {}, length {}", f.quotient, f.quotient.length());
        println!("w_J = {}, length {}", f.parabolic, f.parabolic.length());
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    schema: u32,
    command: &'static str,
    group: &'a str,
    scope: &'static str,
    seed: u64,
    cap: usize,
    results: Vec<SweepSummary>,
}

fn cmd_verify(ctx: &Context, statement: &str, scope: ScopeArg, samples: usize, seed: u64) -> Run {
    let statements: Vec<StatementId> = if statement == "all" {
        StatementId::ALL.to_vec()
    } else {
        vec![StatementId::parse(statement).ok_or_else(|| {
            Failure(format!(
                "unknown statement {statement:?}; expected one of {}, or all",
                StatementId::ALL.map(|s| s.id()).join(", ")
            ))
        })?]
    };
    let scope = match scope {
        ScopeArg::Auto => SweepScope::Auto,
        ScopeArg::Exhaustive => SweepScope::Exhaustive,
        ScopeArg::Sample => SweepScope::Sample,
    };
    let opts = SweepOptions { scope, seed, samples, ..SweepOptions::default() };
    let g = ctx.enumerate()?;
    let sweeper = Sweeper::new(&ctx.sys, &g);
    let mut results = Vec::new();
    for statement in statements {
        results.push(sweeper.run(statement, &opts)?);
    }
    let failures: u64 = results.iter().map(|r| r.fail).sum();
    if ctx.json {
        let out = VerifyOutput {
            schema: SCHEMA,
            command: "verify",
            group: &ctx.label,
            scope: match scope {
                SweepScope::Auto => "auto",
                SweepScope::Exhaustive => "exhaustive",
                SweepScope::Sample => "sample",
            },
            seed,
            cap: ctx.cap,
            results,
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        for r in &results {
            println!("{}: pass={} skip={} fail={}", r.statement, r.pass, r.skip, r.fail);
            for report in &r.failures {
                println!("  FAIL {report}");
            }
        }
        println!("result: {}", if failures == 0 { "ok" } else { "FAILED" });
    }
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct HasseOutput<'a> {
    schema: u32,
    command: &'static str,
    group: &'a str,
    order: &'static str,
    truncated: bool,
    cap: usize,
    nodes: Vec<String>,
    /// Covering relations as (lower, upper) node pairs.
    edges: Vec<(String, String)>,
}

fn cmd_hasse(ctx: &Context, order: OrderKind) -> Run {
    let g = ctx.enumerate()?;
    let nodes: Vec<String> = g.elements().iter().map(|w| w.to_string()).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    match order {
        OrderKind::Weak => {
            // Covers v·s -> v for right descents s.
            for (j, v) in g.elements().iter().enumerate() {
                for s in g.right_descents_idx(j as u32).iter() {
                    let i = g.right_mul(j as u32, s).expect("descents stay in the ball");
                    edges.push((g.element(i).to_string(), v.to_string()));
                }
            }
        }
        OrderKind::Bruhat => {
            // Covers are Bruhat-related pairs one length apart.
            for u in g.elements() {
                for v in g.elements() {
                    if v.length() == u.length() + 1 && ctx.sys.bruhat_leq(u, v)? {
                        edges.push((u.to_string(), v.to_string()));
                    }
                }
            }
        }
    }
    edges.sort();
    if !g.is_complete() {
        eprintln!("warning: ball truncated at length cap {}", ctx.cap);
    }
    let order_name = match order {
        OrderKind::Weak => "weak",
        OrderKind::Bruhat => "bruhat",
    };
    if ctx.json {
        let out = HasseOutput {
            schema: SCHEMA,
            command: "hasse",
            group: &ctx.label,
            order: order_name,
            truncated: !g.is_complete(),
            cap: ctx.cap,
            nodes,
            edges,
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
        return Ok(ExitCode::SUCCESS);
    }
    let mut dot = String::new();
    let _ = writeln!(dot, "digraph {order_name}_order {{");
    if !g.is_complete() {
        let _ = writeln!(dot, "  // truncated ball: length cap {} reached", ctx.cap);
    }
    let _ = writeln!(dot, "  rankdir=BT;");
    for node in &nodes {
        let _ = writeln!(dot, "  \"{node}\";");
    }
    for (lower, upper) in &edges {
        let _ = writeln!(dot, "  \"{lower}\" -> \"{upper}\";");
    }
    let _ = writeln!(dot, "}}");
    print!("{dot}");
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct OracleCheckOutput<'a> {
    schema: u32,
    command: &'static str,
    group: &'a str,
    elements: usize,
    checked_elements: usize,
    checked_pairs: usize,
    disagreements: u64,
    checks: Vec<OracleCheckLine>,
}

#[derive(Serialize)]
struct OracleCheckLine {
    name: &'static str,
    ok: bool,
}

fn cmd_oracle_check(ctx: &Context, samples: &str, seed: u64) -> Run {
    let Some(named) = ctx.named else {
        return Err(Failure(format!(
            "no oracle model for {}: oracle-check needs a catalog A or B type",
            ctx.label
        )));
    };
    let model = OracleModel::for_type(named)?;
    let g = ctx.enumerate()?;
    let n = g.len() as u32;
    let (element_ids, pairs): (Vec<u32>, Vec<(u32, u32)>) = match samples {
        "exhaustive" => (
            (0..n).collect(),
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
        ),
        "auto" if g.len() <= 200 => (
            (0..n).collect(),
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
        ),
        other => {
            let count: usize = if other == "auto" {
                1000
            } else {
                other.parse().map_err(|_| {
                    Failure(format!("--samples expects a count or \"exhaustive\", got {other:?}"))
                })?
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                (0..count).map(|_| rng.gen_range(0..n)).collect(),
                (0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect(),
            )
        }
    };

    let mut length_ok = true;
    let mut right_ok = true;
    let mut left_ok = true;
    let mut inv_ok = true;
    let mut prod_ok = true;
    let mut disagreements = 0u64;
    for &i in &element_ids {
        let w = g.element(i);
        let image = model.map(w);
        for (ok, agree) in [
            (&mut length_ok, image.length() == w.length()),
            (&mut right_ok, image.right_descents() == ctx.sys.right_descents(w)?),
            (&mut left_ok, image.left_descents() == ctx.sys.left_descents(w)?),
            (&mut inv_ok, ctx.sys.right_inversions(w)?.len() == w.length()),
        ] {
            if !agree {
                *ok = false;
                disagreements += 1;
            }
        }
    }
    for &(i, j) in &pairs {
        let (a, b) = (g.element(i), g.element(j));
        let engine = ctx.sys.multiply(a, b)?;
        if model.map(&engine) != model.map(a).compose(&model.map(b)) {
            prod_ok = false;
            disagreements += 1;
        }
    }

    let checks = vec![
        OracleCheckLine { name: "length", ok: length_ok },
        OracleCheckLine { name: "right descents", ok: right_ok },
        OracleCheckLine { name: "left descents", ok: left_ok },
        OracleCheckLine { name: "inversion counts", ok: inv_ok },
        OracleCheckLine { name: "products", ok: prod_ok },
    ];
    if ctx.json {
        let out = OracleCheckOutput {
            schema: SCHEMA,
            command: "oracle-check",
            group: &ctx.label,
            elements: g.len(),
            checked_elements: element_ids.len(),
            checked_pairs: pairs.len(),
            disagreements,
            checks,
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!("elements: {} ({} checked, {} pairs)", g.len(), element_ids.len(), pairs.len());
        for line in &checks {
            println!("{}: {}", line.name, if line.ok { "ok" } else { "MISMATCH" });
        }
        println!("result: {}", if disagreements == 0 { "ok" } else { "FAILED" });
    }
    Ok(if disagreements == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
