mod input;
mod selftest;

use std::process::ExitCode;

use arithline::galois_field::FieldError;
use arithline::geometry::{find_lines, GeometryError, Line};
use arithline::pipeline::{
    enriched_count_with, line_json, oracle_lines, random_surface, PipelineError, SurfaceSpec,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "arithline", version, about = "Enriched counts of the lines on degree-4 del Pezzo surfaces over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit plain text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    /// More detail in reports, debug logging on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct SurfaceArgs {
    /// Surface JSON file (`{"p","q","f1","f2"}`); `-` reads stdin.
    #[arg(long, conflicts_with_all = ["field", "f1", "f2"])]
    input: Option<String>,
    /// Base field: `p`, `p^q`, or the prime power itself.
    #[arg(long)]
    field: Option<String>,
    /// 15 comma-separated coefficients of f1; extension elements as `c0:c1:...`.
    #[arg(long, allow_hyphen_values = true)]
    f1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f2: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enriched count of the lines on one surface.
    Count {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// 10 comma-separated Plücker coefficients of the one-form, over the working field.
        #[arg(long, allow_hyphen_values = true)]
        one_form: Option<String>,
    },
    /// Draw accepted random surfaces.
    Random {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Brute-force line search compared against the solver.
    Oracle {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = 2)]
        dmax: usize,
    },
    /// Run the built-in invariant checks.
    Selftest {
        #[arg(long, hide = true)]
        force_fail: bool,
    },
}

/// A failed run: exit code, a stable reason string, and detail.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    reason: &'static str,
    detail: String,
}

impl Failure {
    pub fn input(reason: &'static str, detail: impl Into<String>) -> Self {
        Failure {
            code: 1,
            reason,
            detail: detail.into(),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let detail = e.to_string();
        let (code, reason) = match &e {
            PipelineError::NotSmooth => (1, "not smooth"),
            PipelineError::Field(f) | PipelineError::Geometry(GeometryError::Field(f)) => field_reason(f),
            PipelineError::Parse(_) => (1, "parse error"),
            PipelineError::Geometry(GeometryError::DegenerateSurface(_)) => (1, "degenerate surface"),
            PipelineError::TooLarge { .. } => (1, "too large"),
            PipelineError::RetriesExhausted(_) => (1, "retries exhausted"),
            PipelineError::DegenerateOneForm | PipelineError::Geometry(GeometryError::DegenerateOneForm) => {
                (1, "degenerate one-form")
            }
            PipelineError::MismatchedFields(_) => (1, "field mismatch"),
            _ => (2, "internal error"),
        };
        Failure { code, reason, detail }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        PipelineError::Field(e).into()
    }
}

fn field_reason(e: &FieldError) -> (u8, &'static str) {
    match e {
        FieldError::EvenCharacteristic => (1, "characteristic 2 unsupported"),
        FieldError::NotPrime(_)
        | FieldError::CharacteristicTooLarge(_)
        | FieldError::ZeroDegree
        | FieldError::BadCoefficientLength { .. } => (1, "parse error"),
        _ => (2, "internal error"),
    }
}

struct Output {
    text: bool,
}

impl Output {
    fn json(&self, v: &Value) {
        println!("{}", serde_json::to_string_pretty(v).expect("json"));
    }

    fn failure(&self, f: &Failure) {
        if self.text {
            println!("error: {}: {}", f.reason, f.detail);
        } else {
            self.json(&json!({"error": f.reason, "detail": f.detail, "exit_code": f.code}));
        }
        eprintln!("arithline: {}: {}", f.reason, f.detail);
    }
}

fn cmd_count(out: &Output, surface: &SurfaceArgs, one_form: Option<&str>, seed: u64, verbose: bool) -> Result<u8, Failure> {
    let spec = input::surface(surface)?;
    let s = match one_form {
        Some(tokens) => Some(input::one_form(&spec, tokens)?),
        None => None,
    };
    let report = enriched_count_with(&spec, seed, s.as_ref())?;
    if out.text {
        print!("{}", report.to_text());
    } else if verbose {
        out.json(&report.to_json_verbose());
    } else {
        out.json(&report.to_json());
    }
    if report.is_8h {
        Ok(0)
    } else {
        eprintln!("arithline: total is not 8H");
        Ok(2)
    }
}

fn cmd_random(out: &Output, field: &str, count: usize, seed: u64) -> Result<u8, Failure> {
    let field = input::field(field)?;
    let mut specs = Vec::with_capacity(count);
    for k in 0..count {
        let s = seed.wrapping_add(k as u64);
        let r = random_surface(&field, s)?;
        specs.push((s, r));
    }
    if out.text {
        for (s, r) in &specs {
            println!("seed {s} ({} rejected draws)", r.rejections);
            println!("  f1 = {}\n  f2 = {}", r.spec.f1, r.spec.f2);
        }
    } else {
        let v: Vec<Value> = specs
            .iter()
            .map(|(s, r)| json!({"seed": s, "rejections": r.rejections, "surface": r.spec}))
            .collect();
        out.json(&Value::from(v));
    }
    Ok(0)
}

fn keys(lines: &[Line]) -> Vec<String> {
    lines.iter().map(|l| l.canon_key.to_string()).collect()
}

fn cmd_oracle(out: &Output, surface: &SurfaceArgs, dmax: usize, seed: u64) -> Result<u8, Failure> {
    let spec: SurfaceSpec = input::surface(surface)?;
    let brute = oracle_lines(&spec, dmax)?;
    let solved: Vec<Line> = find_lines(&spec.f1, &spec.f2, seed)
        .map_err(PipelineError::from)?
        .into_iter()
        .filter(|l| l.degree <= dmax)
        .collect();
    let (kb, ks) = (keys(&brute), keys(&solved));
    let only_oracle: Vec<&String> = kb.iter().filter(|k| !ks.contains(k)).collect();
    let only_solver: Vec<&String> = ks.iter().filter(|k| !kb.contains(k)).collect();
    let agree = only_oracle.is_empty() && only_solver.is_empty();
    if out.text {
        println!("oracle lines of degree <= {dmax}: {}", brute.len());
        for l in &brute {
            println!("  deg {}  chart {}  {}", l.degree, l.chart, l.canon_key);
        }
        println!("only in oracle: {only_oracle:?}");
        println!("only in solver: {only_solver:?}");
    } else {
        out.json(&json!({
            "dmax": dmax,
            "oracle": brute.iter().map(line_json).collect::<Vec<_>>(),
            "diff": {"only_oracle": only_oracle, "only_solver": only_solver},
            "agree": agree,
        }));
    }
    if agree {
        Ok(0)
    } else {
        Err(Failure::input("oracle mismatch", "line sets differ"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let out = Output { text: cli.text };
    let result = match &cli.command {
        Command::Count { surface, one_form } => cmd_count(&out, surface, one_form.as_deref(), cli.seed, cli.verbose),
        Command::Random { field, count } => cmd_random(&out, field, *count, cli.seed),
        Command::Oracle { surface, dmax } => cmd_oracle(&out, surface, *dmax, cli.seed),
        Command::Selftest { force_fail } => Ok(selftest::run(&out_mode(&out), cli.seed, *force_fail)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if f.reason != "oracle mismatch" {
                out.failure(&f);
            } else {
                eprintln!("arithline: {}: {}", f.reason, f.detail);
            }
            ExitCode::from(f.code)
        }
    }
}

fn out_mode(out: &Output) -> selftest::Mode {
    if out.text {
        selftest::Mode::Text
    } else {
        selftest::Mode::Json
    }
}
