//! Command-line front end: case construction, verification, flex
//! certification, and raw Gröbner-basis runs.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::field::{Field, PrimeField, Rationals};
use crate::flex;
use crate::groebner::{buchberger, GbConfig, GbError, Ideal};
use crate::poly::{MonomialOrder, Ring};
use crate::segre::{CaseKind, CaseRecipe, CurveSpec};
use crate::textform;
use crate::verify::{verify_case, FieldSpec, RadicalOutcome, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const BUDGET_ENV: &str = "ARACERT_BUDGET";

#[derive(Parser)]
#[command(
    name = "aracert",
    version,
    about = "Constructs and certifies candidate set-theoretic defining equations for Segre products"
)]
pub struct Cli {
    /// Cap the worker thread count.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the target and candidate generator sets of a case.
    Construct(ConstructArgs),
    /// Certify a case and print a JSON verification report.
    Verify(VerifyArgs),
    /// Certify d-flexes, standardize coordinates, or evaluate moduli formulas.
    Flex(FlexArgs),
    /// Compute a reduced Gröbner basis of an ideal given in a text file.
    Gb(GbArgs),
}

#[derive(Args)]
struct CaseArgs {
    /// remark9 | theorem10 | theorem45 | conic | diagonal
    #[arg(long)]
    kind: CaseKind,
    /// Dimension of the hypersurface side P^n.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Dimension of the projective-space factor P^m.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Hypersurface form: polynomial text, fermat:<d>, or conic:standard.
    #[arg(long = "F")]
    curve: Option<String>,
    /// Coefficient field: Q or Fp:<prime>.
    #[arg(long, default_value = "Fp:32003")]
    field: FieldSpec,
}

impl CaseArgs {
    fn recipe(&self) -> Result<CaseRecipe, String> {
        let curve = match &self.curve {
            None => CurveSpec::None,
            Some(s) => CurveSpec::parse_spec(s)?,
        };
        Ok(CaseRecipe { kind: self.kind, n: self.n, m: self.m, curve })
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Emit the generator lists as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Primes for the zero-locus oracle.
    #[arg(long, value_delimiter = ',', default_value = "3,5")]
    oracle_primes: Vec<u64>,
    /// Gröbner reduction-step budget (env ARACERT_BUDGET overrides default).
    #[arg(long)]
    budget: Option<u64>,
    /// Point-enumeration budget for the oracles.
    #[arg(long, default_value_t = crate::verify::DEFAULT_ENUM_BUDGET)]
    enum_budget: u64,
    /// Run only the finite-field oracles, skipping the symbolic path.
    #[arg(long)]
    oracle_only: bool,
    /// Drop the given candidate generator before verifying (mutation test).
    #[arg(long)]
    drop_candidate: Option<usize>,
}

#[derive(Args)]
struct FlexArgs {
    /// Curve: polynomial text, fermat:<d>, or conic:standard.
    #[arg(long = "F")]
    curve: Option<String>,
    /// Number of variables minus one; curves live in P^n.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Line: two points `a0,a1,..;b0,b1,..` or a dual form `dual:<linear form>`.
    #[arg(long)]
    line: Option<String>,
    /// Point on the line, as comma-separated coordinates.
    #[arg(long)]
    point: Option<String>,
    /// Also print the standardized form and the change of coordinates.
    #[arg(long)]
    standardize: bool,
    /// Exhaustive d-flex search over the (finite) coefficient field.
    #[arg(long)]
    search: bool,
    /// Print the moduli dimensions for this degree and exit.
    #[arg(long)]
    moduli_dim: Option<u32>,
    /// Coefficient field: Q or Fp:<prime>.
    #[arg(long, default_value = "Q")]
    field: FieldSpec,
}

#[derive(Args)]
struct GbArgs {
    /// File with one polynomial per line; `#` starts a comment.
    file: std::path::PathBuf,
    /// Variable names, in order.
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// Monomial order: grevlex or lex.
    #[arg(long, default_value = "grevlex")]
    order: String,
    /// Coefficient field: Q or Fp:<prime>.
    #[arg(long, default_value = "Q")]
    field: FieldSpec,
    /// Gröbner reduction-step budget (env ARACERT_BUDGET overrides default).
    #[arg(long)]
    budget: Option<u64>,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap already formats help/version output.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Flex(args) => cmd_flex(args),
        Command::Gb(args) => cmd_gb(args),
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn effective_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(crate::groebner::DEFAULT_BUDGET)
}

#[derive(Serialize)]
struct ConstructOutput {
    case: crate::verify::CaseDescriptor,
    field: String,
    target: Vec<String>,
    candidate: Vec<String>,
    notes: Vec<String>,
}

fn cmd_construct(args: ConstructArgs) -> i32 {
    let recipe = match args.case.recipe() {
        Ok(r) => r,
        Err(e) => return usage_error(&e),
    };
    let out = match args.case.field {
        FieldSpec::Q => construct_output(&recipe, Rationals),
        FieldSpec::Fp(p) => match PrimeField::new(p) {
            Ok(f) => construct_output(&recipe, f),
            Err(e) => return usage_error(&e.to_string()),
        },
    };
    let out = match out {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!(
            "case: {} (n={}, m={}{}) over {}",
            out.case.kind,
            out.case.n,
            out.case.m,
            out.case.degree.map(|d| format!(", d={d}")).unwrap_or_default(),
            out.field
        );
        println!("curve: {}", out.case.curve);
        println!(
            "expected candidate count: {}{}",
            out.case.expected_count,
            out.case
                .expected_ara
                .as_ref()
                .map(|a| format!("  [{a}]"))
                .unwrap_or_default()
        );
        println!("target generators ({}):", out.target.len());
        for g in &out.target {
            println!("  {g}");
        }
        println!("candidate generators ({}):", out.candidate.len());
        for g in &out.candidate {
            println!("  {g}");
        }
        for note in &out.notes {
            println!("note: {note}");
        }
    }
    EXIT_OK
}

fn construct_output<F: Field>(
    recipe: &CaseRecipe,
    field: F,
) -> Result<ConstructOutput, String> {
    let case = recipe.build(field.clone()).map_err(|e| e.to_string())?;
    Ok(ConstructOutput {
        case: crate::verify::CaseDescriptor {
            kind: case.kind.to_string(),
            n: case.n,
            m: case.m,
            degree: case.degree,
            curve: recipe.curve.describe(),
            candidate_count: case.candidate.generators().len(),
            expected_count: case.expected_count,
            expected_ara: case.expected_ara.clone(),
        },
        field: field.name(),
        target: case.target.generators().iter().map(textform::print).collect(),
        candidate: case.candidate.generators().iter().map(textform::print).collect(),
        notes: case.notes.clone(),
    })
}

fn cmd_verify(args: VerifyArgs) -> i32 {
    let recipe = match args.case.recipe() {
        Ok(r) => r,
        Err(e) => return usage_error(&e),
    };
    // Reject malformed curve text up front: a parse failure is a usage
    // error, not a certification failure.
    if let CurveSpec::Text(_) = &recipe.curve {
        let arity = if recipe.kind == CaseKind::Conic { 2 } else { recipe.n };
        let probe = Ring::new(
            Rationals,
            (0..=arity).map(|i| format!("x{i}")).collect(),
            MonomialOrder::GrevLex,
        )
        .map_err(|e| e.to_string())
        .and_then(|r| recipe.curve.realize(&r).map_err(|e| e.to_string()));
        if let Err(e) = probe {
            return usage_error(&format!("cannot parse the curve: {e}"));
        }
    }
    let cfg = VerifyConfig {
        field: args.case.field,
        oracle_primes: args.oracle_primes,
        budget: effective_budget(args.budget),
        enum_budget: args.enum_budget,
        oracle_only: args.oracle_only,
        drop_candidate: args.drop_candidate,
    };
    let report = verify_case(&recipe, &cfg);
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    if cfg.oracle_only {
        return if report.oracles_ok { EXIT_OK } else { EXIT_FAILED };
    }
    if report.certified {
        EXIT_OK
    } else if matches!(report.radical_equal, RadicalOutcome::Aborted(_)) {
        EXIT_BUDGET
    } else {
        EXIT_FAILED
    }
}

fn cmd_flex(args: FlexArgs) -> i32 {
    if let Some(d) = args.moduli_dim {
        return match print_moduli(d) {
            Ok(()) => EXIT_OK,
            Err(e) => usage_error(&e),
        };
    }
    let result = match args.field {
        FieldSpec::Q => flex_over(&args, Rationals),
        FieldSpec::Fp(p) => match PrimeField::new(p) {
            Ok(f) => flex_over(&args, f),
            Err(e) => return usage_error(&e.to_string()),
        },
    };
    match result {
        Ok(code) => code,
        Err(e) => usage_error(&e),
    }
}

fn print_moduli(d: u32) -> Result<(), String> {
    let v = flex::dim_v(d).map_err(|e| e.to_string())?;
    let h = flex::dim_h(d).map_err(|e| e.to_string())?;
    let c = flex::codim(d).map_err(|e| e.to_string())?;
    println!("dim V_{d} = {v}");
    println!("dim H_{d} = {h}");
    println!("codim = {c}");
    for alpha in [1u32, 2] {
        let va = flex::moduli_dim(d, alpha).map_err(|e| e.to_string())?;
        println!("dim V_{{{d},{alpha}}} = {va}");
    }
    Ok(())
}

fn flex_over<F: Field>(args: &FlexArgs, field: F) -> Result<i32, String> {
    let curve_text = args.curve.as_deref().ok_or("--F is required")?;
    let spec = CurveSpec::parse_spec(curve_text)?;
    let ring = Ring::new(
        field.clone(),
        (0..=args.n).map(|i| format!("x{i}")).collect(),
        MonomialOrder::GrevLex,
    )
    .map_err(|e| e.to_string())?;
    let f = spec.realize(&ring).map_err(|e| e.to_string())?;

    if args.search {
        let flexes = flex::find_d_flexes_bruteforce(&f).map_err(|e| e.to_string())?;
        println!("d-flexes found: {}", flexes.len());
        for (line, p) in &flexes {
            let (a, b) = line.span();
            println!("line {} ; {}  point {}", a.format(), b.format(), p.format());
        }
        return Ok(EXIT_OK);
    }

    let line_text = args.line.as_deref().ok_or("--line is required")?;
    let point_text = args.point.as_deref().ok_or("--point is required")?;
    let line = parse_line(&field, &ring, line_text)?;
    let point = parse_point(&field, point_text)?;

    let verdict = flex::is_d_flex(&f, &line, &point).map_err(|e| e.to_string())?;
    println!("d-flex: {verdict}");
    if !verdict {
        return Ok(EXIT_FAILED);
    }
    if args.standardize {
        let (fp, t) = flex::standardize(&f, &line, &point).map_err(|e| e.to_string())?;
        println!("standardized: {}", textform::print(&fp));
        println!("T:");
        for row in t.matrix() {
            let cells: Vec<String> = row.iter().map(|c| field.format(c)).collect();
            println!("  [{}]", cells.join(", "));
        }
    }
    Ok(EXIT_OK)
}

fn parse_point<F: Field>(field: &F, text: &str) -> Result<flex::ProjectivePoint<F>, String> {
    let coords: Result<Vec<F::Elem>, _> =
        text.split(',').map(|c| field.parse(c.trim())).collect();
    flex::ProjectivePoint::new(field.clone(), coords.map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())
}

fn parse_line<F: Field>(
    field: &F,
    ring: &Arc<Ring<F>>,
    text: &str,
) -> Result<flex::ProjectiveLine<F>, String> {
    if let Some(form_text) = text.strip_prefix("dual:") {
        let form = textform::parse(ring, form_text).map_err(|e| e.to_string())?;
        if form.total_degree() != Some(1) {
            return Err("dual form must be linear".to_string());
        }
        let mut coeffs = vec![field.zero(); ring.arity()];
        for (mono, c) in form.terms() {
            let var = mono.0.iter().position(|&e| e == 1).expect("linear term");
            coeffs[var] = c.clone();
        }
        return flex::ProjectiveLine::from_dual(field.clone(), &coeffs)
            .map_err(|e| e.to_string());
    }
    let (a, b) = text
        .split_once(';')
        .ok_or("line must be `a0,a1,..;b0,b1,..` or `dual:<form>`")?;
    flex::ProjectiveLine::new(parse_point(field, a)?, parse_point(field, b)?)
        .map_err(|e| e.to_string())
}

fn cmd_gb(args: GbArgs) -> i32 {
    let order = match args.order.as_str() {
        "grevlex" => MonomialOrder::GrevLex,
        "lex" => MonomialOrder::Lex,
        other => return usage_error(&format!("unknown order `{other}`")),
    };
    if args.vars.is_empty() {
        return usage_error("--vars is required");
    }
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", args.file.display())),
    };
    let budget = effective_budget(args.budget);
    let result = match args.field {
        FieldSpec::Q => gb_over(Rationals, &args.vars, order, &text, budget),
        FieldSpec::Fp(p) => match PrimeField::new(p) {
            Ok(f) => gb_over(f, &args.vars, order, &text, budget),
            Err(e) => return usage_error(&e.to_string()),
        },
    };
    match result {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            EXIT_OK
        }
        Err(GbRunError::Usage(e)) => usage_error(&e),
        Err(GbRunError::Budget(spent)) => {
            eprintln!("error: budget exceeded after {spent} reduction steps");
            EXIT_BUDGET
        }
    }
}

enum GbRunError {
    Usage(String),
    Budget(u64),
}

fn gb_over<F: Field>(
    field: F,
    vars: &[String],
    order: MonomialOrder,
    text: &str,
    budget: u64,
) -> Result<Vec<String>, GbRunError> {
    let ring = Ring::new(field, vars.to_vec(), order)
        .map_err(|e| GbRunError::Usage(e.to_string()))?;
    let mut gens = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        gens.push(textform::parse(&ring, line).map_err(|e| GbRunError::Usage(e.to_string()))?);
    }
    let ideal = Ideal::new(&ring, gens).map_err(|e| GbRunError::Usage(e.to_string()))?;
    let gb = buchberger(&ideal, &GbConfig { budget }).map_err(|e| match e {
        GbError::BudgetExceeded { spent } => GbRunError::Budget(spent),
        other => GbRunError::Usage(other.to_string()),
    })?;
    Ok(gb.elements().iter().map(textform::print).collect())
}
