use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use hecke_core::export::{
    graph_from_json, graph_to_dot, graph_to_json, graph_to_table, ram_graph_to_dot, ram_graph_to_json,
    ram_graph_to_table, RationalJson,
};
use hecke_core::forms::{self, CuspFunction, Scalar, SolutionSpace};
use hecke_core::graph::{
    component_count, graph_compose, graph_identity, graph_phi_with, graph_power, graph_zero, neighbour_distance_check,
    verify_parity, verify_power_relations, verify_symmetry, verify_tail, verify_weight_sums,
};
use hecke_core::ramified::{graph_ramified, project_to_unramified, verify_ram_symmetry, GL2Fq};
use hecke_core::{Execution, Field, HeckeGraph, OperatorKind};

const THREADS_VAR: &str = "HECKE_GRAPHS_THREADS";

#[derive(Parser)]
#[command(name = "hecke-graphs", version, about = "Graphs of Hecke operators for PGL2 over F_q(T)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph of Φ_y for places y of one degree
    Graph(GraphArgs),
    /// Compose two operators (left first, then right)
    Compose(ComposeArgs),
    /// k-th power of Φ_y
    Power(PowerArgs),
    /// Check the structure theorems on a built or loaded graph
    Verify(VerifyArgs),
    /// Eigenfunctions, cusp recursion and the cuspidal/toroidal solvers
    #[command(subcommand)]
    Forms(FormsCommand),
    /// Graph of the ramified operator Φ'_{y,γ}
    Ramified(RamifiedArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Field size (a prime power up to 256)
    #[arg(long)]
    q: u64,
    /// Irreducible modulus for extension fields, constant term first (e.g. 1,1,1)
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn field(&self) -> Result<Field> {
        Ok(Field::new(self.q, self.modulus.as_deref())?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Table,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Draw an edge and its inverse as one line (DOT only)
    #[arg(long)]
    paired_edges: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn degree(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) => Err("operator degree must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        Ok(_) => Err("tolerance must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_parser = degree)]
    degree: u32,
    #[arg(long, value_parser = positive)]
    window: usize,
    /// Build vertex stars one after another instead of in parallel
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ComposeArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// `phi:<degree>`, `identity`, `zero` or a JSON graph file
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    /// Window of the result
    #[arg(long, value_parser = positive)]
    window: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct PowerArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_parser = degree)]
    degree: u32,
    #[arg(long, value_parser = degree)]
    k: u32,
    /// Window of Φ_y; the power has window `window - (k-1)·degree`
    #[arg(long, value_parser = positive)]
    window: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "input")]
    q: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    #[arg(long, value_parser = degree, required_unless_present = "input")]
    degree: Option<u32>,
    #[arg(long, value_parser = positive, required_unless_present = "input")]
    window: Option<usize>,
    /// Check a graph from a JSON file instead of building one
    #[arg(long, conflicts_with_all = ["q", "degree", "window"])]
    input: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScalarMode {
    Exact,
    Complex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Table,
    Json,
}

#[derive(Args)]
struct ScalarArgs {
    #[arg(long, value_enum, default_value = "exact")]
    scalar: ScalarMode,
    /// Zero threshold in complex mode
    #[arg(long, value_parser = tolerance, default_value = "1e-10")]
    tol: f64,
}

#[derive(Subcommand)]
enum FormsCommand {
    /// Extend f(c0), f(c1) along the cusp by f_{i+1} = λ f_i - q_x f_{i-1}
    Extend {
        /// q_x is q^degree
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = degree, default_value = "1")]
        degree: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        f0: String,
        #[arg(long, allow_hyphen_values = true)]
        f1: String,
        #[arg(long, value_parser = positive)]
        window: usize,
        #[command(flatten)]
        scalar: ScalarArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: TextFormat,
    },
    /// Common eigenfunctions of Φ_y for the given degrees on one window
    Eigen {
        #[command(flatten)]
        field: FieldArgs,
        /// Repeat to impose several operators (one --lambda each)
        #[arg(long, value_parser = degree, required = true)]
        degree: Vec<u32>,
        #[arg(long, allow_hyphen_values = true, required = true)]
        lambda: Vec<String>,
        #[arg(long, value_parser = positive)]
        window: usize,
        #[command(flatten)]
        scalar: ScalarArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: TextFormat,
    },
    /// Dimension of the space cut out by the cuspidal conditions
    CuspDim {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_parser = positive)]
        window: usize,
        /// Vertices allowed in the support (default: c0)
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "table")]
        format: TextFormat,
    },
    /// Dimension of the space cut out by the toroidal conditions
    ToroidalDim {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_parser = positive)]
        window: usize,
        /// Also print the degree-by-degree induction
        #[arg(long)]
        induction: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: TextFormat,
    },
    /// Eigenvalue √q_x (t + 1/t) of Φ_x on the Eisenstein series with χ(π_x) = t
    Eisenstein {
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = degree, default_value = "1")]
        degree: u32,
        /// χ(π_x) as a complex number, e.g. 0.5 or 1+2i
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_enum, default_value = "table")]
        format: TextFormat,
    },
}

#[derive(Args)]
struct RamifiedArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Entries a,b,c,d of γ = (a b; c d) over F_q
    #[arg(long, default_value = "1,0,0,1")]
    gamma: String,
    #[arg(long, value_parser = positive)]
    window: usize,
    /// Emit the projection to the unramified graph instead
    #[arg(long)]
    project: bool,
    /// Print the symmetry report instead of the graph
    #[arg(long, conflicts_with = "project")]
    check_symmetry: bool,
    #[command(flatten)]
    out: OutputArgs,
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(g: &HeckeGraph, out: &OutputArgs) -> String {
    match out.format {
        Format::Dot => graph_to_dot(g, out.paired_edges),
        Format::Json => graph_to_json(g) + "\n",
        Format::Table => graph_to_table(g),
    }
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("values serialise") + "\n"
}

/// Builds an operand of `compose` with the given window.
fn operand(spec: &str, field: &Field, window: usize) -> Result<HeckeGraph> {
    if let Some(d) = spec.strip_prefix("phi:") {
        let d = degree(d).map_err(anyhow::Error::msg)?;
        return Ok(graph_phi_with(field, d, window, Execution::Parallel)?);
    }
    match spec {
        "identity" => Ok(graph_identity(field.q(), window)),
        "zero" => Ok(graph_zero(field.q(), window)),
        path => {
            let text = fs::read_to_string(path).with_context(|| format!("reading operand {path}"))?;
            let g = graph_from_json(&text)?;
            if g.q() != field.q() {
                bail!("operand {path} is over q = {}, expected {}", g.q(), field.q());
            }
            Ok(g)
        }
    }
}

fn operand_reach(spec: &str) -> usize {
    spec.strip_prefix("phi:").and_then(|d| d.parse().ok()).unwrap_or(0)
}

fn check(report: impl Serialize, passed: bool) -> Value {
    let mut v = serde_json::to_value(report).expect("reports serialise");
    v["passed"] = json!(passed);
    v
}

fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let (g, field) = match &args.input {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (graph_from_json(&text)?, None)
        }
        None => {
            let field = Field::new(args.q.unwrap(), args.modulus.as_deref())?;
            let g = graph_phi_with(&field, args.degree.unwrap(), args.window.unwrap(), Execution::Parallel)?;
            (g, Some(field))
        }
    };
    let mut checks = serde_json::Map::new();
    let ws = verify_weight_sums(&g, None);
    checks.insert("weight_sums".into(), check(&ws, ws.passed()));
    let sym = verify_symmetry(&g);
    checks.insert("symmetry".into(), check(&sym, sym.passed()));
    let dist = neighbour_distance_check(&g, g.reach());
    checks.insert("distance".into(), check(&dist, dist.passed()));
    if let OperatorKind::Phi { degree: d } = g.operator() {
        let tail = verify_tail(&g, d);
        checks.insert("tail".into(), check(&tail, tail.passed()));
        let parity = verify_parity(&g, d);
        checks.insert("parity".into(), check(&parity, parity.passed()));
        let count = component_count(&g);
        // The count settles once the window spans two full periods.
        let expected = (g.window() >= 4 * d as usize).then_some(if d % 2 == 0 { 2 } else { 1 });
        let passed = expected.is_none_or(|e| e == count);
        checks.insert("components".into(), json!({"count": count, "expected": expected, "passed": passed}));
    }
    if let Some(field) = &field {
        let relations = verify_power_relations(field, g.window())?;
        let passed = relations.iter().all(|r| r.passed());
        checks.insert("relations".into(), json!({"relations": relations, "passed": passed}));
    }
    let passed = checks.values().all(|c| c["passed"] == json!(true));
    let report = json!({
        "q": g.q(),
        "operator": serde_json::to_value(g.operator()).expect("operator serialises"),
        "window": g.window(),
        "checks": checks,
        "passed": passed,
    });
    emit(&pretty(&report), args.output.as_ref())?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

trait Render: Scalar + std::str::FromStr {
    fn json(&self) -> Value;
    fn text(&self) -> String;
}

impl Render for BigRational {
    fn json(&self) -> Value {
        serde_json::to_value(RationalJson::from(self)).expect("rationals serialise")
    }

    fn text(&self) -> String {
        self.to_string()
    }
}

impl Render for Complex64 {
    fn json(&self) -> Value {
        json!({"re": self.re, "im": self.im})
    }

    fn text(&self) -> String {
        let re = self.re + 0.0;
        match self.im + 0.0 {
            0.0 => format!("{re}"),
            im if im < 0.0 => format!("{re}-{}i", -im),
            im => format!("{re}+{im}i"),
        }
    }
}

fn parse<S: Render>(s: &str, what: &str) -> Result<S> {
    s.parse().map_err(|_| anyhow::anyhow!("cannot parse {what} {s:?}"))
}

fn function_text<S: Render>(f: &CuspFunction<S>) -> String {
    f.values().iter().map(Render::text).collect::<Vec<_>>().join(",")
}

fn function_json<S: Render>(f: &CuspFunction<S>) -> Value {
    Value::Array(f.values().iter().map(Render::json).collect())
}

fn space_output<S: Render>(space: &SolutionSpace<S>, format: TextFormat, tol: f64) -> String {
    let basis: Vec<_> = space.basis.iter().map(|f| f.normalized(tol)).collect();
    match format {
        TextFormat::Table => {
            let mut out = format!("{}\n", space.dimension);
            for f in &basis {
                out.push_str(&function_text(f));
                out.push('\n');
            }
            out
        }
        TextFormat::Json => pretty(&json!({
            "dimension": space.dimension,
            "basis": basis.iter().map(function_json).collect::<Vec<_>>(),
        })),
    }
}

fn extend<S: Render>(lambda: &str, f0: &str, f1: &str, q_x: u64, window: usize, format: TextFormat) -> Result<String> {
    let f = forms::extend_along_cusp(&parse::<S>(lambda, "λ")?, parse(f0, "f0")?, parse(f1, "f1")?, q_x, window);
    Ok(match format {
        TextFormat::Table => function_text(&f) + "\n",
        TextFormat::Json => pretty(&function_json(&f)),
    })
}

fn eigen<S: Render>(
    field: &Field,
    degrees: &[u32],
    lambdas: &[String],
    window: usize,
    tol: f64,
    format: TextFormat,
) -> Result<String> {
    let graphs = degrees
        .iter()
        .map(|&d| graph_phi_with(field, d, window, Execution::Parallel))
        .collect::<hecke_core::Result<Vec<_>>>()?;
    let ops = graphs.iter().zip(lambdas).map(|(g, l)| Ok((g, parse::<S>(l, "λ")?))).collect::<Result<Vec<_>>>()?;
    let space = forms::joint_eigenfunctions(&ops, tol)?;
    Ok(space_output(&space, format, tol))
}

fn q_power(q: u64, d: u32) -> Result<u64> {
    q.checked_pow(d).context("q^degree overflows")
}

fn run_forms(cmd: &FormsCommand) -> Result<ExitCode> {
    let text = match cmd {
        FormsCommand::Extend { q, degree, lambda, f0, f1, window, scalar, format } => {
            let q_x = q_power(*q, *degree)?;
            match scalar.scalar {
                ScalarMode::Exact => extend::<BigRational>(lambda, f0, f1, q_x, *window, *format)?,
                ScalarMode::Complex => extend::<Complex64>(lambda, f0, f1, q_x, *window, *format)?,
            }
        }
        FormsCommand::Eigen { field, degree, lambda, window, scalar, format } => {
            if degree.len() != lambda.len() {
                bail!("give one --lambda per --degree ({} vs {})", degree.len(), lambda.len());
            }
            let field = field.field()?;
            match scalar.scalar {
                ScalarMode::Exact => eigen::<BigRational>(&field, degree, lambda, *window, 0.0, *format)?,
                ScalarMode::Complex => eigen::<Complex64>(&field, degree, lambda, *window, scalar.tol, *format)?,
            }
        }
        FormsCommand::CuspDim { field, max_degree, window, support, format } => {
            let space = forms::cusp_space(&field.field()?, *max_degree, *window, support.as_deref())?;
            space_output(&space, *format, 0.0)
        }
        FormsCommand::ToroidalDim { field, max_degree, window, induction, format } => {
            let field = field.field()?;
            let space = forms::toroidal_space(&field, *max_degree, *window)?;
            let mut text = space_output(&space, *format, 0.0);
            if *induction {
                let steps = forms::toroidal_induction(&field, *max_degree, *window)?;
                match format {
                    TextFormat::Table => {
                        for s in steps {
                            text.push_str(&format!(
                                "degree {}: leading coefficient {}, f(c{}) = {}\n",
                                s.degree, s.leading_coefficient, s.degree, s.value
                            ));
                        }
                    }
                    TextFormat::Json => {
                        let mut v: Value = serde_json::from_str(&text)?;
                        v["induction"] = serde_json::to_value(steps)?;
                        text = pretty(&v);
                    }
                }
            }
            text
        }
        FormsCommand::Eisenstein { q, degree, t, format } => {
            let t: Complex64 = parse(t, "t")?;
            let lambda = forms::eisenstein_eigenvalue(t, q_power(*q, *degree)?)?;
            match format {
                TextFormat::Table => lambda.text() + "\n",
                TextFormat::Json => pretty(&lambda.json()),
            }
        }
    };
    emit(&text, None)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Graph(a) => {
            let exec = if a.sequential { Execution::Sequential } else { Execution::Parallel };
            let g = graph_phi_with(&a.field.field()?, a.degree, a.window, exec)?;
            emit(&render(&g, &a.out), a.out.output.as_ref())?;
        }
        Command::Compose(a) => {
            let field = a.field.field()?;
            let left = operand(&a.left, &field, a.window)?;
            let right = operand(&a.right, &field, a.window + operand_reach(&a.left).max(left.reach()))?;
            let g = graph_compose(&left, &right)?;
            emit(&render(&g, &a.out), a.out.output.as_ref())?;
        }
        Command::Power(a) => {
            let g = graph_phi_with(&a.field.field()?, a.degree, a.window, Execution::Parallel)?;
            let p = graph_power(&g, a.k)?;
            emit(&render(&p, &a.out), a.out.output.as_ref())?;
        }
        Command::Verify(a) => return verify(&a),
        Command::Forms(cmd) => return run_forms(&cmd),
        Command::Ramified(a) => {
            let field = a.field.field()?;
            let entries: Vec<&str> = a.gamma.split(',').map(str::trim).collect();
            let gamma = GL2Fq::parse(&field, &entries).context("invalid --gamma")?;
            let g = graph_ramified(&gamma, a.window)?;
            let text = if a.check_symmetry {
                let report = verify_ram_symmetry(&g);
                pretty(&check(&report, report.passed()))
            } else if a.project {
                render(&project_to_unramified(&g)?, &a.out)
            } else {
                match a.out.format {
                    Format::Dot => ram_graph_to_dot(&g),
                    Format::Json => ram_graph_to_json(&g) + "\n",
                    Format::Table => ram_graph_to_table(&g),
                }
            };
            emit(&text, a.out.output.as_ref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => bail!("{THREADS_VAR} must be a positive integer, got {s:?}"),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thread_cap().and_then(|cap| match cap {
        None => run(cli),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            pool.install(|| run(cli))
        }
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
