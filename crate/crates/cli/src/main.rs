use std::fmt::Display;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;

use rbforest::coeff::{format_rational, parse_rational, Rational};
use rbforest::decorated::{is_nonunitary_supported, DecoratedSum, Symbol};
use rbforest::forest::{enumerate_forests, EnumerateOptions};
use rbforest::morphism::{
    check_rb_identity, extend, free_target, partial_sum_target, scalar_target, Assignment,
    Sequence, TargetAlgebra,
};
use rbforest::oracle::{check_law, Law};
use rbforest::text::{self, print_expr, print_sum, Format, TextError};
use rbforest::unitarization::{factor_through_unit, unitarize_free};

#[derive(Parser, Debug)]
#[command(
    name = "rbforest",
    version,
    about = "Free Rota-Baxter algebras on planar rooted forests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its normal form.
    Eval(EvalArgs),
    /// List or count forests with a given number of vertices.
    Enumerate(EnumerateArgs),
    /// Check an algebraic law exhaustively up to a size bound.
    Check(CheckArgs),
    /// Apply the morphism extending an assignment of generators.
    Map(MapArgs),
    /// Render an expression in ASCII or LaTeX.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    expr: String,
    /// Specialize λ to this rational.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    vertices: usize,
    #[arg(long, conflicts_with = "forests")]
    trees: bool,
    #[arg(long)]
    forests: bool,
    #[arg(long)]
    ladder_free: bool,
    #[arg(long)]
    count: bool,
    #[arg(long)]
    max_depth: Option<usize>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    law: String,
    #[arg(long, default_value_t = 3)]
    max_vertices: usize,
    /// Comma-separated symbols, required by the decorated laws.
    #[arg(long, value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct MapArgs {
    expr: String,
    /// scalar, partial-sum:N or free.
    #[arg(long)]
    target: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// symbol=value; repeat for several symbols.
    #[arg(long = "assign", allow_hyphen_values = true)]
    assign: Vec<String>,
    /// Treat the input as an element of the nonunitary free algebra.
    #[arg(long)]
    unitarize: bool,
}

#[derive(Args, Debug)]
struct RenderArgs {
    expr: String,
    #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
    format: RenderFormat,
    /// Render the expression as written instead of its normal form.
    #[arg(long)]
    raw: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RenderFormat {
    Ascii,
    Latex,
}

impl From<RenderFormat> for Format {
    fn from(f: RenderFormat) -> Format {
        match f {
            RenderFormat::Ascii => Format::Ascii,
            RenderFormat::Latex => Format::Latex,
        }
    }
}

enum Failure {
    Parse(String),
    Law,
    Usage(String),
}

impl Failure {
    fn usage(e: impl Display) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<TextError> for Failure {
    fn from(e: TextError) -> Failure {
        Failure::Parse(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Law) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Eval(a) => eval(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Check(a) => check(a),
        Command::Map(a) => map(a),
        Command::Render(a) => render(a),
    }
}

fn lambda_arg(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::Usage(format!("invalid rational for --lambda: {s:?}")))
}

fn eval(a: EvalArgs) -> Result<(), Failure> {
    let lambda = a.lambda.as_deref().map(lambda_arg).transpose()?;
    let value = text::eval_str(&a.expr)?;
    if a.json {
        let j = match &lambda {
            Some(l) => value.to_json_specialized(l),
            None => value.to_json(),
        };
        println!("{}", serde_json::to_string(&j).expect("serializable"));
    } else {
        match &lambda {
            Some(l) => println!("{}", value.print_specialized(l, Format::Ascii)),
            None => println!("{}", value.print(Format::Ascii)),
        }
    }
    Ok(())
}

fn enumerate(a: EnumerateArgs) -> Result<(), Failure> {
    if a.vertices == 0 {
        return Err(Failure::usage("--vertices must be at least 1"));
    }
    let opts = EnumerateOptions {
        trees_only: a.trees,
        ladder_free_only: a.ladder_free,
        max_depth: a.max_depth,
    };
    let forests = enumerate_forests(a.vertices, opts);
    if a.count {
        println!("{}", forests.len());
    } else {
        for f in forests {
            println!("{f}");
        }
    }
    Ok(())
}

fn check(a: CheckArgs) -> Result<(), Failure> {
    let law: Law = a.law.parse().map_err(Failure::usage)?;
    let report = check_law(law, a.max_vertices, a.alphabet.as_deref()).map_err(Failure::usage)?;
    if a.json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report.to_text());
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Law)
    }
}

enum TargetSpec {
    Scalar,
    PartialSum(usize),
    Free,
}

fn target_spec(s: &str) -> Result<TargetSpec, Failure> {
    match s {
        "scalar" => Ok(TargetSpec::Scalar),
        "free" => Ok(TargetSpec::Free),
        _ => s
            .strip_prefix("partial-sum:")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .map(TargetSpec::PartialSum)
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "malformed target {s:?}; expected scalar, partial-sum:N or free"
                ))
            }),
    }
}

fn parse_assignments<E>(
    raw: &[String],
    mut value: impl FnMut(&str) -> Result<E, Failure>,
) -> Result<Assignment<E>, Failure>
where
    E: Clone,
{
    let mut out = Assignment::new();
    for item in raw {
        let (name, v) = item.split_once('=').ok_or_else(|| {
            Failure::Usage(format!(
                "assignment {item:?} is not of the form symbol=value"
            ))
        })?;
        let name = name.trim();
        if !rbforest::decorated::is_valid_symbol_name(name) {
            return Err(Failure::Usage(format!("invalid symbol name {name:?}")));
        }
        out.insert(Symbol::new(name), value(v.trim())?);
    }
    Ok(out)
}

fn rational_value(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::Usage(format!("invalid rational {s:?}")))
}

/// Evaluates on the chosen target, after a Rota–Baxter self-test of the
/// target on the assigned values.
fn apply<T: TargetAlgebra>(
    target: &T,
    f: &Assignment<T::Elem>,
    values: &[T::Elem],
    input: &DecoratedSum,
    unitarize: bool,
) -> Result<T::Elem, Failure> {
    check_rb_identity(target, values).map_err(Failure::usage)?;
    if unitarize {
        let u = unitarize_free(input).map_err(Failure::usage)?;
        factor_through_unit(f, target, &u).map_err(Failure::usage)
    } else {
        extend(f, target, input).map_err(Failure::usage)
    }
}

fn map(a: MapArgs) -> Result<(), Failure> {
    let spec = target_spec(&a.target)?;
    let lambda = a.lambda.as_deref().map(lambda_arg).transpose()?;
    let input = text::parse_decorated_sum(&a.expr)?;
    if a.unitarize && !is_nonunitary_supported(&input) {
        return Err(Failure::usage(
            "--unitarize needs an input supported on ladder-free forests other than o",
        ));
    }
    let need_lambda = || {
        lambda
            .clone()
            .ok_or_else(|| Failure::usage("--lambda is required for this target"))
    };
    match spec {
        TargetSpec::Scalar => {
            let t = scalar_target(need_lambda()?);
            let f = parse_assignments(&a.assign, rational_value)?;
            let samples = sample_values(&a.assign, rational_value)?;
            let v = apply(
                &t,
                &f,
                &with_basics(samples, Rational::zero(), Rational::from_integer(1.into())),
                &input,
                a.unitarize,
            )?;
            println!("{}", format_rational(&v));
        }
        TargetSpec::PartialSum(n) => {
            let t = partial_sum_target(n, need_lambda()?);
            let seq = |s: &str| -> Result<Sequence, Failure> {
                let values = s
                    .split(',')
                    .map(rational_value)
                    .collect::<Result<Vec<_>, _>>()?;
                t.element(values)
                    .ok_or_else(|| Failure::Usage(format!("value {s:?} does not have length {n}")))
            };
            let f = parse_assignments(&a.assign, seq)?;
            let samples = sample_values(&a.assign, seq)?;
            let unit = t.unit().expect("partial sums are unitary");
            let v = apply(
                &t,
                &f,
                &with_basics(samples, t.zero(), unit),
                &input,
                a.unitarize,
            )?;
            println!("{v}");
        }
        TargetSpec::Free => {
            let t = free_target();
            let f = parse_assignments(&a.assign, |s| {
                text::parse_decorated_sum(s)
                    .map_err(|e| Failure::Usage(format!("assigned value {s:?}: {e}")))
            })?;
            let v = if a.unitarize {
                let u = unitarize_free(&input).map_err(Failure::usage)?;
                factor_through_unit(&f, &t, &u).map_err(Failure::usage)?
            } else {
                extend(&f, &t, &input).map_err(Failure::usage)?
            };
            match &lambda {
                Some(l) => println!(
                    "{}",
                    print_sum(&v.map_coeffs(|c| c.specialize(l)), Format::Ascii)
                ),
                None => println!("{}", print_sum(&v, Format::Ascii)),
            }
        }
    }
    Ok(())
}

fn sample_values<E>(
    raw: &[String],
    mut value: impl FnMut(&str) -> Result<E, Failure>,
) -> Result<Vec<E>, Failure> {
    raw.iter()
        .filter_map(|item| item.split_once('=').map(|(_, v)| v.trim().to_string()))
        .map(|v| value(&v))
        .collect()
}

fn with_basics<E>(mut samples: Vec<E>, zero: E, one: E) -> Vec<E> {
    samples.push(zero);
    samples.push(one);
    samples
}

fn render(a: RenderArgs) -> Result<(), Failure> {
    let format = Format::from(a.format);
    let expr = text::parse(&a.expr).map_err(TextError::from)?;
    if a.raw {
        println!("{}", print_expr(&expr, format));
    } else {
        let value = text::evaluate(&expr).map_err(TextError::from)?;
        println!("{}", value.print(format));
    }
    Ok(())
}
