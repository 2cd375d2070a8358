//! The `tensor-duality` command line.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or input
//! error, 3 size cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::io::{element_to_json, read_json, AmplitudeJson, ModelFile, PropagatorJson, RatFuncJson};
use crate::model::{
    duality_check, enumerate_invariants, gaussian_expectation, perturbative_expansion, ExpectationOptions, Propagator,
    SlotSymmetry, StrandedGraph, DEFAULT_ENUMERATION_CAP,
};
use crate::oracle::compare_with_pipeline;
use crate::rational::format_q;
use crate::representation::{decompose_projector_as_propagator, irreducible_projector, traceless_projector, GradedForm, ProjectorReport};
use crate::young::YoungDiagram;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tensor-duality", version, about = "Exact Brauer-algebra and Wick-expansion computations for O(N) and Sp(N) tensor models")]
struct Cli {
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for Wick sums
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// GL(N) dimension polynomial of a Young diagram and of its transpose
    Dim {
        /// Row lengths, comma separated, e.g. 2,1,1
        lambda: String,
    },
    /// Traceless or irreducible projector at concrete N
    Projector(ProjectorArgs),
    /// Gaussian expectation of an invariant as a polynomial in N
    Amplitude(GraphArgs),
    /// Check that b=1 amplitudes equal b=0 amplitudes at -N
    DualityCheck(DualityArgs),
    /// List connected invariants up to relabeling
    Enumerate(EnumerateArgs),
    /// Perturbative expansion of a model to a given number of vertices
    Expand(ExpandArgs),
    /// Compare the face-counting expectation with brute-force index sums
    OracleCheck(OracleArgs),
}

#[derive(Args, Debug)]
struct ProjectorArgs {
    /// Traceless projector on D strands
    #[arg(long = "D", conflicts_with = "lambda", required_unless_present = "lambda")]
    d: Option<usize>,
    /// Irreducible projector for this Young diagram (comma separated rows)
    #[arg(long)]
    lambda: Option<String>,
    /// Concrete dimension N
    #[arg(long = "N")]
    n: usize,
    /// Grading bit: 0 orthogonal, 1 symplectic
    #[arg(long, default_value_t = 0)]
    b: u8,
    /// Also print the irreducible projector in the diagram basis
    #[arg(long, requires = "lambda")]
    decompose: bool,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Stranded graph JSON file
    #[arg(long)]
    graph: PathBuf,
    /// Propagator JSON file
    #[arg(long)]
    propagator: PathBuf,
    /// Grading bit: 0 orthogonal, 1 symplectic
    #[arg(long, default_value_t = 0)]
    b: u8,
}

#[derive(Args, Debug)]
struct DualityArgs {
    /// Model JSON file; checks every interaction and every expansion term
    #[arg(long, conflicts_with_all = ["graph", "propagator"], required_unless_present_all = ["graph", "propagator"])]
    model: Option<PathBuf>,
    /// Expansion order used with --model
    #[arg(long, default_value_t = 2)]
    order: usize,
    #[arg(long, requires = "propagator")]
    graph: Option<PathBuf>,
    #[arg(long, requires = "graph")]
    propagator: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long = "D")]
    d: usize,
    /// Number of tensors (even)
    #[arg(long)]
    vertices: usize,
    /// Treat the slots of a tensor as interchangeable
    #[arg(long)]
    slot_symmetry: bool,
    /// Bound on the enumeration work
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u128,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 2)]
    order: usize,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    input: GraphArgs,
    /// Concrete dimension N
    #[arg(long = "N")]
    n: usize,
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let options = ExpectationOptions {
        reference: None,
        threads: cli.threads.max(1),
    };
    let json = cli.json;
    match &cli.command {
        Command::Dim { lambda } => dim(lambda, json, out),
        Command::Projector(args) => projector(args, json, out),
        Command::Amplitude(args) => amplitude(args, &options, json, out),
        Command::DualityCheck(args) => duality(args, &options, json, out),
        Command::Enumerate(args) => enumerate(args, json, out),
        Command::Expand(args) => expand(args, &options, json, out),
        Command::OracleCheck(args) => oracle(args, &options, json, out),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::Parse(format!("cannot write output: {e}")))
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    write_out(out, &format!("{text}\n"))
}

fn read_file<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    read_json(&text)
}

fn load_graph_and_propagator(graph: &Path, propagator: &Path, grading: Grading) -> Result<(StrandedGraph, Propagator)> {
    let graph: StrandedGraph = read_file(graph)?;
    let propagator: PropagatorJson = read_file(propagator)?;
    let propagator = propagator.to_propagator(graph.strand_count(), grading)?;
    Ok((graph, propagator))
}

fn dim(lambda: &str, json: bool, out: &mut dyn Write) -> Result<i32> {
    let lambda = YoungDiagram::parse(lambda)?;
    let transpose = lambda.transpose();
    let holds = lambda.dimension_duality_check();
    let rows = |y: &YoungDiagram| y.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
    if json {
        print_json(
            out,
            &json!({
                "lambda": lambda.rows(),
                "dimension": lambda.gl_dimension_factored(),
                "polynomial": lambda.gl_dimension_poly().to_coeff_map(),
                "transpose": transpose.rows(),
                "transpose_dimension": transpose.gl_dimension_factored(),
                "transpose_polynomial": transpose.gl_dimension_poly().to_coeff_map(),
                "duality": holds,
            }),
        )?;
    } else {
        write_out(
            out,
            &format!(
                "{}\nexpanded: {}\ntranspose ({}): {}\nexpanded: {}\ndim(lambda, -N) = (-1)^{} dim(lambda', N): {}\n",
                lambda.gl_dimension_factored(),
                lambda.gl_dimension_poly().display_in("N"),
                rows(&transpose),
                transpose.gl_dimension_factored(),
                transpose.gl_dimension_poly().display_in("N"),
                lambda.size(),
                if holds { "holds" } else { "fails" },
            ),
        )?;
    }
    Ok(if holds { EXIT_OK } else { EXIT_FALSE })
}

fn projector(args: &ProjectorArgs, json: bool, out: &mut dyn Write) -> Result<i32> {
    let form = GradedForm::new(args.n, Grading::from_bit(args.b)?)?;
    let (label, report, lambda): (String, ProjectorReport, Option<YoungDiagram>) = match (&args.d, &args.lambda) {
        (Some(d), None) => (format!("traceless D={d}"), traceless_projector(*d, &form)?, None),
        (None, Some(l)) => {
            let lambda = YoungDiagram::parse(l)?;
            (format!("irreducible lambda=({l})"), irreducible_projector(&lambda, &form)?, Some(lambda))
        }
        _ => return Err(Error::Parse("give exactly one of --D and --lambda".into())),
    };
    let decomposition = match (&lambda, args.decompose) {
        (Some(lambda), true) => Some(decompose_projector_as_propagator(lambda, &form)?),
        _ => None,
    };
    if json {
        let mut value = json!({
            "projector": label,
            "N": args.n,
            "b": args.b,
            "trace": format_q(&report.trace),
            "rank": report.rank,
            "idempotent": report.idempotent,
            "element": element_to_json(&report.element),
        });
        if let Some(dec) = &decomposition {
            let terms: Vec<_> = dec
                .iter()
                .map(|(diagram, c)| json!({"diagram": crate::io::DiagramJson::from(diagram), "coeff": format_q(c)}))
                .collect();
            value["decomposition"] = json!(terms);
        }
        print_json(out, &value)?;
    } else {
        let mut text = format!(
            "{label}, N={}, b={}\ntrace: {}\nrank: {}\nidempotent: {}\nterms: {}\n",
            args.n,
            args.b,
            format_q(&report.trace),
            report.rank,
            report.idempotent,
            report.element.len()
        );
        if let Some(dec) = &decomposition {
            text.push_str("decomposition:\n");
            for (diagram, c) in dec {
                text.push_str(&format!("  {} {}\n", format_q(c), diagram));
            }
        }
        write_out(out, &text)?;
    }
    Ok(if report.idempotent { EXIT_OK } else { EXIT_FALSE })
}

fn amplitude(args: &GraphArgs, options: &ExpectationOptions, json: bool, out: &mut dyn Write) -> Result<i32> {
    let grading = Grading::from_bit(args.b)?;
    let (graph, propagator) = load_graph_and_propagator(&args.graph, &args.propagator, grading)?;
    let value = gaussian_expectation(&graph, &propagator, grading, options)?;
    if json {
        print_json(out, &AmplitudeJson::from(&value))?;
    } else {
        write_out(out, &format!("{}\n", value.value().display_in("N")))?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DualityLine {
    label: String,
    orthogonal: RatFuncJson,
    symplectic: RatFuncJson,
    holds: bool,
}

fn duality(args: &DualityArgs, options: &ExpectationOptions, json: bool, out: &mut dyn Write) -> Result<i32> {
    let mut lines = Vec::new();
    let mut record = |label: String, report: crate::model::DualityReport| {
        lines.push(DualityLine {
            label,
            orthogonal: RatFuncJson::from(report.orthogonal.value()),
            symplectic: RatFuncJson::from(report.symplectic.value()),
            holds: report.holds,
        });
        (report.orthogonal.value().display_in("N"), report.symplectic.value().display_in("N"))
    };
    let mut text = String::new();
    match (&args.model, &args.graph, &args.propagator) {
        (Some(path), None, None) => {
            let file: ModelFile = read_file(path)?;
            let model = file.to_model()?;
            for interaction in model.interactions() {
                let report = duality_check(&interaction.graph, model.propagator(), options)?;
                let holds = report.holds;
                let (o, s) = record(format!("<{}>", interaction.name), report);
                text.push_str(&format!("<{}>: b=0: {o}; b=1: {s}; {}\n", interaction.name, verdict(holds)));
            }
            let orthogonal = perturbative_expansion(&model.with_grading(Grading::Orthogonal), args.order, options)?;
            let symplectic = perturbative_expansion(&model.with_grading(Grading::Symplectic), args.order, options)?;
            for (o, s) in orthogonal.iter().zip(&symplectic) {
                let holds = s.amplitude.value() == o.amplitude.dual().value();
                let label = o.monomial(&model);
                let report = crate::model::DualityReport {
                    orthogonal: o.amplitude.clone(),
                    symplectic: s.amplitude.clone(),
                    holds,
                };
                let (ot, st) = record(format!("term {label}"), report);
                text.push_str(&format!("term {label}: b=0: {ot}; b=1: {st}; {}\n", verdict(holds)));
            }
        }
        (None, Some(graph), Some(propagator)) => {
            let graph: StrandedGraph = read_file(graph)?;
            let propagator: PropagatorJson = read_file(propagator)?;
            let propagator = propagator.to_propagator(graph.strand_count(), Grading::Orthogonal)?;
            let report = duality_check(&graph, &propagator, options)?;
            let holds = report.holds;
            let (o, s) = record("graph".into(), report);
            text.push_str(&format!("b=0: {o}\nb=1: {s}\n{}\n", verdict(holds)));
        }
        _ => return Err(Error::Parse("give --model, or both --graph and --propagator".into())),
    }
    let all = lines.iter().all(|l| l.holds);
    if json {
        print_json(out, &json!({ "checks": lines, "holds": all }))?;
    } else {
        text.push_str(&format!("duality {}\n", if all { "holds" } else { "fails" }));
        write_out(out, &text)?;
    }
    Ok(if all { EXIT_OK } else { EXIT_FALSE })
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn enumerate(args: &EnumerateArgs, json: bool, out: &mut dyn Write) -> Result<i32> {
    let symmetry = if args.slot_symmetry { SlotSymmetry::Full } else { SlotSymmetry::None };
    let graphs = enumerate_invariants(args.d, args.vertices, symmetry, args.cap)?;
    if json {
        print_json(out, &graphs)?;
    } else {
        let mut text = format!("{} connected invariant(s) with D={}, {} tensors\n", graphs.len(), args.d, args.vertices);
        for g in &graphs {
            text.push_str(&serde_json::to_string(g).map_err(|e| Error::Parse(e.to_string()))?);
            text.push('\n');
        }
        write_out(out, &text)?;
    }
    Ok(EXIT_OK)
}

fn expand(args: &ExpandArgs, options: &ExpectationOptions, json: bool, out: &mut dyn Write) -> Result<i32> {
    let file: ModelFile = read_file(&args.model)?;
    let model = file.to_model()?;
    let terms = perturbative_expansion(&model, args.order, options)?;
    if json {
        let rows: Vec<_> = terms
            .iter()
            .map(|t| {
                json!({
                    "powers": t.powers,
                    "monomial": t.monomial(&model),
                    "coefficient": format_q(&t.coefficient),
                    "amplitude": RatFuncJson::from(t.amplitude.value()),
                })
            })
            .collect();
        print_json(out, &json!({ "b": model.grading().bit(), "order": args.order, "terms": rows }))?;
    } else {
        let mut text = format!("b={}, order {}\n", model.grading().bit(), args.order);
        for t in &terms {
            text.push_str(&format!(
                "{} | {} | {}\n",
                t.monomial(&model),
                format_q(&t.coefficient),
                t.amplitude.value().display_in("N")
            ));
        }
        write_out(out, &text)?;
    }
    Ok(EXIT_OK)
}

fn oracle(args: &OracleArgs, options: &ExpectationOptions, json: bool, out: &mut dyn Write) -> Result<i32> {
    let grading = Grading::from_bit(args.input.b)?;
    let (graph, propagator) = load_graph_and_propagator(&args.input.graph, &args.input.propagator, grading)?;
    let cmp = compare_with_pipeline(&graph, &propagator, args.n, grading, options)?;
    let agrees = cmp.agrees();
    if json {
        print_json(
            out,
            &json!({
                "N": args.n,
                "b": args.input.b,
                "pipeline": format_q(&cmp.pipeline),
                "oracle": format_q(&cmp.oracle),
                "agrees": agrees,
            }),
        )?;
    } else {
        write_out(
            out,
            &format!(
                "pipeline: {}\noracle: {}\n{}\n",
                format_q(&cmp.pipeline),
                format_q(&cmp.oracle),
                if agrees { "agree" } else { "DISAGREE" }
            ),
        )?;
    }
    Ok(if agrees { EXIT_OK } else { EXIT_FALSE })
}
