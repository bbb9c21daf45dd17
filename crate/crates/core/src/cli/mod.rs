//! The `arq` command line.

mod fixture;
mod suites;

use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{build_algebra, Algebra, QuiverPresentation};
use crate::ar::{ar_sequence, ar_triangle_ending_at, sample_objects, verify_ar_triangle, Outcome};
use crate::complex::{decompose_complex, presentation_complex, PerfectComplex};
use crate::error::{Error, Result};
use crate::explorer::{
    component_slice, diagram_ascii, diagram_dot, diagram_json, homology_diagram, slice_ascii, slice_dot, slice_json,
    stabilization, DEFAULT_NODE_BUDGET,
};
use crate::module::{decompose, Representation};

pub use fixture::{FixtureKind, FixtureSpec};
pub use suites::{
    random_indecomposables, run_suite, sample_indecomposables, sample_modules, Suite, SuiteOptions, SuiteReport,
};

use fixture::read_file;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Ascii,
}

#[derive(Debug, Parser)]
#[command(name = "arq", version, about = "Auslander-Reiten triangles and components of perfect complexes")]
pub struct Cli {
    /// Algebra presentation file (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub algebra: Option<String>,
    /// Built-in algebra: kt:n:p or nakayama:m:N:p.
    #[arg(long, global = true, value_name = "SPEC")]
    pub fixture: Option<String>,
    /// Module file (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub module: Option<String>,
    /// Complex file (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub complex: Option<String>,
    /// Use the simple module at this vertex.
    #[arg(long, global = true, value_name = "VERTEX")]
    pub simple: Option<String>,
    /// Use the stalk complex of the projective at this vertex, in degree 0.
    #[arg(long, global = true, value_name = "VERTEX")]
    pub stalk: Option<String>,
    #[arg(long, global = true, default_value_t = 3)]
    pub depth: usize,
    /// Number of columns of a slice.
    #[arg(long, global = true, default_value_t = 5)]
    pub width: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node budget for slices.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra and print its invariants.
    AlgebraCheck {
        /// Algebra file; defaults to --algebra or --fixture.
        file: Option<String>,
    },
    /// Print the presentation of --fixture as JSON.
    Fixture,
    /// Auslander-Reiten sequences and triangles.
    Ar {
        #[command(subcommand)]
        kind: ArKind,
    },
    /// Slices, homology diagrams and stabilization of a component.
    Component {
        #[command(subcommand)]
        kind: ComponentKind,
    },
    /// Run a property suite and print a JSON verdict.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Lengths for big-homology.
        #[arg(long, value_delimiter = ',', default_values_t = [3, 5, 7])]
        lengths: Vec<usize>,
        /// Number of random complexes drawn.
        #[arg(long, default_value_t = 30)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, Subcommand)]
pub enum ArKind {
    /// The sequence ending at a module.
    Seq,
    /// The triangle ending at a complex.
    Triangle,
}

#[derive(Clone, Copy, Debug, Subcommand)]
pub enum ComponentKind {
    Slice,
    Homology,
    Stabilize,
}

/// Parse `args`, run, print to `out` and return the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn load_algebra(cli: &Cli) -> Result<Arc<Algebra>> {
    match (&cli.algebra, &cli.fixture) {
        (Some(path), _) => build_algebra(&QuiverPresentation::from_json(&read_file(path)?)?),
        (None, Some(spec)) => spec.parse::<FixtureSpec>()?.build(),
        (None, None) => Err(Error::Invalid("no algebra given; use --algebra FILE or --fixture SPEC".into())),
    }
}

fn vertex(alg: &Algebra, label: &str) -> Result<usize> {
    alg.presentation().vertex_index(label).ok_or_else(|| Error::Invalid(format!("unknown vertex {label:?}")))
}

fn load_module(cli: &Cli, alg: &Arc<Algebra>) -> Result<Option<Representation>> {
    if let Some(path) = &cli.module {
        return Ok(Some(Representation::from_json(alg, &read_file(path)?)?));
    }
    if let Some(v) = &cli.simple {
        return Ok(Some(Representation::simple(alg, vertex(alg, v)?)));
    }
    Ok(None)
}

fn require_module(cli: &Cli, alg: &Arc<Algebra>) -> Result<Representation> {
    load_module(cli, alg)?.ok_or_else(|| Error::Invalid("no module given; use --module FILE or --simple VERTEX".into()))
}

/// `--complex`, else `--stalk`, else the presentation complex of the module.
fn load_complex(cli: &Cli, alg: &Arc<Algebra>) -> Result<PerfectComplex> {
    if let Some(path) = &cli.complex {
        return PerfectComplex::from_json(alg, &read_file(path)?);
    }
    if let Some(v) = &cli.stalk {
        return Ok(PerfectComplex::stalk(alg, &[vertex(alg, v)?], 0));
    }
    match load_module(cli, alg)? {
        Some(m) => presentation_complex(&m),
        None => Err(Error::Invalid("no complex given; use --complex FILE, --stalk VERTEX, --module FILE or --simple VERTEX".into())),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn summand_dims(m: &Representation) -> Result<Vec<usize>> {
    let mut dims: Vec<usize> = decompose(m, 0)?.iter().flat_map(|(x, k)| vec![x.dim(); *k]).collect();
    dims.sort_unstable();
    Ok(dims)
}

fn no_dot(what: &str) -> Error {
    Error::Invalid(format!("{what} has no DOT rendering"))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::AlgebraCheck { file } => {
            let alg = match file {
                Some(path) => build_algebra(&QuiverPresentation::from_json(&read_file(path)?)?)?,
                None => load_algebra(cli)?,
            };
            algebra_check(&alg, cli.format, out)?;
            Ok(0)
        }
        Command::Fixture => {
            let spec: FixtureSpec =
                cli.fixture.as_deref().ok_or_else(|| Error::Invalid("fixture needs --fixture SPEC".into()))?.parse()?;
            writeln!(out, "{}", spec.presentation()?.to_json())?;
            Ok(0)
        }
        Command::Ar { kind: ArKind::Seq } => {
            let alg = load_algebra(cli)?;
            ar_seq(&require_module(cli, &alg)?, cli.format, out)
        }
        Command::Ar { kind: ArKind::Triangle } => {
            let alg = load_algebra(cli)?;
            ar_triangle(&load_complex(cli, &alg)?, cli.format, out)
        }
        Command::Component { kind } => {
            let alg = load_algebra(cli)?;
            let z = load_complex(cli, &alg)?;
            component(cli, *kind, &z, out)?;
            Ok(0)
        }
        Command::Verify { suite, lengths, samples } => {
            let spec = match (&cli.algebra, &cli.fixture) {
                (Some(path), _) => FixtureSpec { kind: FixtureKind::File(path.clone()), seed: 0 },
                (None, Some(s)) => s.parse()?,
                (None, None) => FixtureSpec::kt(3, 3),
            }
            .with_seed(cli.seed);
            let opts = SuiteOptions { lengths: lengths.clone(), depth: cli.depth, samples: *samples };
            let report = run_suite(*suite, &spec, &opts)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn algebra_check(alg: &Arc<Algebra>, format: Option<Format>, out: &mut dyn Write) -> Result<()> {
    let labels: Vec<&str> = (0..alg.num_vertices()).map(|v| alg.vertex_label(v)).collect();
    let perm: Option<Vec<&str>> = alg.nakayama_permutation().map(|p| p.iter().map(|&v| labels[v]).collect());
    let identity = alg.nakayama_permutation().is_some_and(|p| p.iter().enumerate().all(|(i, &v)| i == v));
    match format {
        Some(Format::Json) => {
            let doc = json!({
                "dimension": alg.dim(),
                "vertices": labels,
                "cartan_matrix": alg.cartan_matrix(),
                "loewy_length": alg.loewy_length(),
                "self_injective": alg.is_self_injective(),
                "nakayama_permutation": perm,
                "symmetric": alg.is_symmetric(),
                "semisimple_summand": !alg.has_no_semisimple_summand(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Some(Format::Dot) => return Err(no_dot("algebra-check")),
        _ => {
            writeln!(out, "dimension: {}", alg.dim())?;
            writeln!(out, "vertices: {}", labels.join(", "))?;
            writeln!(out, "loewy length: {}", alg.loewy_length())?;
            writeln!(out, "cartan matrix:")?;
            for row in alg.cartan_matrix() {
                writeln!(out, "  {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))?;
            }
            writeln!(out, "self-injective: {}", yes(alg.is_self_injective()))?;
            if let Some(p) = &perm {
                if identity {
                    writeln!(out, "nakayama permutation: π = id")?;
                } else {
                    let maps: Vec<String> = labels.iter().zip(p).map(|(a, b)| format!("{a} -> {b}")).collect();
                    writeln!(out, "nakayama permutation: π = {}", maps.join(", "))?;
                }
            }
            writeln!(out, "symmetric: {}", yes(alg.is_symmetric()))?;
            writeln!(out, "semisimple summand: {}", yes(!alg.has_no_semisimple_summand()))?;
        }
    }
    Ok(())
}

fn ar_seq(m: &Representation, format: Option<Format>, out: &mut dyn Write) -> Result<i32> {
    let s = ar_sequence(m)?;
    let report = s.verify()?;
    let middle = summand_dims(&s.middle)?;
    match format {
        Some(Format::Json) => {
            let doc = json!({
                "tau_m": s.tau_m.to_doc(),
                "middle": s.middle.to_doc(),
                "end": s.end.to_doc(),
                "dims": { "tau_m": s.tau_m.dims(), "middle": s.middle.dims(), "end": s.end.dims() },
                "middle_summand_dims": middle,
                "report": report,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Some(Format::Dot) => return Err(no_dot("an Auslander-Reiten sequence")),
        _ => {
            writeln!(out, "0 -> tau M -> E -> M -> 0")?;
            writeln!(out, "tau M: dim {}, dimension vector {:?}", s.tau_m.dim(), s.tau_m.dims())?;
            writeln!(out, "E: dim {}, dimension vector {:?}, summand dims {:?}", s.middle.dim(), s.middle.dims(), middle)?;
            writeln!(out, "M: dim {}, dimension vector {:?}", s.end.dim(), s.end.dims())?;
            writeln!(out, "injective: {}", yes(report.injective))?;
            writeln!(out, "surjective: {}", yes(report.surjective))?;
            writeln!(out, "exact in the middle: {}", yes(report.exact_in_middle))?;
            writeln!(out, "non-split: {}", yes(report.non_split))?;
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn ar_triangle(z: &PerfectComplex, format: Option<Format>, out: &mut dyn Write) -> Result<i32> {
    let t = ar_triangle_ending_at(z)?;
    let report = verify_ar_triangle(&t, &sample_objects(z.algebra()));
    let mut lengths = decompose_complex(&t.b, 0)?.iter().map(|s| s.complex.length()).collect::<Result<Vec<_>>>()?;
    lengths.sort_unstable();
    let indecomposable = lengths.len() == 1;
    match format {
        Some(Format::Json) => {
            let doc = json!({
                "a": t.a.to_doc(),
                "b": t.b.to_doc(),
                "c": t.c.to_doc(),
                "middle_summand_lengths": lengths,
                "middle_indecomposable": indecomposable,
                "checks": report.checks,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Some(Format::Dot) => return Err(no_dot("a triangle")),
        _ => {
            for (name, x) in [("A", &t.a), ("B", &t.b), ("C", &t.c)] {
                writeln!(out, "{name}:")?;
                write!(out, "{}", x.to_ascii())?;
            }
            writeln!(out, "middle summand lengths: {lengths:?}")?;
            if indecomposable {
                writeln!(out, "middle: indecomposable")?;
            }
            for c in &report.checks {
                let verdict = match &c.outcome {
                    Outcome::Pass => "pass".to_string(),
                    Outcome::Fail(m) => format!("FAIL ({m})"),
                    Outcome::Skipped(m) => format!("skipped ({m})"),
                };
                writeln!(out, "{}: {verdict}", c.name)?;
            }
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn component(cli: &Cli, kind: ComponentKind, z: &PerfectComplex, out: &mut dyn Write) -> Result<()> {
    let budget = cli.budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let format = cli.format.unwrap_or(Format::Ascii);
    match kind {
        ComponentKind::Slice => {
            let s = component_slice(z, cli.depth, cli.width, budget)?;
            let text = match format {
                Format::Json => slice_json(&s)?,
                Format::Dot => slice_dot(&s)?,
                Format::Ascii => slice_ascii(&s)?,
            };
            write!(out, "{}", text.trim_end())?;
            writeln!(out)?;
        }
        ComponentKind::Homology => {
            let d = homology_diagram(&component_slice(z, cli.depth, cli.width, budget)?)?;
            let text = match format {
                Format::Json => diagram_json(&d)?,
                Format::Dot => diagram_dot(&d),
                Format::Ascii => diagram_ascii(&d),
            };
            write!(out, "{}", text.trim_end())?;
            writeln!(out)?;
        }
        ComponentKind::Stabilize => {
            let st = stabilization(z)?;
            let summands = summand_dims(&st.module)?;
            match format {
                Format::Json => {
                    let doc = json!({
                        "module": st.module.to_doc(),
                        "dim": st.module.dim(),
                        "dims": st.module.dims(),
                        "summand_dims": summands,
                        "position": st.position,
                        "projective_rim": st.projective_rim,
                        "stable": st.stable,
                        "wing_rim_factors": st.wing_rim_factors,
                        "wing_rim_dims": st.wing_rim.iter().map(|m| m.dims().to_vec()).collect::<Vec<_>>(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                }
                Format::Dot => return Err(no_dot("a stabilization module")),
                Format::Ascii => {
                    writeln!(out, "Σ: dim {}, dimension vector {:?}, summand dims {:?}", st.module.dim(), st.module.dims(), summands)?;
                    writeln!(out, "position: {:?}", st.position)?;
                    writeln!(out, "stable one step further down: {}", yes(st.stable))?;
                    match st.wing_rim_factors {
                        Some(ok) => writeln!(out, "composition factors match the wing rim: {}", yes(ok))?,
                        None => writeln!(out, "composition factors: not applicable in a projective component")?,
                    }
                }
            }
        }
    }
    Ok(())
}
