use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use immersa::census::census_table;
use immersa::cycles::enumerate_cycles;
use immersa::epsilon::Target;
use immersa::immersion::{CrossingKind, PlaneImmersion};
use immersa::io::{
    format_number, parse_diagram_with, parse_graph, parse_immersion_with, serialize_immersion,
};
use immersa::report::{
    diagram_checks, run_fuzz, run_verify, CheckGroup, CycleCache, FuzzOptions, ReportError,
    RunReport, Theorem,
};
use immersa::scalar::Scalar;
use immersa::standard::standard_immersion;
use immersa::svg::{diagram_svg, immersion_svg};
use immersa::zero_rotation::{construct_zero_rotation, ZeroRotationError};
use immersa::{ExactDiagram, MultiGraph};

const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;
const REFUSED: u8 = 3;

/// Crossing, rotation and cycle-census invariants of plane immersed graphs.
#[derive(Parser)]
#[command(name = "immersa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle census: counts and α/β columns per cycle length.
    Census {
        /// Graph file or shorthand such as @PG.
        graph: String,
        /// Comma-separated cycle lengths; default is every length present.
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Checks that an immersion is generic.
    Validate { input: String },
    /// Lists crossings with their kind, distance class and sign.
    Crossings { input: String },
    /// Checks a theorem's parity statements on one immersion.
    Verify {
        input: String,
        /// PG-parity, HG-parity, K4, K33, K5 or Tm; inferred from the graph if omitted.
        #[arg(long)]
        theorem: Option<String>,
    },
    /// ℒ of a diagram over the Petersen or Heawood graph.
    Invariant {
        diagram: String,
        #[arg(long)]
        which: Option<String>,
    },
    /// Thurston–Bennequin sums of a diagram.
    Tb {
        diagram: String,
        /// `all` or comma-separated cycle lengths.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        k: Vec<String>,
    },
    /// Builds an immersion in which every cycle has rotation number zero.
    Construct {
        #[arg(long)]
        graph: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Checks a theorem over seeded random immersions (and random lifts).
    Fuzz {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 200)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random lifts per immersion, for ℒ and TB checks.
        #[arg(long, default_value_t = 0)]
        lifts: u64,
        /// Comma-separated subset of parity, kappa, rot, L, tb-ratio.
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
        #[arg(long)]
        theorem: Option<String>,
        /// Directory for counterexample files.
        #[arg(long, default_value = "counterexamples")]
        out: PathBuf,
    },
    /// Renders an immersion or diagram as SVG.
    Render {
        input: String,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: USAGE,
        message: message.to_string(),
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("immersa: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(spec: &str) -> Result<MultiGraph, Failure> {
    let text = if spec.starts_with('@') {
        spec.to_string()
    } else {
        read(Path::new(spec))?
    };
    parse_graph(&text).map_err(|e| usage(format!("{spec}: {e}")))
}

/// Resolves `graph <path>` headers relative to the file that names them.
fn resolver(base: Option<&Path>) -> impl FnMut(&str) -> Option<MultiGraph> + '_ {
    move |reference| {
        let path = base.map_or_else(|| PathBuf::from(reference), |b| b.join(reference));
        parse_graph(&fs::read_to_string(path).ok()?).ok()
    }
}

fn load_immersion(spec: &str) -> Result<PlaneImmersion, Failure> {
    if spec.starts_with('@') {
        return standard_immersion(spec).map_err(usage);
    }
    let path = Path::new(spec);
    let text = read(path)?;
    parse_immersion_with(&text, &mut resolver(path.parent()))
        .map_err(|e| usage(format!("{spec}: {e}")))
}

fn load_diagram(spec: &str) -> Result<ExactDiagram, Failure> {
    let path = Path::new(spec);
    let text = read(path)?;
    parse_diagram_with(&text, &mut resolver(path.parent()))
        .map_err(|e| usage(format!("{spec}: {e}")))
}

fn is_diagram_text(text: &str) -> bool {
    text.lines().any(|l| l.trim_start().starts_with("over "))
}

fn parse_theorem(name: Option<&str>, g: &MultiGraph) -> Result<Theorem, Failure> {
    match name {
        Some(n) => n.parse().map_err(usage),
        None => Theorem::for_graph(g).ok_or_else(|| usage(ReportError::NoTheorem)),
    }
}

fn target_of(which: Option<&str>, g: &MultiGraph) -> Result<Target, Failure> {
    match which {
        Some(w) => w.parse().map_err(usage),
        None => Theorem::for_graph(g)
            .and_then(Theorem::diagram_target)
            .ok_or_else(|| usage("the diagram's graph is neither PG nor HG; pass --which")),
    }
}

fn verdict(report: &RunReport) -> u8 {
    print!("{}", report.render());
    if report.ok() {
        0
    } else {
        CHECK_FAILED
    }
}

fn command_line() -> String {
    let mut args = std::env::args();
    args.next();
    std::iter::once("immersa".to_string())
        .chain(args)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Census { graph, k, format } => {
            let g = load_graph(&graph)?;
            let ks = if k.is_empty() { census_lengths(&g) } else { k };
            let census = census_table(&g, &ks);
            match format {
                Format::Table => print!("{}", census.to_table(&g)),
                Format::Tsv => print!("{}", census.to_tsv()),
            }
            Ok(0)
        }
        Command::Validate { input } => {
            let imm = load_immersion(&input)?;
            let report = imm.validate();
            if report.ok {
                println!(
                    "generic: {} crossings",
                    imm.crossings().map(<[_]>::len).unwrap_or(0)
                );
                return Ok(0);
            }
            println!("not generic: {} violations", report.violations.len());
            for v in &report.violations {
                println!("  {}", v.describe(imm.graph()));
            }
            Ok(CHECK_FAILED)
        }
        Command::Crossings { input } => {
            let imm = load_immersion(&input)?;
            let g = imm.graph();
            let crossings = imm.crossings().map_err(usage)?;
            println!("label\tx\ty\tkind\tdistance\tsign");
            for c in crossings {
                let kind = match c.kind {
                    CrossingKind::SelfCrossing => "self",
                    CrossingKind::Adjacent => "adjacent",
                    CrossingKind::Disjoint => "disjoint",
                };
                println!(
                    "{}\t{}\t{}\t{kind}\t{}\t{:+}",
                    c.id.label(g),
                    format_number(&c.point.x.to_rational()),
                    format_number(&c.point.y.to_rational()),
                    c.distance,
                    c.sign
                );
            }
            Ok(0)
        }
        Command::Verify { input, theorem } => {
            let imm = load_immersion(&input)?;
            let theorem = parse_theorem(theorem.as_deref(), imm.graph())?;
            Ok(verdict(&run_verify(&command_line(), &imm, theorem, &[])?))
        }
        Command::Invariant { diagram, which } => {
            let d = load_diagram(&diagram)?;
            let target = target_of(which.as_deref(), d.immersion().graph())?;
            let cache = CycleCache::new(d.immersion().graph());
            let mut checks = diagram_checks(&d, target, &cache)?;
            checks.retain(|c| c.group == CheckGroup::L);
            let mut ok = true;
            for c in &checks {
                ok &= c.passed();
                println!(
                    "{}\t{}\texpected {}\t{}",
                    c.name,
                    c.value,
                    c.expect,
                    if c.passed() { "PASS" } else { "FAIL" }
                );
            }
            Ok(if ok { 0 } else { CHECK_FAILED })
        }
        Command::Tb { diagram, k } => {
            let d = load_diagram(&diagram)?;
            let g = d.immersion().graph();
            let mut lengths: Vec<Option<usize>> = Vec::new();
            for item in &k {
                if item == "all" {
                    lengths.extend(census_lengths(g).into_iter().map(Some));
                    lengths.push(None);
                } else {
                    lengths.push(Some(
                        item.parse()
                            .map_err(|_| usage(format!("bad cycle length `{item}`")))?,
                    ));
                }
            }
            for k in lengths {
                match k {
                    Some(k) => println!("TB{k}\t{}", d.tb(Some(k))),
                    None => println!("TB\t{}", d.tb(None)),
                }
            }
            let Some(target) = Theorem::for_graph(g).and_then(Theorem::diagram_target) else {
                return Ok(0);
            };
            let cache = CycleCache::new(g);
            let checks = diagram_checks(&d, target, &cache)?;
            let mut ok = true;
            for c in checks.iter().filter(|c| c.group == CheckGroup::TbRatio) {
                ok &= c.passed();
                println!(
                    "{}\t{}\texpected {}\t{}",
                    c.name,
                    c.value,
                    c.expect,
                    if c.passed() { "PASS" } else { "FAIL" }
                );
            }
            Ok(if ok { 0 } else { CHECK_FAILED })
        }
        Command::Construct { graph, output, svg } => {
            let g = load_graph(&graph)?;
            let construction = match construct_zero_rotation(&g) {
                Ok(c) => c,
                Err(e @ ZeroRotationError::HasK4Minor { .. }) => {
                    return Err(Failure {
                        code: REFUSED,
                        message: e.to_string(),
                    });
                }
                Err(e) => return Err(usage(e)),
            };
            let text = serialize_immersion(&construction.immersion);
            match output {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?
                }
                None => print!("{text}"),
            }
            if let Some(path) = svg {
                fs::write(&path, immersion_svg(&construction.immersion))
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            Ok(0)
        }
        Command::Fuzz {
            graph,
            n,
            seed,
            lifts,
            check,
            theorem,
            out,
        } => {
            let g = load_graph(&graph)?;
            let theorem = parse_theorem(theorem.as_deref(), &g)?;
            let groups = check
                .iter()
                .map(|c| c.parse::<CheckGroup>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            if lifts > 0 && theorem.diagram_target().is_none() {
                eprintln!("immersa: note: lifts are only checked on PG and HG");
            }
            let opts = FuzzOptions {
                seed,
                count: n,
                lifts,
                out_dir: Some(out),
                groups,
            };
            Ok(verdict(&run_fuzz(&command_line(), &g, theorem, &opts)?))
        }
        Command::Render { input, output } => {
            let svg = if !input.starts_with('@') && is_diagram_text(&read(Path::new(&input))?) {
                diagram_svg(&load_diagram(&input)?)
            } else {
                immersion_svg(&load_immersion(&input)?)
            };
            fs::write(&output, svg).map_err(|e| usage(format!("{}: {e}", output.display())))?;
            Ok(0)
        }
    }
}

fn census_lengths(g: &MultiGraph) -> Vec<usize> {
    let mut ks: Vec<usize> = enumerate_cycles(g, None).iter().map(|c| c.len()).collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}
