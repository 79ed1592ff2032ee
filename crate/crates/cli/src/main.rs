mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use nearring_core::analysis::verify_lemma_suite;
use nearring_core::catalog::group_by_name;
use nearring_core::design::{block_design, export_design};
use nearring_core::document::NearringDocument;
use nearring_core::enumeration::{build_manifest, enumerate_planar_nearrings, zp2_family, Filter};
use nearring_core::examples::ferrero_nearring;
use nearring_core::ferrero::{is_planar, PlanarNearring, EXHAUSTIVE_PLANARITY_LIMIT};
use nearring_core::group::Automorphism;
use nearring_core::nearfield::nearfield_by_name;
use nearring_core::nearvector::{make_nearvector_space, TwistSpec};
use nearring_core::Error;

#[derive(Parser)]
#[command(name = "nearring", version, about = "Construct, analyse and enumerate finite planar nearrings")]
struct Cli {
    /// Worker threads for enumeration and planarity checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a nearring and write it as a document.
    Construct(ConstructArgs),
    /// Report distributive elements, ideals, generalized centre and lemma checks.
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        report: Format,
    },
    /// Enumerate planar nearrings up to isomorphism.
    Enumerate {
        #[arg(long)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// JSON manifest destination.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Include full tables in the manifest.
        #[arg(long)]
        tables: bool,
    },
    /// Build a nearvector space and report on its derived nearring.
    Nearvector(NearvectorArgs),
    /// Export the block design of a nearring.
    Bibd {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the lemma checks only.
    Verify { input: PathBuf },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["group", "zp2", "field"])))]
struct ConstructArgs {
    /// Catalog group name, e.g. C9 or C3xC3.
    #[arg(long)]
    group: Option<String>,
    /// Generator of Phi: neg, id, mul:K or perm:A,B,...
    #[arg(long = "phi", requires = "group")]
    phi: Vec<String>,
    #[arg(long, value_delimiter = ',', requires = "group")]
    reps: Vec<usize>,
    #[arg(long, value_delimiter = ',', requires = "group")]
    zero: Vec<usize>,
    /// Member of the Z_{p^2} family for p in {3, 5, 7, 11}.
    #[arg(long)]
    zp2: Option<usize>,
    /// A field order, or dickson9.
    #[arg(long)]
    field: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NearvectorArgs {
    /// A field order, or dickson9.
    #[arg(long)]
    field: String,
    /// Component twists: id, pow:K or map:A,B,... separated by commas.
    #[arg(long)]
    twists: String,
    /// Coordinate to project onto (1-based).
    #[arg(long, default_value_t = 1)]
    coordinate: usize,
    /// Representatives for the orbits inside the projection kernel.
    #[arg(long, value_delimiter = ',')]
    zero: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    report: Format,
    /// Write the derived nearring here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    NontrivialDistributive,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => Filter::All,
            FilterArg::NontrivialDistributive => Filter::NontrivialDistributive,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Theorem(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(_) => Failure::Theorem(e.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_document(path: &Path) -> Result<PlanarNearring, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    Ok(NearringDocument::parse(&text)?.to_nearring()?)
}

fn write_output(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Validation(format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn check_planar(n: &PlanarNearring) -> Outcome {
    let verdict = is_planar(n, n.order() <= EXHAUSTIVE_PLANARITY_LIMIT)?;
    if verdict.is_planar() {
        Ok(())
    } else {
        Err(Failure::Validation(format!("not planar: {verdict:?}")))
    }
}

fn cmd_construct(args: ConstructArgs) -> Outcome {
    let nearring = if let Some(p) = args.zp2 {
        zp2_family(p)?
    } else if let Some(f) = &args.field {
        PlanarNearring::from_nearfield(&nearfield_by_name(f)?)
    } else {
        let name = args.group.as_deref().expect("clap enforces a source");
        let group = group_by_name(name)?;
        let gens = args.phi.iter().map(|s| Automorphism::from_spec(&group, s)).collect::<Result<Vec<_>, _>>()?;
        ferrero_nearring(group, &gens, &args.reps, &args.zero)?
    };
    check_planar(&nearring)?;
    let summary = report::summary(&nearring)?;
    write_output(args.output.as_deref(), &NearringDocument::from_nearring(&nearring).to_text())?;
    if args.output.is_some() {
        emit(&format!("{summary}\n"));
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn cmd_analyze(input: &Path, format: Format) -> Outcome {
    let nearring = read_document(input)?;
    check_planar(&nearring)?;
    let report = report::analysis(&nearring)?;
    match format {
        Format::Text => emit(&report::analysis_text(&report)),
        Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes"))),
    }
    if report.lemmas.has_failures() {
        return Err(Failure::Theorem(format!("{} lemma check(s) failed", report.lemmas.failures().len())));
    }
    Ok(())
}

fn cmd_enumerate(max_order: usize, filter: Filter, manifest: Option<&Path>, tables: bool) -> Outcome {
    if max_order < 2 {
        return Err(Failure::Validation(format!("--max-order must be at least 2, got {max_order}")));
    }
    let classes = enumerate_planar_nearrings(max_order, filter)?;
    let m = build_manifest(&classes, max_order, filter, tables)?;
    if let Some(path) = manifest {
        write_output(Some(path), &m.to_json())?;
    }
    let mut text = String::new();
    for r in &m.classes {
        text.push_str(&format!(
            "{:>4}  order {:>2}  {:<10} |Phi| {:>2}  |D| {:>2}  GC case {}  {}\n",
            r.index, r.order, r.group, r.phi_order, r.distributive, r.gc_case, r.fingerprint
        ));
    }
    text.push_str(&format!("{} classes\n", m.class_count));
    emit(&text);
    Ok(())
}

fn cmd_nearvector(args: NearvectorArgs) -> Outcome {
    let field = nearfield_by_name(&args.field)?;
    let space = make_nearvector_space(&field, &TwistSpec::parse_list(&args.twists)?)?;
    if args.coordinate == 0 || args.coordinate > space.dimension() {
        return Err(Failure::Validation(format!(
            "--coordinate must be between 1 and {}",
            space.dimension()
        )));
    }
    let (report, nearring) = report::nearvector(&space, args.coordinate - 1, args.zero.as_deref())?;
    match args.report {
        Format::Text => emit(&report::nearvector_text(&space, &report)),
        Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes"))),
    }
    if let Some(path) = args.output.as_deref() {
        write_output(Some(path), &NearringDocument::from_nearring(&nearring).to_text())?;
    }
    Ok(())
}

fn cmd_bibd(input: &Path, output: Option<&Path>) -> Outcome {
    let nearring = read_document(input)?;
    write_output(output, &export_design(&block_design(&nearring)?))
}

fn cmd_verify(input: &Path) -> Outcome {
    let nearring = read_document(input)?;
    let lemmas = verify_lemma_suite(&nearring)?;
    emit(&report::lemma_lines(&lemmas));
    if lemmas.has_failures() {
        return Err(Failure::Theorem(format!("{} lemma check(s) failed", lemmas.failures().len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Analyze { input, report } => cmd_analyze(&input, report),
        Command::Enumerate { max_order, filter, manifest, tables } => {
            cmd_enumerate(max_order, filter.into(), manifest.as_deref(), tables)
        }
        Command::Nearvector(args) => cmd_nearvector(args),
        Command::Bibd { input, output } => cmd_bibd(&input, output.as_deref()),
        Command::Verify { input } => cmd_verify(&input),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Theorem(msg)) => {
            eprintln!("THEOREM VIOLATION: {msg}");
            ExitCode::from(3)
        }
    }
}
