//! `procsm`: command-line access to fans, Chow groups, CSM classes and the
//! verification routines of `toric-procsm`.
//!
//! Exit codes: 0 on success or when a verification holds, 1 when a fan is
//! invalid or a verification fails, 2 on any other error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use toric_procsm::chern_oracle::verify_dagger;
use toric_procsm::chow::{chow_group_invariants, pushforward_cycle, TCycle};
use toric_procsm::constructible::{one_x, pushforward, ConstructibleFunction};
use toric_procsm::csm::{csm, degree_zero_part, verify_naturality, Comparison};
use toric_procsm::fan::{Fan, ToricMorphism};
use toric_procsm::format::{parse_coefficients, parse_fan, print_coefficients, read_diagram, read_fan, read_matrix};
use toric_procsm::prochow::{procsm_family, procsm_of_base, verify_compatibility};
use toric_procsm::product::verify_product_formula;
use toric_procsm::{Error, Result};

#[derive(Parser)]
#[command(name = "procsm", version, about = "CSM classes and Chow groups of toric varieties")]
struct Cli {
    /// Print coefficient lists `{i,j}:c` instead of human-readable classes
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fan file and report smoothness, completeness and cone counts
    Validate { fan: PathBuf },
    /// CSM class of a constructible function
    Csm(FanFunction),
    /// Invariants of the Chow groups A_k for every k
    Chow {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Euler characteristic of a constructible function
    Euler(FanFunction),
    /// Push a function (Euler characteristic) or a cycle forward
    Push(PushArgs),
    /// Compare f_* csm(a) with csm(f_* a)
    Naturality(MorphismFunction),
    /// Compare the tangent Chern class with the orbit-closure sum
    ChernOracle {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Check the product formula for CSM classes
    Product(ProductArgs),
    /// Check compatibility of the CSM family over a diagram of completions
    ProchowVerify(DiagramArgs),
    /// Run one verification; exit code 0 if it holds
    Verify {
        kind: Kind,
        #[command(flatten)]
        inputs: VerifyInputs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Naturality,
    Dagger,
    Product,
    Prochow,
}

#[derive(Args)]
struct FanFunction {
    #[arg(long)]
    fan: PathBuf,
    /// `oneX`, a coefficient list such as `{0}:1 {}:2`, or `@FILE`
    #[arg(long, default_value = "oneX")]
    function: String,
}

#[derive(Args)]
struct MorphismArgs {
    /// Matrix file
    #[arg(long)]
    morphism: PathBuf,
    #[arg(long)]
    source: PathBuf,
    #[arg(long)]
    target: PathBuf,
}

#[derive(Args)]
struct MorphismFunction {
    #[command(flatten)]
    morphism: MorphismArgs,
    #[arg(long, default_value = "oneX")]
    function: String,
}

#[derive(Args)]
struct PushArgs {
    #[command(flatten)]
    morphism: MorphismArgs,
    #[arg(long, conflicts_with = "cycle")]
    function: Option<String>,
    /// A cycle as a coefficient list or `@FILE`
    #[arg(long)]
    cycle: Option<String>,
}

#[derive(Args)]
struct ProductArgs {
    /// The two factors
    #[arg(long, num_args = 2, required = true)]
    fan: Vec<PathBuf>,
    /// Functions on the two factors, `oneX` by default
    #[arg(long, num_args = 2)]
    function: Vec<String>,
}

#[derive(Args)]
struct DiagramArgs {
    #[arg(long)]
    diagram: PathBuf,
    /// Function on the base fan
    #[arg(long, default_value = "oneX")]
    function: String,
}

#[derive(Args)]
struct VerifyInputs {
    #[arg(long, num_args = 1..=2)]
    fan: Vec<PathBuf>,
    #[arg(long)]
    morphism: Option<PathBuf>,
    #[arg(long)]
    source: Option<PathBuf>,
    #[arg(long)]
    target: Option<PathBuf>,
    #[arg(long)]
    diagram: Option<PathBuf>,
    #[arg(long, num_args = 1..=2)]
    function: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn missing(flag: &str) -> Error {
    Error::Io {
        path: flag.to_string(),
        message: "required for this verification".to_string(),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let porcelain = cli.porcelain;
    match &cli.command {
        Command::Validate { fan } => validate(fan),
        Command::Csm(args) => cmd_csm(args, porcelain),
        Command::Chow { fan } => {
            let fan = read_fan(fan)?;
            let invariants = chow_group_invariants(&fan);
            for k in (0..=fan.rank()).rev() {
                println!("A_{k}: {}", invariants[k]);
            }
            Ok(true)
        }
        Command::Euler(args) => {
            let fan = load(&args.fan)?;
            println!("{}", function(&fan, &args.function)?.euler_characteristic());
            Ok(true)
        }
        Command::Push(args) => cmd_push(args, porcelain),
        Command::Naturality(args) => naturality(&args.morphism, &args.function, porcelain),
        Command::ChernOracle { fan } => report(&verify_dagger(&load(fan)?)?, porcelain),
        Command::Product(args) => product(&args.fan, &args.function, porcelain),
        Command::ProchowVerify(args) => prochow(&args.diagram, &args.function),
        Command::Verify { kind, inputs } => verify(*kind, inputs, porcelain),
    }
}

fn verify(kind: Kind, inputs: &VerifyInputs, porcelain: bool) -> Result<bool> {
    let first_function = || inputs.function.first().cloned().unwrap_or_else(|| "oneX".into());
    match kind {
        Kind::Naturality => {
            let morphism = MorphismArgs {
                morphism: inputs.morphism.clone().ok_or_else(|| missing("--morphism"))?,
                source: inputs.source.clone().ok_or_else(|| missing("--source"))?,
                target: inputs.target.clone().ok_or_else(|| missing("--target"))?,
            };
            naturality(&morphism, &first_function(), porcelain)
        }
        Kind::Dagger => {
            let fan = inputs.fan.first().ok_or_else(|| missing("--fan"))?;
            report(&verify_dagger(&load(fan)?)?, porcelain)
        }
        Kind::Product => {
            if inputs.fan.len() != 2 {
                return Err(missing("--fan (two files)"));
            }
            product(&inputs.fan, &inputs.function, porcelain)
        }
        Kind::Prochow => {
            let diagram = inputs.diagram.as_ref().ok_or_else(|| missing("--diagram"))?;
            prochow(diagram, &first_function())
        }
    }
}

fn load(path: &Path) -> Result<Arc<Fan>> {
    Ok(Arc::new(read_fan(path)?))
}

/// Text of a `--function` or `--cycle` argument: inline, or `@FILE`.
fn input_text(input: &str) -> Result<String> {
    match input.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_string(),
            message: e.to_string(),
        }),
        None => Ok(input.to_string()),
    }
}

fn coefficients(fan: &Arc<Fan>, input: &str) -> Result<Vec<(toric_procsm::fan::ConeId, BigInt)>> {
    parse_coefficients(fan, &input_text(input)?)
}

fn function(fan: &Arc<Fan>, input: &str) -> Result<ConstructibleFunction> {
    if input == "oneX" {
        return Ok(one_x(fan.clone()));
    }
    Ok(ConstructibleFunction::from_terms(fan.clone(), coefficients(fan, input)?))
}

fn cycle(fan: &Arc<Fan>, input: &str) -> Result<TCycle> {
    Ok(TCycle::from_terms(fan.clone(), coefficients(fan, input)?))
}

fn print_cycle(z: &TCycle, porcelain: bool) {
    if porcelain {
        print!("{}", print_coefficients(z.fan(), z.coeffs()));
    } else {
        println!("{z}");
    }
}

fn validate(path: &Path) -> Result<bool> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    match parse_fan(&text) {
        Ok(fan) => {
            let counts: Vec<String> = fan.cone_counts().iter().map(|c| c.to_string()).collect();
            println!(
                "valid, {}, {}, cones: {}",
                if fan.is_smooth() { "smooth" } else { "singular" },
                if fan.is_complete() { "complete" } else { "not complete" },
                counts.join("/")
            );
            Ok(true)
        }
        Err(e) => {
            println!("invalid: {}:{e}", path.display());
            Ok(false)
        }
    }
}

fn cmd_csm(args: &FanFunction, porcelain: bool) -> Result<bool> {
    let fan = load(&args.fan)?;
    let alpha = function(&fan, &args.function)?;
    let class = csm(&alpha);
    print_cycle(&class, porcelain);
    if porcelain {
        return Ok(true);
    }
    let chi = alpha.euler_characteristic();
    match degree_zero_part(&class) {
        Ok(degree) => {
            println!("degree: {degree}");
            println!("euler characteristic: {chi}");
            Ok(degree == chi)
        }
        Err(Error::NotComplete) => {
            println!("degree: not complete: degree undefined");
            println!("euler characteristic: {chi}");
            Ok(true)
        }
        Err(e) => Err(e),
    }
}

fn morphism(args: &MorphismArgs) -> Result<ToricMorphism> {
    let matrix = read_matrix(&args.morphism)?;
    let source = load(&args.source)?;
    let target = if args.source == args.target {
        source.clone()
    } else {
        load(&args.target)?
    };
    ToricMorphism::new(matrix, source, target)
}

fn cmd_push(args: &PushArgs, porcelain: bool) -> Result<bool> {
    let fm = morphism(&args.morphism)?;
    match (&args.function, &args.cycle) {
        (_, Some(input)) => {
            let z = cycle(fm.source(), input)?;
            print_cycle(&pushforward_cycle(&fm, &z)?, porcelain);
        }
        (input, None) => {
            let alpha = function(fm.source(), input.as_deref().unwrap_or("oneX"))?;
            let pushed = pushforward(&fm, &alpha)?;
            print!("{}", print_coefficients(pushed.fan(), pushed.coeffs()));
        }
    }
    Ok(true)
}

fn report(cmp: &Comparison, porcelain: bool) -> Result<bool> {
    if porcelain {
        println!("{}", if cmp.holds { "holds" } else { "fails" });
    } else {
        println!("{cmp}");
    }
    Ok(cmp.holds)
}

fn naturality(args: &MorphismArgs, input: &str, porcelain: bool) -> Result<bool> {
    let fm = morphism(args)?;
    let alpha = function(fm.source(), input)?;
    report(&verify_naturality(&fm, &alpha)?, porcelain)
}

fn product(fans: &[PathBuf], inputs: &[String], porcelain: bool) -> Result<bool> {
    let (f1, f2) = (load(&fans[0])?, load(&fans[1])?);
    let input = |i: usize| inputs.get(i).map(String::as_str).unwrap_or("oneX");
    let (alpha, beta) = (function(&f1, input(0))?, function(&f2, input(1))?);
    let cmp = verify_product_formula(&alpha, &beta)?;
    let (a, b) = (alpha.euler_characteristic(), beta.euler_characteristic());
    let holds = report(&cmp, porcelain)?;
    let chi = cmp.left.point_sum();
    if !porcelain {
        println!("euler characteristic: {a} * {b} = {chi}");
    }
    Ok(holds && a * b == chi)
}

fn prochow(path: &Path, input: &str) -> Result<bool> {
    let diagram = read_diagram(path)?;
    let alpha = function(diagram.base(), input)?;
    let fam = procsm_family(&alpha, &diagram)?;
    let report = verify_compatibility(&fam)?;
    println!("{report}");
    if input == "oneX" {
        procsm_of_base(&alpha, &diagram)?;
        println!("family equals the sum of distinguished classes at every node");
    }
    Ok(report.holds())
}
