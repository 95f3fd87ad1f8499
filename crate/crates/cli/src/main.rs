//! `perfcode`: build Hamming codes, admissible component families and the
//! switched perfect codes they produce, then verify them by brute force.
//!
//! Exit status: 0 when the requested property holds, 1 when it is violated
//! or the input fails validation, 2 for unusable input or an exceeded cap.

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use perfcode::family::{self, ColumnChoice, Flavor, LambdaCode, SwitchFamily};
use perfcode::io as files;
use perfcode::verify::{self, Mode, PerfectCodeOracle, VerifyReport};
use perfcode::{Error, HammingCode, PointIndex};

#[derive(Parser)]
#[command(name = "perfcode", version, about = "Switched q-ary 1-perfect codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the parity-check matrix of the Hamming code of length (q^m-1)/(q-1).
    Hamming {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the dimension and a basis of the i-component R_i.
    Component {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        /// 1-based column index of H.
        #[arg(long)]
        i: usize,
    },
    /// Lift a lambda file into a family of components and write a family file.
    Build {
        lambda: PathBuf,
        /// Override the flavor named in the lambda file.
        #[arg(long)]
        flavor: Option<String>,
        /// Number of extra columns; shorthand for --flavor binary-extended:K.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        columns: ColumnArgs,
        /// Skip validation of the lambda words.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Switch the Hamming code along a family.
    Switch {
        family: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// List every codeword instead of writing a descriptor.
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Check a property by brute force.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ColumnArgs {
    /// Comma-separated base columns (m of them); default is the unit columns.
    #[arg(long, value_delimiter = ',')]
    base: Option<Vec<usize>>,
    /// Comma-separated extra columns, each the sum of two base columns.
    #[arg(long, value_delimiter = ',')]
    extra: Option<Vec<usize>>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Property {
    Perfect,
    Mindist,
    Admissible,
    Embed,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct VerifyArgs {
    what: Property,
    /// Family or switch descriptor file; the code checked is the switched one.
    #[arg(long)]
    family: Option<PathBuf>,
    /// Code file listing every codeword.
    #[arg(long)]
    code: Option<PathBuf>,
    /// Hamming code field order.
    #[arg(long, requires = "m")]
    q: Option<u32>,
    #[arg(long, requires = "q")]
    m: Option<usize>,
    /// Lambda file, for `embed`.
    #[arg(long)]
    lambda: Option<PathBuf>,
    #[command(flatten)]
    columns: ColumnArgs,
    /// Also scan for codewords outside the embedded words.
    #[arg(long)]
    strong: bool,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Enumeration cap; defaults to PERFCODE_CAP or 2^26.
    #[arg(long)]
    cap: Option<u64>,
    /// Print `-` instead of the elapsed time so output is byte-stable.
    #[arg(long)]
    no_timing: bool,
}

/// A failure that ends the run with a given exit status.
#[derive(Debug)]
enum Failure {
    /// A checked property does not hold, or input failed validation.
    Violated(String),
    /// Input could not be used.
    Invalid(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Violated(m) | Failure::Invalid(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { required, cap } => Failure::Invalid(format!(
                "enumeration needs {required} items but the cap is {cap}; raise --cap or {}, or use --mode sampled",
                perfcode::CAP_ENV_VAR
            )),
            Error::InvalidLambda(_)
            | Error::NotAdmissible(..)
            | Error::DegenerateLambda { .. }
            | Error::AnchorInChoice { .. }
            | Error::RepresentativeInComponent { .. } => Failure::Violated(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn with_output<F>(out: Option<&Path>, f: F) -> Outcome
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn resolve_cap(flag: Option<u64>) -> std::result::Result<u64, Failure> {
    match flag {
        Some(c) => Ok(c),
        None => Ok(perfcode::cap_from_env()?),
    }
}

fn points(code: &HammingCode, labels: &[usize]) -> std::result::Result<Vec<PointIndex>, Failure> {
    Ok(labels.iter().map(|&i| code.point(i)).collect::<perfcode::Result<_>>()?)
}

fn choice(code: &HammingCode, args: &ColumnArgs, k: usize) -> std::result::Result<ColumnChoice, Failure> {
    let default = family::default_choice(code, k)?;
    let base = match &args.base {
        Some(b) => points(code, b)?,
        None => default.base().to_vec(),
    };
    let extra = match &args.extra {
        Some(e) => points(code, e)?,
        None => default.extra().to_vec(),
    };
    Ok(ColumnChoice::new(code, base, extra)?)
}

fn load_lambda(path: &Path, flavor: Option<&str>, k: Option<usize>) -> std::result::Result<LambdaCode, Failure> {
    let mut lam = files::parse_lambda_file(&read(path)?)?;
    if let Some(f) = flavor {
        lam = lam.with_flavor(Flavor::parse(f)?);
    }
    if let Some(k) = k {
        lam = lam.with_flavor(Flavor::BinaryExtended { k });
    }
    Ok(lam)
}

/// The Hamming code a lambda code embeds into: length = m + k.
fn host_code(lam: &LambdaCode) -> std::result::Result<HammingCode, Failure> {
    let k = lam.flavor().k();
    let m = lam
        .length()
        .checked_sub(k)
        .filter(|&m| m >= 2)
        .ok_or_else(|| Failure::Invalid(format!("lambda length {} is too short for k = {k}", lam.length())))?;
    Ok(HammingCode::build(lam.field().q() as u32, m)?)
}

fn cmd_hamming(q: u32, m: usize, out: Option<&Path>) -> Outcome {
    let code = HammingCode::build(q, m)?;
    let text = files::render_parity_check(&code);
    with_output(out, |w| w.write_all(text.as_bytes()))
}

fn cmd_component(q: u32, m: usize, i: usize) -> Outcome {
    let code = HammingCode::build(q, m)?;
    let point = code.point(i)?;
    let comp = perfcode::components::component_basis(&code, point);
    let basis = comp.basis();
    let mut text = format!("# component R_{i}\n# dim {}\n", comp.dim());
    text.push_str(&files::render_code_file(code.q(), code.m(), code.n(), &basis));
    with_output(None, |w| w.write_all(text.as_bytes()))
}

fn cmd_build(
    lambda: &Path,
    flavor: Option<&str>,
    k: Option<usize>,
    columns: &ColumnArgs,
    force: bool,
    out: Option<&Path>,
) -> Outcome {
    let lam = load_lambda(lambda, flavor, k)?;
    let code = host_code(&lam)?;
    let choice = choice(&code, columns, lam.flavor().k())?;

    let report = family::validate_lambda(&lam);
    if !report.is_ok() {
        println!("lambda invalid");
        println!("{report}");
        if !force {
            return Err(Failure::Violated("lambda code rejected".into()));
        }
    } else {
        println!("lambda valid");
    }

    let fam = family::build_family(&code, &choice, &lam, force)?;
    let mut violated = None;
    match family::check_representatives(&fam) {
        Ok(()) => println!("representatives outside their components: pass"),
        Err(e) => {
            println!("representatives outside their components: fail ({e})");
            violated = Some(e.to_string());
        }
    }
    match family::check_admissible(&fam) {
        Ok(()) => println!("admissible: pass"),
        Err(e) => {
            println!("admissible: fail ({e})");
            violated = Some(e.to_string());
        }
    }

    let columns: Vec<String> = choice.columns().map(|p| p.to_string()).collect();
    let mut text = format!("# columns {}\n", columns.join(","));
    text.push_str(&files::render_family_file(&fam));
    with_output(out, |w| w.write_all(text.as_bytes()))?;
    match violated {
        Some(v) => Err(Failure::Violated(v)),
        None => Ok(()),
    }
}

fn load_family(path: &Path) -> std::result::Result<SwitchFamily, Failure> {
    Ok(files::parse_family_file(&read(path)?)?)
}

fn cmd_switch(path: &Path, out: Option<&Path>, enumerate: bool, cap: Option<u64>) -> Outcome {
    let fam = load_family(path)?;
    let t = family::switch(&fam)?;
    let code = fam.code();
    if enumerate {
        let cap = resolve_cap(cap)?;
        if t.size() > cap as u128 {
            return Err(Error::CapExceeded {
                required: t.size(),
                cap,
            }
            .into());
        }
        let mut io_result = Ok(());
        with_output(out, |w| {
            writeln!(w, "{} {} {}", code.q(), code.m(), code.n())?;
            let mut line = Vec::with_capacity(code.n() + 1);
            t.for_each_member(cap, |x| {
                if io_result.is_ok() {
                    line.clear();
                    line.extend(x.iter().map(|d| b'0' + d));
                    line.push(b'\n');
                    io_result = w.write_all(&line);
                }
            })
            .expect("size checked against cap");
            std::mem::replace(&mut io_result, Ok(()))
        })
    } else {
        let mut text = String::from("# switched code: the family's cosets are moved by mu at their anchors\n");
        text.push_str(&files::render_family_file(&fam));
        with_output(out, |w| w.write_all(text.as_bytes()))
    }
}

struct Printer {
    timing: bool,
}

impl Printer {
    fn report(&self, r: &VerifyReport) {
        if self.timing {
            println!("{r}");
        } else {
            let line = r.to_string();
            let mut fields: Vec<&str> = line.splitn(7, ' ').collect();
            fields[5] = "-";
            println!("{}", fields.join(" "));
        }
    }
}

fn oracle_from(args: &VerifyArgs) -> std::result::Result<(PerfectCodeOracle, Option<SwitchFamily>), Failure> {
    let given = [args.family.is_some(), args.code.is_some(), args.q.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err(Failure::Invalid(
            "give exactly one of --family, --code or --q/--m".into(),
        ));
    }
    if let Some(path) = &args.family {
        let fam = load_family(path)?;
        let t = family::switch(&fam)?;
        return Ok((PerfectCodeOracle::switched(t), Some(fam)));
    }
    if let Some(path) = &args.code {
        let file = files::parse_code_file(&read(path)?)?;
        let f = perfcode::gf::field(file.q as u32)?;
        return Ok((PerfectCodeOracle::explicit(&f, file.n, file.vectors)?, None));
    }
    let code = HammingCode::build(args.q.unwrap(), args.m.unwrap())?;
    Ok((PerfectCodeOracle::hamming(&code), None))
}

fn mode_of(args: &VerifyArgs) -> Mode {
    match args.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Sampled => Mode::Sampled {
            seed: args.seed,
            samples: args.samples,
        },
    }
}

fn verdict(r: &VerifyReport) -> Outcome {
    if r.passed {
        Ok(())
    } else {
        Err(Failure::Violated(format!("{} failed", r.property)))
    }
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let cap = resolve_cap(args.cap)?;
    let printer = Printer {
        timing: !args.no_timing,
    };
    match args.what {
        Property::Admissible => {
            let path = args
                .family
                .as_ref()
                .ok_or_else(|| Failure::Invalid("verify admissible needs --family".into()))?;
            let fam = load_family(path)?;
            let pairs = (fam.t() * fam.t().saturating_sub(1) / 2) as u128;
            let report = match family::check_admissible(&fam) {
                Ok(()) => VerifyReport::new("admissible", Mode::Exhaustive, true, pairs),
                Err(Error::NotAdmissible(r, s)) => VerifyReport::new("admissible", Mode::Exhaustive, false, pairs)
                    .with_counterexample(format!("entries:{r},{s}")),
                Err(e) => return Err(e.into()),
            };
            printer.report(&report);
            verdict(&report)
        }
        Property::Perfect => {
            let (oracle, _) = oracle_from(args)?;
            let report = verify::is_perfect(&oracle, mode_of(args), cap)?;
            printer.report(&report);
            verdict(&report)
        }
        Property::Mindist => {
            let (oracle, _) = oracle_from(args)?;
            let d = verify::min_distance(&oracle, cap)?;
            println!("min_distance {d}");
            if d >= 3 {
                Ok(())
            } else {
                Err(Failure::Violated(format!("minimum distance {d} is below 3")))
            }
        }
        Property::Embed => {
            let path = args
                .lambda
                .as_ref()
                .ok_or_else(|| Failure::Invalid("verify embed needs --lambda".into()))?;
            let lam = load_lambda(path, None, None)?;
            let (oracle, fam) = oracle_from(args)?;
            let code = match &fam {
                Some(f) => f.code().clone(),
                None => host_code(&lam)?,
            };
            let choice = choice(&code, &args.columns, lam.flavor().k())?;
            let weak = verify::embedding_check(&lam, &choice, &oracle, false, cap)?;
            printer.report(&weak);
            if !args.strong {
                return verdict(&weak);
            }
            let strong = verify::embedding_check(&lam, &choice, &oracle, true, cap)?;
            printer.report(&strong);
            if !lam.flavor().embeds_strongly() {
                println!(
                    "note: strong embedding is not expected for flavor {}; reported for information",
                    lam.flavor()
                );
                return verdict(&weak);
            }
            verdict(&weak).and(verdict(&strong))
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Hamming { q, m, out } => cmd_hamming(q, m, out.as_deref()),
        Command::Component { q, m, i } => cmd_component(q, m, i),
        Command::Build {
            lambda,
            flavor,
            k,
            columns,
            force,
            out,
        } => cmd_build(&lambda, flavor.as_deref(), k, &columns, force, out.as_deref()),
        Command::Switch {
            family,
            out,
            enumerate,
            cap,
        } => cmd_switch(&family, out.as_deref(), enumerate, cap),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violated(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
