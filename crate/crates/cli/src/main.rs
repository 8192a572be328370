use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qecc_core::bounds::{coset_room_bound, family_ell, greedy_bound, twisted_css_bound};
use qecc_core::css::{build_css, build_tau, build_twisted_css, LinearBinaryCode};
use qecc_core::nonadditive::{
    build_cssnonadd, build_greedy_family, build_tau_coset_code, extend_code, greedy_vectors,
    hadamard11, CodebookCode, GreedyConfig,
};
use qecc_core::stabilizer::StabilizerGroup;
use qecc_core::verify::{
    dual_distance_witness, find_distance, find_stabilizer, kl_check_with, nonadd_verdict, KlMode,
    KlOptions, Verdict, WORKERS_ENV,
};
use qecc_core::{Error, QuantumCodeBasis};

#[derive(Parser, Debug)]
#[command(
    name = "qecc",
    version,
    about = "Construct and verify additive and nonadditive quantum codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code basis and write it with a provenance header.
    Construct(ConstructArgs),
    /// Check a basis or stabilizer file.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Print the counting inequalities and the family exponent for (n, k, d).
    Bounds { n: usize, k: usize, d: usize },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Css,
    TwistedCss,
    TauCoset,
    Cssnonadd,
    Hadamard11,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    family: Family,
    /// Linear code file (`n k` header, one generator row per line).
    code: Option<PathBuf>,
    #[arg(long)]
    d: Option<usize>,
    /// Target dimension for tau-coset.
    #[arg(long = "K")]
    k: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Common {
    /// Output file for the report; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Workers {
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Error-correction conditions for every error of weight 1..d-1.
    Kl {
        basis: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "general")]
        mode: KlMode,
        #[arg(long)]
        stop_at_first: bool,
        #[command(flatten)]
        workers: Workers,
        #[command(flatten)]
        common: Common,
    },
    /// Low-weight elements of the symplectic dual outside the group.
    DualDistance {
        stabilizer: PathBuf,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        common: Common,
    },
    /// All Pauli words fixing every basis vector.
    Stabilizer {
        basis: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Nonadditivity criteria against a containing binary code.
    Nonadd {
        basis: PathBuf,
        #[arg(long)]
        containing: PathBuf,
        #[arg(long)]
        ell: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Largest d for which the conditions hold.
    Distance {
        basis: PathBuf,
        #[arg(long, default_value = "general")]
        mode: KlMode,
        #[command(flatten)]
        workers: Workers,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Input(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> qecc_core::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    f(&text).map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn required<T>(value: Option<T>, what: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("missing {what}")))
}

fn construct(args: &ConstructArgs) -> Result<bool, Failure> {
    let code_name = args
        .code
        .as_ref()
        .map_or_else(|| "-".to_string(), |p| p.display().to_string());
    let load = || -> Result<LinearBinaryCode, Failure> {
        let path = required(args.code.as_deref(), "code file")?;
        parse(path, LinearBinaryCode::from_text)
    };
    let mut notes = Vec::new();
    let basis = match args.family {
        Family::Css => build_css(&load()?)?,
        Family::TwistedCss => {
            let code = load()?;
            build_twisted_css(&code, &build_tau(&code)?)?
        }
        Family::TauCoset => {
            let code = load()?;
            let cfg = GreedyConfig::new(code, required(args.d, "--d")?)?;
            match args.k {
                None => {
                    let fam = build_greedy_family(&cfg)?;
                    notes = fam.notes;
                    fam.basis
                }
                Some(target) => tau_coset_with_target(&cfg, target)?,
            }
        }
        Family::Cssnonadd => {
            let build = build_cssnonadd(&load()?, required(args.d, "--d")?)?;
            notes = build.bounds.iter().map(ToString::to_string).collect();
            build.basis
        }
        Family::Hadamard11 => hadamard11(),
    };
    let d = basis
        .distance()
        .map_or_else(|| "?".to_string(), |d| d.to_string());
    let mut comments = vec![format!(
        "CONSTRUCT {} {code_name} d={d} K={}",
        family_name(args.family),
        basis.dimension()
    )];
    comments.extend(notes);
    emit(args.out.as_deref(), &basis.to_text(&comments))?;
    Ok(true)
}

fn tau_coset_with_target(cfg: &GreedyConfig, target: usize) -> Result<QuantumCodeBasis, Failure> {
    if target == 0 {
        return Err(Failure::Usage("--K must be positive".into()));
    }
    let n = cfg.code().n();
    let greedy = greedy_vectors(cfg, n)?;
    let take = (target - 1).min(n);
    let start = build_tau_coset_code(cfg, &greedy[..take])?;
    if target <= take + 1 {
        return Ok(start);
    }
    let ext = extend_code(&start, cfg, target)?;
    if !ext.reached {
        return Err(Failure::Domain(format!(
            "extension stopped at K={} before reaching {target}",
            ext.basis.dimension()
        )));
    }
    Ok(ext.basis)
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Css => "css",
        Family::TwistedCss => "twisted-css",
        Family::TauCoset => "tau-coset",
        Family::Cssnonadd => "cssnonadd",
        Family::Hadamard11 => "hadamard11",
    }
}

fn verify(cmd: &VerifyCommand) -> Result<bool, Failure> {
    match cmd {
        VerifyCommand::Kl {
            basis,
            d,
            mode,
            stop_at_first,
            workers,
            common,
        } => {
            let basis = parse(basis, QuantumCodeBasis::from_text)?;
            let options = KlOptions {
                mode: *mode,
                workers: workers.workers,
                stop_at_first: *stop_at_first,
            };
            let report = kl_check_with(&basis, *d, &options)?;
            emit(common.out.as_deref(), &report.to_text())?;
            Ok(report.passed())
        }
        VerifyCommand::DualDistance {
            stabilizer,
            d,
            common,
        } => {
            let s = parse(stabilizer, StabilizerGroup::from_text)?;
            let witness = dual_distance_witness(&s, *d);
            let mut text = format!(
                "DUAL-DISTANCE d={d} result={}\n",
                if witness.is_none() { "pass" } else { "fail" }
            );
            if let Some(w) = &witness {
                text.push_str(&format!("witness {w}\n"));
            }
            emit(common.out.as_deref(), &text)?;
            Ok(witness.is_none())
        }
        VerifyCommand::Stabilizer { basis, common } => {
            let basis = parse(basis, QuantumCodeBasis::from_text)?;
            let s = find_stabilizer(&basis)?;
            let text = format!("STABILIZER generators={}\n{}", s.len(), s.to_text());
            emit(common.out.as_deref(), &text)?;
            Ok(true)
        }
        VerifyCommand::Nonadd {
            basis,
            containing,
            ell,
            common,
        } => {
            let basis = parse(basis, QuantumCodeBasis::from_text)?;
            let book = parse(containing, CodebookCode::from_text)?;
            let v = nonadd_verdict(&basis, &book, *ell)?;
            emit(common.out.as_deref(), &v.to_text())?;
            Ok(v.verdict != Verdict::Inconclusive)
        }
        VerifyCommand::Distance {
            basis,
            mode,
            workers,
            common,
        } => {
            let basis = parse(basis, QuantumCodeBasis::from_text)?;
            let d = find_distance(&basis, *mode, workers.workers)?;
            emit(
                common.out.as_deref(),
                &format!("DISTANCE mode={mode} d={d}\n"),
            )?;
            Ok(true)
        }
    }
}

fn bounds(n: usize, k: usize, d: usize) -> Result<bool, Failure> {
    if n == 0 || d == 0 {
        return Err(Failure::Usage("n and d must be positive".into()));
    }
    let mut text = String::new();
    for ineq in [
        greedy_bound(n, k, d),
        twisted_css_bound(n, k, d),
        coset_room_bound(n, k),
    ] {
        text.push_str(&ineq.to_string());
        text.push('\n');
    }
    match family_ell(n, k, d) {
        Some(ell) => text.push_str(&format!("ell={ell}\n")),
        None => text.push_str("ell=none\n"),
    }
    emit(None, &text)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify(cmd) => verify(cmd),
        Command::Bounds { n, k, d } => bounds(*n, *k, *d),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
