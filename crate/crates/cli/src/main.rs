use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use monadforge::frame::misp_verify;
use monadforge::io::{parse_document, render_document, Document};
use monadforge::linalg::field::parse_rat;
use monadforge::linalg::{PrimeField, Rat, DEFAULT_PRIME};
use monadforge::net::{barth_verify, cohomology_table, line_splitting, presentation_any_rank, NetPresentation, QuadricNet};
use monadforge::par::Execution;
use monadforge::plane::{fiber_report, mx_verify, phi_restrict, plane_net, psi_project};
use monadforge::report::{Verdict, VerificationReport, VerifyMode, VerifyOptions};
use monadforge::slice::{gamma_conditions, net_of_octuple};
use monadforge::workbench::{dims_report, orbit_test, search_gamma_points, Ansatz, SearchConfig};
use serde_json::Value;

/// Workbench for instanton monads, nets of quadrics and Barth octuples.
#[derive(Parser)]
#[command(name = "monadforge", version)]
struct Cli {
    /// Write JSON output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Net,
    Octuple,
    Gamma,
    Plane,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension table for charges 1..=N.
    Dims {
        #[arg(long)]
        n: usize,
    },
    /// Verify a net, octuple, frame point or plane net.
    Verify {
        kind: Kind,
        file: PathBuf,
        #[arg(long)]
        mode: Option<VerifyMode>,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Cohomology table h^i(E(t)) over a twist range such as -4..2.
    Cohomology {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        twists: String,
    },
    /// Restrict a net to the plane, or project an octuple to its plane data.
    Restrict { file: PathBuf },
    /// Splitting type on the line through two points.
    SplitLine {
        file: PathBuf,
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, required = true)]
        p1: Vec<String>,
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, required = true)]
        p2: Vec<String>,
    },
    /// Fiber of the plane projection through an octuple or plane point.
    Fiber {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Randomized search for frame points.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value = "dense")]
        ansatz: Ansatz,
        #[arg(long)]
        mode: Option<VerifyMode>,
        #[arg(long)]
        prime: Option<u64>,
        /// Run trials on the current thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Invariance of verdicts and tables under random group elements.
    OrbitTest {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long)]
        mode: Option<VerifyMode>,
    },
}

/// Outcome classes mapped onto process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Blocked,
}

impl Status {
    fn of(report: &VerificationReport) -> Self {
        match report.overall() {
            Verdict::Pass => Status::Pass,
            Verdict::Fail => Status::Fail,
            Verdict::Probable | Verdict::Indeterminate => Status::Blocked,
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Blocked => 2,
        }
    }
}

struct InputError(anyhow::Error);

fn input<T>(r: Result<T>) -> std::result::Result<T, InputError> {
    r.map_err(InputError)
}

fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_document(&text).with_context(|| format!("parsing {}", path.display()))
}

fn resolve_prime(flag: Option<u64>) -> Result<PrimeField> {
    let p = match flag {
        Some(p) => p,
        None => match std::env::var("MONADFORGE_PRIME") {
            Ok(s) => s.trim().parse().with_context(|| format!("MONADFORGE_PRIME={s:?} is not an integer"))?,
            Err(_) => DEFAULT_PRIME,
        },
    };
    Ok(PrimeField::new(p)?)
}

fn options(n: usize, mode: Option<VerifyMode>, prime: Option<u64>) -> Result<VerifyOptions> {
    Ok(VerifyOptions::new(mode.unwrap_or(VerifyMode::default_for(n))).with_prime(resolve_prime(prime)?))
}

fn parse_twists(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| anyhow!("twist range {s:?} must look like A..B"))?;
    let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty twist range {s:?}");
    }
    Ok((a, b))
}

fn parse_point(coords: &[String]) -> Result<Vec<Rat>> {
    coords.iter().map(|c| parse_rat(c).map_err(|e| anyhow!("coordinate {c:?}: {e}"))).collect()
}

fn net_of(doc: &Document) -> Result<QuadricNet<Rat>> {
    match doc {
        Document::Net(net) => Ok(net.clone()),
        Document::Octuple(o) => Ok(net_of_octuple(o)?),
        Document::Sigma(s) => Ok(plane_net(s)),
        Document::Gamma(_) => bail!("a frame point carries no net; use its presentation"),
    }
}

fn presentation_of(doc: &Document) -> Result<NetPresentation<Rat>> {
    match doc {
        Document::Gamma(g) => Ok(g.presentation()),
        other => Ok(presentation_any_rank(&net_of(other)?)),
    }
}

fn subbundle_certified(doc: &Document) -> Result<bool> {
    let report = match doc {
        Document::Gamma(g) => misp_verify(g, &VerifyOptions::exact()),
        Document::Net(net) if net.ambient() == 3 => mx_verify(net, &VerifyOptions::exact())?,
        other => barth_verify(&net_of(other)?, &VerifyOptions::exact()),
    };
    Ok(report.verdict("(ii)") == Some(Verdict::Pass))
}

fn run(cli: &Cli) -> std::result::Result<(Value, Status), InputError> {
    let json = |v: serde_json::Result<Value>| v.expect("outputs serialize");
    match &cli.command {
        Command::Dims { n } => {
            if *n == 0 {
                return Err(InputError(anyhow!("--n must be at least 1")));
            }
            Ok((json(serde_json::to_value(dims_report(*n))), Status::Pass))
        }
        Command::Verify { kind, file, mode, prime } => {
            let doc = input(read_document(file))?;
            let report = match (kind, &doc) {
                (Kind::Net, Document::Net(net)) if net.ambient() == 4 => barth_verify(net, &input(options(net.n(), *mode, *prime))?),
                (Kind::Octuple, Document::Octuple(o)) => gamma_conditions(o, &input(options(o.n(), *mode, *prime))?),
                (Kind::Gamma, Document::Gamma(g)) => misp_verify(g, &input(options(g.n(), *mode, *prime))?),
                (Kind::Plane, Document::Net(net)) if net.ambient() == 3 => input(mx_verify(net, &input(options(net.n(), *mode, *prime))?).map_err(Into::into))?,
                (Kind::Plane, Document::Sigma(s)) => input(mx_verify(&plane_net(s), &input(options(s.n(), *mode, *prime))?).map_err(Into::into))?,
                (_, doc) => return Err(InputError(anyhow!("{} holds {} data, not {} data", file.display(), doc.kind(), kind_name(*kind)))),
            };
            let status = Status::of(&report);
            Ok((json(serde_json::to_value(&report)), status))
        }
        Command::Cohomology { file, twists } => {
            let doc = input(read_document(file))?;
            let (a, b) = input(parse_twists(twists))?;
            let p = input(presentation_of(&doc))?;
            let certified = input(subbundle_certified(&doc))?;
            let table = input(cohomology_table(&p, a, b, certified, Execution::Parallel).map_err(Into::into))?;
            Ok((json(serde_json::to_value(&table)), Status::Pass))
        }
        Command::Restrict { file } => {
            let out = match input(read_document(file))? {
                Document::Net(net) => Document::Net(input(phi_restrict(&net).map_err(Into::into))?),
                Document::Octuple(o) => Document::Sigma(input(psi_project(&o).map_err(Into::into))?),
                other => return Err(InputError(anyhow!("cannot restrict a {} document", other.kind()))),
            };
            Ok((input(serde_json::from_str(&render_document(&out)).map_err(Into::into))?, Status::Pass))
        }
        Command::SplitLine { file, p1, p2 } => {
            let doc = input(read_document(file))?;
            let p = input(presentation_of(&doc))?;
            let (p1, p2) = (input(parse_point(p1))?, input(parse_point(p2))?);
            let split = input(line_splitting(&p, &p1, &p2).map_err(Into::into))?;
            let status = if split.consistent() { Status::Pass } else { Status::Fail };
            Ok((json(serde_json::to_value(&split)), status))
        }
        Command::Fiber { file, samples, seed } => {
            let (sigma, source) = match input(read_document(file))? {
                Document::Octuple(o) => (input(psi_project(&o).map_err(Into::into))?, Some(o)),
                Document::Sigma(s) => (s, None),
                other => return Err(InputError(anyhow!("fiber needs an octuple or sigma document, found {}", other.kind()))),
            };
            let r = input(fiber_report(&sigma, source.as_ref(), *samples, *seed, None).map_err(Into::into))?;
            let ok = r.closed_pass == r.samples && r.source_member != Some(false);
            Ok((json(serde_json::to_value(&r)), if ok { Status::Pass } else { Status::Fail }))
        }
        Command::Search { n, seed, trials, ansatz, mode, prime, sequential } => {
            let prime = input(resolve_prime(*prime))?;
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            let cfg = SearchConfig { n: *n, seed: *seed, trials: *trials, ansatz: *ansatz, mode: mode.unwrap_or(VerifyMode::default_for(*n)), prime: prime.modulus(), exec };
            let out = input(search_gamma_points(&cfg).map_err(Into::into))?;
            Ok((json(serde_json::to_value(&out)), Status::Pass))
        }
        Command::OrbitTest { file, seed, samples, mode } => {
            let doc = input(read_document(file))?;
            let n = match &doc {
                Document::Net(x) => x.n(),
                Document::Octuple(x) => x.n(),
                Document::Gamma(x) => x.n(),
                Document::Sigma(x) => x.n(),
            };
            let r = orbit_test(&doc, *seed, *samples, &input(options(n, *mode, None))?);
            let status = if r.all_hold() { Status::Pass } else { Status::Fail };
            Ok((json(serde_json::to_value(&r)), status))
        }
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Net => "net",
        Kind::Octuple => "octuple",
        Kind::Gamma => "gamma",
        Kind::Plane => "plane",
    }
}

fn emit(out: Option<&Path>, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
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
    match run(&cli) {
        Ok((value, status)) => match emit(cli.out.as_deref(), &value) {
            Ok(()) => ExitCode::from(status.code()),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(3)
            }
        },
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
