//! Front end for `fmeas-core`: reads JSON setup files and prints exact
//! tables and verification reports.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fmeas_core::frattini::{frattini_subgroup, has_embedding_property, DEFAULT_EMBEDDING_BOUND};
use fmeas_core::invsys::{level_kernel, CompleteSystem};
use fmeas_core::measure::{MeasureConfig, MeasureEngine, DEFAULT_TUPLE_CAP};
use fmeas_core::verify::{self, Check};

pub mod error;
pub mod golden;
pub mod setup;

pub use error::CliError;
use setup::{Loaded, Source};

#[derive(Debug, Parser)]
#[command(
    name = "fmeas",
    version,
    about = "Exact measures on lattices of regular subextensions"
)]
pub struct Cli {
    /// Upper bound on translation tuples enumerated per transition row.
    #[arg(long, global = true, default_value_t = DEFAULT_TUPLE_CAP)]
    pub cap: u128,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the members of the lattice.
    Lattice { file: PathBuf },
    /// Print a measure on the lattice, or its value on an event.
    Measure {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Inf)]
        mode: Mode,
        /// Number of steps for `--mode iter`.
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long)]
        event: Option<String>,
    },
    /// Run invariant suites against the setup.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Frattini subgroup and maximal subgroups of the group.
    Frattini { file: PathBuf },
    /// Exhaustive embedding-property check.
    Embedding {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EMBEDDING_BOUND)]
        bound: usize,
    },
    /// Complete system of the group, or one of its levels.
    Invsys {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        level: Option<u64>,
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Mu1,
    Iter,
    Inf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lifts,
    Markov,
    Tower,
    Frattini,
    Invsys,
    All,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = String::new();
    match execute(cli, &mut out) {
        Ok(()) => Outcome {
            code: error::EXIT_OK,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses `args` (without the program name) and runs on a fresh pool of
/// `threads` workers.
pub fn run_with_threads<I, S>(args: I, threads: usize) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv =
        std::iter::once(std::ffi::OsString::from("fmeas")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return Outcome {
                code: error::EXIT_VALIDATION,
                stdout: String::new(),
                stderr: e.to_string(),
            }
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| run(&cli))
}

fn execute(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    let config = MeasureConfig { tuple_cap: cli.cap };
    match &cli.command {
        Command::Lattice { file } => {
            let loaded = Source::read(file)?.load()?;
            lattice_table(&loaded, out);
        }
        Command::Measure {
            file,
            mode,
            steps,
            event,
        } => {
            let loaded = Source::read(file)?.load()?;
            let engine = MeasureEngine::from_lattice(loaded.lattice.clone(), &config)?;
            let mu = match mode {
                Mode::Mu1 => engine.mu1(),
                Mode::Iter => engine.mu_i(*steps),
                Mode::Inf => engine.mu_infinity()?,
            };
            match event {
                None => writeln!(out, "{mu}").unwrap(),
                Some(name) => {
                    let members = loaded
                        .events
                        .get(name)
                        .ok_or_else(|| CliError::UnknownEvent(name.clone()))?;
                    writeln!(out, "{}", mu.event(members)?).unwrap();
                }
            }
        }
        Command::Verify { file, suite } => {
            let source = Source::read(file)?;
            let group = source.group()?;
            let needs_setup = !matches!(suite, Suite::Frattini | Suite::Invsys);
            let loaded = if needs_setup || source.file.sigma.is_some() {
                Some(source.load()?)
            } else {
                None
            };
            let checks = run_suites(*suite, &group, loaded.as_ref(), &config, out)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} passed, {failed} failed", checks.len() - failed).unwrap();
            if failed > 0 {
                return Err(CliError::VerificationFailed(failed));
            }
        }
        Command::Frattini { file } => {
            let group = Source::read(file)?.group()?;
            let report = frattini_subgroup(&group)?;
            let phi = &report.frattini_subgroup;
            writeln!(out, "frattini {} order {}", phi.name(), phi.order()).unwrap();
            writeln!(out, "maximal subgroups {}", report.maximal_subgroups.len()).unwrap();
            for m in &report.maximal_subgroups {
                writeln!(out, "  {} order {}", m.name(), m.order()).unwrap();
            }
        }
        Command::Embedding { file, bound } => {
            let group = Source::read(file)?.group()?;
            let report = has_embedding_property(&group, *bound)?;
            writeln!(
                out,
                "embedding property {} ({} diagrams checked)",
                if report.holds { "holds" } else { "fails" },
                report.diagrams_checked
            )
            .unwrap();
            if let Some(w) = &report.witness {
                writeln!(
                    out,
                    "witness: alpha G -> A with kernel {} (|A| = {}), beta B -> A with |B| = {}, kernel {}",
                    w.alpha.kernel().name(),
                    w.a.order(),
                    w.b.order(),
                    w.beta.kernel().name()
                )
                .unwrap();
            }
        }
        Command::Invsys { file, level, dump } => {
            let group = Source::read(file)?.group()?;
            let system = CompleteSystem::new(&group)?;
            match level {
                None => {
                    writeln!(
                        out,
                        "system of order {}: {} elements over {} normal subgroups",
                        group.order(),
                        system.len(),
                        system.normals().len()
                    )
                    .unwrap();
                    if *dump {
                        out.push_str(&system.dump());
                    }
                }
                Some(i) => {
                    let i = *i as usize;
                    let kernel = level_kernel(&group, i)?;
                    let sub = system.generated_subsystem(&system.of_sort(i));
                    writeln!(
                        out,
                        "level {i}: quotient of order {}, kernel {} of order {}, {} elements",
                        kernel.index(),
                        kernel.name(),
                        kernel.order(),
                        sub.len()
                    )
                    .unwrap();
                    if *dump {
                        out.push_str(&sub.dump());
                    }
                }
            }
        }
    }
    Ok(())
}

fn lattice_table(loaded: &Loaded, out: &mut String) {
    let lattice = &loaded.lattice;
    writeln!(
        out,
        "{} members, {} maximal",
        lattice.len(),
        lattice.maximal_count()
    )
    .unwrap();
    writeln!(out, "index\torder\tmaximal\tfield").unwrap();
    for i in 0..lattice.len() {
        writeln!(
            out,
            "{i}\t{}\t{}\t{}",
            lattice.member(i).order(),
            if lattice.is_maximal(i) { "yes" } else { "no" },
            lattice.name(i)
        )
        .unwrap();
    }
}

fn run_suites(
    suite: Suite,
    group: &fmeas_core::FiniteGroup,
    loaded: Option<&Loaded>,
    config: &MeasureConfig,
    out: &mut String,
) -> Result<Vec<Check>, CliError> {
    let wanted = |s: Suite| suite == s || suite == Suite::All;
    let mut checks = Vec::new();
    if let Some(l) = loaded {
        if wanted(Suite::Lifts) {
            checks.extend(verify::lift_checks(&l.lattice, config)?);
            if let Some(n1) = &l.alternative_normal {
                checks.extend(verify::alternative_normal_checks(&l.lattice, n1, config)?);
            }
        }
        if wanted(Suite::Markov) {
            let engine = MeasureEngine::from_lattice(l.lattice.clone(), config)?;
            checks.extend(verify::markov_checks(&engine)?);
        }
        if wanted(Suite::Tower) {
            match &l.tower {
                Some(t) => checks.extend(verify::tower_suite(t, &l.base, config)?),
                None if suite == Suite::Tower => return Err(CliError::MissingTower),
                None => writeln!(out, "SKIP tower: no tower in the setup file").unwrap(),
            }
        }
    }
    if wanted(Suite::Frattini) {
        checks.extend(verify::frattini_suite(group)?);
    }
    if wanted(Suite::Invsys) {
        checks.extend(verify::invsys_suite(group)?);
    }
    for c in &checks {
        writeln!(out, "{c}").unwrap();
    }
    Ok(checks)
}
