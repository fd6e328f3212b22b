use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use intlef::report::{emit, Format, Table};
use intlef::suite::{self, SuiteConfig, TAGS};
use intlef::{CoefficientRing, Error};

mod views;

#[derive(Parser, Debug)]
#[command(name = "intlef", version, about = "Exact integral Lefschetz theory on Λ*(Z^2g) and its verification suites", after_help = tag_help())]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Genus.
    #[arg(long, global = true)]
    g: Option<usize>,
    /// Largest genus for sweeps.
    #[arg(long, global = true)]
    g_max: Option<usize>,
    /// Coefficient ring: z, f<p> or zmod:<n>. Repeatable for `verify`.
    #[arg(long, global = true)]
    ring: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for `verify`.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = suite::DEFAULT_SEED)]
    seed: u64,
    /// Include wall-clock times (output is then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Filtration levels and graded constants.
    Lefschetz {
        #[command(subcommand)]
        view: LefschetzView,
    },
    /// Cokernels of wedge with omega_k (form omega) or of i_w and i_{e^w-1} (form exp).
    Coker {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Form::Omega)]
        form: Form,
        /// Also compute graded pieces.
        #[arg(long)]
        graded: bool,
    },
    /// Touchard conjugation of the graded pair matrices.
    Touchard {
        #[arg(long)]
        k: usize,
    },
    /// Integral homology of the integer Heisenberg group N_g.
    Heisenberg {
        #[arg(long, value_enum, default_value_t = RouteArg::All)]
        route: RouteArg,
    },
    /// Cup homology and the HF-infinity model of Σ_g × S^1.
    Floer {
        #[command(subcommand)]
        view: FloerView,
    },
    /// Run tagged verification suites.
    #[command(after_help = tag_help())]
    Verify {
        /// Run every tag.
        #[arg(long, conflicts_with = "tag")]
        all: bool,
        /// Tags to run (repeatable).
        #[arg(long)]
        tag: Vec<String>,
        /// List tags and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand, Debug)]
enum LefschetzView {
    /// Ranks of F_r Λ^k and of its graded pieces.
    Filtration {
        #[arg(long)]
        k: usize,
    },
    /// Constants of the graded wedge and contraction maps.
    Constants,
}

#[derive(Subcommand, Debug)]
enum FloerView {
    /// Cup homology.
    Hc,
    /// coker + e^0 ker of contraction with e^w - 1.
    Hf,
    /// Cup homology against the model, with the shifted filtration.
    Compare,
    /// The genus 4 equivariant non-isomorphism certificate over F_2.
    #[command(name = "noniso-g4")]
    NonisoG4,
    /// Torsion of the model against the closed counts.
    Torsion,
    /// Transvection fixed points and the nondegeneracy search.
    #[command(name = "fixed-points")]
    FixedPoints,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Omega,
    Exp,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteArg {
    Gysin,
    Formula,
    Filtration,
    All,
}

fn tag_help() -> String {
    let width = TAGS.iter().map(|t| t.tag.len()).max().unwrap_or(0);
    let mut s = String::from("Tags:\n");
    for t in TAGS {
        s.push_str(&format!("  {:width$}  {}\n", t.tag, t.description));
    }
    s
}

/// Failure of a command: usage problems exit 2, failed checks exit 1.
pub enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse(_) | Error::UnknownOperator(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

/// Tables to print and whether every check in them passed.
pub struct Output {
    pub tables: Vec<Table>,
    pub passed: bool,
}

impl Global {
    pub fn format(&self) -> Format {
        if self.json {
            return Format::Json;
        }
        match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }

    pub fn genus(&self) -> Result<usize, Failure> {
        let g = self.g.ok_or_else(|| Failure::Usage("--g is required".into()))?;
        if g == 0 || g > suite::G_HARD_CAP {
            return Err(Failure::Usage(format!("--g must lie in 1..={}", suite::G_HARD_CAP)));
        }
        Ok(g)
    }

    pub fn g_max(&self, default: usize) -> Result<usize, Failure> {
        let g = self.g_max.unwrap_or(default);
        if g > suite::G_HARD_CAP {
            return Err(Failure::Usage(format!("--g-max must be at most {}", suite::G_HARD_CAP)));
        }
        Ok(g)
    }

    pub fn rings(&self, default: &[CoefficientRing]) -> Result<Vec<CoefficientRing>, Failure> {
        if self.ring.is_empty() {
            return Ok(default.to_vec());
        }
        self.ring.iter().map(|r| r.parse().map_err(Failure::from)).collect()
    }

    pub fn ring(&self) -> Result<CoefficientRing, Failure> {
        match self.rings(&[CoefficientRing::Integers])?.as_slice() {
            [r] => Ok(*r),
            _ => Err(Failure::Usage("expected a single --ring".into())),
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let gl = &cli.global;
    match &cli.command {
        Command::Lefschetz {
            view: LefschetzView::Filtration { k },
        } => views::filtration(gl.genus()?, *k),
        Command::Lefschetz {
            view: LefschetzView::Constants,
        } => views::constants(gl.genus()?),
        Command::Coker { k, form, graded } => views::coker(gl.genus()?, *k, *form, *graded),
        Command::Touchard { k } => views::touchard(*k),
        Command::Heisenberg { route } => views::heisenberg(gl.genus()?, *route, gl.seed),
        Command::Floer { view } => match view {
            FloerView::Hc => views::hc(gl.genus()?, gl.ring()?),
            FloerView::Hf => views::hf(gl.genus()?, gl.ring()?),
            FloerView::Compare => views::compare(gl.genus()?),
            FloerView::NonisoG4 => views::noniso_g4(),
            FloerView::Torsion => views::torsion(gl.g_max(gl.g.unwrap_or(5))?),
            FloerView::FixedPoints => views::fixed_points(gl.genus()?, gl.ring()?, gl.seed),
        },
        Command::Verify { all, tag, list } => {
            if *list {
                return Ok(views::tag_list());
            }
            if !*all && tag.is_empty() {
                return Err(Failure::Usage("verify needs --all, --tag or --list".into()));
            }
            let selected: Vec<String> = if *all { vec!["all".into()] } else { tag.clone() };
            let cfg = SuiteConfig {
                g_max: gl.g_max(4)?,
                seed: gl.seed,
                jobs: gl.jobs,
                timings: gl.timings,
                rings: gl.rings(&SuiteConfig::default().rings)?,
                max_bytes: suite::max_bytes_from_env(),
            };
            views::verify(&selected, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match emit(&out.tables, cli.global.format()) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
    }
}
