use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polymatroid::cone::Budget;
use polymatroid::setfun::ValidationMode;

mod commands;

/// Exact polymatroid computations and the extreme-ray verification pipeline.
#[derive(Parser, Debug)]
#[command(name = "polymatroid", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Wall-clock limit for extreme-ray enumeration.
    #[arg(long, global = true, value_name = "N")]
    pub budget_seconds: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
}

impl GlobalOpts {
    pub fn budget(&self) -> Budget {
        Budget { max_seconds: self.budget_seconds, max_rays: None }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Mode {
    Full,
    Facet,
}

impl From<Mode> for ValidationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Full => ValidationMode::Full,
            Mode::Facet => ValidationMode::Facet,
        }
    }
}

#[derive(Args, Debug)]
pub struct Input {
    /// File with one polymatroid per line (`-` for stdin).
    #[arg(required_unless_present = "expr", conflicts_with = "expr")]
    pub path: Option<PathBuf>,
    /// Polymatroid given inline, e.g. `1,0,1`.
    #[arg(short, long)]
    pub expr: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the polymatroid axioms.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Flats, non-modular flat pairs, the star property and linearity.
    Analyze {
        #[command(flatten)]
        input: Input,
    },
    /// Re-check every witness of a `verify-paper` certificate.
    CheckCertificate { path: PathBuf },
    /// Extreme rays of the polymatroid cone on N elements.
    Rays {
        n: usize,
        /// Read rays from a ray file instead of enumerating.
        #[arg(long, value_name = "PATH")]
        import: Option<PathBuf>,
        /// Write the rays to a ray file.
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
        /// Group rays into isomorphism classes.
        #[arg(long)]
        classify: bool,
        /// Apply the two elimination rules to the classes (implies --classify).
        #[arg(long)]
        filter: bool,
        /// Check linearity of survivors and the star property of every class
        /// (implies --filter).
        #[arg(long)]
        verify: bool,
        /// List vectors in the text output.
        #[arg(long)]
        list: bool,
    },
    /// Run the enumeration, classification and elimination pipeline and
    /// emit a certificate.
    VerifyPaper {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(2..=5))]
        max_n: u8,
        /// Precomputed ray files, used for the n given in their header.
        #[arg(long, value_name = "PATH")]
        rays_from: Vec<PathBuf>,
        /// Write the JSON certificate here.
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
    /// Rank function of a linear representation file.
    LinrepCheck {
        path: PathBuf,
        /// Expected rank vector in display order; mismatch is a failure.
        #[arg(long, value_name = "VECTOR")]
        expect: Option<String>,
        /// Build the intersection extension for two subsets, e.g. `--pair ad bd`.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        pair: Option<Vec<String>>,
    },
}

/// Result of a command that ran to completion.
pub enum Outcome {
    Success,
    /// Invalid input object or a failed mathematical check.
    Failure,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if let Some(jobs) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global()?;
    }
    let g = &cli.global;
    match cli.command {
        Command::Validate { input, mode } => commands::validate(g, &input, mode.into()),
        Command::Analyze { input } => commands::analyze(g, &input),
        Command::CheckCertificate { path } => commands::check_certificate(g, &path),
        Command::Rays { n, import, export, classify, filter, verify, list } => {
            let opts = commands::RaysOptions {
                n,
                import,
                export,
                classify: classify || filter || verify,
                filter: filter || verify,
                verify,
                list,
            };
            commands::rays(g, &opts)
        }
        Command::VerifyPaper { max_n, rays_from, certificate } => {
            commands::verify_paper(g, usize::from(max_n), rays_from, certificate.as_deref())
        }
        Command::LinrepCheck { path, expect, pair } => commands::linrep_check(g, &path, expect.as_deref(), pair),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
