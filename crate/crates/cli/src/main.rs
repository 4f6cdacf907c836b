mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qformlab::{DirichletChar, EisensteinSpec, EtaQuotient, QuadForm};

#[derive(Parser)]
#[command(name = "qformlab", version, about = "Exact weight-3 modular forms on Γ0(24) and senary quadratic forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Clone)]
pub struct Common {
    /// Work through q^N (60 by default, 120 for newform checks).
    #[arg(long, value_name = "N")]
    pub precision: Option<usize>,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
    /// Write the main payload to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub emit: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansion of an eta quotient such as eta24[0,3,0,-4,-5,2,16,-6].
    EtaExpand {
        quotient: EtaQuotient,
        /// Always print exponents in units of q^(1/24).
        #[arg(long)]
        grade: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Cusp orders, Ligozat conditions and character of an eta quotient.
    LigozatCheck {
        quotient: EtaQuotient,
        #[command(flatten)]
        common: Common,
    },
    /// q-expansion of a weight-3 Eisenstein series such as E3[-4,1,2].
    Eisenstein {
        spec: EisensteinSpec,
        #[command(flatten)]
        common: Common,
    },
    /// Ordered basis of M3(Γ0(24), χ).
    Basis {
        action: BasisAction,
        #[arg(long = "char", allow_hyphen_values = true)]
        character: DirichletChar,
        #[command(flatten)]
        common: Common,
    },
    /// Number of representations of n by a diagonal form.
    RepCount {
        /// Coefficients, one per variable, e.g. 1,1,1,1,3,3.
        #[arg(long)]
        form: QuadForm,
        #[arg(long)]
        n: u64,
        /// Count by direct enumeration.
        #[arg(long, conflicts_with = "formula")]
        oracle: bool,
        /// Count from the derived modular-form formula.
        #[arg(long)]
        formula: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Derive the formula rows for one character or all 84 forms.
    DeriveTable {
        #[arg(long = "char", allow_hyphen_values = true)]
        character: Option<DirichletChar>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare derived rows with the bundled coefficient tables.
    VerifyTables {
        #[command(flatten)]
        common: Common,
    },
    /// Check the five newforms against the Hecke relations.
    VerifyNewforms {
        #[arg(long)]
        index: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// All holomorphic eta quotients in M3(Γ0(24), χ).
    Census {
        #[arg(long = "char", allow_hyphen_values = true)]
        character: DirichletChar,
        #[command(flatten)]
        common: Common,
    },
    /// Check the nine divisor-sum identities for eta quotients.
    VerifyRemarks {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum BasisAction {
    Dump,
    Verify,
}

/// Failure of a command, mapped to the process exit code.
pub enum Failure {
    Check(String),
    Usage(String),
}

impl From<qformlab::Error> for Failure {
    fn from(e: qformlab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::EtaExpand { quotient, grade, common } => commands::eta_expand(&quotient, grade, &common),
        Command::LigozatCheck { quotient, common } => commands::ligozat(&quotient, &common),
        Command::Eisenstein { spec, common } => commands::eisenstein(&spec, &common),
        Command::Basis { action, character, common } => commands::basis(action, character, &common),
        Command::RepCount { form, n, oracle, formula, common } => commands::rep_count(&form, n, oracle, formula, &common),
        Command::DeriveTable { character, common } => commands::derive_table(character, &common),
        Command::VerifyTables { common } => commands::verify_tables(&common),
        Command::VerifyNewforms { index, common } => commands::verify_newforms(index, &common),
        Command::Census { character, common } => commands::census(character, &common),
        Command::VerifyRemarks { common } => commands::verify_remarks(&common),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
