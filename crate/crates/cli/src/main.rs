use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use raman_cli::commands::{self, OracleTarget};
use raman_cli::error::CliError;
use raman_cli::output::{emit, Format};
use raman_cli::params::Params;
use raman_cli::quantities::Quantity;
use raman_cli::sweep::SweepSpec;

/// Nonclassicality witnesses and distributions of the four-mode Raman model.
///
/// Exit codes: 0 success, 1 I/O failure, 2 invalid input or a configuration
/// outside a formula's regime, 3 exact-oracle contract violation.
#[derive(Parser)]
#[command(name = "raman", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Parameter file (`key = value` lines); defaults apply to missing keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Ordering parameter, overriding `s` from the parameter file.
    #[arg(long)]
    s: Option<f64>,
}

impl Common {
    fn params(&self) -> Result<Params, CliError> {
        let mut p = match &self.config {
            Some(path) => Params::from_file(path)?,
            None => Params::default(),
        };
        if let Some(s) = self.s {
            p.set("s", &s.to_string()).map_err(CliError::Validation)?;
        }
        Ok(p)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Every witness at one parameter point.
    Witness {
        #[command(flatten)]
        common: Common,
        /// Add the short-time closed expressions next to the pipeline values.
        #[arg(long)]
        closed_form: bool,
    },
    /// Tabulate quantities over a 1D or 2D parameter sweep.
    Scan {
        #[command(flatten)]
        common: Common,
        /// `name=start:stop:count[,name=start:stop:count]`.
        #[arg(long)]
        sweep: String,
        /// Comma-separated quantity names.
        #[arg(long)]
        quantity: String,
    },
    /// Write the dataset of a built-in figure preset.
    Figure {
        /// Panel (`3b`) or figure (`3`) id.
        #[arg(long)]
        preset: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// A full distribution at one parameter point.
    Dist {
        #[command(flatten)]
        common: Common,
        /// joint_SV, joint_LV, cond_L, cond_V, difference, quasi_SV or quasi_LV.
        #[arg(long)]
        quantity: String,
    },
    /// Compare the perturbative moments with exact Fock-space evolution.
    OracleCheck {
        /// Parameter file; its cutoff_X and dim_cap keys set the basis.
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// Built-in small-amplitude configuration: coherent or chaotic.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Witness { common, closed_form } => {
            let table = commands::witness(&common.params()?, closed_form)?;
            emit(&table.render(common.format), common.out.as_deref())
        }
        Command::Scan { common, sweep, quantity } => {
            let sweep = SweepSpec::parse(&sweep)?;
            let qs = Quantity::parse_list(&quantity)?;
            let table = commands::scan(&common.params()?, &sweep, &qs)?;
            emit(&table.render(common.format), common.out.as_deref())
        }
        Command::Figure { preset, out, format } => {
            for path in commands::figure(&preset, &out, format)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Dist { common, quantity } => {
            let (table, extras) = commands::dist(&common.params()?, &quantity)?;
            emit(&commands::render_dist(&table, &extras, common.format), common.out.as_deref())
        }
        Command::OracleCheck { config, preset, out, format } => {
            let target = match (config, preset) {
                (Some(path), _) => OracleTarget::Params(Params::from_file(&path)?),
                (None, Some(name)) => OracleTarget::Preset(commands::oracle_preset(&name)?),
                (None, None) => OracleTarget::Preset(commands::oracle_preset("coherent")?),
            };
            let report = commands::oracle_check(target)?;
            emit(&commands::oracle_render(&report, format), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
