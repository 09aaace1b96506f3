use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod config;
mod error;
mod output;

use args::{Cli, Command, Format};
use commands::{Body, Rendered};
use config::RunConfig;
use error::CliError;
use output::Envelope;

fn emit(cfg: &RunConfig, rendered: Rendered) -> Result<(), CliError> {
    let Rendered {
        command,
        run,
        body,
        deferred,
    } = rendered;
    let out = output::sink(cfg.out.as_deref())?;
    match (body, cfg.format) {
        (Body::Table(table), None | Some(Format::Csv)) => table.write_csv(out)?,
        (Body::Table(table), Some(Format::Json)) => {
            Envelope::new(command, &cfg.params, run, table.json_rows()).write(out)?
        }
        (Body::Report(data), None | Some(Format::Json)) => {
            Envelope::new(command, &cfg.params, run, data).write(out)?
        }
        (Body::Report(_), Some(Format::Csv)) => unreachable!("rejected before running"),
    }
    deferred.map_or(Ok(()), Err)
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<(), CliError> {
    let report_only = matches!(
        cli.command,
        Command::Stability | Command::Forbidden | Command::Sweep { .. }
    );
    if report_only && cfg.format == Some(Format::Csv) {
        return Err(CliError::Config(
            "this command emits a JSON report; --format csv is not available".into(),
        ));
    }
    let system = cli.common.system;
    let rendered = match &cli.command {
        Command::Sequence { n, binet } => commands::sequence(cfg, *n, *binet)?,
        Command::Iterate => commands::iterate(cfg)?,
        Command::Compare => commands::compare(cfg)?,
        Command::Stability => commands::stability(cfg, system)?,
        Command::Forbidden => commands::forbidden(cfg)?,
        Command::Sweep {
            trials,
            tol,
            range,
            parallel,
        } => commands::sweep(cfg, system, *trials, *tol, range, *parallel)?,
    };
    emit(cfg, rendered)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strict = cli.common.strict;
    let result = RunConfig::from_args(&cli.common).and_then(|cfg| run(&cli, &cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            e.report();
            e.exit_code(strict)
        }
    }
}
