use clap::Parser;
use dualpolar_cli::config::{suite_instances, Cli, Command, Format, Suite, What};
use dualpolar_cli::emit::write_output;
use dualpolar_cli::sweep::parse_instances;
use dualpolar_cli::{emit, sweep, verify, CliError, RunConfig};
use std::process::ExitCode;

fn run(cli: Cli) -> Result<i32, CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    }
    match cli.command {
        Command::Verify(a) => {
            let cfg = RunConfig::try_from(&a.instance)?;
            if a.format.is_some_and(|f| f != Format::Json) {
                return Err(CliError::Usage("verify writes JSON only".into()));
            }
            let report = verify(&cfg)?;
            write_output(a.out.as_deref(), &report.full_json())?;
            if let Some(fail) = report.first_failure() {
                eprintln!("{}: FAIL at {}: {}", cfg.instance, fail.stage.name(), fail.locus.as_deref().unwrap_or(""));
            } else {
                eprintln!("{}: pass ({} checks)", cfg.instance, report.checks.len());
            }
            Ok(report.exit_code())
        }
        Command::Emit(a) => {
            let cfg = RunConfig::try_from(&a.instance)?;
            let out = emit(&cfg, a.what, a.format)?;
            write_output(a.out.as_deref(), &out.text)?;
            Ok(out.exit_code)
        }
        Command::ExportGraph(a) => {
            let cfg = RunConfig::try_from(&a.instance)?;
            let out = emit(&cfg, What::Graph, Some(Format::EdgeList))?;
            write_output(a.out.as_deref(), &out.text)?;
            Ok(out.exit_code)
        }
        Command::Sweep(a) => {
            let instances = match &a.instances {
                Some(list) => parse_instances(list)?,
                None => suite_instances(a.suite.unwrap_or(Suite::Formal)),
            };
            let summary = sweep(&instances, a.max_vertices)?;
            let text = match a.format {
                Some(Format::Json) => summary.json(),
                None => summary.table(),
                Some(f) => return Err(CliError::Usage(format!("sweep does not support --format {f:?}"))),
            };
            write_output(a.out.as_deref(), &text)?;
            Ok(summary.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
