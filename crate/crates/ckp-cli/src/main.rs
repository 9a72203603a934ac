use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use ckp_cli::cli::{Cli, Command};
use ckp_cli::commands::{
    cmd_certify, cmd_generate, cmd_solve, cmd_validate, CommandOutput, GenerateArgs, GlobalOpts,
};
use ckp_cli::report::ReportPayload;
use ckp_cli::schema::to_canonical_json;
use ckp_cli::{CliError, EXIT_STRUCTURAL};
use clap::Parser;

fn require_input(cli: &Cli) -> Result<&Path, CliError> {
    cli.input
        .as_deref()
        .ok_or_else(|| CliError::Usage("missing --input/-i <file>".into()))
}

fn run(cli: &Cli) -> Result<CommandOutput, CliError> {
    let opts = GlobalOpts {
        tol: cli.tol,
        grid: cli.grid,
        seed: cli.seed,
        max_iter: cli.max_iter,
    };
    match &cli.command {
        Command::Validate => cmd_validate(require_input(cli)?, &opts),
        Command::Certify { condition } => cmd_certify(require_input(cli)?, *condition, &opts),
        Command::Solve => cmd_solve(require_input(cli)?, &opts),
        Command::Generate {
            config,
            n,
            m,
            method,
            embed_dim,
            overlap,
            count,
            search_separating,
            budget,
        } => {
            let out_dir = cli
                .output
                .as_deref()
                .ok_or_else(|| CliError::Usage("generate needs --output/--out <dir>".into()))?;
            let args = GenerateArgs {
                n: *n,
                m: *m,
                method: *method,
                embed_dim: *embed_dim,
                overlap: *overlap,
                count: *count,
                search_separating: *search_separating,
                budget: *budget,
            };
            cmd_generate(config.as_deref(), &args, out_dir, &opts)
        }
    }
}

fn summarize(output: &CommandOutput) -> String {
    match &output.report.result {
        ReportPayload::Validation(v) => {
            let mut line = format!(
                "validate: {} ({} metric violations",
                if output.exit_code == 0 { "ok" } else { "FAILED" },
                v.metric.violations.len()
            );
            if let Some(cyclic) = &v.cyclic {
                line.push_str(&format!(
                    ", {} uncovered, {} broken inclusions",
                    cyclic.uncovered.len(),
                    cyclic.broken.len()
                ));
            }
            line.push(')');
            line
        }
        ReportPayload::Certificate(c) => {
            let mut line = format!(
                "certify {:?}: holds={} min_slack={:.6e} pairs={} eps={}",
                c.condition, c.holds, c.min_slack, c.pairs_checked, c.eps_checked
            );
            if let Some(lambda) = c.lambda_min {
                line.push_str(&format!(" lambda_min={lambda}"));
            }
            if let Some(w) = &c.witness {
                line.push_str(&format!(
                    " witness=(x={}, y={}, set={}, eps={:?}, lhs={}, rhs={})",
                    w.x, w.y, w.set, w.eps, w.lhs, w.rhs
                ));
            }
            line
        }
        ReportPayload::Solve(s) => format!(
            "solve: certificate_holds={} fixed_points={:?} unique={} in_intersection={} all_converge_to_same={}",
            s.certificate.holds, s.fixed_points, s.unique, s.in_intersection, s.all_converge_to_same
        ),
        ReportPayload::Generate(m) => {
            let mut line = format!("generate: wrote {} instance file(s) + manifest", m.count);
            if let Some(search) = &m.search {
                line.push_str(&format!(
                    "; search over {}: kannan_only={} banach_only={} both={} neither={}",
                    search.budget,
                    search.counts.kannan_only,
                    search.counts.banach_only,
                    search.counts.both,
                    search.counts.neither
                ));
            }
            line
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(mut output) => {
            output.report.timing_ms = started.elapsed().as_secs_f64() * 1e3;
            let json = to_canonical_json(&output.report);
            if cli.json {
                print!("{json}");
            } else {
                println!("{}", summarize(&output));
            }
            if let Some(path) = &cli.output {
                // generate already uses --output as its directory
                if !matches!(cli.command, Command::Generate { .. }) {
                    if let Err(e) = std::fs::write(path, &json) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_STRUCTURAL as u8);
                    }
                }
            }
            ExitCode::from(output.exit_code as u8)
        }
        Err(error) => {
            if cli.json {
                let payload = serde_json::json!({ "error": error.to_string() });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&payload).expect("serializes")
                );
            }
            eprintln!("error: {error}");
            ExitCode::from(EXIT_STRUCTURAL as u8)
        }
    }
}
