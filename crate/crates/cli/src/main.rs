use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qfi_cli::{config, presets, run, Engine, RunOptions, EXIT_OK, EXIT_VALIDATION};

#[derive(Parser)]
#[command(name = "qfi", version, about = "Quantum Fisher information experiments on spin chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Overrides `engine` from the config.
        #[arg(long, value_enum)]
        engine: Option<Engine>,
        /// Suppress progress output.
        #[arg(long)]
        quiet: bool,
    },
    /// Check a config without running it.
    Validate {
        config: PathBuf,
        #[arg(long, value_enum)]
        engine: Option<Engine>,
    },
    /// Built-in scaling-sweep configurations.
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    /// List preset names.
    List,
    /// Print a preset as a JSON config.
    Show { name: String },
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, output_dir, threads, engine, quiet } => {
            let cfg = match config::load(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit(EXIT_VALIDATION);
                }
            };
            let opts = RunOptions { output_dir, threads, engine, quiet };
            match run(cfg, &opts) {
                Ok(report) => exit(report.exit_code()),
                Err(e) => {
                    eprintln!("error: {e}");
                    exit(e.exit_code())
                }
            }
        }
        Command::Validate { config, engine } => {
            let cfg = match config::load(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit(EXIT_VALIDATION);
                }
            };
            let cfg = qfi_cli::resolve(cfg, &RunOptions { engine, ..Default::default() });
            let diagnostics = cfg.validate();
            if diagnostics.is_empty() {
                println!("ok");
                exit(EXIT_OK)
            } else {
                for d in &diagnostics {
                    println!("{d}");
                }
                exit(EXIT_VALIDATION)
            }
        }
        Command::Presets { action: PresetAction::List } => {
            for p in presets::all() {
                println!("{:<8} {}", p.name, p.description);
            }
            exit(EXIT_OK)
        }
        Command::Presets { action: PresetAction::Show { name } } => match presets::find(&name) {
            Some(p) => {
                println!("{}", serde_json::to_string_pretty(&p.config).expect("config serializes"));
                exit(EXIT_OK)
            }
            None => {
                eprintln!("error: unknown preset {name:?}; try `qfi presets list`");
                exit(EXIT_VALIDATION)
            }
        },
    }
}
