mod commands;
mod error;
mod registry;

use std::process::ExitCode;

fn cli() -> clap::Command {
    let root = clap::Command::new("tauroot")
        .about("Roots of the AR translation, McKay quivers and shifted-sum quivers")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true);
    registry::commands()
        .iter()
        .fold(root, |root, c| root.subcommand(c.args(clap::Command::new(c.name()).about(c.about()))))
}

fn main() -> ExitCode {
    let matches = match cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (name, sub) = matches.subcommand().expect("a subcommand is required");
    let command = registry::find(name).expect("parsed subcommands are registered");
    match command.run(sub) {
        Ok(out) => {
            for line in &out.diagnostics {
                eprintln!("{line}");
            }
            print!("{}", out.payload);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tauroot {name}: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
