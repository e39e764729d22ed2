use clap::{value_parser, ArgMatches};
use tauroot::io::{deserialize, from_dot, to_dot_with, DotMultiplicity};

use super::*;
use crate::registry::{Command, Output};

pub struct Convert;

impl Command for Convert {
    fn name(&self) -> &'static str {
        "convert"
    }

    fn about(&self) -> &'static str {
        "Convert a quiver between JSON and DOT"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        cmd.arg(required("input", "FILE", value_parser!(String)).help("Quiver as JSON or DOT"))
            .arg(
                clap::Arg::new("to")
                    .long("to")
                    .value_parser(["json", "dot"])
                    .help("Output format (default: the other one)"),
            )
            .arg(flag("repeat", "In DOT, draw an m-fold arrow as m parallel edges"))
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let path = get::<String>(m, "input");
        let text = read_text(&path)?;
        let is_json = text.trim_start().starts_with('{');
        let q = if is_json { deserialize(&text) } else { from_dot(&text) }.map_err(|e| CliError::format(&path, e))?;
        let to = m.get_one::<String>("to").map(String::as_str).unwrap_or(if is_json { "dot" } else { "json" });
        let style = if m.get_flag("repeat") { DotMultiplicity::Repeat } else { DotMultiplicity::Label };
        Ok(Output::new(if to == "dot" { to_dot_with(&q, style) } else { json(&q) }))
    }
}
