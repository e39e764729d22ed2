use std::collections::BTreeSet;

use clap::{value_parser, ArgMatches};
use tauroot::cyreduce::{reduction_report, AlgebraPresentation};
use tauroot::shiftedsum::star_quiver;

use super::*;
use crate::registry::{Command, Output};

pub struct CyReduce;

impl Command for CyReduce {
    fn name(&self) -> &'static str {
        "cy-reduce"
    }

    fn about(&self) -> &'static str {
        "Quiver of the Calabi-Yau reduction of a presented algebra, with a report"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        cmd.arg(required("presentation", "FILE", value_parser!(String)).help("Quiver with relations, as JSON"))
            .arg(
                clap::Arg::new("removed")
                    .long("removed")
                    .value_name("V,..")
                    .value_parser(string_list)
                    .default_value("")
                    .help("Vertices of the idempotent that is factored out"),
            )
            .arg(dot_flag())
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let p: AlgebraPresentation = read_json(&get::<String>(m, "presentation"))?;
        let removed: BTreeSet<String> = get::<Vec<String>>(m, "removed").into_iter().collect();
        let report = reduction_report(&p, &removed)?;
        if !m.get_flag("dot") {
            return Ok(Output::new(json(&report)));
        }
        let mut out = Output::new(quiver_payload(&report.quiver, true));
        out.diagnostics
            .extend(report.warnings.iter().map(|w| format!("warning: {} -> {}: {}", w.src, w.dst, w.message)));
        Ok(out)
    }
}

pub struct Star;

impl Command for Star {
    fn name(&self) -> &'static str {
        "star"
    }

    fn about(&self) -> &'static str {
        "Star-shaped quiver on levels 0..2n with m-fold arrows"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        cmd.arg(required("n", "N", value_parser!(usize)))
            .arg(
                clap::Arg::new("m")
                    .long("m")
                    .value_name("M")
                    .value_parser(value_parser!(u32))
                    .default_value("1")
                    .help("Arrow multiplicity"),
            )
            .arg(dot_flag())
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let q = star_quiver(get(m, "n"), get(m, "m"))?;
        Ok(Output::new(quiver_payload(&q, m.get_flag("dot"))))
    }
}
