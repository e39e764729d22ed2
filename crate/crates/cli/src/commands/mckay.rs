use clap::{value_parser, ArgMatches};
use serde::Serialize;
use tauroot::mckay::*;
use tauroot::ColoredQuiver;

use super::*;
use crate::registry::{Command, Output};

fn weight_args(cmd: clap::Command) -> clap::Command {
    cmd.arg(required("n", "N", value_parser!(u32)).help("Order of the cyclic group"))
        .arg(required("weights", "A0,A1,..", u32_list).help("Weights a_0,..,a_d of the generator 1/n(a_0,..,a_d)"))
}

fn weights(m: &ArgMatches) -> CyclicWeights {
    CyclicWeights::new(get(m, "n"), get(m, "weights"))
}

fn cut(m: &ArgMatches) -> Option<CutSet> {
    m.get_one::<Vec<u32>>("kept").map(|k| CutSet::new(k.iter().copied()))
}

fn kept_arg() -> clap::Arg {
    clap::Arg::new("kept").long("kept").value_name("J,..").value_parser(u32_list).help("Kept vertices")
}

pub struct McKay;

#[derive(Serialize)]
struct QuotientReport {
    quiver: ColoredQuiver,
    kept: Vec<u32>,
    hereditary: bool,
    semisimple: bool,
    verdict: &'static str,
    quotient: ColoredQuiver,
}

impl Command for McKay {
    fn name(&self) -> &'static str {
        "mckay"
    }

    fn about(&self) -> &'static str {
        "McKay quiver of a cyclic subgroup of SL, with an optional quotient test"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        weight_args(cmd).arg(kept_arg()).arg(dot_flag())
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let w = weights(m);
        let quiver = mckay_quiver(&w)?;
        let dot = m.get_flag("dot");
        let Some(cut) = cut(m) else { return Ok(Output::new(quiver_payload(&quiver, dot))) };
        cut.check(w.n)?;
        let quotient = quiver.induced(&cut.ids());
        let hereditary = is_hereditary_quotient(&quiver, &cut);
        let semisimple = quotient.arrows().is_empty();
        let verdict = match (semisimple, hereditary) {
            (true, _) => "semisimple hereditary",
            (false, true) => "hereditary",
            (false, false) => "not hereditary",
        };
        if dot {
            let mut out = Output::new(quiver_payload(&quiver, true));
            out.diagnostics.push(format!("quotient: {verdict}"));
            return Ok(out);
        }
        let report =
            QuotientReport { quiver, kept: cut.kept.into_iter().collect(), hereditary, semisimple, verdict, quotient };
        Ok(Output::new(json(&report)))
    }
}

pub struct HQuiver;

fn builder_dim(s: &str) -> Result<usize, String> {
    let d: usize = s.parse().map_err(|e| format!("{e}"))?;
    match h_quiver_builder(d) {
        Some(_) => Ok(d),
        None => {
            let known: Vec<String> = h_quiver_builders().iter().map(|b| b.dim().to_string()).collect();
            Err(format!("no builder for dimension {d} (available: {})", known.join(", ")))
        }
    }
}

impl Command for HQuiver {
    fn name(&self) -> &'static str {
        "hquiver"
    }

    fn about(&self) -> &'static str {
        "Quiver of the hereditary algebra built from the kept vertices"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        weight_args(cmd)
            .arg(kept_arg().required(true))
            .arg(required("dim", "D", builder_dim).help("Calabi-Yau dimension d"))
            .arg(dot_flag())
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let cut = cut(m).expect("required argument");
        let q = h_quiver(&weights(m), &cut, get(m, "dim"))?;
        Ok(Output::new(quiver_payload(&q, m.get_flag("dot"))))
    }
}

pub struct ArAngle;

impl Command for ArAngle {
    fn name(&self) -> &'static str {
        "ar-angle"
    }

    fn about(&self) -> &'static str {
        "Middle terms of the AR angle at a kept vertex"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        weight_args(cmd)
            .arg(kept_arg().required(true))
            .arg(required("vertex", "J", value_parser!(u32)).help("Kept vertex the angle starts at"))
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let cut = cut(m).expect("required argument");
        let angle = ar_angle(&weights(m), &cut, get(m, "vertex"))?;
        Ok(Output::new(json(&angle)))
    }
}
