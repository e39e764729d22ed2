use clap::{value_parser, ArgMatches};
use serde::Serialize;
use tauroot::dynkin::{standard_quiver, DynkinLabel};
use tauroot::ztranslation::*;
use tauroot::ColoredQuiver;

use super::*;
use crate::registry::{Command, Output};

fn quiver_arg() -> clap::Arg {
    required("quiver", "FILE", value_parser!(String)).help("Acyclic uncolored quiver, as JSON")
}

fn l_arg() -> clap::Arg {
    required("l", "L", clap::builder::RangedU64ValueParser::<usize>::new().range(1..)).help("Order of the root")
}

fn bound(m: &ArgMatches) -> Option<i64> {
    m.get_one::<i64>("offset-bound").copied()
}

pub struct RootSearch;

impl Command for RootSearch {
    fn name(&self) -> &'static str {
        "root-search"
    }

    fn about(&self) -> &'static str {
        "All l-th roots of the inverse translation within the offset bound"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        cmd.arg(quiver_arg()).arg(l_arg()).arg(offset_bound())
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let q = read_quiver(&get::<String>(m, "quiver"))?;
        let roots = find_tau_roots(&q, get(m, "l"), bound(m))?;
        Ok(Output::new(json(&roots)))
    }
}

pub struct FSection;

#[derive(Serialize)]
struct SectionReport {
    t: Vec<ZQVertex>,
    blocks: Vec<Vec<ZQVertex>>,
    is_f_section: bool,
    no_backward_arrows: bool,
    section_quiver: ColoredQuiver,
}

impl Command for FSection {
    fn name(&self) -> &'static str {
        "f-section"
    }

    fn about(&self) -> &'static str {
        "F-section of a root and the section it generates"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        cmd.arg(quiver_arg())
            .arg(required("autom", "FILE", value_parser!(String)).help("Automorphism {sigma, delta}, as JSON"))
            .arg(l_arg())
            .arg(dot_flag())
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let q = read_quiver(&get::<String>(m, "quiver"))?;
        let f: TQAutomorphism = read_json(&get::<String>(m, "autom"))?;
        let l = get(m, "l");
        validate_autom(&q, &f)?;
        let t = construct_f_section(&q, &f, l)?;
        let blocks = section_from(&q, &f, l, &t)?;
        let sigma: Vec<ZQVertex> = blocks.iter().flatten().cloned().collect();
        let section_quiver = section_quiver(&q, &sigma)?;
        if m.get_flag("dot") {
            return Ok(Output::new(quiver_payload(&section_quiver, true)));
        }
        let report = SectionReport {
            is_f_section: is_f_section(&q, &f, l, &t)?,
            no_backward_arrows: has_no_backward_arrows(&q, &f, l, &t)?,
            t,
            blocks,
            section_quiver,
        };
        Ok(Output::new(json(&report)))
    }
}

pub struct NormalForm;

#[derive(Serialize)]
struct NormalFormReport {
    normal_form: bool,
    partition: Option<NormalFormPartition>,
    root: Option<TQAutomorphism>,
}

impl Command for NormalForm {
    fn name(&self) -> &'static str {
        "normal-form"
    }

    fn about(&self) -> &'static str {
        "Check (or search for) a block partition in normal form and read off its root"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        cmd.arg(quiver_arg()).arg(l_arg()).arg(
            clap::Arg::new("partition")
                .long("partition")
                .value_name("FILE")
                .help("Blocks {\"blocks\": [[..], ..]}, as JSON; searched for when omitted"),
        )
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let q = read_quiver(&get::<String>(m, "quiver"))?;
        let l = get(m, "l");
        let partition = match m.get_one::<String>("partition") {
            Some(path) => {
                let p: NormalFormPartition = read_json(path)?;
                check_root_normal_form(&q, l, &p)?.then_some(p)
            }
            None => find_normal_form_partition(&q, l),
        };
        let root = partition.as_ref().map(|p| root_from_normal_form(&q, l, p)).transpose()?;
        Ok(Output::new(json(&NormalFormReport { normal_form: partition.is_some(), partition, root })))
    }
}

pub struct DynkinSurvey;

#[derive(Serialize)]
struct SurveyRow {
    quiver: String,
    l: usize,
    roots: usize,
    root_exists: bool,
}

impl Command for DynkinSurvey {
    fn name(&self) -> &'static str {
        "dynkin-survey"
    }

    fn about(&self) -> &'static str {
        "Which Dynkin quivers admit an l-th root, for 2 <= l <= lmax"
    }

    fn args(&self, cmd: clap::Command) -> clap::Command {
        cmd.arg(
            required("family", "TYPE,..", |s: &str| -> Result<Vec<DynkinLabel>, String> {
                let labels: Vec<DynkinLabel> = list(s)?;
                match labels.iter().find(|l| !l.is_dynkin()) {
                    Some(l) => Err(format!("`{l}` is not a Dynkin type")),
                    None => Ok(labels),
                }
            })
            .help("Dynkin types such as A4,D5,E6"),
        )
        .arg(
            clap::Arg::new("lmax")
                .long("lmax")
                .value_name("L")
                .value_parser(clap::builder::RangedU64ValueParser::<usize>::new().range(2..))
                .default_value("3"),
        )
        .arg(offset_bound())
    }

    fn run(&self, m: &ArgMatches) -> Result<Output, CliError> {
        let mut rows = Vec::new();
        for label in get::<Vec<DynkinLabel>>(m, "family") {
            let q = standard_quiver(label).expect("Dynkin types have a standard quiver");
            for l in 2..=get(m, "lmax") {
                let roots = find_tau_roots(&q, l, bound(m))?.len();
                rows.push(SurveyRow { quiver: label.to_string(), l, roots, root_exists: roots > 0 });
            }
        }
        Ok(Output::new(json(&rows)))
    }
}
