use clap::ArgMatches;

use crate::commands::*;
use crate::error::CliError;

pub struct Output {
    pub payload: String,
    /// Lines for stderr.
    pub diagnostics: Vec<String>,
}

impl Output {
    pub fn new(payload: String) -> Self {
        Self { payload, diagnostics: Vec::new() }
    }
}

pub trait Command: Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn args(&self, cmd: clap::Command) -> clap::Command;
    fn run(&self, m: &ArgMatches) -> Result<Output, CliError>;
}

static COMMANDS: &[&dyn Command] = &[
    &mckay::McKay,
    &mckay::HQuiver,
    &mckay::ArAngle,
    &reduce::CyReduce,
    &roots::RootSearch,
    &roots::FSection,
    &roots::NormalForm,
    &reduce::Star,
    &roots::DynkinSurvey,
    &convert::Convert,
];

pub fn commands() -> &'static [&'static dyn Command] {
    COMMANDS
}

pub fn find(name: &str) -> Option<&'static dyn Command> {
    COMMANDS.iter().copied().find(|c| c.name() == name)
}
