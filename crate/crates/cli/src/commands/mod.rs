//! Subcommands and the argument and output helpers they share.

pub mod convert;
pub mod mckay;
pub mod reduce;
pub mod roots;

use std::fs;

use clap::{Arg, ArgAction, ArgMatches};
use serde::de::DeserializeOwned;
use serde::Serialize;
use tauroot::io::{deserialize, to_dot};
use tauroot::ColoredQuiver;

use crate::error::CliError;

/// Comma-separated list; the empty string is the empty list.
fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|e| format!("`{x}`: {e}")))
        .collect()
}

pub fn u32_list(s: &str) -> Result<Vec<u32>, String> {
    list(s)
}

pub fn string_list(s: &str) -> Result<Vec<String>, String> {
    list(s)
}

pub fn flag(name: &'static str, help: &'static str) -> Arg {
    Arg::new(name).long(name).action(ArgAction::SetTrue).help(help)
}

pub fn required(
    name: &'static str,
    value: &'static str,
    parser: impl clap::builder::IntoResettable<clap::builder::ValueParser>,
) -> Arg {
    Arg::new(name).long(name).value_name(value).required(true).value_parser(parser)
}

pub fn dot_flag() -> Arg {
    flag("dot", "Emit DOT instead of JSON")
}

pub fn offset_bound() -> Arg {
    Arg::new("offset-bound")
        .long("offset-bound")
        .value_name("B")
        .env("TAUROOT_OFFSET_BOUND")
        .value_parser(clap::value_parser!(i64).range(0..))
        .help("Largest |delta| tried by the root search (default: number of vertices)")
}

pub fn get<T: Clone + Send + Sync + 'static>(m: &ArgMatches, name: &str) -> T {
    m.get_one::<T>(name).cloned().expect("required argument")
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

pub fn read_json<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

pub fn read_quiver(path: &str) -> Result<ColoredQuiver, CliError> {
    deserialize(&read_text(path)?).map_err(|e| CliError::format(path, e))
}

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payloads serialize");
    s.push('\n');
    s
}

pub fn quiver_payload(q: &ColoredQuiver, dot: bool) -> String {
    if dot {
        to_dot(q)
    } else {
        json(q)
    }
}
