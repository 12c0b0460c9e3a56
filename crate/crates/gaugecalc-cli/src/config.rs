//! Run configuration: a flat `key=value` file overlaid by command-line flags.

use std::fmt;

use gaugecalc::donaldson::{Hbar, HbarConfig};
use gaugecalc::exactnum::parse_rational;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Table => "table",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub hbar: HbarConfig,
    pub order: u32,
    pub format: Format,
    pub approx: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { hbar: HbarConfig::default(), order: 8, format: Format::Table, approx: false }
    }
}

/// `p/q`, an integer, or `formal`.
pub fn parse_hbar(s: &str) -> Result<Hbar, CliError> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("formal") {
        return Ok(Hbar::Formal);
    }
    parse_rational(s).map(Hbar::Value).map_err(|e| CliError::Usage(format!("bad rational `{s}`: {e}")))
}

fn parse_bool(key: &str, s: &str) -> Result<bool, CliError> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Usage(format!("{key}: expected true or false, got `{s}`"))),
    }
}

impl Config {
    /// Reads `key=value` lines; `#` starts a comment, blank lines are skipped.
    pub fn parse(text: &str) -> Result<Config, CliError> {
        let mut c = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
            c.set(k.trim(), v.trim())?;
        }
        Ok(c)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "hbar1" | "hbar2" | "hbar3" | "hbar4" => {
                let i = key[4..].parse::<usize>().expect("digit");
                self.hbar = self.hbar.clone().with(i, parse_hbar(value)?);
            }
            "order" => {
                self.order = value.parse().map_err(|_| CliError::Usage(format!("order: not a nonnegative integer: `{value}`")))?;
            }
            "format" => {
                self.format = match value {
                    "json" => Format::Json,
                    "table" => Format::Table,
                    "csv" => Format::Csv,
                    _ => return Err(CliError::Usage(format!("format: expected json, table or csv, got `{value}`"))),
                }
            }
            "approx" => self.approx = parse_bool(key, value)?,
            _ => return Err(CliError::Usage(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }
}
