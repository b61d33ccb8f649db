//! CSV panels, series, and flat `key = value` scenario files.
//!
//! Two panel layouts are supported:
//!
//! * paper-compatible: headerless rows `Y_A,P_A,Y_B,P_B`, one per year, two
//!   sectors only. Years are not stored and come from the reader's
//!   `start_year`.
//! * general: a `year,Y_<name>,P_<name>,...` header, then one row per period.
//!
//! Numbers are written with Rust's shortest round-trip representation, so a
//! write/read cycle reproduces every value bit for bit.

use std::io::{Read, Write};

use crate::equilibrium::{EconomySpec, SectorParams};
use crate::error::{Error, Result};
use crate::index::GrowthSeries;
use crate::panel::{Observation, PricedPanel};
use crate::scenarios::{
    build_schedule, calibrate_constant_growth, IslandRule, IslandScenario, END_YEAR, START_YEAR,
    TARGET_PRODUCTIVITY,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelFormat {
    PaperCompat { start_year: i64 },
    General,
}

impl PanelFormat {
    pub fn paper() -> Self {
        PanelFormat::PaperCompat {
            start_year: START_YEAR,
        }
    }
}

fn join(fields: impl IntoIterator<Item = String>) -> String {
    fields.into_iter().collect::<Vec<_>>().join(",")
}

pub fn write_panel<W: Write>(panel: &PricedPanel, format: PanelFormat, mut out: W) -> Result<()> {
    if panel.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    match format {
        PanelFormat::PaperCompat { .. } => {
            if panel.sector_count() != 2 {
                return Err(Error::FormatMismatch(panel.sector_count()));
            }
        }
        PanelFormat::General => {
            let header = std::iter::once("year".to_string()).chain(
                panel
                    .sector_names()
                    .iter()
                    .flat_map(|n| [format!("Y_{n}"), format!("P_{n}")]),
            );
            writeln!(out, "{}", join(header))?;
        }
    }
    for (label, row) in panel.labels().iter().zip(panel.periods()) {
        let values = row
            .iter()
            .flat_map(|o| [o.quantity.to_string(), o.price.to_string()]);
        match format {
            PanelFormat::PaperCompat { .. } => writeln!(out, "{}", join(values))?,
            PanelFormat::General => {
                writeln!(out, "{}", join(std::iter::once(label.to_string()).chain(values)))?
            }
        }
    }
    Ok(())
}

pub fn panel_to_string(panel: &PricedPanel, format: PanelFormat) -> Result<String> {
    let mut buf = Vec::new();
    write_panel(panel, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("writer emits ASCII"))
}

fn parse_number(field: &str, line: u64, what: &str) -> Result<f64> {
    let v: f64 = field
        .parse()
        .map_err(|_| Error::parse(line, format!("{what} '{field}' is not a decimal number")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("{what} '{field}' is not finite")));
    }
    Ok(v)
}

fn parse_observations(fields: &[&str], names: &[String], line: u64) -> Result<Vec<Observation>> {
    fields
        .chunks(2)
        .zip(names)
        .map(|(pair, name)| {
            let quantity = parse_number(pair[0], line, &format!("Y_{name}"))?;
            let price = parse_number(pair[1], line, &format!("P_{name}"))?;
            if quantity < 0.0 {
                return Err(Error::parse(line, format!("Y_{name} must be >= 0, got {quantity}")));
            }
            if price <= 0.0 {
                return Err(Error::parse(line, format!("P_{name} must be > 0, got {price}")));
            }
            Ok(Observation::new(quantity, price))
        })
        .collect()
}

fn parse_header(fields: &[&str], line: u64) -> Result<Vec<String>> {
    if fields.first().map(|f| f.eq_ignore_ascii_case("year")) != Some(true) {
        return Err(Error::parse(line, "header must start with 'year'"));
    }
    let rest = &fields[1..];
    if rest.is_empty() || rest.len() % 2 != 0 {
        return Err(Error::parse(
            line,
            "header must be 'year' followed by Y_<name>,P_<name> pairs",
        ));
    }
    rest.chunks(2)
        .map(|pair| {
            match (pair[0].strip_prefix("Y_"), pair[1].strip_prefix("P_")) {
                (Some(q), Some(p)) if q == p && !q.is_empty() => Ok(q.to_string()),
                _ => Err(Error::parse(
                    line,
                    format!("expected Y_<name>,P_<name>, got {},{}", pair[0], pair[1]),
                )),
            }
        })
        .collect()
}

pub fn read_panel<R: Read>(input: R, format: PanelFormat) -> Result<PricedPanel> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);

    let mut names: Option<Vec<String>> = match format {
        PanelFormat::PaperCompat { .. } => Some(vec!["A".into(), "B".into()]),
        PanelFormat::General => None,
    };
    let mut labels = Vec::new();
    let mut periods = Vec::new();

    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            Error::parse(line, e)
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let fields: Vec<&str> = record.iter().collect();
        let Some(sector_names) = names.as_ref() else {
            names = Some(parse_header(&fields, line)?);
            continue;
        };
        match format {
            PanelFormat::PaperCompat { start_year } => {
                if fields.len() != 4 {
                    return Err(Error::parse(
                        line,
                        format!("expected 4 fields (Y_A,P_A,Y_B,P_B), got {}", fields.len()),
                    ));
                }
                labels.push(start_year + periods.len() as i64);
                periods.push(parse_observations(&fields, sector_names, line)?);
            }
            PanelFormat::General => {
                let expected = 1 + 2 * sector_names.len();
                if fields.len() != expected {
                    return Err(Error::parse(
                        line,
                        format!("expected {expected} fields, got {}", fields.len()),
                    ));
                }
                let year: i64 = fields[0]
                    .parse()
                    .map_err(|_| Error::parse(line, format!("year '{}' is not an integer", fields[0])))?;
                if labels.last().is_some_and(|&prev| year <= prev) {
                    return Err(Error::parse(line, format!("year {year} is not after the previous row")));
                }
                labels.push(year);
                periods.push(parse_observations(&fields[1..], sector_names, line)?);
            }
        }
    }

    let names = names.ok_or_else(|| Error::parse(1, "missing header"))?;
    if periods.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    PricedPanel::new(names, labels, periods)
}

/// `year,rate` rows, plus `running_average` when requested.
pub fn write_series<W: Write>(series: &GrowthSeries, with_average: bool, mut out: W) -> Result<()> {
    if with_average {
        writeln!(out, "year,rate,running_average")?;
    } else {
        writeln!(out, "year,rate")?;
    }
    for (j, (year, rate)) in series.labels.iter().zip(&series.rates).enumerate() {
        if with_average {
            writeln!(out, "{year},{rate},{}", series.running_average[j])?;
        } else {
            writeln!(out, "{year},{rate}")?;
        }
    }
    Ok(())
}

/// Plot-ready table: a `year` column followed by named value columns.
pub fn write_columns<W: Write>(
    headers: &[&str],
    years: &[i64],
    columns: &[&[f64]],
    mut out: W,
) -> Result<()> {
    if headers.len() != columns.len() {
        return Err(Error::DimensionMismatch {
            expected: headers.len(),
            got: columns.len(),
        });
    }
    if let Some(c) = columns.iter().find(|c| c.len() != years.len()) {
        return Err(Error::DimensionMismatch {
            expected: years.len(),
            got: c.len(),
        });
    }
    writeln!(out, "{}", join(std::iter::once("year".to_string()).chain(headers.iter().map(|h| h.to_string()))))?;
    for (t, year) in years.iter().enumerate() {
        let row = std::iter::once(year.to_string()).chain(columns.iter().map(|c| c[t].to_string()));
        writeln!(out, "{}", join(row))?;
    }
    Ok(())
}

const CONFIG_KEYS: [&str; 11] = [
    "rule",
    "start_year",
    "end_year",
    "normalize",
    "lambda_A",
    "lambda_B",
    "delta",
    "R_c",
    "L_t",
    "N0",
    "omega",
];

/// Parses a `key = value` scenario file. Omitted keys take the toy-economy
/// defaults; `#` starts a comment.
pub fn read_scenario_config<R: Read>(mut input: R) -> Result<IslandScenario> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;

    let mut spec = EconomySpec::default();
    let mut rule = IslandRule::Middle;
    let mut start_year = START_YEAR;
    let mut end_year = END_YEAR;
    let mut normalize = true;
    let (mut lambda_a, mut lambda_b) = (spec.sectors[0].lambda, spec.sectors[1].lambda);
    let mut delta = spec.sectors[0].delta;

    for (n, raw) in text.lines().enumerate() {
        let line = n as u64 + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::parse(line, format!("expected 'key = value', got '{content}'")))?;
        if !CONFIG_KEYS.contains(&key) {
            return Err(Error::parse(line, format!("unknown key '{key}'")));
        }
        let number = || parse_number(value, line, key);
        let integer = || {
            value
                .parse::<i64>()
                .map_err(|_| Error::parse(line, format!("{key} '{value}' is not an integer")))
        };
        match key {
            "rule" => rule = value.parse().map_err(|e: Error| Error::parse(line, e))?,
            "start_year" => start_year = integer()?,
            "end_year" => end_year = integer()?,
            "normalize" => {
                normalize = match value.to_ascii_lowercase().as_str() {
                    "true" | "yes" | "1" | "on" => true,
                    "false" | "no" | "0" | "off" => false,
                    _ => return Err(Error::parse(line, format!("normalize '{value}' is not a boolean"))),
                }
            }
            "lambda_A" => lambda_a = number()?,
            "lambda_B" => lambda_b = number()?,
            "delta" => delta = number()?,
            "R_c" => spec.rate_of_return = number()?,
            "L_t" => spec.total_labor = number()?,
            "N0" => spec.subsistence = number()?,
            "omega" => spec.omega = number()?,
            _ => unreachable!("key list checked above"),
        }
    }

    spec.sectors = vec![
        SectorParams::new("A", lambda_a, delta)?,
        SectorParams::new("B", lambda_b, delta)?,
    ];
    spec.validate()?;

    let schedule = match rule {
        IslandRule::ConstantCalibrated => {
            let years = u32::try_from(end_year - start_year)
                .ok()
                .filter(|&y| y > 0)
                .ok_or_else(|| Error::validation("end_year must be after start_year"))?;
            let mut schedule = calibrate_constant_growth(TARGET_PRODUCTIVITY, years, &spec)?.schedule;
            schedule.start_year = start_year;
            schedule.end_year = end_year;
            schedule
        }
        _ => build_schedule(rule, start_year, end_year, normalize)?,
    };
    IslandScenario::new(rule.as_str(), spec, schedule)
}
