//! Productivity schedules for the three islands and the priced panels they
//! generate.
//!
//! All islands start at `T_A = T_B = 1` in 1900. North grows sector A fast
//! early and sector B fast late; South does the opposite; Middle grows both
//! at a constant 3.05% a year. With normalization on, each sector's series is
//! bent geometrically so that every island ends at exactly 18.93.

use std::fmt;
use std::str::FromStr;

use crate::equilibrium::{solve_equilibrium, EconomySpec};
use crate::error::{Error, Result};
use crate::index::{real_growth, IndexMethod};
use crate::panel::{Observation, PricedPanel};

pub const START_YEAR: i64 = 1900;
pub const END_YEAR: i64 = 1998;
/// Common terminal productivity of every island.
pub const TARGET_PRODUCTIVITY: f64 = 18.93;
pub const MIDDLE_MULTIPLIER: f64 = 1.0305;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IslandRule {
    North,
    Middle,
    South,
    /// Constant measured Laspeyres growth, found by [`calibrate_constant_growth`].
    ConstantCalibrated,
}

impl IslandRule {
    pub const ISLANDS: [IslandRule; 3] = [IslandRule::North, IslandRule::Middle, IslandRule::South];

    pub fn as_str(&self) -> &'static str {
        match self {
            IslandRule::North => "north",
            IslandRule::Middle => "middle",
            IslandRule::South => "south",
            IslandRule::ConstantCalibrated => "constant",
        }
    }
}

impl fmt::Display for IslandRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IslandRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "north" => Ok(IslandRule::North),
            "middle" => Ok(IslandRule::Middle),
            "south" => Ok(IslandRule::South),
            "constant" | "constant-calibrated" => Ok(IslandRule::ConstantCalibrated),
            other => Err(Error::validation(format!("unknown scenario rule '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductivitySchedule {
    pub rule: IslandRule,
    pub start_year: i64,
    pub end_year: i64,
    /// One series per sector, `end_year - start_year + 1` values each.
    pub productivity: Vec<Vec<f64>>,
    pub endpoint_normalized: bool,
}

impl ProductivitySchedule {
    pub fn years(&self) -> impl Iterator<Item = i64> {
        self.start_year..=self.end_year
    }

    pub fn len(&self) -> usize {
        (self.end_year - self.start_year + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.end_year < self.start_year
    }

    /// Productivity of every sector in year offset `t`.
    pub fn at(&self, t: usize) -> Vec<f64> {
        self.productivity.iter().map(|s| s[t]).collect()
    }

    pub fn final_productivity(&self) -> Vec<f64> {
        self.productivity.iter().map(|s| *s.last().unwrap()).collect()
    }

    fn validate(&self) -> Result<()> {
        for series in &self.productivity {
            if series.len() != self.len() {
                return Err(Error::DimensionMismatch {
                    expected: self.len(),
                    got: series.len(),
                });
            }
            if series[0] != 1.0 {
                return Err(Error::validation("productivity must start at 1"));
            }
            if let Some(w) = series.windows(2).find(|w| !(w[1] > w[0] && w[1].is_finite())) {
                return Err(Error::validation(format!(
                    "productivity must increase every year ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }
}

/// `(A, B)` multipliers for step `i` (1-based) of a rule.
fn multipliers(rule: IslandRule, i: i64) -> (f64, f64) {
    let early = 1.0 + 0.06 * (100 - i) as f64 / 99.0;
    let late = 1.0 + 0.06 * (i + 1) as f64 / 99.0;
    match rule {
        IslandRule::North => (early, late),
        IslandRule::South => (late, early),
        IslandRule::Middle | IslandRule::ConstantCalibrated => (MIDDLE_MULTIPLIER, MIDDLE_MULTIPLIER),
    }
}

/// Geometric endpoint correction: `T(t) * (target / T(end))^((t - start)/(end - start))`.
fn normalize_endpoint(series: &mut [f64], target: f64) {
    let steps = (series.len() - 1) as f64;
    let correction = target / series[series.len() - 1];
    for (t, v) in series.iter_mut().enumerate() {
        *v *= correction.powf(t as f64 / steps);
    }
    // pin the endpoint against pow rounding
    let last = series.len() - 1;
    series[last] = target;
}

pub fn build_schedule(
    rule: IslandRule,
    start_year: i64,
    end_year: i64,
    normalize: bool,
) -> Result<ProductivitySchedule> {
    if end_year <= start_year {
        return Err(Error::validation(format!(
            "end year {end_year} must be after start year {start_year}"
        )));
    }
    if rule == IslandRule::ConstantCalibrated {
        return Err(Error::validation(
            "the constant-growth schedule is produced by calibration, not a fixed recursion",
        ));
    }
    let steps = end_year - start_year;
    let mut a = Vec::with_capacity(steps as usize + 1);
    let mut b = Vec::with_capacity(steps as usize + 1);
    a.push(1.0);
    b.push(1.0);
    for i in 1..=steps {
        let (ma, mb) = multipliers(rule, i);
        a.push(a[a.len() - 1] * ma);
        b.push(b[b.len() - 1] * mb);
    }
    if normalize {
        normalize_endpoint(&mut a, TARGET_PRODUCTIVITY);
        normalize_endpoint(&mut b, TARGET_PRODUCTIVITY);
    }
    let schedule = ProductivitySchedule {
        rule,
        start_year,
        end_year,
        productivity: vec![a, b],
        endpoint_normalized: normalize,
    };
    schedule.validate()?;
    Ok(schedule)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IslandScenario {
    pub name: String,
    pub spec: EconomySpec,
    pub schedule: ProductivitySchedule,
}

impl IslandScenario {
    pub fn new(name: impl Into<String>, spec: EconomySpec, schedule: ProductivitySchedule) -> Result<Self> {
        spec.validate()?;
        if schedule.productivity.len() != spec.sectors.len() {
            return Err(Error::DimensionMismatch {
                expected: spec.sectors.len(),
                got: schedule.productivity.len(),
            });
        }
        Ok(IslandScenario {
            name: name.into(),
            spec,
            schedule,
        })
    }

    /// One of the three islands over 1900-1998 with the default economy.
    pub fn island(rule: IslandRule, normalize: bool) -> Result<Self> {
        let schedule = build_schedule(rule, START_YEAR, END_YEAR, normalize)?;
        Self::new(rule.as_str(), EconomySpec::default(), schedule)
    }
}

fn equilibrium_row(spec: &EconomySpec, productivity: &[f64]) -> Result<Vec<Observation>> {
    let eq = solve_equilibrium(spec, productivity)?;
    Ok(eq
        .sectors
        .iter()
        .map(|s| Observation::new(s.output, s.price))
        .collect())
}

/// Per-year equilibrium outputs and prices over the scenario's schedule.
pub fn generate_panel(scenario: &IslandScenario) -> Result<PricedPanel> {
    let schedule = &scenario.schedule;
    let periods = schedule
        .years()
        .enumerate()
        .map(|(t, year)| equilibrium_row(&scenario.spec, &schedule.at(t)).map_err(|e| e.at_year(year)))
        .collect::<Result<Vec<_>>>()?;
    PricedPanel::new(
        scenario.spec.sectors.iter().map(|s| s.name.clone()).collect(),
        schedule.years().collect(),
        periods,
    )
}

/// Labor employed in sector A each year.
pub fn sector_a_labor(scenario: &IslandScenario) -> Result<Vec<f64>> {
    let schedule = &scenario.schedule;
    schedule
        .years()
        .enumerate()
        .map(|(t, year)| {
            solve_equilibrium(&scenario.spec, &schedule.at(t))
                .map(|eq| eq.sectors[0].labor)
                .map_err(|e| e.at_year(year))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub schedule: ProductivitySchedule,
    /// Measured Laspeyres growth shared by every year.
    pub rate: f64,
}

const BISECTION_ITERATIONS: usize = 200;
const MAX_MULTIPLIER: f64 = 16.0;
const RATE_BRACKET: (f64, f64) = (-0.5, 2.0);
const ENDPOINT_TOLERANCE: f64 = 1e-6;

enum StepFit {
    Found(f64),
    /// Even the smallest feasible multiplier grows faster than the target.
    TargetTooLow,
    TargetTooHigh,
}

/// Sector-A multiplier for one year such that measured Laspeyres growth
/// equals `rate`. Growth is increasing in the multiplier.
fn fit_step(
    spec: &EconomySpec,
    base_row: &[Observation],
    t_a: f64,
    t_b_next: f64,
    min_t_a: f64,
    rate: f64,
) -> Result<StepFit> {
    let growth_at = |m: f64| -> Result<f64> {
        let next = equilibrium_row(spec, &[t_a * m, t_b_next])?;
        let pair = PricedPanel::new(
            spec.sectors.iter().map(|s| s.name.clone()).collect(),
            vec![0, 1],
            vec![base_row.to_vec(), next],
        )?;
        real_growth(&pair, 0, IndexMethod::Laspeyres)
    };

    let mut lo = (min_t_a / t_a) * (1.0 + 1e-12);
    let mut hi = MAX_MULTIPLIER;
    if growth_at(lo)? > rate {
        return Ok(StepFit::TargetTooLow);
    }
    if growth_at(hi)? < rate {
        return Ok(StepFit::TargetTooHigh);
    }
    for _ in 0..BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if growth_at(mid)? < rate {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Ok(StepFit::Found(0.5 * (lo + hi)))
}

enum PathFit {
    Path(Vec<f64>),
    TooLow,
    TooHigh,
}

fn fit_path(spec: &EconomySpec, b_series: &[f64], min_t_a: f64, rate: f64) -> Result<PathFit> {
    let mut a = vec![1.0];
    let mut row = equilibrium_row(spec, &[1.0, b_series[0]])?;
    for &t_b in &b_series[1..] {
        let t_a = a[a.len() - 1];
        match fit_step(spec, &row, t_a, t_b, min_t_a, rate)? {
            StepFit::Found(m) => {
                a.push(t_a * m);
                row = equilibrium_row(spec, &[t_a * m, t_b])?;
            }
            StepFit::TargetTooLow => return Ok(PathFit::TooLow),
            StepFit::TargetTooHigh => return Ok(PathFit::TooHigh),
        }
    }
    Ok(PathFit::Path(a))
}

/// Schedule with constant measured Laspeyres growth that ends with both
/// sectors at `target`.
///
/// Sector B grows at the uniform rate `target^(1/years)`. For a candidate
/// growth rate, each year's sector-A multiplier is bisected so the measured
/// growth hits the candidate; the candidate itself is bisected until
/// sector A also ends at `target`.
pub fn calibrate_constant_growth(target: f64, years: u32, spec: &EconomySpec) -> Result<Calibration> {
    spec.validate()?;
    if years == 0 {
        return Err(Error::validation("calibration needs at least one year"));
    }
    if !(target.is_finite() && target > 1.0) {
        return Err(Error::validation(format!(
            "target productivity must exceed 1, got {target}"
        )));
    }
    let min_t_a = spec.min_feasible_productivity()?;
    if min_t_a >= 1.0 {
        return Err(Error::Calibration(format!(
            "subsistence infeasible at starting productivity 1 (needs T_A >= {min_t_a})"
        )));
    }
    let b_multiplier = target.powf(1.0 / years as f64);
    let mut b_series: Vec<f64> = (0..=years).map(|t| b_multiplier.powi(t as i32)).collect();
    b_series[years as usize] = target;

    let (mut lo, mut hi) = RATE_BRACKET;
    let mut best: Option<(f64, Vec<f64>)> = None;
    for _ in 0..BISECTION_ITERATIONS {
        let rate = 0.5 * (lo + hi);
        match fit_path(spec, &b_series, min_t_a, rate)? {
            PathFit::TooLow => lo = rate,
            PathFit::TooHigh => hi = rate,
            PathFit::Path(a) => {
                let end = a[a.len() - 1];
                if end < target {
                    lo = rate;
                } else {
                    hi = rate;
                }
                let done = (end - target).abs() <= ENDPOINT_TOLERANCE * 1e-3;
                best = Some((rate, a));
                if done {
                    break;
                }
            }
        }
        if hi - lo <= 1e-15 {
            break;
        }
    }

    let (rate, a) = best.ok_or_else(|| {
        Error::Calibration(format!(
            "no feasible constant growth rate in [{}, {}] (final bracket [{lo}, {hi}])",
            RATE_BRACKET.0, RATE_BRACKET.1
        ))
    })?;
    let end = a[a.len() - 1];
    if (end - target).abs() > ENDPOINT_TOLERANCE {
        return Err(Error::Calibration(format!(
            "sector A ends at {end}, target {target} (rate {rate}, bracket [{lo}, {hi}])"
        )));
    }
    let schedule = ProductivitySchedule {
        rule: IslandRule::ConstantCalibrated,
        start_year: START_YEAR,
        end_year: START_YEAR + years as i64,
        productivity: vec![a, b_series],
        endpoint_normalized: false,
    };
    schedule.validate().map_err(|e| Error::Calibration(e.to_string()))?;
    Ok(Calibration { schedule, rate })
}
