//! Nominal GDP, bilateral quantity indexes, and their chained series.
//!
//! Every bilateral index compares period `i` with period `i + 1` of a
//! [`PricedPanel`]. Chaining multiplies consecutive bilateral ratios, so a
//! chained index over a closed loop need not return to one; see
//! [`circularity_residual`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::panel::{Observation, PricedPanel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IndexMethod {
    /// Both periods valued at base-period prices.
    #[default]
    Laspeyres,
    /// Both periods valued at current-period prices.
    Paasche,
    /// Geometric mean of Laspeyres and Paasche.
    Fisher,
    /// Share-weighted mean of log quantity changes.
    Tornqvist,
}

impl IndexMethod {
    pub const ALL: [IndexMethod; 4] = [
        IndexMethod::Laspeyres,
        IndexMethod::Paasche,
        IndexMethod::Fisher,
        IndexMethod::Tornqvist,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IndexMethod::Laspeyres => "laspeyres",
            IndexMethod::Paasche => "paasche",
            IndexMethod::Fisher => "fisher",
            IndexMethod::Tornqvist => "tornqvist",
        }
    }
}

impl fmt::Display for IndexMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IndexMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "laspeyres" => Ok(IndexMethod::Laspeyres),
            "paasche" => Ok(IndexMethod::Paasche),
            "fisher" => Ok(IndexMethod::Fisher),
            "tornqvist" | "törnqvist" => Ok(IndexMethod::Tornqvist),
            other => Err(Error::validation(format!("unknown index method '{other}'"))),
        }
    }
}

/// How the per-step rates are summarized in [`GrowthSeries::running_average`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Averaging {
    #[default]
    Arithmetic,
    Geometric,
}

/// What valuation produced a [`GrowthSeries`].
#[derive(Debug, Clone, PartialEq)]
pub enum GrowthBasis {
    Index(IndexMethod),
    /// Fixed-basket valuation at an external reference price vector.
    CommonPrices(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSeries {
    pub basis: GrowthBasis,
    /// Label of the later period of each step.
    pub labels: Vec<i64>,
    pub rates: Vec<f64>,
    /// `chained_level[j]` is the product of `1 + rates[m]` for `m <= j`.
    pub chained_level: Vec<f64>,
    pub running_average: Vec<f64>,
}

impl GrowthSeries {
    /// Builds the series from gross per-step ratios `1 + g`.
    pub(crate) fn from_ratios(
        basis: GrowthBasis,
        labels: Vec<i64>,
        ratios: &[f64],
        averaging: Averaging,
    ) -> Self {
        let rates: Vec<f64> = ratios.iter().map(|r| r - 1.0).collect();
        let chained_level: Vec<f64> = ratios
            .iter()
            .scan(1.0, |level, r| {
                *level *= r;
                Some(*level)
            })
            .collect();
        let running_average = match averaging {
            Averaging::Arithmetic => rates
                .iter()
                .scan(0.0, |sum, r| {
                    *sum += r;
                    Some(*sum)
                })
                .enumerate()
                .map(|(j, sum)| sum / (j + 1) as f64)
                .collect(),
            Averaging::Geometric => chained_level
                .iter()
                .enumerate()
                .map(|(j, level)| level.powf(1.0 / (j + 1) as f64) - 1.0)
                .collect(),
        };
        GrowthSeries {
            basis,
            labels,
            rates,
            chained_level,
            running_average,
        }
    }

    pub fn method(&self) -> Option<IndexMethod> {
        match self.basis {
            GrowthBasis::Index(m) => Some(m),
            GrowthBasis::CommonPrices(_) => None,
        }
    }

    pub fn final_average(&self) -> Option<f64> {
        self.running_average.last().copied()
    }

    pub fn final_level(&self) -> f64 {
        self.chained_level.last().copied().unwrap_or(1.0)
    }
}

fn value_at(quantities: &[Observation], prices: &[Observation]) -> f64 {
    quantities
        .iter()
        .zip(prices)
        .map(|(q, p)| q.quantity * p.price)
        .sum()
}

fn step(panel: &PricedPanel, i: usize) -> Result<(&[Observation], &[Observation])> {
    let len = panel.len();
    if i + 1 >= len {
        return Err(Error::OutOfRange { index: i + 1, len });
    }
    Ok((panel.period(i)?, panel.period(i + 1)?))
}

/// `Σ_a P_a Y_a` for one period.
pub fn nominal_gdp(panel: &PricedPanel, period: usize) -> Result<f64> {
    Ok(panel.period(period)?.iter().map(Observation::value).sum())
}

pub fn nominal_growth(panel: &PricedPanel, i: usize) -> Result<f64> {
    Ok(nominal_index(panel, i)? - 1.0)
}

fn laspeyres(base: &[Observation], next: &[Observation], i: usize) -> Result<f64> {
    let denom = value_at(base, base);
    if denom <= 0.0 {
        return Err(Error::DegenerateBase { period: i });
    }
    Ok(value_at(next, base) / denom)
}

fn paasche(base: &[Observation], next: &[Observation], i: usize) -> Result<f64> {
    let denom = value_at(base, next);
    if denom <= 0.0 {
        return Err(Error::DegenerateBase { period: i });
    }
    Ok(value_at(next, next) / denom)
}

fn tornqvist(panel: &PricedPanel, base: &[Observation], next: &[Observation], i: usize) -> Result<f64> {
    let base_total = value_at(base, base);
    let next_total = value_at(next, next);
    if base_total <= 0.0 || next_total <= 0.0 {
        return Err(Error::DegenerateBase { period: i });
    }
    let mut log_ratio = 0.0;
    for (a, (b, n)) in base.iter().zip(next).enumerate() {
        if b.quantity <= 0.0 || n.quantity <= 0.0 {
            let period = if b.quantity <= 0.0 { i } else { i + 1 };
            return Err(Error::MethodDomain {
                method: IndexMethod::Tornqvist,
                sector: panel.sector_names()[a].clone(),
                period,
            });
        }
        let share = 0.5 * (b.value() / base_total + n.value() / next_total);
        log_ratio += share * (n.quantity / b.quantity).ln();
    }
    Ok(log_ratio.exp())
}

/// Gross quantity index `1 + g` between period `i` and `i + 1`.
pub fn quantity_index(panel: &PricedPanel, i: usize, method: IndexMethod) -> Result<f64> {
    let (base, next) = step(panel, i)?;
    match method {
        IndexMethod::Laspeyres => laspeyres(base, next, i),
        IndexMethod::Paasche => paasche(base, next, i),
        IndexMethod::Fisher => Ok((laspeyres(base, next, i)? * paasche(base, next, i)?).sqrt()),
        IndexMethod::Tornqvist => tornqvist(panel, base, next, i),
    }
}

/// Ratio of nominal GDP in period `i + 1` to period `i`.
pub fn nominal_index(panel: &PricedPanel, i: usize) -> Result<f64> {
    let (base, next) = step(panel, i)?;
    let base_gdp = value_at(base, base);
    if base_gdp <= 0.0 {
        return Err(Error::DegenerateBase { period: i });
    }
    Ok(value_at(next, next) / base_gdp)
}

/// Implicit price deflator: nominal index over quantity index.
pub fn price_index(panel: &PricedPanel, i: usize, method: IndexMethod) -> Result<f64> {
    Ok(nominal_index(panel, i)? / quantity_index(panel, i, method)?)
}

/// Real growth from period `i` to `i + 1`.
pub fn real_growth(panel: &PricedPanel, i: usize, method: IndexMethod) -> Result<f64> {
    Ok(quantity_index(panel, i, method)? - 1.0)
}

/// Deflator inflation implied by splitting nominal growth into real × price.
pub fn inflation(panel: &PricedPanel, i: usize, method: IndexMethod) -> Result<f64> {
    Ok(price_index(panel, i, method)? - 1.0)
}

pub fn growth_series(panel: &PricedPanel, method: IndexMethod) -> Result<GrowthSeries> {
    growth_series_with(panel, method, Averaging::Arithmetic)
}

pub fn growth_series_with(
    panel: &PricedPanel,
    method: IndexMethod,
    averaging: Averaging,
) -> Result<GrowthSeries> {
    if panel.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: panel.len(),
        });
    }
    let ratios = (0..panel.len() - 1)
        .map(|i| quantity_index(panel, i, method))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthSeries::from_ratios(
        GrowthBasis::Index(method),
        panel.labels()[1..].to_vec(),
        &ratios,
        averaging,
    ))
}

const LOOP_TOLERANCE: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= LOOP_TOLERANCE * a.abs().max(b.abs())
}

/// `ln` of the chained quantity level around a closed loop. Zero means the
/// chained index passes the circularity test.
pub fn circularity_residual(panel: &PricedPanel, method: IndexMethod) -> Result<f64> {
    let first = panel.period(0)?;
    let last = panel.period(panel.len() - 1)?;
    let is_loop = first
        .iter()
        .zip(last)
        .all(|(a, b)| close(a.quantity, b.quantity) && close(a.price, b.price));
    if !is_loop {
        return Err(Error::NotALoop);
    }
    let series = growth_series(panel, method)?;
    Ok(series.final_level().ln())
}

/// Trapezoidal `∫ Σ_a P_a dY_a` along the panel read as a path.
pub fn path_integral_gdp(path: &PricedPanel) -> Result<f64> {
    if path.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: path.len(),
        });
    }
    Ok(path
        .periods()
        .windows(2)
        .map(|w| {
            w[0].iter()
                .zip(&w[1])
                .map(|(a, b)| 0.5 * (a.price + b.price) * (b.quantity - a.quantity))
                .sum::<f64>()
        })
        .sum())
}
