//! Comparing two economies: naive catch-up arithmetic, common-price growth,
//! and the split of one economy's growth into national real growth,
//! national inflation, and growth seen from outside.

use crate::error::{Error, Result};
use crate::index::{
    inflation, nominal_gdp, nominal_growth, real_growth, Averaging, GrowthBasis, GrowthSeries, IndexMethod,
};
use crate::panel::PricedPanel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatchupEstimate {
    /// Years until the smaller economy matches the bigger one.
    pub years: f64,
    /// The gap widens forever (or the small economy is already ahead and
    /// falling back); `years` is then negative.
    pub diverging: bool,
}

/// Solves `small (1+g_small)^X = big (1+g_big)^X` for `X`.
pub fn naive_catchup(gdp_small: f64, gdp_big: f64, g_small: f64, g_big: f64) -> Result<CatchupEstimate> {
    for (what, v) in [("small GDP", gdp_small), ("big GDP", gdp_big)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::validation(format!("{what} must be > 0, got {v}")));
        }
    }
    for (what, g) in [("small growth", g_small), ("big growth", g_big)] {
        if !(g.is_finite() && g > -1.0) {
            return Err(Error::validation(format!("{what} must exceed -1, got {g}")));
        }
    }
    let relative_growth = ((1.0 + g_small) / (1.0 + g_big)).ln();
    if relative_growth == 0.0 {
        return Err(Error::NoSolution(
            "equal growth rates never close a gap".into(),
        ));
    }
    let years = (gdp_big / gdp_small).ln() / relative_growth;
    Ok(CatchupEstimate {
        years,
        diverging: years < 0.0,
    })
}

fn check_reference(panel: &PricedPanel, reference_prices: &[f64]) -> Result<()> {
    if reference_prices.len() != panel.sector_count() {
        return Err(Error::DimensionMismatch {
            expected: panel.sector_count(),
            got: reference_prices.len(),
        });
    }
    if let Some(p) = reference_prices.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
        return Err(Error::validation(format!(
            "reference prices must be > 0, got {p}"
        )));
    }
    Ok(())
}

/// `Σ_a P_a^ref Y_a` for one period.
pub fn common_price_value(panel: &PricedPanel, period: usize, reference_prices: &[f64]) -> Result<f64> {
    check_reference(panel, reference_prices)?;
    Ok(panel
        .period(period)?
        .iter()
        .zip(reference_prices)
        .map(|(o, p)| o.quantity * p)
        .sum())
}

/// Growth of the panel's output valued at one fixed reference price vector.
pub fn common_price_growth(panel: &PricedPanel, reference_prices: &[f64]) -> Result<GrowthSeries> {
    check_reference(panel, reference_prices)?;
    if panel.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: panel.len(),
        });
    }
    let values = (0..panel.len())
        .map(|t| common_price_value(panel, t, reference_prices))
        .collect::<Result<Vec<_>>>()?;
    let ratios = values
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            if w[0] <= 0.0 {
                Err(Error::DegenerateBase { period: i })
            } else {
                Ok(w[1] / w[0])
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthSeries::from_ratios(
        GrowthBasis::CommonPrices(reference_prices.to_vec()),
        panel.labels()[1..].to_vec(),
        &ratios,
        Averaging::Arithmetic,
    ))
}

/// How an outside observer values the economy.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum ReferenceRule {
    /// Own-currency nominal GDP.
    #[default]
    OwnNominal,
    /// Fixed reference price vector.
    CommonPrices(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub national_real_growth: f64,
    pub national_inflation: f64,
    pub international_growth: f64,
    pub method: IndexMethod,
    pub reference_prices: Option<Vec<f64>>,
}

impl GapReport {
    /// `(1 + real)(1 + inflation) - 1`.
    pub fn implied_nominal_growth(&self) -> f64 {
        (1.0 + self.national_real_growth) * (1.0 + self.national_inflation) - 1.0
    }
}

/// National split of step `i` next to own-currency nominal growth.
pub fn perspective_report(panel: &PricedPanel, i: usize, method: IndexMethod) -> Result<GapReport> {
    perspective_report_with(panel, i, method, &ReferenceRule::OwnNominal)
}

pub fn perspective_report_with(
    panel: &PricedPanel,
    i: usize,
    method: IndexMethod,
    rule: &ReferenceRule,
) -> Result<GapReport> {
    let national_real_growth = real_growth(panel, i, method)?;
    let national_inflation = inflation(panel, i, method)?;
    let (international_growth, reference_prices) = match rule {
        ReferenceRule::OwnNominal => (nominal_growth(panel, i)?, None),
        ReferenceRule::CommonPrices(prices) => {
            let base = common_price_value(panel, i, prices)?;
            let next = common_price_value(panel, i + 1, prices)?;
            if base <= 0.0 {
                return Err(Error::DegenerateBase { period: i });
            }
            (next / base - 1.0, Some(prices.clone()))
        }
    };
    Ok(GapReport {
        national_real_growth,
        national_inflation,
        international_growth,
        method,
        reference_prices,
    })
}

/// Which valuation decides when the small economy has caught up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrossingRule {
    /// Both economies valued at the big economy's first-period prices.
    #[default]
    CommonPrices,
    /// Each economy at its own nominal GDP.
    OwnNominal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatchupOutcome {
    /// First period label at which the small economy's value reaches the big one's.
    pub crossing_year: Option<i64>,
    /// Linear interpolation of the crossing between the bracketing periods.
    pub crossing_fractional: Option<f64>,
    /// Naive estimate from first-step Laspeyres real growth, in years from the
    /// first period.
    pub naive_years: Option<CatchupEstimate>,
    pub small_values: Vec<f64>,
    pub big_values: Vec<f64>,
}

/// Compares two simulated economies over a shared horizon.
pub fn model_catchup(small: &PricedPanel, big: &PricedPanel, rule: CrossingRule) -> Result<CatchupOutcome> {
    if small.labels() != big.labels() {
        return Err(Error::validation("economies must share period labels"));
    }
    if small.sector_count() != big.sector_count() {
        return Err(Error::DimensionMismatch {
            expected: big.sector_count(),
            got: small.sector_count(),
        });
    }
    let values = |panel: &PricedPanel| -> Result<Vec<f64>> {
        match rule {
            CrossingRule::OwnNominal => (0..panel.len()).map(|t| nominal_gdp(panel, t)).collect(),
            CrossingRule::CommonPrices => {
                let reference: Vec<f64> = big.period(0)?.iter().map(|o| o.price).collect();
                (0..panel.len())
                    .map(|t| common_price_value(panel, t, &reference))
                    .collect()
            }
        }
    };
    let small_values = values(small)?;
    let big_values = values(big)?;
    let labels = small.labels();

    let crossing = small_values
        .iter()
        .zip(&big_values)
        .position(|(s, b)| s >= b);
    let crossing_year = crossing.map(|t| labels[t]);
    let crossing_fractional = crossing.map(|t| {
        if t == 0 {
            return labels[0] as f64;
        }
        let before = small_values[t - 1] - big_values[t - 1];
        let after = small_values[t] - big_values[t];
        let span = (labels[t] - labels[t - 1]) as f64;
        labels[t - 1] as f64 + span * before / (before - after)
    });

    let naive_years = if small.len() >= 2 {
        let g_small = real_growth(small, 0, IndexMethod::Laspeyres)?;
        let g_big = real_growth(big, 0, IndexMethod::Laspeyres)?;
        naive_catchup(small_values[0], big_values[0], g_small, g_big).ok()
    } else {
        None
    };

    Ok(CatchupOutcome {
        crossing_year,
        crossing_fractional,
        naive_years,
        small_values,
        big_values,
    })
}
