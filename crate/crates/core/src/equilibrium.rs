//! Static per-year equilibrium of a Cobb-Douglas economy.
//!
//! Each sector produces `y = T^λ k^(1-λ)` per worker. Capital is rented in
//! units of the sector's own output at gross rate `R_c + δ`, so the
//! first-order condition on capital is price-free and gives a closed form for
//! `k`. The wage is the numéraire; the zero-profit condition
//! `P y = W + P k (R_c + δ)` then pins the sector price at `W / (λ y)`.
//!
//! Labor is split between the subsistence good (sector A) and the service
//! (sector B) by the closed-form maximizer of
//! `u = (Y_A/L_t - N⁰)(Y_B/L_t)^Ω`.

use crate::error::{Error, Result};

/// One production sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorParams {
    pub name: String,
    /// Output elasticity of effective labor, in (0, 1).
    pub lambda: f64,
    /// Depreciation per year.
    pub delta: f64,
}

impl SectorParams {
    pub fn new(name: impl Into<String>, lambda: f64, delta: f64) -> Result<Self> {
        let sector = SectorParams {
            name: name.into(),
            lambda,
            delta,
        };
        sector.validate()?;
        Ok(sector)
    }

    pub fn validate(&self) -> Result<()> {
        check_elasticity(self.lambda)?;
        if !self.delta.is_finite() || self.delta < 0.0 {
            return Err(Error::validation(format!(
                "sector {}: depreciation must be finite and >= 0, got {}",
                self.name, self.delta
            )));
        }
        Ok(())
    }
}

/// Price-level normalization applied each year.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Numeraire {
    #[default]
    WageEqualsOne,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EconomySpec {
    /// Sector A (subsistence good) first, sector B (service) second.
    pub sectors: Vec<SectorParams>,
    pub total_labor: f64,
    pub rate_of_return: f64,
    /// Goods-A units per person per year below which utility turns negative.
    pub subsistence: f64,
    pub omega: f64,
    pub numeraire: Numeraire,
}

pub const DEFAULT_ELASTICITY: f64 = 2.0 / 3.0;
pub const DEFAULT_DEPRECIATION: f64 = 0.055;
pub const DEFAULT_RATE_OF_RETURN: f64 = 0.055;
pub const DEFAULT_TOTAL_LABOR: f64 = 100_000.0;
pub const DEFAULT_SUBSISTENCE: f64 = 1.6711;
pub const DEFAULT_OMEGA: f64 = 5.0;

impl Default for EconomySpec {
    /// The two-island toy economy: λ = 2/3, δ = R_c = 5.5%, 100k workers,
    /// N⁰ = 1.6711, Ω = 5.
    fn default() -> Self {
        EconomySpec {
            sectors: vec![
                SectorParams {
                    name: "A".into(),
                    lambda: DEFAULT_ELASTICITY,
                    delta: DEFAULT_DEPRECIATION,
                },
                SectorParams {
                    name: "B".into(),
                    lambda: DEFAULT_ELASTICITY,
                    delta: DEFAULT_DEPRECIATION,
                },
            ],
            total_labor: DEFAULT_TOTAL_LABOR,
            rate_of_return: DEFAULT_RATE_OF_RETURN,
            subsistence: DEFAULT_SUBSISTENCE,
            omega: DEFAULT_OMEGA,
            numeraire: Numeraire::WageEqualsOne,
        }
    }
}

impl EconomySpec {
    pub fn validate(&self) -> Result<()> {
        if self.sectors.is_empty() {
            return Err(Error::validation("economy has no sectors"));
        }
        for s in &self.sectors {
            s.validate()?;
            let gross = self.rate_of_return + s.delta;
            if !gross.is_finite() || gross <= 0.0 {
                return Err(Error::validation(format!(
                    "sector {}: R_c + delta must be > 0, got {gross}",
                    s.name
                )));
            }
        }
        if !(self.total_labor.is_finite() && self.total_labor > 0.0) {
            return Err(Error::validation(format!(
                "total labor must be > 0, got {}",
                self.total_labor
            )));
        }
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return Err(Error::validation(format!(
                "omega must be >= 0, got {}",
                self.omega
            )));
        }
        if !(self.subsistence.is_finite() && self.subsistence >= 0.0) {
            return Err(Error::validation(format!(
                "subsistence must be >= 0, got {}",
                self.subsistence
            )));
        }
        Ok(())
    }

    pub fn gross_return(&self, sector: usize) -> f64 {
        self.rate_of_return + self.sectors[sector].delta
    }

    fn two_sectors(&self) -> Result<(&SectorParams, &SectorParams)> {
        match self.sectors.as_slice() {
            [a, b] => Ok((a, b)),
            other => Err(Error::validation(format!(
                "labor allocation needs exactly 2 sectors, economy has {}",
                other.len()
            ))),
        }
    }

    /// Lowest sector-A productivity at which subsistence can be met.
    pub fn min_feasible_productivity(&self) -> Result<f64> {
        self.validate()?;
        let (a, _) = self.two_sectors()?;
        let unit = output_per_labor_at_unit_productivity(a.lambda, self.gross_return(0));
        Ok(self.subsistence / unit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorOutcome {
    /// Capital per worker, in units of the sector's own good.
    pub capital_per_labor: f64,
    /// Capital per worker valued at the sector price.
    pub capital_value_per_labor: f64,
    pub output_per_labor: f64,
    pub price: f64,
    pub labor: f64,
    /// `labor * output_per_labor`.
    pub output: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumPoint {
    pub sectors: Vec<SectorOutcome>,
    pub wage: f64,
}

impl EquilibriumPoint {
    /// Multiplies the wage and every price (and capital value) by `factor`.
    /// Real allocations are untouched.
    pub fn rescale_prices(&self, factor: f64) -> Self {
        EquilibriumPoint {
            wage: self.wage * factor,
            sectors: self
                .sectors
                .iter()
                .map(|s| SectorOutcome {
                    price: s.price * factor,
                    capital_value_per_labor: s.capital_value_per_labor * factor,
                    ..*s
                })
                .collect(),
        }
    }

    pub fn total_labor(&self) -> f64 {
        self.sectors.iter().map(|s| s.labor).sum()
    }
}

fn check_elasticity(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "elasticity must lie in (0, 1), got {lambda}"
        )))
    }
}

fn check_non_negative(what: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "{what} must be finite and >= 0, got {v}"
        )))
    }
}

fn check_positive(what: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "{what} must be finite and > 0, got {v}"
        )))
    }
}

/// `y` per unit of productivity: `((1-λ)/gross)^((1-λ)/λ)`.
fn output_per_labor_at_unit_productivity(lambda: f64, gross_return: f64) -> f64 {
    ((1.0 - lambda) / gross_return).powf((1.0 - lambda) / lambda)
}

/// Capital per worker equating the marginal product of capital with
/// `gross_return`: `k = T ((1-λ)/gross)^(1/λ)`.
pub fn solve_capital_per_labor(productivity: f64, lambda: f64, gross_return: f64) -> Result<f64> {
    check_non_negative("productivity", productivity)?;
    check_elasticity(lambda)?;
    check_positive("gross return", gross_return)?;
    Ok(productivity * ((1.0 - lambda) / gross_return).powf(1.0 / lambda))
}

/// `y = T^λ k^(1-λ)`.
pub fn output_per_labor(productivity: f64, lambda: f64, capital: f64) -> Result<f64> {
    check_non_negative("productivity", productivity)?;
    check_elasticity(lambda)?;
    check_non_negative("capital per labor", capital)?;
    Ok(productivity.powf(lambda) * capital.powf(1.0 - lambda))
}

/// Zero-profit price `(W + k * gross) / y`, with `k` the capital cost base in
/// money units.
pub fn price_of_sector(wage: f64, capital: f64, output: f64, gross_return: f64) -> Result<f64> {
    check_non_negative("wage", wage)?;
    check_non_negative("capital", capital)?;
    check_positive("gross return", gross_return)?;
    if !output.is_finite() || output < 0.0 {
        return Err(Error::validation(format!(
            "output per labor must be finite and >= 0, got {output}"
        )));
    }
    if output == 0.0 {
        return Err(Error::DegenerateSector {
            sector: "<unnamed>".into(),
        });
    }
    Ok((wage + capital * gross_return) / output)
}

/// Utility-maximizing labor split `(L_A, L_B)` for a two-sector economy.
pub fn allocate_labor(spec: &EconomySpec, productivity_a: f64, productivity_b: f64) -> Result<(f64, f64)> {
    spec.validate()?;
    let (a, b) = spec.two_sectors()?;
    check_positive("sector A productivity", productivity_a)?;
    check_positive("sector B productivity", productivity_b)?;

    let y_a = productivity_a * output_per_labor_at_unit_productivity(a.lambda, spec.gross_return(0));
    let weight_b = spec.omega * b.lambda;
    let share_a = (a.lambda + weight_b * spec.subsistence / y_a) / (a.lambda + weight_b);
    let labor_a = spec.total_labor * share_a;

    if labor_a > spec.total_labor {
        return Err(Error::Infeasible {
            required: labor_a,
            available: spec.total_labor,
        });
    }
    if labor_a < 0.0 || !labor_a.is_finite() {
        return Err(Error::validation(format!(
            "computed sector A labor {labor_a} is not a valid headcount"
        )));
    }
    Ok((labor_a, spec.total_labor - labor_a))
}

/// Equilibrium with the wage as numéraire (wage = 1).
pub fn solve_equilibrium(spec: &EconomySpec, productivity: &[f64]) -> Result<EquilibriumPoint> {
    let wage = match spec.numeraire {
        Numeraire::WageEqualsOne => 1.0,
    };
    solve_equilibrium_at_wage(spec, productivity, wage)
}

/// Equilibrium with an explicit wage level. Only prices depend on `wage`.
pub fn solve_equilibrium_at_wage(
    spec: &EconomySpec,
    productivity: &[f64],
    wage: f64,
) -> Result<EquilibriumPoint> {
    spec.validate()?;
    check_positive("wage", wage)?;
    if productivity.len() != spec.sectors.len() {
        return Err(Error::DimensionMismatch {
            expected: spec.sectors.len(),
            got: productivity.len(),
        });
    }
    let (labor_a, labor_b) = allocate_labor(spec, productivity[0], productivity[1])?;

    let sectors = spec
        .sectors
        .iter()
        .zip(productivity)
        .zip([labor_a, labor_b])
        .enumerate()
        .map(|(i, ((sector, &t), labor))| {
            let gross = spec.gross_return(i);
            let k = solve_capital_per_labor(t, sector.lambda, gross)?;
            let y = output_per_labor(t, sector.lambda, k)?;
            // y - k*gross = λ y > 0 whenever y > 0
            let net = y - k * gross;
            if y == 0.0 || net <= 0.0 {
                return Err(Error::DegenerateSector {
                    sector: sector.name.clone(),
                });
            }
            let price = wage / net;
            Ok(SectorOutcome {
                capital_per_labor: k,
                capital_value_per_labor: price * k,
                output_per_labor: y,
                price,
                labor,
                output: labor * y,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(EquilibriumPoint { sectors, wage })
}

/// `(Y_A/L_t - N⁰)(Y_B/L_t)^Ω`; negative below subsistence.
pub fn utility(spec: &EconomySpec, output_a: f64, output_b: f64) -> f64 {
    let per_capita_a = output_a / spec.total_labor;
    let per_capita_b = output_b / spec.total_labor;
    (per_capita_a - spec.subsistence) * per_capita_b.powf(spec.omega)
}
