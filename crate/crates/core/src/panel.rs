use crate::error::{Error, Result};

/// Quantity produced and unit price of one sector in one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub quantity: f64,
    pub price: f64,
}

impl Observation {
    pub fn new(quantity: f64, price: f64) -> Self {
        Observation { quantity, price }
    }

    pub fn value(&self) -> f64 {
        self.quantity * self.price
    }
}

impl From<(f64, f64)> for Observation {
    fn from((quantity, price): (f64, f64)) -> Self {
        Observation { quantity, price }
    }
}

/// Time-indexed per-sector (quantity, price) pairs.
///
/// Construction validates: at least one period, one observation per sector
/// in every period, quantities >= 0, prices > 0, labels strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct PricedPanel {
    sector_names: Vec<String>,
    labels: Vec<i64>,
    periods: Vec<Vec<Observation>>,
}

impl PricedPanel {
    pub fn new(
        sector_names: Vec<String>,
        labels: Vec<i64>,
        periods: Vec<Vec<Observation>>,
    ) -> Result<Self> {
        if sector_names.is_empty() {
            return Err(Error::validation("panel has no sectors"));
        }
        if periods.is_empty() {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        if labels.len() != periods.len() {
            return Err(Error::DimensionMismatch {
                expected: periods.len(),
                got: labels.len(),
            });
        }
        if let Some(w) = labels.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::validation(format!(
                "period labels must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        for (t, row) in periods.iter().enumerate() {
            if row.len() != sector_names.len() {
                return Err(Error::DimensionMismatch {
                    expected: sector_names.len(),
                    got: row.len(),
                });
            }
            for (obs, name) in row.iter().zip(&sector_names) {
                if !(obs.quantity.is_finite() && obs.quantity >= 0.0) {
                    return Err(Error::validation(format!(
                        "period {}: sector {name} quantity must be >= 0, got {}",
                        labels[t], obs.quantity
                    )));
                }
                if !(obs.price.is_finite() && obs.price > 0.0) {
                    return Err(Error::validation(format!(
                        "period {}: sector {name} price must be > 0, got {}",
                        labels[t], obs.price
                    )));
                }
            }
        }
        Ok(PricedPanel {
            sector_names,
            labels,
            periods,
        })
    }

    /// Builds a panel with consecutive labels starting at `first_label`.
    pub fn from_rows<R, O>(sector_names: &[&str], first_label: i64, rows: R) -> Result<Self>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = O>,
        O: Into<Observation>,
    {
        let periods: Vec<Vec<Observation>> = rows
            .into_iter()
            .map(|row| row.into_iter().map(Into::into).collect())
            .collect();
        let labels = (0..periods.len() as i64).map(|i| first_label + i).collect();
        Self::new(
            sector_names.iter().map(|s| s.to_string()).collect(),
            labels,
            periods,
        )
    }

    pub fn sector_names(&self) -> &[String] {
        &self.sector_names
    }

    pub fn sector_count(&self) -> usize {
        self.sector_names.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.periods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.periods.is_empty()
    }

    pub fn periods(&self) -> &[Vec<Observation>] {
        &self.periods
    }

    pub fn period(&self, index: usize) -> Result<&[Observation]> {
        self.periods
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::OutOfRange {
                index,
                len: self.periods.len(),
            })
    }

    /// Periods in reverse order, relabelled to keep labels increasing.
    pub fn reversed(&self) -> Self {
        let mut periods = self.periods.clone();
        periods.reverse();
        PricedPanel {
            sector_names: self.sector_names.clone(),
            labels: self.labels.clone(),
            periods,
        }
    }

    /// The panel followed by its own reverse, so the last period equals the
    /// first. The turning period is not repeated.
    pub fn closed_loop(&self) -> Self {
        let mut periods = self.periods.clone();
        periods.extend(self.periods.iter().rev().skip(1).cloned());
        let first = self.labels[0];
        let labels = (0..periods.len() as i64).map(|i| first + i).collect();
        PricedPanel {
            sector_names: self.sector_names.clone(),
            labels,
            periods,
        }
    }

    /// Copy of the panel with period `index`'s prices multiplied by `factor`.
    pub fn with_scaled_prices(&self, index: usize, factor: f64) -> Result<Self> {
        let mut periods = self.periods.clone();
        let len = periods.len();
        let row = periods.get_mut(index).ok_or(Error::OutOfRange { index, len })?;
        for obs in row.iter_mut() {
            obs.price *= factor;
        }
        Self::new(self.sector_names.clone(), self.labels.clone(), periods)
    }

    /// Copy of the panel with period `index`'s quantities multiplied by `factor`.
    pub fn with_scaled_quantities(&self, index: usize, factor: f64) -> Result<Self> {
        let mut periods = self.periods.clone();
        let len = periods.len();
        let row = periods.get_mut(index).ok_or(Error::OutOfRange { index, len })?;
        for obs in row.iter_mut() {
            obs.quantity *= factor;
        }
        Self::new(self.sector_names.clone(), self.labels.clone(), periods)
    }
}
