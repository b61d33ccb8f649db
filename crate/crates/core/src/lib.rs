//! Multi-sector growth economy simulator and chained index-number engine.
//!
//! The crate solves the yearly equilibrium of a two-sector Cobb-Douglas
//! economy ([`equilibrium`]), generates priced panels for productivity
//! scenarios ([`scenarios`]), measures growth with chained Laspeyres,
//! Paasche, Fisher and Törnqvist indexes ([`index`]), and compares economies
//! under national and common-price valuations ([`gap`]). Panels and scenario
//! files are read and written by [`io`].
//!
//! Chained indexes are path dependent: two economies that start and end in
//! the same state can report very different average real growth.
//!
//! ```
//! use growthpath::{growth_series, generate_panel, IndexMethod, IslandRule, IslandScenario};
//!
//! let north = IslandScenario::island(IslandRule::North, true).unwrap();
//! let panel = generate_panel(&north).unwrap();
//! let series = growth_series(&panel, IndexMethod::Laspeyres).unwrap();
//! assert!(series.final_average().unwrap() > 0.03);
//! ```

pub mod equilibrium;
pub mod error;
pub mod gap;
pub mod index;
pub mod io;
pub mod panel;
pub mod scenarios;

pub use equilibrium::{
    allocate_labor, output_per_labor, price_of_sector, solve_capital_per_labor, solve_equilibrium,
    solve_equilibrium_at_wage, utility, EconomySpec, EquilibriumPoint, Numeraire, SectorOutcome, SectorParams,
};
pub use error::{Error, Result};
pub use gap::{
    common_price_growth, common_price_value, model_catchup, naive_catchup, perspective_report,
    perspective_report_with, CatchupEstimate, CatchupOutcome, CrossingRule, GapReport, ReferenceRule,
};
pub use index::{
    circularity_residual, growth_series, growth_series_with, inflation, nominal_gdp, nominal_growth,
    path_integral_gdp, price_index, quantity_index, nominal_index, real_growth, Averaging, GrowthBasis, GrowthSeries, IndexMethod,
};
pub use io::{read_panel, read_scenario_config, write_panel, write_series, PanelFormat};
pub use panel::{Observation, PricedPanel};
pub use scenarios::{
    build_schedule, calibrate_constant_growth, generate_panel, Calibration, IslandRule, IslandScenario,
    ProductivitySchedule,
};
