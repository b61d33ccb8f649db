//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or validation error,
//! 3 model infeasibility.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use growthpath::io::{write_columns, PanelFormat};
use growthpath::{
    calibrate_constant_growth, circularity_residual, generate_panel, growth_series, growth_series_with,
    model_catchup, naive_catchup, path_integral_gdp, perspective_report_with, read_panel, read_scenario_config,
    write_panel, write_series, Averaging, CrossingRule, EconomySpec, Error, IndexMethod, IslandRule,
    IslandScenario, PricedPanel, ReferenceRule,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "growthpath", version, about = "Chained growth measurement on simulated multi-sector economies")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate an island scenario and write its priced panel.
    Simulate(SimulateArgs),
    /// Per-step real growth rates of a panel.
    Growth(SeriesArgs),
    /// Per-step rates with their running average.
    Average(SeriesArgs),
    /// Log of the chained index around a closed loop.
    Circularity(CircularityArgs),
    /// Trapezoidal line integral of Σ P dY along a panel.
    PathIntegral(PanelArgs),
    /// National real growth, inflation and international growth for one step.
    Gap(GapArgs),
    /// Years for a smaller economy to catch up with a bigger one.
    Catchup(CatchupArgs),
    /// Regenerate the island panels and figure data files.
    Demo(DemoArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    /// Headerless Y_A,P_A,Y_B,P_B rows.
    Paper,
    /// `year,Y_<name>,P_<name>,...` with a header.
    General,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Laspeyres,
    Paasche,
    Fisher,
    Tornqvist,
}

impl From<Method> for IndexMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Laspeyres => IndexMethod::Laspeyres,
            Method::Paasche => IndexMethod::Paasche,
            Method::Fisher => IndexMethod::Fisher,
            Method::Tornqvist => IndexMethod::Tornqvist,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scenario {
    North,
    Middle,
    South,
    Constant,
}

#[derive(Debug, Args)]
struct PanelArgs {
    /// Panel CSV file.
    #[arg(long)]
    panel: PathBuf,
    #[arg(long, value_enum, default_value = "paper")]
    format: Format,
    /// First year of a paper-format panel.
    #[arg(long, default_value_t = 1900)]
    start_year: i64,
}

impl PanelArgs {
    fn panel_format(&self) -> PanelFormat {
        match self.format {
            Format::Paper => PanelFormat::PaperCompat {
                start_year: self.start_year,
            },
            Format::General => PanelFormat::General,
        }
    }

    fn load(&self) -> Result<PricedPanel, CliError> {
        let file = File::open(&self.panel).map_err(|e| CliError::io(&self.panel, e))?;
        Ok(read_panel(file, self.panel_format())?)
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, value_enum, default_value = "middle")]
    scenario: Scenario,
    /// Scenario file of `key = value` lines; overrides --scenario.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Use the raw productivity recursions without endpoint normalization.
    #[arg(long)]
    raw: bool,
    #[arg(long, value_enum, default_value = "paper")]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    #[command(flatten)]
    input: PanelArgs,
    #[arg(long, value_enum, default_value = "laspeyres")]
    method: Method,
    /// Geometric instead of arithmetic running average.
    #[arg(long)]
    geometric: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CircularityArgs {
    #[command(flatten)]
    input: PanelArgs,
    #[arg(long, value_enum, default_value = "laspeyres")]
    method: Method,
    /// Append the panel's reverse so it forms a closed loop.
    #[arg(long = "loop")]
    close_loop: bool,
}

#[derive(Debug, Args)]
struct GapArgs {
    #[command(flatten)]
    input: PanelArgs,
    /// Step index (period i to i + 1).
    #[arg(long, default_value_t = 0)]
    step: usize,
    #[arg(long, value_enum, default_value = "laspeyres")]
    method: Method,
    /// Comma-separated reference prices for common-price international growth.
    #[arg(long, value_delimiter = ',')]
    reference_prices: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    Common,
    Nominal,
}

#[derive(Debug, Args)]
struct CatchupArgs {
    /// GDP_small GDP_big g_small g_big
    #[arg(long, num_args = 4, value_names = ["GDP_SMALL", "GDP_BIG", "G_SMALL", "G_BIG"], allow_negative_numbers = true)]
    naive: Option<Vec<f64>>,
    /// Panel of the smaller economy (general format).
    #[arg(long, requires = "big", conflicts_with = "naive")]
    small: Option<PathBuf>,
    /// Panel of the bigger economy (general format).
    #[arg(long, requires = "small")]
    big: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "common")]
    rule: Rule,
}

#[derive(Debug, Args)]
struct DemoArgs {
    /// Directory for the generated files.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Debug)]
enum CliError {
    Model(Error),
    Io(String),
    Usage(String),
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_infeasible() => EXIT_INFEASIBLE,
            CliError::Model(_) | CliError::Io(_) => EXIT_DATA,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Io(msg) | CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn scenario_for(args: &SimulateArgs) -> Result<IslandScenario, CliError> {
    if let Some(path) = &args.config {
        let file = File::open(path).map_err(|e| CliError::io(path, e))?;
        return Ok(read_scenario_config(file)?);
    }
    let rule = match args.scenario {
        Scenario::North => IslandRule::North,
        Scenario::Middle => IslandRule::Middle,
        Scenario::South => IslandRule::South,
        Scenario::Constant => return Ok(constant_scenario()?),
    };
    Ok(IslandScenario::island(rule, !args.raw)?)
}

fn constant_scenario() -> growthpath::Result<IslandScenario> {
    let spec = EconomySpec::default();
    let cal = calibrate_constant_growth(
        growthpath::scenarios::TARGET_PRODUCTIVITY,
        (growthpath::scenarios::END_YEAR - growthpath::scenarios::START_YEAR) as u32,
        &spec,
    )?;
    IslandScenario::new("constant", spec, cal.schedule)
}

fn with_output<F>(out: Option<&Path>, stdout: &mut dyn Write, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush().map_err(|e| CliError::io(path, e))?;
            Ok(())
        }
        None => write(stdout),
    }
}

fn write_file(path: &Path, write: impl FnOnce(&mut dyn Write) -> Result<(), CliError>) -> Result<(), CliError> {
    let mut sink = std::io::sink();
    with_output(Some(path), &mut sink, write)
}

fn simulate(args: &SimulateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let scenario = scenario_for(args)?;
    let panel = generate_panel(&scenario)?;
    let format = match args.format {
        Format::Paper => PanelFormat::paper(),
        Format::General => PanelFormat::General,
    };
    with_output(args.out.as_deref(), stdout, |w| Ok(write_panel(&panel, format, w)?))
}

fn series(args: &SeriesArgs, with_average: bool, stdout: &mut dyn Write) -> Result<(), CliError> {
    let panel = args.input.load()?;
    let averaging = if args.geometric {
        Averaging::Geometric
    } else {
        Averaging::Arithmetic
    };
    let s = growth_series_with(&panel, args.method.into(), averaging)?;
    with_output(args.out.as_deref(), stdout, |w| Ok(write_series(&s, with_average, w)?))
}

fn circularity(args: &CircularityArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut panel = args.input.load()?;
    if args.close_loop {
        panel = panel.closed_loop();
    }
    let residual = circularity_residual(&panel, args.method.into())?;
    writeln!(stdout, "{residual}")?;
    Ok(())
}

fn path_integral(args: &PanelArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let value = path_integral_gdp(&args.load()?)?;
    writeln!(stdout, "{value}")?;
    Ok(())
}

fn gap(args: &GapArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let panel = args.input.load()?;
    let rule = match &args.reference_prices {
        Some(prices) => ReferenceRule::CommonPrices(prices.clone()),
        None => ReferenceRule::OwnNominal,
    };
    let report = perspective_report_with(&panel, args.step, args.method.into(), &rule)?;
    writeln!(stdout, "method={}", report.method)?;
    writeln!(stdout, "national_real_growth={}", report.national_real_growth)?;
    writeln!(stdout, "national_inflation={}", report.national_inflation)?;
    writeln!(stdout, "international_growth={}", report.international_growth)?;
    let basis = match &report.reference_prices {
        Some(prices) => {
            let joined: Vec<String> = prices.iter().map(f64::to_string).collect();
            format!("common_prices:{}", joined.join(";"))
        }
        None => "own_nominal".to_string(),
    };
    writeln!(stdout, "international_basis={basis}")?;
    Ok(())
}

fn load_general(path: &Path) -> Result<PricedPanel, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    Ok(read_panel(file, PanelFormat::General)?)
}

fn catchup(args: &CatchupArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    if let Some(v) = &args.naive {
        let est = naive_catchup(v[0], v[1], v[2], v[3])?;
        writeln!(stdout, "{}", est.years)?;
        if est.diverging {
            writeln!(stdout, "diverging")?;
        }
        return Ok(());
    }
    let (Some(small), Some(big)) = (&args.small, &args.big) else {
        return Err(CliError::Usage(
            "catchup needs either --naive or both --small and --big".into(),
        ));
    };
    let rule = match args.rule {
        Rule::Common => CrossingRule::CommonPrices,
        Rule::Nominal => CrossingRule::OwnNominal,
    };
    let out = model_catchup(&load_general(small)?, &load_general(big)?, rule)?;
    match (out.crossing_year, out.crossing_fractional) {
        (Some(year), Some(frac)) => {
            writeln!(stdout, "crossing_year={year}")?;
            writeln!(stdout, "crossing_fractional={frac}")?;
        }
        _ => writeln!(stdout, "crossing_year=none")?,
    }
    match out.naive_years {
        Some(est) => writeln!(stdout, "naive_years={}", est.years)?,
        None => writeln!(stdout, "naive_years=none")?,
    }
    Ok(())
}

/// Island panels plus figure data under `dir`.
fn demo(args: &DemoArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let dir = &args.out_dir;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;

    for rule in IslandRule::ISLANDS {
        let panel = generate_panel(&IslandScenario::island(rule, true)?)?;
        let name = rule.as_str();
        write_file(&dir.join(format!("gdp{name}.csv")), |w| {
            Ok(write_panel(&panel, PanelFormat::paper(), w)?)
        })?;

        let laspeyres = growth_series(&panel, IndexMethod::Laspeyres)?;
        write_file(&dir.join(format!("fig1a_{name}.csv")), |w| {
            Ok(write_columns(&["rate"], &laspeyres.labels, &[&laspeyres.rates], w)?)
        })?;
        write_file(&dir.join(format!("fig1b_{name}.csv")), |w| {
            Ok(write_columns(
                &["running_average"],
                &laspeyres.labels,
                &[&laspeyres.running_average],
                w,
            )?)
        })?;
        if rule == IslandRule::North {
            let paasche = growth_series(&panel, IndexMethod::Paasche)?;
            write_file(&dir.join("fig2_north.csv"), |w| {
                Ok(write_columns(
                    &["laspeyres", "paasche"],
                    &laspeyres.labels,
                    &[&laspeyres.rates, &paasche.rates],
                    w,
                )?)
            })?;
        }
        writeln!(
            stdout,
            "{name}: average real growth {:.4}",
            laspeyres.final_average().unwrap_or(0.0)
        )?;
    }

    let constant = generate_panel(&constant_scenario()?)?;
    write_file(&dir.join("gdpconstant.csv"), |w| {
        Ok(write_panel(&constant, PanelFormat::paper(), w)?)
    })?;
    writeln!(stdout, "wrote files to {}", dir.display())?;
    Ok(())
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate(a) => simulate(a, stdout),
        Command::Growth(a) => series(a, false, stdout),
        Command::Average(a) => series(a, true, stdout),
        Command::Circularity(a) => circularity(a, stdout),
        Command::PathIntegral(a) => path_integral(a, stdout),
        Command::Gap(a) => gap(a, stdout),
        Command::Catchup(a) => catchup(a, stdout),
        Command::Demo(a) => demo(a, stdout),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
