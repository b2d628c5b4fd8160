//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on usage or validation errors, 2 when the
//! scenario itself is infeasible (broken required links, no coverage, no path).
//! Errors print a single `error: ...` line on stderr.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Scenario, ScenarioConfig};
use crate::constellation::{preset, SatelliteId, Snapshot};
use crate::error::{Error, Result};
use crate::format::fixed;
use crate::geometry::EarthModel;
use crate::isl::terminal::write_terminals;
use crate::isl::{
    build_topology, contact_windows, doppler_shift, feasible_terminals, point_ahead_angle, range_rate,
    terminal_catalog, WindowQuery, CARRIER_1550_NM_HZ,
};
use crate::latency::{comparison_table, crossover, write_table_csv};
use crate::routing::{end_to_end, write_route_report, GroundPoint};

#[derive(Debug, Parser)]
#[command(name = "owsn", version, about = "Optical wireless satellite network simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate constellation snapshots.
    #[command(subcommand)]
    Constellation(ConstellationCmd),
    /// Build laser ISL topologies.
    #[command(subcommand)]
    Topology(TopologyCmd),
    /// Satellite vs. terrestrial fiber latency comparison.
    #[command(subcommand)]
    Latency(LatencyCmd),
    /// Shortest-delay route between two ground points.
    Route(RouteArgs),
    /// Link dynamics for one satellite pair.
    Link {
        #[arg(value_enum)]
        metric: LinkMetric,
        #[command(flatten)]
        args: LinkArgs,
    },
    /// Laser terminal catalog.
    #[command(subcommand)]
    Terminals(TerminalsCmd),
}

#[derive(Debug, Subcommand)]
enum ConstellationCmd {
    Generate {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 0.0)]
        time: f64,
        /// Earth model preset: `visibility` or `use-case`.
        #[arg(long, default_value = "visibility")]
        earth: String,
        #[arg(long, default_value_t = 0)]
        phasing: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum TopologyCmd {
    Build {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum LatencyCmd {
    Table {
        #[arg(long, default_value_t = 10)]
        hops: u32,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Crossover {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct RouteArgs {
    /// Source as `lat,lon` in degrees.
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    /// Destination as `lat,lon` in degrees.
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LinkMetric {
    Doppler,
    Paa,
    Windows,
}

#[derive(Debug, Args)]
struct LinkArgs {
    /// Satellite pair as `planeA:slotA,planeB:slotB`.
    #[arg(long)]
    pair: String,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Time span to sample; one orbital period for `windows` if omitted.
    #[arg(long)]
    horizon: Option<f64>,
    #[arg(long, default_value_t = 10.0)]
    step: f64,
    #[arg(long, default_value_t = CARRIER_1550_NM_HZ)]
    carrier_hz: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum TerminalsCmd {
    List,
    Feasible {
        #[arg(long)]
        distance: f64,
        #[arg(long)]
        capacity: f64,
    },
}

/// Parses `args` (including the program name), runs the command and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let rendered = e.to_string();
                    let reason = rendered
                        .lines()
                        .next()
                        .unwrap_or("invalid arguments")
                        .trim_start_matches("error: ");
                    let _ = writeln!(stderr, "error: {reason}");
                    let _ = writeln!(stderr, "{}", usage_hint(&rendered));
                    1
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.to_string().replace('\n', " "));
            if e.is_infeasible() {
                2
            } else {
                1
            }
        }
    }
}

fn usage_hint(rendered: &str) -> String {
    rendered
        .lines()
        .find(|l| l.starts_with("Usage:"))
        .unwrap_or("Usage: owsn <COMMAND> (see --help)")
        .to_string()
}

fn load_scenario(path: Option<&PathBuf>) -> Result<Scenario> {
    match path {
        Some(p) => ScenarioConfig::load(p)?.resolve(),
        None => ScenarioConfig::default().resolve(),
    }
}

/// Runs `body` against the `--out` file, or stdout when none is given.
/// Stdout output is buffered so a failing command prints nothing.
fn with_output(
    out: Option<&PathBuf>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => {
            let mut buf = Vec::new();
            body(&mut buf)?;
            stdout.write_all(&buf)?;
            Ok(())
        }
    }
}

fn parse_pair(s: &str) -> Result<(SatelliteId, SatelliteId)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("pair '{s}' is not planeA:slotA,planeB:slotB")))?;
    Ok((a.parse()?, b.parse()?))
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Constellation(ConstellationCmd::Generate {
            preset: name,
            time,
            earth,
            phasing,
            out,
        }) => {
            let spec = preset(&name)?.with_phasing(phasing);
            let earth = EarthModel::preset(&earth).ok_or(Error::UnknownPreset(earth))?;
            let snap = Snapshot::generate(spec, earth, time)?;
            with_output(out.as_ref(), stdout, |w| snap.write_csv(w))
        }
        Command::Topology(TopologyCmd::Build { config, out }) => {
            let sc = load_scenario(config.as_ref())?;
            let snap = Snapshot::generate(sc.spec, sc.earth, sc.time_s)?;
            let graph = build_topology(&snap, &sc.topology)?;
            with_output(out.as_ref(), stdout, |w| graph.write_csv(w))
        }
        Command::Latency(LatencyCmd::Table { hops, config, out }) => {
            let sc = load_scenario(config.as_ref())?;
            let rows = comparison_table(hops, &sc.use_case)?;
            with_output(out.as_ref(), stdout, |w| write_table_csv(&rows, w))
        }
        Command::Latency(LatencyCmd::Crossover { config }) => {
            let sc = load_scenario(config.as_ref())?;
            let c = crossover(&sc.use_case)?;
            writeln!(
                stdout,
                "{},{}",
                c.first_winning_hops,
                fixed(c.terrestrial_distance_km, 0)
            )?;
            Ok(())
        }
        Command::Route(args) => {
            let sc = load_scenario(args.config.as_ref())?;
            let from: GroundPoint = args.from.parse()?;
            let to: GroundPoint = args.to.parse()?;
            let snap = Snapshot::generate(sc.spec, sc.earth, sc.time_s)?;
            let graph = build_topology(&snap, &sc.topology)?;
            let e2e = end_to_end(&from, &to, &graph, &snap, &sc.use_case, sc.min_elevation_deg)?;
            with_output(args.out.as_ref(), stdout, |w| write_route_report(&e2e, &graph, w))
        }
        Command::Link { metric, args } => link(metric, args, stdout),
        Command::Terminals(TerminalsCmd::List) => write_terminals(&terminal_catalog(), stdout),
        Command::Terminals(TerminalsCmd::Feasible { distance, capacity }) => {
            write_terminals(&feasible_terminals(distance, capacity)?, stdout)
        }
    }
}

fn link(metric: LinkMetric, args: LinkArgs, stdout: &mut dyn Write) -> Result<()> {
    let sc = load_scenario(args.config.as_ref())?;
    let (a, b) = parse_pair(&args.pair)?;
    for id in [a, b] {
        if !sc.spec.contains(id) {
            return Err(Error::UnknownNode(id));
        }
    }
    if !(args.step.is_finite() && args.step > 0.0) {
        return Err(Error::domain("step must be > 0"));
    }
    match metric {
        LinkMetric::Windows => {
            let horizon = args.horizon.unwrap_or_else(|| sc.spec.orbital_period_s(&sc.earth));
            let query = WindowQuery {
                horizon_s: horizon,
                step_s: args.step,
                terminal: sc.terminal.clone(),
                setup_time_s: sc.setup_time_s,
                carrier_hz: args.carrier_hz,
            };
            let windows = contact_windows(a, b, &sc.spec, &sc.earth, &query)?;
            with_output(args.out.as_ref(), stdout, |w| {
                writeln!(w, "geometric_start_s,start_s,end_s,min_distance_km,max_abs_doppler_hz")?;
                for win in &windows {
                    writeln!(
                        w,
                        "{},{},{},{},{}",
                        fixed(win.geometric_start_s, 1),
                        fixed(win.start_s, 1),
                        fixed(win.end_s, 1),
                        fixed(win.min_distance_km, 6),
                        fixed(win.max_abs_doppler_hz, 3)
                    )?;
                }
                Ok(())
            })
        }
        LinkMetric::Doppler | LinkMetric::Paa => {
            let horizon = args.horizon.unwrap_or(0.0);
            if !(horizon.is_finite() && horizon >= 0.0) {
                return Err(Error::domain("horizon must be >= 0"));
            }
            let samples = (horizon / args.step).ceil().max(1.0) as u64;
            with_output(args.out.as_ref(), stdout, |w| {
                match metric {
                    LinkMetric::Doppler => writeln!(w, "time_s,range_km,range_rate_km_s,doppler_hz")?,
                    _ => writeln!(w, "time_s,range_km,point_ahead_urad")?,
                }
                for k in 0..samples {
                    let t = sc.time_s + k as f64 * args.step;
                    let sa = sc.spec.state_of(a, &sc.earth, t);
                    let sb = sc.spec.state_of(b, &sc.earth, t);
                    let range = sa.position.distance(sb.position);
                    match metric {
                        LinkMetric::Doppler => writeln!(
                            w,
                            "{},{},{},{}",
                            fixed(t, 3),
                            fixed(range, 6),
                            fixed(range_rate(&sa, &sb)?, 9),
                            fixed(doppler_shift(&sa, &sb, args.carrier_hz)?, 3)
                        )?,
                        _ => writeln!(
                            w,
                            "{},{},{}",
                            fixed(t, 3),
                            fixed(range, 6),
                            fixed(point_ahead_angle(&sa, &sb)? * 1e6, 6)
                        )?,
                    }
                }
                Ok(())
            })
        }
    }
}
