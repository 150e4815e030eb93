use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use netsteer::scenario::{load_fixture, Network, FIXTURES};
use netsteer_experiments::sweeps::{run, INJECTABLE};
use netsteer_experiments::{
    ExperimentReport, OutputFormat, RunError, RunResult, SweepKind, SweepSpec, ToleranceProfile,
};

#[derive(Parser)]
#[command(name = "netsteer", version, about = "Steering witnesses for quantum repeater networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args)]
struct Grid {
    /// Points per axis.
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// One relay, depolarized sources: (v1, v2) region and thresholds.
    Sweep3Depol {
        /// Relay measurement angle, radians unless --degrees.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long, requires = "theta")]
        degrees: bool,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// One relay, amplitude-damped sources: (p1, p2) region.
    Sweep3Amp {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Fiber lengths (l1, l2) per attenuation.
    Distance {
        /// Comma-separated attenuations.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<f64>,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Steering vs bilocal noise thresholds over θ.
    Compare {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Random source pairs tallied by witness and PPT verdicts.
    RandomStudy {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Rank of the Ginibre matrices (4 = full rank).
        #[arg(long, default_value_t = 4)]
        rank: usize,
        /// Named pair appended to the samples; repeatable.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(INJECTABLE))]
        inject: Vec<String>,
        #[arg(long, value_enum, default_value = "default")]
        tolerance_profile: ToleranceProfile,
        #[command(flatten)]
        output: Output,
    },
    /// Two relays, depolarized sources: (v1, v2, v3) region.
    Sweep4Depol {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Two relays, amplitude-damped sources: (p1, p2, p3) region.
    Sweep4Amp {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate every witness on a scenario file or bundled fixture.
    Witness {
        /// TOML scenario file, or the name of a bundled fixture.
        scenario: String,
        #[arg(long, value_enum, default_value = "default")]
        tolerance_profile: ToleranceProfile,
        #[command(flatten)]
        output: Output,
    },
    /// List the bundled fixtures.
    Fixtures,
}

fn spec_with(kind: SweepKind, grid: &Grid, output: Output) -> SweepSpec {
    let mut s = SweepSpec::new(kind);
    s.grid = grid.grid.unwrap_or(s.grid);
    s.out = output.out;
    s.format = output.format;
    s
}

fn build_spec(command: Command) -> Option<SweepSpec> {
    Some(match command {
        Command::Sweep3Depol {
            theta,
            degrees,
            grid,
            output,
        } => {
            let mut s = spec_with(SweepKind::ThreePartyDepolarizing, &grid, output);
            if let Some(t) = theta {
                s.theta = if degrees { t.to_radians() } else { t };
            }
            s
        }
        Command::Sweep3Amp { grid, output } => spec_with(SweepKind::ThreePartyAmplitude, &grid, output),
        Command::Distance { alpha, grid, output } => {
            let mut s = spec_with(SweepKind::Distance, &grid, output);
            if !alpha.is_empty() {
                s.alphas = alpha;
            }
            s
        }
        Command::Compare { grid, output } => spec_with(SweepKind::CompareBilocal, &grid, output),
        Command::RandomStudy {
            samples,
            seed,
            rank,
            inject,
            tolerance_profile,
            output,
        } => {
            let mut s = spec_with(SweepKind::RandomStudy, &Grid { grid: None }, output);
            s.samples = samples;
            s.seed = seed;
            s.rank = rank;
            s.inject = inject;
            s.tolerance_profile = tolerance_profile;
            s
        }
        Command::Sweep4Depol { grid, output } => spec_with(SweepKind::FourPartyDepolarizing, &grid, output),
        Command::Sweep4Amp { grid, output } => spec_with(SweepKind::FourPartyAmplitude, &grid, output),
        Command::Witness {
            scenario,
            tolerance_profile,
            output,
        } => {
            let mut s = spec_with(SweepKind::Witness, &Grid { grid: None }, output);
            s.scenario = Some(scenario);
            s.tolerance_profile = tolerance_profile;
            s
        }
        Command::Fixtures => return None,
    })
}

fn list_fixtures() -> RunResult<()> {
    for (name, _) in FIXTURES {
        let f = load_fixture(name).map_err(RunError::input)?;
        let topology = match f.network {
            Network::Three(_) => "three-party",
            Network::Four(_) => "four-party",
        };
        let description = f.description.unwrap_or_default();
        println!("{name}\t{topology}\t{description}");
    }
    Ok(())
}

fn summarize(report: &ExperimentReport) {
    eprintln!(
        "{} records in {:.2} s",
        report.records.len(),
        report.duration_secs
    );
    for (k, v) in &report.derived {
        eprintln!("  {k} = {v:.10}");
    }
}

fn main_inner(cli: Cli) -> RunResult<()> {
    let Some(spec) = build_spec(cli.command) else {
        return list_fixtures();
    };
    let report = run(&spec)?;
    let written = report.write(spec.out.as_deref(), spec.format)?;
    summarize(&report);
    for p in written {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
