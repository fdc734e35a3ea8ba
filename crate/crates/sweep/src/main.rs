use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vqutrit::{negativity, steady_amplitudes, NamedState, Params};
use vqutrit_sweep::config::{resolve, Config};
use vqutrit_sweep::format::fmt;
use vqutrit_sweep::sweep::parse_list;
use vqutrit_sweep::validation::{self, ValidationSpec};
use vqutrit_sweep::{
    run_preset, run_sweep, run_validation, write_csv, InitSpec, OmegaUnit, Preset, SweepError,
    SweepSpec,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "vqutrit",
    version,
    about = "Entanglement of two V-type atoms in a dissipative cavity"
)]
struct Cli {
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path (default: stdout). For `preset all`, a directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; only `csv` is supported.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Curves of one published figure panel (fig2a ... fig8b, or `all`).
    Preset {
        name: String,
        #[arg(long)]
        omega_unit: Option<OmegaUnit>,
    },
    /// Trajectories over the Cartesian product of gamma0, theta and omega.
    Sweep(SweepArgs),
    /// Compare the analytic amplitudes with RK4 integration.
    Validate(ValidateArgs),
    /// Analytic long-time negativity and populations.
    Steady {
        #[arg(long)]
        gamma0: Option<f64>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        init: Option<InitSpec>,
        #[arg(long)]
        omega_unit: Option<OmegaUnit>,
    },
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated gamma0/kappa values.
    #[arg(long)]
    gamma0: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    omega: Option<String>,
    /// maximal | partial | product | c1a,c1b,c2a,c2b (each `re` or `re:im`)
    #[arg(long)]
    init: Option<InitSpec>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    omega_unit: Option<OmegaUnit>,
    /// Also write the per-cell steady-state summary here.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    gamma0: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    omega: Option<String>,
}

#[derive(Debug)]
enum Failure {
    /// Downstream reader went away (e.g. `| head`); not an error.
    Pipe,
    Usage(String),
    Validation(String),
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Io(e) => e.into(),
            SweepError::Model(_) => Failure::Validation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Pipe;
        }
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) | Err(Failure::Pipe) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("vqutrit: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("vqutrit: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

struct Ctx {
    config: Config,
    out: Option<PathBuf>,
    jobs: usize,
}

impl Ctx {
    fn value<T: std::str::FromStr>(
        &self,
        cli: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, Failure>
    where
        T::Err: std::fmt::Display,
    {
        Ok(resolve(cli, self.config.parsed(key)?, default))
    }

    fn list(&self, cli: Option<String>, key: &str, default: &str) -> Result<Vec<f64>, Failure> {
        let raw = resolve(
            cli,
            self.config.get(key).map(str::to_string),
            default.to_string(),
        );
        parse_list(&raw).map_err(|e| Failure::Usage(format!("--{key}: {e}")))
    }

    fn writer(&self) -> Result<Box<dyn Write>, Failure> {
        open(self.out.as_deref())
    }
}

fn open(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::Usage(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let format = resolve(
        cli.format,
        config.get("format").map(str::to_string),
        "csv".into(),
    );
    if format != "csv" {
        return Err(Failure::Usage(format!(
            "unsupported format '{format}' (only csv)"
        )));
    }
    let jobs = resolve(cli.jobs, config.parsed("jobs")?, 0);
    let out = cli.out.or_else(|| config.get("out").map(PathBuf::from));
    let ctx = Ctx { config, out, jobs };

    match cli.command {
        Command::Preset { name, omega_unit } => {
            let unit = ctx.value(omega_unit, "omega-unit", OmegaUnit::Kappa)?;
            preset(&ctx, &name, unit)
        }
        Command::Sweep(args) => sweep(&ctx, args),
        Command::Validate(args) => validate(&ctx, args),
        Command::Steady {
            gamma0,
            theta,
            omega,
            init,
            omega_unit,
        } => {
            let g = ctx.value(gamma0, "gamma0", 0.1)?;
            let th = ctx.value(theta, "theta", 0.0)?;
            let om = ctx.value(omega, "omega", 0.0)?;
            let init = ctx.value(init, "init", InitSpec::Named(NamedState::Maximal))?;
            let unit = ctx.value(omega_unit, "omega-unit", OmegaUnit::Kappa)?;
            steady(&ctx, g, th, om, init, unit)
        }
    }
}

fn preset(ctx: &Ctx, name: &str, unit: OmegaUnit) -> Result<(), Failure> {
    if name.eq_ignore_ascii_case("all") {
        let dir = ctx
            .out
            .as_ref()
            .ok_or_else(|| Failure::Usage("preset all needs --out <directory>".into()))?;
        std::fs::create_dir_all(dir)?;
        let pool = rayon_pool(ctx.jobs);
        for p in Preset::all() {
            let curves = pool.install(|| run_preset(p, unit))?;
            let mut w = open(Some(&dir.join(format!("{}.csv", p.name()))))?;
            write_csv(&mut w, &curves)?;
            w.flush()?;
        }
        return Ok(());
    }
    let p: Preset = name.parse()?;
    let curves = rayon_pool(ctx.jobs).install(|| run_preset(p, unit))?;
    let mut w = ctx.writer()?;
    write_csv(&mut w, &curves)?;
    w.flush()?;
    Ok(())
}

fn rayon_pool(jobs: usize) -> rayon::ThreadPool {
    vqutrit_sweep::sweep::pool(jobs)
}

fn sweep(ctx: &Ctx, args: SweepArgs) -> Result<(), Failure> {
    let spec = SweepSpec {
        gamma0: ctx.list(args.gamma0, "gamma0", "0.1")?,
        theta: ctx.list(args.theta, "theta", "0")?,
        omega: ctx.list(args.omega, "omega", "0")?,
        omega_unit: ctx.value(args.omega_unit, "omega-unit", OmegaUnit::Kappa)?,
        initial: ctx.value(args.init, "init", InitSpec::default())?,
        t_end: ctx.value(args.t_end, "t-end", 50.0)?,
        n_points: ctx.value(args.points, "points", 2001)?,
    };
    let summary = args
        .summary
        .or_else(|| ctx.config.get("summary").map(PathBuf::from));
    let result = run_sweep(&spec, ctx.jobs).map_err(|e| match e {
        SweepError::InvalidSpec(_) => Failure::Usage(e.to_string()),
        other => other.into(),
    })?;

    let mut w = ctx.writer()?;
    result.write_trajectories(&mut w)?;
    w.flush()?;
    if let Some(path) = summary {
        let mut s = open(Some(&path))?;
        result.write_summary(&mut s)?;
        s.flush()?;
    }
    for c in &result.cells {
        match &c.outcome {
            Err(e) => eprintln!("vqutrit: {}: {e}", c.label),
            Ok(o) if o.settled() == Some(false) => eprintln!(
                "vqutrit: {}: trajectory tail is {} away from the steady value; extend --t-end",
                c.label,
                fmt(o.tail_deviation.unwrap_or(f64::NAN))
            ),
            Ok(_) => {}
        }
    }
    if result.all_ok() {
        Ok(())
    } else {
        Err(Failure::Validation(
            "some grid cells failed validation".into(),
        ))
    }
}

fn validate(ctx: &Ctx, args: ValidateArgs) -> Result<(), Failure> {
    let default = |v: &[f64]| v.iter().map(|x| fmt(*x)).collect::<Vec<_>>().join(",");
    let spec = ValidationSpec {
        grid: validation::grid(
            &ctx.list(args.gamma0, "gamma0", &default(&validation::DEFAULT_GAMMA0))?,
            &ctx.list(args.theta, "theta", &default(&validation::DEFAULT_THETA))?,
            &ctx.list(args.omega, "omega", &default(&validation::DEFAULT_OMEGA))?,
        ),
        t_end: ctx.value(args.t_end, "t-end", validation::DEFAULT_T_END)?,
        dt: ctx.value(args.dt, "dt", validation::DEFAULT_DT)?,
        ..ValidationSpec::default()
    };
    let report = run_validation(&spec, ctx.jobs);
    let mut w = ctx.writer()?;
    report.write_csv(&mut w)?;
    w.flush()?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Validation(format!(
            "{} of {} cells exceed {} or failed",
            report.rows.iter().filter(|r| !r.passed()).count(),
            report.rows.len(),
            fmt(validation::ERROR_THRESHOLD)
        )))
    }
}

fn steady(
    ctx: &Ctx,
    gamma0: f64,
    theta: f64,
    omega: f64,
    init: InitSpec,
    unit: OmegaUnit,
) -> Result<(), Failure> {
    let params = Params::new(gamma0, theta, unit.to_kappa(omega, gamma0));
    let state = init.state();
    let validation = |e: vqutrit::Error| Failure::Validation(e.to_string());
    vqutrit::validate(&params, &state).map_err(validation)?;
    let amps = steady_amplitudes(&params, &state).map_err(validation)?;
    let n = negativity(&amps).map_err(validation)?;
    let label = match init {
        InitSpec::Named(name) => name.to_string(),
        InitSpec::Custom(_) => "custom".to_string(),
    };
    let pops = amps.populations();
    let mut w = ctx.writer()?;
    writeln!(
        w,
        "gamma0,theta,omega,init,steady_negativity,p,abs2_c1a,abs2_c1b,abs2_c2a,abs2_c2b"
    )?;
    writeln!(
        w,
        "{},{},{},{},{},{},{},{},{},{}",
        fmt(gamma0),
        fmt(theta),
        fmt(omega),
        label,
        fmt(n),
        fmt(amps.ground_population()),
        fmt(pops[0]),
        fmt(pops[1]),
        fmt(pops[2]),
        fmt(pops[3]),
    )?;
    w.flush()?;
    Ok(())
}
