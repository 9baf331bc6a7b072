mod args;
mod config;
mod error;
mod output;
mod suites;

use clap::Parser;
use koenigs::domains::slope_classify;
use koenigs::harmonic::{hm_wos, vt_from_estimate, UPPER_IMAGINARY_AXIS};
use koenigs::speeds::{main_gap, speed_table};
use koenigs::BasePoint;
use serde::Serialize;
use std::fmt::Write as _;
use std::process::ExitCode;

use args::{Cli, Command, HmArgs, SlopeArgs, SpeedsArgs, VerifyArgs};
use error::{CliError, CliResult};
use output::{emit, num, opt_num, report_json};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(&cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("koenigs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn configure_threads() -> CliResult<()> {
    if let Some(n) = config::threads_from_env()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

fn run(command: &Command) -> CliResult<()> {
    match command {
        Command::Speeds(a) => speeds(a),
        Command::Verify(a) => verify(a),
        Command::Slope(a) => slope(a),
        Command::Hm(a) => hm(a),
    }
}

fn speeds(args: &SpeedsArgs) -> CliResult<()> {
    let grid = config::parse_grid(&args.t_grid)?;
    let model = config::build_model(&args.model)?;
    let rows = speed_table(&model, &grid)?;
    let name = model.family().name();
    let (alpha, mu) = model.family().omega_parameters().unzip();
    let mut csv = String::from("family,alpha,mu,t,v_total,v_ortho,v_tang,main_gap\n");
    for s in &rows {
        let _ = writeln!(
            csv,
            "{name},{},{},{},{},{},{},{}",
            opt_num(alpha),
            opt_num(mu),
            num(s.t),
            num(s.v),
            num(s.v_o),
            num(s.v_t),
            num(main_gap(s))
        );
    }
    emit(args.out.as_deref(), csv.as_bytes())
}

#[derive(Serialize)]
struct VerifyBody {
    suite: args::Suite,
    pass: bool,
    checks: Vec<suites::Check>,
}

fn verify(args: &VerifyArgs) -> CliResult<()> {
    if args.suite.needs_seed() && args.seed.is_none() {
        return Err(CliError::Config("--seed is required for Monte-Carlo suites".into()));
    }
    let checks = suites::run(args)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let body = VerifyBody { suite: args.suite, pass: failed == 0, checks };
    emit(args.out.as_deref(), &report_json("verify", args, body))?;
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}

fn slope(args: &SlopeArgs) -> CliResult<()> {
    let domain = config::load_domain(&args.domain)?;
    let base = match &args.base {
        Some(text) => BasePoint::new(&domain, config::parse_point(text)?).map_err(|e| CliError::Config(e.to_string()))?,
        None => domain.default_base()?,
    };
    let verdict = slope_classify(&domain, base, args.t_max, args.samples)?;
    let mut csv = String::from("t,delta_plus,delta_minus,ratio\n");
    for s in &verdict.trace {
        let _ = writeln!(csv, "{},{},{},{}", num(s.t), num(s.delta_plus), num(s.delta_minus), num(s.ratio));
    }
    match &args.out {
        Some(path) => {
            emit(Some(path), csv.as_bytes())?;
            println!("{}", verdict.verdict.describe());
        }
        None => emit(None, format!("{}\n{csv}", verdict.verdict.describe()).as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct HmBody {
    estimate: koenigs::HmEstimate,
    /// `-½ log sin(π ω)` with its propagated error.
    vt: f64,
    vt_stderr: f64,
    flagged: bool,
}

fn hm(args: &HmArgs) -> CliResult<()> {
    let domain = config::load_domain(&args.domain)?;
    let z = config::parse_point(&args.point)?;
    if !domain.contains(z) {
        return Err(CliError::Config(format!("point {z} is not in the domain")));
    }
    let estimate = hm_wos(&domain, z, &UPPER_IMAGINARY_AXIS, args.eps, args.walks, args.seed)
        .map_err(|e| match e {
            koenigs::Error::Precondition(m) => CliError::Config(m),
            other => CliError::Numerical(other),
        })?;
    let vt = vt_from_estimate(0.0, estimate);
    let body = HmBody { estimate, vt: vt.value, vt_stderr: vt.stderr, flagged: vt.flagged };
    emit(args.out.as_deref(), &report_json("hm", args, body))
}
