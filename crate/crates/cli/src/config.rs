use koenigs::semigroups::{horocycle_reduce, Family};
use koenigs::{Complex, SemigroupModel, StarlikeDomain};

use crate::args::{DomainArgs, FamilyName, ModelArgs};
use crate::error::{CliError, CliResult};

fn required(value: Option<f64>, flag: &str, family: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::Config(format!("--{flag} is required for family {family}")))
}

pub fn build_model(args: &ModelArgs) -> CliResult<SemigroupModel> {
    let family = match args.family {
        FamilyName::ParabolicAuto => Family::ParabolicAutoPlus,
        FamilyName::ParabolicAutoMinus => Family::ParabolicAutoMinus,
        FamilyName::Hyperbolic => Family::HyperbolicGroup { lambda: required(args.lambda, "lambda", "hyperbolic")? },
        FamilyName::Sector => Family::SectorFamily { theta: required(args.theta, "theta", "sector")? },
        FamilyName::Omega => Family::OmegaSemigroup {
            alpha: required(args.alpha, "alpha", "omega")?,
            mu: required(args.mu, "mu", "omega")?,
            zeta0: None,
        },
    };
    let model = SemigroupModel::new(family).map_err(|e| CliError::Config(e.to_string()))?;
    if args.reduced {
        return Ok(horocycle_reduce(&model)?);
    }
    Ok(model)
}

/// Parses `log:t_min:t_max:points`.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let bad = |why: &str| CliError::Config(format!("invalid --t-grid `{spec}`: {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 || parts[0] != "log" {
        return Err(bad("expected log:t_min:t_max:points"));
    }
    let t_min: f64 = parts[1].parse().map_err(|_| bad("t_min is not a number"))?;
    let t_max: f64 = parts[2].parse().map_err(|_| bad("t_max is not a number"))?;
    let n: usize = parts[3].parse().map_err(|_| bad("points is not a non-negative integer"))?;
    if n == 0 {
        return Err(bad("the grid is empty"));
    }
    if !(t_min > 0.0) || !(t_max >= t_min) || !t_max.is_finite() {
        return Err(bad("need 0 < t_min <= t_max < ∞"));
    }
    koenigs::numerics::log_grid(t_min, t_max, n).map_err(|e| bad(&e.to_string()))
}

/// Parses `re,im`.
pub fn parse_point(text: &str) -> CliResult<Complex> {
    let bad = || CliError::Config(format!("invalid point `{text}`, expected re,im"));
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    Ok(Complex::new(re, im))
}

pub fn load_domain(args: &DomainArgs) -> CliResult<StarlikeDomain> {
    let text = match (&args.domain, &args.domain_file) {
        (Some(json), None) => json.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?,
        _ => return Err(CliError::Config("give exactly one of --domain or --domain-file".into())),
    };
    StarlikeDomain::from_json(&text).map_err(|e| CliError::Config(e.to_string()))
}

pub fn threads_from_env() -> CliResult<Option<usize>> {
    match std::env::var("KOENIGS_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("KOENIGS_THREADS must be a positive integer, got `{v}`"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("log:1:1e6:60").unwrap();
        assert_eq!(g.len(), 60);
        assert_eq!((g[0], g[59]), (1.0, 1e6));
        assert!(parse_grid("log:1:1e6:0").is_err());
        assert!(parse_grid("lin:1:2:3").is_err());
        assert!(parse_grid("log:0:1:3").is_err());
        assert!(parse_grid("log:5:1:3").is_err());
    }

    #[test]
    fn point_parsing() {
        assert_eq!(parse_point("1.5,-2").unwrap(), Complex::new(1.5, -2.0));
        assert!(parse_point("1.5").is_err());
    }
}
