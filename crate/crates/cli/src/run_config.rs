use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use chiral_router::Probe;

use crate::args::{Args, CommandName, ObjectiveName};

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Stdout,
    File(PathBuf),
}

/// θ axis: one value or `n` points on `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThetaAxis {
    Fixed(f64),
    Sweep(usize),
}

/// Fully defaulted and validated parameters of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub theta: ThetaAxis,
    pub gamma: Vec<f64>,
    pub gamma_max: Option<f64>,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub time: f64,
    pub phi: ThetaAxis,
    pub probes: Vec<Probe>,
    pub pairs: Vec<(usize, usize)>,
    pub objective: ObjectiveName,
    pub seed: u64,
    pub cases: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandName,
    pub config: Option<PathBuf>,
    pub params: Params,
    pub output: Output,
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self> {
        use CommandName::*;
        let cmd = args.command;

        let default_theta = match cmd {
            Spectrum | Scan => ThetaAxis::Sweep(400),
            Qfi => ThetaAxis::Sweep(50),
            _ => ThetaAxis::Fixed(FRAC_PI_2),
        };
        let theta = match (args.theta, args.theta_steps) {
            (Some(_), Some(_)) => bail!("--theta and --theta-steps are mutually exclusive"),
            (Some(th), None) => ThetaAxis::Fixed(finite("theta", th)?),
            (None, Some(n)) => {
                ensure!(n > 0, "--theta-steps must be positive");
                ThetaAxis::Sweep(n)
            }
            (None, None) => default_theta,
        };

        let gamma = if args.gamma.is_empty() { vec![0.0] } else { args.gamma };
        for &g in &gamma {
            finite("gamma", g)?;
        }
        if gamma.len() > 1 {
            ensure!(matches!(cmd, Scan | Qfi), "only scan and qfi accept several --gamma values");
            ensure!(gamma.windows(2).all(|w| w[1] > w[0]), "--gamma values must be increasing");
        }
        let gamma_max = args.gamma_max.map(|g| finite("gamma-max", g)).transpose()?;
        if let Some(g) = gamma_max {
            ensure!(cmd == Optimize, "--gamma-max only applies to optimize");
            ensure!(g >= gamma[0], "--gamma-max must not be below --gamma");
        }

        let (t_min_default, t_max_default, t_steps_default) = match cmd {
            Universality => (0.1, 30.0, 0),
            Superpose => (0.0, 30.0, 301),
            _ => (0.0, 30.0, 3001),
        };
        let t_min = finite("t-min", args.t_min.unwrap_or(t_min_default))?;
        let t_max = finite("t-max", args.t_max.unwrap_or(t_max_default))?;
        ensure!(t_min >= 0.0, "--t-min must be non-negative");
        ensure!(t_max > t_min, "--t-max must exceed --t-min");
        let t_steps = args.t_steps.unwrap_or(t_steps_default);
        if matches!(cmd, Scan | Superpose) {
            ensure!(t_steps >= 2, "--t-steps must be at least 2");
        }
        let time = finite("t", args.time.unwrap_or(50.0))?;

        let phi = match (args.phi, args.phi_steps) {
            (Some(_), Some(_)) => bail!("--phi and --phi-steps are mutually exclusive"),
            (Some(p), None) => ThetaAxis::Fixed(finite("phi", p)?),
            (None, Some(n)) => {
                ensure!(n > 0, "--phi-steps must be positive");
                ThetaAxis::Sweep(n)
            }
            (None, None) => ThetaAxis::Sweep(64),
        };

        let probes = if args.probe.is_empty() {
            vec![Probe::Site(2), Probe::Site(1), Probe::Uniform]
        } else {
            args.probe.iter().map(|s| parse_probe(s)).collect::<Result<_>>()?
        };
        let pairs = if args.pairs.is_empty() {
            vec![(1, 5), (1, 6)]
        } else {
            args.pairs.iter().map(|s| parse_pair(s)).collect::<Result<_>>()?
        };

        if args.config.is_some() {
            ensure!(
                matches!(cmd, Spectrum | Scan | Qfi | Validate),
                "--config is not supported by the router-only command {cmd:?}"
            );
        }

        let output = match args.out {
            None => Output::Stdout,
            Some(p) if p.as_os_str() == "-" => Output::Stdout,
            Some(p) => Output::File(p),
        };

        Ok(Self {
            command: cmd,
            config: args.config,
            params: Params {
                theta,
                gamma,
                gamma_max,
                t_min,
                t_max,
                t_steps,
                time,
                phi,
                probes,
                pairs,
                objective: args.objective.unwrap_or(ObjectiveName::Sum),
                seed: args.seed.unwrap_or(1),
                cases: args.cases.unwrap_or(100),
            },
            output,
        })
    }
}

fn finite(name: &str, x: f64) -> Result<f64> {
    ensure!(x.is_finite(), "--{name} must be finite, got {x}");
    Ok(x)
}

/// `site:k` or `uniform`.
pub fn parse_probe(s: &str) -> Result<Probe> {
    let s = s.trim();
    if s == "uniform" {
        return Ok(Probe::Uniform);
    }
    let k = s.strip_prefix("site:").with_context(|| format!("probe `{s}` is neither `site:k` nor `uniform`"))?;
    let k: usize = k.parse().with_context(|| format!("bad site index in probe `{s}`"))?;
    ensure!(k >= 1, "probe sites are 1-based");
    Ok(Probe::Site(k))
}

/// `j:k`, 1-based.
pub fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (j, k) = s.trim().split_once(':').with_context(|| format!("pair `{s}` is not of the form j:k"))?;
    let j: usize = j.parse().with_context(|| format!("bad site in pair `{s}`"))?;
    let k: usize = k.parse().with_context(|| format!("bad site in pair `{s}`"))?;
    ensure!(j >= 1 && k >= 1, "pair sites are 1-based");
    Ok((j, k))
}
