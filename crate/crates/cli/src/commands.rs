use std::f64::consts::TAU;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::{bail, ensure, Context, Result};
use chiral_router::config::parse_config;
use chiral_router::csv::{format_sig, CsvTable, SIGNIFICANT_DIGITS};
use chiral_router::grid::{linspace, phase_grid};
use chiral_router::qfi::qfi_for;
use chiral_router::router::{SuperpositionRouter, UNIVERSALITY_TOL};
use chiral_router::{
    build_hamiltonian, cycle_rank, hermitian_eigendecompose, loop_phase, optimize_routing, rephase, router_spectrum,
    scan, topology_consistency_check, universality_times, ChiralSpec, Direction, Graph, HamiltonianFamily, Objective,
    Probe, ProbeSetup, RephasingVector, RouterFamily, RoutingSearch, ScanGrid, Walk, Window,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{CommandName, ObjectiveName};
use crate::run_config::{Output, RunConfig, ThetaAxis};

/// Deviation allowed for gauge and tree checks.
const PHASE_CHECK_TOL: f64 = 1e-10;
/// Deviation allowed for unitarity and probability conservation.
const UNITARITY_TOL: f64 = 1e-9;

/// Runs one command. `Ok(false)` means a requested validation failed.
pub fn dispatch(cfg: &RunConfig) -> Result<bool> {
    match cfg.command {
        CommandName::Spectrum => emit_table(cfg, &spectrum(cfg)?).map(|_| true),
        CommandName::Scan => emit_table(cfg, &scan_table(cfg)?).map(|_| true),
        CommandName::Optimize => emit_table(cfg, &optimize(cfg)?).map(|_| true),
        CommandName::Superpose => emit_table(cfg, &superpose(cfg)?).map(|_| true),
        CommandName::Universality => emit_table(cfg, &universality(cfg)?).map(|_| true),
        CommandName::Qfi => emit_table(cfg, &qfi_table(cfg)?).map(|_| true),
        CommandName::Validate => validate(cfg),
    }
}

fn with_output(cfg: &RunConfig, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match &cfg.output {
        Output::Stdout => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write(&mut w).and_then(|_| w.flush()).context("writing to standard output")
        }
        Output::File(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write(&mut w).and_then(|_| w.flush()).with_context(|| format!("writing {}", path.display()))
        }
    }
}

fn emit_table(cfg: &RunConfig, table: &CsvTable) -> Result<()> {
    with_output(cfg, |w| table.write_to(w))
}

fn load_spec(cfg: &RunConfig) -> Result<Option<ChiralSpec<f64>>> {
    let Some(path) = &cfg.config else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (_, spec) = parse_config::<f64>(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Some(spec))
}

/// The router, or the loop family on the fundamental cycle of the configured graph.
fn family(cfg: &RunConfig) -> Result<Box<dyn HamiltonianFamily<f64>>> {
    match load_spec(cfg)? {
        None => Ok(Box::new(RouterFamily)),
        Some(spec) => {
            let Some(cycle) = cycle_rank(spec.graph()).representative else {
                bail!("the configured graph has no cycle to carry a loop phase");
            };
            eprintln!("loop phase carried by cycle {cycle:?}");
            Ok(Box::new(spec.loop_family(&cycle)?))
        }
    }
}

fn theta_axis(axis: ThetaAxis) -> Vec<f64> {
    match axis {
        ThetaAxis::Fixed(x) => vec![x],
        ThetaAxis::Sweep(n) => phase_grid(n),
    }
}

fn fixed(axis: ThetaAxis, name: &str) -> Result<f64> {
    match axis {
        ThetaAxis::Fixed(x) => Ok(x),
        ThetaAxis::Sweep(_) => bail!("this command takes a single --{name}"),
    }
}

fn spectrum(cfg: &RunConfig) -> Result<CsvTable> {
    let family = family(cfg)?;
    let gamma = cfg.params.gamma[0];
    let n = family.dim();
    let mut header = vec!["theta".to_string()];
    header.extend((1..=n).map(|i| format!("e{i}")));
    let mut table = CsvTable::new(header);
    for th in theta_axis(cfg.params.theta) {
        let d = hermitian_eigendecompose(&family.hamiltonian(th, gamma)?)?;
        let mut row = vec![th];
        row.extend_from_slice(d.eigenvalues());
        table.push(row);
    }
    Ok(table)
}

fn scan_table(cfg: &RunConfig) -> Result<CsvTable> {
    let family = family(cfg)?;
    let p = &cfg.params;
    let grid =
        ScanGrid { t: linspace(p.t_min, p.t_max, p.t_steps), theta: theta_axis(p.theta), gamma: p.gamma.clone() };
    let result = scan(&*family, &grid, &p.pairs)?;
    eprintln!("scan: {} points, max probability {:.6}", grid.n_points(), result.max_probability());
    Ok(result.to_table())
}

fn optimize(cfg: &RunConfig) -> Result<CsvTable> {
    let p = &cfg.params;
    let objective = match p.objective {
        ObjectiveName::P15 => Objective::P15,
        ObjectiveName::P16 => Objective::P16,
        ObjectiveName::Sum => Objective::Sum,
    };
    let theta = match p.theta {
        ThetaAxis::Fixed(x) => Window::point(x),
        ThetaAxis::Sweep(_) => Window::new(0.0, TAU)?,
    };
    let gamma = match p.gamma_max {
        Some(hi) => Window::new(p.gamma[0], hi)?,
        None => Window::point(p.gamma[0]),
    };
    let search = RoutingSearch::new(objective, Window::new(p.t_min, p.t_max)?, theta, Some(gamma));
    let best = optimize_routing(&search)?;
    let (p15, p16) = router_spectrum(best.theta, best.gamma).routing_probabilities(best.t);
    let mut table = CsvTable::new(["t", "theta", "gamma", "p15", "p16", "sum"]);
    table.push(vec![best.t, best.theta, best.gamma, p15, p16, p15 + p16]);
    Ok(table)
}

fn superpose(cfg: &RunConfig) -> Result<CsvTable> {
    let p = &cfg.params;
    let theta = fixed(p.theta, "theta")?;
    let router = SuperpositionRouter::new(theta, p.gamma[0])?;
    let phis = theta_axis(p.phi);
    let mut table = CsvTable::new(["t", "phi", "p_right", "p_left"]);
    for t in linspace(p.t_min, p.t_max, p.t_steps) {
        for &phi in &phis {
            let right = router.probability(t, phi, Direction::Right)?;
            let left = router.probability(t, phi, Direction::Left)?;
            table.push(vec![t, phi, right, left]);
        }
    }
    Ok(table)
}

fn universality(cfg: &RunConfig) -> Result<CsvTable> {
    let p = &cfg.params;
    let theta = fixed(p.theta, "theta")?;
    let gamma = p.gamma[0];
    let times = universality_times(theta, gamma, (p.t_min, p.t_max), UNIVERSALITY_TOL)?;
    let spectrum = router_spectrum(theta, gamma);
    let router = SuperpositionRouter::new(theta, gamma)?;
    let mut table = CsvTable::new(["t", "abs_dfdt", "p_right", "p15"]);
    for t in times {
        let d = spectrum.amplitude_15_derivative(t).norm();
        let right = router.probability(t, 0.0, Direction::Right)?;
        table.push(vec![t, d, right, spectrum.routing_probabilities(t).0]);
    }
    eprintln!("universality: {} times in [{}, {}]", table.rows.len(), p.t_min, p.t_max);
    Ok(table)
}

fn probe_name(p: Probe) -> String {
    match p {
        Probe::Site(k) => format!("kappa_site{k}"),
        Probe::Uniform => "kappa_uniform".into(),
    }
}

fn qfi_table(cfg: &RunConfig) -> Result<CsvTable> {
    let p = &cfg.params;
    ensure!(p.time > 0.0, "--t must be positive for qfi");
    let family = family(cfg)?;
    let states = p.probes.iter().map(|&pr| pr.state::<f64>(family.dim())).collect::<Result<Vec<_>, _>>()?;
    let mut header = vec!["theta".to_string(), "gamma".to_string()];
    header.extend(p.probes.iter().map(|&pr| probe_name(pr)));
    let mut table = CsvTable::new(header);
    for th in theta_axis(p.theta) {
        for &g in &p.gamma {
            let mut row = vec![th, g];
            for psi in &states {
                let r = qfi_for(&*family, &ProbeSetup::new(psi.clone(), th, g, p.time)?)?;
                row.push(r.kappa.expect("positive time"));
            }
            table.push(row);
        }
    }
    Ok(table)
}

struct Check {
    name: &'static str,
    cases: usize,
    failures: usize,
    max_deviation: f64,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: 0, max_deviation: 0.0 }
    }

    fn record(&mut self, deviation: f64, tol: f64) {
        self.cases += 1;
        self.max_deviation = self.max_deviation.max(deviation);
        if !(deviation <= tol) {
            self.failures += 1;
        }
    }
}

fn max_probability_gap(a: &ChiralSpec<f64>, b: &ChiralSpec<f64>, t: f64) -> Result<f64> {
    let (wa, wb) = (Walk::new(&build_hamiltonian(a))?, Walk::new(&build_hamiltonian(b))?);
    let n = a.graph().n_vertices();
    let mut worst = 0.0f64;
    for j in 1..=n {
        for k in 1..=n {
            worst = worst.max((wa.probability(j, k, t)? - wb.probability(j, k, t)?).abs());
        }
    }
    Ok(worst)
}

fn randomize_phases(spec: &ChiralSpec<f64>, rng: &mut impl Rng) -> Result<ChiralSpec<f64>> {
    let mut out = spec.clone();
    for &(a, b) in spec.graph().edges() {
        out.set_phase(a, b, rng.gen_range(0.0..TAU))?;
    }
    Ok(out)
}

fn validate(cfg: &RunConfig) -> Result<bool> {
    let p = &cfg.params;
    let spec = match load_spec(cfg)? {
        Some(spec) => spec,
        None => {
            let theta = fixed(p.theta, "theta")?;
            ChiralSpec::new(Graph::router()).loop_family(&[2, 3, 4])?.spec_at(theta, p.gamma[0])?
        }
    };
    let graph = spec.graph().clone();
    let n = graph.n_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut checks = Vec::new();

    let mut topology = Check::new("topology");
    let report = topology_consistency_check(&build_hamiltonian(&spec), &graph)?;
    topology.record(report.violations.len() as f64, 0.0);
    checks.push(topology);

    let mut gauge = Check::new("gauge_invariance");
    for _ in 0..p.cases {
        let phi = RephasingVector((0..n).map(|_| rng.gen_range(0.0..TAU)).collect());
        let t = rng.gen_range(p.t_min..=p.t_max);
        gauge.record(max_probability_gap(&spec, &rephase(&spec, &phi)?, t)?, PHASE_CHECK_TOL);
    }
    checks.push(gauge);

    let info = cycle_rank(&graph);
    if graph.is_tree() {
        let mut tree = Check::new("tree_triviality");
        let mut plain = spec.clone();
        for &(a, b) in graph.edges() {
            plain.set_phase(a, b, 0.0)?;
        }
        for _ in 0..p.cases {
            let chiral = randomize_phases(&spec, &mut rng)?;
            let t = rng.gen_range(p.t_min..=p.t_max);
            tree.record(max_probability_gap(&chiral, &plain, t)?, PHASE_CHECK_TOL);
        }
        checks.push(tree);
    } else if let Some(cycle) = &info.representative {
        let mut loops = Check::new("loop_phase_invariance");
        for _ in 0..p.cases {
            let chiral = randomize_phases(&spec, &mut rng)?;
            let phi = RephasingVector((0..n).map(|_| rng.gen_range(0.0..TAU)).collect());
            let d = (loop_phase(&chiral, cycle)? - loop_phase(&rephase(&chiral, &phi)?, cycle)?).rem_euclid(TAU);
            loops.record(d.min(TAU - d), PHASE_CHECK_TOL);
        }
        checks.push(loops);
    }

    let mut unitarity = Check::new("unitarity");
    let walk = Walk::new(&build_hamiltonian(&spec))?;
    for t in linspace(p.t_min, p.t_max, p.t_steps.max(2)) {
        let u = walk.propagator(t);
        let leak =
            (0..n).map(|k| (u.column(k).iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs()).fold(0.0, f64::max);
        unitarity.record(u.unitarity_defect().max(leak), UNITARITY_TOL);
    }
    checks.push(unitarity);

    let failed: usize = checks.iter().filter(|c| c.failures > 0).count();
    with_output(cfg, |w| {
        writeln!(w, "check,cases,failures,max_deviation")?;
        for c in &checks {
            writeln!(w, "{},{},{},{}", c.name, c.cases, c.failures, format_sig(c.max_deviation, SIGNIFICANT_DIGITS))?;
        }
        Ok(())
    })?;
    eprintln!(
        "validate: {} vertices, cycle rank {}, {} of {} checks passed",
        n,
        info.rank,
        checks.len() - failed,
        checks.len()
    );
    Ok(failed == 0)
}
