//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use chiral_router::grid::{linspace, phase_grid};
use chiral_router::optimize::golden_section_max;
use chiral_router::qfi::fidelity_curvature;
use chiral_router::router::UNIVERSALITY_TOL;
use chiral_router::{
    build_hamiltonian, f_closed_form, hermitian_eigendecompose, kappa_asymptotic, optimize_routing, qfi, rephase,
    router_hamiltonian, router_spectrum, routing_probabilities, scan, superposition_probability, universality_times,
    ChiralSpec, Direction, Graph, Objective, ProbeSetup, RephasingVector, RouterFamily, RoutingSearch, ScanGrid,
    StateVector, Walk, Window,
};
use common::{c, random_connected, random_tree, rng};
use rand::Rng;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, TAU};
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn max_of(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(f64::MIN, f64::max)
}

fn min_of(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(f64::MAX, f64::min)
}

fn routing_optimum() -> Outcome {
    let t = 2.629;
    let (th, _) = golden_section_max(|th| routing_probabilities(th, 0.0, t).0, 0.0, TAU, 1e-9);
    let grid_best = phase_grid::<f64>(4000)
        .into_iter()
        .map(|th| (th, routing_probabilities(th, 0.0, t).0))
        .fold((0.0, f64::MIN), |b, x| if x.1 > b.1 { x } else { b });
    let w = Walk::new(&router_hamiltonian(FRAC_PI_2, 0.0)).unwrap();
    let sum = w.probability(1, 5, t).unwrap() + w.probability(1, 6, t).unwrap();
    let pass = (th - FRAC_PI_2).abs() <= 0.05 && (grid_best.0 - FRAC_PI_2).abs() <= 0.05 && (sum - 0.88).abs() <= 0.01;
    outcome(pass, format!("argmax theta = {th:.6} (grid {:.6}), P15+P16 = {sum:.6}", grid_best.0))
}

fn late_time_switch() -> Outcome {
    let w = Walk::new(&router_hamiltonian(FRAC_PI_2, 0.0)).unwrap();
    let (p15, p16) = (w.probability(1, 5, 18.95).unwrap(), w.probability(1, 6, 18.95).unwrap());
    let pass = (p15 + p16 - 0.97).abs() <= 0.01 && p16 > p15;
    outcome(pass, format!("P15 = {p15:.6}, P16 = {p16:.6}, sum = {:.6}", p15 + p16))
}

fn mirror_symmetry() -> Outcome {
    let thetas = phase_grid::<f64>(400);
    let mirrored: Vec<f64> = thetas.iter().rev().map(|th| TAU - th).collect();
    let ts = linspace(0.0, 30.0, 3001);
    let a = scan(&RouterFamily, &ScanGrid { t: ts.clone(), theta: thetas, gamma: vec![0.0] }, &[(1, 5)]).unwrap();
    let b = scan(&RouterFamily, &ScanGrid { t: ts.clone(), theta: mirrored, gamma: vec![0.0] }, &[(1, 6)]).unwrap();
    let mut worst = 0.0f64;
    for it in 0..ts.len() {
        for ith in 0..400 {
            let p15 = a.value("p15", it, ith, 0).unwrap();
            let p16 = b.value("p16", it, 399 - ith, 0).unwrap();
            worst = worst.max((p15 - p16).abs());
        }
    }
    outcome(worst <= 1e-9, format!("max |P15(t,theta) - P16(t,2pi-theta)| = {worst:.3e} over 400x3001"))
}

fn universal_superposition() -> Outcome {
    let times = universality_times(FRAC_PI_2, 0.0, (0.1, 5.0), UNIVERSALITY_TOL).unwrap();
    let Some(&t_star) = times.first() else {
        return outcome(false, "no universality time found in [0.1, 5]".into());
    };
    let values: Vec<f64> = phase_grid(64)
        .into_iter()
        .map(|phi| superposition_probability(FRAC_PI_2, 0.0, t_star, phi, Direction::Right).unwrap())
        .collect();
    let (lo, hi) = (min_of(values.iter().copied()), max_of(values.iter().copied()));
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let pass = (t_star - 2.629).abs() <= 0.005 && values.iter().all(|p| (p - 0.83).abs() <= 0.01) && hi - lo < 0.01;
    outcome(pass, format!("t* = {t_star:.6}, P_R mean = {mean:.6}, spread = {:.3e}", hi - lo))
}

fn superposition_maxima() -> Outcome {
    let mut found = Vec::new();
    for phi in [0.0, FRAC_PI_8, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2] {
        let f = |t: f64| superposition_probability(FRAC_PI_2, 0.0, t, phi, Direction::Right).unwrap();
        let ts = linspace(2.0, 3.0, 1001);
        let (i, _) = ts.iter().enumerate().fold((0, f64::MIN), |b, (i, &t)| {
            let v = f(t);
            if v > b.1 {
                (i, v)
            } else {
                b
            }
        });
        let (t, _) = golden_section_max(f, ts[i.saturating_sub(1)], ts[(i + 1).min(1000)], 1e-8);
        found.push(t);
    }
    let pass = found.iter().all(|t| (2.35..=2.55).contains(t));
    let list: Vec<String> = found.iter().map(|t| format!("{t:.4}")).collect();
    outcome(pass, format!("maximizers = [{}]", list.join(", ")))
}

fn gamma_enhanced_routing() -> Outcome {
    let search = RoutingSearch::new(
        Objective::P15,
        Window::new(28.0, 34.0).unwrap(),
        Window::new(0.0, 0.5).unwrap(),
        Some(Window::new(0.0, 2.0).unwrap()),
    );
    let best = optimize_routing(&search).unwrap();
    let reference = routing_probabilities(FRAC_PI_2, 0.0, 2.629).0;
    let pass = best.value > reference
        && (best.t - 31.4).abs() <= 0.5
        && (best.theta - 0.11).abs() <= 0.05
        && (best.gamma - 1.0).abs() <= 0.3;
    outcome(
        pass,
        format!(
            "optimum t = {:.4}, theta = {:.4}, gamma = {:.4}, P15 = {:.6} (reference {reference:.6})",
            best.t, best.theta, best.gamma, best.value
        ),
    )
}

fn spectrum_closed_form() -> Outcome {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (th, g) = (r.gen_range(0.0..TAU), r.gen_range(-5.0..5.0));
        let numeric = hermitian_eigendecompose(&router_hamiltonian(th, g)).unwrap();
        let closed = router_spectrum(th, g).sorted_energies();
        for (a, b) in numeric.eigenvalues().iter().zip(closed) {
            worst = worst.max((a - b).abs());
        }
    }
    let gamma = 50.0;
    let mut worst_rel = 0.0f64;
    let mut negatives = 0;
    for th in phase_grid::<f64>(50) {
        for e in router_spectrum(th, gamma).energies.into_iter().filter(|e| *e < 0.0) {
            negatives += 1;
            worst_rel = worst_rel.max(((e + 1.0 / gamma) * gamma).abs());
        }
    }
    let pass = worst <= 1e-9 && negatives == 150 && worst_rel <= 0.10;
    outcome(
        pass,
        format!(
            "max eigenvalue gap = {worst:.3e}; gamma = 50 negative branch within {:.2}% of -1/gamma",
            100.0 * worst_rel
        ),
    )
}

fn qfi_asymptotics() -> Outcome {
    let site2 = StateVector::basis(6, 2).unwrap();
    let times: Vec<f64> = linspace(10.0, 100.0, 10);
    let mut fits = Vec::new();
    for theta in [0.5, 1.0, 2.0, 4.0] {
        fits.push((theta, kappa_asymptotic(&site2, theta, 50.0, &times).unwrap()));
    }
    let q100 = qfi(&ProbeSetup::new(site2.clone(), 1.0, 50.0, 100.0).unwrap()).unwrap().kappa.unwrap();
    let converged = fits.iter().all(|(_, f)| (f.kappa / (2.0 / 9.0) - 1.0).abs() <= 0.05)
        && (q100 / (2.0 / 9.0) - 1.0).abs() <= 0.05;

    let probes =
        [StateVector::basis(6, 2).unwrap(), StateVector::basis(6, 1).unwrap(), StateVector::uniform(6).unwrap()];
    let t = 50.0;
    let kappas: Vec<[f64; 3]> = phase_grid::<f64>(50)
        .into_par_iter()
        .map(|th| {
            let mut k = [0.0; 3];
            for (slot, psi) in k.iter_mut().zip(&probes) {
                *slot = qfi(&ProbeSetup::new(psi.clone(), th, 0.0, t).unwrap()).unwrap().kappa.unwrap();
            }
            k
        })
        .collect();
    let ordered = kappas.iter().all(|k| k[0] > k[1] && k[2] < 0.25 * k[1]);
    let min_gap = min_of(kappas.iter().map(|k| k[0] - k[1]));
    let max_ratio = max_of(kappas.iter().map(|k| k[2] / k[1]));
    outcome(
        converged && ordered,
        format!(
            "kappa(|2>) at gamma = 50: Q(100)/100^2 = {q100:.5}, fits [{}] vs 2/9 = {:.5}; ordering min kappa2-kappa1 = {min_gap:.4}, max kappa_u/kappa1 = {max_ratio:.4}",
            fits.iter().map(|(th, f)| format!("{th}: {:.5}", f.kappa)).collect::<Vec<_>>().join(", "),
            2.0 / 9.0
        ),
    )
}

fn property_suites() -> Outcome {
    let mut r = rng(9);

    let mut gauge_worst = 0.0f64;
    for _ in 0..100 {
        let n = r.gen_range(3..=8);
        let g = random_connected(&mut r, n, 3);
        let mut spec = ChiralSpec::new(g.clone());
        for &(a, b) in g.edges() {
            spec.set_phase(a, b, r.gen_range(0.0..TAU)).unwrap();
        }
        let phi = RephasingVector((0..n).map(|_| r.gen_range(0.0..TAU)).collect());
        let t = r.gen_range(0.0..10.0);
        let wa = Walk::new(&build_hamiltonian(&spec)).unwrap();
        let wb = Walk::new(&build_hamiltonian(&rephase(&spec, &phi).unwrap())).unwrap();
        for j in 1..=n {
            for k in 1..=n {
                gauge_worst =
                    gauge_worst.max((wa.probability(j, k, t).unwrap() - wb.probability(j, k, t).unwrap()).abs());
            }
        }
    }

    let mut tree_worst = 0.0f64;
    for _ in 0..50 {
        let n = r.gen_range(2..=10);
        let tree: Graph = random_tree(&mut r, n);
        let mut spec = ChiralSpec::new(tree.clone());
        for &(a, b) in tree.edges() {
            spec.set_phase(a, b, r.gen_range(0.0..TAU)).unwrap();
        }
        let t = r.gen_range(0.0..10.0);
        let wa = Walk::new(&build_hamiltonian(&spec)).unwrap();
        let wb = Walk::new(&build_hamiltonian(&ChiralSpec::new(tree))).unwrap();
        for j in 1..=n {
            for k in 1..=n {
                tree_worst =
                    tree_worst.max((wa.probability(j, k, t).unwrap() - wb.probability(j, k, t).unwrap()).abs());
            }
        }
    }

    let ts = linspace(0.0, 30.0, 3001);
    let unitarity_worst = phase_grid::<f64>(400)
        .into_par_iter()
        .map(|th| {
            let w = Walk::new(&router_hamiltonian(th, 0.0)).unwrap();
            ts.iter().map(|&t| w.propagator(t).unitarity_defect()).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    let all: Vec<(usize, usize)> = (1..=6).map(|j| (j, 1)).collect();
    let sums = scan(&RouterFamily, &ScanGrid::<f64>::router_default(), &all).unwrap();
    let conservation_worst = max_of(sums.grid("sum").unwrap().data.iter().map(|s| (s - 1.0).abs()));

    let mut qfi_worst = 0.0f64;
    for _ in 0..50 {
        let psi =
            StateVector::new((0..6).map(|_| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect()).unwrap();
        let setup =
            ProbeSetup::new(psi, r.gen_range(0.0..TAU), r.gen_range(-2.0..2.0), r.gen_range(1.0..10.0)).unwrap();
        let q = qfi(&setup).unwrap().q;
        let curv = fidelity_curvature(&setup, 1e-4).unwrap();
        qfi_worst = qfi_worst.max((q - curv).abs() / q);
    }

    let pass = gauge_worst <= 1e-10
        && tree_worst <= 1e-10
        && unitarity_worst <= 1e-9
        && conservation_worst <= 1e-9
        && qfi_worst <= 0.01;
    outcome(
        pass,
        format!(
            "gauge {gauge_worst:.2e}, tree {tree_worst:.2e}, unitarity {unitarity_worst:.2e}, conservation {conservation_worst:.2e}, QFI curvature {:.3}%",
            100.0 * qfi_worst
        ),
    )
}

fn amplitude_consistency() -> Outcome {
    let f0 = f_closed_form(0.0f64);
    let w = Walk::new(&router_hamiltonian(FRAC_PI_2, 0.0)).unwrap();
    let ts = linspace(0.0, 10.0, 1001);
    let pairs: Vec<(f64, f64)> =
        ts.iter().map(|&t| (f_closed_form(t).norm_sqr(), w.probability(1, 5, t).unwrap())).collect();
    let constant = pairs.iter().map(|(f2, p)| f2 * p).sum::<f64>() / pairs.iter().map(|(f2, _)| f2 * f2).sum::<f64>();
    let residual = (pairs.iter().map(|(f2, p)| (p - constant * f2).powi(2)).sum::<f64>()
        / pairs.iter().map(|(_, p)| p * p).sum::<f64>())
    .sqrt();
    let pass = f0.re == 0.0 && f0.im == 0.0 && residual < 1e-6;
    outcome(
        pass,
        format!("f(0) = {f0}, fitted P15 = c|f|^2 with c = {constant:.12}, relative residual = {residual:.3e}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("routing optimum at t = 2.629", routing_optimum),
        ("late-time routing with role switch", late_time_switch),
        ("mirror symmetry", mirror_symmetry),
        ("universal superposition routing", universal_superposition),
        ("superposition maxima location", superposition_maxima),
        ("self-energy enhanced routing", gamma_enhanced_routing),
        ("closed-form spectrum", spectrum_closed_form),
        ("QFI asymptotics and probe ordering", qfi_asymptotics),
        ("property suites", property_suites),
        ("closed-form amplitude consistency", amplitude_consistency),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let status = if result.pass { "PASS" } else { "FAIL" };
        if !result.pass {
            failures += 1;
        }
        println!("criterion {:>2} [{status}] {name}: {} ({:.2}s)", i + 1, result.detail, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
