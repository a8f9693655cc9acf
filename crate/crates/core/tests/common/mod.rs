//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use chiral_router::{Complex64, ComplexMatrix64, Graph, HermitianOperator64};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Entries uniform in `[-1, 1]`, symmetrized.
pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianOperator64 {
    let mut m = ComplexMatrix64::zeros(n);
    for j in 0..n {
        m[(j, j)] = c(rng.gen_range(-1.0..1.0), 0.0);
        for k in (j + 1)..n {
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(j, k)] = z;
            m[(k, j)] = z.conj();
        }
    }
    HermitianOperator64::new(m).unwrap()
}

/// Random labelled tree on `n` vertices: vertex `v` attaches to a random earlier vertex, then labels are shuffled.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    let mut labels: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (labels[rng.gen_range(0..v)], labels[v])).collect();
    Graph::new(n, &edges).unwrap()
}

/// A random tree plus `extra` random chords.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: usize) -> Graph {
    let tree = random_tree(rng, n);
    let mut edges = tree.edges().to_vec();
    let mut tries = 0;
    while edges.len() < n - 1 + extra && tries < 1000 {
        tries += 1;
        let (a, b) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let key = (a.min(b), a.max(b));
        if a != b && !edges.contains(&key) {
            edges.push(key);
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// `e^{-iHt}` by Taylor series with scaling and squaring.
pub fn taylor_expm(h: &ComplexMatrix64, t: f64) -> ComplexMatrix64 {
    let n = h.dim();
    let a = h.scale(c(0.0, -t));
    let norm = a.frobenius_norm();
    let mut squarings = 0;
    while norm / 2f64.powi(squarings) > 0.25 {
        squarings += 1;
    }
    let a = a.scale(c(1.0 / 2f64.powi(squarings), 0.0));
    let mut sum = ComplexMatrix64::identity(n);
    let mut term = ComplexMatrix64::identity(n);
    for k in 1..=30 {
        term = term.matmul(&a).scale(c(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

/// Roots of the characteristic polynomial: Faddeev-LeVerrier coefficients,
/// Durand-Kerner iteration, Newton polish; real parts sorted ascending.
pub fn charpoly_eigenvalues(h: &ComplexMatrix64) -> Vec<f64> {
    let n = h.dim();
    // p(x) = x^n + c[1] x^{n-1} + ... + c[n]
    let mut coeffs = vec![c(1.0, 0.0); n + 1];
    let mut m = ComplexMatrix64::zeros(n);
    let id = ComplexMatrix64::identity(n);
    for k in 1..=n {
        m = h.matmul(&m).add(&id.scale(coeffs[k - 1]));
        let am = h.matmul(&m);
        let trace: Complex64 = (0..n).map(|i| am[(i, i)]).sum();
        coeffs[k] = -trace / k as f64;
    }
    let eval = |x: Complex64| coeffs.iter().fold(c(0.0, 0.0), |acc, &a| acc * x + a);
    let deriv =
        |x: Complex64| coeffs[..n].iter().enumerate().fold(c(0.0, 0.0), |acc, (i, &a)| acc * x + a * (n - i) as f64);
    let bound = 1.0 + coeffs[1..].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n).map(|i| Complex64::from_polar(0.4 * bound, 0.4 + 0.9 * i as f64)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| roots[i] - roots[j]).product();
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let mut out: Vec<f64> = roots
        .into_iter()
        .map(|r| {
            let mut x = c(r.re, 0.0);
            for _ in 0..5 {
                let d = deriv(x);
                if d.norm() > 1e-300 {
                    x -= eval(x) / d;
                }
            }
            x.re
        })
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}
