//! Closed-form model of the six-site chiral router.
//!
//! Sites 2, 3, 4 form the loop; 1, 5, 6 hang off 2, 3, 4 respectively. The loop
//! carries total phase `θ` and the inner sites are offset by `γ = γ_int − γ_ext`.
//! Probabilities use the bra-first convention `P_jk = |⟨j|U|k⟩|²`.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::linspace;
use crate::hamiltonian::HamiltonianFamily;
use crate::linalg::{ComplexMatrix, HermitianOperator, StateVector};
use crate::optimize::{argmax, golden_section_max, golden_section_min};
use crate::scalar::Real;
use crate::walk::Walk;

/// Loop sites in traversal order.
pub const LOOP: [usize; 3] = [2, 3, 4];

/// Router control knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouterParams<T> {
    pub theta: T,
    pub gamma: T,
    pub t: T,
}

impl<T: Real> RouterParams<T> {
    /// Reduces `θ` into `[0, 2π)`; all fields must be finite.
    pub fn new(theta: T, gamma: T, t: T) -> Result<Self> {
        if !(theta.is_finite() && gamma.is_finite() && t.is_finite()) {
            return Err(Error::InvalidParameter("router parameters must be finite".into()));
        }
        Ok(Self { theta: theta.wrap_angle(), gamma, t })
    }
}

/// The router Hamiltonian in the site basis:
///
/// ```text
/// [ 0  1       0        0       0  0 ]
/// [ 1  γ       e^{-iθ/3} e^{iθ/3} 0  0 ]
/// [ 0  e^{iθ/3} γ       e^{-iθ/3} 1  0 ]
/// [ 0  e^{-iθ/3} e^{iθ/3} γ      0  1 ]
/// [ 0  0       1        0       0  0 ]
/// [ 0  0       0        1       0  0 ]
/// ```
pub fn router_hamiltonian<T: Real>(theta: T, gamma: T) -> HermitianOperator<T> {
    let one = Complex::new(T::one(), T::zero());
    let g = Complex::new(gamma, T::zero());
    let fwd = Complex::from_polar(T::one(), theta / T::lit(3.0));
    let back = fwd.conj();
    let mut m = ComplexMatrix::zeros(6);
    m[(0, 1)] = one;
    m[(1, 0)] = one;
    m[(1, 1)] = g;
    m[(2, 2)] = g;
    m[(3, 3)] = g;
    m[(1, 2)] = back;
    m[(1, 3)] = fwd;
    m[(2, 1)] = fwd;
    m[(2, 3)] = back;
    m[(2, 4)] = one;
    m[(3, 1)] = back;
    m[(3, 2)] = fwd;
    m[(3, 5)] = one;
    m[(4, 2)] = one;
    m[(5, 3)] = one;
    HermitianOperator::new(m).expect("router Hamiltonian is Hermitian")
}

/// [`router_hamiltonian`] as a scan family.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RouterFamily;

impl<T: Real> HamiltonianFamily<T> for RouterFamily {
    fn dim(&self) -> usize {
        6
    }

    fn hamiltonian(&self, theta: T, gamma: T) -> Result<HermitianOperator<T>> {
        if !(theta.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidParameter("router parameters must be finite".into()));
        }
        Ok(router_hamiltonian(theta, gamma))
    }

    fn describe(&self) -> String {
        "router".into()
    }
}

/// Closed-form spectrum: `S_n = γ/2 + cos(θ/3 + 4π/3·((n−1) mod 3))`,
/// `E_n = S_n + (−1)^{n mod 2}·√(1 + S_n²)`, for `n = 1..6`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouterSpectrum<T> {
    pub s: [T; 6],
    pub energies: [T; 6],
}

pub fn router_spectrum<T: Real>(theta: T, gamma: T) -> RouterSpectrum<T> {
    let two = T::lit(2.0);
    let four_thirds_pi = T::lit(4.0) * T::PI() / T::lit(3.0);
    let mut s = [T::zero(); 6];
    let mut energies = [T::zero(); 6];
    for n in 1..=6 {
        let shift = T::from_usize_lossy((n - 1) % 3);
        let sn = gamma / two + (theta / T::lit(3.0) + four_thirds_pi * shift).cos();
        let root = (T::one() + sn * sn).sqrt();
        s[n - 1] = sn;
        energies[n - 1] = if n % 2 == 1 { sn - root } else { sn + root };
    }
    RouterSpectrum { s, energies }
}

impl<T: Real> RouterSpectrum<T> {
    /// `e^{i2π(n−1)/3}`
    fn omega(n: usize) -> Complex<T> {
        Complex::from_polar(T::one(), T::two_pi() * T::from_usize_lossy((n - 1) % 3) / T::lit(3.0))
    }

    /// `(1, E, ωE, ω²E, ω, ω²)/√(3(1+E²))` for `n = 1..6`.
    pub fn eigenvector(&self, n: usize) -> Result<[Complex<T>; 6]> {
        if !(1..=6).contains(&n) {
            return Err(Error::EigenIndexOutOfRange(n));
        }
        let e = self.energies[n - 1];
        let w = Self::omega(n);
        let w2 = w * w;
        let norm = (T::lit(3.0) * (T::one() + e * e)).sqrt().recip();
        let re = |x: T| Complex::new(x * norm, T::zero());
        Ok([re(T::one()), re(e), w * e * norm, w2 * e * norm, w * norm, w2 * norm])
    }

    /// Eigenvectors as columns, in the closed-form index order.
    pub fn eigenvector_matrix(&self) -> ComplexMatrix<T> {
        let mut m = ComplexMatrix::zeros(6);
        for n in 1..=6 {
            let v = self.eigenvector(n).expect("index in range");
            for (r, z) in v.into_iter().enumerate() {
                m[(r, n - 1)] = z;
            }
        }
        m
    }

    pub fn sorted_energies(&self) -> [T; 6] {
        let mut e = self.energies;
        e.sort_by(|a, b| a.partial_cmp(b).expect("finite energies"));
        e
    }

    /// `⟨j|e^{−iHt}|k⟩` from the closed-form eigenpairs, 1-based sites.
    pub fn amplitude(&self, j: usize, k: usize, t: T) -> Result<Complex<T>> {
        crate::linalg::check_site(j, 6)?;
        crate::linalg::check_site(k, 6)?;
        let mut acc = Complex::zero();
        for n in 1..=6 {
            let v = self.eigenvector(n)?;
            acc = acc + Complex::from_polar(T::one(), -self.energies[n - 1] * t) * v[j - 1] * v[k - 1].conj();
        }
        Ok(acc)
    }

    /// Six-term sum `Σ_n e^{−iE_n t} e^{−i2πm(n−1)/3}/(3(1+E_n²))`; `m = 1` gives `⟨1|U|5⟩`, `m = 2` gives `⟨1|U|6⟩`.
    fn outer_amplitude(&self, m: usize, t: T) -> Complex<T> {
        let three = T::lit(3.0);
        self.energies.iter().enumerate().fold(Complex::zero(), |acc, (idx, &e)| {
            let rot = -T::two_pi() * T::from_usize_lossy(m * idx) / three;
            let w = (three * (T::one() + e * e)).recip();
            acc + Complex::from_polar(w, rot - e * t)
        })
    }

    /// `(P₁₅, P₁₆)` at time `t`.
    pub fn routing_probabilities(&self, t: T) -> (T, T) {
        (self.outer_amplitude(1, t).norm_sqr(), self.outer_amplitude(2, t).norm_sqr())
    }

    /// `∂_t⟨1|U|5⟩ = −i⟨1|U|3⟩`, using `H|5⟩ = |3⟩`.
    pub fn amplitude_15_derivative(&self, t: T) -> Complex<T> {
        let three = T::lit(3.0);
        let acc = self.energies.iter().enumerate().fold(Complex::<T>::zero(), |acc, (idx, &e)| {
            let rot = -T::two_pi() * T::from_usize_lossy(idx) / three;
            let w = e / (three * (T::one() + e * e));
            acc + Complex::from_polar(w, rot - e * t)
        });
        acc * Complex::new(T::zero(), -T::one())
    }
}

/// In/out-of-loop probability ratio `R_n = E_n²` for eigenstate `n = 1..6`.
pub fn probability_ratio<T: Real>(n: usize, theta: T, gamma: T) -> Result<T> {
    if !(1..=6).contains(&n) {
        return Err(Error::EigenIndexOutOfRange(n));
    }
    let e = router_spectrum(theta, gamma).energies[n - 1];
    Ok(e * e)
}

/// Same ratio summed directly from the eigenvector components.
pub fn probability_ratio_from_components<T: Real>(n: usize, theta: T, gamma: T) -> Result<T> {
    let v = router_spectrum(theta, gamma).eigenvector(n)?;
    let inner: T = LOOP.iter().fold(T::zero(), |a, &j| a + v[j - 1].norm_sqr());
    let outer: T = [1usize, 5, 6].iter().fold(T::zero(), |a, &j| a + v[j - 1].norm_sqr());
    Ok(inner / outer)
}

/// `(P₁₅, P₁₆)` from the closed-form six-term sums.
pub fn routing_probabilities<T: Real>(theta: T, gamma: T, t: T) -> (T, T) {
    router_spectrum(theta, gamma).routing_probabilities(t)
}

/// Value and first two time derivatives of a scalar function.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Jet<T> {
    v: T,
    d1: T,
    d2: T,
}

impl<T: Real> Jet<T> {
    fn sin(w: T, t: T) -> Self {
        let (s, c) = (w * t).sin_cos();
        Self { v: s, d1: w * c, d2: -w * w * s }
    }

    fn cos(w: T, t: T) -> Self {
        let (s, c) = (w * t).sin_cos();
        Self { v: c, d1: -w * s, d2: -w * w * c }
    }

    fn mul(self, o: Self) -> Self {
        Self {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + T::lit(2.0) * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

/// `[f, ∂_t f, ∂_tt f]` for the closed-form amplitude `f(t) = f_r(t) + i f_i(t)`, differentiated term by term.
pub fn f_closed_form_derivatives<T: Real>(t: T) -> [Complex<T>; 3] {
    let two = T::lit(2.0);
    let s3 = T::lit(3.0).sqrt();
    let s7 = T::lit(7.0).sqrt();
    let s21 = T::lit(21.0).sqrt();
    let a = s3 / two;
    let b = s7 / two;

    let sa = Jet::sin(a, t);
    let ca = Jet::cos(a, t);
    let sb = Jet::sin(b, t);
    let cb = Jet::cos(b, t);
    let c1 = Jet::cos(T::one(), t);

    // (coefficient in f_r, coefficient in f_i, trig product)
    let terms = [
        (T::one() / (two * s21), T::one() / (two * s7), sa.mul(sb)),
        (-T::one() / T::lit(6.0), -T::one() / (two * s3), c1),
        (T::one() / T::lit(6.0), T::one() / (two * s3), ca.mul(cb)),
        (-T::one() / (two * s3), -T::one() / two, sa.mul(cb)),
        (T::one() / (two * s7), (T::lit(3.0) / T::lit(7.0)).sqrt() / two, sb.mul(ca)),
    ];
    let mut out = [Complex::zero(); 3];
    for (cr, ci, jet) in terms {
        let c = Complex::new(cr, ci);
        out[0] = out[0] + c * jet.v;
        out[1] = out[1] + c * jet.d1;
        out[2] = out[2] + c * jet.d2;
    }
    out
}

/// `f(t) = f_r(t) + i f_i(t)`; equals `⟨1|U|5⟩` at `θ = π/2`, `γ = 0`.
pub fn f_closed_form<T: Real>(t: T) -> Complex<T> {
    f_closed_form_derivatives(t)[0]
}

/// Which output superposition is targeted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `|φ₅₃⟩`
    Right,
    /// `|φ₆₄⟩`
    Left,
}

/// Site pairs carrying the superpositions `(|a⟩ + e^{iφ}|b⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuperpositionSites {
    S12,
    S53,
    S64,
}

impl SuperpositionSites {
    pub fn sites(self) -> (usize, usize) {
        match self {
            Self::S12 => (1, 2),
            Self::S53 => (5, 3),
            Self::S64 => (6, 4),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionState<T> {
    pub which: SuperpositionSites,
    pub phi: T,
}

impl<T: Real> SuperpositionState<T> {
    pub fn to_state(&self) -> StateVector<T> {
        let (a, b) = self.which.sites();
        StateVector::pair_superposition(6, a, b, self.phi).expect("router sites are valid")
    }
}

/// Superposition routing on a router with fixed `(θ, γ)`, evaluated on the numeric propagator.
#[derive(Debug, Clone)]
pub struct SuperpositionRouter<T> {
    walk: Walk<T>,
}

impl<T: Real> SuperpositionRouter<T> {
    pub fn new(theta: T, gamma: T) -> Result<Self> {
        let h = RouterFamily.hamiltonian(theta, gamma)?;
        Ok(Self { walk: Walk::new(&h)? })
    }

    /// `|⟨φ₁₂|U|φ₅₃⟩|²` (right) or `|⟨φ₁₂|U|φ₆₄⟩|²` (left), same bra-first ordering as `P₁₅`.
    pub fn probability(&self, t: T, phi: T, direction: Direction) -> Result<T> {
        let source = SuperpositionState { which: SuperpositionSites::S12, phi }.to_state();
        let which = match direction {
            Direction::Right => SuperpositionSites::S53,
            Direction::Left => SuperpositionSites::S64,
        };
        let target = SuperpositionState { which, phi }.to_state();
        Ok(self.walk.overlap(&source, &target, t)?.norm_sqr())
    }
}

/// `P_R` / `P_L` for the superposition `|φ₁₂⟩` at `(θ, γ, t, φ)`.
pub fn superposition_probability<T: Real>(theta: T, gamma: T, t: T, phi: T, direction: Direction) -> Result<T> {
    SuperpositionRouter::new(theta, gamma)?.probability(t, phi, direction)
}

/// `¼|f + 2i cos φ ∂_t f − ∂_tt f|²`, the `θ = π/2`, `γ = 0` right-routing probability.
pub fn superposition_probability_formula<T: Real>(t: T, phi: T) -> T {
    let [f, df, ddf] = f_closed_form_derivatives(t);
    let two_i_cos = Complex::new(T::zero(), T::lit(2.0) * phi.cos());
    (f + two_i_cos * df - ddf).norm_sqr() / T::lit(4.0)
}

/// Default threshold on `|∂_t⟨1|U|5⟩|` for universality detection.
pub const UNIVERSALITY_TOL: f64 = 1e-3;

/// Times in `window` where `|∂_t⟨1|U|5⟩|` has a local minimum below `tolerance`.
///
/// `|∂_t⟨1|U|5⟩|` is sampled every 1e−3 (at least 1000 intervals); each interior
/// local minimum is refined by golden-section search and kept if it falls below
/// the tolerance. At those times `P_R` does not depend on `φ`.
pub fn universality_times<T: Real>(theta: T, gamma: T, window: (T, T), tolerance: T) -> Result<Vec<T>> {
    if !(tolerance > T::zero()) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tolerance}")));
    }
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo >= T::zero() && hi > lo) {
        return Err(Error::InvalidParameter(format!("window [{lo}, {hi}] must satisfy 0 <= lo < hi")));
    }
    let spec = router_spectrum(theta, gamma);
    let deriv = |t: T| spec.amplitude_15_derivative(t).norm();

    let width = hi - lo;
    let intervals = (width / T::lit(1e-3)).ceil().to_usize().unwrap_or(1000).max(1000);
    let ts = linspace(lo, hi, intervals + 1);
    let ds: Vec<T> = ts.iter().map(|&t| deriv(t)).collect();

    let mut out: Vec<T> = Vec::new();
    for i in 1..ts.len() - 1 {
        if ds[i] <= ds[i - 1] && ds[i] < ds[i + 1] {
            let (t_min, d_min) = golden_section_min(deriv, ts[i - 1], ts[i + 1], T::lit(1e-10).max(T::epsilon() * hi));
            if d_min < tolerance && out.last().is_none_or(|&prev| t_min - prev > T::lit(1e-6)) {
                out.push(t_min);
            }
        }
    }
    Ok(out)
}

/// What the routing optimizer maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    P15,
    P16,
    Sum,
}

impl Objective {
    pub fn evaluate<T: Real>(self, spectrum: &RouterSpectrum<T>, t: T) -> T {
        let (p15, p16) = spectrum.routing_probabilities(t);
        match self {
            Self::P15 => p15,
            Self::P16 => p16,
            Self::Sum => p15 + p16,
        }
    }
}

/// Closed interval searched by the optimizer; `lo == hi` pins a coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Window<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || hi < lo {
            return Err(Error::InvalidParameter(format!("window [{lo}, {hi}] is empty or not finite")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: T) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    fn clamp(&self, x: T) -> T {
        x.max(self.lo).min(self.hi)
    }
}

/// Search windows and coarse-grid resolution for [`optimize_routing`].
#[derive(Debug, Clone, PartialEq)]
pub struct RoutingSearch<T> {
    pub objective: Objective,
    pub t: Window<T>,
    pub theta: Window<T>,
    /// `None` fixes `γ = 0`.
    pub gamma: Option<Window<T>>,
    /// Coarse-grid spacings for `(t, θ, γ)`.
    pub spacing: (T, T, T),
}

impl<T: Real> RoutingSearch<T> {
    /// Coarse spacings 0.005 in `t`, 0.01 in `θ` and 0.05 in `γ`.
    pub fn new(objective: Objective, t: Window<T>, theta: Window<T>, gamma: Option<Window<T>>) -> Self {
        Self { objective, t, theta, gamma, spacing: (T::lit(0.005), T::lit(0.01), T::lit(0.05)) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoutingOptimum<T> {
    pub t: T,
    pub theta: T,
    pub gamma: T,
    pub value: T,
}

/// Convergence threshold on parameter moves during refinement.
pub const REFINE_STEP_TOL: f64 = 1e-4;

fn axis_points<T: Real>(w: &Window<T>, spacing: T) -> Vec<T> {
    if w.width() <= T::zero() {
        return vec![w.lo];
    }
    let n = (w.width() / spacing).ceil().to_usize().unwrap_or(1).max(1);
    linspace(w.lo, w.hi, n + 1)
}

/// Coarse grid search followed by coordinate-wise golden-section refinement.
///
/// The grid is evaluated column by column over `(θ, γ)` in parallel; the winner is
/// the first strict maximum in `(θ, γ, t)` order, so the result does not depend on
/// scheduling. Refinement brackets each coordinate by one grid spacing around the
/// incumbent and stops once every coordinate moves less than 1e−4.
pub fn optimize_routing<T: Real>(search: &RoutingSearch<T>) -> Result<RoutingOptimum<T>> {
    let gamma_window = search.gamma.unwrap_or(Window::point(T::zero()));
    let ts = axis_points(&search.t, search.spacing.0);
    let thetas = axis_points(&search.theta, search.spacing.1);
    let gammas = axis_points(&gamma_window, search.spacing.2);
    let objective = search.objective;

    let columns: Vec<(T, T)> = thetas.iter().flat_map(|&th| gammas.iter().map(move |&g| (th, g))).collect();
    let best_per_column: Vec<(T, T)> = columns
        .par_iter()
        .map(|&(th, g)| {
            let spec = router_spectrum(th, g);
            let vals: Vec<T> = ts.iter().map(|&t| objective.evaluate(&spec, t)).collect();
            let (i, v) = argmax(&vals).expect("non-empty time axis");
            (ts[i], v)
        })
        .collect();

    let mut best = RoutingOptimum { t: ts[0], theta: columns[0].0, gamma: columns[0].1, value: T::neg_infinity() };
    for (&(th, g), &(t, v)) in columns.iter().zip(&best_per_column) {
        if v > best.value {
            best = RoutingOptimum { t, theta: th, gamma: g, value: v };
        }
    }

    let f = |t: T, th: T, g: T| objective.evaluate(&router_spectrum(th, g), t);
    let tol = T::lit(REFINE_STEP_TOL);
    let inner_tol = T::lit(1e-8);
    for _ in 0..200 {
        let start = best;

        let (lo, hi) = (search.t.clamp(best.t - search.spacing.0), search.t.clamp(best.t + search.spacing.0));
        let (t, v) = golden_section_max(|t| f(t, best.theta, best.gamma), lo, hi, inner_tol);
        if v > best.value {
            best.t = t;
            best.value = v;
        }

        let (lo, hi) =
            (search.theta.clamp(best.theta - search.spacing.1), search.theta.clamp(best.theta + search.spacing.1));
        let (th, v) = golden_section_max(|th| f(best.t, th, best.gamma), lo, hi, inner_tol);
        if v > best.value {
            best.theta = th;
            best.value = v;
        }

        if gamma_window.width() > T::zero() {
            let (lo, hi) =
                (gamma_window.clamp(best.gamma - search.spacing.2), gamma_window.clamp(best.gamma + search.spacing.2));
            let (g, v) = golden_section_max(|g| f(best.t, best.theta, g), lo, hi, inner_tol);
            if v > best.value {
                best.gamma = g;
                best.value = v;
            }
        }

        let moved =
            (best.t - start.t).abs().max((best.theta - start.theta).abs()).max((best.gamma - start.gamma).abs());
        if moved < tol {
            break;
        }
    }
    Ok(best)
}
