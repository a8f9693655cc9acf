//! Quantum Fisher information of the loop phase imprinted by the router evolution.
//!
//! For `|ψ_θ⟩ = U(θ)|ψ₀⟩` the information is the variance of the generator
//! `ℋ = −i(∂_θ U†)U` in the probe state, `Q = ⟨ℋ²⟩ − ⟨ℋ⟩²`. The θ-derivative is a
//! central finite difference of the full propagator, which stays well defined
//! across the degenerate points of the spectrum.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianFamily;
use crate::linalg::{ComplexMatrix, HermitianOperator, StateVector};
use crate::router::RouterFamily;
use crate::scalar::Real;
use crate::walk::Walk;

pub const DEFAULT_DTHETA: f64 = 1e-6;

/// Largest accepted finite-difference step.
pub const MAX_DTHETA: f64 = 1e-3;

/// Anti-Hermitian residual allowed relative to `‖ℋ‖_max`.
pub const GENERATOR_RESIDUAL_TOL: f64 = 1e-6;

/// Entrywise agreement required between `ℋ` at `dθ` and at `10·dθ`, relative to `max(1, ‖ℋ‖_max)`.
pub const STEP_CONSISTENCY_TOL: f64 = 1e-5;

/// Negative `Q` within this distance of zero is clamped to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-9;

/// Probe state and evolution parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSetup<T> {
    pub initial_state: StateVector<T>,
    pub theta: T,
    pub gamma: T,
    pub t: T,
    pub dtheta: T,
}

impl<T: Real> ProbeSetup<T> {
    /// Uses the default step `dθ = 1e−6`.
    pub fn new(initial_state: StateVector<T>, theta: T, gamma: T, t: T) -> Result<Self> {
        Self::with_step(initial_state, theta, gamma, t, T::lit(DEFAULT_DTHETA))
    }

    pub fn with_step(initial_state: StateVector<T>, theta: T, gamma: T, t: T, dtheta: T) -> Result<Self> {
        check_step(dtheta)?;
        if !(theta.is_finite() && gamma.is_finite() && t.is_finite()) {
            return Err(Error::InvalidParameter("probe parameters must be finite".into()));
        }
        if (initial_state.norm() - T::one()).abs() > T::lit(1e-12).max(T::epsilon() * T::lit(16.0)) {
            return Err(Error::InvalidParameter("probe state is not normalized".into()));
        }
        Ok(Self { initial_state, theta, gamma, t, dtheta })
    }
}

/// The three probes compared for the router, plus arbitrary site states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    /// `|k⟩`, 1-based.
    Site(usize),
    /// `(1/√6) Σ_j |j⟩`
    Uniform,
}

impl Probe {
    pub fn state<T: Real>(self, dim: usize) -> Result<StateVector<T>> {
        match self {
            Self::Site(k) => StateVector::basis(dim, k),
            Self::Uniform => StateVector::uniform(dim),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiResult<T> {
    /// `Q ≥ 0`
    pub q: T,
    /// `Q/t²`; `None` at `t = 0`.
    pub kappa: Option<T>,
    pub generator_norm: T,
}

fn check_step<T: Real>(dtheta: T) -> Result<()> {
    if !(dtheta > T::zero() && dtheta <= T::lit(MAX_DTHETA)) {
        return Err(Error::InvalidParameter(format!("dtheta = {dtheta} outside (0, {MAX_DTHETA}]")));
    }
    Ok(())
}

/// `ℋ = −i(∂_θU†)U` for any θ-family, via `[U†(θ+dθ) − U†(θ−dθ)]/(2dθ)`, Hermitized.
pub fn qfi_generator_for<T: Real, F: HamiltonianFamily<T> + ?Sized>(
    family: &F,
    theta: T,
    gamma: T,
    t: T,
    dtheta: T,
) -> Result<HermitianOperator<T>> {
    check_step(dtheta)?;
    if t == T::zero() {
        return Ok(HermitianOperator::zeros(family.dim()));
    }
    let u = |th: T| -> Result<ComplexMatrix<T>> { Ok(Walk::new(&family.hamiltonian(th, gamma)?)?.propagator(t)) };
    let plus = u(theta + dtheta)?.adjoint();
    let minus = u(theta - dtheta)?.adjoint();
    let centre = u(theta)?;
    let du_dag = plus.sub(&minus).scale(Complex::new((T::lit(2.0) * dtheta).recip(), T::zero()));
    let raw = du_dag.matmul(&centre).scale(Complex::new(T::zero(), -T::one()));
    let (generator, residual) = HermitianOperator::hermitize(&raw);
    let norm = generator.matrix().max_norm();
    if residual > T::lit(GENERATOR_RESIDUAL_TOL) * norm.max(T::one()) {
        return Err(Error::GeneratorResidual {
            residual: residual.to_f64().unwrap_or(f64::NAN),
            norm: norm.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(generator)
}

/// Generator for the router evolution.
pub fn qfi_generator<T: Real>(theta: T, gamma: T, t: T, dtheta: T) -> Result<HermitianOperator<T>> {
    qfi_generator_for(&RouterFamily, theta, gamma, t, dtheta)
}

/// `Q = ⟨ψ₀|ℋ²|ψ₀⟩ − ⟨ψ₀|ℋ|ψ₀⟩²` for the router.
///
/// The generator is also formed at `10·dθ`; disagreement beyond 1e−5 relative
/// aborts with [`Error::StepSizeInconsistent`].
pub fn qfi<T: Real>(setup: &ProbeSetup<T>) -> Result<QfiResult<T>> {
    qfi_for(&RouterFamily, setup)
}

pub fn qfi_for<T: Real, F: HamiltonianFamily<T> + ?Sized>(family: &F, setup: &ProbeSetup<T>) -> Result<QfiResult<T>> {
    if setup.initial_state.dim() != family.dim() {
        return Err(Error::DimensionMismatch { expected: family.dim(), actual: setup.initial_state.dim() });
    }
    let gen = qfi_generator_for(family, setup.theta, setup.gamma, setup.t, setup.dtheta)?;
    let coarse_step = (setup.dtheta * T::lit(10.0)).min(T::lit(MAX_DTHETA));
    if coarse_step > setup.dtheta {
        let coarse = qfi_generator_for(family, setup.theta, setup.gamma, setup.t, coarse_step)?;
        let diff = gen.matrix().max_abs_diff(coarse.matrix());
        let scale = gen.matrix().max_norm().max(T::one());
        if diff > T::lit(STEP_CONSISTENCY_TOL) * scale {
            return Err(Error::StepSizeInconsistent {
                difference: diff.to_f64().unwrap_or(f64::NAN),
                step: setup.dtheta.to_f64().unwrap_or(f64::NAN),
                coarse_step: coarse_step.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(variance_result(&gen, &setup.initial_state, setup.t))
}

fn variance_result<T: Real>(gen: &HermitianOperator<T>, psi: &StateVector<T>, t: T) -> QfiResult<T> {
    let hpsi = gen.matrix().apply(psi.amplitudes());
    let mean = crate::linalg::inner(psi.amplitudes(), &hpsi).re;
    let second = hpsi.iter().fold(T::zero(), |a, z| a + z.norm_sqr());
    let mut q = second - mean * mean;
    if q < T::zero() && q > -T::lit(NEGATIVE_CLAMP) {
        q = T::zero();
    }
    let kappa = if t != T::zero() { Some(q / (t * t)) } else { None };
    QfiResult { q, kappa, generator_norm: gen.matrix().max_norm() }
}

/// `2(1 − |⟨ψ_θ|ψ_{θ+ε}⟩|)/ε²`, which tends to `⟨Δℋ²⟩` as `ε → 0`.
pub fn fidelity_curvature<T: Real>(setup: &ProbeSetup<T>, eps: T) -> Result<T> {
    let evolve = |th: T| -> Result<StateVector<T>> {
        let walk = Walk::new(&RouterFamily.hamiltonian(th, setup.gamma)?)?;
        setup.initial_state.evolve(&walk.propagator(setup.t))
    };
    let a = evolve(setup.theta)?;
    let b = evolve(setup.theta + eps)?;
    Ok(T::lit(2.0) * (T::one() - a.inner(&b).norm()) / (eps * eps))
}

/// Least-squares `Q(t) ≈ κ t²` over the top decade of times.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaFit<T> {
    pub kappa: T,
    /// `‖Q − κt²‖₂ / ‖Q‖₂` over the fitted points.
    pub relative_residual: T,
    pub fitted_times: Vec<T>,
    pub q_values: Vec<T>,
    /// True when the residual is below 5%.
    pub quadratic_scaling: bool,
}

/// Residual bound confirming `t²` growth.
pub const SCALING_RESIDUAL_TOL: f64 = 0.05;

/// Fits `κ` for the router probe over `t ∈ [t_max/10, t_max]` of `times`.
///
/// A poor fit is reported through `quadratic_scaling`, not as an error.
pub fn kappa_asymptotic<T: Real>(
    initial_state: &StateVector<T>,
    theta: T,
    gamma: T,
    times: &[T],
) -> Result<KappaFit<T>> {
    if times.is_empty() || times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("time list must be non-empty and increasing".into()));
    }
    let t_max = *times.last().expect("non-empty");
    if t_max < T::lit(50.0) {
        return Err(Error::InvalidGrid(format!("largest time {t_max} is below the asymptotic threshold 50")));
    }
    let floor = t_max / T::lit(10.0);
    let fitted: Vec<T> = times.iter().copied().filter(|&t| t >= floor).collect();
    let mut qs = Vec::with_capacity(fitted.len());
    for &t in &fitted {
        let setup = ProbeSetup::new(initial_state.clone(), theta, gamma, t)?;
        qs.push(qfi(&setup)?.q);
    }
    let (num, den) =
        fitted.iter().zip(&qs).fold((T::zero(), T::zero()), |(n, d), (&t, &q)| (n + q * t * t, d + t.powi(4)));
    let kappa = num / den;
    let (res, norm) = fitted.iter().zip(&qs).fold((T::zero(), T::zero()), |(r, nq), (&t, &q)| {
        let e = q - kappa * t * t;
        (r + e * e, nq + q * q)
    });
    let relative_residual = if norm > T::zero() { (res / norm).sqrt() } else { T::zero() };
    Ok(KappaFit {
        kappa,
        relative_residual,
        fitted_times: fitted,
        q_values: qs,
        quadratic_scaling: relative_residual < T::lit(SCALING_RESIDUAL_TOL),
    })
}

/// Quantum Cramér-Rao bound `1/(M·Q)`.
pub fn cramer_rao_bound<T: Real>(q: T, m: u64) -> Result<T> {
    if !(q > T::zero()) || m == 0 {
        return Err(Error::UndefinedBound { q: q.to_f64().unwrap_or(f64::NAN), m });
    }
    let m = T::from_u64(m).expect("sample count representable");
    Ok((m * q).recip())
}
