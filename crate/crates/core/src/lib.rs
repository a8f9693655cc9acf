//! Chiral continuous-time quantum walks and the six-site chiral quantum router.
//!
//! The numeric core is generic over the [`Real`] scalar (`f64` or `f32`); the
//! `*64` / `*32` aliases below fix the precision for callers that do not care.
//!
//! - [`linalg`]: dense complex matrices, Jacobi eigensolver, spectral propagator.
//! - [`graph`]: simple graphs and cycle rank.
//! - [`hamiltonian`]: chiral Hamiltonians, gauge re-phasing, loop phases.
//! - [`walk`]: transition amplitudes and parameter scans.
//! - [`router`]: closed-form router spectrum, routing and superposition transfer, optimizer.
//! - [`qfi`]: quantum Fisher information of the loop phase.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod csv;
pub mod error;
pub mod graph;
pub mod grid;
pub mod hamiltonian;
pub mod linalg;
pub mod optimize;
pub mod qfi;
pub mod router;
pub mod scalar;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{cycle_rank, CycleBasisInfo, Graph};
pub use hamiltonian::{
    build_hamiltonian, loop_phase, rephase, topology_consistency_check, ChiralSpec, HamiltonianFamily, LoopFamily,
    RephasingVector, TopologyReport,
};
pub use linalg::{
    hermitian_eigendecompose, spectral_propagator, ComplexMatrix, HermitianOperator, SpectralDecomposition, StateVector,
};
pub use qfi::{cramer_rao_bound, kappa_asymptotic, qfi, qfi_generator, KappaFit, Probe, ProbeSetup, QfiResult};
pub use router::{
    f_closed_form, f_closed_form_derivatives, optimize_routing, probability_ratio, router_hamiltonian, router_spectrum,
    routing_probabilities, superposition_probability, superposition_probability_formula, universality_times, Direction,
    Objective, RouterFamily, RouterParams, RouterSpectrum, RoutingOptimum, RoutingSearch, SuperpositionSites,
    SuperpositionState, Window,
};
pub use scalar::Real;
pub use walk::{scan, transition_amplitude, transition_probability, ScanGrid, ScanResult, Walk};

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type Complex32 = Complex<f32>;
pub type ComplexMatrix64 = ComplexMatrix<f64>;
pub type ComplexMatrix32 = ComplexMatrix<f32>;
pub type HermitianOperator64 = HermitianOperator<f64>;
pub type HermitianOperator32 = HermitianOperator<f32>;
pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type SpectralDecomposition64 = SpectralDecomposition<f64>;
pub type ChiralSpec64 = ChiralSpec<f64>;
pub type RouterSpectrum64 = RouterSpectrum<f64>;
pub type ScanResult64 = ScanResult<f64>;
pub type ProbeSetup64 = ProbeSetup<f64>;
