//! Chiral Hamiltonians on a graph, site re-phasings and loop phases.
//!
//! Edge phases are keyed by the canonical pair `(j, k)` with `j < k`. The stored
//! phase `θ_jk` is the phase picked up when hopping from `j` to `k`, i.e.
//! `⟨k|H|j⟩ = e^{iθ_jk}` and `⟨j|H|k⟩ = e^{−iθ_jk}`. With this orientation the
//! router's loop carries `θ/3` on each of the links 2→3, 3→4 and 4→2.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::graph::{cycle_edges, Graph};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::scalar::Real;

/// Edge phases and self-energies over a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiralSpec<T> {
    graph: Graph,
    edge_phases: BTreeMap<(usize, usize), T>,
    self_energies: Vec<T>,
}

/// Per-site gauge phases `φ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RephasingVector<T>(pub Vec<T>);

/// Result of [`topology_consistency_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyReport {
    pub consistent: bool,
    /// `(j, k, |H_jk|)` for every entry breaking the unit-modulus-on-edges / zero-off-edges rule.
    pub violations: Vec<(usize, usize, f64)>,
}

impl<T: Real> ChiralSpec<T> {
    /// Zero phases and zero self-energies.
    pub fn new(graph: Graph) -> Self {
        let n = graph.n_vertices();
        let edge_phases = graph.edges().iter().map(|&e| (e, T::zero())).collect();
        Self { graph, edge_phases, self_energies: vec![T::zero(); n] }
    }

    /// Builds a spec from explicit phases; pairs may be given in either orientation
    /// (a reversed pair `(k, j)` stores `−θ`).
    pub fn with_parameters(graph: Graph, phases: &[((usize, usize), T)], self_energies: Vec<T>) -> Result<Self> {
        let mut spec = Self::new(graph);
        if self_energies.len() != spec.graph.n_vertices() {
            return Err(Error::DimensionMismatch { expected: spec.graph.n_vertices(), actual: self_energies.len() });
        }
        if let Some(pos) = self_energies.iter().position(|g| !g.is_finite()) {
            return Err(Error::InvalidParameter(format!("self-energy of site {} is not finite", pos + 1)));
        }
        spec.self_energies = self_energies;
        for &((a, b), theta) in phases {
            spec.set_phase(a, b, theta)?;
        }
        Ok(spec)
    }

    /// Sets the phase for hopping `from → to`.
    pub fn set_phase(&mut self, from: usize, to: usize, theta: T) -> Result<()> {
        if !self.graph.has_edge(from, to) {
            return Err(Error::NotAnEdge(from, to));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidParameter(format!("phase on ({from}, {to}) is not finite")));
        }
        let stored = if from < to { theta } else { -theta };
        self.edge_phases.insert((from.min(to), from.max(to)), stored.wrap_angle());
        Ok(())
    }

    pub fn set_self_energy(&mut self, site: usize, gamma: T) -> Result<()> {
        crate::linalg::check_site(site, self.graph.n_vertices())?;
        self.self_energies[site - 1] = gamma;
        Ok(())
    }

    /// Phase for hopping `from → to` (canonical value in `[0, 2π)`; the reverse hop gets its negative).
    pub fn phase(&self, from: usize, to: usize) -> Result<T> {
        let stored = *self.edge_phases.get(&(from.min(to), from.max(to))).ok_or(Error::NotAnEdge(from, to))?;
        Ok(if from < to { stored } else { -stored })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_phases(&self) -> &BTreeMap<(usize, usize), T> {
        &self.edge_phases
    }

    pub fn self_energies(&self) -> &[T] {
        &self.self_energies
    }

    /// Spawns a one-parameter family that spreads a total loop phase evenly over `cycle`
    /// (in traversal order) and offsets the self-energy of every loop vertex.
    pub fn loop_family(&self, cycle: &[usize]) -> Result<LoopFamily<T>> {
        self.graph.validate_cycle(cycle)?;
        Ok(LoopFamily { base: self.clone(), cycle: cycle.to_vec() })
    }
}

/// `H = Σ_edges [e^{iθ_jk}|k⟩⟨j| + h.c.] + Σ_s γ_s|s⟩⟨s|`
pub fn build_hamiltonian<T: Real>(spec: &ChiralSpec<T>) -> HermitianOperator<T> {
    let n = spec.graph.n_vertices();
    let mut m = ComplexMatrix::zeros(n);
    for (&(j, k), &theta) in &spec.edge_phases {
        let hop = Complex::from_polar(T::one(), theta);
        m[(k - 1, j - 1)] = hop;
        m[(j - 1, k - 1)] = hop.conj();
    }
    for (s, &g) in spec.self_energies.iter().enumerate() {
        m[(s, s)] = Complex::new(g, T::zero());
    }
    HermitianOperator::new(m).expect("chiral Hamiltonian is Hermitian by construction")
}

/// `θ'_jk = θ_jk + φ_j − φ_k`; self-energies unchanged.
pub fn rephase<T: Real>(spec: &ChiralSpec<T>, phi: &RephasingVector<T>) -> Result<ChiralSpec<T>> {
    let n = spec.graph.n_vertices();
    if phi.0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: phi.0.len() });
    }
    let mut out = spec.clone();
    for (&(j, k), theta) in out.edge_phases.iter_mut() {
        *theta = (*theta + phi.0[j - 1] - phi.0[k - 1]).wrap_angle();
    }
    Ok(out)
}

/// Oriented phase sum around `cycle`, reduced to `[0, 2π)`.
pub fn loop_phase<T: Real>(spec: &ChiralSpec<T>, cycle: &[usize]) -> Result<T> {
    spec.graph.validate_cycle(cycle)?;
    let mut total = T::zero();
    for (a, b) in cycle_edges(cycle) {
        total = total + spec.phase(a, b)?;
    }
    Ok(total.wrap_angle())
}

/// Checks `|H_jk| = 1` on edges and `H_jk = 0` off edges (within 1e−12).
pub fn topology_consistency_check<T: Real>(h: &HermitianOperator<T>, g: &Graph) -> Result<TopologyReport> {
    let n = g.n_vertices();
    if h.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: h.dim() });
    }
    let tol = T::lit(1e-12);
    let m = h.matrix();
    let mut violations = Vec::new();
    for j in 1..=n {
        for k in (j + 1)..=n {
            let modulus = m[(j - 1, k - 1)].norm();
            let target = if g.has_edge(j, k) { T::one() } else { T::zero() };
            if (modulus - target).abs() > tol {
                violations.push((j, k, modulus.to_f64().unwrap_or(f64::NAN)));
            }
        }
    }
    Ok(TopologyReport { consistent: violations.is_empty(), violations })
}

/// A Hamiltonian parametrized by a total loop phase `θ` and a self-energy offset `γ`.
pub trait HamiltonianFamily<T: Real>: Sync {
    fn dim(&self) -> usize;

    fn hamiltonian(&self, theta: T, gamma: T) -> Result<HermitianOperator<T>>;

    /// Stable description used to fingerprint scan output.
    fn describe(&self) -> String;
}

/// Base spec with `θ/L` on every edge of an `L`-cycle and `+γ` on its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopFamily<T> {
    base: ChiralSpec<T>,
    cycle: Vec<usize>,
}

impl<T: Real> LoopFamily<T> {
    pub fn spec_at(&self, theta: T, gamma: T) -> Result<ChiralSpec<T>> {
        let mut spec = self.base.clone();
        let per_edge = theta / T::from_usize_lossy(self.cycle.len());
        for (a, b) in cycle_edges(&self.cycle) {
            spec.set_phase(a, b, per_edge)?;
        }
        for &v in &self.cycle {
            let g = spec.self_energies[v - 1] + gamma;
            spec.set_self_energy(v, g)?;
        }
        Ok(spec)
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }
}

impl<T: Real> HamiltonianFamily<T> for LoopFamily<T> {
    fn dim(&self) -> usize {
        self.base.graph.n_vertices()
    }

    fn hamiltonian(&self, theta: T, gamma: T) -> Result<HermitianOperator<T>> {
        Ok(build_hamiltonian(&self.spec_at(theta, gamma)?))
    }

    fn describe(&self) -> String {
        let edges: Vec<String> = self.base.graph.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let phases: Vec<String> = self.base.edge_phases.values().map(|p| format!("{p:.12e}")).collect();
        let energies: Vec<String> = self.base.self_energies.iter().map(|g| format!("{g:.12e}")).collect();
        format!(
            "loop-family n={} edges=[{}] phases=[{}] gamma=[{}] cycle={:?}",
            self.base.graph.n_vertices(),
            edges.join(","),
            phases.join(","),
            energies.join(","),
            self.cycle
        )
    }
}
